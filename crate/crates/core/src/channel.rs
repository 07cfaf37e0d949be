//! The b-symbol read channel: symmetric error injection into read
//! vectors, minimum-distance value decoding, and seeded Monte Carlo
//! estimation of decoding failure rates.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fcc::Encoder;
use crate::functions::FunctionSpec;
use crate::limits::{checked_pow, Limits};
use crate::metric::{read_vector, ReadVector, Word};

/// Corrupt up to t window positions of a read vector in place. The error
/// count is uniform on [0, t], positions are drawn without replacement,
/// and each hit tuple is replaced by a uniformly random different
/// b-tuple. Returns the number of injected errors.
pub fn inject_errors<R: Rng>(rv: &mut ReadVector, t: usize, q: u32, rng: &mut R) -> Result<usize> {
    if t > rv.len() {
        return Err(Error::BadParams(format!(
            "error budget t={t} exceeds the {} window positions",
            rv.len()
        )));
    }
    let e = rng.random_range(0..=t);
    let b = rv.b();
    for pos in sample(rng, rv.len(), e) {
        let tuple = &mut rv.tuples_mut()[pos];
        let fresh: Vec<u32> = loop {
            let candidate: Vec<u32> = (0..b).map(|_| rng.random_range(0..q)).collect();
            if candidate != *tuple {
                break candidate;
            }
        };
        *tuple = fresh;
    }
    Ok(e)
}

/// Minimum-distance value decoder over a cached codebook of read vectors.
pub struct Decoder {
    entries: Vec<(ReadVector, u64, u64)>,
}

impl Decoder {
    pub fn new(enc: &Encoder, f: &FunctionSpec, limits: &Limits) -> Result<Decoder> {
        if f.k() != enc.k() || f.q() != enc.q() {
            return Err(Error::ShapeMismatch);
        }
        let total = checked_pow(enc.q(), enc.k())
            .filter(|&n| n <= limits.max_codebook)
            .ok_or_else(|| Error::TooLarge("q^k exceeds the codebook guard".into()))?;
        let alphabet = enc.alphabet();
        let mut entries = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let x = Word::from_index(alphabet, enc.k(), idx)?;
            let rv = read_vector(&enc.encode(&x)?, enc.b())?;
            entries.push((rv, f.eval(&x)?, idx));
        }
        Ok(Decoder { entries })
    }

    /// f-value of the codeword whose read vector is nearest to the
    /// received one; ties break toward the smaller information word.
    pub fn decode_value(&self, received: &ReadVector) -> Result<u64> {
        let mut best: Option<(usize, u64, u64)> = None;
        for (rv, value, idx) in &self.entries {
            let d = rv.hamming(received)?;
            let better = match best {
                None => true,
                Some((bd, _, bidx)) => d < bd || (d == bd && *idx < bidx),
            };
            if better {
                best = Some((d, *value, *idx));
            }
        }
        best.map(|(_, v, _)| v).ok_or_else(|| Error::BadParams("empty codebook".into()))
    }
}

/// Outcome of a seeded Monte Carlo run over the channel.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChannelTrial {
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
    pub t: usize,
}

impl ChannelTrial {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain struct serializes")
    }
}

/// Estimate the value-decoding failure rate: each trial encodes a random
/// information word, corrupts up to t window positions, and checks that
/// the decoded value matches f. Deterministic for a fixed seed.
pub fn monte_carlo(
    enc: &Encoder,
    f: &FunctionSpec,
    t: usize,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<ChannelTrial> {
    let decoder = Decoder::new(enc, f, limits)?;
    let domain = checked_pow(enc.q(), enc.k()).expect("guarded by decoder construction");
    let alphabet = enc.alphabet();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    for _ in 0..trials {
        if limits.expired() {
            return Err(Error::TimedOut);
        }
        let idx = rng.random_range(0..domain);
        let x = Word::from_index(alphabet, enc.k(), idx)?;
        let mut rv = read_vector(&enc.encode(&x)?, enc.b())?;
        inject_errors(&mut rv, t, enc.q(), &mut rng)?;
        if decoder.decode_value(&rv)? != f.eval(&x)? {
            failures += 1;
        }
    }
    Ok(ChannelTrial { trials, failures, seed, t })
}
