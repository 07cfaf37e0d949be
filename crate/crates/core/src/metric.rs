//! The b-symbol metric core: words, read vectors, distances, weights, and
//! the cyclic-run partition decomposition of the distance.

use crate::error::{Error, Result};
use crate::limits::checked_pow;

/// A size-q symbol set. Symbols are the integers 0..q-1 and 0 is the
/// designated zero symbol; no field arithmetic is ever performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Alphabet> {
        if q < 2 {
            return Err(Error::BadParams(format!("alphabet size must be >= 2, got {q}")));
        }
        Ok(Alphabet { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> u32 {
        0
    }
}

/// A length-k vector of symbols from a size-q alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u32>) -> Result<Word> {
        if symbols.is_empty() {
            return Err(Error::BadParams("word length must be >= 1".into()));
        }
        for &s in &symbols {
            if s >= alphabet.q() {
                return Err(Error::BadSymbol { symbol: s, q: alphabet.q() });
            }
        }
        Ok(Word { alphabet, symbols })
    }

    pub fn zero(alphabet: Alphabet, k: usize) -> Result<Word> {
        Word::new(alphabet, vec![0; k])
    }

    /// Word at a given lexicographic position: index 0 is the zero word and
    /// symbol 0 of the word is the most significant base-q digit.
    pub fn from_index(alphabet: Alphabet, k: usize, index: u64) -> Result<Word> {
        let q = alphabet.q() as u64;
        let total = checked_pow(alphabet.q(), k)
            .ok_or_else(|| Error::TooLarge(format!("q^k overflows for q={}, k={k}", alphabet.q())))?;
        if index >= total {
            return Err(Error::BadParams(format!("index {index} out of range for q^k={total}")));
        }
        let mut symbols = vec![0u32; k];
        let mut rem = index;
        for i in (0..k).rev() {
            symbols[i] = (rem % q) as u32;
            rem /= q;
        }
        Word::new(alphabet, symbols)
    }

    pub fn index(&self) -> u64 {
        let q = self.alphabet.q() as u64;
        self.symbols.iter().fold(0u64, |acc, &s| acc * q + s as u64)
    }

    /// Parse a base-q digit string (digits 0-9 then a-z, so q <= 36).
    pub fn parse(text: &str, q: u32) -> Result<Word> {
        if q > 36 {
            return Err(Error::Parse(format!("digit strings support q <= 36, got {q}")));
        }
        let alphabet = Alphabet::new(q)?;
        let mut symbols = Vec::with_capacity(text.len());
        for c in text.chars() {
            let v = c
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("invalid digit '{c}'")))?;
            symbols.push(v);
        }
        if symbols.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Word::new(alphabet, symbols)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> u32 {
        self.alphabet.q()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Concatenation (x, p) with the same alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.q(), other.q()));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word::new(self.alphabet, symbols)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.symbols {
            let c = char::from_digit(s.min(35), 36).unwrap();
            f.write_str(&c.to_string())?;
        }
        Ok(())
    }
}

/// The cyclic sequence of k overlapping b-tuples read from a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadVector {
    b: usize,
    tuples: Vec<Vec<u32>>,
}

impl ReadVector {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<u32>] {
        &self.tuples
    }

    pub fn tuples_mut(&mut self) -> &mut [Vec<u32>] {
        &mut self.tuples
    }

    /// Hamming distance between two read vectors (count of differing tuples).
    pub fn hamming(&self, other: &ReadVector) -> Result<usize> {
        if self.b != other.b || self.tuples.len() != other.tuples.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(self
            .tuples
            .iter()
            .zip(&other.tuples)
            .filter(|(a, b)| a != b)
            .count())
    }
}

fn check_b(b: usize, k: usize) -> Result<()> {
    if b < 1 {
        return Err(Error::BadParams("window width b must be >= 1".into()));
    }
    if b > k {
        return Err(Error::WindowTooWide { b, k });
    }
    Ok(())
}

/// b-symbol read vector: tuple i is (x_i, ..., x_{i+b-1}) with indices mod k.
pub fn read_vector(w: &Word, b: usize) -> Result<ReadVector> {
    let k = w.len();
    check_b(b, k)?;
    let s = w.symbols();
    let tuples = (0..k)
        .map(|i| (0..b).map(|j| s[(i + j) % k]).collect())
        .collect();
    Ok(ReadVector { b, tuples })
}

/// Count of positions where the two words disagree.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch(x.q(), y.q()));
    }
    Ok(x.symbols()
        .iter()
        .zip(y.symbols())
        .filter(|(a, b)| a != b)
        .count())
}

/// b-symbol distance over the cyclic agreement pattern. Works for any
/// b >= 1, including b > k (windows wrap repeatedly and every window
/// differs as soon as the words do), which the length-r redundancy-space
/// ball computations rely on.
pub(crate) fn b_distance_pattern(disagree: &[bool], b: usize) -> usize {
    let k = disagree.len();
    if b >= k {
        return if disagree.iter().any(|&d| d) { k } else { 0 };
    }
    let mut count = 0;
    for i in 0..k {
        for j in 0..b {
            if disagree[(i + j) % k] {
                count += 1;
                break;
            }
        }
    }
    count
}

fn disagreement_pattern(x: &Word, y: &Word) -> Result<Vec<bool>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch(x.q(), y.q()));
    }
    Ok(x.symbols()
        .iter()
        .zip(y.symbols())
        .map(|(a, b)| a != b)
        .collect())
}

/// Number of window indices whose b-tuples differ. Unlike [`read_vector`],
/// this accepts b > k so that distances remain defined on short redundancy
/// words; in that regime d_b(x, y) is k whenever x != y.
pub fn b_distance(x: &Word, y: &Word, b: usize) -> Result<usize> {
    if b < 1 {
        return Err(Error::BadParams("window width b must be >= 1".into()));
    }
    let pattern = disagreement_pattern(x, y)?;
    Ok(b_distance_pattern(&pattern, b))
}

/// b-symbol weight: distance from the zero word. Nonzero values lie
/// in {b, ..., k}.
pub fn b_weight(x: &Word, b: usize) -> Result<usize> {
    let zero = Word::zero(x.alphabet(), x.len())?;
    b_distance(x, &zero, b)
}

/// Cyclic-run decomposition of the agreement set I = {i : x_i = y_i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub d_h: usize,
    /// Lengths of the maximal cyclic runs of I.
    pub runs_agree: Vec<usize>,
    /// L: number of agreement runs of length >= b-1.
    pub big_runs: usize,
    /// e: total length of the agreement runs shorter than b-1.
    pub small_total: usize,
}

/// Minimal cyclic-run partition of the agreement set, with L and e.
/// Defined on the regime 0 < d_H(x, y) < k - b + 2.
pub fn partition_stats(x: &Word, y: &Word, b: usize) -> Result<PartitionStats> {
    let k = x.len();
    check_b(b, k)?;
    let pattern = disagreement_pattern(x, y)?;
    let d_h = pattern.iter().filter(|&&d| d).count();
    if d_h == 0 || d_h + b >= k + 2 {
        return Err(Error::OutOfRegime { dh: d_h, k, b });
    }
    // d_h >= 1 guarantees at least one disagreement to anchor runs on.
    let mut runs = Vec::new();
    for start in 0..k {
        if !pattern[start] && pattern[(start + k - 1) % k] {
            let mut len = 0;
            while !pattern[(start + len) % k] {
                len += 1;
            }
            runs.push(len);
        }
    }
    let big_runs = runs.iter().filter(|&&len| len + 1 >= b).count();
    let small_total = runs.iter().filter(|&&len| len + 1 < b).sum();
    Ok(PartitionStats { d_h, runs_agree: runs, big_runs, small_total })
}

/// d_H + (b-1)L + e; must agree with [`b_distance`] on the same inputs.
pub fn b_distance_via_partition(x: &Word, y: &Word, b: usize) -> Result<usize> {
    let stats = partition_stats(x, y, b)?;
    Ok(stats.d_h + (b - 1) * stats.big_runs + stats.small_total)
}

/// Shifted modulus: ((c - 1) mod d) + 1, mapping into 1..=d.
pub fn smod(c: u64, d: u64) -> Result<u64> {
    if c < 1 || d < 1 {
        return Err(Error::NonPositive);
    }
    Ok((c - 1) % d + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(bits: &[u32]) -> Word {
        Word::new(Alphabet::new(2).unwrap(), bits.to_vec()).unwrap()
    }

    fn example21() -> (Word, Word) {
        let x = bin(&[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0]);
        let y = Word::zero(Alphabet::new(2).unwrap(), 11).unwrap();
        (x, y)
    }

    #[test]
    fn read_vector_matches_printed_example() {
        let (x, _) = example21();
        let rv = read_vector(&x, 3).unwrap();
        let expected: Vec<Vec<u32>> = vec![
            vec![1, 0, 1],
            vec![0, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 0],
            vec![1, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 1],
            vec![0, 1, 0],
        ];
        assert_eq!(rv.tuples(), expected.as_slice());
    }

    #[test]
    fn read_vector_zero_word() {
        let z = Word::zero(Alphabet::new(2).unwrap(), 7).unwrap();
        for b in 1..=7 {
            let rv = read_vector(&z, b).unwrap();
            assert!(rv.tuples().iter().all(|t| t.iter().all(|&s| s == 0)));
        }
    }

    #[test]
    fn read_vector_ternary_wraparound() {
        let w = Word::new(Alphabet::new(3).unwrap(), vec![0, 1, 2, 0]).unwrap();
        let rv = read_vector(&w, 3).unwrap();
        assert_eq!(
            rv.tuples(),
            &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn read_vector_rejects_wide_window() {
        let w = bin(&[1, 0, 1]);
        assert!(matches!(read_vector(&w, 4), Err(Error::WindowTooWide { .. })));
    }

    #[test]
    fn hamming_examples() {
        let (x, y) = example21();
        assert_eq!(hamming_distance(&x, &y).unwrap(), 4);
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
        let a = bin(&[1, 0, 0, 0, 0]);
        let z = Word::zero(Alphabet::new(2).unwrap(), 5).unwrap();
        assert_eq!(hamming_distance(&a, &z).unwrap(), 1);
    }

    #[test]
    fn hamming_rejects_mismatch() {
        let a = bin(&[1, 0]);
        let b = bin(&[1, 0, 0]);
        assert!(matches!(hamming_distance(&a, &b), Err(Error::LengthMismatch(..))));
    }

    #[test]
    fn b_distance_examples() {
        let (x, y) = example21();
        assert_eq!(b_distance(&x, &y, 3).unwrap(), 8);
        assert_eq!(b_distance(&x, &x, 3).unwrap(), 0);
        let a = bin(&[1, 0, 0, 0, 0]);
        let z = Word::zero(Alphabet::new(2).unwrap(), 5).unwrap();
        assert_eq!(b_distance(&a, &z, 3).unwrap(), 3);
    }

    #[test]
    fn b_distance_short_words_wrap() {
        // length-2 words under b=3: every window covers both positions
        let a = bin(&[0, 0]);
        let b = bin(&[1, 1]);
        assert_eq!(b_distance(&a, &b, 3).unwrap(), 2);
        let c = bin(&[1, 0]);
        assert_eq!(b_distance(&a, &c, 3).unwrap(), 2);
    }

    #[test]
    fn b_weight_examples() {
        let (x, _) = example21();
        assert_eq!(b_weight(&x, 3).unwrap(), 8);
        let z = Word::zero(Alphabet::new(2).unwrap(), 6).unwrap();
        assert_eq!(b_weight(&z, 3).unwrap(), 0);
        let a = bin(&[1, 0, 0, 0, 0]);
        assert_eq!(b_weight(&a, 3).unwrap(), 3);
    }

    #[test]
    fn partition_stats_examples() {
        let (x, y) = example21();
        let st = partition_stats(&x, &y, 3).unwrap();
        assert_eq!((st.d_h, st.big_runs, st.small_total), (4, 1, 2));

        // single disagreement: the complement is one long run
        let a = bin(&[0, 0, 1, 0, 0, 0]);
        let z = Word::zero(Alphabet::new(2).unwrap(), 6).unwrap();
        let st = partition_stats(&a, &z, 3).unwrap();
        assert_eq!((st.d_h, st.big_runs, st.small_total), (1, 1, 0));

        let c = bin(&[1, 0, 1, 0, 0, 0, 0, 0]);
        let z8 = Word::zero(Alphabet::new(2).unwrap(), 8).unwrap();
        let st = partition_stats(&c, &z8, 3).unwrap();
        assert_eq!((st.d_h, st.big_runs, st.small_total), (2, 1, 1));
    }

    #[test]
    fn partition_regime_enforced() {
        let z = Word::zero(Alphabet::new(2).unwrap(), 6).unwrap();
        assert!(matches!(
            partition_stats(&z, &z, 3),
            Err(Error::OutOfRegime { .. })
        ));
        let ones = bin(&[1, 1, 1, 1, 1, 1]);
        assert!(matches!(
            partition_stats(&ones, &z, 3),
            Err(Error::OutOfRegime { .. })
        ));
    }

    #[test]
    fn partition_identity_examples() {
        let (x, y) = example21();
        assert_eq!(b_distance_via_partition(&x, &y, 3).unwrap(), 8);
        let c = bin(&[1, 0, 1, 0, 0, 0, 0, 0]);
        let z8 = Word::zero(Alphabet::new(2).unwrap(), 8).unwrap();
        assert_eq!(b_distance_via_partition(&c, &z8, 3).unwrap(), 5);
        assert_eq!(b_distance(&c, &z8, 3).unwrap(), 5);
    }

    #[test]
    fn smod_boundaries() {
        assert_eq!(smod(5, 5).unwrap(), 5);
        assert_eq!(smod(6, 5).unwrap(), 1);
        assert_eq!(smod(1, 7).unwrap(), 1);
        assert!(matches!(smod(0, 5), Err(Error::NonPositive)));
    }

    #[test]
    fn word_text_round_trip() {
        let w = Word::parse("10a", 11).unwrap();
        assert_eq!(w.symbols(), &[1, 0, 10]);
        assert_eq!(w.to_string(), "10a");
        assert_eq!(Word::from_index(Alphabet::new(3).unwrap(), 4, 5).unwrap().to_string(), "0012");
    }
}
