//! Sphere and ball sizes in the b-symbol metric: the closed-form b=3
//! enumeration, a brute-force oracle for general b, and the sphere-packing
//! bound. Counts use arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};
use crate::metric::{b_distance_pattern, Alphabet, Word};

/// Binomial coefficient with out-of-range arguments mapped to 0.
fn binom(n: i64, r: i64) -> BigUint {
    if r < 0 || n < 0 || r > n {
        return BigUint::zero();
    }
    let (n, r) = (n as u64, r as u64);
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Number of cyclic layouts of length k with disagreement weight l and L_j
/// agreement runs of which exactly j have size 1 and the rest size >= 2:
/// (k / L_j) C(l-1, L_j-1) C(k-l-L_j-1, L_j-j-1) C(L_j, j).
/// Out-of-range binomial arguments contribute 0.
pub fn dj_count(k: usize, l: usize, l_j: usize, j: usize) -> Result<BigUint> {
    if !(k > l && l >= l_j && l_j >= 1 && j <= l_j) {
        return Err(Error::BadParams(format!(
            "dj_count requires k > l >= L_j >= 1 and 0 <= j <= L_j, got k={k}, l={l}, L_j={l_j}, j={j}"
        )));
    }
    Ok(dj_count_unchecked(k, l, l_j, j))
}

fn dj_count_unchecked(k: usize, l: usize, l_j: usize, j: usize) -> BigUint {
    let (k, l, l_j, j) = (k as i64, l as i64, l_j as i64, j as i64);
    // compositions of the k-l agreement symbols into L_j - j runs of size
    // >= 2; when no long runs remain the count is 1 exactly if the j
    // singleton runs exhaust the agreement symbols
    let long_runs = if l_j == j {
        if k - l == j { BigUint::one() } else { BigUint::zero() }
    } else {
        binom(k - l - l_j - 1, l_j - j - 1)
    };
    let prod = BigUint::from(k as u64) * binom(l - 1, l_j - 1) * long_runs * binom(l_j, j);
    // the count is an integer; division by L_j is exact whenever the
    // binomial factors are nonzero
    prod / BigUint::from(l_j as u64)
}

/// Closed-form count of words at 3-symbol distance i from a fixed center:
/// sum over j and l of D_j(k, l, (i-l+j)/2) (q-1)^l, with terms whose
/// parity, range, or binomial arguments fall outside the valid region
/// contributing 0.
pub fn sphere_size_formula_b3(k: usize, i: usize, q: u32) -> Result<BigUint> {
    if !(0 < i && i < k && k >= 4) {
        return Err(Error::BadParams(format!(
            "formula requires 0 < i < k and k >= 4, got k={k}, i={i}"
        )));
    }
    let mut total = BigUint::zero();
    for j in 0..=(k / 2) {
        let l_min = (i + j).div_ceil(3);
        if i < 1 {
            continue;
        }
        for l in l_min..=(i - 1) {
            let num = i as i64 - l as i64 + j as i64;
            if num <= 0 || num % 2 != 0 {
                continue;
            }
            let l_j = (num / 2) as usize;
            // guard the D_j specification; invalid terms contribute 0
            if !(k > l && l >= l_j && l_j >= 1 && j <= l_j) {
                continue;
            }
            total += dj_count_unchecked(k, l, l_j, j) * big_pow(q as u64 - 1, l as u64);
        }
    }
    Ok(total)
}

/// Map radius -> exact count of words at that b-symbol distance from the
/// zero word, computed by full enumeration of the q^k word space.
#[derive(Debug, Clone)]
pub struct SphereProfile {
    pub k: usize,
    pub q: u32,
    pub b: usize,
    pub sizes: Vec<BigUint>,
}

impl SphereProfile {
    pub fn size(&self, radius: usize) -> BigUint {
        self.sizes.get(radius).cloned().unwrap_or_default()
    }
}

/// Brute-force profile around a given center word.
pub fn sphere_profile_around(center: &Word, b: usize, limits: &Limits) -> Result<SphereProfile> {
    let (k, q) = (center.len(), center.q());
    let total = checked_pow(q, k).filter(|&t| t <= limits.max_words).ok_or_else(|| {
        Error::TooLarge(format!("q^k exceeds the enumeration guard (q={q}, k={k})"))
    })?;
    let mut sizes = vec![BigUint::zero(); k + 1];
    let alphabet = center.alphabet();
    for idx in 0..total {
        let w = Word::from_index(alphabet, k, idx)?;
        let d = crate::metric::b_distance(center, &w, b)?;
        sizes[d] += BigUint::one();
    }
    Ok(SphereProfile { k, q, b, sizes })
}

/// Brute-force profile around the zero word; by translation invariance of
/// the disagreement pattern this equals the profile around any center.
pub fn sphere_profile_enum(k: usize, q: u32, b: usize, limits: &Limits) -> Result<SphereProfile> {
    let center = Word::zero(Alphabet::new(q)?, k)?;
    sphere_profile_around(&center, b, limits)
}

/// Exact count of words at b-symbol distance i from the zero word.
pub fn sphere_size_enum(k: usize, i: usize, q: u32, b: usize, limits: &Limits) -> Result<BigUint> {
    Ok(sphere_profile_enum(k, q, b, limits)?.size(i))
}

/// Profile computed by enumerating the 2^k disagreement patterns and
/// weighting each by (q-1)^weight. Much faster than the full-space oracle
/// and valid because d_b depends only on the disagreement pattern; the two
/// routes are checked equal in tests. Accepts any b >= 1.
pub fn sphere_profile_patterns(k: usize, q: u32, b: usize, limits: &Limits) -> Result<SphereProfile> {
    if b < 1 || k < 1 {
        return Err(Error::BadParams(format!("need b >= 1 and k >= 1, got b={b}, k={k}")));
    }
    let patterns = checked_pow(2, k).filter(|&t| t <= limits.max_words).ok_or_else(|| {
        Error::TooLarge(format!("2^k exceeds the enumeration guard (k={k})"))
    })?;
    let mut sizes = vec![BigUint::zero(); k + 1];
    let mut pattern = vec![false; k];
    for mask in 0..patterns {
        for (pos, slot) in pattern.iter_mut().enumerate() {
            *slot = mask >> pos & 1 == 1;
        }
        let d = b_distance_pattern(&pattern, b);
        let weight = mask.count_ones() as u64;
        sizes[d] += big_pow(q as u64 - 1, weight);
    }
    Ok(SphereProfile { k, q, b, sizes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallMethod {
    /// Closed-form run-length enumeration; b = 3 only.
    Formula,
    /// Brute-force enumeration; any b.
    Enum,
}

/// |B^b_k(t)| = 1 + sum of sphere sizes for radii 1..=t.
pub fn ball_size(k: usize, t: usize, q: u32, b: usize, method: BallMethod, limits: &Limits) -> Result<BigUint> {
    if t >= k {
        return Ok(big_pow(q as u64, k as u64));
    }
    match method {
        BallMethod::Formula => {
            if b != 3 {
                return Err(Error::FormulaUnavailable);
            }
            let mut acc = BigUint::one();
            for i in 1..=t {
                acc += sphere_size_formula_b3(k, i, q)?;
            }
            Ok(acc)
        }
        BallMethod::Enum => {
            let profile = sphere_profile_patterns(k, q, b, limits)?;
            let mut acc = BigUint::zero();
            for i in 0..=t {
                acc += profile.size(i);
            }
            Ok(acc)
        }
    }
}

/// Sphere-packing bound: floor(q^k / |B^b_k(t)|).
pub fn sphere_packing_max_size(k: usize, t: usize, q: u32, b: usize, method: BallMethod, limits: &Limits) -> Result<BigUint> {
    let ball = ball_size(k, t, q, b, method, limits)?;
    Ok(big_pow(q as u64, k as u64) / ball)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn binom_edges() {
        assert_eq!(binom(5, 2), BigUint::from(10u32));
        assert!(binom(4, -1).is_zero());
        assert!(binom(-2, 0).is_zero());
        assert!(binom(3, 4).is_zero());
        assert_eq!(binom(0, 0), BigUint::one());
    }

    #[test]
    fn dj_single_disagreement() {
        for k in 3..=9 {
            assert_eq!(dj_count(k, 1, 1, 0).unwrap(), BigUint::from(k));
        }
    }

    #[test]
    fn dj_vanishing_binomial() {
        for k in 5..=8 {
            assert!(dj_count(k, 2, 1, 1).unwrap().is_zero());
        }
    }

    /// Independent oracle: enumerate disagreement subsets of size l and
    /// count those whose cyclic agreement-run profile matches (L_j, j).
    fn dj_bruteforce(k: usize, l: usize, l_j: usize, j: usize) -> u64 {
        let mut count = 0;
        for mask in 0u64..(1 << k) {
            if mask.count_ones() as usize != l {
                continue;
            }
            let agree: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 0).collect();
            let mut runs = Vec::new();
            for start in 0..k {
                if agree[start] && !agree[(start + k - 1) % k] {
                    let mut len = 0;
                    while agree[(start + len) % k] {
                        len += 1;
                    }
                    runs.push(len);
                }
            }
            let ones = runs.iter().filter(|&&r| r == 1).count();
            if runs.len() == l_j && ones == j {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn dj_matches_layout_enumeration() {
        assert_eq!(dj_count(8, 3, 2, 1).unwrap(), BigUint::from(dj_bruteforce(8, 3, 2, 1)));
        for k in 5..=9 {
            for l in 1..k {
                for l_j in 1..=l {
                    for j in 0..=l_j {
                        assert_eq!(
                            dj_count(k, l, l_j, j).unwrap(),
                            BigUint::from(dj_bruteforce(k, l, l_j, j)),
                            "k={k} l={l} L_j={l_j} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn formula_single_disagreement_radius() {
        // at radius b = 3 the only contributors are single-disagreement words
        for k in 6..=10 {
            assert_eq!(sphere_size_formula_b3(k, 3, 2).unwrap(), BigUint::from(k));
            assert_eq!(
                sphere_size_formula_b3(k, 3, 3).unwrap(),
                BigUint::from(2 * k)
            );
        }
    }

    #[test]
    fn formula_below_b_is_zero() {
        for i in 1..=2 {
            assert!(sphere_size_formula_b3(8, i, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn formula_matches_oracle_spot() {
        let formula = sphere_size_formula_b3(11, 8, 2).unwrap();
        let oracle = sphere_size_enum(11, 8, 2, 3, &lim()).unwrap();
        assert_eq!(formula, oracle);
        assert!(oracle > BigUint::zero());
    }

    #[test]
    fn formula_matches_oracle_sweep() {
        for (k, q) in [(5usize, 2u32), (6, 2), (7, 2), (8, 2), (5, 3), (6, 3), (5, 4)] {
            let profile = sphere_profile_enum(k, q, 3, &lim()).unwrap();
            for i in 1..k {
                let formula = sphere_size_formula_b3(k, i, q).unwrap();
                assert_eq!(formula, profile.size(i), "k={k} q={q} i={i}");
            }
        }
    }

    #[test]
    fn enum_profile_partitions_space() {
        let profile = sphere_profile_enum(6, 3, 3, &lim()).unwrap();
        assert_eq!(profile.size(0), BigUint::one());
        let total: BigUint = profile.sizes.iter().sum();
        assert_eq!(total, big_pow(3, 6));
    }

    #[test]
    fn pattern_profile_matches_bruteforce() {
        for q in [2u32, 3] {
            for k in 2..=7 {
                for b in 1..=4.min(k) {
                    let slow = sphere_profile_enum(k, q, b, &lim()).unwrap();
                    let fast = sphere_profile_patterns(k, q, b, &lim()).unwrap();
                    assert_eq!(slow.sizes, fast.sizes, "q={q} k={k} b={b}");
                }
            }
        }
    }

    #[test]
    fn center_independence() {
        for seed_idx in [1u64, 100, 200] {
            let center = Word::from_index(Alphabet::new(2).unwrap(), 8, seed_idx).unwrap();
            let around = sphere_profile_around(&center, 3, &lim()).unwrap();
            let zero = sphere_profile_enum(8, 2, 3, &lim()).unwrap();
            assert_eq!(around.sizes, zero.sizes);
        }
    }

    #[test]
    fn ball_dual_path_and_monotone() {
        let mut prev = BigUint::zero();
        for t in 0..=8 {
            let enum_ball = ball_size(8, t, 2, 3, BallMethod::Enum, &lim()).unwrap();
            let formula_ball = ball_size(8, t, 2, 3, BallMethod::Formula, &lim()).unwrap();
            assert_eq!(enum_ball, formula_ball, "t={t}");
            assert!(enum_ball >= prev);
            prev = enum_ball;
        }
        assert_eq!(prev, big_pow(2, 8));
        assert_eq!(ball_size(8, 0, 2, 3, BallMethod::Enum, &lim()).unwrap(), BigUint::one());
        assert!(matches!(
            ball_size(8, 2, 2, 4, BallMethod::Formula, &lim()),
            Err(Error::FormulaUnavailable)
        ));
    }

    #[test]
    fn sphere_packing_edges() {
        let lim = lim();
        assert_eq!(
            sphere_packing_max_size(10, 0, 2, 3, BallMethod::Enum, &lim).unwrap(),
            big_pow(2, 10)
        );
        assert_eq!(
            sphere_packing_max_size(10, 10, 2, 3, BallMethod::Enum, &lim).unwrap(),
            BigUint::one()
        );
        let viaenum = sphere_packing_max_size(10, 3, 2, 3, BallMethod::Enum, &lim).unwrap();
        let ball = ball_size(10, 3, 2, 3, BallMethod::Enum, &lim).unwrap();
        assert_eq!(viaenum, big_pow(2, 10) / ball);
    }
}
