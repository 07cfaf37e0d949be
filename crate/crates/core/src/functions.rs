//! Function specifications with enumerable images, function balls,
//! locally-binary predicates, function b-distance, and the four
//! distance-matrix families.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};
use crate::metric::{b_distance, b_weight, Alphabet, Word};

/// Built-in and table-backed function kinds.
#[derive(Debug, Clone)]
pub enum FunctionKind {
    /// Logical OR of the bits; q = 2 only.
    Or,
    /// Hamming weight.
    HammingWeight,
    /// b-symbol weight wt_b.
    BWeight { b: usize },
    /// Step function floor(wt_b / T).
    WeightDistribution { b: usize, t_param: u64 },
    /// Enumerated values indexed by word position; must cover all q^k words.
    Table(Vec<u64>),
}

/// An evaluable function f: alphabet^k -> value ids with enumerable image.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    q: u32,
    k: usize,
    kind: FunctionKind,
}

impl FunctionSpec {
    pub fn new(q: u32, k: usize, kind: FunctionKind) -> Result<FunctionSpec> {
        Alphabet::new(q)?;
        if k < 1 {
            return Err(Error::BadParams("k must be >= 1".into()));
        }
        match &kind {
            FunctionKind::Or => {
                if q != 2 {
                    return Err(Error::BadParams("OR is defined for q = 2 only".into()));
                }
            }
            FunctionKind::BWeight { b } => {
                if *b < 1 || *b > k {
                    return Err(Error::BadParams(format!("b-weight requires 1 <= b <= k, got b={b}, k={k}")));
                }
            }
            FunctionKind::WeightDistribution { b, t_param } => {
                if *b < 1 || *b > k {
                    return Err(Error::BadT(format!("requires 1 <= b <= k, got b={b}, k={k}")));
                }
                let floor = (*b as u64 + 2) / 2;
                if *t_param < floor {
                    return Err(Error::BadT(format!("T must be >= floor((b+2)/2) = {floor}, got {t_param}")));
                }
                if (k as u64 + 1) % t_param != 0 {
                    return Err(Error::BadT(format!("T = {t_param} must divide k+1 = {}", k + 1)));
                }
            }
            FunctionKind::Table(values) => {
                let total = checked_pow(q, k)
                    .ok_or_else(|| Error::TooLarge(format!("q^k overflows for q={q}, k={k}")))?;
                if values.len() as u64 != total {
                    return Err(Error::IncompleteTable(format!(
                        "table has {} rows, domain has {total}",
                        values.len()
                    )));
                }
            }
            FunctionKind::HammingWeight => {}
        }
        Ok(FunctionSpec { q, k, kind })
    }

    /// Load a table-backed function from CSV lines `word,value` with words
    /// as base-q digit strings. Every domain word must appear exactly once.
    pub fn from_table_csv(q: u32, k: usize, path: &Path) -> Result<FunctionSpec> {
        let text = std::fs::read_to_string(path)?;
        FunctionSpec::from_table_csv_str(q, k, &text)
    }

    pub fn from_table_csv_str(q: u32, k: usize, text: &str) -> Result<FunctionSpec> {
        let total = checked_pow(q, k)
            .ok_or_else(|| Error::TooLarge(format!("q^k overflows for q={q}, k={k}")))?;
        let mut values: Vec<Option<u64>> = vec![None; total as usize];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word_text, value_text) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `word,value`", lineno + 1)))?;
            let word = Word::parse(word_text.trim(), q)?;
            if word.len() != k {
                return Err(Error::Parse(format!("line {}: word length {} != k={k}", lineno + 1, word.len())));
            }
            let value: u64 = value_text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad value", lineno + 1)))?;
            values[word.index() as usize] = Some(value);
        }
        let mut table = Vec::with_capacity(values.len());
        for (idx, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => table.push(v),
                None => {
                    return Err(Error::IncompleteTable(format!("missing entry for word index {idx}")));
                }
            }
        }
        FunctionSpec::new(q, k, FunctionKind::Table(table))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.q).expect("validated at construction")
    }

    pub fn eval(&self, x: &Word) -> Result<u64> {
        if x.len() != self.k {
            return Err(Error::LengthMismatch(x.len(), self.k));
        }
        if x.q() != self.q {
            return Err(Error::AlphabetMismatch(x.q(), self.q));
        }
        Ok(match &self.kind {
            FunctionKind::Or => u64::from(x.symbols().iter().any(|&s| s != 0)),
            FunctionKind::HammingWeight => x.symbols().iter().filter(|&&s| s != 0).count() as u64,
            FunctionKind::BWeight { b } => b_weight(x, *b)? as u64,
            FunctionKind::WeightDistribution { b, t_param } => b_weight(x, *b)? as u64 / t_param,
            FunctionKind::Table(values) => values[x.index() as usize],
        })
    }

    pub fn eval_index(&self, index: u64) -> Result<u64> {
        let w = Word::from_index(self.alphabet(), self.k, index)?;
        self.eval(&w)
    }

    /// Sorted distinct image values; length E.
    pub fn image(&self) -> Vec<u64> {
        match &self.kind {
            FunctionKind::Or => vec![0, 1],
            FunctionKind::HammingWeight => (0..=self.k as u64).collect(),
            FunctionKind::BWeight { b } => {
                let mut image = vec![0];
                image.extend(*b as u64..=self.k as u64);
                image
            }
            FunctionKind::WeightDistribution { b, t_param } => {
                let mut set = BTreeSet::new();
                set.insert(0);
                for w in *b as u64..=self.k as u64 {
                    set.insert(w / t_param);
                }
                set.into_iter().collect()
            }
            FunctionKind::Table(values) => {
                let set: BTreeSet<u64> = values.iter().copied().collect();
                set.into_iter().collect()
            }
        }
    }

    pub fn image_size(&self) -> usize {
        self.image().len()
    }
}

/// Function ball: the set of f-values attained within b-symbol distance rho
/// of x, by enumeration of the metric ball.
pub fn function_ball(f: &FunctionSpec, x: &Word, rho: usize, b: usize, limits: &Limits) -> Result<BTreeSet<u64>> {
    let total = checked_pow(f.q(), f.k())
        .filter(|&t| t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the enumeration guard".into()))?;
    let mut values = BTreeSet::new();
    let alphabet = f.alphabet();
    for idx in 0..total {
        let w = Word::from_index(alphabet, f.k(), idx)?;
        if b_distance(x, &w, b)? <= rho {
            values.insert(f.eval(&w)?);
        }
    }
    Ok(values)
}

/// True iff every function ball of radius rho has at most two values.
pub fn is_locally_binary(f: &FunctionSpec, rho: usize, b: usize, limits: &Limits) -> Result<bool> {
    if f.image_size() <= 2 {
        return Ok(true);
    }
    let total = checked_pow(f.q(), f.k())
        .filter(|&t| t * t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^2k exceeds the enumeration guard".into()))?;
    let alphabet = f.alphabet();
    let words: Vec<Word> = (0..total)
        .map(|idx| Word::from_index(alphabet, f.k(), idx))
        .collect::<Result<_>>()?;
    let values: Vec<u64> = words.iter().map(|w| f.eval(w)).collect::<Result<_>>()?;
    for x in &words {
        let mut seen = BTreeSet::new();
        for (w, &v) in words.iter().zip(&values) {
            if b_distance(x, w, b)? <= rho {
                seen.insert(v);
                if seen.len() > 2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Function b-distance: exact minimum d_b over preimage pairs, with early
/// exit at the smallest achievable value.
pub fn function_b_distance(f: &FunctionSpec, v1: u64, v2: u64, b: usize, limits: &Limits) -> Result<usize> {
    if v1 == v2 {
        if !f.image().contains(&v1) {
            return Err(Error::ValueNotInImage(v1));
        }
        return Ok(0);
    }
    let total = checked_pow(f.q(), f.k())
        .filter(|&t| t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the enumeration guard".into()))?;
    let alphabet = f.alphabet();
    let mut fiber1 = Vec::new();
    let mut fiber2 = Vec::new();
    for idx in 0..total {
        let w = Word::from_index(alphabet, f.k(), idx)?;
        let v = f.eval(&w)?;
        if v == v1 {
            fiber1.push(w);
        } else if v == v2 {
            fiber2.push(w);
        }
    }
    if fiber1.is_empty() {
        return Err(Error::ValueNotInImage(v1));
    }
    if fiber2.is_empty() {
        return Err(Error::ValueNotInImage(v2));
    }
    // distinct words are always at distance >= min(b, k)
    let floor = b.min(f.k());
    let mut best = usize::MAX;
    'outer: for x1 in &fiber1 {
        for x2 in &fiber2 {
            let d = b_distance(x1, x2, b)?;
            if d < best {
                best = d;
                if best <= floor {
                    break 'outer;
                }
            }
        }
    }
    Ok(best)
}

/// Symmetric nonnegative-integer matrix with zero diagonal, carrying labels
/// for the vectors or function values indexing its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<u64>>) -> Result<DistanceMatrix> {
        let m = entries.len();
        if labels.len() != m {
            return Err(Error::SizeMismatch(labels.len(), m));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(Error::SizeMismatch(row.len(), m));
            }
            if row[i] != 0 {
                return Err(Error::BadParams(format!("nonzero diagonal at {i}")));
            }
            for j in 0..m {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::BadParams(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(DistanceMatrix { labels, entries })
    }

    pub fn uniform(m: usize, d: u64) -> DistanceMatrix {
        let entries = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 0 } else { d }).collect())
            .collect();
        let labels = (0..m).map(|i| i.to_string()).collect();
        DistanceMatrix { labels, entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.max_entry() == 0
    }

    /// Sum of strictly-upper-triangle entries.
    pub fn upper_sum(&self) -> u64 {
        let m = self.order();
        let mut acc = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                acc += self.entries[i][j];
            }
        }
        acc
    }

    /// CSV with a header row of labels.
    pub fn to_csv(&self) -> String {
        let mut out = self.labels.join(",");
        out.push('\n');
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<DistanceMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix".into()))?;
        let labels: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let mut entries = Vec::new();
        for line in lines {
            let row: Vec<u64> = line
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad cell '{c}'"))))
                .collect::<Result<_>>()?;
            entries.push(row);
        }
        DistanceMatrix::new(labels, entries)
    }
}

fn positive_part(v: i64) -> u64 {
    v.max(0) as u64
}

fn build_vectors_matrix(
    f: &FunctionSpec,
    t: usize,
    b: usize,
    xs: &[Word],
    offset: i64,
) -> Result<DistanceMatrix> {
    let m = xs.len();
    for i in 0..m {
        for j in (i + 1)..m {
            if xs[i] == xs[j] {
                return Err(Error::DuplicateVectors);
            }
        }
    }
    let values: Vec<u64> = xs.iter().map(|x| f.eval(x)).collect::<Result<_>>()?;
    let mut entries = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            if values[i] != values[j] {
                let d = b_distance(&xs[i], &xs[j], b)? as i64;
                let v = positive_part(2 * t as i64 + offset - d);
                entries[i][j] = v;
                entries[j][i] = v;
            }
        }
    }
    let labels = xs.iter().map(|x| x.to_string()).collect();
    DistanceMatrix::new(labels, entries)
}

/// B_f^(1) over explicit vectors: entry [2t - b + 2 - d_b(x_i, x_j)]^+ when
/// f(x_i) != f(x_j), else 0.
pub fn build_b1_vectors(f: &FunctionSpec, t: usize, b: usize, xs: &[Word]) -> Result<DistanceMatrix> {
    build_vectors_matrix(f, t, b, xs, 2 - b as i64)
}

/// B_f^(2) over explicit vectors: entry [2t + b - d_b(x_i, x_j)]^+.
pub fn build_b2_vectors(f: &FunctionSpec, t: usize, b: usize, xs: &[Word]) -> Result<DistanceMatrix> {
    build_vectors_matrix(f, t, b, xs, b as i64)
}

fn build_function_values_matrix(
    f: &FunctionSpec,
    t: usize,
    b: usize,
    offset: i64,
    limits: &Limits,
) -> Result<DistanceMatrix> {
    let image = f.image();
    let e = image.len();
    let mut entries = vec![vec![0u64; e]; e];
    for i in 0..e {
        for j in (i + 1)..e {
            let d = function_b_distance(f, image[i], image[j], b, limits)? as i64;
            let v = positive_part(2 * t as i64 + offset - d);
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    let labels = image.iter().map(|v| v.to_string()).collect();
    DistanceMatrix::new(labels, entries)
}

/// E x E function b-distance matrix with entries [2t - b + 2 - d_b^f]^+.
pub fn build_b1_function_values(f: &FunctionSpec, t: usize, b: usize, limits: &Limits) -> Result<DistanceMatrix> {
    build_function_values_matrix(f, t, b, 2 - b as i64, limits)
}

/// E x E function b-distance matrix with entries [2t + b - d_b^f]^+.
pub fn build_b2_function_values(f: &FunctionSpec, t: usize, b: usize, limits: &Limits) -> Result<DistanceMatrix> {
    build_function_values_matrix(f, t, b, b as i64, limits)
}

fn check_wtb_params(k: usize, t: usize, b: usize) -> Result<()> {
    if b < 1 || k < b {
        return Err(Error::BadParams(format!("requires k >= b >= 1, got k={k}, b={b}")));
    }
    if 2 * t <= b - 1 {
        return Err(Error::BadParams(format!("requires t > floor((b-1)/2), got t={t}, b={b}")));
    }
    Ok(())
}

/// Closed form of the wt_b B^(1) matrix over the prefix vectors
/// x_i = (a^i 0^(k-i)), i = 0..k-b+1: entry [2t - 2b + 3 - |i-j|]^+.
pub fn wtb_b1_closed(k: usize, t: usize, b: usize) -> Result<DistanceMatrix> {
    check_wtb_params(k, t, b)?;
    let m = k - b + 2;
    let mut entries = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let gap = i.abs_diff(j) as i64;
                entries[i][j] = positive_part(2 * t as i64 - 2 * b as i64 + 3 - gap);
            }
        }
    }
    let labels = (0..m).map(|i| format!("{}{}", "1".repeat(i), "0".repeat(k - i))).collect();
    DistanceMatrix::new(labels, entries)
}

/// Closed form of the wt_b B^(2) function-value matrix on the image
/// {0, b, ..., k} with 1-based indices: 2t - max{i,j} + 2 when one index is
/// 1; 2t when both exceed 1 and 0 < |i-j| < b; [2t + b - |i-j|]^+ when
/// |i-j| >= b.
pub fn wtb_b2_closed(k: usize, t: usize, b: usize) -> Result<DistanceMatrix> {
    check_wtb_params(k, t, b)?;
    let e = k - b + 2;
    let mut entries = vec![vec![0u64; e]; e];
    for i in 1..=e {
        for j in 1..=e {
            if i == j {
                continue;
            }
            let v = if i == 1 || j == 1 {
                positive_part(2 * t as i64 - i.max(j) as i64 + 2)
            } else if i.abs_diff(j) < b {
                2 * t as u64
            } else {
                positive_part(2 * t as i64 + b as i64 - i.abs_diff(j) as i64)
            };
            entries[i - 1][j - 1] = v;
        }
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((b as u64..=k as u64).map(|w| w.to_string()));
    DistanceMatrix::new(labels, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn wt3(k: usize) -> FunctionSpec {
        FunctionSpec::new(2, k, FunctionKind::BWeight { b: 3 }).unwrap()
    }

    #[test]
    fn image_examples() {
        let or = FunctionSpec::new(2, 4, FunctionKind::Or).unwrap();
        assert_eq!(or.image(), vec![0, 1]);
        assert_eq!(wt3(6).image(), vec![0, 3, 4, 5, 6]);
        let wd = FunctionSpec::new(2, 9, FunctionKind::WeightDistribution { b: 3, t_param: 5 }).unwrap();
        assert_eq!(wd.image(), vec![0, 1]);
    }

    #[test]
    fn weight_distribution_preconditions() {
        assert!(matches!(
            FunctionSpec::new(2, 9, FunctionKind::WeightDistribution { b: 3, t_param: 4 }),
            Err(Error::BadT(_))
        ));
        assert!(matches!(
            FunctionSpec::new(2, 9, FunctionKind::WeightDistribution { b: 3, t_param: 1 }),
            Err(Error::BadT(_))
        ));
    }

    #[test]
    fn table_csv_round_trip() {
        let or = FunctionSpec::new(2, 3, FunctionKind::Or).unwrap();
        let mut csv = String::new();
        for idx in 0..8u64 {
            let w = Word::from_index(or.alphabet(), 3, idx).unwrap();
            csv.push_str(&format!("{w},{}\n", or.eval(&w).unwrap()));
        }
        let table = FunctionSpec::from_table_csv_str(2, 3, &csv).unwrap();
        for idx in 0..8 {
            assert_eq!(table.eval_index(idx).unwrap(), or.eval_index(idx).unwrap());
        }
        assert!(matches!(
            FunctionSpec::from_table_csv_str(2, 3, "000,0\n"),
            Err(Error::IncompleteTable(_))
        ));
    }

    #[test]
    fn function_ball_examples() {
        let or = FunctionSpec::new(2, 4, FunctionKind::Or).unwrap();
        let zero = Word::zero(or.alphabet(), 4).unwrap();
        let ball0 = function_ball(&or, &zero, 0, 3, &lim()).unwrap();
        assert_eq!(ball0.into_iter().collect::<Vec<_>>(), vec![0]);
        let ball3 = function_ball(&or, &zero, 3, 3, &lim()).unwrap();
        assert_eq!(ball3.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        let full = function_ball(&or, &zero, 4, 3, &lim()).unwrap();
        assert_eq!(full.into_iter().collect::<Vec<_>>(), or.image());
    }

    #[test]
    fn locally_binary_examples() {
        let or = FunctionSpec::new(2, 4, FunctionKind::Or).unwrap();
        for rho in 0..=4 {
            assert!(is_locally_binary(&or, rho, 3, &lim()).unwrap());
        }
        assert!(!is_locally_binary(&wt3(6), 6, 3, &lim()).unwrap());
        let hw = FunctionSpec::new(2, 5, FunctionKind::HammingWeight).unwrap();
        assert!(is_locally_binary(&hw, 0, 3, &lim()).unwrap());
    }

    #[test]
    fn locally_binary_monotone_in_rho() {
        let f = wt3(6);
        let mut prev = true;
        for rho in 0..=6 {
            let now = is_locally_binary(&f, rho, 3, &lim()).unwrap();
            assert!(prev || !now, "non-monotone at rho={rho}");
            prev = now;
        }
    }

    #[test]
    fn function_b_distance_examples() {
        let f = wt3(6);
        assert_eq!(function_b_distance(&f, 3, 3, 3, &lim()).unwrap(), 0);
        assert_eq!(function_b_distance(&f, 3, 4, 3, &lim()).unwrap(), 3);
        // d^g(0, g_j) = b + max{i, j} - 2 with g_j = b + j - 2
        for (j, g_j) in [(2u64, 3u64), (3, 4), (4, 5), (5, 6)] {
            assert_eq!(
                function_b_distance(&f, 0, g_j, 3, &lim()).unwrap() as u64,
                3 + j - 2
            );
        }
        assert!(matches!(
            function_b_distance(&f, 0, 2, 3, &lim()),
            Err(Error::ValueNotInImage(2))
        ));
    }

    #[test]
    fn b2_function_values_match_printed_matrix() {
        let m = build_b2_function_values(&wt3(6), 3, 3, &lim()).unwrap();
        let expected = vec![
            vec![0, 6, 5, 4, 3],
            vec![6, 0, 6, 6, 6],
            vec![5, 6, 0, 6, 6],
            vec![4, 6, 6, 0, 6],
            vec![3, 6, 6, 6, 0],
        ];
        assert_eq!(m.rows(), expected.as_slice());
        assert_eq!(m.labels(), &["0", "3", "4", "5", "6"]);
    }

    #[test]
    fn constant_function_value_matrix_is_trivial() {
        let table = FunctionSpec::new(2, 3, FunctionKind::Table(vec![7; 8])).unwrap();
        let m = build_b1_function_values(&table, 3, 3, &lim()).unwrap();
        assert_eq!(m.order(), 1);
        assert!(m.is_zero());
    }

    #[test]
    fn b1_vectors_single_fiber_is_zero() {
        let f = wt3(6);
        let a = Word::parse("111000", 2).unwrap();
        let b = Word::parse("011100", 2).unwrap();
        let m = build_b1_vectors(&f, 3, 3, &[a, b]).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn b1_b2_bracket_boundary() {
        // two words with f differing at d_b = 2t - b + 2: B1 entry 0, B2 entry 2b - 2
        let f = wt3(6);
        let x1 = Word::parse("100000", 2).unwrap(); // wt_3 = 3
        let x2 = Word::parse("110000", 2).unwrap(); // wt_3 = 4
        let d = crate::metric::b_distance(&x1, &x2, 3).unwrap();
        let t = (d + 3 - 2) / 2; // pick t so 2t - b + 2 = d
        assert_eq!(2 * t - 3 + 2, d);
        let m1 = build_b1_vectors(&f, t, 3, &[x1.clone(), x2.clone()]).unwrap();
        let m2 = build_b2_vectors(&f, t, 3, &[x1, x2]).unwrap();
        assert_eq!(m1.get(0, 1), 0);
        assert_eq!(m2.get(0, 1), 2 * 3 - 2);
    }

    #[test]
    fn duplicate_vectors_rejected() {
        let f = wt3(6);
        let a = Word::parse("111000", 2).unwrap();
        assert!(matches!(
            build_b1_vectors(&f, 3, 3, &[a.clone(), a]),
            Err(Error::DuplicateVectors)
        ));
    }

    #[test]
    fn wtb_closed_forms_match_example() {
        let b2 = wtb_b2_closed(6, 3, 3).unwrap();
        let printed = vec![
            vec![0, 6, 5, 4, 3],
            vec![6, 0, 6, 6, 6],
            vec![5, 6, 0, 6, 6],
            vec![4, 6, 6, 0, 6],
            vec![3, 6, 6, 6, 0],
        ];
        assert_eq!(b2.rows(), printed.as_slice());

        let b1 = wtb_b1_closed(6, 3, 3).unwrap();
        // the printed example shows 1 at the two extreme corners; the
        // closed form [2t-2b+3-|i-j|]^+ = [3-4]^+ gives 0 there
        let closed = vec![
            vec![0, 2, 1, 0, 0],
            vec![2, 0, 2, 1, 0],
            vec![1, 2, 0, 2, 1],
            vec![0, 1, 2, 0, 2],
            vec![0, 0, 1, 2, 0],
        ];
        assert_eq!(b1.rows(), closed.as_slice());
    }

    #[test]
    fn wtb_b1_closed_matches_definition() {
        for k in [6usize, 7, 8] {
            for t in [2usize, 3, 4] {
                let closed = wtb_b1_closed(k, t, 3).unwrap();
                let f = wt3(k);
                let xs: Vec<Word> = (0..=(k - 2))
                    .map(|i| {
                        let mut s = vec![1u32; i];
                        s.resize(k, 0);
                        Word::new(Alphabet::new(2).unwrap(), s).unwrap()
                    })
                    .collect();
                let built = build_b1_vectors(&f, t, 3, &xs).unwrap();
                assert_eq!(closed.rows(), built.rows(), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn wtb_b2_closed_matches_definition() {
        for k in [6usize, 7, 8] {
            for t in [2usize, 3, 4] {
                let closed = wtb_b2_closed(k, t, 3).unwrap();
                let built = build_b2_function_values(&wt3(k), t, 3, &lim()).unwrap();
                assert_eq!(closed.rows(), built.rows(), "k={k} t={t}");
            }
        }
    }

    #[test]
    fn matrix_csv_round_trip() {
        let m = wtb_b2_closed(6, 3, 3).unwrap();
        let csv = m.to_csv();
        let back = DistanceMatrix::from_csv(&csv).unwrap();
        assert_eq!(m, back);
    }
}
