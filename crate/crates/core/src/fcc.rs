//! Function-correcting codes: the distance verifier, the
//! function-dependent adjacency predicate, exact optimal-redundancy
//! search, three explicit encoder constructions, and an aggregated
//! redundancy-bound report.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::functions::{
    build_b1_vectors, build_b2_function_values, build_b2_vectors, function_ball, is_locally_binary,
    FunctionKind, FunctionSpec,
};
use crate::irregular::{
    default_orderings, exact_code_at, greedy_construct, gv_upper, plotkin_lower, BoundEntry,
    BoundKind, BoundReport, BoundValue, IrregularCode,
};
use crate::limits::{checked_pow, Limits};
use crate::metric::{b_distance, b_distance_pattern, b_weight, smod, Alphabet, Word};

/// A total map from information words to redundancy words; the code word
/// for x is the concatenation (x, p(x)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoder {
    q: u32,
    k: usize,
    r: usize,
    b: usize,
    t: usize,
    table: Vec<u64>,
}

impl Encoder {
    pub fn new(q: u32, k: usize, r: usize, b: usize, t: usize, table: Vec<u64>) -> Result<Encoder> {
        Alphabet::new(q)?;
        let domain = checked_pow(q, k)
            .ok_or_else(|| Error::TooLarge(format!("q^k overflows for q={q}, k={k}")))?;
        if table.len() as u64 != domain {
            return Err(Error::SizeMismatch(table.len(), domain as usize));
        }
        let range = checked_pow(q, r)
            .ok_or_else(|| Error::TooLarge(format!("q^r overflows for q={q}, r={r}")))?;
        if let Some(&bad) = table.iter().find(|&&p| p >= range) {
            return Err(Error::BadParams(format!("redundancy index {bad} out of range q^r = {range}")));
        }
        Ok(Encoder { q, k, r, b, t, table })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.q).expect("validated at construction")
    }

    fn check_input(&self, x: &Word) -> Result<()> {
        if x.len() != self.k {
            return Err(Error::LengthMismatch(x.len(), self.k));
        }
        if x.q() != self.q {
            return Err(Error::AlphabetMismatch(x.q(), self.q));
        }
        Ok(())
    }

    /// p(x); None when r = 0.
    pub fn redundancy(&self, x: &Word) -> Result<Option<Word>> {
        self.check_input(x)?;
        if self.r == 0 {
            return Ok(None);
        }
        let idx = self.table[x.index() as usize];
        Ok(Some(Word::from_index(self.alphabet(), self.r, idx)?))
    }

    /// Enc(x) = (x, p(x)), length k + r.
    pub fn encode(&self, x: &Word) -> Result<Word> {
        self.check_input(x)?;
        match self.redundancy(x)? {
            Some(p) => x.concat(&p),
            None => Ok(x.clone()),
        }
    }

    /// CSV rows `x,p` covering the whole domain; p is empty when r = 0.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("x,p\n");
        let alphabet = self.alphabet();
        for idx in 0..self.table.len() {
            let x = Word::from_index(alphabet, self.k, idx as u64)?;
            match self.redundancy(&x)? {
                Some(p) => out.push_str(&format!("{x},{p}\n")),
                None => out.push_str(&format!("{x},\n")),
            }
        }
        Ok(out)
    }

    pub fn from_csv(text: &str, q: u32, b: usize, t: usize) -> Result<Encoder> {
        let mut rows: Vec<(Word, Option<Word>)> = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line == "x,p" {
                continue;
            }
            let (x_text, p_text) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected `x,p`, got '{line}'")))?;
            let x = Word::parse(x_text.trim(), q)?;
            let p = if p_text.trim().is_empty() {
                None
            } else {
                Some(Word::parse(p_text.trim(), q)?)
            };
            rows.push((x, p));
        }
        let (first_x, first_p) = rows.first().ok_or_else(|| Error::Parse("empty encoder table".into()))?;
        let k = first_x.len();
        let r = first_p.as_ref().map_or(0, Word::len);
        let domain = checked_pow(q, k)
            .ok_or_else(|| Error::TooLarge(format!("q^k overflows for q={q}, k={k}")))?;
        let mut table: Vec<Option<u64>> = vec![None; domain as usize];
        for (x, p) in rows {
            if x.len() != k {
                return Err(Error::LengthMismatch(x.len(), k));
            }
            let idx = match &p {
                Some(p) if p.len() == r && r > 0 => p.index(),
                None if r == 0 => 0,
                _ => return Err(Error::Parse("inconsistent redundancy lengths".into())),
            };
            table[x.index() as usize] = Some(idx);
        }
        let table: Vec<u64> = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::IncompleteTable(format!("missing row for word index {i}"))))
            .collect::<Result<_>>()?;
        Encoder::new(q, k, r, b, t, table)
    }
}

fn encoded_words(enc: &Encoder, f: &FunctionSpec, limits: &Limits) -> Result<Vec<(Word, u64, Word)>> {
    if f.k() != enc.k() || f.q() != enc.q() {
        return Err(Error::ShapeMismatch);
    }
    let total = checked_pow(enc.q(), enc.k())
        .filter(|&t| t <= limits.max_codebook)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the codebook guard".into()))?;
    let alphabet = enc.alphabet();
    (0..total)
        .map(|idx| {
            let x = Word::from_index(alphabet, enc.k(), idx)?;
            let v = f.eval(&x)?;
            let e = enc.encode(&x)?;
            Ok((x, v, e))
        })
        .collect()
}

/// First cross-fiber pair violating d_b(Enc(x1), Enc(x2)) >= 2t + 1, if any.
pub fn fcc_violation(enc: &Encoder, f: &FunctionSpec, limits: &Limits) -> Result<Option<(Word, Word)>> {
    let rows = encoded_words(enc, f, limits)?;
    let need = 2 * enc.t() + 1;
    for i in 0..rows.len() {
        for row_j in rows.iter().skip(i + 1) {
            if rows[i].1 != row_j.1 && b_distance(&rows[i].2, &row_j.2, enc.b())? < need {
                return Ok(Some((rows[i].0.clone(), row_j.0.clone())));
            }
        }
    }
    Ok(None)
}

/// True iff every cross-fiber encoded pair meets the distance bound.
pub fn verify_fcc(enc: &Encoder, f: &FunctionSpec, limits: &Limits) -> Result<bool> {
    Ok(fcc_violation(enc, f, limits)?.is_none())
}

/// Adjacency in the function-dependent graph on vertices (x, p): an edge
/// joins distinct vertices sharing x, or vertices whose f-values differ
/// with encoded distance below 2t + 1.
pub fn is_edge(
    v1: (&Word, &Word),
    v2: (&Word, &Word),
    f: &FunctionSpec,
    t: usize,
    b: usize,
) -> Result<bool> {
    let (x1, p1) = v1;
    let (x2, p2) = v2;
    if x1.len() != x2.len() || p1.len() != p2.len() || x1.len() != f.k() {
        return Err(Error::ShapeMismatch);
    }
    if x1 == x2 {
        return Ok(p1 != p2);
    }
    if f.eval(x1)? == f.eval(x2)? {
        return Ok(false);
    }
    let d = b_distance(&x1.concat(p1)?, &x2.concat(p2)?, b)?;
    Ok(d < 2 * t + 1)
}

struct AssignmentSearch {
    values: Vec<u64>,
    symbols: Vec<Vec<u32>>,
    red_symbols: Vec<Vec<u32>>,
    pat_dist: Vec<usize>,
    need: usize,
}

impl AssignmentSearch {
    fn conflict(&self, i: usize, pi: usize, j: usize, pj: usize) -> bool {
        if self.values[i] == self.values[j] {
            return false;
        }
        let k = self.symbols[i].len();
        let r = self.red_symbols[pi].len();
        let mut mask = 0usize;
        for l in 0..k {
            if self.symbols[i][l] != self.symbols[j][l] {
                mask |= 1 << l;
            }
        }
        for l in 0..r {
            if self.red_symbols[pi][l] != self.red_symbols[pj][l] {
                mask |= 1 << (k + l);
            }
        }
        self.pat_dist[mask] < self.need
    }

    /// Lexicographic DFS: words in index order, each tried with redundancy
    /// indices in increasing order, so the first solution found is the
    /// lexicographically least assignment.
    fn solve(&self, assigned: &mut Vec<usize>, limits: &Limits) -> Result<bool> {
        if limits.expired() {
            return Err(Error::TimedOut);
        }
        let i = assigned.len();
        if i == self.symbols.len() {
            return Ok(true);
        }
        'cands: for p in 0..self.red_symbols.len() {
            for (j, &pj) in assigned.iter().enumerate() {
                if self.conflict(i, p, j, pj) {
                    continue 'cands;
                }
            }
            assigned.push(p);
            if self.solve(assigned, limits)? {
                return Ok(true);
            }
            assigned.pop();
        }
        Ok(false)
    }
}

/// Exhaustive search for a valid redundancy assignment at fixed r,
/// equivalent to finding a q^k-size independent set in the
/// function-dependent graph (one vertex per information word).
pub fn find_assignment(f: &FunctionSpec, r: usize, t: usize, b: usize, limits: &Limits) -> Result<Encoder> {
    let (q, k) = (f.q(), f.k());
    let total = checked_pow(q, k + r)
        .filter(|&t| t <= limits.max_space)
        .ok_or_else(|| Error::TooLarge(format!("q^(k+r) exceeds the search guard (q={q}, k={k}, r={r})")))?;
    let _ = total;
    let domain = checked_pow(q, k).unwrap();
    let alphabet = f.alphabet();
    let mut values = Vec::with_capacity(domain as usize);
    let mut symbols = Vec::with_capacity(domain as usize);
    for idx in 0..domain {
        let x = Word::from_index(alphabet, k, idx)?;
        values.push(f.eval(&x)?);
        symbols.push(x.symbols().to_vec());
    }
    let need = 2 * t + 1;
    if r == 0 {
        // valid iff the raw information words already satisfy the bound
        for i in 0..domain as usize {
            for j in (i + 1)..domain as usize {
                if values[i] != values[j] {
                    let mut pattern = vec![false; k];
                    for l in 0..k {
                        pattern[l] = symbols[i][l] != symbols[j][l];
                    }
                    if b_distance_pattern(&pattern, b) < need {
                        return Err(Error::Infeasible);
                    }
                }
            }
        }
        return Encoder::new(q, k, 0, b, t, vec![0; domain as usize]);
    }
    let red_total = checked_pow(q, r).unwrap();
    let red_symbols: Vec<Vec<u32>> = (0..red_total)
        .map(|idx| Ok(Word::from_index(alphabet, r, idx)?.symbols().to_vec()))
        .collect::<Result<_>>()?;
    let mut pat_dist = vec![0usize; 1 << (k + r)];
    let mut pattern = vec![false; k + r];
    for mask in 0..(1usize << (k + r)) {
        for (l, slot) in pattern.iter_mut().enumerate() {
            *slot = mask & (1 << l) != 0;
        }
        pat_dist[mask] = b_distance_pattern(&pattern, b);
    }
    let search = AssignmentSearch { values, symbols, red_symbols, pat_dist, need };
    let mut assigned = Vec::with_capacity(domain as usize);
    if !search.solve(&mut assigned, limits)? {
        return Err(Error::Infeasible);
    }
    Encoder::new(q, k, r, b, t, assigned.into_iter().map(|p| p as u64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Exact,
    Upper,
    Lower,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::Exact => "exact",
            CertKind::Upper => "upper",
            CertKind::Lower => "lower",
        }
    }
}

/// A redundancy value with provenance; exact and upper certificates carry
/// a verified witness encoder.
#[derive(Debug, Clone)]
pub struct RedundancyCertificate {
    pub r: usize,
    pub kind: CertKind,
    pub witness: Option<Encoder>,
    pub method: String,
}

impl RedundancyCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.r,
            "kind": self.kind.as_str(),
            "method": self.method,
        })
    }
}

/// Smallest r in [0, r_max] admitting a valid assignment; None when the
/// range is exhausted or the deadline expires.
pub fn optimal_redundancy(
    f: &FunctionSpec,
    t: usize,
    b: usize,
    r_max: usize,
    limits: &Limits,
) -> Result<Option<RedundancyCertificate>> {
    for r in 0..=r_max {
        match find_assignment(f, r, t, b, limits) {
            Ok(enc) => {
                return Ok(Some(RedundancyCertificate {
                    r,
                    kind: CertKind::Exact,
                    witness: Some(enc),
                    method: "exhaustive assignment search".into(),
                }));
            }
            Err(Error::Infeasible) => {}
            Err(Error::TimedOut) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Repetition encoder for functions whose every radius-(2t-b) ball has at
/// most two values: r = 2t - b + 1; x gets the a-repetition word when
/// f(x) is the larger value in its radius-2t ball, else zeros.
pub fn encoder_locally_binary(
    f: &FunctionSpec,
    t: usize,
    b: usize,
    a: u32,
    limits: &Limits,
) -> Result<Encoder> {
    let (q, k) = (f.q(), f.k());
    if a == 0 || a >= q {
        return Err(Error::BadSymbol { symbol: a, q });
    }
    if t <= b - 1 {
        return Err(Error::BadParams(format!("requires t > b - 1, got t={t}, b={b}")));
    }
    if !is_locally_binary(f, 2 * t - b, b, limits)? {
        return Err(Error::NotLocallyBinary);
    }
    let r = 2 * t - b + 1;
    let alphabet = f.alphabet();
    let a_rep = Word::new(alphabet, vec![a; r])?.index();
    let domain = checked_pow(q, k)
        .filter(|&t| t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the enumeration guard".into()))?;
    let mut table = Vec::with_capacity(domain as usize);
    for idx in 0..domain {
        let x = Word::from_index(alphabet, k, idx)?;
        let ball = function_ball(f, &x, 2 * t, b, limits)?;
        let top = *ball.iter().next_back().expect("ball contains f(x)");
        table.push(if f.eval(&x)? == top { a_rep } else { 0 });
    }
    Encoder::new(q, k, r, b, t, table)
}

/// Base words for the weight encoder: 2t + 1 words of the given length
/// with pairwise distance >= 2t, by greedy search first and backtracking
/// second.
fn weight_base_code(q: u32, b: usize, t: usize, r: usize, limits: &Limits) -> Result<Option<IrregularCode>> {
    let matrix = crate::functions::DistanceMatrix::uniform(2 * t + 1, 2 * t as u64);
    for ordering in default_orderings(&matrix) {
        if let Ok(code) = greedy_construct(&matrix, q, b, r, &ordering, limits) {
            return Ok(Some(code));
        }
    }
    if matrix.order() <= limits.max_m {
        return exact_code_at(&matrix, q, b, r, limits);
    }
    Ok(None)
}

/// Weight-class encoder: base words p_1..p_{2t+1} pairwise at distance
/// >= 2t, assigned by p_{(wt_b(x)+1) smod (2t+1)}. The base length is the
/// given r_p or the smallest feasible length scanning upward from 2t.
pub fn encoder_weight(
    k: usize,
    t: usize,
    b: usize,
    q: u32,
    r_p: Option<usize>,
    limits: &Limits,
) -> Result<Encoder> {
    if 2 * t < b {
        return Err(Error::BadParams(format!("requires t > (b-1)/2, got t={t}, b={b}")));
    }
    if k < b {
        return Err(Error::BadParams(format!("weight function requires k >= b, got k={k}, b={b}")));
    }
    let matrix = crate::functions::DistanceMatrix::uniform(2 * t + 1, 2 * t as u64);
    let base = match r_p {
        Some(r) => weight_base_code(q, b, t, r, limits)?
            .ok_or_else(|| Error::BaseCodeInfeasible(format!("no base code of length {r}")))?,
        None => {
            let stop = gv_upper(&matrix, q, b, &default_orderings(&matrix), limits)?;
            let mut found = None;
            for r in (2 * t)..=stop.max(2 * t) {
                if let Some(code) = weight_base_code(q, b, t, r, limits)? {
                    found = Some(code);
                    break;
                }
            }
            found.ok_or_else(|| Error::BaseCodeInfeasible("scan exhausted".into()))?
        }
    };
    let r = base.r();
    let alphabet = Alphabet::new(q)?;
    let domain = checked_pow(q, k)
        .filter(|&t| t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the enumeration guard".into()))?;
    let mut table = Vec::with_capacity(domain as usize);
    for idx in 0..domain {
        let x = Word::from_index(alphabet, k, idx)?;
        let i = smod(b_weight(&x, b)? as u64 + 1, 2 * t as u64 + 1)?;
        table.push(base.words()[i as usize - 1].index());
    }
    Encoder::new(q, k, r, b, t, table)
}

/// Step-function encoder with r = 2t: base words (a^(i-1) 0^(2t-i+1)) for
/// i <= 2t+1 and (a^2t) beyond, assigned by p_{(wt_b(x)+1) smod T}.
pub fn encoder_weight_distribution(
    k: usize,
    t: usize,
    b: usize,
    q: u32,
    t_param: u64,
    a: u32,
    limits: &Limits,
) -> Result<Encoder> {
    if a == 0 || a >= q {
        return Err(Error::BadSymbol { symbol: a, q });
    }
    if t < 1 {
        return Err(Error::BadParams("requires t >= 1".into()));
    }
    if t_param < 2 * t as u64 + 1 {
        return Err(Error::BadT(format!("T must be >= 2t + 1 = {}, got {t_param}", 2 * t + 1)));
    }
    // remaining T preconditions (divisibility, floor((b+2)/2)) are the
    // function's own
    FunctionSpec::new(q, k, FunctionKind::WeightDistribution { b, t_param })?;
    let r = 2 * t;
    let alphabet = Alphabet::new(q)?;
    let base: Vec<u64> = (1..=t_param)
        .map(|i| {
            let reps = if i <= 2 * t as u64 + 1 { i as usize - 1 } else { 2 * t };
            let mut symbols = vec![a; reps];
            symbols.resize(r, 0);
            Ok(Word::new(alphabet, symbols)?.index())
        })
        .collect::<Result<_>>()?;
    let domain = checked_pow(q, k)
        .filter(|&t| t <= limits.max_words)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the enumeration guard".into()))?;
    let mut table = Vec::with_capacity(domain as usize);
    for idx in 0..domain {
        let x = Word::from_index(alphabet, k, idx)?;
        let i = smod(b_weight(&x, b)? as u64 + 1, t_param)?;
        table.push(base[i as usize - 1]);
    }
    Encoder::new(q, k, r, b, t, table)
}

/// Aggregated bounds on the optimal redundancy for f at (t, b), plus the
/// classical-code redundancy floor for comparison. The comparison value
/// is not a bound on the optimal redundancy, so it is carried separately
/// from the sandwich entries.
#[derive(Debug, Clone)]
pub struct RedundancyReport {
    pub bounds: BoundReport,
    pub classical_comparison: Option<f64>,
    pub exact: Option<RedundancyCertificate>,
}

impl RedundancyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bounds": self.bounds.to_json(),
            "classical_comparison": self.classical_comparison,
            "exact": self.exact.as_ref().map(|c| c.to_json()),
        })
    }
}

fn all_words(f: &FunctionSpec, limits: &Limits) -> Result<Vec<Word>> {
    let total = checked_pow(f.q(), f.k())
        .filter(|&t| t <= limits.max_codebook)
        .ok_or_else(|| Error::TooLarge("q^k exceeds the codebook guard".into()))?;
    let alphabet = f.alphabet();
    (0..total).map(|idx| Word::from_index(alphabet, f.k(), idx)).collect()
}

pub fn redundancy_bounds_report(
    f: &FunctionSpec,
    t: usize,
    b: usize,
    exact_r_max: Option<usize>,
    limits: &Limits,
) -> Result<RedundancyReport> {
    let (q, k) = (f.q(), f.k());
    let e = f.image_size();
    let mut bounds = BoundReport::default();

    if e == 1 {
        for kind in [BoundKind::Lower, BoundKind::Upper] {
            bounds.push(BoundEntry {
                name: "constant function".into(),
                kind,
                value: Some(BoundValue::Int(0)),
                preconditions_ok: true,
                note: "no cross-fiber pairs to separate".into(),
            });
        }
    } else {
        // two-value floor 2(t - b + 1)
        let ok = t > b - 1;
        bounds.push(BoundEntry {
            name: "two-value floor".into(),
            kind: BoundKind::Lower,
            value: if ok { Some(BoundValue::Int(2 * (t - b + 1) as u64)) } else { None },
            preconditions_ok: ok,
            note: if ok { "2(t - b + 1)".into() } else { "requires t > b - 1".into() },
        });
        // averaging lower bound on the full pairwise constraint matrix
        let words = all_words(f, limits)?;
        let b1_full = build_b1_vectors(f, t, b, &words)?;
        if b1_full.order() >= 2 {
            bounds.push(BoundEntry {
                name: "pairwise-matrix averaging lower".into(),
                kind: BoundKind::Lower,
                value: Some(BoundValue::Rational(plotkin_lower(&b1_full, q, b)?)),
                preconditions_ok: true,
                note: "averaging bound over all information-word pairs".into(),
            });
        }
        // counting upper bounds on the full pairwise matrix and on the
        // function-value matrix
        let b2_full = build_b2_vectors(f, t, b, &words)?;
        bounds.push(BoundEntry {
            name: "pairwise-matrix counting upper".into(),
            kind: BoundKind::Upper,
            value: Some(BoundValue::Int(
                gv_upper(&b2_full, q, b, &default_orderings(&b2_full), limits)? as u64,
            )),
            preconditions_ok: true,
            note: "counting bound over all information-word pairs".into(),
        });
        let b2_values = build_b2_function_values(f, t, b, limits)?;
        bounds.push(BoundEntry {
            name: "function-value matrix counting upper".into(),
            kind: BoundKind::Upper,
            value: Some(BoundValue::Int(
                gv_upper(&b2_values, q, b, &default_orderings(&b2_values), limits)? as u64,
            )),
            preconditions_ok: true,
            note: "same redundancy word shared within each fiber".into(),
        });
        // locally-binary construction
        if t > b - 1 && is_locally_binary(f, 2 * t - b, b, limits)? {
            let enc = encoder_locally_binary(f, t, b, 1, limits)?;
            let ok = verify_fcc(&enc, f, limits)?;
            bounds.push(BoundEntry {
                name: "repetition construction upper".into(),
                kind: BoundKind::Upper,
                value: Some(BoundValue::Int(enc.r() as u64)),
                preconditions_ok: ok,
                note: "witnessed by the two-valued-ball repetition encoder".into(),
            });
        }
    }

    if let FunctionKind::BWeight { b: fb } = f.kind() {
        if *fb == b {
            // averaging lower bound specialized to the weight function
            let ok = k > t && t + 2 >= b;
            let value = if ok {
                let qb = checked_pow(q, b).ok_or_else(|| Error::TooLarge("q^b overflows".into()))?;
                let num = BigInt::from(5 * qb as i64)
                    * BigInt::from(t as i64 - b as i64 + 2)
                    * BigInt::from(t as i64 - b as i64 + 1);
                let den = BigInt::from(3 * (qb as i64 - 1)) * BigInt::from(t as i64 - b as i64 + 3);
                Some(BoundValue::Rational(BigRational::new(num, den)))
            } else {
                None
            };
            bounds.push(BoundEntry {
                name: "weight-function averaging lower".into(),
                kind: BoundKind::Lower,
                value,
                preconditions_ok: ok,
                note: if ok { "5q^b(t-b+2)(t-b+1) / 3(q^b-1)(t-b+3)".into() } else { "requires k > t".into() },
            });
            bounds.push(BoundEntry {
                name: "weight-function floor".into(),
                kind: BoundKind::Lower,
                value: Some(BoundValue::Int((2 * t).saturating_sub(b - 1) as u64)),
                preconditions_ok: true,
                note: "2t - b + 1".into(),
            });
            // asymptotic counting upper at D = 2t
            let ok = 2 * t >= 9 + b && b <= k && k <= (2 * t - b + 1).pow(2);
            let value = if ok {
                let s = (2 * t - b + 1) as f64;
                let denom = q as f64 * (1.0 - (s.ln() / s).sqrt()) - 1.0;
                (denom > 0.0).then(|| BoundValue::Real(q as f64 * (2 * t - b) as f64 / denom))
            } else {
                None
            };
            let got = value.is_some();
            bounds.push(BoundEntry {
                name: "weight-function asymptotic upper".into(),
                kind: BoundKind::Upper,
                value,
                preconditions_ok: ok && got,
                note: "q(2t-b) / (q(1 - sqrt(ln(2t-b+1)/(2t-b+1))) - 1)".into(),
            });
            // weight-class construction witness
            if 2 * t >= b {
                if let Ok(enc) = encoder_weight(k, t, b, q, None, limits) {
                    let ok = verify_fcc(&enc, f, limits)?;
                    bounds.push(BoundEntry {
                        name: "weight-class construction upper".into(),
                        kind: BoundKind::Upper,
                        value: Some(BoundValue::Int(enc.r() as u64)),
                        preconditions_ok: ok,
                        note: "witnessed by the weight-class encoder".into(),
                    });
                }
            }
        }
    }

    if let FunctionKind::WeightDistribution { b: fb, t_param } = f.kind() {
        if *fb == b && *t_param >= 2 * t as u64 + 1 {
            let enc = encoder_weight_distribution(k, t, b, q, *t_param, 1, limits)?;
            let ok = verify_fcc(&enc, f, limits)?;
            bounds.push(BoundEntry {
                name: "step-function construction upper".into(),
                kind: BoundKind::Upper,
                value: Some(BoundValue::Int(2 * t as u64)),
                preconditions_ok: ok,
                note: "witnessed by the prefix-repetition encoder".into(),
            });
        }
    }

    let exact = match exact_r_max {
        Some(r_max) => optimal_redundancy(f, t, b, r_max, limits)?,
        None => None,
    };
    if let Some(cert) = &exact {
        bounds.push(BoundEntry {
            name: "exhaustive search".into(),
            kind: BoundKind::Exact,
            value: Some(BoundValue::Int(cert.r as u64)),
            preconditions_ok: true,
            note: cert.method.clone(),
        });
    }

    // classical-code redundancy floor floor(t/3) log_q(k + 2t - 2),
    // stated for the b = 3 read channel
    let classical_comparison = (b == 3).then(|| {
        let arg = (k + 2 * t - 2) as f64;
        (t / 3) as f64 * arg.ln() / (q as f64).ln()
    });

    Ok(RedundancyReport { bounds, classical_comparison, exact })
}

/// Classical-code redundancy floor used in the comparison table.
pub fn classical_redundancy_floor(k: usize, t: usize, q: u32) -> f64 {
    (t / 3) as f64 * ((k + 2 * t - 2) as f64).ln() / (q as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::FunctionKind;

    fn lim() -> Limits {
        Limits::default()
    }

    fn or4() -> FunctionSpec {
        FunctionSpec::new(2, 4, FunctionKind::Or).unwrap()
    }

    fn wt3(k: usize) -> FunctionSpec {
        FunctionSpec::new(2, k, FunctionKind::BWeight { b: 3 }).unwrap()
    }

    #[test]
    fn constant_function_r0_valid() {
        let f = FunctionSpec::new(2, 3, FunctionKind::Table(vec![5; 8])).unwrap();
        let enc = find_assignment(&f, 0, 2, 3, &lim()).unwrap();
        assert!(verify_fcc(&enc, &f, &lim()).unwrap());
        let cert = optimal_redundancy(&f, 2, 3, 4, &lim()).unwrap().unwrap();
        assert_eq!(cert.r, 0);
    }

    #[test]
    fn or_function_exact_redundancy() {
        let f = or4();
        // r = 2 is feasible for t = 2, b = 3
        let enc = find_assignment(&f, 2, 2, 3, &lim()).unwrap();
        assert!(verify_fcc(&enc, &f, &lim()).unwrap());
        let cert = optimal_redundancy(&f, 2, 3, 4, &lim()).unwrap().unwrap();
        assert!(cert.r <= 2);
        assert!(verify_fcc(cert.witness.as_ref().unwrap(), &f, &lim()).unwrap());
        // two-value floor 2(t - b + 1) = 0 at t = 2, b = 3
        assert!(cert.r <= 2);
    }

    #[test]
    fn weight_function_exact_redundancy() {
        let f = wt3(4);
        let cert = optimal_redundancy(&f, 2, 3, 4, &lim()).unwrap().unwrap();
        assert!(cert.r <= 2);
        assert!(verify_fcc(cert.witness.as_ref().unwrap(), &f, &lim()).unwrap());
    }

    #[test]
    fn edge_predicate() {
        let f = or4();
        let x0 = Word::parse("0000", 2).unwrap();
        let x1 = Word::parse("1000", 2).unwrap();
        let p0 = Word::parse("00", 2).unwrap();
        let p1 = Word::parse("11", 2).unwrap();
        // same x, different p
        assert!(is_edge((&x0, &p0), (&x0, &p1), &f, 2, 3).unwrap());
        // same vertex is not an edge
        assert!(!is_edge((&x0, &p0), (&x0, &p0), &f, 2, 3).unwrap());
        // cross-fiber close pair: d_3(000000, 100000) = 3 < 5
        assert!(is_edge((&x0, &p0), (&x1, &p0), &f, 2, 3).unwrap());
        // same fiber, never an edge
        let x2 = Word::parse("0100", 2).unwrap();
        assert!(!is_edge((&x1, &p0), (&x2, &p0), &f, 2, 3).unwrap());
    }

    #[test]
    fn locally_binary_encoder_valid() {
        let f = FunctionSpec::new(2, 6, FunctionKind::Or).unwrap();
        let enc = encoder_locally_binary(&f, 3, 3, 1, &lim()).unwrap();
        assert_eq!(enc.r(), 2 * 3 - 3 + 1);
        assert!(verify_fcc(&enc, &f, &lim()).unwrap());
        // fiber f=1 gets the repetition word, fiber f=0 gets zeros
        let one = Word::parse("100000", 2).unwrap();
        let zero = Word::parse("000000", 2).unwrap();
        assert_eq!(enc.redundancy(&one).unwrap().unwrap().to_string(), "1111");
        assert_eq!(enc.redundancy(&zero).unwrap().unwrap().to_string(), "0000");
        // r satisfies the two-sided bracket 2(t-b+1) <= r = 2t-b+1
        assert!(2 * (3 - 3 + 1) <= enc.r());
    }

    #[test]
    fn locally_binary_encoder_rejects() {
        assert!(matches!(
            encoder_locally_binary(&wt3(6), 3, 3, 1, &lim()),
            Err(Error::NotLocallyBinary)
        ));
        assert!(matches!(
            encoder_locally_binary(&or4(), 2, 3, 0, &lim()),
            Err(Error::BadSymbol { .. })
        ));
    }

    #[test]
    fn weight_encoder_valid() {
        let f = wt3(6);
        let enc = encoder_weight(6, 3, 3, 2, None, &lim()).unwrap();
        assert!(verify_fcc(&enc, &f, &lim()).unwrap());
        assert!(enc.r() >= 2 * 3 - 3 + 1);
        // base words pairwise at distance >= 2t
        let mut seen = std::collections::BTreeSet::new();
        let alphabet = enc.alphabet();
        for idx in 0..64 {
            let x = Word::from_index(alphabet, 6, idx).unwrap();
            seen.insert(enc.redundancy(&x).unwrap().unwrap().index());
        }
        let base: Vec<Word> = seen
            .iter()
            .map(|&i| Word::from_index(alphabet, enc.r(), i).unwrap())
            .collect();
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                assert!(b_distance(&base[i], &base[j], 3).unwrap() >= 6);
            }
        }
    }

    #[test]
    fn weight_distribution_encoder_valid() {
        let f = FunctionSpec::new(2, 9, FunctionKind::WeightDistribution { b: 3, t_param: 5 }).unwrap();
        let enc = encoder_weight_distribution(9, 2, 3, 2, 5, 1, &lim()).unwrap();
        assert_eq!(enc.r(), 4);
        assert!(verify_fcc(&enc, &f, &lim()).unwrap());
        // base words are the prefix repetitions
        let expected = ["0000", "1000", "1100", "1110", "1111"];
        let alphabet = enc.alphabet();
        for idx in 0..512u64 {
            let x = Word::from_index(alphabet, 9, idx).unwrap();
            let w = crate::metric::b_weight(&x, 3).unwrap() as u64;
            let i = smod(w + 1, 5).unwrap() as usize;
            assert_eq!(enc.redundancy(&x).unwrap().unwrap().to_string(), expected[i - 1]);
        }
    }

    #[test]
    fn weight_distribution_rejects_bad_t() {
        assert!(matches!(
            encoder_weight_distribution(9, 3, 3, 2, 5, 1, &lim()),
            Err(Error::BadT(_))
        ));
        assert!(matches!(
            encoder_weight_distribution(8, 2, 3, 2, 5, 1, &lim()),
            Err(Error::BadT(_))
        ));
    }

    #[test]
    fn broken_encoder_fails_verify() {
        let f = or4();
        let cert = optimal_redundancy(&f, 2, 3, 4, &lim()).unwrap().unwrap();
        let enc = cert.witness.unwrap();
        let mut table: Vec<u64> = (0..16)
            .map(|idx| {
                let x = Word::from_index(enc.alphabet(), 4, idx).unwrap();
                enc.redundancy(&x).unwrap().unwrap().index()
            })
            .collect();
        // zero a nonzero row to break a cross-fiber constraint
        let victim = (1..16).find(|&i| table[i as usize] != 0).unwrap();
        table[victim as usize] = 0;
        let broken = Encoder::new(2, 4, enc.r(), 3, 2, table).unwrap();
        let violation = fcc_violation(&broken, &f, &lim()).unwrap();
        assert!(violation.is_some());
    }

    #[test]
    fn encoder_csv_round_trip() {
        let f = or4();
        let enc = find_assignment(&f, 2, 2, 3, &lim()).unwrap();
        let csv = enc.to_csv().unwrap();
        let back = Encoder::from_csv(&csv, 2, 3, 2).unwrap();
        assert_eq!(enc, back);
        // r = 0 case
        let cf = FunctionSpec::new(2, 3, FunctionKind::Table(vec![5; 8])).unwrap();
        let enc0 = find_assignment(&cf, 0, 2, 3, &lim()).unwrap();
        let back0 = Encoder::from_csv(&enc0.to_csv().unwrap(), 2, 3, 2).unwrap();
        assert_eq!(enc0, back0);
    }

    #[test]
    fn report_or_function() {
        let f = or4();
        let report = redundancy_bounds_report(&f, 2, 3, Some(4), &lim()).unwrap();
        assert!(report.bounds.consistent());
        let exact = report.exact.as_ref().unwrap();
        assert!(verify_fcc(exact.witness.as_ref().unwrap(), &f, &lim()).unwrap());
        assert!(report.classical_comparison.is_some());
    }

    #[test]
    fn report_constant_function() {
        let f = FunctionSpec::new(2, 3, FunctionKind::Table(vec![1; 8])).unwrap();
        let report = redundancy_bounds_report(&f, 2, 3, Some(2), &lim()).unwrap();
        assert!(report.bounds.consistent());
        assert_eq!(report.exact.as_ref().unwrap().r, 0);
    }

    #[test]
    fn report_weight_function_entries() {
        let f = wt3(6);
        let report = redundancy_bounds_report(&f, 3, 3, None, &lim()).unwrap();
        assert!(report.bounds.consistent());
        let avg = report
            .bounds
            .entries
            .iter()
            .find(|e| e.name == "weight-function averaging lower")
            .unwrap();
        assert!(avg.preconditions_ok);
        // 5 * 8 * 2 * 1 / (3 * 7 * 3) = 80 / 63
        match avg.value.as_ref().unwrap() {
            BoundValue::Rational(v) => {
                assert_eq!(v, &BigRational::new(BigInt::from(80), BigInt::from(63)));
            }
            other => panic!("unexpected value {other:?}"),
        }
        let floor = report
            .bounds
            .entries
            .iter()
            .find(|e| e.name == "weight-function floor")
            .unwrap();
        assert!(matches!(floor.value, Some(BoundValue::Int(4))));
    }

    #[test]
    fn weight_class_congruence() {
        // |wt_b(x) - wt_b(y)| <= d_b(x, y): the invariant that keeps the
        // weight-class encoder sound when smod folds classes together
        let alphabet = Alphabet::new(2).unwrap();
        for b in [2usize, 3] {
            for xi in 0..64u64 {
                let x = Word::from_index(alphabet, 6, xi).unwrap();
                let wx = b_weight(&x, b).unwrap() as i64;
                for yi in (xi + 1)..64 {
                    let y = Word::from_index(alphabet, 6, yi).unwrap();
                    let wy = b_weight(&y, b).unwrap() as i64;
                    let d = b_distance(&x, &y, b).unwrap() as i64;
                    assert!((wx - wy).abs() <= d, "b={b} x={x} y={y}");
                }
            }
        }
    }
}
