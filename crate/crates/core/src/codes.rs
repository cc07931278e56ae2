//! Linear codes over the subfields of a finite-field tower: row reduction,
//! duals, subfield subcodes, trace codes, weight enumeration, the
//! MacWilliams transform, and a Gilbert–Varshamov comparison.
//!
//! A [`LinearCode`] lives over one level of the tower `F_q ⊆ F_{q^s}` (level
//! `l` means entries in `F_{q^l}`) and stores its generator matrix in reduced
//! row echelon form, so two values compare equal exactly when they are the
//! same code. Exhaustive weight enumeration has three engines — bit-packed
//! Gray codes over `F_2`, a bit-sliced mixed-radix Gray walk over `F_3`, and
//! a generic fallback — all behind a hard work budget.
//!
//! ```
//! use prm_core::codes::LinearCode;
//! use prm_core::field::FieldCtx;
//!
//! let f = FieldCtx::new(2, 1, 1).unwrap();
//! // The even-weight code of length 3 and its dual, the repetition code.
//! let rows = vec![
//!     vec![f.one(), f.one(), f.zero()],
//!     vec![f.zero(), f.one(), f.one()],
//! ];
//! let code = LinearCode::from_rows(&f, 1, 3, rows, "even");
//! assert_eq!(code.weight_enumerator(&f, 1 << 20).unwrap(), vec![1, 0, 3, 0]);
//! let dual = code.dual(&f);
//! assert_eq!((dual.dim(), dual.min_distance(&f, 1 << 20).unwrap()), (1, 3));
//! ```

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{prime_power_split, FFElem, FieldCtx};

#[derive(Debug, Error)]
pub enum CodesError {
    #[error("enumerating {required} codewords exceeds the budget of {budget}")]
    EnumerationTooLarge { required: u128, budget: u64 },
    #[error("matrix text: {0}")]
    Parse(String),
}

/// A linear code over `F_{q^level}`, its generator matrix kept in reduced
/// row echelon form. Equality ignores the display label.
#[derive(Clone, Debug)]
pub struct LinearCode {
    level: u32,
    n: usize,
    rows: Vec<Vec<FFElem>>,
    label: String,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.n == other.n && self.rows == other.rows
    }
}
impl Eq for LinearCode {}

impl LinearCode {
    /// Builds a code from spanning rows: they are row-reduced, dependent and
    /// zero rows dropped. Every entry must lie in the declared subfield.
    pub fn from_rows(
        f: &FieldCtx,
        level: u32,
        n: usize,
        mut rows: Vec<Vec<FFElem>>,
        label: impl Into<String>,
    ) -> Self {
        assert_eq!(f.s() % level, 0, "level must divide the tower height");
        for row in &rows {
            assert_eq!(row.len(), n, "row length mismatch");
            assert!(
                row.iter().all(|&x| f.in_subfield(x, level)),
                "entry outside the declared subfield"
            );
        }
        rref(f, &mut rows);
        LinearCode { level, n, rows, label: label.into() }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FFElem>] {
        &self.rows
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Is the vector a codeword? Reduces it against the echelon rows.
    pub fn in_row_space(&self, f: &FieldCtx, v: &[FFElem]) -> bool {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mut w = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|&x| x != FFElem::Zero).unwrap();
            let c = w[lead];
            if c != FFElem::Zero {
                for (wj, &rj) in w.iter_mut().zip(row) {
                    *wj = f.sub(*wj, f.mul(c, rj));
                }
            }
        }
        w.iter().all(|&x| x == FFElem::Zero)
    }

    /// The dual code under the standard bilinear form, over the same level.
    pub fn dual(&self, f: &FieldCtx) -> LinearCode {
        let basis = kernel(f, &self.rows, self.n);
        LinearCode::from_rows(f, self.level, self.n, basis, format!("dual({})", self.label))
    }

    /// The subcode of words with every coordinate in the bottom field `F_q`,
    /// viewed as a code over `F_q`.
    ///
    /// A word of `self` is a combination of the generators with coefficients
    /// in `F_{q^level}`; expanding each coefficient over the power basis of a
    /// subfield generator turns "all coordinates lie in `F_q`" into an
    /// `F_q`-linear system on the expanded message, whose kernel spans the
    /// subcode.
    pub fn subfield_subcode(&self, f: &FieldCtx) -> LinearCode {
        let l = self.level as usize;
        let s = f.s() as usize;
        let k = self.dim();
        let gamma_exp = (f.qs() - 1) / (f.subfield_size(self.level) - 1);
        let gamma = f.pow(f.alpha(), gamma_exp);
        // scaled[i][j][t] = gamma^j * g_i[t]
        let scaled: Vec<Vec<Vec<FFElem>>> = (0..k)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let gj = f.pow(gamma, j as u64);
                        self.rows[i].iter().map(|&x| f.mul(gj, x)).collect()
                    })
                    .collect()
            })
            .collect();
        // One constraint per coordinate and per non-constant basis position.
        let mut constraints = Vec::with_capacity(self.n * (s - 1));
        for t in 0..self.n {
            let coords_of: Vec<Vec<FFElem>> = (0..k)
                .flat_map(|i| {
                    let scaled = &scaled;
                    (0..l).map(move |j| f.coords(scaled[i][j][t], 1))
                })
                .collect();
            for r in 1..s {
                constraints.push(coords_of.iter().map(|c| c[r]).collect::<Vec<_>>());
            }
        }
        let messages = kernel(f, &constraints, k * l);
        let rows: Vec<Vec<FFElem>> = messages
            .iter()
            .map(|y| {
                let mut word = vec![FFElem::Zero; self.n];
                for i in 0..k {
                    for j in 0..l {
                        let c = y[i * l + j];
                        if c != FFElem::Zero {
                            for (wt, &gt) in word.iter_mut().zip(&scaled[i][j]) {
                                *wt = f.add(*wt, f.mul(c, gt));
                            }
                        }
                    }
                }
                debug_assert!(word.iter().all(|&x| f.in_subfield(x, 1)));
                word
            })
            .collect();
        LinearCode::from_rows(f, 1, self.n, rows, format!("subfield({})", self.label))
    }

    /// The coordinatewise trace image down to the bottom field `F_q`.
    pub fn trace_code(&self, f: &FieldCtx) -> LinearCode {
        let gamma_exp = (f.qs() - 1) / (f.subfield_size(self.level) - 1);
        let gamma = f.pow(f.alpha(), gamma_exp);
        let mut rows = Vec::new();
        for g in &self.rows {
            for j in 0..self.level as u64 {
                let gj = f.pow(gamma, j);
                rows.push(
                    g.iter()
                        .map(|&x| f.trace_between(f.mul(gj, x), self.level, 1))
                        .collect::<Vec<_>>(),
                );
            }
        }
        LinearCode::from_rows(f, 1, self.n, rows, format!("trace({})", self.label))
    }

    /// Is the code stable under the coordinatewise `q`-power Frobenius?
    pub fn is_galois_invariant(&self, f: &FieldCtx) -> bool {
        self.rows.iter().all(|row| {
            let image: Vec<FFElem> = row.iter().map(|&x| f.pow(x, f.q())).collect();
            self.in_row_space(f, &image)
        })
    }

    /// Counts codewords of each Hamming weight by walking all
    /// `(q^level)^dim` of them; refuses when that exceeds the budget.
    pub fn weight_enumerator(&self, f: &FieldCtx, budget: u64) -> Result<Vec<u64>, CodesError> {
        let q_eff = f.subfield_size(self.level) as u128;
        let required = q_eff
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX);
        if required > budget as u128 {
            return Err(CodesError::EnumerationTooLarge { required, budget });
        }
        Ok(match q_eff {
            2 => enumerate_binary(f, &self.rows, self.n),
            3 => enumerate_ternary(f, &self.rows, self.n),
            _ => enumerate_generic(f, self.level, &self.rows, self.n),
        })
    }

    /// Exact minimum distance by full enumeration; the code must be nonzero.
    pub fn min_distance(&self, f: &FieldCtx, budget: u64) -> Result<u64, CodesError> {
        assert!(self.dim() > 0, "minimum distance of the zero code");
        let w = self.weight_enumerator(f, budget)?;
        Ok(min_weight_from(&w).expect("nonzero code has a nonzero word"))
    }

    /// Serializes the generator matrix with enough header to rebuild the
    /// ambient field: base-field size, tower height, length, dimension, and
    /// the modulus of the ambient extension, then one line of integer
    /// encodings per row.
    pub fn to_text(&self, f: &FieldCtx) -> String {
        let modulus: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        let mut out = format!(
            "q={} s={} n={} k={} modulus={}\n",
            f.q(),
            f.s(),
            self.n,
            self.dim(),
            modulus.join(",")
        );
        for row in &self.rows {
            let encs: Vec<String> = row.iter().map(|&x| f.encode(x).to_string()).collect();
            out.push_str(&encs.join(" "));
            out.push('\n');
        }
        out
    }
}

/// In-place reduced row echelon form; returns the pivot columns. Dependent
/// rows collapse to zero and are dropped.
pub fn rref(f: &FieldCtx, rows: &mut Vec<Vec<FFElem>>) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != FFElem::Zero) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != FFElem::Zero {
                let c = rows[i][col];
                for j in 0..n {
                    let sub = f.mul(c, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of the right kernel `{v : rows · v = 0}`. Stays inside whatever
/// subfield the row entries generate.
pub fn kernel(f: &FieldCtx, rows: &[Vec<FFElem>], n: usize) -> Vec<Vec<FFElem>> {
    let mut work = rows.to_vec();
    let pivots = rref(f, &mut work);
    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FFElem::Zero; n];
        v[free] = f.one();
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(work[pi][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn inner_product(f: &FieldCtx, a: &[FFElem], b: &[FFElem]) -> FFElem {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(FFElem::Zero, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// The smallest positive index with a nonzero count: the minimum distance
/// once `weights` is a weight enumerator of a nonzero code.
pub fn min_weight_from(weights: &[u64]) -> Option<u64> {
    weights
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map(|(i, _)| i as u64)
}

fn enumerate_binary(f: &FieldCtx, rows: &[Vec<FFElem>], n: usize) -> Vec<u64> {
    let words = n.div_ceil(64);
    let packed: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for (j, &x) in row.iter().enumerate() {
                if x != FFElem::Zero {
                    assert_eq!(x, f.one(), "binary walk needs entries in {{0, 1}}");
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut counts = vec![0u64; n + 1];
    let mut acc = vec![0u64; words];
    counts[0] += 1;
    let total: u64 = 1 << rows.len();
    for i in 1..total {
        let j = i.trailing_zeros() as usize;
        let mut weight = 0u32;
        for (a, b) in acc.iter_mut().zip(&packed[j]) {
            *a ^= b;
            weight += a.count_ones();
        }
        counts[weight as usize] += 1;
    }
    counts
}

/// Bit-sliced `F_3` vectors: the low plane marks coordinates equal to 1, the
/// high plane those equal to 2.
struct TernaryPlanes {
    lo: Vec<u64>,
    hi: Vec<u64>,
}

fn ternary_pack(f: &FieldCtx, row: &[FFElem], words: usize) -> TernaryPlanes {
    let mut planes = TernaryPlanes { lo: vec![0; words], hi: vec![0; words] };
    for (j, &x) in row.iter().enumerate() {
        match f.encode(x) {
            0 => {}
            1 => planes.lo[j / 64] |= 1 << (j % 64),
            2 => planes.hi[j / 64] |= 1 << (j % 64),
            other => panic!("ternary walk needs digits 0..3, got encoding {other}"),
        }
    }
    planes
}

fn enumerate_ternary(f: &FieldCtx, rows: &[Vec<FFElem>], n: usize) -> Vec<u64> {
    let words = n.div_ceil(64);
    let k = rows.len();
    let pos: Vec<TernaryPlanes> = rows.iter().map(|r| ternary_pack(f, r, words)).collect();
    // Negation swaps the planes.
    let neg: Vec<TernaryPlanes> =
        pos.iter().map(|p| TernaryPlanes { lo: p.hi.clone(), hi: p.lo.clone() }).collect();
    let mut counts = vec![0u64; n + 1];
    let mut lo = vec![0u64; words];
    let mut hi = vec![0u64; words];
    // Loopless reflected mixed-radix Gray walk: one digit moves by one per
    // step, so one row gets added or subtracted per visited codeword.
    let mut digit = vec![0u8; k];
    let mut focus: Vec<usize> = (0..=k).collect();
    let mut dir = vec![1i8; k];
    loop {
        let weight: u32 = lo.iter().zip(&hi).map(|(a, b)| (a | b).count_ones()).sum();
        counts[weight as usize] += 1;
        let j = focus[0];
        focus[0] = 0;
        if j == k {
            break;
        }
        let step = dir[j];
        let row = if step > 0 { &pos[j] } else { &neg[j] };
        for w in 0..words {
            let (al, ah, bl, bh) = (lo[w], hi[w], row.lo[w], row.hi[w]);
            lo[w] = ((al ^ bl) & !(ah | bh)) | (ah & bh);
            hi[w] = ((ah ^ bh) & !(al | bl)) | (al & bl);
        }
        digit[j] = (digit[j] as i8 + step) as u8;
        if digit[j] == 0 || digit[j] == 2 {
            dir[j] = -dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
    }
    counts
}

fn enumerate_generic(f: &FieldCtx, level: u32, rows: &[Vec<FFElem>], n: usize) -> Vec<u64> {
    let elems = f.subfield_elements(level);
    let mut counts = vec![0u64; n + 1];
    let acc = vec![FFElem::Zero; n];
    fn rec(
        f: &FieldCtx,
        elems: &[FFElem],
        rows: &[Vec<FFElem>],
        acc: &[FFElem],
        counts: &mut [u64],
    ) {
        match rows.split_first() {
            None => {
                let w = acc.iter().filter(|&&x| x != FFElem::Zero).count();
                counts[w] += 1;
            }
            Some((row, rest)) => {
                for &lam in elems {
                    if lam == FFElem::Zero {
                        rec(f, elems, rest, acc, counts);
                    } else {
                        let next: Vec<FFElem> = acc
                            .iter()
                            .zip(row)
                            .map(|(&a, &r)| f.add(a, f.mul(lam, r)))
                            .collect();
                        rec(f, elems, rest, &next, counts);
                    }
                }
            }
        }
    }
    rec(f, &elems, rows, &acc, &mut counts);
    counts
}

fn pascal(n: usize) -> Vec<Vec<BigUint>> {
    let mut b = vec![vec![BigUint::zero(); n + 1]; n + 1];
    for (i, row) in b.iter_mut().enumerate() {
        row[0] = BigUint::one();
        for j in 1..=i {
            row[j] = &row[j - 1] * BigUint::from((i - j + 1) as u64) / BigUint::from(j as u64);
        }
    }
    b
}

/// Weight enumerator of the dual code from that of the code, over an
/// alphabet of size `q_eff`. Exact in big integers; panics if the input is
/// not a valid enumerator (non-integral or negative output).
pub fn macwilliams_transform(q_eff: u64, n: usize, weights: &[u64]) -> Vec<BigUint> {
    assert_eq!(weights.len(), n + 1, "enumerator must have n + 1 entries");
    let binom = pascal(n);
    let qm1 = BigInt::from(q_eff - 1);
    let mut qm1_pow = vec![BigInt::one(); n + 1];
    for j in 1..=n {
        qm1_pow[j] = &qm1_pow[j - 1] * &qm1;
    }
    let code_size: BigInt = weights.iter().map(|&w| BigInt::from(w)).sum();
    let kraw = |j: usize, i: usize| -> BigInt {
        let mut acc = BigInt::zero();
        for t in 0..=j.min(i) {
            if j - t > n - i {
                continue;
            }
            let term = &qm1_pow[j - t]
                * BigInt::from_biguint(Sign::Plus, &binom[i][t] * &binom[n - i][j - t]);
            if t % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    };
    (0..=n)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, &a) in weights.iter().enumerate() {
                if a > 0 {
                    acc += BigInt::from(a) * kraw(j, i);
                }
            }
            let (quot, rem) = num_integer::Integer::div_rem(&acc, &code_size);
            assert!(rem.is_zero(), "dual enumerator entry is not integral");
            assert!(!quot.is_negative(), "dual enumerator entry is negative");
            quot.to_biguint().unwrap()
        })
        .collect()
}

/// Searches for a codeword of weight at most `wmax` (at most 3) in the code
/// with the given parity-check rows, over `F_{q^level}`. A weight-`w` word;
/// is exactly a dependence among `w` distinct check columns with nonzero
/// coefficients, so this scans columns, proportional pairs, and
/// column-pair-plus-lookup triples. Returns the smallest weight found.
pub fn low_weight_search(
    f: &FieldCtx,
    level: u32,
    check_rows: &[Vec<FFElem>],
    n: usize,
    wmax: u64,
) -> Option<u64> {
    assert!((1..=3).contains(&wmax), "search handles weights 1..=3");
    let cols: Vec<Vec<FFElem>> = (0..n)
        .map(|j| check_rows.iter().map(|r| r[j]).collect())
        .collect();
    if cols.iter().any(|c| c.iter().all(|&x| x == FFElem::Zero)) {
        return Some(1);
    }
    if wmax < 2 {
        return None;
    }
    let normalize = |v: &[FFElem]| -> Vec<FFElem> {
        let c = *v.iter().find(|&&x| x != FFElem::Zero).unwrap();
        let inv = f.inv(c);
        v.iter().map(|&x| f.mul(inv, x)).collect()
    };
    let mut seen = std::collections::BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        if seen.insert(normalize(col), j).is_some() {
            return Some(2);
        }
    }
    if wmax < 3 {
        return None;
    }
    let nonzero: Vec<FFElem> = f
        .subfield_elements(level)
        .into_iter()
        .filter(|&x| x != FFElem::Zero)
        .collect();
    let mut sum = vec![FFElem::Zero; check_rows.len()];
    for i in 0..n {
        for j in i + 1..n {
            for &lam in &nonzero {
                for (s, (&a, &b)) in sum.iter_mut().zip(cols[i].iter().zip(&cols[j])) {
                    *s = f.add(a, f.mul(lam, b));
                }
                if sum.iter().all(|&x| x == FFElem::Zero) {
                    continue; // proportional pair, already ruled out
                }
                if let Some(&t) = seen.get(&normalize(&sum)) {
                    if t != i && t != j {
                        return Some(3);
                    }
                }
            }
        }
    }
    None
}

/// Does the ball volume `sum_{i<d} C(n,i)(q-1)^i` strictly exceed
/// `q^{n-k}`? When it does, a `[n, k]` code over `F_q` beats the
/// Gilbert–Varshamov existence threshold at distance `d`.
pub fn gv_exceeds(q: u64, n: u64, k: u64, d: u64) -> bool {
    let qm1 = BigUint::from(q - 1);
    let mut term = BigUint::one();
    let mut volume = BigUint::one();
    for i in 1..d {
        if i > n {
            break;
        }
        term = term * BigUint::from(n - i + 1) * &qm1 / BigUint::from(i);
        volume += &term;
    }
    volume > BigUint::from(q).pow((n - k) as u32)
}

/// Rebuilds the ambient field and the code from [`LinearCode::to_text`]
/// output. The header must describe a field this library would construct
/// itself (same deterministic modulus); the level is inferred as the
/// smallest subfield containing every entry.
pub fn parse_text(text: &str) -> Result<(FieldCtx, LinearCode), CodesError> {
    let bad = |msg: &str| CodesError::Parse(msg.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let mut q = None;
    let mut s = None;
    let mut n = None;
    let mut k = None;
    let mut modulus: Option<Vec<u64>> = None;
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| CodesError::Parse(format!("bad header token {token:?}")))?;
        let slot = match key {
            "q" => &mut q,
            "s" => &mut s,
            "n" => &mut n,
            "k" => &mut k,
            "modulus" => {
                let coeffs = value
                    .split(',')
                    .map(|c| c.parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("modulus coefficients must be integers"))?;
                modulus = Some(coeffs);
                continue;
            }
            _ => return Err(CodesError::Parse(format!("unknown header key {key:?}"))),
        };
        *slot =
            Some(value.parse::<u64>().map_err(|_| CodesError::Parse(format!("bad {key}")))?);
    }
    let (q, s, n, k) = match (q, s, n, k, &modulus) {
        (Some(q), Some(s), Some(n), Some(k), Some(_)) => (q, s, n, k),
        _ => return Err(bad("header needs q, s, n, k, and modulus")),
    };
    let (p, e) = prime_power_split(q).ok_or_else(|| bad("q is not a prime power"))?;
    let f = FieldCtx::new(p, e, s as u32)
        .map_err(|err| CodesError::Parse(format!("field construction: {err}")))?;
    if f.modulus() != modulus.unwrap().as_slice() {
        return Err(bad("modulus does not match this library's deterministic choice"));
    }
    let mut rows = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let line = lines.next().ok_or_else(|| bad("fewer rows than the header claims"))?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                let enc = tok.parse::<u64>().map_err(|_| bad("bad encoding"))?;
                f.decode(enc).map_err(|err| CodesError::Parse(err.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n as usize {
            return Err(bad("row length does not match n"));
        }
        rows.push(row);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(bad("more rows than the header claims"));
    }
    let level = (1..=f.s())
        .filter(|l| f.s() % l == 0)
        .find(|&l| {
            rows.iter()
                .all(|row| row.iter().all(|&x| f.in_subfield(x, l)))
        })
        .expect("every element lies in the full field");
    let code = LinearCode::from_rows(&f, level, n as usize, rows, "imported");
    Ok((f, code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rows(
        f: &FieldCtx,
        level: u32,
        k: usize,
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Vec<FFElem>> {
        let elems = f.subfield_elements(level);
        (0..k)
            .map(|_| (0..n).map(|_| elems[rng.gen_range(0..elems.len())]).collect())
            .collect()
    }

    fn all_codewords(f: &FieldCtx, code: &LinearCode) -> std::collections::BTreeSet<Vec<FFElem>> {
        let elems = f.subfield_elements(code.level());
        let mut words = std::collections::BTreeSet::new();
        let k = code.dim();
        let mut digits = vec![0usize; k];
        loop {
            let mut w = vec![FFElem::Zero; code.n()];
            for (d, row) in digits.iter().zip(code.rows()) {
                let lam = elems[*d];
                for (wj, &rj) in w.iter_mut().zip(row) {
                    *wj = f.add(*wj, f.mul(lam, rj));
                }
            }
            words.insert(w);
            let mut i = k;
            loop {
                if i == 0 {
                    return words;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    #[test]
    fn rref_is_canonical_and_preserves_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, e, s, level) in [(2u64, 1, 2, 1u32), (2, 1, 2, 2), (3, 1, 2, 1), (3, 1, 2, 2)] {
            let f = FieldCtx::new(p, e, s).unwrap();
            for _ in 0..20 {
                let k = rng.gen_range(1..=4);
                let n = rng.gen_range(1..=7);
                let raw = random_rows(&f, level, k, n, &mut rng);
                let code = LinearCode::from_rows(&f, level, n, raw.clone(), "t");
                // Echelon shape: strictly increasing pivots, unit pivot
                // entries, zeros elsewhere in pivot columns.
                let mut last = None;
                for (i, row) in code.rows().iter().enumerate() {
                    let lead = row.iter().position(|&x| x != FFElem::Zero).unwrap();
                    assert!(last.map_or(true, |l| lead > l), "pivots increase");
                    assert_eq!(row[lead], f.one(), "pivot entries are one");
                    for (i2, row2) in code.rows().iter().enumerate() {
                        if i2 != i {
                            assert_eq!(row2[lead], FFElem::Zero, "pivot column is cleared");
                        }
                    }
                    last = Some(lead);
                }
                for row in &raw {
                    assert!(code.in_row_space(&f, row), "original rows stay in the span");
                }
                let again =
                    LinearCode::from_rows(&f, level, n, code.rows().to_vec(), "t2");
                assert_eq!(again, code, "reduction is idempotent");
            }
        }
    }

    #[test]
    fn dual_is_the_orthogonal_complement() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, e, s, level) in [(2u64, 1, 2, 2u32), (3, 1, 2, 1), (2, 2, 1, 1)] {
            let f = FieldCtx::new(p, e, s).unwrap();
            for _ in 0..15 {
                let n = rng.gen_range(2..=7);
                let k = rng.gen_range(1..=n);
                let code =
                    LinearCode::from_rows(&f, level, n, random_rows(&f, level, k, n, &mut rng), "c");
                let dual = code.dual(&f);
                assert_eq!(code.dim() + dual.dim(), n, "dimensions add to the length");
                for a in code.rows() {
                    for b in dual.rows() {
                        assert_eq!(inner_product(&f, a, b), FFElem::Zero, "duals are orthogonal");
                    }
                }
                assert_eq!(dual.dual(&f), code, "double dual returns the code");
            }
        }
    }

    #[test]
    fn hamming_code_enumeration_and_macwilliams() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        let (o, z) = (f.one(), f.zero());
        let rows = vec![
            vec![o, z, z, z, o, o, z],
            vec![z, o, z, z, o, z, o],
            vec![z, z, o, z, z, o, o],
            vec![z, z, z, o, o, o, o],
        ];
        let code = LinearCode::from_rows(&f, 1, 7, rows, "hamming");
        let w = code.weight_enumerator(&f, 1 << 10).unwrap();
        assert_eq!(w, vec![1, 0, 0, 7, 7, 0, 0, 1], "weights of the [7,4] code");
        assert_eq!(code.min_distance(&f, 1 << 10).unwrap(), 3);
        let dual = code.dual(&f);
        let wd = dual.weight_enumerator(&f, 1 << 10).unwrap();
        assert_eq!(wd, vec![1, 0, 0, 0, 7, 0, 0, 0], "the dual is the simplex code");
        let transformed = macwilliams_transform(2, 7, &w);
        let expect: Vec<BigUint> = wd.iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(transformed, expect, "transform of the code gives the dual");
        let back = macwilliams_transform(2, 7, &wd);
        let expect: Vec<BigUint> = w.iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(back, expect, "transform is an involution here");
        assert_eq!(
            low_weight_search(&f, 1, dual.rows(), 7, 3),
            Some(3),
            "check-matrix scan sees the weight-3 words"
        );
        assert_eq!(low_weight_search(&f, 1, dual.rows(), 7, 2), None);
    }

    #[test]
    fn extended_hamming_has_no_weight_three_words() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        let (o, z) = (f.one(), f.zero());
        let rows = vec![
            vec![o, z, z, z, o, o, z, o],
            vec![z, o, z, z, o, z, o, o],
            vec![z, z, o, z, z, o, o, o],
            vec![z, z, z, o, o, o, o, z],
        ];
        let code = LinearCode::from_rows(&f, 1, 8, rows, "ext-hamming");
        assert_eq!(code.min_distance(&f, 1 << 10).unwrap(), 4);
        let checks = code.dual(&f);
        assert_eq!(low_weight_search(&f, 1, checks.rows(), 8, 3), None);
    }

    #[test]
    fn enumeration_paths_agree_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        // Binary fast path vs the generic walk.
        let f2 = FieldCtx::new(2, 1, 3).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(1..=70);
            let k = rng.gen_range(1..=5);
            let rows = {
                let code =
                    LinearCode::from_rows(&f2, 1, n, random_rows(&f2, 1, k, n, &mut rng), "b");
                code.rows().to_vec()
            };
            assert_eq!(
                enumerate_binary(&f2, &rows, n),
                enumerate_generic(&f2, 1, &rows, n),
                "binary Gray walk matches the generic walk"
            );
        }
        // Ternary bit-sliced path vs the generic walk.
        let f3 = FieldCtx::new(3, 1, 2).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(1..=70);
            let k = rng.gen_range(1..=5);
            let rows = {
                let code =
                    LinearCode::from_rows(&f3, 1, n, random_rows(&f3, 1, k, n, &mut rng), "t");
                code.rows().to_vec()
            };
            assert_eq!(
                enumerate_ternary(&f3, &rows, n),
                enumerate_generic(&f3, 1, &rows, n),
                "ternary Gray walk matches the generic walk"
            );
        }
    }

    #[test]
    fn ternary_walk_visits_the_whole_space() {
        // Identity generator: the enumerator of all of F_3^4 is binomial.
        let f = FieldCtx::new(3, 1, 1).unwrap();
        let rows: Vec<Vec<FFElem>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        assert_eq!(
            enumerate_ternary(&f, &rows, 4),
            vec![1, 8, 24, 32, 16],
            "C(4,w) * 2^w codewords of each weight"
        );
    }

    #[test]
    fn macwilliams_holds_over_a_four_element_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = FieldCtx::new(2, 2, 1).unwrap(); // F_4 as the bottom field
        for _ in 0..8 {
            let n = rng.gen_range(2..=6);
            let k = rng.gen_range(1..n);
            let code = LinearCode::from_rows(&f, 1, n, random_rows(&f, 1, k, n, &mut rng), "q4");
            let w = code.weight_enumerator(&f, 1 << 16).unwrap();
            let wd = code.dual(&f).weight_enumerator(&f, 1 << 16).unwrap();
            let expect: Vec<BigUint> = wd.iter().map(|&x| BigUint::from(x)).collect();
            assert_eq!(macwilliams_transform(4, n, &w), expect);
        }
    }

    #[test]
    fn subfield_subcode_and_trace_code_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for (p, e, s) in [(2u64, 1, 2), (3, 1, 2), (2, 1, 3)] {
            let f = FieldCtx::new(p, e, s).unwrap();
            for _ in 0..6 {
                let n = rng.gen_range(2..=6);
                let k = rng.gen_range(1..=2);
                let code =
                    LinearCode::from_rows(&f, f.s(), n, random_rows(&f, f.s(), k, n, &mut rng), "c");
                let words = all_codewords(&f, &code);
                // Subfield subcode: exactly the words with bottom-field entries.
                let sub = code.subfield_subcode(&f);
                assert_eq!(sub.level(), 1);
                let expect: std::collections::BTreeSet<_> = words
                    .iter()
                    .filter(|w| w.iter().all(|&x| f.in_subfield(x, 1)))
                    .cloned()
                    .collect();
                assert_eq!(all_codewords(&f, &sub), expect, "subcode words match the filter");
                // Trace code: exactly the coordinatewise traces.
                let tr = code.trace_code(&f);
                let expect: std::collections::BTreeSet<_> = words
                    .iter()
                    .map(|w| w.iter().map(|&x| f.trace_to_base(x)).collect::<Vec<_>>())
                    .collect();
                assert_eq!(all_codewords(&f, &tr), expect, "trace words match the image");
                // Duality swaps the two constructions.
                assert_eq!(
                    code.subfield_subcode(&f).dual(&f),
                    code.dual(&f).trace_code(&f),
                    "dual of the subcode is the trace of the dual"
                );
            }
        }
    }

    #[test]
    fn gilbert_varshamov_threshold_cases() {
        assert!(gv_exceeds(2, 10, 9, 3), "1 + 10 + 45 = 56 > 2");
        assert!(!gv_exceeds(2, 10, 5, 2), "1 + 10 = 11 is not above 2^5 = 32");
        assert!(gv_exceeds(2, 273, 255, 4));
        assert!(gv_exceeds(3, 757, 741, 4));
        assert!(gv_exceeds(7, 2451, 2440, 4));
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let f = FieldCtx::new(2, 1, 1).unwrap();
        let n = 45;
        let rows: Vec<Vec<FFElem>> = (0..40)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        let code = LinearCode::from_rows(&f, 1, n, rows, "big");
        match code.weight_enumerator(&f, 1 << 28) {
            Err(CodesError::EnumerationTooLarge { required, budget }) => {
                assert_eq!(required, 1 << 40);
                assert_eq!(budget, 1 << 28);
            }
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn text_roundtrip_preserves_code_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let f = FieldCtx::new(2, 1, 2).unwrap();
        for level in [1u32, 2] {
            let code =
                LinearCode::from_rows(&f, level, 6, random_rows(&f, level, 3, 6, &mut rng), "x");
            let text = code.to_text(&f);
            let (f2, parsed) = parse_text(&text).unwrap();
            assert_eq!((f2.p(), f2.e(), f2.s()), (2, 1, 2));
            assert_eq!(f2.modulus(), f.modulus());
            if code.dim() > 0 {
                assert_eq!(parsed, code, "parse(to_text(code)) is the code");
            }
            let reserialized = parsed.to_text(&f2);
            assert_eq!(reserialized, text, "serialization is a fixed point");
        }
        for bad in [
            "",
            "q=2 s=2 n=3 k=0",
            "q=6 s=2 n=3 k=0 modulus=1,1,1",
            "q=2 s=2 n=3 k=0 modulus=1,0,1",
            "q=2 s=2 n=3 k=1 modulus=1,1,1",
            "q=2 s=2 n=3 k=1 modulus=1,1,1\n0 9 0",
            "q=2 s=2 n=3 k=0 modulus=1,1,1\n1 0 0",
        ] {
            assert!(parse_text(bad).is_err(), "rejects {bad:?}");
        }
    }

    #[test]
    fn galois_invariance_detects_conjugate_rows() {
        let f = FieldCtx::new(2, 1, 2).unwrap();
        let a = f.alpha();
        let single = LinearCode::from_rows(&f, 2, 2, vec![vec![a, f.one()]], "one-row");
        assert!(
            !single.is_galois_invariant(&f),
            "conjugating (a, 1) leaves the line it spans"
        );
        let paired = LinearCode::from_rows(
            &f,
            2,
            2,
            vec![vec![a, f.one()], vec![f.frobenius(a, 1), f.one()]],
            "orbit",
        );
        assert!(paired.is_galois_invariant(&f), "a full conjugate orbit is stable");
        let bottom = LinearCode::from_rows(&f, 1, 2, vec![vec![f.one(), f.one()]], "base");
        assert!(bottom.is_galois_invariant(&f), "bottom-field codes are fixed");
    }

    #[test]
    fn zero_and_full_space_edges() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        let zero = LinearCode::from_rows(&f, 1, 4, vec![], "zero");
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.weight_enumerator(&f, 16).unwrap(), vec![1, 0, 0, 0, 0]);
        let full = zero.dual(&f);
        assert_eq!(full.dim(), 4);
        assert_eq!(full.dual(&f).dim(), 0, "dual of the full space is zero");
        assert_eq!(
            low_weight_search(&f, 1, zero.rows(), 4, 3),
            Some(1),
            "with no checks every unit vector is a codeword"
        );
    }
}
