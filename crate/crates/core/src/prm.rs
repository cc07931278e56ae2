//! Projective Reed–Muller codes over `F_{q^s}`, their subfield subcodes
//! over `F_q`, explicit trace-polynomial bases for the two-dimensional case,
//! closed dimension formulas, and parameter-table computation with exact or
//! certified-interval minimum distances.
//!
//! A [`PrmInstance`] fixes the tower and the projective dimension `m`. The
//! degree-`d` code evaluates all degree-`d` monomials on the standard
//! representatives of `P^m`; its subfield subcode (the words with every
//! value in `F_q`) is the object the rest of this module describes: closed
//! dimension formulas from cyclotomic-orbit bookkeeping ([`dim_primary`],
//! [`dim_dual`]), explicit bases built from trace polynomials
//! ([`PrmInstance::primary_basis`], [`PrmInstance::dual_basis`], `m = 2`
//! only), and full parameter rows ([`PrmInstance::table_row`]).
//!
//! ```
//! use prm_core::field::FieldCtx;
//! use prm_core::prm::PrmInstance;
//!
//! let inst = PrmInstance::new(FieldCtx::new(2, 1, 2).unwrap(), 2);
//! let row = inst.table_row(3, 1 << 28).unwrap();
//! assert_eq!((row.n, row.k, row.k_perp), (21, 9, 12));
//! assert_eq!(row.delta.to_string(), "8");
//! assert_eq!(row.delta_perp.to_string(), "5");
//! ```

use std::fmt;

use thiserror::Error;

use crate::codes::{self, CodesError, LinearCode};
use crate::cyclo::{trace_poly_affine, trace_poly_proj, ClassTable, CycloCtx, MonomialTypes};
use crate::field::{FFElem, FieldCtx};
use crate::poly::SparsePoly;
use crate::projgeom::{affine_points, evaluate, projective_points};

/// Default cap on exhaustive-enumeration work (number of codewords walked).
pub const DEFAULT_BUDGET: u64 = 1 << 28;

#[derive(Debug, Error)]
pub enum PrmError {
    #[error(
        "degree {d} is outside [1, {max}]: degree 0 gives only constants, and any degree \
         above {max} evaluates onto the whole space, so neither yields a meaningful \
         projective code"
    )]
    DegreeOutOfRange { d: u32, max: u32 },
    #[error("explicit trace bases exist only for projective dimension m = 2, not m = {m}")]
    BasisUnsupported { m: usize },
    #[error(transparent)]
    Codes(#[from] CodesError),
}

/// Number of points of `P^m` over a field with `qs` elements.
pub fn projective_length(qs: u64, m: u32) -> u64 {
    (0..=m).map(|i| qs.pow(i)).sum()
}

/// Floor-style minimum-distance lower bound for the degree-`d` projective
/// code: writing `d - 1 = r(qs - 1) + t` with `0 <= t < qs - 1`, the bound
/// is `(qs - t) * qs^(m - 1 - r)`. Subcodes inherit it.
pub fn distance_lower_bound_for(qs: u64, m: u32, d: u32) -> u64 {
    assert!(d >= 1 && d as u64 <= m as u64 * (qs - 1), "degree in range");
    let r = (d as u64 - 1) / (qs - 1);
    let t = (d as u64 - 1) % (qs - 1);
    (qs - t) * qs.pow(m - 1 - r as u32)
}

/// One projective Reed–Muller setting: the field tower and the point list
/// of `P^m` in standard-representative order.
pub struct PrmInstance {
    f: FieldCtx,
    cy: CycloCtx,
    m: usize,
    points: Vec<Vec<FFElem>>,
}

/// Exact value or certified interval for a minimum distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistInfo {
    /// Certified lower bound.
    pub lo: u64,
    /// Certified upper bound (weight of an exhibited codeword), if any.
    pub hi: Option<u64>,
}

impl DistInfo {
    pub fn exact(w: u64) -> Self {
        DistInfo { lo: w, hi: Some(w) }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }
}

impl fmt::Display for DistInfo {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) if hi == self.lo => write!(out, "{}", self.lo),
            Some(hi) => write!(out, "{}..{}", self.lo, hi),
            None => write!(out, ">={}", self.lo),
        }
    }
}

/// One row of a parameter table for a degree-`d` subfield subcode and its
/// dual: length, both dimensions, both minimum distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d: u32,
    pub n: usize,
    pub k: usize,
    pub k_perp: usize,
    pub delta: DistInfo,
    pub delta_perp: DistInfo,
}

/// Which form of the degree-matching generators to use: `Simplified` drops
/// the summands already spanned by the plain trace generators, changing the
/// individual polynomials but not the span of the whole basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisVariant {
    Standard,
    Simplified,
}

/// A named slice of a trace basis (`B1`–`B3` or `D1`–`D4`).
pub struct BasisPart {
    pub name: &'static str,
    pub polys: Vec<SparsePoly>,
}

/// An explicit generating set for a subfield subcode or its dual.
pub struct TraceBasis {
    pub d: u32,
    pub parts: Vec<BasisPart>,
}

impl TraceBasis {
    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.polys.len()).sum()
    }

    pub fn all_polys(&self) -> impl Iterator<Item = &SparsePoly> {
        self.parts.iter().flat_map(|p| p.polys.iter())
    }
}

/// All exponent vectors of the given total degree.
fn compositions_of(d: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(d: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = d;
            out.push(cur.clone());
            return;
        }
        for v in 0..=d {
            cur[i] = v;
            rec(d - v, i + 1, cur, out);
        }
    }
    rec(d, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Index-set bookkeeping shared by the bases and the dimension formulas.
// All of it is purely cyclotomic: no field tables are needed, which keeps
// the dimension formulas usable for parameter scans over large fields.
// ---------------------------------------------------------------------------

/// The pair classes hit by `(bar(d - c2), c2)` as `c2` runs over the orbit
/// of `a2`, keeping only classes whose orbit degree stays at most `d` and
/// deduplicating (the same class can be hit by several `c2`). Each entry is
/// the class index together with the class minimal representative. Starting
/// every trace at the minimal representative matters: its second coordinate
/// is `a2` itself, so the coefficient applied to the conjugate exponent
/// `q^l * a2` is the `l`-th Frobenius power of the scalar, exactly matching
/// the phase of the complementary-cell term built on `a2`. A trace started
/// mid-orbit shifts that phase and the evaluations leave the subcode.
fn y_pairs(
    cy: &CycloCtx,
    pairs: &ClassTable,
    unis: &ClassTable,
    d: u32,
    a2: u64,
) -> Vec<(usize, Vec<u64>)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for c2v in &unis.class_of(&[a2]).orbit {
        let c2 = c2v[0];
        let start = vec![cy.bar_int(d as i64 - c2 as i64), c2];
        let idx = pairs.class_index_of(&start);
        if pairs.classes[idx].max_sum() <= d as u64 && seen.insert(idx) {
            out.push((idx, pairs.classes[idx].min_rep.clone()));
        }
    }
    out
}

/// Do all large shifts `c2` in the orbit of `a2` land on classes of orbit
/// degree at most `d`? (Small shifts, `c2 <= d - (qs - 1)`, never violate
/// the degree cap.)
fn y_condition(cy: &CycloCtx, pairs: &ClassTable, unis: &ClassTable, d: u32, a2: u64) -> bool {
    let threshold = d as i64 - (cy.qs() as i64 - 1);
    unis.class_of(&[a2]).orbit.iter().all(|c2v| {
        let c2 = c2v[0];
        if (c2 as i64) <= threshold {
            return true;
        }
        let start = vec![cy.bar_int(d as i64 - c2 as i64), c2];
        pairs.class_of(&start).max_sum() <= d as u64
    })
}

/// The univariate classes indexing the degree-matching generators: orbit
/// contained in `[0, d]`, distinct from the class of `bar(d)`, and every
/// large shift staying within degree (so the matching sum exists).
fn y_set(cy: &CycloCtx, pairs: &ClassTable, unis: &ClassTable, d: u32) -> Vec<u64> {
    let bar_d_class = unis.class_index_of(&[cy.bar_int(d as i64)]);
    unis.classes
        .iter()
        .enumerate()
        .filter(|(i, u)| {
            *i != bar_d_class
                && u.max_sum() <= d as u64
                && y_condition(cy, pairs, unis, d, u.min_rep[0])
        })
        .map(|(_, u)| u.min_rep[0])
        .collect()
}

/// How the final basis part closes the count for the class of `bar(d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FinalPartCase {
    /// The saturated pair `(qs - 1, bar(d))` stays within degree: the part
    /// holds one corrected matching generator plus a full trace family.
    PairWithinDegree,
    /// Only the matching sum itself exists.
    MatchingOnly,
    /// Nothing can be added for this class.
    Nothing,
}

fn final_part_case(cy: &CycloCtx, pairs: &ClassTable, unis: &ClassTable, d: u32) -> FinalPartCase {
    let b2_class = unis.class_of(&[cy.bar_int(d as i64)]);
    let b2 = b2_class.min_rep[0];
    if b2_class.max_sum() > d as u64 {
        return FinalPartCase::Nothing;
    }
    let saturated = vec![cy.qs() - 1, b2];
    if pairs.class_of(&saturated).max_sum() <= d as u64 {
        FinalPartCase::PairWithinDegree
    } else if y_condition(cy, pairs, unis, d, b2) {
        FinalPartCase::MatchingOnly
    } else {
        FinalPartCase::Nothing
    }
}

/// Dimension of the degree-`d` subfield subcode for `m = 2`, by counting
/// the trace basis: one orbit-length block per pair class of degree below
/// `d`, one per univariate class with a degree-matching family, plus the
/// final part's contribution.
pub fn dim_primary(cy: &CycloCtx, d: u32) -> u64 {
    let pairs = cy.class_table(2);
    let unis = cy.class_table(1);
    let low: u64 = pairs
        .classes
        .iter()
        .filter(|a| a.max_sum() < d as u64)
        .map(|a| a.size() as u64)
        .sum();
    let matching: u64 = y_set(cy, &pairs, &unis, d)
        .iter()
        .map(|&a2| unis.class_of(&[a2]).size() as u64)
        .sum();
    let last = match final_part_case(cy, &pairs, &unis, d) {
        FinalPartCase::PairWithinDegree => {
            unis.class_of(&[cy.bar_int(d as i64)]).size() as u64 + 1
        }
        FinalPartCase::MatchingOnly => 1,
        FinalPartCase::Nothing => 0,
    };
    low + matching + last
}

/// Is there a pair class, other than `(0, b2)`'s own, whose minimum
/// representative ends in `b2` and whose degree-`dd` monomials come in both
/// the `x0`-divisible and `x0`-free kinds?
fn dual_extra_generator(cy: &CycloCtx, pairs: &ClassTable, dd: u64, b2: u64) -> bool {
    let own = pairs.class_index_of(&[0, b2]);
    pairs.classes.iter().enumerate().any(|(i, c)| {
        i != own
            && c.min_rep[1] == b2
            && cy.monomial_types(dd, &c.orbit) == MonomialTypes::Both
    })
}

/// Dimension of the dual of the degree-`d` subfield subcode for `m = 2`,
/// counted through the complementary degree `dd = 2(qs - 1) - d`.
pub fn dim_dual(cy: &CycloCtx, d: u32) -> u64 {
    let pairs = cy.class_table(2);
    let unis = cy.class_table(1);
    let dd = 2 * (cy.qs() - 1) - d as u64;
    let beta = cy.bar_int(dd as i64);
    let from_pairs: u64 = pairs
        .classes
        .iter()
        .filter(|a| cy.monomial_types(dd, &a.orbit) != MonomialTypes::Empty)
        .map(|a| a.size() as u64)
        .sum();
    let beta_class = unis.class_index_of(&[beta]);
    let from_unis: u64 = unis
        .classes
        .iter()
        .enumerate()
        .filter(|(i, u)| {
            *i != beta_class
                && pairs.classes.iter().any(|c| {
                    c.min_rep[1] == u.min_rep[0]
                        && cy.monomial_types(dd, &c.orbit) == MonomialTypes::Both
                })
        })
        .map(|(_, u)| u.size() as u64)
        .sum();
    let b2_class = unis.class_of(&[beta]);
    let b2 = b2_class.min_rep[0];
    let kinds = cy.monomial_types(dd, &pairs.class_of(&[0, b2]).orbit);
    assert!(
        matches!(kinds, MonomialTypes::Both | MonomialTypes::OnlyWithoutX0),
        "the complementary-degree class always has x0-free monomials"
    );
    let last = if kinds == MonomialTypes::Both {
        b2_class.size() as u64 + u64::from(dual_extra_generator(cy, &pairs, dd, b2))
    } else {
        0
    };
    let constant = u64::from(d as u64 == cy.qs() - 1);
    from_pairs + from_unis + last + constant
}

impl PrmInstance {
    pub fn new(f: FieldCtx, m: usize) -> Self {
        assert!(m >= 1, "projective dimension must be at least 1");
        let cy = CycloCtx::from_field(&f);
        let points = projective_points(&f, m);
        PrmInstance { f, cy, m, points }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.f
    }

    pub fn cyclo(&self) -> &CycloCtx {
        &self.cy
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<FFElem>] {
        &self.points
    }

    /// Largest degree before evaluation covers the whole space.
    pub fn max_degree(&self) -> u32 {
        (self.m as u64 * (self.f.qs() - 1)) as u32
    }

    pub fn check_degree(&self, d: u32) -> Result<(), PrmError> {
        if d < 1 || d > self.max_degree() {
            return Err(PrmError::DegreeOutOfRange { d, max: self.max_degree() });
        }
        Ok(())
    }

    /// The degree-`d` code over the whole field `F_{q^s}`: evaluations of
    /// every degree-`d` monomial at the points of `P^m`.
    pub fn prm_code(&self, d: u32) -> Result<LinearCode, PrmError> {
        self.check_degree(d)?;
        let rows: Vec<Vec<FFElem>> = compositions_of(d, self.m + 1)
            .into_iter()
            .map(|exps| {
                let mono = SparsePoly::monomial(exps, self.f.one());
                evaluate(&self.f, &mono, &self.points)
            })
            .collect();
        Ok(LinearCode::from_rows(&self.f, self.f.s(), self.n(), rows, format!("prm(d={d})")))
    }

    /// The subfield subcode over `F_q` of the degree-`d` code.
    pub fn sigma_code(&self, d: u32) -> Result<LinearCode, PrmError> {
        Ok(self.prm_code(d)?.subfield_subcode(&self.f))
    }

    /// The dual of the subfield subcode.
    pub fn sigma_dual(&self, d: u32) -> Result<LinearCode, PrmError> {
        Ok(self.sigma_code(d)?.dual(&self.f))
    }

    /// Affine evaluation code of all monomials of total degree at most `d`
    /// in `m` variables over the whole field.
    pub fn rm_affine_code(&self, d: u32) -> LinearCode {
        let pts = affine_points(&self.f, self.m);
        let rows: Vec<Vec<FFElem>> = (0..=d)
            .flat_map(|deg| compositions_of(deg, self.m))
            .map(|exps| {
                let mono = SparsePoly::monomial(exps, self.f.one());
                evaluate(&self.f, &mono, &pts)
            })
            .collect();
        LinearCode::from_rows(&self.f, self.f.s(), pts.len(), rows, format!("rm(d={d})"))
    }

    /// Smallest power of the tower generator that is primitive for
    /// `F_{q^level}` and has nonzero trace down to `F_q`.
    pub fn xi(&self, level: u32) -> FFElem {
        self.f.primitive_with_nonzero_trace(level)
    }

    /// Trace-polynomial basis of the subcode of [`rm_affine_code`]: one
    /// orbit-length family per exponent class whose whole orbit keeps total
    /// degree at most `d`.
    ///
    /// [`rm_affine_code`]: PrmInstance::rm_affine_code
    pub fn rm_affine_sigma_basis(&self, d: u32) -> Vec<SparsePoly> {
        let table = self.cy.class_table(self.m);
        let mut out = Vec::new();
        for class in &table.classes {
            if class.max_sum() > d as u64 {
                continue;
            }
            let xi = self.xi(class.size() as u32);
            for r in 0..class.size() {
                out.push(trace_poly_affine(
                    &self.f,
                    &self.cy,
                    self.f.pow(xi, r as u64),
                    &class.min_rep,
                ));
            }
        }
        out
    }

    /// A projective trace generating set that works in any dimension: for
    /// every degree-`d` monomial, the traces of its scalar multiples,
    /// with the scalars drawn from the power basis of the subfield matching
    /// the exponent-orbit length. Larger than a basis, but its evaluation
    /// spans the componentwise trace of the degree-`d` code, which contains
    /// the subfield subcode and equals it exactly when the code is stable
    /// under the field automorphisms.
    pub fn general_trace_spanning_set(&self, d: u32) -> Result<Vec<SparsePoly>, PrmError> {
        self.check_degree(d)?;
        let mut out: Vec<SparsePoly> = Vec::new();
        for exps in compositions_of(d, self.m + 1) {
            let flag = exps[0].min(1);
            let tail: Vec<u64> = exps[1..].iter().map(|&e| self.cy.bar(e as u64)).collect();
            let len = self.cy.orbit_len(&tail) as u32;
            let xi = self.xi(len);
            for r in 0..len as u64 {
                let p = trace_poly_proj(&self.f, &self.cy, self.f.pow(xi, r), &tail, flag);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Minimum-distance lower bound for the degree-`d` code and all its
    /// subcodes.
    pub fn distance_lower_bound(&self, d: u32) -> u64 {
        distance_lower_bound_for(self.f.qs(), self.m as u32, d)
    }

    /// The degree-matching generator for the univariate class of `a2`: the
    /// kept pair-class traces (all of them, or only the full-degree ones in
    /// the simplified variant) plus the complementary-cell term
    /// `(1 - x0) x1 Tr(lam x2^{a2-orbit})`.
    fn matching_poly(
        &self,
        pairs: &ClassTable,
        unis: &ClassTable,
        d: u32,
        a2: u64,
        lam: FFElem,
        variant: BasisVariant,
    ) -> SparsePoly {
        let f = &self.f;
        let mut acc = SparsePoly::zero(3);
        for (idx, start) in y_pairs(&self.cy, pairs, unis, d, a2) {
            if variant == BasisVariant::Simplified
                && pairs.classes[idx].max_sum() != d as u64
            {
                continue;
            }
            acc = acc.add(&trace_poly_proj(f, &self.cy, lam, &start, 1), f);
        }
        let one = SparsePoly::one(3);
        let x0 = SparsePoly::var(0, 3);
        let x1 = SparsePoly::var(1, 3);
        let tail = trace_poly_proj(f, &self.cy, lam, &[0, a2], 0);
        acc.add(&one.sub(&x0, f).mul(&x1, f).mul(&tail, f), f)
    }

    /// Explicit trace basis of the degree-`d` subfield subcode (`m = 2`):
    /// part `B1` holds full trace families for every pair class of degree
    /// below `d`, part `B2` one degree-matching family per admissible
    /// univariate class, and part `B3` closes the class of `bar(d)`.
    pub fn primary_basis(&self, d: u32, variant: BasisVariant) -> Result<TraceBasis, PrmError> {
        if self.m != 2 {
            return Err(PrmError::BasisUnsupported { m: self.m });
        }
        self.check_degree(d)?;
        let f = &self.f;
        let cy = &self.cy;
        let pairs = cy.class_table(2);
        let unis = cy.class_table(1);

        let mut b1 = Vec::new();
        for class in pairs.classes.iter().filter(|a| a.max_sum() < d as u64) {
            let xi = self.xi(class.size() as u32);
            for r in 0..class.size() {
                b1.push(trace_poly_proj(f, cy, f.pow(xi, r as u64), &class.min_rep, 1));
            }
        }

        let mut b2 = Vec::new();
        for a2 in y_set(cy, &pairs, &unis, d) {
            let size = unis.class_of(&[a2]).size();
            let xi = self.xi(size as u32);
            for r in 0..size {
                b2.push(self.matching_poly(&pairs, &unis, d, a2, f.pow(xi, r as u64), variant));
            }
        }

        let mut b3 = Vec::new();
        let case = final_part_case(cy, &pairs, &unis, d);
        if case != FinalPartCase::Nothing {
            let b2_rep = unis.class_of(&[cy.bar_int(d as i64)]).min_rep[0];
            // The matching sum for bar(d)'s own class, completed on the
            // last cell so that it evaluates into the base field there too.
            let one = SparsePoly::one(3);
            let x0 = SparsePoly::var(0, 3);
            let x1 = SparsePoly::var(1, 3);
            let mut last_cell = vec![0u32; 3];
            last_cell[2] = d;
            let ell = self
                .matching_poly(&pairs, &unis, d, b2_rep, f.one(), variant)
                .add(
                    &one.sub(&x0, f)
                        .mul(&one.sub(&x1, f), f)
                        .mul(&SparsePoly::monomial(last_cell, f.one()), f),
                    f,
                );
            match case {
                FinalPartCase::PairWithinDegree => {
                    let saturated = vec![cy.qs() - 1, b2_rep];
                    b3.push(ell.sub(&trace_poly_proj(f, cy, f.one(), &saturated, 1), f));
                    let size = unis.class_of(&[b2_rep]).size();
                    let xi = self.xi(size as u32);
                    for r in 0..size {
                        b3.push(self.matching_poly(
                            &pairs,
                            &unis,
                            d,
                            b2_rep,
                            f.pow(xi, r as u64),
                            variant,
                        ));
                    }
                }
                FinalPartCase::MatchingOnly => b3.push(ell),
                FinalPartCase::Nothing => unreachable!(),
            }
        }

        let basis = TraceBasis {
            d,
            parts: vec![
                BasisPart { name: "B1", polys: b1 },
                BasisPart { name: "B2", polys: b2 },
                BasisPart { name: "B3", polys: b3 },
            ],
        };
        assert_eq!(
            basis.total() as u64,
            dim_primary(cy, d),
            "basis size must equal the dimension formula"
        );
        Ok(basis)
    }

    /// Explicit trace basis of the dual of the degree-`d` subfield subcode
    /// (`m = 2`), organized through the complementary degree
    /// `dd = 2(qs - 1) - d`: `D1` holds a trace family per pair class with
    /// degree-`dd` monomials (flagged by `x0` when every such monomial
    /// needs it), `D2` one cell-splitting family per admissible univariate
    /// class, `D3` closes the class of `bar(dd)`, and `D4` is the constant
    /// when `d = qs - 1`.
    pub fn dual_basis(&self, d: u32) -> Result<TraceBasis, PrmError> {
        if self.m != 2 {
            return Err(PrmError::BasisUnsupported { m: self.m });
        }
        self.check_degree(d)?;
        let f = &self.f;
        let cy = &self.cy;
        let pairs = cy.class_table(2);
        let unis = cy.class_table(1);
        let dd = 2 * (cy.qs() - 1) - d as u64;
        let beta = cy.bar_int(dd as i64);

        let mut d1 = Vec::new();
        for class in &pairs.classes {
            let kinds = cy.monomial_types(dd, &class.orbit);
            if kinds == MonomialTypes::Empty {
                continue;
            }
            let flag = u32::from(kinds == MonomialTypes::OnlyWithX0);
            let xi = self.xi(class.size() as u32);
            for r in 0..class.size() {
                d1.push(trace_poly_proj(f, cy, f.pow(xi, r as u64), &class.min_rep, flag));
            }
        }

        let one = SparsePoly::one(3);
        let x0m1 = SparsePoly::var(0, 3).sub(&one, f);
        let x1m1 = SparsePoly::var(1, 3).sub(&one, f);

        let mut d2 = Vec::new();
        let beta_class = unis.class_index_of(&[beta]);
        for (i, u) in unis.classes.iter().enumerate() {
            if i == beta_class {
                continue;
            }
            let a2 = u.min_rep[0];
            let has_both = pairs.classes.iter().any(|c| {
                c.min_rep[1] == a2 && cy.monomial_types(dd, &c.orbit) == MonomialTypes::Both
            });
            if !has_both {
                continue;
            }
            let xi = self.xi(u.size() as u32);
            for r in 0..u.size() {
                let lam = f.pow(xi, r as u64);
                let tail = trace_poly_proj(f, cy, lam, &[0, a2], 0);
                let tr = f.trace_between(lam, u.size() as u32, 1);
                let inner = tail.add(&x1m1.scale(tr, f), f);
                d2.push(x0m1.mul(&inner, f));
            }
        }

        let mut d3 = Vec::new();
        let b2_class = unis.class_of(&[beta]);
        let b2 = b2_class.min_rep[0];
        let kinds = cy.monomial_types(dd, &pairs.class_of(&[0, b2]).orbit);
        assert!(
            matches!(kinds, MonomialTypes::Both | MonomialTypes::OnlyWithoutX0),
            "the complementary-degree class always has x0-free monomials"
        );
        if kinds == MonomialTypes::Both {
            let xi = self.xi(b2_class.size() as u32);
            for r in 0..b2_class.size() {
                d3.push(trace_poly_proj(f, cy, f.pow(xi, r as u64), &[0, b2], 1));
            }
            if dual_extra_generator(cy, &pairs, dd, b2) {
                d3.push(x0m1.mul(&x1m1, f));
            }
        }

        let d4 = if d as u64 == cy.qs() - 1 { vec![SparsePoly::one(3)] } else { vec![] };

        let basis = TraceBasis {
            d,
            parts: vec![
                BasisPart { name: "D1", polys: d1 },
                BasisPart { name: "D2", polys: d2 },
                BasisPart { name: "D3", polys: d3 },
                BasisPart { name: "D4", polys: d4 },
            ],
        };
        assert_eq!(
            basis.total() as u64,
            dim_dual(cy, d),
            "dual basis size must equal the dimension formula"
        );
        Ok(basis)
    }

    /// Evaluates a set of polynomials at the instance's points and returns
    /// the code they span over the bottom field, checking every value lands
    /// there.
    pub fn span_over_base(&self, polys: &[SparsePoly], label: &str) -> LinearCode {
        let rows: Vec<Vec<FFElem>> = polys
            .iter()
            .map(|p| {
                let values = evaluate(&self.f, p, &self.points);
                assert!(
                    values.iter().all(|&v| self.f.in_subfield(v, 1)),
                    "basis polynomial evaluates into the base field"
                );
                values
            })
            .collect();
        LinearCode::from_rows(&self.f, 1, self.n(), rows, label)
    }

    /// Upper bound on the minimum weight from exhausting the span of a
    /// prefix of the generator rows, sized to the budget.
    fn subcode_upper_bound(&self, code: &LinearCode, budget: u64) -> Option<u64> {
        let q_eff = self.f.subfield_size(code.level()) as u128;
        let mut r = 0usize;
        let mut cap = 1u128;
        while r < code.dim() && cap * q_eff <= budget as u128 {
            cap *= q_eff;
            r += 1;
        }
        if r == 0 || r >= code.dim() {
            return None;
        }
        let sub = LinearCode::from_rows(
            &self.f,
            code.level(),
            code.n(),
            code.rows()[..r].to_vec(),
            "prefix",
        );
        let w = sub.weight_enumerator(&self.f, budget).ok()?;
        codes::min_weight_from(&w)
    }

    /// Computes one parameter-table row: both dimensions (cross-checked
    /// against the closed formulas when `m = 2`) and both minimum
    /// distances. When the smaller of code/dual fits the enumeration
    /// budget both distances are exact (the other side via the MacWilliams
    /// transform); otherwise each side gets a weight-3-limited check-matrix
    /// scan (exact when it hits), and failing that a certified interval
    /// from the floor-style lower bound and a prefix-subcode upper bound.
    pub fn table_row(&self, d: u32, budget: u64) -> Result<TableRow, PrmError> {
        let f = &self.f;
        let code = self.sigma_code(d)?;
        let dual = code.dual(f);
        let (k, kp) = (code.dim(), dual.dim());
        if self.m == 2 {
            assert_eq!(k as u64, dim_primary(&self.cy, d), "dimension formula cross-check");
            assert_eq!(kp as u64, dim_dual(&self.cy, d), "dual dimension formula cross-check");
        }
        let n = self.n();
        let small_is_code = k <= kp;
        let small = if small_is_code { &code } else { &dual };
        let (delta, delta_perp) = match small.weight_enumerator(f, budget) {
            Ok(w) => {
                let other = codes::macwilliams_transform(f.q(), n, &w);
                let d_small = codes::min_weight_from(&w).expect("nonzero code");
                let d_other = other
                    .iter()
                    .enumerate()
                    .skip(1)
                    .find(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(i, _)| i as u64)
                    .expect("nonzero dual");
                if small_is_code {
                    (DistInfo::exact(d_small), DistInfo::exact(d_other))
                } else {
                    (DistInfo::exact(d_other), DistInfo::exact(d_small))
                }
            }
            Err(CodesError::EnumerationTooLarge { .. }) => {
                let delta = match codes::low_weight_search(f, 1, dual.rows(), n, 3) {
                    Some(w) => DistInfo::exact(w),
                    None => {
                        let lo = self.distance_lower_bound(d).max(4);
                        let hi = self.subcode_upper_bound(&code, budget);
                        if let Some(hi) = hi {
                            assert!(lo <= hi, "distance bounds must be consistent");
                        }
                        DistInfo { lo, hi }
                    }
                };
                let delta_perp = match codes::low_weight_search(f, 1, code.rows(), n, 3) {
                    Some(w) => DistInfo::exact(w),
                    None => {
                        let hi = self.subcode_upper_bound(&dual, budget);
                        DistInfo { lo: 4, hi }
                    }
                };
                (delta, delta_perp)
            }
            Err(other) => return Err(other.into()),
        };
        Ok(TableRow { d, n, k, k_perp: kp, delta, delta_perp })
    }
}
