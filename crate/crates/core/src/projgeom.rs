//! Standard representatives of projective space and evaluation maps.
//!
//! `P^m(F_{q^s})` is enumerated through its cell decomposition: cell `i`
//! holds the points `[0 : .. : 0 : 1 : t_{i+1} : .. : t_m]` whose first
//! nonzero coordinate (a leading `1`) sits at position `i`, with the free
//! tail running over the affine grid. Cells come in order `0, .., m`, and
//! affine grids enumerate odometer-style with the leftmost coordinate most
//! significant and field elements ordered zero-first. This fixes one global
//! coordinate order for every code built by evaluation.
//!
//! ```
//! use prm_core::field::FieldCtx;
//! use prm_core::projgeom::projective_points;
//!
//! let f = FieldCtx::new(2, 1, 2).unwrap();
//! let pts = projective_points(&f, 2);
//! assert_eq!(pts.len(), 21); // 4^2 + 4 + 1
//! assert_eq!(pts[0], vec![f.one(), f.zero(), f.zero()]);
//! assert_eq!(pts[20], vec![f.zero(), f.zero(), f.one()]);
//! ```

use thiserror::Error;

use crate::field::{FFElem, FieldCtx};
use crate::poly::SparsePoly;

/// Cap on generated point counts, to fail fast on absurd instances.
const MAX_POINTS: u64 = 1 << 26;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("term of degree {0} cannot be homogenized to degree {1}")]
    DegreeTooHigh(u32, u32),
    #[error("polynomial already involves the projective variable x0")]
    X0Present,
}

/// The element with the given index in the enumeration order
/// `0, 1, alpha, alpha^2, ..`.
fn elem_by_index(idx: u64) -> FFElem {
    if idx == 0 {
        FFElem::Zero
    } else {
        FFElem::Alpha((idx - 1) as u32)
    }
}

/// The full affine grid `F_{q^s}^k` in odometer order (leftmost coordinate
/// most significant, elements zero-first then ascending powers).
pub fn affine_points(f: &FieldCtx, k: usize) -> Vec<Vec<FFElem>> {
    let qs = f.qs();
    let total = qs
        .checked_pow(k as u32)
        .filter(|&t| t <= MAX_POINTS)
        .unwrap_or_else(|| panic!("affine grid of dimension {k} over F_{qs} too large"));
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut point = vec![FFElem::Zero; k];
        for slot in point.iter_mut().rev() {
            *slot = elem_by_index(idx % qs);
            idx /= qs;
        }
        out.push(point);
    }
    out
}

/// Standard representatives of `P^m(F_{q^s})` in cell-major order.
pub fn projective_points(f: &FieldCtx, m: usize) -> Vec<Vec<FFElem>> {
    let mut out = Vec::new();
    for cell in 0..=m {
        for tail in affine_points(f, m - cell) {
            let mut point = vec![FFElem::Zero; cell];
            point.push(f.one());
            point.extend(tail);
            out.push(point);
        }
    }
    out
}

/// Evaluate a polynomial at every point, in point order.
pub fn evaluate(f: &FieldCtx, poly: &SparsePoly, points: &[Vec<FFElem>]) -> Vec<FFElem> {
    points.iter().map(|p| poly.eval(f, p)).collect()
}

/// Multiply each term of an `x0`-free polynomial by the power of `x0` that
/// lifts it to homogeneous degree `d`.
pub fn homogenize(f: &FieldCtx, poly: &SparsePoly, d: u32) -> Result<SparsePoly, GeomError> {
    let mut out = SparsePoly::zero(poly.nvars());
    for (exps, c) in poly.terms() {
        if exps[0] != 0 {
            return Err(GeomError::X0Present);
        }
        let deg: u32 = exps.iter().sum();
        if deg > d {
            return Err(GeomError::DegreeTooHigh(deg, d));
        }
        let mut lifted = exps.clone();
        lifted[0] = d - deg;
        out.add_term(lifted, c, f);
    }
    Ok(out)
}

/// Substitute `x_j = 0` for `j < r` and `x_r = 1`, keeping the arity.
pub fn substitute_prefix(f: &FieldCtx, poly: &SparsePoly, r: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(poly.nvars());
    for (exps, c) in poly.terms() {
        if exps[..r].iter().any(|&e| e > 0) {
            continue; // killed by x_j = 0
        }
        let mut sub = exps.clone();
        sub[r] = 0; // x_r = 1
        out.add_term(sub, c, f);
    }
    out
}

/// Does the polynomial evaluate into `F_q` at every standard representative?
/// Checked two independent ways — directly, and cell-by-cell through the
/// substituted polynomials — and the two verdicts are asserted equal.
pub fn evaluates_to_base(f: &FieldCtx, poly: &SparsePoly) -> bool {
    let m = poly.nvars() - 1;
    let direct = evaluate(f, poly, &projective_points(f, m))
        .iter()
        .all(|&v| f.in_subfield(v, 1));
    let mut sliced = true;
    for r in 0..=m {
        let sub = substitute_prefix(f, poly, r);
        for tail in affine_points(f, m - r) {
            let mut point = vec![FFElem::Zero; r];
            point.push(f.one());
            point.extend(tail);
            if !f.in_subfield(sub.eval(f, &point), 1) {
                sliced = false;
            }
        }
    }
    assert_eq!(direct, sliced, "direct and sliced base-field checks disagree");
    direct
}
