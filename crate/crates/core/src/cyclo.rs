//! Cyclotomic classes of exponent vectors under multiplication by `q`.
//!
//! Exponents of monomial *functions* on `F_{q^s}` live in
//! `Z = {0} ∪ [1, q^s-1]`: the exponent `0` (constant `1`) is kept apart
//! from the exponent `q^s - 1` (indicator of nonzero), and every positive
//! exponent reduces into `[1, q^s-1]` by [`CycloCtx::bar`]. Vectors of
//! exponents split into orbits under coordinate-wise multiplication by `q`
//! (bar-reduced); each orbit is represented by its minimum under the
//! right-to-left order [`CycloCtx::cmp_rightmost`].
//!
//! The orbit of a pair together with a degree `d` classifies which degree-`d`
//! monomials in `x0, x1, x2` reduce into it ([`CycloCtx::monomial_types`]),
//! and a scalar `λ` turns an orbit into the trace polynomial
//! `Σ_l λ^{q^l} x^{q^l·γ}` ([`trace_poly_proj`]), the building block of the
//! explicit code bases.
//!
//! ```
//! use prm_core::cyclo::CycloCtx;
//!
//! let cy = CycloCtx::new(2, 2); // q = 2, s = 2, exponents mod 3
//! assert_eq!(cy.bar(4), 1);
//! assert_eq!(cy.orbit(&[1, 2]), vec![vec![1, 2], vec![2, 1]]);
//! // Minimal representative under the right-to-left order: the second
//! // coordinate is the primary key, so (2,1) beats (1,2).
//! assert_eq!(cy.min_rep(&[1, 2]), vec![2, 1]);
//! ```

use std::cmp::Ordering;

use crate::field::{FFElem, FieldCtx};
use crate::poly::SparsePoly;

/// Cap on `(q^s)^m` for whole-orbit-space enumeration.
const MAX_CLASS_SPACE: u64 = 1 << 26;

/// Exponent arithmetic for `F_{q^s}`.
#[derive(Clone, Debug)]
pub struct CycloCtx {
    q: u64,
    s: u32,
    qs: u64,
}

/// One orbit: the minimum representative and the orbit in encounter order
/// starting from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloClass {
    pub min_rep: Vec<u64>,
    pub orbit: Vec<Vec<u64>>,
}

impl CycloClass {
    /// Orbit length, usually written `n_a`.
    pub fn size(&self) -> usize {
        self.orbit.len()
    }

    /// Largest coordinate sum over the orbit.
    pub fn max_sum(&self) -> u64 {
        self.orbit.iter().map(|v| v.iter().sum()).max().unwrap()
    }
}

/// All orbits of `Z^m`, sorted by minimum representative, with a lookup
/// table from vectors to orbit indices.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub m: usize,
    pub classes: Vec<CycloClass>,
    qs: u64,
    index: Vec<usize>,
}

impl ClassTable {
    pub fn class_index_of(&self, v: &[u64]) -> usize {
        assert_eq!(v.len(), self.m, "vector arity mismatch");
        let mut idx = 0u64;
        for &c in v.iter().rev() {
            assert!(c < self.qs, "exponent {c} not reduced below {}", self.qs);
            idx = idx * self.qs + c;
        }
        self.index[idx as usize]
    }

    pub fn class_of(&self, v: &[u64]) -> &CycloClass {
        &self.classes[self.class_index_of(v)]
    }
}

/// Which kinds of degree-`d` monomials `x0^{b0} x1^{b1} x2^{b2}` reduce into
/// a given orbit: monomials with an `x0` factor (`b0 >= 1`), without one
/// (`b0 = 0`), both, or none at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialTypes {
    Empty,
    OnlyWithX0,
    OnlyWithoutX0,
    Both,
}

impl CycloCtx {
    pub fn new(q: u64, s: u32) -> CycloCtx {
        assert!(q >= 2 && s >= 1, "need q >= 2 and s >= 1");
        let qs = q.checked_pow(s).expect("q^s fits in u64");
        CycloCtx { q, s, qs }
    }

    pub fn from_field(f: &FieldCtx) -> CycloCtx {
        CycloCtx { q: f.q(), s: f.s(), qs: f.qs() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn qs(&self) -> u64 {
        self.qs
    }

    /// Reduce an exponent into `{0} ∪ [1, q^s-1]`: zero stays zero, positive
    /// values wrap modulo `q^s - 1` into `[1, q^s-1]`.
    pub fn bar(&self, v: u64) -> u64 {
        if v == 0 {
            0
        } else {
            1 + (v - 1) % (self.qs - 1)
        }
    }

    /// [`Self::bar`] extended to signed input (negative values wrap up).
    pub fn bar_int(&self, v: i64) -> u64 {
        if v == 0 {
            0
        } else {
            (1 + (v - 1).rem_euclid(self.qs as i64 - 1)) as u64
        }
    }

    /// One orbit step: multiply by `q` and reduce.
    pub fn step(&self, c: u64) -> u64 {
        self.bar(c * self.q)
    }

    /// Right-to-left comparison: decided by the last coordinate where the
    /// vectors differ. Total order on reduced vectors.
    pub fn cmp_rightmost(&self, a: &[u64], b: &[u64]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return x.cmp(y);
            }
        }
        Ordering::Equal
    }

    /// Orbit of a vector in encounter order, starting from the vector itself.
    pub fn orbit(&self, start: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![start.to_vec()];
        let mut cur: Vec<u64> = start.iter().map(|&c| self.step(c)).collect();
        while cur != start {
            out.push(cur.clone());
            for c in cur.iter_mut() {
                *c = self.step(*c);
            }
        }
        out
    }

    pub fn orbit_len(&self, start: &[u64]) -> usize {
        self.orbit(start).len()
    }

    /// Minimum representative of the orbit under [`Self::cmp_rightmost`].
    pub fn min_rep(&self, v: &[u64]) -> Vec<u64> {
        self.orbit(v)
            .into_iter()
            .min_by(|a, b| self.cmp_rightmost(a, b))
            .unwrap()
    }

    /// Coordinate-wise conjugate exponent `q^s - 1 - c`.
    pub fn conjugate(&self, v: &[u64]) -> Vec<u64> {
        v.iter()
            .map(|&c| {
                assert!(c <= self.qs - 1, "exponent {c} not reduced");
                self.qs - 1 - c
            })
            .collect()
    }

    /// All orbits of `Z^m`, sorted by minimum representative.
    pub fn class_table(&self, m: usize) -> ClassTable {
        let total = self
            .qs
            .checked_pow(m as u32)
            .filter(|&t| t <= MAX_CLASS_SPACE)
            .unwrap_or_else(|| panic!("orbit space (q^s)^{m} too large to enumerate"));
        let encode = |v: &[u64]| -> u64 {
            v.iter().rev().fold(0, |acc, &c| acc * self.qs + c)
        };
        let mut seen = vec![false; total as usize];
        let mut classes = Vec::new();
        let mut v = vec![0u64; m];
        loop {
            if !seen[encode(&v) as usize] {
                let orbit = self.orbit(&v);
                for w in &orbit {
                    seen[encode(w) as usize] = true;
                }
                let min_rep = orbit
                    .iter()
                    .min_by(|a, b| self.cmp_rightmost(a, b))
                    .unwrap()
                    .clone();
                let orbit = self.orbit(&min_rep);
                classes.push(CycloClass { min_rep, orbit });
            }
            // Odometer over the vector space.
            let mut i = 0;
            while i < m {
                v[i] += 1;
                if v[i] < self.qs {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        classes.sort_by(|a, b| self.cmp_rightmost(&a.min_rep, &b.min_rep));
        let mut index = vec![usize::MAX; total as usize];
        for (ci, class) in classes.iter().enumerate() {
            for w in &class.orbit {
                index[encode(w) as usize] = ci;
            }
        }
        ClassTable { m, classes, qs: self.qs, index }
    }

    /// Classify the degree-`d` monomials in `x0, x1, x2` whose reduced
    /// exponent pair lies in the given orbit. A monomial `x0^{b0} x1^{b1}
    /// x2^{b2}` with `b0 + b1 + b2 = d` reduces into the orbit exactly when
    /// `(bar(b1), bar(b2))` is an orbit element; monomials with `b0 >= 1`
    /// exist iff some orbit sum is `< d`, and monomials with `b0 = 0` exist
    /// iff some orbit sum equals `d` or `bar(d)` (lifting one coordinate by
    /// `q^s - 1` bridges the gap when `d > q^s - 1`).
    pub fn monomial_types(&self, d: u64, orbit: &[Vec<u64>]) -> MonomialTypes {
        let bar_d = self.bar(d);
        let mut with_x0 = false;
        let mut without_x0 = false;
        for v in orbit {
            let sum: u64 = v.iter().sum();
            if sum < d {
                with_x0 = true;
            }
            if sum == d || sum == bar_d {
                without_x0 = true;
            }
        }
        match (with_x0, without_x0) {
            (false, false) => MonomialTypes::Empty,
            (true, false) => MonomialTypes::OnlyWithX0,
            (false, true) => MonomialTypes::OnlyWithoutX0,
            (true, true) => MonomialTypes::Both,
        }
    }

    /// Brute-force materialization of the same monomial set, for
    /// cross-checking [`Self::monomial_types`]: all `(b0, b1, b2)` with
    /// `b0 + b1 + b2 = d` whose reduced pair lies in the orbit.
    pub fn monomials_of_degree(&self, d: u64, orbit: &[Vec<u64>]) -> Vec<(u64, u64, u64)> {
        let members: std::collections::BTreeSet<&[u64]> =
            orbit.iter().map(|v| v.as_slice()).collect();
        let mut out = Vec::new();
        for b1 in 0..=d {
            for b2 in 0..=d - b1 {
                let b0 = d - b1 - b2;
                if members.contains([self.bar(b1), self.bar(b2)].as_slice()) {
                    out.push((b0, b1, b2));
                }
            }
        }
        out
    }
}

/// Trace polynomial `x0^{x0_exp} · Σ_l λ^{q^l} x^{q^l·γ}` in projective
/// variables `x0, .., x_m` (with `m = gamma.len()`); the sum runs over the
/// orbit of `gamma` in encounter order, and the `x0` exponent is constant
/// across terms because `x0` only takes values 0 and 1 on standard
/// representatives.
pub fn trace_poly_proj(
    f: &FieldCtx,
    cy: &CycloCtx,
    lambda: FFElem,
    gamma: &[u64],
    x0_exp: u32,
) -> SparsePoly {
    build_trace_poly(f, cy, lambda, gamma, Some(x0_exp))
}

/// Trace polynomial `Σ_l λ^{q^l} x^{q^l·γ}` in affine variables
/// `x0, .., x_{m-1}` (no projective coordinate).
pub fn trace_poly_affine(f: &FieldCtx, cy: &CycloCtx, lambda: FFElem, gamma: &[u64]) -> SparsePoly {
    build_trace_poly(f, cy, lambda, gamma, None)
}

fn build_trace_poly(
    f: &FieldCtx,
    cy: &CycloCtx,
    lambda: FFElem,
    gamma: &[u64],
    x0_exp: Option<u32>,
) -> SparsePoly {
    let extra = usize::from(x0_exp.is_some());
    let nvars = gamma.len() + extra;
    let mut out = SparsePoly::zero(nvars);
    let mut coeff = lambda;
    for v in cy.orbit(gamma) {
        let mut exps = Vec::with_capacity(nvars);
        if let Some(e0) = x0_exp {
            exps.push(e0);
        }
        exps.extend(v.iter().map(|&c| c as u32));
        out.add_term(exps, coeff, f);
        coeff = f.pow(coeff, cy.q());
    }
    out
}
