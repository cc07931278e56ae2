//! Sparse multivariate polynomials over the tower's top field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! (and therefore printing and evaluation order) is deterministic. The zero
//! coefficient is never stored. Evaluation uses the convention `0^0 = 1`,
//! which is what evaluation-code constructions expect from the constant
//! monomial.
//!
//! ```
//! use prm_core::field::FieldCtx;
//! use prm_core::poly::SparsePoly;
//!
//! let f = FieldCtx::new(2, 1, 1).unwrap(); // F_2
//! let x0 = SparsePoly::var(0, 2);
//! let x1 = SparsePoly::var(1, 2);
//! let sq = x0.add(&x1, &f).mul(&x0.add(&x1, &f), &f);
//! // Freshman's dream in characteristic 2: (x0 + x1)^2 = x0^2 + x1^2.
//! let expect = SparsePoly::monomial(vec![2, 0], f.one())
//!     .add(&SparsePoly::monomial(vec![0, 2], f.one()), &f);
//! assert_eq!(sq, expect);
//! ```

use std::collections::BTreeMap;

use crate::field::{FFElem, FieldCtx};

/// A polynomial in `nvars` variables `x0, .., x{nvars-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FFElem>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        SparsePoly::constant(nvars, FFElem::Alpha(0))
    }

    pub fn constant(nvars: usize, c: FFElem) -> Self {
        SparsePoly::monomial(vec![0; nvars], c)
    }

    /// The single variable `x_i`.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        SparsePoly::monomial(exps, FFElem::Alpha(0))
    }

    /// A single term `c * x^exps`; the zero polynomial when `c = 0`.
    pub fn monomial(exps: Vec<u32>, c: FFElem) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if c != FFElem::Zero {
            terms.insert(exps, c);
        }
        SparsePoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, FFElem)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> FFElem {
        self.terms.get(exps).copied().unwrap_or(FFElem::Zero)
    }

    /// Largest total degree over the support; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Add `c * x^exps` in place, merging with an existing term.
    /// Drops the term with the given exponent vector, if present.
    pub fn remove_term(&mut self, exps: &[u32]) {
        self.terms.remove(exps);
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: FFElem, f: &FieldCtx) {
        assert_eq!(exps.len(), self.nvars, "term arity mismatch");
        if c == FFElem::Zero {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = f.add(*o.get(), c);
                if sum == FFElem::Zero {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly, f: &FieldCtx) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c, f);
        }
        out
    }

    pub fn neg(&self, f: &FieldCtx) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (e, c) in self.terms() {
            out.terms.insert(e.clone(), f.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly, f: &FieldCtx) -> SparsePoly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: FFElem, f: &FieldCtx) -> SparsePoly {
        if c == FFElem::Zero {
            return SparsePoly::zero(self.nvars);
        }
        let mut out = SparsePoly::zero(self.nvars);
        for (e, a) in self.terms() {
            out.terms.insert(e.clone(), f.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly, f: &FieldCtx) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, f.mul(ca, cb), f);
            }
        }
        out
    }

    /// Evaluate at a point, with `0^0 = 1`.
    pub fn eval(&self, f: &FieldCtx, point: &[FFElem]) -> FFElem {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = FFElem::Zero;
        for (exps, c) in self.terms() {
            let mut term = c;
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term = f.mul(term, f.pow(*x, e as u64));
                }
            }
            acc = f.add(acc, term);
        }
        acc
    }

    /// Human-readable rendering, terms in map order: `a^3*x0*x1^2 + x2 + 1`.
    pub fn to_string_with(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (exps, c) in self.terms() {
            let mut factors = Vec::new();
            if c != FFElem::Alpha(0) || exps.iter().all(|&e| e == 0) {
                factors.push(f.format_elem(c));
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 1, 2).unwrap()
    }

    #[test]
    fn construction_and_degree() {
        let f = f4();
        let p = SparsePoly::monomial(vec![1, 2, 0], f.alpha());
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.num_terms(), 1);
        assert!(SparsePoly::zero(3).is_zero());
        assert_eq!(SparsePoly::monomial(vec![1, 1], FFElem::Zero), SparsePoly::zero(2));
        assert_eq!(SparsePoly::zero(2).total_degree(), 0);
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = f4();
        let x = SparsePoly::var(0, 1);
        let sum = x.add(&x, &f);
        assert!(sum.is_zero(), "x + x = 0 in characteristic 2");
        let p = SparsePoly::monomial(vec![2], f.alpha());
        let q = SparsePoly::monomial(vec![2], f.pow(f.alpha(), 2));
        let r = p.add(&q, &f);
        assert_eq!(r.coeff(&[2]), f.one(), "alpha + alpha^2 = 1");
    }

    #[test]
    fn product_matches_pointwise_products() {
        let f = f4();
        let elems: Vec<_> = f.elements().collect();
        let a = SparsePoly::var(0, 2)
            .add(&SparsePoly::constant(2, f.alpha()), &f)
            .mul(&SparsePoly::var(1, 2), &f);
        let b = SparsePoly::var(0, 2).add(&SparsePoly::one(2), &f);
        let prod = a.mul(&b, &f);
        for &x in &elems {
            for &y in &elems {
                let pt = [x, y];
                assert_eq!(
                    prod.eval(&f, &pt),
                    f.mul(a.eval(&f, &pt), b.eval(&f, &pt)),
                    "(ab)(P) = a(P) b(P)"
                );
            }
        }
    }

    #[test]
    fn eval_uses_zero_to_the_zero_is_one() {
        let f = f4();
        let one = SparsePoly::one(2);
        assert_eq!(one.eval(&f, &[FFElem::Zero, FFElem::Zero]), f.one());
        let x0 = SparsePoly::var(0, 2);
        assert_eq!(x0.eval(&f, &[FFElem::Zero, f.one()]), FFElem::Zero);
    }

    #[test]
    fn subtraction_is_addition_inverse() {
        let f = FieldCtx::new(3, 1, 2).unwrap();
        let a = SparsePoly::monomial(vec![2, 1], f.alpha())
            .add(&SparsePoly::monomial(vec![0, 3], f.one()), &f);
        let b = SparsePoly::monomial(vec![1, 1], f.pow(f.alpha(), 3));
        assert_eq!(a.add(&b, &f).sub(&b, &f), a);
        assert!(a.sub(&a, &f).is_zero());
    }

    #[test]
    fn rendering_is_deterministic_and_readable() {
        let f = f4();
        let p = SparsePoly::monomial(vec![1, 2], f.alpha())
            .add(&SparsePoly::one(2), &f)
            .add(&SparsePoly::var(1, 2), &f);
        assert_eq!(p.to_string_with(&f), "1 + x1 + a*x0*x1^2");
    }
}
