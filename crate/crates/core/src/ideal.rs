//! The vanishing ideal of the standard representatives of `P^m` and its
//! Gröbner machinery.
//!
//! On standard representatives, `x0` only takes the values 0 and 1, every
//! coordinate satisfies `x^{q^s} = x`, and once the leading 1 has appeared
//! the earlier coordinates are pinned. Those facts generate the vanishing
//! ideal:
//!
//! * `x0^2 - x0`,
//! * `x_i^{q^s} - x_i` for `i = 1, .., m`,
//! * `(x0 - 1)(x1 - 1) .. (x_{k-1} - 1)(x_k^2 - x_k)` for `k = 1, .., m-1`,
//! * `(x0 - 1)(x1 - 1) .. (x_m - 1)`.
//!
//! This list is a Gröbner basis simultaneously for the lexicographic,
//! graded-lexicographic, and graded-reverse-lexicographic orders with
//! `x0 > x1 > .. > x_m` (its leading terms don't depend on the choice), and
//! [`verify_buchberger`] checks that. The quotient by the ideal has the
//! monomial basis enumerated by [`quotient_monomials`], of size `|P^m|`,
//! and [`normal_form`] rewrites any polynomial into that basis by a closed
//! formula, bypassing the division algorithm.
//!
//! ```
//! use prm_core::field::FieldCtx;
//! use prm_core::ideal::{normal_form_monomial, quotient_monomials};
//! use prm_core::poly::SparsePoly;
//!
//! let f = FieldCtx::new(2, 1, 2).unwrap(); // F_4
//! assert_eq!(quotient_monomials(f.qs(), 2).len(), 21); // |P^2| over F_4
//!
//! // x0 x1^2 is not standard: the rewrite moves it into the quotient basis.
//! let nf = normal_form_monomial(&f, &[1, 2, 0]);
//! assert_eq!(nf.to_string_with(&f), "x1 + x1^2 + x0*x1");
//! ```

use std::cmp::Ordering;

use crate::field::{FFElem, FieldCtx};
use crate::poly::SparsePoly;

/// A monomial order on exponent vectors with `x0 > x1 > ..`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
}

pub const ALL_ORDERS: [MonomialOrder; 3] =
    [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex];

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let (da, db): (u64, u64) =
                    (a.iter().map(|&e| e as u64).sum(), b.iter().map(|&e| e as u64).sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::GrevLex => {
                let (da, db): (u64, u64) =
                    (a.iter().map(|&e| e as u64).sum(), b.iter().map(|&e| e as u64).sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            // Smaller trailing exponent means larger monomial.
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Leading monomial and coefficient; panics on the zero polynomial.
pub fn leading_term(p: &SparsePoly, order: MonomialOrder) -> (Vec<u32>, FFElem) {
    p.terms()
        .max_by(|(ea, _), (eb, _)| order.cmp(ea, eb))
        .map(|(e, c)| (e.clone(), c))
        .expect("leading term of the zero polynomial")
}

fn divides(divisor: &[u32], multiple: &[u32]) -> bool {
    divisor.iter().zip(multiple).all(|(d, m)| d <= m)
}

/// Generators of the vanishing ideal of the standard representatives of
/// `P^m`, in the fixed order `f0, f1, .., fm, g1, .., gm`.
pub fn vanishing_ideal_generators(f: &FieldCtx, m: usize) -> Vec<SparsePoly> {
    assert!(m >= 1, "projective dimension must be at least 1");
    let nvars = m + 1;
    let one = f.one();
    let qs = f.qs() as u32;
    let mut gens = Vec::with_capacity(2 * m + 1);
    // f0 = x0^2 - x0.
    let mut e2 = vec![0u32; nvars];
    e2[0] = 2;
    gens.push(SparsePoly::monomial(e2, one).sub(&SparsePoly::var(0, nvars), f));
    // fi = xi^{q^s} - xi.
    for i in 1..=m {
        let mut eq = vec![0u32; nvars];
        eq[i] = qs;
        gens.push(SparsePoly::monomial(eq, one).sub(&SparsePoly::var(i, nvars), f));
    }
    // gk = (x0-1)(x1-1)..(x_{k-1}-1)(x_k^2 - x_k), and the final gm with the
    // quadratic factor replaced by (x_m - 1).
    let lin = |i: usize| SparsePoly::var(i, nvars).sub(&SparsePoly::one(nvars), f);
    for k in 1..=m {
        let mut g = SparsePoly::one(nvars);
        for i in 0..k {
            g = g.mul(&lin(i), f);
        }
        let last = if k == m {
            lin(m)
        } else {
            let mut sq = vec![0u32; nvars];
            sq[k] = 2;
            SparsePoly::monomial(sq, one).sub(&SparsePoly::var(k, nvars), f)
        };
        gens.push(g.mul(&last, f));
    }
    gens
}

/// The monomials standard for the initial ideal, in family order: first the
/// `x0`-free monomials with exponents below `q^s`, then for each `i` the
/// family `x0 x1 .. x_{i-1}` (exponents one, `x_i` absent) times a free tail.
/// There are exactly `|P^m|` of them.
pub fn quotient_monomials(qs: u64, m: usize) -> Vec<Vec<u32>> {
    let nvars = m + 1;
    let mut out = Vec::new();
    // Odometer over positions `from..=m`, leftmost most significant.
    let mut push_family = |prefix: &[u32], from: usize| {
        let free = nvars - from;
        let mut tail = vec![0u32; free];
        loop {
            let mut mono = prefix.to_vec();
            mono.extend_from_slice(&tail);
            out.push(mono);
            let mut i = free;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                tail[i] += 1;
                if (tail[i] as u64) < qs {
                    break;
                }
                tail[i] = 0;
            }
        }
    };
    push_family(&[0], 1);
    for i in 1..=m {
        let mut prefix = vec![1u32; i];
        prefix.push(0); // x_i absent
        push_family(&prefix, i + 1);
    }
    out
}

/// Multivariate division: returns quotients (one per divisor) and the
/// remainder, with ties broken by first listed divisor. For a Gröbner basis
/// the remainder is independent of that tie-break.
pub fn divide(
    f: &FieldCtx,
    dividend: &SparsePoly,
    divisors: &[SparsePoly],
    order: MonomialOrder,
) -> (Vec<SparsePoly>, SparsePoly) {
    let nvars = dividend.nvars();
    let lts: Vec<(Vec<u32>, FFElem)> =
        divisors.iter().map(|g| leading_term(g, order)).collect();
    let mut work = dividend.clone();
    let mut quotients = vec![SparsePoly::zero(nvars); divisors.len()];
    let mut remainder = SparsePoly::zero(nvars);
    while !work.is_zero() {
        let (lm, lc) = leading_term(&work, order);
        let hit = lts.iter().position(|(dm, _)| divides(dm, &lm));
        match hit {
            Some(i) => {
                let ratio_exps: Vec<u32> =
                    lm.iter().zip(&lts[i].0).map(|(a, b)| a - b).collect();
                let ratio = SparsePoly::monomial(ratio_exps, f.div(lc, lts[i].1));
                quotients[i] = quotients[i].add(&ratio, f);
                work = work.sub(&ratio.mul(&divisors[i], f), f);
            }
            None => {
                remainder.add_term(lm.clone(), lc, f);
                work.remove_term(&lm);
            }
        }
    }
    (quotients, remainder)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(
    f: &FieldCtx,
    a: &SparsePoly,
    b: &SparsePoly,
    order: MonomialOrder,
) -> SparsePoly {
    let (la, ca) = leading_term(a, order);
    let (lb, cb) = leading_term(b, order);
    let lcm: Vec<u32> = la.iter().zip(&lb).map(|(x, y)| *x.max(y)).collect();
    let ma = SparsePoly::monomial(
        lcm.iter().zip(&la).map(|(l, e)| l - e).collect(),
        f.inv(ca),
    );
    let mb = SparsePoly::monomial(
        lcm.iter().zip(&lb).map(|(l, e)| l - e).collect(),
        f.inv(cb),
    );
    ma.mul(a, f).sub(&mb.mul(b, f), f)
}

/// Buchberger's criterion: every S-polynomial of the list reduces to zero.
pub fn verify_buchberger(f: &FieldCtx, gens: &[SparsePoly], order: MonomialOrder) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let s = s_polynomial(f, &gens[i], &gens[j], order);
            let (_, rem) = divide(f, &s, gens, order);
            if !rem.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Is the basis reduced: monic generators, and no monomial of one generator
/// divisible by the leading term of another?
pub fn is_reduced_basis(f: &FieldCtx, gens: &[SparsePoly], order: MonomialOrder) -> bool {
    let lts: Vec<(Vec<u32>, FFElem)> = gens.iter().map(|g| leading_term(g, order)).collect();
    for (i, g) in gens.iter().enumerate() {
        if lts[i].1 != f.one() {
            return false;
        }
        for (exps, _) in g.terms() {
            for (j, (lt, _)) in lts.iter().enumerate() {
                if j != i && divides(lt, exps) {
                    return false;
                }
            }
        }
    }
    true
}

/// Is the monomial one of the standard monomials of the quotient?
pub fn is_standard_monomial(qs: u64, exps: &[u32]) -> bool {
    let m = exps.len() - 1;
    if exps[1..].iter().any(|&e| e as u64 >= qs) {
        return false;
    }
    match exps[0] {
        0 => true,
        1 => {
            // Needs the shape x0 x1 .. x_{j-1} * (tail after a zero at j).
            match (1..=m).find(|&j| exps[j] != 1) {
                None => false, // divisible by x0 x1 .. x_m
                Some(j) => exps[j] == 0,
            }
        }
        _ => false,
    }
}

/// Closed-form normal form of a single monomial modulo the vanishing ideal.
///
/// After clamping `x0` to exponent one and folding each positive `x_i`
/// exponent into `[1, q^s - 1]`, a monomial is already standard unless `x0`
/// and an initial run `x1, .., x_l` of affine variables all appear. In that
/// case the rewrite telescopes along the run:
///
/// `H_{l+1} = x_l` (or `1` when the run spans every variable), and
/// `H_j = x_j^{a_j} .. x_l^{a_l} + (x_{j-1} - 1) * H_{j+1}` going down to
/// `H_1`, with the variables after the run multiplied back in at the end.
pub fn normal_form_monomial(f: &FieldCtx, exps: &[u32]) -> SparsePoly {
    let nvars = exps.len();
    let m = nvars - 1;
    let qs = f.qs() as u32;
    let mut a = exps.to_vec();
    if a[0] > 1 {
        a[0] = 1;
    }
    for e in a[1..].iter_mut() {
        while *e >= qs {
            *e -= qs - 1;
        }
    }
    let l = (1..=m).take_while(|&i| a[i] > 0).count();
    if a[0] == 0 || l == 0 {
        return SparsePoly::monomial(a, f.one());
    }
    let mut h = if l < m {
        SparsePoly::var(l, nvars)
    } else {
        SparsePoly::one(nvars)
    };
    for j in (1..=l).rev() {
        let mut prod = vec![0u32; nvars];
        prod[j..=l].copy_from_slice(&a[j..=l]);
        let step = SparsePoly::var(j - 1, nvars).sub(&SparsePoly::one(nvars), f);
        h = SparsePoly::monomial(prod, f.one()).add(&step.mul(&h, f), f);
    }
    let mut tail = vec![0u32; nvars];
    if l + 2 <= m {
        tail[l + 2..=m].copy_from_slice(&a[l + 2..=m]);
    }
    let out = SparsePoly::monomial(tail, f.one()).mul(&h, f);
    debug_assert!(
        out.terms().all(|(e, _)| is_standard_monomial(f.qs(), e)),
        "closed-form normal form produced a nonstandard monomial"
    );
    out
}

/// Normal form of a polynomial: the linear extension of
/// [`normal_form_monomial`] over its terms.
pub fn normal_form(f: &FieldCtx, poly: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero(poly.nvars());
    for (exps, c) in poly.terms() {
        out = out.add(&normal_form_monomial(f, exps).scale(c, f), f);
    }
    out
}
