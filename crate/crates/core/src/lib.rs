//! Projective Reed–Muller codes over a field tower `F_p ⊆ F_q ⊆ F_{q^s}`.
//!
//! The crate builds the tower arithmetic from scratch (discrete-log tables
//! over an explicitly chosen modulus), evaluates homogeneous polynomials on
//! standard representatives of projective space, and studies the subfield
//! subcodes of projective Reed–Muller codes together with their duals:
//!
//! * [`field`] — table-backed arithmetic for `F_{q^s}`, subfield tests,
//!   traces, and coordinates over intermediate subfields;
//! * [`poly`] — sparse multivariate polynomials with deterministic term order;
//! * [`projgeom`] — standard representatives of `P^m`, affine grids, and
//!   evaluation maps;
//! * [`cyclo`] — cyclotomic cosets of exponent vectors, the degree-window
//!   classification of monomial classes, and trace polynomials;
//! * [`ideal`] — the vanishing ideal of `P^m`, its universal Gröbner basis,
//!   division, and a closed-form normal form;
//! * [`codes`] — linear-algebra over the tower: RREF, kernels, subfield
//!   subcodes, trace codes, exact weight enumeration, MacWilliams transforms,
//!   and a Gilbert–Varshamov exceedance test;
//! * [`prm`] — the projective Reed–Muller family itself: explicit bases for
//!   the plane case, dimension formulas, distance bounds, and table rows.

pub mod codes;
pub mod cyclo;
pub mod field;
pub mod ideal;
pub mod poly;
pub mod prm;
pub mod projgeom;
