#![allow(dead_code)]

use cubicy::comm::split_quadratic;
use cubicy::cy::{matrix_of, segre, BiForm, P1};
use cubicy::ncpoly::{basis, from_sp_coords};
use cubicy::{Gl2, NcPoly, Rational, RootContext, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    q(n, 1)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != qi(0))
}

pub fn ncpoly(degree: usize) -> impl Strategy<Value = NcPoly<Rational>> {
    prop::collection::vec(rational(), 1 << degree).prop_map(move |c| NcPoly::from_coeffs(degree, c))
}

pub fn cyclic_quartic() -> impl Strategy<Value = NcPoly<Rational>> {
    prop::array::uniform6(rational()).prop_map(|c| from_sp_coords(&c))
}

pub fn gl2() -> impl Strategy<Value = Gl2<Rational>> {
    prop::array::uniform4(rational())
        .prop_map(|[a, b, c, d]| Gl2::new(a, b, c, d))
        .prop_filter("invertible", |g| g.is_invertible())
}

pub fn w(i: usize) -> NcPoly<Rational> {
    basis(i)
}

pub fn ws(i: usize) -> NcPoly {
    basis(i)
}

pub fn sc(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn pot(c: [i64; 6]) -> NcPoly {
    from_sp_coords(&c.map(sc))
}

/// `Σ c · x1^.. y1^.. x2^.. y2^..` from `(c, i, j)` with `i`, `j` the y-exponents.
pub fn bi22(terms: &[(i64, usize, usize)]) -> BiForm {
    let mut c = vec![Scalar::zero(); 9];
    for &(v, i, j) in terms {
        c[i * 3 + j] = c[i * 3 + j].clone() + sc(v);
    }
    BiForm::new(2, 2, c)
}

pub fn pt(a: i64, b: i64, c: i64, d: i64) -> (P1, P1) {
    (P1::from_ints(a, b), P1::from_ints(c, d))
}

pub fn on_curve(h: &BiForm, p: &(P1, P1)) -> bool {
    h.eval(
        &(p.0.x.clone(), p.0.y.clone()),
        &(p.1.x.clone(), p.1.y.clone()),
    )
    .is_zero()
}

/// Brute force: at every root `u` of every minor (and at `u = ∞`), test the
/// rank of the 4x2 system directly.
pub fn brute_force_nonempty(w: &NcPoly) -> bool {
    let c = w.project_c();
    let m = matrix_of(&c);
    let forms: Vec<BiForm> = m.entries.iter().flatten().map(segre).collect();
    let mut candidates = vec![P1::from_ints(1, 0), P1::from_ints(0, 1)];
    for k in 0..4 {
        for l in k + 1..4 {
            let a = forms[k].first_coeffs();
            let b = forms[l].first_coeffs();
            let minor = a[0].mul(&b[1]).sub(&b[0].mul(&a[1]));
            if minor.is_zero() {
                candidates.push(P1::from_ints(1, 7));
                continue;
            }
            let mut ctx = RootContext::spanning(minor.coeffs()).unwrap();
            if minor.coeff(0).is_zero() {
                candidates.push(P1::from_ints(0, 1));
            }
            if let Ok((l1, l2)) = split_quadratic(&minor, &mut ctx) {
                candidates.push(P1::root_of(&l1));
                candidates.push(P1::root_of(&l2));
            }
        }
    }
    candidates.iter().any(|u| {
        let rows: Vec<Vec<Scalar>> = forms
            .iter()
            .map(|f| f.at_first(&u.x, &u.y).coeffs().to_vec())
            .collect();
        cubicy::linalg::rank(2, &rows) < 2
    })
}
