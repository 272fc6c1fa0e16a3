mod common;

use common::*;
use cubicy::comm::{split_quadratic, BinForm};
use cubicy::cy::{
    cy_check, hessian, is_standard, matrix_of, point_scheme, rational_p1_root, segre, standard_q,
    tau_of_point, BiForm, CyVerdict, PointScheme, P1,
};
use cubicy::{Error, Gl2, NcPoly, RootContext, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn nc2(terms: &[(i64, &str)]) -> NcPoly {
    let t: Vec<(Scalar, &str)> = terms.iter().map(|(c, s)| (sc(*c), *s)).collect();
    NcPoly::from_terms(2, &t)
}

/// Points of `V(h)` with rational first coordinate from a small grid, using
/// the quadratic formula in the second factor.
fn sample_points(h: &BiForm) -> Vec<(P1, P1)> {
    let mut out = Vec::new();
    for (u0, u1) in [
        (1, 0),
        (0, 1),
        (1, 1),
        (1, -1),
        (1, 2),
        (2, 1),
        (1, 3),
        (3, -1),
    ] {
        let u = P1::from_ints(u0, u1);
        let f = h.at_first(&u.x, &u.y);
        if f.is_zero() {
            out.push((u.clone(), P1::from_ints(1, 0)));
            continue;
        }
        let mut ctx = RootContext::spanning(f.coeffs()).unwrap();
        if let Ok((l1, l2)) = split_quadratic(&f, &mut ctx) {
            out.push((u.clone(), P1::root_of(&l1)));
            out.push((u, P1::root_of(&l2)));
        }
    }
    out
}

#[test]
fn matrix_examples() {
    let w = ws(1).sub(&ws(2).scale(&sc(2)));
    let m = matrix_of(&w);
    assert_eq!(m.entries[0][0], nc2(&[(1, "yy")]));
    assert_eq!(m.entries[0][1], nc2(&[(1, "xy"), (-2, "yx")]));
    assert_eq!(m.entries[1][0], nc2(&[(1, "yx"), (-2, "xy")]));
    assert_eq!(m.entries[1][1], nc2(&[(1, "xx")]));

    let (a, b) = (3, -5);
    let m = matrix_of(&pot([a, b, 0, 0, 0, 0]));
    assert_eq!(m.entries[0][0], nc2(&[(a, "yy")]));
    assert_eq!(m.entries[0][1], nc2(&[(a, "xy"), (b, "yx")]));
    assert_eq!(m.entries[1][0], nc2(&[(a, "yx"), (b, "xy")]));
    assert_eq!(m.entries[1][1], nc2(&[(a, "xx")]));

    let m = matrix_of(&ws(5));
    assert_eq!(m.entries[0][0], nc2(&[(1, "xx")]));
    assert!(m.entries[0][1].is_zero() && m.entries[1][0].is_zero() && m.entries[1][1].is_zero());
}

#[test]
fn standard_examples() {
    assert!(is_standard(&ws(3)));
    assert!(!is_standard(&ws(5)));
    for i in 1..=6 {
        for j in 1..=6 {
            let w = ws(i).add(&ws(j).scale(&sc(2)));
            if let Some(q) = standard_q(&w) {
                assert_eq!(q, Gl2::identity(), "w{i} + 2 w{j}");
            }
        }
    }
}

#[test]
fn segre_examples() {
    let s = segre(&nc2(&[(1, "xy"), (-2, "yx")]));
    assert_eq!(s.to_string(), "x1*y2 - 2*y1*x2");
    assert_eq!(segre(&nc2(&[(1, "xx")])).to_string(), "x1*x2");
    assert_eq!(
        segre(&nc2(&[(1, "xy"), (1, "yx")])).to_string(),
        "x1*y2 + y1*x2"
    );
}

#[test]
fn cy_examples() {
    assert_eq!(cy_check(&pot([1, -2, 0, 0, 0, 0])), CyVerdict::CalabiYau);
    assert_eq!(cy_check(&ws(5)), CyVerdict::NotStandard);
    match cy_check(&ws(2).scale(&sc(3))) {
        CyVerdict::NonEmptyLocus(wit) => {
            let (u, v) = wit.point.expect("rational witness");
            let w = ws(2);
            let m = matrix_of(&w);
            for row in &m.entries {
                for e in row {
                    assert!(on_curve_11(&segre(e), &u, &v));
                }
            }
        }
        other => panic!("expected a nonempty locus, got {other:?}"),
    }
}

fn on_curve_11(f: &BiForm, u: &P1, v: &P1) -> bool {
    f.eval(&(u.x.clone(), u.y.clone()), &(v.x.clone(), v.y.clone()))
        .is_zero()
}

#[test]
fn hessian_examples() {
    let h = hessian(&pot([1, -2, 0, 0, 0, 0]));
    // (x1 y2 - y1 x2)²
    assert!(h.proportional(&bi22(&[(1, 0, 2), (-2, 1, 1), (1, 2, 0)])));
    let (a, b) = (3, 7);
    let h = hessian(&pot([a, b, 0, 0, 0, 0]));
    let expected = bi22(&[(b * b, 1, 1), (a * b, 0, 2), (a * b, 2, 0)]);
    assert!(h.proportional(&expected), "{h}");
    assert!(hessian(&ws(5)).is_zero());
}

#[test]
fn point_scheme_examples() {
    assert_eq!(point_scheme(&ws(1)).unwrap(), PointScheme::WholeSurface);
    let PointScheme::Curve(h) = point_scheme(&pot([1, 2, 0, 0, 0, 0])).unwrap() else {
        panic!("curve expected")
    };
    assert!(h.proportional(&bi22(&[(1, 0, 2), (2, 1, 1), (1, 2, 0)])));
    let PointScheme::Curve(h) = point_scheme(&pot([1, -2, 0, 0, -2, 0])).unwrap() else {
        panic!("curve expected")
    };
    assert!(h.proportional(&bi22(&[(1, 0, 2), (-2, 1, 1), (1, 2, 0), (-1, 0, 0)])));
    assert!(matches!(
        point_scheme(&ws(5)),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn tau_examples() {
    assert_eq!(
        tau_of_point(&ws(1), &pt(1, 0, 0, 1)).unwrap(),
        pt(0, 1, -1, 0)
    );
    let w = pot([1, -2, 0, 0, -2, 0]);
    assert_eq!(tau_of_point(&w, &pt(1, 0, 1, 1)).unwrap(), pt(1, 1, 1, 2));
    // Case 1: every point of E is fixed
    let w1 = pot([1, -2, 0, 0, 0, 0]);
    for p in [pt(1, 0, 1, 0), pt(1, 3, 1, 3), pt(2, -1, 2, -1)] {
        assert_eq!(tau_of_point(&w1, &p).unwrap(), p);
    }
    assert!(matches!(
        tau_of_point(&w1, &pt(1, 0, 0, 1)),
        Err(Error::NotOnE)
    ));
}

#[test]
fn tau_general_formula_case2() {
    // τ(p₁,q₁; p₁,p₁+q₁) = (p₁,p₁+q₁; p₁,2p₁+q₁)
    let w = pot([1, -2, 0, 0, -2, 0]);
    for (p, q) in [(1, 0), (1, 5), (2, -3), (0, 1)] {
        let got = tau_of_point(&w, &pt(p, q, p, p + q)).unwrap();
        assert_eq!(got, pt(p, p + q, p, 2 * p + q));
    }
}

fn small_int() -> impl Strategy<Value = i64> {
    -3i64..=3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn matrix_reconstructs(w in ncpoly(4)) {
        prop_assert_eq!(matrix_of(&w).contract(), w);
    }

    #[test]
    fn cyclic_standard_has_identity_q(w in cyclic_quartic()) {
        if let Some(q) = standard_q(&w) {
            prop_assert_eq!(q, Gl2::identity());
        }
    }

    #[test]
    fn cy_verdict_is_gl2_invariant(c in prop::array::uniform6(small_int()), g in gl2()) {
        let w = pot(c);
        let g: Gl2 = Gl2::new(g.a.into(), g.b.into(), g.c.into(), g.d.into());
        prop_assert_eq!(cy_check(&w).is_cy(), cy_check(&w.apply_gl2(&g)).is_cy());
    }

    #[test]
    fn emptiness_matches_brute_force(c in prop::array::uniform6(small_int())) {
        let w = pot(c);
        prop_assume!(is_standard(&w));
        let verdict = cy_check(&w);
        prop_assert_eq!(!verdict.is_cy(), brute_force_nonempty(&w), "{}", w);
    }

    #[test]
    fn point_scheme_moves_with_coordinates(c in prop::array::uniform6(small_int()), g in gl2()) {
        let w = pot(c);
        prop_assume!(cy_check(&w).is_cy());
        let g: Gl2 = Gl2::new(g.a.into(), g.b.into(), g.c.into(), g.d.into());
        let PointScheme::Curve(h) = point_scheme(&w).unwrap() else { return Ok(()); };
        let PointScheme::Curve(h2) = point_scheme(&w.apply_gl2(&g)).unwrap() else {
            prop_assert!(false, "whole surface after a coordinate change");
            unreachable!()
        };
        // points evaluate through the transpose: σ(w)(p) = w(Sᵀ p)
        let t_inv = Gl2::new(g.a.clone(), g.c.clone(), g.b.clone(), g.d.clone()).inverse().unwrap();
        for p in sample_points(&h) {
            prop_assert!(on_curve(&h, &p));
            let q = (p.0.apply(&t_inv), p.1.apply(&t_inv));
            prop_assert!(on_curve(&h2, &q));
        }
    }

    #[test]
    fn tau_preserves_e(c in prop::array::uniform6(small_int())) {
        let w = pot(c);
        prop_assume!(cy_check(&w).is_cy());
        let scheme = point_scheme(&w).unwrap();
        let h = match &scheme {
            PointScheme::Curve(h) => h.clone(),
            PointScheme::WholeSurface => return Ok(()),
        };
        for p in sample_points(&h) {
            match tau_of_point(&w, &p) {
                Ok(q) => prop_assert!(on_curve(&h, &q), "{} {} -> {} {}", p.0, p.1, q.0, q.1),
                Err(Error::AmbiguousThirdPoint) => {}
                Err(e) => prop_assert!(false, "{e} at {} {}", p.0, p.1),
            }
        }
    }
}

#[test]
fn rational_roots_of_forms() {
    let g = BinForm::new(vec![sc(1), sc(-3), sc(2)]);
    let r = rational_p1_root(&g).unwrap();
    assert!(g.eval(&r.x, &r.y).is_zero());
}
