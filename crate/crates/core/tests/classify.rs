mod common;

use common::*;
use cubicy::classify::{
    classify, defining_relations, placement_from_geometry, potentials_equivalent, same_relations,
    Exceptional, Params, Placement, Row,
};
use cubicy::comm::QuarticTag;
use cubicy::curves::CurveTag;
use cubicy::cy::PointScheme;
use cubicy::ncpoly::from_sp_coords;
use cubicy::Field;
use cubicy::{Gl2, NcPoly, Scalar};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn potq(c: [Scalar; 6]) -> NcPoly {
    from_sp_coords(&c)
}

fn rel(terms: &[(i64, &str)]) -> NcPoly {
    let t: Vec<(Scalar, &str)> = terms.iter().map(|(c, s)| (sc(*c), *s)).collect();
    NcPoly::from_terms(3, &t)
}

fn row_of(w: &NcPoly) -> Option<Row> {
    let r = classify(w);
    assert!(r.notes.is_empty(), "notes for {w}: {:?}", r.notes);
    r.table_row
}

fn exceptional_of(w: &NcPoly) -> Option<Exceptional> {
    let r = classify(w);
    assert!(r.notes.is_empty(), "notes for {w}: {:?}", r.notes);
    r.exceptional_id
}

/// Samples strictly inside each row.
fn samples() -> Vec<(Row, NcPoly)> {
    vec![
        (Row::R1, pot([1, -2, 0, 0, 0, 0])),
        (Row::R2, pot([1, -2, 0, 0, -2, 0])),
        (Row::R3, pot([1, -2, 1, 0, 0, 0])),
        (Row::R4_1, pot([1, 0, 0, 0, 0, 0])),
        (Row::R4_2, pot([1, 2, 0, 0, 0, 0])),
        (Row::R4_3, pot([1, 1, 0, 0, 0, 0])),
        (Row::R5_1, pot([1, 0, 0, 0, 4, 0])),
        (Row::R5_2, pot([1, 2, 0, 0, 8, 0])),
        (Row::R5_3, pot([1, 1, 0, 0, 1, 0])),
        (Row::R6_1, pot([0, 2, 0, 0, 1, 1])),
        (Row::R6_2, pot([1, 0, 0, 0, 1, 1])),
        (Row::R6_3, pot([1, 2, 0, 0, 1, 1])),
    ]
}

#[test]
fn rows_at_samples() {
    for (row, w) in samples() {
        let r = classify(&w);
        assert!(r.notes.is_empty(), "row {row}: {:?}", r.notes);
        assert_eq!(r.table_row, Some(row));
        assert_eq!(r.exceptional_id, None);
        assert!(r.cy.is_cy());
        assert_eq!(r.curve_class.as_ref().unwrap().tag, row.curve_tag());
        let nf = r.normal_form.unwrap();
        assert_eq!(
            r.cyclic_part.apply_gl2(&nf.sigma),
            nf.potential.scale(&nf.scale)
        );
    }
}

#[test]
fn spec_style_examples() {
    assert_eq!(row_of(&pot([1, -2, 0, 0, 0, 0])), Some(Row::R1));
    assert_eq!(exceptional_of(&ws(5)), Some(Exceptional::E1));
    let w = potq([q(1, 8), q(1, 4), sc(0), sc(0), sc(0), sc(0)]);
    assert_eq!(row_of(&w), Some(Row::R4_2));
    let r = classify(&NcPoly::zero(4));
    assert!(r.is_degenerate());
    assert!(r.table_row.is_none() && r.exceptional_id.is_none());
}

#[test]
fn relations_examples() {
    let (a, b) = defining_relations(&pot([1, -2, 0, 0, 0, 0]));
    assert_eq!(a, rel(&[(1, "xyy"), (1, "yyx"), (-2, "yxy")]));
    assert_eq!(b, rel(&[(1, "yxx"), (1, "xxy"), (-2, "xyx")]));
    let (a, b) = defining_relations(&pot([1, -2, 1, 0, 0, 0]));
    assert_eq!(
        a,
        rel(&[
            (1, "xyy"),
            (1, "yyx"),
            (-2, "yxy"),
            (1, "xxy"),
            (1, "xyx"),
            (1, "yxx")
        ])
    );
    assert_eq!(b, rel(&[(1, "yxx"), (1, "xxy"), (-2, "xyx"), (1, "xxx")]));
    let (a, b) = defining_relations(&ws(5));
    assert_eq!(a, rel(&[(1, "xxx")]));
    assert!(b.is_zero());
}

#[test]
fn parameters_follow_the_row_normalizations() {
    // (4.3) normalizes 4α + 2β = 1
    let r = classify(&pot([1, 1, 0, 0, 0, 0]));
    assert_eq!(r.parameters, Params::AlphaBeta(q(1, 6), q(1, 6)));
    // (5.3) at α = β = 1 needs y ↦ y/√6
    let r = classify(&pot([1, 1, 0, 0, 1, 0]));
    assert_eq!(r.table_row, Some(Row::R5_3));
    assert_eq!(r.parameters, Params::AlphaBeta(q(1, 6), q(1, 6)));
    let r = classify(&pot([0, 2, 0, 0, 1, 1]));
    assert_eq!(r.parameters, Params::Gamma(sc(2)));
    let r = classify(&pot([2, 0, 0, 0, 1, 1]));
    assert_eq!(r.parameters, Params::Gamma(q(1, 2)));
}

#[test]
fn exceptionals_at_boundary_parameters() {
    let cases = [
        (pot([0, 0, 0, 0, 1, 0]), Exceptional::E1),
        (pot([0, 0, 1, 0, 0, 0]), Exceptional::E2),
        (pot([0, 1, 0, 0, 0, 0]), Exceptional::E3),
        (pot([0, 1, 0, 0, 2, 0]), Exceptional::E4),
        (pot([0, 0, 0, 0, 1, 1]), Exceptional::E5),
        (pot([1, 1, 0, 0, 1, 1]), Exceptional::E5),
        (pot([-1, -1, 0, 0, 1, 1]), Exceptional::E5),
    ];
    for (w, e) in cases {
        let r = classify(&w);
        assert!(r.notes.is_empty(), "{e}: {:?}", r.notes);
        assert_eq!(r.exceptional_id, Some(e), "{w}");
        assert!(!r.cy.is_cy());
        let nf = r.normal_form.unwrap();
        let moved = r.cyclic_part.apply_gl2(&nf.sigma);
        let (a, b) = defining_relations(&moved);
        assert!(same_relations(&[a, b], &e.relations()), "{e}");
    }
}

#[test]
fn exceptional_potentials_have_their_relations() {
    for e in Exceptional::ALL {
        let (a, b) = defining_relations(&e.potential());
        assert!(same_relations(&[a, b], &e.relations()), "{e}");
    }
}

#[test]
fn disguised_cubes_are_e5() {
    // ((x+y)³, (x−y)³) and ((x+iy)³, (x−iy)³) come from α = β = ±1
    let r = classify(&pot([1, 1, 0, 0, 1, 1]));
    let (a, b) = defining_relations(&r.cyclic_part);
    let plus = rel(&[
        (1, "xxx"),
        (1, "xxy"),
        (1, "xyx"),
        (1, "yxx"),
        (1, "xyy"),
        (1, "yxy"),
        (1, "yyx"),
        (1, "yyy"),
    ]);
    let minus = rel(&[
        (1, "xxx"),
        (-1, "xxy"),
        (-1, "xyx"),
        (-1, "yxx"),
        (1, "xyy"),
        (1, "yxy"),
        (1, "yyx"),
        (-1, "yyy"),
    ]);
    assert!(same_relations(&[a, b], &[plus, minus]));
}

#[test]
fn folded_branches() {
    // β = 1 folds to (6.1) with γ = (1 − α)/(1 + α)
    let r = classify(&pot([2, 1, 0, 0, 1, 1]));
    assert_eq!(r.table_row, Some(Row::R6_1));
    assert!(r.notes.is_empty(), "{:?}", r.notes);
    assert_eq!(r.parameters, Params::Gamma(q(-1, 3)));
    // β = −1 folds the same way after y ↦ iy
    let r = classify(&pot([2, -1, 0, 0, 1, 1]));
    assert_eq!(r.table_row, Some(Row::R6_1));
    assert!(r.notes.is_empty(), "{:?}", r.notes);
    // 2α − β = 1 folds to (6.2) with γ = 2α/(1 − α)
    let r = classify(&potq([q(3, 2), sc(2), sc(0), sc(0), sc(1), sc(1)]));
    assert_eq!(r.table_row, Some(Row::R6_2));
    assert!(r.notes.is_empty(), "{:?}", r.notes);
    assert_eq!(r.parameters, Params::Gamma(sc(-6)));
    let r = classify(&pot([1, 3, 0, 0, 1, 1]));
    assert_eq!(r.table_row, Some(Row::R6_2));
    assert!(r.notes.is_empty(), "{:?}", r.notes);
}

#[test]
fn excluded_parameters_route_elsewhere() {
    // (4.3) needs β ≠ 0, ±2α
    assert_eq!(row_of(&pot([1, 0, 0, 0, 0, 0])), Some(Row::R4_1));
    assert_eq!(row_of(&pot([1, 2, 0, 0, 0, 0])), Some(Row::R4_2));
    assert_eq!(
        exceptional_of(&pot([0, 1, 0, 0, 0, 0])),
        Some(Exceptional::E3)
    );
    // (5.3) likewise
    assert_eq!(row_of(&pot([1, 0, 0, 0, 4, 0])), Some(Row::R5_1));
    assert_eq!(row_of(&pot([1, 2, 0, 0, 8, 0])), Some(Row::R5_2));
    // (6.3) needs β ≠ 0, ±1, 2α ± 1, −2α ± 1
    assert_eq!(row_of(&pot([3, 0, 0, 0, 1, 1])), Some(Row::R6_2));
    assert_eq!(row_of(&pot([3, 1, 0, 0, 1, 1])), Some(Row::R6_1));
    assert_eq!(row_of(&pot([3, 5, 0, 0, 1, 1])), Some(Row::R6_2));
    assert_eq!(row_of(&pot([3, 7, 0, 0, 1, 1])), Some(Row::R6_2));
    // β = −2α ± 1 forces λ = ±2, so w̄ has a repeated root and case 6 is left
    let r = classify(&pot([3, -5, 0, 0, 1, 1]));
    assert_eq!(r.family(), Some(4));
    assert_eq!(r.table_row.map(|r| r.family()), Some(4));
}

#[test]
fn geometry_table_is_complete_for_samples() {
    for (row, w) in samples() {
        let r = classify(&w);
        let g = placement_from_geometry(r.quartic_class.tag, true, Some(row.curve_tag()));
        assert_eq!(g, Some(Placement::Row(row)));
    }
    assert_eq!(
        placement_from_geometry(QuarticTag::FourDistinct, false, None),
        Some(Placement::Exceptional(Exceptional::E5))
    );
}

#[test]
fn whole_surface_row() {
    let r = classify(&ws(1));
    assert_eq!(r.point_scheme, Some(PointScheme::WholeSurface));
    assert_eq!(r.curve_class.unwrap().tag, CurveTag::WholeSurface);
}

#[test]
fn equivalence_examples() {
    let w = pot([1, -2, 0, 0, 0, 0]);
    let s0: Gl2 = Gl2::from_ints(2, 1, -1, 3);
    let moved = w.apply_gl2(&s0);
    let s = potentials_equivalent(&w, &moved)
        .unwrap()
        .expect("same orbit");
    assert!(w
        .project_c()
        .apply_gl2(&s)
        .ratio_to(&moved.project_c())
        .is_some());

    assert!(potentials_equivalent(&ws(1), &pot([1, 2, 0, 0, 0, 0]))
        .unwrap()
        .is_none());

    // a folded (6.1) potential against its displayed form
    let a = pot([2, 1, 0, 0, 1, 1]);
    let b = potq([sc(0), q(-1, 3), sc(0), sc(0), sc(1), sc(1)]);
    let s = potentials_equivalent(&a, &b).unwrap().expect("fold");
    assert!(a.apply_gl2(&s).ratio_to(&b).is_some());

    // γ and 1/γ in (6.1) lie in different g_λ orbits
    let g2 = pot([0, 2, 0, 0, 1, 1]);
    let g_half = potq([sc(0), q(1, 2), sc(0), sc(0), sc(1), sc(1)]);
    assert!(potentials_equivalent(&g2, &g_half).unwrap().is_none());

    // γ and −γ are related by y ↦ iy up to swapping the relations
    let gm2 = pot([0, -2, 0, 0, 1, 1]);
    assert!(potentials_equivalent(&g2, &gm2).unwrap().is_some());

    assert!(potentials_equivalent(&ws(5), &w).is_err());
}

fn small_gl2() -> impl Strategy<Value = Gl2> {
    prop::array::uniform4(-3i64..=3)
        .prop_map(|[a, b, c, d]| Gl2::from_ints(a, b, c, d))
        .prop_filter("invertible", |g| g.is_invertible())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(36))]

    #[test]
    fn classification_is_invariant(idx in 0usize..12, s in small_gl2()) {
        let (row, w) = samples().swap_remove(idx);
        let r = classify(&w.apply_gl2(&s));
        prop_assert!(r.notes.is_empty(), "{:?}", r.notes);
        prop_assert_eq!(r.table_row, Some(row));
        prop_assert_eq!(r.curve_class.unwrap().tag, row.curve_tag());
    }

    #[test]
    fn exceptionals_are_invariant(idx in 0usize..5, s in small_gl2()) {
        let e = Exceptional::ALL[idx];
        let r = classify(&e.potential().apply_gl2(&s));
        prop_assert!(r.notes.is_empty(), "{:?}", r.notes);
        prop_assert_eq!(r.exceptional_id, Some(e));
    }

    #[test]
    fn placements_agree_on_case_six(a in -4i64..=4, b in -4i64..=4, d in 1i64..=3) {
        let w = potq([q(a, d), q(b, d), sc(0), sc(0), sc(1), sc(1)]);
        let lambda = q(4 * a + 2 * b, d);
        prop_assume!(lambda != sc(2) && lambda != sc(-2));
        let r = classify(&w);
        prop_assert!(r.notes.is_empty(), "{:?}", r.notes);
        prop_assert!(r.placement().is_some());
    }

    #[test]
    fn round_trip_equivalence(idx in 0usize..12, s in small_gl2()) {
        let (_, w) = samples().swap_remove(idx);
        let moved = w.apply_gl2(&s);
        let found = potentials_equivalent(&w, &moved).unwrap();
        let sigma = found.expect("same orbit");
        prop_assert!(w.project_c().apply_gl2(&sigma).ratio_to(&moved.project_c()).is_some());
    }
}
