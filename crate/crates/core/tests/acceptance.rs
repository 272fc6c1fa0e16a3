//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line and
//! the test fails if any criterion does.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use cubicy::classify::{classify, defining_relations, same_relations, Exceptional, Row};
use cubicy::comm::{bar, equivalent_glambda, g_lambda, quartic_invariants, tilde, BinForm};
use cubicy::curves::{classify_curve, CurveClass, CurveTag};
use cubicy::cy::{
    cy_check, is_standard, point_scheme, tau_of_point, BiForm, P1xP1, PointScheme, P1,
};
use cubicy::hdet::{
    check_automorphism, eigenvalue, is_hdet_exceptional, structured_candidates, sym4_potential,
};
use cubicy::ncpoly::{from_sp_coords, in_sym4};
use cubicy::oracle::{graded_dims, ideal_member, nilpotent_linear_form, series_division};
use cubicy::present::{to_dq, verify_centrality, verify_dq, DqPresentation};
use cubicy::{Field, FieldTower, Gl2, Letter, NcPoly, Rational, RootContext, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

#[derive(Default)]
struct Check {
    failures: Vec<String>,
}

impl Check {
    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, label: &str, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.ensure(t < limit, || {
            format!("{label} took {t:.2?} (limit {limit:?})")
        });
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(())
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn s(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn rel(terms: &[(i64, &str)]) -> NcPoly {
    let t: Vec<(Scalar, &str)> = terms.iter().map(|(c, w)| (sc(*c), *w)).collect();
    NcPoly::from_terms(3, &t)
}

fn word(w: &str) -> NcPoly {
    NcPoly::from_terms(w.len(), &[(Scalar::one(), w)])
}

fn linear(u: Scalar, v: Scalar) -> NcPoly {
    NcPoly::from_terms(1, &[(u, "x"), (v, "y")])
}

fn nonzero(rs: (NcPoly, NcPoly)) -> Vec<NcPoly> {
    [rs.0, rs.1].into_iter().filter(|r| !r.is_zero()).collect()
}

/// Letterwise substitution multiplied out word by word.
fn substitute(w: &NcPoly, g: &Gl2) -> NcPoly {
    let img_x = linear(g.a.clone(), g.c.clone());
    let img_y = linear(g.b.clone(), g.d.clone());
    let mut out = NcPoly::zero(w.degree());
    for (wd, c) in w.terms() {
        let mut prod = NcPoly::constant(c.clone());
        for l in wd.letters() {
            prod = prod.mul(if l == Letter::X { &img_x } else { &img_y });
        }
        out = out.add(&prod);
    }
    out
}

/// `λ` with `substitute(w, g) = λw`, read off coefficient by coefficient.
fn eigen_oracle(w: &NcPoly, g: &Gl2) -> Option<Scalar> {
    let image = substitute(w, g);
    let (wd, c) = w.terms().find(|(_, c)| !c.is_zero())?;
    let lambda = image.coeff(&wd).clone() / c.clone();
    (image == w.scale(&lambda)).then_some(lambda)
}

fn det(g: &Gl2) -> Scalar {
    g.a.clone() * g.d.clone() - g.b.clone() * g.c.clone()
}

fn primitive_cube_root(w: &Scalar) -> bool {
    (w.square() + w.clone() + Scalar::one()).is_zero() && !w.is_one()
}

/// `1/((1−t)²(1−t²))` through degree `n`, with the denominator multiplied
/// out here.
fn regular_signature(n: usize) -> Option<Vec<usize>> {
    let mul = |a: &[i64], b: &[i64]| {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let den = mul(&mul(&[1, -1], &[1, -1]), &[1, 0, -1]);
    let series = series_division(&[1], &den, n).ok()?;
    series
        .into_iter()
        .map(|c| c.to_integer().try_into().ok())
        .collect()
}

// ---------------------------------------------------------------------------
// 1. Table reproduction

#[derive(Clone, Copy, PartialEq, Debug)]
enum Tau {
    Unstated,
    Stabilizes,
    Interchanges,
    Circulates,
}

struct TableRow {
    id: &'static str,
    coords: [i64; 6],
    relations: [&'static [(i64, &'static str)]; 2],
    /// `None` for the whole of `P¹×P¹`.
    h: Option<&'static [(i64, usize, usize)]>,
    tag: CurveTag,
    tau: Tau,
}

const R1_H: &[(i64, usize, usize)] = &[(1, 0, 2), (-2, 1, 1), (1, 2, 0)];

fn table() -> Vec<TableRow> {
    vec![
        TableRow {
            id: "1",
            coords: [1, -2, 0, 0, 0, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (-2, "yxy")],
                &[(1, "yxx"), (1, "xxy"), (-2, "xyx")],
            ],
            h: Some(R1_H),
            tag: CurveTag::Double11,
            tau: Tau::Unstated,
        },
        TableRow {
            id: "2",
            coords: [1, -2, 0, 0, -2, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (-2, "yxy"), (-2, "xxx")],
                &[(1, "yxx"), (1, "xxy"), (-2, "xyx")],
            ],
            h: Some(&[(1, 0, 2), (-2, 1, 1), (1, 2, 0), (-1, 0, 0)]),
            tag: CurveTag::Two11Meet1,
            tau: Tau::Stabilizes,
        },
        TableRow {
            id: "3",
            coords: [1, -2, 1, 0, 0, 0],
            relations: [
                &[
                    (1, "xyy"),
                    (1, "yyx"),
                    (-2, "yxy"),
                    (1, "xxy"),
                    (1, "xyx"),
                    (1, "yxx"),
                ],
                &[(1, "yxx"), (1, "xxy"), (-2, "xyx"), (1, "xxx")],
            ],
            h: Some(&[
                (2, 0, 2),
                (-4, 1, 1),
                (2, 2, 0),
                (2, 1, 0),
                (2, 0, 1),
                (-1, 0, 0),
            ]),
            tag: CurveTag::IrreducibleCusp,
            tau: Tau::Unstated,
        },
        TableRow {
            id: "4.1",
            coords: [1, 0, 0, 0, 0, 0],
            relations: [&[(1, "xyy"), (1, "yyx")], &[(1, "yxx"), (1, "xxy")]],
            h: None,
            tag: CurveTag::WholeSurface,
            tau: Tau::Unstated,
        },
        TableRow {
            id: "4.2",
            coords: [1, 2, 0, 0, 0, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (2, "yxy")],
                &[(1, "yxx"), (1, "xxy"), (2, "xyx")],
            ],
            h: Some(&[(1, 0, 2), (2, 1, 1), (1, 2, 0)]),
            tag: CurveTag::Double11,
            tau: Tau::Unstated,
        },
        TableRow {
            id: "4.3",
            coords: [1, 1, 0, 0, 0, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (1, "yxy")],
                &[(1, "yxx"), (1, "xxy"), (1, "xyx")],
            ],
            h: Some(&[(1, 0, 2), (1, 2, 0), (1, 1, 1)]),
            tag: CurveTag::Two11Meet2,
            tau: Tau::Stabilizes,
        },
        TableRow {
            id: "5.1",
            coords: [1, 0, 0, 0, 4, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (4, "xxx")],
                &[(1, "yxx"), (1, "xxy")],
            ],
            h: Some(&[(1, 0, 0)]),
            tag: CurveTag::DoubleRulingPair,
            tau: Tau::Interchanges,
        },
        TableRow {
            id: "5.2",
            coords: [1, 2, 0, 0, 8, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (2, "yxy"), (8, "xxx")],
                &[(1, "yxx"), (1, "xxy"), (2, "xyx")],
            ],
            h: Some(&[(1, 0, 2), (2, 1, 1), (1, 2, 0), (-4, 0, 0)]),
            tag: CurveTag::Two11Meet1,
            tau: Tau::Interchanges,
        },
        TableRow {
            id: "5.3",
            coords: [1, 1, 0, 0, 1, 0],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (1, "yxy"), (1, "xxx")],
                &[(1, "yxx"), (1, "xxy"), (1, "xyx")],
            ],
            h: Some(&[(1, 0, 2), (1, 2, 0), (1, 1, 1), (-1, 0, 0)]),
            tag: CurveTag::IrreducibleBiflecnode,
            tau: Tau::Unstated,
        },
        TableRow {
            id: "6.1",
            coords: [0, 2, 0, 0, 1, 1],
            relations: [&[(2, "yxy"), (1, "xxx")], &[(2, "xyx"), (1, "yyy")]],
            h: Some(&[(1, 1, 1)]),
            tag: CurveTag::FourRulings,
            tau: Tau::Circulates,
        },
        TableRow {
            id: "6.2",
            coords: [1, 0, 0, 0, 1, 1],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (1, "xxx")],
                &[(1, "yxx"), (1, "xxy"), (1, "yyy")],
            ],
            h: Some(&[(1, 0, 0), (1, 2, 2), (1, 1, 1)]),
            tag: CurveTag::Two11Meet2,
            tau: Tau::Interchanges,
        },
        TableRow {
            id: "6.3",
            coords: [1, 3, 0, 0, 1, 1],
            relations: [
                &[(1, "xyy"), (1, "yyx"), (3, "yxy"), (1, "xxx")],
                &[(1, "yxx"), (1, "xxy"), (3, "xyx"), (1, "yyy")],
            ],
            h: Some(&[(3, 0, 2), (3, 2, 0), (8, 1, 1), (-1, 0, 0), (-1, 2, 2)]),
            tag: CurveTag::Smooth22,
            tau: Tau::Unstated,
        },
    ]
}

/// Points of `V(c)` for a form of bidegree at most `(1, 1)` in each factor.
fn points_on(c: &BiForm) -> Vec<P1xP1> {
    let grid: Vec<P1> = [(1, 0), (0, 1), (1, 1), (1, 2), (2, -1), (3, 1), (1, -3)]
        .iter()
        .map(|&(u, v)| P1::from_ints(u, v))
        .collect();
    let mut out = Vec::new();
    for p in &grid {
        let g = c.at_first(&p.x, &p.y);
        if g.is_zero() {
            out.extend(grid.iter().map(|q| (p.clone(), q.clone())));
        } else if g.degree() == 1 {
            out.push((p.clone(), P1::root_of(&g)));
        }
    }
    out
}

/// Where `τ` sends each component, read from sample points lying on exactly
/// one component.
fn tau_on_components(w: &NcPoly, class: &CurveClass) -> Result<Vec<usize>, String> {
    let comps: Vec<&BiForm> = class.components.iter().map(|c| &c.form).collect();
    let owners = |p: &P1xP1| -> Vec<usize> {
        (0..comps.len())
            .filter(|&k| on_curve(comps[k], p))
            .collect()
    };
    let mut map = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        let mut images = Vec::new();
        for p in points_on(c) {
            if owners(&p) != [k] {
                continue;
            }
            if let Ok(q) = tau_of_point(w, &p) {
                if let [j] = owners(&q)[..] {
                    images.push(j);
                }
            }
        }
        images.dedup();
        match images[..] {
            [j] => map.push(j),
            [] => return Err(format!("no usable points on component {k}")),
            _ => return Err(format!("component {k} is split by tau: {images:?}")),
        }
    }
    Ok(map)
}

fn tau_matches(map: &[usize], tau: Tau) -> bool {
    match tau {
        Tau::Unstated => true,
        Tau::Stabilizes => map.iter().enumerate().all(|(k, &j)| k == j),
        Tau::Interchanges => map == [1, 0],
        Tau::Circulates => {
            let mut k = 0;
            let mut len = 0;
            loop {
                k = map[k];
                len += 1;
                if k == 0 || len > map.len() {
                    break;
                }
            }
            map.len() == 4 && len == 4
        }
    }
}

fn criterion_table() -> Outcome {
    let mut ck = Check::default();
    let start = Instant::now();
    let mut tau_inputs = Vec::new();
    for row in table() {
        let w = pot(row.coords);
        let r = classify(&w);
        ck.ensure(r.table_row == Row::from_id(row.id), || {
            let got = r.placement().map_or("nothing".into(), |p| p.to_string());
            format!("({}) classified as {got}", row.id)
        });
        let (a, b) = defining_relations(&w);
        ck.ensure(
            a == rel(row.relations[0]) && b == rel(row.relations[1]),
            || format!("({}) relations {a}, {b}", row.id),
        );
        let scheme = point_scheme(&w);
        let ok = match (&scheme, row.h) {
            (Ok(PointScheme::WholeSurface), None) => true,
            (Ok(PointScheme::Curve(h)), Some(t)) => h.proportional(&bi22(t)),
            _ => false,
        };
        ck.ensure(ok, || format!("({}) point scheme {scheme:?}", row.id));
        let Ok(scheme) = scheme else { continue };
        match classify_curve(&scheme) {
            Ok(class) => {
                ck.ensure(class.tag == row.tag, || {
                    format!("({}) curve {} expected {}", row.id, class.tag, row.tag)
                });
                let reported = r.curve_class.as_ref().map(|c| c.tag);
                ck.ensure(reported == Some(row.tag), || {
                    format!("({}) report carries curve {reported:?}", row.id)
                });
                tau_inputs.push((row.id, row.tau, w, class));
            }
            Err(e) => ck.ensure(false, || format!("({}) classify_curve: {e}", row.id)),
        }
    }
    ck.within("table classification", start, Duration::from_secs(5));
    for (id, tau, w, class) in tau_inputs {
        if tau == Tau::Unstated {
            continue;
        }
        match tau_on_components(&w, &class) {
            Ok(map) => ck.ensure(tau_matches(&map, tau), || {
                format!("({id}) tau acts on components as {map:?}, expected {tau:?}")
            }),
            Err(e) => ck.ensure(false, || format!("({id}) {e}")),
        }
    }
    ck.finish()
}

// ---------------------------------------------------------------------------
// 2. Exceptional algebras

fn criterion_exceptional() -> Outcome {
    let mut ck = Check::default();
    let expected = |e: Exceptional| -> Vec<NcPoly> {
        match e {
            Exceptional::E1 => vec![word("xxx")],
            Exceptional::E2 => vec![word("xxx"), rel(&[(1, "xxy"), (1, "xyx"), (1, "yxx")])],
            Exceptional::E3 => vec![word("yxy"), word("xyx")],
            Exceptional::E4 => vec![rel(&[(1, "yxy"), (1, "xxx")]), word("xyx")],
            Exceptional::E5 => vec![word("xxx"), word("yyy")],
        }
    };
    let cases = [
        ([0, 0, 0, 0, 1, 0], Exceptional::E1),
        ([0, 0, 1, 0, 0, 0], Exceptional::E2),
        ([0, 1, 0, 0, 0, 0], Exceptional::E3),
        ([0, 1, 0, 0, 2, 0], Exceptional::E4),
        ([0, 0, 0, 0, 1, 1], Exceptional::E5),
        ([1, 1, 0, 0, 1, 1], Exceptional::E5),
        ([-1, -1, 0, 0, 1, 1], Exceptional::E5),
    ];
    let mut seen = Vec::new();
    for (c, e) in cases {
        let w = pot(c);
        let r = classify(&w);
        ck.ensure(r.exceptional_id == Some(e) && r.table_row.is_none(), || {
            format!("{c:?}: expected {e}, got {:?}", r.placement())
        });
        match &r.normal_form {
            Some(nf) => {
                let moved = r.cyclic_part.apply_gl2(&nf.sigma);
                let got = nonzero(defining_relations(&moved));
                ck.ensure(same_relations(&got, &expected(e)), || {
                    format!("{c:?}: normal form relations {got:?}")
                });
            }
            None => ck.ensure(false, || format!("{c:?}: no normal form")),
        }
        ck.ensure(!cy_check(&w).is_cy(), || format!("{c:?} passes cy_check"));

        let rels = nonzero(defining_relations(&w));
        match e {
            Exceptional::E1 | Exceptional::E2 | Exceptional::E5 => {
                match nilpotent_linear_form(&rels) {
                    Ok(Some(l)) => {
                        let zero = l.u.is_zero() && l.v.is_zero();
                        let cube_in = ideal_member(&l.cube(), &rels).unwrap_or(false);
                        ck.ensure(!zero && cube_in, || format!("{c:?}: bad witness {l}"));
                    }
                    other => ck.ensure(false, || format!("{c:?}: no nilpotent form ({other:?})")),
                }
            }
            Exceptional::E3 | Exceptional::E4 => {
                // x · yx = xyx vanishes while neither factor does
                let member = |p: &NcPoly| ideal_member(p, &rels).unwrap_or(true);
                ck.ensure(
                    !member(&word("x"))
                        && !member(&word("yx"))
                        && ideal_member(&word("xyx"), &rels) == Ok(true),
                    || format!("{c:?}: zero-divisor witness x * yx failed"),
                );
            }
        }
        seen.push(e);
    }
    for e in Exceptional::ALL {
        ck.ensure(seen.contains(&e), || format!("{e} not produced"));
    }

    // the disguised cubes before normalization
    let one = Scalar::one();
    let mut ctx = RootContext::new(FieldTower::rationals());
    let i = ctx.sqrt(&sc(-1)).expect("i");
    for (c, v) in [([1, 1, 0, 0, 1, 1], one.clone()), ([-1, -1, 0, 0, 1, 1], i)] {
        let got = nonzero(defining_relations(&pot(c)));
        let cubes = [
            linear(one.clone(), v.clone()).pow(3),
            linear(one.clone(), -v.clone()).pow(3),
        ];
        ck.ensure(same_relations(&got, &cubes), || {
            format!("{c:?}: relations are not the cubes of x ± {v}y")
        });
    }
    ck.finish()
}

// ---------------------------------------------------------------------------
// 3. Hilbert signature

fn criterion_hilbert() -> Outcome {
    let mut ck = Check::default();
    let start = Instant::now();
    let closed: Vec<usize> = (0..=8).map(|n| (n + 2) * (n + 2) / 4).collect();
    ck.ensure(closed == [1, 2, 4, 6, 9, 12, 16, 20, 25], || {
        format!("closed form {closed:?}")
    });
    ck.ensure(regular_signature(8).as_deref() == Some(&closed[..]), || {
        format!("series division gives {:?}", regular_signature(8))
    });
    for row in table() {
        let rels = vec![rel(row.relations[0]), rel(row.relations[1])];
        match graded_dims(&rels, 8) {
            Ok(d) => ck.ensure(d == closed, || format!("({}) dims {d:?}", row.id)),
            Err(e) => ck.ensure(false, || format!("({}) {e}", row.id)),
        }
    }
    for e in Exceptional::ALL {
        match graded_dims(&e.relations(), 5) {
            Ok(d) => {
                ck.ensure(d[..] != closed[..=5], || {
                    format!("{e} matches through degree 5")
                });
                if e == Exceptional::E5 {
                    ck.ensure(d[4] == 10, || format!("E5 dim 4 is {}", d[4]));
                }
            }
            Err(err) => ck.ensure(false, || format!("{e}: {err}")),
        }
    }
    ck.within("Hilbert signature", start, Duration::from_secs(10));
    ck.finish()
}

// ---------------------------------------------------------------------------
// 4. Equivalence of the g_λ

/// Every rational `λ′` with `σ(g_λ) = k·g_λ′` for `σ` in the diagonal,
/// antidiagonal and `(α β; −ξα ξβ)` families, `α = 1`, `β`, `δ`, `ξ` fourth
/// roots of unity, each also transposed.
fn reachable(l: &Scalar, units: &[Scalar]) -> Vec<Rational> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut family = Vec::new();
    for u in units {
        family.push(Gl2::new(one.clone(), zero.clone(), zero.clone(), u.clone()));
        family.push(Gl2::new(zero.clone(), one.clone(), u.clone(), zero.clone()));
        for xi in units {
            let g = Gl2::new(one.clone(), u.clone(), -xi.clone(), xi.clone() * u.clone());
            family.push(Gl2::new(g.a.clone(), g.c.clone(), g.b.clone(), g.d.clone()));
            family.push(g);
        }
    }
    let f = g_lambda(l);
    let mut out: Vec<Rational> = Vec::new();
    for g in family {
        // f(ax + cy, bx + dy), multiplied out commutatively
        let lx = BinForm::linear(g.a.clone(), g.c.clone());
        let ly = BinForm::linear(g.b.clone(), g.d.clone());
        let mut image = BinForm::zero(4);
        for (k, c) in f.coeffs().iter().enumerate() {
            image = image.add(&lx.pow(4 - k).mul(&ly.pow(k)).scale(c));
        }
        let c = image.coeffs();
        if c[1].is_zero() && c[3].is_zero() && !c[0].is_zero() && c[0] == c[4] {
            if let Some(r) = (c[2].clone() / c[0].clone()).to_rational() {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn criterion_glambda() -> Outcome {
    let mut ck = Check::default();
    let mut ctx = RootContext::new(FieldTower::rationals());
    let i = ctx.sqrt(&sc(-1)).expect("i");
    let units = [sc(1), sc(-1), i.clone(), -i];

    let expected: Vec<Scalar> = [(1, 1), (-1, 1), (10, 3), (-10, 3), (14, 1), (-14, 1)]
        .iter()
        .map(|&(n, d)| s(n, d))
        .collect();
    let mut grid: Vec<Scalar> = Vec::new();
    for n in -60..=60 {
        for d in 1..=6 {
            let l = s(n, d);
            if !grid.contains(&l) {
                grid.push(l);
            }
        }
    }
    let accepted: Vec<&Scalar> = grid
        .iter()
        .filter(|l| equivalent_glambda(&sc(1), l))
        .collect();
    ck.ensure(
        accepted.len() == expected.len() && expected.iter().all(|e| accepted.contains(&e)),
        || format!("lambda = 1 accepts {accepted:?}"),
    );
    let mut reach: Vec<Scalar> = reachable(&sc(1), &units)
        .into_iter()
        .map(Scalar::from)
        .collect();
    reach.sort_by_key(|r| r.to_string());
    ck.ensure(
        reach.len() == expected.len() && expected.iter().all(|e| reach.contains(e)),
        || format!("families reach {reach:?} from lambda = 1"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x6c61_6d62);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let l = s(rng.gen_range(-24..=24), rng.gen_range(1..=5));
        if l != sc(2) && l != sc(-2) {
            return l;
        }
    };
    for k in 0..20 {
        let l1 = draw(&mut rng);
        let orbit = reachable(&l1, &units);
        let l2 = if k % 2 == 0 && !orbit.is_empty() {
            Scalar::from(orbit[rng.gen_range(0..orbit.len())].clone())
        } else {
            draw(&mut rng)
        };
        let brute = l2.to_rational().is_some_and(|r| orbit.contains(&r));
        ck.ensure(equivalent_glambda(&l1, &l2) == brute, || {
            format!("{l1} vs {l2}: library {} brute force {brute}", !brute)
        });
    }
    ck.finish()
}

// ---------------------------------------------------------------------------
// 5. Homological determinant

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let n = loop {
        let n = rng.gen_range(-5..=5);
        if n != 0 {
            break n;
        }
    };
    s(n, rng.gen_range(1..=4))
}

fn random_gl2(rng: &mut ChaCha8Rng) -> Gl2 {
    loop {
        let g = Gl2::new(
            s(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            s(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            s(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            s(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
        );
        if !det(&g).is_zero() {
            return g;
        }
    }
}

fn hdet_on_rows(ck: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6864_6574);
    let rows = [
        ("1", [1, -2, 0, 0, 0, 0]),
        ("2", [1, -2, 0, 0, -2, 0]),
        ("5.1", [1, 0, 0, 0, 4, 0]),
        ("6.1", [0, 2, 0, 0, 1, 1]),
        ("6.2", [1, 0, 0, 0, 1, 1]),
    ];
    for (id, c) in rows {
        let w = pot(c);
        ck.ensure(!in_sym4(&w) && cy_check(&w).is_cy(), || {
            format!("({id}) is not a non-Sym4 CY row")
        });
        let mut ctx = RootContext::spanning(w.coeffs()).expect("rational");
        let extending: Vec<Gl2> = structured_candidates(&mut ctx)
            .expect("i")
            .into_iter()
            .filter(|g| eigen_oracle(&w, g).is_some())
            .collect();
        let mut found: Vec<Gl2> = Vec::new();
        for attempt in 0..400 {
            if found.len() == 10 {
                break;
            }
            let mut g = if id == "1" && attempt % 2 == 0 || extending.is_empty() {
                random_gl2(&mut rng)
            } else {
                let mut g = Gl2::identity();
                for _ in 0..rng.gen_range(1..=3) {
                    g = g.compose(&extending[rng.gen_range(0..extending.len())]);
                }
                g
            };
            g = g.scale(&random_rational(&mut rng));
            if eigen_oracle(&w, &g).is_some() && !found.contains(&g) {
                found.push(g);
            }
        }
        ck.ensure(found.len() == 10, || {
            format!("({id}) only {} extending samples", found.len())
        });
        for g in &found {
            let lambda = eigen_oracle(&w, g).expect("filtered");
            match check_automorphism(&w, g) {
                Ok(chk) => ck.ensure(
                    chk.extends && chk.hdet.as_ref() == Some(&lambda) && lambda == det(g).square(),
                    || {
                        format!(
                            "({id}) sigma {g}: hdet {:?}, oracle {lambda}, det^2 {}",
                            chk.hdet,
                            det(g).square()
                        )
                    },
                ),
                Err(e) => ck.ensure(false, || format!("({id}) sigma {g}: {e}")),
            }
        }
    }
}

fn hdet_root_minus_three(ck: &mut Check) {
    let mut ctx = RootContext::new(FieldTower::rationals());
    let r3 = ctx.sqrt(&sc(-3)).expect("sqrt(-3)");
    let i = ctx.sqrt(&sc(-1)).expect("i");
    let r3 = r3.lift(ctx.tower()).expect("same tower");
    let w = sym4_potential(&r3, &r3);
    for alpha in [sc(1), s(2, 3), sc(-5)] {
        for beta in [alpha.clone(), -alpha.clone()] {
            for xi in [i.clone(), -i.clone()] {
                // images as rows: x ↦ αx + βy, y ↦ −ξαx + ξβy
                let g = Gl2::new(
                    alpha.clone(),
                    -xi.clone() * alpha.clone(),
                    beta.clone(),
                    xi.clone() * beta.clone(),
                );
                let d2 = det(&g).square();
                ck.ensure(d2 == sc(-4) * alpha.pow(4), || {
                    format!("det^2 of {g} is {d2}")
                });
                let Some(lambda) = eigen_oracle(&w, &g) else {
                    ck.ensure(false, || format!("{g} does not extend"));
                    continue;
                };
                let omega = lambda.clone() / d2;
                ck.ensure(primitive_cube_root(&omega), || {
                    format!("{g}: ratio {omega}")
                });
                let lib = check_automorphism(&w, &g).ok().and_then(|c| c.hdet);
                ck.ensure(lib == Some(lambda.clone()), || {
                    format!("{g}: library hdet {lib:?}")
                });
            }
        }
    }
    match is_hdet_exceptional(&w) {
        Ok(Some(g)) => {
            let ok =
                eigen_oracle(&w, &g).is_some_and(|l| primitive_cube_root(&(l / det(&g).square())));
            ck.ensure(ok, || {
                format!("witness {g} does not give a cube root of unity")
            });
        }
        other => ck.ensure(false, || format!("is_hdet_exceptional: {other:?}")),
    }
}

fn hdet_elementary(ck: &mut Check) {
    let one = Scalar::one;
    let w_s = NcPoly::from_terms(
        4,
        &[
            (one(), "xyyx"),
            (-one(), "xxyy"),
            (one(), "yxxy"),
            (-one(), "yyxx"),
        ],
    );
    for a in [s(3, 2), sc(-5)] {
        let table = [
            ("swap", Gl2::swap(), sc(1)),
            ("diag", Gl2::diag(a.clone(), sc(1)), a.square()),
            (
                "upper shear",
                Gl2::new(sc(1), a.clone(), sc(0), sc(1)),
                sc(1),
            ),
            (
                "lower shear",
                Gl2::new(sc(1), sc(0), a.clone(), sc(1)),
                sc(1),
            ),
        ];
        for (name, g, want) in table {
            let lib = eigenvalue(&w_s, &g);
            let oracle = eigen_oracle(&w_s, &g);
            ck.ensure(
                lib.as_ref() == Some(&want) && oracle.as_ref() == Some(&want),
                || format!("{name} at {a}: library {lib:?}, substitution {oracle:?}, want {want}"),
            );
        }
    }
}

fn criterion_hdet() -> Outcome {
    let mut ck = Check::default();
    hdet_on_rows(&mut ck);
    hdet_root_minus_three(&mut ck);
    hdet_elementary(&mut ck);
    ck.finish()
}

// ---------------------------------------------------------------------------
// 6. Presentations

fn criterion_presentations() -> Outcome {
    let mut ck = Check::default();
    let mut rows: Vec<(String, NcPoly)> = table()
        .into_iter()
        .map(|r| (format!("({})", r.id), pot(r.coords)))
        .collect();
    rows.push(("(6.3) at (1, 2)".into(), pot([1, 2, 0, 0, 1, 1])));
    let mut checked = 0;
    for (id, w) in &rows {
        if in_sym4(w) {
            continue;
        }
        checked += 1;
        match to_dq(w) {
            Ok(p) => {
                ck.ensure(verify_dq(&p, w), || format!("{id}: verify_dq failed"));
                if !bar(w).is_zero() {
                    let bumped = DqPresentation::new(p.lambda.clone() + sc(1), p.f.clone());
                    ck.ensure(!verify_dq(&bumped, w), || {
                        format!("{id}: perturbed lambda passes")
                    });
                }
            }
            Err(e) => ck.ensure(false, || format!("{id}: {e}")),
        }
    }
    // (4.3) and (5.3) at α = β = 1 lie in Sym⁴
    ck.ensure(checked == 11, || format!("{checked} non-Sym4 samples"));

    let movers = [
        Gl2::identity(),
        Gl2::from_ints(2, 1, 1, 1),
        Gl2::from_ints(1, 3, 0, 1),
        Gl2::from_ints(0, 1, -1, 2),
        Gl2::diag(sc(3), s(1, 2)),
    ];
    let mut families: Vec<(String, NcPoly)> = Vec::new();
    for (k, g) in movers.iter().enumerate() {
        families.push((
            format!("a = b = 0, matrix {k}"),
            sym4_potential(&sc(0), &sc(0)).apply_gl2(g),
        ));
        families.push((
            format!("(a, b) = (1, 0), matrix {k}"),
            sym4_potential(&sc(1), &sc(0)).apply_gl2(g),
        ));
    }
    for a in [sc(2), sc(5), s(1, 2), sc(-2), sc(7)] {
        families.push((format!("a = b = {a}"), sym4_potential(&a, &a)));
    }
    for (label, w) in &families {
        let r = verify_centrality(w, 6);
        ck.ensure(matches!(r, Ok(true)), || {
            format!("{label}: centrality {r:?}")
        });
    }
    ck.finish()
}

// ---------------------------------------------------------------------------
// 7. Property suites

fn suite<S: Strategy>(
    ck: &mut Check,
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let result = TestRunner::new(config).run(&strategy, test);
    ck.ensure(result.is_ok(), || {
        format!("{name}: {}", result.unwrap_err())
    });
}

fn binform() -> impl Strategy<Value = BinForm<Rational>> {
    (1usize..=6).prop_flat_map(|d| prop::collection::vec(rational(), d + 1).prop_map(BinForm::new))
}

fn to_scalar(g: &Gl2<Rational>) -> Gl2 {
    Gl2::new(
        g.a.clone().into(),
        g.b.clone().into(),
        g.c.clone().into(),
        g.d.clone().into(),
    )
}

fn criterion_properties() -> Outcome {
    let mut ck = Check::default();
    let start = Instant::now();
    suite(&mut ck, "projectors", 200, (ncpoly(4), gl2()), |(w, g)| {
        for p in [NcPoly::project_c, NcPoly::project_s, NcPoly::project_a] {
            let once = p(&w);
            prop_assert_eq!(p(&once), once.clone());
            prop_assert_eq!(p(&w.apply_gl2(&g)), once.apply_gl2(&g));
        }
        Ok(())
    });
    suite(&mut ck, "bar/tilde inversion", 100, binform(), |f| {
        prop_assert_eq!(bar(&tilde(&f)), f.clone());
        let t = tilde(&f);
        prop_assert_eq!(tilde(&bar(&t)), t);
        Ok(())
    });
    suite(&mut ck, "tilde of a partial", 100, binform(), |f| {
        let m = Rational::from_integer((f.degree() as i64).into());
        prop_assert_eq!(tilde(&f.dx()), tilde(&f).dleft(Letter::X).scale(&m));
        prop_assert_eq!(tilde(&f.dy()), tilde(&f).dleft(Letter::Y).scale(&m));
        Ok(())
    });
    suite(
        &mut ck,
        "reconstruction identity",
        100,
        (1usize..=6).prop_flat_map(ncpoly),
        |w| {
            prop_assert!(w.reconstruct_identity_check());
            Ok(())
        },
    );
    for row in table() {
        let w = pot(row.coords);
        let cy = cy_check(&w).is_cy();
        suite(
            &mut ck,
            &format!("cy_check invariance ({})", row.id),
            50,
            gl2(),
            |g| {
                prop_assert_eq!(cy_check(&w.apply_gl2(&to_scalar(&g))).is_cy(), cy);
                Ok(())
            },
        );
    }
    suite(
        &mut ck,
        "quartic invariant covariance",
        100,
        (prop::collection::vec(rational(), 5), gl2()),
        |(c, g)| {
            let f = BinForm::new(c);
            let (i, j, _) = quartic_invariants(&f);
            let (i2, j2, _) = quartic_invariants(&f.apply_gl2(&g));
            let d = g.det();
            prop_assert_eq!(i2, i * d.pow(4));
            prop_assert_eq!(j2, j * d.pow(6));
            Ok(())
        },
    );
    suite(
        &mut ck,
        "emptiness oracle",
        50,
        prop::array::uniform6(rational()),
        |c| {
            let w = from_sp_coords(&c.map(Scalar::from));
            prop_assume!(is_standard(&w));
            prop_assert_eq!(!cy_check(&w).is_cy(), brute_force_nonempty(&w), "{}", w);
            Ok(())
        },
    );
    ck.within("property suites", start, Duration::from_secs(120));
    ck.finish()
}

// ---------------------------------------------------------------------------

fn run(f: fn() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        }
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        (
            "table rows, relations, point schemes and curve types",
            criterion_table,
        ),
        (
            "exceptional algebras at boundary parameters",
            criterion_exceptional,
        ),
        ("Hilbert signature", criterion_hilbert),
        ("g_lambda equivalence", criterion_glambda),
        ("homological determinant", criterion_hdet),
        (
            "deformation-quantization and Clifford presentations",
            criterion_presentations,
        ),
        ("property suites", criterion_properties),
    ];
    writeln!(std::io::stdout().lock()).unwrap();
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(*f);
        let t = start.elapsed();
        let line = match &outcome {
            Ok(()) => format!("PASS {}: {name} ({t:.2?})", k + 1),
            Err(e) => format!("FAIL {}: {name} ({t:.2?}): {e}", k + 1),
        };
        // straight to stdout so the lines show without --nocapture
        writeln!(std::io::stdout().lock(), "{line}").unwrap();
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
