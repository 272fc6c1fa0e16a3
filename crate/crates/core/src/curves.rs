//! Geometric types of bidegree-(2,2) divisors on `P¹×P¹`.
//!
//! A curve `h = A x₂² + B x₂y₂ + C y₂²` with no content in either factor is
//! read off the discriminant `D = B² − 4AC`, a binary quartic in `(x₁, y₁)`:
//! it vanishes identically for a double `(1,1)` curve, is a constant times a
//! square when `h` splits into two `(1,1)` curves, and otherwise its multiple
//! roots sit under the singular points (double root for a node, triple for a
//! cusp).

use std::fmt;

use num_traits::{One, Zero};

use crate::comm::{linear_root, multiple_part, split_quadratic, BinForm};
use crate::cy::{BiForm, P1xP1, PointScheme, P1};
use crate::error::{Error, Result};
use crate::ncpoly::Gl2;
use crate::scalars::{RootContext, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveTag {
    WholeSurface,
    Double11,
    Two11Meet1,
    Two11Meet2,
    IrreducibleCusp,
    IrreducibleBiflecnode,
    Smooth22,
    DoubleRulingPair,
    FourRulings,
    /// A configuration outside the nine types above.
    Other,
}

impl CurveTag {
    pub fn name(self) -> &'static str {
        match self {
            CurveTag::WholeSurface => "WholeSurface",
            CurveTag::Double11 => "Double11",
            CurveTag::Two11Meet1 => "Two11Meet1",
            CurveTag::Two11Meet2 => "Two11Meet2",
            CurveTag::IrreducibleCusp => "IrreducibleCusp",
            CurveTag::IrreducibleBiflecnode => "IrreducibleBiflecnode",
            CurveTag::Smooth22 => "Smooth22",
            CurveTag::DoubleRulingPair => "DoubleRulingPair",
            CurveTag::FourRulings => "FourRulings",
            CurveTag::Other => "Other",
        }
    }

    /// Short geometric description, e.g. `E = 2(1,1)`.
    pub fn description(self) -> &'static str {
        match self {
            CurveTag::WholeSurface => "E = P1 x P1",
            CurveTag::Double11 => "E = 2(1,1)",
            CurveTag::Two11Meet1 => "E = (1,1)+(1,1) meeting at 1 pt",
            CurveTag::Two11Meet2 => "E = (1,1)+(1,1) meeting at 2 pts",
            CurveTag::IrreducibleCusp => "E is an irreducible curve with a cusp",
            CurveTag::IrreducibleBiflecnode => "E is an irreducible curve with a biflecnode",
            CurveTag::Smooth22 => "E is a smooth curve",
            CurveTag::DoubleRulingPair => "E = 2(1,0)+2(0,1)",
            CurveTag::FourRulings => "E = (1,0)+(1,0)+(0,1)+(0,1)",
            CurveTag::Other => "E is of another type",
        }
    }
}

impl fmt::Display for CurveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub form: BiForm,
    pub multiplicity: usize,
}

/// A singular point with the rank of the quadratic part of the local equation:
/// 2 for a node, 1 for a cusp or tangency.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: P1xP1,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct CurveClass {
    pub tag: CurveTag,
    pub components: Vec<Component>,
    pub singular_points: Vec<SingularPoint>,
}

#[derive(Clone, Debug)]
pub enum Factorization {
    Factors(Vec<Component>),
    Irreducible,
}

/// The points where two `(1,1)` curves meet. A tangential meeting counts once.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub count: usize,
    pub points: Vec<P1xP1>,
}

fn ruling_first(l: &BinForm) -> BiForm {
    BiForm::new(1, 0, l.coeffs().to_vec())
}

fn ruling_second(l: &BinForm) -> BiForm {
    BiForm::new(0, 1, l.coeffs().to_vec())
}

/// Distinct linear factors of a nonzero form of degree at most 2, with
/// multiplicities.
fn linear_factors(f: &BinForm, ctx: &mut RootContext) -> Result<Vec<(BinForm, usize)>> {
    match f.degree() {
        0 => Ok(vec![]),
        1 => Ok(vec![(f.normalized(), 1)]),
        2 => {
            let m = multiple_part(f);
            if m.degree() == 1 {
                Ok(vec![(m, 2)])
            } else {
                let (l1, l2) = split_quadratic(f, ctx)?;
                Ok(vec![(l1.normalized(), 1), (l2.normalized(), 1)])
            }
        }
        d => Err(Error::PreconditionViolated(format!(
            "expected a form of degree at most 2, found {d}"
        ))),
    }
}

/// Distinct roots of a nonzero form whose radical has degree at most 2.
fn distinct_roots(f: &BinForm, ctx: &mut RootContext) -> Result<Vec<P1>> {
    if f.degree() == 0 {
        return Ok(vec![]);
    }
    let radical = f
        .div_exact(&multiple_part(f))
        .expect("multiple part divides");
    if radical.degree() > 2 {
        return Err(Error::ExtensionUnavailable(format!(
            "roots of {radical} need more than a square root"
        )));
    }
    Ok(linear_factors(&radical, ctx)?
        .iter()
        .map(|(l, _)| P1::root_of(l))
        .collect())
}

/// `q` and `c` with `d = c·q²`, when `d` is a constant times a square.
fn square_up_to_scalar(d: &BinForm) -> Option<(Scalar, BinForm)> {
    let m = multiple_part(d);
    let q = match m.degree() {
        2 => m,
        3 => {
            let l = linear_root(&m);
            l.mul(&l)
        }
        _ => return None,
    };
    let k = d.div_exact(&q.mul(&q))?;
    Some((k.coeff(0).clone(), q))
}

fn discriminant(h: &BiForm) -> BinForm {
    let cs = h.first_coeffs();
    let (a, b, c) = (&cs[0], &cs[1], &cs[2]);
    b.mul(b).sub(&a.mul(c).scale(&Scalar::from_int(4)))
}

/// Removes the content in the first variables from a `(2,1)` form.
fn primitive_11(f: &BiForm) -> BiForm {
    let c = f.content_first();
    f.div_first(&c).expect("content divides").normalized()
}

/// Factors a nonzero `(2,2)` form into rulings and `(1,1)` curves.
pub fn factor_22(h: &BiForm) -> Result<Factorization> {
    assert_eq!(h.bidegree(), (2, 2));
    assert!(!h.is_zero(), "the zero form has no factorization");
    let mut ctx = RootContext::spanning(h.coeffs())?;
    let c1 = h.content_first();
    let c2 = h.content_second();
    let mut out = Vec::new();
    for (l, m) in linear_factors(&c1, &mut ctx)? {
        out.push(Component {
            form: ruling_first(&l),
            multiplicity: m,
        });
    }
    for (l, m) in linear_factors(&c2, &mut ctx)? {
        out.push(Component {
            form: ruling_second(&l),
            multiplicity: m,
        });
    }
    let mut r = h.clone();
    if c1.degree() > 0 {
        r = r.div_first(&c1).expect("content divides");
    }
    if c2.degree() > 0 {
        r = r.div_second(&c2).expect("content divides");
    }
    match r.bidegree() {
        (0, 0) => {}
        (2, 2) => {
            let d = discriminant(&r);
            let cs = r.first_coeffs();
            let (a, b) = (&cs[0], &cs[1]);
            let two_a = a.scale(&Scalar::from_int(2));
            if d.is_zero() {
                let f = BiForm::from_first_coeffs(&[two_a, b.clone()]);
                out.push(Component {
                    form: primitive_11(&f),
                    multiplicity: 2,
                });
            } else if let Some((k, q)) = square_up_to_scalar(&d) {
                let root = ctx
                    .sqrt(&k)
                    .map_err(|e| e.into_extension("splitting into (1,1) curves"))?;
                let sq = q.scale(&root);
                for f in [b.add(&sq), b.sub(&sq)] {
                    let f = BiForm::from_first_coeffs(&[two_a.clone(), f]);
                    out.push(Component {
                        form: primitive_11(&f),
                        multiplicity: 1,
                    });
                }
            } else {
                if out.is_empty() {
                    return Ok(Factorization::Irreducible);
                }
                out.push(Component {
                    form: r.normalized(),
                    multiplicity: 1,
                });
            }
        }
        _ => {
            if out.is_empty() {
                return Ok(Factorization::Irreducible);
            }
            out.push(Component {
                form: r.normalized(),
                multiplicity: 1,
            });
        }
    }
    Ok(Factorization::Factors(out))
}

/// The meeting points of two `(1,1)` curves.
pub fn intersect_11(c1: &BiForm, c2: &BiForm) -> Result<Intersection> {
    assert_eq!(c1.bidegree(), (1, 1));
    assert_eq!(c2.bidegree(), (1, 1));
    if c1.proportional(c2) {
        return Err(Error::PreconditionViolated("the curves coincide".into()));
    }
    // c = P x₂ + R y₂; both vanish over the roots of P₁R₂ − P₂R₁
    let (f1, f2) = (c1.first_coeffs(), c2.first_coeffs());
    let det = f1[0].mul(&f2[1]).sub(&f2[0].mul(&f1[1]));
    if det.is_zero() {
        return Err(Error::PreconditionViolated(
            "the curves share a ruling".into(),
        ));
    }
    let count = if multiple_part(&det).degree() == 1 {
        1
    } else {
        2
    };
    let mut ctx = RootContext::spanning(c1.coeffs().iter().chain(c2.coeffs()))?;
    let mut points = Vec::new();
    for u in distinct_roots(&det, &mut ctx)? {
        let g1 = c1.at_first(&u.x, &u.y);
        let g = if g1.is_zero() {
            c2.at_first(&u.x, &u.y)
        } else {
            g1
        };
        if g.is_zero() {
            return Err(Error::PreconditionViolated(
                "the curves share a ruling".into(),
            ));
        }
        points.push((u, P1::root_of(&g)));
    }
    Ok(Intersection { count, points })
}

fn complement_of(p: &P1) -> (Scalar, Scalar) {
    if p.x.is_zero() {
        (Scalar::one(), Scalar::zero())
    } else {
        (Scalar::zero(), Scalar::one())
    }
}

/// Rank of the quadratic part of `h` at `p`, or `None` when `p` is not a
/// singular point of `h`.
pub fn local_rank(h: &BiForm, p: &P1xP1) -> Option<usize> {
    assert_eq!(h.bidegree(), (2, 2));
    let chart = |q: &P1| {
        let (cx, cy) = complement_of(q);
        Gl2::new(q.x.clone(), q.y.clone(), cx, cy)
    };
    // g(s, t) = h(u + s u', v + t v')
    let g = h.apply(&chart(&p.0), &chart(&p.1));
    if !(g.coeff(0, 0).is_zero() && g.coeff(1, 0).is_zero() && g.coeff(0, 1).is_zero()) {
        return None;
    }
    let (a, b, c) = (g.coeff(2, 0), g.coeff(1, 1), g.coeff(0, 2));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        Some(0)
    } else if b.clone() * b.clone() == Scalar::from_int(4) * a.clone() * c.clone() {
        Some(1)
    } else {
        Some(2)
    }
}

/// Singular points of a `(2,2)` curve with no content in either factor.
pub fn singular_points_22(h: &BiForm) -> Result<Vec<SingularPoint>> {
    assert_eq!(h.bidegree(), (2, 2));
    if h.content_first().degree() > 0 || h.content_second().degree() > 0 {
        return Err(Error::PreconditionViolated(
            "the curve contains a ruling".into(),
        ));
    }
    let d = discriminant(h);
    if d.is_zero() {
        return Err(Error::PreconditionViolated(
            "the curve is a double curve".into(),
        ));
    }
    let mut ctx = RootContext::spanning(h.coeffs())?;
    let mut out = Vec::new();
    for u in distinct_roots(&multiple_part(&d), &mut ctx)? {
        let fibre = h.at_first(&u.x, &u.y);
        let m = multiple_part(&fibre);
        if m.degree() != 1 {
            continue;
        }
        let p = (u, P1::root_of(&m));
        if let Some(rank) = local_rank(h, &p) {
            out.push(SingularPoint { point: p, rank });
        }
    }
    Ok(out)
}

fn rulings_meet(components: &[Component]) -> Vec<SingularPoint> {
    let (firsts, seconds): (Vec<&Component>, Vec<&Component>) =
        components.iter().partition(|c| c.form.bidegree() == (1, 0));
    let root = |f: &BiForm| P1::root_of(&BinForm::new(f.coeffs().to_vec()));
    let mut out = Vec::new();
    for a in &firsts {
        for b in &seconds {
            out.push(SingularPoint {
                point: (root(&a.form), root(&b.form)),
                rank: 2,
            });
        }
    }
    out
}

/// Sorts a point scheme into one of the geometric types.
pub fn classify_curve(e: &PointScheme) -> Result<CurveClass> {
    match e {
        PointScheme::WholeSurface => Ok(CurveClass {
            tag: CurveTag::WholeSurface,
            components: vec![],
            singular_points: vec![],
        }),
        PointScheme::Curve(h) => classify_form(h),
    }
}

pub fn classify_form(h: &BiForm) -> Result<CurveClass> {
    let components = match factor_22(h)? {
        Factorization::Irreducible => {
            let singular_points = singular_points_22(h)?;
            let tag = match singular_points.as_slice() {
                [] => CurveTag::Smooth22,
                [p] if p.rank == 2 => CurveTag::IrreducibleBiflecnode,
                [p] if p.rank == 1 => CurveTag::IrreducibleCusp,
                _ => CurveTag::Other,
            };
            return Ok(CurveClass {
                tag,
                components: vec![Component {
                    form: h.normalized(),
                    multiplicity: 1,
                }],
                singular_points,
            });
        }
        Factorization::Factors(cs) => cs,
    };
    let shape: Vec<((usize, usize), usize)> = components
        .iter()
        .map(|c| (c.form.bidegree(), c.multiplicity))
        .collect();
    let count = |bd: (usize, usize), m: usize| shape.iter().filter(|s| **s == (bd, m)).count();
    let (tag, singular_points) = if shape == [((1, 1), 2)] {
        (CurveTag::Double11, vec![])
    } else if count((1, 1), 1) == 2 && shape.len() == 2 {
        let meet = intersect_11(&components[0].form, &components[1].form)?;
        let tag = if meet.count == 1 {
            CurveTag::Two11Meet1
        } else {
            CurveTag::Two11Meet2
        };
        let rank = if meet.count == 1 { 1 } else { 2 };
        let pts = meet
            .points
            .into_iter()
            .map(|point| SingularPoint { point, rank })
            .collect();
        (tag, pts)
    } else if count((1, 0), 2) == 1 && count((0, 1), 2) == 1 && shape.len() == 2 {
        (CurveTag::DoubleRulingPair, vec![])
    } else if count((1, 0), 1) == 2 && count((0, 1), 1) == 2 && shape.len() == 4 {
        (CurveTag::FourRulings, rulings_meet(&components))
    } else {
        (CurveTag::Other, vec![])
    };
    Ok(CurveClass {
        tag,
        components,
        singular_points,
    })
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag.description())
    }
}
