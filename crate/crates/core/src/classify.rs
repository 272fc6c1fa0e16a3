//! From a degree-4 potential to its place in the classification: a table row
//! with parameters for Calabi-Yau potentials, or one of five exceptional
//! algebras otherwise.
//!
//! The row is read from the potential after moving `w̄` to its normal form
//! (the primary route) and, independently, from the quartic tag, the
//! Calabi-Yau verdict and the curve type of the point scheme. The second
//! route needs no field extensions and stands in when the first one cannot
//! reach the required square roots.

use std::fmt;

use num_traits::{One, Zero};

use crate::comm::{bar, classify_quartic, normalize_quartic_in, QuarticClass, QuarticTag};
use crate::curves::{classify_curve, CurveClass, CurveTag};
use crate::cy::{cy_check, point_scheme, CyVerdict, PointScheme};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::ncpoly::{basis, from_sp_coords, sp_coords, Gl2, Letter, NcPoly};
use crate::scalars::{RootContext, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Row {
    R1,
    R2,
    R3,
    R4_1,
    R4_2,
    R4_3,
    R5_1,
    R5_2,
    R5_3,
    R6_1,
    R6_2,
    R6_3,
}

impl Row {
    pub const ALL: [Row; 12] = [
        Row::R1,
        Row::R2,
        Row::R3,
        Row::R4_1,
        Row::R4_2,
        Row::R4_3,
        Row::R5_1,
        Row::R5_2,
        Row::R5_3,
        Row::R6_1,
        Row::R6_2,
        Row::R6_3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Row::R1 => "1",
            Row::R2 => "2",
            Row::R3 => "3",
            Row::R4_1 => "4.1",
            Row::R4_2 => "4.2",
            Row::R4_3 => "4.3",
            Row::R5_1 => "5.1",
            Row::R5_2 => "5.2",
            Row::R5_3 => "5.3",
            Row::R6_1 => "6.1",
            Row::R6_2 => "6.2",
            Row::R6_3 => "6.3",
        }
    }

    pub fn from_id(s: &str) -> Option<Row> {
        Row::ALL.into_iter().find(|r| r.id() == s)
    }

    /// The case `1..=6` of `w̄`.
    pub fn family(self) -> u8 {
        self.id().as_bytes()[0] - b'0'
    }

    pub fn curve_tag(self) -> CurveTag {
        match self {
            Row::R1 | Row::R4_2 => CurveTag::Double11,
            Row::R2 | Row::R5_2 => CurveTag::Two11Meet1,
            Row::R3 => CurveTag::IrreducibleCusp,
            Row::R4_1 => CurveTag::WholeSurface,
            Row::R4_3 | Row::R6_2 => CurveTag::Two11Meet2,
            Row::R5_1 => CurveTag::DoubleRulingPair,
            Row::R5_3 => CurveTag::IrreducibleBiflecnode,
            Row::R6_1 => CurveTag::FourRulings,
            Row::R6_3 => CurveTag::Smooth22,
        }
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The five algebras `J(w)` that are not Calabi-Yau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exceptional {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl Exceptional {
    pub const ALL: [Exceptional; 5] = [
        Exceptional::E1,
        Exceptional::E2,
        Exceptional::E3,
        Exceptional::E4,
        Exceptional::E5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Exceptional::E1 => "E1",
            Exceptional::E2 => "E2",
            Exceptional::E3 => "E3",
            Exceptional::E4 => "E4",
            Exceptional::E5 => "E5",
        }
    }

    pub fn from_id(s: &str) -> Option<Exceptional> {
        Exceptional::ALL.into_iter().find(|e| e.id() == s)
    }

    pub fn presentation(self) -> &'static str {
        match self {
            Exceptional::E1 => "k<x,y>/(x^3)",
            Exceptional::E2 => "k<x,y>/(x^3, x^2*y + x*y*x + y*x^2)",
            Exceptional::E3 => "k<x,y>/(y*x*y, x*y*x)",
            Exceptional::E4 => "k<x,y>/(y*x*y + x^3, x*y*x)",
            Exceptional::E5 => "k<x,y>/(x^3, y^3)",
        }
    }

    /// A potential whose relations are exactly the presentation's.
    pub fn potential(self) -> NcPoly {
        match self {
            Exceptional::E1 => basis(5),
            Exceptional::E2 => basis(3),
            Exceptional::E3 => basis(2),
            Exceptional::E4 => basis(2).add(&basis(5)),
            Exceptional::E5 => basis(5).add(&basis(6)),
        }
    }

    /// The nonzero defining relations.
    pub fn relations(self) -> Vec<NcPoly> {
        let t = |s: &[(i64, &str)]| {
            let v: Vec<(Scalar, &str)> =
                s.iter().map(|(c, w)| (Scalar::from_int(*c), *w)).collect();
            NcPoly::from_terms(3, &v)
        };
        match self {
            Exceptional::E1 => vec![t(&[(1, "xxx")])],
            Exceptional::E2 => vec![t(&[(1, "xxx")]), t(&[(1, "xxy"), (1, "xyx"), (1, "yxx")])],
            Exceptional::E3 => vec![t(&[(1, "yxy")]), t(&[(1, "xyx")])],
            Exceptional::E4 => vec![t(&[(1, "yxy"), (1, "xxx")]), t(&[(1, "xyx")])],
            Exceptional::E5 => vec![t(&[(1, "xxx")]), t(&[(1, "yyy")])],
        }
    }
}

impl fmt::Display for Exceptional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    None,
    /// Coordinates on `w₁`, `w₂` with the row's normalization.
    AlphaBeta(Scalar, Scalar),
    Gamma(Scalar),
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::None => Ok(()),
            Params::AlphaBeta(a, b) => write!(f, "alpha = {a}, beta = {b}"),
            Params::Gamma(g) => write!(f, "gamma = {g}"),
        }
    }
}

/// `σ(c(w)) = scale · potential`, with `potential` in the shape displayed for
/// its row or exceptional algebra.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub sigma: Gl2,
    pub scale: Scalar,
    pub potential: NcPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Row(Row),
    Exceptional(Exceptional),
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Row(r) => write!(f, "row {r}"),
            Placement::Exceptional(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub placement: Placement,
    pub params: Params,
    pub form: NormalForm,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub cyclic_part: NcPoly,
    pub sp_coords: [Scalar; 6],
    pub quartic_class: QuarticClass,
    pub cy: CyVerdict,
    pub table_row: Option<Row>,
    pub parameters: Params,
    pub exceptional_id: Option<Exceptional>,
    pub point_scheme: Option<PointScheme>,
    pub curve_class: Option<CurveClass>,
    pub normal_form: Option<NormalForm>,
    /// Partial results and disagreements, in plain words.
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn is_degenerate(&self) -> bool {
        self.cyclic_part.is_zero()
    }

    pub fn placement(&self) -> Option<Placement> {
        self.table_row
            .map(Placement::Row)
            .or(self.exceptional_id.map(Placement::Exceptional))
    }

    /// The case `1..=6` of `w̄`, present even when the row is not.
    pub fn family(&self) -> Option<u8> {
        (!self.is_degenerate()).then(|| self.quartic_class.tag.case())
    }
}

/// `(∂_x c(w), ∂_y c(w))`.
pub fn defining_relations(w: &NcPoly) -> (NcPoly, NcPoly) {
    let c = w.project_c();
    (c.dleft(Letter::X), c.dleft(Letter::Y))
}

/// Whether two lists of degree-3 relations span the same subspace.
pub fn same_relations(a: &[NcPoly], b: &[NcPoly]) -> bool {
    let span = |rs: &[NcPoly]| {
        let rows: Vec<Vec<Scalar>> = rs.iter().map(|r| r.coeffs().to_vec()).collect();
        Echelon::from_rows(8, &rows)
    };
    span(a).same_span(&span(b))
}

fn sc(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn sp_pot(c: [Scalar; 6]) -> NcPoly {
    from_sp_coords(&c)
}

fn row_pot(a: Scalar, b: Scalar, e5: i64, e6: i64) -> NcPoly {
    sp_pot([a, b, Scalar::zero(), Scalar::zero(), sc(e5), sc(e6)])
}

/// `(α, β)` of a potential whose `w̄` is `x⁴ + y⁴ + λx²y²` up to scale.
fn case6_coords(c: &NcPoly) -> Option<(Scalar, Scalar)> {
    let s = sp_coords(c)?;
    if !(s[2].is_zero() && s[3].is_zero()) || s[4].is_zero() || s[4] != s[5] {
        return None;
    }
    let k = s[4].inv()?;
    Some((s[0].clone() * k.clone(), s[1].clone() * k))
}

/// `x ↦ x − y`, `y ↦ x + y` and its variants, composed with `y ↦ iy` for the
/// branches with the opposite sign.
fn fold_candidates(ctx: &mut RootContext) -> Result<Vec<Gl2>> {
    let i = ctx.sqrt(&sc(-1))?;
    let d = Gl2::diag(Scalar::one(), i);
    let s1: Gl2 = Gl2::from_ints(1, 1, -1, 1);
    let s2: Gl2 = Gl2::from_ints(1, 1, 1, -1);
    Ok(vec![s1.clone(), s2.clone(), s1.compose(&d), s2.compose(&d)])
}

/// Moves `c(w)` to its normal shape and places it.
pub fn normalize_potential(c: &NcPoly, ctx: &mut RootContext) -> Result<Normalized> {
    if c.is_zero() {
        return Err(Error::PreconditionViolated(
            "the cyclic part is zero".into(),
        ));
    }
    for s in c.coeffs() {
        ctx.absorb(s)?;
    }
    let nq = normalize_quartic_in(&bar(c), ctx)?;
    let c1 = c
        .apply_gl2(&nq.sigma)
        .scale(&nq.scale.inv().expect("nonzero scale"));
    let sp = sp_coords(&c1).expect("cyclic");
    let (a, b) = (sp[0].clone(), sp[1].clone());
    let mut sigma = nq.sigma.clone();
    let mut params = Params::None;
    let (placement, potential) = match nq.tag {
        QuarticTag::Zero => (Placement::Row(Row::R1), row_pot(sc(1), sc(-2), 0, 0)),
        QuarticTag::Quadruple => {
            if a.is_zero() {
                (Placement::Exceptional(Exceptional::E1), basis(5))
            } else {
                // y ↦ t y scales α by t²; α = −1/2 is the displayed form
                let t = ctx
                    .sqrt(&(-(sc(2) * a).inv().expect("nonzero")))
                    .map_err(|e| e.into_extension("normalizing alpha"))?;
                sigma = Gl2::diag(Scalar::one(), t).compose(&sigma);
                (Placement::Row(Row::R2), row_pot(sc(1), sc(-2), -2, 0))
            }
        }
        QuarticTag::TriplePlusOne => {
            // w̄ = x³y means the w₃ coordinate is 1/4
            let a4 = sc(4) * a;
            if a4.is_zero() {
                (Placement::Exceptional(Exceptional::E2), basis(3))
            } else {
                sigma = Gl2::diag(Scalar::one(), a4.inv().expect("nonzero")).compose(&sigma);
                let p = sp_pot([sc(1), sc(-2), sc(1), sc(0), sc(0), sc(0)]);
                (Placement::Row(Row::R3), p)
            }
        }
        QuarticTag::DoubleDouble => {
            if a.is_zero() {
                (Placement::Exceptional(Exceptional::E3), basis(2))
            } else if b.is_zero() {
                (Placement::Row(Row::R4_1), basis(1))
            } else if b == sc(2) * a.clone() {
                (Placement::Row(Row::R4_2), row_pot(sc(1), sc(2), 0, 0))
            } else {
                params = Params::AlphaBeta(a.clone(), b.clone());
                (Placement::Row(Row::R4_3), row_pot(a, b, 0, 0))
            }
        }
        QuarticTag::DoublePlusTwo => {
            if a.is_zero() {
                // (1/2) w₂ + w₅; y ↦ √2 y gives w₂ + w₅
                let t = ctx
                    .sqrt(&sc(2))
                    .map_err(|e| e.into_extension("rescaling y"))?;
                sigma = Gl2::diag(Scalar::one(), t).compose(&sigma);
                (
                    Placement::Exceptional(Exceptional::E4),
                    basis(2).add(&basis(5)),
                )
            } else if b.is_zero() {
                (Placement::Row(Row::R5_1), row_pot(sc(1), sc(0), 4, 0))
            } else if b == sc(2) * a.clone() {
                (Placement::Row(Row::R5_2), row_pot(sc(1), sc(2), 8, 0))
            } else {
                params = Params::AlphaBeta(a.clone(), b.clone());
                (Placement::Row(Row::R5_3), row_pot(a, b, 1, 0))
            }
        }
        QuarticTag::FourDistinct => {
            let one = Scalar::one();
            let pm_one = |s: &Scalar| s.square() == one;
            if a.is_zero() && b.is_zero() {
                (
                    Placement::Exceptional(Exceptional::E5),
                    basis(5).add(&basis(6)),
                )
            } else if pm_one(&a) && a == b {
                // c = ((x + r y)^⊗4 + (x − r y)^⊗4) / 2 with r = 1 or i
                let r = if a == one {
                    one.clone()
                } else {
                    ctx.sqrt(&sc(-1))?
                };
                let s: Gl2 = Gl2::new(one.clone(), one.clone(), r.clone(), -r)
                    .inverse()
                    .expect("independent forms");
                sigma = s.compose(&sigma);
                (
                    Placement::Exceptional(Exceptional::E5),
                    basis(5).add(&basis(6)),
                )
            } else if a.is_zero() {
                params = Params::Gamma(b.clone());
                (Placement::Row(Row::R6_1), row_pot(sc(0), b, 1, 1))
            } else if b.is_zero() {
                params = Params::Gamma(a.inv().expect("nonzero"));
                (Placement::Row(Row::R6_2), row_pot(a, sc(0), 1, 1))
            } else if pm_one(&b) || pm_one(&(sc(2) * a.clone() - b.clone())) {
                let target = if pm_one(&b) { Row::R6_1 } else { Row::R6_2 };
                let mut found = None;
                for f in fold_candidates(ctx)? {
                    let Some((a3, b3)) = case6_coords(&c1.apply_gl2(&f)) else {
                        continue;
                    };
                    if target == Row::R6_1 && a3.is_zero() {
                        found = Some((f, Params::Gamma(b3.clone()), row_pot(a3, b3, 1, 1)));
                    } else if target == Row::R6_2 && b3.is_zero() && !a3.is_zero() {
                        let g = a3.inv().expect("nonzero");
                        found = Some((f, Params::Gamma(g), row_pot(a3, b3, 1, 1)));
                    }
                    if found.is_some() {
                        break;
                    }
                }
                let (f, p, pot) = found.ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "no folding substitution reached row {target}"
                    ))
                })?;
                sigma = f.compose(&sigma);
                params = p;
                (Placement::Row(target), pot)
            } else {
                params = Params::AlphaBeta(a.clone(), b.clone());
                (Placement::Row(Row::R6_3), row_pot(a, b, 1, 1))
            }
        }
    };
    let scale = c
        .apply_gl2(&sigma)
        .ratio_to(&potential)
        .ok_or_else(|| Error::PreconditionViolated(format!("normalization missed {potential}")))?;
    Ok(Normalized {
        placement,
        params,
        form: NormalForm {
            sigma,
            scale,
            potential,
        },
    })
}

/// The placement read off the quartic tag, the Calabi-Yau verdict and the
/// curve type alone.
pub fn placement_from_geometry(
    tag: QuarticTag,
    cy: bool,
    curve: Option<CurveTag>,
) -> Option<Placement> {
    use CurveTag as C;
    use Placement::{Exceptional as X, Row as R};
    let p = match (tag, cy, curve) {
        (QuarticTag::Zero, true, _) => R(Row::R1),
        (QuarticTag::Quadruple, false, _) => X(Exceptional::E1),
        (QuarticTag::Quadruple, true, _) => R(Row::R2),
        (QuarticTag::TriplePlusOne, false, _) => X(Exceptional::E2),
        (QuarticTag::TriplePlusOne, true, _) => R(Row::R3),
        (QuarticTag::DoubleDouble, false, _) => X(Exceptional::E3),
        (QuarticTag::DoubleDouble, true, Some(C::WholeSurface)) => R(Row::R4_1),
        (QuarticTag::DoubleDouble, true, Some(C::Double11)) => R(Row::R4_2),
        (QuarticTag::DoubleDouble, true, Some(C::Two11Meet2)) => R(Row::R4_3),
        (QuarticTag::DoublePlusTwo, false, _) => X(Exceptional::E4),
        (QuarticTag::DoublePlusTwo, true, Some(C::DoubleRulingPair)) => R(Row::R5_1),
        (QuarticTag::DoublePlusTwo, true, Some(C::Two11Meet1)) => R(Row::R5_2),
        (QuarticTag::DoublePlusTwo, true, Some(C::IrreducibleBiflecnode)) => R(Row::R5_3),
        (QuarticTag::FourDistinct, false, _) => X(Exceptional::E5),
        (QuarticTag::FourDistinct, true, Some(C::FourRulings)) => R(Row::R6_1),
        (QuarticTag::FourDistinct, true, Some(C::Two11Meet2)) => R(Row::R6_2),
        (QuarticTag::FourDistinct, true, Some(C::Smooth22)) => R(Row::R6_3),
        _ => return None,
    };
    Some(p)
}

/// Runs the whole pipeline. Failures of individual steps are recorded in
/// `notes`; the report always comes back.
pub fn classify(w: &NcPoly) -> ClassificationReport {
    let c = w.project_c();
    let sp = sp_coords(&c).expect("cyclic part has sp coordinates");
    let quartic_class = classify_quartic(&bar(&c));
    let cy = cy_check(&c);
    let mut report = ClassificationReport {
        cyclic_part: c.clone(),
        sp_coords: sp,
        quartic_class,
        cy: cy.clone(),
        table_row: None,
        parameters: Params::None,
        exceptional_id: None,
        point_scheme: None,
        curve_class: None,
        normal_form: None,
        notes: Vec::new(),
    };
    if c.is_zero() {
        report.notes.push("the cyclic part is zero".into());
        return report;
    }
    if cy.is_cy() {
        let ps = point_scheme(&c).expect("Calabi-Yau");
        match classify_curve(&ps) {
            Ok(cc) => report.curve_class = Some(cc),
            Err(e) => report.notes.push(format!("curve type unavailable: {e}")),
        }
        report.point_scheme = Some(ps);
    }
    let geometric = placement_from_geometry(
        report.quartic_class.tag,
        cy.is_cy(),
        report.curve_class.as_ref().map(|cc| cc.tag),
    );
    let mut ctx = RootContext::new(crate::scalars::FieldTower::rationals());
    let placement = match normalize_potential(&c, &mut ctx) {
        Ok(n) => {
            if let Some(g) = geometric {
                if g != n.placement {
                    report.notes.push(format!(
                        "normal form gives {} but the geometry gives {g}",
                        n.placement
                    ));
                }
            }
            report.parameters = n.params;
            report.normal_form = Some(n.form);
            Some(n.placement)
        }
        Err(e) => {
            report.notes.push(format!("normal form unavailable: {e}"));
            geometric
        }
    };
    match placement {
        Some(Placement::Row(r)) => report.table_row = Some(r),
        Some(Placement::Exceptional(x)) => report.exceptional_id = Some(x),
        None => report.notes.push(format!(
            "placed only at case {} of the quartic",
            report.quartic_class.tag.case()
        )),
    }
    let cy_expected = matches!(placement, Some(Placement::Row(_)));
    if placement.is_some() && cy_expected != cy.is_cy() {
        report
            .notes
            .push("the Calabi-Yau test disagrees with the placement".into());
    }
    report
}

/// The octahedral group in `PGL₂` permuting `{0, ∞, ±1, ±i}`, which carries
/// every `g_λ` to some `g_λ'`.
fn octahedral(ctx: &mut RootContext) -> Result<Vec<Gl2>> {
    let i = ctx.sqrt(&sc(-1))?;
    let gens = [Gl2::diag(Scalar::one(), i), Gl2::from_ints(1, 1, 1, -1)];
    let norm = |g: &Gl2| {
        let k = [&g.a, &g.b, &g.c, &g.d]
            .into_iter()
            .find(|s| !s.is_zero())
            .expect("invertible")
            .inv()
            .expect("nonzero");
        g.scale(&k)
    };
    let mut out = vec![Gl2::identity()];
    let mut k = 0;
    while k < out.len() {
        for g in &gens {
            let h = norm(&g.compose(&out[k]));
            if !out.contains(&h) {
                out.push(h);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// A `σ` with `σ(c(w1)) = s·c(w2)`, or `None` when the algebras differ.
pub fn potentials_equivalent(w1: &NcPoly, w2: &NcPoly) -> Result<Option<Gl2>> {
    let mut ctx = RootContext::new(crate::scalars::FieldTower::rationals());
    potentials_equivalent_in(w1, w2, &mut ctx)
}

/// [`potentials_equivalent`] with every adjoined root landing in `ctx`.
pub fn potentials_equivalent_in(
    w1: &NcPoly,
    w2: &NcPoly,
    ctx: &mut RootContext,
) -> Result<Option<Gl2>> {
    let (c1, c2) = (w1.project_c(), w2.project_c());
    if !(cy_check(&c1).is_cy() && cy_check(&c2).is_cy()) {
        return Err(Error::PreconditionViolated(
            "equivalence is decided for Calabi-Yau potentials".into(),
        ));
    }
    let n1 = normalize_potential(&c1, ctx)?;
    let n2 = normalize_potential(&c2, ctx)?;
    if n1.placement != n2.placement {
        return Ok(None);
    }
    let stabilizers = if n1.placement == Placement::Row(Row::R6_1)
        || n1.placement == Placement::Row(Row::R6_2)
        || n1.placement == Placement::Row(Row::R6_3)
    {
        octahedral(ctx)?
    } else {
        vec![Gl2::identity()]
    };
    let back = n2.form.sigma.inverse().expect("invertible");
    for t in stabilizers {
        if n1
            .form
            .potential
            .apply_gl2(&t)
            .ratio_to(&n2.form.potential)
            .is_some()
        {
            let sigma = back.compose(&t.compose(&n1.form.sigma));
            debug_assert!(c1.apply_gl2(&sigma).ratio_to(&c2).is_some());
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}
