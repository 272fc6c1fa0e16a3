//! Binary forms, the abelianization bridge to [`NcPoly`], and the
//! classification of binary quartics up to `GL(2)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{write_terms, Field, Rational};
use crate::ncpoly::{Gl2, NcPoly};
use crate::scalars::{RootContext, Scalar};
use crate::upoly::{rational_roots, UPoly};

/// `Σ c_i x^{d-i} y^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinForm<F: Field = Scalar> {
    coeffs: Vec<F>,
}

impl<F: Field> BinForm<F> {
    /// Coefficients of `x^d, x^{d-1}y, ..., y^d`; the degree is `len - 1`.
    pub fn new(coeffs: Vec<F>) -> BinForm<F> {
        assert!(!coeffs.is_empty(), "a binary form needs a degree");
        BinForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> BinForm<F> {
        BinForm::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero(degree: usize) -> BinForm<F> {
        BinForm {
            coeffs: vec![F::zero(); degree + 1],
        }
    }

    /// `u x + v y`.
    pub fn linear(u: F, v: F) -> BinForm<F> {
        BinForm::new(vec![u, v])
    }

    pub fn x() -> BinForm<F> {
        BinForm::linear(F::one(), F::zero())
    }

    pub fn y() -> BinForm<F> {
        BinForm::linear(F::zero(), F::one())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^{d-i} y^i`.
    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_degree(&self, o: &BinForm<F>) {
        assert_eq!(self.degree(), o.degree(), "binary form degree mismatch");
    }

    pub fn add(&self, o: &BinForm<F>) -> BinForm<F> {
        self.same_degree(o);
        BinForm::new(
            self.coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, o: &BinForm<F>) -> BinForm<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BinForm<F> {
        self.scale(&-F::one())
    }

    pub fn scale(&self, s: &F) -> BinForm<F> {
        BinForm::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, o: &BinForm<F>) -> BinForm<F> {
        let mut out = vec![F::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinForm::new(out)
    }

    pub fn pow(&self, e: usize) -> BinForm<F> {
        (0..e).fold(BinForm::new(vec![F::one()]), |acc, _| acc.mul(self))
    }

    /// `f(a x + c y, b x + d y)`.
    pub fn apply_gl2(&self, s: &Gl2<F>) -> BinForm<F> {
        let sx = BinForm::linear(s.a.clone(), s.c.clone());
        let sy = BinForm::linear(s.b.clone(), s.d.clone());
        let d = self.degree();
        let mut out = BinForm::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&sx.pow(d - i).mul(&sy.pow(i)).scale(c));
        }
        out
    }

    pub fn dx(&self) -> BinForm<F> {
        let d = self.degree();
        if d == 0 {
            return BinForm::zero(0);
        }
        BinForm::new(
            (0..d)
                .map(|i| self.coeffs[i].clone() * F::from_i64((d - i) as i64))
                .collect(),
        )
    }

    pub fn dy(&self) -> BinForm<F> {
        let d = self.degree();
        if d == 0 {
            return BinForm::zero(0);
        }
        BinForm::new(
            (1..=d)
                .map(|i| self.coeffs[i].clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (i, c)| {
                acc + c.clone() * x.pow((d - i) as u32) * y.pow(i as u32)
            })
    }

    /// Number of leading zero coefficients: the power of `y` dividing `f`.
    fn y_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// The power of `x` dividing `f`.
    fn x_order(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// The chart `x = 1` as a polynomial in `t = y`.
    pub fn chart(&self) -> UPoly<F> {
        UPoly::new(self.coeffs.clone())
    }

    /// Homogenizes a chart polynomial to degree `d`.
    pub fn from_chart(p: &UPoly<F>, d: usize) -> BinForm<F> {
        assert!(p.degree().is_none_or(|k| k <= d));
        BinForm::new((0..=d).map(|i| p.coeff(i)).collect())
    }

    /// Scales so that the first nonzero coefficient (highest power of `x`)
    /// is 1.
    pub fn normalized(&self) -> BinForm<F> {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BinForm<F>) -> Option<BinForm<F>> {
        if d.is_zero() || d.degree() > self.degree() {
            return None;
        }
        let k = self.degree() - d.degree();
        if self.is_zero() {
            return Some(BinForm::zero(k));
        }
        // Peel the y-powers, divide in the chart, then check the x-power.
        let (sy, dy) = (self.y_order(), d.y_order());
        if dy > sy {
            return None;
        }
        let q = self.chart_strip(sy).div_exact(&d.chart_strip(dy))?;
        let mut coeffs = vec![F::zero(); sy - dy];
        coeffs.extend(q.coeffs().iter().cloned());
        if coeffs.len() > k + 1 {
            return None;
        }
        coeffs.resize(k + 1, F::zero());
        let out = BinForm::new(coeffs);
        (out.mul(d) == *self).then_some(out)
    }

    fn chart_strip(&self, yo: usize) -> UPoly<F> {
        UPoly::new(self.coeffs[yo..].to_vec())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BinForm<G> {
        BinForm::new(self.coeffs.iter().map(f).collect())
    }
}

/// Normalized greatest common divisor. Roots at `(1:0)` and `(0:1)` are the
/// powers of `y` and `x`; the rest is Euclid in the chart `x = 1`.
pub fn gcd<F: Field>(f: &BinForm<F>, g: &BinForm<F>) -> BinForm<F> {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let ya = f.y_order().min(g.y_order());
    let xa = f.x_order().min(g.x_order());
    let strip = |h: &BinForm<F>| {
        let (lo, hi) = (h.y_order(), h.degree() + 1 - h.x_order());
        UPoly::new(h.coeffs[lo..hi].to_vec())
    };
    let core = strip(f).gcd(&strip(g));
    let k = core.degree().unwrap_or(0);
    let mut coeffs = vec![F::zero(); ya];
    // chart polynomial in t = y/x; monic in t means the y-heavy end is 1
    coeffs.extend(core.coeffs().iter().cloned());
    coeffs.extend(std::iter::repeat_with(F::zero).take(xa));
    debug_assert_eq!(coeffs.len(), ya + k + xa + 1);
    BinForm::new(coeffs).normalized()
}

/// `gcd(f_x, f_y)`: each root of multiplicity `m` survives with multiplicity
/// `m - 1`, including roots at infinity.
pub fn multiple_part<F: Field>(f: &BinForm<F>) -> BinForm<F> {
    gcd(&f.dx(), &f.dy())
}

/// The abelianization `V^{⊗m} → S(V)_m`.
pub fn bar<F: Field>(w: &NcPoly<F>) -> BinForm<F> {
    let mut out: BinForm<F> = BinForm::zero(w.degree());
    for (word, c) in w.terms() {
        let k = word.y_count();
        out.coeffs[k] = out.coeffs[k].clone() + c.clone();
    }
    out
}

/// The symmetrization: the element of `Sym^m V` abelianizing to `f`.
pub fn tilde<F: Field>(f: &BinForm<F>) -> NcPoly<F> {
    let m = f.degree();
    let weights: Vec<F> = (0..=m)
        .map(|k| f.coeffs[k].clone() * F::frac(1, binomial(m, k)))
        .collect();
    let coeffs = (0..1usize << m)
        .map(|i| weights[i.count_ones() as usize].clone())
        .collect();
    NcPoly::from_coeffs(m, coeffs)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |r, i| r * (n - i) as i64 / (i + 1) as i64)
}

impl<F: Field> fmt::Display for BinForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.to_string(), monomial(d - i, i)));
        write_terms(f, terms)
    }
}

fn monomial(px: usize, py: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", px), part("y", py)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Classical invariants `(I, J, Δ)` of `a x⁴ + 4b x³y + 6c x²y² + 4d xy³ + e y⁴`.
pub fn quartic_invariants<F: Field>(f: &BinForm<F>) -> (F, F, F) {
    let [a, b, c, d, e] = transvectant_coords(f);
    let i = a.clone() * e.clone() - F::from_i64(4) * b.clone() * d.clone()
        + F::from_i64(3) * c.square();
    let j = a.clone() * c.clone() * e.clone() + F::from_i64(2) * b.clone() * c.clone() * d.clone()
        - a * d.square()
        - b.square() * e
        - c.pow(3);
    let disc = i.pow(3) - F::from_i64(27) * j.square();
    (i, j, disc)
}

/// `(a, b, c, d, e)` with the binomial weights divided out.
fn transvectant_coords<F: Field>(f: &BinForm<F>) -> [F; 5] {
    assert_eq!(f.degree(), 4, "quartic expected");
    let w = [1, 4, 6, 4, 1];
    std::array::from_fn(|i| f.coeffs[i].clone() * F::frac(1, w[i]))
}

/// The Hessian covariant, scaled by `1/144`.
pub fn quartic_hessian<F: Field>(f: &BinForm<F>) -> BinForm<F> {
    let [a, b, c, d, e] = transvectant_coords(f);
    let two = F::from_i64(2);
    BinForm::new(vec![
        a.clone() * c.clone() - b.square(),
        two.clone() * (a.clone() * d.clone() - b.clone() * c.clone()),
        a * e.clone() + two.clone() * b.clone() * d.clone() - F::from_i64(3) * c.square(),
        two * (b * e.clone() - c.clone() * d.clone()),
        c * e - d.square(),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuarticTag {
    Zero,
    Quadruple,
    TriplePlusOne,
    DoubleDouble,
    DoublePlusTwo,
    FourDistinct,
}

impl QuarticTag {
    /// The case number `1..=6` in the list `0, x⁴, x³y, x²y², x⁴+x²y², g_λ`.
    pub fn case(self) -> u8 {
        match self {
            QuarticTag::Zero => 1,
            QuarticTag::Quadruple => 2,
            QuarticTag::TriplePlusOne => 3,
            QuarticTag::DoubleDouble => 4,
            QuarticTag::DoublePlusTwo => 5,
            QuarticTag::FourDistinct => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuarticTag::Zero => "Zero",
            QuarticTag::Quadruple => "Quadruple",
            QuarticTag::TriplePlusOne => "TriplePlusOne",
            QuarticTag::DoubleDouble => "DoubleDouble",
            QuarticTag::DoublePlusTwo => "DoublePlusTwo",
            QuarticTag::FourDistinct => "FourDistinct",
        }
    }
}

impl fmt::Display for QuarticTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticClass {
    pub tag: QuarticTag,
    /// For `FourDistinct`: a `λ` with `f ~ g_λ`, or why none was found.
    pub lambda: Option<std::result::Result<Scalar, Error>>,
    pub invariants: (Scalar, Scalar),
}

impl QuarticClass {
    pub fn lambda_invariant(&self) -> Option<&Scalar> {
        self.lambda.as_ref().and_then(|r| r.as_ref().ok())
    }
}

/// Root pattern from `deg gcd(f_x, f_y)`, never extracting roots.
pub fn quartic_tag<F: Field>(f: &BinForm<F>) -> QuarticTag {
    assert_eq!(f.degree(), 4, "quartic expected");
    if f.is_zero() {
        return QuarticTag::Zero;
    }
    let g = multiple_part(f);
    match g.degree() {
        0 => QuarticTag::FourDistinct,
        1 => QuarticTag::DoublePlusTwo,
        2 => {
            if multiple_part(&g).degree() == 0 {
                QuarticTag::DoubleDouble
            } else {
                QuarticTag::TriplePlusOne
            }
        }
        _ => QuarticTag::Quadruple,
    }
}

/// `g_λ = x⁴ + λ x²y² + y⁴`.
pub fn g_lambda(l: &Scalar) -> BinForm {
    BinForm::new(vec![
        Scalar::one(),
        Scalar::zero(),
        l.clone(),
        Scalar::zero(),
        Scalar::one(),
    ])
}

/// The forms `0, x⁴, x³y, x²y², x⁴+x²y²` for tags other than `FourDistinct`.
pub fn normal_form_of(tag: QuarticTag) -> Option<BinForm> {
    let c: &[i64] = match tag {
        QuarticTag::Zero => &[0, 0, 0, 0, 0],
        QuarticTag::Quadruple => &[1, 0, 0, 0, 0],
        QuarticTag::TriplePlusOne => &[0, 1, 0, 0, 0],
        QuarticTag::DoubleDouble => &[0, 0, 1, 0, 0],
        QuarticTag::DoublePlusTwo => &[1, 0, 1, 0, 0],
        QuarticTag::FourDistinct => return None,
    };
    Some(BinForm::from_ints(c))
}

/// Tag plus, for four distinct roots, a `λ` recovered from the absolute
/// invariant `J²/I³`.
pub fn classify_quartic(f: &BinForm) -> QuarticClass {
    let tag = quartic_tag(f);
    let (i, j, _) = quartic_invariants(f);
    let lambda = (tag == QuarticTag::FourDistinct).then(|| {
        lambda_from_invariants(&i, &j)
            .or_else(|e| normalize_quartic(f).ok().and_then(|n| n.lambda).ok_or(e))
    });
    QuarticClass {
        tag,
        lambda,
        invariants: (i, j),
    }
}

/// Solves `J(λ)² I³ = J² I(λ)³` with `I(λ) = 1 + λ²/12`,
/// `J(λ) = λ/6 - (λ/6)³`: a cubic in `u = λ²`.
pub fn lambda_from_invariants(i: &Scalar, j: &Scalar) -> Result<Scalar> {
    let (Some(iq), Some(jq)) = (i.to_rational(), j.to_rational()) else {
        return Err(Error::ExtensionUnavailable(
            "λ-recovery cubic has irrational coefficients".into(),
        ));
    };
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    // u (1/6 - u/216)^2 = u/36 - u²/648 + u³/46656
    let jl2 = UPoly::new(vec![r(0, 1), r(1, 36), r(-1, 648), r(1, 46656)]);
    // (1 + u/12)^3
    let il3 = UPoly::new(vec![r(1, 1), r(1, 12)]).pow(3);
    let cubic = jl2.scale(&iq.pow(3)).sub(&il3.scale(&(jq.clone() * jq)));
    let roots = rational_roots(&cubic);
    let mut ctx = RootContext::new(i.tower().unify(j.tower())?);
    let as_scalar = |u: &Rational| Scalar::from_rational(u.clone());
    if let Some(u) = roots
        .iter()
        .find(|u| as_scalar(u).sqrt_in_tower().is_some())
    {
        return Ok(as_scalar(u).sqrt_in_tower().expect("checked square"));
    }
    match roots.first() {
        Some(u) => ctx.sqrt(&as_scalar(u)).map_err(|e| e.into_extension("λ")),
        None => Err(Error::ExtensionUnavailable(
            "λ-recovery cubic has no rational root".into(),
        )),
    }
}

/// Whether `g_{l1} ~ g_{l2}`: `l2 = ±l1` or `(2 ± l1)(2 ± l2) = 16` for some
/// choice of signs.
pub fn equivalent_glambda(l1: &Scalar, l2: &Scalar) -> bool {
    if l2 == l1 || *l2 == -l1.clone() {
        return true;
    }
    let two = Scalar::from_int(2);
    let sixteen = Scalar::from_int(16);
    [1i64, -1].iter().any(|&s1| {
        [1i64, -1].iter().any(|&s2| {
            (two.clone() + Scalar::from_int(s1) * l1.clone())
                * (two.clone() + Scalar::from_int(s2) * l2.clone())
                == sixteen
        })
    })
}

/// `σ(f) = scale · normal`, with `lambda` set when `normal = g_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticNormalForm {
    pub tag: QuarticTag,
    pub sigma: Gl2,
    pub normal: BinForm,
    pub scale: Scalar,
    pub lambda: Option<Scalar>,
}

/// The substitution taking `l1 ↦ x` and `l2 ↦ y` for independent linear forms.
pub fn sending(l1: &BinForm, l2: &BinForm) -> Option<Gl2> {
    Gl2::new(
        l1.coeff(0).clone(),
        l2.coeff(0).clone(),
        l1.coeff(1).clone(),
        l2.coeff(1).clone(),
    )
    .inverse()
}

/// A linear form independent of `l`.
fn complement(l: &BinForm) -> BinForm {
    if l.coeff(1).is_zero() {
        BinForm::y()
    } else {
        BinForm::x()
    }
}

/// Reduces a power of a linear form to the form itself.
pub(crate) fn linear_root(p: &BinForm) -> BinForm {
    let mut p = p.clone();
    while p.degree() > 1 {
        p = multiple_part(&p);
    }
    p
}

/// The two linear factors of a squarefree quadratic, adjoining a root of its
/// discriminant when needed.
pub fn split_quadratic(q: &BinForm, ctx: &mut RootContext) -> Result<(BinForm, BinForm)> {
    assert_eq!(q.degree(), 2);
    let (a, b, c) = (q.coeff(0).clone(), q.coeff(1).clone(), q.coeff(2).clone());
    if a.is_zero() {
        // y (b x + c y)
        return Ok((BinForm::y(), BinForm::linear(b, c)));
    }
    ctx.absorb(&a)?;
    ctx.absorb(&b)?;
    ctx.absorb(&c)?;
    let disc = b.clone() * b.clone() - Scalar::from_int(4) * a.clone() * c;
    let r = ctx
        .sqrt(&disc)
        .map_err(|e| e.into_extension("quadratic root"))?;
    // a x² + b xy + c y² = a (x - t1 y)(x - t2 y) with t = (-b ± r) / 2a
    let two_a = Scalar::from_int(2) * a;
    let t1 = (-b.clone() + r.clone()) / two_a.clone();
    let t2 = (-b - r) / two_a;
    Ok((
        BinForm::linear(Scalar::one(), -t1),
        BinForm::linear(Scalar::one(), -t2),
    ))
}

/// Finds `σ`, `s` and a normal form `n ∈ {0, x⁴, x³y, x²y², x⁴+x²y², g_λ}`
/// with `σ(f) = s·n`.
pub fn normalize_quartic(f: &BinForm) -> Result<QuarticNormalForm> {
    let mut ctx = RootContext::spanning(f.coeffs())?;
    normalize_quartic_in(f, &mut ctx)
}

/// [`normalize_quartic`] inside a caller's context, so several results share
/// one tower.
pub fn normalize_quartic_in(f: &BinForm, ctx: &mut RootContext) -> Result<QuarticNormalForm> {
    let tag = quartic_tag(f);
    for c in f.coeffs() {
        ctx.absorb(c)?;
    }
    let (sigma, lambda) = match tag {
        QuarticTag::Zero => (Gl2::identity(), None),
        QuarticTag::Quadruple => {
            let l = linear_root(&multiple_part(f));
            (sending(&l, &complement(&l)).expect("independent"), None)
        }
        QuarticTag::TriplePlusOne => {
            let l1 = linear_root(&multiple_part(f));
            let l2 = f.div_exact(&l1.pow(3)).expect("triple factor divides");
            (sending(&l1, &l2).expect("distinct roots"), None)
        }
        QuarticTag::DoubleDouble => {
            let (l1, l2) = split_quadratic(&multiple_part(f), ctx)?;
            (sending(&l1, &l2).expect("distinct roots"), None)
        }
        QuarticTag::DoublePlusTwo => (double_plus_two(f, ctx)?, None),
        QuarticTag::FourDistinct => {
            let (s, l) = four_distinct(f, ctx)?;
            (s, Some(l))
        }
    };
    let image = f.apply_gl2(&sigma);
    let normal = match &lambda {
        Some(l) => g_lambda(l),
        None => normal_form_of(tag).expect("non-generic tag"),
    };
    let scale = if tag == QuarticTag::Zero {
        Scalar::one()
    } else {
        let k = normal.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        image.coeff(k).clone() / normal.coeff(k).clone()
    };
    if image != normal.scale(&scale) {
        return Err(Error::PreconditionViolated(format!(
            "normalization of {f} did not reach {normal}"
        )));
    }
    Ok(QuarticNormalForm {
        tag,
        sigma,
        normal,
        scale,
        lambda,
    })
}

fn double_plus_two(f: &BinForm, ctx: &mut RootContext) -> Result<Gl2> {
    let l = multiple_part(f);
    let s1 = sending(&l, &complement(&l)).expect("independent");
    // σ1(f) = x² (q0 x² + q1 xy + q2 y²) with q2 ≠ 0
    let f1 = f.apply_gl2(&s1);
    let (q0, q1, q2) = (
        f1.coeff(0).clone(),
        f1.coeff(1).clone(),
        f1.coeff(2).clone(),
    );
    let two = Scalar::from_int(2);
    let t = -q1.clone() / (two * q2.clone());
    let shear = Gl2::new(Scalar::one(), t, Scalar::zero(), Scalar::one());
    let e = q0 - q1.clone() * q1 / (Scalar::from_int(4) * q2.clone());
    let kappa = ctx
        .sqrt(&(e / q2))
        .map_err(|er| er.into_extension("rescaling"))?;
    let scale = Gl2::diag(Scalar::one(), kappa);
    Ok(scale.compose(&shear).compose(&s1))
}

/// The three roots of `4θ³ - Iθ - J`, when reachable.
fn resolvent_root(i: &Scalar, j: &Scalar) -> Result<Scalar> {
    if j.is_zero() {
        return Ok(Scalar::zero());
    }
    if let (Some(iq), Some(jq)) = (i.to_rational(), j.to_rational()) {
        let cubic = UPoly::new(vec![
            -jq,
            -iq,
            Rational::zero(),
            Rational::from_integer(4.into()),
        ]);
        if let Some(r) = rational_roots(&cubic).into_iter().next() {
            return Ok(Scalar::from_rational(r));
        }
    }
    Err(Error::ExtensionUnavailable(
        "resolvent cubic has no root in the tower".into(),
    ))
}

fn four_distinct(f: &BinForm, ctx: &mut RootContext) -> Result<(Gl2, Scalar)> {
    let c = f.coeffs();
    if c[1].is_zero() && c[3].is_zero() && c[0] == c[4] {
        return Ok((Gl2::identity(), c[2].clone() / c[0].clone()));
    }
    let (i, j, _) = quartic_invariants(f);
    let theta = resolvent_root(&i, &j)?;
    // H + θ f = k q², and q's roots pair up the roots of f
    let square = quartic_hessian(f).add(&f.scale(&theta));
    let q = multiple_part(&square);
    let (l1, l2) = split_quadratic(&q, ctx)?;
    let s1 = sending(&l1, &l2).expect("distinct roots");
    let f1 = f.apply_gl2(&s1);
    let (a, cc, e) = (
        f1.coeff(0).clone(),
        f1.coeff(2).clone(),
        f1.coeff(4).clone(),
    );
    debug_assert!(f1.coeff(1).is_zero() && f1.coeff(3).is_zero());
    // y ↦ κ y with κ⁴ = a/e
    let ratio = a.clone() / e;
    let k2 = match ctx.sqrt_existing(&ratio) {
        Some(r) => r,
        None => ctx
            .sqrt(&ratio)
            .map_err(|er| er.into_extension("rescaling"))?,
    };
    let kappa = match ctx
        .sqrt_existing(&k2)
        .or_else(|| ctx.sqrt_existing(&-k2.clone()))
    {
        Some(k) => k,
        None => ctx.sqrt(&k2).map_err(|er| er.into_extension("rescaling"))?,
    };
    let k2 = kappa.clone() * kappa.clone();
    let lambda = cc * k2 / a;
    Ok((Gl2::diag(Scalar::one(), kappa).compose(&s1), lambda))
}
