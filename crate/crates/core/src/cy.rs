//! Standardness, the matrix `M(w)`, the Calabi-Yau test on `P¹×P¹`, and the
//! point scheme cut out by the noncommutative Hessian.

use std::fmt;

use num_traits::{One, Zero};

use crate::comm::{gcd, split_quadratic, BinForm};
use crate::error::{Error, Result};
use crate::field::{write_terms, Field};
use crate::linalg::{express, rank};
use crate::ncpoly::{Gl2, Letter, NcPoly};
use crate::scalars::{RootContext, Scalar};
use crate::upoly::rational_roots;

/// A point of `P¹`, compared projectively.
#[derive(Clone, Debug)]
pub struct P1 {
    pub x: Scalar,
    pub y: Scalar,
}

impl P1 {
    pub fn new(x: Scalar, y: Scalar) -> P1 {
        assert!(!(x.is_zero() && y.is_zero()), "(0:0) is not a point");
        P1 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> P1 {
        P1::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Representative with the first nonzero coordinate equal to 1.
    pub fn normalized(&self) -> P1 {
        if self.x.is_zero() {
            P1::new(Scalar::zero(), Scalar::one())
        } else {
            P1::new(Scalar::one(), self.y.clone() / self.x.clone())
        }
    }

    /// The linear form `y₀ x - x₀ y` vanishing here.
    pub fn vanishing_form(&self) -> BinForm {
        BinForm::linear(self.y.clone(), -self.x.clone())
    }

    /// The zero of a nonzero linear form `u x + v y`.
    pub fn root_of(l: &BinForm) -> P1 {
        assert_eq!(l.degree(), 1);
        P1::new(-l.coeff(1).clone(), l.coeff(0).clone())
    }

    /// Image under the column-vector action of `g`.
    pub fn apply(&self, g: &Gl2) -> P1 {
        let (x, y) = g.apply_vec(&(self.x.clone(), self.y.clone()));
        P1::new(x, y)
    }
}

impl PartialEq for P1 {
    fn eq(&self, o: &P1) -> bool {
        self.x.clone() * o.y.clone() == self.y.clone() * o.x.clone()
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(f, "({}:{})", n.x, n.y)
    }
}

/// A point of `P¹×P¹`.
pub type P1xP1 = (P1, P1);

/// A form of bidegree `(a, b)` in `(x₁, y₁; x₂, y₂)`. Coefficients are stored
/// row-major: row `i` is `x₁^{a-i} y₁^i`, column `j` is `x₂^{b-j} y₂^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiForm<F: Field = Scalar> {
    a: usize,
    b: usize,
    coeffs: Vec<F>,
}

impl<F: Field> BiForm<F> {
    pub fn zero(a: usize, b: usize) -> BiForm<F> {
        BiForm {
            a,
            b,
            coeffs: vec![F::zero(); (a + 1) * (b + 1)],
        }
    }

    pub fn new(a: usize, b: usize, coeffs: Vec<F>) -> BiForm<F> {
        assert_eq!(coeffs.len(), (a + 1) * (b + 1));
        BiForm { a, b, coeffs }
    }

    /// `f(x₁, y₁) · g(x₂, y₂)`.
    pub fn outer(f: &BinForm<F>, g: &BinForm<F>) -> BiForm<F> {
        let (a, b) = (f.degree(), g.degree());
        let coeffs = (0..=a)
            .flat_map(|i| (0..=b).map(move |j| (i, j)))
            .map(|(i, j)| f.coeff(i).clone() * g.coeff(j).clone())
            .collect();
        BiForm::new(a, b, coeffs)
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x₁^{a-i} y₁^i x₂^{b-j} y₂^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &F {
        &self.coeffs[i * (self.b + 1) + j]
    }

    fn coeff_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.coeffs[i * (self.b + 1) + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &BiForm<F>) -> BiForm<F> {
        assert_eq!(self.bidegree(), o.bidegree(), "bidegree mismatch");
        BiForm::new(
            self.a,
            self.b,
            self.coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(p, q)| p.clone() + q.clone())
                .collect(),
        )
    }

    pub fn sub(&self, o: &BiForm<F>) -> BiForm<F> {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> BiForm<F> {
        BiForm::new(
            self.a,
            self.b,
            self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        )
    }

    pub fn mul(&self, o: &BiForm<F>) -> BiForm<F> {
        let mut out: BiForm<F> = BiForm::zero(self.a + o.a, self.b + o.b);
        for i in 0..=self.a {
            for j in 0..=self.b {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                for k in 0..=o.a {
                    for l in 0..=o.b {
                        let d = o.coeff(k, l);
                        if d.is_zero() {
                            continue;
                        }
                        let slot = out.coeff_mut(i + k, j + l);
                        *slot = slot.clone() + c.clone() * d.clone();
                    }
                }
            }
        }
        out
    }

    /// Coefficient forms in `(x₁, y₁)` of `x₂^{b-j} y₂^j`, for `j = 0..=b`.
    pub fn first_coeffs(&self) -> Vec<BinForm<F>> {
        (0..=self.b)
            .map(|j| BinForm::new((0..=self.a).map(|i| self.coeff(i, j).clone()).collect()))
            .collect()
    }

    /// Coefficient forms in `(x₂, y₂)` of `x₁^{a-i} y₁^i`, for `i = 0..=a`.
    pub fn second_coeffs(&self) -> Vec<BinForm<F>> {
        (0..=self.a)
            .map(|i| BinForm::new((0..=self.b).map(|j| self.coeff(i, j).clone()).collect()))
            .collect()
    }

    /// Reassembles from `first_coeffs` output.
    pub fn from_first_coeffs(cs: &[BinForm<F>]) -> BiForm<F> {
        let a = cs[0].degree();
        let b = cs.len() - 1;
        let mut out: BiForm<F> = BiForm::zero(a, b);
        for (j, c) in cs.iter().enumerate() {
            for i in 0..=a {
                *out.coeff_mut(i, j) = c.coeff(i).clone();
            }
        }
        out
    }

    pub fn from_second_coeffs(rs: &[BinForm<F>]) -> BiForm<F> {
        let a = rs.len() - 1;
        let b = rs[0].degree();
        let mut out: BiForm<F> = BiForm::zero(a, b);
        for (i, r) in rs.iter().enumerate() {
            for j in 0..=b {
                *out.coeff_mut(i, j) = r.coeff(j).clone();
            }
        }
        out
    }

    /// Substitutes `g1` in the first factor's variables and `g2` in the
    /// second's, each as in [`BinForm::apply_gl2`].
    pub fn apply(&self, g1: &Gl2<F>, g2: &Gl2<F>) -> BiForm<F> {
        let rows: Vec<BinForm<F>> = self
            .first_coeffs()
            .iter()
            .map(|c| c.apply_gl2(g1))
            .collect();
        let mid = BiForm::from_first_coeffs(&rows);
        let cols: Vec<BinForm<F>> = mid
            .second_coeffs()
            .iter()
            .map(|r| r.apply_gl2(g2))
            .collect();
        BiForm::from_second_coeffs(&cols)
    }

    /// The form in `(x₂, y₂)` obtained by fixing `(x₁, y₁) = (p, q)`.
    pub fn at_first(&self, p: &F, q: &F) -> BinForm<F> {
        BinForm::new(self.first_coeffs().iter().map(|c| c.eval(p, q)).collect())
    }

    /// The form in `(x₁, y₁)` obtained by fixing `(x₂, y₂) = (p, q)`.
    pub fn at_second(&self, p: &F, q: &F) -> BinForm<F> {
        BinForm::new(self.second_coeffs().iter().map(|r| r.eval(p, q)).collect())
    }

    pub fn eval(&self, u: &(F, F), v: &(F, F)) -> F {
        self.at_first(&u.0, &u.1).eval(&v.0, &v.1)
    }

    /// Partial derivative in `x₁` (`k = 0`), `y₁` (1), `x₂` (2) or `y₂` (3).
    pub fn partial(&self, k: usize) -> BiForm<F> {
        match k {
            0 | 1 => {
                let rows: Vec<BinForm<F>> = self
                    .first_coeffs()
                    .iter()
                    .map(|c| if k == 0 { c.dx() } else { c.dy() })
                    .collect();
                if self.a == 0 {
                    return BiForm::zero(0, self.b);
                }
                BiForm::from_first_coeffs(&rows)
            }
            2 | 3 => {
                let cols: Vec<BinForm<F>> = self
                    .second_coeffs()
                    .iter()
                    .map(|r| if k == 2 { r.dx() } else { r.dy() })
                    .collect();
                if self.b == 0 {
                    return BiForm::zero(self.a, 0);
                }
                BiForm::from_second_coeffs(&cols)
            }
            _ => panic!("partial index {k} out of range"),
        }
    }

    /// Scales so that the first nonzero coefficient in grid order is 1.
    pub fn normalized(&self) -> BiForm<F> {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Whether `self = s·o` for some nonzero scalar `s`.
    pub fn proportional(&self, o: &BiForm<F>) -> bool {
        self.bidegree() == o.bidegree() && self.normalized() == o.normalized()
    }

    /// Divides out a form in the first variables, if it divides exactly.
    pub fn div_first(&self, c: &BinForm<F>) -> Option<BiForm<F>> {
        let rows: Option<Vec<BinForm<F>>> =
            self.first_coeffs().iter().map(|r| r.div_exact(c)).collect();
        Some(BiForm::from_first_coeffs(&rows?))
    }

    pub fn div_second(&self, c: &BinForm<F>) -> Option<BiForm<F>> {
        let cols: Option<Vec<BinForm<F>>> = self
            .second_coeffs()
            .iter()
            .map(|r| r.div_exact(c))
            .collect();
        Some(BiForm::from_second_coeffs(&cols?))
    }

    /// The gcd of the coefficient forms in `(x₁, y₁)`.
    pub fn content_first(&self) -> BinForm<F> {
        self.first_coeffs()
            .iter()
            .fold(BinForm::zero(self.a), |g, c| gcd(&g, c))
    }

    pub fn content_second(&self) -> BinForm<F> {
        self.second_coeffs()
            .iter()
            .fold(BinForm::zero(self.b), |g, c| gcd(&g, c))
    }
}

fn var_monomial(x: &str, y: &str, px: usize, py: usize) -> Vec<String> {
    let part = |v: &str, e: usize| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part(x, px), part(y, py)].into_iter().flatten().collect()
}

impl<F: Field> fmt::Display for BiForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = (0..=self.a)
            .flat_map(|i| (0..=self.b).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.coeff(i, j).is_zero())
            .map(|(i, j)| {
                let mut m = var_monomial("x1", "y1", self.a - i, i);
                m.extend(var_monomial("x2", "y2", self.b - j, j));
                (self.coeff(i, j).to_string(), m.join("*"))
            });
        write_terms(f, terms)
    }
}

/// `u⊗v ↦ u(x₁, y₁)·v(x₂, y₂)`; the word index layout coincides with the grid.
pub fn segre<F: Field>(p: &NcPoly<F>) -> BiForm<F> {
    assert_eq!(p.degree(), 2, "segre expects degree 2");
    BiForm::new(1, 1, p.coeffs().to_vec())
}

/// `M(w)_{ij} = ∂_{x_i} w ∂_{x_j}`, so that `w = xᵀ M(w) x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2Nc<F: Field = Scalar> {
    pub entries: [[NcPoly<F>; 2]; 2],
}

impl<F: Field> Mat2Nc<F> {
    /// `xᵀ M x`.
    pub fn contract(&self) -> NcPoly<F> {
        let l = [NcPoly::letter(Letter::X), NcPoly::letter(Letter::Y)];
        let mut out: NcPoly<F> = NcPoly::zero(self.entries[0][0].degree() + 2);
        for i in 0..2 {
            for j in 0..2 {
                out = out.add(&l[i].mul(&self.entries[i][j]).mul(&l[j]));
            }
        }
        out
    }

    /// `det` of the Segre image.
    pub fn segre_det(&self) -> BiForm<F> {
        let e = |i: usize, j: usize| segre(&self.entries[i][j]);
        e(0, 0).mul(&e(1, 1)).sub(&e(0, 1).mul(&e(1, 0)))
    }
}

impl<F: Field> fmt::Display for Mat2Nc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

pub fn matrix_of<F: Field>(w: &NcPoly<F>) -> Mat2Nc<F> {
    assert_eq!(w.degree(), 4, "M(w) is defined here for quartics");
    let l = [Letter::X, Letter::Y];
    let e = |i: usize, j: usize| w.dleft(l[i]).dright(l[j]);
    Mat2Nc {
        entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
    }
}

/// Whether `∂_x c(w)` and `∂_y c(w)` are linearly independent.
pub fn is_standard<F: Field>(w: &NcPoly<F>) -> bool {
    let c = w.project_c();
    let rows = vec![
        c.dleft(Letter::X).coeffs().to_vec(),
        c.dleft(Letter::Y).coeffs().to_vec(),
    ];
    rank(8, &rows) == 2
}

/// The matrix `Q_S` with `g = Q_S f`, where `f = M x` are the left and
/// `g = (xᵀ M)ᵀ` the right derivatives of `c(w)`; `None` when not standard.
pub fn standard_q<F: Field>(w: &NcPoly<F>) -> Option<Gl2<F>> {
    if !is_standard(w) {
        return None;
    }
    let c = w.project_c();
    let f: Vec<Vec<F>> = [Letter::X, Letter::Y]
        .iter()
        .map(|&l| c.dleft(l).coeffs().to_vec())
        .collect();
    let g: Vec<Vec<F>> = [Letter::X, Letter::Y]
        .iter()
        .map(|&l| c.dright(l).coeffs().to_vec())
        .collect();
    let r0 = express(&f, &g[0])?;
    let r1 = express(&f, &g[1])?;
    Some(Gl2::new(
        r0[0].clone(),
        r0[1].clone(),
        r1[0].clone(),
        r1[1].clone(),
    ))
}

/// Why the locus `V(M(c(w)))` is nonempty, as far as the tower reaches.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusWitness {
    /// gcd of the six minors; the zero form when they all vanish.
    pub minor_gcd: BinForm,
    pub point: Option<P1xP1>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CyVerdict {
    CalabiYau,
    NotStandard,
    NonEmptyLocus(LocusWitness),
}

impl CyVerdict {
    pub fn is_cy(&self) -> bool {
        matches!(self, CyVerdict::CalabiYau)
    }
}

/// The four `(1,1)` forms `segre(M(c(w))_{ij})`.
fn locus_forms(w: &NcPoly) -> Vec<BiForm> {
    let m = matrix_of(&w.project_c());
    m.entries
        .iter()
        .flat_map(|row| row.iter().map(segre))
        .collect()
}

/// Decides `V(∂_x c(w)∂_x, ∂_x c(w)∂_y, ∂_y c(w)∂_x, ∂_y c(w)∂_y) = ∅` in
/// `P¹×P¹` after checking standardness.
pub fn cy_check(w: &NcPoly) -> CyVerdict {
    if !is_standard(w) {
        return CyVerdict::NotStandard;
    }
    let forms = locus_forms(w);
    // Each form is α(u) x₂ + β(u) y₂; a common zero over u needs rank ≤ 1.
    let cols: Vec<[BinForm; 2]> = forms
        .iter()
        .map(|f| {
            let c = f.first_coeffs();
            [c[0].clone(), c[1].clone()]
        })
        .collect();
    let mut g = BinForm::zero(2);
    for k in 0..4 {
        for l in k + 1..4 {
            let minor = cols[k][0]
                .mul(&cols[l][1])
                .sub(&cols[l][0].mul(&cols[k][1]));
            g = gcd(&g, &minor);
        }
    }
    if !g.is_zero() && g.degree() == 0 {
        return CyVerdict::CalabiYau;
    }
    let point = locus_point(&forms, &g);
    CyVerdict::NonEmptyLocus(LocusWitness {
        minor_gcd: g,
        point,
    })
}

fn locus_point(forms: &[BiForm], g: &BinForm) -> Option<P1xP1> {
    let u = if g.is_zero() {
        P1::from_ints(1, 0)
    } else {
        rational_p1_root(g)?
    };
    let lin: Vec<BinForm> = forms.iter().map(|f| f.at_first(&u.x, &u.y)).collect();
    let v = common_root(&lin)?;
    Some((u, v))
}

/// A root in `P¹` of a nonzero form over the tower, via a linear factor, a
/// rational root, or the quadratic formula.
pub fn rational_p1_root(g: &BinForm) -> Option<P1> {
    if g.coeff(0).is_zero() {
        return Some(P1::from_ints(1, 0));
    }
    if g.degree() == 1 {
        return Some(P1::root_of(g));
    }
    let chart = g.chart();
    if chart.coeffs().iter().all(|c| c.is_rational()) {
        let q = chart.map(|c| c.to_rational().expect("rational"));
        if let Some(t) = rational_roots(&q).into_iter().next() {
            return Some(P1::new(Scalar::one(), Scalar::from_rational(t)));
        }
    }
    if g.degree() == 2 {
        let mut ctx = RootContext::spanning(g.coeffs()).ok()?;
        let (l1, _) = split_quadratic(g, &mut ctx).ok()?;
        return Some(P1::root_of(&l1));
    }
    None
}

/// A common zero in `P¹` of linear forms, if they have one.
pub fn common_root(forms: &[BinForm]) -> Option<P1> {
    let nz: Vec<&BinForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nz.first() else {
        return Some(P1::from_ints(1, 0));
    };
    let p = P1::root_of(first);
    nz.iter().all(|f| f.eval(&p.x, &p.y).is_zero()).then_some(p)
}

/// `H(w) = det segre(M(w))`, bidegree `(2, 2)`.
pub fn hessian(w: &NcPoly) -> BiForm {
    matrix_of(w).segre_det()
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointScheme {
    WholeSurface,
    Curve(BiForm),
}

impl fmt::Display for PointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointScheme::WholeSurface => write!(f, "P1xP1"),
            PointScheme::Curve(h) => write!(f, "V({h})"),
        }
    }
}

/// `V(H(c(w)))` with `H` normalized, for Calabi-Yau `w`.
pub fn point_scheme(w: &NcPoly) -> Result<PointScheme> {
    if !cy_check(w).is_cy() {
        return Err(Error::PreconditionViolated(
            "point scheme requested for a non-Calabi-Yau potential".into(),
        ));
    }
    Ok(point_scheme_unchecked(w))
}

pub(crate) fn point_scheme_unchecked(w: &NcPoly) -> PointScheme {
    let h = hessian(&w.project_c());
    if h.is_zero() {
        PointScheme::WholeSurface
    } else {
        PointScheme::Curve(h.normalized())
    }
}

/// The trilinear evaluation `r(p₁, p₂, ·)` of a cubic relation, as a linear
/// form in the third slot.
fn third_slot_form(r: &NcPoly, p1: &P1, p2: &P1) -> BinForm {
    let pick = |p: &P1, bit: usize| if bit == 0 { p.x.clone() } else { p.y.clone() };
    let mut out = [Scalar::zero(), Scalar::zero()];
    for (word, c) in r.terms() {
        let i = word.index();
        let v = c.clone() * pick(p1, i >> 2 & 1) * pick(p2, i >> 1 & 1);
        out[i & 1] = out[i & 1].clone() + v;
    }
    let [u, v] = out;
    BinForm::linear(u, v)
}

/// `τ(p₁, p₂) = (p₂, p₃)` where the relations `∂_x c(w)`, `∂_y c(w)` vanish at
/// `(p₁, p₂, p₃)`.
pub fn tau_of_point(w: &NcPoly, p: &P1xP1) -> Result<P1xP1> {
    let c = w.project_c();
    let forms: Vec<BinForm> = [Letter::X, Letter::Y]
        .iter()
        .map(|&l| third_slot_form(&c.dleft(l), &p.0, &p.1))
        .collect();
    let rows: Vec<Vec<Scalar>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    match rank(2, &rows) {
        2 => Err(Error::NotOnE),
        0 => Err(Error::AmbiguousThirdPoint),
        _ => {
            let p3 = common_root(&forms).expect("rank-1 system has a root");
            Ok((p.1.clone(), p3))
        }
    }
}
