//! Two other presentations of `J(w)`: the three-generator form `S^λ_f` with
//! `deg z = 2`, and the Clifford-like `A(M₁, M₂)` for symmetric potentials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::classify::{normalize_potential, same_relations};
use crate::comm::{bar, tilde, BinForm};
use crate::cy::cy_check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::{in_sym4, mu, sp_coords, Gl2, Letter, NcPoly, Word};
use crate::oracle::IdealTower;
use crate::scalars::{RootContext, Scalar};

/// A noncommutative polynomial in `x`, `y`, `z` (letters `0`, `1`, `2`).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly3 {
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl Poly3 {
    pub fn zero() -> Poly3 {
        Poly3::default()
    }

    pub fn word(letters: &[u8], c: Scalar) -> Poly3 {
        let mut p = Poly3::zero();
        p.add_term(letters.to_vec(), c);
        p
    }

    fn add_term(&mut self, w: Vec<u8>, c: Scalar) {
        let v = self.terms.remove(&w).unwrap_or_else(Scalar::zero) + c;
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly3 {
        let mut out = Poly3::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly3) -> Poly3 {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let w: Vec<u8> = a.iter().chain(b).copied().collect();
                out.add_term(w, c.clone() * d.clone());
            }
        }
        out
    }

    pub fn from_nc(p: &NcPoly) -> Poly3 {
        let mut out = Poly3::zero();
        for (w, c) in p.terms() {
            let letters = w.letters().iter().map(|l| l.bit() as u8).collect();
            out.add_term(letters, c.clone());
        }
        out
    }

    /// Replaces `z` by a quadratic in `x`, `y`; every term must have
    /// weighted degree `n` (with `deg z = 2`).
    pub fn substitute_z(&self, z: &NcPoly, n: usize) -> Result<NcPoly> {
        let mut out = NcPoly::zero(n);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for &l in w {
                let f = match l {
                    2 => z.clone(),
                    _ => NcPoly::letter(Letter::from_bit(l as usize)),
                };
                acc = acc.mul(&f);
            }
            if acc.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: acc.degree(),
                });
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(w, c)| {
            let mono: String = w.iter().map(|&l| ['x', 'y', 'z'][l as usize]).collect();
            (c.to_string(), pretty_word(&mono))
        });
        crate::field::write_terms(f, terms)
    }
}

fn pretty_word(s: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        parts.push(match j - i {
            1 => chars[i].to_string(),
            e => format!("{}^{e}", chars[i]),
        });
        i = j;
    }
    parts.join("*")
}

/// All arrangements of `a` x's, `b` y's and `c` z's, averaged.
fn tilde_monomial(a: usize, b: usize, c: usize) -> Poly3 {
    fn go(left: [usize; 3], prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&k| k == 0) {
            out.push(prefix.clone());
            return;
        }
        for l in 0..3 {
            if left[l] > 0 {
                let mut next = left;
                next[l] -= 1;
                prefix.push(l as u8);
                go(next, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut words = Vec::new();
    go([a, b, c], &mut Vec::new(), &mut words);
    let w = Scalar::frac(1, words.len() as i64);
    let mut p = Poly3::zero();
    for word in words {
        p.add_term(word, w.clone());
    }
    p
}

/// `f = q(x, y) + z·l(x, y) + s·z²`, weighted homogeneous of degree 4.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedQuartic {
    pub quartic: BinForm,
    pub z_linear: BinForm,
    pub z_square: Scalar,
}

impl WeightedQuartic {
    /// Symmetrization of a commutative form `Σ c·x^{d-i}y^i z^k`.
    fn tilde_xy_z(form: &BinForm, zpow: usize) -> Poly3 {
        let d = form.degree();
        let mut out = Poly3::zero();
        for (i, c) in form.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&tilde_monomial(d - i, i, zpow).scale(c));
            }
        }
        out
    }

    pub fn tilde_fx(&self) -> Poly3 {
        WeightedQuartic::tilde_xy_z(&self.quartic.dx(), 0)
            .add(&WeightedQuartic::tilde_xy_z(&self.z_linear.dx(), 1))
    }

    pub fn tilde_fy(&self) -> Poly3 {
        WeightedQuartic::tilde_xy_z(&self.quartic.dy(), 0)
            .add(&WeightedQuartic::tilde_xy_z(&self.z_linear.dy(), 1))
    }

    pub fn tilde_fz(&self) -> Poly3 {
        let two_s = Scalar::from_int(2) * self.z_square.clone();
        Poly3::from_nc(&tilde(&self.z_linear)).add(&Poly3::word(&[2], two_s))
    }
}

impl fmt::Display for WeightedQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.quartic.is_zero() {
            parts.push(self.quartic.to_string());
        }
        if !self.z_linear.is_zero() {
            parts.push(format!("({})*z", self.z_linear));
        }
        if !self.z_square.is_zero() {
            parts.push(format!("({})*z^2", self.z_square));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DqPresentation {
    pub lambda: Scalar,
    pub f: WeightedQuartic,
    /// `[y,z] − λf̃_x`, `[z,x] − λf̃_y`, and the `z` relation.
    pub relations: [Poly3; 3],
}

fn commutator(a: &Poly3, b: &Poly3) -> Poly3 {
    a.mul(b).sub(&b.mul(a))
}

impl DqPresentation {
    /// The relations of `S^λ_f`. The third is taken as `[x,y] + λf̃_z`, which
    /// is `xy − yx − z` for the `f` built by [`to_dq`].
    pub fn new(lambda: Scalar, f: WeightedQuartic) -> DqPresentation {
        let [x, y, z] = [0u8, 1, 2].map(|l| Poly3::word(&[l], Scalar::one()));
        let relations = [
            commutator(&y, &z).sub(&f.tilde_fx().scale(&lambda)),
            commutator(&z, &x).sub(&f.tilde_fy().scale(&lambda)),
            commutator(&x, &y).add(&f.tilde_fz().scale(&lambda)),
        ];
        DqPresentation {
            lambda,
            f,
            relations,
        }
    }
}

pub fn to_dq(w: &NcPoly) -> Result<DqPresentation> {
    if w.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: w.degree(),
        });
    }
    let c = w.project_c();
    let m = mu(&c);
    if m.is_zero() {
        return Err(Error::SymmetricPotential);
    }
    let lambda = Scalar::from_int(-3) / (Scalar::from_int(8) * m.clone());
    let f = WeightedQuartic {
        quartic: bar(&c),
        z_linear: BinForm::zero(2),
        z_square: Scalar::frac(4, 3) * m,
    };
    Ok(DqPresentation::new(lambda, f))
}

/// Eliminates `z` through the third relation and compares the other two,
/// now cubic in `x`, `y`, with `∂_x c(w)`, `∂_y c(w)`.
pub fn verify_dq(p: &DqPresentation, w: &NcPoly) -> bool {
    let rz = &p.relations[2];
    let kappa = rz
        .terms()
        .find(|(word, _)| *word == [2])
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Scalar::zero);
    if kappa.is_zero() {
        return false;
    }
    // rz = κz + rest(x, y) = 0
    let rest = rz.sub(&Poly3::word(&[2], kappa.clone()));
    let Ok(rest) = rest.substitute_z(&NcPoly::zero(2), 2) else {
        return false;
    };
    let z = rest.scale(&(-kappa.inv().expect("nonzero")));
    let mut cubic = Vec::new();
    for r in &p.relations[..2] {
        match r.substitute_z(&z, 3) {
            Ok(c) => cubic.push(c),
            Err(_) => return false,
        }
    }
    let c = w.project_c();
    let target = [c.dleft(Letter::X), c.dleft(Letter::Y)];
    same_relations(&cubic, &target)
}

pub type Mat2 = [[Scalar; 2]; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordPresentation {
    pub m1: Mat2,
    pub m2: Mat2,
    pub a: Scalar,
    pub b: Scalar,
    /// `c(w)` moved by `sigma` is `scale · (w₁ + w₂ + a·w₅ + b·w₆)`.
    pub sigma: Gl2,
    pub scale: Scalar,
}

impl CliffordPresentation {
    pub fn from_ab(a: Scalar, b: Scalar) -> CliffordPresentation {
        let z = Scalar::zero;
        let three = || Scalar::from_int(3);
        CliffordPresentation {
            m1: [[three(), -a.clone()], [z(), z()]],
            m2: [[z(), z()], [-b.clone(), three()]],
            a,
            b,
            sigma: Gl2::identity(),
            scale: Scalar::one(),
        }
    }

    /// `x_i x_j² + x_j x_i x_j + x_j² x_i − Σ_k (M_k)_{ij} y_k` for all
    /// `i ≠ j`, with `y_k` read as `x_k³`.
    pub fn relations(&self) -> Vec<NcPoly> {
        let letter = |i: usize| NcPoly::letter(Letter::from_bit(i));
        let mut out = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    continue;
                }
                let (xi, xj) = (letter(i), letter(j));
                let mut r = xi
                    .mul(&xj)
                    .mul(&xj)
                    .add(&xj.mul(&xi).mul(&xj))
                    .add(&xj.mul(&xj).mul(&xi));
                for (k, m) in [&self.m1, &self.m2].into_iter().enumerate() {
                    r = r.sub(&letter(k).pow(3).scale(&m[i][j]));
                }
                out.push(r);
            }
        }
        out
    }

    /// Coefficients of `X`, `Y` in the `(i, i)` relations `3x_i³ − …`.
    pub fn diagonal_entries(&self) -> [[Scalar; 2]; 2] {
        [
            [self.m1[0][0].clone(), self.m2[0][0].clone()],
            [self.m1[1][1].clone(), self.m2[1][1].clone()],
        ]
    }
}

fn require_symmetric_cy(c: &NcPoly) -> Result<()> {
    if c.degree() != 4 || !in_sym4(c) {
        return Err(Error::PreconditionViolated("c(w) is not in Sym^4 V".into()));
    }
    if !cy_check(c).is_cy() {
        return Err(Error::PreconditionViolated("J(w) is not Calabi-Yau".into()));
    }
    Ok(())
}

pub fn to_clifford(w: &NcPoly) -> Result<CliffordPresentation> {
    let c = w.project_c();
    require_symmetric_cy(&c)?;
    let mut ctx = RootContext::spanning(c.coeffs())?;
    let n = normalize_potential(&c, &mut ctx)?;
    let sp = sp_coords(&n.form.potential).expect("cyclic");
    let s = sp[0].clone();
    if s.is_zero() || sp[1] != s || !sp[2].is_zero() || !sp[3].is_zero() {
        return Err(Error::PreconditionViolated(format!(
            "normal form {} is not of Clifford shape",
            n.form.potential
        )));
    }
    let k = s.inv().expect("nonzero");
    let (mut a, mut b) = (sp[4].clone() * k.clone(), sp[5].clone() * k);
    let mut sigma = n.form.sigma.clone();
    let mut scale = n.form.scale.clone() * s;
    if a.is_zero() && !b.is_zero() {
        std::mem::swap(&mut a, &mut b);
        sigma = Gl2::swap().compose(&sigma);
    }
    // x ↦ px sends (w₁+w₂, w₅, w₆) to (p², p⁴, 1) times themselves
    let p = if a == b {
        None
    } else if b.is_zero() {
        Some(ctx.sqrt(&a.inv().expect("nonzero"))?)
    } else {
        let r = ctx.sqrt(&(b.clone() / a.clone()))?;
        Some(
            ctx.sqrt(&r)
                .map_err(|e| e.into_extension("a Clifford normal form"))?,
        )
    };
    if let Some(p) = p {
        let p2 = p.square();
        a = a * p2.clone();
        b = b / p2.clone();
        sigma = Gl2::diag(p, Scalar::one()).compose(&sigma);
        scale = scale * p2;
    }
    let mut out = CliffordPresentation::from_ab(a, b);
    out.sigma = sigma;
    out.scale = scale;
    debug_assert!(
        c.apply_gl2(&out.sigma) == crate::hdet::sym4_potential(&out.a, &out.b).scale(&out.scale)
    );
    Ok(out)
}

/// Checks that `x³` and `y³` commute with every monomial of degree up to
/// `max_degree − 3` in `A(M₁, M₂)`, and that its relations are those of the
/// normalized `J(w)`.
pub fn verify_centrality(w: &NcPoly, max_degree: usize) -> Result<bool> {
    let p = to_clifford(w)?;
    let rels = p.relations();
    let moved = w.project_c().apply_gl2(&p.sigma);
    if !same_relations(&rels, &[moved.dleft(Letter::X), moved.dleft(Letter::Y)]) {
        return Ok(false);
    }
    let mut tower = IdealTower::new(&rels)?;
    let cubes = [0, 1].map(|i| NcPoly::<Scalar>::letter(Letter::from_bit(i)).pow(3));
    for d in 1..=max_degree.saturating_sub(3).max(1) {
        let slice = tower.slice(d + 3);
        for idx in 0..1usize << d {
            let m = NcPoly::monomial(Word::new(d, idx), Scalar::one());
            for c in &cubes {
                if !slice.contains(&c.mul(&m).sub(&m.mul(c))) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
