//! Exact scalars: the rationals and towers of quadratic-radical extensions.
//!
//! A tower of depth `n` adjoins square roots `s_0, ..., s_{n-1}` one level at a
//! time, where `s_k^2 = r_k` and `r_k` is a non-square element of level `k`.
//! An element is stored as `2^n` rational coordinates against the monomials
//! `s_0^{b_0} ... s_{n-1}^{b_{n-1}}`, with bit `k` of the index giving `b_k`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

pub const DEFAULT_DEPTH_LIMIT: usize = 4;

#[derive(Debug)]
struct TowerInner {
    /// Radicand `k` as flat coordinates over level `k` (length `2^k`).
    radicands: Vec<Vec<Rational>>,
    limit: usize,
}

/// A chain `Q ⊂ Q(s_0) ⊂ Q(s_0, s_1) ⊂ ...` of quadratic extensions.
#[derive(Clone, Debug)]
pub struct FieldTower(Arc<TowerInner>);

/// An element of a [`FieldTower`].
#[derive(Clone, Debug)]
pub struct Scalar {
    tower: FieldTower,
    coords: Vec<Rational>,
}

fn base_tower() -> &'static FieldTower {
    static BASE: OnceLock<FieldTower> = OnceLock::new();
    BASE.get_or_init(|| FieldTower::with_limit(DEFAULT_DEPTH_LIMIT))
}

impl FieldTower {
    /// The rationals, with the default depth limit.
    pub fn rationals() -> FieldTower {
        base_tower().clone()
    }

    /// The rationals, allowing at most `limit` adjoined roots.
    pub fn with_limit(limit: usize) -> FieldTower {
        FieldTower(Arc::new(TowerInner {
            radicands: Vec::new(),
            limit,
        }))
    }

    pub fn depth(&self) -> usize {
        self.0.radicands.len()
    }

    pub fn limit(&self) -> usize {
        self.0.limit
    }

    fn dim(&self) -> usize {
        1 << self.depth()
    }

    /// The first `k` levels of this tower.
    pub fn prefix(&self, k: usize) -> FieldTower {
        assert!(k <= self.depth());
        if k == self.depth() {
            return self.clone();
        }
        FieldTower(Arc::new(TowerInner {
            radicands: self.0.radicands[..k].to_vec(),
            limit: self.0.limit,
        }))
    }

    /// The radicand `r_k`, an element of the level-`k` prefix.
    pub fn radicand(&self, k: usize) -> Scalar {
        Scalar {
            tower: self.prefix(k),
            coords: self.0.radicands[k].clone(),
        }
    }

    /// The generator `s_k = sqrt(r_k)` as an element of this tower.
    pub fn generator(&self, k: usize) -> Scalar {
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[1 << k] = Rational::one();
        Scalar {
            tower: self.clone(),
            coords,
        }
    }

    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.depth() <= other.depth()
            && self
                .0
                .radicands
                .iter()
                .zip(other.0.radicands.iter())
                .all(|(a, b)| a == b)
    }

    /// The smaller of two towers embedded in the larger.
    /// A bare `Q` adopts the other side's depth limit.
    pub fn unify(&self, other: &FieldTower) -> Result<FieldTower> {
        if other.depth() == 0 {
            Ok(self.clone())
        } else if self.is_prefix_of(other) {
            Ok(other.clone())
        } else if other.is_prefix_of(self) {
            Ok(self.clone())
        } else {
            Err(Error::IncompatibleTowers)
        }
    }

    /// Adjoins `sqrt(r)`. When `r` already has a root here the tower is
    /// returned unchanged together with that root; otherwise the new
    /// generator is the root.
    pub fn adjoin_sqrt(&self, r: &Scalar) -> Result<(FieldTower, Scalar)> {
        let base = self.unify(&r.tower)?;
        let r = r.lift(&base)?;
        if let Some(root) = r.sqrt_in_tower() {
            return Ok((base, root));
        }
        if base.depth() >= base.limit() {
            return Err(Error::TowerDepthExceeded {
                limit: base.limit(),
            });
        }
        let mut radicands = base.0.radicands.clone();
        radicands.push(r.coords);
        let tower = FieldTower(Arc::new(TowerInner {
            radicands,
            limit: base.limit(),
        }));
        let root = tower.generator(tower.depth() - 1);
        Ok((tower, root))
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.depth() == other.depth() && self.is_prefix_of(other)
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        if self.depth() > 0 {
            let gens: Vec<String> = (0..self.depth())
                .map(|k| format!("sqrt({})", self.radicand(k)))
                .collect();
            write!(f, "({})", gens.join(", "))?;
        }
        Ok(())
    }
}

// Flat-coordinate kernels. `rads[k]` has length `2^k`; an operand of length
// `2^(k+1)` splits as `lo + hi * s_k`.

fn is_zero_slice(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn add_flat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_flat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale_flat(a: &[Rational], q: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * q).collect()
}

fn mul_flat(a: &[Rational], b: &[Rational], rads: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let level = h.trailing_zeros() as usize;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let a1z = is_zero_slice(a1);
    let b1z = is_zero_slice(b1);
    let mut out = Vec::with_capacity(n);
    if a1z && b1z {
        out.extend(mul_flat(a0, b0, rads));
        out.extend(std::iter::repeat_n(Rational::zero(), h));
        return out;
    }
    if a1z {
        out.extend(mul_flat(a0, b0, rads));
        out.extend(mul_flat(a0, b1, rads));
        return out;
    }
    if b1z {
        out.extend(mul_flat(a0, b0, rads));
        out.extend(mul_flat(a1, b0, rads));
        return out;
    }
    let p = mul_flat(a0, b0, rads);
    let q = mul_flat(a1, b1, rads);
    let qr = mul_flat(&q, &rads[level], rads);
    let cross = mul_flat(&add_flat(a0, a1), &add_flat(b0, b1), rads);
    out.extend(add_flat(&p, &qr));
    out.extend(sub_flat(&sub_flat(&cross, &p), &q));
    out
}

fn inv_flat(a: &[Rational], rads: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 1 {
        return if a[0].is_zero() {
            None
        } else {
            Some(vec![a[0].recip()])
        };
    }
    let h = n / 2;
    let level = h.trailing_zeros() as usize;
    let (a0, a1) = a.split_at(h);
    if is_zero_slice(a1) {
        let mut out = inv_flat(a0, rads)?;
        out.extend(std::iter::repeat_n(Rational::zero(), h));
        return Some(out);
    }
    // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - a1^2 r)
    let a1sq = mul_flat(a1, a1, rads);
    let norm = sub_flat(
        &mul_flat(a0, a0, rads),
        &mul_flat(&a1sq, &rads[level], rads),
    );
    let ninv = inv_flat(&norm, rads)?;
    let mut out = mul_flat(a0, &ninv, rads);
    let neg_a1: Vec<Rational> = a1.iter().map(|x| -x).collect();
    out.extend(mul_flat(&neg_a1, &ninv, rads));
    Some(out)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

fn sqrt_flat(a: &[Rational], rads: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 1 {
        return rational_sqrt(&a[0]).map(|r| vec![r]);
    }
    let h = n / 2;
    let level = h.trailing_zeros() as usize;
    let r = &rads[level];
    let (a0, a1) = a.split_at(h);
    let zero_half = || vec![Rational::zero(); h];
    if is_zero_slice(a1) {
        if let Some(c) = sqrt_flat(a0, rads) {
            let mut out = c;
            out.extend(zero_half());
            return Some(out);
        }
        // a0 = d^2 r  =>  root d s
        let rinv = inv_flat(r, rads)?;
        let d = sqrt_flat(&mul_flat(a0, &rinv, rads), rads)?;
        let mut out = zero_half();
        out.extend(d);
        return Some(out);
    }
    // (c + d s)^2 = a0 + a1 s  =>  c^2 = (a0 ± sqrt(a0^2 - a1^2 r)) / 2, d = a1 / 2c
    let a1sq = mul_flat(a1, a1, rads);
    let norm = sub_flat(&mul_flat(a0, a0, rads), &mul_flat(&a1sq, r, rads));
    let nroot = sqrt_flat(&norm, rads)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for cand in [add_flat(a0, &nroot), sub_flat(a0, &nroot)] {
        let c2 = scale_flat(&cand, &half);
        if is_zero_slice(&c2) {
            continue;
        }
        if let Some(c) = sqrt_flat(&c2, rads) {
            let two_c_inv = inv_flat(&scale_flat(&c, &Rational::from_integer(2.into())), rads)?;
            let d = mul_flat(a1, &two_c_inv, rads);
            let mut out = c;
            out.extend(d);
            return Some(out);
        }
    }
    None
}

impl Scalar {
    pub fn from_rational(q: Rational) -> Scalar {
        Scalar {
            tower: FieldTower::rationals(),
            coords: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The rational `q` viewed in `tower`.
    pub fn rational_in(q: Rational, tower: &FieldTower) -> Scalar {
        let mut coords = vec![Rational::zero(); tower.dim()];
        coords[0] = q;
        Scalar {
            tower: tower.clone(),
            coords,
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Flat coordinates against the tower's monomial basis.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        is_zero_slice(&self.coords[1..])
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Embeds into an extension of this scalar's tower.
    pub fn lift(&self, tower: &FieldTower) -> Result<Scalar> {
        if !self.tower.is_prefix_of(tower) {
            return Err(Error::IncompatibleTowers);
        }
        let mut coords = self.coords.clone();
        coords.resize(tower.dim(), Rational::zero());
        Ok(Scalar {
            tower: tower.clone(),
            coords,
        })
    }

    fn unified(&self, other: &Scalar) -> Result<(Scalar, Scalar)> {
        if Arc::ptr_eq(&self.tower.0, &other.tower.0) {
            return Ok((self.clone(), other.clone()));
        }
        let t = self.tower.unify(&other.tower)?;
        Ok((self.lift(&t)?, other.lift(&t)?))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.unified(other)?;
        Ok(Scalar {
            coords: add_flat(&a.coords, &b.coords),
            tower: a.tower,
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.unified(other)?;
        Ok(Scalar {
            coords: sub_flat(&a.coords, &b.coords),
            tower: a.tower,
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.is_rational() {
            let t = self.tower.unify(&other.tower)?;
            let o = other.lift(&t)?;
            return Ok(Scalar {
                coords: scale_flat(&o.coords, &self.coords[0]),
                tower: t,
            });
        }
        if other.is_rational() {
            return other.try_mul(self);
        }
        let (a, b) = self.unified(other)?;
        Ok(Scalar {
            coords: mul_flat(&a.coords, &b.coords, &a.tower.0.radicands),
            tower: a.tower,
        })
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        let coords =
            inv_flat(&self.coords, &self.tower.0.radicands).ok_or(Error::DivisionByZero)?;
        Ok(Scalar {
            tower: self.tower.clone(),
            coords,
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.try_inv()?)
    }

    /// A square root inside the current tower, or `None` when `self` is not a
    /// square there.
    pub fn sqrt_in_tower(&self) -> Option<Scalar> {
        sqrt_flat(&self.coords, &self.tower.0.radicands).map(|coords| Scalar {
            tower: self.tower.clone(),
            coords,
        })
    }

    /// A square root, extending the tower when necessary.
    pub fn sqrt_adjoin(&self) -> Result<Scalar> {
        self.tower.adjoin_sqrt(self).map(|(_, root)| root)
    }

    /// Number of nonzero monomial terms in the printed form.
    pub fn term_count(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match self.unified(other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_int(0)
    }
    fn is_zero(&self) -> bool {
        is_zero_slice(&self.coords)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coords: self.coords.iter().map(|c| -c).collect(),
            tower: self.tower,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

// Operator forms panic on incompatible towers or division by zero; the
// `try_*` methods report those as errors.
macro_rules! scalar_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$try(&rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
    };
}

scalar_op!(Add, add, try_add);
scalar_op!(Sub, sub, try_sub);
scalar_op!(Mul, mul, try_mul);
scalar_op!(Div, div, try_div);

impl Field for Scalar {
    fn from_rational(q: Rational) -> Self {
        Scalar::from_rational(q)
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Tower syntax, e.g. `1/2 + sqrt(-3)`; re-readable by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let roots: Vec<String> = (0..self.tower.depth())
                .filter(|k| i >> k & 1 == 1)
                .map(|k| format!("sqrt({})", self.tower.radicand(k)))
                .collect();
            let neg = c.numer().sign() == Sign::Minus;
            let mag = c.abs();
            let body = if roots.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                roots.join("*")
            } else {
                format!("{}*{}", fmt_rational(&mag), roots.join("*"))
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A growing tower shared by a computation, so every root it adjoins lands
/// in one compatible field.
#[derive(Clone, Debug)]
pub struct RootContext {
    tower: FieldTower,
}

impl RootContext {
    pub fn new(tower: FieldTower) -> RootContext {
        RootContext { tower }
    }

    /// The smallest tower in the chain holding every input.
    pub fn spanning<'a>(scalars: impl IntoIterator<Item = &'a Scalar>) -> Result<RootContext> {
        let mut tower = FieldTower::rationals();
        for s in scalars {
            tower = tower.unify(s.tower())?;
        }
        Ok(RootContext { tower })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Widens the context so it also holds `s`.
    pub fn absorb(&mut self, s: &Scalar) -> Result<()> {
        self.tower = self.tower.unify(s.tower())?;
        Ok(())
    }

    /// A square root of `r`, adjoining one when needed.
    pub fn sqrt(&mut self, r: &Scalar) -> Result<Scalar> {
        let (tower, root) = self.tower.adjoin_sqrt(r)?;
        self.tower = tower;
        Ok(root)
    }

    /// A square root only if it already exists in the context.
    pub fn sqrt_existing(&self, r: &Scalar) -> Option<Scalar> {
        let t = self.tower.unify(r.tower()).ok()?;
        r.lift(&t).ok()?.sqrt_in_tower()
    }
}
