//! Dense univariate polynomials, used for affine charts of binary forms.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};

/// Coefficients from the constant term upward; never has trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> UPoly<F> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly<F> {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UPoly<F> {
        UPoly::new(vec![F::one()])
    }

    /// `t - r`.
    pub fn linear_root(r: F) -> UPoly<F> {
        UPoly::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &F) -> UPoly<F> {
        UPoly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> UPoly<F> {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UPoly<F> {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly<F>) -> (UPoly<F>, UPoly<F>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let li = d.lead().inv().expect("nonzero lead");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * li.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly<F> {
        match self.lead().inv() {
            Some(li) => self.scale(&li),
            None => UPoly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly<F>) -> UPoly<F> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly<F>) -> Option<UPoly<F>> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// All distinct rational roots of a nonzero rational polynomial.
///
/// Clears denominators, makes the polynomial monic over the integers by
/// `s = a_n t`, then isolates integer roots between consecutive roots of the
/// derivative by bisection.
pub fn rational_roots(p: &UPoly<Rational>) -> Vec<Rational> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    // Strip roots at zero first.
    let lowest = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if lowest > 0 {
        roots.push(Rational::zero());
    }
    let p = UPoly::new(p.coeffs()[lowest..].to_vec());
    let n = p.degree().unwrap();
    if n == 0 {
        return roots;
    }
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let lead = ints[n].clone();
    // monic: s^n + Σ a_i a_n^{n-1-i} s^i
    let monic: Vec<BigInt> = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                &ints[i] * num_traits::pow(lead.clone(), n - 1 - i)
            }
        })
        .collect();
    for s in integer_roots(&monic) {
        roots.push(Rational::new(s, lead.clone()));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn eval_int(p: &[BigInt], t: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// Integer roots of an integer polynomial with nonzero constant term.
fn integer_roots(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    if n == 1 {
        let (q, r) = (-&p[0]).div_rem(&p[1]);
        return if r.is_zero() { vec![q] } else { vec![] };
    }
    // Cauchy bound on |root|.
    let lead = p[n].abs();
    let bound: BigInt = p[..n].iter().map(|c| c.abs()).max().unwrap_or_default() / &lead + 1;
    // Critical points: integer brackets around real roots of p'.
    let dp: Vec<BigInt> = (1..=n).map(|i| &p[i] * BigInt::from(i)).collect();
    let mut cuts = vec![-bound.clone() - 1];
    for c in integer_roots_bracket(&dp) {
        cuts.push(c);
    }
    cuts.push(bound + 1);
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::new();
    for c in &cuts {
        if eval_int(p, c).is_zero() {
            out.push(c.clone());
        }
    }
    for w in cuts.windows(2) {
        if let Some(r) = bisect(p, &w[0], &w[1]) {
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Integers `floor(r)` and `floor(r) + 1` for each real root `r` of `p`, so
/// that `p` is monotone between consecutive returned values plus endpoints.
fn integer_roots_bracket(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = p[n].abs();
    let bound: BigInt = p[..n].iter().map(|c| c.abs()).max().unwrap_or_default() / &lead + 2;
    let dp: Vec<BigInt> = (1..=n).map(|i| &p[i] * BigInt::from(i)).collect();
    let mut cuts = vec![-bound.clone()];
    cuts.extend(integer_roots_bracket(&dp));
    cuts.push(bound);
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let (slo, shi) = (eval_int(p, lo).sign(), eval_int(p, hi).sign());
        if slo == Sign::NoSign {
            out.push(lo.clone());
        }
        if shi == Sign::NoSign {
            out.push(hi.clone());
        }
        if slo != Sign::NoSign && shi != Sign::NoSign && slo != shi {
            // shrink to adjacent integers with a sign change
            let (mut a, mut b) = (lo.clone(), hi.clone());
            while &b - &a > BigInt::one() {
                let m: BigInt = (&a + &b) >> 1;
                let sm = eval_int(p, &m).sign();
                if sm == Sign::NoSign {
                    a = m.clone();
                    b = m;
                    break;
                }
                if sm == slo {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(a);
            out.push(b);
        }
    }
    out
}

/// The integer root of `p` in `[lo, hi]` when `p` is monotone there.
fn bisect(p: &[BigInt], lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    let (slo, shi) = (eval_int(p, lo).sign(), eval_int(p, hi).sign());
    if slo == Sign::NoSign {
        return Some(lo.clone());
    }
    if shi == Sign::NoSign {
        return Some(hi.clone());
    }
    if slo == shi {
        return None;
    }
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > BigInt::one() {
        let m: BigInt = (&a + &b) >> 1;
        let sm = eval_int(p, &m).sign();
        if sm == Sign::NoSign {
            return Some(m);
        }
        if sm == slo {
            a = m;
        } else {
            b = m;
        }
    }
    None
}
