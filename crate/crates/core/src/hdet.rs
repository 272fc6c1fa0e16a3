//! Graded automorphisms of `J(w)` and their homological determinants.
//!
//! A linear `σ` extends to a graded automorphism exactly when it rescales the
//! superpotential, `σ(w) = λw`, and then `hdet σ = λ`.

use num_traits::{One, Zero};

use crate::classify::potentials_equivalent_in;
use crate::cy::cy_check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::{basis, in_sym4, Gl2, NcPoly};
use crate::scalars::{RootContext, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct AutCheck {
    pub sigma: Gl2,
    pub extends: bool,
    /// Eigenvalue of `σ` on the superpotential line.
    pub lambda: Option<Scalar>,
    pub det_sigma: Scalar,
    pub hdet: Option<Scalar>,
}

impl AutCheck {
    /// `hdet σ / (det σ)²`, when `σ` extends.
    pub fn ratio_to_detsq(&self) -> Option<Scalar> {
        let h = self.hdet.as_ref()?;
        Some(h.clone() / self.det_sigma.square())
    }
}

/// The `λ` with `σ(w) = λw`, for any homogeneous `w`. No cyclicity or
/// regularity is assumed, so twisted superpotentials work too.
pub fn eigenvalue(w: &NcPoly, sigma: &Gl2) -> Option<Scalar> {
    if w.is_zero() {
        return None;
    }
    w.apply_gl2(sigma).ratio_to(w)
}

fn require_cy(w: &NcPoly) -> Result<()> {
    if w.degree() != 4 || !w.is_superpotential() {
        return Err(Error::PreconditionViolated(
            "w must be a cyclic quartic".into(),
        ));
    }
    if !cy_check(w).is_cy() {
        return Err(Error::PreconditionViolated("J(w) is not Calabi-Yau".into()));
    }
    Ok(())
}

pub fn check_automorphism(w: &NcPoly, sigma: &Gl2) -> Result<AutCheck> {
    require_cy(w)?;
    if !sigma.is_invertible() {
        return Err(Error::PreconditionViolated("sigma is singular".into()));
    }
    let lambda = eigenvalue(w, sigma);
    Ok(AutCheck {
        sigma: sigma.clone(),
        extends: lambda.is_some(),
        hdet: lambda.clone(),
        lambda,
        det_sigma: sigma.det(),
    })
}

pub fn hdet_equals_detsq(w: &NcPoly, sigma: &Gl2) -> Result<bool> {
    let c = check_automorphism(w, sigma)?;
    match c.hdet {
        Some(h) => Ok(h == c.det_sigma.square()),
        None => Err(Error::PreconditionViolated(format!(
            "{sigma} does not extend to an automorphism"
        ))),
    }
}

/// `xy²+yxy+y²x+ax³`, `yx²+xyx+x²y+by³` come from `w₁ + w₂ + a·w₅ + b·w₆`.
pub fn sym4_potential(a: &Scalar, b: &Scalar) -> NcPoly {
    basis::<Scalar>(1)
        .add(&basis(2))
        .add(&basis::<Scalar>(5).scale(a))
        .add(&basis::<Scalar>(6).scale(b))
}

/// Up to scalars, the matrices `diag(1, ±1)`, the antidiagonals and
/// `((1, β), (−ξ, ξβ))` with `β⁴ = ξ⁴ = 1`, each also transposed.
pub fn structured_candidates(ctx: &mut RootContext) -> Result<Vec<Gl2>> {
    let i = ctx.sqrt(&Scalar::from_int(-1))?;
    let one = Scalar::one();
    let units = [one.clone(), -one.clone(), i.clone(), -i];
    let mut out: Vec<Gl2> = vec![
        Gl2::from_ints(1, 0, 0, 1),
        Gl2::from_ints(1, 0, 0, -1),
        Gl2::from_ints(0, 1, 1, 0),
        Gl2::from_ints(0, 1, -1, 0),
    ];
    for beta in &units {
        for xi in &units {
            let g = Gl2::new(
                one.clone(),
                beta.clone(),
                -xi.clone(),
                xi.clone() * beta.clone(),
            );
            let t = Gl2::new(g.a.clone(), g.c.clone(), g.b.clone(), g.d.clone());
            for h in [g, t] {
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    Ok(out)
}

/// Every structured candidate that extends on `w`, with its check.
pub fn structured_search(w: &NcPoly, ctx: &mut RootContext) -> Result<Vec<AutCheck>> {
    require_cy(w)?;
    let mut out = Vec::new();
    for s in structured_candidates(ctx)? {
        let c = check_automorphism(w, &s)?;
        if c.extends {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether some graded automorphism of `J(w)` has `hdet ≠ det²`. When it
/// does, a witness `σ` is returned.
///
/// Off `Sym⁴V` the answer is always no. On it, the exception is the algebra
/// with `a = b = √−3`; the witness is transported from that normal form.
pub fn is_hdet_exceptional(w: &NcPoly) -> Result<Option<Gl2>> {
    require_cy(w)?;
    if !in_sym4(w) {
        return Ok(None);
    }
    let mut ctx = RootContext::spanning(w.coeffs())?;
    let r3 = ctx.sqrt(&Scalar::from_int(-3))?;
    let reference = sym4_potential(&r3, &r3);
    let Some(tau) = potentials_equivalent_in(w, &reference, &mut ctx)? else {
        return Ok(None);
    };
    let back = tau.inverse().expect("invertible");
    for rho in structured_candidates(&mut ctx)? {
        let c = check_automorphism(&reference, &rho)?;
        if c.ratio_to_detsq().is_some_and(|r| !r.is_one()) {
            let sigma = back.compose(&rho.compose(&tau));
            debug_assert!(eigenvalue(w, &sigma).is_some());
            return Ok(Some(sigma));
        }
    }
    Err(Error::ExtensionUnavailable(
        "no structured witness found for the exceptional algebra".into(),
    ))
}

/// `(xy − yx)^{⊗m}`, spanning `(Alt²V)^{⊗m}`.
pub fn alt_power(m: usize) -> NcPoly {
    let a: NcPoly = NcPoly::from_terms(2, &[(Scalar::one(), "xy"), (-Scalar::one(), "yx")]);
    a.pow(m)
}

/// Checks `σ(w) = (det σ)^m w` for `w ∈ (Alt²V)^{⊗m}`.
pub fn detsq_power_check(sigma: &Gl2, m: usize, w: &NcPoly) -> Result<bool> {
    if w.degree() != 2 * m {
        return Err(Error::DegreeMismatch {
            expected: 2 * m,
            found: w.degree(),
        });
    }
    if w.is_zero() {
        return Ok(true);
    }
    if w.ratio_to(&alt_power(m)).is_none() {
        return Err(Error::PreconditionViolated(
            "w does not lie in (Alt²V)^⊗m".into(),
        ));
    }
    let d = sigma.det().pow(m as u32);
    Ok(w.apply_gl2(sigma) == w.scale(&d))
}

/// A primitive cube root of unity is a root of `t² + t + 1`.
pub fn is_primitive_cube_root(s: &Scalar) -> bool {
    (s.square() + s.clone() + Scalar::one()).is_zero()
}
