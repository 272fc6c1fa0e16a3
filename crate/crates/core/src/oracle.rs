//! Degree-by-degree linear algebra in the free algebra `k⟨x, y⟩`.
//!
//! For cubic relations `R`, the two-sided ideal in degree `n` is
//! `I_n = V·I_{n−1} + R·V^{n−3}`. Left multiplication by `x` and `y` lands in
//! disjoint halves of the word basis, so a reduced basis of `I_{n−1}` lifts to
//! a reduced basis of `V·I_{n−1}` for free and only `R·V^{n−3}` needs
//! elimination.
//!
//! Cost: degree `n` eliminates `2^{n−2}` vectors of length `2^n` against a
//! basis of rank below `2^n`, so each degree is roughly `8^n / 16` field
//! operations in the worst case. Degree 12 is the default cap.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Echelon;
use crate::ncpoly::{NcPoly, Word};
use crate::scalars::{RootContext, Scalar};
use crate::upoly::{rational_roots, UPoly};

pub const DEFAULT_DEGREE_CAP: usize = 12;

/// The degree-`n` part of the ideal generated by cubic relations.
#[derive(Clone, Debug)]
pub struct GradedIdealSlice<F: Field = Scalar> {
    degree: usize,
    basis: Echelon<F>,
}

impl<F: Field> GradedIdealSlice<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `dim T(V)_n / I_n`.
    pub fn quotient_dim(&self) -> usize {
        (1usize << self.degree) - self.rank()
    }

    /// A reduced spanning set.
    pub fn spanning(&self) -> Vec<NcPoly<F>> {
        self.basis
            .rows()
            .iter()
            .map(|r| NcPoly::from_coeffs(self.degree, r.clone()))
            .collect()
    }

    pub fn contains(&self, u: &NcPoly<F>) -> bool {
        u.degree() == self.degree && self.basis.contains(u.coeffs())
    }
}

/// Slices `I_0, I_1, …` built incrementally.
#[derive(Clone, Debug)]
pub struct IdealTower<F: Field = Scalar> {
    relations: Vec<NcPoly<F>>,
    slices: Vec<GradedIdealSlice<F>>,
}

impl<F: Field> IdealTower<F> {
    pub fn new(relations: &[NcPoly<F>]) -> Result<IdealTower<F>> {
        if let Some(r) = relations.iter().find(|r| r.degree() != 3) {
            return Err(Error::DegreeMismatch {
                expected: 3,
                found: r.degree(),
            });
        }
        Ok(IdealTower {
            relations: relations.to_vec(),
            slices: Vec::new(),
        })
    }

    pub fn slice(&mut self, n: usize) -> &GradedIdealSlice<F> {
        while self.slices.len() <= n {
            let next = self.build(self.slices.len());
            self.slices.push(next);
        }
        &self.slices[n]
    }

    fn build(&self, n: usize) -> GradedIdealSlice<F> {
        let ncols = 1usize << n;
        if n < 3 {
            return GradedIdealSlice {
                degree: n,
                basis: Echelon::new(ncols),
            };
        }
        let prev = &self.slices[n - 1];
        let half = ncols / 2;
        let mut rows = Vec::with_capacity(2 * prev.rank());
        let mut pivots = Vec::with_capacity(2 * prev.rank());
        for offset in [0, half] {
            for (r, &p) in prev.basis.rows().iter().zip(prev.basis.pivots()) {
                let mut v = vec![F::zero(); ncols];
                v[offset..offset + half].clone_from_slice(r);
                rows.push(v);
                pivots.push(offset + p);
            }
        }
        let mut basis = Echelon::from_reduced(ncols, rows, pivots);
        let k = n - 3;
        for r in &self.relations {
            for idx in 0..1usize << k {
                let m = NcPoly::monomial(Word::new(k, idx), F::one());
                basis.insert(r.mul(&m).coeffs().to_vec());
            }
        }
        GradedIdealSlice { degree: n, basis }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::PreconditionViolated(format!(
            "degree {n} is above the cap {cap}"
        )));
    }
    Ok(())
}

fn rational_relations(relations: &[NcPoly]) -> Option<Vec<NcPoly<Rational>>> {
    relations
        .iter()
        .map(|r| {
            let c: Option<Vec<Rational>> = r.coeffs().iter().map(|s| s.to_rational()).collect();
            c.map(|c| NcPoly::from_coeffs(r.degree(), c))
        })
        .collect()
}

fn dims_over<F: Field>(relations: &[NcPoly<F>], n: usize) -> Result<Vec<usize>> {
    let mut t = IdealTower::new(relations)?;
    Ok((0..=n).map(|k| t.slice(k).quotient_dim()).collect())
}

/// `dim (T(V)/(R))_k` for `k = 0..=n`, with `n` at most `cap`.
pub fn graded_dims_capped(relations: &[NcPoly], n: usize, cap: usize) -> Result<Vec<usize>> {
    check_cap(n, cap)?;
    match rational_relations(relations) {
        Some(rs) => dims_over(&rs, n),
        None => dims_over(relations, n),
    }
}

pub fn graded_dims(relations: &[NcPoly], n: usize) -> Result<Vec<usize>> {
    graded_dims_capped(relations, n, DEFAULT_DEGREE_CAP)
}

/// Whether `u` lies in the two-sided ideal generated by the relations.
pub fn ideal_member(u: &NcPoly, relations: &[NcPoly]) -> Result<bool> {
    check_cap(u.degree(), DEFAULT_DEGREE_CAP)?;
    if u.is_zero() {
        return Ok(true);
    }
    if let (Some(rs), Some(ur)) = (
        rational_relations(relations),
        rational_relations(std::slice::from_ref(u)),
    ) {
        let mut t = IdealTower::new(&rs)?;
        return Ok(t.slice(u.degree()).contains(&ur[0]));
    }
    let mut t = IdealTower::new(relations)?;
    Ok(t.slice(u.degree()).contains(u))
}

/// First `n + 1` coefficients of the power series `num / den`, `den(0) ≠ 0`.
pub fn series_division(num: &[i64], den: &[i64], n: usize) -> Result<Vec<Rational>> {
    let d0 = den.first().copied().unwrap_or(0);
    if d0 == 0 {
        return Err(Error::DivisionByZero);
    }
    let at = |v: &[i64], i: usize| Rational::from_integer(v.get(i).copied().unwrap_or(0).into());
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut s = at(num, k);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            s -= at(den, j) * out[k - j].clone();
        }
        out.push(s / at(den, 0));
    }
    Ok(out)
}

/// The Hilbert series `1/((1−t)²(1−t²))` of a cubic AS-regular algebra,
/// through degree `n`.
pub fn cubic_regular_series(n: usize) -> Vec<usize> {
    // (1−t)²(1−t²) = 1 − 2t + 2t³ − t⁴
    series_division(&[1], &[1, -2, 0, 2, -1], n)
        .expect("den(0) = 1")
        .into_iter()
        .map(|c| c.to_integer().try_into().expect("small nonnegative"))
        .collect()
}

/// A linear form `u·x + v·y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub u: Scalar,
    pub v: Scalar,
}

impl LinearForm {
    pub fn as_poly(&self) -> NcPoly {
        NcPoly::from_terms(1, &[(self.u.clone(), "x"), (self.v.clone(), "y")])
    }

    pub fn cube(&self) -> NcPoly {
        self.as_poly().pow(3)
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

/// A linear form whose cube lies in `span R`, so that it is nilpotent in
/// `T(V)/(R)`. Solves for `t` in `(x + t·y)³ ∈ span R`, then tries `y³`.
pub fn nilpotent_linear_form(relations: &[NcPoly]) -> Result<Option<LinearForm>> {
    if let Some(r) = relations.iter().find(|r| r.degree() != 3) {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: r.degree(),
        });
    }
    let mut ctx = RootContext::spanning(relations.iter().flat_map(|r| r.coeffs()))?;
    let span = Echelon::from_rows(
        8,
        relations
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect::<Vec<_>>()
            .iter(),
    );
    // (x + ty)³ = Σ_k t^k m_k with m_k the words holding k letters y
    let residue: Vec<Vec<Scalar>> = (0..=3)
        .map(|k| {
            let m: Vec<Scalar> = (0..8usize)
                .map(|i| {
                    if i.count_ones() as usize == k {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect();
            span.reduce(&m)
        })
        .collect();
    let comps: Vec<UPoly<Scalar>> = (0..8)
        .map(|j| UPoly::new(residue.iter().map(|r| r[j].clone()).collect()))
        .collect();
    let g = comps.iter().fold(UPoly::zero(), |g, c| g.gcd(c));
    let form = |t: Scalar| LinearForm {
        u: Scalar::one(),
        v: t,
    };
    if g.is_zero() || g.coeff(0).is_zero() {
        return Ok(Some(form(Scalar::zero())));
    }
    if residue[3].iter().all(|c| c.is_zero()) {
        return Ok(Some(LinearForm {
            u: Scalar::zero(),
            v: Scalar::one(),
        }));
    }
    let roots = match g.degree() {
        Some(0) => return Ok(None),
        Some(1) => vec![-(g.coeff(0) / g.coeff(1))],
        Some(2) => {
            let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
            let disc = b.square() - Scalar::from_int(4) * a.clone() * c;
            let s = ctx
                .sqrt(&disc)
                .map_err(|e| e.into_extension("a nilpotent form"))?;
            vec![(s - b) / (Scalar::from_int(2) * a)]
        }
        _ => {
            let rational: Option<Vec<Rational>> =
                g.coeffs().iter().map(|c| c.to_rational()).collect();
            let rs = rational
                .map(|c| rational_roots(&UPoly::new(c)))
                .unwrap_or_default();
            if rs.is_empty() {
                return Err(Error::ExtensionUnavailable(format!(
                    "the cube condition {g} has no root in a quadratic tower"
                )));
            }
            rs.into_iter().map(Scalar::from_rational).collect()
        }
    };
    let w = form(roots[0].clone());
    debug_assert!(span.contains(w.cube().coeffs()));
    Ok(Some(w))
}
