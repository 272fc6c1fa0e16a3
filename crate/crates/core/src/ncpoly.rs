//! Homogeneous noncommutative polynomials in `x`, `y`.
//!
//! A polynomial of degree `m` is a dense vector of `2^m` coefficients indexed
//! by words: the first letter is the most significant bit and `x = 0`, so
//! index order is the deglex order with `x < y`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{write_terms, Field};
use crate::scalars::Scalar;

/// Degrees above this are refused; `2^MAX_DEGREE` coefficients is the cap.
pub const MAX_DEGREE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn bit(self) -> usize {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }

    pub fn from_bit(b: usize) -> Letter {
        if b == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }
}

/// A word over `{x, y}`; ordering is deglex with `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u32,
}

impl Word {
    pub fn new(len: usize, index: usize) -> Word {
        assert!(len <= MAX_DEGREE && index < (1 << len));
        Word {
            len: len as u8,
            bits: index as u32,
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        let index = letters.iter().fold(0usize, |acc, l| acc << 1 | l.bit());
        Word::new(letters.len(), index)
    }

    /// Parses a string of `x`/`y` characters.
    pub fn parse(s: &str) -> Option<Word> {
        let letters: Option<Vec<Letter>> = s
            .chars()
            .map(|c| match c {
                'x' => Some(Letter::X),
                'y' => Some(Letter::Y),
                _ => None,
            })
            .collect();
        letters.map(|l| Word::from_letters(&l))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn letter(&self, pos: usize) -> Letter {
        Letter::from_bit(self.index() >> (self.len() - 1 - pos) & 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.len()).map(|p| self.letter(p)).collect()
    }

    pub fn y_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(
            self.len() + other.len(),
            self.index() << other.len() | other.index(),
        )
    }

    /// Run-length form such as `x^2*y*x`; the empty word prints as `1`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let letters = self.letters();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = if letters[i] == Letter::X { "x" } else { "y" };
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", if l == Letter::X { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` acting by `x ↦ a x + c y`, `y ↦ b x + d y`:
/// columns are the images of the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2<F: Field = Scalar> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Gl2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Gl2<F> {
        Gl2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Gl2<F> {
        Gl2::new(
            F::from_i64(a),
            F::from_i64(b),
            F::from_i64(c),
            F::from_i64(d),
        )
    }

    pub fn identity() -> Gl2<F> {
        Gl2::from_ints(1, 0, 0, 1)
    }

    pub fn swap() -> Gl2<F> {
        Gl2::from_ints(0, 1, 1, 0)
    }

    pub fn diag(a: F, d: F) -> Gl2<F> {
        Gl2::new(a, F::zero(), F::zero(), d)
    }

    /// The matrix whose columns are `sigma(x)` and `sigma(y)` given as
    /// `(x-coefficient, y-coefficient)` pairs.
    pub fn from_images(sx: (F, F), sy: (F, F)) -> Gl2<F> {
        Gl2::new(sx.0, sy.0, sx.1, sy.1)
    }

    pub fn det(&self) -> F {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<Gl2<F>> {
        let di = self.det().inv()?;
        Some(Gl2::new(
            self.d.clone() * di.clone(),
            -(self.b.clone() * di.clone()),
            -(self.c.clone() * di.clone()),
            self.a.clone() * di,
        ))
    }

    /// Matrix product; as substitutions, `self.compose(t)` applies `t` first.
    pub fn compose(&self, t: &Gl2<F>) -> Gl2<F> {
        let m = |p: &F, q: &F, r: &F, s: &F| p.clone() * q.clone() + r.clone() * s.clone();
        Gl2::new(
            m(&self.a, &t.a, &self.b, &t.c),
            m(&self.a, &t.b, &self.b, &t.d),
            m(&self.c, &t.a, &self.d, &t.c),
            m(&self.c, &t.b, &self.d, &t.d),
        )
    }

    pub fn scale(&self, s: &F) -> Gl2<F> {
        Gl2::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    /// The matrix as a linear map on column vectors `(p, q)`.
    pub fn apply_vec(&self, v: &(F, F)) -> (F, F) {
        (
            self.a.clone() * v.0.clone() + self.b.clone() * v.1.clone(),
            self.c.clone() * v.0.clone() + self.d.clone() * v.1.clone(),
        )
    }
}

impl<F: Field> fmt::Display for Gl2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A homogeneous element of `V^{⊗m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<F: Field = Scalar> {
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> NcPoly<F> {
    pub fn zero(degree: usize) -> NcPoly<F> {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        NcPoly {
            degree,
            coeffs: vec![F::zero(); 1 << degree],
        }
    }

    pub fn constant(c: F) -> NcPoly<F> {
        NcPoly {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<F>) -> NcPoly<F> {
        assert_eq!(coeffs.len(), 1 << degree);
        NcPoly { degree, coeffs }
    }

    pub fn monomial(word: Word, c: F) -> NcPoly<F> {
        let mut p = NcPoly::zero(word.len());
        p.coeffs[word.index()] = c;
        p
    }

    /// `Σ c_i w_i` from `(coefficient, "xyxy")` pairs; panics on malformed words.
    pub fn from_terms(degree: usize, terms: &[(F, &str)]) -> NcPoly<F> {
        let mut p = Self::zero(degree);
        for (c, w) in terms {
            let word = Word::parse(w).expect("word over x, y");
            assert_eq!(word.len(), degree);
            p.coeffs[word.index()] = p.coeffs[word.index()].clone() + c.clone();
        }
        p
    }

    pub fn letter(l: Letter) -> NcPoly<F> {
        NcPoly::monomial(Word::new(1, l.bit()), F::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, w: &Word) -> &F {
        assert_eq!(w.len(), self.degree);
        &self.coeffs[w.index()]
    }

    /// Coefficient of the word spelled `s` (e.g. `"xyxy"`).
    pub fn coeff_of(&self, s: &str) -> F {
        self.coeff(&Word::parse(s).expect("word over x, y")).clone()
    }

    pub fn set_coeff(&mut self, w: &Word, c: F) {
        assert_eq!(w.len(), self.degree);
        self.coeffs[w.index()] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms in deglex order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &F)> {
        let m = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (Word::new(m, i), c))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> NcPoly<G> {
        NcPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_degree(&self, other: &NcPoly<F>) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NcPoly<F>) -> Result<NcPoly<F>> {
        self.check_degree(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &NcPoly<F>) -> Result<NcPoly<F>> {
        self.check_degree(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    fn zip(&self, other: &NcPoly<F>, f: impl Fn(&F, &F) -> F) -> NcPoly<F> {
        NcPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Same-degree sum; panics on a degree mismatch.
    pub fn add(&self, other: &NcPoly<F>) -> NcPoly<F> {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &NcPoly<F>) -> NcPoly<F> {
        self.try_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self) -> NcPoly<F> {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &F) -> NcPoly<F> {
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    /// The scalar `s` with `self = s·other`, when `other ≠ 0` and one exists.
    pub fn ratio_to(&self, other: &NcPoly<F>) -> Option<F> {
        if self.degree != other.degree {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let s = self.coeffs[k].clone() * other.coeffs[k].inv()?;
        (*self == other.scale(&s)).then_some(s)
    }

    /// Tensor (concatenation) product.
    pub fn mul(&self, other: &NcPoly<F>) -> NcPoly<F> {
        let n = other.degree;
        let mut out = Self::zero(self.degree + n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = i << n | j;
                out.coeffs[k] = out.coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> NcPoly<F> {
        let mut acc = NcPoly::constant(F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `θ(v_1⊗…⊗v_m) = v_{θ(1)}⊗…⊗v_{θ(m)}` with `theta` given 0-based:
    /// output position `i` takes input position `theta[i]`.
    pub fn permute(&self, theta: &[usize]) -> Result<NcPoly<F>> {
        let m = self.degree;
        if theta.len() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: theta.len(),
            });
        }
        let mut seen = vec![false; m];
        for &t in theta {
            if t >= m || seen[t] {
                return Err(Error::PreconditionViolated(
                    "permutation is not a bijection".into(),
                ));
            }
            seen[t] = true;
        }
        let mut out = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut j = 0usize;
            for &src in theta {
                j = j << 1 | (i >> (m - 1 - src) & 1);
            }
            out.coeffs[j] = out.coeffs[j].clone() + c.clone();
        }
        Ok(out)
    }

    /// The cyclic shift `φ(v_1⊗…⊗v_m) = v_m⊗v_1⊗…⊗v_{m-1}`.
    pub fn phi(&self) -> NcPoly<F> {
        let m = self.degree;
        if m == 0 {
            return self.clone();
        }
        let theta: Vec<usize> = std::iter::once(m - 1).chain(0..m - 1).collect();
        self.permute(&theta).expect("valid cycle")
    }

    /// Cyclic average `c(w) = (1/m) Σ φ^i(w)`.
    pub fn project_c(&self) -> NcPoly<F> {
        let m = self.degree;
        if m == 0 {
            return self.clone();
        }
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..m {
            cur = cur.phi();
            acc = acc.add(&cur);
        }
        acc.scale(&F::frac(1, m as i64))
    }

    /// Symmetrizer: the average over `S_m`. A word's orbit is every word with
    /// the same letter counts, each hit equally often.
    pub fn project_s(&self) -> NcPoly<F> {
        let m = self.degree;
        let mut by_count = vec![F::zero(); m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = i.count_ones() as usize;
            by_count[k] = by_count[k].clone() + c.clone();
        }
        let mut out = NcPoly::zero(m);
        for (i, slot) in out.coeffs.iter_mut().enumerate() {
            let k = i.count_ones() as usize;
            *slot = by_count[k].clone() * F::frac(1, binomial(m, k) as i64);
        }
        out
    }

    /// Antisymmetrizer: the signed average over `S_m`. Any word with a
    /// repeated letter is killed by the transposition of those positions, so
    /// only degrees up to 2 survive.
    pub fn project_a(&self) -> NcPoly<F> {
        let m = self.degree;
        match m {
            0 | 1 => self.clone(),
            2 => {
                let half = F::frac(1, 2);
                let d = (self.coeffs[1].clone() - self.coeffs[2].clone()) * half;
                NcPoly::from_coeffs(2, vec![F::zero(), d.clone(), -d, F::zero()])
            }
            _ => NcPoly::zero(m),
        }
    }

    pub fn is_superpotential(&self) -> bool {
        self.phi() == *self
    }

    /// Letterwise substitution `x ↦ a x + c y`, `y ↦ b x + d y`, applied one
    /// tensor factor at a time.
    pub fn apply_gl2(&self, s: &Gl2<F>) -> NcPoly<F> {
        let m = self.degree;
        let mut v = self.coeffs.clone();
        for pos in 0..m {
            let bit = 1usize << (m - 1 - pos);
            for i in 0..v.len() {
                if i & bit != 0 {
                    continue;
                }
                let ux = v[i].clone();
                let uy = v[i | bit].clone();
                if ux.is_zero() && uy.is_zero() {
                    continue;
                }
                v[i] = s.a.clone() * ux.clone() + s.b.clone() * uy.clone();
                v[i | bit] = s.c.clone() * ux + s.d.clone() * uy;
            }
        }
        NcPoly {
            degree: m,
            coeffs: v,
        }
    }

    /// `∂_l w`: strip a leading `l` from every word, dropping the others.
    pub fn dleft(&self, l: Letter) -> NcPoly<F> {
        assert!(self.degree >= 1, "dleft needs degree >= 1");
        let n = self.degree - 1;
        let base = l.bit() << n;
        NcPoly {
            degree: n,
            coeffs: (0..1usize << n)
                .map(|v| self.coeffs[base | v].clone())
                .collect(),
        }
    }

    /// `w ∂_l`: strip a trailing `l`.
    pub fn dright(&self, l: Letter) -> NcPoly<F> {
        assert!(self.degree >= 1, "dright needs degree >= 1");
        let n = self.degree - 1;
        NcPoly {
            degree: n,
            coeffs: (0..1usize << n)
                .map(|v| self.coeffs[v << 1 | l.bit()].clone())
                .collect(),
        }
    }

    /// Whether `x·∂_x w + y·∂_y w = w` and `w∂_x·x + w∂_y·y = w`.
    pub fn reconstruct_identity_check(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let x = NcPoly::letter(Letter::X);
        let y = NcPoly::letter(Letter::Y);
        let left = x
            .mul(&self.dleft(Letter::X))
            .add(&y.mul(&self.dleft(Letter::Y)));
        let right = self
            .dright(Letter::X)
            .mul(&x)
            .add(&self.dright(Letter::Y).mul(&y));
        left == *self && right == *self
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// The basis `w_1..w_6` of cyclic quartics, plus `w_0 = xyxy - xy²x - yx²y + yxyx`.
pub fn basis<F: Field>(i: usize) -> NcPoly<F> {
    let one = || F::one();
    let m1 = || -F::one();
    match i {
        0 => NcPoly::from_terms(
            4,
            &[
                (one(), "xyxy"),
                (m1(), "xyyx"),
                (m1(), "yxxy"),
                (one(), "yxyx"),
            ],
        ),
        1 => NcPoly::from_terms(
            4,
            &[
                (one(), "xxyy"),
                (one(), "xyyx"),
                (one(), "yyxx"),
                (one(), "yxxy"),
            ],
        ),
        2 => NcPoly::from_terms(4, &[(one(), "xyxy"), (one(), "yxyx")]),
        3 => NcPoly::from_terms(
            4,
            &[
                (one(), "xxxy"),
                (one(), "xxyx"),
                (one(), "xyxx"),
                (one(), "yxxx"),
            ],
        ),
        4 => NcPoly::from_terms(
            4,
            &[
                (one(), "yyyx"),
                (one(), "yyxy"),
                (one(), "yxyy"),
                (one(), "xyyy"),
            ],
        ),
        5 => NcPoly::from_terms(4, &[(one(), "xxxx")]),
        6 => NcPoly::from_terms(4, &[(one(), "yyyy")]),
        _ => panic!("basis index {i} out of range 0..=6"),
    }
}

/// `Σ c_i w_i` for `c = (c_1, ..., c_6)`.
pub fn from_sp_coords<F: Field>(c: &[F; 6]) -> NcPoly<F> {
    (1..=6).fold(NcPoly::zero(4), |acc, i| {
        acc.add(&basis::<F>(i).scale(&c[i - 1]))
    })
}

/// Coordinates against `w_1..w_6`, or `None` when `w` is not cyclic.
pub fn sp_coords<F: Field>(w: &NcPoly<F>) -> Option<[F; 6]> {
    if w.degree() != 4 || !w.is_superpotential() {
        return None;
    }
    let c = [
        w.coeff_of("xxyy"),
        w.coeff_of("xyxy"),
        w.coeff_of("xxxy"),
        w.coeff_of("xyyy"),
        w.coeff_of("xxxx"),
        w.coeff_of("yyyy"),
    ];
    debug_assert!(from_sp_coords(&c) == *w);
    Some(c)
}

/// Projection onto `(Alt²V)^{⊗2}` along the other three summands of
/// `(Sym²V ⊕ Alt²V)^{⊗2}`: the antisymmetrizer on positions 1-2 and on 3-4.
pub fn pi<F: Field>(w: &NcPoly<F>) -> NcPoly<F> {
    assert_eq!(w.degree(), 4, "pi is defined on degree 4");
    basis::<F>(0).scale(&mu(w))
}

/// The coordinate of `pi(w)` against `w_0`.
pub fn mu<F: Field>(w: &NcPoly<F>) -> F {
    assert_eq!(w.degree(), 4, "mu is defined on degree 4");
    // (a⊗a) sends each of xyxy, yxyx to w0/4 and xyyx, yxxy to -w0/4; every
    // other word has a repeated letter inside one half and dies.
    let s = w.coeff_of("xyxy") + w.coeff_of("yxyx") - w.coeff_of("xyyx") - w.coeff_of("yxxy");
    s * F::frac(1, 4)
}

/// Invariance under the adjacent transpositions, which generate `S_4`.
pub fn in_sym4<F: Field>(w: &NcPoly<F>) -> bool {
    let m = w.degree();
    (0..m.saturating_sub(1)).all(|i| {
        let mut theta: Vec<usize> = (0..m).collect();
        theta.swap(i, i + 1);
        w.permute(&theta).expect("valid transposition") == *w
    })
}

impl<F: Field> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map(|(w, c)| {
            let mono = if w.is_empty() {
                String::new()
            } else {
                w.pretty()
            };
            (c.to_string(), mono)
        });
        write_terms(f, terms)
    }
}
