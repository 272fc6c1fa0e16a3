//! Exact row reduction over any [`Field`].

use crate::field::Field;

/// A reduced row-echelon basis that grows one vector at a time.
///
/// Rows are kept fully reduced (each pivot column is zero in every other
/// row), so membership and residuals need a single pass.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Echelon<F> {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a Vec<F>>) -> Echelon<F> {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    /// Wraps rows that are already in reduced echelon form, sorted by pivot.
    pub(crate) fn from_reduced(ncols: usize, rows: Vec<Vec<F>>, pivots: Vec<usize>) -> Echelon<F> {
        debug_assert!(pivots.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(rows.iter().zip(&pivots).all(|(r, &p)| r[p] == F::one()));
        Echelon {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span along the non-pivot columns.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *vi = vi.clone() - f.clone() * ri.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for c in r.iter_mut() {
            if !c.is_zero() {
                *c = c.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// A basis of `{c : c · row = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivots.contains(c)) {
            let mut v = vec![F::zero(); self.ncols];
            v[free] = F::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -row[free].clone();
            }
            out.push(v);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Echelon<F>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_span(&self, other: &Echelon<F>) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }
}

pub fn rank<F: Field>(ncols: usize, rows: &[Vec<F>]) -> usize {
    Echelon::from_rows(ncols, rows).rank()
}

/// Right kernel of the matrix with the given rows.
pub fn nullspace<F: Field>(ncols: usize, rows: &[Vec<F>]) -> Vec<Vec<F>> {
    Echelon::from_rows(ncols, rows).kernel()
}

/// Some `c` with `Σ c_i vectors[i] = target`, if one exists.
pub fn express<F: Field>(vectors: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = vectors.len();
    // Columns of the augmented system are the vectors plus the target; a
    // kernel vector with nonzero last entry gives the combination.
    let rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            vectors
                .iter()
                .map(|v| v[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let kernel = nullspace(k + 1, &rows);
    let v = kernel.into_iter().find(|v| !v[k].is_zero())?;
    let s = -(v[k].inv().expect("nonzero"));
    Some(v[..k].iter().map(|c| c.clone() * s.clone()).collect())
}

/// `2x2` determinant helper used by the minors code.
pub fn det2<F: Field>(a: &F, b: &F, c: &F, d: &F) -> F {
    a.clone() * d.clone() - b.clone() * c.clone()
}
