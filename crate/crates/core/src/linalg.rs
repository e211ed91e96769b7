//! Dense linear algebra over a [`Field`]. Row reduction to reduced echelon
//! form is the one primitive; spans, kernels and coordinates derive from it.

use crate::ffield::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

pub fn zero_vector(n: usize) -> Vector {
    vec![FieldElement::ZERO; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = FieldElement::ONE;
    v
}

pub fn is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// `acc += c * v`.
pub fn axpy(f: &Field, acc: &mut [FieldElement], c: FieldElement, v: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = f.add(*a, f.mul(c, x));
        }
    }
}

pub fn scale(f: &Field, c: FieldElement, v: &[FieldElement]) -> Vector {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn add(f: &Field, u: &[FieldElement], v: &[FieldElement]) -> Vector {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

/// Reduce `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(f: &Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).unwrap();
        if inv != FieldElement::ONE {
            let scaled = scale(f, inv, &rows[r]);
            rows[r] = scaled;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let m = f.neg(row[c]);
                axpy(f, row, m, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows and `ncols`
/// columns.
pub fn kernel(f: &Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = zero_vector(ncols);
            x[fc] = FieldElement::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// A subspace of `F^n`, stored as the reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Vector>>(f: &Field, ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().filter(|v| !is_zero(v)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(f, &mut rows);
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, f: &Field, v: &[FieldElement]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc];
            if !c.is_zero() {
                axpy(f, &mut out, f.neg(c), row);
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[FieldElement]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }

    /// Coordinates of `v` with respect to [`Subspace::basis`].
    pub fn coordinates(&self, f: &Field, v: &[FieldElement]) -> Option<Vector> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        Subspace::span(f, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, f: &Field, other: &Subspace) -> Subspace {
        // a in self, b in other with a = b: solve sum x_i r_i - sum y_j s_j = 0.
        let (m, n) = (self.dim(), other.dim());
        if m == 0 || n == 0 {
            return Subspace::zero(self.ambient);
        }
        let rows: Vec<Vector> = (0..self.ambient)
            .map(|c| self.rows.iter().map(|r| r[c]).chain(other.rows.iter().map(|s| f.neg(s[c]))).collect())
            .collect();
        let vecs = kernel(f, &rows, m + n).into_iter().map(|x| {
            let mut v = zero_vector(self.ambient);
            for (i, r) in self.rows.iter().enumerate() {
                axpy(f, &mut v, x[i], r);
            }
            v
        });
        Subspace::span(f, self.ambient, vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_intersection() {
        let f = Field::prime(5).unwrap();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.int(x)).collect::<Vector>();
        let a = Subspace::span(&f, 3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, [v(&[1, 1, 1]), v(&[0, 1, 0])]);
        let c = a.intersection(&f, &b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f, &v(&[0, 1, 0])));
        assert_eq!(a.sum(&f, &b).dim(), 3);
        let k = kernel(&f, &[v(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for x in k {
            let s = f.sum((0..3).map(|i| f.mul(x[i], f.int([1, 2, 3][i]))));
            assert!(s.is_zero());
        }
    }
}
