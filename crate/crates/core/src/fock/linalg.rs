//! Dense Hermitian helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn hermitian_eigen(m: DMatrix<Complex64>) -> Result<(DVector<f64>, DMatrix<Complex64>)> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 1000 + 100 * n)
        .ok_or_else(|| Error::EigenSolver(format!("Hermitian eigensolver did not converge (dim {n})")))?;
    Ok((eig.eigenvalues, eig.eigenvectors))
}

pub(crate) fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Result<DVector<f64>> {
    Ok(m.symmetric_eigenvalues())
}

/// `exp(-i h)` for Hermitian `h`.
pub(crate) fn unitary_from_hermitian(h: DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let (vals, vecs) = hermitian_eigen(h)?;
    let phases = DMatrix::from_diagonal(&vals.map(|v| Complex64::from_polar(1.0, -v)));
    Ok(&vecs * phases * vecs.adjoint())
}

/// Index sets of the connected components of the sparsity graph of `m`,
/// ignoring entries at or below `threshold` in modulus.
pub(crate) fn components(m: &DMatrix<Complex64>, threshold: f64) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for j in 0..n {
        for i in (j + 1)..n {
            if m[(i, j)].norm() > threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Smallest eigenvalue of a Hermitian matrix, solved block by block over
/// the connected components of its sparsity pattern.
pub(crate) fn min_eigenvalue_blocked(m: &DMatrix<Complex64>) -> Result<f64> {
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut min = f64::INFINITY;
    for block in components(m, 1e-15 * scale) {
        let sub = DMatrix::from_fn(block.len(), block.len(), |i, j| m[(block[i], block[j])]);
        let v = if block.len() == 1 { sub[(0, 0)].re } else { hermitian_eigenvalues(sub)?.min() };
        min = min.min(v);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocked_min_matches_dense() {
        let c = |re, im| Complex64::new(re, im);
        let z = c(0.0, 0.0);
        #[rustfmt::skip]
        let m = DMatrix::from_row_slice(4, 4, &[
            c(2.0, 0.0), z, c(0.0, 1.0), z,
            z, c(1.0, 0.0), z, c(0.5, 0.0),
            c(0.0, -1.0), z, c(2.0, 0.0), z,
            z, c(0.5, 0.0), z, c(-1.0, 0.0),
        ]);
        assert_eq!(components(&m, 0.0).len(), 2);
        let dense = hermitian_eigenvalues(m.clone()).unwrap().min();
        assert!((min_eigenvalue_blocked(&m).unwrap() - dense).abs() < 1e-13);
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let u = unitary_from_hermitian(DMatrix::zeros(3, 3)).unwrap();
        assert!((u - DMatrix::identity(3, 3)).norm() < 1e-15);
    }
}
