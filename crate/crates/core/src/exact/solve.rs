//! Kernel bases, lattice solving and column-lattice bases on top of the
//! Smith decomposition.

use num_traits::Zero;

use super::snf::snf_any;
use super::ExactMatrix;
use crate::{RatMatrix, Rational};

/// Generating set of `{ x : m * x = 0 }` over the ring, returned as the
/// columns of a full-column-rank matrix.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let dec = snf_any(m);
    let steps = dec.d.len();
    let free: Vec<usize> = (0..m.cols())
        .filter(|&j| j >= steps || dec.d[j].is_zero())
        .collect();
    ExactMatrix::wrap(m.ring(), dec.v.mat().select_cols(&free))
}

/// One solution of `a * x = b` over the ring, if any.
pub fn solve(a: &ExactMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let dec = snf_any(a);
    let c = dec.u.mat().mul_vec(b);
    let steps = dec.d.len();
    let mut y = vec![Rational::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let d = if i < steps { &dec.d[i] } else { &Rational::zero() };
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let q = ci / d;
            if !a.ring().contains(&q) {
                return None;
            }
            if i < a.cols() {
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(dec.v.mat().mul_vec(&y))
}

/// Columnwise solve: `a * x = b` for a whole matrix `b`.
pub fn solve_matrix(a: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve shape mismatch");
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        cols.push(solve(a, &b.mat().col_vec(j))?);
    }
    let mat = RatMatrix::from_fn(a.cols(), b.cols(), |i, j| cols[j][i].clone());
    Some(ExactMatrix::wrap(a.ring(), mat))
}

/// Basis of the lattice spanned by the columns of `a`, as the columns of a
/// full-column-rank matrix.
pub fn column_lattice_basis(a: &ExactMatrix) -> ExactMatrix {
    let dec = snf_any(a);
    let mut cols = Vec::new();
    for (i, d) in dec.d.iter().enumerate() {
        if !d.is_zero() {
            cols.push(
                dec.u_inv
                    .mat()
                    .col_vec(i)
                    .into_iter()
                    .map(|x| x * d)
                    .collect::<Vec<_>>(),
            );
        }
    }
    let mat = RatMatrix::from_fn(a.rows(), cols.len(), |i, j| cols[j][i].clone());
    ExactMatrix::wrap(a.ring(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Ring};

    #[test]
    fn kernel_of_two_minus_three() {
        // frozen from enumerating small integer solutions of 2x = 3y
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![2, -3]]);
        let k = kernel_basis(&m);
        assert_eq!((k.rows(), k.cols()), (2, 1));
        let prod = m.mul(&k).unwrap();
        assert!(prod.is_zero());
        // the generator is (3, 2) up to sign
        let a = k.at(0, 0).clone();
        let b = k.at(1, 0).clone();
        assert_eq!((a.numer().magnitude().clone(), b.numer().magnitude().clone()),
                   (3u32.into(), 2u32.into()));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = ExactMatrix::identity(Ring::Z, 3);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_identity() {
        let m = ExactMatrix::zeros(Ring::Z, 1, 2);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(k.is_invertible());
    }

    #[test]
    fn solving_in_the_lattice() {
        let a = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![2, 0], vec![0, 3]]);
        assert!(solve(&a, &[rat(4), rat(9)]).is_some());
        assert!(solve(&a, &[rat(1), rat(0)]).is_none());
        let x = solve(&a, &[rat(-6), rat(6)]).unwrap();
        assert_eq!(a.mat().mul_vec(&x), vec![rat(-6), rat(6)]);
    }

    #[test]
    fn column_lattice() {
        let a = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![2, 4], vec![0, 0]]);
        let basis = column_lattice_basis(&a);
        assert_eq!(basis.cols(), 1);
        assert_eq!(basis.at(0, 0).clone().numer().magnitude().clone(), 2u32.into());
        assert!(basis.at(1, 0).is_zero());
    }
}
