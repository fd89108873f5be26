//! Smith normal form over `Z` and over `Z_(p)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{valuation, ExactError, ExactMatrix, Ring};
use crate::{RatMatrix, Rational};

/// `u * m * v = s` with `s` diagonal, `u`, `v` invertible over the ring.
///
/// `d` is the full diagonal of `s` (length `min(rows, cols)`, zeros
/// included), normalized nonnegative over `Z` and to pure powers of `p`
/// over the localization; each entry divides the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: ExactMatrix,
    pub s: ExactMatrix,
    pub v: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub v_inv: ExactMatrix,
    pub d: Vec<Rational>,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reducer {
    s: RatMatrix,
    u: RatMatrix,
    u_inv: RatMatrix,
    v: RatMatrix,
    v_inv: RatMatrix,
}

impl Reducer {
    fn new(m: &RatMatrix) -> Self {
        Reducer {
            s: m.clone(),
            u: RatMatrix::identity(m.rows()),
            u_inv: RatMatrix::identity(m.rows()),
            v: RatMatrix::identity(m.cols()),
            v_inv: RatMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += c * row[src], kept consistent on u and u_inv.
    fn add_row(&mut self, dst: usize, src: usize, c: &Rational) {
        self.s.add_scaled_row(dst, src, c);
        self.u.add_scaled_row(dst, src, c);
        let neg = -c.clone();
        self.u_inv.add_scaled_col(src, dst, &neg);
    }

    /// col[dst] += c * col[src].
    fn add_col(&mut self, dst: usize, src: usize, c: &Rational) {
        self.s.add_scaled_col(dst, src, c);
        self.v.add_scaled_col(dst, src, c);
        let neg = -c.clone();
        self.v_inv.add_scaled_row(src, dst, &neg);
    }

    /// Scales a row by a unit.
    fn scale_row(&mut self, i: usize, c: &Rational) {
        self.s.scale_row(i, c);
        self.u.scale_row(i, c);
        let inv = Rational::new(c.denom().clone(), c.numer().clone());
        self.u_inv.scale_col(i, &inv);
    }

    fn find_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                if !self.s.at(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Smallest-absolute-value nonzero entry of the trailing submatrix.
    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let e = self.s.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.numer().abs();
                if best.as_ref().map_or(true, |(_, m)| a < *m) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(idx, _)| idx)
    }

    /// Minimal p-adic valuation nonzero entry of the trailing submatrix.
    fn min_valuation_pivot(&self, t: usize, p: u64) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), i64)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let e = self.s.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let v = valuation(e, p);
                if best.as_ref().map_or(true, |(_, m)| v < *m) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(idx, _)| idx)
    }
}

fn trunc_quotient(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a.is_integer() && b.is_integer() && !b.is_zero());
    Rational::from_integer(a.numer() / b.numer())
}

/// Smith normal form of an integer matrix.
pub fn snf(m: &ExactMatrix) -> SmithDecomposition {
    assert_eq!(m.ring(), Ring::Z, "snf expects a matrix over Z");
    let mut r = Reducer::new(m.mat());
    let rows = r.s.rows();
    let cols = r.s.cols();
    let steps = rows.min(cols);

    for t in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = r.smallest_pivot(t) else {
                break 'pivot;
            };
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);

            // Euclid on the pivot row and column until both are clear.
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    while !r.s.at(i, t).is_zero() {
                        if r.s.at(t, t).is_zero()
                            || r.s.at(i, t).numer().abs() < r.s.at(t, t).numer().abs()
                        {
                            r.swap_rows(t, i);
                        }
                        let q = -trunc_quotient(r.s.at(i, t), r.s.at(t, t));
                        if q.is_zero() {
                            // remainder smaller than pivot: swap and continue
                            r.swap_rows(t, i);
                            continue;
                        }
                        r.add_row(i, t, &q);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    while !r.s.at(t, j).is_zero() {
                        if r.s.at(t, t).is_zero()
                            || r.s.at(t, j).numer().abs() < r.s.at(t, t).numer().abs()
                        {
                            r.swap_cols(t, j);
                        }
                        let q = -trunc_quotient(r.s.at(t, j), r.s.at(t, t));
                        if q.is_zero() {
                            r.swap_cols(t, j);
                            continue;
                        }
                        r.add_col(j, t, &q);
                        dirty = true;
                    }
                }
                let col_clear = (t + 1..rows).all(|i| r.s.at(i, t).is_zero());
                let row_clear = (t + 1..cols).all(|j| r.s.at(t, j).is_zero());
                if col_clear && row_clear {
                    break;
                }
                let _ = dirty;
            }

            // Divisibility: the pivot must divide the rest of the submatrix.
            let pivot = r.s.at(t, t).clone();
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(r.s.at(i, j).numer() % pivot.numer()).is_zero() {
                        let one = Rational::from_integer(1.into());
                        r.add_row(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    // Normalize signs.
    for t in 0..steps {
        if r.s.at(t, t).numer().is_negative() {
            let minus_one = Rational::from_integer((-1).into());
            r.scale_row(t, &minus_one);
        }
    }

    let d = (0..steps).map(|t| r.s.at(t, t).clone()).collect();
    SmithDecomposition {
        u: ExactMatrix::wrap(Ring::Z, r.u),
        s: ExactMatrix::wrap(Ring::Z, r.s),
        v: ExactMatrix::wrap(Ring::Z, r.v),
        u_inv: ExactMatrix::wrap(Ring::Z, r.u_inv),
        v_inv: ExactMatrix::wrap(Ring::Z, r.v_inv),
        d,
    }
}

/// Smith normal form over the localization `Z_(p)`.
///
/// Every invariant factor is a pure power of `p` (the unit part is folded
/// into `u`), so the divisibility chain is a valuation chain.
pub fn snf_local(m: &ExactMatrix, p: u64) -> Result<SmithDecomposition, ExactError> {
    if !super::is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    let ring = Ring::Local(p);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !ring.contains(m.at(i, j)) {
                return Err(ExactError::DenominatorSharesPrime {
                    entry: m.at(i, j).to_string(),
                    p,
                });
            }
        }
    }

    let mut r = Reducer::new(m.mat());
    let rows = r.s.rows();
    let cols = r.s.cols();
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pi, pj)) = r.min_valuation_pivot(t, p) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);

        // Scale the pivot row by the inverse of the pivot's unit part, so
        // the pivot becomes exactly p^k.
        let pivot = r.s.at(t, t).clone();
        let k = valuation(&pivot, p);
        let p_pow = Rational::from_integer(BigInt::from(p).pow(k as u32));
        let unit = &pivot / &p_pow;
        let unit_inv = Rational::new(unit.denom().clone(), unit.numer().clone());
        r.scale_row(t, &unit_inv);

        // Entries in the pivot row/column have valuation >= k, so a single
        // exact division clears each of them.
        for i in t + 1..rows {
            if !r.s.at(i, t).is_zero() {
                let q = -(r.s.at(i, t) / r.s.at(t, t));
                r.add_row(i, t, &q);
            }
        }
        for j in t + 1..cols {
            if !r.s.at(t, j).is_zero() {
                let q = -(r.s.at(t, j) / r.s.at(t, t));
                r.add_col(j, t, &q);
            }
        }
    }

    let d = (0..steps).map(|t| r.s.at(t, t).clone()).collect();
    Ok(SmithDecomposition {
        u: ExactMatrix::wrap(ring, r.u),
        s: ExactMatrix::wrap(ring, r.s),
        v: ExactMatrix::wrap(ring, r.v),
        u_inv: ExactMatrix::wrap(ring, r.u_inv),
        v_inv: ExactMatrix::wrap(ring, r.v_inv),
        d,
    })
}

/// Ring-dispatching normal form.
pub(crate) fn snf_any(m: &ExactMatrix) -> SmithDecomposition {
    match m.ring() {
        Ring::Z => snf(m),
        Ring::Local(p) => snf_local(m, p).expect("entries validated at construction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn check_decomposition(m: &ExactMatrix, dec: &SmithDecomposition) {
        // u * m * v = s exactly
        let umv = dec.u.mul(m).unwrap().mul(&dec.v).unwrap();
        assert_eq!(umv, dec.s);
        // u, v invertible over the ring
        assert!(dec.u.is_invertible(), "u not invertible: {}", dec.u);
        assert!(dec.v.is_invertible(), "v not invertible: {}", dec.v);
        // tracked inverses are actual inverses
        assert_eq!(
            dec.u.mul(&dec.u_inv).unwrap(),
            ExactMatrix::identity(m.ring(), m.rows())
        );
        assert_eq!(
            dec.v.mul(&dec.v_inv).unwrap(),
            ExactMatrix::identity(m.ring(), m.cols())
        );
        // diagonal, divisibility chain
        for i in 0..dec.s.rows() {
            for j in 0..dec.s.cols() {
                if i != j {
                    assert!(dec.s.at(i, j).is_zero());
                }
            }
        }
        for w in dec.d.windows(2) {
            assert!(
                m.ring().divides(&w[0], &w[1]),
                "chain broken: {} does not divide {}",
                w[0],
                w[1]
            );
        }
    }

    #[test]
    fn identity_case() {
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![1, 0], vec![0, 1]]);
        let dec = snf(&m);
        check_decomposition(&m, &dec);
        assert_eq!(dec.d, vec![rat(1), rat(1)]);
    }

    #[test]
    fn two_four_six_eight() {
        // frozen from the row/column reduction oracle on small entries
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![2, 4], vec![6, 8]]);
        let dec = snf(&m);
        check_decomposition(&m, &dec);
        assert_eq!(dec.d, vec![rat(2), rat(4)]);
    }

    #[test]
    fn zero_two_by_three() {
        let m = ExactMatrix::zeros(Ring::Z, 2, 3);
        let dec = snf(&m);
        check_decomposition(&m, &dec);
        assert_eq!(dec.d, vec![rat(0), rat(0)]);
    }

    #[test]
    fn empty_matrix() {
        let m = ExactMatrix::zeros(Ring::Z, 0, 0);
        let dec = snf(&m);
        assert!(dec.d.is_empty());
    }

    #[test]
    fn local_rejects_bad_input() {
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![6]]);
        assert!(matches!(snf_local(&m, 4), Err(ExactError::NotPrime(4))));

        // 3/2 is a perfectly good element of Z_(3) but not of Z_(2)
        let half = crate::Rational::new(3.into(), 2.into());
        let m = ExactMatrix::new(Ring::Local(3), crate::RatMatrix::from_rows(vec![vec![half]]))
            .unwrap();
        assert!(matches!(
            snf_local(&m, 2),
            Err(ExactError::DenominatorSharesPrime { .. })
        ));
    }

    #[test]
    fn local_six_at_three() {
        // 6 = 2 * 3 and 2 is a unit at p = 3
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![6]]);
        let dec = snf_local(&m, 3).unwrap();
        let m3 = ExactMatrix::new(Ring::Local(3), m.mat().clone()).unwrap();
        check_decomposition(&m3, &dec);
        assert_eq!(dec.d, vec![rat(3)]);
    }

    #[test]
    fn local_already_diagonal() {
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![1, 0], vec![0, 9]]);
        let dec = snf_local(&m, 3).unwrap();
        assert_eq!(dec.d, vec![rat(1), rat(9)]);
    }

    #[test]
    fn random_small_matrices_stay_consistent() {
        // deterministic sweep over a small grid of 2x2 matrices
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -2i64..=2 {
                    let m =
                        ExactMatrix::from_i64_rows(Ring::Z, vec![vec![a, b], vec![c, a - b]]);
                    let dec = snf(&m);
                    check_decomposition(&m, &dec);
                }
            }
        }
    }
}
