//! Exact integer and rational matrix arithmetic with normal forms over `Z`
//! and over the localization of `Z` at a prime.
//!
//! Every categorical operation in the workbench bottoms out here.  Entries
//! are arbitrary-precision rationals; fixed-width arithmetic is never used
//! because Smith normal form intermediates blow up.

mod snf;
mod solve;

pub use snf::{snf, snf_local, SmithDecomposition};
pub use solve::{column_lattice_basis, kernel_basis, solve, solve_matrix};

pub(crate) use snf::snf_any;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::{Integer, RatMatrix, Rational};

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("entry {0} is not an integer")]
    NonIntegerEntry(String),
    #[error("denominator of {entry} is divisible by p = {p}")]
    DenominatorSharesPrime { entry: String, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("invalid matrix data: {0}")]
    Parse(String),
}

/// Coefficient ring tag: `Z` or the localization `Z_(p)` at a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    Z,
    Local(u64),
}

impl Ring {
    pub fn local(p: u64) -> Result<Self, ExactError> {
        if is_prime(p) {
            Ok(Ring::Local(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    /// Checks that a rational is an element of the ring.
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Ring::Z => x.is_integer(),
            Ring::Local(p) => !(x.denom() % BigInt::from(*p)).is_zero(),
        }
    }

    /// Units: `±1` over `Z`, valuation-zero elements over the localization.
    pub fn is_unit(&self, x: &Rational) -> bool {
        match self {
            Ring::Z => x.is_integer() && x.numer().abs().is_one(),
            Ring::Local(p) => !x.is_zero() && valuation(x, *p) == 0,
        }
    }

    /// `a` divides `b` in the ring.
    pub fn divides(&self, a: &Rational, b: &Rational) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.contains(&(b / a))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Local(p) => write!(f, "Z_({p})"),
        }
    }
}

/// Ring-tagged exact matrix.  The invariant restates the ring tag: over `Z`
/// every denominator is 1, over `Z_(p)` every denominator is coprime to `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    ring: Ring,
    mat: RatMatrix,
}

impl ExactMatrix {
    pub fn new(ring: Ring, mat: RatMatrix) -> Result<Self, ExactError> {
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                let e = mat.at(i, j);
                if !ring.contains(e) {
                    return Err(match ring {
                        Ring::Z => ExactError::NonIntegerEntry(e.to_string()),
                        Ring::Local(p) => ExactError::DenominatorSharesPrime {
                            entry: e.to_string(),
                            p,
                        },
                    });
                }
            }
        }
        Ok(Self { ring, mat })
    }

    pub fn from_i64_rows(ring: Ring, rows: Vec<Vec<i64>>) -> Self {
        let mat = RatMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
                .collect(),
        );
        Self { ring, mat }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Self {
            ring,
            mat: RatMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Self {
            ring,
            mat: RatMatrix::identity(n),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn mat(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        self.mat.at(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Wraps a raw rational matrix under the same ring tag, asserting the
    /// entries are ring elements.  Internal constructor for results of
    /// operations that are closed over the ring.
    pub(crate) fn wrap(ring: Ring, mat: RatMatrix) -> Self {
        debug_assert!(
            (0..mat.rows()).all(|i| (0..mat.cols()).all(|j| ring.contains(mat.at(i, j)))),
            "entries left the ring"
        );
        Self { ring, mat }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.ring != other.ring {
            return Err(ExactError::RingMismatch(self.ring, other.ring));
        }
        Ok(Self::wrap(self.ring, self.mat.mul(&other.mat)))
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        Self::wrap(self.ring, self.mat.hstack(&other.mat))
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        Self::wrap(self.ring, self.mat.vstack(&other.mat))
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        Self::wrap(self.ring, self.mat.block_diag(&other.mat))
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.ring, self.mat.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        Self::wrap(self.ring, self.mat.sub(&other.mat))
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(self.ring, self.mat.transpose())
    }

    /// Exact determinant; the matrix must be square.
    pub fn det(&self) -> Rational {
        self.mat.det()
    }

    /// Determinant is a unit of the ring.
    pub fn is_invertible(&self) -> bool {
        self.mat.is_square() && self.ring.is_unit(&self.det())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} over {}]", self.mat, self.ring)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().clone();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_int(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// Parses a rational written as `"a"` or `"a/b"`; tolerates the unicode
/// minus sign that shows up in copied mathematical text.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let cleaned: String = s.trim().replace('\u{2212}', "-");
    Rational::from_str(&cleaned).map_err(|e| ExactError::Parse(format!("{s:?}: {e}")))
}

#[derive(Serialize, Deserialize)]
struct ExactMatrixRepr {
    ring: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<u64>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (ring, p) = match self.ring {
            Ring::Z => ("Z".to_string(), None),
            Ring::Local(p) => ("Z_(p)".to_string(), Some(p)),
        };
        let entries = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.at(i, j).to_string()).collect())
            .collect();
        ExactMatrixRepr {
            ring,
            p,
            rows: self.rows(),
            cols: self.cols(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ExactMatrixRepr::deserialize(deserializer)?;
        let ring = match (repr.ring.as_str(), repr.p) {
            ("Z", None) => Ring::Z,
            ("Z_(p)", Some(p)) => Ring::local(p).map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("ring must be \"Z\" or \"Z_(p)\" with p")),
        };
        if repr.entries.len() != repr.rows
            || repr.entries.iter().any(|row| row.len() != repr.cols)
        {
            return Err(D::Error::custom("entry grid does not match rows x cols"));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            for s in row {
                data.push(parse_rational(s).map_err(D::Error::custom)?);
            }
        }
        let mat = RatMatrix::from_vec(repr.rows, repr.cols, data);
        ExactMatrix::new(ring, mat).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_membership() {
        let half = Rational::new(1.into(), 2.into());
        assert!(!Ring::Z.contains(&half));
        assert!(Ring::Local(3).contains(&half));
        assert!(!Ring::Local(2).contains(&half));
        assert!(Ring::Local(3).is_unit(&half));
        assert!(!Ring::Local(2).is_unit(&rat(2)));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(12), 2), 2);
        assert_eq!(valuation(&Rational::new(3.into(), 8.into()), 2), -3);
        assert_eq!(valuation(&rat(5), 3), 0);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn serde_round_trip() {
        let m = ExactMatrix::from_i64_rows(Ring::Z, vec![vec![1, -2], vec![3, 4]]);
        let js = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(m, back);

        let local = ExactMatrix::new(
            Ring::Local(3),
            RatMatrix::from_rows(vec![vec![Rational::new(1.into(), 2.into())]]),
        )
        .unwrap();
        let js = serde_json::to_string(&local).unwrap();
        assert!(js.contains("Z_(p)"));
        let back: ExactMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(local, back);
    }

    #[test]
    fn rejects_bad_entries() {
        let half = Rational::new(1.into(), 2.into());
        assert!(ExactMatrix::new(Ring::Z, RatMatrix::from_rows(vec![vec![half.clone()]])).is_err());
        assert!(ExactMatrix::new(Ring::Local(2), RatMatrix::from_rows(vec![vec![half]])).is_err());
    }

    #[test]
    fn parses_unicode_minus() {
        assert_eq!(parse_rational("\u{2212}3/2").unwrap(), Rational::new((-3).into(), 2.into()));
    }
}
