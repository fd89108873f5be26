//! The ambient abelian category: finitely presented modules over `Z` or
//! over `Z_(p)`, given by generators and relations.
//!
//! Objects carry presentations, never element lists; every element-style
//! argument is replaced by a matrix factorization through the relation
//! lattice.  Zero objects are presentations with zero generators and all
//! operations accept them.

mod ops;
pub mod random;

pub use ops::{
    biproduct, cokernel, decompose, factor_through_cokernel, factor_through_epi,
    factor_through_kernel, kernel, pullback, pushout, Biproduct, CanonicalDecomposition,
    PullbackSquare, PushoutSquare,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{
    self, parse_rational, snf, snf_any, snf_local, ExactError, ExactMatrix, Ring,
    SmithDecomposition,
};
use crate::{Integer, RatMatrix, Rational};

#[derive(Debug, Error)]
pub enum FpError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("matrix does not respect relations: no witness Q with P*R_src = R_dst*Q")]
    IllDefined,
    #[error("morphism endpoints mismatch: {0}")]
    Endpoints(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("{0}")]
    Invalid(String),
}

/// Stable isomorphism invariant: free rank plus the invariant factors
/// different from 1, in divisibility order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct NormalForm {
    pub rank: usize,
    pub factors: Vec<Integer>,
}

impl NormalForm {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<Integer> {
        if self.rank > 0 {
            return None;
        }
        Some(self.factors.iter().product())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for d in &self.factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Finitely presented module: `Z^g / column-span(relations)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpObject {
    relations: ExactMatrix,
    nf: NormalForm,
}

impl FpObject {
    /// Builds the object and computes its normal form.
    pub fn new(relations: ExactMatrix) -> Self {
        let dec = snf_any(&relations);
        let nf = normal_form_from_snf(relations.rows(), &dec, relations.ring());
        Self { relations, nf }
    }

    pub fn from_relations(ring: Ring, generators: usize, relations: Vec<Vec<i64>>) -> Self {
        let mat = if relations.is_empty() {
            ExactMatrix::zeros(ring, generators, 0)
        } else {
            assert_eq!(relations.len(), generators, "relation rows must equal generators");
            ExactMatrix::from_i64_rows(ring, relations)
        };
        Self::new(mat)
    }

    /// The zero object: zero generators.
    pub fn zero(ring: Ring) -> Self {
        Self::new(ExactMatrix::zeros(ring, 0, 0))
    }

    /// Free module of the given rank.
    pub fn free(ring: Ring, rank: usize) -> Self {
        Self::new(ExactMatrix::zeros(ring, rank, 0))
    }

    /// Cyclic module `Z/n` (or its localized analogue).
    pub fn cyclic(ring: Ring, n: i64) -> Self {
        Self::from_relations(ring, 1, vec![vec![n]])
    }

    /// Canonical presentation with relations `diag(factors)` followed by
    /// free generators.
    pub fn canonical(ring: Ring, factors: &[Integer], rank: usize) -> Self {
        let t = factors.len();
        let mat = RatMatrix::from_fn(t + rank, t, |i, j| {
            if i == j {
                Rational::from_integer(factors[j].clone())
            } else {
                Rational::zero()
            }
        });
        Self::new(ExactMatrix::new(ring, mat).expect("integral diagonal"))
    }

    pub fn ring(&self) -> Ring {
        self.relations.ring()
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &ExactMatrix {
        &self.relations
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn is_zero_object(&self) -> bool {
        self.nf.is_trivial()
    }

    /// Two presentations of isomorphic modules have identical normal forms.
    pub fn is_isomorphic(&self, other: &FpObject) -> bool {
        self.ring() == other.ring() && self.nf == other.nf
    }
}

impl fmt::Display for FpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nf)
    }
}

fn normal_form_from_snf(generators: usize, dec: &SmithDecomposition, ring: Ring) -> NormalForm {
    let nonzero = dec.d.iter().filter(|x| !x.is_zero()).count();
    let rank = generators - nonzero;
    let factors = dec
        .d
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| normalize_factor(x, ring))
        .filter(|n| !n.is_one())
        .collect();
    NormalForm { rank, factors }
}

fn normalize_factor(d: &Rational, ring: Ring) -> Integer {
    match ring {
        Ring::Z => d.numer().abs(),
        Ring::Local(p) => {
            // discard the unit part, keep the p-power
            let v = exact::valuation(d, p);
            BigInt::from(p).pow(v as u32)
        }
    }
}

/// Morphism of finitely presented modules, represented on generators.
///
/// Well-definedness (a witness `Q` with `P*R_src = R_dst*Q`) is checked at
/// construction; equality is equality modulo the target relation lattice.
#[derive(Clone, Debug)]
pub struct FpMorphism {
    src: FpObject,
    dst: FpObject,
    matrix: ExactMatrix,
}

impl FpMorphism {
    pub fn new(matrix: ExactMatrix, src: FpObject, dst: FpObject) -> Result<Self, FpError> {
        if src.ring() != dst.ring() || matrix.ring() != src.ring() {
            return Err(FpError::RingMismatch);
        }
        if matrix.rows() != dst.generators() || matrix.cols() != src.generators() {
            return Err(FpError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.generators(),
                src.generators()
            )));
        }
        let image_of_relations = matrix.mul(src.relations())?;
        if exact::solve_matrix(dst.relations(), &image_of_relations).is_none() {
            return Err(FpError::IllDefined);
        }
        Ok(Self { src, dst, matrix })
    }

    pub fn from_i64(rows: Vec<Vec<i64>>, src: FpObject, dst: FpObject) -> Result<Self, FpError> {
        let ring = src.ring();
        let mat = if rows.is_empty() || rows.first().map_or(true, Vec::is_empty) {
            ExactMatrix::zeros(ring, dst.generators(), src.generators())
        } else {
            ExactMatrix::from_i64_rows(ring, rows)
        };
        Self::new(mat, src, dst)
    }

    pub fn identity(obj: &FpObject) -> Self {
        Self {
            src: obj.clone(),
            dst: obj.clone(),
            matrix: ExactMatrix::identity(obj.ring(), obj.generators()),
        }
    }

    pub fn zero(src: &FpObject, dst: &FpObject) -> Self {
        assert_eq!(src.ring(), dst.ring());
        Self {
            src: src.clone(),
            dst: dst.clone(),
            matrix: ExactMatrix::zeros(src.ring(), dst.generators(), src.generators()),
        }
    }

    /// Internal constructor for matrices that are well-defined by
    /// construction; still checked in debug builds.
    pub(crate) fn new_unchecked(matrix: ExactMatrix, src: FpObject, dst: FpObject) -> Self {
        debug_assert!(
            Self::new(matrix.clone(), src.clone(), dst.clone()).is_ok(),
            "internal morphism is ill-defined"
        );
        Self { src, dst, matrix }
    }

    pub fn src(&self) -> &FpObject {
        &self.src
    }

    pub fn dst(&self) -> &FpObject {
        &self.dst
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.src.ring()
    }

    /// `self` after `other`: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &FpMorphism) -> Result<FpMorphism, FpError> {
        if other.dst != self.src {
            return Err(FpError::Endpoints(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(FpMorphism {
            src: other.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Equality modulo the target relation lattice.
    pub fn equals(&self, other: &FpMorphism) -> Result<bool, FpError> {
        if self.src != other.src || self.dst != other.dst {
            return Err(FpError::Endpoints(
                "equality requires identical endpoints".into(),
            ));
        }
        let diff = self.matrix.sub(&other.matrix);
        Ok(exact::solve_matrix(self.dst.relations(), &diff).is_some())
    }

    pub fn is_zero_morphism(&self) -> bool {
        let zero = FpMorphism::zero(&self.src, &self.dst);
        self.equals(&zero).expect("same endpoints")
    }
}

impl fmt::Display for FpMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.dst)
    }
}

/// Canonical-presentation data: an isomorphic object whose relations are
/// `diag(invariant factors)` padded by free generators, with the two
/// isomorphisms.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub object: FpObject,
    /// original -> canonical
    pub to: FpMorphism,
    /// canonical -> original
    pub from: FpMorphism,
}

/// Computes an isomorphic canonical presentation.
pub fn canonical_form(m: &FpObject) -> CanonicalForm {
    let ring = m.ring();
    let dec = match ring {
        Ring::Z => snf(m.relations()),
        Ring::Local(p) => snf_local(m.relations(), p).expect("valid by construction"),
    };
    let g = m.generators();
    let steps = dec.d.len();

    // coordinate i of y = U x survives unless its invariant factor is 1
    let mut surviving: Vec<(usize, Option<Integer>)> = Vec::new();
    for i in 0..g {
        let d = if i < steps { Some(&dec.d[i]) } else { None };
        match d {
            Some(di) if !di.is_zero() => {
                let n = normalize_factor(di, ring);
                if !n.is_one() {
                    surviving.push((i, Some(n)));
                }
            }
            _ => surviving.push((i, None)), // free coordinate
        }
    }
    // torsion coordinates first, then free, matching FpObject::canonical
    surviving.sort_by_key(|(_, f)| f.is_none());
    let factors: Vec<Integer> = surviving
        .iter()
        .filter_map(|(_, f)| f.clone())
        .collect();
    let rank = surviving.iter().filter(|(_, f)| f.is_none()).count();
    let object = FpObject::canonical(ring, &factors, rank);

    // over the localization the SNF pivot may be a unit times p^k; absorb
    // the unit so that the relation becomes exactly the normalized factor
    let indices: Vec<usize> = surviving.iter().map(|(i, _)| *i).collect();
    let to_mat = RatMatrix::from_fn(indices.len(), g, |r, c| dec.u.at(indices[r], c).clone());
    let from_mat = RatMatrix::from_fn(g, indices.len(), |r, c| dec.u_inv.at(r, indices[c]).clone());

    let to = FpMorphism::new_unchecked(
        ExactMatrix::wrap(ring, to_mat),
        m.clone(),
        object.clone(),
    );
    let from = FpMorphism::new_unchecked(
        ExactMatrix::wrap(ring, from_mat),
        object.clone(),
        m.clone(),
    );
    CanonicalForm { object, to, from }
}

/// Isomorphism witness between objects with equal normal forms.
pub fn find_isomorphism(a: &FpObject, b: &FpObject) -> Option<FpMorphism> {
    if !a.is_isomorphic(b) {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    debug_assert_eq!(ca.object, cb.object);
    Some(cb.from.compose(&ca.to).expect("canonical endpoints match"))
}

/// True when the morphism is invertible (trivial kernel and cokernel).
pub fn is_isomorphism(f: &FpMorphism) -> bool {
    kernel(f).0.is_zero_object() && cokernel(f).0.is_zero_object()
}

#[derive(Serialize, Deserialize)]
struct FpObjectRepr {
    ring: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<u64>,
    generators: usize,
    relations: Vec<Vec<String>>,
}

impl Serialize for FpObject {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (ring, p) = match self.ring() {
            Ring::Z => ("Z".to_string(), None),
            Ring::Local(p) => ("Z_(p)".to_string(), Some(p)),
        };
        let rel = self.relations.mat();
        let relations = (0..rel.rows())
            .map(|i| (0..rel.cols()).map(|j| rel.at(i, j).to_string()).collect())
            .collect();
        FpObjectRepr {
            ring,
            p,
            generators: self.generators(),
            relations,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpObject {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FpObjectRepr::deserialize(deserializer)?;
        let ring = match (repr.ring.as_str(), repr.p) {
            ("Z", None) => Ring::Z,
            ("Z_(p)", Some(p)) => Ring::local(p).map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("ring must be \"Z\" or \"Z_(p)\" with p")),
        };
        let cols = repr.relations.first().map_or(0, Vec::len);
        if repr.relations.len() != repr.generators && !(repr.relations.is_empty()) {
            return Err(D::Error::custom("relations rows must equal generators"));
        }
        let mut data = Vec::new();
        for row in &repr.relations {
            if row.len() != cols {
                return Err(D::Error::custom("ragged relation rows"));
            }
            for s in row {
                data.push(parse_rational(s).map_err(D::Error::custom)?);
            }
        }
        let mat = if repr.relations.is_empty() {
            RatMatrix::zeros(repr.generators, 0)
        } else {
            RatMatrix::from_vec(repr.generators, cols, data)
        };
        let em = ExactMatrix::new(ring, mat).map_err(D::Error::custom)?;
        Ok(FpObject::new(em))
    }
}

#[derive(Serialize, Deserialize)]
struct FpMorphismRepr {
    matrix: Vec<Vec<String>>,
    src: FpObject,
    dst: FpObject,
}

impl Serialize for FpMorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let m = self.matrix.mat();
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
            .collect();
        FpMorphismRepr {
            matrix,
            src: self.src.clone(),
            dst: self.dst.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpMorphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FpMorphismRepr::deserialize(deserializer)?;
        let rows = repr.dst.generators();
        let cols = repr.src.generators();
        if repr.matrix.len() != rows && !repr.matrix.is_empty() {
            return Err(D::Error::custom("matrix rows must equal target generators"));
        }
        let mut data = Vec::new();
        for row in &repr.matrix {
            if row.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            for s in row {
                data.push(parse_rational(s).map_err(D::Error::custom)?);
            }
        }
        let mat = if repr.matrix.is_empty() {
            RatMatrix::zeros(rows, cols)
        } else {
            RatMatrix::from_vec(rows, cols, data)
        };
        let em = ExactMatrix::new(repr.src.ring(), mat).map_err(D::Error::custom)?;
        FpMorphism::new(em, repr.src, repr.dst).map_err(D::Error::custom)
    }
}
