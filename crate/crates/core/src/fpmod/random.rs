//! Seeded generators for random objects and well-defined random morphisms,
//! shared by the property tests and the axiom harness.

use rand::Rng;

use super::{canonical_form, FpMorphism, FpObject};
use crate::exact::{ExactMatrix, Ring};
use crate::rng::TrialRng;
use crate::{Integer, RatMatrix, Rational};

pub fn random_object(rng: &mut TrialRng, ring: Ring, max_gens: usize, max_entry: i64) -> FpObject {
    let g = rng.gen_range(0..=max_gens);
    let r = rng.gen_range(0..=max_gens);
    let mat = RatMatrix::from_fn(g, r, |_, _| {
        Rational::from_integer(rng.gen_range(-max_entry..=max_entry).into())
    });
    FpObject::new(ExactMatrix::new(ring, mat).expect("integer entries"))
}

/// Random finite object in canonical presentation, with order bounded by
/// the product cap.
pub fn random_finite_object(rng: &mut TrialRng, ring: Ring, max_factors: usize, cap: i64) -> FpObject {
    let k = rng.gen_range(1..=max_factors.max(1));
    let mut factors: Vec<Integer> = Vec::new();
    let mut order = 1i64;
    for _ in 0..k {
        let d = match ring {
            Ring::Z => rng.gen_range(2..=8i64),
            Ring::Local(p) => {
                let e = rng.gen_range(1..=3u32);
                (p as i64).pow(e)
            }
        };
        if order.saturating_mul(d) > cap {
            break;
        }
        order *= d;
        factors.push(Integer::from(d));
    }
    if factors.is_empty() {
        factors.push(Integer::from(2));
    }
    FpObject::canonical(ring, &factors, 0)
}

/// Random free object (a lattice) of rank up to `max_rank`.
pub fn random_lattice(rng: &mut TrialRng, max_rank: usize) -> FpObject {
    FpObject::free(Ring::Z, rng.gen_range(0..=max_rank))
}

/// Random well-defined morphism, built on canonical presentations where
/// the entry constraints are explicit and then conjugated back.
pub fn random_morphism(
    rng: &mut TrialRng,
    src: &FpObject,
    dst: &FpObject,
    max_coeff: i64,
) -> FpMorphism {
    assert_eq!(src.ring(), dst.ring());
    let cs = canonical_form(src);
    let cd = canonical_form(dst);
    let ring = src.ring();

    let s_nf = cs.object.normal_form().clone();
    let d_nf = cd.object.normal_form().clone();
    let s_gens = cs.object.generators();
    let d_gens = cd.object.generators();

    // canonical presentations list torsion generators first, then free ones
    let src_factor = |j: usize| -> Option<Integer> { s_nf.factors.get(j).cloned() };
    let dst_factor = |i: usize| -> Option<Integer> { d_nf.factors.get(i).cloned() };

    let mat = RatMatrix::from_fn(d_gens, s_gens, |i, j| {
        let k = rng.gen_range(-max_coeff..=max_coeff);
        let entry: Integer = match (src_factor(j), dst_factor(i)) {
            // free source generator: unconstrained
            (None, _) => Integer::from(k),
            // torsion source into free target: only zero
            (Some(_), None) => Integer::from(0),
            // torsion to torsion: multiples of d_i / gcd(d_i, e_j)
            (Some(e), Some(d)) => {
                let g = num_integer::Integer::gcd(&d, &e);
                let step = &d / &g;
                Integer::from(k) * step
            }
        };
        Rational::from_integer(entry)
    });
    let canon_mor = FpMorphism::new_unchecked(
        ExactMatrix::wrap(ring, mat),
        cs.object.clone(),
        cd.object.clone(),
    );
    cd.from
        .compose(&canon_mor)
        .and_then(|m| m.compose(&cs.to))
        .expect("canonical conjugation composes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn random_morphisms_are_well_defined() {
        let mut rng = trial_rng(11, 0);
        for _ in 0..50 {
            let a = random_object(&mut rng, Ring::Z, 3, 4);
            let b = random_object(&mut rng, Ring::Z, 3, 4);
            let f = random_morphism(&mut rng, &a, &b, 3);
            // the constructor inside compose would have failed otherwise;
            // double-check explicitly
            assert!(
                FpMorphism::new(f.matrix().clone(), f.src().clone(), f.dst().clone()).is_ok()
            );
        }
    }

    #[test]
    fn localized_generation() {
        let mut rng = trial_rng(12, 0);
        let ring = Ring::Local(3);
        for _ in 0..20 {
            let a = random_finite_object(&mut rng, ring, 2, 81);
            let b = random_finite_object(&mut rng, ring, 2, 81);
            let f = random_morphism(&mut rng, &a, &b, 3);
            assert!(
                FpMorphism::new(f.matrix().clone(), f.src().clone(), f.dst().clone()).is_ok()
            );
        }
    }
}
