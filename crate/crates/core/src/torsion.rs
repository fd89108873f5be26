//! Torsion-pair machinery over the ambient category: the radical functor,
//! torsion short exact sequences, and (co)limits computed inside the
//! torsion / torsion-free classes.
//!
//! The built-in pair is (torsion, torsion-free) over `Z`, plus its
//! analogue over the localization at `p`.  The divisible/reduced pair
//! lives in `divkit`, since its torsion class escapes finite presentation.

use num_traits::Zero;

use crate::exact::{ExactMatrix, Ring};
use crate::fpmod::{
    canonical_form, cokernel, factor_through_kernel, kernel, pullback, FpError, FpMorphism,
    FpObject, PullbackSquare,
};
use crate::{RatMatrix, Rational};

/// The (torsion, torsion-free) pair over the tagged ring.
///
/// Membership predicates read normal forms; the radical and coradical are
/// computed through the Smith decomposition of the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionPair {
    ring: Ring,
}

/// The five-term sequence `0 -> t(M) -> M -> M/t(M) -> 0`.
#[derive(Clone, Debug)]
pub struct TorsionSes {
    pub torsion: FpObject,
    /// strict mono `t(M) -> M`
    pub inclusion: FpMorphism,
    pub object: FpObject,
    /// strict epi `M -> M/t(M)`
    pub projection: FpMorphism,
    pub quotient: FpObject,
}

/// Pullback computed inside the torsion class: the radical of the ambient
/// pullback, with legs composed through the inclusion.
#[derive(Clone, Debug)]
pub struct TorsionPullback {
    pub apex: FpObject,
    pub to_a: FpMorphism,
    pub to_x: FpMorphism,
    /// `t(D) -> D`, into the ambient pullback object
    pub mu: FpMorphism,
    pub ambient: PullbackSquare,
}

impl TorsionPair {
    pub fn over(ring: Ring) -> Self {
        Self { ring }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_torsion(&self, m: &FpObject) -> bool {
        m.normal_form().rank == 0
    }

    pub fn is_torsion_free(&self, m: &FpObject) -> bool {
        m.normal_form().factors.is_empty()
    }

    /// The radical `t(M)` with its inclusion.
    pub fn radical(&self, m: &FpObject) -> (FpObject, FpMorphism) {
        let cf = canonical_form(m);
        let factors = cf.object.normal_form().factors.clone();
        let t = factors.len();
        let total = cf.object.generators();
        let t_obj = FpObject::canonical(self.ring, &factors, 0);
        // torsion generators come first in the canonical presentation
        let inj_mat = RatMatrix::from_fn(total, t, |i, j| {
            if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        });
        let inj = FpMorphism::new_unchecked(
            ExactMatrix::wrap(self.ring, inj_mat),
            t_obj.clone(),
            cf.object.clone(),
        );
        let mu = cf.from.compose(&inj).expect("canonical endpoints");
        (t_obj, mu)
    }

    /// The coradical `M/t(M)` with its projection.
    pub fn coradical(&self, m: &FpObject) -> (FpObject, FpMorphism) {
        let cf = canonical_form(m);
        let t = cf.object.normal_form().factors.len();
        let rank = cf.object.normal_form().rank;
        let total = cf.object.generators();
        let q_obj = FpObject::free(self.ring, rank);
        let proj_mat = RatMatrix::from_fn(rank, total, |i, j| {
            if j == i + t {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        });
        let proj = FpMorphism::new_unchecked(
            ExactMatrix::wrap(self.ring, proj_mat),
            cf.object.clone(),
            q_obj.clone(),
        );
        let pi = proj.compose(&cf.to).expect("canonical endpoints");
        (q_obj, pi)
    }

    /// The short exact sequence `0 -> t(M) -> M -> M/t(M) -> 0`.
    pub fn torsion_ses(&self, m: &FpObject) -> TorsionSes {
        let (torsion, inclusion) = self.radical(m);
        let (quotient, projection) = self.coradical(m);
        TorsionSes {
            torsion,
            inclusion,
            object: m.clone(),
            projection,
            quotient,
        }
    }

    /// Functorial action on morphisms: the unique `t(f)` with
    /// `mu_N ∘ t(f) = f ∘ mu_M`.
    pub fn radical_map(&self, f: &FpMorphism) -> FpMorphism {
        let (_, mu_src) = self.radical(f.src());
        let (_, mu_dst) = self.radical(f.dst());
        let t = f.compose(&mu_src).expect("endpoints match");
        factor_through_kernel(&t, &mu_dst)
            .expect("image of torsion is torsion, so the factorization exists")
    }

    /// Kernel inside the torsion class: `t(Ker_ambient f)` with the
    /// composed inclusion.
    pub fn kernel_in_torsion_class(&self, f: &FpMorphism) -> (FpObject, FpMorphism) {
        let (k, k_arrow) = kernel(f);
        let (tk, mu) = self.radical(&k);
        let arrow = k_arrow.compose(&mu).expect("endpoints match");
        (tk, arrow)
    }

    /// Pullback inside the torsion class: radical of the ambient pullback.
    pub fn pullback_in_torsion_class(
        &self,
        f: &FpMorphism,
        g: &FpMorphism,
    ) -> Result<TorsionPullback, FpError> {
        let ambient = pullback(f, g)?;
        let d = ambient.to_a.src().clone();
        let (apex, mu) = self.radical(&d);
        let to_a = ambient.to_a.compose(&mu)?;
        let to_x = ambient.to_x.compose(&mu)?;
        Ok(TorsionPullback {
            apex,
            to_a,
            to_x,
            mu,
            ambient,
        })
    }

    /// Cokernel inside the torsion-free class: ambient cokernel followed by
    /// the coradical quotient.
    pub fn cokernel_in_torsionfree_class(&self, f: &FpMorphism) -> (FpObject, FpMorphism) {
        let (c, c_arrow) = cokernel(f);
        let (q, pi) = self.coradical(&c);
        let arrow = pi.compose(&c_arrow).expect("endpoints match");
        (q, arrow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::random::{random_finite_object, random_morphism, random_object};
    use crate::fpmod::{factor_through_epi, is_isomorphism};
    use crate::rng::trial_rng;
    use crate::Integer;
    use rand::Rng;

    fn pair() -> TorsionPair {
        TorsionPair::over(Ring::Z)
    }

    #[test]
    fn radical_examples() {
        // Z + Z/6 -> Z/6
        let m = FpObject::canonical(Ring::Z, &[Integer::from(6)], 1);
        let (t, mu) = pair().radical(&m);
        assert_eq!(t.normal_form().factors, vec![Integer::from(6)]);
        assert_eq!(t.normal_form().rank, 0);
        assert!(!mu.is_zero_morphism());

        // Z^2 -> 0
        let m = FpObject::free(Ring::Z, 2);
        let (t, _) = pair().radical(&m);
        assert!(t.is_zero_object());

        // Z/4 + Z/9 is all torsion
        let m = FpObject::from_relations(Ring::Z, 2, vec![vec![4, 0], vec![0, 9]]);
        let (t, _) = pair().radical(&m);
        assert!(t.is_isomorphic(&m));
    }

    #[test]
    fn ses_is_exact() {
        let m = FpObject::canonical(Ring::Z, &[Integer::from(2)], 1);
        let ses = pair().torsion_ses(&m);
        assert_eq!(ses.torsion.normal_form().factors, vec![Integer::from(2)]);
        assert_eq!(ses.quotient.normal_form().rank, 1);

        let comp = ses.projection.compose(&ses.inclusion).unwrap();
        assert!(comp.is_zero_morphism());

        // i = ker p: the canonical comparison is an isomorphism
        let (kp, kp_arrow) = kernel(&ses.projection);
        assert!(kp.is_isomorphic(&ses.torsion));
        let h = factor_through_kernel(&ses.inclusion, &kp_arrow).unwrap();
        assert!(is_isomorphism(&h));

        // p = coker i
        let (ci, ci_arrow) = cokernel(&ses.inclusion);
        assert!(ci.is_isomorphic(&ses.quotient));
        let w = factor_through_epi(&ses.projection, &ci_arrow).unwrap();
        assert!(is_isomorphism(&w));
    }

    #[test]
    fn ses_of_torsion_object() {
        let m = FpObject::cyclic(Ring::Z, 8);
        let ses = pair().torsion_ses(&m);
        assert!(ses.quotient.is_zero_object());
        assert!(ses.projection.is_zero_morphism());
    }

    #[test]
    fn twisted_cokernel_is_torsion_free() {
        // coker of 1 -> (2, 1) : Z -> Z^2 is Z, so its radical vanishes
        let z = FpObject::free(Ring::Z, 1);
        let z2 = FpObject::free(Ring::Z, 2);
        let f = FpMorphism::from_i64(vec![vec![2], vec![1]], z, z2).unwrap();
        let (c, _) = cokernel(&f);
        let (t, _) = pair().radical(&c);
        assert!(t.is_zero_object());
    }

    #[test]
    fn torsion_pullback_examples() {
        // f : Z/4 -> Z/2 canonical, g = id on Z/2: apex has order 4
        let z4 = FpObject::cyclic(Ring::Z, 4);
        let z2 = FpObject::cyclic(Ring::Z, 2);
        let f = FpMorphism::from_i64(vec![vec![1]], z4, z2.clone()).unwrap();
        let g = FpMorphism::identity(&z2);
        let pb = pair().pullback_in_torsion_class(&f, &g).unwrap();
        assert_eq!(pb.apex.normal_form().order(), Some(Integer::from(4)));

        // pullback along the identity gives back the source
        let pb = pair()
            .pullback_in_torsion_class(&g, &FpMorphism::identity(&z2))
            .unwrap();
        assert!(pb.apex.is_isomorphic(&z2));

        // zero source forces a zero apex
        let zero = FpObject::zero(Ring::Z);
        let f0 = FpMorphism::zero(&zero, &z2);
        let pb = pair().pullback_in_torsion_class(&f0, &g).unwrap();
        assert!(pb.apex.is_zero_object());
    }

    #[test]
    fn torsionfree_cokernel_examples() {
        let z = FpObject::free(Ring::Z, 1);
        let z2 = FpObject::free(Ring::Z, 2);

        // x2 : Z -> Z is epi among lattices
        let f = FpMorphism::from_i64(vec![vec![2]], z.clone(), z.clone()).unwrap();
        let (c, _) = pair().cokernel_in_torsionfree_class(&f);
        assert!(c.is_zero_object());

        let id = FpMorphism::identity(&z);
        let (c, _) = pair().cokernel_in_torsionfree_class(&id);
        assert!(c.is_zero_object());

        // first-coordinate inclusion Z -> Z^2 has lattice cokernel Z
        let f = FpMorphism::from_i64(vec![vec![1], vec![0]], z, z2).unwrap();
        let (c, _) = pair().cokernel_in_torsionfree_class(&f);
        assert_eq!(c.normal_form().rank, 1);
        assert!(c.normal_form().factors.is_empty());
    }

    #[test]
    fn radical_is_a_subfunctor() {
        let p = pair();
        for trial in 0..60 {
            let mut rng = trial_rng(31, trial);
            let a = random_object(&mut rng, Ring::Z, 3, 4);
            let b = random_object(&mut rng, Ring::Z, 3, 4);
            let c = random_object(&mut rng, Ring::Z, 3, 4);
            let f = random_morphism(&mut rng, &a, &b, 3);
            let g = random_morphism(&mut rng, &b, &c, 3);

            let tf = p.radical_map(&f);
            let (_, mu_a) = p.radical(&a);
            let (_, mu_b) = p.radical(&b);
            let lhs = mu_b.compose(&tf).unwrap();
            let rhs = f.compose(&mu_a).unwrap();
            assert!(lhs.equals(&rhs).unwrap());

            let tg = p.radical_map(&g);
            let tgf = p.radical_map(&g.compose(&f).unwrap());
            assert!(tgf.equals(&tg.compose(&tf).unwrap()).unwrap());
        }
    }

    #[test]
    fn radical_is_idempotent_and_radical() {
        let p = pair();
        for trial in 0..60 {
            let mut rng = trial_rng(32, trial);
            let m = random_object(&mut rng, Ring::Z, 3, 5);
            let (t, _) = p.radical(&m);
            let (tt, _) = p.radical(&t);
            assert!(tt.is_isomorphic(&t), "idempotence");
            let (q, _) = p.coradical(&m);
            let (tq, _) = p.radical(&q);
            assert!(tq.is_zero_object(), "radical of the quotient vanishes");
        }
    }

    #[test]
    fn localized_pair_works_too() {
        let ring = Ring::Local(3);
        let p = TorsionPair::over(ring);
        let m = FpObject::canonical(ring, &[Integer::from(9)], 1);
        let (t, _) = p.radical(&m);
        assert_eq!(t.normal_form().factors, vec![Integer::from(9)]);
        let (q, _) = p.coradical(&m);
        assert!(p.is_torsion_free(&q));
    }

    #[test]
    fn hom_from_torsion_to_torsion_free_vanishes() {
        let p = pair();
        for trial in 0..60 {
            let mut rng = trial_rng(33, trial);
            let t = random_finite_object(&mut rng, Ring::Z, 2, 64);
            let f_rank = rng.gen_range(0..=2usize);
            let f_obj = FpObject::free(Ring::Z, f_rank);
            assert!(p.is_torsion(&t));
            assert!(p.is_torsion_free(&f_obj));
            // any well-defined candidate matrix is the zero morphism
            let cand = random_morphism(&mut rng, &t, &f_obj, 4);
            assert!(cand.is_zero_morphism());
        }
    }

    #[test]
    fn closure_properties_on_samples() {
        let p = pair();
        for trial in 0..40 {
            let mut rng = trial_rng(34, trial);
            let a = random_finite_object(&mut rng, Ring::Z, 2, 36);
            let b = random_finite_object(&mut rng, Ring::Z, 2, 36);
            let f = random_morphism(&mut rng, &a, &b, 3);
            // quotients of torsion are torsion
            let (c, _) = cokernel(&f);
            assert!(p.is_torsion(&c));
            // subobjects of torsion-free are torsion-free
            let l = FpObject::free(Ring::Z, 2);
            let m = random_object(&mut rng, Ring::Z, 2, 3);
            let g = random_morphism(&mut rng, &FpObject::free(Ring::Z, 3), &l, 3);
            let (k, _) = kernel(&g);
            assert!(p.is_torsion_free(&k));
            let _ = m;
        }
    }

    #[test]
    fn torsion_pullback_universal_property_on_sampled_cones() {
        let p = pair();
        let mut tested = 0;
        for trial in 0..25 {
            let mut rng = trial_rng(35, trial);
            let a = random_finite_object(&mut rng, Ring::Z, 2, 16);
            let b = random_finite_object(&mut rng, Ring::Z, 2, 16);
            let x = random_finite_object(&mut rng, Ring::Z, 2, 16);
            let f = random_morphism(&mut rng, &a, &b, 3);
            let g = random_morphism(&mut rng, &x, &b, 3);
            let pb = p.pullback_in_torsion_class(&f, &g).unwrap();

            for _ in 0..4 {
                // every torsion cone factors through the apex, so sampling
                // arrows into the apex samples cones
                let apex_t = random_finite_object(&mut rng, Ring::Z, 2, 16);
                let w = random_morphism(&mut rng, &apex_t, &pb.apex, 3);
                let u = pb.to_a.compose(&w).unwrap();
                let v = pb.to_x.compose(&w).unwrap();
                let cone_l = f.compose(&u).unwrap();
                let cone_r = g.compose(&v).unwrap();
                assert!(cone_l.equals(&cone_r).unwrap());

                // reconstruct the mediating arrow from (u, v) alone
                let stacked = FpMorphism::new_unchecked(
                    u.matrix().vstack(v.matrix()),
                    apex_t.clone(),
                    pb.ambient.biproduct.object.clone(),
                );
                let m = factor_through_kernel(&stacked, &pb.ambient.apex_inclusion)
                    .expect("cone mediates through the ambient pullback");
                let w_rec = factor_through_kernel(&m, &pb.mu)
                    .expect("torsion cone lands in the radical");
                assert!(w_rec.equals(&w).unwrap(), "mediating arrow is unique");
                tested += 1;
            }
        }
        assert!(tested > 0);
    }
}
