//! Kernels, cokernels, the canonical decomposition, biproducts, pushouts
//! and pullbacks.

use num_traits::Zero;

use super::{is_isomorphism, FpError, FpMorphism, FpObject};
use crate::exact::{kernel_basis, solve, ExactMatrix};
use crate::{RatMatrix, Rational};

/// Kernel: the object `K` together with the mono `k : K -> src(f)` with
/// `f ∘ k = 0`, universal among arrows killed by `f`.
pub fn kernel(f: &FpMorphism) -> (FpObject, FpMorphism) {
    let ring = f.ring();
    let p = f.matrix();
    let r_dst = f.dst().relations();
    let g_src = f.src().generators();

    // preimage lattice {x : P x lies in the relation lattice of dst}
    let stacked = p.hstack(&r_dst.neg());
    let full = kernel_basis(&stacked);
    let b = ExactMatrix::wrap(ring, full.mat().submatrix(0, 0, g_src, full.cols()));

    // relations of K: integer combinations of the generators that land in
    // the relation lattice of src
    let r_src = f.src().relations();
    let stacked2 = b.hstack(&r_src.neg());
    let full2 = kernel_basis(&stacked2);
    let rel = ExactMatrix::wrap(ring, full2.mat().submatrix(0, 0, b.cols(), full2.cols()));

    let k_obj = FpObject::new(rel);
    let arrow = FpMorphism::new_unchecked(b, k_obj.clone(), f.src().clone());
    (k_obj, arrow)
}

/// Cokernel: target relations augmented with the columns of the matrix;
/// the arrow is the identity on generators.
pub fn cokernel(f: &FpMorphism) -> (FpObject, FpMorphism) {
    let r_dst = f.dst().relations();
    let rel = r_dst.hstack(f.matrix());
    let c_obj = FpObject::new(rel);
    let arrow = FpMorphism::new_unchecked(
        ExactMatrix::identity(f.ring(), f.dst().generators()),
        f.dst().clone(),
        c_obj.clone(),
    );
    (c_obj, arrow)
}

/// Factors `t` through a kernel arrow `k` (both into the same object),
/// returning `h` with `k ∘ h = t`; exists iff the composite being killed
/// holds, i.e. `t` lands inside the kernel.
pub fn factor_through_kernel(t: &FpMorphism, k: &FpMorphism) -> Option<FpMorphism> {
    assert_eq!(t.dst(), k.dst(), "factor target mismatch");
    let ring = t.ring();
    let b = k.matrix();
    let r = k.dst().relations();
    let combined = b.hstack(r);
    let mut cols = Vec::with_capacity(t.matrix().cols());
    for j in 0..t.matrix().cols() {
        let col = t.matrix().mat().col_vec(j);
        let sol = solve(&combined, &col)?;
        cols.push(sol[..b.cols()].to_vec());
    }
    let h = RatMatrix::from_fn(b.cols(), t.matrix().cols(), |i, j| cols[j][i].clone());
    FpMorphism::new(
        ExactMatrix::wrap(ring, h),
        t.src().clone(),
        k.src().clone(),
    )
    .ok()
}

/// Factors `t` through a cokernel arrow `c` (both out of the same object),
/// returning `w` with `w ∘ c = t`; exists iff `t` kills what `c` kills.
pub fn factor_through_cokernel(t: &FpMorphism, c: &FpMorphism) -> Option<FpMorphism> {
    assert_eq!(t.src(), c.src(), "factor source mismatch");
    // cokernel generators coincide with the source generators, so the
    // candidate matrix is t's matrix; only well-definedness is at stake
    let composed = t.matrix().mul(c_section(c)).ok()?;
    FpMorphism::new(composed, c.dst().clone(), t.dst().clone()).ok()
}

// The cokernel arrow produced here is always the identity on generators;
// its section on generator level is the identity matrix.
fn c_section(c: &FpMorphism) -> &ExactMatrix {
    c.matrix()
}

/// Solves `h ∘ alpha = psi` for `h` when `alpha` is epi; the factorization
/// of a morphism through a quotient.
pub fn factor_through_epi(psi: &FpMorphism, alpha: &FpMorphism) -> Option<FpMorphism> {
    assert_eq!(psi.src(), alpha.src(), "factor source mismatch");
    let ring = psi.ring();
    let g_y = psi.dst().generators();
    let g_g = alpha.dst().generators();
    let g_k = psi.src().generators();
    let r_y = psi.dst().relations();

    // vec(h * P_alpha) = (P_alpha^T ⊗ I) vec(h); columns of the slack term
    // run over the relation lattice of the target
    let a_part = alpha.matrix().mat().transpose().kron(&RatMatrix::identity(g_y));
    let slack = RatMatrix::identity(g_k).kron(r_y.mat());
    let system = ExactMatrix::wrap(ring, a_part.hstack(&slack));
    let rhs: Vec<Rational> = {
        // vec by columns of P_psi
        let m = psi.matrix().mat();
        let mut v = Vec::with_capacity(g_y * g_k);
        for j in 0..g_k {
            for i in 0..g_y {
                v.push(m.at(i, j).clone());
            }
        }
        v
    };
    let sol = solve(&system, &rhs)?;
    let h = RatMatrix::from_fn(g_y, g_g, |i, j| sol[j * g_y + i].clone());
    FpMorphism::new(
        ExactMatrix::wrap(ring, h),
        alpha.dst().clone(),
        psi.dst().clone(),
    )
    .ok()
}

/// The `§1`-style five-arrow data attached to a single morphism.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    pub kernel: (FpObject, FpMorphism),
    pub cokernel: (FpObject, FpMorphism),
    /// strict epi `src -> Coim`
    pub coimage: (FpObject, FpMorphism),
    /// strict mono `Im -> dst`
    pub image: (FpObject, FpMorphism),
    /// induced arrow `Coim -> Im`
    pub induced: FpMorphism,
    pub is_strict: bool,
}

/// Canonical decomposition of `f`, with the strictness flag.
pub fn decompose(f: &FpMorphism) -> CanonicalDecomposition {
    let ring = f.ring();
    let (k_obj, k_arrow) = kernel(f);
    let (c_obj, c_arrow) = cokernel(f);

    // coimage = cokernel of the kernel arrow
    let (coim_obj, coim_arrow) = cokernel(&k_arrow);

    // image = kernel of the cokernel arrow
    let (im_obj, im_arrow) = kernel(&c_arrow);

    // induced arrow on generators: express f through the image lattice
    let b_im = im_arrow.matrix();
    let r_dst = f.dst().relations();
    let combined = b_im.hstack(r_dst);
    let mut cols = Vec::with_capacity(f.matrix().cols());
    for j in 0..f.matrix().cols() {
        let col = f.matrix().mat().col_vec(j);
        let sol = solve(&combined, &col).expect("f lands inside its image lattice");
        cols.push(sol[..b_im.cols()].to_vec());
    }
    let fbar_mat = RatMatrix::from_fn(b_im.cols(), f.matrix().cols(), |i, j| cols[j][i].clone());
    let induced = FpMorphism::new_unchecked(
        ExactMatrix::wrap(ring, fbar_mat),
        coim_obj.clone(),
        im_obj.clone(),
    );
    let is_strict = is_isomorphism(&induced);

    CanonicalDecomposition {
        kernel: (k_obj, k_arrow),
        cokernel: (c_obj, c_arrow),
        coimage: (coim_obj, coim_arrow),
        image: (im_obj, im_arrow),
        induced,
        is_strict,
    }
}

#[derive(Clone, Debug)]
pub struct Biproduct {
    pub object: FpObject,
    pub inj_left: FpMorphism,
    pub inj_right: FpMorphism,
    pub proj_left: FpMorphism,
    pub proj_right: FpMorphism,
}

pub fn biproduct(a: &FpObject, b: &FpObject) -> Biproduct {
    assert_eq!(a.ring(), b.ring());
    let ring = a.ring();
    let object = FpObject::new(a.relations().block_diag(b.relations()));
    let ga = a.generators();
    let gb = b.generators();
    let inj_left_mat = RatMatrix::from_fn(ga + gb, ga, |i, j| {
        if i == j {
            Rational::from_integer(1.into())
        } else {
            Rational::zero()
        }
    });
    let inj_right_mat = RatMatrix::from_fn(ga + gb, gb, |i, j| {
        if i == j + ga {
            Rational::from_integer(1.into())
        } else {
            Rational::zero()
        }
    });
    let proj_left_mat = inj_left_mat.transpose();
    let proj_right_mat = inj_right_mat.transpose();
    Biproduct {
        inj_left: FpMorphism::new_unchecked(
            ExactMatrix::wrap(ring, inj_left_mat),
            a.clone(),
            object.clone(),
        ),
        inj_right: FpMorphism::new_unchecked(
            ExactMatrix::wrap(ring, inj_right_mat),
            b.clone(),
            object.clone(),
        ),
        proj_left: FpMorphism::new_unchecked(
            ExactMatrix::wrap(ring, proj_left_mat),
            object.clone(),
            a.clone(),
        ),
        proj_right: FpMorphism::new_unchecked(
            ExactMatrix::wrap(ring, proj_right_mat),
            object.clone(),
            b.clone(),
        ),
        object,
    }
}

/// Pushout square of `f : A -> B` along `g : A -> X`, with the induced
/// epimorphism between kernels.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    pub f: FpMorphism,
    pub g: FpMorphism,
    /// the pushed-forward `f`, out of `X`
    pub f_prime: FpMorphism,
    /// the pushed-forward `g`, out of `B`
    pub g_prime: FpMorphism,
    /// `Ker f -> A`
    pub ker_f: (FpObject, FpMorphism),
    /// `Ker f' -> X`
    pub ker_f_prime: (FpObject, FpMorphism),
    /// induced `Ker f -> Ker f'`; an epimorphism
    pub psi: FpMorphism,
    /// the quotient arrow `B ⊕ X -> Y`
    pub coker_arrow: FpMorphism,
    pub biproduct: Biproduct,
}

/// Pushout along the cokernel recipe: the target is
/// `Coker(A -> B ⊕ X)` for the column-stacked difference morphism.
pub fn pushout(f: &FpMorphism, g: &FpMorphism) -> Result<PushoutSquare, FpError> {
    if f.src() != g.src() {
        return Err(FpError::Endpoints("pushout legs must share a source".into()));
    }
    let bi = biproduct(f.dst(), g.dst());
    let stacked_mat = f.matrix().vstack(&g.matrix().neg());
    let stacked = FpMorphism::new_unchecked(stacked_mat, f.src().clone(), bi.object.clone());
    let (_, c_arrow) = cokernel(&stacked);

    let g_prime = c_arrow.compose(&bi.inj_left)?;
    let f_prime = c_arrow.compose(&bi.inj_right)?;

    let ker_f = kernel(f);
    let ker_f_prime = kernel(&f_prime);
    let t = g.compose(&ker_f.1)?;
    let psi = factor_through_kernel(&t, &ker_f_prime.1)
        .ok_or_else(|| FpError::Invalid("induced kernel morphism did not factor".into()))?;

    Ok(PushoutSquare {
        f: f.clone(),
        g: g.clone(),
        f_prime,
        g_prime,
        ker_f,
        ker_f_prime,
        psi,
        coker_arrow: c_arrow,
        biproduct: bi,
    })
}

/// Pullback square of `f : A -> B` along `g : X -> B`, with the induced
/// isomorphism between the kernels of `f` and of the pulled-back arrow.
#[derive(Clone, Debug)]
pub struct PullbackSquare {
    pub f: FpMorphism,
    pub g: FpMorphism,
    /// `D -> A`
    pub to_a: FpMorphism,
    /// `D -> X`; the pulled-back `f`
    pub to_x: FpMorphism,
    /// `Ker(to_x) -> D`
    pub ker_f_prime: (FpObject, FpMorphism),
    /// `Ker f -> A`
    pub ker_f: (FpObject, FpMorphism),
    /// induced `Ker(to_x) -> Ker f`; an isomorphism
    pub kernel_iso: FpMorphism,
    /// the apex embedding `D -> A ⊕ X`
    pub apex_inclusion: FpMorphism,
    pub biproduct: Biproduct,
}

/// Pullback via the kernel recipe: `D = Ker(A ⊕ X -> B)`.
pub fn pullback(f: &FpMorphism, g: &FpMorphism) -> Result<PullbackSquare, FpError> {
    if f.dst() != g.dst() {
        return Err(FpError::Endpoints("pullback legs must share a target".into()));
    }
    let bi = biproduct(f.src(), g.src());
    let row_mat = f.matrix().hstack(&g.matrix().neg());
    let row = FpMorphism::new_unchecked(row_mat, bi.object.clone(), f.dst().clone());
    let (d_obj, d_arrow) = kernel(&row);

    let to_a = bi.proj_left.compose(&d_arrow)?;
    let to_x = bi.proj_right.compose(&d_arrow)?;

    let ker_f = kernel(f);
    let ker_f_prime = kernel(&to_x);
    let t = to_a.compose(&ker_f_prime.1)?;
    let kernel_iso = factor_through_kernel(&t, &ker_f.1)
        .ok_or_else(|| FpError::Invalid("induced kernel morphism did not factor".into()))?;
    let _ = d_obj;

    Ok(PullbackSquare {
        f: f.clone(),
        g: g.clone(),
        to_a,
        to_x,
        ker_f_prime,
        ker_f,
        kernel_iso,
        apex_inclusion: d_arrow,
        biproduct: bi,
    })
}
