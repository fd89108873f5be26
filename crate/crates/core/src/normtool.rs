//! Numerical diagnostics (to be filled in).

/// Placeholder generic operator so the crate-root alias resolves.
pub struct Operator<F> {
    _marker: std::marker::PhantomData<F>,
}
