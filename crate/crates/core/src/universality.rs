//! Morphism classification (to be filled in).
