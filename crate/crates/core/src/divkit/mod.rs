//! Symbolic standard-group calculus (to be filled in).
