//! Isolated exact (Juddian) eigenstates of the quantum Rabi model.
//!
//! The solver transforms the field to coherent bosons, imposes a finite
//! Ansatz in their number states and reduces the eigenproblem to a
//! polynomial compatibility condition in λ². Everything it produces can be
//! cross-checked against direct diagonalization in a truncated Fock basis,
//! which this crate also provides.

pub mod numerics;
pub mod boson;
pub mod rabi;
pub mod juddian;
