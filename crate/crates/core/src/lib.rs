//! Discrete Wigner functions on a semi-discrete phase space: an integer (or
//! half-integer) lattice index `n` paired with a periodic quasi-momentum `k`.
//!
//! The crate is organised around four areas:
//!
//! * [`phase_space`]: lattice states, density windows, the Wigner transform,
//!   marginals, operator reconstruction and the 2x2 spinor variant.
//! * [`dynamics`]: the tight-binding chain (Bessel Green function and the
//!   discrete wave equation) and the general propagator kernel for any
//!   Hamiltonian that is diagonal in the lattice basis.
//! * [`models`]: Jaynes-Cummings, Rabi, Buck-Sukumar and dispersive models and
//!   their mapping onto the lattice.
//! * [`oracle`]: slow brute-force references used to certify the fast paths.
//!
//! Index convention: everywhere a lattice coordinate may be half-integer it is
//! carried as `n_twice: i64`, i.e. twice its value.

pub mod dynamics;
pub mod error;
pub mod io;
pub mod models;
pub mod oracle;
pub mod phase_space;
pub mod special;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use crate::dynamics::spectrum::SpectrumModel;
pub use crate::error::{Error, Result};
pub use crate::models::hybrid::HybridState;
pub use crate::phase_space::{
    DensityWindow, LatticeMode, LatticeState, Period, QuasiMomentumGrid, WignerField,
};
