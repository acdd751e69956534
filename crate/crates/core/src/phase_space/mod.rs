pub mod cats;
pub mod field;
pub mod fourier;
pub mod grid;
pub mod lattice;
pub mod marginals;
pub mod spinor;
pub mod wigner;

pub use cats::{cat_momentum_wigner, cat_position_wigner, DeltaLine, DeltaLineField, LineProfile};
pub use field::WignerField;
pub use fourier::{fourier_transform, parity_fourier, Parity};
pub use grid::{Period, QuasiMomentumGrid};
pub use lattice::{DensityWindow, DensityWindowJson, LatticeMode, LatticeState};
pub use marginals::{
    coherence_extract, marginal_momentum, marginal_position, momentum_density, reconstruct_from_field,
    reconstruct_operator,
};
pub use spinor::{spinor_wigner, Sign, SpinorWigner, SpinorWignerParams};
pub use wigner::{wigner_from_density, wigner_from_state, wigner_from_state_in, wigner_point};
