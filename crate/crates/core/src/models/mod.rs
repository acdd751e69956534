pub mod caustics;
pub mod coherent;
pub mod dressed;
pub mod hybrid;
pub mod jc;
pub mod linear;
pub mod rabi;

pub use caustics::{caustics, CausticPoint, CausticQuery, Extremum};
pub use coherent::{
    autocorrelation, coherent_bare_state, dressed_coherent, jc_coherent_wigner_closed, revival_time, Branch,
};
pub use dressed::{bare_to_dressed, dressed_to_bare, DressedMap};
pub use hybrid::{excitation_distribution, excitation_moments, Atom, HybridState};
pub use jc::{jc_dressed_map, jc_spectrum, JcParams};
pub use linear::{bs_spectrum, dispersive_spectrum};
pub use rabi::{rabi_evolve, rabi_hamiltonian, rabi_wigner_portrait, RabiEvolver, RabiParams};
