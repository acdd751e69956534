pub mod kernel;
pub mod propagate;
pub mod spectrum;
pub mod tight_binding;

pub use kernel::{kernel_partial_sum, kernel_trace_identity_check, kernel_value, PropagatorKernel};
pub use propagate::{propagate_delta_field, propagate_wigner, ConvolutionMethod, PropagateOptions};
pub use spectrum::SpectrumModel;
pub use tight_binding::{
    centroid_velocity, position_mean, shear_transport_predict, tb_evolve_state, tb_evolve_state_in,
    tb_wigner_closed_form, wave_equation_residual,
};
