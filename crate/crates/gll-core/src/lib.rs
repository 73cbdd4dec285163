//! Grand and small Lebesgue norms on finite measure spaces, convolution
//! algebra on finite abelian groups (desk-scale models of compact abelian
//! `G`), and the multiplier/approximate-identity machinery built on top.
//!
//! The grand norm `‖f‖_{p),θ} = sup_{0<ε≤p-1} ε^{θ/(p-ε)} ‖f‖_{p-ε}` is
//! computed as a certified lower bound (dense ε-grid plus golden-section
//! refinement). The small norm, an infimum over countable decompositions, is
//! reported as a certified `[lower, upper]` bracket: decomposition strategies
//! above, associate duality below.

pub mod error;
pub mod grand_norm;
pub mod group_algebra;
pub mod io;
pub mod measure_space;
pub mod multipliers;
mod optimize;
pub mod small_norm;

pub use error::{Error, Result};
pub use grand_norm::{epsilon_profile, grand_norm, vanishing_tail, EpsilonProfile};
pub use group_algebra::{
    convolve, convolve_fft, fejer_family, haar_space, point_mass, translate,
    ApproximateIdentityFamily, GroupStructure,
};
pub use measure_space::{
    conjugate_exponent, integrate_product, lp_norm, EpsilonGrid, ExponentParams, MeasureSpace,
    SampledFunction, Spacing,
};
pub use multipliers::{
    approx_identity_convergence, commutation_residual, factorization_density_check,
    module_inequality_check, multiplier_ratio_report, operator_norm_l1_to,
    operator_norm_search_lower, relative_completion_norm, CodomainNorm, ConvolutionOperator,
    FactorizationReport, ModuleInequalityReport, MultiplierRatioReport, NormSelector,
    OperatorNormMethod, OperatorNormReport,
};
pub use small_norm::{
    associate_lower_bound, decomposition_cost, default_strategies, dominated_monotonicity_check,
    small_norm_estimate, small_norm_upper, small_norm_upper_detailed, term_cost, Decomposition,
    NormEstimate, Strategy, UpperBound,
};
