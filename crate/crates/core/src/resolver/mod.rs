//! Evaluation-kernel bundles and the chain of kernels resolving an ideal
//! sheaf, with generation, local-freeness and stability checks.

pub mod certify;
pub mod generation;
pub mod sections;
pub mod stage;
pub mod uniformity;

pub use certify::{
    certify_locally_free, exterior_sections, hoppe_check, LocalFreeness, Stability, HOPPE_BUDGET, MINOR_BUDGET,
};
pub use generation::{
    check_generation, genericity_experiment, jacobian_rank, Certification, GenerationCheck, GenericityReport,
};
pub use sections::SectionSpace;
pub use stage::{
    build_chain, build_surface_kernel, choose_curve, ChainConfig, ChainReport, KernelStage, Mode, ResolutionChain,
    StageFlags, StageReport, TerminalReport, VPolicy, MODULE_MAX_SECTIONS, RETRY_BUDGET,
};
pub use uniformity::{uniformity_experiment, InvariantTuple, SampleOutcome, UniformityReport};
