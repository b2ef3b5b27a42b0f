//! Memory-kernel pairs, intrinsic scaling, Volterra machinery and a 1-D
//! solver for subdiffusion equations ∂ₜ(k ∗ (u − u₀)) − ∂ₓ(A ∂ₓu) = f.

pub mod assumptions;
pub mod convolution;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod mesh;
pub mod mittag_leffler;
pub mod pde;
pub mod presets;
pub mod quadrature;
pub mod scaling;
pub mod special;
pub mod volterra;

pub use convolution::{ConvolutionWeights, WeightMode};
pub use error::{Error, Result};
pub use kernel::{eval_k, eval_l, k1, one_conv_l, r0, Family, Kernel, KernelSpec, Measure, Side};
pub use mesh::TimeMesh;
pub use mittag_leffler::mittag_leffler;
pub use scaling::{make_boxes, nested_cylinder, CylinderSpec, PhiSolver, SpaceTimeBox};
pub use assumptions::{certify, check_inequalities, AssumptionCertificate, CertifyOptions, InequalityReport};
pub use volterra::{check_fundamental_identity, resolvent, solve_second_kind, ConvexFn, ResolventKernel};
pub use pde::{solve, BoundaryCondition, DiscreteField, MixedNormSpec, NormExponents, ProblemSpec};
pub use harness::{critical_exponent, harnack_ratio, hoelder_decay, sweep, HarnackReport, HoelderReport, SweepCase, SweepRow};
