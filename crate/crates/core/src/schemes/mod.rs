//! Subschemes of projective space, their twisted ideal sheaves, and the
//! complete-intersection curve attached to a polarization.

pub mod builtins;
pub mod curve;
pub mod input;
pub mod polarization;
pub mod subscheme;

pub use builtins::{builtin, builtin_ambient, random_point_coords, random_points, BUILTINS};
pub use curve::{random_form, restrict_to_curve, CurveSection, Restriction};
pub use input::{parse_input, InputBody, SubschemeInput};
pub use polarization::{curve_genus, Polarization};
pub use subscheme::{h0_by_evaluation, h0_ideal_twist, h1_ideal_twist, point_ideal, SubschemeData};
