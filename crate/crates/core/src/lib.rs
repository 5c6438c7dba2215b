//! Exact symbolic workbench for compact quantum groups at the Hopf *-algebra level.

pub mod corep;
pub mod dsl;
pub mod dual;
pub mod error;
pub mod haar;
pub mod hopf;
pub mod ncalg;
pub mod presets;
pub mod regrep;
pub mod scalar;

pub use error::{CqgError, Result};
pub use scalar::{GaussQ, Poly, Scalar};
pub use corep::{Corep, IrrepRegistry, Label};
pub use dual::{DualContext, DualElement};
pub use haar::HaarTable;
pub use hopf::CqgAlgebra;
pub use ncalg::{NcPoly, Presentation, TensorPoly, Word};
pub use regrep::FiniteAlgebra;
