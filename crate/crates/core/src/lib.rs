//! Faber-Walsh polynomials for compact sets with several simply connected
//! components: lemniscatic maps, polynomial families, series expansions and
//! asymptotic convergence factors.

// `!(x > y)` is used on purpose so that NaN parameters are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fw;
pub mod lemniscatic;
pub mod maps;
pub mod poly;
pub mod quadrature;

pub use error::{FwError, Result};
pub use fw::{acf, FaberWalshFamily};
pub use lemniscatic::{build_focus_sequence, FocusOrder, FocusSequence, LemniscaticDomain};
pub use maps::{ConformalPair, SetDescriptor};
pub use poly::{LaurentAtInfinity, Poly};
