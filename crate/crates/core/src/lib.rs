//! Affine and projective equations for varieties of modules with a fixed
//! radical layering over a truncated path algebra.
//!
//! The crate reads a quiver presentation, enumerates skeleta, derives the
//! polynomial systems cutting out the corresponding varieties and their
//! projective closures, and exports them for external computer algebra.

pub mod error;
pub mod exec;
pub mod export;
pub mod grass;
pub mod job;
pub mod lift;
pub mod linalg;
pub mod path;
pub mod presentation;
pub mod skeleton;

pub use error::{Error, Result};
pub use exec::Exec;
pub use export::{Dialect, Format, PolySystem};
pub use grass::{detect_affine_space, AffineCertificate, AffineResult, ExpansionContext, TauSystem};
pub use job::{JobSpec, Layers, Mode};
pub use lift::{HomogeneousIdeal, ProjectiveLift};
pub use path::{ProjPath, QPath};
pub use presentation::Presentation;
pub use skeleton::{SemisimpleSequence, Setting, Skeleton};

pub use grassvar_poly as poly;
