//! Projection methods for feasibility problems.
//!
//! The crate provides closed-form projectors onto a catalog of constraint
//! sets ([`sets`]), fixed-point operators built from them ([`algorithms`]:
//! cyclic projections, Douglas-Rachford and its generalized, relaxed,
//! circumcentered, modified-reflection, cyclic and product-space variants),
//! and an iteration driver that detects convergence, divergence and
//! solutions ([`driver`]). Two worked problems sit on top: the
//! `(m, n)`-queens puzzle ([`queens`]) and a discretized nonnegative moment
//! problem ([`moments`]).
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`). The aliases at
//! the crate root fix the scalar to `f64`, which the tolerances are tuned for.
//!
//! ```
//! use feasor::prelude::*;
//!
//! let a = shared(Hyperplane::new(Vec64::from_f64(&[0.0, 1.0]), 0.0).unwrap());
//! let b = shared(Hyperplane::new(Vec64::from_f64(&[1.0, -1.0]), 0.0).unwrap());
//! let dr = DouglasRachford::new(a, b).unwrap();
//! let report = Iteration::new(StoppingPolicy::default())
//!     .operator_shadow(&dr)
//!     .run(&dr, &Vec64::from_f64(&[1.0, 0.0]))
//!     .unwrap();
//! assert_eq!(report.status, Status::Converged);
//! assert!(report.shadow.unwrap().norm() < 1e-9);
//! ```

pub mod algorithms;
pub mod driver;
pub mod error;
pub mod linalg;
pub mod moments;
pub mod queens;
pub mod scalar;
pub mod sets;
pub mod vector;

pub use error::{Error, Result};

/// Library version, echoed in CLI metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use scalar::Real;
pub use vector::{InnerProduct, Vector};

pub type Vec64 = Vector<f64>;
pub type Vec32 = Vector<f32>;
pub type InnerProduct64 = InnerProduct<f64>;
pub type SetRef64 = sets::SetRef<f64>;
pub type Report64 = driver::SolveReport<f64>;
pub type Policy64 = driver::StoppingPolicy<f64>;

pub mod prelude {
    pub use crate::algorithms::{
        circumcenter, lift, unlift_shadow, Aamr, AnchoredDr, AveragedProjections, CircumcenteredDr,
        CyclicDr, CyclicProjections, DouglasRachford, FnOperator, GeneralizedDr, NaiveMultisetDr,
        Operator, ProductDr, ProductSpace, Raar,
    };
    pub use crate::driver::{iterate, Iteration, SolveReport, Status, StoppingPolicy};
    pub use crate::sets::{
        dilate, shared, translate, AffineRows, Ball, BinaryBox, BinarySumAtMost, BinarySumEquals,
        Diagonal, Grouped, Halfspace, Hyperplane, Orthant, Product, ProjectableSet, SetRef,
        SumAtMost, SumEquals, WholeSpace,
    };
    pub use crate::{Error, InnerProduct, Real, Result, Vec64, Vector};
}
