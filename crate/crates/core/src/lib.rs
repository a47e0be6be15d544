//! Exact symbolic verification of q- and h-deformed superspace algebras:
//! Grassmann-coefficient scalars, noncommutative rewriting over graded
//! presentations, graded linear algebra, R-matrix and FRT machinery, Hopf and
//! star structure checks, contractions, and representation checks.

pub mod algebra;
pub mod rmatrix;
pub mod contraction;
pub mod frt;
pub mod hopfstar;
pub mod liesuper;
pub mod reps;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod suites;

pub use scalars::gaussian::GRat;
pub use scalars::grassmann::{ConjSpec, GScalar};
pub use scalars::poly::Poly;
pub use scalars::ratfun::RatFun;
pub use scalars::{ParamSig, ScalarError};
