//! Exact complex Hermite polynomials, their GL(2,ℂ)-deformed biorthogonal
//! families, and a normal-ordered two-boson operator algebra used to check
//! commutation relations and Lie-algebra structure.
//!
//! Everything algebraic is generic over [`Scalar`]: [`Coeff`] gives exact
//! Gaussian-rational arithmetic, [`FloatCoeff`] gives `Complex<f64>`.

pub mod combinat;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod real_poly;
pub mod scalar;
pub mod series;
pub mod weyl;
pub mod hermite;
pub mod deform;
pub mod report;
pub mod ncqm;
pub mod lie;

pub use deform::{
    biorthogonality_check, deformed_hermite, dual_family, dual_matrix_scaling_check, eigenvalue_structure_check,
    intertwine_check, rep_action_check, rep_matrix, Gl2, RepMatrix,
};
pub use error::{Error, Result};
pub use hermite::{
    complex_hermite_operator, complex_hermite_rodrigues, complex_hermite_sum, real_hermite, HermiteTable,
    NormalizedPoly,
};
pub use lie::{classify, structure_constants, LieBasisSet, LieClass, StructureConstants};
pub use linalg::Matrix;
pub use ncqm::{alpha_matrix, AlphaPoint};
pub use poly::{inner_product, BiPoly, Monomial, Var};
pub use real_poly::{real_inner_product, RealPoly, RealVar, SqrtPiMultiple};
pub use report::{Report, Status};
pub use scalar::{Coeff, FloatCoeff, Rational, Scalar};
pub use series::SeriesTruncation;
pub use weyl::{build_dictionary, Branch, DictionaryParams, OperatorDictionary, SqrtTwoScaled, WeylOp, Word};
