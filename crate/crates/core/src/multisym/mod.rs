//! Exact multivariate polynomials in `a, b, f, g, x` and the certificate
//! built on them for the degree-6 obstruction.

pub mod multipoly;
pub mod parse;
pub mod theorem;

pub use multipoly::{Exponents, MultiPoly, Var};
pub use parse::{parse, ParseError};
pub use theorem::{
    build_m, build_w, check_sign_claims, critical_levels, sample_points, verify_derivative_formulas,
    verify_identities, verify_identity, CriticalLevels, IdentityCheck, IdentityReport, ParamPoint,
    SignClaimReport, TheoremError,
};
