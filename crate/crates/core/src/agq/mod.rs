//! Quasiorthogonal polynomials, AGQ rules and their error certificates.

mod certificate;
mod hankel;
mod quasi;
mod rule;

pub use certificate::ErrorCertificate;
pub use hankel::{build_hankel, HankelSystem};
pub use quasi::{find_quasiorthogonal, nodes_from_poly, quasiorthogonality_residual, QuasiPoly, SearchOptions, Seed, Stopping};
pub use rule::{build_rule, compute_weights, lagrange_coefficients, rule_from_poly, QuadratureRule, RuleOptions};
