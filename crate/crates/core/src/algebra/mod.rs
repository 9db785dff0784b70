//! Exact polynomial arithmetic, certified roots, companion matrices and
//! arithmetic in `ℚ(λ)`.

mod companion;
mod exact;
mod factor;
mod field;
mod modular;
mod poly;
mod ratpoly;
mod roots;

pub use companion::{char_poly, companion, CompanionMatrix};
pub use exact::{modulus_tie, shares_root, symmetric_square};
pub use factor::{factor, factor_containing, is_irreducible, is_irreducible_with_limit, DEFAULT_DEGREE_LIMIT};
pub use field::{embed, nf_add, nf_div, nf_inverse, nf_mul, nf_sub, NumberFieldElement};
pub use poly::{parse_poly, Evaluation, IntPolynomial};
pub use ratpoly::RatPoly;
pub use roots::{roots, ApproxRoot, ConjugateSet};
