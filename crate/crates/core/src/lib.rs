pub mod claims;
pub mod closed;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod isomorphism;
pub mod numeric;
pub mod perfection;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
pub use family::{parse_expr, parse_family, Expr};
pub use graph::{Graph, MulticoneParams};
pub use poly::{char_poly_exact, cospectral_exact, CharPoly, MatrixKind};
pub use search::{certify_ds, find_cospectral_mates, DsReport, SearchSpace, Verdict};
