//! String links, their closures and the invariants relating them: HOMFLYPT
//! and Conway polynomials by skein recursion, Milnor invariants through the
//! Magnus expansion, and checks of the identities between the two.

pub mod diagram;
pub mod error;
pub mod lab;
pub mod laurent;
pub mod milnor;
pub mod series;
pub mod skein;
pub mod tangle;

pub use diagram::{ClosedDiagram, Crossing, CrossingTag};
pub use error::{Error, Result};
pub use laurent::{Exp, LPoly, LaurentPoly2};
pub use series::TruncatedSeries;
pub use skein::SkeinEngine;
pub use tangle::{
    braid_b, parse_tangle, sigma_ij_knot, sigma_ij_tangle, MorseEvent, MultiIndex, Over,
    TangleDiagram,
};
