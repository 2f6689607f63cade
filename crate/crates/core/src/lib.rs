//! Exact colored Jones polynomials of twisted generalized Whitehead doubles,
//! degree quasi-polynomials, Jones slopes, essential-surface data for the
//! associated two-bridge links, and diagram adequacy checks.

pub mod laurent;
pub mod quantum;
pub mod knots;
pub mod degrees;
pub mod surfaces;
pub mod adequacy;
pub mod cli;
