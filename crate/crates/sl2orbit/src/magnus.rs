//! The Magnus trace map and its inversion.
//!
//! For an SL(2,C) tuple A = (A_1, ..., A_n) the trace map records the 3n-3
//! numbers
//!
//! ```text
//!     T_n(A) = (t_1, t_2, t_12, t_3, t_13, t_23, ..., t_n, t_1n, t_2n)
//! ```
//!
//! with t_j = tr(A_j) and t_jk = tr(A_j A_k). This module evaluates the map
//! ([`forward_tn`]), inverts it off the locus sigma_12(z) = 0 by an explicit
//! quaternionic construction ([`invert_tn`]), and enumerates the full fiber —
//! finitely many conjugacy orbits, obtained from one base solution by
//! transposing entries 3..n independently ([`enumerate_fiber`]). On the
//! sigma_12(z) = 0 locus fibers can be empty or positive-dimensional;
//! [`invert_on_z12`] classifies what can be decided there and never claims
//! finiteness.
//!
//! The companion map on arbitrary 2x2 tuples (no determinant constraint)
//! carries 4n-3 coordinates, adding the squares t_jj = tr(A_j^2):
//! [`forward_that_n`] / [`invert_that_n`].
//!
//! [`fiber_cross_check`] ties it together: push a tuple forward, invert,
//! and certify that exactly one orbit of the fiber is the input's.

mod fiber;
mod forward;
mod invert;
mod vn;
mod z12;

pub use fiber::{
    enumerate_fiber, fiber_cross_check, CrossCheckReport, Fiber, FiberStatus, OrbitRep,
    MAX_FREE_SIGNS,
};
pub use forward::{forward_that_n, forward_tn};
pub use invert::invert_tn;
pub use vn::invert_that_n;
pub use z12::invert_on_z12;
