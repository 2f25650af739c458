//! Exact mutual information between a Boolean function of uniform binary
//! inputs and the output of a memoryless binary symmetric channel (BSC).
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: [`ExactProb`], a nonnegative arbitrary-precision rational.
//! - [`boolfn`]: truth tables, the structured function families, and orbit
//!   canonicalization under output complement and input permutation/negation.
//! - [`channel`]: the BSC with uniform inputs and the exact joint table of
//!   `(Y, Z = f(X))`.
//! - [`mi`]: entropy and mutual information in bits, plus the closed forms
//!   available for single-point functions.
//! - [`karamata`]: the majorization sequences for single-point functions and
//!   their exact partial-sum certificate.
//! - [`verify`]: bound checks over `(n, p)` grids, the subcube reduction,
//!   exhaustive scans for small `n`, and sweep/report output.
//! - [`io`]: file formats (truth-table JSON, joint-table CSV, partial-sum CSV).
//!
//! Index convention: the input `x = (x_1, ..., x_n)` is stored at truth-table
//! index `sum_j x_j * 2^(n-j)`, so `x_1` is the most significant bit.

pub mod boolfn;
pub mod channel;
pub mod error;
pub mod exact;
pub mod io;
pub mod karamata;
pub mod mi;
pub mod verify;

mod numeric;

pub use boolfn::{FunctionClass, TruthTable};
pub use channel::JointYZ;
pub use error::{Error, Result};
pub use exact::ExactProb;
pub use karamata::{DescendingSeq, KaramataInstance, MajorizationCertificate};
pub use mi::MIResult;
pub use verify::{ExhaustiveSummary, VerifyReport};
