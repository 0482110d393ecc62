//! Numeric kernel: exact rationals, advisory floats and outward-rounded intervals,
//! plus the three-valued comparison every check is built on.

mod dyadic;
mod interval;
mod scalar;
pub mod transcendental;
mod verdict;

pub use dyadic::{Dyadic, Rounding};
pub use interval::Interval;
pub use scalar::{arith, exp, ln, power, rat, ArithOp, Mode, Scalar};
pub use verdict::{
    compare_ge, compare_values, ArithMode, EvalConfig, Outcome, PrecisionPolicy, Verdict, Witness,
    ENV_PRECISION_MAX, ENV_PRECISION_START,
};
