//! Executable versions of the inequalities and the proof steps behind them.
//!
//! Every check returns a [`Verdict`](crate::numeric::Verdict). Checks are pure
//! functions of their parameters, so campaigns may run them on any number of threads
//! as long as each thread owns its [`Evaluator`].

mod checks;
mod dominance;
mod eval;
mod hadamard;
mod majorization;
mod proof;
mod scan;
mod schur;
mod xu;

pub use checks::{check_named, check_named_with, CheckName, CheckSpec};
pub use dominance::{dd_dominance_check, dd_dominance_check_exact, DominanceReport, DominanceStatus};
pub use eval::Evaluator;
pub use hadamard::{hadamard_sandwich, Sandwich};
pub use majorization::{is_majorized, top_sums, MajorizationPair};
pub use proof::{
    a_dominates, quadruple, replay_monotonicity, replay_monotonicity_with, scaled_pair_sum_check,
    Quadruple, ReductionTrace, TraceStep,
};
pub use scan::{problem1_pairs, scan_problem1, ScanRecord, ScanReport};
pub use schur::{divided_difference_f64, schur_criterion_sample};
pub use xu::{xu_reduce, XuReport};
