//! Executable Gleason–Kahane–Żelazko toolkit.
//!
//! Moment functionals on polynomials and their GKZ polynomials
//! `p(t) = F((t - z)^n)`, root localization, the combinatorial defect bound
//! behind `F(z^k) = F(z)^k`, weighted Hardy space diagnostics for the shift
//! `M_z`, and symbol recovery for weighted composition maps.

pub mod combinatorics;
pub mod composition;
pub mod error;
pub mod functional;
pub mod hardy;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod symmetric;

pub use combinatorics::{binomial_exact, count_monomial_terms, factorial_exact, MonomialCounts};
pub use composition::{SampleGrid, SampledLinearMap, SymbolPair};
pub use error::{Error, Result};
pub use functional::{
    write_convergence_csv, ConvergenceRow, DefectBound, Falsifier, GkzReport, MomentFunctional,
    RadiusMode, WitnessReport,
};
pub use hardy::{donoghue_weights, DonoghueKind, HardyElement, ShiftDiagnostics, WeightSequence};
pub use poly::Polynomial;
pub use roots::{find_roots, RootFinder, RootSet};
pub use rug::{Complex, Float, Integer};
pub use scalar::Precision;
pub use symmetric::{elementary_symmetric, multinomial_power_check};
