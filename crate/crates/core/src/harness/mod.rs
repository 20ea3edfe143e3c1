//! Experimental procedures: dataset perturbation, synthetic collections,
//! nearest-neighbour retrieval, rank correlation between measures and
//! perturbation-rate sweeps.

mod correlation;
mod kendall;
mod perturb;
mod retrieve;
mod sweep;
mod synth;

pub use correlation::{measure_correlation, CorrelationMatrix};
pub use kendall::kendall_tau;
pub use perturb::{perturb, PerturbConfig, PerturbKind, DEFAULT_MAX_OFFSET};
pub use retrieve::{retrieve, RankedItem, RankedList};
pub use sweep::{perturbation_sweep, SweepConfig, SweepPoint};
pub use synth::{synthetic_collection, SyntheticConfig};
