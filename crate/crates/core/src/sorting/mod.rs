//! Instrumented sorting: three algorithms with exact instruction and memory
//! access counters, a three-regime input randomizer, and phase schedules.

mod executor;
mod instance;
mod instrumented;
mod schedule;

pub use executor::SortingExecutor;
pub use instance::{generate_instance, generate_from_seed, DataKind, SortInstance, ALMOS_SWAPS, INSTANCE_LEN};
pub use instrumented::{
    counting_sort, insertion_sort, quick_sort, raw_credit, run_sort, InstrumentCounters, SortAlgorithm,
};
pub use schedule::{PhaseSchedule, PhaseSpan};
