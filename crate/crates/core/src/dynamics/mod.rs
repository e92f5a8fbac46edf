//! Parameter sweeps, death-time root finding and the cross-check suite.

mod death;
mod sweep;
mod verify;

pub use death::{
    closed_form_death_time, death_time, half_life, DeathTimeResult, BRACKET_CAP, DEATH_THRESHOLD, TIME_RESOLUTION,
};
pub use sweep::{format_value, sweep, uniform_times, write_csv, SweepGrid, SweepOptions, SweepRow, CSV_HEADER};
pub use verify::{verify_suite, CheckResult, CheckStatus, VerifyReport};
