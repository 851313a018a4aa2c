//! The nonlinear amplifier experiments and file I/O around them.

mod amplifier;
pub mod cli;
pub mod io;
mod scenario;

pub use amplifier::{
    amplifier_system, plant_system, test_signal, AmplifierConfig, ERRONEOUS_C1, ERRONEOUS_C3,
    ERRONEOUS_C5,
};
pub use scenario::{run_scenario, snr, Mode, ScenarioReport};
