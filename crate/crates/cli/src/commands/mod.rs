//! Implementations of the four subcommands.

mod augment;
mod edc;
mod hist_dist;
mod score;

pub use augment::run_augment;
pub use edc::run_edc;
pub use hist_dist::run_hist_dist;
pub use score::run_score;

use crate::cli::Command;
use crate::error::AppResult;

pub fn run(command: Command) -> AppResult<()> {
    match command {
        Command::Score(args) => run_score(&args),
        Command::Augment(args) => run_augment(&args),
        Command::HistDist(args) => run_hist_dist(&args),
        Command::Edc(args) => run_edc(&args),
    }
}
