//! Shared fixtures for the criterion benches.

use tablut_core::{initial_position, random_playout, Position};

/// A deterministic mid-game position: the last ongoing state of a seeded
/// random playout from the start. Benches want realistic branching factors
/// rather than the cramped opening or a sparse endgame.
pub fn midgame_position(seed: u64, plies: usize) -> Position {
    let trace = random_playout(&initial_position(), seed, plies);
    let steps = trace.steps();
    match steps
        .iter()
        .rposition(|s| s.outcome == tablut_core::Outcome::Ongoing)
    {
        Some(i) => steps[i].position.clone(),
        None => trace.start().clone(),
    }
}
