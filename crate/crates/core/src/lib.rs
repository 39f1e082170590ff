//! Rules engine and state-space bound calculator for Tablut, the 9×9
//! tafl game.
//!
//! The crate has three layers:
//!
//! * [`board`] — the static geometry (cell classes, camps, castle), piece
//!   placement, position text, and the eight board symmetries;
//! * [`rules`] — movement legality, custodian captures, king capture, and
//!   the end-of-game conditions, exposed as [`legal_moves`], [`apply_move`]
//!   and [`outcome`];
//! * [`counting`] — the exact combinatorial upper bounds on the number of
//!   game states, term by term, with two-significant-digit displays checked
//!   against the published reference values.
//!
//! [`enumeration`] supplies the verification harnesses that tie the layers
//! together: exhaustive placement counting, capture-geometry derivation, a
//! naive second move generator, perft, symmetry-reduced reachability
//! search, and seeded random playouts.
//!
//! Everything a consumer needs is re-exported at the crate root.

pub mod board;
pub mod counting;
pub mod enumeration;
pub mod rules;

pub use board::{
    apply_transform, classify, format_tbn, initial_position, parse_tbn, BlackWinReason, Board,
    CellClass, Coord, DrawReason, Move, MoveError, Outcome, ParseCoordError, Piece, PlaceError,
    Player, Position, StateKey, TbnError, Transform, WhiteWinReason, BOARD_SIDE, CASTLE,
    CELL_COUNT,
};
pub use counting::{
    bounds_report, display_two_sig, factorial, multinomial, parse_scientific, ub_naive, ub_term,
    BigCount, BoundEntry, BoundsReport, CountingError, Term,
};
pub use enumeration::{
    canonicalize, derive_geometry, enumerate_placements, perft, perft_parallel, perft_scan,
    random_playout, reachable_count, scan_legal_moves, EnumerationError, GeometryReport,
    PlayoutStep, PlayoutTrace, PLACEMENT_REGION_CAP,
};
pub use rules::{
    apply_move, captures_of, legal_moves, outcome, IllegalReason, MoveResult, RulesError,
};
