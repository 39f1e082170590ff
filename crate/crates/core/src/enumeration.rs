//! Brute-force oracles and engine-verification harnesses.
//!
//! Everything here exists to check the rest of the crate from a second
//! angle: placement counts are re-derived by exhaustive assignment instead
//! of factorials, the geometric capture constants are re-derived from the
//! capture predicate instead of being quoted, and move generation is
//! re-derived by a naive all-pairs legality scan that perft compares
//! against the engine's ray walker. None of the functions in this module
//! feed the bound computation itself.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::board::{
    apply_transform, camp_group, classify, Board, CellClass, Coord, Move, Outcome, Piece, Player,
    Position, Transform, CASTLE,
};
use crate::counting::BigCount;
use crate::rules::{apply_move, generate_moves, king_surrounded, legal_moves, outcome};

/// Largest region `enumerate_placements` will enumerate exhaustively.
pub const PLACEMENT_REGION_CAP: usize = 14;

/// Errors from the enumeration oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("placement region of {size} cells exceeds the exhaustive-enumeration cap of {cap}")]
    RegionTooLarge { size: usize, cap: usize },
    #[error(
        "state budget of {budget} exceeded after {visited} states with {frontier} awaiting expansion"
    )]
    BudgetExceeded {
        budget: usize,
        visited: usize,
        frontier: usize,
    },
}

/// Counts the distinct ways to assign `black` indistinct black markers and
/// `white` indistinct white markers to the given cells (at most one marker
/// per cell), by exhaustive three-way branching over the cells — no
/// factorials involved, so the result independently validates
/// [`crate::counting::multinomial`]. Infeasible requests count zero.
pub fn enumerate_placements(
    region: &[Coord],
    black: usize,
    white: usize,
) -> Result<BigCount, EnumerationError> {
    if region.len() > PLACEMENT_REGION_CAP {
        return Err(EnumerationError::RegionTooLarge {
            size: region.len(),
            cap: PLACEMENT_REGION_CAP,
        });
    }
    fn assignments(cells: usize, black: usize, white: usize) -> u64 {
        if black + white > cells {
            return 0;
        }
        if cells == 0 {
            return 1;
        }
        let mut total = assignments(cells - 1, black, white); // this cell stays empty
        if black > 0 {
            total += assignments(cells - 1, black - 1, white);
        }
        if white > 0 {
            total += assignments(cells - 1, black, white - 1);
        }
        total
    }
    Ok(BigCount::from(assignments(region.len(), black, white)))
}

/// Counts of the cells and capture configurations the bound terms multiply
/// by, every one recomputed from the board classification and the capture
/// predicate rather than quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometryReport {
    /// Cells a king can stand on in an unfinished game: the castle plus
    /// every plain cell.
    pub king_cells_total: usize,
    /// The same, castle excluded.
    pub king_cells_non_castle: usize,
    /// King cells orthogonally adjacent to the castle.
    pub castle_adjacent_cells: usize,
    /// King cells pressed by at least one camp (castle and its neighbors
    /// excluded).
    pub camp_adjacent_king_cells: usize,
    /// (cell, camp side) pairs where a single black opposite the camp
    /// captures the king there.
    pub camp_capture_configs: usize,
    /// King cells where only the ordinary two-soldier pincer applies.
    pub ordinary_capture_cells: usize,
    /// (cell, axis) pairs where two flanking blacks capture the king there.
    pub ordinary_capture_configs: usize,
    /// Edge cells the king escapes on.
    pub escape_cells: usize,
}

/// Derives every geometric constant by direct enumeration over the 81
/// cells, testing capture configurations against the king-capture
/// predicate on constructed boards.
pub fn derive_geometry() -> GeometryReport {
    let is_king_cell = |c: Coord| matches!(classify(c), CellClass::Castle | CellClass::Plain);
    let king_cells: Vec<Coord> = Coord::all().filter(|&c| is_king_cell(c)).collect();
    let castle_adjacent: Vec<Coord> = king_cells
        .iter()
        .copied()
        .filter(|&c| c != CASTLE && c.neighbors().any(|n| n == CASTLE))
        .collect();
    let camp_adjacent: Vec<Coord> = king_cells
        .iter()
        .copied()
        .filter(|&c| {
            c != CASTLE
                && !castle_adjacent.contains(&c)
                && c.neighbors().any(|n| classify(n) == CellClass::Camp)
        })
        .collect();
    let ordinary: Vec<Coord> = king_cells
        .iter()
        .copied()
        .filter(|&c| c != CASTLE && !castle_adjacent.contains(&c) && !camp_adjacent.contains(&c))
        .collect();

    // One configuration per camp pressing a flank: a lone black directly
    // opposite must close the capture.
    let mut camp_capture_configs = 0;
    for &cell in &camp_adjacent {
        for (df, dr) in [(0i8, 1i8), (0, -1), (-1, 0), (1, 0)] {
            let Some(camp_side) = cell.offset(df, dr) else {
                continue;
            };
            if classify(camp_side) != CellClass::Camp {
                continue;
            }
            let Some(opposite) = cell.offset(-df, -dr) else {
                continue;
            };
            let mut board = Board::empty();
            board.place(cell, Piece::King).expect("empty board");
            if board.place(opposite, Piece::BlackSoldier).is_err() {
                continue; // opposite cell cannot hold a soldier
            }
            if king_surrounded(&board, cell) {
                camp_capture_configs += 1;
            }
        }
    }

    // One configuration per axis: two flanking blacks must capture.
    let mut ordinary_capture_configs = 0;
    for &cell in &ordinary {
        for (df, dr) in [(0i8, 1i8), (1, 0)] {
            let (Some(a), Some(b)) = (cell.offset(df, dr), cell.offset(-df, -dr)) else {
                continue;
            };
            let mut board = Board::empty();
            board.place(cell, Piece::King).expect("empty board");
            if board.place(a, Piece::BlackSoldier).is_err()
                || board.place(b, Piece::BlackSoldier).is_err()
            {
                continue;
            }
            if king_surrounded(&board, cell) {
                ordinary_capture_configs += 1;
            }
        }
    }

    GeometryReport {
        king_cells_total: king_cells.len(),
        king_cells_non_castle: king_cells.len() - 1,
        castle_adjacent_cells: castle_adjacent.len(),
        camp_adjacent_king_cells: camp_adjacent.len(),
        camp_capture_configs,
        ordinary_capture_cells: ordinary.len(),
        ordinary_capture_configs,
        escape_cells: Coord::all()
            .filter(|&c| classify(c) == CellClass::Escape)
            .count(),
    }
}

/// Naive all-pairs legality scan: for every (from, to) cell pair, decide
/// from first principles whether it is a legal move for `side`. Deliberately
/// reimplements the movement rules without the engine's ray walker so the
/// two generators can check each other.
pub fn scan_legal_moves(board: &Board, side: Player) -> Vec<Move> {
    let mut moves = Vec::new();
    for from in Coord::all() {
        let Some(piece) = board.piece_at(from) else {
            continue;
        };
        if piece.owner() != side {
            continue;
        }
        for to in Coord::all() {
            if to == from || (to.file() != from.file() && to.rank() != from.rank()) {
                continue;
            }
            // Every cell strictly between, plus the destination, must be
            // empty and enterable from `from`.
            let passable = |c: Coord| {
                !board.is_occupied(c)
                    && c != CASTLE
                    && (classify(c) != CellClass::Camp || camp_group(c) == camp_group(from))
            };
            let span_clear = if from.file() == to.file() {
                let (lo, hi) = (from.rank().min(to.rank()), from.rank().max(to.rank()));
                (lo + 1..hi).all(|r| passable(Coord::new(from.file(), r)))
            } else {
                let (lo, hi) = (from.file().min(to.file()), from.file().max(to.file()));
                (lo + 1..hi).all(|f| passable(Coord::new(f, from.rank())))
            };
            if span_clear && passable(to) {
                moves.push(Move::new(from, to).expect("distinct aligned endpoints"));
            }
        }
    }
    moves.sort();
    moves
}

/// Shared perft spine, generic over the move generator being exercised.
///
/// Counts legal move sequences of exactly `depth` plies. A game-ending move
/// is a leaf: it counts at the horizon but is never expanded, so lines that
/// finish early contribute no deeper sequences. Repetition draws prune like
/// any other terminal, which is why the recursion carries full positions.
fn perft_count<G>(gen: &G, p: &Position, depth: usize) -> u128
where
    G: Fn(&Board, Player) -> Vec<Move> + Sync,
{
    if depth == 0 {
        return 1;
    }
    if outcome(p).is_terminal() {
        return 0;
    }
    let moves = gen(p.board(), p.to_move());
    if depth == 1 {
        return moves.len() as u128;
    }
    moves
        .iter()
        .map(|&mv| {
            let r = apply_move(p, mv).expect("generated moves are legal");
            if r.outcome.is_terminal() {
                0
            } else {
                perft_count(gen, &r.next, depth - 1)
            }
        })
        .sum()
}

/// Sequence count to `depth` plies using the engine's move generator.
pub fn perft(p: &Position, depth: usize) -> BigCount {
    BigCount::from(perft_count(&generate_moves, p, depth))
}

/// Sequence count to `depth` plies using the naive all-pairs scanner;
/// agreement with [`perft`] validates both generators.
pub fn perft_scan(p: &Position, depth: usize) -> BigCount {
    BigCount::from(perft_count(&scan_legal_moves, p, depth))
}

/// [`perft`] with the root moves fanned out across worker threads. The sum
/// is order-independent, so the result is identical to the sequential count
/// for any worker count.
pub fn perft_parallel(p: &Position, depth: usize) -> BigCount {
    if depth <= 1 || outcome(p).is_terminal() {
        return perft(p, depth);
    }
    let moves = generate_moves(p.board(), p.to_move());
    let total: u128 = moves
        .par_iter()
        .map(|&mv| {
            let r = apply_move(p, mv).expect("generated moves are legal");
            if r.outcome.is_terminal() {
                0
            } else {
                perft_count(&generate_moves, &r.next, depth - 1)
            }
        })
        .sum();
    BigCount::from(total)
}

fn canonical_board(board: &Board) -> (Board, Transform) {
    let mut best = *board;
    let mut best_text = board.placement_text();
    let mut best_t = Transform::Identity;
    for &t in &Transform::ALL[1..] {
        let candidate = board.transformed(t);
        let text = candidate.placement_text();
        if text < best_text {
            best = candidate;
            best_text = text;
            best_t = t;
        }
    }
    (best, best_t)
}

/// The orbit representative of `p` under the eight board symmetries: the
/// variant whose position text is smallest. Idempotent, and constant across
/// every transform of the same position.
pub fn canonicalize(p: &Position) -> Position {
    let (_, t) = canonical_board(p.board());
    apply_transform(p, t)
}

/// Whether a board could occur in a game played from the standard start:
/// the king stands on the castle or a plain cell, at least one black
/// remains, no white soldier sits in a camp, and no camp holds more blacks
/// than it started with. Terminal boards are exempt from the king-placement
/// clause, so callers apply this to ongoing states.
pub(crate) fn reachable_invariants_hold(board: &Board) -> bool {
    let Some(king) = board.king_square() else {
        return false;
    };
    if !matches!(classify(king), CellClass::Castle | CellClass::Plain) {
        return false;
    }
    if board.black_count() == 0 || board.black_count() > 16 || board.white_soldier_count() > 8 {
        return false;
    }
    let mut per_camp = [0usize; 4];
    for c in Coord::all() {
        match board.piece_at(c) {
            Some(Piece::WhiteSoldier) if classify(c) == CellClass::Camp => return false,
            Some(Piece::BlackSoldier) => {
                if let Some(group) = camp_group(c) {
                    per_camp[group] += 1;
                }
            }
            _ => {}
        }
    }
    per_camp.iter().all(|&n| n <= 4)
}

/// Counts the distinct states reachable from `p` within `depth` plies,
/// including `p` itself, by breadth-first search over (placement, side)
/// keys. With `canonical` set, states are first reduced to their symmetry
/// orbit representative. Terminal states are counted but never expanded.
///
/// The search refuses to outgrow `max_states` distinct states, returning
/// [`EnumerationError::BudgetExceeded`] with the partial tally instead.
pub fn reachable_count(
    p: &Position,
    depth: usize,
    canonical: bool,
    max_states: usize,
) -> Result<BigCount, EnumerationError> {
    let key_of = |board: &Board, side: Player| {
        let board = if canonical {
            canonical_board(board).0
        } else {
            *board
        };
        (board, side)
    };
    // Invariant auditing arms only when the root itself satisfies the
    // invariants: they are inductive along play, but arbitrary parsed
    // positions may start outside them.
    let audit = reachable_invariants_hold(p.board());

    let root = key_of(p.board(), p.to_move());
    let mut visited: HashSet<(Board, Player)> = HashSet::new();
    visited.insert(root);
    let mut frontier = vec![root];
    for _ in 0..depth {
        if frontier.is_empty() {
            break;
        }
        let mut next_frontier = Vec::new();
        for &(board, side) in &frontier {
            let position = Position::new(board, side);
            let Ok(moves) = legal_moves(&position) else {
                continue;
            };
            debug_assert!(!audit || reachable_invariants_hold(&board));
            for mv in moves {
                let r = apply_move(&position, mv).expect("legal move applies");
                let key = key_of(r.next.board(), r.next.to_move());
                if visited.insert(key) {
                    if visited.len() > max_states {
                        return Err(EnumerationError::BudgetExceeded {
                            budget: max_states,
                            visited: visited.len(),
                            frontier: next_frontier.len(),
                        });
                    }
                    if !r.outcome.is_terminal() {
                        next_frontier.push(key);
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    Ok(BigCount::from(visited.len()))
}

/// One played move of a random playout.
#[derive(Debug, Clone)]
pub struct PlayoutStep {
    pub mv: Move,
    /// Opposing pieces the move removed.
    pub captured: Vec<Coord>,
    /// Game status immediately after the move.
    pub outcome: Outcome,
    /// The full position after the move, for invariant auditing.
    pub position: Position,
}

/// A seeded random game: the starting position and every move played.
#[derive(Debug, Clone)]
pub struct PlayoutTrace {
    start: Position,
    steps: Vec<PlayoutStep>,
}

impl PlayoutTrace {
    pub fn start(&self) -> &Position {
        &self.start
    }

    pub fn steps(&self) -> &[PlayoutStep] {
        &self.steps
    }

    pub fn plies(&self) -> usize {
        self.steps.len()
    }

    pub fn final_position(&self) -> &Position {
        self.steps.last().map_or(&self.start, |step| &step.position)
    }

    /// Status at the end of the trace: `Ongoing` when the ply limit struck
    /// first.
    pub fn outcome(&self) -> Outcome {
        self.steps
            .last()
            .map_or_else(|| outcome(&self.start), |step| step.outcome)
    }
}

/// Plays uniformly random legal moves from `p` until the game ends or
/// `max_plies` moves have been made. Deterministic for a given seed: the
/// generator is a fixed ChaCha stream and moves are drawn from the sorted
/// legal-move list.
pub fn random_playout(p: &Position, seed: u64, max_plies: usize) -> PlayoutTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut position = p.clone();
    let mut steps = Vec::new();
    for _ in 0..max_plies {
        let Ok(moves) = legal_moves(&position) else {
            break;
        };
        let mv = moves[rng.random_range(0..moves.len())];
        let r = apply_move(&position, mv).expect("legal move applies");
        steps.push(PlayoutStep {
            mv,
            captured: r.captured,
            outcome: r.outcome,
            position: r.next.clone(),
        });
        if r.outcome.is_terminal() {
            break;
        }
        position = r.next;
    }
    PlayoutTrace {
        start: p.clone(),
        steps,
    }
}
