//! Move generation, capture resolution, and game-end detection.
//!
//! Movement: every piece, king included, slides any number of empty cells
//! along a rank or file. The castle cell blocks everyone — it can never be
//! entered or crossed, even by the king leaving it. Camp cells block any
//! piece except one moving from a cell of the same camp, so the soldiers
//! that start inside a camp may shuffle within it (and leave), but no piece
//! ever comes back in.
//!
//! Capture is custodian and strictly active: only the piece that just moved
//! can capture, by closing a pincer. A soldier is captured when sandwiched
//! between the landing cell and an opposing piece or a citadel cell (castle
//! or camp) on the directly opposite side; a soldier standing on a camp cell
//! is safe from soldier capture entirely. The king needs a tighter net the
//! closer he is to the citadel: all four sides on the castle, the three open
//! sides next to it, the single opposite side when a camp already presses
//! one flank, and an ordinary two-sided pincer elsewhere. The king counts as
//! a White piece when closing a pincer.

use crate::board::{
    camp_group, classify, BlackWinReason, Board, CellClass, Coord, DrawReason, Move, Outcome,
    Piece, Player, Position, StateKey, WhiteWinReason, CASTLE, DIRECTIONS,
};
use thiserror::Error;

/// What made a requested move illegal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    /// The from-cell is empty.
    NoPiece,
    /// The from-cell holds the opponent's piece.
    OpponentPiece,
    /// A piece stands on the path or destination.
    Blocked,
    /// The castle, or a camp closed to this piece, stands on the path or
    /// destination.
    CitadelBlocked,
}

impl std::fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IllegalReason::NoPiece => "no piece on the from-cell",
            IllegalReason::OpponentPiece => "the from-cell holds an opponent piece",
            IllegalReason::Blocked => "a piece blocks the path",
            IllegalReason::CitadelBlocked => "the castle or a closed camp blocks the path",
        })
    }
}

/// Errors from move application and legality queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RulesError {
    /// The game is already over; no move can be played or judged.
    #[error("game over: {0}")]
    GameOver(Outcome),
    #[error("illegal move {mv}: {reason}")]
    Illegal { mv: Move, reason: IllegalReason },
}

/// The result of playing one move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveResult {
    /// The position after the move, with history extended (unless the move
    /// ended the game by repetition, which leaves history as it was).
    pub next: Position,
    /// Cells of the opposing pieces removed by the move, sorted.
    pub captured: Vec<Coord>,
    /// The game's status after the move.
    pub outcome: Outcome,
}

/// All legal moves for the side to move, sorted by (from, to).
///
/// Errors with [`RulesError::GameOver`] on a finished game — a terminal
/// position has no legal moves by definition.
pub fn legal_moves(p: &Position) -> Result<Vec<Move>, RulesError> {
    let status = outcome(p);
    if status.is_terminal() {
        return Err(RulesError::GameOver(status));
    }
    Ok(generate_moves(p.board(), p.to_move()))
}

/// Move list for one side on a bare board, ignoring game-end conditions.
/// Generation order is already sorted: pieces ascend by cell index and each
/// ray is emitted in a fixed direction order, then the list is sorted to the
/// documented (from, to) order.
pub(crate) fn generate_moves(board: &Board, side: Player) -> Vec<Move> {
    let mut moves = Vec::new();
    for from in board.pieces(side) {
        for &(df, dr) in &DIRECTIONS {
            ray_moves_into(board, from, df, dr, &mut moves);
        }
    }
    moves.sort();
    moves
}

/// Walks one ray from `from`, pushing a move for every reachable cell.
fn ray_moves_into(board: &Board, from: Coord, df: i8, dr: i8, out: &mut Vec<Move>) {
    let mut cell = from;
    while let Some(next) = cell.offset(df, dr) {
        if board.is_occupied(next) || !cell_open_to(next, from) {
            break;
        }
        out.push(Move::raw(from, next));
        cell = next;
    }
}

/// Whether geometry lets a piece moving from `from` stand on or pass
/// through `cell`. The castle never does; a camp cell does only for a piece
/// coming from the same camp.
fn cell_open_to(cell: Coord, from: Coord) -> bool {
    match classify(cell) {
        CellClass::Castle => false,
        CellClass::Camp => camp_group(cell) == camp_group(from),
        _ => true,
    }
}

/// Cheap emptiness check for game-end detection: a side has a move iff some
/// piece has an adjacent cell it may step onto, because any longer slide
/// starts with that step.
pub(crate) fn side_has_moves(board: &Board, side: Player) -> bool {
    board.pieces(side).any(|from| {
        from.neighbors()
            .any(|next| !board.is_occupied(next) && cell_open_to(next, from))
    })
}

/// Validates one move against the board, without touching game-end state.
fn check_move(board: &Board, side: Player, mv: Move) -> Result<(), RulesError> {
    let illegal = |reason| RulesError::Illegal { mv, reason };
    match board.piece_at(mv.from()) {
        None => return Err(illegal(IllegalReason::NoPiece)),
        Some(piece) if piece.owner() != side => return Err(illegal(IllegalReason::OpponentPiece)),
        Some(_) => {}
    }
    let (df, dr) = (
        (mv.to().file() as i8 - mv.from().file() as i8).signum(),
        (mv.to().rank() as i8 - mv.from().rank() as i8).signum(),
    );
    let mut cell = mv.from();
    loop {
        cell = cell
            .offset(df, dr)
            .expect("aligned move endpoints stay on the board");
        if board.is_occupied(cell) {
            return Err(illegal(IllegalReason::Blocked));
        }
        if !cell_open_to(cell, mv.from()) {
            return Err(illegal(IllegalReason::CitadelBlocked));
        }
        if cell == mv.to() {
            return Ok(());
        }
    }
}

/// The pieces `mv` would capture, sorted, without playing the move.
///
/// Errors exactly as [`apply_move`] does on a finished game or an illegal
/// move.
pub fn captures_of(p: &Position, mv: Move) -> Result<Vec<Coord>, RulesError> {
    let status = outcome(p);
    if status.is_terminal() {
        return Err(RulesError::GameOver(status));
    }
    check_move(p.board(), p.to_move(), mv)?;
    let mut board = *p.board();
    board.displace(mv.from(), mv.to());
    Ok(captures_on(&board, p.to_move(), mv.to()))
}

/// Captures triggered by `mover`'s piece having just landed on `landing`.
/// `board` already reflects the move. Returns sorted victim cells.
fn captures_on(board: &Board, mover: Player, landing: Coord) -> Vec<Coord> {
    let mut victims = Vec::new();
    for &(df, dr) in &DIRECTIONS {
        let Some(victim) = landing.offset(df, dr) else {
            continue;
        };
        let Some(piece) = board.piece_at(victim) else {
            continue;
        };
        if piece.owner() == mover {
            continue;
        }
        let captured = match piece {
            Piece::King => king_surrounded(board, victim),
            _ => soldier_flanked(board, mover, victim, df, dr),
        };
        if captured {
            victims.push(victim);
        }
    }
    victims.sort();
    victims
}

/// Custodian test for a soldier on `victim`, pressed from the direction
/// opposite (`df`, `dr`). A camp cell shelters its occupant from soldier
/// capture. The far side captures if it holds a mover-side piece or is a
/// citadel cell (castle or camp), occupied or not — the citadel walls
/// themselves act as the second soldier.
fn soldier_flanked(board: &Board, mover: Player, victim: Coord, df: i8, dr: i8) -> bool {
    if classify(victim) == CellClass::Camp {
        return false;
    }
    let Some(anvil) = victim.offset(df, dr) else {
        return false;
    };
    if matches!(classify(anvil), CellClass::Castle | CellClass::Camp) {
        return true;
    }
    board
        .piece_at(anvil)
        .is_some_and(|piece| piece.owner() == mover)
}

/// Whether the king standing on `victim` is fully beset under the
/// zone-dependent rule. The zones are exclusive: on the castle, adjacent to
/// the castle, adjacent to a camp (but not the former two), or ordinary.
pub(crate) fn king_surrounded(board: &Board, victim: Coord) -> bool {
    let is_black = |c: Coord| board.piece_at(c) == Some(Piece::BlackSoldier);
    if victim == CASTLE {
        // On his throne the king must be boxed on all four sides.
        return victim.neighbors().all(is_black);
    }
    if victim.neighbors().any(|n| n == CASTLE) {
        // Beside the throne the castle wall covers one flank; the three
        // open sides must all be black.
        return victim.neighbors().filter(|&n| n != CASTLE).all(is_black);
    }
    let camp_sides: Vec<(i8, i8)> = DIRECTIONS
        .iter()
        .copied()
        .filter(|&(df, dr)| {
            victim
                .offset(df, dr)
                .is_some_and(|n| classify(n) == CellClass::Camp)
        })
        .collect();
    if !camp_sides.is_empty() {
        // A camp wall serves as one jaw of the pincer; a single soldier
        // directly opposite any adjacent camp cell finishes the capture.
        return camp_sides
            .iter()
            .any(|&(df, dr)| victim.offset(-df, -dr).is_some_and(is_black));
    }
    // In the open the king is taken like a soldier: two enemies on
    // opposite sides along either axis.
    let pincer = |a: (i8, i8), b: (i8, i8)| {
        victim.offset(a.0, a.1).is_some_and(is_black)
            && victim.offset(b.0, b.1).is_some_and(is_black)
    };
    pincer((0, 1), (0, -1)) || pincer((1, 0), (-1, 0))
}

/// Plays one move: validates it, resolves captures, and classifies the
/// resulting position.
///
/// Game-end precedence when several conditions coincide: the king reaching
/// an escape cell wins outright for White; a captured king wins for Black;
/// a repeated state draws (leaving the history untouched, since the game is
/// over); a side left without pieces or without moves loses. Otherwise the
/// game goes on, the new state joins the history, and the turn passes.
pub fn apply_move(p: &Position, mv: Move) -> Result<MoveResult, RulesError> {
    let status = outcome(p);
    if status.is_terminal() {
        return Err(RulesError::GameOver(status));
    }
    let mover = p.to_move();
    check_move(p.board(), mover, mv)?;

    let moved_piece = p.board().piece_at(mv.from()).expect("checked above");
    let mut board = *p.board();
    board.displace(mv.from(), mv.to());
    let captured = captures_on(&board, mover, mv.to());
    debug_assert!(captured.len() <= 3, "at most three pieces fall to one move");
    for &victim in &captured {
        board.remove(victim);
    }

    let opponent = mover.opponent();
    let finish = |board: Board, outcome: Outcome| MoveResult {
        next: Position::with_history(board, opponent, p.seen().clone(), false),
        captured: captured.clone(),
        outcome,
    };

    if moved_piece == Piece::King && classify(mv.to()) == CellClass::Escape {
        return Ok(finish(board, Outcome::WhiteWin(WhiteWinReason::Escape)));
    }
    if board.king_square().is_none() {
        return Ok(finish(
            board,
            Outcome::BlackWin(BlackWinReason::KingCaptured),
        ));
    }
    let key = StateKey::new(&board, opponent);
    if p.seen().contains(&key) {
        // The repeated state never re-enters the history; the game ends on
        // the spot and the position records why.
        return Ok(MoveResult {
            next: Position::with_history(board, opponent, p.seen().clone(), true),
            captured,
            outcome: Outcome::Draw(DrawReason::Repetition),
        });
    }
    if board.piece_count(opponent) == 0 {
        // Only Black can ever be wiped out — the king survives captures of
        // every white soldier — but both branches are written out so the
        // classification cannot silently misattribute a win.
        let outcome = match mover {
            Player::White => Outcome::WhiteWin(WhiteWinReason::OpponentEliminated),
            Player::Black => Outcome::BlackWin(BlackWinReason::KingCaptured),
        };
        return Ok(finish(board, outcome));
    }
    if !side_has_moves(&board, opponent) {
        let outcome = match mover {
            Player::White => Outcome::WhiteWin(WhiteWinReason::OpponentImmobile),
            Player::Black => Outcome::BlackWin(BlackWinReason::OpponentImmobile),
        };
        return Ok(finish(board, outcome));
    }

    let mut seen = p.seen().clone();
    seen.insert(key);
    Ok(MoveResult {
        next: Position::with_history(board, opponent, seen, false),
        captured,
        outcome: Outcome::Ongoing,
    })
}

/// Classifies a standing position without reference to how it arose, except
/// for the recorded repetition flag.
///
/// Precedence mirrors [`apply_move`]: a missing king means Black has won; a
/// king on an escape cell means White has won; a recorded repetition is a
/// draw; a side to move with no pieces or no moves has lost.
pub fn outcome(p: &Position) -> Outcome {
    let board = p.board();
    let Some(king) = board.king_square() else {
        return Outcome::BlackWin(BlackWinReason::KingCaptured);
    };
    if classify(king) == CellClass::Escape {
        return Outcome::WhiteWin(WhiteWinReason::Escape);
    }
    if p.repetition_reached() {
        return Outcome::Draw(DrawReason::Repetition);
    }
    let side = p.to_move();
    if board.piece_count(side) == 0 {
        // Only Black can be empty-handed (the king always counts for
        // White), and a side with no pieces has no moves.
        return match side {
            Player::Black => Outcome::WhiteWin(WhiteWinReason::OpponentEliminated),
            Player::White => Outcome::BlackWin(BlackWinReason::OpponentImmobile),
        };
    }
    if !side_has_moves(board, side) {
        return match side {
            Player::Black => Outcome::WhiteWin(WhiteWinReason::OpponentImmobile),
            Player::White => Outcome::BlackWin(BlackWinReason::OpponentImmobile),
        };
    }
    Outcome::Ongoing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{apply_transform, initial_position, parse_tbn, Transform};
    use proptest::prelude::*;

    fn pos(tbn: &str) -> Position {
        parse_tbn(tbn).unwrap()
    }

    fn mv(s: &str) -> Move {
        s.parse().unwrap()
    }

    fn coords(names: &[&str]) -> Vec<Coord> {
        names.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn initial_position_move_counts() {
        let p = initial_position();
        let white = legal_moves(&p).unwrap();
        assert_eq!(white.len(), 56);
        // Sorted by (from, to).
        let mut sorted = white.clone();
        sorted.sort();
        assert_eq!(white, sorted);

        let black = generate_moves(p.board(), Player::Black);
        assert_eq!(black.len(), 80);
    }

    #[test]
    fn rays_stop_at_pieces_and_castle() {
        let p = initial_position();
        let moves = legal_moves(&p).unwrap();
        // e4 may step right to f4/g4/h4 but not onto i4 (a camp) and not
        // left past d4... it is blocked upward by the king and downward by e3.
        let from_e4: Vec<String> = moves
            .iter()
            .filter(|m| m.from() == "e4".parse().unwrap())
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            from_e4,
            ["e4-b4", "e4-c4", "e4-d4", "e4-f4", "e4-g4", "e4-h4"]
        );
    }

    #[test]
    fn castle_blocks_crossing_even_when_empty() {
        // Lone white soldier below an empty castle: it may approach e4 but
        // never reach e5 or the far side e6.
        let p = pos("9/7K1/9/9/9/9/9/4W4/9 w");
        let moves = legal_moves(&p).unwrap();
        let from_e2: Vec<String> = moves
            .iter()
            .filter(|m| m.from() == "e2".parse().unwrap())
            .map(|m| m.to_string())
            .collect();
        assert!(from_e2.contains(&"e2-e4".to_string()));
        assert!(!from_e2.iter().any(|m| m == "e2-e5" || m == "e2-e6"));
        assert_eq!(
            apply_move(&p, mv("e2-e6")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("e2-e6"),
                reason: IllegalReason::CitadelBlocked
            }
        );
    }

    #[test]
    fn king_cannot_reenter_or_cross_the_castle() {
        // King beside the empty castle: d5→f5 would cross it, d5→e5 enter it.
        let p = pos("9/9/9/9/3K5/9/9/9/9 w");
        assert_eq!(
            apply_move(&p, mv("d5-e5")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("d5-e5"),
                reason: IllegalReason::CitadelBlocked
            }
        );
        assert_eq!(
            apply_move(&p, mv("d5-f5")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("d5-f5"),
                reason: IllegalReason::CitadelBlocked
            }
        );
    }

    #[test]
    fn camp_gates_depend_on_the_movers_camp() {
        // Black on d9 (north camp): may slide within the camp to e9/f9 via
        // the edge, but e8 is occupied-free yet reachable only by turning —
        // straight-line moves from d9 reach e9 and f9 only. A second black
        // on c1 (outside any camp) may never enter the north camp.
        let p = pos("3B5/9/9/9/9/9/2K6/9/2B6 b");
        let moves = legal_moves(&p).unwrap();
        let from_d9: Vec<String> = moves
            .iter()
            .filter(|m| m.from() == "d9".parse().unwrap())
            .map(|m| m.to_string())
            .collect();
        assert!(
            from_d9.contains(&"d9-e9".to_string()),
            "within-camp slide stays open"
        );
        assert!(
            from_d9.contains(&"d9-f9".to_string()),
            "crossing e9 inside the camp is fine"
        );
        assert!(
            !from_d9.contains(&"d9-e8".to_string()),
            "e8 is not on d9's rays"
        );
        assert!(
            from_d9.contains(&"d9-a9".to_string()),
            "leaving the camp along the edge"
        );
        // The outsider cannot stop on or cross d1 (south camp).
        let from_c1: Vec<String> = moves
            .iter()
            .filter(|m| m.from() == "c1".parse().unwrap())
            .map(|m| m.to_string())
            .collect();
        assert!(from_c1.contains(&"c1-b1".to_string()));
        assert!(!from_c1
            .iter()
            .any(|m| m == "c1-d1" || m == "c1-e1" || m == "c1-f1"));
    }

    #[test]
    fn camp_reentry_is_forbidden_after_leaving() {
        // Black having left the south camp to d3 cannot re-enter d1/e2.
        let p = pos("9/7K1/9/9/9/9/3B5/9/9 b");
        let moves = legal_moves(&p).unwrap();
        assert!(!moves.contains(&mv("d3-d1")));
        assert!(
            moves.contains(&mv("d3-d2")),
            "stopping just outside the camp is legal"
        );
    }

    #[test]
    fn illegal_move_reasons_are_reported() {
        let p = initial_position();
        assert_eq!(
            apply_move(&p, mv("c3-c4")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("c3-c4"),
                reason: IllegalReason::NoPiece
            }
        );
        assert_eq!(
            apply_move(&p, mv("e2-e3")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("e2-e3"),
                reason: IllegalReason::OpponentPiece
            }
        );
        // Occupancy is reported ahead of citadel closure: e2 holds a black
        // soldier (and is also a camp cell), b5 likewise.
        assert_eq!(
            apply_move(&p, mv("e3-e2")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("e3-e2"),
                reason: IllegalReason::Blocked
            }
        );
        assert_eq!(
            apply_move(&p, mv("e3-e5")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("e3-e5"),
                reason: IllegalReason::Blocked
            }
        );
        assert_eq!(
            apply_move(&p, mv("c5-a5")).unwrap_err(),
            RulesError::Illegal {
                mv: mv("c5-a5"),
                reason: IllegalReason::Blocked
            }
        );
    }

    #[test]
    fn soldier_custodian_capture() {
        // White e2→e3 sandwiches the black d3 against the white c3.
        let p = pos("9/9/7K1/9/9/9/2WB5/4W4/9 w");
        assert_eq!(captures_of(&p, mv("e2-e3")).unwrap(), coords(&["d3"]));
        let r = apply_move(&p, mv("e2-e3")).unwrap();
        assert_eq!(r.captured, coords(&["d3"]));
        assert!(r.next.board().piece_at("d3".parse().unwrap()).is_none());
        assert_eq!(
            r.outcome,
            Outcome::WhiteWin(WhiteWinReason::OpponentEliminated)
        );
    }

    #[test]
    fn moving_between_two_enemies_is_safe() {
        // Capture is active only: white c8→c3 lands between blacks b3 and
        // d3 and survives, capturing nothing.
        let p = pos("9/2W6/7K1/9/9/9/1B1B5/9/9 w");
        let r = apply_move(&p, mv("c8-c3")).unwrap();
        assert_eq!(r.captured, Vec::<Coord>::new());
        assert_eq!(
            r.next.board().piece_at("c3".parse().unwrap()),
            Some(Piece::WhiteSoldier)
        );
        assert_eq!(r.outcome, Outcome::Ongoing);
        // And the blacks cannot be captured passively either: they are
        // still there for Black's reply.
        assert_eq!(r.next.board().black_count(), 2);
    }

    #[test]
    fn citadel_cells_serve_as_capture_anvils() {
        // Black d8→d5 pins the white c5 against the west camp cell b5.
        let p = pos("9/3B5/7K1/9/2W6/9/9/9/9 b");
        assert_eq!(captures_of(&p, mv("d8-d5")).unwrap(), coords(&["c5"]));
        // Black g8→g5 pins the white f5 against the empty castle.
        let p = pos("9/6B2/7K1/9/5W3/9/9/9/9 b");
        assert_eq!(captures_of(&p, mv("g8-g5")).unwrap(), coords(&["f5"]));
    }

    #[test]
    fn camp_cell_shelters_its_occupant() {
        // Black still at home on e2 (south camp): white f8→f2 would pin it
        // against... nothing captures. Even a white on d2 would not help.
        let p = pos("9/5W3/7K1/9/9/9/9/3WB4/9 w");
        assert_eq!(captures_of(&p, mv("f8-f2")).unwrap(), Vec::<Coord>::new());
        let r = apply_move(&p, mv("f8-f2")).unwrap();
        assert_eq!(
            r.next.board().black_count(),
            1,
            "camp occupant survives the pincer"
        );
    }

    #[test]
    fn king_helps_close_a_pincer() {
        // The king is a White piece: king g3→d3 pins black c3 against white b3.
        let p = pos("9/9/9/9/9/9/1WB3K2/9/9 w");
        assert_eq!(captures_of(&p, mv("g3-d3")).unwrap(), coords(&["c3"]));
    }

    #[test]
    fn double_capture_on_one_landing() {
        // White d7→d3 closes two pincers at once: black c3 against white
        // b3, black d2 against the south-camp cell d1.
        let p = pos("9/9/3W3K1/9/9/9/1WB6/3B5/9 w");
        assert_eq!(captures_of(&p, mv("d7-d3")).unwrap(), coords(&["c3", "d2"]));
    }

    #[test]
    fn king_on_castle_needs_all_four_sides() {
        // Blacks on d5, e6, e4 around the throned king: f8→f5 closes the
        // fourth side.
        let p = pos("9/5B3/9/4B4/3BK4/4B4/9/9/9 b");
        let r = apply_move(&p, mv("f8-f5")).unwrap();
        assert_eq!(r.captured, coords(&["e5"]));
        assert_eq!(r.outcome, Outcome::BlackWin(BlackWinReason::KingCaptured));
        assert!(r.next.board().king_square().is_none());
        // Three sides alone do not take him: a waiting move elsewhere
        // leaves the besieged king alive.
        let p = pos("9/9/9/4B4/3BK4/4B4/9/7B1/9 b");
        let r = apply_move(&p, mv("h2-h3")).unwrap();
        assert_eq!(r.captured, Vec::<Coord>::new());
        assert_eq!(r.outcome, Outcome::Ongoing);
        assert!(r.next.board().king_square().is_some());
    }

    #[test]
    fn king_beside_castle_needs_three_open_sides() {
        // King on e4 (castle-adjacent): blacks on d4 and e3, black f8→f4
        // closes the third open side; the castle covers the north.
        let p = pos("9/5B3/9/9/9/3BK4/4B4/9/9 b");
        let r = apply_move(&p, mv("f8-f4")).unwrap();
        assert_eq!(r.captured, coords(&["e4"]));
        assert_eq!(r.outcome, Outcome::BlackWin(BlackWinReason::KingCaptured));
        // Two open sides do not suffice: without the d4 black the same
        // landing leaves the king alive.
        let p = pos("9/5B3/9/9/9/4K4/4B4/9/9 b");
        let r = apply_move(&p, mv("f8-f4")).unwrap();
        assert_eq!(r.captured, Vec::<Coord>::new());
        assert_eq!(r.outcome, Outcome::Ongoing);
    }

    #[test]
    fn king_beside_camp_falls_to_a_single_opposite_soldier() {
        // King on e3: e2 (south camp) presses one flank, so black h4→e4
        // directly opposite captures alone.
        let p = pos("9/9/9/9/9/7B1/4K4/9/9 b");
        let r = apply_move(&p, mv("h4-e4")).unwrap();
        assert_eq!(r.captured, coords(&["e3"]));
        assert_eq!(r.outcome, Outcome::BlackWin(BlackWinReason::KingCaptured));
        // The same lone soldier landing beside a king that is NOT
        // camp-adjacent captures nothing.
        let p = pos("9/9/9/9/9/7B1/3K5/9/9 b");
        let r = apply_move(&p, mv("h4-d4")).unwrap();
        assert_eq!(r.captured, Vec::<Coord>::new());
        assert_eq!(r.outcome, Outcome::Ongoing);
    }

    #[test]
    fn king_in_the_open_is_taken_like_a_soldier() {
        // King c4 with black c5 above: h3→c3 closes the vertical pincer.
        let p = pos("9/9/9/9/2B6/2K6/7B1/9/9 b");
        let r = apply_move(&p, mv("h3-c3")).unwrap();
        assert_eq!(r.captured, coords(&["c4"]));
        assert_eq!(r.outcome, Outcome::BlackWin(BlackWinReason::KingCaptured));
        // A diagonal neighbor does not substitute for the opposite cell.
        let p = pos("9/9/9/9/1B7/2K6/7B1/9/9 b");
        let r = apply_move(&p, mv("h3-c3")).unwrap();
        assert_eq!(r.captured, Vec::<Coord>::new());
        assert_eq!(r.outcome, Outcome::Ongoing);
    }

    #[test]
    fn king_reaching_an_edge_escape_cell_wins() {
        let p = pos("9/7B1/9/9/9/9/2K6/9/9 w");
        let r = apply_move(&p, mv("c3-a3")).unwrap();
        assert_eq!(r.outcome, Outcome::WhiteWin(WhiteWinReason::Escape));
        assert_eq!(outcome(&r.next), Outcome::WhiteWin(WhiteWinReason::Escape));
        assert!(legal_moves(&r.next).is_err());
    }

    #[test]
    fn king_standing_on_a_corner_has_not_escaped() {
        // Corners are their own class, not escape cells: a throneless king
        // parked on a1 wins nothing.
        let p = pos("9/9/9/9/9/9/9/1B7/K8 b");
        assert_eq!(outcome(&p), Outcome::Ongoing);
    }

    #[test]
    fn eliminating_the_last_black_wins_for_white() {
        let p = pos("9/9/7K1/9/9/9/2WB5/4W4/9 w");
        let r = apply_move(&p, mv("e2-e3")).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::WhiteWin(WhiteWinReason::OpponentEliminated)
        );
        assert_eq!(r.next.board().black_count(), 0);
        assert_eq!(
            outcome(&r.next),
            Outcome::WhiteWin(WhiteWinReason::OpponentEliminated)
        );
    }

    #[test]
    fn immobilizing_the_opponent_wins() {
        // Black b1 is walled in by whites a1, c1, a2, b2. A white waiting
        // move elsewhere leaves Black with no legal reply.
        let p = pos("9/9/9/9/9/9/7K1/WW7/WBW6 w");
        let r = apply_move(&p, mv("h3-h4")).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::WhiteWin(WhiteWinReason::OpponentImmobile)
        );
        assert_eq!(
            outcome(&r.next),
            Outcome::WhiteWin(WhiteWinReason::OpponentImmobile)
        );
    }

    #[test]
    fn repetition_draws_and_freezes_history() {
        // King shuttles c3→c4 and back; black shuttles h8→h7 and back. The
        // fourth ply recreates the starting state with White to move.
        let p = pos("9/7B1/9/9/9/9/2K6/9/9 w");
        assert_eq!(p.history_len(), 1);
        let r1 = apply_move(&p, mv("c3-c4")).unwrap();
        assert_eq!(r1.outcome, Outcome::Ongoing);
        assert_eq!(r1.next.history_len(), 2);
        let r2 = apply_move(&r1.next, mv("h8-h7")).unwrap();
        assert_eq!(r2.outcome, Outcome::Ongoing);
        assert_eq!(r2.next.history_len(), 3);
        let r3 = apply_move(&r2.next, mv("c4-c3")).unwrap();
        assert_eq!(r3.outcome, Outcome::Ongoing);
        assert_eq!(r3.next.history_len(), 4);
        let r4 = apply_move(&r3.next, mv("h7-h8")).unwrap();
        assert_eq!(r4.outcome, Outcome::Draw(DrawReason::Repetition));
        // History did not grow: the repeated key was already present.
        assert_eq!(r4.next.history_len(), 4);
        assert_eq!(outcome(&r4.next), Outcome::Draw(DrawReason::Repetition));
        assert_eq!(
            legal_moves(&r4.next).unwrap_err(),
            RulesError::GameOver(Outcome::Draw(DrawReason::Repetition))
        );
    }

    #[test]
    fn parsing_forgets_repetition_history() {
        let p = pos("9/7B1/9/9/9/9/2K6/9/9 w");
        let r = apply_move(&p, mv("c3-c4")).unwrap();
        let serialized = r.next.to_string();
        let reparsed = pos(&serialized);
        assert_eq!(reparsed, r.next, "placement identity survives");
        assert_eq!(reparsed.history_len(), 1, "history does not");
    }

    #[test]
    fn finished_games_reject_all_queries() {
        // King already standing on the a3 escape cell: the game is over,
        // and every move-level query says so.
        let p = pos("9/9/9/9/9/9/K8/9/1B7 b");
        assert_eq!(outcome(&p), Outcome::WhiteWin(WhiteWinReason::Escape));
        assert!(matches!(legal_moves(&p), Err(RulesError::GameOver(_))));
        assert!(matches!(
            apply_move(&p, mv("b1-b2")),
            Err(RulesError::GameOver(_))
        ));
        assert!(matches!(
            captures_of(&p, mv("b1-b2")),
            Err(RulesError::GameOver(_))
        ));
    }

    #[test]
    fn kingless_position_is_black_win() {
        let p = pos("9/9/9/9/9/9/9/1W7/1B7 w");
        assert_eq!(outcome(&p), Outcome::BlackWin(BlackWinReason::KingCaptured));
    }

    #[test]
    fn white_with_no_moves_loses_on_the_spot() {
        // King e5 surrounded… castle-adjacent cells hold blacks; the king
        // cannot move; White to move with zero mobility loses.
        let p = pos("9/9/9/4B4/3BKB3/4B4/9/9/9 w");
        assert_eq!(
            outcome(&p),
            Outcome::BlackWin(BlackWinReason::OpponentImmobile)
        );
    }

    #[test]
    fn capture_resolution_is_transform_equivariant() {
        // Spot-check the fancy camp-adjacent king rule under rotation.
        let p = pos("9/9/9/9/9/7B1/4K4/9/9 b");
        let m = mv("h4-e4");
        let direct = apply_move(&p, m).unwrap();
        for &t in &Transform::ALL {
            let tp = apply_transform(&p, t);
            let tm = t.apply_move(m);
            let mapped = apply_move(&tp, tm).unwrap();
            assert_eq!(mapped.outcome, direct.outcome, "{t:?}");
            let mut expect: Vec<Coord> = direct.captured.iter().map(|&c| t.apply(c)).collect();
            expect.sort();
            assert_eq!(mapped.captured, expect, "{t:?}");
            assert_eq!(mapped.next, apply_transform(&direct.next, t), "{t:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn legal_moves_all_apply_cleanly(p in crate::board::test_support::arb_position()) {
            if let Ok(moves) = legal_moves(&p) {
                prop_assert!(!moves.is_empty(), "ongoing positions always have moves");
                // Sorted and unique.
                let mut sorted = moves.clone();
                sorted.sort();
                sorted.dedup();
                prop_assert_eq!(&sorted, &moves);
                for m in moves.iter().take(12) {
                    let r = apply_move(&p, *m).unwrap();
                    prop_assert!(r.captured.len() <= 3);
                    // The mover's own pieces never shrink; the opponent
                    // loses exactly the captured pieces.
                    let mover = p.to_move();
                    prop_assert_eq!(r.next.board().piece_count(mover), p.board().piece_count(mover));
                    prop_assert_eq!(
                        r.next.board().piece_count(mover.opponent()) as usize + r.captured.len(),
                        p.board().piece_count(mover.opponent()) as usize
                    );
                    // apply_move's claimed outcome matches the standing
                    // classification of the resulting position.
                    prop_assert_eq!(outcome(&r.next), r.outcome);
                    // captures_of forecasts apply_move's captures.
                    prop_assert_eq!(captures_of(&p, *m).unwrap(), r.captured);
                }
            }
        }

        #[test]
        fn move_generation_is_transform_equivariant(p in crate::board::test_support::arb_position(), ti in 0usize..8) {
            let t = Transform::ALL[ti];
            let tp = apply_transform(&p, t);
            prop_assert_eq!(outcome(&tp), outcome(&p));
            if let (Ok(moves), Ok(tmoves)) = (legal_moves(&p), legal_moves(&tp)) {
                let mut mapped: Vec<Move> = moves.iter().map(|&m| t.apply_move(m)).collect();
                mapped.sort();
                prop_assert_eq!(mapped, tmoves);
            }
        }

        #[test]
        fn history_grows_by_one_on_ongoing_moves(p in crate::board::test_support::arb_position()) {
            if let Ok(moves) = legal_moves(&p) {
                for m in moves.iter().take(6) {
                    let r = apply_move(&p, *m).unwrap();
                    match r.outcome {
                        Outcome::Ongoing => prop_assert_eq!(r.next.history_len(), p.history_len() + 1),
                        Outcome::Draw(DrawReason::Repetition) =>
                            prop_assert_eq!(r.next.history_len(), p.history_len()),
                        _ => {}
                    }
                }
            }
        }
    }
}
