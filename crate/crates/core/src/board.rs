//! Board geometry, cell classification, position representation, TBN text
//! notation, and the eight-element symmetry group of the square.
//!
//! The board is 9×9. Files run a..i left to right, ranks 1..9 bottom to top.
//! The central cell e5 is the castle (throne); four T-shaped camps of four
//! cells each sit against the edge midpoints; the four corners stand apart;
//! the sixteen remaining edge cells are the king's escape cells; everything
//! else is plain. Castle and camps together are the citadel cells.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Cells per file and per rank.
pub const BOARD_SIDE: u8 = 9;
/// Total number of cells.
pub const CELL_COUNT: usize = 81;

/// The four orthogonal step directions, as (file delta, rank delta).
pub(crate) const DIRECTIONS: [(i8, i8); 4] = [(0, 1), (0, -1), (-1, 0), (1, 0)];

/// A cell on the 9×9 board.
///
/// Ordering is lexicographic by (file, rank), matching the text form: a1 <
/// a2 < ... < b1 < ... < i9.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    file: u8,
    rank: u8,
}

impl Coord {
    /// Builds a coordinate. Panics if either component is outside 0..9.
    pub const fn new(file: u8, rank: u8) -> Coord {
        assert!(
            file < BOARD_SIDE && rank < BOARD_SIDE,
            "coordinate out of range"
        );
        Coord { file, rank }
    }

    /// File component, 0..9 (printed a..i).
    pub const fn file(self) -> u8 {
        self.file
    }

    /// Rank component, 0..9 (printed 1..9).
    pub const fn rank(self) -> u8 {
        self.rank
    }

    /// Row-major cell index: rank · 9 + file.
    pub const fn index(self) -> usize {
        self.rank as usize * BOARD_SIDE as usize + self.file as usize
    }

    /// Inverse of [`Coord::index`]. Panics if `index` is 81 or more.
    pub fn from_index(index: usize) -> Coord {
        assert!(index < CELL_COUNT, "cell index out of range");
        Coord::new(
            (index % BOARD_SIDE as usize) as u8,
            (index / BOARD_SIDE as usize) as u8,
        )
    }

    /// The cell displaced by (`df`, `dr`), if it stays on the board.
    pub fn offset(self, df: i8, dr: i8) -> Option<Coord> {
        let file = self.file as i16 + df as i16;
        let rank = self.rank as i16 + dr as i16;
        if (0..BOARD_SIDE as i16).contains(&file) && (0..BOARD_SIDE as i16).contains(&rank) {
            Some(Coord::new(file as u8, rank as u8))
        } else {
            None
        }
    }

    /// All 81 cells in index order.
    pub fn all() -> impl Iterator<Item = Coord> {
        (0..CELL_COUNT).map(Coord::from_index)
    }

    /// The up-to-four orthogonally adjacent cells.
    pub fn neighbors(self) -> impl Iterator<Item = Coord> {
        DIRECTIONS
            .iter()
            .filter_map(move |&(df, dr)| self.offset(df, dr))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.file) as char, self.rank + 1)
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error parsing a cell coordinate from text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid coordinate '{0}', expected file a-i and rank 1-9")]
pub struct ParseCoordError(pub String);

impl FromStr for Coord {
    type Err = ParseCoordError;

    fn from_str(s: &str) -> Result<Coord, ParseCoordError> {
        let bad = || ParseCoordError(s.to_string());
        let bytes = s.as_bytes();
        if bytes.len() != 2 {
            return Err(bad());
        }
        let (file, rank) = (bytes[0], bytes[1]);
        if !(b'a'..=b'i').contains(&file) || !(b'1'..=b'9').contains(&rank) {
            return Err(bad());
        }
        Ok(Coord::new(file - b'a', rank - b'1'))
    }
}

/// The role a cell plays in the game's geometry.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CellClass {
    /// The central throne cell, e5.
    Castle,
    /// One of the sixteen camp cells.
    Camp,
    /// An edge cell the king may escape to.
    Escape,
    /// One of the four board corners.
    Corner,
    /// Any other cell.
    Plain,
}

/// The castle (throne) cell, e5.
pub const CASTLE: Coord = Coord::new(4, 4);

/// Camp cells, one T-shaped group per board side: three edge cells plus the
/// inward cell in front of the middle one.
pub(crate) const CAMP_GROUPS: [[Coord; 4]; 4] = [
    // south: d1 e1 f1 e2
    [
        Coord::new(3, 0),
        Coord::new(4, 0),
        Coord::new(5, 0),
        Coord::new(4, 1),
    ],
    // north: d9 e9 f9 e8
    [
        Coord::new(3, 8),
        Coord::new(4, 8),
        Coord::new(5, 8),
        Coord::new(4, 7),
    ],
    // west: a4 a5 a6 b5
    [
        Coord::new(0, 3),
        Coord::new(0, 4),
        Coord::new(0, 5),
        Coord::new(1, 4),
    ],
    // east: i4 i5 i6 h5
    [
        Coord::new(8, 3),
        Coord::new(8, 4),
        Coord::new(8, 5),
        Coord::new(7, 4),
    ],
];

const fn bit(c: Coord) -> u128 {
    1u128 << c.index()
}

const fn mask_of(cells: &[Coord]) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < cells.len() {
        mask |= bit(cells[i]);
        i += 1;
    }
    mask
}

const CAMP_MASKS: [u128; 4] = [
    mask_of(&CAMP_GROUPS[0]),
    mask_of(&CAMP_GROUPS[1]),
    mask_of(&CAMP_GROUPS[2]),
    mask_of(&CAMP_GROUPS[3]),
];
const ALL_CAMPS: u128 = CAMP_MASKS[0] | CAMP_MASKS[1] | CAMP_MASKS[2] | CAMP_MASKS[3];
const CORNERS: u128 = mask_of(&[
    Coord::new(0, 0),
    Coord::new(8, 0),
    Coord::new(0, 8),
    Coord::new(8, 8),
]);

/// Classifies a cell per the fixed board geometry.
pub fn classify(c: Coord) -> CellClass {
    let b = bit(c);
    if c == CASTLE {
        CellClass::Castle
    } else if ALL_CAMPS & b != 0 {
        CellClass::Camp
    } else if CORNERS & b != 0 {
        CellClass::Corner
    } else if c.file() == 0
        || c.file() == BOARD_SIDE - 1
        || c.rank() == 0
        || c.rank() == BOARD_SIDE - 1
    {
        CellClass::Escape
    } else {
        CellClass::Plain
    }
}

/// Index of the camp group containing `c`, if any.
pub(crate) fn camp_group(c: Coord) -> Option<usize> {
    let b = bit(c);
    CAMP_MASKS.iter().position(|&mask| mask & b != 0)
}

/// The two piece kinds per side, plus the king.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Piece {
    BlackSoldier,
    WhiteSoldier,
    King,
}

impl Piece {
    /// The player a piece belongs to. The king is a White piece.
    pub fn owner(self) -> Player {
        match self {
            Piece::BlackSoldier => Player::Black,
            Piece::WhiteSoldier | Piece::King => Player::White,
        }
    }

    fn tbn_char(self) -> char {
        match self {
            Piece::BlackSoldier => 'B',
            Piece::WhiteSoldier => 'W',
            Piece::King => 'K',
        }
    }
}

/// One of the two players.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Player {
    White,
    Black,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::White => Player::Black,
            Player::Black => Player::White,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::White => "white",
            Player::Black => "black",
        })
    }
}

/// Why a piece cannot be added to a board.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaceError {
    #[error("cell {0} is already occupied")]
    Occupied(Coord),
    #[error("a second king at {0}")]
    SecondKing(Coord),
    #[error("a soldier on the castle cell")]
    SoldierOnCastle,
    #[error("more than 16 black soldiers")]
    TooManyBlack,
    #[error("more than 8 white soldiers")]
    TooManyWhite,
}

/// Piece placement only: three disjoint cell sets held as 81-bit masks.
///
/// Invariants (enforced by [`Board::place`] and preserved by the crate's
/// internal mutations): at most one piece per cell, at most 16 black
/// soldiers, at most 8 white soldiers, at most one king, and no soldier on
/// the castle cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    black: u128,
    white: u128,
    king: u128,
}

/// Iterator over the cells set in an 81-bit mask, in index order.
pub(crate) struct Bits(pub(crate) u128);

impl Iterator for Bits {
    type Item = Coord;

    fn next(&mut self) -> Option<Coord> {
        if self.0 == 0 {
            return None;
        }
        let index = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Coord::from_index(index))
    }
}

impl Board {
    /// A board with no pieces.
    pub fn empty() -> Board {
        Board {
            black: 0,
            white: 0,
            king: 0,
        }
    }

    pub(crate) fn occupied(&self) -> u128 {
        self.black | self.white | self.king
    }

    pub fn is_occupied(&self, c: Coord) -> bool {
        self.occupied() & bit(c) != 0
    }

    pub fn piece_at(&self, c: Coord) -> Option<Piece> {
        let b = bit(c);
        if self.black & b != 0 {
            Some(Piece::BlackSoldier)
        } else if self.white & b != 0 {
            Some(Piece::WhiteSoldier)
        } else if self.king & b != 0 {
            Some(Piece::King)
        } else {
            None
        }
    }

    /// Adds a piece, upholding all board invariants.
    pub fn place(&mut self, c: Coord, piece: Piece) -> Result<(), PlaceError> {
        if self.is_occupied(c) {
            return Err(PlaceError::Occupied(c));
        }
        match piece {
            Piece::BlackSoldier => {
                if c == CASTLE {
                    return Err(PlaceError::SoldierOnCastle);
                }
                if self.black_count() >= 16 {
                    return Err(PlaceError::TooManyBlack);
                }
                self.black |= bit(c);
            }
            Piece::WhiteSoldier => {
                if c == CASTLE {
                    return Err(PlaceError::SoldierOnCastle);
                }
                if self.white_soldier_count() >= 8 {
                    return Err(PlaceError::TooManyWhite);
                }
                self.white |= bit(c);
            }
            Piece::King => {
                if self.king != 0 {
                    return Err(PlaceError::SecondKing(c));
                }
                self.king = bit(c);
            }
        }
        Ok(())
    }

    pub(crate) fn remove(&mut self, c: Coord) {
        let keep = !bit(c);
        self.black &= keep;
        self.white &= keep;
        self.king &= keep;
    }

    /// Moves whatever piece stands on `from` to the empty cell `to`.
    pub(crate) fn displace(&mut self, from: Coord, to: Coord) {
        debug_assert!(self.is_occupied(from) && !self.is_occupied(to));
        let (fb, tb) = (bit(from), bit(to));
        if self.black & fb != 0 {
            self.black = (self.black & !fb) | tb;
        } else if self.white & fb != 0 {
            self.white = (self.white & !fb) | tb;
        } else {
            self.king = tb;
        }
    }

    pub fn black_count(&self) -> u32 {
        self.black.count_ones()
    }

    pub fn white_soldier_count(&self) -> u32 {
        self.white.count_ones()
    }

    /// The king's cell, or `None` if it has been captured.
    pub fn king_square(&self) -> Option<Coord> {
        if self.king == 0 {
            None
        } else {
            Some(Coord::from_index(self.king.trailing_zeros() as usize))
        }
    }

    /// Total piece count of one side; the king counts for White.
    pub fn piece_count(&self, side: Player) -> u32 {
        match side {
            Player::Black => self.black_count(),
            Player::White => self.white_soldier_count() + self.king.count_ones(),
        }
    }

    /// Cells holding the given side's pieces, in index order.
    pub(crate) fn pieces(&self, side: Player) -> Bits {
        Bits(match side {
            Player::Black => self.black,
            Player::White => self.white | self.king,
        })
    }

    pub(crate) fn transformed(&self, t: Transform) -> Board {
        let map = |mask: u128| Bits(mask).fold(0u128, |acc, c| acc | bit(t.apply(c)));
        Board {
            black: map(self.black),
            white: map(self.white),
            king: map(self.king),
        }
    }

    /// The board half of TBN: nine '/'-separated rank fields, rank 9 first.
    pub(crate) fn placement_text(&self) -> String {
        let mut text = String::with_capacity(90);
        for rank in (0..BOARD_SIDE).rev() {
            if rank < BOARD_SIDE - 1 {
                text.push('/');
            }
            let mut run = 0u8;
            for file in 0..BOARD_SIDE {
                match self.piece_at(Coord::new(file, rank)) {
                    None => run += 1,
                    Some(piece) => {
                        if run > 0 {
                            text.push((b'0' + run) as char);
                            run = 0;
                        }
                        text.push(piece.tbn_char());
                    }
                }
            }
            if run > 0 {
                text.push((b'0' + run) as char);
            }
        }
        text
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.placement_text())
    }
}

/// Placement plus side to move: the identity used for repetition detection
/// and reachability sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct StateKey {
    board: Board,
    to_move: Player,
}

impl StateKey {
    pub fn new(board: &Board, to_move: Player) -> StateKey {
        StateKey {
            board: *board,
            to_move,
        }
    }

    pub(crate) fn transformed(&self, t: Transform) -> StateKey {
        StateKey {
            board: self.board.transformed(t),
            to_move: self.to_move,
        }
    }
}

/// Full game state: placement, side to move, and the repetition history.
///
/// Equality and hashing cover the placement and side to move only. History
/// is a path property — two positions that look identical on the board are
/// the same state for repetition, symmetry, and reachability purposes even
/// if they were reached along different move sequences.
#[derive(Clone, Debug)]
pub struct Position {
    board: Board,
    to_move: Player,
    seen: HashSet<StateKey>,
    repetition: bool,
}

impl Position {
    /// Wraps a placement into a game state with a fresh history seeded with
    /// the state itself, exactly as parsing a TBN string does.
    pub fn new(board: Board, to_move: Player) -> Position {
        let mut seen = HashSet::new();
        seen.insert(StateKey::new(&board, to_move));
        Position {
            board,
            to_move,
            seen,
            repetition: false,
        }
    }

    pub(crate) fn with_history(
        board: Board,
        to_move: Player,
        seen: HashSet<StateKey>,
        repetition: bool,
    ) -> Position {
        Position {
            board,
            to_move,
            seen,
            repetition,
        }
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn state_key(&self) -> StateKey {
        StateKey::new(&self.board, self.to_move)
    }

    /// Number of distinct state keys seen since game start.
    pub fn history_len(&self) -> usize {
        self.seen.len()
    }

    pub(crate) fn seen(&self) -> &HashSet<StateKey> {
        &self.seen
    }

    /// True if the move that produced this position repeated an earlier
    /// state, ending the game in a draw.
    pub(crate) fn repetition_reached(&self) -> bool {
        self.repetition
    }
}

impl PartialEq for Position {
    fn eq(&self, other: &Position) -> bool {
        self.board == other.board && self.to_move == other.to_move
    }
}

impl Eq for Position {}

impl std::hash::Hash for Position {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.board.hash(state);
        self.to_move.hash(state);
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tbn(self))
    }
}

impl FromStr for Position {
    type Err = TbnError;

    fn from_str(s: &str) -> Result<Position, TbnError> {
        parse_tbn(s)
    }
}

/// White's starting soldier cells: two on each side of the king.
const WHITE_START: [Coord; 8] = [
    Coord::new(4, 2), // e3
    Coord::new(4, 3), // e4
    Coord::new(4, 5), // e6
    Coord::new(4, 6), // e7
    Coord::new(2, 4), // c5
    Coord::new(3, 4), // d5
    Coord::new(5, 4), // f5
    Coord::new(6, 4), // g5
];

/// The standard starting position: king on the castle, blacks filling the
/// camps, white soldiers in a cross around the king, White to move.
pub fn initial_position() -> Position {
    let mut board = Board::empty();
    for group in &CAMP_GROUPS {
        for &c in group {
            board
                .place(c, Piece::BlackSoldier)
                .expect("camp cells are distinct");
        }
    }
    for &c in &WHITE_START {
        board
            .place(c, Piece::WhiteSoldier)
            .expect("start cells are distinct");
    }
    board.place(CASTLE, Piece::King).expect("castle is free");
    Position::new(board, Player::White)
}

/// Why a TBN string does not describe a valid position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TbnError {
    #[error("expected 9 ranks separated by '/', found {0}")]
    RankCount(usize),
    #[error("rank {rank} covers {found} files, expected 9")]
    RankWidth { rank: u8, found: usize },
    #[error("invalid character '{0}' in board field")]
    BadChar(char),
    #[error("rank {0} splits an empty run across adjacent digits")]
    NonMaximalRun(u8),
    #[error("missing side-to-move field")]
    MissingSide,
    #[error("invalid side-to-move field '{0}', expected 'w' or 'b'")]
    BadSide(String),
    #[error(transparent)]
    Place(#[from] PlaceError),
}

/// Renders a position as TBN: nine rank fields (rank 9 first, 'B'/'W'/'K'
/// pieces, digits for maximal empty runs), a space, then 'w' or 'b'.
pub fn format_tbn(p: &Position) -> String {
    let mut text = p.board.placement_text();
    text.push(' ');
    text.push(match p.to_move {
        Player::White => 'w',
        Player::Black => 'b',
    });
    text
}

/// Parses TBN text. The new position starts a fresh history seeded with
/// itself; repetition history is never serialized.
pub fn parse_tbn(text: &str) -> Result<Position, TbnError> {
    let (board_text, side_text) = text.split_once(' ').ok_or(TbnError::MissingSide)?;
    let to_move = match side_text {
        "w" => Player::White,
        "b" => Player::Black,
        other => return Err(TbnError::BadSide(other.to_string())),
    };
    let fields: Vec<&str> = board_text.split('/').collect();
    if fields.len() != BOARD_SIDE as usize {
        return Err(TbnError::RankCount(fields.len()));
    }
    let mut board = Board::empty();
    for (i, field) in fields.iter().enumerate() {
        let rank = BOARD_SIDE - 1 - i as u8;
        let label = rank + 1;
        // First pass: syntax, run maximality, and total width.
        let mut width = 0usize;
        let mut prev_digit = false;
        for ch in field.chars() {
            match ch {
                '1'..='9' => {
                    if prev_digit {
                        return Err(TbnError::NonMaximalRun(label));
                    }
                    width += ch as usize - '0' as usize;
                    prev_digit = true;
                }
                'B' | 'W' | 'K' => {
                    width += 1;
                    prev_digit = false;
                }
                other => return Err(TbnError::BadChar(other)),
            }
        }
        if width != BOARD_SIDE as usize {
            return Err(TbnError::RankWidth {
                rank: label,
                found: width,
            });
        }
        // Second pass: place the pieces.
        let mut file = 0u8;
        for ch in field.chars() {
            match ch {
                '1'..='9' => file += ch as u8 - b'0',
                'B' => {
                    board.place(Coord::new(file, rank), Piece::BlackSoldier)?;
                    file += 1;
                }
                'W' => {
                    board.place(Coord::new(file, rank), Piece::WhiteSoldier)?;
                    file += 1;
                }
                _ => {
                    board.place(Coord::new(file, rank), Piece::King)?;
                    file += 1;
                }
            }
        }
    }
    Ok(Position::new(board, to_move))
}

/// From-to displacement along one rank or file.
///
/// Construction guarantees the endpoints differ and are aligned; whether the
/// move is legal on a given board is the rules module's business.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    from: Coord,
    to: Coord,
}

/// Why text or a pair of cells does not form a move.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("invalid move text '{0}', expected the form 'e8-e3'")]
    Syntax(String),
    #[error(transparent)]
    Coord(#[from] ParseCoordError),
    #[error("null move: from and to are the same cell")]
    Null,
    #[error("move does not stay on one rank or file")]
    NotAligned,
}

impl Move {
    pub fn new(from: Coord, to: Coord) -> Result<Move, MoveError> {
        if from == to {
            return Err(MoveError::Null);
        }
        if from.file() != to.file() && from.rank() != to.rank() {
            return Err(MoveError::NotAligned);
        }
        Ok(Move { from, to })
    }

    /// Skips validation for endpoints already known to be distinct and
    /// aligned (move generation, symmetry mapping).
    pub(crate) fn raw(from: Coord, to: Coord) -> Move {
        debug_assert!(from != to && (from.file() == to.file() || from.rank() == to.rank()));
        Move { from, to }
    }

    pub fn from(self) -> Coord {
        self.from
    }

    pub fn to(self) -> Coord {
        self.to
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Move, MoveError> {
        let (from, to) = s
            .split_once('-')
            .ok_or_else(|| MoveError::Syntax(s.to_string()))?;
        Move::new(from.parse()?, to.parse()?)
    }
}

/// How a finished game ended, or `Ongoing`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Outcome {
    Ongoing,
    WhiteWin(WhiteWinReason),
    BlackWin(BlackWinReason),
    Draw(DrawReason),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum WhiteWinReason {
    /// The king stopped on an escape cell.
    Escape,
    /// Black has no legal move.
    OpponentImmobile,
    /// Black has no pieces left.
    OpponentEliminated,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum BlackWinReason {
    KingCaptured,
    /// White has no legal move.
    OpponentImmobile,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum DrawReason {
    /// A state key recurred.
    Repetition,
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        self != Outcome::Ongoing
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Ongoing => "ongoing",
            Outcome::WhiteWin(WhiteWinReason::Escape) => "white wins: escape",
            Outcome::WhiteWin(WhiteWinReason::OpponentImmobile) => "white wins: opponent immobile",
            Outcome::WhiteWin(WhiteWinReason::OpponentEliminated) => {
                "white wins: opponent eliminated"
            }
            Outcome::BlackWin(BlackWinReason::KingCaptured) => "black wins: king captured",
            Outcome::BlackWin(BlackWinReason::OpponentImmobile) => "black wins: opponent immobile",
            Outcome::Draw(DrawReason::Repetition) => "draw: repetition",
        })
    }
}

/// One of the eight symmetries of the square, acting on cells.
///
/// `FlipFile` mirrors files (a↔i), `FlipRank` mirrors ranks (1↔9),
/// `FlipMain` reflects across the a1–i9 diagonal, `FlipAnti` across a9–i1.
/// Rotations are counterclockwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Transform {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    FlipFile,
    FlipRank,
    FlipMain,
    FlipAnti,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rotate90,
        Transform::Rotate180,
        Transform::Rotate270,
        Transform::FlipFile,
        Transform::FlipRank,
        Transform::FlipMain,
        Transform::FlipAnti,
    ];

    /// Maps a cell.
    pub fn apply(self, c: Coord) -> Coord {
        let (f, r) = (c.file(), c.rank());
        let m = BOARD_SIDE - 1;
        let (file, rank) = match self {
            Transform::Identity => (f, r),
            Transform::Rotate90 => (m - r, f),
            Transform::Rotate180 => (m - f, m - r),
            Transform::Rotate270 => (r, m - f),
            Transform::FlipFile => (m - f, r),
            Transform::FlipRank => (f, m - r),
            Transform::FlipMain => (r, f),
            Transform::FlipAnti => (m - r, m - f),
        };
        Coord::new(file, rank)
    }

    /// Maps a move endpoint-wise. Alignment is preserved by every symmetry.
    pub fn apply_move(self, m: Move) -> Move {
        Move::raw(self.apply(m.from()), self.apply(m.to()))
    }

    /// Decomposition as flip? ∘ rotationᵏ (rotation applied first).
    fn parts(self) -> (bool, u8) {
        match self {
            Transform::Identity => (false, 0),
            Transform::Rotate90 => (false, 1),
            Transform::Rotate180 => (false, 2),
            Transform::Rotate270 => (false, 3),
            Transform::FlipFile => (true, 0),
            Transform::FlipMain => (true, 1),
            Transform::FlipRank => (true, 2),
            Transform::FlipAnti => (true, 3),
        }
    }

    fn from_parts(flip: bool, rot: u8) -> Transform {
        match (flip, rot % 4) {
            (false, 0) => Transform::Identity,
            (false, 1) => Transform::Rotate90,
            (false, 2) => Transform::Rotate180,
            (false, 3) => Transform::Rotate270,
            (true, 0) => Transform::FlipFile,
            (true, 1) => Transform::FlipMain,
            (true, 2) => Transform::FlipRank,
            _ => Transform::FlipAnti,
        }
    }

    /// Function composition: `a.compose(b)` applies `b` first, then `a`.
    pub fn compose(self, other: Transform) -> Transform {
        let (fa, ra) = self.parts();
        let (fb, rb) = other.parts();
        if fb {
            // rotᵃ ∘ flip = flip ∘ rot⁻ᵃ, so the flips merge and the
            // rotations subtract.
            Transform::from_parts(!fa, (rb + 4 - ra) % 4)
        } else {
            Transform::from_parts(fa, (ra + rb) % 4)
        }
    }

    pub fn inverse(self) -> Transform {
        let (flip, rot) = self.parts();
        if flip {
            self // reflections are involutions
        } else {
            Transform::from_parts(false, (4 - rot) % 4)
        }
    }
}

/// Maps a position cell-wise: placement and repetition history move with the
/// transform, the side to move is unchanged.
pub fn apply_transform(p: &Position, t: Transform) -> Position {
    Position {
        board: p.board.transformed(t),
        to_move: p.to_move,
        seen: p.seen.iter().map(|key| key.transformed(t)).collect(),
        repetition: p.repetition,
    }
}
