//! Breakthrough and Knightthrough on a `w x h` board.
//!
//! Both games start with two rows of pieces per side. White moves toward the
//! top row, black toward the bottom; reaching the opposite home row wins, and
//! a player with no legal move loses. Draws are impossible.
//!
//! Split encodings:
//! * `Mod` splits a move into piece selection and destination. Selection is
//!   lazy: every own piece is selectable, and grabbing a piece that has no
//!   destination yields a dead intermediate state resolved by backtracking.
//! * `ModShift` additionally splits the selection square into column then
//!   row, giving three semimoves per move.

use crate::game::{Game, Player, Scores, Semimove};
use crate::games::{ConfigError, SplitStrategy};

pub const MAX_CELLS: usize = 100;

const EMPTY: u8 = 0;
const NO_WINNER: u8 = u8::MAX;

const PHASE_NODAL: u8 = 0;
const PHASE_COL: u8 = 1;
const PHASE_SELECTED: u8 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThroughKind {
    /// Breakthrough pawns: straight forward to an empty square, diagonally
    /// forward to an empty square or a capture.
    Pawn,
    /// Knightthrough knights: forward knight jumps, capturing on landing.
    Knight,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ThroughState {
    board: [u8; MAX_CELLS],
    to_move: u8,
    phase: u8,
    sel: u8,
    winner: u8,
}

impl std::fmt::Debug for ThroughState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ThroughState(to_move={}, phase={}, sel={}, winner={})",
            self.to_move, self.phase, self.sel, self.winner
        )
    }
}

pub struct Through {
    kind: ThroughKind,
    w: u8,
    h: u8,
    n: u32,
    strategy: SplitStrategy,
}

impl Through {
    pub fn new(kind: ThroughKind, w: u8, h: u8, strategy: SplitStrategy) -> Result<Self, ConfigError> {
        let name = match kind {
            ThroughKind::Pawn => "breakthrough",
            ThroughKind::Knight => "knightthrough",
        };
        if w < 2 || h < 4 || (w as usize) * (h as usize) > MAX_CELLS {
            return Err(ConfigError::BadSize {
                game: name,
                detail: format!("{w}x{h} unsupported; need width >= 2, height >= 4, at most {MAX_CELLS} squares"),
            });
        }
        match strategy {
            SplitStrategy::Orthodox | SplitStrategy::Mod | SplitStrategy::ModShift => {}
            other => {
                return Err(ConfigError::BadStrategy {
                    game: name,
                    strategy: other,
                    valid: &[SplitStrategy::Orthodox, SplitStrategy::Mod, SplitStrategy::ModShift],
                })
            }
        }
        Ok(Through { kind, w, h, n: w as u32 * h as u32, strategy })
    }

    pub fn kind(&self) -> ThroughKind {
        self.kind
    }

    pub fn size(&self) -> (u8, u8) {
        (self.w, self.h)
    }

    fn sq(&self, r: u8, c: u8) -> u8 {
        r * self.w + c
    }

    fn piece_of(player: u8) -> u8 {
        player + 1
    }

    fn goal_row(&self, player: u8) -> u8 {
        if player == 0 {
            self.h - 1
        } else {
            0
        }
    }

    /// Destination squares of the piece at `src`, in canonical order.
    fn dests(&self, board: &[u8], player: u8, src: u8, out: &mut Vec<u8>) {
        let (r, c) = (src / self.w, src % self.w);
        let own = Self::piece_of(player);
        match self.kind {
            ThroughKind::Pawn => {
                let nr = if player == 0 { r + 1 } else { r.wrapping_sub(1) };
                if nr >= self.h {
                    return;
                }
                for dc in [-1i16, 0, 1] {
                    let nc = c as i16 + dc;
                    if nc < 0 || nc >= self.w as i16 {
                        continue;
                    }
                    let d = self.sq(nr, nc as u8);
                    let occ = board[d as usize];
                    // Straight needs an empty square; diagonals may capture.
                    let ok = if dc == 0 { occ == EMPTY } else { occ != own };
                    if ok {
                        out.push(d);
                    }
                }
            }
            ThroughKind::Knight => {
                let jumps: [(i16, i16); 4] = [(1, -2), (1, 2), (2, -1), (2, 1)];
                let sgn = if player == 0 { 1 } else { -1 };
                for (dr, dc) in jumps {
                    let nr = r as i16 + sgn * dr;
                    let nc = c as i16 + dc;
                    if nr < 0 || nr >= self.h as i16 || nc < 0 || nc >= self.w as i16 {
                        continue;
                    }
                    let d = self.sq(nr as u8, nc as u8);
                    if board[d as usize] != own {
                        out.push(d);
                    }
                }
            }
        }
    }

    fn piece_can_move(&self, board: &[u8], player: u8, src: u8) -> bool {
        let (r, c) = (src / self.w, src % self.w);
        let own = Self::piece_of(player);
        match self.kind {
            ThroughKind::Pawn => {
                let nr = if player == 0 { r + 1 } else { r.wrapping_sub(1) };
                if nr >= self.h {
                    return false;
                }
                for dc in [-1i16, 0, 1] {
                    let nc = c as i16 + dc;
                    if nc < 0 || nc >= self.w as i16 {
                        continue;
                    }
                    let occ = board[self.sq(nr, nc as u8) as usize];
                    if (dc == 0 && occ == EMPTY) || (dc != 0 && occ != own) {
                        return true;
                    }
                }
                false
            }
            ThroughKind::Knight => {
                let jumps: [(i16, i16); 4] = [(1, -2), (1, 2), (2, -1), (2, 1)];
                let sgn = if player == 0 { 1 } else { -1 };
                for (dr, dc) in jumps {
                    let nr = r as i16 + sgn * dr;
                    let nc = c as i16 + dc;
                    if nr >= 0 && nr < self.h as i16 && nc >= 0 && nc < self.w as i16 {
                        if board[self.sq(nr as u8, nc as u8) as usize] != own {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    fn side_can_move(&self, board: &[u8], player: u8) -> bool {
        let own = Self::piece_of(player);
        for s in 0..self.n as u8 {
            if board[s as usize] == own && self.piece_can_move(board, player, s) {
                return true;
            }
        }
        false
    }

    fn decode(&self, m: &[Semimove]) -> (u8, u8) {
        let mut src = 0;
        let mut dst = 0;
        for &Semimove(t) in m {
            if t < self.n {
                src = t as u8;
            } else if t < 2 * self.n {
                dst = (t - self.n) as u8;
            }
        }
        if self.strategy == SplitStrategy::Orthodox {
            let t = m[0].0;
            src = (t / self.n) as u8;
            dst = (t % self.n) as u8;
        }
        (src, dst)
    }

    fn coord(&self, sq: u8) -> String {
        let (r, c) = (sq / self.w, sq % self.w);
        format!("{}{}", (b'a' + c) as char, r + 1)
    }
}

impl Game for Through {
    type State = ThroughState;

    fn orthodox(&self) -> bool {
        self.strategy == SplitStrategy::Orthodox
    }

    fn initial_state(&self) -> ThroughState {
        let mut board = [EMPTY; MAX_CELLS];
        for r in 0..2u8 {
            for c in 0..self.w {
                board[self.sq(r, c) as usize] = Self::piece_of(0);
                board[self.sq(self.h - 1 - r, c) as usize] = Self::piece_of(1);
            }
        }
        ThroughState { board, to_move: 0, phase: PHASE_NODAL, sel: 0, winner: NO_WINNER }
    }

    fn is_nodal(&self, s: &ThroughState) -> bool {
        s.phase == PHASE_NODAL
    }

    fn is_terminal(&self, s: &ThroughState) -> bool {
        s.winner != NO_WINNER
    }

    fn player(&self, s: &ThroughState) -> Player {
        debug_assert!(s.winner == NO_WINNER);
        Player(s.to_move)
    }

    fn scores(&self, s: &ThroughState) -> Scores {
        debug_assert!(s.winner != NO_WINNER);
        Scores::two_player_win(Player(s.winner))
    }

    fn semimoves(&self, s: &ThroughState, out: &mut Vec<Semimove>) {
        debug_assert!(s.winner == NO_WINNER);
        let p = s.to_move;
        let own = Self::piece_of(p);
        let mut dst_buf = Vec::new();
        match (self.strategy, s.phase) {
            (SplitStrategy::Orthodox, _) => {
                for src in 0..self.n as u8 {
                    if s.board[src as usize] == own {
                        dst_buf.clear();
                        self.dests(&s.board, p, src, &mut dst_buf);
                        for &d in &dst_buf {
                            out.push(Semimove(src as u32 * self.n + d as u32));
                        }
                    }
                }
            }
            (SplitStrategy::Mod, PHASE_NODAL) => {
                for src in 0..self.n as u8 {
                    if s.board[src as usize] == own {
                        out.push(Semimove(src as u32));
                    }
                }
            }
            (SplitStrategy::ModShift, PHASE_NODAL) => {
                for c in 0..self.w {
                    if (0..self.h).any(|r| s.board[self.sq(r, c) as usize] == own) {
                        out.push(Semimove(2 * self.n + c as u32));
                    }
                }
            }
            (SplitStrategy::ModShift, PHASE_COL) => {
                let c = s.sel;
                for r in 0..self.h {
                    let src = self.sq(r, c);
                    if s.board[src as usize] == own {
                        out.push(Semimove(src as u32));
                    }
                }
            }
            (_, PHASE_SELECTED) => {
                dst_buf.clear();
                self.dests(&s.board, p, s.sel, &mut dst_buf);
                for &d in &dst_buf {
                    out.push(Semimove(self.n + d as u32));
                }
            }
            _ => unreachable!("bad phase {} for {:?}", s.phase, self.strategy),
        }
    }

    fn apply(&self, s: &mut ThroughState, Semimove(t): Semimove) {
        let p = s.to_move;
        if self.strategy == SplitStrategy::Orthodox {
            let src = (t / self.n) as u8;
            let dst = (t % self.n) as u8;
            s.board[src as usize] = EMPTY;
            self.finish_move(s, p, dst);
            return;
        }
        if t < self.n {
            // Grab the piece; it is "in hand" until the destination semimove.
            s.board[t as usize] = EMPTY;
            s.sel = t as u8;
            s.phase = PHASE_SELECTED;
        } else if t < 2 * self.n {
            let dst = (t - self.n) as u8;
            self.finish_move(s, p, dst);
        } else {
            s.sel = (t - 2 * self.n) as u8;
            s.phase = PHASE_COL;
        }
    }

    fn move_code(&self, _s: &ThroughState, m: &[Semimove]) -> u64 {
        let (src, dst) = self.decode(m);
        src as u64 * self.n as u64 + dst as u64
    }

    fn move_text(&self, _s: &ThroughState, m: &[Semimove]) -> String {
        let (src, dst) = self.decode(m);
        format!("{}-{}", self.coord(src), self.coord(dst))
    }

    fn dump_state(&self, s: &ThroughState) -> String {
        let mut out = String::new();
        for r in (0..self.h).rev() {
            for c in 0..self.w {
                out.push(match s.board[self.sq(r, c) as usize] {
                    EMPTY => '.',
                    1 => 'w',
                    _ => 'b',
                });
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "to_move={} phase={} sel={} winner={}\n",
            s.to_move, s.phase, s.sel,
            if s.winner == NO_WINNER { "-".to_string() } else { s.winner.to_string() }
        ));
        out
    }
}

impl Through {
    fn finish_move(&self, s: &mut ThroughState, p: u8, dst: u8) {
        s.board[dst as usize] = Self::piece_of(p);
        s.phase = PHASE_NODAL;
        s.sel = 0;
        if dst / self.w == self.goal_row(p) {
            s.winner = p;
            return;
        }
        let opp = 1 - p;
        s.to_move = opp;
        if !self.side_can_move(&s.board, opp) {
            s.winner = p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{enumerate_moves, move_code_set, SimControl};

    fn game(strategy: SplitStrategy) -> Through {
        Through::new(ThroughKind::Pawn, 8, 8, strategy).unwrap()
    }

    #[test]
    fn orthodox_initial_has_22_moves() {
        let g = game(SplitStrategy::Orthodox);
        let s = g.initial_state();
        let mut out = Vec::new();
        g.semimoves(&s, &mut out);
        assert_eq!(out.len(), 22);
    }

    #[test]
    fn mod_initial_selection_is_lazy_over_all_pieces() {
        // Every own piece is selectable; the eight blocked back-row pawns
        // lead to dead intermediate states handled by backtracking.
        let g = game(SplitStrategy::Mod);
        let s = g.initial_state();
        let mut out = Vec::new();
        g.semimoves(&s, &mut out);
        assert_eq!(out.len(), 16);
        let movable = out
            .iter()
            .filter(|sm| {
                let t = crate::game::applied(&g, &s, **sm);
                let mut dsts = Vec::new();
                g.semimoves(&t, &mut dsts);
                !dsts.is_empty()
            })
            .count();
        assert_eq!(movable, 8);
    }

    #[test]
    fn mod_moves_match_orthodox_moves() {
        let go = game(SplitStrategy::Orthodox);
        let gm = game(SplitStrategy::Mod);
        let s = go.initial_state();
        assert_eq!(move_code_set(&go, &s), move_code_set(&gm, &s));
        assert_eq!(move_code_set(&go, &s).len(), 22);
    }

    #[test]
    fn modshift_moves_have_three_semimoves() {
        let g = game(SplitStrategy::ModShift);
        let s = g.initial_state();
        let mut ctl = SimControl::unlimited();
        let moves = enumerate_moves(&g, &s, &mut ctl).unwrap();
        assert!(!moves.is_empty());
        assert!(moves.iter().all(|m| m.len() == 3));
    }

    #[test]
    fn goal_row_ends_the_game() {
        let g = Through::new(ThroughKind::Pawn, 5, 5, SplitStrategy::Orthodox).unwrap();
        let mut s = g.initial_state();
        s.board = [EMPTY; MAX_CELLS];
        s.board[g.sq(3, 2) as usize] = 1; // white pawn one step from goal
        s.board[g.sq(1, 0) as usize] = 2;
        g.apply(&mut s, Semimove(g.sq(3, 2) as u32 * g.n + g.sq(4, 2) as u32));
        assert!(g.is_terminal(&s));
        assert_eq!(g.scores(&s), Scores::two_player_win(Player(0)));
    }

    #[test]
    fn side_without_moves_loses() {
        let g = Through::new(ThroughKind::Pawn, 5, 5, SplitStrategy::Orthodox).unwrap();
        let mut s = g.initial_state();
        s.board = [EMPTY; MAX_CELLS];
        s.board[g.sq(1, 1) as usize] = 1;
        s.board[g.sq(2, 2) as usize] = 2; // last black pawn, about to be captured
        g.apply(&mut s, Semimove(g.sq(1, 1) as u32 * g.n + g.sq(2, 2) as u32));
        assert!(g.is_terminal(&s));
        assert_eq!(g.scores(&s), Scores::two_player_win(Player(0)));
    }

    #[test]
    fn knight_initial_move_count() {
        let g = Through::new(ThroughKind::Knight, 8, 8, SplitStrategy::Orthodox).unwrap();
        let s = g.initial_state();
        let mut out = Vec::new();
        g.semimoves(&s, &mut out);
        // Front row: interior knights have 4 jumps, c=0/7 two, c=1/6 three.
        // Back row: jumps of the (2,±1) kind land on empty row 2.
        let front: usize = 4 * 4 + 2 * 3 + 2 * 2;
        let back: usize = 6 * 2 + 2 * 1;
        assert_eq!(out.len(), front + back);
    }
}
