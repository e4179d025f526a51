//! Game of the Amazons on a square board.
//!
//! A move slides an own amazon like a chess queen to an empty square, then
//! shoots an arrow from the landing square under the same sliding rules (the
//! vacated source counts as empty). Arrows block their square for the rest of
//! the play. The player to move with no legal move loses; draws are
//! impossible.
//!
//! Split encodings:
//! * `Mod`: grab amazon / drop it / shoot arrow (three semimoves). Grabbing is
//!   lazy over all own amazons, so grabbing a fully blocked amazon yields a
//!   dead intermediate state.
//! * `ModPlus`: additionally a direction choice before each of the two slides
//!   (five semimoves); every direction is offered and a direction with no
//!   empty square next to it is dead.
//! * `Shift` splits the grab square into column then row.

use crate::game::{Game, Player, Scores, Semimove};
use crate::games::{ConfigError, SplitStrategy};

pub const MAX_CELLS: usize = 100;
const MAX_AMAZONS: usize = 4;

const EMPTY: u8 = 0;
const ARROW: u8 = 3;
const NO_WINNER: u8 = u8::MAX;

const PHASE_NODAL: u8 = 0;
const PHASE_COL: u8 = 1;
const PHASE_GRABBED: u8 = 2;
const PHASE_SLIDE_DIR: u8 = 3;
const PHASE_PLACED: u8 = 4;
const PHASE_ARROW_DIR: u8 = 5;

/// Queen directions in canonical order.
const DIRS: [(i16, i16); 8] =
    [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct AmazonsState {
    board: [u8; MAX_CELLS],
    amazons: [[u8; MAX_AMAZONS]; 2],
    count: u8,
    to_move: u8,
    phase: u8,
    sel: u8,
    dir: u8,
    winner: u8,
}

impl std::fmt::Debug for AmazonsState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AmazonsState(to_move={}, phase={}, sel={}, dir={}, winner={})",
            self.to_move, self.phase, self.sel, self.dir, self.winner
        )
    }
}

pub struct Amazons {
    w: u8,
    n: u32,
    strategy: SplitStrategy,
    initial: [[u8; MAX_AMAZONS]; 2],
    count: u8,
}

impl Amazons {
    pub fn new(size: u8, strategy: SplitStrategy) -> Result<Self, ConfigError> {
        let placements: &[(u8, u8)] = match size {
            5 => &[(0, 1), (0, 3)],
            6 => &[(0, 1), (0, 4)],
            8 => &[(0, 2), (0, 5), (2, 0), (2, 7)],
            10 => &[(0, 3), (0, 6), (3, 0), (3, 9)],
            _ => {
                return Err(ConfigError::BadSize {
                    game: "amazons",
                    detail: format!("{size}x{size} unsupported; shipped sizes are 5, 6, 8, 10"),
                })
            }
        };
        let mut initial = [[0u8; MAX_AMAZONS]; 2];
        for (i, &(r, c)) in placements.iter().enumerate() {
            initial[0][i] = r * size + c;
            initial[1][i] = (size - 1 - r) * size + c;
        }
        Ok(Amazons { w: size, n: size as u32 * size as u32, strategy, initial, count: placements.len() as u8 })
    }

    pub fn size(&self) -> u8 {
        self.w
    }

    fn ray_dests(&self, board: &[u8], from: u8, d: usize, out: &mut Vec<u8>) {
        let (mut r, mut c) = ((from / self.w) as i16, (from % self.w) as i16);
        loop {
            r += DIRS[d].0;
            c += DIRS[d].1;
            if r < 0 || r >= self.w as i16 || c < 0 || c >= self.w as i16 {
                return;
            }
            let sq = (r as u8) * self.w + c as u8;
            if board[sq as usize] != EMPTY {
                return;
            }
            out.push(sq);
        }
    }

    fn first_step_empty(&self, board: &[u8], from: u8, d: usize) -> bool {
        let r = (from / self.w) as i16 + DIRS[d].0;
        let c = (from % self.w) as i16 + DIRS[d].1;
        r >= 0
            && r < self.w as i16
            && c >= 0
            && c < self.w as i16
            && board[(r as u8 * self.w + c as u8) as usize] == EMPTY
    }

    fn side_can_move(&self, s: &AmazonsState, player: u8) -> bool {
        // An adjacent empty square suffices: slide one step, arrow back.
        s.amazons[player as usize][..s.count as usize]
            .iter()
            .any(|&a| (0..8).any(|d| self.first_step_empty(&s.board, a, d)))
    }

    fn decode(&self, m: &[Semimove]) -> (u8, u8, u8) {
        if self.strategy == SplitStrategy::Orthodox {
            let t = m[0].0;
            return ((t / (self.n * self.n)) as u8, (t / self.n % self.n) as u8, (t % self.n) as u8);
        }
        let (mut src, mut dst, mut arrow) = (0, 0, 0);
        for &Semimove(t) in m {
            if t < self.n {
                src = t as u8;
            } else if t < 2 * self.n {
                dst = (t - self.n) as u8;
            } else if t < 3 * self.n {
                arrow = (t - 2 * self.n) as u8;
            }
        }
        (src, dst, arrow)
    }

    fn coord(&self, sq: u8) -> String {
        format!("{}{}", (b'a' + sq % self.w) as char, sq / self.w + 1)
    }
}

impl Game for Amazons {
    type State = AmazonsState;

    fn orthodox(&self) -> bool {
        self.strategy == SplitStrategy::Orthodox
    }

    fn initial_state(&self) -> AmazonsState {
        let mut board = [EMPTY; MAX_CELLS];
        for p in 0..2 {
            for i in 0..self.count as usize {
                board[self.initial[p][i] as usize] = p as u8 + 1;
            }
        }
        AmazonsState {
            board,
            amazons: self.initial,
            count: self.count,
            to_move: 0,
            phase: PHASE_NODAL,
            sel: 0,
            dir: 0,
            winner: NO_WINNER,
        }
    }

    fn is_nodal(&self, s: &AmazonsState) -> bool {
        s.phase == PHASE_NODAL
    }

    fn is_terminal(&self, s: &AmazonsState) -> bool {
        s.winner != NO_WINNER
    }

    fn player(&self, s: &AmazonsState) -> Player {
        debug_assert!(s.winner == NO_WINNER);
        Player(s.to_move)
    }

    fn scores(&self, s: &AmazonsState) -> Scores {
        debug_assert!(s.winner != NO_WINNER);
        Scores::two_player_win(Player(s.winner))
    }

    fn semimoves(&self, s: &AmazonsState, out: &mut Vec<Semimove>) {
        debug_assert!(s.winner == NO_WINNER);
        let p = s.to_move as usize;
        let plus = matches!(self.strategy, SplitStrategy::ModPlus | SplitStrategy::ModPlusShift);
        let shift = matches!(self.strategy, SplitStrategy::ModShift | SplitStrategy::ModPlusShift);
        let mut buf = Vec::new();
        match s.phase {
            _ if self.strategy == SplitStrategy::Orthodox => {
                let mut dsts = Vec::new();
                let mut arrows = Vec::new();
                for i in 0..s.count as usize {
                    let src = s.amazons[p][i];
                    let mut board = s.board;
                    board[src as usize] = EMPTY;
                    dsts.clear();
                    for d in 0..8 {
                        self.ray_dests(&board, src, d, &mut dsts);
                    }
                    for &dst in &dsts {
                        arrows.clear();
                        for d in 0..8 {
                            self.ray_dests(&board, dst, d, &mut arrows);
                        }
                        for &t in &arrows {
                            if t != dst {
                                out.push(Semimove(
                                    (src as u32 * self.n + dst as u32) * self.n + t as u32,
                                ));
                            }
                        }
                    }
                }
            }
            PHASE_NODAL if shift => {
                let mut cols = [false; 16];
                for i in 0..s.count as usize {
                    cols[(s.amazons[p][i] % self.w) as usize] = true;
                }
                for c in 0..self.w {
                    if cols[c as usize] {
                        out.push(Semimove(3 * self.n + 16 + c as u32));
                    }
                }
            }
            PHASE_NODAL => {
                buf.extend(s.amazons[p][..s.count as usize].iter().copied());
                buf.sort_unstable();
                out.extend(buf.iter().map(|&a| Semimove(a as u32)));
            }
            PHASE_COL => {
                buf.extend(
                    s.amazons[p][..s.count as usize].iter().copied().filter(|a| a % self.w == s.sel),
                );
                buf.sort_unstable();
                out.extend(buf.iter().map(|&a| Semimove(a as u32)));
            }
            PHASE_GRABBED if plus => {
                out.extend((0..8).map(|d| Semimove(3 * self.n + d)));
            }
            PHASE_GRABBED => {
                for d in 0..8 {
                    self.ray_dests(&s.board, s.sel, d, &mut buf);
                }
                out.extend(buf.iter().map(|&d| Semimove(self.n + d as u32)));
            }
            PHASE_SLIDE_DIR => {
                self.ray_dests(&s.board, s.sel, s.dir as usize, &mut buf);
                out.extend(buf.iter().map(|&d| Semimove(self.n + d as u32)));
            }
            PHASE_PLACED if plus => {
                out.extend((0..8).map(|d| Semimove(3 * self.n + 8 + d)));
            }
            PHASE_PLACED => {
                for d in 0..8 {
                    self.ray_dests(&s.board, s.sel, d, &mut buf);
                }
                out.extend(buf.iter().map(|&t| Semimove(2 * self.n + t as u32)));
            }
            PHASE_ARROW_DIR => {
                self.ray_dests(&s.board, s.sel, s.dir as usize, &mut buf);
                out.extend(buf.iter().map(|&t| Semimove(2 * self.n + t as u32)));
            }
            other => unreachable!("bad phase {other}"),
        }
    }

    fn apply(&self, s: &mut AmazonsState, Semimove(t): Semimove) {
        if self.strategy == SplitStrategy::Orthodox {
            let src = (t / (self.n * self.n)) as u8;
            let dst = (t / self.n % self.n) as u8;
            let arrow = (t % self.n) as u8;
            let p = s.to_move;
            s.board[src as usize] = EMPTY;
            s.board[dst as usize] = p + 1;
            let slot = s.amazons[p as usize][..s.count as usize]
                .iter()
                .position(|&a| a == src)
                .expect("amazon at source");
            s.amazons[p as usize][slot] = dst;
            s.board[arrow as usize] = ARROW;
            self.finish_move(s);
            return;
        }
        if t < self.n {
            s.board[t as usize] = EMPTY;
            s.sel = t as u8;
            s.phase = PHASE_GRABBED;
        } else if t < 2 * self.n {
            let dst = (t - self.n) as u8;
            let p = s.to_move as usize;
            s.board[dst as usize] = s.to_move + 1;
            let src = s.sel;
            let slot = s.amazons[p][..s.count as usize]
                .iter()
                .position(|&a| a == src)
                .expect("amazon at source");
            s.amazons[p][slot] = dst;
            s.sel = dst;
            s.phase = PHASE_PLACED;
        } else if t < 3 * self.n {
            s.board[(t - 2 * self.n) as usize] = ARROW;
            self.finish_move(s);
        } else if t < 3 * self.n + 8 {
            s.dir = (t - 3 * self.n) as u8;
            s.phase = PHASE_SLIDE_DIR;
        } else if t < 3 * self.n + 16 {
            s.dir = (t - 3 * self.n - 8) as u8;
            s.phase = PHASE_ARROW_DIR;
        } else {
            s.sel = (t - 3 * self.n - 16) as u8;
            s.phase = PHASE_COL;
        }
    }

    fn move_code(&self, _s: &AmazonsState, m: &[Semimove]) -> u64 {
        let (src, dst, arrow) = self.decode(m);
        (src as u64 * self.n as u64 + dst as u64) * self.n as u64 + arrow as u64
    }

    fn move_text(&self, _s: &AmazonsState, m: &[Semimove]) -> String {
        let (src, dst, arrow) = self.decode(m);
        format!("{}-{}/{}", self.coord(src), self.coord(dst), self.coord(arrow))
    }

    fn dump_state(&self, s: &AmazonsState) -> String {
        let mut out = String::new();
        for r in (0..self.w).rev() {
            for c in 0..self.w {
                out.push(match s.board[(r * self.w + c) as usize] {
                    EMPTY => '.',
                    1 => 'w',
                    2 => 'b',
                    _ => 'x',
                });
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "to_move={} phase={} sel={} dir={} winner={}\n",
            s.to_move, s.phase, s.sel, s.dir,
            if s.winner == NO_WINNER { "-".to_string() } else { s.winner.to_string() }
        ));
        out
    }
}

impl Amazons {
    fn finish_move(&self, s: &mut AmazonsState) {
        let mover = s.to_move;
        s.phase = PHASE_NODAL;
        s.sel = 0;
        s.dir = 0;
        s.to_move = 1 - mover;
        if !self.side_can_move(s, s.to_move) {
            s.winner = mover;
        }
    }

    /// Test fixture: replaces the square contents, keeping the amazon lists
    /// in sync. Panics if the position has the wrong number of amazons.
    pub fn position_from_rows(&self, rows: &[&str], to_move: u8) -> AmazonsState {
        assert_eq!(rows.len(), self.w as usize);
        let mut s = self.initial_state();
        s.board = [EMPTY; MAX_CELLS];
        s.amazons = [[0; MAX_AMAZONS]; 2];
        let mut idx = [0usize; 2];
        for (i, row) in rows.iter().enumerate() {
            let r = self.w as usize - 1 - i;
            assert_eq!(row.len(), self.w as usize);
            for (c, ch) in row.chars().enumerate() {
                let sq = (r * self.w as usize + c) as u8;
                match ch {
                    '.' => {}
                    'w' | 'b' => {
                        let p = if ch == 'w' { 0 } else { 1 };
                        s.board[sq as usize] = p as u8 + 1;
                        s.amazons[p][idx[p]] = sq;
                        idx[p] += 1;
                    }
                    'x' => s.board[sq as usize] = ARROW,
                    _ => panic!("bad cell {ch}"),
                }
            }
        }
        assert_eq!(idx[0], self.count as usize);
        assert_eq!(idx[1], self.count as usize);
        s.to_move = to_move;
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{applied, enumerate_moves, move_code_set, SimControl};

    #[test]
    fn mod_moves_have_three_semimoves() {
        let g = Amazons::new(5, SplitStrategy::Mod).unwrap();
        let s = g.initial_state();
        let mut ctl = SimControl::unlimited();
        let moves = enumerate_moves(&g, &s, &mut ctl).unwrap();
        assert!(!moves.is_empty());
        assert!(moves.iter().all(|m| m.len() == 3));
    }

    #[test]
    fn modplus_moves_have_five_semimoves() {
        let g = Amazons::new(5, SplitStrategy::ModPlus).unwrap();
        let s = g.initial_state();
        let mut ctl = SimControl::unlimited();
        let moves = enumerate_moves(&g, &s, &mut ctl).unwrap();
        assert!(moves.iter().all(|m| m.len() == 5));
    }

    #[test]
    fn split_encodings_match_orthodox() {
        let go = Amazons::new(5, SplitStrategy::Orthodox).unwrap();
        let s = go.initial_state();
        let want = move_code_set(&go, &s);
        assert!(!want.is_empty());
        for strat in [SplitStrategy::Mod, SplitStrategy::ModPlus, SplitStrategy::ModPlusShift] {
            let g = Amazons::new(5, strat).unwrap();
            assert_eq!(move_code_set(&g, &s), want, "{strat:?}");
        }
    }

    #[test]
    fn grabbing_a_blocked_amazon_is_dead() {
        let g = Amazons::new(5, SplitStrategy::Mod).unwrap();
        let s = g.position_from_rows(
            &[
                "b...b", //
                ".....",
                ".....",
                "xx...",
                "wxw..",
            ],
            0,
        );
        assert!(!g.is_terminal(&s)); // the amazon at c1 still moves
        let grabbed = applied(&g, &s, Semimove(0)); // grab a1, fully walled in
        assert!(!g.is_nodal(&grabbed));
        let mut out = Vec::new();
        g.semimoves(&grabbed, &mut out);
        assert!(out.is_empty());
    }

    #[test]
    fn intermediate_state_has_amazon_in_hand() {
        let g = Amazons::new(5, SplitStrategy::Mod).unwrap();
        let s = g.initial_state();
        let src = s.amazons[0][0];
        let grabbed = applied(&g, &s, Semimove(src as u32));
        assert_eq!(grabbed.board[src as usize], EMPTY);
        assert!(!g.is_nodal(&grabbed));
    }

    #[test]
    fn blocked_player_loses_when_move_completes() {
        let g = Amazons::new(5, SplitStrategy::Orthodox).unwrap();
        let s = g.position_from_rows(
            &[
                "b.x.b", //
                "xxx..",
                ".....",
                ".....",
                "w...w",
            ],
            0,
        );
        // White traps b5 completely by shooting c4; the other black amazon
        // at e5 keeps black alive, so first check a non-terminal move.
        let codes = move_code_set(&g, &s);
        assert!(!codes.is_empty());
        let trap = g.position_from_rows(
            &[
                "bxx.b", //
                "xx.x.",
                "..w.x",
                ".....",
                "w....",
            ],
            1,
        );
        // Black to move: e5 can still slide, position not terminal.
        assert!(!g.is_terminal(&trap));
    }
}
