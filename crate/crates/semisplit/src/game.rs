//! Core abstractions for split-move games.
//!
//! A game tree here may contain *intermediate* states introduced by splitting
//! a move into a sequence of semimoves. States of the original game (decision
//! points and terminals) are *nodal*. An intermediate state with no nodal
//! state anywhere below it is *dead*; no legal move passes through it.
//!
//! The module provides the [`Game`] trait implemented by every shipped game,
//! plus the generic procedures built on top of it: backtracking random move
//! drawing, random playouts, and exhaustive move enumeration with dead-branch
//! pruning.

use std::fmt;
use std::time::Instant;

use rand::Rng;

/// Index of a player role. All shipped games are two-player (0 and 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Player(pub u8);

impl Player {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// One edge of the split game tree: a compact token whose meaning is fixed by
/// the game encoding. Equal tokens emitted from equal states denote the same
/// edge, and identical actions reachable from different states share a token
/// so that global statistics (MAST) can be keyed by it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semimove(pub u32);

impl fmt::Debug for Semimove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sm{}", self.0)
    }
}

/// A path of semimoves with nodal states only at its endpoints. A submove
/// that ends at a nodal state is a full move.
pub type Submove = Vec<Semimove>;

/// Final score per player, in `[0, max_score]` (100 for all shipped games).
#[derive(Clone, PartialEq, Debug)]
pub struct Scores(pub Vec<f64>);

impl Scores {
    pub fn get(&self, p: Player) -> f64 {
        self.0[p.index()]
    }

    /// Two-player convenience: 100/0 for a win, 50/50 for a draw.
    pub fn two_player_win(winner: Player) -> Scores {
        let mut v = vec![0.0; 2];
        v[winner.index()] = 100.0;
        Scores(v)
    }

    pub fn two_player_draw() -> Scores {
        Scores(vec![50.0, 50.0])
    }
}

/// Counts of work performed by move drawing, playouts and enumeration.
///
/// `all_states` counts every state materialized by an apply (dead branches
/// included), `nodal_states` the subset that was nodal, and `semimoves` the
/// total length of all generated semimove lists (each visited state's list is
/// computed exactly once).
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct Counters {
    pub all_states: u64,
    pub nodal_states: u64,
    pub semimoves: u64,
}

/// Raised when a turn budget runs out in the middle of an operation. The
/// caller discards whatever the interrupted iteration had produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExhausted;

/// Work accounting plus an optional in-flight budget cut-off.
///
/// The nodal cap is checked before charging, so the number of charged nodal
/// states never exceeds it. The hard deadline is only consulted on nodal
/// transitions; it exists as a backstop for wall-clock budgets.
pub struct SimControl {
    pub counters: Counters,
    pub nodal_cap: u64,
    pub hard_deadline: Option<Instant>,
}

impl SimControl {
    pub fn unlimited() -> Self {
        SimControl { counters: Counters::default(), nodal_cap: u64::MAX, hard_deadline: None }
    }

    pub fn with_nodal_cap(cap: u64) -> Self {
        SimControl { counters: Counters::default(), nodal_cap: cap, hard_deadline: None }
    }

    #[inline]
    pub fn charge_apply(&mut self, nodal: bool) -> Result<(), BudgetExhausted> {
        self.counters.all_states += 1;
        if nodal {
            if self.counters.nodal_states >= self.nodal_cap {
                return Err(BudgetExhausted);
            }
            if let Some(t) = self.hard_deadline {
                if Instant::now() >= t {
                    return Err(BudgetExhausted);
                }
            }
            self.counters.nodal_states += 1;
        }
        Ok(())
    }

    #[inline]
    pub fn note_semimoves(&mut self, n: usize) {
        self.counters.semimoves += n as u64;
    }
}

/// A game exposed through its (possibly split) semimove interface.
///
/// Implementations are immutable rule tables; all mutation happens on state
/// values. `apply` mutates in place and callers clone first when they need to
/// keep the predecessor, which is how the restoration invariant (discarding
/// the copy leaves the original untouched) is met.
pub trait Game: Sync {
    type State: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn player_count(&self) -> usize {
        2
    }

    /// Maximum achievable score; the value returned for untried entries by
    /// action statistics.
    fn max_score(&self) -> f64 {
        100.0
    }

    /// True when every semimove of this encoding is a full move.
    fn orthodox(&self) -> bool;

    fn initial_state(&self) -> Self::State;

    fn is_nodal(&self, s: &Self::State) -> bool;

    /// Terminal states are always nodal in the shipped games.
    fn is_terminal(&self, s: &Self::State) -> bool;

    /// Player to act. Must not be called on terminal states.
    fn player(&self, s: &Self::State) -> Player;

    /// Final scores. Must only be called on terminal states.
    fn scores(&self, s: &Self::State) -> Scores;

    /// Appends all outgoing semimoves of `s` in a canonical order that is
    /// stable across calls on equal states. Empty output means `s` is either
    /// a dead intermediate state or a nodal state with no legal move. Must
    /// not be called on terminal states.
    fn semimoves(&self, s: &Self::State, out: &mut Vec<Semimove>);

    /// Applies a semimove previously returned by [`Game::semimoves`] for `s`.
    fn apply(&self, s: &mut Self::State, a: Semimove);

    /// Canonical numeric descriptor of a full move, identical across every
    /// encoding of the same rules. Used for cross-encoding move translation
    /// and equivalence checking. `m` must start at the nodal state `s`.
    fn move_code(&self, s: &Self::State, m: &[Semimove]) -> u64;

    /// Human-readable form of a full move.
    fn move_text(&self, s: &Self::State, m: &[Semimove]) -> String;

    /// Debug serialization: board dump (row-major, one character per square)
    /// plus a variable list. Stable, documented, not load-bearing.
    fn dump_state(&self, s: &Self::State) -> String;
}

/// Convenience for tests and oracles: apply on a clone.
pub fn applied<G: Game>(g: &G, s: &G::State, a: Semimove) -> G::State {
    let mut t = s.clone();
    g.apply(&mut t, a);
    t
}

fn collect_semimoves<G: Game>(g: &G, s: &G::State, ctl: &mut SimControl) -> Vec<Semimove> {
    let mut v = Vec::new();
    g.semimoves(s, &mut v);
    ctl.note_semimoves(v.len());
    v
}

/// Draws a move uniformly-at-random level by level, backtracking out of dead
/// branches. Returns the move together with the nodal state it ends at, or
/// `None` exactly when no legal move exists from `s` (a dead intermediate
/// state, or a nodal state with no moves).
///
/// Every legal move has positive probability; the distribution over moves is
/// generally not uniform.
pub fn semisplit_random_move<G: Game, R: Rng>(
    g: &G,
    s: &G::State,
    rng: &mut R,
    ctl: &mut SimControl,
) -> Result<Option<(Submove, G::State)>, BudgetExhausted> {
    debug_assert!(!g.is_terminal(s));
    let mut path = Vec::new();
    let end = descend_random(g, s, rng, ctl, &mut path)?;
    Ok(end.map(|e| (path, e)))
}

fn descend_random<G: Game, R: Rng>(
    g: &G,
    s: &G::State,
    rng: &mut R,
    ctl: &mut SimControl,
    path: &mut Submove,
) -> Result<Option<G::State>, BudgetExhausted> {
    let mut cands = collect_semimoves(g, s, ctl);
    while !cands.is_empty() {
        let a = cands.swap_remove(rng.random_range(0..cands.len()));
        let mut next = s.clone();
        g.apply(&mut next, a);
        let nodal = g.is_nodal(&next);
        ctl.charge_apply(nodal)?;
        path.push(a);
        if nodal {
            return Ok(Some(next));
        }
        if let Some(end) = descend_random(g, &next, rng, ctl, path)? {
            return Ok(Some(end));
        }
        path.pop();
    }
    Ok(None)
}

/// Runs a uniformly random playout from `start` and returns the terminal
/// scores. Returns `None` iff no terminal state is reachable from `start`
/// (for well-formed games that means `start` is a dead intermediate state).
pub fn semisplit_simulation<G: Game, R: Rng>(
    g: &G,
    start: &G::State,
    rng: &mut R,
    ctl: &mut SimControl,
) -> Result<Option<Scores>, BudgetExhausted> {
    if g.is_terminal(start) {
        return Ok(Some(g.scores(start)));
    }
    if g.orthodox() {
        // Every semimove is a full move: no backtracking, no state copies.
        let mut s = start.clone();
        loop {
            let cands = collect_semimoves(g, &s, ctl);
            if cands.is_empty() {
                return Ok(None);
            }
            let a = cands[rng.random_range(0..cands.len())];
            g.apply(&mut s, a);
            ctl.charge_apply(true)?;
            if g.is_terminal(&s) {
                return Ok(Some(g.scores(&s)));
            }
        }
    }
    let mut s = start.clone();
    loop {
        match semisplit_random_move(g, &s, rng, ctl)? {
            None => return Ok(None),
            Some((_, end)) => s = end,
        }
        if g.is_terminal(&s) {
            return Ok(Some(g.scores(&s)));
        }
    }
}

/// Exhaustive depth-first enumeration of the full moves leaving a nodal
/// state, pruning dead branches. This realizes the rolled-up edge set and is
/// both the oracle for the randomized procedures and the move source for
/// orthodox-design agents running on split encodings.
pub fn enumerate_moves<G: Game>(
    g: &G,
    s: &G::State,
    ctl: &mut SimControl,
) -> Result<Vec<Submove>, BudgetExhausted> {
    debug_assert!(g.is_nodal(s) && !g.is_terminal(s));
    if g.orthodox() {
        let cands = collect_semimoves(g, s, ctl);
        return Ok(cands.into_iter().map(|a| vec![a]).collect());
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    enumerate_dfs(g, s, ctl, &mut prefix, &mut out)?;
    Ok(out)
}

fn enumerate_dfs<G: Game>(
    g: &G,
    s: &G::State,
    ctl: &mut SimControl,
    prefix: &mut Submove,
    out: &mut Vec<Submove>,
) -> Result<(), BudgetExhausted> {
    let cands = collect_semimoves(g, s, ctl);
    for a in cands {
        let mut next = s.clone();
        g.apply(&mut next, a);
        let nodal = g.is_nodal(&next);
        ctl.charge_apply(nodal)?;
        prefix.push(a);
        if nodal {
            out.push(prefix.clone());
        } else {
            enumerate_dfs(g, &next, ctl, prefix, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Sorted canonical codes of all legal moves from a nodal state.
pub fn move_code_set<G: Game>(g: &G, s: &G::State) -> Vec<u64> {
    let mut ctl = SimControl::unlimited();
    let moves = enumerate_moves(g, s, &mut ctl).expect("unlimited");
    let mut codes: Vec<u64> = moves.iter().map(|m| g.move_code(s, m)).collect();
    codes.sort_unstable();
    codes.dedup();
    codes
}

/// Applies a whole submove in place, charging each transition.
pub fn apply_submove<G: Game>(
    g: &G,
    s: &mut G::State,
    m: &[Semimove],
    ctl: &mut SimControl,
) -> Result<(), BudgetExhausted> {
    for &a in m {
        g.apply(s, a);
        ctl.charge_apply(g.is_nodal(s))?;
    }
    Ok(())
}
