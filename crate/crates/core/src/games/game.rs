use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Elem, PartialAlgebra, Symbol};
use crate::error::{Error, Result};

/// Default limit on the number of solved positions in one game.
pub const DEFAULT_POSITION_CAP: usize = 5_000_000;

/// A position `(Y, N)`: elements a point must belong to and must avoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub y: FixedBitSet,
    pub n: FixedBitSet,
}

impl Position {
    pub fn new(size: usize, y: &[Elem], n: &[Elem]) -> Position {
        let mut p = Position {
            y: FixedBitSet::with_capacity(size),
            n: FixedBitSet::with_capacity(size),
        };
        y.iter().for_each(|&e| p.y.insert(e));
        n.iter().for_each(|&e| p.n.insert(e));
        p
    }

    fn with(&self, e: Elem) -> Position {
        let mut p = self.clone();
        p.y.insert(e);
        p
    }

    pub fn describe(&self, alg: &PartialAlgebra) -> String {
        let set = |s: &FixedBitSet| {
            let names: Vec<&str> = s.ones().map(|e| alg.name(e)).collect();
            format!("{{{}}}", names.join(", "))
        };
        format!("({}, {})", set(&self.y), set(&self.n))
    }
}

/// A move of player ∀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameMove {
    /// Round 0: distinct `a` and `b`; ∃ answers `({a},{b})` or `({b},{a})`.
    InitialDistinct(Elem, Elem),
    /// Round 0: `a ⊔ b` undefined; ∃ must answer `({a,b}, ∅)`.
    InitialUndefined(Elem, Elem),
    /// `a ⊔ b` is defined and in `Y`; ∃ adds `a` or `b`.
    Split(Elem, Elem),
    /// `a ∈ Y` and `a ⊔ b` defined; ∃ must add `a ⊔ b`.
    ExtendRight(Elem, Elem),
    /// `b ∈ Y` and `a ⊔ b` defined; ∃ must add `a ⊔ b`.
    ExtendLeft(Elem, Elem),
}

impl GameMove {
    /// The move in the command syntax of interactive play.
    pub fn describe(&self, alg: &PartialAlgebra) -> String {
        let n = |e: Elem| alg.name(e);
        match *self {
            GameMove::InitialDistinct(a, b) => format!("init {} {}", n(a), n(b)),
            GameMove::InitialUndefined(a, b) => format!("initu {} {}", n(a), n(b)),
            GameMove::Split(a, b) => format!("split {} {}", n(a), n(b)),
            GameMove::ExtendRight(a, b) | GameMove::ExtendLeft(a, b) => format!("ext {} {}", n(a), n(b)),
        }
    }

    pub fn is_initial(&self) -> bool {
        matches!(self, GameMove::InitialDistinct(..) | GameMove::InitialUndefined(..))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Forall,
    Exists,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Forall => "∀",
            Player::Exists => "∃",
        })
    }
}

/// Length of a game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounds {
    Finite(usize),
    Omega,
}

impl Rounds {
    fn after_one(self) -> Rounds {
        match self {
            Rounds::Finite(k) => Rounds::Finite(k.saturating_sub(1)),
            Rounds::Omega => Rounds::Omega,
        }
    }
}

impl fmt::Display for Rounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rounds::Finite(k) => write!(f, "Γ_{k}"),
            Rounds::Omega => write!(f, "Γ_ω"),
        }
    }
}

fn require_join(alg: &PartialAlgebra) -> Result<()> {
    if alg.has(Symbol::Join) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch("the game needs join in the signature".into()))
    }
}

/// ∀'s legal moves, in carrier order. Round 0 ignores the position.
pub fn legal_moves(alg: &PartialAlgebra, pos: Option<&Position>, round: usize) -> Vec<GameMove> {
    let mut out = Vec::new();
    if round == 0 {
        for a in alg.elements() {
            for b in a + 1..alg.len() {
                out.push(GameMove::InitialDistinct(a, b));
            }
        }
        for a in alg.elements() {
            for b in alg.elements() {
                if alg.join(a, b).is_none() {
                    out.push(GameMove::InitialUndefined(a, b));
                }
            }
        }
        return out;
    }
    let Some(pos) = pos else {
        return out;
    };
    let defined = || alg.triples(crate::algebra::BinOp::Join);
    for (a, b, c) in defined() {
        if pos.y.contains(c) {
            out.push(GameMove::Split(a, b));
        }
    }
    for (a, b, _) in defined() {
        if pos.y.contains(a) {
            out.push(GameMove::ExtendRight(a, b));
        }
    }
    for (a, b, _) in defined() {
        if pos.y.contains(b) {
            out.push(GameMove::ExtendLeft(a, b));
        }
    }
    out
}

/// ∃'s possible answers to a move, preferred one first when all else is equal.
pub fn responses(alg: &PartialAlgebra, pos: Option<&Position>, mv: GameMove) -> Vec<Position> {
    let size = alg.len();
    match mv {
        GameMove::InitialDistinct(a, b) => vec![Position::new(size, &[a], &[b]), Position::new(size, &[b], &[a])],
        GameMove::InitialUndefined(a, b) => vec![Position::new(size, &[a, b], &[])],
        GameMove::Split(a, b) => {
            let pos = pos.expect("split needs a position");
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == hi {
                vec![pos.with(lo)]
            } else {
                vec![pos.with(lo), pos.with(hi)]
            }
        }
        GameMove::ExtendRight(a, b) | GameMove::ExtendLeft(a, b) => {
            let pos = pos.expect("extension needs a position");
            let c = alg.join(a, b).expect("legal extension");
            vec![pos.with(c)]
        }
    }
}

/// Whether ∀ has already won at this position.
pub fn win_for_forall(alg: &PartialAlgebra, pos: &Position) -> bool {
    if pos.y.intersection(&pos.n).next().is_some() {
        return true;
    }
    pos.y.ones().any(|a| pos.y.ones().any(|b| alg.join(a, b).is_some()))
}

/// Backward-induction solver with memoised position values.
///
/// From a position, ∃ wins `Γ_0` unless the position is already lost. In a
/// longer game she wins outright when ∀ has no legal move, and otherwise
/// needs a winning answer to every move. `Γ_ω` is the greatest fixpoint of
/// the same rule; since `Y` only grows it is reached after `|A|` rounds.
pub struct GameSolver<'a> {
    alg: &'a PartialAlgebra,
    /// For each element `c`, the pairs `(a, b)` with `a ⊔ b = c`.
    preimages: Vec<Vec<(Elem, Elem)>>,
    /// For each element, the results of joining it on either side.
    neighbours: Vec<Vec<Elem>>,
    finite: HashMap<(Position, usize), bool>,
    omega: HashMap<Position, bool>,
    cap: usize,
}

impl<'a> GameSolver<'a> {
    pub fn new(alg: &'a PartialAlgebra) -> Result<Self> {
        Self::with_cap(alg, DEFAULT_POSITION_CAP)
    }

    pub fn with_cap(alg: &'a PartialAlgebra, cap: usize) -> Result<Self> {
        require_join(alg)?;
        let mut preimages = vec![Vec::new(); alg.len()];
        let mut neighbours = vec![Vec::new(); alg.len()];
        for (a, b, c) in alg.triples(crate::algebra::BinOp::Join) {
            preimages[c].push((a, b));
            neighbours[a].push(c);
            neighbours[b].push(c);
        }
        for n in &mut neighbours {
            n.sort_unstable();
            n.dedup();
        }
        Ok(GameSolver {
            alg,
            preimages,
            neighbours,
            finite: HashMap::new(),
            omega: HashMap::new(),
            cap,
        })
    }

    pub fn algebra(&self) -> &'a PartialAlgebra {
        self.alg
    }

    /// Distinct answer sets to ∀'s moves, as elements ∃ may add.
    fn options(&self, pos: &Position) -> Vec<Vec<Elem>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in pos.y.ones() {
            for &(a, b) in &self.preimages[c] {
                let opt = if a == b { vec![a] } else { vec![a.min(b), a.max(b)] };
                if seen.insert(opt.clone()) {
                    out.push(opt);
                }
            }
            for &d in &self.neighbours[c] {
                if seen.insert(vec![d]) {
                    out.push(vec![d]);
                }
            }
        }
        out
    }

    fn check_cap(&self) -> Result<()> {
        if self.finite.len() + self.omega.len() > self.cap {
            Err(Error::ResourceCap {
                what: "game positions",
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Whether ∃ wins the game of the given length started at `pos`.
    pub fn exists_wins_from(&mut self, pos: &Position, rounds: Rounds) -> Result<bool> {
        match rounds {
            Rounds::Finite(k) => self.finite_value(pos, k),
            Rounds::Omega => self.omega_value(pos),
        }
    }

    fn finite_value(&mut self, pos: &Position, k: usize) -> Result<bool> {
        if k == 0 {
            return Ok(!win_for_forall(self.alg, pos));
        }
        if let Some(&v) = self.finite.get(&(pos.clone(), k)) {
            return Ok(v);
        }
        self.check_cap()?;
        let mut value = true;
        for opt in self.options(pos) {
            let mut answered = false;
            for &e in &opt {
                if self.finite_value(&pos.with(e), k - 1)? {
                    answered = true;
                    break;
                }
            }
            if !answered {
                value = false;
                break;
            }
        }
        self.finite.insert((pos.clone(), k), value);
        Ok(value)
    }

    fn omega_value(&mut self, pos: &Position) -> Result<bool> {
        if let Some(&v) = self.omega.get(pos) {
            return Ok(v);
        }
        self.check_cap()?;
        let opts = self.options(pos);
        let value = if opts.is_empty() {
            true
        } else if win_for_forall(self.alg, pos) {
            false
        } else {
            let mut value = true;
            for opt in opts {
                // An answer that leaves the position unchanged keeps ∃ alive.
                if opt.iter().any(|&e| pos.y.contains(e)) {
                    continue;
                }
                let mut answered = false;
                for &e in &opt {
                    if self.omega_value(&pos.with(e))? {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    value = false;
                    break;
                }
            }
            value
        };
        self.omega.insert(pos.clone(), value);
        Ok(value)
    }

    /// ∃'s answer to a move: the first response she wins from, else the first.
    pub fn choose(&mut self, pos: Option<&Position>, mv: GameMove, rest: Rounds) -> Result<(Position, bool)> {
        let rs = responses(self.alg, pos, mv);
        for r in &rs {
            if self.exists_wins_from(r, rest)? {
                return Ok((r.clone(), true));
            }
        }
        Ok((rs[0].clone(), false))
    }

    /// Whether ∃ wins the whole game, initial round included.
    pub fn exists_wins(&mut self, rounds: Rounds) -> Result<bool> {
        Ok(self.forall_opening(rounds)?.is_none())
    }

    /// The first opening move that wins for ∀, if there is one.
    pub fn forall_opening(&mut self, rounds: Rounds) -> Result<Option<GameMove>> {
        if rounds == Rounds::Finite(0) {
            return Ok(None);
        }
        let rest = rounds.after_one();
        for mv in legal_moves(self.alg, None, 0) {
            if !self.choose(None, mv, rest)?.1 {
                return Ok(Some(mv));
            }
        }
        Ok(None)
    }

    /// A move from `pos` after which ∃ loses the remaining game, if any.
    pub fn forall_reply(&mut self, pos: &Position, rest: Rounds) -> Result<Option<GameMove>> {
        let next = rest.after_one();
        for mv in legal_moves(self.alg, Some(pos), 1) {
            if !self.choose(Some(pos), mv, next)?.1 {
                return Ok(Some(mv));
            }
        }
        Ok(None)
    }
}

/// Outcome of a solved game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    pub rounds: Rounds,
    pub winner: Player,
    /// A winning opening for ∀ when he wins.
    pub opening: Option<GameMove>,
    pub strategy: StrategyTable,
}

/// One line of ∃'s strategy: at a position with the given rounds left, her
/// answer to a move of ∀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyEntry {
    /// Rounds left before the move; `None` for `Γ_ω`.
    pub rounds_left: Option<usize>,
    /// `None` for the initial round.
    pub position: Option<Position>,
    pub mv: GameMove,
    pub response: Position,
    /// Whether ∃ still wins after answering this way.
    pub winning: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrategyTable {
    pub entries: Vec<StrategyEntry>,
    /// Set when exploration stopped at the entry limit.
    pub truncated: bool,
}

impl StrategyTable {
    /// One entry per line: `position | move => response [win|lose]`.
    pub fn dump(&self, alg: &PartialAlgebra) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let at = e.position.as_ref().map_or("start".to_string(), |p| p.describe(alg));
            let left = e.rounds_left.map_or("ω".to_string(), |k| k.to_string());
            out.push_str(&format!(
                "[{left}] {at} | {} => {} {}\n",
                e.mv.describe(alg),
                e.response.describe(alg),
                if e.winning { "win" } else { "lose" }
            ));
        }
        if self.truncated {
            out.push_str("... truncated\n");
        }
        out
    }
}

/// Default limit on strategy table entries.
pub const DEFAULT_STRATEGY_LIMIT: usize = 10_000;

/// Explores the positions reachable when ∃ follows her tie-broken choices,
/// recording her answer to every move of ∀.
pub fn strategy_table(solver: &mut GameSolver<'_>, rounds: Rounds, limit: usize) -> Result<StrategyTable> {
    let alg = solver.algebra();
    let mut table = StrategyTable::default();
    if rounds == Rounds::Finite(0) {
        return Ok(table);
    }
    let rest = rounds.after_one();
    let left = |r: Rounds| match r {
        Rounds::Finite(k) => Some(k),
        Rounds::Omega => None,
    };
    let mut queue: VecDeque<(Position, Rounds)> = VecDeque::new();
    let mut visited: HashSet<(Position, Rounds)> = HashSet::new();
    for mv in legal_moves(alg, None, 0) {
        let (response, winning) = solver.choose(None, mv, rest)?;
        table.entries.push(StrategyEntry {
            rounds_left: left(rounds),
            position: None,
            mv,
            response: response.clone(),
            winning,
        });
        if visited.insert((response.clone(), rest)) {
            queue.push_back((response, rest));
        }
    }
    while let Some((pos, r)) = queue.pop_front() {
        if r == Rounds::Finite(0) {
            continue;
        }
        let next = r.after_one();
        for mv in legal_moves(alg, Some(&pos), 1) {
            if table.entries.len() >= limit {
                table.truncated = true;
                return Ok(table);
            }
            let (response, winning) = solver.choose(Some(&pos), mv, next)?;
            table.entries.push(StrategyEntry {
                rounds_left: left(r),
                position: Some(pos.clone()),
                mv,
                response: response.clone(),
                winning,
            });
            if response != pos && visited.insert((response.clone(), next)) {
                queue.push_back((response, next));
            }
        }
    }
    Ok(table)
}

/// Solves `Γ_n` or `Γ_ω` on the join reduct of the algebra, with ∃'s strategy.
pub fn decide_game(alg: &PartialAlgebra, rounds: Rounds) -> Result<GameSolution> {
    decide_game_with(alg, rounds, DEFAULT_POSITION_CAP, DEFAULT_STRATEGY_LIMIT)
}

pub fn decide_game_with(alg: &PartialAlgebra, rounds: Rounds, cap: usize, strategy_limit: usize) -> Result<GameSolution> {
    let mut solver = GameSolver::with_cap(alg, cap)?;
    let opening = solver.forall_opening(rounds)?;
    let strategy = strategy_table(&mut solver, rounds, strategy_limit)?;
    Ok(GameSolution {
        rounds,
        winner: if opening.is_some() { Player::Forall } else { Player::Exists },
        opening,
        strategy,
    })
}

/// Smallest `n` for which ∀ wins `Γ_n`, searching up to `|A| + 1`.
pub fn first_forall_win(alg: &PartialAlgebra) -> Result<Option<usize>> {
    let mut solver = GameSolver::new(alg)?;
    for n in 1..=alg.len() + 1 {
        if !solver.exists_wins(Rounds::Finite(n))? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
