use std::io::{BufRead, Write};

use super::game::{legal_moves, responses, win_for_forall, GameMove, GameSolver, Player, Position, Rounds};
use crate::algebra::{Elem, PartialAlgebra};
use crate::error::{Error, Result};

/// How an interactive game ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayStatus {
    Won(Player),
    /// The human typed `quit`.
    Quit,
    /// The input ended before the game did.
    InputClosed,
}

/// Everything printed during a game, and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub lines: Vec<String>,
    pub status: PlayStatus,
}

struct Session<'a, R, W> {
    alg: &'a PartialAlgebra,
    input: R,
    output: W,
    lines: Vec<String>,
}

enum Input {
    Line(Vec<String>),
    Quit,
    Closed,
}

impl<'a, R: BufRead, W: Write> Session<'a, R, W> {
    fn say(&mut self, line: String) -> Result<()> {
        writeln!(self.output, "{line}").map_err(io_error)?;
        self.lines.push(line);
        Ok(())
    }

    fn ask(&mut self, prompt: &str) -> Result<Input> {
        write!(self.output, "{prompt}").map_err(io_error)?;
        self.output.flush().map_err(io_error)?;
        let mut buf = String::new();
        loop {
            buf.clear();
            if self.input.read_line(&mut buf).map_err(io_error)? == 0 {
                return Ok(Input::Closed);
            }
            let words: Vec<String> = buf.split_whitespace().map(str::to_string).collect();
            if words.is_empty() {
                continue;
            }
            self.lines.push(format!("{prompt}{}", words.join(" ")));
            if words[0] == "quit" {
                return Ok(Input::Quit);
            }
            return Ok(Input::Line(words));
        }
    }

    fn elem(&self, name: &str) -> Option<Elem> {
        self.alg.index_of(name)
    }

    /// Reads a move of ∀ until it is legal.
    fn human_move(&mut self, pos: Option<&Position>, round: usize) -> Result<Option<GameMove>> {
        let legal = legal_moves(self.alg, pos, round);
        loop {
            let words = match self.ask("∀> ")? {
                Input::Line(w) => w,
                Input::Quit | Input::Closed => return Ok(None),
            };
            let parsed = match (words[0].as_str(), words.get(1), words.get(2), words.len()) {
                (cmd, Some(a), Some(b), 3) => match (self.elem(a), self.elem(b)) {
                    (Some(a), Some(b)) => Some((cmd.to_string(), a, b)),
                    _ => None,
                },
                _ => None,
            };
            let Some((cmd, a, b)) = parsed else {
                self.say("expected `<command> <a> <b>` with elements of the algebra".into())?;
                continue;
            };
            let candidates: Vec<GameMove> = match cmd.as_str() {
                "init" => vec![GameMove::InitialDistinct(a.min(b), a.max(b))],
                "initu" => vec![GameMove::InitialUndefined(a, b)],
                "split" => vec![GameMove::Split(a, b)],
                "ext" => vec![GameMove::ExtendRight(a, b), GameMove::ExtendLeft(a, b)],
                _ => {
                    self.say(format!("unknown command `{cmd}`; use init, initu, split, ext or quit"))?;
                    continue;
                }
            };
            match candidates.into_iter().find(|m| legal.contains(m)) {
                Some(m) => return Ok(Some(m)),
                None => self.say("that move is not legal here".into())?,
            }
        }
    }

    /// Reads ∃'s choice among the responses until it names one of them.
    fn human_pick(&mut self, rs: &[Position], mv: GameMove) -> Result<Option<Position>> {
        let options: Vec<(Elem, &Position)> = match mv {
            GameMove::InitialDistinct(a, b) => vec![(a, &rs[0]), (b, &rs[1])],
            GameMove::Split(a, b) => {
                let (lo, hi) = (a.min(b), a.max(b));
                rs.iter().zip([lo, hi]).map(|(r, e)| (e, r)).collect()
            }
            _ => unreachable!("only choices reach here"),
        };
        loop {
            let words = match self.ask("∃> ")? {
                Input::Line(w) => w,
                Input::Quit | Input::Closed => return Ok(None),
            };
            if words[0] == "pick" && words.len() == 2 {
                if let Some(e) = self.elem(&words[1]) {
                    if let Some((_, r)) = options.iter().find(|(o, _)| *o == e) {
                        return Ok(Some((*r).clone()));
                    }
                }
            }
            let names: Vec<&str> = options.iter().map(|(e, _)| self.alg.name(*e)).collect();
            self.say(format!("answer with `pick <x>` for x in {}", names.join(", ")))?;
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::precondition(format!("i/o error during play: {e}"))
}

/// Plays `Γ_n` against the engine over the given streams, with `n`
/// defaulting to `|A| + 1`, which decides `Γ_ω`.
///
/// Commands: `init a b`, `initu a b`, `split a b`, `ext a b` for ∀, `pick x`
/// for ∃, and `quit`. The engine plays the other side from the minimax values.
pub fn play_interactive<R: BufRead, W: Write>(
    alg: &PartialAlgebra,
    human: Player,
    rounds: Option<usize>,
    input: R,
    output: W,
) -> Result<Transcript> {
    let mut solver = GameSolver::new(alg)?;
    let total = rounds.unwrap_or(alg.len() + 1);
    let mut s = Session {
        alg,
        input,
        output,
        lines: Vec::new(),
    };
    let finish = |s: Session<'_, R, W>, status| Transcript { lines: s.lines, status };
    s.say(format!("{} rounds; you play {human}", total))?;
    let mut pos: Option<Position> = None;
    for round in 0..total {
        let rest = Rounds::Finite(total - round - 1);
        let legal = legal_moves(alg, pos.as_ref(), round);
        if legal.is_empty() {
            s.say("∀ has no legal move; ∃ wins".into())?;
            return Ok(finish(s, PlayStatus::Won(Player::Exists)));
        }
        if let Some(p) = &pos {
            s.say(format!("round {round}: position {}", p.describe(alg)))?;
        }
        let mv = match human {
            Player::Forall => match s.human_move(pos.as_ref(), round)? {
                Some(m) => m,
                None => {
                    let status = closed_or_quit(&s.lines);
                    return Ok(finish(s, status));
                }
            },
            Player::Exists => {
                let chosen = match &pos {
                    None => solver.forall_opening(Rounds::Finite(total))?,
                    Some(p) => solver.forall_reply(p, Rounds::Finite(total - round))?,
                };
                // Without a forced win, prefer a move that changes the position.
                let m = chosen.unwrap_or_else(|| {
                    legal
                        .iter()
                        .copied()
                        .find(|m| responses(alg, pos.as_ref(), *m).iter().all(|r| Some(r) != pos.as_ref()))
                        .unwrap_or(legal[0])
                });
                s.say(format!("∀ plays {}", m.describe(alg)))?;
                m
            }
        };
        let rs = responses(alg, pos.as_ref(), mv);
        let next = if rs.len() > 1 && human == Player::Exists {
            match s.human_pick(&rs, mv)? {
                Some(r) => r,
                None => {
                    let status = closed_or_quit(&s.lines);
                    return Ok(finish(s, status));
                }
            }
        } else {
            let (r, _) = solver.choose(pos.as_ref(), mv, rest)?;
            s.say(format!("∃ answers {}", r.describe(alg)))?;
            r
        };
        if win_for_forall(alg, &next) {
            s.say(format!("position {} is lost for ∃; ∀ wins", next.describe(alg)))?;
            return Ok(finish(s, PlayStatus::Won(Player::Forall)));
        }
        pos = Some(next);
    }
    s.say(format!("∃ survived {total} rounds and wins"))?;
    Ok(finish(s, PlayStatus::Won(Player::Exists)))
}

fn closed_or_quit(lines: &[String]) -> PlayStatus {
    match lines.last() {
        Some(l) if l.ends_with("quit") => PlayStatus::Quit,
        _ => PlayStatus::InputClosed,
    }
}
