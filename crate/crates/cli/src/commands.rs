use std::fs::File;
use std::io::{BufReader, IsTerminal};

use partalg::algebra::{parse_algebra_doc, serialize_algebra, totalise, validate, PartialAlgebra, Signature, Symbol, ValidateOptions};
use partalg::counterexamples::{perm_representation_capped, GeneratorRegistry};
use partalg::decider::{DeciderRegistry, GameDecider, Verdict};
use partalg::equations::{decide_validity, find_countermodel, parse_equation, Equation};
use partalg::games::{
    decide_game_with, gen_mu, gen_rho, holds, holds_total, parse_formula, play_interactive, translate_to_relational,
    PlayStatus, Player, Rounds,
};
use partalg::meet::{birkhoff_representation_capped, check_axioms, SuiteId};
use partalg::repsearch::{
    base_bound, parse_certificate, parse_representation, serialize_certificate, serialize_pf_representation,
    serialize_representation, strip_zero, to_pf_representation, verify_certificate, verify_lesssim_complete,
    verify_representation, CompletenessMode, SetRepresentation,
};
use serde_json::{json, Value};

use crate::io::{doc_kind, emit, read_algebra, read_algebra_with, read_input, write_stdout, CmdResult, DocKind, Failure};
use crate::{Cli, Command, Format, Mode, Side};

struct Out {
    format: Format,
}

impl Out {
    /// Prints the text or the JSON form of a result.
    fn report(&self, text: impl AsRef<str>, value: Value) -> Result<(), Failure> {
        let body = match self.format {
            Format::Text => text.as_ref().to_string(),
            Format::Json => serde_json::to_string_pretty(&value).expect("serialisable"),
        };
        write_stdout(&format!("{body}\n"))
    }
}

pub fn run(cli: Cli) -> CmdResult {
    let out = Out { format: cli.format };
    match cli.command {
        Command::Validate { input, allow_degenerate } => validate_cmd(&out, &input, allow_degenerate),
        Command::Repcheck {
            input,
            node_cap,
            decider,
            certificate,
        } => repcheck(&out, &input, node_cap, &decider, certificate),
        Command::Represent {
            input,
            node_cap,
            partial_functions,
            output,
        } => represent(&input, node_cap, partial_functions, output.as_deref()),
        Command::Verify {
            input,
            against,
            complete,
            complete_cap,
            mode,
        } => verify(&out, &input, &against, complete.then_some(complete_cap), mode),
        Command::Game {
            input,
            rounds,
            omega: _,
            strategy,
            strategy_limit,
            position_cap,
        } => game(&out, &input, rounds, strategy.then_some(strategy_limit), position_cap),
        Command::Play {
            input,
            side,
            rounds,
            moves,
        } => play(&input, side, rounds, moves.as_deref()),
        Command::Rho {
            n,
            mu,
            v,
            w,
            check,
            size,
        } => rho(&out, n, mu.then_some((v, w)), check.as_deref(), size),
        Command::Translate { formula, check } => translate(&out, &formula, check.as_deref()),
        Command::Axioms { input, suite } => axioms(&out, &input, suite.as_deref()),
        Command::Birkhoff {
            input,
            suite,
            filter_cap,
            output,
        } => birkhoff(&input, suite.as_deref(), filter_cap, output.as_deref()),
        Command::Gen {
            name,
            params,
            list,
            representation,
            perm_cap,
            output,
        } => gen(&out, name.as_deref(), &params, list, representation.then_some(perm_cap), output.as_deref()),
        Command::Equation { equation, countermodel } => equation_cmd(&out, &equation, countermodel),
        Command::Countermodel { equation, bound } => countermodel(&out, &equation, bound),
    }
}

fn validate_cmd(out: &Out, input: &str, allow_degenerate: bool) -> CmdResult {
    let text = read_input(input)?;
    crate::io::expect_kind(&text, DocKind::Algebra)?;
    let doc = parse_algebra_doc(&text)?;
    let report = validate(&doc, ValidateOptions { allow_degenerate });
    if report.is_empty() {
        let alg = doc.to_algebra(ValidateOptions { allow_degenerate })?;
        out.report(
            format!("valid: {} elements, signature {}", alg.len(), alg.signature()),
            json!({"valid": true, "elements": alg.len(), "signature": alg.signature().to_string()}),
        )?;
        Ok(0)
    } else {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        out.report(format!("invalid:\n{report}"), json!({"valid": false, "violations": lines}))?;
        Ok(1)
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Representable { .. } => 0,
        Verdict::NotRepresentable { .. } => 1,
        Verdict::Inconclusive { .. } => 3,
    }
}

fn repcheck(out: &Out, input: &str, node_cap: u64, decider: &str, full: bool) -> CmdResult {
    let alg = read_algebra(input)?;
    let reg = DeciderRegistry::with_node_cap(node_cap);
    let verdict = reg.decide(decider, &alg)?;
    let code = verdict_code(&verdict);
    match &verdict {
        Verdict::Representable {
            certificate,
            representation,
        } => {
            let mut text = String::from("representable");
            let mut value = json!({"verdict": "representable", "decider": decider});
            if let Some(cert) = certificate {
                text.push_str(&format!(
                    "\ncertificate: {} point types (bound 2|A|² = {}), {} separators, {} undefinedness witnesses",
                    cert.point_types.len(),
                    base_bound(&alg),
                    cert.separators.len(),
                    cert.undefinedness_witnesses.len()
                ));
                let doc = serialize_certificate(&alg, cert);
                if full {
                    text.push('\n');
                    text.push_str(doc.trim_end());
                }
                value["certificate"] = serde_json::from_str(&doc).expect("certificate documents are JSON");
            }
            if let Some(rep) = representation {
                text.push_str(&format!("\nrepresentation over {} points", rep.base_size()));
                value["base_size"] = json!(rep.base_size());
            }
            out.report(text, value)?;
        }
        Verdict::NotRepresentable { reason } => out.report(
            format!("not representable: {reason}"),
            json!({"verdict": "not representable", "decider": decider, "reason": reason}),
        )?,
        Verdict::Inconclusive { reason } => out.report(
            format!("inconclusive: {reason}"),
            json!({"verdict": "inconclusive", "decider": decider, "reason": reason}),
        )?,
    }
    Ok(code)
}

fn represent(input: &str, node_cap: u64, partial_functions: bool, output: Option<&std::path::Path>) -> CmdResult {
    let alg = read_algebra(input)?;
    let reg = DeciderRegistry::with_node_cap(node_cap);
    let rep = match reg.decide("search", &alg)? {
        Verdict::Representable {
            representation: Some(rep),
            ..
        } => rep,
        Verdict::Representable { .. } => unreachable!("search always builds a representation"),
        Verdict::NotRepresentable { reason } => {
            eprintln!("not representable: {reason}");
            return Ok(1);
        }
        Verdict::Inconclusive { reason } => {
            eprintln!("inconclusive: {reason}");
            return Ok(3);
        }
    };
    let doc = if partial_functions {
        serialize_pf_representation(&alg, &to_pf_representation(&alg, &rep)?)
    } else {
        serialize_representation(&alg, &rep)
    };
    emit(&doc, output)?;
    Ok(0)
}

fn verify(out: &Out, input: &str, against: &str, complete: Option<usize>, mode: Mode) -> CmdResult {
    let alg = read_algebra(against)?;
    let text = read_input(input)?;
    match doc_kind(&text)? {
        DocKind::Certificate => {
            let cert = parse_certificate(&alg, &text)?;
            match verify_certificate(&alg, &cert) {
                Ok(()) => {
                    out.report("certificate verified", json!({"verified": true, "kind": "certificate"}))?;
                    Ok(0)
                }
                Err(e) => {
                    out.report(
                        format!("certificate rejected: {e}"),
                        json!({"verified": false, "kind": "certificate", "failures": [e.to_string()]}),
                    )?;
                    Ok(1)
                }
            }
        }
        DocKind::Representation => {
            let rep = parse_representation(&alg, &text)?;
            verify_rep(out, &alg, &rep, complete, mode)
        }
        kind => Err(Failure::usage(format!(
            "expected a set representation or certificate document, found {kind}"
        ))),
    }
}

fn verify_rep(out: &Out, alg: &PartialAlgebra, rep: &SetRepresentation, complete: Option<usize>, mode: Mode) -> CmdResult {
    let report = verify_representation(alg, rep);
    let mut failures = report.failures.clone();
    let mut checked = None;
    if report.is_ok() {
        if let Some(cap) = complete {
            let mode = match mode {
                Mode::Join => CompletenessMode::Join,
                Mode::Minus => CompletenessMode::Minus,
            };
            let c = verify_lesssim_complete(alg, rep, cap, mode)?;
            checked = Some(c.checked);
            failures.extend(c.failures);
        }
    }
    let ok = failures.is_empty();
    let mut text = if ok {
        format!("representation verified over {} points", rep.base_size())
    } else {
        format!("representation rejected:\n  {}", failures.join("\n  "))
    };
    if let (Some(n), true) = (checked, ok) {
        text.push_str(&format!("\ncomplete on {n} combinable subsets"));
    }
    out.report(
        text,
        json!({"verified": ok, "kind": "representation", "base_size": rep.base_size(), "failures": failures}),
    )?;
    Ok(if ok { 0 } else { 1 })
}

/// The join reduct the game runs on, or the reason ∀ wins outright.
fn game_reduct(alg: &PartialAlgebra) -> Result<Result<PartialAlgebra, String>, Failure> {
    partalg::decider::Decider::check_applies(&GameDecider { position_cap: 0 }, alg)?;
    if alg.has(Symbol::Zero) {
        let red = strip_zero(alg)?;
        if !red.zero_law {
            return Ok(Err(format!("zero law fails: {}", red.law)));
        }
        return Ok(Ok(red.reduct));
    }
    Ok(Ok(alg.reduct(Signature::JOIN)?))
}

fn game(out: &Out, input: &str, rounds: Option<usize>, strategy: Option<usize>, cap: usize) -> CmdResult {
    let alg = read_algebra(input)?;
    let rounds = rounds.map_or(Rounds::Omega, Rounds::Finite);
    let label = match rounds {
        Rounds::Omega => "Γ_ω".to_string(),
        Rounds::Finite(n) => format!("Γ_{n}"),
    };
    let reduct = match game_reduct(&alg)? {
        Ok(r) => r,
        Err(reason) => {
            out.report(
                format!("{label}: ∀ wins ({reason})"),
                json!({"game": label, "winner": "forall", "reason": reason}),
            )?;
            return Ok(1);
        }
    };
    let sol = decide_game_with(&reduct, rounds, cap, strategy.unwrap_or(0))?;
    let winner = match sol.winner {
        Player::Exists => "exists",
        Player::Forall => "forall",
    };
    let mut text = format!("{label}: {} wins", sol.winner);
    let mut value = json!({"game": label, "winner": winner});
    if let Some(m) = sol.opening {
        text.push_str(&format!("\nwinning opening for ∀: {}", m.describe(&reduct)));
        value["opening"] = json!(m.describe(&reduct));
    }
    if strategy.is_some() {
        let dump = sol.strategy.dump(&reduct);
        text.push_str(&format!("\nstrategy of ∃:\n{}", dump.trim_end()));
        value["strategy"] = json!(dump.lines().collect::<Vec<_>>());
    }
    out.report(text, value)?;
    Ok(if sol.winner == Player::Exists { 0 } else { 1 })
}

fn play(input: &str, side: Side, rounds: Option<usize>, moves: Option<&std::path::Path>) -> CmdResult {
    let alg = read_algebra(input)?;
    let reduct = match game_reduct(&alg)? {
        Ok(r) => r,
        Err(reason) => return Err(Failure::usage(format!("nothing to play: {reason}"))),
    };
    let human = match side {
        Side::Forall => Player::Forall,
        Side::Exists => Player::Exists,
    };
    let stdout = std::io::stdout();
    let transcript = match moves {
        Some(path) => {
            let f = File::open(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            play_interactive(&reduct, human, rounds, BufReader::new(f), stdout.lock())?
        }
        None => {
            if !std::io::stdin().is_terminal() {
                return Err(Failure::usage(
                    "play is interactive; pass --moves <file> to supply moves without a terminal",
                ));
            }
            play_interactive(&reduct, human, rounds, std::io::stdin().lock(), stdout.lock())?
        }
    };
    let result = match transcript.status {
        PlayStatus::Won(p) => format!("{p} won"),
        PlayStatus::Quit => "quit".to_string(),
        PlayStatus::InputClosed => "moves ran out".to_string(),
    };
    write_stdout(&format!("\nresult: {result}\n"))?;
    Ok(0)
}

fn rho(out: &Out, n: usize, mu: Option<(Vec<String>, Vec<String>)>, check: Option<&str>, size: bool) -> CmdResult {
    let (name, f) = match &mu {
        Some((v, w)) => {
            let v: Vec<&str> = v.iter().map(String::as_str).collect();
            let w: Vec<&str> = w.iter().map(String::as_str).collect();
            (format!("μ_{n}"), gen_mu(n, &v, &w)?)
        }
        None => (format!("ρ_{n}"), gen_rho(n)),
    };
    if let Some(path) = check {
        let alg = read_algebra(path)?;
        let alg = match game_reduct(&alg)? {
            Ok(r) => r,
            Err(reason) => {
                out.report(format!("{name}: not evaluated ({reason})"), json!({"formula": name, "holds": false, "reason": reason}))?;
                return Ok(1);
            }
        };
        let ok = holds(&alg, &f)?;
        out.report(
            format!("{name} {}", if ok { "holds" } else { "fails" }),
            json!({"formula": name, "holds": ok}),
        )?;
        return Ok(if ok { 0 } else { 1 });
    }
    if size {
        let s = f.tree_size();
        out.report(format!("{name}: {s} nodes"), json!({"formula": name, "nodes": s.to_string()}))?;
        return Ok(0);
    }
    out.report(f.to_string(), json!({"formula": name, "text": f.to_string()}))?;
    Ok(0)
}

fn translate(out: &Out, formula: &str, check: Option<&str>) -> CmdResult {
    let psi = parse_formula(formula)?;
    let minus = translate_to_relational(&psi)?;
    let Some(path) = check else {
        out.report(minus.to_string(), json!({"formula": psi.to_string(), "relational": minus.to_string()}))?;
        return Ok(0);
    };
    let alg = read_algebra_with(path, ValidateOptions::permissive())?;
    if alg.is_empty() {
        return Err(Failure::usage("the translation is only sound on nonempty algebras"));
    }
    let total = holds_total(&totalise(&alg), &psi)?;
    let relational = holds(&alg, &minus)?;
    out.report(
        format!(
            "totalised algebra: {}\nrelational translation: {}",
            if total { "holds" } else { "fails" },
            if relational { "holds" } else { "fails" }
        ),
        json!({"formula": psi.to_string(), "relational": minus.to_string(), "total_holds": total, "relational_holds": relational}),
    )?;
    Ok(if relational { 0 } else { 1 })
}

fn suite_for(alg: &PartialAlgebra, suite: Option<&str>) -> Result<SuiteId, Failure> {
    match suite {
        Some(s) => Ok(s.parse()?),
        None => SuiteId::for_signature(alg.signature()).ok_or_else(|| {
            Failure::usage(format!("no axiom suite for signature {}; pass --suite", alg.signature()))
        }),
    }
}

fn axioms(out: &Out, input: &str, suite: Option<&str>) -> CmdResult {
    let alg = read_algebra(input)?;
    let id = suite_for(&alg, suite)?;
    let violations = check_axioms(&alg, id)?;
    let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    let text = if lines.is_empty() {
        format!("{id}: all axioms hold")
    } else {
        format!("{id}: {} axioms fail\n  {}", lines.len(), lines.join("\n  "))
    };
    out.report(text, json!({"suite": id.as_str(), "violations": lines}))?;
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn birkhoff(input: &str, suite: Option<&str>, filter_cap: usize, output: Option<&std::path::Path>) -> CmdResult {
    let alg = read_algebra(input)?;
    let id = suite_for(&alg, suite)?;
    match birkhoff_representation_capped(&alg, id, filter_cap) {
        Ok(rep) => {
            emit(&serialize_representation(&alg, &rep), output)?;
            Ok(0)
        }
        Err(partalg::Error::AxiomsViolated(m)) => {
            eprintln!("axioms violated: {m}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn gen(
    out: &Out,
    name: Option<&str>,
    params: &[usize],
    list: bool,
    perm_cap: Option<usize>,
    output: Option<&std::path::Path>,
) -> CmdResult {
    let reg = GeneratorRegistry::default();
    if list {
        let rows: Vec<String> = reg
            .iter()
            .map(|g| format!("{} {}: {}", g.name(), g.params().join(" "), g.description()))
            .collect();
        out.report(rows.join("\n"), json!(reg.names()))?;
        return Ok(0);
    }
    let name = name.ok_or_else(|| Failure::usage("a generator name is required (see --list)"))?;
    if let Some(cap) = perm_cap {
        match (name, params) {
            ("A", [m, n]) if m == n => {
                let (alg, rep) = perm_representation_capped(*n, cap)?;
                emit(&serialize_representation(&alg, &rep), output)?;
                return Ok(0);
            }
            _ => return Err(Failure::usage("--representation needs `A n n`")),
        }
    }
    let alg = reg.generate(name, params)?;
    emit(&serialize_algebra(&alg), output)?;
    Ok(0)
}

fn equation_cmd(out: &Out, text: &str, countermodel: Option<usize>) -> CmdResult {
    let eq = parse_equation(text)?;
    let valid = decide_validity(&eq);
    let mut msg = format!("{eq}: {}", if valid { "valid" } else { "invalid" });
    let mut value = json!({"equation": eq.to_string(), "valid": valid});
    if let Some(bound) = countermodel {
        let cm = find_countermodel(&eq, bound)?;
        describe_countermodel(&eq, bound, cm.as_ref(), &mut msg, &mut value);
    }
    out.report(msg, value)?;
    Ok(if valid { 0 } else { 1 })
}

fn describe_countermodel(
    eq: &Equation,
    bound: usize,
    cm: Option<&partalg::equations::Countermodel>,
    msg: &mut String,
    value: &mut Value,
) {
    match cm {
        Some(cm) => {
            msg.push_str(&format!("\ncountermodel over {bound} points: {cm}"));
            let asg: serde_json::Map<String, Value> = cm
                .assignment
                .iter()
                .map(|(k, &e)| (k.clone(), json!(cm.algebra.name(e))))
                .collect();
            value["countermodel"] = json!({"base_size": bound, "assignment": asg});
        }
        None => {
            msg.push_str(&format!("\nno countermodel for {eq} over {bound} points"));
            value["countermodel"] = Value::Null;
        }
    }
}

fn countermodel(out: &Out, text: &str, bound: usize) -> CmdResult {
    let eq = parse_equation(text)?;
    let cm = find_countermodel(&eq, bound)?;
    let mut msg = String::new();
    let mut value = json!({"equation": eq.to_string()});
    describe_countermodel(&eq, bound, cm.as_ref(), &mut msg, &mut value);
    out.report(msg.trim_start(), value)?;
    Ok(if cm.is_some() { 1 } else { 0 })
}
