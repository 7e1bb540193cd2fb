//! `comproc`: one command per invocation over the cellular automata, logic,
//! priority and process subsystems.
//!
//! Exit status is 0 on success, 1 when the command itself fails (bad rule,
//! unparsable formula, unsupported mock, failed fidelity check) and 2 on a
//! usage error.

use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use comproc::ca::{orbit, render_pbm, Configuration, LocalRule};
use comproc::logic::{brute_force_existential, model_check, model_check_with_stats, parse_formula, Formula};
use comproc::priority::{
    decide_witness_limit, CanonicalEnumerators, Construction, ConstructionState, Enumerators, MockEnumerators,
    MockSpec, WitnessLimit,
};
use comproc::process::{ca_to_process, compile_construction, CompiledConstruction, StageSnapshot, TrackKind};

type Outcome = Result<Report, Box<dyn Error>>;

/// Human-readable text and its JSON twin.
struct Report {
    text: String,
    json: Value,
}

#[derive(Parser)]
#[command(name = "comproc", version, about = "Computational processes laboratory")]
struct Cli {
    /// Seed for every randomized choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-dimensional cellular automata
    #[command(subcommand)]
    Ca(CaCommand),
    /// First-order model checking of `→` and `=`
    #[command(subcommand)]
    Logic(LogicCommand),
    /// The finite-injury priority construction
    #[command(subcommand)]
    Priority(PriorityCommand),
    /// The construction compiled into a computational process
    #[command(subcommand)]
    Process(ProcessCommand),
}

#[derive(Subcommand)]
enum CaCommand {
    /// Iterate a rule from a finite configuration
    Run {
        /// ECA number 0..=255 or a JSON rule file
        #[arg(long)]
        rule: String,
        /// `word@offset`, or `random:LEN` for a seeded random word at offset 0
        #[arg(long)]
        init: String,
        #[arg(long)]
        steps: usize,
        /// Write the space-time diagram as PBM (P1)
        #[arg(long)]
        render: Option<PathBuf>,
        /// Compute the orbit through the transducer process instead of the global map
        #[arg(long)]
        via_process: bool,
    },
}

#[derive(Subcommand)]
enum LogicCommand {
    /// Decide a sentence
    Check {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        formula: String,
        /// Minimal automaton size of every subformula
        #[arg(long)]
        stats: bool,
    },
    /// Compare the decision procedure with a witness search on random existential sentences
    Crosscheck {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Number of existential quantifiers, at most
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Support width of the searched configurations
        #[arg(long, default_value_t = 6)]
        width: usize,
    },
}

#[derive(Args)]
struct MockArg {
    /// JSON mock spec replacing the canonical enumerations
    #[arg(long)]
    mock: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PriorityCommand {
    /// Run the construction
    Run {
        #[arg(long)]
        stages: u64,
        #[command(flatten)]
        mock: MockArg,
        /// Only requirements e < CAP (canonical enumerations)
        #[arg(long)]
        cap: Option<usize>,
        /// JSONL stage log
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ProcessCommand {
    /// Run the compiled process through T stage boundaries, checking each against the engine
    Compile {
        #[arg(long)]
        stages: u64,
        #[command(flatten)]
        mock: MockArg,
        /// JSONL log, one stage snapshot per line
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = 50_000_000)]
        max_steps: u64,
    },
    /// Apply an output observer to the first T words of the compiled process
    Observe {
        #[arg(long)]
        track: TrackKind,
        #[arg(long)]
        horizon: u64,
        #[command(flatten)]
        mock: MockArg,
    },
}

/// Used by `process` when no `--mock` is given: N_0 and N_1 each
/// diagonalize once, P_1 and P_2 later injure N_1.
const DEFAULT_PROCESS_MOCK: &str =
    r#"{"requirements":3,"w":{"1":"evens","2":"odds"},"phi":{"0":{"const":0,"use":20},"1":{"const":0,"use":30}}}"#;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let outcome = match cli.command {
        Command::Ca(CaCommand::Run { rule, init, steps, render, via_process }) => {
            ca_run(&rule, &init, steps, render.as_deref(), via_process, &mut rng)
        }
        Command::Logic(LogicCommand::Check { rule, formula, stats }) => logic_check(&rule, &formula, stats),
        Command::Logic(LogicCommand::Crosscheck { rule, count, depth, width }) => {
            logic_crosscheck(&rule, count, depth, width, &mut rng)
        }
        Command::Priority(PriorityCommand::Run { stages, mock, cap, log }) => {
            priority_run(stages, mock.mock.as_deref(), cap, log.as_deref())
        }
        Command::Process(ProcessCommand::Compile { stages, mock, log, max_steps }) => {
            process_compile(stages, mock.mock.as_deref(), log.as_deref(), max_steps)
        }
        Command::Process(ProcessCommand::Observe { track, horizon, mock }) => {
            process_observe(track, horizon, mock.mock.as_deref())
        }
    };
    match outcome {
        Ok(report) => {
            let body = if cli.json { format!("{}\n", report.json) } else { report.text };
            emit(&body);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                emit(&format!("{}\n", json!({ "error": e.to_string() })));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// A closed pipe is not an error of the command.
fn emit(body: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
}

fn load_rule(text: &str) -> Result<LocalRule, Box<dyn Error>> {
    match text.parse::<u32>() {
        Ok(n) => Ok(LocalRule::eca(n)?),
        Err(_) => {
            let body = fs::read_to_string(text).map_err(|e| format!("cannot read rule file {text}: {e}"))?;
            Ok(LocalRule::from_json(&body)?)
        }
    }
}

fn load_mock(path: Option<&Path>, default: Option<&str>) -> Result<Option<MockSpec>, Box<dyn Error>> {
    let body = match (path, default) {
        (Some(p), _) => fs::read_to_string(p).map_err(|e| format!("cannot read mock {}: {e}", p.display()))?,
        (None, Some(d)) => d.to_string(),
        (None, None) => return Ok(None),
    };
    Ok(Some(serde_json::from_str(&body).map_err(|e| format!("invalid mock spec: {e}"))?))
}

fn set_text(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn ca_run(rule: &str, init: &str, steps: usize, render: Option<&Path>, via_process: bool, rng: &mut impl Rng) -> Outcome {
    let rule = load_rule(rule)?;
    let x = match init.strip_prefix("random:") {
        Some(len) => {
            let len: usize = len.parse().map_err(|_| format!("bad random length {len:?}"))?;
            let cells = (0..len).map(|_| rng.gen_range(0..rule.alphabet_size())).collect();
            Configuration::new(cells, 0)
        }
        None => init.parse::<Configuration>()?,
    };
    if x.max_letter() >= rule.alphabet_size() {
        return Err(format!("initial configuration uses letters outside 0..{}", rule.alphabet_size()).into());
    }
    let mut orb = orbit(&rule, &x, steps);
    if via_process {
        orb.configurations = ca_to_process(&rule, &x).orbit(steps);
    }
    if let Some(path) = render {
        fs::write(path, render_pbm(&orb)?)?;
    }
    let lines: Vec<String> = orb.configurations.iter().map(Configuration::to_string).collect();
    let text: String = lines.iter().enumerate().map(|(t, c)| format!("{t} {c}\n")).collect();
    Ok(Report { text, json: json!({ "steps": steps, "orbit": lines }) })
}

fn logic_check(rule: &str, formula: &str, stats: bool) -> Outcome {
    let rule = load_rule(rule)?;
    let f = parse_formula(formula)?;
    let (truth, sizes) = model_check_with_stats(&rule, &f)?;
    let mut text = format!("{truth}\n");
    let mut out = json!({ "formula": f.to_string(), "value": truth });
    if stats {
        for s in &sizes {
            text.push_str(&format!("{:>6}  [{}]  {}\n", s.states, s.variables.join(","), s.formula));
        }
        out["stats"] = serde_json::to_value(&sizes)?;
    }
    Ok(Report { text, json: out })
}

fn random_matrix(rng: &mut impl Rng, vars: &[&str], size: usize) -> Formula {
    if size <= 1 {
        let x = vars[rng.gen_range(0..vars.len())];
        let y = vars[rng.gen_range(0..vars.len())];
        let atom = if rng.gen_bool(0.6) { Formula::step(x, y) } else { Formula::eq(x, y) };
        return if rng.gen_bool(0.3) { Formula::not(atom) } else { atom };
    }
    let left = rng.gen_range(1..size);
    let (g, h) = (random_matrix(rng, vars, left), random_matrix(rng, vars, size - left));
    let f = if rng.gen_bool(0.5) { Formula::and(g, h) } else { Formula::or(g, h) };
    if rng.gen_bool(0.2) {
        Formula::not(f)
    } else {
        f
    }
}

fn random_existential(rng: &mut impl Rng, depth: usize) -> Formula {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let m = rng.gen_range(1..=depth.clamp(1, NAMES.len()));
    let size = rng.gen_range(1..=3);
    let matrix = random_matrix(rng, &NAMES[..m], size);
    NAMES[..m].iter().rev().fold(matrix, |f, v| Formula::exists(v, f))
}

fn logic_crosscheck(rule: &str, count: usize, depth: usize, width: usize, rng: &mut impl Rng) -> Outcome {
    let rule = load_rule(rule)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut conflicts = 0;
    for _ in 0..count {
        let f = random_existential(rng, depth);
        let truth = model_check(&rule, &f)?;
        let found = brute_force_existential(&rule, &f, width, depth)?.found();
        let conflict = found && !truth;
        conflicts += conflict as usize;
        text.push_str(&format!("{truth:<5} {:<9} {f}\n", if found { "witness" } else { "none" }));
        rows.push(json!({ "sentence": f.to_string(), "value": truth, "witness": found }));
    }
    text.push_str(&format!("conflicts: {conflicts}\n"));
    if conflicts > 0 {
        return Err(format!("{conflicts} witnesses found for sentences decided false").into());
    }
    Ok(Report { text, json: json!({ "sentences": rows, "conflicts": conflicts }) })
}

fn priority_run(stages: u64, mock: Option<&Path>, cap: Option<usize>, log: Option<&Path>) -> Outcome {
    match load_mock(mock, None)? {
        Some(spec) => drive(Construction::new(MockEnumerators::new(spec)?), stages, log),
        None => {
            let e = cap.map_or_else(CanonicalEnumerators::new, CanonicalEnumerators::with_cap);
            drive(Construction::new(e), stages, log)
        }
    }
}

fn drive<E: Enumerators>(mut c: Construction<E>, stages: u64, log: Option<&Path>) -> Outcome {
    match log {
        Some(path) => c.run_logged(stages, BufWriter::new(fs::File::create(path)?))?,
        None => {
            c.run(stages);
        }
    }
    Ok(priority_report(c.state()))
}

fn priority_report(state: &ConstructionState) -> Report {
    let mut text = format!(
        "stages {}\nS {}\nA {}\nmax_used {}\n",
        state.stage(),
        set_text(state.s_approx()),
        set_text(state.a_approx()),
        state.max_used()
    );
    let mut negatives = Vec::new();
    for (e, n) in state.negatives().iter().enumerate() {
        let limit = match decide_witness_limit(e, state) {
            WitnessLimit::Value(v) => json!(v),
            WitnessLimit::Undetermined(why) => json!({ "undetermined": why }),
        };
        let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        text.push_str(&format!(
            "N{e} witness {} restraint {} injuries {} limit {}\n",
            show(n.witness),
            show(n.restraint),
            n.injuries,
            limit.as_u64().map_or("undetermined".to_string(), |v| v.to_string())
        ));
        negatives.push(json!({
            "e": e, "witness": n.witness, "restraint": n.restraint, "injuries": n.injuries, "limit": limit,
        }));
    }
    let json = json!({
        "stages": state.stage(),
        "s": state.s_approx(),
        "a": state.a_approx(),
        "max_used": state.max_used(),
        "negatives": negatives,
    });
    Report { text, json }
}

fn compiled(mock: Option<&Path>) -> Result<(CompiledConstruction, MockSpec), Box<dyn Error>> {
    let spec = load_mock(mock, Some(DEFAULT_PROCESS_MOCK))?.expect("default mock");
    Ok((compile_construction(&spec)?, spec))
}

fn process_compile(stages: u64, mock: Option<&Path>, log: Option<&Path>, max_steps: u64) -> Outcome {
    let (c, spec) = compiled(mock)?;
    let cap = c.program().cap();
    let mut engine = Construction::new(MockEnumerators::new(spec)?);
    let mut log = log.map(fs::File::create).transpose()?.map(BufWriter::new);
    let mut x = c.process.initial().to_vec();
    let mut steps = 0u64;
    let mut last = None;
    while last.as_ref().map_or(0, |s: &StageSnapshot| s.stage) < stages {
        if steps == max_steps {
            return Err(format!("stage {stages} not reached within {max_steps} steps").into());
        }
        x = c.process.step(&x);
        steps += 1;
        let Some(snap) = c.snapshot(&x)? else { continue };
        engine.stage_step();
        let expected = StageSnapshot::of_engine(engine.state(), cap);
        if snap != expected {
            return Err(format!("stage {} of the process differs from the engine", snap.stage).into());
        }
        if let Some(w) = log.as_mut() {
            let mut record = serde_json::to_value(&snap)?;
            record["step"] = json!(steps);
            record["word_length"] = json!(x.len());
            serde_json::to_writer(&mut *w, &record)?;
            w.write_all(b"\n")?;
        }
        last = Some(snap);
    }
    if let Some(w) = log.as_mut() {
        w.flush()?;
    }
    let snap = last.unwrap_or_else(|| c.snapshot(&x).ok().flatten().expect("initial word is a boundary"));
    let text = format!(
        "instructions {}\nstages {}\nsteps {}\nword_length {}\nS {}\nA {}\nagrees_with_engine true\n",
        c.program().ops().len(),
        snap.stage,
        steps,
        x.len(),
        set_text(&snap.s),
        set_text(&snap.a)
    );
    let json = json!({
        "instructions": c.program().ops().len(),
        "stages": snap.stage,
        "steps": steps,
        "word_length": x.len(),
        "s": snap.s,
        "a": snap.a,
        "agrees_with_engine": true,
    });
    Ok(Report { text, json })
}

fn process_observe(track: TrackKind, horizon: u64, mock: Option<&Path>) -> Outcome {
    let (c, _) = compiled(mock)?;
    let mut x = c.process.initial().to_vec();
    let mut text = String::new();
    let mut changes = Vec::new();
    let mut previous = None;
    for t in 0..=horizon {
        let obs = c.observe_word(track, &x);
        let key = (obs.ticks, obs.numerals.clone());
        if previous.as_ref() != Some(&key) {
            text.push_str(&format!("{t} ticks {} {}\n", obs.ticks, set_text(&obs.numerals)));
            changes.push(json!({ "step": t, "ticks": obs.ticks, "numerals": obs.numerals }));
            previous = Some(key);
        }
        if t < horizon {
            x = c.process.step(&x);
        }
    }
    Ok(Report { text, json: json!({ "horizon": horizon, "changes": changes }) })
}
