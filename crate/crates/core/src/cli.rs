//! The `prefnet` command-line front end.
//!
//! Every command prints JSON on stdout (or `.wkb` text for `mlp extract-kb`
//! and `prob abox`). Exit codes: `0` success, `1` a negative outcome the
//! command reports (diagnostics, failed verification), `2` usage, load,
//! evaluation or guard errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::fuzzy::{FuzzyInterpretation, LogicFamily};
use crate::gen;
use crate::kb::{KbError, WeightedKb};
use crate::mlp::{self, Activation, Evaluation, MlpError, Network, StimulusSet, ThresholdMode};
use crate::preference::{self, ModelMode, TypFuzzySem, TypicalityQuery};
use crate::prob::{self, Distribution, FuzzyProbInterp};
use crate::syntax::{parse_axiom, parse_concept_unchecked, parse_statement, Axiom, Statement};

#[derive(Debug, Parser)]
#[command(name = "prefnet", version, about = "Multipreference semantics for weighted KBs and MLPs")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Fuzzy combination functions; omit for two-valued checking.
    #[arg(long, global = true)]
    pub logic: Option<LogicFamily>,
    /// Crisp membership rule for network units.
    #[arg(long, global = true, default_value = "nonzero", value_parser = parse_threshold)]
    pub threshold_mode: ThresholdMode,
    /// Reading of bounded typicality inclusions in fuzzy models.
    #[arg(long, global = true, default_value = "implication")]
    pub typ_fuzzy_sem: TypFuzzySem,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_threshold(s: &str) -> Result<ThresholdMode, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a `.wkb` file.
    Validate { kb: PathBuf },
    /// Model-check an axiom against a KB and an interpretation.
    Check {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        interp: PathBuf,
        axiom: String,
    },
    /// Entailment of `T(C) [= D` over the canonical model of a role-free KB.
    Entail {
        #[arg(long)]
        kb: PathBuf,
        query: String,
    },
    #[command(subcommand)]
    Mlp(MlpCommand),
    #[command(subcommand)]
    Prob(ProbCommand),
}

#[derive(Debug, Args)]
pub struct NetInput {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub stimuli: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum MlpCommand {
    /// Activities and local fields of every unit on every stimulus.
    Forward {
        #[command(flatten)]
        input: NetInput,
        /// Use synchronous fixed-point iteration even on acyclic networks.
        #[arg(long)]
        fixed_point: bool,
    },
    /// The fuzzy interpretation, or with `--crisp` the crisp model.
    Model {
        #[command(flatten)]
        input: NetInput,
        #[arg(long)]
        crisp: bool,
    },
    /// The weighted KB of the network, as `.wkb` text.
    ExtractKb {
        #[arg(long)]
        net: PathBuf,
    },
    /// Check the weights of the extracted KB and (weak) coherence.
    Verify {
        #[command(flatten)]
        input: NetInput,
        #[arg(long, conflicts_with = "prop2", required_unless_present = "prop2")]
        prop1: bool,
        #[arg(long)]
        prop2: bool,
    },
    /// A random layered network; stimuli go to `--stimuli-out` if given.
    Random {
        #[arg(long, value_delimiter = ',', default_value = "sigmoid")]
        activation: Vec<Activation>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        stimuli_out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ProbInput {
    #[arg(long)]
    pub interp: PathBuf,
    #[arg(long)]
    pub dist: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ProbCommand {
    /// `Σ_d C(d) μ(d)`.
    Event {
        #[command(flatten)]
        input: ProbInput,
        concept: String,
    },
    /// A conditional constraint `(C | D)[l,u]`.
    Cc {
        #[command(flatten)]
        input: ProbInput,
        constraint: String,
    },
    /// `P(C | {a})` by ratio and by membership.
    Nominal {
        #[command(flatten)]
        input: ProbInput,
        concept: String,
        individual: String,
    },
    /// `M(A ⊓ B) / M(A)`.
    Subsethood {
        #[arg(long)]
        interp: PathBuf,
        a: String,
        b: String,
    },
    /// `Σ_x C(x)`.
    Cardinality {
        #[arg(long)]
        interp: PathBuf,
        concept: String,
    },
    /// Evaluate every `cc:` and `passert:` line of a file.
    Query {
        #[command(flatten)]
        input: ProbInput,
        #[arg(long)]
        queries: PathBuf,
    },
    /// `passert:` lines for every unit and stimulus of a network.
    Abox {
        #[command(flatten)]
        input: NetInput,
    },
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

macro_rules! fail_with {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::usage(e.to_string())
            }
        }
    )*};
}

fail_with!(
    crate::syntax::ParseError,
    crate::fuzzy::InterpError,
    crate::fuzzy::EvalError,
    crate::preference::PrefError,
    MlpError,
    prob::ProbError,
    KbError
);

/// Output of a successful command: text for stdout and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Outcome {
            text: serde_json::to_string_pretty(&v).expect("json") + "\n",
            code: 0,
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes its output. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.config.out {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    let _ = writeln!(stderr, "{}: {e}", path.display());
                    return 2;
                }
            } else {
                let _ = write!(stdout, "{}", outcome.text);
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&json!({ "error": e.message })).expect("json")
            );
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Validate { kb } => validate(kb),
        Command::Check { kb, interp, axiom } => check(cfg, kb, interp, axiom),
        Command::Entail { kb, query } => entail(kb, query),
        Command::Mlp(cmd) => run_mlp(cfg, cmd),
        Command::Prob(cmd) => run_prob(cfg, cmd),
    }
}

fn validate(path: &Path) -> Result<Outcome, CliError> {
    let kb = match WeightedKb::load(path) {
        Ok(kb) => kb,
        Err(KbError::Parse(e)) => {
            let v = json!({
                "file": path.display().to_string(),
                "valid": false,
                "diagnostics": [{
                    "severity": "error",
                    "line": e.line,
                    "column": e.column,
                    "message": e.kind.to_string(),
                }],
            });
            return Ok(Outcome::json(v).with_code(1));
        }
        Err(e) => return Err(e.into()),
    };
    let diagnostics = kb.validate();
    let valid = diagnostics.iter().all(|d| !d.is_error());
    let v = json!({
        "file": path.display().to_string(),
        "valid": valid,
        "fragment": format!("{:?}", kb.classify_fragment()),
        "distinguished": kb.distinguished,
        "defaults": kb.defeasible.values().map(Vec::len).sum::<usize>(),
        "diagnostics": diagnostics,
    });
    Ok(Outcome::json(v).with_code(if valid { 0 } else { 1 }))
}

fn model_mode(cfg: &RunConfig) -> ModelMode {
    match cfg.logic {
        Some(l) => ModelMode::Fuzzy(l),
        None => ModelMode::Crisp,
    }
}

fn check(cfg: &RunConfig, kb: &Path, interp: &Path, axiom: &str) -> Result<Outcome, CliError> {
    let kb = WeightedKb::load(kb)?;
    let interp = FuzzyInterpretation::load(interp)?;
    let ax = parse_axiom(axiom, None)?;
    let mode = model_mode(cfg);
    let model = preference::build_preferences(&kb, &interp, mode)?;
    let is_model = match mode {
        ModelMode::Crisp => preference::is_cwm_model(&kb, &interp)?,
        ModelMode::Fuzzy(l) => preference::is_fm_model(&kb, &interp, l)?,
    };
    let mode_tag = match mode {
        ModelMode::Crisp => "crisp".to_string(),
        ModelMode::Fuzzy(l) => l.to_string(),
    };
    let (shown, holds, details) = match TypicalityQuery::from_axiom(&ax) {
        Some(q) => {
            let v = preference::check_typicality_axiom(&model, &q, cfg.typ_fuzzy_sem)?;
            (
                q.to_string(),
                v.holds,
                json!({ "typical": v.typical, "degree": v.degree }),
            )
        }
        None => (
            ax.to_string(),
            interp.satisfies(mode.semantics(), &ax)?,
            json!({}),
        ),
    };
    let mut details = details;
    details["mode"] = json!(mode_tag);
    details["model_of_kb"] = json!(is_model);
    details["weights"] = model.preferences_json();
    Ok(Outcome::json(json!({
        "axiom": shown,
        "holds": holds,
        "details": details,
    })))
}

fn entail(kb: &Path, query: &str) -> Result<Outcome, CliError> {
    let kb = WeightedKb::load(kb)?;
    let ax = parse_axiom(query, None)?;
    let q = TypicalityQuery::from_axiom(&ax)
        .filter(|q| q.bound.is_none())
        .ok_or_else(|| CliError::usage(format!("`{query}` is not of the form T(C) [= D")))?;
    let e = preference::cwm_entailment(&kb, &q)?;
    Ok(Outcome::json(json!({
        "query": q.to_string(),
        "entailed": e.entailed,
        "domain_size": e.domain_size,
        "typical": e.typical,
    })))
}

fn load_net(input: &NetInput) -> Result<(Network, StimulusSet), CliError> {
    Ok((Network::load(&input.net)?, StimulusSet::load(&input.stimuli)?))
}

fn run_mlp(cfg: &RunConfig, cmd: &MlpCommand) -> Result<Outcome, CliError> {
    match cmd {
        MlpCommand::Forward { input, fixed_point } => {
            let (net, st) = load_net(input)?;
            let mode = if *fixed_point {
                Evaluation::FixedPoint
            } else {
                Evaluation::Auto
            };
            Ok(Outcome::json(mlp::forward_with(&net, &st, mode)?.to_json()))
        }
        MlpCommand::Model { input, crisp } => {
            let (net, st) = load_net(input)?;
            if *crisp {
                let m = mlp::build_cwm_interp(&net, &st, cfg.threshold_mode)?;
                Ok(Outcome::json(json!({
                    "interpretation": m.interpretation().to_json(),
                    "preferences": m.preferences_json(),
                })))
            } else {
                Ok(Outcome::json(mlp::build_fuzzy_interp(&net, &st)?.to_json()))
            }
        }
        MlpCommand::ExtractKb { net } => {
            let net = Network::load(net)?;
            Ok(Outcome {
                text: mlp::extract_kb(&net).to_wkb_string(),
                code: 0,
            })
        }
        MlpCommand::Verify { input, prop1, .. } => {
            let (net, st) = load_net(input)?;
            let report = if *prop1 {
                mlp::verify_prop1(&net, &st)?
            } else {
                mlp::verify_prop2(&net, &st)?
            };
            let code = if report.passed { 0 } else { 1 };
            Ok(Outcome::json(serde_json::to_value(&report).expect("report")).with_code(code))
        }
        MlpCommand::Random {
            activation,
            count,
            stimuli_out,
        } => {
            let mut rng = gen::rng(cfg.seed);
            let net = gen::network(&mut rng, &gen::NetParams::with_activations(activation));
            let st = gen::stimuli(&mut rng, &net, *count);
            if let Some(path) = stimuli_out {
                let text = serde_json::to_string_pretty(&st.to_json()).expect("json");
                std::fs::write(path, text + "\n")
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            }
            Ok(Outcome::json(net.to_json()))
        }
    }
}

fn fpi(cfg: &RunConfig, input: &ProbInput) -> Result<FuzzyProbInterp, CliError> {
    let interp = FuzzyInterpretation::load(&input.interp)?;
    let dist = Distribution::load(&input.dist)?;
    Ok(FuzzyProbInterp::new(
        interp,
        cfg.logic.unwrap_or(LogicFamily::Zadeh),
        &dist,
    )?)
}

fn conditional_axiom(text: &str) -> Result<Axiom, CliError> {
    let t = text.trim();
    let line = if t.starts_with("cc:") {
        t.to_string()
    } else {
        format!("cc: {t}")
    };
    Ok(parse_axiom(&line, None)?)
}

fn run_prob(cfg: &RunConfig, cmd: &ProbCommand) -> Result<Outcome, CliError> {
    match cmd {
        ProbCommand::Event { input, concept } => {
            let f = fpi(cfg, input)?;
            let c = parse_concept_unchecked(concept)?;
            Ok(Outcome::json(json!({
                "concept": c.to_string(),
                "probability": prob::fuzzy_event_prob(&f, &c)?,
            })))
        }
        ProbCommand::Cc { input, constraint } => {
            let f = fpi(cfg, input)?;
            let Axiom::Conditional(cc) = conditional_axiom(constraint)? else {
                unreachable!("cc: prefix yields a conditional")
            };
            let v = prob::check_conditional(&f, &cc)?;
            Ok(Outcome::json(json!({
                "constraint": Axiom::Conditional(cc).to_string(),
                "probability": v.probability,
                "holds": v.holds,
            })))
        }
        ProbCommand::Nominal {
            input,
            concept,
            individual,
        } => {
            let f = fpi(cfg, input)?;
            let c = parse_concept_unchecked(concept)?;
            let nc = prob::nominal_conditional(&f, &c, individual)?;
            Ok(Outcome::json(json!({
                "concept": c.to_string(),
                "individual": individual,
                "ratio": nc.ratio,
                "direct": nc.direct,
                "agree": nc.agrees(),
            })))
        }
        ProbCommand::Subsethood { interp, a, b } => {
            let i = FuzzyInterpretation::load(interp)?;
            let (a, b) = (parse_concept_unchecked(a)?, parse_concept_unchecked(b)?);
            Ok(Outcome::json(json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "subsethood": prob::subsethood(&i, &a, &b)?,
            })))
        }
        ProbCommand::Cardinality { interp, concept } => {
            let i = FuzzyInterpretation::load(interp)?;
            let c = parse_concept_unchecked(concept)?;
            Ok(Outcome::json(json!({
                "concept": c.to_string(),
                "cardinality": prob::fuzzy_cardinality(&i, &c)?,
            })))
        }
        ProbCommand::Query { input, queries } => {
            let f = fpi(cfg, input)?;
            let text = std::fs::read_to_string(queries)
                .map_err(|e| CliError::usage(format!("{}: {e}", queries.display())))?;
            let mut results = Vec::new();
            for (i, line) in text.lines().enumerate() {
                match parse_statement(line, i + 1)? {
                    Some(Statement::Axiom(Axiom::Conditional(cc))) => {
                        let v = prob::check_conditional(&f, &cc)?;
                        results.push(json!({
                            "line": i + 1,
                            "query": Axiom::Conditional(cc).to_string(),
                            "probability": v.probability,
                            "holds": v.holds,
                        }));
                    }
                    Some(Statement::Axiom(Axiom::Probabilistic(pa))) => {
                        let nc = prob::nominal_conditional(&f, &pa.concept, &pa.individual)?;
                        let holds = f.satisfies_assertion(&pa)?;
                        results.push(json!({
                            "line": i + 1,
                            "query": Axiom::Probabilistic(pa).to_string(),
                            "probability": nc.ratio,
                            "holds": holds,
                        }));
                    }
                    None => {}
                    Some(_) => {
                        return Err(CliError::usage(format!(
                            "line {}: only cc: and passert: queries are evaluated",
                            i + 1
                        )))
                    }
                }
            }
            Ok(Outcome::json(json!({ "results": results })))
        }
        ProbCommand::Abox { input } => {
            let (net, st) = load_net(input)?;
            let mut text = String::new();
            for pa in prob::network_prob_abox(&net, &st)? {
                text.push_str(&Axiom::Probabilistic(pa).to_string());
                text.push('\n');
            }
            Ok(Outcome { text, code: 0 })
        }
    }
}
