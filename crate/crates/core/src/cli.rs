//! Command dispatch and rendering for the `mckay` binary.

use std::path::PathBuf;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mckay::{node_report, NodeReport, Workspace};
use crate::report::Check;
use crate::scalar::Rational;
use crate::suites::{codes_suite, griess_suite, leech_suite, DataCodes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyMckay,
    VerifyGriess,
    VerifyLeech,
    VerifyCodes,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyMckay => "verify-mckay",
            Command::VerifyGriess => "verify-griess",
            Command::VerifyLeech => "verify-leech",
            Command::VerifyCodes => "verify-codes",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Nodes to report on; all nine when empty.
    pub nodes: Vec<usize>,
    pub format: Format,
    /// Time budget in seconds for rank-24 enumeration.
    pub budget_seconds: u64,
    pub long: bool,
    pub data_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, nodes: Vec::new(), format: Format::Json, budget_seconds: 600, long: false, data_dir: None }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&i) = self.nodes.iter().find(|&&i| i > 8) {
            return Err(Error::InvalidArgument(format!("node {i} is not in 0..=8")));
        }
        if self.budget_seconds == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        Ok(())
    }

    fn node_list(&self) -> Vec<usize> {
        if self.nodes.is_empty() {
            (0..9).collect()
        } else {
            let mut n = self.nodes.clone();
            n.sort_unstable();
            n.dedup();
            n
        }
    }
}

/// Rendered report and overall verdict.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub text: String,
    pub pass: bool,
}

/// Outcome of one node pipeline: a report, or the error that stopped it.
#[derive(Clone, Debug)]
pub enum NodeOutcome {
    Report(Box<NodeReport>),
    Failed { node: usize, claim: String, error: String },
}

impl NodeOutcome {
    pub fn pass(&self) -> bool {
        matches!(self, NodeOutcome::Report(r) if r.pass)
    }

    fn to_json(&self) -> Value {
        match self {
            NodeOutcome::Report(r) => serde_json::to_value(r).expect("serializable"),
            NodeOutcome::Failed { node, claim, error } => {
                json!({ "i": node, "pass": false, "failure": { "claim": claim, "error": error } })
            }
        }
    }
}

fn claim_of(e: &Error) -> &'static str {
    match e {
        Error::TableMismatch { .. } => "mckay-table",
        Error::BadSpectrum(_) => "tau-spectrum",
        Error::DimensionMismatch { .. } => "u2-dimension",
        Error::CodeCheckFailed(_) => "z4-type-ii",
        Error::EmbeddingNotFound(_) => "e8-cubed-embedding",
        _ => "node-pipeline",
    }
}

/// Results of one command, before rendering.
#[derive(Clone, Debug)]
pub enum Section {
    Mckay(Vec<NodeOutcome>),
    Checks(Command, Vec<Check>),
}

impl Section {
    pub fn pass(&self) -> bool {
        match self {
            Section::Mckay(v) => v.iter().all(NodeOutcome::pass),
            Section::Checks(_, v) => v.iter().all(|c| c.pass),
        }
    }

    fn command(&self) -> Command {
        match self {
            Section::Mckay(_) => Command::VerifyMckay,
            Section::Checks(c, _) => *c,
        }
    }

    fn results_json(&self) -> Value {
        match self {
            Section::Mckay(v) => Value::Array(v.iter().map(NodeOutcome::to_json).collect()),
            Section::Checks(_, v) => serde_json::to_value(v).expect("serializable"),
        }
    }
}

pub fn mckay_section(config: &RunConfig, data: &DataCodes) -> Section {
    let nodes = config.node_list();
    let ws = match Workspace::with_code(&data.z4) {
        Ok(ws) => ws,
        Err(e) => {
            let claim = claim_of(&e).to_string();
            return Section::Mckay(
                nodes.into_iter().map(|node| NodeOutcome::Failed { node, claim: claim.clone(), error: e.to_string() }).collect(),
            );
        }
    };
    Section::Mckay(
        nodes
            .into_iter()
            .map(|i| match node_report(&ws, i) {
                Ok(r) => NodeOutcome::Report(Box::new(r)),
                Err(e) => NodeOutcome::Failed { node: i, claim: claim_of(&e).into(), error: e.to_string() },
            })
            .collect(),
    )
}

fn sections(config: &RunConfig, data: &DataCodes) -> Vec<Section> {
    let budget = Duration::from_secs(config.budget_seconds);
    let one = |c: Command| match c {
        Command::VerifyMckay => mckay_section(config, data),
        Command::VerifyGriess => Section::Checks(c, griess_suite()),
        Command::VerifyLeech => Section::Checks(c, leech_suite(data, budget, config.long)),
        Command::VerifyCodes => Section::Checks(c, codes_suite(data)),
        Command::VerifyAll => unreachable!(),
    };
    match config.command {
        Command::VerifyAll => {
            [Command::VerifyCodes, Command::VerifyGriess, Command::VerifyLeech, Command::VerifyMckay].into_iter().map(one).collect()
        }
        c => vec![one(c)],
    }
}

/// Runs the configured command. Configuration and data-loading errors are
/// returned; failed checks are part of the output.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let data = DataCodes::load(config.data_dir.as_deref())?;
    let secs = sections(config, &data);
    let pass = secs.iter().all(Section::pass);
    let text = match config.format {
        Format::Json => render_json(config.command, &secs, pass),
        Format::Markdown => secs.iter().map(render_section_markdown).collect::<Vec<_>>().join("\n"),
    };
    Ok(RunOutput { text, pass })
}

pub fn render_json(command: Command, secs: &[Section], pass: bool) -> String {
    let results = if command == Command::VerifyAll {
        Value::Array(
            secs.iter().map(|s| json!({ "command": s.command().name(), "pass": s.pass(), "results": s.results_json() })).collect(),
        )
    } else {
        secs[0].results_json()
    };
    let top = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "results": results,
        "pass": pass,
    });
    let mut s = serde_json::to_string_pretty(&top).expect("serializable");
    s.push('\n');
    s
}

fn render_section_markdown(sec: &Section) -> String {
    let mut s = format!("## {}\n\n", sec.command().name());
    match sec {
        Section::Mckay(v) => {
            let reports: Vec<NodeReport> =
                v.iter().filter_map(|o| if let NodeOutcome::Report(r) = o { Some((**r).clone()) } else { None }).collect();
            s.push_str(&render_markdown(&reports));
            let mut notes = Vec::new();
            for o in v {
                match o {
                    NodeOutcome::Failed { node, claim, error } => notes.push(format!("- node {node}: {claim}: {error}")),
                    NodeOutcome::Report(r) => {
                        for c in r.checks.iter().filter(|c| !c.pass) {
                            notes.push(format!("- node {}: {}: {}", r.i, c.claim, c.detail));
                        }
                    }
                }
            }
            if !notes.is_empty() {
                s.push_str("\nFailures:\n\n");
                s.push_str(&notes.join("\n"));
                s.push('\n');
            }
        }
        Section::Checks(_, v) => {
            s.push_str("| check | claim | pass | detail |\n|---|---|---|---|\n");
            for c in v {
                let detail = c.detail.replace('|', "\\|");
                s.push_str(&format!("| {} | {} | {} | {} |\n", c.id, c.claim, if c.pass { "yes" } else { "no" }, detail));
            }
        }
    }
    s.push_str(&format!("\nresult: {}\n", if sec.pass() { "pass" } else { "FAIL" }));
    s
}

/// `a/2^k` when the denominator is a power of two.
pub fn power_of_two_form(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let (num, den) = r.to_i64_pair().expect("small");
    if den > 1 && den & (den - 1) == 0 {
        let k = den.trailing_zeros();
        if num == 1 && k <= 3 {
            return format!("1/{den}");
        }
        return format!("{num}/2^{k}");
    }
    r.to_string()
}

/// The diagram table: one row per node.
pub fn render_markdown(reports: &[NodeReport]) -> String {
    let mut s = String::from(
        "| i | class | n_i | L(i) | \\|Φ\\| | \\|H_j\\| | ⟨ê,f̂⟩ | ⟨2ê,2f̂⟩ | dim U₂ | order on V_√2E8 | order on V_𝓛 | order on V_Λ | pass |\n",
    );
    s.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        let h: Vec<String> = r.h.iter().map(ToString::to_string).collect();
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.i,
            r.label,
            r.n,
            r.components,
            r.phi,
            if h.is_empty() { "-".into() } else { h.join(", ") },
            power_of_two_form(&r.inner_ef),
            power_of_two_form(&r.inner_2e_2f),
            r.u2_dim,
            r.tau_order_e8,
            r.tau_order_dual,
            r.tau_order_leech,
            if r.pass { "yes" } else { "no" },
        ));
    }
    s
}
