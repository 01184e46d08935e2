//! The `vanishing` command-line front end.
//!
//! Exit codes: 0 pass, 1 semantic mismatch, 2 parse or input error,
//! 3 cap exceeded. The order cap can be overridden with the
//! `VANISHING_MAX_ORDER` environment variable.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::campaign::{check_name, duality, sixsum_exhaustive, vanishing_sum_soundness, Campaign, CampaignConfig, Status};
use crate::character::{check_orthogonality, dixon_table, threshold, VanishReport};
use crate::classifier::{classify_a_group, classify_theorem_a};
use crate::constructions::{CorpusCaps, GroupSpec};
use crate::error::Error;
use crate::group::{FiniteGroup, TABLE_CAP};
use crate::groupfile::GroupFile;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-oriented text.
    Text,
    /// Line-oriented key=value rows.
    Rows,
}

#[derive(Debug, Parser)]
#[command(name = "vanishing", version, about = "Exact vanishing-element proportions of finite groups")]
pub struct Cli {
    /// Largest group order any command will build or analyse.
    #[arg(long, global = true, env = "VANISHING_MAX_ORDER", default_value_t = TABLE_CAP)]
    pub max_order: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named group family and write it as a group file.
    Construct {
        /// Builder expression, e.g. `B4_1(1,C2xC2)`, `M5`, `PGROUP(q8)`.
        tag: String,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print classes, degrees and the exact proportion of vanishing elements.
    Ptable {
        groupfile: PathBuf,
        /// Also dump the full character table.
        #[arg(long)]
        emit_table: bool,
    },
    /// Decide structurally whether P(G) < 1067/1260 and print the verdict.
    Classify {
        groupfile: PathBuf,
        /// Also run the character-table oracle; exit 1 on disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run one verification check (e.g. `sixsum`, `vs`, `duality`, `a7`).
    VerifyLemma {
        name: String,
        /// Largest 2-power exponent for `sixsum`; largest term count for `vs`.
        #[arg(long)]
        n: Option<u32>,
        /// Seed for randomised checks.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the verification campaign and print a report row per check.
    Campaign {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random corpus groups.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// One order cap for the corpus and the fixed groups.
        #[arg(long)]
        caps: Option<usize>,
        /// Largest number of conjugacy classes for corpus groups.
        #[arg(long, default_value_t = 160)]
        max_classes: usize,
        /// Restrict to these checks (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Also write the report to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print V(G) class by class from the character-table oracle.
    Oracle {
        groupfile: PathBuf,
        /// List the nonvanishing elements.
        #[arg(long)]
        elements: bool,
    },
}

/// The process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Consistency(_) | Error::Configuration(_) => EXIT_MISMATCH,
        _ => EXIT_PARSE,
    }
}

fn fail(e: &Error, path: Option<&Path>) -> i32 {
    match (e, path) {
        (Error::Parse { line, column, message }, Some(p)) => {
            eprintln!("{}:{line}:{column}: {message}", p.display())
        }
        _ => eprintln!("error: {e}"),
    }
    exit_code(e)
}

/// Reads and builds a group file, enforcing the order cap.
fn load(path: &Path, max_order: usize) -> Result<FiniteGroup, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })?;
    let file = GroupFile::parse(&text).map_err(|e| fail(&e, Some(path)))?;
    let g = file.build().map_err(|e| fail(&e, Some(path)))?;
    if g.order() > max_order {
        return Err(fail(
            &Error::CapExceeded {
                what: "group order",
                value: g.order(),
                cap: max_order,
            },
            Some(path),
        ));
    }
    Ok(g)
}

fn emit(lines: &[String]) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for l in lines {
        let _ = writeln!(out, "{l}");
    }
}

pub fn cmd_construct(tag: &str, output: Option<&Path>, cli: &Cli) -> i32 {
    let spec = match GroupSpec::parse(tag) {
        Ok(s) => s,
        Err(e) => return fail(&e, None),
    };
    let file = match GroupFile::from_spec(&spec) {
        Ok(f) => f,
        Err(e) => return fail(&e, None),
    };
    match file.build() {
        Err(e) => return fail(&e, None),
        Ok(g) if g.order() > cli.max_order => {
            let e = Error::CapExceeded {
                what: "group order",
                value: g.order(),
                cap: cli.max_order,
            };
            return fail(&e, None);
        }
        Ok(_) => {}
    }
    let text = file.to_text();
    match output {
        Some(p) => {
            if let Err(e) = fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_PARSE;
            }
        }
        None => print!("{text}"),
    }
    EXIT_PASS
}

pub fn cmd_ptable(path: &Path, emit_table: bool, cli: &Cli) -> i32 {
    let g = match load(path, cli.max_order) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let table = match dixon_table(&g) {
        Ok(t) => t,
        Err(e) => return fail(&e, None),
    };
    if let Err(e) = check_orthogonality(&table, &g) {
        return fail(&e, None);
    }
    let report = VanishReport::from_table(&g, &table);
    let degrees: Vec<String> = table.degrees().iter().map(|d| d.to_string()).collect();
    let lines = match cli.format {
        Format::Text => {
            let mut l = vec![
                format!("group {} order {}", g.name(), g.order()),
                format!("classes {}", table.num_classes()),
                format!("degrees {}", degrees.join(" ")),
                format!(
                    "vanishing {} nonvanishing {}",
                    report.vanishing.len(),
                    report.nonvanishing.len()
                ),
                format!("P = {}", report.proportion),
            ];
            if emit_table {
                l.extend(table.render(&g).lines().map(String::from));
            }
            l
        }
        Format::Rows => {
            let mut l = vec![format!(
                "group={} order={} classes={} degrees={} vanishing={} nonvanishing={} p={}",
                g.name().replace(' ', ""),
                g.order(),
                table.num_classes(),
                degrees.join(","),
                report.vanishing.len(),
                report.nonvanishing.len(),
                report.proportion
            )];
            if emit_table {
                l.extend(table.render(&g).lines().map(String::from));
            }
            l
        }
    };
    emit(&lines);
    EXIT_PASS
}

pub fn cmd_classify(path: &Path, cross_check: bool, cli: &Cli) -> i32 {
    let g = match load(path, cli.max_order) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let verdict = classify_theorem_a(&g);
    let mut lines = vec![verdict.to_string()];
    for (name, sub) in &verdict.witnesses {
        lines.push(format!("witness {name} order={}", sub.order()));
    }
    for n in &verdict.notes {
        lines.push(format!("note {n}"));
    }
    if let Ok(a) = classify_a_group(&g) {
        lines.push(format!("a-group case={} m={}", a.case.label(), a.m));
    }
    let mut code = EXIT_PASS;
    if cross_check {
        let p = match crate::character::proportion(&g) {
            Ok(r) => r.proportion,
            Err(e) => return fail(&e, None),
        };
        let out = &verdict.outcome;
        let agree = out.is_below() == (p < threshold()) && out.predicted_p().is_none_or(|q| q == p);
        lines.push(format!("oracle P = {p}"));
        lines.push(format!("agree={agree}"));
        if !agree {
            code = EXIT_MISMATCH;
        }
    }
    if cli.format == Format::Rows {
        let out = &verdict.outcome;
        let mut row = format!(
            "verdict={} case={} m={} p={}",
            if out.is_below() { "Below" } else { "AtOrAbove" },
            out.case().map_or("-", |c| c.label()),
            out.case().map_or("-".to_string(), |c| c.index().to_string()),
            out.predicted_p().map_or("-".to_string(), |p| p.to_string())
        );
        if cross_check {
            row.push_str(&format!(" {} {}", lines[lines.len() - 2].replace("oracle P = ", "oracle_p="), lines[lines.len() - 1]));
        }
        lines = vec![row];
    }
    emit(&lines);
    code
}

pub fn cmd_verify_lemma(name: &str, n: Option<u32>, seed: u64, cli: &Cli) -> i32 {
    let Some(check) = check_name(name) else {
        eprintln!("error: unknown check `{name}`");
        return EXIT_PARSE;
    };
    let row = match check {
        "sixsum_exhaustive" => sixsum_exhaustive(n.unwrap_or(4)),
        "vanishing_sum_soundness" => vanishing_sum_soundness(n.unwrap_or(8) as u64, &[2, 3, 4, 5, 6, 8, 9, 12]),
        "duality" => duality(seed, 1000, 200),
        other => {
            let cfg = CampaignConfig {
                seed,
                max_order: cli.max_order,
                ..CampaignConfig::default()
            };
            Campaign::new(cfg).run_one(other)
        }
    };
    emit(&[row.to_string()]);
    if row.status == Status::Fail {
        EXIT_MISMATCH
    } else {
        EXIT_PASS
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_campaign(
    seed: u64,
    count: usize,
    caps: Option<usize>,
    max_classes: usize,
    only: &[String],
    output: Option<&Path>,
    cli: &Cli,
) -> i32 {
    let mut names = Vec::new();
    for o in only {
        match check_name(o) {
            Some(n) => names.push(n),
            None => {
                eprintln!("error: unknown check `{o}`");
                return EXIT_PARSE;
            }
        }
    }
    let mut cfg = CampaignConfig {
        seed,
        count,
        corpus_caps: CorpusCaps {
            max_order: CorpusCaps::default().max_order.min(cli.max_order),
            max_classes,
        },
        max_order: cli.max_order,
    };
    if let Some(c) = caps {
        cfg = cfg.with_cap(c.min(cli.max_order));
    }
    let report = Campaign::new(cfg).run(&names);
    let text = report.to_string();
    print!("{text}");
    if let Some(p) = output {
        if let Err(e) = fs::write(p, &text) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return EXIT_PARSE;
        }
    }
    if report.all_pass() {
        EXIT_PASS
    } else {
        for r in report.rows.iter().filter(|r| r.status == Status::Fail) {
            eprintln!("FAILED {r}");
        }
        EXIT_MISMATCH
    }
}

pub fn cmd_oracle(path: &Path, elements: bool, cli: &Cli) -> i32 {
    let g = match load(path, cli.max_order) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let report = match crate::character::proportion(&g) {
        Ok(r) => r,
        Err(e) => return fail(&e, None),
    };
    let cls = g.classes();
    let mut lines = vec![format!(
        "order={} vanishing={} nonvanishing={} p={}",
        g.order(),
        report.vanishing.len(),
        report.nonvanishing.len(),
        report.proportion
    )];
    for t in 0..cls.len() {
        let rep = cls.reps[t];
        lines.push(format!(
            "class={t} size={} order={} rep={} vanishing={}",
            cls.sizes[t],
            cls.orders[t],
            g.label(rep).replace(' ', ""),
            report.is_vanishing(rep)
        ));
    }
    if elements {
        let labels: Vec<String> = report.nonvanishing.iter().map(|&x| g.label(x).replace(' ', "")).collect();
        lines.push(format!("nonvanishing={}", labels.join(";")));
    }
    emit(&lines);
    EXIT_PASS
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
        }
    };
    let go = || match &cli.command {
        Command::Construct { tag, output } => cmd_construct(tag, output.as_deref(), &cli),
        Command::Ptable { groupfile, emit_table } => cmd_ptable(groupfile, *emit_table, &cli),
        Command::Classify { groupfile, cross_check } => cmd_classify(groupfile, *cross_check, &cli),
        Command::VerifyLemma { name, n, seed } => cmd_verify_lemma(name, *n, *seed, &cli),
        Command::Campaign {
            seed,
            count,
            caps,
            max_classes,
            only,
            output,
        } => cmd_campaign(*seed, *count, *caps, *max_classes, only, output.as_deref(), &cli),
        Command::Oracle { groupfile, elements } => cmd_oracle(groupfile, *elements, &cli),
    };
    match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(go),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_PARSE
            }
        },
        None => go(),
    }
}
