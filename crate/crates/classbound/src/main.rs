use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use classbound::campaign::{run_campaign_with, CampaignConfig, CampaignReport, Meta, Suite};
use classbound::report::{emit_report, to_json, Format};
use classbound::{cap_from_env, corpus_standard, CorpusItem, InstanceSpec};
use classbound_core::bounds::check_lemd4_thresholds;

#[derive(Parser)]
#[command(name = "classbound", version, about = "Check class-number inequalities on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the standard corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run one verifier on the instance described by a spec file.
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a suite over the standard corpus.
    Campaign {
        #[arg(long, default_value = "standard")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate closed-form thresholds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Print item names and kinds.
    List {
        /// Print the full items as JSON instead.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// The sufficient inequalities for large induced modules.
    Lemd4 {
        #[arg(long = "logW")]
        log_w: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
    },
}

fn summarize(report: &CampaignReport) {
    for (lemma, s) in &report.summary {
        let slack = s.min_slack.map_or("-".to_string(), |v| format!("{v:.6}"));
        println!(
            "{lemma:<20} records {:>5}  holds {:>5}  fails {:>3}  inconclusive {:>3}  skips {:>3}  min slack {slack}",
            s.records, s.holds, s.fails, s.inconclusive, s.skips
        );
    }
}

fn kind_of(item: &CorpusItem) -> String {
    serde_json::to_value(&item.spec)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(str::to_string))
        .unwrap_or_default()
}

fn run(cli: Cli) -> Result<bool> {
    let cap = cap_from_env()?;
    match cli.command {
        Command::Corpus { action: CorpusAction::List { json } } => {
            let corpus = corpus_standard();
            if json {
                println!("{}", serde_json::to_string_pretty(&corpus)?);
            } else {
                for item in &corpus {
                    println!("{:<28} {}", item.name, kind_of(item));
                }
            }
            Ok(true)
        }
        Command::Verify { lemma, spec, seed, report } => {
            let text = std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let spec_value: InstanceSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", spec.display()))?;
            let name = spec.file_stem().map_or("instance".to_string(), |s| s.to_string_lossy().into_owned());
            let item = CorpusItem::new(name, spec_value);
            let suite = Suite::parse(&lemma)?;
            if suite.lemmas().len() != 1 {
                bail!("--lemma takes exactly one identifier");
            }
            if !classbound::campaign::applies(&item, &lemma) {
                bail!("{lemma} does not apply to this kind of instance");
            }
            let cfg = CampaignConfig { cap, ..CampaignConfig::new(seed) };
            let (records, skips) = classbound::campaign::run_item(&item, suite.lemmas(), &cfg);
            let meta = Meta { seed, version: classbound::VERSION.to_string(), suite: suite.lemmas().to_vec(), corpus: 1 };
            let r = CampaignReport::assemble(meta, records, skips);
            for rec in &r.records {
                println!("{} {} lhs={} rhs={} holds={}", rec.lemma, rec.instance, rec.lhs, rec.rhs, rec.holds);
            }
            for s in &r.skips {
                println!("skip {} {}: {}", s.lemma, s.instance, s.reason);
            }
            match report {
                Some(path) => emit_report(&r, Format::Json, &path)?,
                None => print!("{}", to_json(&r)?),
            }
            Ok(r.failures() == 0)
        }
        Command::Campaign { suite, seed, format, out } => {
            let suite = Suite::parse(&suite)?;
            let format: Format = format.parse()?;
            let cfg = CampaignConfig { cap, ..CampaignConfig::new(seed) };
            let report = run_campaign_with(&suite, &corpus_standard(), &cfg);
            emit_report(&report, format, &out)?;
            summarize(&report);
            println!("{} records, {} failed, {} skipped", report.records.len(), report.failures(), report.skips.len());
            Ok(report.failures() == 0)
        }
        Command::Bounds { which: BoundsCommand::Lemd4 { log_w, n, b } } => {
            if log_w == 0 || log_w > 120 {
                bail!("--logW must be in 1..=120");
            }
            let records = check_lemd4_thresholds(1u128 << log_w, n, b)?;
            let mut ok = true;
            for r in &records {
                let margin = r.extra_num("margin").map_or(String::new(), |m| format!(" margin={m:.6}"));
                println!("{}: {} <= {} holds={}{margin}", r.instance, r.lhs, r.rhs, r.holds);
                ok &= r.holds;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
