use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use kneser_core::catalan::{necklace_of, orbits};
use kneser_core::decompose::{
    classify_components, delete_colors, expected_census, ColorSet, ComponentSignature,
};
use kneser_core::hamilton::{
    find_hamiltonian_cycle, recursion_pipeline, BaseCycle, SearchBudget, SearchOutcome,
};
use kneser_core::io::{export, from_json, Format};
use kneser_core::suite::{run_suite, Suite};
use kneser_core::{Error, FamilyId, LabeledGraph};

#[derive(Parser)]
#[command(
    name = "kneser",
    version,
    about = "Kneser, odd and middle levels graph laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it as json, dot or an edge list.
    Build {
        /// kneser, bipartite-kneser, odd or middle
        family: String,
        /// n k for the Kneser families, n for odd and middle
        #[arg(required = true)]
        params: Vec<usize>,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Convert a graph JSON file to another format.
    Export {
        input: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Delete colors and compare the component census with the closed form.
    Decompose {
        family: DecomposeFamily,
        n: usize,
        /// Comma-separated colors to delete.
        #[arg(long, value_delimiter = ',', conflicts_with = "k")]
        colors: Option<Vec<usize>>,
        /// Delete the top k colors.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        report: ReportFormat,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Search for a Hamiltonian cycle, or run the recursion diagnostics.
    Hamilton {
        family: Option<String>,
        params: Vec<usize>,
        /// Run the lift-and-embed diagnostics at level N instead of a search.
        #[arg(long, value_name = "N", conflicts_with = "family")]
        pipeline: Option<usize>,
        #[arg(long, default_value_t = 60)]
        max_seconds: u64,
        #[arg(long, default_value_t = 50_000_000)]
        max_expansions: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the cycle here, one vertex index per line.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Exit with status 1 when no cycle is found.
        #[arg(long)]
        expect_cycle: bool,
    },
    /// List the rotation orbits of O_n with their necklaces.
    Orbits { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeFamily {
    Odd,
    Middle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Error>().is_some_and(|e| {
                matches!(
                    e,
                    Error::Parameter(_)
                        | Error::Unsupported(_)
                        | Error::Degenerate(_)
                        | Error::Format(_)
                )
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Build {
            family,
            params,
            format,
            out,
        } => {
            let format: Format = format.parse()?;
            let g = LabeledGraph::build(FamilyId::from_name(&family, &params)?)?;
            emit(&export(&g, format), out.as_ref())?;
            Ok(true)
        }
        Command::Export { input, format, out } => {
            let format: Format = format.parse()?;
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            emit(&export(&from_json(&text)?, format), out.as_ref())?;
            Ok(true)
        }
        Command::Decompose {
            family,
            n,
            colors,
            k,
            report,
        } => decompose(family, n, colors, k, report),
        Command::Verify { suite, max_n } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, max_n);
            println!("{report}");
            Ok(report.passed())
        }
        Command::Hamilton {
            family,
            params,
            pipeline,
            max_seconds,
            max_expansions,
            seed,
            out,
            expect_cycle,
        } => {
            let budget = SearchBudget {
                max_expansions,
                max_time: Duration::from_secs(max_seconds),
                seed,
            };
            match (pipeline, family) {
                (Some(n), _) => pipeline_report(n, budget),
                (None, Some(family)) => search(&family, &params, budget, out, expect_cycle),
                (None, None) => Err(Error::Parameter(
                    "give a family and parameters, or --pipeline N".into(),
                )
                .into()),
            }
        }
        Command::Orbits { n } => {
            let g = LabeledGraph::build(FamilyId::Odd(n))?;
            let set = orbits(n)?;
            println!("{} orbits of O_{n} under rotation", set.count());
            println!("{:<20}  {:>4}  necklace", "representative", "size");
            for (rep, orbit) in set.representatives.iter().zip(&set.orbits) {
                let neck = necklace_of(g.vertex(orbit[0]), n)?;
                println!(
                    "{:<20}  {:>4}  {}",
                    rep.to_string(),
                    orbit.len(),
                    neck.canonical
                );
            }
            Ok(set.count_matches_catalan())
        }
    }
}

fn decompose(
    family: DecomposeFamily,
    n: usize,
    colors: Option<Vec<usize>>,
    k: Option<usize>,
    report: ReportFormat,
) -> anyhow::Result<bool> {
    let set = match (colors, k) {
        (Some(c), _) => ColorSet::new(n, &c)?,
        (None, Some(k)) => ColorSet::canonical(n, k)?,
        (None, None) => bail!(Error::Parameter("give --colors or --k".into())),
    };
    let fam = match family {
        DecomposeFamily::Odd => FamilyId::Odd(n),
        DecomposeFamily::Middle => FamilyId::MiddleLevels(n),
    };
    let g = LabeledGraph::build(fam)?;
    let census = classify_components(&delete_colors(&g, set.block())?);
    let actual = census.counts();
    let expected = expected_census(fam, n, set.len())?;
    let mut rows: Vec<ComponentSignature> = actual.keys().chain(expected.keys()).copied().collect();
    rows.sort();
    rows.dedup();
    let count = |m: &std::collections::BTreeMap<ComponentSignature, usize>, s| {
        m.get(&s).copied().unwrap_or(0)
    };
    match report {
        ReportFormat::Table => {
            println!(
                "{fam} minus colors {}: {} components",
                set.block(),
                census.total()
            );
            println!("{:<18}  {:>8}  {:>8}", "signature", "expected", "actual");
            for s in &rows {
                println!(
                    "{:<18}  {:>8}  {:>8}",
                    s.to_string(),
                    count(&expected, *s),
                    count(&actual, *s)
                );
            }
        }
        ReportFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|s| serde_json::json!({"signature": s.to_string(), "expected": count(&expected, *s), "actual": count(&actual, *s)}))
                .collect();
            let doc = serde_json::json!({
                "family": fam.to_string(),
                "colors": set.block().elements(),
                "components": census.total(),
                "census": rows,
            });
            println!("{doc}");
        }
    }
    Ok(actual == expected)
}

fn search(
    family: &str,
    params: &[usize],
    budget: SearchBudget,
    out: Option<PathBuf>,
    expect_cycle: bool,
) -> anyhow::Result<bool> {
    let fam = FamilyId::from_name(family, params)?;
    let g = LabeledGraph::build(fam)?;
    let report = find_hamiltonian_cycle(&g, budget);
    let stats = format!("{} expansions, {:.2?}", report.expansions, report.elapsed);
    match &report.outcome {
        SearchOutcome::Found(cycle) => {
            println!(
                "{fam}: Hamiltonian cycle of length {} ({stats})",
                cycle.len()
            );
            if let Some(path) = out {
                let lines: String = cycle.vertices().iter().map(|v| format!("{v}\n")).collect();
                emit(&lines, Some(&path))?;
            }
            Ok(true)
        }
        SearchOutcome::None { reason } => {
            println!("{fam}: non-Hamiltonian (exhaustive): {reason} ({stats})");
            Ok(!expect_cycle)
        }
        SearchOutcome::BudgetExhausted => {
            println!("{fam}: budget exhausted, undecided ({stats})");
            Ok(!expect_cycle)
        }
    }
}

fn pipeline_report(n: usize, budget: SearchBudget) -> anyhow::Result<bool> {
    let r = recursion_pipeline(n, budget)?;
    let lower = n - 1;
    let base = match &r.base_search {
        SearchOutcome::Found(c) => format!("Hamiltonian cycle of length {}", c.len()),
        SearchOutcome::None { .. } => "non-Hamiltonian (exhaustive)".to_string(),
        SearchOutcome::BudgetExhausted => "budget exhausted".to_string(),
    };
    println!("recursion at n = {n}");
    println!("  base search in O_{lower}: {base}");
    let lift = match r.base_cycle {
        BaseCycle::Lifted { single: true, .. } => {
            format!("SingleCircuit({})", r.middle_circuits[0])
        }
        BaseCycle::Lifted { single: false, .. } => {
            format!(
                "TwoCircuits({}, {})",
                r.middle_circuits[0], r.middle_circuits[1]
            )
        }
        BaseCycle::DirectInMiddle => format!("direct search in B_{lower}"),
        BaseCycle::Unavailable => "unavailable".to_string(),
    };
    println!("  lift classification: {lift}");
    println!(
        "  circuits in B_{lower}: {:?} (Hamiltonian: {})",
        r.middle_circuits, r.middle_hamiltonian
    );
    println!(
        "  embedded vertices of O_{n}: {} of {}",
        r.embedded_vertices, r.order
    );
    println!(
        "  remainder R_{n}^2: {} vertices (odd: {})",
        r.remainder_size, r.remainder_odd
    );
    println!(
        "  connectors: {} (shared middles {}, unreached remainder vertices {}, all in remainder: {})",
        r.connectors, r.shared_connector_vertices, r.unreached_remainder, r.connectors_in_remainder
    );
    if let Some(direct) = &r.direct_search {
        let text = match direct {
            SearchOutcome::Found(c) => format!("Hamiltonian cycle of length {}", c.len()),
            SearchOutcome::None { .. } => "non-Hamiltonian (exhaustive)".to_string(),
            SearchOutcome::BudgetExhausted => "budget exhausted".to_string(),
        };
        println!("  direct search in O_{n}: {text}");
    }
    Ok(true)
}
