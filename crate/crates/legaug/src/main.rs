//! Command line front end: read a front file, run a pipeline stage, print a
//! report. JSON is the machine format and is byte-identical across runs;
//! `--format table` renders the same data as aligned text.
//!
//! Exit codes: 0 on success (and all-equal verification), 1 when verify or
//! partition finds a mismatch, 2 on usage or validation errors.

use clap::{Parser, ValueEnum};
use legaug::algebra::fq::Fq;
use legaug::aug::{brute_solutions, DEFAULT_CAP};
use legaug::dga::Dga;
use legaug::error::{Error, Result};
use legaug::front::{parse_front_source, FrontDiagram};
use legaug::maslov::{check_grading, MaslovPotential};
use legaug::mcs::aform::{count_a_forms, enumerate_a_forms, theta_point};
use legaug::mcs::srform::{enumerate_sr_forms, run_sr_form};
use legaug::mcs::transform::{phi, psi};
use legaug::report::{self, PartitionClass, PartitionRow, TransformReport};
use legaug::rulings::{enumerate_rulings, ruling_polynomial, ruling_stats};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Verb {
    /// Parse and validate a front file, reporting its shape.
    Parse,
    /// Enumerate the m-graded normal rulings.
    Rulings,
    /// The m-graded ruling polynomial.
    Rp,
    /// Generators and differentials of the Chekanov-Eliashberg algebra.
    Dga,
    /// Count augmentations by the chosen method(s).
    Aug,
    /// Check all three counts and the ruling polynomial identity.
    Verify,
    /// Count A-form Morse complex sequences.
    McsCount,
    /// Rewrite every SR-form to its A-form, with dumps and move traces.
    McsPhi,
    /// Rewrite every A-form to its SR-form, with dumps and move traces.
    McsPsi,
    /// Split the augmentation set by ruling and check the class sizes.
    Partition,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Mcs,
    Ruling,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "legaug", version, about = "Legendrian link invariants from plat front diagrams")]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Front file to read.
    file: String,
    /// Grading modulus.
    #[arg(long, default_value_t = 0)]
    m: i64,
    /// Field orders, comma separated prime powers.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Maslov offsets, one integer per component, overriding the file.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    offsets: Option<Vec<i64>>,
    /// Marked point override comp:cusp (1-based), repeatable.
    #[arg(long = "mark")]
    marks: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Ceiling on enumeration space sizes.
    #[arg(long, default_value_t = DEFAULT_CAP as u64)]
    cap: u64,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LCH_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            print_out(&format!("{}\n", report::error_json(&e)));
            ExitCode::from(2)
        }
    }
}

fn load(cli: &Cli) -> Result<FrontDiagram> {
    let text = std::fs::read_to_string(&cli.file)
        .map_err(|e| Error::Shape(format!("cannot read {}: {e}", cli.file)))?;
    let src = parse_front_source(&text)?;
    let offsets = cli.offsets.clone().or(src.offsets);
    let marks = if cli.marks.is_empty() {
        src.marks
    } else {
        cli.marks
            .iter()
            .map(|s| {
                let (comp, ord) = s
                    .split_once(':')
                    .ok_or_else(|| Error::Mark(format!("mark '{s}' is not comp:cusp")))?;
                let comp =
                    comp.parse().map_err(|_| Error::Mark(format!("bad component in '{s}'")))?;
                let ord =
                    ord.parse().map_err(|_| Error::Mark(format!("bad cusp ordinal in '{s}'")))?;
                Ok((comp, ord))
            })
            .collect::<Result<Vec<_>>>()?
    };
    FrontDiagram::new(src.events, offsets, &marks, None)
}

/// Write to stdout without panicking when the consumer hangs up early.
fn print_out(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(s.as_bytes()).and_then(|_| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let json = serde_json::to_value(value)
        .map_err(|e| Error::Shape(format!("report serialization failed: {e}")))?;
    match cli.format {
        Format::Json => print_out(&format!("{json}\n")),
        Format::Table => print_out(&report::render_table(&json)),
    }
    Ok(())
}

#[derive(Serialize)]
struct Rows<T: Serialize> {
    rows: Vec<T>,
}

fn run(cli: &Cli) -> Result<bool> {
    let d = load(cli)?;
    let mu = MaslovPotential::compute(&d);
    let m = cli.m;
    let cap = cli.cap as u128;
    match cli.verb {
        Verb::Parse => {
            emit(cli, &report::parse_report(&d))?;
        }
        Verb::Rulings => {
            check_grading(&d, m)?;
            emit(cli, &report::rulings_report(&d, &mu, m)?)?;
        }
        Verb::Rp => {
            check_grading(&d, m)?;
            emit(cli, &ruling_polynomial(&d, &mu, m)?)?;
        }
        Verb::Dga => {
            emit(cli, &report::dga_report(&Dga::new(&d)))?;
        }
        Verb::Aug => {
            let dga = Dga::new(&d);
            let methods: &[&str] = match cli.method {
                Method::Brute => &["brute"],
                Method::Mcs => &["mcs"],
                Method::Ruling => &["ruling"],
                Method::All => &["brute", "mcs", "ruling"],
            };
            let mut rows = Vec::new();
            for &q in &cli.q {
                for &method in methods {
                    rows.push(report::aug_row(&d, &dga, &mu, m, q, method, cap)?);
                }
            }
            emit(cli, &Rows { rows })?;
        }
        Verb::Verify => {
            let dga = Dga::new(&d);
            let mut rows = Vec::new();
            for &q in &cli.q {
                rows.push(report::verify_row(&d, &dga, &mu, m, q, cap)?);
            }
            let clean = rows.iter().all(|r| r.equal);
            emit(cli, &Rows { rows })?;
            return Ok(clean);
        }
        Verb::McsCount => {
            let mut rows = Vec::new();
            for &q in &cli.q {
                rows.push(report::CountRow { m, q, count: count_a_forms(&d, &mu, m, q, cap)? });
            }
            emit(cli, &Rows { rows })?;
        }
        Verb::McsPhi => {
            let mut rows = Vec::new();
            for &q in &cli.q {
                let field = Fq::from_order(q)?;
                for ruling in enumerate_rulings(&d, &mu, m)? {
                    for sr in enumerate_sr_forms(&d, &ruling, &field, m, cap)? {
                        let run = run_sr_form(&d, &ruling, &field, m, &sr)?;
                        let a = phi(&d, &ruling, &field, m, &sr)?;
                        rows.push(TransformReport {
                            m,
                            q,
                            ruling: ruling.mask,
                            before: report::sr_dump(&d, &sr, &run.t_values),
                            after: report::a_dump(&d, &a),
                            moves: report::phi_trace(&d, &ruling, m),
                        });
                    }
                }
            }
            emit(cli, &Rows { rows })?;
        }
        Verb::McsPsi => {
            let mut rows = Vec::new();
            for &q in &cli.q {
                let field = Fq::from_order(q)?;
                for a in enumerate_a_forms(&d, &mu, m, q, cap)? {
                    let (ruling, sr) = psi(&d, &field, m, &a)?;
                    rows.push(TransformReport {
                        m,
                        q,
                        ruling: ruling.mask,
                        before: report::a_dump(&d, &a),
                        after: report::sr_dump(&d, &sr, &a.t_values),
                        moves: report::psi_trace(&d, &ruling, m),
                    });
                }
            }
            emit(cli, &Rows { rows })?;
        }
        Verb::Partition => {
            let dga = Dga::new(&d);
            let comps = d.n_components();
            let mut rows = Vec::new();
            for &q in &cli.q {
                let field = Fq::from_order(q)?;
                let mut classes = Vec::new();
                let mut seen = std::collections::BTreeSet::new();
                let mut disjoint = true;
                for ruling in enumerate_rulings(&d, &mu, m)? {
                    let st = ruling_stats(&d, &ruling, m);
                    let mut size = 0usize;
                    for sr in enumerate_sr_forms(&d, &ruling, &field, m, cap)? {
                        let a = phi(&d, &ruling, &field, m, &sr)?;
                        disjoint &= seen.insert(theta_point(&d, &dga, &field, &a));
                        size += 1;
                    }
                    classes.push(PartitionClass {
                        mask: ruling.mask,
                        j: st.j,
                        r: st.r,
                        size,
                        expected: report::class_size(
                            &field,
                            u32::try_from(st.j + comps as i64)
                                .expect("switch count at least cusps minus components"),
                            u32::try_from(st.r).expect("free count is nonnegative"),
                        ),
                    });
                }
                let brute: std::collections::BTreeSet<_> =
                    brute_solutions(&dga, m, q, cap)?.into_iter().collect();
                let covers = seen == brute;
                let sizes_ok = classes.iter().all(|c| c.size as u128 == c.expected);
                rows.push(PartitionRow {
                    m,
                    q,
                    classes,
                    union_size: seen.len(),
                    brute: brute.len() as u128,
                    disjoint,
                    covers,
                    equal: disjoint && covers && sizes_ok,
                });
            }
            let clean = rows.iter().all(|r| r.equal);
            emit(cli, &Rows { rows })?;
            return Ok(clean);
        }
    }
    Ok(true)
}
