use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use netrel::catalog::{self, CatalogItem};
use netrel::chains::{decompose, enlarge, spectrum_via_chain_formula};
use netrel::cuts::{
    cut_spectrum, cut_type_census, enumerate_cuts, mu_k_bruteforce, spanning_tree_count,
};
use netrel::reliability::{
    compare_near_one, compare_near_zero, curve_csv, evaluate, find_crossings, format_significant,
    polynomial_from_spectrum,
};
use netrel::verify::{main_theorem_curves, verify_paper};
use netrel::{Budget, CutSpectrum, Error, MultiGraph};

/// Exact all-terminal network reliability.
///
/// GRAPH arguments accept an edge-list file, a catalog name (W, Q, G1, G2,
/// G3) or an enlargement such as `W^M1_2`.
#[derive(Parser)]
#[command(name = "netrel", version)]
struct Cli {
    /// Cap on the number of edge subsets any enumeration may examine.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (or list) the k-edge-cuts.
    Cuts {
        graph: String,
        #[arg(short)]
        k: usize,
        /// Print every cut.
        #[arg(long)]
        list: bool,
        /// Print the cut-type census as JSON.
        #[arg(long, conflicts_with = "list")]
        census: bool,
    },
    /// Cut spectrum as CSV.
    Spectrum {
        graph: String,
        /// Enumerate only up to this size.
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Number of spanning trees.
    Trees { graph: String },
    /// Chain decomposition and distillation as JSON.
    Chains { graph: String },
    /// Subdivide a catalog graph: edges of Y become chains of length s, all others s+1.
    Enlarge {
        base: String,
        /// Catalog edge set, or 0 for none.
        y: String,
        s: usize,
    },
    /// Reliability polynomial, optionally evaluated or tabulated.
    Reliability {
        graph: String,
        /// Evaluate exactly at this failure probability (e.g. 1/3, 0.25).
        #[arg(long)]
        rho: Option<String>,
        /// Write a `rho,R` CSV curve here.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Compare two graphs near rho = 0 or rho = 1.
    Compare {
        a: String,
        b: String,
        #[arg(long, value_parser = ["0", "1"])]
        near: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Isolate the sign changes of R_a - R_b in (0, 1).
    Crossings {
        a: String,
        b: String,
        #[arg(long, default_value = "1e-9")]
        tolerance: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Named graphs and edge sets.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run every cut-count and reliability check for one s.
    VerifyPaper {
        #[arg(long)]
        s: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Omit timing metadata so reports are byte-identical.
        #[arg(long)]
        no_meta: bool,
        /// Also write reliability curves of W^M1_s and W^X_s into this directory.
        #[arg(long)]
        curves: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print a graph as an edge list, or an edge set by display names.
    Dump {
        name: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Brute force for small graphs, chain formula otherwise.
    Auto,
    Brute,
    Chains,
}

const BRUTE_LIMIT: usize = 26;

fn resolve(reference: &str) -> netrel::Result<MultiGraph> {
    if Path::new(reference).is_file() {
        let text = fs::read_to_string(reference).map_err(|e| io_error(Path::new(reference), e))?;
        return text.parse();
    }
    if reference.contains('^') {
        return enlarge(&catalog::parse_enlargement(reference)?);
    }
    Ok(catalog::graph(reference)?.graph)
}

fn spectrum(g: &MultiGraph, method: Method, budget: Budget) -> netrel::Result<CutSpectrum> {
    let brute = match method {
        Method::Auto => g.m() <= BRUTE_LIMIT,
        Method::Brute => true,
        Method::Chains => false,
    };
    if brute {
        cut_spectrum(g, None, budget)
    } else {
        spectrum_via_chain_formula(&decompose(g)?, budget)
    }
}

/// `p/q`, a decimal like `0.25`, or scientific like `1e-9`, read exactly.
fn parse_rational(text: &str) -> netrel::Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a number: {text}"));
    if text.contains('/') {
        return text.parse().map_err(|_| bad());
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let exp = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    Ok(if exp >= 0 {
        BigRational::from(digits * ten.pow(exp as u32))
    } else {
        BigRational::new(digits, ten.pow(exp.unsigned_abs()))
    })
}

enum Outcome {
    Ok,
    Failed,
}

fn run(cli: Cli) -> netrel::Result<Outcome> {
    let budget = Budget(cli.budget);
    match cli.command {
        Command::Cuts {
            graph,
            k,
            list,
            census,
        } => {
            let g = resolve(&graph)?;
            if census {
                println!("{}", cut_type_census(&g, k, budget)?.to_json());
            } else if list {
                for cut in enumerate_cuts(&g, k, budget)? {
                    println!("{}", cut.display(&g));
                }
            } else {
                println!("{}", mu_k_bruteforce(&g, k, budget)?);
            }
        }
        Command::Spectrum {
            graph,
            k_max,
            method,
        } => {
            let g = resolve(&graph)?;
            let s = match k_max {
                Some(k) => cut_spectrum(&g, Some(k), budget)?,
                None => spectrum(&g, method, budget)?,
            };
            print!("{}", s.to_csv());
        }
        Command::Trees { graph } => println!("{}", spanning_tree_count(&resolve(&graph)?)),
        Command::Chains { graph } => {
            let report = decompose(&resolve(&graph)?)?.report();
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Command::Enlarge { base, y, s } => {
            print!(
                "{}",
                enlarge(&catalog::enlargement(&base, &y, s)?)?.to_annotated_edge_list()
            );
        }
        Command::Reliability {
            graph,
            rho,
            curve,
            points,
            method,
        } => {
            let g = resolve(&graph)?;
            let p = polynomial_from_spectrum(&spectrum(&g, method, budget)?)?;
            println!("R(rho) = {}", p.to_text());
            if let Some(rho) = rho {
                let r = evaluate(&p, &parse_rational(&rho)?)?;
                let approx = to_f64(&r);
                println!("R({rho}) = {r} ~ {}", format_significant(approx, 12));
            }
            if let Some(path) = curve {
                write(&path, &curve_csv(&p, points)?)?;
            }
        }
        Command::Compare { a, b, near, method } => {
            let sa = spectrum(&resolve(&a)?, method, budget)?;
            let sb = spectrum(&resolve(&b)?, method, budget)?;
            let c = if near == "0" {
                compare_near_zero(&sa, &sb)?
            } else {
                compare_near_one(&sa, &sb)?
            };
            println!("{}", c.to_json());
        }
        Command::Crossings {
            a,
            b,
            tolerance,
            method,
        } => {
            let pa = polynomial_from_spectrum(&spectrum(&resolve(&a)?, method, budget)?)?;
            let pb = polynomial_from_spectrum(&spectrum(&resolve(&b)?, method, budget)?)?;
            let xs = find_crossings(&pa, &pb, &parse_rational(&tolerance)?)?;
            let out: Vec<_> = xs
                .iter()
                .map(|x| {
                    json!({
                        "lo": x.lo.to_string(),
                        "hi": x.hi.to_string(),
                        "lo_approx": to_f64(&x.lo),
                        "hi_approx": to_f64(&x.hi),
                        "a_better_below": x.sign_at_lo == std::cmp::Ordering::Greater,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::list() {
                    println!("{name}");
                }
            }
            CatalogAction::Dump { name } => match catalog::get(&name)? {
                CatalogItem::Graph(entry) => print!("{}", entry.graph.to_annotated_edge_list()),
                CatalogItem::EdgeSet { host, set, .. } => {
                    println!("{}", set.display(&host.graph));
                }
            },
        },
        Command::VerifyPaper {
            s,
            json,
            no_meta,
            curves,
        } => {
            let report = verify_paper(s, budget, !no_meta)?;
            let text = report.to_json();
            match json {
                Some(path) => write(&path, &(text + "\n"))?,
                None => println!("{text}"),
            }
            if let Some(dir) = curves {
                fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
                for (name, csv) in main_theorem_curves(s, 1001, budget)? {
                    write(&dir.join(format!("{name}.csv")), &csv)?;
                }
            }
            for (section, record) in report.failures() {
                eprintln!("FAIL {section}/{}: {}", record.id, record.description);
            }
            eprintln!("verify-paper s={s}: {}", report.overall);
            if !report.passed() {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn write(path: &Path, contents: &str) -> netrel::Result<()> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
