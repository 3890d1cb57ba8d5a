use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use regulous::blowup::{
    check_regulous, kmax, resolve_indeterminacy2, stratify2, Budget, KMax, Verdict,
};
use regulous::consets::{closure_algorithm, zero_set2, ConstructibleSet};
use regulous::fixtures::{self, load_catalog, load_embedded, replay, Replay};
use regulous::ideal::{
    loja_exponent, nonmembership_by_order, radical_membership, verify_certificate, verify_nss_certificate,
    CertificateJson, Check, LojaOutcome, NssCert, NssJson, OrderVerdict, RadicalOutcome,
};
use regulous::mesh::{height_field, to_csv, to_obj, zero_samples};
use regulous::rational::{fmt_point, parse_rational, Rational};
use regulous::{parse_expr, Ambient, Arc, Expr, RatFun};

#[derive(Parser)]
#[command(name = "regulous", version, about = "Decide and certify regulous functions")]
struct Cli {
    /// Comma-separated variable names
    #[arg(long, global = true, default_value = "x,y")]
    vars: String,

    /// Maximum blow-up depth
    #[arg(long, global = true, default_value_t = 12)]
    budget: u32,

    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,

    /// Write the main artifact (certificate, mesh) to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide k-regulousness
    Check {
        expr: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Largest k with f k-regulous
    Kmax {
        expr: String,
        #[arg(long, default_value_t = 4)]
        cap: u32,
    },
    /// Resolve the indeterminacy points of a plane function
    Resolve { expr: String },
    /// Zero set of a regulous plane function or of a polynomial
    Zeroset { expr: String },
    /// Open stratum and indeterminacy points with their values
    Stratify { expr: String },
    /// Smallest N with f^N g k-regulous
    Loja {
        f: String,
        g: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        ncap: u32,
    },
    /// Decide f in the radical of g
    Radmember {
        f: String,
        g: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        ncap: u32,
    },
    /// Verify a Nullstellensatz certificate file
    NssVerify { file: PathBuf },
    /// Verify any certificate file
    Verify { file: PathBuf },
    /// Order test for ideal nonmembership along a line
    OrderNonmember {
        target: String,
        /// Generators separated by `;`
        #[arg(long)]
        gens: String,
        /// Linear parametrization such as "3, t"
        #[arg(long)]
        line: String,
    },
    /// Run the closure algorithm on an incidence file
    Closure { file: PathBuf },
    /// Replay the fixture catalog
    Fixtures {
        /// Catalog file; the bundled catalog when omitted
        catalog: Option<PathBuf>,
    },
    /// Height field of a plane function, or zero-set samples of a polynomial
    Mesh {
        expr: String,
        /// x0,x1,y0,y1 (plus z0,z1 for zero sets)
        #[arg(long, default_value = "-1,1,-1,1", allow_hyphen_values = true)]
        region: String,
        #[arg(long, default_value_t = 50)]
        resolution: u32,
        #[arg(long, value_enum, default_value_t = MeshFormat::Obj)]
        format: MeshFormat,
        /// Variable to solve for when sampling a zero set
        #[arg(long)]
        solve: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Obj,
    Csv,
}

/// Exit status for a completed run.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Decided,
    Unknown,
    Failed,
}

struct Report {
    text: String,
    json: Value,
    status: Status,
}

impl Report {
    fn new(text: impl Into<String>, json: Value, status: Status) -> Self {
        Report { text: text.into(), json, status }
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let text = match cli.json {
                true => serde_json::to_string_pretty(&r.json).expect("json values serialize"),
                false => r.text,
            };
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            match r.status {
                Status::Decided => ExitCode::SUCCESS,
                Status::Unknown => ExitCode::from(2),
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn verdict_status(v: &Verdict) -> Status {
    if v.is_unknown() {
        Status::Unknown
    } else {
        Status::Decided
    }
}

fn write_out(path: &Option<PathBuf>, contents: &str) -> Result<(), String> {
    if let Some(p) = path {
        fs::write(p, contents).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let amb = Ambient::parse(&cli.vars).map_err(err)?;
    let budget = Budget { depth: cli.budget };
    let expr = |s: &str| parse_expr(s, &amb).map_err(err);
    let ratfun = |s: &str| -> Result<RatFun, String> { expr(s)?.to_ratfun(&amb).map_err(err) };
    let plane = |s: &str| -> Result<RatFun, String> {
        if amb.len() != 2 {
            return Err(format!("this command needs exactly 2 variables, got {}", amb.len()));
        }
        ratfun(s)
    };
    match &cli.command {
        Command::Check { expr: e, k } => {
            let v = check_regulous(&expr(e)?, &amb, *k, budget).map_err(err)?;
            let j = serde_json::to_value(v.to_json()).map_err(err)?;
            Ok(Report::new(v.to_string(), j, verdict_status(&v)))
        }
        Command::Kmax { expr: e, cap } => {
            let r = kmax(&plane(e)?, *cap, budget).map_err(err)?;
            let (j, status) = match &r {
                KMax::Exact { k, witness } => (json!({"kmax": k, "witness": witness.to_json()}), Status::Decided),
                KMax::NotRegulous(w) => (json!({"kmax": null, "witness": w.to_json()}), Status::Decided),
                KMax::AtLeast(c) => (json!({"at_least": c}), Status::Decided),
                KMax::Unknown(reason) => (json!({"unknown": reason}), Status::Unknown),
            };
            Ok(Report::new(r.to_string(), j, status))
        }
        Command::Resolve { expr: e } => {
            let tree = resolve_indeterminacy2(&plane(e)?, budget).map_err(err)?;
            let j = serde_json::to_value(tree.to_json()).map_err(err)?;
            let mut lines = vec![format!("status {:?}, depth {}, {} charts", tree.status, tree.depth, tree.charts.len())];
            for c in &tree.charts {
                let indent = "  ".repeat(c.depth as usize);
                let head = match (c.parent, &c.center) {
                    (Some((p, w)), Some(center)) => format!("chart {} ({w:?} over {} at {})", c.id, p, fmt_point(center)),
                    _ => format!("chart {} (root)", c.id),
                };
                lines.push(format!("{indent}{head}: {}", c.pullback));
            }
            let status = match tree.status {
                regulous::blowup::TreeStatus::Resolved => Status::Decided,
                _ => Status::Unknown,
            };
            Ok(Report::new(lines.join("\n"), j, status))
        }
        Command::Zeroset { expr: e } => {
            let f = ratfun(e)?;
            let s = match f.as_poly() {
                Some(p) => ConstructibleSet::zero_set(&p).map_err(err)?,
                None if amb.len() == 2 => match zero_set2(&f, budget) {
                    Ok(s) => s,
                    Err(regulous::Error::Undecided(r)) => {
                        return Ok(Report::new(format!("Unknown: {r}"), json!({"unknown": r}), Status::Unknown))
                    }
                    Err(e) => return Err(err(e)),
                },
                None => return Err("zero sets of non-polynomial functions need 2 variables".into()),
            };
            let j = serde_json::to_value(s.to_json()).map_err(err)?;
            Ok(Report::new(s.to_string(), j, Status::Decided))
        }
        Command::Stratify { expr: e } => {
            let f = plane(e)?;
            match stratify2(&f, budget) {
                Ok(s) => {
                    let mut text = format!("open: {} != 0", s.open);
                    for (p, v) in &s.points {
                        text.push_str(&format!("\npoint {}: value {}", fmt_point(p), regulous::rational::fmt_rational(v)));
                    }
                    Ok(Report::new(text, serde_json::to_value(s.to_json()).map_err(err)?, Status::Decided))
                }
                Err(regulous::Error::Undecided(r)) => {
                    Ok(Report::new(format!("Unknown: {r}"), json!({"unknown": r}), Status::Unknown))
                }
                Err(e) => Err(err(e)),
            }
        }
        Command::Loja { f, g, k, ncap } => match loja_exponent(&expr(f)?, &expr(g)?, &amb, *k, *ncap, budget).map_err(err)? {
            LojaOutcome::Found(c) => {
                let cert = CertificateJson::Loja(c.to_json());
                let text = serde_json::to_string_pretty(&cert).map_err(err)?;
                write_out(&cli.out, &text)?;
                Ok(Report::new(format!("N = {}, h = {}", c.n, c.h), serde_json::to_value(&cert).map_err(err)?, Status::Decided))
            }
            LojaOutcome::Unknown(r) => Ok(Report::new(format!("Unknown: {r}"), json!({"unknown": r}), Status::Unknown)),
        },
        Command::Radmember { f, g, k, ncap } => {
            match radical_membership(&expr(f)?, &expr(g)?, &amb, *k, *ncap, budget).map_err(err)? {
                RadicalOutcome::Member(c) => {
                    let cert = CertificateJson::Radical(c.to_json());
                    let text = serde_json::to_string_pretty(&cert).map_err(err)?;
                    write_out(&cli.out, &text)?;
                    Ok(Report::new(
                        format!("Member: N = {}, h = {}", c.n, c.h),
                        serde_json::to_value(&cert).map_err(err)?,
                        Status::Decided,
                    ))
                }
                RadicalOutcome::Refuted(p) => Ok(Report::new(
                    format!("Refuted at {}: g vanishes and f does not", fmt_point(&p)),
                    json!({"refuted": p.iter().map(regulous::rational::fmt_rational).collect::<Vec<_>>()}),
                    Status::Decided,
                )),
                RadicalOutcome::Unknown(r) => Ok(Report::new(format!("Unknown: {r}"), json!({"unknown": r}), Status::Unknown)),
            }
        }
        Command::NssVerify { file } => {
            let text = read(file)?;
            let check = match serde_json::from_str::<CertificateJson>(&text) {
                Ok(c @ CertificateJson::Nss(_)) => verify_certificate(&c, budget).map_err(err)?,
                Ok(_) => return Err("not a Nullstellensatz certificate".into()),
                Err(_) => {
                    let j: NssJson = serde_json::from_str(&text).map_err(err)?;
                    verify_nss_certificate(&NssCert::from_json(&j).map_err(err)?, budget).map_err(err)?
                }
            };
            Ok(check_report(check))
        }
        Command::Verify { file } => {
            let c: CertificateJson = serde_json::from_str(&read(file)?).map_err(err)?;
            Ok(check_report(verify_certificate(&c, budget).map_err(err)?))
        }
        Command::OrderNonmember { target, gens, line } => {
            let gens = gens.split(';').map(|g| ratfun(g.trim())).collect::<Result<Vec<_>, _>>()?;
            let line = Arc::parse(line).map_err(err)?;
            Ok(match nonmembership_by_order(&ratfun(target)?, &gens, &line).map_err(err)? {
                OrderVerdict::NonMember(r) => Report::new(
                    format!("NonMember: {r}"),
                    json!({"verdict": "non_member", "report": r.to_string()}),
                    Status::Decided,
                ),
                OrderVerdict::Inconclusive(r) => Report::new(
                    format!("Inconclusive: {r}"),
                    json!({"verdict": "inconclusive", "report": r.to_string()}),
                    Status::Unknown,
                ),
            })
        }
        Command::Closure { file } => {
            let inc = fixtures::incidence(&read(file)?).map_err(err)?;
            let r = closure_algorithm(&inc).map_err(err)?;
            let mut lines: Vec<String> = r.audit.iter().map(|a| a.to_string()).collect();
            lines.push(format!("closure: {{{}}} after {} passes (dimension {})", r.included.join(", "), r.passes, r.dim));
            Ok(Report::new(lines.join("\n"), serde_json::to_value(&r).map_err(err)?, Status::Decided))
        }
        Command::Fixtures { catalog } => {
            let cases = match catalog {
                None => fixtures::catalog().map_err(err)?,
                Some(path) => {
                    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                    let load = move |name: &str| read(&dir.join(name)).map_err(regulous::Error::Malformed);
                    load_catalog(&read(path)?, &load).map_err(err)?
                }
            };
            let dir = catalog.as_ref().and_then(|p| p.parent().map(Path::to_path_buf));
            let load = move |name: &str| -> regulous::Result<String> {
                match &dir {
                    Some(d) => read(&d.join(name)).map_err(regulous::Error::Malformed),
                    None => load_embedded(name),
                }
            };
            let mut results: Vec<Replay> = Vec::new();
            for c in &cases {
                results.push(replay(c, budget, &load).unwrap_or_else(|e| Replay {
                    id: c.id().to_string(),
                    passed: false,
                    detail: format!("error: {e}"),
                }));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut lines: Vec<String> = results.iter().map(Replay::to_string).collect();
            lines.push(format!("{} of {} fixtures match", results.len() - failed, results.len()));
            let status = if failed == 0 { Status::Decided } else { Status::Failed };
            Ok(Report::new(lines.join("\n"), serde_json::to_value(&results).map_err(err)?, status))
        }
        Command::Mesh { expr: e, region, resolution, format, solve } => {
            let bounds = region.split(',').map(|s| parse_rational(s)).collect::<Result<Vec<Rational>, _>>().map_err(err)?;
            let (text, count) = match solve {
                None => {
                    let f = plane(e)?;
                    if bounds.len() != 4 {
                        return Err("region must be x0,x1,y0,y1".into());
                    }
                    let ext = match check_regulous(&Expr::from_ratfun(&f), &amb, 0, budget).map_err(err)? {
                        Verdict::Regulous { values, .. } => values,
                        _ => Vec::new(),
                    };
                    let m = height_field(&f, (&bounds[0], &bounds[1]), (&bounds[2], &bounds[3]), *resolution, &ext)
                        .map_err(err)?;
                    let text = match format {
                        MeshFormat::Obj => to_obj(&m),
                        MeshFormat::Csv => {
                            let mut names = amb.names().to_vec();
                            names.push("f".into());
                            to_csv(&names, m.vertices.iter().map(|v| &v[..]))
                        }
                    };
                    (text, m.vertices.len())
                }
                Some(name) => {
                    let var = amb.index_of(name).ok_or_else(|| format!("unknown variable `{name}`"))?;
                    let p = expr(e)?.to_poly(&amb).map_err(err)?;
                    if bounds.len() != 2 * amb.len() {
                        return Err(format!("region needs {} bounds", 2 * amb.len()));
                    }
                    let ranges: Vec<(Rational, Rational)> = bounds.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
                    let pts = zero_samples(&p, var, &ranges, *resolution).map_err(err)?;
                    (to_csv(amb.names(), pts.iter().map(|v| &v[..])), pts.len())
                }
            };
            match &cli.out {
                Some(_) => write_out(&cli.out, &text)?,
                None if !cli.json => return Ok(Report::new(text.trim_end(), Value::Null, Status::Decided)),
                None => {}
            }
            let target = cli.out.as_ref().map(|p| p.display().to_string());
            Ok(Report::new(
                format!("{count} points written to {}", target.clone().unwrap_or_default()),
                json!({"points": count, "out": target}),
                Status::Decided,
            ))
        }
    }
}

fn check_report(check: Check) -> Report {
    let valid = check.is_valid();
    let j = match &check {
        Check::Valid => json!({"valid": true}),
        Check::Invalid(r) => json!({"valid": false, "reason": r}),
    };
    Report::new(check.to_string(), j, if valid { Status::Decided } else { Status::Failed })
}
