use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qscheme::io;
use qscheme::orbit::{leg_factorize, orbit_membership};
use qscheme::quiver::parse_quiver;
use qscheme::reflect::{braid_experiment, random_level_point, reflection_functor};
use qscheme::regularize::{
    check_theorem_hypotheses, find_legs, leg_by_names, regularize_params, regularize_quiver, verify_param_equivariance,
    verify_semidirect, LegDescriptor,
};
use qscheme::repn::{mesh_check, moment_map, perpendicularity, random_rep};
use qscheme::suite::run_suite;
use qscheme::weyl::{reflect_dim, reflect_param, verify_coherence, verify_coxeter, verify_rho, zero_params, CoxeterReport};
use qscheme::{Error, GaussQ, Map, Orbit, Params, QuiverMult, Rep, Result};

#[derive(Parser)]
#[command(name = "qs", version, about = "Quiver schemes over truncated polynomial rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a quiver file and print it back.
    Parse {
        file: PathBuf,
        /// Print Graphviz DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Cartan data `A`, `A'`, `D`, `C`.
    Cartan { file: PathBuf },
    /// Bilinear form and expected dimension of a dimension vector.
    Dim {
        file: PathBuf,
        #[arg(long)]
        v: String,
    },
    /// Apply `r_i` to parameters and `s_i` to a dimension vector.
    Reflect {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        lambda: Option<PathBuf>,
        #[arg(long)]
        v: Option<String>,
    },
    /// Verify Coxeter relations, transpose/lift coherence and ρ-intertwining.
    WeylVerify { file: PathBuf },
    /// Moment map of a representation.
    Moment {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Residuals `μ_i − λ_i Id`; fails unless all vanish.
    Mesh {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        lambda: PathBuf,
    },
    /// A random representation with the given dimension vector.
    RandomRep {
        file: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Coadjoint orbit membership; fails for non-members.
    OrbitCheck {
        spec: PathBuf,
        #[arg(long)]
        a: PathBuf,
    },
    /// Leg maps `B` with `ν(B) = A`.
    LegFactor {
        spec: PathBuf,
        #[arg(long)]
        a: PathBuf,
    },
    /// Apply the reflection functor at a vertex.
    Functor {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random point of the vertex level set.
    RandomLevel {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Experimental: compare `F_i F_j ⋯` with `F_j F_i ⋯` (length `m_ij`) on
    /// gauge invariants. Reports only; always exits 0 on success.
    Braid {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        with: String,
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Irregular legs of a quiver.
    Legs { file: PathBuf },
    /// Regularize one leg, optionally mapping `(λ, v)` along.
    Regularize {
        file: PathBuf,
        /// Comma-separated vertex names, base first.
        #[arg(long)]
        leg: String,
        #[arg(long)]
        lambda: Option<PathBuf>,
        #[arg(long)]
        v: Option<String>,
        /// Write the regularized quiver here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the lattice identities and parameter equivariance for a leg.
    RegVerify {
        file: PathBuf,
        #[arg(long)]
        leg: String,
    },
    /// Run a property suite over a corpus directory.
    Check {
        dir: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

struct Output {
    value: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn data(value: Value) -> Self {
        let text = io::to_string(&value);
        Output { value, text, ok: true }
    }

    fn with_text(value: Value, text: String) -> Self {
        Output { value, text, ok: true }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<QuiverMult> {
    parse_quiver(&read(path)?)
}

fn load_json(path: &Path) -> Result<Value> {
    io::parse_json(&read(path)?)
}

fn load_params(q: &QuiverMult, path: &Path) -> Result<Params> {
    io::params_from_json(q, &load_json(path)?)
}

fn load_rep(q: &QuiverMult, path: &Path) -> Result<Rep> {
    io::rep_from_json(q, &load_json(path)?)
}

fn load_spec(path: &Path) -> Result<Orbit> {
    io::orbit_spec_from_json(&load_json(path)?)
}

fn load_map(path: &Path) -> Result<Map> {
    io::rmap_from_json(&load_json(path)?)
}

/// A dimension vector as `"1,0,2"`, in vertex order.
fn parse_dims(q: &QuiverMult, s: &str) -> Result<Vec<i64>> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Json(format!("bad dimension entry `{}`", x.trim()))))
        .collect::<Result<Vec<_>>>()?;
    q.check_len(v.len())?;
    Ok(v)
}

/// A vertex by name, or by index if no vertex has that name.
fn parse_vertex(q: &QuiverMult, s: &str) -> Result<usize> {
    q.vertex_index(s).or_else(|e| match s.parse::<usize>() {
        Ok(i) if i < q.vertex_count() => Ok(i),
        _ => Err(e),
    })
}

fn parse_leg(q: &QuiverMult, s: &str) -> Result<LegDescriptor> {
    let names: Vec<&str> = s.split(',').map(str::trim).collect();
    leg_by_names(q, &names)
}

fn relation_text(checks: &[(String, bool)]) -> String {
    checks.iter().map(|(r, ok)| format!("{} {r}\n", if *ok { "ok  " } else { "FAIL" })).collect()
}

fn coxeter_all(q: &QuiverMult) -> CoxeterReport {
    let mut r = verify_coxeter(q);
    for other in [verify_coherence(q), verify_rho(q)] {
        r.checks.extend(other.checks);
        r.skipped.extend(other.skipped);
    }
    r
}

fn run(cmd: Cmd) -> Result<Output> {
    Ok(match cmd {
        Cmd::Parse { file, dot } => {
            let q = load_quiver(&file)?;
            if dot {
                let text = q.to_dot();
                Output::with_text(Value::String(text.clone()), text)
            } else {
                Output::with_text(io::quiver_to_json(&q), q.to_dsl())
            }
        }
        Cmd::Cartan { file } => {
            let q = load_quiver(&file)?;
            let c = q.cartan();
            let text = format!("C =\n{}D = {:?}\nsymmetrizable: {}\n", c.c, c.d, c.is_symmetrizable());
            Output::with_text(io::cartan_to_json(&q), text)
        }
        Cmd::Dim { file, v } => {
            let q = load_quiver(&file)?;
            let v = parse_dims(&q, &v)?;
            let form = q.bilinear(&v, &v)?;
            let value = json!({ "v": io::dims_to_json(&q, &v), "bilinear": form, "expected_dim": 2 - form });
            let text = format!("(v, v) = {form}\nexpected_dim = {}\n", 2 - form);
            Output::with_text(value, text)
        }
        Cmd::Reflect { file, vertex, lambda, v } => {
            let q = load_quiver(&file)?;
            let i = parse_vertex(&q, &vertex)?;
            let lam: Params = match lambda {
                Some(p) => load_params(&q, &p)?,
                None => zero_params(&q),
            };
            let mut value = json!({ "vertex": q.name(i), "lambda": io::params_to_json(&q, &reflect_param(&q, i, &lam)?) });
            if let Some(v) = v {
                let v = parse_dims(&q, &v)?;
                value["v"] = io::dims_to_json(&q, &reflect_dim(&q, i, &v)?);
            }
            Output::data(value)
        }
        Cmd::WeylVerify { file } => {
            let q = load_quiver(&file)?;
            let r = coxeter_all(&q);
            Output { value: io::coxeter_report_to_json(&r), text: r.to_string(), ok: r.passed() }
        }
        Cmd::Moment { file, rep } => {
            let q = load_quiver(&file)?;
            let rep = load_rep(&q, &rep)?;
            let mu = moment_map(&q, &rep)?;
            let mut maps = serde_json::Map::new();
            for (i, m) in mu.iter().enumerate() {
                maps.insert(q.name(i).to_string(), io::rmap_to_json(m));
            }
            let perp = perpendicularity(&mu)?;
            Output::data(json!({ "mu": maps, "perpendicularity": io::scalar_to_json(&perp) }))
        }
        Cmd::Mesh { file, rep, lambda } => {
            let q = load_quiver(&file)?;
            let rep = load_rep(&q, &rep)?;
            let lam = load_params(&q, &lambda)?;
            let res = mesh_check(&q, &rep, &lam)?;
            let mut maps = serde_json::Map::new();
            let mut checks = Vec::new();
            for (i, m) in res.iter().enumerate() {
                maps.insert(q.name(i).to_string(), io::rmap_to_json(m));
                checks.push((format!("mu_{} = lambda_{} Id", q.name(i), q.name(i)), m.is_zero()));
            }
            let ok = checks.iter().all(|c| c.1);
            Output { value: json!({ "satisfied": ok, "residuals": maps }), text: relation_text(&checks), ok }
        }
        Cmd::RandomRep { file, v, seed } => {
            let q = load_quiver(&file)?;
            let v = parse_dims(&q, &v)?;
            let rep: Rep = random_rep(&q, &v, seed)?;
            Output::data(io::rep_to_json(&q, &rep))
        }
        Cmd::OrbitCheck { spec, a } => {
            let spec = load_spec(&spec)?;
            let a = load_map(&a)?;
            let m = orbit_membership(&spec, &a)?;
            let text = match &m.failure {
                None => "member\n".to_string(),
                Some(f) => format!("not a member: {f}\n"),
            };
            Output { value: json!({ "member": m.member, "failure": m.failure }), text, ok: m.member }
        }
        Cmd::LegFactor { spec, a } => {
            let spec = load_spec(&spec)?;
            let a = load_map(&a)?;
            let b = leg_factorize(&spec, &a)?;
            Output::data(io::leg_point_to_json(&b))
        }
        Cmd::Functor { file, vertex, lambda, rep, out } => {
            let q = load_quiver(&file)?;
            let i = parse_vertex(&q, &vertex)?;
            let lam = load_params(&q, &lambda)?;
            let rep = load_rep(&q, &rep)?;
            let image = reflection_functor(&q, &rep, i, &lam)?;
            let value = io::rep_to_json(&q, &image);
            match out {
                Some(path) => {
                    write(&path, &io::to_string(&value))?;
                    let dims = io::dims_to_json(&q, &image.dims_i64());
                    Output::data(json!({ "written": path.display().to_string(), "v": dims }))
                }
                None => Output::data(value),
            }
        }
        Cmd::RandomLevel { file, vertex, lambda, v, seed } => {
            let q = load_quiver(&file)?;
            let i = parse_vertex(&q, &vertex)?;
            let lam = load_params(&q, &lambda)?;
            let v = parse_dims(&q, &v)?;
            let rep: Rep = random_level_point(&q, &lam, &v, i, seed)?;
            Output::data(io::rep_to_json(&q, &rep))
        }
        Cmd::Braid { file, vertex, with, lambda, rep } => {
            let q = load_quiver(&file)?;
            let (i, j) = (parse_vertex(&q, &vertex)?, parse_vertex(&q, &with)?);
            let lam = load_params(&q, &lambda)?;
            let rep = load_rep(&q, &rep)?;
            match braid_experiment(&q, &rep, i, j, &lam)? {
                None => Output::with_text(json!({ "m": null }), "m_ij is infinite; nothing to compare\n".into()),
                Some(r) => {
                    let checks: Vec<(String, bool)> =
                        std::iter::once(("dimension vectors".to_string(), r.left_dims == r.right_dims)).chain(r.invariants.clone()).collect();
                    let value = json!({
                        "m": r.m,
                        "left_v": io::dims_to_json(&q, &r.left_dims),
                        "right_v": io::dims_to_json(&q, &r.right_dims),
                        "agrees": r.agrees(),
                        "invariants": checks.iter().map(|(n, ok)| json!({ "invariant": n, "equal": ok })).collect::<Vec<_>>(),
                    });
                    Output::with_text(value, relation_text(&checks))
                }
            }
        }
        Cmd::Legs { file } => {
            let q = load_quiver(&file)?;
            let legs = find_legs(&q);
            let text = legs.iter().map(|l| format!("{} (d = {})\n", l.names(&q).join(","), l.d)).collect();
            Output::with_text(Value::Array(legs.iter().map(|l| io::leg_to_json(&q, l)).collect()), text)
        }
        Cmd::Regularize { file, leg, lambda, v, out } => {
            let q = load_quiver(&file)?;
            let leg = parse_leg(&q, &leg)?;
            let qc = regularize_quiver(&q, &leg)?;
            let mut value = json!({ "quiver": io::quiver_to_json(&qc) });
            let mut text = qc.to_dsl();
            let v = v.map(|s| parse_dims(&q, &s)).transpose()?;
            if let Some(v) = &v {
                let lam: Params = match &lambda {
                    Some(p) => load_params(&q, p)?,
                    None => zero_params(&q),
                };
                let (lc, vc) = regularize_params(&q, &leg, &lam, v)?;
                value["v"] = io::dims_to_json(&qc, &vc);
                value["lambda"] = io::params_to_json(&qc, &lc);
                let hyp = check_theorem_hypotheses(&q, &leg, &lam, v)?;
                value["hypotheses"] = io::report_to_json(&hyp);
                text += &format!("v = {vc:?}\n{hyp}");
            } else if lambda.is_some() {
                return Err(Error::Json("--lambda needs --v".into()));
            }
            if let Some(path) = out {
                write(&path, &qc.to_dsl())?;
            }
            Output::with_text(value, text)
        }
        Cmd::RegVerify { file, leg } => {
            let q = load_quiver(&file)?;
            let leg = parse_leg(&q, &leg)?;
            let mut r = verify_semidirect(&q, &leg)?;
            r.extend(verify_param_equivariance::<GaussQ>(&q, &leg)?);
            Output { value: io::report_to_json(&r), text: r.to_string(), ok: r.passed() }
        }
        Cmd::Check { dir, suite, seed, trials } => {
            let r = run_suite(&suite, &dir, seed, trials)?;
            Output { value: r.to_json(), text: r.to_string(), ok: r.passed() }
        }
    })
}

/// Input that could not be read or understood exits with 2; a well-formed
/// request whose mathematical precondition fails exits with 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Json(_)
        | Error::Io(_)
        | Error::BadScalar(_)
        | Error::UnknownSuite(_)
        | Error::UnknownVertex(_)
        | Error::UnknownArrow(_)
        | Error::LengthMismatch { .. }
        | Error::ShapeMismatch(_)
        | Error::MismatchedOrder(..)
        | Error::NegativeDimension
        | Error::InvalidSpec(_)
        | Error::InvalidLeg(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd) {
        Ok(out) => {
            match format {
                Format::Json => match &out.value {
                    Value::String(s) => print!("{s}"),
                    v => print!("{}", io::to_string(v)),
                },
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            match format {
                Format::Json => {
                    eprint!("{}", io::to_string(&json!({ "error": { "code": e.code(), "message": e.to_string() } })))
                }
                Format::Text => eprintln!("error[{}]: {e}", e.code()),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
