//! Command-line front end for the `arithcap` library.
//!
//! Every command prints one pretty JSON document. Failures print a JSON
//! error record and exit with a code per error family (see [`CliError`]).

pub mod config;
pub mod error;
pub mod inputs;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arithcap::algebra::IntSeries;
use arithcap::family::{self, SeedSequence};
use arithcap::integerization::{
    integerizing_exponent, minimal_integerizing_exponent, top_coefficients, verify_top_integrality,
};
use arithcap::patching::{heuristic_real_candidate, patch};
use arithcap::potential::{self as pot, GreenSolution, Identity, OverflowMethod};
use arithcap::{BigUint, Complex64};

pub use config::ExperimentConfig;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "arithcap", version, about = "Arithmetic capacity experiments")]
pub struct Cli {
    /// JSON experiment config; flags given here override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Collocation points per boundary curve.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Print the effective config and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct DomainArg {
    /// `circle(r[,x,y])`, `ellipse(a,b[,angle])`, `conformal(d0,d1,…)`,
    /// inline JSON, or `@file`.
    #[arg(long)]
    pub domain: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Def,
    Energy,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IdentityArg {
    Pushforward,
    Jensen,
    Combined,
}

impl From<IdentityArg> for Identity {
    fn from(a: IdentityArg) -> Self {
        match a {
            IdentityArg::Pushforward => Identity::Pushforward,
            IdentityArg::Jensen => Identity::Jensen,
            IdentityArg::Combined => Identity::Combined,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Robin constant and capacity of a domain.
    Capacity(DomainArg),
    /// Green's function at points.
    Green {
        #[command(flatten)]
        domain: DomainArg,
        /// Evaluation point `x,y`; repeatable.
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Equilibrium measure on the boundary.
    Measure {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        nodes: Option<usize>,
        /// Write `curve,t,x,y,weight` rows to this CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leading Taylor data of a map at the marked point.
    Jet {
        #[command(flatten)]
        domain: DomainArg,
        /// Polynomial text, inline JSON map, or `@file`.
        #[arg(long)]
        map: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Overflow of a polynomial map.
    Overflow {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Residual of a pushforward identity.
    IdentityCheck {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        which: IdentityArg,
        /// Sample point `x,y`; repeatable. Defaults to a spiral of points.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Exterior of a closed disk through the inversion chart.
    ClassicalCheck {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Deviation of a map from commuting with complex conjugation.
    SymmetryCheck {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        map: String,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Degree of a gluing map and the resulting pseudoconvexity flag.
    Pseudoconvex {
        #[command(flatten)]
        domain: DomainArg,
        /// The gluing map; must vanish simply at the marked point.
        #[arg(long)]
        map: String,
        /// Optional polynomial for the degree-consistency check.
        #[arg(long)]
        f: Option<String>,
    },
    /// Exponent making the top coefficients of `f^M` integral.
    Integerize {
        #[arg(long)]
        poly: String,
        /// Number of top coefficients below the leading one.
        #[arg(long)]
        top: usize,
        /// Find the smallest exponent by direct search.
        #[arg(long)]
        search: bool,
        #[arg(long)]
        cap: Option<u64>,
        /// Check a given exponent instead.
        #[arg(long)]
        verify: Option<String>,
    },
    /// Monic integer polynomial exceeding 1 on the complement of a region.
    Patch {
        #[arg(long)]
        poly: String,
        /// `disk(r)`, JSON list of `{center, radius}`, or `@file`.
        #[arg(long, alias = "holes")]
        region: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Integer series from bounded seeds.
    Family {
        /// Monic integer polynomial `p`.
        #[arg(long)]
        p: String,
        /// Truncation order; defaults to `16·deg p`.
        #[arg(long)]
        order: Option<usize>,
        /// JSON file holding a list of seed lists.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        random_seed: u64,
        #[arg(long, default_value_t = 16)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        bound: u64,
        /// Integer polynomial with zero constant term to compose with.
        #[arg(long)]
        compose: Option<String>,
        /// Map `φ` for the convergence checks; needs `--domain`.
        #[arg(long, requires = "domain")]
        phi: Option<String>,
        #[arg(long, requires = "phi")]
        domain: Option<String>,
    },
    /// Uncertified real polynomial exceeding 1 at sample points.
    SuggestRegion {
        /// JSON list of `[x, y]` points.
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        degree_budget: usize,
    },
}

/// Parses arguments, runs, and returns the JSON result.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(r) = cli.resolution {
        config.potential.resolution = r;
    }
    config.validate()?;
    if cli.dump_config {
        return Ok(serde_json::to_value(&config).expect("config serializes"));
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Usage("no command given".into()));
    };
    execute(command, &config)
}

fn solve(domain: &str, config: &ExperimentConfig) -> Result<GreenSolution, CliError> {
    let d = inputs::parse_domain(domain)?;
    Ok(pot::solve_green_with(&d, &config.potential)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Interior points spiralling out to 90% of the distance to the boundary.
fn spiral(sol: &GreenSolution, n: usize) -> Vec<Complex64> {
    let o = sol.domain().center();
    let r = sol.domain().boundary_distance(o);
    (0..n)
        .map(|j| {
            let s = (j as f64 + 1.0) / n as f64;
            o + Complex64::from_polar(0.9 * r * s, 2.399963 * j as f64 + 0.1)
        })
        .collect()
}

pub fn execute(command: &Command, config: &ExperimentConfig) -> Result<Value, CliError> {
    match command {
        Command::Capacity(d) => {
            let sol = solve(&d.domain, config)?;
            Ok(to_value(&sol.summary()))
        }
        Command::Green { domain, at } => {
            let sol = solve(&domain.domain, config)?;
            let mut values = Vec::new();
            for a in at {
                let x = inputs::parse_point(a)?;
                values.push(json!({"point": pair(x), "g": pot::green_eval(&sol, x)?}));
            }
            Ok(json!({"summary": to_value(&sol.summary()), "values": values}))
        }
        Command::Measure { domain, nodes, out } => {
            let sol = solve(&domain.domain, config)?;
            let nodes = pot::equilibrium_measure(&sol, nodes.unwrap_or(config.measure_nodes));
            let mass: f64 = nodes.iter().map(|n| n.weight).sum();
            let base =
                json!({"summary": to_value(&sol.summary()), "mass": mass, "count": nodes.len()});
            match out {
                Some(path) => {
                    write_measure_csv(path, &nodes)?;
                    let mut v = base;
                    v["csv"] = json!(path.display().to_string());
                    Ok(v)
                }
                None => {
                    let mut v = base;
                    v["nodes"] = to_value(&nodes);
                    Ok(v)
                }
            }
        }
        Command::Jet { domain, map, order } => {
            let sol = solve(&domain.domain, config)?;
            let f = inputs::parse_map(map)?;
            let jet = pot::taylor_jet(
                &f,
                sol.domain(),
                order.unwrap_or(config.jet_order),
                config.potential.vanishing_tolerance,
            )?;
            let norm = pot::jet_cap_norm(&jet, &sol);
            Ok(json!({"jet": to_value(&jet), "log_jet_norm": norm, "robin": sol.robin_c}))
        }
        Command::Overflow {
            domain,
            map,
            method,
        } => {
            let sol = solve(&domain.domain, config)?;
            let f = inputs::parse_map(map)?;
            let mut out = json!({"robin": sol.robin_c});
            if matches!(method, MethodArg::Def | MethodArg::Both) {
                out["def"] = json!(pot::overflow(&sol, &f, OverflowMethod::Def)?);
            }
            if matches!(method, MethodArg::Energy | MethodArg::Both) {
                out["energy"] = json!(pot::overflow(&sol, &f, OverflowMethod::Energy)?);
            }
            if let (Some(a), Some(b)) = (out["def"].as_f64(), out["energy"].as_f64()) {
                out["difference"] = json!((a - b).abs());
            }
            Ok(out)
        }
        Command::IdentityCheck {
            domain,
            map,
            which,
            at,
            samples,
        } => {
            let sol = solve(&domain.domain, config)?;
            let f = inputs::parse_map(map)?;
            let which: Identity = (*which).into();
            let name = to_value(&which);
            if matches!(which, Identity::Jensen) {
                let r = pot::identity_residual(&sol, &f, which, None)?;
                return Ok(json!({"identity": name, "max_residual": r}));
            }
            let points = if at.is_empty() {
                spiral(&sol, samples.unwrap_or(config.samples))
            } else {
                at.iter()
                    .map(|a| inputs::parse_point(a))
                    .collect::<Result<_, _>>()?
            };
            let mut worst = 0.0f64;
            let mut rows = Vec::new();
            for x in points {
                let r = pot::identity_residual(&sol, &f, which, Some(x))?;
                worst = worst.max(r);
                rows.push(json!({"point": pair(x), "residual": r}));
            }
            Ok(json!({"identity": name, "max_residual": worst, "points": rows}))
        }
        Command::ClassicalCheck { radius, samples } => {
            let r = pot::classical_inverse_check(
                *radius,
                samples.unwrap_or(config.samples),
                config.potential.resolution,
            )?;
            Ok(to_value(&r))
        }
        Command::SymmetryCheck {
            domain,
            map,
            samples,
        } => {
            let d = inputs::parse_domain(&domain.domain)?;
            let f = inputs::parse_map(map)?;
            let dev = pot::symmetry_check(&f, &d, samples.unwrap_or(config.samples))?;
            Ok(json!({
                "max_deviation": dev,
                "domain_symmetric": d.is_conjugation_symmetric(1e-12),
            }))
        }
        Command::Pseudoconvex { domain, map, f } => {
            let sol = solve(&domain.domain, config)?;
            let phi = inputs::parse_map(map)?;
            let jet = pot::taylor_jet(
                &phi,
                sol.domain(),
                config.jet_order,
                config.potential.vanishing_tolerance,
            )?;
            let deg = pot::arakelov_degree(&sol, &jet)?;
            let mut out = to_value(&deg);
            if let Some(f) = f {
                let f = inputs::parse_map(f)?;
                out["degree_consistency"] = json!(pot::degree_consistency(&sol, &f, &phi)?);
            }
            Ok(out)
        }
        Command::Integerize {
            poly,
            top,
            search,
            cap,
            verify,
        } => integerize(
            poly,
            *top,
            *search,
            cap.unwrap_or(config.search_cap),
            verify.as_deref(),
        ),
        Command::Patch {
            poly,
            region,
            max_degree,
        } => {
            let m = inputs::parse_poly(poly)?;
            let region = inputs::parse_region(region)?;
            let mut pc = config.patch.clone();
            if let Some(d) = max_degree {
                pc.max_degree = *d;
            }
            let cert = patch(&m, &region, &pc)?;
            let mut out = to_value(&cert);
            out["p"] = json!(cert.p().to_string());
            Ok(out)
        }
        Command::Family {
            p,
            order,
            seeds,
            count,
            random_seed,
            length,
            bound,
            compose,
            phi,
            domain,
        } => {
            let p = integer_poly(p)?;
            let d = order
                .or(config.family_order)
                .unwrap_or(16 * p.degree().unwrap_or(1).max(1));
            let seeds = match seeds {
                Some(path) => inputs::parse_seed_lists(path)?
                    .into_iter()
                    .map(|v| SeedSequence::new(v, *bound))
                    .collect::<Result<Vec<_>, _>>()?,
                None => family::random_seeds(*count, *length, *bound, *random_seed),
            };
            let members = family::family_members(&p, &seeds, d)?;
            let distinct = family::distinctness_check(&p, &seeds, d)?;
            let composed = match compose {
                Some(text) => {
                    let f = IntSeries::from_poly(&integer_poly(text)?, d);
                    let c = members
                        .iter()
                        .map(|g| family::compose_with_f(g, &f, d).map(|s| s.to_json()))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(c)
                }
                None => None,
            };
            let mut rows = Vec::new();
            for (i, (s, g)) in seeds.iter().zip(&members).enumerate() {
                let mut row = json!({"seed": s.values(), "series": g.to_json()});
                if let Some(c) = &composed {
                    row["composed"] = to_value(&c[i]);
                }
                rows.push(row);
            }
            let mut out = json!({
                "p": p.to_string(),
                "order": d,
                "bound": bound,
                "distinctness": to_value(&distinct),
                "members": rows,
            });
            if let (Some(phi), Some(domain)) = (phi, domain) {
                let phi = inputs::parse_map(phi)?;
                let dom = inputs::parse_domain(domain)?;
                let tail = family::tail_bound_check(&p, &phi, &dom, config.samples)?;
                let points = family::sample_points(&dom, config.samples);
                let sums = seeds
                    .iter()
                    .map(|s| family::partial_sums_check(&p, &phi, s, &points, tail.delta))
                    .collect::<Result<Vec<_>, _>>()?;
                out["tail_bound"] = to_value(&tail);
                out["partial_sums"] = to_value(&sums);
            }
            Ok(out)
        }
        Command::SuggestRegion {
            points,
            degree_budget,
        } => {
            let samples = inputs::parse_points(points)?;
            let c = heuristic_real_candidate(&samples, *degree_budget)?;
            Ok(json!({"candidate": to_value(&c), "certified": false}))
        }
    }
}

fn integer_poly(text: &str) -> Result<arithcap::algebra::IntPoly, CliError> {
    inputs::parse_poly(text)?
        .to_integer()
        .ok_or_else(|| CliError::Parse(format!("{text:?} does not have integer coefficients")))
}

fn exponent_json(m: &BigUint) -> Value {
    match u64::try_from(m) {
        Ok(v) => json!(v),
        Err(_) => json!(m.to_string()),
    }
}

fn integerize(
    poly: &str,
    top: usize,
    search: bool,
    cap: u64,
    verify: Option<&str>,
) -> Result<Value, CliError> {
    let f = inputs::parse_poly(poly)?;
    if let Some(m) = verify {
        let m: BigUint = m
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("not a positive integer: {m:?}")))?;
        let ok = verify_top_integrality(&f, &m, top)?;
        let tops: Vec<String> = top_coefficients(&f, &m, top)
            .iter()
            .map(ToString::to_string)
            .collect();
        return Ok(json!({"M": exponent_json(&m), "integral": ok, "top_coefficients": tops}));
    }
    let formula = integerizing_exponent(&f, top)?;
    let result = if search {
        minimal_integerizing_exponent(&f, top, cap)?
    } else {
        formula.clone()
    };
    let mut out = to_value(&result);
    if let Some(map) = out.as_object_mut() {
        map.remove("m");
    }
    out["M"] = exponent_json(&result.m);
    out["formula_M"] = exponent_json(&formula.m);
    out["poly"] = json!(f.to_string());
    Ok(out)
}

fn write_measure_csv(path: &std::path::Path, nodes: &[pot::MeasureNode]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::io(path.display().to_string(), e);
    let mut w = csv::Writer::from_path(path).map_err(|e| io(e.into()))?;
    w.write_record(["curve", "t", "x", "y", "weight"])
        .map_err(|e| io(e.into()))?;
    for n in nodes {
        w.write_record(&[
            n.curve.to_string(),
            format!("{:.17e}", n.t),
            format!("{:.17e}", n.point.re),
            format!("{:.17e}", n.point.im),
            format!("{:.17e}", n.weight),
        ])
        .map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}
