//! Command-line entry point: every pipeline behind one binary, JSON
//! reports on standard output, human summaries and timings on standard
//! error.

use std::path::PathBuf;
use std::time::Instant;

use blaschke_core::{
    berger_stampfli_check, caratheodory_approximant, douglas_rudin_approximate,
    fisher_approximate, frostman_approximate, hankel_distance_estimate, helson_sarason,
    is_blaschke_test, numerical_radius, resolvent_partial_fraction_check,
    riemann_unimodular_combo, BoundaryGrid, Complex64, EllipticParameters, Error,
    FiniteBlaschkeProduct, InnerEvaluator, OperatorMatrix, Result, TaylorSeries,
    UnimodularGridFunction,
};
use blaschke_lab::acceptance;
use blaschke_lab::catalog;
use blaschke_lab::config::RunConfig;
use blaschke_lab::formats::{
    read_json, CoeffsJson, CombinationJson, FbpJson, GridJson, InnerJson, MatrixJson,
};
use blaschke_lab::report::{exit_code, render, EXIT_OK, EXIT_UNCERTIFIED, EXIT_USAGE};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "blaschke-lab",
    version,
    about = "Certified approximation by Blaschke products, inner functions and operator ranges"
)]
struct Cli {
    /// Optional key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the subcommand's primary boundary grid as CSV (theta,re,im).
    #[arg(long, global = true)]
    dump_grid: Option<PathBuf>,
    /// List the built-in catalog as JSON and exit.
    #[arg(long)]
    catalog: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Taylor-matching Blaschke approximant of a ball function.
    Caratheodory {
        /// Catalog name or coefficient-file path.
        #[arg(long)]
        f: String,
        /// Matching order.
        #[arg(long)]
        n: usize,
    },
    /// Convex combination of Blaschke products approximating a ball function.
    Fisher {
        #[arg(long)]
        f: String,
        #[arg(long)]
        eps: f64,
    },
    /// Quotient-of-Blaschke-products approximation of a unimodular function.
    #[command(name = "helson-sarason")]
    HelsonSarason {
        #[arg(long)]
        f: String,
        #[arg(long)]
        eps: f64,
    },
    /// Mean-of-unimodular-functions approximation of a ball function.
    Combo {
        #[arg(long)]
        f: String,
        #[arg(long)]
        eps: f64,
        /// Number of items in the combination.
        #[arg(long)]
        n: usize,
    },
    /// Hankel lower bound for the distance to the analytic algebra.
    Dist {
        /// Coefficient-file path.
        #[arg(long)]
        coeffs: PathBuf,
        /// Truncation size.
        #[arg(long)]
        m: usize,
    },
    /// Frostman shift of an inner function to a near-Blaschke product.
    Frostman {
        /// Catalog name or inner-function JSON path.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        eps: f64,
    },
    /// Product-of-quotients approximation of a unimodular grid function.
    #[command(name = "douglas-rudin")]
    DouglasRudin {
        /// Catalog name or grid-file path.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        eps: f64,
        /// Grid size override (power of two).
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Complete elliptic integrals and the conformal annulus radii.
    Elliptic {
        #[arg(long)]
        k: f64,
    },
    /// Numerical radius, mapping bound, and resolvent identity on matrices.
    Numrange {
        /// Matrix JSON path or catalog name.
        #[arg(long)]
        matrix: String,
        /// Blaschke-product JSON path for the mapping and resolvent checks.
        #[arg(long)]
        fbp: Option<PathBuf>,
        /// Randomized ensemble size (requires --seed).
        #[arg(long, requires = "seed")]
        ensemble: Option<usize>,
        /// Seed for the randomized ensemble.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the complete acceptance suite.
    Selftest,
}

struct Outcome {
    stdout: String,
    summary: String,
    pass: bool,
    grid: Option<BoundaryGrid>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let start = Instant::now();
    let result = dispatch(&cli);
    let elapsed = start.elapsed().as_secs_f64();

    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(path) = &cli.dump_grid {
                if let Some(grid) = &out.grid {
                    if let Err(e) = dump_csv(path, grid) {
                        eprintln!("grid dump failed: {e}");
                        std::process::exit(EXIT_UNCERTIFIED);
                    }
                } else {
                    eprintln!("this subcommand has no grid to dump");
                }
            }
            eprintln!("{} ({elapsed:.3}s)", out.summary);
            std::process::exit(if out.pass { EXIT_OK } else { EXIT_UNCERTIFIED });
        }
        Err(e) => {
            eprintln!("{e} ({elapsed:.3}s)");
            std::process::exit(exit_code(&e));
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.validate()?;

    if cli.catalog {
        let entries: Vec<Value> = catalog::CATALOG
            .iter()
            .map(|e| json!({"name": e.name, "kind": e.kind, "summary": e.summary}))
            .collect();
        let mut text = serde_json::to_string_pretty(&json!({ "catalog": entries }))
            .expect("catalog serialization cannot fail");
        text.push('\n');
        return Ok(Outcome {
            stdout: text,
            summary: format!("{} catalog entries", catalog::CATALOG.len()),
            pass: true,
            grid: None,
        });
    }

    let Some(command) = &cli.command else {
        return Err(Error::precondition(
            "no subcommand given; see --help or --catalog",
        ));
    };
    run_command(command, &cfg)
}

fn dump_csv(path: &PathBuf, grid: &BoundaryGrid) -> Result<()> {
    let mut text = String::from("theta,re,im\n");
    let n = grid.n();
    for (j, v) in grid.values().iter().enumerate() {
        let theta = std::f64::consts::TAU * j as f64 / n as f64;
        text.push_str(&format!("{theta},{},{}\n", v.re, v.im));
    }
    std::fs::write(path, text)
        .map_err(|e| Error::precondition(format!("cannot write {}: {e}", path.display())))
}

/// Resolve a Taylor target: catalog name first, then coefficient file.
fn taylor_input(spec: &str, cfg: &RunConfig) -> Result<TaylorSeries> {
    if catalog::CATALOG.iter().any(|e| e.name == spec && e.kind == "taylor") {
        return catalog::taylor_target(spec, cfg.taylor_order);
    }
    read_json::<CoeffsJson>(std::path::Path::new(spec))?.to_taylor()
}

/// Resolve a boundary-grid target: catalog name first, then grid file.
fn grid_input(spec: &str, cfg: &RunConfig) -> Result<BoundaryGrid> {
    if catalog::CATALOG.iter().any(|e| e.name == spec && e.kind == "grid") {
        return catalog::grid_target(spec, cfg.grid_n);
    }
    read_json::<GridJson>(std::path::Path::new(spec))?.to_grid()
}

fn matrix_input(spec: &str) -> Result<OperatorMatrix> {
    if catalog::CATALOG.iter().any(|e| e.name == spec && e.kind == "matrix") {
        return catalog::matrix_target(spec);
    }
    read_json::<MatrixJson>(std::path::Path::new(spec))?.to_operator()
}

fn complex_json(v: Complex64) -> Value {
    json!([v.re, v.im])
}

fn certificate_json(bound: f64, achieved: f64, grid: usize) -> Value {
    json!({"bound": bound, "achieved": achieved, "grid": grid})
}

fn run_command(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Caratheodory { f, n } => {
            let series = taylor_input(f, cfg)?;
            let b = caratheodory_approximant(&series, *n)?;
            let got = b.taylor(*n);
            let coeff_residual = (0..=*n)
                .map(|k| (got[k] - series.coeff(k)).norm())
                .fold(0.0, f64::max);
            let r = 0.9;
            let circle = 512;
            let mut sup = 0.0f64;
            for j in 0..circle {
                let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / circle as f64);
                sup = sup.max((series.eval(z) - b.evaluate(z)?).norm());
            }
            let bound = 2.0 * r.powi(*n as i32);
            let pass = coeff_residual < 1e-9 && sup <= bound;
            let boundary = b.eval_grid(cfg.grid_n)?;
            Ok(Outcome {
                stdout: render(
                    "caratheodory",
                    json!({"f": f, "n": n}),
                    json!({
                        "approximant": FbpJson::from_fbp(&b),
                        "degree": b.degree(),
                        "coefficient_residual": coeff_residual,
                    }),
                    Some(certificate_json(bound, sup, circle)),
                    pass,
                ),
                summary: format!(
                    "caratheodory: degree {} approximant, coefficients match to {coeff_residual:.2e}, sup at r=0.9 is {sup:.3e}",
                    b.degree()
                ),
                pass,
                grid: Some(boundary),
            })
        }
        Command::Fisher { f, eps } => {
            let series = taylor_input(f, cfg)?;
            let boundary = BoundaryGrid::from_fn(cfg.grid_n, |t| {
                series.eval(Complex64::from_polar(1.0, t))
            })?;
            let (combo, cert) = fisher_approximate(&series, &boundary, *eps)?;
            let pass = cert.achieved < *eps;
            let mean = combo.eval_grid(cfg.grid_n)?;
            Ok(Outcome {
                stdout: render(
                    "fisher",
                    json!({"eps": eps, "f": f}),
                    json!({
                        "combination": CombinationJson {
                            weights: combo.weights().to_vec(),
                            items: combo.items().iter().map(FbpJson::from_fbp).collect(),
                        },
                        "dilation": cert.t,
                        "order": cert.order,
                    }),
                    Some(certificate_json(cert.requested, cert.achieved, cfg.grid_n)),
                    pass,
                ),
                summary: format!(
                    "fisher: {} items at dilation {:.4}, achieved {:.4} (requested {eps})",
                    combo.len(),
                    cert.t,
                    cert.achieved
                ),
                pass,
                grid: Some(mean),
            })
        }
        Command::HelsonSarason { f, eps } => {
            let grid = grid_input(f, cfg)?;
            let target = UnimodularGridFunction::new(grid)?;
            let (q, cert) = helson_sarason(&target, *eps)?;
            let pass = cert.achieved < *eps;
            let boundary = q.eval_grid(cfg.grid_n)?;
            Ok(Outcome {
                stdout: render(
                    "helson-sarason",
                    json!({"eps": eps, "f": f}),
                    json!({
                        "denominator": FbpJson::from_fbp(&q.denominator),
                        "lift_error": cert.lift_error,
                        "numerator": FbpJson::from_fbp(&q.numerator),
                        "smoothing_order": cert.m,
                    }),
                    Some(certificate_json(cert.bound, cert.achieved, target.n())),
                    pass,
                ),
                summary: format!(
                    "helson-sarason: degrees {}/{}, achieved {:.4} (requested {eps})",
                    q.numerator.degree(),
                    q.denominator.degree(),
                    cert.achieved
                ),
                pass,
                grid: Some(boundary),
            })
        }
        Command::Combo { f, eps, n } => {
            let grid = grid_input(f, cfg)?;
            let (combo, cert) = riemann_unimodular_combo(&grid, *eps, *n)?;
            let pass = cert.achieved <= cert.bound;
            // the items are Mobius images of the target under N rotations;
            // report the rotations rather than N full grids
            let gammas: Vec<Value> = combo
                .items()
                .iter()
                .map(|u| {
                    // gamma is the item value where f = 0 if any; otherwise
                    // recover from the first sample: u = (g + w)/(1 + conj(w) g)
                    let w = (1.0 - eps) * grid.values()[0];
                    let u0 = u.values()[0];
                    let g = (u0 - w) / (Complex64::new(1.0, 0.0) - w.conj() * u0);
                    complex_json(g)
                })
                .collect();
            let mean = blaschke_core::unimodular::combination_mean(&combo)?;
            Ok(Outcome {
                stdout: render(
                    "combo",
                    json!({"eps": eps, "f": f, "n": n}),
                    json!({
                        "gammas": gammas,
                        "items": combo.len(),
                        "weights": combo.weights().to_vec(),
                    }),
                    Some(certificate_json(cert.bound, cert.achieved, grid.n())),
                    pass,
                ),
                summary: format!(
                    "combo: {} unimodular items, achieved {:.4} (bound {:.4})",
                    combo.len(),
                    cert.achieved,
                    cert.bound
                ),
                pass,
                grid: Some(mean),
            })
        }
        Command::Dist { coeffs, m } => {
            let f = read_json::<CoeffsJson>(coeffs)?.to_fourier()?;
            let d = hankel_distance_estimate(&f, *m)?;
            Ok(Outcome {
                stdout: render(
                    "dist",
                    json!({"coeffs": coeffs.display().to_string(), "m": m}),
                    json!({"lower": d.lower, "matrix_size": d.matrix_size}),
                    None,
                    true,
                ),
                summary: format!("dist: lower bound {:.6} at truncation {}", d.lower, d.matrix_size),
                pass: true,
                grid: None,
            })
        }
        Command::Frostman { phi, eps } => {
            let inner = if catalog::CATALOG.iter().any(|e| e.name == phi && e.kind == "inner") {
                catalog::inner_target(phi)?
            } else {
                read_json::<InnerJson>(std::path::Path::new(phi))?.to_inner()?
            };
            let evaluator = InnerEvaluator::Plain(inner.clone());
            let (_, base_mass) = is_blaschke_test(&evaluator, &cfg.r_ladder, f64::INFINITY)?;
            let (_, cert) = frostman_approximate(&evaluator, *eps)?;
            let pass = cert.achieved <= cert.bound && cert.bound < *eps;
            Ok(Outcome {
                stdout: render(
                    "frostman",
                    json!({"eps": eps, "phi": phi}),
                    json!({
                        "base_mass": base_mass,
                        "residual_mass": cert.residual_mass,
                        "w": complex_json(cert.w.value()),
                    }),
                    Some(certificate_json(cert.bound, cert.achieved, 128)),
                    pass,
                ),
                summary: format!(
                    "frostman: shift |w| = {:.4}, singular mass {:.4} -> {:.2e}, achieved {:.4} (bound {:.4})",
                    cert.w.value().norm(),
                    base_mass,
                    cert.residual_mass,
                    cert.achieved,
                    cert.bound
                ),
                pass,
                grid: None,
            })
        }
        Command::DouglasRudin { phi, eps, grid } => {
            let n = grid.unwrap_or(cfg.grid_n);
            if !n.is_power_of_two() || n < 256 {
                return Err(Error::precondition("--grid must be a power of two >= 256"));
            }
            let target = UnimodularGridFunction::new(grid_input_sized(phi, n)?)?;
            let (product, report) = douglas_rudin_approximate(&target, *eps)?;
            let pass = report.achieved <= report.bound;
            let map_dump = product.levels().first().map(|lvl| {
                let m = lvl.map();
                json!({
                    "alpha": m.alpha,
                    "beta": m.beta,
                    "bounded_const": m.bounded_const,
                    "ell": m.ell,
                    "ell_prime": m.ell_prime,
                    "eps": m.eps,
                    "k": m.params.k,
                    "k_prime": m.params.k_prime,
                    "big_k": m.params.big_k,
                    "big_k_prime": m.params.big_k_prime,
                    "pole": complex_json(m.pole),
                    "r_inner": m.params.r_inner,
                    "r_outer": m.params.r_outer,
                    "theta0": m.theta0,
                })
            });
            let per_level: Vec<Value> = report
                .per_level
                .iter()
                .map(|l| {
                    json!({
                        "achieved": l.achieved,
                        "bound": l.bound,
                        "buffered_samples": l.buffered_samples,
                        "jumps": l.jumps,
                        "negative_mass_ratio": l.negative_mass_ratio,
                        "unimodularity": l.unimodularity,
                    })
                })
                .collect();
            let boundary = product.boundary().clone();
            Ok(Outcome {
                stdout: render(
                    "douglas-rudin",
                    json!({"eps": eps, "grid": n, "phi": phi}),
                    json!({
                        "constructed": report.constructed,
                        "levels": report.levels,
                        "map": map_dump,
                        "per_level": per_level,
                    }),
                    Some(certificate_json(report.bound, report.achieved, n)),
                    pass,
                ),
                summary: format!(
                    "douglas-rudin: {} of {} levels constructed, achieved {:.4} (bound {:.4})",
                    report.constructed, report.levels, report.achieved, report.bound
                ),
                pass,
                grid: Some(boundary),
            })
        }
        Command::Elliptic { k } => {
            let p = EllipticParameters::new(*k)?;
            Ok(Outcome {
                stdout: render(
                    "elliptic",
                    json!({"k": k}),
                    json!({
                        "big_k": p.big_k,
                        "big_k_prime": p.big_k_prime,
                        "k_prime": p.k_prime,
                        "r_inner": p.r_inner,
                        "r_outer": p.r_outer,
                    }),
                    None,
                    true,
                ),
                summary: format!(
                    "elliptic: K = {:.12}, K' = {:.12}, annulus radii {:.6} and {:.6}",
                    p.big_k, p.big_k_prime, p.r_inner, p.r_outer
                ),
                pass: true,
                grid: None,
            })
        }
        Command::Numrange { matrix, fbp, ensemble, seed } => {
            let t = matrix_input(matrix)?;
            let rep = numerical_radius(&t, 720)?;
            let polygon: Vec<Value> =
                rep.boundary_polygon.iter().map(|&p| complex_json(p)).collect();
            let mut outputs = serde_json::Map::new();
            outputs.insert("angles".into(), json!(rep.angles));
            outputs.insert("polygon".into(), json!(polygon));
            outputs.insert("radius".into(), json!(rep.radius));
            let mut pass = true;
            let mut summary = format!("numrange: w(T) = {:.9}", rep.radius);

            if let Some(path) = fbp {
                let b = read_json::<FbpJson>(path)?.to_fbp()?;
                let bs = berger_stampfli_check(&t, &b, 1e-8)?;
                let gamma = Complex64::new(1.0, 0.0);
                let scale = if bs.w_t > 1e-12 { 0.999 / bs.w_t } else { 1.0 };
                let contracted = OperatorMatrix::from_rows(
                    &(0..t.n())
                        .map(|i| (0..t.n()).map(|j| t.entry(i, j) * scale).collect())
                        .collect::<Vec<_>>(),
                )?;
                let residual = resolvent_partial_fraction_check(&contracted, &b, gamma)?;
                pass = bs.pass && residual <= 1e-8;
                outputs.insert(
                    "mapping".into(),
                    json!({"pass": bs.pass, "w_bt": bs.w_bt, "w_t": bs.w_t}),
                );
                outputs.insert("resolvent_residual".into(), json!(residual));
                summary = format!(
                    "{summary}, w(B(rT)) = {:.9}, resolvent residual {:.2e}",
                    bs.w_bt, residual
                );
            }

            if let Some(count) = ensemble {
                let seed = seed.ok_or_else(|| {
                    Error::precondition("--ensemble requires --seed for reproducibility")
                })?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut violations = 0usize;
                let mut max_wbt = 0.0f64;
                for _ in 0..*count {
                    let dim = 2 + (rng.gen::<f64>() * 5.0) as usize;
                    let deg = 1 + (rng.gen::<f64>() * 4.0) as usize;
                    let mut zeros = vec![blaschke_core::DiscPoint::new(Complex64::default())?];
                    for _ in 1..deg {
                        let r = 0.65 * rng.gen::<f64>();
                        let a = std::f64::consts::TAU * rng.gen::<f64>();
                        zeros.push(blaschke_core::DiscPoint::new(Complex64::from_polar(r, a))?);
                    }
                    let b = FiniteBlaschkeProduct::new(
                        Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>()),
                        zeros,
                    )?;
                    let rows: Vec<Vec<Complex64>> = (0..dim)
                        .map(|_| {
                            (0..dim)
                                .map(|_| {
                                    Complex64::new(
                                        2.0 * rng.gen::<f64>() - 1.0,
                                        2.0 * rng.gen::<f64>() - 1.0,
                                    )
                                })
                                .collect()
                        })
                        .collect();
                    let m = OperatorMatrix::from_rows(&rows)?;
                    let r = berger_stampfli_check(&m, &b, 1e-8)?;
                    if !r.pass {
                        violations += 1;
                    }
                    max_wbt = max_wbt.max(r.w_bt);
                }
                pass = pass && violations == 0;
                outputs.insert(
                    "ensemble".into(),
                    json!({"count": count, "max_w_bt": max_wbt, "seed": seed, "violations": violations}),
                );
                summary =
                    format!("{summary}, ensemble {count} pairs, {violations} violations");
            }

            Ok(Outcome {
                stdout: render(
                    "numrange",
                    json!({
                        "ensemble": ensemble,
                        "fbp": fbp.as_ref().map(|p| p.display().to_string()),
                        "matrix": matrix,
                        "seed": seed,
                    }),
                    Value::Object(outputs),
                    None,
                    pass,
                ),
                summary,
                pass,
                grid: None,
            })
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all();
            let all_pass = outcomes.iter().all(|o| o.pass);
            for o in &outcomes {
                eprintln!(
                    "criterion {:>2} {} — {} ({:.2}s): {}",
                    o.index,
                    o.name,
                    if o.pass { "pass" } else { "FAIL" },
                    o.seconds,
                    o.detail
                );
            }
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "detail": o.detail,
                        "index": o.index,
                        "name": o.name,
                        "pass": o.pass,
                    })
                })
                .collect();
            Ok(Outcome {
                stdout: render(
                    "selftest",
                    json!({}),
                    json!({"criteria": rows}),
                    None,
                    all_pass,
                ),
                summary: format!(
                    "selftest: {}/{} criteria pass",
                    outcomes.iter().filter(|o| o.pass).count(),
                    outcomes.len()
                ),
                pass: all_pass,
                grid: None,
            })
        }
    }
}

/// Like `grid_input` but with an explicit size (for --grid overrides).
fn grid_input_sized(spec: &str, n: usize) -> Result<BoundaryGrid> {
    if catalog::CATALOG.iter().any(|e| e.name == spec && e.kind == "grid") {
        return catalog::grid_target(spec, n);
    }
    let grid = read_json::<GridJson>(std::path::Path::new(spec))?.to_grid()?;
    if grid.n() != n {
        return Err(Error::precondition(format!(
            "grid file has {} samples but --grid asked for {n}",
            grid.n()
        )));
    }
    Ok(grid)
}
