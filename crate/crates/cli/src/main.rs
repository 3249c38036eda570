use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use delaunay_cmc::bifurcation::{
    critical_tau_star, first_bifurcation, index, linear_grid, second_crossing, spectral_flow_table, BifurcationPoint,
};
use delaunay_cmc::delaunay::{period_elliptic, period_quadrature, solve_profile};
use delaunay_cmc::output::{create, fmt_num, profile_metadata, write_band_csv, write_bifurcation_csv, write_flow_csv, write_json};
use delaunay_cmc::spectral::{axial_field_bands, band_table};
use delaunay_cmc::surface::{amplitude_warning, export_mesh, mesh_delaunay, mesh_perturbed, MeshFormat};
use delaunay_cmc::{verify, Error, RunConfig, SymmetryClass};

#[derive(Parser)]
#[command(name = "delaunay-cmc", version, about = "Delaunay surfaces: profiles, Jacobi spectra, bifurcation values and meshes")]
struct Cli {
    /// Configuration file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for generated files; relative `--out` paths resolve against it.
    #[arg(long, global = true, env = "DELAUNAY_CMC_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PeriodChoice {
    Both,
    Elliptic,
    Quadrature,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the profile and write it as CSV with JSON metadata.
    #[command(allow_negative_numbers = true)]
    Profile {
        #[arg(long)]
        tau: f64,
        /// Samples per period (default from config).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        periods: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the period s_tau from the elliptic and quadrature formulas.
    #[command(allow_negative_numbers = true)]
    Period {
        #[arg(long)]
        tau: f64,
        #[arg(long, value_enum, default_value_t = PeriodChoice::Both)]
        method: PeriodChoice,
    },
    /// Band functions of the rotationally invariant mode on a grid of phases.
    #[command(allow_negative_numbers = true)]
    Bands {
        #[arg(long)]
        tau: f64,
        /// Highest band index (at least 3).
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Number of phases on [0, pi] (default from config).
        #[arg(long)]
        alphas: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shifted eigenvalues of the symmetric problem along a tau grid.
    #[command(allow_negative_numbers = true)]
    Flow {
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        tau_from: f64,
        #[arg(long)]
        tau_to: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Morse index on the screw-symmetric subspace.
    #[command(allow_negative_numbers = true)]
    Index {
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        json: bool,
    },
    /// First bifurcation value for a symmetry class.
    #[command(allow_negative_numbers = true)]
    Bifurcate {
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Crossing of the second band function instead of the first.
        #[arg(long)]
        second: bool,
        #[arg(long)]
        json: bool,
        /// Also write the point as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest bifurcation value over j and sampled screw angles.
    TauStar {
        /// Highest symmetry order (default from config).
        #[arg(long)]
        jmax: Option<u32>,
        /// Angles per order on [-pi/j, pi/j] (default from config).
        #[arg(long)]
        alphas: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mesh of the surface, or of its bifurcated normal graph when --j is given.
    #[command(allow_negative_numbers = true)]
    Mesh {
        /// Required unless --j is given, which defaults it to the bifurcation value.
        #[arg(long, required_unless_present = "j")]
        tau: Option<f64>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long, default_value_t = 0.0, requires = "j")]
        alpha: f64,
        #[arg(long, default_value_t = 0.05, requires = "j")]
        eta: f64,
        #[arg(long)]
        out: PathBuf,
        /// obj, ply or csv (default from the extension of --out).
        #[arg(long)]
        format: Option<MeshFormat>,
        #[arg(long)]
        res_t: Option<usize>,
        #[arg(long)]
        res_theta: Option<usize>,
        #[arg(long)]
        periods: Option<usize>,
    },
    /// Run the acceptance checks; exits 1 if any fails.
    Verify {
        /// Run only these criteria (1-based).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Domain(_) | Error::InvalidArgument(_)) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = &cli.output_dir {
        cfg.output_dir = dir.clone();
    }
    Ok(cfg)
}

/// `--out` resolved against the output directory, or the default file name there.
fn output_path(cfg: &RunConfig, out: Option<&Path>, default: String) -> anyhow::Result<PathBuf> {
    let path = cfg.output_dir.join(out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(default)));
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    Ok(path)
}

fn row(name: &str, value: impl std::fmt::Display) {
    println!("{name:<12}{value}");
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Profile { tau, samples, periods, out } => {
            let opts = cfg.profile_options();
            let p = solve_profile(tau, samples.unwrap_or(cfg.profile_samples), periods, &opts)?;
            let path = output_path(&cfg, out.as_deref(), format!("profile_tau{tau}.csv"))?;
            let mut w = create(&path)?;
            delaunay_cmc::output::write_profile_csv(&p, &mut w)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
            let meta = path.with_extension("json");
            write_json(&profile_metadata(&p, &opts), create(&meta)?)?;
            row("tau", fmt_num(tau));
            row("s_tau", fmt_num(p.s_tau));
            row("drift", fmt_num(p.max_energy_drift()));
            row("csv", path.display());
            row("metadata", meta.display());
        }
        Command::Period { tau, method } => {
            let elliptic = matches!(method, PeriodChoice::Both | PeriodChoice::Elliptic)
                .then(|| period_elliptic(tau))
                .transpose()?;
            let quadrature = matches!(method, PeriodChoice::Both | PeriodChoice::Quadrature)
                .then(|| period_quadrature(tau))
                .transpose()?;
            row("tau", fmt_num(tau));
            if let Some(a) = &elliptic {
                row("elliptic", fmt_num(a.s_tau));
            }
            if let Some(b) = &quadrature {
                row("quadrature", fmt_num(b.s_tau));
            }
            if let (Some(a), Some(b)) = (elliptic, quadrature) {
                row("difference", fmt_num((a.s_tau - b.s_tau).abs()));
            }
        }
        Command::Bands { tau, kmax, alphas, out } => {
            let n = alphas.unwrap_or(cfg.alpha_samples);
            let p = solve_profile(tau, cfg.profile_samples, 1, &cfg.profile_options())?;
            let table = band_table(&p, kmax, &linear_grid(0.0, PI, n))?;
            let path = output_path(&cfg, out.as_deref(), format!("bands_tau{tau}.csv"))?;
            write_band_csv(&table, create(&path)?)?;
            row("tau", fmt_num(tau));
            row("s_tau", fmt_num(p.s_tau));
            for b in &table.bands {
                println!("band {:<7}{} {}", b.k, fmt_num(b.lower), fmt_num(b.upper));
            }
            let axial: Vec<String> = axial_field_bands(&p)?.iter().map(usize::to_string).collect();
            row("axial", axial.join(","));
            row("csv", path.display());
        }
        Command::Flow { j, alpha, tau_from, tau_to, steps, out } => {
            let sym = SymmetryClass::new(j, alpha)?;
            let rows = spectral_flow_table(&sym, &linear_grid(tau_from, tau_to, steps))?;
            let path = output_path(&cfg, out.as_deref(), format!("flow_j{j}_alpha{alpha}.csv"))?;
            write_flow_csv(&rows, create(&path)?)?;
            row("rows", rows.len());
            row("csv", path.display());
        }
        Command::Index { tau, j, alpha, json } => {
            let report = index(tau, &SymmetryClass::new(j, alpha)?)?;
            if json {
                write_json(&report, std::io::stdout().lock())?;
            } else {
                row("tau", fmt_num(report.tau));
                row("j", j);
                row("alpha", fmt_num(alpha));
                row("index", report.index);
                row("n_cutoff", report.n_cutoff);
                for c in &report.contributions {
                    println!("mode n={} k={} {}", c.n, c.k, fmt_num(c.eigenvalue));
                }
            }
        }
        Command::Bifurcate { j, alpha, second, json, out } => {
            let sym = SymmetryClass::new(j, alpha)?;
            let point = if second {
                match second_crossing(&sym)? {
                    Some(p) => p,
                    None => bail!("no crossing of the second band found for j = {j}, alpha = {alpha}"),
                }
            } else {
                first_bifurcation(&sym)?
            };
            if let Some(out) = out {
                let path = output_path(&cfg, Some(&out), String::new())?;
                write_bifurcation_csv(std::slice::from_ref(&point), create(&path)?)?;
            }
            if json {
                write_json(&point, std::io::stdout().lock())?;
            } else {
                print_point(&point);
            }
        }
        Command::TauStar { jmax, alphas, out } => {
            let res = critical_tau_star(jmax.unwrap_or(cfg.j_max), alphas.unwrap_or(cfg.alpha_samples))?;
            let path = output_path(&cfg, out.as_deref(), "tau_star.csv".into())?;
            write_bifurcation_csv(&res.points, create(&path)?)?;
            row("tau_star", fmt_num(res.tau_star));
            row("j", res.maximizer.j);
            row("alpha", fmt_num(res.maximizer.alpha));
            for c in &res.collisions {
                println!(
                    "collision   j={} alpha={} and j={} alpha={} at {}",
                    c.first.j,
                    fmt_num(c.first.alpha),
                    c.second.j,
                    fmt_num(c.second.alpha),
                    fmt_num(c.tau_first)
                );
            }
            row("csv", path.display());
        }
        Command::Mesh { tau, j, alpha, eta, out, format, res_t, res_theta, periods } => {
            let res = (res_t.unwrap_or(cfg.mesh_res_t), res_theta.unwrap_or(cfg.mesh_res_theta));
            let periods = periods.unwrap_or(cfg.mesh_periods);
            let format = match format {
                Some(f) => f,
                None => out.extension().and_then(|e| e.to_str()).unwrap_or("obj").parse()?,
            };
            let path = output_path(&cfg, Some(&out), String::new())?;
            let point = j.map(|j| SymmetryClass::new(j, alpha).and_then(|s| first_bifurcation(&s))).transpose()?;
            let tau = match (tau, &point) {
                (Some(t), Some(p)) if (t - p.tau_star).abs() > 1e-6 => {
                    eprintln!(
                        "warning: the normal graph uses the eigenfunction at tau = {}, not at {}",
                        fmt_num(p.tau_star),
                        fmt_num(t)
                    );
                    t
                }
                (Some(t), _) => t,
                (None, Some(p)) => p.tau_star,
                (None, None) => unreachable!("clap requires --tau or --j"),
            };
            let profile = solve_profile(tau, cfg.profile_samples, periods, &cfg.profile_options())?;
            let mesh = match &point {
                Some(p) => {
                    if let Some(w) = amplitude_warning(&profile, eta) {
                        eprintln!("warning: {w}");
                    }
                    mesh_perturbed(&profile, p, eta, res, periods)?
                }
                None => mesh_delaunay(&profile, periods, res.0, res.1)?,
            };
            export_mesh(&mesh, format, &path)?;
            row("tau", fmt_num(tau));
            row("vertices", mesh.vertex_count());
            row("faces", mesh.faces.len());
            row(format.extension(), path.display());
        }
        Command::Verify { only } => {
            let ids: Vec<usize> = if only.is_empty() { (1..=verify::CRITERIA.len()).collect() } else { only };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > verify::CRITERIA.len()) {
                return Err(Error::InvalidArgument(format!("no criterion {bad}")).into());
            }
            let mut failed = 0;
            let mut stdout = std::io::stdout().lock();
            for id in ids.iter().copied() {
                let o = verify::run(id);
                failed += usize::from(!o.passed);
                writeln!(stdout, "{o}")?;
                stdout.flush()?;
            }
            writeln!(stdout, "verify: {} passed, {failed} failed", ids.len() - failed)?;
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_point(p: &BifurcationPoint) {
    row("j", p.symmetry.j);
    row("alpha", fmt_num(p.symmetry.alpha));
    row("beta", fmt_num(p.symmetry.beta(1)));
    row("tau", fmt_num(p.tau_star));
    row("s_tau", fmt_num(p.s_tau));
    row("slope", fmt_num(p.slope));
    row("dtau_slope", fmt_num(p.dtau_slope));
    row("band_index", p.band_index);
    row("residual", fmt_num(p.residual));
    row("conjectural", p.conjectural);
}
