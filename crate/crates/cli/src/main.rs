use clap::{Args, Parser, Subcommand, ValueEnum};
use radpress_core::barrier::{charged_problem, crossover, DEFAULT_D_RANGE};
use radpress_core::catalog::Catalog;
use radpress_core::fusion::{
    derive_parameters, fit_alpha_measured, fluctuation_s, hill_wheeler_sigma, DEFAULT_L_MAX,
    FIT_ALPHA_RANGE,
};
use radpress_core::polar::{polar_crossover, polar_problem, DEFAULT_D_RANGE_FM};
use radpress_core::report::{
    coefficient_table, crossover_cases, crossover_table, curve_table, standard_alphas, AlphaValue, Cell, Table,
};
use radpress_core::tail::{moment_asymptotic, moment_by_quadrature};
use radpress_core::wick::{count_connected_flux, count_connected_scalar, kn_ratio};
use radpress_core::{Error, FusionSystem, OperatorKind, SamplingSpec, ToleranceSpec};
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "radpress", version, about = "Vacuum stress-tensor fluctuation tails and barrier penetration")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Dominant sampling frequency f0, in units of 1/τ.
    #[arg(long, global = true, default_value_t = FRAC_PI_2)]
    f0: f64,

    /// Operator power p (overrides the subcommand's default kind).
    #[arg(long, global = true)]
    p: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tail coefficients of the time-averaged momentum flux (p = 3).
    Table1(AlphaList),
    /// Charged-particle crossovers for the six standard (α, v0) cases.
    Table2(ChargedArgs),
    /// Tail coefficients of the polarizable-particle force (p = 7).
    Table3(AlphaList),
    /// Hill–Wheeler baseline, fluctuation cross section and α fits.
    Fusion(FusionArgs),
    /// Single charged-particle crossover, or its (d, F, G) curve.
    Crossover(CrossoverArgs),
    /// Polarizable-particle crossover, or its (d, F, G) curve.
    Polar(PolarArgs),
    /// Brute-force Wick contraction counts.
    Wick(WickArgs),
    /// Leading-order moments, closed form vs quadrature.
    Moments(MomentArgs),
}

#[derive(Args, Debug)]
struct AlphaList {
    /// Extra α values (fractions like 1/5 or decimals), appended to 1/2, 1/3, 1/4.
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Vec<AlphaValue>,
}

#[derive(Args, Debug)]
struct ChargedArgs {
    #[arg(long, default_value_t = 1)]
    z: u32,
    /// Scan interval in units of λ_C, `lo,hi`.
    #[arg(long, value_parser = parse_range)]
    d_range: Option<(f64, f64)>,
}

#[derive(Args, Debug)]
struct FusionArgs {
    /// System JSON file, or the name of a built-in system.
    #[arg(long, default_value = "Ar+Sm")]
    system: String,
    /// Fit α to the measured cross section (default when no --alpha is given).
    #[arg(long)]
    fit: bool,
    /// Evaluate the fluctuation cross section at this α.
    #[arg(long, value_parser = parse_alpha)]
    alpha: Option<AlphaValue>,
    /// Only the derived parameters and the Hill–Wheeler cross section.
    #[arg(long)]
    hill_wheeler: bool,
    /// Emit the S(α) curve instead of the report.
    #[arg(long)]
    curve: bool,
    #[arg(long, default_value_t = DEFAULT_L_MAX)]
    l_max: usize,
}

#[derive(Args, Debug)]
struct CrossoverArgs {
    #[arg(long, value_parser = parse_alpha)]
    alpha: AlphaValue,
    #[arg(long)]
    v0: f64,
    #[command(flatten)]
    charged: ChargedArgs,
    /// Emit (d, F, G) on the scan grid instead of the root.
    #[arg(long)]
    curve: bool,
}

#[derive(Args, Debug)]
struct PolarArgs {
    #[arg(long, default_value = "neutron")]
    particle: String,
    /// Catalog file to look the particle up in (default: built-in).
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, value_parser = parse_alpha)]
    alpha: AlphaValue,
    #[arg(long, default_value_t = 0.2)]
    v0: f64,
    /// Scan interval in fm, `lo,hi`.
    #[arg(long, value_parser = parse_range)]
    d_range: Option<(f64, f64)>,
    #[arg(long)]
    curve: bool,
}

#[derive(Args, Debug)]
struct WickArgs {
    /// Number of vertices (repeatable or comma-separated; default 2..=7).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha, required = true)]
    alpha: Vec<AlphaValue>,
    /// Moment orders.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4])]
    n: Vec<u32>,
}

fn parse_alpha(s: &str) -> Result<AlphaValue, String> {
    AlphaValue::parse(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(format!("need 0 < lo < hi, got {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn kind_for(p: Option<u32>, default: OperatorKind) -> OperatorKind {
    match p {
        None => default,
        Some(3) => OperatorKind::momentum_flux(),
        Some(7) => OperatorKind::polarizable_force(),
        Some(p) => default.with_power(p),
    }
}

fn with_standard(extra: &[AlphaValue]) -> Vec<AlphaValue> {
    let mut v = standard_alphas();
    v.extend_from_slice(extra);
    v
}

fn error_row(t: &mut Table, mut lead: Vec<Cell>, e: &Error) {
    t.row_errors += 1;
    while lead.len() + 1 < t.header.len() {
        lead.push(Cell::Empty);
    }
    lead.push(Cell::Text(format!("error: {e}")));
    t.push(lead);
}

fn load_system(arg: &str) -> Result<FusionSystem, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let catalog = Catalog::from_path(path)?;
        return match catalog.systems.as_slice() {
            [only] => Ok(only.clone()),
            _ => Err(Error::InvalidParameter(format!(
                "{arg}: expected exactly one system, found {}",
                catalog.systems.len()
            ))),
        };
    }
    Catalog::builtin().system(arg).cloned()
}

fn fusion(args: &FusionArgs) -> Result<Table, Error> {
    let sys = load_system(&args.system)?;
    let derived = derive_parameters(&sys)?;
    eprintln!("# k = sqrt(2 mu E) in MeV (hbar = c = 1); S = k^2 sigma / pi");

    if args.curve {
        let mut t = Table::new(["alpha", "S", "sigma_mb", "status"]);
        let (lo, hi) = FIT_ALPHA_RANGE;
        let steps = 90;
        for i in 0..=steps {
            let alpha = lo + (hi - lo) * f64::from(i) / f64::from(steps);
            match fluctuation_s(&sys, alpha, args.l_max) {
                Ok(f) => t.push(vec![alpha.into(), f.s.into(), f.sigma_mb.into(), "ok".into()]),
                Err(e) => error_row(&mut t, vec![alpha.into()], &e),
            }
        }
        return Ok(t);
    }

    let mut t = Table::new(["quantity", "value", "unit", "status"]);
    let row = |t: &mut Table, name: &str, v: f64, unit: &str| {
        t.push(vec![name.into(), v.into(), unit.into(), "ok".into()]);
    };
    row(&mut t, "k", derived.k, "MeV");
    row(&mut t, "d0", derived.d0, "fm");
    row(&mut t, "xi", derived.xi, "1");
    row(&mut t, "x0", derived.x0, "1");
    match hill_wheeler_sigma(&sys, args.l_max) {
        Ok(s) => row(&mut t, "sigma_hill_wheeler", s, "mb"),
        Err(e) => error_row(&mut t, vec!["sigma_hill_wheeler".into()], &e),
    }
    if args.hill_wheeler {
        return Ok(t);
    }

    if let Some(alpha) = args.alpha {
        match fluctuation_s(&sys, alpha.value, args.l_max) {
            Ok(f) => {
                row(&mut t, "alpha", alpha.value, "1");
                row(&mut t, "S", f.s, "1");
                row(&mut t, "sigma_fluctuation", f.sigma_mb, "mb");
            }
            Err(e) => error_row(&mut t, vec!["sigma_fluctuation".into()], &e),
        }
    }
    if args.fit || args.alpha.is_none() {
        let fit = if sys.sigma_exp.is_some() {
            fit_alpha_measured(&sys, args.l_max)
        } else {
            Err(Error::InvalidParameter(format!("system `{}` has no measured cross section", sys.name)))
        };
        match fit {
            Ok(fit) => {
                row(&mut t, "s_target", fit.s_target, "1");
                row(&mut t, "alpha_fit", fit.alpha, "1");
                if let Some((lo, hi)) = fit.alpha_band {
                    row(&mut t, "alpha_fit_lo", lo, "1");
                    row(&mut t, "alpha_fit_hi", hi, "1");
                }
            }
            Err(e) => error_row(&mut t, vec!["alpha_fit".into()], &e),
        }
    }
    Ok(t)
}

fn crossover_cmd(args: &CrossoverArgs) -> Result<Table, Error> {
    let range = args.charged.d_range.unwrap_or(DEFAULT_D_RANGE);
    if args.curve {
        let points = charged_problem(args.alpha.value, args.v0, args.charged.z)?.curve(range)?;
        return Ok(curve_table(&points, "d_over_lambda_c"));
    }
    // surface argument errors as a failure rather than a row
    crossover(args.alpha.value, args.v0, args.charged.z, range)?;
    Ok(crossover_table(&[(args.alpha, args.v0)], args.charged.z, range))
}

fn polar_cmd(args: &PolarArgs) -> Result<Table, Error> {
    let catalog = match &args.catalog {
        Some(path) => Catalog::from_path(path)?,
        None => Catalog::builtin(),
    };
    let particle = catalog.particle(&args.particle)?;
    let range = args.d_range.unwrap_or(DEFAULT_D_RANGE_FM);
    if args.curve {
        let points = polar_problem(particle, args.alpha.value, args.v0)?.curve(range)?;
        return Ok(curve_table(&points, "d_fm"));
    }
    let r = polar_crossover(particle, args.alpha.value, args.v0, range)?;
    let mut t = Table::new(["particle", "alpha", "v0", "G", "d_fm", "x", "dominance", "status"]);
    t.push(vec![
        particle.name.as_str().into(),
        Cell::Text(args.alpha.label()),
        args.v0.into(),
        r.common_value.into(),
        r.d_star.into(),
        r.x_star.into(),
        r.dominance.as_str().into(),
        "ok".into(),
    ]);
    Ok(t)
}

fn wick_cmd(args: &WickArgs) -> Table {
    let ns: Vec<usize> = if args.n.is_empty() { (2..=7).collect() } else { args.n.clone() };
    let mut t = Table::new([
        "n",
        "scalar_connected",
        "scalar_formula",
        "flux_connected",
        "flux_formula",
        "k_n",
        "k_n_closed_form",
        "status",
    ]);
    for n in ns {
        let counts = count_connected_scalar(n)
            .and_then(|s| Ok((s, count_connected_flux(n)?, kn_ratio(n)?)));
        match counts {
            Ok((s, f, k)) => {
                let ok = s.matches() && f.matches();
                if !ok {
                    t.row_errors += 1;
                }
                t.push(vec![
                    Cell::Int(n as i64),
                    Cell::Int(s.total_connected as i64),
                    Cell::Int(s.formula_value as i64),
                    Cell::Int(f.total_connected as i64),
                    Cell::Int(f.formula_value as i64),
                    k.value.into(),
                    k.closed_form.into(),
                    if ok { "ok" } else { "mismatch" }.into(),
                ]);
            }
            Err(e) => error_row(&mut t, vec![Cell::Int(n as i64)], &e),
        }
    }
    t
}

fn moments_cmd(args: &MomentArgs, f0: f64, p: Option<u32>) -> Table {
    let kind = kind_for(p, OperatorKind::momentum_flux());
    let tol = ToleranceSpec::default();
    let mut t = Table::new(["alpha", "p", "n", "ln_moment", "ln_moment_quadrature", "rel_diff", "status"]);
    for alpha in &args.alpha {
        for &n in &args.n {
            let lead = vec![Cell::Text(alpha.label()), Cell::Int(i64::from(kind.p)), Cell::Int(i64::from(n))];
            let pair = SamplingSpec::with_f0(alpha.value, f0).and_then(|spec| {
                Ok((moment_asymptotic(&spec, &kind, n)?, moment_by_quadrature(&spec, &kind, n, &tol)?))
            });
            match pair {
                Ok((closed, quad)) => {
                    let mut row = lead;
                    row.extend([closed.into(), quad.into(), (quad - closed).exp_m1().abs().into(), "ok".into()]);
                    t.push(row);
                }
                Err(e) => error_row(&mut t, lead, &e),
            }
        }
    }
    t
}

fn run(cli: &Cli) -> Result<Table, Error> {
    Ok(match &cli.command {
        Command::Table1(a) => {
            coefficient_table(&kind_for(cli.p, OperatorKind::momentum_flux()), cli.f0, &with_standard(&a.alpha))
        }
        Command::Table3(a) => coefficient_table(
            &kind_for(cli.p, OperatorKind::polarizable_force()),
            cli.f0,
            &with_standard(&a.alpha),
        ),
        Command::Table2(c) => crossover_table(&crossover_cases(), c.z, c.d_range.unwrap_or(DEFAULT_D_RANGE)),
        Command::Fusion(a) => fusion(a)?,
        Command::Crossover(a) => crossover_cmd(a)?,
        Command::Polar(a) => polar_cmd(a)?,
        Command::Wick(a) => wick_cmd(a),
        Command::Moments(a) => moments_cmd(a, cli.f0, cli.p),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if table.row_errors == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{} row(s) failed", table.row_errors);
        ExitCode::from(1)
    }
}
