//! Subcommand bodies. Each returns the rendered artifact and its exit code.

use std::path::Path;

use gkz_core::composition::SampleGrid;
use gkz_core::hardy::DonoghueKind;
use gkz_core::scalar;
use gkz_core::{
    donoghue_weights, write_convergence_csv, Complex, MomentFunctional, Precision, RadiusMode,
    SampledLinearMap, SymbolPair, WeightSequence,
};
use serde::Serialize;

use crate::config::SessionConfig;
use crate::error::{CliError, EXIT_FALSIFIED, EXIT_OK};
use crate::{parse, sampling, Command, FunctionalArgs, WeightArgs};

pub fn dispatch(config: &SessionConfig, command: Command) -> Result<(String, i32), CliError> {
    match command {
        Command::GkzScan { functional, r, nmax } => gkz_scan(config, &functional, r, nmax),
        Command::DefectTable {
            functional,
            k,
            n,
            radius,
        } => defect_table(config, &functional, k, &parse::usize_list(&n)?, radius),
        Command::VietaCheck { functional, n, kmax } => vieta_check(config, &functional, n, kmax),
        Command::HardyInfo { weights } => hardy_info(config, &weights),
        Command::WcompVerify {
            map,
            builtin,
            r,
            degree,
            polys,
            scan_witnesses,
        } => {
            let source = match (&map, &builtin) {
                (Some(path), _) => MapSource::File(path),
                (None, Some(name)) => MapSource::Builtin(name),
                (None, None) => return Err(CliError::Usage("need --map or --builtin".into())),
            };
            wcomp_verify(config, source, r, degree, polys, scan_witnesses)
        }
        Command::DonoghueDemo { kind, sizes } => donoghue_demo(config, &kind, sizes.as_deref()),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn load_functional(config: &SessionConfig, args: &FunctionalArgs) -> Result<MomentFunctional, CliError> {
    let prec = config.precision();
    let k = config.truncation_k;
    let f = if let Some(point) = &args.point {
        MomentFunctional::point_evaluation(&parse::complex(prec, point)?, k)?
    } else if let Some(text) = &args.mixture {
        MomentFunctional::mixture(prec, &parse::mixture(prec, text)?, k)?
    } else if let Some(path) = &args.moments {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        MomentFunctional::from_json(prec, &text)?
    } else {
        return Err(CliError::Usage("need --point, --mixture or --moments".into()));
    };
    Ok(f)
}

pub fn gkz_scan(config: &SessionConfig, args: &FunctionalArgs, r: f64, nmax: usize) -> Result<(String, i32), CliError> {
    let f = load_functional(config, args)?;
    let report = f.hypothesis_scan(r, nmax)?;
    let code = if report.scan_passed { EXIT_OK } else { EXIT_FALSIFIED };
    Ok((json(&report)?, code))
}

pub fn defect_table(
    config: &SessionConfig,
    args: &FunctionalArgs,
    k: usize,
    n_list: &[usize],
    radius: Option<f64>,
) -> Result<(String, i32), CliError> {
    let f = load_functional(config, args)?;
    let mode = radius.map_or(RadiusMode::PerN, RadiusMode::Fixed);
    let rows = f.convergence_table(k, n_list, mode)?;
    let mut buf = Vec::new();
    write_convergence_csv(&rows, &mut buf)?;
    Ok((String::from_utf8(buf).expect("ascii"), EXIT_OK))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VietaOutput {
    n: usize,
    k_max: usize,
    residuals: Vec<f64>,
    max_residual: f64,
}

pub fn vieta_check(config: &SessionConfig, args: &FunctionalArgs, n: usize, kmax: usize) -> Result<(String, i32), CliError> {
    let f = load_functional(config, args)?;
    let residuals = f.vieta_check(n, kmax.min(n.saturating_sub(1)))?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let out = VietaOutput {
        n,
        k_max: residuals.len(),
        residuals,
        max_residual,
    };
    Ok((json(&out)?, EXIT_OK))
}

pub fn donoghue_kind(text: &str) -> Result<DonoghueKind, CliError> {
    match text.split_once(':') {
        None if text == "reciprocal" => Ok(DonoghueKind::Reciprocal),
        Some(("geometric", q)) => q
            .parse()
            .map(DonoghueKind::Geometric)
            .map_err(|_| CliError::Usage(format!("bad geometric ratio {q:?}"))),
        _ => Err(CliError::Usage(format!(
            "unknown weight family {text:?}; use reciprocal or geometric:q"
        ))),
    }
}

pub fn load_weights(config: &SessionConfig, args: &WeightArgs) -> Result<WeightSequence, CliError> {
    let prec = config.precision();
    let n = config.weight_truncation_n;
    if args.classical {
        Ok(WeightSequence::classical(prec, n))
    } else if let Some(kind) = &args.donoghue {
        Ok(donoghue_weights(prec, &donoghue_kind(kind)?, n)?)
    } else if let Some(path) = &args.weights {
        Ok(WeightSequence::load(prec, path)?)
    } else {
        Err(CliError::Usage("need --classical, --donoghue or --weights".into()))
    }
}

pub fn hardy_info(config: &SessionConfig, args: &WeightArgs) -> Result<(String, i32), CliError> {
    let beta = load_weights(config, args)?;
    Ok((json(&beta.diagnostics()?)?, EXIT_OK))
}

pub enum MapSource<'a> {
    File(&'a Path),
    Builtin(&'a str),
}

/// Built-in maps on the standard 8×8 grid.
pub fn builtin_map(prec: Precision, name: &str, degree: usize) -> Result<SampledLinearMap, CliError> {
    let grid = SampleGrid::standard(prec);
    let bits = prec.bits();
    let one = scalar::one(prec);
    let map = match name {
        "identity" => SampledLinearMap::weighted_composition(prec, grid, degree, |_| one.clone(), |z| z.clone()),
        "affine-half" => SampledLinearMap::weighted_composition(
            prec,
            grid,
            degree,
            |z| Complex::with_val(bits, z / 2u32) + 1u32,
            |z| Complex::with_val(bits, z / 2u32),
        ),
        "evaluation-at-zero" => SampledLinearMap::from_fn(prec, grid, degree, |k, _| {
            if k == 0 {
                one.clone()
            } else {
                scalar::zero(prec)
            }
        }),
        "planted-zero" => {
            let root = scalar::complex(prec, 0.3, 0.0);
            SampledLinearMap::weighted_composition(
                prec,
                grid,
                degree,
                |z| Complex::with_val(bits, z - &root),
                |z| Complex::with_val(bits, z / 2u32),
            )
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown map {other:?}; use identity, affine-half, evaluation-at-zero or planted-zero"
            )))
        }
    };
    Ok(map?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WcompOutput {
    seed: u64,
    degree: usize,
    polynomials: usize,
    max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_scan: Option<WitnessScan>,
    symbols: SymbolPair,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WitnessScan {
    scans_passed: usize,
    points: usize,
    /// `max_j |witness_j - φ(ζ_j)|` over the scans.
    max_witness_error: f64,
}

pub fn wcomp_verify(
    config: &SessionConfig,
    source: MapSource<'_>,
    r: f64,
    degree: usize,
    polys: usize,
    scan_witnesses: bool,
) -> Result<(String, i32), CliError> {
    let prec = config.precision();
    let map = match source {
        MapSource::File(path) => SampledLinearMap::from_json(prec, &std::fs::read_to_string(path)?)?,
        MapSource::Builtin(name) => builtin_map(prec, name, degree)?,
    };
    let symbols = map.detect_symbols(r)?;
    let mut rng = sampling::rng(config.seed);
    let mut max_residual = 0.0f64;
    for i in 0..polys {
        let d = i % (map.degree() + 1);
        let f = sampling::polynomial(&mut rng, prec, d);
        max_residual = max_residual.max(map.verify_factorization(&symbols, &f)?);
    }
    let witness_scan = if scan_witnesses {
        let mut passed = 0;
        let mut worst = 0.0f64;
        for j in 0..map.grid().len() {
            let report = map.per_point_functional(j)?.hypothesis_scan(r, map.degree())?;
            passed += report.scan_passed as usize;
            let d = Complex::with_val(prec.bits(), &report.witness - &symbols.phi_samples[j]);
            worst = worst.max(scalar::modulus_f64(&d));
        }
        Some(WitnessScan {
            scans_passed: passed,
            points: map.grid().len(),
            max_witness_error: worst,
        })
    } else {
        None
    };
    let code = match &witness_scan {
        Some(scan) if scan.scans_passed < scan.points => EXIT_FALSIFIED,
        _ => EXIT_OK,
    };
    let out = WcompOutput {
        seed: config.seed,
        degree: map.degree(),
        polynomials: polys,
        max_residual,
        witness_scan,
        symbols,
    };
    Ok((json(&out)?, code))
}

pub fn donoghue_demo(config: &SessionConfig, kind: &str, sizes: Option<&str>) -> Result<(String, i32), CliError> {
    let kind = donoghue_kind(kind)?;
    let sizes = match sizes {
        Some(text) => parse::usize_list(text)?,
        None => {
            let mut v: Vec<usize> = vec![64, 256, 1024];
            v.retain(|&n| n < config.weight_truncation_n);
            v.push(config.weight_truncation_n);
            v
        }
    };
    let mut out = String::from(
        "n,shift_norm,r0_estimate,spectral_radius_estimate,strictly_cyclic_sufficient,tail_ratio,kernel_radius\n",
    );
    for n in sizes {
        let d = donoghue_weights(config.precision(), &kind, n)?.diagnostics()?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            n,
            d.shift_norm,
            d.r0_estimate,
            d.spectral_radius_estimate,
            d.strictly_cyclic_sufficient,
            d.strict_cyclicity.tail_ratio,
            d.kernel_radius
        ));
    }
    Ok((out, EXIT_OK))
}
