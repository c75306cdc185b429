//! Sweeps, polar spectra and asymptotic comparisons as datasets.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::table::{Cell, Dataset, Metadata};
use crate::error::{Error, Result};
use crate::observables::{
    force_curl_pc, free_space_rate, lateral_force, lateral_force_near, lateral_force_pc, lateral_force_retarded,
    recoil_velocity, retarded_envelope, surface_rate, EmitterConfig, GammaMode, SolverOptions,
};
use crate::planar_em::{Material, MaterialRegistry};
use crate::spectrum::{spectrum_coefficients, SpectrumCoefficients};

const NM: f64 = 1e-9;
const NON_CONVERGENCE: &str = "non_convergence";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    Force,
    ForcePc,
    ForceNear,
    ForceRetarded,
    Rate,
    Velocity,
    Spectrum,
    Coefficients,
    Asymmetry,
    Curl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub material: String,
    /// [m]
    pub z_min: f64,
    /// [m]
    pub z_max: f64,
    pub n_points: usize,
    pub scale: Scale,
    /// [s]
    pub t: f64,
    pub options: SolverOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.z_min > 0.0 && self.z_min.is_finite()) {
            return Err(Error::InvalidRange(format!("z_min must be > 0, got {}", self.z_min)));
        }
        if !(self.z_max > self.z_min && self.z_max.is_finite()) {
            return Err(Error::InvalidRange(format!(
                "z_max must exceed z_min, got [{}, {}]",
                self.z_min, self.z_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidRange(format!("need at least 2 points, got {}", self.n_points)));
        }
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidRange(format!("time must be >= 0, got {}", self.t)));
        }
        self.options.quadrature.validate()
    }

    /// The distance grid [m].
    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.z_max;
                }
                let s = i as f64;
                match self.scale {
                    Scale::Linear => (self.z_min * (last - s) + self.z_max * s) / last,
                    Scale::Log => self.z_min * (self.z_max / self.z_min).powf(s / last),
                }
            })
            .collect()
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut c = match self.quantity {
            Quantity::Coefficients => vec!["z_A_nm", "A", "B", "C", "D"],
            Quantity::Spectrum => vec!["z_A_nm", "gamma_bar_forward", "gamma_bar_backward"],
            _ => vec!["z_A_nm", "value_SI"],
        };
        c.extend(["error_estimate", "regime", "flag"]);
        match self.quantity {
            Quantity::Velocity => c.extend(["value_mm_s", "force_N", "gamma_per_s"]),
            Quantity::Rate => c.extend(["gamma_free_space", "gamma_surface"]),
            _ => {}
        }
        c
    }
}

pub(crate) fn metadata(options: &SolverOptions, registry: &MaterialRegistry) -> Metadata {
    let q = &options.quadrature;
    Metadata {
        version: env!("CARGO_PKG_VERSION"),
        rel_tol: q.rel_tol,
        abs_tol: q.abs_tol,
        tail_cutoff: q.tail_cutoff,
        gamma_mode: match options.gamma_mode {
            GammaMode::Total => "total",
            GammaMode::FreeSpace => "free-space",
        },
        registry_hash: registry.hash(),
    }
}

fn near_request_check(quantity: &str, mat: &Material) -> Result<()> {
    if mat.is_perfect_conductor() {
        return Err(Error::UnsupportedMaterial {
            quantity: if quantity == "asymptotics" { "asymptotics" } else { "force-near" },
            material: mat.name().to_string(),
            reason: "the non-retarded law needs a finite permittivity",
        });
    }
    Ok(())
}

fn max_error(c: &SpectrumCoefficients) -> f64 {
    c.errors.iter().copied().fold(0.0, f64::max)
}

/// Quantity values at one distance, excluding `z_A_nm` and `flag`.
fn evaluate(spec: &SweepSpec, mat: &Material, z: f64) -> Result<Vec<Cell>> {
    let cfg = EmitterConfig::cesium(z);
    let o = &spec.options;
    let q = &o.quadrature;
    let force_row = |f: crate::observables::ForceSample| {
        vec![f.value.into(), f.error_estimate.into(), f.regime.as_str().into()]
    };
    Ok(match spec.quantity {
        Quantity::Force => force_row(lateral_force(&cfg, mat, spec.t, o)?),
        Quantity::ForcePc => force_row(lateral_force_pc(&cfg, spec.t, o)?),
        Quantity::ForceNear => force_row(lateral_force_near(&cfg, mat, spec.t, o)?),
        Quantity::ForceRetarded => force_row(lateral_force_retarded(&cfg, mat, spec.t, o)?),
        Quantity::Curl => vec![force_curl_pc(&cfg)?.into(), 0.0.into(), "pc".into()],
        Quantity::Rate => {
            let g0 = free_space_rate(&cfg);
            let g1 = surface_rate(&cfg, mat, q)?;
            let total = match o.gamma_mode {
                GammaMode::Total => g0 + g1.value,
                GammaMode::FreeSpace => g0,
            };
            vec![total.into(), g1.error_estimate.into(), "full".into(), g0.into(), g1.value.into()]
        }
        Quantity::Velocity => {
            let v = recoil_velocity(&cfg, mat, o)?;
            vec![
                v.velocity.into(),
                v.error_estimate.into(),
                "full".into(),
                (v.velocity * 1e3).into(),
                v.force.into(),
                v.gamma.into(),
            ]
        }
        Quantity::Coefficients => {
            let c = spectrum_coefficients(&cfg, mat, q)?;
            vec![c.a.into(), c.b.into(), c.c.into(), c.d.into(), max_error(&c).into(), "full".into()]
        }
        Quantity::Spectrum => {
            let c = spectrum_coefficients(&cfg, mat, q)?;
            let err = c.errors.iter().sum::<f64>();
            vec![c.evaluate(0.0).into(), c.evaluate(std::f64::consts::PI).into(), err.into(), "full".into()]
        }
        Quantity::Asymmetry => {
            let c = spectrum_coefficients(&cfg, mat, q)?;
            vec![c.asymmetry().into(), (4.0 * c.errors[1]).into(), "full".into()]
        }
    })
}

/// Splits a quantity row into the leading values and the trailing extras so
/// that `flag` lands at its fixed position.
fn assemble(spec: &SweepSpec, z: f64, values: Result<Vec<Cell>>) -> Result<Vec<Cell>> {
    let columns = spec.columns();
    let flag_at = columns.iter().position(|c| *c == "flag").expect("flag column");
    let mut row = vec![Cell::Num(z / NM)];
    match values {
        Ok(v) => {
            let (head, tail) = v.split_at(flag_at - 1);
            row.extend_from_slice(head);
            row.push("".into());
            row.extend_from_slice(tail);
        }
        Err(Error::NonConvergence { .. }) => {
            for name in &columns[1..] {
                row.push(match *name {
                    "regime" => regime_name(spec.quantity).into(),
                    "flag" => NON_CONVERGENCE.into(),
                    _ => f64::NAN.into(),
                });
            }
        }
        Err(e) => return Err(e),
    }
    Ok(row)
}

fn regime_name(q: Quantity) -> &'static str {
    match q {
        Quantity::ForcePc | Quantity::Curl => "pc",
        Quantity::ForceNear => "near",
        Quantity::ForceRetarded => "retarded",
        _ => "full",
    }
}

/// One row per grid distance, in grid order. Rows whose quadrature does not
/// converge carry NaN values and a `non_convergence` flag.
pub fn run_sweep(spec: &SweepSpec, registry: &MaterialRegistry) -> Result<Dataset> {
    spec.validate()?;
    let mat = registry.get(&spec.material)?;
    if spec.quantity == Quantity::ForceNear {
        near_request_check("force-near", mat)?;
    }
    let grid = spec.grid();
    let rows = grid
        .par_iter()
        .map(|&z| assemble(spec, z, evaluate(spec, mat, z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        columns: spec.columns(),
        rows,
        header: vec![
            ("material".into(), mat.name().into()),
            ("quantity".into(), format!("{:?}", spec.quantity).to_lowercase().into()),
            ("t_s".into(), spec.t.into()),
        ],
        metadata: metadata(&spec.options, registry),
    })
}

pub fn has_nonconvergence(data: &Dataset) -> bool {
    data.column("flag")
        .map(|c| c.iter().any(|f| **f == Cell::Text(NON_CONVERGENCE.into())))
        .unwrap_or(false)
}

pub const SPECTRUM_COLUMNS: [&str; 3] = ["phi_rad", "gamma_bar_raw", "gamma_bar_normalized"];

/// Polar samples of `Γ̄(φ)` on a uniform grid of `n_phi` angles in `[0, 2π)`.
pub fn run_spectrum(
    material: &str,
    z: f64,
    n_phi: usize,
    options: &SolverOptions,
    registry: &MaterialRegistry,
) -> Result<Dataset> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidRange(format!("distance must be > 0, got {z}")));
    }
    if n_phi < 2 {
        return Err(Error::InvalidRange(format!("need at least 2 angles, got {n_phi}")));
    }
    options.quadrature.validate()?;
    let mat = registry.get(material)?;
    let c = spectrum_coefficients(&EmitterConfig::cesium(z), mat, &options.quadrature)?;
    let phis: Vec<f64> = (0..n_phi).map(|i| TAU * i as f64 / n_phi as f64).collect();
    let raw: Vec<f64> = phis.iter().map(|&p| c.evaluate(p)).collect();
    let peak = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rows = phis
        .iter()
        .zip(&raw)
        .map(|(&p, &g)| {
            let norm = if peak > 0.0 { g / peak } else { 0.0 };
            vec![p.into(), g.into(), norm.into()]
        })
        .collect();
    Ok(Dataset {
        columns: SPECTRUM_COLUMNS.to_vec(),
        rows,
        header: vec![
            ("material".into(), mat.name().into()),
            ("z_A_nm".into(), (z / NM).into()),
            ("A".into(), c.a.into()),
            ("B".into(), c.b.into()),
            ("C".into(), c.c.into()),
            ("D".into(), c.d.into()),
            ("4B".into(), c.asymmetry().into()),
        ],
        metadata: metadata(options, registry),
    })
}

pub const ASYMPTOTICS_COLUMNS: [&str; 6] = ["z_A_nm", "F_full", "F_near", "F_retarded", "rel_dev_near", "rel_dev_ret"];

/// Full force against both asymptotes. `rel_dev_near` is relative to
/// `|F_full|`; `rel_dev_ret` is relative to the retarded envelope, since the
/// retarded law itself oscillates through zero.
pub fn compare_asymptotics(
    material: &str,
    z_list: &[f64],
    options: &SolverOptions,
    registry: &MaterialRegistry,
) -> Result<Dataset> {
    if z_list.is_empty() || z_list.iter().any(|z| !(*z > 0.0 && z.is_finite())) {
        return Err(Error::InvalidRange("distances must be a non-empty list of values > 0".into()));
    }
    options.quadrature.validate()?;
    let mat = registry.get(material)?;
    near_request_check("asymptotics", mat)?;
    let rows = z_list
        .par_iter()
        .map(|&z| {
            let cfg = EmitterConfig::cesium(z);
            let full = lateral_force(&cfg, mat, 0.0, options)?.value;
            let near = lateral_force_near(&cfg, mat, 0.0, options)?.value;
            let ret = lateral_force_retarded(&cfg, mat, 0.0, options)?.value;
            let dev_near = (full - near).abs() / full.abs();
            let dev_ret = (full - ret).abs() / retarded_envelope(&cfg, mat);
            Ok(vec![(z / NM).into(), full.into(), near.into(), ret.into(), dev_near.into(), dev_ret.into()])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        columns: ASYMPTOTICS_COLUMNS.to_vec(),
        rows,
        header: vec![("material".into(), mat.name().into())],
        metadata: metadata(options, registry),
    })
}

/// Figure-reproduction datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Perfect-conductor force, 100–2500 nm.
    Fig2,
    /// Silica force and velocity, 100–1000 nm.
    #[value(name = "fig3-silica")]
    Fig3Silica,
    /// Gold force and velocity, 100–1000 nm.
    #[value(name = "fig3-gold")]
    Fig3Gold,
    /// Asymmetric polar spectrum, gold at 264 nm.
    Fig4,
    /// Symmetric polar spectrum, gold at 302 nm.
    Fig5,
}

pub fn run_preset(preset: Preset, options: &SolverOptions, registry: &MaterialRegistry) -> Result<Dataset> {
    let sweep = |quantity, material: &str, z_min: f64, z_max: f64| SweepSpec {
        quantity,
        material: material.to_string(),
        z_min: z_min * NM,
        z_max: z_max * NM,
        n_points: 500,
        scale: Scale::Linear,
        t: 0.0,
        options: *options,
    };
    match preset {
        Preset::Fig2 => run_sweep(&sweep(Quantity::ForcePc, "pc", 100.0, 2500.0), registry),
        Preset::Fig3Silica => run_sweep(&sweep(Quantity::Velocity, "silica", 100.0, 1000.0), registry),
        Preset::Fig3Gold => run_sweep(&sweep(Quantity::Velocity, "gold", 100.0, 1000.0), registry),
        Preset::Fig4 => run_spectrum("gold", 264.0 * NM, 720, options, registry),
        Preset::Fig5 => run_spectrum("gold", 302.0 * NM, 720, options, registry),
    }
}
