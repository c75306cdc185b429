use super::{QuadValue, QuadratureConfig, QuadratureResult};
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

pub(crate) const NODES_PER_PANEL: usize = 21;

/// Abscissae of the 21-point rule on `[a, b]`.
pub(crate) fn panel_nodes(a: f64, b: f64) -> impl Iterator<Item = f64> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    XGK[..10]
        .iter()
        .flat_map(move |&x| [center - half * x, center + half * x])
        .chain(std::iter::once(center))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel<V> {
    pub sector: usize,
    pub a: f64,
    pub b: f64,
    pub value: V,
    pub error: f64,
    pub resabs: f64,
    pub frozen: bool,
}

/// One Gauss–Kronrod 10/21 evaluation with the QUADPACK error rescaling.
pub(crate) fn gk21<V, F>(f: &F, sector: usize, a: f64, b: f64) -> Result<Panel<V>>
where
    V: QuadValue,
    F: Fn(usize, f64) -> Result<V>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let mut values = [V::zero(); 21];
    let f_center = f(sector, center)?;
    values[20] = f_center;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_gauss = V::zero();
    let mut res_abs = WGK[10] * f_center.magnitude();

    for j in 0..10 {
        let x = half * XGK[j];
        let lo = f(sector, center - x)?;
        let hi = f(sector, center + x)?;
        values[2 * j] = lo;
        values[2 * j + 1] = hi;
        let sum = lo + hi;
        res_kronrod = res_kronrod + sum * WGK[j];
        if j % 2 == 1 {
            res_gauss = res_gauss + sum * WG[j / 2];
        }
        res_abs += WGK[j] * (lo.magnitude() + hi.magnitude());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).magnitude();
    for j in 0..10 {
        res_asc += WGK[j] * ((values[2 * j] - mean).magnitude() + (values[2 * j + 1] - mean).magnitude());
    }

    let value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut error = ((res_kronrod - res_gauss) * half).magnitude();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !error.is_finite() {
        return Err(Error::InvalidDomain(format!(
            "non-finite integrand on [{a:e}, {b:e}]"
        )));
    }

    Ok(Panel {
        sector,
        a,
        b,
        value,
        error,
        resabs: res_abs,
        frozen: false,
    })
}

pub(crate) struct Outcome<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
}

/// Global adaptive refinement over a set of panels, possibly from several
/// sectors with different variable maps. `forbidden(sector, t)` marks points
/// that must never be sampled; a panel whose children would sample one is
/// frozen instead of split.
pub(crate) fn refine<V, F, G>(
    initial: &[(usize, f64, f64)],
    f: &F,
    forbidden: G,
    cfg: &QuadratureConfig,
) -> Result<Outcome<V>>
where
    V: QuadValue,
    F: Fn(usize, f64) -> Result<V>,
    G: Fn(usize, f64) -> bool,
{
    cfg.validate()?;
    let mut panels = Vec::with_capacity(initial.len() * 8);
    for &(sector, a, b) in initial {
        if b > a {
            panels.push(gk21(f, sector, a, b)?);
        }
    }
    let mut evaluations = panels.len() * NODES_PER_PANEL;

    loop {
        let (value, error, resabs) = totals(&panels);
        let tolerance = cfg
            .abs_tol
            .max(cfg.rel_tol * value.magnitude())
            .max(200.0 * f64::EPSILON * resabs);
        if error <= tolerance {
            return Ok(Outcome {
                value,
                error,
                evaluations,
            });
        }
        if panels.len() >= cfg.max_subdivisions || evaluations + 2 * NODES_PER_PANEL > cfg.max_evaluations {
            return Err(Error::NonConvergence {
                abs_error: error,
                tolerance,
                evaluations,
            });
        }

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.frozen)
            .fold(None::<(usize, f64)>, |best, (i, p)| match best {
                Some((_, e)) if e >= p.error => best,
                _ => Some((i, p.error)),
            });
        let Some((index, _)) = worst else {
            return Err(Error::NonConvergence {
                abs_error: error,
                tolerance,
                evaluations,
            });
        };

        let Panel { sector, a, b, .. } = panels[index];
        let mid = 0.5 * (a + b);
        let too_narrow = !(mid > a && mid < b) || (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs());
        let hits_forbidden = panel_nodes(a, mid)
            .chain(panel_nodes(mid, b))
            .any(|t| forbidden(sector, t));
        if too_narrow || hits_forbidden {
            panels[index].frozen = true;
            continue;
        }

        let left = gk21(f, sector, a, mid)?;
        let right = gk21(f, sector, mid, b)?;
        evaluations += 2 * NODES_PER_PANEL;
        panels[index] = left;
        panels.push(right);
    }
}

fn totals<V: QuadValue>(panels: &[Panel<V>]) -> (V, f64, f64) {
    panels.iter().fold((V::zero(), 0.0, 0.0), |(v, e, r), p| {
        (v + p.value, e + p.error, r + p.resabs)
    })
}

/// Adaptive Gauss–Kronrod integral of `f` over the finite interval `[a, b]`.
pub fn integrate_interval<V, F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    try_integrate_interval(|t| Ok(f(t)), a, b, cfg)
}

/// Fallible variant of [`integrate_interval`].
pub fn try_integrate_interval<V, F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> Result<V>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidDomain(format!("interval [{a}, {b}] is not finite")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: V::zero(),
            abs_error_estimate: 0.0,
            n_evaluations: 0,
            truncation_k: None,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let out = refine(&[(0, lo, hi)], &|_, t| f(t), |_, _| false, cfg)?;
    Ok(QuadratureResult {
        value: out.value * sign,
        abs_error_estimate: out.error,
        n_evaluations: out.evaluations,
        truncation_k: None,
    })
}
