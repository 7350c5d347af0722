//! Monte Carlo failure rates under depolarizing noise, CSV input/output, and
//! threshold estimation by finite-size scaling collapse.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoder::{chi_direct, NetworkDecoder, NoiseModel};
use crate::error::{Error, Result};
use crate::holographic::{build_code, build_network, chain_network, TensorNetwork};
use crate::pauli::{PauliOp, PauliString};
use crate::stabilizer::{builtin_seven_qubit_state, builtin_six_qubit, StabilizerCode};
use crate::tensor::CodeTensor;

/// Default p-grid, chosen to bracket the holographic crossing.
pub const DEFAULT_P_GRID: [f64; 11] = [0.14, 0.15, 0.16, 0.17, 0.18, 0.19, 0.20, 0.21, 0.22, 0.23, 0.24];

pub const DEFAULT_TRIALS: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    SixQubit,
    SevenQubit,
    ElevenQubit,
    SixteenQubit,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [
        Builtin::SixQubit,
        Builtin::SevenQubit,
        Builtin::ElevenQubit,
        Builtin::SixteenQubit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::SixQubit => "six-qubit",
            Builtin::SevenQubit => "seven-qubit",
            Builtin::ElevenQubit => "eleven-qubit",
            Builtin::SixteenQubit => "sixteen-qubit",
        }
    }

    /// The code and, where it is a network of code tensors, the network.
    pub fn build(self) -> Result<(StabilizerCode, Option<TensorNetwork>)> {
        Ok(match self {
            Builtin::SixQubit => (builtin_six_qubit(), Some(build_network(1)?)),
            Builtin::SevenQubit => (builtin_seven_qubit_state(), None),
            Builtin::ElevenQubit => {
                let net = chain_network(1);
                (build_code(&net)?, Some(net))
            }
            Builtin::SixteenQubit => {
                let net = chain_network(2);
                (build_code(&net)?, Some(net))
            }
        })
    }
}

impl std::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown builtin code {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodeSpec {
    Builtin(Builtin),
    /// JSON code description; a `<stem>.layout.json` sidecar, when present,
    /// supplies the tensor network for decoding.
    Json(PathBuf),
    Holographic(usize),
}

/// Sidecar path for a code file: `code.json` → `code.layout.json`.
pub fn layout_sidecar_path(code_path: &Path) -> PathBuf {
    code_path.with_extension("layout.json")
}

pub fn read_code(path: &Path) -> Result<StabilizerCode> {
    let text = std::fs::read_to_string(path)?;
    StabilizerCode::from_description(serde_json::from_str(&text)?)
}

/// Exact maximum-likelihood decoder for one code.
#[derive(Clone, Debug)]
pub enum Decoder {
    Network(Box<NetworkDecoder>),
    Direct(Box<CodeTensor>),
}

/// A code ready for decoding. `radius` is the network depth, or 0 for codes
/// decoded by direct coset summation.
#[derive(Clone, Debug)]
pub struct PreparedCode {
    pub radius: usize,
    pub code: StabilizerCode,
    pub decoder: Decoder,
}

impl PreparedCode {
    pub fn from_network(network: TensorNetwork, code: StabilizerCode) -> Result<Self> {
        let radius = network.depth();
        let decoder = NetworkDecoder::new(network, code.clone())?;
        Ok(Self {
            radius,
            code,
            decoder: Decoder::Network(Box::new(decoder)),
        })
    }

    pub fn direct(code: StabilizerCode) -> Result<Self> {
        let tensor = CodeTensor::from_code(code.clone())?;
        Ok(Self {
            radius: 0,
            code,
            decoder: Decoder::Direct(Box::new(tensor)),
        })
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<Self> {
        match spec {
            CodeSpec::Holographic(r) => {
                let net = build_network(*r)?;
                let code = build_code(&net)?;
                Self::from_network(net, code)
            }
            CodeSpec::Builtin(b) => match b.build()? {
                (code, Some(net)) => Self::from_network(net, code),
                (code, None) => Self::direct(code),
            },
            CodeSpec::Json(path) => {
                let code = read_code(path)?;
                let sidecar = layout_sidecar_path(path);
                if sidecar.exists() {
                    let net: TensorNetwork = serde_json::from_str(&std::fs::read_to_string(&sidecar)?)?;
                    Self::from_network(net, code)
                } else {
                    Self::direct(code)
                }
            }
        }
    }

    pub fn chi(&self, noise: &NoiseModel, s: &crate::Syndrome) -> Result<crate::ChiTable> {
        match &self.decoder {
            Decoder::Network(d) => d.chi(noise, s),
            Decoder::Direct(t) => chi_direct(t, noise, s),
        }
    }

    /// True when decoding `e` leaves a nontrivial logical error.
    pub fn trial_fails(&self, noise: &NoiseModel, e: &PauliString) -> Result<bool> {
        let s = self.code.syndrome_of(e)?;
        let chi = self.chi(noise, &s)?;
        let residual = e.multiply(&self.code.pure_error_for(&s)?)?;
        Ok(self.code.logical_class_of(&residual)? != Some(chi.argmax))
    }
}

/// One row of the failure-rate CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McPoint {
    pub radius: usize,
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub std_err: f64,
}

impl McPoint {
    pub fn new(radius: usize, n: usize, p: f64, trials: u64, failures: u64) -> Self {
        let rate = failures as f64 / trials as f64;
        Self {
            radius,
            n,
            p,
            trials,
            failures,
            failure_rate: rate,
            std_err: (rate * (1.0 - rate) / trials as f64).sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    pub code: CodeSpec,
    pub p: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.p.is_empty() {
            return Err(Error::Config("empty p grid".into()));
        }
        if let Some(p) = self.p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("p = {p} is outside [0, 1]")));
        }
        Ok(())
    }
}

pub fn run_mc(config: &McConfig) -> Result<Vec<McPoint>> {
    config.validate()?;
    let prepared = PreparedCode::from_spec(&config.code)?;
    run_mc_prepared(&prepared, &config.p, config.trials, config.seed)
}

/// Trial `t` of grid point `i` draws from a ChaCha8 generator seeded with
/// [`point_seed`]`(seed, i)` on stream `t`, so results do not depend on how
/// trials are spread over threads.
pub fn run_mc_prepared(code: &PreparedCode, p_grid: &[f64], trials: u64, seed: u64) -> Result<Vec<McPoint>> {
    let n = code.code.n();
    p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let noise = NoiseModel::depolarizing(n, p)?;
            let key = point_seed(seed, i);
            let failures = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(key);
                    rng.set_stream(t);
                    let e = sample_depolarizing(n, p, &mut rng);
                    code.trial_fails(&noise, &e).map(u64::from)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            Ok(McPoint::new(code.radius, n, p, trials, failures))
        })
        .collect()
}

/// Seed of grid point `index`.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn sample_depolarizing<R: Rng>(n: usize, p: f64, rng: &mut R) -> PauliString {
    let mut e = PauliString::identity(n);
    for q in 0..n {
        if rng.gen::<f64>() < p {
            let op = match rng.gen_range(0..3) {
                0 => PauliOp::X,
                1 => PauliOp::Y,
                _ => PauliOp::Z,
            };
            e.set(q, op);
        }
    }
    e
}

pub fn write_csv<W: Write>(points: &[McPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(p).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<McPoint>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

/// Scaling-collapse fit: failure rates of every size `n` lie on one curve
/// `f(x) = a0 + a1 x + a2 x²` with `x = (p - p_th) n^(1/ν)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub p_th: f64,
    pub nu: f64,
    pub coeffs: [f64; 3],
    pub rss: f64,
}

const P_TH_RANGE: (f64, f64) = (0.01, 0.74);
const NU_RANGE: (f64, f64) = (0.3, 12.0);
const COARSE_STEPS: (f64, f64) = (0.005, 0.05);
const REFINEMENTS: usize = 4;

/// For each candidate `(p_th, ν)` a quadratic is fitted by least squares to
/// the largest code's points; the candidate minimizing the squared deviation
/// of all points from that quadratic wins. The search is a grid over
/// `p_th ∈ [0.01, 0.74]`, `ν ∈ [0.3, 12]`, refined four times by a factor
/// of ten around the best cell.
pub fn fit_threshold(points: &[McPoint]) -> Result<ThresholdFit> {
    let mut sizes: Vec<usize> = points.iter().map(|p| p.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::DegenerateData("need at least two code sizes".into()));
    }
    for &n in &sizes {
        let mut ps: Vec<f64> = points.iter().filter(|p| p.n == n).map(|p| p.p).collect();
        ps.sort_by(f64::total_cmp);
        ps.dedup();
        if ps.len() < 4 {
            return Err(Error::DegenerateData(format!("size {n} has fewer than 4 p values")));
        }
    }
    let first = points[0].failure_rate;
    if points.iter().all(|p| p.failure_rate == first) {
        return Err(Error::DegenerateData("all failure rates are equal".into()));
    }
    let largest = *sizes.last().expect("two sizes");

    let mut best = (f64::INFINITY, P_TH_RANGE.0, NU_RANGE.0);
    let mut window = (P_TH_RANGE, NU_RANGE);
    let mut steps = COARSE_STEPS;
    for round in 0..=REFINEMENTS {
        let np = ((window.0 .1 - window.0 .0) / steps.0).round() as usize;
        let nn = ((window.1 .1 - window.1 .0) / steps.1).round() as usize;
        for i in 0..=np {
            let p_th = window.0 .0 + i as f64 * steps.0;
            for j in 0..=nn {
                let nu = window.1 .0 + j as f64 * steps.1;
                if let Some((_, rss)) = collapse(points, largest, p_th, nu) {
                    if rss < best.0 {
                        best = (rss, p_th, nu);
                    }
                }
            }
        }
        if round < REFINEMENTS {
            let clamp = |c: f64, h: f64, r: (f64, f64)| ((c - h).max(r.0), (c + h).min(r.1));
            window = (
                clamp(best.1, 2.0 * steps.0, P_TH_RANGE),
                clamp(best.2, 2.0 * steps.1, NU_RANGE),
            );
            steps = (steps.0 / 10.0, steps.1 / 10.0);
        }
    }
    let (coeffs, rss) = collapse(points, largest, best.1, best.2)
        .ok_or_else(|| Error::DegenerateData("quadratic fit failed".into()))?;
    Ok(ThresholdFit {
        p_th: best.1,
        nu: best.2,
        coeffs,
        rss,
    })
}

fn scaling_x(p: &McPoint, p_th: f64, nu: f64) -> f64 {
    (p.p - p_th) * (p.n as f64).powf(1.0 / nu)
}

fn collapse(points: &[McPoint], largest: usize, p_th: f64, nu: f64) -> Option<([f64; 3], f64)> {
    let fit_pts: Vec<&McPoint> = points.iter().filter(|p| p.n == largest).collect();
    let a = DMatrix::from_fn(fit_pts.len(), 3, |r, c| scaling_x(fit_pts[r], p_th, nu).powi(c as i32));
    let b = DVector::from_iterator(fit_pts.len(), fit_pts.iter().map(|p| p.failure_rate));
    let sol = a.svd(true, true).solve(&b, 1e-14).ok()?;
    let coeffs = [sol[0], sol[1], sol[2]];
    let rss: f64 = points
        .iter()
        .map(|p| {
            let x = scaling_x(p, p_th, nu);
            let f = coeffs[0] + coeffs[1] * x + coeffs[2] * x * x;
            (p.failure_rate - f).powi(2)
        })
        .sum();
    rss.is_finite().then_some((coeffs, rss))
}

/// First `p` where the larger code's failure rate stops being below the
/// smaller one's, by linear interpolation over the shared p values.
pub fn crossing(smaller: &[McPoint], larger: &[McPoint]) -> Option<f64> {
    let mut pairs: Vec<(f64, f64)> = smaller
        .iter()
        .filter_map(|a| {
            larger
                .iter()
                .find(|b| b.p == a.p)
                .map(|b| (a.p, b.failure_rate - a.failure_rate))
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.windows(2).find_map(|w| {
        let ((p0, d0), (p1, d1)) = (w[0], w[1]);
        (d0 < 0.0 && d1 >= 0.0).then(|| p0 + (p1 - p0) * (-d0) / (d1 - d0))
    })
}

/// Key-value configuration file for `mc-run`; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct McConfigFile {
    pub holographic: Option<bool>,
    pub radius: Option<usize>,
    pub radii: Option<Vec<usize>>,
    pub builtin: Option<String>,
    pub code: Option<PathBuf>,
    pub p: Option<Vec<f64>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl McConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(p_th: f64, nu: f64) -> Vec<McPoint> {
        let mut pts = Vec::new();
        for n in [36usize, 174, 834] {
            for i in 0..11 {
                let p = 0.14 + 0.01 * i as f64;
                let x = (p - p_th) * (n as f64).powf(1.0 / nu);
                let rate = 0.3 + 0.5 * x + 0.1 * x * x;
                pts.push(McPoint {
                    radius: 0,
                    n,
                    p,
                    trials: 2000,
                    failures: 0,
                    failure_rate: rate,
                    std_err: 0.0,
                });
            }
        }
        pts
    }

    #[test]
    fn fit_recovers_synthetic_parameters() {
        let fit = fit_threshold(&synthetic(0.188, 2.970)).unwrap();
        assert!((fit.p_th - 0.188).abs() < 1e-4, "{fit:?}");
        assert!((fit.nu - 2.970).abs() < 1e-3, "{fit:?}");
        assert!(fit.rss < 1e-12);
        assert!((fit.coeffs[1] - 0.5).abs() < 1e-3);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        let pts = synthetic(0.188, 2.970);
        let one: Vec<_> = pts.iter().filter(|p| p.n == 36).cloned().collect();
        assert!(matches!(fit_threshold(&one), Err(Error::DegenerateData(_))));
        let mut flat = pts.clone();
        flat.iter_mut().for_each(|p| p.failure_rate = 0.5);
        assert!(fit_threshold(&flat).is_err());
        let sparse: Vec<_> = pts.iter().filter(|p| p.p < 0.165).cloned().collect();
        assert!(fit_threshold(&sparse).is_err());
    }

    #[test]
    fn csv_round_trip_and_header() {
        let pts = vec![McPoint::new(2, 36, 0.15, 2000, 123), McPoint::new(3, 174, 0.2, 10, 0)];
        let mut buf = Vec::new();
        write_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("radius,n,p,trials,failures,failure_rate,std_err\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), pts);
    }

    #[test]
    fn zero_noise_never_fails() {
        let code = PreparedCode::from_spec(&CodeSpec::Holographic(2)).unwrap();
        let pts = run_mc_prepared(&code, &[0.0], 50, 1).unwrap();
        assert_eq!(pts[0].failures, 0);
        assert_eq!(pts[0].radius, 2);
    }

    #[test]
    fn runs_are_reproducible() {
        let code = PreparedCode::from_spec(&CodeSpec::Builtin(Builtin::SixQubit)).unwrap();
        let a = run_mc_prepared(&code, &[0.1, 0.2], 500, 42).unwrap();
        let b = run_mc_prepared(&code, &[0.1, 0.2], 500, 42).unwrap();
        assert_eq!(a, b);
        let c = run_mc_prepared(&code, &[0.1, 0.2], 500, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn crossing_interpolates() {
        let small = vec![McPoint::new(2, 36, 0.1, 100, 10), McPoint::new(2, 36, 0.2, 100, 30)];
        let large = vec![McPoint::new(3, 174, 0.1, 100, 5), McPoint::new(3, 174, 0.2, 100, 45)];
        let x = crossing(&small, &large).unwrap();
        assert!((x - (0.1 + 0.1 * 5.0 / 20.0)).abs() < 1e-12);
    }

    #[test]
    fn config_file_parses() {
        let cfg: McConfigFile = toml::from_str("holographic = true\nradii = [2, 3]\np = [0.1, 0.2]\ntrials = 10\n").unwrap();
        assert_eq!(cfg.radii, Some(vec![2, 3]));
        assert!(toml::from_str::<McConfigFile>("bogus = 1").is_err());
    }
}
