//! Monte Carlo checks of unit-intensity Poisson measures on a box.
//!
//! Three identities are checked against references computed by quadrature
//! (and, where one exists, a closed form that the quadrature must reproduce
//! to `1e-10` relative before any sampling happens):
//!
//! - Laplace transform: `E[exp Σ_{x∈γ} f(x)] = exp ∫ (e^f − 1) dx`.
//! - Local expansion: `E[F] = e^{−|Λ|} Σ_n (1/n!) ∫_{Λ^n} F(x_1, …, x_n) dx`.
//! - Mecke: `E[Σ_{S ⊂ γ, |S| = m} f(γ, S)] = (1/m!) E[∫_{Λ^m} f(γ ∪ x̄, x̄) dx̄]`.
//!
//! Test functions come from a closed family: constant-on-the-window or
//! Gaussian-bump profiles, and polynomials of degree ≤ 2 in `⟨φ, γ⟩`.

pub mod quadrature;
pub mod rng;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use quadrature::integrate_box;
use rng::SampleStream;

/// Floor on `|reference|` in relative errors.
pub const REL_ERROR_FLOOR: f64 = 1e-8;
/// Closed forms and quadrature must agree to this relative tolerance.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;
/// Series tails must be below this fraction of the reference.
pub const TAIL_FRACTION: f64 = 1e-12;
/// Largest configuration the Mecke subset sum accepts.
pub const MAX_CONFIGURATION_POINTS: usize = 1000;
/// Smallest sample count accepted by the checks.
pub const MIN_SAMPLES: u64 = 10_000;

/// Box `[0, L_1] × … × [0, L_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    lengths: Vec<f64>,
}

impl Window {
    pub fn new(lengths: Vec<f64>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidParameter("window needs at least one axis".into()));
        }
        if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::InvalidParameter(format!("window extent {l} must be positive and finite")));
        }
        let w = Self { lengths };
        if w.volume() > 500.0 {
            return Err(Error::InvalidParameter(format!("window volume {} exceeds 500", w.volume())));
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn volume(&self) -> f64 {
        self.lengths.iter().product()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lengths.iter().map(|l| l / 2.0).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().zip(&self.lengths).all(|(x, l)| (0.0..=*l).contains(x))
    }
}

/// Points of one sampled configuration, stored flat (`dim` coordinates each).
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    dim: usize,
    coords: Vec<f64>,
}

impl PointConfiguration {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::LengthMismatch { expected: dim, found: coords.len() });
        }
        Ok(Self { dim, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim)
    }

    /// `⟨φ, γ⟩ = Σ_{x∈γ} φ(x)`.
    pub fn pair(&self, field: &ScalarField, window: &Window) -> f64 {
        self.points().map(|x| field.eval(window, x)).sum()
    }
}

/// Sample `index` of the stream family `seed`: `N ~ Poisson(|Λ|)` points,
/// i.i.d. uniform on the window.
pub fn sample_configuration(window: &Window, seed: u64, index: u64) -> PointConfiguration {
    let mut stream = SampleStream::new(seed, index);
    let count = stream.poisson(window.volume()) as usize;
    let mut coords = Vec::with_capacity(count * window.dim());
    for _ in 0..count {
        for l in window.lengths() {
            coords.push(stream.uniform() * l);
        }
    }
    PointConfiguration { dim: window.dim(), coords }
}

/// Shape of a test function on the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `1_Λ`.
    Indicator,
    /// `exp(−|x − c|² / (2 w²))` restricted to the window, `c` its center.
    Gaussian { width: f64 },
}

/// `x ↦ amplitude · profile(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarField {
    pub amplitude: f64,
    pub profile: Profile,
}

impl ScalarField {
    pub const fn indicator(amplitude: f64) -> Self {
        Self { amplitude, profile: Profile::Indicator }
    }

    pub const fn gaussian(amplitude: f64, width: f64) -> Self {
        Self { amplitude, profile: Profile::Gaussian { width } }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidParameter("amplitude must be finite".into()));
        }
        if let Profile::Gaussian { width } = self.profile {
            if !(width.is_finite() && width > 0.0) {
                return Err(Error::InvalidParameter(format!("gaussian width {width} must be positive")));
            }
        }
        Ok(())
    }

    pub fn eval(&self, window: &Window, x: &[f64]) -> f64 {
        match self.profile {
            Profile::Indicator => self.amplitude,
            Profile::Gaussian { width } => {
                let r2: f64 = x.iter().zip(window.lengths()).map(|(x, l)| { let dx = x - l / 2.0; dx * dx }).sum();
                self.amplitude * libm::exp(-r2 / (2.0 * width * width))
            }
        }
    }

    pub fn sup_abs(&self) -> f64 {
        self.amplitude.abs()
    }

    /// `∫_Λ g(field(x)) dx` by quadrature, checked against `closed` when the
    /// profile is constant.
    fn integrate_with<G: Fn(f64) -> f64>(&self, window: &Window, g: G) -> Result<f64> {
        let q = integrate_box(window.lengths(), |x| g(self.eval(window, x)))?;
        if self.profile == Profile::Indicator {
            check_closed_form(q, window.volume() * g(self.amplitude))?;
        }
        Ok(q)
    }
}

fn check_closed_form(quadrature: f64, closed_form: f64) -> Result<()> {
    let scale = closed_form.abs().max(REL_ERROR_FLOOR);
    if (quadrature - closed_form).abs() > CLOSED_FORM_TOLERANCE * scale {
        return Err(Error::ClosedFormMismatch { quadrature, closed_form });
    }
    Ok(())
}

/// `c_0 + c_1 t + c_2 t²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic(pub [f64; 3]);

impl Quadratic {
    pub const CONST: Self = Self([1.0, 0.0, 0.0]);
    pub const LINEAR: Self = Self([0.0, 1.0, 0.0]);
    pub const SQUARE: Self = Self([0.0, 0.0, 1.0]);

    pub fn eval(&self, t: f64) -> f64 {
        self.0[0] + t * (self.0[1] + t * self.0[2])
    }

    /// `E[p(⟨φ, γ⟩)]` from the first two Poisson moments
    /// `E⟨φ,γ⟩ = Φ_1`, `E⟨φ,γ⟩² = Φ_2 + Φ_1²`.
    fn expectation(&self, phi1: f64, phi2: f64) -> f64 {
        self.0[0] + self.0[1] * phi1 + self.0[2] * (phi2 + phi1 * phi1)
    }
}

/// Local functionals `F(γ_Λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalFunctional {
    /// `1{|γ_Λ| = k}`.
    CountEquals(u64),
    /// `p(⟨φ, γ⟩)`.
    Polynomial { poly: Quadratic, phi: ScalarField },
}

impl LocalFunctional {
    pub fn eval(&self, window: &Window, config: &PointConfiguration) -> f64 {
        match self {
            Self::CountEquals(k) => f64::from(u8::from(config.len() as u64 == *k)),
            Self::Polynomial { poly, phi } => poly.eval(config.pair(phi, window)),
        }
    }
}

/// Mecke test function `f(γ, x̄) = ∏_i g(x_i) · h(⟨φ, γ ∖ x̄⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeckeFunction {
    pub g: ScalarField,
    pub h: Quadratic,
    pub phi: ScalarField,
}

/// Which identity a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Laplace,
    LocalExpansion,
    Mecke { order: u8 },
}

/// Outcome of one Monte Carlo check.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub check: CheckKind,
    pub estimate: f64,
    pub reference: f64,
    pub abs_error: f64,
    /// `abs_error / max(|reference|, REL_ERROR_FLOOR)`.
    pub rel_error: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    /// Monte Carlo estimate of the other side, for two-sided identities.
    pub rhs_estimate: Option<f64>,
    pub rhs_std_error: Option<f64>,
    /// Bound on the truncated series tail.
    pub tail_bound: Option<f64>,
}

impl McReport {
    fn new(check: CheckKind, stats: Stats, reference: f64, seed: u64) -> Self {
        let abs_error = (stats.mean - reference).abs();
        Self {
            check,
            estimate: stats.mean,
            reference,
            abs_error,
            rel_error: abs_error / reference.abs().max(REL_ERROR_FLOOR),
            std_error: stats.std_error(),
            samples: stats.n,
            seed,
            rhs_estimate: None,
            rhs_std_error: None,
            tail_bound: None,
        }
    }

    /// Whether the reference lies within `k` standard errors of the estimate.
    pub fn covers(&self, k: f64) -> bool {
        self.abs_error <= k * self.std_error
    }

    /// `|lhs − rhs| / sqrt(se_lhs² + se_rhs²)` for two-sided reports.
    pub fn pooled_z(&self) -> Option<f64> {
        let rhs = self.rhs_estimate?;
        let se = libm::hypot(self.std_error, self.rhs_std_error?);
        Some(if se == 0.0 { if rhs == self.estimate { 0.0 } else { f64::INFINITY } } else { (self.estimate - rhs).abs() / se })
    }
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Stats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Stats {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn std_error(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        libm::sqrt(self.m2 / (self.n - 1) as f64 / self.n as f64)
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("at least {MIN_SAMPLES} samples are required, got {samples}")));
    }
    Ok(())
}

/// Laplace transform check for `f`.
pub fn check_laplace(f: &ScalarField, window: &Window, samples: u64, seed: u64) -> Result<McReport> {
    f.validate()?;
    check_samples(samples)?;
    let exponent = f.integrate_with(window, libm::expm1)?;
    let reference = libm::exp(exponent);
    let mut stats = Stats::default();
    for i in 0..samples {
        let config = sample_configuration(window, seed, i);
        stats.push(libm::exp(config.pair(f, window)));
    }
    Ok(McReport::new(CheckKind::Laplace, stats, reference, seed))
}

/// Reference value of `E[F]` by the truncated series, with its tail bound.
///
/// Each term `(1/n!) ∫_{Λ^n} F` is written as `pmf(n) · E[F | N = n]`; the
/// `n`-fold integrals of polynomials in `⟨φ, γ⟩` reduce to `Φ_1 = ∫φ` and
/// `Φ_2 = ∫φ²`, both by quadrature.
pub fn local_expansion_reference(functional: &LocalFunctional, window: &Window, series_terms: usize) -> Result<(f64, f64)> {
    let v = window.volume();
    let (series, closed, bound_coeffs) = match *functional {
        LocalFunctional::CountEquals(k) => {
            let k = k as usize;
            let series = if k <= series_terms { poisson_pmf(v, k) } else { 0.0 };
            (series, poisson_pmf(v, k), [1.0, 0.0, 0.0])
        }
        LocalFunctional::Polynomial { poly, phi } => {
            phi.validate()?;
            let phi1 = phi.integrate_with(window, |x| x)?;
            let phi2 = phi.integrate_with(window, |x| x * x)?;
            let [a0, a1, a2] = poly.0;
            let (m1, m2) = (phi1 / v, phi2 / v);
            let series: f64 = (0..=series_terms)
                .map(|n| {
                    let n = n as f64;
                    let conditional = a0 + a1 * n * m1 + a2 * (n * m2 + n * (n - 1.0) * m1 * m1);
                    poisson_pmf(v, n as usize) * conditional
                })
                .sum();
            let s = phi.sup_abs();
            (series, poly.expectation(phi1, phi2), [a0.abs(), a1.abs() * s, a2.abs() * s * s])
        }
    };
    let tail = poisson_tail_bound(v, series_terms, bound_coeffs);
    let allowed = TAIL_FRACTION * series.abs();
    if !(tail <= allowed) {
        return Err(Error::TailBound { bound: tail, allowed, terms: series_terms });
    }
    check_closed_form(series, closed)?;
    Ok((series, tail))
}

/// `e^{-v} v^n / n!`.
pub fn poisson_pmf(v: f64, n: usize) -> f64 {
    if v == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    libm::exp(n as f64 * libm::log(v) - v - libm::lgamma(n as f64 + 1.0))
}

/// Bound on `Σ_{n > T} pmf(n) · (c_0 + c_1 n + c_2 n²)`: the terms decay at
/// least geometrically with ratio `v/(T+2) · ((T+2)/(T+1))²` past `T`.
fn poisson_tail_bound(v: f64, terms: usize, c: [f64; 3]) -> f64 {
    let first = (terms + 1) as f64;
    let bound_at = c[0] + c[1] * first + c[2] * first * first;
    let lead = poisson_pmf(v, terms + 1) * bound_at;
    if lead == 0.0 {
        return 0.0;
    }
    let ratio = v / (first + 1.0) * libm::pow((first + 1.0) / first, 2.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    lead / (1.0 - ratio)
}

/// Local expansion check for `F`.
pub fn check_local_expansion(
    functional: &LocalFunctional,
    window: &Window,
    samples: u64,
    seed: u64,
    series_terms: usize,
) -> Result<McReport> {
    check_samples(samples)?;
    let (reference, tail) = local_expansion_reference(functional, window, series_terms)?;
    let mut stats = Stats::default();
    for i in 0..samples {
        let config = sample_configuration(window, seed, i);
        stats.push(functional.eval(window, &config));
    }
    let mut report = McReport::new(CheckKind::LocalExpansion, stats, reference, seed);
    report.tail_bound = Some(tail);
    Ok(report)
}

/// `(1/m!) (∫g)^m E[h(⟨φ,γ⟩)]`.
pub fn mecke_reference(order: u8, f: &MeckeFunction, window: &Window) -> Result<f64> {
    let g_int = f.g.integrate_with(window, |x| x)?;
    let phi1 = f.phi.integrate_with(window, |x| x)?;
    let phi2 = f.phi.integrate_with(window, |x| x * x)?;
    Ok(libm::pow(g_int, f64::from(order)) / factorial_f64(order) * f.h.expectation(phi1, phi2))
}

fn factorial_f64(m: u8) -> f64 {
    (1..=m).map(f64::from).product()
}

/// Mecke identity check of order `m ∈ {1, 2, 3}`. The estimate is the
/// subset-sum side; `rhs_estimate` samples the augmented side.
pub fn check_mecke(order: u8, f: &MeckeFunction, window: &Window, samples: u64, seed: u64) -> Result<McReport> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!("unsupported Mecke order {order}; expected 1, 2 or 3")));
    }
    for field in [&f.g, &f.phi] {
        field.validate()?;
    }
    if f.h.0.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("h coefficients must be finite".into()));
    }
    check_samples(samples)?;
    let reference = mecke_reference(order, f, window)?;
    let g_int = f.g.integrate_with(window, |x| x)?;
    let rhs_scale = libm::pow(g_int, f64::from(order)) / factorial_f64(order);

    let mut lhs = Stats::default();
    let mut rhs = Stats::default();
    let mut g_vals = Vec::new();
    let mut phi_vals = Vec::new();
    for i in 0..samples {
        let config = sample_configuration(window, seed, i);
        if config.len() > MAX_CONFIGURATION_POINTS {
            return Err(Error::ConfigurationTooLarge { points: config.len(), limit: MAX_CONFIGURATION_POINTS });
        }
        g_vals.clear();
        phi_vals.clear();
        for x in config.points() {
            g_vals.push(f.g.eval(window, x));
            phi_vals.push(f.phi.eval(window, x));
        }
        let total: f64 = phi_vals.iter().sum();
        lhs.push(subset_sum(order, &g_vals, &phi_vals, total, &f.h));
        rhs.push(rhs_scale * f.h.eval(total));
    }
    let mut report = McReport::new(CheckKind::Mecke { order }, lhs, reference, seed);
    report.rhs_estimate = Some(rhs.mean);
    report.rhs_std_error = Some(rhs.std_error());
    Ok(report)
}

/// `Σ_{|S| = m} ∏_{x∈S} g(x) · h(total − Σ_{x∈S} φ(x))`.
fn subset_sum(order: u8, g: &[f64], phi: &[f64], total: f64, h: &Quadratic) -> f64 {
    let n = g.len();
    let mut sum = 0.0;
    match order {
        1 => {
            for a in 0..n {
                sum += g[a] * h.eval(total - phi[a]);
            }
        }
        2 => {
            for a in 0..n {
                for b in a + 1..n {
                    sum += g[a] * g[b] * h.eval(total - phi[a] - phi[b]);
                }
            }
        }
        3 => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        sum += g[a] * g[b] * g[c] * h.eval(total - phi[a] - phi[b] - phi[c]);
                    }
                }
            }
        }
        _ => unreachable!("order validated by the caller"),
    }
    sum
}

/// Number of reports whose reference lies within `k` standard errors.
pub fn coverage(reports: &[McReport], k: f64) -> usize {
    reports.iter().filter(|r| r.covers(k)).count()
}
