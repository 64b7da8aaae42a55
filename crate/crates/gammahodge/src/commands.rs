//! The operations behind each subcommand, free of argument parsing and IO.

use gammahodge_core::betti::{self, BettiVector};
use gammahodge_core::graded_algebra::{sym_component_dim_bruteforce, sym_component_dim_closed, GradedSpace};
use gammahodge_core::hodge::{self, SimplicialComplex};
use gammahodge_core::poisson::{self, LocalFunctional, MeckeFunction};
use gammahodge_core::Error as CoreError;
use log::{debug, info, warn};
use num_bigint::BigUint;

use crate::error::{exit, CliError};
use crate::formats::*;

/// Sample count used when neither the spec nor the command line sets one.
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// A report together with how the run should end.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<T> {
    pub report: T,
    pub problems: Vec<String>,
    pub exit_code: u8,
}

impl<T> Outcome<T> {
    fn ok(report: T) -> Self {
        Self { report, problems: Vec::new(), exit_code: exit::OK }
    }
}

pub fn betti(input: &BettiInput, n_max: usize) -> Result<BettiReport, CliError> {
    let v = input.to_core()?;
    betti_for(&v, n_max, None)
}

fn betti_for(v: &BettiVector, n_max: usize, pipeline: Option<PipelineMeta>) -> Result<BettiReport, CliError> {
    let mut warnings = v.warnings();
    for w in &warnings {
        warn!("{w}");
    }
    let b: Vec<DecimalInt> = betti::config_betti_range(v, n_max).into_iter().map(DecimalInt).collect();
    let threshold = betti::vanishing_threshold(v)?;
    let vanishing = if threshold.valid {
        Some(VanishingBlock { k0: DecimalInt(threshold.k0.into()), b_k0: DecimalInt(BigUint::from(1u32)) })
    } else {
        warnings.push("even-degree Betti numbers are nonzero; no vanishing threshold applies".into());
        None
    };
    Ok(BettiReport { input: BettiInput::from_core(v), n_max, b, vanishing, warnings, pipeline })
}

/// Every space whose components form a multiset of `(degree, dim)` pairs with
/// `1 ≤ degree ≤ max_degree` and `0 ≤ dim ≤ max_dim`.
fn grid_spaces(grid: &GridSpec) -> Vec<Vec<(u32, usize)>> {
    let kinds: Vec<(u32, usize)> =
        (1..=grid.max_degree).flat_map(|d| (0..=grid.max_dim).map(move |n| (d, n))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<(u32, usize)>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == grid.max_components {
            continue;
        }
        for (i, &kind) in kinds.iter().enumerate().skip(start).rev() {
            let mut next = cur.clone();
            next.push(kind);
            stack.push((i, next));
        }
    }
    out
}

fn beta_grid(grid: &GridSpec) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for d in 1..=grid.max_d {
        let mut beta = vec![0u64; d + 1];
        loop {
            out.push(beta.clone());
            let Some(k) = (1..=d).find(|&k| beta[k] < grid.max_beta) else { break };
            beta[k] += 1;
            beta[1..k].fill(0);
        }
    }
    out
}

fn status(closed: &BigUint, brute: &Result<BigUint, CoreError>) -> Result<(Option<DecimalInt>, RowStatus), CliError> {
    match brute {
        Ok(b) if b == closed => Ok((Some(DecimalInt(b.clone())), RowStatus::Pass)),
        Ok(b) => Ok((Some(DecimalInt(b.clone())), RowStatus::Fail)),
        Err(CoreError::WordCapExceeded { .. }) => Ok((None, RowStatus::Skipped)),
        Err(e) => Err(e.clone().into()),
    }
}

/// Compares closed-form dimensions with exact ranks over the grid, and the
/// Betti formula with the summed ranks of the natural-degree algebra.
pub fn algebra_check(grid: &GridSpec, word_cap: usize) -> Result<Outcome<AlgebraCheckReport>, CliError> {
    let mut rows = Vec::new();
    for pairs in grid_spaces(grid) {
        let space = GradedSpace::from_pairs(&pairs)?;
        for m in 0..=grid.max_m {
            for n in 0..=grid.max_n {
                let closed = sym_component_dim_closed(&space, m, n);
                let brute = sym_component_dim_bruteforce(&space, m, n, word_cap).map(BigUint::from);
                let (bruteforce, st) = status(&closed, &brute)?;
                rows.push(AlgebraRow { components: pairs.clone(), m, n, closed: DecimalInt(closed), bruteforce, status: st });
            }
        }
    }
    debug!("{} component rows", rows.len());

    let mut betti_rows = Vec::new();
    for beta in beta_grid(grid) {
        let v = BettiVector::from_slice(&beta)?;
        let dims: Vec<usize> = beta[1..].iter().map(|&b| b as usize).collect();
        let space = GradedSpace::with_natural_degrees(&dims)?;
        for n in 0..=grid.max_betti_n {
            let formula = betti::config_betti(&v, n);
            let brute = if n == 0 {
                Ok(BigUint::from(1u32))
            } else {
                (1..=n).try_fold(BigUint::from(0u32), |acc, m| {
                    sym_component_dim_bruteforce(&space, m, n as u64, word_cap).map(|r| acc + r)
                })
            };
            let (bruteforce, st) = status(&formula, &brute)?;
            betti_rows.push(BettiRow { beta: beta.clone(), n, formula: DecimalInt(formula), bruteforce, status: st });
        }
    }

    let count = |s: RowStatus| {
        rows.iter().filter(|r| r.status == s).count() + betti_rows.iter().filter(|r| r.status == s).count()
    };
    let (passed, failed, skipped) = (count(RowStatus::Pass), count(RowStatus::Fail), count(RowStatus::Skipped));
    info!("algebra-check: {passed} passed, {failed} failed, {skipped} skipped");

    let mut problems = Vec::new();
    let exit_code = if failed > 0 {
        problems.push(format!("{failed} instances disagree with the exact rank"));
        exit::INVARIANT
    } else if skipped > 0 {
        problems.push(format!("{skipped} instances skipped at the word cap of {word_cap}"));
        exit::PARTIAL
    } else {
        exit::OK
    };
    let report = AlgebraCheckReport { grid: grid.clone(), word_cap, passed, failed, skipped, rows, betti_rows };
    Ok(Outcome { report, problems, exit_code })
}

pub fn load_complex(input: &ComplexInput) -> Result<SimplicialComplex, CliError> {
    Ok(hodge::load_complex(&input.maximal)?)
}

/// Betti numbers, Hodge summand dimensions and optional Kronecker-sum
/// kernel probes. Inconsistent ranks are reported as invariant violations.
pub fn simplicial(complex: &SimplicialComplex, kron: bool) -> Result<Outcome<SimplicialReport>, CliError> {
    let betti = hodge::betti_numbers(complex);
    let top = complex.max_dim();
    let degree_range = top.map_or(0..0, |t| 0..t + 1);
    let simplex_counts: Vec<usize> = degree_range.clone().map(|k| complex.count(k)).collect();

    let mut problems = Vec::new();
    let mut degrees = Vec::new();
    let mut laplacians = Vec::new();
    for k in degree_range {
        let dims = hodge::hodge_decomposition_dims(complex, k)?;
        if dims.harmonic as u64 != betti[k] {
            problems.push(format!("degree {k}: harmonic dimension {} but beta = {}", dims.harmonic, betti[k]));
        }
        if dims.total() != complex.count(k) {
            problems.push(format!("degree {k}: summands add to {} of {} chains", dims.total(), complex.count(k)));
        }
        degrees.push(DegreeReport {
            k,
            chains: complex.count(k),
            harmonic: dims.harmonic,
            exact: dims.exact,
            coexact: dims.coexact,
        });
        if kron {
            laplacians.push(hodge::hodge_laplacian(complex, k)?);
        }
    }

    let mut kron_probes = Vec::new();
    for (i, a) in laplacians.iter().enumerate() {
        for (j, b) in laplacians.iter().enumerate().skip(i) {
            let r = hodge::kron_sum_kernel_dim(a, b)?;
            if r.computed != r.predicted {
                problems.push(format!("L_{i} ⊞ L_{j}: kernel {} but predicted {}", r.computed, r.predicted));
            }
            kron_probes.push(KronProbe { left_degree: i, right_degree: j, computed: r.computed, predicted: r.predicted });
        }
    }

    let exit_code = if problems.is_empty() { exit::OK } else { exit::INVARIANT };
    let report = SimplicialReport { simplex_counts, betti, degrees, kron_probes };
    Ok(Outcome { report, problems, exit_code })
}

/// Overrides applied on top of a Poisson spec.
#[derive(Debug, Clone, Copy, Default)]
pub struct PoissonOverrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

pub fn poisson(spec: &PoissonSpec, overrides: PoissonOverrides) -> Result<Outcome<McReportJson>, CliError> {
    let seed = overrides
        .seed
        .or(spec.seed())
        .ok_or_else(|| CliError::Input("a seed is required (spec field \"seed\" or --seed)".into()))?;
    let samples = overrides.samples.or(spec.samples()).unwrap_or(DEFAULT_SAMPLES);
    info!("poisson: seed {seed}, {samples} samples, rng {}", poisson::rng::RNG_NAME);
    let report = match spec {
        PoissonSpec::Laplace { window, f, .. } => {
            poisson::check_laplace(&f.to_core()?, &window.to_core()?, samples, seed)?
        }
        PoissonSpec::Local { window, functional, series_terms, .. } => {
            let functional = match functional {
                LocalSpec::Count { count } => LocalFunctional::CountEquals(*count),
                LocalSpec::Poly { poly, phi } => LocalFunctional::Polynomial { poly: poly.to_core(), phi: phi.to_core()? },
            };
            poisson::check_local_expansion(&functional, &window.to_core()?, samples, seed, *series_terms)?
        }
        PoissonSpec::Mecke { m, window, f, .. } => {
            let f = MeckeFunction { g: f.g.to_core()?, h: f.h.to_core(), phi: f.phi.to_core()? };
            poisson::check_mecke(*m, &f, &window.to_core()?, samples, seed)?
        }
    };
    let json = McReportJson::from(&report);
    if !json.covered_3sigma {
        warn!(
            "estimate {} is more than 3 standard errors ({}) from the reference {}",
            json.estimate, json.std_error, json.reference
        );
    }
    Ok(Outcome::ok(json))
}

/// Options for [`pipeline`].
#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub n_max: usize,
    pub infinite_volume: bool,
    pub factor: Option<SimplicialComplex>,
}

/// Betti numbers of a complex, padded to dimension at least 1. The empty
/// complex gives `(0, 0)`.
fn complex_betti(complex: &SimplicialComplex) -> Vec<u64> {
    let mut beta = hodge::betti_numbers(complex);
    if beta.len() < 2 {
        beta.resize(2, 0);
    }
    beta
}

/// Complex → Betti numbers (optionally times a factor complex) → configuration
/// space Betti numbers.
pub fn pipeline(complex: &SimplicialComplex, options: &PipelineOptions) -> Result<BettiReport, CliError> {
    let base_betti = complex_betti(complex);
    let mut v = BettiVector::from_slice(&base_betti)?;
    let factor_betti = options.factor.as_ref().map(complex_betti);
    if let Some(fb) = &factor_betti {
        v = betti::kunneth_product(&v, &BettiVector::from_slice(fb)?);
    }
    let mut beta0_override = None;
    if options.infinite_volume && v.get(0) != 0 {
        info!("infinite-volume override: beta_0 = {} replaced by 0", v.get(0));
        beta0_override = Some(v.get(0));
        v = v.with_zero_beta0();
    }
    let meta = PipelineMeta { base_betti, beta0_override, factor_betti };
    betti_for(&v, options.n_max, Some(meta))
}
