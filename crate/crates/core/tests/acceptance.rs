//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammahodge_core::betti::*;
use gammahodge_core::combinatorics::binomial;
use gammahodge_core::graded_algebra::*;
use gammahodge_core::hodge::{self, catalog};
use gammahodge_core::linalg::{Matrix, SymMatrix};
use gammahodge_core::poisson::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn bv(beta: &[u64]) -> BettiVector {
    BettiVector::from_slice(beta).unwrap()
}

/// β vectors with 1 ≤ d ≤ 3 and every β_k ∈ {0, 1, 2} for k ≥ 1, β_0 = 0.
fn small_grid() -> Vec<BettiVector> {
    let mut out = Vec::new();
    for d in 1..=3u32 {
        for code in 0..3usize.pow(d) {
            let mut beta = vec![0u64];
            let mut c = code;
            for _ in 0..d {
                beta.push((c % 3) as u64);
                c /= 3;
            }
            out.push(bv(&beta));
        }
    }
    out
}

fn ac1_formula_vs_bruteforce() -> Outcome {
    let mut points = 0;
    for v in small_grid() {
        let dims: Vec<usize> = v.beta()[1..].iter().map(|&b| b as usize).collect();
        let space = GradedSpace::with_natural_degrees(&dims).unwrap();
        for n in 0..=6usize {
            let brute: usize = if n == 0 {
                1
            } else {
                (1..=n)
                    .map(|m| sym_component_dim_bruteforce(&space, m, n as u64, DEFAULT_WORD_CAP))
                    .sum::<Result<usize, _>>()
                    .map_err(|e| e.to_string())?
            };
            let formula = config_betti(&v, n);
            ensure!(formula == BigUint::from(brute), "beta={:?} n={n}: formula {formula} vs rank {brute}", v.beta());
            points += 1;
        }
    }
    Ok(format!("{points} (vector, n) points agree exactly"))
}

fn ac2_vanishing() -> Outcome {
    let mut vectors: Vec<BettiVector> = small_grid().into_iter().filter(BettiVector::odd_only).collect();
    // wider odd-only sweep up to K_0 = 12
    for b1 in 0..=12u64 {
        for b3 in 0..=4u64 {
            for b5 in 0..=2u64 {
                if b1 + 3 * b3 + 5 * b5 <= 12 {
                    vectors.push(bv(&[0, b1, 0, b3, 0, b5]));
                }
            }
        }
    }
    for v in &vectors {
        let t = vanishing_threshold(v).map_err(|e| e.to_string())?;
        ensure!(t.valid, "beta={:?} should satisfy the hypothesis", v.beta());
        let k0 = t.k0 as usize;
        ensure!(config_betti(v, k0) == BigUint::from(1u32), "b_K0 != 1 for {:?}", v.beta());
        for n in k0 + 1..=k0 + 6 {
            ensure!(config_betti(v, n) == BigUint::from(0u32), "b_{n} != 0 for {:?}", v.beta());
        }
    }
    Ok(format!("{} odd-only vectors, K_0 ≤ 12", vectors.len()))
}

fn ac3_surface_example() -> Outcome {
    for b in 1..=6u64 {
        for k in 0..=b as usize + 6 {
            let got = config_betti(&bv(&[0, b, 0]), k);
            ensure!(got == binomial(b, k as u64), "B={b} k={k}: {got}");
        }
    }
    Ok("b_k = C(B, k) for B = 1..6".into())
}

fn all_words(space: &GradedSpace, m: usize) -> Vec<BasisWord> {
    let letters: Vec<Letter> = space.letters().collect();
    let mut words = vec![Vec::new()];
    for _ in 0..m {
        words = words
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(BasisWord::new).collect()
}

fn ac4_projector_laws() -> Outcome {
    let mut spaces = Vec::new();
    for p in 1..=3u32 {
        for d in 0..=2usize {
            spaces.push(vec![(p, d)]);
            for q in 1..=3u32 {
                for e in 0..=2usize {
                    spaces.push(vec![(p, d), (q, e)]);
                }
            }
        }
    }
    let mut words_checked = 0usize;
    for pairs in &spaces {
        let space = GradedSpace::from_pairs(pairs).unwrap();
        for m in 0..=4 {
            let words = all_words(&space, m);
            let projections: std::collections::BTreeMap<BasisWord, TensorVector> =
                words.iter().map(|w| (w.clone(), project(&space, w))).collect();
            for (w, pw) in &projections {
                ensure!(pw.project(&space) == *pw, "P² ≠ P on {w:?} in {pairs:?}");
                let key = w.orbit_key();
                for (v, c) in pw.terms() {
                    // support stays in the rearrangement class, so off-class
                    // pairs vanish on both sides of ⟨Pu, v⟩ = ⟨u, Pv⟩
                    ensure!(v.orbit_key() == key, "P leaves the rearrangement class of {w:?}");
                    ensure!(projections[v].coefficient(w) == *c, "⟨Pu,v⟩ ≠ ⟨u,Pv⟩ for {w:?}, {v:?}");
                }
                let degrees = w.degrees(&space);
                for r in 0..m.saturating_sub(1) {
                    let mut perm: Vec<usize> = (0..m).collect();
                    perm.swap(r, r + 1);
                    let sign = if degrees[r] % 2 == 1 && degrees[r + 1] % 2 == 1 { -1 } else { 1 };
                    let swapped = &projections[&w.permuted(&perm)];
                    ensure!(
                        pw.scaled(&BigRational::from_integer(sign.into())) == *swapped,
                        "graded commutation fails at position {r} of {w:?}"
                    );
                }
                if is_block_sorted(&space, w) {
                    let direct = pw.inner(&TensorVector::basis(w.clone()));
                    let formula = projected_norm_sq(&space, w).map_err(|e| e.to_string())?;
                    ensure!(direct == formula, "norm formula {formula} vs ⟨Pw,w⟩ {direct} for {w:?}");
                }
                words_checked += 1;
            }
        }
    }
    Ok(format!("{words_checked} words over {} spaces", spaces.len()))
}

fn random_gram(rng: &mut ChaCha8Rng) -> SymMatrix {
    let rows = 1 + rng.next_u32() as usize % 6;
    let cols = 1 + rng.next_u32() as usize % 6;
    let mut g = Matrix::<BigRational>::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            g[(i, j)] = BigRational::from_integer(((rng.next_u32() % 7) as i64 - 3).into());
        }
    }
    SymMatrix::gram(&g)
}

fn ac5_kronecker_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut cases: Vec<(SymMatrix, SymMatrix)> = (0..50).map(|_| (random_gram(&mut rng), random_gram(&mut rng))).collect();
    for (z, w) in [(1, 1), (2, 3), (4, 1), (3, 3)] {
        cases.push((SymMatrix::zeros(z), SymMatrix::zeros(w)));
    }
    cases.push((SymMatrix::zeros(3), random_gram(&mut rng)));
    let mut nontrivial = 0;
    for (a, b) in &cases {
        let r = hodge::kron_sum_kernel_dim(a, b).map_err(|e| e.to_string())?;
        ensure!(r.computed == r.predicted, "computed {} vs predicted {}", r.computed, r.predicted);
        nontrivial += usize::from(r.computed > 0);
    }
    Ok(format!("{} pairs, {nontrivial} with nontrivial kernel", cases.len()))
}

fn ac6_hodge_catalog() -> Outcome {
    for (name, k, expected) in catalog::all() {
        let betti = hodge::betti_numbers(&k);
        ensure!(betti == expected, "{name}: betti {betti:?} vs {expected:?}");
        for deg in 0..=k.max_dim().unwrap() {
            let dims = hodge::hodge_decomposition_dims(&k, deg).map_err(|e| e.to_string())?;
            ensure!(dims.harmonic as u64 == betti[deg], "{name} k={deg}: harmonic {} vs β {}", dims.harmonic, betti[deg]);
            ensure!(dims.total() == k.count(deg), "{name} k={deg}: {dims:?} does not fill C_k");
        }
    }
    Ok("5 complexes, every degree".into())
}

fn ac7_fiber_identity() -> Outcome {
    let mut count = 0;
    for points in 1..=6u64 {
        for d in 1..=3u64 {
            for n in 0..=8u64.min(points * d) {
                let (lhs, rhs) = fiber_decomposition_check(points, d, n);
                ensure!(lhs == rhs, "N={points} d={d} n={n}: {lhs} vs {rhs}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} (N, d, n) points"))
}

const IND: ScalarField = ScalarField::indicator(1.0);

fn ac8_poisson() -> Outcome {
    let window = Window::new(vec![1.0, 2.0]).unwrap();
    let big = Window::new(vec![2.0, 2.0]).unwrap();
    type Check = Box<dyn Fn(u64) -> gammahodge_core::Result<McReport>>;
    let samples = 100_000;
    let checks: Vec<(&str, Check)> = vec![
        ("laplace c=0.3", Box::new({
            let w = window.clone();
            move |seed| check_laplace(&ScalarField::indicator(0.3), &w, samples, seed)
        })),
        ("laplace c=-1", Box::new({
            let w = big.clone();
            move |seed| check_laplace(&ScalarField::indicator(-1.0), &w, samples, seed)
        })),
        ("local 1{N=2}", Box::new({
            let w = window.clone();
            move |seed| check_local_expansion(&LocalFunctional::CountEquals(2), &w, samples, seed, 64)
        })),
        ("local <1,γ>", Box::new({
            let w = big.clone();
            move |seed| {
                let f = LocalFunctional::Polynomial { poly: Quadratic::LINEAR, phi: IND };
                check_local_expansion(&f, &w, samples, seed, 64)
            }
        })),
        ("mecke m=1 h=t", Box::new({
            let w = window.clone();
            move |seed| check_mecke(1, &MeckeFunction { g: IND, h: Quadratic::LINEAR, phi: IND }, &w, samples, seed)
        })),
        ("mecke m=2 h=1", Box::new({
            let w = window.clone();
            move |seed| check_mecke(2, &MeckeFunction { g: IND, h: Quadratic::CONST, phi: IND }, &w, samples, seed)
        })),
    ];
    let mut summary = Vec::new();
    for (name, check) in &checks {
        let at_42 = check(42).map_err(|e| format!("{name}: {e}"))?;
        ensure!(at_42.rel_error < 0.02, "{name}: relative error {} ≥ 2%", at_42.rel_error);
        let mut covered = 0;
        for seed in 0..100 {
            let r = check(seed).map_err(|e| format!("{name}: {e}"))?;
            covered += usize::from(r.covers(3.0));
        }
        ensure!(covered >= 99, "{name}: only {covered}/100 seeds cover the reference at 3σ");
        summary.push(format!("{name}: rel {:.2e}, {covered}/100", at_42.rel_error));
    }
    Ok(summary.join("; "))
}

/// Convolution by explicit polynomial multiplication.
fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ac9_kunneth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random = |rng: &mut ChaCha8Rng| {
        let d = 1 + rng.next_u32() as usize % 3;
        bv(&(0..=d).map(|_| u64::from(rng.next_u32() % 4)).collect::<Vec<_>>())
    };
    for _ in 0..20 {
        let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
        let left = kunneth_product(&kunneth_product(&a, &b), &c);
        let right = kunneth_product(&a, &kunneth_product(&b, &c));
        ensure!(left == right, "associativity fails for {:?} {:?} {:?}", a.beta(), b.beta(), c.beta());
    }
    let circle = hodge::betti_numbers(&catalog::hollow_triangle());
    let torus = hodge::betti_numbers(&catalog::minimal_torus());
    let sphere = hodge::betti_numbers(&catalog::hollow_tetrahedron());
    let bases: Vec<Vec<u64>> = vec![vec![0, 2], vec![0, 1], vec![0, 1, 0], vec![0, 0, 1, 2]];
    for x in &bases {
        for m in [&circle, &torus, &sphere] {
            let y = kunneth_product(&bv(x), &bv(m));
            let direct = bv(&poly_mul(x, m));
            ensure!(y == direct, "convolution {:?} vs {:?}", y.beta(), direct.beta());
            for n in 0..=8 {
                ensure!(config_betti(&y, n) == config_betti(&direct, n), "b_{n} differs for X={x:?}, M={m:?}");
            }
        }
    }
    Ok("20 random triples associative; marked path matches direct β(Y)".into())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("AC1 closed formula vs graded-algebra rank", Duration::from_secs(120), ac1_formula_vs_bruteforce),
        ("AC2 vanishing threshold", Duration::from_secs(5), ac2_vanishing),
        ("AC3 surface example", Duration::from_secs(5), ac3_surface_example),
        ("AC4 projector laws and norm formula", Duration::from_secs(60), ac4_projector_laws),
        ("AC5 Kronecker-sum kernel", Duration::from_secs(10), ac5_kronecker_kernel),
        ("AC6 weak Hodge decomposition on catalog", Duration::from_secs(10), ac6_hodge_catalog),
        ("AC7 tangent-fiber dimension identity", Duration::from_secs(5), ac7_fiber_identity),
        ("AC8 Poisson identities", Duration::from_secs(120), ac8_poisson),
        ("AC9 Künneth pipeline", Duration::from_secs(10), ac9_kunneth),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
