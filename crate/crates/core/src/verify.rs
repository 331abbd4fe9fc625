//! Cross-checks every identity the crate implements, over a (k, n) grid.
//!
//! The centerpiece is triple agreement: the combinatorial-sum engine, the
//! generating-function oracle and the Q-coefficient oracle must produce
//! identical polynomials on every grid cell, with zero tolerance. The
//! remaining checks cover degree structure, closed forms, the variance
//! identity, the partition enumerator, Q support, the PMF recurrence and —
//! when a seed is supplied — Monte Carlo agreement.
//!
//! Checks report the first failing cell verbatim (both polynomials), so a
//! mismatch is actionable rather than a bare boolean.

use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, factorial, BigInt, BigRational, LambdaPoly, Poly};
use crate::moments::{
    coeff_closed_form, factorial_moment_poly, kappa, lowest_degree, order2_moment_poly, pmf,
    variance, OrderParams,
};
use crate::oracles::{
    charalambides_moment_poly, fmgf_moment_poly, pmf_weights_exact, sample_moments, QTable,
};
use crate::partitions::{count_weighted, enumerate_weighted};

/// Grid bounds and options for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Orders 1..=k_max are checked.
    pub k_max: u32,
    /// Moments 0..=n_max are checked.
    pub n_max: u32,
    /// When set, also runs the Monte Carlo cross-check with this seed.
    pub seed: Option<u64>,
    /// Corrupts the κ table feeding the moment engine; the triple-agreement
    /// check must then fail. Exercises the failure path end to end.
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(k_max: u32, n_max: u32) -> Self {
        VerifyOptions {
            k_max,
            n_max,
            seed: None,
            inject_fault: false,
        }
    }
}

/// Outcome of one named check over its cells.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    /// Number of grid cells (or identities) examined.
    pub cells: usize,
    /// First failing cell, rendered verbatim; `None` on pass.
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Results of a full verification run, in a fixed check order.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    /// First counterexample across all checks, if any.
    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn params(k: u32) -> OrderParams {
    OrderParams::new(k).expect("grid k >= 1")
}

/// Engine polynomial, optionally with a corrupted κ table (κ₂ off by one).
fn engine_poly(n: u32, p: OrderParams, inject_fault: bool) -> LambdaPoly {
    if !inject_fault {
        return factorial_moment_poly(n, p);
    }
    let n_fact = factorial(n);
    let mut acc = vec![BigInt::zero(); n as usize + 1];
    for parts in enumerate_weighted(n, p.k()).expect("k >= 1") {
        let mut denom = BigInt::one();
        let mut kappa_product = BigInt::one();
        for (j, m) in parts.nonzero() {
            denom *= factorial(m);
            let mut kj = kappa(p, j);
            if j == 2 {
                kj += 1; // the deliberate corruption
            }
            kappa_product *= kj.pow(m);
        }
        let term = BigRational::new(&n_fact * kappa_product, denom);
        acc[parts.total_parts() as usize] += term.to_integer();
    }
    Poly::from_coeffs(acc)
}

fn cell_grid(options: &VerifyOptions) -> Vec<(u32, u32)> {
    let mut cells = Vec::new();
    for k in 1..=options.k_max {
        for n in 0..=options.n_max {
            cells.push((k, n));
        }
    }
    cells
}

fn triple_agreement_cell(k: u32, n: u32, inject_fault: bool) -> Option<String> {
    let p = params(k);
    let engine = engine_poly(n, p, inject_fault);
    let fmgf = fmgf_moment_poly(n, p);
    if engine != fmgf {
        return Some(format!(
            "n={n} k={k}: combinatorial sum = {engine}, fmgf = {fmgf}"
        ));
    }
    let q_route = match charalambides_moment_poly(n, p) {
        Ok(poly) => poly,
        Err(e) => return Some(format!("n={n} k={k}: Q-route failed: {e}")),
    };
    if engine != q_route {
        return Some(format!(
            "n={n} k={k}: combinatorial sum = {engine}, Q-route = {q_route}"
        ));
    }
    None
}

fn check_triple_agreement(options: &VerifyOptions) -> CheckReport {
    let cells = cell_grid(options);
    let counterexample = cells
        .iter()
        .find_map(|&(k, n)| triple_agreement_cell(k, n, options.inject_fault));
    CheckReport {
        name: "triple_oracle_agreement",
        cells: cells.len(),
        counterexample,
    }
}

#[cfg(feature = "parallel")]
fn check_triple_agreement_par(options: &VerifyOptions) -> CheckReport {
    use rayon::prelude::*;

    let cells = cell_grid(options);
    // Evaluate cells in parallel but report the first failure in grid order.
    let failures: Vec<Option<String>> = cells
        .par_iter()
        .map(|&(k, n)| triple_agreement_cell(k, n, options.inject_fault))
        .collect();
    CheckReport {
        name: "triple_oracle_agreement",
        cells: cells.len(),
        counterexample: failures.into_iter().flatten().next(),
    }
}

fn check_degree_structure(options: &VerifyOptions) -> CheckReport {
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for k in 1..=options.k_max {
        let p = params(k);
        for n in 0..=options.n_max {
            cells += 1;
            let poly = factorial_moment_poly(n, p);
            let fail = |what: String| Some(format!("n={n} k={k}: {what} in {poly}"));
            if n == 0 {
                if poly != LambdaPoly::one() {
                    counterexample = fail("M_(0) != 1".into());
                    break 'outer;
                }
                continue;
            }
            if poly.degree() != Some(n as usize) {
                counterexample = fail(format!("degree {:?} != {n}", poly.degree()));
                break 'outer;
            }
            if poly.coeff(n as usize) != kappa(p, 1).pow(n) {
                counterexample = fail("leading coefficient != kappa_1^n".into());
                break 'outer;
            }
            if poly.lowest_power() != Some(lowest_degree(n, p) as usize) {
                counterexample = fail(format!(
                    "lowest power {:?} != {}",
                    poly.lowest_power(),
                    lowest_degree(n, p)
                ));
                break 'outer;
            }
            if poly.coeff(1) != factorial(n) * binomial(k + 1, i64::from(n) + 1) {
                counterexample = fail("coefficient of lambda != n!*C(k+1, n+1)".into());
                break 'outer;
            }
            if poly.coeffs().iter().any(|c| c.is_negative()) {
                counterexample = fail("negative coefficient".into());
                break 'outer;
            }
        }
    }
    CheckReport {
        name: "degree_structure",
        cells,
        counterexample,
    }
}

fn check_order2_closed_form(options: &VerifyOptions) -> CheckReport {
    let mut cells = 0;
    let mut counterexample = None;
    if options.k_max >= 2 {
        let p = params(2);
        for n in 0..=options.n_max {
            cells += 1;
            let closed = order2_moment_poly(n);
            let engine = factorial_moment_poly(n, p);
            if closed != engine {
                counterexample = Some(format!("n={n}: closed form = {closed}, engine = {engine}"));
                break;
            }
        }
    }
    CheckReport {
        name: "order2_closed_form",
        cells,
        counterexample,
    }
}

fn check_order1_collapse(options: &VerifyOptions) -> CheckReport {
    let n_max = options.n_max.max(20);
    let p = params(1);
    let mut counterexample = None;
    for n in 0..=n_max {
        let poly = factorial_moment_poly(n, p);
        let expected = LambdaPoly::monomial(BigInt::one(), n as usize);
        if poly != expected {
            counterexample = Some(format!("n={n}: {poly} != lambda^{n}"));
            break;
        }
    }
    CheckReport {
        name: "order1_collapse",
        cells: n_max as usize + 1,
        counterexample,
    }
}

fn check_coeff_closed_forms(options: &VerifyOptions) -> CheckReport {
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for k in 1..=options.k_max {
        let p = params(k);
        for n in 1..=options.n_max {
            let poly = factorial_moment_poly(n, p);
            let candidates: [(i64, u32, u32); 5] = [
                (i64::from(n), 1, 1),
                (i64::from(n) - 1, 2, 2),
                (i64::from(n) - 2, 3, 3),
                (i64::from(n) - 3, 4, 4),
                (1, 1, 1),
            ];
            for (power, min_k, min_n) in candidates {
                if power < 1 || k < min_k || n < min_n {
                    continue;
                }
                cells += 1;
                let closed = match coeff_closed_form(n, p, power) {
                    Ok(v) => v,
                    Err(e) => {
                        counterexample = Some(format!("n={n} k={k} power={power}: {e}"));
                        break 'outer;
                    }
                };
                let extracted = poly.coeff(power as usize);
                if closed != extracted {
                    counterexample = Some(format!(
                        "n={n} k={k} power={power}: closed form {closed} != extracted {extracted}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    CheckReport {
        name: "coeff_closed_forms",
        cells,
        counterexample,
    }
}

fn check_variance_identity(options: &VerifyOptions) -> CheckReport {
    let mut counterexample = None;
    for k in 1..=options.k_max {
        let p = params(k);
        let m1 = factorial_moment_poly(1, p);
        let m2 = factorial_moment_poly(2, p);
        let identity = &(&m2 + &m1) - &(&m1 * &m1);
        let sigma = variance(p, &BigRational::one()).expect("lambda = 1 >= 0");
        let expected = LambdaPoly::monomial(sigma.to_integer(), 1);
        if identity != expected {
            counterexample = Some(format!("k={k}: {identity} != {expected}"));
            break;
        }
    }
    CheckReport {
        name: "variance_identity",
        cells: options.k_max as usize,
        counterexample,
    }
}

fn check_partition_counts(options: &VerifyOptions) -> CheckReport {
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for k in 1..=options.k_max {
        for n in 0..=options.n_max {
            cells += 1;
            let mut streamed = 0u64;
            for parts in enumerate_weighted(n, k).expect("k >= 1") {
                let weight: u32 = parts.nonzero().map(|(j, m)| j * m).sum();
                if weight != n {
                    counterexample = Some(format!(
                        "n={n} k={k}: vector {:?} has weight {weight}",
                        parts.mults()
                    ));
                    break 'outer;
                }
                streamed += 1;
            }
            let counted = count_weighted(n, k).expect("k >= 1");
            if BigInt::from(streamed) != counted {
                counterexample = Some(format!(
                    "n={n} k={k}: enumerated {streamed} != recurrence {counted}"
                ));
                break 'outer;
            }
        }
    }
    CheckReport {
        name: "partition_counts",
        cells,
        counterexample,
    }
}

fn check_q_support(options: &VerifyOptions) -> CheckReport {
    let r_max = options.n_max.min(8);
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for k in 1..=options.k_max {
        let table = QTable::new(params(k), r_max);
        let base_sum: BigInt = BigInt::from(2).pow(k + 1) - BigInt::from(k) - BigInt::from(2);
        for r in 0..=r_max {
            cells += 1;
            let mut row_sum = BigInt::zero();
            for m in 0..=((k + 1) * r + 2) {
                let q = table.get(m, r);
                if (m < 2 * r || m > (k + 1) * r) && !q.is_zero() {
                    counterexample = Some(format!("k={k}: Q({m},{r}) = {q} outside support"));
                    break 'outer;
                }
                row_sum += q;
            }
            if row_sum != base_sum.pow(r) {
                counterexample = Some(format!("k={k} r={r}: row sum {row_sum} != (2^(k+1)-k-2)^r"));
                break 'outer;
            }
        }
    }
    CheckReport {
        name: "q_support_and_row_sums",
        cells,
        counterexample,
    }
}

fn check_pmf_recurrence(options: &VerifyOptions) -> CheckReport {
    let k_max = options.k_max.min(5);
    let n_max = options.n_max.min(12);
    let lambda = BigRational::new(BigInt::from(2), BigInt::from(3));
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for k in 1..=k_max {
        let p = params(k);
        let weights = pmf_weights_exact(p, &lambda, n_max);
        for n in 0..=n_max {
            cells += 1;
            let direct = pmf(n, p)
                .with_lambda(lambda.clone())
                .exact_factor()
                .expect("lambda attached");
            if weights[n as usize] != direct {
                counterexample = Some(format!(
                    "n={n} k={k}: recurrence {} != partition sum {direct}",
                    weights[n as usize]
                ));
                break 'outer;
            }
        }
    }
    CheckReport {
        name: "pmf_recurrence_agreement",
        cells,
        counterexample,
    }
}

fn check_monte_carlo(seed: u64) -> CheckReport {
    let configs = [(1u32, 1.0f64), (2, 0.5), (3, 1.0)];
    let mut cells = 0;
    let mut counterexample = None;
    'outer: for (k, lambda) in configs {
        let summary = sample_moments(params(k), lambda, 3, 1_000_000, seed)
            .expect("lambda within sampler range");
        for est in &summary.estimates {
            cells += 1;
            let z = est.z_score();
            if z.is_nan() || z.abs() > 5.0 {
                counterexample = Some(format!(
                    "k={k} lambda={lambda} order={}: estimate {} vs exact {} (z = {z:.2})",
                    est.order, est.estimate, est.exact
                ));
                break 'outer;
            }
        }
    }
    CheckReport {
        name: "monte_carlo_within_5_sigma",
        cells,
        counterexample,
    }
}

fn assemble(options: &VerifyOptions, triple: CheckReport) -> VerifyReport {
    let mut checks = vec![
        triple,
        check_degree_structure(options),
        check_order2_closed_form(options),
        check_order1_collapse(options),
        check_coeff_closed_forms(options),
        check_variance_identity(options),
        check_partition_counts(options),
        check_q_support(options),
        check_pmf_recurrence(options),
    ];
    if let Some(seed) = options.seed {
        checks.push(check_monte_carlo(seed));
    }
    VerifyReport { checks }
}

/// Runs every check sequentially.
pub fn run(options: &VerifyOptions) -> VerifyReport {
    assemble(options, check_triple_agreement(options))
}

/// Runs the grid-heavy triple-agreement check with data-parallel cells;
/// output is identical to [`run`] including the order of reported
/// failures.
#[cfg(feature = "parallel")]
pub fn par_run(options: &VerifyOptions) -> VerifyReport {
    assemble(options, check_triple_agreement_par(options))
}
