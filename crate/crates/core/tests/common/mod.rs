//! Random instances and checks shared by the property and acceptance suites.
#![allow(dead_code)]

use htrinomial::bohl::count_roots_below;
use htrinomial::egervary::{negate_variable, rescale_to_unit_c};
use htrinomial::geometry::singular::critical_circle_radius;
use htrinomial::radial::triangle_profile;
use htrinomial::roots::{find_all_roots, jacobian, MultiplicityClass, RootList};
use htrinomial::{Error, HarmonicTrinomial, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};
use std::f64::consts::TAU;

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coprime `(n, m)` with `n ≤ 7`, `m ≤ 5`.
pub fn exponents() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=7, 1u32..=5).prop_filter("coprime", |&(n, m)| gcd(n, m) == 1)
}

/// Uniform by area on the annulus `0.2 ≤ |z| ≤ 5`.
pub fn coefficient() -> impl Strategy<Value = Complex64> {
    (0.04f64..25.0, 0.0f64..TAU).prop_map(|(r2, t)| Complex64::from_polar(r2.sqrt(), t))
}

/// Real with `0.2 ≤ |x| ≤ 5`.
pub fn real_coefficient() -> impl Strategy<Value = Complex64> {
    (0.2f64..5.0, any::<bool>()).prop_map(|(x, neg)| Complex64::new(if neg { -x } else { x }, 0.0))
}

pub fn trinomial() -> impl Strategy<Value = HarmonicTrinomial> {
    (exponents(), coefficient(), coefficient(), coefficient())
        .prop_map(|((n, m), a, b, c)| HarmonicTrinomial::new(a, b, c, n, m).unwrap())
}

pub fn real_trinomial() -> impl Strategy<Value = HarmonicTrinomial> {
    (exponents(), real_coefficient(), real_coefficient())
        .prop_map(|((n, m), b, c)| HarmonicTrinomial::monic(b, c, n, m).unwrap())
}

/// Runs `check` on `cases` draws with a fixed seed and little shrinking.
pub fn run<S, F>(cases: u32, seed: u64, strategy: S, check: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        max_shrink_iters: 16,
        ..Config::default()
    };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, check).map_err(|e| match e {
        TestError::Fail(why, value) => format!("{why} for {value:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// Oracle roots, checked against the `[n, n+3m]` bound.
pub fn roots_in_bound(h: &HarmonicTrinomial, tol: &Tolerances) -> Result<RootList, TestCaseError> {
    let roots = find_all_roots(h, tol).map_err(|e| fail(format!("oracle failed: {e}")))?;
    let (lo, hi) = (h.n() as usize, h.root_bound());
    if roots.len() < lo || roots.len() > hi {
        return Err(fail(format!("{} roots outside [{lo}, {hi}]", roots.len())));
    }
    Ok(roots)
}

/// Bohl count equals the oracle count at the first five admissible radii
/// among `fractions`, spread logarithmically over `[𝔠/2, 2𝔞]`.
pub fn bohl_matches_oracle(h: &HarmonicTrinomial, fractions: &[f64]) -> Result<(), TestCaseError> {
    let tol = Tolerances::default();
    let roots = roots_in_bound(h, &tol)?;
    let p = triangle_profile(h).map_err(|e| fail(e.to_string()))?;
    let (lo, hi) = ((0.5 * p.c_radius).ln(), (2.0 * p.a_radius).ln());
    let mut checked = 0;
    for &f in fractions {
        let v = (lo + f * (hi - lo)).exp();
        match count_roots_below(h, v, &tol) {
            Ok(k) => {
                let oracle = roots.count_below(v);
                if k != oracle {
                    return Err(fail(format!("v = {v}: Bohl {k}, oracle {oracle}, moduli {:?}", roots.moduli())));
                }
                checked += 1;
            }
            Err(Error::OnBoundary { .. }) => continue,
            Err(e) => return Err(fail(format!("v = {v}: {e}"))),
        }
        if checked == 5 {
            return Ok(());
        }
    }
    Err(fail(format!("only {checked} admissible radii")))
}

pub fn groups_at_most_two(h: &HarmonicTrinomial) -> Result<(), TestCaseError> {
    let roots = roots_in_bound(h, &Tolerances::default())?;
    match roots.spectrum().iter().find(|g| g.count > 2) {
        Some(g) => Err(fail(format!("{} roots share modulus {}", g.count, g.modulus))),
        None => Ok(()),
    }
}

fn same_moduli(x: &[f64], y: &[f64], what: &str) -> Result<(), TestCaseError> {
    if x.len() != y.len() {
        return Err(fail(format!("{what}: {} roots vs {}", x.len(), y.len())));
    }
    for (p, q) in x.iter().zip(y) {
        if (p - q).abs() > 1e-9 * p.max(1.0) {
            return Err(fail(format!("{what}: modulus {p} vs {q}")));
        }
    }
    Ok(())
}

/// `h(-z)` has the negated roots, and rescaling to `|c| = 1` divides every
/// modulus by `|c|^(1/(n+m))` without reordering.
pub fn negation_and_rescaling(h: &HarmonicTrinomial) -> Result<(), TestCaseError> {
    let tol = Tolerances::default();
    let base = roots_in_bound(h, &tol)?.moduli();
    let negated = roots_in_bound(&negate_variable(h), &tol)?.moduli();
    same_moduli(&base, &negated, "negation")?;
    let (g, scale) = rescale_to_unit_c(h).map_err(|e| fail(e.to_string()))?;
    let rescaled: Vec<f64> = roots_in_bound(&g, &tol)?.moduli().iter().map(|r| r * scale).collect();
    same_moduli(&base, &rescaled, "rescaling")
}

/// Positions of real roots in the modulus ordering, 1-based, multiple roots
/// counted twice, alongside the length of the ordering. A position tied in
/// modulus with others is replaced by the whole tie.
pub fn real_root_positions(h: &HarmonicTrinomial) -> Result<(Vec<Vec<usize>>, usize), TestCaseError> {
    let tol = Tolerances::default();
    let roots = roots_in_bound(h, &tol)?;
    let mut ordering: Vec<(f64, bool)> = Vec::new();
    for r in &roots.roots {
        let real = r.value.im.abs() <= 1e-9 * r.modulus.max(1.0);
        let copies = if r.multiplicity_class == MultiplicityClass::Multiple { 2 } else { 1 };
        for _ in 0..copies {
            ordering.push((r.modulus, real));
        }
    }
    let positions = ordering
        .iter()
        .filter(|(_, real)| *real)
        .map(|&(modulus, _)| {
            (1..=ordering.len())
                .filter(|&j| (ordering[j - 1].0 - modulus).abs() <= tol.modulus_group)
                .collect()
        })
        .collect();
    Ok((positions, ordering.len()))
}

/// Real roots sit at position 1, m-1, m, m+1 or `last` of the ordering,
/// where `last` is `n+m-1` for the literal statement and the length of the
/// ordering otherwise.
pub fn real_roots_placed(h: &HarmonicTrinomial, literal: bool) -> Result<(), TestCaseError> {
    let (positions, k) = real_root_positions(h)?;
    let (n, m) = (h.n() as usize, h.m() as usize);
    let last = if literal { n + m - 1 } else { k };
    let allowed = [1, m.wrapping_sub(1), m, m + 1, last];
    match positions.iter().find(|tie| !tie.iter().any(|p| allowed.contains(p))) {
        Some(tie) => Err(fail(format!("real root at position {tie:?} of {k}"))),
        None => Ok(()),
    }
}

/// `count` fixed-seed draws from `strategy`.
pub fn sample<S: Strategy>(strategy: S, count: usize, seed: u64) -> Vec<S::Value> {
    let config = Config { rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new(config);
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy draws").current())
        .collect()
}

/// `|J| ≤ 1e-10·(|h_z|² + |h_z̄|²)` at 64 angles on the critical circle.
pub fn jacobian_on_critical_circle(h: &HarmonicTrinomial) -> Result<(), TestCaseError> {
    let r = critical_circle_radius(h).map_err(|e| fail(e.to_string()))?;
    for k in 0..64 {
        let z = Complex64::from_polar(r, TAU * k as f64 / 64.0);
        let size = h.dz(z).norm_sqr() + h.dzbar(z).norm_sqr();
        let j = jacobian(h, z);
        if j.abs() > 1e-10 * size {
            return Err(fail(format!("J = {j} at {z} (scale {size})")));
        }
    }
    Ok(())
}
