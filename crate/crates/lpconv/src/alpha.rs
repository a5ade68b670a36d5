//! The comparison constant `α(ε, p) = sup { |u-1|^p / f(u) : |u-1| >= ε }`
//! and the explicit `δ(ε, p)` budget chain built on top of it.
//!
//! The supremum is taken over a polar chart centered at 1 (the constraint set
//! is `|u-1| >= ε` and the p < 2 near-singularity sits at `u = 1`), with a
//! far-field tail check. The result is a high-confidence numerical supremum,
//! not a certified bound; the safety factor absorbs grid error.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{normalized_gap, Exponents};
use crate::search::{grid_refine, Rect};

#[derive(Debug, Clone)]
pub struct AlphaOptions {
    /// Radial grid resolution; the angular resolution is half of it.
    pub grid_resolution: usize,
    pub refine_steps: usize,
    pub safety_factor: f64,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions {
            grid_resolution: 2048,
            refine_steps: 64,
            safety_factor: 1.05,
        }
    }
}

impl AlphaOptions {
    pub fn with_safety_factor(mut self, safety_factor: f64) -> Self {
        self.safety_factor = safety_factor;
        self
    }
}

fn serialize_complex<S: serde::Serializer>(
    v: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [v.re, v.im].serialize(s)
}

/// The computed comparison constant with its argmax witness and grid/tail
/// diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaCertificate {
    pub epsilon: f64,
    pub exponents: Exponents,
    pub alpha: f64,
    #[serde(serialize_with = "serialize_complex")]
    pub argmax_point: Complex64,
    pub grid_resolution: usize,
    pub refine_steps: usize,
    /// Outer radius of the grid chart; the tail is sampled beyond it.
    pub tail_radius: f64,
    pub tail_max_ratio: f64,
    pub safety_factor: f64,
}

// Raw ratio for the chart scan. Non-finite values map to +inf so the scan
// surfaces them; the singularity guard is unnecessary here because the chart
// keeps |u - 1| >= epsilon.
fn ratio_or_inf(u: Complex64, e: Exponents) -> f64 {
    let r = (u - Complex64::new(1.0, 0.0)).norm().powf(e.p()) / normalized_gap(u, e);
    if r.is_finite() {
        r
    } else {
        f64::INFINITY
    }
}

/// Compute `α(ε, p)` by polar grid scan with local refinement, plus a
/// far-field tail sample, scaled by the safety factor.
///
/// The chart is `u = 1 + r e^{iθ}` with `r ∈ [ε, R]`, `θ ∈ [0, π]`
/// (conjugate symmetry justifies the half plane), `r` log-spaced, and
/// `R = max(10, 1 + 10ε)`. The tail samples radii `{R, 2R, 5R, 10R}`.
pub fn compute_alpha(epsilon: f64, e: Exponents, opts: &AlphaOptions) -> Result<AlphaCertificate> {
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon > 4.0 {
        return Err(Error::OutOfDomain {
            name: "epsilon",
            value: epsilon,
            constraint: "epsilon in (0, 4]",
        });
    }
    if !opts.safety_factor.is_finite() || opts.safety_factor < 1.0 {
        return Err(Error::OutOfDomain {
            name: "safety_factor",
            value: opts.safety_factor,
            constraint: "safety_factor >= 1",
        });
    }

    let r_outer = 10.0_f64.max(1.0 + 10.0 * epsilon);
    let s_max = (r_outer / epsilon).ln();
    let chart = move |s: f64, theta: f64| {
        Complex64::new(1.0, 0.0) + Complex64::from_polar(epsilon * s.exp(), theta)
    };
    let objective = move |s: f64, theta: f64| ratio_or_inf(chart(s, theta), e);

    let resolution = (opts.grid_resolution.max(2), (opts.grid_resolution / 2).max(2));
    let (grid_max, (bs, btheta)) = grid_refine(
        &objective,
        Rect {
            x0: 0.0,
            x1: s_max,
            y0: 0.0,
            y1: std::f64::consts::PI,
        },
        resolution,
        opts.refine_steps,
        1e-12,
    );
    if !grid_max.is_finite() {
        // deterministic rescan for the first offending sample
        let (nx, ny) = resolution;
        for i in 0..nx {
            let s = s_max * i as f64 / (nx - 1) as f64;
            for j in 0..ny {
                let theta = std::f64::consts::PI * j as f64 / (ny - 1) as f64;
                let u = chart(s, theta);
                if !ratio_or_inf(u, e).is_finite() || ratio_or_inf(u, e) == f64::INFINITY {
                    return Err(Error::NonFiniteSample { u });
                }
            }
        }
        return Err(Error::NonFiniteSample {
            u: chart(bs, btheta),
        });
    }

    // far-field tail: the ratio tends to 1, so this documents that the grid
    // maximum dominates the far field
    const TAIL_ANGLES: usize = 256;
    let mut tail_max = f64::NEG_INFINITY;
    let mut tail_argmax = Complex64::new(0.0, 0.0);
    for multiplier in [1.0, 2.0, 5.0, 10.0] {
        let radius = multiplier * r_outer;
        for j in 0..TAIL_ANGLES {
            let theta = std::f64::consts::PI * j as f64 / (TAIL_ANGLES - 1) as f64;
            let u = Complex64::new(1.0, 0.0) + Complex64::from_polar(radius, theta);
            let v = ratio_or_inf(u, e);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { u });
            }
            if v > tail_max {
                tail_max = v;
                tail_argmax = u;
            }
        }
    }

    let (supremum, argmax_point) = if grid_max >= tail_max {
        (grid_max, chart(bs, btheta))
    } else {
        (tail_max, tail_argmax)
    };
    let alpha = opts.safety_factor * supremum;
    debug_assert!(alpha >= 1.0 - 1e-9, "alpha = {alpha} below the far-field floor");

    Ok(AlphaCertificate {
        epsilon,
        exponents: e,
        alpha,
        argmax_point,
        grid_resolution: opts.grid_resolution,
        refine_steps: opts.refine_steps,
        tail_radius: r_outer,
        tail_max_ratio: tail_max,
        safety_factor: opts.safety_factor,
    })
}

/// Which statement a convexity budget certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statement {
    Lemma1,
    Lemma2,
    Theorem,
}

impl Statement {
    pub fn as_str(self) -> &'static str {
        match self {
            Statement::Lemma1 => "lemma1",
            Statement::Lemma2 => "lemma2",
            Statement::Theorem => "theorem",
        }
    }
}

impl std::str::FromStr for Statement {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lemma1" => Ok(Statement::Lemma1),
            "lemma2" => Ok(Statement::Lemma2),
            "theorem" => Ok(Statement::Theorem),
            other => Err(format!(
                "unknown statement '{other}' (expected lemma1, lemma2, or theorem)"
            )),
        }
    }
}

/// An `(ε, δ)` budget for a named statement, with the full constant chain
/// recorded for auditability: re-evaluating the chain reproduces `delta`
/// bit-exactly.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityBudget {
    pub statement: Statement,
    pub epsilon: f64,
    pub delta: f64,
    pub exponents: Exponents,
    pub chain: Vec<(String, f64)>,
}

impl ConvexityBudget {
    pub fn chain_value(&self, name: &str) -> Result<f64> {
        self.chain
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::MissingChainEntry(name.to_string()))
    }

    /// Recompute `delta` from the recorded chain constants. Uses the same
    /// floating-point expressions as the original computation, so the result
    /// is bit-identical.
    pub fn replay_delta(&self) -> Result<f64> {
        let p = self.chain_value("p")?;
        match self.statement {
            Statement::Lemma1 => Ok(lemma1_delta_from(
                self.chain_value("epsilon_prime")?,
                self.chain_value("alpha")?,
                p,
            )),
            Statement::Lemma2 => {
                let d1 = lemma1_delta_from(
                    self.chain_value("lemma1.epsilon_prime")?,
                    self.chain_value("lemma1.alpha")?,
                    p,
                );
                let d2 = lemma2_tail_cap(self.chain_value("epsilon")?, p);
                Ok(d1.min(d2))
            }
            Statement::Theorem => {
                let d1 = lemma1_delta_from(
                    self.chain_value("lemma2.lemma1.epsilon_prime")?,
                    self.chain_value("lemma2.lemma1.alpha")?,
                    p,
                );
                let d2 = lemma2_tail_cap(self.chain_value("lemma2.epsilon")?, p);
                Ok(d1.min(d2))
            }
        }
    }
}

// δ = ε'^p / (p α)
fn lemma1_delta_from(epsilon_prime: f64, alpha: f64, p: f64) -> f64 {
    epsilon_prime.powf(p) / (p * alpha)
}

// δ2 with 1 - (1-δ2)^p = ε^p/2, or no constraint once ε^p/2 >= 1
fn lemma2_tail_cap(epsilon: f64, p: f64) -> f64 {
    let half = 0.5 * epsilon.powf(p);
    if half < 1.0 {
        1.0 - (1.0 - half).powf(1.0 / p)
    } else {
        1.0
    }
}

fn check_epsilon(epsilon: f64, constraint: &'static str, allow_two: bool) -> Result<()> {
    let ok = epsilon.is_finite()
        && epsilon > 0.0
        && (epsilon < 2.0 || (allow_two && epsilon == 2.0));
    if !ok {
        return Err(Error::OutOfDomain {
            name: "epsilon",
            value: epsilon,
            constraint,
        });
    }
    Ok(())
}

fn check_delta_range(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::OutOfDomain {
            name: "delta",
            value: delta,
            constraint: "delta in (0, 1)",
        });
    }
    Ok(())
}

/// Budget for the probability-space statement: with `ε' = ε·2^{-1/p}`,
/// `δ = ε'^p / (p α(ε'))`, so the guaranteed output bound `2^{1/p} ε'`
/// equals the requested `ε` exactly.
pub fn delta_lemma1(epsilon: f64, e: Exponents, opts: &AlphaOptions) -> Result<ConvexityBudget> {
    check_epsilon(epsilon, "epsilon in (0, 2)", false)?;
    let p = e.p();
    let epsilon_prime = epsilon * 2.0_f64.powf(-1.0 / p);
    let cert = compute_alpha(epsilon_prime, e, opts)?;
    let delta = lemma1_delta_from(epsilon_prime, cert.alpha, p);
    check_delta_range(delta)?;
    Ok(ConvexityBudget {
        statement: Statement::Lemma1,
        epsilon,
        delta,
        exponents: e,
        chain: vec![
            ("p".to_string(), p),
            ("epsilon".to_string(), epsilon),
            ("epsilon_prime".to_string(), epsilon_prime),
            ("alpha".to_string(), cert.alpha),
        ],
    })
}

/// Budget for the general-measure statement: `δ = min(δ1, δ2)` with
/// `δ1` the lemma-1 budget at `ε1 = ε·2^{-1/p}` (so `ε1^p = ε^p/2`) and
/// `δ2` solving `1 - (1-δ2)^p = ε^p/2`. Then the two parts of the split
/// sum below `ε^p`.
pub fn delta_lemma2(epsilon: f64, e: Exponents, opts: &AlphaOptions) -> Result<ConvexityBudget> {
    check_epsilon(epsilon, "epsilon in (0, 2)", false)?;
    let p = e.p();
    let epsilon1 = epsilon * 2.0_f64.powf(-1.0 / p);
    let inner = delta_lemma1(epsilon1, e, opts)?;
    let delta2 = lemma2_tail_cap(epsilon, p);
    let delta = inner.delta.min(delta2);
    check_delta_range(delta)?;
    let mut chain = vec![
        ("p".to_string(), p),
        ("epsilon".to_string(), epsilon),
        ("epsilon1".to_string(), epsilon1),
    ];
    chain.extend(
        inner
            .chain
            .iter()
            .map(|(k, v)| (format!("lemma1.{k}"), *v)),
    );
    chain.push(("delta1".to_string(), inner.delta));
    chain.push(("delta2".to_string(), delta2));
    Ok(ConvexityBudget {
        statement: Statement::Lemma2,
        epsilon,
        delta,
        exponents: e,
        chain,
    })
}

/// Budget for the uniform-convexity statement: `δ = δ_lemma2(ε/2)`, so the
/// conclusion `‖x-y‖_p < 2·(ε/2)` matches the caller's `ε`.
pub fn delta_theorem(epsilon: f64, e: Exponents, opts: &AlphaOptions) -> Result<ConvexityBudget> {
    check_epsilon(epsilon, "epsilon in (0, 2]", true)?;
    let half = epsilon / 2.0;
    let inner = delta_lemma2(half, e, opts)?;
    let mut chain = vec![
        ("p".to_string(), e.p()),
        ("epsilon".to_string(), epsilon),
        ("half_epsilon".to_string(), half),
    ];
    chain.extend(
        inner
            .chain
            .iter()
            .map(|(k, v)| (format!("lemma2.{k}"), *v)),
    );
    Ok(ConvexityBudget {
        statement: Statement::Theorem,
        epsilon,
        delta: inner.delta,
        exponents: e,
        chain,
    })
}

/// Dispatch on the statement enum.
pub fn delta_for(
    statement: Statement,
    epsilon: f64,
    e: Exponents,
    opts: &AlphaOptions,
) -> Result<ConvexityBudget> {
    match statement {
        Statement::Lemma1 => delta_lemma1(epsilon, e, opts),
        Statement::Lemma2 => delta_lemma2(epsilon, e, opts),
        Statement::Theorem => delta_theorem(epsilon, e, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::comparison_ratio;

    fn small_opts(safety: f64) -> AlphaOptions {
        AlphaOptions {
            grid_resolution: 256,
            refine_steps: 64,
            safety_factor: safety,
        }
    }

    #[test]
    fn p2_ratio_is_identically_one() {
        let e = Exponents::new(2.0).unwrap();
        for eps in [0.01, 0.1, 0.5, 1.0, 1.9] {
            let cert = compute_alpha(eps, e, &small_opts(1.0)).unwrap();
            assert!(
                (cert.alpha - 1.0).abs() <= 1e-9,
                "eps = {eps}: alpha = {}",
                cert.alpha
            );
        }
    }

    #[test]
    fn p2_with_default_safety() {
        let e = Exponents::new(2.0).unwrap();
        let cert = compute_alpha(0.5, e, &small_opts(1.05)).unwrap();
        assert!((cert.alpha - 1.05).abs() <= 1e-9);
    }

    #[test]
    fn certificate_invariants() {
        let e = Exponents::new(3.0).unwrap();
        let cert = compute_alpha(0.5, e, &small_opts(1.05)).unwrap();
        assert!(cert.alpha >= 1.0);
        let at_argmax = comparison_ratio(cert.argmax_point, e).unwrap();
        assert!(cert.alpha >= at_argmax);
        assert!((cert.argmax_point - num_complex::Complex64::new(1.0, 0.0)).norm() >= cert.epsilon * (1.0 - 1e-12));
        assert!(cert.tail_max_ratio <= cert.alpha / cert.safety_factor + 1e-12);
    }

    #[test]
    fn alpha_rejects_bad_inputs() {
        let e = Exponents::new(2.0).unwrap();
        assert!(compute_alpha(0.0, e, &small_opts(1.0)).is_err());
        assert!(compute_alpha(-1.0, e, &small_opts(1.0)).is_err());
        assert!(compute_alpha(4.5, e, &small_opts(1.0)).is_err());
        assert!(compute_alpha(0.5, e, &small_opts(0.9)).is_err());
    }

    #[test]
    fn alpha_monotone_in_epsilon() {
        let e = Exponents::new(1.5).unwrap();
        let a1 = compute_alpha(0.5, e, &small_opts(1.05)).unwrap().alpha;
        let a2 = compute_alpha(2.0, e, &small_opts(1.05)).unwrap().alpha;
        assert!(a2 <= a1 + 1e-9);
    }

    #[test]
    fn lemma1_p2_closed_chain() {
        let e = Exponents::new(2.0).unwrap();
        // safety 1.05: delta = (0.1/sqrt(2))^2 / (2 * 1.05)
        let b = delta_lemma1(0.1, e, &small_opts(1.05)).unwrap();
        assert!((b.delta - 0.002380952380952381).abs() < 1e-9);
        // safety 1: delta = eps^2/4
        let b1 = delta_lemma1(0.1, e, &small_opts(1.0)).unwrap();
        assert!((b1.delta - 0.0025).abs() < 1e-12);
        assert!(b1.delta <= 0.1_f64.powi(2) / 4.0 * (1.0 + 1e-9));
    }

    #[test]
    fn lemma1_delta_monotone_to_zero() {
        let e = Exponents::new(3.0).unwrap();
        let opts = small_opts(1.05);
        let mut last = f64::INFINITY;
        for eps in [1.0, 0.5, 0.25, 0.125, 0.0625] {
            let d = delta_lemma1(eps, e, &opts).unwrap().delta;
            assert!(d > 0.0 && d < last);
            last = d;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn lemma2_composed_chain_p2() {
        let e = Exponents::new(2.0).unwrap();
        let opts = small_opts(1.05);
        let b = delta_lemma2(0.1, e, &opts).unwrap();
        let eps1 = 0.1 * 2.0_f64.powf(-0.5);
        let d1 = delta_lemma1(eps1, e, &opts).unwrap().delta;
        let d2 = 1.0 - (1.0 - 0.005_f64).sqrt();
        assert!((b.delta - d1.min(d2)).abs() < 1e-15);
    }

    #[test]
    fn lemma2_extreme_epsilon_still_in_range() {
        let e = Exponents::new(2.0).unwrap();
        let b = delta_lemma2(2.0 - 1e-6, e, &small_opts(1.05)).unwrap();
        assert!(b.delta > 0.0 && b.delta < 1.0);
    }

    #[test]
    fn theorem_is_lemma2_at_half() {
        let e = Exponents::new(2.0).unwrap();
        let opts = small_opts(1.05);
        let t = delta_theorem(0.2, e, &opts).unwrap();
        let l2 = delta_lemma2(0.1, e, &opts).unwrap();
        assert_eq!(t.delta.to_bits(), l2.delta.to_bits());
        // epsilon = 2 still emits a budget
        let t2 = delta_theorem(2.0, e, &opts).unwrap();
        assert!(t2.delta > 0.0 && t2.delta < 1.0);
    }

    #[test]
    fn chain_replay_is_bit_exact() {
        let opts = small_opts(1.05);
        for p in [1.5, 2.0, 3.0] {
            let e = Exponents::new(p).unwrap();
            for eps in [0.1, 0.5, 1.0] {
                for statement in [Statement::Lemma1, Statement::Lemma2, Statement::Theorem] {
                    let b = delta_for(statement, eps, e, &opts).unwrap();
                    let replayed = b.replay_delta().unwrap();
                    assert_eq!(
                        replayed.to_bits(),
                        b.delta.to_bits(),
                        "statement {statement:?}, p = {p}, eps = {eps}"
                    );
                }
            }
        }
    }

    #[test]
    fn budgets_reject_out_of_range_epsilon() {
        let e = Exponents::new(2.0).unwrap();
        let opts = small_opts(1.05);
        assert!(delta_lemma1(0.0, e, &opts).is_err());
        assert!(delta_lemma1(2.0, e, &opts).is_err());
        assert!(delta_lemma2(-0.5, e, &opts).is_err());
        assert!(delta_theorem(2.5, e, &opts).is_err());
        assert!(delta_theorem(2.0, e, &opts).is_ok());
    }
}
