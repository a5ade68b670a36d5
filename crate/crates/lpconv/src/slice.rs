//! Slices of the unit ball, instance verification of the two lemmas and the
//! theorem against computed budgets, adversarial budget checks, and the
//! numerical slice-diameter and modulus-of-convexity estimators.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::alpha::{ConvexityBudget, Statement};
use crate::error::{Error, Result};
use crate::measure::{
    lp_norm, lp_norm_pow_with, norming_witness, norming_witness_dual, pairing, LpFunction,
    MeasureSpace, TOL_NORMALIZED,
};
use crate::scalar::Exponents;
use crate::search::{maximize, standard_complex, standard_normal, substream, Evaluation,
    SearchOptions, SearchProblem};

/// A δ-slice of the unit ball: the set of x with `‖x‖_p <= 1` and
/// `Re φ(x) > 1 - δ`, for a norm-one functional φ in L^q.
#[derive(Debug, Clone)]
pub struct SliceSpec {
    functional: LpFunction,
    delta: f64,
    exponents: Exponents,
}

impl SliceSpec {
    pub fn new(functional: LpFunction, delta: f64, exponents: Exponents) -> Result<Self> {
        let norm = lp_norm_pow_with(&functional, exponents.q()).powf(1.0 / exponents.q());
        if (norm - 1.0).abs() > TOL_NORMALIZED {
            return Err(Error::NotNormalized {
                name: "functional",
                norm,
                tol: TOL_NORMALIZED,
            });
        }
        if !(delta > 0.0 && delta <= 2.0) {
            return Err(Error::OutOfDomain {
                name: "delta",
                value: delta,
                constraint: "delta in (0, 2]",
            });
        }
        Ok(SliceSpec {
            functional,
            delta,
            exponents,
        })
    }

    pub fn functional(&self) -> &LpFunction {
        &self.functional
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn exponents(&self) -> Exponents {
        self.exponents
    }
}

/// Membership in the slice: `‖x‖_p <= 1 + 1e-12` and `Re φ(x) > 1 - δ`.
pub fn slice_contains(s: &SliceSpec, x: &LpFunction) -> Result<bool> {
    if !x.same_space(&s.functional) {
        return Err(Error::SpaceMismatch);
    }
    Ok(lp_norm(x, s.exponents) <= 1.0 + 1e-12 && pairing(x, &s.functional)?.re > 1.0 - s.delta)
}

/// The conversion trick from uniform convexity to thin slices: when
/// `Re φ(x+y) > 2 - δ` for ball vectors x, y, then
/// `Re φ(x) = Re φ(x+y) - Re φ(y) > 1 - δ` and likewise for y, so both lie
/// in the slice. Returns the two membership flags (both false when the
/// midpoint hypothesis is not triggered).
pub fn split_trick(x: &LpFunction, y: &LpFunction, s: &SliceSpec) -> Result<(bool, bool)> {
    let total = pairing(&x.add(y)?, &s.functional)?.re;
    if total > 2.0 - s.delta {
        Ok((slice_contains(s, x)?, slice_contains(s, y)?))
    } else {
        Ok((false, false))
    }
}

/// One named intermediate quantity with the bound the proof gives it.
#[derive(Debug, Clone, Serialize)]
pub struct IntermediateBound {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Outcome of one instance check or one adversarial search.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub budget: ConvexityBudget,
    pub instance_summary: String,
    pub measured_quantity: f64,
    pub bound: f64,
    pub margin: f64,
    pub passed: bool,
    pub intermediates: Vec<IntermediateBound>,
    pub witness: Option<serde_json::Value>,
    pub evaluations: u64,
    pub seed: u64,
}

/// An instance either gets checked against the bound, or it sits outside the
/// hypothesis set and is reported as not applicable — never a pass/fail.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InstanceOutcome {
    Checked(VerificationReport),
    NotApplicable { statement: Statement, reason: String },
}

impl InstanceOutcome {
    pub fn report(&self) -> Option<&VerificationReport> {
        match self {
            InstanceOutcome::Checked(r) => Some(r),
            InstanceOutcome::NotApplicable { .. } => None,
        }
    }
}

fn require_statement(budget: &ConvexityBudget, expected: Statement) -> Result<()> {
    if budget.statement != expected {
        return Err(Error::BudgetStatementMismatch {
            expected: expected.as_str(),
            got: budget.statement.as_str(),
        });
    }
    Ok(())
}

fn check_bound_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::OutOfDomain {
            name: "epsilon",
            value: epsilon,
            constraint: "epsilon > 0",
        });
    }
    Ok(())
}

fn report(
    statement: Statement,
    budget: &ConvexityBudget,
    summary: String,
    measured: f64,
    bound: f64,
    intermediates: Vec<IntermediateBound>,
    witness: serde_json::Value,
) -> VerificationReport {
    let margin = bound - measured;
    VerificationReport {
        statement,
        budget: budget.clone(),
        instance_summary: summary,
        measured_quantity: measured,
        bound,
        margin,
        passed: margin > 0.0,
        intermediates,
        witness: Some(witness),
        evaluations: 1,
        seed: 0,
    }
}

/// Check one probability-space instance: `‖z‖_p <= 1` and
/// `Re ∫ z dν > 1 - δ` must force `‖z - 1‖_p < ε`.
pub fn verify_lemma1_instance(
    z: &LpFunction,
    epsilon: f64,
    budget: &ConvexityBudget,
) -> Result<InstanceOutcome> {
    require_statement(budget, Statement::Lemma1)?;
    check_bound_epsilon(epsilon)?;
    let e = budget.exponents;
    let statement = Statement::Lemma1;
    let mass = z.space().total_mass();
    if (mass - 1.0).abs() > TOL_NORMALIZED {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!("space is not a probability space (total mass {mass})"),
        });
    }
    let norm = lp_norm(z, e);
    if norm > 1.0 + TOL_NORMALIZED {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!("‖z‖_p = {norm} exceeds 1"),
        });
    }
    let mean: Complex64 = z
        .space()
        .weights()
        .iter()
        .zip(z.values())
        .map(|(&w, &v)| w * v)
        .sum();
    if mean.re <= 1.0 - budget.delta {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!(
                "Re ∫z dν = {} does not exceed 1 - δ = {}",
                mean.re,
                1.0 - budget.delta
            ),
        });
    }
    let one = LpFunction::constant(z.space().clone(), Complex64::new(1.0, 0.0));
    let measured = lp_norm(&z.sub(&one)?, e);
    Ok(InstanceOutcome::Checked(report(
        statement,
        budget,
        format!("single instance on {} atoms", z.space().atoms()),
        measured,
        epsilon,
        Vec::new(),
        serde_json::to_value(z).expect("serializable function"),
    )))
}

// The two integrals the proof bounds separately, computed on the
// phase-reduced triple: ∫_{v>0} |u - v|^p dμ and ∫_{v=0} |u - zv|^p dμ
// (the latter is ∫_{v=0} |u|^p dμ since zv vanishes there).
fn lemma2_split(
    u: &LpFunction,
    w: &LpFunction,
    e: Exponents,
) -> Result<(f64, f64, LpFunction)> {
    let v = norming_witness_dual(w, e)?;
    let (u2, v2, _w2) = crate::measure::phase_reduction(u, &v, w)?;
    let p = e.p();
    let mut supported = 0.0;
    let mut unsupported = 0.0;
    for ((&wt, &ui), &vi) in u2
        .space()
        .weights()
        .iter()
        .zip(u2.values())
        .zip(v2.values())
    {
        if vi.re > 0.0 {
            supported += wt * (ui - vi).norm().powf(p);
        } else {
            unsupported += wt * ui.norm().powf(p);
        }
    }
    Ok((supported, unsupported, v))
}

/// Check one general-measure instance. `v` is reconstructed from `w` (the
/// unique function with `vw = |v|^p = |w|^q`); accepting a caller's `v`
/// would invite inconsistent instances.
pub fn verify_lemma2_instance(
    u: &LpFunction,
    w: &LpFunction,
    epsilon: f64,
    budget: &ConvexityBudget,
) -> Result<InstanceOutcome> {
    require_statement(budget, Statement::Lemma2)?;
    check_bound_epsilon(epsilon)?;
    if !u.same_space(w) {
        return Err(Error::SpaceMismatch);
    }
    let e = budget.exponents;
    let statement = Statement::Lemma2;
    let norm_u = lp_norm(u, e);
    if norm_u > 1.0 + TOL_NORMALIZED {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!("‖u‖_p = {norm_u} exceeds 1"),
        });
    }
    let norm_w = lp_norm_pow_with(w, e.q()).powf(1.0 / e.q());
    if (norm_w - 1.0).abs() > TOL_NORMALIZED {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!("‖w‖_q = {norm_w} is not 1"),
        });
    }
    let re_pair = pairing(u, w)?.re;
    if re_pair <= 1.0 - budget.delta {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!(
                "Re ∫uw dμ = {re_pair} does not exceed 1 - δ = {}",
                1.0 - budget.delta
            ),
        });
    }

    let (supported, unsupported, _v) = lemma2_split(u, w, e)?;
    let p = e.p();
    let measured = (supported + unsupported).powf(1.0 / p);
    let epsilon1 = budget.chain_value("epsilon1")?;
    let bound1 = epsilon1.powf(p);
    let bound2 = 1.0 - (1.0 - budget.delta).powf(p);
    let intermediates = vec![
        IntermediateBound {
            name: "integral_v_supported".to_string(),
            value: supported,
            bound: bound1,
            margin: bound1 - supported,
        },
        IntermediateBound {
            name: "integral_v_zero".to_string(),
            value: unsupported,
            bound: bound2,
            margin: bound2 - unsupported,
        },
    ];
    let witness = json!({
        "weights": u.space().weights(),
        "u": u.values().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
        "w": w.values().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
    });
    Ok(InstanceOutcome::Checked(report(
        statement,
        budget,
        format!("single instance on {} atoms", u.space().atoms()),
        measured,
        epsilon,
        intermediates,
        witness,
    )))
}

/// Check one midpoint instance: unit x, y with `‖x+y‖_p > 2 - δ` must force
/// `‖x - y‖_p < ε`. Constructs `v = (x+y)/‖x+y‖_p` and its norming witness
/// exactly as the proof does.
pub fn verify_theorem_instance(
    x: &LpFunction,
    y: &LpFunction,
    epsilon: f64,
    budget: &ConvexityBudget,
) -> Result<InstanceOutcome> {
    require_statement(budget, Statement::Theorem)?;
    check_bound_epsilon(epsilon)?;
    if !x.same_space(y) {
        return Err(Error::SpaceMismatch);
    }
    let e = budget.exponents;
    let statement = Statement::Theorem;
    for (name, f) in [("x", x), ("y", y)] {
        let norm = lp_norm(f, e);
        if (norm - 1.0).abs() > TOL_NORMALIZED {
            return Ok(InstanceOutcome::NotApplicable {
                statement,
                reason: format!("‖{name}‖_p = {norm} is not 1"),
            });
        }
    }
    let sum = x.add(y)?;
    let norm_sum = lp_norm(&sum, e);
    if norm_sum <= 2.0 - budget.delta {
        return Ok(InstanceOutcome::NotApplicable {
            statement,
            reason: format!(
                "‖x+y‖_p = {norm_sum} does not exceed 2 - δ = {}",
                2.0 - budget.delta
            ),
        });
    }
    let v = sum.scale(1.0 / norm_sum);
    let _w = norming_witness(&v, e)?;
    let measured = lp_norm(&x.sub(y)?, e);
    let witness = json!({
        "weights": x.space().weights(),
        "x": x.values().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
        "y": y.values().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
    });
    Ok(InstanceOutcome::Checked(report(
        statement,
        budget,
        format!("single instance on {} atoms", x.space().atoms()),
        measured,
        epsilon,
        Vec::new(),
        witness,
    )))
}

// ---------------------------------------------------------------------------
// Raw-array helpers for the adversarial search problems. The optimizer works
// on flat f64 vectors; these avoid building LpFunction values in the hot
// loop. Weight parameters map through s_i^2 + 1e-9 and normalize to mass 1.
// ---------------------------------------------------------------------------

fn weights_from_params(s: &[f64]) -> Vec<f64> {
    let mut w: Vec<f64> = s.iter().map(|&si| si * si + 1e-9).collect();
    let total: f64 = w.iter().sum();
    for wi in &mut w {
        *wi /= total;
    }
    w
}

fn norm_pow_raw(w: &[f64], re: &[f64], im: &[f64], p: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..w.len() {
        acc += w[i] * (re[i] * re[i] + im[i] * im[i]).powf(0.5 * p);
    }
    acc
}

fn pairing_re_raw(w: &[f64], are: &[f64], aim: &[f64], bre: &[f64], bim: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..w.len() {
        acc += w[i] * (are[i] * bre[i] - aim[i] * bim[i]);
    }
    acc
}

fn scale_range(x: &mut [f64], factor: f64) {
    for v in x {
        *v *= factor;
    }
}

// Search a feasibility boundary: doubles t while feasible, then bisects.
// Always returns a feasible t (0 must be feasible by construction).
fn boundary_t(mut feasible: impl FnMut(f64) -> bool) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = 0.5_f64;
    let mut doublings = 0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings >= 40 {
            return lo;
        }
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

// Hypothesis feasibility is checked STRICTLY (not at tolerance) for the
// three statement problems: the derivations need the strict inequality, and
// a witness is only a witness if it actually satisfies the hypothesis.

struct Lemma1Problem {
    n: usize,
    p: f64,
    delta: f64,
}

impl Lemma1Problem {
    // layout: [s | Re z | Im z]
    fn parts<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
        let n = self.n;
        (&x[..n], &x[n..2 * n], &x[2 * n..3 * n])
    }
}

impl SearchProblem for Lemma1Problem {
    fn dimension(&self) -> usize {
        3 * self.n
    }

    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.n;
        let weights = random_weight_params(n, rng);
        let g: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let w = weights_from_params(&weights);
        // push z = 1 + t g to the hypothesis boundary, staying feasible
        let feasible = |t: f64| {
            let mut re: Vec<f64> = g.iter().map(|c| 1.0 + t * c.re).collect();
            let mut im: Vec<f64> = g.iter().map(|c| t * c.im).collect();
            let norm = norm_pow_raw(&w, &re, &im, self.p).powf(1.0 / self.p);
            if norm > 1.0 {
                scale_range(&mut re, 1.0 / norm);
                scale_range(&mut im, 1.0 / norm);
            }
            let mean: f64 = w.iter().zip(&re).map(|(&wi, &ri)| wi * ri).sum();
            mean > 1.0 - self.delta
        };
        let t = boundary_t(feasible);
        let mut x = weights;
        x.extend(g.iter().map(|c| 1.0 + t * c.re));
        x.extend(g.iter().map(|c| t * c.im));
        x
    }

    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
        let n = self.n;
        let w = weights_from_params(&x[..n]);
        let p = self.p;
        let norm = {
            let (_, re, im) = self.parts(x);
            norm_pow_raw(&w, re, im, p).powf(1.0 / p)
        };
        if norm > 1.0 {
            scale_range(&mut x[n..3 * n], 1.0 / norm);
        }
        let (_, re, im) = self.parts(x);
        let mut mean = 0.0;
        let mut dist_pow = 0.0;
        let mut norm_pow = 0.0;
        for i in 0..n {
            mean += w[i] * re[i];
            let d = re[i] - 1.0;
            dist_pow += w[i] * (d * d + im[i] * im[i]).powf(0.5 * p);
            norm_pow += w[i] * (re[i] * re[i] + im[i] * im[i]).powf(0.5 * p);
        }
        let threshold = 1.0 - self.delta;
        Evaluation {
            objective: dist_pow.powf(1.0 / p),
            violation: (threshold - mean).max(0.0),
            feasible: mean > threshold && norm_pow.powf(1.0 / p) <= 1.0 + TOL_NORMALIZED,
        }
    }
}

fn random_weight_params(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut raw: Vec<f64> = (0..n)
        .map(|_| (-(1.0 - rng.gen_f64()).ln()).max(1e-12))
        .collect();
    let total: f64 = raw.iter().sum();
    for r in &mut raw {
        *r = (*r / total).sqrt();
    }
    raw
}

// thin shim so this module does not need the rand trait in scope everywhere
trait GenF64 {
    fn gen_f64(&mut self) -> f64;
}

impl GenF64 for ChaCha8Rng {
    fn gen_f64(&mut self) -> f64 {
        rand::Rng::gen(self)
    }
}

struct Lemma2Problem {
    n: usize,
    p: f64,
    q: f64,
    delta: f64,
}

impl Lemma2Problem {
    // layout: [s | Re u | Im u | Re w | Im w]
    fn witness_values_raw(&self, wre: &[f64], wim: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut vre = vec![0.0; n];
        let mut vim = vec![0.0; n];
        for i in 0..n {
            let m = (wre[i] * wre[i] + wim[i] * wim[i]).sqrt();
            if m > 0.0 {
                let mag = m.powf(self.q - 1.0);
                vre[i] = mag * (wre[i] / m);
                vim[i] = mag * (-wim[i] / m);
            }
        }
        (vre, vim)
    }
}

impl SearchProblem for Lemma2Problem {
    fn dimension(&self) -> usize {
        5 * self.n
    }

    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.n;
        let sparams = random_weight_params(n, rng);
        let w = weights_from_params(&sparams);
        let mut wre: Vec<f64> = Vec::with_capacity(n);
        let mut wim: Vec<f64> = Vec::with_capacity(n);
        for _ in 0..n {
            let c = standard_complex(rng);
            wre.push(c.re);
            wim.push(c.im);
        }
        let wq = norm_pow_raw(&w, &wre, &wim, self.q).powf(1.0 / self.q);
        scale_range(&mut wre, 1.0 / wq);
        scale_range(&mut wim, 1.0 / wq);
        let (vre, vim) = self.witness_values_raw(&wre, &wim);
        let g: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let feasible = |t: f64| {
            let mut ure: Vec<f64> = (0..n).map(|i| vre[i] + t * g[i].re).collect();
            let mut uim: Vec<f64> = (0..n).map(|i| vim[i] + t * g[i].im).collect();
            let norm = norm_pow_raw(&w, &ure, &uim, self.p).powf(1.0 / self.p);
            if norm > 1.0 {
                scale_range(&mut ure, 1.0 / norm);
                scale_range(&mut uim, 1.0 / norm);
            }
            pairing_re_raw(&w, &ure, &uim, &wre, &wim) > 1.0 - self.delta
        };
        let t = boundary_t(feasible);
        let mut x = sparams;
        x.extend((0..n).map(|i| vre[i] + t * g[i].re));
        x.extend((0..n).map(|i| vim[i] + t * g[i].im));
        x.extend(wre);
        x.extend(wim);
        x
    }

    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
        let n = self.n;
        let p = self.p;
        let q = self.q;
        let w = weights_from_params(&x[..n]);

        // project w to the unit q-sphere (reset to a constant if degenerate)
        let wq = {
            let wre = &x[3 * n..4 * n];
            let wim = &x[4 * n..5 * n];
            norm_pow_raw(&w, wre, wim, q).powf(1.0 / q)
        };
        if wq > 0.0 && wq.is_finite() {
            scale_range(&mut x[3 * n..5 * n], 1.0 / wq);
        } else {
            for i in 3 * n..4 * n {
                x[i] = 1.0;
            }
            for i in 4 * n..5 * n {
                x[i] = 0.0;
            }
            let reset = norm_pow_raw(&w, &x[3 * n..4 * n], &x[4 * n..5 * n], q).powf(1.0 / q);
            scale_range(&mut x[3 * n..5 * n], 1.0 / reset);
        }
        // project u to the unit ball
        let up = norm_pow_raw(&w, &x[n..2 * n], &x[2 * n..3 * n], p).powf(1.0 / p);
        if up > 1.0 {
            scale_range(&mut x[n..3 * n], 1.0 / up);
        }

        let (ure, uim) = (&x[n..2 * n], &x[2 * n..3 * n]);
        let (wre, wim) = (&x[3 * n..4 * n], &x[4 * n..5 * n]);
        let (vre, vim) = self.witness_values_raw(wre, wim);
        let mut dist_pow = 0.0;
        for i in 0..n {
            let dr = ure[i] - vre[i];
            let di = uim[i] - vim[i];
            dist_pow += w[i] * (dr * dr + di * di).powf(0.5 * p);
        }
        let re_pair = pairing_re_raw(&w, ure, uim, wre, wim);
        let threshold = 1.0 - self.delta;
        let norm_u = norm_pow_raw(&w, ure, uim, p).powf(1.0 / p);
        Evaluation {
            objective: dist_pow.powf(1.0 / p),
            violation: (threshold - re_pair).max(0.0),
            feasible: re_pair > threshold && norm_u <= 1.0 + TOL_NORMALIZED,
        }
    }
}

struct TheoremProblem {
    n: usize,
    p: f64,
    delta: f64,
}

impl SearchProblem for TheoremProblem {
    fn dimension(&self) -> usize {
        5 * self.n
    }

    // layout: [s | Re x | Im x | Re y | Im y]
    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.n;
        let sparams = random_weight_params(n, rng);
        let w = weights_from_params(&sparams);
        let z: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let a: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let b: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let sphere = |vals: Vec<(f64, f64)>| -> (Vec<f64>, Vec<f64>) {
            let re: Vec<f64> = vals.iter().map(|v| v.0).collect();
            let im: Vec<f64> = vals.iter().map(|v| v.1).collect();
            let norm = norm_pow_raw(&w, &re, &im, self.p).powf(1.0 / self.p);
            (
                re.iter().map(|r| r / norm).collect(),
                im.iter().map(|r| r / norm).collect(),
            )
        };
        let feasible = |t: f64| {
            let (xre, xim) = sphere((0..n).map(|i| (z[i].re + t * a[i].re, z[i].im + t * a[i].im)).collect());
            let (yre, yim) = sphere((0..n).map(|i| (z[i].re + t * b[i].re, z[i].im + t * b[i].im)).collect());
            let sre: Vec<f64> = (0..n).map(|i| xre[i] + yre[i]).collect();
            let sim: Vec<f64> = (0..n).map(|i| xim[i] + yim[i]).collect();
            norm_pow_raw(&w, &sre, &sim, self.p).powf(1.0 / self.p) > 2.0 - self.delta
        };
        let t = boundary_t(feasible);
        let (xre, xim) = sphere((0..n).map(|i| (z[i].re + t * a[i].re, z[i].im + t * a[i].im)).collect());
        let (yre, yim) = sphere((0..n).map(|i| (z[i].re + t * b[i].re, z[i].im + t * b[i].im)).collect());
        let mut x = sparams;
        x.extend(xre);
        x.extend(xim);
        x.extend(yre);
        x.extend(yim);
        x
    }

    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
        let n = self.n;
        let p = self.p;
        let w = weights_from_params(&x[..n]);
        // both vectors live on the unit sphere; degenerate inputs reset to a
        // normalized constant
        for offset in [n, 3 * n] {
            let norm = norm_pow_raw(&w, &x[offset..offset + n], &x[offset + n..offset + 2 * n], p)
                .powf(1.0 / p);
            if norm > 0.0 && norm.is_finite() {
                scale_range(&mut x[offset..offset + 2 * n], 1.0 / norm);
            } else {
                for i in offset..offset + n {
                    x[i] = 1.0;
                }
                for i in offset + n..offset + 2 * n {
                    x[i] = 0.0;
                }
                let reset =
                    norm_pow_raw(&w, &x[offset..offset + n], &x[offset + n..offset + 2 * n], p)
                        .powf(1.0 / p);
                scale_range(&mut x[offset..offset + 2 * n], 1.0 / reset);
            }
        }
        let (xre, xim) = (&x[n..2 * n], &x[2 * n..3 * n]);
        let (yre, yim) = (&x[3 * n..4 * n], &x[4 * n..5 * n]);
        let mut sum_pow = 0.0;
        let mut diff_pow = 0.0;
        for i in 0..n {
            let sr = xre[i] + yre[i];
            let si = xim[i] + yim[i];
            sum_pow += w[i] * (sr * sr + si * si).powf(0.5 * p);
            let dr = xre[i] - yre[i];
            let di = xim[i] - yim[i];
            diff_pow += w[i] * (dr * dr + di * di).powf(0.5 * p);
        }
        let norm_sum = sum_pow.powf(1.0 / p);
        let threshold = 2.0 - self.delta;
        Evaluation {
            objective: diff_pow.powf(1.0 / p),
            violation: (threshold - norm_sum).max(0.0),
            feasible: norm_sum > threshold,
        }
    }
}

fn decode_function(
    weights: &[f64],
    re: &[f64],
    im: &[f64],
) -> Result<LpFunction> {
    let space = MeasureSpace::new(weights.to_vec())?;
    let values = re
        .iter()
        .zip(im)
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    LpFunction::new(space, values)
}

/// Adversarially search the hypothesis set of the budget's statement for the
/// largest measured quantity, on spaces with `n` atoms. The returned report
/// carries the worst witness found; its margin must stay positive for the
/// budget to be sound.
pub fn adversarial_verify(
    n: usize,
    budget: &ConvexityBudget,
    opts: &SearchOptions,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::BadAtomCount {
            got: 0,
            max: crate::measure::MAX_ATOMS,
        });
    }
    let e = budget.exponents;
    let epsilon = budget.epsilon;
    let summary = format!(
        "adversarial search over {}-atom instances (restarts = {}, per-restart budget = {})",
        n, opts.restarts, opts.max_evaluations
    );
    let outcome = match budget.statement {
        Statement::Lemma1 => {
            let problem = Lemma1Problem {
                n,
                p: e.p(),
                delta: budget.delta,
            };
            let out = maximize(&problem, opts)?;
            let w = weights_from_params(&out.point[..n]);
            let z = decode_function(&w, &out.point[n..2 * n], &out.point[2 * n..3 * n])?;
            (verify_lemma1_instance(&z, epsilon, budget)?, out.evaluations)
        }
        Statement::Lemma2 => {
            let problem = Lemma2Problem {
                n,
                p: e.p(),
                q: e.q(),
                delta: budget.delta,
            };
            let out = maximize(&problem, opts)?;
            let w = weights_from_params(&out.point[..n]);
            let u = decode_function(&w, &out.point[n..2 * n], &out.point[2 * n..3 * n])?;
            let witness = decode_function(&w, &out.point[3 * n..4 * n], &out.point[4 * n..5 * n])?;
            (
                verify_lemma2_instance(&u, &witness, epsilon, budget)?,
                out.evaluations,
            )
        }
        Statement::Theorem => {
            let problem = TheoremProblem {
                n,
                p: e.p(),
                delta: budget.delta,
            };
            let out = maximize(&problem, opts)?;
            let w = weights_from_params(&out.point[..n]);
            let x = decode_function(&w, &out.point[n..2 * n], &out.point[2 * n..3 * n])?;
            let y = decode_function(&w, &out.point[3 * n..4 * n], &out.point[4 * n..5 * n])?;
            (
                verify_theorem_instance(&x, &y, epsilon, budget)?,
                out.evaluations,
            )
        }
    };
    match outcome {
        (InstanceOutcome::Checked(mut r), evaluations) => {
            r.instance_summary = summary;
            r.evaluations = evaluations;
            r.seed = opts.seed;
            Ok(r)
        }
        (InstanceOutcome::NotApplicable { reason, .. }, _) => Err(Error::AtomPrecondition {
            index: 0,
            detail: format!("adversarial witness left the hypothesis set: {reason}"),
        }),
    }
}

/// Re-check a serialized witness document against a budget.
pub fn replay_instance(
    witness: &serde_json::Value,
    epsilon: f64,
    budget: &ConvexityBudget,
) -> Result<InstanceOutcome> {
    fn complex_field(doc: &serde_json::Value, key: &str) -> Result<(Vec<f64>, Vec<f64>)> {
        let arr = doc
            .get(key)
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::WitnessFormat(format!("missing complex array '{key}'")))?;
        let mut re = Vec::with_capacity(arr.len());
        let mut im = Vec::with_capacity(arr.len());
        for entry in arr {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::WitnessFormat(format!("'{key}' entries must be [re, im]")))?;
            re.push(pair[0].as_f64().ok_or_else(|| {
                Error::WitnessFormat(format!("'{key}' entries must be numeric"))
            })?);
            im.push(pair[1].as_f64().ok_or_else(|| {
                Error::WitnessFormat(format!("'{key}' entries must be numeric"))
            })?);
        }
        Ok((re, im))
    }
    let weights: Vec<f64> = witness
        .get("weights")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::WitnessFormat("missing 'weights' array".to_string()))?
        .iter()
        .map(|v| {
            v.as_f64()
                .ok_or_else(|| Error::WitnessFormat("weights must be numeric".to_string()))
        })
        .collect::<Result<_>>()?;
    match budget.statement {
        Statement::Lemma1 => {
            let (re, im) = complex_field(witness, "values")?;
            let z = decode_function(&weights, &re, &im)?;
            verify_lemma1_instance(&z, epsilon, budget)
        }
        Statement::Lemma2 => {
            let (ure, uim) = complex_field(witness, "u")?;
            let (wre, wim) = complex_field(witness, "w")?;
            let u = decode_function(&weights, &ure, &uim)?;
            let w = decode_function(&weights, &wre, &wim)?;
            verify_lemma2_instance(&u, &w, epsilon, budget)
        }
        Statement::Theorem => {
            let (xre, xim) = complex_field(witness, "x")?;
            let (yre, yim) = complex_field(witness, "y")?;
            let x = decode_function(&weights, &xre, &xim)?;
            let y = decode_function(&weights, &yre, &yim)?;
            verify_theorem_instance(&x, &y, epsilon, budget)
        }
    }
}

// ---------------------------------------------------------------------------
// Slice diameter and modulus of convexity
// ---------------------------------------------------------------------------

/// Best slice diameter found by multi-start search — a LOWER bound on the
/// true diameter.
#[derive(Debug, Clone, Serialize)]
pub struct DiameterEstimate {
    pub diameter: f64,
    pub empty: bool,
    pub evaluations: u64,
    pub seed: u64,
}

struct DiameterProblem {
    weights: Vec<f64>,
    phi_re: Vec<f64>,
    phi_im: Vec<f64>,
    anchor_re: Vec<f64>,
    anchor_im: Vec<f64>,
    p: f64,
    delta: f64,
}

impl DiameterProblem {
    fn n(&self) -> usize {
        self.weights.len()
    }
}

impl SearchProblem for DiameterProblem {
    fn dimension(&self) -> usize {
        4 * self.n()
    }

    // layout: [Re x | Im x | Re y | Im y] on the functional's fixed space
    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.n();
        let mut point = Vec::with_capacity(4 * n);
        for _ in 0..2 {
            let g: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
            // pull a random direction toward the anchor until inside the slice
            let feasible = |t: f64| {
                let mut re: Vec<f64> = (0..n).map(|i| self.anchor_re[i] + t * g[i].re).collect();
                let mut im: Vec<f64> = (0..n).map(|i| self.anchor_im[i] + t * g[i].im).collect();
                let norm = norm_pow_raw(&self.weights, &re, &im, self.p).powf(1.0 / self.p);
                if norm > 1.0 {
                    scale_range(&mut re, 1.0 / norm);
                    scale_range(&mut im, 1.0 / norm);
                }
                pairing_re_raw(&self.weights, &re, &im, &self.phi_re, &self.phi_im)
                    > 1.0 - self.delta
            };
            let t = boundary_t(feasible);
            let mut re: Vec<f64> = (0..n).map(|i| self.anchor_re[i] + t * g[i].re).collect();
            let mut im: Vec<f64> = (0..n).map(|i| self.anchor_im[i] + t * g[i].im).collect();
            let norm = norm_pow_raw(&self.weights, &re, &im, self.p).powf(1.0 / self.p);
            if norm > 1.0 {
                scale_range(&mut re, 1.0 / norm);
                scale_range(&mut im, 1.0 / norm);
            }
            point.extend(re);
            point.extend(im);
        }
        point
    }

    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
        let n = self.n();
        let p = self.p;
        for offset in [0, 2 * n] {
            let norm = norm_pow_raw(
                &self.weights,
                &x[offset..offset + n],
                &x[offset + n..offset + 2 * n],
                p,
            )
            .powf(1.0 / p);
            if norm > 1.0 {
                scale_range(&mut x[offset..offset + 2 * n], 1.0 / norm);
            }
        }
        let (xre, xim) = (&x[..n], &x[n..2 * n]);
        let (yre, yim) = (&x[2 * n..3 * n], &x[3 * n..4 * n]);
        let mut diff_pow = 0.0;
        for i in 0..n {
            let dr = xre[i] - yre[i];
            let di = xim[i] - yim[i];
            diff_pow += self.weights[i] * (dr * dr + di * di).powf(0.5 * p);
        }
        let px = pairing_re_raw(&self.weights, xre, xim, &self.phi_re, &self.phi_im);
        let py = pairing_re_raw(&self.weights, yre, yim, &self.phi_re, &self.phi_im);
        let cut = 1.0 - self.delta;
        // one-sided estimate: membership filtered at tolerance 1e-9
        Evaluation {
            objective: diff_pow.powf(1.0 / p),
            violation: (cut - px).max(0.0) + (cut - py).max(0.0),
            feasible: px >= cut - 1e-9 && py >= cut - 1e-9,
        }
    }
}

/// Estimate `sup { ‖x - y‖_p : x, y ∈ S_{φ,δ} }` by multi-start search.
/// `delta <= 0` gives the empty slice (closure shrinks to the norming point),
/// reported as a zero-diameter estimate.
pub fn slice_diameter(
    functional: &LpFunction,
    delta: f64,
    e: Exponents,
    opts: &SearchOptions,
) -> Result<DiameterEstimate> {
    if delta <= 0.0 {
        return Ok(DiameterEstimate {
            diameter: 0.0,
            empty: true,
            evaluations: 0,
            seed: opts.seed,
        });
    }
    let spec = SliceSpec::new(functional.clone(), delta, e)?;
    let anchor = norming_witness_dual(functional, e)?;
    let problem = DiameterProblem {
        weights: functional.space().weights().to_vec(),
        phi_re: functional.values().iter().map(|v| v.re).collect(),
        phi_im: functional.values().iter().map(|v| v.im).collect(),
        anchor_re: anchor.values().iter().map(|v| v.re).collect(),
        anchor_im: anchor.values().iter().map(|v| v.im).collect(),
        p: e.p(),
        delta: spec.delta(),
    };
    let out = maximize(&problem, opts)?;
    Ok(DiameterEstimate {
        diameter: out.value,
        empty: false,
        evaluations: out.evaluations,
        seed: opts.seed,
    })
}

/// Modulus-of-convexity estimate: the minimum of `1 - ‖x+y‖_p/2` found over
/// unit x, y in `ℓ^p_n` with `‖x - y‖_p = ε` — an UPPER bound on the true
/// modulus.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusEstimate {
    pub value: f64,
    pub evaluations: u64,
    pub seed: u64,
}

struct ModulusProblem {
    n: usize,
    p: f64,
    epsilon: f64,
}

impl ModulusProblem {
    // x(t) = (m + t h)/‖m + t h‖, y(t) = (m - t h)/‖m - t h‖ on unit weights
    fn geometry(&self, x: &[f64], t: f64) -> Option<(f64, f64)> {
        let n = self.n;
        let (mre, mim) = (&x[..n], &x[n..2 * n]);
        let (hre, him) = (&x[2 * n..3 * n], &x[3 * n..4 * n]);
        let p = self.p;
        let mut plus_pow = 0.0;
        let mut minus_pow = 0.0;
        for i in 0..n {
            let (ar, ai) = (mre[i] + t * hre[i], mim[i] + t * him[i]);
            let (br, bi) = (mre[i] - t * hre[i], mim[i] - t * him[i]);
            plus_pow += (ar * ar + ai * ai).powf(0.5 * p);
            minus_pow += (br * br + bi * bi).powf(0.5 * p);
        }
        let na = plus_pow.powf(1.0 / p);
        let nb = minus_pow.powf(1.0 / p);
        if na <= 0.0 || nb <= 0.0 {
            return None;
        }
        let mut diff_pow = 0.0;
        let mut sum_pow = 0.0;
        for i in 0..n {
            let (ar, ai) = ((mre[i] + t * hre[i]) / na, (mim[i] + t * him[i]) / na);
            let (br, bi) = ((mre[i] - t * hre[i]) / nb, (mim[i] - t * him[i]) / nb);
            let (dr, di) = (ar - br, ai - bi);
            diff_pow += (dr * dr + di * di).powf(0.5 * p);
            let (sr, si) = (ar + br, ai + bi);
            sum_pow += (sr * sr + si * si).powf(0.5 * p);
        }
        Some((diff_pow.powf(1.0 / p), sum_pow.powf(1.0 / p)))
    }
}

impl SearchProblem for ModulusProblem {
    fn dimension(&self) -> usize {
        4 * self.n
    }

    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.dimension()).map(|_| standard_normal(rng)).collect()
    }

    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
        let n = self.n;
        // normalize the two direction blocks; the chord length is pinned by
        // bisection on t, so only directions matter
        for offset in [0, 2 * n] {
            let mut pow = 0.0;
            for i in offset..offset + n {
                pow += (x[i] * x[i] + x[i + n] * x[i + n]).powf(0.5 * self.p);
            }
            let norm = pow.powf(1.0 / self.p);
            if norm > 0.0 && norm.is_finite() {
                scale_range(&mut x[offset..offset + 2 * n], 1.0 / norm);
            } else {
                x[offset] = 1.0;
                for i in offset + 1..offset + 2 * n {
                    x[i] = 0.0;
                }
            }
        }
        let infeasible = Evaluation {
            objective: -1.0,
            violation: 1e3,
            feasible: false,
        };
        // bracket the chord equation ‖x(t) - y(t)‖_p = ε
        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        let mut bracketed = false;
        for _ in 0..60 {
            match self.geometry(x, hi) {
                Some((dist, _)) if dist > self.epsilon => {
                    bracketed = true;
                    break;
                }
                Some(_) => {
                    lo = hi;
                    hi *= 2.0;
                }
                None => return infeasible,
            }
        }
        if !bracketed {
            return infeasible;
        }
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            match self.geometry(x, mid) {
                Some((dist, _)) => {
                    if dist > self.epsilon {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                None => return infeasible,
            }
        }
        let t = 0.5 * (lo + hi);
        let Some((dist, sum)) = self.geometry(x, t) else {
            return infeasible;
        };
        let residual = (dist - self.epsilon).abs();
        Evaluation {
            objective: 0.5 * sum,
            violation: residual,
            feasible: residual <= 1e-9,
        }
    }
}

/// Numerically minimize `1 - ‖x+y‖_p/2` over unit x, y with `‖x-y‖_p = ε`
/// in `ℓ^p_n`.
pub fn modulus_of_convexity(
    n: usize,
    e: Exponents,
    epsilon: f64,
    opts: &SearchOptions,
) -> Result<ModulusEstimate> {
    if n < 2 {
        return Err(Error::BadAtomCount {
            got: n,
            max: crate::measure::MAX_ATOMS,
        });
    }
    if !(0.0..=2.0).contains(&epsilon) {
        return Err(Error::OutOfDomain {
            name: "epsilon",
            value: epsilon,
            constraint: "epsilon in [0, 2]",
        });
    }
    if epsilon == 0.0 {
        return Ok(ModulusEstimate {
            value: 0.0,
            evaluations: 0,
            seed: opts.seed,
        });
    }
    if epsilon >= 2.0 - 1e-9 {
        // distance 2 forces y = -x, so the midpoint is 0
        return Ok(ModulusEstimate {
            value: 1.0,
            evaluations: 0,
            seed: opts.seed,
        });
    }
    let problem = ModulusProblem {
        n,
        p: e.p(),
        epsilon,
    };
    let out = maximize(&problem, opts)?;
    Ok(ModulusEstimate {
        value: 1.0 - out.value,
        evaluations: out.evaluations,
        seed: opts.seed,
    })
}

/// Deterministic sample of slice pairs used by the formulation-consistency
/// checks: random functional, random pair inside the slice.
pub fn sample_slice_pair(
    n: usize,
    e: Exponents,
    delta: f64,
    seed: u64,
) -> Result<(SliceSpec, LpFunction, LpFunction)> {
    match crate::search::random_instance(
        crate::search::InstanceKind::SlicePair { delta },
        n,
        e,
        seed,
    )? {
        crate::search::Instance::SlicePair { functional, x, y } => {
            Ok((SliceSpec::new(functional, delta, e)?, x, y))
        }
        _ => unreachable!("SlicePair kind returns SlicePair instances"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::{delta_lemma1, delta_lemma2, delta_theorem, AlphaOptions};
    use crate::measure::norming_witness;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_opts() -> AlphaOptions {
        AlphaOptions {
            grid_resolution: 256,
            refine_steps: 64,
            safety_factor: 1.05,
        }
    }

    #[test]
    fn slice_membership_examples() {
        let e = Exponents::new(2.0).unwrap();
        let space = MeasureSpace::new(vec![1.0, 1.0]).unwrap();
        let v = LpFunction::new(space.clone(), vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let phi = norming_witness(&v, e).unwrap();
        let spec = SliceSpec::new(phi.clone(), 0.3, e).unwrap();
        assert!(slice_contains(&spec, &v).unwrap());

        let zero = LpFunction::constant(space.clone(), c(0.0, 0.0));
        let spec_half = SliceSpec::new(phi.clone(), 0.5, e).unwrap();
        assert!(!slice_contains(&spec_half, &zero).unwrap());

        // δ = 2 admits anything in the ball with Re pairing > -1
        let spec_two = SliceSpec::new(phi, 2.0, e).unwrap();
        let other = LpFunction::new(space, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(slice_contains(&spec_two, &other).unwrap());
    }

    #[test]
    fn slice_spec_validates() {
        let e = Exponents::new(2.0).unwrap();
        let space = MeasureSpace::new(vec![1.0]).unwrap();
        let not_unit = LpFunction::constant(space.clone(), c(2.0, 0.0));
        assert!(SliceSpec::new(not_unit, 0.5, e).is_err());
        let unit = LpFunction::constant(space, c(1.0, 0.0));
        assert!(SliceSpec::new(unit.clone(), 0.0, e).is_err());
        assert!(SliceSpec::new(unit.clone(), 2.5, e).is_err());
        assert!(SliceSpec::new(unit, 2.0, e).is_ok());
    }

    #[test]
    fn split_trick_examples() {
        let e = Exponents::new(2.0).unwrap();
        let space = MeasureSpace::new(vec![1.0, 1.0]).unwrap();
        let v = LpFunction::new(space, vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let phi = norming_witness(&v, e).unwrap();
        let spec = SliceSpec::new(phi, 0.1, e).unwrap();
        assert_eq!(split_trick(&v, &v, &spec).unwrap(), (true, true));

        // boundary case: Re pairing(x+y) = 2 - δ exactly does not trigger
        let x = v.scale(1.0 - 0.05);
        let y = v.scale(1.0 - 0.05 - 1e-13);
        let total = pairing(&x.add(&y).unwrap(), spec.functional()).unwrap().re;
        assert!(total < 2.0 - spec.delta());
        assert_eq!(split_trick(&x, &y, &spec).unwrap(), (false, false));
    }

    #[test]
    fn lemma1_equality_point_passes() {
        let e = Exponents::new(2.0).unwrap();
        let budget = delta_lemma1(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::uniform_probability(4).unwrap();
        let one = LpFunction::constant(space.clone(), c(1.0, 0.0));
        match verify_lemma1_instance(&one, 0.5, &budget).unwrap() {
            InstanceOutcome::Checked(r) => {
                assert!(r.passed);
                assert!(r.measured_quantity < 1e-12);
            }
            other => panic!("expected checked outcome, got {other:?}"),
        }

        let nearly = one.scale(1.0 - 1e-12);
        match verify_lemma1_instance(&nearly, 0.5, &budget).unwrap() {
            InstanceOutcome::Checked(r) => {
                assert!(r.passed);
                assert!(r.measured_quantity < 1e-10);
            }
            other => panic!("expected checked outcome, got {other:?}"),
        }
        let _ = space;
    }

    #[test]
    fn lemma1_rejects_non_probability_space() {
        let e = Exponents::new(2.0).unwrap();
        let budget = delta_lemma1(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::new(vec![1.0, 1.0]).unwrap();
        let one = LpFunction::constant(space, c(1.0, 0.0));
        assert!(matches!(
            verify_lemma1_instance(&one, 0.5, &budget).unwrap(),
            InstanceOutcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn lemma2_equality_and_na_cases() {
        let e = Exponents::new(3.0).unwrap();
        let budget = delta_lemma2(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::new(vec![0.5, 0.25, 0.25]).unwrap();
        let raw =
            LpFunction::new(space.clone(), vec![c(0.9, 0.1), c(-0.3, 0.2), c(0.5, 0.0)]).unwrap();
        let v = raw.normalized(e).unwrap();
        let w = norming_witness(&v, e).unwrap();
        match verify_lemma2_instance(&v, &w, 0.5, &budget).unwrap() {
            InstanceOutcome::Checked(r) => {
                assert!(r.passed);
                assert!(r.measured_quantity < 1e-9);
                assert_eq!(r.intermediates.len(), 2);
            }
            other => panic!("expected checked outcome, got {other:?}"),
        }

        // u supported where w vanishes: pairing 0, hypothesis fails
        let w0 = LpFunction::indicator(space.clone(), 0);
        let u = LpFunction::indicator(space, 1);
        match verify_lemma2_instance(&u, &w0, 0.5, &budget).unwrap() {
            InstanceOutcome::NotApplicable { .. } => {}
            other => panic!("expected not-applicable, got {other:?}"),
        }
    }

    #[test]
    fn theorem_identical_pair_passes() {
        let e = Exponents::new(1.5).unwrap();
        let budget = delta_theorem(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::new(vec![0.2, 0.8]).unwrap();
        let x = LpFunction::new(space, vec![c(1.0, 0.5), c(-0.25, 0.1)])
            .unwrap()
            .normalized(e)
            .unwrap();
        match verify_theorem_instance(&x, &x, 0.5, &budget).unwrap() {
            InstanceOutcome::Checked(r) => {
                assert!(r.passed);
                assert!(r.measured_quantity < 1e-12);
            }
            other => panic!("expected checked outcome, got {other:?}"),
        }
    }

    #[test]
    fn budget_statement_is_enforced() {
        let e = Exponents::new(2.0).unwrap();
        let budget = delta_lemma1(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::uniform_probability(2).unwrap();
        let one = LpFunction::constant(space, c(1.0, 0.0));
        assert!(matches!(
            verify_theorem_instance(&one, &one, 0.5, &budget),
            Err(Error::BudgetStatementMismatch { .. })
        ));
    }

    #[test]
    fn replay_round_trips_a_witness() {
        let e = Exponents::new(2.0).unwrap();
        let budget = delta_lemma1(0.5, e, &small_opts()).unwrap();
        let space = MeasureSpace::uniform_probability(3).unwrap();
        let z = LpFunction::constant(space, c(1.0, 0.0)).scale(0.999999);
        let outcome = verify_lemma1_instance(&z, 0.5, &budget).unwrap();
        let report = outcome.report().unwrap();
        let replayed = replay_instance(report.witness.as_ref().unwrap(), 0.5, &budget).unwrap();
        let r2 = replayed.report().unwrap();
        assert_eq!(r2.measured_quantity.to_bits(), report.measured_quantity.to_bits());
    }

    #[test]
    fn empty_slice_reports_zero_diameter() {
        let e = Exponents::new(2.0).unwrap();
        let space = MeasureSpace::counting(2).unwrap();
        let phi = LpFunction::indicator(space, 0);
        let est = slice_diameter(&phi, 0.0, e, &SearchOptions::diameter(1)).unwrap();
        assert!(est.empty);
        assert_eq!(est.diameter, 0.0);
    }

    #[test]
    fn antipodal_pair_fills_the_full_slice() {
        // δ = 2: the slice is almost the whole ball; ±e_2 realize diameter 2
        let e = Exponents::new(2.0).unwrap();
        let space = MeasureSpace::counting(2).unwrap();
        let phi = LpFunction::indicator(space, 0);
        let mut opts = SearchOptions::diameter(3);
        opts.restarts = 60;
        let est = slice_diameter(&phi, 2.0, e, &opts).unwrap();
        assert!((est.diameter - 2.0).abs() < 1e-6, "diameter = {}", est.diameter);
    }

    #[test]
    fn modulus_edge_cases() {
        let e = Exponents::new(2.0).unwrap();
        let opts = SearchOptions::diameter(5);
        assert_eq!(modulus_of_convexity(3, e, 0.0, &opts).unwrap().value, 0.0);
        assert_eq!(modulus_of_convexity(3, e, 2.0, &opts).unwrap().value, 1.0);
        assert!(modulus_of_convexity(1, e, 0.5, &opts).is_err());
        assert!(modulus_of_convexity(2, e, 2.5, &opts).is_err());
    }

    #[test]
    fn sample_slice_pair_members_are_in_slice() {
        let e = Exponents::new(3.0).unwrap();
        let (spec, x, y) = sample_slice_pair(4, e, 0.2, 11).unwrap();
        assert!(slice_contains(&spec, &x).unwrap());
        assert!(slice_contains(&spec, &y).unwrap());
        let _ = Arc::strong_count(spec.functional().space());
    }
}
