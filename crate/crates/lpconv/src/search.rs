//! Shared numerical machinery: seeded instance generation, multi-start
//! derivative-free maximization (compass pattern search plus Nelder–Mead
//! refinement), and grid scanning with local subdivision.
//!
//! Everything is derivative-free on purpose: `|·|^p` is not differentiable at
//! zeros for p < 2. Determinism contract: identical `(seed, options)` give
//! identical outputs regardless of thread count — restarts own private RNG
//! substreams and partial results merge in restart order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{lp_norm, LpFunction, MeasureSpace};
use crate::scalar::Exponents;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Objective-evaluation budget per restart.
    pub max_evaluations: usize,
    pub penalty_weight: f64,
    pub refine_tolerance: f64,
}

impl SearchOptions {
    /// Defaults for adversarial budget verification.
    pub fn verification(seed: u64) -> Self {
        SearchOptions {
            seed,
            restarts: 10_000,
            max_evaluations: 240,
            penalty_weight: 1e4,
            refine_tolerance: 1e-10,
        }
    }

    /// Defaults for slice-diameter and modulus estimation.
    pub fn diameter(seed: u64) -> Self {
        SearchOptions {
            seed,
            restarts: 200,
            max_evaluations: 2_000,
            penalty_weight: 1e4,
            refine_tolerance: 1e-10,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

/// Private RNG stream for one unit of work: same seed, distinct stream index.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One standard normal draw via Box–Muller.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// A standard complex Gaussian draw.
pub fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// What one probe of the search space looks like after projection.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub objective: f64,
    /// Zero when all penalized constraints hold; positive otherwise.
    pub violation: f64,
    /// Whether the projected point satisfies the problem's feasibility
    /// filter (hypothesis constraints are checked strictly by the problems
    /// that need strictness).
    pub feasible: bool,
}

/// A maximization problem over `R^d` with in-place projection.
///
/// `evaluate` must first project `x` onto whatever part of the constraint
/// set is handled by projection (balls and spheres), then measure the point.
pub trait SearchProblem: Sync {
    fn dimension(&self) -> usize;
    fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;
    fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation;
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Best feasible objective value found (after the polish phase).
    pub value: f64,
    pub point: Vec<f64>,
    pub evaluations: u64,
    /// Best feasible value over the plain restart phase, before the extra
    /// polish pass on the incumbent. Nondecreasing in the restart count for
    /// a fixed seed schedule prefix.
    pub restart_best: f64,
}

struct Tracker<'a, P: SearchProblem + ?Sized> {
    problem: &'a P,
    penalty_weight: f64,
    evaluations: u64,
    best: Option<(f64, Vec<f64>)>,
}

impl<'a, P: SearchProblem + ?Sized> Tracker<'a, P> {
    fn new(problem: &'a P, penalty_weight: f64) -> Self {
        Tracker {
            problem,
            penalty_weight,
            evaluations: 0,
            best: None,
        }
    }

    /// Projects `x` in place and returns the penalized score.
    fn score(&mut self, x: &mut Vec<f64>) -> f64 {
        let ev = self.problem.evaluate(x);
        self.evaluations += 1;
        if ev.feasible {
            let better = match &self.best {
                None => true,
                Some((v, _)) => ev.objective > *v,
            };
            if better {
                self.best = Some((ev.objective, x.clone()));
            }
        }
        ev.objective - self.penalty_weight * ev.violation
    }
}

fn pattern_search<P: SearchProblem + ?Sized>(
    tracker: &mut Tracker<'_, P>,
    x: &mut Vec<f64>,
    initial_step: f64,
    budget: u64,
    tolerance: f64,
) {
    let mut fx = tracker.score(x);
    let mut step = initial_step;
    let dim = x.len();
    while tracker.evaluations < budget && step > tolerance {
        let mut best_trial: Option<(f64, Vec<f64>)> = None;
        for i in 0..dim {
            for sgn in [1.0, -1.0] {
                if tracker.evaluations >= budget {
                    break;
                }
                let mut trial = x.clone();
                trial[i] += sgn * step;
                let ft = tracker.score(&mut trial);
                if ft > fx && best_trial.as_ref().map_or(true, |(bv, _)| ft > *bv) {
                    best_trial = Some((ft, trial));
                }
            }
        }
        match best_trial {
            Some((fv, trial)) => {
                *x = trial;
                fx = fv;
            }
            None => step *= 0.5,
        }
    }
}

fn nelder_mead<P: SearchProblem + ?Sized>(
    tracker: &mut Tracker<'_, P>,
    x0: &[f64],
    scale: f64,
    budget: u64,
    tolerance: f64,
) {
    let dim = x0.len();
    // simplex of dim+1 vertices, scored by penalized value (maximization)
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim + 1);
    let mut v0 = x0.to_vec();
    let f0 = tracker.score(&mut v0);
    simplex.push((f0, v0));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += scale;
        let f = tracker.score(&mut v);
        simplex.push((f, v));
    }
    while tracker.evaluations + 4 < budget {
        // descending by value: best first
        simplex.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[0].0 - simplex[dim].0;
        let mut geom = 0.0_f64;
        for i in 0..dim {
            geom = geom.max((simplex[0].1[i] - simplex[dim].1[i]).abs());
        }
        if spread.abs() < tolerance && geom < tolerance {
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(_, v)| v[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let blend = |t: f64| -> Vec<f64> {
            (0..dim)
                .map(|i| centroid[i] + t * (centroid[i] - worst.1[i]))
                .collect()
        };
        let mut refl = blend(1.0);
        let f_refl = tracker.score(&mut refl);
        if f_refl > simplex[0].0 {
            let mut exp = blend(2.0);
            let f_exp = tracker.score(&mut exp);
            simplex[dim] = if f_exp > f_refl { (f_exp, exp) } else { (f_refl, refl) };
        } else if f_refl > simplex[dim - 1].0 {
            simplex[dim] = (f_refl, refl);
        } else {
            let mut con = blend(-0.5);
            let f_con = tracker.score(&mut con);
            if f_con > simplex[dim].0 {
                simplex[dim] = (f_con, con);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let mut v: Vec<f64> = entry
                        .1
                        .iter()
                        .zip(&best)
                        .map(|(&a, &b)| b + 0.5 * (a - b))
                        .collect();
                    let f = tracker.score(&mut v);
                    *entry = (f, v);
                }
            }
        }
    }
}

struct RestartResult {
    evaluations: u64,
    best: Option<(f64, Vec<f64>)>,
}

fn run_restart<P: SearchProblem + ?Sized>(
    problem: &P,
    opts: &SearchOptions,
    restart: usize,
) -> RestartResult {
    let mut rng = substream(opts.seed, restart as u64);
    let mut x = problem.initial_point(&mut rng);
    let mut tracker = Tracker::new(problem, opts.penalty_weight);
    let budget = opts.max_evaluations as u64;
    pattern_search(&mut tracker, &mut x, 0.25, budget * 11 / 20, opts.refine_tolerance);
    nelder_mead(&mut tracker, &x, 0.05, budget, opts.refine_tolerance);
    RestartResult {
        evaluations: tracker.evaluations,
        best: tracker.best,
    }
}

/// Multi-start maximization. Never returns an infeasible witness; errors
/// with [`Error::NoFeasiblePoint`] when no restart produced a feasible
/// sample. Ties between restarts break by `(value, restart index)`
/// lexicographic maximum.
pub fn maximize<P: SearchProblem + ?Sized>(
    problem: &P,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if opts.restarts == 0 {
        return Err(Error::OutOfDomain {
            name: "restarts",
            value: 0.0,
            constraint: "restarts >= 1",
        });
    }
    let results: Vec<RestartResult> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| run_restart(problem, opts, r))
        .collect();

    let mut total_evaluations = 0u64;
    let mut best: Option<(f64, usize, Vec<f64>)> = None;
    for (idx, rr) in results.iter().enumerate() {
        total_evaluations += rr.evaluations;
        if let Some((v, p)) = &rr.best {
            let better = match &best {
                None => true,
                Some((bv, bidx, _)) => *v > *bv || (*v == *bv && idx > *bidx),
            };
            if better {
                best = Some((*v, idx, p.clone()));
            }
        }
    }
    let Some((restart_best, _, incumbent)) = best else {
        return Err(Error::NoFeasiblePoint);
    };

    // polish the incumbent with a dedicated, larger budget
    let dim = problem.dimension() as u64;
    let polish = (opts.max_evaluations as u64 * 20).max(1500 * dim);
    let mut tracker = Tracker::new(problem, opts.penalty_weight);
    tracker.best = Some((restart_best, incumbent.clone()));
    let mut x = incumbent;
    pattern_search(&mut tracker, &mut x, 0.05, polish * 7 / 10, opts.refine_tolerance);
    let polished = tracker.best.as_ref().map(|(_, p)| p.clone()).unwrap();
    nelder_mead(&mut tracker, &polished, 0.01, polish, opts.refine_tolerance);
    total_evaluations += tracker.evaluations;

    let (value, point) = tracker.best.unwrap();
    Ok(SearchOutcome {
        value,
        point,
        evaluations: total_evaluations,
        restart_best,
    })
}

/// Axis-aligned rectangle for [`grid_refine`].
#[derive(Debug, Clone, Copy)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

/// Coarse lattice scan (endpoints inclusive) followed by iterated local
/// subdivision around the running maximum. Deterministic: ties take the
/// first maximal cell in row-major scan order. NaN evaluations are never
/// selected; map non-finite values to `f64::INFINITY` in `f` to detect them.
pub fn grid_refine<F>(
    f: &F,
    rect: Rect,
    resolution: (usize, usize),
    refine_steps: usize,
    refine_tolerance: f64,
) -> (f64, (f64, f64))
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let (nx, ny) = (resolution.0.max(2), resolution.1.max(2));
    let sx = (rect.x1 - rect.x0) / (nx - 1) as f64;
    let sy = (rect.y1 - rect.y0) / (ny - 1) as f64;

    // per-row maxima, merged in row order so the scan-order tie-break holds
    let rows: Vec<(f64, usize)> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let x = rect.x0 + sx * i as f64;
            let mut best = f64::NEG_INFINITY;
            let mut best_j = 0usize;
            for j in 0..ny {
                let y = rect.y0 + sy * j as f64;
                let v = f(x, y);
                if v > best {
                    best = v;
                    best_j = j;
                }
            }
            (best, best_j)
        })
        .collect();

    let mut best = f64::NEG_INFINITY;
    let mut cx = rect.x0;
    let mut cy = rect.y0;
    for (i, &(v, j)) in rows.iter().enumerate() {
        if v > best {
            best = v;
            cx = rect.x0 + sx * i as f64;
            cy = rect.y0 + sy * j as f64;
        }
    }

    // local subdivision: rescan a shrinking window around the incumbent,
    // clamped to the rectangle so boundary maxima stay reachable
    let mut hx = sx;
    let mut hy = sy;
    const LOCAL: usize = 17;
    for _ in 0..refine_steps {
        if hx.max(hy) < refine_tolerance {
            break;
        }
        let wx0 = (cx - hx).max(rect.x0);
        let wx1 = (cx + hx).min(rect.x1);
        let wy0 = (cy - hy).max(rect.y0);
        let wy1 = (cy + hy).min(rect.y1);
        for i in 0..LOCAL {
            let x = wx0 + (wx1 - wx0) * i as f64 / (LOCAL - 1) as f64;
            for j in 0..LOCAL {
                let y = wy0 + (wy1 - wy0) * j as f64 / (LOCAL - 1) as f64;
                let v = f(x, y);
                if v > best {
                    best = v;
                    cx = x;
                    cy = y;
                }
            }
        }
        hx *= 0.25;
        hy *= 0.25;
    }

    (best, (cx, cy))
}

/// Kinds of randomly generated instances. The generated objects satisfy
/// their hypotheses exactly (norms renormalized post-sampling).
#[derive(Debug, Clone, Copy)]
pub enum InstanceKind {
    ProbabilitySpace,
    BallFunction,
    SlicePair { delta: f64 },
    MidpointPair { delta: f64 },
}

#[derive(Debug, Clone)]
pub enum Instance {
    ProbabilitySpace(Arc<MeasureSpace>),
    BallFunction {
        f: LpFunction,
    },
    SlicePair {
        functional: LpFunction,
        x: LpFunction,
        y: LpFunction,
    },
    MidpointPair {
        x: LpFunction,
        y: LpFunction,
    },
}

fn random_probability_weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut weights: Vec<f64> = (0..n)
        .map(|_| (-(1.0 - rng.gen::<f64>()).ln()).max(1e-12))
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}

fn random_unit_function(
    space: &Arc<MeasureSpace>,
    e: Exponents,
    rng: &mut ChaCha8Rng,
) -> LpFunction {
    loop {
        let values: Vec<Complex64> = (0..space.atoms()).map(|_| standard_complex(rng)).collect();
        let f = LpFunction::new(Arc::clone(space), values).expect("finite gaussian values");
        if let Ok(unit) = f.normalized(e) {
            return unit;
        }
    }
}

/// Deterministic random instance generation: the same `(kind, n, e, seed)`
/// always produces a bit-identical instance.
pub fn random_instance(kind: InstanceKind, n: usize, e: Exponents, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::BadAtomCount {
            got: 0,
            max: crate::measure::MAX_ATOMS,
        });
    }
    let mut rng = substream(seed, 0);
    match kind {
        InstanceKind::ProbabilitySpace => {
            let space = MeasureSpace::new(random_probability_weights(n, &mut rng))?;
            Ok(Instance::ProbabilitySpace(space))
        }
        InstanceKind::BallFunction => {
            let space = MeasureSpace::new(random_probability_weights(n, &mut rng))?;
            let unit = random_unit_function(&space, e, &mut rng);
            let scale: f64 = rng.gen();
            Ok(Instance::BallFunction {
                f: unit.scale(scale),
            })
        }
        InstanceKind::SlicePair { delta } => {
            if delta <= 0.0 {
                return Err(Error::OutOfDomain {
                    name: "delta",
                    value: delta,
                    constraint: "delta > 0",
                });
            }
            let space = MeasureSpace::new(random_probability_weights(n, &mut rng))?;
            let v = random_unit_function(&space, e, &mut rng);
            let functional = crate::measure::norming_witness(&v, e)?;
            let mut members = Vec::with_capacity(2);
            for _ in 0..2 {
                let g = random_unit_function(&space, e, &mut rng);
                let mut t = 1.0;
                let member = loop {
                    let mut cand = v.add(&g.scale(t))?;
                    let norm = lp_norm(&cand, e);
                    if norm > 1.0 {
                        cand = cand.scale(1.0 / norm);
                    }
                    let re = crate::measure::pairing(&cand, &functional)?.re;
                    if re > 1.0 - delta {
                        break cand;
                    }
                    t *= 0.5;
                };
                members.push(member);
            }
            let y = members.pop().unwrap();
            let x = members.pop().unwrap();
            Ok(Instance::SlicePair { functional, x, y })
        }
        InstanceKind::MidpointPair { delta } => {
            if delta <= 0.0 {
                return Err(Error::OutOfDomain {
                    name: "delta",
                    value: delta,
                    constraint: "delta > 0",
                });
            }
            let space = MeasureSpace::new(random_probability_weights(n, &mut rng))?;
            let z = random_unit_function(&space, e, &mut rng);
            let a = random_unit_function(&space, e, &mut rng);
            let b = random_unit_function(&space, e, &mut rng);
            let mut t = 1.0;
            loop {
                let x = z.add(&a.scale(t))?.normalized(e)?;
                let y = z.add(&b.scale(t))?.normalized(e)?;
                if lp_norm(&x.add(&y)?, e) > 2.0 - delta {
                    return Ok(Instance::MidpointPair { x, y });
                }
                t *= 0.5;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::pairing;

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let mut a = substream(7, 0);
        let mut b = substream(7, 0);
        let mut c = substream(7, 1);
        let xs: Vec<u64> = (0..16).map(|_| a.gen()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.gen()).collect();
        let zs: Vec<u64> = (0..16).map(|_| c.gen()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn grid_refine_quadratic_peak() {
        let f = |x: f64, y: f64| -(x * x + y * y);
        let (v, (x, y)) = grid_refine(
            &f,
            Rect {
                x0: -1.0,
                x1: 1.0,
                y0: -1.0,
                y1: 1.0,
            },
            (64, 64),
            64,
            1e-12,
        );
        assert!(v.abs() < 1e-8);
        assert!(x.abs() < 1e-4 && y.abs() < 1e-4);
    }

    #[test]
    fn grid_refine_offset_peak_within_tolerance() {
        // unique quadratic peak at (0.3123456, -0.7654321)
        let (px, py) = (0.3123456, -0.7654321);
        let f = move |x: f64, y: f64| 2.5 - (x - px).powi(2) - 3.0 * (y - py).powi(2);
        let (v, (x, y)) = grid_refine(
            &f,
            Rect {
                x0: -1.0,
                x1: 1.0,
                y0: -1.0,
                y1: 1.0,
            },
            (128, 128),
            80,
            1e-12,
        );
        assert!((v - 2.5).abs() < 1e-10);
        assert!((x - px).abs() < 1e-5 && (y - py).abs() < 1e-5);
    }

    struct BallProblem {
        e: Exponents,
        weights: Vec<f64>,
    }

    impl SearchProblem for BallProblem {
        fn dimension(&self) -> usize {
            2 * self.weights.len()
        }

        fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
            (0..self.dimension()).map(|_| standard_normal(rng) * 0.1).collect()
        }

        fn evaluate(&self, x: &mut Vec<f64>) -> Evaluation {
            let n = self.weights.len();
            let norm = self
                .weights
                .iter()
                .enumerate()
                .map(|(i, &w)| w * Complex64::new(x[i], x[n + i]).norm().powf(self.e.p()))
                .sum::<f64>()
                .powf(1.0 / self.e.p());
            if norm > 1.0 {
                for xi in x.iter_mut() {
                    *xi /= norm;
                }
            }
            let norm_after = self
                .weights
                .iter()
                .enumerate()
                .map(|(i, &w)| w * Complex64::new(x[i], x[n + i]).norm().powf(self.e.p()))
                .sum::<f64>()
                .powf(1.0 / self.e.p());
            Evaluation {
                objective: norm_after,
                violation: 0.0,
                feasible: norm_after <= 1.0 + 1e-9,
            }
        }
    }

    #[test]
    fn maximize_norm_over_ball_reaches_one() {
        let problem = BallProblem {
            e: Exponents::new(3.0).unwrap(),
            weights: vec![0.2, 0.5, 0.3],
        };
        let opts = SearchOptions {
            seed: 11,
            restarts: 40,
            max_evaluations: 400,
            penalty_weight: 1e4,
            refine_tolerance: 1e-10,
        };
        let out = maximize(&problem, &opts).unwrap();
        assert!((out.value - 1.0).abs() < 1e-6, "value = {}", out.value);
    }

    struct ConstantProblem;

    impl SearchProblem for ConstantProblem {
        fn dimension(&self) -> usize {
            3
        }
        fn initial_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
            (0..3).map(|_| standard_normal(rng)).collect()
        }
        fn evaluate(&self, _x: &mut Vec<f64>) -> Evaluation {
            Evaluation {
                objective: 0.0,
                violation: 0.0,
                feasible: true,
            }
        }
    }

    #[test]
    fn maximize_constant_objective() {
        let out = maximize(
            &ConstantProblem,
            &SearchOptions {
                seed: 1,
                restarts: 5,
                max_evaluations: 50,
                penalty_weight: 1.0,
                refine_tolerance: 1e-10,
            },
        )
        .unwrap();
        assert_eq!(out.value, 0.0);
    }

    #[test]
    fn maximize_is_deterministic() {
        let problem = BallProblem {
            e: Exponents::new(1.5).unwrap(),
            weights: vec![1.0, 1.0],
        };
        let opts = SearchOptions {
            seed: 99,
            restarts: 20,
            max_evaluations: 150,
            penalty_weight: 1e4,
            refine_tolerance: 1e-10,
        };
        let a = maximize(&problem, &opts).unwrap();
        let b = maximize(&problem, &opts).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.point, b.point);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn maximize_restart_best_is_prefix_monotone() {
        let problem = BallProblem {
            e: Exponents::new(2.0).unwrap(),
            weights: vec![0.7, 0.3],
        };
        let base = SearchOptions {
            seed: 5,
            restarts: 4,
            max_evaluations: 60,
            penalty_weight: 1e4,
            refine_tolerance: 1e-10,
        };
        let small = maximize(&problem, &base.clone()).unwrap();
        let large = maximize(&problem, &base.with_restarts(32)).unwrap();
        assert!(large.restart_best >= small.restart_best - 1e-15);
    }

    #[test]
    fn random_instances_are_deterministic() {
        let e = Exponents::new(2.0).unwrap();
        let a = random_instance(InstanceKind::ProbabilitySpace, 4, e, 3).unwrap();
        let b = random_instance(InstanceKind::ProbabilitySpace, 4, e, 3).unwrap();
        match (&a, &b) {
            (Instance::ProbabilitySpace(sa), Instance::ProbabilitySpace(sb)) => {
                assert_eq!(sa.weights(), sb.weights());
                assert!((sa.total_mass() - 1.0).abs() <= 1e-12);
            }
            _ => panic!("unexpected instance kinds"),
        }
    }

    #[test]
    fn midpoint_pair_satisfies_hypothesis() {
        let e = Exponents::new(1.5).unwrap();
        let delta = 0.05;
        match random_instance(InstanceKind::MidpointPair { delta }, 6, e, 17).unwrap() {
            Instance::MidpointPair { x, y } => {
                assert!((lp_norm(&x, e) - 1.0).abs() <= 1e-12);
                assert!((lp_norm(&y, e) - 1.0).abs() <= 1e-12);
                assert!(lp_norm(&x.add(&y).unwrap(), e) > 2.0 - delta);
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn slice_pair_satisfies_hypothesis() {
        let e = Exponents::new(3.0).unwrap();
        let delta = 0.1;
        match random_instance(InstanceKind::SlicePair { delta }, 4, e, 23).unwrap() {
            Instance::SlicePair { functional, x, y } => {
                for member in [&x, &y] {
                    assert!(lp_norm(member, e) <= 1.0 + 1e-12);
                    assert!(pairing(member, &functional).unwrap().re > 1.0 - delta);
                }
            }
            _ => panic!("wrong kind"),
        }
    }
}
