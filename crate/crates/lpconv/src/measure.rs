//! Finite atomic measure spaces and the L^p machinery used by the lemma and
//! theorem checks: norms, pairings, norming witnesses, phase reduction,
//! quotients, and the induced probability measure.
//!
//! Everything here is desk-scale on purpose: all verification targets are
//! finite weighted spaces, and simple functions are dense in L^p, so
//! counterexample search loses nothing by the restriction.

use std::sync::Arc;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Exponents;

pub const MAX_ATOMS: usize = 1_000_000;

/// Tolerance for algebraic identities evaluated in f64.
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Tolerance for normalized quantities that pass through a p-th root.
pub const TOL_NORMALIZED: f64 = 1e-9;

/// A finite atomic measure space, described by the strictly positive weight
/// of each atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MeasureSpace {
    weights: Vec<f64>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Arc<Self>> {
        if weights.is_empty() || weights.len() > MAX_ATOMS {
            return Err(Error::BadAtomCount {
                got: weights.len(),
                max: MAX_ATOMS,
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::BadWeight { index, weight: w });
            }
        }
        Ok(Arc::new(MeasureSpace { weights }))
    }

    /// Uniform probability space on `n` atoms.
    pub fn uniform_probability(n: usize) -> Result<Arc<Self>> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Counting measure (all weights 1), the `ℓ^p_n` case.
    pub fn counting(n: usize) -> Result<Arc<Self>> {
        Self::new(vec![1.0; n])
    }

    pub fn atoms(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_probability(&self, tol: f64) -> bool {
        (self.total_mass() - 1.0).abs() <= tol
    }
}

/// A complex-valued function on a finite atomic measure space.
#[derive(Debug, Clone, PartialEq)]
pub struct LpFunction {
    space: Arc<MeasureSpace>,
    values: Vec<Complex64>,
}

impl LpFunction {
    pub fn new(space: Arc<MeasureSpace>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.atoms() {
            return Err(Error::LengthMismatch {
                got: values.len(),
                expected: space.atoms(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    name: "values",
                    index,
                });
            }
        }
        Ok(LpFunction { space, values })
    }

    pub fn constant(space: Arc<MeasureSpace>, value: Complex64) -> Self {
        let n = space.atoms();
        LpFunction {
            space,
            values: vec![value; n],
        }
    }

    /// Indicator of a single atom.
    pub fn indicator(space: Arc<MeasureSpace>, atom: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); space.atoms()];
        values[atom] = Complex64::new(1.0, 0.0);
        LpFunction { space, values }
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn same_space(&self, other: &LpFunction) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    pub fn add(&self, other: &LpFunction) -> Result<LpFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LpFunction) -> Result<LpFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> LpFunction {
        LpFunction {
            space: Arc::clone(&self.space),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Rescale to unit p-norm. Errors on the zero function.
    pub fn normalized(&self, e: Exponents) -> Result<LpFunction> {
        let n = lp_norm(self, e);
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized {
                name: "function",
                norm: n,
                tol: TOL_NORMALIZED,
            });
        }
        Ok(self.scale(1.0 / n))
    }

    fn zip_with(
        &self,
        other: &LpFunction,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<LpFunction> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        Ok(LpFunction {
            space: Arc::clone(&self.space),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }
}

// JSON schema: {"weights": [...], "values": [[re, im], ...]}
impl Serialize for LpFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            weights: &'a [f64],
            values: Vec<[f64; 2]>,
        }
        Doc {
            weights: self.space.weights(),
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LpFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            weights: Vec<f64>,
            values: Vec<[f64; 2]>,
        }
        let doc = Doc::deserialize(deserializer)?;
        let space = MeasureSpace::new(doc.weights).map_err(D::Error::custom)?;
        let values = doc
            .values
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        LpFunction::new(space, values).map_err(D::Error::custom)
    }
}

/// `(Σ w_i |f_i|^p)^{1/p}`.
pub fn lp_norm(f: &LpFunction, e: Exponents) -> f64 {
    lp_norm_pow(f, e).powf(1.0 / e.p())
}

/// `Σ w_i |f_i|^p`, the p-th power of the norm.
pub fn lp_norm_pow(f: &LpFunction, e: Exponents) -> f64 {
    f.space
        .weights()
        .iter()
        .zip(&f.values)
        .map(|(&w, v)| w * v.norm().powf(e.p()))
        .sum()
}

/// `Σ w_i u_i w_i` — the bilinear pairing with no complex conjugation.
/// The functional is `x ↦ ∫ x w dμ`, so duality-with-conjugation is a
/// deliberate non-choice here.
pub fn pairing(u: &LpFunction, w: &LpFunction) -> Result<Complex64> {
    if !u.same_space(w) {
        return Err(Error::SpaceMismatch);
    }
    Ok(u.space
        .weights()
        .iter()
        .zip(u.values.iter().zip(&w.values))
        .map(|(&wt, (a, b))| wt * a * b)
        .sum())
}

fn witness_values(values: &[Complex64], cofactor_exponent: f64) -> Vec<Complex64> {
    values
        .iter()
        .map(|&v| {
            let m = v.norm();
            if m > 0.0 {
                // |v|^{p-1} * conj(v)/|v|, computed phase-first so small
                // moduli with p < 2 cannot overflow
                let phase = v.conj() / m;
                phase * m.powf(cofactor_exponent)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// The unique `w` in L^q with `vw = |v|^p = |w|^q` atomwise, for unit `v`.
///
/// Atomwise `w_i = |v_i|^{p-1} conj(v_i)/|v_i|`, with `w_i = 0` where
/// `v_i = 0` (the `sgn(0) = 0` convention). Achieves equality in Hölder:
/// `‖w‖_q = 1` and `Re pairing(v, w) = 1`.
pub fn norming_witness(v: &LpFunction, e: Exponents) -> Result<LpFunction> {
    let norm = lp_norm(v, e);
    if (norm - 1.0).abs() > TOL_NORMALIZED {
        return Err(Error::NotNormalized {
            name: "v",
            norm,
            tol: TOL_NORMALIZED,
        });
    }
    Ok(LpFunction {
        space: Arc::clone(&v.space),
        values: witness_values(&v.values, e.p() - 1.0),
    })
}

/// Norming partner of a unit functional `φ` in L^q: the unique unit `v` in
/// L^p with `vφ = |v|^p = |φ|^q`. This is [`norming_witness`] with the roles
/// of the exponents swapped.
pub fn norming_witness_dual(phi: &LpFunction, e: Exponents) -> Result<LpFunction> {
    let norm = lp_norm_pow_with(phi, e.q()).powf(1.0 / e.q());
    if (norm - 1.0).abs() > TOL_NORMALIZED {
        return Err(Error::NotNormalized {
            name: "phi",
            norm,
            tol: TOL_NORMALIZED,
        });
    }
    Ok(LpFunction {
        space: Arc::clone(&phi.space),
        values: witness_values(&phi.values, e.q() - 1.0),
    })
}

/// `Σ w_i |f_i|^r` for an arbitrary exponent r (used for q-norms).
pub fn lp_norm_pow_with(f: &LpFunction, r: f64) -> f64 {
    f.space
        .weights()
        .iter()
        .zip(&f.values)
        .map(|(&w, v)| w * v.norm().powf(r))
        .sum()
}

/// Hölder defect `‖u‖_p ‖w‖_q - Re pairing(u, w)`, clamped at zero.
pub fn holder_gap(u: &LpFunction, w: &LpFunction, e: Exponents) -> Result<f64> {
    let np = lp_norm(u, e);
    let nq = lp_norm_pow_with(w, e.q()).powf(1.0 / e.q());
    let re = pairing(u, w)?.re;
    Ok((np * nq - re).max(0.0))
}

/// Rotate by a unimodular function so that `v` and `w` become nonnegative:
/// `u' = uθ`, `v' = vθ`, `w' = w/θ` with `|θ| = 1` atomwise.
///
/// Requires `v_i w_i` to be (approximately) nonnegative real on every atom —
/// the content of "`w` is `v`'s norming witness up to phase". All norms and
/// all Re-pairings are unchanged.
pub fn phase_reduction(
    u: &LpFunction,
    v: &LpFunction,
    w: &LpFunction,
) -> Result<(LpFunction, LpFunction, LpFunction)> {
    if !u.same_space(v) || !u.same_space(w) {
        return Err(Error::SpaceMismatch);
    }
    const PHASE_TOL: f64 = 1e-6;
    let n = u.space.atoms();
    let mut u2 = Vec::with_capacity(n);
    let mut v2 = Vec::with_capacity(n);
    let mut w2 = Vec::with_capacity(n);
    for i in 0..n {
        let (ui, vi, wi) = (u.values[i], v.values[i], w.values[i]);
        let mv = vi.norm();
        if mv > 0.0 {
            let prod = vi * wi;
            let scale = prod.norm().max(1.0);
            if prod.im.abs() > PHASE_TOL * scale || prod.re < -PHASE_TOL * scale {
                return Err(Error::AtomPrecondition {
                    index: i,
                    detail: format!("v*w = {prod} is not nonnegative real"),
                });
            }
            let theta = vi.conj() / mv;
            u2.push(ui * theta);
            v2.push(Complex64::new(mv, 0.0));
            w2.push(Complex64::new((wi * vi).re / mv, 0.0));
        } else {
            let mw = wi.norm();
            if mw > 0.0 {
                let theta = wi / mw;
                u2.push(ui * theta);
                v2.push(Complex64::new(0.0, 0.0));
                w2.push(Complex64::new(mw, 0.0));
            } else {
                u2.push(ui);
                v2.push(Complex64::new(0.0, 0.0));
                w2.push(Complex64::new(0.0, 0.0));
            }
        }
    }
    let space = Arc::clone(&u.space);
    Ok((
        LpFunction {
            space: Arc::clone(&space),
            values: u2,
        },
        LpFunction {
            space: Arc::clone(&space),
            values: v2,
        },
        LpFunction { space, values: w2 },
    ))
}

/// `z = u/v` where `v > 0` and `z = 0` where `v = 0`.
///
/// Expects `v` nonnegative real atomwise (call after [`phase_reduction`]).
/// Consequently `(u - zv) zv = 0` atomwise.
pub fn quotient_z(u: &LpFunction, v: &LpFunction) -> Result<LpFunction> {
    if !u.same_space(v) {
        return Err(Error::SpaceMismatch);
    }
    let mut values = Vec::with_capacity(u.space.atoms());
    for (i, (&ui, &vi)) in u.values.iter().zip(&v.values).enumerate() {
        if vi.im.abs() > TOL_ALGEBRAIC * vi.norm().max(1.0) || vi.re < -TOL_ALGEBRAIC {
            return Err(Error::AtomPrecondition {
                index: i,
                detail: format!("v = {vi} is not nonnegative real"),
            });
        }
        if vi.re > 0.0 {
            values.push(ui / vi.re);
        } else {
            values.push(Complex64::new(0.0, 0.0));
        }
    }
    Ok(LpFunction {
        space: Arc::clone(&u.space),
        values,
    })
}

/// Defect of the disjoint-support split `‖u‖_p^p = ‖u - zv‖_p^p + ‖zv‖_p^p`,
/// where `z = quotient_z(u, v)`. Contract: at most `1e-12 · max(1, ‖u‖_p^p)`.
pub fn disjoint_split_check(
    u: &LpFunction,
    z: &LpFunction,
    v: &LpFunction,
    e: Exponents,
) -> Result<f64> {
    if !u.same_space(z) || !u.same_space(v) {
        return Err(Error::SpaceMismatch);
    }
    let zv = z.zip_with(v, |a, b| a * b)?;
    let rest = u.sub(&zv)?;
    Ok((lp_norm_pow(u, e) - lp_norm_pow(&rest, e) - lp_norm_pow(&zv, e)).abs())
}

/// The induced probability measure `dν = vw dμ = v^p dμ = w^q dμ` of a unit
/// nonnegative `v` and its norming witness `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedMeasure {
    base: Arc<MeasureSpace>,
    densities: Vec<f64>,
}

impl InducedMeasure {
    pub fn base(&self) -> &Arc<MeasureSpace> {
        &self.base
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn total_mass(&self) -> f64 {
        self.base
            .weights()
            .iter()
            .zip(&self.densities)
            .map(|(&w, &d)| w * d)
            .sum()
    }

    /// `∫ g dν = Σ w_i d_i g(i)` for an atomwise real integrand.
    pub fn integrate(&self, g: impl Fn(usize) -> f64) -> f64 {
        self.base
            .weights()
            .iter()
            .zip(&self.densities)
            .enumerate()
            .map(|(i, (&w, &d))| w * d * g(i))
            .sum()
    }

    /// `∫ g dν` for an atomwise complex integrand.
    pub fn integrate_complex(&self, g: impl Fn(usize) -> Complex64) -> Complex64 {
        self.base
            .weights()
            .iter()
            .zip(&self.densities)
            .enumerate()
            .map(|(i, (&w, &d))| w * d * g(i))
            .sum()
    }
}

/// Build the induced probability measure from a nonnegative unit `v` and its
/// norming witness `w`, checking that the three density formulas
/// `v_i w_i = v_i^p = w_i^q` agree atomwise.
pub fn induce_probability(
    v: &LpFunction,
    w: &LpFunction,
    e: Exponents,
) -> Result<InducedMeasure> {
    if !v.same_space(w) {
        return Err(Error::SpaceMismatch);
    }
    let norm = lp_norm(v, e);
    if (norm - 1.0).abs() > TOL_NORMALIZED {
        return Err(Error::NotNormalized {
            name: "v",
            norm,
            tol: TOL_NORMALIZED,
        });
    }
    let mut densities = Vec::with_capacity(v.space.atoms());
    for (i, (&vi, &wi)) in v.values.iter().zip(&w.values).enumerate() {
        if vi.im.abs() > TOL_ALGEBRAIC * vi.norm().max(1.0) || vi.re < -TOL_ALGEBRAIC {
            return Err(Error::AtomPrecondition {
                index: i,
                detail: format!("v = {vi} is not nonnegative real"),
            });
        }
        let d1 = (vi * wi).re;
        let d2 = vi.norm().powf(e.p());
        let d3 = wi.norm().powf(e.q());
        let scale = d1.abs().max(1.0);
        if (d1 - d2).abs() > TOL_ALGEBRAIC * scale || (d1 - d3).abs() > TOL_ALGEBRAIC * scale {
            return Err(Error::AtomPrecondition {
                index: i,
                detail: format!("densities disagree: vw = {d1}, v^p = {d2}, w^q = {d3}"),
            });
        }
        densities.push(d1);
    }
    let measure = InducedMeasure {
        base: Arc::clone(&v.space),
        densities,
    };
    let mass = measure.total_mass();
    if (mass - 1.0).abs() > TOL_NORMALIZED {
        return Err(Error::NotNormalized {
            name: "induced measure",
            norm: mass,
            tol: TOL_NORMALIZED,
        });
    }
    Ok(measure)
}
