//! Scalar layer: conjugate exponents, the Young gap, the normalized gap
//! `f(u) = |u|^p - 1 + p(1 - Re u)`, and the comparison ratio `|u-1|^p / f(u)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accepted exponent band. Outside it `|u|^p` overflows f64 for moderate `u`,
/// or the ratio's near-1 singularity (p < 2) becomes numerically hostile.
pub const P_MIN: f64 = 1.001;
pub const P_MAX: f64 = 64.0;

/// Distance from `u = 1` below which the comparison ratio is treated as
/// singular: both `|u-1|^p` and `f(u)` vanish there and the quotient is noise.
pub const RATIO_SINGULARITY_GUARD: f64 = 1e-14;

fn check_p(p: f64) -> Result<()> {
    if !p.is_finite() || !(P_MIN..=P_MAX).contains(&p) {
        return Err(Error::ExponentOutOfRange {
            p,
            min: P_MIN,
            max: P_MAX,
        });
    }
    Ok(())
}

/// Conjugate exponent `q` of `p`, so that `1/p + 1/q = 1`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(p / (p - 1.0))
}

/// A validated conjugate exponent pair with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponents {
    p: f64,
    q: f64,
}

impl Exponents {
    pub fn new(p: f64) -> Result<Self> {
        let q = conjugate_exponent(p)?;
        Ok(Exponents { p, q })
    }

    pub fn p(self) -> f64 {
        self.p
    }

    pub fn q(self) -> f64 {
        self.q
    }
}

impl<'de> Deserialize<'de> for Exponents {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            p: f64,
            q: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let e = Exponents::new(raw.p).map_err(serde::de::Error::custom)?;
        if (e.q - raw.q).abs() > 1e-12 * e.q.max(1.0) {
            return Err(serde::de::Error::custom(format!(
                "inconsistent exponent pair: p = {}, q = {}",
                raw.p, raw.q
            )));
        }
        Ok(e)
    }
}

/// Young gap `|u|^p/p + |v|^q/q - Re(uv)`.
///
/// Nonnegative for all finite scalars; vanishes exactly on the equality set
/// `uv >= 0` and `|u|^p = |v|^q`.
pub fn young_gap(u: Complex64, v: Complex64, e: Exponents) -> f64 {
    u.norm().powf(e.p) / e.p + v.norm().powf(e.q) / e.q - (u * v).re
}

/// Tolerance-based test for the Young equality set:
/// `Im(uv)` within `tol`, `Re(uv) >= -tol`, and `|u|^p = |v|^q` within `tol`.
pub fn young_equality_holds(u: Complex64, v: Complex64, e: Exponents, tol: f64) -> bool {
    let uv = u * v;
    uv.im.abs() <= tol
        && uv.re >= -tol
        && (u.norm().powf(e.p) - v.norm().powf(e.q)).abs() <= tol
}

/// Normalized gap `f(u) = |u|^p - 1 + p(1 - Re u)`.
///
/// Equals `p * young_gap(u, 1)`; strictly positive except `f(1) = 0`.
pub fn normalized_gap(u: Complex64, e: Exponents) -> f64 {
    u.norm().powf(e.p) - 1.0 + e.p * (1.0 - u.re)
}

/// Comparison ratio `|u-1|^p / f(u)` for `u` away from 1.
///
/// At p = 2 the ratio is identically 1 (`|u-1|^2 = f(u)` algebraically).
/// Errors when `|u-1|` is below [`RATIO_SINGULARITY_GUARD`] or the quotient
/// is not a strictly positive finite number.
pub fn comparison_ratio(u: Complex64, e: Exponents) -> Result<f64> {
    let dist = (u - Complex64::new(1.0, 0.0)).norm();
    if dist < RATIO_SINGULARITY_GUARD {
        return Err(Error::RatioSingularity {
            u,
            guard: RATIO_SINGULARITY_GUARD,
        });
    }
    let r = dist.powf(e.p) / normalized_gap(u, e);
    if !r.is_finite() {
        return Err(Error::NonFiniteSample { u });
    }
    if r <= 0.0 {
        // cancellation in f(u) can only push the quotient nonpositive in the
        // immediate vicinity of the singularity
        return Err(Error::RatioSingularity {
            u,
            guard: RATIO_SINGULARITY_GUARD,
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conjugate_exponent_fixed_points() {
        assert!((conjugate_exponent(2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((conjugate_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((conjugate_exponent(1.5).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn conjugate_exponent_involution_where_composable() {
        // both p and q must lie in the accepted band for the double application
        for &p in &[64.0 / 63.0 + 1e-6, 1.2, 1.5, 2.0, 3.0, 10.0, 64.0] {
            let q = conjugate_exponent(p).unwrap();
            let back = conjugate_exponent(q).unwrap();
            assert!((back - p).abs() <= 1e-12 * p.max(1.0), "p = {p}");
        }
    }

    #[test]
    fn conjugate_exponent_rejects_out_of_band() {
        assert!(matches!(
            conjugate_exponent(0.5),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            conjugate_exponent(1.0),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            conjugate_exponent(65.0),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            conjugate_exponent(f64::NAN),
            Err(Error::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn young_gap_examples() {
        let e3 = Exponents::new(3.0).unwrap();
        assert!(young_gap(c(1.0, 0.0), c(1.0, 0.0), e3).abs() < 1e-15);
        let e2 = Exponents::new(2.0).unwrap();
        assert!(young_gap(c(0.0, 0.0), c(0.0, 0.0), e2).abs() < 1e-15);
        assert!((young_gap(c(2.0, 0.0), c(1.0, 0.0), e2) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn young_equality_examples() {
        let e2 = Exponents::new(2.0).unwrap();
        assert!(young_equality_holds(c(1.0, 0.0), c(1.0, 0.0), e2, 1e-9));
        assert!(!young_equality_holds(c(0.0, 1.0), c(1.0, 0.0), e2, 1e-9));
        let s = 2.0_f64.sqrt();
        assert!(young_equality_holds(c(s, 0.0), c(s, 0.0), e2, 1e-9));
    }

    #[test]
    fn normalized_gap_matches_p2_identity() {
        let e2 = Exponents::new(2.0).unwrap();
        assert!(normalized_gap(c(1.0, 0.0), e2).abs() < 1e-15);
        assert!((normalized_gap(c(-1.0, 0.0), e2) - 4.0).abs() < 1e-12);
        // |u - 1|^2 for u = x + iy
        let u = c(0.3, -0.7);
        let expect = (u.re - 1.0).powi(2) + u.im.powi(2);
        assert!((normalized_gap(u, e2) - expect).abs() < 1e-12);
    }

    #[test]
    fn normalized_gap_is_scaled_young_gap() {
        let e = Exponents::new(3.5).unwrap();
        for &u in &[c(2.0, 1.0), c(-0.3, 0.4), c(0.0, 0.0), c(5.0, -2.0)] {
            let lhs = normalized_gap(u, e);
            let rhs = e.p() * young_gap(u, c(1.0, 0.0), e);
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn comparison_ratio_examples() {
        let e2 = Exponents::new(2.0).unwrap();
        assert!((comparison_ratio(c(-1.0, 0.0), e2).unwrap() - 1.0).abs() < 1e-12);
        assert!((comparison_ratio(c(1.0, 1.0), e2).unwrap() - 1.0).abs() < 1e-12);
        let e4 = Exponents::new(4.0).unwrap();
        let r = comparison_ratio(c(3.0, 0.0), e4).unwrap();
        assert!((r - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn comparison_ratio_singularity_guard() {
        let e = Exponents::new(1.5).unwrap();
        assert!(matches!(
            comparison_ratio(c(1.0, 0.0), e),
            Err(Error::RatioSingularity { .. })
        ));
        assert!(matches!(
            comparison_ratio(c(1.0 + 1e-15, 0.0), e),
            Err(Error::RatioSingularity { .. })
        ));
    }

    #[test]
    fn far_field_ratio_approaches_one() {
        // f(u) and |u-1|^p are asymptotically equal as |u| grows
        for &p in &[1.5, 2.0, 3.0] {
            let e = Exponents::new(p).unwrap();
            for k in 0..64 {
                let theta = std::f64::consts::PI * k as f64 / 63.0;
                let u = Complex64::from_polar(1e4, theta);
                let r = comparison_ratio(u, e).unwrap();
                assert!((r - 1.0).abs() <= 0.05, "p = {p}, theta = {theta}: r = {r}");
            }
        }
    }
}
