//! Airy functions Ai(x), Bi(x) and their derivatives, from scratch.
//!
//! The evaluator is region-split in the classical way:
//!
//! - `|x| <= X_SWITCH`: Maclaurin series. Ai and Bi are the combinations
//!   `c1·f(x) ∓ c2·g(x)` (and `√3` times the sum for Bi) of two
//!   hypergeometric-type series f, g. Toward the outer end of the series
//!   range the combination cancels catastrophically — at x = 8 the sums have
//!   grown to ~1e5 while Ai ≈ 4.7e-8 — so the sums are accumulated in
//!   double-double arithmetic (see [`crate::dd`]), which keeps the result
//!   good to ~1e-15 relative over the whole series range.
//! - `x > X_SWITCH`: the exponential asymptotic expansions in
//!   ζ = (2/3)x^(3/2), optimally truncated (stop at the smallest term).
//! - `x < -X_SWITCH`: the trigonometric asymptotic expansions in the same ζ
//!   with phase θ = ζ − π/4, also optimally truncated. Accuracy out here is
//!   limited by phase rounding, which grows ∝ |x|^(3/2)·ε; the domain floor
//!   X_MIN keeps that below ~1e-12 absolute.
//!
//! Arguments outside [X_MIN, X_MAX] are rejected rather than evaluated
//! inaccurately (or, on the positive side, risking overflow of Bi).

use std::f64::consts::{FRAC_PI_4, PI};

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Bundled Ai, Bi, Ai′, Bi′ at a single argument.
#[derive(Clone, Copy, Debug)]
pub struct AiryValues {
    /// The argument the values were computed at.
    pub x: f64,
    /// Ai(x).
    pub ai: f64,
    /// Bi(x).
    pub bi: f64,
    /// dAi/dx.
    pub aip: f64,
    /// dBi/dx.
    pub bip: f64,
}

/// Series/asymptotic handover point, used symmetrically (series inclusive).
pub const X_SWITCH: f64 = 8.0;

/// Largest accepted argument. Bi(25) ≈ 3e34; much beyond that the
/// exponential factor heads for overflow, so larger arguments are rejected
/// rather than silently degraded.
pub const X_MAX: f64 = 25.0;

/// Most negative accepted argument. On this side both functions stay
/// bounded, but the evaluation error is dominated by rounding of the phase
/// ζ = (2/3)|x|^(3/2) (≈ 3.5e5 at the floor), i.e. it grows like
/// |x|^(3/2)·ε ≈ 1e-12 absolute here. Beyond the floor the digits quietly
/// rot, so the domain ends where ~11 correct digits can still be promised.
pub const X_MIN: f64 = -5000.0;

/// Series terms are added until `|term| <= SERIES_CUTOFF · |sum|`. The value
/// sits near the double-double roundoff floor: with ~32 carried digits and
/// up to ~10 digits lost to cancellation at the seam, a 1e-31 tail still
/// leaves ~1e-15 relative accuracy in the combined Ai.
const SERIES_CUTOFF: f64 = 1e-31;
const SERIES_MAX_TERMS: usize = 200;

/// Asymptotic sums take at most this many terms (optimal truncation stops
/// them earlier once terms start growing).
const ASYM_MAX_TERMS: usize = 20;

/// Length of the asymptotic coefficient tables. The oscillatory branch
/// consumes coefficients two at a time, so 20 terms need indices up to ~40.
const ASYM_COEFF_LEN: usize = 42;

// Ai(0) = 3^(-2/3)/Γ(2/3) and -Ai′(0) = 3^(-1/3)/Γ(1/3) as double-double
// constants (hi + lo), values from mpmath at 40 significant digits.
const C1: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const C2: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);
const SQRT3: Dd = Dd::new(1.7320508075688772, 1.0035084221806903e-16);

/// Evaluates Ai, Bi, Ai′, Bi′ at `x`.
///
/// Same input gives bit-identical output (pure f64 arithmetic, no lookup
/// state). Fails with a domain error for non-finite `x` or `x` outside
/// [`X_MIN`, `X_MAX`].
pub fn airy(x: f64) -> Result<AiryValues> {
    if !x.is_finite() || !(X_MIN..=X_MAX).contains(&x) {
        return Err(Error::Domain(format!(
            "Airy argument {x:e} outside the validated range [{X_MIN}, {X_MAX}]"
        )));
    }
    Ok(if x.abs() <= X_SWITCH {
        airy_series(x)
    } else if x > 0.0 {
        airy_asym_pos(x)
    } else {
        airy_asym_neg(x)
    })
}

/// Number of zeros of Ai on the open interval (x, 0), for x < 0, from the
/// standard asymptotic zero-location formula. A scan-bracketing sanity aid,
/// not an eigensolver component: the formula locates the k-th zero to ~5e-4
/// at k = 1 and improves rapidly, so counts are reliable for arguments that
/// keep a modest distance (≳ 1e-3) from an actual zero.
///
/// Fails with a domain error if `x >= 0` or `x < X_MIN`.
pub fn airy_zero_count_below(x: f64) -> Result<usize> {
    if x.is_nan() || x >= 0.0 {
        return Err(Error::Domain(format!("zero count needs x < 0, got {x}")));
    }
    if x < X_MIN {
        return Err(Error::Domain(format!(
            "zero count argument {x:e} below the validated floor {X_MIN}"
        )));
    }
    // The k-th negative zero is a_k ≈ -T(3π(4k-1)/8); T is increasing, the
    // zeros march monotonically away from the origin, so count upward until
    // the estimate passes x.
    let mut count = 0usize;
    loop {
        let t = 3.0 * PI * (4.0 * ((count + 1) as f64) - 1.0) / 8.0;
        if -zero_location(t) > x {
            count += 1;
        } else {
            return Ok(count);
        }
    }
}

/// T(t) = t^(2/3)·(1 + 5/48 t⁻² − 5/36 t⁻⁴ + 77125/82944 t⁻⁶); the k-th
/// negative zero of Ai is ≈ −T(3π(4k−1)/8).
fn zero_location(t: f64) -> f64 {
    let t2 = 1.0 / (t * t);
    t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0))))
}

/// Sums t_0 + t_1 + ... with t_0 = `first` and t_k = t_{k-1}·x³/denom(k),
/// entirely in double-double.
fn dd_series(first: Dd, x3: Dd, denom: impl Fn(usize) -> f64) -> Dd {
    let mut term = first;
    let mut sum = first;
    for k in 1..=SERIES_MAX_TERMS {
        term = term.mul(x3).div_f64(denom(k));
        sum = sum.add(term);
        if term.hi.abs() <= SERIES_CUTOFF * sum.hi.abs() {
            break;
        }
    }
    sum
}

fn airy_series(x: f64) -> AiryValues {
    let x3 = Dd::prod(x, x).mul_f64(x);

    // f  = Σ x^{3k} Π 1/((3j-1)(3j)),      f(0) = 1
    // g  = Σ x^{3k+1} Π 1/((3j)(3j+1)),    g(0) = 0, g′(0) = 1
    // and the term-by-term derivatives of both.
    let f = dd_series(Dd::from_f64(1.0), x3, |k| ((3 * k - 1) * (3 * k)) as f64);
    let g = dd_series(Dd::from_f64(x), x3, |k| ((3 * k) * (3 * k + 1)) as f64);
    let fp = dd_series(Dd::prod(x, x).mul_f64(0.5), x3, |k| {
        ((3 * k) * (3 * k + 2)) as f64
    });
    let gp = dd_series(Dd::from_f64(1.0), x3, |k| ((3 * k - 2) * (3 * k)) as f64);

    let c1f = C1.mul(f);
    let c2g = C2.mul(g);
    let c1fp = C1.mul(fp);
    let c2gp = C2.mul(gp);

    AiryValues {
        x,
        ai: c1f.sub(c2g).to_f64(),
        bi: SQRT3.mul(c1f.add(c2g)).to_f64(),
        aip: c1fp.sub(c2gp).to_f64(),
        bip: SQRT3.mul(c1fp.add(c2gp)).to_f64(),
    }
}

// Coefficients u_k (and companions v_k for the derivatives) of the standard
// asymptotic expansions, by recurrence:
//   u_0 = 1,  u_k = u_{k-1}·(6k-5)(6k-3)(6k-1) / ((2k-1)·216·k),
//   v_k = u_k·(6k+1)/(1-6k)   (v carries its own sign).
const ASYM_U: [f64; ASYM_COEFF_LEN] = asym_u();
const ASYM_V: [f64; ASYM_COEFF_LEN] = asym_v();

const fn asym_u() -> [f64; ASYM_COEFF_LEN] {
    let mut u = [1.0; ASYM_COEFF_LEN];
    let mut k = 1;
    while k < ASYM_COEFF_LEN {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        k += 1;
    }
    u
}

const fn asym_v() -> [f64; ASYM_COEFF_LEN] {
    let u = asym_u();
    let mut v = [1.0; ASYM_COEFF_LEN];
    let mut k = 1;
    while k < ASYM_COEFF_LEN {
        let kf = k as f64;
        v[k] = u[k] * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        k += 1;
    }
    v
}

/// Sums Σ_j coeff[offset + stride·j]·z^j with optimal truncation: terms are
/// added while their magnitude keeps shrinking; the first term to grow is
/// excluded and ends the sum. At most [`ASYM_MAX_TERMS`] terms are taken.
fn asym_sum(coeff: &[f64], offset: usize, stride: usize, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zj = 1.0;
    let mut prev = f64::INFINITY;
    let mut added = 0usize;
    let mut idx = offset;
    while idx < coeff.len() && added < ASYM_MAX_TERMS {
        let term = coeff[idx] * zj;
        if term.abs() > prev {
            break;
        }
        sum += term;
        prev = term.abs();
        zj *= z;
        idx += stride;
        added += 1;
    }
    sum
}

/// Exponential branch, x > X_SWITCH:
///   Ai  =  e^{-ζ}/(2√π x^{1/4}) · Σ (-1)^k u_k ζ^{-k}
///   Bi  =  e^{+ζ}/( √π x^{1/4}) · Σ        u_k ζ^{-k}
///   Ai′ = -x^{1/4} e^{-ζ}/(2√π) · Σ (-1)^k v_k ζ^{-k}
///   Bi′ =  x^{1/4} e^{+ζ}/( √π) · Σ        v_k ζ^{-k}
fn airy_asym_pos(x: f64) -> AiryValues {
    let sqrt_x = x.sqrt();
    let zeta = (2.0 / 3.0) * x * sqrt_x;
    let x4 = sqrt_x.sqrt();
    let sqrt_pi = PI.sqrt();
    let em = (-zeta).exp();
    let ep = zeta.exp();
    AiryValues {
        x,
        ai: em * asym_sum(&ASYM_U, 0, 1, -1.0 / zeta) / (2.0 * sqrt_pi * x4),
        bi: ep * asym_sum(&ASYM_U, 0, 1, 1.0 / zeta) / (sqrt_pi * x4),
        aip: -x4 * em * asym_sum(&ASYM_V, 0, 1, -1.0 / zeta) / (2.0 * sqrt_pi),
        bip: x4 * ep * asym_sum(&ASYM_V, 0, 1, 1.0 / zeta) / sqrt_pi,
    }
}

/// Trigonometric branch, x < -X_SWITCH, written with t = -x and
/// θ = ζ − π/4:
///   Ai  = (P cos θ + Q sin θ)/(√π t^{1/4})
///   Bi  = (Q cos θ − P sin θ)/(√π t^{1/4})
///   Ai′ = t^{1/4}(R sin θ − S cos θ)/√π
///   Bi′ = t^{1/4}(R cos θ + S sin θ)/√π
/// where P, R take the even-index coefficients and Q, S the odd ones, all
/// in powers of −1/ζ².
fn airy_asym_neg(x: f64) -> AiryValues {
    let t = -x;
    let sqrt_t = t.sqrt();
    let zeta = (2.0 / 3.0) * t * sqrt_t;
    let theta = zeta - FRAC_PI_4;
    let (sin_th, cos_th) = theta.sin_cos();
    let t4 = sqrt_t.sqrt();
    let sqrt_pi = PI.sqrt();

    let z2 = -1.0 / (zeta * zeta);
    let p = asym_sum(&ASYM_U, 0, 2, z2);
    let q = asym_sum(&ASYM_U, 1, 2, z2) / zeta;
    let r = asym_sum(&ASYM_V, 0, 2, z2);
    let s = asym_sum(&ASYM_V, 1, 2, z2) / zeta;

    AiryValues {
        x,
        ai: (p * cos_th + q * sin_th) / (sqrt_pi * t4),
        bi: (q * cos_th - p * sin_th) / (sqrt_pi * t4),
        aip: t4 * (r * sin_th - s * cos_th) / sqrt_pi,
        bip: t4 * (r * cos_th + s * sin_th) / sqrt_pi,
    }
}
