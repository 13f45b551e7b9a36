//! Closed-form solution of the tilted-box eigenproblem.
//!
//! The substitution that removes the linear potential maps the box onto the
//! Airy equation. With
//!
//! ```text
//!     eta(xi) = -alpha^(1/3) (xi + beta / alpha)
//! ```
//!
//! the boundary walls land at
//!
//! ```text
//!     eta_hat = eta(-1) = (alpha - beta) / alpha^(2/3)    (left wall)
//!     eta_bar = eta(+1) = -(alpha + beta) / alpha^(2/3)   (right wall)
//! ```
//!
//! with `eta_hat - eta_bar = 2 alpha^(1/3)` independent of `beta`. A
//! solution vanishing at both walls exists exactly when the characteristic
//! determinant
//!
//! ```text
//!     D(beta) = Ai(eta_hat) Bi(eta_bar) - Ai(eta_bar) Bi(eta_hat)
//! ```
//!
//! vanishes, and the eigenfunction is then proportional to
//! `f(eta) = Ai(eta) - w Bi(eta)` with the mixing ratio `w = Ai/Bi`
//! evaluated at either wall (both give the same value at a root of `D`).
//! Because `f` solves the Airy equation and vanishes at both endpoints, the
//! normalization integral collapses to boundary data:
//!
//! ```text
//!     J = integral of f(eta)^2 over [eta_bar, eta_hat]
//!       = f'(eta_bar)^2 - f'(eta_hat)^2
//! ```
//!
//! which also yields the squared wall slopes of the normalized state
//! ("boundary forces") and the equilibrium identity
//! `(F_right - F_left) / 2 = alpha`.
//!
//! Eigenvalues are isolated by a sign scan of `D` upward from `beta =
//! -alpha` (no roots exist below the bottom of the potential) and refined
//! with the safeguarded Newton iteration from [`crate::roots`], using the
//! analytic derivative `dD/dbeta`.
//!
//! At `alpha = 0` the transformation is singular and the problem reduces to
//! the flat box, solved in closed form: `beta_k = (k pi / 2)^2` with sine
//! eigenfunctions. [`eigenvalues`] dispatches there automatically;
//! [`characteristic`] itself has no zero-field meaning and rejects it.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::airy::{self, AiryValues};
use crate::error::{Error, Result};
use crate::gauss::{self, GaussRule};
use crate::roots;

/// Largest accepted tilt strength.
///
/// At `alpha = 1000` the left wall sits at `eta_hat = 2 alpha^(1/3) = 20`
/// for the lowest scan point; larger tilts would push wall coordinates past
/// the validated range of the Airy evaluator.
pub const ALPHA_MAX: f64 = 1000.0;

/// Ceiling on `|D(beta)|` for an accepted eigenvalue, relative to
/// `max(1, bracket scale)`.
///
/// The determinant's magnitude varies enormously with tilt: near `alpha =
/// 1000` it swings through ~1e21 (one wall sits far up `Bi`'s exponential
/// growth) while for nearly flat tilts it oscillates at ~1e-3 with an
/// absolute noise floor around 1e-12 (both walls thousands of units deep).
/// Scaling by the bracket magnitude — floored at one so tiny-amplitude
/// brackets are not held below their own noise — keeps the ceiling well
/// above evaluation noise and well below genuine misses in both regimes.
const RESIDUAL_CEILING: f64 = 1e-10;

/// Scan step for isolating roots of `D`, in units of `beta`.
///
/// The smallest spacing between consecutive eigenvalues over the supported
/// range is the zero-field ground gap `3 pi^2 / 4`; an eighth of `pi^2`
/// resolves every sign change with a factor-six margin.
const SCAN_STEP: f64 = PI * PI / 8.0;

/// How far above `-alpha` the root scan may travel, in units of
/// `alpha^(2/3)`.
///
/// `beta = -alpha + 5000 alpha^(2/3)` is where the right-wall coordinate
/// `eta_bar` reaches the deep edge of the Airy evaluator's validated range,
/// so the scan must stop there.
const SCAN_SPAN: f64 = 5000.0;

/// The particle-in-a-box eigenproblem at a fixed tilt strength.
///
/// Wraps a validated `alpha >= 0` (uniform-field coupling) and provides the
/// wall-coordinate transformation shared by every solver entry point.
#[derive(Clone, Copy, Debug)]
pub struct FieldProblem {
    alpha: f64,
}

impl FieldProblem {
    /// Validates the tilt strength. `alpha` must be finite, non-negative and
    /// at most [`ALPHA_MAX`].
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=ALPHA_MAX).contains(&alpha) {
            return Err(Error::Domain(format!(
                "tilt strength alpha = {alpha} outside [0, {ALPHA_MAX}]"
            )));
        }
        Ok(Self { alpha })
    }

    /// The tilt strength this problem was built with.
    #[must_use]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `alpha^(1/3)`.
    fn cbrt_alpha(&self) -> f64 {
        self.alpha.cbrt()
    }

    /// `alpha^(2/3)`.
    fn cbrt_alpha_sq(&self) -> f64 {
        let c = self.alpha.cbrt();
        c * c
    }

    /// Wall images `(eta_hat, eta_bar)` of `xi = -1` and `xi = +1` under the
    /// Airy transformation at trial eigenvalue `beta`.
    fn wall_coordinates(&self, beta: f64) -> (f64, f64) {
        let a23 = self.cbrt_alpha_sq();
        ((self.alpha - beta) / a23, -(self.alpha + beta) / a23)
    }

    /// Errors unless `alpha > 0`; the Airy transformation degenerates at
    /// zero tilt.
    fn require_tilted(&self) -> Result<()> {
        if self.alpha == 0.0 {
            return Err(Error::Domain(
                "the characteristic determinant is defined only for alpha > 0 \
                 (the zero-field problem is solved in closed form)"
                    .to_owned(),
            ));
        }
        Ok(())
    }
}

/// Airy-variable data of one eigenfunction.
///
/// Absent for zero-field states, whose eigenfunctions are closed-form sines.
#[derive(Clone, Copy, Debug)]
pub struct AiryForm {
    /// Left-wall coordinate `eta_hat = eta(-1)`.
    pub eta_hat: f64,
    /// Right-wall coordinate `eta_bar = eta(+1)`; always `eta_hat - 2 alpha^(1/3)`.
    pub eta_bar: f64,
    /// Mixing ratio: the eigenfunction is proportional to `Ai(eta) - w Bi(eta)`.
    pub w: f64,
    /// Normalization integral `J = f'(eta_bar)^2 - f'(eta_hat)^2`; positive
    /// for a genuine bound state.
    pub j_norm: f64,
    /// Amplitude `A = sqrt(2 alpha^(1/3) / J)` normalizing
    /// `(1/2) integral psi^2 dxi = 1`.
    pub amplitude: f64,
    /// Overall sign (`+1` or `-1`) fixing `dpsi/dxi > 0` at the left wall.
    pub sign: f64,
}

/// One solved bound state.
#[derive(Clone, Copy, Debug)]
pub struct EigenState {
    /// 1-based index in order of increasing eigenvalue.
    pub k: usize,
    /// Eigenvalue `beta`.
    pub beta: f64,
    /// Airy-transform data; `None` when `alpha = 0`.
    pub airy: Option<AiryForm>,
}

/// Squared wall slopes of a normalized eigenfunction.
///
/// `(dpsi/dxi)^2` at a wall measures the momentum transfer to that wall;
/// halves of these are the physical wall forces, and their half-difference
/// equals the tilt strength exactly (the eigenstate is in mechanical
/// equilibrium).
#[derive(Clone, Copy, Debug)]
pub struct ForceBalance {
    /// 1-based state index.
    pub k: usize,
    /// Eigenvalue `beta`.
    pub beta: f64,
    /// `(dpsi/dxi)^2` at `xi = -1`.
    pub force_left: f64,
    /// `(dpsi/dxi)^2` at `xi = +1`.
    pub force_right: f64,
}

impl ForceBalance {
    /// Physical force on the left wall, `F_left / 2` in squared-slope units.
    #[must_use]
    pub fn half_left(&self) -> f64 {
        0.5 * self.force_left
    }

    /// Physical force on the right wall.
    #[must_use]
    pub fn half_right(&self) -> f64 {
        0.5 * self.force_right
    }

    /// `(force_right - force_left) / 2`; equals `alpha` for an eigenstate.
    #[must_use]
    pub fn half_difference(&self) -> f64 {
        0.5 * (self.force_right - self.force_left)
    }
}

/// The characteristic determinant `D(beta)` whose zeros are the eigenvalues.
///
/// Requires `alpha > 0`; errors if a wall coordinate leaves the validated
/// Airy range (`beta` far outside the physical spectrum).
pub fn characteristic(problem: &FieldProblem, beta: f64) -> Result<f64> {
    problem.require_tilted()?;
    let (eta_hat, eta_bar) = problem.wall_coordinates(beta);
    let top = airy::airy(eta_hat)?;
    let bot = airy::airy(eta_bar)?;
    Ok(top.ai * bot.bi - bot.ai * top.bi)
}

/// Analytic derivative `dD/dbeta`, by the chain rule through both wall
/// coordinates (`d eta / d beta = -alpha^(-2/3)` at either wall).
pub fn characteristic_derivative(problem: &FieldProblem, beta: f64) -> Result<f64> {
    problem.require_tilted()?;
    let (eta_hat, eta_bar) = problem.wall_coordinates(beta);
    let top = airy::airy(eta_hat)?;
    let bot = airy::airy(eta_bar)?;
    let bracket = top.aip * bot.bi + top.ai * bot.bip - bot.aip * top.bi - bot.ai * top.bip;
    Ok(-bracket / problem.cbrt_alpha_sq())
}

/// The lowest `count` bound states, in increasing eigenvalue order.
///
/// Zero tilt dispatches to the closed-form flat-box spectrum. Otherwise the
/// sign scan of `D` starts at `beta = -alpha` (the bottom of the potential,
/// below which `D` has no zeros) and each bracket is refined by safeguarded
/// Newton with the analytic derivative. A refined root is accepted when the
/// iteration converged or its residual is below the scale-aware
/// [`RESIDUAL_CEILING`]; the latter covers nearly-flat tilts, where the
/// determinant is evaluated at wall coordinates thousands of units deep and
/// its noise floor sits above the usual relative tolerance.
///
/// Errors (tagged with the 1-based index of the offending state) if the scan
/// exhausts the validated window before finding `count` roots, or if a
/// refinement fails outright.
pub fn eigenvalues(problem: &FieldProblem, count: usize) -> Result<Vec<EigenState>> {
    if problem.alpha == 0.0 {
        return Ok(zero_field_eigenvalues(count));
    }

    let scan_lo = -problem.alpha;
    let scan_hi = scan_lo + SCAN_SPAN * problem.cbrt_alpha_sq();
    let f = |beta: f64| {
        characteristic(problem, beta).expect("scan window keeps wall coordinates in range")
    };
    let df = |beta: f64| {
        characteristic_derivative(problem, beta)
            .expect("scan window keeps wall coordinates in range")
    };

    let brackets = roots::scan_brackets(f, scan_lo, scan_hi, SCAN_STEP, count);
    if brackets.len() < count {
        return Err(Error::for_state(
            brackets.len() + 1,
            Error::Domain(format!(
                "no further sign change of the characteristic determinant below \
                 beta = {scan_hi:.6e}, the edge of the validated search window \
                 (alpha = {})",
                problem.alpha
            )),
        ));
    }

    let mut states = Vec::with_capacity(count);
    for (index, bracket) in brackets.iter().enumerate() {
        let k = index + 1;
        let scale = bracket.f_lo.abs().max(bracket.f_hi.abs());
        let tol_x = 1e-13 * (1.0 + bracket.lo.abs().max(bracket.hi.abs()));
        let refined = roots::newton_safeguarded(f, df, bracket, tol_x, 1e-12 * scale, 100)
            .map_err(|e| Error::for_state(k, e))?;
        if !refined.converged && refined.residual.abs() >= RESIDUAL_CEILING * scale.max(1.0) {
            return Err(Error::for_state(
                k,
                Error::NonConvergence {
                    iterations: refined.iterations,
                    residual: refined.residual,
                },
            ));
        }
        states.push(build_state(problem, k, refined.root)?);
    }
    Ok(states)
}

/// Closed-form flat-box spectrum: `beta_k = (k pi / 2)^2`.
#[must_use]
pub fn zero_field_eigenvalues(count: usize) -> Vec<EigenState> {
    (1..=count)
        .map(|k| {
            let half_wavenumber = k as f64 * FRAC_PI_2;
            EigenState {
                k,
                beta: half_wavenumber * half_wavenumber,
                airy: None,
            }
        })
        .collect()
}

/// Assembles the Airy-variable eigenfunction data for a refined root.
fn build_state(problem: &FieldProblem, k: usize, beta: f64) -> Result<EigenState> {
    let (eta_hat, eta_bar) = problem.wall_coordinates(beta);
    let top = airy::airy(eta_hat)?;
    let bot = airy::airy(eta_bar)?;
    // Both walls give the same mixing ratio at a root of D; take it from the
    // wall with the larger |Bi| so the division never amplifies error.
    let w = if top.bi.abs() >= bot.bi.abs() {
        top.ai / top.bi
    } else {
        bot.ai / bot.bi
    };
    let fp_hat = top.aip - w * top.bip;
    let fp_bar = bot.aip - w * bot.bip;
    let j_norm = fp_bar * fp_bar - fp_hat * fp_hat;
    if !(j_norm.is_finite() && j_norm > 0.0) {
        return Err(Error::for_state(
            k,
            Error::Domain(format!(
                "normalization integral J = {j_norm:.6e} is not positive; \
                 beta = {beta:.12e} is not a genuine bound state"
            )),
        ));
    }
    let amplitude = (2.0 * problem.cbrt_alpha() / j_norm).sqrt();
    // The Airy variable runs against xi, so a negative slope in eta is a
    // positive slope in xi at the left wall.
    let sign = if fp_hat < 0.0 { 1.0 } else { -1.0 };
    Ok(EigenState {
        k,
        beta,
        airy: Some(AiryForm {
            eta_hat,
            eta_bar,
            w,
            j_norm,
            amplitude,
            sign,
        }),
    })
}

/// `f(eta) = Ai(eta) - w Bi(eta)` and its derivative at one wall coordinate.
fn wall_slope(values: &AiryValues, w: f64) -> f64 {
    values.aip - w * values.bip
}

/// The normalized eigenfunction `psi_k(xi)`, for `xi` in `[-1, 1]`.
///
/// Normalization is `(1/2) integral psi^2 dxi = 1` and the sign convention
/// is a positive slope at the left wall. Zero-field states evaluate the
/// closed-form sine `sqrt(2) sin(k pi (xi + 1) / 2)`.
pub fn eigenfunction(problem: &FieldProblem, state: &EigenState, xi: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&xi) {
        return Err(Error::Domain(format!(
            "position xi = {xi} outside the box [-1, 1]"
        )));
    }
    match &state.airy {
        None => Ok(SQRT_2 * (state.k as f64 * FRAC_PI_2 * (xi + 1.0)).sin()),
        Some(form) => {
            let eta = -problem.cbrt_alpha() * (xi + state.beta / problem.alpha());
            let v = airy::airy(eta)?;
            Ok(form.sign * form.amplitude * (v.ai - form.w * v.bi))
        }
    }
}

/// Recomputes the closed-form normalization `J = f'(eta_bar)^2 -
/// f'(eta_hat)^2` from the state's wall data.
///
/// # Panics
///
/// Panics for zero-field states, which carry no Airy form.
#[must_use]
pub fn j_analytic(state: &EigenState) -> f64 {
    let form = state
        .airy
        .as_ref()
        .expect("zero-field states have no Airy normalization integral");
    let top = airy::airy(form.eta_hat).expect("stored wall coordinate is in range");
    let bot = airy::airy(form.eta_bar).expect("stored wall coordinate is in range");
    let fp_hat = wall_slope(&top, form.w);
    let fp_bar = wall_slope(&bot, form.w);
    fp_bar * fp_bar - fp_hat * fp_hat
}

/// The same normalization integral by Gauss-Legendre quadrature of
/// `f(eta)^2` over `[eta_bar, eta_hat]` — an independent check on the
/// boundary-data formula behind [`j_analytic`].
///
/// # Panics
///
/// Panics for zero-field states, which carry no Airy form.
#[must_use]
pub fn j_quadrature(state: &EigenState, rule: &GaussRule) -> f64 {
    let form = state
        .airy
        .as_ref()
        .expect("zero-field states have no Airy normalization integral");
    gauss::integrate(
        |eta| {
            let v = airy::airy(eta).expect("quadrature nodes stay between the walls");
            let f = v.ai - form.w * v.bi;
            f * f
        },
        form.eta_bar,
        form.eta_hat,
        rule,
    )
}

/// Squared wall slopes of the normalized eigenfunction.
///
/// For tilted states these come from the boundary data already stored on the
/// state: `force = (2 alpha / J) f'(wall)^2`. Zero-field states have the
/// symmetric closed form `2 beta` at both walls.
#[must_use]
pub fn boundary_forces(problem: &FieldProblem, state: &EigenState) -> ForceBalance {
    match &state.airy {
        None => ForceBalance {
            k: state.k,
            beta: state.beta,
            force_left: 2.0 * state.beta,
            force_right: 2.0 * state.beta,
        },
        Some(form) => {
            let top = airy::airy(form.eta_hat).expect("stored wall coordinate is in range");
            let bot = airy::airy(form.eta_bar).expect("stored wall coordinate is in range");
            let fp_hat = wall_slope(&top, form.w);
            let fp_bar = wall_slope(&bot, form.w);
            let scale = 2.0 * problem.alpha() / form.j_norm;
            ForceBalance {
                k: state.k,
                beta: state.beta,
                force_left: scale * fp_hat * fp_hat,
                force_right: scale * fp_bar * fp_bar,
            }
        }
    }
}

/// Wall forces for states `1..=count`, solving the spectrum first.
pub fn force_sweep(problem: &FieldProblem, count: usize) -> Result<Vec<ForceBalance>> {
    let states = eigenvalues(problem, count)?;
    Ok(states
        .iter()
        .map(|s| boundary_forces(problem, s))
        .collect())
}
