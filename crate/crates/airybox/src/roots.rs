//! One-dimensional root isolation and polishing.
//!
//! Two stages, matching how the eigenvalue search uses them: a uniform-step
//! sign-change scan that produces [`Bracket`]s, and a safeguarded
//! Newton-Raphson that polishes one bracket to a root — every Newton step
//! that would leave the current bracket is replaced by bisection, so the
//! bracket shrinks monotonically and convergence is guaranteed for any
//! continuous sign change.

use crate::error::{Error, Result};

/// An interval with a strict sign change: `lo < hi`, `f_lo · f_hi < 0`.
///
/// The scan can also emit a *degenerate* bracket (width `step·1e-12`) when a
/// sample hits a root exactly; for a simple root the endpoint signs still
/// straddle.
#[derive(Clone, Copy, Debug)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Outcome of a polish run. `converged` records whether the residual met
/// `tol_f`; a run that stopped on bracket width alone reports the root it
/// reached with `converged = false` rather than erroring, so callers can
/// apply their own residual policy.
#[derive(Clone, Copy, Debug)]
pub struct RootResult {
    pub root: f64,
    /// f(root) at the returned point.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Walks `[lo, hi]` in steps of `step`, recording a [`Bracket`] around every
/// sign change of the sampled values, stopping after `max_roots` brackets.
/// Roots closer together than `step` (or even-order touches) can be missed —
/// the caller chooses `step` from what it knows about root spacing.
///
/// Returns an empty vector if no sign change is found. An exact zero at a
/// sample point becomes a degenerate bracket of width `step·1e-12` centered
/// there (clipped to the scan range), and scanning resumes past it.
pub fn scan_brackets(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    max_roots: usize,
) -> Vec<Bracket> {
    assert!(lo < hi, "scan range must have lo < hi");
    assert!(step > 0.0, "scan step must be positive");

    let mut out = Vec::new();
    if max_roots == 0 {
        return out;
    }

    let emit_degenerate = |f: &mut dyn FnMut(f64) -> f64, x: f64, out: &mut Vec<Bracket>| {
        let half = 0.5 * step * 1e-12;
        let a = (x - half).max(lo);
        let b = (x + half).min(hi);
        out.push(Bracket {
            lo: a,
            hi: b,
            f_lo: f(a),
            f_hi: f(b),
        });
    };

    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        emit_degenerate(&mut f, lo, &mut out);
    }

    let mut i = 1usize;
    loop {
        if out.len() >= max_roots {
            break;
        }
        let x = (lo + (i as f64) * step).min(hi);
        let fx = f(x);
        if fx == 0.0 {
            emit_degenerate(&mut f, x, &mut out);
        } else if f_prev != 0.0 && f_prev * fx < 0.0 {
            out.push(Bracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        if x >= hi {
            break;
        }
        x_prev = x;
        f_prev = fx;
        i += 1;
    }
    out
}

/// Newton-Raphson inside a bracket, with bisection as the safeguard.
///
/// Every iterate is kept strictly inside the current bracket (a Newton step
/// that lands outside — or fails to be finite — is replaced by the
/// midpoint), and each function evaluation shrinks the bracket from one
/// side, so the width decreases monotonically. Stops when `|f| <= tol_f` or
/// the bracket width reaches `tol_x`; after that, up to four extra Newton
/// steps are taken, each kept only if it strictly reduces `|f|` and stays in
/// the *original* bracket, which drives the residual to its evaluation noise
/// floor when `tol_x` was the stopping trigger.
///
/// Errors with [`Error::NonConvergence`] when `max_iter` runs out (a
/// pathological f for the given bracket; rescan with a finer step) and with
/// a domain error for a bracket without a sign change.
pub fn newton_safeguarded(
    mut f: impl FnMut(f64) -> f64,
    mut df: impl FnMut(f64) -> f64,
    bracket: &Bracket,
    tol_x: f64,
    tol_f: f64,
    max_iter: usize,
) -> Result<RootResult> {
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        f_hi,
    } = *bracket;

    // An endpoint may already be the root (degenerate brackets).
    if f_lo.abs() <= tol_f {
        return Ok(RootResult {
            root: lo,
            residual: f_lo,
            iterations: 0,
            converged: true,
        });
    }
    if f_hi.abs() <= tol_f {
        return Ok(RootResult {
            root: hi,
            residual: f_hi,
            iterations: 0,
            converged: true,
        });
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi || f_lo * f_hi >= 0.0 {
        return Err(Error::Domain(format!(
            "not a bracket: [{lo}, {hi}] with f = [{f_lo:e}, {f_hi:e}]"
        )));
    }
    let (orig_lo, orig_hi) = (lo, hi);

    let mut x = 0.5 * (lo + hi);
    let mut fx;
    for iteration in 1..=max_iter {
        fx = f(x);
        // Shrink the bracket around the sign change.
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        if fx.abs() <= tol_f || (hi - lo) <= tol_x {
            return Ok(polish(&mut f, &mut df, x, fx, orig_lo, orig_hi, tol_f, iteration));
        }
        let slope = df(x);
        let newton = x - fx / slope;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: f(0.5 * (lo + hi)),
    })
}

/// Post-convergence refinement: a few full Newton steps accepted only while
/// `|f|` strictly decreases and the iterate stays inside the original
/// bracket.
#[allow(clippy::too_many_arguments)]
fn polish(
    f: &mut impl FnMut(f64) -> f64,
    df: &mut impl FnMut(f64) -> f64,
    mut x: f64,
    mut fx: f64,
    lo: f64,
    hi: f64,
    tol_f: f64,
    iterations: usize,
) -> RootResult {
    for _ in 0..4 {
        if fx == 0.0 {
            break;
        }
        let slope = df(x);
        let next = x - fx / slope;
        if !next.is_finite() || next < lo || next > hi {
            break;
        }
        let f_next = f(next);
        if f_next.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = f_next;
    }
    RootResult {
        root: x,
        residual: fx,
        iterations,
        converged: fx.abs() <= tol_f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    #[test]
    fn scan_finds_quadratic_roots() {
        let brackets = scan_brackets(|x| x * x - 1.0, -2.0, 2.0, 0.5, 10);
        assert_eq!(brackets.len(), 2);
        assert!(brackets[0].lo <= -1.0 && -1.0 <= brackets[0].hi);
        assert!(brackets[1].lo <= 1.0 && 1.0 <= brackets[1].hi);
    }

    #[test]
    fn scan_finds_sine_zeros() {
        let brackets = scan_brackets(f64::sin, 1.0, 7.0, 0.5, 10);
        assert_eq!(brackets.len(), 2);
        assert!(brackets[0].lo < PI && PI < brackets[0].hi);
        assert!(brackets[1].lo < 2.0 * PI && 2.0 * PI < brackets[1].hi);
    }

    #[test]
    fn scan_returns_empty_without_roots() {
        assert!(scan_brackets(|x| 1.0 + x * x, -10.0, 10.0, 0.25, 10).is_empty());
    }

    #[test]
    fn scan_respects_max_roots() {
        let brackets = scan_brackets(f64::sin, 1.0, 50.0, 0.5, 3);
        assert_eq!(brackets.len(), 3);
    }

    #[test]
    fn scan_emits_degenerate_bracket_on_exact_zero() {
        // Sample grid hits x = 0 exactly, where x·(x-10) has a simple root.
        let brackets = scan_brackets(|x| x * (x - 10.0), -0.5, 0.5, 0.25, 10);
        assert_eq!(brackets.len(), 1);
        let b = brackets[0];
        assert!(b.hi - b.lo <= 0.25 * 1e-12 + f64::EPSILON);
        assert!(b.lo <= 0.0 && 0.0 <= b.hi);
        // Signs still straddle the simple root…
        assert!(b.f_lo * b.f_hi < 0.0);
        // …so the polish stage accepts it.
        let r = newton_safeguarded(
            |x| x * (x - 10.0),
            |x| 2.0 * x - 10.0,
            &b,
            1e-13,
            1e-12,
            100,
        )
        .unwrap();
        assert!(r.root.abs() < 1e-13);
    }

    #[test]
    fn newton_sqrt2() {
        let b = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: -1.0,
            f_hi: 2.0,
        };
        let r = newton_safeguarded(|x| x * x - 2.0, |x| 2.0 * x, &b, 1e-13, 1e-12, 100).unwrap();
        assert!(r.converged);
        assert!((r.root - SQRT_2).abs() < 1e-14, "root {}", r.root);
        assert!(r.iterations <= 100);
    }

    #[test]
    fn newton_cosine_root() {
        let b = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: 1f64.cos(),
            f_hi: 2f64.cos(),
        };
        let r = newton_safeguarded(f64::cos, |x| -x.sin(), &b, 1e-13, 1e-12, 100).unwrap();
        assert!(r.converged);
        assert!((r.root - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn rejects_sign_consistent_interval() {
        let b = Bracket {
            lo: 1.0,
            hi: 2.0,
            f_lo: 1.0,
            f_hi: 4.0,
        };
        let err = newton_safeguarded(|x| x * x, |x| 2.0 * x, &b, 1e-13, 1e-12, 100);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn errors_when_iteration_budget_exhausted() {
        // A single iteration from the midpoint cannot satisfy tolerances
        // that are effectively unreachable (tol_f below noise, tol_x = 0).
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: -0.3,
            f_hi: 0.7,
        };
        let err = newton_safeguarded(|x| x * x - 0.3, |x| 2.0 * x, &b, 0.0, 1e-300, 1);
        assert!(matches!(err, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn sign_discontinuity_stops_on_width_without_convergence() {
        // f jumps from -1 to +1 across 0.3 with no root; the bracket
        // collapses to tol_x and the result reports converged = false.
        let f = |x: f64| if x < 0.3 { -1.0 } else { 1.0 };
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: -1.0,
            f_hi: 1.0,
        };
        let r = newton_safeguarded(f, |_| 0.0, &b, 1e-13, 1e-12, 100).unwrap();
        assert!(!r.converged);
        assert!((r.root - 0.3).abs() < 1e-6);
        assert_eq!(r.residual.abs(), 1.0);
    }

    proptest! {
        /// The root of x - r is recovered inside the bracket for arbitrary
        /// bracket geometry around it.
        #[test]
        fn root_stays_inside_bracket(r in -100.0f64..100.0, span in 0.1f64..50.0) {
            let (lo, hi) = (r - 0.3 * span, r + span);
            let b = Bracket { lo, hi, f_lo: lo - r, f_hi: hi - r };
            let res = newton_safeguarded(|x| x - r, |_| 1.0, &b, 1e-13, 1e-12, 100).unwrap();
            prop_assert!(res.root >= lo && res.root <= hi);
            prop_assert!(res.converged);
            prop_assert!((res.root - r).abs() < 1e-10);
        }

        /// Cubic with three known roots: the scan isolates all of them and
        /// polishing lands on each to 1e-13.
        #[test]
        fn cubic_roots_to_spec_accuracy(a in -3.0f64..-1.0, b in -0.9f64..0.9, c in 1.1f64..3.0) {
            let f = move |x: f64| (x - a) * (x - b) * (x - c);
            let df = move |x: f64| {
                (x - b) * (x - c) + (x - a) * (x - c) + (x - a) * (x - b)
            };
            let brackets = scan_brackets(f, -4.0, 4.0, 0.05, 10);
            prop_assert_eq!(brackets.len(), 3);
            for (bracket, want) in brackets.iter().zip([a, b, c]) {
                let res = newton_safeguarded(f, df, bracket, 1e-13, 1e-12, 100).unwrap();
                prop_assert!((res.root - want).abs() < 1e-13,
                    "root {} want {} err {:e}", res.root, want, (res.root - want).abs());
            }
        }
    }
}
