use super::ModelParams;
use crate::graph::Direction;
use crate::{Error, Result};

/// Degree-distribution tails predicted for the model: `P(d⁻ = i) ∝ i^{slope_in}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoreticalExponents {
    pub a: f64,
    pub b: f64,
    pub slope_in: f64,
    pub slope_out: f64,
    /// Mean in-degree (and out-degree), `1/((1−p)(α+β))`.
    pub mean_degree: f64,
}

pub fn theoretical_exponents(params: &ModelParams) -> Result<TheoreticalExponents> {
    params.validate()?;
    let (p, al, be) = (params.p_k22, params.alpha, params.beta);
    let growth = (1.0 - p) * (al + be);
    if growth <= 0.0 {
        return Err(Error::NoNodeGrowth);
    }
    let a = p + (1.0 - p) * (1.0 - be) / (1.0 + growth * params.delta_in);
    let b = p + (1.0 - p) * (1.0 - al) / (1.0 + growth * params.delta_out);
    Ok(TheoreticalExponents {
        a,
        b,
        slope_in: -(1.0 + 1.0 / a),
        slope_out: -(1.0 + 1.0 / b),
        mean_degree: 1.0 / growth,
    })
}

/// The `δ` (in or out) that puts the tail exponent at `target_slope`.
///
/// Inverts `slope = −(1 + 1/A)`. Infeasible when the K22 share alone already
/// exceeds the target (`A* < p`) or when `δ` would be negative. At `A* = p`
/// the target is reached only as `δ → ∞`, and the result is `f64::INFINITY`.
/// Values of `δ` within 1e-12 below zero are rounding and clamp to 0.
pub fn solve_delta(target_slope: f64, direction: Direction, p: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(target_slope < -2.0) {
        return Err(Error::invalid(format!("target slope {target_slope} must be below -2")));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1)")));
    }
    let growth = (1.0 - p) * (alpha + beta);
    if growth <= 0.0 {
        return Err(Error::NoNodeGrowth);
    }
    let other = match direction {
        Direction::In => beta,
        Direction::Out => alpha,
        Direction::Undirected => return Err(Error::invalid("direction must be in or out")),
    };
    let target_a = 1.0 / (-target_slope - 1.0);
    let infeasible = |reason: String| Err(Error::Infeasible { p, reason });
    if target_a < p {
        return infeasible(format!("A* = {target_a:.6} is below p; the K22 events alone give a heavier tail"));
    }
    if target_a == p {
        return Ok(f64::INFINITY);
    }
    let delta = ((1.0 - p) * (1.0 - other) / (target_a - p) - 1.0) / growth;
    if delta < -1e-12 {
        return infeasible(format!("delta = {delta:.6} would be negative"));
    }
    Ok(delta.max(0.0))
}

/// Closed interval of `p` for which [`solve_delta`] succeeds, `None` if
/// there is none. Below the lower end `δ` would be negative; past the upper
/// end the K22 share alone is too heavy.
pub fn feasible_p_interval(target_slope: f64, direction: Direction, alpha: f64, beta: f64) -> Option<(f64, f64)> {
    if !(target_slope < -2.0) {
        return None;
    }
    let other = match direction {
        Direction::In => beta,
        Direction::Out => alpha,
        Direction::Undirected => return None,
    };
    let target_a = 1.0 / (-target_slope - 1.0);
    // δ ≥ 0  ⇔  (1−p)(1−other) ≥ A* − p  ⇔  p·other ≥ A* + other − 1.
    let lo = if other > 0.0 { ((target_a + other - 1.0) / other).max(0.0) } else if target_a <= 1.0 { 0.0 } else { return None };
    let hi = target_a.min(1.0);
    (lo <= hi && alpha + beta > 0.0).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, d: f64) -> ModelParams {
        ModelParams { p_k22: p, alpha: 0.4, beta: 0.4, delta_in: d, delta_out: d, ..Default::default() }
    }

    #[test]
    fn default_setting_gives_minus_two_and_a_half() {
        let t = theoretical_exponents(&params(0.5, 2.0)).unwrap();
        assert!((t.a - 2.0 / 3.0).abs() < 1e-12);
        assert!((t.slope_in + 2.5).abs() < 1e-12);
        assert!((t.slope_out + 2.5).abs() < 1e-12);
        assert!((t.mean_degree - 2.5).abs() < 1e-12);
    }

    #[test]
    fn p_zero_recovers_bollobas() {
        let (al, be, di, dout) = (0.3, 0.5, 1.5, 0.7);
        let p = ModelParams { p_k22: 0.0, alpha: al, beta: be, delta_in: di, delta_out: dout, ..Default::default() };
        let t = theoretical_exponents(&p).unwrap();
        assert!((t.slope_in + 1.0 + (1.0 + (al + be) * di) / (1.0 - be)).abs() < 1e-12);
        assert!((t.slope_out + 1.0 + (1.0 + (al + be) * dout) / (1.0 - al)).abs() < 1e-12);
    }

    #[test]
    fn no_growth_is_an_error() {
        assert!(matches!(theoretical_exponents(&params(1.0, 1.0)), Err(Error::NoNodeGrowth)));
    }

    #[test]
    fn solve_round_trips() {
        let d = solve_delta(-2.5, Direction::In, 0.5, 0.4, 0.4).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        for p in [0.2, 0.3, 0.45, 0.6] {
            let d = solve_delta(-2.5, Direction::In, p, 0.4, 0.4).unwrap();
            let t = theoretical_exponents(&params(p, d)).unwrap();
            assert!((t.slope_in + 2.5).abs() < 1e-9);
        }
    }

    #[test]
    fn feasible_interval_is_a_sixth_to_two_thirds() {
        let f = |p: f64| solve_delta(-2.5, Direction::In, p, 0.4, 0.4).is_ok();
        assert!(!f(1.0 / 6.0 - 1e-6));
        assert!(f(1.0 / 6.0));
        assert!(f(2.0 / 3.0));
        assert!(!f(2.0 / 3.0 + 1e-6));
        assert!(!f(0.7));
        assert_eq!(solve_delta(-2.5, Direction::In, 1.0 / 6.0, 0.4, 0.4).unwrap(), 0.0);
        assert_eq!(solve_delta(-2.5, Direction::In, 2.0 / 3.0, 0.4, 0.4).unwrap(), f64::INFINITY);
    }

    #[test]
    fn interval_matches_solver() {
        let (lo, hi) = feasible_p_interval(-2.5, Direction::In, 0.4, 0.4).unwrap();
        assert!((lo - 1.0 / 6.0).abs() < 1e-12 && (hi - 2.0 / 3.0).abs() < 1e-12);
        for i in 0..100 {
            let p = i as f64 / 100.0;
            let inside = p >= lo - 1e-12 && p <= hi + 1e-12;
            assert_eq!(solve_delta(-2.5, Direction::In, p, 0.4, 0.4).is_ok(), inside, "p = {p}");
        }
    }

    #[test]
    fn rejects_shallow_slopes() {
        assert!(solve_delta(-2.0, Direction::In, 0.5, 0.4, 0.4).is_err());
        assert!(solve_delta(-1.5, Direction::Out, 0.5, 0.4, 0.4).is_err());
    }
}
