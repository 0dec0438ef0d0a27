//! The extrapolation step and stepsize initialization.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{check_dim, VIError};
use crate::operator::MonotoneMap;
use crate::vector::{dist, norm, Vector};

/// `x + tau (x - x_prev)`
pub fn extrapolate(x: &[f64], x_prev: &[f64], tau: f64) -> Result<Vector, VIError> {
    check_dim(x.len(), x_prev.len())?;
    let mut out = Vector::zeros(x.len());
    extrapolate_into(x, x_prev, tau, &mut out);
    Ok(out)
}

pub fn extrapolate_into(x: &[f64], x_prev: &[f64], tau: f64, out: &mut [f64]) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(x_prev) {
        *o = a + tau * (a - b);
    }
}

/// `F(x + tau (x - x_prev))` for affine `F` from the cached values
/// `F(x)` and `F(x_prev)`; no operator evaluation.
pub fn affine_extrapolated_value(fx: &[f64], fx_prev: &[f64], tau: f64) -> Vector {
    let mut out = Vector::zeros(fx.len());
    affine_extrapolated_value_into(fx, fx_prev, tau, &mut out);
    out
}

pub fn affine_extrapolated_value_into(fx: &[f64], fx_prev: &[f64], tau: f64, out: &mut [f64]) {
    for ((o, a), b) in out.iter_mut().zip(fx).zip(fx_prev) {
        *o = (1.0 + tau) * a - tau * b;
    }
}

/// Result of the initial stepsize estimate.
#[derive(Clone, Debug)]
pub struct InitialStep {
    pub lambda0: f64,
    /// The perturbed point `x0 + delta u`.
    pub probe: Vector,
    pub op_x0: Vector,
    pub op_probe: Vector,
}

/// Relative size of the probe perturbation.
pub const PROBE_SCALE: f64 = 1e-6;

/// Largest `lambda0` with `lambda0 ||F(x1) - F(x0)|| <= alpha ||x1 - x0||`,
/// where `x1 = x0 + delta u`, `u` a seeded random unit vector and
/// `delta = 1e-6 (1 + ||x0||)`. Falls back to `1` when `F(x1) = F(x0)`.
///
/// Costs two operator evaluations, which the caller should count.
pub fn init_lambda0(
    op: &dyn MonotoneMap,
    x0: &[f64],
    alpha: f64,
    seed: u64,
) -> Result<InitialStep, VIError> {
    check_dim(op.dim(), x0.len())?;
    if !(alpha > 0.0 && alpha < crate::ALPHA_BOUND) {
        return Err(VIError::InvalidConfig(format!(
            "alpha = {alpha} must lie in (0, sqrt(2) - 1)"
        )));
    }
    let u = random_unit_vector(x0.len(), seed);
    let delta = PROBE_SCALE * (1.0 + norm(x0));
    let probe: Vector = x0.iter().zip(u.iter()).map(|(a, b)| a + delta * b).collect();

    let op_x0 = op.eval(x0);
    let op_probe = op.eval(&probe);
    if !op_x0.is_finite() || !op_probe.is_finite() {
        return Err(VIError::NonFinite(
            "operator is not finite at the starting point".into(),
        ));
    }
    let denom = dist(&op_probe, &op_x0);
    let lambda0 = if denom > 0.0 {
        alpha * dist(&probe, x0) / denom
    } else {
        1.0
    };
    Ok(InitialStep {
        lambda0,
        probe,
        op_x0,
        op_probe,
    })
}

fn random_unit_vector(dim: usize, seed: u64) -> Vector {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let v: Vector = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let n = norm(&v);
        if n > 0.0 {
            return v.scaled(1.0 / n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;
    use crate::operator::{AffineMap, ClosureMap};
    use proptest::prelude::*;

    #[test]
    fn extrapolate_examples() {
        assert_eq!(extrapolate(&[2.0], &[2.0], 1.0).unwrap().as_slice(), &[2.0]);
        assert_eq!(extrapolate(&[2.0], &[1.0], 1.0).unwrap().as_slice(), &[3.0]);
        assert_eq!(
            extrapolate(&[0.0, 0.0], &[2.0, -2.0], 0.5).unwrap().as_slice(),
            &[-1.0, 1.0]
        );
        assert!(matches!(
            extrapolate(&[0.0], &[1.0, 2.0], 1.0),
            Err(VIError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn affine_value_examples() {
        assert_eq!(affine_extrapolated_value(&[4.0], &[2.0], 0.0).as_slice(), &[4.0]);
        assert_eq!(affine_extrapolated_value(&[4.0], &[2.0], 1.0).as_slice(), &[6.0]);
    }

    #[test]
    fn lambda0_identity() {
        let id = ClosureMap::new(3, |x, out| out.copy_from_slice(x));
        let s = init_lambda0(&id, &[1.0, -2.0, 5.0], 0.41, 3).unwrap();
        assert!((s.lambda0 - 0.41).abs() < 1e-12);
        let delta = PROBE_SCALE * (1.0 + norm(&[1.0, -2.0, 5.0]));
        assert!((dist(&s.probe, &[1.0, -2.0, 5.0]) - delta).abs() <= 1e-8 * delta);
    }

    #[test]
    fn lambda0_scaled_map() {
        let twice = ClosureMap::new(1, |x, out| out[0] = 2.0 * x[0]);
        let s = init_lambda0(&twice, &[0.7], 0.41, 11).unwrap();
        assert!((s.lambda0 - 0.205).abs() < 1e-12);
    }

    #[test]
    fn lambda0_constant_map_falls_back() {
        let c = ClosureMap::new(2, |_, out| out.fill(3.0));
        let s = init_lambda0(&c, &[0.0, 1.0], 0.41, 0).unwrap();
        assert_eq!(s.lambda0, 1.0);
    }

    #[test]
    fn lambda0_is_seeded() {
        let id = ClosureMap::new(4, |x, out| out.copy_from_slice(x));
        let a = init_lambda0(&id, &[0.0; 4], 0.41, 9).unwrap();
        let b = init_lambda0(&id, &[0.0; 4], 0.41, 9).unwrap();
        let c = init_lambda0(&id, &[0.0; 4], 0.41, 10).unwrap();
        assert_eq!(a.probe, b.probe);
        assert_ne!(a.probe, c.probe);
    }

    proptest! {
        #[test]
        fn extrapolating_a_fixed_point_is_identity(
            x in prop::collection::vec(-1e3f64..1e3, 1..8),
            tau in 0.0f64..2.0,
        ) {
            let e = extrapolate(&x, &x, tau).unwrap();
            prop_assert_eq!(e.as_slice(), x.as_slice());
        }

        #[test]
        fn affine_shortcut_matches_direct_evaluation(
            entries in prop::collection::vec(-1.0f64..1.0, 16),
            b in prop::collection::vec(-1.0f64..1.0, 4),
            x in prop::collection::vec(-10.0f64..10.0, 4),
            x_prev in prop::collection::vec(-10.0f64..10.0, 4),
            tau in 0.0f64..2.0,
        ) {
            let map = AffineMap::new(DenseMatrix::from_row_major(4, 4, entries), Vector::from(b));
            let direct = map.eval(&extrapolate(&x, &x_prev, tau).unwrap());
            let shortcut = affine_extrapolated_value(&map.eval(&x), &map.eval(&x_prev), tau);
            let scale = 1.0 + norm(&direct);
            prop_assert!(dist(&direct, &shortcut) <= 1e-12 * scale);
        }
    }
}
