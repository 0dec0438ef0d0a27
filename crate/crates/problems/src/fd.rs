use vi_core::{VIError, Vector};

/// Central-difference gradient with per-coordinate step
/// `h_i = 1e-6 (1 + |x_i|)`.
pub fn finite_diff_grad(f: impl Fn(&[f64]) -> f64, x: &[f64]) -> Result<Vector, VIError> {
    let mut probe = x.to_vec();
    let mut grad = Vector::zeros(x.len());
    for i in 0..x.len() {
        let h = 1e-6 * (1.0 + x[i].abs());
        probe[i] = x[i] + h;
        let up = f(&probe);
        probe[i] = x[i] - h;
        let down = f(&probe);
        probe[i] = x[i];
        if !(up.is_finite() && down.is_finite()) {
            return Err(VIError::NonFinite(format!(
                "objective is not finite around coordinate {i}"
            )));
        }
        // Divide by the step actually taken after rounding.
        grad[i] = (up - down) / ((x[i] + h) - (x[i] - h));
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_function() {
        let c = [1.5, -2.0, 0.25];
        let g = finite_diff_grad(|x| c.iter().zip(x).map(|(a, b)| a * b).sum(), &[3.0, -7.0, 0.1])
            .unwrap();
        for (gi, ci) in g.iter().zip(c) {
            assert!((gi - ci).abs() <= 1e-8, "{gi} vs {ci}");
        }
    }

    #[test]
    fn half_square_norm() {
        let x = [0.3, -1.7, 4.0];
        let g = finite_diff_grad(|v| 0.5 * v.iter().map(|a| a * a).sum::<f64>(), &x).unwrap();
        for (gi, xi) in g.iter().zip(x) {
            assert!((gi - xi).abs() <= 1e-8);
        }
    }

    #[test]
    fn non_finite_stencil() {
        let r = finite_diff_grad(|v| (-v[0]).ln(), &[0.0]);
        assert!(matches!(r, Err(VIError::NonFinite(_))));
    }
}
