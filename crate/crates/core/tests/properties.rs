use std::sync::Arc;

use approx::assert_relative_eq;
use proptest::prelude::*;
use vi_core::metrics::{natural_residual, psi};
use vi_core::prox::{project_simplex, Ball, BlockProx, BoxBounds, L1Norm, ProxBlock, UnitSimplex};
use vi_core::vector::{dot, norm};
use vi_core::{init_lambda0, AffineMap, DenseMatrix, ErgodicAverage, ProxFriendly, VIProblem, Vector};

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-10.0..10.0f64, n)
}

/// `p = prox_{lambda g}(v)` iff `<v - p, y - p> <= lambda (g(y) - g(p))` for all `y`.
fn prox_inequality(g: &dyn ProxFriendly, lambda: f64, v: &[f64], y: &[f64]) -> f64 {
    let p = g.prox_vec(lambda, v);
    let lhs = dot(&Vector::from(v).sub(&p), &Vector::from(y).sub(&p));
    lhs - lambda * (g.value(y) - g.value(&p))
}

proptest! {
    #[test]
    fn prox_operators_satisfy_their_characterization(
        v in vec_strategy(5),
        y in vec_strategy(5),
        lambda in 0.01..5.0f64,
    ) {
        let l1 = L1Norm::default();
        prop_assert!(prox_inequality(&l1, lambda, &v, &y) <= 1e-10);

        let ball = Ball::new(3.0);
        let y_in = ball.prox_vec(1.0, &y);
        prop_assert!(prox_inequality(&ball, lambda, &v, &y_in) <= 1e-10);

        let bx = BoxBounds::uniform(5, -1.0, 2.0).unwrap();
        let y_in = bx.prox_vec(1.0, &y);
        prop_assert!(prox_inequality(&bx, lambda, &v, &y_in) <= 1e-10);

        let y_in = project_simplex(&y);
        prop_assert!(prox_inequality(&UnitSimplex, lambda, &v, &y_in) <= 1e-10);
    }

    #[test]
    fn block_prox_acts_blockwise(v in vec_strategy(6), lambda in 0.01..5.0f64) {
        let g = BlockProx::new(vec![
            ProxBlock { prox: Arc::new(UnitSimplex), range: 0..4 },
            ProxBlock { prox: Arc::new(L1Norm::default()), range: 4..6 },
        ]).unwrap();
        let p = g.prox_vec(lambda, &v);
        let simplex = project_simplex(&v[..4]);
        let shrunk = L1Norm::default().prox_vec(lambda, &v[4..]);
        prop_assert_eq!(&p[..4], simplex.as_slice());
        prop_assert_eq!(&p[4..], shrunk.as_slice());
    }

    #[test]
    fn ergodic_average_is_the_weighted_mean(
        pts in proptest::collection::vec((0.01..3.0f64, vec_strategy(3)), 1..8),
        tau1 in 0.0..1.6f64,
    ) {
        let mut avg = ErgodicAverage::new();
        let (l1, x1) = &pts[0];
        avg.start(*l1, tau1, x1);
        let mut weight = l1 * (1.0 + tau1);
        let mut sum = Vector::from(x1.as_slice()).scaled(weight);
        for (l, y) in &pts[1..] {
            avg.push(*l, y).unwrap();
            weight += l;
            sum = sum.add(&Vector::from(y.as_slice()).scaled(*l));
        }
        assert_relative_eq!(avg.weight(), weight, max_relative = 1e-12);
        let p = avg.point().unwrap();
        for (a, b) in p.iter().zip(sum.iter()) {
            assert_relative_eq!(*a, b / weight, epsilon = 1e-10, max_relative = 1e-10);
        }
    }
}

#[test]
fn residual_vanishes_exactly_at_the_projected_solution() {
    // F(x) = x - (5, -5) on the box [-1, 2]²: the solution is (2, -1).
    let op = AffineMap::new(DenseMatrix::identity(2), Vector::from([-5.0, 5.0]));
    let g = BoxBounds::uniform(2, -1.0, 2.0).unwrap();
    let p = VIProblem::new(Arc::new(op), Arc::new(g)).unwrap();
    assert_eq!(natural_residual(&p, &[2.0, -1.0], 1.0), 0.0);
    assert!(natural_residual(&p, &[0.0, 0.0], 1.0) > 0.0);
    // Psi(solution, x) >= 0 on feasible x.
    for x in [[0.0, 0.0], [-1.0, 2.0], [1.5, 0.5]] {
        assert!(psi(&p, &[2.0, -1.0], &x) >= -1e-12);
    }
}

#[test]
fn initial_stepsize_is_seeded_and_respects_its_inequality() {
    let a = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![-1.0, 3.0]]);
    let op = AffineMap::new(a, Vector::zeros(2));
    let x0 = [1.0, -4.0];
    let s1 = init_lambda0(&op, &x0, 0.41, 3).unwrap();
    let s2 = init_lambda0(&op, &x0, 0.41, 3).unwrap();
    assert_eq!(s1.lambda0.to_bits(), s2.lambda0.to_bits());
    let lhs = s1.lambda0 * norm(&s1.op_probe.sub(&s1.op_x0));
    let rhs = 0.41 * norm(&s1.probe.sub(&x0));
    assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
}
