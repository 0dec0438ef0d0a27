//! Proximal operators for the nonsmooth part `g`.
//!
//! Every `g` used by the benchmarks has a closed-form prox: indicators of a
//! ball, a box, the unit simplex, the scaled l1 norm, the zero function, and
//! block-separable products of those.

use std::ops::Range;
use std::sync::Arc;

use crate::error::VIError;
use crate::vector::{norm, Vector};
use crate::FEASIBILITY_TOL;

/// A proper, lower semicontinuous, convex `g` with a computable prox.
pub trait ProxFriendly: Send + Sync {
    /// Writes `prox_{lambda g}(v)` into `out`.
    fn prox(&self, lambda: f64, v: &[f64], out: &mut [f64]);

    /// `g(x)`, `+inf` outside `dom g`.
    fn value(&self, x: &[f64]) -> f64;

    /// `g` is the indicator of a closed convex set (prox is a projection).
    fn is_indicator(&self) -> bool;

    /// `dom g` is an affine set, so the solution satisfies `F(x*) = 0` up to
    /// the affine directions and stepsize bounds may be dropped.
    fn domain_affine(&self) -> bool {
        false
    }

    /// Fixed dimension, when the operator carries one.
    fn dim(&self) -> Option<usize> {
        None
    }

    fn prox_vec(&self, lambda: f64, v: &[f64]) -> Vector {
        let mut out = Vector::zeros(v.len());
        self.prox(lambda, v, &mut out);
        out
    }
}

fn indicator(inside: bool) -> f64 {
    if inside {
        0.0
    } else {
        f64::INFINITY
    }
}

/// `g = 0`; the prox is the identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unconstrained;

impl ProxFriendly for Unconstrained {
    fn prox(&self, _lambda: f64, v: &[f64], out: &mut [f64]) {
        out.copy_from_slice(v);
    }

    fn value(&self, _x: &[f64]) -> f64 {
        0.0
    }

    fn is_indicator(&self) -> bool {
        true
    }

    fn domain_affine(&self) -> bool {
        true
    }
}

/// Indicator of the centered Euclidean ball `{x : ||x|| <= radius}`.
#[derive(Clone, Copy, Debug)]
pub struct Ball {
    pub radius: f64,
}

impl Ball {
    pub fn new(radius: f64) -> Self {
        assert!(radius > 0.0, "ball radius must be positive");
        Ball { radius }
    }
}

impl ProxFriendly for Ball {
    fn prox(&self, _lambda: f64, v: &[f64], out: &mut [f64]) {
        project_ball_into(v, self.radius, out);
    }

    fn value(&self, x: &[f64]) -> f64 {
        indicator(norm(x) <= self.radius + FEASIBILITY_TOL)
    }

    fn is_indicator(&self) -> bool {
        true
    }
}

/// Componentwise bounds `lo <= x <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxBounds {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, VIError> {
        if lo.len() != hi.len() {
            return Err(VIError::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l <= h)) {
            return Err(VIError::InvalidConfig("box bounds need lo <= hi".into()));
        }
        Ok(BoxBounds { lo, hi })
    }

    /// The same interval in every coordinate.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self, VIError> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| *v >= l - FEASIBILITY_TOL && *v <= h + FEASIBILITY_TOL)
    }
}

impl ProxFriendly for BoxBounds {
    fn prox(&self, _lambda: f64, v: &[f64], out: &mut [f64]) {
        project_box_into(v, self, out);
    }

    fn value(&self, x: &[f64]) -> f64 {
        indicator(self.contains(x))
    }

    fn is_indicator(&self) -> bool {
        true
    }

    fn dim(&self) -> Option<usize> {
        Some(self.lo.len())
    }
}

/// Indicator of the unit simplex `{x >= 0 : sum x = 1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitSimplex;

impl UnitSimplex {
    pub fn contains(x: &[f64]) -> bool {
        !x.is_empty()
            && x.iter().all(|&v| v >= -FEASIBILITY_TOL)
            && (x.iter().sum::<f64>() - 1.0).abs() <= FEASIBILITY_TOL
    }
}

impl ProxFriendly for UnitSimplex {
    fn prox(&self, _lambda: f64, v: &[f64], out: &mut [f64]) {
        project_simplex_into(v, out);
    }

    fn value(&self, x: &[f64]) -> f64 {
        indicator(Self::contains(x))
    }

    fn is_indicator(&self) -> bool {
        true
    }
}

/// `g(x) = weight * ||x||_1`.
#[derive(Clone, Copy, Debug)]
pub struct L1Norm {
    pub weight: f64,
}

impl Default for L1Norm {
    fn default() -> Self {
        L1Norm { weight: 1.0 }
    }
}

impl ProxFriendly for L1Norm {
    fn prox(&self, lambda: f64, v: &[f64], out: &mut [f64]) {
        soft_threshold_into(v, lambda * self.weight, out);
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.weight * x.iter().map(|v| v.abs()).sum::<f64>()
    }

    fn is_indicator(&self) -> bool {
        false
    }
}

/// One block of a separable `g`.
#[derive(Clone)]
pub struct ProxBlock {
    pub prox: Arc<dyn ProxFriendly>,
    pub range: Range<usize>,
}

/// Separable `g(z) = sum_k g_k(z[range_k])`; one call is one prox.
#[derive(Clone)]
pub struct BlockProx {
    blocks: Vec<ProxBlock>,
    dim: usize,
}

impl BlockProx {
    /// The ranges must partition `0..dim` (any order).
    pub fn new(blocks: Vec<ProxBlock>) -> Result<Self, VIError> {
        let dim = check_partition(&blocks)?;
        Ok(BlockProx { blocks, dim })
    }

    pub fn blocks(&self) -> &[ProxBlock] {
        &self.blocks
    }
}

fn check_partition(blocks: &[ProxBlock]) -> Result<usize, VIError> {
    let mut ranges: Vec<Range<usize>> = blocks.iter().map(|b| b.range.clone()).collect();
    ranges.sort_by_key(|r| r.start);
    let mut next = 0;
    for r in &ranges {
        if r.start != next {
            return Err(VIError::InvalidBlocks(format!(
                "block {:?} does not continue at index {next}",
                r
            )));
        }
        if r.end <= r.start {
            return Err(VIError::InvalidBlocks(format!("empty block {:?}", r)));
        }
        next = r.end;
    }
    Ok(next)
}

impl ProxFriendly for BlockProx {
    fn prox(&self, lambda: f64, v: &[f64], out: &mut [f64]) {
        assert_eq!(v.len(), self.dim, "block prox dimension");
        for b in &self.blocks {
            b.prox
                .prox(lambda, &v[b.range.clone()], &mut out[b.range.clone()]);
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.prox.value(&x[b.range.clone()]))
            .sum()
    }

    fn is_indicator(&self) -> bool {
        self.blocks.iter().all(|b| b.prox.is_indicator())
    }

    fn domain_affine(&self) -> bool {
        self.blocks.iter().all(|b| b.prox.domain_affine())
    }

    fn dim(&self) -> Option<usize> {
        Some(self.dim)
    }
}

pub fn project_ball_into(v: &[f64], radius: f64, out: &mut [f64]) {
    let n = norm(v);
    if n <= radius {
        out.copy_from_slice(v);
    } else {
        let s = radius / n;
        for (o, vi) in out.iter_mut().zip(v) {
            *o = vi * s;
        }
    }
}

/// Euclidean projection onto `{x : ||x|| <= radius}`.
pub fn project_ball(v: &[f64], radius: f64) -> Vector {
    let mut out = Vector::zeros(v.len());
    project_ball_into(v, radius, &mut out);
    out
}

pub fn project_box_into(v: &[f64], b: &BoxBounds, out: &mut [f64]) {
    assert_eq!(v.len(), b.dim(), "box dimension");
    for ((o, vi), (lo, hi)) in out.iter_mut().zip(v).zip(b.lo.iter().zip(&b.hi)) {
        *o = vi.clamp(*lo, *hi);
    }
}

pub fn project_box(v: &[f64], b: &BoxBounds) -> Vector {
    let mut out = Vector::zeros(v.len());
    project_box_into(v, b, &mut out);
    out
}

/// Projection onto the unit simplex by sorting and thresholding.
pub fn project_simplex_into(v: &[f64], out: &mut [f64]) {
    assert!(!v.is_empty(), "simplex projection of an empty vector");
    let mut u = v.to_vec();
    u.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut cumsum = 0.0;
    let mut threshold = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cumsum += uk;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            threshold = t;
        } else {
            break;
        }
    }
    for (o, vi) in out.iter_mut().zip(v) {
        *o = (vi - threshold).max(0.0);
    }
}

pub fn project_simplex(v: &[f64]) -> Vector {
    let mut out = Vector::zeros(v.len());
    project_simplex_into(v, &mut out);
    out
}

pub fn soft_threshold_into(v: &[f64], lam: f64, out: &mut [f64]) {
    debug_assert!(lam >= 0.0);
    for (o, vi) in out.iter_mut().zip(v) {
        *o = vi.signum() * (vi.abs() - lam).max(0.0);
    }
}

/// Prox of `lam * ||.||_1`.
pub fn soft_threshold(v: &[f64], lam: f64) -> Vector {
    let mut out = Vector::zeros(v.len());
    soft_threshold_into(v, lam, &mut out);
    out
}

/// Applies each block prox to its own slice of `v`.
pub fn prox_product(blocks: &[ProxBlock], lam: f64, v: &[f64]) -> Result<Vector, VIError> {
    let dim = check_partition(blocks)?;
    if dim != v.len() {
        return Err(VIError::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    let mut out = Vector::zeros(dim);
    for b in blocks {
        b.prox
            .prox(lam, &v[b.range.clone()], &mut out[b.range.clone()]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::{dist, dot};
    use proptest::prelude::*;

    // Characterization of the prox: <p - v, y - p> >= lam (g(p) - g(y)).
    fn prox_inequality_gap(g: &dyn ProxFriendly, lam: f64, v: &[f64], y: &[f64]) -> f64 {
        let p = g.prox_vec(lam, v);
        let pv: Vec<f64> = p.iter().zip(v).map(|(a, b)| a - b).collect();
        let yp: Vec<f64> = y.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
        dot(&pv, &yp) - lam * (g.value(&p) - g.value(y))
    }

    /// All support sets, each solved as an equality-constrained least squares.
    fn simplex_by_enumeration(v: &[f64]) -> Vec<f64> {
        let d = v.len();
        let mut best: Option<(f64, Vec<f64>)> = None;
        for mask in 1u32..(1 << d) {
            let support: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
            let shift = (support.iter().map(|&i| v[i]).sum::<f64>() - 1.0) / support.len() as f64;
            let mut x = vec![0.0; d];
            let mut feasible = true;
            for &i in &support {
                x[i] = v[i] - shift;
                if x[i] < 0.0 {
                    feasible = false;
                }
            }
            if !feasible {
                continue;
            }
            let dd = dist(&x, v);
            if best.as_ref().is_none_or(|(b, _)| dd < *b) {
                best = Some((dd, x));
            }
        }
        best.unwrap().1
    }

    #[test]
    fn ball_examples() {
        assert_eq!(project_ball(&[0.1, 0.2], 1.0).as_slice(), &[0.1, 0.2]);
        let p = project_ball(&[3.0, 4.0], 1.0);
        assert!((p[0] - 0.6).abs() < 1e-15 && (p[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn box_examples() {
        let b = BoxBounds::uniform(2, 0.0, 100.0).unwrap();
        assert_eq!(project_box(&[3.0, 50.0], &b).as_slice(), &[3.0, 50.0]);
        assert_eq!(project_box(&[-1.0, 150.0], &b).as_slice(), &[0.0, 100.0]);
        assert!(BoxBounds::new(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(project_simplex(&[0.5, 0.5]).as_slice(), &[0.5, 0.5]);
        assert_eq!(project_simplex(&[2.0, 0.0]).as_slice(), &[1.0, 0.0]);
        assert_eq!(project_simplex(&[1.0, 1.0]).as_slice(), &[0.5, 0.5]);
        assert_eq!(simplex_by_enumeration(&[2.0, 0.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn soft_threshold_examples() {
        assert_eq!(soft_threshold(&[3.0, -2.0], 0.0).as_slice(), &[3.0, -2.0]);
        assert_eq!(soft_threshold(&[3.0], 1.0).as_slice(), &[2.0]);
        assert_eq!(soft_threshold(&[-0.5], 1.0).as_slice(), &[0.0]);
    }

    #[test]
    fn product_blocks() {
        let id = |r: Range<usize>| ProxBlock {
            prox: Arc::new(Unconstrained),
            range: r,
        };
        let v = [1.0, -2.0, 3.0];
        let blocks = vec![id(0..1), id(1..3)];
        assert_eq!(prox_product(&blocks, 1.0, &v).unwrap().as_slice(), &v);

        let simplex = |r: Range<usize>| ProxBlock {
            prox: Arc::new(UnitSimplex),
            range: r,
        };
        let g = BlockProx::new(vec![simplex(0..2), simplex(2..4)]).unwrap();
        let p = g.prox_vec(1.0, &[2.0, 0.0, 1.0, 1.0]);
        assert_eq!(p.as_slice(), &[1.0, 0.0, 0.5, 0.5]);
        assert!(g.is_indicator());
        assert!(!g.domain_affine());

        let overlap = vec![id(0..2), id(1..3)];
        assert!(matches!(
            prox_product(&overlap, 1.0, &v),
            Err(VIError::InvalidBlocks(_))
        ));
        assert!(BlockProx::new(vec![id(0..1), id(2..3)]).is_err());
    }

    proptest! {
        #[test]
        fn simplex_matches_enumeration(v in prop::collection::vec(-3.0f64..3.0, 1..=6)) {
            let p = project_simplex(&v);
            let q = simplex_by_enumeration(&v);
            for (a, b) in p.iter().zip(&q) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
            prop_assert!(p.iter().all(|&x| x >= 0.0));
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn projections_are_idempotent_and_obtuse(
            v in prop::collection::vec(-200.0f64..200.0, 4),
            w in prop::collection::vec(-200.0f64..200.0, 4),
        ) {
            let sets: Vec<Box<dyn ProxFriendly>> = vec![
                Box::new(Ball::new(100.0)),
                Box::new(BoxBounds::uniform(4, 0.0, 100.0).unwrap()),
                Box::new(UnitSimplex),
            ];
            for g in &sets {
                let p = g.prox_vec(1.0, &v);
                let pp = g.prox_vec(1.0, &p);
                for (a, b) in p.iter().zip(pp.iter()) {
                    prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
                }
                // y = P(w) is a feasible sample point.
                let y = g.prox_vec(1.0, &w);
                let gap = prox_inequality_gap(g.as_ref(), 1.0, &v, &y);
                prop_assert!(gap >= -1e-10 * (1.0 + norm(&v) * norm(&w)));
            }
        }

        #[test]
        fn soft_threshold_is_l1_prox(
            v in prop::collection::vec(-5.0f64..5.0, 5),
            y in prop::collection::vec(-5.0f64..5.0, 5),
            lam in 0.0f64..3.0,
        ) {
            let g = L1Norm::default();
            prop_assert!(prox_inequality_gap(&g, lam, &v, &y) >= -1e-10);
        }

        #[test]
        fn prox_is_nonexpansive(
            v in prop::collection::vec(-5.0f64..5.0, 5),
            w in prop::collection::vec(-5.0f64..5.0, 5),
            lam in 0.0f64..3.0,
        ) {
            let ops: Vec<Box<dyn ProxFriendly>> = vec![
                Box::new(L1Norm::default()),
                Box::new(UnitSimplex),
                Box::new(Ball::new(1.0)),
            ];
            for g in &ops {
                let d = dist(&g.prox_vec(lam, &v), &g.prox_vec(lam, &w));
                prop_assert!(d <= dist(&v, &w) + 1e-12);
            }
        }
    }
}
