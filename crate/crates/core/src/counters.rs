use crate::operator::MonotoneMap;

/// Evaluation tallies of one run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Counters {
    /// Operator or gradient evaluations.
    pub n_op: u64,
    /// Objective value evaluations.
    pub n_fval: u64,
    pub n_prox: u64,
    /// Matrix-vector products (affine problems backed by a matrix).
    pub n_mult: u64,
    pub wall_time_s: f64,
}

impl Counters {
    pub fn record_op(&mut self, op: &dyn MonotoneMap) {
        self.n_op += 1;
        self.n_mult += op.mults_per_eval();
    }

    pub fn record_fval(&mut self) {
        self.n_fval += 1;
    }

    pub fn record_prox(&mut self) {
        self.n_prox += 1;
    }

    /// Counts are never smaller than in `earlier`.
    pub fn dominates(&self, earlier: &Counters) -> bool {
        self.n_op >= earlier.n_op
            && self.n_fval >= earlier.n_fval
            && self.n_prox >= earlier.n_prox
            && self.n_mult >= earlier.n_mult
            && self.wall_time_s >= earlier.wall_time_s
    }
}
