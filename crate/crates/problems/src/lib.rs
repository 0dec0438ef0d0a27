//! Seeded benchmark problems for monotone VI solvers.
//!
//! | kind          | problem                                              | `g`            |
//! |---------------|------------------------------------------------------|----------------|
//! | `cons_min`    | `sum q_i (e^{x_i} - x_i - 1) + ||x||²/2`             | ball of radius 100 |
//! | `geo`         | `sum e^{<a_i,x> + b_i} + <c,x>`                      | `||x||_1`      |
//! | `ac`          | `-sum log(b_i - <a_i,x>)`                            | `0`            |
//! | `lp`          | `(1/p) sum ||x - a_i||^p`                            | `0`            |
//! | `sun`         | banded nonlinear VI                                  | box `[0,100]^d` |
//! | `matrix_game` | `F(x; y) = (Aᵀy; -Ax)`                               | two simplices  |
//!
//! Every instance is reproducible from its [`ProblemDescriptor`]: the kind,
//! the dimensions, the seed and the generator id. Data are drawn from a
//! ChaCha20 stream seeded with the descriptor seed, in the order documented
//! by each generator.

pub mod analytic_center;
pub mod cons_min;
mod fd;
pub mod game;
pub mod geo;
pub mod lp;
pub mod sun;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use vi_core::metrics::matrix_game_gap;
use vi_core::prox::{Ball, BlockProx, BoxBounds, L1Norm, ProxBlock, Unconstrained, UnitSimplex};
use vi_core::{CompositeProblem, DenseMatrix, ResidualMetric, VIError, VIProblem, Vector};

pub use fd::finite_diff_grad;
pub use game::GameDist;

/// Identifies the random stream behind every generated instance.
pub const GENERATOR_ID: &str = "chacha20-seed_from_u64";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    ConsMin,
    #[serde(rename = "geo_prog")]
    Geo,
    #[serde(rename = "analytic_center")]
    Ac,
    #[serde(rename = "lp_min")]
    Lp,
    #[serde(rename = "sun_vi")]
    Sun,
    MatrixGame,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::ConsMin,
        ProblemKind::Geo,
        ProblemKind::Ac,
        ProblemKind::Lp,
        ProblemKind::Sun,
        ProblemKind::MatrixGame,
    ];

    /// Short name used on the command line and in file names.
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::ConsMin => "cons_min",
            ProblemKind::Geo => "geo",
            ProblemKind::Ac => "ac",
            ProblemKind::Lp => "lp",
            ProblemKind::Sun => "sun",
            ProblemKind::MatrixGame => "matrix_game",
        }
    }

    /// Minimization problems expose an objective; the others are plain VIs.
    /// Name used in serialized descriptors.
    pub fn long_name(self) -> &'static str {
        match self {
            ProblemKind::Geo => "geo_prog",
            ProblemKind::Ac => "analytic_center",
            ProblemKind::Lp => "lp_min",
            ProblemKind::Sun => "sun_vi",
            k => k.name(),
        }
    }

    pub fn is_composite(self) -> bool {
        !matches!(self, ProblemKind::Sun | ProblemKind::MatrixGame)
    }

    /// Iteration budget used for this problem in the benchmark tables.
    pub fn recommended_iters(self) -> usize {
        match self {
            ProblemKind::ConsMin => 400,
            ProblemKind::Geo => 700,
            ProblemKind::Ac => 1000,
            ProblemKind::Lp => 200,
            ProblemKind::Sun => 100,
            ProblemKind::MatrixGame => 1000,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = VIError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.long_name() == s)
            .ok_or_else(|| VIError::InvalidConfig(format!("unknown problem '{s}'")))
    }
}

/// Problem dimensions. Fields a kind does not use stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

/// Everything needed to regenerate an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    pub kind: ProblemKind,
    pub dims: Dims,
    pub seed: u64,
    pub generator_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<GameDist>,
}

impl ProblemDescriptor {
    /// The benchmark-table dimensions of `kind`.
    pub fn standard(kind: ProblemKind, seed: u64) -> Self {
        let dims = match kind {
            ProblemKind::ConsMin => Dims {
                d: Some(10),
                ..Dims::default()
            },
            ProblemKind::Geo => Dims {
                d: Some(100),
                m: Some(50),
                ..Dims::default()
            },
            ProblemKind::Ac => Dims {
                d: Some(100),
                m: Some(1000),
                ..Dims::default()
            },
            ProblemKind::Lp => Dims {
                d: Some(50),
                m: Some(50),
                p: Some(3.0),
                ..Dims::default()
            },
            ProblemKind::Sun => Dims {
                d: Some(1000),
                ..Dims::default()
            },
            ProblemKind::MatrixGame => Dims {
                k: Some(1000),
                l: Some(2000),
                ..Dims::default()
            },
        };
        ProblemDescriptor {
            kind,
            dims,
            seed,
            generator_id: GENERATOR_ID.to_string(),
            dist: (kind == ProblemKind::MatrixGame).then_some(GameDist::Uniform),
        }
    }

    pub fn with_dims(mut self, dims: Dims) -> Self {
        let base = self.dims;
        self.dims = Dims {
            d: dims.d.or(base.d),
            m: dims.m.or(base.m),
            k: dims.k.or(base.k),
            l: dims.l.or(base.l),
            p: dims.p.or(base.p),
        };
        self
    }

    pub fn with_dist(mut self, dist: GameDist) -> Self {
        self.dist = Some(dist);
        self
    }

    fn require(&self, v: Option<usize>, name: &str) -> Result<usize, VIError> {
        match v {
            Some(n) if n > 0 => Ok(n),
            _ => Err(VIError::InvalidConfig(format!(
                "{} needs a positive dimension '{name}'",
                self.kind
            ))),
        }
    }
}

/// The mathematical content of an instance.
#[derive(Clone)]
pub enum Model {
    Composite(CompositeProblem),
    Vi(VIProblem),
    /// A matrix game; the VI acts on `z = (x; y)` with `x` first.
    Game {
        problem: VIProblem,
        matrix: Arc<DenseMatrix>,
    },
}

#[derive(Clone)]
pub struct ProblemInstance {
    pub descriptor: ProblemDescriptor,
    pub x0: Vector,
    pub recommended_iters: usize,
    pub model: Model,
}

impl ProblemInstance {
    /// The instance as a VI (the gradient operator for minimization problems).
    pub fn vi(&self) -> VIProblem {
        match &self.model {
            Model::Composite(c) => c.as_vi(),
            Model::Vi(p) | Model::Game { problem: p, .. } => p.clone(),
        }
    }

    pub fn composite(&self) -> Option<&CompositeProblem> {
        match &self.model {
            Model::Composite(c) => Some(c),
            _ => None,
        }
    }

    pub fn game_matrix(&self) -> Option<&DenseMatrix> {
        match &self.model {
            Model::Game { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }
}

/// The primal-dual gap as a residual metric on stacked `z = (x; y)`;
/// NaN for points off the simplices.
pub fn game_gap_metric(matrix: Arc<DenseMatrix>) -> ResidualMetric {
    ResidualMetric::custom("gap", move |z| {
        let (x, y) = z.split_at(matrix.cols());
        matrix_game_gap(&matrix, x, y).map_or(f64::NAN, |g| g.value)
    })
}

/// Generates the instance a descriptor names.
pub fn build(desc: &ProblemDescriptor) -> Result<ProblemInstance, VIError> {
    if desc.generator_id != GENERATOR_ID {
        return Err(VIError::InvalidConfig(format!(
            "unknown generator '{}'",
            desc.generator_id
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(desc.seed);
    let (model, x0) = match desc.kind {
        ProblemKind::ConsMin => {
            let d = desc.require(desc.dims.d, "d")?;
            let (f, x0) = cons_min::generate(d, &mut rng);
            let p = CompositeProblem::new(Arc::new(f), Arc::new(Ball::new(cons_min::RADIUS)))?;
            (Model::Composite(p), x0)
        }
        ProblemKind::Geo => {
            let d = desc.require(desc.dims.d, "d")?;
            let m = desc.require(desc.dims.m, "m")?;
            let (f, x0) = geo::generate(d, m, &mut rng);
            let p = CompositeProblem::new(Arc::new(f), Arc::new(L1Norm::default()))?;
            (Model::Composite(p), x0)
        }
        ProblemKind::Ac => {
            let d = desc.require(desc.dims.d, "d")?;
            let m = desc.require(desc.dims.m, "m")?;
            let (f, x0) = analytic_center::generate(d, m, &mut rng);
            let p = CompositeProblem::new(Arc::new(f), Arc::new(Unconstrained))?;
            (Model::Composite(p), x0)
        }
        ProblemKind::Lp => {
            let d = desc.require(desc.dims.d, "d")?;
            let m = desc.require(desc.dims.m, "m")?;
            let p = desc.dims.p.unwrap_or(3.0);
            if !(p >= 2.0) {
                return Err(VIError::InvalidConfig(format!("p = {p} must be at least 2")));
            }
            let (f, x0) = lp::generate(d, m, p, &mut rng);
            let p = CompositeProblem::new(Arc::new(f), Arc::new(Unconstrained))?;
            (Model::Composite(p), x0)
        }
        ProblemKind::Sun => {
            let d = desc.require(desc.dims.d, "d")?;
            let (op, x0) = sun::generate(d, &mut rng);
            let bounds = BoxBounds::uniform(d, 0.0, sun::BOX_HI)?;
            (Model::Vi(VIProblem::new(Arc::new(op), Arc::new(bounds))?), x0)
        }
        ProblemKind::MatrixGame => {
            let k = desc.require(desc.dims.k, "k")?;
            let l = desc.require(desc.dims.l, "l")?;
            let (matrix, z0) = game::generate(k, l, desc.dist.unwrap_or_default(), &mut rng);
            let g = BlockProx::new(vec![
                ProxBlock {
                    prox: Arc::new(UnitSimplex),
                    range: 0..l,
                },
                ProxBlock {
                    prox: Arc::new(UnitSimplex),
                    range: l..l + k,
                },
            ])?;
            let op = game::GameOperator::new(matrix.clone());
            let problem = VIProblem::new(Arc::new(op), Arc::new(g))?
                .with_metric(game_gap_metric(matrix.clone()));
            (Model::Game { problem, matrix }, z0)
        }
    };
    Ok(ProblemInstance {
        descriptor: desc.clone(),
        x0,
        recommended_iters: desc.kind.recommended_iters(),
        model,
    })
}
