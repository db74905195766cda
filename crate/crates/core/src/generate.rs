//! Synthetic instance families: Ising chains and toroidal grids (max-cut)
//! and positive blocks joined by repulsive edges (multicut).
//!
//! All generators draw from `ChaCha8Rng::seed_from_u64(seed)`, so an
//! instance depends only on its parameters and the seed.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ProblemInstance, ProblemKind};

/// Instance family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Complete graph on `n` nodes in a line, `theta_ij = s_ij * rho^(|i-j|-1)`
    /// with random signs `s_ij` (all `+1` when `positive` is set).
    IsingChain { n: usize, rho: f64, positive: bool },
    /// `rows x cols` grid with wrap-around, standard normal weights.
    Torus2d { rows: usize, cols: usize },
    /// `a x b x c` grid with wrap-around, standard normal weights.
    Torus3d { a: usize, b: usize, c: usize },
    /// `blocks` cliques of `size` nodes with integer weights in `1..=5`,
    /// consecutive cliques joined by `size` edges with weights in `-5..=-1`.
    GplusBlocks { blocks: usize, size: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::IsingChain { .. } => "ising_chain",
            Family::Torus2d { .. } => "torus2d",
            Family::Torus3d { .. } => "torus3d",
            Family::GplusBlocks { .. } => "gplus_blocks",
        }
    }

    pub fn ising_chain(n: usize) -> Self {
        Family::IsingChain {
            n,
            rho: 0.5,
            positive: false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::IsingChain { n, rho, positive } => {
                write!(f, "ising_chain(n={n}, rho={rho}{})", if *positive { ", positive" } else { "" })
            }
            Family::Torus2d { rows, cols } => write!(f, "torus2d({rows}x{cols})"),
            Family::Torus3d { a, b, c } => write!(f, "torus3d({a}x{b}x{c})"),
            Family::GplusBlocks { blocks, size } => write!(f, "gplus_blocks({blocks}x{size})"),
        }
    }
}

/// Standard normal samples by the Box-Muller transform. Each pair of
/// uniforms yields `z0 = r cos(2 pi u2)` followed by `z1 = r sin(2 pi u2)`.
struct BoxMuller {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl BoxMuller {
    fn new(rng: ChaCha8Rng) -> Self {
        BoxMuller { rng, spare: None }
    }

    fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - [0, 1) keeps the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        self.spare = Some(r * (TAU * u2).sin());
        r * (TAU * u2).cos()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn ising_chain(n: usize, rho: f64, positive: bool, rng: &mut ChaCha8Rng) -> Result<ProblemInstance> {
    if n < 2 {
        return Err(invalid("ising chain needs at least 2 nodes"));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid(format!("decay rate must lie in (0, 1), got {rho}")));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let sign = if positive || rng.random::<bool>() { 1.0 } else { -1.0 };
            edges.push((i, j, sign * rho.powi((j - i - 1) as i32)));
        }
    }
    ProblemInstance::new(ProblemKind::Maxcut, n, edges)
}

/// Grid with wrap-around in every dimension. Each node links to its
/// successor along every axis, nodes and axes in lexicographic order.
fn torus(dims: &[usize], rng: ChaCha8Rng) -> Result<ProblemInstance> {
    if dims.iter().any(|&d| d < 3) {
        return Err(invalid(format!("torus dimensions must be at least 3, got {dims:?}")));
    }
    let n: usize = dims.iter().product();
    let index = |coord: &[usize]| coord.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x);
    let mut normal = BoxMuller::new(rng);
    let mut edges = Vec::with_capacity(n * dims.len());
    let mut coord = vec![0; dims.len()];
    for node in 0..n {
        for axis in 0..dims.len() {
            let mut next = coord.clone();
            next[axis] = (next[axis] + 1) % dims[axis];
            edges.push((node, index(&next), normal.sample()));
        }
        for axis in (0..dims.len()).rev() {
            coord[axis] += 1;
            if coord[axis] < dims[axis] {
                break;
            }
            coord[axis] = 0;
        }
    }
    ProblemInstance::new(ProblemKind::Maxcut, n, edges)
}

fn gplus_blocks(blocks: usize, size: usize, rng: &mut ChaCha8Rng) -> Result<ProblemInstance> {
    if blocks == 0 || size == 0 {
        return Err(invalid("need at least one block of at least one node"));
    }
    let mut edges = Vec::new();
    for b in 0..blocks {
        let base = b * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j, f64::from(rng.random_range(1..=5))));
            }
        }
    }
    for b in 1..blocks {
        let (left, right) = ((b - 1) * size, b * size);
        let mut pairs = BTreeSet::new();
        for _ in 0..size {
            pairs.insert((left + rng.random_range(0..size), right + rng.random_range(0..size)));
        }
        for (u, v) in pairs {
            edges.push((u, v, -f64::from(rng.random_range(1..=5))));
        }
    }
    ProblemInstance::new(ProblemKind::Multicut, blocks * size, edges)
}

/// Builds one instance of `family`.
pub fn generate(family: &Family, seed: u64) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        Family::IsingChain { n, rho, positive } => ising_chain(n, rho, positive, &mut rng),
        Family::Torus2d { rows, cols } => torus(&[rows, cols], rng),
        Family::Torus3d { a, b, c } => torus(&[a, b, c], rng),
        Family::GplusBlocks { blocks, size } => gplus_blocks(blocks, size, &mut rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_sizes() {
        let g = generate(&Family::Torus2d { rows: 10, cols: 10 }, 1).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (100, 200));
        let g = generate(&Family::Torus3d { a: 5, b: 5, c: 5 }, 1).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (125, 375));
        let g = generate(&Family::Torus2d { rows: 3, cols: 7 }, 1).unwrap();
        assert!((0..21).all(|u| g.degree(u) == 4));
        assert!(generate(&Family::Torus2d { rows: 2, cols: 7 }, 1).is_err());
    }

    #[test]
    fn positive_chain_weights() {
        let g = generate(
            &Family::IsingChain {
                n: 4,
                rho: 0.5,
                positive: true,
            },
            0,
        )
        .unwrap();
        // pairs 01, 02, 03, 12, 13, 23
        assert_eq!(g.weights(), vec![1.0, 0.5, 0.25, 1.0, 0.5, 1.0]);
    }

    #[test]
    fn chain_signs_and_magnitudes() {
        let g = generate(&Family::ising_chain(30), 3).unwrap();
        assert_eq!(g.edge_count(), 30 * 29 / 2);
        for e in g.edges() {
            assert_eq!(e.weight.abs(), 0.5f64.powi((e.v - e.u - 1) as i32));
        }
        let negative = g.edges().iter().filter(|e| e.weight < 0.0).count();
        assert!(negative > 100 && negative < 335);
        assert!(generate(&Family::IsingChain { n: 5, rho: 1.0, positive: false }, 0).is_err());
    }

    #[test]
    fn same_seed_same_instance() {
        for fam in [
            Family::ising_chain(12),
            Family::Torus2d { rows: 4, cols: 5 },
            Family::Torus3d { a: 3, b: 3, c: 4 },
            Family::GplusBlocks { blocks: 3, size: 4 },
        ] {
            assert_eq!(generate(&fam, 7).unwrap(), generate(&fam, 7).unwrap());
            assert_ne!(generate(&fam, 7).unwrap(), generate(&fam, 8).unwrap());
        }
    }

    #[test]
    fn gaussian_moments() {
        let mut bm = BoxMuller::new(ChaCha8Rng::seed_from_u64(5));
        let xs: Vec<f64> = (0..20000).map(|_| bm.sample()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.03 && (var - 1.0).abs() < 0.05, "{mean} {var}");
    }

    #[test]
    fn blocks_have_positive_interiors() {
        let g = generate(&Family::GplusBlocks { blocks: 3, size: 4 }, 2).unwrap();
        assert_eq!(g.kind(), ProblemKind::Multicut);
        for e in g.edges() {
            assert_eq!(e.u / 4 == e.v / 4, e.weight > 0.0);
        }
    }
}
