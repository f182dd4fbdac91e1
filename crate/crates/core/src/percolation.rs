//! Site percolation on an `M x M` grid of cells with 4-neighbour adjacency.
//!
//! A grid percolates when one cluster touches both the top row and the bottom
//! row (the two electrodes).

use std::fmt;

use rayon::prelude::*;

use crate::error::{check_probability, Error, Result};
use crate::rng::{derive_stream, RngState, StreamId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    size: usize,
    occupied: Vec<bool>,
}

impl Grid {
    pub fn empty(size: usize) -> Result<Self> {
        Self::from_cells(size, vec![false; size * size])
    }

    /// Builds a grid from row-major occupancy flags.
    pub fn from_cells(size: usize, occupied: Vec<bool>) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("grid side must be at least 1"));
        }
        if occupied.len() != size * size {
            return Err(Error::invalid(format!(
                "expected {} cells for a {size}x{size} grid, got {}",
                size * size,
                occupied.len()
            )));
        }
        Ok(Grid { size, occupied })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_occupied(&self, row: usize, col: usize) -> bool {
        self.occupied[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.occupied[row * self.size + col] = value;
    }

    pub fn cells(&self) -> &[bool] {
        &self.occupied
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.iter().filter(|&&c| c).count()
    }
}

/// `M` lines of `0`/`1` characters.
impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.occupied.chunks(self.size) {
            let line: String = row.iter().map(|&c| if c { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// One uniform draw per cell, row-major. Thresholding the same field at a
/// larger `p` can only add occupied cells.
#[derive(Clone, Debug)]
pub struct UniformField {
    size: usize,
    values: Vec<f64>,
}

impl UniformField {
    pub fn sample(size: usize, rng: &mut RngState) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("grid side must be at least 1"));
        }
        let values = (0..size * size).map(|_| rng.next_uniform()).collect();
        Ok(UniformField { size, values })
    }

    /// Cell occupied iff its draw is below `p`.
    pub fn threshold(&self, p: f64) -> Result<Grid> {
        check_probability("p", p)?;
        Grid::from_cells(self.size, self.values.iter().map(|&u| u < p).collect())
    }
}

/// Each cell occupied independently with probability `p`, drawn row-major.
pub fn generate_grid(size: usize, p: f64, rng: &mut RngState) -> Result<Grid> {
    check_probability("p", p)?;
    if size == 0 {
        return Err(Error::invalid("grid side must be at least 1"));
    }
    let occupied = (0..size * size).map(|_| rng.bernoulli_unchecked(p)).collect();
    Grid::from_cells(size, occupied)
}

/// Disjoint-set forest with path halving and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut p: usize) -> usize {
        while self.parent[p] != p {
            self.parent[p] = self.parent[self.parent[p]];
            p = self.parent[p];
        }
        p
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Cluster id per cell: 0 for empty cells, `1..=cluster_count` otherwise,
/// numbered in row-major order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterLabeling {
    size: usize,
    labels: Vec<u32>,
    cluster_count: u32,
}

impl ClusterLabeling {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.size + col]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn cluster_count(&self) -> u32 {
        self.cluster_count
    }
}

/// Integer matrix, one row per line, comma separated.
impl fmt::Display for ClusterLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.labels.chunks(self.size) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(","))?;
        }
        Ok(())
    }
}

pub fn label_clusters(grid: &Grid) -> ClusterLabeling {
    let m = grid.size();
    let cells = grid.cells();
    let mut uf = UnionFind::new(m * m);
    for r in 0..m {
        for c in 0..m {
            let i = r * m + c;
            if !cells[i] {
                continue;
            }
            if c + 1 < m && cells[i + 1] {
                uf.union(i, i + 1);
            }
            if r + 1 < m && cells[i + m] {
                uf.union(i, i + m);
            }
        }
    }
    let mut root_label = vec![0u32; m * m];
    let mut labels = vec![0u32; m * m];
    let mut next = 0u32;
    for i in 0..m * m {
        if !cells[i] {
            continue;
        }
        let root = uf.find(i);
        if root_label[root] == 0 {
            next += 1;
            root_label[root] = next;
        }
        labels[i] = root_label[root];
    }
    ClusterLabeling {
        size: m,
        labels,
        cluster_count: next,
    }
}

/// Some cluster appears in both the top and the bottom row.
pub fn has_spanning_cluster(labeling: &ClusterLabeling) -> bool {
    let m = labeling.size();
    let mut in_top = vec![false; labeling.cluster_count() as usize + 1];
    for &l in &labeling.labels()[..m] {
        in_top[l as usize] = true;
    }
    labeling.labels()[(m - 1) * m..]
        .iter()
        .any(|&l| l != 0 && in_top[l as usize])
}

/// Spanning probability estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub probability: f64,
    pub stderr: f64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PercolationCurve {
    pub size: usize,
    pub points: Vec<CurvePoint>,
}

impl PercolationCurve {
    /// Occupation probability at which the curve first reaches `level`,
    /// linearly interpolated between neighbouring points.
    pub fn crossing(&self, level: f64) -> Option<f64> {
        let pts = &self.points;
        if pts.first()?.probability >= level {
            return Some(pts[0].p);
        }
        pts.windows(2).find_map(|w| {
            let (a, b) = (w[0], w[1]);
            (a.probability < level && b.probability >= level)
                .then(|| a.p + (level - a.probability) * (b.p - a.p) / (b.probability - a.probability))
        })
    }
}

pub fn estimate_p(size: usize, p: f64, trials: u64, seed: u64) -> Result<CurvePoint> {
    estimate_p_from(size, p, trials, seed, 0)
}

fn estimate_p_from(size: usize, p: f64, trials: u64, seed: u64, first_stream: u64) -> Result<CurvePoint> {
    check_probability("p", p)?;
    if size == 0 {
        return Err(Error::invalid("grid side must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let spanning: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_stream(StreamId::new(seed, first_stream + t));
            let grid = generate_grid(size, p, &mut rng).expect("validated inputs");
            u64::from(has_spanning_cluster(&label_clusters(&grid)))
        })
        .sum();
    let probability = spanning as f64 / trials as f64;
    Ok(CurvePoint {
        p,
        probability,
        stderr: (probability * (1.0 - probability) / trials as f64).sqrt(),
        trials,
    })
}

/// One estimate per `p`, each on its own block of `trials` substreams.
pub fn sweep_p(size: usize, p_list: &[f64], trials: u64, seed: u64) -> Result<PercolationCurve> {
    if p_list.is_empty() {
        return Err(Error::invalid("p list is empty"));
    }
    let points = p_list
        .iter()
        .enumerate()
        .map(|(k, &p)| estimate_p_from(size, p, trials, seed, k as u64 * trials))
        .collect::<Result<Vec<_>>>()?;
    Ok(PercolationCurve { size, points })
}
