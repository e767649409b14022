use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::algebra::{quotient, AlgebraBuilder, Congruence, PartialAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::repsearch::{requirements, verify_certificate, RepCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    /// `{i} × J`, inside row `i`.
    Vertical,
    /// `I × {j}`, inside column `j`.
    Horizontal,
}

/// An axial subset of `m × n` in canonical form: the empty set is vertical
/// on line 0 with no cross cells, and singletons are vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxialSet {
    pub axis: Axis,
    pub line: usize,
    /// Bit mask of `J ⊆ n` (vertical) or `I ⊆ m` (horizontal).
    pub cross: u64,
}

impl AxialSet {
    pub const EMPTY: AxialSet = AxialSet {
        axis: Axis::Vertical,
        line: 0,
        cross: 0,
    };

    pub fn is_empty(&self) -> bool {
        self.cross == 0
    }

    /// The set of cells as a mask over `i * n + j`.
    pub fn cells(&self, grid: Grid) -> u64 {
        let mut mask = 0u64;
        for k in 0..64 {
            if self.cross >> k & 1 == 1 {
                let (i, j) = match self.axis {
                    Axis::Vertical => (self.line, k),
                    Axis::Horizontal => (k, self.line),
                };
                mask |= 1 << grid.cell(i, j);
            }
        }
        mask
    }

    /// The canonical axial set with the given cells, if they are axial.
    pub fn from_cells(grid: Grid, cells: u64) -> Option<AxialSet> {
        if cells == 0 {
            return Some(AxialSet::EMPTY);
        }
        for i in 0..grid.m {
            if cells & !grid.row(i) == 0 {
                let cross = (0..grid.n)
                    .filter(|&j| cells >> grid.cell(i, j) & 1 == 1)
                    .fold(0, |acc, j| acc | 1 << j);
                return Some(AxialSet {
                    axis: Axis::Vertical,
                    line: i,
                    cross,
                });
            }
        }
        for j in 0..grid.n {
            if cells & !grid.column(j) == 0 {
                let cross = (0..grid.m)
                    .filter(|&i| cells >> grid.cell(i, j) & 1 == 1)
                    .fold(0, |acc, i| acc | 1 << i);
                return Some(AxialSet {
                    axis: Axis::Horizontal,
                    line: j,
                    cross,
                });
            }
        }
        None
    }

    /// Element id such as `E`, `V0[0,1]` or `H2[0,1]`.
    pub fn id(&self) -> String {
        if self.is_empty() {
            return "E".into();
        }
        let tag = match self.axis {
            Axis::Vertical => 'V',
            Axis::Horizontal => 'H',
        };
        let items: Vec<String> = (0..64)
            .filter(|k| self.cross >> k & 1 == 1)
            .map(|k| k.to_string())
            .collect();
        format!("{tag}{}[{}]", self.line, items.join(","))
    }
}

impl fmt::Display for AxialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// The grid `m × n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub m: usize,
    pub n: usize,
}

impl Grid {
    /// Both sides need at least three lines and the grid must fit a 64-bit mask.
    pub fn new(m: usize, n: usize) -> Result<Grid> {
        if m < 3 || n < 3 {
            return Err(Error::precondition(format!(
                "axial-set algebras need m, n >= 3 (got {m}, {n})"
            )));
        }
        if m * n > 64 {
            return Err(Error::TooLarge {
                what: "grid m × n",
                size: m * n,
                cap: 64,
            });
        }
        Ok(Grid { m, n })
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn row(&self, i: usize) -> u64 {
        (0..self.n).fold(0, |acc, j| acc | 1 << self.cell(i, j))
    }

    pub fn column(&self, j: usize) -> u64 {
        (0..self.m).fold(0, |acc, i| acc | 1 << self.cell(i, j))
    }

    /// All canonical axial sets: the empty set, then vertical sets by row and
    /// mask, then horizontal sets with at least two cells by column and mask.
    pub fn axial_sets(&self) -> Vec<AxialSet> {
        let mut out = vec![AxialSet::EMPTY];
        for i in 0..self.m {
            for cross in 1..1u64 << self.n {
                out.push(AxialSet {
                    axis: Axis::Vertical,
                    line: i,
                    cross,
                });
            }
        }
        for j in 0..self.n {
            for cross in 1..1u64 << self.m {
                if cross.count_ones() >= 2 {
                    out.push(AxialSet {
                        axis: Axis::Horizontal,
                        line: j,
                        cross,
                    });
                }
            }
        }
        out
    }
}

/// The axial sets of `m × n` under disjoint union (defined when the union is
/// axial) with the empty set as zero. Returns the sets alongside the algebra.
pub fn axial_algebra(m: usize, n: usize) -> Result<(Vec<AxialSet>, PartialAlgebra)> {
    let grid = Grid::new(m, n)?;
    let sets = grid.axial_sets();
    let cells: Vec<u64> = sets.iter().map(|s| s.cells(grid)).collect();
    let pos: HashMap<u64, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let sig = Signature::JOIN.with(Symbol::Zero);
    let mut b = AlgebraBuilder::new(sets.iter().map(AxialSet::id), sig);
    b.zero(0);
    for (x, &cx) in cells.iter().enumerate() {
        for (y, &cy) in cells.iter().enumerate() {
            if cx & cy == 0 {
                if let Some(&z) = pos.get(&(cx | cy)) {
                    b.join(x, y, z);
                }
            }
        }
    }
    Ok((sets, b.build()?))
}

pub fn gen_x(m: usize, n: usize) -> Result<PartialAlgebra> {
    axial_algebra(m, n).map(|(_, alg)| alg)
}

/// The smallest equivalence on `X(m, n)` gluing all full lines together and
/// each `{i} × (n∖{j})` to `(m∖{i}) × {j}`. Blocks are listed by their least
/// member, which is also the representative.
pub fn gen_sim(m: usize, n: usize) -> Result<Congruence> {
    let grid = Grid::new(m, n)?;
    let sets = grid.axial_sets();
    let index: HashMap<AxialSet, usize> = sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let id = |cells: u64| index[&AxialSet::from_cells(grid, cells).expect("axial")];
    let mut uf = UnionFind::<usize>::new(sets.len());
    let full_row = id(grid.row(0));
    for i in 0..m {
        uf.union(full_row, id(grid.row(i)));
    }
    for j in 0..n {
        uf.union(full_row, id(grid.column(j)));
    }
    for i in 0..m {
        for j in 0..n {
            let cell = 1u64 << grid.cell(i, j);
            uf.union(id(grid.row(i) & !cell), id(grid.column(j) & !cell));
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    for e in 0..sets.len() {
        let root = uf.find(e);
        let k = *block_of_root.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[k].push(e);
    }
    Congruence::new(sets.len(), blocks)
}

/// `X(m, n)` modulo the gluing congruence.
pub fn gen_a(m: usize, n: usize) -> Result<PartialAlgebra> {
    let x = gen_x(m, n)?;
    quotient(&x, &gen_sim(m, n)?)
}

/// A certificate for `X(m, n)` built from the points
/// `{a : p ∈ a or q ∈ a}` where the cells `p` and `q` are equal or lie in
/// different rows and columns.
pub fn x_certificate(m: usize, n: usize) -> Result<(PartialAlgebra, RepCertificate)> {
    let grid = Grid::new(m, n)?;
    let (sets, alg) = axial_algebra(m, n)?;
    let cells: Vec<u64> = sets.iter().map(|s| s.cells(grid)).collect();
    let mut points = Vec::new();
    for p in 0..m * n {
        for q in p..m * n {
            let (pi, pj, qi, qj) = (p / n, p % n, q / n, q % n);
            if p == q || (pi != qi && pj != qj) {
                let probe = 1u64 << p | 1u64 << q;
                let mut u = FixedBitSet::with_capacity(alg.len());
                for (k, &c) in cells.iter().enumerate() {
                    u.set(k, c & probe != 0);
                }
                points.push(u);
            }
        }
    }
    let mut cert = RepCertificate::default();
    let mut used: HashMap<usize, usize> = HashMap::new();
    for req in requirements(&alg) {
        let k = points
            .iter()
            .position(|u| req.satisfied_by(u))
            .ok_or_else(|| Error::InvalidCertificate(req.describe(&alg)))?;
        let next = used.len();
        let idx = *used.entry(k).or_insert(next);
        if idx == cert.point_types.len() {
            cert.point_types.push(points[k].clone());
        }
        cert.record(req, idx);
    }
    verify_certificate(&alg, &cert)?;
    Ok((alg, cert))
}
