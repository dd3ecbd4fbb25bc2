//! Motif specifications, their coordinate matrices and classification.
//!
//! Positions `1..=L` and coordinates `1..=p` are one-based in [`RawSpec`]
//! (the form read from files) and zero-based everywhere else.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::value::CoordValue;

/// An unvalidated specification with one-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSpec {
    pub l: usize,
    pub p: usize,
    /// `partitions[m]` lists the blocks of the partition for coordinate `m + 1`.
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// `(row, col, value)` triples, both indices one-based.
    pub constants: Vec<(usize, usize, CoordValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("L and p must be positive (got L={l}, p={p})")]
    ZeroSize { l: usize, p: usize },
    #[error("expected {expected} partitions (one per coordinate), found {found}")]
    PartitionCount { expected: usize, found: usize },
    #[error("partition {partition}: block {block} is empty")]
    EmptyBlock { partition: usize, block: usize },
    #[error("partition {partition}: element {element} is outside 1..={l}")]
    BadIndex {
        partition: usize,
        element: usize,
        l: usize,
    },
    #[error("partition {partition}: element {element} appears in more than one block")]
    OverlappingBlocks { partition: usize, element: usize },
    #[error("constant at row {row}, col {col} is outside the {l}x{p} matrix")]
    ConstantOutOfRange {
        row: usize,
        col: usize,
        l: usize,
        p: usize,
    },
    #[error("row {row} is in no block of partition {col} but has no constant")]
    MissingConstant { row: usize, col: usize },
    #[error("row {row} is covered by partition {col} and cannot also carry a constant")]
    ExtraConstant { row: usize, col: usize },
    #[error("constant at row {row}, col {col} is given twice")]
    DuplicateConstant { row: usize, col: usize },
}

/// Globally unique identifier of a partition block (one variable of the
/// coordinate matrix, one edge of the hypergraph).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub usize);

/// A validated motif specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifSpec {
    l: usize,
    p: usize,
    /// Zero-based blocks, each sorted, blocks ordered by their least element.
    partitions: Vec<Vec<Vec<usize>>>,
    constants: BTreeMap<(usize, usize), CoordValue>,
    /// `cell_block[i][m]` is the block containing row `i` in partition `m`.
    cell_block: Vec<Vec<Option<BlockId>>>,
    /// Column and members of each block, indexed by `BlockId`.
    blocks: Vec<(usize, Vec<usize>)>,
}

/// Checks a raw specification and normalizes it.
pub fn validate_spec(raw: &RawSpec) -> Result<MotifSpec, SpecError> {
    let (l, p) = (raw.l, raw.p);
    if l == 0 || p == 0 {
        return Err(SpecError::ZeroSize { l, p });
    }
    if raw.partitions.len() != p {
        return Err(SpecError::PartitionCount {
            expected: p,
            found: raw.partitions.len(),
        });
    }

    let mut partitions = Vec::with_capacity(p);
    for (m, blocks) in raw.partitions.iter().enumerate() {
        let mut seen = vec![false; l];
        let mut normalized = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(SpecError::EmptyBlock {
                    partition: m + 1,
                    block: b + 1,
                });
            }
            let mut members = Vec::with_capacity(block.len());
            for &element in block {
                if element == 0 || element > l {
                    return Err(SpecError::BadIndex {
                        partition: m + 1,
                        element,
                        l,
                    });
                }
                if core::mem::replace(&mut seen[element - 1], true) {
                    return Err(SpecError::OverlappingBlocks {
                        partition: m + 1,
                        element,
                    });
                }
                members.push(element - 1);
            }
            members.sort_unstable();
            normalized.push(members);
        }
        normalized.sort_unstable_by_key(|block: &Vec<usize>| block[0]);
        partitions.push(normalized);
    }

    let mut constants = BTreeMap::new();
    for (row, col, value) in &raw.constants {
        let (row, col) = (*row, *col);
        if row == 0 || row > l || col == 0 || col > p {
            return Err(SpecError::ConstantOutOfRange { row, col, l, p });
        }
        if constants
            .insert((row - 1, col - 1), value.clone())
            .is_some()
        {
            return Err(SpecError::DuplicateConstant { row, col });
        }
    }

    let mut cell_block = vec![vec![None; p]; l];
    let mut blocks = Vec::new();
    for (m, partition) in partitions.iter().enumerate() {
        for block in partition {
            let id = BlockId(blocks.len());
            for &i in block {
                cell_block[i][m] = Some(id);
            }
            blocks.push((m, block.clone()));
        }
    }

    for (i, row) in cell_block.iter().enumerate() {
        for (m, cell) in row.iter().enumerate() {
            match (cell.is_some(), constants.contains_key(&(i, m))) {
                (false, false) => {
                    return Err(SpecError::MissingConstant {
                        row: i + 1,
                        col: m + 1,
                    })
                }
                (true, true) => {
                    return Err(SpecError::ExtraConstant {
                        row: i + 1,
                        col: m + 1,
                    })
                }
                _ => {}
            }
        }
    }

    Ok(MotifSpec {
        l,
        p,
        partitions,
        constants,
        cell_block,
        blocks,
    })
}

impl MotifSpec {
    /// Tuple length `L`.
    pub fn tuple_len(&self) -> usize {
        self.l
    }

    /// Dimension `p` of the ambient space.
    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn partitions(&self) -> &[Vec<Vec<usize>>] {
        &self.partitions
    }

    pub fn constant(&self, row: usize, col: usize) -> Option<&CoordValue> {
        self.constants.get(&(row, col))
    }

    pub fn has_constants(&self) -> bool {
        !self.constants.is_empty()
    }

    /// Zero-based `((row, col), value)` pairs in row-major order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize), &CoordValue)> {
        self.constants.iter().map(|(k, v)| (*k, v))
    }

    pub fn block_at(&self, row: usize, col: usize) -> Option<BlockId> {
        self.cell_block[row][col]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Column of a block.
    pub fn block_column(&self, id: BlockId) -> usize {
        self.blocks[id.0].0
    }

    pub fn block_members(&self, id: BlockId) -> &[usize] {
        &self.blocks[id.0].1
    }

    /// All blocks in id order as `(id, column, members)`.
    pub fn blocks(&self) -> impl Iterator<Item = (BlockId, usize, &[usize])> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, (m, members))| (BlockId(i), *m, members.as_slice()))
    }

    /// Converts back to the one-based raw form. Blocks come out normalized.
    pub fn to_raw(&self) -> RawSpec {
        RawSpec {
            l: self.l,
            p: self.p,
            partitions: self
                .partitions
                .iter()
                .map(|blocks| {
                    blocks
                        .iter()
                        .map(|b| b.iter().map(|i| i + 1).collect())
                        .collect()
                })
                .collect(),
            constants: self
                .constants
                .iter()
                .map(|(&(i, m), v)| (i + 1, m + 1, v.clone()))
                .collect(),
        }
    }
}

/// One entry of the coordinate matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cell {
    Var(BlockId),
    Const(CoordValue),
}

/// The `L x p` matrix of variables and constants; row `i` is the pattern
/// every point in position `i` of a motif must follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateMatrix {
    rows: Vec<Vec<Cell>>,
    num_vars: usize,
}

impl CoordinateMatrix {
    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Cell] {
        &self.rows[i]
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

impl fmt::Display for CoordinateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "(")?;
            for (m, cell) in row.iter().enumerate() {
                if m > 0 {
                    write!(f, ", ")?;
                }
                match cell {
                    Cell::Var(b) => write!(f, "v{}", b.0 + 1)?,
                    Cell::Const(c) => write!(f, "{c}")?,
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub fn build_matrix(spec: &MotifSpec) -> CoordinateMatrix {
    let rows = (0..spec.l)
        .map(|i| {
            (0..spec.p)
                .map(|m| match spec.cell_block[i][m] {
                    Some(b) => Cell::Var(b),
                    None => Cell::Const(spec.constants[&(i, m)].clone()),
                })
                .collect()
        })
        .collect();
    CoordinateMatrix {
        rows,
        num_vars: spec.num_blocks(),
    }
}

/// Uniform classification: all blocks have size `n`, no constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformClass {
    pub n: usize,
    /// Coordinates grouped by identical partitions, groups ordered by first
    /// coordinate, coordinates ascending within a group.
    pub groups: Vec<Vec<usize>>,
    /// Concatenation of `groups`: the coordinate order that makes identical
    /// partitions contiguous. The spec itself is never reordered.
    pub permutation: Vec<usize>,
}

impl UniformClass {
    pub fn group_lengths(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }
}

/// Every class a specification satisfies. `General` means neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecClass {
    pub uniform: Option<UniformClass>,
    pub single_starred: bool,
}

impl SpecClass {
    pub fn is_general(&self) -> bool {
        self.uniform.is_none() && !self.single_starred
    }
}

impl fmt::Display for SpecClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_general() {
            return write!(f, "general");
        }
        let mut first = true;
        if let Some(u) = &self.uniform {
            write!(f, "uniform(n={}, q={})", u.n, u.groups.len())?;
            first = false;
        }
        if self.single_starred {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "single-starred")?;
        }
        Ok(())
    }
}

pub fn classify_spec(spec: &MotifSpec) -> SpecClass {
    SpecClass {
        uniform: uniform_class(spec),
        single_starred: is_single_starred(spec),
    }
}

fn uniform_class(spec: &MotifSpec) -> Option<UniformClass> {
    if spec.has_constants() {
        return None;
    }
    let n = spec.blocks.first()?.1.len();
    if spec.blocks.iter().any(|(_, b)| b.len() != n) {
        return None;
    }
    // No constants means every row is covered by every partition.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for m in 0..spec.p {
        match groups
            .iter_mut()
            .find(|g| spec.partitions[g[0]] == spec.partitions[m])
        {
            Some(g) => g.push(m),
            None => groups.push(vec![m]),
        }
    }
    let permutation = groups.iter().flatten().copied().collect();
    Some(UniformClass {
        n,
        groups,
        permutation,
    })
}

fn is_single_starred(spec: &MotifSpec) -> bool {
    if spec.has_constants() {
        return false;
    }
    (0..spec.l).all(|i| {
        (0..spec.p)
            .filter(|&m| {
                let b = spec.cell_block[i][m].expect("no constants means full cover");
                spec.blocks[b.0].1.len() == 1
            })
            .count()
            == 1
    })
}
