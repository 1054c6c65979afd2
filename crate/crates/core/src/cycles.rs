//! Exponent-chain enumeration, cycle census, girth, and an independent
//! BFS girth oracle on the expanded parity-check matrix.
//!
//! Chains are closed backtrack-free walks in the Tanner graph of the mother
//! matrix: consecutive edges differ (also across the wrap-around), but blocks
//! and nodes may be revisited. Walks that revisit blocks matter because they
//! still create cycles after expansion; at length 4 they coincide with plain
//! block cycles. Each chain is counted once, represented by the
//! lexicographically minimal form under even rotation and reversal of its
//! edge sequence.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{alternating_sum_is_cycle, BinaryParityMatrix, ExponentMatrix, MotherMatrix};

/// A closed alternating walk through the blocks of an exponent matrix,
/// carrying the exponent values read along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentChain {
    blocks: Vec<(u32, u32)>,
    exponents: Vec<i64>,
}

impl ExponentChain {
    /// Walk length `2l` (number of traversed blocks).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The `(row, col)` block sequence in walk order.
    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    /// The exponent sequence `a_1, ..., a_2l` in walk order.
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Whether the chain forms cycles after expansion with the given
    /// circulant size.
    pub fn forms_cycle(&self, circulant_size: i64) -> Result<bool> {
        alternating_sum_is_cycle(&self.exponents, circulant_size)
    }
}

/// Girth value, possibly only bounded from below when no cycle exists up to
/// the inspected cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(usize),
    /// No cycle of length `< bound` exists; the girth is at least `bound`.
    AtLeast(usize),
}

impl Girth {
    pub fn is_finite(&self) -> bool {
        matches!(self, Girth::Finite(_))
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::AtLeast(_)) => Ordering::Less,
            (Girth::AtLeast(_), Girth::Finite(_)) => Ordering::Greater,
            (Girth::AtLeast(a), Girth::AtLeast(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::AtLeast(bound) => write!(f, ">={bound}"),
        }
    }
}

/// Per-length chain counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthCount {
    pub len: usize,
    pub chains_total: u64,
    pub chains_forming_cycle: u64,
}

/// Chain counts for every even length from 4 up to a cap, together with the
/// derived girth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    circulant_size: i64,
    max_len: usize,
    counts: Vec<LengthCount>,
}

impl CycleCensus {
    pub fn circulant_size(&self) -> i64 {
        self.circulant_size
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn counts(&self) -> &[LengthCount] {
        &self.counts
    }

    /// Smallest length whose chains include a cycle, or `AtLeast(cap + 2)`.
    pub fn girth(&self) -> Girth {
        self.counts
            .iter()
            .find(|c| c.chains_forming_cycle > 0)
            .map(|c| Girth::Finite(c.len))
            .unwrap_or(Girth::AtLeast(self.max_len + 2))
    }

    /// Number of cycle-forming chains at the girth length (0 if none found).
    pub fn cycles_at_girth(&self) -> u64 {
        match self.girth() {
            Girth::Finite(g) => self
                .counts
                .iter()
                .find(|c| c.len == g)
                .map(|c| c.chains_forming_cycle)
                .unwrap_or(0),
            Girth::AtLeast(_) => 0,
        }
    }

    /// `(x, y)` at the inspected length: cycle-forming chains and the rest.
    pub fn xy_at(&self, len: usize) -> Option<(u64, u64)> {
        self.counts
            .iter()
            .find(|c| c.len == len)
            .map(|c| (c.chains_forming_cycle, c.chains_total - c.chains_forming_cycle))
    }
}

fn validate_cap(cap: usize) -> Result<()> {
    if cap < 4 || cap % 2 != 0 {
        return Err(Error::BadLengthCap { cap });
    }
    Ok(())
}

/// Bipartite adjacency of the mother matrix's Tanner graph.
struct BlockGraph {
    row_adj: Vec<Vec<u32>>,
    col_adj: Vec<Vec<u32>>,
}

impl BlockGraph {
    fn new(mother: &MotherMatrix) -> Self {
        let mut row_adj = vec![Vec::new(); mother.rows()];
        let mut col_adj: Vec<Vec<u32>> = vec![Vec::new(); mother.cols()];
        for (i, row) in row_adj.iter_mut().enumerate() {
            for (j, col) in col_adj.iter_mut().enumerate() {
                if mother.bit(i, j) {
                    row.push(j as u32);
                    col.push(i as u32);
                }
            }
        }
        Self { row_adj, col_adj }
    }

    /// Calls `visit` once per canonical closed backtrack-free walk with even
    /// length in `min_len..=max_len`.
    fn visit_closed_walks<F: FnMut(&[(u32, u32)])>(
        &self,
        min_len: usize,
        max_len: usize,
        mut visit: F,
    ) {
        let mut dfs = Dfs {
            row_adj: &self.row_adj,
            col_adj: &self.col_adj,
            min_len,
            max_len,
            start: 0,
            edges: Vec::with_capacity(max_len),
            visit: &mut visit,
        };
        for start in 0..self.row_adj.len() as u32 {
            dfs.start = start;
            dfs.at_row(start);
        }
    }
}

struct Dfs<'a, F: FnMut(&[(u32, u32)])> {
    row_adj: &'a [Vec<u32>],
    col_adj: &'a [Vec<u32>],
    min_len: usize,
    max_len: usize,
    start: u32,
    edges: Vec<(u32, u32)>,
    visit: &'a mut F,
}

impl<F: FnMut(&[(u32, u32)])> Dfs<'_, F> {
    fn at_row(&mut self, row: u32) {
        let depth = self.edges.len();
        if depth >= self.min_len && row == self.start {
            let first = self.edges[0];
            if *self.edges.last().unwrap() != first && is_canonical(&self.edges) {
                (self.visit)(&self.edges);
            }
        }
        if depth == self.max_len {
            return;
        }
        let row_adj = self.row_adj;
        let first = self.edges.first().copied();
        let last = self.edges.last().copied();
        for &col in &row_adj[row as usize] {
            let edge = (row, col);
            if Some(edge) == last {
                continue;
            }
            // A canonical walk starts with its minimal edge.
            if matches!(first, Some(f) if edge < f) {
                continue;
            }
            self.edges.push(edge);
            self.at_col(col);
            self.edges.pop();
        }
    }

    fn at_col(&mut self, col: u32) {
        if self.edges.len() == self.max_len {
            return;
        }
        let col_adj = self.col_adj;
        let first = self.edges[0];
        let last = *self.edges.last().unwrap();
        for &row in &col_adj[col as usize] {
            let edge = (row, col);
            if edge == last || edge < first {
                continue;
            }
            self.edges.push(edge);
            self.at_row(row);
            self.edges.pop();
        }
    }
}

/// Whether `seq` is the lexicographically minimal representation of its
/// equivalence class under even rotation and reversal.
fn is_canonical(seq: &[(u32, u32)]) -> bool {
    let n = seq.len();
    for s in (2..n).step_by(2) {
        if variant_is_less(seq, |t| seq[(s + t) % n]) {
            return false;
        }
    }
    for s in (0..n).step_by(2) {
        if variant_is_less(seq, |t| seq[n - 1 - (s + t) % n]) {
            return false;
        }
    }
    true
}

fn variant_is_less(seq: &[(u32, u32)], variant: impl Fn(usize) -> (u32, u32)) -> bool {
    for (t, &b) in seq.iter().enumerate() {
        let a = variant(t);
        if a != b {
            return a < b;
        }
    }
    false
}

fn alternating_sum_over(matrix: &ExponentMatrix, edges: &[(u32, u32)]) -> i128 {
    let mut sum: i128 = 0;
    for (t, &(i, j)) in edges.iter().enumerate() {
        let a = matrix.entry(i as usize, j as usize) as i128;
        if t % 2 == 0 {
            sum -= a;
        } else {
            sum += a;
        }
    }
    sum
}

/// Enumerates every chain class of even length `4..=max_len` exactly once.
///
/// The result can be large for dense matrices and big caps; `census` and
/// `shortest_cycles` count without materializing chains.
pub fn enumerate_chains(matrix: &ExponentMatrix, max_len: usize) -> Result<Vec<ExponentChain>> {
    validate_cap(max_len)?;
    let graph = BlockGraph::new(&matrix.mother());
    let mut chains = Vec::new();
    graph.visit_closed_walks(4, max_len, |edges| {
        let exponents = edges
            .iter()
            .map(|&(i, j)| matrix.entry(i as usize, j as usize))
            .collect();
        chains.push(ExponentChain {
            blocks: edges.to_vec(),
            exponents,
        });
    });
    Ok(chains)
}

/// Counts chains and cycle-forming chains per length up to `max_len`.
pub fn census(matrix: &ExponentMatrix, max_len: usize) -> Result<CycleCensus> {
    validate_cap(max_len)?;
    let graph = BlockGraph::new(&matrix.mother());
    let l = matrix.circulant_size() as i128;
    let mut counts: Vec<LengthCount> = (0..(max_len - 2) / 2)
        .map(|i| LengthCount {
            len: 4 + 2 * i,
            chains_total: 0,
            chains_forming_cycle: 0,
        })
        .collect();
    graph.visit_closed_walks(4, max_len, |edges| {
        let bucket = &mut counts[(edges.len() - 4) / 2];
        bucket.chains_total += 1;
        if alternating_sum_over(matrix, edges).rem_euclid(l) == 0 {
            bucket.chains_forming_cycle += 1;
        }
    });
    Ok(CycleCensus {
        circulant_size: matrix.circulant_size(),
        max_len,
        counts,
    })
}

/// Girth and the number of cycle-forming chains at the girth length,
/// enumerating lengths in increasing order and stopping at the first hit.
pub fn shortest_cycles(matrix: &ExponentMatrix, max_len: usize) -> Result<(Girth, u64)> {
    validate_cap(max_len)?;
    let graph = BlockGraph::new(&matrix.mother());
    let l = matrix.circulant_size() as i128;
    let mut len = 4;
    while len <= max_len {
        let mut cycles = 0u64;
        graph.visit_closed_walks(len, len, |edges| {
            if alternating_sum_over(matrix, edges).rem_euclid(l) == 0 {
                cycles += 1;
            }
        });
        if cycles > 0 {
            return Ok((Girth::Finite(len), cycles));
        }
        len += 2;
    }
    Ok((Girth::AtLeast(max_len + 2), 0))
}

/// Girth of the bipartite Tanner graph of `h` by breadth-first search from
/// every vertex, independent of the chain machinery.
pub fn graph_girth(h: &BinaryParityMatrix, cap: usize) -> Result<Girth> {
    validate_cap(cap)?;
    let m = h.row_count();
    let n = h.col_count();
    let vertices = m + n;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); vertices];
    for (r, c) in h.ones() {
        adj[r].push((m + c) as u32);
        adj[m + c].push(r as u32);
    }

    let depth_limit = (cap / 2) as u32;
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; vertices];
    let mut parent = vec![u32::MAX; vertices];
    let mut queue = Vec::with_capacity(vertices);

    for root in 0..vertices {
        queue.clear();
        queue.push(root as u32);
        dist[root] = 0;
        parent[root] = u32::MAX;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if dist[u as usize] >= depth_limit {
                continue;
            }
            for &w in &adj[u as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    parent[w as usize] = u;
                    queue.push(w);
                } else if parent[u as usize] != w && parent[w as usize] != u {
                    let cycle = dist[u as usize] as usize + dist[w as usize] as usize + 1;
                    best = best.min(cycle);
                }
            }
        }
        for &v in &queue {
            dist[v as usize] = u32::MAX;
            parent[v as usize] = u32::MAX;
        }
        if best == 4 {
            break;
        }
    }

    if best <= cap {
        Ok(Girth::Finite(best))
    } else {
        Ok(Girth::AtLeast(cap + 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(rows: usize, cols: usize, l: i64, entries: &[i64]) -> ExponentMatrix {
        ExponentMatrix::new(rows, cols, l, entries.to_vec()).unwrap()
    }

    #[test]
    fn two_by_two_biclique_has_one_four_chain() {
        let m = matrix(2, 2, 5, &[0, 1, 2, 4]);
        let chains = enumerate_chains(&m, 4).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].len(), 4);
        // Walk order: down column 0, across to column 1, back up.
        assert_eq!(chains[0].blocks(), &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(chains[0].exponents(), &[0, 2, 4, 1]);
        // -0 + 2 - 4 + 1 = -1, not divisible by 5.
        assert!(!chains[0].forms_cycle(5).unwrap());
        assert!(chains[0].forms_cycle(1).unwrap());
    }

    #[test]
    fn single_row_has_no_chains() {
        let m = matrix(1, 2, 5, &[0, 0]);
        assert!(enumerate_chains(&m, 8).unwrap().is_empty());
    }

    #[test]
    fn two_by_three_biclique_has_three_four_chains() {
        let m = matrix(2, 3, 5, &[0; 6]);
        let chains = enumerate_chains(&m, 4).unwrap();
        assert_eq!(chains.len(), 3);
    }

    #[test]
    fn biclique_walk_classes_per_length() {
        // K_{2,2} is 2-regular, so the only closed backtrack-free walks are
        // repeated traversals of its unique 4-cycle.
        let m = matrix(2, 2, 5, &[0; 4]);
        let c = census(&m, 12).unwrap();
        let totals: Vec<u64> = c.counts().iter().map(|c| c.chains_total).collect();
        assert_eq!(totals, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn census_zero_matrix_has_girth_four() {
        let m = matrix(2, 2, 5, &[0, 0, 0, 0]);
        let c = census(&m, 4).unwrap();
        assert_eq!(c.girth(), Girth::Finite(4));
        assert_eq!(c.cycles_at_girth(), 1);
        assert_eq!(c.xy_at(4), Some((1, 0)));
    }

    #[test]
    fn census_detects_non_cycle_chain() {
        let m = matrix(2, 2, 2, &[0, 0, 0, 1]);
        let c = census(&m, 4).unwrap();
        assert_eq!(c.xy_at(4), Some((0, 1)));
        assert_eq!(c.girth(), Girth::AtLeast(6));
        // The doubled walk around the block 4-cycle closes at length 8.
        let (g, count) = shortest_cycles(&m, 12).unwrap();
        assert_eq!(g, Girth::Finite(8));
        assert_eq!(count, 1);
    }

    #[test]
    fn census_with_circulant_size_one_counts_every_chain_as_cycle() {
        let m = matrix(3, 3, 1, &[0; 9]);
        let c = census(&m, 8).unwrap();
        for bucket in c.counts() {
            assert_eq!(bucket.chains_total, bucket.chains_forming_cycle);
        }
        assert!(c.counts()[0].chains_total > 0);
    }

    #[test]
    fn graph_girth_examples() {
        let dup = matrix(2, 2, 3, &[0, 0, 0, 0]).expand();
        assert_eq!(graph_girth(&dup, 12).unwrap(), Girth::Finite(4));

        let eight = matrix(2, 2, 2, &[0, 0, 0, 1]).expand();
        assert_eq!(graph_girth(&eight, 12).unwrap(), Girth::Finite(8));

        let single = matrix(1, 1, 4, &[0]).expand();
        assert_eq!(graph_girth(&single, 12).unwrap(), Girth::AtLeast(14));
    }

    #[test]
    fn census_girth_matches_bfs_on_small_cases() {
        let cases = [
            matrix(2, 2, 4, &[0, 1, 2, 3]),
            matrix(2, 3, 3, &[0, 1, 2, 2, 1, 0]),
            matrix(3, 3, 5, &[0, 1, -1, 2, -1, 3, -1, 4, 0]),
        ];
        for m in cases {
            let (g, _) = shortest_cycles(&m, 10).unwrap();
            let oracle = graph_girth(&m.expand(), 10).unwrap();
            assert_eq!(g, oracle, "matrix {m:?}");
        }
    }

    #[test]
    fn chain_counts_invariant_under_permutation() {
        let m = matrix(3, 4, 6, &[0, 1, 2, -1, 3, -1, 4, 5, -1, 0, 1, 2]);
        // swap rows 0/2 and columns 1/3
        let mut permuted = vec![0i64; 12];
        let row_map = [2usize, 1, 0];
        let col_map = [0usize, 3, 2, 1];
        for i in 0..3 {
            for j in 0..4 {
                permuted[row_map[i] * 4 + col_map[j]] = m.entry(i, j);
            }
        }
        let p = matrix(3, 4, 6, &permuted);
        let ca = census(&m, 10).unwrap();
        let cb = census(&p, 10).unwrap();
        let totals = |c: &CycleCensus| c.counts().iter().map(|x| x.chains_total).collect::<Vec<_>>();
        let cycles = |c: &CycleCensus| {
            c.counts()
                .iter()
                .map(|x| x.chains_forming_cycle)
                .collect::<Vec<_>>()
        };
        assert_eq!(totals(&ca), totals(&cb));
        assert_eq!(cycles(&ca), cycles(&cb));
    }

    #[test]
    fn rejects_bad_caps() {
        let m = matrix(2, 2, 4, &[0; 4]);
        assert!(matches!(census(&m, 3), Err(Error::BadLengthCap { cap: 3 })));
        assert!(matches!(census(&m, 7), Err(Error::BadLengthCap { cap: 7 })));
        assert!(matches!(
            graph_girth(&m.expand(), 2),
            Err(Error::BadLengthCap { cap: 2 })
        ));
    }

    proptest! {
        #[test]
        fn alternating_sum_invariant_under_even_rotation_and_reversal(
            half in 2usize..6,
            l in 1i64..12,
            seed in proptest::collection::vec(0i64..12, 12),
            offset in 0usize..6,
        ) {
            let len = 2 * half;
            let seq: Vec<i64> = seed.iter().take(len).map(|&v| v % l.max(1)).collect();
            prop_assume!(seq.len() == len);
            let base = alternating_sum_is_cycle(&seq, l).unwrap();

            let shift = (2 * offset) % len;
            let rotated: Vec<i64> = (0..len).map(|t| seq[(t + shift) % len]).collect();
            prop_assert_eq!(alternating_sum_is_cycle(&rotated, l).unwrap(), base);

            let reversed: Vec<i64> = seq.iter().rev().copied().collect();
            prop_assert_eq!(alternating_sum_is_cycle(&reversed, l).unwrap(), base);
        }
    }
}
