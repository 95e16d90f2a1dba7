//! Simple undirected graphs, named families, and exhaustive enumeration of
//! labeled connected graphs by adjacency bitmask.
//!
//! Vertices are 0-based. The bitmask of a graph on `n` vertices assigns one bit
//! to every unordered pair `{i, j}` with `i < j`, in row-major order over the
//! upper triangle: `(0,1), (0,2), .., (0,n-1), (1,2), ..`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_N: usize = 7;

/// Largest vertex count whose pair set fits in a `u64` bitmask.
pub const MAX_BITMASK_N: usize = 11;

/// A simple undirected graph: vertex count plus a set of unordered edges.
///
/// Edges are stored as `(i, j)` with `i < j`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range indices.
    /// Edge endpoints may be given in either order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degrees = vec![0; n];
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &edges {
            degrees[i] += 1;
            degrees[j] += 1;
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Graph {
            n,
            edges,
            degrees,
            neighbors,
        }
    }

    /// Decodes an upper-triangle bitmask (see module docs).
    pub fn from_bitmask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_BITMASK_N {
            return Err(Error::InvalidParameter(format!(
                "bitmask graphs need 1 <= n <= {MAX_BITMASK_N}, got {n}"
            )));
        }
        let pairs = upper_pairs(n);
        if pairs.len() < 64 && mask >> pairs.len() != 0 {
            return Err(Error::InvalidParameter(format!(
                "bitmask {mask:#x} has bits beyond the {} pairs of n = {n}",
                pairs.len()
            )));
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Ok(Self::from_sorted(n, edges))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// Upper-triangle bitmask, or `None` when `n` exceeds [`MAX_BITMASK_N`].
    pub fn bitmask(&self) -> Option<u64> {
        if self.n > MAX_BITMASK_N {
            return None;
        }
        let mut mask = 0u64;
        for &(i, j) in &self.edges {
            mask |= 1 << pair_index(self.n, i, j);
        }
        Some(mask)
    }

    /// True iff one breadth-first search from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// Two-colourability, checked per component.
    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &w in &self.neighbors[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Renders the edge-list document: `"n m"` then one `"i j"` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    /// Parses the edge-list document. Blank lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty document".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;

        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref() {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let err = |msg: String| Error::Parse { line, msg };
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, got {text:?}")));
    }
    let a = fields[0]
        .parse()
        .map_err(|_| err(format!("not a non-negative integer: {:?}", fields[0])))?;
    let b = fields[1]
        .parse()
        .map_err(|_| err(format!("not a non-negative integer: {:?}", fields[1])))?;
    Ok((a, b))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::from_edge_list(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `K_n`, n >= 2.
    Complete(usize),
    /// `K_{a,b}`, parts `0..a` and `a..a+b`, a, b >= 1.
    CompleteBipartite(usize, usize),
    /// `K_{1,n-1}` with hub 0, n >= 2.
    Star(usize),
    /// The n-cycle, n >= 3; the canonical connected 2-regular graph.
    Cycle(usize),
}

impl Family {
    pub fn generate(self) -> Result<Graph> {
        match self {
            Family::Complete(n) => {
                check_min("complete", n, 2)?;
                Graph::new(n, upper_pairs(n))
            }
            Family::CompleteBipartite(a, b) => {
                check_min("complete_bipartite part a", a, 1)?;
                check_min("complete_bipartite part b", b, 1)?;
                Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
            Family::Star(n) => {
                check_min("star", n, 2)?;
                Graph::new(n, (1..n).map(|j| (0, j)))
            }
            Family::Cycle(n) => {
                check_min("cycle", n, 3)?;
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
        }
    }
}

fn check_min(what: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::InvalidParameter(format!(
            "{what} requires at least {min}, got {value}"
        )))
    } else {
        Ok(())
    }
}

/// Convenience wrapper over [`Family::generate`].
pub fn generate(family: Family) -> Result<Graph> {
    family.generate()
}

/// All pairs `(i, j)`, `i < j`, in bitmask order.
pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Bit position of pair `{i, j}` (i < j) in the upper-triangle bitmask.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Number of candidate bitmasks for `n` vertices, `2^(n(n-1)/2)`.
pub fn bitmask_count(n: usize) -> u64 {
    1u64 << (n * (n - 1) / 2)
}

/// Connectivity of a bitmask-encoded graph without materializing a [`Graph`].
pub fn bitmask_is_connected(n: usize, mask: u64) -> bool {
    let mut adj = [0u32; MAX_BITMASK_N];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    let all = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

/// Labeled connected graphs over a bitmask range, in increasing bitmask order.
#[derive(Debug, Clone)]
pub struct ConnectedGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = (u64, Graph);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if bitmask_is_connected(self.n, mask) {
                let g = Graph::from_bitmask(self.n, mask).expect("mask within range");
                return Some((mask, g));
            }
        }
        None
    }
}

fn check_enumeration_n(n: usize) -> Result<()> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "enumeration supports 2 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Every labeled connected graph on `n` vertices exactly once, paired with its bitmask.
pub fn enumerate_connected(n: usize) -> Result<ConnectedGraphs> {
    check_enumeration_n(n)?;
    enumerate_connected_range(n, 0..bitmask_count(n))
}

/// Same as [`enumerate_connected`] restricted to a sub-range of bitmasks.
pub fn enumerate_connected_range(n: usize, range: Range<u64>) -> Result<ConnectedGraphs> {
    check_enumeration_n(n)?;
    let total = bitmask_count(n);
    Ok(ConnectedGraphs {
        n,
        next: range.start.min(total),
        end: range.end.min(total),
    })
}
