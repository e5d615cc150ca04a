//! Graph oracle: build small distance-regular graphs explicitly and compute
//! the Gram matrix by brute force from their distance matrices.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gram::{GramMatrix, CANONICAL_ORDER};
use crate::linalg::IntMatrix;
use crate::numeric::BigInt;
use crate::params::{IntersectionArray, ParameterTable};

/// Largest vertex count the brute-force path accepts.
pub const MAX_VERTICES: usize = 1024;

/// Named constructions understood by [`construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// `H(d, q)`: words of length `d` over `q` symbols.
    Hamming { d: usize, q: usize },
    /// `J(n, k)`: `k`-subsets of an `n`-set.
    Johnson { n: usize, k: usize },
    /// `C_n`.
    Cycle(usize),
    /// `O_k`: `(k-1)`-subsets of a `(2k-1)`-set, adjacent when disjoint.
    Odd(usize),
    /// Folded `n`-cube.
    FoldedCube(usize),
    /// Halved `n`-cube.
    HalvedCube(usize),
    /// Read from an edge list.
    FromEdgeList,
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Hamming { d, q } => write!(f, "hamming:{d}:{q}"),
            GraphFamily::Johnson { n, k } => write!(f, "johnson:{n}:{k}"),
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::Odd(k) => write!(f, "odd:{k}"),
            GraphFamily::FoldedCube(n) => write!(f, "folded-cube:{n}"),
            GraphFamily::HalvedCube(n) => write!(f, "halved-cube:{n}"),
            GraphFamily::FromEdgeList => write!(f, "edges"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// Parses `name:arg[:arg]`, e.g. `hamming:3:3` or `cycle:7`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let args: Vec<usize> = parts
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad family argument '{p}' in '{s}'")))
            })
            .collect::<Result<_>>()?;
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("'{name}' takes {n} argument(s), got {}", args.len())))
            }
        };
        match name.as_str() {
            "hamming" => want(2).map(|_| GraphFamily::Hamming { d: args[0], q: args[1] }),
            "johnson" => want(2).map(|_| GraphFamily::Johnson { n: args[0], k: args[1] }),
            "cycle" => want(1).map(|_| GraphFamily::Cycle(args[0])),
            "odd" => want(1).map(|_| GraphFamily::Odd(args[0])),
            "folded-cube" => want(1).map(|_| GraphFamily::FoldedCube(args[0])),
            "halved-cube" => want(1).map(|_| GraphFamily::HalvedCube(args[0])),
            _ => Err(Error::Unsupported(format!("unknown graph family '{name}'"))),
        }
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    family: GraphFamily,
    adj: Vec<Vec<usize>>,
}

impl ExplicitGraph {
    fn from_adjacency(family: GraphFamily, mut adj: Vec<Vec<usize>>) -> Result<Self> {
        if adj.len() > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                adj.len()
            )));
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }
        Ok(ExplicitGraph { family, adj })
    }

    /// Build a graph from adjacency predicate on `n` vertices.
    fn from_predicate(family: GraphFamily, n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "{family} has {n} vertices, above the limit of {MAX_VERTICES}"
            )));
        }
        let adj = (0..n)
            .map(|x| (0..n).filter(|&y| y != x && adjacent(x, y)).collect())
            .collect();
        Self::from_adjacency(family, adj)
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances from `x`; `None` for unreachable vertices.
    pub fn distances_from(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[x] = Some(0);
        queue.push_back(x);
        while let Some(y) = queue.pop_front() {
            let dy = dist[y].unwrap();
            for &z in &self.adj[y] {
                if dist[z].is_none() {
                    dist[z] = Some(dy + 1);
                    queue.push_back(z);
                }
            }
        }
        dist
    }
}

/// Parse `u v` lines of 0-indexed vertex numbers. Blank lines and `#`
/// comments are skipped; repeated edges collapse. The vertex count is one
/// more than the largest index seen.
pub fn from_edge_list(text: &str) -> Result<ExplicitGraph> {
    let mut edges = BTreeSet::new();
    let mut n = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected two vertex indices, got '{line}'",
                lineno + 1
            )));
        }
        let idx = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v < MAX_VERTICES)
                .ok_or_else(|| Error::Parse(format!("line {}: bad vertex index '{t}'", lineno + 1)))
        };
        let (u, v) = (idx(toks[0])?, idx(toks[1])?);
        if u == v {
            return Err(Error::Parse(format!("line {}: self-loop on {u}", lineno + 1)));
        }
        n = n.max(u + 1).max(v + 1);
        edges.insert((u.min(v), u.max(v)));
    }
    if edges.is_empty() {
        return Err(Error::Parse("edge list is empty".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    ExplicitGraph::from_adjacency(GraphFamily::FromEdgeList, adj)
}

fn popcount(x: usize) -> u32 {
    x.count_ones()
}

/// Subsets of `{0..n-1}` of size `k`, as bitmasks in increasing order.
fn subsets(n: usize, k: usize) -> Vec<usize> {
    (0usize..1 << n).filter(|&s| popcount(s) as usize == k).collect()
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Build the named graph.
pub fn construct(family: &GraphFamily) -> Result<ExplicitGraph> {
    let too_big = || Error::Unsupported(format!("{family} is too large"));
    match *family {
        GraphFamily::Hamming { d, q } => {
            if d == 0 || q < 2 {
                return Err(Error::Unsupported(format!("{family} is degenerate")));
            }
            let n = checked_pow(q, d).filter(|&n| n <= MAX_VERTICES).ok_or_else(too_big)?;
            let digits = |mut x: usize| {
                let mut out = vec![0; d];
                for slot in out.iter_mut() {
                    *slot = x % q;
                    x /= q;
                }
                out
            };
            let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
            ExplicitGraph::from_predicate(family.clone(), n, |x, y| {
                words[x].iter().zip(&words[y]).filter(|(a, b)| a != b).count() == 1
            })
        }
        GraphFamily::Johnson { n, k } => {
            if k == 0 || k >= n || n > 20 {
                return Err(too_big());
            }
            let sets = subsets(n, k);
            ExplicitGraph::from_predicate(family.clone(), sets.len(), |x, y| {
                popcount(sets[x] & sets[y]) as usize == k - 1
            })
        }
        GraphFamily::Cycle(n) => {
            if n < 3 {
                return Err(Error::Unsupported(format!("{family} is degenerate")));
            }
            ExplicitGraph::from_predicate(family.clone(), n, |x, y| (x + 1) % n == y || (y + 1) % n == x)
        }
        GraphFamily::Odd(k) => {
            if !(2..=8).contains(&k) {
                return Err(too_big());
            }
            let sets = subsets(2 * k - 1, k - 1);
            ExplicitGraph::from_predicate(family.clone(), sets.len(), |x, y| sets[x] & sets[y] == 0)
        }
        GraphFamily::FoldedCube(n) => {
            if !(3..=11).contains(&n) {
                return Err(too_big());
            }
            // Words of length n - 1; flipping every coordinate is the extra edge.
            let full = (1usize << (n - 1)) - 1;
            ExplicitGraph::from_predicate(family.clone(), 1 << (n - 1), |x, y| {
                let diff = x ^ y;
                popcount(diff) == 1 || diff == full
            })
        }
        GraphFamily::HalvedCube(n) => {
            if !(3..=11).contains(&n) {
                return Err(too_big());
            }
            let words: Vec<usize> = (0usize..1 << n).filter(|&w| popcount(w).is_multiple_of(2)).collect();
            ExplicitGraph::from_predicate(family.clone(), words.len(), |x, y| {
                popcount(words[x] ^ words[y]) == 2
            })
        }
        GraphFamily::FromEdgeList => Err(Error::Unsupported(
            "edge-list graphs are built with from_edge_list".into(),
        )),
    }
}

/// Distance matrix and intersection numbers of a distance-regular graph.
#[derive(Clone, Debug)]
pub struct ExplicitScheme {
    n: usize,
    diameter: usize,
    dist: Vec<u16>,
    b: Vec<i64>,
    c: Vec<i64>,
}

/// Compute all distances and check distance-regularity.
pub fn extract_scheme(g: &ExplicitGraph) -> Result<ExplicitScheme> {
    let n = g.vertex_count();
    let mut dist = vec![0u16; n * n];
    for x in 0..n {
        for (y, d) in g.distances_from(x).into_iter().enumerate() {
            match d {
                Some(d) => dist[x * n + y] = d as u16,
                None => return Err(Error::NotDistanceRegular("graph is disconnected".into())),
            }
        }
    }
    let diameter = dist.iter().copied().max().unwrap_or(0) as usize;
    if diameter == 0 {
        return Err(Error::NotDistanceRegular("graph has a single vertex".into()));
    }
    let mut b: Vec<Option<i64>> = vec![None; diameter + 1];
    let mut c: Vec<Option<i64>> = vec![None; diameter + 1];
    for x in 0..n {
        for y in 0..n {
            let i = dist[x * n + y] as usize;
            let (mut ci, mut bi) = (0i64, 0i64);
            for &z in g.neighbours(y) {
                let dz = dist[x * n + z] as usize;
                if dz + 1 == i {
                    ci += 1;
                } else if dz == i + 1 {
                    bi += 1;
                }
            }
            for (slot, v, name) in [(&mut c[i], ci, 'c'), (&mut b[i], bi, 'b')] {
                match *slot {
                    None => *slot = Some(v),
                    Some(prev) if prev != v => {
                        return Err(Error::NotDistanceRegular(format!(
                            "{name}_{i} is not constant ({prev} vs {v})"
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(ExplicitScheme {
        n,
        diameter,
        dist,
        b: b[..diameter].iter().map(|v| v.unwrap()).collect(),
        c: c[1..].iter().map(|v| v.unwrap()).collect(),
    })
}

impl ExplicitScheme {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.n + y] as usize
    }

    /// `b_0..b_{D-1}`.
    pub fn b_values(&self) -> &[i64] {
        &self.b
    }

    /// `c_1..c_D`.
    pub fn c_values(&self) -> &[i64] {
        &self.c
    }

    /// The derived array, subject to the usual validation (diameter >= 3).
    pub fn intersection_array(&self) -> Result<IntersectionArray> {
        IntersectionArray::new(&self.b, &self.c)
    }

    fn a_entry(&self, i: usize, x: usize, y: usize) -> i64 {
        (self.distance(x, y) == i) as i64
    }

    /// Distance-`i` matrix `A_i` as dense integers.
    pub fn distance_matrix(&self, i: usize) -> Vec<i64> {
        (0..self.n * self.n)
            .map(|e| (self.dist[e] as usize == i) as i64)
            .collect()
    }

    /// Vertices of `Γ_i(base)`, i.e. the support of `E*_i`.
    pub fn shell(&self, base: usize, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&z| self.distance(base, z) == i).collect()
    }

    /// Distance-`i` graphs (`1 <= i <= D`) that are disconnected.
    pub fn disconnected_distance_graphs(&self) -> Vec<usize> {
        (1..=self.diameter)
            .filter(|&i| {
                let mut uf = UnionFind::new(self.n);
                for x in 0..self.n {
                    for y in x + 1..self.n {
                        if self.distance(x, y) == i {
                            uf.union(x, y);
                        }
                    }
                }
                uf.components() > 1
            })
            .collect()
    }

    pub fn is_primitive(&self) -> bool {
        self.disconnected_distance_graphs().is_empty()
    }

    /// `A A_i = b_{i-1} A_{i-1} + a_i A_i + c_{i+1} A_{i+1}` for `0 <= i <= D`,
    /// with `A_{D+1} = 0`. Equivalent to `v_i(A) = A_i` and `v_{D+1}(A) = 0`.
    pub fn check_distance_polynomials(&self) -> bool {
        let n = self.n;
        let d = self.diameter;
        let k = self.b[0];
        let b = |i: usize| if i < d { self.b[i] } else { 0 };
        let c = |i: usize| if (1..=d).contains(&i) { self.c[i - 1] } else { 0 };
        for i in 0..=d {
            let a_i = k - b(i) - c(i);
            for x in 0..n {
                for y in 0..n {
                    // (A A_i)_{xy} = #{z ~ x : d(z, y) = i}
                    let lhs = (0..n)
                        .filter(|&z| self.distance(x, z) == 1 && self.distance(z, y) == i)
                        .count() as i64;
                    let mut rhs = a_i * self.a_entry(i, x, y);
                    if i > 0 {
                        rhs += b(i - 1) * self.a_entry(i - 1, x, y);
                    }
                    if i < d {
                        rhs += c(i + 1) * self.a_entry(i + 1, x, y);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `|Γ_i(base) ∩ Γ_j(y)| = p^h_ij` for every `y` at distance `h` from `base`.
    pub fn check_parameter_table(&self, pt: &ParameterTable, base: usize) -> bool {
        let d = self.diameter;
        if pt.diameter() != d {
            return false;
        }
        (0..self.n).all(|y| {
            let h = self.distance(base, y);
            (0..=d).all(|i| {
                (0..=d).all(|j| {
                    let count = (0..self.n)
                        .filter(|&z| self.distance(base, z) == i && self.distance(y, z) == j)
                        .count();
                    pt.p(h, i, j).to_usize() == Some(count)
                })
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Dense `sum sign * A_l E*_j A_r` over the terms of one family.
fn family_matrix(s: &ExplicitScheme, base: usize, terms: [(i64, usize, usize); 2], j: usize) -> Vec<i64> {
    let n = s.n;
    let shell = s.shell(base, j);
    let mut out = vec![0i64; n * n];
    for (sign, l, r) in terms {
        for &z in &shell {
            let left: Vec<usize> = (0..n).filter(|&x| s.distance(x, z) == l).collect();
            let right: Vec<usize> = (0..n).filter(|&y| s.distance(z, y) == r).collect();
            for &x in &left {
                let row = &mut out[x * n..(x + 1) * n];
                for &y in &right {
                    row[y] += sign;
                }
            }
        }
    }
    out
}

/// `G` computed directly as trace inner products of explicit matrices,
/// with dual idempotents taken relative to `base`.
pub fn brute_force_gram(s: &ExplicitScheme, base: usize) -> Result<GramMatrix> {
    let d = s.diameter;
    if d < 3 {
        return Err(Error::Diameter(d));
    }
    if base >= s.n {
        return Err(Error::Parse(format!("base vertex {base} out of range")));
    }
    let mats: Vec<Vec<i64>> = CANONICAL_ORDER
        .iter()
        .flat_map(|f| (1..=d).map(move |j| (*f, j)))
        .map(|(f, j)| family_matrix(s, base, f.terms(), j))
        .collect();
    let dim = mats.len();
    let mut entries = IntMatrix::zeros(dim);
    for p in 0..dim {
        for q in p..dim {
            let v: i64 = mats[p].iter().zip(&mats[q]).map(|(x, y)| x * y).sum();
            entries[(p, q)] = BigInt::from(v);
            entries[(q, p)] = BigInt::from(v);
        }
    }
    Ok(GramMatrix::from_matrix(d, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::build_gram;
    use crate::params::compute_parameter_table;

    const PETERSEN: &str = "\
# outer cycle, spokes, inner pentagram
0 1\n1 2\n2 3\n3 4\n4 0
0 5\n1 6\n2 7\n3 8\n4 9
5 7\n7 9\n9 6\n6 8\n8 5
";

    #[test]
    fn petersen_from_edges() {
        let g = from_edge_list(PETERSEN).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        let s = extract_scheme(&g).unwrap();
        assert_eq!(s.diameter(), 2);
        assert_eq!(s.b_values(), &[3, 2]);
        assert_eq!(s.c_values(), &[1, 1]);
        assert!(matches!(s.intersection_array(), Err(Error::Diameter(2))));
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(from_edge_list("1 1"), Err(Error::Parse(_))));
        assert!(matches!(from_edge_list("0 1 2"), Err(Error::Parse(_))));
        assert!(matches!(from_edge_list("0 x"), Err(Error::Parse(_))));
        assert!(matches!(from_edge_list("# nothing\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn family_syntax_round_trips() {
        for text in ["hamming:3:3", "johnson:7:3", "cycle:7", "odd:4", "folded-cube:7", "halved-cube:7"] {
            let f: GraphFamily = text.parse().unwrap();
            assert_eq!(alloc::format!("{f}"), text);
        }
        assert!(matches!("petersen".parse::<GraphFamily>(), Err(Error::Unsupported(_))));
        assert!(matches!("cycle:x".parse::<GraphFamily>(), Err(Error::Parse(_))));
    }

    #[test]
    fn arrays_of_named_families() {
        let cases = [
            ("hamming:3:3", "6,4,2;1,2,3"),
            ("johnson:7:3", "12,6,2;1,4,9"),
            ("cycle:7", "2,1,1;1,1,1"),
            ("odd:4", "4,3,3;1,1,2"),
            ("folded-cube:7", "7,6,5;1,2,3"),
            ("halved-cube:7", "21,10,3;1,6,15"),
        ];
        for (fam, text) in cases {
            let g = construct(&fam.parse().unwrap()).unwrap();
            let s = extract_scheme(&g).unwrap();
            let a = s.intersection_array().unwrap();
            assert_eq!(a.to_text(), text, "{fam}");
            assert!(s.check_distance_polynomials(), "{fam}");
        }
    }

    #[test]
    fn cube_is_imprimitive() {
        let g = construct(&GraphFamily::Hamming { d: 3, q: 2 }).unwrap();
        let s = extract_scheme(&g).unwrap();
        assert!(!s.is_primitive());
        // Bipartite halves and antipodal pairs.
        assert_eq!(s.disconnected_distance_graphs(), vec![2, 3]);
        let h = extract_scheme(&construct(&GraphFamily::Hamming { d: 3, q: 3 }).unwrap()).unwrap();
        assert!(h.is_primitive());
    }

    #[test]
    fn non_distance_regular_rejected() {
        // A path on four vertices.
        let g = from_edge_list("0 1\n1 2\n2 3").unwrap();
        assert!(matches!(extract_scheme(&g), Err(Error::NotDistanceRegular(_))));
        // Vertex 0 never appears, so it is isolated.
        let g = from_edge_list("1 2\n2 3\n3 1").unwrap();
        assert!(matches!(extract_scheme(&g), Err(Error::NotDistanceRegular(_))));
    }

    #[test]
    fn brute_force_matches_formula() {
        for fam in ["hamming:3:3", "cycle:7", "odd:4"] {
            let s = extract_scheme(&construct(&fam.parse().unwrap()).unwrap()).unwrap();
            let pt = compute_parameter_table(&s.intersection_array().unwrap()).unwrap();
            assert!(s.check_parameter_table(&pt, 0));
            assert_eq!(brute_force_gram(&s, 0).unwrap(), build_gram(&pt), "{fam}");
        }
    }

    #[test]
    fn base_vertex_does_not_matter() {
        let s = extract_scheme(&construct(&GraphFamily::Cycle(9)).unwrap()).unwrap();
        let g0 = brute_force_gram(&s, 0).unwrap();
        for base in [1, 4, 8] {
            assert_eq!(brute_force_gram(&s, base).unwrap(), g0);
        }
    }
}
