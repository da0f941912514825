//! Seidel matrices, tournaments, and the switching and reversal actions.
//!
//! Vertices are 0-based throughout the library. Record files and the
//! command line use 1-based vertex labels and convert at the boundary.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntPolynomial, RationalMatrix};

/// Number of unordered pairs on `n` vertices.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major index of the pair `(i, j)`, `i < j`: `(0,1), (0,2), .., (n-2,n-1)`.
#[inline]
pub const fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// The Seidel matrix of a tournament: skew-symmetric, zero diagonal, `+-1`
/// off the diagonal.
///
/// Only the strict upper triangle is stored, one bit per pair in row-major
/// order; a set bit means `s_ij = +1` (arc `i -> j`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeidelMatrix {
    n: usize,
    words: Vec<u64>,
}

impl SeidelMatrix {
    /// Builds a matrix from packed upper-triangle words. Bits beyond the
    /// pair count are cleared.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        let pairs = pair_count(n);
        words.resize(pairs.div_ceil(64), 0);
        if pairs % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (pairs % 64)) - 1;
        }
        SeidelMatrix { n, words }
    }

    /// All upper entries `+1`: the transitive tournament `1 -> 2 -> .. -> n`.
    pub fn transitive(n: usize) -> Self {
        Self::from_words(n, vec![u64::MAX; pair_count(n).div_ceil(64)])
    }

    /// Uniformly random matrix of order `n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let words = (0..pair_count(n).div_ceil(64)).map(|_| rng.random()).collect();
        Self::from_words(n, words)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_int_matrix(&IntMatrix::from_rows(rows)?)
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Result<Self> {
        let n = m.order();
        if !m.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let mut s = Self::from_words(n, Vec::new());
        for i in 0..n {
            for j in i + 1..n {
                match m.get(i, j) {
                    1 => s.set_bit(pair_index(n, i, j), true),
                    -1 => {}
                    v => {
                        return Err(Error::InvalidParameter(format!(
                            "entry ({}, {}) = {v} is not +-1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pair_count(&self) -> usize {
        pair_count(self.n)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    fn bit(&self, p: usize) -> bool {
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, p: usize, v: bool) {
        if v {
            self.words[p / 64] |= 1 << (p % 64);
        } else {
            self.words[p / 64] &= !(1 << (p % 64));
        }
    }

    /// Entry `s_ij` (0-based).
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0,
            Less => {
                if self.bit(pair_index(self.n, i, j)) {
                    1
                } else {
                    -1
                }
            }
            Greater => -self.entry(j, i),
        }
    }

    /// Sets `s_ij = v` and `s_ji = -v` for `i != j`, `v = +-1`.
    pub fn set_entry(&mut self, i: usize, j: usize, v: i64) {
        assert!(i != j && (v == 1 || v == -1));
        let (a, b, v) = if i < j { (i, j, v) } else { (j, i, -v) };
        self.set_bit(pair_index(self.n, a, b), v == 1);
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.entry(i, j);
                m.set(i, j, v);
                m.set(j, i, -v);
            }
        }
        m
    }

    pub fn to_tournament(&self) -> Tournament {
        Tournament {
            n: self.n,
            words: self.words.clone(),
        }
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        SeidelMatrix {
            n: t.n,
            words: t.words.clone(),
        }
    }

    /// `D S D` where `d_i = -1` exactly for `i` in `subset`.
    pub fn switch(&self, subset: &[usize]) -> Result<Self> {
        let mut d = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            d[v] = true;
        }
        let mut out = self.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if d[i] != d[j] {
                    let p = pair_index(self.n, i, j);
                    out.set_bit(p, !self.bit(p));
                }
            }
        }
        Ok(out)
    }

    /// Canonical representative of the switching class: the equivalent
    /// matrix whose first row is `+1` off the diagonal (`d_1 = +1`,
    /// `d_j = s_1j`).
    pub fn switch_normalize(&self) -> Self {
        if self.n < 2 {
            return self.clone();
        }
        let subset: Vec<usize> = (1..self.n).filter(|&j| self.entry(0, j) == -1).collect();
        self.switch(&subset).expect("indices in range")
    }

    /// Reverses the arc between `i` and `j`.
    pub fn reverse_arc(&self, i: usize, j: usize) -> Result<Self> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::LoopArc(i));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let mut out = self.clone();
        let p = pair_index(self.n, a, b);
        out.set_bit(p, !self.bit(p));
        Ok(out)
    }

    /// Principal submatrix on `indices`, which must be strictly increasing.
    pub fn principal(&self, indices: &[usize]) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let k = indices.len();
        let mut out = Self::from_words(k, Vec::new());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                out.set_bit(pair_index(k, a, b), self.entry(i, j) == 1);
            }
        }
        out
    }

    pub fn determinant(&self) -> BigInt {
        linalg::det(&self.to_int_matrix())
    }

    pub fn pfaffian(&self) -> Result<BigInt> {
        linalg::pfaffian(&self.to_int_matrix())
    }

    pub fn pfaffian_bruteforce(&self) -> Result<BigInt> {
        linalg::pfaffian_bruteforce(&self.to_int_matrix())
    }

    pub fn char_poly(&self) -> IntPolynomial {
        linalg::char_poly(&self.to_int_matrix())
    }

    /// Exact inverse. Odd orders are always singular.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.n % 2 == 1 {
            return Err(Error::Singular);
        }
        linalg::inverse(&self.to_int_matrix())
    }
}

impl fmt::Debug for SeidelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeidelMatrix({}) ", self.n)?;
        f.debug_list()
            .entries((0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j)).collect::<Vec<_>>()))
            .finish()
    }
}

/// An orientation of the complete graph; bit for pair `i < j` is set iff
/// the arc goes `i -> j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from its arcs. Every unordered pair must appear
    /// exactly once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = vec![false; pair_count(n)];
        let mut s = SeidelMatrix::from_words(n, Vec::new());
        for &(i, j) in arcs {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange { vertex: i.max(j), n });
            }
            if i == j {
                return Err(Error::LoopArc(i));
            }
            let p = pair_index(n, i.min(j), i.max(j));
            if seen[p] {
                return Err(Error::InvalidParameter(format!(
                    "pair {{{}, {}}} oriented twice",
                    i + 1,
                    j + 1
                )));
            }
            seen[p] = true;
            s.set_bit(p, i < j);
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::InvalidParameter("some pair has no arc".into()));
        }
        Ok(s.to_tournament())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i != j && SeidelMatrix::from_tournament(self).entry(i, j) == 1
    }

    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        let s = SeidelMatrix::from_tournament(self);
        (0..self.n).filter(|&j| j != i && s.entry(i, j) == 1).collect()
    }

    /// 0/1 adjacency matrix `A`.
    pub fn adjacency(&self) -> IntMatrix {
        let s = SeidelMatrix::from_tournament(self);
        let mut a = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if s.entry(i, j) == 1 {
                    a.set(i, j, 1);
                }
            }
        }
        a
    }

    pub fn seidel(&self) -> SeidelMatrix {
        SeidelMatrix::from_tournament(self)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_arc(i, j))
            .map(|(i, j)| (i + 1, j + 1))
            .collect();
        write!(f, "Tournament({}) {:?}", self.n, arcs)
    }
}

/// Simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange { vertex: i.max(j), n });
            }
            if i == j {
                return Err(Error::LoopArc(i));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Graph { n, edges: norm })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &e).expect("valid cycle")
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Seidel matrix of an orientation of an arbitrary graph: `+-1` on edges,
/// zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSeidel {
    graph: Graph,
    signs: Vec<i8>,
}

impl GraphSeidel {
    /// `signs[e]` is the entry at `(i, j)`, `i < j`, for the `e`-th edge of
    /// `graph.edges()`.
    pub fn new(graph: Graph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != graph.edges.len() {
            return Err(Error::Dimension(format!(
                "{} signs for {} edges",
                signs.len(),
                graph.edges.len()
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter("edge signs must be +-1".into()));
        }
        Ok(GraphSeidel { graph, signs })
    }

    /// Orientation whose `e`-th edge is `+1` iff bit `e` of `code` is set.
    pub fn from_code(graph: Graph, code: u64) -> Self {
        let signs = (0..graph.edges.len())
            .map(|e| if code >> e & 1 == 1 { 1 } else { -1 })
            .collect();
        GraphSeidel { graph, signs }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.graph.n);
        for (&(i, j), &s) in self.graph.edges.iter().zip(&self.signs) {
            m.set(i, j, s as i64);
            m.set(j, i, -(s as i64));
        }
        m
    }

    pub fn char_poly(&self) -> IntPolynomial {
        linalg::char_poly(&self.to_int_matrix())
    }
}
