//! The Bass-Serre tree of the base splitting `G = G_1 * ... * G_n`.
//!
//! Vertices are right cosets: `U·g` (trivial stabiliser) and `G_i·g`
//! (stabiliser `G_i^g`). `U·g` is adjacent to every `G_i·g`; `G_i·g` is
//! adjacent to `U·hg` for each `h ∈ G_i`. `G` acts on the right.
//!
//! Geodesics are read off normal forms, so they cost time linear in the
//! syllable length. [`FactorSystem::bfs_ball`] is the brute-force oracle
//! used to check them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::factor::FactorSystem;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeVertex {
    U(Word),
    /// `G_factor · rep`, with `rep` never starting in `G_factor`.
    C { factor: usize, rep: Word },
}

impl TreeVertex {
    pub fn rep(&self) -> &Word {
        match self {
            TreeVertex::U(w) | TreeVertex::C { rep: w, .. } => w,
        }
    }

    pub fn is_u(&self) -> bool {
        matches!(self, TreeVertex::U(_))
    }

    pub fn factor(&self) -> Option<usize> {
        match self {
            TreeVertex::U(_) => None,
            TreeVertex::C { factor, .. } => Some(*factor),
        }
    }
}

/// `U:<word>` or `C<i>:<word>` with 1-based `i`.
impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeVertex::U(w) => write!(f, "U:{w}"),
            TreeVertex::C { factor, rep } => write!(f, "C{}:{rep}", factor + 1),
        }
    }
}

/// A finite metric ball of the tree, vertices in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: TreeVertex,
    pub radius: usize,
    pub vertices: Vec<TreeVertex>,
    /// Distance of each vertex from the center.
    pub depth: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
}

impl Ball {
    pub fn index_of(&self, v: &TreeVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Graph distances from vertex `from`, by BFS inside the ball. Balls in
    /// a tree are convex, so these are tree distances.
    pub fn distances_from(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[from] = 0;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

impl FactorSystem {
    pub fn u_vertex(&self, rep: Word) -> TreeVertex {
        TreeVertex::U(rep)
    }

    /// The canonical vertex `G_factor · rep`.
    pub fn c_vertex(&self, factor: usize, rep: &Word) -> TreeVertex {
        TreeVertex::C { factor, rep: self.coset_rep(factor, rep) }
    }

    pub fn v_canon(&self, v: &TreeVertex) -> TreeVertex {
        match v {
            TreeVertex::U(_) => v.clone(),
            TreeVertex::C { factor, rep } => self.c_vertex(*factor, rep),
        }
    }

    /// Right action `v · g`.
    pub fn v_act(&self, v: &TreeVertex, g: &Word) -> TreeVertex {
        match v {
            TreeVertex::U(w) => TreeVertex::U(self.mul(w, g)),
            TreeVertex::C { factor, rep } => self.c_vertex(*factor, &self.mul(rep, g)),
        }
    }

    /// Tree path from `U·ε` to `v`.
    fn path_from_origin(&self, v: &TreeVertex) -> Vec<TreeVertex> {
        let w = v.rep();
        let m = w.len();
        let mut path = Vec::with_capacity(2 * m + 2);
        path.push(TreeVertex::U(self.one()));
        for k in (0..m).rev() {
            let factor = w.syllables()[k].factor();
            path.push(TreeVertex::C { factor, rep: w.subword(k + 1..m) });
            path.push(TreeVertex::U(w.subword(k..m)));
        }
        if let TreeVertex::C { factor, rep } = v {
            path.push(TreeVertex::C { factor: *factor, rep: rep.clone() });
        }
        path
    }

    /// Distance from `U·ε` and the factor of the C-vertex the path to `v`
    /// leaves `U·ε` through, if any.
    fn origin_profile(v: &TreeVertex) -> (usize, Option<usize>) {
        let m = v.rep().len();
        match v {
            TreeVertex::U(w) => (2 * m, w.trailing_factor()),
            TreeVertex::C { factor, rep } => (2 * m + 1, rep.trailing_factor().or(Some(*factor))),
        }
    }

    /// The unique tree path from `p` to `q`, both endpoints included.
    pub fn geodesic(&self, p: &TreeVertex, q: &TreeVertex) -> Vec<TreeVertex> {
        // Translate so that p sits at U·ε or G_i·ε.
        let x = p.rep();
        let q0 = self.v_act(q, &self.inv(x));
        let mut path = self.path_from_origin(&q0);
        if let TreeVertex::C { factor, .. } = p {
            let start = TreeVertex::C { factor: *factor, rep: self.one() };
            if path.get(1) == Some(&start) {
                path.remove(0);
            } else {
                path.insert(0, start);
            }
        }
        path.iter().map(|v| self.v_act(v, x)).collect()
    }

    /// `geodesic(p, q).len() - 1`, without building the path.
    pub fn distance(&self, p: &TreeVertex, q: &TreeVertex) -> usize {
        let q0 = self.v_act(q, &self.inv(p.rep()));
        let (d, via) = Self::origin_profile(&q0);
        match p {
            TreeVertex::U(_) => d,
            TreeVertex::C { factor, .. } if via == Some(*factor) => d - 1,
            TreeVertex::C { .. } => d + 1,
        }
    }

    pub fn lies_between(&self, x: &TreeVertex, p: &TreeVertex, q: &TreeVertex) -> bool {
        self.geodesic(p, q).contains(x)
    }

    /// Whether `h` fixes the vertex `v`.
    pub fn stabilises(&self, v: &TreeVertex, h: &Word) -> bool {
        self.v_act(v, h) == *v
    }

    /// All neighbours of `v`. Needs the factor of a C-vertex to be finite.
    pub fn neighbours(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>> {
        match v {
            TreeVertex::U(g) => Ok((0..self.rank()).map(|i| self.c_vertex(i, g)).collect()),
            TreeVertex::C { factor, rep } => {
                let mut hs = self.nontrivial_elements(*factor).ok_or(Error::InfiniteFactor(*factor))?;
                hs.push(self.fg_identity(*factor));
                Ok(hs
                    .iter()
                    .map(|h| TreeVertex::U(self.mul(&self.letter(h), rep)))
                    .collect())
            }
        }
    }

    /// The exact ball of the given radius around `center`, by breadth-first
    /// search over coset neighbours.
    pub fn bfs_ball(&self, center: &TreeVertex, radius: usize) -> Result<Ball> {
        if let Some(f) = (0..self.rank()).find(|&f| !self.factor(f).is_finite()) {
            return Err(Error::InfiniteFactor(f));
        }
        let center = self.v_canon(center);
        let mut depth: BTreeMap<TreeVertex, usize> = BTreeMap::new();
        let mut edges = Vec::new();
        let mut queue = VecDeque::new();
        depth.insert(center.clone(), 0);
        queue.push_back(center.clone());
        while let Some(v) = queue.pop_front() {
            let d = depth[&v];
            if d == radius {
                continue;
            }
            for u in self.neighbours(&v)? {
                if !depth.contains_key(&u) {
                    depth.insert(u.clone(), d + 1);
                    edges.push((v.clone(), u.clone()));
                    queue.push_back(u);
                }
            }
        }
        let vertices: Vec<TreeVertex> = depth.keys().cloned().collect();
        let depth: Vec<usize> = depth.values().copied().collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            let i = vertices.binary_search(&a).expect("vertex in ball");
            let j = vertices.binary_search(&b).expect("vertex in ball");
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Ball { center, radius, vertices, depth, adjacency })
    }
}
