//! Finite simplicial complexes, clique (flag) complexes and mod-2 homology.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Simplex = Vec<usize>;

pub const DEFAULT_DMAX: usize = 6;
pub const DEFAULT_SIMPLEX_CAP: usize = 2_000_000;

/// A complex stored by dimension; simplices are sorted vertex lists and each
/// dimension is kept in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The downward closure of the given simplices.
    pub fn from_simplices<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Vec<usize>>,
    {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let mut s: Simplex = s.into();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            add_with_faces(&mut sets, s);
        }
        Self::from_sorted(sets.into_iter().map(|d| d.into_iter().collect()).collect())
    }

    fn from_sorted(by_dim: Vec<Vec<Simplex>>) -> Self {
        let index = by_dim
            .iter()
            .map(|d| d.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex { by_dim, index }
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|d| !d.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.first().is_none_or(Vec::is_empty)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.by_dim.get(dim).map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.by_dim.len() {
            for s in &self.by_dim[d] {
                let covered = self.by_dim.get(d + 1).is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Rank of the boundary map from dimension `dim` to `dim - 1` over Z/2.
    /// For `dim == 0` this is the augmentation, of rank 1 on a nonempty complex.
    pub fn boundary_rank(&self, dim: usize) -> usize {
        if dim == 0 {
            return usize::from(!self.is_empty());
        }
        let columns: Vec<Vec<usize>> = self
            .simplices(dim)
            .iter()
            .map(|s| {
                let mut col: Vec<usize> = (0..s.len())
                    .map(|k| {
                        let mut f = s.clone();
                        f.remove(k);
                        self.index[dim - 1][&f]
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        z2_rank(columns)
    }

    /// Reduced Betti numbers over Z/2 in dimensions `0..=max_dim`.
    pub fn reduced_betti(&self, max_dim: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max_dim + 1).map(|d| self.boundary_rank(d)).collect();
        (0..=max_dim)
            .map(|d| self.count(d) - ranks[d] - ranks[d + 1])
            .collect()
    }

    /// One-skeleton on the vertex labels `0..=max_label`.
    pub fn one_skeleton(&self) -> Graph {
        let n = self.vertices().into_iter().max().map_or(0, |m| m + 1);
        Graph::from_edges(n, self.simplices(1).iter().map(|e| (e[0], e[1])))
    }

    /// Per-dimension simplex lists, one simplex per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (d, simplices) in self.by_dim.iter().enumerate() {
            let _ = writeln!(out, "# dim {d} count {}", simplices.len());
            for s in simplices {
                let line: Vec<String> = s.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        out
    }
}

fn add_with_faces(sets: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let d = s.len() - 1;
    while sets.len() <= d {
        sets.push(BTreeSet::new());
    }
    if !sets[d].insert(s.clone()) || d == 0 {
        return;
    }
    for k in 0..s.len() {
        let mut f = s.clone();
        f.remove(k);
        add_with_faces(sets, f);
    }
}

/// Rank over Z/2 of a sparse matrix given by sorted column supports.
pub fn z2_rank(mut columns: Vec<Vec<usize>>) -> usize {
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..columns.len() {
        loop {
            let Some(&low) = columns[j].last() else { break };
            match pivot_of.get(&low) {
                Some(&k) => {
                    let merged = sym_diff(&columns[j], &columns[k]);
                    columns[j] = merged;
                }
                None => {
                    pivot_of.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// All cliques with at most `d_max + 1` vertices, as a complex.
pub fn clique_complex(g: &Graph, d_max: usize, cap: usize) -> Result<SimplicialComplex> {
    if d_max < 1 {
        return Err(Error::input("clique complex dimension cap must be at least 1"));
    }
    let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); d_max + 1];
    let mut total = 0usize;
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        g: &Graph,
        stack: &mut Vec<usize>,
        candidates: &[usize],
        d_max: usize,
        by_dim: &mut Vec<Vec<Simplex>>,
        total: &mut usize,
        cap: usize,
    ) -> Result<()> {
        *total += 1;
        if *total > cap {
            return Err(Error::Resource { what: "simplex count", cap });
        }
        by_dim[stack.len() - 1].push(stack.clone());
        if stack.len() == d_max + 1 {
            return Ok(());
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> =
                candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            stack.push(v);
            grow(g, stack, &next, d_max, by_dim, total, cap)?;
            stack.pop();
        }
        Ok(())
    }
    for v in 0..g.n() {
        let higher: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        stack.push(v);
        grow(g, &mut stack, &higher, d_max, &mut by_dim, &mut total, cap)?;
        stack.pop();
    }
    for d in &mut by_dim {
        d.sort();
    }
    while by_dim.last().is_some_and(Vec::is_empty) {
        by_dim.pop();
    }
    Ok(SimplicialComplex::from_sorted(by_dim))
}

/// Maximal cliques by Bron–Kerbosch with pivoting, each sorted, in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn bk(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
            .unwrap();
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            r.push(v);
            bk(g, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(g, &mut Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}
