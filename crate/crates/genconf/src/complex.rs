//! The divisibility complex: vertices are all cross ratios for (m, n),
//! simplices are sets of pairwise divisors.
//!
//! Positive-dimensional simplices come in exactly two combinatorial types.
//! Either all vertices share their full support (second type) or the
//! supports are pairwise distinct with a common essential support (first
//! type). The symmetric group relabels vertices, acts on simplices and is
//! transitive on each type; the module computes those orbits and the
//! stabilizers of ordered simplices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::dcr::{divides, divisor_candidates, enumerate_dcrs, Dcr};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::util::permutations_of;

/// Which of the two orbit classes a positive-dimensional simplex belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SimplexType {
    First,
    Second,
}

impl SimplexType {
    pub fn as_str(&self) -> &'static str {
        match self {
            SimplexType::First => "first",
            SimplexType::Second => "second",
        }
    }
}

/// An ordered list of distinct, pairwise dividing cross ratios.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<Dcr>,
}

impl Simplex {
    pub fn new(vertices: Vec<Dcr>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NotASimplex("no vertices".into()));
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::NotASimplex(format!(
                        "repeated vertex {}",
                        vertices[i]
                    )));
                }
                if !divides(&vertices[i], &vertices[j]) {
                    return Err(Error::NotASimplex(format!(
                        "{} and {} do not divide each other",
                        vertices[i], vertices[j]
                    )));
                }
            }
        }
        Ok(Simplex { vertices })
    }

    fn from_checked(vertices: Vec<Dcr>) -> Self {
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[Dcr] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn permuted(&self, sigma: &Permutation) -> Simplex {
        Simplex {
            vertices: self.vertices.iter().map(|v| v.permuted(sigma)).collect(),
        }
    }

    /// The vertex set independent of order.
    pub fn unordered(&self) -> Vec<Dcr> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Classifies a positive-dimensional simplex.
///
/// Exactly one pattern can match; input outside both patterns would
/// contradict the structure theory and is reported as an error.
pub fn classify(sx: &Simplex) -> Result<SimplexType> {
    if sx.dimension() < 1 {
        return Err(Error::InvalidDimension(
            "only positive-dimensional simplices carry a type".into(),
        ));
    }
    let supports: Vec<Vec<usize>> = sx.vertices.iter().map(|v| v.support()).collect();
    let all_supports_equal = supports.iter().all(|s| s == &supports[0]);
    if all_supports_equal {
        return Ok(SimplexType::Second);
    }
    let ess0 = sx.vertices[0].essential_support();
    let all_ess_equal = sx
        .vertices
        .iter()
        .all(|v| v.essential_support() == ess0);
    let supports_pairwise_distinct = (0..supports.len()).all(|i| {
        (i + 1..supports.len()).all(|j| supports[i] != supports[j])
    });
    if all_ess_equal && supports_pairwise_distinct {
        return Ok(SimplexType::First);
    }
    Err(Error::ClassificationContradiction(format!("{sx:?}")))
}

/// The normal simplex of the requested type and dimension.
///
/// First type, dimension t: the cross ratios with core 1..m-1 and quadruples
/// (m, m+1, m+2, m+3+p) for p = 0..t; exists for t <= n-m-3.
/// Second type, dimension t: slots s = m-t..m of the frame embedding with
/// the quadruple (s, m+1, m+2, m+3); exists for t <= m-1.
pub fn normal_simplex(kind: SimplexType, t: usize, m: usize, n: usize) -> Result<Simplex> {
    match kind {
        SimplexType::First => {
            if m + 3 + t > n {
                return Err(Error::InvalidDimension(format!(
                    "first-type simplices for (m,n)=({m},{n}) stop at dimension {}",
                    n as i64 - m as i64 - 3
                )));
            }
            let ess: Vec<usize> = (1..m).collect();
            let vertices = (0..=t)
                .map(|p| Dcr::new(&ess, m, m + 1, m + 2, m + 3 + p).unwrap())
                .collect();
            Simplex::new(vertices)
        }
        SimplexType::Second => {
            if t > m - 1 {
                return Err(Error::InvalidDimension(format!(
                    "second-type simplices for m={m} stop at dimension {}",
                    m - 1
                )));
            }
            let vertices = (m - t..=m)
                .map(|s| {
                    let ess: Vec<usize> = (1..=m).filter(|&i| i != s).collect();
                    Dcr::new(&ess, s, m + 1, m + 2, m + 3).unwrap()
                })
                .collect();
            Simplex::new(vertices)
        }
    }
}

/// The divisibility complex for (m, n): every cross ratio as a vertex, the
/// divisor relation as adjacency.
pub struct DivisibilityComplex {
    m: usize,
    n: usize,
    vertices: Vec<Dcr>,
    index: HashMap<Dcr, usize>,
    adj: Vec<Vec<usize>>,
}

fn thread_count(jobs: usize) -> usize {
    let hw = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1)
        .min(8);
    let cap = std::env::var("GENCONF_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(hw);
    cap.min(jobs).max(1)
}

impl DivisibilityComplex {
    /// Builds the full complex. The candidate family narrows the search per
    /// vertex and each candidate edge is confirmed by the symbolic divisor
    /// test; chunks of vertices run on separate threads.
    pub fn build(m: usize, n: usize) -> Result<DivisibilityComplex> {
        if m < 1 || n < m + 3 {
            return Err(Error::Mismatch(format!(
                "the complex needs m >= 1 and n >= m+3, got ({m}, {n})"
            )));
        }
        let vertices = enumerate_dcrs(m, n);
        let index: HashMap<Dcr, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();

        let threads = thread_count(vertices.len());
        let chunk = vertices.len().div_ceil(threads);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for ids in (0..vertices.len()).collect::<Vec<_>>().chunks(chunk) {
                let ids = ids.to_vec();
                let vertices = &vertices;
                let index = &index;
                handles.push(scope.spawn(move || {
                    let mut out = Vec::with_capacity(ids.len());
                    for u in ids {
                        let mu = &vertices[u];
                        let mut neighbors: Vec<usize> = divisor_candidates(mu, n)
                            .into_iter()
                            .filter(|nu| divides(nu, mu))
                            .map(|nu| index[&nu])
                            .collect();
                        neighbors.sort_unstable();
                        out.push((u, neighbors));
                    }
                    out
                }));
            }
            for handle in handles {
                for (u, neighbors) in handle.join().expect("adjacency worker panicked") {
                    adj[u] = neighbors;
                }
            }
        });

        // enforce symmetry regardless of how candidates were produced
        let directed = adj.clone();
        for (u, neighbors) in directed.iter().enumerate() {
            for &v in neighbors {
                if adj[v].binary_search(&u).is_err() {
                    let pos = adj[v].binary_search(&u).unwrap_err();
                    adj[v].insert(pos, u);
                }
            }
        }

        Ok(DivisibilityComplex {
            m,
            n,
            vertices,
            index,
            adj,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Dcr] {
        &self.vertices
    }

    pub fn vertex_index(&self, d: &Dcr) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, neighbors) in self.adj.iter().enumerate() {
            for &v in neighbors {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All cliques of t+1 vertices as sorted index lists, lexicographic.
    pub fn simplex_indices(&self, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(t + 1);
        for v in 0..self.vertices.len() {
            current.push(v);
            let candidates: Vec<usize> =
                self.adj[v].iter().copied().filter(|&u| u > v).collect();
            self.extend_cliques(t + 1, &mut current, &candidates, &mut out);
            current.pop();
        }
        out
    }

    fn extend_cliques(
        &self,
        size: usize,
        current: &mut Vec<usize>,
        candidates: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        // prune when even taking every candidate cannot reach the size
        if current.len() + candidates.len() < size {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            current.push(v);
            let narrowed: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.adjacent(v, u))
                .collect();
            self.extend_cliques(size, current, &narrowed, out);
            current.pop();
        }
    }

    /// All t-dimensional simplices in canonical vertex order.
    pub fn simplices(&self, t: usize) -> Vec<Simplex> {
        self.simplex_indices(t)
            .into_iter()
            .map(|ids| {
                Simplex::from_checked(ids.iter().map(|&i| self.vertices[i].clone()).collect())
            })
            .collect()
    }

    /// Largest dimension carrying a simplex, found by maximal-clique search
    /// with pivoting.
    pub fn dimension(&self) -> usize {
        let mut best = 1;
        let p: Vec<usize> = (0..self.vertices.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut best);
        best - 1
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        best: &mut usize,
    ) {
        if p.is_empty() && x.is_empty() {
            *best = (*best).max(r.len());
            return;
        }
        if r.len() + p.len() <= *best {
            return; // cannot improve
        }
        // pivot on the vertex dominating the most candidates
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adjacent(u, v)).count())
            .unwrap();
        let branch: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.adjacent(pivot, v))
            .collect();
        for v in branch {
            r.push(v);
            let p2: Vec<usize> = p.iter().copied().filter(|&u| self.adjacent(v, u)).collect();
            let x2: Vec<usize> = x.iter().copied().filter(|&u| self.adjacent(v, u)).collect();
            self.bron_kerbosch(r, p2, x2, best);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }

    /// Orbit partition of the unordered t-simplices under vertex
    /// relabeling. Each orbit is a sorted list of indices into
    /// `simplex_indices(t)`; orbits are sorted by their least member.
    pub fn orbits(&self, t: usize) -> Vec<Vec<usize>> {
        let simplices = self.simplex_indices(t);
        let key: HashMap<Vec<usize>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut uf = UnionFind::new(simplices.len());
        for gen in Permutation::adjacent_transpositions(self.n) {
            for (i, s) in simplices.iter().enumerate() {
                let mut image: Vec<usize> = s
                    .iter()
                    .map(|&v| self.index[&self.vertices[v].permuted(&gen)])
                    .collect();
                image.sort_unstable();
                uf.union(i, key[&image]);
            }
        }
        uf.partition()
    }

    /// Convenience: the number of orbits at dimension t.
    pub fn orbit_count(&self, t: usize) -> usize {
        self.orbits(t).len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn partition(&mut self) -> Vec<Vec<usize>> {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.parent.len() {
            groups.entry(self.find(x)).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort_by_key(|g| g[0]);
        out
    }
}

/// All permutations fixing every vertex of the ordered simplex in place.
///
/// The stabilizer of the leading vertex factors as (core bijections) x
/// (Kleinian quadruple moves) x (bijections of the untouched indices); that
/// candidate set is then filtered by the remaining vertices.
pub fn stabilizer(sx: &Simplex, n: usize) -> Result<Vec<Permutation>> {
    let lead = &sx.vertices()[0];
    if lead.max_index() > n || sx.vertices().iter().any(|v| v.max_index() > n) {
        return Err(Error::Mismatch(format!(
            "simplex indices exceed n = {n}"
        )));
    }
    let ess = lead.essential_support().to_vec();
    let quad = lead.quad();
    let support = lead.support();
    let rest: Vec<usize> = (1..=n).filter(|i| support.binary_search(i).is_err()).collect();

    let ess_perms = permutations_of(&ess);
    let rest_perms = permutations_of(&rest);
    let [j, k, l, s] = quad;
    let klein_images = [
        [j, k, l, s],
        [k, j, s, l],
        [l, s, j, k],
        [s, l, k, j],
    ];

    let mut out = Vec::new();
    for ess_img in &ess_perms {
        for klein in &klein_images {
            for rest_img in &rest_perms {
                let mut images: Vec<usize> = (1..=n).collect();
                for (a, &b) in ess.iter().zip(ess_img) {
                    images[a - 1] = b;
                }
                for (a, &b) in quad.iter().zip(klein) {
                    images[a - 1] = b;
                }
                for (a, &b) in rest.iter().zip(rest_img) {
                    images[a - 1] = b;
                }
                let sigma = Permutation::from_images(images)
                    .expect("stabilizer candidates are bijections");
                if sx
                    .vertices()
                    .iter()
                    .all(|v| v.permuted(&sigma) == *v)
                {
                    out.push(sigma);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Size of the orbit of the ordered simplex under all of S(n), by closure
/// over the adjacent transpositions.
pub fn ordered_orbit_size(sx: &Simplex, n: usize) -> usize {
    let generators = Permutation::adjacent_transpositions(n);
    let mut seen: HashSet<Vec<Dcr>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sx.vertices().to_vec());
    queue.push_back(sx.clone());
    while let Some(cur) = queue.pop_front() {
        for gen in &generators {
            let image = cur.permuted(gen);
            if seen.insert(image.vertices().to_vec()) {
                queue.push_back(image);
            }
        }
    }
    seen.len()
}
