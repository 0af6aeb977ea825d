//! Quivers, quiver maps and windings, together with the integral cycle space,
//! shape classification and primitivity of cycles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

/// An arrow stored by index into the owning quiver's sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite directed multigraph. Vertices and arrows are kept sorted by id,
/// so indices are stable for a given set of ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(id, src, tgt)` triples.
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let mut raw: Vec<(String, String, String)> = arrows
            .into_iter()
            .map(|(a, s, t)| (a.into(), s.into(), t.into()))
            .collect();
        raw.sort();
        let mut out = Vec::with_capacity(raw.len());
        for (i, (id, s, t)) in raw.iter().enumerate() {
            if i > 0 && raw[i - 1].0 == *id {
                return Err(Error::DuplicateId(id.clone()));
            }
            if vs.binary_search(id).is_ok() {
                return Err(Error::DuplicateId(id.clone()));
            }
            let find = |v: &String| {
                vs.binary_search(v).map_err(|_| Error::DanglingEndpoint {
                    arrow: id.clone(),
                    vertex: v.clone(),
                })
            };
            out.push(Arrow {
                id: id.clone(),
                src: find(s)?,
                tgt: find(t)?,
            });
        }
        Ok(Quiver {
            vertices: vs,
            arrows: out,
        })
    }

    pub fn empty() -> Quiver {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub(crate) fn edge_list(&self) -> Vec<(usize, usize)> {
        self.arrows.iter().map(|a| (a.src, a.tgt)).collect()
    }

    /// Connected components (of the underlying undirected graph), each a
    /// sorted list of vertex indices, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.n_vertices(), &self.edge_list())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Total degree of each vertex, loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices()];
        for a in &self.arrows {
            d[a.src] += 1;
            d[a.tgt] += 1;
        }
        d
    }

    /// The subquiver on the given vertex and arrow indices.
    pub fn subquiver(&self, vertices: &BTreeSet<usize>, arrows: &BTreeSet<usize>) -> Result<Quiver> {
        for &a in arrows {
            let ar = &self.arrows[a];
            if !vertices.contains(&ar.src) || !vertices.contains(&ar.tgt) {
                return Err(Error::NotASubquiver(format!(
                    "arrow `{}` leaves the vertex set",
                    ar.id
                )));
            }
        }
        Quiver::new(
            vertices.iter().map(|&v| self.vertices[v].clone()),
            arrows.iter().map(|&a| {
                let ar = &self.arrows[a];
                (
                    ar.id.clone(),
                    self.vertices[ar.src].clone(),
                    self.vertices[ar.tgt].clone(),
                )
            }),
        )
    }

    /// The full subquiver on a vertex set.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> Quiver {
        let arrows: BTreeSet<usize> = (0..self.n_arrows())
            .filter(|&a| {
                vertices.contains(&self.arrows[a].src) && vertices.contains(&self.arrows[a].tgt)
            })
            .collect();
        self.subquiver(vertices, &arrows)
            .expect("induced subquiver is always valid")
    }

    /// Copy of the quiver with one arrow reversed.
    pub fn with_reversed(&self, arrow: usize) -> Quiver {
        let mut q = self.clone();
        let a = &mut q.arrows[arrow];
        std::mem::swap(&mut a.src, &mut a.tgt);
        q
    }

    /// Checks that `other` is a subquiver of `self` (same ids, same endpoints)
    /// and returns the index embeddings of its vertices and arrows.
    pub fn embedding_of(&self, other: &Quiver) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut vs = Vec::new();
        for v in &other.vertices {
            vs.push(
                self.vertex_index(v)
                    .ok_or_else(|| Error::NotASubquiver(format!("unknown vertex `{v}`")))?,
            );
        }
        let mut arr = Vec::new();
        for a in &other.arrows {
            let i = self
                .arrow_index(&a.id)
                .ok_or_else(|| Error::NotASubquiver(format!("unknown arrow `{}`", a.id)))?;
            let mine = &self.arrows[i];
            if mine.src != vs[a.src] || mine.tgt != vs[a.tgt] {
                return Err(Error::NotASubquiver(format!(
                    "arrow `{}` has different endpoints",
                    a.id
                )));
            }
            arr.push(i);
        }
        Ok((vs, arr))
    }
}

pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in edges {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut comp = vec![r];
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// True iff the directed graph has no directed cycle (loops count as cycles).
pub(crate) fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(s, t) in edges {
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

/// A morphism of quivers, stored by indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverMap {
    pub domain: Quiver,
    pub codomain: Arc<Quiver>,
    pub vmap: Vec<usize>,
    pub amap: Vec<usize>,
}

impl QuiverMap {
    pub fn new(
        domain: Quiver,
        codomain: Arc<Quiver>,
        vmap: Vec<usize>,
        amap: Vec<usize>,
    ) -> Result<QuiverMap> {
        if vmap.len() != domain.n_vertices() || amap.len() != domain.n_arrows() {
            return Err(Error::InvalidQuiverMap("maps are not total".into()));
        }
        if vmap.iter().any(|&v| v >= codomain.n_vertices())
            || amap.iter().any(|&a| a >= codomain.n_arrows())
        {
            return Err(Error::InvalidQuiverMap("image out of range".into()));
        }
        for (i, a) in domain.arrows().iter().enumerate() {
            let img = codomain.arrow(amap[i]);
            if vmap[a.src] != img.src || vmap[a.tgt] != img.tgt {
                return Err(Error::InvalidQuiverMap(format!(
                    "arrow `{}` is not mapped compatibly",
                    a.id
                )));
            }
        }
        Ok(QuiverMap {
            domain,
            codomain,
            vmap,
            amap,
        })
    }

    /// The identity map of a quiver.
    pub fn identity(q: Arc<Quiver>) -> QuiverMap {
        QuiverMap {
            domain: (*q).clone(),
            vmap: (0..q.n_vertices()).collect(),
            amap: (0..q.n_arrows()).collect(),
            codomain: q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WindingClause {
    Source,
    Target,
}

/// One failure of per-color injectivity: two distinct arrows with the same
/// image sharing a source (or a target).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WindingViolation {
    pub first: String,
    pub second: String,
    pub clause: WindingClause,
}

/// Lists every pair of same-colored arrows that share a source or a target.
pub fn check_winding(f: &QuiverMap) -> Vec<WindingViolation> {
    let mut by_src: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut by_tgt: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, a) in f.domain.arrows().iter().enumerate() {
        by_src.entry((f.amap[i], a.src)).or_default().push(i);
        by_tgt.entry((f.amap[i], a.tgt)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (groups, clause) in [(by_src, WindingClause::Source), (by_tgt, WindingClause::Target)] {
        for arrows in groups.values() {
            for (k, &x) in arrows.iter().enumerate() {
                for &y in &arrows[k + 1..] {
                    out.push(WindingViolation {
                        first: f.domain.arrow(x).id.clone(),
                        second: f.domain.arrow(y).id.clone(),
                        clause,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// A quiver map satisfying per-color source and target injectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Winding(QuiverMap);

impl Winding {
    pub fn new(map: QuiverMap) -> Result<Winding> {
        let v = check_winding(&map);
        if let Some(first) = v.first() {
            return Err(Error::InvalidWinding(format!(
                "arrows `{}` and `{}` share a {} with the same color",
                first.first,
                first.second,
                match first.clause {
                    WindingClause::Source => "source",
                    WindingClause::Target => "target",
                }
            )));
        }
        Ok(Winding(map))
    }

    pub fn map(&self) -> &QuiverMap {
        &self.0
    }

    pub fn gamma(&self) -> &Quiver {
        &self.0.domain
    }

    pub fn base(&self) -> &Arc<Quiver> {
        &self.0.codomain
    }

    pub fn vmap(&self) -> &[usize] {
        &self.0.vmap
    }

    pub fn amap(&self) -> &[usize] {
        &self.0.amap
    }

    /// Arrows of Γ as `(src, tgt, color)` index triples.
    pub(crate) fn colored_arrows(&self) -> Vec<(usize, usize, usize)> {
        self.gamma()
            .arrows()
            .iter()
            .zip(self.amap())
            .map(|(a, &c)| (a.src, a.tgt, c))
            .collect()
    }
}

/// An integer combination of the arrows of a quiver, indexed like its arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleVector(pub Vec<i64>);

impl CycleVector {
    /// Image under the boundary map, indexed by vertex.
    pub fn boundary(&self, q: &Quiver) -> Vec<i64> {
        let mut b = vec![0; q.n_vertices()];
        for (a, &c) in q.arrows().iter().zip(&self.0) {
            b[a.tgt] += c;
            b[a.src] -= c;
        }
        b
    }

    /// Pushforward along an arrow map into a quiver with `n` arrows.
    pub fn pushforward(&self, amap: &[usize], n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for (i, &c) in self.0.iter().enumerate() {
            out[amap[i]] += c;
        }
        out
    }
}

/// Fundamental cycles of the BFS spanning forest rooted at the smallest
/// vertex of each component, with tree arrows taken in arrow order.
pub fn cycle_space_basis(q: &Quiver) -> Vec<CycleVector> {
    fundamental_cycles(q.n_vertices(), &q.edge_list())
}

pub(crate) fn fundamental_cycles(n: usize, edges: &[(usize, usize)]) -> Vec<CycleVector> {
    let forest = SpanningForest::new(n, edges, None);
    let mut out = Vec::new();
    for (e, &(s, t)) in edges.iter().enumerate() {
        if forest.tree_arrow[e] {
            continue;
        }
        let mut v = vec![0i64; edges.len()];
        v[e] += 1;
        // close the cycle by the tree path from t back to s
        let (mut x, mut y) = (t, s);
        while forest.depth[x] > forest.depth[y] {
            let (a, sign) = forest.step_up(x, edges);
            v[a] += sign;
            x = forest.parent_vertex(x, edges);
        }
        while forest.depth[y] > forest.depth[x] {
            let (a, sign) = forest.step_up(y, edges);
            v[a] -= sign;
            y = forest.parent_vertex(y, edges);
        }
        while x != y {
            let (a, sign) = forest.step_up(x, edges);
            v[a] += sign;
            x = forest.parent_vertex(x, edges);
            let (b, sign) = forest.step_up(y, edges);
            v[b] -= sign;
            y = forest.parent_vertex(y, edges);
        }
        out.push(CycleVector(v));
    }
    out
}

/// BFS spanning forest. Roots are the given vertices or, by default, the
/// smallest vertex of each component.
pub(crate) struct SpanningForest {
    pub parent_arrow: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub tree_arrow: Vec<bool>,
    /// Vertices in BFS visiting order.
    pub order: Vec<usize>,
}

impl SpanningForest {
    pub fn new(n: usize, edges: &[(usize, usize)], roots: Option<&[usize]>) -> SpanningForest {
        let mut inc = vec![Vec::new(); n];
        for (e, &(s, t)) in edges.iter().enumerate() {
            inc[s].push(e);
            if t != s {
                inc[t].push(e);
            }
        }
        let mut parent_arrow = vec![None; n];
        let mut depth = vec![0; n];
        let mut tree_arrow = vec![false; edges.len()];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let default_roots: Vec<usize> = (0..n).collect();
        let roots = roots.unwrap_or(&default_roots);
        let mut bfs = |r: usize, seen: &mut Vec<bool>| {
            if seen[r] {
                return;
            }
            seen[r] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &e in &inc[v] {
                    let (s, t) = edges[e];
                    let w = if s == v { t } else { s };
                    if !seen[w] {
                        seen[w] = true;
                        parent_arrow[w] = Some(e);
                        depth[w] = depth[v] + 1;
                        tree_arrow[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        };
        for &r in roots {
            bfs(r, &mut seen);
        }
        for r in 0..n {
            bfs(r, &mut seen);
        }
        SpanningForest {
            parent_arrow,
            depth,
            tree_arrow,
            order,
        }
    }

    /// The arrow joining `v` to its parent, with sign +1 if it points from
    /// `v` towards the parent.
    fn step_up(&self, v: usize, edges: &[(usize, usize)]) -> (usize, i64) {
        let a = self.parent_arrow[v].expect("non-root vertex");
        (a, if edges[a].0 == v { 1 } else { -1 })
    }

    fn parent_vertex(&self, v: usize, edges: &[(usize, usize)]) -> usize {
        let a = self.parent_arrow[v].expect("non-root vertex");
        let (s, t) = edges[a];
        if s == v {
            t
        } else {
            s
        }
    }
}

/// Shape of a connected quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    Tree,
    TypeATilde { equioriented: bool },
    ProperPseudotree { central_cycle: Quiver },
    Other { rank: usize },
}

pub fn cycle_rank(q: &Quiver) -> usize {
    q.n_arrows() + q.components().len() - q.n_vertices()
}

pub fn classify_shape(q: &Quiver) -> Result<ShapeClass> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let rank = cycle_rank(q);
    Ok(match rank {
        0 => ShapeClass::Tree,
        1 => {
            if q.degrees().iter().all(|&d| d == 2) {
                let mut indeg = vec![0; q.n_vertices()];
                for a in q.arrows() {
                    indeg[a.tgt] += 1;
                }
                ShapeClass::TypeATilde {
                    equioriented: indeg.iter().all(|&d| d == 1),
                }
            } else {
                ShapeClass::ProperPseudotree {
                    central_cycle: strip_leaves(q),
                }
            }
        }
        r => ShapeClass::Other { rank: r },
    })
}

/// Removes degree-one vertices until none remain.
fn strip_leaves(q: &Quiver) -> Quiver {
    let mut alive_v = vec![true; q.n_vertices()];
    let mut alive_a = vec![true; q.n_arrows()];
    let mut deg = q.degrees();
    let mut stack: Vec<usize> = (0..q.n_vertices()).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if !alive_v[v] || deg[v] != 1 {
            continue;
        }
        alive_v[v] = false;
        for (i, a) in q.arrows().iter().enumerate() {
            if alive_a[i] && (a.src == v || a.tgt == v) {
                alive_a[i] = false;
                let w = if a.src == v { a.tgt } else { a.src };
                deg[w] -= 1;
                deg[v] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let vs = (0..q.n_vertices()).filter(|&v| alive_v[v]).collect();
    let arr = (0..q.n_arrows()).filter(|&a| alive_a[a]).collect();
    q.subquiver(&vs, &arr).expect("stripping keeps a subquiver")
}

/// The unique cycle of a pseudotree of cycle rank one.
pub fn central_cycle(q: &Quiver) -> Result<Quiver> {
    match classify_shape(q) {
        Ok(ShapeClass::TypeATilde { .. }) => Ok(q.clone()),
        Ok(ShapeClass::ProperPseudotree { central_cycle }) => Ok(central_cycle),
        _ => Err(Error::NotPseudotree),
    }
}

/// Walks a quiver that is a single cycle starting at its smallest vertex
/// along its smallest incident arrow. Returns the visited vertices and, for
/// each step, the arrow used and whether it was traversed forwards.
pub(crate) fn walk_cycle(q: &Quiver) -> Result<(Vec<usize>, Vec<(usize, bool)>)> {
    if q.n_vertices() == 0 || !q.is_connected() || q.degrees().iter().any(|&d| d != 2) {
        return Err(Error::NotACycle);
    }
    let start = 0;
    let first = (0..q.n_arrows())
        .find(|&a| q.arrow(a).src == start || q.arrow(a).tgt == start)
        .expect("start has degree two");
    let mut verts = vec![start];
    let mut steps = Vec::new();
    let (mut v, mut a) = (start, first);
    loop {
        let ar = q.arrow(a);
        let forward = ar.src == v;
        steps.push((a, forward));
        let w = if forward { ar.tgt } else { ar.src };
        if steps.len() == q.n_arrows() {
            debug_assert_eq!(w, start);
            break;
        }
        verts.push(w);
        a = (0..q.n_arrows())
            .find(|&b| b != a && (q.arrow(b).src == w || q.arrow(b).tgt == w))
            .expect("cycle vertex has a second arrow");
        v = w;
    }
    Ok((verts, steps))
}

/// Primitivity of a winding whose domain is a single cycle: the cyclic word
/// of `(color, direction)` letters must not be a proper power.
pub fn is_primitive_cycle(c: &Winding) -> Result<bool> {
    let (_, steps) = walk_cycle(c.gamma())?;
    let word: Vec<(usize, bool)> = steps.iter().map(|&(a, f)| (c.amap()[a], f)).collect();
    Ok(!is_proper_power(&word))
}

pub(crate) fn is_proper_power<T: PartialEq>(word: &[T]) -> bool {
    let d = word.len();
    if d < 2 {
        return false;
    }
    let mut fail = vec![0usize; d];
    for i in 1..d {
        let mut k = fail[i - 1];
        while k > 0 && word[i] != word[k] {
            k = fail[k - 1];
        }
        if word[i] == word[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = d - fail[d - 1];
    p < d && d.is_multiple_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(vs.iter().copied(), arrows.iter().copied()).unwrap()
    }

    #[test]
    fn minimal_quiver() {
        let a2 = q(&["1", "2"], &[("a", "1", "2")]);
        assert_eq!(a2.n_vertices(), 2);
        assert_eq!(a2.n_arrows(), 1);
    }

    #[test]
    fn parallel_loops_allowed() {
        let l2 = q(&["v"], &[("a1", "v", "v"), ("a2", "v", "v")]);
        assert_eq!(l2.n_arrows(), 2);
        assert_eq!(classify_shape(&l2).unwrap(), ShapeClass::Other { rank: 2 });
    }

    #[test]
    fn dangling_and_duplicate() {
        let err = Quiver::new(["1"], [("a", "1", "2")]).unwrap_err();
        assert!(matches!(err, Error::DanglingEndpoint { .. }));
        let err = Quiver::new(["1", "1"], Vec::<(&str, &str, &str)>::new()).unwrap_err();
        assert_eq!(err, Error::DuplicateId("1".into()));
        let err = Quiver::new(["1"], [("a", "1", "1"), ("a", "1", "1")]).unwrap_err();
        assert_eq!(err, Error::DuplicateId("a".into()));
    }

    #[test]
    fn cycle_space_examples() {
        let path = q(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        assert!(cycle_space_basis(&path).is_empty());

        let tri = q(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        );
        let basis = cycle_space_basis(&tri);
        assert_eq!(basis.len(), 1);
        let v = &basis[0].0;
        assert!(v == &vec![1, 1, 1] || v == &vec![-1, -1, -1]);
        assert!(basis[0].boundary(&tri).iter().all(|&x| x == 0));
    }

    #[test]
    fn loops_are_cycles() {
        let l1 = q(&["v"], &[("a", "v", "v")]);
        let basis = cycle_space_basis(&l1);
        assert_eq!(basis, vec![CycleVector(vec![1])]);
    }

    #[test]
    fn band_pushforward() {
        // 4-vertex band over L_2: b1: v1->v2 (a1), b2: v3->v2 (a2),
        // g1: v3->v4 (a1), g2: v1->v4 (a2)
        let base = q(&["p"], &[("a1", "p", "p"), ("a2", "p", "p")]);
        let gamma = q(
            &["v1", "v2", "v3", "v4"],
            &[
                ("b1", "v1", "v2"),
                ("b2", "v3", "v2"),
                ("g1", "v3", "v4"),
                ("g2", "v1", "v4"),
            ],
        );
        let amap = vec![0, 1, 0, 1];
        let basis = cycle_space_basis(&gamma);
        assert_eq!(basis.len(), 1);
        let img = basis[0].pushforward(&amap, base.n_arrows());
        assert!(img == vec![2, -2] || img == vec![-2, 2]);
    }

    #[test]
    fn shapes() {
        let path = q(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        assert_eq!(classify_shape(&path).unwrap(), ShapeClass::Tree);
        let l1 = q(&["v"], &[("a", "v", "v")]);
        assert_eq!(
            classify_shape(&l1).unwrap(),
            ShapeClass::TypeATilde { equioriented: true }
        );
        let acyclic = q(
            &["1", "2", "3"],
            &[("a1", "1", "2"), ("a2", "2", "3"), ("a3", "1", "3")],
        );
        assert_eq!(
            classify_shape(&acyclic).unwrap(),
            ShapeClass::TypeATilde { equioriented: false }
        );
        let two = q(&["1", "2"], &[]);
        assert_eq!(classify_shape(&two).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn central_cycles() {
        let tri_tail = q(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "3", "4")],
        );
        let c = central_cycle(&tri_tail).unwrap();
        assert_eq!(c.vertices(), &["1", "2", "3"]);
        assert_eq!(c.n_arrows(), 3);

        let square = q(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")],
        );
        assert_eq!(central_cycle(&square).unwrap(), square);

        let path = q(&["1", "2"], &[("a", "1", "2")]);
        assert_eq!(central_cycle(&path).unwrap_err(), Error::NotPseudotree);
    }

    #[test]
    fn winding_checks() {
        let base = Arc::new(q(&["v"], &[("a", "v", "v")]));
        let gamma = q(&["x", "y", "z"], &[("p", "x", "y"), ("r", "x", "z")]);
        let f = QuiverMap::new(gamma, base.clone(), vec![0, 0, 0], vec![0, 0]).unwrap();
        let v = check_winding(&f);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].clause, WindingClause::Source);
        assert!(check_winding(&QuiverMap::identity(base)).is_empty());
    }

    #[test]
    fn section_three_example_winding() {
        let base = Arc::new(q(
            &["v1", "v2", "v3"],
            &[("alpha", "v1", "v3"), ("beta", "v2", "v3"), ("gamma", "v3", "v3")],
        ));
        let s = q(
            &["v1", "v2", "v3", "v3'", "v3''"],
            &[
                ("a", "v1", "v3'"),
                ("b", "v2", "v3'"),
                ("g", "v3", "v3'"),
                ("g'", "v3'", "v3''"),
            ],
        );
        let f = QuiverMap::new(s, base, vec![0, 1, 2, 2, 2], vec![0, 1, 2, 2]).unwrap();
        assert!(check_winding(&f).is_empty());
    }

    #[test]
    fn primitivity() {
        assert!(is_proper_power(&[1, 2, 1, 2]));
        assert!(!is_proper_power(&[1, 2, 1, 2, 1]));
        assert!(is_proper_power(&[(0, true), (1, false), (0, true), (1, false)]));
        assert!(!is_proper_power(&[1, 1, 2]));
        assert!(is_proper_power(&[3, 3, 3]));
        assert!(!is_proper_power(&[3]));
    }

    #[test]
    fn two_cycle_over_l2_is_primitive() {
        let base = Arc::new(q(&["p"], &[("a1", "p", "p"), ("a2", "p", "p")]));
        let gamma = q(&["x", "y"], &[("e", "x", "y"), ("f", "y", "x")]);
        let w = Winding::new(QuiverMap::new(gamma, base, vec![0, 0], vec![0, 1]).unwrap()).unwrap();
        assert!(is_primitive_cycle(&w).unwrap());
    }
}
