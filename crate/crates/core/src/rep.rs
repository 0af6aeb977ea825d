//! F1-representations: pointed sets at the vertices and partial injections
//! along the arrows, stored together with their coefficient quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::canon;
use crate::error::{Error, Result};
use crate::quiver::{components, is_acyclic, Quiver, QuiverMap, Winding};

/// An F1-representation of `base`. Elements are the nonzero basis vectors of
/// all vertex spaces, kept globally sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Rep {
    base: Arc<Quiver>,
    elements: Vec<String>,
    color: Vec<usize>,
    /// Per base arrow, element index ↦ element index.
    maps: Vec<BTreeMap<usize, usize>>,
}

impl F1Rep {
    /// Builds a representation from per-vertex bases and per-arrow pairs
    /// `(x, f(x))`, validating partial injectivity.
    pub fn new<S: AsRef<str>>(
        base: Arc<Quiver>,
        basis: &BTreeMap<String, Vec<S>>,
        maps: &BTreeMap<String, Vec<(S, S)>>,
    ) -> Result<F1Rep> {
        let mut named: Vec<(String, usize)> = Vec::new();
        for (v, elems) in basis {
            let vi = base
                .vertex_index(v)
                .ok_or_else(|| Error::MalformedInput(format!("unknown vertex `{v}`")))?;
            for e in elems {
                named.push((e.as_ref().to_string(), vi));
            }
        }
        named.sort();
        for w in named.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateId(w[0].0.clone()));
            }
        }
        let elements: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
        let color: Vec<usize> = named.iter().map(|&(_, c)| c).collect();
        let find = |x: &str| elements.binary_search_by(|e| e.as_str().cmp(x)).ok();
        let mut out = vec![BTreeMap::new(); base.n_arrows()];
        for (a, pairs) in maps {
            let ai = base
                .arrow_index(a)
                .ok_or_else(|| Error::MalformedInput(format!("unknown arrow `{a}`")))?;
            let arrow = base.arrow(ai);
            let mut images = BTreeSet::new();
            for (x, y) in pairs {
                let (x, y) = (x.as_ref(), y.as_ref());
                let xi = find(x)
                    .filter(|&i| color[i] == arrow.src)
                    .ok_or_else(|| {
                        Error::MalformedInput(format!("`{x}` is not in the source basis of `{a}`"))
                    })?;
                let yi = find(y)
                    .filter(|&i| color[i] == arrow.tgt)
                    .ok_or_else(|| {
                        Error::MalformedInput(format!("`{y}` is not in the target basis of `{a}`"))
                    })?;
                if out[ai].insert(xi, yi).is_some() {
                    return Err(Error::MalformedInput(format!(
                        "map `{a}` assigns two values to `{x}`"
                    )));
                }
                if !images.insert(yi) {
                    return Err(Error::MalformedInput(format!(
                        "map `{a}` is not injective at `{y}`"
                    )));
                }
            }
        }
        Ok(F1Rep {
            base,
            elements,
            color,
            maps: out,
        })
    }

    /// Builds a representation from named elements over base vertex indices
    /// and `(src, tgt, arrow)` triples indexing into `elements`.
    pub(crate) fn from_graph(
        base: Arc<Quiver>,
        elements: Vec<(String, usize)>,
        arrows: &[(usize, usize, usize)],
    ) -> Result<F1Rep> {
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| elements[a].0.cmp(&elements[b].0));
        let mut pos = vec![0; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        for w in order.windows(2) {
            if elements[w[0]].0 == elements[w[1]].0 {
                return Err(Error::DuplicateId(elements[w[0]].0.clone()));
            }
        }
        let names: Vec<String> = order.iter().map(|&i| elements[i].0.clone()).collect();
        let color: Vec<usize> = order.iter().map(|&i| elements[i].1).collect();
        let mut maps = vec![BTreeMap::new(); base.n_arrows()];
        let mut images: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); base.n_arrows()];
        for &(s, t, a) in arrows {
            let (s, t) = (pos[s], pos[t]);
            let ar = base.arrow(a);
            if color[s] != ar.src || color[t] != ar.tgt {
                return Err(Error::InvalidQuiverMap(format!(
                    "arrow colored `{}` has wrong endpoints",
                    ar.id
                )));
            }
            if maps[a].insert(s, t).is_some() || !images[a].insert(t) {
                return Err(Error::InvalidWinding(format!(
                    "two `{}`-arrows share an endpoint",
                    ar.id
                )));
            }
        }
        Ok(F1Rep {
            base,
            elements: names,
            color,
            maps,
        })
    }

    pub fn zero(base: Arc<Quiver>) -> F1Rep {
        let n = base.n_arrows();
        F1Rep {
            base,
            elements: Vec::new(),
            color: Vec::new(),
            maps: vec![BTreeMap::new(); n],
        }
    }

    pub fn base(&self) -> &Arc<Quiver> {
        &self.base
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.as_str().cmp(name))
            .ok()
    }

    /// Base vertex of each element.
    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    pub fn total_dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> Vec<usize> {
        let mut d = vec![0; self.base.n_vertices()];
        for &c in &self.color {
            d[c] += 1;
        }
        d
    }

    /// Basis of the space at a base vertex, in lexicographic order.
    pub fn basis(&self, v: usize) -> Vec<&str> {
        self.elements
            .iter()
            .zip(&self.color)
            .filter(|(_, &c)| c == v)
            .map(|(e, _)| e.as_str())
            .collect()
    }

    pub fn apply(&self, arrow: usize, x: usize) -> Option<usize> {
        self.maps[arrow].get(&x).copied()
    }

    pub fn map(&self, arrow: usize) -> &BTreeMap<usize, usize> {
        &self.maps[arrow]
    }

    /// Arrows of the coefficient quiver as `(src, tgt, color)`, sorted.
    pub fn gamma_arrows(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = self
            .maps
            .iter()
            .enumerate()
            .flat_map(|(a, m)| m.iter().map(move |(&x, &y)| (x, y, a)))
            .collect();
        out.sort_unstable();
        out
    }

    pub(crate) fn gamma_edges(&self) -> Vec<(usize, usize)> {
        self.gamma_arrows().iter().map(|&(s, t, _)| (s, t)).collect()
    }

    /// Canonical isomorphism-class key.
    pub fn key(&self) -> String {
        canon::key_of(self.total_dim(), &self.color, &self.gamma_arrows())
    }

    /// Element index sets of the connected components of Γ.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.total_dim(), &self.gamma_edges())
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff Γ has no directed cycle.
    pub fn is_nilpotent(&self) -> bool {
        is_acyclic(self.total_dim(), &self.gamma_edges())
    }

    /// True iff every vertex space has dimension at most one.
    pub fn is_thin(&self) -> bool {
        self.dim().iter().all(|&d| d <= 1)
    }

    /// Full sub-representation data on a set of elements (the induced
    /// subquiver of Γ). The caller decides whether it is a sub or a quotient.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> F1Rep {
        let elements: Vec<(String, usize)> = keep
            .iter()
            .map(|&i| (self.elements[i].clone(), self.color[i]))
            .collect();
        let local: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let arrows: Vec<(usize, usize, usize)> = self
            .gamma_arrows()
            .into_iter()
            .filter_map(|(s, t, a)| Some((*local.get(&s)?, *local.get(&t)?, a)))
            .collect();
        F1Rep::from_graph(self.base.clone(), elements, &arrows).expect("induced data is valid")
    }

    /// Summands given by connected components of Γ, sorted by key.
    pub fn decompose(&self) -> Vec<F1Rep> {
        let mut parts: Vec<F1Rep> = self
            .components()
            .into_iter()
            .map(|c| self.induced(&c.into_iter().collect()))
            .collect();
        parts.sort_by_cached_key(|p| p.key());
        parts
    }

    /// Copy with elements renamed `x1, x2, ...` in current order.
    pub fn renamed(&self) -> F1Rep {
        let width = self.total_dim().to_string().len();
        let elements: Vec<(String, usize)> = (0..self.total_dim())
            .map(|i| (format!("x{:0width$}", i + 1), self.color[i]))
            .collect();
        F1Rep::from_graph(self.base.clone(), elements, &self.gamma_arrows())
            .expect("renaming keeps validity")
    }

    /// Whether the element set is closed under all arrow maps.
    pub fn is_closed(&self, set: &[bool]) -> bool {
        self.gamma_arrows()
            .iter()
            .all(|&(s, t, _)| !set[s] || set[t])
    }

    /// Calls `visit` on every arrow-image-closed element subset whose
    /// dimension vector is `d` (or every closed subset when `d` is `None`).
    pub fn for_each_closed_subset(&self, d: Option<&[usize]>, mut visit: impl FnMut(&[bool])) {
        ClosedSets::new(self, d).run(&mut visit);
    }

    pub fn count_closed_subsets(&self, d: Option<&[usize]>) -> u64 {
        let mut n = 0u64;
        self.for_each_closed_subset(d, |_| n += 1);
        n
    }

    /// Subrepresentations with dimension vector `d` (all when `None`),
    /// sorted by canonical key and then by element subset.
    pub fn subrepresentations(&self, d: Option<&[usize]>) -> Result<Vec<F1Rep>> {
        if let Some(d) = d {
            let dim = self.dim();
            if d.len() != dim.len() || d.iter().zip(&dim).any(|(a, b)| a > b) {
                return Err(Error::DimTooLarge);
            }
        }
        let mut found: Vec<(String, Vec<usize>, F1Rep)> = Vec::new();
        self.for_each_closed_subset(d, |set| {
            let keep: BTreeSet<usize> = (0..set.len()).filter(|&i| set[i]).collect();
            let sub = self.induced(&keep);
            found.push((sub.key(), keep.into_iter().collect(), sub));
        });
        found.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        Ok(found.into_iter().map(|(_, _, r)| r).collect())
    }

    /// Quotient by a subrepresentation given with the same element names.
    pub fn quotient(&self, sub: &F1Rep) -> Result<F1Rep> {
        let set = self.subset_of(sub)?;
        if !self.is_closed(&set) {
            return Err(Error::NotASubrep("element set is not closed".into()));
        }
        let keep: BTreeSet<usize> = (0..set.len()).filter(|&i| !set[i]).collect();
        Ok(self.induced(&keep))
    }

    /// Locates the elements of `sub` inside `self`, checking that `sub` is the
    /// induced structure on them.
    pub fn subset_of(&self, sub: &F1Rep) -> Result<Vec<bool>> {
        if sub.base != self.base {
            return Err(Error::NotASubrep("different base quivers".into()));
        }
        let mut set = vec![false; self.total_dim()];
        let mut keep = BTreeSet::new();
        for (i, name) in sub.elements.iter().enumerate() {
            let j = self
                .element_index(name)
                .filter(|&j| self.color[j] == sub.color[i])
                .ok_or_else(|| Error::NotASubrep(format!("unknown element `{name}`")))?;
            set[j] = true;
            keep.insert(j);
        }
        if self.induced(&keep).gamma_arrows() != sub.gamma_arrows() {
            return Err(Error::NotASubrep("maps differ from the restriction".into()));
        }
        Ok(set)
    }

    /// Restriction to a subquiver of the base.
    pub fn restrict(&self, sub: &Quiver) -> Result<F1Rep> {
        let (vs, arr) = self.base.embedding_of(sub)?;
        let c = Arc::new(sub.clone());
        let mut new_color = vec![usize::MAX; self.base.n_vertices()];
        for (j, &v) in vs.iter().enumerate() {
            new_color[v] = j;
        }
        let kept: Vec<usize> = (0..self.total_dim())
            .filter(|&i| new_color[self.color[i]] != usize::MAX)
            .collect();
        let mut local = vec![usize::MAX; self.total_dim()];
        for (j, &i) in kept.iter().enumerate() {
            local[i] = j;
        }
        let elements: Vec<(String, usize)> = kept
            .iter()
            .map(|&i| (self.elements[i].clone(), new_color[self.color[i]]))
            .collect();
        let mut arrows = Vec::new();
        for (j, &a) in arr.iter().enumerate() {
            for (&x, &y) in &self.maps[a] {
                arrows.push((local[x], local[y], j));
            }
        }
        F1Rep::from_graph(c, elements, &arrows)
    }

    /// Direct sum; element names get the suffix `#0` or `#1`.
    pub fn direct_sum(&self, other: &F1Rep) -> Result<F1Rep> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let mut elements = Vec::new();
        let mut arrows = Vec::new();
        for (k, r) in [self, other].into_iter().enumerate() {
            let off = elements.len();
            elements.extend(
                r.elements
                    .iter()
                    .zip(&r.color)
                    .map(|(e, &c)| (format!("{e}#{k}"), c)),
            );
            arrows.extend(r.gamma_arrows().into_iter().map(|(s, t, a)| (s + off, t + off, a)));
        }
        F1Rep::from_graph(self.base.clone(), elements, &arrows)
    }

    /// Glues Γ_self and Γ_other along the elements `u` and `v`.
    pub fn amalgam(&self, other: &F1Rep, u: &str, v: &str) -> Result<F1Rep> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let ui = self
            .element_index(u)
            .ok_or_else(|| Error::BadParameters(format!("unknown element `{u}`")))?;
        let vi = other
            .element_index(v)
            .ok_or_else(|| Error::BadParameters(format!("unknown element `{v}`")))?;
        if self.color[ui] != other.color[vi] {
            return Err(Error::VertexColorMismatch);
        }
        for a in 0..self.base.n_arrows() {
            if !self.maps[a].is_empty() && !other.maps[a].is_empty() {
                return Err(Error::ColorCollision(self.base.arrow(a).id.clone()));
            }
        }
        let clash = other
            .elements
            .iter()
            .enumerate()
            .any(|(j, e)| j != vi && self.element_index(e).is_some());
        let rename = |e: &str, k: usize| {
            if clash {
                format!("{e}#{k}")
            } else {
                e.to_string()
            }
        };
        let mut elements: Vec<(String, usize)> = self
            .elements
            .iter()
            .zip(&self.color)
            .map(|(e, &c)| (rename(e, 0), c))
            .collect();
        let mut index = vec![0; other.total_dim()];
        for j in 0..other.total_dim() {
            if j == vi {
                index[j] = ui;
            } else {
                index[j] = elements.len();
                elements.push((rename(&other.elements[j], 1), other.color[j]));
            }
        }
        let mut arrows = self.gamma_arrows();
        arrows.extend(
            other
                .gamma_arrows()
                .into_iter()
                .map(|(s, t, a)| (index[s], index[t], a)),
        );
        F1Rep::from_graph(self.base.clone(), elements, &arrows)
    }

    /// Per-arrow 0/1 matrices in the lexicographic bases: entry (y, x) is 1
    /// iff f(x) = y.
    pub fn base_change_matrices(&self) -> Vec<Vec<Vec<u8>>> {
        let mut pos = vec![0; self.total_dim()];
        let mut counts = vec![0; self.base.n_vertices()];
        for i in 0..self.total_dim() {
            pos[i] = counts[self.color[i]];
            counts[self.color[i]] += 1;
        }
        self.base
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, ar)| {
                let mut m = vec![vec![0u8; counts[ar.src]]; counts[ar.tgt]];
                for (&x, &y) in &self.maps[a] {
                    m[pos[y]][pos[x]] = 1;
                }
                m
            })
            .collect()
    }
}

/// The coefficient quiver of a representation as a winding.
pub fn winding_from_rep(m: &F1Rep) -> Winding {
    let arrows = m.gamma_arrows();
    let gamma = Quiver::new(
        m.elements.iter().cloned(),
        arrows.iter().map(|&(s, t, a)| {
            (
                format!("{}:{}", m.base.arrow(a).id, m.elements[s]),
                m.elements[s].clone(),
                m.elements[t].clone(),
            )
        }),
    )
    .expect("coefficient quiver ids are unique");
    let amap: Vec<usize> = gamma
        .arrows()
        .iter()
        .map(|ar| {
            let (a, _) = ar.id.split_once(':').expect("arrow id has a color prefix");
            m.base.arrow_index(a).expect("color exists")
        })
        .collect();
    let map = QuiverMap::new(gamma, m.base.clone(), m.color.clone(), amap)
        .expect("coefficient quiver maps to the base");
    Winding::new(map).expect("coefficient quivers are windings")
}

/// The representation encoded by a winding; element names are Γ's vertex ids.
pub fn rep_from_winding(c: &Winding) -> Result<F1Rep> {
    let g = c.gamma();
    let elements: Vec<(String, usize)> = g
        .vertices()
        .iter()
        .cloned()
        .zip(c.vmap().iter().copied())
        .collect();
    F1Rep::from_graph(c.base().clone(), elements, &c.colored_arrows())
}

/// Enumerator of closed subsets. Strongly connected components of Γ are
/// decided in reverse topological order, so a component may only be taken
/// when all components it points to were taken.
struct ClosedSets {
    comps: Vec<Vec<usize>>,
    succ: Vec<Vec<usize>>,
    comp_dim: Vec<Vec<(usize, usize)>>,
    target: Option<Vec<usize>>,
    n: usize,
}

impl ClosedSets {
    fn new(m: &F1Rep, d: Option<&[usize]>) -> ClosedSets {
        let n = m.total_dim();
        let edges = m.gamma_edges();
        let comps = tarjan(n, &edges);
        let mut comp_of = vec![0; n];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = k;
            }
        }
        let mut succ = vec![BTreeSet::new(); comps.len()];
        for &(s, t) in &edges {
            if comp_of[s] != comp_of[t] {
                succ[comp_of[s]].insert(comp_of[t]);
            }
        }
        let comp_dim = comps
            .iter()
            .map(|c| {
                let mut cnt: BTreeMap<usize, usize> = BTreeMap::new();
                for &v in c {
                    *cnt.entry(m.color[v]).or_default() += 1;
                }
                cnt.into_iter().collect()
            })
            .collect();
        ClosedSets {
            comps,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            comp_dim,
            target: d.map(|d| d.to_vec()),
            n,
        }
    }

    fn run(&self, visit: &mut dyn FnMut(&[bool])) {
        let mut taken = vec![false; self.comps.len()];
        let mut set = vec![false; self.n];
        match &self.target {
            None => self.rec(0, &mut taken, &mut set, None, visit),
            Some(d) => {
                // remaining[v]: elements over v in components not yet decided
                let mut remaining = vec![0usize; d.len()];
                for cd in &self.comp_dim {
                    for &(c, k) in cd {
                        remaining[c] += k;
                    }
                }
                if remaining.iter().zip(d).any(|(r, x)| r < x) {
                    return;
                }
                let mut state = Budget {
                    need: d.clone(),
                    remaining,
                };
                self.rec(0, &mut taken, &mut set, Some(&mut state), visit);
            }
        }
    }

    fn rec(
        &self,
        k: usize,
        taken: &mut Vec<bool>,
        set: &mut Vec<bool>,
        mut budget: Option<&mut Budget>,
        visit: &mut dyn FnMut(&[bool]),
    ) {
        if k == self.comps.len() {
            if budget.as_ref().is_none_or(|b| b.need.iter().all(|&x| x == 0)) {
                visit(set);
            }
            return;
        }
        let dims = &self.comp_dim[k];
        if let Some(b) = budget.as_deref_mut() {
            for &(c, x) in dims {
                b.remaining[c] -= x;
            }
        }
        // option 1: skip component k
        let feasible_skip = budget
            .as_deref()
            .is_none_or(|b| b.need.iter().zip(&b.remaining).all(|(n, r)| n <= r));
        if feasible_skip {
            self.rec(k + 1, taken, set, budget.as_deref_mut(), visit);
        }
        // option 2: take component k
        let closed = self.succ[k].iter().all(|&j| taken[j]);
        let fits = budget
            .as_deref()
            .is_none_or(|b| dims.iter().all(|&(c, x)| b.need[c] >= x));
        if closed && fits {
            if let Some(b) = budget.as_deref_mut() {
                for &(c, x) in dims {
                    b.need[c] -= x;
                }
            }
            let feasible = budget
                .as_deref()
                .is_none_or(|b| b.need.iter().zip(&b.remaining).all(|(n, r)| n <= r));
            if feasible {
                taken[k] = true;
                for &v in &self.comps[k] {
                    set[v] = true;
                }
                self.rec(k + 1, taken, set, budget.as_deref_mut(), visit);
                taken[k] = false;
                for &v in &self.comps[k] {
                    set[v] = false;
                }
            }
            if let Some(b) = budget.as_deref_mut() {
                for &(c, x) in dims {
                    b.need[c] += x;
                }
            }
        }
        if let Some(b) = budget {
            for &(c, x) in dims {
                b.remaining[c] += x;
            }
        }
    }
}

struct Budget {
    need: Vec<usize>,
    remaining: Vec<usize>,
}

/// Strongly connected components, emitted sinks first.
fn tarjan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in edges {
        adj[s].push(t);
    }
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, next child position)
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("stack holds the component");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}
