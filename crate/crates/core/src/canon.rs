//! Canonical forms of windings up to isomorphism over the base quiver.
//!
//! Vertex colors are refined by their colored neighbourhoods; one vertex of
//! the smallest refined cell is then individualized. In a connected winding
//! every vertex has at most one incoming and one outgoing arrow per color, so
//! individualizing a single vertex already fixes the whole labeling and the
//! search tree below each choice is a single traversal. The certificate is the
//! lexicographically least one over all choices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::{components, Winding};

/// Canonical key of a winding. Equal keys ⇔ isomorphic over the base.
pub fn canonical_key(c: &Winding) -> String {
    key_of(c.gamma().n_vertices(), c.vmap(), &c.colored_arrows())
}

pub fn windings_isomorphic(a: &Winding, b: &Winding) -> Result<bool> {
    if a.base() != b.base() {
        return Err(Error::CodomainMismatch);
    }
    Ok(canonical_key(a) == canonical_key(b))
}

/// Key of a colored graph given by vertex colors and `(src, tgt, color)`
/// arrows, where the coloring satisfies the winding condition.
pub(crate) fn key_of(n: usize, vcolor: &[usize], arrows: &[(usize, usize, usize)]) -> String {
    let mut keys = component_keys(n, vcolor, arrows);
    if keys.is_empty() {
        return "0".to_string();
    }
    keys.sort();
    keys.concat()
}

/// Keys of the connected components, in component order.
pub(crate) fn component_keys(
    n: usize,
    vcolor: &[usize],
    arrows: &[(usize, usize, usize)],
) -> Vec<String> {
    let edges: Vec<(usize, usize)> = arrows.iter().map(|&(s, t, _)| (s, t)).collect();
    components(n, &edges)
        .into_iter()
        .map(|comp| component_key(&comp, vcolor, arrows))
        .collect()
}

/// Key of the sub-winding spanned by a set of vertices (full subquiver).
pub(crate) fn induced_key(
    vertices: &[usize],
    vcolor: &[usize],
    arrows: &[(usize, usize, usize)],
) -> String {
    let mut local = vec![usize::MAX; vcolor.len()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let colors: Vec<usize> = vertices.iter().map(|&v| vcolor[v]).collect();
    let sub: Vec<(usize, usize, usize)> = arrows
        .iter()
        .filter(|&&(s, t, _)| local[s] != usize::MAX && local[t] != usize::MAX)
        .map(|&(s, t, c)| (local[s], local[t], c))
        .collect();
    key_of(vertices.len(), &colors, &sub)
}

fn component_key(comp: &[usize], vcolor: &[usize], arrows: &[(usize, usize, usize)]) -> String {
    component_canon(comp, vcolor, arrows).0
}

fn component_canon(
    comp: &[usize],
    vcolor: &[usize],
    arrows: &[(usize, usize, usize)],
) -> (String, usize) {
    let n = comp.len();
    let mut local = BTreeMap::new();
    for (i, &v) in comp.iter().enumerate() {
        local.insert(v, i);
    }
    let colors: Vec<usize> = comp.iter().map(|v| vcolor[*v]).collect();
    // (color, neighbour) lists, outgoing and incoming, sorted by color
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut local_arrows = Vec::new();
    for &(s, t, c) in arrows {
        if let (Some(&ls), Some(&lt)) = (local.get(&s), local.get(&t)) {
            out[ls].push((c, lt));
            inc[lt].push((c, ls));
            local_arrows.push((ls, lt, c));
        }
    }
    for l in out.iter_mut().chain(inc.iter_mut()) {
        l.sort_unstable();
    }

    let cell = refined_start_cell(&colors, &out, &inc);
    let mut best: Option<Vec<usize>> = None;
    let mut ties = 0;
    for &start in &cell {
        let cert = certificate(start, &colors, &out, &inc, &local_arrows);
        match best.as_ref().map(|b| cert.cmp(b)) {
            None | Some(std::cmp::Ordering::Less) => {
                best = Some(cert);
                ties = 1;
            }
            Some(std::cmp::Ordering::Equal) => ties += 1,
            Some(std::cmp::Ordering::Greater) => {}
        }
    }
    (format_certificate(&best.expect("component is nonempty"), n), ties)
}

/// Order of the automorphism group of a connected winding over its base.
/// Automorphisms are determined by the image of one vertex, and every start
/// vertex realizing the least certificate is such an image.
pub fn automorphism_count(c: &Winding) -> Result<usize> {
    let n = c.gamma().n_vertices();
    if n == 0 || !c.gamma().is_connected() {
        return Err(Error::Disconnected);
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(component_canon(&all, c.vmap(), &c.colored_arrows()).1)
}

/// Color refinement; returns the members of the smallest final cell (ties
/// broken by the invariant cell color).
fn refined_start_cell(
    colors: &[usize],
    out: &[Vec<(usize, usize)>],
    inc: &[Vec<(usize, usize)>],
) -> Vec<usize> {
    let n = colors.len();
    let mut cls = rank(colors.to_vec());
    let mut classes = distinct(&cls);
    loop {
        let sig: Vec<(usize, Vec<(usize, usize)>, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                (
                    cls[v],
                    out[v].iter().map(|&(c, w)| (c, cls[w])).collect(),
                    inc[v].iter().map(|&(c, w)| (c, cls[w])).collect(),
                )
            })
            .collect();
        let next = rank(sig);
        let nc = distinct(&next);
        cls = next;
        if nc == classes {
            break;
        }
        classes = nc;
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &cls {
        *sizes.entry(c).or_default() += 1;
    }
    let (&target, _) = sizes
        .iter()
        .min_by_key(|(&c, &size)| (size, c))
        .expect("nonempty");
    (0..n).filter(|&v| cls[v] == target).collect()
}

fn rank<T: Ord + Clone>(items: Vec<T>) -> Vec<usize> {
    let mut sorted = items.clone();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(x).expect("present"))
        .collect()
}

fn distinct(cls: &[usize]) -> usize {
    cls.iter().max().map_or(0, |m| m + 1)
}

/// Breadth-first relabeling from `start`; neighbours are visited through
/// outgoing arrows by color, then incoming arrows by color.
fn certificate(
    start: usize,
    colors: &[usize],
    out: &[Vec<(usize, usize)>],
    inc: &[Vec<(usize, usize)>],
    arrows: &[(usize, usize, usize)],
) -> Vec<usize> {
    let n = colors.len();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(_, w) in out[v].iter().chain(inc[v].iter()) {
            if label[w] == usize::MAX {
                label[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut cert = Vec::with_capacity(1 + n + 3 * arrows.len());
    cert.extend(order.iter().map(|&v| colors[v]));
    let mut arr: Vec<(usize, usize, usize)> = arrows
        .iter()
        .map(|&(s, t, c)| (label[s], label[t], c))
        .collect();
    arr.sort_unstable();
    for (s, t, c) in arr {
        cert.extend([s, t, c]);
    }
    cert
}

fn format_certificate(cert: &[usize], n: usize) -> String {
    let vs: Vec<String> = cert[..n].iter().map(|c| c.to_string()).collect();
    let arrows: Vec<String> = cert[n..]
        .chunks(3)
        .map(|ch| format!("{}>{}:{}", ch[0], ch[1], ch[2]))
        .collect();
    format!("({};{})", vs.join(","), arrows.join(","))
}
