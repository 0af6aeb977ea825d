//! Constructors for thin representations, string and band modules over
//! cycles, and 2-strand representations of the two-loop quiver.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::named;
use crate::quiver::{classify_shape, walk_cycle, Quiver, ShapeClass};
use crate::rep::F1Rep;

/// The thin representation supported on a connected subquiver `s` of `base`:
/// one element per vertex (named after it), every arrow of `s` acting.
pub fn thin(base: &Arc<Quiver>, s: &Quiver) -> Result<F1Rep> {
    if s.n_vertices() == 0 || !s.is_connected() {
        return Err(Error::BadParameters("support must be connected".into()));
    }
    let (vs, arr) = base.embedding_of(s)?;
    let elements: Vec<(String, usize)> = s
        .vertices()
        .iter()
        .cloned()
        .zip(vs.iter().copied())
        .collect();
    let arrows: Vec<(usize, usize, usize)> = s
        .arrows()
        .iter()
        .zip(&arr)
        .map(|(a, &i)| (a.src, a.tgt, i))
        .collect();
    F1Rep::from_graph(base.clone(), elements, &arrows)
}

/// Cyclic ordering of a quiver whose underlying graph is one cycle. Vertex
/// `vertices[k]` is joined to `vertices[k+1 mod n]` by `arrows[k]`, which
/// points that way iff `forward[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleOrder {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
    pub forward: Vec<bool>,
}

impl CycleOrder {
    pub fn of(q: &Quiver) -> Result<CycleOrder> {
        match classify_shape(q) {
            Ok(ShapeClass::TypeATilde { .. }) => {}
            _ => return Err(Error::NotAffine),
        }
        let (vertices, steps) = walk_cycle(q)?;
        Ok(CycleOrder {
            vertices,
            arrows: steps.iter().map(|s| s.0).collect(),
            forward: steps.iter().map(|s| s.1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Orientation sign of the arrow joining cyclic positions `k` and `k+1`,
    /// with positions numbered from 1 and read modulo n.
    pub fn epsilon(&self, k: i64) -> i64 {
        let n = self.len() as i64;
        let j = ((k - 1).rem_euclid(n)) as usize;
        if self.forward[j] {
            1
        } else {
            -1
        }
    }

    /// Elements `1..=len` laid along the cycle from position `start` (0-based);
    /// closes up into a band when `closed`.
    fn walk(&self, base: &Arc<Quiver>, start: usize, len: usize, closed: bool) -> Result<F1Rep> {
        let n = self.len();
        let elements: Vec<(String, usize)> = (0..len)
            .map(|k| ((k + 1).to_string(), self.vertices[(start + k) % n]))
            .collect();
        let links = if closed { len } else { len - 1 };
        let arrows: Vec<(usize, usize, usize)> = (0..links)
            .map(|k| {
                let j = (start + k) % n;
                let (a, b) = (k, (k + 1) % len);
                if self.forward[j] {
                    (a, b, self.arrows[j])
                } else {
                    (b, a, self.arrows[j])
                }
            })
            .collect();
        F1Rep::from_graph(base.clone(), elements, &arrows)
    }
}

/// The string module `I_[d,i]`: `d` elements placed along the cycle starting
/// at cyclic position `i` (1-based).
pub fn string_rep(base: &Arc<Quiver>, d: usize, i: usize) -> Result<F1Rep> {
    let order = CycleOrder::of(base)?;
    if d == 0 || i == 0 || i > order.len() {
        return Err(Error::BadParameters(format!(
            "string I[{d},{i}] needs d >= 1 and 1 <= i <= {}",
            order.len()
        )));
    }
    order.walk(base, i - 1, d, false)
}

/// The band module `Ĩ_d`: the cycle wound `d` times.
pub fn band_rep(base: &Arc<Quiver>, d: usize) -> Result<F1Rep> {
    let order = CycleOrder::of(base)?;
    if d == 0 {
        return Err(Error::BadParameters("band needs d >= 1".into()));
    }
    order.walk(base, 0, d * order.len(), true)
}

/// The 2-strand representation of `L_2` for a 2×d matrix of positive path
/// lengths: consecutive junctions are joined by an `a1`-path of length
/// `x[0][i]` and an `a2`-path of length `x[1][i]`.
pub fn two_strand(x: &[Vec<usize>]) -> Result<F1Rep> {
    if x.len() != 2 || x[0].len() != x[1].len() || x[0].is_empty() {
        return Err(Error::BadParameters("two_strand needs a 2×d matrix, d >= 1".into()));
    }
    if x.iter().flatten().any(|&v| v == 0) {
        return Err(Error::BadParameters("path lengths must be positive".into()));
    }
    let base = Arc::new(named::loops(2));
    let mut count = 0usize;
    let mut fresh = || {
        count += 1;
        count - 1
    };
    let mut arrows = Vec::new();
    let mut junction = fresh();
    for col in 0..x[0].len() {
        let mut inner: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for (row, path) in inner.iter_mut().enumerate() {
            for _ in 1..x[row][col] {
                path.push(fresh());
            }
        }
        let next = fresh();
        for (row, path) in inner.iter().enumerate() {
            let mut prev = junction;
            for &p in path.iter().chain(std::iter::once(&next)) {
                arrows.push((prev, p, row));
                prev = p;
            }
        }
        junction = next;
    }
    let elements = (0..count).map(|k| ((k + 1).to_string(), 0)).collect();
    F1Rep::from_graph(base, elements, &arrows)
}
