//! Seeded random generation of small nilpotent representations with finite
//! nice length, used as a test corpus.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gradings::{nice_length, NiceLength};
use crate::named;
use crate::rep::F1Rep;

pub const BASES: [&str; 5] = ["A2", "A3", "L1", "L2", "cycle:++-"];
pub const MAX_TOTAL_DIM: usize = 6;
pub const MAX_VERTEX_DIM: usize = 3;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// Name of the base quiver, resolvable by `named::by_name`.
    pub base: String,
    pub rep: F1Rep,
    pub nice_length: usize,
}

/// `count` pairwise non-isomorphic nilpotent representations of finite nice
/// length, cycling through [`BASES`]. The same seed gives the same corpus.
pub fn generate(seed: u64, count: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<Arc<crate::Quiver>> = BASES
        .iter()
        .map(|n| named::by_name(n).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
    let mut out = Vec::new();
    let max_attempts = 200 * count.max(1);
    for attempt in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let b = attempt % bases.len();
        let rep = random_nilpotent(&bases[b], &mut rng)?;
        if rep.is_zero() || !seen.insert((b, rep.key())) {
            continue;
        }
        if let NiceLength::Finite(n) = nice_length(&rep).0 {
            out.push(CorpusEntry {
                base: BASES[b].to_string(),
                rep,
                nice_length: n,
            });
        }
    }
    if out.len() < count {
        return Err(Error::SizeBudgetExceeded(format!(
            "found only {} of {count} corpus entries",
            out.len()
        )));
    }
    Ok(out)
}

/// A random representation within the size limits whose coefficient quiver
/// is acyclic. Arrows are added one at a time and dropped when they would
/// close a directed cycle.
pub fn random_nilpotent(base: &Arc<crate::Quiver>, rng: &mut impl Rng) -> Result<F1Rep> {
    let nv = base.n_vertices();
    let total = rng.gen_range(1..=MAX_TOTAL_DIM);
    let mut dims = vec![0usize; nv];
    for _ in 0..total {
        let open: Vec<usize> = (0..nv).filter(|&v| dims[v] < MAX_VERTEX_DIM).collect();
        match open.choose(rng) {
            Some(&v) => dims[v] += 1,
            None => break,
        }
    }
    let mut elements = Vec::new();
    for (v, &d) in dims.iter().enumerate() {
        for _ in 0..d {
            elements.push((format!("x{}", elements.len() + 1), v));
        }
    }
    let n = elements.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut arrows = Vec::new();
    for a in 0..base.n_arrows() {
        let ar = base.arrow(a);
        let mut sources: Vec<usize> = (0..n).filter(|&i| elements[i].1 == ar.src).collect();
        let mut targets: Vec<usize> = (0..n).filter(|&i| elements[i].1 == ar.tgt).collect();
        sources.shuffle(rng);
        targets.shuffle(rng);
        for (&x, &y) in sources.iter().zip(&targets) {
            if !rng.gen_bool(0.7) || reach[y][x] {
                continue;
            }
            arrows.push((x, y, a));
            // everything reaching x now reaches everything y reaches
            let from: Vec<usize> = (0..n).filter(|&p| reach[p][x]).collect();
            let to: Vec<usize> = (0..n).filter(|&r| reach[y][r]).collect();
            for &p in &from {
                for &r in &to {
                    reach[p][r] = true;
                }
            }
        }
    }
    F1Rep::from_graph(base.clone(), elements, &arrows)
}
