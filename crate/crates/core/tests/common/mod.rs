//! Helpers shared by the integration tests. Everything here is written
//! independently of the library's own algorithms so it can act as an oracle.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use f1q::hall::{HallAlgebra, HallElement, IsoClass};
use f1q::{F1Rep, Quiver};

pub fn rep(q: &Arc<Quiver>, basis: &[(&str, &[&str])], maps: &[(&str, &[(&str, &str)])]) -> F1Rep {
    let b: BTreeMap<String, Vec<&str>> = basis.iter().map(|(v, e)| (v.to_string(), e.to_vec())).collect();
    let m: BTreeMap<String, Vec<(&str, &str)>> =
        maps.iter().map(|(a, p)| (a.to_string(), p.to_vec())).collect();
    F1Rep::new(q.clone(), &b, &m).unwrap()
}

/// v1 -a1-> v2 -a2-> v3 <-a1- v4 <-a2- v5 over L_2.
pub fn l2_string() -> F1Rep {
    let q = Arc::new(f1q::named::loops(2));
    rep(
        &q,
        &[("v", &["v1", "v2", "v3", "v4", "v5"])],
        &[("a1", &[("v1", "v2"), ("v4", "v3")]), ("a2", &[("v2", "v3"), ("v5", "v4")])],
    )
}

/// v1 -a1-> v2 <-a2- v3 -a1-> v4 <-a2- v1 over L_2.
pub fn l2_band() -> F1Rep {
    let q = Arc::new(f1q::named::loops(2));
    rep(
        &q,
        &[("v", &["v1", "v2", "v3", "v4"])],
        &[("a1", &[("v1", "v2"), ("v3", "v4")]), ("a2", &[("v3", "v2"), ("v1", "v4")])],
    )
}

/// The 16-element representation of L_3 with α, β, γ = a1, a2, a3.
pub fn l3_example() -> F1Rep {
    let q = Arc::new(f1q::named::loops(3));
    rep(
        &q,
        &[(
            "v",
            &[
                "A1", "A4", "A7", "A8", "A9", "B2", "B4", "B6", "B7", "B8", "B9", "B10", "C1", "C3", "C5", "C7",
            ],
        )],
        &[
            (
                "a1",
                &[("A7", "A8"), ("A8", "A9"), ("A9", "B10"), ("C3", "B4"), ("B4", "B6"), ("B6", "A7")],
            ),
            (
                "a2",
                &[
                    ("A1", "B2"),
                    ("B2", "C3"),
                    ("C3", "C5"),
                    ("C5", "B6"),
                    ("B6", "B7"),
                    ("B7", "B8"),
                    ("B8", "B9"),
                    ("B9", "B10"),
                ],
            ),
            ("a3", &[("A4", "B6"), ("B2", "A4"), ("B6", "C7"), ("C1", "B2")]),
        ],
    )
}

/// All isomorphism classes of total dimension at most `bound`, as direct
/// sums of the algebra's indecomposables, zero included.
pub fn classes_up_to(alg: &HallAlgebra, bound: usize) -> Vec<IsoClass> {
    let inds = alg.primitives_basis(bound).unwrap();
    let mut out = vec![IsoClass::zero(alg.base())];
    let mut stack: Vec<(usize, F1Rep)> = vec![(0, f1q::F1Rep::zero(alg.base().clone()))];
    while let Some((start, r)) = stack.pop() {
        for (i, c) in inds.iter().enumerate().skip(start) {
            if r.total_dim() + c.total_dim() > bound {
                continue;
            }
            let s = if r.is_zero() { c.rep.clone() } else { r.direct_sum(&c.rep).unwrap().renamed() };
            out.push(IsoClass::of(&s));
            stack.push((i, s));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Automorphism group order by trying every color-preserving permutation.
pub fn brute_automorphisms(m: &F1Rep) -> u64 {
    let n = m.total_dim();
    let arrows: BTreeSet<(usize, usize, usize)> = m.gamma_arrows().into_iter().collect();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        m: &F1Rep,
        arrows: &BTreeSet<(usize, usize, usize)>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> u64 {
        let n = m.total_dim();
        if perm.len() == n {
            let ok = arrows.iter().all(|&(s, t, a)| arrows.contains(&(perm[s], perm[t], a)));
            return ok as u64;
        }
        let i = perm.len();
        let mut total = 0;
        for j in 0..n {
            if !used[j] && m.colors()[j] == m.colors()[i] {
                used[j] = true;
                perm.push(j);
                total += go(m, arrows, perm, used);
                perm.pop();
                used[j] = false;
            }
        }
        total
    }
    go(m, &arrows, &mut perm, &mut used)
}

/// Extension structures on `Γ_M ⊔ Γ_N` with arrows only from M to N,
/// counted by the class of the result. Every subset of admissible extra
/// arrows is tried.
pub fn extension_classes(m: &F1Rep, n: &F1Rep) -> BTreeMap<String, u64> {
    let q = m.base();
    let (dm, dn) = (m.total_dim(), n.total_dim());
    let elements: Vec<(String, usize)> = (0..dm)
        .map(|i| (format!("m{i}"), m.colors()[i]))
        .chain((0..dn).map(|j| (format!("n{j}"), n.colors()[j])))
        .collect();
    let mut base: Vec<(usize, usize, usize)> = m.gamma_arrows();
    base.extend(n.gamma_arrows().into_iter().map(|(s, t, a)| (s + dm, t + dm, a)));
    let mut options = Vec::new();
    for a in 0..q.n_arrows() {
        for x in 0..dm {
            for y in 0..dn {
                if m.colors()[x] == q.arrow(a).src && n.colors()[y] == q.arrow(a).tgt {
                    options.push((x, y + dm, a));
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for mask in 0u64..(1 << options.len()) {
        let mut arrows = base.clone();
        arrows.extend((0..options.len()).filter(|&k| mask >> k & 1 == 1).map(|k| options[k]));
        let mut outs = BTreeSet::new();
        let mut ins = BTreeSet::new();
        if !arrows.iter().all(|&(s, t, a)| outs.insert((s, a)) && ins.insert((t, a))) {
            continue;
        }
        let b: BTreeMap<String, Vec<&str>> = {
            let mut b: BTreeMap<String, Vec<&str>> = BTreeMap::new();
            for (name, c) in &elements {
                b.entry(q.vertex(*c).to_string()).or_default().push(name);
            }
            b
        };
        let mut maps: BTreeMap<String, Vec<(&str, &str)>> = BTreeMap::new();
        for &(s, t, a) in &arrows {
            maps.entry(q.arrow(a).id.clone())
                .or_default()
                .push((&elements[s].0, &elements[t].0));
        }
        let r = F1Rep::new(q.clone(), &b, &maps).unwrap();
        *out.entry(r.key()).or_insert(0) += 1;
    }
    out
}

pub fn int(x: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(x.into())
}

pub fn basis(c: &IsoClass) -> HallElement {
    HallElement::basis(c.clone())
}
