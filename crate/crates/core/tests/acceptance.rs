//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit status if
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use f1q::builders::{band_rep, string_rep, two_strand};
use f1q::gradings::{
    find_positive_grading, is_nice_grading, nice_length, realize_nice_sequence, sufficient_conditions_report,
    universal_iteration, verify_chain, NiceCertificate, NiceLength, Verdict,
};
use f1q::grassmannian::{chi_table, count_points_fq, euler_characteristic, interpolated_chi, q_binomial};
use f1q::hall::{
    is_infinite_nice, nice_quotient, verify_affine_commutator, verify_tree_orientation_iso, HallAlgebra,
    HallElement, IsoClass, Mode, DEFAULT_BUDGET,
};
use f1q::{named, F1Rep, Quiver};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use common::*;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn c1_l3_example() -> Check {
    let m = l3_example();
    let t = chi_table(&m, false).map_err(|e| e.to_string())?;
    let (c1, c2) = (t.get(&[1]), t.get(&[2]));
    ensure(c1 == 2 && c2 == 4, || format!("chi_1 = {c1}, chi_2 = {c2}; expected 2 and 4"))
}

fn c2_two_strand() -> Check {
    let m = two_strand(&[vec![1, 1], vec![1, 1]]).unwrap();
    for d in [1usize, 2] {
        let (chi, _) = euler_characteristic(&m, &[d], false).map_err(|e| e.to_string())?;
        ensure(chi == 1, || format!("chi_{d} = {chi}"))?;
        let p = interpolated_chi(&m, &[d]).map_err(|e| e.to_string())?;
        ensure(p.coefficients == vec![BigInt::one()], || format!("polynomial {:?}", p.coefficients))?;
        ensure(p.primes == vec![2, 3, 5], || format!("primes {:?}", p.primes))?;
    }
    Ok(())
}

fn c3_grassmannian_baseline() -> Check {
    let q = Arc::new(named::path(1));
    let m = rep(&q, &[("1", &["e1", "e2", "e3", "e4"])], &[]);
    let binom = [1, 4, 6, 4, 1];
    for k in 0..=4usize {
        for prime in [2u64, 3, 5] {
            let count = count_points_fq(&m, &[k], prime).map_err(|e| e.to_string())?;
            let expected = q_binomial(4, k as u64, prime).map_err(|e| e.to_string())?;
            ensure(BigInt::from(count) == expected, || format!("k={k} q={prime}: {count} vs {expected}"))?;
        }
        let p = interpolated_chi(&m, &[k]).map_err(|e| e.to_string())?;
        ensure(p.value_at_one() == BigInt::from(binom[k]), || format!("k={k}: value at 1 {}", p.value_at_one()))?;
    }
    Ok(())
}

fn c4_l2_string() -> Check {
    let m = l2_string();
    let states = universal_iteration(&m, 0).map_err(|e| e.to_string())?;
    let x0 = &states[0].variables;
    ensure(*x0 == ints(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1], &[0, 0]]), || format!("X0 = {x0:?}"))?;
    ensure(states[0].projection.rank == 2, || format!("rank {}", states[0].projection.rank))?;
    ensure(nice_length(&m).0 == NiceLength::Finite(1), || "nice length is not 1".into())?;
    let seq = realize_nice_sequence(&m).map_err(|e| e.to_string())?;
    for i in 0..seq.len() {
        ensure(is_nice_grading(&m, &seq[i], &seq[..i]).0, || format!("grading {i} is not nice"))?;
    }
    ensure(verify_chain(&m, &seq), || "realized sequence is not jointly injective".into())
}

fn c5_l2_band() -> Check {
    let m = l2_band();
    let states = universal_iteration(&m, 0).map_err(|e| e.to_string())?;
    ensure(states[0].projection.rank == 1, || format!("rank {}", states[0].projection.rank))?;
    ensure(states[0].variables == ints(&[&[0], &[1], &[0], &[1]]), || format!("X0 = {:?}", states[0].variables))?;
    ensure(states.len() >= 2 && states[1].partition == states[0].partition, || {
        "partition does not stabilize at level 1".into()
    })?;
    match nice_length(&m) {
        (NiceLength::Infinite, NiceCertificate::Infinite { pairs, .. }) => {
            let named: Vec<(&str, &str)> = pairs
                .iter()
                .map(|&(u, v)| (m.elements()[u].as_str(), m.elements()[v].as_str()))
                .collect();
            ensure(named == [("v1", "v3"), ("v2", "v4")], || format!("pairs {named:?}"))
        }
        other => Err(format!("unexpected {other:?}")),
    }
}

fn c6_bands() -> Check {
    let q = Arc::new(named::by_name("cycle:++-").unwrap());
    for d in 1..=3 {
        let b = band_rep(&q, d).unwrap();
        let finite = nice_length(&b).0.is_finite();
        ensure(finite == (d == 1), || format!("band of winding {d}: finite = {finite}"))?;
    }
    Ok(())
}

fn c7_oracle_corpus() -> Check {
    let corpus = f1q::corpus::generate(2024, 24).map_err(|e| e.to_string())?;
    ensure(corpus.len() >= 20, || "corpus too small".into())?;
    let mut checked = 0;
    for entry in &corpus {
        let m = &entry.rep;
        ensure(m.is_nilpotent() && m.total_dim() <= 6 && m.dim().iter().all(|&d| d <= 3), || {
            "corpus entry out of range".into()
        })?;
        let top = m.dim();
        let mut d = vec![0; top.len()];
        loop {
            let (chi, _) = euler_characteristic(m, &d, false).map_err(|e| e.to_string())?;
            let p = interpolated_chi(m, &d).map_err(|e| format!("{} {d:?}: {e}", entry.base))?;
            ensure(p.value_at_one() == BigInt::from(chi), || {
                format!("{} {:?} d={d:?}: oracle {} vs {chi}", entry.base, m.dim(), p.value_at_one())
            })?;
            ensure(p.eval(&BigInt::from(p.verification_prime)) == BigInt::from(p.verification_count), || {
                "verification prime mismatch".into()
            })?;
            checked += 1;
            let mut k = 0;
            while k < d.len() {
                d[k] += 1;
                if d[k] <= top[k] {
                    break;
                }
                d[k] = 0;
                k += 1;
            }
            if k == d.len() {
                break;
            }
        }
    }
    ensure(checked > 0, || "nothing checked".into())
}

/// Triple tensors as maps from key triples.
type Triple = BTreeMap<(String, String, String), BigRational>;

fn hopf_axioms(alg: &HallAlgebra, bound: usize) -> Check {
    let classes = classes_up_to(alg, bound);
    let e = |c: &IsoClass| basis(c);
    let err = |x: f1q::Error| x.to_string();
    for x in &classes {
        let dx = alg.coproduct(&e(x)).map_err(err)?;
        // cocommutativity
        for ((a, b), c) in dx.terms() {
            ensure(dx.coeff(&b.key, &a.key) == *c, || format!("not cocommutative at [{}]", x.key))?;
        }
        // coassociativity
        let mut left = Triple::new();
        let mut right = Triple::new();
        for ((a, b), c) in dx.terms() {
            for ((p, q), d) in alg.coproduct(&e(a)).map_err(err)?.terms() {
                *left.entry((p.key.clone(), q.key.clone(), b.key.clone())).or_insert_with(BigRational::zero) += c * d;
            }
            for ((p, q), d) in alg.coproduct(&e(b)).map_err(err)?.terms() {
                *right.entry((a.key.clone(), p.key.clone(), q.key.clone())).or_insert_with(BigRational::zero) += c * d;
            }
        }
        ensure(left == right, || format!("not coassociative at [{}]", x.key))?;
        // antipode on both sides
        let unit = if x.is_zero() { alg.unit() } else { HallElement::zero() };
        let mut s_left = HallElement::zero();
        let mut s_right = HallElement::zero();
        for ((a, b), c) in dx.terms() {
            let sa = alg.antipode(&e(a)).map_err(err)?;
            let sb = alg.antipode(&e(b)).map_err(err)?;
            s_left = s_left.plus(&alg.product(&sa, &e(b)).map_err(err)?.scaled(c));
            s_right = s_right.plus(&alg.product(&e(a), &sb).map_err(err)?.scaled(c));
        }
        ensure(s_left == unit && s_right == unit, || format!("antipode axiom fails at [{}]", x.key))?;
    }
    for x in &classes {
        for y in &classes {
            let xy = alg.product(&e(x), &e(y)).map_err(err)?;
            let lhs = alg.coproduct(&xy).map_err(err)?;
            let rhs = alg
                .tensor_product(&alg.coproduct(&e(x)).map_err(err)?, &alg.coproduct(&e(y)).map_err(err)?)
                .map_err(err)?;
            ensure(lhs == rhs, || format!("coproduct not multiplicative at [{}]·[{}]", x.key, y.key))?;
            for z in &classes {
                let a = alg.product(&xy, &e(z)).map_err(err)?;
                let yz = alg.product(&e(y), &e(z)).map_err(err)?;
                let b = alg.product(&e(x), &yz).map_err(err)?;
                ensure(a == b, || format!("not associative at [{}],[{}],[{}]", x.key, y.key, z.key))?;
            }
        }
    }
    Ok(())
}

fn c8_hopf() -> Check {
    let a2 = HallAlgebra::new(Arc::new(named::path(2)), Mode::All, DEFAULT_BUDGET);
    hopf_axioms(&a2, 3)?;
    let l1 = HallAlgebra::new(Arc::new(named::loops(1)), Mode::Nilpotent, DEFAULT_BUDGET);
    hopf_axioms(&l1, 3)
}

fn star() -> Arc<Quiver> {
    Arc::new(Quiver::new(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "3", "2"), ("c", "2", "4")]).unwrap())
}

fn c9_tree_iso() -> Check {
    for q in [Arc::new(named::path(3)), star()] {
        for alpha in 0..q.n_arrows() {
            let r = verify_tree_orientation_iso(&q, alpha, q.n_vertices(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(r.checked > 0 && r.holds(), || format!("arrow {alpha}: {:?}", r.counterexamples))?;
        }
    }
    Ok(())
}

fn c10_affine() -> Check {
    let q = Arc::new(named::by_name("cycle:++-").unwrap());
    let r = verify_affine_commutator(&q, 9, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.checked > 0 && r.holds(), || format!("{:?}", r.counterexamples))?;
    let alg = HallAlgebra::new(q.clone(), Mode::All, DEFAULT_BUDGET);
    let mut others: Vec<F1Rep> = Vec::new();
    for len in 1..=2 {
        for start in 1..=3 {
            others.push(string_rep(&q, len, start).unwrap());
        }
    }
    others.push(band_rep(&q, 1).unwrap());
    for d in 1..=3 {
        let band = HallElement::of(&band_rep(&q, d).unwrap());
        for x in &others {
            let br = alg.bracket(&band, &HallElement::of(x)).map_err(|e| e.to_string())?;
            ensure(br.is_zero(), || format!("band {d} with [{}]: {br}", x.key()))?;
        }
    }
    Ok(())
}

fn c11_hopf_ideal() -> Check {
    let q = Arc::new(named::by_name("cycle:++-").unwrap());
    let alg = HallAlgebra::new(q.clone(), Mode::All, DEFAULT_BUDGET);
    let s = |d, i| string_rep(&q, d, i).unwrap();
    let b = |d| band_rep(&q, d).unwrap();
    let pairs: Vec<(F1Rep, F1Rep)> = vec![
        (s(4, 1), s(2, 2)),
        (s(2, 2), s(4, 1)),
        (s(1, 1), s(1, 2)),
        (s(1, 3), s(1, 1)),
        (s(2, 1), s(1, 3)),
        (s(3, 2), s(2, 2)),
        (b(1), s(1, 1)),
        (b(2), s(1, 2)),
        (s(1, 1), b(2).direct_sum(&s(1, 2)).unwrap()),
        (s(2, 3), s(2, 3)),
    ];
    let bands: Vec<String> = (2..=4).map(|d| b(d).key()).collect();
    let mut saw_band = false;
    for (m, n) in &pairs {
        let full = alg.product(&HallElement::of(m), &HallElement::of(n)).map_err(|e| e.to_string())?;
        // over acyclic Ã_3 the summands of infinite nice length are the bands of winding > 1
        let expected = full.filtered(|c| !c.rep.decompose().iter().any(|p| bands.contains(&p.key())));
        saw_band |= full.terms().any(|(c, _)| bands.contains(&c.key));
        ensure(nice_quotient(&full) == expected, || format!("[{}]·[{}]", m.key(), n.key()))?;
        for (c, _) in full.terms() {
            let bad = c.rep.decompose().iter().any(|p| bands.contains(&p.key()));
            ensure(is_infinite_nice(c) == bad, || format!("class [{}]", c.key))?;
        }
        // ideal: multiplying a dropped class never produces a kept one
        let projected = alg
            .product(&nice_quotient(&HallElement::of(m)), &nice_quotient(&HallElement::of(n)))
            .map_err(|e| e.to_string())?;
        ensure(nice_quotient(&projected) == nice_quotient(&full), || {
            format!("projection is not multiplicative at [{}]·[{}]", m.key(), n.key())
        })?;
    }
    ensure(saw_band, || "no product produced a band of winding 2".into())
}

fn c12_gluing() -> Check {
    let q = Arc::new(named::loops(4));
    let m = rep(
        &q,
        &[("v", &["v1", "v2", "v3", "v4"])],
        &[("a1", &[("v1", "v2"), ("v2", "v4")]), ("a2", &[("v1", "v3"), ("v3", "v4")])],
    );
    let n = rep(
        &q,
        &[("v", &["w1", "w2", "w3", "w4", "w5"])],
        &[("a3", &[("w1", "w2"), ("w4", "w3")]), ("a4", &[("w2", "w3"), ("w5", "w4")])],
    );
    let a = m.amalgam(&n, "v1", "w1").map_err(|e| e.to_string())?;
    ensure(a.total_dim() == 8, || format!("amalgam has {} elements", a.total_dim()))?;
    ensure(nice_length(&a).0.is_finite(), || "amalgam has infinite nice length".into())?;
    let rank = |r: &F1Rep, base: &str| {
        let i = r.element_index(base).unwrap();
        universal_iteration(r, i).map(|s| s[0].variable_rank())
    };
    let (ra, rm, rn) = (
        rank(&a, "v1").map_err(|e| e.to_string())?,
        rank(&m, "v1").map_err(|e| e.to_string())?,
        rank(&n, "w1").map_err(|e| e.to_string())?,
    );
    ensure(ra == rm + rn, || format!("rank {ra} != {rm} + {rn}"))
}

fn c13_positive_gradings() -> Check {
    for x in [vec![vec![1], vec![2]], vec![vec![1, 1], vec![1, 1]], vec![vec![1, 2], vec![2, 4]], vec![vec![3], vec![2]]] {
        let m = two_strand(&x).unwrap();
        let g = find_positive_grading(&m).ok_or_else(|| format!("no positive grading for {x:?}"))?;
        let (ok, table) = is_nice_grading(&m, &g, &[]);
        ensure(ok && table.positive, || format!("grading for {x:?} is not positive nice"))?;
        let report = sufficient_conditions_report(&m);
        ensure(report.get('a').verdict == Some(Verdict::Nilpotent) && m.is_nilpotent(), || {
            format!("nilpotency not confirmed for {x:?}")
        })?;
    }
    let m = two_strand(&[vec![1, 2], vec![1, 1]]).unwrap();
    ensure(find_positive_grading(&m).is_none(), || "rank-2 input has a positive grading".into())
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Check)> = vec![
        ("L3 example Euler characteristics", Duration::from_secs(1), c1_l3_example),
        ("2-strand Euler characteristics and oracle", Duration::from_secs(5), c2_two_strand),
        ("Grassmannian baseline", Duration::from_secs(10), c3_grassmannian_baseline),
        ("L2 string iteration", Duration::from_secs(1), c4_l2_string),
        ("L2 band iteration", Duration::from_secs(1), c5_l2_band),
        ("bands over acyclic A~3", Duration::from_secs(5), c6_bands),
        ("oracle corpus", Duration::from_secs(120), c7_oracle_corpus),
        ("Hopf axioms", Duration::from_secs(30), c8_hopf),
        ("tree orientation isomorphism", Duration::from_secs(30), c9_tree_iso),
        ("affine commutator", Duration::from_secs(60), c10_affine),
        ("nice quotient is a Hopf ideal projection", Duration::from_secs(30), c11_hopf_ideal),
        ("gluing", Duration::from_secs(1), c12_gluing),
        ("positive gradings", Duration::from_secs(1), c13_positive_gradings),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match result {
            Ok(()) => println!("criterion {:2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
