//! Euler characteristics of quiver Grassmannians of nice representations,
//! counted as F1-subrepresentations, and an independent check by counting
//! points over small prime fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gradings::{nice_length, NiceLength};
use crate::rep::F1Rep;

/// How niceness of the input was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Niceness {
    /// Finite nice length, with its value.
    Certified(usize),
    /// Not verified; the caller asked to proceed anyway.
    Assumed,
}

fn niceness(m: &F1Rep, assume_nice: bool) -> Result<Niceness> {
    match nice_length(m).0 {
        NiceLength::Finite(n) => Ok(Niceness::Certified(n)),
        NiceLength::Infinite if assume_nice => Ok(Niceness::Assumed),
        NiceLength::Infinite => Err(Error::NicenessUnverified),
    }
}

fn check_dim(m: &F1Rep, d: &[usize]) -> Result<()> {
    let dim = m.dim();
    if d.len() != dim.len() || d.iter().zip(&dim).any(|(a, b)| a > b) {
        return Err(Error::DimTooLarge);
    }
    Ok(())
}

/// The number of subrepresentations of dimension `d`.
pub fn euler_characteristic(m: &F1Rep, d: &[usize], assume_nice: bool) -> Result<(u64, Niceness)> {
    check_dim(m, d)?;
    let provenance = niceness(m, assume_nice)?;
    Ok((m.count_closed_subsets(Some(d)), provenance))
}

/// Euler characteristics for every dimension vector below `dim(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiTable {
    pub entries: BTreeMap<Vec<usize>, u64>,
    pub niceness: Niceness,
}

impl ChiTable {
    pub fn get(&self, d: &[usize]) -> u64 {
        self.entries.get(d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

pub fn chi_table(m: &F1Rep, assume_nice: bool) -> Result<ChiTable> {
    let niceness = niceness(m, assume_nice)?;
    let dim = m.dim();
    let mut entries: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut d = vec![0; dim.len()];
    loop {
        entries.insert(d.clone(), 0);
        let mut k = 0;
        while k < d.len() && d[k] == dim[k] {
            d[k] = 0;
            k += 1;
        }
        if k == d.len() {
            break;
        }
        d[k] += 1;
    }
    let colors = m.colors();
    m.for_each_closed_subset(None, |set| {
        let mut dv = vec![0; dim.len()];
        for (x, &inside) in set.iter().enumerate() {
            if inside {
                dv[colors[x]] += 1;
            }
        }
        *entries.get_mut(&dv).expect("every dimension vector is listed") += 1;
    });
    Ok(ChiTable { entries, niceness })
}

/// Gaussian binomial coefficient `[n, k]_q`.
pub fn q_binomial(n: u64, k: u64, q: u64) -> Result<BigInt> {
    if k > n || q < 2 {
        return Err(Error::BadParameters(format!("q_binomial needs 0 <= k <= n and q >= 2, got ({n}, {k}, {q})")));
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= num_traits::pow(q.clone(), (n - i) as usize) - 1;
        den *= num_traits::pow(q.clone(), (i + 1) as usize) - 1;
    }
    Ok(num / den)
}

pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const MAX_VERTEX_DIM: usize = 4;
pub const MAX_TOTAL_DIM: usize = 8;
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Subspaces of `F_q^m` of dimension `d`, as reduced row echelon matrices.
fn rref_subspaces(m: usize, d: usize, q: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(d);
    choose_pivots(m, d, 0, &mut pivots, &mut |piv| {
        // free positions: row i, column j > piv[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| ((piv[i] + 1)..m).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut values = vec![0u64; free.len()];
        loop {
            let mut mat = vec![vec![0u64; m]; d];
            for (i, &p) in piv.iter().enumerate() {
                mat[i][p] = 1;
            }
            for (&(i, j), &v) in free.iter().zip(&values) {
                mat[i][j] = v;
            }
            out.push(mat);
            let mut k = 0;
            while k < values.len() && values[k] == q - 1 {
                values[k] = 0;
                k += 1;
            }
            if k == values.len() {
                break;
            }
            values[k] += 1;
        }
    });
    out
}

fn choose_pivots(m: usize, d: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == d {
        f(cur);
        return;
    }
    for j in from..m {
        if m - j < d - cur.len() {
            break;
        }
        cur.push(j);
        choose_pivots(m, d, j + 1, cur, f);
        cur.pop();
    }
}

/// Whether `v` lies in the row space of the RREF matrix `w`.
fn in_span(w: &[Vec<u64>], v: &[u64], q: u64) -> bool {
    let mut v = v.to_vec();
    for row in w {
        let p = row.iter().position(|&x| x != 0).expect("RREF rows are nonzero");
        let c = v[p];
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = (*x + (q - c) * y) % q;
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Number of tuples of subspaces `W_v ≤ F_q^{m_v}` of dimensions `d_v`
/// with `f_α(W_s) ⊆ W_t` for every arrow, where `f_α` is the 0/1 matrix
/// of the representation.
pub fn count_points_fq(m: &F1Rep, d: &[usize], q: u64) -> Result<u64> {
    count_points_fq_with_budget(m, d, q, DEFAULT_BUDGET)
}

pub fn count_points_fq_with_budget(m: &F1Rep, d: &[usize], q: u64, budget: u64) -> Result<u64> {
    if !SUPPORTED_PRIMES.contains(&q) {
        return Err(Error::BadPrime(q));
    }
    check_dim(m, d)?;
    let dim = m.dim();
    if dim.iter().any(|&x| x > MAX_VERTEX_DIM) || m.total_dim() > MAX_TOTAL_DIM {
        return Err(Error::TooLarge(format!(
            "point counting supports dimension at most {MAX_VERTEX_DIM} per vertex and {MAX_TOTAL_DIM} in total"
        )));
    }
    let nv = dim.len();
    let mut options = Vec::with_capacity(nv);
    let mut work: u64 = 0;
    for v in 0..nv {
        let subs = rref_subspaces(dim[v], d[v], q);
        work = work.saturating_add(subs.len() as u64);
        if work > budget {
            return Err(Error::TooLarge("subspace enumeration exceeds the budget".into()));
        }
        options.push(subs);
    }
    let mats = m.base_change_matrices();
    let base = m.base().clone();
    // arrows checked at the later of their two endpoints
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (a, ar) in base.arrows().iter().enumerate() {
        checks[ar.src.max(ar.tgt)].push(a);
    }
    let mut chosen: Vec<usize> = vec![0; nv];
    let mut count = 0u64;
    let mut visited = 0u64;
    // iterative depth-first search over vertices in index order
    let mut depth = 0usize;
    if nv == 0 {
        return Ok(1);
    }
    loop {
        if chosen[depth] < options[depth].len() {
            visited += 1;
            if visited > budget {
                return Err(Error::TooLarge("point count exceeds the enumeration budget".into()));
            }
            let ok = checks[depth].iter().all(|&a| {
                let ar = base.arrow(a);
                let ws = &options[ar.src][chosen[ar.src]];
                let wt = &options[ar.tgt][chosen[ar.tgt]];
                let f = &mats[a];
                ws.iter().all(|row| {
                    let img: Vec<u64> = f.iter().map(|fr| fr.iter().zip(row).map(|(&x, &y)| x as u64 * y).sum::<u64>() % q).collect();
                    in_span(wt, &img, q)
                })
            });
            if ok {
                if depth + 1 == nv {
                    count += 1;
                    chosen[depth] += 1;
                } else {
                    depth += 1;
                    chosen[depth] = 0;
                }
            } else {
                chosen[depth] += 1;
            }
        } else {
            if depth == 0 {
                break;
            }
            depth -= 1;
            chosen[depth] += 1;
        }
    }
    Ok(count)
}

/// An integer polynomial in `q` fitted to point counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountPolynomial {
    /// Lowest degree first.
    pub coefficients: Vec<BigInt>,
    pub primes: Vec<u64>,
    pub verification_prime: u64,
    pub verification_count: u64,
}

impl CountPolynomial {
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coefficients.iter().sum()
    }
}

/// Fits the point counts at `D + 1` primes, `D = Σ d_v (m_v − d_v)`, checks
/// the fit at one more prime and evaluates at `q = 1`.
pub fn interpolated_chi(m: &F1Rep, d: &[usize]) -> Result<CountPolynomial> {
    interpolated_chi_with_budget(m, d, DEFAULT_BUDGET)
}

pub fn interpolated_chi_with_budget(m: &F1Rep, d: &[usize], budget: u64) -> Result<CountPolynomial> {
    check_dim(m, d)?;
    let deg: usize = m.dim().iter().zip(d).map(|(&mv, &dv)| dv * (mv - dv)).sum();
    if deg + 2 > SUPPORTED_PRIMES.len() {
        return Err(Error::TooLarge(format!("degree bound {deg} needs more sample primes than supported")));
    }
    let primes: Vec<u64> = SUPPORTED_PRIMES[..deg + 1].to_vec();
    let verification_prime = SUPPORTED_PRIMES[deg + 1];
    let mut counts = Vec::with_capacity(deg + 1);
    for &p in &primes {
        counts.push(count_points_fq_with_budget(m, d, p, budget)?);
    }
    let coefficients = interpolate(&primes, &counts)?;
    let verification_count = count_points_fq_with_budget(m, d, verification_prime, budget)?;
    let poly = CountPolynomial {
        coefficients,
        primes,
        verification_prime,
        verification_count,
    };
    if poly.eval(&BigInt::from(verification_prime)) != BigInt::from(verification_count) {
        return Err(Error::NonPolynomialCount);
    }
    Ok(poly)
}

/// Newton interpolation over the rationals, converted to monomial
/// coefficients; non-integral coefficients are rejected.
fn interpolate(xs: &[u64], ys: &[u64]) -> Result<Vec<BigInt>> {
    let n = xs.len();
    let x: Vec<BigRational> = xs.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut dd: Vec<BigRational> = ys.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&x[i] - &x[i - j]);
        }
    }
    // Horner on the Newton form
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (q - x_k) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += c;
            }
            next[i] -= c * &x[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    for c in poly {
        if !c.is_integer() {
            return Err(Error::NonPolynomialCount);
        }
        out.push(c.to_integer());
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}
