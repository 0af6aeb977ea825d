//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms, torsion-free cokernels, and Fourier–Motzkin feasibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        s += &row[k] * &b[k][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Result of `smith_normal_form`: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form of an `m × n` integer matrix given as rows.
pub fn smith_normal_form(a: &IntMatrix, n_cols: usize) -> Smith {
    let m = a.len();
    let n = n_cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Smith { u, d, v };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= d[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= d[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &BigInt::from(-1));
                    row_axpy(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -x.clone();
            }
        }
    }
    Smith { u, d, v }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[i] -= q * row[j]
fn row_axpy(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(src) {
        *x -= q * y;
    }
}

/// col[i] -= q * col[j]
fn col_axpy(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[j].clone();
        row[i] -= q * y;
    }
}

/// Row-style Hermite normal form of a matrix (rows are generators).
/// Zero rows are dropped; pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &IntMatrix, n_cols: usize) -> IntMatrix {
    let mut h = rows.clone();
    let mut r = 0;
    for c in 0..n_cols {
        loop {
            let nonzero: Vec<usize> = (r..h.len()).filter(|&i| !h[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by(|&&a, &&b| h[a][c].abs().cmp(&h[b][c].abs()))
                .expect("nonempty");
            h.swap(r, best);
            let mut done = true;
            for i in r + 1..h.len() {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_axpy(&mut h, i, r, &q);
                    done &= h[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < h.len() && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    row_axpy(&mut h, i, r, &q);
                }
            }
            r += 1;
        }
    }
    h.truncate(r);
    h
}

/// Surjection `P: Z^n → Z^r` whose kernel is the saturation of the column
/// span of `a` (`n` rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProjection {
    pub matrix: IntMatrix,
    pub rank: usize,
    pub ambient: usize,
}

impl FreeProjection {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        mul_vec(&self.matrix, v)
    }

    /// Image of the `j`-th basis vector.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.matrix.iter().map(|row| row[j].clone()).collect()
    }
}

/// Torsion-free cokernel of the columns of `a`, normalized to Hermite form so
/// the result does not depend on the elimination path.
pub fn free_cokernel_projection(a: &IntMatrix, n: usize) -> FreeProjection {
    let k = a.first().map_or(0, Vec::len);
    if k == 0 || a.is_empty() {
        return FreeProjection {
            matrix: identity(n),
            rank: n,
            ambient: n,
        };
    }
    let s = smith_normal_form(a, k);
    let rank_a = s.rank();
    let rows: IntMatrix = s.u[rank_a..].to_vec();
    let matrix = hermite_rows(&rows, n);
    FreeProjection {
        rank: matrix.len(),
        matrix,
        ambient: n,
    }
}

/// A rational point with `eq · x = 0` for every row of `eq` and
/// `x_j >= 1` for every `j`, or `None`. Equalities are eliminated by exact
/// Gaussian elimination, the remaining inequalities by Fourier–Motzkin.
pub fn positive_kernel_point(eq: &[Vec<BigInt>], n: usize) -> Option<Vec<BigRational>> {
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    // reduced row echelon form of the equalities
    let mut rows: Vec<Vec<BigRational>> = eq.iter().map(|r| r.iter().map(q).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let src = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // x_pivot = -Σ_free row[f] x_f ; express every x_j as a linear form in
    // the free variables, then require form_j >= 1.
    let forms: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            if let Some(k) = pivots.iter().position(|&p| p == j) {
                free.iter().map(|&f| -rows[k][f].clone()).collect()
            } else {
                free.iter()
                    .map(|&f| {
                        if f == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            }
        })
        .collect();
    let one = BigRational::one();
    let system: Vec<Ineq> = forms
        .into_iter()
        .map(|coef| Ineq {
            coef,
            rhs: one.clone(),
        })
        .collect();
    let y = fourier_motzkin(system, free.len())?;
    let mut x = vec![BigRational::zero(); n];
    for (k, &f) in free.iter().enumerate() {
        x[f] = y[k].clone();
    }
    for (k, &p) in pivots.iter().enumerate() {
        let mut s = BigRational::zero();
        for (i, &f) in free.iter().enumerate() {
            s -= &rows[k][f] * &y[i];
        }
        x[p] = s;
    }
    Some(x)
}

/// `coef · y >= rhs`
#[derive(Clone, Debug)]
struct Ineq {
    coef: Vec<BigRational>,
    rhs: BigRational,
}

/// Feasible point of a system of `>=` inequalities in `m` variables.
fn fourier_motzkin(system: Vec<Ineq>, m: usize) -> Option<Vec<BigRational>> {
    let mut stages: Vec<Vec<Ineq>> = vec![system];
    for k in (0..m).rev() {
        let cur = stages.last().expect("stage");
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in cur {
            if ineq.coef[k].is_positive() {
                lower.push(ineq.clone());
            } else if ineq.coef[k].is_negative() {
                upper.push(ineq.clone());
            } else {
                rest.push(ineq.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                // lo: a y_k + ... >= b (a > 0), up: -c y_k + ... >= d (c > 0)
                let a = lo.coef[k].clone();
                let c = -up.coef[k].clone();
                let coef: Vec<BigRational> = lo
                    .coef
                    .iter()
                    .zip(&up.coef)
                    .map(|(x, y)| &c * x + &a * y)
                    .collect();
                rest.push(Ineq {
                    coef,
                    rhs: &c * &lo.rhs + &a * &up.rhs,
                });
            }
        }
        rest.retain(|i| {
            !(i.coef.iter().all(Zero::is_zero) && !i.rhs.is_positive())
        });
        dedup(&mut rest);
        stages.push(rest);
    }
    let last = stages.last().expect("stage");
    if last.iter().any(|i| i.rhs.is_positive()) {
        return None;
    }
    // back substitution, choosing the smallest feasible value of each variable
    let mut y = vec![BigRational::zero(); m];
    for k in 0..m {
        let stage = &stages[m - 1 - k];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for ineq in stage {
            let a = &ineq.coef[k];
            if a.is_zero() {
                continue;
            }
            let mut r = ineq.rhs.clone();
            for j in 0..k {
                r -= &ineq.coef[j] * &y[j];
            }
            let bound = r / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        y[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }
    Some(y)
}

/// Normalizes each inequality by its leading coefficient and drops repeats.
fn dedup(rows: &mut Vec<Ineq>) {
    for r in rows.iter_mut() {
        if let Some(lead) = r.coef.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in r.coef.iter_mut() {
                *x /= &lead;
            }
            r.rhs /= &lead;
        }
    }
    rows.sort_by(|a, b| (&a.coef, &a.rhs).cmp(&(&b.coef, &b.rhs)));
    rows.dedup_by(|a, b| a.coef == b.coef && a.rhs == b.rhs);
}

/// Least common multiple of denominators times the vector, divided by the
/// gcd of the result: the primitive integer vector on the same ray.
pub fn primitive_integer_vector(x: &[BigRational]) -> Vec<BigInt> {
    let l = x
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[Vec<i64>], n_cols: usize) -> Smith {
        let a = from_i64(a);
        let s = smith_normal_form(&a, n_cols);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d);
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(s.d, from_i64(&[vec![1, 0], vec![0, 1]]));
        let s = check(&[vec![0, 0], vec![0, 0]], 2);
        assert_eq!(s.rank(), 0);
        let s = check(&[vec![2, 4], vec![2, 4]], 2);
        assert_eq!(s.d, from_i64(&[vec![2, 0], vec![0, 0]]));
        let s = check(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn cokernels() {
        let band = free_cokernel_projection(&from_i64(&[vec![2], vec![-2]]), 2);
        assert_eq!(band.rank, 1);
        assert_eq!(band.matrix, from_i64(&[vec![1, 1]]));
        let tree = free_cokernel_projection(&Vec::new(), 2);
        assert_eq!(tree.matrix, identity(2));
        let full = free_cokernel_projection(&identity(2), 2);
        assert_eq!(full.rank, 0);
    }

    #[test]
    fn fourier_motzkin_cases() {
        // x1 - 2 x2 = 0
        let eq = from_i64(&[vec![1, -2]]);
        let x = positive_kernel_point(&eq, 2).unwrap();
        assert_eq!(primitive_integer_vector(&x), vec![BigInt::from(2), BigInt::from(1)]);
        // x1 + x2 = 0 has no positive point
        assert!(positive_kernel_point(&from_i64(&[vec![1, 1]]), 2).is_none());
        // two independent ratios: x1 = x2 and x1 = 2 x2 force zero
        assert!(positive_kernel_point(&from_i64(&[vec![1, -1], vec![1, -2]]), 2).is_none());
        // no equations: all ones
        let x = positive_kernel_point(&[], 3).unwrap();
        assert!(x.iter().all(|v| *v >= BigRational::one()));
    }
}
