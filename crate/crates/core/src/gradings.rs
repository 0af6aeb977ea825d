//! Nice gradings, the universal nice-grading iteration and nice length.
//!
//! A grading assigns an integer to each element of a representation (a
//! vertex of Γ). It is nice relative to earlier gradings when its increment
//! along an arrow only depends on the arrow's color and on the earlier
//! gradings' values at the arrow's endpoints.
//!
//! The iteration works with the torsion-free quotient of `Z^{arrows}` by the
//! cycle images of Γ. Level 0 is built over the base quiver; level `i+1`
//! over the quiver whose vertices are the level-`i` classes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, FreeProjection, IntMatrix};
use crate::quiver::{classify_shape, fundamental_cycles, is_primitive_cycle, Quiver, ShapeClass, SpanningForest};
use crate::rep::{winding_from_rep, F1Rep};

/// Integer values on the elements of a representation, in element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading(pub Vec<BigInt>);

impl Grading {
    pub fn from_i64(values: &[i64]) -> Grading {
        Grading(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(n: usize) -> Grading {
        Grading(vec![BigInt::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<&BigInt> = self.0.iter().collect();
        set.len() == self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEntry {
    pub color: usize,
    pub source_signature: Vec<BigInt>,
    pub target_signature: Vec<BigInt>,
    pub delta: BigInt,
}

/// The increments of a grading, one per color and prior signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaTable {
    pub entries: Vec<DeltaEntry>,
    pub nontrivial: bool,
    pub non_degenerate: bool,
    pub positive: bool,
    pub negative: bool,
}

impl DeltaTable {
    /// The increment of a color, if it does not depend on signatures.
    pub fn delta_of(&self, color: usize) -> Option<&BigInt> {
        let mut it = self.entries.iter().filter(|e| e.color == color).map(|e| &e.delta);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// Checks that `g` is nice relative to `priors` and tabulates the increments.
/// On failure the table holds the first increment seen for each key.
pub fn is_nice_grading(m: &F1Rep, g: &Grading, priors: &[Grading]) -> (bool, DeltaTable) {
    let signature = |v: usize| -> Vec<BigInt> { priors.iter().map(|p| p.0[v].clone()).collect() };
    let mut seen: BTreeMap<(usize, Vec<BigInt>, Vec<BigInt>), BigInt> = BTreeMap::new();
    let mut nice = true;
    for (s, t, c) in m.gamma_arrows() {
        let delta = &g.0[t] - &g.0[s];
        match seen.entry((c, signature(s), signature(t))) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                if *e.get() != delta {
                    nice = false;
                }
            }
        }
    }
    let entries: Vec<DeltaEntry> = seen
        .into_iter()
        .map(|((color, source_signature, target_signature), delta)| DeltaEntry {
            color,
            source_signature,
            target_signature,
            delta,
        })
        .collect();
    let table = DeltaTable {
        nontrivial: entries.iter().any(|e| !e.delta.is_zero()),
        non_degenerate: entries.iter().all(|e| !e.delta.is_zero()),
        positive: entries.iter().all(|e| e.delta.is_positive()),
        negative: entries.iter().all(|e| e.delta.is_negative()),
        entries,
    };
    (nice, table)
}

/// Γ of a representation, with the data the iteration needs.
struct Gamma {
    n: usize,
    arrows: Vec<(usize, usize, usize)>,
    edges: Vec<(usize, usize)>,
    cycles: Vec<Vec<i64>>,
    component: Vec<usize>,
    roots: Vec<usize>,
}

impl Gamma {
    fn new(m: &F1Rep, roots: Option<Vec<usize>>) -> Gamma {
        let arrows = m.gamma_arrows();
        let edges: Vec<(usize, usize)> = arrows.iter().map(|&(s, t, _)| (s, t)).collect();
        let comps = m.components();
        let mut component = vec![0; m.total_dim()];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                component[v] = k;
            }
        }
        let roots = roots.unwrap_or_else(|| comps.iter().map(|c| c[0]).collect());
        Gamma {
            n: m.total_dim(),
            cycles: fundamental_cycles(m.total_dim(), &edges).into_iter().map(|c| c.0).collect(),
            arrows,
            edges,
            component,
            roots,
        }
    }

    /// Projection and variables for a level whose quiver has `n_arrows`
    /// arrows and receives Γ's arrows through `sigma_a`.
    fn variables(&self, n_arrows: usize, sigma_a: &[usize]) -> (FreeProjection, Vec<Vec<BigInt>>) {
        let mut a: IntMatrix = vec![vec![BigInt::zero(); self.cycles.len()]; n_arrows];
        for (k, cyc) in self.cycles.iter().enumerate() {
            for (e, &c) in cyc.iter().enumerate() {
                if c != 0 {
                    a[sigma_a[e]][k] += c;
                }
            }
        }
        let p = lattice::free_cokernel_projection(&a, n_arrows);
        let columns: Vec<Vec<BigInt>> = (0..n_arrows).map(|j| p.column(j)).collect();
        let forest = SpanningForest::new(self.n, &self.edges, Some(&self.roots));
        let mut x = vec![vec![BigInt::zero(); p.rank]; self.n];
        for &v in &forest.order {
            let Some(e) = forest.parent_arrow[v] else { continue };
            let (s, t) = self.edges[e];
            let step = &columns[sigma_a[e]];
            x[v] = if t == v {
                x[s].iter().zip(step).map(|(a, b)| a + b).collect()
            } else {
                x[t].iter().zip(step).map(|(a, b)| a - b).collect()
            };
        }
        (p, x)
    }
}

/// One level of the universal iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationState {
    pub level: usize,
    /// Γ^(i); the base quiver at level 0.
    pub quiver: Quiver,
    /// σ^(i) on elements and on Γ's arrows (in `gamma_arrows` order).
    pub sigma_v: Vec<usize>,
    pub sigma_a: Vec<usize>,
    pub projection: FreeProjection,
    /// X^(i), one vector per element.
    pub variables: Vec<Vec<BigInt>>,
    /// Class id per element; classes are numbered by first occurrence.
    pub partition: Vec<usize>,
    pub basepoints: Vec<usize>,
    /// Component of Γ containing each element.
    pub component: Vec<usize>,
}

impl IterationState {
    pub fn n_classes(&self) -> usize {
        self.partition.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_discrete(&self) -> bool {
        self.n_classes() == self.partition.len()
    }

    /// Rank of the lattice spanned by the variables X^(i).
    pub fn variable_rank(&self) -> usize {
        let width = self.projection.rank;
        lattice::smith_normal_form(&self.variables, width).rank()
    }
}

fn iterate(m: &F1Rep, g: &Gamma) -> Vec<IterationState> {
    let mut states: Vec<IterationState> = Vec::new();
    let mut quiver = (**m.base()).clone();
    let mut sigma_v = m.colors().to_vec();
    let mut sigma_a: Vec<usize> = g.arrows.iter().map(|a| a.2).collect();
    for level in 0.. {
        let (projection, variables) = g.variables(quiver.n_arrows(), &sigma_a);
        let mut classes: BTreeMap<(usize, usize, &Vec<BigInt>), usize> = BTreeMap::new();
        let partition: Vec<usize> = (0..g.n)
            .map(|v| {
                let next = classes.len();
                *classes
                    .entry((g.component[v], m.colors()[v], &variables[v]))
                    .or_insert(next)
            })
            .collect();
        let n_classes = classes.len();
        let stop = n_classes == g.n
            || states.last().is_some_and(|prev| prev.partition == partition);
        let state = IterationState {
            level,
            quiver: quiver.clone(),
            sigma_v: sigma_v.clone(),
            sigma_a: sigma_a.clone(),
            projection,
            variables,
            partition,
            basepoints: g.roots.clone(),
            component: g.component.clone(),
        };
        if stop {
            states.push(state);
            break;
        }
        // next quiver: classes as vertices, (class s, class t, color) as arrows
        let part = &state.partition;
        let mut arrow_ids: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for &(s, t, c) in &g.arrows {
            let next = arrow_ids.len();
            arrow_ids.entry((part[s], part[t], c)).or_insert(next);
        }
        let width = (n_classes.max(arrow_ids.len())).to_string().len();
        let mut arrows: Vec<(String, String, String)> = arrow_ids
            .iter()
            .map(|(&(s, t, _), &k)| {
                (format!("b{k:0width$}"), format!("w{s:0width$}"), format!("w{t:0width$}"))
            })
            .collect();
        arrows.sort();
        quiver = Quiver::new((0..n_classes).map(|k| format!("w{k:0width$}")), arrows)
            .expect("level quiver is valid");
        sigma_v = part.clone();
        sigma_a = g.arrows.iter().map(|&(s, t, c)| arrow_ids[&(part[s], part[t], c)]).collect();
        states.push(state);
    }
    states
}

/// The universal iteration of a representation with connected Γ.
pub fn universal_iteration(m: &F1Rep, basepoint: usize) -> Result<Vec<IterationState>> {
    if m.is_zero() || !m.is_indecomposable() {
        return Err(Error::Disconnected);
    }
    if basepoint >= m.total_dim() {
        return Err(Error::BadParameters(format!("no element with index {basepoint}")));
    }
    Ok(iterate(m, &Gamma::new(m, Some(vec![basepoint]))))
}

/// All components at once, each with its smallest element as basepoint.
/// Level 0 uses the lattice of all of Γ, so components influence each
/// other's level-0 variables.
pub fn iteration(m: &F1Rep) -> Vec<IterationState> {
    iterate(m, &Gamma::new(m, None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NiceLength {
    Finite(usize),
    Infinite,
}

impl NiceLength {
    pub fn is_finite(&self) -> bool {
        matches!(self, NiceLength::Finite(_))
    }
}

impl std::fmt::Display for NiceLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NiceLength::Finite(n) => write!(f, "{n}"),
            NiceLength::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceCertificate {
    Finite { length: usize, gradings: Vec<Grading> },
    Infinite { stabilization_level: usize, pairs: Vec<(usize, usize)> },
    SufficientCondition { proposition: String },
}

impl NiceCertificate {
    /// Re-checks a finite certificate: every grading nice relative to its
    /// predecessors and the whole chain injective.
    pub fn verify(&self, m: &F1Rep) -> bool {
        match self {
            NiceCertificate::Finite { gradings, .. } => verify_chain(m, gradings),
            _ => false,
        }
    }
}

pub fn verify_chain(m: &F1Rep, gradings: &[Grading]) -> bool {
    for i in 0..gradings.len() {
        if gradings[i].len() != m.total_dim() || !is_nice_grading(m, &gradings[i], &gradings[..i]).0 {
            return false;
        }
    }
    let joint: BTreeSet<Vec<&BigInt>> = (0..m.total_dim())
        .map(|v| gradings.iter().map(|g| &g.0[v]).collect())
        .collect();
    joint.len() == m.total_dim()
}

/// `min { i : X^(i) injective }`, or infinite with the pairs of elements
/// no level separates.
pub fn nice_length(m: &F1Rep) -> (NiceLength, NiceCertificate) {
    if m.total_dim() <= 1 {
        let g = Grading::zero(m.total_dim());
        return (
            NiceLength::Finite(0),
            NiceCertificate::Finite { length: 0, gradings: vec![g] },
        );
    }
    let states = iteration(m);
    let last = states.last().expect("at least one level");
    if last.is_discrete() {
        let n = last.level;
        let gradings = realize(&states);
        (NiceLength::Finite(n), NiceCertificate::Finite { length: n, gradings })
    } else {
        let part = &last.partition;
        let pairs = (0..part.len())
            .flat_map(|u| (u + 1..part.len()).map(move |v| (u, v)))
            .filter(|&(u, v)| part[u] == part[v])
            .collect();
        (
            NiceLength::Infinite,
            NiceCertificate::Infinite { stabilization_level: last.level, pairs },
        )
    }
}

/// Whether some nice sequence separates the two elements.
pub fn distinguishable(m: &F1Rep, u: usize, v: usize) -> Result<bool> {
    if u == v {
        return Err(Error::SameVertex);
    }
    if u.max(v) >= m.total_dim() {
        return Err(Error::BadParameters("element index out of range".into()));
    }
    let last = iteration(m).pop().expect("at least one level");
    Ok(last.partition[u] != last.partition[v])
}

/// An explicit nice sequence `∂_0 .. ∂_n` distinguishing all elements,
/// with `n` the nice length.
pub fn realize_nice_sequence(m: &F1Rep) -> Result<Vec<Grading>> {
    match nice_length(m).1 {
        NiceCertificate::Finite { gradings, .. } => Ok(gradings),
        _ => Err(Error::InfiniteNiceLength),
    }
}

/// Evaluates each level's variables against `(1, B, B², ...)` with `B`
/// exceeding every coordinate of every difference, which keeps distinct
/// variables distinct. Components are shifted apart.
fn realize(states: &[IterationState]) -> Vec<Grading> {
    states.iter().map(evaluate).collect()
}

fn evaluate(st: &IterationState) -> Grading {
    let x = &st.variables;
    let n = x.len();
    let r = st.projection.rank;
    let mut bound = BigInt::zero();
    for i in 0..r {
        let (lo, hi) = x.iter().fold((None::<&BigInt>, None::<&BigInt>), |(lo, hi), v| {
            (
                Some(lo.map_or(&v[i], |l| l.min(&v[i]))),
                Some(hi.map_or(&v[i], |h| h.max(&v[i]))),
            )
        });
        if let (Some(lo), Some(hi)) = (lo, hi) {
            bound = bound.max(hi - lo);
        }
    }
    let base = bound + BigInt::one();
    let mut h = Vec::with_capacity(r);
    let mut p = BigInt::one();
    for _ in 0..r {
        h.push(p.clone());
        p *= &base;
    }
    let mut values: Vec<BigInt> = x
        .iter()
        .map(|v| v.iter().zip(&h).map(|(a, b)| a * b).sum())
        .collect();
    if n > 0 {
        let lo = values.iter().min().expect("nonempty").clone();
        let hi = values.iter().max().expect("nonempty").clone();
        let width = hi - lo + BigInt::one();
        for (v, val) in values.iter_mut().enumerate() {
            *val += &width * BigInt::from(st.component[v]);
        }
    }
    Grading(values)
}

/// A nice grading with every increment of an occurring color at least 1.
pub fn find_positive_grading(m: &F1Rep) -> Option<Grading> {
    let colors = image_colors(m);
    let g = Gamma::new(m, None);
    let eq = cycle_constraints(&g, &colors);
    let x = lattice::positive_kernel_point(&eq, colors.len())?;
    let delta = lattice::primitive_integer_vector(&x);
    Some(grading_from_deltas(&g, &colors, &delta))
}

fn image_colors(m: &F1Rep) -> Vec<usize> {
    let set: BTreeSet<usize> = m.gamma_arrows().iter().map(|a| a.2).collect();
    set.into_iter().collect()
}

/// One row per fundamental cycle of Γ: its image in `Z^{colors}`.
fn cycle_constraints(g: &Gamma, colors: &[usize]) -> IntMatrix {
    let pos: BTreeMap<usize, usize> = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    g.cycles
        .iter()
        .map(|cyc| {
            let mut row = vec![BigInt::zero(); colors.len()];
            for (e, &c) in cyc.iter().enumerate() {
                if c != 0 {
                    row[pos[&g.arrows[e].2]] += c;
                }
            }
            row
        })
        .collect()
}

fn grading_from_deltas(g: &Gamma, colors: &[usize], delta: &[BigInt]) -> Grading {
    let pos: BTreeMap<usize, usize> = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let forest = SpanningForest::new(g.n, &g.edges, Some(&g.roots));
    let mut values = vec![BigInt::zero(); g.n];
    for &v in &forest.order {
        let Some(e) = forest.parent_arrow[v] else { continue };
        let (s, t) = g.edges[e];
        let d = &delta[pos[&g.arrows[e].2]];
        values[v] = if t == v { &values[s] + d } else { &values[t] - d };
    }
    Grading(values)
}

/// A nice grading with no zero increment, if one exists.
pub fn find_non_degenerate_grading(m: &F1Rep) -> Option<Grading> {
    let colors = image_colors(m);
    let g = Gamma::new(m, None);
    let eq = cycle_constraints(&g, &colors);
    let basis = integer_kernel_basis(&eq, colors.len());
    if (0..colors.len()).any(|c| basis.iter().all(|b| b[c].is_zero())) {
        return None;
    }
    // Σ t^k b_k has each coordinate a nonzero polynomial in t, so some small
    // t avoids all their roots.
    for t in 1i64.. {
        let t = BigInt::from(t);
        let mut w = vec![BigInt::zero(); colors.len()];
        let mut pw = BigInt::one();
        for b in &basis {
            for (x, y) in w.iter_mut().zip(b) {
                *x += &pw * y;
            }
            pw *= &t;
        }
        if w.iter().all(|x| !x.is_zero()) {
            return Some(grading_from_deltas(&g, &colors, &w));
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

/// Integer vectors spanning the rational kernel of `rows`.
fn integer_kernel_basis(rows: &IntMatrix, n: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return lattice::identity(n);
    }
    // kernel of E = columns of V beyond the rank in the Smith form of E
    let s = lattice::smith_normal_form(rows, n);
    let r = s.rank();
    (r..n).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// What a sufficient condition lets one conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Nilpotent,
    NiceAtMostOne,
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub label: char,
    pub name: String,
    /// Whether the hypotheses hold.
    pub applies: bool,
    pub verdict: Option<Verdict>,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientConditions {
    pub checks: Vec<ConditionCheck>,
}

impl SufficientConditions {
    pub fn get(&self, label: char) -> &ConditionCheck {
        self.checks.iter().find(|c| c.label == label).expect("known label")
    }

    /// Combined finiteness verdict, if any check decides it.
    pub fn finiteness(&self) -> Option<bool> {
        self.checks.iter().find_map(|c| match c.verdict {
            Some(Verdict::Finite | Verdict::NiceAtMostOne) => Some(true),
            Some(Verdict::Infinite) => Some(false),
            _ => None,
        })
    }
}

fn check(label: char, name: &str, applies: bool, verdict: Option<Verdict>, evidence: String) -> ConditionCheck {
    ConditionCheck {
        label,
        name: name.to_string(),
        applies,
        verdict: if applies { verdict } else { None },
        evidence,
    }
}

fn show(g: &Grading) -> String {
    let parts: Vec<String> = g.0.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Evaluates the classical sufficient conditions for finite nice length,
/// each on its own.
pub fn sufficient_conditions_report(m: &F1Rep) -> SufficientConditions {
    let mut checks = Vec::new();
    let positive = find_positive_grading(m);
    let gamma_arrows = m.gamma_arrows();

    // (a)
    let (applies, evidence) = match &positive {
        Some(g) => (true, format!("positive grading {}; nilpotent: {}", show(g), m.is_nilpotent())),
        None => (false, "no positive or negative nice grading".into()),
    };
    checks.push(check('a', "positive or negative grading", applies, Some(Verdict::Nilpotent), evidence));

    // (b)
    let has_loops = m.base().arrows().iter().any(|a| a.src == a.tgt);
    let (applies, evidence) = match (&positive, has_loops) {
        (_, true) => (false, "base quiver has loops".into()),
        (None, false) => (false, "no positive grading".into()),
        (Some(g), false) => {
            let mut injective = true;
            for a in 0..m.base().n_arrows() {
                let values: Vec<&BigInt> = gamma_arrows.iter().filter(|e| e.2 == a).map(|e| &g.0[e.0]).collect();
                let set: BTreeSet<&BigInt> = values.iter().copied().collect();
                injective &= set.len() == values.len();
            }
            (injective, format!("grading {} injective on sources: {injective}", show(g)))
        }
    };
    checks.push(check('b', "loop-free base, positive grading injective on sources", applies, Some(Verdict::NiceAtMostOne), evidence));

    // (c)
    let fibers = connected_fibers(m);
    let nd = find_non_degenerate_grading(m);
    let applies = fibers && nd.is_some();
    let evidence = match &nd {
        Some(g) => format!("non-degenerate grading {}; connected fibers: {fibers}", show(g)),
        None => format!("no non-degenerate grading; connected fibers: {fibers}"),
    };
    checks.push(check('c', "non-degenerate grading with connected fibers", applies, Some(Verdict::NiceAtMostOne), evidence));

    // (d), (e), (f) look at the shape of Γ
    let w = winding_from_rep(m);
    let shape = if m.is_zero() { Err(Error::Disconnected) } else { classify_shape(w.gamma()) };
    checks.push(check(
        'd',
        "Γ is a tree",
        matches!(shape, Ok(ShapeClass::Tree)),
        Some(Verdict::Finite),
        format!("shape: {}", shape_name(&shape)),
    ));
    let (applies, verdict, evidence) = match &shape {
        Ok(ShapeClass::TypeATilde { .. }) => {
            let p = is_primitive_cycle(&w).unwrap_or(false);
            (true, Some(if p { Verdict::Finite } else { Verdict::Infinite }), format!("cycle primitive: {p}"))
        }
        _ => (false, None, format!("shape: {}", shape_name(&shape))),
    };
    checks.push(check('e', "Γ of type Ã: finite iff primitive", applies, verdict, evidence));
    let (applies, verdict, evidence) = match &shape {
        Ok(ShapeClass::ProperPseudotree { central_cycle }) => {
            let keep: BTreeSet<usize> = central_cycle
                .vertices()
                .iter()
                .map(|v| m.element_index(v).expect("central cycle lies in Γ"))
                .collect();
            let p = is_primitive_cycle(&winding_from_rep(&m.induced(&keep))).unwrap_or(false);
            (true, Some(if p { Verdict::Finite } else { Verdict::Infinite }), format!("central cycle primitive: {p}"))
        }
        _ => (false, None, format!("shape: {}", shape_name(&shape))),
    };
    checks.push(check('f', "proper pseudotree: finite iff central cycle primitive", applies, verdict, evidence));

    // (g)
    let pieces = amalgam_pieces(m);
    let (applies, evidence) = if pieces.len() < 2 {
        (false, "no color-disjoint amalgam decomposition".into())
    } else {
        let mut all_finite = true;
        let mut parts = Vec::new();
        for p in &pieces {
            let keep: BTreeSet<usize> = p.iter().flat_map(|&e| [gamma_arrows[e].0, gamma_arrows[e].1]).collect();
            let piece = piece_rep(m, &keep, p, &gamma_arrows);
            let len = nice_length(&piece).0;
            all_finite &= len.is_finite();
            parts.push(format!("{} arrows: nice {len}", p.len()));
        }
        (all_finite, format!("{} pieces ({})", pieces.len(), parts.join("; ")))
    };
    checks.push(check('g', "color-disjoint amalgam of finite pieces", applies, Some(Verdict::Finite), evidence));

    SufficientConditions { checks }
}

fn shape_name(s: &Result<ShapeClass>) -> String {
    match s {
        Ok(ShapeClass::Tree) => "tree".into(),
        Ok(ShapeClass::TypeATilde { .. }) => "cycle".into(),
        Ok(ShapeClass::ProperPseudotree { .. }) => "proper pseudotree".into(),
        Ok(ShapeClass::Other { rank }) => format!("cycle rank {rank}"),
        Err(_) => "disconnected".into(),
    }
}

/// Every color's arrows in Γ form a connected subgraph.
fn connected_fibers(m: &F1Rep) -> bool {
    let arrows = m.gamma_arrows();
    (0..m.base().n_arrows()).all(|a| {
        let fiber: Vec<(usize, usize)> = arrows.iter().filter(|e| e.2 == a).map(|e| (e.0, e.1)).collect();
        if fiber.is_empty() {
            return true;
        }
        let verts: BTreeSet<usize> = fiber.iter().flat_map(|&(s, t)| [s, t]).collect();
        let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = fiber.iter().map(|(s, t)| (local[s], local[t])).collect();
        crate::quiver::components(verts.len(), &edges).len() == 1
    })
}

/// The representation on the vertices `keep` carrying only the arrows `arrows`.
fn piece_rep(m: &F1Rep, keep: &BTreeSet<usize>, arrows: &[usize], all: &[(usize, usize, usize)]) -> F1Rep {
    let local: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(j, &i)| (i, j)).collect();
    let elements: Vec<(String, usize)> = keep.iter().map(|&i| (m.elements()[i].clone(), m.colors()[i])).collect();
    let edges: Vec<(usize, usize, usize)> = arrows.iter().map(|&e| (local[&all[e].0], local[&all[e].1], all[e].2)).collect();
    F1Rep::from_graph(m.base().clone(), elements, &edges).expect("a piece of a winding is a winding")
}

/// Splits the arrows of a connected Γ into the finest pieces that are
/// connected, use pairwise disjoint colors and are glued along single
/// vertices in a tree-like way. Returns one piece when no split exists.
fn amalgam_pieces(m: &F1Rep) -> Vec<Vec<usize>> {
    let arrows = m.gamma_arrows();
    if arrows.is_empty() || !m.is_indecomposable() {
        return vec![(0..arrows.len()).collect()];
    }
    let edges: Vec<(usize, usize)> = arrows.iter().map(|&(s, t, _)| (s, t)).collect();
    let blocks = biconnected_blocks(m.total_dim(), &edges);
    let nb = blocks.len();
    let mut uf = UnionFind::new(nb);
    let block_of: Vec<usize> = {
        let mut b = vec![0; edges.len()];
        for (k, blk) in blocks.iter().enumerate() {
            for &e in blk {
                b[e] = k;
            }
        }
        b
    };
    // block-cut tree: block nodes 0..nb, vertex nodes nb..nb+n
    let n = m.total_dim();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nb + n];
    for (e, &(s, t)) in edges.iter().enumerate() {
        for v in [s, t] {
            adj[block_of[e]].insert(nb + v);
            adj[nb + v].insert(block_of[e]);
        }
    }
    loop {
        let mut changed = false;
        // same color, same piece
        let mut by_color: BTreeMap<usize, usize> = BTreeMap::new();
        for (e, a) in arrows.iter().enumerate() {
            if let Some(&f) = by_color.get(&a.2) {
                changed |= uf.union(block_of[e], block_of[f]);
            } else {
                by_color.insert(a.2, e);
            }
        }
        // pieces must be connected: absorb the blocks on the tree paths
        // between a piece's blocks
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for b in 0..nb {
            groups.entry(uf.find(b)).or_default().insert(b);
        }
        for members in groups.values() {
            for b in steiner_blocks(&adj, nb, members) {
                changed |= uf.union(b, *members.iter().next().expect("nonempty"));
            }
        }
        if !changed {
            break;
        }
    }
    let mut pieces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..edges.len() {
        pieces.entry(uf.find(block_of[e])).or_default().push(e);
    }
    pieces.into_values().collect()
}

/// Block nodes of the smallest subtree of the block-cut tree containing `marked`.
fn steiner_blocks(adj: &[BTreeSet<usize>], nb: usize, marked: &BTreeSet<usize>) -> Vec<usize> {
    let total = adj.len();
    let mut alive = vec![true; total];
    let mut degree: Vec<usize> = adj.iter().map(|s| s.len()).collect();
    // isolated vertex nodes never matter
    for v in 0..total {
        if degree[v] == 0 {
            alive[v] = false;
        }
    }
    let mut stack: Vec<usize> = (0..total).filter(|&v| alive[v] && degree[v] <= 1 && !marked.contains(&v)).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in &adj[v] {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 && !marked.contains(&w) {
                    stack.push(w);
                }
            }
        }
    }
    (0..nb).filter(|&b| alive[b]).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

/// Edge sets of the biconnected blocks of an undirected multigraph. Loops
/// form blocks of their own.
fn biconnected_blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    let mut blocks = Vec::new();
    for (e, &(s, t)) in edges.iter().enumerate() {
        if s == t {
            blocks.push(vec![e]);
        } else {
            inc[s].push(e);
            inc[t].push(e);
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, edge used to enter, next incidence position)
        let mut frames: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, via, ref mut pos)) = frames.last_mut() {
            if *pos < inc[v].len() {
                let e = inc[v][*pos];
                *pos += 1;
                if Some(e) == via {
                    continue;
                }
                let (s, t) = edges[e];
                let w = if s == v { t } else { s };
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let (Some(e), Some(&(u, _, _))) = (via, frames.last()) {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut blk = Vec::new();
                        while let Some(f) = stack.pop() {
                            blk.push(f);
                            if f == e {
                                break;
                            }
                        }
                        blk.sort_unstable();
                        blocks.push(blk);
                    }
                }
            }
        }
    }
    blocks.sort();
    blocks
}
