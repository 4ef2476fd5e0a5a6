//! Sparse cofactor representations: the relevant-syzygy closure, redundancy
//! pruning, linear-system construction, the l1 recast solved by exact linear
//! programming, and the structural total-unimodularity certificate for pure
//! difference binomials.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::time::Duration;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimodule::{GeneratorSystem, ModuleElement, ModuleMonomial, SignatureBound};
use crate::lp::{solve_standard, verify_certificate, LpOutcome, StandardLp};
use crate::matrix::SparseRationalMatrix;
use crate::poly::{parse_poly, NcPoly, VariableTable, Word};
use crate::sig_gb::{syzygy_basis_up_to_with, SigGbConfig, SigGbError, SyzygyBasis};
use crate::Rat;

#[derive(Debug, Error)]
pub enum SparsifyError {
    #[error("no cofactor representation below the bound; irreducible remainder left")]
    NotInIdealUpToBound { remainder: NcPoly },
    #[error("initial representation rejected: {0}")]
    InvalidInitial(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error(transparent)]
    SigGb(#[from] SigGbError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Placed multiples of syzygy-basis elements that can appear in a rewriting
/// sequence from the starting representation to a minimal one.
#[derive(Debug, Clone)]
pub struct RelevantSyzygies {
    pub elements: Vec<ModuleElement>,
    pub bound: SignatureBound,
}

impl RelevantSyzygies {
    pub fn support_with(&self, alpha: &ModuleElement) -> BTreeSet<ModuleMonomial> {
        let mut set: BTreeSet<ModuleMonomial> = alpha.support().cloned().collect();
        for e in &self.elements {
            set.extend(e.support().cloned());
        }
        set
    }
}

/// All placements `a γ b` of syzygy-basis elements reachable from the support
/// of `alpha` by transitive support sharing, with placed signature below the
/// bound. Every module monomial is processed at most once; termination
/// follows from fairness of the module ordering.
pub fn relevant_syzygies(
    alpha: &ModuleElement,
    syz: &SyzygyBasis,
    sys: &GeneratorSystem,
) -> RelevantSyzygies {
    let _ = sys;
    if let Some(sig) = alpha.signature() {
        debug_assert!(syz.bound.admits(sig), "initial signature must be below the bound");
    }
    let mut todo: BTreeSet<ModuleMonomial> = alpha.support().cloned().collect();
    let mut done: BTreeSet<ModuleMonomial> = BTreeSet::new();
    let mut seen: BTreeSet<(usize, Word, Word)> = BTreeSet::new();
    let mut elements = Vec::new();
    while let Some(mu) = todo.pop_first() {
        done.insert(mu.clone());
        for (hi, h) in syz.elements.iter().enumerate() {
            for (nu, _) in h.element.terms() {
                if nu.index() != mu.index() {
                    continue;
                }
                let Some(a) = mu.left().strip_suffix(nu.left()) else { continue };
                let Some(b) = mu.right().strip_prefix(nu.right()) else { continue };
                if !seen.insert((hi, a.clone(), b.clone())) {
                    continue;
                }
                let placed_sig = h.signature.place(&a, &b);
                if !syz.bound.admits(&placed_sig) {
                    continue;
                }
                let placed = h.element.place(&a, &b);
                for m in placed.support() {
                    if !done.contains(m) {
                        todo.insert(m.clone());
                    }
                }
                elements.push(placed);
            }
        }
    }
    RelevantSyzygies { elements, bound: syz.bound.clone() }
}

/// Norm used by the pruning tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L0,
    L1,
}

impl Norm {
    fn weight(&self, coeff: &Rat) -> Rat {
        match self {
            Norm::L0 => Rat::one(),
            Norm::L1 => coeff.abs(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PruneConfig {
    pub norm: Norm,
    pub seed: u64,
    /// Elements heavier than this multiple of the current representation are
    /// candidates for random span swaps.
    pub swap_factor: u32,
    /// Number of random-swap passes.
    pub passes: usize,
}

impl PruneConfig {
    pub fn new(norm: Norm, seed: u64) -> Self {
        Self { norm, seed, swap_factor: 2, passes: 3 }
    }
}

struct Pruner {
    elems: Vec<Option<ModuleElement>>,
    alpha: ModuleElement,
    occ: BTreeMap<ModuleMonomial, usize>,
    norm: Norm,
}

impl Pruner {
    fn new(v: &RelevantSyzygies, alpha: &ModuleElement, norm: Norm) -> Self {
        let mut occ: BTreeMap<ModuleMonomial, usize> = BTreeMap::new();
        for m in alpha.support() {
            *occ.entry(m.clone()).or_insert(0) += 1;
        }
        for e in &v.elements {
            for m in e.support() {
                *occ.entry(m.clone()).or_insert(0) += 1;
            }
        }
        Self {
            elems: v.elements.iter().cloned().map(Some).collect(),
            alpha: alpha.clone(),
            occ,
            norm,
        }
    }

    fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|_| i))
    }

    fn occ_of(&self, m: &ModuleMonomial) -> usize {
        self.occ.get(m).copied().unwrap_or(0)
    }

    fn remove(&mut self, i: usize) {
        if let Some(e) = self.elems[i].take() {
            for m in e.support() {
                let c = self.occ.get_mut(m).expect("tracked monomial");
                *c -= 1;
                if *c == 0 {
                    self.occ.remove(m);
                }
            }
        }
    }

    /// Replace element `i` by `elems[i] + c * other`, keeping occurrence
    /// counts consistent. Removes the element if it cancels to zero.
    fn combine(&mut self, i: usize, c: &Rat, other: &ModuleElement) {
        let mut e = self.elems[i].take().expect("alive element");
        for m in e.support() {
            let cnt = self.occ.get_mut(m).expect("tracked monomial");
            *cnt -= 1;
            if *cnt == 0 {
                self.occ.remove(m);
            }
        }
        e.add_scaled(c, other);
        if e.is_zero() {
            return;
        }
        for m in e.support() {
            *self.occ.entry(m.clone()).or_insert(0) += 1;
        }
        self.elems[i] = Some(e);
    }

    fn combine_alpha(&mut self, c: &Rat, other: &ModuleElement) {
        for m in self.alpha.support() {
            let cnt = self.occ.get_mut(m).expect("tracked monomial");
            *cnt -= 1;
            if *cnt == 0 {
                self.occ.remove(m);
            }
        }
        self.alpha.add_scaled(c, other);
        for m in self.alpha.support() {
            *self.occ.entry(m.clone()).or_insert(0) += 1;
        }
    }

    fn alive_count(&self) -> usize {
        self.alive().count()
    }

    /// The redundancy test for a single element: terms shared with any other
    /// element must not outweigh the terms unique to it.
    fn singleton_removable(&self, i: usize) -> bool {
        let e = self.elems[i].as_ref().expect("alive element");
        let mut unique = Rat::zero();
        let mut shared = Rat::zero();
        for (m, c) in e.terms() {
            if self.occ_of(m) == 1 {
                unique += self.norm.weight(c);
            } else {
                shared += self.norm.weight(c);
            }
        }
        shared <= unique
    }

    fn singleton_fixpoint(&mut self) {
        loop {
            let mut changed = false;
            for i in 0..self.elems.len() {
                if self.elems[i].is_none() {
                    continue;
                }
                if self.singleton_removable(i) {
                    self.remove(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Pair test: both elements must be at least a third unique, share
    /// support, and satisfy the redundancy condition relative to everything
    /// outside the pair.
    fn pairs_pass(&mut self) {
        let mut by_monomial: BTreeMap<&ModuleMonomial, Vec<usize>> = BTreeMap::new();
        let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
        let elems = &self.elems;
        for (i, e) in elems.iter().enumerate() {
            let Some(e) = e else { continue };
            for m in e.support() {
                by_monomial.entry(m).or_default().push(i);
            }
        }
        for owners in by_monomial.values() {
            for (p, &i) in owners.iter().enumerate() {
                for &j in &owners[p + 1..] {
                    candidates.insert((i, j));
                }
            }
        }
        for (i, j) in candidates {
            if self.elems[i].is_none() || self.elems[j].is_none() {
                continue;
            }
            if !self.mostly_unique(i) || !self.mostly_unique(j) {
                continue;
            }
            if self.pair_removable(i, j) {
                self.remove(i);
                self.remove(j);
            }
        }
    }

    fn mostly_unique(&self, i: usize) -> bool {
        let e = self.elems[i].as_ref().expect("alive element");
        let unique = e.support().filter(|m| self.occ_of(m) == 1).count();
        3 * unique >= e.l0_weight()
    }

    fn pair_removable(&self, i: usize, j: usize) -> bool {
        for (this, other) in [(i, j), (j, i)] {
            let e = self.elems[this].as_ref().expect("alive element");
            let partner = self.elems[other].as_ref().expect("alive element");
            let mut unique = Rat::zero();
            let mut outside = Rat::zero();
            for (m, c) in e.terms() {
                let occ = self.occ_of(m);
                if occ == 1 {
                    unique += self.norm.weight(c);
                    continue;
                }
                let in_partner = usize::from(partner.coeff(m).is_some());
                if occ - 1 - in_partner >= 1 {
                    outside += self.norm.weight(c);
                }
            }
            if outside > unique {
                return false;
            }
        }
        true
    }

    /// Eliminate the smaller monomial of each binomial syzygy from all other
    /// elements (span swaps keep the span unchanged), after which the
    /// singleton test can usually delete the binomial itself.
    fn binomial_pass(&mut self) {
        let mut queue: VecDeque<usize> = self.alive().filter(|&i| self.is_binomial(i)).collect();
        let mut guard = 64 * (self.elems.len() + 16);
        while let Some(i) = queue.pop_front() {
            if guard == 0 {
                break;
            }
            guard -= 1;
            if self.elems[i].is_none() || !self.is_binomial(i) {
                continue;
            }
            let beta = self.elems[i].clone().expect("alive element");
            let mut terms = beta.terms();
            let (lo, lo_coeff) = terms.next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            drop(terms);
            // Rewrite every other occurrence of the smaller monomial.
            for j in 0..self.elems.len() {
                if j == i || self.elems[j].is_none() {
                    continue;
                }
                let coeff = self.elems[j].as_ref().unwrap().coeff(&lo).cloned();
                if let Some(c) = coeff {
                    let factor = -(c / &lo_coeff);
                    self.combine(j, &factor, &beta);
                    if self.elems[j].is_some() && self.is_binomial(j) {
                        queue.push_back(j);
                    }
                }
            }
            if let Some(c) = self.alpha.coeff(&lo).cloned() {
                let factor = -(c / &lo_coeff);
                self.combine_alpha(&factor, &beta);
            }
            if self.singleton_removable(i) {
                self.remove(i);
            }
        }
    }

    fn is_binomial(&self, i: usize) -> bool {
        self.elems[i]
            .as_ref()
            .map(|e| e.l0_weight() == 2)
            .unwrap_or(false)
    }

    /// Randomly combine heavy elements with partners sharing a monomial, to
    /// cut down monomial occurrences and trigger further singleton removals.
    fn random_pass(&mut self, rng: &mut ChaCha8Rng, swap_factor: u32) {
        let threshold = match self.norm {
            Norm::L0 => Rat::from_integer((swap_factor as i64).into())
                * Rat::from_integer((self.alpha.l0_weight() as i64).into()),
            Norm::L1 => {
                Rat::from_integer((swap_factor as i64).into()) * self.alpha.l1_weight()
            }
        };
        let indices: Vec<usize> = self.alive().collect();
        for i in indices {
            let Some(e) = self.elems[i].as_ref() else { continue };
            let heavy = match self.norm {
                Norm::L0 => Rat::from_integer((e.l0_weight() as i64).into()) > threshold,
                Norm::L1 => e.l1_weight() > threshold,
            };
            if !heavy {
                continue;
            }
            let shared: Vec<ModuleMonomial> = e
                .support()
                .filter(|m| self.occ_of(m) >= 2)
                .cloned()
                .collect();
            if shared.is_empty() {
                continue;
            }
            let m = &shared[rng.gen_range(0..shared.len())];
            let partners: Vec<usize> = self
                .alive()
                .filter(|&j| j != i && self.elems[j].as_ref().unwrap().coeff(m).is_some())
                .collect();
            if partners.is_empty() {
                continue;
            }
            let j = partners[rng.gen_range(0..partners.len())];
            let partner = self.elems[j].clone().expect("alive element");
            let num = self.elems[i].as_ref().unwrap().coeff(m).unwrap().clone();
            let den = partner.coeff(m).unwrap().clone();
            let factor = -(num / den);
            self.combine(i, &factor, &partner);
        }
    }

    fn deterministic_fixpoint(&mut self) {
        loop {
            let before = self.alive_count();
            self.singleton_fixpoint();
            self.pairs_pass();
            self.binomial_pass();
            self.singleton_fixpoint();
            if self.alive_count() == before {
                break;
            }
        }
    }

    fn finish(self, bound: SignatureBound) -> (RelevantSyzygies, ModuleElement) {
        let elements = self.elems.into_iter().flatten().collect();
        (RelevantSyzygies { elements, bound }, self.alpha)
    }
}

/// Prune redundant syzygies. Removals are justified by the redundancy
/// condition (shared weight does not exceed unique weight), and span swaps
/// replace elements by linear combinations with the same span, so an optimal
/// representation stays reachable. Since swaps may also rewrite the offset
/// representation, the possibly-modified `alpha` is returned alongside the
/// pruned family; the affine space `alpha + span(V)` is unchanged.
pub fn prune(
    v: &RelevantSyzygies,
    alpha: &ModuleElement,
    norm: Norm,
    seed: u64,
) -> (RelevantSyzygies, ModuleElement) {
    prune_with(v, alpha, &PruneConfig::new(norm, seed))
}

pub fn prune_with(
    v: &RelevantSyzygies,
    alpha: &ModuleElement,
    config: &PruneConfig,
) -> (RelevantSyzygies, ModuleElement) {
    let mut pruner = Pruner::new(v, alpha, config.norm);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    // Deleting elements turns shared monomials unique and span swaps create
    // fresh binomials, so the deterministic techniques feed each other;
    // iterate them to a fixpoint before and after the randomized sweeps.
    pruner.deterministic_fixpoint();
    for _ in 0..config.passes {
        pruner.random_pass(&mut rng, config.swap_factor);
        pruner.deterministic_fixpoint();
    }
    pruner.finish(v.bound.clone())
}

/// The linear system of a cofactor search space: columns are the expansions
/// of the basis monomials, rows are indexed by polynomial monomials in
/// descending order, and the right-hand side holds the coefficients of the
/// target polynomial.
#[derive(Debug, Clone)]
pub struct CofactorSystem {
    pub basis: Vec<ModuleMonomial>,
    pub matrix: SparseRationalMatrix,
    pub rhs: Vec<Rat>,
    pub row_monomials: Vec<Word>,
}

pub fn build_system(
    alpha: &ModuleElement,
    v: &RelevantSyzygies,
    sys: &GeneratorSystem,
    f: &NcPoly,
) -> Result<CofactorSystem, SparsifyError> {
    let basis: Vec<ModuleMonomial> = v.support_with(alpha).into_iter().collect();
    let expansions: Vec<NcPoly> = basis.iter().map(|m| m.expansion(sys)).collect();
    let mut row_set: BTreeSet<Word> = BTreeSet::new();
    for e in &expansions {
        row_set.extend(e.support().cloned());
    }
    let row_monomials: Vec<Word> = row_set.into_iter().rev().collect();
    let row_index: HashMap<&Word, usize> = row_monomials
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    for w in f.support() {
        if !row_index.contains_key(w) {
            return Err(SparsifyError::InconsistentInput(format!(
                "target monomial outside the column span (weight {})",
                w.len()
            )));
        }
    }
    let mut matrix = SparseRationalMatrix::new(row_monomials.len());
    for e in &expansions {
        matrix.push_column(e.terms().map(|(w, c)| (row_index[w], c.clone())).collect());
    }
    let mut rhs = vec![Rat::zero(); row_monomials.len()];
    for (w, c) in f.terms() {
        rhs[row_index[w]] = c.clone();
    }
    Ok(CofactorSystem { basis, matrix, rhs, row_monomials })
}

/// Structural total-unimodularity condition: the claim and every generator is
/// a pure difference binomial `a - b` with `a, b` monomials or zero and
/// coefficients plus/minus one. Each column of the augmented system matrix
/// then holds at most one `+1` and at most one `-1`, so the matrix is totally
/// unimodular and the l1 optimum is also an l0 optimum.
pub fn tu_structural_check(sys: &GeneratorSystem, f: &NcPoly) -> bool {
    is_pure_difference_binomial(f) && sys.generators().iter().all(is_pure_difference_binomial)
}

fn is_pure_difference_binomial(p: &NcPoly) -> bool {
    match p.num_terms() {
        1 => p.terms().all(|(_, c)| c.abs().is_one()),
        2 => {
            let coeffs: Vec<&Rat> = p.terms().map(|(_, c)| c).collect();
            coeffs[0].abs().is_one() && *coeffs[0] == -coeffs[1].clone()
        }
        _ => false,
    }
}

/// Column weights for the minimization objective.
#[derive(Debug, Clone)]
pub enum Weights {
    Uniform,
    PerMonomial(Vec<Rat>),
}

/// Exact presolve: a row with a single nonzero entry forces its variable in
/// every solution, and an inactive column is zero in every solution. The
/// eliminations preserve the solution set of `A y = b` exactly, so the
/// minimization is unaffected; they cascade and typically collapse most of
/// the system.
struct Presolve {
    forced: BTreeMap<usize, Rat>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    reduced_cols: Vec<Vec<(usize, Rat)>>,
    reduced_rhs: Vec<Rat>,
}

fn presolve(cs: &CofactorSystem) -> Result<Presolve, SparsifyError> {
    let nrows = cs.matrix.nrows();
    let d = cs.matrix.ncols();
    let mut row_entries: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); nrows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); d];
    for j in 0..d {
        for (r, v) in cs.matrix.column(j) {
            row_entries[*r].insert(j, v.clone());
            col_rows[j].insert(*r);
        }
    }
    let mut rhs: Vec<Rat> = cs.rhs.clone();
    let mut row_active = vec![true; nrows];
    let mut col_active = vec![true; d];
    let mut forced: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut queue: VecDeque<usize> = (0..nrows).collect();
    while let Some(r) = queue.pop_front() {
        if !row_active[r] {
            continue;
        }
        match row_entries[r].len() {
            0 => {
                if !rhs[r].is_zero() {
                    return Err(SparsifyError::Internal(
                        "presolve found an unsatisfiable empty row".into(),
                    ));
                }
                row_active[r] = false;
            }
            1 => {
                let (&j, v) = row_entries[r].iter().next().expect("one entry");
                let value = &rhs[r] / v;
                row_active[r] = false;
                col_active[j] = false;
                row_entries[r].clear();
                // Substitute y_j into every other row.
                for &r2 in col_rows[j].clone().iter() {
                    if r2 == r || !row_active[r2] {
                        continue;
                    }
                    if let Some(coeff) = row_entries[r2].remove(&j) {
                        let delta = &coeff * &value;
                        rhs[r2] -= delta;
                        if row_entries[r2].len() <= 1 {
                            queue.push_back(r2);
                        }
                    }
                }
                forced.insert(j, value);
            }
            _ => {}
        }
    }
    for j in 0..d {
        if col_active[j] && col_rows[j].iter().all(|&r| !row_active[r]) {
            col_active[j] = false;
            forced.insert(j, Rat::zero());
        }
    }
    let rows: Vec<usize> = (0..nrows).filter(|&r| row_active[r]).collect();
    let cols: Vec<usize> = (0..d).filter(|&j| col_active[j]).collect();
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    let reduced_cols: Vec<Vec<(usize, Rat)>> = cols
        .iter()
        .map(|&j| {
            col_rows[j]
                .iter()
                .filter_map(|&r| {
                    if !row_active[r] {
                        return None;
                    }
                    row_entries[r].get(&j).map(|v| (row_pos[&r], v.clone()))
                })
                .collect()
        })
        .collect();
    let reduced_rhs: Vec<Rat> = rows.iter().map(|&r| rhs[r].clone()).collect();
    Ok(Presolve { forced, rows, cols, reduced_cols, reduced_rhs })
}

/// Solve `min sum w_j |y_j|` subject to `A y = b` exactly, via the standard
/// split `y = p - q` with `p, q >= 0`. Forced variables are eliminated first;
/// the remaining program is solved by the exact simplex and its vertex
/// solution is verified against its dual certificate before returning.
pub fn minimize(cs: &CofactorSystem, weights: &Weights) -> Result<Vec<Rat>, SparsifyError> {
    let d = cs.basis.len();
    let weight_vec: Vec<Rat> = match weights {
        Weights::Uniform => vec![Rat::one(); d],
        Weights::PerMonomial(v) => {
            if v.len() != d {
                return Err(SparsifyError::InconsistentInput(format!(
                    "expected {d} weights, got {}",
                    v.len()
                )));
            }
            if v.iter().any(|w| w <= &Rat::zero()) {
                return Err(SparsifyError::InconsistentInput(
                    "weights must be strictly positive".into(),
                ));
            }
            v.clone()
        }
    };
    let pre = presolve(cs)?;
    let k = pre.cols.len();
    let m = pre.rows.len();
    let mut columns = Vec::with_capacity(2 * k);
    for col in &pre.reduced_cols {
        columns.push(col.clone());
    }
    for col in &pre.reduced_cols {
        columns.push(col.iter().map(|(r, v)| (*r, -v)).collect());
    }
    let u = SparseRationalMatrix::from_columns(m, columns);
    let mut cost: Vec<Rat> = pre.cols.iter().map(|&j| weight_vec[j].clone()).collect();
    cost.extend(pre.cols.iter().map(|&j| weight_vec[j].clone()));
    let lp = StandardLp::new(u, pre.reduced_rhs.clone(), cost);
    let sol = match solve_standard(&lp) {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible => {
            return Err(SparsifyError::Internal(
                "constructed system reported infeasible".into(),
            ))
        }
        LpOutcome::Unbounded => {
            return Err(SparsifyError::Internal(
                "nonnegative objective reported unbounded".into(),
            ))
        }
    };
    if !verify_certificate(&lp, &sol) {
        return Err(SparsifyError::Internal(
            "optimality certificate failed exact verification".into(),
        ));
    }
    let mut y: Vec<Rat> = vec![Rat::zero(); d];
    for (j, value) in &pre.forced {
        y[*j] = value.clone();
    }
    for (pos, &j) in pre.cols.iter().enumerate() {
        y[j] = &sol.primal[pos] - &sol.primal[k + pos];
    }
    debug_assert_eq!(cs.matrix.mul_vec(&y), cs.rhs);
    Ok(y)
}

/// Pipeline-level weight selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Every module monomial weighs one: the objective is the l1 weight.
    Uniform,
    /// Monomials weigh their expansion degree, preferring small-degree
    /// cofactors. With this objective the output is optimal for the weighted
    /// objective but no longer guaranteed l1-minimal.
    Degree,
}

impl WeightMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightMode::Uniform => "uniform",
            WeightMode::Degree => "degree",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub weights: WeightMode,
    pub prune_enabled: bool,
    pub seed: u64,
    pub time_budget: Option<Duration>,
    pub monomial_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            weights: WeightMode::Uniform,
            prune_enabled: true,
            seed: 0,
            time_budget: None,
            monomial_cap: crate::bimodule::DEFAULT_MONOMIAL_CAP,
        }
    }
}

/// Size accounting of one pipeline run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineStats {
    pub vars: Vec<String>,
    pub syzygy_basis_size: usize,
    pub placements_before_prune: usize,
    pub placements_after_prune: usize,
    pub basis_before_prune: usize,
    pub basis_after_prune: usize,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub matrix_nnz: usize,
    pub weights: WeightMode,
    pub prune: bool,
    pub seed: u64,
}

/// The pipeline output: a minimized representation with its weights, the
/// optimality flag, the bound it was computed under, and size statistics.
#[derive(Debug, Clone)]
pub struct SparseCertificate {
    pub representation: ModuleElement,
    pub l0_weight: usize,
    pub l1_weight: Rat,
    pub l0_optimal_up_to_bound: bool,
    pub bound: SignatureBound,
    pub stats: PipelineStats,
}

/// End-to-end minimization: compute the syzygy basis up to the bound, obtain
/// or validate a starting representation, close off the relevant syzygies,
/// optionally prune, build the linear system, and solve the weighted l1
/// program exactly. The returned representation expands to `f` exactly; with
/// uniform weights its l1 weight never exceeds that of the starting
/// representation, and for pure-difference-binomial input it is also an l0
/// optimum up to the bound.
pub fn sparsify_pipeline(
    f: &NcPoly,
    sys: &GeneratorSystem,
    bound: &SignatureBound,
    initial: Option<ModuleElement>,
    options: &PipelineOptions,
) -> Result<SparseCertificate, SparsifyError> {
    let sig_config = SigGbConfig {
        monomial_cap: options.monomial_cap,
        time_budget: options.time_budget,
        ..SigGbConfig::default()
    };
    let (gb, syz) = syzygy_basis_up_to_with(sys, bound, &sig_config)?;
    let alpha0 = match initial {
        Some(alpha) => {
            if alpha.expand(sys) != *f {
                return Err(SparsifyError::InvalidInitial(
                    "expansion does not match the claim".into(),
                ));
            }
            if let Some(sig) = alpha.signature() {
                if !bound.admits(sig) {
                    return Err(SparsifyError::InvalidInitial(
                        "signature is not below the bound".into(),
                    ));
                }
            }
            alpha
        }
        None => trace_membership_or_fail(f, &gb, sys, bound)?,
    };
    let initial_l1 = alpha0.l1_weight();

    let v = relevant_syzygies(&alpha0, &syz, sys);
    let placements_before = v.elements.len();
    let basis_before = v.support_with(&alpha0).len();

    let (v, alpha) = if options.prune_enabled {
        let norm = match options.weights {
            WeightMode::Uniform => Norm::L1,
            WeightMode::Degree => Norm::L1,
        };
        prune(&v, &alpha0, norm, options.seed)
    } else {
        (v, alpha0.clone())
    };
    let placements_after = v.elements.len();

    let cs = build_system(&alpha, &v, sys, f)?;
    let weights = match options.weights {
        WeightMode::Uniform => Weights::Uniform,
        WeightMode::Degree => Weights::PerMonomial(
            cs.basis
                .iter()
                .map(|m| Rat::from_integer((m.weighted_degree().max(1) as i64).into()))
                .collect(),
        ),
    };
    let y = minimize(&cs, &weights)?;
    let representation = ModuleElement::from_terms(
        y.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (cs.basis[j].clone(), c)),
    );
    if representation.expand(sys) != *f {
        return Err(SparsifyError::Internal(
            "minimized representation does not expand to the claim".into(),
        ));
    }
    let l1_weight = representation.l1_weight();
    if options.weights == WeightMode::Uniform && l1_weight > initial_l1 {
        return Err(SparsifyError::Internal(
            "l1 weight exceeds the starting representation".into(),
        ));
    }
    let l0_optimal_up_to_bound =
        options.weights == WeightMode::Uniform && tu_structural_check(sys, f);
    let stats = PipelineStats {
        vars: sys.vars().names().to_vec(),
        syzygy_basis_size: syz.len(),
        placements_before_prune: placements_before,
        placements_after_prune: placements_after,
        basis_before_prune: basis_before,
        basis_after_prune: cs.basis.len(),
        matrix_rows: cs.matrix.nrows(),
        matrix_cols: cs.matrix.ncols(),
        matrix_nnz: cs.matrix.nnz(),
        weights: options.weights,
        prune: options.prune_enabled,
        seed: options.seed,
    };
    Ok(SparseCertificate {
        l0_weight: representation.l0_weight(),
        l1_weight,
        l0_optimal_up_to_bound,
        bound: bound.clone(),
        stats,
        representation,
    })
}

fn trace_membership_or_fail(
    f: &NcPoly,
    gb: &[crate::sig_gb::LabeledPoly],
    sys: &GeneratorSystem,
    bound: &SignatureBound,
) -> Result<ModuleElement, SparsifyError> {
    crate::sig_gb::trace_membership(f, gb, sys, bound)
        .map_err(|e| SparsifyError::NotInIdealUpToBound { remainder: e.remainder })
}

// ---------------------------------------------------------------------------
// Certificate serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub left: String,
    pub gen: usize,
    pub right: String,
}

/// JSON shape of a certificate, self-contained for re-verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub claim: String,
    pub generators: Vec<String>,
    pub bound: BoundJson,
    pub representation: Vec<TermJson>,
    pub l0: usize,
    pub l1: String,
    pub l0_optimal_up_to_bound: bool,
    pub stats: PipelineStats,
}

impl SparseCertificate {
    pub fn to_document(&self, f: &NcPoly, sys: &GeneratorSystem) -> CertificateDocument {
        let vars = sys.vars();
        let bound = match &self.bound {
            SignatureBound::Degree(n) => BoundJson { degree: Some(*n), signature: None },
            SignatureBound::Explicit(sigma) => BoundJson {
                degree: None,
                signature: Some(sigma.to_text(vars)),
            },
        };
        CertificateDocument {
            claim: f.to_text(vars),
            generators: sys.generators().iter().map(|g| g.to_text(vars)).collect(),
            bound,
            representation: self
                .representation
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    left: m.left().to_text(vars),
                    gen: m.index() + 1,
                    right: m.right().to_text(vars),
                })
                .collect(),
            l0: self.l0_weight,
            l1: self.l1_weight.to_string(),
            l0_optimal_up_to_bound: self.l0_optimal_up_to_bound,
            stats: self.stats.clone(),
        }
    }
}

fn parse_word_text(text: &str, vars: &VariableTable) -> Result<Word, String> {
    let text = text.trim();
    if text == "1" {
        return Ok(Word::one());
    }
    let mut letters = Vec::new();
    for part in text.split('*') {
        let name = part.trim();
        let index = vars
            .index_of(name)
            .ok_or_else(|| format!("unknown variable `{name}` in word `{text}`"))?;
        letters.push(index);
    }
    Ok(Word::from_letters(letters))
}

/// Re-check a stored certificate by expansion: the representation must
/// expand exactly to the claim, the stored weights must match, every term
/// must lie below the bound, and the optimality flag must be backed by the
/// structural check. Returns a description of the first discrepancy.
pub fn verify_document(doc: &CertificateDocument) -> Result<(), String> {
    let vars = VariableTable::new(doc.stats.vars.iter().cloned())
        .map_err(|e| format!("bad variable table: {e}"))?;
    let gens: Vec<NcPoly> = doc
        .generators
        .iter()
        .map(|t| parse_poly(t, &vars).map_err(|e| format!("bad generator `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    let sys = GeneratorSystem::new(vars, gens).map_err(|e| e.to_string())?;
    let claim = parse_poly(&doc.claim, sys.vars()).map_err(|e| format!("bad claim: {e}"))?;
    let bound = match (&doc.bound.degree, &doc.bound.signature) {
        (Some(n), None) => SignatureBound::Degree(*n),
        (None, Some(_)) => {
            return Err("explicit signature bounds are not supported in documents".into())
        }
        _ => return Err("certificate bound must carry exactly one of degree/signature".into()),
    };
    let mut representation = ModuleElement::zero();
    for term in &doc.representation {
        let coeff: Rat = term
            .coeff
            .parse()
            .map_err(|_| format!("bad coefficient `{}`", term.coeff))?;
        if term.gen == 0 || term.gen > sys.rank() {
            return Err(format!("generator index {} out of range", term.gen));
        }
        let left = parse_word_text(&term.left, sys.vars())?;
        let right = parse_word_text(&term.right, sys.vars())?;
        let m = ModuleMonomial::new(left, term.gen - 1, right, &sys);
        if !bound.admits(&m) {
            return Err(format!(
                "representation term of weighted degree {} is not below the bound",
                m.weighted_degree()
            ));
        }
        representation.add_monomial(m, coeff);
    }
    if representation.expand(&sys) != claim {
        return Err("representation does not expand to the claim".into());
    }
    if representation.l0_weight() != doc.l0 {
        return Err(format!(
            "stored l0 weight {} differs from recomputed {}",
            doc.l0,
            representation.l0_weight()
        ));
    }
    let l1: Rat = doc.l1.parse().map_err(|_| format!("bad l1 weight `{}`", doc.l1))?;
    if representation.l1_weight() != l1 {
        return Err(format!(
            "stored l1 weight {} differs from recomputed {}",
            doc.l1,
            representation.l1_weight()
        ));
    }
    if doc.l0_optimal_up_to_bound {
        if doc.stats.weights != WeightMode::Uniform {
            return Err("optimality flag requires uniform weights".into());
        }
        if !tu_structural_check(&sys, &claim) {
            return Err("optimality flag requires pure difference binomials".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::monomials_below;
    use crate::sig_gb::syzygy_basis_up_to;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn system(var_names: &[&str], gens: &[&str]) -> GeneratorSystem {
        let vars = VariableTable::new(var_names.iter().copied()).unwrap();
        let polys = gens.iter().map(|t| parse_poly(t, &vars).unwrap()).collect();
        GeneratorSystem::new(vars, polys).unwrap()
    }

    fn xy_sys() -> GeneratorSystem {
        system(&["x", "y"], &["x*y - 1", "y*x - 1"])
    }

    #[test]
    fn tu_check_examples() {
        let mp = system(
            &["a", "as", "ad", "ads", "b"],
            &[
                "a*b - 1",
                "b*a - 1",
                "a*ad*a - a",
                "ad*a*ad - ad",
                "ads*as - a*ad",
                "as*ads - ad*a",
            ],
        );
        let claim = parse_poly("b - ad", mp.vars()).unwrap();
        assert!(tu_structural_check(&mp, &claim));

        let coeff2 = system(&["x", "y"], &["2*x*y - 1"]);
        let f = parse_poly("x", coeff2.vars()).unwrap();
        assert!(!tu_structural_check(&coeff2, &f));

        let three = system(&["x", "y"], &["x*y + y*x - 1"]);
        assert!(!tu_structural_check(&three, &f));
    }

    #[test]
    fn minimize_prefers_small_l1() {
        // [1 -1] y = [1]: (1, 0) has l1 = 1, beating e.g. (2, 1).
        let sys = xy_sys();
        let e1 = ModuleMonomial::basis(0, &sys);
        let e2 = ModuleMonomial::basis(1, &sys);
        let matrix =
            SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(-1))]]);
        let cs = CofactorSystem {
            basis: vec![e1, e2],
            matrix,
            rhs: vec![r(1)],
            row_monomials: vec![Word::one()],
        };
        let y = minimize(&cs, &Weights::Uniform).unwrap();
        assert_eq!(y, vec![r(1), r(0)]);
    }

    #[test]
    fn relevant_closure_two_generators() {
        let sys = xy_sys();
        let bound = SignatureBound::Degree(5);
        let (gb, syz) = syzygy_basis_up_to(&sys, &bound).unwrap();
        let _ = gb;
        // alpha = yx*e_1 + e_2 represents yxxy - 1.
        let yx = Word::from_letters(vec![1, 0]);
        let alpha = ModuleElement::from_terms([
            (ModuleMonomial::new(yx, 0, Word::one(), &sys), r(1)),
            (ModuleMonomial::basis(1, &sys), r(1)),
        ]);
        let v = relevant_syzygies(&alpha, &syz, &sys);
        // Closing off supp(alpha) = {yx*e_1, e_2} reaches exactly the two
        // four-term trivial syzygies through their constant-term monomials;
        // the two-term shift syzygies share no reachable monomial.
        assert_eq!(v.elements.len(), 2);
        for e in &v.elements {
            assert!(e.expand(&sys).is_zero());
            assert!(bound.admits(e.signature().unwrap()));
            assert_eq!(e.l0_weight(), 4);
        }
        assert_eq!(v.support_with(&alpha).len(), 6);
    }

    #[test]
    fn closure_empty_when_no_placement_matches() {
        // A syzygy basis with no elements leaves the closure empty.
        let sys = xy_sys();
        let bound = SignatureBound::Degree(3);
        let (_, syz) = syzygy_basis_up_to(&sys, &bound).unwrap();
        assert!(syz.elements.is_empty());
        let alpha = ModuleElement::monomial(ModuleMonomial::basis(0, &sys), r(1));
        let v = relevant_syzygies(&alpha, &syz, &sys);
        assert!(v.elements.is_empty());
    }

    #[test]
    fn prune_removes_fully_unique_singleton() {
        let sys = xy_sys();
        let bound = SignatureBound::Degree(5);
        let e1 = ModuleMonomial::basis(0, &sys);
        let x = Word::letter(0);
        // A "syzygy" whose support is entirely disjoint from alpha.
        let lonely = ModuleElement::from_terms([
            (ModuleMonomial::new(x.clone(), 0, x.clone(), &sys), r(1)),
            (ModuleMonomial::new(x.clone(), 1, x.clone(), &sys), r(-1)),
        ]);
        let v = RelevantSyzygies { elements: vec![lonely], bound: bound.clone() };
        let alpha = ModuleElement::monomial(e1, r(1));
        let (pruned, alpha_out) = prune(&v, &alpha, Norm::L1, 0);
        assert!(pruned.elements.is_empty());
        assert_eq!(alpha_out, alpha);
    }

    #[test]
    fn prune_binomial_elimination() {
        // A binomial whose monomials are both shared survives the singleton
        // test; the span swap then eliminates its smaller monomial from every
        // other element (including alpha), turning that monomial unique and
        // the binomial removable.
        let sys = xy_sys();
        let bound = SignatureBound::Degree(6);
        let e1 = ModuleMonomial::basis(0, &sys);
        let x = Word::letter(0);
        let mu = ModuleMonomial::new(x.clone(), 0, Word::one(), &sys);
        let nu = ModuleMonomial::new(Word::one(), 0, x.clone(), &sys);
        assert!(nu < mu);
        let binomial = ModuleElement::from_terms([(mu.clone(), r(1)), (nu.clone(), r(-1))]);
        let other = ModuleElement::from_terms([(nu.clone(), r(1)), (mu.clone(), r(1))]);
        let alpha = ModuleElement::from_terms([(nu.clone(), r(1)), (e1.clone(), r(1))]);
        let v = RelevantSyzygies {
            elements: vec![binomial, other],
            bound: bound.clone(),
        };
        let (pruned, alpha_out) = prune(&v, &alpha, Norm::L1, 0);
        assert_eq!(pruned.elements.len(), 1);
        assert_eq!(
            pruned.elements[0],
            ModuleElement::monomial(mu.clone(), r(2))
        );
        assert_eq!(
            alpha_out,
            ModuleElement::from_terms([(mu, r(1)), (e1, r(1))])
        );
    }

    #[test]
    fn build_system_recovers_alpha_when_no_syzygies() {
        let sys = xy_sys();
        let bound = SignatureBound::Degree(5);
        let yx = Word::from_letters(vec![1, 0]);
        let alpha = ModuleElement::from_terms([
            (ModuleMonomial::new(yx, 0, Word::one(), &sys), r(1)),
            (ModuleMonomial::basis(1, &sys), r(1)),
        ]);
        let f = alpha.expand(&sys);
        let v = RelevantSyzygies { elements: vec![], bound };
        let cs = build_system(&alpha, &v, &sys, &f).unwrap();
        assert_eq!(cs.basis.len(), 2);
        // Row monomials are strictly descending.
        for pair in cs.row_monomials.windows(2) {
            assert!(pair[0] > pair[1]);
        }
        let y = minimize(&cs, &Weights::Uniform).unwrap();
        let rebuilt = ModuleElement::from_terms(
            y.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (cs.basis[j].clone(), c)),
        );
        assert_eq!(rebuilt, alpha);
    }

    #[test]
    fn pipeline_generator_claim() {
        let sys = xy_sys();
        let f = sys.generator(0).clone();
        let cert = sparsify_pipeline(
            &f,
            &sys,
            &SignatureBound::Degree(5),
            None,
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!(cert.l0_weight, 1);
        assert_eq!(cert.l1_weight, r(1));
        assert!(cert.l0_optimal_up_to_bound);
        assert_eq!(cert.representation.expand(&sys), f);
    }

    #[test]
    fn pipeline_weight_two_certificate() {
        let sys = xy_sys();
        let f = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        let cert = sparsify_pipeline(
            &f,
            &sys,
            &SignatureBound::Degree(6),
            None,
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!(cert.representation.expand(&sys), f);
        assert_eq!(cert.l0_weight, 2);
        assert_eq!(cert.l1_weight, r(2));
        assert!(cert.l0_optimal_up_to_bound);
        // Column count never exceeds the full enumeration below the bound.
        let all = monomials_below(&SignatureBound::Degree(6), &sys).unwrap();
        assert!(cert.stats.matrix_cols <= all.len());
    }

    #[test]
    fn pipeline_rejects_non_member() {
        let sys = xy_sys();
        let one = NcPoly::one();
        match sparsify_pipeline(
            &one,
            &sys,
            &SignatureBound::Degree(5),
            None,
            &PipelineOptions::default(),
        ) {
            Err(SparsifyError::NotInIdealUpToBound { remainder }) => {
                assert_eq!(remainder, one);
            }
            other => panic!("expected NotInIdealUpToBound, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_rejects_bad_initial() {
        let sys = xy_sys();
        let f = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        let wrong = ModuleElement::monomial(ModuleMonomial::basis(0, &sys), r(1));
        match sparsify_pipeline(
            &f,
            &sys,
            &SignatureBound::Degree(6),
            Some(wrong),
            &PipelineOptions::default(),
        ) {
            Err(SparsifyError::InvalidInitial(_)) => {}
            other => panic!("expected InvalidInitial, got {other:?}"),
        }
    }

    #[test]
    fn certificate_document_round_trip() {
        let sys = xy_sys();
        let f = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        let cert = sparsify_pipeline(
            &f,
            &sys,
            &SignatureBound::Degree(6),
            None,
            &PipelineOptions::default(),
        )
        .unwrap();
        let doc = cert.to_document(&f, &sys);
        verify_document(&doc).unwrap();
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: CertificateDocument = serde_json::from_str(&json).unwrap();
        verify_document(&parsed).unwrap();

        // Tampering with a coefficient breaks verification.
        let mut tampered = parsed;
        tampered.representation[0].coeff = "7".into();
        assert!(verify_document(&tampered).is_err());
    }
}
