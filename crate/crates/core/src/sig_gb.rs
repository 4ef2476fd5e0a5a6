//! Signature-based enumeration of a labeled Groebner basis and of a Groebner
//! basis of the syzygy module up to a signature bound, plus membership
//! tracing.
//!
//! The completion loop keeps a signature-ordered queue of labeled candidates:
//! the generators, the trivial syzygies `f_i u e_j - e_i u f_j` over all
//! middle words `u` below the bound, and S-polynomials from overlap and
//! inclusion ambiguities. Candidates are popped smallest signature first and
//! regular-reduced (reducers must have strictly smaller placed signature, so
//! the signature of a candidate never changes). A nonzero result joins the
//! labeled basis; a zero result's label is a syzygy. Syzygies whose signature
//! is a placement multiple of an earlier one are dropped, which keeps the
//! emitted signatures pairwise distinct and ascending.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_traits::One;
use thiserror::Error;

use crate::bimodule::{
    monomials_below_with_cap, BimoduleError, GeneratorSystem, ModuleElement, ModuleMonomial,
    SignatureBound, DEFAULT_MONOMIAL_CAP,
};
use crate::poly::{NcPoly, Word};
use crate::Rat;

#[derive(Debug, Error)]
pub enum SigGbError {
    #[error(transparent)]
    BoundTooLarge(#[from] BimoduleError),
    #[error("time budget of {budget:?} exhausted after {elapsed:?}")]
    Timeout { budget: Duration, elapsed: Duration },
}

/// A polynomial carried together with the module element recording how it was
/// derived from the generators: `poly == label.expand(sys)`.
#[derive(Debug, Clone)]
pub struct LabeledPoly {
    pub poly: NcPoly,
    pub label: ModuleElement,
}

/// A syzygy with its signature cached.
#[derive(Debug, Clone)]
pub struct SyzygyElement {
    pub element: ModuleElement,
    pub signature: ModuleMonomial,
}

/// A Groebner basis of the syzygy module up to `bound`: the elements all
/// expand to zero, their signatures are pairwise distinct, strictly below the
/// bound, and listed in ascending order.
#[derive(Debug, Clone)]
pub struct SyzygyBasis {
    pub elements: Vec<SyzygyElement>,
    pub bound: SignatureBound,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A minimal common superword of two leading monomials: placing the first
/// word as `left_first * u * right_first` and the second as
/// `left_second * w * right_second` yields the same superword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub first: usize,
    pub second: usize,
    pub left_first: Word,
    pub right_first: Word,
    pub left_second: Word,
    pub right_second: Word,
}

/// All overlap and inclusion ambiguities of two nonempty words, in both
/// directions, without duplicates.
pub fn ambiguities(u: &Word, w: &Word) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    let e = Word::one;
    // Overlaps u-then-w: a proper suffix of u equals a proper prefix of w.
    for s_len in 1..u.len().min(w.len()) {
        if u.letters()[u.len() - s_len..] == w.letters()[..s_len] {
            out.push(Ambiguity {
                kind: AmbiguityKind::Overlap,
                first: 0,
                second: 1,
                left_first: e(),
                right_first: w.subword(s_len, w.len()),
                left_second: u.subword(0, u.len() - s_len),
                right_second: e(),
            });
        }
    }
    // Overlaps w-then-u, skipped when the words coincide.
    if u != w {
        for s_len in 1..u.len().min(w.len()) {
            if w.letters()[w.len() - s_len..] == u.letters()[..s_len] {
                out.push(Ambiguity {
                    kind: AmbiguityKind::Overlap,
                    first: 0,
                    second: 1,
                    left_first: w.subword(0, w.len() - s_len),
                    right_first: e(),
                    left_second: e(),
                    right_second: u.subword(s_len, u.len()),
                });
            }
        }
    }
    // Inclusions: the strictly shorter word inside the longer one.
    if w.len() < u.len() {
        for p in u.occurrences(w) {
            out.push(Ambiguity {
                kind: AmbiguityKind::Inclusion,
                first: 0,
                second: 1,
                left_first: e(),
                right_first: e(),
                left_second: u.subword(0, p),
                right_second: u.subword(p + w.len(), u.len()),
            });
        }
    } else if u.len() < w.len() {
        for p in w.occurrences(u) {
            out.push(Ambiguity {
                kind: AmbiguityKind::Inclusion,
                first: 0,
                second: 1,
                left_first: w.subword(0, p),
                right_first: w.subword(p + u.len(), w.len()),
                left_second: e(),
                right_second: e(),
            });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SigGbConfig {
    /// Cap on the module monomial enumeration below the bound.
    pub monomial_cap: usize,
    /// Wall-clock budget for the completion loop.
    pub time_budget: Option<Duration>,
    /// Skip candidates whose signature is a placement multiple of an emitted
    /// syzygy signature. This is the classical syzygy criterion; disabling it
    /// only adds redundant work, which the oracle equivalence tests exercise.
    pub syzygy_criterion: bool,
}

impl Default for SigGbConfig {
    fn default() -> Self {
        Self {
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            time_budget: None,
            syzygy_criterion: true,
        }
    }
}

struct Candidate {
    sig: ModuleMonomial,
    seq: u64,
    poly: NcPoly,
    label: ModuleElement,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.seq == other.seq
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap pops the maximum, we want the smallest
        // signature first.
        other
            .sig
            .cmp(&self.sig)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct GbEntry {
    poly: NcPoly,
    label: ModuleElement,
    sig: ModuleMonomial,
    lm: Word,
}

struct Completion<'a> {
    sys: &'a GeneratorSystem,
    bound: &'a SignatureBound,
    config: &'a SigGbConfig,
    heap: BinaryHeap<Candidate>,
    seq: u64,
    gb: Vec<GbEntry>,
    started: Instant,
}

impl<'a> Completion<'a> {
    fn push(&mut self, poly: NcPoly, label: ModuleElement) {
        let Some(sig) = label.signature() else {
            debug_assert!(poly.is_zero());
            return;
        };
        if !self.bound.admits(sig) {
            return;
        }
        let sig = sig.clone();
        self.heap.push(Candidate { sig, seq: self.seq, poly, label });
        self.seq += 1;
    }

    fn seed_generators(&mut self) {
        for i in 0..self.sys.rank() {
            let label = ModuleElement::monomial(ModuleMonomial::basis(i, self.sys), Rat::one());
            self.push(self.sys.generator(i).clone(), label);
        }
    }

    /// Trivial syzygies `f_i u e_j - e_i u f_j` for all generator pairs and
    /// all middle words `u` with signature below the bound. These syzygies
    /// expand to `f_i u f_j - f_i u f_j = 0` and seed the syzygy basis.
    fn seed_trivial_syzygies(&mut self) {
        let max_wdeg = match self.bound {
            SignatureBound::Degree(n) => match n.checked_sub(1) {
                Some(d) => d,
                None => return,
            },
            SignatureBound::Explicit(sigma) => sigma.weighted_degree(),
        };
        let k = self.sys.vars().len();
        for i in 0..self.sys.rank() {
            for j in 0..self.sys.rank() {
                let base = self.sys.gen_deg(i) + self.sys.gen_deg(j);
                if base > max_wdeg {
                    continue;
                }
                for len in 0..=(max_wdeg - base) {
                    for u in words_of_length(k, len) {
                        let mut label = ModuleElement::zero();
                        // f_i * u * e_j
                        for (m, c) in self.sys.generator(i).terms() {
                            let mm =
                                ModuleMonomial::new(m.concat(&u), j, Word::one(), self.sys);
                            label.add_monomial(mm, c.clone());
                        }
                        // - e_i * u * f_j
                        for (m, c) in self.sys.generator(j).terms() {
                            let mm =
                                ModuleMonomial::new(Word::one(), i, u.concat(m), self.sys);
                            label.add_monomial(mm, -c.clone());
                        }
                        self.push(NcPoly::zero(), label);
                    }
                }
            }
        }
    }

    fn check_time(&self) -> Result<(), SigGbError> {
        if let Some(budget) = self.config.time_budget {
            let elapsed = self.started.elapsed();
            if elapsed > budget {
                return Err(SigGbError::Timeout { budget, elapsed });
            }
        }
        Ok(())
    }

    /// Regular top-reduction: reducers must have placed signature strictly
    /// below the candidate's signature, so the signature is preserved.
    /// Among eligible reducers the one with the smallest placed signature
    /// wins, ties broken by basis index.
    fn regular_reduce(&self, sig: &ModuleMonomial, mut poly: NcPoly, mut label: ModuleElement) -> (NcPoly, ModuleElement) {
        'outer: while let Some(lm) = poly.lm().cloned() {
            let mut best: Option<(ModuleMonomial, usize, Word, Word)> = None;
            for (idx, entry) in self.gb.iter().enumerate() {
                for p in lm.occurrences(&entry.lm) {
                    let a = lm.subword(0, p);
                    let b = lm.subword(p + entry.lm.len(), lm.len());
                    let placed = entry.sig.place(&a, &b);
                    if placed >= *sig {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((bsig, bidx, _, _)) => {
                            placed < *bsig || (placed == *bsig && idx < *bidx)
                        }
                    };
                    if better {
                        best = Some((placed, idx, a, b));
                    }
                }
            }
            match best {
                None => break 'outer,
                Some((_, idx, a, b)) => {
                    let entry = &self.gb[idx];
                    let c = -poly.lc().expect("nonzero").clone();
                    poly.add_scaled_sandwich(&c, &a, &entry.poly, &b);
                    label.add_scaled_placed(&c, &a, &entry.label, &b);
                }
            }
        }
        (poly, label)
    }

    fn enqueue_spolys(&mut self, new_idx: usize) {
        let new_lm = self.gb[new_idx].lm.clone();
        for other_idx in 0..=new_idx {
            let other_lm = self.gb[other_idx].lm.clone();
            for amb in ambiguities(&new_lm, &other_lm) {
                let a1 = &amb.left_first;
                let b1 = &amb.right_first;
                let a2 = &amb.left_second;
                let b2 = &amb.right_second;
                // Both basis entries are monic, so the leading terms cancel.
                let mut poly = self.gb[new_idx].poly.sandwich(a1, b1);
                poly.add_scaled_sandwich(&-Rat::one(), a2, &self.gb[other_idx].poly, b2);
                let mut label = self.gb[new_idx].label.place(a1, b1);
                label.add_scaled_placed(&-Rat::one(), a2, &self.gb[other_idx].label, b2);
                self.push(poly, label);
            }
        }
    }

    fn covered(kept: &[SyzygyElement], sig: &ModuleMonomial) -> bool {
        kept.iter().any(|h| h.signature.division(sig).is_some())
    }

    fn run(mut self) -> Result<(Vec<LabeledPoly>, SyzygyBasis), SigGbError> {
        self.seed_generators();
        self.seed_trivial_syzygies();
        let mut kept: Vec<SyzygyElement> = Vec::new();
        let mut kept_sorted = true;
        while let Some(cand) = self.heap.pop() {
            self.check_time()?;
            if self.config.syzygy_criterion && Self::covered(&kept, &cand.sig) {
                continue;
            }
            let (poly, label) = self.regular_reduce(&cand.sig, cand.poly, cand.label);
            if poly.is_zero() {
                if label.is_zero() {
                    continue;
                }
                debug_assert_eq!(*label.signature().unwrap(), cand.sig);
                if !Self::covered(&kept, &cand.sig) {
                    if let Some(last) = kept.last() {
                        if last.signature > cand.sig {
                            kept_sorted = false;
                        }
                    }
                    let mut element = label;
                    let lead = element.coeff(&cand.sig).expect("signature term").clone();
                    element.scale_in_place(&lead.recip());
                    kept.push(SyzygyElement { element, signature: cand.sig });
                }
            } else {
                let lc = poly.lc().expect("nonzero").clone();
                let inv = lc.recip();
                let mut poly = poly;
                let mut label = label;
                poly.scale_in_place(&inv);
                label.scale_in_place(&inv);
                let entry = GbEntry {
                    lm: poly.lm().expect("nonzero").clone(),
                    sig: cand.sig,
                    poly,
                    label,
                };
                self.gb.push(entry);
                self.enqueue_spolys(self.gb.len() - 1);
            }
        }
        // Singular S-polynomials can surface a syzygy out of order; restore
        // the ascending-signature, mutually uncovered form.
        if !kept_sorted {
            kept.sort_by(|a, b| a.signature.cmp(&b.signature));
            let mut filtered: Vec<SyzygyElement> = Vec::new();
            for h in kept {
                if !Self::covered(&filtered, &h.signature) {
                    filtered.push(h);
                }
            }
            kept = filtered;
        }
        let gb = self
            .gb
            .into_iter()
            .map(|e| LabeledPoly { poly: e.poly, label: e.label })
            .collect();
        Ok((
            gb,
            SyzygyBasis { elements: kept, bound: self.bound.clone() },
        ))
    }
}

fn words_of_length(k: usize, len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![Word::one()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    loop {
        out.push(Word::from_letters(current.clone()));
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if (current[pos] as usize) < k {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Enumerate a labeled Groebner basis of the ideal and a Groebner basis of
/// the syzygy module, both truncated at the signature bound.
pub fn syzygy_basis_up_to(
    sys: &GeneratorSystem,
    bound: &SignatureBound,
) -> Result<(Vec<LabeledPoly>, SyzygyBasis), SigGbError> {
    syzygy_basis_up_to_with(sys, bound, &SigGbConfig::default())
}

pub fn syzygy_basis_up_to_with(
    sys: &GeneratorSystem,
    bound: &SignatureBound,
    config: &SigGbConfig,
) -> Result<(Vec<LabeledPoly>, SyzygyBasis), SigGbError> {
    // Fail fast if the signature stratum below the bound is not enumerable.
    monomials_below_with_cap(bound, sys, config.monomial_cap).map(drop)?;
    let completion = Completion {
        sys,
        bound,
        config,
        heap: BinaryHeap::new(),
        seq: 0,
        gb: Vec::new(),
        started: Instant::now(),
    };
    completion.run()
}

/// Failure result of [`trace_membership`]: the irreducible remainder. The
/// polynomial may still lie in the ideal; membership is only semidecidable.
#[derive(Debug, Clone)]
pub struct NotReducedToZero {
    pub remainder: NcPoly,
}

/// Reduce `f` to zero by the labeled basis, adding the labels of the
/// reducers; on success the result is a cofactor representation of `f` with
/// signature below the bound.
///
/// Reductions only use reducers whose placed label signature is below the
/// bound. Among eligible reducers the smallest placed signature wins, ties
/// broken by basis index.
pub fn trace_membership(
    f: &NcPoly,
    gb: &[LabeledPoly],
    sys: &GeneratorSystem,
    bound: &SignatureBound,
) -> Result<ModuleElement, NotReducedToZero> {
    let _ = sys;
    let mut remainder = f.clone();
    let mut alpha = ModuleElement::zero();
    while let Some(lm) = remainder.lm().cloned() {
        let mut best: Option<(ModuleMonomial, usize, Word, Word)> = None;
        for (idx, entry) in gb.iter().enumerate() {
            let Some(glm) = entry.poly.lm() else { continue };
            let Some(gsig) = entry.label.signature() else { continue };
            for p in lm.occurrences(glm) {
                let a = lm.subword(0, p);
                let b = lm.subword(p + glm.len(), lm.len());
                let placed = gsig.place(&a, &b);
                if !bound.admits(&placed) {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((bsig, bidx, _, _)) => placed < *bsig || (placed == *bsig && idx < *bidx),
                };
                if better {
                    best = Some((placed, idx, a, b));
                }
            }
        }
        match best {
            None => return Err(NotReducedToZero { remainder }),
            Some((_, idx, a, b)) => {
                let entry = &gb[idx];
                let glc = entry.poly.lc().expect("nonzero");
                let c = remainder.lc().expect("nonzero") / glc;
                remainder.add_scaled_sandwich(&-c.clone(), &a, &entry.poly, &b);
                alpha.add_scaled_placed(&c, &a, &entry.label, &b);
            }
        }
    }
    Ok(alpha)
}

/// Signature-compatible rewriting of a syzygy to zero: repeatedly cancel the
/// signature term with a placement of a basis syzygy. Every rewriter used has
/// placed signature equal to the current signature, so the signatures in the
/// rewriting sequence strictly decrease. Returns `false` when the signature
/// of the current element is not a placement multiple of any basis signature.
pub fn rewrites_to_zero(gamma: &ModuleElement, basis: &SyzygyBasis) -> bool {
    let mut current = gamma.clone();
    while let Some(sig) = current.signature().cloned() {
        let mut reduced = false;
        for h in &basis.elements {
            if let Some((a, b)) = h.signature.division(&sig) {
                let hc = h.element.coeff(&h.signature).expect("signature term");
                let c = current.coeff(&sig).expect("signature term") / hc;
                current.add_scaled_placed(&-c, &a, &h.element, &b);
                reduced = true;
                break;
            }
        }
        if !reduced {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VariableTable};

    fn system(var_names: &[&str], gens: &[&str]) -> GeneratorSystem {
        let vars = VariableTable::new(var_names.iter().copied()).unwrap();
        let polys = gens.iter().map(|t| parse_poly(t, &vars).unwrap()).collect();
        GeneratorSystem::new(vars, polys).unwrap()
    }

    #[test]
    fn ambiguity_examples() {
        let xy = Word::from_letters(vec![0, 1]);
        let yx = Word::from_letters(vec![1, 0]);
        // (xy, yx): one overlap with superword xyx.
        let ambs = ambiguities(&xy, &yx);
        let overlaps: Vec<_> = ambs
            .iter()
            .filter(|a| a.kind == AmbiguityKind::Overlap)
            .collect();
        assert_eq!(overlaps.len(), 2); // xy.x = x.yx and yx.y = y.xy
        let sup: Vec<Word> = overlaps
            .iter()
            .map(|a| xy.sandwich(&a.left_first, &a.right_first))
            .collect();
        assert!(sup.contains(&Word::from_letters(vec![0, 1, 0])));
        assert!(sup.contains(&Word::from_letters(vec![1, 0, 1])));

        // (xy, xy): no self-overlap, no proper inclusion.
        assert!(ambiguities(&xy, &xy).is_empty());

        // (xyx, y): one inclusion at position 2 (1-based).
        let xyx = Word::from_letters(vec![0, 1, 0]);
        let y = Word::letter(1);
        let ambs = ambiguities(&xyx, &y);
        assert_eq!(ambs.len(), 1);
        assert_eq!(ambs[0].kind, AmbiguityKind::Inclusion);
        assert_eq!(ambs[0].left_second, Word::letter(0));
        assert_eq!(ambs[0].right_second, Word::letter(0));
    }

    #[test]
    fn self_overlap_periodic() {
        let xx = Word::from_letters(vec![0, 0]);
        let ambs = ambiguities(&xx, &xx);
        assert_eq!(ambs.len(), 1);
        assert_eq!(ambs[0].kind, AmbiguityKind::Overlap);
    }

    #[test]
    fn syzygy_basis_two_generators() {
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        let (gb, syz) = syzygy_basis_up_to(&sys, &SignatureBound::Degree(5)).unwrap();
        assert!(!gb.is_empty());
        for entry in &gb {
            assert_eq!(entry.label.expand(&sys), entry.poly);
        }
        for h in &syz.elements {
            assert!(h.element.expand(&sys).is_zero());
            assert!(SignatureBound::Degree(5).admits(&h.signature));
        }
        // Ascending, pairwise distinct signatures.
        for pair in syz.elements.windows(2) {
            assert!(pair[0].signature < pair[1].signature);
        }
        // The xyx overlap collapses: (xy-1)x - x(yx-1) = 0, giving a syzygy
        // with support {e_1*x, x*e_2} up to sign and normalization.
        let x = Word::letter(0);
        let e1x = ModuleMonomial::new(Word::one(), 0, x.clone(), &sys);
        let xe2 = ModuleMonomial::new(x, 1, Word::one(), &sys);
        let found = syz.elements.iter().any(|h| {
            h.element.l0_weight() == 2
                && h.element.coeff(&e1x).is_some()
                && h.element.coeff(&xe2).is_some()
        });
        assert!(found, "expected the e_1*x - x*e_2 syzygy");
    }

    #[test]
    fn syzygy_basis_single_generator() {
        let sys = system(&["x", "y"], &["x*y - 1"]);
        let (_, syz) = syzygy_basis_up_to(&sys, &SignatureBound::Degree(5)).unwrap();
        // The commutation syzygy x*y*e_1 - e_1*x*y appears with signature
        // xy*e_1.
        let xy = Word::from_letters(vec![0, 1]);
        let sig = ModuleMonomial::new(xy, 0, Word::one(), &sys);
        let found = syz.elements.iter().any(|h| h.signature == sig);
        assert!(found, "expected a syzygy with signature xy*e_1");
        for h in &syz.elements {
            assert!(h.element.expand(&sys).is_zero());
        }
    }

    #[test]
    fn bound_below_generators_is_empty() {
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        let (gb, syz) = syzygy_basis_up_to(&sys, &SignatureBound::Degree(2)).unwrap();
        assert!(gb.is_empty());
        assert!(syz.elements.is_empty());
    }

    #[test]
    fn trace_membership_examples() {
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        let bound = SignatureBound::Degree(6);
        let (gb, _) = syzygy_basis_up_to(&sys, &bound).unwrap();

        // f_1 itself traces to a representation expanding to f_1.
        let f1 = sys.generator(0).clone();
        let alpha = trace_membership(&f1, &gb, &sys, &bound).unwrap();
        assert_eq!(alpha.expand(&sys), f1);

        // yxxy - 1 is in the ideal; any trace must expand back to it.
        let f = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        let alpha = trace_membership(&f, &gb, &sys, &bound).unwrap();
        assert_eq!(alpha.expand(&sys), f);
        assert!(bound.admits(alpha.signature().unwrap()));

        // 1 is not in the ideal (evaluate x = y = 1).
        let one = NcPoly::one();
        let err = trace_membership(&one, &gb, &sys, &bound).unwrap_err();
        assert_eq!(err.remainder, one);
    }

    #[test]
    fn trivial_syzygies_rewrite_to_zero() {
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        let bound = SignatureBound::Degree(5);
        let (_, syz) = syzygy_basis_up_to(&sys, &bound).unwrap();
        for i in 0..sys.rank() {
            for j in 0..sys.rank() {
                let mut gamma = ModuleElement::zero();
                for (m, c) in sys.generator(i).terms() {
                    let mm = ModuleMonomial::new(m.clone(), j, Word::one(), &sys);
                    gamma.add_monomial(mm, c.clone());
                }
                for (m, c) in sys.generator(j).terms() {
                    let mm = ModuleMonomial::new(Word::one(), i, m.clone(), &sys);
                    gamma.add_monomial(mm, -c.clone());
                }
                if gamma.is_zero() {
                    continue;
                }
                if bound.admits(gamma.signature().unwrap()) {
                    assert!(rewrites_to_zero(&gamma, &syz), "trivial syzygy {i},{j}");
                }
            }
        }
    }
}
