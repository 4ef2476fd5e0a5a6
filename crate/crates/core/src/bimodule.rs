//! The free bimodule of rank `r` over the free algebra: module monomials
//! `a e_i b`, module elements, the degree-over-position-over-term ordering,
//! signatures, and enumeration of module monomials below a signature bound.
//!
//! A module element is a cofactor representation: expanding `a e_i b` to
//! `a f_i b` maps it to the ideal element it represents.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{NcPoly, VariableTable, Word};
use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BimoduleError {
    #[error("generator system must contain at least one generator")]
    EmptySystem,
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generator {index} uses variables outside the table")]
    InvalidGenerator { index: usize },
    #[error("operation requires a nonzero module element")]
    ZeroElement,
    #[error("enumeration of {count} module monomials exceeds the cap of {cap}")]
    BoundTooLarge { count: u128, cap: usize },
}

/// The generators `f_1, ..., f_r` of the ideal, together with their variable
/// table. Degrees and leading data are cached since they enter every module
/// monomial comparison.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    vars: VariableTable,
    gens: Vec<NcPoly>,
    degs: Vec<usize>,
    lms: Vec<Word>,
}

impl GeneratorSystem {
    pub fn new(vars: VariableTable, gens: Vec<NcPoly>) -> Result<Self, BimoduleError> {
        if gens.is_empty() {
            return Err(BimoduleError::EmptySystem);
        }
        let mut degs = Vec::with_capacity(gens.len());
        let mut lms = Vec::with_capacity(gens.len());
        for (index, g) in gens.iter().enumerate() {
            if g.is_zero() {
                return Err(BimoduleError::ZeroGenerator { index });
            }
            if !g.support().all(|w| w.is_valid_for(&vars)) {
                return Err(BimoduleError::InvalidGenerator { index });
            }
            degs.push(g.deg() as usize);
            lms.push(g.lm().expect("nonzero").clone());
        }
        Ok(Self { vars, gens, degs, lms })
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    /// Number of generators (the rank of the bimodule).
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, index: usize) -> &NcPoly {
        &self.gens[index]
    }

    pub fn generators(&self) -> &[NcPoly] {
        &self.gens
    }

    pub fn gen_deg(&self, index: usize) -> usize {
        self.degs[index]
    }

    pub fn gen_lm(&self, index: usize) -> &Word {
        &self.lms[index]
    }

    pub fn min_gen_deg(&self) -> usize {
        *self.degs.iter().min().expect("nonempty")
    }

    pub fn max_degdiff(&self) -> usize {
        self.gens.iter().map(|g| g.degdiff() as usize).max().expect("nonempty")
    }
}

/// A module monomial `a e_i b`. The generator index is 0-based internally and
/// printed 1-based (`e_1`).
///
/// The derived `Ord` is the degree-over-position-over-term ordering: weighted
/// degree `|a| + |b| + deg(f_i)` first, then the tuple `(i, a, b)` with deglex
/// word comparisons. The weighted degree is cached at construction so the
/// ordering never needs the generator system again.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleMonomial {
    wdeg: usize,
    index: usize,
    left: Word,
    right: Word,
}

impl ModuleMonomial {
    pub fn new(left: Word, index: usize, right: Word, sys: &GeneratorSystem) -> Self {
        assert!(index < sys.rank(), "generator index out of range");
        let wdeg = left.len() + right.len() + sys.gen_deg(index);
        Self { wdeg, index, left, right }
    }

    /// The basis monomial `e_i`.
    pub fn basis(index: usize, sys: &GeneratorSystem) -> Self {
        Self::new(Word::one(), index, Word::one(), sys)
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    /// Weighted degree `|a| + |b| + deg(f_i)`, the degree of the expansion.
    pub fn weighted_degree(&self) -> usize {
        self.wdeg
    }

    /// `a * self * b`.
    pub fn place(&self, a: &Word, b: &Word) -> ModuleMonomial {
        ModuleMonomial {
            wdeg: self.wdeg + a.len() + b.len(),
            index: self.index,
            left: a.concat(&self.left),
            right: self.right.concat(b),
        }
    }

    /// Words `(a, b)` with `a * self * b == target`, if they exist.
    pub fn division(&self, target: &ModuleMonomial) -> Option<(Word, Word)> {
        if self.index != target.index {
            return None;
        }
        let a = target.left.strip_suffix(&self.left)?;
        let b = target.right.strip_prefix(&self.right)?;
        Some((a, b))
    }

    /// Expansion `a * f_i * b`.
    pub fn expansion(&self, sys: &GeneratorSystem) -> NcPoly {
        sys.generator(self.index).sandwich(&self.left, &self.right)
    }

    /// Text form `a*e_i*b` with unit words omitted, e.g. `yx*e_1`, `e_2`.
    pub fn to_text(&self, vars: &VariableTable) -> String {
        let mut parts = Vec::new();
        if !self.left.is_empty() {
            parts.push(self.left.to_text(vars));
        }
        parts.push(format!("e_{}", self.index + 1));
        if !self.right.is_empty() {
            parts.push(self.right.to_text(vars));
        }
        parts.join("*")
    }
}

/// Degree-over-position-over-term comparison. This is `ModuleMonomial`'s
/// derived `Ord`; the system argument only sanity-checks the cached degrees
/// in debug builds.
pub fn cmp_dopot(a: &ModuleMonomial, b: &ModuleMonomial, sys: &GeneratorSystem) -> Ordering {
    debug_assert_eq!(
        a.wdeg,
        a.left.len() + a.right.len() + sys.gen_deg(a.index)
    );
    debug_assert_eq!(
        b.wdeg,
        b.left.len() + b.right.len() + sys.gen_deg(b.index)
    );
    a.cmp(b)
}

/// An element of the free bimodule: a finite map from module monomials to
/// nonzero rational coefficients. The map is kept ascending in the module
/// ordering, so the signature is the last key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleElement {
    terms: BTreeMap<ModuleMonomial, Rat>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: ModuleMonomial, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (ModuleMonomial, Rat)>,
    {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// `self += c * m`.
    pub fn add_monomial(&mut self, m: ModuleMonomial, c: Rat) {
        self.add_term(m, c);
    }

    fn add_term(&mut self, m: ModuleMonomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// l0 weight: the number of terms.
    pub fn l0_weight(&self) -> usize {
        self.terms.len()
    }

    /// l1 weight: the sum of absolute coefficient values.
    pub fn l1_weight(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModuleMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ModuleMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &ModuleMonomial) -> Option<&Rat> {
        self.terms.get(m)
    }

    /// The signature: the largest module monomial in the support. `None` for
    /// the zero element.
    pub fn signature(&self) -> Option<&ModuleMonomial> {
        self.terms.keys().next_back()
    }

    /// Weighted degree: the maximum expansion degree over the support, which
    /// for a degree-compatible ordering is the signature's weighted degree.
    pub fn weighted_degree(&self) -> Option<usize> {
        self.signature().map(|s| s.weighted_degree())
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero();
        }
        ModuleElement {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_in_place(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= c;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rat, other: &ModuleElement) {
        if c.is_zero() {
            return;
        }
        for (m, coeff) in &other.terms {
            self.add_term(m.clone(), coeff * c);
        }
    }

    /// `self += c * a * other * b` with words `a`, `b`.
    pub fn add_scaled_placed(&mut self, c: &Rat, a: &Word, other: &ModuleElement, b: &Word) {
        if c.is_zero() {
            return;
        }
        for (m, coeff) in &other.terms {
            self.add_term(m.place(a, b), coeff * c);
        }
    }

    /// `a * self * b`.
    pub fn place(&self, a: &Word, b: &Word) -> ModuleElement {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.place(a, b), c.clone()))
                .collect(),
        }
    }

    /// The expansion `sum c_i a_i f_{j_i} b_i`: the ideal element this
    /// cofactor representation stands for.
    pub fn expand(&self, sys: &GeneratorSystem) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled_sandwich(c, &m.left, sys.generator(m.index), &m.right);
        }
        out
    }

    pub fn to_text(&self, vars: &VariableTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            use num_traits::One;
            if abs.is_one() {
                out.push_str(&m.to_text(vars));
            } else {
                out.push_str(&format!("{}*{}", abs, m.to_text(vars)));
            }
        }
        out
    }
}

/// The signature of a nonzero module element; errors on zero.
pub fn signature(alpha: &ModuleElement) -> Result<&ModuleMonomial, BimoduleError> {
    alpha.signature().ok_or(BimoduleError::ZeroElement)
}

/// A bound on signatures: either an explicit module monomial or a weighted
/// degree `n`, standing for the smallest module monomial of weighted degree
/// `n`. Since the ordering is degree-compatible, the degree form selects
/// exactly the monomials of weighted degree `< n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureBound {
    Explicit(ModuleMonomial),
    Degree(usize),
}

impl SignatureBound {
    /// Is `m` strictly below the bound?
    pub fn admits(&self, m: &ModuleMonomial) -> bool {
        match self {
            SignatureBound::Explicit(sigma) => m < sigma,
            SignatureBound::Degree(n) => m.weighted_degree() < *n,
        }
    }

    /// Largest weighted degree any admitted monomial can have.
    fn max_weighted_degree(&self) -> Option<usize> {
        match self {
            SignatureBound::Explicit(sigma) => Some(sigma.weighted_degree()),
            SignatureBound::Degree(n) => n.checked_sub(1),
        }
    }
}

/// Number of module monomials of weighted degree at most `max_wdeg`, without
/// materializing them.
fn count_up_to_degree(sys: &GeneratorSystem, max_wdeg: usize) -> u128 {
    let k = sys.vars().len() as u128;
    let mut total: u128 = 0;
    for i in 0..sys.rank() {
        let d = sys.gen_deg(i);
        if d > max_wdeg {
            continue;
        }
        let max_len = max_wdeg - d;
        let mut pow: u128 = 1; // k^len
        for len in 0..=max_len {
            total = total.saturating_add(pow.saturating_mul(len as u128 + 1));
            pow = pow.saturating_mul(k.max(1));
            if k == 0 {
                break;
            }
        }
    }
    total
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

/// All module monomials strictly below the bound, sorted ascending in the
/// module ordering. Fails fast when the enumeration would exceed `cap`.
pub fn monomials_below_with_cap(
    bound: &SignatureBound,
    sys: &GeneratorSystem,
    cap: usize,
) -> Result<Vec<ModuleMonomial>, BimoduleError> {
    let Some(max_wdeg) = bound.max_weighted_degree() else {
        return Ok(Vec::new());
    };
    let count = count_up_to_degree(sys, max_wdeg);
    if count > cap as u128 {
        return Err(BimoduleError::BoundTooLarge { count, cap });
    }
    let k = sys.vars().len();
    let mut out = Vec::new();
    for i in 0..sys.rank() {
        let d = sys.gen_deg(i);
        if d > max_wdeg {
            continue;
        }
        for total_len in 0..=(max_wdeg - d) {
            for left_len in (0..=total_len).rev() {
                let right_len = total_len - left_len;
                for left in words_of_length(k, left_len) {
                    for right in words_of_length(k, right_len) {
                        let m = ModuleMonomial::new(left.clone(), i, right, sys);
                        if bound.admits(&m) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Default enumeration cap for [`monomials_below_with_cap`].
pub const DEFAULT_MONOMIAL_CAP: usize = 10_000_000;

/// All module monomials strictly below the bound with the default cap.
pub fn monomials_below(
    bound: &SignatureBound,
    sys: &GeneratorSystem,
) -> Result<Vec<ModuleMonomial>, BimoduleError> {
    monomials_below_with_cap(bound, sys, DEFAULT_MONOMIAL_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use num_traits::One;

    fn xy_system() -> GeneratorSystem {
        let vars = VariableTable::new(["x", "y"]).unwrap();
        let g1 = parse_poly("x*y - 1", &vars).unwrap();
        let g2 = parse_poly("y*x - 1", &vars).unwrap();
        GeneratorSystem::new(vars, vec![g1, g2]).unwrap()
    }

    #[test]
    fn dopot_examples() {
        let sys = xy_system();
        let x = Word::letter(0);
        let yx = Word::from_letters(vec![1, 0]);
        // yx*e_1 vs e_2: weighted degree 4 vs 2.
        let a = ModuleMonomial::new(yx, 0, Word::one(), &sys);
        let b = ModuleMonomial::basis(1, &sys);
        assert_eq!(cmp_dopot(&a, &b, &sys), Ordering::Greater);
        // e_1 vs e_2: equal degree, position tie-break.
        let e1 = ModuleMonomial::basis(0, &sys);
        let e2 = ModuleMonomial::basis(1, &sys);
        assert_eq!(cmp_dopot(&e1, &e2, &sys), Ordering::Less);
        // x*e_1 vs e_1*x: tuple (1, x, 1) vs (1, 1, x).
        let left = ModuleMonomial::new(x.clone(), 0, Word::one(), &sys);
        let right = ModuleMonomial::new(Word::one(), 0, x, &sys);
        assert_eq!(cmp_dopot(&left, &right, &sys), Ordering::Greater);
    }

    #[test]
    fn expand_examples() {
        let sys = xy_system();
        let yx = Word::from_letters(vec![1, 0]);
        // yx*e_1 + e_2 expands to yxxy - 1.
        let alpha = ModuleElement::from_terms([
            (ModuleMonomial::new(yx, 0, Word::one(), &sys), Rat::one()),
            (ModuleMonomial::basis(1, &sys), Rat::one()),
        ]);
        let expected = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        assert_eq!(alpha.expand(&sys), expected);

        // e_1*x - x*e_2 is a syzygy: (xy-1)x - x(yx-1) = 0.
        let x = Word::letter(0);
        let syz = ModuleElement::from_terms([
            (ModuleMonomial::new(Word::one(), 0, x.clone(), &sys), Rat::one()),
            (ModuleMonomial::new(x, 1, Word::one(), &sys), -Rat::one()),
        ]);
        assert!(syz.expand(&sys).is_zero());
        assert!(ModuleElement::zero().expand(&sys).is_zero());
    }

    #[test]
    fn moore_penrose_expand() {
        // Variables in the order a, as, ad, ads, b; generators as in the
        // Moore-Penrose problem file.
        let vars = VariableTable::new(["a", "as", "ad", "ads", "b"]).unwrap();
        let gens = [
            "a*b - 1",
            "b*a - 1",
            "a*ad*a - a",
            "ad*a*ad - ad",
            "ads*as - a*ad",
            "as*ads - ad*a",
        ]
        .iter()
        .map(|t| parse_poly(t, &vars).unwrap())
        .collect();
        let sys = GeneratorSystem::new(vars, gens).unwrap();
        let ad = Word::letter(2);
        let b = Word::letter(4);
        let adab = Word::from_letters(vec![2, 0, 4]);
        // ad*e_1 - b*e_1 - b*e_3*b + e_2*ad*a*b expands to b - ad.
        let alpha = ModuleElement::from_terms([
            (ModuleMonomial::new(ad, 0, Word::one(), &sys), Rat::one()),
            (ModuleMonomial::new(b.clone(), 0, Word::one(), &sys), -Rat::one()),
            (ModuleMonomial::new(b, 2, Word::letter(4), &sys), -Rat::one()),
            (ModuleMonomial::new(Word::one(), 1, adab, &sys), Rat::one()),
        ]);
        let expected = parse_poly("b - ad", sys.vars()).unwrap();
        assert_eq!(alpha.expand(&sys), expected);
        assert_eq!(alpha.l0_weight(), 4);
        assert_eq!(alpha.l1_weight(), Rat::from_integer(4.into()));
    }

    #[test]
    fn signature_examples() {
        let sys = xy_system();
        let yx = Word::from_letters(vec![1, 0]);
        let m1 = ModuleMonomial::new(yx, 0, Word::one(), &sys);
        let m2 = ModuleMonomial::basis(1, &sys);
        let alpha = ModuleElement::from_terms([
            (m1.clone(), Rat::one()),
            (m2.clone(), Rat::one()),
        ]);
        assert_eq!(alpha.signature(), Some(&m1));

        let single = ModuleElement::monomial(m2.clone(), Rat::from_integer(7.into()));
        assert_eq!(single.signature(), Some(&m2));

        let e1 = ModuleMonomial::basis(0, &sys);
        let e2 = ModuleMonomial::basis(1, &sys);
        let both = ModuleElement::from_terms([
            (e1, Rat::one()),
            (e2.clone(), Rat::one()),
        ]);
        assert_eq!(both.signature(), Some(&e2));

        assert!(signature(&ModuleElement::zero()).is_err());
    }

    #[test]
    fn monomials_below_small() {
        let sys = xy_system();
        // Both generators have degree 2; below degree 3 only e_1, e_2 fit.
        let ms = monomials_below(&SignatureBound::Degree(3), &sys).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0], ModuleMonomial::basis(0, &sys));
        assert_eq!(ms[1], ModuleMonomial::basis(1, &sys));

        // Bound below all generator degrees: nothing.
        let none = monomials_below(&SignatureBound::Degree(2), &sys).unwrap();
        assert!(none.is_empty());

        // Ascending and downward closed.
        let ms4 = monomials_below(&SignatureBound::Degree(5), &sys).unwrap();
        for pair in ms4.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn monomials_below_cap() {
        let sys = xy_system();
        match monomials_below_with_cap(&SignatureBound::Degree(30), &sys, 1000) {
            Err(BimoduleError::BoundTooLarge { .. }) => {}
            other => panic!("expected BoundTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn explicit_bound_matches_order() {
        let sys = xy_system();
        let sigma = ModuleMonomial::new(Word::letter(0), 1, Word::one(), &sys);
        let ms = monomials_below(&SignatureBound::Explicit(sigma.clone()), &sys).unwrap();
        assert!(ms.iter().all(|m| *m < sigma));
        // Everything of smaller weighted degree is present.
        let coarse = monomials_below(&SignatureBound::Degree(3), &sys).unwrap();
        for m in coarse {
            assert!(ms.contains(&m));
        }
    }
}
