//! Brute-force and dense linear-algebra reference solvers: the degree bound
//! for minimal representations, exhaustive sparse solving (Min-RVLS), the
//! full enumeration algorithm built on it, and a dense syzygy-kernel oracle.
//!
//! These are desk-scale solvers and the independent test oracles for the
//! signature-based and LP-based pipeline.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bimodule::{
    monomials_below_with_cap, BimoduleError, GeneratorSystem, ModuleElement, ModuleMonomial,
    SignatureBound,
};
use crate::matrix::SparseRationalMatrix;
use crate::poly::{NcPoly, Word};
use crate::Rat;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("column enumeration of {count} entries exceeds the cap of {cap}")]
    BoundTooLarge { count: u128, cap: usize },
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
}

/// Default cap on the number of enumerated columns.
pub const DEFAULT_COLUMN_CAP: usize = 1_000_000;

/// Degree bound for minimal cofactor representations of weight at most `n`:
/// `deg(f) + n * max_i degdiff(f_i)`.
pub fn degree_bound(f: &NcPoly, sys: &GeneratorSystem, n: usize) -> usize {
    assert!(!f.is_zero(), "degree bound requires a nonzero polynomial");
    f.deg() as usize + n * sys.max_degdiff()
}

/// The column space of the exhaustive search: module monomials paired with
/// their expansions, deduplicated by expansion, plus the right-hand side.
#[derive(Debug, Clone)]
pub struct DenseSystem {
    pub columns: Vec<(ModuleMonomial, NcPoly)>,
    pub rhs: NcPoly,
}

impl DenseSystem {
    /// All placements `a f_i b` of degree at most `max_deg`, as a set of
    /// polynomials: distinct placements with equal expansion are collapsed
    /// onto the smallest module monomial.
    pub fn up_to_degree(
        f: &NcPoly,
        sys: &GeneratorSystem,
        max_deg: usize,
        cap: usize,
    ) -> Result<Self, OracleError> {
        let monomials =
            monomials_below_with_cap(&SignatureBound::Degree(max_deg + 1), sys, cap)
                .map_err(|e| match e {
                    BimoduleError::BoundTooLarge { count, cap } => {
                        OracleError::BoundTooLarge { count, cap }
                    }
                    other => OracleError::Bimodule(other),
                })?;
        let mut seen: HashMap<Vec<(Word, Rat)>, usize> = HashMap::new();
        let mut columns = Vec::new();
        for m in monomials {
            let expansion = m.expansion(sys);
            let key: Vec<(Word, Rat)> = expansion
                .terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, columns.len());
            columns.push((m, expansion));
        }
        Ok(Self { columns, rhs: f.clone() })
    }

    /// Rows (distinct polynomial monomials, descending), the sparse matrix of
    /// column expansions, and the right-hand side vector.
    pub fn to_linear_system(&self) -> (Vec<Word>, SparseRationalMatrix, Vec<Rat>) {
        let mut rows: Vec<Word> = Vec::new();
        {
            let mut set = std::collections::BTreeSet::new();
            for (_, expansion) in &self.columns {
                for w in expansion.support() {
                    set.insert(w.clone());
                }
            }
            for w in self.rhs.support() {
                set.insert(w.clone());
            }
            rows.extend(set.into_iter().rev());
        }
        let row_index: HashMap<&Word, usize> =
            rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut matrix = SparseRationalMatrix::new(rows.len());
        for (_, expansion) in &self.columns {
            let col = expansion
                .terms()
                .map(|(w, c)| (row_index[w], c.clone()))
                .collect();
            matrix.push_column(col);
        }
        let mut rhs = vec![Rat::zero(); rows.len()];
        for (w, c) in self.rhs.terms() {
            rhs[row_index[w]] = c.clone();
        }
        (rows, matrix, rhs)
    }
}

/// Exhaustive sparse solving of `A y = b` with at most `n` nonzero entries
/// (Min-RVLS). Column subsets are searched in increasing size and, within a
/// size, in lexicographic order, so the first feasible subset size is the
/// exact l0 optimum and the result is canonical.
pub fn min_rvls(a: &SparseRationalMatrix, b: &[Rat], n: usize) -> Option<Vec<Rat>> {
    assert_eq!(a.nrows(), b.len(), "dimension mismatch");
    let ncols = a.ncols();
    let n = n.min(ncols);

    // Bitsets of row supports for fast pruning.
    let blocks = a.nrows().div_ceil(64).max(1);
    let col_mask: Vec<Vec<u64>> = (0..ncols)
        .map(|j| {
            let mut mask = vec![0u64; blocks];
            for (r, _) in a.column(j) {
                mask[r / 64] |= 1 << (r % 64);
            }
            mask
        })
        .collect();
    let mut rhs_mask = vec![0u64; blocks];
    for (r, v) in b.iter().enumerate() {
        if !v.is_zero() {
            rhs_mask[r / 64] |= 1 << (r % 64);
        }
    }

    if b.iter().all(Zero::is_zero) {
        return Some(vec![Rat::zero(); ncols]);
    }

    for size in 1..=n {
        let mut subset: Vec<usize> = (0..size).collect();
        if size > ncols {
            break;
        }
        loop {
            if subset_covers(&col_mask, &rhs_mask, &subset) {
                if let Some(y) = solve_on_subset(a, b, &subset) {
                    let mut full = vec![Rat::zero(); ncols];
                    for (pos, &j) in subset.iter().enumerate() {
                        full[j] = y[pos].clone();
                    }
                    return Some(full);
                }
            }
            if !next_combination(&mut subset, ncols) {
                break;
            }
        }
    }
    None
}

fn subset_covers(col_mask: &[Vec<u64>], rhs_mask: &[u64], subset: &[usize]) -> bool {
    for (block, &need) in rhs_mask.iter().enumerate() {
        let mut have = 0u64;
        for &j in subset {
            have |= col_mask[j][block];
        }
        if need & !have != 0 {
            return false;
        }
    }
    true
}

fn next_combination(subset: &mut [usize], ncols: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < ncols - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
}

/// Solve `A_S y = b` exactly on the chosen columns; any solution is fine,
/// free coordinates are set to zero.
fn solve_on_subset(a: &SparseRationalMatrix, b: &[Rat], subset: &[usize]) -> Option<Vec<Rat>> {
    // Involved rows: union of supports plus the rhs support.
    let mut rows: Vec<usize> = Vec::new();
    {
        let mut seen = vec![false; a.nrows()];
        for &j in subset {
            for (r, _) in a.column(j) {
                if !seen[*r] {
                    seen[*r] = true;
                    rows.push(*r);
                }
            }
        }
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() && !seen[r] {
                // Uncovered rhs row: infeasible (caller prefilters, but stay
                // safe).
                return None;
            }
        }
        rows.sort_unstable();
    }
    let k = subset.len();
    let mut dense: Vec<Vec<Rat>> = rows
        .iter()
        .map(|&r| {
            let mut row = vec![Rat::zero(); k + 1];
            row[k] = b[r].clone();
            row
        })
        .collect();
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    for (pos, &j) in subset.iter().enumerate() {
        for (r, v) in a.column(j) {
            dense[row_pos[r]][pos] = v.clone();
        }
    }
    // Gaussian elimination with consistency check.
    let nrows = dense.len();
    let mut pivot_of_col = vec![usize::MAX; k];
    let mut rank = 0usize;
    for col in 0..k {
        let Some(pr) = (rank..nrows).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, pr);
        let inv = dense[rank][col].recip();
        for entry in dense[rank][col..].iter_mut() {
            *entry *= &inv;
        }
        for r in 0..nrows {
            if r == rank || dense[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut dense[r][col], Rat::zero());
            for c in col + 1..=k {
                let delta = &factor * &dense[rank][c];
                dense[r][c] -= delta;
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for row in dense.iter().skip(rank) {
        if !row[k].is_zero() {
            return None;
        }
    }
    let mut y = vec![Rat::zero(); k];
    for col in 0..k {
        if pivot_of_col[col] != usize::MAX {
            y[col] = dense[pivot_of_col[col]][k].clone();
        }
    }
    Some(y)
}

/// Exhaustive sparse cofactor representation: enumerate all placements up to
/// the degree bound and delegate to [`min_rvls`]. Returns a representation of
/// weight at most `n` if one exists.
pub fn algorithm1(
    f: &NcPoly,
    sys: &GeneratorSystem,
    n: usize,
) -> Result<Option<ModuleElement>, OracleError> {
    algorithm1_with_cap(f, sys, n, DEFAULT_COLUMN_CAP)
}

pub fn algorithm1_with_cap(
    f: &NcPoly,
    sys: &GeneratorSystem,
    n: usize,
    cap: usize,
) -> Result<Option<ModuleElement>, OracleError> {
    if f.is_zero() {
        return Ok(Some(ModuleElement::zero()));
    }
    let max_deg = degree_bound(f, sys, n);
    let system = DenseSystem::up_to_degree(f, sys, max_deg, cap)?;
    let (_, matrix, rhs) = system.to_linear_system();
    let Some(y) = min_rvls(&matrix, &rhs, n) else {
        return Ok(None);
    };
    let alpha = ModuleElement::from_terms(
        y.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (system.columns[j].0.clone(), c)),
    );
    Ok(Some(alpha))
}

/// A reduced echelon basis (by signature) of the kernel of the expansion map
/// restricted to the span of module monomials below the bound. Every element
/// expands to zero, has coefficient one at its signature, and its signature
/// appears in no other basis element.
pub fn dense_kernel(
    sys: &GeneratorSystem,
    bound: &SignatureBound,
    cap: usize,
) -> Result<Vec<ModuleElement>, OracleError> {
    let monomials = monomials_below_with_cap(bound, sys, cap)?;
    // Incremental elimination in ascending module order, with labels.
    let mut pivots: Vec<(Word, NcPoly, ModuleElement)> = Vec::new();
    let mut kernel: Vec<ModuleElement> = Vec::new();
    for m in monomials {
        let mut poly = m.expansion(sys);
        let mut label = ModuleElement::monomial(m, Rat::one());
        loop {
            let Some(lm) = poly.lm() else { break };
            let Some((_, piv_poly, piv_label)) =
                pivots.iter().find(|(w, _, _)| w == lm)
            else {
                break;
            };
            let c = -(poly.lc().expect("nonzero") / piv_poly.lc().expect("nonzero"));
            poly.add_scaled(&c, piv_poly);
            label.add_scaled(&c, piv_label);
        }
        if poly.is_zero() {
            // Reduce by earlier kernel elements so no signature of one
            // element appears in another.
            for k in &kernel {
                let sig = k.signature().expect("nonzero");
                if let Some(c) = label.coeff(sig) {
                    let c = -c.clone();
                    label.add_scaled(&c, k);
                }
            }
            debug_assert!(!label.is_zero());
            let lead = label
                .coeff(label.signature().expect("nonzero"))
                .expect("signature term")
                .clone();
            label.scale_in_place(&lead.recip());
            kernel.push(label);
        } else {
            pivots.push((poly.lm().expect("nonzero").clone(), poly, label));
        }
    }
    Ok(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VariableTable};

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn system(var_names: &[&str], gens: &[&str]) -> GeneratorSystem {
        let vars = VariableTable::new(var_names.iter().copied()).unwrap();
        let polys = gens.iter().map(|t| parse_poly(t, &vars).unwrap()).collect();
        GeneratorSystem::new(vars, polys).unwrap()
    }

    #[test]
    fn degree_bound_examples() {
        // Moore-Penrose system: deg(b - ad) + 3 * 2 = 7.
        let sys = system(
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
        let f = parse_poly("b - ad", sys.vars()).unwrap();
        assert_eq!(degree_bound(&f, &sys, 3), 7);
        assert_eq!(degree_bound(&f, &sys, 0), 1);

        // Homogeneous-difference generators: degdiff 0.
        let homog = system(&["x", "y"], &["x*y - y*x"]);
        let g = parse_poly("x*y*x - y*x*x", homog.vars()).unwrap();
        for n in 0..4 {
            assert_eq!(degree_bound(&g, &homog, n), 3);
        }
    }

    #[test]
    fn min_rvls_examples() {
        // Identity 2x2, b = (1, 0), N = 1.
        let a = SparseRationalMatrix::from_columns(2, vec![vec![(0, r(1))], vec![(1, r(1))]]);
        let y = min_rvls(&a, &[r(1), r(0)], 1).unwrap();
        assert_eq!(y, vec![r(1), r(0)]);

        // [1 1] y = 2 with N = 0 is infeasible.
        let a = SparseRationalMatrix::from_columns(1, vec![vec![(0, r(1))], vec![(0, r(1))]]);
        assert_eq!(min_rvls(&a, &[r(2)], 0), None);

        // Zero rhs: the zero vector.
        assert_eq!(min_rvls(&a, &[r(0)], 1), Some(vec![r(0), r(0)]));
    }

    #[test]
    fn min_rvls_planted() {
        // 4x8 system with a planted 2-sparse solution: columns 3 and 6 sum
        // to b, and no single column is proportional to b.
        let mut cols = Vec::new();
        for j in 0..8usize {
            let mut col = vec![(j % 4, r(1 + j as i64))];
            if j % 3 == 0 {
                col.push(((j + 1) % 4, r(2)));
            }
            cols.push(col);
        }
        let a = SparseRationalMatrix::from_columns(4, cols);
        let planted: Vec<Rat> = {
            let mut y = vec![r(0); 8];
            y[3] = r(1);
            y[6] = r(2);
            y
        };
        let b = a.mul_vec(&planted);
        let y = min_rvls(&a, &b, 2).expect("planted solution");
        assert_eq!(a.mul_vec(&y), b);
        assert!(y.iter().filter(|v| !v.is_zero()).count() <= 2);
        // Exhaustively confirm no 1-sparse solution exists.
        assert_eq!(min_rvls(&a, &b, 1), None);
    }

    #[test]
    fn algorithm1_examples() {
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        // f_1 itself with N = 1.
        let f1 = sys.generator(0).clone();
        let alpha = algorithm1(&f1, &sys, 1).unwrap().expect("found");
        assert_eq!(alpha.l0_weight(), 1);
        assert_eq!(alpha.expand(&sys), f1);

        // yxxy - 1 with N = 2: a weight-2 representation exists.
        let f = parse_poly("y*x*x*y - 1", sys.vars()).unwrap();
        let alpha = algorithm1(&f, &sys, 2).unwrap().expect("found");
        assert!(alpha.l0_weight() <= 2);
        assert_eq!(alpha.expand(&sys), f);

        // The same f with N = 1: no single placement equals f.
        assert!(algorithm1(&f, &sys, 1).unwrap().is_none());
    }

    #[test]
    fn dense_kernel_examples() {
        // Two generators: the kernel below degree 4 contains the element
        // with support {e_1*x, x*e_2}.
        let sys = system(&["x", "y"], &["x*y - 1", "y*x - 1"]);
        let kernel = dense_kernel(&sys, &SignatureBound::Degree(4), 100_000).unwrap();
        assert!(!kernel.is_empty());
        for k in &kernel {
            assert!(k.expand(&sys).is_zero());
        }
        let x = Word::letter(0);
        let e1x = ModuleMonomial::new(Word::one(), 0, x.clone(), &sys);
        let xe2 = ModuleMonomial::new(x, 1, Word::one(), &sys);
        assert!(kernel
            .iter()
            .any(|k| k.coeff(&e1x).is_some() && k.coeff(&xe2).is_some()));

        // Echelon property: pairwise distinct signatures, not shared.
        for (i, ki) in kernel.iter().enumerate() {
            let sig = ki.signature().unwrap();
            assert_eq!(ki.coeff(sig), Some(&Rat::from_integer(1.into())));
            for (j, kj) in kernel.iter().enumerate() {
                if i != j {
                    assert!(kj.coeff(sig).is_none());
                }
            }
        }

        // Single generator: kernel below degree 4 is empty.
        let single = system(&["x", "y"], &["x*y - 1"]);
        let kernel = dense_kernel(&single, &SignatureBound::Degree(4), 100_000).unwrap();
        assert!(kernel.is_empty());

        // Bound below all generator degrees: empty span.
        let kernel = dense_kernel(&sys, &SignatureBound::Degree(2), 100_000).unwrap();
        assert!(kernel.is_empty());
    }
}
