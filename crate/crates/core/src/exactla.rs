//! Exact linear algebra over the scalar field: kernel, rank, solving, and a
//! cycle-structured inverse for `I - (monomial matrix)`.
//!
//! Elimination uses the first nonzero pivot in column order; over an exact
//! field no pivoting heuristics are needed and the result is deterministic.
//! Rational functions are renormalized after every elimination step, which
//! keeps intermediate degrees bounded at the class sizes we care about.

// elimination reads the pivot row while mutating others; index loops are
// the clearest way to express that
#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use thiserror::Error;

use crate::braidgrp::{BraidWord, GroupAlgebraElement};
use crate::scalar::Scalar;
use crate::tensorspace::{
    act_word, AnagramClass, BraidingSpec, OperatorMatrix, TensorError, TensorVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("factor 1 - w is singular: a cycle has scalar product 1")]
    SingularFactor,
    #[error("expected an element of the form 1 - (braid word)")]
    MalformedFactor,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Dense row-major copy of an operator matrix.
fn dense_rows(m: &OperatorMatrix) -> Vec<Vec<Scalar>> {
    let n = m.size();
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for j in 0..n {
        for (&i, c) in m.col(j) {
            rows[i][j] = c.clone();
        }
    }
    rows
}

/// In-place reduced row echelon form; returns the pivot columns in order.
fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let t = &rows[r][k] * &f;
                    rows[i][k] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact basis of the null space, each vector normalized so its first
/// nonzero coordinate is one.
pub fn kernel(m: &OperatorMatrix) -> Vec<TensorVector> {
    let n = m.size();
    let mut rows = dense_rows(m);
    let pivots = rref(&mut rows);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for f in 0..n {
        if is_pivot[f] {
            continue;
        }
        let mut coords = vec![Scalar::zero(); n];
        coords[f] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            if !rows[r][f].is_zero() {
                coords[c] = -&rows[r][f];
            }
        }
        out.push(normalize_coords(m.class(), coords));
    }
    out
}

fn normalize_coords(class: &Arc<AnagramClass>, coords: Vec<Scalar>) -> TensorVector {
    let v = TensorVector::from_coords(class, &coords);
    v.normalized()
}

/// Exact rank; `rank + dim kernel = class size`.
pub fn rank(m: &OperatorMatrix) -> usize {
    let mut rows = dense_rows(m);
    rref(&mut rows).len()
}

/// One exact solution of `M x = b`, if any.
pub fn solve(m: &OperatorMatrix, b: &TensorVector) -> Result<TensorVector, LinAlgError> {
    let n = m.size();
    let bc = b.to_coords(m.class())?;
    let mut rows = dense_rows(m);
    for (i, row) in rows.iter_mut().enumerate() {
        row.push(bc[i].clone());
    }
    let pivots = rref(&mut rows);
    if pivots.last().copied() == Some(n) {
        return Err(LinAlgError::NoSolution);
    }
    let mut coords = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        coords[c] = rows[r][n].clone();
    }
    Ok(TensorVector::from_coords(m.class(), &coords))
}

/// Full inverse via Gaussian elimination; `None` when singular. This is the
/// generic route the structured inverse is cross-checked against.
pub fn inverse_gauss(m: &OperatorMatrix) -> Option<OperatorMatrix> {
    let n = m.size();
    let mut rows = dense_rows(m);
    for (i, row) in rows.iter_mut().enumerate() {
        row.extend((0..n).map(|j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }));
    }
    let pivots = rref(&mut rows);
    if pivots.len() < n || pivots.iter().enumerate().any(|(r, &c)| r != c) {
        return None;
    }
    let mut out = OperatorMatrix::zero(Arc::clone(m.class()));
    for i in 0..n {
        for j in 0..n {
            let v = rows[i][n + j].clone();
            out.set_entry(i, j, v);
        }
    }
    Some(out)
}

/// The monomial data of a braid word acting on a class: for column `j` the
/// image index `p(j)` and scalar `c_j` with `M e_j = c_j e_{p(j)}`.
fn monomial_action(
    w: &BraidWord,
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
) -> Result<(Vec<usize>, Vec<Scalar>), LinAlgError> {
    let n = class.size();
    let mut perm = vec![0usize; n];
    let mut scalars = vec![Scalar::zero(); n];
    for (j, word) in class.basis().iter().enumerate() {
        let (c, moved) = act_word(w, word, spec)?;
        perm[j] = class.word_index(&moved).expect("action preserves the class");
        scalars[j] = c;
    }
    Ok((perm, scalars))
}

/// Inverse of `I - M` for the monomial matrix `M` of a braid word, computed
/// per permutation cycle: on a cycle of length `l`,
/// `(I - M)^-1 = (sum_{k=0}^{l-1} M^k) (I - M^l)^-1` and `M^l` is diagonal
/// with the cycle scalar product on the cycle. A cycle scalar product equal
/// to one is exactly the singular case.
pub fn invert_one_minus_word(
    w: &BraidWord,
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
) -> Result<OperatorMatrix, LinAlgError> {
    let (perm, scalars) = monomial_action(w, class, spec)?;
    let n = class.size();
    let mut out = OperatorMatrix::zero(Arc::clone(class));
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut k = perm[start];
        while k != start {
            visited[k] = true;
            cycle.push(k);
            k = perm[k];
        }
        let mut gamma = Scalar::one();
        for &j in &cycle {
            gamma = &gamma * &scalars[j];
        }
        let one_minus_gamma = &Scalar::one() - &gamma;
        if one_minus_gamma.is_zero() {
            return Err(LinAlgError::SingularFactor);
        }
        let inv = one_minus_gamma.inv().expect("nonzero");
        // column j of the block: (1/(1-gamma)) * sum_k M^k e_j
        for &j in &cycle {
            let mut acc = Scalar::one();
            let mut pos = j;
            for _ in 0..cycle.len() {
                let cur = out.entry(pos, j);
                out.set_entry(pos, j, &cur + &(&acc * &inv));
                acc = &acc * &scalars[pos];
                pos = perm[pos];
            }
            debug_assert_eq!(pos, j);
        }
    }
    Ok(out)
}

/// Shape-checked variant taking an element of the form `1 - w`.
pub fn invert_one_minus_monomial(
    factor: &GroupAlgebraElement,
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
) -> Result<OperatorMatrix, LinAlgError> {
    if factor.num_terms() != 2 {
        return Err(LinAlgError::MalformedFactor);
    }
    let mut word = None;
    for (w, c) in factor.terms() {
        if w.is_empty() {
            if !c.is_one() {
                return Err(LinAlgError::MalformedFactor);
            }
        } else {
            if *c != -&Scalar::one() {
                return Err(LinAlgError::MalformedFactor);
            }
            word = Some(w);
        }
    }
    let word = word.ok_or(LinAlgError::MalformedFactor)?;
    invert_one_minus_word(&word, class, spec)
}

/// Reduced row-echelon basis of the span of the given vectors, each
/// normalized with first nonzero coordinate one. Deterministic given the
/// class basis order.
pub fn row_reduced_basis(
    vectors: &[TensorVector],
    class: &Arc<AnagramClass>,
) -> Result<Vec<TensorVector>, LinAlgError> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        rows.push(v.to_coords(class)?);
    }
    rref(&mut rows);
    Ok(rows
        .into_iter()
        .filter(|row| row.iter().any(|c| !c.is_zero()))
        .map(|row| TensorVector::from_coords(class, &row).normalized())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidgrp::{named_element, ElementName};
    use crate::scalar::{LaurentPoly, Rational};
    use crate::tensorspace::{operator_matrix, Word};
    use num_bigint::BigInt;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn s2_exterior() -> OperatorMatrix {
        let spec = BraidingSpec::exterior(2);
        let class = AnagramClass::new(vec![1, 1]);
        operator_matrix(
            &named_element(ElementName::SymmetrizerSum, 2),
            &class,
            &spec,
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_exterior_s2() {
        let m = s2_exterior();
        let ker = kernel(&m);
        assert_eq!(ker.len(), 1);
        let want = TensorVector::from_terms([
            (Word::new(vec![1, 2]), Scalar::one()),
            (Word::new(vec![2, 1]), Scalar::one()),
        ]);
        assert_eq!(ker[0], want);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let spec = BraidingSpec::exterior(3);
        let class = AnagramClass::new(vec![1, 1, 1]);
        let id = OperatorMatrix::identity(class);
        assert!(kernel(&id).is_empty());
        let _ = spec;
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let class = AnagramClass::new(vec![1, 1, 1]);
        let z = OperatorMatrix::zero(class);
        assert_eq!(kernel(&z).len(), 6);
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = s2_exterior();
        for k in kernel(&m) {
            assert!(m.apply_vector(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&s2_exterior()), 1);

        // S_3 on the U_q(sl_3) class (2,1) has rank 2 (one Serre relation)
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![2, 1]);
        let s3 = operator_matrix(
            &named_element(ElementName::SymmetrizerSum, 3),
            &class,
            &spec,
        )
        .unwrap();
        assert_eq!(rank(&s3), 2);
        assert_eq!(kernel(&s3).len(), 1);

        let id = OperatorMatrix::identity(AnagramClass::new(vec![2, 2]));
        assert_eq!(rank(&id), 6);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let class = AnagramClass::new(vec![1, 1]);
        let id = OperatorMatrix::identity(Arc::clone(&class));
        let b = TensorVector::from_word(class.word(0).clone());
        assert_eq!(solve(&id, &b).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent_system() {
        let m = s2_exterior();
        // b = v1v2 is not in the image of S_2 (image is spanned by v1v2 - v2v1)
        let b = TensorVector::from_word(Word::new(vec![1, 2]));
        assert_eq!(solve(&m, &b), Err(LinAlgError::NoSolution));
    }

    #[test]
    fn solve_consistent_system_verified_by_substitution() {
        let m = s2_exterior();
        let b = TensorVector::from_terms([
            (Word::new(vec![1, 2]), Scalar::one()),
            (Word::new(vec![2, 1]), Scalar::from_int(-1)),
        ]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply_vector(&x).unwrap(), b);
    }

    #[test]
    fn structured_inverse_scalar_case() {
        // sigma_1^2 acts on the 1-dimensional class (2) by q_11^2 = q^4
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![2]);
        let w = BraidWord::new(2, vec![(1, 1), (1, 1)]);
        let inv = invert_one_minus_word(&w, &class, &spec).unwrap();
        let c = Scalar::from_laurent(LaurentPoly::monomial(4, Rational::from(BigInt::from(1))));
        let want = (&Scalar::one() - &c).inv().unwrap();
        assert_eq!(inv.entry(0, 0), want);
    }

    #[test]
    fn structured_inverse_two_cycle() {
        // sigma_1 on the class (1,1): e_1 -> a e_2, e_2 -> b e_1 with
        // a = q_12, b = q_21; the inverse block is [[1, b],[a, 1]]/(1 - ab).
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![1, 1]);
        let w = BraidWord::new(2, vec![(1, 1)]);
        let inv = invert_one_minus_word(&w, &class, &spec).unwrap();
        let a = spec.q(1, 2).clone();
        let b = spec.q(2, 1).clone();
        let d = (&Scalar::one() - &(&a * &b)).inv().unwrap();
        assert_eq!(inv.entry(0, 0), d);
        assert_eq!(inv.entry(1, 1), d);
        assert_eq!(inv.entry(0, 1), &b * &d);
        assert_eq!(inv.entry(1, 0), &a * &d);
    }

    #[test]
    fn structured_inverse_detects_singular_cycle() {
        // exterior: sigma_1^2 acts on (1,1) by q_12 q_21 = 1
        let spec = BraidingSpec::exterior(2);
        let class = AnagramClass::new(vec![1, 1]);
        let w = BraidWord::new(2, vec![(1, 1), (1, 1)]);
        assert_eq!(
            invert_one_minus_word(&w, &class, &spec),
            Err(LinAlgError::SingularFactor)
        );
    }

    #[test]
    fn malformed_factor_is_rejected() {
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![1, 1]);
        let not_factor = named_element(ElementName::SymmetrizerSum, 2);
        assert_eq!(
            invert_one_minus_monomial(&not_factor, &class, &spec),
            Err(LinAlgError::MalformedFactor)
        );
    }

    #[test]
    fn structured_inverse_is_two_sided() {
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![2, 1]);
        let w = BraidWord::new(3, vec![(2, 1), (2, 1)]);
        let f = GroupAlgebraElement::one_minus(&w);
        let m = operator_matrix(&f, &class, &spec).unwrap();
        let inv = invert_one_minus_monomial(&f, &class, &spec).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn structured_inverse_agrees_with_gaussian_on_random_instances() {
        // random monomial words on classes of size up to 20
        let mut rng = StdRng::seed_from_u64(7);
        let spec = BraidingSpec::uq_sl3();
        for degree in 2..=5usize {
            for _ in 0..4 {
                let d = {
                    let a = rng.random_range(0..=degree);
                    vec![a, degree - a]
                };
                let class = AnagramClass::new(d);
                if class.size() > 20 {
                    continue;
                }
                let len = rng.random_range(1..=4);
                let letters: Vec<(usize, i8)> = (0..len)
                    .map(|_| (rng.random_range(1..degree.max(2)), 1i8))
                    .collect();
                if letters.iter().any(|&(g, _)| g >= degree) {
                    continue;
                }
                let w = BraidWord::new(degree, letters);
                let f = GroupAlgebraElement::one_minus(&w);
                let m = operator_matrix(&f, &class, &spec).unwrap();
                match invert_one_minus_word(&w, &class, &spec) {
                    Ok(inv) => {
                        let gauss = inverse_gauss(&m).expect("nonsingular");
                        assert_eq!(inv, gauss);
                    }
                    Err(LinAlgError::SingularFactor) => {
                        assert!(inverse_gauss(&m).is_none());
                    }
                    Err(e) => panic!("unexpected error {e:?}"),
                }
            }
        }
    }

    #[test]
    fn rank_is_invariant_under_basis_permutation() {
        let spec = BraidingSpec::uq_sl3();
        let class = AnagramClass::new(vec![2, 1]);
        let s3 = operator_matrix(
            &named_element(ElementName::SymmetrizerSum, 3),
            &class,
            &spec,
        )
        .unwrap();
        let base = rank(&s3);
        // conjugate by a basis permutation
        let n = class.size();
        let perm = [2usize, 0, 1];
        let mut permuted = OperatorMatrix::zero(Arc::clone(&class));
        for j in 0..n {
            for (&i, c) in s3.col(j) {
                permuted.set_entry(perm[i], perm[j], c.clone());
            }
        }
        assert_eq!(rank(&permuted), base);
    }

    #[test]
    fn row_reduced_basis_deduplicates_span() {
        let class = AnagramClass::new(vec![1, 1]);
        let v1 = TensorVector::from_terms([
            (Word::new(vec![1, 2]), Scalar::from_int(2)),
            (Word::new(vec![2, 1]), Scalar::from_int(2)),
        ]);
        let v2 = TensorVector::from_terms([
            (Word::new(vec![1, 2]), Scalar::from_int(-3)),
            (Word::new(vec![2, 1]), Scalar::from_int(-3)),
        ]);
        let basis = row_reduced_basis(&[v1, v2], &class).unwrap();
        assert_eq!(basis.len(), 1);
        let want = TensorVector::from_terms([
            (Word::new(vec![1, 2]), Scalar::one()),
            (Word::new(vec![2, 1]), Scalar::one()),
        ]);
        assert_eq!(basis[0], want);
    }
}
