//! Theta-fixedness, level classification, and the relation-finding
//! pipeline: seeds from the full-twist eigenspace are pushed through the
//! partial twist sum, the structured inverse of `X`, and the Dynkin
//! operator, then certified primitive.

use std::sync::Arc;

use rayon::prelude::*;

use crate::braidgrp::{
    dynkin_element, named_element, partial_twist_sum, BraidWord, ElementName,
};
use crate::exactla::{invert_one_minus_word, kernel, rank, row_reduced_basis, solve};
use crate::scalar::Scalar;
use crate::tensorspace::{
    act_element, multidegrees, multiset_twist_scalar, operator_matrix, AnagramClass,
    BraidingSpec, OperatorMatrix, TensorVector, Word,
};

use super::hopf::{derivation, dynkin_apply, is_primitive, Side};
use super::{LevelReport, LevelVerdict, NicholsError};

/// Exponent scan bound for the Serre hypothesis `q_ij q_ji = q_ii^c`.
pub const DEFAULT_SERRE_BOUND: i64 = 12;

/// Re-verified exact certificates attached to a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RelationCertificates {
    pub in_ker_sn: bool,
    pub in_im_pn: bool,
    pub primitive: bool,
}

/// A certified defining relation supported on one anagram class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub multidegree: Vec<usize>,
    pub vector: TensorVector,
    pub certificates: RelationCertificates,
}

/// All multidegrees of total degree `2..=max_degree` fixed by the full
/// twist. The twist scalar depends only on the letter multiset, so one
/// evaluation per class suffices.
pub fn theta_fixed_classes(spec: &BraidingSpec, max_degree: usize) -> Vec<Vec<usize>> {
    assert!(max_degree >= 2);
    let mut out = Vec::new();
    for total in 2..=max_degree {
        for d in multidegrees(spec.dim(), total) {
            if multiset_twist_scalar(&d, spec).is_one() {
                debug_assert!(crate::tensorspace::full_twist_scalar(
                    &AnagramClass::new(d.clone()).representative(),
                    spec
                )
                .is_one());
                out.push(d);
            }
        }
    }
    out
}

/// Classify one anagram class: theta-fixedness plus every letter multiset
/// of size `2..n-1` whose twist scalar is one (each such multiset witnesses
/// a positional sub-twist with eigenvalue one on the class).
pub fn level_classify(multidegree: &[usize], spec: &BraidingSpec) -> LevelReport {
    let n: usize = multidegree.iter().sum();
    assert!(n >= 2, "level classification needs degree >= 2");
    let theta_fixed = multiset_twist_scalar(multidegree, spec).is_one();
    let mut violating_subsets = Vec::new();
    if n > 2 {
        let mut sub = vec![0usize; multidegree.len()];
        collect_violations(multidegree, spec, 0, &mut sub, &mut violating_subsets, n);
    }
    let verdict = if !theta_fixed {
        LevelVerdict::NotThetaFixed
    } else if violating_subsets.is_empty() {
        LevelVerdict::LevelN
    } else {
        LevelVerdict::ThetaFixedOnly
    };
    LevelReport {
        multidegree: multidegree.to_vec(),
        theta_fixed,
        violating_subsets,
        verdict,
    }
}

fn collect_violations(
    multidegree: &[usize],
    spec: &BraidingSpec,
    i: usize,
    sub: &mut Vec<usize>,
    out: &mut Vec<(usize, Vec<u8>)>,
    n: usize,
) {
    if i == multidegree.len() {
        let s: usize = sub.iter().sum();
        if (2..n).contains(&s) && multiset_twist_scalar(sub, spec).is_one() {
            let mut letters = Vec::with_capacity(s);
            for (idx, &count) in sub.iter().enumerate() {
                letters.extend(std::iter::repeat_n((idx + 1) as u8, count));
            }
            out.push((s, letters));
        }
        return;
    }
    for c in 0..=multidegree[i] {
        sub[i] = c;
        collect_violations(multidegree, spec, i + 1, sub, out, n);
    }
    sub[i] = 0;
}

/// The seed vector `u = (sum_k (s_{n-1}^2 s_{n-2} .. s_1)^k) w` for a word.
pub fn partial_twist_u(w: &Word, spec: &BraidingSpec) -> TensorVector {
    let n = w.len();
    assert!(n >= 2);
    act_element(&partial_twist_sum(n), &TensorVector::from_word(w.clone()), spec)
        .expect("degree matches")
}

/// Matrix of `X^-1` on a class, built factor by factor from the
/// cycle-structured inverses. `X` is pinned by `T_n' = (1 - s_{n-1}^2 .. s_1) X`.
fn x_inverse_matrix(
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
) -> Result<OperatorMatrix, NicholsError> {
    let n = class.degree();
    let mut m = OperatorMatrix::identity(Arc::clone(class));
    for i in 2..n {
        let mut letters = vec![(n - 1, 1i8), (n - 1, 1i8)];
        letters.extend((i..=n - 2).rev().map(|g| (g, 1i8)));
        let w = BraidWord::new(n, letters);
        let f_inv = invert_one_minus_word(&w, class, spec)?;
        m = f_inv.mul(&m);
    }
    Ok(m)
}

/// Construct the certified relations of a full-level class.
///
/// Every basis word is used as a seed; nonzero outputs of `P_n X^-1 u` are
/// collected, row-reduced to a deterministic basis, and each survivor is
/// re-verified: annihilated by `S_n`, a Dynkin image, primitive, and killed
/// by every right derivation. The span is checked to exhaust `ker(S_n)` on
/// the class.
pub fn find_relations(
    multidegree: &[usize],
    spec: &BraidingSpec,
) -> Result<Vec<Relation>, NicholsError> {
    let report = level_classify(multidegree, spec);
    if report.verdict != LevelVerdict::LevelN {
        return Err(NicholsError::NotLevelN {
            multidegree: multidegree.to_vec(),
            verdict: report.verdict,
        });
    }
    let n: usize = multidegree.iter().sum();
    let class = AnagramClass::new(multidegree.to_vec());
    let pts = operator_matrix(&partial_twist_sum(n), &class, spec)?;
    let x_inv = x_inverse_matrix(&class, spec)?;
    let pn = operator_matrix(&dynkin_element(n), &class, spec)?;
    let sn = operator_matrix(&named_element(ElementName::SymmetrizerSum, n), &class, spec)?;

    let mut collected = Vec::new();
    for j in 0..class.size() {
        let u = TensorVector::from_coords(
            &class,
            &pts.apply_coords(&unit_coords(class.size(), j)),
        );
        if u.is_zero() {
            continue; // zero seeds are expected and skipped
        }
        let v = x_inv.apply_vector(&u)?;
        let r = pn.apply_vector(&v)?;
        if !r.is_zero() {
            collected.push(r);
        }
    }
    let span = row_reduced_basis(&collected, &class)?;

    let mut relations = Vec::with_capacity(span.len());
    for r in &span {
        let in_ker_sn = sn.apply_vector(r)?.is_zero();
        let in_im_pn = solve(&pn, r).is_ok();
        let primitive = is_primitive(r, spec);
        let killed = (1..=spec.dim() as u8)
            .all(|i| derivation(Side::Right, i, r, spec).is_zero());
        if !(in_ker_sn && in_im_pn && primitive && killed) {
            return Err(NicholsError::CertificationFailed(format!(
                "relation in class {multidegree:?}: ker={in_ker_sn} im={in_im_pn} \
                 primitive={primitive} right-derivations={killed}"
            )));
        }
        relations.push(Relation {
            multidegree: multidegree.to_vec(),
            vector: r.clone(),
            certificates: RelationCertificates {
                in_ker_sn,
                in_im_pn,
                primitive,
            },
        });
    }

    // the constructed span must exhaust ker(S_n) on the class
    let ker_dim = kernel(&sn).len();
    if relations.len() != ker_dim {
        return Err(NicholsError::CertificationFailed(format!(
            "class {multidegree:?}: span dimension {} != dim ker(S_n) = {ker_dim}",
            relations.len()
        )));
    }
    Ok(relations)
}

fn unit_coords(n: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[j] = Scalar::one();
    v
}

/// Scan `c = 0, -1, ..` for the minimal `|c|` with `q_ij q_ji = q_ii^c` and
/// return the certified primitive `P_{N+1}(v_i^N v_j)` with `N = 1 - c`.
pub fn serre_element(
    i: u8,
    j: u8,
    spec: &BraidingSpec,
    bound: i64,
) -> Result<Relation, NicholsError> {
    assert!(i != j, "serre element needs distinct letters");
    let target = spec.q(i, j) * spec.q(j, i);
    let c = (0..=bound)
        .map(|k| -k)
        .find(|&c| spec.q(i, i).pow(c).expect("nonzero entry") == target)
        .ok_or(NicholsError::NoSerreExponent { i, j, bound })?;
    let n_exp = (1 - c) as usize;
    let mut letters = vec![i; n_exp];
    letters.push(j);
    let word = Word::new(letters);
    let vector = dynkin_apply(&TensorVector::from_word(word.clone()), spec);
    let degree = n_exp + 1;
    let class = AnagramClass::new(word.multidegree(spec.dim()));

    let sn = named_element(ElementName::SymmetrizerSum, degree);
    let in_ker_sn = act_element(&sn, &vector, spec)?.is_zero();
    let pn = operator_matrix(&dynkin_element(degree), &class, spec)?;
    let in_im_pn = solve(&pn, &vector).is_ok();
    let primitive = is_primitive(&vector, spec);
    if !(in_ker_sn && in_im_pn && primitive) {
        return Err(NicholsError::CertificationFailed(format!(
            "serre element ({i},{j}): ker={in_ker_sn} im={in_im_pn} primitive={primitive}"
        )));
    }
    Ok(Relation {
        multidegree: word.multidegree(spec.dim()),
        vector,
        certificates: RelationCertificates {
            in_ker_sn,
            in_im_pn,
            primitive,
        },
    })
}

/// Exact graded dimensions of the Nichols algebra: degree `n` contributes
/// the sum of `rank(S_n)` over the anagram classes of that degree.
pub fn nichols_dimensions(spec: &BraidingSpec, max_degree: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 1)];
    if max_degree == 0 {
        return out;
    }
    out.push((1, spec.dim()));
    for degree in 2..=max_degree {
        let sn = named_element(ElementName::SymmetrizerSum, degree);
        let total: usize = multidegrees(spec.dim(), degree)
            .into_par_iter()
            .map(|d| {
                let class = AnagramClass::new(d);
                let m = operator_matrix(&sn, &class, spec).expect("degree matches");
                rank(&m)
            })
            .sum();
        out.push((degree, total));
    }
    out
}

/// One classified class with its relations (empty unless full level).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOutcome {
    pub report: LevelReport,
    pub relations: Vec<Relation>,
}

/// Classify every class of total degree `2..=max_degree` and run the
/// relation pipeline on the full-level ones. Classes are processed
/// independently and returned in (degree, multidegree) order.
pub fn relation_sweep(
    spec: &BraidingSpec,
    max_degree: usize,
) -> Result<Vec<ClassOutcome>, NicholsError> {
    let mut all: Vec<Vec<usize>> = Vec::new();
    for degree in 2..=max_degree {
        all.extend(multidegrees(spec.dim(), degree));
    }
    all.into_par_iter()
        .map(|d| {
            let report = level_classify(&d, spec);
            let relations = if report.verdict == LevelVerdict::LevelN {
                find_relations(&d, spec)?
            } else {
                Vec::new()
            };
            Ok(ClassOutcome { report, relations })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorspace::q_pow;

    fn word(ls: &[u8]) -> Word {
        Word::new(ls.to_vec())
    }

    #[test]
    fn theta_fixed_exterior_includes_every_class() {
        // all braiding entries are -1, so every twist scalar is a product of
        // an even number of -1 factors
        let spec = BraidingSpec::exterior(2);
        let got = theta_fixed_classes(&spec, 4);
        let mut want = Vec::new();
        for total in 2..=4 {
            want.extend(multidegrees(2, total));
        }
        assert_eq!(got, want);
    }

    #[test]
    fn theta_fixed_uq_sl3_up_to_degree_five() {
        let spec = BraidingSpec::uq_sl3();
        let got = theta_fixed_classes(&spec, 5);
        assert_eq!(got, vec![vec![1, 2], vec![2, 1], vec![2, 2]]);
    }

    #[test]
    fn theta_fixed_empty_for_generic_primes() {
        let spec = BraidingSpec::distinct_primes(3);
        assert!(theta_fixed_classes(&spec, 4).is_empty());
    }

    #[test]
    fn level_classify_uq_sl3() {
        let spec = BraidingSpec::uq_sl3();

        let r21 = level_classify(&[2, 1], &spec);
        assert_eq!(r21.verdict, LevelVerdict::LevelN);
        assert!(r21.theta_fixed);
        assert!(r21.violating_subsets.is_empty());

        let r22 = level_classify(&[2, 2], &spec);
        assert_eq!(r22.verdict, LevelVerdict::ThetaFixedOnly);
        assert!(r22
            .violating_subsets
            .iter()
            .any(|(s, letters)| *s == 3 && letters == &vec![1, 1, 2]));

        let r30 = level_classify(&[3, 0], &spec);
        assert_eq!(r30.verdict, LevelVerdict::NotThetaFixed);
    }

    #[test]
    fn partial_twist_u_matches_worked_example() {
        // (1 + s_2^2 s_1)(E1 E2 E1) = E1 E2 E1 + q^3 E2 E1^2
        let spec = BraidingSpec::uq_sl3();
        let u = partial_twist_u(&word(&[1, 2, 1]), &spec);
        let want = TensorVector::from_terms([
            (word(&[1, 2, 1]), Scalar::one()),
            (word(&[2, 1, 1]), q_pow(3)),
        ]);
        assert_eq!(u, want);
    }

    #[test]
    fn find_relations_uq_sl3_gives_serre_span() {
        let spec = BraidingSpec::uq_sl3();
        let rels = find_relations(&[2, 1], &spec).unwrap();
        assert_eq!(rels.len(), 1);
        let want = TensorVector::from_terms([
            (word(&[1, 1, 2]), Scalar::one()),
            (word(&[1, 2, 1]), -&(&q_pow(1) + &q_pow(-1))),
            (word(&[2, 1, 1]), Scalar::one()),
        ]);
        assert_eq!(rels[0].vector, want);
        assert!(rels[0].certificates.in_ker_sn);
        assert!(rels[0].certificates.in_im_pn);
        assert!(rels[0].certificates.primitive);
    }

    #[test]
    fn find_relations_exterior_pair_class() {
        let spec = BraidingSpec::exterior(3);
        let rels = find_relations(&[1, 1, 0], &spec).unwrap();
        assert_eq!(rels.len(), 1);
        let want = TensorVector::from_terms([
            (word(&[1, 2]), Scalar::one()),
            (word(&[2, 1]), Scalar::one()),
        ]);
        assert_eq!(rels[0].vector, want);
    }

    #[test]
    fn find_relations_rejects_non_level_class() {
        let spec = BraidingSpec::uq_sl3();
        assert!(matches!(
            find_relations(&[2, 2], &spec),
            Err(NicholsError::NotLevelN { .. })
        ));
    }

    #[test]
    fn serre_element_uq_sl3() {
        let spec = BraidingSpec::uq_sl3();
        let rel = serre_element(1, 2, &spec, DEFAULT_SERRE_BOUND).unwrap();
        assert_eq!(rel.multidegree, vec![2, 1]);
        let want = TensorVector::from_terms([
            (word(&[1, 1, 2]), Scalar::one()),
            (word(&[1, 2, 1]), -&(&q_pow(1) + &q_pow(-1))),
            (word(&[2, 1, 1]), Scalar::one()),
        ]);
        assert_eq!(rel.vector, want);
    }

    #[test]
    fn serre_element_exterior_is_symmetric_pair() {
        let spec = BraidingSpec::exterior(3);
        let rel = serre_element(1, 3, &spec, DEFAULT_SERRE_BOUND).unwrap();
        // q_13 q_31 = 1 = q_11^0, so N = 1 and the relation is v1 v3 + v3 v1
        let want = TensorVector::from_terms([
            (word(&[1, 3]), Scalar::one()),
            (word(&[3, 1]), Scalar::one()),
        ]);
        assert_eq!(rel.vector, want);
    }

    #[test]
    fn serre_element_out_of_reach_exponent() {
        // q_12 q_21 = 2 is no power of q_11 = 3
        let spec = BraidingSpec::new(
            vec!["a".into(), "b".into()],
            vec![
                vec![Scalar::from_int(3), Scalar::from_int(2)],
                vec![Scalar::from_int(1), Scalar::from_int(5)],
            ],
        )
        .unwrap();
        assert!(matches!(
            serre_element(1, 2, &spec, DEFAULT_SERRE_BOUND),
            Err(NicholsError::NoSerreExponent { .. })
        ));
    }

    #[test]
    fn dimensions_exterior_dim3_are_binomials() {
        let spec = BraidingSpec::exterior(3);
        let got = nichols_dimensions(&spec, 5);
        // oracle: binomial(3, k)
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let want: Vec<(usize, usize)> = (0..=5).map(|k| (k, binom(3, k))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn dimensions_degree_zero_is_one() {
        assert_eq!(
            nichols_dimensions(&BraidingSpec::distinct_primes(2), 0),
            vec![(0, 1)]
        );
    }

    fn g2_spec() -> BraidingSpec {
        BraidingSpec::from_cartan(
            vec!["v1".into(), "v2".into()],
            &[vec![2, -1], vec![-3, 2]],
            &[3, 1],
        )
        .unwrap()
    }

    #[test]
    fn g2_degree_five_relation_through_the_full_pipeline() {
        // the (2,1) Serre datum has c = -3, so the relation sits in degree 5
        // and X carries three nontrivial structured-inverse factors
        let spec = g2_spec();
        let rel = serre_element(2, 1, &spec, DEFAULT_SERRE_BOUND).unwrap();
        assert_eq!(rel.multidegree, vec![1, 4]);
        assert!(rel.certificates.primitive);

        let report = level_classify(&[1, 4], &spec);
        assert_eq!(report.verdict, LevelVerdict::LevelN);
        let found = find_relations(&[1, 4], &spec).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].vector, rel.vector.normalized());
    }

    #[test]
    fn g2_dimensions_match_root_height_oracle() {
        // positive roots of G2 have total degrees {1, 1, 2, 3, 4, 5}
        fn count(heights: &[usize], degree: usize) -> usize {
            match heights.split_first() {
                None => usize::from(degree == 0),
                Some((&h, rest)) => {
                    let mut total = 0;
                    let mut used = 0;
                    while used <= degree {
                        total += count(rest, degree - used);
                        used += h;
                    }
                    total
                }
            }
        }
        let got = nichols_dimensions(&g2_spec(), 5);
        let want: Vec<(usize, usize)> = (0..=5)
            .map(|d| (d, count(&[1, 1, 2, 3, 4, 5], d)))
            .collect();
        assert_eq!(got, want);
        assert_eq!(
            got.iter().map(|&(_, v)| v).collect::<Vec<_>>(),
            vec![1, 2, 4, 7, 12, 19]
        );
    }

    #[test]
    fn a3_dimensions_match_root_height_oracle() {
        // positive roots of A_3 have total degrees {1, 1, 1, 2, 2, 3};
        // degree 4: 15 + 12 + 3 + 3 = 33 exponent vectors
        let spec = BraidingSpec::from_cartan(
            vec!["E1".into(), "E2".into(), "E3".into()],
            &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            &[1, 1, 1],
        )
        .unwrap();
        let got: Vec<usize> = nichols_dimensions(&spec, 4)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        assert_eq!(got, vec![1, 3, 8, 17, 33]);
    }

    #[test]
    fn find_relations_handles_empty_kernel_class() {
        // trivial braiding on one letter: the class (2) is full level but
        // the symmetrizer is injective there, so the span is empty
        let spec =
            BraidingSpec::new(vec!["a".into()], vec![vec![Scalar::one()]]).unwrap();
        let report = level_classify(&[2], &spec);
        assert_eq!(report.verdict, LevelVerdict::LevelN);
        assert_eq!(find_relations(&[2], &spec).unwrap(), Vec::new());
    }

    #[test]
    fn b2_dimensions_match_root_height_oracle() {
        // positive roots of B2 have total degrees {1, 1, 2, 3}
        let spec = BraidingSpec::from_cartan(
            vec!["v1".into(), "v2".into()],
            &[vec![2, -1], vec![-2, 2]],
            &[2, 1],
        )
        .unwrap();
        let got: Vec<usize> = nichols_dimensions(&spec, 5)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        assert_eq!(got, vec![1, 2, 4, 7, 11, 16]);
    }

    /// The subset-product level test agrees with the direct one: an
    /// embedded sub-twist acts diagonally (its permutation is trivial), and
    /// it has eigenvalue one on the class exactly when some letter
    /// multiset of the window size has twist scalar one.
    #[test]
    fn subset_violations_match_embedded_twist_eigenvalues() {
        use crate::braidgrp::full_twist_word;
        use crate::tensorspace::act_word;

        for spec in [
            BraidingSpec::exterior(3),
            BraidingSpec::uq_sl3(),
            g2_spec(),
        ] {
            for degree in 3..=5usize {
                for d in multidegrees(spec.dim(), degree) {
                    let class = AnagramClass::new(d.clone());
                    let report = level_classify(&d, &spec);
                    let mut eigenvalue_one = false;
                    for s in 2..degree {
                        let theta = full_twist_word(s);
                        for r in 0..=degree - s {
                            let embedded = theta.embed(r, degree);
                            for w in class.basis() {
                                let (c, moved) = act_word(&embedded, w, &spec).unwrap();
                                assert_eq!(&moved, w, "embedded twist must be diagonal");
                                if c.is_one() {
                                    eigenvalue_one = true;
                                }
                            }
                        }
                    }
                    assert_eq!(
                        !report.violating_subsets.is_empty(),
                        eigenvalue_one,
                        "class {d:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn relation_sweep_uq_sl3() {
        let spec = BraidingSpec::uq_sl3();
        let outcomes = relation_sweep(&spec, 4).unwrap();
        let level_classes: Vec<&ClassOutcome> = outcomes
            .iter()
            .filter(|o| o.report.verdict == LevelVerdict::LevelN)
            .collect();
        assert_eq!(level_classes.len(), 2);
        assert_eq!(level_classes[0].report.multidegree, vec![1, 2]);
        assert_eq!(level_classes[1].report.multidegree, vec![2, 1]);
        for o in &level_classes {
            assert_eq!(o.relations.len(), 1);
        }
    }
}
