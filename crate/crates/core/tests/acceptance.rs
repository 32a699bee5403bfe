//! Acceptance suite: one test per criterion, each printing a PASS line and
//! enforcing its runtime budget. Every expected value is either trivial,
//! verified against a worked example, or computed by an independent oracle
//! embedded in this file.

use std::time::{Duration, Instant};

use qnichols::braidgrp::{named_element, ElementName};
use qnichols::cli::{identity_suite, run_command};
use qnichols::exactla::{inverse_gauss, invert_one_minus_word, kernel};
use qnichols::nichols::{
    convolution_check_ns, convolution_check_dynkin_id, coproduct_component, derivation,
    dynkin_apply, find_relations, is_primitive, level_classify, nichols_dimensions,
    partial_twist_u, relation_sweep, serre_element, LevelVerdict, Side, DEFAULT_SERRE_BOUND,
};
use qnichols::braidgrp::{BraidWord, GroupAlgebraElement};
use qnichols::scalar::Scalar;
use qnichols::tensorspace::{
    act_element, act_word, multidegrees, operator_matrix, q_pow, AnagramClass, BraidingSpec,
    TensorVector, Word,
};

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion}: PASS in {:.2}s (budget {:.0}s)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?}"
    );
}

fn word(ls: &[u8]) -> Word {
    Word::new(ls.to_vec())
}

fn b2_spec() -> BraidingSpec {
    BraidingSpec::from_cartan(
        vec!["v1".into(), "v2".into()],
        &[vec![2, -1], vec![-2, 2]],
        &[2, 1],
    )
    .unwrap()
}

/// Exterior algebra on three generators: exactly the six symmetric
/// relations in degree two, nothing in degrees three and four, and
/// binomial graded dimensions.
#[test]
fn criterion_1_exterior_algebra() {
    let started = Instant::now();
    let spec = BraidingSpec::exterior(3);

    let outcomes = relation_sweep(&spec, 4).unwrap();
    let mut relations = Vec::new();
    for o in &outcomes {
        let degree: usize = o.report.multidegree.iter().sum();
        if degree > 2 {
            assert!(
                o.relations.is_empty(),
                "unexpected relation in degree {degree} class {:?}",
                o.report.multidegree
            );
            assert_ne!(
                o.report.verdict,
                LevelVerdict::LevelN,
                "no class above degree 2 may have full level here"
            );
        } else {
            relations.extend(o.relations.iter().cloned());
        }
    }
    assert_eq!(relations.len(), 6);
    // expected: v_i v_j + v_j v_i for i <= j (i = j collapses to v_i v_i)
    let mut expected = Vec::new();
    for i in 1u8..=3 {
        for j in i..=3 {
            if i == j {
                expected.push(TensorVector::from_word(word(&[i, i])));
            } else {
                expected.push(TensorVector::from_terms([
                    (word(&[i, j]), Scalar::one()),
                    (word(&[j, i]), Scalar::one()),
                ]));
            }
        }
    }
    for want in &expected {
        assert!(
            relations.iter().any(|r| &r.vector == want),
            "missing relation {want:?}"
        );
    }

    // graded dimensions 1, 3, 3, 1, 0
    let dims: Vec<usize> = nichols_dimensions(&spec, 4).into_iter().map(|(_, d)| d).collect();
    assert_eq!(dims, vec![1, 3, 3, 1, 0]);

    // same outcome through the command line
    let dir = std::env::temp_dir().join(format!("qnichols-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exterior3.txt");
    std::fs::write(
        &path,
        "dim = 3\nnames = [v1, v2, v3]\nq = [[-1, -1, -1], [-1, -1, -1], [-1, -1, -1]]\n",
    )
    .unwrap();
    let (code, out) = run_command([
        "relations".to_string(),
        "--spec".into(),
        path.to_str().unwrap().into(),
        "--max-degree".into(),
        "4".into(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("relation:").count(), 6, "{out}");
    assert!(out.contains("relation: v1*v2 + v2*v1"), "{out}");

    finish("1 (exterior algebra)", started, Duration::from_secs(5));
}

/// The A_2 quantized Serre relations: the Dynkin image of E1^2 E2, the six
/// intermediate seed vectors, the one-dimensional relation spans on (2,1)
/// and (1,2), and the rejection of (2,2) with a witness.
#[test]
fn criterion_2_uq_sl3() {
    let started = Instant::now();
    let spec = BraidingSpec::uq_sl3();
    let q_plus_qinv = &q_pow(1) + &q_pow(-1);

    let serre_12 = TensorVector::from_terms([
        (word(&[1, 1, 2]), Scalar::one()),
        (word(&[1, 2, 1]), -&q_plus_qinv),
        (word(&[2, 1, 1]), Scalar::one()),
    ]);
    let serre_21 = TensorVector::from_terms([
        (word(&[1, 2, 2]), Scalar::one()),
        (word(&[2, 1, 2]), -&q_plus_qinv),
        (word(&[2, 2, 1]), Scalar::one()),
    ]);

    // coefficient-exact Dynkin image
    assert_eq!(
        dynkin_apply(&TensorVector::from_word(word(&[1, 1, 2])), &spec),
        serre_12
    );

    // the six intermediate u-values
    let u_cases: [(&[u8], TensorVector); 6] = [
        (&[1, 1, 2], TensorVector::from_word(word(&[1, 1, 2])).scale(&Scalar::from_int(2))),
        (
            &[1, 2, 1],
            TensorVector::from_terms([
                (word(&[1, 2, 1]), Scalar::one()),
                (word(&[2, 1, 1]), q_pow(3)),
            ]),
        ),
        (
            &[2, 1, 1],
            TensorVector::from_terms([
                (word(&[2, 1, 1]), Scalar::one()),
                (word(&[1, 2, 1]), q_pow(-3)),
            ]),
        ),
        (
            &[1, 2, 2],
            TensorVector::from_terms([
                (word(&[1, 2, 2]), Scalar::one()),
                (word(&[2, 1, 2]), q_pow(-3)),
            ]),
        ),
        (
            &[2, 1, 2],
            TensorVector::from_terms([
                (word(&[2, 1, 2]), Scalar::one()),
                (word(&[1, 2, 2]), q_pow(3)),
            ]),
        ),
        (&[2, 2, 1], TensorVector::from_word(word(&[2, 2, 1])).scale(&Scalar::from_int(2))),
    ];
    for (letters, want) in &u_cases {
        assert_eq!(&partial_twist_u(&word(letters), &spec), want, "{letters:?}");
    }

    // one-dimensional spans equal to the Serre relations
    let rels_21 = find_relations(&[2, 1], &spec).unwrap();
    assert_eq!(rels_21.len(), 1);
    assert_eq!(rels_21[0].vector, serre_12);
    let rels_12 = find_relations(&[1, 2], &spec).unwrap();
    assert_eq!(rels_12.len(), 1);
    assert_eq!(rels_12[0].vector, serre_21);

    // (2,2) is theta-fixed but rejected, with an explicit 3-letter witness
    let report = level_classify(&[2, 2], &spec);
    assert_eq!(report.verdict, LevelVerdict::ThetaFixedOnly);
    assert!(report.theta_fixed);
    assert!(report
        .violating_subsets
        .iter()
        .any(|(s, letters)| *s == 3 && letters == &vec![1, 1, 2]));

    finish("2 (U_q(sl_3) Serre relations)", started, Duration::from_secs(10));
}

/// The group algebra identities as exact matrix identities for n = 2..6 on
/// three specs, at least three anagram classes each.
#[test]
fn criterion_3_operator_identities() {
    let started = Instant::now();
    let specs = [
        BraidingSpec::exterior(3),
        BraidingSpec::uq_sl3(),
        BraidingSpec::distinct_primes(6),
    ];
    for spec in &specs {
        for n in 2..=6usize {
            for outcome in identity_suite(spec, n).unwrap() {
                assert!(
                    outcome.passed,
                    "identity '{}' failed for n = {n} on dim {} spec",
                    outcome.name,
                    spec.dim()
                );
            }
        }
    }
    finish("3 (operator identities n=2..6)", started, Duration::from_secs(60));
}

/// The convolution identities on every basis word of every class of degree
/// at most five on both example specs.
#[test]
fn criterion_4_convolution_identities() {
    let started = Instant::now();
    for spec in [BraidingSpec::exterior(3), BraidingSpec::uq_sl3()] {
        for degree in 1..=5usize {
            for d in multidegrees(spec.dim(), degree) {
                let class = AnagramClass::new(d);
                for w in class.basis() {
                    let x = TensorVector::from_word(w.clone());
                    assert!(
                        convolution_check_dynkin_id(&x, &spec),
                        "Phi * id failed on {w:?}"
                    );
                    assert!(convolution_check_ns(&x, &spec), "N * S failed on {w:?}");
                }
            }
        }
    }
    finish("4 (convolution identities)", started, Duration::from_secs(60));
}

/// Primitivity: Serre elements for the A_2 and B_2 Cartan data (including
/// the degree-four B_2 relation), and every constructed relation is
/// primitive and killed by all right derivations.
#[test]
fn criterion_5_primitivity() {
    let started = Instant::now();

    let a2 = BraidingSpec::uq_sl3();
    for (i, j) in [(1u8, 2u8), (2, 1)] {
        let rel = serre_element(i, j, &a2, DEFAULT_SERRE_BOUND).unwrap();
        assert!(rel.certificates.primitive);
        assert!(is_primitive(&rel.vector, &a2));
    }

    let b2 = b2_spec();
    let rel_12 = serre_element(1, 2, &b2, DEFAULT_SERRE_BOUND).unwrap();
    assert_eq!(rel_12.multidegree, vec![2, 1]); // N = 2
    assert!(rel_12.certificates.primitive);
    let rel_21 = serre_element(2, 1, &b2, DEFAULT_SERRE_BOUND).unwrap();
    assert_eq!(rel_21.multidegree, vec![1, 3]); // N = 3: a degree-4 relation
    assert!(rel_21.certificates.primitive);
    assert!(is_primitive(&rel_21.vector, &b2));

    // every relation from the sweep is primitive and right-derivation free
    for spec in [BraidingSpec::exterior(3), a2, b2] {
        for outcome in relation_sweep(&spec, 4).unwrap() {
            for rel in &outcome.relations {
                assert!(is_primitive(&rel.vector, &spec));
                for i in 1..=spec.dim() as u8 {
                    assert!(
                        derivation(Side::Right, i, &rel.vector, &spec).is_zero(),
                        "right derivation {i} does not kill {:?}",
                        rel.multidegree
                    );
                }
            }
        }
    }

    finish("5 (primitivity suite)", started, Duration::from_secs(120));
}

/// Graded dimensions of the A_2 Nichols algebra match an independent PBW
/// monomial count with root degrees {1, 1, 2}.
#[test]
fn criterion_6_dimensions_against_pbw_oracle() {
    let started = Instant::now();

    // oracle: brute-force enumeration of exponent vectors (a, b, c) with
    // a*1 + b*1 + c*2 = degree
    fn pbw_count(root_degrees: &[usize], degree: usize) -> usize {
        match root_degrees.split_first() {
            None => usize::from(degree == 0),
            Some((&r, rest)) => {
                let mut total = 0;
                let mut used = 0;
                while used <= degree {
                    total += pbw_count(rest, degree - used);
                    used += r;
                }
                total
            }
        }
    }

    let spec = BraidingSpec::uq_sl3();
    let got = nichols_dimensions(&spec, 4);
    let want: Vec<(usize, usize)> = (0..=4).map(|d| (d, pbw_count(&[1, 1, 2], d))).collect();
    assert_eq!(got, want);
    assert_eq!(
        got.iter().map(|&(_, d)| d).collect::<Vec<_>>(),
        vec![1, 2, 4, 6, 9]
    );

    finish("6 (PBW dimension oracle)", started, Duration::from_secs(60));
}

/// Cross-module invariants re-checked end to end: exact kernels and
/// inverses, monomial structure, coproduct coassociativity on a sample,
/// derivation commutation, the twisted product rule, and agreement of the
/// structured inverse with Gaussian elimination.
#[test]
fn criterion_7_property_suites() {
    let started = Instant::now();
    let spec = BraidingSpec::uq_sl3();

    // kernel and inverse exactness
    let class = AnagramClass::new(vec![2, 1]);
    let s3 = operator_matrix(&named_element(ElementName::SymmetrizerSum, 3), &class, &spec)
        .unwrap();
    for k in kernel(&s3) {
        assert!(s3.apply_vector(&k).unwrap().is_zero());
    }
    let w = BraidWord::new(3, vec![(2, 1), (2, 1)]);
    let inv = invert_one_minus_word(&w, &class, &spec).unwrap();
    let m = operator_matrix(&GroupAlgebraElement::one_minus(&w), &class, &spec).unwrap();
    assert!(m.mul(&inv).is_identity());
    assert!(inv.mul(&m).is_identity());
    assert_eq!(inverse_gauss(&m).unwrap(), inv);

    // monomial structure of braid word actions
    let braid = BraidWord::new(3, vec![(1, 1), (2, 1), (1, 1)]);
    let bm = operator_matrix(&GroupAlgebraElement::from_word(&braid), &class, &spec).unwrap();
    assert!(bm.is_monomial());

    // braid relation as an operator
    let other = BraidWord::new(3, vec![(2, 1), (1, 1), (2, 1)]);
    for basis_word in class.basis() {
        assert_eq!(
            act_word(&braid, basis_word, &spec).unwrap(),
            act_word(&other, basis_word, &spec).unwrap()
        );
    }

    // coassociativity sample
    let x = TensorVector::from_terms([
        (word(&[1, 1, 2, 2]), Scalar::one()),
        (word(&[2, 1, 2, 1]), q_pow(2)),
    ]);
    let mut via_right = std::collections::BTreeMap::new();
    for ((l, r), c) in coproduct_component(&x, 1, &spec) {
        for ((mdl, rr), c2) in coproduct_component(&TensorVector::from_word(r), 2, &spec) {
            let e = via_right
                .entry((l.clone(), mdl, rr))
                .or_insert_with(Scalar::zero);
            *e += &(&c * &c2);
        }
    }
    via_right.retain(|_, v| !v.is_zero());
    let mut via_left = std::collections::BTreeMap::new();
    for ((l, r), c) in coproduct_component(&x, 3, &spec) {
        for ((ll, mdl), c2) in coproduct_component(&TensorVector::from_word(l), 1, &spec) {
            let e = via_left
                .entry((ll, mdl, r.clone()))
                .or_insert_with(Scalar::zero);
            *e += &(&c * &c2);
        }
    }
    via_left.retain(|_, v| !v.is_zero());
    assert_eq!(via_right, via_left);

    // derivation commutation and the twisted product rule
    let y = TensorVector::from_word(word(&[1, 2, 1]));
    for a in 1..=2u8 {
        for b in 1..=2u8 {
            assert_eq!(
                derivation(Side::Right, b, &derivation(Side::Left, a, &y, &spec), &spec),
                derivation(Side::Left, a, &derivation(Side::Right, b, &y, &spec), &spec)
            );
        }
    }
    let xv = TensorVector::from_word(word(&[1, 2]));
    let yv = TensorVector::from_word(word(&[2, 1]));
    for i in 1..=2u8 {
        let lambda = spec.q(1, i) * spec.q(2, i);
        let lhs = derivation(Side::Left, i, &xv.mul(&yv), &spec);
        let rhs = derivation(Side::Left, i, &xv, &spec).mul(&yv).add(
            &xv.mul(&derivation(Side::Left, i, &yv, &spec)).scale(&lambda),
        );
        assert_eq!(lhs, rhs);
    }

    // the convolution identity on a composite vector for good measure
    let mix = TensorVector::from_terms([
        (word(&[1, 2, 1]), Scalar::one()),
        (word(&[2, 1, 1]), q_pow(-1)),
    ]);
    assert!(convolution_check_dynkin_id(&mix, &spec));
    assert!(act_element(&named_element(ElementName::SymmetrizerSum, 3), &mix, &spec).is_ok());

    finish("7 (property suites)", started, Duration::from_secs(60));
}
