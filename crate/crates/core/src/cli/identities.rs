//! Exact operator identity checks for the distinguished braid group
//! algebra elements, run on a deterministic selection of anagram classes.

use std::sync::Arc;

use crate::braidgrp::{
    descending_run, dynkin_element, dynkin_set_element, full_twist_word, garside_word,
    named_element, partial_twist_sum, squared_run, ElementName, GroupAlgebraElement,
};
use crate::tensorspace::{
    multidegrees, operator_matrix, AnagramClass, BraidingSpec, OperatorMatrix, TensorError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub passed: bool,
}

/// Deterministic class pick for degree `n`: the three smallest nontrivial
/// classes in (size, multidegree) order, padded with singleton classes if
/// needed, plus the smallest class supported on at least three letters when
/// one of reasonable size exists.
pub fn classes_for_identities(spec: &BraidingSpec, n: usize) -> Vec<Arc<AnagramClass>> {
    let mut sized: Vec<(usize, Vec<usize>)> = multidegrees(spec.dim(), n)
        .into_iter()
        .map(|d| (class_size(&d), d))
        .collect();
    sized.sort();
    let mut picked: Vec<Vec<usize>> = sized
        .iter()
        .filter(|(s, _)| *s > 1)
        .take(3)
        .map(|(_, d)| d.clone())
        .collect();
    if picked.len() < 3 {
        for (_, d) in &sized {
            if picked.len() >= 3 {
                break;
            }
            if !picked.contains(d) {
                picked.push(d.clone());
            }
        }
    }
    let has_wide = picked.iter().any(|d| support(d) >= 3);
    if !has_wide {
        if let Some((_, d)) = sized
            .iter()
            .find(|(s, d)| support(d) >= 3 && *s <= 64)
        {
            picked.push(d.clone());
        }
    }
    picked.into_iter().map(AnagramClass::new).collect()
}

fn support(d: &[usize]) -> usize {
    d.iter().filter(|&&c| c > 0).count()
}

fn class_size(d: &[usize]) -> usize {
    let n: usize = d.iter().sum();
    let mut num = 1u128;
    for k in 2..=n {
        num *= k as u128;
    }
    let mut den = 1u128;
    for &c in d {
        for k in 2..=c {
            den *= k as u128;
        }
    }
    (num / den) as usize
}

/// Run every identity on every selected class; a single failure fails the
/// identity.
pub fn identity_suite(
    spec: &BraidingSpec,
    n: usize,
) -> Result<Vec<IdentityOutcome>, TensorError> {
    assert!(n >= 2);
    let classes = classes_for_identities(spec, n);
    let mut outcomes = vec![
        IdentityOutcome { name: "symmetrizer_sum = T_2..T_n", passed: true },
        IdentityOutcome { name: "T_n P_n = T_n'", passed: true },
        IdentityOutcome { name: "garside^2 = full_twist = full_twist_alt", passed: true },
        IdentityOutcome { name: "partial_twist_sum (1 - s_{n-1}^2..s_1) = 1 - theta_n", passed: true },
        IdentityOutcome { name: "L_n T_n' = (1 - theta_n)..(1 - theta_2^emb)", passed: true },
        IdentityOutcome { name: "dynkin set form = dynkin product form", passed: true },
        IdentityOutcome { name: "T_n' = (1 - s_{n-1}^2..s_1) X", passed: true },
    ];
    for class in &classes {
        let m = |e: &GroupAlgebraElement| operator_matrix(e, class, spec);

        let sn_sum = m(&named_element(ElementName::SymmetrizerSum, n))?;
        let sn_prod = m(&named_element(ElementName::SymmetrizerProduct, n))?;
        outcomes[0].passed &= sn_sum == sn_prod;

        let tn = named_element(ElementName::TN, n);
        let tn_prime_mat = m(&named_element(ElementName::TNPrime, n))?;
        outcomes[1].passed &= m(&tn.mul(&dynkin_element(n)))? == tn_prime_mat;

        let garside = m(&GroupAlgebraElement::from_word(&garside_word(n)))?;
        let full = m(&named_element(ElementName::FullTwist, n))?;
        let full_alt = m(&named_element(ElementName::FullTwistAlt, n))?;
        outcomes[2].passed &= garside.mul(&garside) == full && full == full_alt;

        let one_minus_run = GroupAlgebraElement::one_minus(&squared_run(n, n, 1));
        let lhs = m(&partial_twist_sum(n).mul(&one_minus_run))?;
        let rhs = m(&GroupAlgebraElement::identity(n)
            .sub(&named_element(ElementName::FullTwist, n)))?;
        outcomes[3].passed &= lhs == rhs;

        let ln = m(&named_element(ElementName::LN, n))?;
        let ln_lhs = ln.mul(&tn_prime_mat);
        let ln_rhs = embedded_twist_product(class, spec, n)?;
        outcomes[4].passed &= ln_lhs == ln_rhs;

        let set_form = m(&dynkin_set_element(1, n, n))?;
        let prod_form = m(&dynkin_element(n))?;
        outcomes[5].passed &= set_form == prod_form;

        let x = named_element(ElementName::XElement, n);
        outcomes[6].passed &= m(&one_minus_run.mul(&x))? == tn_prime_mat;
    }
    Ok(outcomes)
}

/// `(1 - theta_n)(1 - theta_{n-1}^emb) .. (1 - theta_2^emb)` as a matrix,
/// with each `theta_s` embedded on the last `s` strands.
fn embedded_twist_product(
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
    n: usize,
) -> Result<OperatorMatrix, TensorError> {
    let mut acc = OperatorMatrix::identity(Arc::clone(class));
    for s in (2..=n).rev() {
        let theta = if s == 2 {
            // theta_2 embeds as s_{n-1}^2
            descending_run(n, n - 1, n - 1).concat(&descending_run(n, n - 1, n - 1))
        } else {
            full_twist_word(s).embed(n - s, n)
        };
        let factor = operator_matrix(
            &GroupAlgebraElement::one_minus(&theta),
            class,
            spec,
        )?;
        acc = acc.mul(&factor);
    }
    Ok(acc)
}
