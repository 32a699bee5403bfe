//! Hopf-algebra layer on tensor words: coproduct components via shuffles,
//! primitivity, the antipode recursion, the Dynkin map and the two
//! convolution identities, and the letter skew-derivations.

use std::collections::{BTreeMap, HashMap};

use crate::braidgrp::{dynkin_element, matsumoto_lift, shuffles};
use crate::scalar::Scalar;
use crate::tensorspace::{act_element, act_word, BraidingSpec, TensorVector, Word};

use super::GradedElement;

/// Bidegree component of a coproduct: coefficient per split word pair.
pub type SplitTerms = BTreeMap<(Word, Word), Scalar>;

/// The bidegree `(k, n-k)` component of the coproduct of a homogeneous
/// vector: the sum over `(k, n-k)`-shuffle lifts acting on each word,
/// split after position `k`.
pub fn coproduct_component(x: &TensorVector, k: usize, spec: &BraidingSpec) -> SplitTerms {
    let mut out = SplitTerms::new();
    let Some(n) = x.degree() else { return out };
    assert!(k <= n, "bidegree out of range");
    if n == 0 {
        // Delta(1) = 1 (x) 1
        let c = x.coeff(&Word::empty());
        if !c.is_zero() {
            out.insert((Word::empty(), Word::empty()), c);
        }
        return out;
    }
    for sigma in shuffles(k, n) {
        let lift = matsumoto_lift(&sigma);
        for (w, c) in x.iter() {
            let (s, moved) = act_word(&lift, w, spec).expect("degree matches strand count");
            let pair = moved.split_at(k);
            let coeff = c * &s;
            if coeff.is_zero() {
                continue;
            }
            match out.entry(pair) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &coeff;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
    out
}

/// Primitive means every proper bidegree component of the coproduct
/// vanishes. Degree-one vectors are primitive by definition.
pub fn is_primitive(x: &TensorVector, spec: &BraidingSpec) -> bool {
    let Some(n) = x.degree() else { return true };
    (1..n).all(|k| coproduct_component(x, k, spec).is_empty())
}

pub fn is_primitive_graded(x: &GradedElement, spec: &BraidingSpec) -> bool {
    x.components().all(|(_, v)| is_primitive(v, spec))
}

/// Antipode by degree recursion: `S(1) = 1` and
/// `S(x) = -x - sum S(x') x''` over proper bidegree components.
/// The construction forces `m (S (x) id) Delta = unit counit`, which is
/// re-verified in tests.
pub fn antipode(x: &GradedElement, spec: &BraidingSpec) -> GradedElement {
    let mut memo = HashMap::new();
    let mut out = GradedElement::zero();
    for (_, v) in x.components() {
        out.add_vector(&antipode_with_memo(v, spec, &mut memo));
    }
    out
}

/// Antipode of a homogeneous vector.
pub fn antipode_vector(x: &TensorVector, spec: &BraidingSpec) -> TensorVector {
    let mut memo = HashMap::new();
    antipode_with_memo(x, spec, &mut memo)
}

fn antipode_with_memo(
    x: &TensorVector,
    spec: &BraidingSpec,
    memo: &mut HashMap<Word, TensorVector>,
) -> TensorVector {
    let mut out = TensorVector::zero();
    for (w, c) in x.iter() {
        out = out.add(&antipode_word(w, spec, memo).scale(c));
    }
    out
}

fn antipode_word(
    w: &Word,
    spec: &BraidingSpec,
    memo: &mut HashMap<Word, TensorVector>,
) -> TensorVector {
    if w.is_empty() {
        return TensorVector::from_word(Word::empty());
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let n = w.len();
    let single = TensorVector::from_word(w.clone());
    let mut acc = single.neg();
    for k in 1..n {
        for ((l, r), c) in coproduct_component(&single, k, spec) {
            let sl = antipode_word(&l, spec, memo);
            let term = sl.mul(&TensorVector::from_word(r)).scale(&c);
            acc = acc.sub(&term);
        }
    }
    memo.insert(w.clone(), acc.clone());
    acc
}

/// The Dynkin map: `P_n` acting on a homogeneous degree-`n` vector;
/// constants map to zero.
pub fn dynkin_apply(x: &TensorVector, spec: &BraidingSpec) -> TensorVector {
    match x.degree() {
        None | Some(0) => TensorVector::zero(),
        Some(n) => act_element(&dynkin_element(n), x, spec).expect("degree matches"),
    }
}

/// Checks `(Phi * id)(x) = n x` (convolution product against the identity).
pub fn convolution_check_dynkin_id(x: &TensorVector, spec: &BraidingSpec) -> bool {
    let Some(n) = x.degree() else { return true };
    let mut lhs = TensorVector::zero();
    for k in 0..=n {
        for ((l, r), c) in coproduct_component(x, k, spec) {
            let phi_l = dynkin_apply(&TensorVector::from_word(l), spec);
            if phi_l.is_zero() {
                continue;
            }
            lhs = lhs.add(&phi_l.mul(&TensorVector::from_word(r)).scale(&c));
        }
    }
    lhs == x.scale(&Scalar::from_int(n as i64))
}

/// Checks `(N * S)(x) = Phi(x)` where `N` is the number operator.
pub fn convolution_check_ns(x: &TensorVector, spec: &BraidingSpec) -> bool {
    let Some(n) = x.degree() else { return true };
    let mut memo = HashMap::new();
    let mut lhs = TensorVector::zero();
    for k in 0..=n {
        if k == 0 {
            continue; // N(1) = 0
        }
        for ((l, r), c) in coproduct_component(x, k, spec) {
            let s_r = antipode_with_memo(&TensorVector::from_word(r), spec, &mut memo);
            let term = TensorVector::from_word(l)
                .mul(&s_r)
                .scale(&(&c * &Scalar::from_int(k as i64)));
            lhs = lhs.add(&term);
        }
    }
    lhs == dynkin_apply(x, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Letter skew-derivation. The left derivation pairs the length-one left
/// factor of the `(1, n-1)` coproduct component with letter `i`; the right
/// derivation reads the `(n-1, 1)` component and the last letter.
pub fn derivation(side: Side, i: u8, x: &TensorVector, spec: &BraidingSpec) -> TensorVector {
    let Some(n) = x.degree() else {
        return TensorVector::zero();
    };
    if n == 0 {
        return TensorVector::zero();
    }
    let mut out = TensorVector::zero();
    match side {
        Side::Left => {
            for ((l, r), c) in coproduct_component(x, 1, spec) {
                if l.letters() == [i] {
                    out.add_term(r, c);
                }
            }
        }
        Side::Right => {
            for ((l, r), c) in coproduct_component(x, n - 1, spec) {
                if r.letters() == [i] {
                    out.add_term(l, c);
                }
            }
        }
    }
    out
}
