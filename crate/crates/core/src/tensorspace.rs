//! Diagonal braided vector spaces: braiding specifications, tensor words,
//! anagram classes, the monomial action of braid generators, and
//! materialization of group algebra elements as exact sparse matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::braidgrp::{BraidWord, GroupAlgebraElement};
use crate::scalar::{LaurentPoly, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("generator position {0} out of range for word of length {1}")]
    IndexOutOfRange(usize, usize),
    #[error("strand count {strands} does not match tensor degree {degree}")]
    DegreeMismatch { strands: usize, degree: usize },
    #[error("braiding entry q[{0}][{1}] is zero")]
    ZeroEntry(usize, usize),
    #[error("malformed braiding spec: {0}")]
    Malformed(String),
}

/// A diagonal braiding: dimension, generator names, and the matrix of
/// nonzero scalars `q_ij` with `sigma(v_i (x) v_j) = q_ij v_j (x) v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidingSpec {
    names: Vec<String>,
    q: Vec<Vec<Scalar>>,
}

impl BraidingSpec {
    pub fn new(names: Vec<String>, q: Vec<Vec<Scalar>>) -> Result<Self, TensorError> {
        let n = names.len();
        if n == 0 {
            return Err(TensorError::Malformed("dimension must be positive".into()));
        }
        if q.len() != n || q.iter().any(|row| row.len() != n) {
            return Err(TensorError::Malformed(format!(
                "braiding matrix must be {n}x{n}"
            )));
        }
        for (i, row) in q.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    return Err(TensorError::ZeroEntry(i + 1, j + 1));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(TensorError::Malformed(format!("duplicate name '{name}'")));
            }
        }
        Ok(Self { names, q })
    }

    /// Braiding from a generalized Cartan matrix and symmetrizing diagonal:
    /// `q_ij = q^(d_i * c_ij)`.
    pub fn from_cartan(
        names: Vec<String>,
        cartan: &[Vec<i64>],
        diag: &[i64],
    ) -> Result<Self, TensorError> {
        let n = names.len();
        if cartan.len() != n || cartan.iter().any(|row| row.len() != n) {
            return Err(TensorError::Malformed(format!(
                "cartan matrix must be {n}x{n}"
            )));
        }
        if diag.len() != n || diag.iter().any(|&d| d <= 0) {
            return Err(TensorError::Malformed(
                "diag must list one positive integer per generator".into(),
            ));
        }
        let q = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Scalar::q_power(diag[i] * cartan[i][j]))
                    .collect()
            })
            .collect();
        Self::new(names, q)
    }

    /// The exterior-algebra braiding: every entry is `-1`.
    pub fn exterior(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("v{i}")).collect();
        let q = vec![vec![Scalar::from_int(-1); dim]; dim];
        Self::new(names, q).expect("valid exterior spec")
    }

    /// The braiding of the positive part of U_q(sl_3): Cartan type A_2.
    pub fn uq_sl3() -> Self {
        Self::from_cartan(
            vec!["E1".into(), "E2".into()],
            &[vec![2, -1], vec![-1, 2]],
            &[1, 1],
        )
        .expect("valid A2 spec")
    }

    /// Braiding with pairwise distinct prime entries: no product of entries
    /// ever collapses to one, so nothing is theta-fixed.
    pub fn distinct_primes(dim: usize) -> Self {
        const PRIMES: [i64; 36] = [
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
        ];
        assert!(dim * dim <= PRIMES.len());
        let names = (1..=dim).map(|i| format!("v{i}")).collect();
        let q = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| Scalar::from_int(PRIMES[i * dim + j]))
                    .collect()
            })
            .collect();
        Self::new(names, q).expect("valid prime spec")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<u8> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| (i + 1) as u8)
    }

    /// Braiding entry for 1-based letters.
    pub fn q(&self, a: u8, b: u8) -> &Scalar {
        &self.q[a as usize - 1][b as usize - 1]
    }

    pub fn q_matrix(&self) -> &[Vec<Scalar>] {
        &self.q
    }

    /// Substitute a rational value for `q` in every entry. Fails when an
    /// entry has a pole or becomes zero at the point.
    pub fn eval_at(&self, point: &Rational) -> Result<Self, TensorError> {
        let mut q = Vec::with_capacity(self.dim());
        for (i, row) in self.q.iter().enumerate() {
            let mut out_row = Vec::with_capacity(self.dim());
            for (j, entry) in row.iter().enumerate() {
                let value = entry
                    .eval_at(point)
                    .map_err(|_| TensorError::Malformed(format!("pole in q[{i}][{j}]")))?;
                if value.is_zero() {
                    return Err(TensorError::ZeroEntry(i + 1, j + 1));
                }
                out_row.push(Scalar::from_rational(value));
            }
            q.push(out_row);
        }
        Self::new(self.names.clone(), q)
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|&a| self.names[a as usize - 1].clone())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Basis tensor word: a sequence of 1-based letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Self(v)
    }

    pub fn split_at(&self, k: usize) -> (Self, Self) {
        let (a, b) = self.0.split_at(k);
        (Self(a.to_vec()), Self(b.to_vec()))
    }

    pub fn multidegree(&self, dim: usize) -> Vec<usize> {
        let mut d = vec![0usize; dim];
        for &a in &self.0 {
            d[a as usize - 1] += 1;
        }
        d
    }
}

/// The span of all words with a fixed multidegree, with its lexicographic
/// basis enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnagramClass {
    multidegree: Vec<usize>,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl AnagramClass {
    pub fn new(multidegree: Vec<usize>) -> Arc<Self> {
        let mut basis = Vec::new();
        let mut counts = multidegree.clone();
        let mut cur: Vec<u8> = Vec::with_capacity(multidegree.iter().sum());
        enumerate_words(&mut counts, &mut cur, &mut basis);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Arc::new(Self {
            multidegree,
            basis,
            index,
        })
    }

    /// The class containing a given word.
    pub fn of_word(w: &Word, dim: usize) -> Arc<Self> {
        Self::new(w.multidegree(dim))
    }

    pub fn multidegree(&self) -> &[usize] {
        &self.multidegree
    }

    pub fn degree(&self) -> usize {
        self.multidegree.iter().sum()
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.basis[i]
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Lexicographically smallest word of the class: `1^(d_1) 2^(d_2) ..`.
    pub fn representative(&self) -> Word {
        let mut letters = Vec::new();
        for (i, &count) in self.multidegree.iter().enumerate() {
            letters.extend(std::iter::repeat_n((i + 1) as u8, count));
        }
        Word::new(letters)
    }
}

fn enumerate_words(counts: &mut [usize], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
    if counts.iter().all(|&c| c == 0) {
        out.push(Word::new(cur.clone()));
        return;
    }
    for i in 0..counts.len() {
        if counts[i] > 0 {
            counts[i] -= 1;
            cur.push((i + 1) as u8);
            enumerate_words(counts, cur, out);
            cur.pop();
            counts[i] += 1;
        }
    }
}

/// All multidegrees over `dim` letters with the given total, in
/// lexicographic order.
pub fn multidegrees(dim: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; dim];
    fn rec(i: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = remaining;
            out.push(cur.clone());
            return;
        }
        for c in 0..=remaining {
            cur[i] = c;
            rec(i + 1, remaining - c, cur, out);
        }
    }
    if dim == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

pub fn multidegree_string(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Apply the generator `sigma_i` (or its inverse) to a word: swap the
/// letters at positions `i, i+1` (1-based) and multiply by the braiding
/// entry of the letters before the swap (its inverse-transpose for the
/// inverse generator).
pub fn act_generator(
    w: &Word,
    i: usize,
    sign: i8,
    spec: &BraidingSpec,
) -> Result<(Scalar, Word), TensorError> {
    if i < 1 || i >= w.len() {
        return Err(TensorError::IndexOutOfRange(i, w.len()));
    }
    let a = w.letters()[i - 1];
    let b = w.letters()[i];
    let mut letters = w.letters().to_vec();
    letters.swap(i - 1, i);
    let coeff = if sign >= 0 {
        spec.q(a, b).clone()
    } else {
        spec.q(b, a).inv().expect("braiding entries are nonzero")
    };
    Ok((coeff, Word::new(letters)))
}

/// Apply a braid word (rightmost generator first) to a tensor word.
pub fn act_word(
    bw: &BraidWord,
    w: &Word,
    spec: &BraidingSpec,
) -> Result<(Scalar, Word), TensorError> {
    if bw.strands() != w.len() {
        return Err(TensorError::DegreeMismatch {
            strands: bw.strands(),
            degree: w.len(),
        });
    }
    let mut coeff = Scalar::one();
    let mut cur = w.clone();
    for &(g, s) in bw.letters().iter().rev() {
        let (c, next) = act_generator(&cur, g, s, spec)?;
        coeff = &coeff * &c;
        cur = next;
    }
    Ok((coeff, cur))
}

/// Exact vector supported on tensor words. All words of one vector have the
/// same total degree; zero coordinates are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    coords: BTreeMap<Word, Scalar>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            self.coords.keys().next().is_none_or(|k| k.len() == w.len()),
            "mixed total degrees in one tensor vector"
        );
        match self.coords.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coords.len()
    }

    /// Total degree of the supporting words (`None` for the zero vector).
    pub fn degree(&self) -> Option<usize> {
        self.coords.keys().next().map(Word::len)
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.coords.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.coords.iter()
    }

    /// First (lexicographically smallest) supported word.
    pub fn leading_word(&self) -> Option<&Word> {
        self.coords.keys().next()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.coords {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coords: self
                .coords
                .iter()
                .map(|(w, k)| (w.clone(), k * c))
                .collect(),
        }
    }

    /// Concatenation product of the tensor algebra.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.coords {
            for (wb, cb) in &rhs.coords {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// Scale so the first nonzero coordinate is one.
    pub fn normalized(&self) -> Self {
        match self.coords.values().next() {
            None => Self::zero(),
            Some(c) => self.scale(&c.inv().expect("leading coordinate is nonzero")),
        }
    }

    /// Coordinates relative to a class basis.
    pub fn to_coords(&self, class: &AnagramClass) -> Result<Vec<Scalar>, TensorError> {
        let mut out = vec![Scalar::zero(); class.size()];
        for (w, c) in &self.coords {
            let i = class.word_index(w).ok_or_else(|| {
                TensorError::Malformed(format!("word outside class {:?}", class.multidegree()))
            })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(class: &AnagramClass, coords: &[Scalar]) -> Self {
        Self::from_terms(
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (class.word(i).clone(), c.clone())),
        )
    }

    pub fn element_string(&self, spec: &BraidingSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = String::new();
        let mut first = true;
        for (w, c) in &self.coords {
            let (sign, mag) = match c.as_rational() {
                Some(r) if r < Rational::zero() => ("-", Scalar::from_rational(-r)),
                _ => ("+", c.clone()),
            };
            if first {
                first = false;
                if sign == "-" {
                    parts.push('-');
                }
            } else {
                parts.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                parts.push_str(&spec.word_string(w));
            } else if mag.is_laurent() && mag.num().num_terms() == 1 {
                parts.push_str(&format!("{}*{}", mag, spec.word_string(w)));
            } else {
                parts.push_str(&format!("({})*{}", mag, spec.word_string(w)));
            }
        }
        parts
    }
}

/// Linear extension of the generator action to group algebra elements.
pub fn act_element(
    e: &GroupAlgebraElement,
    v: &TensorVector,
    spec: &BraidingSpec,
) -> Result<TensorVector, TensorError> {
    let mut out = TensorVector::zero();
    for (bw, ce) in e.terms() {
        for (w, cv) in v.iter() {
            let (c, moved) = act_word(&bw, w, spec)?;
            out.add_term(moved, &(ce * cv) * &c);
        }
    }
    Ok(out)
}

/// Exact sparse matrix of an operator on an anagram class, stored by
/// columns in the class basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    class: Arc<AnagramClass>,
    cols: Vec<BTreeMap<usize, Scalar>>,
}

impl OperatorMatrix {
    pub fn zero(class: Arc<AnagramClass>) -> Self {
        let n = class.size();
        Self {
            class,
            cols: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(class: Arc<AnagramClass>) -> Self {
        let mut m = Self::zero(class);
        for j in 0..m.size() {
            m.cols[j].insert(j, Scalar::one());
        }
        m
    }

    pub fn from_cols(class: Arc<AnagramClass>, cols: Vec<BTreeMap<usize, Scalar>>) -> Self {
        assert_eq!(class.size(), cols.len());
        Self { class, cols }
    }

    pub fn class(&self) -> &Arc<AnagramClass> {
        &self.class
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &BTreeMap<usize, Scalar> {
        &self.cols[j]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Scalar) {
        if value.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, value);
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, col)| {
            col.len() == 1 && col.get(&j).is_some_and(Scalar::is_one)
        })
    }

    /// One nonzero entry per column and per row.
    pub fn is_monomial(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for col in &self.cols {
            if col.len() != 1 {
                return false;
            }
            let (&r, _) = col.iter().next().unwrap();
            if seen[r] {
                return false;
            }
            seen[r] = true;
        }
        true
    }

    pub fn apply_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.size()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&i, m) in &self.cols[j] {
                out[i] += &(m * c);
            }
        }
        out
    }

    pub fn apply_vector(&self, v: &TensorVector) -> Result<TensorVector, TensorError> {
        let coords = v.to_coords(&self.class)?;
        let out = self.apply_coords(&coords);
        Ok(TensorVector::from_coords(&self.class, &out))
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size(), rhs.size());
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (&k, c) in col {
                    for (&i, m) in &self.cols[k] {
                        let t = m * c;
                        if t.is_zero() {
                            continue;
                        }
                        match out.entry(i) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(t);
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                *e.get_mut() += &t;
                                if e.get().is_zero() {
                                    e.remove();
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Self {
            class: Arc::clone(&self.class),
            cols,
        }
    }

}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size() {
            let row: Vec<String> = (0..self.size())
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Materialize a group algebra element as a matrix on a class: column `j` is
/// the action on the `j`-th basis word.
pub fn operator_matrix(
    e: &GroupAlgebraElement,
    class: &Arc<AnagramClass>,
    spec: &BraidingSpec,
) -> Result<OperatorMatrix, TensorError> {
    let mut m = OperatorMatrix::zero(Arc::clone(class));
    for (bw, ce) in e.terms() {
        for (j, w) in class.basis().iter().enumerate() {
            let (c, moved) = act_word(&bw, w, spec)?;
            let i = class.word_index(&moved).expect("action preserves the class");
            let cur = m.entry(i, j);
            m.set_entry(i, j, &cur + &(ce * &c));
        }
    }
    Ok(m)
}

/// Eigenvalue of the full twist on a word: the product of braiding entries
/// over all ordered pairs of distinct positions.
pub fn full_twist_scalar(w: &Word, spec: &BraidingSpec) -> Scalar {
    let mut acc = Scalar::one();
    let ls = w.letters();
    for i in 0..ls.len() {
        for j in 0..ls.len() {
            if i != j {
                acc = &acc * spec.q(ls[i], ls[j]);
            }
        }
    }
    acc
}

/// Full twist eigenvalue of a multiset of letters given by counts: the
/// positions contribute `q_aa^(c_a (c_a - 1))` per letter and
/// `(q_ab q_ba)^(c_a c_b)` per unordered pair of distinct letters.
pub fn multiset_twist_scalar(counts: &[usize], spec: &BraidingSpec) -> Scalar {
    let mut acc = Scalar::one();
    for (i, &ci) in counts.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        let a = (i + 1) as u8;
        let diag = spec
            .q(a, a)
            .pow((ci * (ci - 1)) as i64)
            .expect("nonzero entry");
        acc = &acc * &diag;
        for (j, &cj) in counts.iter().enumerate().skip(i + 1) {
            if cj == 0 {
                continue;
            }
            let b = (j + 1) as u8;
            let cross = &(spec.q(a, b) * spec.q(b, a));
            acc = &acc * &cross.pow((ci * cj) as i64).expect("nonzero entry");
        }
    }
    acc
}

/// Convenience: `q^k` spelled via the Laurent layer.
pub fn q_pow(k: i64) -> Scalar {
    Scalar::from_laurent(LaurentPoly::monomial(k, num_traits::One::one()))
}
