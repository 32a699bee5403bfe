//! Symmetric-group and braid-group combinatorics.
//!
//! Permutations compose like functions: in a product `w * w'` the right
//! factor acts first. Braid words act on tensor positions on the left under
//! the same convention, so the rightmost generator of a word is applied
//! first. All formulas below are transcribed under this single convention.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("unknown named element '{0}'")]
    UnknownName(String),
}

/// Permutation of `{0, .., n-1}` in one-line notation: `images[i]` is the
/// image of position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Build from one-line notation over `{0, .., n-1}`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v < n && !seen[v], "not a permutation: {images:?}");
            seen[v] = true;
        }
        Self { images }
    }

    /// Build from one-line notation over `{1, .., n}`.
    pub fn from_one_line(images: &[usize]) -> Self {
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Cycle on 1-based entries; remaining points are fixed.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for w in cycle.windows(2) {
            images[w[0] - 1] = w[1] - 1;
        }
        if cycle.len() > 1 {
            images[cycle[cycle.len() - 1] - 1] = cycle[0] - 1;
        }
        Self::from_images(images)
    }

    /// Adjacent transposition `s_i` (1-based generator index).
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Self { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: `(self * rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.size(), rhs.size());
        Self {
            images: rhs.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Self { images }
    }

    /// Number of inversions; equals the Coxeter length.
    pub fn length(&self) -> usize {
        let n = self.size();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// All permutations of `{0, .., n-1}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                return out;
            }
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Letter of a braid word: 1-based generator index and exponent sign.
pub type Letter = (usize, i8);

/// Word in the braid group on `strands` strands. Words are kept as written;
/// no normal form is computed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Self {
        for &(g, s) in &letters {
            assert!(g >= 1 && g < strands, "generator index {g} out of range");
            assert!(s == 1 || s == -1, "exponent must be +1 or -1");
        }
        Self { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        assert_eq!(self.strands, rhs.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Self {
            strands: self.strands,
            letters,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, s)| (g, -s))
                .collect(),
        }
    }

    pub fn repeat(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Shift every generator index by `r` into a braid group on `strands`
    /// strands (positional embedding).
    pub fn embed(&self, r: usize, strands: usize) -> Self {
        let letters: Vec<Letter> = self.letters.iter().map(|&(g, s)| (g + r, s)).collect();
        BraidWord::new(strands, letters)
    }

    /// Image under the canonical surjection onto the symmetric group. The
    /// rightmost letter acts first, so the product reads left to right.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut q = Permutation::identity(self.strands);
        for &(g, _) in &self.letters {
            q = q.compose(&Permutation::transposition(self.strands, g));
        }
        q
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, s)| {
                if s == 1 {
                    format!("s{g}")
                } else {
                    format!("s{g}^-1")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for BraidWord {
    type Err = String;

    /// Parses the display form `s1*s2*s1^-1`; `1` is the empty word. The
    /// strand count is the smallest braid group containing the word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(BraidWord::identity(1));
        }
        let mut letters = Vec::new();
        let mut max_gen = 0usize;
        for part in s.split('*') {
            let part = part.trim();
            let rest = part
                .strip_prefix('s')
                .ok_or_else(|| format!("expected generator, got '{part}'"))?;
            let (digits, sign) = match rest.strip_suffix("^-1") {
                Some(d) => (d, -1i8),
                None => (rest, 1i8),
            };
            let g: usize = digits
                .parse()
                .map_err(|_| format!("invalid generator index '{digits}'"))?;
            if g == 0 {
                return Err("generator indices start at 1".into());
            }
            max_gen = max_gen.max(g);
            letters.push((g, sign));
        }
        Ok(BraidWord::new(max_gen + 1, letters))
    }
}

/// Matsumoto section: the lexicographically smallest reduced word of `w`,
/// lifted letter for letter with positive exponents.
pub fn matsumoto_lift(w: &Permutation) -> BraidWord {
    let n = w.size();
    let mut cur = w.clone();
    let mut pos = cur.inverse(); // pos.apply(v) = position of value v
    let mut letters = Vec::with_capacity(cur.length());
    loop {
        // smallest generator g (0-based values g, g+1) with value g+1 left of value g
        let mut found = None;
        for g in 0..n.saturating_sub(1) {
            if pos.apply(g + 1) < pos.apply(g) {
                found = Some(g);
                break;
            }
        }
        let Some(g) = found else { break };
        letters.push((g + 1, 1i8));
        // strip: cur := s_g * cur swaps the values g and g+1
        let (pg, pg1) = (pos.apply(g), pos.apply(g + 1));
        let mut images = cur.images.clone();
        images.swap(pg, pg1);
        cur = Permutation { images };
        pos = cur.inverse();
    }
    debug_assert!(cur.is_identity());
    BraidWord::new(n.max(1), letters)
}

/// The `(k, n-k)`-shuffles: permutations preserving the relative order of
/// the first `k` and of the last `n-k` values. Cardinality `C(n, k)`.
pub fn shuffles(k: usize, n: usize) -> Vec<Permutation> {
    assert!(k <= n);
    let mut out = Vec::new();
    for positions in combinations(n, k) {
        let mut images = vec![usize::MAX; n];
        for (t, &p) in positions.iter().enumerate() {
            images[p] = t;
        }
        let mut next = k;
        for img in images.iter_mut() {
            if *img == usize::MAX {
                *img = next;
                next += 1;
            }
        }
        out.push(Permutation::from_images(images));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The signed permutation set `P_{i,j}` (1-based, `i <= j <= n`) defined by
/// the recursion
/// `P_{i,j} = P_{i+1,j} u (P_{i,j-1} o -(i,j,j-1,..,i+1))`,
/// where the cycle composes as the right factor (applied first). The
/// cardinality is `2^(j-i)`.
pub fn dynkin_set(i: usize, j: usize, n: usize) -> Vec<(i8, Permutation)> {
    assert!(1 <= i && i <= j && j <= n);
    if i == j {
        return vec![(1, Permutation::identity(n))];
    }
    if j == i + 1 {
        return vec![
            (1, Permutation::identity(n)),
            (-1, Permutation::transposition(n, i)),
        ];
    }
    let mut out = dynkin_set(i + 1, j, n);
    let mut cycle = vec![i];
    cycle.extend((i + 1..=j).rev());
    let c = Permutation::from_cycle(n, &cycle);
    for (sign, w) in dynkin_set(i, j - 1, n) {
        out.push((-sign, w.compose(&c)));
    }
    out
}

/// Formal linear combination of braid words with scalar coefficients.
///
/// Two distinct written words may represent the same group element; semantic
/// equality is decided through operator matrices, never on words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    strands: usize,
    terms: BTreeMap<Vec<Letter>, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(strands: usize) -> Self {
        Self {
            strands,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(strands: usize) -> Self {
        Self::from_word(&BraidWord::identity(strands))
    }

    pub fn from_word(w: &BraidWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.letters().to_vec(), Scalar::one());
        Self {
            strands: w.strands(),
            terms,
        }
    }

    pub fn from_terms<I>(strands: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BraidWord, Scalar)>,
    {
        let mut out = Self::zero(strands);
        for (w, c) in terms {
            assert_eq!(w.strands(), strands);
            out.add_term(w.letters().to_vec(), c);
        }
        out
    }

    fn add_term(&mut self, letters: Vec<Letter>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(letters) {
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

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BraidWord, &Scalar)> {
        self.terms
            .iter()
            .map(|(ls, c)| (BraidWord::new(self.strands, ls.clone()), c))
    }

    pub fn coeff(&self, w: &BraidWord) -> Scalar {
        self.terms
            .get(w.letters())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.strands, rhs.strands);
        let mut out = self.clone();
        for (ls, c) in &rhs.terms {
            out.add_term(ls.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            strands: self.strands,
            terms: self.terms.iter().map(|(ls, c)| (ls.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.strands);
        }
        Self {
            strands: self.strands,
            terms: self.terms.iter().map(|(ls, k)| (ls.clone(), k * c)).collect(),
        }
    }

    /// Product in the group algebra: words concatenate.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.strands, rhs.strands);
        let mut out = Self::zero(self.strands);
        for (la, ca) in &self.terms {
            for (lb, cb) in &rhs.terms {
                let mut letters = la.clone();
                letters.extend_from_slice(lb);
                out.add_term(letters, ca * cb);
            }
        }
        out
    }

    /// `1 - w`.
    pub fn one_minus(w: &BraidWord) -> Self {
        let mut out = Self::identity(w.strands());
        out.add_term(w.letters().to_vec(), -&Scalar::one());
        out
    }

    /// `1 + w + w^2 + .. + w^count`.
    pub fn geometric_sum(w: &BraidWord, count: usize) -> Self {
        let mut out = Self::zero(w.strands());
        for k in 0..=count {
            out.add_term(w.repeat(k).letters().to_vec(), Scalar::one());
        }
        out
    }

    /// Positional embedding: shift all generator indices by `r` into the
    /// braid group algebra on `strands` strands.
    pub fn embed(&self, r: usize, strands: usize) -> Self {
        let mut out = Self::zero(strands);
        for (ls, c) in &self.terms {
            let letters: Vec<Letter> = ls.iter().map(|&(g, s)| (g + r, s)).collect();
            for &(g, _) in &letters {
                assert!(g < strands);
            }
            out.add_term(letters, c.clone());
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ls, c) in &self.terms {
            let word = BraidWord::new(self.strands, ls.clone());
            let (sign, mag) = if let Some(r) = c.as_rational() {
                if r < num_traits::Zero::zero() {
                    ("-", Scalar::from_rational(-r))
                } else {
                    ("+", c.clone())
                }
            } else {
                ("+", c.clone())
            };
            if first {
                first = false;
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{word}")?;
            } else if mag.is_laurent() && mag.num().num_terms() > 1 {
                write!(f, "({mag})*{word}")?;
            } else {
                write!(f, "{mag}*{word}")?;
            }
        }
        Ok(())
    }
}

/// Names of the distinguished braid group algebra elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementName {
    /// Garside element `Delta_n`.
    Garside,
    /// Full twist `theta_n = Delta_n^2` as `(s_{n-1} .. s_1)^n`.
    FullTwist,
    /// Full twist in the presentation `(s_{n-1}^2 s_{n-2} .. s_1)^(n-1)`.
    FullTwistAlt,
    /// `T_n = 1 + s_{n-1} + s_{n-1}s_{n-2} + .. + s_{n-1} .. s_1`.
    TN,
    /// `T_n' = (1 - s_{n-1}^2 s_{n-2} .. s_1) .. (1 - s_{n-1}^2)`.
    TNPrime,
    /// `L_n`, the product of partial geometric sums.
    LN,
    /// `X`, the tail of the factorization `T_n' = (1 - s_{n-1}^2 .. s_1) X`.
    XElement,
    /// `S_n` as the sum of Matsumoto lifts over the symmetric group.
    SymmetrizerSum,
    /// `S_n` in the product form `T_2 T_3 .. T_n`.
    SymmetrizerProduct,
}

impl FromStr for ElementName {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "garside" => Self::Garside,
            "full_twist" => Self::FullTwist,
            "full_twist_alt" => Self::FullTwistAlt,
            "t_n" => Self::TN,
            "t_n_prime" => Self::TNPrime,
            "l_n" => Self::LN,
            "x_element" => Self::XElement,
            "symmetrizer_sum" => Self::SymmetrizerSum,
            "symmetrizer_product" => Self::SymmetrizerProduct,
            other => return Err(BraidError::UnknownName(other.to_string())),
        })
    }
}

/// `s_a s_{a-1} .. s_b` for `a >= b` (empty when `a < b`).
pub(crate) fn descending_run(strands: usize, a: usize, b: usize) -> BraidWord {
    if a < b {
        return BraidWord::identity(strands);
    }
    BraidWord::new(strands, (b..=a).rev().map(|g| (g, 1i8)).collect())
}

/// `s_a s_{a+1} .. s_b` for `a <= b`.
fn ascending_run(strands: usize, a: usize, b: usize) -> BraidWord {
    BraidWord::new(strands, (a..=b).map(|g| (g, 1i8)).collect())
}

/// `s_{n-1}^2 s_{n-2} .. s_i`.
pub(crate) fn squared_run(strands: usize, n: usize, i: usize) -> BraidWord {
    let head = BraidWord::new(strands, vec![(n - 1, 1), (n - 1, 1)]);
    head.concat(&descending_run(strands, n - 2, i))
}

/// Garside element as a braid word.
pub fn garside_word(n: usize) -> BraidWord {
    assert!(n >= 2);
    let mut w = BraidWord::identity(n);
    for m in (1..n).rev() {
        w = w.concat(&ascending_run(n, 1, m));
    }
    w
}

/// Full twist `(s_{n-1} .. s_1)^n` as a braid word.
pub fn full_twist_word(n: usize) -> BraidWord {
    assert!(n >= 2);
    descending_run(n, n - 1, 1).repeat(n)
}

/// The distinguished elements, each expanded exactly as written in its
/// defining formula (products expanded distributively).
pub fn named_element(name: ElementName, n: usize) -> GroupAlgebraElement {
    match name {
        ElementName::Garside => {
            assert!(n >= 2);
            GroupAlgebraElement::from_word(&garside_word(n))
        }
        ElementName::FullTwist => {
            assert!(n >= 2);
            GroupAlgebraElement::from_word(&full_twist_word(n))
        }
        ElementName::FullTwistAlt => {
            assert!(n >= 2);
            GroupAlgebraElement::from_word(&squared_run(n, n, 1).repeat(n - 1))
        }
        ElementName::TN => {
            assert!(n >= 2);
            GroupAlgebraElement::from_terms(
                n,
                (0..n).map(|k| (descending_run(n, n - 1, n - k), Scalar::one())),
            )
        }
        ElementName::TNPrime => {
            assert!(n >= 2);
            let mut out = GroupAlgebraElement::identity(n);
            for i in 1..n {
                out = out.mul(&GroupAlgebraElement::one_minus(&squared_run(n, n, i)));
            }
            out
        }
        ElementName::LN => {
            assert!(n >= 2);
            let mut out = GroupAlgebraElement::identity(n);
            for j in (1..=n.saturating_sub(2)).rev() {
                out = out.mul(&GroupAlgebraElement::geometric_sum(
                    &squared_run(n, n, j),
                    n - 1 - j,
                ));
            }
            out
        }
        ElementName::XElement => {
            assert!(n >= 2);
            let mut out = GroupAlgebraElement::identity(n);
            for i in 2..n {
                out = out.mul(&GroupAlgebraElement::one_minus(&squared_run(n, n, i)));
            }
            out
        }
        ElementName::SymmetrizerSum => {
            assert!(n >= 1);
            GroupAlgebraElement::from_terms(
                n,
                Permutation::all(n)
                    .iter()
                    .map(|w| (matsumoto_lift(w), Scalar::one())),
            )
        }
        ElementName::SymmetrizerProduct => {
            assert!(n >= 1);
            let mut out = GroupAlgebraElement::identity(n);
            for m in 2..=n {
                out = out.mul(&t_m_in(n, m));
            }
            out
        }
    }
}

/// `T_m` viewed inside the braid group algebra on `n` strands.
fn t_m_in(n: usize, m: usize) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(
        n,
        (0..m).map(|k| (descending_run(n, m - 1, m - k), Scalar::one())),
    )
}

/// Dynkin operator `P_n` in the expanded product form
/// `(1 - s_{n-1} .. s_1)(1 - s_{n-1} .. s_2) .. (1 - s_{n-1})`.
/// `P_1` is the identity element.
pub fn dynkin_element(n: usize) -> GroupAlgebraElement {
    assert!(n >= 1);
    if n == 1 {
        return GroupAlgebraElement::identity(1);
    }
    let mut out = GroupAlgebraElement::identity(n);
    for i in 1..n {
        out = out.mul(&GroupAlgebraElement::one_minus(&descending_run(
            n,
            n - 1,
            i,
        )));
    }
    out
}

/// The geometric sum `sum_{k=0}^{n-2} (s_{n-1}^2 s_{n-2} .. s_1)^k`.
pub fn partial_twist_sum(n: usize) -> GroupAlgebraElement {
    assert!(n >= 2);
    GroupAlgebraElement::geometric_sum(&squared_run(n, n, 1), n - 2)
}

/// Signed sum of Matsumoto lifts of a Dynkin set.
pub fn dynkin_set_element(i: usize, j: usize, n: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(n);
    for (sign, w) in dynkin_set(i, j, n) {
        let c = if sign >= 0 {
            Scalar::one()
        } else {
            -&Scalar::one()
        };
        out = out.add(&GroupAlgebraElement::from_word(&matsumoto_lift(&w)).scale(&c));
    }
    out
}
