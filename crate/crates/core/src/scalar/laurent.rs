use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Rational, ScalarError};

/// Laurent polynomial in `q` with rational coefficients.
///
/// Stored as a map from exponent to nonzero coefficient; the zero polynomial
/// is the empty map, so structural equality decides polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// The variable `q`.
    pub fn var() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// Canonicalize a raw list of terms: merge like exponents, drop zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(raw: I) -> Self {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (exp, c) in raw {
            if c.is_zero() {
                continue;
            }
            match coeffs.entry(exp) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    /// The coefficient at `q^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point. Negative exponents at zero are
    /// a pole.
    pub fn eval(&self, point: &Rational) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            if e >= 0 {
                acc += c * pow_rat(point, e as u32);
            } else {
                if point.is_zero() {
                    return Err(ScalarError::PoleAtPoint);
                }
                acc += c / pow_rat(point, (-e) as u32);
            }
        }
        Ok(acc)
    }

    /// Dense coefficient vector of the polynomial part: `self = q^v * P(q)`
    /// with `P(0) != 0`; returns `(v, coefficients of P from degree 0 up)`.
    pub(crate) fn poly_parts(&self) -> (i64, Vec<Rational>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let v = self.min_exp().unwrap();
        let d = self.max_exp().unwrap() - v;
        let mut dense = vec![Rational::zero(); d as usize + 1];
        for (&e, c) in &self.coeffs {
            dense[(e - v) as usize] = c.clone();
        }
        (v, dense)
    }

    pub(crate) fn from_poly_parts(v: i64, dense: &[Rational]) -> Self {
        Self::from_terms(
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (v + i as i64, c.clone())),
        )
    }

    /// Monic gcd of the polynomial parts of `a` and `b` (q-power content is
    /// discarded). Returns one when either input is zero.
    pub(crate) fn poly_gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::one();
        }
        let (_, mut x) = a.poly_parts();
        let (_, mut y) = b.poly_parts();
        while !y.is_empty() {
            let r = poly_rem(&x, &y);
            x = y;
            y = r;
        }
        // normalize to monic
        let lead = x.last().expect("nonzero gcd").clone();
        let dense: Vec<Rational> = x.iter().map(|c| c / &lead).collect();
        Self::from_poly_parts(0, &dense)
    }

    /// Exact division; panics if `div` does not divide `self` exactly.
    /// Both q-power parts and polynomial parts are divided.
    pub(crate) fn div_exact(&self, div: &Self) -> Self {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let (va, a) = self.poly_parts();
        let (vb, b) = div.poly_parts();
        let (quo, rem) = poly_divmod(&a, &b);
        assert!(rem.is_empty(), "inexact polynomial division");
        Self::from_poly_parts(va - vb, &quo)
    }
}

fn pow_rat(base: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= base;
    }
    acc
}

/// Dense polynomial division: returns (quotient, remainder) with remainder
/// trimmed of leading zeros (empty = zero).
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let blead = &b[db];
    let mut rem: Vec<Rational> = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let dq = rem.len() - 1 - db;
    let mut quo = vec![Rational::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = &rem[k + db] / blead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = bj * &c;
                rem[k + j] -= t;
            }
        }
        quo[k] = c;
    }
    (trim(quo), trim(rem))
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    poly_divmod(a, b).1
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            match self.coeffs.entry(e) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    *en.get_mut() += c;
                    if en.get().is_zero() {
                        en.remove();
                    }
                }
            }
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            match self.coeffs.entry(e) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(-c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    *en.get_mut() -= c;
                    if en.get().is_zero() {
                        en.remove();
                    }
                }
            }
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        // fast path: monomial times anything
        if self.coeffs.len() == 1 {
            let (&e, c) = self.coeffs.iter().next().unwrap();
            return rhs.shift(e).scale(c);
        }
        if rhs.coeffs.len() == 1 {
            let (&e, c) = rhs.coeffs.iter().next().unwrap();
            return self.shift(e).scale(c);
        }
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                let e = ea + eb;
                let t = ca * cb;
                match out.coeffs.entry(e) {
                    std::collections::btree_map::Entry::Vacant(en) => {
                        if !t.is_zero() {
                            en.insert(t);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut en) => {
                        *en.get_mut() += t;
                        if en.get().is_zero() {
                            en.remove();
                        }
                    }
                }
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Emits the scalar-expression grammar: terms in ascending exponent
    /// order joined by `+`/`-`, each `coeff*q^exp` with redundant parts
    /// omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            if first {
                write!(f, "{}", term_string(c, e, true))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term_string(&-c.clone(), e, false))?;
            } else {
                write!(f, " + {}", term_string(c, e, false))?;
            }
        }
        Ok(())
    }
}

fn term_string(c: &Rational, e: i64, keep_sign: bool) -> String {
    let coeff = if keep_sign { c.clone() } else { c.abs() };
    let q_part = match e {
        0 => return format!("{coeff}"),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if coeff.is_one() {
        q_part
    } else {
        format!("{coeff}*{q_part}")
    }
}
