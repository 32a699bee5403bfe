use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational, ScalarError};

/// Reduced rational function in `q`.
///
/// Canonical form: the denominator is a genuine polynomial (lowest exponent
/// zero) with integer coefficients of content one and positive leading
/// coefficient, coprime to the polynomial part of the numerator. The
/// representative is unique per equivalence class, so derived equality and
/// hashing are semantic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Reduce `num/den` to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_one() {
            return Ok(Self { num, den });
        }
        // clear q-powers out of the denominator
        let vd = den.min_exp().unwrap();
        let mut den = den.shift(-vd);
        let mut num = num.shift(-vd);
        // cancel the common polynomial factor
        let g = LaurentPoly::poly_gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g);
            den = den.div_exact(&g);
        }
        // scale the denominator to integer content one, positive leading
        let c = rational_content(&den);
        if !c.is_one() {
            let inv = Rational::one() / &c;
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    /// The variable `q`.
    pub fn var() -> Self {
        Self::from_laurent(LaurentPoly::var())
    }

    /// The monomial `q^exp`.
    pub fn q_power(exp: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(exp, Rational::one()))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the scalar is a Laurent polynomial (denominator one).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying rational if the scalar is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_at(&self, point: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.eval(point)? / d)
    }
}

/// Positive rational `c` such that `p/c` has integer coefficients with
/// content one; the sign makes the leading coefficient positive.
fn rational_content(p: &LaurentPoly) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut content = Rational::new(num_gcd, den_lcm);
    if p.leading_coeff().is_some_and(Signed::is_negative) {
        content = -content;
    }
    content
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator product")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator product")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero scalar");
        self * &rhs.inv().unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for RatFunc {
    /// Emits the scalar-expression grammar. Rational functions with a
    /// nontrivial denominator print as `num/(den)`; the parser accepts the
    /// same form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}
