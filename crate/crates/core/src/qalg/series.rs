//! Truncated Laurent series in `u = q^{1/2}` with exact rational coefficients.
//!
//! A series carries its own exactness window: every coefficient at an exponent
//! `<= trunc` is known exactly, nothing above it is stored. Laurent
//! polynomials that are known completely use the [`EXACT`] window.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Window marker for series that are known to all orders.
pub const EXACT: i64 = i64::MAX;

/// Adds a valuation shift to a window, keeping [`EXACT`] absorbing.
pub(crate) fn window_add(window: i64, shift: i64) -> i64 {
    if window == EXACT || shift == EXACT {
        EXACT
    } else {
        window.saturating_add(shift)
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug)]
pub struct QSeries {
    min_exp: i64,
    coeffs: Vec<Rational>,
    trunc: i64,
}

/// First exponent at which two series disagree inside their common window.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl QSeries {
    pub fn zero(trunc: i64) -> Self {
        QSeries { min_exp: 0, coeffs: Vec::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(Rational::one(), 0, trunc)
    }

    pub fn constant(c: Rational, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    /// `c * u^exp`, stored only if `exp <= trunc`.
    pub fn monomial(c: Rational, exp: i64, trunc: i64) -> Self {
        if c.is_zero() || exp > trunc {
            return Self::zero(trunc);
        }
        QSeries { min_exp: exp, coeffs: vec![c], trunc }
    }

    /// `u^exp`.
    pub fn u_pow(exp: i64, trunc: i64) -> Self {
        Self::monomial(Rational::one(), exp, trunc)
    }

    /// `q^exp = u^{2 exp}`.
    pub fn q_pow(exp: i64, trunc: i64) -> Self {
        Self::u_pow(2 * exp, trunc)
    }

    /// Builds a series from a dense coefficient list starting at `min_exp`.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<Rational>, trunc: i64) -> Self {
        let mut s = QSeries { min_exp, coeffs, trunc };
        s.normalize();
        s
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let terms: Vec<(i64, Rational)> = terms.into_iter().filter(|(e, _)| *e <= trunc).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(trunc);
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs, trunc)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(min_exp: i64, coeffs: &[i64], trunc: i64) -> Self {
        Self::from_coeffs(min_exp, coeffs.iter().map(|&c| rat(c)).collect(), trunc)
    }

    fn normalize(&mut self) {
        if self.trunc != EXACT {
            let keep = (self.trunc - self.min_exp + 1).max(0) as usize;
            if keep < self.coeffs.len() {
                self.coeffs.truncate(keep);
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// True when no coefficient is nonzero inside the window.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    /// Lower bound on the true valuation: the first nonzero exponent, or one
    /// past the window for a series that vanishes on its window.
    pub fn val_bound(&self) -> i64 {
        if self.is_zero() {
            window_add(self.trunc, 1)
        } else {
            self.min_exp
        }
    }

    /// Highest stored exponent.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `u^exp`, or `None` when `exp` lies outside the window.
    pub fn coeff(&self, exp: i64) -> Option<Rational> {
        if exp > self.trunc {
            return None;
        }
        let idx = exp - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Single term `c * u^e`, if the series is one.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.coeffs.len() == 1 {
            Some((self.min_exp, &self.coeffs[0]))
        } else {
            None
        }
    }

    /// Shrinks the window to `min(trunc, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.trunc {
            return self.clone();
        }
        Self::from_coeffs(self.min_exp, self.coeffs.clone(), n)
    }

    /// Multiplication by `u^e`.
    pub fn shift(&self, e: i64) -> Self {
        QSeries {
            min_exp: if self.is_zero() { 0 } else { self.min_exp + e },
            coeffs: self.coeffs.clone(),
            trunc: window_add(self.trunc, e),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        QSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc: self.trunc,
        }
    }

    /// Substitution `u -> -u`.
    pub fn flip_u(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.min_exp + i as i64).rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        QSeries { min_exp: self.min_exp, coeffs, trunc: self.trunc }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.is_zero() {
            return other.truncate(trunc);
        }
        if other.is_zero() {
            return self.truncate(trunc);
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap()).min(trunc);
        if hi < lo {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.min_exp + i as i64;
                if e > hi {
                    break;
                }
                if !c.is_zero() {
                    coeffs[(e - lo) as usize] += c;
                }
            }
        }
        Self::from_coeffs(lo, coeffs, trunc)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        // Accumulation into a series that already covers `other` is the hot
        // path in vector propagation; do it in place when possible.
        if other.is_zero() {
            if other.trunc < self.trunc {
                *self = self.truncate(other.trunc);
            }
            return;
        }
        let trunc = self.trunc.min(other.trunc);
        if !self.is_zero()
            && self.trunc <= other.trunc
            && other.min_exp >= self.min_exp
            && other.max_exp().unwrap().min(trunc) <= self.max_exp().unwrap()
        {
            let off = (other.min_exp - self.min_exp) as usize;
            for (i, c) in other.coeffs.iter().enumerate() {
                if other.min_exp + i as i64 > trunc {
                    break;
                }
                self.coeffs[off + i] += c;
            }
            self.normalize();
            return;
        }
        *self = self.add_ref(other);
    }

    pub fn neg_ref(&self) -> Self {
        QSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Product with the Laurent-aware window rule
    /// `trunc = min(trunc_a + val_b, trunc_b + val_a)`.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let trunc = window_add(self.trunc, other.val_bound()).min(window_add(other.trunc, self.val_bound()));
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        if let Some((e, c)) = other.as_monomial() {
            return self.scale(c).shift(e).truncate(trunc);
        }
        if let Some((e, c)) = self.as_monomial() {
            return other.scale(c).shift(e).truncate(trunc);
        }
        let lo = self.min_exp + other.min_exp;
        let hi = (self.max_exp().unwrap() + other.max_exp().unwrap()).min(trunc);
        if hi < lo {
            return Self::zero(trunc);
        }
        let len = (hi - lo + 1) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        let b_terms: Vec<(usize, &Rational)> =
            other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &b_terms {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(lo, coeffs, trunc)
    }

    /// Multiplicative inverse of a unit times a power of `u`.
    ///
    /// With `a = u^v (a_0 + a_1 u + ...)` known through `u^N`, the inverse is
    /// known through `u^{N - 2v}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonUnit);
        }
        if self.is_exact() {
            let len = self.coeffs.len();
            if len == 1 {
                let (e, c) = self.as_monomial().unwrap();
                return Ok(Self::monomial(c.recip(), -e, EXACT));
            }
            return Err(Error::UnboundedWindow("inverse of a non-monomial exact series"));
        }
        let v = self.min_exp;
        let rel = self.trunc - v;
        let n = (rel + 1) as usize;
        let a0_inv = self.coeffs[0].recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                let ai = &self.coeffs[i];
                if !ai.is_zero() && !b[k - i].is_zero() {
                    acc += ai * &b[k - i];
                }
            }
            b.push(-(acc * &a0_inv));
        }
        Ok(Self::from_coeffs(-v, b, self.trunc - 2 * v))
    }

    /// Inverse computed on the window `n` regardless of the input's window.
    pub fn inv_to(&self, n: i64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonUnit);
        }
        let v = self.min_exp;
        self.truncate(n + 2 * v).inv()
    }

    /// `sum_n a^n / n!` for a series of strictly positive valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::one(self.trunc));
        }
        if self.min_exp <= 0 {
            return Err(Error::NonPositiveValuation);
        }
        if self.is_exact() {
            return Err(Error::UnboundedWindow("exponential of an exact series"));
        }
        // f' = a' f  =>  n f_n = sum_{i>=1} i a_i f_{n-i}
        let n_max = self.trunc.max(0) as usize;
        let mut f: Vec<Rational> = vec![Rational::zero(); n_max + 1];
        f[0] = Rational::one();
        let a = |i: usize| -> Option<&Rational> {
            let idx = i as i64 - self.min_exp;
            if idx < 0 {
                None
            } else {
                self.coeffs.get(idx as usize).filter(|c| !c.is_zero())
            }
        };
        for n in 1..=n_max {
            let mut acc = Rational::zero();
            for i in 1..=n {
                if let Some(ai) = a(i) {
                    if !f[n - i].is_zero() {
                        acc += ai * &f[n - i] * rat(i as i64);
                    }
                }
            }
            f[n] = acc / rat(n as i64);
        }
        Ok(Self::from_coeffs(0, f, self.trunc))
    }

    /// Compares on the common window. Returns the window on success.
    pub fn agree(&self, other: &Self) -> std::result::Result<i64, Mismatch> {
        let window = self.trunc.min(other.trunc);
        let lo = match (self.valuation(), other.valuation()) {
            (None, None) => return Ok(window),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let hi = match (self.max_exp(), other.max_exp()) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        }
        .min(window);
        for e in lo..=hi {
            let a = self.coeff(e).unwrap();
            let b = other.coeff(e).unwrap();
            if a != b {
                return Err(Mismatch { exponent: e, lhs: a, rhs: b });
            }
        }
        Ok(window)
    }

    /// Dense coefficient list with its starting exponent (for serialization).
    pub fn dense(&self) -> (i64, &[Rational]) {
        (self.min_exp, &self.coeffs)
    }

    /// True when every stored exponent is even, i.e. the series is a series in `q`.
    pub fn is_integral_in_q(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Renders as a polynomial in `q`, highest power first, without an order
    /// term. Intended for Laurent polynomials.
    pub fn to_q_polynomial_string(&self) -> String {
        let mut terms: Vec<(i64, &Rational)> = self.terms().collect();
        terms.reverse();
        render_terms(&terms)
    }
}

fn q_power_label(e: i64) -> Option<String> {
    if e == 0 {
        return None;
    }
    Some(match (e % 2 == 0, e / 2) {
        (true, 1) => "q".to_string(),
        (true, n) if n > 0 => format!("q^{n}"),
        (true, n) => format!("q^({n})"),
        (false, _) => format!("q^({e}/2)"),
    })
}

fn render_terms(terms: &[(i64, &Rational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match q_power_label(*e) {
            None => out.push_str(&mag.to_string()),
            Some(label) if mag.is_one() => out.push_str(&label),
            Some(label) => out.push_str(&format!("{mag}*{label}")),
        }
    }
    out
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, &Rational)> = self.terms().collect();
        let body = render_terms(&terms);
        if self.is_exact() {
            write!(f, "{body}")
        } else {
            let order = q_power_label(self.trunc + 1).unwrap_or_else(|| "1".into());
            if terms.is_empty() {
                write!(f, "O({order})")
            } else {
                write!(f, "{body} + O({order})")
            }
        }
    }
}

/// Coefficient-wise equality on the common window.
impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.agree(other).is_ok()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                self.$inner(rhs)
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.neg_ref()
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.neg_ref()
    }
}

/// `u^a / (1 - u^b)` expanded on the window `trunc`, via the series inverse.
pub fn geometric(a: i64, b: i64, trunc: i64) -> QSeries {
    let denom = QSeries::from_terms([(0, rat(1)), (b, rat(-1))], trunc - a);
    let inv = denom.inv().expect("1 - u^b is a unit");
    inv.shift(a).truncate(trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_product_is_one() {
        let n = 20;
        let a = QSeries::from_ints(0, &[1, 0, -1], n);
        let b = QSeries::from_coeffs(0, (0..=n).map(|i| rat(if i % 2 == 0 { 1 } else { 0 })).collect(), n);
        let p = &a * &b;
        assert_eq!(p.trunc(), n);
        assert!(p.agree(&QSeries::one(n)).is_ok());
    }

    #[test]
    fn annihilation_and_laurent_inverse_monomial() {
        let a = QSeries::from_ints(-3, &[1, 2, 3], 10);
        let z = QSeries::zero(10);
        assert!((&a * &z).is_zero());
        let p = &QSeries::u_pow(-1, 10) * &QSeries::u_pow(1, 10);
        assert_eq!(p.coeff(0), Some(rat(1)));
        assert_eq!(p.valuation(), Some(0));
    }

    #[test]
    fn inverse_examples() {
        let n = 12;
        let inv = QSeries::from_ints(0, &[1, 0, -1], n).inv().unwrap();
        for e in 0..=n {
            assert_eq!(inv.coeff(e).unwrap(), rat(if e % 2 == 0 { 1 } else { 0 }));
        }
        // 1 / (u (1 + u)) = u^{-1} (1 - u + u^2 - ...)
        let inv = QSeries::from_ints(1, &[1, 1], n).inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.trunc(), n - 2);
        for e in -1..=inv.trunc() {
            let expect = if (e + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(e).unwrap(), rat(expect));
        }
        assert!(matches!(QSeries::zero(5).inv(), Err(Error::NonUnit)));
    }

    #[test]
    fn exp_examples() {
        let n = 8;
        let e = QSeries::u_pow(1, n).exp().unwrap();
        let mut fact = 1i64;
        for k in 0..=n {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(e.coeff(k).unwrap(), ratio(1, fact));
        }
        assert!(QSeries::zero(n).exp().unwrap().agree(&QSeries::one(n)).is_ok());
        let back = &e * &QSeries::from_ints(1, &[-1], n).exp().unwrap();
        assert!(back.agree(&QSeries::one(n)).is_ok());
        assert!(matches!(QSeries::one(n).exp(), Err(Error::NonPositiveValuation)));
    }

    #[test]
    fn window_rule_tracks_negative_valuation() {
        let a = QSeries::u_pow(-4, 10);
        let b = QSeries::from_ints(0, &[1, 1], 10);
        assert_eq!((&a * &b).trunc(), 6);
        let exact = QSeries::from_terms([(-4, rat(1))], EXACT);
        assert_eq!((&exact * &b).trunc(), 6);
        assert!((&exact * &exact).is_exact());
    }

    #[test]
    fn geometric_helper() {
        let g = geometric(2, 2, 10);
        assert_eq!(g.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![2, 4, 6, 8, 10]);
        assert_eq!(g.trunc(), 10);
    }

    #[test]
    fn display() {
        let s = QSeries::from_terms([(2, rat(1)), (0, rat(-1))], EXACT);
        assert_eq!(s.to_q_polynomial_string(), "q - 1");
        let t = QSeries::from_ints(1, &[1, 0, 1], 3);
        assert_eq!(t.to_string(), "q^(1/2) + q^(3/2) + O(q^2)");
    }
}
