//! Polynomials in coupling constants `t_1, t_2, ...` (and an optional
//! instanton counting parameter `Q`) with [`QSeries`] coefficients,
//! truncated in total t-degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::series::{window_add, Mismatch, QSeries, Rational, EXACT};
use crate::error::{Error, Result};

/// Exponent vector of a term: one entry per coupling, plus the power of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t: Vec<u32>,
    pub q: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { t: vec![0; nvars], q: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.t.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
            q: self.q + other.q,
        }
    }
}

/// Truncated polynomial over the series ring.
///
/// Terms missing from the map are zero through `u^{absent_trunc}`. Stored
/// zeros carry a smaller window, so cancellations certified only on a
/// finite window are never mistaken for exact zeros.
#[derive(Clone, Debug)]
pub struct TPoly {
    nvars: usize,
    t_trunc: u32,
    terms: BTreeMap<Monomial, QSeries>,
    absent_trunc: i64,
}

/// Disagreement between two polynomials at one monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TermMismatch {
    pub monomial: Monomial,
    pub mismatch: Mismatch,
}

impl TPoly {
    pub fn zero(nvars: usize, t_trunc: u32) -> Self {
        TPoly { nvars, t_trunc, terms: BTreeMap::new(), absent_trunc: EXACT }
    }

    pub fn constant(nvars: usize, t_trunc: u32, c: QSeries) -> Self {
        let mut p = Self::zero(nvars, t_trunc);
        p.insert(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, t_trunc: u32) -> Self {
        Self::constant(nvars, t_trunc, QSeries::one(EXACT))
    }

    /// `c * t_var`.
    pub fn var(nvars: usize, t_trunc: u32, var: usize, c: QSeries) -> Self {
        let mut m = Monomial::one(nvars);
        m.t[var] = 1;
        Self::term(nvars, t_trunc, m, c)
    }

    /// `c * Q^n`.
    pub fn q_power(nvars: usize, t_trunc: u32, n: u32, c: QSeries) -> Self {
        Self::term(nvars, t_trunc, Monomial { t: vec![0; nvars], q: n }, c)
    }

    pub fn term(nvars: usize, t_trunc: u32, m: Monomial, c: QSeries) -> Self {
        assert_eq!(m.t.len(), nvars);
        let mut p = Self::zero(nvars, t_trunc);
        p.insert(m, c);
        p
    }

    /// Adds `c` to the coefficient of `m`. A zero is dropped only when its
    /// window is no smaller than the absent-term window.
    pub fn insert(&mut self, m: Monomial, c: QSeries) {
        if m.degree() > self.t_trunc {
            return;
        }
        let slot = self.terms.entry(m);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                // The slot held zero modulo u^{absent_trunc}.
                let c = if c.trunc() > self.absent_trunc { c.truncate(self.absent_trunc) } else { c };
                if !(c.is_zero() && c.trunc() >= self.absent_trunc) {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() && o.get().trunc() >= self.absent_trunc {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn t_trunc(&self) -> u32 {
        self.t_trunc
    }

    pub fn absent_trunc(&self) -> i64 {
        self.absent_trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m`, with the absent-term window for missing terms.
    pub fn coeff(&self, m: &Monomial) -> QSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| QSeries::zero(self.absent_trunc))
    }

    /// Smallest window over stored coefficients and absent terms.
    pub fn window(&self) -> i64 {
        self.terms.values().map(QSeries::trunc).fold(self.absent_trunc, i64::min)
    }

    /// Lower bound on the u-valuation of every coefficient (including absent ones).
    pub fn val_bound(&self) -> i64 {
        self.terms
            .values()
            .map(QSeries::val_bound)
            .fold(window_add(self.absent_trunc, 1), i64::min)
    }

    /// Lowest total t-degree among stored terms.
    pub fn min_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Shrinks every window to at most `n`.
    pub fn truncate_q(&self, n: i64) -> Self {
        let mut out = Self::zero(self.nvars, self.t_trunc);
        out.absent_trunc = self.absent_trunc.min(n);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.truncate(n));
        }
        out
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "coupling blocks differ");
        let mut out = self.clone();
        out.t_trunc = self.t_trunc.min(other.t_trunc);
        out.terms.retain(|m, _| m.degree() <= other.t_trunc);
        out.absent_trunc = self.absent_trunc.min(other.absent_trunc);
        // A monomial missing on one side is only known through that side's
        // absent-term window.
        for (m, c) in out.terms.iter_mut() {
            if !other.terms.contains_key(m) && other.absent_trunc < c.trunc() {
                *c = c.truncate(other.absent_trunc);
            }
        }
        for (m, c) in &other.terms {
            if self.terms.contains_key(m) || self.absent_trunc >= c.trunc() {
                out.insert(m.clone(), c.clone());
            } else {
                out.insert(m.clone(), c.truncate(self.absent_trunc));
            }
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.terms.is_empty() && self.absent_trunc == EXACT && self.t_trunc <= other.t_trunc {
            let t_trunc = self.t_trunc;
            *self = other.clone();
            self.t_trunc = t_trunc;
            self.terms.retain(|m, _| m.degree() <= t_trunc);
            return;
        }
        *self = self.add_ref(other);
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "coupling blocks differ");
        let t_trunc = self.t_trunc.min(other.t_trunc);
        let mut out = Self::zero(self.nvars, t_trunc);
        out.absent_trunc = window_add(self.absent_trunc, other.val_bound())
            .min(window_add(other.absent_trunc, self.val_bound()));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > t_trunc {
                    continue;
                }
                out.insert(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale_series(&self, s: &QSeries) -> Self {
        let mut out = Self::zero(self.nvars, self.t_trunc);
        out.absent_trunc = window_add(self.absent_trunc, s.val_bound());
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            let mut z = Self::zero(self.nvars, self.t_trunc);
            z.absent_trunc = EXACT;
            return z;
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.scale(r);
        }
        out
    }

    /// Multiplication by `u^e`.
    pub fn shift(&self, e: i64) -> Self {
        let mut out = self.clone();
        out.absent_trunc = window_add(self.absent_trunc, e);
        for c in out.terms.values_mut() {
            *c = c.shift(e);
        }
        out
    }

    /// `sum_n a^n / n!`, truncated at the total t-degree bound. Every term of
    /// `a` must carry at least one coupling.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.keys().any(|m| m.degree() == 0) {
            return Err(Error::TFreeTerm);
        }
        let mut result = Self::one(self.nvars, self.t_trunc);
        let mut power = Self::one(self.nvars, self.t_trunc);
        for n in 1..=self.t_trunc {
            power = power.mul_ref(self).scale_rational(&Rational::new(1.into(), (n as i64).into()));
            if power.is_empty() && power.absent_trunc == EXACT {
                break;
            }
            result = result.add_ref(&power);
        }
        Ok(result)
    }

    /// Linear change of couplings. `images[i]` lists the new-variable
    /// expansion of old variable `i` as `(new_var, coefficient)` pairs.
    pub fn substitute(&self, new_nvars: usize, images: &[Vec<(usize, Rational)>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(new_nvars, self.t_trunc);
        out.absent_trunc = self.absent_trunc;
        let linear: Vec<TPoly> = images
            .iter()
            .map(|img| {
                let mut p = Self::zero(new_nvars, self.t_trunc);
                for (v, c) in img {
                    let mut m = Monomial::one(new_nvars);
                    m.t[*v] = 1;
                    p.insert(m, QSeries::constant(c.clone(), EXACT));
                }
                p
            })
            .collect();
        for (m, c) in &self.terms {
            let mut acc = Self::q_power(new_nvars, self.t_trunc, m.q, QSeries::one(EXACT));
            for (var, &e) in m.t.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul_ref(&linear[var]);
                }
            }
            out = out.add_ref(&acc.scale_series(c));
        }
        out
    }

    /// Restriction to terms of t-degree at most `d`.
    pub fn truncate_t(&self, d: u32) -> Self {
        let mut out = self.clone();
        out.t_trunc = self.t_trunc.min(d);
        out.terms.retain(|m, _| m.degree() <= d);
        out
    }

    /// Compares every monomial on its common window. Returns the smallest
    /// window used.
    pub fn agree(&self, other: &Self) -> std::result::Result<i64, TermMismatch> {
        assert_eq!(self.nvars, other.nvars, "coupling blocks differ");
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut window = self.absent_trunc.min(other.absent_trunc);
        let t_trunc = self.t_trunc.min(other.t_trunc);
        for m in keys {
            if m.degree() > t_trunc {
                continue;
            }
            let a = self.coeff(m);
            let b = other.coeff(m);
            match a.agree(&b) {
                Ok(w) => window = window.min(w),
                Err(mismatch) => return Err(TermMismatch { monomial: m.clone(), mismatch }),
            }
        }
        Ok(window)
    }

    /// Partial derivative in coupling `var`; known to one t-degree less.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.t_trunc.saturating_sub(1));
        out.absent_trunc = self.absent_trunc;
        for (m, c) in &self.terms {
            let e = m.t[var];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.t[var] -= 1;
            out.insert(d, c.scale(&Rational::from_integer((e as i64).into())));
        }
        out
    }

    /// Embeds into `nvars` couplings (the existing ones first) with t-degree
    /// bound `t_trunc`.
    pub fn lift(&self, nvars: usize, t_trunc: u32) -> Self {
        assert!(nvars >= self.nvars);
        // Without variables the t-degree bound carries no information.
        let bound = if self.nvars == 0 { t_trunc } else { t_trunc.min(self.t_trunc) };
        let mut out = Self::zero(nvars, bound);
        out.absent_trunc = self.absent_trunc;
        for (m, c) in &self.terms {
            let mut t = m.t.clone();
            t.resize(nvars, 0);
            out.insert(Monomial { t, q: m.q }, c.clone());
        }
        out
    }

    /// Coefficient of `t^exps` with Q-power 0.
    pub fn coeff_t(&self, exps: &[u32]) -> QSeries {
        self.coeff(&Monomial { t: exps.to_vec(), q: 0 })
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in m.t.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*t{}", i + 1)?,
                    _ => write!(f, "*t{}^{}", i + 1, e)?,
                }
            }
            match m.q {
                0 => {}
                1 => write!(f, "*Q")?,
                n => write!(f, "*Q^{n}")?,
            }
        }
        Ok(())
    }
}

impl PartialEq for TPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.agree(other).is_ok()
    }
}

/// Linear form `sum_i c_i t_i` in a coupling block, used for the exponents
/// of current operators.
pub fn linear_form(nvars: usize, t_trunc: u32, coeffs: &[(usize, Rational)]) -> TPoly {
    let mut p = TPoly::zero(nvars, t_trunc);
    for (v, c) in coeffs {
        p = p.add_ref(&TPoly::var(nvars, t_trunc, *v, QSeries::constant(c.clone(), EXACT)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::series::{rat, ratio};

    fn c(n: i64) -> QSeries {
        QSeries::constant(rat(n), EXACT)
    }

    #[test]
    fn exp_of_single_coupling() {
        let series = QSeries::from_ints(1, &[1, 1], 10);
        let a = TPoly::var(1, 2, 0, series.clone());
        let e = a.exp().unwrap();
        assert!(e.coeff_t(&[0]).agree(&QSeries::one(EXACT)).is_ok());
        assert!(e.coeff_t(&[1]).agree(&series).is_ok());
        let half_sq = (&series * &series).scale(&ratio(1, 2));
        assert!(e.coeff_t(&[2]).agree(&half_sq).is_ok());
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn exp_of_zero_and_t_free_error() {
        let z = TPoly::zero(2, 3);
        assert!(z.exp().unwrap().agree(&TPoly::one(2, 3)).is_ok());
        assert!(matches!(TPoly::one(2, 3).exp(), Err(Error::TFreeTerm)));
    }

    #[test]
    fn exp_of_sum_factorizes() {
        for d in 0..4 {
            let t1 = TPoly::var(2, d, 0, c(1));
            let t2 = TPoly::var(2, d, 1, c(1));
            let lhs = t1.add_ref(&t2).exp().unwrap();
            let rhs = t1.exp().unwrap().mul_ref(&t2.exp().unwrap());
            assert!(lhs.agree(&rhs).is_ok(), "degree {d}");
        }
    }

    #[test]
    fn substitution_is_linear() {
        // (t1 - t2)^2 from s^2 with s -> t1 - t2
        let s = TPoly::var(1, 2, 0, c(1));
        let sq = s.mul_ref(&s);
        let sub = sq.substitute(2, &[vec![(0, rat(1)), (1, rat(-1))]]);
        assert!(sub.coeff_t(&[2, 0]).agree(&c(1)).is_ok());
        assert!(sub.coeff_t(&[1, 1]).agree(&c(-2)).is_ok());
        assert!(sub.coeff_t(&[0, 2]).agree(&c(1)).is_ok());
    }

    #[test]
    fn derivative_and_lift() {
        let x = TPoly::var(2, 3, 0, c(1));
        let y = TPoly::var(2, 3, 1, c(1));
        let p = x.mul_ref(&x).mul_ref(&y);
        let d = p.derivative(0);
        assert_eq!(d.t_trunc(), 2);
        assert!(d.coeff_t(&[1, 1]).agree(&c(2)).is_ok());
        let l = x.lift(3, 2);
        assert!(l.coeff_t(&[1, 0, 0]).agree(&c(1)).is_ok());
    }

    #[test]
    fn absent_terms_remember_their_window() {
        let a = TPoly::var(1, 1, 0, QSeries::from_ints(0, &[1, 2], 5));
        let b = TPoly::var(1, 1, 0, QSeries::from_ints(0, &[1, 2], 3));
        let d = a.sub_ref(&b);
        assert!(d.coeff_t(&[1]).is_zero());
        assert_eq!(d.window(), 3);
        let other = TPoly::var(1, 1, 0, QSeries::from_ints(4, &[1], 10));
        assert!(d.agree(&other).is_ok());
        // A later exact term does not hide the earlier window.
        let e = d.add_ref(&TPoly::var(1, 1, 0, QSeries::from_ints(7, &[1], EXACT)));
        assert_eq!(e.coeff_t(&[1]).trunc(), 3);
    }
}
