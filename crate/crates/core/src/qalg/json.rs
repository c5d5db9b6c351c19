//! JSON encoding of series and polynomials.
//!
//! Series: `{"min_exp": int, "trunc": int | null, "coeffs": ["p/q", ...]}`,
//! where a `null` window marks a Laurent polynomial known to all orders.
//! Polynomials: `{"nvars", "t_trunc", "absent_trunc", "terms": [{"t_exps", "q_exp", "coeff"}]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::series::{QSeries, Rational, EXACT};
use super::tpoly::{Monomial, TPoly};

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    min_exp: i64,
    trunc: Option<i64>,
    coeffs: Vec<String>,
}

fn window_repr(w: i64) -> Option<i64> {
    (w != EXACT).then_some(w)
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (min_exp, coeffs) = self.dense();
        SeriesRepr {
            min_exp,
            trunc: window_repr(self.trunc()),
            coeffs: coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::from_coeffs(repr.min_exp, coeffs, repr.trunc.unwrap_or(EXACT)))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    t_exps: Vec<u32>,
    q_exp: u32,
    coeff: QSeries,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    t_trunc: u32,
    absent_trunc: Option<i64>,
    terms: Vec<TermRepr>,
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars(),
            t_trunc: self.t_trunc(),
            absent_trunc: window_repr(self.absent_trunc()),
            terms: self
                .terms()
                .map(|(m, c)| TermRepr { t_exps: m.t.clone(), q_exp: m.q, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = TPoly::zero(repr.nvars, repr.t_trunc);
        if let Some(w) = repr.absent_trunc {
            p.insert(Monomial::one(repr.nvars), QSeries::zero(w));
        }
        for term in repr.terms {
            if term.t_exps.len() != repr.nvars {
                return Err(serde::de::Error::custom("t_exps length differs from nvars"));
            }
            p.insert(Monomial { t: term.t_exps, q: term.q_exp }, term.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::series::ratio;

    #[test]
    fn series_encoding_shape() {
        let s = QSeries::from_coeffs(-1, vec![ratio(1, 2), ratio(0, 1), ratio(-3, 1)], 4);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"min_exp": -1, "trunc": 4, "coeffs": ["1/2", "0", "-3"]}));
    }
}
