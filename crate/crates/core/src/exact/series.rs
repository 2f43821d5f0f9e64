//! Truncated Laurent series with exact coefficients and explicit precision.
//!
//! A series `sum_{k >= min} a_k t^k + O(t^order)` knows every coefficient with
//! exponent below `order`; an exact series (a Laurent polynomial) has no order.
//! Every operation shrinks the window to what its inputs actually guarantee.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::scalar::{int, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: String,
    min_exp: i64,
    coeffs: Vec<Scalar>,
    order: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl TruncSeries {
    /// Coefficients of `t^min_exp, t^(min_exp+1), ...`, known below `order`.
    pub fn new(var: &str, min_exp: i64, coeffs: Vec<Scalar>, order: Option<i64>) -> Result<Self> {
        if let Some(o) = order {
            if o <= min_exp {
                return Err(Error::Input(format!(
                    "truncation order {o} must exceed the minimal exponent {min_exp}"
                )));
            }
            if min_exp + coeffs.len() as i64 > o {
                return Err(Error::Input(format!(
                    "coefficients reach past the truncation order {o}"
                )));
            }
        }
        Ok(Self::raw(var, min_exp, coeffs, order))
    }

    fn raw(var: &str, min_exp: i64, coeffs: Vec<Scalar>, order: Option<i64>) -> Self {
        let mut s = TruncSeries {
            var: var.to_string(),
            min_exp,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    /// Laurent polynomial with no truncation.
    pub fn exact(var: &str, min_exp: i64, coeffs: Vec<Scalar>) -> Self {
        Self::raw(var, min_exp, coeffs, None)
    }

    pub fn from_ints(var: &str, min_exp: i64, coeffs: &[i64], order: Option<i64>) -> Result<Self> {
        Self::new(var, min_exp, coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn monomial(var: &str, k: i64, c: Scalar) -> Self {
        Self::exact(var, k, vec![c])
    }

    pub fn one(var: &str) -> Self {
        Self::monomial(var, 0, Scalar::one())
    }

    pub fn zero(var: &str) -> Self {
        Self::exact(var, 0, Vec::new())
    }

    /// `O(t^order)`: nothing known except that all lower coefficients vanish.
    pub fn big_o(var: &str, order: i64) -> Self {
        Self::raw(var, order - 1, Vec::new(), Some(order))
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            // a known-zero series has one representation
            self.coeffs.clear();
            self.min_exp = self.order.map_or(0, |o| o - 1);
        } else {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if let Some(o) = self.order {
            if self.min_exp >= o {
                self.min_exp = o - 1;
            }
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exp
    }

    pub fn truncation_order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Coefficient of `t^k`, or `None` when `k` lies outside the valid window.
    pub fn coeff(&self, k: i64) -> Option<Scalar> {
        if self.order.is_some_and(|o| k >= o) {
            return None;
        }
        if k < self.min_exp {
            return Some(Scalar::zero());
        }
        Some(
            self.coeffs
                .get((k - self.min_exp) as usize)
                .cloned()
                .unwrap_or_else(Scalar::zero),
        )
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Valuation, or the truncation order when nothing nonzero is known yet.
    /// Exact zero yields `None`.
    fn valuation_bound(&self) -> Option<i64> {
        self.valuation().or(self.order)
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty() && self.order.is_none()
    }

    /// `(exponent, coefficient)` pairs of the nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::Input(format!(
                "series in different parameters: {} vs {}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = min_order(self.order, Some(order)).unwrap();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .take_while(|(i, _)| self.min_exp + (*i as i64) < o)
            .map(|(_, c)| c.clone())
            .collect();
        Self::raw(&self.var, self.min_exp.min(o - 1), coeffs, Some(o))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = min_order(self.order, other.order);
        let lo = self.min_exp.min(other.min_exp);
        let hi = (self.min_exp + self.coeffs.len() as i64).max(other.min_exp + other.coeffs.len() as i64);
        let hi = order.map_or(hi, |o| hi.min(o));
        let coeffs = (lo..hi.max(lo))
            .map(|k| self.coeff(k).unwrap_or_default() + other.coeff(k).unwrap_or_default())
            .collect();
        let lo = order.map_or(lo, |o| lo.min(o - 1));
        Ok(Self::raw(&self.var, lo, coeffs, order))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::raw(
            &self.var,
            self.min_exp,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.order,
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::raw(
            &self.var,
            self.min_exp + k,
            self.coeffs.clone(),
            self.order.map(|o| o + k),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let (va, vb) = match (self.valuation_bound(), other.valuation_bound()) {
            (Some(a), Some(b)) => (a, b),
            // one factor is exactly zero
            _ => return Ok(Self::zero(&self.var)),
        };
        let order = min_order(self.order.map(|o| o + vb), other.order.map(|o| o + va));
        let lo = va + vb;
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len()];
        for (ka, a) in self.terms() {
            for (kb, b) in other.terms() {
                let k = ka + kb;
                if order.is_some_and(|o| k >= o) {
                    continue;
                }
                coeffs[(k - lo) as usize] += a * b;
            }
        }
        if let Some(o) = order {
            coeffs.truncate((o - lo).max(0) as usize);
        }
        let lo = order.map_or(lo, |o| lo.min(o - 1));
        if let Some(o) = order {
            if lo < va + vb {
                // window collapsed below the leading product; nothing known
                return Ok(Self::big_o(&self.var, o));
            }
        }
        Ok(Self::raw(&self.var, lo, coeffs, order))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.var);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Scalar> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.min_exp + i as i64))
            .collect();
        Self::raw(
            &self.var,
            self.min_exp - 1,
            coeffs,
            self.order.map(|o| o - 1),
        )
    }

    /// Multiplicative inverse. An exact non-monomial series has an infinite
    /// inverse, which is cut at the absolute exponent `cap`.
    pub fn inverse(&self, cap: i64) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| {
            Error::Precision("cannot invert a series with no known nonzero coefficient".into())
        })?;
        let unit_order = self.order.map(|o| o - v);
        let abs_order = match unit_order {
            Some(uo) => uo - v,
            None => cap,
        };
        let n = (abs_order + v).max(0) as usize;
        let lead_inv = self.coeffs[0].recip();
        let mut inv: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(lead_inv.clone());
                continue;
            }
            let mut s = Scalar::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += &self.coeffs[j] * &inv[k - j];
            }
            inv.push(-s * &lead_inv);
        }
        if abs_order <= -v {
            return Err(Error::Precision("inverse has an empty precision window".into()));
        }
        Ok(Self::raw(&self.var, -v, inv, Some(abs_order)))
    }

    pub fn div(&self, other: &Self, cap: i64) -> Result<Self> {
        self.mul(&other.inverse(cap)?)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{}", self.var)?,
                _ => write!(f, "{c}*{}^{}", self.var, k)?,
            }
        }
        match self.order {
            Some(o) if first => write!(f, "O({}^{o})", self.var),
            Some(o) => write!(f, " + O({}^{o})", self.var),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

/// A meromorphic differential `g(t) dt` given by its coefficient series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffForm {
    pub coeff_series: TruncSeries,
}

impl DiffForm {
    pub fn new(coeff_series: TruncSeries) -> Self {
        DiffForm { coeff_series }
    }

    /// `d f` for a function series `f`.
    pub fn exterior_derivative(f: &TruncSeries) -> Self {
        DiffForm::new(f.derivative())
    }

    /// Coefficient of `t^-1 dt`.
    pub fn residue(&self) -> Result<Scalar> {
        series_residue(self)
    }
}

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.mul(b)
}

pub fn series_residue(omega: &DiffForm) -> Result<Scalar> {
    omega.coeff_series.coeff(-1).ok_or_else(|| {
        Error::Precision(format!(
            "residue needs the t^-1 coefficient but the series is only known below t^{}",
            omega.coeff_series.order.unwrap_or_default()
        ))
    })
}

/// `F(x(t), y(t))` for a polynomial `F` in two affine variables.
pub fn substitute_series(f: &MultiPoly, x: &TruncSeries, y: &TruncSeries) -> Result<TruncSeries> {
    if f.nvars() != 2 {
        return Err(Error::Input("substitution expects two affine variables".into()));
    }
    let acc = substitute_raw(f, x, y)?;
    if let (Some(o), None) = (acc.order, acc.valuation()) {
        // lowest exponent reachable by terms whose leading coefficients are known
        let floor = f
            .terms()
            .filter_map(|(m, _)| {
                let vx = if m[0] > 0 { x.valuation()? } else { 0 };
                let vy = if m[1] > 0 { y.valuation()? } else { 0 };
                Some(m[0] as i64 * vx + m[1] as i64 * vy)
            })
            .min();
        if floor.is_some_and(|lb| o <= lb) {
            return Err(Error::Precision(format!(
                "substitution retains no certain coefficient (known only below t^{o})"
            )));
        }
    }
    Ok(acc)
}

/// Substitution without the cancellation check; truncation windows still compose.
pub(crate) fn substitute_raw(f: &MultiPoly, x: &TruncSeries, y: &TruncSeries) -> Result<TruncSeries> {
    x.check_var(y)?;
    let var = x.var();
    let dx = f.degree_in(0).unwrap_or(0) as usize;
    let dy = f.degree_in(1).unwrap_or(0) as usize;
    let mut xp = vec![TruncSeries::one(var)];
    for k in 1..=dx {
        let next = xp[k - 1].mul(x)?;
        xp.push(next);
    }
    // Horner in y over the x-power combinations: dy products instead of one per term
    let mut rows = vec![TruncSeries::zero(var); dy + 1];
    for (m, c) in f.terms() {
        rows[m[1] as usize] = rows[m[1] as usize].add(&xp[m[0] as usize].scale(c))?;
    }
    let mut acc = rows.pop().expect("at least one row");
    while let Some(r) = rows.pop() {
        acc = acc.mul(y)?.add(&r)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;
    use crate::exact::scalar::ratio;

    fn s(min: i64, c: &[i64]) -> TruncSeries {
        TruncSeries::from_ints("t", min, c, None).unwrap()
    }

    #[test]
    fn product_examples() {
        // (t^-1 + 1) * t = 1 + t
        assert_eq!(series_mul(&s(-1, &[1, 1]), &s(1, &[1])).unwrap(), s(0, &[1, 1]));
        let a = TruncSeries::from_ints("t", -2, &[1, 2, 0, 5], Some(4)).unwrap();
        assert_eq!(series_mul(&a, &TruncSeries::one("t")).unwrap(), a);
        // (t^-2 + 2t^-1) * 3t^-1 = 3t^-3 + 6t^-2
        assert_eq!(series_mul(&s(-2, &[1, 2]), &s(-1, &[3])).unwrap(), s(-3, &[3, 6]));
    }

    #[test]
    fn truncation_propagates() {
        // (1 + t + O(t^3)) * (t^-1 + O(t^2)) is known below t^2
        let a = TruncSeries::from_ints("t", 0, &[1, 1], Some(3)).unwrap();
        let b = TruncSeries::from_ints("t", -1, &[1], Some(2)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.truncation_order(), Some(2));
        assert_eq!(p.coeff(0), Some(int(1)));
        assert_eq!(p.coeff(2), None);
    }

    #[test]
    fn mismatched_parameters_rejected() {
        let a = s(0, &[1]);
        let b = TruncSeries::exact("u", 0, vec![int(1)]);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn residue_examples() {
        let w = DiffForm::new(s(-2, &[1, 3, 5]));
        assert_eq!(w.residue().unwrap(), int(3));
        for m in 2..7 {
            assert_eq!(DiffForm::new(s(-m, &[1])).residue().unwrap(), int(0));
        }
        // f = t^-3 + 7t^2
        let f = s(-3, &[1, 0, 0, 0, 0, 7]);
        assert_eq!(DiffForm::exterior_derivative(&f).residue().unwrap(), int(0));
    }

    #[test]
    fn residue_outside_window_is_an_error() {
        let w = DiffForm::new(TruncSeries::from_ints("t", -3, &[1], Some(-1)).unwrap());
        assert!(matches!(w.residue(), Err(Error::Precision(_))));
    }

    #[test]
    fn substitution_examples() {
        let v = ["x", "y"];
        let cusp = parse_poly("y^2 - x^3", &v).unwrap();
        let x = s(2, &[1]);
        let y = s(3, &[1]);
        assert!(substitute_series(&cusp, &x, &y).unwrap().is_known_zero());
        let fx = parse_poly("x", &v).unwrap();
        assert_eq!(substitute_series(&fx, &x, &y).unwrap(), s(2, &[1]));
        let xy = parse_poly("x*y", &v).unwrap();
        assert_eq!(
            substitute_series(&xy, &s(1, &[1]), &s(1, &[1, 1])).unwrap(),
            s(2, &[1, 1])
        );
    }

    #[test]
    fn inverse_and_division() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let a = s(0, &[1, -1]);
        let inv = a.inverse(5).unwrap();
        assert_eq!(inv.coeff(4), Some(int(1)));
        assert_eq!(inv.coeff(5), None);
        // (2t + O(t^4)) inverse = 1/2 t^-1 + O(t^2)
        let b = TruncSeries::new("t", 1, vec![int(2)], Some(4)).unwrap();
        let bi = b.inverse(10).unwrap();
        assert_eq!(bi.coeff(-1), Some(ratio(1, 2)));
        assert_eq!(bi.truncation_order(), Some(2));
    }
}
