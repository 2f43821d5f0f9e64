//! Sparse multivariate polynomials over the rationals in two or three variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{common_denominator, int, Scalar};
use crate::error::{Error, Result};

/// Exponent vector; slots beyond the polynomial's variable count stay zero.
pub type Monomial = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        assert!(
            (1..=3).contains(&vars.len()),
            "polynomials carry one to three variables"
        );
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// Projective ring `Q[x, y, z]`.
    pub fn xyz() -> Self {
        Self::zero(&["x", "y", "z"])
    }

    /// Affine ring `Q[x, y]`.
    pub fn xy() -> Self {
        Self::zero(&["x", "y"])
    }

    pub fn constant_like(&self, c: Scalar) -> Self {
        let mut p = self.zero_like();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn zero_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The variable with index `i` as a polynomial.
    pub fn var_like(&self, i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        let mut p = self.zero_like();
        p.add_term(m, Scalar::one());
        p
    }

    pub fn monomial_like(&self, m: Monomial, c: Scalar) -> Self {
        let mut p = self.zero_like();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(m[self.nvars()..].iter().all(|&e| e == 0));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).min()
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut p = self.zero_like();
        for (m, c) in &self.terms {
            if m.iter().sum::<u32>() == k {
                p.add_term(*m, c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = self.zero_like();
        if c.is_zero() {
            return p;
        }
        for (m, a) in &self.terms {
            p.terms.insert(*m, a * c);
        }
        p
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = self.zero_like();
        for (m, c) in &self.terms {
            if m[var] > 0 {
                let mut e = *m;
                e[var] -= 1;
                p.add_term(e, c * int(m[var] as i64));
            }
        }
        p
    }

    /// All first partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.constant_like(Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        // homogenized over a common denominator: sum c m(n) D^(deg - |m|) / (L D^deg)
        let (lden, terms) = self.integer_terms();
        let deg = self.total_degree().unwrap_or(0) as usize;
        let d = common_denominator(point.iter());
        let nums: Vec<BigInt> = point.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        let dpow = power_table(&d, deg);
        let npow: Vec<Vec<BigInt>> = nums.iter().map(|n| power_table(n, deg)).collect();
        let mut total = BigInt::zero();
        for (m, c) in &terms {
            let mut t = c * &dpow[deg - m.iter().sum::<u32>() as usize];
            for (i, pw) in npow.iter().enumerate() {
                if m[i] > 0 {
                    t *= &pw[m[i] as usize];
                }
            }
            total += t;
        }
        Scalar::new(total, lden * &dpow[deg])
    }

    /// Substitute polynomials (all in a common ring) for each variable.
    ///
    /// Works over the integers: with `image_i = P_i / d_i`, each term
    /// `c m(image)` is scaled by `prod d_i^(deg_i)` before accumulating.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].zero_like();
        let max_deg: Vec<usize> = (0..self.nvars())
            .map(|i| self.degree_in(i).unwrap_or(0) as usize)
            .collect();
        let (lden, terms) = self.integer_terms();
        let mut scale = lden;
        let powers: Vec<Vec<IntTerms>> = images
            .iter()
            .zip(&max_deg)
            .map(|(img, &d)| {
                let (den, t) = img.integer_terms();
                let base: IntTerms = t.into_iter().collect();
                let dpow = power_table(&den, d);
                scale *= &dpow[d];
                let mut v = vec![IntTerms::from([([0, 0, 0], BigInt::one())])];
                for k in 1..=d {
                    let next = int_mul(&v[k - 1], &base);
                    v.push(next);
                }
                // fold in the missing denominator factors d^(deg - k)
                for (k, p) in v.iter_mut().enumerate() {
                    for c in p.values_mut() {
                        *c *= &dpow[d - k];
                    }
                }
                v
            })
            .collect();
        let mut acc = IntTerms::new();
        for (m, c) in &terms {
            let mut t = IntTerms::from([([0, 0, 0], c.clone())]);
            for (i, pw) in powers.iter().enumerate() {
                t = int_mul(&t, &pw[m[i] as usize]);
            }
            for (mm, cc) in t {
                *acc.entry(mm).or_default() += cc;
            }
        }
        target.from_integer_terms(acc, &scale)
    }

    /// Translate so that `point` moves to the origin: returns `f(v + point)`.
    ///
    /// Expands each term binomially over a common denominator `D`:
    /// `(v + n/D)^e = D^-e sum_k C(e,k) n^(e-k) D^k v^k`.
    pub fn translate(&self, point: &[Scalar]) -> MultiPoly {
        let n = self.nvars();
        assert_eq!(point.len(), n, "point dimension mismatch");
        let (lden, terms) = self.integer_terms();
        let deg = self.total_degree().unwrap_or(0) as usize;
        let d = common_denominator(point.iter());
        let nums: Vec<BigInt> = point.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        let dpow = power_table(&d, deg);
        let npow: Vec<Vec<BigInt>> = (0..3)
            .map(|i| power_table(nums.get(i).unwrap_or(&BigInt::zero()), deg))
            .collect();
        let mut binom: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for k in 1..=deg {
            let prev = &binom[k - 1];
            let row = (0..=k)
                .map(|j| {
                    let a = if j > 0 { prev[j - 1].clone() } else { BigInt::zero() };
                    a + prev.get(j).cloned().unwrap_or_default()
                })
                .collect();
            binom.push(row);
        }
        // coefficient of v^k in D^e (v + n/D)^e, times D^k
        let shift = |i: usize, e: u32, k: u32| -> BigInt {
            let (e, k) = (e as usize, k as usize);
            &binom[e][k] * &npow[i][e - k]
        };
        let mut acc = IntTerms::new();
        for (m, c) in &terms {
            for k0 in 0..=m[0] {
                let c0 = c * shift(0, m[0], k0);
                if c0.is_zero() {
                    continue;
                }
                for k1 in 0..=m[1] {
                    let c1 = &c0 * shift(1, m[1], k1);
                    if c1.is_zero() {
                        continue;
                    }
                    for k2 in 0..=m[2] {
                        let c2 = &c1 * shift(2, m[2], k2);
                        if c2.is_zero() {
                            continue;
                        }
                        // total shift sum(e - k) consumes that many factors of 1/D
                        let used = (m[0] - k0 + m[1] - k1 + m[2] - k2) as usize;
                        *acc.entry([k0, k1, k2]).or_default() += c2 * &dpow[deg - used];
                    }
                }
            }
        }
        self.from_integer_terms(acc, &(lden * &dpow[deg]))
    }

    /// Common denominator of the coefficients and the scaled integer numerators.
    fn integer_terms(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let den = common_denominator(self.terms.values());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (den, terms)
    }

    fn from_integer_terms(&self, acc: IntTerms, den: &BigInt) -> MultiPoly {
        let mut out = self.zero_like();
        let nonzero = acc.into_iter().filter(|(_, c)| !c.is_zero());
        out.terms = if den.is_one() {
            nonzero.map(|(m, c)| (m, Scalar::from_integer(c))).collect()
        } else {
            nonzero.map(|(m, c)| (m, Scalar::new(c, den.clone()))).collect()
        };
        out
    }

    /// Set the projective coordinate `chart` to one; the remaining two coordinates
    /// (in their original order) become the affine variables `(u, v)`.
    pub fn dehomogenize(&self, chart: usize) -> MultiPoly {
        assert_eq!(self.nvars(), 3);
        let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut p = MultiPoly::zero(&names);
        for (m, c) in &self.terms {
            p.add_term([m[keep[0]], m[keep[1]], 0], c.clone());
        }
        p
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) in degree `d`.
    pub fn homogenize(&self, chart: usize, d: u32) -> Result<MultiPoly> {
        assert_eq!(self.nvars(), 2);
        let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let mut p = MultiPoly::xyz();
        for (m, c) in &self.terms {
            let deg = m[0] + m[1];
            if deg > d {
                return Err(Error::Input(format!(
                    "cannot homogenize a degree {deg} term in degree {d}"
                )));
            }
            let mut e = [0; 3];
            e[keep[0]] = m[0];
            e[keep[1]] = m[1];
            e[chart] = d - deg;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    /// Linear change of variables `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_change(&self, m: &[Vec<Scalar>]) -> MultiPoly {
        let n = self.nvars();
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut p = self.zero_like();
                for j in 0..n {
                    let mut e = [0; 3];
                    e[j] = 1;
                    p.add_term(e, m[i][j].clone());
                }
                p
            })
            .collect();
        self.compose(&images)
    }

    /// All monomials of total degree `d` in `n` variables, in a fixed order.
    pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        match n {
            1 => out.push([d, 0, 0]),
            2 => {
                for a in (0..=d).rev() {
                    out.push([a, d - a, 0]);
                }
            }
            3 => {
                for a in (0..=d).rev() {
                    for b in (0..=d - a).rev() {
                        out.push([a, b, d - a - b]);
                    }
                }
            }
            _ => panic!("unsupported variable count"),
        }
        out
    }

    pub fn content_normalized(&self) -> MultiPoly {
        // scale so that the leading (largest) monomial has coefficient one
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

type IntTerms = BTreeMap<Monomial, BigInt>;

fn int_mul(a: &IntTerms, b: &IntTerms) -> IntTerms {
    let mut acc = IntTerms::new();
    for (ma, x) in a {
        for (mb, y) in b {
            *acc.entry([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]]).or_default() += x * y;
        }
    }
    acc
}

fn power_table(base: &BigInt, top: usize) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(top + 1);
    v.push(BigInt::one());
    for k in 1..=top {
        let next = &v[k - 1] * base;
        v.push(next);
    }
    v
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        // integer products, one normalization per output coefficient
        let (da, ta) = self.integer_terms();
        let (db, tb) = rhs.integer_terms();
        let acc = int_mul(&ta.into_iter().collect(), &tb.into_iter().collect());
        self.from_integer_terms(acc, &(da * db))
    }
}

impl fmt::Display for MultiPoly {
    /// Text in the `y^2*z - x^3` syntax accepted by [`parse_poly`](super::parse::parse_poly).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then lexicographically largest
        let mut terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate().take(self.nvars()) {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if !abs.is_one() || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn partials_match_hand_computation() {
        let f = parse_poly("y^2 - x^3", &["x", "y"]).unwrap();
        let g = f.gradient();
        assert_eq!(g[0], parse_poly("-3*x^2", &["x", "y"]).unwrap());
        assert_eq!(g[1], parse_poly("2*y", &["x", "y"]).unwrap());
    }

    #[test]
    fn homogeneity_and_charts() {
        let f = parse_poly("y^2*z - x^3", &["x", "y", "z"]).unwrap();
        assert!(f.is_homogeneous());
        let a = f.dehomogenize(2);
        assert_eq!(a.to_string(), "-x^3 + y^2");
        assert_eq!(a.homogenize(2, 3).unwrap(), f);
    }

    #[test]
    fn translation_moves_point_to_origin() {
        let f = parse_poly("(x-1)^2 + (y+2)^3", &["x", "y"]).unwrap();
        let g = f.translate(&[int(1), int(-2)]);
        assert_eq!(g, parse_poly("x^2 + y^3", &["x", "y"]).unwrap());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(MultiPoly::monomials_of_degree(3, 3).len(), 10);
        assert_eq!(MultiPoly::monomials_of_degree(3, 0).len(), 1);
        assert_eq!(MultiPoly::monomials_of_degree(2, 4).len(), 5);
    }
}
