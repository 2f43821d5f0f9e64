//! Local branches by Newton–Puiseux expansion with rational coefficients.
//!
//! Each branch comes out as `x = alpha t^n`, `y = Y(t)` (or the line `x = 0`),
//! so ramification is an explicit substitution `t -> t^q` and all series keep
//! integer exponents.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curvekit::{classify_ade, local_chart, point_label, PlaneCurve, ProjPoint, SingularityRecord};
use crate::error::{Error, Result};
use crate::exact::linalg::primitive;
use crate::exact::poly::MultiPoly;
use crate::exact::roots;
use crate::exact::scalar::{int, Scalar};
use crate::exact::series::{substitute_raw, TruncSeries};

pub const PARAM: &str = "t";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchShape {
    /// `x = alpha t^n`.
    Graph { alpha: Scalar, n: u32 },
    /// The line `x = 0`, parametrized by `y = t`.
    Vertical,
}

#[derive(Clone, Debug)]
pub struct BranchParam {
    /// Affine coordinates of the singular point in its chart.
    pub center: [Scalar; 2],
    pub x_series: TruncSeries,
    pub y_series: TruncSeries,
    pub tangent: [Scalar; 2],
    pub ramification: u32,
    pub shape: BranchShape,
}

impl BranchParam {
    fn graph(alpha: Scalar, n: u32, y: TruncSeries) -> Self {
        let x = TruncSeries::monomial(PARAM, n as i64, alpha.clone());
        let vy = y.valuation();
        let tangent = match vy {
            Some(v) if v == n as i64 => vec![alpha.clone(), y.coeff(v).unwrap()],
            Some(v) if v < n as i64 => vec![Scalar::zero(), Scalar::one()],
            _ => vec![Scalar::one(), Scalar::zero()],
        };
        let tangent = primitive(&tangent);
        let ramification = vy.map_or(n, |v| (v as u32).min(n));
        BranchParam {
            center: [Scalar::zero(), Scalar::zero()],
            x_series: x,
            y_series: y,
            tangent: [tangent[0].clone(), tangent[1].clone()],
            ramification,
            shape: BranchShape::Graph { alpha, n },
        }
    }

    fn vertical() -> Self {
        BranchParam {
            center: [Scalar::zero(), Scalar::zero()],
            x_series: TruncSeries::zero(PARAM),
            y_series: TruncSeries::monomial(PARAM, 1, Scalar::one()),
            tangent: [Scalar::zero(), Scalar::one()],
            ramification: 1,
            shape: BranchShape::Vertical,
        }
    }

    /// Precision of the parametrization (`None` when exact).
    pub fn precision(&self) -> Option<i64> {
        self.y_series.truncation_order()
    }

    /// Delta invariant of the branch from its characteristic exponents:
    /// `2 delta = sum (beta_i - 1)(e_{i-1} - e_i)`.
    pub fn delta(&self) -> Result<u32> {
        let BranchShape::Graph { n, .. } = self.shape else {
            return Ok(0);
        };
        let mut e = n as i64;
        let mut twice = 0i64;
        for (k, _) in self.y_series.terms() {
            if e == 1 {
                break;
            }
            if k % e != 0 {
                let e_new = e.gcd(&k);
                twice += (k - 1) * (e - e_new);
                e = e_new;
            }
        }
        if e != 1 {
            return Err(Error::Precision(
                "branch window ends before the last characteristic exponent".into(),
            ));
        }
        Ok((twice / 2) as u32)
    }
}

pub fn default_order(rec: &SingularityRecord) -> i64 {
    2 * rec.conductor_exponents.iter().copied().max().unwrap_or(1) as i64 + 4
}

/// Partial expansion state: `x = a t^q`, `y = prefix + b t^e * y_cur`.
#[derive(Clone)]
struct State {
    g: MultiPoly,
    a: Scalar,
    q: u32,
    prefix: Vec<(i64, Scalar)>,
    b: Scalar,
    e: i64,
}

fn pow_i(w: &Scalar, k: i64) -> Scalar {
    if k >= 0 {
        num_traits::pow(w.clone(), k as usize)
    } else {
        num_traits::pow(w.recip(), (-k) as usize)
    }
}

fn y_divides(g: &MultiPoly) -> bool {
    g.terms().all(|(m, _)| m[1] >= 1)
}

fn divide_y(g: &MultiPoly) -> MultiPoly {
    let mut out = g.zero_like();
    for (m, c) in g.terms() {
        out.add_term([m[0], m[1] - 1, 0], c.clone());
    }
    out
}

fn x_divides(g: &MultiPoly) -> bool {
    g.terms().all(|(m, _)| m[0] >= 1)
}

fn divide_x(g: &MultiPoly) -> MultiPoly {
    let mut out = g.zero_like();
    for (m, c) in g.terms() {
        out.add_term([m[0] - 1, m[1], 0], c.clone());
    }
    out
}

/// Multiplicities of the rational roots; `Irrational` if some root is not rational.
fn rational_factorization(psi: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    let deg = roots::degree(&psi.to_vec()).unwrap_or(0);
    let mut out = Vec::new();
    let mut total = 0;
    for w in roots::rational_roots(psi) {
        let lin = vec![-w.clone(), Scalar::one()];
        let mut rest = psi.to_vec();
        let mut mult = 0;
        loop {
            let (q, r) = roots::divrem(&rest, &lin);
            if !r.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        total += mult;
        out.push((w, mult));
    }
    if total < deg {
        return Err(Error::Irrational(format!(
            "Newton polygon edge polynomial has irrational roots ({} of {deg} roots rational); \
             apply a linear change of coordinates making the branches rational",
            total
        )));
    }
    Ok(out)
}

/// Lower Newton polygon edges from the `y`-free term to `(0, m)`, as lists of
/// `(t-exponent, y-exponent)` endpoints.
fn newton_edges(g: &MultiPoly, m: u32) -> Vec<((u32, u32), (u32, u32))> {
    let mut best: Vec<Option<u32>> = vec![None; m as usize + 1];
    for (e, _) in g.terms() {
        if e[1] <= m {
            let slot = &mut best[e[1] as usize];
            *slot = Some(slot.map_or(e[0], |v: u32| v.min(e[0])));
        }
    }
    let pts: Vec<(u32, u32)> = best
        .iter()
        .enumerate()
        .filter_map(|(j, i)| i.map(|i| (i, j as u32)))
        .collect();
    let mut edges = Vec::new();
    let mut cur = pts[0];
    while cur.1 < m {
        // steepest descent; among equal slopes take the farthest point
        let mut next: Option<(u32, u32)> = None;
        for &p in pts.iter().filter(|p| p.1 > cur.1) {
            next = match next {
                None => Some(p),
                Some(n) => {
                    let lhs = (p.0 as i64 - cur.0 as i64) * (n.1 as i64 - cur.1 as i64);
                    let rhs = (n.0 as i64 - cur.0 as i64) * (p.1 as i64 - cur.1 as i64);
                    if lhs < rhs || (lhs == rhs && p.1 > n.1) {
                        Some(p)
                    } else {
                        Some(n)
                    }
                }
            };
        }
        let n = next.unwrap();
        edges.push((cur, n));
        cur = n;
    }
    edges
}

fn solve_simple(g: &MultiPoly, window: i64) -> Result<TruncSeries> {
    let a = g.coeff(&[0, 1, 0]);
    debug_assert!(!a.is_zero());
    let inv = a.recip();
    let s = TruncSeries::monomial(PARAM, 1, Scalar::one());
    let mut y = TruncSeries::zero(PARAM);
    for _ in 0..window.max(1) {
        let r = substitute_raw(g, &s, &y)?;
        y = y.sub(&r.scale(&inv))?.truncate(window.max(1));
    }
    Ok(y)
}

fn expand(state: State, order: i64, out: &mut Vec<BranchParam>) -> Result<()> {
    let mut g = state.g.clone();
    if y_divides(&g) {
        // y_cur = 0 solves exactly: the expansion terminates
        g = divide_y(&g);
        if y_divides(&g) {
            return Err(Error::Input("local equation is not reduced".into()));
        }
        let terms: Vec<(i64, Scalar)> = state.prefix.clone();
        out.push(finish(&state, terms, None, order));
    }
    let m = g
        .terms()
        .filter(|(e, _)| e[0] == 0)
        .map(|(e, _)| e[1])
        .min()
        .unwrap_or(0);
    if m == 0 {
        return Ok(());
    }
    for ((i1, j1), (i2, j2)) in newton_edges(&g, m) {
        let di = i1 - i2;
        let dj = j2 - j1;
        let gg = di.gcd(&dj);
        let (p, q) = ((di / gg) as i64, (dj / gg) as i64);
        let level = q * i1 as i64 + p * j1 as i64;
        let mut psi = vec![Scalar::zero(); (dj / q as u32) as usize + 1];
        for (e, c) in g.terms() {
            if q * e[0] as i64 + p * e[1] as i64 == level {
                psi[((e[1] - j1) as i64 / q) as usize] += c;
            }
        }
        // q v - p u = 1
        let ext = q.extended_gcd(&p);
        let (v, u) = (ext.x, -ext.y);
        for (w, mult) in rational_factorization(&psi)? {
            let alpha = pow_i(&w, u);
            let c = pow_i(&w, v);
            let t = g.var_like(0);
            let y = g.var_like(1);
            let t_img = t.pow(q as u32).scale(&alpha);
            let y_img = &t.pow(p as u32) * &(&y + &g.constant_like(c.clone()));
            let sub = g.compose(&[t_img, y_img]);
            let mut g1 = sub.zero_like();
            for (e, coef) in sub.terms() {
                debug_assert!(e[0] as i64 >= level);
                g1.add_term([e[0] - level as u32, e[1], 0], coef.clone());
            }
            let a1 = &state.a * pow_i(&alpha, state.q as i64);
            let mut prefix: Vec<(i64, Scalar)> = state
                .prefix
                .iter()
                .map(|(k, s)| (k * q, s * pow_i(&alpha, *k)))
                .collect();
            let b1 = &state.b * pow_i(&alpha, state.e);
            let e1 = q * state.e + p;
            prefix.push((e1, &b1 * &c));
            let next = State { g: g1, a: a1, q: state.q * q as u32, prefix, b: b1, e: e1 };
            if mult == 1 {
                let window = (order - e1).max(1);
                let y1 = solve_simple(&next.g, window)?;
                out.push(finish(&next, next.prefix.clone(), Some(y1), order));
            } else {
                expand(next, order, out)?;
            }
        }
    }
    Ok(())
}

fn finish(state: &State, prefix: Vec<(i64, Scalar)>, tail: Option<TruncSeries>, order: i64) -> BranchParam {
    let lo = prefix.iter().map(|(k, _)| *k).min().unwrap_or(0);
    let hi = prefix.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut coeffs = vec![Scalar::zero(); (hi - lo + 1) as usize];
    for (k, c) in &prefix {
        coeffs[(k - lo) as usize] += c;
    }
    let mut y = TruncSeries::exact(PARAM, lo, coeffs);
    if let Some(t) = tail {
        let t = t.shift(state.e).scale(&state.b);
        y = y.add(&t).expect("same parameter");
    }
    if !y.is_exact() || y.terms().any(|(k, _)| k >= order) {
        y = y.truncate(order);
    }
    BranchParam::graph(state.a.clone(), state.q, y)
}

/// Branches through the origin of a local equation, each known below `t^order`.
pub fn local_branches(f: &MultiPoly, order: i64) -> Result<Vec<BranchParam>> {
    if order < 2 {
        return Err(Error::Precision(format!("branch order {order} is too small")));
    }
    if !f.eval(&[Scalar::zero(), Scalar::zero()]).is_zero() {
        return Err(Error::Input("origin is not on the curve".into()));
    }
    let mut out = Vec::new();
    let mut g = f.clone();
    if x_divides(&g) {
        g = divide_x(&g);
        if x_divides(&g) {
            return Err(Error::Input("local equation is not reduced".into()));
        }
        out.push(BranchParam::vertical());
    }
    let state = State {
        g,
        a: Scalar::one(),
        q: 1,
        prefix: Vec::new(),
        b: Scalar::one(),
        e: 0,
    };
    expand(state, order, &mut out)?;
    Ok(out)
}

/// Branches of a curve at a singular point, in the point's standard chart.
pub fn branch_parametrizations(curve: &PlaneCurve, p: &ProjPoint, order: i64) -> Result<Vec<BranchParam>> {
    let rec = match curve.singularities.iter().find(|s| crate::curvekit::same_point(&s.point, p)) {
        Some(r) => r.clone(),
        None => classify_ade(curve, p)?,
    };
    let min_order = rec.conductor_exponents.iter().copied().max().unwrap_or(1) as i64 + 2;
    if order < min_order {
        return Err(Error::Precision(format!(
            "order {order} is below conductor exponent + 2 = {min_order}"
        )));
    }
    let lc = local_chart(&curve.form, p);
    let mut bs = local_branches(&lc.local, order)?;
    if bs.len() != rec.branch_count as usize {
        return Err(Error::Inconsistent(format!(
            "{} at {} has {} computed branches, expected {}",
            rec.ade_type,
            point_label(p),
            bs.len(),
            rec.branch_count
        )));
    }
    for b in bs.iter_mut() {
        b.center = lc.center.clone();
    }
    Ok(bs)
}

/// Coefficients `h_k(u)` of the Weierstrass polynomial `sum_k h_k(u) y^k` of a
/// graph branch, with `u = x / alpha`.
fn weierstrass(b: &BranchParam) -> Result<Vec<TruncSeries>> {
    let BranchShape::Graph { n, .. } = b.shape else {
        unreachable!("vertical branches are handled directly")
    };
    let n = n as usize;
    // power sums of the conjugates Y(zeta^k s), s^n = u
    let mut power_sums = Vec::with_capacity(n + 1);
    let mut yj = TruncSeries::one(PARAM);
    for _ in 1..=n {
        yj = yj.mul(&b.y_series)?;
        let order_u = yj.truncation_order().map(|o| (o + n as i64 - 1).div_euclid(n as i64));
        let top = order_u.unwrap_or_else(|| {
            yj.terms().map(|(k, _)| k).max().unwrap_or(0).div_euclid(n as i64) + 1
        });
        let coeffs: Vec<Scalar> = (0..top.max(0))
            .map(|e| yj.coeff(e * n as i64).unwrap_or_default() * int(n as i64))
            .collect();
        let min = 0;
        let series = match order_u {
            Some(o) if o <= min => TruncSeries::big_o("u", o.max(1)),
            Some(o) => TruncSeries::new("u", min, coeffs, Some(o))?,
            None => TruncSeries::exact("u", min, coeffs),
        };
        power_sums.push(series);
    }
    // Newton identities: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} P_i
    let mut el = vec![TruncSeries::one("u")];
    for k in 1..=n {
        let mut acc = TruncSeries::zero("u");
        for i in 1..=k {
            let term = el[k - i].mul(&power_sums[i - 1])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        el.push(acc.scale(&Scalar::new(1.into(), (k as i64).into())));
    }
    // h = sum_k (-1)^k e_k y^{n-k}; index by power of y
    let mut h = vec![TruncSeries::zero("u"); n + 1];
    for (k, e) in el.into_iter().enumerate() {
        h[n - k] = if k % 2 == 0 { e } else { e.neg() };
    }
    Ok(h)
}

/// `s(c t^k)` for a series `s` in another variable.
fn compose_monomial(s: &TruncSeries, c: &Scalar, k: i64) -> TruncSeries {
    let min = s.min_exponent();
    let top = s.terms().map(|(e, _)| e).max().unwrap_or(min);
    let mut coeffs = vec![Scalar::zero(); ((top - min) * k + 1).max(0) as usize];
    for (e, a) in s.terms() {
        coeffs[((e - min) * k) as usize] += a * pow_i(c, e);
    }
    match s.truncation_order() {
        Some(o) => {
            coeffs.truncate(((o - min) * k - (k - 1)).max(0) as usize);
            TruncSeries::new(PARAM, min * k, coeffs, Some(o * k)).unwrap_or_else(|_| TruncSeries::big_o(PARAM, o * k))
        }
        None => TruncSeries::exact(PARAM, min * k, coeffs),
    }
}

/// `ord_t` of the defining equation of `b1` along `b2`.
fn one_way(b1: &BranchParam, b2: &BranchParam) -> Result<u32> {
    let value = match (&b1.shape, &b2.shape) {
        (BranchShape::Vertical, _) => b2.x_series.clone(),
        (BranchShape::Graph { alpha, .. }, shape2) => {
            let h = weierstrass(b1)?;
            let (u_c, u_k) = match shape2 {
                BranchShape::Graph { alpha: a2, n: n2 } => (a2 / alpha, *n2 as i64),
                BranchShape::Vertical => (Scalar::zero(), 1),
            };
            let mut acc = TruncSeries::zero(PARAM);
            let mut ypow = TruncSeries::one(PARAM);
            for hk in &h {
                let coeff = if u_c.is_zero() {
                    match hk.coeff(0) {
                        Some(c) => TruncSeries::monomial(PARAM, 0, c),
                        None => return Err(Error::Precision("defining series has no constant term".into())),
                    }
                } else {
                    compose_monomial(hk, &u_c, u_k)
                };
                acc = acc.add(&coeff.mul(&ypow)?)?;
                ypow = ypow.mul(&b2.y_series)?;
            }
            acc
        }
    };
    match value.valuation() {
        Some(v) => Ok(v as u32),
        None => Err(Error::Precision(
            "intersection multiplicity exceeds the branch precision".into(),
        )),
    }
}

fn same_branch(a: &BranchParam, b: &BranchParam) -> bool {
    a.shape == b.shape && a.y_series == b.y_series
}

pub fn pairwise_intersection_multiplicity(b1: &BranchParam, b2: &BranchParam) -> Result<u32> {
    if b1.center != b2.center {
        return Err(Error::Input("branches have different centers".into()));
    }
    if same_branch(b1, b2) {
        return Err(Error::Input("identical branches have infinite intersection multiplicity".into()));
    }
    let i12 = one_way(b1, b2)?;
    let i21 = one_way(b2, b1)?;
    if i12 != i21 {
        return Err(Error::Inconsistent(format!(
            "intersection multiplicity is asymmetric: {i12} vs {i21}"
        )));
    }
    Ok(i12)
}

/// `c_i = 2 delta(b_i) + sum_{j != i} (b_i . b_j)`.
pub fn conductor_exponents(bs: &[BranchParam]) -> Result<Vec<u32>> {
    let mut inter = vec![vec![0u32; bs.len()]; bs.len()];
    for i in 0..bs.len() {
        for j in i + 1..bs.len() {
            let m = pairwise_intersection_multiplicity(&bs[i], &bs[j])?;
            inter[i][j] = m;
            inter[j][i] = m;
        }
    }
    bs.iter()
        .enumerate()
        .map(|(i, b)| Ok(2 * b.delta()? + inter[i].iter().sum::<u32>()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::AdeType;
    use crate::exact::{parse_poly, substitute_series};

    fn local(text: &str) -> MultiPoly {
        parse_poly(text, &["x", "y"]).unwrap()
    }

    fn annihilates(f: &MultiPoly, b: &BranchParam) -> bool {
        let r = substitute_series(f, &b.x_series, &b.y_series).unwrap();
        r.valuation().is_none()
    }

    #[test]
    fn cusp_branch() {
        let bs = local_branches(&local("y^2 - x^3"), 8).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification, 2);
        assert_eq!(bs[0].x_series.coeff(2).unwrap(), int(1));
        assert!(annihilates(&local("y^2 - x^3"), &bs[0]));
        assert_eq!(bs[0].delta().unwrap(), 1);
    }

    #[test]
    fn node_branches() {
        let bs = local_branches(&local("x*y"), 6).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].shape, BranchShape::Vertical);
        assert_eq!(bs[1].y_series, TruncSeries::zero(PARAM));
        assert_eq!(pairwise_intersection_multiplicity(&bs[0], &bs[1]).unwrap(), 1);
        let f = local("x*y + x^3");
        let bs = local_branches(&f, 6).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert!(annihilates(&f, b));
        }
        let tangents: Vec<_> = bs.iter().map(|b| b.tangent.clone()).collect();
        assert!(tangents.contains(&[int(1), int(0)]));
        assert!(tangents.contains(&[int(0), int(1)]));
    }

    #[test]
    fn tangent_smooth_branches() {
        // y = x^2 and y = -x^2
        let bs = local_branches(&local("y^2 - x^4"), 8).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(pairwise_intersection_multiplicity(&bs[0], &bs[1]).unwrap(), 2);
        assert!(pairwise_intersection_multiplicity(&bs[0], &bs[0]).is_err());
    }

    #[test]
    fn irrational_tangents_rejected() {
        assert!(matches!(local_branches(&local("x^2 - 2*y^2 + x^3"), 6), Err(Error::Irrational(_))));
    }

    #[test]
    fn ade_models_have_table_conductors() {
        let types = [
            AdeType::A(1), AdeType::A(2), AdeType::A(3), AdeType::A(4), AdeType::A(5),
            AdeType::D(4), AdeType::D(5), AdeType::D(6), AdeType::E(6), AdeType::E(7), AdeType::E(8),
        ];
        for ty in types {
            let f = ty.model();
            let bs = local_branches(&f, 20).unwrap();
            assert_eq!(bs.len() as u32, ty.delta_and_branches().1, "{ty}");
            for b in &bs {
                assert!(annihilates(&f, b), "{ty}");
            }
            let mut cs = conductor_exponents(&bs).unwrap();
            cs.sort();
            assert_eq!(cs, ty.table_conductors(), "{ty}");
        }
    }
}
