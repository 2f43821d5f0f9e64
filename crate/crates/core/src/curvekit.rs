//! Plane curves, singular points, ADE classification and genus.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branches;
use crate::error::{Error, Result};
use crate::exact::linalg::rank;
use crate::exact::poly::{Monomial, MultiPoly};
use crate::exact::roots::{self, sylvester_resultant, UPoly};
use crate::exact::scalar::{from_bigint, int, parse_scalar, Scalar};
use crate::exact::parse_poly;

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// Projective point `[x:y:z]`.
pub type ProjPoint = [Scalar; 3];

pub fn point(x: i64, y: i64, z: i64) -> ProjPoint {
    [int(x), int(y), int(z)]
}

pub fn parse_point(parts: &[&str]) -> Result<ProjPoint> {
    if parts.len() != 3 {
        return Err(Error::Input(format!("a projective point needs 3 coordinates, got {}", parts.len())));
    }
    let p = [parse_scalar(parts[0])?, parse_scalar(parts[1])?, parse_scalar(parts[2])?];
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::Input("[0:0:0] is not a projective point".into()));
    }
    Ok(p)
}

/// Coprime integer coordinates with the first nonzero entry positive.
pub fn normalize_point(p: &ProjPoint) -> [BigInt; 3] {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    let neg = v.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative());
    for n in v.iter_mut() {
        *n = &*n / &g;
        if neg {
            *n = -&*n;
        }
    }
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

pub fn point_label(p: &ProjPoint) -> String {
    let n = normalize_point(p);
    format!("[{}:{}:{}]", n[0], n[1], n[2])
}

pub fn same_point(a: &ProjPoint, b: &ProjPoint) -> bool {
    normalize_point(a) == normalize_point(b)
}

/// Affine chart: the coordinate of largest absolute value, ties going to z, then y.
pub fn chart_index(p: &ProjPoint) -> usize {
    let n = normalize_point(p);
    let mut best = 2;
    for i in [1, 0] {
        if n[i].abs() > n[best].abs() {
            best = i;
        }
    }
    best
}

/// The curve germ at a point, moved to the origin of an affine chart.
#[derive(Clone, Debug)]
pub struct LocalChart {
    pub chart: usize,
    /// Affine coordinates of the point in the chart (the two kept coordinates).
    pub center: [Scalar; 2],
    /// Local equation with the point at the origin.
    pub local: MultiPoly,
}

pub fn local_chart(form: &MultiPoly, p: &ProjPoint) -> LocalChart {
    let chart = chart_index(p);
    local_chart_in(form, p, chart)
}

pub fn local_chart_in(form: &MultiPoly, p: &ProjPoint, chart: usize) -> LocalChart {
    let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let center = [&p[keep[0]] / &p[chart], &p[keep[1]] / &p[chart]];
    let local = form.dehomogenize(chart).translate(&center);
    LocalChart { chart, center, local }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeType {
    A(u32),
    D(u32),
    E(u32),
}

impl AdeType {
    pub fn is_node(&self) -> bool {
        *self == AdeType::A(1)
    }

    pub fn is_cusp(&self) -> bool {
        *self == AdeType::A(2)
    }

    pub fn milnor(&self) -> u32 {
        match *self {
            AdeType::A(k) | AdeType::D(k) | AdeType::E(k) => k,
        }
    }

    /// `(delta, branch count)` from the ADE table.
    pub fn delta_and_branches(&self) -> (u32, u32) {
        match *self {
            AdeType::A(k) => (k.div_ceil(2), if k % 2 == 1 { 2 } else { 1 }),
            AdeType::D(k) => {
                let r = if k % 2 == 0 { 3 } else { 2 };
                ((k + r - 1) / 2, r)
            }
            AdeType::E(6) => (3, 1),
            AdeType::E(7) => (4, 2),
            AdeType::E(8) => (4, 1),
            AdeType::E(k) => panic!("no simple singularity E_{k}"),
        }
    }

    /// Conductor exponents per branch, ascending.
    pub fn table_conductors(&self) -> Vec<u32> {
        match *self {
            AdeType::A(k) if k % 2 == 1 => vec![k.div_ceil(2); 2],
            AdeType::A(k) => vec![k],
            AdeType::D(k) if k % 2 == 0 => {
                let m = (k - 2) / 2;
                vec![2, 1 + m, 1 + m]
            }
            AdeType::D(k) => vec![2, k - 1],
            AdeType::E(6) => vec![6],
            AdeType::E(7) => vec![3, 5],
            AdeType::E(8) => vec![8],
            AdeType::E(k) => panic!("no simple singularity E_{k}"),
        }
    }

    /// Standard local model at the origin, chosen so every branch is defined over Q.
    pub fn model(&self) -> MultiPoly {
        let text = match *self {
            AdeType::A(k) => format!("y^2 - x^{}", k + 1),
            AdeType::D(k) => format!("x^2*y - y^{}", k - 1),
            AdeType::E(6) => "x^3 + y^4".to_string(),
            AdeType::E(7) => "x^3 + x*y^3".to_string(),
            AdeType::E(8) => "x^3 + y^5".to_string(),
            AdeType::E(k) => panic!("no simple singularity E_{k}"),
        };
        parse_poly(&text, &["x", "y"]).expect("model polynomial")
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            AdeType::A(k) => k >= 1,
            AdeType::D(k) => k >= 4,
            AdeType::E(k) => (6..=8).contains(&k),
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(k) => write!(f, "A_{k}"),
            AdeType::D(k) => write!(f, "D_{k}"),
            AdeType::E(k) => write!(f, "E_{k}"),
        }
    }
}

impl FromStr for AdeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not an ADE tag: {s:?}"));
        let mut chars = t.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = chars.as_str().trim_start_matches('_');
        let k: u32 = rest.parse().map_err(|_| bad())?;
        let ty = match family {
            'A' => AdeType::A(k),
            'D' => AdeType::D(k),
            'E' => AdeType::E(k),
            _ => return Err(bad()),
        };
        if !ty.is_valid() {
            return Err(bad());
        }
        Ok(ty)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConductorSource {
    /// Computed from branch expansions and intersection multiplicities.
    Branches,
    /// Branches need irrational coefficients; values taken from the ADE table.
    Table,
}

#[derive(Clone, Debug)]
pub struct SingularityRecord {
    pub point: ProjPoint,
    pub ade_type: AdeType,
    pub milnor: u32,
    pub delta: u32,
    pub branch_count: u32,
    pub conductor_exponents: Vec<u32>,
    pub conductor_source: ConductorSource,
}

impl SingularityRecord {
    /// A record carrying only the table invariants of a type.
    pub fn from_table(ade_type: AdeType, point: ProjPoint) -> Self {
        let (delta, branch_count) = ade_type.delta_and_branches();
        SingularityRecord {
            point,
            ade_type,
            milnor: ade_type.milnor(),
            delta,
            branch_count,
            conductor_exponents: ade_type.table_conductors(),
            conductor_source: ConductorSource::Table,
        }
    }

    pub fn milnor_jung_holds(&self) -> bool {
        self.milnor + 1 + self.branch_count == 2 * self.delta + 2
    }

    pub fn conductor_sum_holds(&self) -> bool {
        self.conductor_exponents.iter().sum::<u32>() == 2 * self.delta
    }
}

#[derive(Clone, Debug)]
pub struct PlaneCurve {
    pub degree: u32,
    pub form: MultiPoly,
    pub singularities: Vec<SingularityRecord>,
    /// Lower bound on branch expansion orders, on top of the per-type default.
    pub truncation: Option<i64>,
}

impl PlaneCurve {
    pub fn new(form: MultiPoly) -> Result<Self> {
        Self::with_degree_cap(form, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(form: MultiPoly, cap: u32) -> Result<Self> {
        if form.nvars() != 3 {
            return Err(Error::Input("a plane curve needs a form in x, y, z".into()));
        }
        if !form.is_homogeneous() {
            return Err(Error::Input(format!("{form} is not homogeneous")));
        }
        let degree = form.total_degree().ok_or_else(|| Error::Input("zero form".into()))?;
        if degree == 0 {
            return Err(Error::Input("constant form defines no curve".into()));
        }
        if degree > cap {
            return Err(Error::Input(format!("degree {degree} exceeds the cap {cap}")));
        }
        if !is_squarefree(&form) {
            return Err(Error::Input(format!("{form} is not square-free")));
        }
        Ok(PlaneCurve { degree, form, singularities: Vec::new(), truncation: None })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_poly(text, &["x", "y", "z"])?)
    }

    /// Verify and classify each declared point.
    pub fn classify_points(&mut self, points: &[ProjPoint]) -> Result<()> {
        for p in points {
            if self.singularities.iter().any(|s| same_point(&s.point, p)) {
                return Err(Error::Input(format!("point {} declared twice", point_label(p))));
            }
            let rec = classify_ade(self, p)?;
            self.singularities.push(rec);
        }
        Ok(())
    }

    /// Find the rational singular points and classify them.
    pub fn classify_rational(&mut self) -> Result<()> {
        let pts = rational_singular_points(&self.form)?;
        self.classify_points(&pts)
    }

    pub fn analyzed(text: &str, points: &[ProjPoint]) -> Result<Self> {
        let mut c = Self::parse(text)?;
        c.classify_points(points)?;
        Ok(c)
    }

    /// Branch series order used at `rec`.
    pub fn branch_order(&self, rec: &SingularityRecord) -> i64 {
        branches::default_order(rec).max(self.truncation.unwrap_or(0))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &SingularityRecord> {
        self.singularities.iter().filter(|s| s.ade_type.is_node())
    }

    pub fn node_count(&self) -> usize {
        self.nodes().count()
    }

    pub fn cusp_count(&self) -> usize {
        self.singularities.iter().filter(|s| s.ade_type.is_cusp()).count()
    }

    pub fn arithmetic_genus(&self) -> i64 {
        let d = self.degree as i64;
        (d - 1) * (d - 2) / 2
    }
}

pub fn verify_singular_point(curve: &PlaneCurve, p: &ProjPoint) -> bool {
    curve.form.eval(p).is_zero() && curve.form.gradient().iter().all(|g| g.eval(p).is_zero())
}

/// Milnor number of a local equation with a singular point at the origin:
/// `dim Q[x,y]/(J + m^N)` for growing `N` until two consecutive values agree,
/// which by Nakayama certifies `m^N` lies in the local Jacobian ideal.
pub fn milnor_number_local(f: &MultiPoly) -> Result<u32> {
    let jac = [f.derivative(0), f.derivative(1)];
    let deg = f.total_degree().unwrap_or(0).max(2);
    let cap = ((deg - 1) * (deg - 1) + 2).min(48);
    let mut prev: Option<usize> = None;
    for n in 1..=cap {
        let monos: Vec<Monomial> = (0..n).flat_map(|k| MultiPoly::monomials_of_degree(2, k)).collect();
        let index = |m: &Monomial| monos.iter().position(|x| x == m);
        let mut rows = Vec::new();
        for g in &jac {
            for m in &monos {
                let mut row = vec![Scalar::zero(); monos.len()];
                let mut any = false;
                for (gm, c) in g.terms() {
                    let prod = [gm[0] + m[0], gm[1] + m[1], 0];
                    if prod[0] + prod[1] < n {
                        row[index(&prod).unwrap()] += c;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let dim = monos.len() - rank(&rows, monos.len());
        if prev == Some(dim) {
            return Ok(dim as u32);
        }
        prev = Some(dim);
    }
    Err(Error::Unsupported(format!(
        "local algebra dimension did not stabilize by degree {cap}: non-isolated singularity or Milnor number too large"
    )))
}

pub fn milnor_number(curve: &PlaneCurve, p: &ProjPoint) -> Result<u32> {
    if !verify_singular_point(curve, p) {
        return Err(Error::Input(format!("{} is not a singular point", point_label(p))));
    }
    milnor_number_local(&local_chart(&curve.form, p).local)
}

/// Corank of the Hessian at the origin.
pub fn hessian_corank(f: &MultiPoly) -> usize {
    let q = f.homogeneous_part(2);
    let a = q.coeff(&[2, 0, 0]);
    let b = q.coeff(&[1, 1, 0]);
    let c = q.coeff(&[0, 2, 0]);
    let h = vec![vec![&a * int(2), b.clone()], vec![b, &c * int(2)]];
    2 - rank(&h, 2)
}

/// Whether a binary cubic is the cube of a linear form (zero excluded).
pub fn is_perfect_cube(cubic: &MultiPoly) -> bool {
    if cubic.is_zero() {
        return false;
    }
    let a = cubic.coeff(&[3, 0, 0]);
    let b = cubic.coeff(&[2, 1, 0]) / int(3);
    let c = cubic.coeff(&[1, 2, 0]) / int(3);
    let d = cubic.coeff(&[0, 3, 0]);
    (&a * &c - &b * &b).is_zero() && (&a * &d - &b * &c).is_zero() && (&b * &d - &c * &c).is_zero()
}

/// ADE type of a local equation from `(mu, corank, cubic test)`.
pub fn classify_local(f: &MultiPoly) -> Result<(AdeType, u32)> {
    if !f.eval(&[Scalar::zero(), Scalar::zero()]).is_zero() {
        return Err(Error::Input("origin is not on the curve".into()));
    }
    // nondegenerate Hessian: a Morse point, mu = 1 without the local algebra
    if f.homogeneous_part(1).is_zero() && hessian_corank(f) == 0 {
        return Ok((AdeType::A(1), 1));
    }
    let mu = milnor_number_local(f)?;
    if mu == 0 {
        return Err(Error::Input("origin is a smooth point".into()));
    }
    let ty = match hessian_corank(f) {
        0 => AdeType::A(1),
        1 => AdeType::A(mu),
        _ => {
            let cubic = f.homogeneous_part(3);
            if cubic.is_zero() {
                return Err(Error::Unsupported(format!(
                    "non-simple singularity: vanishing 3-jet, mu = {mu}"
                )));
            }
            if is_perfect_cube(&cubic) {
                if !(6..=8).contains(&mu) {
                    return Err(Error::Unsupported(format!(
                        "non-simple singularity: cube 3-jet with mu = {mu}"
                    )));
                }
                AdeType::E(mu)
            } else {
                AdeType::D(mu)
            }
        }
    };
    if ty.milnor() != mu {
        return Err(Error::Inconsistent(format!("{ty} classified with mu = {mu}")));
    }
    Ok((ty, mu))
}

pub fn classify_ade(curve: &PlaneCurve, p: &ProjPoint) -> Result<SingularityRecord> {
    if !verify_singular_point(curve, p) {
        return Err(Error::Input(format!(
            "{} is not a singular point of {}",
            point_label(p),
            curve.form
        )));
    }
    let lc = local_chart(&curve.form, p);
    let (ty, mu) = classify_local(&lc.local)?;
    let (delta, r) = ty.delta_and_branches();
    let mut rec = SingularityRecord::from_table(ty, p.clone());
    rec.milnor = mu;
    debug_assert_eq!(rec.delta, delta);
    let order = curve.branch_order(&rec);
    match branches::local_branches(&lc.local, order) {
        Ok(bs) => {
            if bs.len() != r as usize {
                return Err(Error::Inconsistent(format!(
                    "{ty} at {} has {} computed branches, expected {r}",
                    point_label(p),
                    bs.len()
                )));
            }
            let cs = branches::conductor_exponents(&bs)?;
            let mut sorted = cs.clone();
            sorted.sort();
            if sorted != ty.table_conductors() {
                return Err(Error::Inconsistent(format!(
                    "{ty} at {}: branch conductors {cs:?} differ from the table",
                    point_label(p)
                )));
            }
            rec.conductor_exponents = cs;
            rec.conductor_source = ConductorSource::Branches;
        }
        Err(Error::Irrational(_)) => {}
        Err(e) => return Err(e),
    }
    if !rec.milnor_jung_holds() || !rec.conductor_sum_holds() {
        return Err(Error::Inconsistent(format!("invariants of {ty} violate mu = 2 delta - r + 1")));
    }
    Ok(rec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusData {
    pub arithmetic_genus: i64,
    pub geometric_genus: i64,
    pub node_count: usize,
}

pub fn geometric_genus(curve: &PlaneCurve) -> Result<GenusData> {
    let pa = curve.arithmetic_genus();
    let delta: i64 = curve.singularities.iter().map(|s| s.delta as i64).sum();
    let g = pa - delta;
    if g < 0 {
        return Err(Error::Inconsistent(format!(
            "singularities remove {delta} from arithmetic genus {pa}: reducible curve or wrong singularity list"
        )));
    }
    Ok(GenusData { arithmetic_genus: pa, geometric_genus: g, node_count: curve.node_count() })
}

/// Numerical data for a curve in `|O_S(m)|` on a surface of degree `e` in P^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub surface_degree: i64,
    pub multiple: i64,
    pub arithmetic_genus: i64,
    pub total_delta: i64,
    pub geometric_genus: i64,
    pub node_count: i64,
    /// Nodes at least the genus.
    pub node_criterion: bool,
    /// Some singularity other than a node or cusp.
    pub beyond_a2: bool,
    /// Node count below `3e - 1 + g`.
    pub rank_gap_inequality: bool,
}

pub fn surface_numeric_report(e: i64, m: i64, singularities: &[SingularityRecord]) -> Result<SurfaceReport> {
    if e < 4 || m < 1 {
        return Err(Error::Input(format!("need e >= 4 and m >= 1, got e = {e}, m = {m}")));
    }
    let pa = m * (m + e - 4) * e / 2 + 1;
    let total_delta: i64 = singularities.iter().map(|s| s.delta as i64).sum();
    let g = pa - total_delta;
    if g < 0 {
        return Err(Error::Input(format!("singularities remove {total_delta} from p_a = {pa}")));
    }
    let nodes = singularities.iter().filter(|s| s.ade_type.is_node()).count() as i64;
    Ok(SurfaceReport {
        surface_degree: e,
        multiple: m,
        arithmetic_genus: pa,
        total_delta,
        geometric_genus: g,
        node_count: nodes,
        node_criterion: nodes >= g,
        beyond_a2: singularities.iter().any(|s| !matches!(s.ade_type, AdeType::A(1) | AdeType::A(2))),
        rank_gap_inequality: nodes < 3 * e - 1 + g,
    })
}

/// Unit lower times unit upper triangular integer matrix.
pub fn random_unimodular(rng: &mut impl Rng, spread: i64) -> Vec<Vec<Scalar>> {
    let mut l = [[0i64; 3]; 3];
    let mut u = [[0i64; 3]; 3];
    for i in 0..3 {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.gen_range(-spread..=spread);
            u[j][i] = rng.gen_range(-spread..=spread);
        }
    }
    (0..3)
        .map(|i| (0..3).map(|j| int((0..3).map(|k| l[i][k] * u[k][j]).sum())).collect())
        .collect()
}

pub fn apply_matrix(m: &[Vec<Scalar>], p: &ProjPoint) -> ProjPoint {
    let v: Vec<Scalar> = m.iter().map(|r| r.iter().zip(p).map(|(a, b)| a * b).sum()).collect();
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

fn generic_change(form: &MultiPoly, seed: u64) -> (Vec<Vec<Scalar>>, MultiPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = random_unimodular(&mut rng, 3);
        let g = form.linear_change(&m);
        let d = g.total_degree().unwrap_or(0);
        if !g.coeff(&[0, d, 0]).is_zero() {
            return (m, g);
        }
    }
}

/// Exact test: after a change making the form monic in `y`, the discriminant
/// in `y` is a nonzero polynomial in `x` iff the form has no repeated factor.
pub fn is_squarefree(form: &MultiPoly) -> bool {
    let d = form.total_degree().unwrap_or(0);
    if d <= 1 {
        return !form.is_zero();
    }
    let (_, g) = generic_change(form, 0x5eed);
    let f = g.dehomogenize(2);
    let fy = f.derivative(1);
    (0..=(d * (d - 1)) as i64).any(|x0| {
        let x0 = int(x0);
        let mut a = roots::specialize_first(&f, &x0);
        let mut b = roots::specialize_first(&fy, &x0);
        a.resize(d as usize + 1, Scalar::zero());
        b.resize(d as usize, Scalar::zero());
        !sylvester_resultant(&a, &b).is_zero()
    })
}

fn common_rational_roots(polys: &[UPoly]) -> Vec<Scalar> {
    let mut g: UPoly = Vec::new();
    for p in polys {
        g = roots::gcd(&g, p);
    }
    if g.is_empty() {
        // every polynomial vanishes identically
        return Vec::new();
    }
    roots::rational_roots(&g)
}

/// All singular points with rational coordinates, sorted by label.
pub fn rational_singular_points(form: &MultiPoly) -> Result<Vec<ProjPoint>> {
    for seed in 0..8u64 {
        let (m, g) = generic_change(form, 0xc0ffee + seed);
        let f = g.dehomogenize(2);
        let (fx, fy) = (f.derivative(0), f.derivative(1));
        let r1 = roots::resultant_in_y(&f, &fx);
        let r2 = roots::resultant_in_y(&f, &fy);
        if r1.is_empty() || r2.is_empty() {
            continue;
        }
        let mut found: Vec<ProjPoint> = Vec::new();
        for x0 in roots::rational_roots(&roots::gcd(&r1, &r2)) {
            let ys = common_rational_roots(&[
                roots::specialize_first(&f, &x0),
                roots::specialize_first(&fx, &x0),
                roots::specialize_first(&fy, &x0),
            ]);
            for y0 in ys {
                found.push([x0.clone(), y0, Scalar::one()]);
            }
        }
        // line at infinity z = 0: points [x:1:0] and [1:0:0]
        let grads = g.gradient();
        let on_line = |p: &MultiPoly| -> UPoly {
            let mut out = vec![Scalar::zero(); p.total_degree().unwrap_or(0) as usize + 1];
            for (e, c) in p.terms() {
                if e[2] == 0 {
                    out[e[0] as usize] += c;
                }
            }
            out
        };
        let mut line: Vec<UPoly> = vec![on_line(&g)];
        line.extend(grads.iter().map(on_line));
        for x0 in common_rational_roots(&line) {
            found.push([x0, Scalar::one(), Scalar::zero()]);
        }
        let inf = [Scalar::one(), Scalar::zero(), Scalar::zero()];
        if g.eval(&inf).is_zero() && grads.iter().all(|q| q.eval(&inf).is_zero()) {
            found.push(inf);
        }
        let mut pts: Vec<ProjPoint> = found.iter().map(|p| apply_matrix(&m, p)).collect();
        for p in &pts {
            debug_assert!(form.eval(p).is_zero());
        }
        pts.sort_by_key(|p| normalize_point(p));
        pts.dedup_by(|a, b| same_point(a, b));
        return Ok(pts);
    }
    Err(Error::Input(format!("{form} shares a factor with its partials in every tried coordinate system")))
}

/// Integer coordinates as scalars, e.g. for canonical output.
pub fn normalized_scalars(p: &ProjPoint) -> ProjPoint {
    let n = normalize_point(p);
    [from_bigint(n[0].clone()), from_bigint(n[1].clone()), from_bigint(n[2].clone())]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local(text: &str) -> MultiPoly {
        parse_poly(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number_local(&local("x*y")).unwrap(), 1);
        assert_eq!(milnor_number_local(&local("y^2 - x^3")).unwrap(), 2);
        assert_eq!(milnor_number_local(&local("x^3 + y^4")).unwrap(), 6);
        assert!(matches!(milnor_number_local(&local("y^2")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn classification_of_models() {
        for ty in [AdeType::A(1), AdeType::A(4), AdeType::D(4), AdeType::D(7), AdeType::E(6), AdeType::E(7), AdeType::E(8)] {
            assert_eq!(classify_local(&ty.model()).unwrap().0, ty);
        }
        assert!(matches!(classify_local(&local("x^4 + y^4")), Err(Error::Unsupported(_))));
        assert!(matches!(classify_local(&local("x^3 + y^7")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tags_round_trip() {
        for s in ["A_1", "D_5", "E_8"] {
            assert_eq!(s.parse::<AdeType>().unwrap().to_string(), s);
        }
        assert_eq!("a3".parse::<AdeType>().unwrap(), AdeType::A(3));
        assert!("E_9".parse::<AdeType>().is_err());
        assert!("D_3".parse::<AdeType>().is_err());
    }

    #[test]
    fn verification_examples() {
        let c = PlaneCurve::parse("y^2*z - x^3").unwrap();
        assert!(verify_singular_point(&c, &point(0, 0, 1)));
        assert!(!verify_singular_point(&c, &point(1, 1, 1)));
        let fermat = PlaneCurve::parse("x^3 + y^3 + z^3").unwrap();
        assert!(!verify_singular_point(&fermat, &point(1, -1, 0)));
        assert!(rational_singular_points(&fermat.form).unwrap().is_empty());
    }

    #[test]
    fn squarefree_detection() {
        let f = parse_poly("x^2*z - y^2*z", &["x", "y", "z"]).unwrap();
        assert!(is_squarefree(&f));
        let g = parse_poly("(x - y)^2*z", &["x", "y", "z"]).unwrap();
        assert!(!is_squarefree(&g));
    }

    #[test]
    fn finder_locates_nodes() {
        let f = parse_poly("y^2*z - x^3 - x^2*z", &["x", "y", "z"]).unwrap();
        let pts = rational_singular_points(&f).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(point_label(&pts[0]), "[0:0:1]");
    }

    #[test]
    fn charts_prefer_largest_coordinate() {
        assert_eq!(chart_index(&point(1, 1, 1)), 2);
        assert_eq!(chart_index(&point(3, -5, 1)), 1);
        assert_eq!(chart_index(&point(1, 0, 0)), 0);
    }
}
