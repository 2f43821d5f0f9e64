//! Curves with prescribed nodes, seeded equisingular sampling, and empirical
//! span/rank scans over such families.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::adjoint::{adjoint_space, double_vanishing_at, double_vanishing_space, form_from, NodalScheme};
use crate::curvekit::{
    apply_matrix, chart_index, geometric_genus, normalize_point, point_label, rational_singular_points,
    random_unimodular, same_point, PlaneCurve, ProjPoint, DEFAULT_DEGREE_CAP,
};
use crate::error::{Error, Result};
use crate::exact::linalg::nullspace;
use crate::exact::poly::{Monomial, MultiPoly};
use crate::exact::scalar::{int, ratio, RatText, Scalar};
use crate::ivhs::{assemble_from, node_functionals};

pub const IRRATIONAL_DISCLAIMER: &str =
    "extra singularities are searched only at rational points; irrational ones are unchecked";
pub const FIXED_NODES_NOTE: &str = "node positions are held fixed across the family";

/// Coefficient box for sampling kernel combinations.
const COEFF_BOUND: i64 = 9;
const REJECTION_FACTOR: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub degree: u32,
    pub node_points: Vec<[RatText; 3]>,
    pub sample_count: usize,
    pub seed: u64,
    /// Force both tangents at each node to be rational. Defaults to on when the
    /// expected genus is positive, since residue functionals then need branches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational_tangents: Option<bool>,
}

impl FamilySpec {
    pub fn new(degree: u32, points: &[ProjPoint], sample_count: usize, seed: u64) -> Self {
        FamilySpec {
            degree,
            node_points: points.iter().map(|p| p.clone().map(RatText)).collect(),
            sample_count,
            seed,
            rational_tangents: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FamilySpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("family spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.node_points.iter().map(|p| p.clone().map(|r| r.0)).collect()
    }

    pub fn expected_genus(&self) -> i64 {
        let d = self.degree as i64;
        (d - 1) * (d - 2) / 2 - self.node_points.len() as i64
    }

    pub fn tangents_required(&self) -> bool {
        self.rational_tangents.unwrap_or(self.expected_genus() > 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 || self.degree > DEFAULT_DEGREE_CAP {
            return Err(Error::Input(format!("degree {} outside 1..={DEFAULT_DEGREE_CAP}", self.degree)));
        }
        let pts = self.points();
        for (i, p) in pts.iter().enumerate() {
            if p.iter().all(|c| c.is_zero()) {
                return Err(Error::Input("[0:0:0] is not a point".into()));
            }
            if pts[..i].iter().any(|q| same_point(p, q)) {
                return Err(Error::Input(format!("node point {} listed twice", point_label(p))));
            }
        }
        Ok(())
    }

    pub fn with_point(&self, p: ProjPoint) -> Self {
        let mut s = self.clone();
        s.node_points.push(p.map(RatText));
        s
    }
}

/// Forms of degree `d` singular at every prescribed point, optionally with one
/// prescribed rational tangent direction `(1, slope)` per point (in its chart),
/// which makes both tangents rational.
#[derive(Clone, Debug)]
pub struct NodeConditions {
    pub monomials: Vec<Monomial>,
    pub rows: Vec<Vec<Scalar>>,
    pub kernel: Vec<Vec<Scalar>>,
    pub tangent_slopes: Option<Vec<Scalar>>,
}

fn chart_direction(p: &ProjPoint, slope: &Scalar) -> ProjPoint {
    let chart = chart_index(p);
    let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let mut d = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    d[keep[0]] = Scalar::one();
    d[keep[1]] = slope.clone();
    d
}

fn on_line(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    let det = &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0]);
    det.is_zero()
}

/// Seeded slopes such that no prescribed tangent line passes through another
/// prescribed point (two nodes on a common tangent line would split it off).
pub fn tangent_slopes(points: &[ProjPoint], seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x7a9e));
    points
        .iter()
        .enumerate()
        .map(|(i, p)| loop {
            let s = ratio(rng.gen_range(-7..=7), rng.gen_range(1..=4));
            let d = chart_direction(p, &s);
            if !points.iter().enumerate().any(|(j, q)| j != i && on_line(p, &d, q)) {
                break s;
            }
        })
        .collect()
}

pub fn node_conditions(degree: u32, points: &[ProjPoint], slopes: Option<&[Scalar]>) -> NodeConditions {
    let sys = double_vanishing_at(degree as i64, points);
    let mut rows = sys.condition_matrix;
    if let Some(slopes) = slopes {
        for (p, lam) in points.iter().zip(slopes) {
            let chart = chart_index(p);
            let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
            let center = [&p[keep[0]] / &p[chart], &p[keep[1]] / &p[chart]];
            let two_lam = lam * int(2);
            let lam2 = lam * lam;
            rows.push(
                sys.monomials
                    .iter()
                    .map(|m| {
                        let f = MultiPoly::from_terms(&["x", "y", "z"], [(*m, Scalar::one())]).dehomogenize(chart);
                        let fu = f.derivative(0);
                        let fv = f.derivative(1);
                        fu.derivative(0).eval(&center)
                            + &two_lam * fu.derivative(1).eval(&center)
                            + &lam2 * fv.derivative(1).eval(&center)
                    })
                    .collect(),
            );
        }
    }
    let kernel = nullspace(&rows, sys.monomials.len());
    NodeConditions { monomials: sys.monomials, rows, kernel, tangent_slopes: slopes.map(<[Scalar]>::to_vec) }
}

fn spec_conditions(spec: &FamilySpec) -> NodeConditions {
    let points = spec.points();
    let slopes = spec.tangents_required().then(|| tangent_slopes(&points, spec.seed));
    node_conditions(spec.degree, &points, slopes.as_deref())
}

/// Short content hash of the canonical form text.
pub fn curve_hash(form: &MultiPoly) -> String {
    let digest = Sha256::digest(form.content_normalized().to_string().as_bytes());
    hex::encode(&digest[..8])
}

/// Every prescribed point is an `A_1`; any failure is a rejection.
fn verified_curve(form: MultiPoly, points: &[ProjPoint]) -> Option<PlaneCurve> {
    let mut c = PlaneCurve::new(form).ok()?;
    c.classify_points(points).ok()?;
    c.singularities.iter().all(|s| s.ade_type.is_node()).then_some(c)
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub curve: PlaneCurve,
    pub weights: Vec<Scalar>,
    pub rejected: usize,
}

fn draw(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    loop {
        let w: Vec<Scalar> = (0..n).map(|_| int(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))).collect();
        if w.iter().any(|c| !c.is_zero()) {
            return w;
        }
    }
}

fn combine(cond: &NodeConditions, w: &[Scalar]) -> MultiPoly {
    let n = cond.monomials.len();
    let v: Vec<Scalar> = (0..n)
        .map(|j| cond.kernel.iter().zip(w).map(|(b, c)| &b[j] * c).sum())
        .collect();
    form_from(&cond.monomials, &v)
}

fn sample_from(
    cond: &NodeConditions,
    points: &[ProjPoint],
    rng: &mut ChaCha8Rng,
    budget: usize,
    scan_rational: bool,
) -> Result<Sample> {
    if cond.kernel.is_empty() {
        return Err(Error::Input("no form satisfies the node conditions".into()));
    }
    for rejected in 0..budget {
        let w = draw(rng, cond.kernel.len());
        let Some(curve) = verified_curve(combine(cond, &w), points) else { continue };
        if scan_rational && rational_singular_points(&curve.form)?.len() != points.len() {
            continue;
        }
        return Ok(Sample { curve, weights: w, rejected });
    }
    Err(Error::Input(format!("rejection budget of {budget} draws exhausted")))
}

fn sample_rng(spec: &FamilySpec, sample_index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed ^ (sample_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// The `sample_index`-th member whose prescribed points are all verified nodes;
/// the stream depends only on the seed and index.
pub fn curve_with_prescribed_nodes(spec: &FamilySpec, sample_index: usize) -> Result<Sample> {
    spec.validate()?;
    let cond = spec_conditions(spec);
    sample_from(&cond, &spec.points(), &mut sample_rng(spec, sample_index), REJECTION_FACTOR, false)
}

/// As [`curve_with_prescribed_nodes`], also rejecting members with any further
/// rational singular point.
pub fn strict_sample(spec: &FamilySpec, sample_index: usize) -> Result<Sample> {
    spec.validate()?;
    let cond = spec_conditions(spec);
    sample_from(&cond, &spec.points(), &mut sample_rng(spec, sample_index), REJECTION_FACTOR, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub hash: String,
    pub genus: i64,
    pub nodes_verified: usize,
    pub adjoint_dimension: usize,
    pub node_span_dimension: usize,
    pub image_dimension: usize,
    pub double_vanishing_dimension: usize,
    pub extra_rational_singularities: usize,
    pub rejected_draws: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpennessProbe {
    pub base_index: usize,
    pub base_span: usize,
    pub perturbed_spans: Vec<Option<usize>>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySummary {
    pub verified: usize,
    pub degenerate: usize,
    pub kernel_dimension: usize,
    pub expected_genus: i64,
    pub max_span: usize,
    pub fraction_at_max: f64,
    pub fraction_full_span: f64,
    pub below_max: Vec<usize>,
    pub openness: Option<OpennessProbe>,
    pub notes: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyScanResult {
    pub spec: FamilySpec,
    pub samples: Vec<SampleRecord>,
    pub summary: FamilySummary,
}

fn record(index: usize, s: &Sample) -> Result<SampleRecord> {
    let c = &s.curve;
    let genus = geometric_genus(c)?;
    let adj = adjoint_space(c)?;
    let op = assemble_from(c, &adj, node_functionals(c, &adj, 0)?);
    let dv = double_vanishing_space(c, &NodalScheme::of_curve(c));
    let extra = rational_singular_points(&c.form)?
        .iter()
        .filter(|p| !c.singularities.iter().any(|r| same_point(&r.point, p)))
        .count();
    Ok(SampleRecord {
        index,
        hash: curve_hash(&c.form),
        genus: genus.geometric_genus,
        nodes_verified: c.node_count(),
        adjoint_dimension: adj.dimension(),
        node_span_dimension: op.node_span_dimension,
        image_dimension: op.image_dimension,
        double_vanishing_dimension: dv.dimension(),
        extra_rational_singularities: extra,
        rejected_draws: s.rejected,
    })
}

fn span_of(form: MultiPoly, points: &[ProjPoint]) -> Option<usize> {
    let c = verified_curve(form, points)?;
    let adj = adjoint_space(&c).ok()?;
    let fs = node_functionals(&c, &adj, 0).ok()?;
    Some(crate::ivhs::span_dimension(&fs, adj.dimension()))
}

/// Five seeded perturbations of the best sample's kernel weights by `k/97`.
pub fn openness_probe(spec: &FamilySpec, base: &Sample, base_index: usize, base_span: usize) -> OpennessProbe {
    let points = spec.points();
    let cond = spec_conditions(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(0x0be7));
    let perturbed_spans: Vec<Option<usize>> = (0..5)
        .map(|_| {
            let w: Vec<Scalar> = base
                .weights
                .iter()
                .map(|c| c + ratio(rng.gen_range(-3..=3), 97))
                .collect();
            span_of(combine(&cond, &w), &points)
        })
        .collect();
    let holds = perturbed_spans.iter().any(|s| s.is_some_and(|s| s >= base_span));
    OpennessProbe { base_index, base_span, perturbed_spans, holds }
}

pub fn family_scan(spec: &FamilySpec) -> Result<FamilyScanResult> {
    spec.validate()?;
    if spec.sample_count == 0 {
        return Err(Error::Input("sample_count must be positive".into()));
    }
    let cond = spec_conditions(spec);
    let mut samples = Vec::new();
    let mut kept = Vec::new();
    let mut degenerate = 0;
    for index in 0..spec.sample_count {
        match strict_sample(spec, index) {
            Ok(s) => {
                degenerate += s.rejected;
                let rec = record(index, &s)?;
                samples.push(rec);
                kept.push(s);
            }
            Err(Error::Input(_)) => degenerate += REJECTION_FACTOR,
            Err(e) => return Err(e),
        }
    }
    if samples.is_empty() {
        return Err(Error::Input(format!(
            "all {} samples rejected: no member of the family has exactly the prescribed nodes",
            spec.sample_count
        )));
    }
    let max_span = samples.iter().map(|r| r.node_span_dimension).max().unwrap_or(0);
    let at_max = samples.iter().filter(|r| r.node_span_dimension == max_span).count();
    let full = samples.iter().filter(|r| r.node_span_dimension as i64 == r.genus).count();
    let below_max = samples.iter().filter(|r| r.node_span_dimension < max_span).map(|r| r.index).collect();
    let best = samples.iter().position(|r| r.node_span_dimension == max_span).unwrap();
    let openness = (max_span > 0).then(|| openness_probe(spec, &kept[best], samples[best].index, max_span));
    let n = samples.len() as f64;
    Ok(FamilyScanResult {
        spec: spec.clone(),
        summary: FamilySummary {
            verified: samples.len(),
            degenerate,
            kernel_dimension: cond.kernel.len(),
            expected_genus: spec.expected_genus(),
            max_span,
            fraction_at_max: at_max as f64 / n,
            fraction_full_span: full as f64 / n,
            below_max,
            openness,
            notes: vec![IRRATIONAL_DISCLAIMER, FIXED_NODES_NOTE],
        },
        samples,
    })
}

impl FamilyScanResult {
    pub fn to_json(&self) -> Value {
        let s = &self.summary;
        json!({
            "spec": serde_json::to_value(&self.spec).expect("spec serializes"),
            "samples": self.samples.iter().map(|r| serde_json::to_value(r).expect("record serializes")).collect::<Vec<_>>(),
            "summary": {
                "verified": s.verified,
                "degenerate": s.degenerate,
                "kernel_dimension": s.kernel_dimension,
                "expected_genus": s.expected_genus,
                "max_span": s.max_span,
                "fraction_at_max": format!("{:.4}", s.fraction_at_max),
                "fraction_full_span": format!("{:.4}", s.fraction_full_span),
                "below_max": s.below_max,
                "openness": s.openness.as_ref().map(|o| json!({
                    "base_index": o.base_index,
                    "base_span": o.base_span,
                    "perturbed_spans": o.perturbed_spans,
                    "holds": o.holds,
                })),
                "notes": s.notes,
            },
        })
    }

    pub fn write_csv(&self, w: impl std::io::Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.samples {
            out.serialize(r).map_err(|e| Error::Input(format!("csv: {e}")))?;
        }
        out.flush().map_err(|e| Error::Input(format!("csv: {e}")))?;
        Ok(())
    }
}

/// Genus of sample 0 before and after adding one more prescribed node.
pub fn genus_after_adding(spec: &FamilySpec, extra: ProjPoint) -> Result<(i64, i64)> {
    let before = geometric_genus(&curve_with_prescribed_nodes(spec, 0)?.curve)?.geometric_genus;
    let after = geometric_genus(&curve_with_prescribed_nodes(&spec.with_point(extra), 0)?.curve)?.geometric_genus;
    Ok((before, after))
}

/// `a^4 z^6 - 2a^2 z^4 p + z^2 p^2 + D z^2 q + E p q` with `p = x^2 + y^2`, `q = x^2 y^2`:
/// invariant under the symmetries of the square, with nodes at `(±a, 0)`, `(0, ±a)`,
/// `(±b, ±b)`, `[1:0:0]` and `[0:1:0]`. `D`, `E` make the diagonal restriction a square.
pub fn ten_nodal_sextic(a: &Scalar, b: &Scalar) -> Result<(MultiPoly, Vec<ProjPoint>)> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Input("node offsets must be nonzero".into()));
    }
    let a2 = a * a;
    let u = b * b;
    // diagonal x = y = s, w = s^2: a^4 - 4a^2 w + (4 + D) w^2 + 2E w^3 needs a double root at u
    let y = (int(2) * &a2 * &a2 / &u - int(4) * &a2) / (&u * &u);
    let x = (int(4) * &a2 - int(3) * &y * &u * &u) / (int(2) * &u);
    let d = x - int(4);
    let e = y / int(2);
    let v = ["x", "y", "z"];
    let p = MultiPoly::from_terms(&v, [([2, 0, 0], int(1)), ([0, 2, 0], int(1))]);
    let q = MultiPoly::from_terms(&v, [([2, 2, 0], int(1))]);
    let z = |k: u32| MultiPoly::from_terms(&v, [([0, 0, k], int(1))]);
    let f = &(&(&z(6).scale(&(&a2 * &a2)) + &(&z(4) * &p).scale(&(int(-2) * &a2))) + &(&z(2) * &(&p * &p)))
        + &(&(&z(2) * &q).scale(&d) + &(&p * &q).scale(&e));
    let mut pts = Vec::new();
    for (sx, sy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        pts.push([a * int(sx), a * int(sy), int(1)]);
    }
    for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        pts.push([b * int(sx), b * int(sy), int(1)]);
    }
    pts.push([int(1), int(0), int(0)]);
    pts.push([int(0), int(1), int(0)]);
    Ok((f, pts))
}

fn inverse3(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    let det: Scalar = (0..3).map(|j| &m[0][j] * c(0, j)).sum();
    (0..3).map(|i| (0..3).map(|j| c(j, i) / &det).collect()).collect()
}

/// A seeded member of the square-symmetric 10-nodal family, moved by a random
/// unimodular change of coordinates and verified node by node.
pub fn ten_nodal_sextic_sample(seed: u64) -> Result<PlaneCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_FACTOR {
        let a = ratio(rng.gen_range(1..=4), rng.gen_range(1..=3));
        let b = ratio(rng.gen_range(1..=5), rng.gen_range(1..=3));
        if a == b || a == &b * int(2) || &a * &a == int(2) * &b * &b {
            continue;
        }
        let (f, pts) = ten_nodal_sextic(&a, &b)?;
        let m = random_unimodular(&mut rng, 2);
        let inv = inverse3(&m);
        let g = f.linear_change(&m);
        let moved: Vec<ProjPoint> = pts.iter().map(|p| apply_matrix(&inv, p)).collect();
        let Some(c) = verified_curve(g, &moved) else { continue };
        let rational = rational_singular_points(&c.form)?;
        if rational.len() == 10 {
            return Ok(c);
        }
    }
    Err(Error::Input(format!("no verified 10-nodal sextic from seed {seed}")))
}

/// Distinct random rational points with small coordinates, in general position
/// for sample sizes used here (no three collinear is not enforced).
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::new();
    while out.len() < n {
        let p = [int(rng.gen_range(-6..=6)), int(rng.gen_range(-6..=6)), int(rng.gen_range(1..=3))];
        if !out.iter().any(|q| same_point(q, &p)) {
            out.push(p);
        }
    }
    out.sort_by_key(normalize_point);
    out
}
