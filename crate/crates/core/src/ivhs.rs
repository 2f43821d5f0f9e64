//! Residue functionals, the local pairing engine, and the assembled operator
//! `Phi = sum_i r_i (x) r_i` with its rank bounds and claim-by-claim verdicts.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::adjoint::{adjoint_space, double_vanishing_space, LinearSystem, NodalScheme};
use crate::branches::{branch_parametrizations, BranchParam};
use crate::curvekit::{geometric_genus, local_chart, point_label, PlaneCurve, SingularityRecord};
use crate::error::{Error, Result};
use crate::exact::linalg::{determinant, rank};
use crate::exact::scalar::{int, random_small, to_json, Scalar};
use crate::exact::series::{series_residue, substitute_series, DiffForm, TruncSeries};

/// How the point value of `A * Omega / F` along a branch was normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `A x'(t) / F_y(gamma(t))`; `leading` is the first coefficient of the denominator.
    DxOverFy { leading: Scalar },
    /// `-A y'(t) / F_x(gamma(t))`, used when `F_y` vanishes along the branch.
    DyOverFx { leading: Scalar },
    /// Zero-dimensional adjoint space: nothing to evaluate.
    Empty,
}

/// A linear functional on the adjoint space, in the dual of its basis.
#[derive(Clone, Debug)]
pub struct DualVector {
    pub coordinates: Vec<Scalar>,
    pub node: String,
    pub branch: usize,
    pub normalization: Normalization,
}

impl DualVector {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }
}

fn point_value(
    a_local: &crate::exact::poly::MultiPoly,
    fx: &crate::exact::poly::MultiPoly,
    fy: &crate::exact::poly::MultiPoly,
    b: &BranchParam,
    use_fx: bool,
) -> Result<(Scalar, Scalar)> {
    let a = substitute_series(a_local, &b.x_series, &b.y_series)?;
    let (num, den) = if use_fx {
        (a.mul(&b.y_series.derivative())?.neg(), substitute_series(fx, &b.x_series, &b.y_series)?)
    } else {
        (a.mul(&b.x_series.derivative())?, substitute_series(fy, &b.x_series, &b.y_series)?)
    };
    let v = den
        .valuation()
        .ok_or_else(|| Error::Precision("denominator vanishes through the branch window".into()))?;
    let leading = den.coeff(v).unwrap();
    let cap = num.truncation_order().unwrap_or(v + 2) + v + 2;
    let q = num.div(&den, cap)?;
    let value = q
        .coeff(0)
        .ok_or_else(|| Error::Precision("point value lies outside the series window".into()))?;
    Ok((value, leading))
}

/// Value of `A * Omega / F` at the chosen branch point of a node, for every
/// adjoint basis form `A`: the first-order coefficient of `A o gamma` over the
/// leading coefficient of `F_y o gamma` (times `x'(0)`).
pub fn residue_functional(
    curve: &PlaneCurve,
    adjoint: &LinearSystem,
    node: &SingularityRecord,
    branch_choice: usize,
) -> Result<DualVector> {
    if !node.ade_type.is_node() {
        return Err(Error::Input(format!("{} is not a node", node.ade_type)));
    }
    if branch_choice > 1 {
        return Err(Error::Input(format!("a node has branches 0 and 1, not {branch_choice}")));
    }
    let label = point_label(&node.point);
    if adjoint.dimension() == 0 {
        return Ok(DualVector { coordinates: Vec::new(), node: label, branch: branch_choice, normalization: Normalization::Empty });
    }
    let bs = branch_parametrizations(curve, &node.point, curve.branch_order(node))?;
    let b = &bs[branch_choice];
    let lc = local_chart(&curve.form, &node.point);
    let fx = lc.local.derivative(0);
    let fy = lc.local.derivative(1);
    let use_fx = substitute_series(&fy, &b.x_series, &b.y_series)?.valuation().is_none();
    let mut coords = Vec::with_capacity(adjoint.dimension());
    let mut lead = Scalar::one();
    for a in &adjoint.basis {
        let a_local = a.dehomogenize(lc.chart).translate(&lc.center);
        let (v, l) = point_value(&a_local, &fx, &fy, b, use_fx)?;
        coords.push(v);
        lead = l;
    }
    let normalization = if use_fx {
        Normalization::DyOverFx { leading: lead }
    } else {
        Normalization::DxOverFy { leading: lead }
    };
    Ok(DualVector { coordinates: coords, node: label, branch: branch_choice, normalization })
}

pub fn node_functionals(curve: &PlaneCurve, adjoint: &LinearSystem, branch_choice: usize) -> Result<Vec<DualVector>> {
    curve
        .nodes()
        .map(|n| residue_functional(curve, adjoint, n, branch_choice))
        .collect()
}

pub fn span_dimension(fs: &[DualVector], g: usize) -> usize {
    let rows: Vec<Vec<Scalar>> = fs.iter().map(|f| f.coordinates.clone()).collect();
    rank(&rows, g)
}

/// Symmetric bilinear form on the adjoint space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    pub entries: Vec<Vec<Scalar>>,
}

impl SymForm {
    pub fn zero(g: usize) -> Self {
        SymForm { entries: vec![vec![Scalar::zero(); g]; g] }
    }

    pub fn outer(r: &[Scalar]) -> Self {
        SymForm { entries: r.iter().map(|a| r.iter().map(|b| a * b).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Coordinates in the `g(g+1)/2`-dimensional space of symmetric forms.
    pub fn upper_triangle(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| self.entries[i][j].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries, self.dim())
    }

    pub fn combine(forms: &[SymForm], weights: &[Scalar], g: usize) -> SymForm {
        let mut out = SymForm::zero(g);
        for (f, w) in forms.iter().zip(weights) {
            for i in 0..g {
                for j in 0..g {
                    out.entries[i][j] += w * &f.entries[i][j];
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IvhsOperator {
    pub genus: usize,
    pub generators: Vec<SymForm>,
    /// `"A_1 at [0:0:1]"` and the like, one per generator.
    pub generator_sources: Vec<String>,
    pub functionals: Vec<DualVector>,
    pub image_dimension: usize,
    pub node_span_dimension: usize,
}

pub fn assemble_from(curve: &PlaneCurve, adjoint: &LinearSystem, functionals: Vec<DualVector>) -> IvhsOperator {
    let g = adjoint.dimension();
    let mut generators = Vec::new();
    let mut sources = Vec::new();
    for f in &functionals {
        generators.push(SymForm::outer(&f.coordinates));
        sources.push(format!("A_1 at {}", f.node));
    }
    for s in curve.singularities.iter().filter(|s| s.ade_type.is_cusp()) {
        generators.push(SymForm::zero(g));
        sources.push(format!("A_2 at {}", point_label(&s.point)));
    }
    let stacked: Vec<Vec<Scalar>> = generators.iter().map(|f| f.upper_triangle()).collect();
    let image_dimension = rank(&stacked, g * (g + 1) / 2);
    IvhsOperator {
        genus: g,
        node_span_dimension: span_dimension(&functionals, g),
        generators,
        generator_sources: sources,
        functionals,
        image_dimension,
    }
}

pub fn assemble_operator(curve: &PlaneCurve) -> Result<IvhsOperator> {
    let adj = adjoint_space(curve)?;
    let fs = node_functionals(curve, &adj, 0)?;
    Ok(assemble_from(curve, &adj, fs))
}

/// Node pairing value from the series engine next to both closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePairing {
    pub engine: Scalar,
    pub residues_1: (Scalar, Scalar),
    pub residues_2: (Scalar, Scalar),
    /// `Res_p(w1) Res_q(w2) + Res_q(w1) Res_p(w2)`.
    pub form_a: Scalar,
    /// `Res_p(w1) Res_p(w2) + Res_q(w1) Res_q(w2)`.
    pub form_b: Scalar,
    pub engine_matches_a: bool,
    pub engine_matches_b: bool,
}

fn check_node_input(w: &(DiffForm, DiffForm)) -> Result<(Scalar, Scalar)> {
    for g in [&w.0, &w.1] {
        if g.coeff_series.valuation().is_some_and(|v| v < -1) {
            return Err(Error::Input("node differentials may have at most simple poles".into()));
        }
    }
    let rp = series_residue(&w.0)?;
    let rq = series_residue(&w.1)?;
    if !(&rp + &rq).is_zero() {
        return Err(Error::Input(format!(
            "residues {rp} and {rq} at the two branch points do not sum to zero"
        )));
    }
    Ok((rp, rq))
}

/// `sum over both branch points of Res((d/dt -| w1) * w2)`.
pub fn local_pairing_node(w1: &(DiffForm, DiffForm), w2: &(DiffForm, DiffForm)) -> Result<NodePairing> {
    let (p1, q1) = check_node_input(w1)?;
    let (p2, q2) = check_node_input(w2)?;
    let at_p = series_residue(&DiffForm::new(w1.0.coeff_series.mul(&w2.0.coeff_series)?))?;
    let at_q = series_residue(&DiffForm::new(w1.1.coeff_series.mul(&w2.1.coeff_series)?))?;
    let engine = at_p + at_q;
    let form_a = &p1 * &q2 + &q1 * &p2;
    let form_b = &p1 * &p2 + &q1 * &q2;
    Ok(NodePairing {
        engine_matches_a: engine == form_a,
        engine_matches_b: engine == form_b,
        engine,
        residues_1: (p1, q1),
        residues_2: (p2, q2),
        form_a,
        form_b,
    })
}

fn check_cusp_input(w: &DiffForm) -> Result<()> {
    let s = &w.coeff_series;
    if s.valuation().is_some_and(|v| v < -2) {
        return Err(Error::Input("cusp differentials may have poles of order at most 2".into()));
    }
    match s.coeff(-1) {
        Some(c) if c.is_zero() => Ok(()),
        Some(c) => Err(Error::Input(format!(
            "violates Rosenlicht admissibility: coefficient {c} of t^-1 dt must vanish"
        ))),
        None => Err(Error::Precision("t^-1 coefficient outside the window".into())),
    }
}

/// `Res((t^-1 d/dt -| w1) * w2)`.
pub fn local_pairing_cusp(w1: &DiffForm, w2: &DiffForm) -> Result<Scalar> {
    check_cusp_input(w1)?;
    check_cusp_input(w2)?;
    let prod = w1.coeff_series.mul(&w2.coeff_series)?.shift(-1);
    series_residue(&DiffForm::new(prod))
}

/// `m(p) - 1 = delta(p) - 1`.
pub fn jet_bound(s: &SingularityRecord) -> u32 {
    s.delta - 1
}

/// One residue direction per node, none for any other ADE point.
pub fn residue_dimension(s: &SingularityRecord) -> u32 {
    u32::from(s.ade_type.is_node())
}

pub fn rank_bound(curve: &PlaneCurve) -> u32 {
    curve.singularities.iter().map(|s| residue_dimension(s) + jet_bound(s)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSheafDims {
    pub degree: i64,
    pub h0: i64,
    /// `degree > 2g - 2`, where Riemann–Roch gives `h0` exactly.
    pub nonspecial: bool,
}

/// `deg N = 3d + 2g - 2`, `h0 = deg - g + 1` when nonspecial.
pub fn normal_sheaf_dims(d: i64, g: i64) -> Result<NormalSheafDims> {
    if d < 3 || g < 0 {
        return Err(Error::Input(format!("need d >= 3 and g >= 0, got d = {d}, g = {g}")));
    }
    let degree = 3 * d + 2 * g - 2;
    Ok(NormalSheafDims { degree, h0: degree - g + 1, nonspecial: degree > 2 * g - 2 })
}

#[derive(Clone, Debug)]
pub struct ClaimRecord {
    pub id: &'static str,
    pub statement: &'static str,
    pub computed: Value,
    pub prediction: Value,
    /// `None` where the claim does not apply to this input.
    pub agree: Option<bool>,
    pub witness: Option<String>,
    pub seed: u64,
}

impl ClaimRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "statement": self.statement,
            "computed": self.computed,
            "prediction": self.prediction,
            "agree": self.agree,
            "witness": self.witness,
            "seed": self.seed,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub claims: Vec<ClaimRecord>,
    pub tension_flags: Vec<String>,
    pub seed: u64,
}

impl VerdictReport {
    pub fn all_consistent(&self) -> bool {
        self.claims.iter().all(|c| c.agree != Some(false))
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_consistent": self.all_consistent(),
            "claims": self.claims.iter().map(ClaimRecord::to_json).collect::<Vec<_>>(),
            "seed": self.seed,
            "tension_flags": self.tension_flags,
        })
    }
}

/// Hypotheses of the residue-span statement: degree at least 4, only nodes,
/// and at least as many nodes as the genus.
pub fn residue_span_hypotheses(curve: &PlaneCurve, genus: i64) -> bool {
    curve.degree >= 4
        && curve.singularities.iter().all(|s| s.ade_type.is_node())
        && curve.node_count() as i64 >= genus
}

pub const TENSION_INJECTIVITY: &str = "injectivity-domain: cusp directions map to zero, so the modeled operator is not injective on the full deformation span";
pub const TENSION_COR_IFF: &str = "cor-iff-clause: image dimension equals the node count although the node functionals are linearly dependent";
pub const TENSION_NODE_SIGN: &str = "node-pairing-sign-pattern: lemma statement and proof step give different closed forms";

/// Seeded search for an invertible form in `span{r_i (x) r_i}`.
pub struct InvertibleCertificate {
    pub found: bool,
    pub attempts: usize,
    pub weights: Vec<Scalar>,
    pub determinant: Scalar,
}

pub fn invertible_combination(op: &IvhsOperator, seed: u64, attempts: usize) -> InvertibleCertificate {
    let g = op.genus;
    let node_gens: Vec<SymForm> = op.functionals.iter().map(|f| SymForm::outer(&f.coordinates)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = InvertibleCertificate { found: false, attempts: 0, weights: Vec::new(), determinant: Scalar::zero() };
    for k in 0..attempts {
        let weights: Vec<Scalar> = node_gens.iter().map(|_| random_small(&mut rng, 9, 5)).collect();
        let form = SymForm::combine(&node_gens, &weights, g);
        let det = determinant(&form.entries);
        last = InvertibleCertificate { found: !det.is_zero(), attempts: k + 1, weights, determinant: det };
        if last.found {
            break;
        }
    }
    last
}

fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(to_json).collect())
}

pub fn maximality_report(curve: &PlaneCurve, seed: u64) -> Result<VerdictReport> {
    let genus = geometric_genus(curve)?;
    let g = genus.geometric_genus;
    let nodes = genus.node_count as i64;
    let adj = adjoint_space(curve)?;
    let op = assemble_from(curve, &adj, node_functionals(curve, &adj, 0)?);
    let dv = double_vanishing_space(curve, &NodalScheme::of_curve(curve));
    let applies = residue_span_hypotheses(curve, g);
    let span = op.node_span_dimension as i64;
    let image = op.image_dimension as i64;
    let bound = rank_bound(curve) as i64;
    let target_sym = g * (g + 1) / 2;
    let mut claims = Vec::new();
    let mut flags = Vec::new();

    claims.push(ClaimRecord {
        id: "node-criterion",
        statement: "maximal variation is predicted when the number of nodes is at least the genus",
        computed: json!({
            "nodes": nodes,
            "genus": g,
            "nodes_at_least_genus": nodes >= g,
            "nodal_only": curve.singularities.iter().all(|s| s.ade_type.is_node()),
            "applies": applies,
        }),
        prediction: json!("nodes >= genus on a nodal curve of degree >= 4"),
        agree: None,
        witness: None,
        seed,
    });

    claims.push(ClaimRecord {
        id: "residue-span",
        statement: "the node residue functionals span the dual of the adjoint space",
        computed: json!({"span_dimension": span, "adjoint_dimension": adj.dimension(), "genus": g}),
        prediction: json!({"span_dimension": g}),
        agree: applies.then_some(span == g),
        witness: (applies && span != g).then(|| format!("span {span} < genus {g}")),
        seed,
    });

    let equivalence = applies.then(|| (span == g) == (dv.dimension() == 0));
    claims.push(ClaimRecord {
        id: "double-vanishing",
        statement: "full span is equivalent to the absence of forms vanishing doubly at all nodes",
        computed: json!({
            "double_vanishing_dimension": dv.dimension(),
            "contained_in_adjoint": adj.contains(&dv),
        }),
        prediction: json!({"double_vanishing_dimension_when_span_full": 0}),
        agree: equivalence,
        witness: (equivalence == Some(false)).then(|| format!("span {span}, double-vanishing dimension {}", dv.dimension())),
        seed,
    });

    let within = image <= bound && image <= nodes;
    claims.push(ClaimRecord {
        id: "rank-bound",
        statement: "image dimension is at most the node count and at most the structural rank bound",
        computed: json!({"image_dimension": image, "rank_bound": bound, "nodes": nodes}),
        prediction: json!("image_dimension <= min(nodes, rank_bound)"),
        agree: Some(within),
        witness: (!within).then(|| format!("image {image}, bound {bound}, nodes {nodes}")),
        seed,
    });

    let normal = normal_sheaf_dims(curve.degree as i64, g).ok();
    claims.push(ClaimRecord {
        id: "target-dimension",
        statement: "the operator is not surjective in general",
        computed: json!({
            "image_dimension": image,
            "target_dimension_sym": target_sym,
            "target_dimension_full": g * g,
            "surjective": image == target_sym,
            "non_maximal_by_dimension_count": g > 0 && bound < target_sym,
            "normal_sheaf": normal.map(|n| json!({"degree": n.degree, "h0": n.h0, "nonspecial": n.nonspecial})),
        }),
        prediction: json!("image_dimension < target dimension for general curves"),
        agree: None,
        witness: None,
        seed,
    });

    let cert = invertible_combination(&op, seed, 8);
    let contains_iso = g == 0 || cert.found;
    claims.push(ClaimRecord {
        id: "linear-algebra",
        statement: "the span of the node generators contains an invertible form",
        computed: json!({
            "found": contains_iso,
            "attempts": cert.attempts,
            "weights": scalars_json(&cert.weights),
            "determinant": to_json(&cert.determinant),
            "exact_obstruction": span < g,
        }),
        prediction: json!({"found": true}),
        agree: applies.then_some(contains_iso),
        witness: (applies && !contains_iso).then(|| format!("no invertible combination in {} attempts", cert.attempts)),
        seed,
    });

    let cusps = curve.cusp_count();
    let generator_count = op.generators.len();
    let injective = image as usize == generator_count;
    claims.push(ClaimRecord {
        id: "cusp-kernel",
        statement: "the operator is injective on the deformation directions",
        computed: json!({
            "cusp_zero_generators": cusps,
            "generators": generator_count,
            "image_dimension": image,
            "injective_on_modeled_domain": injective,
        }),
        prediction: json!({"injective": true}),
        agree: None,
        witness: (cusps > 0).then(|| format!("{cusps} cusp direction(s) map to the zero form")),
        seed,
    });
    if cusps > 0 {
        flags.push(TENSION_INJECTIVITY.to_string());
    }

    let independent = span == nodes;
    let full_image = image == nodes;
    let iff_ok = independent == full_image;
    claims.push(ClaimRecord {
        id: "cor-iff",
        statement: "image dimension equals the node count iff the node functionals are linearly independent",
        computed: json!({"image_dimension": image, "nodes": nodes, "functionals_independent": independent}),
        prediction: json!("image_dimension == nodes <=> independent"),
        agree: None,
        witness: (!iff_ok).then(|| format!("image {image} = nodes {nodes} with span only {span}")),
        seed,
    });
    if !iff_ok {
        flags.push(TENSION_COR_IFF.to_string());
    }

    Ok(VerdictReport { claims, tension_flags: flags, seed })
}

/// Outcome counts of the randomized local lemma checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub trials: usize,
    pub truncation: i64,
    pub node_bilinear: usize,
    pub node_symmetric: usize,
    pub node_matches_form_a: usize,
    pub node_matches_form_b: usize,
    pub cusp_zero: usize,
    pub cusp_zero_principal_only: usize,
    pub top_pole_invariant: usize,
    pub witnesses: Vec<String>,
}

fn random_series(rng: &mut ChaCha8Rng, min: i64, lead: Option<Scalar>, skip: &[i64], order: i64) -> TruncSeries {
    let coeffs = (min..order)
        .map(|k| {
            if k == min {
                if let Some(l) = &lead {
                    return l.clone();
                }
            }
            if skip.contains(&k) {
                Scalar::zero()
            } else {
                random_small(rng, 9, 5)
            }
        })
        .collect();
    TruncSeries::new("t", min, coeffs, Some(order)).expect("window")
}

fn random_node_form(rng: &mut ChaCha8Rng, order: i64) -> (DiffForm, DiffForm) {
    let a = random_small(rng, 9, 5);
    let p = random_series(rng, -1, Some(a.clone()), &[], order);
    let q = random_series(rng, -1, Some(-a), &[], order);
    (DiffForm::new(p), DiffForm::new(q))
}

fn random_cusp_form(rng: &mut ChaCha8Rng, order: i64) -> DiffForm {
    DiffForm::new(random_series(rng, -2, None, &[-1], order))
}

fn lin_node(l: &Scalar, a: &(DiffForm, DiffForm), m: &Scalar, b: &(DiffForm, DiffForm)) -> (DiffForm, DiffForm) {
    let comb = |x: &DiffForm, y: &DiffForm| {
        DiffForm::new(x.coeff_series.scale(l).add(&y.coeff_series.scale(m)).expect("same parameter"))
    };
    (comb(&a.0, &b.0), comb(&a.1, &b.1))
}

/// Randomized admissible inputs for the node and cusp engines; all exact.
pub fn lemma_trials(seed: u64, trials: usize, truncation: i64) -> Result<LemmaTally> {
    if trials == 0 {
        return Err(Error::Input("need at least one trial".into()));
    }
    if truncation < 3 {
        return Err(Error::Precision(format!("truncation {truncation} leaves no t^0 coefficient in cusp products")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = LemmaTally { trials, truncation, ..Default::default() };
    for trial in 0..trials {
        let w1 = random_node_form(&mut rng, truncation);
        let w1b = random_node_form(&mut rng, truncation);
        let w2 = random_node_form(&mut rng, truncation);
        let (l, m) = (random_small(&mut rng, 9, 5), random_small(&mut rng, 9, 5));
        let p12 = local_pairing_node(&w1, &w2)?;
        let p21 = local_pairing_node(&w2, &w1)?;
        let pb = local_pairing_node(&w1b, &w2)?;
        let pc = local_pairing_node(&lin_node(&l, &w1, &m, &w1b), &w2)?;
        if pc.engine == &l * &p12.engine + &m * &pb.engine {
            t.node_bilinear += 1;
        }
        if p12.engine == p21.engine {
            t.node_symmetric += 1;
        }
        t.node_matches_form_a += usize::from(p12.engine_matches_a);
        t.node_matches_form_b += usize::from(p12.engine_matches_b);

        let c1 = random_cusp_form(&mut rng, truncation);
        let c2 = random_cusp_form(&mut rng, truncation);
        let v = local_pairing_cusp(&c1, &c2)?;
        if v.is_zero() {
            t.cusp_zero += 1;
        } else if t.witnesses.len() < 5 {
            t.witnesses.push(format!("trial {trial}: cusp pairing of ({}) dt and ({}) dt is {v}", c1.coeff_series, c2.coeff_series));
        }
        let principal = |w: &DiffForm| {
            DiffForm::new(TruncSeries::monomial("t", -2, w.coeff_series.coeff(-2).unwrap_or_default()))
        };
        if local_pairing_cusp(&principal(&c1), &principal(&c2))?.is_zero() {
            t.cusp_zero_principal_only += 1;
        }
        let eps = random_small(&mut rng, 9, 5);
        let bump = |w: &DiffForm| {
            DiffForm::new(w.coeff_series.add(&TruncSeries::monomial("t", -2, eps.clone())).expect("same parameter"))
        };
        let moved_1 = local_pairing_cusp(&bump(&c1), &c2)?;
        let moved_2 = local_pairing_cusp(&c1, &bump(&c2))?;
        if moved_1 == v && moved_2 == v {
            t.top_pole_invariant += 1;
        } else if t.witnesses.len() < 10 {
            t.witnesses.push(format!("trial {trial}: shifting the t^-2 coefficient by {eps} moves the cusp pairing from {v} to {moved_1} / {moved_2}"));
        }
    }
    Ok(t)
}

pub fn default_truncation() -> i64 {
    // deepest conductor among nodes and cusps is 2
    4 * 2 + 4
}

pub fn record_json(s: &SingularityRecord) -> Value {
    json!({
        "point": point_label(&s.point),
        "type": s.ade_type.to_string(),
        "milnor": s.milnor,
        "delta": s.delta,
        "branches": s.branch_count,
        "conductor_exponents": s.conductor_exponents,
        "conductor_source": match s.conductor_source {
            crate::curvekit::ConductorSource::Branches => "branches",
            crate::curvekit::ConductorSource::Table => "table",
        },
        "jet_bound": jet_bound(s),
        "residue_dimension": residue_dimension(s),
    })
}

pub fn functional_json(f: &DualVector) -> Value {
    let (kind, lead) = match &f.normalization {
        Normalization::DxOverFy { leading } => ("A*x'/F_y", Some(to_json(leading))),
        Normalization::DyOverFx { leading } => ("-A*y'/F_x", Some(to_json(leading))),
        Normalization::Empty => ("none", None),
    };
    json!({
        "node": f.node,
        "branch": f.branch,
        "coordinates": scalars_json(&f.coordinates),
        "normalization": kind,
        "denominator_leading_coefficient": lead,
    })
}

pub fn int_json(n: i64) -> Value {
    to_json(&int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::point;

    fn s(min: i64, c: &[i64]) -> DiffForm {
        DiffForm::new(TruncSeries::from_ints("t", min, c, None).unwrap())
    }

    #[test]
    fn cusp_examples() {
        assert_eq!(local_pairing_cusp(&s(-2, &[1, 0, 1]), &s(-2, &[1, 0, 0, 1])).unwrap(), int(0));
        assert_eq!(local_pairing_cusp(&s(-2, &[1]), &s(-2, &[1])).unwrap(), int(0));
        assert!(matches!(local_pairing_cusp(&s(-2, &[1, 5]), &s(-2, &[1])), Err(Error::Input(_))));
    }

    #[test]
    fn node_closed_forms() {
        let w1 = (s(-1, &[1]), s(-1, &[-1]));
        let w2 = (s(-1, &[2]), s(-1, &[-2]));
        let p = local_pairing_node(&w1, &w2).unwrap();
        assert_eq!(p.form_a, int(-4));
        assert_eq!(p.form_b, int(4));
        let zero = (s(0, &[3, 1]), s(0, &[1]));
        let pz = local_pairing_node(&zero, &w2).unwrap();
        assert_eq!((pz.form_a, pz.form_b), (int(0), int(0)));
        assert!(local_pairing_node(&(s(-1, &[1]), s(-1, &[1])), &w2).is_err());
    }

    #[test]
    fn bounds_and_tables() {
        let rec = |t: &str| SingularityRecord::from_table(t.parse().unwrap(), point(0, 0, 1));
        assert_eq!(jet_bound(&rec("A_1")), 0);
        assert_eq!(jet_bound(&rec("A_3")), 1);
        assert_eq!(jet_bound(&rec("E_8")), 3);
        assert_eq!(residue_dimension(&rec("A_1")), 1);
        assert_eq!(residue_dimension(&rec("A_2")), 0);
        assert_eq!(residue_dimension(&rec("D_4")), 0);
        let n = normal_sheaf_dims(4, 2).unwrap();
        assert_eq!((n.degree, n.h0), (14, 13));
        assert_eq!(normal_sheaf_dims(3, 0).unwrap().h0, 8);
        assert_eq!(normal_sheaf_dims(4, 3).unwrap().h0, 14);
    }

    #[test]
    fn gram_rank_witness() {
        let fs: Vec<DualVector> = [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|c| DualVector {
                coordinates: c.iter().map(|&x| int(x)).collect(),
                node: String::new(),
                branch: 0,
                normalization: Normalization::Empty,
            })
            .collect();
        let stacked: Vec<Vec<Scalar>> = fs.iter().map(|f| SymForm::outer(&f.coordinates).upper_triangle()).collect();
        assert_eq!(rank(&stacked, 3), 3);
        assert_eq!(span_dimension(&fs, 2), 2);
    }

    #[test]
    fn one_node_quartic_functional_is_nonzero() {
        let c = PlaneCurve::analyzed("x*y*z^2 + x^4 + y^4 + x^3*z", &[point(0, 0, 1)]).unwrap();
        let adj = adjoint_space(&c).unwrap();
        let r = residue_functional(&c, &adj, &c.singularities[0], 0).unwrap();
        assert!(!r.is_zero());
        let op = assemble_operator(&c).unwrap();
        assert_eq!(op.image_dimension, 1);
    }
}
