//! Command pipelines behind the binary and their canonical JSON envelope.
//!
//! Every command returns a [`ReportEnvelope`]. Serialization sorts keys and
//! writes rationals as `"p/q"` strings, so equal inputs and seeds give
//! byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::adjoint::{adjoint_space, double_vanishing_space, residue_span_check, NodalScheme};
use crate::curvekit::{
    geometric_genus, point_label, surface_numeric_report, AdeType, PlaneCurve, ProjPoint, SingularityRecord,
    DEFAULT_DEGREE_CAP,
};
use crate::error::{Error, Result};
use crate::exact::scalar::{to_json, RatText};
use crate::exact::series::{DiffForm, TruncSeries};
use crate::exact::{int, parse_poly};
use crate::families::{family_scan, FamilySpec};
use crate::ivhs::{
    assemble_from, functional_json, lemma_trials, local_pairing_cusp, maximality_report, node_functionals,
    rank_bound, record_json, TENSION_NODE_SIGN,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEGREE_CAP_ENV: &str = "PLANE_IVHS_DEGREE_CAP";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredSingularity {
    pub point: [RatText; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_type: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    /// One entry per declared point: 0, 1 or 2 for the coordinate set to 1.
    /// Only validated; charts follow the largest-coordinate rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart_hints: Option<Vec<usize>>,
}

/// A curve file. With no declared singularities, the rational singular points are searched.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    pub polynomial: String,
    #[serde(default)]
    pub declared_singularities: Vec<DeclaredSingularity>,
    #[serde(default)]
    pub options: CurveOptions,
}

impl CurveInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve input: {e}")))
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.declared_singularities.iter().map(|d| d.point.clone().map(|r| r.0)).collect()
    }

    /// Parse, verify and classify. `env_cap` is the degree cap from the environment.
    pub fn build(&self, env_cap: Option<u32>) -> Result<PlaneCurve> {
        let cap = self.options.degree_cap.or(env_cap).unwrap_or(DEFAULT_DEGREE_CAP);
        let form = parse_poly(&self.polynomial, &["x", "y", "z"])?;
        let mut curve = PlaneCurve::with_degree_cap(form, cap)?;
        curve.truncation = self.options.truncation_order;
        if let Some(h) = &self.options.chart_hints {
            if h.len() != self.declared_singularities.len() || h.iter().any(|&c| c > 2) {
                return Err(Error::Input("chart_hints needs one index in 0..=2 per declared point".into()));
            }
        }
        if self.declared_singularities.is_empty() {
            curve.classify_rational()?;
        } else {
            for p in self.points() {
                if !crate::curvekit::verify_singular_point(&curve, &p) {
                    return Err(Error::Input(format!("declared point {} is not singular", point_label(&p))));
                }
            }
            curve.classify_points(&self.points())?;
        }
        for (d, rec) in self.declared_singularities.iter().zip(&curve.singularities) {
            if let Some(t) = &d.expected_type {
                let want: AdeType = t.parse()?;
                if want != rec.ade_type {
                    return Err(Error::Input(format!(
                        "{} was declared {want} but classifies as {}",
                        point_label(&rec.point),
                        rec.ade_type
                    )));
                }
            }
        }
        Ok(curve)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportEnvelope {
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub sections: BTreeMap<String, Value>,
    pub tension_flags: Vec<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ReportEnvelope {
    fn new(command: &str, input: &[u8], seed: u64) -> Self {
        ReportEnvelope {
            command: command.into(),
            input_digest: digest(input),
            seed,
            sections: BTreeMap::new(),
            tension_flags: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "plane-ivhs",
            "version": env!("CARGO_PKG_VERSION"),
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "sections": self.sections,
            "tension_flags": self.tension_flags,
        })
    }

    /// Canonical text: `serde_json` maps are ordered, so keys come out sorted.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut out = String::new();
                text_lines(&self.to_json(), "", &mut out);
                out
            }
        }
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        x => out.push_str(&format!("{prefix}: {}\n", scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn invariants_section(curve: &PlaneCurve) -> Result<Value> {
    let genus = geometric_genus(curve)?;
    let total_delta: u32 = curve.singularities.iter().map(|s| s.delta).sum();
    Ok(json!({
        "polynomial": curve.form.to_string(),
        "degree": curve.degree,
        "arithmetic_genus": genus.arithmetic_genus,
        "total_delta": total_delta,
        "geometric_genus": genus.geometric_genus,
        "node_count": genus.node_count,
        "cusp_count": curve.cusp_count(),
        "singularities": curve.singularities.iter().map(record_json).collect::<Vec<_>>(),
        "milnor_jung_holds": curve.singularities.iter().all(SingularityRecord::milnor_jung_holds),
        "conductor_sum_holds": curve.singularities.iter().all(SingularityRecord::conductor_sum_holds),
    }))
}

/// verify -> classify -> genus -> adjoint -> ivhs -> verdicts.
pub fn analyze(input: &CurveInput, raw: &[u8], seed: u64, env_cap: Option<u32>) -> Result<ReportEnvelope> {
    let curve = input.build(env_cap)?;
    let mut env = ReportEnvelope::new("analyze", raw, seed);
    env.sections.insert("invariants".into(), invariants_section(&curve)?);

    let g = geometric_genus(&curve)?.geometric_genus;
    let adj = adjoint_space(&curve)?;
    let dv = double_vanishing_space(&curve, &NodalScheme::of_curve(&curve));
    let span = residue_span_check(&curve)?;
    env.sections.insert(
        "adjoint".into(),
        json!({
            "form_degree": adj.form_degree,
            "ambient_dimension": adj.ambient_dimension(),
            "conditions": adj.condition_matrix.len(),
            "condition_labels": adj.row_labels,
            "rank": adj.rank,
            "dimension": adj.dimension(),
            "expected_dimension": g,
            "dimension_matches_genus": adj.dimension() as i64 == g,
            "basis": adj.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "double_vanishing_dimension": dv.dimension(),
            "double_vanishing_inside_adjoint": adj.contains(&dv),
            "residue_span": {
                "hypotheses_hold": span.hypotheses_hold,
                "span_dimension": span.span_dimension,
                "equivalence_holds": span.equivalence_holds,
                "witness": span.witness,
            },
        }),
    );

    let fs = node_functionals(&curve, &adj, 0)?;
    let other = node_functionals(&curve, &adj, 1)?;
    let op = assemble_from(&curve, &adj, fs);
    let cusp_pairings: Vec<Value> = curve
        .singularities
        .iter()
        .filter(|s| s.ade_type.is_cusp())
        .map(|s| {
            let principal = DiffForm::new(TruncSeries::monomial("t", -2, int(1)));
            let v = local_pairing_cusp(&principal, &principal).expect("admissible principal part");
            json!({"point": point_label(&s.point), "principal_part_pairing": to_json(&v)})
        })
        .collect();
    env.sections.insert(
        "ivhs".into(),
        json!({
            "functionals": op.functionals.iter().map(functional_json).collect::<Vec<_>>(),
            "functionals_other_branch": other.iter().map(functional_json).collect::<Vec<_>>(),
            "generator_sources": op.generator_sources,
            "image_dimension": op.image_dimension,
            "node_span_dimension": op.node_span_dimension,
            "rank_bound": rank_bound(&curve),
            "cusp_pairings": cusp_pairings,
        }),
    );

    let verdict = maximality_report(&curve, seed)?;
    env.tension_flags.extend(verdict.tension_flags.iter().cloned());
    env.sections.insert("maximality".into(), verdict.to_json());
    Ok(env)
}

pub fn verify_lemmas(seed: u64, trials: usize, truncation: i64) -> Result<ReportEnvelope> {
    let args = format!("verify-lemmas seed={seed} trials={trials} truncation={truncation}");
    let mut env = ReportEnvelope::new("verify-lemmas", args.as_bytes(), seed);
    let t = lemma_trials(seed, trials, truncation)?;
    let frac = |k: usize| format!("{k}/{trials}");
    env.sections.insert(
        "lemmas".into(),
        json!({
            "trials": trials,
            "truncation": truncation,
            "node_pairing": {
                "bilinear": frac(t.node_bilinear),
                "symmetric": frac(t.node_symmetric),
                "engine_matches_form_a": frac(t.node_matches_form_a),
                "engine_matches_form_b": frac(t.node_matches_form_b),
                "form_a": "Res_p(w1) Res_q(w2) + Res_q(w1) Res_p(w2)",
                "form_b": "Res_p(w1) Res_p(w2) + Res_q(w1) Res_q(w2)",
            },
            "cusp_pairing": {
                "zero": frac(t.cusp_zero),
                "zero_on_principal_parts": frac(t.cusp_zero_principal_only),
                "top_pole_invariant": frac(t.top_pole_invariant),
                "universal_zero_holds": t.cusp_zero == trials,
            },
            "witnesses": t.witnesses,
        }),
    );
    if t.node_matches_form_a != trials || t.node_matches_form_b != trials {
        env.tension_flags.push(TENSION_NODE_SIGN.to_string());
    }
    if t.cusp_zero != trials {
        env.tension_flags.push(format!(
            "cusp-pairing-nonzero: Res((t^-1 d/dt -| w1) w2) vanished in {}/{trials} admissible trials",
            t.cusp_zero
        ));
    }
    if t.top_pole_invariant != trials {
        env.tension_flags.push(format!(
            "top-pole-visible: shifting the t^-2 coefficient left the cusp pairing unchanged in {}/{trials} trials",
            t.top_pole_invariant
        ));
    }
    Ok(env)
}

pub fn family_scan_report(spec: &FamilySpec, raw: &[u8]) -> Result<(ReportEnvelope, crate::families::FamilyScanResult)> {
    let res = family_scan(spec)?;
    let mut env = ReportEnvelope::new("family-scan", raw, spec.seed);
    env.sections.insert("family".into(), res.to_json());
    Ok((env, res))
}

/// `"A_3, 5*A_1"` or `"A_3,A_1,A_1"`.
pub fn parse_singularity_list(text: &str) -> Result<Vec<SingularityRecord>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, t) = match item.split_once(['*', 'x']) {
            Some((k, t)) if k.trim().chars().all(|c| c.is_ascii_digit()) => {
                (k.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?, t.trim())
            }
            _ => (1, item),
        };
        let ty: AdeType = t.parse()?;
        out.extend((0..k).map(|_| SingularityRecord::from_table(ty, crate::curvekit::point(0, 0, 1))));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInput {
    pub surface_degree: i64,
    pub multiple: i64,
    #[serde(default)]
    pub singularities: Vec<String>,
}

pub fn surface_report(input: &SurfaceInput) -> Result<ReportEnvelope> {
    let sings = parse_singularity_list(&input.singularities.join(","))?;
    let raw = serde_json::to_vec(input).expect("surface input serializes");
    let r = surface_numeric_report(input.surface_degree, input.multiple, &sings)?;
    let mut env = ReportEnvelope::new("surface-report", &raw, 0);
    env.sections.insert(
        "surface".into(),
        json!({
            "surface_degree": r.surface_degree,
            "multiple": r.multiple,
            "arithmetic_genus": r.arithmetic_genus,
            "total_delta": r.total_delta,
            "geometric_genus": r.geometric_genus,
            "node_count": r.node_count,
            "nodes_at_least_genus": r.node_criterion,
            "beyond_a2": r.beyond_a2,
            "rank_gap_inequality": r.rank_gap_inequality,
            "singularities": input.singularities,
        }),
    );
    Ok(env)
}
