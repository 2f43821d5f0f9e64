//! Adjoint forms of degree `d - 3` and the double-vanishing system at the nodes.

use num_traits::Zero;

use crate::branches::branch_parametrizations;
use crate::curvekit::{chart_index, point_label, PlaneCurve, ProjPoint, SingularityRecord};
use crate::error::{Error, Result};
use crate::exact::linalg::{mat_vec, nullspace, rank};
use crate::exact::poly::{Monomial, MultiPoly};
use crate::exact::scalar::Scalar;
use crate::exact::series::substitute_series;

/// Conditions on the coefficients of degree-`k` forms and their common kernel.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub form_degree: i64,
    pub monomials: Vec<Monomial>,
    pub condition_matrix: Vec<Vec<Scalar>>,
    /// Provenance of each row.
    pub row_labels: Vec<String>,
    pub basis_vectors: Vec<Vec<Scalar>>,
    pub basis: Vec<MultiPoly>,
    pub rank: usize,
}

impl LinearSystem {
    fn solve(form_degree: i64, monomials: Vec<Monomial>, rows: Vec<Vec<Scalar>>, labels: Vec<String>) -> Self {
        let n = monomials.len();
        let basis_vectors = nullspace(&rows, n);
        let basis = basis_vectors.iter().map(|v| form_from(&monomials, v)).collect();
        LinearSystem {
            form_degree,
            rank: rank(&rows, n),
            monomials,
            condition_matrix: rows,
            row_labels: labels,
            basis_vectors,
            basis,
        }
    }

    pub fn ambient_dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Every basis vector of `other` satisfies every condition of `self`.
    pub fn contains(&self, other: &LinearSystem) -> bool {
        self.monomials == other.monomials
            && other
                .basis_vectors
                .iter()
                .all(|v| mat_vec(&self.condition_matrix, v).iter().all(|s| s.is_zero()))
    }

    /// Coordinates of a form of the right degree in the monomial basis.
    pub fn coordinates(&self, form: &MultiPoly) -> Vec<Scalar> {
        self.monomials.iter().map(|m| form.coeff(m)).collect()
    }
}

pub fn form_monomials(k: i64) -> Vec<Monomial> {
    if k < 0 {
        Vec::new()
    } else {
        MultiPoly::monomials_of_degree(3, k as u32)
    }
}

pub fn form_from(monomials: &[Monomial], v: &[Scalar]) -> MultiPoly {
    MultiPoly::from_terms(&["x", "y", "z"], monomials.iter().copied().zip(v.iter().cloned()))
}

fn mono_poly(m: &Monomial) -> MultiPoly {
    MultiPoly::from_terms(&["x", "y", "z"], [(*m, Scalar::from_integer(1.into()))])
}

/// Whether `ord(A o gamma) >= c_i` on every branch reduces to `A(P) = 0`:
/// true when no conductor exponent exceeds the branch multiplicity.
fn point_condition_suffices(rec: &SingularityRecord) -> bool {
    rec.ade_type.is_node() || rec.ade_type.is_cusp()
}

fn conductor_rows(
    curve: &PlaneCurve,
    rec: &SingularityRecord,
    monomials: &[Monomial],
    rows: &mut Vec<Vec<Scalar>>,
    labels: &mut Vec<String>,
) -> Result<()> {
    let here = point_label(&rec.point);
    if point_condition_suffices(rec) {
        rows.push(monomials.iter().map(|m| mono_poly(m).eval(&rec.point)).collect());
        labels.push(format!("{} at {here}: vanish at the point", rec.ade_type));
        return Ok(());
    }
    let order = curve.branch_order(rec);
    let branches = branch_parametrizations(curve, &rec.point, order)?;
    let chart = chart_index(&rec.point);
    let locals: Vec<MultiPoly> = monomials
        .iter()
        .map(|m| mono_poly(m).dehomogenize(chart).translate(&branches[0].center))
        .collect();
    for (bi, (b, &c)) in branches.iter().zip(&rec.conductor_exponents).enumerate() {
        let along: Vec<_> = locals
            .iter()
            .map(|l| substitute_series(l, &b.x_series, &b.y_series))
            .collect::<Result<_>>()?;
        for j in 0..c as i64 {
            let row = along
                .iter()
                .map(|s| {
                    s.coeff(j).ok_or_else(|| {
                        Error::Precision(format!("branch series at {here} too short for t^{j}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            labels.push(format!("{} at {here}: branch {bi}, coefficient of t^{j}", rec.ade_type));
        }
    }
    Ok(())
}

/// Forms of degree `d - 3` with `ord_t(A o gamma_i) >= c_i` on every branch.
pub fn adjoint_space(curve: &PlaneCurve) -> Result<LinearSystem> {
    let k = curve.degree as i64 - 3;
    let monomials = form_monomials(k);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    if !monomials.is_empty() {
        for rec in &curve.singularities {
            conductor_rows(curve, rec, &monomials, &mut rows, &mut labels)?;
        }
    }
    Ok(LinearSystem::solve(k, monomials, rows, labels))
}

/// The reduced scheme of nodes.
#[derive(Clone, Debug)]
pub struct NodalScheme {
    pub nodes: Vec<SingularityRecord>,
}

impl NodalScheme {
    pub fn new(nodes: Vec<SingularityRecord>) -> Result<Self> {
        if let Some(bad) = nodes.iter().find(|r| !r.ade_type.is_node()) {
            return Err(Error::Input(format!(
                "{} at {} is not a node",
                bad.ade_type,
                point_label(&bad.point)
            )));
        }
        Ok(NodalScheme { nodes })
    }

    pub fn of_curve(curve: &PlaneCurve) -> Self {
        NodalScheme { nodes: curve.nodes().cloned().collect() }
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.nodes.iter().map(|r| r.point.clone()).collect()
    }
}

/// Degree-`k` forms vanishing to order two at each point: `A = A_u = A_v = 0`
/// in the chart where the point has its largest coordinate.
pub fn double_vanishing_at(k: i64, points: &[ProjPoint]) -> LinearSystem {
    let monomials = form_monomials(k);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    if !monomials.is_empty() {
        for p in points {
            let chart = chart_index(p);
            let keep: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
            let center = [&p[keep[0]] / &p[chart], &p[keep[1]] / &p[chart]];
            let locals: Vec<MultiPoly> = monomials.iter().map(|m| mono_poly(m).dehomogenize(chart)).collect();
            let names = ["x", "y", "z"];
            let jets: [(String, Box<dyn Fn(&MultiPoly) -> MultiPoly>); 3] = [
                ("value".into(), Box::new(|f: &MultiPoly| f.clone())),
                (format!("d/d{}", names[keep[0]]), Box::new(|f: &MultiPoly| f.derivative(0))),
                (format!("d/d{}", names[keep[1]]), Box::new(|f: &MultiPoly| f.derivative(1))),
            ];
            for (name, jet) in &jets {
                rows.push(locals.iter().map(|l| jet(l).eval(&center)).collect());
                labels.push(format!("{} (chart {}=1): {name}", point_label(p), names[chart]));
            }
        }
    }
    LinearSystem::solve(k, monomials, rows, labels)
}

pub fn double_vanishing_space(curve: &PlaneCurve, scheme: &NodalScheme) -> LinearSystem {
    double_vanishing_at(curve.degree as i64 - 3, &scheme.points())
}

#[derive(Clone, Debug)]
pub struct ResidueSpanVerdict {
    pub genus: i64,
    pub node_count: usize,
    pub adjoint_dimension: usize,
    pub span_dimension: usize,
    pub double_vanishing_dimension: usize,
    /// Degree at least 4, nodes only, and nodes at least the genus.
    pub hypotheses_hold: bool,
    /// "span full iff double-vanishing space is zero", evaluated under the hypotheses.
    pub equivalence_holds: Option<bool>,
    pub double_vanishing_inside_adjoint: bool,
    pub witness: Option<String>,
}

pub fn residue_span_check(curve: &PlaneCurve) -> Result<ResidueSpanVerdict> {
    let genus = crate::curvekit::geometric_genus(curve)?;
    let adj = adjoint_space(curve)?;
    let functionals = crate::ivhs::node_functionals(curve, &adj, 0)?;
    let span = crate::ivhs::span_dimension(&functionals, adj.dimension());
    let dv = double_vanishing_space(curve, &NodalScheme::of_curve(curve));
    let g = genus.geometric_genus;
    let applies = crate::ivhs::residue_span_hypotheses(curve, g);
    let full = span as i64 == g;
    let equivalence = applies.then(|| full == (dv.dimension() == 0));
    let witness = match equivalence {
        Some(false) => Some(format!(
            "span {span} of {g} but double-vanishing dimension {}",
            dv.dimension()
        )),
        _ => None,
    };
    Ok(ResidueSpanVerdict {
        genus: g,
        node_count: genus.node_count,
        adjoint_dimension: adj.dimension(),
        span_dimension: span,
        double_vanishing_dimension: dv.dimension(),
        hypotheses_hold: applies,
        equivalence_holds: equivalence,
        double_vanishing_inside_adjoint: adj.contains(&dv),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::point;

    #[test]
    fn nodal_cubic_has_no_adjoints() {
        let c = PlaneCurve::analyzed("y^2*z - x^3 - x^2*z", &[point(0, 0, 1)]).unwrap();
        assert_eq!(adjoint_space(&c).unwrap().dimension(), 0);
        let cusp = PlaneCurve::analyzed("y^2*z - x^3", &[point(0, 0, 1)]).unwrap();
        assert_eq!(adjoint_space(&cusp).unwrap().dimension(), 0);
    }

    #[test]
    fn one_nodal_quartic_adjoints_are_lines_through_the_node() {
        let c = PlaneCurve::analyzed("x*y*z^2 + x^4 + y^4 + x^3*z", &[point(0, 0, 1)]).unwrap();
        let adj = adjoint_space(&c).unwrap();
        assert_eq!(adj.dimension(), 2);
        for a in &adj.basis {
            assert!(a.eval(&point(0, 0, 1)).is_zero());
        }
    }

    #[test]
    fn double_vanishing_dimensions() {
        let pts = [point(1, 0, 0), point(0, 1, 0), point(0, 0, 1)];
        assert_eq!(double_vanishing_at(1, &pts).dimension(), 0);
        assert_eq!(double_vanishing_at(2, &[point(2, -1, 3)]).dimension(), 3);
    }

    #[test]
    fn tacnode_uses_branch_conditions() {
        let c = PlaneCurve::analyzed("y^2*z^2 - x^4 + y^4 + x*y^3", &[point(0, 0, 1)]).unwrap();
        assert_eq!(c.singularities[0].ade_type.to_string(), "A_3");
        let adj = adjoint_space(&c).unwrap();
        assert_eq!(adj.dimension(), 1);
        assert_eq!(adj.condition_matrix.len(), 4);
    }
}
