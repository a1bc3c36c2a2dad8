//! `D_G(G)`: the twisted double of `k[G]` acted on by conjugation, both in
//! closed form and through the generic twisted-double construction.

use std::sync::Arc;

use super::FiniteGroupTable;
use crate::double::{dual_action, DualBases, HopfAction, TwistedDouble};
use crate::error::Result;
use crate::hopf::{dual_cop_hopf, FinAlgebra, FinHopfAlgebra};
use crate::pi::{GroupOracle, HopfPiCoalgebra, PiStructure};
use crate::report::{AxiomResult, VerificationReport};
use crate::scalars::ScalarField;
use crate::tensor::{Accumulator, Mat, Vector};

/// `k[G]` on the basis of group elements.
pub fn group_algebra(g: &FiniteGroupTable, field: ScalarField) -> Result<FinHopfAlgebra> {
    let n = g.order();
    let alg = FinAlgebra::from_rule(field, g.names().to_vec(), Vector::basis(field, n, g.identity()), |a, b| {
        Vector::basis(field, n, g.mul(&a, &b))
    })?;
    let comult = Mat::from_columns(field, n * n, (0..n).map(|a| Vector::basis(field, n * n, a * n + a)).collect())?;
    let counit = Mat::from_rows(field, &[vec![field.one(); n]])?;
    let antipode = Mat::from_columns(field, n, (0..n).map(|a| Vector::basis(field, n, g.inv(&a))).collect())?;
    FinHopfAlgebra::validated(alg, comult, counit, antipode)
}

/// The function algebra `F(G)` on the basis of point masses `e_g`, with
/// `Δ(e_g) = Σ_{xy=g} e_x ⊗ e_y`.
pub fn functions_hopf(g: &FiniteGroupTable, field: ScalarField) -> Result<FinHopfAlgebra> {
    let n = g.order();
    let labels = g.names().iter().map(|s| format!("e({s})")).collect();
    let unit = Vector::from_dense(field, &vec![field.one(); n]);
    let alg = FinAlgebra::from_rule(field, labels, unit, |a, b| {
        if a == b {
            Vector::basis(field, n, a)
        } else {
            Vector::zero(field, n)
        }
    })?;
    let mut trip = Vec::new();
    for x in 0..n {
        for y in 0..n {
            trip.push((x * n + y, g.mul(&x, &y), field.one()));
        }
    }
    let comult = Mat::from_triplets(field, n * n, n, trip)?;
    let counit = Mat::row_vector(&Vector::basis(field, n, g.identity()));
    let antipode = Mat::from_columns(field, n, (0..n).map(|a| Vector::basis(field, n, g.inv(&a))).collect())?;
    FinHopfAlgebra::validated(alg, comult, counit, antipode)
}

/// `β ↦ (x ↦ βxβ⁻¹)` on `k[G]`.
pub fn conjugation_action(g: Arc<FiniteGroupTable>, kg: Arc<FinHopfAlgebra>) -> HopfAction<FiniteGroupTable> {
    let field = kg.field();
    let group = g.clone();
    HopfAction::new(g, kg, move |b| {
        let n = group.order();
        Mat::from_columns(field, n, (0..n).map(|x| Vector::basis(field, n, group.conj(b, &x))).collect())
    })
}

/// `θ_α = Σ_g α⁻¹gα ⊗ e_g`.
pub fn dg_twist(g: &FiniteGroupTable, field: ScalarField, alpha: usize) -> Vector {
    let n = g.order();
    let ainv = g.inv(&alpha);
    let entries = (0..n).map(|x| (g.mul(&g.mul(&ainv, &x), &alpha) * n + x, field.one()));
    Vector::from_entries(field, n * n, entries)
}

/// Closed forms on the basis `g ⊗ e_h` (index `g·|G| + h`).
struct DgClosedForm {
    g: Arc<FiniteGroupTable>,
    field: ScalarField,
}

impl DgClosedForm {
    fn n(&self) -> usize {
        self.g.order()
    }

    fn idx(&self, a: usize, h: usize) -> usize {
        a * self.n() + h
    }
}

impl PiStructure<FiniteGroupTable> for DgClosedForm {
    fn component(&self, alpha: &usize) -> Result<FinAlgebra> {
        let (g, n, field) = (&*self.g, self.n(), self.field);
        let labels = (0..n * n).map(|k| format!("{}⊗e({})", g.names()[k / n], g.names()[k % n])).collect();
        let unit = Vector::from_entries(field, n * n, (0..n).map(|h| (self.idx(g.identity(), h), field.one())));
        // (a ⊗ e_h)(b ⊗ e_k) = [αbα⁻¹ = h⁻¹bk] ab ⊗ e_k
        FinAlgebra::from_rule(field, labels, unit, |i, j| {
            let (a, h, b, k) = (i / n, i % n, j / n, j % n);
            if g.conj(alpha, &b) == g.mul(&g.mul(&g.inv(&h), &b), &k) {
                Vector::basis(field, n * n, self.idx(g.mul(&a, &b), k))
            } else {
                Vector::zero(field, n * n)
            }
        })
    }

    fn comult(&self, _alpha: &usize, beta: &usize) -> Result<Mat> {
        let (g, n, field) = (&*self.g, self.n(), self.field);
        let d = n * n;
        let mut trip = Vec::new();
        for a in 0..n {
            for h in 0..n {
                for x in 0..n {
                    // Σ_{xy=h} (βaβ⁻¹ ⊗ e_y) ⊗ (a ⊗ e_x)
                    let y = g.mul(&g.inv(&x), &h);
                    trip.push((self.idx(g.conj(beta, &a), y) * d + self.idx(a, x), self.idx(a, h), field.one()));
                }
            }
        }
        Mat::from_triplets(field, d * d, d, trip)
    }

    fn counit(&self) -> Result<Mat> {
        let (g, n) = (&*self.g, self.n());
        let entries = (0..n).map(|a| (self.idx(a, g.identity()), self.field.one()));
        Ok(Mat::row_vector(&Vector::from_entries(self.field, n * n, entries)))
    }

    fn antipode(&self, alpha: &usize) -> Result<Mat> {
        let (g, n, field) = (&*self.g, self.n(), self.field);
        // S_α(a ⊗ e_h) = αa⁻¹α⁻¹ ⊗ e_{αaα⁻¹h⁻¹a⁻¹}
        let columns = (0..n * n)
            .map(|i| {
                let (a, h) = (i / n, i % n);
                let ainv = g.inv(&a);
                let e = g.mul(&g.mul(&g.conj(alpha, &a), &g.inv(&h)), &ainv);
                Vector::basis(field, n * n, self.idx(g.conj(alpha, &ainv), e))
            })
            .collect();
        Mat::from_columns(field, n * n, columns)
    }

    fn crossing(&self, beta: &usize, _alpha: &usize) -> Option<Result<Mat>> {
        let (g, n, field) = (&*self.g, self.n(), self.field);
        let columns = (0..n * n)
            .map(|i| Vector::basis(field, n * n, self.idx(g.conj(beta, &(i / n)), g.conj(beta, &(i % n)))))
            .collect();
        Some(Mat::from_columns(field, n * n, columns))
    }

    fn rmatrix(&self, _alpha: &usize, _beta: &usize) -> Option<Result<Vector>> {
        let (g, n, field) = (&*self.g, self.n(), self.field);
        // Σ_{a,h} (a ⊗ e_h) ⊗ (1 ⊗ e_a)
        let entries = (0..n)
            .flat_map(|a| (0..n).map(move |h| (a, h)))
            .map(|(a, h)| (self.idx(a, h) * n * n + self.idx(g.identity(), a), field.one()));
        Some(Ok(Vector::from_entries(field, n * n * n * n, entries)))
    }

    fn twist(&self, alpha: &usize) -> Option<Result<Vector>> {
        Some(Ok(dg_twist(&self.g, self.field, *alpha)))
    }
}

/// `D_G(G)` from closed formulas.
pub fn build_dg(g: Arc<FiniteGroupTable>, field: ScalarField) -> HopfPiCoalgebra<FiniteGroupTable> {
    HopfPiCoalgebra::new(g.clone(), Arc::new(DgClosedForm { g, field }))
}

/// `D_G(G)` through the generic construction: `k[G]` paired with its dual,
/// conjugation action and its dual, and the canonical R-matrix from dual
/// bases. The generic construction does not produce a twist, so the
/// closed-form twist is installed.
pub fn build_dg_generic(g: Arc<FiniteGroupTable>, field: ScalarField) -> Result<HopfPiCoalgebra<FiniteGroupTable>> {
    let kg = Arc::new(group_algebra(&g, field)?);
    let (_, pairing) = dual_cop_hopf(&kg)?;
    let phi = Arc::new(conjugation_action(g.clone(), kg));
    let psi = Arc::new(dual_action(&pairing, phi.clone())?);
    let db = DualBases::new(&pairing)?;
    let group = g.clone();
    Ok(TwistedDouble::new(&pairing, phi)?
        .with_crossing(psi)
        .with_rmatrix(&pairing, &db)?
        .with_twist(move |a| Ok(dg_twist(&group, field, *a)))
        .into_picoalgebra())
}

/// `θ_α^n = Σ_g α^{-n}(gα)^n ⊗ e_g` for each `n` in `powers`.
pub fn check_twist_powers(
    pi: &HopfPiCoalgebra<FiniteGroupTable>,
    colors: &[usize],
    powers: std::ops::RangeInclusive<i64>,
) -> Result<VerificationReport> {
    let g = pi.group();
    let n = g.order();
    let mut entries = Vec::new();
    for &a in colors {
        let comp = pi.component(&a)?;
        let field = comp.field();
        let theta = pi.twist(&a)?;
        for k in powers.clone() {
            let mut acc = Accumulator::new(field, n * n);
            for x in 0..n {
                let lead = g.mul(&g.pow(a, -k), &g.pow(g.mul(&x, &a), k));
                acc.add(lead * n + x, &field.one());
            }
            let w = comp.power(&theta, k)?.first_difference(&acc.finish()).map(|i| vec![i]);
            entries.push(AxiomResult::from_check("twist-power", vec![g.key(&a), k.to_string()], w));
        }
    }
    Ok(VerificationReport::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{verify_hopf, verify_pairing};
    use crate::pi::compare_picoalgebras;

    const QF: ScalarField = ScalarField::Rationals;

    #[test]
    fn group_algebra_and_functions_are_hopf() {
        let g = FiniteGroupTable::symmetric3();
        assert!(verify_hopf(&group_algebra(&g, QF).unwrap()).unwrap().all_pass());
        assert!(verify_hopf(&functions_hopf(&g, QF).unwrap()).unwrap().all_pass());
    }

    #[test]
    fn dual_of_group_algebra_is_functions_with_opposite_comult() {
        let g = FiniteGroupTable::symmetric3();
        let kg = Arc::new(group_algebra(&g, QF).unwrap());
        let (dual, pairing) = dual_cop_hopf(&kg).unwrap();
        let f = functions_hopf(&g, QF).unwrap();
        let n = g.order();
        assert_eq!(dual.alg().mult(), f.alg().mult());
        let flipped = crate::tensor::flip_matrix(QF, n, n).compose(f.comult());
        assert_eq!(dual.comult(), &flipped);
        assert!(verify_pairing(&pairing).all_pass());
    }

    #[test]
    fn closed_form_matches_generic_on_z2() {
        let g = Arc::new(FiniteGroupTable::cyclic(2));
        let closed = build_dg(g.clone(), QF);
        let generic = build_dg_generic(g, QF).unwrap();
        let r = compare_picoalgebras(&closed, &generic, &[0, 1]).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn z2_double_has_zero_divisors() {
        // (s ⊗ e_s)(s ⊗ e_1) = 0 in the untwisted component
        let g = Arc::new(FiniteGroupTable::cyclic(2));
        let pi = build_dg(g, QF);
        let h = pi.component(&0).unwrap();
        assert!(h.mul(&h.basis(3), &h.basis(2)).is_zero());
    }
}
