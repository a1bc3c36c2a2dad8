//! Finite-dimensional algebras and Hopf algebras given by structure
//! constants, Hopf pairings, annihilators and Hopf-ideal quotients.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pi::{verify_picoalgebra, HopfPiCoalgebra, PiStructure, TrivialGroup};
use crate::report::{AxiomResult, VerificationReport};
use crate::scalars::{Scalar, ScalarField};
use crate::tensor::{
    apply_legs, inverse, kernel, solve, solve_sparse, split_index, Accumulator, EchelonBasis, Leg, Mat, Vector,
};

/// Associative unital algebra on a fixed ordered basis. `mult` is the
/// `d × d²` matrix of `H ⊗ H → H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    field: ScalarField,
    labels: Vec<String>,
    mult: Mat,
    unit: Vector,
}

impl FinAlgebra {
    pub fn new(field: ScalarField, labels: Vec<String>, mult: Mat, unit: Vector) -> Result<Self> {
        let d = labels.len();
        if mult.field() != field || unit.field() != field {
            return Err(Error::Shape("algebra data over mixed fields".into()));
        }
        if mult.rows() != d || mult.cols() != d * d {
            return Err(Error::Shape(format!(
                "multiplication is {}x{}, expected {d}x{}",
                mult.rows(),
                mult.cols(),
                d * d
            )));
        }
        if unit.dim() != d {
            return Err(Error::Shape(format!("unit has dimension {}, expected {d}", unit.dim())));
        }
        Ok(FinAlgebra { field, labels, mult, unit })
    }

    /// Builds the multiplication from a rule on basis pairs.
    pub fn from_rule(
        field: ScalarField,
        labels: Vec<String>,
        unit: Vector,
        rule: impl Fn(usize, usize) -> Vector,
    ) -> Result<Self> {
        let d = labels.len();
        let columns = (0..d * d).map(|k| rule(k / d, k % d)).collect();
        let mult = Mat::from_columns(field, d, columns)?;
        FinAlgebra::new(field, labels, mult, unit)
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &Mat {
        &self.mult
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim(), i)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        self.mult.column(i * self.dim() + j)
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut acc = Accumulator::new(self.field, self.dim());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                acc.add_vector(&(a * b), self.mul_basis(*i, *j));
            }
        }
        acc.finish()
    }

    /// Applies the multiplication map to an element of `H ⊗ H`.
    pub fn mul_tensor(&self, v: &Vector) -> Vector {
        self.mult.apply(v)
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult_matrix(&self, x: &Vector) -> Mat {
        let columns = (0..self.dim()).map(|j| self.mul(x, &self.basis(j))).collect();
        Mat::from_columns(self.field, self.dim(), columns).expect("shapes agree")
    }

    /// First basis triple violating associativity.
    pub fn associativity_witness(&self) -> Option<Vec<usize>> {
        let d = self.dim();
        (0..d * d).into_par_iter().find_map_first(|ij| {
            let (i, j) = (ij / d, ij % d);
            let xy = self.mul_basis(i, j);
            (0..d).find_map(|k| {
                let left = self.mul(xy, &self.basis(k));
                let right = self.mul(&self.basis(i), self.mul_basis(j, k));
                (left != right).then(|| vec![i, j, k])
            })
        })
    }

    pub fn unit_witness(&self) -> Option<Vec<usize>> {
        (0..self.dim()).find_map(|i| {
            let x = self.basis(i);
            (self.mul(&self.unit, &x) != x || self.mul(&x, &self.unit) != x).then(|| vec![i])
        })
    }

    /// Two-sided inverse of `x`.
    pub fn inverse_of(&self, x: &Vector) -> Result<Vector> {
        let y = solve(&self.left_mult_matrix(x), &self.unit).map_err(|e| match e {
            Error::Inconsistent => Error::Singular,
            e => e,
        })?;
        if self.mul(&y, x) != self.unit {
            return Err(Error::Singular);
        }
        Ok(y)
    }

    /// `x^n` for any integer `n`; negative powers need `x` invertible.
    pub fn power(&self, x: &Vector, n: i64) -> Result<Vector> {
        let base = if n < 0 { self.inverse_of(x)? } else { x.clone() };
        let mut acc = self.unit.clone();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }
}

/// Product in the tensor product algebra `A_0 ⊗ ... ⊗ A_{k-1}`.
pub fn tensor_mul(algs: &[&FinAlgebra], x: &Vector, y: &Vector) -> Vector {
    let dims: Vec<usize> = algs.iter().map(|a| a.dim()).collect();
    let total: usize = dims.iter().product();
    assert!(x.dim() == total && y.dim() == total, "tensor factors do not match the algebras");
    let field = x.field();
    let xs: Vec<(Vec<usize>, &Scalar)> = x.entries().iter().map(|(i, c)| (split_index(*i, &dims), c)).collect();
    let ys: Vec<(Vec<usize>, &Scalar)> = y.entries().iter().map(|(i, c)| (split_index(*i, &dims), c)).collect();
    let mut acc = Accumulator::new(field, total);
    for (xi, a) in &xs {
        for (yi, b) in &ys {
            let mut partial: Vec<(usize, Scalar)> = vec![(0, *a * *b)];
            for (k, alg) in algs.iter().enumerate() {
                let col = alg.mul_basis(xi[k], yi[k]);
                if col.is_zero() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * col.nnz());
                for (o, c) in &partial {
                    for (i, v) in col.entries() {
                        next.push((o * dims[k] + i, c * v));
                    }
                }
                partial = next;
            }
            for (o, c) in partial {
                acc.add(o, &c);
            }
        }
    }
    acc.finish()
}

pub fn tensor_unit(algs: &[&FinAlgebra]) -> Vector {
    let mut it = algs.iter();
    let first = it.next().expect("at least one factor").unit().clone();
    it.fold(first, |acc, a| acc.tensor(a.unit()))
}

/// Two-sided inverse of `x` in a tensor product algebra, by a sparse solve.
pub fn tensor_inverse(algs: &[&FinAlgebra], x: &Vector) -> Result<Vector> {
    let dims: Vec<usize> = algs.iter().map(|a| a.dim()).collect();
    let total: usize = dims.iter().product();
    let field = x.field();
    let columns = (0..total).map(|j| tensor_mul(algs, x, &Vector::basis(field, total, j))).collect();
    let left = Mat::from_columns(field, total, columns)?;
    let unit = tensor_unit(algs);
    let y = solve_sparse(&left, &unit).map_err(|e| match e {
        Error::Inconsistent => Error::Singular,
        e => e,
    })?;
    if tensor_mul(algs, &y, x) != unit {
        return Err(Error::Singular);
    }
    Ok(y)
}

/// Hopf algebra by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinHopfAlgebra {
    alg: FinAlgebra,
    comult: Mat,
    counit: Mat,
    antipode: Mat,
}

impl FinHopfAlgebra {
    /// Checks shapes only; see [`FinHopfAlgebra::validated`].
    pub fn new(alg: FinAlgebra, comult: Mat, counit: Mat, antipode: Mat) -> Result<Self> {
        let d = alg.dim();
        let ok = comult.rows() == d * d
            && comult.cols() == d
            && counit.rows() == 1
            && counit.cols() == d
            && antipode.rows() == d
            && antipode.cols() == d;
        if !ok {
            return Err(Error::Shape(format!("structure maps do not fit a {d}-dimensional algebra")));
        }
        if [&comult, &counit, &antipode].iter().any(|m| m.field() != alg.field()) {
            return Err(Error::Shape("structure maps over mixed fields".into()));
        }
        Ok(FinHopfAlgebra { alg, comult, counit, antipode })
    }

    /// Like [`FinHopfAlgebra::new`], additionally requiring every Hopf axiom to hold.
    pub fn validated(alg: FinAlgebra, comult: Mat, counit: Mat, antipode: Mat) -> Result<Self> {
        let h = FinHopfAlgebra::new(alg, comult, counit, antipode)?;
        let report = verify_hopf(&h)?;
        if let Some(f) = report.failures().next() {
            return Err(Error::Invalid(format!("Hopf axiom {} fails (witness {:?})", f.axiom, f.witness)));
        }
        Ok(h)
    }

    pub fn alg(&self) -> &FinAlgebra {
        &self.alg
    }

    pub fn field(&self) -> ScalarField {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn comult(&self) -> &Mat {
        &self.comult
    }

    pub fn counit(&self) -> &Mat {
        &self.counit
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn counit_of(&self, x: &Vector) -> Scalar {
        self.counit.apply(x).get(0)
    }
}

/// The Hopf algebra seen as a π-coalgebra over the trivial group.
struct ClassicalHopf(FinHopfAlgebra);

impl PiStructure<TrivialGroup> for ClassicalHopf {
    fn component(&self, _: &()) -> Result<FinAlgebra> {
        Ok(self.0.alg.clone())
    }

    fn comult(&self, _: &(), _: &()) -> Result<Mat> {
        Ok(self.0.comult.clone())
    }

    fn counit(&self) -> Result<Mat> {
        Ok(self.0.counit.clone())
    }

    fn antipode(&self, _: &()) -> Result<Mat> {
        Ok(self.0.antipode.clone())
    }
}

/// Every Hopf axiom on basis elements: the trivial-group case of the
/// π-coalgebra suite (coassociativity, counit, antipode, multiplicativity
/// of Δ and ε, anti-(co)multiplicativity of S, associativity and unit).
pub fn verify_hopf(h: &FinHopfAlgebra) -> Result<VerificationReport> {
    let pi = HopfPiCoalgebra::new(Arc::new(TrivialGroup), Arc::new(ClassicalHopf(h.clone())));
    verify_picoalgebra(&pi, &[()])
}

/// `Δ^{(k)}: H → H^{⊗k}`, built as `(Δ ⊗ id^{k-2}) ∘ Δ^{(k-1)}`.
pub fn iterated_comult(h: &FinHopfAlgebra, k: usize) -> Mat {
    assert!(k >= 1, "iterated comultiplication needs k >= 1");
    let d = h.dim();
    let mut m = Mat::identity(h.field(), d);
    for level in 2..=k {
        let mut legs = vec![Leg::Map(&h.comult)];
        legs.extend(std::iter::repeat_n(Leg::Id(d), level - 2));
        let columns = m.columns().iter().map(|c| apply_legs(&legs, c)).collect();
        m = Mat::from_columns(h.field(), d.pow(level as u32), columns).expect("shapes agree");
    }
    m
}

/// Bilinear form `σ: A × B → k`; `sigma[i][j] = σ(a_i, b_j)`.
#[derive(Debug, Clone)]
pub struct PairingTable {
    pub a: Arc<FinHopfAlgebra>,
    pub b: Arc<FinHopfAlgebra>,
    pub sigma: Mat,
}

impl PairingTable {
    pub fn new(a: Arc<FinHopfAlgebra>, b: Arc<FinHopfAlgebra>, sigma: Mat) -> Result<Self> {
        if sigma.rows() != a.dim() || sigma.cols() != b.dim() {
            return Err(Error::Shape(format!(
                "pairing matrix is {}x{}, expected {}x{}",
                sigma.rows(),
                sigma.cols(),
                a.dim(),
                b.dim()
            )));
        }
        if a.field() != b.field() || sigma.field() != a.field() {
            return Err(Error::Shape("pairing data over mixed fields".into()));
        }
        Ok(PairingTable { a, b, sigma })
    }

    pub fn value(&self, x: &Vector, y: &Vector) -> Scalar {
        x.pair(&self.sigma, y)
    }

    pub fn is_square_invertible(&self) -> bool {
        self.sigma.rows() == self.sigma.cols() && inverse(&self.sigma).is_ok()
    }
}

fn vector_witness(v: &Vector) -> Option<usize> {
    v.entries().first().map(|(i, _)| *i)
}

/// Hopf pairing axioms on basis elements:
/// `σ(a, bb') = σ(a₁, b) σ(a₂, b')`, `σ(aa', b) = σ(a, b₂) σ(a', b₁)`,
/// `σ(a, 1) = ε(a)`, `σ(1, b) = ε(b)` and `σ(S a, S b) = σ(a, b)`.
pub fn verify_pairing(p: &PairingTable) -> VerificationReport {
    let (a, b) = (&*p.a, &*p.b);
    let (da, db) = (a.dim(), b.dim());
    let sig_t = p.sigma.transpose();
    let mut entries = Vec::new();

    // σ(a_i, ·) ∘ m_B against (σ(a_i)₁ ⊗ σ(a_i)₂)
    let lhs_b = b.alg.mult.transpose().compose(&sig_t);
    let mut witness = None;
    for i in 0..da {
        let lhs = lhs_b.column(i);
        let mut acc = Accumulator::new(p.sigma.field(), db * db);
        for (pq, c) in a.comult.column(i).entries() {
            let (pi, qi) = (pq / da, pq % da);
            acc.add_vector(c, &sig_t.column(pi).tensor(sig_t.column(qi)));
        }
        if let Some(k) = vector_witness(&lhs.sub(&acc.finish())) {
            witness = Some(vec![i, k / db, k % db]);
            break;
        }
    }
    entries.push(AxiomResult::from_check("pairing-mult-b", vec![], witness));

    let lhs_a = a.alg.mult.transpose().compose(&p.sigma);
    let mut witness = None;
    for j in 0..db {
        let lhs = lhs_a.column(j);
        let mut acc = Accumulator::new(p.sigma.field(), da * da);
        for (pq, c) in b.comult.column(j).entries() {
            let (pj, qj) = (pq / db, pq % db);
            acc.add_vector(c, &p.sigma.column(qj).tensor(p.sigma.column(pj)));
        }
        if let Some(k) = vector_witness(&lhs.sub(&acc.finish())) {
            witness = Some(vec![k / da, k % da, j]);
            break;
        }
    }
    entries.push(AxiomResult::from_check("pairing-mult-a", vec![], witness));

    let unit_b = p.sigma.apply(b.alg.unit());
    let counit_a = Vector::from_dense(a.field(), &(0..da).map(|i| a.counit.get(0, i)).collect::<Vec<_>>());
    entries.push(AxiomResult::from_check(
        "pairing-unit-b",
        vec![],
        vector_witness(&unit_b.sub(&counit_a)).map(|i| vec![i]),
    ));
    let unit_a = sig_t.apply(a.alg.unit());
    let counit_b = Vector::from_dense(b.field(), &(0..db).map(|j| b.counit.get(0, j)).collect::<Vec<_>>());
    entries.push(AxiomResult::from_check(
        "pairing-unit-a",
        vec![],
        vector_witness(&unit_a.sub(&counit_b)).map(|j| vec![j]),
    ));

    let ss = a.antipode.transpose().compose(&p.sigma).compose(&b.antipode);
    let witness = ss.first_difference(&p.sigma).map(|j| {
        let i = vector_witness(&ss.column(j).sub(p.sigma.column(j))).unwrap_or(0);
        vec![i, j]
    });
    entries.push(AxiomResult::from_check("pairing-antipode", vec![], witness));
    VerificationReport::new(entries)
}

/// Checks that the span of `basis` is a Hopf ideal and returns its echelon form.
pub fn check_hopf_ideal(h: &FinHopfAlgebra, basis: &[Vector]) -> Result<EchelonBasis> {
    let d = h.dim();
    let eb = EchelonBasis::from_vectors(h.field(), d, basis)?;
    let vs = eb.basis();
    for v in &vs {
        for i in 0..d {
            let e = h.alg.basis(i);
            if !eb.contains(&h.alg.mul(&e, v)) || !eb.contains(&h.alg.mul(v, &e)) {
                return Err(Error::NotHopfIdeal(format!("not a two-sided ideal (basis element {i})")));
            }
        }
        if !h.counit_of(v).is_zero() {
            return Err(Error::NotHopfIdeal("counit does not vanish".into()));
        }
        if !eb.contains(&h.antipode.apply(v)) {
            return Err(Error::NotHopfIdeal("not stable under the antipode".into()));
        }
    }
    let p = eb.projection();
    for v in &vs {
        let image = apply_legs(&[Leg::Map(&p), Leg::Map(&p)], &h.comult.apply(v));
        if !image.is_zero() {
            return Err(Error::NotHopfIdeal("not a coideal".into()));
        }
    }
    Ok(eb)
}

/// Annihilator ideals `(I_A, I_B)` of a pairing, each verified to be a Hopf ideal.
pub fn pairing_annihilators(p: &PairingTable) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let ia = kernel(&p.sigma.transpose())?;
    let ib = kernel(&p.sigma)?;
    check_hopf_ideal(&p.a, &ia)?;
    check_hopf_ideal(&p.b, &ib)?;
    Ok((ia, ib))
}

/// Smallest two-sided ideal containing `gens`.
pub fn generated_ideal(alg: &FinAlgebra, gens: &[Vector]) -> Result<EchelonBasis> {
    let d = alg.dim();
    let mut eb = EchelonBasis::new(alg.field(), d);
    let mut queue = Vec::new();
    for g in gens {
        if eb.insert(g)? {
            queue.push(g.clone());
        }
    }
    while let Some(w) = queue.pop() {
        for i in 0..d {
            let e = alg.basis(i);
            for cand in [alg.mul(&e, &w), alg.mul(&w, &e)] {
                if eb.insert(&cand)? {
                    queue.push(cand);
                }
            }
        }
    }
    Ok(eb)
}

/// Induced algebra on the complement coordinates of an ideal.
pub fn quotient_algebra(alg: &FinAlgebra, ideal: &EchelonBasis) -> Result<FinAlgebra> {
    let p = ideal.projection();
    let comp = ideal.complement();
    let labels = comp.iter().map(|&c| alg.labels[c].clone()).collect();
    let unit = p.apply(&alg.unit);
    FinAlgebra::from_rule(alg.field(), labels, unit, |i, j| p.apply(alg.mul_basis(comp[i], comp[j])))
}

/// Quotient by a Hopf ideal, with the projection onto it.
pub fn quotient_hopf(h: &FinHopfAlgebra, ideal_basis: &[Vector]) -> Result<(FinHopfAlgebra, Mat)> {
    let eb = check_hopf_ideal(h, ideal_basis)?;
    let p = eb.projection();
    let s = eb.section();
    let alg = quotient_algebra(&h.alg, &eb)?;
    let q = alg.dim();
    let comult_cols = (0..q)
        .map(|j| apply_legs(&[Leg::Map(&p), Leg::Map(&p)], &h.comult.apply(s.column(j))))
        .collect();
    let comult = Mat::from_columns(h.field(), q * q, comult_cols)?;
    let counit = h.counit.compose(&s);
    let antipode = p.compose(&h.antipode).compose(&s);
    Ok((FinHopfAlgebra::validated(alg, comult, counit, antipode)?, p))
}

/// `H^{*cop}` on the dual basis, with the canonical pairing `σ(e_i, δ_j) = δ_{ij}`.
pub fn dual_cop_hopf(h: &Arc<FinHopfAlgebra>) -> Result<(Arc<FinHopfAlgebra>, PairingTable)> {
    let d = h.dim();
    let field = h.field();
    let labels: Vec<String> = h.alg.labels.iter().map(|l| format!("δ({l})")).collect();
    // (δ_i δ_j)(e_k) = coefficient of e_i ⊗ e_j in Δ(e_k)
    let mut mult_trip = Vec::new();
    for (row, k, c) in h.comult.triplets() {
        mult_trip.push((k, row, c.clone()));
    }
    let mult = Mat::from_triplets(field, d, d * d, mult_trip)?;
    let unit = Vector::from_dense(field, &(0..d).map(|k| h.counit.get(0, k)).collect::<Vec<_>>());
    let alg = FinAlgebra::new(field, labels, mult, unit)?;
    // Δ^{cop}(δ_k) = Σ (e_i e_j)_k δ_j ⊗ δ_i
    let mut comult_trip = Vec::new();
    for (k, ij, c) in h.alg.mult.triplets() {
        let (i, j) = (ij / d, ij % d);
        comult_trip.push((j * d + i, k, c.clone()));
    }
    let comult = Mat::from_triplets(field, d * d, d, comult_trip)?;
    let counit = Mat::row_vector(&h.alg.unit);
    let antipode = inverse(&h.antipode)?.transpose();
    let dual = Arc::new(FinHopfAlgebra::validated(alg, comult, counit, antipode)?);
    let pairing = PairingTable::new(h.clone(), dual.clone(), Mat::identity(field, d))?;
    Ok((dual, pairing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    const QF: ScalarField = ScalarField::Rationals;

    /// k[Z/2] on basis {1, s}.
    pub(crate) fn kz2() -> FinHopfAlgebra {
        let labels = vec!["1".to_string(), "s".to_string()];
        let alg = FinAlgebra::from_rule(QF, labels, Vector::basis(QF, 2, 0), |i, j| Vector::basis(QF, 2, (i + j) % 2))
            .unwrap();
        let comult = Mat::from_columns(QF, 4, vec![Vector::basis(QF, 4, 0), Vector::basis(QF, 4, 3)]).unwrap();
        let counit = Mat::from_rows(QF, &[vec![QF.one(), QF.one()]]).unwrap();
        FinHopfAlgebra::new(alg, comult, counit, Mat::identity(QF, 2)).unwrap()
    }

    #[test]
    fn group_algebra_of_z2_passes() {
        let r = verify_hopf(&kz2()).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn negated_counit_is_caught() {
        let h = kz2();
        let counit = Mat::from_rows(QF, &[vec![QF.one(), QF.from_i64(-1)]]).unwrap();
        let bad = FinHopfAlgebra::new(h.alg.clone(), h.comult.clone(), counit, h.antipode.clone()).unwrap();
        let r = verify_hopf(&bad).unwrap();
        let e = r.axiom("eq2-counit").next().unwrap();
        assert_eq!(e.status, Status::Fail);
        assert_eq!(e.witness, Some(vec![1]));
        assert!(FinHopfAlgebra::validated(bad.alg.clone(), bad.comult.clone(), bad.counit.clone(), bad.antipode.clone())
            .is_err());
    }

    #[test]
    fn iterated_comult_of_grouplike() {
        let h = kz2();
        assert!(iterated_comult(&h, 1).is_identity());
        assert_eq!(iterated_comult(&h, 2), h.comult);
        let s = h.alg.basis(1);
        let sss = s.tensor(&s).tensor(&s);
        assert_eq!(iterated_comult(&h, 3).apply(&s), sss);
        let other = {
            let cols = h
                .comult
                .columns()
                .iter()
                .map(|c| apply_legs(&[Leg::Id(2), Leg::Map(&h.comult)], c))
                .collect();
            Mat::from_columns(QF, 8, cols).unwrap()
        };
        assert_eq!(iterated_comult(&h, 3), other);
    }

    #[test]
    fn quotient_of_kz2_by_augmentation_ideal() {
        let h = kz2();
        let v = Vector::from_dense(QF, &[QF.one(), QF.from_i64(-1)]);
        let (q, p) = quotient_hopf(&h, &[v]).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(p.rows(), 1);
        let (same, p0) = quotient_hopf(&h, &[]).unwrap();
        assert_eq!(same, h);
        assert!(p0.is_identity());
        let not_ideal = Vector::basis(QF, 2, 1);
        assert!(matches!(quotient_hopf(&h, &[not_ideal]), Err(Error::NotHopfIdeal(_))));
    }

    #[test]
    fn dual_of_one_dimensional_hopf_algebra() {
        let labels = vec!["1".to_string()];
        let alg = FinAlgebra::from_rule(QF, labels, Vector::basis(QF, 1, 0), |_, _| Vector::basis(QF, 1, 0)).unwrap();
        let one = Mat::identity(QF, 1);
        let h = Arc::new(FinHopfAlgebra::new(alg, one.clone(), one.clone(), one).unwrap());
        let (d, p) = dual_cop_hopf(&h).unwrap();
        assert_eq!(d.alg.mult, h.alg.mult);
        assert_eq!(d.comult, h.comult);
        assert!(verify_pairing(&p).all_pass());
        assert_eq!(pairing_annihilators(&p).unwrap(), (vec![], vec![]));
    }

    #[test]
    fn zero_pairing_annihilates_everything() {
        let h = Arc::new(kz2());
        let (d, _) = dual_cop_hopf(&h).unwrap();
        let p = PairingTable::new(h, d, Mat::zero(QF, 2, 2)).unwrap();
        // the zero form is not a Hopf pairing, and its radicals are not Hopf ideals
        assert!(!verify_pairing(&p).all_pass());
        assert!(pairing_annihilators(&p).is_err());
        assert_eq!(kernel(&p.sigma).unwrap().len(), 2);
    }

    #[test]
    fn associativity_witness_found() {
        let labels = vec!["1".to_string(), "a".to_string(), "b".to_string()];
        // a·a = b, b·a = a, a·b = 0: (aa)a = a but a(aa) = 0
        let bad = FinAlgebra::from_rule(QF, labels, Vector::basis(QF, 3, 0), |i, j| match (i, j) {
            (0, k) | (k, 0) => Vector::basis(QF, 3, k),
            (1, 1) => Vector::basis(QF, 3, 2),
            (2, 1) => Vector::basis(QF, 3, 1),
            _ => Vector::zero(QF, 3),
        })
        .unwrap();
        assert_eq!(bad.associativity_witness(), Some(vec![1, 1, 1]));
        assert!(bad.unit_witness().is_none());
        assert!(kz2().alg.associativity_witness().is_none());
    }
}
