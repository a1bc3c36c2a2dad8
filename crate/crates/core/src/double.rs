//! Twisted doubles `D(A, B; σ, φ)`: from a Hopf pairing and a group action
//! by Hopf automorphisms, a Hopf π-coalgebra with crossing and R-matrix.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::hopf::{iterated_comult, tensor_mul, tensor_unit, FinAlgebra, FinHopfAlgebra, PairingTable};
use crate::pi::{GroupOracle, HopfPiCoalgebra, PiStructure};
use crate::report::{AxiomResult, VerificationReport};
use crate::scalars::ScalarField;
use crate::tensor::{apply_legs, inverse, permute_legs, Accumulator, Leg, Mat, Vector};

type ActionRule<G> = dyn Fn(&<G as GroupOracle>::Elem) -> Result<Mat> + Send + Sync;

/// An action `β ↦ φ_β` of a group on a Hopf algebra by Hopf automorphisms.
/// Matrices are produced on demand and checked to be Hopf automorphisms
/// the first time they are requested.
pub struct HopfAction<G: GroupOracle> {
    group: Arc<G>,
    target: Arc<FinHopfAlgebra>,
    rule: Box<ActionRule<G>>,
    cache: RwLock<HashMap<String, Arc<Mat>>>,
}

impl<G: GroupOracle> HopfAction<G> {
    pub fn new(
        group: Arc<G>,
        target: Arc<FinHopfAlgebra>,
        rule: impl Fn(&G::Elem) -> Result<Mat> + Send + Sync + 'static,
    ) -> Self {
        HopfAction { group, target, rule: Box::new(rule), cache: RwLock::new(HashMap::new()) }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn target(&self) -> &Arc<FinHopfAlgebra> {
        &self.target
    }

    pub fn matrix(&self, beta: &G::Elem) -> Result<Arc<Mat>> {
        let key = self.group.key(beta);
        if let Some(m) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = (self.rule)(beta)?;
        if let Some(problem) = hopf_automorphism_failure(&self.target, &m) {
            return Err(Error::Invalid(format!("action at {key} is not a Hopf automorphism: {problem}")));
        }
        let m = Arc::new(m);
        self.cache.write().expect("cache lock").entry(key).or_insert(m.clone());
        Ok(m)
    }

    /// `φ_1 = id` and `φ_α φ_β = φ_{αβ}` on the given colors.
    pub fn check_action(&self, colors: &[G::Elem]) -> Result<VerificationReport> {
        let g = &self.group;
        let d = self.target.dim();
        let mut entries = Vec::new();
        let id = self.matrix(&g.identity())?;
        let w = id.first_difference(&Mat::identity(self.target.field(), d)).map(|j| vec![j]);
        entries.push(AxiomResult::from_check("action-identity", vec![], w));
        for a in colors {
            for b in colors {
                let lhs = self.matrix(a)?.compose(&*self.matrix(b)?);
                let w = lhs.first_difference(&*self.matrix(&g.mul(a, b))?).map(|j| vec![j]);
                entries.push(AxiomResult::from_check("action-composition", vec![g.key(a), g.key(b)], w));
            }
        }
        Ok(VerificationReport::new(entries))
    }
}

/// Reason `m` fails to be a Hopf automorphism of `h`, if any.
pub fn hopf_automorphism_failure(h: &FinHopfAlgebra, m: &Mat) -> Option<String> {
    let d = h.dim();
    if m.rows() != d || m.cols() != d {
        return Some(format!("matrix is {}x{}, expected {d}x{d}", m.rows(), m.cols()));
    }
    if inverse(m).is_err() {
        return Some("not invertible".into());
    }
    let alg = h.alg();
    if m.apply(alg.unit()) != *alg.unit() {
        return Some("does not fix the unit".into());
    }
    for i in 0..d {
        for j in 0..d {
            if m.apply(alg.mul_basis(i, j)) != alg.mul(m.column(i), m.column(j)) {
                return Some(format!("not multiplicative on ({i}, {j})"));
            }
        }
    }
    if let Some(j) = m.kron(m).compose(h.comult()).first_difference(&h.comult().compose(m)) {
        return Some(format!("does not commute with the comultiplication at {j}"));
    }
    if let Some(j) = h.counit().compose(m).first_difference(h.counit()) {
        return Some(format!("does not preserve the counit at {j}"));
    }
    if let Some(j) = m.compose(h.antipode()).first_difference(&h.antipode().compose(m)) {
        return Some(format!("does not commute with the antipode at {j}"));
    }
    None
}

/// First basis pair `(i, j)` with `σ(φ_β(a_i), ψ_β(b_j)) ≠ σ(a_i, b_j)`.
fn compatibility_witness(sigma: &Mat, phi: &Mat, psi: &Mat) -> Option<Vec<usize>> {
    let moved = phi.transpose().compose(sigma).compose(psi);
    moved.first_difference(sigma).map(|j| {
        let i = moved.column(j).sub(sigma.column(j)).entries()[0].0;
        vec![i, j]
    })
}

/// `σ(φ_β(a), ψ_β(b)) = σ(a, b)` on all basis pairs, for each `β`.
pub fn check_compatible<G: GroupOracle>(
    pairing: &PairingTable,
    phi: &HopfAction<G>,
    psi: &HopfAction<G>,
    colors: &[G::Elem],
) -> Result<VerificationReport> {
    let g = &phi.group;
    let mut entries = Vec::new();
    for b in colors {
        let w = compatibility_witness(&pairing.sigma, &*phi.matrix(b)?, &*psi.matrix(b)?);
        entries.push(AxiomResult::from_check("compatible-action", vec![g.key(b)], w));
    }
    Ok(VerificationReport::new(entries))
}

/// The unique `(σ, φ)`-compatible action on `B` for a non-degenerate pairing:
/// `σ(a, φ*_β(b)) = σ(φ_{β⁻¹}(a), b)`.
pub fn dual_action<G: GroupOracle>(pairing: &PairingTable, phi: Arc<HopfAction<G>>) -> Result<HopfAction<G>> {
    let sigma = pairing.sigma.clone();
    let sigma_inv = inverse(&sigma).map_err(|_| Error::DegeneratePairing)?;
    let group = phi.group.clone();
    Ok(HopfAction::new(group, pairing.b.clone(), move |beta| {
        let p = phi.matrix(&phi.group.inv(beta))?;
        Ok(sigma_inv.compose(&p.transpose()).compose(&sigma))
    }))
}

/// Sweedler data shared by every component of a double.
struct DoubleData {
    a: Arc<FinHopfAlgebra>,
    b: Arc<FinHopfAlgebra>,
    sigma: Mat,
    delta3_a: Mat,
    delta3_b: Mat,
}

impl DoubleData {
    fn new(pairing: &PairingTable) -> Self {
        DoubleData {
            a: pairing.a.clone(),
            b: pairing.b.clone(),
            sigma: pairing.sigma.clone(),
            delta3_a: iterated_comult(&pairing.a, 3),
            delta3_b: iterated_comult(&pairing.b, 3),
        }
    }

    fn field(&self) -> ScalarField {
        self.a.field()
    }

    fn dims(&self) -> (usize, usize) {
        (self.a.dim(), self.b.dim())
    }

    /// `Σ τ1(a₁, b₁) τ2(a₃, b₃) left(a₂) ⊗ right(b₂)` for `a = e_k`, `b = f_j`,
    /// as an element of `A ⊗ B`.
    fn sandwich(&self, k: usize, j: usize, tau1: &Mat, tau2: &Mat, left: Option<&Mat>, right: Option<&Mat>) -> Vector {
        let (m, n) = self.dims();
        let mut acc = Accumulator::new(self.field(), m * n);
        for (pqr, c) in self.delta3_a.column(k).entries() {
            let (p, q, r) = (pqr / (m * m), (pqr / m) % m, pqr % m);
            for (stu, d) in self.delta3_b.column(j).entries() {
                let (s, t, u) = (stu / (n * n), (stu / n) % n, stu % n);
                let coeff = &(&(c * d) * &tau1.get(p, s)) * &tau2.get(r, u);
                if coeff.is_zero() {
                    continue;
                }
                let av = left.map_or_else(|| Vector::basis(self.field(), m, q), |l| l.column(q).clone());
                let bv = right.map_or_else(|| Vector::basis(self.field(), n, t), |r| r.column(t).clone());
                acc.add_vector(&coeff, &av.tensor(&bv));
            }
        }
        acc.finish()
    }
}

fn double_labels(a: &FinHopfAlgebra, b: &FinHopfAlgebra) -> Vec<String> {
    a.alg()
        .labels()
        .iter()
        .flat_map(|x| b.alg().labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect()
}

fn build_double_algebra(data: &DoubleData, phi_alpha: &Mat) -> Result<FinAlgebra> {
    let (m, n) = data.dims();
    let field = data.field();
    let (alg_a, alg_b) = (data.a.alg(), data.b.alg());
    // τ1(p, s) = σ(φ(e_p), S(f_s)), τ2 = σ
    let tau1 = phi_alpha.transpose().compose(&data.sigma).compose(data.b.antipode());
    let mut w = HashMap::new();
    for k in 0..m {
        for j in 0..n {
            w.insert((k, j), data.sandwich(k, j, &tau1, &data.sigma, None, None));
        }
    }
    let unit = alg_a.unit().tensor(alg_b.unit());
    FinAlgebra::from_rule(field, double_labels(&data.a, &data.b), unit, |x, y| {
        let (i, j) = (x / n, x % n);
        let (k, l) = (y / n, y % n);
        let mut acc = Accumulator::new(field, m * n);
        for (qt, c) in w[&(k, j)].entries() {
            let (q, t) = (qt / n, qt % n);
            acc.add_vector(c, &alg_a.mul_basis(i, q).tensor(alg_b.mul_basis(t, l)));
        }
        acc.finish()
    })
}

/// The algebra `D(A, B; σ, φ_α)` on `A ⊗ B`. Associativity, the unit and the
/// two embeddings `a ↦ a ⊗ 1`, `b ↦ 1 ⊗ b` are checked before returning.
pub fn double_algebra(pairing: &PairingTable, phi_alpha: &Mat) -> Result<FinAlgebra> {
    let data = DoubleData::new(pairing);
    let d = build_double_algebra(&data, phi_alpha)?;
    if let Some(w) = d.associativity_witness() {
        return Err(Error::Invalid(format!("double algebra is not associative at {w:?}")));
    }
    if let Some(w) = d.unit_witness() {
        return Err(Error::Invalid(format!("double algebra unit fails at {w:?}")));
    }
    let (alg_a, alg_b) = (data.a.alg(), data.b.alg());
    let (m, n) = data.dims();
    for i in 0..m {
        for k in 0..m {
            let lhs = d.mul(&alg_a.basis(i).tensor(alg_b.unit()), &alg_a.basis(k).tensor(alg_b.unit()));
            if lhs != alg_a.mul_basis(i, k).tensor(alg_b.unit()) {
                return Err(Error::Invalid(format!("a ↦ a⊗1 is not multiplicative at ({i}, {k})")));
            }
        }
    }
    for j in 0..n {
        for l in 0..n {
            let lhs = d.mul(&alg_a.unit().tensor(&alg_b.basis(j)), &alg_a.unit().tensor(&alg_b.basis(l)));
            if lhs != alg_a.unit().tensor(alg_b.mul_basis(j, l)) {
                return Err(Error::Invalid(format!("b ↦ 1⊗b is not multiplicative at ({j}, {l})")));
            }
        }
    }
    Ok(d)
}

/// Dual bases `σ(e_i, f_j) = δ_{ij}` of a non-degenerate pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBases {
    pub e: Vec<Vector>,
    pub f: Vec<Vector>,
}

impl DualBases {
    /// `e` is the standard basis of `A`, `f_j` the `j`-th column of `σ⁻¹`.
    pub fn new(pairing: &PairingTable) -> Result<Self> {
        let sigma_inv = inverse(&pairing.sigma).map_err(|_| Error::DegeneratePairing)?;
        let field = pairing.sigma.field();
        let e = (0..pairing.a.dim()).map(|i| Vector::basis(field, pairing.a.dim(), i)).collect();
        let f = sigma_inv.columns().to_vec();
        let db = DualBases { e, f };
        db.check(pairing)?;
        Ok(db)
    }

    /// Custom bases; duality is checked.
    pub fn from_vectors(pairing: &PairingTable, e: Vec<Vector>, f: Vec<Vector>) -> Result<Self> {
        let db = DualBases { e, f };
        db.check(pairing)?;
        Ok(db)
    }

    fn check(&self, pairing: &PairingTable) -> Result<()> {
        if self.e.len() != self.f.len() || self.e.len() != pairing.a.dim() {
            return Err(Error::Shape("dual bases must have dim A elements each".into()));
        }
        for (i, e) in self.e.iter().enumerate() {
            for (j, f) in self.f.iter().enumerate() {
                let v = pairing.value(e, f);
                let ok = if i == j { v.is_one() } else { v.is_zero() };
                if !ok {
                    return Err(Error::Invalid(format!("σ(e_{i}, f_{j}) = {v}, bases are not dual")));
                }
            }
        }
        Ok(())
    }

    /// The canonical element `Σ e_i ⊗ f_i ∈ A ⊗ B`.
    pub fn canonical(&self) -> Vector {
        let mut it = self.e.iter().zip(&self.f);
        let (e0, f0) = it.next().expect("nonempty bases");
        it.fold(e0.tensor(f0), |acc, (e, f)| acc.add(&e.tensor(f)))
    }
}

/// The dual-basis identities behind the double's R-matrix:
/// `Σ S(e_i)e_j ⊗ f_i f_j = 1 ⊗ 1`, `Σ e_i ⊗ Δ(f_i) = Σ e_i e_j ⊗ f_j ⊗ f_i`,
/// `Σ Δ(e_i) ⊗ f_i = Σ e_i ⊗ e_j ⊗ f_i f_j`.
pub fn verify_dual_bases(pairing: &PairingTable, db: &DualBases) -> VerificationReport {
    let (a, b) = (&*pairing.a, &*pairing.b);
    let (alg_a, alg_b) = (a.alg(), b.alg());
    let (m, n) = (a.dim(), b.dim());
    let field = a.field();
    let k = db.e.len();
    let mut uqd1 = Accumulator::new(field, m * n);
    let mut uqd2_rhs = Accumulator::new(field, m * n * n);
    let mut uqd3_rhs = Accumulator::new(field, m * m * n);
    let mut uqd2_lhs = Accumulator::new(field, m * n * n);
    let mut uqd3_lhs = Accumulator::new(field, m * m * n);
    let one = field.one();
    for i in 0..k {
        let (ei, fi) = (&db.e[i], &db.f[i]);
        uqd2_lhs.add_vector(&one, &ei.tensor(&b.comult().apply(fi)));
        uqd3_lhs.add_vector(&one, &a.comult().apply(ei).tensor(fi));
        let sei = a.antipode().apply(ei);
        for j in 0..k {
            let (ej, fj) = (&db.e[j], &db.f[j]);
            uqd1.add_vector(&one, &alg_a.mul(&sei, ej).tensor(&alg_b.mul(fi, fj)));
            uqd2_rhs.add_vector(&one, &alg_a.mul(ei, ej).tensor(fj).tensor(fi));
            uqd3_rhs.add_vector(&one, &ei.tensor(ej).tensor(&alg_b.mul(fi, fj)));
        }
    }
    let unit = alg_a.unit().tensor(alg_b.unit());
    let diff = |x: Vector, y: Vector| x.first_difference(&y).map(|i| vec![i]);
    VerificationReport::new(vec![
        AxiomResult::from_check("uqd1", vec![], diff(uqd1.finish(), unit)),
        AxiomResult::from_check("uqd2", vec![], diff(uqd2_lhs.finish(), uqd2_rhs.finish())),
        AxiomResult::from_check("uqd3", vec![], diff(uqd3_lhs.finish(), uqd3_rhs.finish())),
    ])
}

type TwistRule<G> = dyn Fn(&<G as GroupOracle>::Elem) -> Result<Vector> + Send + Sync;

/// The Hopf π-coalgebra `D(A, B; σ, φ)`, optionally crossed by
/// `φ_β ⊗ ψ_β` and quasitriangular via dual bases.
pub struct TwistedDouble<G: GroupOracle> {
    data: DoubleData,
    phi: Arc<HopfAction<G>>,
    psi: Option<Arc<HopfAction<G>>>,
    compatible: RwLock<HashSet<String>>,
    rmatrix: Option<(Vector, Vector)>,
    twist: Option<Box<TwistRule<G>>>,
}

impl<G: GroupOracle> TwistedDouble<G> {
    pub fn new(pairing: &PairingTable, phi: Arc<HopfAction<G>>) -> Result<Self> {
        if !Arc::ptr_eq(phi.target(), &pairing.a) && **phi.target() != *pairing.a {
            return Err(Error::Invalid("the action does not act on the first algebra of the pairing".into()));
        }
        Ok(TwistedDouble {
            data: DoubleData::new(pairing),
            phi,
            psi: None,
            compatible: RwLock::new(HashSet::new()),
            rmatrix: None,
            twist: None,
        })
    }

    /// Installs the crossing `φ_β ⊗ ψ_β`. Compatibility of `ψ` is checked
    /// lazily, once per color, when a crossing is first requested.
    pub fn with_crossing(mut self, psi: Arc<HopfAction<G>>) -> Self {
        self.psi = Some(psi);
        self
    }

    /// Installs `R = Σ (e_i ⊗ 1) ⊗ (1 ⊗ f_i)` and `R⁻¹ = Σ (S(e_i) ⊗ 1) ⊗ (1 ⊗ f_i)`.
    /// Fails if a dual-basis identity does not hold.
    pub fn with_rmatrix(mut self, pairing: &PairingTable, db: &DualBases) -> Result<Self> {
        let report = verify_dual_bases(pairing, db);
        if let Some(f) = report.failures().next() {
            return Err(Error::Invalid(format!("dual-basis identity {} fails", f.axiom)));
        }
        let (alg_a, alg_b) = (self.data.a.alg(), self.data.b.alg());
        let field = self.data.field();
        let (m, n) = self.data.dims();
        let mut r = Accumulator::new(field, (m * n) * (m * n));
        let mut rinv = Accumulator::new(field, (m * n) * (m * n));
        let one = field.one();
        for (e, f) in db.e.iter().zip(&db.f) {
            let right = alg_a.unit().tensor(f);
            r.add_vector(&one, &e.tensor(alg_b.unit()).tensor(&right));
            rinv.add_vector(&one, &self.data.a.antipode().apply(e).tensor(alg_b.unit()).tensor(&right));
        }
        self.rmatrix = Some((r.finish(), rinv.finish()));
        Ok(self)
    }

    /// Installs a twist given by a rule (the generic construction yields none).
    pub fn with_twist(mut self, rule: impl Fn(&G::Elem) -> Result<Vector> + Send + Sync + 'static) -> Self {
        self.twist = Some(Box::new(rule));
        self
    }

    pub fn into_picoalgebra(self) -> HopfPiCoalgebra<G> {
        let group = self.phi.group().clone();
        HopfPiCoalgebra::new(group, Arc::new(self))
    }

    fn ensure_compatible(&self, psi: &HopfAction<G>, beta: &G::Elem) -> Result<()> {
        let key = self.phi.group().key(beta);
        if self.compatible.read().expect("lock").contains(&key) {
            return Ok(());
        }
        if let Some(witness) = compatibility_witness(&self.data.sigma, &*self.phi.matrix(beta)?, &*psi.matrix(beta)?) {
            return Err(Error::Incompatible { color: key, witness });
        }
        self.compatible.write().expect("lock").insert(key);
        Ok(())
    }
}

impl<G: GroupOracle> PiStructure<G> for TwistedDouble<G> {
    fn component(&self, alpha: &G::Elem) -> Result<FinAlgebra> {
        let d = build_double_algebra(&self.data, &*self.phi.matrix(alpha)?)?;
        if let Some(w) = d.associativity_witness() {
            return Err(Error::Invalid(format!("double algebra is not associative at {w:?}")));
        }
        Ok(d)
    }

    fn comult(&self, _alpha: &G::Elem, beta: &G::Elem) -> Result<Mat> {
        let (m, n) = self.data.dims();
        let phi_b = self.phi.matrix(beta)?;
        let (da, db) = (self.data.a.comult(), self.data.b.comult());
        let mut columns = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                let t = da.column(i).tensor(db.column(j));
                let t = permute_legs(&t, &[m, m, n, n], &[0, 2, 1, 3]);
                columns.push(apply_legs(&[Leg::Map(&phi_b), Leg::Id(n), Leg::Id(m), Leg::Id(n)], &t));
            }
        }
        Mat::from_columns(self.data.field(), (m * n) * (m * n), columns)
    }

    fn counit(&self) -> Result<Mat> {
        Ok(self.data.a.counit().kron(self.data.b.counit()))
    }

    fn antipode(&self, alpha: &G::Elem) -> Result<Mat> {
        let (m, n) = self.data.dims();
        let phi_a = self.phi.matrix(alpha)?;
        let sb = self.data.b.antipode();
        // τ3(p, s) = σ(φ_α(e_p), f_s), τ4(r, u) = σ(e_r, S(f_u))
        let tau3 = phi_a.transpose().compose(&self.data.sigma);
        let tau4 = self.data.sigma.compose(sb);
        let left = phi_a.compose(self.data.a.antipode());
        let columns = (0..m * n)
            .map(|x| self.data.sandwich(x / n, x % n, &tau3, &tau4, Some(&left), Some(sb)))
            .collect();
        Mat::from_columns(self.data.field(), m * n, columns)
    }

    fn crossing(&self, beta: &G::Elem, _alpha: &G::Elem) -> Option<Result<Mat>> {
        let psi = self.psi.as_ref()?;
        Some((|| {
            self.ensure_compatible(psi, beta)?;
            Ok(self.phi.matrix(beta)?.kron(&*psi.matrix(beta)?))
        })())
    }

    fn rmatrix(&self, _alpha: &G::Elem, _beta: &G::Elem) -> Option<Result<Vector>> {
        self.rmatrix.as_ref().map(|(r, _)| Ok(r.clone()))
    }

    fn rmatrix_inverse(&self, _alpha: &G::Elem, _beta: &G::Elem) -> Option<Result<Vector>> {
        self.rmatrix.as_ref().map(|(_, r)| Ok(r.clone()))
    }

    fn twist(&self, alpha: &G::Elem) -> Option<Result<Vector>> {
        self.twist.as_ref().map(|t| t(alpha))
    }
}

/// `R_{α,β} R_{α,β}⁻¹ = 1 = R_{α,β}⁻¹ R_{α,β}` for the closed-form inverse.
pub fn verify_rinverse_formula<G: GroupOracle>(
    pi: &HopfPiCoalgebra<G>,
    colors: &[G::Elem],
) -> Result<VerificationReport> {
    let g = pi.group();
    let mut entries = Vec::new();
    for a in colors {
        for b in colors {
            let (ha, hb) = (pi.component(a)?, pi.component(b)?);
            let algs = [&*ha, &*hb];
            let (r, rinv) = (pi.rmatrix(a, b)?, pi.rmatrix_inverse(a, b)?);
            let unit = tensor_unit(&algs);
            let w = tensor_mul(&algs, &r, &rinv)
                .first_difference(&unit)
                .or(tensor_mul(&algs, &rinv, &r).first_difference(&unit))
                .map(|k| vec![k]);
            entries.push(AxiomResult::from_check("rinverse-formula", vec![g.key(a), g.key(b)], w));
        }
    }
    Ok(VerificationReport::new(entries))
}
