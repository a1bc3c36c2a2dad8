//! Hopf π-coalgebras: a family of algebras `H_α` indexed by a group, with
//! comultiplications `Δ_{α,β}: H_{αβ} → H_α ⊗ H_β`, a counit on `H_1`,
//! antipodes `S_α: H_α → H_{α⁻¹}` and optional crossing, R-matrix and twist.
//! Components are produced on demand by a [`PiStructure`] and cached.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{quotient_algebra, tensor_inverse, tensor_mul, tensor_unit, FinAlgebra};
use crate::report::{AxiomResult, VerificationReport};
use crate::tensor::{apply_legs, flip, flip_leg_embed, EchelonBasis, Leg, LegPattern, Mat, Vector};

/// Group through which components are indexed.
pub trait GroupOracle: Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Canonical string form, used for cache keys, reports and file names.
    fn key(&self, a: &Self::Elem) -> String;
    fn parse_key(&self, s: &str) -> Result<Self::Elem>;
    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
    fn descriptor(&self) -> serde_json::Value;

    /// `b a b⁻¹`.
    fn conj(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(b, a), &self.inv(b))
    }
}

/// The one-element group; π-coalgebras over it are Hopf algebras.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialGroup;

impl GroupOracle for TrivialGroup {
    type Elem = ();

    fn identity(&self) {}
    fn mul(&self, _: &(), _: &()) {}
    fn inv(&self, _: &()) {}

    fn key(&self, _: &()) -> String {
        "1".into()
    }

    fn parse_key(&self, s: &str) -> Result<()> {
        match s.trim() {
            "1" | "e" | "" => Ok(()),
            other => Err(Error::Invalid(format!("'{other}' is not an element of the trivial group"))),
        }
    }

    fn elements(&self) -> Option<Vec<()>> {
        Some(vec![()])
    }

    fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({ "kind": "trivial" })
    }
}

/// Source of the structure maps. Optional structure defaults to absent.
pub trait PiStructure<G: GroupOracle>: Send + Sync {
    fn component(&self, alpha: &G::Elem) -> Result<FinAlgebra>;
    /// `Δ_{α,β}` as a `(d_α d_β) × d_{αβ}` matrix.
    fn comult(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Mat>;
    /// `ε: H_1 → k` as a `1 × d_1` matrix.
    fn counit(&self) -> Result<Mat>;
    fn antipode(&self, alpha: &G::Elem) -> Result<Mat>;
    /// `φ_β: H_α → H_{βαβ⁻¹}`.
    fn crossing(&self, _beta: &G::Elem, _alpha: &G::Elem) -> Option<Result<Mat>> {
        None
    }
    /// `R_{α,β} ∈ H_α ⊗ H_β`.
    fn rmatrix(&self, _alpha: &G::Elem, _beta: &G::Elem) -> Option<Result<Vector>> {
        None
    }
    /// Closed-form inverse of `R_{α,β}`; solved for when absent.
    fn rmatrix_inverse(&self, _alpha: &G::Elem, _beta: &G::Elem) -> Option<Result<Vector>> {
        None
    }
    /// `θ_α ∈ H_α`.
    fn twist(&self, _alpha: &G::Elem) -> Option<Result<Vector>> {
        None
    }
}

/// A cached structure item.
#[derive(Clone)]
pub enum Stored {
    Alg(Arc<FinAlgebra>),
    Map(Arc<Mat>),
    Elem(Arc<Vector>),
}

type CacheKey = (&'static str, Vec<String>);

/// A Hopf π-coalgebra with lazily computed, cached structure maps.
pub struct HopfPiCoalgebra<G: GroupOracle> {
    group: Arc<G>,
    provider: Arc<dyn PiStructure<G>>,
    cache: RwLock<HashMap<CacheKey, Stored>>,
}

fn missing(what: &str, colors: &[String]) -> Error {
    Error::Missing { what: what.into(), colors: colors.join(", ") }
}

impl<G: GroupOracle> HopfPiCoalgebra<G> {
    pub fn new(group: Arc<G>, provider: Arc<dyn PiStructure<G>>) -> Self {
        HopfPiCoalgebra { group, provider, cache: RwLock::new(HashMap::new()) }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn provider(&self) -> &Arc<dyn PiStructure<G>> {
        &self.provider
    }

    fn keys(&self, elems: &[&G::Elem]) -> Vec<String> {
        elems.iter().map(|e| self.group.key(e)).collect()
    }

    fn cached(&self, kind: &'static str, elems: &[&G::Elem], make: impl FnOnce() -> Result<Stored>) -> Result<Stored> {
        let key = (kind, self.keys(elems));
        if let Some(c) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(c.clone());
        }
        let value = make()?;
        self.cache.write().expect("cache lock").entry(key).or_insert(value.clone());
        Ok(value)
    }

    pub fn component(&self, alpha: &G::Elem) -> Result<Arc<FinAlgebra>> {
        match self.cached("component", &[alpha], || Ok(Stored::Alg(Arc::new(self.provider.component(alpha)?))))? {
            Stored::Alg(a) => Ok(a),
            _ => unreachable!("component cache holds algebras"),
        }
    }

    pub fn dim(&self, alpha: &G::Elem) -> Result<usize> {
        Ok(self.component(alpha)?.dim())
    }

    fn map(
        &self,
        kind: &'static str,
        elems: &[&G::Elem],
        shape: (usize, usize),
        make: impl FnOnce() -> Result<Mat>,
    ) -> Result<Arc<Mat>> {
        let c = self.cached(kind, elems, || {
            let m = make()?;
            if (m.rows(), m.cols()) != shape {
                return Err(Error::Shape(format!(
                    "{kind} at [{}] is {}x{}, expected {}x{}",
                    self.keys(elems).join(", "),
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
            Ok(Stored::Map(Arc::new(m)))
        })?;
        match c {
            Stored::Map(m) => Ok(m),
            _ => unreachable!("map cache holds matrices"),
        }
    }

    fn elem(&self, kind: &'static str, elems: &[&G::Elem], dim: usize, make: impl FnOnce() -> Result<Vector>) -> Result<Arc<Vector>> {
        let c = self.cached(kind, elems, || {
            let v = make()?;
            if v.dim() != dim {
                return Err(Error::Shape(format!(
                    "{kind} at [{}] has dimension {}, expected {dim}",
                    self.keys(elems).join(", "),
                    v.dim()
                )));
            }
            Ok(Stored::Elem(Arc::new(v)))
        })?;
        match c {
            Stored::Elem(v) => Ok(v),
            _ => unreachable!("element cache holds vectors"),
        }
    }

    pub fn comult(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Arc<Mat>> {
        let ab = self.group.mul(alpha, beta);
        let shape = (self.dim(alpha)? * self.dim(beta)?, self.dim(&ab)?);
        self.map("comult", &[alpha, beta], shape, || self.provider.comult(alpha, beta))
    }

    pub fn counit(&self) -> Result<Arc<Mat>> {
        let one = self.group.identity();
        let shape = (1, self.dim(&one)?);
        self.map("counit", &[], shape, || self.provider.counit())
    }

    pub fn antipode(&self, alpha: &G::Elem) -> Result<Arc<Mat>> {
        let inv = self.group.inv(alpha);
        let shape = (self.dim(&inv)?, self.dim(alpha)?);
        self.map("antipode", &[alpha], shape, || self.provider.antipode(alpha))
    }

    pub fn crossing(&self, beta: &G::Elem, alpha: &G::Elem) -> Result<Arc<Mat>> {
        let target = self.group.conj(beta, alpha);
        let shape = (self.dim(&target)?, self.dim(alpha)?);
        self.map("crossing", &[beta, alpha], shape, || {
            self.provider.crossing(beta, alpha).unwrap_or_else(|| Err(missing("crossing", &self.keys(&[beta, alpha]))))
        })
    }

    pub fn rmatrix(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Arc<Vector>> {
        let dim = self.dim(alpha)? * self.dim(beta)?;
        self.elem("rmatrix", &[alpha, beta], dim, || {
            self.provider.rmatrix(alpha, beta).unwrap_or_else(|| Err(missing("R-matrix", &self.keys(&[alpha, beta]))))
        })
    }

    /// `R_{α,β}⁻¹`, from the provider or solved for. `Error::Singular` if `R_{α,β}` has no inverse.
    pub fn rmatrix_inverse(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Arc<Vector>> {
        let dim = self.dim(alpha)? * self.dim(beta)?;
        self.elem("rmatrix-inverse", &[alpha, beta], dim, || match self.provider.rmatrix_inverse(alpha, beta) {
            Some(r) => r,
            None => {
                let r = self.rmatrix(alpha, beta)?;
                let (a, b) = (self.component(alpha)?, self.component(beta)?);
                tensor_inverse(&[&a, &b], &r)
            }
        })
    }

    pub fn twist(&self, alpha: &G::Elem) -> Result<Arc<Vector>> {
        let dim = self.dim(alpha)?;
        self.elem("twist", &[alpha], dim, || {
            self.provider.twist(alpha).unwrap_or_else(|| Err(missing("twist", &self.keys(&[alpha]))))
        })
    }

    pub fn twist_inverse(&self, alpha: &G::Elem) -> Result<Arc<Vector>> {
        let dim = self.dim(alpha)?;
        self.elem("twist-inverse", &[alpha], dim, || self.component(alpha)?.inverse_of(&*self.twist(alpha)?))
    }

    /// Every item computed so far, as `(kind, color keys, value)`, sorted.
    /// Kinds are `component`, `comult`, `counit`, `antipode`, `crossing`,
    /// `rmatrix`, `rmatrix-inverse`, `twist` and `twist-inverse`.
    pub fn snapshot(&self) -> Vec<(&'static str, Vec<String>, Stored)> {
        let mut out: Vec<_> =
            self.cache.read().expect("cache lock").iter().map(|((k, c), v)| (*k, c.clone(), v.clone())).collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out
    }

    pub fn is_crossed(&self) -> bool {
        let one = self.group.identity();
        self.crossing(&one, &one).is_ok()
    }

    pub fn is_quasitriangular(&self) -> bool {
        let one = self.group.identity();
        self.rmatrix(&one, &one).is_ok()
    }

    pub fn has_twist(&self) -> bool {
        self.twist(&self.group.identity()).is_ok()
    }
}

/// Turns an absent optional structure into `None`.
fn optional<T>(r: Result<T>) -> Option<Result<T>> {
    match r {
        Err(Error::Missing { .. }) => None,
        other => Some(other),
    }
}

type Job<'a> = Box<dyn Fn() -> Result<AxiomResult> + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<Job<'_>>) -> Result<VerificationReport> {
    let entries = jobs.into_par_iter().map(|j| j()).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(entries))
}

fn pairs<E: Clone>(colors: &[E]) -> Vec<(E, E)> {
    colors.iter().flat_map(|a| colors.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn triples<E: Clone>(colors: &[E]) -> Vec<(E, E, E)> {
    colors
        .iter()
        .flat_map(|a| colors.iter().flat_map(move |b| colors.iter().map(move |c| (a.clone(), b.clone(), c.clone()))))
        .collect()
}

/// First basis index `i < n` for which `ok(i)` is false.
fn first_bad(n: usize, ok: impl Fn(usize) -> Result<bool>) -> Result<Option<Vec<usize>>> {
    for i in 0..n {
        if !ok(i)? {
            return Ok(Some(vec![i]));
        }
    }
    Ok(None)
}

fn entry(axiom: &str, colors: Vec<String>, witness: Option<Vec<usize>>) -> AxiomResult {
    AxiomResult::from_check(axiom, colors, witness)
}

/// Core Hopf π-coalgebra axioms: algebra structure, coassociativity, counit,
/// antipode, multiplicativity of `Δ` and `ε`, and anti-(co)multiplicativity
/// of `S`, on basis elements for every tuple drawn from `colors`.
pub fn verify_picoalgebra<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let g = &pi.group;
    let one = g.identity();
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for a in colors {
        let a = a.clone();
        let one = one.clone();
        jobs.push(Box::new({
            let a = a.clone();
            move || Ok(entry("algebra-assoc", pi.keys(&[&a]), pi.component(&a)?.associativity_witness()))
        }));
        jobs.push(Box::new({
            let a = a.clone();
            move || Ok(entry("algebra-unit", pi.keys(&[&a]), pi.component(&a)?.unit_witness()))
        }));
        jobs.push(Box::new({
            let (a, one) = (a.clone(), one.clone());
            move || {
                let d = pi.dim(&a)?;
                let eps = pi.counit()?;
                let right = pi.comult(&a, &one)?;
                let left = pi.comult(&one, &a)?;
                let w = first_bad(d, |i| {
                    let e = Vector::basis(right.field(), d, i);
                    Ok(apply_legs(&[Leg::Id(d), Leg::Map(&eps)], right.column(i)) == e
                        && apply_legs(&[Leg::Map(&eps), Leg::Id(d)], left.column(i)) == e)
                })?;
                Ok(entry("eq2-counit", pi.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new({
            let (a, one) = (a.clone(), one.clone());
            move || {
                let ai = g.inv(&a);
                let h = pi.component(&a)?;
                let d1 = pi.dim(&one)?;
                let da = h.dim();
                let eps = pi.counit()?;
                let s_ai = pi.antipode(&ai)?;
                let d_left = pi.comult(&ai, &a)?;
                let d_right = pi.comult(&a, &ai)?;
                let w = first_bad(d1, |i| {
                    let expected = h.unit().scale(&eps.get(0, i));
                    let l = h.mul_tensor(&apply_legs(&[Leg::Map(&s_ai), Leg::Id(da)], d_left.column(i)));
                    let r = h.mul_tensor(&apply_legs(&[Leg::Id(da), Leg::Map(&s_ai)], d_right.column(i)));
                    Ok(l == expected && r == expected)
                })?;
                Ok(entry("eq3-antipode", pi.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new({
            let a = a.clone();
            move || {
                let h = pi.component(&a)?;
                let ai = g.inv(&a);
                let hi = pi.component(&ai)?;
                let s = pi.antipode(&a)?;
                let d = h.dim();
                if let Some(k) = s.apply(h.unit()).first_difference(hi.unit()) {
                    return Ok(entry("antipode-antimult", pi.keys(&[&a]), Some(vec![k])));
                }
                let mut w = None;
                'outer: for i in 0..d {
                    for j in 0..d {
                        let lhs = s.apply(h.mul_basis(i, j));
                        let rhs = hi.mul(s.column(j), s.column(i));
                        if lhs != rhs {
                            w = Some(vec![i, j]);
                            break 'outer;
                        }
                    }
                }
                Ok(entry("antipode-antimult", pi.keys(&[&a]), w))
            }
        }));
    }
    jobs.push(Box::new({
        let one = one.clone();
        move || {
            let h = pi.component(&one)?;
            let eps = pi.counit()?;
            let d = h.dim();
            let e = |v: &Vector| eps.apply(v).get(0);
            if !e(h.unit()).is_one() {
                return Ok(entry("counit-mult", vec![], Some(vec![0])));
            }
            let mut w = None;
            'outer: for i in 0..d {
                for j in 0..d {
                    if e(h.mul_basis(i, j)) != &eps.get(0, i) * &eps.get(0, j) {
                        w = Some(vec![i, j]);
                        break 'outer;
                    }
                }
            }
            Ok(entry("counit-mult", vec![], w))
        }
    }));
    jobs.push(Box::new({
        let one = one.clone();
        move || {
            let s = pi.antipode(&one)?;
            let eps = pi.counit()?;
            let w = eps.compose(&s).first_difference(&eps).map(|j| vec![j]);
            Ok(entry("antipode-counit", vec![], w))
        }
    }));
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let ab = g.mul(&a, &b);
                let (ha, hb, hab) = (pi.component(&a)?, pi.component(&b)?, pi.component(&ab)?);
                let delta = pi.comult(&a, &b)?;
                let d = hab.dim();
                let algs = [&*ha, &*hb];
                let mut w = None;
                'outer: for i in 0..d {
                    for j in 0..d {
                        let lhs = delta.apply(hab.mul_basis(i, j));
                        let rhs = tensor_mul(&algs, delta.column(i), delta.column(j));
                        if lhs != rhs {
                            w = Some(vec![i, j]);
                            break 'outer;
                        }
                    }
                }
                Ok(entry("comult-mult", pi.keys(&[&a, &b]), w))
            }
        }));
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let ab = g.mul(&a, &b);
                let (ha, hb, hab) = (pi.component(&a)?, pi.component(&b)?, pi.component(&ab)?);
                let delta = pi.comult(&a, &b)?;
                let w = delta.apply(hab.unit()).first_difference(&tensor_unit(&[&*ha, &*hb])).map(|k| vec![k]);
                Ok(entry("comult-unit", pi.keys(&[&a, &b]), w))
            }
        }));
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let ab = g.mul(&a, &b);
                let (ai, bi) = (g.inv(&a), g.inv(&b));
                let (dai, dbi) = (pi.dim(&ai)?, pi.dim(&bi)?);
                let s_ab = pi.antipode(&ab)?;
                let lhs = pi.comult(&bi, &ai)?.compose(&s_ab);
                let (sa, sb) = (pi.antipode(&a)?, pi.antipode(&b)?);
                let delta = pi.comult(&a, &b)?;
                let w = first_bad(pi.dim(&ab)?, |i| {
                    let rhs = flip(&apply_legs(&[Leg::Map(&sa), Leg::Map(&sb)], delta.column(i)), dai, dbi);
                    Ok(*lhs.column(i) == rhs)
                })?;
                Ok(entry("antipode-anticomult", pi.keys(&[&a, &b]), w))
            }
        }));
    }
    for (a, b, c) in triples(colors) {
        jobs.push(Box::new(move || {
            let ab = g.mul(&a, &b);
            let bc = g.mul(&b, &c);
            let abc = g.mul(&ab, &c);
            let (da, dc) = (pi.dim(&a)?, pi.dim(&c)?);
            let (d_ab_c, d_a_b) = (pi.comult(&ab, &c)?, pi.comult(&a, &b)?);
            let (d_a_bc, d_b_c) = (pi.comult(&a, &bc)?, pi.comult(&b, &c)?);
            let w = first_bad(pi.dim(&abc)?, |i| {
                let lhs = apply_legs(&[Leg::Map(&d_a_b), Leg::Id(dc)], d_ab_c.column(i));
                let rhs = apply_legs(&[Leg::Id(da), Leg::Map(&d_b_c)], d_a_bc.column(i));
                Ok(lhs == rhs)
            })?;
            Ok(entry("eq1-coassoc", pi.keys(&[&a, &b, &c]), w))
        }));
    }
    run_jobs(jobs)
}

/// Crossing axioms: each `φ_β` is an algebra isomorphism compatible with
/// `Δ`, `ε` and `S`, and `φ` is a group action.
pub fn verify_crossing<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let g = &pi.group;
    let one = g.identity();
    let mut jobs: Vec<Job<'_>> = Vec::new();
    jobs.push(Box::new({
        let colors = colors.to_vec();
        move || {
            let eps = pi.counit()?;
            for b in &colors {
                let phi = pi.crossing(b, &g.identity())?;
                if let Some(j) = eps.compose(&phi).first_difference(&eps) {
                    return Ok(entry("eq5-crossing-counit", pi.keys(&[b]), Some(vec![j])));
                }
            }
            Ok(entry("eq5-crossing-counit", vec![], None))
        }
    }));
    for a in colors {
        let (a, one) = (a.clone(), one.clone());
        jobs.push(Box::new(move || {
            let phi = pi.crossing(&one, &a)?;
            let w = (0..phi.cols()).find(|&j| *phi.column(j) != Vector::basis(phi.field(), phi.rows(), j)).map(|j| vec![j]);
            let w = if phi.rows() != phi.cols() { Some(vec![phi.rows(), phi.cols()]) } else { w };
            Ok(entry("crossing-identity", pi.keys(&[&a]), w))
        }));
    }
    for (b, a) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let target = g.conj(&b, &a);
                let (h, ht) = (pi.component(&a)?, pi.component(&target)?);
                let phi = pi.crossing(&b, &a)?;
                let colors = pi.keys(&[&b, &a]);
                if h.dim() != ht.dim() {
                    return Ok(entry("crossing-algebra-iso", colors, Some(vec![h.dim(), ht.dim()])));
                }
                if let Some(k) = phi.apply(h.unit()).first_difference(ht.unit()) {
                    return Ok(entry("crossing-algebra-iso", colors, Some(vec![k])));
                }
                let d = h.dim();
                for i in 0..d {
                    for j in 0..d {
                        if phi.apply(h.mul_basis(i, j)) != ht.mul(phi.column(i), phi.column(j)) {
                            return Ok(entry("crossing-algebra-iso", colors, Some(vec![i, j])));
                        }
                    }
                }
                let back = pi.crossing(&g.inv(&b), &target)?;
                let w = back.compose(&phi).first_difference(&Mat::identity(phi.field(), d)).map(|j| vec![j]);
                Ok(entry("crossing-algebra-iso", colors, w))
            }
        }));
        jobs.push(Box::new(move || {
            let target = g.conj(&b, &a);
            let lhs = pi.crossing(&b, &g.inv(&a))?.compose(&*pi.antipode(&a)?);
            let rhs = pi.antipode(&target)?.compose(&*pi.crossing(&b, &a)?);
            let w = lhs.first_difference(&rhs).map(|j| vec![j]);
            Ok(entry("crossing-antipode", pi.keys(&[&b, &a]), w))
        }));
    }
    for (b, a, c) in triples(colors) {
        jobs.push(Box::new({
            let (a, b, c) = (a.clone(), b.clone(), c.clone());
            move || {
                let ac = g.mul(&a, &c);
                let (ta, tc) = (g.conj(&b, &a), g.conj(&b, &c));
                let (pa, pc) = (pi.crossing(&b, &a)?, pi.crossing(&b, &c)?);
                let delta = pi.comult(&a, &c)?;
                let rhs = pi.comult(&ta, &tc)?.compose(&*pi.crossing(&b, &ac)?);
                let w = first_bad(pi.dim(&ac)?, |i| {
                    Ok(apply_legs(&[Leg::Map(&pa), Leg::Map(&pc)], delta.column(i)) == *rhs.column(i))
                })?;
                Ok(entry("eq4-crossing-comult", pi.keys(&[&b, &a, &c]), w))
            }
        }));
        // (α, β, γ) = (b, a, c) reads: φ_b φ_a = φ_{ba} on H_c
        jobs.push(Box::new(move || {
            let inner = pi.crossing(&a, &c)?;
            let outer = pi.crossing(&b, &g.conj(&a, &c))?;
            let direct = pi.crossing(&g.mul(&b, &a), &c)?;
            let w = outer.compose(&inner).first_difference(&direct).map(|j| vec![j]);
            Ok(entry("eq6-crossing-action", pi.keys(&[&b, &a, &c]), w))
        }));
    }
    run_jobs(jobs)
}

/// `(φ_β ⊗ ψ)` applied to the first leg of a two-leg element.
fn map_first(m: &Mat, d2: usize, v: &Vector) -> Vector {
    apply_legs(&[Leg::Map(m), Leg::Id(d2)], v)
}

fn map_second(d1: usize, m: &Mat, v: &Vector) -> Vector {
    apply_legs(&[Leg::Id(d1), Leg::Map(m)], v)
}

/// Quasitriangularity: invertibility of `R` and the four defining identities.
pub fn verify_quasitriangular<G: GroupOracle>(
    pi: &HopfPiCoalgebra<G>,
    colors: &[G::Elem],
) -> Result<VerificationReport> {
    let g = &pi.group;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                // a provider-supplied inverse is checked on both sides
                let w = match pi.rmatrix_inverse(&a, &b) {
                    Ok(rinv) => {
                        let (ha, hb) = (pi.component(&a)?, pi.component(&b)?);
                        let algs = [&*ha, &*hb];
                        let r = pi.rmatrix(&a, &b)?;
                        let unit = tensor_unit(&algs);
                        let left = tensor_mul(&algs, &r, &rinv);
                        let right = tensor_mul(&algs, &rinv, &r);
                        left.first_difference(&unit).or(right.first_difference(&unit)).map(|k| vec![k])
                    }
                    Err(Error::Singular) => Some(vec![]),
                    Err(e) => return Err(e),
                };
                Ok(entry("qt-rmatrix-invertible", pi.keys(&[&a, &b]), w))
            }
        }));
        jobs.push(Box::new(move || {
            let ab = g.mul(&a, &b);
            let ai = g.inv(&a);
            let aba = g.conj(&a, &b);
            let (ha, hb) = (pi.component(&a)?, pi.component(&b)?);
            let algs = [&*ha, &*hb];
            let r = pi.rmatrix(&a, &b)?;
            let delta = pi.comult(&a, &b)?;
            let delta_op = pi.comult(&aba, &a)?;
            let phi = pi.crossing(&ai, &aba)?;
            let w = first_bad(pi.dim(&ab)?, |i| {
                let lhs = tensor_mul(&algs, &r, delta.column(i));
                let twisted = flip(&map_first(&phi, ha.dim(), delta_op.column(i)), hb.dim(), ha.dim());
                Ok(lhs == tensor_mul(&algs, &twisted, &r))
            })?;
            Ok(entry("eq7-qt1", pi.keys(&[&a, &b]), w))
        }));
    }
    for (a, b, c) in triples(colors) {
        jobs.push(Box::new({
            let (a, b, c) = (a.clone(), b.clone(), c.clone());
            move || {
                let bc = g.mul(&b, &c);
                let (ha, hb, hc) = (pi.component(&a)?, pi.component(&b)?, pi.component(&c)?);
                let lhs = map_second(ha.dim(), &*pi.comult(&b, &c)?, &*pi.rmatrix(&a, &bc)?);
                let r13 = flip_leg_embed(&*pi.rmatrix(&a, &c)?, ha.dim(), hc.dim(), hb.unit(), LegPattern::P1b3)?;
                let r12 = flip_leg_embed(&*pi.rmatrix(&a, &b)?, ha.dim(), hb.dim(), hc.unit(), LegPattern::P12g)?;
                let rhs = tensor_mul(&[&ha, &hb, &hc], &r13, &r12);
                Ok(entry("eq8-qt2", pi.keys(&[&a, &b, &c]), lhs.first_difference(&rhs).map(|k| vec![k])))
            }
        }));
        jobs.push(Box::new({
            let (a, b, c) = (a.clone(), b.clone(), c.clone());
            move || {
                let ab = g.mul(&a, &b);
                let bcb = g.conj(&b, &c);
                let (ha, hb, hc) = (pi.component(&a)?, pi.component(&b)?, pi.component(&c)?);
                let lhs = map_first(&*pi.comult(&a, &b)?, hc.dim(), &*pi.rmatrix(&ab, &c)?);
                let shifted = map_second(ha.dim(), &*pi.crossing(&g.inv(&b), &bcb)?, &*pi.rmatrix(&a, &bcb)?);
                let r13 = flip_leg_embed(&shifted, ha.dim(), hc.dim(), hb.unit(), LegPattern::P1b3)?;
                let r23 = flip_leg_embed(&*pi.rmatrix(&b, &c)?, hb.dim(), hc.dim(), ha.unit(), LegPattern::Pa23)?;
                let rhs = tensor_mul(&[&ha, &hb, &hc], &r13, &r23);
                Ok(entry("eq9-qt3", pi.keys(&[&a, &b, &c]), lhs.first_difference(&rhs).map(|k| vec![k])))
            }
        }));
        // (β, α, γ) = (a, b, c)
        jobs.push(Box::new(move || {
            let (pb, pc) = (pi.crossing(&a, &b)?, pi.crossing(&a, &c)?);
            let lhs = apply_legs(&[Leg::Map(&pb), Leg::Map(&pc)], &*pi.rmatrix(&b, &c)?);
            let rhs = pi.rmatrix(&g.conj(&a, &b), &g.conj(&a, &c))?;
            Ok(entry("eq10-qt4", pi.keys(&[&a, &b, &c]), lhs.first_difference(&rhs).map(|k| vec![k])))
        }));
    }
    run_jobs(jobs)
}

/// Identities that follow from quasitriangularity: counit of `R`, the
/// inverse via the antipode, and the double antipode.
pub fn verify_r_derived<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let g = &pi.group;
    let one = g.identity();
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for a in colors {
        let (a, one) = (a.clone(), one.clone());
        jobs.push(Box::new(move || {
            let h = pi.component(&a)?;
            let eps = pi.counit()?;
            let left = apply_legs(&[Leg::Map(&eps), Leg::Id(h.dim())], &*pi.rmatrix(&one, &a)?);
            let right = apply_legs(&[Leg::Id(h.dim()), Leg::Map(&eps)], &*pi.rmatrix(&a, &one)?);
            let w = left.first_difference(h.unit()).or(right.first_difference(h.unit())).map(|k| vec![k]);
            Ok(entry("rderived-counit", pi.keys(&[&a]), w))
        }));
    }
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let ai = g.inv(&a);
                let db = pi.dim(&b)?;
                let m = pi.antipode(&ai)?.compose(&*pi.crossing(&a, &ai)?);
                let lhs = map_first(&m, db, &*pi.rmatrix(&ai, &b)?);
                let rhs = match pi.rmatrix_inverse(&a, &b) {
                    Ok(r) => r,
                    Err(Error::Singular) => return Ok(entry("rderived-antipode-inverse", pi.keys(&[&a, &b]), Some(vec![]))),
                    Err(e) => return Err(e),
                };
                let w = lhs.first_difference(&rhs).map(|k| vec![k]);
                Ok(entry("rderived-antipode-inverse", pi.keys(&[&a, &b]), w))
            }
        }));
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let da = pi.dim(&a)?;
                let rinv = match pi.rmatrix_inverse(&a, &b) {
                    Ok(r) => r,
                    Err(Error::Singular) => return Ok(entry("rderived-inverse-antipode", pi.keys(&[&a, &b]), Some(vec![]))),
                    Err(e) => return Err(e),
                };
                let lhs = map_second(da, &*pi.antipode(&b)?, &rinv);
                let rhs = pi.rmatrix(&a, &g.inv(&b))?;
                Ok(entry("rderived-inverse-antipode", pi.keys(&[&a, &b]), lhs.first_difference(&rhs).map(|k| vec![k])))
            }
        }));
        jobs.push(Box::new(move || {
            let (ai, bi) = (g.inv(&a), g.inv(&b));
            let (sa, sb) = (pi.antipode(&a)?, pi.antipode(&b)?);
            let lhs = apply_legs(&[Leg::Map(&sa), Leg::Map(&sb)], &*pi.rmatrix(&a, &b)?);
            let rhs = map_first(&*pi.crossing(&a, &ai)?, pi.dim(&bi)?, &*pi.rmatrix(&ai, &bi)?);
            Ok(entry("rderived-double-antipode", pi.keys(&[&a, &b]), lhs.first_difference(&rhs).map(|k| vec![k])))
        }));
    }
    run_jobs(jobs)
}

/// Colored Yang-Baxter equation in `H_α ⊗ H_β ⊗ H_γ`.
pub fn verify_colored_ybe<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let g = &pi.group;
    let jobs: Vec<Job<'_>> = triples(colors)
        .into_iter()
        .map(|(a, b, c)| -> Job<'_> {
            Box::new(move || {
                let (ha, hb, hc) = (pi.component(&a)?, pi.component(&b)?, pi.component(&c)?);
                let (da, db, dc) = (ha.dim(), hb.dim(), hc.dim());
                let algs = [&*ha, &*hb, &*hc];
                let r12 = flip_leg_embed(&*pi.rmatrix(&a, &b)?, da, db, hc.unit(), LegPattern::P12g)?;
                let r13 = flip_leg_embed(&*pi.rmatrix(&a, &c)?, da, dc, hb.unit(), LegPattern::P1b3)?;
                let r23 = flip_leg_embed(&*pi.rmatrix(&b, &c)?, db, dc, ha.unit(), LegPattern::Pa23)?;
                let bcb = g.conj(&b, &c);
                let shifted = map_second(da, &*pi.crossing(&g.inv(&b), &bcb)?, &*pi.rmatrix(&a, &bcb)?);
                let r13s = flip_leg_embed(&shifted, da, dc, hb.unit(), LegPattern::P1b3)?;
                let lhs = tensor_mul(&algs, &tensor_mul(&algs, &r23, &r13), &r12);
                let rhs = tensor_mul(&algs, &tensor_mul(&algs, &r12, &r13s), &r23);
                Ok(entry("eq20-colored-ybe", pi.keys(&[&a, &b, &c]), lhs.first_difference(&rhs).map(|k| vec![k])))
            })
        })
        .collect();
    run_jobs(jobs)
}

/// Twist axioms: invertibility, conjugation by `θ_α` realises `φ_α⁻¹`,
/// compatibility with `S`, `φ` and `Δ`.
pub fn verify_ribbon<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let g = &pi.group;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for a in colors {
        let a = a.clone();
        jobs.push(Box::new({
            let a = a.clone();
            move || {
                let w = match pi.twist_inverse(&a) {
                    Ok(_) => None,
                    Err(Error::Singular) => Some(vec![]),
                    Err(e) => return Err(e),
                };
                Ok(entry("twist-invertible", pi.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new({
            let a = a.clone();
            move || {
                let h = pi.component(&a)?;
                let theta = pi.twist(&a)?;
                let phi = pi.crossing(&a, &a)?;
                let w = first_bad(h.dim(), |i| Ok(h.mul(&theta, phi.column(i)) == h.mul(&h.basis(i), &theta)))?;
                Ok(entry("twist1-conjugation", pi.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new(move || {
            let lhs = pi.antipode(&a)?.apply(&*pi.twist(&a)?);
            let rhs = pi.twist(&g.inv(&a))?;
            Ok(entry("twist2-antipode", pi.keys(&[&a]), lhs.first_difference(&rhs).map(|k| vec![k])))
        }));
    }
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            // (β, α) = (a, b)
            move || {
                let lhs = pi.crossing(&a, &b)?.apply(&*pi.twist(&b)?);
                let rhs = pi.twist(&g.conj(&a, &b))?;
                Ok(entry("twist3-crossing", pi.keys(&[&a, &b]), lhs.first_difference(&rhs).map(|k| vec![k])))
            }
        }));
        jobs.push(Box::new(move || {
            let ab = g.mul(&a, &b);
            let ai = g.inv(&a);
            let aba = g.conj(&a, &b);
            let (ha, hb) = (pi.component(&a)?, pi.component(&b)?);
            let algs = [&*ha, &*hb];
            let lhs = pi.comult(&a, &b)?.apply(&*pi.twist(&ab)?);
            let moved = map_first(&*pi.crossing(&ai, &aba)?, ha.dim(), &*pi.rmatrix(&aba, &a)?);
            let r21 = flip(&moved, hb.dim(), ha.dim());
            let thetas = pi.twist(&a)?.tensor(&*pi.twist(&b)?);
            let rhs = tensor_mul(&algs, &tensor_mul(&algs, &thetas, &r21), &*pi.rmatrix(&a, &b)?);
            Ok(entry("twist4-comult", pi.keys(&[&a, &b]), lhs.first_difference(&rhs).map(|k| vec![k])))
        }));
    }
    run_jobs(jobs)
}

struct CoidealData {
    basis: EchelonBasis,
    proj: Mat,
    sect: Mat,
}

type CoidealRule<G> = dyn Fn(&<G as GroupOracle>::Elem) -> Result<Vec<Vector>> + Send + Sync;

/// A family of subspaces `I_α ⊆ H_α` given by spanning sets.
pub struct CoidealFamily<G: GroupOracle> {
    rule: Box<CoidealRule<G>>,
    cache: RwLock<HashMap<String, Arc<CoidealData>>>,
}

impl<G: GroupOracle> CoidealFamily<G> {
    pub fn new(rule: impl Fn(&G::Elem) -> Result<Vec<Vector>> + Send + Sync + 'static) -> Self {
        CoidealFamily { rule: Box::new(rule), cache: RwLock::new(HashMap::new()) }
    }

    fn data(&self, pi: &HopfPiCoalgebra<G>, alpha: &G::Elem) -> Result<Arc<CoidealData>> {
        let key = pi.group.key(alpha);
        if let Some(d) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(d.clone());
        }
        let dim = pi.dim(alpha)?;
        let basis = EchelonBasis::from_vectors(pi.component(alpha)?.field(), dim, &(self.rule)(alpha)?)?;
        let data = Arc::new(CoidealData { proj: basis.projection(), sect: basis.section(), basis });
        self.cache.write().expect("cache lock").entry(key).or_insert(data.clone());
        Ok(data)
    }

    pub fn basis(&self, pi: &HopfPiCoalgebra<G>, alpha: &G::Elem) -> Result<EchelonBasis> {
        Ok(self.data(pi, alpha)?.basis.clone())
    }

    pub fn projection(&self, pi: &HopfPiCoalgebra<G>, alpha: &G::Elem) -> Result<Mat> {
        Ok(self.data(pi, alpha)?.proj.clone())
    }
}

/// Conditions for the family to be a Hopf π-coideal: each `I_α` is an
/// ideal, `Δ_{α,β}(I_{αβ}) ⊆ I_α ⊗ H_β + H_α ⊗ I_β`, `ε(I_1) = 0`,
/// `S_α(I_α) ⊆ I_{α⁻¹}` and, when crossed, `φ_β(I_α) ⊆ I_{βαβ⁻¹}`.
pub fn verify_coideal<G: GroupOracle>(
    pi: &HopfPiCoalgebra<G>,
    family: &CoidealFamily<G>,
    colors: &[G::Elem],
) -> Result<VerificationReport> {
    let g = &pi.group;
    let crossed = pi.is_crossed();
    let mut jobs: Vec<Job<'_>> = Vec::new();
    jobs.push(Box::new(move || {
        let eps = pi.counit()?;
        let data = family.data(pi, &g.identity())?;
        let w = data.basis.rows().find(|(_, v)| !eps.apply(v).is_zero()).map(|(p, _)| vec![p]);
        Ok(entry("coideal-counit", vec![], w))
    }));
    for a in colors {
        let a = a.clone();
        jobs.push(Box::new({
            let a = a.clone();
            move || {
                let h = pi.component(&a)?;
                let data = family.data(pi, &a)?;
                let mut w = None;
                'outer: for (p, v) in data.basis.rows() {
                    for i in 0..h.dim() {
                        let e = h.basis(i);
                        if !data.basis.contains(&h.mul(&e, v)) || !data.basis.contains(&h.mul(v, &e)) {
                            w = Some(vec![p, i]);
                            break 'outer;
                        }
                    }
                }
                Ok(entry("coideal-ideal", pi.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new(move || {
            let s = pi.antipode(&a)?;
            let target = family.data(pi, &g.inv(&a))?;
            let data = family.data(pi, &a)?;
            let w = data.basis.rows().find(|(_, v)| !target.basis.contains(&s.apply(v))).map(|(p, _)| vec![p]);
            Ok(entry("coideal-antipode", pi.keys(&[&a]), w))
        }));
    }
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || {
                let (pa, pb) = (family.data(pi, &a)?, family.data(pi, &b)?);
                let data = family.data(pi, &g.mul(&a, &b))?;
                let delta = pi.comult(&a, &b)?;
                let w = data
                    .basis
                    .rows()
                    .find(|(_, v)| !apply_legs(&[Leg::Map(&pa.proj), Leg::Map(&pb.proj)], &delta.apply(v)).is_zero())
                    .map(|(p, _)| vec![p]);
                Ok(entry("coideal-comult", pi.keys(&[&a, &b]), w))
            }
        }));
        if crossed {
            // (β, α) = (a, b)
            jobs.push(Box::new(move || {
                let phi = pi.crossing(&a, &b)?;
                let target = family.data(pi, &g.conj(&a, &b))?;
                let data = family.data(pi, &b)?;
                let w = data.basis.rows().find(|(_, v)| !target.basis.contains(&phi.apply(v))).map(|(p, _)| vec![p]);
                Ok(entry("coideal-crossing", pi.keys(&[&a, &b]), w))
            }));
        }
    }
    run_jobs(jobs)
}

/// Structure maps induced on `H_α / I_α`.
struct QuotientStructure<G: GroupOracle> {
    base: Arc<HopfPiCoalgebra<G>>,
    family: Arc<CoidealFamily<G>>,
}

impl<G: GroupOracle> QuotientStructure<G> {
    fn two_leg(&self, a: &G::Elem, b: &G::Elem, v: &Vector) -> Result<Vector> {
        let (pa, pb) = (self.family.data(&self.base, a)?, self.family.data(&self.base, b)?);
        Ok(apply_legs(&[Leg::Map(&pa.proj), Leg::Map(&pb.proj)], v))
    }

    /// `p_target ∘ m ∘ s_source`.
    fn induced(&self, target: &G::Elem, m: &Mat, source: &G::Elem) -> Result<Mat> {
        let p = self.family.data(&self.base, target)?;
        let s = self.family.data(&self.base, source)?;
        Ok(p.proj.compose(m).compose(&s.sect))
    }
}

impl<G: GroupOracle> PiStructure<G> for QuotientStructure<G> {
    fn component(&self, alpha: &G::Elem) -> Result<FinAlgebra> {
        quotient_algebra(&*self.base.component(alpha)?, &self.family.data(&self.base, alpha)?.basis)
    }

    fn comult(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Mat> {
        let g = &self.base.group;
        let ab = g.mul(alpha, beta);
        let delta = self.base.comult(alpha, beta)?;
        let s = &self.family.data(&self.base, &ab)?.sect;
        let cols = s.columns().iter().map(|c| self.two_leg(alpha, beta, &delta.apply(c))).collect::<Result<Vec<_>>>()?;
        let rows = self.family.data(&self.base, alpha)?.proj.rows() * self.family.data(&self.base, beta)?.proj.rows();
        Mat::from_columns(delta.field(), rows, cols)
    }

    fn counit(&self) -> Result<Mat> {
        let one = self.base.group.identity();
        Ok(self.base.counit()?.compose(&self.family.data(&self.base, &one)?.sect))
    }

    fn antipode(&self, alpha: &G::Elem) -> Result<Mat> {
        self.induced(&self.base.group.inv(alpha), &*self.base.antipode(alpha)?, alpha)
    }

    fn crossing(&self, beta: &G::Elem, alpha: &G::Elem) -> Option<Result<Mat>> {
        let phi = optional(self.base.crossing(beta, alpha))?;
        Some(phi.and_then(|phi| self.induced(&self.base.group.conj(beta, alpha), &phi, alpha)))
    }

    fn rmatrix(&self, alpha: &G::Elem, beta: &G::Elem) -> Option<Result<Vector>> {
        let r = optional(self.base.rmatrix(alpha, beta))?;
        Some(r.and_then(|r| self.two_leg(alpha, beta, &r)))
    }

    fn rmatrix_inverse(&self, alpha: &G::Elem, beta: &G::Elem) -> Option<Result<Vector>> {
        let r = optional(self.base.rmatrix_inverse(alpha, beta))?;
        Some(r.and_then(|r| self.two_leg(alpha, beta, &r)))
    }

    fn twist(&self, alpha: &G::Elem) -> Option<Result<Vector>> {
        let t = optional(self.base.twist(alpha))?;
        Some(t.and_then(|t| Ok(self.family.data(&self.base, alpha)?.proj.apply(&t))))
    }
}

/// The quotient π-coalgebra `H / I`. The family is assumed to satisfy
/// [`verify_coideal`]; otherwise the induced maps are not well defined.
pub fn quotient_picoalgebra<G: GroupOracle>(
    base: Arc<HopfPiCoalgebra<G>>,
    family: Arc<CoidealFamily<G>>,
) -> HopfPiCoalgebra<G> {
    let group = base.group.clone();
    HopfPiCoalgebra::new(group, Arc::new(QuotientStructure { base, family }))
}

/// The component at the identity color as an ordinary Hopf algebra,
/// keeping `φ_1`, `R_{1,1}` and `θ_1` when present.
struct IdentityComponent<G: GroupOracle> {
    source: Arc<HopfPiCoalgebra<G>>,
    one: G::Elem,
}

impl<G: GroupOracle> PiStructure<TrivialGroup> for IdentityComponent<G> {
    fn component(&self, _: &()) -> Result<FinAlgebra> {
        Ok((*self.source.component(&self.one)?).clone())
    }

    fn comult(&self, _: &(), _: &()) -> Result<Mat> {
        Ok((*self.source.comult(&self.one, &self.one)?).clone())
    }

    fn counit(&self) -> Result<Mat> {
        Ok((*self.source.counit()?).clone())
    }

    fn antipode(&self, _: &()) -> Result<Mat> {
        Ok((*self.source.antipode(&self.one)?).clone())
    }

    fn crossing(&self, _: &(), _: &()) -> Option<Result<Mat>> {
        self.source.is_crossed().then(|| self.source.crossing(&self.one, &self.one).map(|m| (*m).clone()))
    }

    fn rmatrix(&self, _: &(), _: &()) -> Option<Result<Vector>> {
        self.source.is_quasitriangular().then(|| self.source.rmatrix(&self.one, &self.one).map(|r| (*r).clone()))
    }

    fn twist(&self, _: &()) -> Option<Result<Vector>> {
        self.source.has_twist().then(|| self.source.twist(&self.one).map(|t| (*t).clone()))
    }
}

/// Restricts `pi` to its identity component, a classical Hopf algebra.
pub fn identity_component<G: GroupOracle>(pi: Arc<HopfPiCoalgebra<G>>) -> HopfPiCoalgebra<TrivialGroup> {
    let one = pi.group().identity();
    HopfPiCoalgebra::new(Arc::new(TrivialGroup), Arc::new(IdentityComponent { source: pi, one }))
}

/// Named groups of axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Hopf,
    Crossing,
    Quasitriangular,
    RDerived,
    ColoredYbe,
    Ribbon,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Hopf, Suite::Crossing, Suite::Quasitriangular, Suite::RDerived, Suite::ColoredYbe, Suite::Ribbon];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Crossing => "crossing",
            Suite::Quasitriangular => "qt",
            Suite::RDerived => "rderived",
            Suite::ColoredYbe => "ybe",
            Suite::Ribbon => "ribbon",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }

    pub fn run<G: GroupOracle>(self, pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
        match self {
            Suite::Hopf => verify_picoalgebra(pi, colors),
            Suite::Crossing => verify_crossing(pi, colors),
            Suite::Quasitriangular => verify_quasitriangular(pi, colors),
            Suite::RDerived => verify_r_derived(pi, colors),
            Suite::ColoredYbe => verify_colored_ybe(pi, colors),
            Suite::Ribbon => verify_ribbon(pi, colors),
        }
    }

    /// Suites applicable to the structure present on `pi`.
    pub fn available<G: GroupOracle>(pi: &HopfPiCoalgebra<G>) -> Vec<Suite> {
        let mut out = vec![Suite::Hopf];
        if pi.is_crossed() {
            out.push(Suite::Crossing);
            if pi.is_quasitriangular() {
                out.extend([Suite::Quasitriangular, Suite::RDerived, Suite::ColoredYbe]);
                if pi.has_twist() {
                    out.push(Suite::Ribbon);
                }
            }
        }
        out
    }
}

/// Runs every applicable suite.
pub fn verify_all<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for s in Suite::available(pi) {
        report.merge(s.run(pi, colors)?);
    }
    Ok(report)
}

/// Compares two π-coalgebras map by map on the given colors. Algebras are
/// compared by multiplication table and unit; labels are ignored.
pub fn compare_picoalgebras<G: GroupOracle>(
    x: &HopfPiCoalgebra<G>,
    y: &HopfPiCoalgebra<G>,
    colors: &[G::Elem],
) -> Result<VerificationReport> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    let vec_diff = |a: &Vector, b: &Vector| {
        if a.dim() != b.dim() {
            Some(vec![a.dim(), b.dim()])
        } else {
            a.first_difference(b).map(|i| vec![i])
        }
    };
    let mat_diff = |a: &Mat, b: &Mat| {
        if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
            Some(vec![a.rows(), a.cols()])
        } else {
            a.first_difference(b).map(|j| vec![j])
        }
    };
    jobs.push(Box::new(move || Ok(entry("oracle-counit", vec![], mat_diff(&*x.counit()?, &*y.counit()?)))));
    for a in colors {
        let a = a.clone();
        jobs.push(Box::new({
            let a = a.clone();
            move || {
                let (p, q) = (x.component(&a)?, y.component(&a)?);
                let w = mat_diff(p.mult(), q.mult()).or_else(|| vec_diff(p.unit(), q.unit()));
                Ok(entry("oracle-algebra", x.keys(&[&a]), w))
            }
        }));
        jobs.push(Box::new({
            let a = a.clone();
            move || Ok(entry("oracle-antipode", x.keys(&[&a]), mat_diff(&*x.antipode(&a)?, &*y.antipode(&a)?)))
        }));
        if x.has_twist() || y.has_twist() {
            jobs.push(Box::new(move || Ok(entry("oracle-twist", x.keys(&[&a]), vec_diff(&*x.twist(&a)?, &*y.twist(&a)?)))));
        }
    }
    for (a, b) in pairs(colors) {
        jobs.push(Box::new({
            let (a, b) = (a.clone(), b.clone());
            move || Ok(entry("oracle-comult", x.keys(&[&a, &b]), mat_diff(&*x.comult(&a, &b)?, &*y.comult(&a, &b)?)))
        }));
        if x.is_crossed() || y.is_crossed() {
            let (a, b) = (a.clone(), b.clone());
            jobs.push(Box::new(move || {
                Ok(entry("oracle-crossing", x.keys(&[&a, &b]), mat_diff(&*x.crossing(&a, &b)?, &*y.crossing(&a, &b)?)))
            }));
        }
        if x.is_quasitriangular() || y.is_quasitriangular() {
            jobs.push(Box::new({
                let (a, b) = (a.clone(), b.clone());
                move || Ok(entry("oracle-rmatrix", x.keys(&[&a, &b]), vec_diff(&*x.rmatrix(&a, &b)?, &*y.rmatrix(&a, &b)?)))
            }));
            jobs.push(Box::new(move || {
                let w = vec_diff(&*x.rmatrix_inverse(&a, &b)?, &*y.rmatrix_inverse(&a, &b)?);
                Ok(entry("oracle-rmatrix-inverse", x.keys(&[&a, &b]), w))
            }));
        }
    }
    run_jobs(jobs)
}
