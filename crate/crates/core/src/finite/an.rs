//! The Hopf algebras `A_n`, `B_n = A_n^{cop}`, their pairing, the action of
//! `GL_n` on `A_n`, and the π-coalgebra `𝒜_n` obtained from the twisted
//! double by identifying `g` with `h`.
//!
//! Basis of `A_n`: `g^k x_S` at index `k·2^n + S`, where bit `i` of the mask
//! `S` stands for `x_{i+1}`. `B_n` uses the same indexing for `h^k y_S`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::double::{dual_action, DualBases, HopfAction, TwistedDouble};
use crate::error::{Error, Result};
use crate::hopf::{generated_ideal, tensor_mul, FinAlgebra, FinHopfAlgebra, PairingTable};
use crate::pi::{quotient_picoalgebra, CoidealFamily, GroupOracle, HopfPiCoalgebra};
use crate::report::{AxiomResult, VerificationReport};
use crate::scalars::{Scalar, ScalarField};
use crate::tensor::{flip_matrix, inverse, Accumulator, Mat, Vector};

/// An invertible `n × n` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlColor {
    rows: Vec<Vec<Scalar>>,
}

impl GlColor {
    pub fn new(field: ScalarField, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Mat::from_rows(field, &rows)?;
        if m.rows() != m.cols() || m.rows() == 0 {
            return Err(Error::Shape(format!("GL color must be square, got {}x{}", m.rows(), m.cols())));
        }
        inverse(&m)?;
        Ok(GlColor { rows })
    }

    pub fn from_ints(field: ScalarField, rows: &[&[i64]]) -> Result<Self> {
        GlColor::new(field, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}

/// `GL_n` over a field, with elements written as `[[a,b],[c,d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlGroup {
    n: usize,
    field: ScalarField,
}

impl GlGroup {
    pub fn new(n: usize, field: ScalarField) -> Self {
        GlGroup { n, field }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }
}

impl GroupOracle for GlGroup {
    type Elem = GlColor;

    fn identity(&self) -> GlColor {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect())
            .collect();
        GlColor { rows }
    }

    fn mul(&self, a: &GlColor, b: &GlColor) -> GlColor {
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(self.field.zero(), |acc, k| &acc + &(&a.rows[i][k] * &b.rows[k][j])))
                    .collect()
            })
            .collect();
        GlColor { rows }
    }

    fn inv(&self, a: &GlColor) -> GlColor {
        let m = Mat::from_rows(self.field, &a.rows).expect("square matrix");
        GlColor { rows: inverse(&m).expect("GL colors are invertible").to_dense_rows() }
    }

    fn key(&self, a: &GlColor) -> String {
        let rows: Vec<String> = a
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Accepts `[[1,2],[0,1]]`, and for `n = 1` also a bare scalar.
    fn parse_key(&self, s: &str) -> Result<GlColor> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("cannot parse GL color '{s}'"));
        let rows: Vec<Vec<Scalar>> = if let Some(inner) = t.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")) {
            inner
                .split("],[")
                .map(|row| row.split(',').map(|x| self.field.parse_scalar(x).map_err(|_| bad())).collect())
                .collect::<Result<_>>()?
        } else if self.n == 1 {
            let x = t.trim_start_matches('(').trim_end_matches(')');
            vec![vec![self.field.parse_scalar(x).map_err(|_| bad())?]]
        } else {
            return Err(bad());
        };
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Invalid(format!("GL color '{s}' is not {0}x{0}", self.n)));
        }
        GlColor::new(self.field, rows)
    }

    fn descriptor(&self) -> Value {
        json!({ "kind": "gl", "n": self.n, "field": self.field.to_string() })
    }
}

/// Test colors: for `n = 2` the identity, `diag(1,2)`, a shear and a swap;
/// for `n = 1` the scalars `1, 2, -1, 3`.
pub fn default_gl_colors(n: usize, field: ScalarField) -> Result<Vec<GlColor>> {
    match n {
        1 => [1, 2, -1, 3].iter().map(|&v| GlColor::from_ints(field, &[&[v]])).collect(),
        2 => [[[1, 0], [0, 1]], [[1, 0], [0, 2]], [[1, 1], [0, 1]], [[0, 1], [1, 0]]]
            .iter()
            .map(|m| GlColor::from_ints(field, &[&m[0], &m[1]]))
            .collect(),
        _ => {
            let g = GlGroup::new(n, field);
            let id = g.identity();
            let mut diag = id.clone();
            diag.rows[n - 1][n - 1] = field.from_i64(2);
            let mut shear = id.clone();
            shear.rows[0][1] = field.one();
            let mut swap = id.clone();
            swap.rows.swap(0, 1);
            Ok(vec![id, diag, shear, swap])
        }
    }
}

fn label(n: usize, i: usize, group: &str, gen: &str) -> String {
    let mut s = String::new();
    if i >> n == 1 {
        s.push_str(group);
    }
    for b in 0..n {
        if i & (1 << b) != 0 {
            s.push_str(&format!("{gen}{}", b + 1));
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `(g^k x_S)(g^l x_T) = (-1)^{l|S|} g^{k+l} x_S x_T`, with `x_S x_T` signed
/// by the number of inversions and zero when `S ∩ T ≠ ∅`.
fn basis_product(n: usize, i: usize, j: usize) -> Option<(bool, usize)> {
    let mask = (1 << n) - 1;
    let (k, s, l, t) = (i >> n, i & mask, j >> n, j & mask);
    if s & t != 0 {
        return None;
    }
    let mut odd = l * (s.count_ones() as usize) % 2 == 1;
    for b in 0..n {
        if t & (1 << b) != 0 {
            odd ^= (s >> (b + 1)).count_ones() % 2 == 1;
        }
    }
    Some((odd, (((k + l) % 2) << n) | s | t))
}

fn an_algebra(n: usize, field: ScalarField, group: &str, gen: &str) -> Result<FinAlgebra> {
    let d = 1 << (n + 1);
    let labels = (0..d).map(|i| label(n, i, group, gen)).collect();
    FinAlgebra::from_rule(field, labels, Vector::basis(field, d, 0), |i, j| match basis_product(n, i, j) {
        None => Vector::zero(field, d),
        Some((odd, k)) => {
            let v = Vector::basis(field, d, k);
            if odd {
                v.neg()
            } else {
                v
            }
        }
    })
}

/// `ψ(g^k x_S) = ψ(g)^k ψ(x_{s_1}) ⋯ ψ(x_{s_m})` in `target`, for a map
/// given on generators and multiplicative into `target`.
fn extend_multiplicatively(
    n: usize,
    target_mul: impl Fn(&Vector, &Vector) -> Vector,
    one: &Vector,
    g_img: &Vector,
    x_img: &[Vector],
    reverse: bool,
) -> Vec<Vector> {
    (0..1usize << (n + 1))
        .map(|i| {
            let mut factors: Vec<&Vector> = Vec::new();
            if i >> n == 1 {
                factors.push(g_img);
            }
            factors.extend((0..n).filter(|b| i & (1 << b) != 0).map(|b| &x_img[b]));
            if reverse {
                factors.reverse();
            }
            factors.into_iter().fold(one.clone(), |acc, f| target_mul(&acc, f))
        })
        .collect()
}

/// `A_n`, `B_n`, their pairing and the action of `GL_n` on `A_n`.
pub struct AnPair {
    pub n: usize,
    pub group: Arc<GlGroup>,
    pub a: Arc<FinHopfAlgebra>,
    pub b: Arc<FinHopfAlgebra>,
    pub pairing: PairingTable,
    pub phi: Arc<HopfAction<GlGroup>>,
}

impl AnPair {
    pub fn dim(&self) -> usize {
        1 << (self.n + 1)
    }

    /// Index of `x_i` (1-based `i`), also of `y_i` in `B_n`.
    pub fn x(&self, i: usize) -> usize {
        1 << (i - 1)
    }

    /// Index of `g`, also of `h` in `B_n`.
    pub fn g(&self) -> usize {
        1 << self.n
    }
}

pub fn build_an_pair(n: usize, field: ScalarField) -> Result<AnPair> {
    if n == 0 {
        return Err(Error::Invalid("A_n needs n >= 1".into()));
    }
    if matches!(field, ScalarField::TruncSeries(_)) {
        return Err(Error::Invalid("A_n is built over q or fp:P".into()));
    }
    let d = 1usize << (n + 1);
    let g_idx = 1 << n;
    let alg = an_algebra(n, field, "g", "x")?;
    let algs = [&alg, &alg];
    let basis = move |i| Vector::basis(field, d, i);
    let one2 = basis(0).tensor(&basis(0));
    // Δ(g) = g ⊗ g, Δ(x_i) = x_i ⊗ g + 1 ⊗ x_i
    let dg = basis(g_idx).tensor(&basis(g_idx));
    let dx: Vec<Vector> = (0..n).map(|b| basis(1 << b).tensor(&basis(g_idx)).add(&basis(0).tensor(&basis(1 << b)))).collect();
    let comult_cols = extend_multiplicatively(n, |x, y| tensor_mul(&algs, x, y), &one2, &dg, &dx, false);
    let comult = Mat::from_columns(field, d * d, comult_cols)?;
    // S(g) = g, S(x_i) = g x_i, anti-multiplicative
    let sx: Vec<Vector> = (0..n).map(|b| basis(g_idx | (1 << b))).collect();
    let s_cols = extend_multiplicatively(n, |x, y| alg.mul(x, y), &basis(0), &basis(g_idx), &sx, true);
    let antipode = Mat::from_columns(field, d, s_cols)?;
    let counit = Mat::row_vector(&Vector::from_entries(field, d, vec![(0, field.one()), (g_idx, field.one())]));
    let a = Arc::new(FinHopfAlgebra::validated(alg, comult.clone(), counit.clone(), antipode.clone())?);

    // B_n = A_n^{cop} with h, y in place of g, x
    let b_alg = an_algebra(n, field, "h", "y")?;
    let b_comult = flip_matrix(field, d, d).compose(&comult);
    let b = Arc::new(FinHopfAlgebra::validated(b_alg, b_comult, counit, inverse(&antipode)?)?);

    // σ(g^k x_S, z_l y_T) = δ_{kl} δ_{ST} with z_0 = (1+h)/2, z_1 = (1-h)/2
    let half = field.from_q(&crate::scalars::q(1, 2))?;
    let z_cols = (0..d)
        .map(|m| {
            let (l, t) = (m >> n, m & (g_idx - 1));
            let sign = if l == 0 { half.clone() } else { half.neg() };
            Vector::from_entries(field, d, vec![(t, half.clone()), (g_idx | t, sign)])
        })
        .collect();
    let sigma = inverse(&Mat::from_columns(field, d, z_cols)?)?;
    let pairing = PairingTable::new(a.clone(), b.clone(), sigma)?;

    let group = Arc::new(GlGroup::new(n, field));
    let target = a.clone();
    let phi = Arc::new(HopfAction::new(group.clone(), a.clone(), move |alpha: &GlColor| {
        if alpha.n() != n {
            return Err(Error::Shape(format!("GL color has size {}, expected {n}", alpha.n())));
        }
        // φ_α(g) = g, φ_α(x_i) = Σ_k α_{k,i} x_k
        let xs: Vec<Vector> = (0..n)
            .map(|i| Vector::from_entries(field, d, (0..n).map(|k| (1 << k, alpha.get(k, i).clone()))))
            .collect();
        let cols = extend_multiplicatively(n, |x, y| target.alg().mul(x, y), &basis(0), &basis(g_idx), &xs, false);
        Mat::from_columns(field, d, cols)
    }));
    Ok(AnPair { n, group, a, b, pairing, phi })
}

/// The twisted double of `A_n` and its quotient `𝒜_n` by the ideals
/// generated by `g - h`.
pub struct AnCoalgebra {
    pub pair: AnPair,
    pub double: Arc<HopfPiCoalgebra<GlGroup>>,
    pub family: Arc<CoidealFamily<GlGroup>>,
    pub quotient: HopfPiCoalgebra<GlGroup>,
}

impl AnCoalgebra {
    /// Image in `𝒜_{n,α}` of `a ⊗ b` from the double.
    fn project(&self, alpha: &GlColor, a: &Vector, b: &Vector) -> Result<Vector> {
        Ok(self.family.projection(&self.double, alpha)?.apply(&a.tensor(b)))
    }

    fn a_elem(&self, i: usize) -> Vector {
        Vector::basis(self.pair.a.field(), self.pair.dim(), i)
    }

    /// Images of `x_S ⊗ 1`.
    pub fn x_elem(&self, alpha: &GlColor, s: usize) -> Result<Vector> {
        self.project(alpha, &self.a_elem(s), self.pair.b.alg().unit())
    }

    /// Images of `1 ⊗ y_S`.
    pub fn y_elem(&self, alpha: &GlColor, s: usize) -> Result<Vector> {
        self.project(alpha, self.pair.a.alg().unit(), &self.a_elem(s))
    }

    /// Image of `g ⊗ 1`.
    pub fn g_elem(&self, alpha: &GlColor) -> Result<Vector> {
        self.project(alpha, &self.a_elem(self.pair.g()), self.pair.b.alg().unit())
    }

    /// Image of `1 ⊗ h`.
    pub fn h_elem(&self, alpha: &GlColor) -> Result<Vector> {
        self.project(alpha, self.pair.a.alg().unit(), &self.a_elem(self.pair.g()))
    }
}

pub fn build_an_coalgebra(n: usize, field: ScalarField) -> Result<AnCoalgebra> {
    let pair = build_an_pair(n, field)?;
    let psi = Arc::new(dual_action(&pair.pairing, pair.phi.clone())?);
    let db = DualBases::new(&pair.pairing)?;
    let double = Arc::new(
        TwistedDouble::new(&pair.pairing, pair.phi.clone())?
            .with_crossing(psi)
            .with_rmatrix(&pair.pairing, &db)?
            .into_picoalgebra(),
    );
    let d = pair.dim();
    let (g_idx, one_a, one_b) = (pair.g(), pair.a.alg().unit().clone(), pair.b.alg().unit().clone());
    let base = double.clone();
    let family = Arc::new(CoidealFamily::new(move |alpha: &GlColor| {
        let g_minus_h = Vector::basis(field, d, g_idx).tensor(&one_b).sub(&one_a.tensor(&Vector::basis(field, d, g_idx)));
        Ok(generated_ideal(&*base.component(alpha)?, &[g_minus_h])?.basis())
    }));
    let quotient = quotient_picoalgebra(double.clone(), family.clone());
    Ok(AnCoalgebra { pair, double, family, quotient })
}

/// `Σ_S x_S ⊗ ((1+g)/2) y_S + g x_S ⊗ ((1-g)/2) y_S` in `𝒜_α ⊗ 𝒜_β`.
pub fn an_closed_form_rmatrix(an: &AnCoalgebra, alpha: &GlColor, beta: &GlColor) -> Result<Vector> {
    let field = an.pair.a.field();
    let half = field.from_q(&crate::scalars::q(1, 2))?;
    let qb = an.quotient.component(beta)?;
    let gb = an.g_elem(beta)?;
    let mut acc = Accumulator::new(field, an.quotient.dim(alpha)? * qb.dim());
    for s in 0..1usize << an.pair.n {
        let ys = an.y_elem(beta, s)?;
        let gy = qb.mul(&gb, &ys);
        let plus = ys.add(&gy).scale(&half);
        let minus = ys.sub(&gy).scale(&half);
        let xs = an.x_elem(alpha, s)?;
        let gxs = an.quotient.component(alpha)?.mul(&an.g_elem(alpha)?, &xs);
        acc.add_vector(&field.one(), &xs.tensor(&plus));
        acc.add_vector(&field.one(), &gxs.tensor(&minus));
    }
    Ok(acc.finish())
}

/// The expanded form with `+ g x_S ⊗ g y_S` as the last term, which does not
/// agree with the factored closed form.
pub fn an_plus_sign_rmatrix(an: &AnCoalgebra, alpha: &GlColor, beta: &GlColor) -> Result<Vector> {
    let field = an.pair.a.field();
    let half = field.from_q(&crate::scalars::q(1, 2))?;
    let (qa, qb) = (an.quotient.component(alpha)?, an.quotient.component(beta)?);
    let (ga, gb) = (an.g_elem(alpha)?, an.g_elem(beta)?);
    let mut acc = Accumulator::new(field, qa.dim() * qb.dim());
    for s in 0..1usize << an.pair.n {
        let (xs, ys) = (an.x_elem(alpha, s)?, an.y_elem(beta, s)?);
        let (gx, gy) = (qa.mul(&ga, &xs), qb.mul(&gb, &ys));
        for (l, r) in [(&xs, &ys), (&xs, &gy), (&gx, &ys), (&gx, &gy)] {
            acc.add_vector(&half, &l.tensor(r));
        }
    }
    Ok(acc.finish())
}

/// Closed-form facts about `𝒜_n` on the given colors: dimensions, `g = h`,
/// the commutation relation between `x_i` and `y_j`, the antipode on
/// generators, comultiplication of generators, the crossing on `y_i`, and
/// the factored R-matrix.
pub fn an_closed_form_report(an: &AnCoalgebra, colors: &[GlColor]) -> Result<VerificationReport> {
    let pair = &an.pair;
    let (n, field) = (pair.n, pair.a.field());
    let group = &*pair.group;
    let pi = &an.quotient;
    let key = |a: &GlColor| group.key(a);
    let diff = |x: &Vector, y: &Vector| x.first_difference(y).map(|i| vec![i]);
    let mut entries = Vec::new();
    for alpha in colors {
        let h = pi.component(alpha)?;
        let dim_ok = h.dim() == 1 << (2 * n + 1);
        entries.push(AxiomResult::from_check("an-dimension", vec![key(alpha)], (!dim_ok).then(|| vec![h.dim()])));
        let g = an.g_elem(alpha)?;
        entries.push(AxiomResult::from_check("an-g-equals-h", vec![key(alpha)], diff(&g, &an.h_elem(alpha)?)));

        // x_i y_j - y_j x_i = (α_{j,i} - δ_ij) g, as the cross relation of the double gives
        let mut w = None;
        'rel: for i in 1..=n {
            for j in 1..=n {
                let (x, y) = (an.x_elem(alpha, pair.x(i))?, an.y_elem(alpha, pair.x(j))?);
                let delta = if i == j { field.one() } else { field.zero() };
                let expected = g.scale(&(alpha.get(j - 1, i - 1) - &delta));
                if h.mul(&x, &y).sub(&h.mul(&y, &x)) != expected {
                    w = Some(vec![i, j]);
                    break 'rel;
                }
            }
        }
        entries.push(AxiomResult::from_check("an-commutator", vec![key(alpha)], w));

        // S_α(x_i) = Σ_k α_{k,i} g x_k, S_α(y_i) = -g y_i, both in 𝒜_{α⁻¹}
        let ainv = group.inv(alpha);
        let (s, hinv, ginv) = (pi.antipode(alpha)?, pi.component(&ainv)?, an.g_elem(&ainv)?);
        let mut w = None;
        for i in 1..=n {
            let mut expected = Vector::zero(field, hinv.dim());
            for k in 1..=n {
                expected = expected.add_scaled(alpha.get(k - 1, i - 1), &hinv.mul(&ginv, &an.x_elem(&ainv, pair.x(k))?));
            }
            if s.apply(&an.x_elem(alpha, pair.x(i))?) != expected {
                w = Some(vec![i]);
                break;
            }
            let expected_y = hinv.mul(&ginv, &an.y_elem(&ainv, pair.x(i))?).neg();
            if s.apply(&an.y_elem(alpha, pair.x(i))?) != expected_y {
                w = Some(vec![n + i]);
                break;
            }
        }
        entries.push(AxiomResult::from_check("an-antipode", vec![key(alpha)], w));
    }
    for alpha in colors {
        for beta in colors {
            let ab = group.mul(alpha, beta);
            let delta = pi.comult(alpha, beta)?;
            let gb = an.g_elem(beta)?;
            let (ga, oa, ob) = (an.g_elem(alpha)?, an.x_elem(alpha, 0)?, an.x_elem(beta, 0)?);
            let mut w = None;
            for i in 1..=n {
                // Δ(x_i) = Σ_k β_{k,i} x_k ⊗ g + 1 ⊗ x_i
                let mut expected = oa.tensor(&an.x_elem(beta, pair.x(i))?);
                for k in 1..=n {
                    expected = expected.add_scaled(beta.get(k - 1, i - 1), &an.x_elem(alpha, pair.x(k))?.tensor(&gb));
                }
                if delta.apply(&an.x_elem(&ab, pair.x(i))?) != expected {
                    w = Some(vec![i]);
                    break;
                }
                // Δ(y_i) = y_i ⊗ 1 + g ⊗ y_i
                let expected = an.y_elem(alpha, pair.x(i))?.tensor(&ob).add(&ga.tensor(&an.y_elem(beta, pair.x(i))?));
                if delta.apply(&an.y_elem(&ab, pair.x(i))?) != expected {
                    w = Some(vec![n + i]);
                    break;
                }
            }
            entries.push(AxiomResult::from_check("an-comult", vec![key(alpha), key(beta)], w));

            // φ_β(y_j) = Σ_l (β⁻¹)_{j,l} y_l in 𝒜_{βαβ⁻¹}
            let target = group.conj(beta, alpha);
            let binv = group.inv(beta);
            let phi = pi.crossing(beta, alpha)?;
            let mut w = None;
            for j in 1..=n {
                let mut expected = Vector::zero(field, pi.dim(&target)?);
                for l in 1..=n {
                    expected = expected.add_scaled(binv.get(j - 1, l - 1), &an.y_elem(&target, pair.x(l))?);
                }
                if phi.apply(&an.y_elem(alpha, pair.x(j))?) != expected {
                    w = Some(vec![j]);
                    break;
                }
            }
            entries.push(AxiomResult::from_check("an-crossing-y", vec![key(beta), key(alpha)], w));

            let closed = an_closed_form_rmatrix(an, alpha, beta)?;
            let w = diff(&closed, &*pi.rmatrix(alpha, beta)?);
            entries.push(AxiomResult::from_check("an-rmatrix-closed-form", vec![key(alpha), key(beta)], w));
        }
    }
    Ok(VerificationReport::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::check_compatible;
    use crate::hopf::verify_pairing;

    const QF: ScalarField = ScalarField::Rationals;

    #[test]
    fn a1_relations() {
        let p = build_an_pair(1, QF).unwrap();
        let alg = p.a.alg();
        let (g, x) = (alg.basis(p.g()), alg.basis(p.x(1)));
        assert_eq!(alg.mul(&g, &g), alg.basis(0));
        assert!(alg.mul(&x, &x).is_zero());
        assert_eq!(alg.mul(&g, &x), alg.mul(&x, &g).neg());
    }

    #[test]
    fn a2_anticommuting_generators() {
        let p = build_an_pair(2, QF).unwrap();
        let alg = p.a.alg();
        let (x1, x2) = (alg.basis(p.x(1)), alg.basis(p.x(2)));
        assert_eq!(alg.mul(&x1, &x2), alg.basis(3));
        assert_eq!(alg.mul(&x2, &x1), alg.basis(3).neg());
    }

    #[test]
    fn pairing_has_sign_formula() {
        for n in 1..=2 {
            let p = build_an_pair(n, QF).unwrap();
            let d = p.dim();
            for i in 0..d {
                for j in 0..d {
                    let (k, s, l, t) = (i >> n, i % (1 << n), j >> n, j % (1 << n));
                    let expected = if s != t { 0 } else if k * l == 1 { -1 } else { 1 };
                    assert_eq!(p.pairing.sigma.get(i, j), QF.from_i64(expected), "({i},{j})");
                }
            }
            assert!(verify_pairing(&p.pairing).all_pass());
        }
    }

    #[test]
    fn wrong_sign_on_group_likes_breaks_pairing() {
        let p = build_an_pair(1, QF).unwrap();
        let mut rows = p.pairing.sigma.to_dense_rows();
        rows[p.g()][p.g()] = QF.one();
        let bad = PairingTable::new(p.a.clone(), p.b.clone(), Mat::from_rows(QF, &rows).unwrap()).unwrap();
        assert!(!verify_pairing(&bad).all_pass());
    }

    #[test]
    fn dual_action_is_inverse_transpose() {
        let p = build_an_pair(2, QF).unwrap();
        let psi = dual_action(&p.pairing, p.phi.clone()).unwrap();
        let shear = GlColor::from_ints(QF, &[&[1, 1], &[0, 1]]).unwrap();
        let m = psi.matrix(&shear).unwrap();
        // shear⁻¹ = [[1,-1],[0,1]]: y_1 ↦ y_1 - y_2, y_2 ↦ y_2
        let y = |i| Vector::basis(QF, 8, p.x(i));
        assert_eq!(m.apply(&y(1)), y(1).sub(&y(2)));
        assert_eq!(m.apply(&y(2)), y(2));
    }

    #[test]
    fn identity_is_not_a_compatible_dual_action() {
        let p = build_an_pair(1, QF).unwrap();
        let id = Arc::new(HopfAction::new(p.group.clone(), p.b.clone(), |_: &GlColor| Ok(Mat::identity(QF, 4))));
        let two = GlColor::from_ints(QF, &[&[2]]).unwrap();
        let r = check_compatible(&p.pairing, &p.phi, &id, &[two]).unwrap();
        assert!(!r.all_pass());
    }

    #[test]
    fn gl_keys_round_trip() {
        let g = GlGroup::new(2, QF);
        for c in default_gl_colors(2, QF).unwrap() {
            assert_eq!(g.parse_key(&g.key(&c)).unwrap(), c);
        }
        let g1 = GlGroup::new(1, QF);
        assert_eq!(g1.key(&g1.parse_key("(2)").unwrap()), "[[2]]");
        assert!(g.parse_key("[[1,1],[1,1]]").is_err());
    }

    #[test]
    fn a1_quotient_closed_forms() {
        let an = build_an_coalgebra(1, QF).unwrap();
        let colors = default_gl_colors(1, QF).unwrap();
        let r = an_closed_form_report(&an, &colors[..2]).unwrap();
        assert!(r.all_pass(), "{r}");
        let (a, b) = (&colors[0], &colors[1]);
        assert_ne!(an_plus_sign_rmatrix(&an, a, b).unwrap(), *an.quotient.rmatrix(a, b).unwrap());
    }

    #[test]
    fn commutator_sign_in_double() {
        let an = build_an_coalgebra(1, QF).unwrap();
        let two = GlColor::from_ints(QF, &[&[2]]).unwrap();
        let d = an.double.component(&two).unwrap();
        let one_b = an.pair.b.alg().unit();
        let x = Vector::basis(QF, 4, an.pair.x(1)).tensor(one_b);
        let y = an.pair.a.alg().unit().tensor(&Vector::basis(QF, 4, an.pair.x(1)));
        let g = Vector::basis(QF, 4, an.pair.g()).tensor(one_b);
        let h = an.pair.a.alg().unit().tensor(&Vector::basis(QF, 4, an.pair.g()));
        // x y - y x = α g - h, the opposite of δ h - α g
        let c = d.mul(&x, &y).sub(&d.mul(&y, &x));
        assert_eq!(c, g.scale(&QF.from_i64(2)).sub(&h));
    }
}
