//! Rank-one graded quantum group `U_h^α(sl2)` at the level of its
//! finite-dimensional representations, over `Q[[h]]/h^N`.
//!
//! Colors live in `π = (Q[[h]], +)`, so conjugation is trivial and inverses
//! are negatives.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{AxiomResult, VerificationReport};
use crate::scalars::{q, Scalar, ScalarField, TruncSeries};
use crate::tensor::Mat;

/// `ρ_n^α` on `V_n = k^n`: the matrices of `H`, `E`, `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SL2RepData {
    pub n: usize,
    pub alpha: TruncSeries,
    pub h: Mat,
    pub e: Mat,
    pub f: Mat,
}

fn series(s: TruncSeries) -> Scalar {
    Scalar::Series(s)
}

fn as_series(s: &Scalar) -> &TruncSeries {
    s.as_series().expect("sl2 data lives over truncated series")
}

/// `e^{h x}`.
fn exp_h(x: &TruncSeries) -> Result<TruncSeries> {
    Ok(x.mul_h().exp()?)
}

/// `[k]_q = q^{k-1} + q^{k-3} + ... + q^{1-k}` with `q = e^h`.
pub fn q_integer(k: i64, precision: usize) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(precision);
    for j in 0..k {
        let c = TruncSeries::constant(q(k - 1 - 2 * j, 1), precision);
        acc = acc.checked_add(&exp_h(&c)?)?;
    }
    Ok(acc)
}

fn q_factorial(k: i64, precision: usize) -> Result<TruncSeries> {
    let mut acc = TruncSeries::one(precision);
    for j in 1..=k {
        acc = acc.checked_mul(&q_integer(j, precision)?)?;
    }
    Ok(acc)
}

/// Parses a color written as a rational polynomial in `h`.
pub fn parse_color(s: &str, precision: usize) -> Result<TruncSeries> {
    Ok(TruncSeries::parse(s, precision)?)
}

fn diag_map(m: &Mat, f: impl Fn(&TruncSeries) -> Result<TruncSeries>) -> Result<Mat> {
    let field = m.field();
    let values = (0..m.rows()).map(|i| Ok(series(f(as_series(&m.get(i, i)))?))).collect::<Result<Vec<_>>>()?;
    Ok(Mat::diag(field, &values))
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    a.compose(b).sub(&b.compose(a))
}

fn power(m: &Mat, k: usize) -> Mat {
    (0..k).fold(Mat::identity(m.field(), m.rows()), |acc, _| acc.compose(m))
}

/// `ρ(H)e_i = (n-2i+1-α/2) e_i`, `ρ(E)e_i = e^{hα/2}[n-i+1]_q e_{i-1}`,
/// `ρ(F)e_i = [i]_q e_{i+1}` for `1 ≤ i ≤ n`, with `E e_1 = 0` and
/// `F e_n = 0`. The precision is that of `alpha`. Fails if a defining
/// relation does not hold.
pub fn rho(n: usize, alpha: &TruncSeries) -> Result<SL2RepData> {
    let rep = rho_unchecked(n, alpha)?;
    if let Some(f) = rep.relation_report()?.failures().next() {
        return Err(Error::Invalid(format!("representation violates {}", f.axiom)));
    }
    Ok(rep)
}

fn rho_unchecked(n: usize, alpha: &TruncSeries) -> Result<SL2RepData> {
    let p = alpha.precision();
    if n == 0 || p < 2 {
        return Err(Error::Invalid("sl2 representations need n >= 1 and precision >= 2".into()));
    }
    let field = ScalarField::series(p)?;
    let half_alpha = alpha.scale(&q(1, 2));
    let hs: Vec<Scalar> = (1..=n)
        .map(|i| series(TruncSeries::constant(q(n as i64 - 2 * i as i64 + 1, 1), p).checked_sub(&half_alpha).expect("same precision")))
        .collect();
    let shift = exp_h(&half_alpha)?;
    let mut e = Vec::new();
    let mut f = Vec::new();
    // 0-based column j is e_{j+1}
    for j in 0..n {
        let i = j as i64 + 1;
        if j > 0 {
            e.push((j - 1, j, series(shift.checked_mul(&q_integer(n as i64 - i + 1, p)?)?)));
        }
        if j + 1 < n {
            f.push((j + 1, j, series(q_integer(i, p)?)));
        }
    }
    Ok(SL2RepData {
        n,
        alpha: alpha.clone(),
        h: Mat::diag(field, &hs),
        e: Mat::from_triplets(field, n, n, e)?,
        f: Mat::from_triplets(field, n, n, f)?,
    })
}

impl SL2RepData {
    pub fn precision(&self) -> usize {
        self.alpha.precision()
    }

    pub fn field(&self) -> ScalarField {
        self.h.field()
    }

    /// `K = e^{hH}`.
    pub fn k(&self) -> Result<Mat> {
        diag_map(&self.h, exp_h)
    }

    pub fn k_inv(&self) -> Result<Mat> {
        diag_map(&self.h, |x| exp_h(&x.neg()))
    }

    /// `[H,H] = 0` (H diagonal), `[H,E] = 2E`, `[H,F] = -2F`,
    /// `[E,F] = (e^{hα}e^{hH} - e^{-hH})/(e^h - e^{-h})` and `E^n = F^n = 0`.
    /// The right side of the last relation is computed one order higher and
    /// divided exactly.
    pub fn relation_report(&self) -> Result<VerificationReport> {
        let field = self.field();
        let p = self.precision();
        let colors = vec![self.n.to_string(), self.alpha.to_string()];
        let check = |id: &str, a: &Mat, b: &Mat| AxiomResult::from_check(id, colors.clone(), a.first_difference(b).map(|j| vec![j]));
        let off_diag = self.h.triplets().find(|(i, j, _)| i != j).map(|(_, j, _)| vec![j]);
        let two = field.from_i64(2);
        let mut entries = vec![
            AxiomResult::from_check("uh1", colors.clone(), off_diag),
            check("uh2", &commutator(&self.h, &self.e), &self.e.scale(&two)),
            check("uh3", &commutator(&self.h, &self.f), &self.f.scale(&two.neg())),
        ];
        let up = p + 1;
        let alpha_up = self.alpha.pad_to(up);
        let den = exp_h(&TruncSeries::one(up))?.checked_sub(&exp_h(&TruncSeries::one(up).neg())?)?;
        let mut rhs = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let hi = as_series(&self.h.get(i, i)).pad_to(up);
            let num = exp_h(&alpha_up)?.checked_mul(&exp_h(&hi)?)?.checked_sub(&exp_h(&hi.neg())?)?;
            rhs.push(series(num.div_exact(&den)?));
        }
        entries.push(check("uh4", &commutator(&self.e, &self.f), &Mat::diag(field, &rhs)));
        let zero = Mat::zero(field, self.n, self.n);
        let nil = power(&self.e, self.n).first_difference(&zero).or(power(&self.f, self.n).first_difference(&zero));
        entries.push(AxiomResult::from_check("rep-nilpotent", colors, nil.map(|j| vec![j])));
        Ok(VerificationReport::new(entries))
    }
}

/// `φ_β`: `E ↦ e^{hβ}E`, `F ↦ e^{-hβ}F`, `H ↦ H`, composed with the representation.
pub fn crossing_rep(r: &SL2RepData, beta: &TruncSeries) -> Result<SL2RepData> {
    let up = series(exp_h(beta)?);
    let down = series(exp_h(&beta.neg())?);
    Ok(SL2RepData { e: r.e.scale(&up), f: r.f.scale(&down), ..r.clone() })
}

/// `R = e^{h(H⊗H)/2} Σ_k R_k(h) E^k ⊗ F^k` with
/// `R_k(h) = q^{k(k+1)/2}(1-q^{-2})^k/[k]_q!`, on `V_{n1} ⊗ V_{n2}`.
pub fn r_matrix_rep(r1: &SL2RepData, r2: &SL2RepData) -> Result<Mat> {
    let p = r1.precision();
    if r2.precision() != p {
        return Err(Error::Shape(format!("precision mismatch: {p} vs {}", r2.precision())));
    }
    let field = r1.field();
    let mut diag = Vec::with_capacity(r1.n * r2.n);
    for i in 0..r1.n {
        for j in 0..r2.n {
            let x = as_series(&r1.h.get(i, i)).checked_mul(as_series(&r2.h.get(j, j)))?.scale(&q(1, 2));
            diag.push(series(exp_h(&x)?));
        }
    }
    let one_minus = TruncSeries::one(p).checked_sub(&exp_h(&TruncSeries::constant(q(-2, 1), p))?)?;
    let mut sum = Mat::zero(field, r1.n * r2.n, r1.n * r2.n);
    for k in 0..r1.n.min(r2.n) {
        let kk = k as i64;
        let mut coeff = exp_h(&TruncSeries::constant(q(kk * (kk + 1), 2), p))?;
        for _ in 0..k {
            coeff = coeff.checked_mul(&one_minus)?;
        }
        let coeff = coeff.checked_mul(&q_factorial(kk, p)?.inv()?)?;
        sum = sum.add(&power(&r1.e, k).kron(&power(&r2.f, k)).scale(&series(coeff)));
    }
    Ok(Mat::diag(field, &diag).compose(&sum))
}

fn tensor_id(m: &Mat, n: usize) -> Mat {
    m.kron(&Mat::identity(m.field(), n))
}

fn id_tensor(n: usize, m: &Mat) -> Mat {
    Mat::identity(m.field(), n).kron(m)
}

/// `R_{α,β} · Δ_{α,β}(x) = flip((φ_{-α} ⊗ id) Δ_{β,α}(x)) · R_{α,β}` on
/// `V_{n1}^α ⊗ V_{n2}^β`, for `x ∈ {H, E, F}`.
pub fn check_qt1_rep(n1: usize, n2: usize, alpha: &TruncSeries, beta: &TruncSeries) -> Result<VerificationReport> {
    let (r1, r2) = (rho(n1, alpha)?, rho(n2, beta)?);
    let r = r_matrix_rep(&r1, &r2)?;
    let (k1, k2, k1i, k2i) = (r1.k()?, r2.k()?, r1.k_inv()?, r2.k_inv()?);
    let eb = series(exp_h(beta)?);
    let ea = series(exp_h(alpha)?);
    let hsum = tensor_id(&r1.h, n2).add(&id_tensor(n1, &r2.h));
    let l_e = r1.e.scale(&eb).kron(&k2).add(&id_tensor(n1, &r2.e));
    let m_e = k1.kron(&r2.e).add(&tensor_id(&r1.e, n2));
    let l_f = tensor_id(&r1.f, n2).add(&k1i.kron(&r2.f));
    let m_f = id_tensor(n1, &r2.f.scale(&ea)).add(&r1.f.kron(&k2i));
    let colors = |x: &str| vec![format!("{n1}x{n2}"), alpha.to_string(), beta.to_string(), x.to_string()];
    let entries = [("H", &hsum, &hsum), ("E", &l_e, &m_e), ("F", &l_f, &m_f)]
        .into_iter()
        .map(|(x, l, m)| {
            let w = r.compose(l).first_difference(&m.compose(&r)).map(|j| vec![j]);
            AxiomResult::from_check("eq7-qt1", colors(x), w)
        })
        .collect();
    Ok(VerificationReport::new(entries))
}

/// `R_{β,γ}^{23} R_{α,γ}^{13} R_{α,β}^{12} = R_{α,β}^{12} ((id ⊗ φ_{-β}) R_{α,γ})^{13} R_{β,γ}^{23}`
/// on `V_{n1}^α ⊗ V_{n2}^β ⊗ V_{n3}^γ`.
pub fn check_colored_ybe_rep(ns: [usize; 3], colors: [&TruncSeries; 3]) -> Result<VerificationReport> {
    let [a, b, c] = colors;
    let (r1, r2, r3) = (rho(ns[0], a)?, rho(ns[1], b)?, rho(ns[2], c)?);
    let r3s = crossing_rep(&r3, &b.neg())?;
    let r12 = tensor_id(&r_matrix_rep(&r1, &r2)?, ns[2]);
    let r23 = id_tensor(ns[0], &r_matrix_rep(&r2, &r3)?);
    let r13 = leg13(&r_matrix_rep(&r1, &r3)?, ns)?;
    let r13s = leg13(&r_matrix_rep(&r1, &r3s)?, ns)?;
    let lhs = r23.compose(&r13).compose(&r12);
    let rhs = r12.compose(&r13s).compose(&r23);
    let key = vec![format!("{}x{}x{}", ns[0], ns[1], ns[2]), a.to_string(), b.to_string(), c.to_string()];
    let w = lhs.first_difference(&rhs).map(|j| vec![j]);
    Ok(VerificationReport::new(vec![AxiomResult::from_check("eq20-colored-ybe", key, w)]))
}

/// Places an operator on `V1 ⊗ V3` on legs 1 and 3 of `V1 ⊗ V2 ⊗ V3`.
fn leg13(m: &Mat, ns: [usize; 3]) -> Result<Mat> {
    let [n1, n2, n3] = ns;
    let field = m.field();
    let dim = n1 * n2 * n3;
    let mut trip = Vec::new();
    for (row, col, c) in m.triplets() {
        let (i, k) = (row / n3, row % n3);
        let (i2, k2) = (col / n3, col % n3);
        for j in 0..n2 {
            trip.push(((i * n2 + j) * n3 + k, (i2 * n2 + j) * n3 + k2, c.clone()));
        }
    }
    Mat::from_triplets(field, dim, dim, trip)
}

/// One grid point of the sl2 checks.
#[derive(Debug, Clone)]
pub enum Sl2Check {
    Relations { n: usize, alpha: TruncSeries },
    Qt1 { n1: usize, n2: usize, alpha: TruncSeries, beta: TruncSeries },
    Ybe { ns: [usize; 3], colors: [TruncSeries; 3] },
}

impl Sl2Check {
    pub fn run(&self) -> Result<VerificationReport> {
        match self {
            Sl2Check::Relations { n, alpha } => rho_unchecked(*n, alpha)?.relation_report(),
            Sl2Check::Qt1 { n1, n2, alpha, beta } => check_qt1_rep(*n1, *n2, alpha, beta),
            Sl2Check::Ybe { ns, colors } => check_colored_ybe_rep(*ns, [&colors[0], &colors[1], &colors[2]]),
        }
    }
}

/// Runs grid points in parallel and merges the reports.
pub fn run_sl2_checks(checks: &[Sl2Check]) -> Result<VerificationReport> {
    let reports = checks.par_iter().map(Sl2Check::run).collect::<Result<Vec<_>>>()?;
    let mut out = VerificationReport::default();
    for r in reports {
        out.merge(r);
    }
    Ok(out)
}

/// The standard grid: relations for `n ≤ 4`, QT1 for `n1, n2 ≤ 3`, and the
/// colored YBE on `(2,2,2)` and `(2,3,2)`, over every choice of colors.
pub fn standard_grid(colors: &[TruncSeries]) -> Vec<Sl2Check> {
    let mut out = Vec::new();
    for a in colors {
        for n in 1..=4 {
            out.push(Sl2Check::Relations { n, alpha: a.clone() });
        }
        for b in colors {
            for n1 in 1..=3 {
                for n2 in 1..=3 {
                    out.push(Sl2Check::Qt1 { n1, n2, alpha: a.clone(), beta: b.clone() });
                }
            }
            for c in colors {
                for ns in [[2, 2, 2], [2, 3, 2]] {
                    out.push(Sl2Check::Ybe { ns, colors: [a.clone(), b.clone(), c.clone()] });
                }
            }
        }
    }
    out
}

/// `{0, 1, h, 1+2h}` at the given precision.
pub fn standard_colors(precision: usize) -> Result<Vec<TruncSeries>> {
    ["0", "1", "h", "1+2h"].iter().map(|s| parse_color(s, precision)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, p: usize) -> TruncSeries {
        parse_color(s, p).unwrap()
    }

    #[test]
    fn q_two_expansion() {
        // [2]_q = q + q⁻¹ = 2 + h² + h⁴/12 + ...
        let two = q_integer(2, 4).unwrap();
        assert_eq!(two.coeffs(), &[q(2, 1), q(0, 1), q(1, 1), q(0, 1)]);
    }

    #[test]
    fn one_dimensional_representation() {
        let r = rho(1, &c("1+2h", 6)).unwrap();
        assert!(r.e.nnz() == 0 && r.f.nnz() == 0);
        assert_eq!(r.h.get(0, 0), series(c("1+2h", 6).scale(&q(-1, 2))));
    }

    #[test]
    fn two_dimensional_untwisted() {
        let r = rho(2, &c("0", 6)).unwrap();
        let field = r.field();
        assert_eq!(r.h, Mat::diag(field, &[field.from_i64(1), field.from_i64(-1)]));
        assert_eq!(commutator(&r.e, &r.f), r.h);
    }

    #[test]
    fn relations_on_grid() {
        for a in standard_colors(6).unwrap() {
            for n in 1..=4 {
                let r = rho_unchecked(n, &a).unwrap().relation_report().unwrap();
                assert!(r.all_pass(), "n={n} α={a}: {r}");
            }
        }
    }

    #[test]
    fn r_matrix_first_order() {
        let r0 = rho(2, &c("0", 2)).unwrap();
        let r = r_matrix_rep(&r0, &r0).unwrap();
        let field = r0.field();
        let hh = r0.h.kron(&r0.h).scale(&field.parse_scalar("1/2").unwrap());
        let ef = r0.e.kron(&r0.f).scale(&field.from_i64(2));
        let hser = series(TruncSeries::h(2));
        let expected = Mat::identity(field, 4).add(&hh.add(&ef).scale(&hser));
        assert_eq!(r, expected);
        // mod h the R-matrix is the identity
        let r1 = rho(2, &c("0", 1).pad_to(2)).unwrap();
        assert!(r_matrix_rep(&r1, &r1).unwrap().triplets().all(|(i, j, x)| {
            let s = as_series(x);
            s.coeff(0) == &q(if i == j { 1 } else { 0 }, 1)
        }));
    }

    #[test]
    fn crossing_is_additive() {
        let r = rho(3, &c("h", 6)).unwrap();
        let (b1, b2) = (c("1", 6), c("2h", 6));
        let twice = crossing_rep(&crossing_rep(&r, &b1).unwrap(), &b2).unwrap();
        assert_eq!(twice, crossing_rep(&r, &b1.checked_add(&b2).unwrap()).unwrap());
        assert_eq!(crossing_rep(&crossing_rep(&r, &b1).unwrap(), &b1.neg()).unwrap(), r);
        let x = crossing_rep(&r, &b1).unwrap();
        assert_eq!(commutator(&x.e, &x.f), commutator(&r.e, &r.f));
    }

    #[test]
    fn qt1_and_ybe_at_sample_colors() {
        let (a, b, g) = (c("1", 6), c("h", 6), c("1+2h", 6));
        let r = check_qt1_rep(2, 3, &a, &b).unwrap();
        assert!(r.all_pass(), "{r}");
        let r = check_colored_ybe_rep([2, 2, 2], [&a, &b, &g]).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn perturbed_r_matrix_breaks_ybe() {
        let z = c("0", 4);
        let r = rho(2, &z).unwrap();
        let good = r_matrix_rep(&r, &r).unwrap();
        let bad = good.add(&r.e.kron(&r.f).scale(&series(TruncSeries::h(4))));
        let ns = [2, 2, 2];
        let r12 = tensor_id(&bad, 2);
        let r23 = id_tensor(2, &bad);
        let r13 = leg13(&bad, ns).unwrap();
        let lhs = r23.compose(&r13).compose(&r12);
        let rhs = r12.compose(&r13).compose(&r23);
        assert_ne!(lhs, rhs);
    }
}
