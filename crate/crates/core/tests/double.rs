use std::sync::Arc;

use proptest::prelude::*;

use hopfpi::double::{double_algebra, dual_action, verify_dual_bases, DualBases, HopfAction, TwistedDouble};
use hopfpi::finite::{build_an_pair, build_dg, conjugation_action, group_algebra, FiniteGroupTable};
use hopfpi::hopf::{dual_cop_hopf, tensor_mul, FinHopfAlgebra, PairingTable};
use hopfpi::pi::{verify_all, GroupOracle, HopfPiCoalgebra};
use hopfpi::scalars::ScalarField;
use hopfpi::tensor::{inverse, Mat, Vector};

const QF: ScalarField = ScalarField::Rationals;

fn group_pairing(g: &FiniteGroupTable) -> (Arc<FinHopfAlgebra>, PairingTable) {
    let kg = Arc::new(group_algebra(g, QF).unwrap());
    let (_, p) = dual_cop_hopf(&kg).unwrap();
    (kg, p)
}

#[test]
fn trivial_action_gives_the_classical_double_in_every_color() {
    let g = Arc::new(FiniteGroupTable::cyclic(3));
    let (kg, p) = group_pairing(&g);
    let d = kg.dim();
    let phi = Arc::new(HopfAction::new(g.clone(), kg, move |_| Ok(Mat::identity(QF, d))));
    let psi = Arc::new(dual_action(&p, phi.clone()).unwrap());
    let db = DualBases::new(&p).unwrap();
    let pi = TwistedDouble::new(&p, phi).unwrap().with_crossing(psi).with_rmatrix(&p, &db).unwrap().into_picoalgebra();
    let classical = double_algebra(&p, &Mat::identity(QF, d)).unwrap();
    for a in 0..3 {
        let h = pi.component(&a).unwrap();
        assert_eq!(h.mult(), classical.mult());
        assert_eq!(h.unit(), classical.unit());
    }
    assert!(verify_all(&pi, &[0, 1, 2]).unwrap().all_pass());
}

#[test]
fn pure_tensors_multiply_to_the_tensor() {
    let pair = build_an_pair(2, QF).unwrap();
    let p = &pair.pairing;
    let alpha = pair.group.parse_key("[[1,1],[0,1]]").unwrap();
    let h = double_algebra(p, &pair.phi.matrix(&alpha).unwrap()).unwrap();
    let (one_a, one_b) = (p.a.alg().unit(), p.b.alg().unit());
    for i in 0..p.a.dim() {
        for j in 0..p.b.dim() {
            let a = Vector::basis(QF, p.a.dim(), i);
            let b = Vector::basis(QF, p.b.dim(), j);
            assert_eq!(h.mul(&a.tensor(one_b), &one_a.tensor(&b)), a.tensor(&b));
        }
    }
}

#[test]
fn canonical_element_does_not_depend_on_the_dual_bases() {
    let pair = build_an_pair(1, QF).unwrap();
    let p = &pair.pairing;
    let db = DualBases::new(p).unwrap();
    let n = p.a.dim();
    // e' = P e and f' = P^{-T} f for an invertible upper triangular P
    let rows: Vec<Vec<_>> =
        (0..n).map(|i| (0..n).map(|j| QF.from_i64(if j < i { 0 } else { 1 + (i + 2 * j) as i64 % 3 })).collect()).collect();
    let pm = Mat::from_rows(QF, &rows).unwrap();
    let pinv_t = inverse(&pm).unwrap().transpose();
    let combine = |m: &Mat, v: &[Vector]| -> Vec<Vector> {
        (0..n)
            .map(|i| (0..n).fold(Vector::zero(QF, v[0].dim()), |acc, k| acc.add(&v[k].scale(&m.get(i, k)))))
            .collect()
    };
    let other = DualBases::from_vectors(p, combine(&pm, &db.e), combine(&pinv_t, &db.f)).unwrap();
    assert_eq!(other.canonical(), db.canonical());
    assert!(verify_dual_bases(p, &other).all_pass());
}

#[test]
fn conjugation_dual_action_is_compatible() {
    let g = Arc::new(FiniteGroupTable::symmetric3());
    let (kg, p) = group_pairing(&g);
    let phi = Arc::new(conjugation_action(g.clone(), kg));
    let psi = dual_action(&p, phi.clone()).unwrap();
    for b in 0..6 {
        let (pa, pb) = (phi.matrix(&b).unwrap(), psi.matrix(&b).unwrap());
        assert_eq!(pa.transpose().compose(&p.sigma).compose(&pb), p.sigma);
    }
    assert!(psi.check_action(&(0..6).collect::<Vec<_>>()).unwrap().all_pass());
}

fn dg_s3() -> &'static HopfPiCoalgebra<FiniteGroupTable> {
    static DG: std::sync::OnceLock<HopfPiCoalgebra<FiniteGroupTable>> = std::sync::OnceLock::new();
    DG.get_or_init(|| build_dg(Arc::new(FiniteGroupTable::symmetric3()), QF))
}

fn element(coeffs: &[i64]) -> Vector {
    Vector::from_dense(QF, &coeffs.iter().map(|&c| QF.from_i64(c)).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn comult_and_crossing_are_multiplicative(
        a in 0usize..6,
        b in 0usize..6,
        x in prop::collection::vec(-2i64..=2, 36),
        y in prop::collection::vec(-2i64..=2, 36),
    ) {
        let pi = dg_s3();
        let g = pi.group();
        let ab = g.mul(&a, &b);
        let (x, y) = (element(&x), element(&y));
        let (h, ha, hb) = (pi.component(&ab).unwrap(), pi.component(&a).unwrap(), pi.component(&b).unwrap());
        let delta = pi.comult(&a, &b).unwrap();
        let algs = [&*ha, &*hb];
        prop_assert_eq!(delta.apply(&h.mul(&x, &y)), tensor_mul(&algs, &delta.apply(&x), &delta.apply(&y)));

        let phi = pi.crossing(&a, &ab).unwrap();
        let target = pi.component(&g.conj(&a, &ab)).unwrap();
        prop_assert_eq!(phi.apply(&h.mul(&x, &y)), target.mul(&phi.apply(&x), &phi.apply(&y)));
    }

    #[test]
    fn r_matrix_intertwines_comult(
        a in 0usize..6,
        b in 0usize..6,
        x in prop::collection::vec(-2i64..=2, 36),
    ) {
        // R_{α,β} Δ_{α,β}(x) = τ((φ_{α⁻¹} ⊗ id) Δ_{αβα⁻¹,α}(x)) R_{α,β}, with x ∈ H_{αβ}
        let pi = dg_s3();
        let g = pi.group();
        let x = element(&x);
        let (ha, hb) = (pi.component(&a).unwrap(), pi.component(&b).unwrap());
        let algs = [&*ha, &*hb];
        let r = pi.rmatrix(&a, &b).unwrap();
        let lhs = tensor_mul(&algs, &r, &pi.comult(&a, &b).unwrap().apply(&x));
        let conj_b = g.conj(&a, &b);
        let twisted = pi.crossing(&g.inv(&a), &conj_b).unwrap().kron(&Mat::identity(QF, ha.dim()));
        let moved = twisted.compose(&pi.comult(&conj_b, &a).unwrap()).apply(&x);
        let flipped = hopfpi::tensor::flip_matrix(QF, hb.dim(), ha.dim()).apply(&moved);
        prop_assert_eq!(lhs, tensor_mul(&algs, &flipped, &r));
    }

    #[test]
    fn pairing_turns_products_into_coproducts(
        x in prop::collection::vec(-3i64..=3, 4),
        y in prop::collection::vec(-3i64..=3, 4),
        f in prop::collection::vec(-3i64..=3, 4),
    ) {
        // σ(xy, f) = σ(x, f₂) σ(y, f₁) on the A_1 pairing
        let pair = build_an_pair(1, QF).unwrap();
        let p = &pair.pairing;
        let (x, y, f) = (element(&x), element(&y), element(&f));
        let lhs = p.value(&p.a.alg().mul(&x, &y), &f);
        let sigma2 = p.sigma.kron(&p.sigma);
        let rhs = y.tensor(&x).pair(&sigma2, &p.b.comult().apply(&f));
        prop_assert_eq!(lhs, rhs);
    }
}
