//! Acceptance run: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines show in `cargo test` output; exits nonzero on any
//! failure.

use std::sync::Arc;
use std::time::Instant;

use hopfpi::double::{verify_dual_bases, verify_rinverse_formula, DualBases};
use hopfpi::finite::{
    an_closed_form_report, build_an_coalgebra, build_an_pair, build_dg, build_dg_generic, check_twist_powers,
    default_gl_colors, group_algebra, AnCoalgebra, FiniteGroupTable, GlColor,
};
use hopfpi::hopf::{
    dual_cop_hopf, pairing_annihilators, tensor_mul, verify_hopf, verify_pairing, FinAlgebra, FinHopfAlgebra,
    PairingTable,
};
use hopfpi::pi::{
    compare_picoalgebras, identity_component, verify_all, verify_coideal, verify_colored_ybe, verify_crossing,
    verify_picoalgebra, verify_quasitriangular, verify_r_derived, verify_ribbon, CoidealFamily, GroupOracle,
    HopfPiCoalgebra, PiStructure,
};
use hopfpi::report::VerificationReport;
use hopfpi::scalars::{ScalarField, TruncSeries};
use hopfpi::sl2::{r_matrix_rep, rho, run_sl2_checks, standard_colors, standard_grid, SL2RepData};
use hopfpi::tensor::{Mat, Vector};
use hopfpi::Result;

const QF: ScalarField = ScalarField::Rationals;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Reports collected along the way, for the determinism comparison.
#[derive(Default)]
struct Log(Vec<(String, String)>);

impl Log {
    fn add(&mut self, name: impl Into<String>, r: &VerificationReport) -> bool {
        self.0.push((name.into(), r.to_json()));
        r.all_pass()
    }

    fn to_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .0
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::from_str(v).expect("report JSON")))
            .collect();
        serde_json::to_string_pretty(&map).expect("serializes")
    }
}

fn groups() -> Vec<(&'static str, FiniteGroupTable)> {
    vec![("z2", FiniteGroupTable::cyclic(2)), ("z4", FiniteGroupTable::cyclic(4)), ("s3", FiniteGroupTable::symmetric3())]
}

fn all(g: &FiniteGroupTable) -> Vec<usize> {
    (0..g.order()).collect()
}

fn first_failure(r: &VerificationReport) -> String {
    r.failures().next().map(|e| format!("{} at [{}]", e.axiom, e.colors.join(", "))).unwrap_or_default()
}

fn criterion_1(log: &mut Log) -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, g) in groups() {
        let colors = all(&g);
        let start = Instant::now();
        let pi = build_dg(Arc::new(g), QF);
        let mut r = verify_all(&pi, &colors)?;
        r.merge(check_twist_powers(&pi, &colors, -2..=3)?);
        let ybe = r.axiom("eq20-colored-ybe").count();
        let ok = log.add(format!("dg-{name}"), &r) && ybe == colors.len().pow(3);
        if !ok {
            notes.push(format!("{name}: {}", first_failure(&r)));
        }
        pass &= ok;
        notes.push(format!("{name} {} checks in {:.1}s", r.len(), start.elapsed().as_secs_f64()));
    }
    Ok(Outcome::new(pass, notes.join("; ")))
}

fn criterion_2(log: &mut Log) -> Result<Outcome> {
    let mut pass = true;
    let mut count = 0;
    for (name, g) in groups() {
        let colors = all(&g);
        let g = Arc::new(g);
        let r = compare_picoalgebras(&build_dg(g.clone(), QF), &build_dg_generic(g, QF)?, &colors)?;
        count += r.len();
        pass &= log.add(format!("dg-oracle-{name}"), &r);
    }
    Ok(Outcome::new(pass, format!("{count} map comparisons on z2, z4, s3")))
}

fn commute(a: &GlColor, b: &GlColor) -> bool {
    let n = a.n();
    let prod = |x: &GlColor, y: &GlColor, i: usize, j: usize| {
        (0..n).fold(QF.zero(), |acc, k| &acc + &(x.get(i, k) * y.get(k, j)))
    };
    (0..n).all(|i| (0..n).all(|j| prod(a, b, i, j) == prod(b, a, i, j)))
}

fn criterion_3(log: &mut Log) -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for n in 1..=2 {
        let start = Instant::now();
        let an = build_an_coalgebra(n, QF)?;
        let colors = default_gl_colors(n, QF)?;
        let mut r = an_closed_form_report(&an, &colors)?;
        r.merge(verify_all(&an.quotient, &colors)?);
        let dims_ok = colors.iter().all(|c| an.quotient.dim(c).ok() == Some(1 << (2 * n + 1)));
        let noncommuting = colors.iter().any(|a| colors.iter().any(|b| !commute(a, b)));
        let ok = log.add(format!("an-{n}"), &r) && dims_ok && colors.len() >= 4 && (n == 1 || noncommuting);
        if !ok {
            notes.push(format!("n={n}: {}", first_failure(&r)));
        }
        pass &= ok;
        notes.push(format!("n={n} dim {} with {} checks in {:.1}s", 1 << (2 * n + 1), r.len(), start.elapsed().as_secs_f64()));
    }
    Ok(Outcome::new(pass, notes.join("; ")))
}

fn pairing_facts(name: &str, p: &PairingTable, log: &mut Log) -> Result<bool> {
    let (ia, ib) = pairing_annihilators(p)?;
    let db = DualBases::new(p)?;
    Ok(log.add(format!("pairing-{name}"), &verify_pairing(p))
        & log.add(format!("uqd-{name}"), &verify_dual_bases(p, &db))
        & ia.is_empty()
        & ib.is_empty())
}

fn criterion_4(log: &mut Log) -> Result<Outcome> {
    let mut pass = true;
    for n in 1..=2 {
        let an = build_an_coalgebra(n, QF)?;
        let colors = default_gl_colors(n, QF)?;
        pass &= pairing_facts(&format!("a{n}"), &an.pair.pairing, log)?;
        pass &= log.add(format!("rinverse-a{n}-double"), &verify_rinverse_formula(&an.double, &colors)?);
        pass &= log.add(format!("rinverse-a{n}-quotient"), &verify_rinverse_formula(&an.quotient, &colors)?);
    }
    for (name, g) in groups() {
        let kg = Arc::new(group_algebra(&g, QF)?);
        let (_, p) = dual_cop_hopf(&kg)?;
        pass &= pairing_facts(name, &p, log)?;
        let colors = all(&g);
        let generic = build_dg_generic(Arc::new(g), QF)?;
        pass &= log.add(format!("rinverse-dg-{name}"), &verify_rinverse_formula(&generic, &colors)?);
    }
    Ok(Outcome::new(pass, "pairings of A_1, A_2, k[Z2], k[Z4], k[S3]; annihilators empty; uqd1-3 and R^-1 hold"))
}

/// `R_12`, `R_13` or `R_23` in `H ⊗ H ⊗ H`.
fn embed(r: &Vector, h: &FinAlgebra, legs: (usize, usize)) -> Vector {
    let d = h.dim();
    let mut entries = Vec::new();
    for (k, c) in r.entries() {
        let (i, j) = (k / d, k % d);
        for (u, cu) in h.unit().entries() {
            let idx = match legs {
                (0, 1) => (i * d + j) * d + u,
                (0, 2) => (i * d + u) * d + j,
                _ => (u * d + i) * d + j,
            };
            entries.push((idx, c * cu));
        }
    }
    Vector::from_entries(h.field(), d * d * d, entries)
}

/// Classical checks at the identity color, written out independently of the
/// suites: YBE in `H_1^{⊗3}`, `R Δ(x) = Δ^op(x) R`, centrality of `θ`,
/// `S(θ) = θ` and `ε(θ) = 1`.
fn classical_by_hand<G: GroupOracle>(pi: &HopfPiCoalgebra<G>) -> Result<bool> {
    let one = pi.group().identity();
    let h = pi.component(&one)?;
    let d = h.dim();
    let r = pi.rmatrix(&one, &one)?;
    let algs = [&*h, &*h, &*h];
    let (r12, r13, r23) = (embed(&r, &h, (0, 1)), embed(&r, &h, (0, 2)), embed(&r, &h, (1, 2)));
    let lhs = tensor_mul(&algs, &tensor_mul(&algs, &r12, &r13), &r23);
    let rhs = tensor_mul(&algs, &tensor_mul(&algs, &r23, &r13), &r12);
    let mut ok = lhs == rhs;
    let comult = pi.comult(&one, &one)?;
    let flip = hopfpi::tensor::flip_matrix(h.field(), d, d);
    for i in 0..d {
        let x = h.basis(i);
        let dx = comult.apply(&x);
        ok &= tensor_mul(&[&*h, &*h], &r, &dx) == tensor_mul(&[&*h, &*h], &flip.apply(&dx), &r);
    }
    if pi.has_twist() {
        let theta = pi.twist(&one)?;
        ok &= (0..d).all(|i| h.mul(&theta, &h.basis(i)) == h.mul(&h.basis(i), &theta));
        ok &= pi.antipode(&one)?.apply(&theta) == *theta;
        ok &= pi.counit()?.apply(&theta).get(0).is_one();
    }
    Ok(ok)
}

fn criterion_5(log: &mut Log) -> Result<Outcome> {
    let mut pass = true;
    let dg = Arc::new(build_dg(Arc::new(FiniteGroupTable::symmetric3()), QF));
    let classical = identity_component(dg.clone());
    pass &= log.add("classical-dg-s3", &verify_all(&classical, &[()])?);
    pass &= classical_by_hand(&dg)?;
    for n in 1..=2 {
        let an = build_an_coalgebra(n, QF)?;
        let quotient = Arc::new(an.quotient);
        pass &= log.add(format!("classical-a{n}"), &verify_all(&identity_component(quotient.clone()), &[()])?);
        pass &= classical_by_hand(&quotient)?;
    }
    Ok(Outcome::new(pass, "R_{1,1} and theta_1 of D_G(S3), R_{1,1} of the A_1 and A_2 quotients"))
}

fn criterion_6(log: &mut Log) -> Result<Outcome> {
    let start = Instant::now();
    let colors = standard_colors(6)?;
    let grid = standard_grid(&colors);
    let r = run_sl2_checks(&grid)?;
    let mut pass = log.add("sl2-grid", &r);
    // R = I + h((H⊗H)/2 + 2 E⊗F) mod h^2 at α = β = 0
    let r0 = rho(2, &TruncSeries::parse("0", 2)?)?;
    let field = r0.h.field();
    let hh = r0.h.kron(&r0.h).scale(&field.parse_scalar("1/2")?);
    let ef = r0.e.kron(&r0.f).scale(&field.from_i64(2));
    let expected = Mat::identity(field, 4).add(&hh.add(&ef).scale(&field.parse_scalar("h")?));
    pass &= r_matrix_rep(&r0, &r0)? == expected;
    Ok(Outcome::new(pass, format!("{} grid points, {} checks in {:.1}s", grid.len(), r.len(), start.elapsed().as_secs_f64())))
}

/// Delegates to `base` and adds 1 to the first stored entry of one map.
struct Mutated<G: GroupOracle> {
    base: Arc<HopfPiCoalgebra<G>>,
    kind: &'static str,
    at: Vec<G::Elem>,
}

fn bump_mat(m: &Mat) -> Mat {
    let (i, j, _) = m.triplets().next().expect("nonzero map");
    let field = m.field();
    m.add(&Mat::from_triplets(field, m.rows(), m.cols(), vec![(i, j, field.one())]).expect("in range"))
}

fn bump_vec(v: &Vector) -> Vector {
    let i = v.entries()[0].0;
    v.add(&Vector::basis(v.field(), v.dim(), i))
}

impl<G: GroupOracle> Mutated<G> {
    fn hit(&self, kind: &str, at: &[&G::Elem]) -> bool {
        kind == self.kind && at.len() == self.at.len() && at.iter().zip(&self.at).all(|(a, b)| *a == b)
    }
}

impl<G: GroupOracle> PiStructure<G> for Mutated<G> {
    fn component(&self, a: &G::Elem) -> Result<FinAlgebra> {
        Ok((*self.base.component(a)?).clone())
    }

    fn comult(&self, a: &G::Elem, b: &G::Elem) -> Result<Mat> {
        let m = (*self.base.comult(a, b)?).clone();
        Ok(if self.hit("comult", &[a, b]) { bump_mat(&m) } else { m })
    }

    fn counit(&self) -> Result<Mat> {
        Ok((*self.base.counit()?).clone())
    }

    fn antipode(&self, a: &G::Elem) -> Result<Mat> {
        let m = (*self.base.antipode(a)?).clone();
        Ok(if self.hit("antipode", &[a]) { bump_mat(&m) } else { m })
    }

    fn crossing(&self, b: &G::Elem, a: &G::Elem) -> Option<Result<Mat>> {
        let m = self.base.crossing(b, a).map(|m| (*m).clone());
        Some(m.map(|m| if self.hit("crossing", &[b, a]) { bump_mat(&m) } else { m }))
    }

    fn rmatrix(&self, a: &G::Elem, b: &G::Elem) -> Option<Result<Vector>> {
        let r = self.base.rmatrix(a, b).map(|r| (*r).clone());
        Some(r.map(|r| if self.hit("rmatrix", &[a, b]) { bump_vec(&r) } else { r }))
    }

    fn twist(&self, a: &G::Elem) -> Option<Result<Vector>> {
        let t = self.base.twist(a).map(|t| (*t).clone());
        Some(t.map(|t| if self.hit("twist", &[a]) { bump_vec(&t) } else { t }))
    }
}

type SuiteFn = fn(&HopfPiCoalgebra<FiniteGroupTable>, &[usize]) -> Result<VerificationReport>;

/// The mutated map must make the suite fail, with a witness, at a color
/// tuple that involves the mutated colors.
fn mutation_caught(r: &VerificationReport, keys: &[String]) -> bool {
    let fails: Vec<_> = r.failures().collect();
    !fails.is_empty()
        && fails.iter().all(|e| e.witness.as_ref().is_some_and(|w| !w.is_empty()))
        && fails.iter().any(|e| keys.iter().all(|k| e.colors.contains(k)))
}

fn criterion_7(log: &mut Log) -> Result<Outcome> {
    let g = Arc::new(FiniteGroupTable::symmetric3());
    let base = Arc::new(build_dg(g.clone(), QF));
    let colors = all(&g);
    let (s, t) = (g.parse_key("(12)")?, g.parse_key("(123)")?);
    let cases: [(&str, &str, Vec<usize>, SuiteFn); 7] = [
        ("hopf/antipode", "antipode", vec![s], verify_picoalgebra),
        ("hopf/comult", "comult", vec![s, t], verify_picoalgebra),
        ("crossing", "crossing", vec![t, s], verify_crossing),
        ("qt", "rmatrix", vec![s, t], verify_quasitriangular),
        ("rderived", "rmatrix", vec![s, t], verify_r_derived),
        ("ybe", "rmatrix", vec![s, t], verify_colored_ybe),
        ("ribbon", "twist", vec![s], verify_ribbon),
    ];
    let mut pass = true;
    let mut caught = Vec::new();
    for (family, kind, at, suite) in cases {
        let keys: Vec<String> = at.iter().map(|a| g.key(a)).collect();
        let mutated = HopfPiCoalgebra::new(g.clone(), Arc::new(Mutated { base: base.clone(), kind, at }));
        let r = suite(&mutated, &colors)?;
        log.add(format!("mutation-{family}"), &r);
        let ok = mutation_caught(&r, &keys);
        pass &= ok;
        caught.push(format!("{family}{}", if ok { "" } else { " (missed)" }));
    }

    // Hopf algebra axioms on k[S3] with one comultiplication entry changed
    let kg = group_algebra(&g, QF)?;
    let bad = FinHopfAlgebra::new(kg.alg().clone(), bump_mat(kg.comult()), kg.counit().clone(), kg.antipode().clone())?;
    let ok = !verify_hopf(&bad)?.all_pass();
    pass &= ok;
    caught.push(format!("hopf-algebra{}", if ok { "" } else { " (missed)" }));

    // pairing table and dual bases of A_1
    let pair = build_an_pair(1, QF)?;
    let p = &pair.pairing;
    let bad = PairingTable::new(p.a.clone(), p.b.clone(), bump_mat(&p.sigma))?;
    let ok = !log.add("mutation-pairing", &verify_pairing(&bad));
    pass &= ok;
    caught.push(format!("pairing{}", if ok { "" } else { " (missed)" }));
    let mut db = DualBases::new(p)?;
    db.f[1] = db.f[1].add(&db.f[2]);
    let ok = !log.add("mutation-uqd", &verify_dual_bases(p, &db));
    pass &= ok;
    caught.push(format!("dual-bases{}", if ok { "" } else { " (missed)" }));

    // coideal: g - 2h in place of g - h
    let an = build_an_coalgebra(1, QF)?;
    let ok = coideal_mutation_caught(&an, log)?;
    pass &= ok;
    caught.push(format!("coideal{}", if ok { "" } else { " (missed)" }));

    // sl2 relations with one entry of E changed
    let mut r = rho(3, &TruncSeries::parse("h", 6)?)?;
    r.e = bump_mat(&r.e);
    let ok = !log.add("mutation-sl2", &SL2RepData::relation_report(&r)?);
    pass &= ok;
    caught.push(format!("sl2{}", if ok { "" } else { " (missed)" }));

    Ok(Outcome::new(pass, format!("caught: {}", caught.join(", "))))
}

fn coideal_mutation_caught(an: &AnCoalgebra, log: &mut Log) -> Result<bool> {
    let colors = default_gl_colors(1, QF)?;
    let good = verify_coideal(&an.double, &an.family, &colors)?;
    let pair = &an.pair;
    let (d, g_idx) = (pair.dim(), pair.g());
    let one_a = pair.a.alg().unit().clone();
    let one_b = pair.b.alg().unit().clone();
    let base = an.double.clone();
    let bad = CoidealFamily::new(move |alpha: &GlColor| {
        let g = Vector::basis(QF, d, g_idx).tensor(&one_b);
        let h2 = one_a.tensor(&Vector::basis(QF, d, g_idx)).scale(&QF.from_i64(2));
        Ok(hopfpi::hopf::generated_ideal(&*base.component(alpha)?, &[g.sub(&h2)])?.basis())
    });
    let bad = verify_coideal(&an.double, &bad, &colors)?;
    Ok(log.add("coideal-a1", &good) & !log.add("mutation-coideal", &bad))
}

type Criterion = fn(&mut Log) -> Result<Outcome>;

const CRITERIA: [(&str, Criterion); 7] = [
    ("D_G(G) ribbon suite on Z/2, Z/4, S3", criterion_1),
    ("D_G(G) closed form equals the generic double", criterion_2),
    ("A_n quotient suite for n = 1, 2", criterion_3),
    ("pairing facts, dual bases, R inverse", criterion_4),
    ("classical specialization at the identity color", criterion_5),
    ("h-adic sl2 relations, QT1 and colored YBE", criterion_6),
    ("negative controls", criterion_7),
];

fn run_all(print: bool) -> (bool, String) {
    let mut log = Log::default();
    let mut all_pass = true;
    for (i, (title, f)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = f(&mut log).unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        all_pass &= outcome.pass;
        if print {
            let tag = if outcome.pass { "PASS" } else { "FAIL" };
            println!("criterion {}: {tag} {title} ({:.1}s): {}", i + 1, start.elapsed().as_secs_f64(), outcome.detail);
        }
    }
    (all_pass, log.to_json())
}

fn main() {
    let (first_pass, first) = run_all(true);
    // second independent run on a differently sized thread pool
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().expect("thread pool");
    let (_, second) = pool.install(|| run_all(false));
    let same = first == second;
    println!(
        "criterion 8: {} determinism: two runs give byte-identical reports ({} bytes)",
        if same { "PASS" } else { "FAIL" },
        first.len()
    );
    if !(first_pass && same) {
        std::process::exit(1);
    }
}
