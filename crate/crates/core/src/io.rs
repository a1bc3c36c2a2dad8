//! JSON formats: sparse matrices and vectors, Hopf algebra and pairing
//! files, action files, and π-coalgebra bundles (a directory holding
//! `manifest.json` and one file per structure item).

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::double::HopfAction;
use crate::error::{Error, Result};
use crate::finite::{FiniteGroupTable, GlGroup};
use crate::hopf::{FinAlgebra, FinHopfAlgebra, PairingTable};
use crate::pi::{GroupOracle, HopfPiCoalgebra, PiStructure, Stored, TrivialGroup};
use crate::scalars::ScalarField;
use crate::tensor::{Mat, Vector};

pub const BUNDLE_FORMAT: &str = "hopfpi-bundle";

fn bad(what: &str) -> Error {
    Error::Json(format!("missing or malformed field '{what}'"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(key))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(key))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| bad(key))
}

/// `{"rows": r, "cols": c, "entries": [[i, j, scalar], ...]}`, entries in
/// column-major order.
pub fn matrix_to_json(m: &Mat) -> Value {
    let field = m.field();
    let mut entries: Vec<(usize, usize, Value)> = m.triplets().map(|(i, j, c)| (i, j, field.scalar_to_json(c))).collect();
    entries.sort_by_key(|(i, j, _)| (*j, *i));
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries.into_iter().map(|(i, j, c)| json!([i, j, c])).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(field: ScalarField, v: &Value) -> Result<Mat> {
    let (rows, cols) = (get_usize(v, "rows")?, get_usize(v, "cols")?);
    let entries = get(v, "entries")?.as_array().ok_or_else(|| bad("entries"))?;
    let mut trip = Vec::with_capacity(entries.len());
    for e in entries {
        let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| bad("entries"))?;
        let i = e[0].as_u64().ok_or_else(|| bad("entries"))? as usize;
        let j = e[1].as_u64().ok_or_else(|| bad("entries"))? as usize;
        if i >= rows || j >= cols {
            return Err(Error::Json(format!("entry ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
        trip.push((i, j, field.scalar_from_json(&e[2])?));
    }
    Mat::from_triplets(field, rows, cols, trip)
}

/// `{"dim": d, "entries": [[i, scalar], ...]}`.
pub fn vector_to_json(v: &Vector) -> Value {
    let field = v.field();
    json!({
        "dim": v.dim(),
        "entries": v.entries().iter().map(|(i, c)| json!([i, field.scalar_to_json(c)])).collect::<Vec<_>>(),
    })
}

pub fn vector_from_json(field: ScalarField, v: &Value) -> Result<Vector> {
    let dim = get_usize(v, "dim")?;
    let entries = get(v, "entries")?.as_array().ok_or_else(|| bad("entries"))?;
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let e = e.as_array().filter(|e| e.len() == 2).ok_or_else(|| bad("entries"))?;
        let i = e[0].as_u64().ok_or_else(|| bad("entries"))? as usize;
        if i >= dim {
            return Err(Error::Json(format!("entry {i} outside dimension {dim}")));
        }
        out.push((i, field.scalar_from_json(&e[1])?));
    }
    Ok(Vector::from_entries(field, dim, out))
}

pub fn algebra_to_json(a: &FinAlgebra) -> Value {
    json!({
        "field": a.field().to_string(),
        "dim": a.dim(),
        "labels": a.labels(),
        "mult": matrix_to_json(a.mult()),
        "unit": vector_to_json(a.unit()),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<FinAlgebra> {
    let field = ScalarField::parse(get_str(v, "field")?)?;
    let dim = get_usize(v, "dim")?;
    let labels: Vec<String> = match v.get("labels") {
        Some(l) => serde_json::from_value(l.clone()).map_err(|_| bad("labels"))?,
        None => (0..dim).map(|i| format!("b{i}")).collect(),
    };
    if labels.len() != dim {
        return Err(Error::Json(format!("{} labels for dimension {dim}", labels.len())));
    }
    let mult = matrix_from_json(field, get(v, "mult")?)?;
    let unit = vector_from_json(field, get(v, "unit")?)?;
    FinAlgebra::new(field, labels, mult, unit)
}

/// Hopf algebra file: the algebra fields plus `comult`, `counit`, `antipode`.
pub fn hopf_to_json(h: &FinHopfAlgebra) -> Value {
    let mut v = algebra_to_json(h.alg());
    let obj = v.as_object_mut().expect("object");
    obj.insert("comult".into(), matrix_to_json(h.comult()));
    obj.insert("counit".into(), matrix_to_json(h.counit()));
    obj.insert("antipode".into(), matrix_to_json(h.antipode()));
    v
}

/// Reads a Hopf algebra file and checks the Hopf algebra axioms.
pub fn hopf_from_json(v: &Value) -> Result<FinHopfAlgebra> {
    let alg = algebra_from_json(v)?;
    let field = alg.field();
    let comult = matrix_from_json(field, get(v, "comult")?)?;
    let counit = matrix_from_json(field, get(v, "counit")?)?;
    let antipode = matrix_from_json(field, get(v, "antipode")?)?;
    FinHopfAlgebra::validated(alg, comult, counit, antipode)
}

/// Pairing file: `{"A": ref, "B": ref, "sigma": matrix}` where the refs are
/// file names (or inline Hopf algebra objects).
pub fn pairing_to_json(p: &PairingTable, a_ref: &str, b_ref: &str) -> Value {
    json!({ "A": a_ref, "B": b_ref, "sigma": matrix_to_json(&p.sigma) })
}

pub fn pairing_from_json(v: &Value, a: Arc<FinHopfAlgebra>, b: Arc<FinHopfAlgebra>) -> Result<PairingTable> {
    let sigma = matrix_from_json(a.field(), get(v, "sigma")?)?;
    PairingTable::new(a, b, sigma)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| Error::File { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Json(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::File { path: path.display().to_string(), source })
}

/// Reads a group from its descriptor.
pub enum AnyGroup {
    Trivial(TrivialGroup),
    Finite(FiniteGroupTable),
    Gl(GlGroup),
}

pub fn group_from_descriptor(v: &Value) -> Result<AnyGroup> {
    match get_str(v, "kind")? {
        "trivial" => Ok(AnyGroup::Trivial(TrivialGroup)),
        "finite-table" => Ok(AnyGroup::Finite(FiniteGroupTable::from_json(v)?)),
        "gl" => {
            let field = ScalarField::parse(get_str(v, "field")?)?;
            Ok(AnyGroup::Gl(GlGroup::new(get_usize(v, "n")?, field)))
        }
        other => Err(Error::Json(format!("unsupported group kind '{other}'"))),
    }
}

/// Action file: `{"group": descriptor, "matrices": {color: matrix}}`, or
/// `{"group": descriptor, "generator-rule": "conjugation"}` for a finite
/// group acting on its group algebra (basis labelled by element names).
pub fn action_from_json<G: GroupOracle>(
    group: Arc<G>,
    target: Arc<FinHopfAlgebra>,
    v: &Value,
) -> Result<HopfAction<G>> {
    let field = target.field();
    if let Some(rule) = v.get("generator-rule") {
        return match rule.as_str() {
            Some("conjugation") => {
                let labels: Vec<String> = target.alg().labels().to_vec();
                let index = move |name: &str| {
                    labels.iter().position(|l| l == name).ok_or_else(|| Error::Invalid(format!("no basis element '{name}'")))
                };
                let g = group.clone();
                Ok(HopfAction::new(group, target.clone(), move |b| {
                    let d = target.dim();
                    let columns = (0..d)
                        .map(|i| {
                            let x = g.parse_key(&target.alg().labels()[i])?;
                            Ok(Vector::basis(field, d, index(&g.key(&g.conj(b, &x)))?))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Mat::from_columns(field, d, columns)
                }))
            }
            _ => Err(Error::Json(format!("unknown generator rule {rule}"))),
        };
    }
    let obj = get(v, "matrices")?.as_object().ok_or_else(|| bad("matrices"))?;
    let mut table = HashMap::new();
    for (k, m) in obj {
        let c = group.parse_key(k)?;
        table.insert(group.key(&c), matrix_from_json(field, m)?);
    }
    let id_key = group.key(&group.identity());
    let d = target.dim();
    let g = group.clone();
    Ok(HopfAction::new(group, target, move |b| {
        let key = g.key(b);
        match table.get(&key) {
            Some(m) => Ok(m.clone()),
            None if key == id_key => Ok(Mat::identity(field, d)),
            None => Err(Error::Missing { what: "action matrix".into(), colors: key }),
        }
    }))
}

/// Structure read back from a bundle; absent items are reported as missing.
pub struct StoredStructure<G: GroupOracle> {
    group: Arc<G>,
    items: HashMap<(String, Vec<String>), Stored>,
    crossed: bool,
    quasitriangular: bool,
    twisted: bool,
}

impl<G: GroupOracle> StoredStructure<G> {
    fn lookup(&self, kind: &str, elems: &[&G::Elem]) -> Result<Stored> {
        let keys: Vec<String> = elems.iter().map(|e| self.group.key(e)).collect();
        self.items
            .get(&(kind.to_string(), keys.clone()))
            .cloned()
            .ok_or_else(|| Error::Missing { what: format!("{kind} in bundle"), colors: keys.join(", ") })
    }

    fn map(&self, kind: &str, elems: &[&G::Elem]) -> Result<Mat> {
        match self.lookup(kind, elems)? {
            Stored::Map(m) => Ok((*m).clone()),
            _ => Err(Error::Json(format!("{kind} entry is not a matrix"))),
        }
    }

    fn elem(&self, kind: &str, elems: &[&G::Elem]) -> Result<Vector> {
        match self.lookup(kind, elems)? {
            Stored::Elem(v) => Ok((*v).clone()),
            _ => Err(Error::Json(format!("{kind} entry is not an element"))),
        }
    }
}

impl<G: GroupOracle> PiStructure<G> for StoredStructure<G> {
    fn component(&self, alpha: &G::Elem) -> Result<FinAlgebra> {
        match self.lookup("component", &[alpha])? {
            Stored::Alg(a) => Ok((*a).clone()),
            _ => Err(Error::Json("component entry is not an algebra".into())),
        }
    }

    fn comult(&self, alpha: &G::Elem, beta: &G::Elem) -> Result<Mat> {
        self.map("comult", &[alpha, beta])
    }

    fn counit(&self) -> Result<Mat> {
        self.map("counit", &[])
    }

    fn antipode(&self, alpha: &G::Elem) -> Result<Mat> {
        self.map("antipode", &[alpha])
    }

    fn crossing(&self, beta: &G::Elem, alpha: &G::Elem) -> Option<Result<Mat>> {
        self.crossed.then(|| self.map("crossing", &[beta, alpha]))
    }

    fn rmatrix(&self, alpha: &G::Elem, beta: &G::Elem) -> Option<Result<Vector>> {
        self.quasitriangular.then(|| self.elem("rmatrix", &[alpha, beta]))
    }

    fn rmatrix_inverse(&self, alpha: &G::Elem, beta: &G::Elem) -> Option<Result<Vector>> {
        let keys = vec![self.group.key(alpha), self.group.key(beta)];
        self.items.contains_key(&("rmatrix-inverse".to_string(), keys)).then(|| self.elem("rmatrix-inverse", &[alpha, beta]))
    }

    fn twist(&self, alpha: &G::Elem) -> Option<Result<Vector>> {
        self.twisted.then(|| self.elem("twist", &[alpha]))
    }
}

/// A π-coalgebra read from a bundle, with the colors it was built for.
pub struct Bundle<G: GroupOracle> {
    pub pi: HopfPiCoalgebra<G>,
    pub colors: Vec<G::Elem>,
    pub field: ScalarField,
    pub manifest: Value,
}

/// A bundle over whichever group its manifest names.
pub enum AnyBundle {
    Trivial(Bundle<TrivialGroup>),
    Finite(Bundle<FiniteGroupTable>),
    Gl(Bundle<GlGroup>),
}

fn stored_to_json(s: &Stored) -> Value {
    match s {
        Stored::Alg(a) => algebra_to_json(a),
        Stored::Map(m) => matrix_to_json(m),
        Stored::Elem(v) => vector_to_json(v),
    }
}

fn stored_from_json(kind: &str, field: ScalarField, v: &Value) -> Result<Stored> {
    Ok(match kind {
        "component" => Stored::Alg(Arc::new(algebra_from_json(v)?)),
        "comult" | "counit" | "antipode" | "crossing" => Stored::Map(Arc::new(matrix_from_json(field, v)?)),
        "rmatrix" | "rmatrix-inverse" | "twist" => Stored::Elem(Arc::new(vector_from_json(field, v)?)),
        other => return Err(Error::Json(format!("unknown bundle item kind '{other}'"))),
    })
}

/// Kinds written to bundles; inverses of twists are recomputed on load.
const BUNDLE_KINDS: [&str; 8] =
    ["component", "comult", "counit", "antipode", "crossing", "rmatrix", "rmatrix-inverse", "twist"];

/// Computes every structure item over all pairs of the given colors (and
/// their products, inverses and conjugates, as needed by the maps).
pub fn materialize<G: GroupOracle>(pi: &HopfPiCoalgebra<G>, colors: &[G::Elem]) -> Result<()> {
    let g = pi.group();
    pi.counit()?;
    let (crossed, qt, tw) = (pi.is_crossed(), pi.is_quasitriangular(), pi.has_twist());
    for a in colors {
        pi.component(a)?;
        pi.antipode(a)?;
        pi.antipode(&g.inv(a))?;
        if tw {
            pi.twist(a)?;
        }
        for b in colors {
            pi.comult(a, b)?;
            if crossed {
                pi.crossing(a, b)?;
            }
            if qt {
                pi.rmatrix(a, b)?;
                pi.rmatrix_inverse(a, b)?;
            }
        }
    }
    Ok(())
}

/// Writes everything `pi` has computed so far into `dir`.
pub fn write_bundle<G: GroupOracle>(dir: &Path, pi: &HopfPiCoalgebra<G>, colors: &[G::Elem], field: ScalarField) -> Result<Value> {
    fs::create_dir_all(dir).map_err(|source| Error::File { path: dir.display().to_string(), source })?;
    let g = pi.group();
    let mut entries = Vec::new();
    let mut counters: HashMap<&str, usize> = HashMap::new();
    for (kind, keys, item) in pi.snapshot() {
        if !BUNDLE_KINDS.contains(&kind) {
            continue;
        }
        let n = counters.entry(kind).or_insert(0);
        let file = format!("{kind}-{n:04}.json");
        *n += 1;
        write_json(&dir.join(&file), &stored_to_json(&item))?;
        entries.push(json!({ "kind": kind, "colors": keys, "file": file }));
    }
    let manifest = json!({
        "format": BUNDLE_FORMAT,
        "version": 1,
        "field": field.to_string(),
        "group": g.descriptor(),
        "colors": colors.iter().map(|c| g.key(c)).collect::<Vec<_>>(),
        "structure": {
            "crossed": pi.is_crossed(),
            "quasitriangular": pi.is_quasitriangular(),
            "twist": pi.has_twist(),
        },
        "entries": entries,
    });
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

/// The manifest with every entry's file contents inlined under `"data"`.
pub fn bundle_to_single_json(dir: &Path) -> Result<Value> {
    let mut manifest = read_json(&dir.join("manifest.json"))?;
    let entries = manifest.get_mut("entries").and_then(Value::as_array_mut).ok_or_else(|| bad("entries"))?;
    for e in entries.iter_mut() {
        let file = get_str(e, "file")?.to_string();
        let data = read_json(&dir.join(&file))?;
        let obj = e.as_object_mut().ok_or_else(|| bad("entries"))?;
        obj.remove("file");
        obj.insert("data".into(), data);
    }
    Ok(manifest)
}

fn load_typed<G: GroupOracle>(group: G, manifest: Value, dir: Option<&Path>) -> Result<Bundle<G>> {
    let group = Arc::new(group);
    let field = ScalarField::parse(get_str(&manifest, "field")?)?;
    let structure = get(&manifest, "structure")?;
    let flag = |k: &str| structure.get(k).and_then(Value::as_bool).unwrap_or(false);
    let mut items = HashMap::new();
    for e in get(&manifest, "entries")?.as_array().ok_or_else(|| bad("entries"))? {
        let kind = get_str(e, "kind")?;
        let keys: Vec<String> = serde_json::from_value(get(e, "colors")?.clone()).map_err(|_| bad("colors"))?;
        let data = match (e.get("data"), dir) {
            (Some(d), _) => d.clone(),
            (None, Some(dir)) => read_json(&dir.join(get_str(e, "file")?))?,
            (None, None) => return Err(bad("data")),
        };
        items.insert((kind.to_string(), keys), stored_from_json(kind, field, &data)?);
    }
    let colors = serde_json::from_value::<Vec<String>>(get(&manifest, "colors")?.clone())
        .map_err(|_| bad("colors"))?
        .iter()
        .map(|k| group.parse_key(k))
        .collect::<Result<Vec<_>>>()?;
    let provider = StoredStructure {
        group: group.clone(),
        items,
        crossed: flag("crossed"),
        quasitriangular: flag("quasitriangular"),
        twisted: flag("twist"),
    };
    let pi = HopfPiCoalgebra::new(group, Arc::new(provider));
    Ok(Bundle { pi, colors, field, manifest })
}

fn load_any(manifest: Value, dir: Option<&Path>) -> Result<AnyBundle> {
    if get_str(&manifest, "format")? != BUNDLE_FORMAT {
        return Err(Error::Json(format!("not a {BUNDLE_FORMAT} manifest")));
    }
    let entries_only = manifest.clone();
    Ok(match group_from_descriptor(get(&manifest, "group")?)? {
        AnyGroup::Trivial(g) => AnyBundle::Trivial(load_typed(g, entries_only, dir)?),
        AnyGroup::Finite(g) => AnyBundle::Finite(load_typed(g, entries_only, dir)?),
        AnyGroup::Gl(g) => AnyBundle::Gl(load_typed(g, entries_only, dir)?),
    })
}

/// Reads a bundle directory, or a single-file export.
pub fn read_bundle(path: &Path) -> Result<AnyBundle> {
    if path.is_dir() {
        load_any(read_json(&path.join("manifest.json"))?, Some(path))
    } else {
        load_any(read_json(path)?, None)
    }
}

/// Compact summary of a bundle.
pub fn bundle_summary<G: GroupOracle>(b: &Bundle<G>) -> Result<Value> {
    let g = b.pi.group();
    let mut dims = Map::new();
    for c in &b.colors {
        dims.insert(g.key(c), json!(b.pi.dim(c)?));
    }
    let entries = b.manifest.get("entries").and_then(Value::as_array).map(|e| e.len()).unwrap_or(0);
    Ok(json!({
        "group": g.descriptor(),
        "field": b.field.to_string(),
        "colors": b.colors.iter().map(|c| g.key(c)).collect::<Vec<_>>(),
        "dims": dims,
        "structure": b.manifest.get("structure").cloned().unwrap_or(Value::Null),
        "entries": entries,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{build_dg, group_algebra};

    const QF: ScalarField = ScalarField::Rationals;

    #[test]
    fn matrix_round_trip_over_each_field() {
        for field in [QF, ScalarField::prime(7).unwrap(), ScalarField::series(3).unwrap()] {
            let m = Mat::from_rows(field, &[vec![field.from_i64(1), field.zero()], vec![field.from_i64(-3), field.from_i64(2)]])
                .unwrap();
            assert_eq!(matrix_from_json(field, &matrix_to_json(&m)).unwrap(), m);
        }
        let v = matrix_to_json(&Mat::identity(QF, 1));
        assert_eq!(v, json!({"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]}));
    }

    #[test]
    fn hopf_round_trip() {
        let h = group_algebra(&FiniteGroupTable::cyclic(3), QF).unwrap();
        assert_eq!(hopf_from_json(&hopf_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let v = json!({"rows": 1, "cols": 1, "entries": [[1, 0, "1"]]});
        assert!(matrix_from_json(QF, &v).is_err());
    }

    #[test]
    fn bundle_round_trip_preserves_maps() {
        let dir = std::env::temp_dir().join(format!("hopfpi-io-test-{}", std::process::id()));
        let g = Arc::new(FiniteGroupTable::cyclic(2));
        let pi = build_dg(g, QF);
        materialize(&pi, &[0, 1]).unwrap();
        write_bundle(&dir, &pi, &[0, 1], QF).unwrap();
        let AnyBundle::Finite(b) = read_bundle(&dir).unwrap() else { panic!("wrong group kind") };
        let r = crate::pi::compare_picoalgebras(&pi, &b.pi, &[0, 1]).unwrap();
        assert!(r.all_pass(), "{r}");
        fs::remove_dir_all(&dir).unwrap();
    }
}
