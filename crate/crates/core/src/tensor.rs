//! Sparse vectors and matrices over a [`ScalarField`], multi-leg tensor
//! plumbing and exact elimination.
//!
//! Tensor bases are ordered lexicographically with the left factor major:
//! in `V_0 ⊗ ... ⊗ V_{k-1}` the basis element `e_{i_0} ⊗ ... ⊗ e_{i_{k-1}}`
//! has index `((i_0 * d_1 + i_1) * d_2 + ...)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Q, Scalar, ScalarField};

/// Sparse vector: sorted `(index, nonzero scalar)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: ScalarField,
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl Vector {
    pub fn zero(field: ScalarField, dim: usize) -> Self {
        Vector { field, dim, entries: Vec::new() }
    }

    pub fn basis(field: ScalarField, dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        Vector { field, dim, entries: vec![(i, field.one())] }
    }

    /// Builds a vector from possibly repeated, unsorted entries.
    pub fn from_entries(
        field: ScalarField,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Self {
        let mut acc = Accumulator::new(field, dim);
        for (i, c) in entries {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn from_dense(field: ScalarField, values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Vector { field, dim: values.len(), entries }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    fn check_same(&self, o: &Vector) {
        assert!(
            self.dim == o.dim && self.field == o.field,
            "vector mismatch: dim {} over {} vs dim {} over {}",
            self.dim,
            self.field,
            o.dim,
            o.field
        );
    }

    /// `self + c * o`.
    pub fn add_scaled(&self, c: &Scalar, o: &Vector) -> Vector {
        self.check_same(o);
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + o.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), o.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    let p = c * y;
                    if !p.is_zero() {
                        out.push((*j, p));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        Vector { field: self.field, dim: self.dim, entries: out }
    }

    pub fn add(&self, o: &Vector) -> Vector {
        self.add_scaled(&self.field.one(), o)
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        self.add_scaled(&self.field.from_i64(-1), o)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero(self.field, self.dim);
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|(i, x)| {
                let p = x * c;
                (!p.is_zero()).then_some((*i, p))
            })
            .collect();
        Vector { field: self.field, dim: self.dim, entries }
    }

    pub fn neg(&self) -> Vector {
        let entries = self.entries.iter().map(|(i, x)| (*i, -x)).collect();
        Vector { field: self.field, dim: self.dim, entries }
    }

    /// `self ⊗ o` on the lexicographic basis.
    pub fn tensor(&self, o: &Vector) -> Vector {
        assert_eq!(self.field, o.field, "tensor of vectors over different fields");
        let mut entries = Vec::with_capacity(self.entries.len() * o.entries.len());
        for (i, x) in &self.entries {
            for (j, y) in &o.entries {
                let p = x * y;
                if !p.is_zero() {
                    entries.push((i * o.dim + j, p));
                }
            }
        }
        Vector { field: self.field, dim: self.dim * o.dim, entries }
    }

    /// Smallest index where the two vectors differ.
    pub fn first_difference(&self, o: &Vector) -> Option<usize> {
        self.sub(o).entries.first().map(|(i, _)| *i)
    }

    /// Bilinear form `selfᵀ M o`.
    pub fn pair(&self, m: &Mat, o: &Vector) -> Scalar {
        let mo = m.apply(o);
        let mut acc = self.field.zero();
        let mut j = 0;
        for (i, x) in &self.entries {
            while j < mo.entries.len() && mo.entries[j].0 < *i {
                j += 1;
            }
            if j < mo.entries.len() && mo.entries[j].0 == *i {
                acc += &(x * &mo.entries[j].1);
            }
        }
        acc
    }
}

/// Hash-map backed builder for sparse vectors.
pub struct Accumulator {
    field: ScalarField,
    dim: usize,
    map: HashMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new(field: ScalarField, dim: usize) -> Self {
        Accumulator { field, dim, map: HashMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_vector(&mut self, c: &Scalar, v: &Vector) {
        for (i, x) in &v.entries {
            self.add(*i, &(c * x));
        }
    }

    pub fn finish(self) -> Vector {
        let mut entries: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_unstable_by_key(|(i, _)| *i);
        Vector { field: self.field, dim: self.dim, entries }
    }
}

/// Column-sparse matrix; column `j` is the image of the `j`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: ScalarField,
    rows: usize,
    cols: usize,
    columns: Vec<Vector>,
}

impl Mat {
    pub fn zero(field: ScalarField, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, columns: vec![Vector::zero(field, rows); cols] }
    }

    pub fn identity(field: ScalarField, n: usize) -> Self {
        Mat { field, rows: n, cols: n, columns: (0..n).map(|i| Vector::basis(field, n, i)).collect() }
    }

    pub fn diag(field: ScalarField, values: &[Scalar]) -> Self {
        let n = values.len();
        let columns = values
            .iter()
            .enumerate()
            .map(|(i, c)| Vector::from_entries(field, n, [(i, c.clone())]))
            .collect();
        Mat { field, rows: n, cols: n, columns }
    }

    pub fn from_columns(field: ScalarField, rows: usize, columns: Vec<Vector>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.dim != rows || c.field != field {
                return Err(Error::Shape(format!(
                    "column {j} has dimension {} over {}, expected {rows} over {field}",
                    c.dim, c.field
                )));
            }
        }
        Ok(Mat { field, rows, cols: columns.len(), columns })
    }

    pub fn from_triplets(
        field: ScalarField,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut accs: Vec<Accumulator> = (0..cols).map(|_| Accumulator::new(field, rows)).collect();
        for (i, j, c) in entries {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            if c.field() != field {
                return Err(Error::Shape(format!("entry ({i},{j}) is over {}, expected {field}", c.field())));
            }
            accs[j].add(i, &c);
        }
        Ok(Mat { field, rows, cols, columns: accs.into_iter().map(Accumulator::finish).collect() })
    }

    /// Builds a matrix from dense rows.
    pub fn from_rows(field: ScalarField, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            for (j, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    triplets.push((i, j, c.clone()));
                }
            }
        }
        Mat::from_triplets(field, rows.len(), cols, triplets)
    }

    /// The 1×d matrix of a linear form.
    pub fn row_vector(v: &Vector) -> Self {
        let columns = (0..v.dim)
            .map(|j| Vector::from_entries(v.field, 1, [(0, v.get(j))]))
            .collect();
        Mat { field: v.field, rows: 1, cols: v.dim, columns }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vector::nnz).sum()
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, x) in self.triplets() {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.columns.iter().enumerate().all(|(j, c)| c.entries.len() == 1 && c.entries[0].0 == j && c.entries[0].1.is_one())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim, self.cols, "applying a {}x{} matrix to a vector of dimension {}", self.rows, self.cols, v.dim);
        let mut acc = Accumulator::new(self.field, self.rows);
        for (j, c) in &v.entries {
            acc.add_vector(c, &self.columns[*j]);
        }
        acc.finish()
    }

    /// Matrix product `self · o` (apply `o` first).
    pub fn compose(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "composing {}x{} with {}x{}", self.rows, self.cols, o.rows, o.cols);
        let columns = o.columns.iter().map(|c| self.apply(c)).collect();
        Mat { field: self.field, rows: self.rows, cols: o.cols, columns }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let columns = self.columns.iter().zip(&o.columns).map(|(a, b)| a.add(b)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let columns = self.columns.iter().zip(&o.columns).map(|(a, b)| a.sub(b)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let columns = self.columns.iter().map(|v| v.scale(c)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    pub fn transpose(&self) -> Mat {
        let mut accs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (i, j, x) in self.triplets() {
            accs[i].push((j, x.clone()));
        }
        let columns = accs
            .into_iter()
            .map(|mut e| {
                e.sort_unstable_by_key(|(j, _)| *j);
                Vector { field: self.field, dim: self.cols, entries: e }
            })
            .collect();
        Mat { field: self.field, rows: self.cols, cols: self.rows, columns }
    }

    /// Kronecker product: `(A ⊗ B)(v ⊗ w) = Av ⊗ Bw`.
    pub fn kron(&self, o: &Mat) -> Mat {
        assert_eq!(self.field, o.field);
        let mut columns = Vec::with_capacity(self.cols * o.cols);
        for a in &self.columns {
            for b in &o.columns {
                columns.push(a.tensor(b));
            }
        }
        Mat { field: self.field, rows: self.rows * o.rows, cols: self.cols * o.cols, columns }
    }

    /// Index of the first column where the matrices differ.
    pub fn first_difference(&self, o: &Mat) -> Option<usize> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        (0..self.cols).find(|&j| self.columns[j] != o.columns[j])
    }
}

/// The permutation `e_i ⊗ e_j ↦ e_j ⊗ e_i` from `V_{d1} ⊗ V_{d2}` to `V_{d2} ⊗ V_{d1}`.
pub fn flip_matrix(field: ScalarField, d1: usize, d2: usize) -> Mat {
    let columns = (0..d1 * d2)
        .map(|idx| {
            let (i, j) = (idx / d2, idx % d2);
            Vector::basis(field, d1 * d2, j * d1 + i)
        })
        .collect();
    Mat { field, rows: d1 * d2, cols: d1 * d2, columns }
}

/// One leg of a multi-leg linear map.
#[derive(Clone, Copy)]
pub enum Leg<'a> {
    Id(usize),
    Map(&'a Mat),
}

impl Leg<'_> {
    fn in_dim(&self) -> usize {
        match self {
            Leg::Id(d) => *d,
            Leg::Map(m) => m.cols,
        }
    }

    fn out_dim(&self) -> usize {
        match self {
            Leg::Id(d) => *d,
            Leg::Map(m) => m.rows,
        }
    }
}

/// Splits a tensor index into per-leg indices.
pub fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub fn join_index(parts: &[usize], dims: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (p, d)| acc * d + p)
}

/// Applies `L_0 ⊗ ... ⊗ L_{k-1}` to a vector in the tensor product of the
/// legs' domains.
pub fn apply_legs(legs: &[Leg<'_>], v: &Vector) -> Vector {
    let in_dims: Vec<usize> = legs.iter().map(Leg::in_dim).collect();
    let out_dims: Vec<usize> = legs.iter().map(Leg::out_dim).collect();
    let in_total: usize = in_dims.iter().product();
    let out_total: usize = out_dims.iter().product();
    assert_eq!(v.dim, in_total, "leg domains multiply to {in_total}, vector has dimension {}", v.dim);
    let field = v.field;
    let mut acc = Accumulator::new(field, out_total);
    for (idx, c) in &v.entries {
        let parts = split_index(*idx, &in_dims);
        // expand leg by leg: (partial out index, coefficient)
        let mut partial: Vec<(usize, Scalar)> = vec![(0, c.clone())];
        for (k, leg) in legs.iter().enumerate() {
            let d = out_dims[k];
            partial = match leg {
                Leg::Id(_) => partial.into_iter().map(|(o, x)| (o * d + parts[k], x)).collect(),
                Leg::Map(m) => {
                    let col = &m.columns[parts[k]];
                    let mut next = Vec::with_capacity(partial.len() * col.entries.len());
                    for (o, x) in &partial {
                        for (i, y) in &col.entries {
                            next.push((o * d + i, x * y));
                        }
                    }
                    next
                }
            };
            if partial.is_empty() {
                break;
            }
        }
        for (o, x) in partial {
            acc.add(o, &x);
        }
    }
    acc.finish()
}

/// Reorders tensor legs: output leg `k` is input leg `perm[k]`.
pub fn permute_legs(v: &Vector, dims: &[usize], perm: &[usize]) -> Vector {
    assert_eq!(dims.len(), perm.len());
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut entries: Vec<(usize, Scalar)> = v
        .entries
        .iter()
        .map(|(idx, c)| {
            let parts = split_index(*idx, dims);
            let out: Vec<usize> = perm.iter().map(|&p| parts[p]).collect();
            (join_index(&out, &out_dims), c.clone())
        })
        .collect();
    entries.sort_unstable_by_key(|(i, _)| *i);
    Vector { field: v.field, dim: v.dim, entries }
}

/// Swaps the two legs of an element of `V_{d1} ⊗ V_{d2}`.
pub fn flip(v: &Vector, d1: usize, d2: usize) -> Vector {
    permute_legs(v, &[d1, d2], &[1, 0])
}

/// Where the unit is inserted when a two-leg element is placed in a
/// three-fold tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegPattern {
    /// `r ⊗ 1`
    P12g,
    /// `1 ⊗ r`
    Pa23,
    /// `p ⊗ 1 ⊗ q` for `r = p ⊗ q`
    P1b3,
}

/// Embeds `r ∈ P ⊗ Q` into a three-fold tensor product by inserting `unit`
/// at the position named by `pattern`.
pub fn flip_leg_embed(r: &Vector, p_dim: usize, q_dim: usize, unit: &Vector, pattern: LegPattern) -> Result<Vector> {
    if r.dim != p_dim * q_dim {
        return Err(Error::Shape(format!("element of dimension {} is not in a {p_dim}x{q_dim} tensor", r.dim)));
    }
    if unit.field != r.field {
        return Err(Error::Shape("unit and element live over different fields".into()));
    }
    Ok(match pattern {
        LegPattern::P12g => r.tensor(unit),
        LegPattern::Pa23 => unit.tensor(r),
        LegPattern::P1b3 => {
            let u = unit.dim;
            let t = r.tensor(unit);
            permute_legs(&t, &[p_dim, q_dim, u], &[0, 2, 1])
        }
    })
}

/// Reduced row echelon form of a dense matrix.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

/// Row reduction. Over the rationals the elimination is fraction-free
/// (Bareiss) on integer rows followed by rational back-substitution; other
/// fields use Gauss-Jordan with unit pivots.
pub fn rref(field: ScalarField, rows: Vec<Vec<Scalar>>, ncols: usize) -> Result<Rref> {
    for r in &rows {
        if r.len() != ncols {
            return Err(Error::Shape(format!("row of length {} in a matrix with {ncols} columns", r.len())));
        }
    }
    match field {
        ScalarField::Rationals => rref_bareiss(rows, ncols),
        _ => rref_gauss_jordan(field, rows, ncols),
    }
}

fn as_q(s: &Scalar) -> &Q {
    match s {
        Scalar::Q(q) => q,
        _ => panic!("expected a rational scalar"),
    }
}

fn rref_bareiss(rows: Vec<Vec<Scalar>>, ncols: usize) -> Result<Rref> {
    // clear denominators row by row
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(as_q(x).denom()));
            r.iter().map(|x| (as_q(x) * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        // columns left of c in rows below are already zero
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let mut out: Vec<Vec<Q>> = m
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Q::from_integer).collect())
        .collect();
    for k in (0..pivots.len()).rev() {
        let pc = pivots[k];
        let inv = out[k][pc].recip();
        for x in out[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..k {
            let f = out[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..ncols {
                let d = &f * &out[k][j];
                out[i][j] -= d;
            }
        }
    }
    Ok(Rref {
        rows: out.into_iter().map(|r| r.into_iter().map(Scalar::Q).collect()).collect(),
        pivots,
    })
}

fn rref_gauss_jordan(field: ScalarField, mut m: Vec<Vec<Scalar>>, ncols: usize) -> Result<Rref> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let p = match (r..nrows).find(|&i| m[i][c].is_unit()) {
            Some(p) => p,
            None => {
                if (r..nrows).any(|i| !m[i][c].is_zero()) {
                    return Err(Error::NonUnitPivot(field));
                }
                continue;
            }
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                let d = &f * &m[r][j];
                m[i][j] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(pivots.len());
    Ok(Rref { rows: m, pivots })
}

pub fn rank(m: &Mat) -> Result<usize> {
    Ok(rref(m.field, m.to_dense_rows(), m.cols)?.pivots.len())
}

/// Basis of the nullspace; one vector per free column.
pub fn kernel(m: &Mat) -> Result<Vec<Vector>> {
    let red = rref(m.field, m.to_dense_rows(), m.cols)?;
    let pivot_set: std::collections::HashSet<usize> = red.pivots.iter().copied().collect();
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut entries = vec![(f, m.field.one())];
        for (k, &p) in red.pivots.iter().enumerate() {
            let x = &red.rows[k][f];
            if !x.is_zero() {
                entries.push((p, -x));
            }
        }
        out.push(Vector::from_entries(m.field, m.cols, entries));
    }
    Ok(out)
}

/// One solution of `m x = b`.
pub fn solve(m: &Mat, b: &Vector) -> Result<Vector> {
    if b.dim != m.rows {
        return Err(Error::Shape(format!("right-hand side has dimension {}, expected {}", b.dim, m.rows)));
    }
    let mut rows = m.to_dense_rows();
    for (i, r) in rows.iter_mut().enumerate() {
        r.push(b.get(i));
    }
    let red = rref(m.field, rows, m.cols + 1)?;
    if red.pivots.last() == Some(&m.cols) {
        return Err(Error::Inconsistent);
    }
    let entries = red.pivots.iter().enumerate().map(|(k, &p)| (p, red.rows[k][m.cols].clone()));
    Ok(Vector::from_entries(m.field, m.cols, entries))
}

/// Two-sided inverse of a square matrix.
pub fn inverse(m: &Mat) -> Result<Mat> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("cannot invert a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut rows = m.to_dense_rows();
    for (i, r) in rows.iter_mut().enumerate() {
        r.extend((0..n).map(|j| if i == j { m.field.one() } else { m.field.zero() }));
    }
    let red = rref(m.field, rows, 2 * n)?;
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    let triplets = (0..n).flat_map(|i| {
        let row = &red.rows[i];
        (0..n).filter(move |&j| !row[n + j].is_zero()).map(move |j| (i, j, row[n + j].clone()))
    });
    Mat::from_triplets(m.field, n, n, triplets)
}

/// Sparse, incrementally maintained reduced echelon basis of a subspace.
/// Each stored row has a pivot coordinate equal to one that no other row
/// touches.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: ScalarField,
    dim: usize,
    rows: BTreeMap<usize, Vector>,
}

impl EchelonBasis {
    pub fn new(field: ScalarField, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: BTreeMap::new() }
    }

    pub fn from_vectors<'a>(field: ScalarField, dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Result<Self> {
        let mut b = EchelonBasis::new(field, dim);
        for v in vs {
            b.insert(v)?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows ordered by pivot.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.rows.iter().map(|(p, v)| (*p, v))
    }

    /// Residual of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        for (p, row) in &self.rows {
            let c = out.get(*p);
            if !c.is_zero() {
                out = out.add_scaled(&-&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the span grew.
    pub fn insert(&mut self, v: &Vector) -> Result<bool> {
        assert_eq!(v.dim, self.dim, "inserting a vector of the wrong dimension");
        let r = self.reduce(v);
        if r.is_zero() {
            return Ok(false);
        }
        let (p, c) = r
            .entries
            .iter()
            .find(|(_, c)| c.is_unit())
            .map(|(p, c)| (*p, c.clone()))
            .ok_or(Error::NonUnitPivot(self.field))?;
        let r = r.scale(&c.inv()?);
        for row in self.rows.values_mut() {
            let f = row.get(p);
            if !f.is_zero() {
                *row = row.add_scaled(&-&f, &r);
            }
        }
        self.rows.insert(p, r);
        Ok(true)
    }

    /// Coordinates not used as pivots, in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.rows.contains_key(i)).collect()
    }

    /// Projection `V → V/span` onto the complement coordinates.
    pub fn projection(&self) -> Mat {
        let comp = self.complement();
        let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let q = comp.len();
        let columns = (0..self.dim)
            .map(|j| match self.rows.get(&j) {
                None => Vector::basis(self.field, q, pos[&j]),
                Some(row) => Vector::from_entries(
                    self.field,
                    q,
                    row.entries.iter().filter(|(k, _)| *k != j).map(|(k, x)| (pos[k], -x)),
                ),
            })
            .collect();
        Mat { field: self.field, rows: q, cols: self.dim, columns }
    }

    /// Section `V/span → V` sending each quotient basis vector to its coordinate vector.
    pub fn section(&self) -> Mat {
        let comp = self.complement();
        let columns = comp.iter().map(|&c| Vector::basis(self.field, self.dim, c)).collect();
        Mat { field: self.field, rows: self.dim, cols: comp.len(), columns }
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.values().cloned().collect()
    }
}

/// Solves `m x = b` by sparse elimination; suited to large sparse systems.
pub fn solve_sparse(m: &Mat, b: &Vector) -> Result<Vector> {
    if b.dim != m.rows {
        return Err(Error::Shape(format!("right-hand side has dimension {}, expected {}", b.dim, m.rows)));
    }
    let n = m.cols;
    let t = m.transpose();
    let mut eb = EchelonBasis::new(m.field, n + 1);
    for i in 0..m.rows {
        let row = t.column(i);
        let mut entries: Vec<(usize, Scalar)> = row.entries.clone();
        let bi = b.get(i);
        if !bi.is_zero() {
            entries.push((n, bi));
        }
        eb.insert(&Vector::from_entries(m.field, n + 1, entries))?;
    }
    if eb.rows.contains_key(&n) {
        return Err(Error::Inconsistent);
    }
    let entries = eb.rows.iter().map(|(p, row)| (*p, row.get(n)));
    Ok(Vector::from_entries(m.field, n, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q;
    use proptest::prelude::*;

    const QF: ScalarField = ScalarField::Rationals;

    fn s(v: i64) -> Scalar {
        QF.from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
        Mat::from_rows(QF, &rows).unwrap()
    }

    #[test]
    fn kron_examples() {
        assert_eq!(Mat::identity(QF, 2).kron(&Mat::identity(QF, 3)), Mat::identity(QF, 6));
        assert_eq!(mat(&[&[2]]).kron(&mat(&[&[3]])), mat(&[&[6]]));
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 5], &[6, 7]]);
        let e11 = Vector::basis(QF, 2, 0).tensor(&Vector::basis(QF, 2, 0));
        assert_eq!(a.kron(&b).apply(&e11), a.column(0).tensor(b.column(0)));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Mat::identity(QF, 3)).unwrap().is_empty());
        let k = kernel(&mat(&[&[1, 1], &[2, 2]])).unwrap();
        assert_eq!(k, vec![Vector::from_dense(QF, &[s(-1), s(1)])]);
    }

    #[test]
    fn solve_examples() {
        let b = Vector::from_dense(QF, &[s(2), s(3)]);
        assert_eq!(solve(&Mat::identity(QF, 2), &b).unwrap(), b);
        let x = solve(&Mat::diag(QF, &[s(2), s(3)]), &b).unwrap();
        assert_eq!(x, Vector::from_dense(QF, &[s(1), s(1)]));
        assert!(matches!(solve(&mat(&[&[1, 1], &[1, 1]]), &b), Err(Error::Inconsistent)));
        assert_eq!(solve_sparse(&Mat::diag(QF, &[s(2), s(3)]), &b).unwrap(), x);
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let a = Mat::from_rows(QF, &[vec![QF.from_q(&q(1, 2)).unwrap(), s(1)], vec![s(3), s(4)]]).unwrap();
        let inv = inverse(&a).unwrap();
        assert!(a.compose(&inv).is_identity());
        assert!(matches!(inverse(&mat(&[&[1, 2], &[2, 4]])), Err(Error::Singular)));
    }

    #[test]
    fn series_elimination_rejects_non_unit_pivots() {
        let f = ScalarField::TruncSeries(3);
        let h = f.parse_scalar("h").unwrap();
        let m = Mat::from_rows(f, &[vec![h.clone(), f.one()], vec![h, f.zero()]]).unwrap();
        assert!(matches!(rank(&m), Err(Error::NonUnitPivot(_))));
        let u = Mat::from_rows(f, &[vec![f.parse_scalar("1+h").unwrap()]]).unwrap();
        let inv = inverse(&u).unwrap();
        assert_eq!(inv.get(0, 0), f.parse_scalar("1-h+h^2").unwrap());
    }

    #[test]
    fn leg_embeddings() {
        let p = Vector::basis(QF, 2, 1);
        let qv = Vector::basis(QF, 3, 2);
        let unit = Vector::basis(QF, 4, 0);
        let r = p.tensor(&qv);
        assert_eq!(flip_leg_embed(&r, 2, 3, &unit, LegPattern::P12g).unwrap(), p.tensor(&qv).tensor(&unit));
        assert_eq!(flip_leg_embed(&r, 2, 3, &unit, LegPattern::Pa23).unwrap(), unit.tensor(&p).tensor(&qv));
        assert_eq!(flip_leg_embed(&r, 2, 3, &unit, LegPattern::P1b3).unwrap(), p.tensor(&unit).tensor(&qv));
        assert!(flip_leg_embed(&r, 3, 3, &unit, LegPattern::P1b3).is_err());
    }

    #[test]
    fn apply_legs_matches_kron() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 5, 1], &[6, 7, 0]]);
        let v = Vector::from_dense(QF, &[s(1), s(-2), s(0), s(3), s(1), s(5)]);
        assert_eq!(apply_legs(&[Leg::Map(&a), Leg::Map(&b)], &v), a.kron(&b).apply(&v));
        assert_eq!(apply_legs(&[Leg::Id(2), Leg::Map(&b)], &v), Mat::identity(QF, 2).kron(&b).apply(&v));
    }

    #[test]
    fn quotient_projection() {
        // span{e0 - e1} in Q^3
        let v = Vector::from_dense(QF, &[s(1), s(-1), s(0)]);
        let eb = EchelonBasis::from_vectors(QF, 3, [&v]).unwrap();
        let p = eb.projection();
        assert!(p.apply(&v).is_zero());
        assert!(p.compose(&eb.section()).is_identity());
    }

    fn arb_mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<Scalar>> = xs.chunks(c).map(|ch| ch.iter().map(|&x| s(x)).collect()).collect();
            Mat::from_rows(QF, &rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_mixed_product(a in arb_mat(2, 3), b in arb_mat(2, 2), c in arb_mat(3, 2), d in arb_mat(2, 3)) {
            prop_assert_eq!(a.kron(&b).compose(&c.kron(&d)), a.compose(&c).kron(&b.compose(&d)));
        }

        #[test]
        fn kron_associative(a in arb_mat(2, 2), b in arb_mat(1, 3), c in arb_mat(2, 1)) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
        }

        #[test]
        fn flip_is_an_involution(d1 in 1usize..5, d2 in 1usize..5) {
            let f = flip_matrix(QF, d1, d2);
            let g = flip_matrix(QF, d2, d1);
            prop_assert!(g.compose(&f).is_identity());
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in arb_mat(3, 5)) {
            let k = kernel(&a).unwrap();
            let r = rank(&a).unwrap();
            prop_assert_eq!(k.len(), 5 - r);
            for v in &k {
                prop_assert!(a.apply(v).is_zero());
            }
            // row space plus kernel fills the domain
            let mut eb = EchelonBasis::from_vectors(QF, 5, a.transpose().columns()).unwrap();
            for v in &k {
                eb.insert(v).unwrap();
            }
            prop_assert_eq!(eb.len(), 5);
        }

        #[test]
        fn bareiss_agrees_with_sparse_rank(a in arb_mat(4, 4)) {
            let eb = EchelonBasis::from_vectors(QF, 4, a.transpose().columns()).unwrap();
            prop_assert_eq!(rank(&a).unwrap(), eb.len());
        }
    }
}
