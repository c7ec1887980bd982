//! Exact linear algebra over F_p.
//!
//! Matrices are stored as sorted sparse triplets. Elimination works on sparse
//! rows; matrices with fewer than [`DENSE_CUTOFF`] columns go through a dense
//! path instead. Both paths compute the reduced row echelon form, which is
//! unique, so kernels and image bases do not depend on the path taken.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DENSE_CUTOFF: usize = 64;

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (u64::from(a) * u64::from(b) % u64::from(p)) as u32
}

fn neg_mod(a: u32, p: u32) -> u32 {
    (p - a) % p
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    let mut result = 1u64;
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    let m = u64::from(p);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u32
}

/// Sparse vector: (index, nonzero residue) pairs sorted by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec(pub Vec<(u32, u32)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: u32) -> Self {
        SparseVec(vec![(i, 1)])
    }

    /// Builds a vector from unsorted (index, value) pairs, summing duplicates.
    pub fn from_pairs(p: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().map(|(i, c)| (i, c % p)).collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = (last.1 + c) % p,
                _ => out.push((i, c)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec(out)
    }

    pub fn from_dense(dense: &[u32]) -> Self {
        SparseVec(
            dense.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for &(i, c) in &self.0 {
            out[i as usize] = c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn leading(&self) -> Option<(u32, u32)> {
        self.0.first().copied()
    }

    pub fn get(&self, i: u32) -> u32 {
        self.0.binary_search_by_key(&i, |e| e.0).map(|k| self.0[k].1).unwrap_or(0)
    }

    pub fn scale(&self, c: u32, p: u32) -> SparseVec {
        if c.is_multiple_of(p) {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|&(i, x)| (i, mul_mod(x, c, p))).collect())
    }

    /// self + c·other
    pub fn axpy(&self, c: u32, other: &SparseVec, p: u32) -> SparseVec {
        let c = c % p;
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, mul_mod(b[j].1, c, p)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = (a[i].1 + mul_mod(b[j].1, c, p)) % p;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(k, x)| (k, mul_mod(x, c, p))));
        SparseVec(out)
    }
}

/// A p × q matrix over F_p as row-major sorted triplets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, u32)>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, entries: Vec::new() }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        FpMatrix { p, rows: n, cols: n, entries: (0..n as u32).map(|i| (i, i, 1)).collect() }
    }

    /// Builds from arbitrary triplets; values are reduced mod p and duplicates summed.
    pub fn from_triplets(
        p: u32,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (u32, u32, i64)>,
    ) -> Result<Self> {
        let mut acc: HashMap<(u32, u32), u32> = HashMap::new();
        for (r, c, v) in triplets {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::Payload(format!("entry ({r}, {c}) outside {rows}×{cols}")));
            }
            let e = acc.entry((r, c)).or_insert(0);
            *e = (*e + crate::steenrod::residue(v, p)) % p;
        }
        let mut entries: Vec<(u32, u32, u32)> =
            acc.into_iter().filter(|(_, v)| *v != 0).map(|((r, c), v)| (r, c, v)).collect();
        entries.sort_unstable();
        Ok(FpMatrix { p, rows, cols, entries })
    }

    pub fn from_dense(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r as u32, c as u32, v)));
        Self::from_triplets(p, rows.len(), cols, triplets).expect("dense rows are in range")
    }

    pub fn from_columns(p: u32, rows: usize, columns: &[SparseVec]) -> Self {
        let mut entries: Vec<(u32, u32, u32)> = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.0.iter().map(move |&(r, v)| (r, c as u32, v)))
            .collect();
        entries.sort_unstable();
        debug_assert!(entries.iter().all(|e| (e.0 as usize) < rows && e.2 != 0 && e.2 < p));
        FpMatrix { p, rows, cols: columns.len(), entries }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(u32, u32, u32)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(r as u32, c as u32)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0)
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r as usize].0.push((c, v));
        }
        out
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            out[c as usize].0.push((r, v));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r as usize][c as usize] = v;
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut entries: Vec<(u32, u32, u32)> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable();
        FpMatrix { p: self.p, rows: self.cols, cols: self.rows, entries }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let cols = self.column_vectors();
        apply_columns(&cols, v, self.p)
    }

    /// self · rhs
    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Composability(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let left = self.column_vectors();
        let columns: Vec<SparseVec> =
            rhs.column_vectors().iter().map(|c| apply_columns(&left, c, self.p)).collect();
        Ok(FpMatrix::from_columns(self.p, self.rows, &columns))
    }
}

fn apply_columns(cols: &[SparseVec], v: &SparseVec, p: u32) -> SparseVec {
    let mut acc: HashMap<u32, u32> = HashMap::new();
    for &(j, x) in &v.0 {
        for &(i, y) in &cols[j as usize].0 {
            let e = acc.entry(i).or_insert(0);
            *e = (*e + mul_mod(x, y, p)) % p;
        }
    }
    SparseVec::from_pairs(p, acc)
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon basis with unit leading coefficients. Each row may
/// carry a tag vector recording its class in some auxiliary coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    rows: Vec<(SparseVec, SparseVec)>,
    pivot_row: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(p: u32) -> Self {
        Echelon { p, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis; returns the residue and the combination
    /// Σ cᵢ·tagᵢ of the tags of the rows that were subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let p = self.p;
        let mut v = v.clone();
        let mut tag = SparseVec::new();
        let mut pos = 0;
        while pos < v.0.len() {
            let (idx, c) = v.0[pos];
            match self.pivot_row.get(&idx) {
                Some(&r) => {
                    let (row, row_tag) = &self.rows[r];
                    v = v.axpy(neg_mod(c, p), row, p);
                    tag = tag.axpy(c, row_tag, p);
                }
                None => pos += 1,
            }
        }
        (v, tag)
    }

    /// Inserts `v` carrying `tag`; returns false if it was already in the span.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: &SparseVec) -> bool {
        let p = self.p;
        let (res, acc) = self.reduce(v);
        let Some((lead, c)) = res.leading() else {
            return false;
        };
        let s = inv_mod(c, p);
        let row_tag = tag.axpy(neg_mod(1, p), &acc, p).scale(s, p);
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push((res.scale(s, p), row_tag));
        true
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tagged(v, &SparseVec::new())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }
}

/// Reduced row echelon form of a list of vectors: returns the nonzero rows
/// sorted by pivot column.
fn rref_sparse(p: u32, vectors: &[SparseVec]) -> Vec<SparseVec> {
    // Sparsest rows first, ties to the lowest row index.
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| (vectors[i].nnz(), i));
    let mut ech = Echelon::new(p);
    for i in order {
        if !vectors[i].is_zero() {
            ech.insert(&vectors[i]);
        }
    }
    let mut rows: Vec<SparseVec> = ech.rows.into_iter().map(|(v, _)| v).collect();
    rows.sort_by_key(|r| r.0[0].0);
    // Back substitution, highest pivot first.
    let pivot_index: HashMap<u32, usize> = rows.iter().enumerate().map(|(k, r)| (r.0[0].0, k)).collect();
    for k in (0..rows.len()).rev() {
        let mut row = rows[k].clone();
        let mut pos = 1;
        while pos < row.0.len() {
            let (idx, c) = row.0[pos];
            match pivot_index.get(&idx) {
                Some(&other) if other != k => {
                    row = row.axpy(neg_mod(c, p), &rows[other], p);
                }
                _ => pos += 1,
            }
        }
        rows[k] = row;
    }
    rows
}

fn rref_dense(p: u32, width: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut m: Vec<Vec<u32>> = vectors.iter().map(|v| v.to_dense(width)).collect();
    let mut rank = 0;
    for col in 0..width {
        // lowest row holding a nonzero entry in this column
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pr);
        let s = inv_mod(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, s, p);
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = neg_mod(row[col], p);
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + mul_mod(c, *y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.iter().map(|r| SparseVec::from_dense(r)).collect()
}

/// Reduced row echelon basis of the span of `vectors` in F_p^width.
pub fn rref(p: u32, width: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    if width < DENSE_CUTOFF {
        rref_dense(p, width, vectors)
    } else {
        rref_sparse(p, vectors)
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    rref(m.p, m.cols, &m.row_vectors()).len()
}

/// Basis of the null space, one vector per free column of the RREF.
pub fn kernel_basis(m: &FpMatrix) -> Vec<SparseVec> {
    let p = m.p;
    let rows = rref(p, m.cols, &m.row_vectors());
    let mut is_pivot = vec![false; m.cols];
    // column j -> (pivot column, value) over the RREF rows
    let mut by_column: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for row in &rows {
        let lead = row.0[0].0;
        is_pivot[lead as usize] = true;
        for &(j, c) in &row.0[1..] {
            by_column.entry(j).or_default().push((lead, c));
        }
    }
    (0..m.cols as u32)
        .filter(|&j| !is_pivot[j as usize])
        .map(|j| {
            let mut pairs = vec![(j, 1)];
            if let Some(entries) = by_column.get(&j) {
                pairs.extend(entries.iter().map(|&(lead, c)| (lead, neg_mod(c, p))));
            }
            SparseVec::from_pairs(p, pairs)
        })
        .collect()
}

/// Canonical (RREF) basis of the column space.
pub fn image_basis(m: &FpMatrix) -> Vec<SparseVec> {
    rref(m.p, m.rows, &m.column_vectors())
}

/// A subquotient Z/B of F_p^ambient_dim with chosen homology representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subquotient {
    pub p: u32,
    pub ambient_dim: usize,
    pub cycle_basis: Vec<SparseVec>,
    pub boundary_basis: Vec<SparseVec>,
    /// Cycles whose classes form a basis of Z/B.
    pub homology_basis: Vec<SparseVec>,
}

impl Subquotient {
    pub fn dimension(&self) -> usize {
        self.homology_basis.len()
    }

    /// Echelon over boundaries then representatives; representative k is tagged e_k.
    fn class_echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.p);
        for b in &self.boundary_basis {
            ech.insert(b);
        }
        for (k, h) in self.homology_basis.iter().enumerate() {
            ech.insert_tagged(h, &SparseVec::unit(k as u32));
        }
        ech
    }

    /// Coordinates of the class of `z` in the homology basis, or `None` if `z`
    /// is not a cycle.
    pub fn class_of(&self, z: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.class_echelon().reduce(z);
        res.is_zero().then_some(tag)
    }
}

/// ker(d_out) / im(d_in).
pub fn homology(d_out: &FpMatrix, d_in: &FpMatrix) -> Result<Subquotient> {
    if d_in.rows != d_out.cols {
        return Err(Error::Composability(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows, d_out.cols
        )));
    }
    let p = d_out.p;
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        let (r, c, v) = composite.entries[0];
        return Err(Error::NotAComplex(format!("entry ({r}, {c}) of the composite is {v}")));
    }
    let cycle_basis = kernel_basis(d_out);
    let boundary_basis = image_basis(d_in);
    let mut ech = Echelon::new(p);
    for b in &boundary_basis {
        ech.insert(b);
    }
    let homology_basis: Vec<SparseVec> = cycle_basis.iter().filter(|z| ech.insert(z)).cloned().collect();
    debug_assert_eq!(homology_basis.len() + boundary_basis.len(), cycle_basis.len());
    Ok(Subquotient { p, ambient_dim: d_out.cols, cycle_basis, boundary_basis, homology_basis })
}

/// The map on homology induced by `ambient_map` (dst.ambient × src.ambient).
pub fn induced_map(src: &Subquotient, dst: &Subquotient, ambient_map: &FpMatrix) -> Result<FpMatrix> {
    if ambient_map.cols != src.ambient_dim || ambient_map.rows != dst.ambient_dim {
        return Err(Error::Composability(format!(
            "ambient map is {}×{}, expected {}×{}",
            ambient_map.rows, ambient_map.cols, dst.ambient_dim, src.ambient_dim
        )));
    }
    let p = ambient_map.p;
    let cols = ambient_map.column_vectors();
    let ech = dst.class_echelon();
    for (k, b) in src.boundary_basis.iter().enumerate() {
        let (res, tag) = ech.reduce(&apply_columns(&cols, b, p));
        if !res.is_zero() || !tag.is_zero() {
            return Err(Error::ChainMap(format!("image of boundary {k} is not a boundary")));
        }
    }
    let mut columns = Vec::with_capacity(src.homology_basis.len());
    for (k, h) in src.homology_basis.iter().enumerate() {
        let (res, tag) = ech.reduce(&apply_columns(&cols, h, p));
        if !res.is_zero() {
            return Err(Error::ChainMap(format!("image of cycle {k} is not a cycle")));
        }
        columns.push(tag);
    }
    Ok(FpMatrix::from_columns(p, dst.dimension(), &columns))
}
