//! Graded free modules, homogeneous matrices, kernels and presented modules.

mod hilbert;
mod presented;
mod syzygy;

pub use hilbert::{HilbertSeries, LaurentPolynomial};
pub use presented::{subquotient, subquotient_with, Length, PresentedModule};
pub use syzygy::{syzygies, Submodule};

pub(crate) use syzygy::kernel;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{same_ring, Ideal, Polynomial, Ring};

/// An element of a free module, one polynomial per generator.
pub type Vector<C> = Vec<Polynomial<C>>;

/// `⊕ R(-a_i)`: the i-th generator sits in degree `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    ring: Ring,
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(ring: &Ring, twists: Vec<i64>) -> Self {
        GradedFreeModule { ring: ring.clone(), twists }
    }

    /// `R^n` with all generators in degree 0.
    pub fn free(ring: &Ring, rank: usize) -> Self {
        Self::new(ring, vec![0; rank])
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        Self::new(&self.ring, twists)
    }

    /// Generators `e_i ⊗ f_j` in index order `i * rank(other) + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let twists = self.twists.iter().flat_map(|a| other.twists.iter().map(move |b| a + b)).collect();
        Self::new(&self.ring, twists)
    }

    /// Adds `s` to every twist.
    pub fn shifted(&self, s: i64) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|a| a + s).collect())
    }

    pub fn dual(&self) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|a| -a).collect())
    }

    pub fn with_ring(&self, ring: &Ring) -> Self {
        Self::new(ring, self.twists.clone())
    }

    /// Degree of a homogeneous vector, `None` for the zero vector.
    pub fn vector_degree<C: Field>(&self, v: &[Polynomial<C>]) -> Result<Option<i64>> {
        let mut deg = None;
        for (p, a) in v.iter().zip(&self.twists) {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or(Error::InhomogeneousVector)? + a;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::InhomogeneousVector),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Parses `R(-1)^2+R^1`; `0` is the zero module.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(ring));
        }
        let mut twists = Vec::new();
        let mut column = 1;
        for part in text.split('+') {
            let err = |message: &str| Error::Parse { column, message: message.into() };
            let s = part.trim();
            let rest = s.strip_prefix('R').ok_or_else(|| err("expected R"))?;
            let (twist, rest) = if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(|| err("missing )"))?;
                let v: i64 = r[..close].trim().parse().map_err(|_| err("bad twist"))?;
                (-v, &r[close + 1..])
            } else {
                (0, rest)
            };
            let rank: usize = match rest.trim().strip_prefix('^') {
                Some(n) => n.trim().parse().map_err(|_| err("bad rank"))?,
                None if rest.trim().is_empty() => 1,
                None => return Err(err("unexpected text after summand")),
            };
            twists.extend(std::iter::repeat_n(twist, rank));
            column += part.len() + 1;
        }
        Ok(Self::new(ring, twists))
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.twists.len() {
            let a = self.twists[i];
            let mut j = i;
            while j < self.twists.len() && self.twists[j] == a {
                j += 1;
            }
            let base = if a == 0 { "R".to_string() } else { format!("R({})", -a) };
            parts.push(format!("{base}^{}", j - i));
            i = j;
        }
        write!(f, "{}", parts.join("+"))
    }
}

pub(crate) fn zero_vector<C: Field>(ring: &Ring, n: usize) -> Vector<C> {
    vec![Polynomial::zero(ring); n]
}

pub(crate) fn unit_vector<C: Field>(ring: &Ring, n: usize, i: usize) -> Vector<C> {
    let mut v = zero_vector(ring, n);
    v[i] = Polynomial::one(ring);
    v
}

pub(crate) fn is_zero_vector<C: Field>(v: &[Polynomial<C>]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// `J · e_i` for every generator `e_i` of a rank-`n` free module.
pub(crate) fn ideal_multiples<C: Field>(base: &Ideal<C>, n: usize) -> Vec<Vector<C>> {
    let mut out = Vec::new();
    for g in base.gens() {
        for i in 0..n {
            let mut v = zero_vector(base.ring(), n);
            v[i] = g.clone();
            out.push(v);
        }
    }
    out
}

/// A dense matrix of polynomials, row-major; rows index target coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<C: Field> {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<C>>,
}

impl<C: Field> Matrix<C> {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::scalar(ring, n, &Polynomial::one(ring))
    }

    pub fn scalar(ring: &Ring, n: usize, f: &Polynomial<C>) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    /// Builds from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(ring: &Ring, rows: Vec<Vector<C>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {} has {} entries, expected {cols}", i + 1, row.len())));
            }
            if row.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::MixedRings);
            }
            entries.extend(row);
        }
        Ok(Matrix { ring: ring.clone(), rows: nrows, cols, entries })
    }

    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vector<C>]) -> Self {
        let mut m = Self::zero(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<C>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<C>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn apply(&self, v: &[Polynomial<C>]) -> Vector<C> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial<C>, &Polynomial<C>) -> Polynomial<C>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, f: &Polynomial<C>) -> Self {
        self.map(|p| p.mul(f))
    }

    pub fn map(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Applies `f` entrywise, landing in `target`.
    pub fn map_into(&self, target: &Ring, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; entry `(i*p + k, j*q + l)` is `a_ij * b_kl`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        let mut out = Self::zero(&self.ring, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * p + k, j * q + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols, "block shapes");
        let mut out = Self::zero(&a.ring, a.rows + c.rows, a.cols + b.cols);
        for (m, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let b = Self::zero(&self.ring, self.rows, other.cols);
        let c = Self::zero(&self.ring, other.rows, self.cols);
        Self::block(self, &b, &c, other)
    }

    /// The sub-matrix on the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zero(&self.ring, rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduces every entry modulo `ideal`.
    pub fn reduce(&self, ideal: &Ideal<C>) -> Self {
        if ideal.is_zero() {
            return self.clone();
        }
        self.map(|p| ideal.normal_form(p))
    }

    /// First entry that is nonzero modulo `ideal`.
    pub fn first_nonzero_mod(&self, ideal: &Ideal<C>) -> Option<(usize, usize, Polynomial<C>)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let r = if ideal.is_zero() { p.clone() } else { ideal.normal_form(p) };
                if !r.is_zero() {
                    return Some((i, j, r));
                }
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.is_constant())
    }

    /// Determinant of a square matrix of constants.
    pub fn constant_determinant(&self) -> Option<C> {
        if self.rows != self.cols || !self.is_constant() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<C>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).constant_value().expect("constant")).collect()).collect();
        let mut det = C::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(C::zero());
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det = det * &a[k][k];
            for i in k + 1..n {
                let f = a[i][k].clone() / &a[k][k];
                for j in k..n {
                    let v = a[i][j].clone() - &(f.clone() * &a[k][j]);
                    a[i][j] = v;
                }
            }
        }
        Some(det)
    }

    /// Parses `[[p, p], [p, p]]`; `[]` has no rows and `cols` columns.
    pub fn parse(ring: &Ring, text: &str, cols: Option<usize>) -> Result<Self> {
        let rows = parse_rows(ring, text)?;
        let width = match (rows.first(), cols) {
            (Some(r), _) => r.len(),
            (None, Some(c)) => c,
            (None, None) => 0,
        };
        Self::from_rows(ring, rows, width)
    }
}

/// Splits a bracketed matrix literal into rows of polynomials.
pub fn parse_rows<C: Field>(ring: &Ring, text: &str) -> Result<Vec<Vector<C>>> {
    let err = |column: usize, message: String| Error::Parse { column, message };
    let bytes = text.as_bytes();
    let start = text.find('[').ok_or_else(|| err(1, "expected [".into()))?;
    if !text[..start].trim().is_empty() {
        return Err(err(1, "expected [".into()));
    }
    let mut rows = Vec::new();
    let mut pos = start + 1;
    loop {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
            pos += 1;
        }
        match bytes.get(pos) {
            Some(b']') => {
                if !text[pos + 1..].trim().is_empty() {
                    return Err(err(pos + 2, "trailing text after matrix".into()));
                }
                break;
            }
            Some(b'[') => {
                let close = text[pos..].find(']').ok_or_else(|| err(pos + 1, "unclosed row".into()))? + pos;
                let inner = &text[pos + 1..close];
                let mut row = Vec::new();
                let mut offset = pos + 1;
                if !inner.trim().is_empty() {
                    for cell in inner.split(',') {
                        let p = Polynomial::parse(ring, cell).map_err(|e| match e {
                            Error::Parse { column, message } => {
                                Error::Parse { column: offset + column, message: format!("row {}: {message}", rows.len() + 1) }
                            }
                            other => other,
                        })?;
                        row.push(p);
                        offset += cell.len() + 1;
                    }
                }
                rows.push(row);
                pos = close + 1;
            }
            _ => return Err(err(pos + 1, "expected [ or ]".into())),
        }
    }
    if let Some(first) = rows.first() {
        let w = first.len();
        if let Some(i) = rows.iter().position(|r| r.len() != w) {
            return Err(Error::Shape(format!("row {} has {} entries, expected {w}", i + 1, rows[i].len())));
        }
    }
    Ok(rows)
}

impl<C: Field> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A homogeneous map of graded free modules.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<C: Field> {
    source: GradedFreeModule,
    target: GradedFreeModule,
    matrix: Matrix<C>,
    degree: i64,
}

impl<C: Field> ModuleMap<C> {
    /// Checks shape and that entry `(i, j)` has degree
    /// `degree + twist_source(j) - twist_target(i)` or is zero.
    pub fn new(source: &GradedFreeModule, target: &GradedFreeModule, matrix: Matrix<C>, degree: i64) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, map needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        if !same_ring(matrix.ring(), source.ring()) || !same_ring(source.ring(), target.ring()) {
            return Err(Error::MixedRings);
        }
        check_homogeneous(&matrix, source.twists(), target.twists(), degree)?;
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix, degree })
    }

    /// Like [`ModuleMap::new`] with the degree read off the first nonzero
    /// entry (0 for the zero map).
    pub fn infer(source: &GradedFreeModule, target: &GradedFreeModule, matrix: Matrix<C>) -> Result<Self> {
        let degree = infer_degree(&matrix, source.twists(), target.twists()).unwrap_or(0);
        Self::new(source, target, matrix, degree)
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.matrix
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::Shape("composition of maps with mismatched modules".into()));
        }
        Self::new(&other.source, &self.target, self.matrix.mul(&other.matrix), self.degree + other.degree)
    }
}

pub(crate) fn infer_degree<C: Field>(m: &Matrix<C>, src: &[i64], tgt: &[i64]) -> Option<i64> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(d) = m.get(i, j).homogeneous_degree() {
                return Some(d - src[j] + tgt[i]);
            }
        }
    }
    None
}

pub(crate) fn check_homogeneous<C: Field>(m: &Matrix<C>, src: &[i64], tgt: &[i64], degree: i64) -> Result<()> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = m.get(i, j);
            if p.is_zero() {
                continue;
            }
            let expected = degree + src[j] - tgt[i];
            if p.homogeneous_degree() != Some(expected) {
                return Err(Error::NotHomogeneous { row: i, col: j, value: p.to_string(), expected });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::Q;

    #[test]
    fn module_parse_and_print() {
        let r = PolyRing::standard(&["x"]);
        let m = GradedFreeModule::parse(&r, "R(-1)^2+R^1").unwrap();
        assert_eq!(m.twists(), &[1, 1, 0]);
        assert_eq!(m.to_string(), "R(-1)^2+R^1");
        assert_eq!(GradedFreeModule::parse(&r, "R(2)").unwrap().twists(), &[-2]);
        assert_eq!(GradedFreeModule::parse(&r, "0").unwrap().rank(), 0);
        assert!(GradedFreeModule::parse(&r, "S^2").is_err());
    }

    #[test]
    fn matrix_parse_errors_name_the_row() {
        let r = PolyRing::standard(&["x", "y"]);
        let e = Matrix::<Q>::parse(&r, "[[x, y], [x]]", None).unwrap_err();
        assert_eq!(e, Error::Shape("row 2 has 1 entries, expected 2".into()));
        let m = Matrix::<Q>::parse(&r, "[[x, 0], [0, y]]", None).unwrap();
        assert_eq!(m.to_string(), "[[x, 0], [0, y]]");
        assert_eq!(Matrix::<Q>::parse(&r, "[]", Some(3)).unwrap().cols(), 3);
    }

    #[test]
    fn homogeneity_is_checked() {
        let r = PolyRing::standard(&["x", "y"]);
        let src = GradedFreeModule::new(&r, vec![1, 1]);
        let tgt = GradedFreeModule::free(&r, 1);
        let m = Matrix::<Q>::parse(&r, "[[x, y]]", None).unwrap();
        assert_eq!(ModuleMap::infer(&src, &tgt, m.clone()).unwrap().degree(), 0);
        assert!(ModuleMap::new(&src, &tgt, m, 1).is_err());
        let bad = Matrix::<Q>::parse(&r, "[[x, y^2]]", None).unwrap();
        assert!(matches!(ModuleMap::infer(&src, &tgt, bad), Err(Error::NotHomogeneous { col: 1, .. })));
    }

    #[test]
    fn kron_and_blocks() {
        let r = PolyRing::standard(&["x", "y"]);
        let a = Matrix::<Q>::parse(&r, "[[x, 1]]", None).unwrap();
        let b = Matrix::<Q>::parse(&r, "[[y], [1]]", None).unwrap();
        assert_eq!(a.kron(&b).to_string(), "[[x*y, y], [x, 1]]");
        let i = Matrix::<Q>::identity(&r, 1);
        assert_eq!(Matrix::block(&i, &i, &i, &i.neg()).to_string(), "[[1, 1], [1, -1]]");
        let c = Matrix::<Q>::parse(&r, "[[2, 1], [4, 3]]", None).unwrap();
        assert_eq!(c.constant_determinant(), Some(Q::from_i64(2)));
    }
}
