//! Bounded cochain complexes of graded free modules and their folds.

use super::{Frame, Parity, TwoPeriodicComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{check_homogeneous, kernel, subquotient, unit_vector, GradedFreeModule, Matrix, PresentedModule};
use crate::ring::{Ideal, Polynomial, Ring};

/// `C^low → C^{low+1} → … → C^high` with degree-0 differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedComplex<C: Field> {
    ring: Ring,
    low: i64,
    modules: Vec<GradedFreeModule>,
    maps: Vec<Matrix<C>>,
}

impl<C: Field> BoundedComplex<C> {
    /// `maps[k]` goes from `modules[k]` to `modules[k + 1]`.
    pub fn new(low: i64, modules: Vec<GradedFreeModule>, maps: Vec<Matrix<C>>) -> Result<Self> {
        let Some(first) = modules.first() else {
            return Err(Error::Shape("a bounded complex needs at least one term".into()));
        };
        let ring = first.ring().clone();
        if maps.len() + 1 != modules.len() {
            return Err(Error::Shape(format!("{} terms need {} maps, got {}", modules.len(), modules.len() - 1, maps.len())));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != modules[k + 1].rank() || m.cols() != modules[k].rank() {
                return Err(Error::Shape(format!("map {} has shape {}x{}", low + k as i64, m.rows(), m.cols())));
            }
            check_homogeneous(m, modules[k].twists(), modules[k + 1].twists(), 0)?;
        }
        for k in 1..maps.len() {
            let dd = maps[k].mul(&maps[k - 1]);
            if let Some((row, col, value)) = dd.first_nonzero_mod(&Ideal::zero(&ring)) {
                return Err(Error::NotSquareZero { which: format!("d^{} d^{}", low + k as i64, low + k as i64 - 1), row, col, value: value.to_string() });
            }
        }
        Ok(BoundedComplex { ring, low, modules, maps })
    }

    /// A single module in degree 0.
    pub fn single(module: &GradedFreeModule) -> Self {
        BoundedComplex { ring: module.ring().clone(), low: 0, modules: vec![module.clone()], maps: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.modules.len() as i64 - 1
    }

    /// `C^k`, zero outside the range.
    pub fn module(&self, k: i64) -> GradedFreeModule {
        if k < self.low || k > self.high() {
            return GradedFreeModule::zero(&self.ring);
        }
        self.modules[(k - self.low) as usize].clone()
    }

    /// `d^k : C^k → C^{k+1}`.
    pub fn differential(&self, k: i64) -> Matrix<C> {
        if k < self.low || k >= self.high() {
            return Matrix::zero(&self.ring, self.module(k + 1).rank(), self.module(k).rank());
        }
        self.maps[(k - self.low) as usize].clone()
    }

    /// Even terms in `E_+`, odd terms in `E_-`; `d_+` collects the
    /// differentials leaving even terms and `d_-` the negated ones leaving
    /// odd terms.
    pub fn fold(&self) -> TwoPeriodicComplex<C> {
        let mut offsets = Vec::with_capacity(self.modules.len());
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for (idx, m) in self.modules.iter().enumerate() {
            let k = self.low + idx as i64;
            let side = if Parity::of(k) == Parity::Plus { &mut plus } else { &mut minus };
            offsets.push(side.len());
            side.extend_from_slice(m.twists());
        }
        let plus = GradedFreeModule::new(&self.ring, plus);
        let minus = GradedFreeModule::new(&self.ring, minus);
        let mut d_plus = Matrix::zero(&self.ring, minus.rank(), plus.rank());
        let mut d_minus = Matrix::zero(&self.ring, plus.rank(), minus.rank());
        for (idx, m) in self.maps.iter().enumerate() {
            let k = self.low + idx as i64;
            let (target, negate) = match Parity::of(k) {
                Parity::Plus => (&mut d_plus, false),
                Parity::Minus => (&mut d_minus, true),
            };
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let e = m.get(i, j);
                    if !e.is_zero() {
                        target.set(offsets[idx + 1] + i, offsets[idx] + j, if negate { e.neg() } else { e.clone() });
                    }
                }
            }
        }
        let frame = Frame { plus, minus, d_plus, d_minus, p: 0, q: 0 };
        TwoPeriodicComplex::from_frame(frame, Ideal::zero(&self.ring))
    }

    /// Total complex with `d = d_C ⊗ 1 + (-1)^i 1 ⊗ d_D` on `C^i ⊗ D^j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let low = self.low + other.low;
        let high = self.high() + other.high();
        let pieces = |n: i64| -> Vec<(i64, i64)> {
            (self.low..=self.high()).map(|i| (i, n - i)).filter(|&(_, j)| j >= other.low && j <= other.high()).collect()
        };
        let mut modules = Vec::new();
        let mut layouts = Vec::new();
        for n in low..=high {
            let mut twists = Vec::new();
            let mut starts = Vec::new();
            for (i, j) in pieces(n) {
                starts.push((i, j, twists.len()));
                twists.extend_from_slice(self.module(i).tensor(&other.module(j)).twists());
            }
            modules.push(GradedFreeModule::new(&self.ring, twists));
            layouts.push(starts);
        }
        let mut maps = Vec::new();
        for n in low..high {
            let idx = (n - low) as usize;
            let mut m = Matrix::zero(&self.ring, modules[idx + 1].rank(), modules[idx].rank());
            let find = |i: i64, j: i64| layouts[idx + 1].iter().find(|&&(a, b, _)| a == i && b == j).map(|t| t.2);
            for &(i, j, start) in &layouts[idx] {
                let (ci, dj) = (self.module(i).rank(), other.module(j).rank());
                if let Some(target) = find(i + 1, j) {
                    place(&mut m, target, start, &self.differential(i).kron(&Matrix::identity(&self.ring, dj)));
                }
                if let Some(target) = find(i, j + 1) {
                    let block = Matrix::identity(&self.ring, ci).kron(&other.differential(j));
                    place(&mut m, target, start, &if i.rem_euclid(2) == 0 { block } else { block.neg() });
                }
            }
            maps.push(m);
        }
        Self::new(low, modules, maps)
    }

    /// `ker d^k / im d^{k-1}`.
    pub fn homology_at(&self, k: i64) -> Result<PresentedModule<C>> {
        let here = self.module(k);
        let next = self.module(k + 1);
        let d = self.differential(k);
        let ker: Vec<Vec<Polynomial<C>>> = if next.rank() == 0 {
            (0..here.rank()).map(|i| unit_vector(&self.ring, here.rank(), i)).collect()
        } else {
            kernel(&self.ring, next.twists(), &d.columns(), &[])
        };
        let img = self.differential(k - 1).columns();
        subquotient(&here, &ker, &img)
    }
}

fn place<C: Field>(m: &mut Matrix<C>, row: usize, col: usize, block: &Matrix<C>) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let e = block.get(i, j);
            if !e.is_zero() {
                m.set(row + i, col + j, e.clone());
            }
        }
    }
}
