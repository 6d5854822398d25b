//! Kernels of matrices modulo submodules, and submodule membership.


use super::{is_zero_vector, GradedFreeModule, ModuleMap, Vector};
use crate::field::Field;
use crate::ring::{groebner, reduce, Monomial, Polynomial, Ring, SVec};

pub(crate) fn to_svec<C: Field>(v: &[Polynomial<C>], offset: usize) -> SVec<C> {
    let mut terms = Vec::new();
    for (i, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            terms.push((i + offset, m.clone(), c.clone()));
        }
    }
    SVec { terms }
}

/// Positions `start..start + len` of `v` as a dense vector.
pub(crate) fn svec_part<C: Field>(ring: &Ring, v: &SVec<C>, start: usize, len: usize) -> Vector<C> {
    let mut parts: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); len];
    for (p, m, c) in &v.terms {
        if *p >= start && *p < start + len {
            parts[p - start].push((m.clone(), c.clone()));
        }
    }
    parts.into_iter().map(|t| Polynomial::from_sorted_terms(ring, t)).collect()
}

/// Generators of `{a : Σ a_j columns[j] ∈ span(extra)}`.
///
/// Each column is tagged with a unit vector in extra positions; with the
/// position-over-term order, basis elements leading in the tag positions
/// have zero image part and their tags generate the kernel.
pub(crate) fn kernel<C: Field>(
    ring: &Ring,
    target_twists: &[i64],
    columns: &[Vector<C>],
    extra: &[Vector<C>],
) -> Vec<Vector<C>> {
    let m = target_twists.len();
    let n = columns.len();
    if n == 0 {
        return Vec::new();
    }
    let target = GradedFreeModule::new(ring, target_twists.to_vec());
    let mut degrees = target_twists.to_vec();
    let mut input = Vec::with_capacity(n + extra.len());
    for (j, col) in columns.iter().enumerate() {
        degrees.push(target.vector_degree(col).ok().flatten().unwrap_or(0));
        let mut v = to_svec(col, 0);
        v.terms.push((m + j, Monomial::one(ring.nvars()), C::one()));
        input.push(v);
    }
    input.extend(extra.iter().filter(|e| !is_zero_vector(e)).map(|e| to_svec(e, 0)));
    groebner(ring, input, Some(&degrees))
        .iter()
        .filter(|g| g.lead_pos() >= m)
        .map(|g| svec_part(ring, g, m, n))
        .collect()
}

/// Generators of the kernel of a module map.
pub fn syzygies<C: Field>(map: &ModuleMap<C>) -> Vec<Vector<C>> {
    let ring = map.source().ring();
    kernel(ring, map.target().twists(), &map.matrix().columns(), &[])
}

/// A submodule of a free module with a cached Gröbner basis.
#[derive(Clone, Debug)]
pub struct Submodule<C: Field> {
    ring: Ring,
    rank: usize,
    basis: Vec<SVec<C>>,
}

impl<C: Field> Submodule<C> {
    pub fn new(ambient: &GradedFreeModule, gens: &[Vector<C>]) -> Self {
        let ring = ambient.ring();
        let input = gens.iter().filter(|g| !is_zero_vector(g)).map(|g| to_svec(g, 0)).collect();
        let basis = groebner(ring, input, Some(ambient.twists()));
        Submodule { ring: ring.clone(), rank: ambient.rank(), basis }
    }

    /// Normal form of `v`.
    pub fn reduce(&self, v: &[Polynomial<C>]) -> Vector<C> {
        svec_part(&self.ring, &reduce(&self.ring, &to_svec(v, 0), &self.basis), 0, self.rank)
    }

    pub fn contains(&self, v: &[Polynomial<C>]) -> bool {
        is_zero_vector(v) || reduce(&self.ring, &to_svec(v, 0), &self.basis).is_zero()
    }

    /// Leading monomials of basis elements leading in position `pos`.
    pub fn leading_monomials(&self, pos: usize) -> Vec<Monomial> {
        self.basis.iter().filter(|g| g.lead_pos() == pos).map(|g| g.terms[0].1.clone()).collect()
    }

    pub fn basis(&self) -> Vec<Vector<C>> {
        self.basis.iter().map(|g| svec_part(&self.ring, g, 0, self.rank)).collect()
    }

    /// True when the leading coefficient of some basis element at `pos` is a
    /// unit multiple of `e_pos`, i.e. the quotient vanishes there.
    pub fn covers_position(&self, pos: usize) -> bool {
        self.basis.iter().any(|g| g.lead_pos() == pos && g.terms[0].1.is_one() && g.terms[0].2.is_one())
    }
}
