//! Finitely presented graded modules `R^n / N`.

use std::fmt;
use std::sync::OnceLock;

use super::hilbert::monomial_numerator;
use super::syzygy::kernel;
use super::{
    ideal_multiples, is_zero_vector, zero_vector, GradedFreeModule, HilbertSeries,
    LaurentPolynomial, Matrix, Submodule, Vector,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{radical_membership, same_ring, Ideal, Monomial, Polynomial, Ring};

/// Dimension over the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// The cokernel of a homogeneous presentation: generators in degrees
/// `twists`, relations given as vectors in generator coordinates.
#[derive(Clone, Debug)]
pub struct PresentedModule<C: Field> {
    ring: Ring,
    twists: Vec<i64>,
    relations: Vec<Vector<C>>,
    basis: OnceLock<Submodule<C>>,
}

impl<C: Field> PresentedModule<C> {
    pub fn cokernel(ring: &Ring, twists: Vec<i64>, relations: Vec<Vector<C>>) -> Result<Self> {
        for r in &relations {
            if r.len() != twists.len() {
                return Err(Error::Shape(format!("relation of length {} for {} generators", r.len(), twists.len())));
            }
            if r.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::MixedRings);
            }
        }
        let relations = relations.into_iter().filter(|r| !is_zero_vector(r)).collect();
        Ok(PresentedModule { ring: ring.clone(), twists, relations, basis: OnceLock::new() })
    }

    /// The cokernel of `matrix: source → target`.
    pub fn from_matrix(target: &GradedFreeModule, matrix: &Matrix<C>) -> Result<Self> {
        if matrix.rows() != target.rank() {
            return Err(Error::Shape("presentation rows must match generators".into()));
        }
        Self::cokernel(target.ring(), target.twists().to_vec(), matrix.columns())
    }

    pub fn free(module: &GradedFreeModule) -> Self {
        PresentedModule {
            ring: module.ring().clone(),
            twists: module.twists().to_vec(),
            relations: Vec::new(),
            basis: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(&GradedFreeModule::zero(ring))
    }

    /// `R / I`, generated in degree 0.
    pub fn quotient(ideal: &Ideal<C>) -> Self {
        let rels = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
        Self::cokernel(ideal.ring(), vec![0], rels).expect("cyclic presentation")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn relations(&self) -> &[Vector<C>] {
        &self.relations
    }

    pub fn ambient(&self) -> GradedFreeModule {
        GradedFreeModule::new(&self.ring, self.twists.clone())
    }

    /// Presentation matrix, one column per relation.
    pub fn presentation(&self) -> Matrix<C> {
        Matrix::from_columns(&self.ring, self.ngens(), &self.relations)
    }

    /// Gröbner basis of the relation module.
    pub fn relation_module(&self) -> &Submodule<C> {
        self.basis.get_or_init(|| Submodule::new(&self.ambient(), &self.relations))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.ngens()).all(|i| self.relation_module().covers_position(i))
    }

    /// True when `v` represents zero in the module.
    pub fn is_relation(&self, v: &[Polynomial<C>]) -> bool {
        self.relation_module().contains(v)
    }

    pub fn with_relations(&self, extra: Vec<Vector<C>>) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        Self::cokernel(&self.ring, self.twists.clone(), rels)
    }

    /// The quotient by `J · M`.
    pub fn with_base(&self, base: &Ideal<C>) -> Result<Self> {
        self.with_relations(ideal_multiples(base, self.ngens()))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.ngens(), other.ngens());
        let mut rels: Vec<Vector<C>> = Vec::new();
        for r in &self.relations {
            let mut v = r.clone();
            v.extend(zero_vector(&self.ring, m));
            rels.push(v);
        }
        for r in &other.relations {
            let mut v = zero_vector(&self.ring, n);
            v.extend(r.iter().cloned());
            rels.push(v);
        }
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        PresentedModule { ring: self.ring.clone(), twists, relations: rels, basis: OnceLock::new() }
    }

    /// Adds `s` to every generator degree.
    pub fn shifted(&self, s: i64) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            twists: self.twists.iter().map(|a| a + s).collect(),
            relations: self.relations.clone(),
            basis: OnceLock::new(),
        }
    }

    fn check_homogeneous(&self) -> Result<()> {
        let amb = self.ambient();
        for r in &self.relations {
            amb.vector_degree(r)?;
        }
        Ok(())
    }

    /// Hilbert series from the staircase of the relation module.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        if self.ring.has_live_parameter() {
            return Err(Error::UngradedParameter);
        }
        self.check_homogeneous()?;
        let weights = self.ring.weights().to_vec();
        let sub = self.relation_module();
        let mut num = LaurentPolynomial::zero();
        for (i, &a) in self.twists.iter().enumerate() {
            num = num.add(&monomial_numerator(&weights, &sub.leading_monomials(i)).shift(a));
        }
        Ok(HilbertSeries::new(num, weights))
    }

    /// Number of standard monomials, or `Infinite` when some staircase is
    /// unbounded.
    pub fn length(&self) -> Length {
        let n = self.ring.nvars();
        let sub = self.relation_module();
        let mut total = 0u64;
        for i in 0..self.ngens() {
            let lead = sub.leading_monomials(i);
            if lead.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = Vec::with_capacity(n);
            for v in 0..n {
                let pure = lead
                    .iter()
                    .filter(|m| m.exponents().iter().enumerate().all(|(k, &e)| k == v || e == 0))
                    .map(|m| m.exponents()[v])
                    .min();
                match pure {
                    Some(e) => bounds.push(e),
                    None => return Length::Infinite,
                }
            }
            total += count_standard(&lead, &bounds, &mut vec![0; n], 0);
        }
        Length::Finite(total)
    }

    /// True when `f · e_i` is a relation for every generator.
    pub fn is_killed_by(&self, f: &Polynomial<C>) -> bool {
        (0..self.ngens()).all(|i| {
            let mut v = zero_vector(&self.ring, self.ngens());
            v[i] = f.clone();
            self.is_relation(&v)
        })
    }

    /// `{r : r M = 0}`, as the kernel of `r ↦ (r e_1, .., r e_n)` into `⊕ R^n / N`.
    pub fn annihilator(&self) -> Ideal<C> {
        let n = self.ngens();
        if n == 0 {
            return Ideal::unit(&self.ring);
        }
        let mut degrees = Vec::with_capacity(n * n);
        for i in 0..n {
            degrees.extend(self.twists.iter().map(|a| a - self.twists[i]));
        }
        let mut column = zero_vector(&self.ring, n * n);
        for i in 0..n {
            column[i * n + i] = Polynomial::one(&self.ring);
        }
        let mut extra = Vec::with_capacity(n * self.relations.len());
        for i in 0..n {
            for r in &self.relations {
                let mut v = zero_vector(&self.ring, n * n);
                for (j, p) in r.iter().enumerate() {
                    v[i * n + j] = p.clone();
                }
                extra.push(v);
            }
        }
        let gens = kernel(&self.ring, &degrees, &[column], &extra).into_iter().map(|v| v[0].clone()).collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// True when every generator of `ideal` lies in the radical of the annihilator.
    pub fn is_supported_on(&self, ideal: &Ideal<C>) -> bool {
        self.unsupported_generator(ideal).is_none()
    }

    /// A generator of `ideal` outside the radical of the annihilator.
    pub fn unsupported_generator(&self, ideal: &Ideal<C>) -> Option<Polynomial<C>> {
        if self.ngens() == 0 || self.is_zero() {
            return None;
        }
        let ann = self.annihilator();
        ideal.gens().iter().find(|g| !radical_membership(g, &ann)).cloned()
    }

    /// Substitutes `value` for variable `var`; the module must be killed by
    /// `x_var - value`.
    pub fn specialize(&self, var: usize, value: &C) -> Result<Self> {
        let x = Polynomial::var(&self.ring, var);
        let f = x.sub(&Polynomial::constant(&self.ring, value.clone()));
        if !self.is_killed_by(&f) {
            return Err(Error::NotAnnihilated(f.to_string()));
        }
        let target = self.ring.without_var(var);
        let rels = self.relations.iter().map(|r| r.iter().map(|p| p.specialize(var, value, &target)).collect()).collect();
        Self::cokernel(&target, self.twists.clone(), rels)
    }

    /// Re-expresses the module over `target` via `f` on entries.
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        let rels = self.relations.iter().map(|r| r.iter().map(&f).collect()).collect();
        Self::cokernel(target, self.twists.clone(), rels).expect("mapped presentation")
    }
}

fn count_standard(lead: &[Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize) -> u64 {
    if var == bounds.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        let m = Monomial::from_exponents(exps);
        if lead.iter().any(|l| l.divides(&m)) {
            break;
        }
        total += count_standard(lead, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}

impl<C: Field> PartialEq for PresentedModule<C> {
    /// Equal presentations: same generators and same relation module.
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.twists == other.twists
            && self.relations.iter().all(|r| other.is_relation(r))
            && other.relations.iter().all(|r| self.is_relation(r))
    }
}

impl<C: Field> fmt::Display for PresentedModule<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rels ", self.ambient())?;
        if self.relations.is_empty() {
            let rows: Vec<&str> = vec!["[]"; self.ngens()];
            write!(f, "[{}]", rows.join(", "))
        } else {
            write!(f, "{}", self.presentation())
        }
    }
}

/// `(span ker + span extra) / (span img + span extra)` presented on the
/// nonzero elements of `ker`.
pub fn subquotient_with<C: Field>(
    ambient: &GradedFreeModule,
    ker: &[Vector<C>],
    img: &[Vector<C>],
    extra: &[Vector<C>],
) -> Result<PresentedModule<C>> {
    let ring = ambient.ring();
    for v in ker.iter().chain(img).chain(extra) {
        if v.len() != ambient.rank() {
            return Err(Error::Shape("vector length differs from ambient rank".into()));
        }
    }
    let gens: Vec<Vector<C>> = ker.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
    let img: Vec<Vector<C>> = img.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
    if !img.is_empty() {
        let mut span = gens.clone();
        span.extend(extra.iter().cloned());
        let sub = Submodule::new(ambient, &span);
        if img.iter().any(|v| !sub.contains(v)) {
            return Err(Error::ImageNotInKernel);
        }
    }
    let mut twists = Vec::with_capacity(gens.len());
    for g in &gens {
        twists.push(ambient.vector_degree(g)?.expect("nonzero generator"));
    }
    let mut quotient = img;
    quotient.extend(extra.iter().cloned());
    let relations = kernel(ring, ambient.twists(), &gens, &quotient);
    PresentedModule::cokernel(ring, twists, relations)
}

/// `span ker / span img`.
pub fn subquotient<C: Field>(ambient: &GradedFreeModule, ker: &[Vector<C>], img: &[Vector<C>]) -> Result<PresentedModule<C>> {
    subquotient_with(ambient, ker, img, &[])
}
