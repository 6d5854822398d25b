//! Koszul 2-periodic complexes `{α, β}` on exterior powers of a dual bundle.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kclass::{localized_class, KClass};
use crate::module::{GradedFreeModule, Matrix, PresentedModule};
use crate::ring::{same_ring, Ideal, Polynomial, Ring};
use crate::two_periodic::{BoundedComplex, ChainMap, Parity, TwoPeriodicComplex};

/// A bundle `E = ⊕ R(-a_i)` with a cosection `α : E → R` and a section
/// `β : R → E` such that `⟨α, β⟩ = 0` modulo the base ideal.
///
/// `α` has degree `c_alpha` and `β` degree `c_beta`, so `deg α_i = c_alpha + a_i`
/// and `deg β_i = c_beta - a_i`.
#[derive(Clone, Debug)]
pub struct SectionCosectionPair<C: Field> {
    bundle: GradedFreeModule,
    alpha: Vec<Polynomial<C>>,
    beta: Vec<Polynomial<C>>,
    base: Ideal<C>,
    c_alpha: i64,
    c_beta: i64,
}

fn infer_shift<C: Field>(entries: &[Polynomial<C>], twists: &[i64], sign: i64) -> Option<i64> {
    entries.iter().zip(twists).find_map(|(p, a)| p.homogeneous_degree().map(|d| d - sign * a))
}

impl<C: Field> SectionCosectionPair<C> {
    pub fn new(bundle: &GradedFreeModule, alpha: Vec<Polynomial<C>>, beta: Vec<Polynomial<C>>) -> Result<Self> {
        Self::with_base(&Ideal::zero(bundle.ring()), bundle, alpha, beta)
    }

    /// Degrees of `α` and `β` are read off their nonzero entries (0 if none).
    pub fn with_base(base: &Ideal<C>, bundle: &GradedFreeModule, alpha: Vec<Polynomial<C>>, beta: Vec<Polynomial<C>>) -> Result<Self> {
        let c_alpha = infer_shift(&alpha, bundle.twists(), 1).unwrap_or(0);
        let c_beta = infer_shift(&beta, bundle.twists(), -1).unwrap_or(0);
        Self::with_degrees(base, bundle, alpha, beta, c_alpha, c_beta)
    }

    pub fn with_degrees(
        base: &Ideal<C>,
        bundle: &GradedFreeModule,
        alpha: Vec<Polynomial<C>>,
        beta: Vec<Polynomial<C>>,
        c_alpha: i64,
        c_beta: i64,
    ) -> Result<Self> {
        let ring = bundle.ring();
        let r = bundle.rank();
        if alpha.len() != r || beta.len() != r {
            return Err(Error::Shape(format!("alpha has {} and beta {} entries for a bundle of rank {r}", alpha.len(), beta.len())));
        }
        if !same_ring(ring, base.ring()) || alpha.iter().chain(&beta).any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::MixedRings);
        }
        for (i, a) in bundle.twists().iter().enumerate() {
            for (entry, expected) in [(&alpha[i], c_alpha + a), (&beta[i], c_beta - a)] {
                if !entry.is_zero() && entry.homogeneous_degree() != Some(expected) {
                    return Err(Error::NotHomogeneous { row: 0, col: i, value: entry.to_string(), expected });
                }
            }
        }
        let pairing = alpha.iter().zip(&beta).fold(Polynomial::zero(ring), |s, (a, b)| s.add(&a.mul(b)));
        let reduced = if base.is_zero() { pairing } else { base.normal_form(&pairing) };
        if !reduced.is_zero() {
            return Err(Error::PairingNonzero(reduced.to_string()));
        }
        Ok(SectionCosectionPair { bundle: bundle.clone(), alpha, beta, base: base.clone(), c_alpha, c_beta })
    }

    pub fn ring(&self) -> &Ring {
        self.bundle.ring()
    }

    pub fn bundle(&self) -> &GradedFreeModule {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn alpha(&self) -> &[Polynomial<C>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Polynomial<C>] {
        &self.beta
    }

    pub fn base(&self) -> &Ideal<C> {
        &self.base
    }

    /// `(deg α, deg β)`.
    pub fn degrees(&self) -> (i64, i64) {
        (self.c_alpha, self.c_beta)
    }

    /// `(E^∨, β^∨, α^∨)`: the dual bundle with the roles of `α` and `β` exchanged.
    pub fn dual(&self) -> Self {
        SectionCosectionPair {
            bundle: self.bundle.dual(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            base: self.base.clone(),
            c_alpha: self.c_beta,
            c_beta: self.c_alpha,
        }
    }
}

/// Subsets of `0..r` with size of the given parity, by size and then lexicographically.
pub fn exterior_basis(r: usize, parity: Parity) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let start = if parity == Parity::Plus { 0 } else { 1 };
    for k in (start..=r).step_by(2) {
        out.extend(subsets_of_size(r, k));
    }
    out
}

fn subsets_of_size(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(r: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..r {
            cur.push(i);
            go(r, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, k, 0, &mut Vec::new(), &mut out);
    out
}

fn position(basis: &[Vec<usize>], s: &[usize]) -> usize {
    basis.iter().position(|b| b == s).expect("subset in basis")
}

fn sign<C: Field>(p: &Polynomial<C>, odd: bool) -> Polynomial<C> {
    if odd {
        p.neg()
    } else {
        p.clone()
    }
}

/// `∧α + ι_β` on `Λ^even E^∨ ⇄ Λ^odd E^∨`; `Λ^k` has twist
/// `-Σ_{i∈S} a_i + ⌊k/2⌋ (deg β - deg α)`, so `d_+` has degree `deg α` and
/// `d_-` degree `deg β`.
pub fn koszul_complex<C: Field>(pair: &SectionCosectionPair<C>) -> Result<TwoPeriodicComplex<C>> {
    let ring = pair.ring();
    let r = pair.rank();
    let a = pair.bundle.twists();
    let (ca, cb) = pair.degrees();
    let twist = |s: &[usize]| -> i64 { -s.iter().map(|&i| a[i]).sum::<i64>() + (s.len() as i64 / 2) * (cb - ca) };
    let even = exterior_basis(r, Parity::Plus);
    let odd = exterior_basis(r, Parity::Minus);
    let plus = GradedFreeModule::new(ring, even.iter().map(|s| twist(s)).collect());
    let minus = GradedFreeModule::new(ring, odd.iter().map(|s| twist(s)).collect());
    let differential = |src: &[Vec<usize>], tgt: &[Vec<usize>]| {
        let mut m = Matrix::zero(ring, tgt.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for i in 0..r {
                match s.binary_search(&i) {
                    Err(pos) => {
                        if !pair.alpha[i].is_zero() {
                            let mut t = s.clone();
                            t.insert(pos, i);
                            let row = position(tgt, &t);
                            m.set(row, col, m.get(row, col).add(&sign(&pair.alpha[i], pos % 2 == 1)));
                        }
                    }
                    Ok(pos) => {
                        if !pair.beta[i].is_zero() {
                            let mut t = s.clone();
                            t.remove(pos);
                            let row = position(tgt, &t);
                            m.set(row, col, m.get(row, col).add(&sign(&pair.beta[i], pos % 2 == 1)));
                        }
                    }
                }
            }
        }
        m
    };
    let d_plus = differential(&even, &odd);
    let d_minus = differential(&odd, &even);
    TwoPeriodicComplex::with_degrees(&pair.base, &plus, &minus, d_plus, d_minus, ca, cb)
}

/// The classical Koszul resolution `0 → Λ^r → … → Λ^1 → R → 0` of
/// `R / (f_1, .., f_r)`, in degrees `-r..0`, with degree-0 differentials.
pub fn koszul_resolution<C: Field>(ring: &Ring, f: &[Polynomial<C>]) -> Result<BoundedComplex<C>> {
    let r = f.len();
    let mut degrees = Vec::with_capacity(r);
    for p in f {
        match p.homogeneous_degree() {
            Some(d) => degrees.push(d),
            None if p.is_zero() => degrees.push(0),
            None => return Err(Error::InhomogeneousVector),
        }
    }
    let layers: Vec<Vec<Vec<usize>>> = (0..=r).rev().map(|k| subsets_of_size(r, k)).collect();
    let modules = layers
        .iter()
        .map(|l| GradedFreeModule::new(ring, l.iter().map(|s| s.iter().map(|&i| degrees[i]).sum()).collect()))
        .collect();
    let mut maps = Vec::with_capacity(r);
    for w in layers.windows(2) {
        let (src, tgt) = (&w[0], &w[1]);
        let mut m = Matrix::zero(ring, tgt.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(pos);
                m.set(position(tgt, &t), col, sign(&f[j], pos % 2 == 1));
            }
        }
        maps.push(m);
    }
    BoundedComplex::new(-(r as i64), modules, maps)
}

/// `{α, β} ≅ {β^∨, α^∨} ⊗ Υ(det E^∨)[rank E]` realised by the Hodge star
/// `e^∨_S ↦ ε(S) e_{S^c} ⊗ det`.
///
/// The target's components are retwisted by a constant per parity so that the
/// map has degree 0. The returned chain map has been verified, and every block
/// is a signed permutation matrix.
pub fn duality_isomorphism<C: Field>(pair: &SectionCosectionPair<C>) -> Result<ChainMap<C>> {
    let ring = pair.ring();
    let r = pair.rank();
    let source = koszul_complex(pair)?;
    let det = GradedFreeModule::new(ring, vec![-pair.bundle.twists().iter().sum::<i64>()]);
    let mut target = koszul_complex(&pair.dual())?.tensor(&BoundedComplex::single(&det).fold())?;
    for _ in 0..r {
        target = target.shift();
    }
    let tau: i64 = if r.is_multiple_of(2) { -1 } else { 1 };
    let mut blocks = Vec::with_capacity(2);
    let mut shifts = Vec::with_capacity(2);
    for parity in [Parity::Plus, Parity::Minus] {
        let src = exterior_basis(r, parity);
        let tgt_parity = if r.is_multiple_of(2) { parity } else { parity.flip() };
        let tgt = exterior_basis(r, tgt_parity);
        let mut m = Matrix::zero(ring, tgt.len(), src.len());
        let mut shift = None;
        for (col, s) in src.iter().enumerate() {
            let complement: Vec<usize> = (0..r).filter(|i| !s.contains(i)).collect();
            let row = position(&tgt, &complement);
            let exponent = s.len() as i64 * i64::from(tau == -1) + s.iter().sum::<usize>() as i64;
            m.set(row, col, Polynomial::from_i64(ring, if exponent % 2 == 0 { 1 } else { -1 }));
            let delta = source.module(parity).twists()[col] - target.module(parity).twists()[row];
            match shift {
                None => shift = Some(delta),
                Some(d) if d != delta => return Err(Error::GradingMismatch("duality twists differ within a parity".into())),
                _ => {}
            }
        }
        blocks.push(m);
        shifts.push(shift.unwrap_or(0));
    }
    let target = target.retwist(shifts[0], shifts[1]);
    let f_minus = blocks.pop().expect("two blocks");
    let f_plus = blocks.pop().expect("two blocks");
    let map = ChainMap::with_degree(&source, &target, f_plus, f_minus, 0)?;
    for m in [map.f_plus(), map.f_minus()] {
        match m.constant_determinant() {
            Some(d) if !d.is_zero() => {}
            _ => return Err(Error::NotChainMap("duality block is not invertible".into())),
        }
    }
    Ok(map)
}

/// `h({α, β})(G)` against `h({α_Q, 0} ⊗ {0, β_K})(G)` for `E = K ⊕ Q`.
///
/// Both factors use the degrees of the full pair, so the tensor product is
/// graded consistently.
pub fn split_koszul_compare<C: Field>(
    k_part: &GradedFreeModule,
    q_part: &GradedFreeModule,
    alpha_q: Vec<Polynomial<C>>,
    beta_k: Vec<Polynomial<C>>,
    coefficients: &PresentedModule<C>,
    support: &Ideal<C>,
) -> Result<(KClass<C>, KClass<C>)> {
    let ring = k_part.ring();
    let zeros = |n: usize| vec![Polynomial::zero(ring); n];
    let bundle = k_part.direct_sum(q_part);
    let mut alpha = zeros(k_part.rank());
    alpha.extend(alpha_q.iter().cloned());
    let mut beta = beta_k.clone();
    beta.extend(zeros(q_part.rank()));
    let base = Ideal::zero(ring);
    let full = SectionCosectionPair::with_base(&base, &bundle, alpha, beta)?;
    let (ca, cb) = full.degrees();
    let on_q = SectionCosectionPair::with_degrees(&base, q_part, alpha_q, zeros(q_part.rank()), ca, cb)?;
    let on_k = SectionCosectionPair::with_degrees(&base, k_part, zeros(k_part.rank()), beta_k, ca, cb)?;
    let split = koszul_complex(&on_q)?.tensor(&koszul_complex(&on_k)?)?;
    Ok((
        localized_class(&koszul_complex(&full)?, coefficients, support)?,
        localized_class(&split, coefficients, support)?,
    ))
}

/// Adjoins one fiber variable per generator of `F` and returns `w_σ = Σ σ_i y_i`.
///
/// Fiber variables are `y` (rank 1) or `y1, .., yr`, with weights
/// `1 + max a - a_i` so that `w_σ` is homogeneous.
pub fn tautological_potential<C: Field>(
    ring: &Ring,
    fiber: &GradedFreeModule,
    sigma: &[Polynomial<C>],
) -> Result<(Ring, Polynomial<C>, Vec<usize>)> {
    let r = fiber.rank();
    if sigma.len() != r {
        return Err(Error::Shape(format!("sigma has {} entries for rank {r}", sigma.len())));
    }
    let names: Vec<String> = if r == 1 { vec!["y".into()] } else { (1..=r).map(|i| format!("y{i}")).collect() };
    for n in &names {
        if ring.var_index(n).is_some() {
            return Err(Error::NameCollision(n.clone()));
        }
    }
    let top = fiber.twists().iter().copied().max().unwrap_or(0);
    let weights: Vec<u32> = fiber
        .twists()
        .iter()
        .map(|a| u32::try_from(1 + top - a).map_err(|_| Error::InvalidRing("fiber weight overflow".into())))
        .collect::<Result<_>>()?;
    let extended = ring.extend(&names, &weights, &vec![false; r])?;
    let n = ring.nvars();
    let vars: Vec<usize> = (n..n + r).collect();
    let mut w = Polynomial::zero(&extended);
    for (s, &v) in sigma.iter().zip(&vars) {
        w = w.add(&s.embed(&extended).mul(&Polynomial::var(&extended, v)));
    }
    if !w.is_zero() && !w.is_homogeneous() {
        return Err(Error::InhomogeneousVector);
    }
    Ok((extended, w, vars))
}

#[cfg(test)]
mod tests;
