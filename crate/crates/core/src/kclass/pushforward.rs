//! Restriction of scalars along closed immersions and free finite extensions.

use super::{localized_class, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{PresentedModule, Vector};
use crate::ring::{Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use crate::two_periodic::TwoPeriodicComplex;

/// `g_* M` for `g : Spec R/J → Spec R`; `M` is given over `R`.
pub fn pushforward_closed<C: Field>(ideal: &Ideal<C>, m: &PresentedModule<C>) -> Result<PresentedModule<C>> {
    m.with_base(ideal)
}

/// `R → R' = R[z_1..z_k] / I'` where `I'` has a Gröbner basis, for the
/// lexicographic order with `z` first, whose leading terms involve only `z`.
/// `R'` is then free over `R` on the standard `z`-monomials.
#[derive(Clone, Debug)]
pub struct FiniteExtension<C: Field> {
    base: Ring,
    ring: Ring,
    ideal: Ideal<C>,
    basis: Vec<Monomial>,
    elimination: Ideal<C>,
    to_elimination: Vec<usize>,
}

impl<C: Field> FiniteExtension<C> {
    /// `ring` must extend `base` by appended variables. A supplied basis must
    /// coincide with the standard monomials.
    pub fn new(base: &Ring, ring: &Ring, ideal: &Ideal<C>, basis: Option<&[Monomial]>) -> Result<Self> {
        let n = base.nvars();
        let k = ring.nvars().checked_sub(n).ok_or_else(|| Error::InvalidRing("extension has fewer variables".into()))?;
        if ring.names()[..n] != *base.names() || ring.weights()[..n] != *base.weights() {
            return Err(Error::InvalidRing("extension must append variables to the base ring".into()));
        }
        let mut names: Vec<String> = ring.names()[n..].to_vec();
        names.extend(base.names().iter().cloned());
        let mut weights: Vec<u32> = ring.weights()[n..].to_vec();
        weights.extend_from_slice(base.weights());
        let mut params: Vec<bool> = (n..n + k).map(|i| ring.is_parameter(i)).collect();
        params.extend((0..n).map(|i| base.is_parameter(i)));
        let elim_ring = PolyRing::with_parameters(&names, &weights, &params, MonomialOrder::Lex)?;
        let to_elimination: Vec<usize> = (0..n).map(|i| k + i).chain(0..k).collect();
        let gens = ideal.gens().iter().map(|g| g.map_into(&elim_ring, &to_elimination)).collect();
        let elimination = Ideal::new(&elim_ring, gens)?;
        let leads = elimination.leading_monomials();
        if let Some(bad) = leads.iter().find(|m| m.exponents()[k..].iter().any(|&e| e > 0)) {
            return Err(Error::NotFinite(format!("leading term {} involves base variables", elim_ring.fmt_monomial(bad))));
        }
        let mut bounds = Vec::with_capacity(k);
        for v in 0..k {
            let pure = leads
                .iter()
                .filter(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|m| m.exponents()[v])
                .min();
            bounds.push(pure.ok_or_else(|| Error::NotFinite(format!("no power of {} is reducible", names[v])))?);
        }
        let mut standard = Vec::new();
        enumerate_standard(&leads, &bounds, &mut vec![0; k], 0, elim_ring.nvars(), &mut standard);
        let basis_here: Vec<Monomial> = standard
            .iter()
            .map(|m| {
                let mut e = vec![0; n];
                e.extend_from_slice(&m.exponents()[..k]);
                Monomial::from_exponents(&e)
            })
            .collect();
        if let Some(supplied) = basis {
            let mut a = supplied.to_vec();
            let mut b = basis_here.clone();
            a.sort_by(|x, y| x.exponents().cmp(y.exponents()));
            b.sort_by(|x, y| x.exponents().cmp(y.exponents()));
            if a != b {
                return Err(Error::NotFinite("supplied basis differs from the standard monomials".into()));
            }
            return Ok(FiniteExtension {
                base: base.clone(),
                ring: ring.clone(),
                ideal: ideal.clone(),
                basis: supplied.to_vec(),
                elimination,
                to_elimination,
            });
        }
        Ok(FiniteExtension { base: base.clone(), ring: ring.clone(), ideal: ideal.clone(), basis: basis_here, elimination, to_elimination })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal<C> {
        &self.ideal
    }

    /// The `R`-basis of `R'`, as monomials of the extension ring.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Coordinates of `f ∈ R'` in the basis.
    pub fn coordinates(&self, f: &Polynomial<C>) -> Result<Vec<Polynomial<C>>> {
        let n = self.base.nvars();
        let k = self.ring.nvars() - n;
        let nf = self.elimination.normal_form(&f.map_into(self.elimination.ring(), &self.to_elimination));
        let mut parts: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); self.basis.len()];
        for (m, c) in nf.terms() {
            let e = m.exponents();
            let pos = self
                .basis
                .iter()
                .position(|b| b.exponents()[n..] == e[..k])
                .ok_or_else(|| Error::NotFinite(format!("normal form term {} is outside the basis", self.elimination.ring().fmt_monomial(m))))?;
            parts[pos].push((Monomial::from_exponents(&e[k..]), c.clone()));
        }
        Ok(parts.into_iter().map(|t| Polynomial::from_terms(&self.base, t)).collect())
    }
}

fn enumerate_standard(leads: &[Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize, nvars: usize, out: &mut Vec<Monomial>) {
    if var == bounds.len() {
        let mut e = exps.clone();
        e.resize(nvars, 0);
        out.push(Monomial::from_exponents(&e));
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        let mut full = exps.clone();
        full.resize(nvars, 0);
        if leads.iter().any(|l| l.divides(&Monomial::from_exponents(&full))) {
            break;
        }
        enumerate_standard(leads, bounds, exps, var + 1, nvars, out);
    }
    exps[var] = 0;
}

/// Restriction of scalars of `M` over `R'` to `R`: generators `b_k e_i`.
pub fn pushforward_finite<C: Field>(ext: &FiniteExtension<C>, m: &PresentedModule<C>) -> Result<PresentedModule<C>> {
    let nb = ext.basis.len();
    let mut twists = Vec::with_capacity(m.ngens() * nb);
    for a in m.twists() {
        twists.extend(ext.basis.iter().map(|b| a + ext.ring.weighted_degree(b)));
    }
    let mut relations = Vec::with_capacity(m.relations().len() * nb);
    for v in m.relations() {
        for b in &ext.basis {
            let mut row: Vector<C> = Vec::with_capacity(m.ngens() * nb);
            for p in v {
                row.extend(ext.coordinates(&p.mul_term(&C::one(), b))?);
            }
            relations.push(row);
        }
    }
    PresentedModule::cokernel(&ext.base, twists, relations)
}

/// `h(E)(g_* G') = g_*(h(g^* E)(G'))` for the closed immersion cut out by `ideal`.
pub fn proper_pushforward_check<C: Field>(
    e: &TwoPeriodicComplex<C>,
    ideal: &Ideal<C>,
    coefficients: &PresentedModule<C>,
    support: &Ideal<C>,
) -> Result<Verdict<C>> {
    let lhs = localized_class(e, &pushforward_closed(ideal, coefficients)?, support)?;
    let rhs = localized_class(&e.restrict(ideal)?, coefficients, support)?;
    Ok(Verdict { lhs, rhs })
}
