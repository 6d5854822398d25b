//! Cosection-localized Gysin maps through the tautological Koszul complex.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kclass::{localized_class, KClass, Verdict};
use crate::koszul::{koszul_complex, koszul_resolution, tautological_potential, SectionCosectionPair};
use crate::module::{GradedFreeModule, ModuleMap, PresentedModule};
use crate::ring::{Ideal, Polynomial, Ring};
use crate::two_periodic::TwoPeriodicComplex;

/// A bundle `F` on `Spec R` with a cosection `σ`, and the data on `|F|`:
/// fiber variables `y`, `w_σ = Σ σ_i y_i`, `J = (w_σ)` and `I_σ = (σ) + (y)`.
#[derive(Clone, Debug)]
pub struct CosectionModel<C: Field> {
    base_ring: Ring,
    fiber: GradedFreeModule,
    sigma: Vec<Polynomial<C>>,
    ring: Ring,
    fiber_vars: Vec<usize>,
    potential: Polynomial<C>,
    base_ideal: Ideal<C>,
    support: Ideal<C>,
}

impl<C: Field> CosectionModel<C> {
    pub fn new(fiber: &GradedFreeModule, sigma: Vec<Polynomial<C>>) -> Result<Self> {
        let base_ring = fiber.ring().clone();
        let (ring, potential, fiber_vars) = tautological_potential(&base_ring, fiber, &sigma)?;
        let base_ideal = Ideal::new(&ring, vec![potential.clone()])?;
        let mut gens: Vec<Polynomial<C>> = sigma.iter().filter(|s| !s.is_zero()).map(|s| s.embed(&ring)).collect();
        gens.extend(fiber_vars.iter().map(|&v| Polynomial::var(&ring, v)));
        let support = Ideal::new(&ring, gens)?;
        Ok(CosectionModel { base_ring, fiber: fiber.clone(), sigma, ring, fiber_vars, potential, base_ideal, support })
    }

    pub fn base_ring(&self) -> &Ring {
        &self.base_ring
    }

    pub fn fiber(&self) -> &GradedFreeModule {
        &self.fiber
    }

    pub fn sigma(&self) -> &[Polynomial<C>] {
        &self.sigma
    }

    /// The total space ring `R[y_1..y_r]`.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn fiber_vars(&self) -> &[usize] {
        &self.fiber_vars
    }

    pub fn potential(&self) -> &Polynomial<C> {
        &self.potential
    }

    /// `J = (w_σ)`.
    pub fn base_ideal(&self) -> &Ideal<C> {
        &self.base_ideal
    }

    /// `I_σ`, the zero section over `Z(σ)`.
    pub fn support(&self) -> &Ideal<C> {
        &self.support
    }

    /// `{p^*σ, t_F}` over `R[y] / (w_σ)`.
    pub fn tautological_koszul(&self) -> Result<TwoPeriodicComplex<C>> {
        let ring = &self.ring;
        let bundle = GradedFreeModule::new(ring, self.fiber_vars.iter().map(|&v| -i64::from(ring.weights()[v])).collect());
        let alpha = self.sigma.iter().map(|s| s.embed(ring)).collect();
        let beta = self.fiber_vars.iter().map(|&v| Polynomial::var(ring, v)).collect();
        let c_alpha = self.potential.homogeneous_degree().unwrap_or(0);
        koszul_complex(&SectionCosectionPair::with_degrees(&self.base_ideal, &bundle, alpha, beta, c_alpha, 0)?)
    }
}

/// `0^!_{F,σ}(G) = h({p^*σ, t_F})(G)` for `G` over `R[y]` killed by `w_σ`.
pub fn cosection_localized_gysin<C: Field>(model: &CosectionModel<C>, coefficients: &PresentedModule<C>) -> Result<KClass<C>> {
    if !coefficients.is_killed_by(&model.potential) {
        return Err(Error::NotAnnihilated(model.potential.to_string()));
    }
    localized_class(&model.tautological_koszul()?, coefficients, &model.support)
}

/// With `σ = 0`, the localized Gysin map against the class of the folded
/// Koszul resolution of the zero section.
pub fn zero_sigma_reduction_check<C: Field>(fiber: &GradedFreeModule, coefficients_on_total_space: impl Fn(&Ring) -> Result<PresentedModule<C>>) -> Result<Verdict<C>> {
    let ring = fiber.ring();
    let model = CosectionModel::new(fiber, vec![Polynomial::zero(ring); fiber.rank()])?;
    let g = coefficients_on_total_space(model.ring())?;
    let lhs = cosection_localized_gysin(&model, &g)?;
    let ys: Vec<Polynomial<C>> = model.fiber_vars.iter().map(|&v| Polynomial::var(model.ring(), v)).collect();
    let rhs = localized_class(&koszul_resolution(model.ring(), &ys)?.fold(), &g, &model.support)?;
    Ok(Verdict { lhs, rhs })
}

/// `0^!_{F,σ}[O_C]` for a cone `C ⊂ Z(w_σ)`, given the map `d : A → F` with
/// `σ ∘ d = 0`.
pub fn localized_virtual_class<C: Field>(model: &CosectionModel<C>, d: &ModuleMap<C>, cone: &PresentedModule<C>) -> Result<KClass<C>> {
    let m = d.matrix();
    if m.rows() != model.sigma.len() {
        return Err(Error::Shape(format!("map lands in rank {} but sigma has {} entries", m.rows(), model.sigma.len())));
    }
    for j in 0..m.cols() {
        let s = (0..m.rows()).fold(Polynomial::zero(&model.base_ring), |acc, i| acc.add(&model.sigma[i].mul(m.get(i, j))));
        if !s.is_zero() {
            return Err(Error::Invalid(format!("sigma composed with d is nonzero in column {j}: {s}")));
        }
    }
    cosection_localized_gysin(model, cone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::Q;

    fn line_model() -> CosectionModel<Q> {
        let r = PolyRing::standard(&["x"]);
        CosectionModel::new(&GradedFreeModule::free(&r, 1), vec![Polynomial::parse(&r, "x").unwrap()]).unwrap()
    }

    #[test]
    fn model_data() {
        let m = line_model();
        assert_eq!(m.ring().to_string(), "Q[x,y]");
        assert_eq!(m.potential().to_string(), "x*y");
        assert_eq!(m.support(), &Ideal::parse(m.ring(), "x, y").unwrap());
    }

    #[test]
    fn worked_line_example() {
        let m = line_model();
        let s = m.ring();
        let whole = PresentedModule::quotient(&Ideal::parse(s, "x*y").unwrap());
        assert_eq!(cosection_localized_gysin(&m, &whole).unwrap().length(), Some(0));
        let axis = PresentedModule::quotient(&Ideal::parse(s, "x").unwrap());
        assert_eq!(cosection_localized_gysin(&m, &axis).unwrap().length(), Some(1));
        let free = PresentedModule::free(&GradedFreeModule::free(s, 1));
        assert!(matches!(cosection_localized_gysin(&m, &free), Err(Error::NotAnnihilated(_))));
    }

    #[test]
    fn zero_cosection_reduces_to_gysin() {
        let r = PolyRing::standard(&["x", "z"]);
        for g in ["x", "x^2, z", "y^2"] {
            let v = zero_sigma_reduction_check::<Q>(&GradedFreeModule::free(&r, 1), |s| {
                Ok(PresentedModule::quotient(&Ideal::parse(s, &format!("{g}, z"))?))
            })
            .unwrap();
            assert!(v.holds(), "{g}: {} vs {}", v.lhs, v.rhs);
        }
    }

    #[test]
    fn virtual_class_requires_compatible_map() {
        let m = line_model();
        let r = m.base_ring().clone();
        let a = GradedFreeModule::free(&r, 1);
        let zero = ModuleMap::new(&a, m.fiber(), crate::module::Matrix::zero(&r, 1, 1), 0).unwrap();
        let cone = PresentedModule::quotient(&Ideal::parse(m.ring(), "x").unwrap());
        assert_eq!(localized_virtual_class(&m, &zero, &cone).unwrap().length(), Some(1));
        let id = ModuleMap::new(&a, m.fiber(), crate::module::Matrix::identity(&r, 1), 0).unwrap();
        assert!(localized_virtual_class(&m, &id, &cone).is_err());
    }
}
