use crate::fdalg::{AlgebraDiagnostics, AlgebraError, MultiplierAlgebra};

use super::extend::Extension;
use super::{
    check_e_conditions, check_extension, check_fullness, check_g_laws, check_kernels, compute_e, factorize_g,
    solve_counit, solve_g_maps, validate_coproduct, CanonicalIdempotent, CoalgError, CoproductData,
    CoproductDiagnostics, Counit, EConditions, Fullness, GLaws, KernelDiagnostics, Outcome, ProjectionMaps,
};

/// Stages of the axiom check, in execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WmhaStage {
    Algebra,
    Coproduct,
    Fullness,
    Counit,
    Idempotent,
    Extension,
    EConditions,
    GMaps,
    Kernels,
}

/// Everything computed by [`verify_wmha`]. A stage is `None` when a
/// prerequisite did not pass.
#[derive(Clone, Debug)]
pub struct WmhaOutcome {
    pub algebra: AlgebraDiagnostics,
    pub coproduct: Option<CoproductDiagnostics>,
    pub fullness: Option<Fullness>,
    pub counit: Option<Result<Counit, CoalgError>>,
    pub multipliers: Option<Result<MultiplierAlgebra, AlgebraError>>,
    pub idempotent: Option<Result<CanonicalIdempotent, CoalgError>>,
    pub extension: Option<Outcome>,
    pub e_conditions: Option<EConditions>,
    pub g_maps: Option<Result<ProjectionMaps, CoalgError>>,
    pub g_laws: Option<GLaws>,
    pub kernels: Option<KernelDiagnostics>,
    /// Coefficients of `F1`, `F2` over `M(A)⊗M(A)` when `G1`, `G2` factor through multipliers.
    pub factorization: Option<(Option<Vec<crate::exactla::Scalar>>, Option<Vec<crate::exactla::Scalar>>)>,
}

/// Witnesses of a passing verification.
#[derive(Clone, Debug)]
pub struct WmhaWitness {
    pub multipliers: MultiplierAlgebra,
    pub counit: Counit,
    pub idempotent: CanonicalIdempotent,
    pub g: ProjectionMaps,
}

impl WmhaOutcome {
    /// First stage that did not pass.
    pub fn first_failure(&self) -> Option<WmhaStage> {
        use WmhaStage::*;
        let a = &self.algebra;
        if !(a.associative() && a.nondegenerate()) {
            return Some(Algebra);
        }
        if !self.coproduct.as_ref().is_some_and(|d| d.ok()) {
            return Some(Coproduct);
        }
        if !self.fullness.as_ref().is_some_and(|f| f.full()) {
            return Some(Fullness);
        }
        if !matches!(self.counit, Some(Ok(_))) {
            return Some(Counit);
        }
        if !matches!(self.idempotent, Some(Ok(_))) || !matches!(self.multipliers, Some(Ok(_))) {
            return Some(Idempotent);
        }
        if !matches!(self.extension, Some(Ok(()))) {
            return Some(Extension);
        }
        if !self.e_conditions.as_ref().is_some_and(|e| e.ok()) {
            return Some(EConditions);
        }
        if !matches!(self.g_maps, Some(Ok(_))) || !self.g_laws.as_ref().is_some_and(|g| g.ok()) {
            return Some(GMaps);
        }
        if !self
            .kernels
            .as_ref()
            .is_some_and(|k| k.contained.is_ok() && k.equal.is_ok())
        {
            return Some(Kernels);
        }
        None
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn witness(&self) -> Option<WmhaWitness> {
        if !self.passed() {
            return None;
        }
        Some(WmhaWitness {
            multipliers: self.multipliers.clone()?.ok()?,
            counit: self.counit.clone()?.ok()?,
            idempotent: self.idempotent.clone()?.ok()?,
            g: self.g_maps.clone()?.ok()?,
        })
    }
}

/// Runs the axiom checks in order; later stages consume earlier witnesses.
pub fn verify_wmha(c: &CoproductData) -> WmhaOutcome {
    let algebra = c.algebra().validate();
    let mut out = WmhaOutcome {
        algebra,
        coproduct: None,
        fullness: None,
        counit: None,
        multipliers: None,
        idempotent: None,
        extension: None,
        e_conditions: None,
        g_maps: None,
        g_laws: None,
        kernels: None,
        factorization: None,
    };
    if !out.algebra.associative() {
        return out;
    }
    let diag = validate_coproduct(c);
    let coproduct_ok = diag.ok();
    out.coproduct = Some(diag);
    let fullness = check_fullness(c);
    let full = fullness.full();
    out.fullness = Some(fullness);
    out.counit = Some(solve_counit(c));
    if !out.algebra.nondegenerate() {
        return out;
    }
    let ma = MultiplierAlgebra::new(c.algebra());
    out.multipliers = Some(ma.clone());
    let Ok(ma) = ma else { return out };
    if !coproduct_ok {
        return out;
    }
    let e = compute_e(c, &ma);
    out.idempotent = Some(e.clone());
    let Ok(e) = e else { return out };
    let ext = Extension::new(c, &e.e);
    out.extension = Some(check_extension(c, &ext));
    out.e_conditions = Some(check_e_conditions(c, &e.e, ext.preimage1()));
    let Some(Ok(eps)) = out.counit.clone() else { return out };
    if !full {
        return out;
    }
    let g = solve_g_maps(c, &e.e, &eps);
    out.g_maps = Some(g.clone());
    let Ok(g) = g else { return out };
    out.g_laws = Some(check_g_laws(c, &g));
    out.kernels = Some(check_kernels(c, &g));
    out.factorization = Some((factorize_g(c, &g.g1, &ma), factorize_g(c, &g.g2, &ma)));
    out
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::exactla::Scalar;

    #[test]
    fn models_pass() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(2)] {
            let o = verify_wmha(&c);
            assert_eq!(o.first_failure(), None);
            assert!(o.witness().is_some());
        }
    }

    #[test]
    fn structure_mutation_fails() {
        let c = pair_convolution(2);
        let alg = c.algebra().with_structure_entry(0, 0, 1, Scalar::from_int(1));
        let bad = CoproductData::new(alg, c.t1().clone(), c.t2().clone(), None, None).unwrap();
        let o = verify_wmha(&bad);
        assert!(o.first_failure().is_some());
    }
}
