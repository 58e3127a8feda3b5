//! Fixed registry of check ids. Report assembly orders checks by their
//! position here. This is the one place where checks are tied to the
//! numbered statements of the source text.

/// Registry entry: check id and the anchor of the statement it verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
}

const fn def(id: &'static str, anchor: &'static str) -> CheckDef {
    CheckDef { id, anchor }
}

pub const CHECKS: &[CheckDef] = &[
    def("groupoid.valid", "ex-1.15"),
    def("algebra.associative", "def-1.1"),
    def("algebra.nondegenerate", "def-1.1"),
    def("algebra.idempotent", "def-1.1"),
    def("coproduct.module-laws", "notation-1.2"),
    def("coproduct.homomorphism", "def-1.1"),
    def("coproduct.coassociativity", "def-1.1"),
    def("coproduct.regular-maps", "app-A.1"),
    def("coproduct.full", "def-1.4"),
    def("counit.solve", "def-1.3"),
    def("counit.supplied", "def-1.3"),
    def("e.exists", "def-1.14-i"),
    def("e.supplied", "prop-1.6"),
    def("delta.extension", "prop-1.9"),
    def("e.commute", "assumption-1.10"),
    def("e.delta-conditions", "def-1.14-ii"),
    def("g.solve", "prop-1.11"),
    def("g.laws", "prop-1.13"),
    def("kernels.contained", "prop-1.13"),
    def("kernels.equal", "def-1.14-iii"),
    def("g.factorization", "remark-1.12"),
    def("r.build", "prop-2.3"),
    def("r.laws", "prop-2.3"),
    def("r.dense-cross-check", "lemma-2.1"),
    def("antipode.compatibility", "prop-2.7"),
    def("antipode.convolution", "prop-2.6"),
    def("antipode.remark-equivalence", "remark-2.8"),
    def("antipode.anti-multiplicative", "prop-3.5"),
    def("antipode.nondegenerate", "prop-3.6"),
    def("antipode.anti-coalgebra", "prop-3.7"),
    def("antipode.supplied", "prop-2.7"),
    def("source-target.compute", "def-3.1"),
    def("source-target.legs", "lemma-3.2"),
    def("source-target.coproduct", "lemma-3.3"),
    def("source-target.subalgebras", "lemma-3.4"),
    def("source-target.commute", "lemma-3.4"),
    def("source-target.inclusions", "prop-3.9"),
    def("thm29.prerequisites", "thm-2.9"),
    def("thm29.r-maps", "prop-2.4"),
    def("thm29.convolution", "thm-2.9"),
    def("thm29.ranges", "thm-2.9"),
    def("thm29.e-conditions", "thm-2.9"),
    def("paths.agree", "thm-2.9"),
    def("regular.criterion", "thm-4.10"),
    def("regular.t34", "app-A.1"),
    def("regular.ranges", "prop-4.2"),
    def("regular.opposite", "prop-4.3"),
    def("regular.flip", "prop-4.4"),
    def("regular.strong-anti-coalgebra", "remark-3.8"),
    def("regular.factorization", "prop-4.5"),
    def("regular.e13", "prop-4.6"),
    def("regular.f-formulas", "prop-4.7"),
    def("regular.cop", "def-4.1"),
    def("star.structure", "prop-4.11"),
    def("star.delta", "prop-4.11"),
    def("star.involution", "prop-4.11"),
    def("star.e-self-adjoint", "remark-1.7"),
    def("star.f-adjoints", "prop-4.11"),
    def("weak-hopf.unital", "prop-4.12"),
    def("weak-hopf.e-delta-one", "prop-4.12"),
    def("weak-hopf.counit-formulas", "prop-4.12"),
    def("weak-hopf.counit-split", "prop-4.12-eq-4.12"),
    def("weak-hopf.counit-split-op", "prop-4.12-eq-4.13"),
    def("appendix.counit-leg", "app-A.3"),
    def("appendix.antipode-source-target", "app-A.4"),
    def("appendix.leg-exchange", "app-A.5"),
    def("appendix.e-prime", "app-A.8"),
    def("appendix.opposite-round-trip", "app-A.12"),
    def("oracle.e", "ex-1.15-1.16"),
    def("oracle.g", "ex-1.15-1.16"),
    def("oracle.counit", "ex-1.15-1.16"),
    def("oracle.antipode", "ex-1.15-1.16"),
    def("oracle.f", "ex-1.15-1.16"),
    def("oracle.pairing", "ex-1.16"),
    def("infinite.windows", "ex-1.15"),
    def("infinite.restriction", "ex-1.15"),
    def("infinite.non-unital", "ex-1.15"),
    def("infinite.local-units", "prop-4.9"),
];

/// Position of `id` in the registry.
pub fn position(id: &str) -> Option<usize> {
    CHECKS.iter().position(|c| c.id == id)
}

pub fn anchor(id: &str) -> Option<&'static str> {
    CHECKS.iter().find(|c| c.id == id).map(|c| c.anchor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_anchored() {
        let ids: BTreeSet<_> = CHECKS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CHECKS.len());
        assert!(CHECKS.iter().all(|c| !c.anchor.is_empty()));
        assert_eq!(anchor("kernels.equal"), Some("def-1.14-iii"));
        assert_eq!(position("groupoid.valid"), Some(0));
        assert_eq!(position("nope"), None);
    }
}
