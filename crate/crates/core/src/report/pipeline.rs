use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::antipode::{
    build_generalized_inverses, check_antipode_identities, check_appendix, check_f_formulas, check_r_laws,
    check_source_target, check_star_compat, classify_regular, classify_weak_hopf, compare_mult, compare_tm,
    compute_antipode, compute_source_target, dense_cross_check, e_from_element, verify_via_antipode, AntipodeWitness,
    GeneralizedInverses, RegularSuite, SourceTarget,
};
use crate::coalg::{
    compare_ops, verify_wmha, CoproductData, Outcome, ProjectionMaps, TensorMultiplier, Violation, WmhaOutcome,
    WmhaWitness,
};
use crate::exactla::{kron_vec, Matrix, Scalar, SparseVec, Subspace};
use crate::fdalg::Multiplier;
use crate::groupoid::{check_duality_pairing, validate_groupoid, GroupoidModel};

use super::encode::{matrix_doc, multiplier_doc, op_doc, tensor_doc};
use super::input::{Presentation, Subject};
use super::registry;
use super::windows::infinite_run;
use super::{
    verdict_of, AntipodeDoc, CheckRecord, Classification, Counterexample, ImageDoc, Report, Status, Witnesses,
    SCHEMA_VERSION, TOOL_VERSION,
};

/// Which verification route(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathChoice {
    /// Axioms checked directly.
    Def114,
    /// Axioms derived from a candidate antipode and idempotent.
    Thm29,
    Both,
}

impl PathChoice {
    pub fn def114(self) -> bool {
        matches!(self, PathChoice::Def114 | PathChoice::Both)
    }

    pub fn thm29(self) -> bool {
        matches!(self, PathChoice::Thm29 | PathChoice::Both)
    }

    pub fn names(self) -> Vec<String> {
        let mut v = Vec::new();
        if self.def114() {
            v.push("def114".to_string());
        }
        if self.thm29() {
            v.push("thm29".to_string());
        }
        v
    }
}

impl FromStr for PathChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "def114" => Ok(PathChoice::Def114),
            "thm29" => Ok(PathChoice::Thm29),
            "both" => Ok(PathChoice::Both),
            _ => Err(format!("unknown path {s:?}, expected def114, thm29 or both")),
        }
    }
}

impl fmt::Display for PathChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathChoice::Def114 => "def114",
            PathChoice::Thm29 => "thm29",
            PathChoice::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub path: PathChoice,
    pub seed: u64,
    /// Number of windows for infinite groupoids.
    pub windows: usize,
    /// Largest `dim A⊗A` for the dense recomputation of `R1`, `R2`.
    pub dense_limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            path: PathChoice::Both,
            seed: 0,
            windows: 3,
            dense_limit: 100,
        }
    }
}

/// Witnesses kept in memory for comparisons across runs.
#[derive(Clone, Debug, Default)]
pub struct Computed {
    pub e: Option<TensorMultiplier>,
    pub counit: Option<Vec<Scalar>>,
    pub antipode: Option<Matrix>,
    pub g: Option<ProjectionMaps>,
}

#[derive(Clone, Debug)]
pub struct FiniteRun {
    pub checks: Vec<CheckRecord>,
    pub witnesses: Witnesses,
    pub classification: Classification,
    pub computed: Computed,
}

pub(crate) struct Recorder<'a> {
    pub checks: Vec<CheckRecord>,
    labels: &'a [String],
}

fn first_err(os: impl IntoIterator<Item = Outcome>) -> Outcome {
    os.into_iter().collect::<Result<Vec<()>, Violation>>().map(|_| ())
}

impl<'a> Recorder<'a> {
    pub fn new(labels: &'a [String]) -> Self {
        Recorder {
            checks: Vec::new(),
            labels,
        }
    }

    fn push(&mut self, id: &str, status: Status, prerequisite: Option<String>, detail: String, refs: &[&str]) {
        let anchor = registry::anchor(id).unwrap_or_else(|| panic!("check id {id} is not registered"));
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            prerequisite,
            detail,
            witness_refs: refs.iter().map(|r| r.to_string()).collect(),
            counterexample: None,
        });
    }

    pub fn pass(&mut self, id: &str, detail: impl Into<String>, refs: &[&str]) {
        self.push(id, Status::Pass, None, detail.into(), refs);
    }

    pub fn fail(&mut self, id: &str, detail: impl Into<String>, refs: &[&str]) {
        self.push(id, Status::Fail, None, detail.into(), refs);
    }

    pub fn violation(&mut self, id: &str, v: &Violation, refs: &[&str]) {
        let cx = Counterexample::from_violation(v, self.labels);
        let detail = if cx.labels.is_empty() {
            cx.law.clone()
        } else {
            format!("{} at {}", cx.law, cx.labels.join(", "))
        };
        self.push(id, Status::Fail, None, detail, refs);
        self.checks.last_mut().expect("just pushed").counterexample = Some(cx);
    }

    /// Records `o`; returns whether it passed.
    pub fn outcome(&mut self, id: &str, o: &Outcome, detail: &str, refs: &[&str]) -> bool {
        match o {
            Ok(()) => self.pass(id, detail, refs),
            Err(v) => self.violation(id, v, refs),
        }
        o.is_ok()
    }

    /// Skip whose cause is a check that did not pass; the recorded
    /// prerequisite is the root cause.
    pub fn skip(&mut self, id: &str, after: &[&str]) {
        let pre = self.root_cause(after);
        self.push(
            id,
            Status::Skip,
            Some(pre.clone()),
            format!("prerequisite {pre} did not pass"),
            &[],
        );
    }

    pub fn skip_all(&mut self, ids: &[&str], after: &[&str]) {
        for id in ids {
            self.skip(id, after);
        }
    }

    /// Skip that is not caused by a failure.
    pub fn not_applicable(&mut self, id: &str, detail: impl Into<String>) {
        self.push(id, Status::Skip, None, detail.into(), &[]);
    }

    fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    fn root_cause(&self, after: &[&str]) -> String {
        for id in after {
            match self.get(id) {
                Some(c) if c.status == Status::Fail => return c.id.clone(),
                Some(c) if c.status == Status::Skip => {
                    if let Some(p) = &c.prerequisite {
                        return p.clone();
                    }
                }
                _ => {}
            }
        }
        match after.first() {
            Some(id) if self.get(id).is_some() => id.to_string(),
            _ => self
                .first_failure()
                .unwrap_or_else(|| after.first().copied().unwrap_or("none").to_string()),
        }
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .min_by_key(|c| registry::position(&c.id))
            .map(|c| c.id.clone())
    }

    pub fn finish(mut self) -> Vec<CheckRecord> {
        self.checks.sort_by_key(|c| registry::position(&c.id));
        self.checks
    }
}

const ANTIPODE_IDS: &[&str] = &[
    "r.build",
    "r.laws",
    "r.dense-cross-check",
    "antipode.compatibility",
    "antipode.convolution",
    "antipode.remark-equivalence",
    "antipode.anti-multiplicative",
    "antipode.nondegenerate",
    "antipode.anti-coalgebra",
];
const SOURCE_TARGET_IDS: &[&str] = &[
    "source-target.compute",
    "source-target.legs",
    "source-target.coproduct",
    "source-target.subalgebras",
    "source-target.commute",
    "source-target.inclusions",
];
const THM29_IDS: &[&str] = &[
    "thm29.prerequisites",
    "thm29.r-maps",
    "thm29.convolution",
    "thm29.ranges",
    "thm29.e-conditions",
];
const REGULAR_IDS: &[&str] = &[
    "regular.ranges",
    "regular.opposite",
    "regular.flip",
    "regular.strong-anti-coalgebra",
    "regular.factorization",
    "regular.e13",
    "regular.f-formulas",
    "regular.cop",
];
const STAR_IDS: &[&str] = &[
    "star.structure",
    "star.delta",
    "star.involution",
    "star.e-self-adjoint",
    "star.f-adjoints",
];
const WEAK_HOPF_IDS: &[&str] = &[
    "weak-hopf.e-delta-one",
    "weak-hopf.counit-formulas",
    "weak-hopf.counit-split",
    "weak-hopf.counit-split-op",
];
const APPENDIX_IDS: &[&str] = &[
    "appendix.counit-leg",
    "appendix.antipode-source-target",
    "appendix.leg-exchange",
    "appendix.e-prime",
    "appendix.opposite-round-trip",
];
const ORACLE_IDS: &[&str] = &["oracle.e", "oracle.g", "oracle.counit", "oracle.antipode", "oracle.f"];

fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, _)| i)
        .collect()
}

/// Checks of the axioms as stated directly.
fn def114_checks(rec: &mut Recorder<'_>, p: &Presentation) -> WmhaOutcome {
    let c = &p.coproduct;
    let n = c.n();
    let o = verify_wmha(c);
    let a = &o.algebra;
    match a.associativity_failure {
        None => rec.pass("algebra.associative", format!("dimension {n}"), &[]),
        Some((i, j, k)) => rec.violation(
            "algebra.associative",
            &Violation::new("(e_i e_j) e_k = e_i (e_j e_k)", vec![i, j, k]),
            &[],
        ),
    }
    if a.associative() {
        if let Some(m) = &a.left_degenerate {
            rec.violation(
                "algebra.nondegenerate",
                &Violation::new("m A = 0 for some m ≠ 0", support(m)),
                &[],
            );
        } else if let Some(m) = &a.right_degenerate {
            rec.violation(
                "algebra.nondegenerate",
                &Violation::new("A m = 0 for some m ≠ 0", support(m)),
                &[],
            );
        } else {
            rec.pass("algebra.nondegenerate", "no nonzero annihilator", &[]);
        }
        if a.idempotent {
            let unit = if a.unit.is_some() { "unital" } else { "non-unital" };
            rec.pass("algebra.idempotent", format!("A² = A, {unit}"), &[]);
        } else {
            rec.fail("algebra.idempotent", "products do not span A", &[]);
        }
    } else {
        rec.skip_all(
            &["algebra.nondegenerate", "algebra.idempotent"],
            &["algebra.associative"],
        );
    }
    let cop_ids = [
        "coproduct.module-laws",
        "coproduct.homomorphism",
        "coproduct.coassociativity",
    ];
    match &o.coproduct {
        Some(d) => {
            rec.outcome(
                "coproduct.module-laws",
                &first_err([d.right_module.clone(), d.left_module.clone(), d.mixed.clone()]),
                "T1, T2 are module maps and commute",
                &[],
            );
            rec.outcome("coproduct.homomorphism", &d.homomorphism, "Δ(ab) = Δ(a)Δ(b)", &[]);
            rec.outcome(
                "coproduct.coassociativity",
                &d.coassociativity,
                "(T2⊗ι)(ι⊗T1) = (ι⊗T1)(T2⊗ι)",
                &[],
            );
            if let Some(r) = &d.regular_maps {
                rec.outcome("coproduct.regular-maps", r, "supplied T3, T4 agree with Δ", &[]);
            }
        }
        None => rec.skip_all(&cop_ids, &["algebra.associative"]),
    }
    match &o.fullness {
        Some(f) if f.full() => rec.pass("coproduct.full", "legs of Δ span A", &[]),
        Some(f) => rec.fail(
            "coproduct.full",
            format!(
                "legs of Δ span subspaces of dimension {} and {} in dimension {n}",
                f.v.dim(),
                f.w.dim()
            ),
            &[],
        ),
        None => rec.skip("coproduct.full", &["algebra.associative"]),
    }
    match &o.counit {
        Some(Ok(eps)) => {
            rec.pass("counit.solve", "unique solution", &["counit"]);
            if let Some(sup) = &p.counit {
                match (0..n).find(|&i| sup[i] != eps.values[i]) {
                    None => rec.pass("counit.supplied", "supplied counit equals the solved one", &["counit"]),
                    Some(i) => rec.violation(
                        "counit.supplied",
                        &Violation::new("supplied ε = solved ε", vec![i]),
                        &[],
                    ),
                }
            }
        }
        Some(Err(e)) => {
            rec.fail("counit.solve", e.to_string(), &[]);
            if p.counit.is_some() {
                rec.skip("counit.supplied", &["counit.solve"]);
            }
        }
        None => {
            rec.skip("counit.solve", &["algebra.associative"]);
            if p.counit.is_some() {
                rec.skip("counit.supplied", &["counit.solve"]);
            }
        }
    }
    let e_ok = match (&o.multipliers, &o.idempotent) {
        (Some(Err(e)), _) => {
            rec.fail("e.exists", format!("multiplier algebra: {e}"), &[]);
            false
        }
        (_, Some(Ok(e))) => {
            let nn = n * n;
            rec.pass("e.exists", format!("left action rank {}/{nn}", e.left_rank()), &["E"]);
            if let Some(sup) = &p.e {
                rec.outcome(
                    "e.supplied",
                    &compare_tm("supplied E = computed E", sup, &e.e, n),
                    "equal",
                    &["E"],
                );
            }
            true
        }
        (_, Some(Err(e))) => {
            rec.fail("e.exists", e.to_string(), &[]);
            false
        }
        _ => {
            rec.skip(
                "e.exists",
                &[
                    "algebra.nondegenerate",
                    cop_ids[0],
                    cop_ids[1],
                    cop_ids[2],
                    "coproduct.regular-maps",
                ],
            );
            false
        }
    };
    if !e_ok && p.e.is_some() {
        rec.skip("e.supplied", &["e.exists"]);
    }
    match &o.extension {
        Some(x) => {
            rec.outcome("delta.extension", x, "Δ extends to M(A) with Δ(1) = E", &["E"]);
        }
        None => rec.skip("delta.extension", &["e.exists"]),
    }
    match &o.e_conditions {
        Some(ec) => {
            rec.outcome(
                "e.commute",
                &ec.commute,
                "E commutes with Δ(A)(1⊗A) and (A⊗1)Δ(A)",
                &["E"],
            );
            rec.outcome(
                "e.delta-conditions",
                &first_err([ec.delta_first.clone(), ec.delta_second.clone(), ec.below.clone()]),
                "(ι⊗Δ)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1)",
                &["E"],
            );
        }
        None => rec.skip_all(&["e.commute", "e.delta-conditions"], &["e.exists"]),
    }
    match &o.g_maps {
        Some(Ok(_)) => rec.pass("g.solve", "unique solution", &["G1", "G2"]),
        Some(Err(e)) => rec.fail("g.solve", e.to_string(), &[]),
        None => rec.skip("g.solve", &["counit.solve", "coproduct.full", "e.exists"]),
    }
    match &o.g_laws {
        Some(l) => {
            rec.outcome(
                "g.laws",
                &first_err([
                    l.idempotent.clone(),
                    l.absorbed.clone(),
                    l.module.clone(),
                    l.commute.clone(),
                ]),
                "G1, G2 are idempotent module maps absorbed by T1, T2",
                &["G1", "G2"],
            );
        }
        None => rec.skip("g.laws", &["g.solve"]),
    }
    match &o.kernels {
        Some(k) => {
            rec.outcome("kernels.contained", &k.contained, "Ran(1 − G) ⊆ Ker T", &["G1", "G2"]);
            rec.outcome(
                "kernels.equal",
                &k.equal,
                "Ker T1 = Ran(1 − G1), Ker T2 = Ran(1 − G2)",
                &["G1", "G2"],
            );
        }
        None => rec.skip_all(&["kernels.contained", "kernels.equal"], &["g.solve"]),
    }
    match &o.factorization {
        Some((f1, f2)) => {
            let detail = match (f1.is_some(), f2.is_some()) {
                (true, true) => "factorizable".to_string(),
                (a, b) => {
                    let which: Vec<&str> = [(a, "G1"), (b, "G2")].iter().filter(|x| !x.0).map(|x| x.1).collect();
                    format!("not-factorizable ({})", which.join(", "))
                }
            };
            rec.pass("g.factorization", detail, &["G1", "G2"]);
        }
        None => rec.skip("g.factorization", &["g.solve"]),
    }
    o
}

struct AntipodeStage {
    r: GeneralizedInverses,
    w: Option<AntipodeWitness>,
    st: Option<SourceTarget>,
}

fn antipode_checks(
    rec: &mut Recorder<'_>,
    p: &Presentation,
    wit: &WmhaWitness,
    opts: &super::Options,
) -> Option<AntipodeStage> {
    let c = &p.coproduct;
    let n = c.n();
    let e = &wit.idempotent.e;
    let r = match build_generalized_inverses(c, e, &wit.g) {
        Ok(r) => {
            rec.pass("r.build", "T1R1 = E, R1T1 = G1, T2R2 = E, R2T2 = G2", &["R1", "R2"]);
            r
        }
        Err(err) => {
            rec.fail("r.build", err.to_string(), &[]);
            rec.skip_all(&ANTIPODE_IDS[1..], &["r.build"]);
            rec.skip_all(SOURCE_TARGET_IDS, &["r.build"]);
            return None;
        }
    };
    let laws = check_r_laws(c, &r);
    rec.outcome(
        "r.laws",
        &first_err([laws.module, laws.commute]),
        "module and comultiplication laws",
        &["R1", "R2"],
    );
    match dense_cross_check(c, e, &wit.g, &r, opts.dense_limit) {
        Some(o) => {
            rec.outcome("r.dense-cross-check", &o, "dense construction agrees", &["R1", "R2"]);
        }
        None => rec.not_applicable(
            "r.dense-cross-check",
            format!("dim A⊗A = {} exceeds the dense limit {}", n * n, opts.dense_limit),
        ),
    }
    let w = match compute_antipode(c, &wit.counit, &r, &wit.multipliers) {
        Ok(w) => {
            let detail = if w.s_matrix.is_some() {
                "S maps A into A"
            } else {
                "S maps A into M(A)"
            };
            rec.pass("antipode.compatibility", detail, &["S"]);
            w
        }
        Err(err) => {
            rec.fail("antipode.compatibility", err.to_string(), &[]);
            rec.skip_all(&ANTIPODE_IDS[4..], &["antipode.compatibility"]);
            if p.antipode.is_some() {
                rec.skip("antipode.supplied", &["antipode.compatibility"]);
            }
            rec.skip_all(SOURCE_TARGET_IDS, &["antipode.compatibility"]);
            return Some(AntipodeStage { r, w: None, st: None });
        }
    };
    let ids = check_antipode_identities(c, e, &r, &w);
    rec.outcome(
        "antipode.convolution",
        &ids.convolution,
        "m(S⊗ι)T1 and m(ι⊗S)T2 identities",
        &["S", "R1", "R2"],
    );
    rec.outcome(
        "antipode.remark-equivalence",
        &ids.remark,
        "equivalent forms agree",
        &["S"],
    );
    rec.outcome(
        "antipode.anti-multiplicative",
        &ids.anti_multiplicative,
        "S(ab) = S(b)S(a)",
        &["S"],
    );
    rec.outcome("antipode.nondegenerate", &ids.nondegenerate, "span equalities", &["S"]);
    rec.outcome(
        "antipode.anti-coalgebra",
        &ids.anti_coalgebra,
        "Δ(S(a)) = σ(S⊗S)Δ(a)",
        &["S"],
    );
    if let Some(sup) = &p.antipode {
        match &w.s_matrix {
            Some(s) => match s.first_difference(sup) {
                None => rec.pass("antipode.supplied", "supplied S equals the computed one", &["S"]),
                Some((i, j)) => rec.violation(
                    "antipode.supplied",
                    &Violation::new("supplied S = computed S (row, column)", vec![i, j]),
                    &["S"],
                ),
            },
            None => rec.fail("antipode.supplied", "computed S does not map A into A", &["S"]),
        }
    }
    let st = match compute_source_target(c, &wit.multipliers, &r, &w) {
        Ok(st) => {
            rec.pass(
                "source-target.compute",
                format!("dim ε_s(A) = {}, dim ε_t(A) = {}", st.image_s.dim(), st.image_t.dim()),
                &["source_image", "target_image"],
            );
            st
        }
        Err(v) => {
            rec.violation("source-target.compute", &v, &[]);
            rec.skip_all(&SOURCE_TARGET_IDS[1..], &["source-target.compute"]);
            return Some(AntipodeStage {
                r,
                w: Some(w),
                st: None,
            });
        }
    };
    let sc = check_source_target(c, &wit.multipliers, &wit.idempotent, &st);
    let refs = ["source_image", "target_image"];
    rec.outcome("source-target.legs", &sc.legs, "images are the legs of E", &refs);
    rec.outcome("source-target.coproduct", &sc.coproduct, "Δ on the images", &refs);
    rec.outcome(
        "source-target.subalgebras",
        &sc.subalgebras,
        "images are subalgebras",
        &refs,
    );
    rec.outcome("source-target.commute", &sc.commute, "images commute", &refs);
    rec.outcome("source-target.inclusions", &sc.inclusions, "inclusions hold", &refs);
    Some(AntipodeStage {
        r,
        w: Some(w),
        st: Some(st),
    })
}

struct Thm29Result {
    s: Vec<Multiplier>,
    s_matrix: Option<Matrix>,
    e: TensorMultiplier,
    r: Option<GeneralizedInverses>,
    passed: bool,
}

/// `Δ(1) = T1(1⊗1)` when `A` has a unit.
fn delta_one(c: &CoproductData) -> Option<SparseVec> {
    let unit = SparseVec::from_dense(&c.algebra().find_unit()?);
    Some(c.t1().apply(&kron_vec(&unit, &unit, c.n())))
}

fn thm29_checks(
    rec: &mut Recorder<'_>,
    p: &Presentation,
    wit: Option<&WmhaWitness>,
    w: Option<&AntipodeWitness>,
) -> Option<Thm29Result> {
    let c = &p.coproduct;
    let alg = c.algebra();
    let s = if let Some(m) = &p.antipode {
        Some(("input", AntipodeWitness::from_matrix(alg, m)))
    } else if let Some(m) = &p.model {
        Some(("oracle", AntipodeWitness::from_matrix(alg, &m.oracle.antipode)))
    } else {
        w.map(|w| ("def114", w.clone()))
    };
    let e = if let Some(e) = &p.e {
        Some(("input", e.clone()))
    } else if let Some(m) = &p.model {
        Some(("oracle", m.oracle.e.clone()))
    } else if let Some(d1) = delta_one(c) {
        Some(("Δ(1)", e_from_element(alg, &d1)))
    } else {
        wit.map(|w| ("def114", w.idempotent.e.clone()))
    };
    let (Some((s_src, s)), Some((e_src, e))) = (s, e) else {
        rec.skip_all(THM29_IDS, &["antipode.compatibility", "e.exists"]);
        return None;
    };
    let out = verify_via_antipode(c, &s.s, &e);
    let refs = ["S", "E"];
    rec.outcome(
        "thm29.prerequisites",
        &out.prerequisites,
        &format!("S from {s_src}, E from {e_src}"),
        &refs,
    );
    let r = match &out.r {
        Some(Ok(r)) => {
            rec.pass("thm29.r-maps", "R1, R2 built from S map into A⊗A", &["R1", "R2"]);
            Some(r.clone())
        }
        Some(Err(v)) => {
            rec.violation("thm29.r-maps", v, &[]);
            None
        }
        None => {
            rec.skip("thm29.r-maps", &["thm29.prerequisites"]);
            None
        }
    };
    match &out.convolution {
        Some(o) => {
            rec.outcome("thm29.convolution", o, "convolution identities", &refs);
        }
        None => rec.skip("thm29.convolution", &["thm29.r-maps"]),
    }
    match &out.ranges {
        Some(o) => {
            rec.outcome("thm29.ranges", o, "T1R1 = E, T2R2 = E", &refs);
        }
        None => rec.skip("thm29.ranges", &["thm29.r-maps"]),
    }
    match &out.e_conditions {
        Some(ec) => {
            rec.outcome(
                "thm29.e-conditions",
                &first_err([
                    ec.commute.clone(),
                    ec.delta_first.clone(),
                    ec.delta_second.clone(),
                    ec.below.clone(),
                ]),
                "E satisfies the comultiplication conditions",
                &["E"],
            );
        }
        None => rec.skip("thm29.e-conditions", &["thm29.ranges"]),
    }
    Some(Thm29Result {
        passed: out.passed(),
        s: s.s,
        s_matrix: s.s_matrix,
        e,
        r,
    })
}

fn paths_agree(c: &CoproductData, wit: &WmhaWitness, stage: &AntipodeStage, t: &Thm29Result) -> Outcome {
    let n = c.n();
    compare_tm("E from both paths", &wit.idempotent.e, &t.e, n)?;
    let w = stage.w.as_ref().expect("checked by caller");
    for (a, (x, y)) in w.s.iter().zip(&t.s).enumerate() {
        compare_mult("S from both paths", x, y, vec![a])?;
    }
    if let Some(r) = &t.r {
        compare_ops("R1 from both paths", &stage.r.r1, &r.r1, n, 2)?;
        compare_ops("R2 from both paths", &stage.r.r2, &r.r2, n, 2)?;
    }
    Ok(())
}

fn oracle_checks(
    rec: &mut Recorder<'_>,
    m: &GroupoidModel,
    wit: Option<&WmhaWitness>,
    w: Option<&AntipodeWitness>,
    suite: Option<&RegularSuite>,
) {
    let n = m.groupoid.len();
    let d = check_duality_pairing(&m.groupoid);
    if d.ok() {
        rec.pass(
            "oracle.pairing",
            "pairing intertwines products, coproducts and antipodes",
            &[],
        );
    } else {
        let v = d
            .product_coproduct
            .first()
            .map(|b| Violation::new("⟨fg, λ⟩ = ⟨f⊗g, Δ(λ)⟩", b.to_vec()))
            .or_else(|| {
                d.coproduct_product
                    .first()
                    .map(|b| Violation::new("⟨Δ(f), λ⊗μ⟩ = ⟨f, λμ⟩", b.to_vec()))
            })
            .unwrap_or_else(|| Violation::new("⟨S(f), λ⟩ = ⟨f, S(λ)⟩", d.antipode[0].to_vec()));
        rec.violation("oracle.pairing", &v, &[]);
    }
    let Some(wit) = wit else {
        rec.skip_all(ORACLE_IDS, &["e.exists", "g.solve"]);
        return;
    };
    let e = &wit.idempotent.e;
    rec.outcome(
        "oracle.e",
        &compare_tm("E = known E", e, &m.oracle.e, n),
        &format!("left action rank {}/{}", wit.idempotent.left_rank(), n * n),
        &["E"],
    );
    rec.outcome(
        "oracle.g",
        &compare_ops("G1 = known G1", &wit.g.g1, &m.oracle.g1, n, 2)
            .and_then(|_| compare_ops("G2 = known G2", &wit.g.g2, &m.oracle.g2, n, 2)),
        "equal",
        &["G1", "G2"],
    );
    match (0..n).find(|&i| wit.counit.values[i] != m.oracle.counit[i]) {
        None => rec.pass("oracle.counit", "equal", &["counit"]),
        Some(i) => rec.violation("oracle.counit", &Violation::new("ε = known ε", vec![i]), &["counit"]),
    }
    match w {
        Some(w) => match &w.s_matrix {
            Some(s) if *s == m.oracle.antipode => rec.pass("oracle.antipode", "S is inversion", &["S"]),
            Some(s) => {
                let (i, j) = s.first_difference(&m.oracle.antipode).expect("differs");
                rec.violation(
                    "oracle.antipode",
                    &Violation::new("S = inversion (row, column)", vec![i, j]),
                    &["S"],
                );
            }
            None => rec.fail("oracle.antipode", "S does not map A into A", &["S"]),
        },
        None => rec.skip("oracle.antipode", &["antipode.compatibility", "r.build"]),
    }
    match suite {
        Some(s) => {
            let f = &s.f;
            let o = [
                (&f.f1, &m.oracle.f1, "F1"),
                (&f.f2, &m.oracle.f2, "F2"),
                (&f.f3, &m.oracle.f3, "F3"),
                (&f.f4, &m.oracle.f4, "F4"),
            ]
            .into_iter()
            .try_for_each(|(x, y, name)| compare_tm(&format!("{name} = known {name}"), x, y, n));
            rec.outcome("oracle.f", &o, "F1–F4 equal", &["F1", "F2", "F3", "F4"]);
        }
        None => rec.skip("oracle.f", &["regular.criterion", "antipode.compatibility"]),
    }
}

fn image_doc(p: &Presentation, wit: &WmhaWitness, ms: &[Multiplier], image: &Subspace) -> ImageDoc {
    let c = &p.coproduct;
    let n = c.n();
    let labels = p.labels();
    let basis = SourceTarget::elements(&wit.multipliers, c, ms).map(|els| {
        Subspace::span(n, &els)
            .basis()
            .iter()
            .map(|v| v.iter().map(|(i, x)| (labels[*i].clone(), x.clone())).collect())
            .collect()
    });
    ImageDoc {
        dim: image.dim(),
        basis,
    }
}

fn antipode_doc(s_matrix: Option<&Matrix>, s: &[Multiplier]) -> AntipodeDoc {
    match s_matrix {
        Some(m) => AntipodeDoc {
            matrix: Some(matrix_doc(m)),
            multipliers: None,
        },
        None => AntipodeDoc {
            matrix: None,
            multipliers: Some(s.iter().map(multiplier_doc).collect()),
        },
    }
}

/// Runs the selected checks on a finite presentation.
pub fn run_finite(p: &Presentation, opts: &super::Options) -> FiniteRun {
    let c = &p.coproduct;
    let mut rec = Recorder::new(p.labels());
    let mut witnesses = Witnesses::default();
    let mut class = Classification::default();
    let mut computed = Computed::default();

    let outcome = opts.path.def114().then(|| def114_checks(&mut rec, p));
    let wit = outcome.as_ref().and_then(|o| o.witness());
    let stage = match &wit {
        Some(wit) => {
            witnesses.e = Some(tensor_doc(&wit.idempotent.e));
            witnesses.counit = Some(wit.counit.values.clone());
            witnesses.g1 = Some(op_doc(&wit.g.g1));
            witnesses.g2 = Some(op_doc(&wit.g.g2));
            computed.e = Some(wit.idempotent.e.clone());
            computed.counit = Some(wit.counit.values.clone());
            computed.g = Some(wit.g.clone());
            antipode_checks(&mut rec, p, wit, opts)
        }
        None => {
            if outcome.is_some() {
                rec.skip_all(ANTIPODE_IDS, &[]);
                rec.skip_all(SOURCE_TARGET_IDS, &[]);
            }
            None
        }
    };
    let w = stage.as_ref().and_then(|s| s.w.as_ref());
    if let Some(stage) = &stage {
        witnesses.r1 = Some(op_doc(&stage.r.r1));
        witnesses.r2 = Some(op_doc(&stage.r.r2));
        if let Some(w) = &stage.w {
            witnesses.antipode = Some(antipode_doc(w.s_matrix.as_ref(), &w.s));
            computed.antipode = w.s_matrix.clone();
        }
        if let (Some(wit), Some(st)) = (&wit, &stage.st) {
            witnesses.source_image = Some(image_doc(p, wit, &st.eps_s, &st.image_s));
            witnesses.target_image = Some(image_doc(p, wit, &st.eps_t, &st.image_t));
        }
    }

    let thm = opts
        .path
        .thm29()
        .then(|| thm29_checks(&mut rec, p, wit.as_ref(), w))
        .flatten();
    if opts.path == super::PathChoice::Thm29 {
        if let Some(t) = &thm {
            witnesses.e = Some(tensor_doc(&t.e));
            witnesses.antipode = Some(antipode_doc(t.s_matrix.as_ref(), &t.s));
            if let Some(r) = &t.r {
                witnesses.r1 = Some(op_doc(&r.r1));
                witnesses.r2 = Some(op_doc(&r.r2));
            }
            computed.e = Some(t.e.clone());
            computed.antipode = t.s_matrix.clone();
        }
    }
    if opts.path == super::PathChoice::Both {
        match (&wit, &stage, &thm) {
            (Some(wit), Some(stage), Some(t)) if stage.w.is_some() && t.passed => {
                rec.outcome(
                    "paths.agree",
                    &paths_agree(c, wit, stage, t),
                    "E, S, R1, R2 agree",
                    &["E", "S"],
                );
            }
            _ => rec.skip(
                "paths.agree",
                &["antipode.compatibility", "thm29.prerequisites", "thm29.e-conditions"],
            ),
        }
    }
    class.wmha = match (&outcome, &thm) {
        (Some(o), _) => o.passed() && w.is_some(),
        (None, Some(t)) => t.passed,
        (None, None) => false,
    };
    if let Some(o) = &outcome {
        class.unital = Some(o.algebra.unit.is_some());
        if let Some((f1, f2)) = &o.factorization {
            class.factorizable = Some(f1.is_some() && f2.is_some());
        }
    }

    // Consequences, which need the witnesses of the direct path.
    let (Some(o), Some(wit), Some(stage), Some(w)) = (&outcome, &wit, &stage, w) else {
        if outcome.is_some() {
            let after: &[&str] = &["antipode.compatibility"];
            rec.skip("regular.criterion", after);
            if p.star.is_some() {
                rec.skip_all(STAR_IDS, after);
            }
            rec.skip("weak-hopf.unital", after);
            rec.skip_all(APPENDIX_IDS, after);
        }
        if let Some(m) = &p.model {
            if outcome.is_some() {
                oracle_checks(&mut rec, m, wit.as_ref(), w, None);
            }
        }
        if !class.wmha {
            class
                .reasons
                .extend(rec.first_failure().map(|f| format!("failed check {f}")));
        }
        return FiniteRun {
            checks: rec.finish(),
            witnesses,
            classification: class,
            computed,
        };
    };

    let reg = classify_regular(c, wit, &stage.r, w);
    class.regular = Some(reg.regular);
    match (&reg.suite, p.star.is_some()) {
        (Some(_), _) => rec.pass("regular.criterion", "S is a bijection of A", &["S"]),
        (None, true) => rec.fail(
            "regular.criterion",
            format!(
                "a star structure requires a regular antipode, but {}",
                reg.reason.clone().unwrap_or_default()
            ),
            &["S"],
        ),
        (None, false) => rec.pass(
            "regular.criterion",
            format!("not regular: {}", reg.reason.clone().unwrap_or_default()),
            &["S"],
        ),
    }
    if let Some(r) = &reg.reason {
        class.reasons.push(format!("not regular: {r}"));
    }
    match &reg.suite {
        Some(suite) => {
            if let Some(t) = &suite.supplied_t34 {
                rec.outcome("regular.t34", t, "supplied T3, T4 equal those built from S", &["S"]);
            }
            rec.outcome(
                "regular.ranges",
                &suite.ranges,
                "ranges of T3, T4 and their inverses",
                &["S", "E"],
            );
            rec.outcome(
                "regular.opposite",
                &suite.opposite,
                "the opposite presentation verifies",
                &["S"],
            );
            rec.outcome("regular.flip", &suite.flip, "(S⊗S)E = σE", &["S", "E"]);
            match &suite.strong_anti_coalgebra {
                Some(x) => {
                    rec.outcome("regular.strong-anti-coalgebra", x, "(S⊗S)Δ(a) = σΔ(S(a))", &["S"]);
                }
                None => rec.skip("regular.strong-anti-coalgebra", &["regular.flip"]),
            }
            rec.outcome(
                "regular.factorization",
                &suite.factorization,
                "G1, G2 factor through F1, F2",
                &["F1", "F2", "G1", "G2"],
            );
            rec.outcome("regular.e13", &suite.e13, "four E13 relations", &["E"]);
            let (g1c, g2c) = match &o.factorization {
                Some((a, b)) => (a.as_deref(), b.as_deref()),
                None => (None, None),
            };
            rec.outcome(
                "regular.f-formulas",
                &check_f_formulas(c, wit, suite, g1c, g2c),
                "F1 = (ι⊗S)E, F2 = (S⊗ι)E",
                &["F1", "F2", "E", "S"],
            );
            rec.outcome("regular.cop", &suite.cop, "(A, Δ^cop) verifies", &["S"]);
            witnesses.f1 = Some(tensor_doc(&suite.f.f1));
            witnesses.f2 = Some(tensor_doc(&suite.f.f2));
            witnesses.f3 = Some(tensor_doc(&suite.f.f3));
            witnesses.f4 = Some(tensor_doc(&suite.f.f4));
        }
        None => rec.skip_all(REGULAR_IDS, &["regular.criterion"]),
    }

    if let Some(star) = &p.star {
        match &reg.suite {
            Some(suite) => {
                let sc = check_star_compat(c, wit, suite, star);
                rec.outcome("star.structure", &sc.structure, "involutive anti-automorphism", &[]);
                rec.outcome("star.delta", &sc.delta_star, "Δ(a*) = Δ(a)*", &[]);
                rec.outcome("star.involution", &sc.involution, "S(S(a)*)* = a", &["S"]);
                rec.outcome("star.e-self-adjoint", &sc.e_self_adjoint, "E* = E", &["E"]);
                rec.outcome(
                    "star.f-adjoints",
                    &sc.f_adjoints,
                    "F1* = F3, F2* = F4",
                    &["F1", "F2", "F3", "F4"],
                );
                class.star = Some(sc.ok());
            }
            None => {
                rec.skip_all(STAR_IDS, &["regular.criterion"]);
                class.star = Some(false);
            }
        }
    }

    match &stage.st {
        Some(st) => {
            let wh = classify_weak_hopf(c, wit, st);
            class.unital = Some(wh.unital);
            if wh.unital {
                rec.pass("weak-hopf.unital", "unital", &[]);
                let pairs = [
                    ("weak-hopf.e-delta-one", &wh.e_is_delta_one, "E = Δ(1)"),
                    (
                        "weak-hopf.counit-formulas",
                        &wh.counit_formulas,
                        "ε_t, ε_s through Δ(1) and ε",
                    ),
                    ("weak-hopf.counit-split", &wh.weak_mult, "ε(abc) = Σ ε(ab(2))ε(b(1)c)"),
                ];
                for (id, x, detail) in pairs {
                    if let Some(x) = x {
                        rec.outcome(id, x, detail, &["counit", "E"]);
                    }
                }
                if let Some(x) = &wh.weak_mult_op {
                    let law = "ε(abc) = Σ ε(ab(1))ε(b(2)c)";
                    match (x, reg.regular) {
                        (Err(v), false) => rec.pass(
                            "weak-hopf.counit-split-op",
                            format!("does not hold ({v}); not required without regularity"),
                            &["counit"],
                        ),
                        _ => {
                            rec.outcome("weak-hopf.counit-split-op", x, law, &["counit"]);
                        }
                    }
                }
                class.weak_hopf = Some(wh.weak_hopf);
                class.hopf = Some(wh.hopf);
            } else {
                rec.pass("weak-hopf.unital", "non-unital", &[]);
                rec.skip_all(WEAK_HOPF_IDS, &["weak-hopf.unital"]);
                class.weak_hopf = Some(false);
                class.hopf = Some(false);
            }
            if let Some(r) = &wh.reason {
                class.reasons.push(format!("not weak Hopf: {r}"));
            }
            let ap = check_appendix(c, wit, w, st, reg.suite.as_ref());
            rec.outcome("appendix.counit-leg", &ap.counit_leg, "Φ∘E = Φ, Ψ∘E = Ψ", &["S", "E"]);
            let opt = [
                (
                    "appendix.antipode-source-target",
                    &ap.antipode_source_target,
                    "S∘ε_t = ε_s∘S",
                ),
                ("appendix.leg-exchange", &ap.leg_exchange, "E(y⊗1) = E(1⊗S(y))"),
                ("appendix.e-prime", &ap.e_prime, "E' = E"),
                (
                    "appendix.opposite-round-trip",
                    &ap.opposite_round_trip,
                    "(A^op, Δ) round trip",
                ),
            ];
            for (id, x, detail) in opt {
                match x {
                    Some(x) => {
                        rec.outcome(id, x, detail, &["S", "E"]);
                    }
                    None => rec.skip(id, &["regular.criterion"]),
                }
            }
        }
        None => {
            rec.skip("weak-hopf.unital", &["source-target.compute"]);
            rec.skip_all(APPENDIX_IDS, &["source-target.compute"]);
        }
    }

    if let Some(m) = &p.model {
        oracle_checks(&mut rec, m, Some(wit), Some(w), reg.suite.as_ref());
    }
    FiniteRun {
        checks: rec.finish(),
        witnesses,
        classification: class,
        computed,
    }
}

fn report(
    input_digest: &str,
    opts: &super::Options,
    checks: Vec<CheckRecord>,
    witnesses: Witnesses,
    classification: Classification,
    windows: Vec<super::WindowRecord>,
    notes: BTreeMap<String, String>,
) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        input_digest: input_digest.to_string(),
        seed: opts.seed,
        verdict: verdict_of(&checks),
        paths: opts.path.names(),
        checks,
        witnesses,
        classification,
        windows,
        notes,
    }
}

/// Runs the selected pipeline(s) on a parsed input.
pub fn verify(subject: &Subject, input_digest: &str, opts: &super::Options) -> Report {
    match subject {
        Subject::Algebra(p) => {
            let run = run_finite(p, opts);
            report(
                input_digest,
                opts,
                run.checks,
                run.witnesses,
                run.classification,
                Vec::new(),
                BTreeMap::new(),
            )
        }
        Subject::Groupoid { groupoid, model } => {
            let diag = validate_groupoid(groupoid);
            let mut notes = BTreeMap::new();
            notes.insert("model".to_string(), model.to_string());
            notes.insert("morphisms".to_string(), groupoid.len().to_string());
            if let Some(v) = diag.violations.first() {
                let mut rec = Recorder::new(groupoid.ids());
                rec.fail("groupoid.valid", format!("{}: {}", v.axiom, v.witness.join(", ")), &[]);
                rec.skip("algebra.associative", &["groupoid.valid"]);
                let class = Classification {
                    reasons: vec!["failed check groupoid.valid".into()],
                    ..Default::default()
                };
                return report(
                    input_digest,
                    opts,
                    rec.finish(),
                    Witnesses::default(),
                    class,
                    Vec::new(),
                    notes,
                );
            }
            let p = Presentation::from_model(GroupoidModel::build(*model, groupoid));
            let mut run = run_finite(&p, opts);
            let mut rec = Recorder::new(groupoid.ids());
            rec.pass(
                "groupoid.valid",
                format!("{} morphisms, {} units", groupoid.len(), groupoid.units().len()),
                &[],
            );
            run.checks.extend(rec.checks);
            run.checks.sort_by_key(|c| registry::position(&c.id));
            report(
                input_digest,
                opts,
                run.checks,
                run.witnesses,
                run.classification,
                Vec::new(),
                notes,
            )
        }
        Subject::Lazy { groupoid, model } => {
            let inf = infinite_run(groupoid, *model, opts);
            let mut notes = BTreeMap::new();
            notes.insert("model".to_string(), model.to_string());
            notes.insert("windows".to_string(), opts.windows.to_string());
            report(
                input_digest,
                opts,
                inf.checks,
                Witnesses::default(),
                inf.classification,
                inf.windows,
                notes,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{preset, ModelKind};
    use crate::report::load_input;

    fn groupoid(name: &str, kind: ModelKind) -> Subject {
        Subject::from_preset(name, kind).unwrap()
    }

    #[test]
    fn pair2_passes_on_both_paths_in_both_models() {
        for kind in [ModelKind::Function, ModelKind::Convolution] {
            let r = verify(&groupoid("pair:2", kind), "x", &Options::default());
            let bad: Vec<_> = r.failures().map(|c| (&c.id, &c.detail)).collect();
            assert!(r.passed(), "{kind}: {bad:?}");
            assert_eq!(r.check("paths.agree").unwrap().status, Status::Pass);
            assert_eq!(r.check("oracle.e").unwrap().status, Status::Pass);
            assert!(r
                .checks
                .iter()
                .all(|c| c.status != Status::Skip || c.id == "r.dense-cross-check"));
            let cl = &r.classification;
            assert!(cl.wmha && cl.regular == Some(true) && cl.star == Some(true));
            assert_eq!((cl.weak_hopf, cl.hopf), (Some(true), Some(false)));
        }
    }

    #[test]
    fn checks_follow_registry_order() {
        let r = verify(&groupoid("pair:2", ModelKind::Function), "x", &Options::default());
        let pos: Vec<_> = r.checks.iter().map(|c| registry::position(&c.id).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_paths() {
        for path in [PathChoice::Def114, PathChoice::Thm29] {
            let opts = Options {
                path,
                ..Default::default()
            };
            let r = verify(&groupoid("group:cyclic:2", ModelKind::Convolution), "x", &opts);
            assert!(r.passed(), "{path}");
            assert_eq!(r.check("paths.agree"), None);
            assert_eq!(r.check("thm29.ranges").is_some(), path == PathChoice::Thm29);
            assert!(r.witnesses.e.is_some() && r.witnesses.antipode.is_some());
        }
    }

    #[test]
    fn witnesses_of_convolution_model() {
        let r = verify(&groupoid("pair:2", ModelKind::Convolution), "x", &Options::default());
        let img = r.witnesses.source_image.as_ref().unwrap();
        assert_eq!(img.dim, 2);
        let labels: Vec<&str> = img.basis.as_ref().unwrap().iter().map(|v| v[0].0.as_str()).collect();
        assert_eq!(labels, ["(0,0)", "(1,1)"]);
        let e = verify(
            &groupoid("group:cyclic:2", ModelKind::Convolution),
            "x",
            &Options::default(),
        );
        let e = e.witnesses.e.unwrap();
        assert_eq!(e.left.entries.len(), 4);
        assert!(e.left.entries.iter().all(|x| x.0 == x.1 && x.2 == "1"));
    }

    #[test]
    fn invalid_groupoid_is_reported() {
        let doc = br#"{"groupoid": {"morphisms": ["a", "b"], "source": {"a": "a", "b": "a"},
            "target": {"a": "a", "b": "a"}, "compose": [["a","a","a"]], "inverse": {"a": "a", "b": "b"}},
            "model": "function"}"#;
        let r = verify(&load_input(doc).unwrap(), "x", &Options::default());
        assert!(!r.passed());
        assert_eq!(r.checks[0].id, "groupoid.valid");
        assert_eq!(r.checks[1].prerequisite.as_deref(), Some("groupoid.valid"));
    }

    #[test]
    fn reports_are_deterministic() {
        let s = groupoid("bundle:cyclic:2:2", ModelKind::Function);
        let a = verify(&s, "x", &Options::default()).to_json();
        let b = verify(&s, "x", &Options::default()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn union_preset_passes() {
        let g = preset("pair:2+group:cyclic:2").unwrap().finite().unwrap();
        let s = Subject::Groupoid {
            groupoid: g,
            model: ModelKind::Convolution,
        };
        assert!(verify(&s, "x", &Options::default()).passed());
    }
}
