use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coalg::Violation;
use crate::exactla::{Scalar, SparseOp, SparseVec};
use crate::groupoid::{FiniteGroupoid, GroupoidModel, LazyGroupoid, LazyKind, ModelKind, Morphism};

use super::pipeline::{run_finite, Computed, FiniteRun, Recorder};
use super::{
    verdict_of, CheckRecord, Classification, Options, Presentation, Report, Status, WindowRecord, Witnesses,
    SCHEMA_VERSION, TOOL_VERSION,
};

pub(crate) struct InfiniteRun {
    pub checks: Vec<CheckRecord>,
    pub windows: Vec<WindowRecord>,
    pub classification: Classification,
}

/// Number of sampled element sets for the local unit check.
const LOCAL_UNIT_SAMPLES: usize = 6;

/// Local unit on `window(k)` for the elements supported over the units
/// with indices in `units`: the indicator of the morphisms between those
/// units (function model) or the sum of those units (convolution model).
pub fn local_unit(g: &LazyGroupoid, model: ModelKind, units: &BTreeSet<usize>, k: usize) -> Vec<Scalar> {
    let inside = |p: Morphism| units.contains(&g.unit_index(g.source(p))) && units.contains(&g.unit_index(g.target(p)));
    g.window_morphisms(k)
        .into_iter()
        .map(|p| {
            let keep = match model {
                ModelKind::Function => inside(p),
                ModelKind::Convolution => g.source(p) == p && inside(p),
            };
            Scalar::from_int(keep as i64)
        })
        .collect()
}

struct Window {
    k: usize,
    groupoid: FiniteGroupoid,
    run: FiniteRun,
}

fn run_window(g: &LazyGroupoid, model: ModelKind, k: usize, opts: &Options) -> Result<Window, String> {
    let w = g.window(k).map_err(|e| e.to_string())?;
    let p = Presentation::from_model(GroupoidModel::build(model, &w));
    Ok(Window {
        k,
        run: run_finite(&p, opts),
        groupoid: w,
    })
}

/// Maps a column of an operator on `A_k⊗A_k` into `A_{k'}⊗A_{k'}`.
fn embed2(v: &SparseVec, emb: &[usize], n: usize, big: usize) -> SparseVec {
    v.map_indices(|x| emb[x / n] * big + emb[x % n])
}

/// Witnesses of the smaller window are restrictions of those of the larger.
fn restriction(small: &Computed, big: &Computed, emb: &[usize], nb: usize) -> Result<(), Violation> {
    let n = emb.len();
    let missing = || Violation::new("both windows have witnesses", vec![]);
    let (ce, be) = (
        small.counit.as_ref().ok_or_else(missing)?,
        big.counit.as_ref().ok_or_else(missing)?,
    );
    if let Some(p) = (0..n).find(|&p| ce[p] != be[emb[p]]) {
        return Err(Violation::new("ε restricts", vec![p]));
    }
    let (cs, bs) = (
        small.antipode.as_ref().ok_or_else(missing)?,
        big.antipode.as_ref().ok_or_else(missing)?,
    );
    for p in 0..n {
        let col = bs.col_sparse(emb[p]);
        if col != cs.col_sparse(p).map_indices(|i| emb[i]) {
            return Err(Violation::new("S restricts", vec![p]));
        }
    }
    let ops = |c: &Computed| -> Option<Vec<SparseOp>> {
        let e = c.e.as_ref()?;
        let g = c.g.as_ref()?;
        Some(vec![e.left.clone(), e.right.clone(), g.g1.clone(), g.g2.clone()])
    };
    let (so, bo) = (ops(small).ok_or_else(missing)?, ops(big).ok_or_else(missing)?);
    for (name, (s, b)) in ["E (left)", "E (right)", "G1", "G2"].iter().zip(so.iter().zip(&bo)) {
        for x in 0..n * n {
            if *b.col(emb[x / n] * nb + emb[x % n]) != embed2(s.col(x), emb, n, nb) {
                return Err(Violation::new(format!("{name} restricts"), vec![x / n, x % n]));
            }
        }
    }
    Ok(())
}

fn is_unit_on(m: &GroupoidModel, u: &SparseVec) -> Option<usize> {
    let alg = m.coproduct.algebra();
    (0..alg.dim()).find(|&b| {
        let e = SparseVec::unit(b);
        alg.mul_sparse(u, &e) != e || alg.mul_sparse(&e, u) != e
    })
}

/// Unit of each window equals the known unit, is not a unit of the next
/// window, and the unit of the next window is not supported in this one.
fn non_unital(g: &LazyGroupoid, model: ModelKind, k_max: usize) -> Result<String, Violation> {
    let mut sizes = Vec::new();
    for k in 1..=k_max {
        let small = GroupoidModel::build(model, &g.window(k).expect("preset windows are valid"));
        let big = GroupoidModel::build(model, &g.window(k + 1).expect("preset windows are valid"));
        let emb = g.embedding(k, k + 1);
        let u = small
            .coproduct
            .algebra()
            .find_unit()
            .ok_or_else(|| Violation::new("window has a unit", vec![k]))?;
        if u != small.oracle.unit {
            return Err(Violation::new("window unit is the known unit", vec![k]));
        }
        let ub = SparseVec::from_dense(&u).map_indices(|i| emb[i]);
        if is_unit_on(&big, &ub).is_none() {
            return Err(Violation::new("unit of window k is not a unit of window k+1", vec![k]));
        }
        let next = SparseVec::from_dense(&big.oracle.unit);
        let inside: BTreeSet<usize> = emb.iter().copied().collect();
        if next.iter().all(|(i, _)| inside.contains(i)) {
            return Err(Violation::new("unit of window k+1 leaves window k", vec![k]));
        }
        sizes.push(ub.nnz());
        if k == k_max {
            sizes.push(next.nnz());
        }
    }
    Ok(format!(
        "window units have supports {sizes:?}; each is not a unit of the next window, so no finitely supported element is a unit"
    ))
}

/// Samples finite element sets and verifies the local unit exhibited for
/// each in a window strictly larger than their support.
fn local_units(g: &LazyGroupoid, model: ModelKind, k_max: usize, seed: u64) -> Result<String, Violation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = g.window_morphisms(k_max.max(1) + 1);
    let mut shown = Vec::new();
    for _ in 0..LOCAL_UNIT_SAMPLES {
        let count = rng.gen_range(1..=3);
        let elements: Vec<Vec<(Morphism, i64)>> = (0..count)
            .map(|_| {
                let terms = rng.gen_range(1..=2);
                pool.choose_multiple(&mut rng, terms)
                    .map(|&p| (p, rng.gen_range(1..=3)))
                    .collect()
            })
            .collect();
        let units: BTreeSet<usize> = elements
            .iter()
            .flatten()
            .flat_map(|&(p, _)| [g.unit_index(g.source(p)), g.unit_index(g.target(p))])
            .collect();
        let k = elements
            .iter()
            .flatten()
            .map(|&(p, _)| g.window_of(p))
            .max()
            .unwrap_or(1)
            + 1;
        let w = g.window(k).expect("valid");
        let m = GroupoidModel::build(model, &w);
        let alg = m.coproduct.algebra();
        let ms = g.window_morphisms(k);
        let pos = |p: Morphism| ms.iter().position(|&x| x == p).expect("in window");
        let e = SparseVec::from_dense(&local_unit(g, model, &units, k));
        for el in &elements {
            let a = SparseVec::from_entries(el.iter().map(|&(p, c)| (pos(p), Scalar::from_int(c))));
            if alg.mul_sparse(&e, &a) != a || alg.mul_sparse(&a, &e) != a {
                let basis: Vec<usize> = el.iter().map(|&(p, _)| pos(p)).collect();
                return Err(Violation::new("e a = a e = a", basis));
            }
        }
        if is_unit_on(&m, &e).is_none() {
            return Err(Violation::new("local unit is not a unit of the larger window", vec![k]));
        }
        let ids: Vec<String> = elements.iter().flatten().map(|&(p, _)| g.id(p)).collect();
        shown.push(format!("{{{}}} → units {:?}", ids.join(", "), units));
    }
    Ok(shown.join("; "))
}

fn window_classification(ws: &[Window]) -> Classification {
    let all = |f: &dyn Fn(&Classification) -> Option<bool>| -> Option<bool> {
        ws.iter()
            .map(|w| f(&w.run.classification))
            .collect::<Option<Vec<bool>>>()
            .map(|v| v.iter().all(|b| *b))
    };
    Classification {
        wmha: !ws.is_empty() && ws.iter().all(|w| verdict_of(&w.run.checks) == Status::Pass),
        unital: Some(false),
        regular: all(&|c| c.regular),
        star: all(&|c| c.star),
        weak_hopf: Some(false),
        hopf: Some(false),
        factorizable: all(&|c| c.factorizable),
        reasons: vec!["non-unital: the unit would have infinite support".into()],
    }
}

pub(crate) fn infinite_run(g: &LazyGroupoid, model: ModelKind, opts: &Options) -> InfiniteRun {
    let k_max = opts.windows;
    if k_max == 0 {
        return InfiniteRun {
            checks: Vec::new(),
            windows: Vec::new(),
            classification: Classification {
                wmha: true,
                ..Default::default()
            },
        };
    }
    let results: Vec<Result<Window, String>> = (1..=k_max)
        .into_par_iter()
        .map(|k| run_window(g, model, k, opts))
        .collect();
    let labels: Vec<String> = g.window_morphisms(k_max + 1).into_iter().map(|p| g.id(p)).collect();
    let mut rec = Recorder::new(&labels);
    let mut windows = Vec::new();
    let mut ok = Vec::new();
    let mut first_bad = None;
    for (k, r) in (1..=k_max).zip(results) {
        match r {
            Ok(w) => {
                let verdict = verdict_of(&w.run.checks);
                if verdict == Status::Fail && first_bad.is_none() {
                    let id = w
                        .run
                        .checks
                        .iter()
                        .find(|c| c.status == Status::Fail)
                        .map(|c| c.id.clone());
                    first_bad = Some(format!("window {k} fails {}", id.unwrap_or_default()));
                }
                windows.push(WindowRecord {
                    k,
                    morphisms: w.groupoid.len(),
                    verdict,
                    classification: w.run.classification.clone(),
                    checks: w.run.checks.clone(),
                });
                ok.push(w);
            }
            Err(e) => {
                first_bad.get_or_insert(format!("window {k}: {e}"));
            }
        }
    }
    match &first_bad {
        None => rec.pass("infinite.windows", format!("windows 1..={k_max} pass"), &[]),
        Some(msg) => rec.fail("infinite.windows", msg.clone(), &[]),
    }
    if ok.len() < 2 {
        rec.not_applicable("infinite.restriction", "needs at least two windows");
    } else {
        let mut res = Ok(());
        for pair in ok.windows(2) {
            let (s, b) = (&pair[0], &pair[1]);
            let emb = g.embedding(s.k, b.k);
            if let Err(v) = restriction(&s.run.computed, &b.run.computed, &emb, b.groupoid.len()) {
                res = Err(Violation::new(
                    format!("{} from window {} to {}", v.law, s.k, b.k),
                    v.basis,
                ));
                break;
            }
        }
        rec.outcome(
            "infinite.restriction",
            &res,
            "E, G1, G2, ε, S of each window restrict from the next",
            &[],
        );
    }
    match non_unital(g, model, k_max) {
        Ok(d) => rec.pass("infinite.non-unital", d, &[]),
        Err(v) => rec.violation("infinite.non-unital", &v, &[]),
    }
    match local_units(g, model, k_max, opts.seed) {
        Ok(d) => rec.pass("infinite.local-units", d, &[]),
        Err(v) => rec.violation("infinite.local-units", &v, &[]),
    }
    InfiniteRun {
        classification: window_classification(&ok),
        checks: rec.finish(),
        windows,
    }
}

fn lazy_name(g: &LazyGroupoid) -> String {
    match g.kind {
        LazyKind::Pair => "pair:inf".into(),
        LazyKind::CyclicBundle(n) => format!("bundle:cyclic:{n}:inf"),
    }
}

/// Verifies windows `1..=k_max` of an infinite groupoid model.
pub fn sample_infinite(g: &LazyGroupoid, model: ModelKind, k_max: usize, seed: u64) -> Report {
    let opts = Options {
        windows: k_max,
        seed,
        ..Default::default()
    };
    let run = infinite_run(g, model, &opts);
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        input_digest: super::preset_digest(&lazy_name(g), model.as_str()),
        seed,
        verdict: verdict_of(&run.checks),
        paths: opts.path.names(),
        checks: run.checks,
        witnesses: Witnesses::default(),
        classification: run.classification,
        windows: run.windows,
        notes: BTreeMap::from([("windows".to_string(), k_max.to_string())]),
    }
}
