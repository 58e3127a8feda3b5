//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

#[path = "../../core/tests/support/triples.rs"]
mod triples;

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use wmha::exactla::{generalized_inverse, generalized_inverse_by_constraints};
use wmha::groupoid::{preset, GroupoidModel, ModelKind};
use wmha::report::{
    export_algebra, matrix_doc, op_doc, parse_op, sample_infinite, verify, InputDocument, Options, PathChoice, Report,
    Status, Subject,
};

const MODELS: [ModelKind; 2] = [ModelKind::Function, ModelKind::Convolution];
const FINITE: [&str; 6] = [
    "pair:2",
    "pair:3",
    "group:cyclic:2",
    "group:cyclic:3",
    "group:cyclic:4",
    "bundle:cyclic:2:3",
];
const WEAK_HOPF_FILE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/weak_hopf_pair2.json");

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Example {
    name: &'static str,
    kind: ModelKind,
    report: Report,
    elapsed: Duration,
}

fn wmha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmha"))
        .args(args)
        .output()
        .expect("wmha runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require(ex: &Example, prefixes: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for c in &ex.report.checks {
        if prefixes.iter().any(|p| c.id.starts_with(p)) {
            ensure(c.status == Status::Pass, || {
                format!("{} {}: {} is {:?} ({})", ex.name, ex.kind, c.id, c.status, c.detail)
            })?;
            n += 1;
        }
    }
    ensure(n > 0, || format!("{} {}: no {prefixes:?} checks", ex.name, ex.kind))?;
    Ok(n)
}

fn run_examples() -> Vec<Example> {
    let mut out = Vec::new();
    for name in FINITE {
        for kind in MODELS {
            let start = Instant::now();
            let report = verify(
                &Subject::from_preset(name, kind).unwrap(),
                "sha256:0",
                &Options::default(),
            );
            out.push(Example {
                name,
                kind,
                report,
                elapsed: start.elapsed(),
            });
        }
    }
    out
}

fn e_rank(r: &Report) -> usize {
    let e = &r.witnesses.e.as_ref().expect("E witness").left;
    parse_op(e.rows, e.cols, &e.entries).unwrap().to_matrix().rank()
}

fn oracle_reproduction(examples: &[Example]) -> Outcome {
    for ex in examples {
        let r = &ex.report;
        ensure(r.passed(), || {
            format!("{} {} fails {:?}", ex.name, ex.kind, r.failures().next())
        })?;
        require(ex, &["oracle."])?;
        let g = preset(ex.name).unwrap().finite().unwrap();
        let oracle = GroupoidModel::build(ex.kind, &g).oracle;
        let w = &r.witnesses;
        let e = w.e.as_ref().ok_or("no E")?;
        ensure(
            e.left == op_doc(&oracle.e.left) && e.right == op_doc(&oracle.e.right),
            || format!("{} {}: E differs from the oracle", ex.name, ex.kind),
        )?;
        ensure(w.g1.as_ref() == Some(&op_doc(&oracle.g1)), || {
            format!("{} {}: G1", ex.name, ex.kind)
        })?;
        ensure(w.g2.as_ref() == Some(&op_doc(&oracle.g2)), || {
            format!("{} {}: G2", ex.name, ex.kind)
        })?;
        ensure(w.counit.as_ref() == Some(&oracle.counit), || {
            format!("{} {}: counit", ex.name, ex.kind)
        })?;
        let s = w.antipode.as_ref().and_then(|s| s.matrix.as_ref());
        ensure(s == Some(&matrix_doc(&oracle.antipode)), || {
            format!("{} {}: S", ex.name, ex.kind)
        })?;
    }
    let rank = |name: &str| {
        let ex = examples
            .iter()
            .find(|x| x.name == name && x.kind == ModelKind::Function)
            .unwrap();
        (e_rank(&ex.report), ex.report.witnesses.e.as_ref().unwrap().left.rows)
    };
    let (r2, r3) = (rank("pair:2"), rank("pair:3"));
    ensure(r2 == (8, 16) && r3 == (27, 81), || format!("E ranks {r2:?} {r3:?}"))?;
    let slowest = examples
        .iter()
        .filter(|x| x.name == "pair:3")
        .map(|x| x.elapsed)
        .max()
        .unwrap();
    ensure(slowest < Duration::from_secs(300), || {
        format!("pair:3 took {slowest:?}")
    })?;
    Ok(format!(
        "{} examples match the oracle; E rank 8/16 and 27/81; pair:3 in {:.1}s",
        examples.len(),
        slowest.as_secs_f64()
    ))
}

fn path_equivalence(examples: &[Example]) -> Outcome {
    for ex in examples {
        require(ex, &["paths.agree"])?;
        let subject = Subject::from_preset(ex.name, ex.kind).unwrap();
        let single = |path| {
            verify(
                &subject,
                "sha256:0",
                &Options {
                    path,
                    ..Default::default()
                },
            )
        };
        let (d, t) = (single(PathChoice::Def114), single(PathChoice::Thm29));
        ensure(d.passed() && t.passed(), || {
            format!("{} {}: a single path fails", ex.name, ex.kind)
        })?;
        ensure(d.witnesses.e.is_some() && d.witnesses.e == t.witnesses.e, || {
            format!("{} {}: E differs between paths", ex.name, ex.kind)
        })?;
        ensure(
            d.witnesses.antipode.is_some() && d.witnesses.antipode == t.witnesses.antipode,
            || format!("{} {}: S differs between paths", ex.name, ex.kind),
        )?;
    }
    Ok(format!(
        "{} examples give identical E and S on both routes",
        examples.len()
    ))
}

fn suite(examples: &[Example], prefixes: &[&str]) -> Outcome {
    let mut n = 0;
    for ex in examples {
        n += require(ex, prefixes)?;
    }
    Ok(format!("{n} checks pass over {} examples", examples.len()))
}

fn load_doc(path: &str) -> InputDocument {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn weak_hopf(examples: &[Example]) -> Outcome {
    let mut n = 0;
    for ex in examples {
        if ex.report.classification.unital == Some(true) && ex.report.classification.regular == Some(true) {
            require(ex, &["weak-hopf.counit-split", "weak-hopf.counit-split-op"])?;
            n += 1;
        }
    }
    ensure(n == examples.len(), || format!("only {n} unital regular examples"))?;
    let doc = load_doc(WEAK_HOPF_FILE);
    let given = doc.coproduct.as_ref().and_then(|c| c.delta.as_ref()).is_some()
        && doc.counit.is_some()
        && doc.antipode.is_some();
    ensure(given && doc.e.is_none(), || {
        "data file is not a Δ, ε, S presentation without E".into()
    })?;
    let out = wmha(&["verify", WEAK_HOPF_FILE, "--path", "thm29"]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), || {
        format!("thm29 route exit {:?}: {text}", out.status.code())
    })?;
    let out = wmha(&["classify", WEAK_HOPF_FILE]);
    let line = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0) && line.contains("weak_hopf ✓"), || {
        format!("classify: {line}")
    })?;
    Ok(format!(
        "weak multiplicativity of the counit on {n} examples; data file passes the antipode route: {}",
        line.trim()
    ))
}

fn generalized_inverses() -> Outcome {
    let config = Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let cases = std::cell::Cell::new(0);
    let result = runner.run(&triples::triples(), |x| {
        cases.set(cases.get() + 1);
        let r = generalized_inverse(&x.t, &x.e, &x.f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let ok = x.t.mul(&r) == x.e
            && r.mul(&x.t) == x.f
            && x.t.mul(&r).mul(&x.t) == x.t
            && r.mul(&x.t).mul(&r) == r
            && r.rank() == x.rank;
        if !ok {
            return Err(TestCaseError::fail("identity violated"));
        }
        let dual =
            generalized_inverse_by_constraints(&x.t, &x.e, &x.f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if dual != r {
            return Err(TestCaseError::fail("dual construction differs"));
        }
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    Ok(format!(
        "{} random triples, four identities and dual construction agree",
        cases.get()
    ))
}

#[derive(Clone, Copy, Debug)]
enum Target {
    Structure,
    T1,
    E,
    S,
}

fn mutate(doc: &mut InputDocument, target: Target, k: usize) -> String {
    let bump = |re: &mut String| {
        *re = if re == "3" { "5".into() } else { "3".into() };
    };
    match target {
        Target::Structure => {
            let s = &mut doc.algebra.as_mut().unwrap().structure;
            let i = k % s.len();
            bump(&mut s[i].3);
            format!("structure[{i}]")
        }
        Target::T1 => {
            let t = doc.coproduct.as_mut().unwrap().t1.as_mut().unwrap();
            let i = k % t.len();
            bump(&mut t[i].2);
            format!("T1[{i}]")
        }
        Target::E => {
            let e = &mut doc.e.as_mut().unwrap().left;
            let i = k % e.len();
            bump(&mut e[i].2);
            format!("E.left[{i}]")
        }
        Target::S => {
            let s = doc.antipode.as_mut().unwrap();
            let i = k % s.len();
            bump(&mut s[i].2);
            format!("S[{i}]")
        }
    }
}

fn mutation_sensitivity() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let g = preset("pair:2").unwrap().finite().unwrap();
    let targets = [Target::Structure, Target::T1, Target::E, Target::S];
    let mut named = Vec::new();
    for m in 0..20 {
        let kind = MODELS[m % 2];
        let target = targets[m / 5];
        let mut doc = export_algebra(&GroupoidModel::build(kind, &g), false);
        let what = mutate(&mut doc, target, 3 * m + 1);
        let path = dir.path().join(format!("mutant{m}.json"));
        std::fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
        let out = wmha(&["verify", path.to_str().unwrap()]);
        let text = String::from_utf8_lossy(&out.stdout);
        let check = text
            .lines()
            .find_map(|l| l.strip_prefix("first failing check: "))
            .map(str::to_string);
        ensure(out.status.code() == Some(1) && check.is_some(), || {
            format!("{kind} {what}: exit {:?}, output {text}", out.status.code())
        })?;
        named.push(check.unwrap());
    }
    named.sort();
    named.dedup();
    Ok(format!("20 mutants exit 1; first failures named: {}", named.join(", ")))
}

fn infinite_models() -> Outcome {
    let mut parts = Vec::new();
    for name in ["pair:inf", "bundle:cyclic:2:inf"] {
        let g = preset(name).unwrap().lazy().unwrap();
        for kind in MODELS {
            let r = sample_infinite(&g, kind, 4, 11);
            ensure(r.windows.len() == 4, || {
                format!("{name} {kind}: {} windows", r.windows.len())
            })?;
            for w in &r.windows {
                ensure(w.verdict == Status::Pass, || {
                    format!("{name} {kind}: window {} fails", w.k)
                })?;
            }
            for id in [
                "infinite.windows",
                "infinite.restriction",
                "infinite.non-unital",
                "infinite.local-units",
            ] {
                let c = r.check(id).ok_or_else(|| format!("{name} {kind}: no {id}"))?;
                ensure(c.status == Status::Pass, || {
                    format!("{name} {kind}: {id} {:?} {}", c.status, c.detail)
                })?;
            }
            ensure(
                r.classification.weak_hopf == Some(false) && r.classification.wmha,
                || format!("{name} {kind}: {}", r.classification.one_line()),
            )?;
            parts.push(format!("{name}/{kind}"));
        }
    }
    Ok(format!("windows 1..4 pass for {}", parts.join(", ")))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: [&[&str]; 3] = [
        &["--preset", "pair:2", "--model", "convolution"],
        &["--preset", "bundle:cyclic:2:3", "--seed", "5"],
        &["--preset", "bundle:cyclic:2:inf", "--windows", "3", "--seed", "9"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("r{i}_{run}.json"));
            let mut full = vec!["verify"];
            full.extend_from_slice(args);
            full.extend_from_slice(&["--report", path.to_str().unwrap()]);
            let out = wmha(&full);
            ensure(out.status.code() == Some(0), || {
                format!("{args:?} exit {:?}", out.status.code())
            })?;
            bytes.push(std::fs::read(&path).unwrap());
        }
        ensure(bytes[0] == bytes[1], || format!("{args:?}: reports differ"))?;
    }
    let a = wmha(&["witnesses", "--preset", "pair:3"]);
    let b = wmha(&["witnesses", "--preset", "pair:3"]);
    ensure(a.status.success() && a.stdout == b.stdout, || {
        "witness output differs".into()
    })?;
    Ok(format!(
        "{} report pairs and witness output byte-identical",
        cases.len()
    ))
}

fn main() {
    assert!(Path::new(WEAK_HOPF_FILE).exists());
    let examples = run_examples();
    let criteria: Vec<Criterion> = vec![
        (
            "groupoid oracle reproduction",
            Box::new(|| oracle_reproduction(&examples)),
        ),
        ("path equivalence", Box::new(|| path_equivalence(&examples))),
        (
            "antipode identity suite",
            Box::new(|| suite(&examples, &["antipode.", "source-target."])),
        ),
        ("regularity suite", Box::new(|| suite(&examples, &["regular."]))),
        ("star suite", Box::new(|| suite(&examples, &["star."]))),
        ("weak-Hopf equivalence", Box::new(|| weak_hopf(&examples))),
        ("appendix suite", Box::new(|| suite(&examples, &["appendix."]))),
        ("generalized-inverse unit suite", Box::new(generalized_inverses)),
        ("mutation sensitivity", Box::new(mutation_sensitivity)),
        ("infinite-model suite", Box::new(infinite_models)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (mark, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{mark} {:>2} {name}: {detail} [{:.1}s]",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
