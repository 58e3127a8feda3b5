use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalg::{CoproductData, TensorMultiplier};
use crate::exactla::{Matrix, Scalar};
use crate::fdalg::{Algebra, StarStructure};
use crate::groupoid::{
    preset, FiniteGroupoid, GroupoidError, GroupoidFile, GroupoidModel, LazyGroupoid, ModelKind, Preset,
};

use super::encode::{matrix_doc, op_doc, parse_matrix, parse_op, Entry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

fn shape(msg: impl Into<String>) -> InputError {
    InputError::Shape(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `[i, j, k, re, im]`: coefficient of `e_k` in `e_i e_j`.
    pub structure: Vec<(usize, usize, usize, String, String)>,
}

/// Either the canonical maps or `Δ(e_p)` as columns of `A⊗A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductDoc {
    #[serde(rename = "T1", default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<Vec<Entry>>,
    #[serde(rename = "T2", default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<Vec<Entry>>,
    #[serde(rename = "T3", default, skip_serializing_if = "Option::is_none")]
    pub t3: Option<Vec<Entry>>,
    #[serde(rename = "T4", default, skip_serializing_if = "Option::is_none")]
    pub t4: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EDoc {
    pub left: Vec<Entry>,
    pub right: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidSpec {
    Preset { preset: String },
    File(GroupoidFile),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<CoproductDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Entry>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<EDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groupoid: Option<GroupoidSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
}

/// A finite algebra with coproduct and the optional supplied data.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub coproduct: CoproductData,
    pub counit: Option<Vec<Scalar>>,
    pub star: Option<StarStructure>,
    pub antipode: Option<Matrix>,
    pub e: Option<TensorMultiplier>,
    /// Groupoid model with known answers.
    pub model: Option<GroupoidModel>,
}

impl Presentation {
    pub fn from_model(m: GroupoidModel) -> Self {
        Presentation {
            coproduct: m.coproduct.clone(),
            counit: None,
            star: Some(m.star.clone()),
            antipode: None,
            e: None,
            model: Some(m),
        }
    }

    pub fn labels(&self) -> &[String] {
        self.coproduct.algebra().labels()
    }
}

#[derive(Clone, Debug)]
pub enum Subject {
    Algebra(Box<Presentation>),
    Groupoid { groupoid: FiniteGroupoid, model: ModelKind },
    Lazy { groupoid: LazyGroupoid, model: ModelKind },
}

impl Subject {
    pub fn from_preset(name: &str, model: ModelKind) -> Result<Subject, InputError> {
        Ok(match preset(name)? {
            Preset::Finite(groupoid) => Subject::Groupoid { groupoid, model },
            Preset::Lazy(groupoid) => Subject::Lazy { groupoid, model },
        })
    }

    pub fn from_document(doc: &InputDocument) -> Result<Subject, InputError> {
        match (&doc.groupoid, &doc.algebra) {
            (Some(_), Some(_)) => Err(shape("both \"groupoid\" and \"algebra\" are present")),
            (None, None) => Err(shape("expected \"groupoid\" or \"algebra\"")),
            (Some(spec), None) => groupoid_subject(doc, spec),
            (None, Some(alg)) => algebra_subject(doc, alg),
        }
    }
}

fn groupoid_subject(doc: &InputDocument, spec: &GroupoidSpec) -> Result<Subject, InputError> {
    let extra = [
        ("coproduct", doc.coproduct.is_some()),
        ("counit", doc.counit.is_some()),
        ("star", doc.star.is_some()),
        ("antipode", doc.antipode.is_some()),
        ("E", doc.e.is_some()),
    ];
    if let Some((name, _)) = extra.iter().find(|x| x.1) {
        return Err(shape(format!("\"{name}\" cannot be combined with \"groupoid\"")));
    }
    let model: ModelKind = doc
        .model
        .as_deref()
        .ok_or_else(|| shape("\"groupoid\" requires \"model\""))?
        .parse()
        .map_err(InputError::Shape)?;
    match spec {
        GroupoidSpec::Preset { preset } => Subject::from_preset(preset, model),
        GroupoidSpec::File(f) => Ok(Subject::Groupoid {
            groupoid: FiniteGroupoid::from_file(f)?,
            model,
        }),
    }
}

fn algebra_subject(doc: &InputDocument, a: &AlgebraDoc) -> Result<Subject, InputError> {
    if doc.model.is_some() {
        return Err(shape("\"model\" applies only to \"groupoid\" inputs"));
    }
    let n = a.dim;
    let nn = n * n;
    let mut structure = Vec::with_capacity(a.structure.len());
    for (k, (i, j, l, re, im)) in a.structure.iter().enumerate() {
        let v = Scalar::parse_parts(re, im).map_err(|e| shape(format!("algebra.structure[{k}]: {e}")))?;
        structure.push((*i, *j, *l, v));
    }
    let alg = Algebra::from_structure(n, a.labels.clone(), structure).map_err(|e| shape(e.to_string()))?;
    let cop = doc
        .coproduct
        .as_ref()
        .ok_or_else(|| shape("\"algebra\" requires \"coproduct\""))?;
    let op = |name: &str, rows, cols, e: &[Entry]| parse_op(rows, cols, e).map_err(|m| shape(format!("{name}: {m}")));
    let coproduct = match (&cop.t1, &cop.t2, &cop.delta) {
        (Some(t1), Some(t2), None) => {
            let t3 = cop.t3.as_deref().map(|e| op("T3", nn, nn, e)).transpose()?;
            let t4 = cop.t4.as_deref().map(|e| op("T4", nn, nn, e)).transpose()?;
            CoproductData::new(alg, op("T1", nn, nn, t1)?, op("T2", nn, nn, t2)?, t3, t4)
        }
        (None, None, Some(d)) if cop.t3.is_none() && cop.t4.is_none() => {
            CoproductData::from_delta(alg, &op("delta", nn, n, d)?)
        }
        _ => {
            return Err(shape(
                "coproduct needs either T1 and T2 (with optional T3, T4) or delta",
            ))
        }
    }
    .map_err(|e| shape(e.to_string()))?;
    if let Some(c) = &doc.counit {
        if c.len() != n {
            return Err(shape(format!("counit has {} values for dimension {n}", c.len())));
        }
    }
    let star = match &doc.star {
        Some(e) => Some(StarStructure::new(
            parse_matrix(n, n, e).map_err(|m| shape(format!("star: {m}")))?,
        )),
        None => None,
    };
    let antipode = doc
        .antipode
        .as_deref()
        .map(|e| parse_matrix(n, n, e).map_err(|m| shape(format!("antipode: {m}"))))
        .transpose()?;
    let e = match &doc.e {
        Some(d) => Some(TensorMultiplier {
            left: op("E.left", nn, nn, &d.left)?,
            right: op("E.right", nn, nn, &d.right)?,
        }),
        None => None,
    };
    Ok(Subject::Algebra(Box::new(Presentation {
        coproduct,
        counit: doc.counit.clone(),
        star,
        antipode,
        e,
        model: None,
    })))
}

/// Parses a JSON input document.
pub fn load_input(bytes: &[u8]) -> Result<Subject, InputError> {
    let doc: InputDocument = serde_json::from_slice(bytes).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    Subject::from_document(&doc)
}

/// Groupoid-form document for a finite groupoid.
pub fn export_groupoid(g: &FiniteGroupoid, model: ModelKind) -> InputDocument {
    InputDocument {
        groupoid: Some(GroupoidSpec::File(g.to_file())),
        model: Some(model.to_string()),
        ..Default::default()
    }
}

/// Algebra-form document for a groupoid model, carrying the known counit,
/// antipode, `E` and star. With `delta` the coproduct is given as `Δ(e_p)`,
/// otherwise by `T1`–`T4`.
pub fn export_algebra(m: &GroupoidModel, delta: bool) -> InputDocument {
    let c = &m.coproduct;
    let alg = c.algebra();
    let algebra = AlgebraDoc {
        dim: alg.dim(),
        labels: Some(alg.labels().to_vec()),
        structure: alg
            .structure_entries()
            .into_iter()
            .map(|(i, j, k, v)| (i, j, k, v.re_string(), v.im_string()))
            .collect(),
    };
    let entries = |op: &crate::exactla::SparseOp| op_doc(op).entries;
    let coproduct = if delta {
        CoproductDoc {
            delta: Some(entries(&m.delta)),
            ..Default::default()
        }
    } else {
        CoproductDoc {
            t1: Some(entries(c.t1())),
            t2: Some(entries(c.t2())),
            t3: c.t3().map(entries),
            t4: c.t4().map(entries),
            delta: None,
        }
    };
    InputDocument {
        algebra: Some(algebra),
        coproduct: Some(coproduct),
        counit: Some(m.oracle.counit.clone()),
        star: Some(matrix_doc(&m.star.matrix).entries),
        antipode: Some(matrix_doc(&m.oracle.antipode).entries),
        e: Some(EDoc {
            left: entries(&m.oracle.e.left),
            right: entries(&m.oracle.e.right),
        }),
        groupoid: None,
        model: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair2() -> FiniteGroupoid {
        preset("pair:2").unwrap().finite().unwrap()
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = load_input(b"{\n  \"groupoid\": [1,\n").unwrap_err();
        assert!(matches!(err, InputError::Parse { line: 3, .. }), "{err:?}");
        let err = load_input(b"{\"unknown\": 1}").unwrap_err();
        assert!(matches!(err, InputError::Parse { .. }));
    }

    #[test]
    fn shape_errors() {
        let mut doc = export_algebra(&GroupoidModel::build(ModelKind::Function, &pair2()), false);
        doc.counit = Some(vec![Scalar::from_int(1)]);
        assert!(matches!(Subject::from_document(&doc), Err(InputError::Shape(_))));
        let mut doc = export_groupoid(&pair2(), ModelKind::Function);
        doc.model = None;
        assert!(matches!(Subject::from_document(&doc), Err(InputError::Shape(_))));
        assert!(matches!(
            Subject::from_document(&InputDocument::default()),
            Err(InputError::Shape(_))
        ));
    }

    #[test]
    fn exported_documents_load() {
        let g = pair2();
        let m = GroupoidModel::build(ModelKind::Convolution, &g);
        for delta in [false, true] {
            let text = serde_json::to_string(&export_algebra(&m, delta)).unwrap();
            let Subject::Algebra(p) = load_input(text.as_bytes()).unwrap() else {
                panic!()
            };
            assert_eq!(p.coproduct.t1(), m.coproduct.t1());
            assert_eq!(p.antipode.as_ref(), Some(&m.oracle.antipode));
        }
        let text = serde_json::to_string(&export_groupoid(&g, ModelKind::Function)).unwrap();
        let Subject::Groupoid { groupoid, model } = load_input(text.as_bytes()).unwrap() else {
            panic!()
        };
        assert_eq!((groupoid, model), (g, ModelKind::Function));
        let doc = br#"{"groupoid": {"preset": "pair:inf"}, "model": "function"}"#;
        assert!(matches!(load_input(doc).unwrap(), Subject::Lazy { .. }));
    }
}
