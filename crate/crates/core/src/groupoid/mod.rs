//! Finite and lazily presented infinite groupoids, their function and
//! convolution algebras, and known-answer witnesses for both.
//!
//! Convention: `s(p)` is the right unit (`p·s(p) = p`), `t(p)` the left unit,
//! and `p·q` is defined iff `s(p) = t(q)`.

mod lazy;
mod models;
mod pairing;
mod presets;

pub use lazy::{LazyGroupoid, LazyKind, Morphism};
pub use models::{convolution_algebra, function_algebra, GroupoidModel, ModelKind, OracleWitnesses};
pub use pairing::{check_duality_pairing, PairingDiagnostics};
pub use presets::{preset, Preset};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("bad parameter in preset {0:?}: {1}")]
    BadParameter(String, String),
    #[error("unknown morphism id {0:?}")]
    UnknownMorphism(String),
    #[error("duplicate morphism id {0:?}")]
    DuplicateMorphism(String),
    #[error("{0} is missing an entry for {1:?}")]
    MissingEntry(&'static str, String),
    #[error("composition of {0:?} and {1:?} is given twice")]
    DuplicateComposition(String, String),
    #[error("window {0} is invalid: {1}")]
    WindowInvalid(usize, String),
}

/// A groupoid with finitely many morphisms, indexed `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    source: Vec<usize>,
    target: Vec<usize>,
    inverse: Vec<usize>,
    compose: BTreeMap<(usize, usize), usize>,
}

/// Groupoid file layout with string ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub morphisms: Vec<String>,
    pub source: BTreeMap<String, String>,
    pub target: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    pub inverse: BTreeMap<String, String>,
}

/// One violated axiom with the morphisms involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidViolation {
    pub axiom: &'static str,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupoidDiagnostics {
    pub violations: Vec<GroupoidViolation>,
}

impl GroupoidDiagnostics {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FiniteGroupoid {
    /// Builds a groupoid from index tables; axioms are checked by
    /// [`validate_groupoid`], only index ranges here.
    pub fn from_parts(
        ids: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        inverse: Vec<usize>,
        compose: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, GroupoidError> {
        let n = ids.len();
        let mut index = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GroupoidError::DuplicateMorphism(id.clone()));
            }
        }
        for (name, table) in [("source", &source), ("target", &target), ("inverse", &inverse)] {
            if table.len() != n {
                return Err(GroupoidError::MissingEntry(
                    name,
                    format!("{} of {n} entries", table.len()),
                ));
            }
            if let Some(&bad) = table.iter().find(|&&x| x >= n) {
                return Err(GroupoidError::UnknownMorphism(format!("#{bad}")));
            }
        }
        let mut table = BTreeMap::new();
        for (p, q, r) in compose {
            if p >= n || q >= n || r >= n {
                return Err(GroupoidError::UnknownMorphism(format!("#{}", p.max(q).max(r))));
            }
            if table.insert((p, q), r).is_some() {
                return Err(GroupoidError::DuplicateComposition(ids[p].clone(), ids[q].clone()));
            }
        }
        Ok(FiniteGroupoid {
            ids,
            index,
            source,
            target,
            inverse,
            compose: table,
        })
    }

    pub fn from_file(f: &GroupoidFile) -> Result<Self, GroupoidError> {
        let mut index = BTreeMap::new();
        for (i, id) in f.morphisms.iter().enumerate() {
            if index.insert(id.as_str(), i).is_some() {
                return Err(GroupoidError::DuplicateMorphism(id.clone()));
            }
        }
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GroupoidError::UnknownMorphism(s.to_string()))
        };
        let table = |name: &'static str, m: &BTreeMap<String, String>| -> Result<Vec<usize>, GroupoidError> {
            for k in m.keys() {
                look(k)?;
            }
            f.morphisms
                .iter()
                .map(|id| look(m.get(id).ok_or_else(|| GroupoidError::MissingEntry(name, id.clone()))?))
                .collect()
        };
        let source = table("source", &f.source)?;
        let target = table("target", &f.target)?;
        let inverse = table("inverse", &f.inverse)?;
        let compose = f
            .compose
            .iter()
            .map(|[p, q, r]| Ok((look(p)?, look(q)?, look(r)?)))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        FiniteGroupoid::from_parts(f.morphisms.clone(), source, target, inverse, compose)
    }

    pub fn to_file(&self) -> GroupoidFile {
        let map = |t: &[usize]| -> BTreeMap<String, String> {
            self.ids
                .iter()
                .zip(t)
                .map(|(id, &x)| (id.clone(), self.ids[x].clone()))
                .collect()
        };
        GroupoidFile {
            morphisms: self.ids.clone(),
            source: map(&self.source),
            target: map(&self.target),
            compose: self
                .compose
                .iter()
                .map(|(&(p, q), &r)| [self.ids[p].clone(), self.ids[q].clone(), self.ids[r].clone()])
                .collect(),
            inverse: map(&self.inverse),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn source(&self, p: usize) -> usize {
        self.source[p]
    }

    pub fn target(&self, p: usize) -> usize {
        self.target[p]
    }

    pub fn inverse(&self, p: usize) -> usize {
        self.inverse[p]
    }

    pub fn compose(&self, p: usize, q: usize) -> Option<usize> {
        self.compose.get(&(p, q)).copied()
    }

    /// Morphisms with `s(u) = t(u) = u`.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| self.source[u] == u && self.target[u] == u)
            .collect()
    }

    pub fn is_unit(&self, p: usize) -> bool {
        self.source[p] == p && self.target[p] == p
    }

    /// Disjoint union; ids are prefixed with the component number when they collide.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self, GroupoidError> {
        let mut seen = std::collections::BTreeSet::new();
        let clash = parts.iter().flat_map(|g| g.ids.iter()).any(|id| !seen.insert(id));
        let mut ids = Vec::new();
        let (mut source, mut target, mut inverse, mut compose) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (c, g) in parts.iter().enumerate() {
            let off = ids.len();
            ids.extend(
                g.ids
                    .iter()
                    .map(|id| if clash { format!("{c}|{id}") } else { id.clone() }),
            );
            source.extend(g.source.iter().map(|x| x + off));
            target.extend(g.target.iter().map(|x| x + off));
            inverse.extend(g.inverse.iter().map(|x| x + off));
            compose.extend(g.compose.iter().map(|(&(p, q), &r)| (p + off, q + off, r + off)));
        }
        FiniteGroupoid::from_parts(ids, source, target, inverse, compose)
    }
}

/// Checks every groupoid axiom exhaustively.
pub fn validate_groupoid(g: &FiniteGroupoid) -> GroupoidDiagnostics {
    let n = g.len();
    let mut out = GroupoidDiagnostics::default();
    let mut fail = |axiom: &'static str, w: &[usize]| {
        out.violations.push(GroupoidViolation {
            axiom,
            witness: w.iter().map(|&p| g.ids[p].clone()).collect(),
        })
    };
    for p in 0..n {
        for q in 0..n {
            let defined = g.compose(p, q);
            let composable = g.source(p) == g.target(q);
            match defined {
                Some(_) if !composable => fail("p·q defined only if s(p) = t(q)", &[p, q]),
                None if composable => fail("p·q defined if s(p) = t(q)", &[p, q]),
                Some(r) => {
                    if g.source(r) != g.source(q) {
                        fail("s(pq) = s(q)", &[p, q]);
                    }
                    if g.target(r) != g.target(p) {
                        fail("t(pq) = t(p)", &[p, q]);
                    }
                }
                None => {}
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            let Some(pq) = g.compose(p, q) else { continue };
            for r in 0..n {
                let Some(qr) = g.compose(q, r) else { continue };
                if g.compose(pq, r) != g.compose(p, qr) {
                    fail("(pq)r = p(qr)", &[p, q, r]);
                }
            }
        }
    }
    for p in 0..n {
        let (s, t) = (g.source(p), g.target(p));
        if !g.is_unit(s) {
            fail("s(p) is a unit", &[p]);
        }
        if !g.is_unit(t) {
            fail("t(p) is a unit", &[p]);
        }
        if g.compose(p, s) != Some(p) {
            fail("p·s(p) = p", &[p]);
        }
        if g.compose(t, p) != Some(p) {
            fail("t(p)·p = p", &[p]);
        }
        let i = g.inverse(p);
        if g.compose(i, p) != Some(s) {
            fail("p⁻¹p = s(p)", &[p]);
        }
        if g.compose(p, i) != Some(t) {
            fail("pp⁻¹ = t(p)", &[p]);
        }
        if g.inverse(i) != p {
            fail("(p⁻¹)⁻¹ = p", &[p]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_is_valid_with_two_units() {
        let g = preset("pair:2").unwrap().finite().unwrap();
        assert!(validate_groupoid(&g).ok());
        let units: Vec<&str> = g.units().into_iter().map(|u| g.id(u)).collect();
        assert_eq!(units, ["(0,0)", "(1,1)"]);
    }

    #[test]
    fn cyclic_group_is_a_one_unit_groupoid() {
        let g = preset("group:cyclic:3").unwrap().finite().unwrap();
        assert!(validate_groupoid(&g).ok());
        assert_eq!(g.units().len(), 1);
    }

    #[test]
    fn wrong_inverse_is_reported() {
        let g = preset("pair:2").unwrap().finite().unwrap();
        let mut f = g.to_file();
        f.inverse.insert("(0,1)".into(), "(0,1)".into());
        let bad = FiniteGroupoid::from_file(&f).unwrap();
        let d = validate_groupoid(&bad);
        assert!(d
            .violations
            .iter()
            .any(|v| v.axiom == "p⁻¹p = s(p)" && v.witness == ["(0,1)"]));
    }

    #[test]
    fn file_round_trip() {
        let g = preset("bundle:cyclic:2:3").unwrap().finite().unwrap();
        let f = g.to_file();
        let json = serde_json::to_string(&f).unwrap();
        let back: GroupoidFile = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteGroupoid::from_file(&back).unwrap(), g);
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let mut f = preset("pair:2").unwrap().finite().unwrap().to_file();
        f.compose.push(["(0,0)".into(), "(0,0)".into(), "(9,9)".into()]);
        assert_eq!(
            FiniteGroupoid::from_file(&f),
            Err(GroupoidError::UnknownMorphism("(9,9)".into()))
        );
    }

    #[test]
    fn union_prefixes_colliding_ids() {
        let a = preset("pair:1").unwrap().finite().unwrap();
        let u = FiniteGroupoid::disjoint_union(&[a.clone(), a]).unwrap();
        assert_eq!(u.ids(), ["0|(0,0)", "1|(0,0)"]);
        assert!(validate_groupoid(&u).ok());
    }
}
