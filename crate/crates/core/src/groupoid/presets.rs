use super::{FiniteGroupoid, GroupoidError, LazyGroupoid, LazyKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Finite(FiniteGroupoid),
    Lazy(LazyGroupoid),
}

impl Preset {
    pub fn finite(self) -> Option<FiniteGroupoid> {
        match self {
            Preset::Finite(g) => Some(g),
            Preset::Lazy(_) => None,
        }
    }

    pub fn lazy(self) -> Option<LazyGroupoid> {
        match self {
            Preset::Lazy(g) => Some(g),
            Preset::Finite(_) => None,
        }
    }
}

fn count(name: &str, s: &str) -> Result<usize, GroupoidError> {
    match s.parse::<usize>() {
        Ok(0) => Err(GroupoidError::BadParameter(name.into(), "size must be positive".into())),
        Ok(v) => Ok(v),
        Err(_) => Err(GroupoidError::BadParameter(
            name.into(),
            format!("{s:?} is not a count"),
        )),
    }
}

fn single(name: &str) -> Result<Preset, GroupoidError> {
    let parts: Vec<&str> = name.split(':').collect();
    let finite = |kind, k| LazyGroupoid { kind }.window(k).map(Preset::Finite);
    match parts.as_slice() {
        ["pair", "inf"] => Ok(Preset::Lazy(LazyGroupoid { kind: LazyKind::Pair })),
        ["pair", n] => finite(LazyKind::Pair, count(name, n)?),
        ["group", "cyclic", n] => finite(LazyKind::CyclicBundle(count(name, n)?), 1),
        ["bundle", "cyclic", n, "inf"] => Ok(Preset::Lazy(LazyGroupoid {
            kind: LazyKind::CyclicBundle(count(name, n)?),
        })),
        ["bundle", "cyclic", n, k] => finite(LazyKind::CyclicBundle(count(name, n)?), count(name, k)?),
        _ => Err(GroupoidError::UnknownPreset(name.into())),
    }
}

/// Parses `pair:N`, `group:cyclic:N`, `bundle:cyclic:N:K`, `pair:inf`,
/// `bundle:cyclic:N:inf` and disjoint unions of finite presets joined by `+`.
pub fn preset(name: &str) -> Result<Preset, GroupoidError> {
    let parts: Vec<&str> = name.split('+').map(str::trim).collect();
    if parts.len() == 1 {
        return single(parts[0]);
    }
    let mut gs = Vec::with_capacity(parts.len());
    for p in parts {
        match single(p)? {
            Preset::Finite(g) => gs.push(g),
            Preset::Lazy(_) => {
                return Err(GroupoidError::BadParameter(
                    name.into(),
                    "unions only combine finite presets".into(),
                ))
            }
        }
    }
    FiniteGroupoid::disjoint_union(&gs).map(Preset::Finite)
}

#[cfg(test)]
mod tests {
    use super::super::validate_groupoid;
    use super::*;

    #[test]
    fn preset_sizes() {
        let g = preset("pair:3").unwrap().finite().unwrap();
        assert_eq!((g.len(), g.units().len()), (9, 3));
        let g = preset("bundle:cyclic:2:3").unwrap().finite().unwrap();
        assert_eq!((g.len(), g.units().len()), (6, 3));
        assert!(validate_groupoid(&g).ok());
        assert_eq!(g.id(3), "g^1@unit_1");
    }

    #[test]
    fn unions_and_errors() {
        let g = preset("pair:2 + group:cyclic:3").unwrap().finite().unwrap();
        assert_eq!((g.len(), g.units().len()), (7, 3));
        assert!(validate_groupoid(&g).ok());
        assert!(matches!(preset("pair:0"), Err(GroupoidError::BadParameter(..))));
        assert!(matches!(preset("pair:x"), Err(GroupoidError::BadParameter(..))));
        assert!(matches!(preset("torus:3"), Err(GroupoidError::UnknownPreset(_))));
        assert!(matches!(
            preset("pair:2+pair:inf"),
            Err(GroupoidError::BadParameter(..))
        ));
        assert!(preset("bundle:cyclic:2:inf").unwrap().lazy().is_some());
    }
}
