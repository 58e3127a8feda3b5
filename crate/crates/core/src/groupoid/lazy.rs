use super::{FiniteGroupoid, GroupoidError};

/// Families of infinite groupoids given by rules on encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LazyKind {
    /// Pair groupoid on ℕ.
    Pair,
    /// Countably many disjoint copies of ℤ/N.
    CyclicBundle(usize),
}

/// Morphism encoding: `(i, j)` for the pair groupoid, `(unit, k)` for `g^k`
/// in the copy at `unit` of a bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism(pub usize, pub usize);

/// Infinite groupoid whose windows are the finite subgroupoids on the
/// first `k` units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LazyGroupoid {
    pub kind: LazyKind,
}

impl LazyGroupoid {
    pub fn source(&self, p: Morphism) -> Morphism {
        match self.kind {
            LazyKind::Pair => Morphism(p.1, p.1),
            LazyKind::CyclicBundle(_) => Morphism(p.0, 0),
        }
    }

    pub fn target(&self, p: Morphism) -> Morphism {
        match self.kind {
            LazyKind::Pair => Morphism(p.0, p.0),
            LazyKind::CyclicBundle(_) => Morphism(p.0, 0),
        }
    }

    pub fn compose(&self, p: Morphism, q: Morphism) -> Option<Morphism> {
        if self.source(p) != self.target(q) {
            return None;
        }
        Some(match self.kind {
            LazyKind::Pair => Morphism(p.0, q.1),
            LazyKind::CyclicBundle(m) => Morphism(p.0, (p.1 + q.1) % m),
        })
    }

    pub fn inverse(&self, p: Morphism) -> Morphism {
        match self.kind {
            LazyKind::Pair => Morphism(p.1, p.0),
            LazyKind::CyclicBundle(m) => Morphism(p.0, (m - p.1) % m),
        }
    }

    pub fn id(&self, p: Morphism) -> String {
        match self.kind {
            LazyKind::Pair => format!("({},{})", p.0, p.1),
            LazyKind::CyclicBundle(_) => format!("g^{}@unit_{}", p.1, p.0),
        }
    }

    /// Index of the unit of a unit morphism.
    pub fn unit_index(&self, u: Morphism) -> usize {
        u.0
    }

    /// Smallest `k` with `p` in `window(k)`.
    pub fn window_of(&self, p: Morphism) -> usize {
        match self.kind {
            LazyKind::Pair => p.0.max(p.1) + 1,
            LazyKind::CyclicBundle(_) => p.0 + 1,
        }
    }

    /// Morphisms of `window(k)` in index order.
    pub fn window_morphisms(&self, k: usize) -> Vec<Morphism> {
        match self.kind {
            LazyKind::Pair => (0..k).flat_map(|i| (0..k).map(move |j| Morphism(i, j))).collect(),
            LazyKind::CyclicBundle(m) => (0..k).flat_map(|u| (0..m).map(move |g| Morphism(u, g))).collect(),
        }
    }

    /// Finite subgroupoid on the first `k` units.
    pub fn window(&self, k: usize) -> Result<FiniteGroupoid, GroupoidError> {
        let ms = self.window_morphisms(k);
        let pos = |p: Morphism| ms.iter().position(|&x| x == p).expect("window is closed");
        let mut compose = Vec::new();
        for (i, &p) in ms.iter().enumerate() {
            for (j, &q) in ms.iter().enumerate() {
                if let Some(r) = self.compose(p, q) {
                    compose.push((i, j, pos(r)));
                }
            }
        }
        FiniteGroupoid::from_parts(
            ms.iter().map(|&p| self.id(p)).collect(),
            ms.iter().map(|&p| pos(self.source(p))).collect(),
            ms.iter().map(|&p| pos(self.target(p))).collect(),
            ms.iter().map(|&p| pos(self.inverse(p))).collect(),
            compose,
        )
        .map_err(|e| GroupoidError::WindowInvalid(k, e.to_string()))
    }

    /// Positions of the morphisms of `window(k)` inside `window(k')`, `k ≤ k'`.
    pub fn embedding(&self, k: usize, k2: usize) -> Vec<usize> {
        let big = self.window_morphisms(k2);
        self.window_morphisms(k)
            .into_iter()
            .map(|p| big.iter().position(|&x| x == p).expect("windows are nested"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{preset, validate_groupoid};
    use super::*;

    #[test]
    fn pair_window_two_is_pair_groupoid_on_two_points() {
        let g = LazyGroupoid { kind: LazyKind::Pair };
        let w = g.window(2).unwrap();
        assert_eq!(w, preset("pair:2").unwrap().finite().unwrap());
    }

    #[test]
    fn windows_are_valid_and_nested() {
        for kind in [LazyKind::Pair, LazyKind::CyclicBundle(2), LazyKind::CyclicBundle(3)] {
            let g = LazyGroupoid { kind };
            for k in 1..5 {
                let small = g.window(k).unwrap();
                let big = g.window(k + 1).unwrap();
                assert!(validate_groupoid(&small).ok());
                let emb = g.embedding(k, k + 1);
                for p in 0..small.len() {
                    assert_eq!(big.id(emb[p]), small.id(p));
                    assert_eq!(emb[small.inverse(p)], big.inverse(emb[p]));
                }
            }
        }
    }

    #[test]
    fn every_morphism_lies_in_its_window() {
        let g = LazyGroupoid {
            kind: LazyKind::CyclicBundle(3),
        };
        let p = Morphism(4, 2);
        assert!(g.window_morphisms(g.window_of(p)).contains(&p));
        assert!(!g.window_morphisms(g.window_of(p) - 1).contains(&p));
        assert_eq!(g.id(g.inverse(p)), "g^1@unit_4");
    }
}
