use num_traits::Zero;

use crate::exactla::{LinAlgError, LinearSystem, Scalar, SparseVec};

use super::{CoalgError, CoproductData};

/// Counit as its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counit {
    pub values: Vec<Scalar>,
}

impl Counit {
    pub fn apply(&self, x: &SparseVec) -> Scalar {
        x.dot(&self.values)
    }

    /// `(ε⊗ι)` on a vector of `A⊗A`.
    pub fn contract_first(&self, v: &SparseVec, n: usize) -> SparseVec {
        let mut acc = crate::exactla::Accumulator::new();
        for (ij, c) in v.iter() {
            let e = &self.values[ij / n];
            if !e.is_zero() {
                acc.add_mul(ij % n, c, e);
            }
        }
        acc.finish()
    }

    /// `(ι⊗ε)` on a vector of `A⊗A`.
    pub fn contract_second(&self, v: &SparseVec, n: usize) -> SparseVec {
        let mut acc = crate::exactla::Accumulator::new();
        for (ij, c) in v.iter() {
            let e = &self.values[ij % n];
            if !e.is_zero() {
                acc.add_mul(ij / n, c, e);
            }
        }
        acc.finish()
    }
}

/// Solves `(ε⊗ι)T1(a⊗b) = ab` and `(ι⊗ε)T2(c⊗a) = ca` for `ε`.
pub fn solve_counit(c: &CoproductData) -> Result<Counit, CoalgError> {
    let n = c.n();
    let mut sys = LinearSystem::new(n);
    for a in 0..n {
        for b in 0..n {
            let ab = c.algebra().product(a, b);
            // component j of (ε⊗ι)T1(a⊗b) is Σ_i ε_i T1[(i,j)]
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (ij, v) in c.t1().col(a * n + b).iter() {
                rows[ij % n].push((ij / n, v.clone()));
            }
            for (j, r) in rows.into_iter().enumerate() {
                sys.push(&SparseVec::from_entries(r), &ab.get(j));
            }
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (ij, v) in c.t2().col(a * n + b).iter() {
                rows[ij / n].push((ij % n, v.clone()));
            }
            for (i, r) in rows.into_iter().enumerate() {
                sys.push(&SparseVec::from_entries(r), &ab.get(i));
            }
        }
    }
    match sys.solve() {
        Err(LinAlgError::Infeasible) => Err(CoalgError::NoCounit),
        Err(_) => Err(CoalgError::NoCounit),
        Ok(sol) if !sol.is_unique() => Err(CoalgError::NonUniqueCounit(sol.space.dim())),
        Ok(sol) => Ok(Counit { values: sol.particular }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use num_traits::One;

    #[test]
    fn group_and_convolution_counits_are_one() {
        for c in [cyclic_group(2), pair_convolution(2)] {
            let e = solve_counit(&c).unwrap();
            assert!(e.values.iter().all(|v| v.is_one()));
        }
    }

    #[test]
    fn function_counit_sums_over_units() {
        let e = solve_counit(&pair_function(2)).unwrap();
        // basis (i,j) ↦ i*2+j; units are (0,0) and (1,1)
        let expect: Vec<Scalar> = [1, 0, 0, 1].iter().map(|&v| Scalar::from_int(v)).collect();
        assert_eq!(e.values, expect);
    }
}
