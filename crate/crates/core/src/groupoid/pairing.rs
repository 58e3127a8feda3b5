use super::{convolution_algebra, function_algebra, FiniteGroupoid};

/// Failures of the pairing `⟨δ_p, λ_q⟩ = [p = q]` between the function and
/// convolution models, with the basis indices involved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingDiagnostics {
    /// `⟨fg, λ_p⟩ = ⟨f⊗g, Δ(λ_p)⟩`.
    pub product_coproduct: Vec<[usize; 3]>,
    /// `⟨Δ(f), λ_p⊗λ_q⟩ = ⟨f, λ_pλ_q⟩`.
    pub coproduct_product: Vec<[usize; 3]>,
    /// `⟨S(f), λ_p⟩ = ⟨f, S(λ_p)⟩`.
    pub antipode: Vec<[usize; 2]>,
}

impl PairingDiagnostics {
    pub fn ok(&self) -> bool {
        self.product_coproduct.is_empty() && self.coproduct_product.is_empty() && self.antipode.is_empty()
    }
}

/// Both models share the basis order of `g`, so the pairing matrix is the
/// identity and each check compares coefficients directly.
pub fn check_duality_pairing(g: &FiniteGroupoid) -> PairingDiagnostics {
    let fun = function_algebra(g);
    let conv = convolution_algebra(g);
    let n = g.len();
    let (fa, ca) = (fun.coproduct.algebra(), conv.coproduct.algebra());
    let mut out = PairingDiagnostics::default();
    for a in 0..n {
        for b in 0..n {
            for p in 0..n {
                // ⟨δa δb, λp⟩ and ⟨δa⊗δb, Δ(λp)⟩
                if fa.product(a, b).get(p) != conv.delta.col(p).get(a * n + b) {
                    out.product_coproduct.push([a, b, p]);
                }
                // ⟨Δ(δa), λp⊗λb⟩ and ⟨δa, λpλb⟩
                if fun.delta.col(a).get(p * n + b) != ca.product(p, b).get(a) {
                    out.coproduct_product.push([a, p, b]);
                }
            }
        }
    }
    for r in 0..n {
        for p in 0..n {
            if fun.oracle.antipode.get(p, r) != conv.oracle.antipode.get(r, p) {
                out.antipode.push([r, p]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::preset;
    use super::*;

    #[test]
    fn presets_are_dually_paired() {
        for name in ["pair:2", "pair:3", "group:cyclic:4", "bundle:cyclic:3:2"] {
            let g = preset(name).unwrap().finite().unwrap();
            assert!(check_duality_pairing(&g).ok(), "{name}");
        }
    }
}
