use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{CycloCharacter, GModule, GModuleError, PermModuleSpec};
use crate::abgroup::IntMatrix;

/// `M* = Hom(M, μ_m)` with action `(gφ)(x) = χ(g)·φ(g⁻¹x)`, written in the
/// dual basis `φ_j(x) = (m/d_j)·x_j`.
pub fn dual_module(m: &GModule, chi: &CycloCharacter) -> Result<GModule, GModuleError> {
    let exp = m.exponent().ok_or_else(|| GModuleError::DimensionMismatch("dual of an infinite module".into()))?;
    if chi.modulus.is_zero() || !chi.modulus.is_multiple_of(&exp) {
        return Err(GModuleError::DimensionMismatch(format!(
            "character modulus {} is not a multiple of the exponent {exp}",
            chi.modulus
        )));
    }
    let group = m.group();
    let chi_vals = chi.on_group(group)?;
    let d = m.orders();
    let n = m.rank();
    let mut gens = Vec::with_capacity(group.generators().len());
    for k in 0..group.generators().len() {
        let g = group.generator_index(k);
        let a_inv = m.action(group.inv(g));
        let mut b = IntMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                let v = &chi_vals[g] * &a_inv[(j, i)] * &d[i] / &d[j];
                b[(i, j)] = v.mod_floor(&d[i]);
            }
        }
        gens.push(b);
    }
    GModule::new(group.clone(), d.to_vec(), gens)
}

/// `Hom(P/n, Z/n)` with the χ-twisted action, i.e. the `n`-torsion of the
/// induced module dual to `P`.
pub fn torsion_model(p: &PermModuleSpec, n: &BigInt, chi: &CycloCharacter) -> Result<GModule, GModuleError> {
    let chi = chi.reduced(n)?;
    let group = p.group();
    let vals = chi.on_group(group)?;
    let gens = (0..group.generators().len())
        .map(|k| {
            let g = group.generator_index(k);
            p.action_matrix(g).scale(&vals[g])
        })
        .collect();
    GModule::new(group.clone(), vec![n.clone(); p.rank()], gens)
}
