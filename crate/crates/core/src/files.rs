//! Module and resolution files.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::abgroup::AbHom;
use crate::format::{self, GroupSpec};
use crate::gmodule::{dual_module, CycloCharacter, GModule, GModuleError, HeckeSum, PermModuleSpec};
use crate::permgrp::{Perm, Subgroup};
use crate::resolution::Resolution;
use crate::Error;

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T, Error> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `M` as generator orders (0 for a free coordinate) and one action matrix
/// per group generator, together with the cyclotomic character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub version: u32,
    pub group: GroupSpec,
    #[serde(with = "format::bigint_vec")]
    pub orders: Vec<BigInt>,
    #[serde(with = "format::bigint_mats")]
    pub action: Vec<Vec<Vec<BigInt>>>,
    pub chi: CycloCharacter,
}

impl ModuleFile {
    pub fn of(m: &GModule, chi: &CycloCharacter) -> ModuleFile {
        ModuleFile {
            version: format::VERSION,
            group: GroupSpec::of(m.group()),
            orders: m.orders().to_vec(),
            action: m.gen_action().iter().map(format::matrix_to_rows).collect(),
            chi: chi.clone(),
        }
    }

    pub fn load(&self) -> Result<(GModule, CycloCharacter), Error> {
        format::check_version(self.version, "module").map_err(Error::Schema)?;
        let group = self.group.build().map_err(GModuleError::from)?;
        let r = self.orders.len();
        if self.action.len() != group.generators().len() {
            return Err(Error::Schema("module: one action matrix per group generator".into()));
        }
        let mats = self
            .action
            .iter()
            .map(|rows| format::matrix_from_rows(rows, r, r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Schema(format!("module action: {e}")))?;
        let m = GModule::new(group, self.orders.clone(), mats)?;
        self.chi.on_group(m.group())?;
        Ok((m, self.chi.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFile {
    /// Generators of the stabilizer of each block.
    pub blocks: Vec<Vec<Perm>>,
}

/// One nonzero coefficient of a Hecke sum: the double coset
/// `H_source · coset_rep · J_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeEntry {
    pub source: usize,
    pub target: usize,
    pub coset_rep: Perm,
    #[serde(with = "format::bigint")]
    pub coeff: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionFile {
    pub version: u32,
    pub module: ModuleFile,
    pub levels: Vec<LevelFile>,
    /// `P_0 -> M*`, rows.
    #[serde(with = "format::bigint_mat")]
    pub s: Vec<Vec<BigInt>>,
    /// `d_i^*: P_{i+1} -> P_i`.
    pub d_star: Vec<Vec<HeckeEntry>>,
}

fn hecke_entries(h: &HeckeSum) -> Vec<HeckeEntry> {
    let group = h.source().group();
    let mut out = Vec::new();
    for (s, row) in h.coeffs().iter().enumerate() {
        for (t, cs) in row.iter().enumerate() {
            let dec = h.decomposition(s, t);
            for (c, coeff) in cs.iter().enumerate() {
                if *coeff != BigInt::from(0) {
                    out.push(HeckeEntry {
                        source: s,
                        target: t,
                        coset_rep: group.element(dec.reps[c]).clone(),
                        coeff: coeff.clone(),
                    });
                }
            }
        }
    }
    out
}

fn hecke_from_entries(source: &PermModuleSpec, target: &PermModuleSpec, entries: &[HeckeEntry]) -> Result<HeckeSum, Error> {
    let group = source.group().clone();
    let mut h = HeckeSum::zero(source.clone(), target.clone());
    for e in entries {
        if e.source >= source.num_blocks() || e.target >= target.num_blocks() {
            return Err(Error::Schema("resolution: Hecke entry block out of range".into()));
        }
        let g = group
            .index_of(&e.coset_rep)
            .ok_or_else(|| Error::Schema("resolution: coset representative outside the group".into()))?;
        let c = h.decomposition(e.source, e.target).coset_of[g];
        h.coeffs_mut()[e.source][e.target][c] += &e.coeff;
    }
    Ok(h)
}

impl ResolutionFile {
    pub fn of(r: &Resolution) -> ResolutionFile {
        ResolutionFile {
            version: format::VERSION,
            module: ModuleFile::of(&r.module, &r.chi),
            levels: r
                .levels
                .iter()
                .map(|p| LevelFile { blocks: p.blocks().iter().map(|h| h.generators().to_vec()).collect() })
                .collect(),
            s: format::matrix_to_rows(&r.s.matrix),
            d_star: r.d_star.iter().map(hecke_entries).collect(),
        }
    }

    /// Rebuilds the resolution; run [`Resolution::verify`] to re-check it.
    pub fn load(&self) -> Result<Resolution, Error> {
        format::check_version(self.version, "resolution").map_err(Error::Schema)?;
        let (module, chi) = self.module.load()?;
        let mstar = dual_module(&module, &chi)?;
        let group = module.group().clone();
        if self.levels.is_empty() || self.d_star.len() + 1 != self.levels.len() {
            return Err(Error::Schema("resolution: need one Hecke sum between consecutive levels".into()));
        }
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let blocks = l
                    .blocks
                    .iter()
                    .map(|g| Subgroup::generated(&group, g.clone()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(GModuleError::from)?;
                Ok(PermModuleSpec::new(&group, blocks))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let s = format::matrix_from_rows(&self.s, mstar.rank(), levels[0].rank())
            .map_err(|e| Error::Schema(format!("resolution s: {e}")))?;
        let s = AbHom::new(levels[0].abgroup(), mstar.abgroup().clone(), s);
        let d_star = self
            .d_star
            .iter()
            .enumerate()
            .map(|(i, entries)| hecke_from_entries(&levels[i + 1], &levels[i], entries))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Resolution { module, chi, mstar, levels, s, d_star })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{vec_from_i64, IntMatrix};
    use crate::permgrp::PermGroup;
    use crate::resolution::resolve;

    #[test]
    fn resolution_round_trip() {
        let s3 = PermGroup::symmetric(3);
        let sign = |p: &Perm| {
            let mut inv = 0;
            for i in 0..3 {
                for j in i + 1..3 {
                    if p.apply(i) > p.apply(j) {
                        inv += 1;
                    }
                }
            }
            if inv % 2 == 0 { 1 } else { 2 }
        };
        let gens: Vec<IntMatrix> =
            s3.generators().iter().map(|g| IntMatrix::from_rows(&[vec_from_i64(&[sign(g)])])).collect();
        let m = GModule::new(s3.clone(), vec_from_i64(&[3]), gens).unwrap();
        let chi = CycloCharacter::new(BigInt::from(3), s3.generators().iter().map(|g| BigInt::from(sign(g))).collect());
        let r = resolve(&m, &chi, 2).unwrap();
        let file = ResolutionFile::of(&r);
        let text = to_json(&file);
        let back: ResolutionFile = serde_json::from_str(&text).unwrap();
        let r2 = back.load().unwrap();
        assert_eq!(r, r2);
        r2.verify().unwrap();
        assert_eq!(to_json(&ResolutionFile::of(&r2)), text);
    }

    #[test]
    fn singular_action_rejected() {
        let c2 = PermGroup::cyclic(2);
        let mut f = ModuleFile::of(&GModule::trivial(c2, vec_from_i64(&[0])).unwrap(), &CycloCharacter::trivial(BigInt::from(1), 1));
        f.action[0] = vec![vec_from_i64(&[2])];
        assert!(matches!(f.load(), Err(Error::Module(_))));
    }
}
