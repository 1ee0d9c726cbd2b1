//! Arithmetic data about the splitting field `N`: S-units with Galois action,
//! decomposition and inertia groups with valuations, class groups with prime
//! classes, and local-condition matrices. Loaded from fixture files and
//! validated before use.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbHom, FgAbGroup, FinAbGroup, IntMatrix};
use crate::format::{self, GroupSpec};
use crate::gmodule::{CycloCharacter, GModule, GModuleError, PermModuleSpec};
use crate::permgrp::{DoubleCosetDecomp, Perm, PermGroup, Subgroup};
use crate::resolution::{DualSequence, Resolution};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("invariant violated ({name}): {detail}")]
    InvariantViolation { name: String, detail: String },
    #[error("prime {0} ramifies in the splitting field")]
    RamifiedPrime(u64),
    #[error("prime {0} is not in the fixture prime pool")]
    UnknownPrime(u64),
    #[error("no class data for subgroup {0}")]
    MissingClassData(String),
}

fn violation(name: &str, detail: impl Into<String>) -> OracleError {
    OracleError::InvariantViolation { name: name.into(), detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitsFile {
    /// Torsion generator first, then the free generators.
    pub names: Vec<String>,
    #[serde(with = "format::bigint")]
    pub torsion_order: BigInt,
    /// One square matrix (rows) per group generator.
    #[serde(with = "format::bigint_mats")]
    pub action: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFile {
    #[serde(with = "format::prime")]
    pub p: u64,
    pub decomposition: Vec<Perm>,
    pub inertia: Vec<Perm>,
    #[serde(with = "format::bigint_vec")]
    pub vals: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClassesFile {
    #[serde(with = "format::prime")]
    pub p: u64,
    /// One class vector per place above `p`, in double-coset order.
    #[serde(with = "format::bigint_mat")]
    pub classes: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub subgroup: Vec<Perm>,
    #[serde(with = "format::bigint_vec")]
    pub clgroup: Vec<BigInt>,
    pub prime_classes: Vec<PrimeClassesFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConditionFile {
    #[serde(with = "format::prime")]
    pub prime: u64,
    pub label: String,
    pub level1_blocks: Vec<Vec<Perm>>,
    #[serde(with = "format::bigint_vec")]
    pub target: Vec<BigInt>,
    #[serde(with = "format::bigint_mat")]
    pub map_matrix: Vec<Vec<BigInt>>,
    #[serde(with = "format::bigint_mat")]
    pub subgroup_gens: Vec<Vec<BigInt>>,
}

/// Values computed independently of this library and recorded alongside the
/// fixture, e.g. orders of H¹_S for specific modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub module: String,
    #[serde(with = "format::prime_vec")]
    pub s: Vec<u64>,
    #[serde(with = "format::bigint")]
    pub h1s_order: BigInt,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub version: u32,
    pub name: String,
    pub field: String,
    pub provenance: String,
    pub group: GroupSpec,
    pub chi: CycloCharacter,
    pub sunits: SUnitsFile,
    pub primes: Vec<PrimeFile>,
    pub class_data: Vec<ClassFile>,
    #[serde(default)]
    pub local_conditions: Vec<LocalConditionFile>,
    #[serde(default)]
    pub oracle_checks: Vec<OracleCheck>,
}

#[derive(Clone, Debug)]
pub struct PrimeData {
    pub p: u64,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    /// Valuation at the chosen prime `w0` of each S-unit generator.
    pub vals: Vec<BigInt>,
}

impl PrimeData {
    pub fn is_ramified(&self) -> bool {
        !self.inertia.is_trivial()
    }
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub subgroup: Subgroup,
    pub clgroup: FinAbGroup,
    /// Per prime of the pool, one class vector per double coset `H \ G / D_p`.
    pub prime_classes: Vec<(u64, Vec<Vec<BigInt>>)>,
}

#[derive(Clone, Debug)]
pub struct CustomConditionData {
    pub prime: u64,
    pub label: String,
    pub level1_blocks: Vec<Subgroup>,
    /// `A_v = ⊕ Z/target_i`.
    pub target: Vec<BigInt>,
    /// Columns indexed by (level-1 block, S-unit coordinate), block-major.
    pub map: IntMatrix,
    /// Generators of `L_v ⊆ A_v`.
    pub subgroup_gens: Vec<Vec<BigInt>>,
}

impl CustomConditionData {
    pub fn target_group(&self) -> FgAbGroup {
        FgAbGroup::from_orders(&self.target)
    }

    /// `A_v / L_v`.
    pub fn quotient_group(&self) -> FgAbGroup {
        let a = self.target_group();
        let gens = IntMatrix::from_cols(self.target.len(), &self.subgroup_gens);
        FgAbGroup::new(self.target.len(), a.relations().hstack(&gens))
    }
}

/// A validated fixture.
#[derive(Clone, Debug)]
pub struct ArithmeticFixture {
    pub file: FixtureFile,
    pub group: Arc<PermGroup>,
    pub chi: CycloCharacter,
    pub sunits: GModule,
    pub primes: Vec<PrimeData>,
    pub class_data: Vec<ClassData>,
    pub local_conditions: Vec<CustomConditionData>,
}

/// Source of fixtures. The file loader is the reference implementation; an
/// external program producing the same document can stand in for it.
pub trait ArithmeticOracle {
    fn fixture(&self, requests: &FieldRequests) -> Result<ArithmeticFixture, OracleError>;
}

pub struct FileOracle {
    pub path: PathBuf,
}

impl ArithmeticOracle for FileOracle {
    fn fixture(&self, requests: &FieldRequests) -> Result<ArithmeticFixture, OracleError> {
        let fx = load_fixture(&self.path)?;
        fx.covers(requests)?;
        Ok(fx)
    }
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<ArithmeticFixture, OracleError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| OracleError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    ArithmeticFixture::from_json(&text)
}

fn subgroup_of(group: &Arc<PermGroup>, gens: &[Perm], what: &str) -> Result<Subgroup, OracleError> {
    Subgroup::generated(group, gens.to_vec()).map_err(|e| violation(what, e.to_string()))
}

fn describe(h: &Subgroup) -> String {
    format!("{:?}", h.generators())
}

impl ArithmeticFixture {
    pub fn from_json(text: &str) -> Result<ArithmeticFixture, OracleError> {
        let file: FixtureFile = serde_json::from_str(text).map_err(|e| OracleError::SchemaError(e.to_string()))?;
        ArithmeticFixture::from_file(file)
    }

    pub fn from_file(file: FixtureFile) -> Result<ArithmeticFixture, OracleError> {
        format::check_version(file.version, "fixture").map_err(OracleError::SchemaError)?;
        let group = file.group.build().map_err(|e| violation("group", e.to_string()))?;
        let ngens = group.generators().len();

        let su = &file.sunits;
        let n = su.names.len();
        if n == 0 {
            return Err(violation("sunits", "at least the torsion generator is required"));
        }
        if su.torsion_order < BigInt::from(2) {
            return Err(violation("sunits", "torsion order must be at least 2"));
        }
        if su.action.len() != ngens {
            return Err(violation("sunits", "one action matrix per group generator"));
        }
        let mut mats = Vec::with_capacity(ngens);
        for a in &su.action {
            mats.push(format::matrix_from_rows(a, n, n).map_err(|e| violation("sunits", e))?);
        }
        let mut orders = vec![BigInt::zero(); n];
        orders[0] = su.torsion_order.clone();
        let sunits = GModule::new(Arc::clone(&group), orders, mats).map_err(|e| violation("sunit action", e.to_string()))?;

        let chi = file.chi.clone();
        if chi.modulus != su.torsion_order {
            return Err(violation("chi", "character modulus must equal the number of roots of unity"));
        }
        let chi_vals = chi.on_group(&group).map_err(|e| violation("chi", e.to_string()))?;
        for g in 0..group.order() {
            let a = sunits.action(g);
            if !(&a[(0, 0)] - &chi_vals[g]).mod_floor(&chi.modulus).is_zero() {
                return Err(violation("chi", format!("element {} acts on roots of unity by {}, character says {}", group.element(g), a[(0, 0)], chi_vals[g])));
            }
        }

        let mut primes = Vec::with_capacity(file.primes.len());
        let mut seen = BTreeSet::new();
        for pf in &file.primes {
            if !seen.insert(pf.p) || !is_prime(pf.p) {
                return Err(violation("primes", format!("{} is repeated or not prime", pf.p)));
            }
            let d = subgroup_of(&group, &pf.decomposition, "decomposition group")?;
            let i = subgroup_of(&group, &pf.inertia, "inertia group")?;
            if !i.is_subgroup_of(&d) || !i.is_normal_in(&d) {
                return Err(violation("inertia", format!("I_{} is not normal in D_{}", pf.p, pf.p)));
            }
            if pf.vals.len() != n || !pf.vals[0].is_zero() {
                return Err(violation("vals", format!("valuation vector at {} must have length {n} and vanish on torsion", pf.p)));
            }
            for gen in d.generator_indices() {
                let moved = row_times(&pf.vals, sunits.action(gen));
                if moved != pf.vals {
                    return Err(violation("vals", format!("valuations at {} are not D_p-invariant", pf.p)));
                }
            }
            primes.push(PrimeData { p: pf.p, decomposition: d, inertia: i, vals: pf.vals.clone() });
        }

        let mut class_data = Vec::with_capacity(file.class_data.len());
        for cf in &file.class_data {
            let h = subgroup_of(&group, &cf.subgroup, "class data subgroup")?;
            if cf.clgroup.iter().any(|d| d < &BigInt::from(2))
                || cf.clgroup.windows(2).any(|w| !w[1].is_multiple_of(&w[0]))
            {
                return Err(violation("clgroup", "invariant factors must be at least 2 and form a divisibility chain"));
            }
            let clgroup = FinAbGroup::from_cyclic_orders(&cf.clgroup);
            let mut pcs = Vec::new();
            for pc in &cf.prime_classes {
                let pd = primes
                    .iter()
                    .find(|x| x.p == pc.p)
                    .ok_or_else(|| violation("prime_classes", format!("prime {} not in pool", pc.p)))?;
                let places = DoubleCosetDecomp::new(&h, &pd.decomposition).len();
                if pc.classes.len() != places || pc.classes.iter().any(|c| c.len() != cf.clgroup.len()) {
                    return Err(violation(
                        "prime_classes",
                        format!("subgroup {} at {}: expected {places} class vectors of length {}", describe(&h), pc.p, cf.clgroup.len()),
                    ));
                }
                pcs.push((pc.p, pc.classes.clone()));
            }
            class_data.push(ClassData { subgroup: h, clgroup, prime_classes: pcs });
        }

        let mut local_conditions = Vec::with_capacity(file.local_conditions.len());
        for lf in &file.local_conditions {
            if !primes.iter().any(|p| p.p == lf.prime) {
                return Err(violation("local_conditions", format!("prime {} not in pool", lf.prime)));
            }
            let blocks = lf
                .level1_blocks
                .iter()
                .map(|gens| subgroup_of(&group, gens, "local condition block"))
                .collect::<Result<Vec<_>, _>>()?;
            let cols = blocks.len() * n;
            let map = format::matrix_from_rows(&lf.map_matrix, lf.target.len(), cols)
                .map_err(|e| violation("local_conditions", format!("map_matrix at {}: {e}", lf.prime)))?;
            if lf.target.iter().any(|d| d.is_zero()) || lf.subgroup_gens.iter().any(|g| g.len() != lf.target.len()) {
                return Err(violation("local_conditions", format!("target shape at {}", lf.prime)));
            }
            local_conditions.push(CustomConditionData {
                prime: lf.prime,
                label: lf.label.clone(),
                level1_blocks: blocks,
                target: lf.target.clone(),
                map,
                subgroup_gens: lf.subgroup_gens.clone(),
            });
        }

        Ok(ArithmeticFixture { file, group, chi, sunits, primes, class_data, local_conditions })
    }

    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn names(&self) -> &[String] {
        &self.file.sunits.names
    }

    pub fn torsion_order(&self) -> &BigInt {
        &self.file.sunits.torsion_order
    }

    /// The prime pool `Σ`, ascending.
    pub fn pool(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.primes.iter().map(|p| p.p).collect();
        v.sort_unstable();
        v
    }

    pub fn prime(&self, p: u64) -> Result<&PrimeData, OracleError> {
        self.primes.iter().find(|x| x.p == p).ok_or(OracleError::UnknownPrime(p))
    }

    pub fn local_condition(&self, p: u64, label: &str) -> Option<&CustomConditionData> {
        self.local_conditions.iter().find(|c| c.prime == p && c.label == label)
    }

    pub fn class_data_for(&self, h: &Subgroup) -> Option<&ClassData> {
        self.class_data.iter().find(|c| &c.subgroup == h)
    }

    /// Valuations of `U` at every prime `τ·w0` above `p`, one row per coset
    /// `τD_p`: the row is `vals·A(τ⁻¹)`. This is a G-map `U -> Z[G/D_p]`.
    pub fn full_valuation(&self, p: u64) -> Result<IntMatrix, OracleError> {
        let pd = self.prime(p)?;
        let cosets = pd.decomposition.left_cosets();
        let rows: Vec<Vec<BigInt>> = cosets
            .reps
            .iter()
            .map(|&tau| row_times(&pd.vals, self.sunits.action(self.group.inv(tau))))
            .collect();
        Ok(IntMatrix::from_rows(&rows))
    }

    /// `Z[G/D_p]` as a permutation module.
    pub fn place_module(&self, p: u64) -> Result<GModule, OracleError> {
        let pd = self.prime(p)?;
        Ok(PermModuleSpec::new(&self.group, vec![pd.decomposition.clone()]).as_gmodule())
    }

    /// `(Z_{Σ,N}^×)^H` with trivial valuation at every prime of `Σ ∖ S`.
    pub fn sunits_for(&self, h: &Subgroup, s: &[u64]) -> Result<(FgAbGroup, AbHom), OracleError> {
        let n = self.sunits.rank();
        let mut rows = IntMatrix::zeros(0, n);
        let mut orders = Vec::new();
        for g in h.generator_indices() {
            rows = rows.vstack(&self.sunits.action(g).sub(&IntMatrix::identity(n)));
            orders.extend(self.sunits.orders().iter().cloned());
        }
        for p in self.pool() {
            if s.contains(&p) {
                continue;
            }
            let v = self.full_valuation(p)?;
            orders.extend(std::iter::repeat(BigInt::zero()).take(v.rows()));
            rows = rows.vstack(&v);
        }
        for p in s {
            self.prime(*p)?;
        }
        let f = AbHom::new(self.sunits.abgroup().clone(), FgAbGroup::from_orders(&orders), rows);
        Ok(f.kernel())
    }

    /// Valuations of H-fixed S-units at the places of the fixed field of `H`
    /// above `p`, one row per double coset `HσD_p`: `u ↦ val_{w0}(σ⁻¹u)`.
    pub fn divisor_map(&self, h: &Subgroup, p: u64) -> Result<AbHom, OracleError> {
        let pd = self.prime(p)?;
        if pd.is_ramified() {
            return Err(OracleError::RamifiedPrime(p));
        }
        let d = DoubleCosetDecomp::new(h, &pd.decomposition);
        let rows: Vec<Vec<BigInt>> = d
            .reps
            .iter()
            .map(|&sigma| row_times(&pd.vals, self.sunits.action(self.group.inv(sigma))))
            .collect();
        let rows = if rows.is_empty() { IntMatrix::zeros(0, self.sunits.rank()) } else { IntMatrix::from_rows(&rows) };
        let (fixed, incl) = self.sunits.invariants(h);
        Ok(AbHom::new(fixed, FgAbGroup::free(d.len()), rows.mul(&incl.matrix)))
    }

    /// Do the classes of the primes above `S` generate the class group of
    /// the fixed field of every given subgroup?
    pub fn spanning_check(&self, blocks: &[Subgroup], s: &[u64]) -> Result<bool, OracleError> {
        for h in blocks {
            let cd = self.class_data_for(h).ok_or_else(|| OracleError::MissingClassData(describe(h)))?;
            let k = cd.clgroup.invariant_factors().len();
            let mut cols = Vec::new();
            for (p, classes) in &cd.prime_classes {
                if s.contains(p) {
                    cols.extend(classes.iter().cloned());
                }
            }
            let cl = cd.clgroup.as_fg();
            let f = AbHom::new(FgAbGroup::free(cols.len()), cl, IntMatrix::from_cols(k, &cols));
            if !f.is_surjective() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Does this fixture provide what `requests` asks for?
    pub fn covers(&self, requests: &FieldRequests) -> Result<(), OracleError> {
        if requests.group != GroupSpec::of(&self.group) {
            return Err(violation("group", "fixture group differs from the requested group"));
        }
        for p in &requests.pool {
            self.prime(*p)?;
        }
        for sg in requests.subgroups.iter().filter(|s| s.level == 0) {
            let h = subgroup_of(&self.group, &sg.generators, "requested subgroup")?;
            if self.class_data_for(&h).is_none() {
                return Err(OracleError::MissingClassData(describe(&h)));
            }
        }
        Ok(())
    }

    /// Cross-validation against a module: same group, `m | t`, and the
    /// module character is the fixture character read modulo `m`.
    pub fn check_module(&self, group: &PermGroup, chi: &CycloCharacter, exponent: &BigInt) -> Result<(), GModuleError> {
        if GroupSpec::of(group) != GroupSpec::of(&self.group) {
            return Err(GModuleError::GroupTooSmall("module and fixture use different groups".into()));
        }
        if !self.torsion_order().is_multiple_of(exponent) {
            return Err(GModuleError::GroupTooSmall(format!(
                "the field has {} roots of unity, which is not a multiple of the module exponent {exponent}",
                self.torsion_order()
            )));
        }
        let reduced = self.chi.reduced(exponent)?;
        let mine = chi.reduced(exponent)?;
        if reduced != mine {
            return Err(GModuleError::GroupTooSmall("module character disagrees with the fixture character".into()));
        }
        Ok(())
    }
}

fn row_times(row: &[BigInt], m: &IntMatrix) -> Vec<BigInt> {
    (0..m.cols()).map(|j| row.iter().enumerate().map(|(i, r)| r * &m[(i, j)]).sum()).collect()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of a positive integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        if (&n % d).is_zero() {
            out.push(d);
            while (&n % d).is_zero() {
                n /= d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(u64::try_from(n).expect("small prime factor"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRequest {
    pub level: usize,
    pub block: usize,
    pub index: usize,
    pub generators: Vec<Perm>,
}

/// What a fixture must provide for a given resolution and prime pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRequests {
    pub version: u32,
    pub group: GroupSpec,
    pub chi: CycloCharacter,
    #[serde(with = "format::bigint")]
    pub exponent: BigInt,
    #[serde(with = "format::prime_vec")]
    pub pool: Vec<u64>,
    pub subgroups: Vec<SubgroupRequest>,
}

impl FieldRequests {
    pub fn new(r: &Resolution, pool: &[u64]) -> FieldRequests {
        let ds = crate::resolution::dual_sequence(r);
        FieldRequests::from_dual(&ds, pool)
    }

    pub fn from_dual(ds: &DualSequence, pool: &[u64]) -> FieldRequests {
        let mut pool: Vec<u64> = pool.iter().copied().chain(prime_divisors(&ds.exponent)).collect();
        pool.sort_unstable();
        pool.dedup();
        let subgroups = ds
            .levels
            .iter()
            .enumerate()
            .flat_map(|(level, p)| {
                p.blocks().iter().enumerate().map(move |(block, h)| SubgroupRequest {
                    level,
                    block,
                    index: h.index(),
                    generators: h.generators().to_vec(),
                })
            })
            .collect();
        FieldRequests {
            version: format::VERSION,
            group: GroupSpec::of(ds.group()),
            chi: ds.chi.clone(),
            exponent: ds.exponent.clone(),
            pool,
            subgroups,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::vec_from_i64;

    const Q_TRIVIAL: &str = include_str!("../fixtures/q-trivial.json");
    const Q_ZETA3: &str = include_str!("../fixtures/q-zeta3.json");
    const Q_SQRT_M5: &str = include_str!("../fixtures/q-sqrt-5.json");

    #[test]
    fn bundled_fixtures_load() {
        let q = ArithmeticFixture::from_json(Q_TRIVIAL).unwrap();
        assert_eq!(q.sunits.rank(), 4);
        assert_eq!(q.torsion_order(), &BigInt::from(2));
        assert_eq!(q.pool(), vec![2, 3, 5]);
        ArithmeticFixture::from_json(Q_ZETA3).unwrap();
        ArithmeticFixture::from_json(Q_SQRT_M5).unwrap();
    }

    #[test]
    fn inconsistent_character_is_rejected() {
        let mut f: FixtureFile = serde_json::from_str(Q_ZETA3).unwrap();
        f.chi.values[0] = BigInt::from(1);
        assert!(matches!(ArithmeticFixture::from_file(f), Err(OracleError::InvariantViolation { .. })));
    }

    #[test]
    fn sunits_for_examples() {
        let q = ArithmeticFixture::from_json(Q_TRIVIAL).unwrap();
        let h = Subgroup::whole(&q.group);
        let (all, _) = q.sunits_for(&h, &[2, 3, 5]).unwrap();
        assert_eq!(all.structure().free_rank, 3);
        let (v, incl) = q.sunits_for(&h, &[2]).unwrap();
        assert_eq!(v.structure().free_rank, 1);
        assert_eq!(v.structure().torsion, vec_from_i64(&[2]));
        for j in 0..incl.matrix.cols() {
            let c = incl.matrix.col(j);
            assert!(c[2].is_zero() && c[3].is_zero());
        }

        let z = ArithmeticFixture::from_json(Q_ZETA3).unwrap();
        let (v, incl) = z.sunits_for(&Subgroup::whole(&z.group), &[3]).unwrap();
        assert_eq!(v.structure().free_rank, 1);
        assert_eq!(v.structure().torsion, vec_from_i64(&[2]));
        // The free generator is -3 or 3 up to torsion: π² times a root of unity.
        let free_cols: Vec<Vec<BigInt>> = (0..incl.matrix.cols()).map(|j| incl.matrix.col(j)).filter(|c| !c[1].is_zero()).collect();
        assert!(free_cols.iter().all(|c| c[1] == BigInt::from(2) || c[1] == BigInt::from(-2)));
    }

    #[test]
    fn divisor_map_examples() {
        let q = ArithmeticFixture::from_json(Q_TRIVIAL).unwrap();
        let h = Subgroup::whole(&q.group);
        let d2 = q.divisor_map(&h, 2).unwrap();
        assert_eq!(d2.matrix, IntMatrix::from_rows(&[vec![0, 1, 0, 0]]).mul(&q.sunits.invariants(&h).1.matrix));
        let z = ArithmeticFixture::from_json(Q_ZETA3).unwrap();
        assert_eq!(
            z.divisor_map(&Subgroup::trivial(&z.group), 3).unwrap_err(),
            OracleError::RamifiedPrime(3)
        );
    }

    #[test]
    fn spanning_examples() {
        let q = ArithmeticFixture::from_json(Q_TRIVIAL).unwrap();
        assert!(q.spanning_check(&[Subgroup::whole(&q.group)], &[]).unwrap());
        let k = ArithmeticFixture::from_json(Q_SQRT_M5).unwrap();
        let triv = Subgroup::trivial(&k.group);
        assert!(k.spanning_check(&[triv.clone()], &[2]).unwrap());
        assert!(k.spanning_check(&[triv.clone()], &[3]).unwrap());
        assert!(!k.spanning_check(&[triv.clone()], &[5]).unwrap());
        assert!(!k.spanning_check(&[triv], &[]).unwrap());
        let q2 = ArithmeticFixture::from_json(Q_TRIVIAL).unwrap();
        let other = PermGroup::cyclic(2);
        assert!(matches!(
            q2.spanning_check(&[Subgroup::trivial(&other)], &[2]),
            Err(OracleError::MissingClassData(_))
        ));
    }

    #[test]
    fn valuations_are_equivariant() {
        for text in [Q_TRIVIAL, Q_ZETA3, Q_SQRT_M5] {
            let f = ArithmeticFixture::from_json(text).unwrap();
            for p in f.pool() {
                let v = f.full_valuation(p).unwrap();
                let w = f.place_module(p).unwrap();
                for k in 0..f.group.generators().len() {
                    let g = f.group.generator_index(k);
                    assert_eq!(v.mul(f.sunits.action(g)), w.action(g).mul(&v));
                }
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(prime_divisors(&BigInt::from(12)), vec![2, 3]);
        assert_eq!(prime_divisors(&BigInt::from(1)), Vec::<u64>::new());
        assert!(is_prime(97) && !is_prime(91));
    }
}
