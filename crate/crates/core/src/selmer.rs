//! H¹_S from S-unit data, choice of `S`, local conditions and the Selmer
//! group they cut out.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{solve_integer, AbHom, FgAbGroup, FinAbGroup, IntMatrix};
use crate::format;
use crate::gmodule::GModuleError;
use crate::oracle::{prime_divisors, ArithmeticFixture, CustomConditionData, OracleError};
use crate::permgrp::Subgroup;
use crate::resolution::DualSequence;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SelmerError {
    #[error("prime {0} is required in S but is not in the fixture prime pool")]
    MissingPrime(u64),
    #[error("the prime pool cannot make the class groups spanned")]
    PoolExhausted,
    #[error("invalid S: {0}")]
    InvalidS(String),
    #[error("the level-{level} map sends S-unit generator {generator} outside the S-units")]
    SUnitLeak { level: usize, generator: usize },
    #[error("prime {0} divides the exponent of the module")]
    DividesM(u64),
    #[error("prime {0} ramifies in the splitting field")]
    RamifiedPrime(u64),
    #[error("local condition data needed at {0}")]
    NeedsLocalData(u64),
    #[error("no local condition labelled {label:?} at {prime}")]
    UnknownCondition { prime: u64, label: String },
    #[error("local condition not well defined: {0}")]
    NotWellDefined(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Module(#[from] GModuleError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum Condition {
    Unramified,
    Relaxed,
    Custom { label: String },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Unramified => write!(f, "unramified"),
            Condition::Relaxed => write!(f, "relaxed"),
            Condition::Custom { label } => write!(f, "custom:{label}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEntry {
    #[serde(with = "format::prime")]
    pub prime: u64,
    #[serde(flatten)]
    pub condition: Condition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub version: u32,
    pub entries: Vec<SystemEntry>,
}

/// Local conditions at finitely many primes; every other prime is unramified.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelmerSystem {
    pub entries: BTreeMap<u64, Condition>,
}

impl SelmerSystem {
    pub fn unramified() -> SelmerSystem {
        SelmerSystem::default()
    }

    pub fn with(mut self, p: u64, c: Condition) -> SelmerSystem {
        self.entries.insert(p, c);
        self
    }

    pub fn condition(&self, p: u64) -> Condition {
        self.entries.get(&p).cloned().unwrap_or(Condition::Unramified)
    }

    pub fn from_file(f: &SystemFile) -> Result<SelmerSystem, String> {
        format::check_version(f.version, "selmer system")?;
        let mut entries = BTreeMap::new();
        for e in &f.entries {
            if entries.insert(e.prime, e.condition.clone()).is_some() {
                return Err(format!("prime {} appears twice", e.prime));
            }
        }
        Ok(SelmerSystem { entries })
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            version: format::VERSION,
            entries: self.entries.iter().map(|(&prime, c)| SystemEntry { prime, condition: c.clone() }).collect(),
        }
    }

    fn non_unramified(&self) -> Vec<u64> {
        self.entries.iter().filter(|(_, c)| **c != Condition::Unramified).map(|(&p, _)| p).collect()
    }
}

/// S-units of the fields attached to one level, inside `⊕_j U`.
#[derive(Clone, Debug)]
pub struct SUnitLevel {
    pub ambient: FgAbGroup,
    pub group: FgAbGroup,
    /// Columns: generators of `group` in ambient coordinates.
    pub incl: IntMatrix,
}

impl SUnitLevel {
    fn build(fx: &ArithmeticFixture, blocks: &[Subgroup], s: &[u64]) -> Result<SUnitLevel, SelmerError> {
        let mut groups = Vec::with_capacity(blocks.len());
        let mut incls = Vec::with_capacity(blocks.len());
        for h in blocks {
            let (g, incl) = fx.sunits_for(h, s)?;
            groups.push(g);
            incls.push(incl.matrix);
        }
        let ambient = FgAbGroup::direct_sum(&vec![fx.sunits.abgroup().clone(); blocks.len()]);
        Ok(SUnitLevel { ambient, group: FgAbGroup::direct_sum(&groups), incl: IntMatrix::block_diag(&incls) })
    }

    fn as_hom(&self) -> AbHom {
        AbHom::new(self.group.clone(), self.ambient.clone(), self.incl.clone())
    }
}

/// Matrix of `op` from level `a` to level `b` in S-unit coordinates.
fn restrict(a: &SUnitLevel, b: &SUnitLevel, op: &IntMatrix, level: usize) -> Result<IntMatrix, SelmerError> {
    let target = b.as_hom();
    let image = op.mul(&a.incl);
    let mut cols = Vec::with_capacity(image.cols());
    for j in 0..image.cols() {
        let y = target.solve(&image.col(j)).ok_or(SelmerError::SUnitLeak { level, generator: j })?;
        cols.push(y);
    }
    Ok(IntMatrix::from_cols(b.group.ngens(), &cols))
}

#[derive(Clone, Debug)]
pub struct H1SGroup {
    pub s: Vec<u64>,
    pub group: FinAbGroup,
    /// One representative per cyclic factor, in level-1 ambient coordinates.
    pub reps: Vec<Vec<BigInt>>,
    /// Generators of `B¹_S` in level-1 ambient coordinates.
    pub b1_gens: Vec<Vec<BigInt>>,
    pub levels: Vec<SUnitLevel>,
    /// `Z¹_S` and its generators in level-1 S-unit coordinates.
    pub z1: FgAbGroup,
    pub z1_incl: IntMatrix,
    /// `Z¹_S / B¹_S` on the generators of `z1`.
    pub quotient: FgAbGroup,
    /// Representatives in `z1` coordinates.
    pub rep_coords: Vec<Vec<BigInt>>,
}

impl H1SGroup {
    pub fn order(&self) -> BigInt {
        self.group.order()
    }

    /// `z1` coordinates to level-1 ambient coordinates.
    pub fn to_ambient(&self, z: &[BigInt]) -> Vec<BigInt> {
        let a1 = self.z1_incl.mul_vec(z);
        self.levels[1].ambient.reduce(&self.levels[1].incl.mul_vec(&a1))
    }

    /// `z1` coordinates of an ambient level-1 vector lying in `Z¹_S`.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.levels[1].incl.mul(&self.z1_incl);
        AbHom::new(self.z1.clone(), self.levels[1].ambient.clone(), m).solve(x)
    }

    /// Is the ambient vector `x` (assumed in `Z¹_S`) a coboundary?
    pub fn is_coboundary(&self, x: &[BigInt]) -> bool {
        match self.class_of(x) {
            Some(z) => self.quotient.is_zero(&z),
            None => false,
        }
    }

    /// Canonical ambient representative of the class with `z1` coordinates `z`.
    pub fn canonical(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.to_ambient(&self.quotient.reduce(z))
    }
}

/// Computes `H¹_S = Z¹_S / B¹_S`.
pub fn h1s(ds: &DualSequence, fx: &ArithmeticFixture, s: &[u64]) -> Result<H1SGroup, SelmerError> {
    let mut s: Vec<u64> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    for &p in &s {
        fx.prime(p).map_err(|_| SelmerError::MissingPrime(p))?;
    }
    assert!(ds.d.len() >= 2, "H¹_S needs a sequence of depth two");
    let levels = (0..3)
        .map(|i| SUnitLevel::build(fx, ds.levels[i].blocks(), &s))
        .collect::<Result<Vec<_>, _>>()?;
    let op0 = ds.d[0].operator_matrix(&fx.sunits);
    let op1 = ds.d[1].operator_matrix(&fx.sunits);
    let y0 = restrict(&levels[0], &levels[1], &op0, 0)?;
    let y1 = restrict(&levels[1], &levels[2], &op1, 1)?;
    let d1 = AbHom::new(levels[1].group.clone(), levels[2].group.clone(), y1);
    let (z1, z1_hom) = d1.kernel();
    let into_a1 = AbHom::new(z1.clone(), levels[1].group.clone(), z1_hom.matrix.clone());
    let mut b_cols = Vec::with_capacity(y0.cols());
    for j in 0..y0.cols() {
        let c = into_a1.solve(&y0.col(j)).ok_or(SelmerError::SUnitLeak { level: 0, generator: j })?;
        b_cols.push(c);
    }
    let rel = z1.relations().hstack(&IntMatrix::from_cols(z1.ngens(), &b_cols));
    let quotient = FgAbGroup::new(z1.ngens(), rel);
    let dec = quotient.decompose();
    if dec.factors.iter().any(Zero::is_zero) {
        return Err(SelmerError::InvalidS("H¹_S came out infinite; the fixture is inconsistent with the module".into()));
    }
    let b1_gens = (0..y0.cols())
        .map(|j| levels[1].ambient.reduce(&levels[1].incl.mul_vec(&y0.col(j))))
        .collect();
    let mut h = H1SGroup {
        s,
        group: FinAbGroup::from_cyclic_orders(&dec.factors),
        reps: Vec::new(),
        b1_gens,
        levels,
        z1,
        z1_incl: z1_hom.matrix,
        quotient,
        rep_coords: Vec::new(),
    };
    let (coords, reps) = canonical_reps(&h, &dec.factors, dec.gens);
    h.rep_coords = coords;
    h.reps = reps;
    Ok(h)
}

/// Reduces generators, then orders generators of equal order by support.
fn canonical_reps(h: &H1SGroup, factors: &[BigInt], gens: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut items: Vec<(BigInt, Vec<BigInt>, Vec<BigInt>)> = factors
        .iter()
        .zip(gens)
        .map(|(d, z)| {
            let z = h.quotient.reduce(&z);
            let amb = h.to_ambient(&z);
            (d.clone(), z, amb)
        })
        .collect();
    items.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| support_key(&a.2).cmp(&support_key(&b.2))));
    items.into_iter().map(|(_, z, a)| (z, a)).unzip()
}

fn support_key(v: &[BigInt]) -> (Vec<bool>, Vec<BigInt>) {
    (v.iter().map(Zero::is_zero).collect(), v.to_vec())
}

/// Divisor data at an unramified prime `p ∤ m`: the level-1 valuation map on
/// ambient coordinates and the image of `d_0` on the level-0 divisor lattice.
pub struct DivisorData {
    pub val1: IntMatrix,
    pub image0: IntMatrix,
}

impl DivisorData {
    pub fn new(ds: &DualSequence, fx: &ArithmeticFixture, p: u64) -> Result<DivisorData, SelmerError> {
        if (&ds.exponent % p).is_zero() {
            return Err(SelmerError::DividesM(p));
        }
        if fx.prime(p)?.is_ramified() {
            return Err(SelmerError::RamifiedPrime(p));
        }
        let w = fx.place_module(p)?;
        let v = fx.full_valuation(p)?;
        let val1 = IntMatrix::block_diag(&vec![v; ds.levels[1].num_blocks()]);
        let incl0: Vec<IntMatrix> = ds.levels[0].blocks().iter().map(|h| w.invariants(h).1.matrix).collect();
        let image0 = ds.d[0].operator_matrix(&w).mul(&IntMatrix::block_diag(&incl0));
        Ok(DivisorData { val1, image0 })
    }

    /// `(⊕_j Z[G/D_p]) / im d_0`, the target of the ramification test.
    pub fn target(&self) -> FgAbGroup {
        FgAbGroup::new(self.image0.rows(), self.image0.clone())
    }

    pub fn is_unramified(&self, x: &[BigInt]) -> bool {
        let div = self.val1.mul_vec(x);
        div.iter().all(Zero::is_zero) || solve_integer(&self.image0, &div).is_some()
    }
}

/// Is the class of `x` (ambient level-1 coordinates) unramified at `p`?
pub fn unramified_test(x: &[BigInt], p: u64, ds: &DualSequence, fx: &ArithmeticFixture) -> Result<bool, SelmerError> {
    Ok(DivisorData::new(ds, fx, p)?.is_unramified(x))
}

/// Checks that a custom condition is compatible with the sequence and
/// induces a map on classes.
pub fn validate_custom(cond: &CustomConditionData, h: &H1SGroup, ds: &DualSequence) -> Result<(), SelmerError> {
    let bad = |msg: String| Err(SelmerError::NotWellDefined(format!("at {} ({}): {msg}", cond.prime, cond.label)));
    if cond.level1_blocks.as_slice() != ds.levels[1].blocks() {
        return bad("level-1 blocks differ from the resolution".into());
    }
    if cond.map.cols() != h.levels[1].ambient.ngens() {
        return bad("map width does not match the level-1 S-unit coordinates".into());
    }
    let av = cond.target_group();
    let rel = cond.map.mul(h.levels[1].ambient.relations());
    if (0..rel.cols()).any(|j| !av.is_zero(&rel.col(j))) {
        return bad("map does not kill the torsion relation".into());
    }
    let lq = cond.quotient_group();
    for b in &h.b1_gens {
        if !lq.is_zero(&cond.map.mul_vec(b)) {
            return bad("a coboundary maps outside the local subgroup".into());
        }
    }
    let exp = cond.target.iter().fold(BigInt::one(), |a, d| a.lcm(d));
    if !ds.exponent.is_multiple_of(&exp) {
        return bad(format!("exponent {exp} of the local group does not divide {}", ds.exponent));
    }
    Ok(())
}

/// Primes that must be in `S`: non-unramified entries and divisors of `m`.
pub fn required_primes(system: &SelmerSystem, ds: &DualSequence) -> Vec<u64> {
    let mut req = system.non_unramified();
    req.extend(prime_divisors(&ds.exponent));
    req.sort_unstable();
    req.dedup();
    req
}

/// Smallest required set, enlarged greedily in pool order until the primes
/// above `S` span the level-0 class groups.
pub fn select_s(system: &SelmerSystem, ds: &DualSequence, fx: &ArithmeticFixture) -> Result<Vec<u64>, SelmerError> {
    let pool = fx.pool();
    let mut s = required_primes(system, ds);
    if let Some(&p) = s.iter().find(|p| !pool.contains(p)) {
        return Err(SelmerError::MissingPrime(p));
    }
    let blocks = ds.levels[0].blocks();
    for p in pool {
        if fx.spanning_check(blocks, &s)? {
            return Ok(s);
        }
        if !s.contains(&p) {
            s.push(p);
            s.sort_unstable();
        }
    }
    if fx.spanning_check(blocks, &s)? {
        Ok(s)
    } else {
        Err(SelmerError::PoolExhausted)
    }
}

/// How the condition at one prime of `S` was evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDiagnostic {
    #[serde(with = "format::prime")]
    pub prime: u64,
    pub condition: String,
    /// `unramified-test`, `fixture:<label>` or `none`.
    pub method: String,
    /// Whether each H¹_S generator satisfies the condition.
    pub generator_passes: Vec<bool>,
}

struct LocalMap {
    diag: LocalDiagnostic,
    /// From level-1 ambient coordinates.
    map: IntMatrix,
    target: FgAbGroup,
}

#[derive(Clone, Debug)]
pub struct SelmerGroup {
    pub group: FinAbGroup,
    pub reps: Vec<Vec<BigInt>>,
    pub system: SelmerSystem,
    pub s_used: Vec<u64>,
    pub h1s: H1SGroup,
    pub diagnostics: Vec<LocalDiagnostic>,
}

fn custom_map(cond: &CustomConditionData, h: &H1SGroup, ds: &DualSequence) -> Result<(IntMatrix, FgAbGroup), SelmerError> {
    validate_custom(cond, h, ds)?;
    Ok((cond.map.clone(), cond.quotient_group()))
}

fn local_map(
    p: u64,
    cond: &Condition,
    h: &H1SGroup,
    ds: &DualSequence,
    fx: &ArithmeticFixture,
) -> Result<Option<LocalMap>, SelmerError> {
    let (method, map, target) = match cond {
        Condition::Relaxed => return Ok(None),
        Condition::Custom { label } => {
            let c = fx
                .local_condition(p, label)
                .ok_or_else(|| SelmerError::UnknownCondition { prime: p, label: label.clone() })?;
            let (m, t) = custom_map(c, h, ds)?;
            (format!("fixture:{label}"), m, t)
        }
        Condition::Unramified => match DivisorData::new(ds, fx, p) {
            Ok(d) => {
                let t = d.target();
                ("unramified-test".to_string(), d.val1, t)
            }
            Err(SelmerError::DividesM(_)) | Err(SelmerError::RamifiedPrime(_)) => {
                let c = fx.local_condition(p, "unramified").ok_or(SelmerError::NeedsLocalData(p))?;
                let (m, t) = custom_map(c, h, ds)?;
                ("fixture:unramified".to_string(), m, t)
            }
            Err(e) => return Err(e),
        },
    };
    let generator_passes = h.reps.iter().map(|r| target.is_zero(&map.mul_vec(r))).collect();
    Ok(Some(LocalMap {
        diag: LocalDiagnostic { prime: p, condition: cond.to_string(), method, generator_passes },
        map,
        target,
    }))
}

/// `Sel_L ⊆ H¹_S`: the classes meeting every local condition at primes of `S`.
pub fn selmer_group(
    system: &SelmerSystem,
    ds: &DualSequence,
    fx: &ArithmeticFixture,
    s_override: Option<&[u64]>,
) -> Result<SelmerGroup, SelmerError> {
    let s = match s_override {
        Some(s) => {
            let mut s = s.to_vec();
            s.sort_unstable();
            s.dedup();
            if let Some(p) = required_primes(system, ds).into_iter().find(|p| !s.contains(p)) {
                return Err(SelmerError::InvalidS(format!("{p} is required in S")));
            }
            if !fx.spanning_check(ds.levels[0].blocks(), &s)? {
                return Err(SelmerError::InvalidS("the primes above S do not span the class groups".into()));
            }
            s
        }
        None => select_s(system, ds, fx)?,
    };
    let h = h1s(ds, fx, &s)?;
    let mut maps = Vec::new();
    let mut diagnostics = Vec::new();
    for &p in &s {
        let cond = system.condition(p);
        match local_map(p, &cond, &h, ds, fx)? {
            Some(lm) => {
                diagnostics.push(lm.diag.clone());
                maps.push(lm);
            }
            None => diagnostics.push(LocalDiagnostic {
                prime: p,
                condition: cond.to_string(),
                method: "none".into(),
                generator_passes: vec![true; h.reps.len()],
            }),
        }
    }
    let to_ambient = h.levels[1].incl.mul(&h.z1_incl);
    let mut stacked = IntMatrix::zeros(0, h.z1.ngens());
    let mut targets = Vec::new();
    for lm in &maps {
        stacked = stacked.vstack(&lm.map.mul(&to_ambient));
        targets.push(lm.target.clone());
    }
    let f = AbHom::new(h.quotient.clone(), FgAbGroup::direct_sum(&targets), stacked);
    let (sel, incl) = f.kernel();
    let dec = sel.decompose();
    let gens: Vec<Vec<BigInt>> = dec.gens.iter().map(|g| incl.matrix.mul_vec(g)).collect();
    let (_, reps) = canonical_reps(&h, &dec.factors, gens);
    Ok(SelmerGroup {
        group: FinAbGroup::from_cyclic_orders(&dec.factors),
        reps,
        system: system.clone(),
        s_used: s,
        h1s: h,
        diagnostics,
    })
}

/// Product notation for an ambient vector over the named S-unit generators,
/// one bracketed factor per block when there are several.
pub fn render_element(v: &[BigInt], names: &[String]) -> String {
    let n = names.len();
    let blocks: Vec<String> = v
        .chunks(n)
        .map(|chunk| {
            let terms: Vec<String> = chunk
                .iter()
                .zip(names)
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, name)| if e.is_one() { name.clone() } else { format!("{name}^{e}") })
                .collect();
            if terms.is_empty() {
                "1".to_string()
            } else {
                terms.join("·")
            }
        })
        .collect();
    if blocks.len() == 1 {
        blocks.into_iter().next().expect("one block")
    } else {
        format!("[{}]", blocks.join(" | "))
    }
}
