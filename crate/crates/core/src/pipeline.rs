//! The batch workflow: resolve, emit field requests, compute H¹_S and the
//! Selmer group, with cross-validation of all inputs.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::cocycle::verify_torsion_exactness;
use crate::files::{read_json, ModuleFile, ResolutionFile};
use crate::gmodule::{CycloCharacter, GModule};
use crate::oracle::{load_fixture, ArithmeticFixture, FieldRequests};
use crate::report::{prime_set, ResolutionReport};
use crate::resolution::{dual_sequence, resolve, DualSequence, Resolution};
use crate::selmer::{self, Condition, SelmerGroup, SelmerSystem, SystemFile};
use crate::Error;

pub fn load_module(path: impl AsRef<Path>) -> Result<(GModule, CycloCharacter), Error> {
    read_json::<ModuleFile>(path)?.load()
}

pub fn load_resolution(path: impl AsRef<Path>) -> Result<Resolution, Error> {
    let r = read_json::<ResolutionFile>(path)?.load()?;
    r.verify()?;
    Ok(r)
}

pub fn load_system(path: impl AsRef<Path>) -> Result<SelmerSystem, Error> {
    SelmerSystem::from_file(&read_json::<SystemFile>(path)?).map_err(Error::Schema)
}

pub fn fixture(path: impl AsRef<Path>) -> Result<ArithmeticFixture, Error> {
    Ok(load_fixture(path)?)
}

/// Resolves, verifies the resolution and checks torsion exactness for every
/// `2 <= n <= torsion_bound`.
pub fn resolve_checked(m: &GModule, chi: &CycloCharacter, depth: usize, torsion_bound: u64) -> Result<Resolution, Error> {
    let r = resolve(m, chi, depth)?;
    r.verify()?;
    if depth >= 2 {
        let ds = dual_sequence(&r);
        for n in 2..=torsion_bound {
            verify_torsion_exactness(&ds, &BigInt::from(n))
                .map_err(|c| Error::TorsionCheck(format!("n = {n}: {c:?}")))?;
        }
    }
    Ok(r)
}

/// The module and fixture must share the group and the character, and every
/// custom condition must exist in the fixture.
pub fn cross_validate(ds: &DualSequence, fx: &ArithmeticFixture, system: Option<&SelmerSystem>) -> Result<(), Error> {
    fx.check_module(ds.group(), &ds.chi, &ds.exponent)?;
    if let Some(sys) = system {
        for (&p, c) in &sys.entries {
            if let Condition::Custom { label } = c {
                if fx.local_condition(p, label).is_none() {
                    return Err(selmer::SelmerError::UnknownCondition { prime: p, label: label.clone() }.into());
                }
            }
        }
    }
    Ok(())
}

pub fn field_requests(r: &Resolution, pool: &[u64]) -> FieldRequests {
    FieldRequests::new(r, pool)
}

pub fn h1s(ds: &DualSequence, fx: &ArithmeticFixture, s: Option<&[u64]>) -> Result<selmer::H1SGroup, Error> {
    cross_validate(ds, fx, None)?;
    let s = match s {
        Some(s) => s.to_vec(),
        None => selmer::select_s(&SelmerSystem::unramified(), ds, fx)?,
    };
    Ok(selmer::h1s(ds, fx, &s)?)
}

pub fn selmer(
    ds: &DualSequence,
    fx: &ArithmeticFixture,
    system: &SelmerSystem,
    s: Option<&[u64]>,
) -> Result<SelmerGroup, Error> {
    cross_validate(ds, fx, Some(system))?;
    Ok(selmer::selmer_group(system, ds, fx, s)?)
}

/// A step-by-step account of a Selmer computation.
pub fn explain(
    r: &Resolution,
    fx: &ArithmeticFixture,
    system: &SelmerSystem,
    s: Option<&[u64]>,
) -> Result<String, Error> {
    let ds = dual_sequence(r);
    let mut out = String::new();
    writeln!(out, "module: {} with exponent {}", r.module.abgroup().structure(), ds.exponent).unwrap();
    writeln!(out, "resolution of the dual:").unwrap();
    out.push_str(&ResolutionReport::new(r).text());
    writeln!(out, "fixture: {} ({})", fx.name(), fx.file.field).unwrap();
    writeln!(out, "fixture prime pool: {}", prime_set(&fx.pool())).unwrap();
    writeln!(out, "primes required in S: {}", prime_set(&selmer::required_primes(system, &ds))).unwrap();
    let sel = selmer(&ds, fx, system, s)?;
    let how = if s.is_some() { "given" } else { "selected" };
    writeln!(out, "S ({how}): {}", prime_set(&sel.s_used)).unwrap();
    writeln!(out, "H¹_S ≅ {}", sel.h1s.group).unwrap();
    for d in &sel.diagnostics {
        writeln!(out, "condition at {}: {} ({})", d.prime, d.condition, d.method).unwrap();
        for (i, pass) in d.generator_passes.iter().enumerate() {
            let name = selmer::render_element(&sel.h1s.reps[i], fx.names());
            writeln!(out, "  {name}: {}", if *pass { "satisfies" } else { "violates" }).unwrap();
        }
    }
    writeln!(out, "unramified outside S by construction").unwrap();
    writeln!(out, "Sel ≅ {}", sel.group).unwrap();
    Ok(out)
}
