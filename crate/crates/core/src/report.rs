//! Human-readable and machine-readable reports.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::abgroup::FinAbGroup;
use crate::format;
use crate::oracle::ArithmeticFixture;
use crate::resolution::Resolution;
use crate::selmer::{render_element, H1SGroup, LocalDiagnostic, SelmerGroup, SystemFile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub name: String,
    #[serde(with = "format::bigint")]
    pub order: BigInt,
    #[serde(with = "format::bigint_vec")]
    pub vector: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub structure: String,
    #[serde(with = "format::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(with = "format::bigint")]
    pub order: BigInt,
    pub generators: Vec<GeneratorReport>,
}

impl GroupReport {
    pub fn new(group: &FinAbGroup, reps: &[Vec<BigInt>], names: &[String]) -> GroupReport {
        GroupReport {
            structure: group.to_string(),
            invariant_factors: group.invariant_factors().to_vec(),
            order: group.order(),
            generators: group
                .invariant_factors()
                .iter()
                .zip(reps)
                .map(|(d, v)| GeneratorReport { name: render_element(v, names), order: d.clone(), vector: v.clone() })
                .collect(),
        }
    }

    fn line(&self, label: &str) -> String {
        if self.generators.is_empty() {
            format!("{label} ≅ {}", self.structure)
        } else {
            let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
            format!("{label} ≅ {}; generators: {}", self.structure, names.join(", "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1sReport {
    pub version: u32,
    pub fixture: String,
    #[serde(with = "format::prime_vec")]
    pub s: Vec<u64>,
    pub h1s: GroupReport,
}

impl H1sReport {
    pub fn new(h: &H1SGroup, fx: &ArithmeticFixture) -> H1sReport {
        H1sReport {
            version: format::VERSION,
            fixture: fx.name().to_string(),
            s: h.s.clone(),
            h1s: GroupReport::new(&h.group, &h.reps, fx.names()),
        }
    }

    pub fn text(&self) -> String {
        format!("S = {}\n{}\n", prime_set(&self.s), self.h1s.line("H¹_S"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelmerReport {
    pub version: u32,
    pub fixture: String,
    pub system: SystemFile,
    #[serde(with = "format::prime_vec")]
    pub s: Vec<u64>,
    pub h1s: GroupReport,
    pub selmer: GroupReport,
    pub diagnostics: Vec<LocalDiagnostic>,
}

impl SelmerReport {
    pub fn new(sel: &SelmerGroup, fx: &ArithmeticFixture) -> SelmerReport {
        SelmerReport {
            version: format::VERSION,
            fixture: fx.name().to_string(),
            system: sel.system.to_file(),
            s: sel.s_used.clone(),
            h1s: GroupReport::new(&sel.h1s.group, &sel.h1s.reps, fx.names()),
            selmer: GroupReport::new(&sel.group, &sel.reps, fx.names()),
            diagnostics: sel.diagnostics.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "S = {}", prime_set(&self.s)).unwrap();
        writeln!(out, "{}", self.h1s.line("H¹_S")).unwrap();
        writeln!(out, "{}", self.selmer.line("Sel")).unwrap();
        for d in &self.diagnostics {
            let passes: Vec<&str> = d.generator_passes.iter().map(|&b| if b { "pass" } else { "fail" }).collect();
            writeln!(out, "  at {}: {} via {} [{}]", d.prime, d.condition, d.method, passes.join(" ")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub rank: usize,
    /// Index of each block stabilizer.
    pub block_indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub version: u32,
    pub group_order: usize,
    pub dual_module: String,
    pub ranks: Vec<usize>,
    pub levels: Vec<LevelReport>,
}

impl ResolutionReport {
    pub fn new(r: &Resolution) -> ResolutionReport {
        ResolutionReport {
            version: format::VERSION,
            group_order: r.group().order(),
            dual_module: r.mstar.abgroup().structure().to_string(),
            ranks: r.ranks(),
            levels: r
                .levels
                .iter()
                .enumerate()
                .map(|(level, p)| LevelReport {
                    level,
                    rank: p.rank(),
                    block_indices: p.blocks().iter().map(|h| h.index()).collect(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "|G| = {}, M* ≅ {}", self.group_order, self.dual_module).unwrap();
        let ranks: Vec<String> = self.ranks.iter().map(ToString::to_string).collect();
        writeln!(out, "ranks: ({})", ranks.join(", ")).unwrap();
        for l in &self.levels {
            let idx: Vec<String> = l.block_indices.iter().map(|i| format!("Z[G/H] with [G:H] = {i}")).collect();
            writeln!(out, "  P_{}: {}", l.level, if idx.is_empty() { "0".into() } else { idx.join(" + ") }).unwrap();
        }
        out
    }
}

pub fn prime_set(s: &[u64]) -> String {
    let v: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}
