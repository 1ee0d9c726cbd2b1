//! The file-based workflow: module file to resolution and field-requests
//! files, then a Selmer report from a fixture and a system file.

use std::fs;

use selmer::files::{to_json, ResolutionFile};
use selmer::pipeline;
use selmer::report::SelmerReport;
use selmer::resolution::dual_sequence;

fn main() {
    let root = env!("CARGO_MANIFEST_DIR");
    let (m, chi) = pipeline::load_module(format!("{root}/data/modules/cubic.json")).unwrap();
    let r = pipeline::resolve_checked(&m, &chi, 2, 9).unwrap();

    let out = std::env::temp_dir().join("selmer-pipeline-example");
    fs::create_dir_all(&out).unwrap();
    fs::write(out.join("resolution.json"), to_json(&ResolutionFile::of(&r))).unwrap();
    fs::write(out.join("field-requests.json"), to_json(&pipeline::field_requests(&r, &[2, 5]))).unwrap();
    println!("wrote {}", out.display());

    let r = pipeline::load_resolution(out.join("resolution.json")).unwrap();
    let fx = pipeline::fixture(format!("{root}/fixtures/q-zeta3.json")).unwrap();
    let sys = pipeline::load_system(format!("{root}/data/systems/relaxed-3.json")).unwrap();
    let sel = pipeline::selmer(&dual_sequence(&r), &fx, &sys, None).unwrap();
    print!("{}", SelmerReport::new(&sel, &fx).text());
    print!("{}", to_json(&SelmerReport::new(&sel, &fx)));
}
