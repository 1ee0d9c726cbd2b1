//! H¹_S for the Kummer module over Q and over Q(sqrt(-5)), and for Z/3 over
//! Q computed inside Q(zeta_3).

use num_bigint::BigInt;
use selmer::abgroup::vec_from_i64;
use selmer::gmodule::{CycloCharacter, GModule};
use selmer::oracle::load_fixture;
use selmer::resolution::{dual_sequence, resolve};
use selmer::selmer::{h1s, render_element};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let run = |fixture: &str, m: u32, chi: &[i64], mod_chi: u32, s: &[u64]| {
        let fx = load_fixture(format!("{dir}/{fixture}")).unwrap();
        let module = GModule::trivial(fx.group.clone(), vec_from_i64(&[m as i64])).unwrap();
        let chi = CycloCharacter::new(BigInt::from(mod_chi), chi.iter().map(|&x| BigInt::from(x)).collect());
        let ds = dual_sequence(&resolve(&module, &chi, 2).unwrap());
        let h = h1s(&ds, &fx, s).unwrap();
        let reps: Vec<String> = h.reps.iter().map(|v| render_element(v, fx.names())).collect();
        println!("{}: Z/{m}, S = {s:?}: H¹_S ≅ {} generated by {}", fx.name(), h.group, reps.join(", "));
    };
    run("q-trivial.json", 2, &[], 2, &[2]);
    run("q-trivial.json", 2, &[], 2, &[2, 3, 5]);
    run("q-sqrt-5.json", 2, &[1], 2, &[2]);
    run("q-sqrt-5.json", 2, &[1], 2, &[2, 3, 5]);
    run("q-zeta3.json", 3, &[2], 3, &[3]);
}
