//! Enumeration, cosets, stabilizers and double cosets.

use selmer::permgrp::{orbit_stabilizer, DoubleCosetDecomp, Perm, PermGroup, Subgroup};

fn main() {
    let d4 = PermGroup::dihedral(4);
    println!("|D4| = {}", d4.order());

    let (orbit, stab) = orbit_stabilizer(&d4, |g| d4.element(g).apply(0));
    println!("orbit of 0: {orbit:?}, stabilizer of order {}", stab.order());

    let h = Subgroup::generated(&d4, vec![Perm::from_cycles(4, &[&[1, 3]]).unwrap()]).unwrap();
    let cosets = h.left_cosets();
    println!("[D4 : H] = {}, coset representatives {:?}", h.index(), cosets.reps);
    println!("H normal: {}", h.is_normal_in(&Subgroup::whole(&d4)));

    let dc = DoubleCosetDecomp::new(&h, &h);
    for (i, &r) in dc.reps.iter().enumerate() {
        println!("H {:?} H has {} elements", d4.element(r), dc.members[i].len());
    }

    let s3 = PermGroup::symmetric(3);
    let a3 = Subgroup::generated(&s3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
    println!("A3 normal in S3: {}", a3.is_normal_in(&Subgroup::whole(&s3)));
}
