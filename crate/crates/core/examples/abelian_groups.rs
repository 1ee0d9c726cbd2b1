//! Smith and Hermite normal forms, kernels and quotients of finitely
//! generated abelian groups.

use selmer::abgroup::{hnf_column, integer_kernel, snf, vec_from_i64, AbHom, FgAbGroup, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec_from_i64(&[2, 4, 4]), vec_from_i64(&[-6, 6, 12]), vec_from_i64(&[10, -4, -16])]);
    let s = snf(&a);
    println!("A =\n{a:?}");
    println!("Smith diagonal: {:?}", (0..3).map(|i| s.d[(i, i)].to_string()).collect::<Vec<_>>());
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);

    println!("column HNF: {:?}", hnf_column(&a));
    println!("kernel basis: {:?}", integer_kernel(&a));

    // Z^3 modulo the columns of A.
    let q = FgAbGroup::new(3, a.clone());
    println!("Z^3 / A ≅ {}", q.structure());

    // Multiplication by 2 on Z/4 ⊕ Z/6.
    let g = FgAbGroup::from_orders(&vec_from_i64(&[4, 6]));
    let two = AbHom::new(g.clone(), g.clone(), IntMatrix::identity(2).scale(&2.into()));
    let (ker, incl) = two.kernel();
    println!("ker(2 on Z/4 ⊕ Z/6) ≅ {} via {:?}", ker.structure(), incl.matrix);
    println!("coker ≅ {}", two.image_quotient().0.structure());
}
