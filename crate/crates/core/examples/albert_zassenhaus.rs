//! Albert-Zassenhaus algebras on F_9 for theta = 0 and theta(a) = a^3 - a.
use thinloop::cartan::build_albert_frank;
use thinloop::ffield::{Field, FieldElement};
use thinloop::liealg::{derived_subalgebra, validate_table};
use thinloop::linalg::Subspace;

fn main() {
    let f = Field::new(3, 2, None).unwrap();
    let group: Vec<FieldElement> = f.elements().collect();
    let zero = vec![f.zero(); group.len()];
    let frob: Vec<FieldElement> = group.iter().map(|&a| f.sub(f.frobenius(a), a)).collect();
    for (name, theta) in [("theta = 0", zero), ("theta = a^3 - a", frob)] {
        let t = build_albert_frank(&f, &group, &theta).unwrap();
        let d = derived_subalgebra(&t, &Subspace::full(t.dim())).unwrap();
        println!("{name}: dim {}, Jacobi {}, derived dim {}", t.dim(), validate_table(&t).passed(), d.dim());
    }

    // a non-additive theta is rejected
    let mut bad: Vec<FieldElement> = group.clone();
    bad[1] = f.add(bad[1], f.one());
    println!("non-additive theta: {}", build_albert_frank(&f, &group, &bad).unwrap_err());
}
