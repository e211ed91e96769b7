//! W(1;2) over F_3 in both bases, and the transition matrix between them.
use thinloop::cartan::{build_w1n, build_zassenhaus_group, zassenhaus_group_basis};
use thinloop::ffield::Field;
use thinloop::liealg::{check_structure_map, validate_table};

fn main() {
    let f = Field::new(3, 2, None).unwrap();
    let w = build_w1n(&f, 2).unwrap();
    let report = validate_table(&w);
    println!("W(1;2): dim {}, Jacobi {} ({} triples)", w.dim(), report.passed(), report.triples_checked);

    let (e1, e2) = (w.basis(1), w.basis(2));
    let b = w.bracket(&e1, &e2).unwrap();
    let terms: Vec<String> = b.terms().iter().map(|(i, c)| format!("({}) {}", f.format(*c), w.label(*i))).collect();
    println!("[E_0, E_1] = {}", terms.join(" + "));

    let g = build_zassenhaus_group(&f).unwrap();
    let rows = zassenhaus_group_basis(&f, 2).unwrap();
    println!("e_alpha basis labels: {:?}", g.labels());
    println!("transition is a homomorphism: {}", check_structure_map(&g, &w, &rows));
}
