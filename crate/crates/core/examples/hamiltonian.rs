//! The three Hamiltonian algebras of height (1,1) over F_5.
use thinloop::cartan::{build_h2_phi1, build_h2_phi_tau_derived, build_h2_second_derived};
use thinloop::ffield::Field;
use thinloop::liealg::{derived_subalgebra, validate_table};
use thinloop::linalg::Subspace;

fn main() {
    let f = Field::prime(5).unwrap();
    let second = build_h2_second_derived(&f, 1, 1).unwrap();
    let tau = build_h2_phi_tau_derived(&f, 1, 1).unwrap();
    for (name, alg) in [("H(2;n)^(2)", &second), ("H(2;n;Phi(tau))^(1)", &tau)] {
        println!("{name}: dim {}, Jacobi {}", alg.table.dim(), validate_table(&alg.table).passed());
    }

    for eps in [f.one(), f.zero()] {
        let h = build_h2_phi1(&f, 1, 1, eps).unwrap();
        let d = derived_subalgebra(&h.table, &Subspace::full(h.table.dim())).unwrap();
        println!(
            "H(2;n;Phi(1)) eps={}: dim {}, derived dim {}, Jacobi {}",
            f.format(eps),
            h.table.dim(),
            d.dim(),
            validate_table(&h.table).passed()
        );
    }

    let h = build_h2_phi1(&f, 1, 1, f.one()).unwrap();
    let y = h.monomial(0, 1).unwrap();
    let ybar = h.monomial(0, 4).unwrap();
    let b = h.table.bracket_vec(&y, &ybar);
    let terms: Vec<String> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{} {}", f.format(*c), h.table.label(i)))
        .collect();
    println!("{{y, y-bar}} = {}", terms.join(" + "));
}
