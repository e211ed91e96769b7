//! In characteristic 2, H(2;(1,n);Phi(1)) with eps = 1 is W(1;n+1)^(1).
use thinloop::cartan::char_two_isomorphism;
use thinloop::liealg::check_structure_map;
use thinloop::reproduce::{describe, mixed};

fn main() {
    for n in 1..=3 {
        let (src, dst, map) = char_two_isomorphism(n).unwrap();
        println!(
            "n={n}: dim {} -> {}, homomorphism {}",
            src.table.dim(),
            dst.dim(),
            check_structure_map(&src.table, &dst, &map)
        );
    }

    let r = mixed(2, 1, 2).unwrap();
    let report = r.run(r.default_depth()).unwrap();
    for rec in report.scan.records.iter().take(5) {
        println!("  degree {:>2}: {}", rec.degree, describe(r.field(), rec.kind));
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}
