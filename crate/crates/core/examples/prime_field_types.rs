//! Degenerate gradings over the prime field: sigma = 0 and eps = 0.
use thinloop::liealg::subalgebra_generated;
use thinloop::reproduce::{describe, eps_zero, sigma_zero};

fn main() {
    let r = sigma_zero(5, 1).unwrap();
    let x = r.hint.x.clone();
    let y = r.hint.y.clone();
    let gen = subalgebra_generated(&r.table, &[x, y]);
    println!("{}: X and Y generate a subalgebra of dim {}", r.title, gen.dim());
    let report = r.run(r.default_depth()).unwrap();
    println!("  mismatches: {:?}", r.compare(&report));

    for ratio in 1..4 {
        let e = eps_zero(5, 1, ratio).unwrap();
        let r = &e.reproduction;
        let report = r.run(r.default_depth()).unwrap();
        let kinds: Vec<String> =
            (2..=6).filter_map(|t| report.record(t)).map(|x| describe(r.field(), x.kind)).collect();
        println!("{}: centre dim {}, diamonds {}", r.title, e.center.dim(), kinds.join(", "));
    }
}
