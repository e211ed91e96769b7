//! The monomial grading of H(2;(1,2);Phi(1)) over F_3 and its loop algebra.
use thinloop::reproduce::{describe, mixed};

fn main() {
    let r = mixed(3, 1, 2).unwrap();
    println!("{}: dim {}, grading mod {}", r.title, r.table.dim(), r.degmap.modulus);
    let report = r.run(r.default_depth()).unwrap();
    println!("dims {:?}", report.dims);
    for rec in &report.scan.records {
        println!("  diamond {:>2} at degree {:>3}: {}", rec.ordinal, rec.degree, describe(r.field(), rec.kind));
    }
    match &report.k {
        Ok(k) => println!("k = {}", k.k),
        Err(e) => println!("k unavailable: {e}"),
    }
    println!("mismatches against prediction: {:?}", r.compare(&report));
}
