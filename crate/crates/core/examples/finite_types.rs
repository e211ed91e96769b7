//! Finite gradings over F_25 for every admissible third diamond type.
use thinloop::ffield::Field;
use thinloop::grading::params_from_mu3;
use thinloop::reproduce::finite;

fn main() {
    let f = Field::new(5, 2, None).unwrap();
    let mut checked = 0;
    for mu3 in f.elements().filter(|&a| !f.in_prime_field(a)) {
        let Ok(params) = params_from_mu3(&f, mu3) else { continue };
        let r = finite(&f, 1, &params).unwrap();
        let report = r.run(r.default_depth()).unwrap();
        let types: Vec<String> =
            (2..=6).filter_map(|t| report.record(t)).map(|rec| thinloop::reproduce::describe(&f, rec.kind)).collect();
        let ok = r.compare(&report).is_empty();
        checked += 1;
        if checked <= 4 {
            println!("mu3 = {}: {} ... {}", f.format(mu3), types.join(", "), if ok { "ok" } else { "MISMATCH" });
        } else if !ok {
            println!("mu3 = {}: MISMATCH", f.format(mu3));
        }
    }
    println!("{checked} values of mu3 checked");
}
