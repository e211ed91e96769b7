//! Structure tables and reports as JSON.
use thinloop::ffield::Field;
use thinloop::grading::params_from_mu3;
use thinloop::liealg::StructureTable;
use thinloop::reproduce::finite;

fn main() {
    let f = Field::new(3, 2, None).unwrap();
    let params = params_from_mu3(&f, f.t()).unwrap();
    let r = finite(&f, 1, &params).unwrap();

    let json = serde_json::to_string(&r.table.to_json()).unwrap();
    println!("table: {} bytes", json.len());
    let back = StructureTable::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    println!(
        "round trip equal: {}",
        back.to_json().brackets == r.table.to_json().brackets && back.labels() == r.table.labels()
    );

    let report = r.run(12).unwrap();
    println!("{}", serde_json::to_string_pretty(&report.to_json(&f)).unwrap());
}
