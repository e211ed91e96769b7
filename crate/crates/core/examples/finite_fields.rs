//! Arithmetic in F_9 and F_25 with the default moduli.
use thinloop::ffield::{combine_residues, Field};

fn main() {
    let f9 = Field::new(3, 2, None).unwrap();
    println!("F_9 modulus {:?}", f9.spec().modulus);
    let t = f9.t();
    println!("t^2 = {}", f9.format(f9.mul(t, t)));
    println!("t^3 = {}", f9.format(f9.frobenius(t)));
    println!("1/(1+t) = {}", f9.format(f9.inv(f9.add(f9.one(), t)).unwrap()));

    // Z^3 - Z - 1 has no roots anywhere in F_9
    let poly = [f9.int(-1), f9.int(-1), f9.zero(), f9.one()];
    println!("roots of Z^3 - Z - 1 in F_9: {:?}", f9.find_roots(&poly).unwrap());

    let f25 = Field::new(5, 2, None).unwrap();
    let a = f25.parse("2,3").unwrap();
    println!("in F_25: (2+3t)^24 = {}", f25.format(f25.pow(a, 24)));

    println!("combine_residues(1, 0; q=9, p=3) = {}", combine_residues(1, 0, 9, 3));
}
