mod oracle;

use oracle::{DivPoly, Ring};
use std::sync::Arc;
use thinloop::cartan::*;
use thinloop::ffield::{Field, FieldElement};
use thinloop::liealg::{check_structure_map, validate_table, StructureTable};
use thinloop::linalg::unit_vector;

fn column(t: &StructureTable, a: usize, b: usize) -> Vec<FieldElement> {
    t.bracket_vec(&unit_vector(t.dim(), a), &unit_vector(t.dim(), b))
}

#[test]
fn witt_constants_match_divided_powers() {
    for (p, n) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let f = Field::prime(p).unwrap();
        let t = build_w1n(&f, n).unwrap();
        let ring = Ring::new(p as u64);
        let q = (p as i64).pow(n);
        assert_eq!(t.dim() as i64, q);
        for i in -1..=q - 2 {
            for j in -1..=q - 2 {
                let got = column(&t, (i + 1) as usize, (j + 1) as usize);
                let c = ring.witt(i + 1, j + 1);
                let mut want = vec![f.zero(); t.dim()];
                if i + j <= q - 2 && i + j >= -1 {
                    want[(i + j + 1) as usize] = f.int(c as i64);
                } else {
                    // W(1;n) is closed inside W(1)
                    assert_eq!(c, 0, "p={p} n={n} [E_{i}, E_{j}] leaves the box");
                }
                assert_eq!(got, want, "p={p} n={n} [E_{i}, E_{j}]");
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Second,
    Tau,
    One(u64),
}

fn oracle_bracket(ring: &Ring, kind: Kind, a: (u32, u32), b: (u32, u32), tau: (u32, u32)) -> DivPoly {
    let f = ring.mono(a.0 as i64, a.1 as i64, 1);
    let g = ring.mono(b.0 as i64, b.1 as i64, 1);
    match kind {
        Kind::Second => {
            let mut r = ring.poisson(&f, &g);
            r.0.remove(&(0, 0));
            r
        }
        Kind::Tau => ring.poisson_phi_tau(&f, &g, (tau.0 as i64, tau.1 as i64)),
        Kind::One(eps) => ring.poisson_phi1(&f, &g, tau.0 as i64, eps),
    }
}

fn check_hamiltonian(field: &Arc<Field>, n1: u32, n2: u32, kind: Kind) {
    let p = field.characteristic();
    let alg = match kind {
        Kind::Second => build_h2_second_derived(field, n1, n2).unwrap(),
        Kind::Tau => build_h2_phi_tau_derived(field, n1, n2).unwrap(),
        Kind::One(eps) => build_h2_phi1(field, n1, n2, field.int(eps as i64)).unwrap(),
    };
    let ring = Ring::new(p as u64);
    let tau = alg.tau();
    let mons = alg.monomials().to_vec();
    for (a, &ma) in mons.iter().enumerate() {
        for (b, &mb) in mons.iter().enumerate() {
            let want = oracle_bracket(&ring, kind, ma, mb, tau);
            let mut dense = vec![field.zero(); mons.len()];
            for (&(x, y), &c) in &want.0 {
                let idx = alg
                    .index(x as u32, y as u32)
                    .unwrap_or_else(|| panic!("{kind:?} p={p} n=({n1},{n2}): {ma:?},{mb:?} -> x^({x})y^({y})"));
                dense[idx] = field.int(c as i64);
            }
            assert_eq!(column(&alg.table, a, b), dense, "{kind:?} p={p} n=({n1},{n2}) {ma:?} {mb:?}");
        }
    }
}

#[test]
fn hamiltonian_constants_match_poisson_oracle() {
    for (p, n1, n2) in [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 1, 2), (5, 1, 1)] {
        let f = Field::prime(p).unwrap();
        check_hamiltonian(&f, n1, n2, Kind::Second);
        check_hamiltonian(&f, n1, n2, Kind::Tau);
        check_hamiltonian(&f, n1, n2, Kind::One(1));
        check_hamiltonian(&f, n1, n2, Kind::One(0));
    }
}

#[test]
fn dimension_formulas() {
    for (p, n) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let f = Field::prime(p).unwrap();
        assert_eq!(build_w1n(&f, n).unwrap().dim(), p.pow(n) as usize);
    }
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        for (n1, n2) in [(1, 1), (1, 2), (2, 1)] {
            let size = p.pow(n1 + n2) as usize;
            assert_eq!(build_h2_second_derived(&f, n1, n2).unwrap().table.dim(), size - 2);
            assert_eq!(build_h2_phi_tau_derived(&f, n1, n2).unwrap().table.dim(), size - 1);
            assert_eq!(build_h2_phi1(&f, n1, n2, f.one()).unwrap().table.dim(), size);
        }
    }
}

#[test]
fn phi_one_small_brackets() {
    let f = Field::prime(3).unwrap();
    let h = build_h2_phi1(&f, 1, 1, f.one()).unwrap();
    let br = |a: (u32, u32), b: (u32, u32)| {
        h.table.bracket_vec(&h.monomial(a.0, a.1).unwrap(), &h.monomial(b.0, b.1).unwrap())
    };
    let scaled = |m: (u32, u32), c: i64| {
        let mut v = h.monomial(m.0, m.1).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, f.int(c));
        }
        v
    };
    // {y, y-bar} = 2 x-bar y-bar and {1, y-bar} = -x-bar y
    assert_eq!(br((0, 1), (0, 2)), scaled((2, 2), 2));
    assert_eq!(br((0, 0), (0, 2)), scaled((2, 1), -1));
    // {x, y} = -1 (constant monomial survives in Phi(1))
    assert_eq!(br((1, 0), (0, 1)), scaled((0, 0), -1));
}

#[test]
fn n_and_n_prime_agree_off_the_axes() {
    let p = 3;
    let tau = 2i64;
    for i in 0..=2 * tau {
        for j in 0..=2 * tau {
            for k in 0..=2 * tau {
                for l in 0..=2 * tau {
                    let axis = (i == 0 && k == 0) || (j == 0 && l == 0);
                    if !axis {
                        assert_eq!(coeff_n(i, j, k, l, p), coeff_n_prime(i, j, k, l, p), "({i},{j},{k},{l})");
                    }
                }
            }
            // the exceptional coefficient is N'(0,j,0,l)
            for l in 0..=2 * tau {
                let ex = (binom_mod_p(j + l - 1, l, p) + p - binom_mod_p(j + l - 1, j, p)) % p;
                assert_eq!(coeff_n_prime(0, j, 0, l, p), ex);
            }
        }
    }
}

#[test]
fn eps_only_touches_pure_y_pairs() {
    for p in [3u32, 5] {
        let f = Field::prime(p).unwrap();
        let one = build_h2_phi1(&f, 1, 1, f.one()).unwrap();
        let zero = build_h2_phi1(&f, 1, 1, f.zero()).unwrap();
        let two = build_h2_phi1(&f, 1, 1, f.int(2)).unwrap();
        let mons = one.monomials().to_vec();
        for (a, ma) in mons.iter().enumerate() {
            for (b, mb) in mons.iter().enumerate() {
                let (x1, x0, x2) = (column(&one.table, a, b), column(&zero.table, a, b), column(&two.table, a, b));
                if ma.0 == 0 && mb.0 == 0 {
                    assert!(x0.iter().all(|c| c.is_zero()));
                    let doubled: Vec<FieldElement> = x1.iter().map(|&c| f.mul(c, f.int(2))).collect();
                    assert_eq!(x2, doubled);
                } else {
                    assert_eq!(x1, x0);
                    assert_eq!(x1, x2);
                }
            }
        }
    }
}

#[test]
fn zassenhaus_transition() {
    for (p, n) in [(3, 1), (3, 2), (5, 1), (2, 2), (2, 3)] {
        let fq = Field::new(p, n, None).unwrap();
        let w = build_w1n(&fq, n).unwrap();
        let g = build_zassenhaus_group(&fq).unwrap();
        let rows = zassenhaus_group_basis(&fq, n).unwrap();
        assert!(check_structure_map(&g, &w, &rows), "p={p} n={n}");
    }
}

#[test]
fn zassenhaus_group_constants() {
    // [e_a, e_b] = (b - a) e_{a+b}
    let f = Field::new(5, 2, None).unwrap();
    let g = build_zassenhaus_group(&f).unwrap();
    let els: Vec<FieldElement> = f.elements().collect();
    for (i, &a) in els.iter().enumerate() {
        for (j, &b) in els.iter().enumerate() {
            let mut want = vec![f.zero(); els.len()];
            let k = els.iter().position(|&c| c == f.add(a, b)).unwrap();
            want[k] = f.sub(b, a);
            assert_eq!(column(&g, i, j), want);
        }
    }
}

#[test]
fn albert_frank_tables() {
    let f = Field::new(3, 2, None).unwrap();
    let group: Vec<FieldElement> = f.elements().collect();
    let theta: Vec<FieldElement> = group.iter().map(|&a| f.sub(f.frobenius(a), a)).collect();
    let t = build_albert_frank(&f, &group, &theta).unwrap();
    assert!(validate_table(&t).passed());
    // the prime field is an additive subgroup
    let sub: Vec<FieldElement> = f.prime_elements().collect();
    let th: Vec<FieldElement> = sub.iter().map(|&a| f.mul(a, f.t())).collect();
    assert!(validate_table(&build_albert_frank(&f, &sub, &th).unwrap()).passed());
    let half = vec![f.zero(), f.one()];
    assert!(matches!(build_albert_frank(&f, &half, &[f.zero(), f.zero()]), Err(CartanError::NotAdditivelyClosed)));
}

#[test]
fn characteristic_two_isomorphism() {
    for n in 1..=3 {
        let (src, dst, map) = char_two_isomorphism(n).unwrap();
        assert_eq!(src.table.dim(), dst.dim());
        assert!(check_structure_map(&src.table, &dst, &map));
    }
}

#[test]
fn jacobi_on_small_tables() {
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        for t in [
            build_h2_second_derived(&f, 1, 1).unwrap().table,
            build_h2_phi_tau_derived(&f, 1, 1).unwrap().table,
            build_h2_phi1(&f, 1, 1, f.one()).unwrap().table,
            build_h2_phi1(&f, 1, 1, f.zero()).unwrap().table,
            build_w1n(&f, 1).unwrap(),
        ] {
            assert!(validate_table(&t).passed());
        }
    }
}
