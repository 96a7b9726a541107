mod common;

use common::{as_rational, naive_product};
use zzschur::divpow::{DividedPower, ProductTable};
use zzschur::superalg::{matrix_superalgebra, zigzag, Side};

fn compare_regular(l: usize, n: usize, d: usize) {
    let z = zigzag(l).unwrap();
    let m = matrix_superalgebra(&z, n).unwrap();
    let dp = DividedPower::new(&m.basis, d);
    let prod = ProductTable { table: &m.table, acting_stride: m.dim(), target_stride: 1, side: Side::Left };
    for a in 0..dp.dim() {
        for c in 0..dp.dim() {
            let fast = zzschur::divpow::orbit_sum_product(&prod, &dp, &dp, a, c).unwrap();
            let slow = naive_product(&prod, &dp, &dp, a, c);
            assert_eq!(as_rational(&fast), slow, "l={l} n={n} d={d} a={} c={}", dp.name(a), dp.name(c));
        }
    }
}

#[test]
fn orbit_formula_matches_expansion_z1_d2() {
    compare_regular(1, 1, 2);
}

#[test]
fn orbit_formula_matches_expansion_z1_d3() {
    compare_regular(1, 1, 3);
}

#[test]
fn orbit_formula_matches_expansion_m2z1_d2() {
    compare_regular(1, 2, 2);
}

#[test]
fn orbit_formula_matches_expansion_z2_d3() {
    compare_regular(2, 1, 3);
}

/// Replace every 𝔠-vector c by c + s·e for a fixed 𝔞-vector e, expanding
/// factorwise; the substitution is even, so no signs appear.
fn substitute(t: &zzschur::divpow::Tensor, cs: &[u32], e: u32, s: i64) -> zzschur::divpow::Tensor {
    use num_bigint::BigInt;
    let mut out = zzschur::divpow::Tensor::new();
    for (k, v) in t {
        let mut stack: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), v.clone())];
        for &x in k {
            let mut next = Vec::new();
            for (p, c) in &stack {
                let mut p1 = p.clone();
                p1.push(x);
                next.push((p1, c.clone()));
                if cs.contains(&x) {
                    let mut p2 = p.clone();
                    p2.push(e);
                    next.push((p2, c * BigInt::from(s)));
                }
            }
            stack = next;
        }
        for (p, c) in stack {
            *out.entry(p).or_default() += c;
        }
    }
    out.retain(|_, v| v != &BigInt::from(0));
    out
}

#[test]
fn lattice_is_independent_of_the_c_complement() {
    use zzschur::superalg::CalClass;
    for (l, n, d) in [(1, 1, 2), (1, 1, 3), (2, 1, 3), (1, 2, 2)] {
        let m = matrix_superalgebra(&zigzag(l).unwrap(), n).unwrap();
        let dp = DividedPower::new(&m.basis, d);
        let cs: Vec<u32> = (0..m.dim() as u32).filter(|&k| m.basis[k as usize].class == CalClass::C).collect();
        let e = (0..m.dim() as u32).find(|&k| m.basis[k as usize].class == CalClass::A).unwrap();
        for s in [1, -1] {
            for b in 0..dp.dim() {
                let moved = substitute(&dp.expand_y(b), &cs, e, s);
                assert!(dp.reexpress_integral(&moved).is_ok(), "l={l} n={n} d={d} s={s} b={}", dp.name(b));
            }
        }
        // moving an 𝔞-vector by a 𝔠-vector changes the lattice
        let broken = (0..dp.dim()).any(|b| dp.reexpress_integral(&substitute(&dp.expand_y(b), &[e], cs[0], 1)).is_err());
        assert!(broken, "l={l} n={n} d={d}");
    }
}
