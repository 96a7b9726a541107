//! Brute-force oracles shared by the integration tests. They work in the
//! full tensor power and never use the orbit-sum formula.
#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use zzschur::divpow::{cross_angle, expand_y, DividedPower, ProductTable, Tensor};
use zzschur::superalg::{Parity, Side};

/// Multiply two tensors factorwise with the super sign, through a product table.
pub fn tensor_product(prod: &ProductTable<'_>, a: &Tensor, pa: &[Parity], v: &Tensor, pv: &[Parity]) -> Tensor {
    let mut out = Tensor::new();
    for (s, x) in a {
        for (t, y) in v {
            let cross = match prod.side {
                Side::Left => cross_angle(s, pa, t, pv),
                Side::Right => cross_angle(t, pv, s, pa),
            };
            let base = if cross % 2 == 1 { -(x * y) } else { x * y };
            let mut stack: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), base)];
            for k in 0..s.len() {
                let p = prod.get(s[k], t[k]);
                let mut next = Vec::new();
                for (tt, c) in &stack {
                    for (i, w) in p {
                        let mut t2 = tt.clone();
                        t2.push(*i as u32);
                        next.push((t2, c * w));
                    }
                }
                stack = next;
            }
            for (k, c) in stack {
                *out.entry(k).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `η^a y_c` by expanding both factors completely.
pub fn naive_product(
    prod: &ProductTable<'_>,
    acting: &DividedPower,
    target: &DividedPower,
    a: usize,
    c: usize,
) -> Vec<(usize, BigRational)> {
    let ya = expand_y(&acting.orbits[a], &acting.carrier);
    let yc = expand_y(&target.orbits[c], &target.carrier);
    let pa: Vec<Parity> = acting.carrier.iter().map(|b| b.parity).collect();
    let pv: Vec<Parity> = target.carrier.iter().map(|b| b.parity).collect();
    let t = tensor_product(prod, &ya, &pa, &yc, &pv);
    target.reexpress(&t).expect("product of symmetric tensors is symmetric")
}

pub fn as_rational(c: &[(usize, BigInt)]) -> Vec<(usize, BigRational)> {
    c.iter().map(|(i, v)| (*i, BigRational::from_integer(v.clone()))).collect()
}

pub fn one() -> BigInt {
    BigInt::one()
}
