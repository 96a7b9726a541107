//! Property checks driven by proptest with a fixed seed. Each function runs
//! one property with its own runner and returns the failure message.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use zzschur::divpow::{expand_y, seq_orbits, Tensor};
use zzschur::exact_linalg::ExactMatrix;
use zzschur::schur::{star, SchurAlgebra};
use zzschur::superalg::{zigzag, CalClass, Comb, Parity};
use zzschur::{Fp, Rational};

pub const SEED: u64 = 0x5eed_2024;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

fn algebra(l: usize, n: usize, d: usize) -> &'static SchurAlgebra {
    static CACHE: OnceLock<Vec<((usize, usize, usize), SchurAlgebra)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut v = Vec::new();
        for (l, n, d) in [(1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1), (1, 1, 3), (2, 1, 3)] {
            v.push(((l, n, d), SchurAlgebra::new(&zigzag(l).unwrap(), n, d).unwrap()));
        }
        v
    });
    &all.iter().find(|(k, _)| *k == (l, n, d)).expect("cached size").1
}

fn mul(s: &SchurAlgebra, x: &Comb, y: &Comb) -> Comb {
    s.mult_comb(x, y).unwrap()
}

/// (ab)c = a(bc) on random basis triples.
pub fn associativity(cases: u32) -> Result<(), String> {
    let sizes = [(1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)];
    let strat = (0..sizes.len(), any::<u64>(), any::<u64>(), any::<u64>());
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&strat, |(k, a, b, c)| {
            let (l, n, d) = sizes[k];
            let s = algebra(l, n, d);
            let dim = s.dim() as u64;
            let (a, b, c) = ((a % dim) as usize, (b % dim) as usize, (c % dim) as usize);
            let ab = s.mult(a, b).unwrap();
            let left = mul(s, &ab, &vec![(c, BigInt::one())]);
            let bc = s.mult(b, c).unwrap();
            let right = mul(s, &vec![(a, BigInt::one())], &bc);
            prop_assert_eq!(left, right, "l={} n={} d={} a={} b={} c={}", l, n, d, a, b, c);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ on random basis elements of T^Z(1,d), d = 2, 3.
pub fn coassociativity(cases: u32) -> Result<(), String> {
    let strat = (2usize..=3, 1usize..=2, any::<u64>());
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&strat, |(d, l, x)| {
            let s = algebra(l, 1, d);
            let x = (x % s.dim() as u64) as usize;
            let pieces = s.graded_pieces();
            let sub: Vec<SchurAlgebra> = (0..=d).map(|c| SchurAlgebra::new(&s.base, 1, c).unwrap()).collect();
            let sub_pieces: Vec<_> = sub.iter().map(|t| t.graded_pieces()).collect();
            let mut left = BTreeMap::<(usize, usize, usize, usize, usize), BigInt>::new();
            let mut right = left.clone();
            for (c, i, j, v) in s.coproduct(x, &pieces).unwrap() {
                for (c2, i2, j2, w) in sub[c].coproduct(i, &sub_pieces[c]).unwrap() {
                    *left.entry((c2, c - c2, i2, j2, j)).or_insert_with(BigInt::zero) += &v * &w;
                }
                for (c2, i2, j2, w) in sub[d - c].coproduct(j, &sub_pieces[d - c]).unwrap() {
                    *right.entry((c, c2, i, i2, j2)).or_insert_with(BigInt::zero) += &v * &w;
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            prop_assert_eq!(left, right, "l={} d={} x={}", l, d, x);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

/// y_{b1} ⋆ y_{b2} = ± Π_{a ∈ 𝔞} C(m(a), m_1(a)) y_{b1 + b2}, and zero when
/// an odd element repeats. The sign counts odd pairs (u ∈ b1, v ∈ b2) with
/// v < u.
pub fn star_law(cases: u32) -> Result<(), String> {
    let z = zigzag(2).unwrap();
    let parity: Vec<Parity> = z.basis.iter().map(|b| b.parity).collect();
    let orbits: Vec<Vec<Vec<u32>>> = (0..=3).map(|d| seq_orbits(&z.basis, d)).collect();
    let strat = (0usize..=3, 0usize..=3, any::<u64>(), any::<u64>());
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&strat, |(d1, d2, i, j)| {
            let b1 = &orbits[d1][(i % orbits[d1].len() as u64) as usize];
            let b2 = &orbits[d2][(j % orbits[d2].len() as u64) as usize];
            let got = star(&expand_y(b1, &z.basis), &expand_y(b2, &z.basis), &parity);
            let mut joint = b1.clone();
            joint.extend(b2);
            joint.sort_unstable();
            let repeated_odd = joint.windows(2).any(|w| w[0] == w[1] && parity[w[0] as usize].is_odd());
            if repeated_odd {
                prop_assert!(got.is_empty());
                return Ok(());
            }
            let mut coeff = BigInt::one();
            let mut seen = joint.clone();
            seen.dedup();
            for x in seen {
                if z.basis[x as usize].class == CalClass::A {
                    let m = joint.iter().filter(|&&y| y == x).count();
                    let m1 = b1.iter().filter(|&&y| y == x).count();
                    coeff *= binomial(m, m1);
                }
            }
            let inversions = b1
                .iter()
                .filter(|&&u| parity[u as usize].is_odd())
                .map(|&u| b2.iter().filter(|&&v| parity[v as usize].is_odd() && v < u).count())
                .sum::<usize>();
            if inversions % 2 == 1 {
                coeff = -coeff;
            }
            let expected: Tensor = expand_y(&joint, &z.basis).into_iter().map(|(k, v)| (k, v * &coeff)).collect();
            prop_assert_eq!(got, expected, "b1={:?} b2={:?}", b1, b2);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// y_b is fixed by every signed place permutation.
pub fn expand_y_invariance(cases: u32) -> Result<(), String> {
    let z = zigzag(2).unwrap();
    let parity: Vec<Parity> = z.basis.iter().map(|b| b.parity).collect();
    let orbits: Vec<Vec<Vec<u32>>> = (0..=4).map(|d| seq_orbits(&z.basis, d)).collect();
    let strat = (2usize..=4, any::<u64>(), any::<u64>());
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&strat, |(d, i, k)| {
            let b = &orbits[d][(i % orbits[d].len() as u64) as usize];
            let y = expand_y(b, &z.basis);
            let k = (k % (d as u64 - 1)) as usize;
            let swapped: Tensor = y
                .iter()
                .map(|(t, c)| {
                    let mut t2 = t.clone();
                    t2.swap(k, k + 1);
                    let odd = parity[t[k] as usize].is_odd() && parity[t[k + 1] as usize].is_odd();
                    (t2, if odd { -c.clone() } else { c.clone() })
                })
                .collect();
            prop_assert_eq!(swapped, y, "b={:?} k={}", b, k);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
}

/// gcd of the r x r minors, the product of the first r invariant factors.
fn minor_gcd(m: &[Vec<i64>], r: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.len(), r) {
        for cols in subsets(m[0].len(), r) {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn rank_over<F: zzschur::Field>(m: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<F>> = m.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
    ExactMatrix::from_dense(&rows).rank()
}

/// rank over 𝔽_p equals the rank r over ℚ exactly when p does not divide
/// the gcd of the r x r minors; smaller otherwise.
pub fn base_change_rank(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r));
    let mut runner = TestRunner::new(config(cases));
    runner
        .run(&strat, |m| {
            let rq = rank_over::<Rational>(&m);
            let g = minor_gcd(&m, rq);
            for (p, rp) in [(2i64, rank_over::<Fp<2>>(&m)), (3, rank_over::<Fp<3>>(&m)), (5, rank_over::<Fp<5>>(&m))] {
                let divisible = (&g % BigInt::from(p)).is_zero();
                prop_assert!(rp <= rq);
                prop_assert_eq!(rp == rq, !divisible, "m={:?} p={}", m, p);
            }
            prop_assert!(!g.is_zero());
            Ok(())
        })
        .map_err(|e: proptest::test_runner::TestError<Vec<Vec<i64>>>| e.to_string())
}
