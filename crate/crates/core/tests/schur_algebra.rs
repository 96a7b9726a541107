mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use zzschur::combinat::{iota, unit_weight, Weight};
use zzschur::divpow::expand_y;
use zzschur::schur::{star, tau_power, weight_character, CharacterTable, SchurAlgebra};
use zzschur::superalg::{comb_normalize, comb_single, zigzag, zigzag_index, Comb, ZigzagElement};

fn apply_linear(f: impl Fn(usize) -> Comb, x: &Comb) -> Comb {
    let mut raw = Vec::new();
    for (i, c) in x {
        for (j, v) in f(*i) {
            raw.push((j, c * v));
        }
    }
    comb_normalize(raw)
}

fn product_table(s: &SchurAlgebra) -> Vec<Vec<Comb>> {
    (0..s.dim()).map(|a| (0..s.dim()).map(|b| s.mult(a, b).unwrap()).collect()).collect()
}

fn check_associative(l: usize, n: usize, d: usize) {
    let z = zigzag(l).unwrap();
    let s = SchurAlgebra::new(&z, n, d).unwrap();
    let t = product_table(&s);
    let m = |x: &Comb, y: &Comb| -> Comb {
        let mut raw = Vec::new();
        for (i, u) in x {
            for (j, v) in y {
                for (k, w) in &t[*i][*j] {
                    raw.push((*k, u * v * w));
                }
            }
        }
        comb_normalize(raw)
    };
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            if t[a][b].is_empty() {
                continue;
            }
            for c in 0..s.dim() {
                let left = m(&t[a][b], &comb_single(c));
                let right = m(&comb_single(a), &t[b][c]);
                assert_eq!(left, right, "({}*{})*{}", s.dp.name(a), s.dp.name(b), s.dp.name(c));
            }
        }
    }
}

#[test]
fn dimensions_match_orbit_counts() {
    let z = zigzag(1).unwrap();
    assert_eq!(SchurAlgebra::new(&z, 2, 1).unwrap().dim(), 20);
    assert_eq!(SchurAlgebra::new(&z, 2, 2).unwrap().dim(), 202);
    assert_eq!(SchurAlgebra::new(&z, 1, 2).unwrap().dim(), 13);
    assert_eq!(SchurAlgebra::new(&z, 3, 0).unwrap().dim(), 1);
}

#[test]
fn associative_small() {
    check_associative(1, 1, 2);
    check_associative(1, 2, 1);
    check_associative(1, 1, 3);
    check_associative(2, 1, 2);
}

#[test]
fn associative_two_by_two_degree_two() {
    check_associative(1, 2, 2);
}

#[test]
fn weight_idempotents_are_orthogonal_and_complete() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 2, 2).unwrap();
    let ws = s.all_weights();
    assert_eq!(ws.len(), 10);
    let etas: Vec<usize> = ws.iter().map(|w| s.eta_index(w).unwrap()).collect();
    for (i, &a) in etas.iter().enumerate() {
        for (j, &b) in etas.iter().enumerate() {
            let p = s.mult(a, b).unwrap();
            if i == j {
                assert_eq!(p, comb_single(a));
            } else {
                assert!(p.is_empty());
            }
        }
    }
    let one = s.one().unwrap();
    for x in 0..s.dim() {
        assert_eq!(s.mult_comb(&one, &comb_single(x)).unwrap(), comb_single(x));
        assert_eq!(s.mult_comb(&comb_single(x), &one).unwrap(), comb_single(x));
    }
}

#[test]
fn single_box_idempotent_is_matrix_unit() {
    let z = zigzag(2).unwrap();
    let s = SchurAlgebra::new(&z, 3, 1).unwrap();
    for i in 0..3 {
        for r in 0..3 {
            let idx = s.eta_index(&unit_weight(2, 3, i, r)).unwrap();
            assert_eq!(s.triples(idx), vec![(zigzag_index(2, ZigzagElement::E(i)), r, r)]);
        }
    }
}

#[test]
fn tau_is_an_anti_involution_fixing_weight_idempotents() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 2, 2).unwrap();
    let tau: Vec<Comb> = (0..s.dim()).map(|i| s.tau(i).unwrap()).collect();
    for i in 0..s.dim() {
        assert_eq!(apply_linear(|k| tau[k].clone(), &tau[i]), comb_single(i));
    }
    for w in s.all_weights() {
        let e = s.eta_index(&w).unwrap();
        assert_eq!(tau[e], comb_single(e));
    }
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            let lhs = apply_linear(|k| tau[k].clone(), &s.mult(a, b).unwrap());
            let mut rhs = s.mult_comb(&tau[b], &tau[a]).unwrap();
            if s.parity(a).is_odd() && s.parity(b).is_odd() {
                rhs = rhs.into_iter().map(|(k, v)| (k, -v)).collect();
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tau_on_single_factor_transposes() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 2, 1).unwrap();
    let a01 = zigzag_index(1, ZigzagElement::Arrow(0, 1));
    let a10 = zigzag_index(1, ZigzagElement::Arrow(1, 0));
    let x = s.index_of_triples(&[(a01, 0, 1)]).unwrap();
    let y = s.index_of_triples(&[(a10, 1, 0)]).unwrap();
    assert_eq!(s.tau(x).unwrap(), comb_single(y));
}

#[test]
fn tau_squared_cycle_is_fixed() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 1, 2).unwrap();
    let c0 = zigzag_index(1, ZigzagElement::Cycle(0));
    let x = s.index_of_triples(&[(c0, 0, 0), (c0, 0, 0)]).unwrap();
    assert_eq!(tau_power(&s.matrix, &s.dp, x).unwrap(), comb_single(x));
}

#[test]
fn tau_on_odd_pair_matches_expansion() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 1, 2).unwrap();
    let a01 = zigzag_index(1, ZigzagElement::Arrow(0, 1));
    let a10 = zigzag_index(1, ZigzagElement::Arrow(1, 0));
    let x = s.index_of_triples(&[(a01, 0, 0), (a10, 0, 0)]).unwrap();
    // τ⊗τ swaps the two odd entries; re-sorting costs one odd transposition
    let tau = s.tau(x).unwrap();
    let y = expand_y(&s.dp.orbits[x], &s.dp.carrier);
    let mut swapped = zzschur::divpow::Tensor::new();
    for (k, v) in y {
        let k2: Vec<u32> = k.iter().map(|&e| if e as usize == a01 { a10 as u32 } else { a01 as u32 }).collect();
        swapped.insert(k2, v);
    }
    assert_eq!(tau, s.dp.reexpress_integral(&swapped).unwrap());
    assert_eq!(tau, vec![(x, -BigInt::one())]);
}

fn coproduct_map(s: &SchurAlgebra, pieces: &[std::sync::Arc<zzschur::divpow::DividedPower>], x: usize) -> Vec<(usize, usize, usize, BigInt)> {
    s.coproduct(x, pieces).unwrap()
}

#[test]
fn coproduct_degree_one_is_primitive() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 2, 1).unwrap();
    let pieces = s.graded_pieces();
    for x in 0..s.dim() {
        let cp = coproduct_map(&s, &pieces, x);
        assert_eq!(cp, vec![(0, 0, x, BigInt::one()), (1, x, 0, BigInt::one())]);
    }
}

#[test]
fn coproduct_of_repeated_idempotent_has_unit_coefficients() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 1, 3).unwrap();
    let pieces = s.graded_pieces();
    let x = s.eta_index(&iota(1, 1, 0, &[3])).unwrap();
    let cp = coproduct_map(&s, &pieces, x);
    assert_eq!(cp.len(), 4);
    assert!(cp.iter().all(|(_, _, _, v)| v.is_one()));
}

#[test]
fn coproduct_is_coassociative() {
    let z = zigzag(1).unwrap();
    for d in 2..=3 {
        let s = SchurAlgebra::new(&z, 1, d).unwrap();
        let pieces = s.graded_pieces();
        // sub-coproducts on each graded piece
        let sub: Vec<SchurAlgebra> = (0..=d).map(|c| SchurAlgebra::new(&z, 1, c).unwrap()).collect();
        let sub_pieces: Vec<_> = sub.iter().map(|t| t.graded_pieces()).collect();
        for x in 0..s.dim() {
            let mut left = std::collections::BTreeMap::<(usize, usize, usize, usize, usize), BigInt>::new();
            let mut right = left.clone();
            for (c, i, j, v) in coproduct_map(&s, &pieces, x) {
                // (Δ ⊗ 1) Δ
                for (c2, i2, j2, w) in sub[c].coproduct(i, &sub_pieces[c]).unwrap() {
                    *left.entry((c2, c - c2, i2, j2, j)).or_insert_with(BigInt::zero) += &v * &w;
                }
                // (1 ⊗ Δ) Δ
                for (c2, i2, j2, w) in sub[d - c].coproduct(j, &sub_pieces[d - c]).unwrap() {
                    *right.entry((c, c2, i, i2, j2)).or_insert_with(BigInt::zero) += &v * &w;
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            assert_eq!(left, right, "d={d} x={}", s.dp.name(x));
        }
    }
}

#[test]
fn star_concatenates_distinct_summands() {
    let z = zigzag(1).unwrap();
    // V ⊕ W with V, W both copies of Z: indices 0..5 then 5..10
    let mut carrier = z.basis.clone();
    carrier.extend(z.basis.iter().cloned());
    let parity: Vec<_> = carrier.iter().map(|b| b.parity).collect();
    for d1 in 0..=2 {
        for d2 in 0..=2 {
            let v = zzschur::divpow::seq_orbits(&z.basis, d1);
            let w = zzschur::divpow::seq_orbits(&z.basis, d2);
            for b1 in &v {
                for b2 in &w {
                    let t1 = expand_y(b1, &carrier);
                    let shifted: Vec<u32> = b2.iter().map(|&k| k + 5).collect();
                    let t2 = expand_y(&shifted, &carrier);
                    let mut joint = b1.clone();
                    joint.extend(&shifted);
                    assert_eq!(star(&t1, &t2, &parity), expand_y(&joint, &carrier));
                }
            }
        }
    }
}

#[test]
fn star_of_same_element_depends_on_class() {
    let z = zigzag(1).unwrap();
    let parity: Vec<_> = z.basis.iter().map(|b| b.parity).collect();
    let e0 = zigzag_index(1, ZigzagElement::E(0)) as u32;
    let c0 = zigzag_index(1, ZigzagElement::Cycle(0)) as u32;
    let ye = expand_y(&[e0], &z.basis);
    let yee = expand_y(&[e0, e0], &z.basis);
    let doubled: zzschur::divpow::Tensor = yee.iter().map(|(k, v)| (k.clone(), v * 2)).collect();
    assert_eq!(star(&ye, &ye, &parity), doubled);
    let yc = expand_y(&[c0], &z.basis);
    assert_eq!(star(&yc, &yc, &parity), expand_y(&[c0, c0], &z.basis));
}

#[test]
fn regular_character_of_smallest_algebra() {
    let z = zigzag(1).unwrap();
    let s = SchurAlgebra::new(&z, 1, 1).unwrap();
    let ch = weight_character(&s, s.regular_action()).unwrap();
    assert_eq!(ch.get(&unit_weight(1, 1, 0, 0)), 3);
    assert_eq!(ch.get(&unit_weight(1, 1, 1, 0)), 2);
    assert_eq!(ch.total() as usize, s.dim());
}

#[test]
fn character_product_is_polynomial_product() {
    let a = CharacterTable([(Weight::parse("1|0").unwrap(), 2u64)].into_iter().collect());
    let b = CharacterTable([(Weight::parse("0|1").unwrap(), 3u64), (Weight::parse("1|0").unwrap(), 1)].into_iter().collect());
    let p = a.mul(&b);
    assert_eq!(p.get(&Weight::parse("1|1").unwrap()), 6);
    assert_eq!(p.get(&Weight::parse("2|0").unwrap()), 2);
}

#[test]
fn basis_weights_agree_with_projectors() {
    let z = zigzag(2).unwrap();
    let s = SchurAlgebra::new(&z, 2, 2).unwrap();
    for w in s.all_weights() {
        let e = s.eta_index(&w).unwrap();
        let (l, r) = s.basis_weights(e).unwrap();
        assert_eq!((l, r), (w.clone(), w));
    }
    for x in 0..s.dim() {
        let (l, r) = s.basis_weights(x).unwrap();
        let el = s.eta_index(&l).unwrap();
        let er = s.eta_index(&r).unwrap();
        assert_eq!(s.mult(el, x).unwrap(), comb_single(x));
        assert_eq!(s.mult(x, er).unwrap(), comb_single(x));
    }
}
