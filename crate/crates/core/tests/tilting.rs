use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use zzschur::divpow::{expand_y, lifted_form, lifted_form_unscaled, tensor_form, DividedPower};
use zzschur::exact_linalg::ExactMatrix;
use zzschur::schur::{contravariance_failure, GammaModule, SchurAlgebra};
use zzschur::superalg::{column_module, zigzag, zigzag_index, zigzag_modules, CalClass, Parity, ZigzagElement};
use zzschur::tilting_core::*;
use zzschur::Rational;

#[test]
fn tilting_module_shape_l1() {
    let t = tilting_bimodule(1).unwrap();
    assert_eq!(t.dim(), 4);
    let names: Vec<_> = t.tb.basis.iter().map(|b| (b.name.as_str(), b.parity)).collect();
    assert_eq!(names, vec![("v0", Parity::Odd), ("e0", Parity::Even), ("a10", Parity::Odd), ("c0", Parity::Even)]);
    assert_eq!(tilting_bimodule(2).unwrap().dim(), 8);
}

#[test]
fn summands_have_standard_filtration_dimensions() {
    for l in 1..=3 {
        let z = zigzag(l).unwrap();
        let tb = TiltingBasis::new(l).unwrap();
        for i in 1..=l {
            let m = summand_module(&z, &tb, i).unwrap();
            let std_i = zigzag_modules::standard(l, i).dim();
            let std_prev = zigzag_modules::standard(l, i - 1).dim();
            assert_eq!(m.dim(), std_i + std_prev, "l={l} i={i}");
        }
    }
}

#[test]
fn primed_elements_form_the_ringel_dual() {
    for l in 1..=3 {
        let t = ringel_dual_zigzag(l).unwrap();
        assert_eq!(t.report.basis_size, 4 * l + 1);
        assert!(t.report.independent);
        assert!(t.report.homomorphisms);
        assert_eq!(t.report.commutant_dim, 4 * l + 1);
        assert!(t.report.failures.is_empty(), "{:?}", t.report.failures);
    }
}

#[test]
fn literal_embedding_sign_breaks_one_relation() {
    for l in 1..=3 {
        let t = ringel_dual_zigzag_with(l, EmbeddingSign::Plus).unwrap();
        let bad: Vec<_> = t.report.failures.iter().map(|f| (f.left.clone(), f.right.clone())).collect();
        let a_low = t.z.basis[zigzag_index(l, ZigzagElement::Arrow(l - 1, l))].name.clone();
        let a_high = t.z.basis[zigzag_index(l, ZigzagElement::Arrow(l, l - 1))].name.clone();
        assert_eq!(bad, vec![(format!("{a_low}'"), format!("{a_high}'"))], "l={l}");
        let f = &t.report.failures[0];
        let c = zigzag_index(l, ZigzagElement::Cycle(l - 1));
        assert_eq!(f.found, Some(vec![(c, -BigInt::one())]));
    }
}

#[test]
fn primed_idempotents_split_the_identity() {
    let l = 2;
    let t = ringel_dual_zigzag(l).unwrap();
    let n = t.dim();
    let mut total = vec![BigInt::zero(); n];
    for i in 0..=l {
        let e = &t.generators.maps[i];
        for (c, img) in e.iter().enumerate() {
            for (r, v) in img {
                assert_eq!(*r, c);
                total[c] += v;
            }
        }
        for j in 0..=l {
            let p = sop_product(e, Parity::Even, &t.generators.maps[j], Parity::Even);
            let expect = if i == j { e.clone() } else { vec![Vec::new(); n] };
            assert_eq!(p, expect);
        }
    }
    assert!(total.iter().all(|v| v.is_one()));
}

#[test]
fn top_arrow_pair_composes_to_zero() {
    for l in 1..=3 {
        let t = ringel_dual_zigzag(l).unwrap();
        let hi = zigzag_index(l, ZigzagElement::Arrow(l, l - 1));
        let lo = zigzag_index(l, ZigzagElement::Arrow(l - 1, l));
        let p = sop_product(&t.generators.maps[hi], Parity::Odd, &t.generators.maps[lo], Parity::Odd);
        assert!(p.iter().all(|c| c.is_empty()));
    }
}

#[test]
fn bimodule_axioms() {
    for l in 1..=3 {
        let t = tilting_bimodule(l).unwrap();
        assert!(t.actions_commute(), "l={l}");
        assert!(t.calibration_stable(), "l={l}");
        let dims = t.right_decomposition().unwrap();
        // ΠT'(0) is a line, ΠT'(1) drops an arrow, the rest have four vectors
        let mut expect = vec![1, 3];
        expect.extend(std::iter::repeat(4).take(l - 1));
        assert_eq!(dims, expect, "l={l}");
    }
}

#[test]
fn hom_from_standard_to_costandard() {
    for l in 1..=3 {
        for i in 0..=l {
            for j in 0..=l {
                let h = hom_delta_nabla(l, i, j).unwrap();
                if i == j {
                    assert_eq!(h, 1, "l={l} i={i}");
                } else if i > j {
                    assert_eq!(h, 0, "l={l} i={i} j={j}");
                }
            }
        }
    }
}

fn gram_matrix(g: &Gram) -> ExactMatrix<Rational> {
    ExactMatrix::from_dense(&g.iter().map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect::<Vec<_>>())
}

#[test]
fn summand_form_properties() {
    for l in 1..=3 {
        let z = zigzag(l).unwrap();
        let tb = TiltingBasis::new(l).unwrap();
        for i in 1..=l {
            let m = summand_module(&z, &tb, i).unwrap();
            let g = pit_form(l, i).unwrap();
            let k = m.dim();
            assert_eq!(gram_matrix(&g).rank(), k);
            let par = m.parities();
            for p in 0..k {
                for q in 0..k {
                    // even form
                    if par[p] != par[q] {
                        assert!(g[p][q].is_zero());
                    }
                    // superantisymmetric
                    let sign = if par[p].is_odd() && par[q].is_odd() { 1 } else { -1 };
                    assert_eq!(g[q][p], &g[p][q] * BigInt::from(sign));
                    if m.basis[p].class == CalClass::A && m.basis[q].class == CalClass::A {
                        assert!(g[p][q].is_zero());
                    }
                }
            }
            // τ-contravariance (a v, w) = (-1)^{|a||v|} (v, τ(a) w)
            let tau = z.tau.as_ref().unwrap();
            for a in 0..z.dim() {
                for v in 0..k {
                    for w in 0..k {
                        let mut lhs = BigInt::zero();
                        for (x, c) in m.act_basis(a, v) {
                            lhs += c * &g[*x][w];
                        }
                        let mut rhs = BigInt::zero();
                        for (ta, tc) in &tau[a] {
                            for (x, c) in m.act_basis(*ta, w) {
                                rhs += tc * c * &g[v][*x];
                            }
                        }
                        if z.parity(a).is_odd() && par[v].is_odd() {
                            rhs = -rhs;
                        }
                        assert_eq!(lhs, rhs, "l={l} i={i} a={} v={v} w={w}", z.basis[a].name);
                    }
                }
            }
        }
    }
}

#[test]
fn pit_form_rejects_the_simple_summand() {
    assert!(pit_form(2, 0).is_err());
}

/// |(y_b', y_b*)_d| = d! δ on the carriers Col_n(ΠT(i)).
fn dual_pairing_check(l: usize, i: usize, n: usize, d: usize) {
    let z = zigzag(l).unwrap();
    let tb = TiltingBasis::new(l).unwrap();
    let m = column_module(&zigzag(l).unwrap(), &summand_module(&z, &tb, i).unwrap(), n).unwrap();
    let g = column_form(&pit_form(l, i).unwrap(), n);
    let dual = pit_dual(&g).unwrap();
    let dp = DividedPower::new(&m.basis, d);
    let par: Vec<Parity> = m.basis.iter().map(|b| b.parity).collect();
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    for b in 0..dp.dim() {
        let mut star: Vec<u32> = dp.orbits[b].iter().map(|&k| dual[k as usize].0 as u32).collect();
        star.sort_unstable();
        let ystar = expand_y(&star, &m.basis);
        for b2 in 0..dp.dim() {
            let v = tensor_form(&g, &par, &dp.expand_y(b2), &ystar);
            if b2 == b {
                assert_eq!(v.abs(), fact, "l={l} i={i} n={n} d={d} b={}", dp.name(b));
            } else {
                assert!(v.is_zero(), "l={l} i={i} n={n} d={d} b={} b'={}", dp.name(b), dp.name(b2));
            }
        }
    }
}

#[test]
fn dual_basis_pairing_is_factorial() {
    for l in 1..=2 {
        for i in 1..=l {
            for n in 1..=2 {
                for d in 0..=3 {
                    dual_pairing_check(l, i, n, d);
                }
            }
        }
    }
}

#[test]
fn lifted_form_degree_one_is_the_form() {
    let l = 2;
    let z = zigzag(l).unwrap();
    let tb = TiltingBasis::new(l).unwrap();
    let m = summand_module(&z, &tb, 2).unwrap();
    let g = pit_form(l, 2).unwrap();
    let dp = DividedPower::new(&m.basis, 1);
    assert_eq!(lifted_form(&dp, &g).unwrap(), g);
}

#[test]
fn lifted_form_is_unimodular_and_graded_symmetric() {
    for (l, i, n, d) in [(1, 1, 2, 2), (2, 2, 2, 2), (2, 1, 1, 3), (2, 2, 1, 3)] {
        let z = zigzag(l).unwrap();
        let tb = TiltingBasis::new(l).unwrap();
        let m = column_module(&z, &summand_module(&z, &tb, i).unwrap(), n).unwrap();
        let g = column_form(&pit_form(l, i).unwrap(), n);
        let dp = DividedPower::new(&m.basis, d);
        let form = lifted_form(&dp, &g).unwrap();
        // every row has exactly one entry ±1
        for row in &form {
            let nz: Vec<_> = row.iter().filter(|v| !v.is_zero()).collect();
            assert_eq!(nz.len(), 1);
            assert!(nz[0].abs().is_one());
        }
        let par = dp.parities();
        let eps = if d % 2 == 0 { 1 } else { -1 };
        for v in 0..dp.dim() {
            for w in 0..dp.dim() {
                let s = if par[v].is_odd() && par[w].is_odd() { -eps } else { eps };
                assert_eq!(form[w][v], &form[v][w] * BigInt::from(s));
            }
        }
        let raw = lifted_form_unscaled(&dp, &g);
        let fact: BigInt = (1..=d).map(BigInt::from).product();
        assert!(raw.iter().flatten().all(|v| (v % &fact).is_zero()));
    }
}

#[test]
fn lifted_form_is_contravariant() {
    for l in 1..=2 {
        for (n, d) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
            let z = zigzag(l).unwrap();
            let tb = TiltingBasis::new(l).unwrap();
            let s = SchurAlgebra::new(&z, n, d).unwrap();
            for i in 1..=l {
                let col = column_module(&s.base, &summand_module(&z, &tb, i).unwrap(), n).unwrap();
                let gm = GammaModule::new("col", &s, &col, |k| k % n).unwrap();
                let g = column_form(&pit_form(l, i).unwrap(), n);
                let form = lifted_form(&gm.action.target, &g).unwrap();
                assert_eq!(contravariance_failure(&s, &gm, &form).unwrap(), None, "l={l} n={n} d={d} i={i}");
            }
        }
    }
}

#[test]
fn contravariance_detects_a_broken_form() {
    let l = 1;
    let z = zigzag(l).unwrap();
    let tb = TiltingBasis::new(l).unwrap();
    let s = SchurAlgebra::new(&z, 1, 1).unwrap();
    let col = column_module(&s.base, &summand_module(&z, &tb, 1).unwrap(), 1).unwrap();
    let gm = GammaModule::new("col", &s, &col, |_| 0).unwrap();
    let mut g = pit_form(l, 1).unwrap();
    // make the form symmetric on the even part
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            *v = v.abs();
        }
    }
    assert!(contravariance_failure(&s, &gm, &g).unwrap().is_some());
}
