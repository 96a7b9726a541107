//! One line per acceptance criterion with its time budget. Runs as a plain
//! binary so the lines are always shown; exits nonzero if any line fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{as_rational, naive_product};
use zzschur::audit::{character_audit, form_audit, integrality_audit};
use zzschur::divpow::{DividedPower, ProductTable};
use zzschur::ringel_verify::{build_scrt, dimension_identity, tilt_weight_audit, verify_kostka, verify_ringel, RingelOptions};
use zzschur::schur::{GammaModule, SchurAlgebra};
use zzschur::superalg::{column_module, heredity_audit, zigzag, Side};
use zzschur::tilting_core::{summand_module, verify_lzprime, TiltingBasis};
use zzschur::FieldSpec;

type Outcome = Result<String, String>;

fn criterion(k: usize, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let in_time = took <= budget;
    let (ok, detail) = match res {
        Ok(s) => (in_time, s),
        Err(s) => (false, s),
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    let late = if in_time { "" } else { " over budget" };
    println!("criterion {k}: {verdict} ({:.2}s / {}s{late}) {detail}", took.as_secs_f64(), budget.as_secs());
    ok
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: zzschur::Error) -> String {
    e.to_string()
}

fn heredity() -> Outcome {
    for l in 1..=3 {
        let z = zigzag(l).map_err(err)?;
        let data = z.heredity.as_ref().ok_or("no heredity data")?;
        let rep = heredity_audit(&z, data);
        check(rep.passed(), || format!("l={l}: {rep:?}"))?;
    }
    Ok("l=1..3".into())
}

fn lzprime() -> Outcome {
    for l in 1..=3 {
        let rep = verify_lzprime(l).map_err(err)?;
        check(rep.passed(), || format!("l={l}: {rep:?}"))?;
        check(rep.ringel.basis_size == 4 * l + 1, || format!("l={l}: basis size {}", rep.ringel.basis_size))?;
    }
    Ok("l=1..3, bases of size 4l+1".into())
}

fn integrality() -> Outcome {
    let mut compared = 0usize;
    for (n, d) in [(1, 2), (2, 1), (2, 2)] {
        for l in 1..=2 {
            let rep = integrality_audit(n, d, l).map_err(err)?;
            check(rep.passed(), || format!("({n},{d},{l}): {:?}", rep.failures))?;
            let z = zigzag(l).map_err(err)?;
            let s = SchurAlgebra::new(&z, n, d).map_err(err)?;
            let m = &s.matrix;
            let prod = ProductTable { table: &m.table, acting_stride: m.dim(), target_stride: 1, side: Side::Left };
            for a in 0..s.dim() {
                for c in 0..s.dim() {
                    let fast = s.mult(a, c).map_err(err)?;
                    let slow = naive_product(&prod, &s.dp, &s.dp, a, c);
                    check(as_rational(&fast) == slow, || format!("({n},{d},{l}) product {a}·{c}"))?;
                    compared += 1;
                }
            }
            let tb = TiltingBasis::new(l).map_err(err)?;
            for i in 0..=l {
                let col = column_module(&z, &summand_module(&z, &tb, i).map_err(err)?, n).map_err(err)?;
                let gm = GammaModule::new("col", &s, &col, |k| k % n).map_err(err)?;
                let target = DividedPower::new(&col.basis, d);
                let prod =
                    ProductTable { table: &col.table, acting_stride: col.dim(), target_stride: 1, side: Side::Left };
                for a in 0..s.dim() {
                    for v in 0..target.dim() {
                        let fast = gm.action.act(a, v).map_err(err)?;
                        let slow = naive_product(&prod, &s.dp, &target, a, v);
                        check(as_rational(&fast) == slow, || format!("({n},{d},{l}) i={i} action {a}·{v}"))?;
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{compared} constants integral and equal to the tensor oracle"))
}

fn forms() -> Outcome {
    let mut pairs = 0;
    for l in 1..=2 {
        for n in 1..=2 {
            for d in 0..=3 {
                let contra = matches!((n, d), (1, 1) | (1, 2) | (1, 3) | (2, 1) | (2, 2));
                let rep = form_audit(n, d, l, contra).map_err(err)?;
                check(rep.passed(), || format!("(n={n},d={d},l={l}): {rep:?}"))?;
                pairs += rep.pairs_checked;
            }
        }
    }
    Ok(format!("{pairs} pairings, d<=3, n<=2, l<=2"))
}

fn characters() -> Outcome {
    let mut products = 0;
    for n in 1..=3 {
        for l in 1..=2 {
            let rep = character_audit(n, n, l).map_err(err)?;
            check(rep.passed(), || format!("(n={n},l={l}): {rep:?}"))?;
            products += rep.tensor_products_checked;
        }
    }
    Ok(format!("{products} tensor products, n<=3, l<=2"))
}

const KOSTKA_SIZES: [(usize, usize, usize); 4] = [(2, 2, 1), (3, 2, 1), (3, 3, 1), (2, 2, 2)];

fn kostka() -> Outcome {
    let mut blocks = 0;
    for (n, d, l) in KOSTKA_SIZES {
        let rep = verify_kostka(n, d, l).map_err(err)?;
        check(rep.passed(), || format!("({n},{d},{l}): {rep:?}"))?;
        check(rep.lr_beta.checked > 0, || format!("({n},{d},{l}): no LR/Ω checks"))?;
        blocks += rep.blocks.len();
    }
    Ok(format!("{blocks} content blocks"))
}

fn dimensions() -> Outcome {
    let mut out = Vec::new();
    for (n, d, l) in KOSTKA_SIZES {
        let id = dimension_identity(n, d, l).map_err(err)?;
        check(id.passed(), || format!("({n},{d},{l}): {id:?}"))?;
        out.push(format!("({n},{d},{l})={}", id.enumerated));
    }
    Ok(out.join(" "))
}

fn ringel() -> Outcome {
    let cases = [(2, 1, 1, "Q", Some(20)), (2, 2, 1, "Q", Some(202)), (2, 2, 1, "F2", Some(202)), (2, 2, 1, "F3", Some(202)), (3, 2, 2, "Q", None)];
    let mut out = Vec::new();
    for (n, d, l, f, expected) in cases {
        let field = FieldSpec::parse(f).map_err(err)?;
        let r = verify_ringel(n, d, l, field, RingelOptions::default()).map_err(err)?;
        let tag = format!("({n},{d},{l},{f})");
        check(r.passed(), || format!("{tag}: faithful={} commute={} end={:?}", r.faithful(), r.commute(), r.end.total))?;
        if let Some(e) = expected {
            check(r.end.total == e && r.dim_left == e, || format!("{tag}: End {} vs {e}", r.end.total))?;
        }
        check((r.end.even, r.end.odd) == r.left_even_odd, || format!("{tag}: split {:?} vs {:?}", (r.end.even, r.end.odd), r.left_even_odd))?;
        out.push(format!("{tag}={}", r.end.total));
    }
    Ok(out.join(" "))
}

fn tilting() -> Outcome {
    let mut audits = 0;
    for (n, d) in [(2, 1), (2, 2), (3, 2)] {
        for l in 1..=2 {
            let t = build_scrt(n, d, l).map_err(err)?;
            for i in 0..=l {
                let a = tilt_weight_audit(&t, i).map_err(err)?;
                check(a.passed && a.top_multiplicity == 1, || format!("({n},{d},{l}) i={i}: {a:?}"))?;
                audits += 1;
            }
        }
    }
    Ok(format!("{audits} summands"))
}

fn properties() -> Outcome {
    use common::props::*;
    associativity(200).map_err(|e| format!("associativity: {e}"))?;
    coassociativity(40).map_err(|e| format!("coassociativity: {e}"))?;
    star_law(300).map_err(|e| format!("star law: {e}"))?;
    expand_y_invariance(300).map_err(|e| format!("expand_y: {e}"))?;
    base_change_rank(300).map_err(|e| format!("base change: {e}"))?;
    Ok(format!("five suites, seed {:#x}", SEED))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        criterion(1, s(1), heredity),
        criterion(2, s(1), lzprime),
        criterion(3, s(30), integrality),
        criterion(4, s(10), forms),
        criterion(5, s(30), characters),
        criterion(6, s(120), kostka),
        criterion(7, s(60), dimensions),
        criterion(8, s(600), ringel),
        criterion(9, s(60), tilting),
        criterion(10, s(60), properties),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
