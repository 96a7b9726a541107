//! Self-contained checks on divided powers, forms and Δ-characters, shared
//! by the command line `report` and the acceptance suite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{delta_character, dominant_weights, iota, multi_lr, Weight};
use crate::divpow::{expand_y, lifted_form, tensor_form, DividedPower};
use crate::error::Result;
use crate::exact_linalg::ExactMatrix;
use crate::schur::{contravariance_failure, CharacterTable, GammaModule, SchurAlgebra};
use crate::superalg::{column_module, zigzag, Parity};
use crate::tilting_core::{column_form, pit_dual, pit_form, summand_module, TiltingBasis};
use crate::Rational;

/// Integrality of the η structure constants and of the action constants on
/// Γ̃^d Col_n(ΠT(i)).
#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub products: usize,
    pub action_constants: usize,
    pub failures: Vec<String>,
}

impl IntegralityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn integrality_audit(n: usize, d: usize, l: usize) -> Result<IntegralityReport> {
    let z = zigzag(l)?;
    let s = SchurAlgebra::new(&z, n, d)?;
    let tb = TiltingBasis::new(l)?;
    let mut rep = IntegralityReport { n, d, l, products: 0, action_constants: 0, failures: Vec::new() };
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            match s.mult(a, b) {
                Ok(c) => rep.products += c.len(),
                Err(e) => rep.failures.push(format!("{} · {}: {e}", s.dp.name(a), s.dp.name(b))),
            }
        }
    }
    for i in 0..=l {
        let col = column_module(&z, &summand_module(&z, &tb, i)?, n)?;
        let gm = GammaModule::new(format!("Col(PiT({i}))"), &s, &col, |k| k % n)?;
        for a in 0..s.dim() {
            for v in 0..gm.dim() {
                match gm.action.act(a, v) {
                    Ok(c) => rep.action_constants += c.len(),
                    Err(e) => rep.failures.push(format!("i={i} {} · {v}: {e}", s.dp.name(a))),
                }
            }
        }
    }
    Ok(rep)
}

/// The pairing and the lifted form on Γ̃^d Col_n(ΠT(i)).
#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub pairs_checked: usize,
    /// `(i, b, b')` where |(y_b', y_b*)_d| ≠ d! δ.
    pub pairing_failures: Vec<(usize, usize, usize)>,
    /// i where the lifted form is not integral or is degenerate.
    pub degenerate: Vec<usize>,
    /// i where (w, v) ≠ ε^d (−1)^{|v||w|} (v, w).
    pub asymmetric: Vec<usize>,
    /// `(i, x, v, w)` breaking contravariance.
    pub contravariance: Vec<(usize, usize, usize, usize)>,
}

impl FormReport {
    pub fn passed(&self) -> bool {
        self.pairing_failures.is_empty()
            && self.degenerate.is_empty()
            && self.asymmetric.is_empty()
            && self.contravariance.is_empty()
    }
}

/// With `contravariance` off, only the pairing and non-degeneracy run; the
/// contravariance check needs T^Z(n,d) and is the slow part.
pub fn form_audit(n: usize, d: usize, l: usize, contravariance: bool) -> Result<FormReport> {
    let z = zigzag(l)?;
    let tb = TiltingBasis::new(l)?;
    let schur = if contravariance { Some(SchurAlgebra::new(&z, n, d)?) } else { None };
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    let mut rep = FormReport {
        n,
        d,
        l,
        pairs_checked: 0,
        pairing_failures: Vec::new(),
        degenerate: Vec::new(),
        asymmetric: Vec::new(),
        contravariance: Vec::new(),
    };
    for i in 1..=l {
        let m = column_module(&z, &summand_module(&z, &tb, i)?, n)?;
        let g = column_form(&pit_form(l, i)?, n);
        let dual = pit_dual(&g)?;
        let dp = DividedPower::new(&m.basis, d);
        let par: Vec<Parity> = m.basis.iter().map(|b| b.parity).collect();
        let ys: Vec<_> = (0..dp.dim()).map(|b| dp.expand_y(b)).collect();
        for b in 0..dp.dim() {
            let mut star: Vec<u32> = dp.orbits[b].iter().map(|&k| dual[k as usize].0 as u32).collect();
            star.sort_unstable();
            let ystar = expand_y(&star, &m.basis);
            for (b2, y) in ys.iter().enumerate() {
                rep.pairs_checked += 1;
                let v = tensor_form(&g, &par, y, &ystar);
                let ok = if b2 == b { v.abs() == fact } else { v.is_zero() };
                if !ok {
                    rep.pairing_failures.push((i, b, b2));
                }
            }
        }
        let form = match lifted_form(&dp, &g) {
            Ok(f) => f,
            Err(_) => {
                rep.degenerate.push(i);
                continue;
            }
        };
        let unimodular = form.iter().all(|row| {
            let nz: Vec<&BigInt> = row.iter().filter(|v| !v.is_zero()).collect();
            nz.len() == 1 && nz[0].abs().is_one()
        });
        let full_rank = unimodular || {
            let rows: Vec<Vec<Rational>> =
                form.iter().map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
            ExactMatrix::from_dense(&rows).rank() == dp.dim()
        };
        if !full_rank {
            rep.degenerate.push(i);
        }
        let fp = dp.parities();
        let symmetric = (0..dp.dim())
            .all(|v| (0..dp.dim()).all(|w| form[w][v] == &form[v][w] * lifted_symmetry_sign(d, fp[v], fp[w])));
        if !symmetric {
            rep.asymmetric.push(i);
        }
        if let Some(s) = &schur {
            let gm = GammaModule::new("col", s, &m, |k| k % n)?;
            if let Some((x, v, w)) = contravariance_failure(s, &gm, &form)? {
                rep.contravariance.push((i, x, v, w));
            }
        }
    }
    Ok(rep)
}

/// Linear independence, the column factorization and the tensor product
/// rule for ch Δ.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub n: usize,
    pub l: usize,
    pub max_degree: usize,
    pub independent: bool,
    pub factorization_failures: Vec<Weight>,
    pub tensor_failures: Vec<(Weight, Weight)>,
    pub tensor_products_checked: usize,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.independent && self.factorization_failures.is_empty() && self.tensor_failures.is_empty()
    }
}

fn ch(l: usize, lam: &Weight) -> CharacterTable {
    CharacterTable::from(delta_character(l, lam))
}

/// All checks for degrees up to `max_degree` with `n` rows.
pub fn character_audit(n: usize, max_degree: usize, l: usize) -> Result<CharacterReport> {
    let mut rep = CharacterReport {
        n,
        l,
        max_degree,
        independent: true,
        factorization_failures: Vec::new(),
        tensor_failures: Vec::new(),
        tensor_products_checked: 0,
    };
    let mut chars: BTreeMap<Weight, CharacterTable> = BTreeMap::new();
    for deg in 0..=max_degree {
        let lams = dominant_weights(l, n, deg);
        for lam in &lams {
            chars.insert(lam.clone(), ch(l, lam));
        }
        // independence: the matrix of characters has full column rank
        let mut rows: BTreeMap<&Weight, usize> = BTreeMap::new();
        for lam in &lams {
            for w in chars[lam].support() {
                let k = rows.len();
                rows.entry(w).or_insert(k);
            }
        }
        let mut m = ExactMatrix::<Rational>::zeros(rows.len(), lams.len());
        for (j, lam) in lams.iter().enumerate() {
            for (w, v) in &chars[lam].0 {
                m.set(rows[w], j, Rational::from_integer(BigInt::from(*v)));
            }
        }
        if m.rank() != lams.len() {
            rep.independent = false;
        }
        // ch Δ(λ) = Π_i ch Δ(ι_i(λ^{(i)}))
        for lam in &lams {
            let mut prod = CharacterTable(BTreeMap::from([(Weight::zero(l, n), 1)]));
            for (i, part) in lam.0.iter().enumerate() {
                prod = prod.mul(&ch(l, &iota(l, n, i, part)));
            }
            if prod != chars[lam] {
                rep.factorization_failures.push(lam.clone());
            }
        }
    }
    // ch Δ(λ) ch Δ(μ) = Σ_ν c^ν_{λμ} ch Δ(ν)
    for d in 0..=max_degree {
        for e in 0..=(max_degree - d) {
            let targets = dominant_weights(l, n, d + e);
            for lam in dominant_weights(l, n, d) {
                for mu in dominant_weights(l, n, e) {
                    rep.tensor_products_checked += 1;
                    let lhs = chars[&lam].mul(&chars[&mu]);
                    let mut rhs = CharacterTable::default();
                    for nu in &targets {
                        let c = multi_lr(&lam, &mu, nu);
                        if c > 0 {
                            rhs.add_scaled(&chars[nu], c);
                        }
                    }
                    if lhs != rhs {
                        rep.tensor_failures.push((lam.clone(), mu));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Sign of the lifted form's graded symmetry, ε^d (−1)^{|v||w|} with ε = −1.
pub fn lifted_symmetry_sign(d: usize, pv: Parity, pw: Parity) -> BigInt {
    let odd = (d % 2 == 1) ^ (pv.is_odd() && pw.is_odd());
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}
