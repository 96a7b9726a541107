//! The tilting module 𝒯 = Γ̃^d M_n(𝖳) over T^Z(n,d) and T^{Z'}(n,d): content
//! blocks, weight audits, Δ-filtration multiplicities and the endomorphism
//! dimension count that identifies End(𝒯)^sop with T^{Z'}(n,d).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    beta, dominant_weights, iota, kostka_table, maximal_weights, multi_lr, omega_set, weights, xi_set, Weight,
};
use crate::divpow::{DividedPower, GammaAction, IntOperator};
use crate::error::{Error, Result};
use crate::exact_linalg::{Echelon, ExactMatrix, SparseVec};
use crate::field::{Field, FieldSpec, Fp};
use crate::schur::{CharacterTable, SchurAlgebra};
use crate::superalg::{comb_normalize, matrix_bimodule, matrix_coords, Bimodule, Comb, Parity, Side};
use crate::tilting_core::{tilting_bimodule, TiltingBimodule};
use crate::Rational;

/// 𝒯 with both actions and its weight bookkeeping.
#[derive(Debug)]
pub struct ScrT {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub tilting: TiltingBimodule,
    /// T^Z(n,d)
    pub left_alg: SchurAlgebra,
    /// T^{Z'}(n,d)
    pub right_alg: SchurAlgebra,
    /// M_n(𝖳)
    pub carrier: Bimodule,
    pub dp: Arc<DividedPower>,
    pub left: GammaAction,
    pub right: GammaAction,
    /// Per basis vector: entries from ΠT(i) in column s, at `[i][s]`.
    pub content: Vec<Weight>,
    /// Weight under the idempotents of T^Z(n,d).
    pub left_weight: Vec<Weight>,
    /// Weight under the idempotents of T^{Z'}(n,d).
    pub right_weight: Vec<Weight>,
}

pub fn build_scrt(n: usize, d: usize, l: usize) -> Result<ScrT> {
    if d > n {
        return Err(Error::Usage(format!("need d <= n, got n = {n}, d = {d}")));
    }
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    let tilting = tilting_bimodule(l)?;
    let left_alg = SchurAlgebra::new(&tilting.z, n, d)?;
    let right_alg = SchurAlgebra::new(&tilting.zprime, n, d)?;
    let carrier = matrix_bimodule(&tilting.module, n);
    let dp = Arc::new(DividedPower::new(carrier.basis(), d));
    let cdim = carrier.dim();
    let left = GammaAction::new(
        Side::Left,
        left_alg.dp.clone(),
        dp.clone(),
        Arc::new(carrier.left.table.clone()),
        cdim,
        1,
    );
    let right = GammaAction::new(
        Side::Right,
        right_alg.dp.clone(),
        dp.clone(),
        Arc::new(carrier.right.table.clone()),
        cdim,
        1,
    );
    let tb = &tilting.tb;
    let mut content = Vec::with_capacity(dp.dim());
    let mut left_weight = Vec::with_capacity(dp.dim());
    let mut right_weight = Vec::with_capacity(dp.dim());
    for ms in &dp.orbits {
        let mut c = Weight::zero(l, n);
        let mut lw = Weight::zero(l, n);
        let mut rw = Weight::zero(l, n);
        for &m in ms {
            let (t, r, s) = matrix_coords(n, m as usize);
            let b = &tb.basis[t];
            c.0[tb.left_summand[t]][s] += 1;
            lw.0[b.left_vertex.expect("𝖳 vectors have vertices")][r] += 1;
            rw.0[b.right_vertex.expect("𝖳 vectors have vertices")][s] += 1;
        }
        content.push(c);
        left_weight.push(lw);
        right_weight.push(rw);
    }
    Ok(ScrT { n, d, l, tilting, left_alg, right_alg, carrier, dp, left, right, content, left_weight, right_weight })
}

impl ScrT {
    pub fn dim(&self) -> usize {
        self.dp.dim()
    }

    pub fn parity(&self, v: usize) -> Parity {
        self.dp.parity_of(v)
    }

    /// Basis indices of 𝒯^μ for every content μ that occurs.
    pub fn blocks(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (v, c) in self.content.iter().enumerate() {
            out.entry(c.clone()).or_default().push(v);
        }
        out
    }

    /// 𝒯^d_i: the block of content ι_i((d)).
    pub fn tilting_block(&self, i: usize) -> Vec<usize> {
        let mu = iota(self.l, self.n, i, &[self.d]);
        self.blocks().remove(&mu).unwrap_or_default()
    }

    /// ch of a span of basis vectors, read from basis weights.
    pub fn basis_character(&self, block: &[usize]) -> CharacterTable {
        let mut out = BTreeMap::new();
        for &v in block {
            *out.entry(self.left_weight[v].clone()).or_insert(0) += 1;
        }
        CharacterTable(out)
    }

    /// ch of a block from exact ranks of the projectors η_λ restricted to it.
    pub fn projector_character(&self, block: &[usize]) -> Result<CharacterTable> {
        let inside: BTreeSet<usize> = block.iter().copied().collect();
        let mut out = BTreeMap::new();
        for w in self.left_alg.all_weights() {
            let op = self.left.operator(self.left_alg.eta_index(&w)?)?;
            let mut ech = Echelon::<Rational>::new(self.dim());
            for &v in block {
                if let Some(img) = op.image(v) {
                    if img.iter().any(|(k, _)| !inside.contains(k)) {
                        return Err(Error::Structure(format!("η_{w} moves a vector out of its block")));
                    }
                    ech.insert(img.iter().map(|(k, c)| (*k, Rational::from_integer(c.clone()))).collect());
                }
            }
            if ech.rank() > 0 {
                out.insert(w, ech.rank() as u64);
            }
        }
        Ok(CharacterTable(out))
    }

    /// First carrier pair `(a, t)` of M_n(Z) x M_n(𝖳) where `a t` leaves the
    /// column and summand of `t`. Closure of every block of 𝒯 follows from
    /// closure on the carrier.
    pub fn carrier_closure_failure(&self) -> Option<(usize, usize)> {
        let cdim = self.carrier.dim();
        let key = |m: usize| {
            let (t, _, s) = matrix_coords(self.n, m);
            (self.tilting.tb.left_summand[t], s)
        };
        for a in 0..self.carrier.left.algebra_dim {
            for t in 0..cdim {
                if self.carrier.left.table[a * cdim + t].iter().any(|(k, _)| key(*k) != key(t)) {
                    return Some((a, t));
                }
            }
        }
        None
    }

    /// First `(x, v)` with `x v` outside the block of `v`, over the listed
    /// left operators.
    pub fn operator_closure_failure(&self, xs: &[usize]) -> Result<Option<(usize, usize)>> {
        for &x in xs {
            let op = self.left.operator(x)?;
            for (c, img) in &op.columns {
                if img.iter().any(|(k, _)| self.content[*k] != self.content[*c]) {
                    return Ok(Some((x, *c)));
                }
            }
        }
        Ok(None)
    }
}

/// The content blocks, after checking closure under the left action.
pub fn content_decompose(t: &ScrT) -> Result<BTreeMap<Weight, Vec<usize>>> {
    if let Some((a, v)) = t.carrier_closure_failure() {
        return Err(Error::Structure(format!(
            "{} · {} changes content",
            t.left_alg.matrix.basis[a].name, t.carrier.basis()[v].name
        )));
    }
    Ok(t.blocks())
}

/// Basis-weight characters of every content block of Γ̃^d M_n(𝖳), without
/// building any action.
pub fn content_characters(n: usize, d: usize, l: usize) -> Result<BTreeMap<Weight, CharacterTable>> {
    let tilting = tilting_bimodule(l)?;
    let carrier = matrix_bimodule(&tilting.module, n);
    let dp = DividedPower::new(carrier.basis(), d);
    let tb = &tilting.tb;
    let mut out: BTreeMap<Weight, BTreeMap<Weight, u64>> = BTreeMap::new();
    for ms in &dp.orbits {
        let mut c = Weight::zero(l, n);
        let mut lw = Weight::zero(l, n);
        for &m in ms {
            let (t, r, s) = matrix_coords(n, m as usize);
            c.0[tb.left_summand[t]][s] += 1;
            lw.0[tb.basis[t].left_vertex.expect("𝖳 vectors have vertices")][r] += 1;
        }
        *out.entry(c).or_default().entry(lw).or_insert(0) += 1;
    }
    Ok(out.into_iter().map(|(k, v)| (k, CharacterTable(v))).collect())
}

/// Outcome of the weight audit of 𝒯^d_i.
#[derive(Clone, Debug, Serialize)]
pub struct TiltAudit {
    pub i: usize,
    pub dim: usize,
    pub top_weight: Weight,
    pub top_multiplicity: u64,
    /// ≤_I-maximal weights among those that occur.
    pub maximal: Vec<Weight>,
    /// Dimension of T^Z(n,d)η_{ι_{i-1}(d)} (i > 0) or C(n,d) (i = 0).
    pub expected_dim: usize,
    /// Dominant weights that occur (recorded for i = 0).
    pub dominant: Vec<Weight>,
    /// First `(x, v)` where the basis map fails to intertwine, if any.
    pub iso_failure: Option<(usize, usize)>,
    pub passed: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Weight audit of 𝒯^d_i, with the explicit isomorphism onto
/// T^Z(n,d)η_{ι_{i-1}(d)} for i > 0.
pub fn tilt_weight_audit(t: &ScrT, i: usize) -> Result<TiltAudit> {
    if i > t.l {
        return Err(Error::Usage(format!("no summand {i} for l = {}", t.l)));
    }
    let (l, n, d) = (t.l, t.n, t.d);
    let block = t.tilting_block(i);
    let ch = t.basis_character(&block);
    let top = iota(l, n, i, &vec![1; d]);
    let top_multiplicity = ch.get(&top);
    let support: Vec<Weight> = ch.support().cloned().collect();
    let maximal = maximal_weights(support.iter());
    let dominant: Vec<Weight> = ch.support().filter(|w| w.is_dominant()).cloned().collect();
    let mut iso_failure = None;
    let expected_dim;
    let shape_ok;
    if i == 0 {
        expected_dim = binomial(n, d);
        shape_ok = block.len() == expected_dim && dominant == vec![top.clone()];
    } else {
        let alg = &t.left_alg;
        let tb = &t.tilting.tb;
        // η^{b}_{r,1^d} ↦ the same multiset of triples over Z
        let mut image = Vec::with_capacity(block.len());
        for &v in &block {
            let triples: Vec<(usize, usize, usize)> = t.dp.orbits[v]
                .iter()
                .map(|&m| {
                    let (p, r, s) = matrix_coords(n, m as usize);
                    (tb.element[p].expect("ΠT(i) with i > 0 is inside Z"), r, s)
                })
                .collect();
            image.push(alg.index_of_triples(&triples).ok_or_else(|| {
                Error::Structure(format!("{} has no counterpart in T^Z", t.dp.name(v)))
            })?);
        }
        let eta = alg.eta_index(&iota(l, n, i - 1, &[d]))?;
        let eta_w = alg.basis_weights(eta).map(|(w, _)| w);
        let target: Vec<usize> =
            (0..alg.dim()).filter(|&y| alg.basis_weights(y).map(|(_, rw)| rw) == eta_w).collect();
        expected_dim = target.len();
        let img_set: BTreeSet<usize> = image.iter().copied().collect();
        let tgt_set: BTreeSet<usize> = target.iter().copied().collect();
        let bijective = img_set.len() == image.len() && img_set == tgt_set;
        let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        if bijective {
            'outer: for (k, &v) in block.iter().enumerate() {
                for x in 0..alg.dim() {
                    // x v = 0 unless the right weight of x is the left weight of v
                    match alg.basis_weights(x) {
                        Some((_, rw)) if rw != t.left_weight[v] => continue,
                        _ => {}
                    }
                    let xv = t.left.act(x, v)?;
                    let mapped: Option<Comb> =
                        xv.iter().map(|(u, c)| pos.get(u).map(|&p| (image[p], c.clone()))).collect();
                    let lhs = mapped.map(comb_normalize);
                    let rhs = alg.mult(x, image[k])?;
                    if lhs.as_ref() != Some(&rhs) {
                        iso_failure = Some((x, v));
                        break 'outer;
                    }
                }
            }
        } else {
            iso_failure = Some((usize::MAX, usize::MAX));
        }
        shape_ok = iso_failure.is_none() && block.len() == expected_dim;
    }
    let passed = shape_ok && top_multiplicity == 1 && maximal == vec![top.clone()];
    Ok(TiltAudit {
        i,
        dim: block.len(),
        top_weight: top,
        top_multiplicity,
        maximal,
        expected_dim,
        dominant,
        iso_failure,
        passed,
    })
}

/// Full-tilting coverage: every dominant λ is the unique ≤_I-maximal weight
/// of 𝒯^{λ'}, with multiplicity 1. Returns the offending λ.
pub fn full_tilting_failures(chars: &BTreeMap<Weight, CharacterTable>, l: usize, n: usize, d: usize) -> Result<Vec<Weight>> {
    let mut bad = Vec::new();
    for lam in dominant_weights(l, n, d) {
        let ok = match chars.get(&lam.conjugate()?) {
            Some(ch) => {
                let dom: Vec<Weight> = ch.support().filter(|w| w.is_dominant()).cloned().collect();
                ch.get(&lam) == 1 && maximal_weights(dom.iter()) == vec![lam.clone()]
            }
            None => false,
        };
        if !ok {
            bad.push(lam);
        }
    }
    Ok(bad)
}

/// Δ-filtration multiplicities of one content block.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub content: Weight,
    pub dim: u64,
    /// (𝒯^μ : Δ(λ)) from the character solve, nonzero entries only.
    pub multiplicities: BTreeMap<Weight, u64>,
    /// k_{←λ',←μ}, nonzero entries only.
    pub kostka: BTreeMap<Weight, u64>,
    pub unique: bool,
    pub nonnegative_integral: bool,
    pub matches_kostka: bool,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.unique && self.nonnegative_integral && self.matches_kostka
    }
}

/// ch Δ(λ) for every dominant λ, as used by [`filtration_multiplicities`].
pub type DeltaTable = BTreeMap<Weight, BTreeMap<Weight, u64>>;

pub fn delta_table(l: usize, n: usize, d: usize) -> DeltaTable {
    kostka_table(l, n, d)
}

/// Solve ch 𝒯^μ = Σ m_λ ch Δ(λ) and compare with k_{←λ',←μ}.
pub fn filtration_multiplicities(mu: &Weight, ch: &CharacterTable, deltas: &DeltaTable) -> Result<FiltrationReport> {
    let lams: Vec<&Weight> = deltas.keys().collect();
    let mut rows: BTreeSet<&Weight> = ch.support().collect();
    for c in deltas.values() {
        rows.extend(c.keys());
    }
    let row_index: HashMap<&Weight, usize> = rows.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let mut a = ExactMatrix::<Rational>::zeros(rows.len(), lams.len());
    for (j, lam) in lams.iter().enumerate() {
        for (w, m) in &deltas[*lam] {
            a.set(row_index[w], j, Rational::from_integer(BigInt::from(*m)));
        }
    }
    let b: Vec<Rational> = rows.iter().map(|w| Rational::from_integer(BigInt::from(ch.get(w)))).collect();
    let unique = a.rank() == lams.len();
    let sol = a.solve(&b);
    let mut multiplicities = BTreeMap::new();
    let mut nonnegative_integral = sol.is_some();
    if let Some(x) = &sol {
        for (j, v) in x.iter().enumerate() {
            if !v.is_integer() || v.is_negative() {
                nonnegative_integral = false;
                continue;
            }
            if let Some(m) = v.to_integer().to_u64().filter(|m| *m > 0) {
                multiplicities.insert(lams[j].clone(), m);
            }
        }
    }
    let mut kostka = BTreeMap::new();
    let rev_mu = mu.reverse();
    for lam in &lams {
        let key = lam.conjugate()?.reverse();
        let k = deltas.get(&key).and_then(|c| c.get(&rev_mu)).copied().unwrap_or(0);
        if k > 0 {
            kostka.insert((*lam).clone(), k);
        }
    }
    let matches_kostka = nonnegative_integral && multiplicities == kostka;
    Ok(FiltrationReport {
        content: mu.clone(),
        dim: ch.total(),
        multiplicities,
        kostka,
        unique,
        nonnegative_integral,
        matches_kostka,
    })
}

/// Filtration reports for every content, plus the single-row check: the
/// block of content ι_i((d)) has multiplicity 1 exactly on Ξ_{d,i}.
#[derive(Clone, Debug, Serialize)]
pub struct KostkaReport {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub blocks: Vec<FiltrationReport>,
    /// i for which the single-row block fails the Ξ check.
    pub single_row_failures: Vec<usize>,
    pub full_tilting_failures: Vec<Weight>,
    pub lr_beta: LrBetaReport,
}

impl KostkaReport {
    pub fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.passed())
            && self.single_row_failures.is_empty()
            && self.full_tilting_failures.is_empty()
            && self.lr_beta.passed()
    }
}

pub fn verify_kostka(n: usize, d: usize, l: usize) -> Result<KostkaReport> {
    if d > n {
        return Err(Error::Usage(format!("need d <= n, got n = {n}, d = {d}")));
    }
    let chars = content_characters(n, d, l)?;
    let deltas = delta_table(l, n, d);
    let blocks = weights(l, n, d)
        .iter()
        .map(|mu| {
            let ch = chars.get(mu).cloned().unwrap_or_default();
            filtration_multiplicities(mu, &ch, &deltas)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut single_row_failures = Vec::new();
    for i in 0..=l {
        let mu = iota(l, n, i, &[d]);
        let xi: BTreeMap<Weight, u64> = xi_set(l, n, d, i).into_iter().map(|w| (w, 1)).collect();
        let rep = blocks.iter().find(|b| b.content == mu).expect("every content is listed");
        if rep.multiplicities != xi {
            single_row_failures.push(i);
        }
    }
    let full = full_tilting_failures(&chars, l, n, d)?;
    let lr_beta = lr_beta_check(l, n, d);
    Ok(KostkaReport { n, d, l, blocks, single_row_failures, full_tilting_failures: full, lr_beta })
}

/// multi_lr(α, β_i(r,s), λ) against membership α ∈ Ω^λ_{β_i(r,s)}.
#[derive(Clone, Debug, Serialize)]
pub struct LrBetaReport {
    pub checked: usize,
    /// `(α, i, r, s, λ)` with the two sides disagreeing.
    pub failures: Vec<(Weight, usize, usize, usize, Weight)>,
}

impl LrBetaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive over dominant λ of degree at most `d`, all i, r ≤ deg λ and
/// admissible s.
pub fn lr_beta_check(l: usize, n: usize, d: usize) -> LrBetaReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for deg in 0..=d {
        for lam in dominant_weights(l, n, deg) {
            for i in 0..=l {
                for r in 0..=deg {
                    let ss: Vec<usize> = if i == 0 { vec![0] } else { (0..=r).collect() };
                    for s in ss {
                        if r - s > n || (i == 0 && r > n) {
                            continue;
                        }
                        let b = beta(l, n, i, r, s);
                        let omega: BTreeSet<Weight> = omega_set(&lam, i, r, s).into_iter().collect();
                        for alpha in dominant_weights(l, n, deg - r) {
                            checked += 1;
                            let lr = multi_lr(&alpha, &b, &lam);
                            let member = omega.contains(&alpha);
                            if (lr == 1) != member || lr > 1 {
                                failures.push((alpha, i, r, s, lam.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    LrBetaReport { checked, failures }
}

/// Σ_λ (Σ_μ k_{λ,μ})² and its reindexed form Σ_λ (Σ_μ k_{←λ',←μ})².
#[derive(Clone, Debug, Serialize)]
pub struct DimensionIdentity {
    #[serde(with = "crate::json::bigint_string")]
    pub kostka_sum: BigInt,
    #[serde(with = "crate::json::bigint_string")]
    pub reindexed_sum: BigInt,
    #[serde(with = "crate::json::bigint_string")]
    pub enumerated: BigInt,
}

impl DimensionIdentity {
    pub fn passed(&self) -> bool {
        self.kostka_sum == self.enumerated && self.reindexed_sum == self.enumerated
    }
}

pub fn dimension_identity(n: usize, d: usize, l: usize) -> Result<DimensionIdentity> {
    let deltas = delta_table(l, n, d);
    let mut kostka_sum = BigInt::zero();
    let mut reindexed_sum = BigInt::zero();
    let mus = weights(l, n, d);
    let mut seen = BTreeSet::new();
    for lam in deltas.keys() {
        let row: u64 = deltas[lam].values().sum();
        kostka_sum += BigInt::from(row) * BigInt::from(row);
        let key = lam.conjugate()?.reverse();
        if !seen.insert(key.clone()) {
            return Err(Error::Structure(format!("λ ↦ ←λ' is not injective at {lam}")));
        }
        let ch = deltas
            .get(&key)
            .ok_or_else(|| Error::Structure(format!("←λ' = {key} is not dominant")))?;
        let s: u64 = mus.iter().map(|mu| ch.get(&mu.reverse()).copied().unwrap_or(0)).sum();
        reindexed_sum += BigInt::from(s) * BigInt::from(s);
    }
    let z = crate::superalg::zigzag(l)?;
    let enumerated = BigInt::from(SchurAlgebra::new(&z, n, d)?.dim());
    Ok(DimensionIdentity { kostka_sum, reindexed_sum, enumerated })
}

fn to_field<F: Field>(c: &BigInt) -> F {
    F::from_bigint(c)
}

fn sign_of<F: Field>(neg: bool) -> F {
    if neg {
        -F::one()
    } else {
        F::one()
    }
}

/// Per block pair and parity: rank of the right-action maps from 𝒯^μ to 𝒯^ν.
#[derive(Clone, Debug, Default)]
pub struct RightRanks {
    /// `(μ index, ν index, odd)` → rank.
    pub ranks: BTreeMap<(usize, usize, bool), usize>,
    /// T^{Z'} basis elements acting as zero.
    pub zero: Vec<usize>,
    /// T^{Z'} basis elements whose action spreads over several block pairs.
    pub straddling: Vec<usize>,
}

impl RightRanks {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn get(&self, mu: usize, nu: usize, odd: bool) -> usize {
        self.ranks.get(&(mu, nu, odd)).copied().unwrap_or(0)
    }
}

/// Content index of each basis vector.
fn content_ids(t: &ScrT) -> (Vec<Weight>, Vec<usize>) {
    let ws = weights(t.l, t.n, t.d);
    let idx: HashMap<&Weight, usize> = ws.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let ids = t.content.iter().map(|c| idx[c]).collect();
    (ws, ids)
}

/// Ranks of v ↦ (-1)^{|v||y|} v y grouped by block pair, over F.
pub fn right_action_ranks<F: Field>(t: &ScrT) -> Result<RightRanks> {
    let (_, cid) = content_ids(t);
    let dim = t.dim() as u64;
    let mut classes: BTreeMap<(usize, usize, bool), Vec<Vec<(u64, F)>>> = BTreeMap::new();
    let mut out = RightRanks::default();
    for y in 0..t.right_alg.dim() {
        let op = t.right.operator(y)?;
        let yodd = t.right_alg.parity(y).is_odd();
        let mut pair = None;
        let mut straddles = false;
        let mut vec: Vec<(u64, F)> = Vec::new();
        for (v, img) in &op.columns {
            let vodd = t.parity(*v).is_odd();
            for (w, c) in img {
                let p = (cid[*v], cid[*w]);
                match pair {
                    None => pair = Some(p),
                    Some(q) if q != p => straddles = true,
                    _ => {}
                }
                let f: F = to_field::<F>(c) * sign_of::<F>(vodd && yodd);
                if !f.is_zero() {
                    vec.push((*w as u64 * dim + *v as u64, f));
                }
            }
        }
        vec.sort_by_key(|(k, _)| *k);
        match pair {
            None => out.zero.push(y),
            Some(_) if straddles => out.straddling.push(y),
            Some((mu, nu)) => classes.entry((mu, nu, yodd)).or_default().push(vec),
        }
    }
    out.ranks = classes
        .into_par_iter()
        .map(|(k, vs)| (k, crate::exact_linalg::rank_by_components(&vs)))
        .collect();
    Ok(out)
}

/// dim Hom(𝒯^μ, 𝒯^ν) in one parity.
#[derive(Clone, Debug, Serialize)]
pub struct BlockHom {
    pub source: Weight,
    pub target: Weight,
    pub odd: bool,
    pub unknowns: usize,
    pub dim: usize,
    /// Rank of the right-action maps in this class.
    pub lower: usize,
    pub operators_used: usize,
}

/// dim End(𝒯) by parity, with the per-block data.
#[derive(Clone, Debug, Serialize)]
pub struct EndReport {
    pub even: usize,
    pub odd: usize,
    pub total: usize,
    pub blocks: Vec<BlockHom>,
    /// Block classes where fewer solutions than right-action maps remained.
    pub below_lower_bound: Vec<(Weight, Weight, bool)>,
}

/// Left operators ordered by how many of their entries are not diagonal
/// idempotents; pure idempotents are dropped (the unknowns already respect
/// weights).
fn constraint_order(t: &ScrT) -> Vec<(usize, Weight)> {
    let alg = &t.left_alg;
    let h = alg.base.heredity.as_ref().expect("checked at construction");
    let idem: BTreeSet<usize> = h.e.iter().copied().collect();
    let mut xs: Vec<(usize, usize, Weight)> = (0..alg.dim())
        .filter_map(|x| {
            let k = alg.triples(x).iter().filter(|&&(b, r, s)| !(idem.contains(&b) && r == s)).count();
            if k == 0 {
                return None;
            }
            let (_, rw) = alg.basis_weights(x)?;
            Some((k, x, rw))
        })
        .collect();
    xs.sort();
    xs.into_iter().map(|(_, x, rw)| (x, rw)).collect()
}

struct BlockIndex<'a> {
    members: &'a [usize],
    pos: HashMap<usize, usize>,
    by_weight: HashMap<&'a Weight, Vec<usize>>,
}

impl<'a> BlockIndex<'a> {
    fn new(t: &'a ScrT, members: &'a [usize]) -> Self {
        let pos = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut by_weight: HashMap<&Weight, Vec<usize>> = HashMap::new();
        for (k, &v) in members.iter().enumerate() {
            by_weight.entry(&t.left_weight[v]).or_default().push(k);
        }
        BlockIndex { members, pos, by_weight }
    }
}

#[allow(clippy::too_many_arguments)]
fn hom_block<F: Field>(
    t: &ScrT,
    ops: &[(usize, Weight)],
    src: &BlockIndex,
    dst: &BlockIndex,
    odd: bool,
    lower: usize,
    early_exit: bool,
) -> Result<(usize, usize, usize)> {
    let fpar = if odd { Parity::Odd } else { Parity::Even };
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    for (vl, &v) in src.members.iter().enumerate() {
        if let Some(ws) = dst.by_weight.get(&t.left_weight[v]) {
            for &wl in ws {
                if t.parity(dst.members[wl]) == t.parity(v) + fpar {
                    let k = unknown.len();
                    unknown.insert((wl, vl), k);
                }
            }
        }
    }
    let nunk = unknown.len();
    if nunk == 0 {
        return Ok((0, 0, 0));
    }
    let mut ech = Echelon::<F>::new(nunk);
    let mut used = 0;
    for (x, rw) in ops {
        if early_exit && ech.nullity() <= lower {
            break;
        }
        if !src.by_weight.contains_key(rw) && !dst.by_weight.contains_key(rw) {
            continue;
        }
        used += 1;
        let op: Arc<IntOperator> = t.left.operator(*x)?;
        let s_neg = odd && t.left_alg.parity(*x).is_odd();
        let mut eqs: HashMap<(usize, usize), BTreeMap<usize, F>> = HashMap::new();
        // (F X)[w][v] = Σ_u F[w][u] X[u][v]
        if src.by_weight.contains_key(rw) {
            for (vl, &v) in src.members.iter().enumerate() {
                let Some(img) = op.image(v) else { continue };
                for (u, c) in img {
                    let ul = *src.pos.get(u).ok_or_else(|| Error::Structure("left action leaves a block".into()))?;
                    let Some(ws) = dst.by_weight.get(&t.left_weight[*u]) else { continue };
                    for &wl in ws {
                        if let Some(&k) = unknown.get(&(wl, ul)) {
                            let e = eqs.entry((wl, vl)).or_default().entry(k).or_insert_with(F::zero);
                            *e = e.clone() + to_field::<F>(c);
                        }
                    }
                }
            }
        }
        // - s (X F)[w][v] = - s Σ_u X[w][u] F[u][v]
        if dst.by_weight.contains_key(rw) {
            for (ul, &u) in dst.members.iter().enumerate() {
                let Some(img) = op.image(u) else { continue };
                let Some(vs) = src.by_weight.get(&t.left_weight[u]) else { continue };
                for (w, c) in img {
                    let wl = *dst.pos.get(w).ok_or_else(|| Error::Structure("left action leaves a block".into()))?;
                    let f = to_field::<F>(c) * sign_of::<F>(s_neg);
                    for &vl in vs {
                        if let Some(&k) = unknown.get(&(ul, vl)) {
                            let e = eqs.entry((wl, vl)).or_default().entry(k).or_insert_with(F::zero);
                            *e = e.clone() - f.clone();
                        }
                    }
                }
            }
        }
        let mut rows: Vec<((usize, usize), SparseVec<F>)> = eqs
            .into_iter()
            .map(|(key, row)| (key, row.into_iter().filter(|(_, v)| !v.is_zero()).collect()))
            .collect();
        rows.sort_by_key(|(k, _)| *k);
        for (_, r) in rows {
            if !r.is_empty() {
                ech.insert(r);
            }
        }
    }
    Ok((nunk, ech.nullity(), used))
}

/// dim End_{T^Z(n,d)}(𝒯) over F, blockwise by content.
///
/// With `early_exit`, a block class stops taking constraints once its
/// solution space is no larger than the span of the right-action maps in
/// that class; that span lies in the solution space whenever the two
/// actions commute, so the count is exact given commutation.
pub fn end_dimension<F: Field>(t: &ScrT, ranks: &RightRanks, early_exit: bool) -> Result<EndReport> {
    let (ws, _) = content_ids(t);
    let blocks = t.blocks();
    let ops = constraint_order(t);
    let index: Vec<Option<BlockIndex>> = ws.iter().map(|w| blocks.get(w).map(|m| BlockIndex::new(t, m))).collect();
    let mut jobs = Vec::new();
    for mu in 0..ws.len() {
        for nu in 0..ws.len() {
            if index[mu].is_none() || index[nu].is_none() {
                continue;
            }
            for odd in [false, true] {
                jobs.push((mu, nu, odd));
            }
        }
    }
    // operators are computed once and shared through the action cache
    let results: Vec<Result<BlockHom>> = jobs
        .par_iter()
        .map(|&(mu, nu, odd)| {
            let lower = ranks.get(mu, nu, odd);
            let (src, dst) = (index[mu].as_ref().expect("listed"), index[nu].as_ref().expect("listed"));
            let (unknowns, dim, used) = hom_block::<F>(t, &ops, src, dst, odd, lower, early_exit)?;
            Ok(BlockHom { source: ws[mu].clone(), target: ws[nu].clone(), odd, unknowns, dim, lower, operators_used: used })
        })
        .collect();
    let mut report = EndReport { even: 0, odd: 0, total: 0, blocks: Vec::new(), below_lower_bound: Vec::new() };
    for r in results {
        let b = r?;
        if b.dim < b.lower {
            report.below_lower_bound.push((b.source.clone(), b.target.clone(), b.odd));
        }
        if b.odd {
            report.odd += b.dim;
        } else {
            report.even += b.dim;
        }
        if b.unknowns > 0 {
            report.blocks.push(b);
        }
    }
    report.total = report.even + report.odd;
    Ok(report)
}

/// How the commutation of the two actions is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CommutationMode {
    /// Every `(x, v, y)` with `x v y` possibly nonzero.
    Exhaustive,
    /// Random triples from the same cells.
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub mode: CommutationMode,
    pub checked: u64,
    /// `(x, v, y)` with `(x v) y ≠ x (v y)`.
    pub failure: Option<(usize, usize, usize)>,
}

fn apply(op: &IntOperator, v: &Comb) -> Comb {
    let mut raw = Vec::new();
    for (k, c) in v {
        if let Some(img) = op.image(*k) {
            for (j, e) in img {
                raw.push((*j, c * e));
            }
        }
    }
    comb_normalize(raw)
}

/// Check `(x v) y = x (v y)` on basis triples. Triples outside the cells
/// `rw(x) = lw(v)`, `lw(y) = rw'(v)` vanish on both sides.
pub fn check_commutation(t: &ScrT, mode: CommutationMode) -> Result<CommutationReport> {
    let mut by_rw: HashMap<Weight, Vec<usize>> = HashMap::new();
    for x in 0..t.left_alg.dim() {
        if let Some((_, rw)) = t.left_alg.basis_weights(x) {
            by_rw.entry(rw).or_default().push(x);
        }
    }
    let mut by_lw: HashMap<Weight, Vec<usize>> = HashMap::new();
    for y in 0..t.right_alg.dim() {
        if let Some((lw, _)) = t.right_alg.basis_weights(y) {
            by_lw.entry(lw).or_default().push(y);
        }
    }
    let empty = Vec::new();
    let cell = |v: usize| {
        (
            by_rw.get(&t.left_weight[v]).unwrap_or(&empty),
            by_lw.get(&t.right_weight[v]).unwrap_or(&empty),
        )
    };
    let check = |x: usize, v: usize, y: usize| -> Result<bool> {
        let lx = t.left.operator(x)?;
        let ry = t.right.operator(y)?;
        let one = vec![(v, BigInt::one())];
        Ok(apply(&ry, &apply(&lx, &one)) == apply(&lx, &apply(&ry, &one)))
    };
    let mut checked = 0u64;
    match mode {
        CommutationMode::Exhaustive => {
            for v in 0..t.dim() {
                let (xs, ys) = cell(v);
                for &x in xs {
                    for &y in ys {
                        checked += 1;
                        if !check(x, v, y)? {
                            return Ok(CommutationReport { mode, checked, failure: Some((x, v, y)) });
                        }
                    }
                }
            }
        }
        CommutationMode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let v = rng.gen_range(0..t.dim());
                let (xs, ys) = cell(v);
                if xs.is_empty() || ys.is_empty() {
                    continue;
                }
                let x = xs[rng.gen_range(0..xs.len())];
                let y = ys[rng.gen_range(0..ys.len())];
                checked += 1;
                if !check(x, v, y)? {
                    return Ok(CommutationReport { mode, checked, failure: Some((x, v, y)) });
                }
            }
        }
    }
    Ok(CommutationReport { mode, checked, failure: None })
}

/// One line of the Hom-dimension comparison.
#[derive(Clone, Debug, Serialize)]
pub struct HomMismatch {
    pub source: Weight,
    pub target: Weight,
    pub hom: usize,
    pub filtration: u64,
}

/// dim Hom(𝒯^μ, 𝒯^ν) against Σ_λ (𝒯^μ:Δ(λ))(𝒯^ν:Δ(λ)).
pub fn hom_consistency(end: &EndReport, filtrations: &[FiltrationReport]) -> Vec<HomMismatch> {
    let mut hom: BTreeMap<(Weight, Weight), usize> = BTreeMap::new();
    for b in &end.blocks {
        *hom.entry((b.source.clone(), b.target.clone())).or_insert(0) += b.dim;
    }
    let mut out = Vec::new();
    for f in filtrations {
        for g in filtrations {
            let predicted: u64 =
                f.multiplicities.iter().map(|(lam, m)| m * g.multiplicities.get(lam).copied().unwrap_or(0)).sum();
            let got = hom.get(&(f.content.clone(), g.content.clone())).copied().unwrap_or(0);
            if got as u64 != predicted {
                out.push(HomMismatch { source: f.content.clone(), target: g.content.clone(), hom: got, filtration: predicted });
            }
        }
    }
    out
}

/// All legs of the Ringel self-duality check at one `(n, d, l, F)`.
#[derive(Clone, Debug, Serialize)]
pub struct RingelReport {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub field: String,
    pub dim_scrt: usize,
    pub dim_left: usize,
    pub dim_right: usize,
    pub left_even_odd: (usize, usize),
    pub right_even_odd: (usize, usize),
    /// rank of T^{Z'}(n,d) → End(𝒯)
    pub faithful_rank: usize,
    pub zero_actions: Vec<usize>,
    pub straddling_actions: Vec<usize>,
    pub commutation: CommutationReport,
    pub end: EndReport,
    pub identity: DimensionIdentity,
    pub hom_mismatches: Vec<HomMismatch>,
    /// Wall-clock per leg; left out of JSON so output is reproducible.
    #[serde(skip_serializing)]
    pub timings_ms: BTreeMap<String, u128>,
}

impl RingelReport {
    pub fn faithful(&self) -> bool {
        self.faithful_rank == self.dim_right && self.zero_actions.is_empty() && self.straddling_actions.is_empty()
    }

    pub fn commute(&self) -> bool {
        self.commutation.failure.is_none()
    }

    pub fn end_matches(&self) -> bool {
        self.end.total == self.dim_left
            && (self.end.even, self.end.odd) == self.right_even_odd
            && self.end.below_lower_bound.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.faithful()
            && self.commute()
            && self.end_matches()
            && self.identity.passed()
            && self.hom_mismatches.is_empty()
    }
}

/// Options for [`verify_ringel`].
#[derive(Clone, Copy, Debug)]
pub struct RingelOptions {
    pub commutation: CommutationMode,
    pub early_exit: bool,
}

impl Default for RingelOptions {
    fn default() -> Self {
        RingelOptions { commutation: CommutationMode::Exhaustive, early_exit: false }
    }
}

pub fn verify_ringel_over<F: Field>(t: &ScrT, opts: RingelOptions) -> Result<RingelReport> {
    let mut timings = BTreeMap::new();
    let clock = Instant::now();
    if let Some((a, v)) = t.carrier_closure_failure() {
        return Err(Error::Structure(format!("carrier pair ({a}, {v}) changes content")));
    }
    let ranks = right_action_ranks::<F>(t)?;
    timings.insert("faithfulness".to_string(), clock.elapsed().as_millis());
    let clock = Instant::now();
    let commutation = check_commutation(t, opts.commutation)?;
    timings.insert("commutation".to_string(), clock.elapsed().as_millis());
    let clock = Instant::now();
    let end = end_dimension::<F>(t, &ranks, opts.early_exit)?;
    timings.insert("end".to_string(), clock.elapsed().as_millis());
    let clock = Instant::now();
    let identity = dimension_identity(t.n, t.d, t.l)?;
    let deltas = delta_table(t.l, t.n, t.d);
    let blocks = t.blocks();
    let filtrations = weights(t.l, t.n, t.d)
        .iter()
        .map(|mu| {
            let ch = blocks.get(mu).map(|b| t.basis_character(b)).unwrap_or_default();
            filtration_multiplicities(mu, &ch, &deltas)
        })
        .collect::<Result<Vec<_>>>()?;
    let hom_mismatches = hom_consistency(&end, &filtrations);
    timings.insert("combinatorics".to_string(), clock.elapsed().as_millis());
    Ok(RingelReport {
        n: t.n,
        d: t.d,
        l: t.l,
        field: F::field_name(),
        dim_scrt: t.dim(),
        dim_left: t.left_alg.dim(),
        dim_right: t.right_alg.dim(),
        left_even_odd: t.left_alg.even_odd_dims(),
        right_even_odd: t.right_alg.even_odd_dims(),
        faithful_rank: ranks.total(),
        zero_actions: ranks.zero,
        straddling_actions: ranks.straddling,
        commutation,
        end,
        identity,
        hom_mismatches,
        timings_ms: timings,
    })
}

macro_rules! dispatch_prime {
    ($p:expr, $t:expr, $opts:expr, [$($q:literal),*]) => {
        match $p {
            $($q => verify_ringel_over::<Fp<$q>>($t, $opts),)*
            other => Err(Error::Usage(format!("no compiled field F{other}"))),
        }
    };
}

/// Build 𝒯 and run every leg over the requested field.
pub fn verify_ringel(n: usize, d: usize, l: usize, field: FieldSpec, opts: RingelOptions) -> Result<RingelReport> {
    let t = build_scrt(n, d, l)?;
    verify_ringel_on(&t, field, opts)
}

pub fn verify_ringel_on(t: &ScrT, field: FieldSpec, opts: RingelOptions) -> Result<RingelReport> {
    match field {
        FieldSpec::Rational => verify_ringel_over::<Rational>(t, opts),
        FieldSpec::Prime(p) => dispatch_prime!(p, t, opts, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 32003]),
    }
}
