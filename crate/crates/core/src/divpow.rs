//! Modified divided powers of calibrated supermodules and superalgebras.
//!
//! For a calibrated module V with ordered basis B, the d-th modified divided
//! power is spanned by the vectors `y_b` for `b` running over the sorted
//! d-multisets of basis indices in which odd entries do not repeat. Here
//! `x_b` is the signed sum of the distinct rearrangements of `b` and
//! `y_b = [b]!_c x_b`, where `[b]!_c` multiplies the factorials of the
//! multiplicities of the `c`-class entries.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::exact_div;
use crate::superalg::{BasisElement, CalClass, Comb, Parity, Side};

/// A sorted d-multiset of basis indices.
pub type Multiset = Vec<u32>;

/// An element of V^{⊗d}, keyed by index tuples.
pub type Tensor = BTreeMap<Vec<u32>, BigInt>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All sorted d-multisets of `0..basis.len()` whose odd entries are distinct,
/// in lexicographic order.
pub fn seq_orbits(basis: &[BasisElement], d: usize) -> Vec<Multiset> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(basis: &[BasisElement], d: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Multiset>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..basis.len() {
            let next = if basis[i].parity.is_odd() { i + 1 } else { i };
            cur.push(i as u32);
            rec(basis, d, next, cur, out);
            cur.pop();
        }
    }
    rec(basis, d, 0, &mut cur, &mut out);
    out
}

/// Number of orbits, counted without listing them.
pub fn seq_orbit_count(even: usize, odd: usize, d: usize) -> BigInt {
    let binom = |n: usize, k: usize| -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let mut r = BigInt::one();
        for i in 0..k {
            r = r * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        r
    };
    let mut total = BigInt::zero();
    for k in 0..=d.min(odd) {
        // multisets of size d-k from the even part
        let m = d - k;
        let even_part = if even == 0 { if m == 0 { BigInt::one() } else { BigInt::zero() } } else { binom(even + m - 1, m) };
        total += binom(odd, k) * even_part;
    }
    total
}

/// `#{k < l : b_k, b_l odd, b_k > b_l}`.
pub fn sign_angle(tuple: &[u32], parity: &[Parity]) -> usize {
    let mut count = 0;
    for k in 0..tuple.len() {
        if !parity[tuple[k] as usize].is_odd() {
            continue;
        }
        for l in k + 1..tuple.len() {
            if parity[tuple[l] as usize].is_odd() && tuple[k] > tuple[l] {
                count += 1;
            }
        }
    }
    count
}

/// `#{k > l : |u_k| = |v_l| = 1}`, the sign exponent for multiplying the
/// tensors u and v factorwise.
pub fn cross_angle(u: &[u32], pu: &[Parity], v: &[u32], pv: &[Parity]) -> usize {
    let mut count = 0;
    let mut odd_v_before = 0;
    for k in 0..u.len() {
        if pu[u[k] as usize].is_odd() {
            count += odd_v_before;
        }
        if pv[v[k] as usize].is_odd() {
            odd_v_before += 1;
        }
    }
    count
}

/// Distinct rearrangements of a sorted multiset, in lexicographic order.
pub fn arrangements(ms: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = ms.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `[b]!_c`: product of factorials of multiplicities of c-class entries.
pub fn cal_factorial(ms: &[u32], classes: &[CalClass]) -> BigInt {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &i in ms {
        if classes[i as usize] == CalClass::C {
            *counts.entry(i).or_default() += 1;
        }
    }
    counts.values().fold(BigInt::one(), |acc, &m| acc * factorial(m))
}

fn neg_if(x: BigInt, neg: bool) -> BigInt {
    if neg {
        -x
    } else {
        x
    }
}

/// Signed sum of the distinct rearrangements of `ms`.
pub fn expand_x(ms: &[u32], parity: &[Parity]) -> Tensor {
    let base = sign_angle(ms, parity);
    arrangements(ms)
        .into_iter()
        .map(|t| {
            let s = (base + sign_angle(&t, parity)) % 2 == 1;
            (t, neg_if(BigInt::one(), s))
        })
        .collect()
}

/// `y_b` as an element of V^{⊗d}.
pub fn expand_y(ms: &[u32], basis: &[BasisElement]) -> Tensor {
    let parity: Vec<Parity> = basis.iter().map(|b| b.parity).collect();
    let classes: Vec<CalClass> = basis.iter().map(|b| b.class).collect();
    let f = cal_factorial(ms, &classes);
    expand_x(ms, &parity).into_iter().map(|(t, v)| (t, v * &f)).collect()
}

/// Precomputed rearrangement data for one orbit.
#[derive(Clone, Debug)]
struct OrbitData {
    /// (rearrangement, parity of its sign angle)
    arrangements: Vec<(Vec<u32>, bool)>,
    cal_factorial: BigInt,
}

/// The modified divided power Γ̃^d V of a calibrated module V.
#[derive(Clone, Debug)]
pub struct DividedPower {
    pub carrier: Vec<BasisElement>,
    pub d: usize,
    pub orbits: Vec<Multiset>,
    lookup: HashMap<Multiset, usize>,
    parity: Vec<Parity>,
    classes: Vec<CalClass>,
    data: Vec<OrbitData>,
}

impl DividedPower {
    pub fn new(carrier: &[BasisElement], d: usize) -> Self {
        Self::with_orbits(carrier, d, seq_orbits(carrier, d))
    }

    /// Restrict to a given list of orbits (for example a content block).
    pub fn with_orbits(carrier: &[BasisElement], d: usize, orbits: Vec<Multiset>) -> Self {
        let parity: Vec<Parity> = carrier.iter().map(|b| b.parity).collect();
        let classes: Vec<CalClass> = carrier.iter().map(|b| b.class).collect();
        let lookup = orbits.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let data = orbits
            .iter()
            .map(|m| OrbitData {
                arrangements: arrangements(m)
                    .into_iter()
                    .map(|t| {
                        let s = sign_angle(&t, &parity) % 2 == 1;
                        (t, s)
                    })
                    .collect(),
                cal_factorial: cal_factorial(m, &classes),
            })
            .collect();
        DividedPower { carrier: carrier.to_vec(), d, orbits, lookup, parity, classes, data }
    }

    pub fn dim(&self) -> usize {
        self.orbits.len()
    }

    pub fn index_of(&self, ms: &[u32]) -> Option<usize> {
        self.lookup.get(ms).copied()
    }

    pub fn parity_of(&self, idx: usize) -> Parity {
        self.orbits[idx]
            .iter()
            .fold(Parity::Even, |p, &i| p + self.parity[i as usize])
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity_of(i)).collect()
    }

    pub fn carrier_parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn carrier_classes(&self) -> &[CalClass] {
        &self.classes
    }

    pub fn cal_factorial(&self, idx: usize) -> &BigInt {
        &self.data[idx].cal_factorial
    }

    pub fn name(&self, idx: usize) -> String {
        let parts: Vec<&str> = self.orbits[idx].iter().map(|&i| self.carrier[i as usize].name.as_str()).collect();
        format!("y({})", parts.join(","))
    }

    pub fn expand_y(&self, idx: usize) -> Tensor {
        expand_y(&self.orbits[idx], &self.carrier)
    }

    /// Write a symmetric tensor in the y basis. Fails when the tensor is not
    /// in the span of the listed orbits.
    pub fn reexpress(&self, t: &Tensor) -> Result<Vec<(usize, BigRational)>> {
        let mut out = Vec::new();
        for (key, v) in t {
            if v.is_zero() {
                continue;
            }
            let mut sorted = key.clone();
            sorted.sort_unstable();
            if &sorted != key {
                continue;
            }
            let idx = self
                .index_of(key)
                .ok_or_else(|| Error::Structure(format!("tensor has a component outside the divided power: {key:?}")))?;
            let coeff = BigRational::new(v.clone(), self.data[idx].cal_factorial.clone());
            out.push((idx, coeff));
        }
        // every y_b has integral tensor coefficients times coeff; compare exactly
        let mut diff = t.clone();
        for (idx, coeff) in &out {
            for (k, w) in self.expand_y(*idx) {
                let val = BigRational::from_integer(w) * coeff;
                if !val.is_integer() {
                    return Err(Error::NotIntegral(format!("reconstruction at {k:?}")));
                }
                let e = diff.entry(k).or_insert_with(BigInt::zero);
                *e -= val.to_integer();
            }
        }
        if diff.values().any(|v| !v.is_zero()) {
            return Err(Error::Structure("tensor is not symmetric in the divided power".into()));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// Like [`Self::reexpress`] but requires integral coefficients.
    pub fn reexpress_integral(&self, t: &Tensor) -> Result<Comb> {
        self.reexpress(t)?
            .into_iter()
            .map(|(i, q)| {
                if q.is_integer() {
                    Ok((i, q.to_integer()))
                } else {
                    Err(Error::NotIntegral(format!("coefficient {q} of {}", self.name(i))))
                }
            })
            .collect()
    }
}

/// Where to look up a single product of basis vectors.
#[derive(Clone, Copy, Debug)]
pub struct ProductTable<'a> {
    pub table: &'a [Comb],
    /// Stride of the acting index in `table`.
    pub acting_stride: usize,
    /// Stride of the target index in `table`.
    pub target_stride: usize,
    pub side: Side,
}

impl<'a> ProductTable<'a> {
    pub fn get(&self, a: u32, v: u32) -> &'a Comb {
        &self.table[a as usize * self.acting_stride + v as usize * self.target_stride]
    }
}

/// Structure constant `η^a y_c` (or `y_c η^a` on the right) in the y basis of
/// `target`, by the orbit-sum formula: the x-basis coefficient of `x_b` sums
/// over pairs of rearrangements modulo the stabiliser of `b`, each weighted
/// by its orbit length.
pub fn orbit_sum_product(
    prod: &ProductTable<'_>,
    acting: &DividedPower,
    target: &DividedPower,
    a: usize,
    c: usize,
) -> Result<Comb> {
    let d = acting.d;
    debug_assert_eq!(d, target.d);
    let pa = &acting.parity;
    let pc = &target.parity;
    let mut f: HashMap<Vec<u32>, BigInt> = HashMap::new();
    let mut combos: Vec<&Comb> = Vec::with_capacity(d);
    for (a2, sa) in &acting.data[a].arrangements {
        'pairs: for (c2, sc) in &target.data[c].arrangements {
            combos.clear();
            for k in 0..d {
                let p = prod.get(a2[k], c2[k]);
                if p.is_empty() {
                    continue 'pairs;
                }
                combos.push(p);
            }
            let cross = match prod.side {
                Side::Left => cross_angle(a2, pa, c2, pc),
                Side::Right => cross_angle(c2, pc, a2, pa),
            };
            let neg = (*sa as usize + *sc as usize + cross) % 2 == 1;
            // expand the factorwise product
            let mut stack: Vec<(Vec<u32>, BigInt)> = vec![(Vec::with_capacity(d), BigInt::one())];
            for p in &combos {
                let mut next = Vec::with_capacity(stack.len() * p.len());
                for (t, v) in &stack {
                    for (k, w) in p.iter() {
                        let kk = *k as u32;
                        if let Some(&last) = t.last() {
                            if kk < last {
                                continue;
                            }
                        }
                        let mut t2 = t.clone();
                        t2.push(kk);
                        next.push((t2, v * w));
                    }
                }
                stack = next;
            }
            for (b, kappa) in stack {
                // b is sorted; keep pairs minimal in their stabiliser orbit
                let mut index = BigInt::one();
                let mut k = 0;
                let mut minimal = true;
                let mut in_seq = true;
                while k < d {
                    let mut e = k + 1;
                    while e < d && b[e] == b[k] {
                        e += 1;
                    }
                    if e - k > 1 {
                        if target.parity[b[k] as usize].is_odd() {
                            in_seq = false;
                            break;
                        }
                        let mut pairs: Vec<(u32, u32)> = (k..e).map(|q| (a2[q], c2[q])).collect();
                        if pairs.windows(2).any(|w| w[0] > w[1]) {
                            minimal = false;
                            break;
                        }
                        pairs.dedup();
                        let mut denom = BigInt::one();
                        let mut q = k;
                        while q < e {
                            let mut r = q + 1;
                            while r < e && (a2[r], c2[r]) == (a2[q], c2[q]) {
                                r += 1;
                            }
                            denom *= factorial(r - q);
                            q = r;
                        }
                        index *= factorial(e - k) / denom;
                    }
                    k = e;
                }
                if !minimal || !in_seq {
                    continue;
                }
                let e = f.entry(b).or_insert_with(BigInt::zero);
                *e += neg_if(kappa * index, neg);
            }
        }
    }
    let num_factor = &acting.data[a].cal_factorial * &target.data[c].cal_factorial;
    let mut out = Vec::new();
    for (b, v) in f {
        if v.is_zero() {
            continue;
        }
        let idx = target.index_of(&b).ok_or_else(|| {
            Error::Structure(format!("product leaves the divided power at {b:?}"))
        })?;
        let num = v * &num_factor;
        let q = exact_div(&num, &target.data[idx].cal_factorial).ok_or_else(|| {
            Error::NotIntegral(format!("{num} / {}", target.data[idx].cal_factorial))
        })?;
        out.push((idx, q));
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

/// A sparse operator: images of the target basis vectors that are nonzero.
#[derive(Clone, Debug, Default)]
pub struct IntOperator {
    pub columns: Vec<(usize, Comb)>,
}

impl IntOperator {
    pub fn image(&self, c: usize) -> Option<&Comb> {
        self.columns
            .binary_search_by_key(&c, |(i, _)| *i)
            .ok()
            .map(|p| &self.columns[p].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn triples(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (c, comb) in &self.columns {
            for (r, v) in comb {
                out.push((*r, *c, v.clone()));
            }
        }
        out
    }
}

/// Dense integer Gram matrix of a bilinear form.
pub type Gram = Vec<Vec<BigInt>>;

/// The form extended to tensors:
/// `(v_1⊗…⊗v_d, w_1⊗…⊗w_d)_d = (-1)^{⟨v,w⟩} Π (v_k, w_k)`.
pub fn tensor_form(gram: &Gram, parity: &[Parity], s: &Tensor, t: &Tensor) -> BigInt {
    let mut total = BigInt::zero();
    for (u, x) in s {
        'pairs: for (v, y) in t {
            let mut p = x * y;
            for k in 0..u.len() {
                let g = &gram[u[k] as usize][v[k] as usize];
                if g.is_zero() {
                    continue 'pairs;
                }
                p *= g;
            }
            if cross_angle(u, parity, v, parity) % 2 == 1 {
                p = -p;
            }
            total += p;
        }
    }
    total
}

/// Gram matrix of `(·,·)_d` on the y basis.
pub fn lifted_form_unscaled(dp: &DividedPower, gram: &Gram) -> Gram {
    let ys: Vec<Tensor> = (0..dp.dim()).map(|i| dp.expand_y(i)).collect();
    ys.iter().map(|s| ys.iter().map(|t| tensor_form(gram, &dp.parity, s, t)).collect()).collect()
}

/// Gram matrix of `(·,·)_∼ = (·,·)_d / d!` on the y basis; fails when an
/// entry is not divisible by d!.
pub fn lifted_form(dp: &DividedPower, gram: &Gram) -> Result<Gram> {
    let fact: BigInt = (1..=dp.d).map(BigInt::from).product();
    lifted_form_unscaled(dp, gram)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| exact_div(&v, &fact).ok_or_else(|| Error::NotIntegral(format!("form value {v} over {fact}"))))
                .collect()
        })
        .collect()
}

/// Action of Γ̃^d A on Γ̃^d V, with operators computed on demand and cached.
#[derive(Debug)]
pub struct GammaAction {
    pub side: Side,
    pub acting: Arc<DividedPower>,
    pub target: Arc<DividedPower>,
    table: Arc<Vec<Comb>>,
    acting_stride: usize,
    target_stride: usize,
    cache: Vec<OnceLock<Arc<IntOperator>>>,
    // for each carrier index of the acting algebra, which target carrier
    // indices it acts on nontrivially
    support: Vec<Vec<bool>>,
}

impl GammaAction {
    pub fn new(
        side: Side,
        acting: Arc<DividedPower>,
        target: Arc<DividedPower>,
        table: Arc<Vec<Comb>>,
        acting_stride: usize,
        target_stride: usize,
    ) -> Self {
        let na = acting.carrier.len();
        let nv = target.carrier.len();
        let mut support = vec![vec![false; nv]; na];
        for (a, row) in support.iter_mut().enumerate() {
            for (v, s) in row.iter_mut().enumerate() {
                *s = !table[a * acting_stride + v * target_stride].is_empty();
            }
        }
        let cache = (0..acting.dim()).map(|_| OnceLock::new()).collect();
        GammaAction { side, acting, target, table, acting_stride, target_stride, cache, support }
    }

    fn product_table(&self) -> ProductTable<'_> {
        ProductTable {
            table: &self.table,
            acting_stride: self.acting_stride,
            target_stride: self.target_stride,
            side: self.side,
        }
    }

    /// `η^a y_c` (or `y_c η^a`).
    pub fn act(&self, a: usize, c: usize) -> Result<Comb> {
        orbit_sum_product(&self.product_table(), &self.acting, &self.target, a, c)
    }

    fn could_act(&self, a: usize, c: usize) -> bool {
        // every target entry must meet some acting entry
        let am = &self.acting.orbits[a];
        self.target.orbits[c]
            .iter()
            .all(|&v| am.iter().any(|&x| self.support[x as usize][v as usize]))
    }

    /// The full operator of `η^a` on the target, cached.
    pub fn operator(&self, a: usize) -> Result<Arc<IntOperator>> {
        if let Some(op) = self.cache[a].get() {
            return Ok(op.clone());
        }
        let mut cols = Vec::new();
        for c in 0..self.target.dim() {
            if !self.could_act(a, c) {
                continue;
            }
            let img = self.act(a, c)?;
            if !img.is_empty() {
                cols.push((c, img));
            }
        }
        let op = Arc::new(IntOperator { columns: cols });
        Ok(self.cache[a].get_or_init(|| op).clone())
    }
}
