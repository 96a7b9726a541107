//! Multicompositions, multipartitions, coloured tableaux and
//! Littlewood-Richardson coefficients.
//!
//! A weight for vertices `0..=l` and `n` rows is an `(l+1) x n` array of
//! nonnegative integers; component `i` is the composition attached to vertex `i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Vec<usize>>);

impl Weight {
    pub fn zero(l: usize, n: usize) -> Self {
        Weight(vec![vec![0; n]; l + 1])
    }

    pub fn components(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> usize {
        self.0.first().map_or(0, |c| c.len())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    /// The vector of component sizes `(|λ^(0)|, ..., |λ^(l)|)`.
    pub fn norm(&self) -> Vec<usize> {
        self.0.iter().map(|c| c.iter().sum()).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| c.windows(2).all(|w| w[0] >= w[1]))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    /// `←λ`: component `i` becomes component `l - i`.
    pub fn reverse(&self) -> Weight {
        Weight(self.0.iter().rev().cloned().collect())
    }

    /// Componentwise conjugate partition, padded to the same number of rows.
    pub fn conjugate(&self) -> Result<Weight> {
        let n = self.rows();
        let comps = self
            .0
            .iter()
            .map(|c| {
                let conj = conjugate_partition(c);
                if conj.len() > n {
                    return Err(Error::Usage(format!("conjugate of {c:?} has more than {n} parts")));
                }
                Ok(pad(&conj, n))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(comps))
    }

    /// Parse `"2,0|0,1"`: components separated by `|`, rows by `,`.
    pub fn parse(s: &str) -> Result<Weight> {
        let comps: Result<Vec<Vec<usize>>> = s
            .split('|')
            .map(|c| {
                c.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Usage(format!("bad weight {s:?}"))))
                    .collect()
            })
            .collect();
        let comps = comps?;
        let n = comps.first().map_or(0, |c| c.len());
        if comps.iter().any(|c| c.len() != n) {
            return Err(Error::Usage(format!("weight {s:?} has ragged components")));
        }
        Ok(Weight(comps))
    }
}

// serialized as its display form, so weights can be map keys
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Weight::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

pub fn pad(p: &[usize], n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = p.to_vec();
    v.resize(n.max(v.len()), 0);
    v
}

pub fn trim(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    let p = trim(p);
    let first = p.first().copied().unwrap_or(0);
    (1..=first).map(|k| p.iter().filter(|&&x| x >= k).count()).collect()
}

/// `ι_i(λ)`: the weight with `λ` in component `i` and zero elsewhere.
pub fn iota(l: usize, n: usize, i: usize, lambda: &[usize]) -> Weight {
    let mut w = Weight::zero(l, n);
    w.0[i] = pad(lambda, n);
    w.0[i].truncate(n);
    w
}

/// `ι_i(ε_r)` with `r` 0-based.
pub fn unit_weight(l: usize, n: usize, i: usize, r: usize) -> Weight {
    let mut w = Weight::zero(l, n);
    w.0[i][r] = 1;
    w
}

/// Compositions of `d` into `k` ordered parts.
pub fn compositions(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Partitions of `d` with at most `n` parts, padded to length `n`.
pub fn partitions(d: usize, n: usize) -> Vec<Vec<usize>> {
    compositions(n, d).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])).collect()
}

/// All weights of degree `d`: the set Λ^I(n, d).
pub fn weights(l: usize, n: usize, d: usize) -> Vec<Weight> {
    compositions((l + 1) * n, d)
        .into_iter()
        .map(|flat| Weight(flat.chunks(n).map(|c| c.to_vec()).collect()))
        .collect()
}

/// Multipartitions: the set Λ^I_+(n, d).
pub fn dominant_weights(l: usize, n: usize, d: usize) -> Vec<Weight> {
    weights(l, n, d).into_iter().filter(|w| w.is_dominant()).collect()
}

/// Dominance order on compositions of the same size.
pub fn dominates(big: &[usize], small: &[usize]) -> bool {
    let (mut a, mut b) = (0usize, 0usize);
    for k in 0..big.len().max(small.len()) {
        a += big.get(k).copied().unwrap_or(0);
        b += small.get(k).copied().unwrap_or(0);
        if b > a {
            return false;
        }
    }
    a == b
}

/// `a ⊴_I b` on component-size vectors: tails of `a` never exceed tails of `b`.
pub fn norm_leq(a: &[usize], b: &[usize]) -> bool {
    let total_a: usize = a.iter().sum();
    let total_b: usize = b.iter().sum();
    if total_a != total_b {
        return false;
    }
    let (mut ta, mut tb) = (0usize, 0usize);
    for i in (0..a.len()).rev() {
        ta += a[i];
        tb += b[i];
        if ta > tb {
            return false;
        }
    }
    true
}

/// The partial order `≤_I` on weights.
pub fn leq_i(lambda: &Weight, mu: &Weight) -> bool {
    let (a, b) = (lambda.norm(), mu.norm());
    if a != b {
        return norm_leq(&a, &b);
    }
    lambda.0.iter().zip(&mu.0).all(|(x, y)| dominates(y, x))
}

/// Maximal elements of a set of weights under `≤_I`.
pub fn maximal_weights<'a>(ws: impl IntoIterator<Item = &'a Weight> + Clone) -> Vec<Weight> {
    let all: Vec<&Weight> = ws.into_iter().collect();
    all.iter()
        .filter(|w| !all.iter().any(|v| v != *w && leq_i(w, v)))
        .map(|w| (*w).clone())
        .collect()
}

/// Littlewood-Richardson coefficient `c^ν_{λ,μ}` counted by lattice words.
pub fn lr_coeff(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let lambda = trim(lambda);
    let mu = trim(mu);
    let nu = trim(nu);
    let size = |p: &[usize]| p.iter().sum::<usize>();
    if size(&lambda) + size(&mu) != size(&nu) || lambda.len() > nu.len() {
        return 0;
    }
    if lambda.iter().zip(&nu).any(|(a, b)| a > b) {
        return 0;
    }
    // boxes of ν/λ in reading order: rows top to bottom, right to left
    let mut boxes = Vec::new();
    for r in 0..nu.len() {
        let start = lambda.get(r).copied().unwrap_or(0);
        for c in (start..nu[r]).rev() {
            boxes.push((r, c));
        }
    }
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut counts = vec![0usize; mu.len()];
    fn rec(
        k: usize,
        boxes: &[(usize, usize)],
        lambda: &[usize],
        mu: &[usize],
        fill: &mut BTreeMap<(usize, usize), usize>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        if k == boxes.len() {
            return 1;
        }
        let (r, c) = boxes[k];
        let mut total = 0;
        for v in 0..mu.len() {
            if counts[v] >= mu[v] {
                continue;
            }
            if v > 0 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            // row weakly increasing: the box to the right was filled earlier
            if let Some(&right) = fill.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            // column strictly increasing
            if r > 0 && c >= lambda.get(r - 1).copied().unwrap_or(0) {
                if let Some(&above) = fill.get(&(r - 1, c)) {
                    if v <= above {
                        continue;
                    }
                }
            }
            fill.insert((r, c), v);
            counts[v] += 1;
            total += rec(k + 1, boxes, lambda, mu, fill, counts);
            counts[v] -= 1;
            fill.remove(&(r, c));
        }
        total
    }
    rec(0, &boxes, &lambda, &mu, &mut fill, &mut counts)
}

/// Product of componentwise LR coefficients.
pub fn multi_lr(lambda: &Weight, mu: &Weight, nu: &Weight) -> u64 {
    lambda
        .0
        .iter()
        .zip(&mu.0)
        .zip(&nu.0)
        .map(|((a, b), c)| lr_coeff(a, b, c))
        .product()
}

/// One letter of a coloured alphabet: a row index and an element of X(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub row: usize,
    pub colour: String,
    pub odd: bool,
    /// Vertex j with e_j x = x.
    pub vertex: usize,
}

/// Alphabet for component `i`: colours listed in the order of X(i), each
/// running over rows `1..=n`. Letters are returned in increasing order.
pub fn coloured_alphabet(colours: &[(String, bool, usize)], n: usize) -> Vec<Letter> {
    colours
        .iter()
        .flat_map(|(name, odd, vertex)| {
            (0..n).map(move |row| Letter { row, colour: name.clone(), odd: *odd, vertex: *vertex })
        })
        .collect()
}

/// Colours of X(i) for the zigzag heredity data.
pub fn zigzag_colours(i: usize) -> Vec<(String, bool, usize)> {
    if i == 0 {
        vec![("e0".into(), false, 0)]
    } else {
        vec![(format!("e{i}"), false, i), (format!("a{}{}", i - 1, i), true, i - 1)]
    }
}

/// Standard coloured tableaux of shape `shape` over an ordered alphabet,
/// each reported as its list of letter indices in row reading order.
pub fn standard_fillings(shape: &[usize], alphabet: &[Letter]) -> Vec<Vec<usize>> {
    let shape = trim(shape);
    let mut boxes = Vec::new();
    for (r, &len) in shape.iter().enumerate() {
        for c in 0..len {
            boxes.push((r, c));
        }
    }
    let mut out = Vec::new();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn rec(
        k: usize,
        boxes: &[(usize, usize)],
        alphabet: &[Letter],
        fill: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == boxes.len() {
            out.push(boxes.iter().map(|b| fill[b]).collect());
            return;
        }
        let (r, c) = boxes[k];
        for (x, letter) in alphabet.iter().enumerate() {
            if c > 0 {
                let left = fill[&(r, c - 1)];
                if x < left || (x == left && letter.odd) {
                    continue;
                }
            }
            if r > 0 {
                let above = fill[&(r - 1, c)];
                if x < above || (x == above && !letter.odd) {
                    continue;
                }
            }
            fill.insert((r, c), x);
            rec(k + 1, boxes, alphabet, fill, out);
            fill.remove(&(r, c));
        }
    }
    rec(0, &boxes, alphabet, &mut fill, &mut out);
    out
}

/// The character of Δ(λ) as tableau counts: weight μ ↦ k_{λ,μ}, for a
/// family of coloured alphabets (one per component).
pub fn delta_character_with(lambda: &Weight, alphabets: &[Vec<Letter>]) -> BTreeMap<Weight, u64> {
    let l = lambda.components() - 1;
    let n = lambda.rows();
    // per component: weight distribution of its standard fillings
    let mut acc: BTreeMap<Weight, u64> = BTreeMap::new();
    acc.insert(Weight::zero(l, n), 1);
    for (i, shape) in lambda.0.iter().enumerate() {
        let mut dist: BTreeMap<Weight, u64> = BTreeMap::new();
        for t in standard_fillings(shape, &alphabets[i]) {
            let mut w = Weight::zero(l, n);
            for x in t {
                let letter = &alphabets[i][x];
                w.0[letter.vertex][letter.row] += 1;
            }
            *dist.entry(w).or_default() += 1;
        }
        let mut next = BTreeMap::new();
        for (w1, c1) in &acc {
            for (w2, c2) in &dist {
                *next.entry(w1.add(w2)).or_default() += c1 * c2;
            }
        }
        acc = next;
    }
    acc
}

/// Alphabets for the zigzag heredity data with `n` rows.
pub fn zigzag_alphabets(l: usize, n: usize) -> Vec<Vec<Letter>> {
    (0..=l).map(|i| coloured_alphabet(&zigzag_colours(i), n)).collect()
}

/// ch Δ(λ) for the zigzag algebra.
pub fn delta_character(l: usize, lambda: &Weight) -> BTreeMap<Weight, u64> {
    delta_character_with(lambda, &zigzag_alphabets(l, lambda.rows()))
}

/// Generalized Kostka number `k_{λ,μ}` for the zigzag algebra.
pub fn kostka(l: usize, lambda: &Weight, mu: &Weight) -> u64 {
    delta_character(l, lambda).get(mu).copied().unwrap_or(0)
}

/// All generalized Kostka numbers at once: `table[λ][μ]`.
pub fn kostka_table(l: usize, n: usize, d: usize) -> BTreeMap<Weight, BTreeMap<Weight, u64>> {
    dominant_weights(l, n, d)
        .into_iter()
        .map(|lam| {
            let ch = delta_character(l, &lam);
            (lam, ch)
        })
        .collect()
}

/// `β_i(d, s)`; for `i = 0` only `s = 0` is meaningful.
pub fn beta(l: usize, n: usize, i: usize, d: usize, s: usize) -> Weight {
    let mut w = Weight::zero(l, n);
    if i == 0 {
        w.0[0] = pad(&vec![1; d], n);
        w.0[0].truncate(n);
        return w;
    }
    if s > 0 {
        w.0[i - 1][0] = s;
    }
    for r in 0..(d - s).min(n) {
        w.0[i][r] = 1;
    }
    w
}

/// The set Ξ_{d,i}, restricted to weights that fit in `n` rows.
pub fn xi_set(l: usize, n: usize, d: usize, i: usize) -> Vec<Weight> {
    if i == 0 {
        if d <= n {
            return vec![beta(l, n, 0, d, 0)];
        }
        return Vec::new();
    }
    (0..=d).filter(|&s| d - s <= n).map(|s| beta(l, n, i, d, s)).collect()
}

/// Remove a horizontal strip of `k` boxes from `p` in all ways.
fn remove_horizontal_strip(p: &[usize], k: usize) -> Vec<Vec<usize>> {
    partitions_contained(p)
        .into_iter()
        .filter(|q| {
            q.iter().sum::<usize>() + k == p.iter().sum::<usize>()
                && (0..p.len()).all(|r| {
                    // interlacing p_{r+1} <= q_r <= p_r
                    let next = p.get(r + 1).copied().unwrap_or(0);
                    q[r] >= next && q[r] <= p[r]
                })
        })
        .collect()
}

/// Remove a vertical strip of `k` boxes from `p` in all ways.
fn remove_vertical_strip(p: &[usize], k: usize) -> Vec<Vec<usize>> {
    partitions_contained(p)
        .into_iter()
        .filter(|q| {
            q.iter().sum::<usize>() + k == p.iter().sum::<usize>()
                && (0..p.len()).all(|r| q[r] + 1 >= p[r] && q[r] <= p[r])
        })
        .collect()
}

fn partitions_contained(p: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; p.len()];
    fn rec(r: usize, p: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == p.len() {
            out.push(cur.clone());
            return;
        }
        let cap = if r == 0 { p[0] } else { p[r].min(cur[r - 1]) };
        for v in 0..=cap {
            cur[r] = v;
            rec(r + 1, p, cur, out);
        }
    }
    rec(0, p, &mut cur, &mut out);
    out
}

/// The set Ω^λ_β for `β = β_i(r, s)`, `i > 0`: remove `s` boxes in distinct
/// columns from component `i-1` and `r-s` boxes in distinct rows from
/// component `i`. For `i = 0` it removes a vertical strip of `r` boxes
/// from component 0.
pub fn omega_set(lambda: &Weight, i: usize, r: usize, s: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    if i == 0 {
        for q in remove_vertical_strip(&lambda.0[0], r) {
            let mut w = lambda.clone();
            w.0[0] = q;
            out.push(w);
        }
        return out;
    }
    for q1 in remove_horizontal_strip(&lambda.0[i - 1], s) {
        for q2 in remove_vertical_strip(&lambda.0[i], r - s) {
            let mut w = lambda.clone();
            w.0[i - 1] = q1.clone();
            w.0[i] = q2;
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_weight_count_small() {
        assert_eq!(weights(1, 2, 2).len(), 10);
        assert_eq!(dominant_weights(1, 2, 2).len(), 5);
    }

    #[test]
    fn lr_small_values() {
        assert_eq!(lr_coeff(&[1], &[1], &[2]), 1);
        assert_eq!(lr_coeff(&[1], &[1], &[1, 1]), 1);
        assert_eq!(lr_coeff(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(lr_coeff(&[1], &[1], &[3]), 0);
    }

    #[test]
    fn kostka_single_box() {
        let lam = iota(1, 2, 1, &[1]);
        let ch = delta_character(1, &lam);
        assert_eq!(ch.values().sum::<u64>(), 4);
        assert_eq!(ch[&unit_weight(1, 2, 1, 0)], 1);
        assert_eq!(ch[&unit_weight(1, 2, 0, 0)], 1);
    }

    #[test]
    fn conjugate_of_hook() {
        assert_eq!(conjugate_partition(&[3, 1]), vec![2, 1, 1]);
    }

    #[test]
    fn order_prefers_higher_vertices() {
        let a = iota(1, 1, 0, &[1]);
        let b = iota(1, 1, 1, &[1]);
        assert!(leq_i(&a, &b));
        assert!(!leq_i(&b, &a));
    }
}
