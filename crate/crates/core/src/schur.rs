//! The generalized Schur algebra T^A(n,d) = Γ̃^d M_n(A), its weight
//! idempotents and characters, the anti-involution τ_{n,d}, the coproduct,
//! and divided-power column modules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{weights, Weight};
use crate::divpow::{expand_y, DividedPower, GammaAction, Multiset, Tensor};
use crate::error::{Error, Result};
use crate::exact_linalg::Echelon;
use crate::superalg::{
    comb_normalize, matrix_coords, matrix_index, matrix_superalgebra, CalModule, Comb, Parity, Side, SuperAlgebra,
};
use crate::Rational;

/// Formal character: weight ↦ dimension of the weight space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterTable(pub BTreeMap<Weight, u64>);

impl CharacterTable {
    pub fn get(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Product of characters as polynomials in the z^μ.
    pub fn mul(&self, other: &CharacterTable) -> CharacterTable {
        let mut out = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                *out.entry(a.add(b)).or_insert(0) += x * y;
            }
        }
        CharacterTable(out)
    }

    pub fn add_scaled(&mut self, other: &CharacterTable, k: u64) {
        for (w, v) in &other.0 {
            *self.0.entry(w.clone()).or_insert(0) += k * v;
        }
        self.0.retain(|_, v| *v != 0);
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.0.iter().filter(|(_, v)| **v > 0).map(|(w, _)| w)
    }
}

impl From<BTreeMap<Weight, u64>> for CharacterTable {
    fn from(m: BTreeMap<Weight, u64>) -> Self {
        CharacterTable(m.into_iter().filter(|(_, v)| *v > 0).collect())
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(w, v)| format!("{v}*z^({w})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// T^A(n,d) over the integers.
#[derive(Debug)]
pub struct SchurAlgebra {
    pub base: Arc<SuperAlgebra>,
    pub n: usize,
    pub d: usize,
    pub matrix: Arc<SuperAlgebra>,
    pub dp: Arc<DividedPower>,
    regular: GammaAction,
}

impl SchurAlgebra {
    pub fn new(base: &SuperAlgebra, n: usize, d: usize) -> Result<Self> {
        if base.heredity.is_none() {
            return Err(Error::Usage(format!("{} has no heredity data", base.name)));
        }
        let matrix = Arc::new(matrix_superalgebra(base, n)?);
        let dp = Arc::new(DividedPower::new(&matrix.basis, d));
        let table = Arc::new(matrix.table.clone());
        let regular = GammaAction::new(Side::Left, dp.clone(), dp.clone(), table, matrix.dim(), 1);
        Ok(SchurAlgebra { base: Arc::new(base.clone()), n, d, matrix, dp, regular })
    }

    pub fn dim(&self) -> usize {
        self.dp.dim()
    }

    pub fn parity(&self, idx: usize) -> Parity {
        self.dp.parity_of(idx)
    }

    pub fn even_odd_dims(&self) -> (usize, usize) {
        let odd = (0..self.dim()).filter(|&i| self.parity(i).is_odd()).count();
        (self.dim() - odd, odd)
    }

    /// Vertices `0..=l` of the heredity poset.
    pub fn vertices(&self) -> usize {
        self.base.heredity.as_ref().map_or(0, |h| h.e.len())
    }

    pub fn l(&self) -> usize {
        self.vertices() - 1
    }

    /// `η^a η^b` in the η basis.
    pub fn mult(&self, a: usize, b: usize) -> Result<Comb> {
        self.regular.act(a, b)
    }

    pub fn mult_comb(&self, x: &Comb, y: &Comb) -> Result<Comb> {
        let mut raw = Vec::new();
        for (i, u) in x {
            for (j, v) in y {
                for (k, w) in self.mult(*i, *j)? {
                    raw.push((k, u * v * w));
                }
            }
        }
        Ok(comb_normalize(raw))
    }

    pub fn regular_action(&self) -> &GammaAction {
        &self.regular
    }

    /// The multiset for the basis triple list `(b, r, s)`, 0-based rows.
    pub fn index_of_triples(&self, triples: &[(usize, usize, usize)]) -> Option<usize> {
        let mut ms: Multiset = triples.iter().map(|&(b, r, s)| matrix_index(self.n, b, r, s) as u32).collect();
        ms.sort_unstable();
        self.dp.index_of(&ms)
    }

    /// Basis triples `(b, r, s)` of an η index.
    pub fn triples(&self, idx: usize) -> Vec<(usize, usize, usize)> {
        self.dp.orbits[idx].iter().map(|&m| matrix_coords(self.n, m as usize)).collect()
    }

    /// The idempotent η_λ as a basis index.
    pub fn eta_index(&self, lambda: &Weight) -> Result<usize> {
        let h = self.base.heredity.as_ref().expect("checked at construction");
        if lambda.components() != h.e.len() || lambda.rows() != self.n || lambda.degree() != self.d {
            return Err(Error::Usage(format!("weight {lambda} does not fit T({}, {})", self.n, self.d)));
        }
        let mut triples = Vec::new();
        for (i, comp) in lambda.0.iter().enumerate() {
            for (r, &m) in comp.iter().enumerate() {
                for _ in 0..m {
                    triples.push((h.e[i], r, r));
                }
            }
        }
        self.index_of_triples(&triples)
            .ok_or_else(|| Error::Structure(format!("η for {lambda} is not a basis element")))
    }

    /// All weights Λ^I(n,d).
    pub fn all_weights(&self) -> Vec<Weight> {
        weights(self.l(), self.n, self.d)
    }

    /// Left and right weights of a basis element, read from vertex labels.
    pub fn basis_weights(&self, idx: usize) -> Option<(Weight, Weight)> {
        let mut left = Weight::zero(self.l(), self.n);
        let mut right = Weight::zero(self.l(), self.n);
        for (b, r, s) in self.triples(idx) {
            let e = &self.base.basis[b];
            left.0[e.left_vertex?][r] += 1;
            right.0[e.right_vertex?][s] += 1;
        }
        Some((left, right))
    }

    /// The unit, as the sum of all η_λ.
    pub fn one(&self) -> Result<Comb> {
        let raw = self
            .all_weights()
            .iter()
            .map(|w| Ok((self.eta_index(w)?, BigInt::one())))
            .collect::<Result<Vec<_>>>()?;
        Ok(comb_normalize(raw))
    }

    /// τ_{n,d} on a basis element.
    pub fn tau(&self, idx: usize) -> Result<Comb> {
        tau_power(&self.matrix, &self.dp, idx)
    }

    /// `(c, i, j, coeff)`: the coproduct of η^idx has coefficient `coeff` on
    /// `η^i ⊗ η^j` with `η^i` in degree `c` and `η^j` in degree `d - c`.
    pub fn coproduct(&self, idx: usize, parts: &[Arc<DividedPower>]) -> Result<Vec<(usize, usize, usize, BigInt)>> {
        coproduct(&self.dp, parts, idx)
    }

    /// Divided powers of M_n(A) in degrees `0..=d`, for use with [`Self::coproduct`].
    pub fn graded_pieces(&self) -> Vec<Arc<DividedPower>> {
        (0..=self.d).map(|c| Arc::new(DividedPower::new(&self.matrix.basis, c))).collect()
    }
}

/// τ^{⊗d} on the y basis of Γ̃^d A, re-expressed in the same basis.
pub fn tau_power(alg: &SuperAlgebra, dp: &DividedPower, idx: usize) -> Result<Comb> {
    let tau = alg
        .tau
        .as_ref()
        .ok_or_else(|| Error::Usage(format!("{} has no anti-involution", alg.name)))?;
    let y = expand_y(&dp.orbits[idx], &dp.carrier);
    let mut out = Tensor::new();
    for (key, v) in y {
        let mut stack: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), v)];
        for &k in &key {
            let mut next = Vec::new();
            for (t, c) in &stack {
                for (j, w) in &tau[k as usize] {
                    let mut t2 = t.clone();
                    t2.push(*j as u32);
                    next.push((t2, c * w));
                }
            }
            stack = next;
        }
        for (t, c) in stack {
            *out.entry(t).or_insert_with(BigInt::zero) += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    dp.reexpress_integral(&out)
}

/// Split `y_b` into all bidegrees and write each piece in the product basis.
pub fn coproduct(dp: &DividedPower, parts: &[Arc<DividedPower>], idx: usize) -> Result<Vec<(usize, usize, usize, BigInt)>> {
    let d = dp.d;
    if parts.len() != d + 1 {
        return Err(Error::Usage("need divided powers in every degree 0..=d".into()));
    }
    let y = dp.expand_y(idx);
    let mut out = Vec::new();
    for c in 0..=d {
        let (p1, p2) = (&parts[c], &parts[d - c]);
        let mut coeffs: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (key, v) in &y {
            let (k1, k2) = key.split_at(c);
            if k1.windows(2).any(|w| w[0] > w[1]) || k2.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let (Some(i), Some(j)) = (p1.index_of(k1), p2.index_of(k2)) else {
                return Err(Error::Structure(format!("coproduct component {key:?} outside the divided powers")));
            };
            let denom = p1.cal_factorial(i) * p2.cal_factorial(j);
            let q = crate::field::exact_div(v, &denom)
                .ok_or_else(|| Error::NotIntegral(format!("coproduct coefficient {v}/{denom}")))?;
            coeffs.insert((i, j), q);
        }
        // the pieces must reassemble the split tensor exactly
        let mut recon = Tensor::new();
        for ((i, j), q) in &coeffs {
            for (a, x) in p1.expand_y(*i) {
                for (b, w) in p2.expand_y(*j) {
                    let mut key = a.clone();
                    key.extend_from_slice(&b);
                    *recon.entry(key).or_insert_with(BigInt::zero) += q * &x * &w;
                }
            }
        }
        recon.retain(|_, v| !v.is_zero());
        if recon != y {
            return Err(Error::Structure(format!("coproduct of {} does not reassemble in bidegree {c}", dp.name(idx))));
        }
        out.extend(coeffs.into_iter().map(|((i, j), q)| (c, i, j, q)));
    }
    Ok(out)
}

/// Super shuffle product of tensors of degrees d1 and d2: the sum over
/// shortest coset representatives of `(t1 ⊗ t2)^σ`.
pub fn star(t1: &Tensor, t2: &Tensor, parity: &[Parity]) -> Tensor {
    let mut out = Tensor::new();
    for (k1, v1) in t1 {
        for (k2, v2) in t2 {
            let d1 = k1.len();
            let d = d1 + k2.len();
            // choose the positions of the first factor
            for mask in 0u32..(1u32 << d) {
                if mask.count_ones() as usize != d1 {
                    continue;
                }
                let mut key = Vec::with_capacity(d);
                let (mut i, mut j) = (0, 0);
                let mut sign = 0usize;
                let mut odd_second_placed = 0usize;
                for pos in 0..d {
                    if mask & (1 << pos) != 0 {
                        let x = k1[i];
                        if parity[x as usize].is_odd() {
                            sign += odd_second_placed;
                        }
                        key.push(x);
                        i += 1;
                    } else {
                        let x = k2[j];
                        if parity[x as usize].is_odd() {
                            odd_second_placed += 1;
                        }
                        key.push(x);
                        j += 1;
                    }
                }
                let v = v1 * v2;
                let v = if sign % 2 == 1 { -v } else { v };
                *out.entry(key).or_insert_with(BigInt::zero) += v;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Γ̃^d of a calibrated module over M_n(A), as a module over T^A(n,d).
#[derive(Debug)]
pub struct GammaModule {
    pub name: String,
    pub action: GammaAction,
    /// For each carrier basis vector, the weight slot `(vertex, row)` it
    /// contributes (left modules) when known.
    pub slots: Vec<Option<(usize, usize)>>,
    pub l: usize,
    pub n: usize,
}

impl GammaModule {
    /// Build from a left (or right) module over M_n(A). `row_of` gives the
    /// row index of each carrier vector used for weights.
    pub fn new(
        name: impl Into<String>,
        schur: &SchurAlgebra,
        module: &CalModule,
        row_of: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        Self::with_target(name, schur, module, Arc::new(DividedPower::new(&module.basis, schur.d)), row_of)
    }

    pub fn with_target(
        name: impl Into<String>,
        schur: &SchurAlgebra,
        module: &CalModule,
        target: Arc<DividedPower>,
        row_of: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        if !module.calibrated {
            return Err(Error::Usage(format!("{} is not calibrated", module.name)));
        }
        if module.algebra_dim != schur.matrix.dim() {
            return Err(Error::Usage(format!("{} is not a module over {}", module.name, schur.matrix.name)));
        }
        let table = Arc::new(module.table.clone());
        let action = GammaAction::new(module.side, schur.dp.clone(), target, table, module.dim(), 1);
        let slots = module
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let v = match module.side {
                    Side::Left => b.left_vertex,
                    Side::Right => b.right_vertex,
                };
                v.map(|v| (v, row_of(i)))
            })
            .collect();
        Ok(GammaModule { name: name.into(), action, slots, l: schur.l(), n: schur.n })
    }

    pub fn dim(&self) -> usize {
        self.action.target.dim()
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.action.target.parities()
    }

    /// Weight of a basis vector read from carrier slots.
    pub fn basis_weight(&self, idx: usize) -> Option<Weight> {
        let mut w = Weight::zero(self.l, self.n);
        for &k in &self.action.target.orbits[idx] {
            let (v, r) = self.slots[k as usize]?;
            w.0[v][r] += 1;
        }
        Some(w)
    }
}

/// ch M via exact ranks of the projectors η_μ.
pub fn weight_character(schur: &SchurAlgebra, m: &GammaAction) -> Result<CharacterTable> {
    let mut out = BTreeMap::new();
    for w in schur.all_weights() {
        let op = m.operator(schur.eta_index(&w)?)?;
        let mut e = Echelon::<Rational>::new(m.target.dim());
        // rows of the projector matrix
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (c, img) in &op.columns {
            for (r, v) in img {
                rows.entry(*r).or_default().push((*c, Rational::from_integer(v.clone())));
            }
        }
        for (_, mut r) in rows {
            r.sort_by_key(|(c, _)| *c);
            e.insert(r);
        }
        if e.rank() > 0 {
            out.insert(w, e.rank() as u64);
        }
    }
    Ok(CharacterTable(out))
}

/// First basis triple `(x, v, w)` violating
/// `(x v, w) = (-1)^{|x||v|} (v, τ(x) w)`, if any.
pub fn contravariance_failure(
    schur: &SchurAlgebra,
    m: &GammaModule,
    gram: &crate::divpow::Gram,
) -> Result<Option<(usize, usize, usize)>> {
    let dim = m.dim();
    let par = m.parities();
    let rows: Vec<Vec<(usize, &BigInt)>> =
        gram.iter().map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect();
    for x in 0..schur.dim() {
        let op = m.action.operator(x)?;
        let mut xcols = vec![Vec::new(); dim];
        for (c, img) in &op.columns {
            xcols[*c] = img.clone();
        }
        // τ(x) as a combination of operators
        let mut ycols: Vec<Comb> = vec![Vec::new(); dim];
        for (t, coeff) in schur.tau(x)? {
            let o = m.action.operator(t)?;
            for (c, img) in &o.columns {
                let scaled: Comb = img.iter().map(|(k, v)| (*k, v * &coeff)).collect();
                ycols[*c] = crate::superalg::comb_add(&ycols[*c], &scaled);
            }
        }
        for v in 0..dim {
            // (x v, w) for all w
            let mut lhs: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, c) in &xcols[v] {
                for (w, g) in &rows[*k] {
                    *lhs.entry(*w).or_insert_with(BigInt::zero) += c * *g;
                }
            }
            let odd = schur.parity(x).is_odd() && par[v].is_odd();
            let mut rhs: BTreeMap<usize, BigInt> = BTreeMap::new();
            for w in 0..dim {
                let mut val = BigInt::zero();
                for (k, c) in &ycols[w] {
                    val += c * &gram[v][*k];
                }
                if !val.is_zero() {
                    rhs.insert(w, if odd { -val } else { val });
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                let w = lhs.keys().chain(rhs.keys()).find(|w| lhs.get(w) != rhs.get(w)).copied().unwrap_or(0);
                return Ok(Some((x, v, w)));
            }
        }
    }
    Ok(None)
}

/// dim T^A(n,d) counted without building the algebra.
pub fn schur_dimension(base: &SuperAlgebra, n: usize, d: usize) -> BigInt {
    let even = base.even_dim() * n * n;
    let odd = base.odd_dim() * n * n;
    crate::divpow::seq_orbit_count(even, odd, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::zigzag;

    #[test]
    fn dimensions_small() {
        let z = zigzag(1).unwrap();
        assert_eq!(SchurAlgebra::new(&z, 2, 1).unwrap().dim(), 20);
        assert_eq!(SchurAlgebra::new(&z, 1, 2).unwrap().dim(), 13);
        assert_eq!(schur_dimension(&z, 2, 2), BigInt::from(202));
    }

    #[test]
    fn eta_of_single_box() {
        let z = zigzag(1).unwrap();
        let s = SchurAlgebra::new(&z, 2, 1).unwrap();
        let w = crate::combinat::unit_weight(1, 2, 1, 1);
        let i = s.eta_index(&w).unwrap();
        assert_eq!(s.triples(i), vec![(1, 1, 1)]);
    }
}
