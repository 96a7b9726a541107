//! Finite dimensional superalgebras and supermodules given by integral
//! structure constants on a fixed ordered basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::ExactMatrix;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "1" } else { "0" })
    }
}

/// Calibration class of a basis vector: the even part splits into the
/// `a` (idempotent-like) and `c` (cycle-like) pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CalClass {
    A,
    C,
    Odd,
}

impl CalClass {
    pub fn label(self) -> &'static str {
        match self {
            CalClass::A => "a",
            CalClass::C => "c",
            CalClass::Odd => "odd",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(CalClass::A),
            "c" => Ok(CalClass::C),
            "odd" => Ok(CalClass::Odd),
            _ => Err(Error::Structure(format!("unknown calibration class {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    pub class: CalClass,
    /// Vertex `i` with `e_i b = b`, when the algebra has such idempotents.
    pub left_vertex: Option<usize>,
    /// Vertex `j` with `b e_j = b`.
    pub right_vertex: Option<usize>,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, parity: Parity, class: CalClass) -> Self {
        BasisElement { name: name.into(), parity, class, left_vertex: None, right_vertex: None }
    }

    pub fn with_vertices(mut self, left: Option<usize>, right: Option<usize>) -> Self {
        self.left_vertex = left;
        self.right_vertex = right;
        self
    }

    /// Plain even/odd classification for uncalibrated modules.
    pub fn uncalibrated(name: impl Into<String>, parity: Parity) -> Self {
        let class = if parity.is_odd() { CalClass::Odd } else { CalClass::A };
        Self::new(name, parity, class)
    }
}

/// Sparse integer combination of basis vectors, sorted, without zeros.
pub type Comb = Vec<(usize, BigInt)>;

pub fn comb_normalize(mut raw: Vec<(usize, BigInt)>) -> Comb {
    raw.sort_by_key(|(i, _)| *i);
    let mut out: Comb = Vec::with_capacity(raw.len());
    for (i, v) in raw {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

pub fn comb_scale(c: &Comb, s: &BigInt) -> Comb {
    if s.is_zero() {
        return Vec::new();
    }
    c.iter().map(|(i, v)| (*i, v * s)).collect()
}

pub fn comb_add(a: &Comb, b: &Comb) -> Comb {
    comb_normalize(a.iter().chain(b.iter()).cloned().collect())
}

pub fn comb_single(i: usize) -> Comb {
    vec![(i, BigInt::one())]
}

/// Apply a bilinear table `t[x * width + y]` to two combinations.
pub fn comb_bilinear(table: &[Comb], width: usize, x: &Comb, y: &Comb) -> Comb {
    let mut raw = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            for (k, c) in &table[i * width + j] {
                raw.push((*k, a * b * c));
            }
        }
    }
    comb_normalize(raw)
}

/// Heredity data: for each vertex of the poset `0 < 1 < ... < m`, the
/// left set X(i), right set Y(i) and the idempotent e_i (as basis indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeredityData {
    pub x: Vec<Vec<usize>>,
    pub y: Vec<Vec<usize>>,
    pub e: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    pub name: String,
    pub basis: Vec<BasisElement>,
    /// `table[i * dim + j]` is the product of basis elements i and j.
    pub table: Vec<Comb>,
    pub unit: Comb,
    /// Images of the basis under the anti-involution, when there is one.
    pub tau: Option<Vec<Comb>>,
    pub heredity: Option<HeredityData>,
}

impl SuperAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Comb {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &Comb, y: &Comb) -> Comb {
        comb_bilinear(&self.table, self.dim(), x, y)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn even_dim(&self) -> usize {
        self.basis.iter().filter(|b| !b.parity.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// Structural sanity: sizes, parity of products, unit, associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.table.len() != n * n {
            return Err(Error::Structure(format!("table has {} entries, want {}", self.table.len(), n * n)));
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.mul_basis(i, j) {
                    if *k >= n {
                        return Err(Error::Structure(format!("index {k} out of range")));
                    }
                    if self.parity(*k) != self.parity(i) + self.parity(j) {
                        return Err(Error::Structure(format!(
                            "product {}*{} is not homogeneous",
                            self.basis[i].name, self.basis[j].name
                        )));
                    }
                }
            }
        }
        for b in &self.basis {
            let ok = matches!(
                (b.parity, b.class),
                (Parity::Even, CalClass::A) | (Parity::Even, CalClass::C) | (Parity::Odd, CalClass::Odd)
            );
            if !ok {
                return Err(Error::Structure(format!("basis element {} has inconsistent class", b.name)));
            }
        }
        for i in 0..n {
            let s = comb_single(i);
            if self.mul(&self.unit, &s) != s || self.mul(&s, &self.unit) != s {
                return Err(Error::Structure(format!("unit fails on {}", self.basis[i].name)));
            }
        }
        if !self.is_associative() {
            return Err(Error::Structure("product is not associative".into()));
        }
        Ok(())
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j).clone();
                for k in 0..n {
                    let left = self.mul(&ij, &comb_single(k));
                    let jk = self.mul_basis(j, k).clone();
                    let right = self.mul(&comb_single(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks `tau(ab) = (-1)^{|a||b|} tau(b) tau(a)` and `tau^2 = 1` on the basis.
    pub fn anti_involution_audit(&self) -> Result<bool> {
        let tau = self
            .tau
            .as_ref()
            .ok_or_else(|| Error::Structure(format!("{} carries no anti-involution", self.name)))?;
        let n = self.dim();
        let apply = |c: &Comb| -> Comb {
            let mut raw = Vec::new();
            for (i, v) in c {
                for (k, w) in &tau[*i] {
                    raw.push((*k, v * w));
                }
            }
            comb_normalize(raw)
        };
        for i in 0..n {
            if apply(&tau[i]) != comb_single(i) {
                return Ok(false);
            }
            for (k, _) in &tau[i] {
                if self.parity(*k) != self.parity(i) {
                    return Ok(false);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = apply(self.mul_basis(i, j));
                let mut rhs = self.mul(&tau[j], &tau[i]);
                if self.parity(i).is_odd() && self.parity(j).is_odd() {
                    rhs = comb_scale(&rhs, &-BigInt::one());
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Left multiplication by basis element `i` as a matrix over Q.
    pub fn left_matrix(&self, i: usize) -> ExactMatrix<Rational> {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            for (k, v) in self.mul_basis(i, j) {
                m.add_to(*k, j, Rational::from_integer(v.clone()));
            }
        }
        m
    }
}

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Basis labels of the zigzag superalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZigzagElement {
    E(usize),
    /// The arrow a_{i,j} = e_i a_{i,j} e_j, with |i - j| = 1.
    Arrow(usize, usize),
    /// The cycle c_j at vertex j.
    Cycle(usize),
}

fn vertex_pair_name(prefix: char, i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i},{j}")
    }
}

/// Ordering of the zigzag basis: idempotents, then arrow pairs, then cycles.
pub fn zigzag_labels(l: usize) -> Vec<ZigzagElement> {
    let mut out: Vec<_> = (0..=l).map(ZigzagElement::E).collect();
    for j in 0..l {
        out.push(ZigzagElement::Arrow(j, j + 1));
        out.push(ZigzagElement::Arrow(j + 1, j));
    }
    out.extend((0..l).map(ZigzagElement::Cycle));
    out
}

pub fn zigzag_index(l: usize, x: ZigzagElement) -> usize {
    match x {
        ZigzagElement::E(i) => i,
        ZigzagElement::Arrow(i, j) if j == i + 1 => l + 1 + 2 * i,
        ZigzagElement::Arrow(i, _) => l + 2 * i,
        ZigzagElement::Cycle(j) => 3 * l + 1 + j,
    }
}

fn zigzag_product(l: usize, x: ZigzagElement, y: ZigzagElement) -> Option<ZigzagElement> {
    use ZigzagElement::*;
    match (x, y) {
        (E(i), E(j)) => (i == j).then_some(E(i)),
        (E(i), Arrow(k, m)) => (i == k).then_some(Arrow(k, m)),
        (Arrow(k, m), E(j)) => (m == j).then_some(Arrow(k, m)),
        (E(i), Cycle(j)) | (Cycle(j), E(i)) => (i == j).then_some(Cycle(j)),
        (Arrow(i, j), Arrow(k, m)) => {
            if j != k || m != i {
                return None;
            }
            // a cycle at vertex i
            if i < j || i < l {
                Some(Cycle(i))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// The extended zigzag superalgebra on vertices `0..=l`.
pub fn zigzag(l: usize) -> Result<SuperAlgebra> {
    if l == 0 {
        return Err(Error::Usage("zigzag algebra needs l >= 1".into()));
    }
    let labels = zigzag_labels(l);
    let basis: Vec<BasisElement> = labels
        .iter()
        .map(|x| match *x {
            ZigzagElement::E(i) => {
                BasisElement::new(format!("e{i}"), Parity::Even, CalClass::A).with_vertices(Some(i), Some(i))
            }
            ZigzagElement::Arrow(i, j) => BasisElement::new(vertex_pair_name('a', i, j), Parity::Odd, CalClass::Odd)
                .with_vertices(Some(i), Some(j)),
            ZigzagElement::Cycle(j) => {
                BasisElement::new(format!("c{j}"), Parity::Even, CalClass::C).with_vertices(Some(j), Some(j))
            }
        })
        .collect();
    let n = labels.len();
    let mut table = vec![Vec::new(); n * n];
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            if let Some(p) = zigzag_product(l, *x, *y) {
                table[i * n + j] = comb_single(zigzag_index(l, p));
            }
        }
    }
    let tau = labels
        .iter()
        .map(|x| match *x {
            ZigzagElement::E(i) => comb_single(i),
            ZigzagElement::Arrow(i, j) => comb_single(zigzag_index(l, ZigzagElement::Arrow(j, i))),
            ZigzagElement::Cycle(j) => vec![(zigzag_index(l, ZigzagElement::Cycle(j)), z(-1))],
        })
        .collect();
    let mut x = vec![vec![0]];
    let mut y = vec![vec![0]];
    for i in 1..=l {
        x.push(vec![i, zigzag_index(l, ZigzagElement::Arrow(i - 1, i))]);
        y.push(vec![i, zigzag_index(l, ZigzagElement::Arrow(i, i - 1))]);
    }
    let alg = SuperAlgebra {
        name: format!("Z({l})"),
        basis,
        table,
        unit: (0..=l).map(|i| (i, BigInt::one())).collect(),
        tau: Some(tau),
        heredity: Some(HeredityData { x, y, e: (0..=l).collect() }),
    };
    alg.validate()?;
    Ok(alg)
}

/// Index of the matrix unit with entry `b` at row `r`, column `s` (0-based).
pub fn matrix_index(n: usize, b: usize, r: usize, s: usize) -> usize {
    (b * n + r) * n + s
}

/// Inverse of [`matrix_index`].
pub fn matrix_coords(n: usize, idx: usize) -> (usize, usize, usize) {
    (idx / (n * n), (idx / n) % n, idx % n)
}

/// The matrix superalgebra M_n(A) with basis `b_{rs}`; matrix units are even.
pub fn matrix_superalgebra(a: &SuperAlgebra, n: usize) -> Result<SuperAlgebra> {
    if n == 0 {
        return Err(Error::Usage("matrix size must be positive".into()));
    }
    let da = a.dim();
    let dim = da * n * n;
    let mut basis = Vec::with_capacity(dim);
    for b in 0..da {
        for r in 0..n {
            for s in 0..n {
                let e = &a.basis[b];
                basis.push(BasisElement {
                    name: format!("{}_{}{}", e.name, r + 1, s + 1),
                    parity: e.parity,
                    class: e.class,
                    left_vertex: e.left_vertex,
                    right_vertex: e.right_vertex,
                });
            }
        }
    }
    let mut table = vec![Vec::new(); dim * dim];
    for b in 0..da {
        for b2 in 0..da {
            let prod = a.mul_basis(b, b2);
            if prod.is_empty() {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let i = matrix_index(n, b, r, s);
                        let j = matrix_index(n, b2, s, t);
                        table[i * dim + j] =
                            prod.iter().map(|(k, v)| (matrix_index(n, *k, r, t), v.clone())).collect();
                    }
                }
            }
        }
    }
    let mut unit = Vec::new();
    for (k, v) in &a.unit {
        for r in 0..n {
            unit.push((matrix_index(n, *k, r, r), v.clone()));
        }
    }
    let tau = a.tau.as_ref().map(|t| {
        let mut out = vec![Vec::new(); dim];
        for b in 0..da {
            for r in 0..n {
                for s in 0..n {
                    out[matrix_index(n, b, r, s)] =
                        comb_normalize(t[b].iter().map(|(k, v)| (matrix_index(n, *k, s, r), v.clone())).collect());
                }
            }
        }
        out
    });
    Ok(SuperAlgebra {
        name: format!("M{n}({})", a.name),
        basis,
        table,
        unit: comb_normalize(unit),
        tau,
        heredity: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A supermodule over a superalgebra, optionally calibrated.
#[derive(Clone, Debug)]
pub struct CalModule {
    pub name: String,
    pub basis: Vec<BasisElement>,
    pub side: Side,
    pub algebra_dim: usize,
    /// `table[a * dim + v]` is `a v` (left) or `v a` (right).
    pub table: Vec<Comb>,
    pub calibrated: bool,
}

impl CalModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn act_basis(&self, a: usize, v: usize) -> &Comb {
        &self.table[a * self.dim() + v]
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.basis.iter().map(|b| b.parity).collect()
    }

    /// Action of algebra basis element `a` as a matrix over Q.
    pub fn action_matrix(&self, a: usize) -> ExactMatrix<Rational> {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for v in 0..n {
            for (k, c) in self.act_basis(a, v) {
                m.add_to(*k, v, Rational::from_integer(c.clone()));
            }
        }
        m
    }

    /// Module axioms against `alg`: homogeneity, unit, associativity, and
    /// the calibration condition `a V_a ⊆ V_a` when calibrated.
    pub fn validate(&self, alg: &SuperAlgebra) -> Result<()> {
        let n = self.dim();
        if alg.dim() != self.algebra_dim || self.table.len() != alg.dim() * n {
            return Err(Error::Structure(format!("module {} has a table of the wrong size", self.name)));
        }
        let act = |a: &Comb, v: &Comb| -> Comb { comb_bilinear(&self.table, n, a, v) };
        for a in 0..alg.dim() {
            for v in 0..n {
                for (k, _) in self.act_basis(a, v) {
                    if self.basis[*k].parity != self.basis[v].parity + alg.parity(a) {
                        return Err(Error::Structure(format!("action on {} is not homogeneous", self.name)));
                    }
                }
            }
        }
        for v in 0..n {
            if act(&alg.unit, &comb_single(v)) != comb_single(v) {
                return Err(Error::Structure(format!("unit does not fix {}", self.basis[v].name)));
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let ab = alg.mul_basis(a, b);
                for v in 0..n {
                    let (lhs, rhs) = match self.side {
                        Side::Left => (act(ab, &comb_single(v)), act(&comb_single(a), self.act_basis(b, v))),
                        Side::Right => (act(ab, &comb_single(v)), act(&comb_single(b), self.act_basis(a, v))),
                    };
                    if lhs != rhs {
                        return Err(Error::Structure(format!("action on {} is not associative", self.name)));
                    }
                }
            }
        }
        if self.calibrated {
            for a in 0..alg.dim() {
                if alg.basis[a].class != CalClass::A {
                    continue;
                }
                for v in 0..n {
                    if self.basis[v].class != CalClass::A {
                        continue;
                    }
                    for (k, _) in self.act_basis(a, v) {
                        if self.basis[*k].class != CalClass::A {
                            return Err(Error::Structure(format!("{} is not calibrated", self.name)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Col_n(V): columns of height n with entries in a left A-module V, as a
/// left M_n(A)-module. Basis index `v * n + r`.
pub fn column_module(alg: &SuperAlgebra, v: &CalModule, n: usize) -> Result<CalModule> {
    if v.side != Side::Left {
        return Err(Error::Usage("column modules need a left module".into()));
    }
    let dv = v.dim();
    let dim = dv * n;
    let basis = (0..dv)
        .flat_map(|i| {
            (0..n).map(move |r| {
                let b = &v.basis[i];
                BasisElement { name: format!("{}_{}", b.name, r + 1), ..b.clone() }
            })
        })
        .collect();
    let da = alg.dim();
    let mut table = vec![Vec::new(); da * n * n * dim];
    for a in 0..da {
        for r in 0..n {
            for s in 0..n {
                let ai = matrix_index(n, a, r, s);
                for i in 0..dv {
                    table[ai * dim + i * n + s] =
                        v.act_basis(a, i).iter().map(|(k, c)| (k * n + r, c.clone())).collect();
                }
            }
        }
    }
    Ok(CalModule {
        name: format!("Col{n}({})", v.name),
        basis,
        side: Side::Left,
        algebra_dim: da * n * n,
        table,
        calibrated: v.calibrated,
    })
}

/// A bimodule over (A, A') given as a left and a right action on one basis.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: CalModule,
    pub right: CalModule,
}

impl Bimodule {
    pub fn basis(&self) -> &[BasisElement] {
        &self.left.basis
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    /// `(a v) b = a (v b)` on all basis triples.
    pub fn actions_commute(&self) -> bool {
        let n = self.dim();
        for a in 0..self.left.algebra_dim {
            for b in 0..self.right.algebra_dim {
                for v in 0..n {
                    let av = self.left.act_basis(a, v);
                    let lhs = comb_bilinear(&self.right.table, n, &comb_single(b), av);
                    let vb = self.right.act_basis(b, v);
                    let rhs = comb_bilinear(&self.left.table, n, &comb_single(a), vb);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// M_n(V) for a bimodule V over (A, A'), as a bimodule over (M_n(A), M_n(A')).
/// Basis index `(v * n + r) * n + s`.
pub fn matrix_bimodule(v: &Bimodule, n: usize) -> Bimodule {
    let dv = v.dim();
    let dim = dv * n * n;
    let basis: Vec<BasisElement> = (0..dim)
        .map(|idx| {
            let (i, r, s) = matrix_coords(n, idx);
            let b = &v.basis()[i];
            BasisElement { name: format!("{}_{}{}", b.name, r + 1, s + 1), ..b.clone() }
        })
        .collect();
    let build = |m: &CalModule| -> CalModule {
        let da = m.algebra_dim;
        let mut table = vec![Vec::new(); da * n * n * dim];
        for a in 0..da {
            for (i, _) in v.basis().iter().enumerate() {
                let prod = m.act_basis(a, i);
                if prod.is_empty() {
                    continue;
                }
                for r in 0..n {
                    for s in 0..n {
                        for t in 0..n {
                            let (ai, vi, out) = match m.side {
                                // a_{rs} v_{st} = (a v)_{rt}
                                Side::Left => (matrix_index(n, a, r, s), matrix_index(n, i, s, t), (r, t)),
                                // v_{rs} a_{st} = (v a)_{rt}
                                Side::Right => (matrix_index(n, a, s, t), matrix_index(n, i, r, s), (r, t)),
                            };
                            table[ai * dim + vi] =
                                prod.iter().map(|(k, c)| (matrix_index(n, *k, out.0, out.1), c.clone())).collect();
                        }
                    }
                }
            }
        }
        CalModule {
            name: format!("M{n}({})", m.name),
            basis: basis.clone(),
            side: m.side,
            algebra_dim: da * n * n,
            table,
            calibrated: m.calibrated,
        }
    };
    Bimodule { left: build(&v.left), right: build(&v.right) }
}

/// Outcome of checking heredity data against the axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HeredityReport {
    /// The products xy form a basis.
    pub basis_axiom: bool,
    /// Left and right triangularity modulo the higher ideal.
    pub triangular_axiom: bool,
    /// The idempotent conditions.
    pub idempotent_axiom: bool,
    /// Even-even products span a unital subalgebra.
    pub conforming: bool,
    pub failures: Vec<String>,
}

impl HeredityReport {
    pub fn passed(&self) -> bool {
        self.basis_axiom && self.triangular_axiom && self.idempotent_axiom && self.conforming
    }
}

fn comb_to_dense(c: &Comb, n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (i, x) in c {
        v[*i] = Rational::from_integer(x.clone());
    }
    v
}

fn in_span(vectors: &[Comb], target: &Comb, n: usize) -> bool {
    if target.is_empty() {
        return true;
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|c| comb_to_dense(c, n)).collect();
    if rows.is_empty() {
        return false;
    }
    let m = ExactMatrix::from_dense(&rows).transpose();
    m.solve(&comb_to_dense(target, n)).is_some()
}

/// Check heredity data on a superalgebra. The poset is `0 < 1 < ... < m`.
pub fn heredity_audit(alg: &SuperAlgebra, data: &HeredityData) -> HeredityReport {
    let n = alg.dim();
    let m = data.e.len();
    let mut rep = HeredityReport::default();
    if data.x.len() != m || data.y.len() != m {
        rep.failures.push("heredity data has mismatched lengths".into());
        return rep;
    }
    // products per vertex
    let mut products: Vec<Vec<(usize, usize, Comb)>> = vec![Vec::new(); m];
    for i in 0..m {
        for &x in &data.x[i] {
            for &y in &data.y[i] {
                products[i].push((x, y, alg.mul_basis(x, y).clone()));
            }
        }
    }
    let all: Vec<Comb> = products.iter().flatten().map(|(_, _, c)| c.clone()).collect();
    let rows: Vec<Vec<Rational>> = all.iter().map(|c| comb_to_dense(c, n)).collect();
    let rank = if rows.is_empty() { 0 } else { ExactMatrix::from_dense(&rows).rank() };
    rep.basis_axiom = all.len() == n && rank == n;
    if !rep.basis_axiom {
        rep.failures.push(format!("{} products of rank {rank}, dimension {n}", all.len()));
    }
    let higher = |i: usize| -> Vec<Comb> {
        products.iter().skip(i + 1).flatten().map(|(_, _, c)| c.clone()).collect()
    };
    rep.triangular_axiom = true;
    for i in 0..m {
        let hi = higher(i);
        let mut left_span = hi.clone();
        left_span.extend(data.x[i].iter().map(|&x| comb_single(x)));
        let mut right_span = hi;
        right_span.extend(data.y[i].iter().map(|&y| comb_single(y)));
        for a in 0..n {
            for &x in &data.x[i] {
                if !in_span(&left_span, alg.mul_basis(a, x), n) {
                    rep.triangular_axiom = false;
                    rep.failures.push(format!(
                        "{} {} leaves X({i}) modulo the higher ideal",
                        alg.basis[a].name, alg.basis[x].name
                    ));
                }
            }
            for &y in &data.y[i] {
                if !in_span(&right_span, alg.mul_basis(y, a), n) {
                    rep.triangular_axiom = false;
                    rep.failures.push(format!(
                        "{} {} leaves Y({i}) modulo the higher ideal",
                        alg.basis[y].name, alg.basis[a].name
                    ));
                }
            }
        }
    }
    rep.idempotent_axiom = true;
    let fail = |msg: String, rep: &mut HeredityReport| {
        rep.idempotent_axiom = false;
        rep.failures.push(msg);
    };
    for i in 0..m {
        let e = data.e[i];
        for &x in &data.x[i] {
            let s = comb_single(x);
            if alg.mul_basis(x, e) != &s {
                fail(format!("{} e{i} != {}", alg.basis[x].name, alg.basis[x].name), &mut rep);
            }
            let want = if x == e { s.clone() } else { Vec::new() };
            if alg.mul_basis(e, x) != &want {
                fail(format!("e{i} {} wrong", alg.basis[x].name), &mut rep);
            }
            for j in 0..m {
                let p = alg.mul_basis(data.e[j], x);
                if !p.is_empty() && p != &s {
                    fail(format!("e{j} {} is neither 0 nor itself", alg.basis[x].name), &mut rep);
                }
            }
        }
        for &y in &data.y[i] {
            let s = comb_single(y);
            if alg.mul_basis(e, y) != &s {
                fail(format!("e{i} {} != {}", alg.basis[y].name, alg.basis[y].name), &mut rep);
            }
            let want = if y == e { s.clone() } else { Vec::new() };
            if alg.mul_basis(y, e) != &want {
                fail(format!("{} e{i} wrong", alg.basis[y].name), &mut rep);
            }
            for j in 0..m {
                let p = alg.mul_basis(y, data.e[j]);
                if !p.is_empty() && p != &s {
                    fail(format!("{} e{j} is neither 0 nor itself", alg.basis[y].name), &mut rep);
                }
            }
        }
    }
    // conformity: the even-even products span a unital subalgebra matching class a
    let mut ba = Vec::new();
    for prods in &products {
        for (x, y, c) in prods {
            if !alg.parity(*x).is_odd() && !alg.parity(*y).is_odd() {
                ba.push(c.clone());
            }
        }
    }
    let mut conforming = in_span(&ba, &alg.unit, n);
    for p in &ba {
        for q in &ba {
            if !in_span(&ba, &alg.mul(p, q), n) {
                conforming = false;
            }
        }
    }
    let class_a: Vec<Comb> = (0..n).filter(|&i| alg.basis[i].class == CalClass::A).map(comb_single).collect();
    for c in &ba {
        if !in_span(&class_a, c, n) {
            conforming = false;
        }
    }
    rep.conforming = conforming;
    if !conforming {
        rep.failures.push("even-even products do not span a unital subalgebra of class a".into());
    }
    rep
}

/// Standard modules over the zigzag algebra.
pub mod zigzag_modules {
    use super::*;

    fn module(l: usize, name: String, basis: Vec<BasisElement>, acts: Vec<(ZigzagElement, usize, usize, i64)>) -> CalModule {
        let da = 4 * l + 1;
        let n = basis.len();
        let mut table = vec![Vec::new(); da * n];
        for (x, v, w, c) in acts {
            table[zigzag_index(l, x) * n + v] = vec![(w, z(c))];
        }
        CalModule { name, basis, side: Side::Left, algebra_dim: da, table, calibrated: false }
    }

    /// The simple module L(i).
    pub fn simple(l: usize, i: usize) -> CalModule {
        module(
            l,
            format!("L({i})"),
            vec![BasisElement::uncalibrated(format!("l{i}"), Parity::Even)],
            vec![(ZigzagElement::E(i), 0, 0, 1)],
        )
    }

    /// ΠL(0): the simple at 0 with odd parity; even elements act as before.
    pub fn shifted_simple0(l: usize) -> CalModule {
        module(
            l,
            "PiL(0)".into(),
            vec![BasisElement::new("v0", Parity::Odd, CalClass::Odd).with_vertices(Some(0), None)],
            vec![(ZigzagElement::E(0), 0, 0, 1)],
        )
    }

    /// The standard module Δ(i); Δ(0) = L(0).
    pub fn standard(l: usize, i: usize) -> CalModule {
        if i == 0 {
            return simple(l, 0);
        }
        module(
            l,
            format!("Delta({i})"),
            vec![
                BasisElement::uncalibrated(format!("v{i}"), Parity::Even),
                BasisElement::uncalibrated(format!("w{i}"), Parity::Odd),
            ],
            vec![
                (ZigzagElement::E(i), 0, 0, 1),
                (ZigzagElement::E(i - 1), 1, 1, 1),
                (ZigzagElement::Arrow(i - 1, i), 0, 1, 1),
            ],
        )
    }

    /// The costandard module ∇(i); ∇(0) = L(0).
    pub fn costandard(l: usize, i: usize) -> CalModule {
        if i == 0 {
            return simple(l, 0);
        }
        module(
            l,
            format!("Nabla({i})"),
            vec![
                BasisElement::uncalibrated(format!("v{i}*"), Parity::Even),
                BasisElement::uncalibrated(format!("w{i}*"), Parity::Odd),
            ],
            vec![
                (ZigzagElement::E(i), 0, 0, 1),
                (ZigzagElement::E(i - 1), 1, 1, 1),
                (ZigzagElement::Arrow(i, i - 1), 1, 0, -1),
            ],
        )
    }

    /// The projective Z e_i (left ideal), calibrated by the algebra's classes.
    pub fn projective(alg: &SuperAlgebra, l: usize, i: usize) -> CalModule {
        let idx: Vec<usize> = (0..alg.dim()).filter(|&b| alg.mul_basis(b, i) == &comb_single(b)).collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &b)| (b, p)).collect();
        let basis = idx.iter().map(|&b| alg.basis[b].clone()).collect::<Vec<_>>();
        let n = idx.len();
        let mut table = vec![Vec::new(); alg.dim() * n];
        for a in 0..alg.dim() {
            for (p, &b) in idx.iter().enumerate() {
                table[a * n + p] = alg.mul_basis(a, b).iter().map(|(k, c)| (pos[k], c.clone())).collect();
            }
        }
        let _ = l;
        CalModule { name: format!("Ze{i}"), basis, side: Side::Left, algebra_dim: alg.dim(), table, calibrated: true }
    }
}

/// Total absolute size of the coefficients in a combination.
pub fn comb_norm(c: &Comb) -> BigInt {
    c.iter().map(|(_, v)| v.abs()).sum()
}
