//! The full tilting module 𝖳 of the zigzag superalgebra, its Ringel dual
//! Z' = End_Z(𝖳)^sop built from the primed generators, and the contravariant
//! forms on the summands ΠT(i).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{super_commutant, super_hom, Echelon, ExactMatrix};
use crate::superalg::{
    comb_bilinear, comb_normalize, comb_single, zigzag, zigzag_index, zigzag_labels, zigzag_modules, BasisElement,
    Bimodule, CalClass, CalModule, Comb, HeredityData, Parity, Side, SuperAlgebra, ZigzagElement,
};
use crate::Rational;

/// A linear map given by the images of basis vectors.
pub type Endo = Vec<Comb>;

pub use crate::divpow::Gram;

fn compose(f: &Endo, g: &Endo) -> Endo {
    g.iter()
        .map(|img| {
            let mut raw = Vec::new();
            for (k, c) in img {
                for (j, v) in &f[*k] {
                    raw.push((*j, c * v));
                }
            }
            comb_normalize(raw)
        })
        .collect()
}

fn negate(c: &Comb) -> Comb {
    c.iter().map(|(k, v)| (*k, -v)).collect()
}

/// The Π sign rule: an element of parity `a` acting on a parity-shifted
/// module picks up `(-1)^{|a|}`.
pub fn parity_twist(a: Parity, image: &Comb) -> Comb {
    if a.is_odd() {
        negate(image)
    } else {
        image.clone()
    }
}

/// The basis of 𝖳 = ΠL(0) ⊕ Ze_0 ⊕ ... ⊕ Ze_{l-1} with summand markers.
#[derive(Clone, Debug)]
pub struct TiltingBasis {
    pub l: usize,
    pub basis: Vec<BasisElement>,
    /// Zigzag basis index of each vector (`None` for v_0).
    pub element: Vec<Option<usize>>,
    /// The i with the vector in ΠT(i).
    pub left_summand: Vec<usize>,
    /// Position of the zigzag element `b` inside ΠT(i), keyed by (i, b).
    positions: std::collections::HashMap<(usize, usize), usize>,
}

impl TiltingBasis {
    pub fn new(l: usize) -> Result<Self> {
        let z = zigzag(l)?;
        let mut basis = vec![BasisElement::new("v0", Parity::Odd, CalClass::Odd).with_vertices(Some(0), Some(l))];
        let mut element = vec![None];
        let mut left_summand = vec![0];
        let mut positions = std::collections::HashMap::new();
        for i in 1..=l {
            let j = i - 1;
            for (b, e) in z.basis.iter().enumerate() {
                if e.right_vertex != Some(j) {
                    continue;
                }
                positions.insert((i, b), basis.len());
                // right vertex: ΠT(i) sits under e'_{l-i}
                basis.push(BasisElement { right_vertex: Some(l - i), ..e.clone() });
                element.push(Some(b));
                left_summand.push(i);
            }
        }
        Ok(TiltingBasis { l, basis, element, left_summand, positions })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of the zigzag element `x` in the summand ΠT(i), i ≥ 1.
    pub fn position(&self, i: usize, x: ZigzagElement) -> Option<usize> {
        self.positions.get(&(i, zigzag_index(self.l, x))).copied()
    }

    /// Index of the zigzag basis element with index `b` in ΠT(i), i ≥ 1.
    pub fn position_of_index(&self, i: usize, b: usize) -> Option<usize> {
        self.positions.get(&(i, b)).copied()
    }

    pub fn v0(&self) -> usize {
        0
    }

    /// Basis indices of the summand ΠT(i).
    pub fn summand(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&t| self.left_summand[t] == i).collect()
    }

    fn injection(&self, i: usize) -> Endo {
        (0..self.dim()).map(|t| if self.left_summand[t] == i { comb_single(t) } else { Vec::new() }).collect()
    }

    /// Left action table of Z on 𝖳.
    pub fn left_table(&self, z: &SuperAlgebra) -> Vec<Comb> {
        let n = self.dim();
        let mut table = vec![Vec::new(); z.dim() * n];
        for a in 0..z.dim() {
            for t in 0..n {
                table[a * n + t] = match self.element[t] {
                    // ΠL(0): only e_0 acts, and it is even
                    None => {
                        if a == zigzag_index(self.l, ZigzagElement::E(0)) {
                            parity_twist(z.parity(a), &comb_single(t))
                        } else {
                            Vec::new()
                        }
                    }
                    Some(b) => {
                        let i = self.left_summand[t];
                        z.mul_basis(a, b).iter().map(|(k, c)| (self.positions[&(i, *k)], c.clone())).collect()
                    }
                };
            }
        }
        table
    }

    /// Right multiplication `v ↦ v c_j` on Ze_j, as an endomorphism of 𝖳
    /// supported on ΠT(j+1).
    fn rho_cycle(&self, z: &SuperAlgebra, j: usize) -> Endo {
        let c = zigzag_index(self.l, ZigzagElement::Cycle(j));
        (0..self.dim())
            .map(|t| match self.element[t] {
                Some(b) if self.left_summand[t] == j + 1 => {
                    z.mul_basis(b, c).iter().map(|(k, v)| (self.positions[&(j + 1, *k)], v.clone())).collect()
                }
                _ => Vec::new(),
            })
            .collect()
    }

    /// `v ↦ (-1)^{|v|} v a_{ij}` from Ze_i to Ze_j.
    fn rho_arrow(&self, z: &SuperAlgebra, i: usize, j: usize) -> Endo {
        let a = zigzag_index(self.l, ZigzagElement::Arrow(i, j));
        (0..self.dim())
            .map(|t| match self.element[t] {
                Some(b) if self.left_summand[t] == i + 1 => {
                    let img: Comb =
                        z.mul_basis(b, a).iter().map(|(k, v)| (self.positions[&(j + 1, *k)], v.clone())).collect();
                    parity_twist(z.parity(b), &img)
                }
                _ => Vec::new(),
            })
            .collect()
    }
}

/// Which scalar f: ΠL(0) → Ze_0 puts on c_0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingSign {
    /// v_0 ↦ c_0.
    Plus,
    /// v_0 ↦ -c_0, matching the sign carried by right multiplications.
    Minus,
}

/// The primed elements e'_i, c'_i, a'_{ij} as endomorphisms of 𝖳, listed in
/// the zigzag basis order.
#[derive(Clone, Debug)]
pub struct PrimedGenerators {
    pub maps: Vec<Endo>,
    pub parities: Vec<Parity>,
}

pub fn primed_generators(tb: &TiltingBasis, sign: EmbeddingSign) -> Result<PrimedGenerators> {
    let l = tb.l;
    let z = zigzag(l)?;
    let pi = |i: usize| tb.injection(i);
    let mut maps = vec![Vec::new(); 4 * l + 1];
    for i in 0..=l {
        maps[zigzag_index(l, ZigzagElement::E(i))] = pi(l - i);
    }
    for i in 0..l {
        // c'_i acts on ΠT(l-i) = Ze_{l-i-1}
        maps[zigzag_index(l, ZigzagElement::Cycle(i))] = tb.rho_cycle(&z, l - i - 1);
    }
    for i in 0..l.saturating_sub(1) {
        let (p, q) = (l - i - 2, l - i - 1);
        maps[zigzag_index(l, ZigzagElement::Arrow(i + 1, i))] = tb.rho_arrow(&z, p, q);
        maps[zigzag_index(l, ZigzagElement::Arrow(i, i + 1))] = tb.rho_arrow(&z, q, p);
    }
    // f: ΠT(0) → ΠT(1) and g: ΠT(1) → ΠT(0)
    let c0 = tb.position(1, ZigzagElement::Cycle(0)).expect("c0 lies in Ze0");
    let e0 = tb.position(1, ZigzagElement::E(0)).expect("e0 lies in Ze0");
    let s = match sign {
        EmbeddingSign::Plus => BigInt::one(),
        EmbeddingSign::Minus => -BigInt::one(),
    };
    let mut f = vec![Vec::new(); tb.dim()];
    f[tb.v0()] = vec![(c0, s)];
    let mut g = vec![Vec::new(); tb.dim()];
    g[e0] = comb_single(tb.v0());
    maps[zigzag_index(l, ZigzagElement::Arrow(l, l - 1))] = f;
    maps[zigzag_index(l, ZigzagElement::Arrow(l - 1, l))] = g;
    let parities = z.basis.iter().map(|b| b.parity).collect();
    Ok(PrimedGenerators { maps, parities })
}

fn endo_matrix(e: &Endo) -> ExactMatrix<Rational> {
    let n = e.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (c, img) in e.iter().enumerate() {
        for (r, v) in img {
            m.set(*r, c, Rational::from_integer(v.clone()));
        }
    }
    m
}

fn flatten(e: &Endo) -> Vec<(usize, Rational)> {
    let n = e.len();
    let mut v: Vec<(usize, Rational)> = e
        .iter()
        .enumerate()
        .flat_map(|(c, img)| img.iter().map(move |(r, x)| (r * n + c, Rational::from_integer(x.clone()))))
        .collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

/// The sop product `x · y = (-1)^{|x||y|} y ∘ x`.
pub fn sop_product(x: &Endo, px: Parity, y: &Endo, py: Parity) -> Endo {
    let p = compose(y, x);
    if px.is_odd() && py.is_odd() {
        p.iter().map(negate).collect()
    } else {
        p
    }
}

/// A failed relation: the product of two primed elements against the
/// transported structure constant.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RelationFailure {
    pub left: String,
    pub right: String,
    #[serde(with = "crate::json::comb_strings")]
    pub expected: Comb,
    #[serde(with = "crate::json::opt_comb_strings")]
    pub found: Option<Comb>,
}

/// Outcome of building Z' and comparing it with Z.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RingelDualReport {
    pub basis_size: usize,
    pub independent: bool,
    /// dim of the super commutant of Z on 𝖳.
    pub commutant_dim: usize,
    pub homomorphisms: bool,
    pub failures: Vec<RelationFailure>,
}

impl RingelDualReport {
    pub fn passed(&self) -> bool {
        self.independent && self.homomorphisms && self.failures.is_empty() && self.commutant_dim == self.basis_size
    }
}

/// The Ringel dual of the zigzag superalgebra together with 𝖳 as a bimodule.
#[derive(Clone, Debug)]
pub struct TiltingBimodule {
    pub l: usize,
    pub z: SuperAlgebra,
    pub zprime: SuperAlgebra,
    pub tb: TiltingBasis,
    pub generators: PrimedGenerators,
    pub module: Bimodule,
    /// The i with the vector in ΠT'(i).
    pub right_summand: Vec<usize>,
    pub report: RingelDualReport,
}

/// Coordinates of vectors in the span of a fixed family: each family row is
/// tagged with its own index in a tail coordinate, so reducing a vector
/// leaves minus its coordinates in the tail.
struct SpanSolver {
    width: usize,
    ech: Echelon<Rational>,
}

impl SpanSolver {
    fn new(width: usize, family: &[Vec<(usize, Rational)>]) -> Self {
        let mut ech = Echelon::new(width + family.len());
        for (i, v) in family.iter().enumerate() {
            let mut row = v.clone();
            row.push((width + i, Rational::one()));
            ech.insert(row);
        }
        SpanSolver { width, ech }
    }

    fn solve(&self, x: &[(usize, Rational)]) -> Option<Comb> {
        let r = self.ech.reduce(&x.to_vec());
        if r.iter().any(|(k, _)| *k < self.width) {
            return None;
        }
        let mut out = Vec::new();
        for (k, v) in r {
            out.push((k - self.width, crate::field::rational_to_int(&-v)?));
        }
        Some(comb_normalize(out))
    }
}

/// Build Z' from the primed generators and compare its structure constants
/// with those of Z under e_i ↦ e'_i, a_{ij} ↦ a'_{ij}, c_i ↦ c'_i.
pub fn ringel_dual_zigzag_with(l: usize, sign: EmbeddingSign) -> Result<TiltingBimodule> {
    let z = zigzag(l)?;
    let tb = TiltingBasis::new(l)?;
    let gens = primed_generators(&tb, sign)?;
    let n = tb.dim();
    let dz = z.dim();
    let coords: Vec<Vec<(usize, Rational)>> = gens.maps.iter().map(flatten).collect();
    let mut ech = Echelon::<Rational>::new(n * n);
    let independent = coords.iter().all(|c| ech.insert(c.clone()));

    let left = CalModule {
        name: "T".into(),
        basis: tb.basis.clone(),
        side: Side::Left,
        algebra_dim: dz,
        table: tb.left_table(&z),
        calibrated: true,
    };
    left.validate(&z)?;
    let parities = left.parities();
    let ops: Vec<(ExactMatrix<Rational>, Parity)> = (0..dz).map(|a| (left.action_matrix(a), z.parity(a))).collect();
    let commutant = super_commutant(&ops, &parities, None);

    // each primed element must commute with Z with the super sign
    let homomorphisms = gens.maps.iter().zip(&gens.parities).all(|(f, pf)| {
        let fm = endo_matrix(f);
        ops.iter().all(|(x, px)| {
            let lhs = fm.mul(x).expect("square");
            let rhs = x.mul(&fm).expect("square");
            let rhs = if pf.is_odd() && px.is_odd() { rhs.scale(&-Rational::one()) } else { rhs };
            lhs == rhs
        })
    });

    let solver = SpanSolver::new(n * n, &coords);
    let mut table = vec![Vec::new(); dz * dz];
    let mut failures = Vec::new();
    for i in 0..dz {
        for j in 0..dz {
            let p = sop_product(&gens.maps[i], gens.parities[i], &gens.maps[j], gens.parities[j]);
            let found = solver.solve(&flatten(&p));
            let expected = z.mul_basis(i, j).clone();
            if found.as_ref() != Some(&expected) {
                failures.push(RelationFailure {
                    left: format!("{}'", z.basis[i].name),
                    right: format!("{}'", z.basis[j].name),
                    expected,
                    found: found.clone(),
                });
            }
            table[i * dz + j] = found.unwrap_or_default();
        }
    }
    let zprime = SuperAlgebra {
        name: format!("Z'({l})"),
        basis: z.basis.iter().map(|b| BasisElement { name: format!("{}'", b.name), ..b.clone() }).collect(),
        table,
        unit: z.unit.clone(),
        tau: z.tau.clone(),
        heredity: z.heredity.clone().map(|h| HeredityData { x: h.x, y: h.y, e: h.e }),
    };

    // right action t·z' = (-1)^{|t||z'|} z'(t)
    let mut rtable = vec![Vec::new(); dz * n];
    for a in 0..dz {
        for t in 0..n {
            let img = gens.maps[a][t].clone();
            rtable[a * n + t] = if parities[t].is_odd() && gens.parities[a].is_odd() { negate(&img) } else { img };
        }
    }
    let right = CalModule {
        name: "T".into(),
        basis: tb.basis.clone(),
        side: Side::Right,
        algebra_dim: dz,
        table: rtable,
        calibrated: true,
    };
    let right_summand = right_summands(&tb);
    let report = RingelDualReport {
        basis_size: gens.maps.len(),
        independent,
        commutant_dim: commutant.dim(),
        homomorphisms,
        failures,
    };
    Ok(TiltingBimodule { l, z, zprime, tb, generators: gens, module: Bimodule { left, right }, right_summand, report })
}

/// The construction with the sign convention under which every relation holds.
pub fn ringel_dual_zigzag(l: usize) -> Result<TiltingBimodule> {
    ringel_dual_zigzag_with(l, EmbeddingSign::Minus)
}

/// The tilting bimodule 𝖳; fails if the primed elements do not reproduce Z.
pub fn tilting_bimodule(l: usize) -> Result<TiltingBimodule> {
    let t = ringel_dual_zigzag(l)?;
    if !t.report.passed() {
        return Err(Error::Structure(format!("primed generators do not reproduce Z({l}): {:?}", t.report.failures)));
    }
    t.zprime.validate()?;
    t.module.right.validate(&t.zprime)?;
    Ok(t)
}

/// The right summands ΠT'(i) as listed spans of basis vectors.
fn right_summands(tb: &TiltingBasis) -> Vec<usize> {
    let l = tb.l;
    let mut out = vec![usize::MAX; tb.dim()];
    // ΠT'(0) = k a_{l,l-1} inside Ze_{l-1}
    if let Some(p) = tb.position(l, ZigzagElement::Arrow(l, l - 1)) {
        out[p] = 0;
    }
    // ΠT'(l) = span(v0, e0, c0, a01)
    out[tb.v0()] = l;
    for x in [ZigzagElement::E(0), ZigzagElement::Cycle(0)] {
        out[tb.position(1, x).expect("in Ze0")] = l;
    }
    if l > 1 {
        out[tb.position(2, ZigzagElement::Arrow(0, 1)).expect("in Ze1")] = l;
    }
    for i in 1..l {
        let m = l - i;
        out[tb.position(m + 1, ZigzagElement::E(m)).expect("in Ze_m")] = i;
        out[tb.position(m + 1, ZigzagElement::Cycle(m)).expect("in Ze_m")] = i;
        out[tb.position(m, ZigzagElement::Arrow(m, m - 1)).expect("in Ze_{m-1}")] = i;
        if i > 1 {
            out[tb.position(m + 2, ZigzagElement::Arrow(m, m + 1)).expect("in Ze_{m+1}")] = i;
        }
    }
    out
}

impl TiltingBimodule {
    pub fn dim(&self) -> usize {
        self.tb.dim()
    }

    /// Both actions commute on all basis triples.
    pub fn actions_commute(&self) -> bool {
        self.module.actions_commute()
    }

    /// 𝔞 · 𝖳_𝔞 · 𝔞' ⊆ 𝖳_𝔞.
    pub fn calibration_stable(&self) -> bool {
        let n = self.dim();
        let a_idx: Vec<usize> = (0..self.z.dim()).filter(|&a| self.z.basis[a].class == CalClass::A).collect();
        for &a in &a_idx {
            for &b in &a_idx {
                for t in 0..n {
                    if self.tb.basis[t].class != CalClass::A {
                        continue;
                    }
                    let at = self.module.left.act_basis(a, t);
                    let atb = comb_bilinear(&self.module.right.table, n, &comb_single(b), at);
                    if atb.iter().any(|(k, _)| self.tb.basis[*k].class != CalClass::A) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sizes of the listed ΠT'(i); fails unless every span is right-stable
    /// and the spans partition the basis.
    pub fn right_decomposition(&self) -> Result<Vec<usize>> {
        let n = self.dim();
        if self.right_summand.iter().any(|&s| s > self.l) {
            return Err(Error::Structure("right summands do not cover 𝖳".into()));
        }
        for t in 0..n {
            for a in 0..self.zprime.dim() {
                for (k, _) in self.module.right.act_basis(a, t) {
                    if self.right_summand[*k] != self.right_summand[t] {
                        return Err(Error::Structure(format!(
                            "{} · {} leaves ΠT'({})",
                            self.tb.basis[t].name, self.zprime.basis[a].name, self.right_summand[t]
                        )));
                    }
                }
            }
        }
        Ok((0..=self.l).map(|i| self.right_summand.iter().filter(|&&s| s == i).count()).collect())
    }

    /// ΠT(i) as a calibrated left Z-module.
    pub fn summand_module(&self, i: usize) -> Result<CalModule> {
        summand_module(&self.z, &self.tb, i)
    }
}

/// ΠT(i) as a calibrated left Z-module, basis in 𝖳 order.
pub fn summand_module(z: &SuperAlgebra, tb: &TiltingBasis, i: usize) -> Result<CalModule> {
    if i > tb.l {
        return Err(Error::Usage(format!("no summand ΠT({i}) for l = {}", tb.l)));
    }
    let idx = tb.summand(i);
    let pos: std::collections::HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &t)| (t, p)).collect();
    let full = tb.left_table(z);
    let n = tb.dim();
    let m = idx.len();
    let mut table = vec![Vec::new(); z.dim() * m];
    for a in 0..z.dim() {
        for (p, &t) in idx.iter().enumerate() {
            table[a * m + p] = full[a * n + t].iter().map(|(k, c)| (pos[k], c.clone())).collect();
        }
    }
    let module = CalModule {
        name: format!("PiT({i})"),
        basis: idx.iter().map(|&t| tb.basis[t].clone()).collect(),
        side: Side::Left,
        algebra_dim: z.dim(),
        table,
        calibrated: true,
    };
    module.validate(z)?;
    Ok(module)
}

/// The form on ΠT(i), i ≥ 1: (e, c) = -(c, e) = (a, a) = 1 for the
/// idempotent, cycle and arrows of Ze_{i-1}. Rows and columns follow the
/// basis of [`summand_module`].
pub fn pit_form(l: usize, i: usize) -> Result<Gram> {
    if i == 0 || i > l {
        return Err(Error::Usage(format!("the form is defined on ΠT(i) for 1 <= i <= l, got i = {i}")));
    }
    let z = zigzag(l)?;
    let tb = TiltingBasis::new(l)?;
    let m = summand_module(&z, &tb, i)?;
    let k = m.dim();
    let labels = zigzag_labels(l);
    let kind = |p: usize| labels[tb.element[tb.summand(i)[p]].expect("not v0")];
    let mut g = vec![vec![BigInt::zero(); k]; k];
    for p in 0..k {
        for q in 0..k {
            g[p][q] = match (kind(p), kind(q)) {
                (ZigzagElement::E(_), ZigzagElement::Cycle(_)) => BigInt::one(),
                (ZigzagElement::Cycle(_), ZigzagElement::E(_)) => -BigInt::one(),
                (ZigzagElement::Arrow(a, b), ZigzagElement::Arrow(c, d)) if (a, b) == (c, d) => BigInt::one(),
                _ => BigInt::zero(),
            };
        }
    }
    Ok(g)
}

/// The form extended to Col_n: `(v^b_r, v^{b'}_s) = δ_{rs} (b, b')`, basis
/// index `b * n + r` as in column modules.
pub fn column_form(gram: &Gram, n: usize) -> Gram {
    let k = gram.len();
    let mut out = vec![vec![BigInt::zero(); k * n]; k * n];
    for p in 0..k {
        for q in 0..k {
            for r in 0..n {
                out[p * n + r][q * n + r] = gram[p][q].clone();
            }
        }
    }
    out
}

/// For each basis vector b of ΠT(i), i ≥ 1, the index of the vector
/// proportional to its dual b* under [`pit_form`], with the sign:
/// e* = c, c* = -e, a* = a.
pub fn pit_dual(gram: &Gram) -> Result<Vec<(usize, BigInt)>> {
    let k = gram.len();
    (0..k)
        .map(|p| {
            // b* is the vector w with (b', w) = δ_{b b'}
            let hits: Vec<usize> = (0..k).filter(|&q| !gram[p][q].is_zero()).collect();
            match hits.as_slice() {
                [q] if gram[p][*q].is_one() || (-&gram[p][*q]).is_one() => Ok((*q, gram[p][*q].clone())),
                _ => Err(Error::Structure("form is not a signed permutation".into())),
            }
        })
        .collect()
}

/// dim Hom_Z(Δ(i), ∇(j)) over Q.
pub fn hom_delta_nabla(l: usize, i: usize, j: usize) -> Result<usize> {
    let z = zigzag(l)?;
    let d = zigzag_modules::standard(l, i);
    let n = zigzag_modules::costandard(l, j);
    let ops: Vec<_> = (0..z.dim()).map(|a| (d.action_matrix(a), n.action_matrix(a), z.parity(a))).collect();
    Ok(super_hom(&ops, &d.parities(), &n.parities(), None).dim())
}

/// Everything checked for `verify lzprime`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LzPrimeReport {
    pub l: usize,
    pub ringel: RingelDualReport,
    pub commute: bool,
    pub calibration_stable: bool,
    pub right_summand_dims: Option<Vec<usize>>,
    pub literal_sign_failures: usize,
}

impl LzPrimeReport {
    pub fn passed(&self) -> bool {
        self.ringel.passed() && self.commute && self.calibration_stable && self.right_summand_dims.is_some()
    }
}

pub fn verify_lzprime(l: usize) -> Result<LzPrimeReport> {
    let t = ringel_dual_zigzag(l)?;
    let literal = ringel_dual_zigzag_with(l, EmbeddingSign::Plus)?;
    Ok(LzPrimeReport {
        l,
        commute: t.actions_commute(),
        calibration_stable: t.calibration_stable(),
        right_summand_dims: t.right_decomposition().ok(),
        literal_sign_failures: literal.report.failures.len(),
        ringel: t.report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilting_dimensions() {
        assert_eq!(TiltingBasis::new(1).unwrap().dim(), 4);
        assert_eq!(TiltingBasis::new(2).unwrap().dim(), 8);
        assert_eq!(TiltingBasis::new(3).unwrap().dim(), 12);
    }

    #[test]
    fn ringel_dual_small() {
        for l in 1..=3 {
            let t = ringel_dual_zigzag(l).unwrap();
            assert!(t.report.passed(), "l={l}: {:?}", t.report);
        }
    }
}
