//! Sparse exact linear algebra over a [`Field`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::superalg::Parity;

/// A sparse vector as sorted `(index, value)` pairs with no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

fn push_nonzero<F: Field>(out: &mut SparseVec<F>, i: usize, v: F) {
    if !v.is_zero() {
        out.push((i, v));
    }
}

/// `a + s * b` for sorted sparse vectors.
pub fn axpy<F: Field>(a: &SparseVec<F>, s: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            push_nonzero(&mut out, b[j].0, s.clone() * b[j].1.clone());
            j += 1;
        } else {
            push_nonzero(&mut out, a[i].0, a[i].1.clone() + s.clone() * b[j].1.clone());
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse matrix stored as one ordered map per row.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, F::field_name())?;
        for (r, row) in self.data.iter().enumerate() {
            if !row.is_empty() {
                writeln!(f, "  {r}: {:?}", row)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense input");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Build from integer triples `(row, col, value)`, summing duplicates.
    pub fn from_int_triples(rows: usize, cols: usize, triples: &[(usize, usize, BigInt)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triples {
            m.add_to(*r, *c, F::from_bigint(v));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: F) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, F> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.entries() {
            out.set(r, c, s.clone() * v.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(F::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(F::zero(), |acc, (c, a)| acc + a.clone() * v[*c].clone())
            })
            .collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<F>> {
        self.data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v.clone())).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        let mut rows = self.sparse_rows();
        rows.sort_by_key(|r| r.len());
        for r in rows {
            e.insert(r);
        }
        e.rank()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut e = Echelon::new(self.cols);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        e.kernel_basis()
            .into_iter()
            .map(|sv| {
                let mut d = vec![F::zero(); self.cols];
                for (i, v) in sv {
                    d[i] = v;
                }
                d
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let mut e = Echelon::new(n + 1);
        for (r, row) in self.data.iter().enumerate() {
            let mut sv: SparseVec<F> = row.iter().map(|(c, v)| (*c, v.clone())).collect();
            push_nonzero(&mut sv, n, b[r].clone());
            e.insert(sv);
        }
        if e.pivot_of_column(n).is_some() {
            return None;
        }
        let mut x = vec![F::zero(); n];
        for (col, row) in e.pivot_rows() {
            // the row reads x_col + sum(others) = b; free variables are zero
            let rhs = row.iter().find(|(c, _)| *c == n).map(|(_, v)| v.clone());
            if let Some(v) = rhs {
                x[col] = v;
            }
        }
        Some(x)
    }
}

/// Incremental Gauss-Jordan elimination. Every stored row has a unit at its
/// pivot column and zeros at every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    // pivot column -> row
    rows: HashMap<usize, SparseVec<F>>,
    // column -> pivot columns whose rows have a nonzero there
    col_users: HashMap<usize, Vec<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: HashMap::new(), col_users: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn pivot_of_column(&self, c: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&c)
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(c, r)| (*c, r))
    }

    /// Reduce a vector against the stored rows.
    pub fn reduce(&self, row: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = row
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .cloned()
            .collect();
        if hits.is_empty() {
            return row.clone();
        }
        let mut acc: BTreeMap<usize, F> = row.iter().cloned().collect();
        for (c, coeff) in hits {
            for (k, v) in &self.rows[&c] {
                let e = acc.entry(*k).or_insert_with(F::zero);
                *e = e.clone() - coeff.clone() * v.clone();
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Add a row; returns true when it raised the rank.
    pub fn insert(&mut self, row: SparseVec<F>) -> bool {
        let r = self.reduce(&row);
        if r.is_empty() {
            return false;
        }
        // cheapest entry becomes the pivot
        let (pc, pv) = r
            .iter()
            .min_by_key(|(c, v)| (v.weight(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("nonempty");
        let inv = pv.inv();
        let r: SparseVec<F> = r.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        if let Some(users) = self.col_users.remove(&pc) {
            for u in users {
                let old = self.rows.get(&u).expect("user row");
                let coeff = match old.iter().find(|(c, _)| *c == pc) {
                    Some((_, v)) => v.clone(),
                    None => continue,
                };
                let new = axpy(old, &-coeff, &r);
                for (c, _) in &new {
                    if *c != pc {
                        self.col_users.entry(*c).or_default().push(u);
                    }
                }
                self.rows.insert(u, new);
            }
        }
        for (c, _) in &r {
            if *c != pc {
                self.col_users.entry(*c).or_default().push(pc);
            }
        }
        self.rows.insert(pc, r);
        true
    }

    /// Basis of the null space of the stored rows.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        let mut out = Vec::new();
        // entries of pivot row p at free column f give x_p = -value
        let mut by_free: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
        for (p, row) in &self.rows {
            for (c, v) in row {
                if c != p {
                    by_free.entry(*c).or_default().push((*p, -v.clone()));
                }
            }
        }
        for f in 0..self.ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v: SparseVec<F> = by_free.remove(&f).unwrap_or_default();
            v.push((f, F::one()));
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}

/// The graded space of super module homomorphisms between two modules.
#[derive(Clone, Debug)]
pub struct SuperHomSpace<F: Field> {
    pub even: Vec<ExactMatrix<F>>,
    pub odd: Vec<ExactMatrix<F>>,
}

impl<F: Field> SuperHomSpace<F> {
    pub fn even_dim(&self) -> usize {
        self.even.len()
    }
    pub fn odd_dim(&self) -> usize {
        self.odd.len()
    }
    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }
}

/// Linear maps `f: M -> N` of a fixed parity with
/// `f(x v) = (-1)^{|f||x|} x f(v)` for every listed operator `x`.
///
/// `ops` pairs the action of `x` on `M` with its action on `N`. When labels
/// are given, `f` is only allowed to map basis vectors to vectors with the
/// same label (a block partition known to be respected).
pub fn super_hom<F: Field>(
    ops: &[(ExactMatrix<F>, ExactMatrix<F>, Parity)],
    src_parities: &[Parity],
    dst_parities: &[Parity],
    labels: Option<(&[usize], &[usize])>,
) -> SuperHomSpace<F> {
    let m = src_parities.len();
    let n = dst_parities.len();
    let mut result = SuperHomSpace { even: Vec::new(), odd: Vec::new() };
    for fpar in [Parity::Even, Parity::Odd] {
        // unknown index for entry (w, v)
        let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
        let mut coords = Vec::new();
        for w in 0..n {
            for v in 0..m {
                if dst_parities[w] != src_parities[v] + fpar {
                    continue;
                }
                if let Some((ls, ld)) = labels {
                    if ls[v] != ld[w] {
                        continue;
                    }
                }
                unknown.insert((w, v), coords.len());
                coords.push((w, v));
            }
        }
        let mut ech = Echelon::new(coords.len());
        for (xm, xn, xpar) in ops {
            assert_eq!((xm.rows(), xm.cols()), (m, m), "operator on source has wrong shape");
            assert_eq!((xn.rows(), xn.cols()), (n, n), "operator on target has wrong shape");
            let s = if fpar.is_odd() && xpar.is_odd() { -F::one() } else { F::one() };
            let mut eqs: HashMap<(usize, usize), BTreeMap<usize, F>> = HashMap::new();
            // (f X_M)[w][v] = sum_u f[w][u] X_M[u][v]
            for (u, v, xv) in xm.entries() {
                for w in 0..n {
                    if let Some(&k) = unknown.get(&(w, u)) {
                        let e = eqs.entry((w, v)).or_default().entry(k).or_insert_with(F::zero);
                        *e = e.clone() + xv.clone();
                    }
                }
            }
            // - s (X_N f)[w][v] = - s sum_u X_N[w][u] f[u][v]
            for (w, u, xv) in xn.entries() {
                for v in 0..m {
                    if let Some(&k) = unknown.get(&(u, v)) {
                        let e = eqs.entry((w, v)).or_default().entry(k).or_insert_with(F::zero);
                        *e = e.clone() - s.clone() * xv.clone();
                    }
                }
            }
            for (_, row) in eqs {
                let sv: SparseVec<F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !sv.is_empty() {
                    ech.insert(sv);
                }
            }
        }
        for kv in ech.kernel_basis() {
            let mut f = ExactMatrix::zeros(n, m);
            for (k, val) in kv {
                let (w, v) = coords[k];
                f.set(w, v, val);
            }
            match fpar {
                Parity::Even => result.even.push(f),
                Parity::Odd => result.odd.push(f),
            }
        }
    }
    result
}

/// The super commutant of a family of operators on one module.
pub fn super_commutant<F: Field>(
    operators: &[(ExactMatrix<F>, Parity)],
    parities: &[Parity],
    blocks: Option<&[usize]>,
) -> SuperHomSpace<F> {
    let ops: Vec<_> = operators
        .iter()
        .map(|(x, p)| (x.clone(), x.clone(), *p))
        .collect();
    super_hom(&ops, parities, parities, blocks.map(|b| (b, b)))
}

/// Rank of a family of sparse vectors, splitting them into groups with
/// disjoint supports first. Keys may be arbitrary `u64` coordinates.
pub fn rank_by_components<F: Field>(vectors: &[Vec<(u64, F)>]) -> usize {
    let mut parent: HashMap<u64, u64> = HashMap::new();
    fn find(p: &mut HashMap<u64, u64>, x: u64) -> u64 {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        let mut y = x;
        while let Some(&q) = p.get(&y) {
            if q == r {
                break;
            }
            p.insert(y, r);
            y = q;
        }
        r
    }
    for v in vectors {
        for (k, _) in v {
            parent.entry(*k).or_insert(*k);
        }
        if let Some((first, _)) = v.first() {
            let a = find(&mut parent, *first);
            for (k, _) in v.iter().skip(1) {
                let b = find(&mut parent, *k);
                if a != b {
                    parent.insert(b, a);
                }
            }
        }
    }
    let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some((first, _)) = v.first() {
            let root = find(&mut parent, *first);
            groups.entry(root).or_default().push(i);
        }
    }
    let mut total = 0;
    for (_, idxs) in groups {
        let mut local: HashMap<u64, usize> = HashMap::new();
        let mut rows = Vec::new();
        for &i in &idxs {
            let mut sv: SparseVec<F> = vectors[i]
                .iter()
                .map(|(k, v)| {
                    let n = local.len();
                    (*local.entry(*k).or_insert(n), v.clone())
                })
                .collect();
            sv.sort_by_key(|(c, _)| *c);
            rows.push(sv);
        }
        let mut e = Echelon::new(local.len());
        for r in rows {
            e.insert(r);
        }
        total += e.rank();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::Zero;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_and_kernel_small() {
        let m = ExactMatrix::from_dense(&[
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = [vec![1i64, 1], vec![1, -1]];
        let mq: ExactMatrix<Rational> =
            ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
        let m2: ExactMatrix<Fp<2>> = ExactMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| Fp::<2>::from_i64(x)).collect()).collect::<Vec<_>>(),
        );
        assert_eq!(mq.rank(), 2);
        assert_eq!(m2.rank(), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = ExactMatrix::from_dense(&[vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(m.solve(&[q(2), q(2)]).is_some());
        assert!(m.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn commutant_of_scalars_is_everything() {
        let ops = vec![(ExactMatrix::<Rational>::identity(2), Parity::Even)];
        let c = super_commutant(&ops, &[Parity::Even, Parity::Odd], None);
        assert_eq!((c.even_dim(), c.odd_dim()), (2, 2));
    }
}
