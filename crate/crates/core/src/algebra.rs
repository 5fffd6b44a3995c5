//! Finite-dimensional unital associative algebras over F_q by structure
//! constants: group algebras, twisted group algebras, derivation and
//! inner-derivation spaces, first Hochschild cohomology dimensions, ideal
//! algebras cut out by central idempotents, and G-modules.
//!
//! Derivations are solved from the Leibniz constraints on an algebra
//! generating set (plus D(1) = 0), which has the same solution space as
//! the full pairwise system; group-like (monomial) algebras additionally
//! get a parametrization by the derivation's values on the generators,
//! propagated along a spanning tree of the basis, which keeps the A5
//! group algebra and friends comfortably solvable.

use std::sync::Arc;

use crate::cocycle::Cocycle2;
use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::group::{Group, Subgroup};
use crate::linalg::{Echelon, FqMatrix, RowSpan, SparseEchelon, SparseRow, DENSE_COL_LIMIT};

/// Seed for the sampled associativity check on algebras of dimension > 64.
pub const VALIDATION_SEED: u64 = 0x6a5e_55ed;

#[derive(Clone)]
pub struct StructAlgebra {
    pub field: Arc<FqField>,
    pub dim: usize,
    pub labels: Vec<String>,
    /// sc[i*dim + j] lists the nonzero terms (k, c) of e_i * e_j.
    sc: Vec<Vec<(u32, FqElem)>>,
    pub unit: Vec<FqElem>,
    /// None when associativity was checked exhaustively; the sample seed
    /// otherwise.
    pub validation_seed: Option<u64>,
}

impl std::fmt::Debug for StructAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "StructAlgebra(dim={}, field={})",
            self.dim,
            self.field.as_ref()
        )
    }
}

impl StructAlgebra {
    pub fn new(
        field: Arc<FqField>,
        labels: Vec<String>,
        sc: Vec<Vec<(u32, FqElem)>>,
        unit: Vec<FqElem>,
    ) -> Result<StructAlgebra> {
        Self::with_validation(field, labels, sc, unit, false)
    }

    /// Exhaustive associativity validation regardless of dimension.
    pub fn new_paranoid(
        field: Arc<FqField>,
        labels: Vec<String>,
        sc: Vec<Vec<(u32, FqElem)>>,
        unit: Vec<FqElem>,
    ) -> Result<StructAlgebra> {
        Self::with_validation(field, labels, sc, unit, true)
    }

    fn with_validation(
        field: Arc<FqField>,
        labels: Vec<String>,
        sc: Vec<Vec<(u32, FqElem)>>,
        unit: Vec<FqElem>,
        paranoid: bool,
    ) -> Result<StructAlgebra> {
        let dim = labels.len();
        assert_eq!(sc.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        let exhaustive = paranoid || dim <= 64;
        let a = StructAlgebra {
            field,
            dim,
            labels,
            sc,
            unit,
            validation_seed: if exhaustive {
                None
            } else {
                Some(VALIDATION_SEED)
            },
        };
        a.validate(exhaustive)?;
        Ok(a)
    }

    /// Re-run the associativity check over all basis triples, regardless
    /// of dimension.
    pub fn revalidate_exhaustive(&self) -> Result<()> {
        self.validate(true)
    }

    fn validate(&self, exhaustive: bool) -> Result<()> {
        let n = self.dim;
        if n == 0 {
            return Ok(());
        }
        for i in 0..n {
            let b = self.basis_vec(i);
            if self.mul_vec(&self.unit, &b) != b || self.mul_vec(&b, &self.unit) != b {
                return Err(Error::UnitNotIdentity(i));
            }
        }
        let check = |a: &Self, i: usize, j: usize, k: usize| -> bool {
            // (e_i e_j) e_k vs e_i (e_j e_k), sparsely
            let mut lhs = vec![FqElem::ZERO; n];
            for &(s, c) in a.sc_at(i, j) {
                for &(t, d) in a.sc_at(s as usize, k) {
                    lhs[t as usize] = a.field.add(lhs[t as usize], a.field.mul(c, d));
                }
            }
            let mut rhs = vec![FqElem::ZERO; n];
            for &(s, c) in a.sc_at(j, k) {
                for &(t, d) in a.sc_at(i, s as usize) {
                    rhs[t as usize] = a.field.add(rhs[t as usize], a.field.mul(c, d));
                }
            }
            lhs == rhs
        };
        if exhaustive {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !check(self, i, j, k) {
                            return Err(Error::NotAssociative { i, j, k });
                        }
                    }
                }
            }
        } else {
            let mut state = VALIDATION_SEED;
            let mut next = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            for _ in 0..10 * n * n {
                let (i, j, k) = (next() % n, next() % n, next() % n);
                if !check(self, i, j, k) {
                    return Err(Error::NotAssociative { i, j, k });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn sc_at(&self, i: usize, j: usize) -> &[(u32, FqElem)] {
        &self.sc[i * self.dim + j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<FqElem> {
        let mut v = vec![FqElem::ZERO; self.dim];
        v[i] = FqElem::ONE;
        v
    }

    pub fn mul_vec(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let f = self.field.as_ref();
        let mut out = vec![FqElem::ZERO; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = f.mul(ai, bj);
                for &(k, v) in self.sc_at(i, j) {
                    out[k as usize] = f.add(out[k as usize], f.mul(c, v));
                }
            }
        }
        out
    }

    /// Group-like structure when every basis product is a single nonzero
    /// term, the unit is a basis element, and translations permute the
    /// basis.
    fn monomial(&self) -> Option<Monomial> {
        let n = self.dim;
        let mut unit_idx = None;
        for (i, &c) in self.unit.iter().enumerate() {
            if !c.is_zero() {
                if unit_idx.is_some() || c != FqElem::ONE {
                    return None;
                }
                unit_idx = Some(i as u32);
            }
        }
        let unit_idx = unit_idx?;
        let mut sigma = vec![0u32; n * n];
        let mut lambda = vec![FqElem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let terms = self.sc_at(i, j);
                if terms.len() != 1 || terms[0].1.is_zero() {
                    return None;
                }
                sigma[i * n + j] = terms[0].0;
                lambda[i * n + j] = terms[0].1;
            }
        }
        // right and left translations must be bijections
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let k = sigma[i * n + j] as usize;
                if seen[k] {
                    return None;
                }
                seen[k] = true;
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let k = sigma[i * n + j] as usize;
                if seen[k] {
                    return None;
                }
                seen[k] = true;
            }
        }
        Some(Monomial {
            n,
            unit_idx,
            sigma,
            lambda,
        })
    }
}

struct Monomial {
    n: usize,
    unit_idx: u32,
    sigma: Vec<u32>,
    lambda: Vec<FqElem>,
}

impl Monomial {
    #[inline]
    fn sig(&self, i: u32, j: u32) -> u32 {
        self.sigma[i as usize * self.n + j as usize]
    }
    #[inline]
    fn lam(&self, i: u32, j: u32) -> FqElem {
        self.lambda[i as usize * self.n + j as usize]
    }
}

/// Group algebra kG: basis indexed by group elements, products follow the
/// Cayley table, unit is the identity's basis vector.
pub fn group_algebra(g: &Group, field: Arc<FqField>) -> StructAlgebra {
    let n = g.order();
    let mut sc = Vec::with_capacity(n * n);
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            sc.push(vec![(g.mul(i, j), FqElem::ONE)]);
        }
    }
    let mut unit = vec![FqElem::ZERO; n];
    unit[0] = FqElem::ONE;
    StructAlgebra::new(field, g.names().to_vec(), sc, unit)
        .expect("group law gives an associative algebra")
}

/// Twisted group algebra: basis products scaled by the cocycle's values.
/// Requires a normalized table and mu_m inside the field; associativity
/// of the result is revalidated, so a corrupted table is rejected here
/// even when constructed unchecked.
pub fn twisted_group_algebra(
    g: &Group,
    c: &Cocycle2,
    field: Arc<FqField>,
) -> Result<StructAlgebra> {
    if c.group_order() != g.order() {
        return Err(Error::Input("cocycle group order mismatch".into()));
    }
    if !c.is_normalized() {
        return Err(Error::Input(
            "twisted group algebra needs a normalized cocycle".into(),
        ));
    }
    let zeta = field.unity_root(c.m())?;
    let mut zpow = Vec::with_capacity(c.m() as usize);
    let mut acc = FqElem::ONE;
    for _ in 0..c.m() {
        zpow.push(acc);
        acc = field.mul(acc, zeta);
    }
    let n = g.order();
    let mut sc = Vec::with_capacity(n * n);
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            sc.push(vec![(g.mul(i, j), zpow[c.at(i, j) as usize])]);
        }
    }
    let mut unit = vec![FqElem::ZERO; n];
    unit[0] = FqElem::ONE;
    let labels = g.names().iter().map(|s| format!("~{s}")).collect();
    StructAlgebra::new(field, labels, sc, unit)
}

/// Basis of the center {z : z e_i = e_i z for all i}.
pub fn algebra_center(a: &StructAlgebra) -> Vec<Vec<FqElem>> {
    let f = a.field.as_ref();
    let n = a.dim;
    let mut ech = Echelon::new(f, n);
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for i in 0..n {
        // row per coordinate k: sum_j z_j ((e_j e_i)_k - (e_i e_j)_k)
        let mut mat = vec![vec![FqElem::ZERO; n]; n];
        for j in 0..n {
            for &(k, c) in a.sc_at(j, i) {
                mat[k as usize][j] = f.add(mat[k as usize][j], c);
            }
            for &(k, c) in a.sc_at(i, j) {
                mat[k as usize][j] = f.sub(mat[k as usize][j], c);
            }
        }
        rows.extend(mat);
    }
    for r in rows {
        ech.insert(r);
    }
    ech.kernel_basis()
}

/// Greedy basis-index generating set of A as a unital algebra.
fn algebra_generators(a: &StructAlgebra) -> (Vec<usize>, usize) {
    let n = a.dim;
    let f = a.field.as_ref();
    let mut ech = Echelon::new(f, n);
    let mut vectors: Vec<Vec<FqElem>> = Vec::new();
    if ech.insert(a.unit.clone()) {
        vectors.push(a.unit.clone());
    }
    let mut gens = Vec::new();
    while ech.rank() < n {
        let b = (0..n)
            .find(|&b| ech.reduce(a.basis_vec(b)).iter().any(|x| !x.is_zero()))
            .unwrap();
        gens.push(b);
        let bv = a.basis_vec(b);
        if ech.insert(bv.clone()) {
            vectors.push(bv);
        }
        // close under products until stable
        loop {
            let mut grew = false;
            let snapshot = vectors.clone();
            for x in &snapshot {
                for y in &snapshot {
                    let p = a.mul_vec(x, y);
                    if ech.insert(p.clone()) {
                        vectors.push(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    (gens, ech.rank())
}

fn monomial_derivation_setup(
    a: &StructAlgebra,
    mono: &Monomial,
) -> Option<(Vec<u32>, Vec<FqMatrix>, Vec<(u32, u32)>)> {
    let n = mono.n;
    let f = a.field.as_ref();
    let u0 = mono.unit_idx;
    // greedy generators under right translation from the unit
    let mut reach = vec![false; n];
    reach[u0 as usize] = true;
    let mut count = 1;
    let mut gens: Vec<u32> = Vec::new();
    while count < n {
        let b = (0..n as u32).find(|&b| !reach[b as usize]).unwrap();
        gens.push(b);
        // reclose
        let mut queue: Vec<u32> = (0..n as u32).filter(|&x| reach[x as usize]).collect();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = mono.sig(x, s);
                if !reach[y as usize] {
                    reach[y as usize] = true;
                    count += 1;
                    queue.push(y);
                }
            }
        }
    }
    let k = gens.len() * n;
    // spanning tree by BFS
    let mut order: Vec<u32> = vec![u0];
    let mut tree_edge: Vec<Option<(u32, usize)>> = vec![None; n]; // (parent, gen idx)
    let mut seen = vec![false; n];
    seen[u0 as usize] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (si, &s) in gens.iter().enumerate() {
            let y = mono.sig(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                tree_edge[y as usize] = Some((x, si));
                order.push(y);
            }
        }
    }
    // inverse permutations of the right translations by generators, and of
    // the left translations by every element
    let mut inv_right: Vec<Vec<u32>> = vec![vec![0; n]; gens.len()];
    for (si, &s) in gens.iter().enumerate() {
        for i in 0..n as u32 {
            inv_right[si][mono.sig(i, s) as usize] = i;
        }
    }
    let mut inv_left = vec![0u32; n * n];
    for x in 0..n as u32 {
        for m in 0..n as u32 {
            inv_left[x as usize * n + mono.sig(x, m) as usize] = m;
        }
    }
    // propagate coefficient matrices M_x (n rows, k cols): D(e_x) = M_x u
    let mut coeff: Vec<FqMatrix> = vec![FqMatrix::zero(n, k); n];
    for &x in order.iter().skip(1) {
        let (px, si) = tree_edge[x as usize].unwrap();
        let s = gens[si];
        let scale = f.inv(mono.lam(px, s));
        let mut m = FqMatrix::zero(n, k);
        // R_s * M_px: row kk comes from row inv_right[si][kk] scaled
        let mp = &coeff[px as usize];
        for kk in 0..n {
            let src = inv_right[si][kk] as usize;
            let lam = mono.lam(src as u32, s);
            let c = f.mul(lam, scale);
            if c.is_zero() {
                continue;
            }
            for col in 0..k {
                let v = mp.get(src, col);
                if !v.is_zero() {
                    m.set(kk, col, f.mul(c, v));
                }
            }
        }
        // + L_px * E_s: row kk gains lam(px, mm) at block (si, mm)
        for kk in 0..n {
            let mm = inv_left[px as usize * n + kk] as usize;
            let add = f.mul(mono.lam(px, mm as u32), scale);
            let col = si * n + mm;
            m.set(kk, col, f.add(m.get(kk, col), add));
        }
        coeff[x as usize] = m;
    }
    // non-tree constraint pairs
    let mut pairs = Vec::new();
    for x in 0..n as u32 {
        for (si, _) in gens.iter().enumerate() {
            let y = mono.sig(x, gens[si]);
            if tree_edge[y as usize] == Some((x, si)) {
                continue;
            }
            pairs.push((x, si as u32));
        }
    }
    Some((gens, coeff, pairs))
}

fn monomial_constraint_rows<'a>(
    a: &'a StructAlgebra,
    mono: &'a Monomial,
    gens: &'a [u32],
    coeff: &'a [FqMatrix],
    pairs: &'a [(u32, u32)],
) -> impl Iterator<Item = Vec<FqElem>> + 'a {
    let n = mono.n;
    let k = gens.len() * n;
    let f = a.field.as_ref();
    // inverse right translations again (cheap)
    let mut inv_right: Vec<Vec<u32>> = vec![vec![0; n]; gens.len()];
    for (si, &s) in gens.iter().enumerate() {
        for i in 0..n as u32 {
            inv_right[si][mono.sig(i, s) as usize] = i;
        }
    }
    let mut inv_left = vec![0u32; n * n];
    for x in 0..n as u32 {
        for m in 0..n as u32 {
            inv_left[x as usize * n + mono.sig(x, m) as usize] = m;
        }
    }
    pairs.iter().flat_map(move |&(x, si)| {
        let s = gens[si as usize];
        let y = mono.sig(x, s);
        let lam_xs = mono.lam(x, s);
        let mx = &coeff[x as usize];
        let my = &coeff[y as usize];
        let inv_r = inv_right[si as usize].clone();
        let inv_l: Vec<u32> = (0..n).map(|kk| inv_left[x as usize * n + kk]).collect();
        (0..n).map(move |kk| {
            let mut row = vec![FqElem::ZERO; k];
            let src = inv_r[kk] as usize;
            let lam = mono.lam(src as u32, s);
            if !lam.is_zero() {
                for col in 0..k {
                    let v = mx.get(src, col);
                    if !v.is_zero() {
                        row[col] = f.add(row[col], f.mul(lam, v));
                    }
                }
            }
            let mm = inv_l[kk] as usize;
            let col = si as usize * n + mm;
            row[col] = f.add(row[col], mono.lam(x, mm as u32));
            for colk in 0..k {
                let v = my.get(kk, colk);
                if !v.is_zero() {
                    row[colk] = f.sub(row[colk], f.mul(lam_xs, v));
                }
            }
            row
        })
    })
}

/// Rows of the generic derivation system: Leibniz constraints for the
/// pairs (every basis element, each generator) plus D(unit) = 0; unknowns
/// d[r][c] at column r*dim + c. Same solution space as the all-pairs
/// system.
fn generic_derivation_rows(a: &StructAlgebra, gens: &[usize]) -> Vec<SparseRow> {
    let n = a.dim;
    let f = a.field.as_ref();
    let col = |r: usize, c: usize| (r * n + c) as u32;
    let mut rows = Vec::new();
    for &s in gens {
        for i in 0..n {
            // equation for coordinate k:
            //   sum_m sc[i][s]_m d[k][m]
            // - sum_l sc[l][s]_k d[l][i]  - sum_l sc[i][l]_k d[l][s] = 0
            for k in 0..n {
                let mut row: Vec<(u32, FqElem)> = Vec::new();
                for &(m, c) in a.sc_at(i, s) {
                    row.push((col(k, m as usize), c));
                }
                for l in 0..n {
                    for &(kk, c) in a.sc_at(l, s) {
                        if kk as usize == k {
                            row.push((col(l, i), f.neg(c)));
                        }
                    }
                    for &(kk, c) in a.sc_at(i, l) {
                        if kk as usize == k {
                            row.push((col(l, s), f.neg(c)));
                        }
                    }
                }
                row.sort_by_key(|&(c, _)| c);
                // merge duplicate columns
                let mut merged: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    if let Some(last) = merged.last_mut() {
                        if last.0 == c {
                            last.1 = f.add(last.1, v);
                            continue;
                        }
                    }
                    merged.push((c, v));
                }
                merged.retain(|&(_, v)| !v.is_zero());
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    // D(unit) = 0
    for r in 0..n {
        let mut row: SparseRow = Vec::new();
        for (c, &u) in a.unit.iter().enumerate() {
            if !u.is_zero() {
                row.push((col(r, c), u));
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    rows
}

/// Dimension of the derivation space Der(A).
pub fn derivation_dim(a: &StructAlgebra) -> usize {
    if a.dim == 0 {
        return 0;
    }
    let f = a.field.as_ref();
    if let Some(mono) = a.monomial() {
        if let Some((gens, coeff, pairs)) = monomial_derivation_setup(a, &mono) {
            let k = gens.len() * a.dim;
            let mut ech = Echelon::new(f, k);
            for row in monomial_constraint_rows(a, &mono, &gens, &coeff, &pairs) {
                ech.insert(row);
            }
            return k - ech.rank();
        }
    }
    let (gens, _) = algebra_generators(a);
    let cols = a.dim * a.dim;
    let rows = generic_derivation_rows(a, &gens);
    if cols <= DENSE_COL_LIMIT {
        let mut ech = Echelon::new(f, cols);
        for r in rows {
            let mut dense = vec![FqElem::ZERO; cols];
            for (c, v) in r {
                dense[c as usize] = v;
            }
            ech.insert(dense);
        }
        cols - ech.rank()
    } else {
        let mut ech = SparseEchelon::new(f, cols);
        for r in rows {
            ech.insert(r);
        }
        cols - ech.rank()
    }
}

/// Derivation space with an explicit matrix basis (column c of each
/// matrix is D(e_c)); intended for small and medium dimensions.
pub fn derivation_space(a: &StructAlgebra) -> (usize, Vec<FqMatrix>) {
    let n = a.dim;
    if n == 0 {
        return (0, vec![]);
    }
    let f = a.field.as_ref();
    if let Some(mono) = a.monomial() {
        if let Some((gens, coeff, pairs)) = monomial_derivation_setup(a, &mono) {
            let k = gens.len() * n;
            let mut ech = Echelon::new(f, k);
            for row in monomial_constraint_rows(a, &mono, &gens, &coeff, &pairs) {
                ech.insert(row);
            }
            let kernel = ech.kernel_basis();
            let basis: Vec<FqMatrix> = kernel
                .iter()
                .map(|u| {
                    let mut d = FqMatrix::zero(n, n);
                    for c in 0..n {
                        let dc = coeff[c].mul_vec(f, u);
                        for (r, &v) in dc.iter().enumerate() {
                            d.set(r, c, v);
                        }
                    }
                    d
                })
                .collect();
            return (basis.len(), basis);
        }
    }
    let (gens, _) = algebra_generators(a);
    let cols = n * n;
    let mut ech = Echelon::new(f, cols);
    for r in generic_derivation_rows(a, &gens) {
        let mut dense = vec![FqElem::ZERO; cols];
        for (c, v) in r {
            dense[c as usize] = v;
        }
        ech.insert(dense);
    }
    let kernel = ech.kernel_basis();
    let basis: Vec<FqMatrix> = kernel
        .iter()
        .map(|v| {
            let mut d = FqMatrix::zero(n, n);
            for r in 0..n {
                for c in 0..n {
                    d.set(r, c, v[r * n + c]);
                }
            }
            d
        })
        .collect();
    (basis.len(), basis)
}

/// Inner derivations ad_a = [a, -]; dimension is dim A - dim Z(A).
pub fn inner_derivation_space(a: &StructAlgebra) -> (usize, Vec<FqMatrix>) {
    let n = a.dim;
    let f = a.field.as_ref();
    let mut ech = Echelon::new(f, n * n);
    let mut basis = Vec::new();
    for i in 0..n {
        // ad_{e_i}: column j is e_i e_j - e_j e_i
        let mut m = FqMatrix::zero(n, n);
        for j in 0..n {
            for &(k, c) in a.sc_at(i, j) {
                m.set(k as usize, j, f.add(m.get(k as usize, j), c));
            }
            for &(k, c) in a.sc_at(j, i) {
                m.set(k as usize, j, f.sub(m.get(k as usize, j), c));
            }
        }
        let flat: Vec<FqElem> = (0..n * n).map(|t| m.get(t / n, t % n)).collect();
        if ech.insert(flat) {
            basis.push(m);
        }
    }
    (basis.len(), basis)
}

/// dim Der(A) - dim Inn(A).
pub fn hh1_dim(a: &StructAlgebra) -> usize {
    let der = derivation_dim(a);
    let (inner, _) = inner_derivation_space(a);
    assert!(der >= inner, "inner derivations are derivations");
    der - inner
}

/// The ideal eA as a unital algebra with unit e, for a central idempotent
/// e; `basis` carries the chosen basis vectors in parent coordinates.
pub struct IdealAlgebra {
    pub algebra: StructAlgebra,
    pub basis: Vec<Vec<FqElem>>,
}

pub fn ideal_algebra_on_idempotent(a: &StructAlgebra, e: &[FqElem]) -> Result<IdealAlgebra> {
    let n = a.dim;
    let f = a.field.clone();
    if a.mul_vec(e, e) != e.to_vec() {
        return Err(Error::NotIdempotent);
    }
    for i in 0..n {
        let b = a.basis_vec(i);
        if a.mul_vec(e, &b) != a.mul_vec(&b, e) {
            return Err(Error::NotCentral);
        }
    }
    let mut span = RowSpan::new(a.field.as_ref(), n, n);
    let mut basis: Vec<Vec<FqElem>> = Vec::new();
    for i in 0..n {
        let v = a.mul_vec(e, &a.basis_vec(i));
        if span.insert(&v) {
            basis.push(v);
        }
    }
    let d = basis.len();
    let express = |v: &[FqElem]| -> Vec<(u32, FqElem)> {
        let raw = span.express(v).expect("product stays in the ideal");
        raw.iter()
            .take(d)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| (k as u32, c))
            .collect()
    };
    let mut sc = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            sc.push(express(&a.mul_vec(&basis[x], &basis[y])));
        }
    }
    let unit_terms = express(e);
    let mut unit = vec![FqElem::ZERO; d];
    for (k, c) in unit_terms {
        unit[k as usize] = c;
    }
    let labels = (0..d).map(|i| format!("b{i}")).collect();
    let algebra = StructAlgebra::new(f, labels, sc, unit)?;
    Ok(IdealAlgebra { algebra, basis })
}

/// A finite-dimensional representation: one invertible matrix per group
/// element, validated multiplicative on a generating set (which implies
/// the full multiplication table).
pub struct GModule {
    pub group: Group,
    pub field: Arc<FqField>,
    pub dim: usize,
    pub action: Vec<FqMatrix>,
}

impl GModule {
    pub fn new(group: Group, field: Arc<FqField>, action: Vec<FqMatrix>) -> Result<GModule> {
        let n = group.order();
        assert_eq!(action.len(), n);
        let dim = action[0].rows;
        for m in &action {
            assert!(m.rows == dim && m.cols == dim);
        }
        if !action[0].is_identity() {
            return Err(Error::NotMultiplicative { x: 0, y: 0 });
        }
        // greedy generating set
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial();
        while span.order() < n {
            let x = (0..n as u32).find(|&x| !span.contains(x)).unwrap();
            gens.push(x);
            span = Subgroup::generated(&group, &gens);
        }
        let f = field.as_ref();
        for &s in &gens {
            for h in 0..n as u32 {
                let lhs = action[s as usize].mat_mul(f, &action[h as usize]);
                if lhs != action[group.mul(s, h) as usize] {
                    return Err(Error::NotMultiplicative {
                        x: s as usize,
                        y: h as usize,
                    });
                }
            }
        }
        Ok(GModule {
            group,
            field,
            dim,
            action,
        })
    }

    pub fn trivial(group: Group, field: Arc<FqField>) -> GModule {
        let n = group.order();
        GModule {
            group,
            field,
            dim: 1,
            action: vec![FqMatrix::identity(1); n],
        }
    }

    /// One-dimensional module from multiplicative values.
    pub fn character(group: Group, field: Arc<FqField>, values: Vec<FqElem>) -> Result<GModule> {
        let action = values
            .iter()
            .map(|&v| {
                let mut m = FqMatrix::zero(1, 1);
                m.set(0, 0, v);
                m
            })
            .collect();
        GModule::new(group, field, action)
    }
}

/// Conjugation module of a stable subspace of a group-algebra-like
/// algebra whose basis is indexed by G: the action of g sends a to
/// e_g a e_{g^{-1}}, expressed in the subspace basis.
pub fn conjugation_module(g: &Group, a: &StructAlgebra, basis: &[Vec<FqElem>]) -> Result<GModule> {
    assert_eq!(a.dim, g.order(), "algebra must be based on the group");
    let n = g.order();
    let d = basis.len();
    let mut span = RowSpan::new(a.field.as_ref(), n, d);
    for b in basis {
        span.insert(b);
    }
    let mut action = Vec::with_capacity(n);
    for x in 0..n as u32 {
        let gx = a.basis_vec(x as usize);
        let gxinv = a.basis_vec(g.inv_of(x) as usize);
        let mut m = FqMatrix::zero(d, d);
        for (j, b) in basis.iter().enumerate() {
            let v = a.mul_vec(&gx, &a.mul_vec(b, &gxinv));
            let coords = span.express(&v).ok_or(Error::NotStable)?;
            for (i, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        action.push(m);
    }
    GModule::new(g.clone(), a.field.clone(), action)
}

/// Permutation module on the left cosets of a subgroup, cosets ordered by
/// least member.
pub fn permutation_module(g: &Group, field: Arc<FqField>, h: &Subgroup) -> GModule {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m) as usize] = id;
        }
    }
    let d = reps.len();
    let mut action = Vec::with_capacity(n);
    for x in 0..n as u32 {
        let mut m = FqMatrix::zero(d, d);
        for (j, &r) in reps.iter().enumerate() {
            let img = coset_of[g.mul(x, r) as usize] as usize;
            m.set(img, j, FqElem::ONE);
        }
        action.push(m);
    }
    GModule::new(g.clone(), field, action).expect("permutation action is multiplicative")
}

/// Structured JSON export: field spec, dimension, sparse structure
/// constants and the unit vector.
pub fn algebra_to_json(a: &StructAlgebra) -> serde_json::Value {
    let f = a.field.as_ref();
    let coeffs = |x: FqElem| f.coeffs(x);
    serde_json::json!({
        "field": {"p": f.p(), "e": f.e(), "modulus": f.modulus()},
        "dim": a.dim,
        "labels": a.labels,
        "unit": a.unit.iter().map(|&c| coeffs(c)).collect::<Vec<_>>(),
        "validation_seed": a.validation_seed,
        "sc": (0..a.dim * a.dim).filter(|idx| !a.sc[*idx].is_empty()).map(|idx| {
            serde_json::json!({
                "i": idx / a.dim,
                "j": idx % a.dim,
                "terms": a.sc[idx].iter().map(|&(k, c)| serde_json::json!([k, coeffs(c)])).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::h2_classes;
    use crate::group::tests::{cyclic, quaternion8, sym3};
    use crate::group::DEFAULT_ORDER_CAP;
    use crate::linalg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64, e: u32) -> Arc<FqField> {
        Arc::new(FqField::new(p, e).unwrap())
    }

    /// Independent oracle: dimension of the full Leibniz system over all
    /// pairs, solved naively with dim^2 unknowns.
    fn derivation_dim_all_pairs(a: &StructAlgebra) -> usize {
        let n = a.dim;
        let field = a.field.as_ref();
        let mut ech = linalg::Echelon::new(field, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![FqElem::ZERO; n * n];
                    for &(m, c) in a.sc_at(i, j) {
                        let idx = k * n + m as usize;
                        row[idx] = field.add(row[idx], c);
                    }
                    for l in 0..n {
                        for &(kk, c) in a.sc_at(l, j) {
                            if kk as usize == k {
                                let idx = l * n + i;
                                row[idx] = field.sub(row[idx], c);
                            }
                        }
                        for &(kk, c) in a.sc_at(i, l) {
                            if kk as usize == k {
                                let idx = l * n + j;
                                row[idx] = field.sub(row[idx], c);
                            }
                        }
                    }
                    ech.insert(row);
                }
            }
        }
        n * n - ech.rank()
    }

    #[test]
    fn trivial_group_algebra() {
        let a = group_algebra(&crate::group::Group::trivial(), f(3, 1));
        assert_eq!(a.dim, 1);
        assert_eq!(hh1_dim(&a), 0);
        assert_eq!(derivation_dim(&a), 0);
    }

    #[test]
    fn c2_group_algebra_over_f2() {
        let g = cyclic(2);
        let a = group_algebra(&g, f(2, 1));
        assert_eq!(a.dim, 2);
        assert_eq!(a.sc_at(1, 1), &[(0, FqElem::ONE)]);
        // brute-force oracle: enumerate all 2x2 matrices over F_2 and
        // count those satisfying Leibniz on all pairs
        let field = FqField::new(2, 1).unwrap();
        let mut count = 0;
        for bits in 0..16u32 {
            let d = |r: usize, c: usize| field.elem(((bits >> (2 * r + c)) & 1) as u64);
            let mut ok = true;
            for i in 0..2 {
                for j in 0..2 {
                    let prod = g.mul(i as u32, j as u32) as usize;
                    for k in 0..2 {
                        // D(e_i e_j)_k = (D(e_i) e_j)_k + (e_i D(e_j))_k
                        let lhs = d(k, prod);
                        let mut rhs = FqElem::ZERO;
                        for l in 0..2 {
                            if g.mul(l as u32, j as u32) as usize == k {
                                rhs = field.add(rhs, d(l, i));
                            }
                            if g.mul(i as u32, l as u32) as usize == k {
                                rhs = field.add(rhs, d(l, j));
                            }
                        }
                        if lhs != rhs {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
        // count = 2^dim over F_2
        assert_eq!(count, 4);
        assert_eq!(derivation_dim(&a), 2);
        assert_eq!(derivation_dim_all_pairs(&a), 2);
        assert_eq!(hh1_dim(&a), 2);
    }

    #[test]
    fn fp_cp_derivations() {
        for p in [2u64, 3] {
            let g = cyclic(p as usize);
            let a = group_algebra(&g, f(p, 1));
            assert_eq!(derivation_dim(&a), p as usize);
            assert_eq!(derivation_dim_all_pairs(&a), p as usize);
            assert_eq!(hh1_dim(&a), p as usize);
        }
    }

    #[test]
    fn semisimple_cases_vanish() {
        let a = group_algebra(&cyclic(2), f(3, 1));
        assert_eq!(hh1_dim(&a), 0);
        let a = group_algebra(&cyclic(3), f(2, 2));
        assert_eq!(hh1_dim(&a), 0);
        let a = group_algebra(&quaternion8(), f(3, 1));
        assert_eq!(hh1_dim(&a), 0);
    }

    #[test]
    fn center_dimension_is_class_count() {
        for (g, p, e) in [(sym3(), 3u64, 1u32), (sym3(), 2, 1), (quaternion8(), 2, 1)] {
            let a = group_algebra(&g, f(p, e));
            let z = algebra_center(&a);
            assert_eq!(z.len(), g.conjugacy_classes().classes.len());
            // the unit lies in the center's span
            let field = a.field.as_ref();
            let mut span = RowSpan::new(field, a.dim, z.len());
            for v in &z {
                span.insert(v);
            }
            assert!(span.express(&a.unit).is_some());
        }
    }

    #[test]
    fn inner_derivations_complement_center() {
        for (g, p) in [
            (sym3(), 3u64),
            (sym3(), 2),
            (quaternion8(), 2),
            (cyclic(6), 2),
        ] {
            let a = group_algebra(&g, f(p, 1));
            let (inner, basis) = inner_derivation_space(&a);
            assert_eq!(inner + algebra_center(&a).len(), a.dim);
            assert_eq!(inner, basis.len());
        }
        // commutative algebra: no inner derivations
        let a = group_algebra(&cyclic(4), f(2, 1));
        assert_eq!(inner_derivation_space(&a).0, 0);
    }

    #[test]
    fn f3_s3_dimensions() {
        let a = group_algebra(&sym3(), f(3, 1));
        assert_eq!(inner_derivation_space(&a).0, 3); // 6 - 3 classes
        assert_eq!(derivation_dim(&a), derivation_dim_all_pairs(&a));
        assert_eq!(hh1_dim(&a), 1);
    }

    #[test]
    fn derivations_vanish_on_unit() {
        for (g, p) in [(sym3(), 2u64), (cyclic(4), 2), (quaternion8(), 2)] {
            let a = group_algebra(&g, f(p, 1));
            let (dim, basis) = derivation_space(&a);
            assert_eq!(dim, basis.len());
            let field = a.field.as_ref();
            for d in &basis {
                let du = d.mul_vec(field, &a.unit);
                assert!(du.iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn derivation_basis_satisfies_leibniz() {
        let a = group_algebra(&sym3(), f(3, 1));
        let field = a.field.as_ref();
        let (_, basis) = derivation_space(&a);
        for d in &basis {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    let ei = a.basis_vec(i);
                    let ej = a.basis_vec(j);
                    let lhs = d.mul_vec(field, &a.mul_vec(&ei, &ej));
                    let r1 = a.mul_vec(&d.mul_vec(field, &ei), &ej);
                    let r2 = a.mul_vec(&ei, &d.mul_vec(field, &ej));
                    let rhs: Vec<FqElem> =
                        r1.iter().zip(&r2).map(|(&x, &y)| field.add(x, y)).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn twisted_with_trivial_cocycle_is_group_algebra() {
        let g = sym3();
        let c = Cocycle2::trivial(&g, 2);
        let field = f(3, 1);
        let a = twisted_group_algebra(&g, &c, field.clone()).unwrap();
        let b = group_algebra(&g, field);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a.sc_at(i, j), b.sc_at(i, j));
            }
        }
    }

    #[test]
    fn corrupted_cocycle_table_fails_associativity() {
        let g = sym3();
        let mut table = vec![0u64; 36];
        table[8] = 1; // not a cocycle
        let c = Cocycle2::new_unchecked(&g, 2, table).unwrap();
        let err = twisted_group_algebra(&g, &c, f(3, 1)).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAssociative { .. } | Error::UnitNotIdentity(_)
        ));
    }

    #[test]
    fn twisted_algebra_hh1_invariant_under_shift() {
        // A4 at p = 3 carries a genuinely nontrivial class
        let g = crate::group::Group::from_permutations(
            4,
            &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let h2 = h2_classes(&g, 4, 3, None).unwrap();
        assert_eq!(h2.representatives.len(), 2);
        let field = f(3, 2); // F_9 contains mu_4
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for rep in &h2.representatives {
            let a = twisted_group_algebra(&g, rep, field.clone()).unwrap();
            let d0 = hh1_dim(&a);
            for _ in 0..2 {
                let lambda: Vec<u64> = (0..12).map(|_| rng.gen_range(0..4)).collect();
                let shifted = rep.shifted(&g, &lambda).normalize();
                let b = twisted_group_algebra(&g, &shifted, field.clone()).unwrap();
                assert_eq!(hh1_dim(&b), d0);
            }
            assert_eq!(derivation_dim(&a), derivation_dim_all_pairs(&a));
        }
    }

    #[test]
    fn ideal_algebra_edges() {
        let g = cyclic(2);
        let field = f(3, 1);
        let a = group_algebra(&g, field.clone());
        // e = 1: same algebra
        let whole = ideal_algebra_on_idempotent(&a, &a.unit).unwrap();
        assert_eq!(whole.algebra.dim, 2);
        // e = 0: zero algebra
        let zero = ideal_algebra_on_idempotent(&a, &vec![FqElem::ZERO; 2]).unwrap();
        assert_eq!(zero.algebra.dim, 0);
        // e = (1 + x)/2 * ... the idempotent (2 + 2x) over F_3: check
        // e^2 = e first: e = 2 + 2x -> e^2 = 4 + 8x + 4x^2 = 4+4 + 8x = 8 + 8x = 2+2x mod 3
        let e = vec![field.elem(2), field.elem(2)];
        assert_eq!(a.mul_vec(&e, &e), e);
        let half = ideal_algebra_on_idempotent(&a, &e).unwrap();
        assert_eq!(half.algebra.dim, 1);
        // non-idempotent rejected
        let x = vec![FqElem::ZERO, FqElem::ONE];
        assert!(matches!(
            ideal_algebra_on_idempotent(&a, &x),
            Err(Error::NotIdempotent)
        ));
    }

    #[test]
    fn conjugation_module_basics() {
        let field = f(2, 1);
        // abelian group: conjugation is trivial
        let g = cyclic(4);
        let a = group_algebra(&g, field.clone());
        let basis: Vec<Vec<FqElem>> = (0..4).map(|i| a.basis_vec(i)).collect();
        let m = conjugation_module(&g, &a, &basis).unwrap();
        for mat in &m.action {
            assert!(mat.is_identity());
        }
        // fixed points of conjugation on kG have dimension = class count
        let g = sym3();
        let field = f(3, 1);
        let a = group_algebra(&g, field.clone());
        let basis: Vec<Vec<FqElem>> = (0..6).map(|i| a.basis_vec(i)).collect();
        let m = conjugation_module(&g, &a, &basis).unwrap();
        let ff = field.as_ref();
        let mut ech = Echelon::new(ff, 6);
        for mat in &m.action {
            for r in 0..6 {
                let mut row = vec![FqElem::ZERO; 6];
                for c in 0..6 {
                    row[c] = mat.get(r, c);
                }
                row[r] = ff.sub(row[r], FqElem::ONE);
                ech.insert(row);
            }
        }
        let fixed = ech.kernel_basis();
        assert_eq!(fixed.len(), 3);
        // a non-stable subspace errors
        let bad = vec![a.basis_vec(1)];
        assert!(matches!(
            conjugation_module(&g, &a, &bad),
            Err(Error::NotStable)
        ));
    }

    #[test]
    fn permutation_module_shape() {
        let g = sym3();
        let h = g.sylow_subgroup(3);
        let m = permutation_module(&g, f(3, 1), &h);
        assert_eq!(m.dim, 2);
        let h = Subgroup::trivial();
        let m = permutation_module(&g, f(3, 1), &h);
        assert_eq!(m.dim, 6);
    }

    #[test]
    fn json_export_shape() {
        let a = group_algebra(&sym3(), f(3, 1));
        let doc = algebra_to_json(&a);
        assert_eq!(doc["dim"], 6);
        assert_eq!(doc["field"]["p"], 3);
        assert_eq!(doc["sc"].as_array().unwrap().len(), 36);
        assert_eq!(doc["validation_seed"], serde_json::Value::Null);
    }

    #[test]
    fn block_hh1_additivity_smoke() {
        // kC6 over F_2 decomposes; check hh1 adds up using a handmade
        // idempotent pair: e = x^2 + x^4 (the sum over the C3 part minus
        // identity component) -- easier: use the center split of kC6 =
        // kC2 (x) kC3 and verify additivity on the two factor ideals
        let g = cyclic(6);
        let field = f(2, 1);
        let a = group_algebra(&g, field.clone());
        // idempotent: sum over the order-3 subgroup <g^2>: e = 1 + g^2 + g^4 over F_2
        let two = g.pow(1, 2);
        let four = g.pow(1, 4);
        let mut e = vec![FqElem::ZERO; 6];
        e[0] = FqElem::ONE;
        e[two as usize] = FqElem::ONE;
        e[four as usize] = FqElem::ONE;
        assert_eq!(a.mul_vec(&e, &e), e);
        let mut comp = vec![FqElem::ZERO; 6];
        for i in 0..6 {
            comp[i] = field.sub(if i == 0 { FqElem::ONE } else { FqElem::ZERO }, e[i]);
        }
        let i1 = ideal_algebra_on_idempotent(&a, &e).unwrap();
        let i2 = ideal_algebra_on_idempotent(&a, &comp).unwrap();
        assert_eq!(i1.algebra.dim + i2.algebra.dim, 6);
        assert_eq!(hh1_dim(&a), hh1_dim(&i1.algebra) + hh1_dim(&i2.algebra));
    }
}
