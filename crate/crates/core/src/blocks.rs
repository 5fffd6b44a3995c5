//! Block decomposition of group algebras over F_q: primitive central
//! idempotents, the principal block, the Brauer homomorphism, defect
//! groups, maximal Brauer pairs, inertial quotients, the trivial-summand
//! test on modules, and the principal-block nonvanishing pipeline.
//!
//! Idempotents are split by factoring minimal polynomials of central
//! elements (class sums first, then seeded random center elements); a
//! final exact primitivity certificate — radical by the additive p-power
//! map, then counting Frobenius-fixed points of the semisimple quotient —
//! guarantees the result does not depend on the seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    conjugation_module, group_algebra, hh1_dim, ideal_algebra_on_idempotent, permutation_module,
    GModule, StructAlgebra,
};
use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::gcoh;
use crate::group::{Group, Subgroup};
use crate::linalg::{Echelon, RowSpan};
use crate::numutil;
use crate::poly::{self, Poly};

/// A block of kG: primitive central idempotent, its ideal algebra with
/// the idempotent as unit, and the chosen basis in kG coordinates.
pub struct Block {
    pub idempotent: Vec<FqElem>,
    pub augmentation: FqElem,
    pub is_principal: bool,
    pub algebra: StructAlgebra,
    pub basis: Vec<Vec<FqElem>>,
}

impl std::fmt::Debug for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Block(dim={}, principal={})",
            self.algebra.dim, self.is_principal
        )
    }
}

/// Splitting field for G in characteristic p: F_{p^e} with e the order of
/// p modulo the p'-part of the exponent of G.
pub fn splitting_field(g: &Group, p: u64) -> Result<FqField> {
    let m0 = numutil::p_prime_part(g.exponent(), p);
    let e = if m0 == 1 {
        1
    } else {
        numutil::multiplicative_order(p, m0) as u32
    };
    FqField::new(p, e)
}

fn class_sums(g: &Group, a: &StructAlgebra) -> Vec<Vec<FqElem>> {
    g.conjugacy_classes()
        .classes
        .iter()
        .map(|class| {
            let mut v = vec![FqElem::ZERO; a.dim];
            for &x in class {
                v[x as usize] = FqElem::ONE;
            }
            v
        })
        .collect()
}

/// Minimal polynomial of `a` in the commutative unital algebra with unit
/// `e` (powers computed in the ambient algebra).
fn minimal_polynomial(alg: &StructAlgebra, e: &[FqElem], a: &[FqElem]) -> Poly {
    let f = alg.field.as_ref();
    let n = alg.dim;
    let mut span = RowSpan::new(f, n, n + 1);
    let mut powers: Vec<Vec<FqElem>> = vec![e.to_vec()];
    span.insert(e);
    loop {
        let last = powers.last().unwrap();
        let next = alg.mul_vec(last, a);
        if let Some(coeffs) = span.express(&next) {
            // monic: T^k - sum c_i T^i
            let mut c: Vec<FqElem> = coeffs.iter().map(|&x| f.neg(x)).collect();
            c.push(FqElem::ONE);
            return Poly::from_coeffs(c);
        }
        span.insert(&next);
        powers.push(next);
    }
}

/// Evaluate a polynomial at `a`, the constant term acting on the local
/// unit `e`.
fn eval_poly_at(alg: &StructAlgebra, e: &[FqElem], a: &[FqElem], p: &Poly) -> Vec<FqElem> {
    let f = alg.field.as_ref();
    let n = alg.dim;
    let mut acc = vec![FqElem::ZERO; n];
    for &c in p.coeffs.iter().rev() {
        acc = alg.mul_vec(&acc, a);
        if !c.is_zero() {
            for (slot, &ei) in acc.iter_mut().zip(e) {
                *slot = f.add(*slot, f.mul(c, ei));
            }
        }
    }
    acc
}

/// Split e along the pairwise-coprime prime-power factors of the minimal
/// polynomial of a = z*e; None when the minimal polynomial is primary.
fn try_split(
    alg: &StructAlgebra,
    e: &[FqElem],
    z: &[FqElem],
    seed: u64,
) -> Result<Option<Vec<Vec<FqElem>>>> {
    let f = alg.field.as_ref();
    let a = alg.mul_vec(z, e);
    let minpoly = minimal_polynomial(alg, e, &a);
    let factors = poly::factor(f, &minpoly, seed)?;
    if factors.len() < 2 {
        return Ok(None);
    }
    let parts: Vec<Poly> = factors
        .iter()
        .map(|(g, m)| {
            let mut acc = Poly::one();
            for _ in 0..*m {
                acc = poly::mul(f, &acc, g);
            }
            acc
        })
        .collect();
    let mut out = Vec::with_capacity(parts.len());
    for part in &parts {
        let cofactor = poly::div_rem(f, &minpoly, part).0;
        let (gcd, _, t) = poly::ext_gcd(f, part, &cofactor);
        assert_eq!(gcd.degree(), Some(0), "prime-power parts are coprime");
        // idempotent component: (t * cofactor)(a), scaled by gcd^{-1}
        let scale = f.inv(gcd.coeffs[0]);
        let uh = poly::scale(f, &poly::mul(f, &t, &cofactor), scale);
        let ei = eval_poly_at(alg, e, &a, &uh);
        out.push(ei);
    }
    // exactness checks: orthogonal idempotents summing to e
    let mut sum = vec![FqElem::ZERO; alg.dim];
    for ei in &out {
        for (s, &x) in sum.iter_mut().zip(ei) {
            *s = f.add(*s, x);
        }
    }
    if sum != e {
        return Err(Error::Invariant(
            "idempotent components do not sum back".into(),
        ));
    }
    for (i, ei) in out.iter().enumerate() {
        if alg.mul_vec(ei, ei) != *ei {
            return Err(Error::Invariant("component is not idempotent".into()));
        }
        for ej in out.iter().skip(i + 1) {
            if alg.mul_vec(ei, ej).iter().any(|x| !x.is_zero()) {
                return Err(Error::Invariant("components are not orthogonal".into()));
            }
        }
    }
    Ok(Some(out))
}

/// Exact primitivity certificate for a central idempotent e: the number
/// of block idempotents below e equals the F_q-dimension of the
/// Frobenius-fixed points of (Ze)/rad, computed with F_p-linear algebra.
fn is_primitive_central(alg: &StructAlgebra, centre: &[Vec<FqElem>], e: &[FqElem]) -> bool {
    let f = alg.field.as_ref();
    let n = alg.dim;
    // basis of Ze
    let mut span = RowSpan::new(f, n, centre.len());
    let mut basis: Vec<Vec<FqElem>> = Vec::new();
    for z in centre {
        let v = alg.mul_vec(z, e);
        if span.insert(&v) {
            basis.push(v);
        }
    }
    let d = basis.len();
    if d == 1 {
        return true;
    }
    let express = |v: &[FqElem]| span.express(v).expect("Ze is closed");
    // F_p coordinates: element = sum over (basis index, field power a^j)
    let ep = f.e() as usize;
    let fp = FqField::new(f.p(), 1).expect("prime field");
    let dim_p = d * ep;
    let to_fp = |coords: &[FqElem]| -> Vec<FqElem> {
        let mut out = Vec::with_capacity(dim_p);
        for &c in coords.iter().take(d) {
            for digit in f.coeffs(c) {
                out.push(fp.elem(digit));
            }
        }
        out
    };
    // additive p-power map x -> x^{p^t} with p^t >= d kills exactly rad
    let mut pt = 1u64;
    while (pt as usize) < d {
        pt *= f.p();
    }
    let pow_in = |v: &[FqElem], k: u64| -> Vec<FqElem> {
        let mut acc = e.to_vec();
        let mut base = v.to_vec();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = alg.mul_vec(&acc, &base);
            }
            base = alg.mul_vec(&base, &base);
            k >>= 1;
        }
        acc
    };
    // matrix of x -> x^{p^t} on the F_p-basis {a^j * b_i}
    let fq_basis_scalar = |j: usize| -> FqElem {
        let mut coeffs = vec![0u64; ep];
        coeffs[j] = 1;
        f.from_coeffs(&coeffs).unwrap()
    };
    let mut rad_ech = Echelon::new(&fp, dim_p);
    let mut rad_rows: Vec<Vec<FqElem>> = Vec::new();
    let mut pow_rows: Vec<Vec<FqElem>> = Vec::new();
    for i in 0..d {
        for j in 0..ep {
            let scaled: Vec<FqElem> = basis[i]
                .iter()
                .map(|&c| f.mul(c, fq_basis_scalar(j)))
                .collect();
            let img = pow_in(&scaled, pt);
            pow_rows.push(to_fp(&express(&img)));
        }
    }
    // rad = kernel of the map; compute via kernel of the transpose-style
    // system: unknowns x (dim_p), rows = coordinates of image
    let mut sys = Echelon::new(&fp, dim_p);
    for coord in 0..dim_p {
        let mut row = vec![FqElem::ZERO; dim_p];
        for (col, pr) in pow_rows.iter().enumerate() {
            row[col] = pr[coord];
        }
        sys.insert(row);
    }
    let rad_basis = sys.kernel_basis();
    for v in &rad_basis {
        if rad_ech.insert(v.clone()) {
            rad_rows.push(v.clone());
        }
    }
    let rad_dim = rad_rows.len();
    // Frobenius-fixed points mod rad: solve (x^q - x) in rad
    let mut frob_rows: Vec<Vec<FqElem>> = Vec::new();
    for i in 0..d {
        for j in 0..ep {
            let scaled: Vec<FqElem> = basis[i]
                .iter()
                .map(|&c| f.mul(c, fq_basis_scalar(j)))
                .collect();
            let img = pow_in(&scaled, f.q());
            let mut coords = to_fp(&express(&img));
            let base = to_fp(&express(&scaled));
            for (a, b) in coords.iter_mut().zip(base) {
                *a = fp.sub(*a, b);
            }
            frob_rows.push(coords);
        }
    }
    // kernel of x -> (frob(x) mod rad): stack [phi | -rad_basis] and count
    // kernel vectors; the rad part is uniquely determined, so the kernel
    // dimension equals dim U with U = phi^{-1}(rad)
    let cols = dim_p + rad_dim;
    let mut sys = Echelon::new(&fp, cols);
    for coord in 0..dim_p {
        let mut row = vec![FqElem::ZERO; cols];
        for (col, fr) in frob_rows.iter().enumerate() {
            row[col] = fr[coord];
        }
        for (k, rv) in rad_rows.iter().enumerate() {
            row[dim_p + k] = fp.neg(rv[coord]);
        }
        sys.insert(row);
    }
    let ker = cols - sys.rank();
    let fixed_mod_rad = ker - rad_dim; // dim U - dim rad, as F_p-dimension
    debug_assert_eq!(fixed_mod_rad % ep, 0);
    fixed_mod_rad / ep == 1
}

/// Complete list of blocks, sorted by least supported group-element
/// index. The decomposition is found by iterated CRT splitting of minimal
/// polynomials of central elements; the seed only steers the search path,
/// never the result.
pub fn block_decomposition(g: &Group, field: Arc<FqField>, seed: u64) -> Result<Vec<Block>> {
    let alg = group_algebra(g, field.clone());
    let f = field.as_ref();
    let centre = class_sums(g, &alg);
    let mut done: Vec<Vec<FqElem>> = Vec::new();
    let mut work: Vec<Vec<FqElem>> = vec![alg.unit.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factor_seed = seed;
    while let Some(e) = work.pop() {
        if is_primitive_central(&alg, &centre, &e) {
            done.push(e);
            continue;
        }
        let mut split = None;
        for z in &centre {
            factor_seed = factor_seed.wrapping_add(1);
            if let Some(parts) = try_split(&alg, &e, z, factor_seed)? {
                split = Some(parts);
                break;
            }
        }
        let mut guard = 0;
        while split.is_none() {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::Invariant(
                    "central splitting did not terminate".into(),
                ));
            }
            // random center element
            let mut z = vec![FqElem::ZERO; alg.dim];
            for cs in &centre {
                let c = f.elem(rng.gen_range(0..f.q()));
                if c.is_zero() {
                    continue;
                }
                for (slot, &v) in z.iter_mut().zip(cs) {
                    if !v.is_zero() {
                        *slot = f.add(*slot, f.mul(c, v));
                    }
                }
            }
            factor_seed = factor_seed.wrapping_add(1);
            if let Some(parts) = try_split(&alg, &e, &z, factor_seed)? {
                split = Some(parts);
            }
        }
        work.extend(split.unwrap());
    }
    // global invariants
    let mut sum = vec![FqElem::ZERO; alg.dim];
    for e in &done {
        for (s, &x) in sum.iter_mut().zip(e) {
            *s = f.add(*s, x);
        }
    }
    if sum != alg.unit {
        return Err(Error::Invariant("block idempotents do not sum to 1".into()));
    }
    for (i, a) in done.iter().enumerate() {
        for b in done.iter().skip(i + 1) {
            if alg.mul_vec(a, b).iter().any(|x| !x.is_zero()) {
                return Err(Error::Invariant(
                    "block idempotents are not orthogonal".into(),
                ));
            }
        }
    }
    done.sort_by_key(|e| e.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX));
    let mut blocks = Vec::with_capacity(done.len());
    let mut principal_count = 0;
    for e in done {
        let augmentation = e.iter().fold(FqElem::ZERO, |acc, &c| f.add(acc, c));
        let is_principal = augmentation == FqElem::ONE;
        if is_principal {
            principal_count += 1;
        } else if !augmentation.is_zero() {
            return Err(Error::Invariant(
                "block idempotent with augmentation other than 0 or 1".into(),
            ));
        }
        let ideal = ideal_algebra_on_idempotent(&alg, &e)?;
        blocks.push(Block {
            idempotent: e,
            augmentation,
            is_principal,
            algebra: ideal.algebra,
            basis: ideal.basis,
        });
    }
    if principal_count != 1 {
        return Err(Error::Invariant(format!(
            "expected exactly one principal block, found {principal_count}"
        )));
    }
    Ok(blocks)
}

/// Index of the unique block with augmentation 1.
pub fn principal_block_index(blocks: &[Block]) -> Result<usize> {
    let hits: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_principal)
        .map(|(i, _)| i)
        .collect();
    if hits.len() != 1 {
        return Err(Error::Invariant("augmentation pattern violated".into()));
    }
    Ok(hits[0])
}

/// Brauer homomorphism: truncate a D-fixed element of kG to the
/// coefficients supported on C_G(D).
pub fn brauer_map(g: &Group, d: &Subgroup, a: &[FqElem]) -> Result<Vec<FqElem>> {
    let n = g.order();
    assert_eq!(a.len(), n);
    for &t in d.members() {
        for y in 0..n as u32 {
            if a[y as usize] != a[g.conjugate(t, y) as usize] {
                return Err(Error::NotFixed);
            }
        }
    }
    let cent = g.centralizer_of_set(d.members());
    let mut out = vec![FqElem::ZERO; n];
    for &y in cent.members() {
        out[y as usize] = a[y as usize];
    }
    Ok(out)
}

/// The conjugacy class of defect groups of a block: maximal p-subgroups
/// (up to conjugacy) with nonzero Brauer image of the block idempotent.
#[derive(Clone, Debug)]
pub struct DefectClass {
    pub rep: Subgroup,
}

impl DefectClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }
}

pub fn defect_groups(g: &Group, block: &Block, p: u64) -> Result<DefectClass> {
    let reps = g.p_subgroups_up_to_conjugacy(p);
    let mut nonzero: Vec<Subgroup> = Vec::new();
    for d in &reps {
        let img = brauer_map(g, d, &block.idempotent)?;
        if img.iter().any(|x| !x.is_zero()) {
            nonzero.push(d.clone());
        }
    }
    // maximal under inclusion up to conjugacy
    let leq = |small: &Subgroup, big: &Subgroup| -> bool {
        small.order() <= big.order()
            && (0..g.order() as u32).any(|x| {
                let conj = small.conjugated(g, x);
                conj.members().iter().all(|&m| big.contains(m))
            })
    };
    let mut maximal: Vec<Subgroup> = Vec::new();
    for d in &nonzero {
        if nonzero
            .iter()
            .any(|other| other.order() > d.order() && leq(d, other))
        {
            continue;
        }
        maximal.push(d.clone());
    }
    if maximal.is_empty() {
        return Err(Error::Invariant("no defect group found".into()));
    }
    for pair in maximal.windows(2) {
        if !g.are_conjugate_subgroups(&pair[0], &pair[1]) {
            return Err(Error::Invariant(
                "maximal Brauer-nonzero subgroups not conjugate".into(),
            ));
        }
    }
    maximal.sort_by_key(|s| s.members().to_vec());
    Ok(DefectClass {
        rep: maximal.remove(0),
    })
}

/// A maximal pair: the defect group together with the distinguished block
/// of the centralizer algebra hit by the Brauer map.
pub struct BrauerPair {
    pub subgroup: Subgroup,
    pub cent_group: Group,
    pub cent_embed: Vec<u32>,
    pub cent_block: Vec<FqElem>,
    pub cent_block_index: usize,
}

pub fn max_brauer_pair(
    g: &Group,
    field: Arc<FqField>,
    block: &Block,
    defect: &Subgroup,
    seed: u64,
) -> Result<BrauerPair> {
    let br = brauer_map(g, defect, &block.idempotent)?;
    let cent = g.centralizer_of_set(defect.members());
    let (cg, embed) = g.subgroup_as_group(&cent);
    let br_c: Vec<FqElem> = embed.iter().map(|&x| br[x as usize]).collect();
    let calg = group_algebra(&cg, field.clone());
    let cblocks = block_decomposition(&cg, field, seed)?;
    for (i, cb) in cblocks.iter().enumerate() {
        let prod = calg.mul_vec(&cb.idempotent, &br_c);
        if prod.iter().any(|x| !x.is_zero()) {
            return Ok(BrauerPair {
                subgroup: defect.clone(),
                cent_group: cg,
                cent_embed: embed,
                cent_block: cblocks[i].idempotent.clone(),
                cent_block_index: i,
            });
        }
    }
    Err(Error::Invariant(
        "no centralizer block survives the Brauer image".into(),
    ))
}

/// Inertial quotient N_G(P, e) / (P C_G(P)); its order is prime to p,
/// which is asserted.
pub fn inertial_quotient(g: &Group, pair: &BrauerPair, p: u64) -> Result<Group> {
    let psub = &pair.subgroup;
    let np = g.normalizer(psub);
    // map group indices to centralizer-group indices
    let mut to_cent = vec![u32::MAX; g.order()];
    for (i, &x) in pair.cent_embed.iter().enumerate() {
        to_cent[x as usize] = i as u32;
    }
    let fixes_e = |x: u32| -> bool {
        // e^x = e read in centralizer coordinates
        for (i, &c) in pair.cent_embed.iter().enumerate() {
            let img = g.conjugate(x, c);
            let j = to_cent[img as usize];
            debug_assert_ne!(j, u32::MAX, "normalizer permutes the centralizer");
            if pair.cent_block[j as usize] != pair.cent_block[i] {
                return false;
            }
        }
        true
    };
    let stab: Vec<u32> = np
        .members()
        .iter()
        .copied()
        .filter(|&x| fixes_e(x))
        .collect();
    let nsub = Subgroup::from_members(g, stab)
        .map_err(|_| Error::Invariant("block stabilizer is not a subgroup".into()))?;
    let cent = g.centralizer_of_set(psub.members());
    let mut pc_gens: Vec<u32> = psub.members().to_vec();
    pc_gens.extend_from_slice(cent.members());
    let pc = Subgroup::generated(g, &pc_gens);
    let (ng, nembed) = g.subgroup_as_group(&nsub);
    let mut to_n = vec![u32::MAX; g.order()];
    for (i, &x) in nembed.iter().enumerate() {
        to_n[x as usize] = i as u32;
    }
    let pc_in_n: Vec<u32> = pc.members().iter().map(|&x| to_n[x as usize]).collect();
    if pc_in_n.iter().any(|&x| x == u32::MAX) {
        return Err(Error::Invariant(
            "P C_G(P) must lie in the pair stabilizer".into(),
        ));
    }
    let pc_sub = Subgroup::from_members(&ng, pc_in_n)?;
    let (quot, _) = ng.quotient(&pc_sub)?;
    if quot.order() as u64 % p == 0 {
        return Err(Error::Invariant(
            "inertial quotient order divisible by p".into(),
        ));
    }
    Ok(quot)
}

/// Whether the trivial module is a direct summand of M: some G-fixed
/// vector pairs nontrivially with some G-invariant functional.
pub fn trivial_summand_test(m: &GModule) -> bool {
    let f = m.field.as_ref();
    let d = m.dim;
    if d == 0 {
        return false;
    }
    let mut fixed = Echelon::new(f, d);
    let mut cofixed = Echelon::new(f, d);
    for mat in &m.action {
        for r in 0..d {
            let mut row = vec![FqElem::ZERO; d];
            let mut rowt = vec![FqElem::ZERO; d];
            for c in 0..d {
                row[c] = mat.get(r, c);
                rowt[c] = mat.get(c, r);
            }
            row[r] = f.sub(row[r], FqElem::ONE);
            rowt[r] = f.sub(rowt[r], FqElem::ONE);
            fixed.insert(row);
            cofixed.insert(rowt);
        }
    }
    let fixed_basis = fixed.kernel_basis();
    let cofixed_basis = cofixed.kernel_basis();
    for v in &fixed_basis {
        for phi in &cofixed_basis {
            let pairing = v
                .iter()
                .zip(phi)
                .fold(FqElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            if !pairing.is_zero() {
                return true;
            }
        }
    }
    false
}

/// Whether the permutation module on G/P contains the trivial module as a
/// direct summand; agreement with the index criterion p not dividing
/// [G : P] is asserted.
pub fn scott_trivial_check(g: &Group, field: Arc<FqField>, psub: &Subgroup) -> bool {
    let m = permutation_module(g, field.clone(), psub);
    let result = trivial_summand_test(&m);
    let index = (g.order() / psub.order()) as u64;
    assert_eq!(
        result,
        index % field.p() != 0,
        "pairing test must agree with the index criterion"
    );
    result
}

/// Outcome of the principal-criterion pipeline on one block.
#[derive(Clone, Debug)]
pub struct BlockPipelineReport {
    pub non_p_perfect: bool,
    pub defect_order: usize,
    pub scott_trivial: bool,
    pub hypotheses_met: bool,
    pub conj_trivial_summand: Option<bool>,
    pub hh1_dim: Option<usize>,
    pub h1_conjugation_dim: Option<usize>,
    pub confirmed: Option<bool>,
}

/// Checks the hypotheses (G not p-perfect; Scott module of the defect
/// group trivial) and, when they hold, certifies nonvanishing: the
/// conjugation module of B contains the trivial summand, and dim HH^1(B)
/// (by derivations) equals dim H^1(G, B) (by crossed homomorphisms).
pub fn block_nonvanishing_pipeline(
    g: &Group,
    field: Arc<FqField>,
    block: &Block,
    defect: &DefectClass,
    p: u64,
) -> Result<BlockPipelineReport> {
    let non_p_perfect = !g.is_p_perfect(p);
    let scott_trivial = scott_trivial_check(g, field.clone(), &defect.rep);
    let hypotheses_met = non_p_perfect && scott_trivial;
    if !hypotheses_met {
        return Ok(BlockPipelineReport {
            non_p_perfect,
            defect_order: defect.rep.order(),
            scott_trivial,
            hypotheses_met,
            conj_trivial_summand: None,
            hh1_dim: None,
            h1_conjugation_dim: None,
            confirmed: None,
        });
    }
    let alg = group_algebra(g, field.clone());
    let conj = conjugation_module(g, &alg, &block.basis)?;
    let summand = trivial_summand_test(&conj);
    let hh1 = hh1_dim(&block.algebra);
    let h1c = gcoh::h1(&conj).h1_dim;
    Ok(BlockPipelineReport {
        non_p_perfect,
        defect_order: defect.rep.order(),
        scott_trivial,
        hypotheses_met,
        conj_trivial_summand: Some(summand),
        hh1_dim: Some(hh1),
        h1_conjugation_dim: Some(h1c),
        confirmed: Some(hh1 >= 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cyclic, quaternion8, sl23, sym3, sym4};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64, e: u32) -> Arc<FqField> {
        Arc::new(FqField::new(p, e).unwrap())
    }

    #[test]
    fn p_group_single_block() {
        let g = quaternion8();
        let blocks = block_decomposition(&g, f(2, 1), 0).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].is_principal);
        assert_eq!(blocks[0].algebra.dim, 8);
        assert_eq!(blocks[0].idempotent, group_algebra(&g, f(2, 1)).unit);
    }

    #[test]
    fn c2_over_f3_two_blocks() {
        let g = cyclic(2);
        let blocks = block_decomposition(&g, f(3, 1), 0).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.algebra.dim == 1));
        let ds: Vec<FqElem> = blocks.iter().map(|b| b.augmentation).collect();
        assert!(ds.contains(&FqElem::ONE));
    }

    #[test]
    fn block_dims_sum_to_group_order() {
        for (g, p, e) in [
            (cyclic(2), 3u64, 1u32),
            (sym3(), 3, 1),
            (sym3(), 2, 2),
            (sl23(), 3, 2),
            (sym4(), 2, 2),
            (sl23(), 2, 2),
            (cyclic(10), 5, 1),
            (quaternion8(), 3, 2),
        ] {
            let blocks = block_decomposition(&g, f(p, e), 7).unwrap();
            let total: usize = blocks.iter().map(|b| b.algebra.dim).sum();
            assert_eq!(total, g.order());
            assert_eq!(principal_block_index(&blocks).is_ok(), true);
        }
    }

    #[test]
    fn non_split_field_decompositions() {
        // over F_2 the polynomial x^5 - 1 splits as (x-1) times an
        // irreducible quartic, so F_2[C5] has exactly two blocks
        let g = cyclic(5);
        let blocks = block_decomposition(&g, f(2, 1), 0).unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.algebra.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
        // x^7 - 1 = (x-1) * cubic * cubic over F_2: three blocks
        let g = cyclic(7);
        let blocks = block_decomposition(&g, f(2, 1), 0).unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.algebra.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 3, 3]);
        // HH^1 still adds over the non-split decomposition (semisimple: 0)
        let a = group_algebra(&g, f(2, 1));
        let total: usize = blocks.iter().map(|b| hh1_dim(&b.algebra)).sum();
        assert_eq!(total, hh1_dim(&a));
        // a non-split non-semisimple case: F_3[S4] (splitting needs F_9)
        let g = sym4();
        let blocks = block_decomposition(&g, f(3, 1), 0).unwrap();
        let total: usize = blocks.iter().map(|b| b.algebra.dim).sum();
        assert_eq!(total, 24);
        let split_blocks = block_decomposition(&g, f(3, 2), 0).unwrap();
        assert!(blocks.len() <= split_blocks.len());
    }

    #[test]
    fn decomposition_seed_independent() {
        let g = sl23();
        let field = f(3, 2);
        let a = block_decomposition(&g, field.clone(), 1).unwrap();
        let b = block_decomposition(&g, field.clone(), 999).unwrap();
        let c = block_decomposition(&g, field, 424242).unwrap();
        let idems = |bs: &[Block]| -> Vec<Vec<FqElem>> {
            bs.iter().map(|b| b.idempotent.clone()).collect()
        };
        assert_eq!(idems(&a), idems(&b));
        assert_eq!(idems(&a), idems(&c));
    }

    #[test]
    fn sl23_decomposition_at_3() {
        let g = sl23();
        let field = f(3, 2); // F_9
        let blocks = block_decomposition(&g, field.clone(), 0).unwrap();
        assert!(blocks.len() >= 2);
        let principal = principal_block_index(&blocks).unwrap();
        assert!(blocks[principal].is_principal);
        // center dimension = class count = 7 distributes over blocks
        let alg = group_algebra(&g, field);
        let z = crate::algebra::algebra_center(&alg);
        assert_eq!(z.len(), 7);
    }

    #[test]
    fn brauer_map_basics() {
        let g = sym3();
        let field = f(3, 1);
        let alg = group_algebra(&g, field.clone());
        // trivial D: identity map
        let d = Subgroup::trivial();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a: Vec<FqElem> = (0..6).map(|_| field.elem(rng.gen_range(0..3))).collect();
        assert_eq!(brauer_map(&g, &d, &a).unwrap(), a);
        // a = 1 maps to 1 for any D
        let syl = g.sylow_subgroup(3);
        assert_eq!(brauer_map(&g, &syl, &alg.unit).unwrap(), alg.unit);
        // non-fixed element rejected: a single transposition is moved by
        // conjugation with a 3-cycle
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let mut bad = vec![FqElem::ZERO; 6];
        bad[t as usize] = FqElem::ONE;
        assert!(matches!(brauer_map(&g, &syl, &bad), Err(Error::NotFixed)));
    }

    #[test]
    fn brauer_map_multiplicative_on_fixed_points() {
        let g = sym4();
        let field = f(2, 2);
        let alg = group_algebra(&g, field.clone());
        let syl = g.sylow_subgroup(2);
        let d2 = g.p_subgroups_up_to_conjugacy(2);
        let cs = class_sums(&g, &alg);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for d in [&d2[1], &syl] {
            let cent = g.centralizer_of_set(d.members());
            let (cg, embed) = g.subgroup_as_group(&cent);
            let calg = group_algebra(&cg, field.clone());
            for _ in 0..8 {
                let mut a = vec![FqElem::ZERO; 24];
                let mut b = vec![FqElem::ZERO; 24];
                for z in &cs {
                    let ca = field.elem(rng.gen_range(0..4));
                    let cb = field.elem(rng.gen_range(0..4));
                    for i in 0..24 {
                        if !z[i].is_zero() {
                            a[i] = field.add(a[i], ca);
                            b[i] = field.add(b[i], cb);
                        }
                    }
                }
                let ab = alg.mul_vec(&a, &b);
                let br = |v: &[FqElem]| -> Vec<FqElem> {
                    let t = brauer_map(&g, d, v).unwrap();
                    embed.iter().map(|&x| t[x as usize]).collect()
                };
                let lhs = br(&ab);
                let rhs = calg.mul_vec(&br(&a), &br(&b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn brauer_monotone_under_containment() {
        let g = sl23();
        let field = f(3, 2);
        let blocks = block_decomposition(&g, field, 0).unwrap();
        let reps = g.p_subgroups_up_to_conjugacy(3);
        for b in &blocks {
            for d in &reps {
                let img = brauer_map(&g, d, &b.idempotent).unwrap();
                if img.iter().all(|x| x.is_zero()) {
                    continue;
                }
                // every subgroup of d also has nonzero image
                for sub in &reps {
                    if sub.order() < d.order() && sub.members().iter().all(|&m| d.contains(m)) {
                        let sub_img = brauer_map(&g, sub, &b.idempotent).unwrap();
                        assert!(sub_img.iter().any(|x| !x.is_zero()));
                    }
                }
            }
        }
    }

    #[test]
    fn defect_groups_examples() {
        // principal blocks have Sylow defect groups
        for (g, p, e) in [(sym3(), 3u64, 1u32), (sym4(), 2, 2), (sl23(), 3, 2)] {
            let field = f(p, e);
            let blocks = block_decomposition(&g, field, 0).unwrap();
            let pi = principal_block_index(&blocks).unwrap();
            let d = defect_groups(&g, &blocks[pi], p).unwrap();
            assert_eq!(
                d.order() as u64,
                crate::numutil::p_part(g.order() as u64, p)
            );
        }
        // C2 over F_3: both blocks have trivial defect
        let g = cyclic(2);
        let blocks = block_decomposition(&g, f(3, 1), 0).unwrap();
        for b in &blocks {
            let d = defect_groups(&g, b, 3).unwrap();
            assert_eq!(d.order(), 1);
        }
    }

    #[test]
    fn sl23_nonprincipal_block_with_full_defect() {
        let g = sl23();
        let field = f(3, 2);
        let blocks = block_decomposition(&g, field, 0).unwrap();
        let mut found = false;
        for b in &blocks {
            if b.is_principal {
                continue;
            }
            let d = defect_groups(&g, b, 3).unwrap();
            if d.order() == 3 {
                found = true;
            }
        }
        assert!(
            found,
            "a non-principal block with defect group of order 3 must exist"
        );
    }

    #[test]
    fn max_brauer_pair_and_inertial_quotient() {
        // S3 at p = 3: E = N(P)/PC(P) = S3/C3 = C2 for the principal block
        let g = sym3();
        let field = f(3, 1);
        let blocks = block_decomposition(&g, field.clone(), 0).unwrap();
        let pi = principal_block_index(&blocks).unwrap();
        let d = defect_groups(&g, &blocks[pi], 3).unwrap();
        let pair = max_brauer_pair(&g, field.clone(), &blocks[pi], &d.rep, 0).unwrap();
        assert_eq!(pair.cent_group.order(), 3);
        let e = inertial_quotient(&g, &pair, 3).unwrap();
        assert_eq!(e.order(), 2);
        // p-group: trivial inertial quotient
        let q8 = quaternion8();
        let field = f(2, 1);
        let blocks = block_decomposition(&q8, field.clone(), 0).unwrap();
        let d = defect_groups(&q8, &blocks[0], 2).unwrap();
        let pair = max_brauer_pair(&q8, field, &blocks[0], &d.rep, 0).unwrap();
        let e = inertial_quotient(&q8, &pair, 2).unwrap();
        assert_eq!(e.order(), 1);
        // trivial defect group: the pair is the block itself
        let c2 = cyclic(2);
        let field = f(3, 1);
        let blocks = block_decomposition(&c2, field.clone(), 0).unwrap();
        let d = defect_groups(&c2, &blocks[0], 3).unwrap();
        assert_eq!(d.order(), 1);
        let pair = max_brauer_pair(&c2, field, &blocks[0], &d.rep, 0).unwrap();
        assert_eq!(pair.cent_group.order(), 2);
        assert_eq!(pair.cent_block, blocks[0].idempotent);
    }

    #[test]
    fn trivial_summand_examples() {
        let g = sym3();
        let field = f(3, 1);
        // trivial module itself
        let m = GModule::trivial(g.clone(), field.clone());
        assert!(trivial_summand_test(&m));
        // k[G/P] with p | [G:P]: P = C2, index 3, p = 3
        let c2sub = {
            let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
            Subgroup::generated(&g, &[t])
        };
        let m = permutation_module(&g, field.clone(), &c2sub);
        assert!(!trivial_summand_test(&m));
        // k[G/P] with p coprime to [G:P]: P = C3, index 2
        let c3sub = g.sylow_subgroup(3);
        let m = permutation_module(&g, field, &c3sub);
        assert!(trivial_summand_test(&m));
    }

    #[test]
    fn scott_check_examples() {
        let g = sym3();
        let field = f(3, 1);
        assert!(scott_trivial_check(&g, field.clone(), &g.sylow_subgroup(3)));
        assert!(!scott_trivial_check(
            &g,
            field.clone(),
            &Subgroup::trivial()
        ));
        let q8 = quaternion8();
        let field = f(2, 1);
        assert!(scott_trivial_check(&q8, field, &Subgroup::whole(&q8)));
    }

    #[test]
    fn pipeline_on_sl23_principal() {
        let g = sl23();
        let field = f(3, 2);
        let blocks = block_decomposition(&g, field.clone(), 0).unwrap();
        let pi = principal_block_index(&blocks).unwrap();
        let d = defect_groups(&g, &blocks[pi], 3).unwrap();
        let report = block_nonvanishing_pipeline(&g, field, &blocks[pi], &d, 3).unwrap();
        assert!(report.hypotheses_met);
        assert_eq!(report.conj_trivial_summand, Some(true));
        assert!(report.hh1_dim.unwrap() >= 1);
        assert_eq!(report.hh1_dim, report.h1_conjugation_dim);
        assert_eq!(report.confirmed, Some(true));
    }

    #[test]
    fn pipeline_reports_unmet_hypotheses() {
        // A5 is p-perfect for every p
        let g = crate::group::Group::from_permutations(
            5,
            &[vec![2, 3, 1, 4, 5], vec![2, 3, 4, 5, 1]],
            crate::group::DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let field = f(5, 1);
        let blocks = block_decomposition(&g, field.clone(), 0).unwrap();
        let pi = principal_block_index(&blocks).unwrap();
        let d = defect_groups(&g, &blocks[pi], 5).unwrap();
        let report = block_nonvanishing_pipeline(&g, field, &blocks[pi], &d, 5).unwrap();
        assert!(!report.hypotheses_met);
        assert!(report.hh1_dim.is_none());
    }

    #[test]
    fn splitting_field_choices() {
        let g = sl23();
        // exp(SL2(3)) = 12, 3'-part 4, ord of 3 mod 4 = 2
        assert_eq!(splitting_field(&g, 3).unwrap().q(), 9);
        // 2'-part of 12 is 3, ord of 2 mod 3 = 2
        assert_eq!(splitting_field(&g, 2).unwrap().q(), 4);
        let q8 = quaternion8();
        assert_eq!(splitting_field(&q8, 2).unwrap().q(), 2);
    }
}
