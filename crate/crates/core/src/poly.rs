//! Univariate polynomials over F_q and complete factorization.
//!
//! The factorization pipeline is squarefree decomposition, then
//! distinct-degree splitting, then seeded Cantor-Zassenhaus equal-degree
//! splitting; for q <= 16 the deterministic Berlekamp algorithm replaces
//! the last two stages. Output is canonically sorted, so results do not
//! depend on the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::numutil;

/// Coefficients little-endian, trailing zeros trimmed; zero = empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    pub coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![FqElem::ONE],
        }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![FqElem::ZERO, FqElem::ONE],
        }
    }

    pub fn constant(c: FqElem) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FqElem::ONE
    }
}

pub fn add(f: &FqField, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).copied().unwrap_or(FqElem::ZERO);
        let y = b.coeffs.get(i).copied().unwrap_or(FqElem::ZERO);
        out.push(f.add(x, y));
    }
    Poly::from_coeffs(out)
}

pub fn sub(f: &FqField, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).copied().unwrap_or(FqElem::ZERO);
        let y = b.coeffs.get(i).copied().unwrap_or(FqElem::ZERO);
        out.push(f.sub(x, y));
    }
    Poly::from_coeffs(out)
}

pub fn mul(f: &FqField, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![FqElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    Poly::from_coeffs(out)
}

pub fn scale(f: &FqField, a: &Poly, c: FqElem) -> Poly {
    Poly::from_coeffs(a.coeffs.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn div_rem(f: &FqField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let db = b.degree().unwrap();
    if a.degree().map_or(true, |da| da < db) {
        return (Poly::zero(), a.clone());
    }
    let da = a.degree().unwrap();
    let lead_inv = f.inv(b.lead());
    let mut rem = a.coeffs.clone();
    let mut quot = vec![FqElem::ZERO; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = f.mul(rem[k + db], lead_inv);
        quot[k] = c;
        if c.is_zero() {
            continue;
        }
        for (i, &bi) in b.coeffs.iter().enumerate() {
            rem[k + i] = f.sub(rem[k + i], f.mul(c, bi));
        }
    }
    rem.truncate(db);
    (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
}

pub fn rem(f: &FqField, a: &Poly, b: &Poly) -> Poly {
    div_rem(f, a, b).1
}

pub fn monic(f: &FqField, a: &Poly) -> Poly {
    if a.is_zero() || a.is_monic() {
        return a.clone();
    }
    scale(f, a, f.inv(a.lead()))
}

pub fn gcd(f: &FqField, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: returns (g, s, t) with g = s*a + t*b, g monic.
pub fn ext_gcd(f: &FqField, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = div_rem(f, &r0, &r1);
        let ns = sub(f, &s0, &mul(f, &q, &s1));
        let nt = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let li = f.inv(r0.lead());
    (scale(f, &r0, li), scale(f, &s0, li), scale(f, &t0, li))
}

pub fn pow_mod(f: &FqField, base: &Poly, mut exp: u64, m: &Poly) -> Poly {
    let mut acc = rem(f, &Poly::one(), m);
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        exp >>= 1;
    }
    acc
}

pub fn derivative(f: &FqField, a: &Poly) -> Poly {
    if a.coeffs.len() <= 1 {
        return Poly::zero();
    }
    let mut out = Vec::with_capacity(a.coeffs.len() - 1);
    for (i, &c) in a.coeffs.iter().enumerate().skip(1) {
        out.push(f.mul(c, f.from_int(i as u64)));
    }
    Poly::from_coeffs(out)
}

pub fn eval(f: &FqField, a: &Poly, x: FqElem) -> FqElem {
    let mut acc = FqElem::ZERO;
    for &c in a.coeffs.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// p-th root of a polynomial whose derivative vanishes (all exponents
/// divisible by p): over F_{p^e} the coefficient root is c^(p^(e-1)).
fn pth_root(f: &FqField, a: &Poly) -> Poly {
    let p = f.p() as usize;
    let mut out = Vec::new();
    let root_exp = f.p().pow(f.e() - 1);
    let mut i = 0;
    while i < a.coeffs.len() {
        out.push(f.pow(a.coeffs[i], root_exp));
        i += p;
    }
    Poly::from_coeffs(out)
}

/// Rabin test; base cases degree 0/1.
pub fn is_irreducible(f: &FqField, a: &Poly) -> bool {
    match a.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(d) => {
            let x = Poly::x();
            let mut h = x.clone();
            for _ in 0..d {
                h = pow_mod(f, &h, f.q(), a);
            }
            if h != rem(f, &x, a) {
                return false;
            }
            for (r, _) in numutil::factorize(d as u64) {
                let k = d as u64 / r;
                let mut g = x.clone();
                for _ in 0..k {
                    g = pow_mod(f, &g, f.q(), a);
                }
                let gc = gcd(f, &sub(f, &g, &x), a);
                if gc.degree() != Some(0) {
                    return false;
                }
            }
            true
        }
    }
}

/// Squarefree decomposition: monic squarefree parts with multiplicities.
fn squarefree_parts(f: &FqField, a: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sff_into(f, &monic(f, a), 1, &mut out);
    out
}

fn sff_into(f: &FqField, a: &Poly, outer: u32, out: &mut Vec<(Poly, u32)>) {
    if a.degree() == Some(0) {
        return;
    }
    let da = derivative(f, a);
    if da.is_zero() {
        let root = pth_root(f, a);
        sff_into(f, &root, outer * f.p() as u32, out);
        return;
    }
    let mut c = gcd(f, a, &da);
    let mut w = div_rem(f, a, &c).0;
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = gcd(f, &w, &c);
        let z = div_rem(f, &w, &y).0;
        if z.degree().map_or(false, |d| d > 0) {
            out.push((z, i * outer));
        }
        i += 1;
        w = y;
        c = div_rem(f, &c, &w).0;
    }
    if c.degree().map_or(false, |d| d > 0) {
        let root = pth_root(f, &c);
        sff_into(f, &root, outer * f.p() as u32, out);
    }
}

/// Distinct-degree decomposition of a monic squarefree polynomial:
/// (product of irreducible factors of degree d, d) pairs.
fn distinct_degree(f: &FqField, a: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = Poly::x();
    let mut d = 0usize;
    while rest.degree().map_or(false, |dr| dr >= 1) {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            let dd = rest.degree().unwrap();
            out.push((rest.clone(), dd));
            break;
        }
        h = pow_mod(f, &h, f.q(), &rest);
        let g = gcd(f, &sub(f, &h, &Poly::x()), &rest);
        if g.degree().map_or(false, |dg| dg > 0) {
            out.push((g.clone(), d));
            rest = div_rem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
    }
    out
}

fn random_poly_below(f: &FqField, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs: Vec<FqElem> = (0..deg).map(|_| f.elem(rng.gen_range(0..f.q()))).collect();
    Poly::from_coeffs(coeffs)
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product
/// of irreducible factors all of degree d.
fn equal_degree_split(f: &FqField, a: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let deg = a.degree().unwrap();
    if deg == d {
        out.push(a.clone());
        return;
    }
    loop {
        let r = random_poly_below(f, deg, rng);
        if r.degree().map_or(true, |dr| dr < 1) {
            continue;
        }
        let t = if f.p() == 2 {
            // absolute trace to F_2 of a random element of F_{q^d}
            let mut acc = r.clone();
            let mut term = r.clone();
            let steps = f.e() as usize * d;
            for _ in 1..steps {
                term = rem(f, &mul(f, &term, &term), a);
                acc = add(f, &acc, &term);
            }
            acc
        } else {
            // norm to F_q followed by the (q-1)/2 power map
            let mut norm = r.clone();
            let mut fr = r.clone();
            for _ in 1..d {
                fr = pow_mod(f, &fr, f.q(), a);
                norm = rem(f, &mul(f, &norm, &fr), a);
            }
            let b = pow_mod(f, &norm, (f.q() - 1) / 2, a);
            sub(f, &b, &Poly::one())
        };
        let g = gcd(f, &t, a);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < deg {
                let other = div_rem(f, a, &g).0;
                equal_degree_split(f, &g, d, rng, out);
                equal_degree_split(f, &other, d, rng, out);
                return;
            }
        }
    }
}

/// Deterministic Berlekamp factorization of a monic squarefree polynomial.
fn berlekamp_squarefree(f: &FqField, a: &Poly, out: &mut Vec<Poly>) {
    let n = a.degree().unwrap();
    if n <= 1 {
        out.push(a.clone());
        return;
    }
    // Frobenius matrix: column j = coords of x^(qj) mod a
    let xq = pow_mod(f, &Poly::x(), f.q(), a);
    let mut cols: Vec<Vec<FqElem>> = Vec::with_capacity(n);
    let mut cur = Poly::one();
    for _ in 0..n {
        let mut col = vec![FqElem::ZERO; n];
        for (i, &c) in cur.coeffs.iter().enumerate() {
            col[i] = c;
        }
        cols.push(col);
        cur = rem(f, &mul(f, &cur, &xq), a);
    }
    // kernel of (Frobenius - I)
    let mut mat = crate::linalg::FqMatrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            let mut v = col[i];
            if i == j {
                v = f.sub(v, FqElem::ONE);
            }
            mat.set(i, j, v);
        }
    }
    let kernel = crate::linalg::kernel_basis(f, &mat);
    if kernel.len() <= 1 {
        out.push(a.clone());
        return;
    }
    // split with the first non-constant kernel vector that works
    for v in &kernel {
        let vp = Poly::from_coeffs(v.clone());
        if vp.degree().map_or(true, |d| d == 0) {
            continue;
        }
        for s in 0..f.q() {
            let g = gcd(f, &sub(f, &vp, &Poly::constant(f.elem(s))), a);
            if let Some(dg) = g.degree() {
                if dg > 0 && dg < n {
                    let other = div_rem(f, a, &g).0;
                    berlekamp_squarefree(f, &g, out);
                    berlekamp_squarefree(f, &other, out);
                    return;
                }
            }
        }
    }
    unreachable!("a kernel of dimension > 1 always yields a split");
}

/// Complete factorization into monic irreducible factors with
/// multiplicities; the product times the leading coefficient of the input
/// recovers the input exactly. Deterministic for a fixed seed, and the
/// sorted output makes the result seed-independent in practice.
pub fn factor(f: &FqField, a: &Poly, seed: u64) -> Result<Vec<(Poly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.degree() == Some(0) {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(f, a) {
        let mut irred = Vec::new();
        if f.q() <= 16 {
            berlekamp_squarefree(f, &part, &mut irred);
        } else {
            for (prod, d) in distinct_degree(f, &part) {
                equal_degree_split(f, &prod, d, &mut rng, &mut irred);
            }
        }
        for g in irred {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
            let ka: Vec<u32> = a.coeffs.iter().map(|c| c.index()).collect();
            let kb: Vec<u32> = b.coeffs.iter().map(|c| c.index()).collect();
            ka.cmp(&kb)
        })
    });
    Ok(factors)
}

pub fn fmt_poly(f: &FqField, a: &Poly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &c) in a.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = f.fmt_elem(c);
        parts.push(match i {
            0 => cs,
            1 if cs == "1" => "x".into(),
            1 => format!("({cs})x"),
            _ if cs == "1" => format!("x^{i}"),
            _ => format!("({cs})x^{i}"),
        });
    }
    parts.join(" + ")
}
