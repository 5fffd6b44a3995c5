//! 2-cocycles of a finite group with values in the cyclic group mu_m of
//! m-th roots of unity, stored as exponent tables over Z/m.
//!
//! Cohomology classes are computed for coefficients in the multiplicative
//! group of (an algebraic closure of) a characteristic-p field: a table
//! with values in mu_m is counted trivial when it is the coboundary of a
//! map into mu_M for M = m * (p'-part of exp L). Maps into mu_m alone
//! would overcount classes (restriction of scalars loses divisibility);
//! with the enlarged coefficient group, cyclic groups get a trivial class
//! group, as they must.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::group::Group;
use crate::modm::{self, LocalRing};
use crate::numutil;

/// Exponent table of a 2-cocycle: alpha(x, y) = zeta^table[x][y] for a
/// root of unity zeta of order m. The cocycle identity holds in exponent
/// form mod m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    n: usize,
    m: u64,
    table: Vec<u64>,
}

impl Cocycle2 {
    pub fn trivial(g: &Group, m: u64) -> Cocycle2 {
        Cocycle2 {
            n: g.order(),
            m,
            table: vec![0; g.order() * g.order()],
        }
    }

    /// Validating constructor.
    pub fn new(g: &Group, m: u64, table: Vec<u64>) -> Result<Cocycle2> {
        let c = Cocycle2::new_unchecked(g, m, table)?;
        if let Some((x, y, z)) = c.failing_triple(g) {
            return Err(Error::NotACocycle {
                x: x as usize,
                y: y as usize,
                z: z as usize,
            });
        }
        Ok(c)
    }

    /// Shape-checked but identity-unchecked constructor; used by tests and
    /// import paths that want the downstream validation to fire instead.
    pub fn new_unchecked(g: &Group, m: u64, table: Vec<u64>) -> Result<Cocycle2> {
        let n = g.order();
        if table.len() != n * n {
            return Err(Error::CocycleShape {
                expected: n * n,
                got: table.len(),
            });
        }
        if m == 0 {
            return Err(Error::Input("torsion order must be positive".into()));
        }
        Ok(Cocycle2 {
            n,
            m,
            table: table.into_iter().map(|x| x % m).collect(),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, x: u32, y: u32) -> u64 {
        self.table[x as usize * self.n + y as usize]
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    fn failing_triple(&self, g: &Group) -> Option<(u32, u32, u32)> {
        let n = self.n as u32;
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                for z in 0..n {
                    let lhs = self.at(xy, z) + self.at(x, y);
                    let rhs = self.at(x, g.mul(y, z)) + self.at(y, z);
                    if lhs % self.m != rhs % self.m {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Exponent-form cocycle identity over all n^3 triples.
    pub fn is_cocycle_table(g: &Group, m: u64, table: &[u64]) -> bool {
        match Cocycle2::new_unchecked(g, m, table.to_vec()) {
            Ok(c) => c.failing_triple(g).is_none(),
            Err(_) => false,
        }
    }

    /// The coboundary of lambda: table[x][y] = l(x) + l(y) - l(xy) mod m.
    pub fn coboundary(g: &Group, m: u64, lambda: &[u64]) -> Cocycle2 {
        assert_eq!(lambda.len(), g.order());
        let n = g.order();
        let mut table = vec![0u64; n * n];
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let xy = g.mul(x, y) as usize;
                let v = (lambda[x as usize] + lambda[y as usize]) % m + (m - lambda[xy] % m);
                table[x as usize * n + y as usize] = v % m;
            }
        }
        Cocycle2 { n, m, table }
    }

    /// Cohomologous shift by the coboundary of lambda.
    pub fn shifted(&self, g: &Group, lambda: &[u64]) -> Cocycle2 {
        let delta = Cocycle2::coboundary(g, self.m, lambda);
        let table = self
            .table
            .iter()
            .zip(&delta.table)
            .map(|(&a, &b)| (a + b) % self.m)
            .collect();
        Cocycle2 {
            n: self.n,
            m: self.m,
            table,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.table[0] == 0
    }

    /// Cohomologous normalized cocycle: subtracting the constant
    /// coboundary clears the (1,1) entry, and with it the whole identity
    /// row and column.
    pub fn normalize(&self) -> Cocycle2 {
        let a = self.table[0];
        if a == 0 {
            return self.clone();
        }
        let table = self
            .table
            .iter()
            .map(|&v| (v + self.m - a) % self.m)
            .collect();
        Cocycle2 {
            n: self.n,
            m: self.m,
            table,
        }
    }

    /// Sorted set of alpha-regular elements: x with alpha(x,y) = alpha(y,x)
    /// for every y in the centralizer of x. The set is closed under
    /// conjugacy, which is asserted.
    pub fn alpha_regular_set(&self, g: &Group) -> Vec<u32> {
        let mut out = Vec::new();
        for x in 0..self.n as u32 {
            let c = g.centralizer(x);
            if c.members().iter().all(|&y| self.at(x, y) == self.at(y, x)) {
                out.push(x);
            }
        }
        let in_set = |x: u32| out.binary_search(&x).is_ok();
        for &x in &out {
            for gg in 0..self.n as u32 {
                assert!(
                    in_set(g.conjugate(gg, x)),
                    "alpha-regular set must be a union of classes"
                );
            }
        }
        out
    }

    /// Value in F_q, using the field's distinguished root of unity of
    /// order m; errors when mu_m is not inside F_q.
    pub fn eval(&self, f: &FqField, x: u32, y: u32) -> Result<FqElem> {
        let zeta = f.unity_root(self.m)?;
        Ok(f.pow(zeta, self.at(x, y)))
    }
}

#[derive(Serialize, Deserialize)]
struct CocycleFile {
    group: String,
    m: u64,
    table: Vec<Vec<u64>>,
}

pub fn cocycle_to_json(c: &Cocycle2, group_name: &str) -> String {
    let n = c.n;
    let table: Vec<Vec<u64>> = (0..n)
        .map(|i| c.table[i * n..(i + 1) * n].to_vec())
        .collect();
    serde_json::to_string_pretty(&CocycleFile {
        group: group_name.into(),
        m: c.m,
        table,
    })
    .expect("serializable")
}

/// Import validates the cocycle identity against the supplied group.
pub fn cocycle_from_json(g: &Group, s: &str) -> Result<(String, Cocycle2)> {
    let file: CocycleFile = serde_json::from_str(s)?;
    let flat: Vec<u64> = file.table.into_iter().flatten().collect();
    let c = Cocycle2::new(g, file.m, flat)?;
    Ok((file.group, c))
}

/// One normalized representative per cohomology class (values in mu_m,
/// classes taken in the multiplicative group of the closed field).
#[derive(Clone, Debug)]
pub struct CocycleClassGroup {
    pub m: u64,
    /// Invariant factors d_1 | d_2 | ... of the class group.
    pub invariant_factors: Vec<u64>,
    pub representatives: Vec<Cocycle2>,
    pub total_classes: u128,
    pub truncated: bool,
}

fn p_prime_exponent(g: &Group, p: u64) -> u64 {
    let e = g.exponent();
    if p <= 1 {
        e
    } else {
        numutil::p_prime_part(e, p)
    }
}

/// Normalized cocycles are determined by their values on (x, s) with s in
/// a generating set: the identity with third argument a generator defines
/// alpha(x, ys) from shorter second arguments, and those instances imply
/// the identity for all triples. The frame fixes the generating set, the
/// breadth-first spanning tree over second arguments, and the non-tree
/// pairs that become linear constraints.
struct CocycleFrame {
    n: usize,
    gens: Vec<u32>,
    /// Unknown index of alpha(x, gens[si]) is x * gens.len() + si.
    k: usize,
    /// BFS order of all elements as words in the generators.
    order: Vec<u32>,
    /// For a non-root, non-generator word ys: (y, generator index).
    tree: Vec<Option<(u32, u32)>>,
    /// Non-tree (y, generator index) pairs.
    pairs: Vec<(u32, u32)>,
}

impl CocycleFrame {
    fn new(g: &Group) -> CocycleFrame {
        let n = g.order();
        // greedy generating set
        let mut gens: Vec<u32> = Vec::new();
        let mut span = crate::group::Subgroup::trivial();
        while span.order() < n {
            let x = (0..n as u32).find(|&x| !span.contains(x)).unwrap();
            gens.push(x);
            span = crate::group::Subgroup::generated(g, &gens);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0u32];
        let mut tree: Vec<Option<(u32, u32)>> = vec![None; n];
        for (si, &s) in gens.iter().enumerate() {
            if !seen[s as usize] {
                seen[s as usize] = true;
                // generators are definitional roots, not tree edges
                let _ = si;
                order.push(s);
            }
        }
        let mut head = 0;
        while head < order.len() {
            let y = order[head];
            head += 1;
            for (si, &s) in gens.iter().enumerate() {
                let ys = g.mul(y, s);
                if !seen[ys as usize] {
                    seen[ys as usize] = true;
                    tree[ys as usize] = Some((y, si as u32));
                    order.push(ys);
                }
            }
        }
        let mut pairs = Vec::new();
        for y in 0..n as u32 {
            for si in 0..gens.len() as u32 {
                let ys = g.mul(y, gens[si as usize]);
                if tree[ys as usize] == Some((y, si)) {
                    continue;
                }
                pairs.push((y, si));
            }
        }
        let k = n * gens.len();
        CocycleFrame {
            n,
            gens,
            k,
            order,
            tree,
            pairs,
        }
    }

    #[inline]
    fn uidx(&self, x: u32, si: u32) -> usize {
        x as usize * self.gens.len() + si as usize
    }

    /// Propagation matrices over Z/q: row x of M_y gives alpha(x, y) as an
    /// integer combination of the unknowns. M_1 = 0, M_s = E_s, and along
    /// tree edges alpha(x, ys) = alpha(xy, s) + alpha(x, y) - alpha(y, s).
    fn propagation(&self, g: &Group, q: u64) -> Vec<Vec<u64>> {
        let n = self.n;
        let k = self.k;
        let mut m: Vec<Vec<u64>> = vec![Vec::new(); n];
        m[0] = vec![0u64; n * k];
        for (si, &s) in self.gens.iter().enumerate() {
            if !m[s as usize].is_empty() {
                continue; // a generator may coincide with an earlier one's word
            }
            let mut e = vec![0u64; n * k];
            for x in 0..n as u32 {
                e[x as usize * k + self.uidx(x, si as u32)] = 1 % q;
            }
            m[s as usize] = e;
        }
        for &w in &self.order {
            if !m[w as usize].is_empty() {
                continue;
            }
            let Some((y, si)) = self.tree[w as usize] else {
                continue;
            };
            let my = std::mem::take(&mut m[y as usize]);
            let mut mw = vec![0u64; n * k];
            for x in 0..n as u32 {
                let row = &mut mw[x as usize * k..(x as usize + 1) * k];
                for (slot, &v) in row
                    .iter_mut()
                    .zip(&my[x as usize * k..(x as usize + 1) * k])
                {
                    *slot = v;
                }
                let xy = g.mul(x, y);
                let a = self.uidx(xy, si);
                row[a] = (row[a] + 1) % q;
                let b = self.uidx(y, si);
                row[b] = (row[b] + q - 1) % q;
            }
            m[y as usize] = my;
            m[w as usize] = mw;
        }
        m
    }

    /// Constraint rows over Z/q whose null space is exactly the set of
    /// unknown vectors extending to normalized cocycles.
    fn constraint_rows<'a>(
        &'a self,
        g: &'a Group,
        prop: &'a [Vec<u64>],
        q: u64,
    ) -> impl Iterator<Item = Vec<u64>> + 'a {
        let n = self.n;
        let k = self.k;
        self.pairs.iter().flat_map(move |&(y, si)| {
            let s = self.gens[si as usize];
            let ys = g.mul(y, s);
            (0..n as u32).map(move |x| {
                // alpha(x, ys) - alpha(xy, s) - alpha(x, y) + alpha(y, s) = 0
                let mut row = vec![0u64; k];
                for (slot, &v) in row.iter_mut().zip(&prop[ys as usize][x as usize * k..]) {
                    *slot = v;
                }
                let xy = g.mul(x, y);
                let a = self.uidx(xy, si);
                row[a] = (row[a] + q - 1) % q;
                let b = self.uidx(y, si);
                row[b] = (row[b] + 1) % q;
                for (slot, &v) in row.iter_mut().zip(&prop[y as usize][x as usize * k..]) {
                    *slot = (*slot + q - v % q) % q;
                }
                row
            })
        })
    }

    /// Full n x n exponent table of the cocycle with unknown vector u.
    fn table_from_unknowns(&self, prop: &[Vec<u64>], u: &[u64], q: u64) -> Vec<u64> {
        let n = self.n;
        let k = self.k;
        let mut table = vec![0u64; n * n];
        for y in 0..n {
            let my = &prop[y];
            for x in 0..n {
                let mut acc = 0u64;
                for (c, &uc) in my[x * k..(x + 1) * k].iter().zip(u) {
                    if *c != 0 && uc != 0 {
                        acc = (acc + c * uc) % q;
                    }
                }
                table[x * n + y] = acc;
            }
        }
        table
    }
}

struct PrimeComponent {
    ring: LocalRing,
    /// Cyclic factor sizes l^{d_j} > 1 of this component of the class group.
    factors: Vec<u64>,
    /// Exponent tables (mod l^k) generating the factors.
    gen_tables: Vec<Vec<u64>>,
}

fn component_for_prime(
    g: &Group,
    frame: &CocycleFrame,
    ring: LocalRing,
    eprime: u64,
) -> PrimeComponent {
    let n = g.order();
    // Coboundary triviality is tested with maps into mu_{l^(k+v)},
    // v the l-part of the p'-exponent: lambda^m is a homomorphism, so any
    // trivializing lambda takes values there.
    let v = numutil::p_part(eprime, ring.l);
    let big = LocalRing::new(
        ring.l,
        ring.k + numutil::factorize(v).first().map_or(0, |&(_, k)| k),
    );
    let scale = big.q / ring.q;
    // normalized cocycles mod l^k in generator coordinates
    let prop_small = frame.propagation(g, ring.q);
    let (zgens, zorders) =
        modm::local_kernel(ring, frame.constraint_rows(g, &prop_small, ring.q), frame.k);
    if zgens.is_empty() {
        return PrimeComponent {
            ring,
            factors: vec![],
            gen_tables: vec![],
        };
    }
    let t = zgens.len();
    // combined system over Z/big.q: sum_i c_i * scale * z_i = delta(lambda)
    // restricted to the generator coordinates; lambda(1) = 0, so lambda
    // has n - 1 unknowns (columns t..t+n-1 for elements 1..n-1)
    let rows = (0..frame.k).map(|r| {
        let x = (r / frame.gens.len()) as u32;
        let s = frame.gens[r % frame.gens.len()];
        let mut row = vec![0u64; t + n - 1];
        for (i, z) in zgens.iter().enumerate() {
            row[i] = z[r] % big.q * scale % big.q;
        }
        // minus delta(lambda)(x, s) = -l(x) - l(s) + l(xs)
        let mut bump = |e: u32, plus: bool| {
            if e == 0 {
                return;
            }
            let col = t + e as usize - 1;
            let v = if plus { 1 } else { big.q - 1 };
            row[col] = (row[col] + v) % big.q;
        };
        bump(x, false);
        bump(s, false);
        bump(g.mul(x, s), true);
        row
    });
    let (kgens, _) = modm::local_kernel(big, rows, t + n - 1);
    let relations: Vec<Vec<u64>> = kgens
        .iter()
        .map(|kg| kg[..t].iter().map(|&c| c % ring.q).collect())
        .collect();
    let (factors, combos) = modm::local_quotient(ring, &zorders, &relations);
    let gen_tables = combos
        .iter()
        .map(|w| {
            let mut u = vec![0u64; frame.k];
            for (i, &wi) in w.iter().enumerate() {
                if wi == 0 {
                    continue;
                }
                for (slot, &zi) in u.iter_mut().zip(&zgens[i]) {
                    *slot = (*slot + wi * zi) % ring.q;
                }
            }
            frame.table_from_unknowns(&prop_small, &u, ring.q)
        })
        .collect();
    PrimeComponent {
        ring,
        factors,
        gen_tables,
    }
}

/// Enumerate the cohomology classes representable by mu_m-valued cocycles.
/// `p` is the field characteristic (coprimality with m is required);
/// passing p = 0 computes characteristic-zero classes. At most `cap`
/// normalized representatives are materialized when a cap is given.
pub fn h2_classes(g: &Group, m: u64, p: u64, cap: Option<usize>) -> Result<CocycleClassGroup> {
    if m == 0 {
        return Err(Error::Input("torsion order must be positive".into()));
    }
    if p > 1 && m % p == 0 {
        return Err(Error::TorsionNotCoprime { m, p });
    }
    if m == 1 {
        return Ok(CocycleClassGroup {
            m,
            invariant_factors: vec![],
            representatives: vec![Cocycle2::trivial(g, m)],
            total_classes: 1,
            truncated: false,
        });
    }
    let eprime = p_prime_exponent(g, p);
    let frame = CocycleFrame::new(g);
    let mut components = Vec::new();
    for (l, k) in numutil::factorize(m) {
        components.push(component_for_prime(g, &frame, LocalRing::new(l, k), eprime));
    }
    // flatten factors (primes ascending, diagonal order within a prime)
    let mut radix: Vec<u64> = Vec::new();
    let mut tables: Vec<Vec<u64>> = Vec::new();
    for comp in &components {
        let embed = m / comp.ring.q;
        for (f, tb) in comp.factors.iter().zip(&comp.gen_tables) {
            radix.push(*f);
            tables.push(tb.iter().map(|&x| x * embed % m).collect());
        }
    }
    let total: u128 = radix.iter().map(|&f| f as u128).product();
    let limit = cap.map_or(total, |c| (c as u128).min(total));
    let n = g.order();
    let mut representatives = Vec::with_capacity(limit as usize);
    for idx in 0..limit {
        let mut table = vec![0u64; n * n];
        let mut rest = idx;
        for (f, tb) in radix.iter().zip(&tables) {
            let digit = (rest % *f as u128) as u64;
            rest /= *f as u128;
            if digit != 0 {
                for (slot, &v) in table.iter_mut().zip(tb) {
                    *slot = (*slot + digit * v) % m;
                }
            }
        }
        let c = Cocycle2 { n, m, table }.normalize();
        debug_assert!(
            c.failing_triple(g).is_none(),
            "class representative must be a cocycle"
        );
        representatives.push(c);
    }
    // invariant factors: combine prime-power elementary divisors
    let mut per_prime: Vec<Vec<u64>> = components
        .iter()
        .map(|c| {
            let mut f = c.factors.clone();
            f.sort_unstable_by(|a, b| b.cmp(a));
            f
        })
        .collect();
    let depth = per_prime.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut invariant_factors = Vec::new();
    for i in 0..depth {
        let mut d = 1u64;
        for f in &mut per_prime {
            if i < f.len() {
                d *= f[i];
            }
        }
        invariant_factors.push(d);
    }
    invariant_factors.reverse();
    Ok(CocycleClassGroup {
        m,
        invariant_factors,
        representatives,
        total_classes: total.max(1),
        truncated: limit < total,
    })
}

/// Whether two mu_m-valued cocycles represent the same class over the
/// closed field of characteristic p (coboundary solvable with values in
/// mu_{m * p'-exponent}).
pub fn are_cohomologous(g: &Group, a: &Cocycle2, b: &Cocycle2, p: u64) -> bool {
    assert_eq!(a.m, b.m, "cocycles must share the torsion order");
    assert_eq!(a.n, b.n);
    let m = a.m;
    if m == 1 {
        return true;
    }
    let n = g.order();
    let eprime = p_prime_exponent(g, p);
    for (l, k) in numutil::factorize(m) {
        let small = LocalRing::new(l, k);
        let vfac = numutil::p_part(eprime, l);
        let extra = numutil::factorize(vfac).first().map_or(0, |&(_, kk)| kk);
        let big = LocalRing::new(l, k + extra);
        let scale = big.q / small.q;
        let rows = (0..n * n).map(|r| {
            let x = (r / n) as u32;
            let y = (r % n) as u32;
            let mut row = vec![0u64; n];
            let mut bump = |idx: usize, plus: bool| {
                let v = if plus { 1 } else { big.q - 1 };
                row[idx] = (row[idx] + v) % big.q;
            };
            bump(x as usize, true);
            bump(y as usize, true);
            bump(g.mul(x, y) as usize, false);
            row
        });
        let rhs: Vec<u64> = (0..n * n)
            .map(|r| {
                let d = (a.table[r] + m - b.table[r]) % m;
                d % small.q * scale % big.q
            })
            .collect();
        if modm::local_solve(big, rows, n, &rhs).is_none() {
            return false;
        }
    }
    true
}
