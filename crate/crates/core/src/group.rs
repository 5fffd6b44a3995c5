//! Finite groups as explicit Cayley tables, with the subgroup, quotient,
//! conjugacy, Sylow and solvability machinery needed downstream. Target
//! scale is |G| <= 200; construction validates the group axioms and every
//! derived object is deterministic (elements are ordered by breadth-first
//! discovery from the identity, class representatives are least members,
//! witnesses are least indices).

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numutil;

/// Default cap on closure size in `from_permutations`.
pub const DEFAULT_ORDER_CAP: usize = 5000;

#[derive(Clone)]
pub struct Group {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    orders: Vec<u32>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(order={})", self.n)
    }
}

/// Sorted member index set, closed under product and inverse, containing 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup {
            members: (0..g.n as u32).collect(),
        }
    }

    /// Validates closure; errors name the failing axiom.
    pub fn from_members(g: &Group, mut members: Vec<u32>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NotASubgroup("does not contain the identity".into()));
        }
        let set: BTreeSet<u32> = members.iter().copied().collect();
        for &a in &members {
            if !set.contains(&g.inv[a as usize]) {
                return Err(Error::NotASubgroup(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for &b in &members {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    /// Subgroup generated by the given elements (breadth-first closure).
    pub fn generated(g: &Group, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; g.n];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut queue: VecDeque<u32> = VecDeque::new();
        queue.push_back(0);
        for &x in gens {
            if !seen[x as usize] {
                seen[x as usize] = true;
                members.push(x);
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                for y in [g.mul(x, s), g.mul(s, x)] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self, g: &Group) -> bool {
        for x in 0..g.n as u32 {
            for &h in &self.members {
                if !self.contains(g.conjugate(x, h)) {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugate subgroup x H x^{-1}.
    pub fn conjugated(&self, g: &Group, x: u32) -> Subgroup {
        let mut members: Vec<u32> = self.members.iter().map(|&h| g.conjugate(x, h)).collect();
        members.sort_unstable();
        Subgroup { members }
    }
}

/// Conjugacy class partition; classes are listed by least member, and the
/// representative of each class is its least member.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjClasses {
    pub fn reps(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Homomorphism between two groups, stored as the image index array.
/// Constructed through [`GroupHom::new`], which verifies the defining
/// property; the caller keeps ownership of source and target.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub map: Vec<u32>,
}

impl GroupHom {
    pub fn new(src: &Group, tgt: &Group, map: Vec<u32>) -> Result<GroupHom> {
        if map.len() != src.n || map.iter().any(|&x| x as usize >= tgt.n) {
            return Err(Error::Input("homomorphism map has wrong shape".into()));
        }
        if map[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        for x in 0..src.n {
            for y in 0..src.n {
                let lhs = map[src.mul(x as u32, y as u32) as usize];
                let rhs = tgt.mul(map[x], map[y]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(GroupHom { map })
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }
}

fn perm_compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a*b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

fn cycle_notation(p: &[u32]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = p[start] as usize;
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = p[cur] as usize;
        }
        out.push('(');
        out.push_str(
            &cyc.iter()
                .map(|&i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

impl Group {
    pub fn trivial() -> Group {
        Group {
            n: 1,
            table: vec![0],
            inv: vec![0],
            names: vec!["()".into()],
            orders: vec![1],
        }
    }

    /// Build from an explicit Cayley table. Index 0 must be the identity.
    /// Validation names the offending axiom; associativity is checked
    /// exhaustively below order 64 and on a seeded sample of triples above.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<u32>>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::GroupAxiom("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::GroupAxiom(
                "element label count differs from order".into(),
            ));
        }
        {
            let mut uniq = names.clone();
            uniq.sort();
            uniq.dedup();
            if uniq.len() != n {
                return Err(Error::GroupAxiom("element labels are not unique".into()));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x as usize >= n) {
                return Err(Error::GroupAxiom(
                    "table is not an n-by-n index array".into(),
                ));
            }
            flat.extend_from_slice(row);
        }
        let g = Group {
            n,
            table: flat,
            inv: vec![0; n],
            names,
            orders: vec![0; n],
        };
        g.validate_and_finish()
    }

    fn validate_and_finish(mut self) -> Result<Group> {
        let n = self.n;
        for j in 0..n as u32 {
            if self.mul(0, j) != j || self.mul(j, 0) != j {
                return Err(Error::GroupAxiom(format!(
                    "identity axiom fails at element {j}"
                )));
            }
        }
        // cancellation: rows and columns are permutations
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = self.mul(i as u32, j as u32) as usize;
                let c = self.mul(j as u32, i as u32) as usize;
                if row_seen[r] || col_seen[c] {
                    return Err(Error::GroupAxiom(format!(
                        "cancellation fails at element {i}"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        // inverses
        for i in 0..n as u32 {
            let j = (0..n as u32).find(|&j| self.mul(i, j) == 0).unwrap();
            if self.mul(j, i) != 0 {
                return Err(Error::GroupAxiom(format!(
                    "inverse axiom fails at element {i}"
                )));
            }
            self.inv[i as usize] = j;
        }
        // associativity
        if n < 64 {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    let ab = self.mul(a, b);
                    for c in 0..n as u32 {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::GroupAxiom(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // seeded sample of 20*n^2 triples
            let mut state = 0x5ca1ab1e_u64;
            let mut next = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 33) as u32
            };
            for _ in 0..20 * n * n {
                let a = next() % n as u32;
                let b = next() % n as u32;
                let c = next() % n as u32;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::GroupAxiom(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        for i in 0..n as u32 {
            let mut k = 1u32;
            let mut x = i;
            while x != 0 {
                x = self.mul(x, i);
                k += 1;
            }
            self.orders[i as usize] = k;
        }
        Ok(self)
    }

    /// Closure of permutation generators on {1..degree}; generators are
    /// 1-indexed image arrays. Elements are ordered by breadth-first
    /// discovery from the identity with generators in input order.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>], cap: usize) -> Result<Group> {
        let mut gens: Vec<Vec<u32>> = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::BadPermutation(gi, degree));
            }
            let mut seen = vec![false; degree];
            let mut p = Vec::with_capacity(degree);
            for &img in g {
                if img == 0 || img as usize > degree || seen[(img - 1) as usize] {
                    return Err(Error::BadPermutation(gi, degree));
                }
                seen[(img - 1) as usize] = true;
                p.push(img - 1);
            }
            gens.push(p);
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0usize;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in &gens {
                let nxt = perm_compose(&cur, g);
                if !index.contains_key(&nxt) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCapExceeded(cap));
                    }
                    index.insert(nxt.clone(), elems.len() as u32);
                    elems.push(nxt);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = perm_compose(&elems[i], &elems[j]);
                table[i * n + j] = index[&prod];
            }
        }
        let names = elems.iter().map(|p| cycle_notation(p)).collect();
        let g = Group {
            n,
            table,
            inv: vec![0; n],
            names,
            orders: vec![0; n],
        };
        g.validate_and_finish()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv_of(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv_of(g))
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    pub fn name(&self, x: u32) -> &str {
        &self.names[x as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let o = self.orders[x as usize] as u64;
        let mut k = k % o;
        let mut acc = 0u32;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.n as u32 {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.n)
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| numutil::lcm(acc, o as u64))
    }

    pub fn conjugacy_classes(&self) -> ConjClasses {
        let n = self.n;
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut class = Vec::new();
            for g in 0..n as u32 {
                let y = self.conjugate(g, x);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        ConjClasses { classes, class_of }
    }

    pub fn centralizer(&self, x: u32) -> Subgroup {
        let members: Vec<u32> = (0..self.n as u32)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Subgroup { members }
    }

    /// Centralizer of a set of elements.
    pub fn centralizer_of_set(&self, members: &[u32]) -> Subgroup {
        let sel: Vec<u32> = (0..self.n as u32)
            .filter(|&g| members.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup { members: sel }
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.n as u32)
            .filter(|&g| (0..self.n as u32).all(|x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup { members }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<u32> = (0..self.n as u32)
            .filter(|&g| h.members.iter().all(|&x| h.contains(self.conjugate(g, x))))
            .collect();
        Subgroup { members }
    }

    /// Subgroup generated by all commutators [a, b] with a, b in H.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &a in &h.members {
            for &b in &h.members {
                let c = self.mul(self.mul(a, b), self.mul(self.inv_of(a), self.inv_of(b)));
                gens.insert(c);
            }
        }
        Subgroup::generated(self, &gens.into_iter().collect::<Vec<_>>())
    }

    pub fn derived(&self) -> Subgroup {
        self.derived_subgroup(&Subgroup::whole(self))
    }

    /// A Sylow p-subgroup, deterministic: start from the least p-element
    /// and repeatedly adjoin the least normalizing p-element; a direct
    /// scan over compatible p-elements serves as fallback.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let pk = numutil::p_part(self.n as u64, p);
        if pk == 1 {
            return Subgroup::trivial();
        }
        let is_p_elem = |x: u32| {
            let o = self.orders[x as usize] as u64;
            o > 1 && numutil::p_part(o, p) == o
        };
        let first = (0..self.n as u32)
            .find(|&x| is_p_elem(x))
            .expect("p divides |G|");
        let mut s = Subgroup::generated(self, &[first]);
        while (s.order() as u64) < pk {
            let next = (0..self.n as u32).find(|&x| {
                !s.contains(x)
                    && is_p_elem(x)
                    && s.members.iter().all(|&h| s.contains(self.conjugate(x, h)))
            });
            let x = next.or_else(|| {
                (0..self.n as u32).find(|&x| {
                    if s.contains(x) || !is_p_elem(x) {
                        return false;
                    }
                    let mut gens = s.members.clone();
                    gens.push(x);
                    let t = Subgroup::generated(self, &gens);
                    let o = t.order() as u64;
                    numutil::p_part(o, p) == o
                })
            });
            let x = x.expect("a p-subgroup below full p-part always extends");
            let mut gens = s.members.clone();
            gens.push(x);
            s = Subgroup::generated(self, &gens);
        }
        assert_eq!(
            s.order() as u64,
            pk,
            "Sylow subgroup must have the full p-part"
        );
        s
    }

    /// O^p(G): subgroup generated by all elements of order coprime to p.
    pub fn p_residual(&self, p: u64) -> Subgroup {
        let gens: Vec<u32> = (0..self.n as u32)
            .filter(|&x| numutil::gcd(self.orders[x as usize] as u64, p) == 1)
            .collect();
        Subgroup::generated(self, &gens)
    }

    pub fn is_p_perfect(&self, p: u64) -> bool {
        self.p_residual(p).order() == self.n
    }

    /// O_p(G): the largest normal p-subgroup, generated by all elements
    /// whose conjugacy-class closure is a p-group.
    pub fn o_p(&self, p: u64) -> Subgroup {
        let classes = self.conjugacy_classes();
        let mut gens = Vec::new();
        for class in &classes.classes {
            let o = self.orders[class[0] as usize] as u64;
            if o == 1 || numutil::p_part(o, p) != o {
                continue;
            }
            let cl = Subgroup::generated(self, class);
            let co = cl.order() as u64;
            if numutil::p_part(co, p) == co {
                gens.extend_from_slice(class);
            }
        }
        Subgroup::generated(self, &gens)
    }

    /// O_{p'}(G): the largest normal subgroup of order coprime to p.
    pub fn o_p_prime(&self, p: u64) -> Subgroup {
        let classes = self.conjugacy_classes();
        let mut gens = Vec::new();
        for class in &classes.classes {
            let o = self.orders[class[0] as usize] as u64;
            if numutil::gcd(o, p) != 1 {
                continue;
            }
            let cl = Subgroup::generated(self, class);
            if numutil::gcd(cl.order() as u64, p) == 1 {
                gens.extend_from_slice(class);
            }
        }
        Subgroup::generated(self, &gens)
    }

    /// Cayley table on the cosets of a normal subgroup, cosets ordered by
    /// least member, plus the projection homomorphism.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(Group, GroupHom)> {
        if !nsub.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let n = self.n;
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &h in &nsub.members {
                coset_of[self.mul(g, h) as usize] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![vec![0u32; q]; q];
        for a in 0..q {
            for b in 0..q {
                table[a][b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let names = reps
            .iter()
            .map(|&r| format!("[{}]", self.names[r as usize]))
            .collect();
        let qg = Group::from_table(names, table)?;
        let hom = GroupHom::new(self, &qg, coset_of)?;
        Ok((qg, hom))
    }

    /// Invariant factors d_1 | d_2 | ... of G/G' and the projection onto
    /// the abelianization.
    pub fn abelianization(&self) -> (Vec<u64>, GroupHom) {
        let derived = self.derived();
        let (q, hom) = self.quotient(&derived).expect("derived subgroup is normal");
        let mut factors = Vec::new();
        let mut cur = q;
        while cur.n > 1 {
            let max_order = cur.orders.iter().copied().max().unwrap();
            let x = (0..cur.n as u32)
                .find(|&i| cur.orders[i as usize] == max_order)
                .unwrap();
            factors.push(max_order as u64);
            let sub = Subgroup::generated(&cur, &[x]);
            cur = cur.quotient(&sub).expect("abelian, all subgroups normal").0;
        }
        factors.reverse();
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        (factors, hom)
    }

    /// Commuting decomposition g = g_p * g_{p'} with g_p of p-power order
    /// and g_{p'} of order coprime to p (both powers of g).
    pub fn element_p_decomposition(&self, g: u32, p: u64) -> (u32, u32) {
        let o = self.orders[g as usize] as u64;
        let pk = numutil::p_part(o, p);
        let rest = o / pk;
        if pk == 1 {
            return (0, g);
        }
        if rest == 1 {
            return (g, 0);
        }
        // a = 1 mod pk, a = 0 mod rest
        let a = rest * numutil::mod_inverse(rest % pk, pk).unwrap() % o;
        let gp = self.pow(g, a);
        let gp2 = self.pow(g, (o + 1 - a % o) % o);
        debug_assert_eq!(self.mul(gp, gp2), g);
        debug_assert_eq!(self.mul(gp, gp2), self.mul(gp2, gp));
        (gp, gp2)
    }

    /// True when G has a normal series whose factors are p- or p'-groups,
    /// computed by repeatedly factoring out O_{p'} and O_p.
    pub fn is_p_solvable(&self, p: u64) -> bool {
        let mut cur = self.clone();
        loop {
            if cur.n == 1 {
                return true;
            }
            let opp = cur.o_p_prime(p);
            if opp.order() > 1 {
                cur = cur.quotient(&opp).expect("O_{p'} is normal").0;
                continue;
            }
            let op = cur.o_p(p);
            if op.order() > 1 {
                cur = cur.quotient(&op).expect("O_p is normal").0;
                continue;
            }
            return false;
        }
    }

    /// All p-subgroups of one fixed Sylow p-subgroup, deduplicated under
    /// G-conjugacy; representatives are the least member sets, sorted by
    /// (order, members).
    pub fn p_subgroups_up_to_conjugacy(&self, p: u64) -> Vec<Subgroup> {
        let syl = self.sylow_subgroup(p);
        let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
        all.insert(vec![0]);
        let mut queue = vec![vec![0u32]];
        while let Some(h) = queue.pop() {
            for &x in &syl.members {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let h2 = Subgroup::generated(self, &gens).members;
                if all.insert(h2.clone()) {
                    queue.push(h2);
                }
            }
        }
        // canonical representative per G-conjugacy orbit
        let mut reps: BTreeSet<Vec<u32>> = BTreeSet::new();
        for h in &all {
            let sub = Subgroup { members: h.clone() };
            let mut best = h.clone();
            for g in 0..self.n as u32 {
                let c = sub.conjugated(self, g).members;
                if c < best {
                    best = c;
                }
            }
            reps.insert(best);
        }
        let mut out: Vec<Subgroup> = reps
            .into_iter()
            .map(|members| Subgroup { members })
            .collect();
        out.sort_by_key(|s| (s.order(), s.members.clone()));
        out
    }

    /// Whether two subgroups are conjugate in G.
    pub fn are_conjugate_subgroups(&self, a: &Subgroup, b: &Subgroup) -> bool {
        if a.order() != b.order() {
            return false;
        }
        (0..self.n as u32).any(|g| a.conjugated(self, g) == *b)
    }

    /// The subgroup as a standalone group (members reindexed in sorted
    /// order, identity first) plus the embedding back into the parent.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<u32>) {
        let k = h.order();
        let mut idx_in = vec![u32::MAX; self.n];
        for (i, &m) in h.members.iter().enumerate() {
            idx_in[m as usize] = i as u32;
        }
        let mut table = vec![vec![0u32; k]; k];
        for a in 0..k {
            for b in 0..k {
                table[a][b] = idx_in[self.mul(h.members[a], h.members[b]) as usize];
            }
        }
        let names = h
            .members
            .iter()
            .map(|&m| self.names[m as usize].clone())
            .collect();
        let g = Group::from_table(names, table).expect("subgroup inherits the group axioms");
        (g, h.members.clone())
    }

    /// Structure predicates used by the sufficient-condition checks;
    /// intended for p-groups but defined for any group.
    pub fn predicates(&self) -> GroupPredicates {
        let derived = self.derived();
        let center = self.center();
        let center_in_derived = center.members.iter().all(|&z| derived.contains(z));
        // metacyclic: some cyclic normal subgroup with cyclic quotient
        let mut cyclics: BTreeSet<Vec<u32>> = BTreeSet::new();
        for x in 0..self.n as u32 {
            cyclics.insert(Subgroup::generated(self, &[x]).members);
        }
        let mut is_metacyclic = false;
        for members in cyclics {
            let sub = Subgroup { members };
            if !sub.is_normal(self) {
                continue;
            }
            let (q, _) = self.quotient(&sub).unwrap();
            if q.is_cyclic() {
                is_metacyclic = true;
                break;
            }
        }
        GroupPredicates {
            is_metacyclic,
            exponent: self.exponent(),
            center_in_derived,
        }
    }

    /// Brute-force isomorphism test for small groups (test and report use).
    pub fn is_isomorphic(&self, other: &Group) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut oa = self.orders.clone();
        let mut ob = other.orders.clone();
        oa.sort_unstable();
        ob.sort_unstable();
        if oa != ob || self.is_abelian() != other.is_abelian() {
            return false;
        }
        // greedy generating set of self
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial();
        while span.order() < self.n {
            let x = (0..self.n as u32).find(|&x| !span.contains(x)).unwrap();
            gens.push(x);
            let mut gl = span.members().to_vec();
            gl.extend_from_slice(&gens);
            span = Subgroup::generated(self, &gl);
        }
        let mut images = vec![0u32; gens.len()];
        self.iso_search(other, &gens, &mut images, 0)
    }

    fn iso_search(&self, other: &Group, gens: &[u32], images: &mut [u32], k: usize) -> bool {
        if k == gens.len() {
            return self.check_iso(other, gens, images);
        }
        for cand in 0..other.n as u32 {
            if other.orders[cand as usize] != self.orders[gens[k] as usize] {
                continue;
            }
            images[k] = cand;
            if self.iso_search(other, gens, images, k + 1) {
                return true;
            }
        }
        false
    }

    fn check_iso(&self, other: &Group, gens: &[u32], images: &[u32]) -> bool {
        // grow the map over a BFS spanning tree, then verify fully
        let mut map = vec![u32::MAX; self.n];
        map[0] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(0u32);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                let img = other.mul(map[x as usize], images[i]);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = img;
                    queue.push_back(y);
                } else if map[y as usize] != img {
                    return false;
                }
            }
        }
        if map.iter().any(|&m| m == u32::MAX) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &m in &map {
            if seen[m as usize] {
                return false;
            }
            seen[m as usize] = true;
        }
        for x in 0..self.n as u32 {
            for y in 0..self.n as u32 {
                if map[self.mul(x, y) as usize] != other.mul(map[x as usize], map[y as usize]) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupPredicates {
    pub is_metacyclic: bool,
    pub exponent: u64,
    pub center_in_derived: bool,
}

/// Semidirect product P x| E for an action given as one automorphism of P
/// (an index permutation) per element of E. Pair (p, e) has index
/// p + |P|*e, so P embeds as the first |P| indices.
pub fn semidirect_product(p: &Group, e: &Group, action: &[Vec<u32>]) -> Result<Group> {
    if action.len() != e.n {
        return Err(Error::BadAction(
            "one automorphism per element of E required".into(),
        ));
    }
    for (i, phi) in action.iter().enumerate() {
        if phi.len() != p.n {
            return Err(Error::BadAction(format!(
                "automorphism {i} has wrong degree"
            )));
        }
        let mut seen = vec![false; p.n];
        for &img in phi {
            if img as usize >= p.n || seen[img as usize] {
                return Err(Error::BadAction(format!("map {i} is not a bijection")));
            }
            seen[img as usize] = true;
        }
        for a in 0..p.n as u32 {
            for b in 0..p.n as u32 {
                if phi[p.mul(a, b) as usize] != p.mul(phi[a as usize], phi[b as usize]) {
                    return Err(Error::BadAction(format!("map {i} is not an automorphism")));
                }
            }
        }
    }
    for a in 0..e.n {
        for b in 0..e.n {
            let ab = e.mul(a as u32, b as u32) as usize;
            for x in 0..p.n {
                if action[ab][x] != action[a][action[b][x] as usize] {
                    return Err(Error::BadAction(
                        "action is not a homomorphism into Aut(P)".into(),
                    ));
                }
            }
        }
    }
    let n = p.n * e.n;
    let idx = |pp: u32, ee: u32| (pp as usize + p.n * ee as usize) as u32;
    let mut table = vec![vec![0u32; n]; n];
    for e1 in 0..e.n as u32 {
        for p1 in 0..p.n as u32 {
            for e2 in 0..e.n as u32 {
                for p2 in 0..p.n as u32 {
                    let pp = p.mul(p1, action[e1 as usize][p2 as usize]);
                    let ee = e.mul(e1, e2);
                    table[idx(p1, e1) as usize][idx(p2, e2) as usize] = idx(pp, ee);
                }
            }
        }
    }
    let names = (0..n)
        .map(|i| {
            let (pp, ee) = (i % p.n, i / p.n);
            if e.n == 1 {
                p.names[pp].clone()
            } else if p.n == 1 {
                e.names[ee].clone()
            } else {
                format!("({},{})", p.names[pp], e.names[ee])
            }
        })
        .collect();
    Group::from_table(names, table)
}

/// Group input file: either permutation generators on {1..degree} or an
/// explicit Cayley table with the identity at index 0.
#[derive(Deserialize, Debug)]
pub struct GroupFile {
    pub name: String,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub table: Option<Vec<Vec<u32>>>,
}

pub fn group_from_json(s: &str) -> Result<(String, Group)> {
    let file: GroupFile = serde_json::from_str(s)?;
    let g = match (&file.table, &file.generators, file.degree) {
        (Some(table), _, _) => {
            let names = (0..table.len()).map(|i| format!("g{i}")).collect();
            Group::from_table(names, table.clone())?
        }
        (None, Some(gens), Some(degree)) => {
            Group::from_permutations(degree, gens, DEFAULT_ORDER_CAP)?
        }
        _ => {
            return Err(Error::Input(
                "group file needs either a table or degree+generators".into(),
            ))
        }
    };
    Ok((file.name, g))
}
