//! Built-in group catalog (all entries constructed from permutation
//! generators) plus user catalogs loaded from BCA_CATALOG_DIR.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use bca_core::group::{group_from_json, Group, DEFAULT_ORDER_CAP};
use bca_core::numutil;

#[derive(Clone, Debug)]
pub struct Tags {
    pub abelian: bool,
    pub p_group: Option<u64>,
    pub metacyclic: bool,
    /// (p, is p-solvable) for each prime dividing the order.
    pub p_solvable: Vec<(u64, bool)>,
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub source: String,
    pub group: Arc<Group>,
    pub tags: Tags,
}

pub fn primes_dividing(n: u64) -> Vec<u64> {
    numutil::factorize(n).into_iter().map(|(p, _)| p).collect()
}

fn tag(group: &Group) -> Tags {
    let n = group.order() as u64;
    let primes = primes_dividing(n);
    let p_group = match primes.as_slice() {
        [p] => Some(*p),
        _ => None,
    };
    Tags {
        abelian: group.is_abelian(),
        p_group,
        metacyclic: group.predicates().is_metacyclic,
        p_solvable: primes
            .iter()
            .map(|&p| (p, group.is_p_solvable(p)))
            .collect(),
    }
}

fn entry(name: &str, group: Group) -> CatalogEntry {
    let tags = tag(&group);
    CatalogEntry {
        name: name.to_string(),
        source: "builtin".into(),
        group: Arc::new(group),
        tags,
    }
}

fn perm_group(name: &str, degree: usize, gens: &[Vec<u32>]) -> CatalogEntry {
    let g = Group::from_permutations(degree, gens, DEFAULT_ORDER_CAP)
        .unwrap_or_else(|e| panic!("builtin {name}: {e}"));
    entry(name, g)
}

fn cyclic_gen(n: usize) -> Vec<u32> {
    (1..=n as u32).map(|i| i % n as u32 + 1).collect()
}

fn dihedral(n: usize) -> CatalogEntry {
    let name = format!("D{}", 2 * n);
    if n == 2 {
        return perm_group(&name, 4, &[vec![2, 1, 3, 4], vec![1, 2, 4, 3]]);
    }
    let rot = cyclic_gen(n);
    let refl: Vec<u32> = (1..=n as u32).map(|i| n as u32 + 1 - i).collect();
    perm_group(&name, n, &[rot, refl])
}

fn quaternion16() -> CatalogEntry {
    // elements a^i b^j, index i + 8j; a^8 = 1, b^2 = a^4, b a b^{-1} = a^{-1}
    let mut a = vec![0u32; 16];
    let mut b = vec![0u32; 16];
    for i in 0..8u32 {
        a[i as usize] = (i + 1) % 8 + 1;
        a[(i + 8) as usize] = (i + 7) % 8 + 8 + 1;
        b[i as usize] = i + 8 + 1;
        b[(i + 8) as usize] = (i + 4) % 8 + 1;
    }
    perm_group("Q16", 16, &[a, b])
}

fn modular16() -> CatalogEntry {
    // a of order 8 with b a b^{-1} = a^5, b^2 = 1
    let a = cyclic_gen(8);
    let mut b: Vec<u32> = (1..=8).collect();
    b.swap(1, 5); // points 2 and 6
    b.swap(3, 7); // points 4 and 8
    perm_group("M16", 8, &[a, b])
}

fn sl23() -> CatalogEntry {
    // action on the 8 nonzero vectors of F_3^2
    let vecs: Vec<(u64, u64)> = (0..3u64)
        .flat_map(|x| (0..3u64).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let perm_of = |m: [[u64; 2]; 2]| -> Vec<u32> {
        vecs.iter()
            .map(|&(x, y)| {
                let nx = (m[0][0] * x + m[0][1] * y) % 3;
                let ny = (m[1][0] * x + m[1][1] * y) % 3;
                (vecs.iter().position(|&v| v == (nx, ny)).unwrap() + 1) as u32
            })
            .collect()
    };
    let a = perm_of([[1, 1], [0, 1]]);
    let b = perm_of([[0, 2], [1, 0]]);
    perm_group("SL(2,3)", 8, &[a, b])
}

/// The built-in catalog: cyclic groups to order 16, the small abelian
/// non-cyclic groups, dihedral groups to order 16, both quaternion
/// groups, the modular group of order 16, the small symmetric and
/// alternating groups, SL(2,3) and two small semidirect products.
pub fn catalog_default() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    out.push(entry("C1", Group::trivial()));
    for n in 2..=16usize {
        out.push(perm_group(&format!("C{n}"), n, &[cyclic_gen(n)]));
    }
    out.push(perm_group(
        "C2xC2",
        4,
        &[vec![2, 1, 3, 4], vec![1, 2, 4, 3]],
    ));
    out.push(perm_group(
        "C2xC4",
        6,
        &[vec![2, 1, 3, 4, 5, 6], vec![1, 2, 4, 5, 6, 3]],
    ));
    out.push(perm_group(
        "C3xC3",
        6,
        &[vec![2, 3, 1, 4, 5, 6], vec![1, 2, 3, 5, 6, 4]],
    ));
    for n in 2..=8usize {
        out.push(dihedral(n));
    }
    out.push(perm_group(
        "Q8",
        8,
        &[vec![2, 3, 4, 1, 6, 7, 8, 5], vec![5, 8, 7, 6, 3, 2, 1, 4]],
    ));
    out.push(quaternion16());
    out.push(perm_group("S3", 3, &[vec![2, 3, 1], vec![2, 1, 3]]));
    out.push(perm_group("S4", 4, &[vec![2, 3, 4, 1], vec![2, 1, 3, 4]]));
    out.push(perm_group("A4", 4, &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]]));
    out.push(perm_group(
        "A5",
        5,
        &[vec![2, 3, 1, 4, 5], vec![2, 3, 4, 5, 1]],
    ));
    out.push(sl23());
    // C7 x| C3 by x -> x^2, and C3 x| C4 with inversion
    out.push(perm_group(
        "C7:C3",
        7,
        &[cyclic_gen(7), vec![2, 4, 6, 1, 3, 5, 7]],
    ));
    out.push(perm_group(
        "C3:C4",
        7,
        &[vec![2, 3, 1, 4, 5, 6, 7], vec![2, 1, 3, 5, 6, 7, 4]],
    ));
    out.push(modular16());
    let mut names: Vec<&str> = out.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), out.len(), "catalog names must be unique");
    out
}

/// Default catalog extended by any *.json group files found in
/// BCA_CATALOG_DIR (sorted by file name).
pub fn catalog_with_env() -> Result<Vec<CatalogEntry>> {
    let mut out = catalog_default();
    if let Ok(dir) = std::env::var("BCA_CATALOG_DIR") {
        let mut paths: Vec<_> = std::fs::read_dir(&dir)
            .with_context(|| format!("reading BCA_CATALOG_DIR={dir}"))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().map_or(false, |x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let (name, group) =
                group_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            if out.iter().any(|e| e.name == name) {
                bail!("catalog name {name} from {} already exists", path.display());
            }
            let tags = tag(&group);
            out.push(CatalogEntry {
                name,
                source: path.display().to_string(),
                group: Arc::new(group),
                tags,
            });
        }
    }
    Ok(out)
}

pub fn find<'a>(catalog: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    catalog.iter().find(|e| e.name == name)
}
