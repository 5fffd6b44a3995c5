//! Group-theoretic nonvanishing criteria: the commutator-index element
//! set, the strong non-Schur sets (two variants), the regular-commutator
//! witness for twisted group algebras, and the five sufficient structure
//! conditions on a group and its Sylow subgroup.

use serde::Serialize;

use crate::cocycle::Cocycle2;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::numutil;

/// Two readings of the strong non-Schur condition on a p-element x.
/// `Paper` asks x to avoid the derived subgroup of its centralizer;
/// `Sylow` asks x to avoid the derived subgroup of a Sylow p-subgroup of
/// its centralizer (the weaker condition, so Paper implies Sylow). They
/// are computed separately and reports always state which one they used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NonSchurVariant {
    Paper,
    Sylow,
}

/// Elements x with p dividing the index of the derived subgroup in the
/// centralizer of x; a union of conjugacy classes.
pub fn commutator_index_set(g: &Group, p: u64) -> Vec<u32> {
    let classes = g.conjugacy_classes();
    let mut out = Vec::new();
    for class in &classes.classes {
        let c = g.centralizer(class[0]);
        let d = g.derived_subgroup(&c);
        let index = (c.order() / d.order()) as u64;
        if index % p == 0 {
            out.extend_from_slice(class);
        }
    }
    out.sort_unstable();
    out
}

/// p-elements x outside the derived subgroup of (a Sylow p-subgroup of)
/// their centralizer, per the chosen variant. The identity never
/// qualifies since it lies in every derived subgroup.
pub fn strong_nonschur_set(g: &Group, p: u64, variant: NonSchurVariant) -> Vec<u32> {
    let classes = g.conjugacy_classes();
    let mut out = Vec::new();
    for class in &classes.classes {
        let x = class[0];
        let o = g.element_order(x) as u64;
        if o == 1 || numutil::p_part(o, p) != o {
            continue;
        }
        let c = g.centralizer(x);
        let qualifies = match variant {
            NonSchurVariant::Paper => {
                let d = g.derived_subgroup(&c);
                !d.contains(x)
            }
            NonSchurVariant::Sylow => {
                let (cg, embed) = g.subgroup_as_group(&c);
                let syl = cg.sylow_subgroup(p);
                let ds = cg.derived_subgroup(&syl);
                let x_in_c = embed.iter().position(|&m| m == x).unwrap() as u32;
                // x is central in its centralizer, hence in every Sylow
                debug_assert!(syl.contains(x_in_c));
                !ds.contains(x_in_c)
            }
        };
        if qualifies {
            out.extend_from_slice(class);
        }
    }
    out.sort_unstable();
    out
}

/// Least element in the intersection of the commutator-index set and the
/// alpha-regular set: a certified witness that the twisted group algebra
/// has nonvanishing first Hochschild cohomology. Errors when the ambient
/// hypothesis p | |G| fails.
pub fn nonvanishing_witness(g: &Group, p: u64, c: &Cocycle2) -> Result<Option<u32>> {
    if g.order() as u64 % p != 0 {
        return Err(Error::Input(format!(
            "prime {p} does not divide the group order {}",
            g.order()
        )));
    }
    let cset = commutator_index_set(g, p);
    let regular = c.alpha_regular_set(g);
    let reg = |x: u32| regular.binary_search(&x).is_ok();
    Ok(cset.into_iter().find(|&x| reg(x)))
}

/// The five sufficient conditions, evaluated on G and its Sylow
/// p-subgroup P: (i) G not p-perfect; (ii) P normal; (iii) Z(P) not
/// inside P'; (iv) exp P' < exp P; (v) P metacyclic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    pub non_p_perfect: bool,
    pub sylow_normal: bool,
    pub center_not_in_derived: bool,
    pub derived_exponent_smaller: bool,
    pub sylow_metacyclic: bool,
}

impl SufficientConditions {
    pub fn any(&self) -> bool {
        self.non_p_perfect
            || self.sylow_normal
            || self.center_not_in_derived
            || self.derived_exponent_smaller
            || self.sylow_metacyclic
    }

    pub fn flags(&self) -> [(&'static str, bool); 5] {
        [
            ("non_p_perfect", self.non_p_perfect),
            ("sylow_normal", self.sylow_normal),
            ("center_not_in_derived", self.center_not_in_derived),
            ("derived_exponent_smaller", self.derived_exponent_smaller),
            ("sylow_metacyclic", self.sylow_metacyclic),
        ]
    }
}

pub fn sufficient_conditions(g: &Group, p: u64) -> SufficientConditions {
    let syl = g.sylow_subgroup(p);
    let (pg, _) = g.subgroup_as_group(&syl);
    let preds = pg.predicates();
    let derived = pg.derived();
    let (dg, _) = pg.subgroup_as_group(&derived);
    SufficientConditions {
        non_p_perfect: !g.is_p_perfect(p),
        sylow_normal: syl.is_normal(g),
        center_not_in_derived: !preds.center_in_derived,
        derived_exponent_smaller: dg.exponent() < preds.exponent,
        sylow_metacyclic: preds.is_metacyclic,
    }
}

/// Serialized per-group summary of the criterion data.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub group: String,
    pub prime: u64,
    pub commutator_index_set: Vec<u32>,
    pub strong_nonschur_paper: Vec<u32>,
    pub strong_nonschur_sylow: Vec<u32>,
    pub conditions: SufficientConditions,
    /// Witness per cohomology class representative, when one exists.
    pub witnesses: Vec<Option<u32>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle2;
    use crate::group::tests::{cyclic, quaternion8, sl23, sym3};
    use crate::group::{Group, DEFAULT_ORDER_CAP};

    fn alt5() -> Group {
        Group::from_permutations(
            5,
            &[vec![2, 3, 1, 4, 5], vec![2, 3, 4, 5, 1]],
            DEFAULT_ORDER_CAP,
        )
        .unwrap()
    }

    #[test]
    fn abelian_groups_give_everything() {
        let c6 = cyclic(6);
        assert_eq!(commutator_index_set(&c6, 2).len(), 6);
        assert_eq!(commutator_index_set(&c6, 3).len(), 6);
    }

    #[test]
    fn sym3_commutator_index_set() {
        let s3 = sym3();
        let set = commutator_index_set(&s3, 3);
        // exactly the two 3-cycles: their centralizer is C3 with trivial
        // derived subgroup; for the identity |S3 : A3| = 2 is coprime to 3
        assert_eq!(set.len(), 2);
        for &x in &set {
            assert_eq!(s3.element_order(x), 3);
        }
        assert!(!set.contains(&0));
    }

    #[test]
    fn p_groups_give_everything() {
        let q8 = quaternion8();
        assert_eq!(commutator_index_set(&q8, 2).len(), 8);
    }

    #[test]
    fn nonschur_on_p_groups_is_complement_of_derived() {
        let q8 = quaternion8();
        let derived = q8.derived();
        for variant in [NonSchurVariant::Paper, NonSchurVariant::Sylow] {
            let set = strong_nonschur_set(&q8, 2, variant);
            let expected: Vec<u32> = (0..8u32)
                .filter(|&x| x != 0 && !derived.contains(x))
                .collect();
            assert_eq!(set, expected);
        }
    }

    #[test]
    fn nonschur_sym3() {
        let s3 = sym3();
        let set = strong_nonschur_set(&s3, 3, NonSchurVariant::Paper);
        assert_eq!(set.len(), 2);
        for &x in &set {
            assert_eq!(s3.element_order(x), 3);
        }
        assert!(!set.contains(&0));
        assert_eq!(set, strong_nonschur_set(&s3, 3, NonSchurVariant::Sylow));
    }

    #[test]
    fn paper_variant_included_in_sylow_variant() {
        for (g, primes) in [
            (sym3(), vec![2u64, 3]),
            (sl23(), vec![2, 3]),
            (quaternion8(), vec![2]),
            (alt5(), vec![2, 3, 5]),
        ] {
            for p in primes {
                let paper = strong_nonschur_set(&g, p, NonSchurVariant::Paper);
                let sylow = strong_nonschur_set(&g, p, NonSchurVariant::Sylow);
                for x in &paper {
                    assert!(sylow.contains(x));
                }
            }
        }
    }

    #[test]
    fn witness_with_trivial_cocycle() {
        let s3 = sym3();
        let c = Cocycle2::trivial(&s3, 2);
        // everything is regular, so the least commutator-index element wins
        let w = nonvanishing_witness(&s3, 3, &c).unwrap();
        assert!(w.is_some());
        assert_eq!(s3.element_order(w.unwrap()), 3);
        // non-p-perfect group: identity is the witness
        let g = sl23();
        let c = Cocycle2::trivial(&g, 8);
        assert_eq!(nonvanishing_witness(&g, 3, &c).unwrap(), Some(0));
        // p-group: identity is the witness
        let q8 = quaternion8();
        let c = Cocycle2::trivial(&q8, 1);
        assert_eq!(nonvanishing_witness(&q8, 2, &c).unwrap(), Some(0));
        // hypothesis failure
        assert!(nonvanishing_witness(&s3, 5, &Cocycle2::trivial(&s3, 2)).is_err());
    }

    #[test]
    fn sufficient_condition_examples() {
        let g = sl23();
        let c3 = sufficient_conditions(&g, 3);
        assert!(c3.non_p_perfect);
        let c2 = sufficient_conditions(&g, 2);
        // Sylow 2-subgroup is Q8: Z(Q8) = Q8', exp Q8' = 2 < 4, metacyclic
        assert!(!c2.center_not_in_derived);
        assert!(c2.derived_exponent_smaller);
        assert!(c2.sylow_metacyclic);
        let a5 = alt5();
        let c5 = sufficient_conditions(&a5, 5);
        assert!(!c5.sylow_normal);
        assert!(c5.sylow_metacyclic); // C5 is cyclic, hence metacyclic
        assert!(!c5.non_p_perfect);
    }

    #[test]
    fn sets_are_unions_of_classes() {
        for (g, p) in [(sym3(), 3u64), (sl23(), 2), (sl23(), 3), (alt5(), 2)] {
            let classes = g.conjugacy_classes();
            for set in [
                commutator_index_set(&g, p),
                strong_nonschur_set(&g, p, NonSchurVariant::Paper),
                strong_nonschur_set(&g, p, NonSchurVariant::Sylow),
            ] {
                for &x in &set {
                    let cid = classes.class_of[x as usize];
                    for &y in &classes.classes[cid as usize] {
                        assert!(set.binary_search(&y).is_ok());
                    }
                }
            }
        }
    }
}
