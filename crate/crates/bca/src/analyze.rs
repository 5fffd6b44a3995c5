//! One-stop analysis of a single group at a prime: conjugacy data,
//! criterion element sets, cohomology class survey with per-class twisted
//! HH^1 and its centralizer breakdown, and the block decomposition with
//! defect groups, per-block HH^1 and inertial quotients.

use std::sync::Arc;

use anyhow::Result;
use bca_core::algebra::{group_algebra, hh1_dim, twisted_group_algebra};
use bca_core::blocks::{
    block_decomposition, block_nonvanishing_pipeline, defect_groups, inertial_quotient,
    max_brauer_pair, splitting_field,
};
use bca_core::cocycle::h2_classes;
use bca_core::criteria::{
    commutator_index_set, nonvanishing_witness, strong_nonschur_set, sufficient_conditions,
    NonSchurVariant, PropertyReport,
};
use bca_core::field::{field_with_torsion, FqField};
use bca_core::gcoh::twisted_centralizer_breakdown;
use bca_core::numutil;

use crate::catalog::CatalogEntry;
use crate::report::SCHEMA_VERSION;

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub m_override: Option<u64>,
    pub field_override: Option<u64>,
    pub seed: u64,
    pub class_cap: usize,
    pub paranoid: bool,
}

fn names(entry: &CatalogEntry, xs: &[u32]) -> Vec<String> {
    xs.iter()
        .map(|&x| entry.group.name(x).to_string())
        .collect()
}

pub fn analyze(entry: &CatalogEntry, p: u64, opts: &AnalyzeOptions) -> Result<serde_json::Value> {
    let g = entry.group.as_ref();
    let n = g.order() as u64;
    anyhow::ensure!(
        n % p == 0,
        "prime {p} does not divide |{}| = {n}",
        entry.name
    );
    let m = opts
        .m_override
        .unwrap_or_else(|| numutil::p_prime_part(n, p));
    let field: Arc<FqField> = match opts.field_override {
        Some(q) => {
            let factors = numutil::factorize(q);
            anyhow::ensure!(factors.len() == 1, "field order {q} is not a prime power");
            let (fp, e) = factors[0];
            anyhow::ensure!(fp == p, "field characteristic {fp} differs from prime {p}");
            anyhow::ensure!(
                m <= 1 || (q - 1) % m == 0,
                "F_{q} lacks the {m}-th roots of unity"
            );
            Arc::new(FqField::new(fp, e)?)
        }
        None => Arc::new(field_with_torsion(p, m)?),
    };

    let classes = g.conjugacy_classes();
    let class_info: Vec<serde_json::Value> = classes
        .classes
        .iter()
        .map(|c| {
            serde_json::json!({
                "representative": g.name(c[0]),
                "size": c.len(),
                "element_order": g.element_order(c[0]),
            })
        })
        .collect();
    let (ab_factors, _) = g.abelianization();
    let syl = g.sylow_subgroup(p);
    let cset = commutator_index_set(g, p);
    let ns_paper = strong_nonschur_set(g, p, NonSchurVariant::Paper);
    let ns_sylow = strong_nonschur_set(g, p, NonSchurVariant::Sylow);
    let conditions = sufficient_conditions(g, p);

    let cap = if opts.class_cap == 0 {
        64
    } else {
        opts.class_cap
    };
    let h2 = h2_classes(g, m, p, Some(cap))?;
    let mut witnesses = Vec::new();
    let mut class_reports = Vec::new();
    for (ci, c) in h2.representatives.iter().enumerate() {
        let regular = c.alpha_regular_set(g);
        let witness = nonvanishing_witness(g, p, c)?;
        witnesses.push(witness);
        let alg = twisted_group_algebra(g, c, field.clone())?;
        if opts.paranoid {
            alg.revalidate_exhaustive()?;
        }
        let hh1 = hh1_dim(&alg);
        let breakdown = twisted_centralizer_breakdown(g, c, field.clone())?;
        let sum: usize = breakdown.iter().map(|b| b.h1_dim).sum();
        class_reports.push(serde_json::json!({
            "class_index": ci,
            "alpha_regular_count": regular.len(),
            "alpha_regular": names(entry, &regular),
            "witness": witness.map(|w| g.name(w).to_string()),
            "hh1_twisted": hh1,
            "centralizer_sum": sum,
            "oracles_agree": hh1 == sum,
            "per_class_contributions": breakdown.iter().map(|b| serde_json::json!({
                "representative": g.name(b.rep),
                "regular": b.regular,
                "h1_dim": b.h1_dim,
            })).collect::<Vec<_>>(),
        }));
    }

    // blocks over the splitting field for G at p
    let bf = Arc::new(splitting_field(g, p)?);
    let galg = group_algebra(g, bf.clone());
    if opts.paranoid {
        galg.revalidate_exhaustive()?;
    }
    let blocks = block_decomposition(g, bf.clone(), opts.seed)?;
    let mut block_reports = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        let defect = defect_groups(g, b, p)?;
        let support: Vec<String> = b
            .idempotent
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| g.name(i as u32).to_string())
            .collect();
        let hh1 = hh1_dim(&b.algebra);
        let inertial = if defect.order() > 1 {
            let pair = max_brauer_pair(g, bf.clone(), b, &defect.rep, opts.seed)?;
            let e = inertial_quotient(g, &pair, p)?;
            Some(serde_json::json!({
                "order": e.order(),
                "abelian": e.is_abelian(),
                "cyclic": e.is_cyclic(),
            }))
        } else {
            None
        };
        let pipeline = block_nonvanishing_pipeline(g, bf.clone(), b, &defect, p)?;
        block_reports.push(serde_json::json!({
            "index": bi,
            "dim": b.algebra.dim,
            "is_principal": b.is_principal,
            "augmentation": if b.is_principal { 1 } else { 0 },
            "support_size": support.len(),
            "defect_order": defect.order(),
            "defect_generators": names(entry, defect.rep.members()),
            "hh1": hh1,
            "inertial_quotient": inertial,
            "pipeline": {
                "non_p_perfect": pipeline.non_p_perfect,
                "scott_trivial": pipeline.scott_trivial,
                "hypotheses_met": pipeline.hypotheses_met,
                "conjugation_trivial_summand": pipeline.conj_trivial_summand,
                "hh1": pipeline.hh1_dim,
                "h1_conjugation": pipeline.h1_conjugation_dim,
                "confirmed": pipeline.confirmed,
            },
        }));
    }

    let properties = PropertyReport {
        group: entry.name.clone(),
        prime: p,
        commutator_index_set: cset.clone(),
        strong_nonschur_paper: ns_paper.clone(),
        strong_nonschur_sylow: ns_sylow.clone(),
        conditions,
        witnesses,
    };

    Ok(serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "bca",
        "version": env!("CARGO_PKG_VERSION"),
        "group": entry.name,
        "source": entry.source,
        "order": n,
        "prime": p,
        "m": m,
        "field": {"p": field.p(), "e": field.e(), "q": field.q()},
        "splitting_field_q": bf.q(),
        "seed": opts.seed,
        "conjugacy_classes": class_info,
        "abelianization": ab_factors,
        "p_perfect": g.is_p_perfect(p),
        "sylow": {
            "order": syl.order(),
            "normal": syl.is_normal(g),
        },
        "commutator_index_set": names(entry, &cset),
        "strong_nonschur_paper": names(entry, &ns_paper),
        "strong_nonschur_sylow": names(entry, &ns_sylow),
        "properties": properties,
        "sufficient_conditions": conditions,
        "h2": {
            "invariant_factors": h2.invariant_factors,
            "class_count": h2.total_classes.to_string(),
            "truncated": h2.truncated,
        },
        "classes": class_reports,
        "blocks": block_reports,
    }))
}
