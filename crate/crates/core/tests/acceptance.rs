//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see them on success).

use std::collections::HashSet;
use std::time::Instant;

use grouplab::classes::{
    node_in_class, vu_characterization_analyzed, wu_characterization_analyzed, ClassId,
};
use grouplab::construct::{quotient_as_group, standard_catalog};
use grouplab::harness::{run_campaign, CampaignConfig};
use grouplab::perm::Perm;
use grouplab::structure::GroupAnalysis;
use grouplab::Group;

fn report(criterion: &str, started: Instant) {
    println!(
        "ACCEPTANCE {criterion}: PASS in {:.1}s",
        started.elapsed().as_secs_f64()
    );
}

/// Exhaustive closure of the generators, independent of the stabilizer
/// chain.
fn closure_count(group: &Group) -> usize {
    let mut set: HashSet<Perm> = HashSet::new();
    let identity = Perm::identity(group.degree());
    set.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(e) = frontier.pop() {
        for g in group.generators() {
            let next = e.compose(g).unwrap();
            if set.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    set.len()
}

#[test]
fn criterion_1_engine_oracle_equivalence() {
    let started = Instant::now();
    let catalog = standard_catalog(200).unwrap();
    for entry in &catalog {
        assert_eq!(
            entry.group.order() as usize,
            closure_count(&entry.group),
            "chain order differs from exhaustive closure for {}",
            entry.name
        );
    }
    let mut lattices_checked = 0;
    for entry in catalog.iter().filter(|e| e.group.order() <= 48) {
        let fast = GroupAnalysis::new(entry.group.clone()).unwrap();
        let slow = GroupAnalysis::with_exhaustive_lattice(entry.group.clone(), 400).unwrap();
        assert_eq!(
            fast.lattice().node_count(),
            slow.lattice().node_count(),
            "lattice size differs for {}",
            entry.name
        );
        for k in 0..fast.lattice().node_count() {
            assert_eq!(
                fast.node_elements(k),
                slow.node_elements(k),
                "lattice node {k} differs for {}",
                entry.name
            );
        }
        lattices_checked += 1;
    }
    assert!(lattices_checked >= 200);
    report(
        "1 (chain order vs closure ≤ 200; cyclic-extension vs subset-closure lattice ≤ 48)",
        started,
    );
}

#[test]
fn criterion_2_known_value_spot_checks() {
    let started = Instant::now();
    let catalog = standard_catalog(60).unwrap();
    let find = |name: &str| -> Group {
        catalog
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("{name} in catalog"))
            .group
            .clone()
    };

    let s3 = GroupAnalysis::new(find("S3")).unwrap();
    assert_eq!(s3.lattice().node_count(), 6);

    let e4 = GroupAnalysis::new(find("E4")).unwrap();
    assert_eq!(e4.lattice().node_count(), 5);

    let d8 = GroupAnalysis::new(find("D8")).unwrap();
    assert_eq!(d8.node_order(d8.frattini_node()), 2);

    let s4 = GroupAnalysis::new(find("S4")).unwrap();
    let top = s4.lattice().top_node();
    assert_eq!(s4.node_order(s4.fitting_node_in(top)), 4);
    assert_eq!(s4.chief_factor_orders_of(top), vec![4, 3, 2]);

    let a5 = GroupAnalysis::new(find("A5")).unwrap();
    assert!(a5.hall_nodes_in(a5.lattice().top_node(), &[2, 5]).is_empty());

    report(
        "2 (|sub(S3)|=6, |sub(E4)|=5, |Φ(D8)|=2, F(S4)=V4, chief(S4)={4,3,2}, A5 has no Hall {2,5})",
        started,
    );
}

#[test]
fn criterion_3_class_chain_and_characterizations() {
    let started = Instant::now();
    let catalog = standard_catalog(60).unwrap();
    let mut disagreements = Vec::new();
    for entry in &catalog {
        let an = GroupAnalysis::new(entry.group.clone()).unwrap();
        let top = an.lattice().top_node();
        let t = an.classes();
        let (u, wu, vu, d) = (
            t.supersoluble(top),
            t.wu(top),
            t.vu(top),
            t.tower(top),
        );
        if (u && !wu) || (wu && !vu) || (vu && !d) {
            disagreements.push(format!("{}: chain broken", entry.name));
        }
        let wu_char = wu_characterization_analyzed(&an);
        if !wu_char.variants_agree() || wu_char.holds() != wu {
            disagreements.push(format!("{}: wU characterization", entry.name));
        }
        let vu_char = vu_characterization_analyzed(&an);
        if vu_char.holds() != vu {
            disagreements.push(format!("{}: vU characterization", entry.name));
        }
    }
    assert!(
        disagreements.is_empty(),
        "class consistency failures: {disagreements:?}"
    );
    report(
        "3 (U ⊆ wU ⊆ vU ⊆ D pointwise and characterization agreement on the full catalog)",
        started,
    );
}

#[test]
fn criterion_4_default_campaign_has_zero_violations() {
    let started = Instant::now();
    let outcome = run_campaign(&CampaignConfig::default()).unwrap();
    assert!(outcome.skips.is_empty(), "default campaign skipped groups");
    for rep in &outcome.reports {
        assert!(
            rep.violations.is_empty(),
            "{} violations: {:?}",
            rep.theorem_id,
            rep.violations
        );
    }
    if let Some(c) = &outcome.consistency {
        assert!(c.clean(), "class consistency: {c:?}");
    }
    let th2u = outcome
        .reports
        .iter()
        .find(|r| r.theorem_id == "th2.U")
        .unwrap();
    assert!(th2u.hypothesis_hits > 0, "th2.U had no hypothesis hits");
    report(
        "4 (default campaign, all theorems, zero violations, nonzero th2.U hits)",
        started,
    );
}

#[test]
fn criterion_5_negative_controls() {
    let started = Instant::now();
    let outcome = run_campaign(&CampaignConfig::default()).unwrap();

    let th2u = outcome
        .reports
        .iter()
        .find(|r| r.theorem_id == "th2.U")
        .unwrap();
    assert!(
        th2u.negative_controls
            .iter()
            .any(|c| c.group == "A4" && c.a_order.min(c.b_order) == 3
                && c.a_order.max(c.b_order) == 4),
        "A4 = V4·C3 msp-filter control missing"
    );

    let l12 = outcome
        .reports
        .iter()
        .find(|r| r.theorem_id == "l12")
        .unwrap();
    assert!(
        l12.negative_controls
            .iter()
            .any(|c| c.group == "A5" && c.a_order.min(c.b_order) == 5
                && c.a_order.max(c.b_order) == 12),
        "A5 = A4·C5 solubility control missing"
    );
    report(
        "5 (controls: A4 = V4·C3 with msp false and G ∉ U; A5 = A4·C5 with soluble factors, msp false)",
        started,
    );
}

#[test]
fn criterion_6_byte_identical_bundles() {
    let started = Instant::now();
    let tmp = std::env::temp_dir().join("grouplab-acceptance-determinism");
    std::fs::remove_dir_all(&tmp).ok();
    let config = CampaignConfig {
        workers: 2,
        ..CampaignConfig::default()
    };
    let dirs: Vec<std::path::PathBuf> = ["first", "second"]
        .iter()
        .map(|tag| {
            let dir = tmp.join(tag);
            std::fs::create_dir_all(&dir).unwrap();
            let outcome = run_campaign(&config).unwrap();
            outcome.write_bundle(&dir).unwrap();
            dir
        })
        .collect();
    let mut files: Vec<std::path::PathBuf> = vec![
        "config.json".into(),
        "summary.tsv".into(),
        "skips.json".into(),
    ];
    for entry in std::fs::read_dir(dirs[0].join("reports")).unwrap() {
        files.push(std::path::Path::new("reports").join(entry.unwrap().file_name()));
    }
    assert!(files.len() > 10);
    for rel in &files {
        let a = std::fs::read(dirs[0].join(rel)).unwrap();
        let b = std::fs::read(dirs[1].join(rel)).unwrap();
        assert_eq!(a, b, "{} differs between identical runs", rel.display());
    }
    std::fs::remove_dir_all(&tmp).ok();
    report("6 (byte-identical bundles across consecutive runs with workers > 1)", started);
}

#[test]
fn criterion_7_subgroup_and_quotient_closure() {
    let started = Instant::now();
    let catalog = standard_catalog(60).unwrap();
    for entry in &catalog {
        let an = GroupAnalysis::new(entry.group.clone()).unwrap();
        let top = an.lattice().top_node();
        for class in [ClassId::SupersolubleU, ClassId::WU, ClassId::VU] {
            if !node_in_class(&an, top, class) {
                continue;
            }
            for k in 0..an.lattice().node_count() {
                assert!(
                    node_in_class(&an, k, class),
                    "{class} is not subgroup-closed on {} (node of order {})",
                    entry.name,
                    an.node_order(k)
                );
            }
            for k in 0..an.lattice().node_count() {
                if !an.lattice().is_normal_node(k) {
                    continue;
                }
                let n = an.node_group(k);
                let (q, _) = quotient_as_group(&entry.group, &n).unwrap();
                assert!(
                    grouplab::classes::in_class(&q, class).unwrap(),
                    "{class} is not quotient-closed on {} (normal subgroup of order {})",
                    entry.name,
                    n.order()
                );
            }
        }
    }
    report(
        "7 (subgroup and quotient closure of U, wU, vU across the full catalog)",
        started,
    );
}
