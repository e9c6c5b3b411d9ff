//! Factorization enumeration over the catalog and the theorem
//! verification campaign.
//!
//! For every catalog group the harness enumerates the subgroup pairs
//! `{A, B}` with `AB = G` (optionally deduplicated under simultaneous
//! conjugation), attaches an msp verdict and class flags to each, and
//! then drives a battery of per-theorem checks. Each check counts the
//! instances it inspected, the instances whose hypothesis held, and
//! records a fully serialized counterexample for any conclusion that
//! failed; the expected number of violations is zero everywhere.

pub mod replay;
pub mod report;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;

use crate::arith::{p_part, prime_divisors};
use crate::classes::{
    node_in_class, node_p_closed, node_p_nilpotent, vu_characterization_analyzed,
    wu_characterization_analyzed, ClassId,
};
use crate::construct::{standard_catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::permutability::{node_msp, node_product};
use crate::structure::{
    verify_primitive_soluble_structure_analyzed, GroupAnalysis, QuotientData,
};
use crate::sylow::hall_property_record_analyzed;

use report::{
    CampaignOutcome, ClassConsistencyReport, ConfigEcho, ControlEntry, GroupDescriptor,
    SkipEntry, SubgroupDescriptor, VerificationReport, Violation, ViolationKind,
};

pub const DEFAULT_MAX_ORDER: u64 = 60;

/// Classes recorded on every factorization record.
pub const RECORD_CLASSES: [ClassId; 6] = [
    ClassId::Soluble,
    ClassId::Nilpotent,
    ClassId::SupersolubleU,
    ClassId::WU,
    ClassId::VU,
    ClassId::TowerD,
];

/// The base theorem identifiers accepted by campaign selection.
pub const BASE_THEOREM_IDS: [&str; 12] = [
    "l3",
    "l4",
    "l7",
    "l10",
    "l11",
    "l12",
    "l13",
    "l_skiba",
    "l_commprod",
    "l_normalizer",
    "th2",
    "corollary",
];

/// One factorization `G = A·B` with verdicts attached.
#[derive(Debug, Clone)]
pub struct FactorizationRecord {
    pub group_name: String,
    /// Lattice node indices of the two factors (`a ≤ b`).
    pub a: usize,
    pub b: usize,
    pub msp: MspSummary,
    /// Class membership of A, B and G over [`RECORD_CLASSES`].
    pub class_flags: FactorClassFlags,
}

#[derive(Debug, Clone)]
pub struct MspSummary {
    pub holds: bool,
    pub product_is_subgroup: bool,
    pub failing: Option<MspFailingPair>,
}

#[derive(Debug, Clone)]
pub struct MspFailingPair {
    pub p: u64,
    pub q: u64,
    pub sylow_a: usize,
    pub sylow_b: usize,
    pub witness: usize,
    pub witness_from_first: bool,
}

#[derive(Debug, Clone)]
pub struct FactorClassFlags {
    pub a: [bool; 6],
    pub b: [bool; 6],
    pub g: [bool; 6],
}

impl FactorClassFlags {
    pub fn of(&self, side: char, class: ClassId) -> bool {
        let idx = RECORD_CLASSES
            .iter()
            .position(|&c| c == class)
            .expect("class recorded");
        match side {
            'a' => self.a[idx],
            'b' => self.b[idx],
            _ => self.g[idx],
        }
    }
}

/// All unordered pairs `{A, B}` of lattice nodes with `A·B = G` setwise.
/// `|A·B| = |A|·|B| / |A∩B|` holds for plain sets, so the product fills
/// `G` exactly when that quantity equals `|G|`. Trivial factorizations
/// (`A = G`) are included. With `dedup` on, only the canonical
/// representative of each simultaneous-conjugation orbit is kept (the
/// lexicographically least normalized index pair).
pub fn enumerate_factorizations(
    an: &GroupAnalysis,
    group_name: &str,
    dedup: bool,
) -> Vec<FactorizationRecord> {
    let lat = an.lattice();
    let count = lat.node_count();
    let g_order = an.order();

    // node image under conjugation by each generator
    let t = an.tables();
    let conj_maps: Vec<Vec<usize>> = t
        .gen_ids
        .iter()
        .map(|&g| {
            (0..count)
                .map(|k| {
                    an.find_set(&t.conj_set(&lat.node(k).set, g))
                        .expect("conjugates of subgroups are subgroups")
                })
                .collect()
        })
        .collect();

    let normalize = |x: usize, y: usize| (x.min(y), x.max(y));
    let mut records = Vec::new();
    for a in 0..count {
        for b in a..count {
            let inter = lat.node(a).set.intersect(&lat.node(b).set).len() as u64;
            if lat.node_order(a) * lat.node_order(b) / inter != g_order {
                continue;
            }
            if dedup {
                // walk the orbit of the pair; keep only the canonical rep
                let start = (a, b);
                let mut seen = vec![start];
                let mut queue = vec![start];
                let mut minimal = start;
                let mut is_canonical = true;
                while let Some((x, y)) = queue.pop() {
                    for map in &conj_maps {
                        let next = normalize(map[x], map[y]);
                        if !seen.contains(&next) {
                            seen.push(next);
                            queue.push(next);
                            if next < minimal {
                                minimal = next;
                                is_canonical = false;
                            }
                        }
                    }
                }
                if !is_canonical {
                    continue;
                }
            }
            let verdict = node_msp(an, a, b);
            let flag = |node: usize| -> [bool; 6] {
                let mut out = [false; 6];
                for (i, &c) in RECORD_CLASSES.iter().enumerate() {
                    out[i] = node_in_class(an, node, c);
                }
                out
            };
            records.push(FactorizationRecord {
                group_name: group_name.to_string(),
                a,
                b,
                msp: MspSummary {
                    holds: verdict.holds,
                    product_is_subgroup: verdict.product_is_subgroup,
                    failing: verdict.failing_pair.map(|f| MspFailingPair {
                        p: f.p,
                        q: f.q,
                        sylow_a: f.sylow_p_of_a,
                        sylow_b: f.sylow_q_of_b,
                        witness: f.witness.witness,
                        witness_from_first: f.witness.from_first,
                    }),
                },
                class_flags: FactorClassFlags {
                    a: flag(a),
                    b: flag(b),
                    g: flag(lat.top_node()),
                },
            });
        }
    }
    records
}

/// Per-group scanning context shared by the checks.
pub(crate) struct GroupScan<'a> {
    pub name: &'a str,
    pub an: &'a GroupAnalysis,
    pub records: &'a [FactorizationRecord],
    quotients: Mutex<HashMap<usize, Arc<QuotientData>>>,
}

impl<'a> GroupScan<'a> {
    fn new(name: &'a str, an: &'a GroupAnalysis, records: &'a [FactorizationRecord]) -> Self {
        GroupScan {
            name,
            an,
            records,
            quotients: Mutex::new(HashMap::new()),
        }
    }

    fn quotient(&self, n_node: usize) -> Arc<QuotientData> {
        let mut cache = self.quotients.lock().unwrap();
        cache
            .entry(n_node)
            .or_insert_with(|| {
                Arc::new(
                    self.an
                        .quotient_data(n_node)
                        .expect("normal nodes admit quotients"),
                )
            })
            .clone()
    }

    fn quotient_in_class(&self, n_node: usize, class: ClassId) -> bool {
        let q = self.quotient(n_node);
        let top = q.analysis.lattice().top_node();
        node_in_class(&q.analysis, top, class)
    }

    fn group_descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            name: self.name.to_string(),
            degree: self.an.group().degree(),
            generators: self
                .an
                .group()
                .generators()
                .iter()
                .map(|g| g.to_cycle_string())
                .collect(),
        }
    }

    fn subgroup_descriptor(&self, role: &str, node: usize) -> SubgroupDescriptor {
        SubgroupDescriptor {
            role: role.to_string(),
            order: self.an.node_order(node),
            elements: self
                .an
                .node_elements(node)
                .iter()
                .map(|p| p.to_cycle_string())
                .collect(),
        }
    }

    fn violation(
        &self,
        theorem_id: &str,
        kind: ViolationKind,
        subgroups: Vec<SubgroupDescriptor>,
        params: BTreeMap<String, String>,
        detail: String,
    ) -> Violation {
        Violation {
            theorem_id: theorem_id.to_string(),
            kind,
            group: self.group_descriptor(),
            subgroups,
            params,
            detail,
        }
    }
}

fn class_param(class: ClassId) -> BTreeMap<String, String> {
    BTreeMap::from([("class".to_string(), class.to_string())])
}

const FORMATIONS_UWV: [ClassId; 3] = [ClassId::SupersolubleU, ClassId::WU, ClassId::VU];

// ---------------------------------------------------------------------------
// Individual checks (each produces a partial report for one group)
// ---------------------------------------------------------------------------

fn check_l3(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l3");
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    for class in FORMATIONS_UWV {
        rep.factorizations_scanned += 1;
        if node_in_class(an, top, class) {
            continue;
        }
        let nontrivial_normals: Vec<usize> = (1..an.lattice().node_count())
            .filter(|&k| an.lattice().is_normal_node(k))
            .collect();
        if !nontrivial_normals
            .iter()
            .all(|&n| scan.quotient_in_class(n, class))
        {
            continue;
        }
        rep.hypothesis_hits += 1;
        if an.primitivator_nodes().is_empty() {
            rep.violations.push(scan.violation(
                "l3",
                ViolationKind::MainClaim,
                vec![],
                class_param(class),
                format!(
                    "all proper quotients lie in {class} and the group does not, \
                     yet no maximal subgroup has trivial core"
                ),
            ));
        }
    }
    rep
}

fn check_l4(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l4");
    rep.groups_scanned = 1;
    let checks = verify_primitive_soluble_structure_analyzed(scan.an);
    rep.factorizations_scanned = checks.primitivators.len() as u64;
    if !checks.precondition_ok {
        return rep;
    }
    rep.hypothesis_hits = 1;
    if !checks.all_hold() {
        rep.violations.push(scan.violation(
            "l4",
            ViolationKind::MainClaim,
            vec![],
            BTreeMap::new(),
            format!("primitive soluble structure check failed: {checks:?}"),
        ));
    }
    rep
}

fn check_l7(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l7");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let top = lat.top_node();
    for record in scan.records.iter().filter(|r| r.msp.holds) {
        for p in prime_divisors(an.order()) {
            let sylows = an.sylow_nodes_in(top, p);
            if sylows.len() != 1 || !an.classes().abelian(sylows[0]) {
                continue;
            }
            let sylow = sylows[0];
            rep.factorizations_scanned += 1;
            rep.hypothesis_hits += 1;
            for (role, factor) in [("A", record.a), ("B", record.b)] {
                let inter = lat.node(sylow).set.intersect(&lat.node(factor).set);
                let node = an.find_set(&inter).expect("intersections are subgroups");
                if !lat.is_normal_node(node) {
                    rep.violations.push(scan.violation(
                        "l7",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("A", record.a),
                            scan.subgroup_descriptor("B", record.b),
                            scan.subgroup_descriptor("P", sylow),
                        ],
                        BTreeMap::from([("p".to_string(), p.to_string())]),
                        format!("P ∩ {role} is not normal in G"),
                    ));
                }
            }
        }
    }
    rep
}

fn check_l10_1(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l10.1");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let normals: Vec<usize> = (0..lat.node_count())
        .filter(|&k| lat.is_normal_node(k))
        .collect();
    for record in scan.records.iter().filter(|r| r.msp.holds) {
        for &n in &normals {
            rep.factorizations_scanned += 1;
            rep.hypothesis_hits += 1;
            let q = scan.quotient(n);
            let a_img = q.image_node(&lat.node(record.a).set);
            let b_img = q.image_node(&lat.node(record.b).set);
            let verdict = node_msp(&q.analysis, a_img, b_img);
            if !verdict.holds {
                rep.violations.push(scan.violation(
                    "l10.1",
                    ViolationKind::MainClaim,
                    vec![
                        scan.subgroup_descriptor("A", record.a),
                        scan.subgroup_descriptor("B", record.b),
                        scan.subgroup_descriptor("N", n),
                    ],
                    BTreeMap::new(),
                    "images in G/N are not msp-permutable".to_string(),
                ));
            }
        }
    }
    rep
}

fn check_l10_2(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l10.2");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    for record in scan.records.iter().filter(|r| r.msp.holds) {
        let mut orientations = vec![(record.a, record.b)];
        if record.a != record.b {
            orientations.push((record.b, record.a));
        }
        for (a, b) in orientations {
            for h in 0..lat.node_count() {
                if !lat.contains_node(h, a) {
                    continue;
                }
                rep.factorizations_scanned += 1;
                rep.hypothesis_hits += 1;
                let inter = lat.node(h).set.intersect(&lat.node(b).set);
                let hb = an.find_set(&inter).expect("intersections are subgroups");
                let product_ok = node_product(an, a, hb) == Some(h);
                let msp_ok = node_msp(an, a, hb).holds;
                if !(product_ok && msp_ok) {
                    rep.violations.push(scan.violation(
                        "l10.2",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("A", a),
                            scan.subgroup_descriptor("B", b),
                            scan.subgroup_descriptor("H", h),
                        ],
                        BTreeMap::new(),
                        format!(
                            "H is not the msp-permutable product of A and H∩B \
                             (product ok: {product_ok}, msp ok: {msp_ok})"
                        ),
                    ));
                }
            }
        }
    }
    rep
}

fn check_l10_3(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l10.3");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let top = lat.top_node();
    let primes = prime_divisors(an.order());
    let mut pi_sets: Vec<Vec<u64>> = Vec::new();
    for mask in 1u32..(1 << primes.len()) {
        pi_sets.push(
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect(),
        );
    }
    let d_sets: Vec<(Vec<u64>, Vec<usize>)> = pi_sets
        .into_iter()
        .filter(|pi| hall_property_record_analyzed(an, pi).d_holds)
        .map(|pi| {
            let halls = an.hall_nodes_in(top, &pi);
            (pi, halls)
        })
        .collect();

    for record in scan.records.iter().filter(|r| r.msp.holds) {
        for (pi, g_halls) in &d_sets {
            rep.factorizations_scanned += 1;
            rep.hypothesis_hits += 1;
            let a_halls = an.hall_nodes_in(record.a, pi);
            let b_halls = an.hall_nodes_in(record.b, pi);
            let mut product_triple_found = false;
            let mut msp_triple_found = false;
            'search: for &ga in g_halls {
                for &ha in &a_halls {
                    for &hb in &b_halls {
                        if node_product(an, ha, hb) == Some(ga) {
                            product_triple_found = true;
                            if node_msp(an, ha, hb).holds {
                                msp_triple_found = true;
                                break 'search;
                            }
                        }
                    }
                }
            }
            if !msp_triple_found {
                let pi_text = pi
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let (kind, detail) = if product_triple_found {
                    (
                        ViolationKind::MainClaim,
                        "Hall triples with G_π = A_π·B_π exist but none is msp-permutable",
                    )
                } else {
                    (
                        ViolationKind::CitedTheorem,
                        "no Hall subgroups with G_π = A_π·B_π exist despite D_π",
                    )
                };
                rep.violations.push(scan.violation(
                    "l10.3",
                    kind,
                    vec![
                        scan.subgroup_descriptor("A", record.a),
                        scan.subgroup_descriptor("B", record.b),
                    ],
                    BTreeMap::from([("pi".to_string(), pi_text)]),
                    detail.to_string(),
                ));
            }
        }
    }
    rep
}

fn check_l11(scan: &GroupScan, part: u8) -> VerificationReport {
    let mut rep = VerificationReport::new(&format!("l11.{part}"));
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    let primes = prime_divisors(an.order());
    if primes.is_empty() {
        return rep;
    }
    let p_max = *primes.last().unwrap();
    let r_min = primes[0];
    for record in scan.records.iter().filter(|r| r.msp.holds) {
        rep.factorizations_scanned += 1;
        let (hypothesis, conclusion, tag): (bool, bool, String) = match part {
            1 => (
                node_p_closed(an, record.a, p_max) && node_p_closed(an, record.b, p_max),
                node_p_closed(an, top, p_max),
                format!("p-closed at greatest prime {p_max}"),
            ),
            2 => (
                node_p_nilpotent(an, record.a, r_min) && node_p_nilpotent(an, record.b, r_min),
                node_p_nilpotent(an, top, r_min),
                format!("r-nilpotent at smallest prime {r_min}"),
            ),
            _ => (
                an.classes().tower(record.a) && an.classes().tower(record.b),
                an.classes().tower(top),
                "ordered Sylow tower of supersoluble type".to_string(),
            ),
        };
        if hypothesis {
            rep.hypothesis_hits += 1;
            if !conclusion {
                rep.violations.push(scan.violation(
                    &format!("l11.{part}"),
                    ViolationKind::MainClaim,
                    vec![
                        scan.subgroup_descriptor("A", record.a),
                        scan.subgroup_descriptor("B", record.b),
                    ],
                    BTreeMap::from([("property".to_string(), tag.clone())]),
                    format!("both factors have {tag} but the product does not"),
                ));
            }
        }
    }
    rep
}

fn check_l12(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l12");
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    let g_soluble = an.classes().soluble(top);
    for record in scan.records {
        rep.factorizations_scanned += 1;
        let factors_soluble = record.class_flags.of('a', ClassId::Soluble)
            && record.class_flags.of('b', ClassId::Soluble);
        if record.msp.holds && factors_soluble {
            rep.hypothesis_hits += 1;
            if !g_soluble {
                rep.violations.push(scan.violation(
                    "l12",
                    ViolationKind::MainClaim,
                    vec![
                        scan.subgroup_descriptor("A", record.a),
                        scan.subgroup_descriptor("B", record.b),
                    ],
                    BTreeMap::new(),
                    "soluble msp-permutable factors with insoluble product".to_string(),
                ));
            }
        }
        if !record.msp.holds && factors_soluble && !g_soluble {
            rep.negative_controls.push(ControlEntry {
                control: "solubility-consistency".to_string(),
                group: scan.name.to_string(),
                a_order: an.node_order(record.a),
                b_order: an.node_order(record.b),
                detail: "soluble factors, msp fails, product insoluble".to_string(),
            });
        }
    }
    rep
}

fn check_l13(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l13");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let mut core_cache: HashMap<usize, usize> = HashMap::new();
    for record in scan.records {
        let mut orientations = vec![(record.a, record.b)];
        if record.a != record.b {
            orientations.push((record.b, record.a));
        }
        for (h, k) in orientations {
            let inter = lat.node(h).set.intersect(&lat.node(k).set);
            let hk = an.find_set(&inter).expect("intersections are subgroups");
            for l in lat.nodes_under(hk) {
                if !an.node_normal_in(l, h) {
                    continue;
                }
                rep.factorizations_scanned += 1;
                rep.hypothesis_hits += 1;
                let core_k = *core_cache.entry(k).or_insert_with(|| an.core_node(k));
                if !lat.contains_node(core_k, l) {
                    rep.violations.push(scan.violation(
                        "l13",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("H", h),
                            scan.subgroup_descriptor("K", k),
                            scan.subgroup_descriptor("L", l),
                        ],
                        BTreeMap::new(),
                        "L is normal in H and contained in K but not in the core of K"
                            .to_string(),
                    ));
                }
            }
        }
    }
    rep
}

fn check_l_skiba(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l_skiba");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let top = lat.top_node();
    for e in 0..lat.node_count() {
        if !lat.is_normal_node(e) || !an.classes().cyclic(e) {
            continue;
        }
        for class in FORMATIONS_UWV {
            rep.factorizations_scanned += 1;
            if !scan.quotient_in_class(e, class) {
                continue;
            }
            rep.hypothesis_hits += 1;
            if !node_in_class(an, top, class) {
                rep.violations.push(scan.violation(
                    "l_skiba",
                    ViolationKind::MainClaim,
                    vec![scan.subgroup_descriptor("E", e)],
                    class_param(class),
                    format!("G/E lies in {class} with E cyclic normal but G does not"),
                ));
            }
        }
    }
    rep
}

fn check_l_commprod(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l_commprod");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let top = lat.top_node();
    let classes = [
        ClassId::SupersolubleU,
        ClassId::WU,
        ClassId::VU,
        ClassId::Soluble,
        ClassId::Nilpotent,
    ];
    let centralizers: Vec<_> = (0..lat.node_count())
        .map(|k| an.centralizer_set_in(top, k))
        .collect();
    for a in 0..lat.node_count() {
        for b in a..lat.node_count() {
            if !lat.node(b).set.is_subset(&centralizers[a]) {
                continue;
            }
            let ab = node_product(an, a, b).expect("commuting products are subgroups");
            for class in classes {
                rep.factorizations_scanned += 1;
                if !(node_in_class(an, a, class) && node_in_class(an, b, class)) {
                    continue;
                }
                rep.hypothesis_hits += 1;
                if !node_in_class(an, ab, class) {
                    rep.violations.push(scan.violation(
                        "l_commprod",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("A", a),
                            scan.subgroup_descriptor("B", b),
                        ],
                        class_param(class),
                        format!("[A,B]=1 with both factors in {class} but AB is not"),
                    ));
                }
            }
        }
    }
    rep
}

fn check_l_normalizer(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("l_normalizer");
    rep.groups_scanned = 1;
    let an = scan.an;
    let lat = an.lattice();
    let t = an.tables();
    let top = lat.top_node();
    if !an.classes().soluble(top) {
        return rep;
    }
    let prims = an.primitivator_nodes();
    if prims.is_empty() {
        return rep;
    }
    let fitting = an.fitting_node_in(top);
    let fitting_order = an.node_order(fitting);
    let primes = prime_divisors(fitting_order);
    if primes.len() != 1 {
        return rep;
    }
    let p = primes[0];
    // the hypothesis additionally requires P = F(G) to be a full Sylow
    // p-subgroup
    if fitting_order != p_part(an.order(), p) {
        return rep;
    }

    // elements normalizing every subgroup of P
    let mut normalizes_all = an.full_element_set();
    for x in lat.nodes_under(fitting) {
        normalizes_all = normalizes_all.intersect(&an.normalizer_set_of_node(x));
    }
    let centralizers: Vec<_> = (0..lat.node_count())
        .map(|k| an.centralizer_set_in(top, k))
        .collect();

    for &m in &prims {
        let m_set = &lat.node(m).set;
        for a in lat.nodes_under(m) {
            for b in lat.nodes_under(m) {
                if !lat.node(b).set.is_subset(&normalizes_all) {
                    continue;
                }
                let product = t.set_product(&lat.node(a).set, &lat.node(b).set);
                if &product != m_set {
                    continue;
                }
                rep.factorizations_scanned += 1;
                rep.hypothesis_hits += 1;
                let b_order = an.node_order(b);
                let b_cyclic = an.classes().cyclic(b);
                let divides = b_order == 1 || (p - 1) % b_order == 0;
                let commutes = lat.node(b).set.is_subset(&centralizers[a]);
                if !(b_cyclic && divides && commutes) {
                    rep.violations.push(scan.violation(
                        "l_normalizer",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("M", m),
                            scan.subgroup_descriptor("A", a),
                            scan.subgroup_descriptor("B", b),
                        ],
                        BTreeMap::from([("p".to_string(), p.to_string())]),
                        format!(
                            "B normalizes every subgroup of P but fails the conclusion \
                             (cyclic: {b_cyclic}, divides p-1: {divides}, [A,B]=1: {commutes})"
                        ),
                    ));
                }
            }
        }
    }
    rep
}

fn check_th2(scan: &GroupScan, class: ClassId, theorem_id: &str) -> VerificationReport {
    let mut rep = VerificationReport::new(theorem_id);
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    let g_in = node_in_class(an, top, class);
    for record in scan.records {
        rep.factorizations_scanned += 1;
        let factors_in = record.class_flags.of('a', class) && record.class_flags.of('b', class);
        if record.msp.holds && factors_in {
            rep.hypothesis_hits += 1;
            if !g_in {
                rep.violations.push(scan.violation(
                    theorem_id,
                    ViolationKind::MainClaim,
                    vec![
                        scan.subgroup_descriptor("A", record.a),
                        scan.subgroup_descriptor("B", record.b),
                    ],
                    class_param(class),
                    format!("msp-permutable factors in {class} with product outside {class}"),
                ));
            }
        }
        if class == ClassId::SupersolubleU
            && !record.msp.holds
            && factors_in
            && !g_in
        {
            rep.negative_controls.push(ControlEntry {
                control: "msp-filter-nonvacuous".to_string(),
                group: scan.name.to_string(),
                a_order: an.node_order(record.a),
                b_order: an.node_order(record.b),
                detail: "supersoluble factors, msp fails, product not supersoluble"
                    .to_string(),
            });
        }
    }
    rep
}

fn check_corollary(scan: &GroupScan) -> VerificationReport {
    let mut rep = VerificationReport::new("corollary");
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    for record in scan.records {
        for class in FORMATIONS_UWV {
            rep.factorizations_scanned += 1;
            let factors_in =
                record.class_flags.of('a', class) && record.class_flags.of('b', class);
            if record.msp.holds && factors_in {
                rep.hypothesis_hits += 1;
                if !node_in_class(an, top, class) {
                    rep.violations.push(scan.violation(
                        "corollary",
                        ViolationKind::MainClaim,
                        vec![
                            scan.subgroup_descriptor("A", record.a),
                            scan.subgroup_descriptor("B", record.b),
                        ],
                        class_param(class),
                        format!("corollary fails for {class}"),
                    ));
                }
            }
        }
    }
    rep
}

fn check_class_consistency(scan: &GroupScan) -> ClassConsistencyReport {
    let mut rep = ClassConsistencyReport::new();
    rep.groups_scanned = 1;
    let an = scan.an;
    let top = an.lattice().top_node();
    let table = an.classes();
    let (u, wu, vu, d) = (
        table.supersoluble(top),
        table.wu(top),
        table.vu(top),
        table.tower(top),
    );
    if u && !wu {
        rep.chain_violations.push(format!("{}: U but not wU", scan.name));
    }
    if wu && !vu {
        rep.chain_violations.push(format!("{}: wU but not vU", scan.name));
    }
    if vu && !d {
        rep.chain_violations.push(format!("{}: vU but not D", scan.name));
    }
    let wu_char = wu_characterization_analyzed(an);
    if !wu_char.variants_agree() {
        rep.characterization_disagreements.push(format!(
            "{}: wU characterization variants disagree (metanilpotent: {}, biprimary: {})",
            scan.name, wu_char.metanilpotent_variant, wu_char.biprimary_variant
        ));
    }
    if wu_char.holds() != wu {
        rep.characterization_disagreements.push(format!(
            "{}: wU direct={} characterization={}",
            scan.name,
            wu,
            wu_char.holds()
        ));
    }
    let vu_char = vu_characterization_analyzed(an);
    if vu_char.holds() != vu {
        rep.characterization_disagreements.push(format!(
            "{}: vU direct={} characterization={}",
            scan.name,
            vu,
            vu_char.holds()
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// Campaign driver
// ---------------------------------------------------------------------------

/// Campaign configuration; the defaults reproduce the standard run.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub max_order: u64,
    pub lattice_cap: u64,
    /// Base theorem ids (or `all`); empty means all.
    pub theorems: Vec<String>,
    /// Classes for the main theorem; must be drawn from `U`, `wU`, `vU`.
    pub classes: Vec<ClassId>,
    pub dedup_conjugate_pairs: bool,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub extra_groups: Vec<CatalogEntry>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            max_order: DEFAULT_MAX_ORDER,
            lattice_cap: crate::structure::DEFAULT_LATTICE_CAP,
            theorems: Vec::new(),
            classes: FORMATIONS_UWV.to_vec(),
            dedup_conjugate_pairs: true,
            workers: 0,
            extra_groups: Vec::new(),
        }
    }
}

/// Expands base theorem ids into the ordered list of sub-check ids.
/// `class_consistency` runs exactly when the selection is `all`.
pub fn expand_selection(config: &CampaignConfig) -> Result<(Vec<String>, bool)> {
    for class in &config.classes {
        if !FORMATIONS_UWV.contains(class) {
            return Err(Error::InvalidParameter(format!(
                "class {class} is not available for the main theorem (use U, wU, vU)"
            )));
        }
    }
    let all = config.theorems.is_empty()
        || config.theorems.iter().any(|t| t == "all");
    let mut bases: Vec<String> = if all {
        BASE_THEOREM_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        config.theorems.clone()
    };
    bases.dedup();
    let mut ids = Vec::new();
    for base in &bases {
        match base.as_str() {
            "l3" | "l4" | "l7" | "l12" | "l13" | "l_skiba" | "l_commprod" | "l_normalizer"
            | "corollary" => ids.push(base.clone()),
            "l10" => ids.extend(["l10.1", "l10.2", "l10.3"].map(String::from)),
            "l11" => ids.extend(["l11.1", "l11.2", "l11.3"].map(String::from)),
            "th2" => {
                for class in &config.classes {
                    ids.push(format!("th2.{class}"));
                }
            }
            sub if sub.starts_with("l10.") || sub.starts_with("l11.") || sub.starts_with("th2.") => {
                ids.push(sub.to_string())
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown theorem id {other:?}"
                )))
            }
        }
    }
    Ok((ids, all))
}

fn run_check_on_group(id: &str, scan: &GroupScan) -> VerificationReport {
    match id {
        "l3" => check_l3(scan),
        "l4" => check_l4(scan),
        "l7" => check_l7(scan),
        "l10.1" => check_l10_1(scan),
        "l10.2" => check_l10_2(scan),
        "l10.3" => check_l10_3(scan),
        "l11.1" => check_l11(scan, 1),
        "l11.2" => check_l11(scan, 2),
        "l11.3" => check_l11(scan, 3),
        "l12" => check_l12(scan),
        "l13" => check_l13(scan),
        "l_skiba" => check_l_skiba(scan),
        "l_commprod" => check_l_commprod(scan),
        "l_normalizer" => check_l_normalizer(scan),
        "corollary" => check_corollary(scan),
        th2 if th2.starts_with("th2.") => {
            let tag = &th2[4..];
            let class: ClassId = tag.parse().expect("validated at selection time");
            check_th2(scan, class, th2)
        }
        other => unreachable!("unknown check id {other}"),
    }
}

struct GroupOutcome {
    partials: Vec<VerificationReport>,
    consistency: Option<ClassConsistencyReport>,
    skip: Option<SkipEntry>,
}

fn scan_group(
    entry: &CatalogEntry,
    selection: &[String],
    run_consistency: bool,
    config: &CampaignConfig,
) -> GroupOutcome {
    let analysis = match GroupAnalysis::with_cap(entry.group.clone(), config.lattice_cap) {
        Ok(an) => an,
        Err(e) => {
            return GroupOutcome {
                partials: Vec::new(),
                consistency: None,
                skip: Some(SkipEntry {
                    group: entry.name.clone(),
                    what: "analysis".to_string(),
                    reason: e.to_string(),
                }),
            }
        }
    };
    let records =
        enumerate_factorizations(&analysis, &entry.name, config.dedup_conjugate_pairs);
    let scan = GroupScan::new(&entry.name, &analysis, &records);
    let partials = selection
        .iter()
        .map(|id| run_check_on_group(id, &scan))
        .collect();
    let consistency = run_consistency.then(|| check_class_consistency(&scan));
    GroupOutcome {
        partials,
        consistency,
        skip: None,
    }
}

/// Runs the selected checks over `standard_catalog(max_order)` plus any
/// extra groups, in parallel across groups, merging results in catalog
/// order so output is deterministic for a fixed configuration.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignOutcome> {
    let (selection, all) = expand_selection(config)?;
    let mut catalog = standard_catalog(config.max_order)?;
    catalog.extend(config.extra_groups.iter().cloned());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let started = Instant::now();
    let outcomes: Vec<GroupOutcome> = pool.install(|| {
        catalog
            .par_iter()
            .map(|entry| scan_group(entry, &selection, all, config))
            .collect()
    });
    let elapsed = started.elapsed();

    let mut reports: Vec<VerificationReport> = selection
        .iter()
        .map(|id| VerificationReport::new(id))
        .collect();
    let mut consistency = all.then(ClassConsistencyReport::new);
    let mut skips = Vec::new();
    for outcome in outcomes {
        if let Some(skip) = outcome.skip {
            skips.push(skip);
            continue;
        }
        for (merged, partial) in reports.iter_mut().zip(outcome.partials) {
            merged.absorb(partial);
        }
        if let (Some(total), Some(part)) = (consistency.as_mut(), outcome.consistency) {
            total.groups_scanned += part.groups_scanned;
            total.chain_violations.extend(part.chain_violations);
            total
                .characterization_disagreements
                .extend(part.characterization_disagreements);
        }
    }
    // spread the wall-clock time across reports for display purposes
    let share = elapsed / reports.len().max(1) as u32;
    for report in &mut reports {
        report.elapsed = share;
    }

    let config_echo = ConfigEcho {
        max_order: config.max_order,
        lattice_cap: config.lattice_cap,
        theorems: selection,
        classes: config.classes.iter().map(|c| c.to_string()).collect(),
        dedup_conjugate_pairs: config.dedup_conjugate_pairs,
        workers: config.workers,
        catalog_groups: catalog.len() as u64,
        extra_groups: config
            .extra_groups
            .iter()
            .map(|e| e.name.clone())
            .collect(),
    };
    Ok(CampaignOutcome {
        config: config_echo,
        reports,
        consistency,
        skips,
    })
}
