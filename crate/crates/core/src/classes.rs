//! Membership predicates for the group classes under study: soluble,
//! nilpotent, metanilpotent, supersoluble (`U`), `p`-closed, `p`-nilpotent,
//! `wU`, `vU`, ordered Sylow towers (`D`), and `ℙ`-subnormality.
//!
//! `wU` is the class of groups whose Sylow subgroups are all ℙ-subnormal;
//! `vU` requires the same only of primary cyclic subgroups. Both also have
//! tower-based characterizations (`is_wu_characterization`,
//! `is_vu_characterization`) which are computed through an independent
//! code path and cross-checked against the direct definitions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use crate::arith::{is_prime, p_part, prime_divisors};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::GroupAnalysis;

/// Tag for a group class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ClassId {
    Soluble,
    Nilpotent,
    Metanilpotent,
    /// Supersoluble (`U`): all chief factors of prime order.
    SupersolubleU,
    /// Every Sylow subgroup ℙ-subnormal.
    WU,
    /// Every primary cyclic subgroup ℙ-subnormal.
    VU,
    /// Ordered Sylow tower of supersoluble type.
    TowerD,
    PClosed(u64),
    PNilpotent(u64),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Soluble => write!(f, "soluble"),
            ClassId::Nilpotent => write!(f, "nilpotent"),
            ClassId::Metanilpotent => write!(f, "metanilpotent"),
            ClassId::SupersolubleU => write!(f, "U"),
            ClassId::WU => write!(f, "wU"),
            ClassId::VU => write!(f, "vU"),
            ClassId::TowerD => write!(f, "D"),
            ClassId::PClosed(p) => write!(f, "p-closed:{p}"),
            ClassId::PNilpotent(p) => write!(f, "p-nilpotent:{p}"),
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_p = |rest: &str| -> Result<u64> {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad prime in class tag {s:?}")))?;
            if !is_prime(p) {
                return Err(Error::NotPrime { n: p });
            }
            Ok(p)
        };
        match s {
            "soluble" => Ok(ClassId::Soluble),
            "nilpotent" => Ok(ClassId::Nilpotent),
            "metanilpotent" => Ok(ClassId::Metanilpotent),
            "U" => Ok(ClassId::SupersolubleU),
            "wU" => Ok(ClassId::WU),
            "vU" => Ok(ClassId::VU),
            "D" => Ok(ClassId::TowerD),
            _ => {
                if let Some(rest) = s.strip_prefix("p-closed:") {
                    Ok(ClassId::PClosed(parse_p(rest)?))
                } else if let Some(rest) = s.strip_prefix("p-nilpotent:") {
                    Ok(ClassId::PNilpotent(parse_p(rest)?))
                } else {
                    Err(Error::InvalidParameter(format!("unknown class tag {s:?}")))
                }
            }
        }
    }
}

/// Per-node class membership flags for one analyzed group, computed
/// eagerly; the parametrized predicates are memoized on demand.
pub struct ClassTable {
    abelian: Vec<bool>,
    cyclic: Vec<bool>,
    primary_cyclic: Vec<bool>,
    biprimary: Vec<bool>,
    soluble: Vec<bool>,
    nilpotent: Vec<bool>,
    metanilpotent: Vec<bool>,
    supersoluble: Vec<bool>,
    tower: Vec<bool>,
    wu: Vec<bool>,
    vu: Vec<bool>,
    p_memo: Mutex<HashMap<(usize, u64, bool), bool>>,
}

impl ClassTable {
    pub(crate) fn compute(an: &GroupAnalysis) -> ClassTable {
        let t = an.tables();
        let lat = an.lattice();
        let count = lat.node_count();

        let mut abelian = vec![false; count];
        let mut cyclic = vec![false; count];
        let mut primary_cyclic = vec![false; count];
        let mut biprimary = vec![false; count];
        let mut soluble = vec![false; count];
        let mut nilpotent = vec![false; count];
        let mut supersoluble = vec![false; count];
        let mut tower = vec![false; count];

        for h in 0..count {
            let node = lat.node(h);
            let order = node.order;
            abelian[h] = node
                .gens
                .iter()
                .all(|&a| node.gens.iter().all(|&b| t.mul(a, b) == t.mul(b, a)));
            cyclic[h] = node.set.iter().any(|e| t.elem_order[e] as u64 == order);
            let primes = prime_divisors(order);
            primary_cyclic[h] = cyclic[h] && primes.len() == 1;
            biprimary[h] = primes.len() == 2;

            let mut derived = node.set.clone();
            loop {
                let next = t.derived_set(&derived);
                if next == derived {
                    break;
                }
                derived = next;
            }
            soluble[h] = derived.len() == 1;

            nilpotent[h] = primes
                .iter()
                .all(|&p| an.sylow_nodes_in(h, p).len() == 1);
            tower[h] = an.tower_witness_nodes(h).is_some();
            supersoluble[h] = an
                .chief_factor_orders_of(h)
                .iter()
                .all(|&f| is_prime(f));
        }

        let mut metanilpotent = vec![false; count];
        let mut wu = vec![false; count];
        let mut vu = vec![false; count];
        for h in 0..count {
            let order = lat.node_order(h);
            let fit = an.fitting_node_in(h);
            let fit_order = an.node_order(fit);
            metanilpotent[h] = prime_divisors(order / fit_order).iter().all(|&p| {
                let target = fit_order * p_part(order / fit_order, p);
                lat.nodes_under(h).into_iter().any(|k| {
                    lat.node_order(k) == target
                        && lat.contains_node(k, fit)
                        && an.node_normal_in(k, h)
                })
            });

            // All Sylow conjugates are quantified; by conjugation symmetry
            // this agrees with checking one representative per prime.
            let mut wu_all = true;
            let mut wu_first = true;
            for p in prime_divisors(order) {
                let sylows = an.sylow_nodes_in(h, p);
                wu_first &= an.subnormal_chain_nodes(sylows[0], h).is_some();
                wu_all &= sylows
                    .iter()
                    .all(|&s| an.subnormal_chain_nodes(s, h).is_some());
            }
            debug_assert_eq!(wu_all, wu_first);
            wu[h] = wu_all;

            vu[h] = lat
                .nodes_under(h)
                .into_iter()
                .filter(|&c| primary_cyclic[c])
                .all(|c| an.subnormal_chain_nodes(c, h).is_some());
        }

        ClassTable {
            abelian,
            cyclic,
            primary_cyclic,
            biprimary,
            soluble,
            nilpotent,
            metanilpotent,
            supersoluble,
            tower,
            wu,
            vu,
            p_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn abelian(&self, node: usize) -> bool {
        self.abelian[node]
    }
    pub fn cyclic(&self, node: usize) -> bool {
        self.cyclic[node]
    }
    pub fn primary_cyclic(&self, node: usize) -> bool {
        self.primary_cyclic[node]
    }
    pub fn biprimary(&self, node: usize) -> bool {
        self.biprimary[node]
    }
    pub fn soluble(&self, node: usize) -> bool {
        self.soluble[node]
    }
    pub fn nilpotent(&self, node: usize) -> bool {
        self.nilpotent[node]
    }
    pub fn metanilpotent(&self, node: usize) -> bool {
        self.metanilpotent[node]
    }
    pub fn supersoluble(&self, node: usize) -> bool {
        self.supersoluble[node]
    }
    pub fn tower(&self, node: usize) -> bool {
        self.tower[node]
    }
    pub fn wu(&self, node: usize) -> bool {
        self.wu[node]
    }
    pub fn vu(&self, node: usize) -> bool {
        self.vu[node]
    }
}

/// `p`-closed: the Sylow `p`-subgroup is normal (equivalently, unique).
pub fn node_p_closed(an: &GroupAnalysis, node: usize, p: u64) -> bool {
    let key = (node, p, true);
    if let Some(&v) = an.classes().p_memo.lock().unwrap().get(&key) {
        return v;
    }
    let v = an.sylow_nodes_in(node, p).len() == 1;
    an.classes().p_memo.lock().unwrap().insert(key, v);
    v
}

/// `p`-nilpotent: a normal Hall `p′`-subgroup exists.
pub fn node_p_nilpotent(an: &GroupAnalysis, node: usize, p: u64) -> bool {
    let key = (node, p, false);
    if let Some(&v) = an.classes().p_memo.lock().unwrap().get(&key) {
        return v;
    }
    let order = an.node_order(node);
    let target = order / p_part(order, p);
    let v = an
        .lattice()
        .nodes_under(node)
        .into_iter()
        .any(|k| an.node_order(k) == target && an.node_normal_in(k, node));
    an.classes().p_memo.lock().unwrap().insert(key, v);
    v
}

/// Class membership of a lattice node.
pub fn node_in_class(an: &GroupAnalysis, node: usize, class: ClassId) -> bool {
    let table = an.classes();
    match class {
        ClassId::Soluble => table.soluble(node),
        ClassId::Nilpotent => table.nilpotent(node),
        ClassId::Metanilpotent => table.metanilpotent(node),
        ClassId::SupersolubleU => table.supersoluble(node),
        ClassId::WU => table.wu(node),
        ClassId::VU => table.vu(node),
        ClassId::TowerD => table.tower(node),
        ClassId::PClosed(p) => node_p_closed(an, node, p),
        ClassId::PNilpotent(p) => node_p_nilpotent(an, node, p),
    }
}

/// Both sides of the `wU` characterization: an ordered Sylow tower plus
/// supersolubility of every metanilpotent (respectively biprimary)
/// subgroup. The two bracketed variants are computed independently and
/// both recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WuCharacterization {
    pub has_tower: bool,
    pub metanilpotent_variant: bool,
    pub biprimary_variant: bool,
}

impl WuCharacterization {
    pub fn holds(&self) -> bool {
        self.has_tower && self.metanilpotent_variant && self.biprimary_variant
    }

    pub fn variants_agree(&self) -> bool {
        self.metanilpotent_variant == self.biprimary_variant
    }
}

/// The `vU` characterization: an ordered Sylow tower plus supersolubility
/// of every biprimary subgroup that has a cyclic Sylow subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VuCharacterization {
    pub has_tower: bool,
    pub biprimary_cyclic_sylow_variant: bool,
}

impl VuCharacterization {
    pub fn holds(&self) -> bool {
        self.has_tower && self.biprimary_cyclic_sylow_variant
    }
}

pub fn wu_characterization_analyzed(an: &GroupAnalysis) -> WuCharacterization {
    let table = an.classes();
    let top = an.lattice().top_node();
    let count = an.lattice().node_count();
    WuCharacterization {
        has_tower: table.tower(top),
        metanilpotent_variant: (0..count)
            .all(|k| !table.metanilpotent(k) || table.supersoluble(k)),
        biprimary_variant: (0..count).all(|k| !table.biprimary(k) || table.supersoluble(k)),
    }
}

pub fn vu_characterization_analyzed(an: &GroupAnalysis) -> VuCharacterization {
    let table = an.classes();
    let top = an.lattice().top_node();
    let count = an.lattice().node_count();
    let variant = (0..count).all(|k| {
        if !table.biprimary(k) {
            return true;
        }
        let has_cyclic_sylow = prime_divisors(an.node_order(k))
            .iter()
            .any(|&p| table.cyclic(an.sylow_nodes_in(k, p)[0]));
        !has_cyclic_sylow || table.supersoluble(k)
    });
    VuCharacterization {
        has_tower: table.tower(top),
        biprimary_cyclic_sylow_variant: variant,
    }
}

// ---------------------------------------------------------------------------
// Group-level predicates
// ---------------------------------------------------------------------------

fn top_flag(g: &Group, f: impl Fn(&GroupAnalysis, usize) -> bool) -> Result<bool> {
    let an = GroupAnalysis::new(g.clone())?;
    let top = an.lattice().top_node();
    Ok(f(&an, top))
}

/// Supersoluble: every chief factor has prime order.
pub fn is_supersoluble(g: &Group) -> Result<bool> {
    top_flag(g, |an, top| an.classes().supersoluble(top))
}

pub fn is_p_closed(g: &Group, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    top_flag(g, |an, top| node_p_closed(an, top, p))
}

pub fn is_p_nilpotent(g: &Group, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    top_flag(g, |an, top| node_p_nilpotent(an, top, p))
}

/// ℙ-subnormality of `h` in `g`: a chain of prime-index steps joins them.
/// Returns the chain witness (ascending, from `h` to `g`) when it exists.
pub fn is_p_subnormal(g: &Group, h: &Group) -> Result<(bool, Option<Vec<Group>>)> {
    let an = GroupAnalysis::new(g.clone())?;
    let node = an.find_node(h)?;
    match an.subnormal_chain_nodes(node, an.lattice().top_node()) {
        Some(chain) => {
            let witness = chain.into_iter().map(|k| an.node_group(k)).collect();
            Ok((true, Some(witness)))
        }
        None => Ok((false, None)),
    }
}

/// Widely supersoluble: every Sylow subgroup is ℙ-subnormal.
pub fn is_wu(g: &Group) -> Result<bool> {
    top_flag(g, |an, top| an.classes().wu(top))
}

/// `vU`: every primary cyclic subgroup is ℙ-subnormal.
pub fn is_vu(g: &Group) -> Result<bool> {
    top_flag(g, |an, top| an.classes().vu(top))
}

pub fn is_wu_characterization(g: &Group) -> Result<WuCharacterization> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(wu_characterization_analyzed(&an))
}

pub fn is_vu_characterization(g: &Group) -> Result<VuCharacterization> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(vu_characterization_analyzed(&an))
}

/// Metanilpotent: the quotient by the Fitting subgroup is nilpotent.
pub fn is_metanilpotent(g: &Group) -> Result<bool> {
    top_flag(g, |an, top| an.classes().metanilpotent(top))
}

/// Biprimary: exactly two primes divide the order.
pub fn is_biprimary(g: &Group) -> Result<bool> {
    Ok(prime_divisors(g.order()).len() == 2)
}

/// Primary cyclic: cyclic of prime-power order.
pub fn is_primary_cyclic(g: &Group) -> Result<bool> {
    top_flag(g, |an, top| an.classes().primary_cyclic(top))
}

/// Dispatcher over the class tags.
pub fn in_class(g: &Group, class: ClassId) -> Result<bool> {
    top_flag(g, |an, top| node_in_class(an, top, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        alternating, cyclic, quotient_as_group, standard_catalog, symmetric,
    };
    use crate::group::generated_subgroup;
    use crate::parse_cycles;
    use crate::structure::{is_nilpotent, is_soluble};

    #[test]
    fn supersolubility_verdicts() {
        assert!(is_supersoluble(&symmetric(3).unwrap()).unwrap());
        assert!(!is_supersoluble(&alternating(4).unwrap()).unwrap());
        assert!(is_supersoluble(&cyclic(30).unwrap()).unwrap());
        assert!(!is_supersoluble(&symmetric(4).unwrap()).unwrap());
    }

    #[test]
    fn p_closed_and_p_nilpotent_on_s3() {
        let s3 = symmetric(3).unwrap();
        assert!(is_p_closed(&s3, 3).unwrap());
        assert!(!is_p_closed(&s3, 2).unwrap());
        assert!(is_p_nilpotent(&s3, 2).unwrap());
        assert!(!is_p_nilpotent(&s3, 3).unwrap());
        // primes outside the order: both trivially true
        assert!(is_p_closed(&s3, 7).unwrap());
        assert!(is_p_nilpotent(&s3, 7).unwrap());
        assert!(is_p_closed(&s3, 6).is_err());
    }

    #[test]
    fn p_subnormality_via_prime_chains() {
        let s3 = symmetric(3).unwrap();
        let c3 = generated_subgroup(&s3, &[parse_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        let (ok, chain) = is_p_subnormal(&s3, &c3).unwrap();
        assert!(ok);
        assert_eq!(
            chain.unwrap().iter().map(|g| g.order()).collect::<Vec<_>>(),
            vec![3, 6]
        );

        // H = G: empty chain step, still ℙ-subnormal
        let (whole, chain) = is_p_subnormal(&s3, &s3).unwrap();
        assert!(whole);
        assert_eq!(chain.unwrap().len(), 1);

        // ⟨(1 2 3)⟩ in A4 has index 4 and no intermediate subgroup
        let a4 = alternating(4).unwrap();
        let c3 = generated_subgroup(&a4, &[parse_cycles("(1 2 3)", 4).unwrap()]).unwrap();
        let (bad, chain) = is_p_subnormal(&a4, &c3).unwrap();
        assert!(!bad);
        assert!(chain.is_none());
    }

    #[test]
    fn subnormal_chain_witnesses_are_valid_and_concatenable() {
        // chains have prime-index steps; concatenation across an
        // intermediate subgroup is again a valid chain
        let catalog = standard_catalog(24).unwrap();
        for entry in &catalog {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let top = an.lattice().top_node();
            for k in 0..an.lattice().node_count() {
                if let Some(chain) = an.subnormal_chain_nodes(k, top) {
                    assert_eq!(chain[0], k);
                    assert_eq!(*chain.last().unwrap(), top);
                    for w in chain.windows(2) {
                        let ratio = an.node_order(w[1]) / an.node_order(w[0]);
                        assert!(crate::arith::is_prime(ratio));
                        assert!(an.lattice().contains_node(w[1], w[0]));
                    }
                    // concatenate k → mid and mid → top
                    if chain.len() > 2 {
                        let mid = chain[1];
                        let lower = an.subnormal_chain_nodes(k, mid).unwrap();
                        let upper = an.subnormal_chain_nodes(mid, top).unwrap();
                        let mut joined = lower.clone();
                        joined.extend_from_slice(&upper[1..]);
                        for w in joined.windows(2) {
                            let ratio = an.node_order(w[1]) / an.node_order(w[0]);
                            assert!(crate::arith::is_prime(ratio));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wu_and_vu_verdicts() {
        assert!(is_wu(&symmetric(3).unwrap()).unwrap());
        assert!(is_vu(&symmetric(3).unwrap()).unwrap());
        assert!(!is_wu(&alternating(4).unwrap()).unwrap());
        assert!(!is_wu(&symmetric(4).unwrap()).unwrap());
        assert!(is_wu(&cyclic(12).unwrap()).unwrap());
    }

    #[test]
    fn characterizations_match_direct_definitions_on_small_catalog() {
        for entry in standard_catalog(30).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let top = an.lattice().top_node();
            let wu_direct = an.classes().wu(top);
            let wu_char = wu_characterization_analyzed(&an);
            assert!(wu_char.variants_agree(), "wU variants differ on {}", entry.name);
            assert_eq!(wu_direct, wu_char.holds(), "wU mismatch on {}", entry.name);

            let vu_direct = an.classes().vu(top);
            let vu_char = vu_characterization_analyzed(&an);
            assert_eq!(vu_direct, vu_char.holds(), "vU mismatch on {}", entry.name);
        }
    }

    #[test]
    fn inclusion_chain_on_small_catalog() {
        for entry in standard_catalog(30).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let top = an.lattice().top_node();
            let t = an.classes();
            if t.supersoluble(top) {
                assert!(t.wu(top), "U ⊆ wU fails on {}", entry.name);
            }
            if t.wu(top) {
                assert!(t.vu(top), "wU ⊆ vU fails on {}", entry.name);
            }
            if t.vu(top) {
                assert!(t.tower(top), "vU ⊆ D fails on {}", entry.name);
            }
        }
    }

    #[test]
    fn subgroup_and_quotient_closure_on_small_catalog() {
        for entry in standard_catalog(16).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let top = an.lattice().top_node();
            let t = an.classes();
            for class in [ClassId::SupersolubleU, ClassId::WU, ClassId::VU] {
                if !node_in_class(&an, top, class) {
                    continue;
                }
                for k in 0..an.lattice().node_count() {
                    assert!(
                        node_in_class(&an, k, class),
                        "{class} not subgroup-closed on {}",
                        entry.name
                    );
                }
                for k in 0..an.lattice().node_count() {
                    if !an.lattice().is_normal_node(k) {
                        continue;
                    }
                    let n = an.node_group(k);
                    let (q, _) = quotient_as_group(&entry.group, &n).unwrap();
                    assert!(
                        in_class(&q, class).unwrap(),
                        "{class} not quotient-closed on {}",
                        entry.name
                    );
                }
            }
            let _ = t;
        }
    }

    #[test]
    fn p_nilpotent_for_all_primes_iff_nilpotent() {
        for entry in standard_catalog(24).unwrap() {
            let all_p = crate::arith::prime_divisors(entry.group.order())
                .into_iter()
                .all(|p| is_p_nilpotent(&entry.group, p).unwrap());
            assert_eq!(
                all_p,
                is_nilpotent(&entry.group).unwrap(),
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn metanilpotent_examples() {
        assert!(is_metanilpotent(&symmetric(3).unwrap()).unwrap());
        assert!(!is_metanilpotent(&symmetric(4).unwrap()).unwrap());
        assert!(is_metanilpotent(&cyclic(12).unwrap()).unwrap());
    }

    #[test]
    fn biprimary_and_primary_cyclic_examples() {
        assert!(is_biprimary(&symmetric(4).unwrap()).unwrap());
        assert!(!is_biprimary(&cyclic(30).unwrap()).unwrap());
        assert!(is_primary_cyclic(&cyclic(8).unwrap()).unwrap());
        assert!(!is_primary_cyclic(&cyclic(6).unwrap()).unwrap());
        assert!(!is_primary_cyclic(&cyclic(1).unwrap()).unwrap());
    }

    #[test]
    fn in_class_dispatch_and_trivial_group() {
        assert!(in_class(&symmetric(3).unwrap(), ClassId::SupersolubleU).unwrap());
        assert!(!in_class(&alternating(5).unwrap(), ClassId::Soluble).unwrap());
        let trivial = cyclic(1).unwrap();
        for class in [
            ClassId::Soluble,
            ClassId::Nilpotent,
            ClassId::Metanilpotent,
            ClassId::SupersolubleU,
            ClassId::WU,
            ClassId::VU,
            ClassId::TowerD,
            ClassId::PClosed(2),
            ClassId::PNilpotent(3),
        ] {
            assert!(in_class(&trivial, class).unwrap(), "{class}");
        }
    }

    #[test]
    fn class_tags_render_and_parse() {
        for class in [
            ClassId::Soluble,
            ClassId::Nilpotent,
            ClassId::Metanilpotent,
            ClassId::SupersolubleU,
            ClassId::WU,
            ClassId::VU,
            ClassId::TowerD,
            ClassId::PClosed(5),
            ClassId::PNilpotent(2),
        ] {
            let text = class.to_string();
            assert_eq!(text.parse::<ClassId>().unwrap(), class);
        }
        assert!("U".parse::<ClassId>().is_ok());
        assert!("bogus".parse::<ClassId>().is_err());
        assert!("p-closed:4".parse::<ClassId>().is_err());
    }

    #[test]
    fn solubility_consistency_between_paths() {
        for entry in standard_catalog(24).unwrap() {
            let direct = is_soluble(&entry.group).unwrap();
            assert_eq!(
                direct,
                in_class(&entry.group, ClassId::Soluble).unwrap(),
                "{}",
                entry.name
            );
        }
    }
}
