//! Sylow and Hall subgroups, the `Eπ`/`Cπ`/`Dπ` property triple, and
//! ordered Sylow towers of supersoluble type.

use std::collections::HashSet;

use crate::arith::{is_prime, is_pi_number, p_part};
use crate::error::{Error, Result};
use crate::group::{generated_subgroup, Group};
use crate::perm::Perm;
use crate::structure::{normalizer, GroupAnalysis};

/// One Sylow `p`-subgroup, found by greedy growth inside successive
/// normalizers: a proper `p`-subgroup always has a `p`-element outside it
/// in its normalizer, so the loop reaches full `p`-part order without a
/// lattice. Trivial when `p ∤ |G|`.
pub fn sylow_subgroup(g: &Group, p: u64) -> Result<Group> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(Group::trivial(g.degree()));
    }
    let elements = g.elements()?;
    let seed = elements
        .iter()
        .find(|e| e.order() % p == 0)
        .expect("Cauchy: an element of order divisible by p exists");
    // seed^(order/p) has order exactly p
    let mut power = seed.clone();
    for _ in 1..(seed.order() / p) {
        power = power.compose(seed)?;
    }
    let mut gens = vec![power];
    let mut current = generated_subgroup(g, &gens)?;
    while current.order() < target {
        let norm = normalizer(g, &current)?;
        let z = norm
            .elements()?
            .into_iter()
            .find(|z| {
                !current.contains(z) && {
                    let o = z.order();
                    o == p_part(o, p)
                }
            })
            .expect("a p-element exists outside a non-Sylow p-subgroup in its normalizer");
        gens.push(z);
        current = generated_subgroup(g, &gens)?;
    }
    Ok(current)
}

/// All Sylow `p`-subgroups: the conjugation orbit of one of them.
pub fn sylow_conjugates(g: &Group, p: u64) -> Result<Vec<Group>> {
    let first = sylow_subgroup(g, p)?;
    let orbit = conjugation_orbit(g, &first)?;
    debug_assert!(orbit.len() as u64 % p == 1 || first.is_trivial());
    Ok(orbit)
}

fn conjugation_orbit(g: &Group, h: &Group) -> Result<Vec<Group>> {
    let canonical = |x: &Group| -> Result<Vec<Perm>> { x.elements() };
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut orbit = Vec::new();
    let mut queue = vec![h.clone()];
    seen.insert(canonical(h)?);
    while let Some(current) = queue.pop() {
        for a in g.generators() {
            let conj_gens: Vec<Perm> = current
                .generators()
                .iter()
                .map(|x| x.conjugate(a).unwrap())
                .collect();
            let image = Group::from_generators(conj_gens, g.degree())?;
            if seen.insert(canonical(&image)?) {
                queue.push(image);
            }
        }
        orbit.push(current);
    }
    orbit.sort_by_key(|x| x.elements().unwrap());
    Ok(orbit)
}

/// All Hall `π`-subgroups (subgroups of full `π`-part order); may be empty.
pub fn hall_subgroups(g: &Group, pi: &[u64]) -> Result<Vec<Group>> {
    for &p in pi {
        if !is_prime(p) {
            return Err(Error::NotPrime { n: p });
        }
    }
    let an = GroupAnalysis::new(g.clone())?;
    Ok(an
        .hall_nodes_in(an.lattice().top_node(), pi)
        .into_iter()
        .map(|k| an.node_group(k))
        .collect())
}

/// Verdict on the Hall property triple for one prime set.
#[derive(Debug, Clone)]
pub struct HallPropertyRecord {
    pub pi: Vec<u64>,
    /// At least one Hall π-subgroup exists.
    pub e_holds: bool,
    /// All Hall π-subgroups are conjugate.
    pub c_holds: bool,
    /// Every π-subgroup lies inside some Hall π-subgroup.
    pub d_holds: bool,
    pub witnesses: Vec<Group>,
    pub failure_witness: Option<HallFailure>,
}

#[derive(Debug, Clone)]
pub enum HallFailure {
    /// A π-subgroup contained in no Hall π-subgroup (D fails).
    NotCovered(Group),
    /// Two Hall π-subgroups in different conjugation orbits (C fails).
    NonConjugate(Group, Group),
}

pub fn hall_property_record(g: &Group, pi: &[u64]) -> Result<HallPropertyRecord> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(hall_property_record_analyzed(&an, pi))
}

pub(crate) fn hall_property_record_analyzed(an: &GroupAnalysis, pi: &[u64]) -> HallPropertyRecord {
    let lat = an.lattice();
    let top = lat.top_node();
    let halls = an.hall_nodes_in(top, pi);
    let e_holds = !halls.is_empty();

    let mut c_holds = e_holds;
    let mut failure_witness = None;
    if e_holds {
        // Conjugation orbit of the first Hall subgroup in node space.
        let t = an.tables();
        let mut orbit: HashSet<usize> = HashSet::new();
        let mut queue = vec![halls[0]];
        orbit.insert(halls[0]);
        while let Some(k) = queue.pop() {
            for &gen in &t.gen_ids {
                let image = t.conj_set(&lat.node(k).set, gen);
                let id = an.find_set(&image).expect("conjugates are subgroups");
                if orbit.insert(id) {
                    queue.push(id);
                }
            }
        }
        if let Some(&outside) = halls.iter().find(|h| !orbit.contains(h)) {
            c_holds = false;
            failure_witness = Some(HallFailure::NonConjugate(
                an.node_group(halls[0]),
                an.node_group(outside),
            ));
        }
    }

    let mut d_holds = c_holds;
    if c_holds {
        for k in 0..lat.node_count() {
            if !is_pi_number(lat.node_order(k), pi) {
                continue;
            }
            if !halls.iter().any(|&h| lat.contains_node(h, k)) {
                d_holds = false;
                failure_witness = Some(HallFailure::NotCovered(an.node_group(k)));
                break;
            }
        }
    }

    HallPropertyRecord {
        pi: pi.to_vec(),
        e_holds,
        c_holds,
        d_holds,
        witnesses: halls.iter().map(|&k| an.node_group(k)).collect(),
        failure_witness,
    }
}

/// Ordered Sylow tower of supersoluble type: working down the primes from
/// the largest, each prefix has a normal Hall subgroup. Returns the chain
/// of normal Hall subgroups as the witness.
pub fn has_supersoluble_sylow_tower(g: &Group) -> Result<(bool, Vec<Group>)> {
    let an = GroupAnalysis::new(g.clone())?;
    match an.tower_witness_nodes(an.lattice().top_node()) {
        Some(chain) => Ok((true, chain.into_iter().map(|k| an.node_group(k)).collect())),
        None => Ok((false, Vec::new())),
    }
}
