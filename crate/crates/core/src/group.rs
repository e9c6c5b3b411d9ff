//! Permutation groups backed by a deterministic stabilizer chain.
//!
//! The chain is built by the classical Schreier–Sims procedure with a
//! fixed base-point rule (smallest moved point first), so identical
//! generator lists always produce identical chains. Order, membership
//! and element enumeration all come from the chain.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap for full element enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 20_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators active at this level (they fix all earlier bases).
    gens: Vec<Perm>,
    /// `transversal[δ]` is a coset representative `u` with `base^u = δ`.
    transversal: Vec<Option<Perm>>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct StabilizerChain {
    levels: Vec<Level>,
}

impl StabilizerChain {
    fn build(degree: usize, gens: &[Perm]) -> Result<StabilizerChain> {
        let mut strong: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        loop {
            let chain = StabilizerChain {
                levels: rebuild_levels(degree, &strong),
            };
            match chain.find_schreier_violation()? {
                None => return Ok(chain),
                Some(residue) => strong.push(residue),
            }
        }
    }

    /// Scans all Schreier generators; returns the first one that does not
    /// sift to the identity through the sub-chain below its level.
    fn find_schreier_violation(&self) -> Result<Option<Perm>> {
        for (i, level) in self.levels.iter().enumerate() {
            for &delta in &level.orbit {
                let u_delta = level.transversal[delta].as_ref().unwrap();
                for s in &level.gens {
                    let target = s.apply(delta);
                    let u_target = level.transversal[target].as_ref().unwrap();
                    let schreier = u_delta.compose(s)?.compose(&u_target.inverse())?;
                    let residue = self.sift_from(i + 1, schreier)?;
                    if !residue.is_identity() {
                        return Ok(Some(residue));
                    }
                }
            }
        }
        Ok(None)
    }

    fn sift_from(&self, start_level: usize, mut g: Perm) -> Result<Perm> {
        for level in &self.levels[start_level..] {
            let delta = g.apply(level.base);
            match &level.transversal[delta] {
                None => return Ok(g),
                Some(u) => g = g.compose(&u.inverse())?,
            }
        }
        Ok(g)
    }

    fn sift(&self, g: Perm) -> Result<Perm> {
        self.sift_from(0, g)
    }

    fn order(&self) -> Result<u64> {
        let mut order: u64 = 1;
        for level in &self.levels {
            order = order
                .checked_mul(level.orbit.len() as u64)
                .ok_or(Error::OrderOverflow)?;
        }
        Ok(order)
    }
}

fn rebuild_levels(degree: usize, strong: &[Perm]) -> Vec<Level> {
    let mut levels = Vec::new();
    let mut active: Vec<Perm> = strong.to_vec();
    while !active.is_empty() {
        let base = active
            .iter()
            .filter_map(|g| g.first_moved_point())
            .min()
            .expect("active generators are non-identity");
        let (orbit, transversal) = orbit_transversal(degree, base, &active);
        let next: Vec<Perm> = active
            .iter()
            .filter(|g| g.apply(base) == base)
            .cloned()
            .collect();
        levels.push(Level {
            base,
            gens: active,
            transversal,
            orbit,
        });
        active = next;
    }
    levels
}

fn orbit_transversal(
    degree: usize,
    base: usize,
    gens: &[Perm],
) -> (Vec<usize>, Vec<Option<Perm>>) {
    let mut transversal: Vec<Option<Perm>> = vec![None; degree];
    transversal[base] = Some(Perm::identity(degree));
    let mut orbit = vec![base];
    let mut qi = 0;
    while qi < orbit.len() {
        let delta = orbit[qi];
        qi += 1;
        let u = transversal[delta].clone().unwrap();
        for s in gens {
            let img = s.apply(delta);
            if transversal[img].is_none() {
                transversal[img] = Some(u.compose(s).expect("equal degrees"));
                orbit.push(img);
            }
        }
    }
    (orbit, transversal)
}

/// A finite permutation group on a fixed degree.
///
/// Immutable after construction; subgroup relations are always taken
/// inside a shared degree.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabilizerChain,
    order: u64,
}

impl Group {
    /// Builds the group generated by `gens` on `degree` points. An empty
    /// generator list yields the trivial group.
    pub fn from_generators(gens: Vec<Perm>, degree: usize) -> Result<Group> {
        if degree == 0 {
            return Err(Error::InvalidParameter("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabilizerChain::build(degree, &gens)?;
        let order = chain.order()?;
        Ok(Group {
            degree,
            generators: gens,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::from_generators(Vec::new(), degree).expect("degree checked by caller")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree
            && self
                .chain
                .sift(p.clone())
                .map(|r| r.is_identity())
                .unwrap_or(false)
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    /// Set equality as subgroups of a common symmetric group.
    pub fn same_group(&self, other: &Group) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        self.elements_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn elements_with_cap(&self, cap: u64) -> Result<Vec<Perm>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                needed: self.order,
                cap,
            });
        }
        let mut elems = vec![Perm::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for e in &elems {
                for &delta in &level.orbit {
                    let u = level.transversal[delta].as_ref().unwrap();
                    next.push(e.compose(u).expect("equal degrees"));
                }
            }
            elems = next;
        }
        elems.sort_unstable();
        debug_assert!(elems.windows(2).all(|w| w[0] != w[1]));
        Ok(elems)
    }

    /// Multiset of element orders, as order → count.
    pub fn element_order_counts(&self) -> Result<BTreeMap<u64, usize>> {
        let mut counts = BTreeMap::new();
        for e in self.elements()? {
            *counts.entry(e.order()).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

/// Subgroup of `parent` generated by `seed`.
pub fn generated_subgroup(parent: &Group, seed: &[Perm]) -> Result<Group> {
    for p in seed {
        if !parent.contains(p) {
            return Err(Error::NotAnElement);
        }
    }
    Group::from_generators(seed.to_vec(), parent.degree())
}

/// Decides whether pairing `a`'s generators with `b`'s extends to an
/// isomorphism: the graph group generated by the combined permutations has
/// order `|A|` exactly when the pairing extends to a homomorphism, and the
/// paired generators must generate both groups.
pub fn generator_map_is_isomorphism(
    a: &Group,
    b: &Group,
    pairs: &[(Perm, Perm)],
) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let a_side: Vec<Perm> = pairs.iter().map(|(p, _)| p.clone()).collect();
    let b_side: Vec<Perm> = pairs.iter().map(|(_, q)| q.clone()).collect();
    if Group::from_generators(a_side, a.degree())?.order() != a.order()
        || Group::from_generators(b_side, b.degree())?.order() != b.order()
    {
        return Ok(false);
    }
    let da = a.degree();
    let db = b.degree();
    let mut combined = Vec::new();
    for (p, q) in pairs {
        let mut images: Vec<usize> = (0..da + db).collect();
        for (i, img) in images.iter_mut().enumerate().take(da) {
            *img = p.apply(i);
        }
        for i in 0..db {
            images[da + i] = da + q.apply(i);
        }
        combined.push(Perm::from_images(images)?);
    }
    let graph = Group::from_generators(combined, da + db)?;
    Ok(graph.order() == a.order())
}

/// Commutator subgroup `[A, B]`: generated by commutators of generators and
/// closed under conjugation by the generators of `A` and `B`, which yields
/// the subgroup normalized by `⟨A, B⟩`.
pub fn commutator_subgroup(parent: &Group, a: &Group, b: &Group) -> Result<Group> {
    if !parent.contains_group(a) || !parent.contains_group(b) {
        return Err(Error::NotASubgroup);
    }
    let degree = parent.degree();
    let mut work: Vec<Perm> = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = x.commutator(y)?;
            if !c.is_identity() && !work.contains(&c) {
                work.push(c);
            }
        }
    }
    let mut group = Group::from_generators(work.clone(), degree)?;
    let conjugators: Vec<Perm> = a
        .generators()
        .iter()
        .chain(b.generators().iter())
        .cloned()
        .collect();
    let mut i = 0;
    while i < work.len() {
        for c in &conjugators {
            let k = work[i].conjugate(c)?;
            if !group.contains(&k) {
                work.push(k.clone());
                group = Group::from_generators(work.clone(), degree)?;
            }
        }
        i += 1;
    }
    Ok(group)
}
