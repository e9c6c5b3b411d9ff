//! Structural computations on small groups: the analysis context (element
//! table plus full subgroup lattice), characteristic subgroups, series,
//! cores, and primitivity.
//!
//! [`GroupAnalysis`] is the workhorse shared by the class predicates, the
//! permutability predicates and the verification harness: it enumerates
//! the group once, builds multiplication tables and the subgroup lattice,
//! and answers node-level queries. Group-level operations that do not
//! need a lattice (normalizers, centralizers, cores, derived and central
//! series) work directly on [`Group`] values and are not subject to the
//! lattice cap.

mod lattice;

pub use lattice::SubgroupLattice;
pub(crate) use lattice::{ElemSet, Tables};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{is_prime, p_part, pi_part, prime_divisors};
use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, generated_subgroup, Group};
use crate::perm::Perm;

/// Default cap on the order of groups whose lattice we materialize.
pub const DEFAULT_LATTICE_CAP: u64 = 400;

/// Element table plus subgroup lattice for one ambient group.
pub struct GroupAnalysis {
    group: Group,
    elements: Vec<Perm>,
    tables: Tables,
    lattice: SubgroupLattice,
    classes: OnceLock<ClassTable>,
    /// Memo for setwise product permutation checks, keyed by node pair.
    pub(crate) permute_memo: Mutex<HashMap<(usize, usize), bool>>,
}

impl GroupAnalysis {
    pub fn new(group: Group) -> Result<Self> {
        Self::with_cap(group, DEFAULT_LATTICE_CAP)
    }

    pub fn with_cap(group: Group, cap: u64) -> Result<Self> {
        Self::build(group, cap, lattice::LatticeMode::CyclicExtension)
    }

    /// Oracle mode: the lattice is built by exhaustive extend-by-element
    /// closure instead of cyclic extension. Used for cross-checks.
    pub fn with_exhaustive_lattice(group: Group, cap: u64) -> Result<Self> {
        Self::build(group, cap, lattice::LatticeMode::SubsetClosure)
    }

    fn build(group: Group, cap: u64, mode: lattice::LatticeMode) -> Result<Self> {
        if cap > u16::MAX as u64 {
            return Err(Error::InvalidParameter(format!(
                "lattice cap {cap} exceeds the supported maximum {}",
                u16::MAX
            )));
        }
        if group.order() > cap {
            return Err(Error::CapExceeded {
                what: "subgroup lattice",
                needed: group.order(),
                cap,
            });
        }
        let elements = group.elements_with_cap(cap)?;
        let n = elements.len();
        debug_assert!(elements[0].is_identity());

        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = vec![0u16; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = index[&pa.compose(pb).expect("equal degrees")] as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for (a, pa) in elements.iter().enumerate() {
            inv[a] = index[&pa.inverse()] as u16;
        }
        let mut elem_order = vec![0u32; n];
        for a in 0..n {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        // identity has order 1, counted specially by the loop above
        elem_order[0] = 1;
        let gen_ids: Vec<usize> = group
            .generators()
            .iter()
            .map(|g| index[g])
            .collect();

        let tables = Tables {
            n,
            mul,
            inv,
            elem_order,
            gen_ids,
        };
        let lattice = lattice::build_lattice(&tables, mode);
        debug_assert!(lattice.orders_divide_parent());
        Ok(GroupAnalysis {
            group,
            elements,
            tables,
            lattice,
            classes: OnceLock::new(),
            permute_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub(crate) fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Per-node class membership flags, computed once on first use.
    pub fn classes(&self) -> &ClassTable {
        self.classes.get_or_init(|| ClassTable::compute(self))
    }

    pub(crate) fn elem_index(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn node_order(&self, node: usize) -> u64 {
        self.lattice.node_order(node)
    }

    /// Materializes a lattice node as a [`Group`] over the parent degree.
    pub fn node_group(&self, node: usize) -> Group {
        let gens: Vec<Perm> = self.lattice.node(node).gens
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect();
        Group::from_generators(gens, self.group.degree()).expect("node generators are valid")
    }

    pub fn node_elements(&self, node: usize) -> Vec<Perm> {
        self.lattice
            .node(node)
            .set
            .iter()
            .map(|i| self.elements[i].clone())
            .collect()
    }

    /// Locates a subgroup of the ambient group in the lattice.
    pub fn find_node(&self, h: &Group) -> Result<usize> {
        self.find_set(&self.group_to_set(h)?)
            .ok_or(Error::NotASubgroup)
    }

    pub(crate) fn group_to_set(&self, h: &Group) -> Result<ElemSet> {
        if h.degree() != self.group.degree() {
            return Err(Error::DegreeMismatch {
                left: self.group.degree(),
                right: h.degree(),
            });
        }
        let mut gen_ids = Vec::new();
        for g in h.generators() {
            gen_ids.push(self.elem_index(g).ok_or(Error::NotAnElement)?);
        }
        let set = self.tables.closure(&gen_ids);
        debug_assert_eq!(set.len() as u64, h.order());
        Ok(set)
    }

    pub(crate) fn find_set(&self, set: &ElemSet) -> Option<usize> {
        self.lattice.find_set(set)
    }

    /// Is node `k` normal in node `h`? (`k ⊆ h` is assumed.)
    pub fn node_normal_in(&self, k: usize, h: usize) -> bool {
        if h == self.lattice.top_node() {
            return self.lattice.is_normal_node(k);
        }
        let k_set = &self.lattice.node(k).set;
        self.lattice
            .node(h)
            .gens
            .iter()
            .all(|&g| &self.tables.conj_set(k_set, g) == k_set)
    }

    /// Chief factor orders of the subgroup at node `h`, computed by
    /// repeatedly taking the canonically-first minimal normal subgroup
    /// above the current term inside `h`'s sub-lattice.
    pub fn chief_factor_orders_of(&self, h: usize) -> Vec<u64> {
        self.chief_chain_nodes(h)
            .windows(2)
            .map(|w| self.node_order(w[1]) / self.node_order(w[0]))
            .collect()
    }

    /// Ascending chain of nodes realizing a chief series of node `h`.
    pub fn chief_chain_nodes(&self, h: usize) -> Vec<usize> {
        let mut chain = vec![self.lattice.trivial_node()];
        let mut current = self.lattice.trivial_node();
        while current != h {
            // Nodes are sorted by order, so the first hit has minimal
            // order and is the canonical choice.
            let next = (0..self.lattice.node_count())
                .find(|&k| {
                    self.lattice.node_order(k) > self.node_order(current)
                        && self.lattice.contains_node(h, k)
                        && self.lattice.contains_node(k, current)
                        && self.node_normal_in(k, h)
                })
                .expect("the node itself is always a candidate");
            chain.push(next);
            current = next;
        }
        chain
    }

    /// All Sylow `p`-subgroups of node `h` (nodes of full `p`-part order).
    pub fn sylow_nodes_in(&self, h: usize, p: u64) -> Vec<usize> {
        let target = p_part(self.node_order(h), p);
        self.nodes_in_of_order(h, target)
    }

    /// All Hall `π`-subgroups of node `h`.
    pub fn hall_nodes_in(&self, h: usize, pi: &[u64]) -> Vec<usize> {
        let target = pi_part(self.node_order(h), pi);
        self.nodes_in_of_order(h, target)
    }

    fn nodes_in_of_order(&self, h: usize, target: u64) -> Vec<usize> {
        self.lattice
            .sub_bits[h]
            .iter()
            .filter(|&k| self.lattice.node_order(k) == target)
            .collect()
    }

    /// Breadth-first chain of prime-index steps from node `from` up to
    /// node `to`, staying inside `to`'s sub-lattice.
    pub fn subnormal_chain_nodes(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(vec![from]);
        }
        if !self.lattice.contains_node(to, from) {
            return None;
        }
        let count = self.lattice.node_count();
        let mut parent: Vec<Option<usize>> = vec![None; count];
        let mut queue = vec![from];
        let mut qi = 0;
        parent[from] = Some(from);
        while qi < queue.len() {
            let cur = queue[qi];
            qi += 1;
            for &up in self.lattice.prime_up_edges(cur) {
                if parent[up].is_some() || !self.lattice.contains_node(to, up) {
                    continue;
                }
                parent[up] = Some(cur);
                if up == to {
                    let mut chain = vec![to];
                    let mut c = to;
                    while c != from {
                        c = parent[c].unwrap();
                        chain.push(c);
                    }
                    chain.reverse();
                    return Some(chain);
                }
                queue.push(up);
            }
        }
        None
    }

    /// Ordered Sylow tower of supersoluble type for node `h`, as the chain
    /// of normal Hall subgroups for descending prime prefixes.
    pub fn tower_witness_nodes(&self, h: usize) -> Option<Vec<usize>> {
        let order = self.node_order(h);
        let mut primes = prime_divisors(order);
        primes.reverse();
        let mut witness = Vec::new();
        let mut prefix: Vec<u64> = Vec::new();
        for &p in &primes {
            prefix.push(p);
            let target = pi_part(order, &prefix);
            let found = self
                .nodes_in_of_order(h, target)
                .into_iter()
                .find(|&k| self.node_normal_in(k, h))?;
            witness.push(found);
        }
        Some(witness)
    }

    /// Largest normal `p`-subgroup of node `h`.
    pub fn o_p_node_in(&self, h: usize, p: u64) -> usize {
        let mut best = self.lattice.trivial_node();
        for k in self.lattice.sub_bits[h].iter() {
            let order = self.lattice.node_order(k);
            if order == p_part(order, p)
                && order > self.node_order(best)
                && self.node_normal_in(k, h)
            {
                best = k;
            }
        }
        best
    }

    /// Fitting subgroup of node `h`: join of the `O_p` across primes.
    pub fn fitting_node_in(&self, h: usize) -> usize {
        let mut set = self.lattice.node(self.lattice.trivial_node()).set.clone();
        for p in prime_divisors(self.node_order(h)) {
            let op = self.o_p_node_in(h, p);
            set = self.tables.set_product(&set, &self.lattice.node(op).set);
        }
        self.find_set(&set).expect("product of normal subgroups is a subgroup")
    }

    /// Bitset of all element ids.
    pub(crate) fn full_element_set(&self) -> ElemSet {
        let mut set = ElemSet::empty(self.tables.n);
        for i in 0..self.tables.n {
            set.insert(i);
        }
        set
    }

    /// Elements `g` of the ambient group with `X^g = X` for node `x`.
    pub(crate) fn normalizer_set_of_node(&self, x: usize) -> ElemSet {
        let t = &self.tables;
        let x_set = &self.lattice.node(x).set;
        let mut out = ElemSet::empty(t.n);
        for g in 0..t.n {
            if &t.conj_set(x_set, g) == x_set {
                out.insert(g);
            }
        }
        out
    }

    /// Centralizer (as an element set) of node `k` inside node `h`.
    pub(crate) fn centralizer_set_in(&self, h: usize, k: usize) -> ElemSet {
        let t = &self.tables;
        let k_set = &self.lattice.node(k).set;
        let mut out = ElemSet::empty(t.n);
        for g in self.lattice.node(h).set.iter() {
            if k_set.iter().all(|a| t.mul(g, a) == t.mul(a, g)) {
                out.insert(g);
            }
        }
        out
    }

    /// Core of node `k` in the ambient group: the largest subgroup of `k`
    /// normal in the whole group, via conjugate intersection.
    pub fn core_node(&self, k: usize) -> usize {
        let t = &self.tables;
        let mut set = self.lattice.node(k).set.clone();
        loop {
            let mut next = set.clone();
            for &g in &t.gen_ids {
                next = next.intersect(&t.conj_set(&set, g));
            }
            if next == set {
                break;
            }
            set = next;
        }
        self.find_set(&set).expect("cores are subgroups")
    }

    /// Maximal subgroups of the ambient group.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        let top = self.lattice.top_node();
        (0..self.lattice.node_count())
            .filter(|&m| {
                m != top
                    && !(0..self.lattice.node_count()).any(|k| {
                        k != m
                            && k != top
                            && self.lattice.contains_node(k, m)
                            && self.lattice.node_order(k) > self.lattice.node_order(m)
                    })
            })
            .collect()
    }

    /// Frattini subgroup: intersection of all maximal subgroups.
    pub fn frattini_node(&self) -> usize {
        let top = self.lattice.top_node();
        let mut set = self.lattice.node(top).set.clone();
        for m in self.maximal_nodes() {
            set = set.intersect(&self.lattice.node(m).set);
        }
        self.find_set(&set)
            .expect("intersections of subgroups are subgroups")
    }

    /// Minimal normal subgroups of the ambient group.
    pub fn minimal_normal_nodes(&self) -> Vec<usize> {
        let trivial = self.lattice.trivial_node();
        let normals: Vec<usize> = (0..self.lattice.node_count())
            .filter(|&k| k != trivial && self.lattice.is_normal_node(k))
            .collect();
        normals
            .iter()
            .copied()
            .filter(|&k| {
                !normals
                    .iter()
                    .any(|&m| m != k && self.lattice.contains_node(k, m))
            })
            .collect()
    }

    /// Primitivators: maximal subgroups with trivial core.
    pub fn primitivator_nodes(&self) -> Vec<usize> {
        self.maximal_nodes()
            .into_iter()
            .filter(|&m| self.core_node(m) == self.lattice.trivial_node())
            .collect()
    }

    /// Quotient by a normal node, with the element image map.
    pub(crate) fn quotient_data(&self, n_node: usize) -> Result<QuotientData> {
        if !self.lattice.is_normal_node(n_node) {
            return Err(Error::NotNormal);
        }
        let t = &self.tables;
        let n_set = &self.lattice.node(n_node).set;
        let mut coset_of = vec![usize::MAX; t.n];
        let mut reps: Vec<usize> = Vec::new();
        for e in 0..t.n {
            if coset_of[e] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(e);
            for m in n_set.iter() {
                coset_of[t.mul(m, e)] = id;
            }
        }
        let out_degree = reps.len();
        let coset_perm = |x: usize| -> Perm {
            let images: Vec<usize> = reps.iter().map(|&r| coset_of[t.mul(r, x)]).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let q_gens: Vec<Perm> = t.gen_ids.iter().map(|&g| coset_perm(g)).collect();
        let quotient = Group::from_generators(q_gens, out_degree.max(1))?;
        let analysis = GroupAnalysis::with_cap(quotient, u16::MAX as u64)?;
        let mut elem_image = vec![0usize; t.n];
        for e in 0..t.n {
            elem_image[e] = analysis
                .elem_index(&coset_perm(e))
                .expect("images lie in the quotient");
        }
        Ok(QuotientData {
            analysis,
            elem_image,
        })
    }
}

/// A quotient analysis together with the induced map on element ids.
pub(crate) struct QuotientData {
    pub analysis: GroupAnalysis,
    elem_image: Vec<usize>,
}

impl QuotientData {
    /// Image of a parent-side element set in the quotient.
    pub fn image_set(&self, set: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.analysis.tables.n);
        for e in set.iter() {
            out.insert(self.elem_image[e]);
        }
        out
    }

    /// Image node of a parent-side node set.
    pub fn image_node(&self, set: &ElemSet) -> usize {
        self.analysis
            .find_set(&self.image_set(set))
            .expect("images of subgroups are subgroups")
    }
}

// ---------------------------------------------------------------------------
// Group-level operations
// ---------------------------------------------------------------------------

/// Builds the full subgroup lattice (with its ambient analysis).
pub fn all_subgroups(g: &Group) -> Result<GroupAnalysis> {
    GroupAnalysis::new(g.clone())
}

pub fn all_subgroups_with_cap(g: &Group, cap: u64) -> Result<GroupAnalysis> {
    GroupAnalysis::with_cap(g.clone(), cap)
}

/// Is `h` a normal subgroup of `g`?
pub fn is_normal(g: &Group, h: &Group) -> Result<bool> {
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup);
    }
    for x in h.generators() {
        for a in g.generators() {
            if !h.contains(&x.conjugate(a)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Normalizer of `h` in `g`.
pub fn normalizer(g: &Group, h: &Group) -> Result<Group> {
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup);
    }
    let mut members = Vec::new();
    for e in g.elements()? {
        if h
            .generators()
            .iter()
            .all(|x| h.contains(&x.conjugate(&e).unwrap()))
        {
            members.push(e);
        }
    }
    Group::from_generators(members, g.degree())
}

/// Centralizer of a set of elements in `g`.
pub fn centralizer(g: &Group, elems: &[Perm]) -> Result<Group> {
    for s in elems {
        if !g.contains(s) {
            return Err(Error::NotAnElement);
        }
    }
    let mut members = Vec::new();
    for e in g.elements()? {
        if elems
            .iter()
            .all(|s| e.compose(s).unwrap() == s.compose(&e).unwrap())
        {
            members.push(e);
        }
    }
    Group::from_generators(members, g.degree())
}

/// Centre of `g` (centralizer of its generators).
pub fn center(g: &Group) -> Result<Group> {
    centralizer(g, g.generators())
}

pub fn derived_subgroup(g: &Group) -> Result<Group> {
    commutator_subgroup(g, g, g)
}

/// Descending derived series, ending at its stable term.
pub fn derived_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn is_soluble(g: &Group) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

/// Descending lower central series, ending at its stable term.
pub fn lower_central_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, g)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &Group) -> Result<bool> {
    Ok(lower_central_series(g)?.last().unwrap().is_trivial())
}

/// `O_p(G)`: the core of any Sylow `p`-subgroup (trivial when `p ∤ |G|`).
pub fn o_p(g: &Group, p: u64) -> Result<Group> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if g.order() % p != 0 {
        return Ok(Group::trivial(g.degree()));
    }
    let sylow = crate::sylow::sylow_subgroup(g, p)?;
    core(g, &sylow)
}

/// Fitting subgroup: join of the `O_p(G)` over the primes dividing `|G|`.
pub fn fitting(g: &Group) -> Result<Group> {
    let mut gens: Vec<Perm> = Vec::new();
    for p in prime_divisors(g.order()) {
        gens.extend(o_p(g, p)?.generators().iter().cloned());
    }
    generated_subgroup(g, &gens)
}

/// Largest subgroup of `h` normal in `g`, via conjugate intersection.
pub fn core(g: &Group, h: &Group) -> Result<Group> {
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup);
    }
    let mut current = h.clone();
    loop {
        let elems = current.elements()?;
        let mut kept: Vec<Perm> = Vec::new();
        for e in elems {
            if g
                .generators()
                .iter()
                .all(|a| current.contains(&e.conjugate(a).unwrap()))
            {
                kept.push(e);
            }
        }
        let next = Group::from_generators(kept, g.degree())?;
        if next.order() == current.order() {
            return Ok(next);
        }
        current = next;
    }
}

pub fn maximal_subgroups(g: &Group) -> Result<Vec<Group>> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(an.maximal_nodes().into_iter().map(|m| an.node_group(m)).collect())
}

/// Frattini subgroup: intersection of all maximal subgroups.
pub fn frattini(g: &Group) -> Result<Group> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(an.node_group(an.frattini_node()))
}

pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(an
        .minimal_normal_nodes()
        .into_iter()
        .map(|m| an.node_group(m))
        .collect())
}

/// An ascending chief series with its factor orders.
pub struct ChiefSeries {
    pub terms: Vec<Group>,
    pub factor_orders: Vec<u64>,
}

pub fn chief_series(g: &Group) -> Result<ChiefSeries> {
    let an = GroupAnalysis::new(g.clone())?;
    let chain = an.chief_chain_nodes(an.lattice().top_node());
    let terms: Vec<Group> = chain.iter().map(|&k| an.node_group(k)).collect();
    let factor_orders = chain
        .windows(2)
        .map(|w| an.node_order(w[1]) / an.node_order(w[0]))
        .collect();
    Ok(ChiefSeries {
        terms,
        factor_orders,
    })
}

/// Is `g` primitive, and if so, a canonical primitivator.
pub fn is_primitive(g: &Group) -> Result<(bool, Option<Group>)> {
    let an = GroupAnalysis::new(g.clone())?;
    let prims = an.primitivator_nodes();
    match prims.first() {
        Some(&m) => Ok((true, Some(an.node_group(m)))),
        None => Ok((false, None)),
    }
}

/// Outcome of checking the structure of a soluble primitive group: trivial
/// Frattini subgroup; self-centralizing Fitting subgroup equal to `O_p`
/// and elementary abelian of order `p^n`; a unique minimal normal subgroup
/// equal to the Fitting subgroup; and for every primitivator `M` a
/// semidirect decomposition `G = F(G) ⋊ M` with `O_p(M) = 1`.
#[derive(Debug, Clone)]
pub struct PrimitiveStructureChecks {
    pub precondition_ok: bool,
    pub frattini_trivial: bool,
    pub fitting_self_centralizing: bool,
    pub fitting_equals_op: bool,
    pub fitting_elementary_abelian: bool,
    pub p: u64,
    pub exponent: u32,
    pub unique_minimal_normal: bool,
    pub minimal_equals_fitting: bool,
    pub primitivators: Vec<PrimitivatorCheck>,
}

#[derive(Debug, Clone)]
pub struct PrimitivatorCheck {
    pub order: u64,
    pub complement_ok: bool,
    pub op_of_m_trivial: bool,
}

impl PrimitiveStructureChecks {
    pub fn all_hold(&self) -> bool {
        self.precondition_ok
            && self.frattini_trivial
            && self.fitting_self_centralizing
            && self.fitting_equals_op
            && self.fitting_elementary_abelian
            && self.unique_minimal_normal
            && self.minimal_equals_fitting
            && !self.primitivators.is_empty()
            && self
                .primitivators
                .iter()
                .all(|c| c.complement_ok && c.op_of_m_trivial)
    }
}

pub fn verify_primitive_soluble_structure(g: &Group) -> Result<PrimitiveStructureChecks> {
    let an = GroupAnalysis::new(g.clone())?;
    Ok(verify_primitive_soluble_structure_analyzed(&an))
}

pub(crate) fn verify_primitive_soluble_structure_analyzed(
    an: &GroupAnalysis,
) -> PrimitiveStructureChecks {
    let lat = an.lattice();
    let top = lat.top_node();
    let trivial = lat.trivial_node();
    let prim_nodes = an.primitivator_nodes();
    let soluble = an.classes().soluble(top);
    let precondition_ok = soluble && !prim_nodes.is_empty();

    let fitting_node = an.fitting_node_in(top);
    let fitting_order = an.node_order(fitting_node);
    let p = *prime_divisors(fitting_order).first().unwrap_or(&0);
    let exponent = if p > 1 {
        let mut e = 0;
        let mut o = fitting_order;
        while o % p == 0 {
            o /= p;
            e += 1;
        }
        e
    } else {
        0
    };
    let fitting_is_p_group = p > 1 && fitting_order == p_part(fitting_order, p);
    let fitting_set = &lat.node(fitting_node).set;
    let t = an.tables();
    let elementary = fitting_is_p_group
        && fitting_set
            .iter()
            .all(|e| e == 0 || t.elem_order[e] as u64 == p)
        && fitting_set
            .iter()
            .all(|a| fitting_set.iter().all(|b| t.mul(a, b) == t.mul(b, a)));

    let centralizer = an.centralizer_set_in(top, fitting_node);
    let minimals = an.minimal_normal_nodes();

    let primitivators = prim_nodes
        .iter()
        .map(|&m| {
            let m_order = an.node_order(m);
            let m_set = &lat.node(m).set;
            let intersection_trivial = fitting_set.intersect(m_set).len() == 1;
            let complement_ok =
                intersection_trivial && fitting_order * m_order == an.order();
            let op_of_m_trivial = p <= 1 || an.o_p_node_in(m, p) == trivial;
            PrimitivatorCheck {
                order: m_order,
                complement_ok,
                op_of_m_trivial,
            }
        })
        .collect();

    PrimitiveStructureChecks {
        precondition_ok,
        frattini_trivial: an.frattini_node() == trivial,
        fitting_self_centralizing: &centralizer == fitting_set,
        fitting_equals_op: p > 1 && an.o_p_node_in(top, p) == fitting_node,
        fitting_elementary_abelian: elementary,
        p,
        exponent,
        unique_minimal_normal: minimals.len() == 1,
        minimal_equals_fitting: minimals == vec![fitting_node],
        primitivators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        alternating, cyclic, cyclic_semidirect, dihedral, elementary_abelian, quaternion8,
        quotient_as_group, standard_catalog, symmetric,
    };
    use crate::parse_cycles;

    fn node_orders(an: &GroupAnalysis) -> Vec<u64> {
        (0..an.lattice().node_count())
            .map(|k| an.node_order(k))
            .collect()
    }

    #[test]
    fn s3_has_six_subgroups() {
        let an = GroupAnalysis::new(symmetric(3).unwrap()).unwrap();
        assert_eq!(node_orders(&an), vec![1, 2, 2, 2, 3, 6]);
        // exhaustive subset-closure oracle agrees
        let oracle =
            GroupAnalysis::with_exhaustive_lattice(symmetric(3).unwrap(), 400).unwrap();
        assert_eq!(node_orders(&oracle), vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn cyclic_prime_has_two_subgroups() {
        for p in [2u32, 3, 5, 7, 11] {
            let an = GroupAnalysis::new(cyclic(p).unwrap()).unwrap();
            assert_eq!(an.lattice().node_count(), 2);
        }
    }

    #[test]
    fn elementary_abelian_four_has_five_subgroups() {
        let an = GroupAnalysis::new(elementary_abelian(2, 2).unwrap()).unwrap();
        assert_eq!(an.lattice().node_count(), 5);
        let oracle =
            GroupAnalysis::with_exhaustive_lattice(elementary_abelian(2, 2).unwrap(), 400)
                .unwrap();
        assert_eq!(oracle.lattice().node_count(), 5);
    }

    #[test]
    fn quaternion_lattice_needs_composite_extension_steps() {
        // Q8 is the classic case where extending only by prime-order
        // elements would miss the C4 → Q8 step.
        let an = GroupAnalysis::new(quaternion8()).unwrap();
        assert_eq!(node_orders(&an), vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn cyclic_extension_matches_subset_closure_on_small_catalog() {
        for entry in standard_catalog(24).unwrap() {
            let fast = GroupAnalysis::new(entry.group.clone()).unwrap();
            let slow =
                GroupAnalysis::with_exhaustive_lattice(entry.group.clone(), 400).unwrap();
            assert_eq!(
                node_orders(&fast),
                node_orders(&slow),
                "lattice mismatch for {}",
                entry.name
            );
            for k in 0..fast.lattice().node_count() {
                assert_eq!(
                    fast.lattice().node(k).ids,
                    slow.lattice().node(k).ids,
                    "node sets differ for {}",
                    entry.name
                );
            }
        }
    }

    #[test]
    fn lattice_cap_is_enforced() {
        assert!(matches!(
            GroupAnalysis::with_cap(symmetric(4).unwrap(), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn normality_flags_match_brute_force() {
        for entry in standard_catalog(16).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let t = an.tables();
            for k in 0..an.lattice().node_count() {
                let set = &an.lattice().node(k).set;
                let brute = (0..t.n).all(|g| &t.conj_set(set, g) == set);
                assert_eq!(
                    an.lattice().is_normal_node(k),
                    brute,
                    "node {k} of {}",
                    entry.name
                );
            }
        }
    }

    #[test]
    fn center_of_quaternion_has_order_two() {
        assert_eq!(center(&quaternion8()).unwrap().order(), 2);
    }

    #[test]
    fn centralizer_in_abelian_group_is_everything() {
        let c12 = cyclic(12).unwrap();
        let z = centralizer(&c12, c12.generators()).unwrap();
        assert_eq!(z.order(), 12);
    }

    #[test]
    fn normalizer_of_sylow_three_in_s3_is_whole_group() {
        let s3 = symmetric(3).unwrap();
        let c3 = crate::group::generated_subgroup(&s3, &[parse_cycles("(1 2 3)", 3).unwrap()])
            .unwrap();
        assert_eq!(normalizer(&s3, &c3).unwrap().order(), 6);
        let c2 = crate::group::generated_subgroup(&s3, &[parse_cycles("(1 2)", 3).unwrap()])
            .unwrap();
        assert_eq!(normalizer(&s3, &c2).unwrap().order(), 2);
    }

    #[test]
    fn derived_series_of_s4() {
        let orders: Vec<u64> = derived_series(&symmetric(4).unwrap())
            .unwrap()
            .iter()
            .map(|g| g.order())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_soluble(&symmetric(4).unwrap()).unwrap());
    }

    #[test]
    fn a5_is_perfect_and_insoluble() {
        let a5 = alternating(5).unwrap();
        let derived = derived_subgroup(&a5).unwrap();
        assert_eq!(derived.order(), 60);
        assert!(!is_soluble(&a5).unwrap());
    }

    #[test]
    fn abelian_groups_have_trivial_derived_subgroup() {
        assert!(derived_subgroup(&cyclic(9).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn nilpotency_via_lower_central_series() {
        assert!(is_nilpotent(&quaternion8()).unwrap());
        assert!(is_nilpotent(&cyclic(12).unwrap()).unwrap());
        assert!(!is_nilpotent(&symmetric(3).unwrap()).unwrap());
        let orders: Vec<u64> = lower_central_series(&quaternion8())
            .unwrap()
            .iter()
            .map(|g| g.order())
            .collect();
        assert_eq!(orders, vec![8, 2, 1]);
    }

    #[test]
    fn nilpotency_agrees_with_unique_sylow_criterion() {
        for entry in standard_catalog(24).unwrap() {
            let via_series = is_nilpotent(&entry.group).unwrap();
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let via_sylow = an.classes().nilpotent(an.lattice().top_node());
            assert_eq!(via_series, via_sylow, "{}", entry.name);
        }
    }

    #[test]
    fn fitting_of_s4_is_the_four_group() {
        let s4 = symmetric(4).unwrap();
        let f = fitting(&s4).unwrap();
        assert_eq!(f.order(), 4);
        assert!(is_normal(&s4, &f).unwrap());
        assert!(is_nilpotent(&f).unwrap());
        // agrees with the largest-normal-nilpotent lattice scan
        let an = GroupAnalysis::new(s4).unwrap();
        let best = (0..an.lattice().node_count())
            .filter(|&k| {
                an.lattice().is_normal_node(k) && an.classes().nilpotent(k)
            })
            .max_by_key(|&k| an.node_order(k))
            .unwrap();
        assert_eq!(an.node_order(best), 4);
        assert_eq!(an.find_node(&f).unwrap(), best);
    }

    #[test]
    fn fitting_of_nilpotent_group_is_itself() {
        let q8 = quaternion8();
        assert_eq!(fitting(&q8).unwrap().order(), 8);
    }

    #[test]
    fn o_p_values() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(o_p(&s3, 3).unwrap().order(), 3);
        assert_eq!(o_p(&s3, 2).unwrap().order(), 1);
        assert_eq!(o_p(&s3, 5).unwrap().order(), 1);
        let s4 = symmetric(4).unwrap();
        assert_eq!(o_p(&s4, 2).unwrap().order(), 4);
    }

    #[test]
    fn maximal_subgroups_of_s3() {
        let mut orders: Vec<u64> = maximal_subgroups(&symmetric(3).unwrap())
            .unwrap()
            .iter()
            .map(|g| g.order())
            .collect();
        orders.sort();
        assert_eq!(orders, vec![2, 2, 2, 3]);
    }

    #[test]
    fn frattini_values() {
        // dihedral of order 8: Frattini = centre, order 2
        assert_eq!(frattini(&dihedral(4).unwrap()).unwrap().order(), 2);
        assert!(frattini(&symmetric(3).unwrap()).unwrap().is_trivial());
        assert_eq!(frattini(&cyclic(4).unwrap()).unwrap().order(), 2);
    }

    #[test]
    fn frattini_quotient_has_trivial_frattini() {
        for entry in standard_catalog(16).unwrap() {
            let phi = frattini(&entry.group).unwrap();
            let (q, _) = quotient_as_group(&entry.group, &phi).unwrap();
            assert!(
                frattini(&q).unwrap().is_trivial(),
                "Frattini idempotence fails for {}",
                entry.name
            );
        }
    }

    #[test]
    fn core_of_transposition_in_s3_is_trivial() {
        let s3 = symmetric(3).unwrap();
        let c2 = crate::group::generated_subgroup(&s3, &[parse_cycles("(1 2)", 3).unwrap()])
            .unwrap();
        assert!(core(&s3, &c2).unwrap().is_trivial());
    }

    #[test]
    fn core_properties_on_small_catalog() {
        for entry in standard_catalog(12).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            for k in 0..an.lattice().node_count() {
                let h = an.node_group(k);
                let c = core(&entry.group, &h).unwrap();
                assert!(is_normal(&entry.group, &c).unwrap());
                assert!(h.contains_group(&c));
                // contains every normal node inside h
                let core_node = an.core_node(k);
                assert_eq!(an.node_order(core_node), c.order());
                for m in 0..an.lattice().node_count() {
                    if an.lattice().is_normal_node(m) && an.lattice().contains_node(k, m) {
                        assert!(an.lattice().contains_node(core_node, m));
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_normal_subgroups_of_s4() {
        let minimals = minimal_normal_subgroups(&symmetric(4).unwrap()).unwrap();
        assert_eq!(minimals.len(), 1);
        assert_eq!(minimals[0].order(), 4);
    }

    #[test]
    fn chief_series_values() {
        let s4 = chief_series(&symmetric(4).unwrap()).unwrap();
        assert_eq!(s4.factor_orders, vec![4, 3, 2]);
        assert_eq!(
            s4.terms.iter().map(|g| g.order()).collect::<Vec<_>>(),
            vec![1, 4, 12, 24]
        );

        let c6 = chief_series(&cyclic(6).unwrap()).unwrap();
        assert_eq!(c6.factor_orders, vec![2, 3]);

        let a5 = chief_series(&alternating(5).unwrap()).unwrap();
        assert_eq!(a5.factor_orders, vec![60]);
    }

    #[test]
    fn chief_factors_admit_no_intermediate_normal_subgroup() {
        for entry in standard_catalog(24).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let chain = an.chief_chain_nodes(an.lattice().top_node());
            for w in chain.windows(2) {
                for k in 0..an.lattice().node_count() {
                    let strictly_between = an.lattice().contains_node(w[1], k)
                        && an.lattice().contains_node(k, w[0])
                        && k != w[0]
                        && k != w[1];
                    assert!(
                        !(strictly_between && an.lattice().is_normal_node(k)),
                        "intermediate normal node in {}",
                        entry.name
                    );
                }
            }
        }
    }

    #[test]
    fn dedekind_identity_spot_check() {
        // for A ≤ H ≤ G and B ≤ G with AB a subgroup: H ∩ AB = A(H ∩ B)
        for entry in standard_catalog(16).unwrap() {
            let an = GroupAnalysis::new(entry.group.clone()).unwrap();
            let lat = an.lattice();
            let t = an.tables();
            let count = lat.node_count();
            for h in (0..count).step_by(2) {
                for a in (0..count).step_by(2) {
                    if !lat.contains_node(h, a) {
                        continue;
                    }
                    for b in (0..count).step_by(3) {
                        let ab = t.set_product(&lat.node(a).set, &lat.node(b).set);
                        if an.find_set(&ab).is_none() {
                            continue;
                        }
                        let lhs = lat.node(h).set.intersect(&ab);
                        let h_cap_b = lat.node(h).set.intersect(&lat.node(b).set);
                        let rhs = t.set_product(&lat.node(a).set, &h_cap_b);
                        assert_eq!(lhs, rhs, "Dedekind fails in {}", entry.name);
                    }
                }
            }
        }
    }

    #[test]
    fn primitivity_verdicts() {
        let (prim, m) = is_primitive(&symmetric(3).unwrap()).unwrap();
        assert!(prim);
        assert_eq!(m.unwrap().order(), 2);

        let (c4_prim, _) = is_primitive(&cyclic(4).unwrap()).unwrap();
        assert!(!c4_prim);

        let (f20_prim, m) = is_primitive(&cyclic_semidirect(5, 4, 2).unwrap()).unwrap();
        assert!(f20_prim);
        assert_eq!(m.unwrap().order(), 4);
    }

    #[test]
    fn primitive_soluble_structure_of_s3() {
        let checks = verify_primitive_soluble_structure(&symmetric(3).unwrap()).unwrap();
        assert!(checks.all_hold());
        assert_eq!(checks.p, 3);
        assert_eq!(checks.exponent, 1);
    }

    #[test]
    fn primitive_soluble_structure_of_frobenius_groups() {
        let f20 = verify_primitive_soluble_structure(&cyclic_semidirect(5, 4, 2).unwrap())
            .unwrap();
        assert!(f20.all_hold());
        assert_eq!(f20.p, 5);

        let f21 = verify_primitive_soluble_structure(&cyclic_semidirect(7, 3, 2).unwrap())
            .unwrap();
        assert!(f21.all_hold());
        assert_eq!(f21.p, 7);
    }

    #[test]
    fn non_primitive_group_fails_precondition() {
        let checks = verify_primitive_soluble_structure(&cyclic(4).unwrap()).unwrap();
        assert!(!checks.precondition_ok);
    }

    #[test]
    fn quotient_data_maps_nodes() {
        let s4 = symmetric(4).unwrap();
        let an = GroupAnalysis::new(s4).unwrap();
        let v4 = (0..an.lattice().node_count())
            .find(|&k| an.node_order(k) == 4 && an.lattice().is_normal_node(k))
            .unwrap();
        let q = an.quotient_data(v4).unwrap();
        assert_eq!(q.analysis.order(), 6);
        // image of A4 is the subgroup of order 3
        let a4 = (0..an.lattice().node_count())
            .find(|&k| an.node_order(k) == 12)
            .unwrap();
        let image = q.image_node(&an.lattice().node(a4).set);
        assert_eq!(q.analysis.node_order(image), 3);
    }
}
