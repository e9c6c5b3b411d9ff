//! Subgroup lattice storage and the two lattice construction algorithms.

use std::collections::HashMap;



/// Bitset over element (or node) indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ElemSet {
    bits: Vec<u64>,
}

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        ElemSet {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> SetIter<'_> {
        SetIter {
            bits: &self.bits,
            word: 0,
            current: if self.bits.is_empty() { 0 } else { self.bits[0] },
        }
    }

    pub fn to_ids(&self) -> Vec<u16> {
        self.iter().map(|i| i as u16).collect()
    }
}

pub(crate) struct SetIter<'a> {
    bits: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for SetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= self.bits.len() {
                return None;
            }
            self.current = self.bits[self.word];
        }
    }
}

/// Multiplication and inversion tables over the enumerated elements,
/// shared by the lattice builders and the analysis layer.
pub(crate) struct Tables {
    pub n: usize,
    pub mul: Vec<u16>,
    pub inv: Vec<u16>,
    pub elem_order: Vec<u32>,
    pub gen_ids: Vec<usize>,
}

impl Tables {
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ · a · g`
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn conj_set(&self, set: &ElemSet, g: usize) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for a in set.iter() {
            out.insert(self.conj(a, g));
        }
        out
    }

    /// Subgroup closure of a generating list: orbit of the identity under
    /// right multiplication by the generators.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.n);
        set.insert(0);
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let e = queue[qi];
            qi += 1;
            for &g in gens {
                let x = self.mul(e, g);
                if !set.contains(x) {
                    set.insert(x);
                    queue.push(x);
                }
            }
        }
        set
    }

    /// Setwise product `X · Y`.
    pub fn set_product(&self, x: &ElemSet, y: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for a in x.iter() {
            let row = a * self.n;
            for b in y.iter() {
                out.insert(self.mul[row + b] as usize);
            }
        }
        out
    }

    /// Derived set: subgroup generated by all commutators of `set`.
    pub fn derived_set(&self, set: &ElemSet) -> ElemSet {
        let mut gens = Vec::new();
        for a in set.iter() {
            for b in set.iter() {
                // [a, b] = a⁻¹ b⁻¹ a b
                let c = self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub set: ElemSet,
    pub ids: Vec<u16>,
    pub order: u64,
    pub gens: Vec<usize>,
}

/// The full subgroup lattice of the ambient group: nodes in canonical
/// order (ascending order, then element fingerprint), parent-normality
/// flags, containment bitsets, and prime-index cover edges.
pub struct SubgroupLattice {
    pub(crate) nodes: Vec<Node>,
    pub(crate) set_index: HashMap<ElemSet, usize>,
    pub(crate) normal: Vec<bool>,
    /// `sub_bits[i]`: bitset over node indices `j` with `node_j ⊆ node_i`
    /// (including `i` itself).
    pub(crate) sub_bits: Vec<ElemSet>,
    /// `up_prime[i]`: nodes `j` with `node_i ⊂ node_j` and prime index.
    pub(crate) up_prime: Vec<Vec<usize>>,
}

pub(crate) enum LatticeMode {
    /// Layered cyclic extension (the production algorithm).
    CyclicExtension,
    /// Exhaustive extend-by-any-element closure (oracle cross-check).
    SubsetClosure,
}

pub(crate) fn build_lattice(tables: &Tables, mode: LatticeMode) -> SubgroupLattice {
    let node_sets = match mode {
        LatticeMode::CyclicExtension => cyclic_extension_sets(tables),
        LatticeMode::SubsetClosure => subset_closure_sets(tables),
    };

    // Canonical node order: (order, element-id fingerprint).
    let mut nodes: Vec<Node> = node_sets
        .into_iter()
        .map(|(set, gens)| {
            let ids = set.to_ids();
            Node {
                order: ids.len() as u64,
                ids,
                set,
                gens,
            }
        })
        .collect();
    nodes.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.ids.cmp(&b.ids)));

    let set_index: HashMap<ElemSet, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, node)| (node.set.clone(), i))
        .collect();

    let normal: Vec<bool> = nodes
        .iter()
        .map(|node| {
            tables
                .gen_ids
                .iter()
                .all(|&g| tables.conj_set(&node.set, g) == node.set)
        })
        .collect();

    let count = nodes.len();
    let mut sub_bits: Vec<ElemSet> = vec![ElemSet::empty(count); count];
    for i in 0..count {
        for j in 0..count {
            if nodes[j].order <= nodes[i].order && nodes[j].set.is_subset(&nodes[i].set) {
                sub_bits[i].insert(j);
            }
        }
    }

    let mut up_prime: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, node) in nodes.iter().enumerate() {
        for (j, over) in nodes.iter().enumerate() {
            if over.order > node.order
                && over.order % node.order == 0
                && crate::arith::is_prime(over.order / node.order)
                && sub_bits[j].contains(i)
            {
                up_prime[i].push(j);
            }
        }
    }

    SubgroupLattice {
        nodes,
        set_index,
        normal,
        sub_bits,
        up_prime,
    }
}

/// All subgroups via layered cyclic extension: seed with every cyclic
/// subgroup (plus the soluble residual and the whole group, which covers
/// the insoluble groups in catalog scope), then repeatedly extend each
/// subgroup `H` by a normalizing element of prime order modulo `H`.
fn cyclic_extension_sets(tables: &Tables) -> Vec<(ElemSet, Vec<usize>)> {
    let n = tables.n;
    let mut sets: Vec<(ElemSet, Vec<usize>)> = Vec::new();
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let push = |set: ElemSet, gens: Vec<usize>, sets: &mut Vec<(ElemSet, Vec<usize>)>,
                    seen: &mut HashMap<ElemSet, ()>| {
        if seen.insert(set.clone(), ()).is_none() {
            sets.push((set, gens));
        }
    };

    push(
        ElemSet::singleton(n, 0),
        Vec::new(),
        &mut sets,
        &mut seen,
    );
    for x in 1..n {
        push(tables.closure(&[x]), vec![x], &mut sets, &mut seen);
    }
    // Soluble residual: limit of the derived series of the whole group.
    let mut full = ElemSet::empty(n);
    for i in 0..n {
        full.insert(i);
    }
    let mut residual = full.clone();
    loop {
        let next = tables.derived_set(&residual);
        if next == residual {
            break;
        }
        residual = next;
    }
    if residual.len() > 1 {
        let gens: Vec<usize> = residual.iter().filter(|&i| i != 0).collect();
        push(residual, gens, &mut sets, &mut seen);
    }
    let full_gens = tables.gen_ids.clone();
    push(full, full_gens, &mut sets, &mut seen);

    let mut i = 0;
    while i < sets.len() {
        let (h_set, h_gens) = sets[i].clone();
        let h_order = h_set.len();
        if h_order == n {
            i += 1;
            continue;
        }
        // Normalizer of H, element by element (with a fast exit when H is
        // invariant under the whole generator set).
        let h_is_normal = tables
            .gen_ids
            .iter()
            .all(|&g| tables.conj_set(&h_set, g) == h_set);
        let normalizer: Vec<usize> = if h_is_normal {
            (0..n).collect()
        } else {
            (0..n)
                .filter(|&g| tables.conj_set(&h_set, g) == h_set)
                .collect()
        };
        for &g in &normalizer {
            if h_set.contains(g) {
                continue;
            }
            // Order of g modulo H: smallest m ≥ 1 with g^m ∈ H. The
            // extension H·⟨g⟩ is a subgroup exactly when that order is
            // prime (g normalizes H, so the coset union is closed).
            let mut m = 1u64;
            let mut power = g;
            while !h_set.contains(power) {
                power = tables.mul(power, g);
                m += 1;
            }
            if !crate::arith::is_prime(m) {
                continue;
            }
            let mut k_set = h_set.clone();
            let mut g_pow = g;
            for _ in 0..m {
                for h in h_set.iter() {
                    k_set.insert(tables.mul(h, g_pow));
                }
                g_pow = tables.mul(g_pow, g);
            }
            let mut gens = h_gens.clone();
            gens.push(g);
            push(k_set, gens, &mut sets, &mut seen);
        }
        i += 1;
    }
    sets
}

/// Oracle-mode construction: breadth-first closure extending every known
/// subgroup by every element. Complete for any group, used to cross-check
/// the cyclic-extension path.
fn subset_closure_sets(tables: &Tables) -> Vec<(ElemSet, Vec<usize>)> {
    let n = tables.n;
    let mut sets: Vec<(ElemSet, Vec<usize>)> = Vec::new();
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let trivial = ElemSet::singleton(n, 0);
    seen.insert(trivial.clone(), ());
    sets.push((trivial, Vec::new()));
    let mut i = 0;
    while i < sets.len() {
        let (h_set, h_gens) = sets[i].clone();
        for g in 1..n {
            if h_set.contains(g) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(g);
            let k_set = tables.closure(&gens);
            if !seen.contains_key(&k_set) {
                seen.insert(k_set.clone(), ());
                sets.push((k_set, gens));
            }
        }
        i += 1;
    }
    sets
}

impl SubgroupLattice {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_order(&self, i: usize) -> u64 {
        self.nodes[i].order
    }

    /// Trivial subgroup (always the first node).
    pub fn trivial_node(&self) -> usize {
        0
    }

    /// The whole group (always the last node).
    pub fn top_node(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Is node `j` contained in node `i`?
    pub fn contains_node(&self, i: usize, j: usize) -> bool {
        self.sub_bits[i].contains(j)
    }

    pub fn is_normal_node(&self, i: usize) -> bool {
        self.normal[i]
    }

    /// Node ids contained in `i`, ascending.
    pub fn nodes_under(&self, i: usize) -> Vec<usize> {
        self.sub_bits[i].iter().collect()
    }

    /// Prime-index cover edges leaving node `i` upward.
    pub fn prime_up_edges(&self, i: usize) -> &[usize] {
        &self.up_prime[i]
    }

    pub(crate) fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub(crate) fn find_set(&self, set: &ElemSet) -> Option<usize> {
        self.set_index.get(set).copied()
    }

    /// Checks Lagrange consistency; used by tests and debug assertions.
    pub fn orders_divide_parent(&self) -> bool {
        let top = self.node_order(self.top_node());
        self.nodes.iter().all(|node| top % node.order == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elemset_basics() {
        let mut s = ElemSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        let t = ElemSet::singleton(130, 64);
        assert!(t.is_subset(&s));
        assert!(!s.is_subset(&t));
        assert_eq!(s.intersect(&t).len(), 1);
    }
}
