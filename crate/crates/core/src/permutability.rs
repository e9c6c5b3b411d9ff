//! Permutability predicates between subgroups: setwise product subgroup
//! tests, mutual and total permutability, and msp-permutability.
//!
//! Subgroups `A` and `B` are mutually permutable when `UB = BU` for every
//! `U ≤ A` and `AV = VA` for every `V ≤ B`; totally permutable when
//! `UV = VU` for all such pairs. They are msp-permutable in `G` when `AB`
//! is a subgroup and every Sylow `p`-subgroup of `A` is mutually
//! permutable with every Sylow `q`-subgroup of `B` for all primes
//! `p ≠ q`. "Every" Sylow subgroup is quantified literally over all
//! conjugates within each factor; a fast path tests one representative
//! pair per prime pair first and only expands to the full grid when the
//! representatives pass.
//!
//! Every predicate exists in two forms: a standalone form over [`Group`]
//! values (element sets materialized directly) and a node-level form over
//! a shared [`GroupAnalysis`] used by the verification harness. The two
//! are cross-checked in the test suite.

use std::collections::HashSet;

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;
use crate::structure::GroupAnalysis;
use crate::sylow::sylow_conjugates;

/// Cap on materialized setwise products in the standalone path.
const PRODUCT_CAP: u64 = 5_000;

fn product_set(a: &Group, b: &Group) -> Result<HashSet<Perm>> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    let a_elems = a.elements()?;
    let b_elems = b.elements()?;
    let intersection = a_elems.iter().filter(|e| b.contains(e)).count() as u64;
    let expected = a.order() * b.order() / intersection;
    if expected > PRODUCT_CAP {
        return Err(Error::CapExceeded {
            what: "setwise product",
            needed: expected,
            cap: PRODUCT_CAP,
        });
    }
    let mut out = HashSet::with_capacity(expected as usize);
    for x in &a_elems {
        for y in &b_elems {
            out.insert(x.compose(y)?);
        }
    }
    debug_assert_eq!(out.len() as u64, expected);
    Ok(out)
}

/// Is the setwise product `AB` a subgroup? Decided by `AB = BA`; closure
/// of the product set is asserted to agree in debug builds.
pub fn product_is_subgroup(a: &Group, b: &Group) -> Result<bool> {
    let ab = product_set(a, b)?;
    let ba = product_set(b, a)?;
    let permutes = ab == ba;
    #[cfg(debug_assertions)]
    if ab.len() <= 600 {
        let closed = ab
            .iter()
            .all(|x| ab.iter().all(|y| ab.contains(&x.compose(y).unwrap())));
        debug_assert_eq!(closed, permutes);
    }
    Ok(permutes)
}

/// A subgroup witnessing a mutual-permutability failure.
#[derive(Debug, Clone)]
pub struct MutualWitness {
    /// True when the witness is a `U ≤ A` with `UB ≠ BU`; false when it is
    /// a `V ≤ B` with `AV ≠ VA`.
    pub from_first: bool,
    pub subgroup: Group,
}

/// `UB = BU` for all `U ≤ A` and `AV = VA` for all `V ≤ B`.
pub fn mutually_permutable(a: &Group, b: &Group) -> Result<(bool, Option<MutualWitness>)> {
    let an_a = GroupAnalysis::new(a.clone())?;
    for k in 0..an_a.lattice().node_count() {
        let u = an_a.node_group(k);
        if product_set(&u, b)? != product_set(b, &u)? {
            return Ok((
                false,
                Some(MutualWitness {
                    from_first: true,
                    subgroup: u,
                }),
            ));
        }
    }
    let an_b = GroupAnalysis::new(b.clone())?;
    for k in 0..an_b.lattice().node_count() {
        let v = an_b.node_group(k);
        if product_set(a, &v)? != product_set(&v, a)? {
            return Ok((
                false,
                Some(MutualWitness {
                    from_first: false,
                    subgroup: v,
                }),
            ));
        }
    }
    Ok((true, None))
}

/// `UV = VU` for all `U ≤ A` and `V ≤ B`.
pub fn totally_permutable(a: &Group, b: &Group) -> Result<bool> {
    let an_a = GroupAnalysis::new(a.clone())?;
    let an_b = GroupAnalysis::new(b.clone())?;
    for i in 0..an_a.lattice().node_count() {
        let u = an_a.node_group(i);
        for j in 0..an_b.lattice().node_count() {
            let v = an_b.node_group(j);
            if product_set(&u, &v)? != product_set(&v, &u)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Failing Sylow pair of an msp verdict, independently re-checkable.
#[derive(Debug, Clone)]
pub struct MspFailure {
    pub p: u64,
    pub q: u64,
    pub sylow_p_of_a: Group,
    pub sylow_q_of_b: Group,
    pub witness: MutualWitness,
}

/// Outcome of an msp-permutability check.
#[derive(Debug, Clone)]
pub struct MspVerdict {
    pub holds: bool,
    pub product_is_subgroup: bool,
    pub failing_pair: Option<MspFailure>,
}

/// msp-permutability of `A` and `B` inside `G`.
pub fn msp_permutable(g: &Group, a: &Group, b: &Group) -> Result<MspVerdict> {
    if !g.contains_group(a) || !g.contains_group(b) {
        return Err(Error::NotASubgroup);
    }
    if !product_is_subgroup(a, b)? {
        return Ok(MspVerdict {
            holds: false,
            product_is_subgroup: false,
            failing_pair: None,
        });
    }
    for p in prime_divisors(a.order()) {
        let sylows_a = sylow_conjugates(a, p)?;
        for q in prime_divisors(b.order()) {
            if p == q {
                continue;
            }
            let sylows_b = sylow_conjugates(b, q)?;
            // representative pair first; expand only on success
            let (rep_ok, rep_witness) = mutually_permutable(&sylows_a[0], &sylows_b[0])?;
            if !rep_ok {
                return Ok(MspVerdict {
                    holds: false,
                    product_is_subgroup: true,
                    failing_pair: Some(MspFailure {
                        p,
                        q,
                        sylow_p_of_a: sylows_a[0].clone(),
                        sylow_q_of_b: sylows_b[0].clone(),
                        witness: rep_witness.unwrap(),
                    }),
                });
            }
            for (i, sp) in sylows_a.iter().enumerate() {
                for (j, sq) in sylows_b.iter().enumerate() {
                    if i == 0 && j == 0 {
                        continue;
                    }
                    let (ok, witness) = mutually_permutable(sp, sq)?;
                    if !ok {
                        return Ok(MspVerdict {
                            holds: false,
                            product_is_subgroup: true,
                            failing_pair: Some(MspFailure {
                                p,
                                q,
                                sylow_p_of_a: sp.clone(),
                                sylow_q_of_b: sq.clone(),
                                witness: witness.unwrap(),
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(MspVerdict {
        holds: true,
        product_is_subgroup: true,
        failing_pair: None,
    })
}

// ---------------------------------------------------------------------------
// Node-level fast path over a shared analysis
// ---------------------------------------------------------------------------

/// Does `X·Y = Y·X` setwise, for lattice nodes? Memoized per analysis.
pub(crate) fn node_product_permutes(an: &GroupAnalysis, x: usize, y: usize) -> bool {
    let key = (x.min(y), x.max(y));
    if let Some(&v) = an.permute_memo.lock().unwrap().get(&key) {
        return v;
    }
    let t = an.tables();
    let lat = an.lattice();
    let xy = t.set_product(&lat.node(x).set, &lat.node(y).set);
    let yx = t.set_product(&lat.node(y).set, &lat.node(x).set);
    let v = xy == yx;
    debug_assert_eq!(v, an.find_set(&xy).is_some());
    an.permute_memo.lock().unwrap().insert(key, v);
    v
}

pub(crate) fn node_product_is_subgroup(an: &GroupAnalysis, a: usize, b: usize) -> bool {
    node_product_permutes(an, a, b)
}

/// Node of the setwise product, when it is a subgroup.
pub(crate) fn node_product(an: &GroupAnalysis, a: usize, b: usize) -> Option<usize> {
    let t = an.tables();
    let lat = an.lattice();
    let ab = t.set_product(&lat.node(a).set, &lat.node(b).set);
    an.find_set(&ab)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeMutualWitness {
    pub from_first: bool,
    pub witness: usize,
}

/// Mutual permutability of nodes `a` and `b`; `None` means it holds.
pub(crate) fn node_mutual_failure(
    an: &GroupAnalysis,
    a: usize,
    b: usize,
) -> Option<NodeMutualWitness> {
    let lat = an.lattice();
    for u in lat.nodes_under(a) {
        if !node_product_permutes(an, u, b) {
            return Some(NodeMutualWitness {
                from_first: true,
                witness: u,
            });
        }
    }
    for v in lat.nodes_under(b) {
        if !node_product_permutes(an, a, v) {
            return Some(NodeMutualWitness {
                from_first: false,
                witness: v,
            });
        }
    }
    None
}

#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn node_totally_permutable(an: &GroupAnalysis, a: usize, b: usize) -> bool {
    let lat = an.lattice();
    for u in lat.nodes_under(a) {
        for v in lat.nodes_under(b) {
            if !node_product_permutes(an, u, v) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeMspFailure {
    pub p: u64,
    pub q: u64,
    pub sylow_p_of_a: usize,
    pub sylow_q_of_b: usize,
    pub witness: NodeMutualWitness,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeMspVerdict {
    pub holds: bool,
    pub product_is_subgroup: bool,
    pub failing_pair: Option<NodeMspFailure>,
}

/// msp-permutability of nodes `a` and `b` over the shared analysis.
pub(crate) fn node_msp(an: &GroupAnalysis, a: usize, b: usize) -> NodeMspVerdict {
    if !node_product_is_subgroup(an, a, b) {
        return NodeMspVerdict {
            holds: false,
            product_is_subgroup: false,
            failing_pair: None,
        };
    }
    for p in prime_divisors(an.node_order(a)) {
        let sylows_a = an.sylow_nodes_in(a, p);
        for q in prime_divisors(an.node_order(b)) {
            if p == q {
                continue;
            }
            let sylows_b = an.sylow_nodes_in(b, q);
            // representative-first fast path
            if let Some(witness) = node_mutual_failure(an, sylows_a[0], sylows_b[0]) {
                return NodeMspVerdict {
                    holds: false,
                    product_is_subgroup: true,
                    failing_pair: Some(NodeMspFailure {
                        p,
                        q,
                        sylow_p_of_a: sylows_a[0],
                        sylow_q_of_b: sylows_b[0],
                        witness,
                    }),
                };
            }
            for (i, &sp) in sylows_a.iter().enumerate() {
                for (j, &sq) in sylows_b.iter().enumerate() {
                    if i == 0 && j == 0 {
                        continue;
                    }
                    if let Some(witness) = node_mutual_failure(an, sp, sq) {
                        return NodeMspVerdict {
                            holds: false,
                            product_is_subgroup: true,
                            failing_pair: Some(NodeMspFailure {
                                p,
                                q,
                                sylow_p_of_a: sp,
                                sylow_q_of_b: sq,
                                witness,
                            }),
                        };
                    }
                }
            }
        }
    }
    NodeMspVerdict {
        holds: true,
        product_is_subgroup: true,
        failing_pair: None,
    }
}
