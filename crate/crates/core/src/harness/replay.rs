//! Replaying serialized violations.
//!
//! A [`Violation`] carries the ambient group's generators, the subgroup
//! element lists and any parameters, which is enough to rebuild the
//! single failing instance from scratch and re-evaluate the claim it
//! contradicts. `replay_violation` returns `true` when the violation
//! reproduces (the hypothesis holds and the conclusion still fails).

use crate::arith::{p_part, prime_divisors};
use crate::classes::{node_in_class, node_p_closed, node_p_nilpotent, ClassId};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::parse_cycles;
use crate::permutability::{node_msp, node_product};
use crate::structure::{verify_primitive_soluble_structure_analyzed, GroupAnalysis};

use super::report::Violation;
use super::GroupScan;

fn rebuild_group(v: &Violation) -> Result<Group> {
    let mut gens = Vec::new();
    for text in &v.group.generators {
        gens.push(parse_cycles(text, v.group.degree)?);
    }
    Group::from_generators(gens, v.group.degree)
}

fn locate(an: &GroupAnalysis, v: &Violation, role: &str) -> Result<usize> {
    let descriptor = v
        .subgroups
        .iter()
        .find(|s| s.role == role)
        .ok_or_else(|| Error::InvalidParameter(format!("violation lacks role {role:?}")))?;
    let mut ids = Vec::new();
    for text in &descriptor.elements {
        let p = parse_cycles(text, an.group().degree())?;
        ids.push(an.elem_index(&p).ok_or(Error::NotAnElement)?);
    }
    (0..an.lattice().node_count())
        .find(|&k| {
            an.node_order(k) == ids.len() as u64
                && ids.iter().all(|&i| an.lattice().node(k).set.contains(i))
        })
        .ok_or(Error::NotASubgroup)
}

fn class_from_params(v: &Violation) -> Result<ClassId> {
    v.params
        .get("class")
        .ok_or_else(|| Error::InvalidParameter("violation lacks class parameter".into()))?
        .parse()
}

/// Re-runs the single check instance described by a violation record.
/// Returns `true` when the failure reproduces.
pub fn replay_violation(v: &Violation) -> Result<bool> {
    let group = rebuild_group(v)?;
    let an = GroupAnalysis::new(group)?;
    let top = an.lattice().top_node();
    let records = super::enumerate_factorizations(&an, &v.group.name, false);
    let scan = GroupScan::new(&v.group.name, &an, &records);

    let base = v.theorem_id.split('.').next().unwrap_or(&v.theorem_id);
    let reproduced = match base {
        "th2" | "corollary" => {
            let class = class_from_params(v)?;
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            node_msp(&an, a, b).holds
                && node_in_class(&an, a, class)
                && node_in_class(&an, b, class)
                && !node_in_class(&an, top, class)
        }
        "l12" => {
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            node_msp(&an, a, b).holds
                && node_in_class(&an, a, ClassId::Soluble)
                && node_in_class(&an, b, ClassId::Soluble)
                && !node_in_class(&an, top, ClassId::Soluble)
        }
        "l11" => {
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            let primes = prime_divisors(an.order());
            let msp = node_msp(&an, a, b).holds;
            match v.theorem_id.as_str() {
                "l11.1" => {
                    let p = *primes.last().unwrap();
                    msp && node_p_closed(&an, a, p)
                        && node_p_closed(&an, b, p)
                        && !node_p_closed(&an, top, p)
                }
                "l11.2" => {
                    let r = primes[0];
                    msp && node_p_nilpotent(&an, a, r)
                        && node_p_nilpotent(&an, b, r)
                        && !node_p_nilpotent(&an, top, r)
                }
                _ => {
                    msp && an.classes().tower(a)
                        && an.classes().tower(b)
                        && !an.classes().tower(top)
                }
            }
        }
        "l7" => {
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            let p: u64 = v
                .params
                .get("p")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidParameter("missing p".into()))?;
            let sylows = an.sylow_nodes_in(top, p);
            if !node_msp(&an, a, b).holds
                || sylows.len() != 1
                || !an.classes().abelian(sylows[0])
            {
                false
            } else {
                let lat = an.lattice();
                [a, b].iter().any(|&f| {
                    let inter = lat.node(sylows[0]).set.intersect(&lat.node(f).set);
                    let node = an.find_set(&inter).expect("subgroup");
                    !lat.is_normal_node(node)
                })
            }
        }
        "l10" => match v.theorem_id.as_str() {
            "l10.1" => {
                let a = locate(&an, v, "A")?;
                let b = locate(&an, v, "B")?;
                let n = locate(&an, v, "N")?;
                if !node_msp(&an, a, b).holds || !an.lattice().is_normal_node(n) {
                    false
                } else {
                    let q = scan.quotient(n);
                    let a_img = q.image_node(&an.lattice().node(a).set);
                    let b_img = q.image_node(&an.lattice().node(b).set);
                    !node_msp(&q.analysis, a_img, b_img).holds
                }
            }
            "l10.2" => {
                let a = locate(&an, v, "A")?;
                let b = locate(&an, v, "B")?;
                let h = locate(&an, v, "H")?;
                let lat = an.lattice();
                if !node_msp(&an, a, b).holds || !lat.contains_node(h, a) {
                    false
                } else {
                    let inter = lat.node(h).set.intersect(&lat.node(b).set);
                    let hb = an.find_set(&inter).expect("subgroup");
                    !(node_product(&an, a, hb) == Some(h) && node_msp(&an, a, hb).holds)
                }
            }
            _ => {
                let a = locate(&an, v, "A")?;
                let b = locate(&an, v, "B")?;
                let pi: Vec<u64> = v
                    .params
                    .get("pi")
                    .map(|s| s.split(',').filter_map(|x| x.parse().ok()).collect())
                    .unwrap_or_default();
                if !node_msp(&an, a, b).holds
                    || !crate::sylow::hall_property_record_analyzed(&an, &pi).d_holds
                {
                    false
                } else {
                    let g_halls = an.hall_nodes_in(top, &pi);
                    let a_halls = an.hall_nodes_in(a, &pi);
                    let b_halls = an.hall_nodes_in(b, &pi);
                    !g_halls.iter().any(|&ga| {
                        a_halls.iter().any(|&ha| {
                            b_halls.iter().any(|&hb| {
                                node_product(&an, ha, hb) == Some(ga)
                                    && node_msp(&an, ha, hb).holds
                            })
                        })
                    })
                }
            }
        },
        "l13" => {
            let h = locate(&an, v, "H")?;
            let k = locate(&an, v, "K")?;
            let l = locate(&an, v, "L")?;
            let lat = an.lattice();
            let inter = lat.node(h).set.intersect(&lat.node(k).set).len() as u64;
            let product_full = an.node_order(h) * an.node_order(k) / inter == an.order();
            product_full
                && an.node_normal_in(l, h)
                && lat.contains_node(k, l)
                && !lat.contains_node(an.core_node(k), l)
        }
        "l_skiba" => {
            let e = locate(&an, v, "E")?;
            let class = class_from_params(v)?;
            an.lattice().is_normal_node(e)
                && an.classes().cyclic(e)
                && scan.quotient_in_class(e, class)
                && !node_in_class(&an, top, class)
        }
        "l_commprod" => {
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            let class = class_from_params(v)?;
            let commute = an
                .lattice()
                .node(b)
                .set
                .is_subset(&an.centralizer_set_in(top, a));
            commute
                && node_in_class(&an, a, class)
                && node_in_class(&an, b, class)
                && node_product(&an, a, b)
                    .map(|ab| !node_in_class(&an, ab, class))
                    .unwrap_or(true)
        }
        "l3" => {
            let class = class_from_params(v)?;
            let nontrivial_normals: Vec<usize> = (1..an.lattice().node_count())
                .filter(|&k| an.lattice().is_normal_node(k))
                .collect();
            !node_in_class(&an, top, class)
                && nontrivial_normals
                    .iter()
                    .all(|&n| scan.quotient_in_class(n, class))
                && an.primitivator_nodes().is_empty()
        }
        "l4" => {
            let checks = verify_primitive_soluble_structure_analyzed(&an);
            checks.precondition_ok && !checks.all_hold()
        }
        "l_normalizer" => {
            let m = locate(&an, v, "M")?;
            let a = locate(&an, v, "A")?;
            let b = locate(&an, v, "B")?;
            let p: u64 = v
                .params
                .get("p")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidParameter("missing p".into()))?;
            let lat = an.lattice();
            let fitting = an.fitting_node_in(top);
            let hypothesis = an.classes().soluble(top)
                && an.primitivator_nodes().contains(&m)
                && an.node_order(fitting) == p_part(an.order(), p)
                && {
                    let mut normalizes_all = an.full_element_set();
                    for x in lat.nodes_under(fitting) {
                        normalizes_all =
                            normalizes_all.intersect(&an.normalizer_set_of_node(x));
                    }
                    lat.node(b).set.is_subset(&normalizes_all)
                }
                && {
                    let product = an
                        .tables()
                        .set_product(&lat.node(a).set, &lat.node(b).set);
                    &product == &lat.node(m).set
                };
            if !hypothesis {
                false
            } else {
                let b_order = an.node_order(b);
                let conclusion = an.classes().cyclic(b)
                    && (b_order == 1 || (p - 1) % b_order == 0)
                    && lat.node(b).set.is_subset(&an.centralizer_set_in(top, a));
                !conclusion
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "cannot replay theorem id {other:?}"
            )))
        }
    };
    Ok(reproduced)
}
