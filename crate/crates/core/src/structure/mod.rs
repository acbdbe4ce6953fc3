//! Centers, centralizers, central series and the checks built on them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{Cml, Element, FiniteLoop, Subloop};
use crate::mult_group::{inner_mapping_group, is_normal_under};
use crate::report::{CheckReport, ReportBuilder};

mod lattice;
mod omega;

pub use lattice::{
    all_subloops, bruck_slaby_check, maximal_subloops, min_generators, special_rank, MinGenerators,
    RankReport, LATTICE_MAX_ORDER,
};
pub use omega::{omega_report, CentralizerEntry, OmegaReport};

/// `Z(L) = {x : (x,y,z) = e for all y, z}`.
pub fn loop_center(l: &Cml) -> Subloop {
    let n = l.order();
    let e = l.identity();
    let mask: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).all(|y| (0..n).all(|z| l.associator(x, y, z) == e)))
        .collect();
    Subloop::from_mask(mask)
}

/// `Z_H(M) = {x ∈ H : x·yz = xy·z for all y, z ∈ M}`.
///
/// The result is checked for closure; a failure would contradict the known
/// fact that centralizers in a CML are subloops, and is returned as an error
/// carrying the offending pair.
pub fn centralizer(l: &Cml, h: &Subloop, m: &[Element]) -> Result<Subloop> {
    for &x in m {
        l.check_element(x)?;
    }
    let mask: Vec<bool> = l
        .elements()
        .map(|x| {
            h.contains(x)
                && m.iter()
                    .all(|&y| m.iter().all(|&z| l.associative_at(x, y, z)))
        })
        .collect();
    let s = Subloop::from_mask(mask);
    match s.closure_witness(l) {
        Some(w) => Err(Error::ClosureViolation { witness: w }),
        None => Ok(s),
    }
}

/// Ascending chain `{e} = Z_0 ⊂ Z_1 ⊂ …` with `Z_{i+1}/Z_i = Z(L/Z_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCentralSeries {
    pub chain: Vec<Subloop>,
    pub class: Option<usize>,
}

/// Preimage of the center of `L/N` under the projection.
fn next_center(l: &Cml, n: &Subloop) -> Subloop {
    let (q, proj) = l
        .quotient_by_congruence(n)
        .expect("series members are normal");
    let zq = loop_center(&Cml::assume(q));
    Subloop::from_mask(l.elements().map(|x| zq.contains(proj.image(x))).collect())
}

pub fn upper_central_series_loop(l: &Cml) -> LoopCentralSeries {
    let mut chain = vec![Subloop::trivial(l)];
    // Every proper step adds at least one element: |L| iterations suffice.
    for _ in 0..l.order() {
        let last = chain.last().unwrap();
        if last.is_whole() {
            break;
        }
        let next = next_center(l, last);
        if next == *last {
            break;
        }
        chain.push(next);
    }
    let class = chain.last().unwrap().is_whole().then(|| chain.len() - 1);
    LoopCentralSeries { chain, class }
}

pub fn nilpotency_class_loop(l: &Cml) -> Result<usize> {
    upper_central_series_loop(l)
        .class
        .ok_or(Error::NotCentrallyNilpotent)
}

/// Class of a subloop viewed as a loop in its own right.
pub(crate) fn subloop_class(l: &Cml, s: &Subloop) -> Option<usize> {
    let (sub, _) = s.to_loop(l);
    upper_central_series_loop(&Cml::assume(sub)).class
}

/// Every element of order 3 that generates a normal subloop is central.
pub fn order3_normal_central_check(l: &Cml) -> CheckReport {
    let rb = ReportBuilder::new("lemma4.order3-normal-central");
    let z = loop_center(l);
    let inner = inner_mapping_group(l);
    let inner_gens = inner.generators();
    let mut normal = 0;
    let mut witness = None;
    for a in l.elements() {
        if l.element_order(a) != 3 {
            continue;
        }
        let h = crate::loops::generate(l, &[a]);
        if is_normal_under(&h, inner_gens) {
            normal += 1;
            if !z.contains(a) {
                witness = Some(vec![a]);
                break;
            }
        }
    }
    rb.elements(l.order() as u64, witness).with_note(format!(
        "{normal} order-3 elements generate normal subloops"
    ))
}

/// `x ↦ (x,a,b)` is a homomorphism into the center with kernel `Z_L({a,b})`.
///
/// Requires every `(x,a,b)` to be central, as in class-2 loops.
pub fn associator_hom_check(l: &Cml, a: Element, b: Element) -> Result<CheckReport> {
    l.check_element(a)?;
    l.check_element(b)?;
    let rb = ReportBuilder::new("lemma3.associator-homomorphism");
    let z = loop_center(l);
    let phi: Vec<Element> = l.elements().map(|x| l.associator(x, a, b)).collect();
    if let Some(x) = l.elements().find(|&x| !z.contains(phi[x])) {
        return Err(Error::HypothesisFailed(format!(
            "associator ({x},{a},{b}) is not central"
        )));
    }
    let n = l.order();
    for x in 0..n {
        for y in 0..n {
            if phi[l.mul(x, y)] != l.mul(phi[x], phi[y]) {
                return Ok(rb
                    .elements((x * n + y + 1) as u64, Some(vec![x, y]))
                    .with_note("not a homomorphism"));
            }
        }
    }
    let centralizer = centralizer(l, &Subloop::whole(l), &[a, b])?;
    let e = l.identity();
    if let Some(x) = l
        .elements()
        .find(|&x| (phi[x] == e) != centralizer.contains(x))
    {
        return Ok(rb
            .elements((n * n) as u64, Some(vec![x]))
            .with_note("kernel differs from Z_L({a,b})"));
    }
    let mut image: Vec<Element> = phi.clone();
    image.sort_unstable();
    image.dedup();
    Ok(rb.elements((n * n) as u64, None).with_note(format!(
        "image order {}, kernel order {}",
        image.len(),
        centralizer.order()
    )))
}

/// For `A = gens` and the pairs `A_i ⊆ A`: `⋂ Z_L(A_i) = Z_L(A)`, the pair
/// associator maps have joint kernel `Z_L(A)`, and they separate the cosets
/// of `Z_L(A)`, so `L/Z_L(A)` embeds into `∏ L/Z_L(A_i)`.
///
/// Requires class at most 2.
pub fn remak_check(l: &Cml, gens: &[Element]) -> Result<CheckReport> {
    for &g in gens {
        l.check_element(g)?;
    }
    match nilpotency_class_loop(l) {
        Ok(c) if c <= 2 => {}
        Ok(c) => return Err(Error::HypothesisFailed(format!("class {c} exceeds 2"))),
        Err(e) => return Err(Error::HypothesisFailed(e.to_string())),
    }
    let rb = ReportBuilder::new("lemma3.remak-embedding");
    let whole = Subloop::whole(l);
    let mut distinct = gens.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let pairs: Vec<(Element, Element)> = distinct
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| distinct[i + 1..].iter().map(move |&b| (a, b)))
        .collect();

    let target = centralizer(l, &whole, gens)?;
    let mut meet = whole.clone();
    for &(a, b) in &pairs {
        meet = meet.intersection(&centralizer(l, &whole, &[a, b])?);
    }
    if let Some(x) = l
        .elements()
        .find(|&x| meet.contains(x) != target.contains(x))
    {
        return Ok(rb
            .elements(l.order() as u64, Some(vec![x]))
            .with_note("intersection differs from Z_L(A)"));
    }

    let e = l.identity();
    let signature = |x: Element| -> Vec<Element> {
        pairs.iter().map(|&(a, b)| l.associator(x, a, b)).collect()
    };
    let sigs: Vec<Vec<Element>> = l.elements().map(signature).collect();
    if let Some(x) = l
        .elements()
        .find(|&x| sigs[x].iter().all(|&v| v == e) != target.contains(x))
    {
        return Ok(rb
            .elements(l.order() as u64, Some(vec![x]))
            .with_note("joint kernel differs from Z_L(A)"));
    }
    let n = l.order();
    for x in 0..n {
        for y in 0..n {
            if (sigs[x] == sigs[y]) != target.contains(l.left_div(x, y)) {
                return Ok(rb
                    .elements((n * n) as u64, Some(vec![x, y]))
                    .with_note("coset map not injective"));
            }
        }
    }
    Ok(rb.elements((n * n) as u64, None).with_note(format!(
        "{} pairs, Z_L(A) of order {}",
        pairs.len(),
        target.order()
    )))
}

/// `L/Z(L)` with its exponent.
pub fn quotient_by_center(l: &Cml) -> (FiniteLoop, u64) {
    let z = loop_center(l);
    let (q, _) = l.quotient_by_congruence(&z).expect("the center is normal");
    let exp = q.exponent();
    (q, exp)
}
