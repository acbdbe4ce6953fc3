//! Subloop lattice, minimal generating sets and special rank.
//!
//! Everything here grows subloops one generator at a time. Two facts keep the
//! searches small:
//! - `<S, s·x> = <S, x>` for `s ∈ S`, so only one element per coset of `S`
//!   needs to be tried;
//! - when looking for one target `H`, an extension `<S, x>` with `x` inside an
//!   already computed `<S, y> ≠ H` is dominated and can be skipped.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{Cml, Element, FiniteLoop, Subloop};
use crate::mult_group::inner_mapping_group;
use crate::report::{CheckReport, ReportBuilder};

use super::subloop_class;

/// Largest loop order accepted by the lattice computations.
pub const LATTICE_MAX_ORDER: usize = 243;

/// Distinct `<S, x>` for `x ∈ within \ S`, trying one `x` per coset `S·x`.
fn coset_extensions(l: &FiniteLoop, s: &Subloop, within: &[Element]) -> Vec<(Element, Subloop)> {
    let mut done = s.mask().to_vec();
    let mut out = Vec::new();
    for &x in within {
        if done[x] {
            continue;
        }
        for &m in s.members() {
            done[l.mul(m, x)] = true;
            done[l.mul(x, m)] = true;
        }
        out.push((x, s.extend(l, &[x])));
    }
    out
}

/// Every subloop of `l`, sorted by order and then by members.
pub fn all_subloops(l: &FiniteLoop) -> Result<Vec<Subloop>> {
    if l.order() > LATTICE_MAX_ORDER {
        return Err(Error::BudgetExceeded {
            order: l.order(),
            limit: LATTICE_MAX_ORDER,
        });
    }
    let all_elements: Vec<Element> = l.elements().collect();
    let trivial = Subloop::trivial(l);
    let mut seen: HashSet<Subloop> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let found: Vec<Vec<(Element, Subloop)>> = frontier
            .par_iter()
            .map(|s| coset_extensions(l, s, &all_elements))
            .collect();
        let mut next = Vec::new();
        for (_, t) in found.into_iter().flatten() {
            if seen.insert(t.clone()) {
                next.push(t);
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subloop> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Proper subloops contained in no other proper subloop. Each one is checked
/// for normality; a non-normal one is returned as `NormalityViolation` with
/// a member and its image under an inner mapping.
pub fn maximal_subloops(l: &FiniteLoop) -> Result<Vec<Subloop>> {
    let subs = all_subloops(l)?;
    let proper: Vec<&Subloop> = subs.iter().filter(|s| !s.is_whole()).collect();
    let maximal: Vec<Subloop> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.is_subset_of(t))
        })
        .map(|s| (*s).clone())
        .collect();
    let inner = inner_mapping_group(l);
    for m in &maximal {
        for phi in inner.generators() {
            if let Some(&x) = m.members().iter().find(|&&x| !m.contains(phi.apply(x))) {
                return Err(Error::NormalityViolation {
                    witness: vec![x, phi.apply(x)],
                });
            }
        }
    }
    Ok(maximal)
}

/// A minimal generating set of a subloop with its lower-bound evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGenerators {
    pub count: usize,
    pub generators: Vec<Element>,
    /// Distinct closures of `count - 1` generators that were examined and
    /// found different from the target.
    pub refuted_below: usize,
}

/// Least number of elements of `h` that generate `h`.
pub fn min_generators(l: &FiniteLoop, h: &Subloop) -> MinGenerators {
    if h.order() == 1 {
        return MinGenerators {
            count: 0,
            generators: Vec::new(),
            refuted_below: 0,
        };
    }
    let mut level: Vec<(Subloop, Vec<Element>)> = vec![(Subloop::trivial(l), Vec::new())];
    let mut count = 0;
    loop {
        count += 1;
        let mut seen: HashSet<Subloop> = HashSet::new();
        let mut next = Vec::new();
        for (s, gens) in &level {
            let mut covered = s.mask().to_vec();
            for &x in h.members() {
                if covered[x] {
                    continue;
                }
                let t = s.extend(l, &[x]);
                let mut g = gens.clone();
                g.push(x);
                if t == *h {
                    return MinGenerators {
                        count,
                        generators: g,
                        refuted_below: level.len(),
                    };
                }
                for &m in t.members() {
                    covered[m] = true;
                }
                if seen.insert(t.clone()) {
                    next.push((t, g));
                }
            }
        }
        level = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub special_rank: usize,
    pub witness_subloop: Subloop,
    pub witness_generators: Vec<Element>,
    pub subloop_count: usize,
}

/// Maximum over all subloops of the minimal generator count, at least 1.
pub fn special_rank(l: &FiniteLoop) -> Result<RankReport> {
    let subs = all_subloops(l)?;
    let mins: Vec<MinGenerators> = subs.par_iter().map(|s| min_generators(l, s)).collect();
    let max = mins
        .iter()
        .map(|m| m.count)
        .max()
        .expect("at least the trivial subloop");
    // Largest subloop attaining the maximum.
    let best = (0..subs.len())
        .rev()
        .find(|&i| mins[i].count == max)
        .unwrap();
    Ok(RankReport {
        special_rank: mins[best].count.max(1),
        witness_subloop: subs[best].clone(),
        witness_generators: mins[best].generators.clone(),
        subloop_count: subs.len(),
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every subloop generated by `n ≤ max_gens` elements has class at most
/// `max(1, n - 1)`.
///
/// All `n`-subsets are covered: the distinct closures of `n` elements are
/// grown level by level from those of `n - 1` elements, and each closure is
/// checked at the first level where it appears, which is the tightest bound.
pub fn bruck_slaby_check(l: &Cml, max_gens: usize) -> CheckReport {
    let rb = ReportBuilder::new("lemma1.bruck-slaby");
    let all_elements: Vec<Element> = l.elements().collect();
    let n = l.order();
    let checked: u128 = (1..=max_gens.min(n)).map(|k| binomial(n, k)).sum();
    let trivial = Subloop::trivial(l);
    let mut seen: HashSet<Subloop> = HashSet::from([trivial.clone()]);
    let mut level: Vec<(Subloop, Vec<Element>)> = vec![(trivial, Vec::new())];
    let mut max_class = 0;
    for k in 1..=max_gens {
        let found: Vec<Vec<(Element, Subloop)>> = level
            .par_iter()
            .map(|(s, _)| coset_extensions(l, s, &all_elements))
            .collect();
        let mut next = Vec::new();
        for ((_, gens), exts) in level.iter().zip(found) {
            for (x, t) in exts {
                if seen.insert(t.clone()) {
                    let mut g = gens.clone();
                    g.push(x);
                    next.push((t, g));
                }
            }
        }
        let bound = (k - 1).max(1);
        let classes: Vec<Option<usize>> =
            next.par_iter().map(|(t, _)| subloop_class(l, t)).collect();
        if let Some(i) = classes.iter().position(|c| c.is_none_or(|c| c > bound)) {
            let note = match classes[i] {
                Some(c) => format!("{k} generators give class {c} > {bound}"),
                None => format!("subloop generated by {k} elements is not centrally nilpotent"),
            };
            return rb
                .elements(checked as u64, Some(next[i].1.clone()))
                .with_note(note);
        }
        max_class = classes
            .iter()
            .flatten()
            .copied()
            .fold(max_class, usize::max);
        level = next;
        if level.is_empty() {
            break;
        }
    }
    rb.elements(checked as u64, None).with_note(format!(
        "{} distinct subloops with at most {max_gens} generators, largest class {max_class}",
        seen.len()
    ))
}
