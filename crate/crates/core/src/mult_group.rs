//! Translations, the multiplication group and the inner mapping group of a loop.
//!
//! The multiplication group is generated by the left translations only; for
//! commutative loops the right translations coincide with them.

use serde::Serialize;

use crate::loops::{Cml, Element, FiniteLoop, Subloop};
use crate::perm::{
    center, is_p_group, nilpotency_class_group, quotient_is_p_group_check, Permutation,
    PermutationGroup,
};
use crate::report::{CheckConfig, CheckReport, ReportBuilder};

/// `L(x): y ↦ xy` as a permutation of the loop's elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationMap {
    pub element: Element,
    pub perm: Permutation,
}

pub fn left_translation(l: &FiniteLoop, x: Element) -> TranslationMap {
    TranslationMap {
        element: x,
        perm: Permutation::from_raw(l.left_translation_images(x)),
    }
}

fn translations(l: &FiniteLoop) -> Vec<Permutation> {
    l.elements().map(|x| left_translation(l, x).perm).collect()
}

/// The group generated by every left translation.
pub fn multiplication_group(l: &FiniteLoop) -> PermutationGroup {
    PermutationGroup::new(l.order(), translations(l)).expect("translations share the loop's degree")
}

/// Stabilizer of the identity inside the multiplication group, taken from a
/// chain whose first base point is the identity.
pub fn inner_mapping_group(l: &FiniteLoop) -> PermutationGroup {
    PermutationGroup::with_base_prefix(l.order(), translations(l), vec![l.identity()])
        .expect("translations share the loop's degree")
        .first_base_stabilizer()
}

/// `L(x,y) = L(xy)⁻¹ L(x) L(y)` as a map, i.e. `z ↦ (xy)\(x(yz))`.
pub fn inner_map(l: &FiniteLoop, x: Element, y: Element) -> Permutation {
    let lx = left_translation(l, x).perm;
    let ly = left_translation(l, y).perm;
    let lxy = left_translation(l, l.mul(x, y)).perm;
    ly.then(&lx).then(&lxy.inverse())
}

/// True when every map in `inner_gens` sends `h` into itself.
pub fn is_normal_under(h: &Subloop, inner_gens: &[Permutation]) -> bool {
    inner_gens
        .iter()
        .all(|phi| h.members().iter().all(|&m| h.contains(phi.apply(m))))
}

/// Invariance of `h` under the inner mapping group. For commutative loops
/// this is exactly normality.
pub fn is_normal(l: &FiniteLoop, h: &Subloop) -> bool {
    if h.order() == 1 || h.is_whole() {
        return true;
    }
    is_normal_under(h, inner_mapping_group(l).generators())
}

/// Every strong generator of `I(L)` is an automorphism of `L`.
pub fn inner_mappings_are_automorphisms_check(l: &Cml) -> CheckReport {
    let rb = ReportBuilder::new("lemma4.inner-mappings-automorphisms");
    let inner = inner_mapping_group(l);
    let n = l.order();
    let mut checked = 0u64;
    for (k, phi) in inner.generators().iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                if phi.apply(l.mul(x, y)) != l.mul(phi.apply(x), phi.apply(y)) {
                    return rb
                        .elements(checked, Some(vec![x, y]))
                        .with_note(format!("strong generator {k}: {phi}"));
                }
            }
        }
        checked += (n * n) as u64;
    }
    rb.elements(checked, None)
        .with_note(format!("{} strong generators", inner.generators().len()))
}

/// Every classical inner map `L(x,y)` lies in the stabilizer read off the chain.
pub fn inner_mapping_cross_check(l: &FiniteLoop) -> CheckReport {
    let rb = ReportBuilder::new("mult.inner-mapping-cross-check");
    let inner = inner_mapping_group(l);
    let n = l.order();
    for x in 0..n {
        for y in 0..n {
            if !inner.contains(&inner_map(l, x, y)) {
                return rb.elements((x * n + y + 1) as u64, Some(vec![x, y]));
            }
        }
    }
    rb.elements((n * n) as u64, None)
}

/// Aggregated group-theoretic facts about `𝔐(L)`. Orders are decimal strings
/// since they may exceed machine integers for non-CML inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultGroupReport {
    pub degree: usize,
    pub order: String,
    pub inner_order: String,
    pub transitive: bool,
    pub order_is_degree_times_inner: bool,
    pub center_order: Option<String>,
    pub nilpotency_class: Option<usize>,
    pub nilpotent: Option<bool>,
    pub is_3_group: bool,
    pub quotient_by_center_is_3_group: Option<bool>,
    /// Items that could not be computed, with the reason.
    pub skipped: Vec<(String, String)>,
}

pub fn mult_group_invariants(l: &FiniteLoop, cfg: &CheckConfig) -> MultGroupReport {
    let mg = multiplication_group(l);
    let inner = inner_mapping_group(l);
    let order = mg.order();
    let inner_order = inner.order();
    let mut skipped = Vec::new();

    let center_group = match center(&mg, cfg.enumeration_limit) {
        Ok(c) => Some(c),
        Err(e) => {
            skipped.push(("center".to_string(), e.to_string()));
            None
        }
    };
    let (nilpotency_class, nilpotent) = match nilpotency_class_group(&mg, cfg.enumeration_limit) {
        Ok(c) => (Some(c), Some(true)),
        Err(crate::Error::NotNilpotent) => (None, Some(false)),
        Err(e) => {
            skipped.push(("nilpotency_class".to_string(), e.to_string()));
            (None, None)
        }
    };
    let quotient_by_center_is_3_group = center_group.as_ref().and_then(|z| {
        match quotient_is_p_group_check(&mg, z, 3, cfg.enumeration_limit) {
            Ok(r) => Some(r.passed()),
            Err(e) => {
                skipped.push(("quotient_by_center".to_string(), e.to_string()));
                None
            }
        }
    });

    MultGroupReport {
        degree: l.order(),
        order: order.to_string(),
        inner_order: inner_order.to_string(),
        transitive: mg.is_transitive(),
        order_is_degree_times_inner: order == inner_order * l.order(),
        center_order: center_group.map(|c| c.order().to_string()),
        nilpotency_class,
        nilpotent,
        is_3_group: is_p_group(&mg, 3),
        quotient_by_center_is_3_group,
        skipped,
    }
}
