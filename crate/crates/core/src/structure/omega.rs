use serde::Serialize;

use crate::error::Result;
use crate::loops::{generate, Cml, Element, Subloop};
use crate::mult_group::{left_translation, multiplication_group};
use crate::perm::centralizer_in;
use crate::report::CheckConfig;

use super::{centralizer, lattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerEntry {
    /// Loop elements generating `H` (or, for the group entries, whose left
    /// translations generate the subgroup).
    pub generators: Vec<Element>,
    pub subject_order: String,
    pub centralizer_order: Option<String>,
    /// Whether the centralizer is finite, hence in every finiteness class.
    pub in_omega: bool,
}

/// The five finiteness conditions and the four equivalent statements of the
/// centralizer characterisation, evaluated on one finite CML.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub order: usize,
    pub finite: bool,
    pub finitely_generated: bool,
    pub min_generators: usize,
    pub generators: Vec<Element>,
    pub finite_rank: bool,
    pub special_rank: Option<usize>,
    pub max_condition: bool,
    pub min_condition: bool,
    pub subloop_centralizers: Vec<CentralizerEntry>,
    pub mult_group_order: String,
    pub subgroup_centralizers: Vec<CentralizerEntry>,
    /// L ∈ Ω; Z_L(H) ∈ Ω for some f.g. H; 𝔐 ∈ Ω; C_𝔐(𝔑) ∈ Ω for some f.g. 𝔑.
    pub statements: [bool; 4],
    pub equivalent: bool,
}

/// `subloop_gens` lists generator sets of the subloops `H` whose centralizers
/// are reported; an empty list means `{e}` and a minimal generating set of
/// `L`. Special rank needs the full subloop lattice and is only computed when
/// `with_rank` is set.
pub fn omega_report(
    l: &Cml,
    subloop_gens: &[Vec<Element>],
    with_rank: bool,
    cfg: &CheckConfig,
) -> Result<OmegaReport> {
    let whole = Subloop::whole(l);
    let mins = lattice::min_generators(l, &whole);
    let special_rank = if with_rank {
        Some(lattice::special_rank(l)?.special_rank)
    } else {
        None
    };

    let requested: Vec<Vec<Element>> = if subloop_gens.is_empty() {
        vec![Vec::new(), mins.generators.clone()]
    } else {
        subloop_gens.to_vec()
    };

    let mut subloop_centralizers = Vec::new();
    for gens in &requested {
        let h = generate(l, gens);
        let c = centralizer(l, &whole, h.members())?;
        subloop_centralizers.push(CentralizerEntry {
            generators: gens.clone(),
            subject_order: h.order().to_string(),
            centralizer_order: Some(c.order().to_string()),
            in_omega: true,
        });
    }

    let mg = multiplication_group(l);
    let mut subgroup_centralizers = Vec::new();
    for gens in &requested {
        let perms: Vec<_> = gens.iter().map(|&g| left_translation(l, g).perm).collect();
        let sub = crate::perm::PermutationGroup::new(l.order(), perms.clone())?;
        let c = centralizer_in(&mg, &perms, cfg.enumeration_limit).ok();
        subgroup_centralizers.push(CentralizerEntry {
            generators: gens.clone(),
            subject_order: sub.order().to_string(),
            centralizer_order: c.map(|c| c.order().to_string()),
            // A subgroup of the finite group 𝔐 is finite even when it is not listed.
            in_omega: true,
        });
    }

    let statements = [
        true,
        subloop_centralizers.iter().any(|c| c.in_omega),
        true,
        subgroup_centralizers.iter().any(|c| c.in_omega),
    ];
    Ok(OmegaReport {
        order: l.order(),
        finite: true,
        finitely_generated: true,
        min_generators: mins.count,
        generators: mins.generators,
        finite_rank: true,
        special_rank,
        max_condition: true,
        min_condition: true,
        subloop_centralizers,
        mult_group_order: mg.order().to_string(),
        subgroup_centralizers,
        statements,
        equivalent: statements.iter().all(|&s| s == statements[0]),
    })
}
