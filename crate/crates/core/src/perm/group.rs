use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{CheckConfig, CheckReport, Mode, ReportBuilder, Witness};

use super::{commutator, Permutation, StabChain};

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<usize>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain,
        }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, Vec::new())
    }

    /// Like [`PermutationGroup::new`], but the chain starts with `prefix` as
    /// its first base points.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: Vec<usize>,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermutationGroup {
            degree,
            generators,
            base_prefix: prefix,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).unwrap()
    }

    pub(crate) fn from_chain(chain: StabChain) -> Self {
        let generators = chain.strong_generators();
        let group = PermutationGroup {
            degree: chain.degree(),
            generators,
            base_prefix: chain.base(),
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        group
    }

    /// Subgroup generated by `elements`, keeping only the non-redundant ones
    /// as generators.
    pub fn from_elements<'a, I>(degree: usize, elements: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabChain::new(degree, &[]);
        let mut generators = Vec::new();
        for g in elements {
            if chain.insert(g.clone()) {
                generators.push(g.clone());
            }
        }
        let group = PermutationGroup {
            degree,
            generators,
            base_prefix: Vec::new(),
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The stabilizer chain, built on first use.
    pub fn bsgs(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let mut chain = StabChain::new(self.degree, &self.base_prefix);
            for g in &self.generators {
                chain.insert(g.clone());
            }
            chain
        })
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    pub fn order_usize(&self) -> Option<usize> {
        usize::try_from(&self.order()).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.bsgs().contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.bsgs().base().is_empty() || self.order() == BigUint::from(1u32)
    }

    /// Generators with every one that lies in the span of its predecessors dropped.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut chain = StabChain::new(self.degree, &[]);
        self.generators
            .iter()
            .filter(|g| chain.insert((*g).clone()))
            .cloned()
            .collect()
    }

    /// All elements, refusing when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        match self.order_usize() {
            Some(n) if n <= limit => Ok(self.bsgs().elements()),
            _ => Err(Error::TooLarge {
                order: self.order().to_string(),
                limit,
            }),
        }
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            for g in &self.generators {
                let c = g.apply(b);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer of the first base point, read off the chain.
    pub fn first_base_stabilizer(&self) -> PermutationGroup {
        PermutationGroup::from_chain(self.bsgs().suffix(1))
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }
}

/// `{x ∈ G : xs = sx for all s ∈ S}` by filtering the element list.
pub fn centralizer_in(
    g: &PermutationGroup,
    s: &[Permutation],
    limit: usize,
) -> Result<PermutationGroup> {
    if let Some(p) = s.iter().find(|p| p.degree() != g.degree()) {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: p.degree(),
        });
    }
    let elements = g.elements(limit)?;
    let keep: Vec<Permutation> = elements
        .into_par_iter()
        .filter(|x| s.iter().all(|y| x.commutes_with(y)))
        .collect();
    Ok(PermutationGroup::from_elements(g.degree(), &keep))
}

pub fn center(g: &PermutationGroup, limit: usize) -> Result<PermutationGroup> {
    centralizer_in(g, &g.reduced_generators(), limit)
}

/// Ascending chain of subgroups with a termination flag and optional class.
#[derive(Clone, Debug)]
pub struct GroupSeries {
    pub chain: Vec<PermutationGroup>,
    pub terminated: bool,
    pub class: Option<usize>,
}

/// Upper central series: `C_{i+1} = {g : [g, x] ∈ C_i for every generator x}`.
pub fn upper_central_series_group(g: &PermutationGroup, limit: usize) -> Result<GroupSeries> {
    let elements = g.elements(limit)?;
    let gens = g.reduced_generators();
    let total = g.order();
    let mut chain = vec![PermutationGroup::trivial(g.degree())];
    if total == BigUint::from(1u32) {
        return Ok(GroupSeries {
            chain,
            terminated: true,
            class: Some(0),
        });
    }
    loop {
        let current = chain.last().unwrap();
        let next_elems: Vec<Permutation> = elements
            .par_iter()
            .filter(|x| {
                gens.iter()
                    .all(|y| current.contains(&x.inverse().then(&y.inverse()).then(x).then(y)))
            })
            .cloned()
            .collect();
        let next = PermutationGroup::from_elements(g.degree(), &next_elems);
        if next.order() == current.order() {
            return Ok(GroupSeries {
                chain,
                terminated: true,
                class: None,
            });
        }
        let reached = next.order() == total;
        chain.push(next);
        if reached {
            let class = chain.len() - 1;
            return Ok(GroupSeries {
                chain,
                terminated: true,
                class: Some(class),
            });
        }
    }
}

pub fn nilpotency_class_group(g: &PermutationGroup, limit: usize) -> Result<usize> {
    upper_central_series_group(g, limit)?
        .class
        .ok_or(Error::NotNilpotent)
}

pub fn is_p_group(g: &PermutationGroup, p: u64) -> bool {
    let mut n = g.order();
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let one = BigUint::from(1u32);
    while n > one && (&n % &p) == zero {
        n /= &p;
    }
    n == one
}

/// Checks that every `g ∈ G` has some `g^(p^k)` in `Z`, i.e. that `G/Z` is a
/// `p`-group, without building the quotient.
pub fn quotient_is_p_group_check(
    g: &PermutationGroup,
    z: &PermutationGroup,
    p: u64,
    limit: usize,
) -> Result<CheckReport> {
    let rb = ReportBuilder::new("quotient.p-group");
    let elements = g.elements(limit)?;
    let bad = elements.par_iter().find_first(|x| {
        // With ord(x) = p^a·m, the powers x^(p^k) for k ≥ a all generate the same
        // cyclic group, so k ≤ a suffices.
        let mut a = 0;
        let mut o = x.order();
        while o % p == 0 {
            o /= p;
            a += 1;
        }
        let mut h = (*x).clone();
        for _ in 0..=a {
            if z.contains(&h) {
                return false;
            }
            h = h.pow(p);
        }
        true
    });
    Ok(rb.finish(
        elements.len() as u64,
        bad.map(|x| Witness::Permutations(vec![x.images()])),
    ))
}

/// `[xy,zt] = [x,t]^y [y,t] [x,z]^(yt) [y,z]^t` at one quadruple.
pub fn identity1_holds_at(
    x: &Permutation,
    y: &Permutation,
    z: &Permutation,
    t: &Permutation,
) -> bool {
    let conj = |a: &Permutation, b: &Permutation| b.inverse().then(a).then(b);
    let comm = |a: &Permutation, b: &Permutation| commutator(a, b).expect("equal degrees");
    let lhs = comm(&x.then(y), &z.then(t));
    let rhs = conj(&comm(x, t), y)
        .then(&comm(y, t))
        .then(&conj(&comm(x, z), &y.then(t)))
        .then(&conj(&comm(y, z), t));
    lhs == rhs
}

/// Exhaustive over all quadruples when `|G|⁴ ≤ budget`, else seeded sampling.
pub fn check_identity1(g: &PermutationGroup, cfg: &CheckConfig) -> Result<CheckReport> {
    let name = "eq1.commutator-expansion";
    let order = g.order();
    let exhaustive = order.pow(4) <= BigUint::from(cfg.budget) && usize::try_from(&order).is_ok();
    if exhaustive {
        let rb = ReportBuilder::new(name);
        let els = g.elements(cfg.enumeration_limit)?;
        let n = els.len();
        let w = (0..n * n).into_par_iter().find_map_first(|xy| {
            let (x, y) = (&els[xy / n], &els[xy % n]);
            for z in &els {
                for t in &els {
                    if !identity1_holds_at(x, y, z, t) {
                        return Some(vec![x.images(), y.images(), z.images(), t.images()]);
                    }
                }
            }
            None
        });
        Ok(rb.finish((n as u64).pow(4), w.map(Witness::Permutations)))
    } else {
        let rb = ReportBuilder::new(name).mode(Mode::Sampled {
            seed: cfg.seed,
            count: cfg.samples,
        });
        let chain = g.bsgs();
        // Sample i draws from its own ChaCha stream, so the result does not
        // depend on how the work is split across threads.
        let draw = |i: u64| -> [Permutation; 4] {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i);
            std::array::from_fn(|_| chain.random_element(&mut rng))
        };
        let found = (0..cfg.samples).into_par_iter().find_first(|&i| {
            let [x, y, z, t] = draw(i);
            !identity1_holds_at(&x, &y, &z, &t)
        });
        let (checked, witness) = match found {
            Some(i) => (
                i + 1,
                Some(Witness::Permutations(
                    draw(i).iter().map(Permutation::images).collect(),
                )),
            ),
            None => (cfg.samples, None),
        };
        Ok(rb.finish(checked, witness))
    }
}
