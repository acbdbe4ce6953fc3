use crate::error::{Error, Result};

use super::{Element, FiniteLoop};

/// A multiplicatively closed subset of a parent loop.
///
/// Equality and hashing use the sorted member list, so two subloops of the
/// same parent compare equal exactly when they have the same elements.
#[derive(Clone, Debug)]
pub struct Subloop {
    members: Vec<Element>,
    mask: Vec<bool>,
}

impl PartialEq for Subloop {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subloop {}

impl std::hash::Hash for Subloop {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subloop {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subloop {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Subloop {
    /// Builds from a membership mask without checking closure.
    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
            .collect();
        Subloop { members, mask }
    }

    pub fn whole(l: &FiniteLoop) -> Self {
        Self::from_mask(vec![true; l.order()])
    }

    pub fn trivial(l: &FiniteLoop) -> Self {
        let mut mask = vec![false; l.order()];
        mask[l.identity()] = true;
        Self::from_mask(mask)
    }

    /// Wraps an arbitrary subset after checking that it contains the identity
    /// and is closed under multiplication.
    pub fn from_members(l: &FiniteLoop, members: &[Element]) -> Result<Self> {
        let mut mask = vec![false; l.order()];
        for &m in members {
            mask[l.check_element(m)?] = true;
        }
        let s = Self::from_mask(mask);
        if let Some(w) = s.closure_witness(l) {
            return Err(Error::ClosureViolation { witness: w });
        }
        Ok(s)
    }

    /// A pair whose product leaves the set, or `[e]` when the identity is missing.
    pub(crate) fn closure_witness(&self, l: &FiniteLoop) -> Option<Vec<Element>> {
        if !self.mask[l.identity()] {
            return Some(vec![l.identity()]);
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.mask[l.mul(a, b)] {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &Subloop) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn intersection(&self, other: &Subloop) -> Subloop {
        Self::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a && *b)
                .collect(),
        )
    }

    /// Smallest subloop containing `self` and `extra`.
    pub fn extend(&self, l: &FiniteLoop, extra: &[Element]) -> Subloop {
        let mut mask = self.mask.clone();
        let mut members = self.members.clone();
        let closed = members.len();
        for &g in extra {
            if !mask[g] {
                mask[g] = true;
                members.push(g);
            }
        }
        close(l, &mut mask, &mut members, closed);
        Self::from_mask(mask)
    }

    /// The subloop as a loop in its own right, with `embedding[i]` the parent
    /// element labelled `i`.
    pub fn to_loop(&self, l: &FiniteLoop) -> (FiniteLoop, Vec<Element>) {
        let k = self.members.len();
        let mut label = vec![usize::MAX; l.order()];
        for (i, &m) in self.members.iter().enumerate() {
            label[m] = i;
        }
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                table.push(label[l.mul(a, b)] as u16);
            }
        }
        let sub = FiniteLoop::from_flat(k, table).expect("closed subset of a loop is a loop");
        (sub, self.members.clone())
    }
}

/// Multiplicative closure. `members[..closed]` must already be closed.
///
/// For a finite loop, closure under multiplication already gives closure
/// under both divisions, because translations restricted to a finite closed
/// set are injective and hence onto.
fn close(l: &FiniteLoop, mask: &mut [bool], members: &mut Vec<Element>, closed: usize) {
    let mut p = closed;
    while p < members.len() {
        let a = members[p];
        let mut q = 0;
        while q <= p {
            let b = members[q];
            for c in [l.mul(a, b), l.mul(b, a)] {
                if !mask[c] {
                    mask[c] = true;
                    members.push(c);
                }
            }
            q += 1;
        }
        p += 1;
    }
}

/// Least subloop containing `gens` and the identity.
pub fn generate(l: &FiniteLoop, gens: &[Element]) -> Subloop {
    Subloop::trivial(l).extend(l, gens)
}

/// A map between two loops given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMorphism {
    map: Vec<Element>,
}

impl LoopMorphism {
    pub fn new(map: Vec<Element>) -> Self {
        LoopMorphism { map }
    }

    #[inline]
    pub fn image(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    /// First pair `(x, y)` with `f(xy) != f(x)f(y)`, if any.
    pub fn violation(
        &self,
        source: &FiniteLoop,
        target: &FiniteLoop,
    ) -> Option<(Element, Element)> {
        for x in source.elements() {
            for y in source.elements() {
                if self.image(source.mul(x, y)) != target.mul(self.image(x), self.image(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

impl FiniteLoop {
    /// Loop of cosets `xH`, valid when `H` is normal.
    ///
    /// Returns `NotNormal` when the cosets overlap or the induced product is
    /// not well defined.
    pub(crate) fn quotient_by_congruence(&self, h: &Subloop) -> Result<(FiniteLoop, LoopMorphism)> {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in self.elements() {
            if label[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &m in h.members() {
                let y = self.mul(x, m);
                if label[y] != usize::MAX {
                    return Err(Error::NotNormal);
                }
                label[y] = c;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(label[self.mul(a, b)] as u16);
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                if table[label[x] * k + label[y]] as usize != label[self.mul(x, y)] {
                    return Err(Error::NotNormal);
                }
            }
        }
        let q = FiniteLoop::from_flat(k, table).map_err(|_| Error::NotNormal)?;
        Ok((q, LoopMorphism::new(label)))
    }

    /// `L/H` with its projection. `H` must be normal in `L`.
    pub fn quotient(&self, h: &Subloop) -> Result<(FiniteLoop, LoopMorphism)> {
        if !crate::mult_group::is_normal(self, h) {
            return Err(Error::NotNormal);
        }
        self.quotient_by_congruence(h)
    }
}

/// Componentwise product; the pair `(a, b)` is element `a·|L2| + b`.
pub fn direct_product(l1: &FiniteLoop, l2: &FiniteLoop, max_order: usize) -> Result<FiniteLoop> {
    let (n1, n2) = (l1.order(), l2.order());
    let n = n1 * n2;
    if n > max_order.min(super::MAX_ORDER) {
        return Err(Error::SizeOverflow {
            order: n,
            max: max_order.min(super::MAX_ORDER),
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    table.push((l1.mul(a1, b1) * n2 + l2.mul(a2, b2)) as u16);
                }
            }
        }
    }
    FiniteLoop::from_flat(n, table)
}
