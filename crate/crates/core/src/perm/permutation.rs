use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `0..degree`, stored as its image list.
///
/// Products apply the left factor first: `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.apply(p);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation { degree: d });
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        Permutation { images }
    }

    /// Builds from disjoint cycles, e.g. `&[&[0, 1, 2]]` for `(0 1 2)`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::NotAPermutation { degree });
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &p)| i == p as usize)
    }

    /// Lowest point not fixed, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i != p as usize)
            .map(|(i, _)| i)
    }

    /// `self` then `other`; panics on degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            if len > 0 {
                ord = crate::loops::lcm(ord, len);
            }
        }
        ord
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }
}

fn same_degree(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.degree() == q.degree() {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        })
    }
}

/// `p·q`, applying `p` first.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    same_degree(p, q)?;
    Ok(p.then(q))
}

/// `b⁻¹ a b`.
pub fn conjugate(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    same_degree(a, b)?;
    Ok(b.inverse().then(a).then(b))
}

/// `[a,b] = a⁻¹ b⁻¹ a b`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    same_degree(a, b)?;
    Ok(a.inverse().then(&b.inverse()).then(a).then(b))
}
