//! Finite loops stored as dense Cayley tables.
//!
//! Elements are indices in `0..order`. The identity is detected at validation
//! time and need not be index 0. A left-division table is precomputed so that
//! associators and cosets are table lookups.

use rayon::prelude::*;

use crate::error::{Error, Line, Result};
use crate::report::{CheckReport, ReportBuilder};

mod cml;
mod subloop;

pub use cml::{check_identity2, check_identity3, identity2_holds_at, identity3_holds_at, Cml};
pub use subloop::{direct_product, generate, LoopMorphism, Subloop};

/// Index of an element inside a specific [`FiniteLoop`].
pub type Element = usize;

/// Largest order accepted for a dense table.
pub const MAX_ORDER: usize = 2048;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLoop {
    order: usize,
    identity: Element,
    table: Vec<u16>,
    ldiv: Vec<u16>,
}

impl std::fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteLoop")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteLoop {
    /// Checks the loop axioms on a square index matrix and detects the identity.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(Error::SizeOverflow {
                order: n,
                max: MAX_ORDER,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                    order: n,
                });
            }
        }
        let table: Vec<u16> = rows.iter().flatten().map(|&v| v as u16).collect();
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u16>) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == r {
                    return Err(Error::NotLatinSquare {
                        line: Line::Row,
                        index: r,
                        symbol: v,
                    });
                }
                seen[v] = r;
            }
        }
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == c {
                    return Err(Error::NotLatinSquare {
                        line: Line::Column,
                        index: c,
                        symbol: v,
                    });
                }
                seen[v] = c;
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
            })
            .ok_or(Error::NoIdentity)?;

        let mut ldiv = vec![0u16; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table[a * n + x] as usize;
                ldiv[a * n + b] = x as u16;
            }
        }
        Ok(FiniteLoop {
            order: n,
            identity,
            table,
            ldiv,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn check_element(&self, x: Element) -> Result<Element> {
        if x < self.order {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b] as usize
    }

    /// The unique `x` with `a·x = b`.
    #[inline]
    pub fn left_div(&self, a: Element, b: Element) -> Element {
        self.ldiv[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: Element) -> Element {
        self.left_div(a, self.identity)
    }

    /// `a·(a·(…·a))` with `k` factors; `power(a, 0)` is the identity.
    pub fn power(&self, a: Element, k: usize) -> Element {
        (0..k).fold(self.identity, |p, _| self.mul(a, p))
    }

    /// Least `k ≥ 1` with the left-normed power `a^k` equal to the identity.
    pub fn element_order(&self, a: Element) -> usize {
        // L(a) is a permutation, so its orbit through e returns to e.
        let mut p = a;
        let mut k = 1;
        while p != self.identity {
            p = self.mul(a, p);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        self.elements()
            .map(|a| self.element_order(a) as u64)
            .fold(1, lcm)
    }

    /// `(a,b,c)`, the element with `ab·c = (a·bc)(a,b,c)`.
    #[inline]
    pub fn associator(&self, a: Element, b: Element, c: Element) -> Element {
        let right = self.mul(a, self.mul(b, c));
        let left = self.mul(self.mul(a, b), c);
        self.left_div(right, left)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|r| {
                self.table[r * self.order..(r + 1) * self.order]
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect()
    }

    pub(crate) fn left_translation_images(&self, a: Element) -> Vec<u16> {
        self.table[a * self.order..(a + 1) * self.order].to_vec()
    }

    pub fn commutes_at(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// `x²·yz = xy·xz` at one triple.
    pub fn moufang_at(&self, x: Element, y: Element, z: Element) -> bool {
        let xx = self.mul(x, x);
        self.mul(xx, self.mul(y, z)) == self.mul(self.mul(x, y), self.mul(x, z))
    }

    pub fn associative_at(&self, x: Element, y: Element, z: Element) -> bool {
        self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
    }

    pub fn is_commutative(&self) -> CheckReport {
        let rb = ReportBuilder::new("loop.commutative");
        let n = self.order;
        let w = first_pair(n, |x, y| y > x && !self.commutes_at(x, y));
        rb.elements((n * n) as u64, w)
    }

    pub fn is_associative(&self) -> CheckReport {
        let rb = ReportBuilder::new("loop.associative");
        let n = self.order;
        let w = first_triple(n, |x, y, z| !self.associative_at(x, y, z));
        rb.elements((n * n * n) as u64, w)
    }

    /// Commutativity plus `x²·yz = xy·xz` over every triple.
    pub fn is_cml(&self) -> CheckReport {
        let rb = ReportBuilder::new("def.cml-identity");
        let n = self.order;
        if let Some(w) = first_pair(n, |x, y| y > x && !self.commutes_at(x, y)) {
            return rb
                .elements((n * n) as u64, Some(w))
                .with_note("not commutative");
        }
        let w = first_triple(n, |x, y, z| !self.moufang_at(x, y, z));
        let checked = (n * n * n) as u64;
        match w {
            Some(w) => rb
                .elements(checked, Some(w))
                .with_note("Moufang identity fails"),
            None => rb.elements(checked, None),
        }
    }
}

/// First `(x, y)` in lexicographic order satisfying `bad`.
pub(crate) fn first_pair<F>(n: usize, bad: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .find_map_first(|x| (0..n).find(|&y| bad(x, y)).map(|y| vec![x, y]))
}

/// First `(x, y, z)` in lexicographic order satisfying `bad`.
pub(crate) fn first_triple<F>(n: usize, bad: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
