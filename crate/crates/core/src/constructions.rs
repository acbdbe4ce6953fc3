//! Built-in fixture loops.
//!
//! `cml81` is the classical non-associative commutative Moufang loop of
//! order 81 on `GF(3)⁴` with
//! `(a,b,c,d)·(a',b',c',d') = (a+a', b+b', c+c', d+d'+(a-a')(bc'-b'c))`.
//! Elements are indexed lexicographically, `(a,b,c,d) ↦ 27a+9b+3c+d`, so the
//! identity is index 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::loops::{direct_product, Cml, Element, FiniteLoop, MAX_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Cyclic(usize),
    ElementaryAbelian3(u32),
    Cml81,
    Product(Box<ConstructionSpec>, Box<ConstructionSpec>),
}

impl ConstructionSpec {
    /// Order of the loop this spec builds, or `None` on overflow.
    pub fn resolved_order(&self) -> Option<usize> {
        match self {
            ConstructionSpec::Cyclic(n) => Some(*n),
            ConstructionSpec::ElementaryAbelian3(k) => 3usize.checked_pow(*k),
            ConstructionSpec::Cml81 => Some(81),
            ConstructionSpec::Product(a, b) => a.resolved_order()?.checked_mul(b.resolved_order()?),
        }
    }

    pub fn product(a: ConstructionSpec, b: ConstructionSpec) -> Self {
        ConstructionSpec::Product(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            ConstructionSpec::ElementaryAbelian3(k) => write!(f, "ea3({k})"),
            ConstructionSpec::Cml81 => write!(f, "cml81"),
            ConstructionSpec::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    /// Accepts `cyclic(n)`, `ea3(k)`, `cml81` and `product(spec,spec)`.
    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::BadConstruction(format!("trailing input {rest:?}")));
        }
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<(ConstructionSpec, &str)> {
    let s = s.trim_start();
    let bad = || Error::BadConstruction(s.to_string());
    if let Some(rest) = s.strip_prefix("cml81") {
        return Ok((ConstructionSpec::Cml81, rest));
    }
    let open = s.find('(').ok_or_else(bad)?;
    let name = s[..open].trim();
    let body = &s[open + 1..];
    match name {
        "cyclic" | "ea3" => {
            let close = body.find(')').ok_or_else(bad)?;
            let arg: u32 = body[..close].trim().parse().map_err(|_| bad())?;
            let spec = if name == "cyclic" {
                if arg == 0 {
                    return Err(bad());
                }
                ConstructionSpec::Cyclic(arg as usize)
            } else {
                ConstructionSpec::ElementaryAbelian3(arg)
            };
            Ok((spec, &body[close + 1..]))
        }
        "product" => {
            let (a, rest) = parse_spec(body)?;
            let rest = rest.trim_start().strip_prefix(',').ok_or_else(bad)?;
            let (b, rest) = parse_spec(rest)?;
            let rest = rest.trim_start().strip_prefix(')').ok_or_else(bad)?;
            Ok((ConstructionSpec::product(a, b), rest))
        }
        _ => Err(bad()),
    }
}

pub fn build(spec: &ConstructionSpec) -> Result<FiniteLoop> {
    match spec.resolved_order() {
        Some(n) if n <= MAX_ORDER => {}
        n => {
            return Err(Error::SizeOverflow {
                order: n.unwrap_or(usize::MAX),
                max: MAX_ORDER,
            })
        }
    }
    match spec {
        ConstructionSpec::Cyclic(n) => Ok(cyclic(*n)),
        ConstructionSpec::ElementaryAbelian3(k) => (0..*k).try_fold(cyclic(1), |acc, _| {
            direct_product(&acc, &cyclic(3), MAX_ORDER)
        }),
        ConstructionSpec::Cml81 => Ok(cml81()),
        ConstructionSpec::Product(a, b) => direct_product(&build(a)?, &build(b)?, MAX_ORDER),
    }
}

/// Builds and certifies the result as a commutative Moufang loop.
pub fn build_cml(spec: &ConstructionSpec) -> Result<Cml> {
    Cml::certify(build(spec)?)
}

fn cyclic(n: usize) -> FiniteLoop {
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u16))
        .collect();
    FiniteLoop::from_flat(n, table).expect("cyclic group table is a loop")
}

pub fn cml81_coords(x: Element) -> [u8; 4] {
    [
        (x / 27) as u8,
        (x / 9 % 3) as u8,
        (x / 3 % 3) as u8,
        (x % 3) as u8,
    ]
}

pub fn cml81_element(coords: [u8; 4]) -> Element {
    coords.iter().fold(0, |acc, &c| acc * 3 + (c % 3) as usize)
}

/// The standard generators `e₁ = (1,0,0,0)`, `e₂ = (0,1,0,0)`, `e₃ = (0,0,1,0)`.
pub fn cml81_generators() -> [Element; 3] {
    [
        cml81_element([1, 0, 0, 0]),
        cml81_element([0, 1, 0, 0]),
        cml81_element([0, 0, 1, 0]),
    ]
}

fn cml81_mul(x: [u8; 4], y: [u8; 4]) -> [u8; 4] {
    let [a, b, c, d] = x.map(i32::from);
    let [a2, b2, c2, d2] = y.map(i32::from);
    let m = |v: i32| v.rem_euclid(3) as u8;
    [
        m(a + a2),
        m(b + b2),
        m(c + c2),
        m(d + d2 + (a - a2) * (b * c2 - b2 * c)),
    ]
}

fn cml81() -> FiniteLoop {
    let table = (0..81)
        .flat_map(|x| {
            (0..81).map(move |y| cml81_element(cml81_mul(cml81_coords(x), cml81_coords(y))) as u16)
        })
        .collect();
    FiniteLoop::from_flat(81, table).expect("cml81 table is a loop")
}
