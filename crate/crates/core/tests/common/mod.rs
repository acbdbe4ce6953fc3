//! Brute-force oracles. None of these call into the library's algorithms:
//! loops are plain row vectors and permutations plain image vectors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Table = Vec<Vec<usize>>;
pub type Perm = Vec<usize>;

/// The order-81 loop on GF(3)^4, straight from the coordinate formula.
/// Index of (a,b,c,d) is 27a + 9b + 3c + d.
pub fn cml81_table() -> Table {
    let coords = |x: usize| [x / 27, x / 9 % 3, x / 3 % 3, x % 3];
    let index = |v: [usize; 4]| 27 * v[0] + 9 * v[1] + 3 * v[2] + v[3];
    (0..81)
        .map(|x| {
            (0..81)
                .map(|y| {
                    let [a, b, c, d] = coords(x);
                    let [a2, b2, c2, d2] = coords(y);
                    let twist = (a + 3 - a2) * (b * c2 + 9 - b2 * c) % 3;
                    index([
                        (a + a2) % 3,
                        (b + b2) % 3,
                        (c + c2) % 3,
                        (d + d2 + twist) % 3,
                    ])
                })
                .collect()
        })
        .collect()
}

pub fn cyclic_table(n: usize) -> Table {
    (0..n)
        .map(|x| (0..n).map(|y| (x + y) % n).collect())
        .collect()
}

/// Cayley table of a direct product, (a,b) at index a*|B| + b.
pub fn product_table(a: &Table, b: &Table) -> Table {
    let (n, m) = (a.len(), b.len());
    (0..n * m)
        .map(|x| {
            (0..n * m)
                .map(|y| a[x / m][y / m] * m + b[x % m][y % m])
                .collect()
        })
        .collect()
}

/// Associator by search: the `d` with `(a·bc)·d = ab·c`.
pub fn associator(t: &Table, a: usize, b: usize, c: usize) -> usize {
    let lhs = t[a][t[b][c]];
    let rhs = t[t[a][b]][c];
    (0..t.len())
        .find(|&d| t[lhs][d] == rhs)
        .expect("rows are permutations")
}

pub fn identity(t: &Table) -> usize {
    (0..t.len())
        .find(|&e| (0..t.len()).all(|x| t[e][x] == x && t[x][e] == x))
        .unwrap()
}

/// Closure under multiplication, iterated to a fixpoint.
pub fn closure(t: &Table, gens: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = gens.iter().copied().collect();
    s.insert(identity(t));
    loop {
        let mut grown = s.clone();
        for &x in &s {
            for &y in &s {
                grown.insert(t[x][y]);
            }
        }
        if grown.len() == s.len() {
            return s;
        }
        s = grown;
    }
}

/// Upper central series of the subloop `s` by the coset criterion: `x` is in
/// the next term when every commutator and associator involving `x` lands in
/// the current one. Returns the class, or `None` when the series stalls.
pub fn loop_class(t: &Table, s: &BTreeSet<usize>) -> Option<usize> {
    let e = identity(t);
    let left_div = |a: usize, b: usize| (0..t.len()).find(|&x| t[a][x] == b).unwrap();
    let mut z: BTreeSet<usize> = BTreeSet::from([e]);
    let mut class = 0;
    while z.len() < s.len() {
        let next: BTreeSet<usize> = s
            .iter()
            .copied()
            .filter(|&x| {
                s.iter().all(|&y| {
                    z.contains(&left_div(t[y][x], t[x][y]))
                        && s.iter().all(|&w| {
                            z.contains(&associator(t, x, y, w))
                                && z.contains(&associator(t, y, x, w))
                                && z.contains(&associator(t, y, w, x))
                        })
                })
            })
            .collect();
        if next.len() == z.len() {
            return None;
        }
        z = next;
        class += 1;
    }
    Some(class)
}

pub fn loop_center(t: &Table) -> BTreeSet<usize> {
    let n = t.len();
    let e = identity(t);
    (0..n)
        .filter(|&x| {
            (0..n).all(|y| t[x][y] == t[y][x] && (0..n).all(|z| associator(t, x, y, z) == e))
        })
        .collect()
}

/// `{x : x·yz = xy·z for all y, z in m}`.
pub fn loop_centralizer(t: &Table, m: &[usize]) -> BTreeSet<usize> {
    (0..t.len())
        .filter(|&x| {
            m.iter()
                .all(|&y| m.iter().all(|&z| t[x][t[y][z]] == t[t[x][y]][z]))
        })
        .collect()
}

/// `p` first, then `q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn commute(p: &Perm, q: &Perm) -> bool {
    compose(p, q) == compose(q, p)
}

/// Breadth-first closure of a generated permutation group.
pub fn group_closure(degree: usize, gens: &[Perm]) -> HashSet<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

pub fn group_centralizer(elements: &HashSet<Perm>, s: &[Perm]) -> HashSet<Perm> {
    elements
        .iter()
        .filter(|g| s.iter().all(|x| commute(g, x)))
        .cloned()
        .collect()
}

pub fn group_center(elements: &HashSet<Perm>) -> HashSet<Perm> {
    let all: Vec<Perm> = elements.iter().cloned().collect();
    group_centralizer(elements, &all)
}

/// Class from `Z_{i+1} = {g : [g,h] ∈ Z_i for all h}`.
pub fn group_class(elements: &HashSet<Perm>) -> Option<usize> {
    let degree = elements.iter().next().unwrap().len();
    let id: Perm = (0..degree).collect();
    let comm = |a: &Perm, b: &Perm| compose(&compose(&invert(a), &invert(b)), &compose(a, b));
    let mut z: HashSet<Perm> = HashSet::from([id]);
    let mut class = 0;
    while z.len() < elements.len() {
        let next: HashSet<Perm> = elements
            .iter()
            .filter(|g| elements.iter().all(|h| z.contains(&comm(g, h))))
            .cloned()
            .collect();
        if next.len() == z.len() {
            return None;
        }
        z = next;
        class += 1;
    }
    Some(class)
}

pub fn cycle(degree: usize) -> Perm {
    (0..degree).map(|i| (i + 1) % degree).collect()
}

pub fn reflection(degree: usize) -> Perm {
    (0..degree).map(|i| (degree - i) % degree).collect()
}

pub fn transposition(degree: usize, a: usize, b: usize) -> Perm {
    let mut p: Perm = (0..degree).collect();
    p.swap(a, b);
    p
}

/// Left translations `y ↦ xy` of a table.
pub fn translations(t: &Table) -> Vec<Perm> {
    t.clone()
}
