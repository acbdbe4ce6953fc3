use num_bigint::BigUint;
use rand::Rng;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b] = (u, u⁻¹)` with `u(point) = b`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[point] = Some((id.clone(), id));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        }
    }
}

/// Stabilizer chain built by deterministic incremental Schreier–Sims.
///
/// Level `i` holds generators of `G^(i)`, the pointwise stabilizer of the
/// first `i` base points, together with the orbit of the `i`-th base point
/// under `G^(i)` and coset representatives for it. New base points are the
/// lowest point moved by the element that forced the new level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Empty chain whose first base points are `prefix`.
    pub fn new(degree: usize, prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: prefix.iter().map(|&p| Level::new(degree, p)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Generators of `G^(level)`.
    pub fn level_generators(&self, level: usize) -> &[Permutation] {
        self.levels.get(level).map_or(&[], |l| &l.gens)
    }

    /// Union of the generators over every level, without repeats.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for g in self.levels.iter().flat_map(|l| &l.gens) {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product()
    }

    /// Chain for `G^(from)`, reusing the lower levels.
    pub fn suffix(&self, from: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[from.min(self.levels.len())..].to_vec(),
        }
    }

    /// Strips `g` through the chain from level `from`. Returns the residue and
    /// the level where stripping stopped (`levels.len()` if it went through).
    pub fn sift_from(&self, from: usize, mut g: Permutation) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.point);
            match &level.transversal[b] {
                Some((_, u_inv)) => g = g.then(u_inv),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    fn contains_from(&self, from: usize, g: &Permutation) -> bool {
        let (r, j) = self.sift_from(from, g.clone());
        j == self.levels.len() && r.is_identity()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.contains_from(0, g)
    }

    /// Extends the group by `g`; returns false if `g` was already a member.
    pub fn insert(&mut self, g: Permutation) -> bool {
        if self.contains_from(0, &g) {
            return false;
        }
        self.add_gen(0, g);
        true
    }

    fn add_gen(&mut self, i: usize, g: Permutation) {
        if self.contains_from(i, &g) {
            return;
        }
        if i == self.levels.len() {
            let point = g.first_moved().expect("non-member is not the identity");
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[i].gens.push(g);
        let new_gen = self.levels[i].gens.len() - 1;
        let old_len = self.levels[i].orbit.len();
        for k in 0..old_len {
            let b = self.levels[i].orbit[k];
            self.schreier_step(i, b, new_gen);
        }
        let mut k = old_len;
        while k < self.levels[i].orbit.len() {
            let b = self.levels[i].orbit[k];
            for s in 0..self.levels[i].gens.len() {
                self.schreier_step(i, b, s);
            }
            k += 1;
        }
    }

    /// Extends the orbit of level `i` through `b` and generator `s`, or pushes
    /// the resulting Schreier generator one level down.
    fn schreier_step(&mut self, i: usize, b: usize, s: usize) {
        let level = &self.levels[i];
        let gen = &level.gens[s];
        let c = gen.apply(b);
        let h = level.transversal[b]
            .as_ref()
            .expect("orbit point has a representative")
            .0
            .then(gen);
        let schreier = level.transversal[c]
            .as_ref()
            .map(|(_, uc_inv)| h.then(uc_inv));
        match schreier {
            None => {
                let inv = h.inverse();
                let level = &mut self.levels[i];
                level.transversal[c] = Some((h, inv));
                level.orbit.push(c);
            }
            Some(schreier) => {
                if !schreier.is_identity() {
                    self.add_gen(i + 1, schreier);
                }
            }
        }
    }

    /// Every group element, as products `u_k ⋯ u_1 u_0` of representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut list = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for x in &list {
                for b in &level.orbit {
                    let (u, _) = level.transversal[*b].as_ref().unwrap();
                    next.push(x.then(u));
                }
            }
            list = next;
        }
        list
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(&level.transversal[b].as_ref().unwrap().0);
        }
        g
    }
}
