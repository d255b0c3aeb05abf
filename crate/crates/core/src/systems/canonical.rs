//! Canonical representatives of vector systems under position permutations
//! composed with independent value permutations in every position.
//!
//! For a fixed position permutation and a fixed ordering of the vectors,
//! relabelling each position's values by order of first appearance removes
//! the value symmetry. The canonical form is the row-major lexicographic
//! minimum of that matrix over all position permutations and row orders,
//! found by branch and bound.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use super::VectorSystem;
use crate::depth::IndexVector;

/// `v -> w` with `w[positions[p]] = values[p][v[p]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub positions: Vec<usize>,
    pub values: Vec<Vec<u8>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> GroupElement {
        GroupElement {
            positions: (0..n).collect(),
            values: vec![(0..n as u8).collect(); n],
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> GroupElement {
        let mut positions: Vec<usize> = (0..n).collect();
        positions.shuffle(rng);
        let values = (0..n)
            .map(|_| {
                let mut p: Vec<u8> = (0..n as u8).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        GroupElement { positions, values }
    }

    /// Swaps two positions; values untouched.
    pub fn transposition(n: usize, a: usize, b: usize) -> GroupElement {
        let mut g = GroupElement::identity(n);
        g.positions.swap(a, b);
        g
    }

    pub fn apply(&self, v: &IndexVector) -> IndexVector {
        let mut w = vec![0u8; v.len()];
        for (p, &e) in v.entries().iter().enumerate() {
            w[self.positions[p]] = self.values[p][e as usize];
        }
        IndexVector::new(w)
    }

    pub fn apply_system(&self, system: &VectorSystem) -> VectorSystem {
        VectorSystem::new(system.d(), system.vectors().map(|v| self.apply(v)))
    }
}

struct Search<'a> {
    rows: &'a [Vec<u8>],
    n: usize,
    used: Vec<bool>,
    map: Vec<Vec<Option<u8>>>,
    next: Vec<u8>,
    prefix: Vec<Vec<u8>>,
    best: Option<Vec<Vec<u8>>>,
}

impl Search<'_> {
    fn image(&self, row: &[u8]) -> (Vec<u8>, bool) {
        let mut fresh = false;
        let img = row
            .iter()
            .enumerate()
            .map(|(p, &x)| {
                self.map[p][x as usize].unwrap_or_else(|| {
                    fresh = true;
                    self.next[p]
                })
            })
            .collect();
        (img, fresh)
    }

    fn run(&mut self, tied: bool) {
        let depth = self.prefix.len();
        if depth == self.rows.len() {
            if self.best.as_ref().is_none_or(|b| self.prefix < *b) {
                self.best = Some(self.prefix.clone());
            }
            return;
        }
        let images: Vec<(usize, Vec<u8>, bool)> = (0..self.rows.len())
            .filter(|&r| !self.used[r])
            .map(|r| {
                let (img, fresh) = self.image(&self.rows[r]);
                (r, img, fresh)
            })
            .collect();
        let min = images.iter().map(|(_, img, _)| img).min().unwrap().clone();
        let mut still_tied = tied;
        if tied {
            if let Some(best) = &self.best {
                match min.cmp(&best[depth]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => still_tied = false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let mut settled_done = false;
        for (r, img, fresh) in images.into_iter().filter(|(_, img, _)| *img == min) {
            // rows whose values are all labelled already keep the same image
            // forever, so one representative suffices
            if !fresh {
                if settled_done {
                    continue;
                }
                settled_done = true;
            }
            let saved_next = self.next.clone();
            let mut assigned = Vec::new();
            for p in 0..self.n {
                let x = self.rows[r][p] as usize;
                if self.map[p][x].is_none() {
                    self.map[p][x] = Some(self.next[p]);
                    self.next[p] += 1;
                    assigned.push((p, x));
                }
            }
            self.used[r] = true;
            self.prefix.push(img);
            // a strictly smaller prefix than the incumbent restarts the tie
            let tied_child = still_tied || self.best.is_none();
            self.run(tied_child);
            self.prefix.pop();
            self.used[r] = false;
            for (p, x) in assigned {
                self.map[p][x] = None;
            }
            self.next = saved_next;
        }
    }
}

/// Canonical representative of the orbit of `system`.
///
/// Cost grows with the number of ties among rows, so this is meant for the
/// small systems produced by the search and by depth extraction.
pub fn canonical_form(system: &VectorSystem) -> VectorSystem {
    let n = system.n();
    if system.is_empty() {
        return system.clone();
    }
    let mut best: Option<Vec<Vec<u8>>> = None;
    for perm in (0..n).permutations(n) {
        let rows: Vec<Vec<u8>> = system
            .vectors()
            .map(|v| {
                let mut w = vec![0u8; n];
                for (p, &e) in v.entries().iter().enumerate() {
                    w[perm[p]] = e;
                }
                w
            })
            .collect();
        let mut s = Search {
            rows: &rows,
            n,
            used: vec![false; rows.len()],
            map: vec![vec![None; n]; n],
            next: vec![0; n],
            prefix: Vec::new(),
            best: best.take(),
        };
        s.run(true);
        best = s.best;
    }
    VectorSystem::new(system.d(), best.unwrap().into_iter().map(IndexVector::new))
}
