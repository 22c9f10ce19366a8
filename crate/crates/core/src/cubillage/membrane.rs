//! Membranes: subcomplexes of a cubillage that project homeomorphically onto
//! `Z(n,d-1)`, enumerated as the rear boundaries of order ideals of the
//! natural order and organized into a distributive lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::{binomial, subsets, Cubillage, Facet, NaturalOrder, Side};
use crate::colorset::ColorSet;
use crate::{Error, Result};

/// A membrane, identified by the ideal of cubes lying in front of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membrane {
    /// Types of the cubes of `Q^-`, an ideal of the natural order.
    pub ideal_types: BTreeSet<ColorSet>,
    /// The facets forming the membrane.
    pub facets: BTreeSet<Facet>,
}

impl Membrane {
    /// Inversion set of the membrane: the types of its ideal.
    pub fn inversions(&self) -> &BTreeSet<ColorSet> {
        &self.ideal_types
    }
}

/// All membranes of one cubillage. Meet and join act on ideals by
/// intersection and union.
#[derive(Clone, Debug)]
pub struct MembraneLattice {
    membranes: Vec<Membrane>,
    by_ideal: BTreeMap<BTreeSet<ColorSet>, usize>,
    front: usize,
    rear: usize,
}

impl MembraneLattice {
    pub fn all(&self) -> &[Membrane] {
        &self.membranes
    }

    pub fn len(&self) -> usize {
        self.membranes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membranes.is_empty()
    }

    /// The front side of the zonotope (empty ideal), the lattice minimum.
    pub fn front(&self) -> &Membrane {
        &self.membranes[self.front]
    }

    /// The rear side (full ideal), the lattice maximum.
    pub fn rear(&self) -> &Membrane {
        &self.membranes[self.rear]
    }

    pub fn index_of(&self, m: &Membrane) -> Option<usize> {
        self.by_ideal.get(&m.ideal_types).copied()
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let ideal: BTreeSet<ColorSet> = self.membranes[a]
            .ideal_types
            .intersection(&self.membranes[b].ideal_types)
            .copied()
            .collect();
        self.by_ideal.get(&ideal).copied()
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ideal: BTreeSet<ColorSet> = self.membranes[a]
            .ideal_types
            .union(&self.membranes[b].ideal_types)
            .copied()
            .collect();
        self.by_ideal.get(&ideal).copied()
    }
}

/// The rear boundary of the union of an ideal of cubes, or `None` when the
/// given types are not downward closed. A facet belongs to the boundary when
/// the cube below it (if any) is in the ideal and the cube above it (if any)
/// is not.
pub(crate) fn facets_of_ideal(
    q: &Cubillage,
    order: &NaturalOrder,
    ideal_types: &BTreeSet<ColorSet>,
) -> Option<BTreeSet<Facet>> {
    let member: Vec<bool> = order
        .types
        .iter()
        .map(|t| ideal_types.contains(t))
        .collect();
    if ideal_types.len() != member.iter().filter(|&&m| m).count() {
        return None; // some type is not a cube of q
    }
    for (i, &inside) in member.iter().enumerate() {
        if inside && order.preds[i].iter().any(|&p| !member[p]) {
            return None;
        }
    }
    let mut sides: HashMap<Facet, (Option<usize>, Option<usize>)> = HashMap::new();
    for (i, &t) in order.types.iter().enumerate() {
        let x = q.bottom_of(t).unwrap();
        for (facet, side) in q.cube_facets(t, x) {
            let entry = sides.entry(facet).or_insert((None, None));
            match side {
                Side::Rear => entry.0 = Some(i),
                Side::Front => entry.1 = Some(i),
            }
        }
    }
    // Every facet lies on at least one cube, so at least one side is known.
    Some(
        sides
            .into_iter()
            .filter(|&(_, (below, above))| {
                below.is_none_or(|c| member[c]) && above.is_none_or(|c| !member[c])
            })
            .map(|(f, _)| f)
            .collect(),
    )
}

/// True when a facet set projects bijectively onto `Z(n,d-1)`: the facet
/// count is `C(n,d-1)`, the projected types are pairwise distinct, and the
/// projected complex is closed under vertex reconstruction.
fn projects_onto_base(n: usize, d: usize, facets: &BTreeSet<Facet>) -> bool {
    if facets.len() != binomial(n, d - 1) {
        return false;
    }
    let mut types: BTreeSet<ColorSet> = BTreeSet::new();
    for &(_, s) in facets {
        if !types.insert(s) {
            return false;
        }
    }
    let mut vertices: BTreeSet<ColorSet> = BTreeSet::new();
    for &(y, s) in facets {
        for sub in subsets(s) {
            vertices.insert(y.union(sub));
        }
    }
    let mut reconstructed: BTreeSet<Facet> = BTreeSet::new();
    for &v in &vertices {
        for s in ColorSet::subsets_of_size(n, d - 1) {
            if s.is_disjoint(v) && subsets(s).iter().all(|&f| vertices.contains(&v.union(f))) {
                reconstructed.insert((v, s));
            }
        }
    }
    reconstructed == *facets
}

pub(crate) fn enumerate(q: &Cubillage, max_ideals: usize) -> Result<MembraneLattice> {
    let order = q.natural_order()?;
    let n_cubes = order.cube_count();
    assert!(n_cubes <= 64, "cube count within dimension caps");

    // All order ideals of the natural order, as cube bitmasks.
    let mut ideals: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue: Vec<u64> = vec![0];
    seen.insert(0);
    while let Some(mask) = queue.pop() {
        ideals.push(mask);
        if ideals.len() > max_ideals {
            return Err(Error::CapExceeded(format!(
                "more than {max_ideals} order ideals"
            )));
        }
        for c in 0..n_cubes {
            if mask >> c & 1 == 0 && order.preds[c].iter().all(|&p| mask >> p & 1 == 1) {
                let next = mask | 1 << c;
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
    }

    let mut membranes = Vec::new();
    for mask in ideals {
        let ideal_types: BTreeSet<ColorSet> = (0..n_cubes)
            .filter(|&c| mask >> c & 1 == 1)
            .map(|c| order.types[c])
            .collect();
        let facets = facets_of_ideal(q, &order, &ideal_types).expect("enumerated ideal");
        if projects_onto_base(q.n(), q.dim(), &facets) {
            membranes.push(Membrane {
                ideal_types,
                facets,
            });
        }
    }
    membranes.sort_by(|a, b| {
        (a.ideal_types.len(), &a.ideal_types).cmp(&(b.ideal_types.len(), &b.ideal_types))
    });
    let by_ideal: BTreeMap<BTreeSet<ColorSet>, usize> = membranes
        .iter()
        .enumerate()
        .map(|(i, m)| (m.ideal_types.clone(), i))
        .collect();
    let front = by_ideal[&BTreeSet::new()];
    let full: BTreeSet<ColorSet> = q.cubes().map(|(t, _)| t).collect();
    let rear = by_ideal[&full];
    Ok(MembraneLattice {
        membranes,
        by_ideal,
        front,
        rear,
    })
}
