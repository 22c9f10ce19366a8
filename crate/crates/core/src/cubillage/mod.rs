//! Cubillages: fine subdivisions of the cyclic zonotope `Z(n,d)` into
//! `C(n,d)` parallelotopes ("cubes"), one per `d`-element color type.
//!
//! A cube is written `(X|T)`: `X` is its bottommost vertex (a color subset),
//! `T` the set of its edge colors, `X` and `T` disjoint. Front/rear sides are
//! what is visible from below/above along the last coordinate; all side
//! decisions are signs of exact integer determinants.

mod capsid;
mod membrane;

pub use capsid::{
    cubillage_flip_graph, ziegler_check, ziegler_count, Capsid, CubillageFlipGraph, Filling,
};
pub use membrane::{Membrane, MembraneLattice};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bits::{reachability, BitSet};
use crate::colorset::ColorSet;
use crate::exact::{dot, neg, orthogonal, sign};
use crate::zonotope::CyclicConfig;
use crate::{Error, Result};

/// Which extreme side of the zonotope (or of a cube) to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Front,
    Rear,
}

/// Where the added color goes in an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandSide {
    /// New color larger than every existing one.
    High,
    /// New color smaller than every existing one.
    Low,
}

/// A facet of the complex, one dimension below the cubes: bottom vertex and
/// `(d-1)`-element type.
pub type Facet = (ColorSet, ColorSet);

/// A cubillage of `Z(n,d)`: cube bottoms keyed by their (distinct) types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cubillage {
    cfg: CyclicConfig,
    cubes: BTreeMap<ColorSet, ColorSet>,
}

/// Natural ("shadow") order on the cubes of a cubillage: generated by
/// rear-facet/front-facet adjacency, stored with its reachability closure.
#[derive(Clone, Debug)]
pub struct NaturalOrder {
    /// Cube types in storage order; indices below refer to this list.
    pub types: Vec<ColorSet>,
    /// Immediate-precedence arcs `(below, above)`.
    pub arcs: Vec<(usize, usize)>,
    pub succs: Vec<Vec<usize>>,
    pub preds: Vec<Vec<usize>>,
    reach: Vec<BitSet>,
}

impl NaturalOrder {
    pub fn cube_count(&self) -> usize {
        self.types.len()
    }

    pub fn index_of(&self, t: ColorSet) -> Option<usize> {
        self.types.binary_search(&t).ok()
    }

    /// Strict precedence: `a` is below `b` in the transitive closure.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.reach[a].contains(b)
    }
}

/// Outcome of the validity checks on a cube list.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ValidationReport {
    pub cube_count: usize,
    pub expected_count: usize,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Caps on the supported color counts per dimension.
pub fn check_dims(n: usize, d: usize) -> Result<()> {
    let max_n = match d {
        1 | 2 => 8,
        3 | 4 => 7,
        _ => {
            return Err(Error::CapExceeded(format!(
                "dimension {d} not supported (1..=4)"
            )))
        }
    };
    if n < d {
        return Err(Error::PreconditionViolated(format!(
            "need n >= d, got n={n} d={d}"
        )));
    }
    if n > max_n {
        return Err(Error::CapExceeded(format!(
            "n={n} exceeds the cap {max_n} for dimension {d}"
        )));
    }
    Ok(())
}

impl Cubillage {
    /// Wraps a cube list, checking the structural invariants (count,
    /// distinct types, disjointness, ranges) but not the geometry.
    pub fn new(cfg: CyclicConfig, cube_list: Vec<(ColorSet, ColorSet)>) -> Result<Cubillage> {
        let (n, d) = (cfg.n(), cfg.dim());
        let mut cubes = BTreeMap::new();
        for (t, x) in cube_list {
            if t.len() != d || !t.is_disjoint(x) || !t.union(x).is_subset(ColorSet::full(n)) {
                return Err(Error::InvalidInput(format!("malformed cube ({x}|{t})")));
            }
            if cubes.insert(t, x).is_some() {
                return Err(Error::InvalidInput(format!("repeated cube type {t}")));
            }
        }
        if cubes.len() != binomial(n, d) {
            return Err(Error::InvalidInput(format!(
                "{} cubes, expected C({n},{d}) = {}",
                cubes.len(),
                binomial(n, d)
            )));
        }
        Ok(Cubillage { cfg, cubes })
    }

    pub fn config(&self) -> &CyclicConfig {
        &self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim()
    }

    /// Cubes as `(type, bottom)` pairs in type order.
    pub fn cubes(&self) -> impl Iterator<Item = (ColorSet, ColorSet)> + '_ {
        self.cubes.iter().map(|(&t, &x)| (t, x))
    }

    pub fn bottom_of(&self, t: ColorSet) -> Option<ColorSet> {
        self.cubes.get(&t).copied()
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    /// The extreme cubillage on the chosen side: project the corresponding
    /// boundary side of the lifted zonotope `Z(n,d+1)` down to `Z(n,d)`.
    /// Front gives the standard cubillage, rear the anti-standard one.
    pub fn extreme(cfg: &CyclicConfig, side: Side) -> Result<Cubillage> {
        check_dims(cfg.n(), cfg.dim())?;
        let lifted = cfg.lift();
        let (n, d) = (cfg.n(), cfg.dim());
        let mut cubes = BTreeMap::new();
        for t in ColorSet::subsets_of_size(n, d) {
            let rows: Vec<Vec<BigInt>> =
                t.iter().map(|c| lifted.vector(c).to_vec()).collect();
            let mut h = orthogonal(&rows);
            // Orient the facet normal along the viewing direction.
            let want = match side {
                Side::Front => -1,
                Side::Rear => 1,
            };
            let last = sign(&h[d]);
            assert!(last != 0, "facet normal horizontal in a cyclic configuration");
            if last != want {
                h = neg(&h);
            }
            let mut x = ColorSet::EMPTY;
            for c in 1..=n as u8 {
                if !t.contains(c) && sign(&dot(&h, lifted.vector(c))) > 0 {
                    x = x.insert(c);
                }
            }
            cubes.insert(t, x);
        }
        Ok(Cubillage {
            cfg: cfg.clone(),
            cubes,
        })
    }

    /// The `2d` facets of a cube, each tagged with the side of the cube it
    /// lies on.
    pub fn cube_facets(&self, t: ColorSet, x: ColorSet) -> Vec<(Facet, Side)> {
        let mut out = Vec::with_capacity(2 * t.len());
        for c in t.iter() {
            let s = t.remove(c);
            let low_side = if self.facet_normal_up(s, c) {
                Side::Front
            } else {
                Side::Rear
            };
            let high_side = match low_side {
                Side::Front => Side::Rear,
                Side::Rear => Side::Front,
            };
            out.push(((x, s), low_side));
            out.push(((x.insert(c), s), high_side));
        }
        out
    }

    /// True when the normal of the `s`-facets pointing towards color `c`
    /// has positive last coordinate. The facet `(X|s)` of cube `(X|s+c)` is
    /// then on the cube's front side.
    fn facet_normal_up(&self, s: ColorSet, c: u8) -> bool {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|a| self.cfg.vector(a).to_vec()).collect();
        let mut h = orthogonal(&rows);
        if sign(&dot(&h, self.cfg.vector(c))) < 0 {
            h = neg(&h);
        }
        let last = sign(&h[self.dim() - 1]);
        assert!(last != 0, "degenerate facet normal");
        last > 0
    }

    /// The boundary facet of the whole zonotope with type `s` on the given
    /// side.
    pub fn boundary_facet(&self, s: ColorSet, side: Side) -> Facet {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|a| self.cfg.vector(a).to_vec()).collect();
        let mut h = orthogonal(&rows);
        let want = match side {
            Side::Front => -1,
            Side::Rear => 1,
        };
        if sign(&h[self.dim() - 1]) != want {
            h = neg(&h);
        }
        let mut x = ColorSet::EMPTY;
        for c in 1..=self.n() as u8 {
            if !s.contains(c) && sign(&dot(&h, self.cfg.vector(c))) > 0 {
                x = x.insert(c);
            }
        }
        (x, s)
    }

    /// Builds the natural order. Errors when facet adjacency is inconsistent
    /// or cyclic, which signals an invalid cubillage.
    pub fn natural_order(&self) -> Result<NaturalOrder> {
        let types: Vec<ColorSet> = self.cubes.keys().copied().collect();
        let index: HashMap<ColorSet, usize> =
            types.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        // facet -> (cube having it on its rear side, cube having it on its front side)
        let mut sides: HashMap<Facet, (Option<usize>, Option<usize>)> = HashMap::new();
        for (&t, &x) in &self.cubes {
            let ci = index[&t];
            for (facet, side) in self.cube_facets(t, x) {
                let entry = sides.entry(facet).or_insert((None, None));
                let slot = match side {
                    Side::Rear => &mut entry.0,
                    Side::Front => &mut entry.1,
                };
                if slot.replace(ci).is_some() {
                    return Err(Error::PropertyViolated(format!(
                        "facet ({}|{}) lies on the same side of two cubes",
                        facet.0, facet.1
                    )));
                }
            }
        }
        let mut arcs: Vec<(usize, usize)> = sides
            .values()
            .filter_map(|&(below, above)| Some((below?, above?)))
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        let mut succs = vec![Vec::new(); types.len()];
        let mut preds = vec![Vec::new(); types.len()];
        for &(a, b) in &arcs {
            succs[a].push(b);
            preds[b].push(a);
        }
        let reach = reachability(types.len(), &succs);
        for (i, r) in reach.iter().enumerate() {
            if r.contains(i) {
                return Err(Error::CycleDetected(format!("{}", types[i])));
            }
        }
        Ok(NaturalOrder {
            types,
            arcs,
            succs,
            preds,
            reach,
        })
    }

    /// Full validity report; see [`validate_cubes`].
    pub fn validate(&self) -> ValidationReport {
        let list: Vec<(ColorSet, ColorSet)> = self.cubes().collect();
        validate_cubes(&self.cfg, &list)
    }

    /// Contracts the `i`-pie: removes every cube whose type contains `i`,
    /// drops `i` from the remaining bottoms, renumbers higher colors down.
    pub fn contract(&self, i: u8) -> Result<Cubillage> {
        let (n, d) = (self.n(), self.dim());
        if !(1..=n as u8).contains(&i) {
            return Err(Error::PreconditionViolated(format!("color {i} not in 1..={n}")));
        }
        if n - 1 < d {
            return Err(Error::PreconditionViolated(format!(
                "contracting below n = d (n={n}, d={d})"
            )));
        }
        let cfg = self.cfg.restrict(ColorSet::full(n).remove(i));
        let cubes = self
            .cubes
            .iter()
            .filter(|(t, _)| !t.contains(i))
            .map(|(&t, &x)| (drop_color(t, i), drop_color(x.remove(i), i)))
            .collect();
        Ok(Cubillage { cfg, cubes })
    }

    /// Expands along a membrane, adding one color on the requested side.
    /// Inverse of [`contract`](Self::contract) on the new color.
    ///
    /// The new pie is the membrane thickened by the new vector; the part of
    /// the old cubillage beyond the pie along that vector is the part whose
    /// bottoms gain the new color. The pie sits above the membrane when the
    /// vector's last coordinate is positive (the non-ideal side moves) and
    /// below when negative (the ideal moves). Parameters are chosen to keep
    /// that coordinate nonzero.
    pub fn expand(&self, m: &Membrane, side: ExpandSide) -> Result<Cubillage> {
        self.check_membrane(m)?;
        let (n, d) = (self.n(), self.dim());
        check_dims(n + 1, d)?;
        let t = self.cfg.params();
        let (params, alpha, shifted) = match side {
            ExpandSide::High => {
                let mut ta = if n >= 2 { 2 * t[n - 1] - t[n - 2] } else { t[0] + 1 };
                if ta == 0 {
                    ta = 1; // t_n < 0 here, so 1 stays above it
                }
                let mut params = t.to_vec();
                params.push(ta);
                (params, n as u8 + 1, false)
            }
            ExpandSide::Low => {
                let mut ta = if n >= 2 { 2 * t[0] - t[1] } else { t[0] - 1 };
                if ta == 0 {
                    ta = -1; // t_1 > 0 here, so -1 stays below it
                }
                let mut params = vec![ta];
                params.extend_from_slice(t);
                (params, 1u8, true)
            }
        };
        let cfg = CyclicConfig::veronese(&params, d)?;
        let relabel = |s: ColorSet| if shifted { shift_up(s) } else { s };
        let points_up = sign(&cfg.vector(alpha)[d - 1]) > 0;
        let mut cubes = BTreeMap::new();
        for (&ct, &cx) in &self.cubes {
            let gains = m.ideal_types.contains(&ct) != points_up;
            let (ct, cx) = (relabel(ct), relabel(cx));
            cubes.insert(ct, if gains { cx.insert(alpha) } else { cx });
        }
        for &(y, s) in &m.facets {
            cubes.insert(relabel(s).insert(alpha), relabel(y));
        }
        Ok(Cubillage { cfg, cubes })
    }

    fn check_membrane(&self, m: &Membrane) -> Result<()> {
        let order = self.natural_order()?;
        let rebuilt = membrane::facets_of_ideal(self, &order, &m.ideal_types)
            .ok_or_else(|| Error::NotAMembrane("ideal is not downward closed".into()))?;
        if rebuilt != m.facets {
            return Err(Error::NotAMembrane(
                "facet set does not match the ideal's rear boundary".into(),
            ));
        }
        Ok(())
    }

    /// Membranes of this cubillage as a distributive lattice.
    pub fn membranes(&self, max_ideals: usize) -> Result<MembraneLattice> {
        membrane::enumerate(self, max_ideals)
    }

    /// The `S`-tunnel: the `n-d+1` cubes whose types contain `S`, chained
    /// front to rear by their shared `S`-facets.
    pub fn tunnel(&self, s: ColorSet) -> Result<Vec<ColorSet>> {
        let (n, d) = (self.n(), self.dim());
        if s.len() != d - 1 {
            return Err(Error::PreconditionViolated(format!(
                "tunnel type {s} must have d-1 = {} colors",
                d - 1
            )));
        }
        // For each tunnel cube, its front and rear S-facets.
        let mut by_front: HashMap<Facet, ColorSet> = HashMap::new();
        let mut rear_of: HashMap<ColorSet, Facet> = HashMap::new();
        for (&t, &x) in self.cubes.iter().filter(|(t, _)| s.is_subset(**t)) {
            let c = t.minus(s).nth(1).unwrap();
            let (front, rear) = if self.facet_normal_up(s, c) {
                ((x, s), (x.insert(c), s))
            } else {
                ((x.insert(c), s), (x, s))
            };
            by_front.insert(front, t);
            rear_of.insert(t, rear);
        }
        let expected = n - d + 1;
        if by_front.len() != expected {
            return Err(Error::ChainBroken(format!(
                "{} cubes contain {s}, expected {expected}",
                by_front.len()
            )));
        }
        let mut cur = *by_front
            .get(&self.boundary_facet(s, Side::Front))
            .ok_or_else(|| {
                Error::ChainBroken(format!("no tunnel cube starts on the front boundary for {s}"))
            })?;
        let mut chain = vec![cur];
        while chain.len() < expected {
            cur = *by_front.get(&rear_of[&cur]).ok_or_else(|| {
                Error::ChainBroken(format!("chain stops after {} cubes for {s}", chain.len()))
            })?;
            chain.push(cur);
        }
        if rear_of[&cur] != self.boundary_facet(s, Side::Rear) {
            return Err(Error::ChainBroken(format!(
                "last tunnel cube does not end on the rear boundary for {s}"
            )));
        }
        Ok(chain)
    }

    /// Color-reversal mirror: standard and anti-standard swap under it.
    pub fn mirror(&self) -> Cubillage {
        let n = self.n();
        let cubes = self
            .cubes
            .iter()
            .map(|(&t, &x)| {
                let full = ColorSet::full(n);
                (t.reversed(n), full.minus(x).minus(t).reversed(n))
            })
            .collect();
        Cubillage {
            cfg: self.cfg.mirror(),
            cubes,
        }
    }
}

/// Removes color `i` from the ground set: bits above `i` shift down.
fn drop_color(s: ColorSet, i: u8) -> ColorSet {
    let mask_low = (1u16 << (i - 1)) - 1;
    ColorSet((s.0 & mask_low) | ((s.0 >> 1) & !mask_low))
}

/// Shifts every color up by one (new smallest color 1 free).
fn shift_up(s: ColorSet) -> ColorSet {
    ColorSet(s.0 << 1)
}

/// Validates a cube list against a configuration:
/// count and distinct types, containment in the zonotope, pairwise interior
/// disjointness (by exact separating directions), and vertex-set closure.
pub fn validate_cubes(cfg: &CyclicConfig, list: &[(ColorSet, ColorSet)]) -> ValidationReport {
    let (n, d) = (cfg.n(), cfg.dim());
    let mut report = ValidationReport {
        cube_count: list.len(),
        expected_count: binomial(n, d),
        ..Default::default()
    };

    let mut types = BTreeSet::new();
    for &(t, x) in list {
        if t.len() != d {
            report
                .failures
                .push(format!("cube ({x}|{t}): type size {} != d = {d}", t.len()));
        }
        if !t.is_disjoint(x) {
            report
                .failures
                .push(format!("cube ({x}|{t}): bottom meets type"));
        }
        if !t.union(x).is_subset(ColorSet::full(n)) {
            report
                .failures
                .push(format!("cube ({x}|{t}): colors out of range 1..={n}"));
        }
        if !types.insert(t) {
            report.failures.push(format!("type {t} repeated"));
        }
    }
    if list.len() != report.expected_count {
        report.failures.push(format!(
            "{} cubes, expected C({n},{d}) = {}",
            list.len(),
            report.expected_count
        ));
    }
    if !report.failures.is_empty() {
        return report; // geometry checks assume structural sanity
    }

    // Containment: every cube vertex satisfies the slab of every facet
    // direction of Z, i.e. every normal to d-1 of the generators.
    for s in ColorSet::subsets_of_size(n, d - 1) {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|c| cfg.vector(c).to_vec()).collect();
        let h = orthogonal(&rows);
        let vals: Vec<BigInt> = (1..=n as u8).map(|c| dot(&h, cfg.vector(c))).collect();
        let lo: BigInt = vals.iter().filter(|v| sign(v) < 0).sum();
        let hi: BigInt = vals.iter().filter(|v| sign(v) > 0).sum();
        let value = |set: ColorSet| -> BigInt {
            set.iter().map(|c| vals[c as usize - 1].clone()).sum()
        };
        for &(t, x) in list {
            for sub in subsets(t) {
                let v = value(x.union(sub));
                if v < lo || v > hi {
                    report.failures.push(format!(
                        "cube ({x}|{t}): vertex {} outside Z along normal to {s}",
                        x.union(sub)
                    ));
                }
            }
        }
    }

    // Pairwise interior disjointness: search for an exact separating
    // direction among normals spanned by d-1 of the two cubes' generators.
    for (i, &(t1, x1)) in list.iter().enumerate() {
        'pair: for &(t2, x2) in &list[i + 1..] {
            let union = t1.union(t2);
            for dset in subsets_of_size_from(union, d - 1) {
                let rows: Vec<Vec<BigInt>> =
                    dset.iter().map(|c| cfg.vector(c).to_vec()).collect();
                let h = orthogonal(&rows);
                if h.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let range = |t: ColorSet, x: ColorSet| {
                    let base = dot(&h, &cfg.subset_point(x));
                    let mut lo = base.clone();
                    let mut hi = base;
                    for c in t.iter() {
                        let v = dot(&h, cfg.vector(c));
                        if sign(&v) < 0 {
                            lo += v;
                        } else {
                            hi += v;
                        }
                    }
                    (lo, hi)
                };
                let (lo1, hi1) = range(t1, x1);
                let (lo2, hi2) = range(t2, x2);
                if hi1 <= lo2 || hi2 <= lo1 {
                    continue 'pair;
                }
            }
            report
                .failures
                .push(format!("cubes ({x1}|{t1}) and ({x2}|{t2}) overlap"));
        }
    }

    // Vertex-set closure: the cube set must be reconstructible from its
    // vertex set. A pair (X,T) is a cube of the complex exactly when all
    // vertices X + S, S within T, are present.
    let mut vertices = BTreeSet::new();
    for &(t, x) in list {
        for sub in subsets(t) {
            vertices.insert(x.union(sub));
        }
    }
    let mut reconstructed = BTreeSet::new();
    for &v in &vertices {
        for t in ColorSet::subsets_of_size(n, d) {
            if t.is_disjoint(v) && subsets(t).iter().all(|&s| vertices.contains(&v.union(s))) {
                reconstructed.insert((t, v));
            }
        }
    }
    let given: BTreeSet<(ColorSet, ColorSet)> = list.iter().map(|&(t, x)| (t, x)).collect();
    if reconstructed != given {
        for &(t, x) in reconstructed.difference(&given) {
            report
                .failures
                .push(format!("vertex set admits extra cube ({x}|{t})"));
        }
        for &(t, x) in given.difference(&reconstructed) {
            report
                .failures
                .push(format!("cube ({x}|{t}) not recoverable from vertices"));
        }
    }

    report
}

/// All subsets of a color set.
pub fn subsets(s: ColorSet) -> Vec<ColorSet> {
    let mut out = vec![ColorSet::EMPTY];
    for c in s.iter() {
        let mut more: Vec<ColorSet> = out.iter().map(|x| x.insert(c)).collect();
        out.append(&mut more);
    }
    out
}

/// All `k`-subsets of a given color set.
pub fn subsets_of_size_from(s: ColorSet, k: usize) -> Vec<ColorSet> {
    subsets(s).into_iter().filter(|x| x.len() == k).collect()
}
