//! Capsids and capsid flips.
//!
//! For a packet `P` of `d+1` colors, the capsid of `P` is the set of `d+1`
//! cubes whose types are the `d`-subsets of `P`. The natural order chains
//! them either downwards (standard filling) or upwards (anti-standard); a
//! dense capsid (no pie separates its cubes) can be flipped to the opposite
//! filling, and the flip graph over all cubillages of `Z(n,d)` is graded by
//! inversion-set size.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{check_dims, Cubillage, Side};
use crate::colorset::ColorSet;
use crate::zonotope::CyclicConfig;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filling {
    Standard,
    Anti,
}

/// Cubes as `(type, bottom)` pairs.
pub type CubeList = Vec<(ColorSet, ColorSet)>;

/// The `d+1` cubes of one packet, ordered `C_1..C_{d+1}` with `C_i` of type
/// `P` minus its `i`-th color.
#[derive(Clone, Debug)]
pub struct Capsid {
    pub packet: ColorSet,
    /// Bottom of `C_i` at position `i-1`.
    pub bottoms: Vec<ColorSet>,
    pub filling: Filling,
}

impl Capsid {
    pub fn cube_type(&self, i: usize) -> ColorSet {
        self.packet.remove(self.packet.nth(i + 1).unwrap())
    }

    /// Dense when no pie separates two of its cubes: a color outside the
    /// packet separates exactly when it lies in the bottom of some but not
    /// all of the cubes, so density is the equality of all `X_i - P`.
    pub fn is_dense(&self) -> bool {
        let outside = self.bottoms[0].minus(self.packet);
        self.bottoms.iter().all(|x| x.minus(self.packet) == outside)
    }

    /// The common part of the bottoms outside the packet; the bottom vertex
    /// of the parallelotope `(Y|P)` a dense capsid fills.
    pub fn base(&self) -> ColorSet {
        self.bottoms[0].minus(self.packet)
    }
}

impl Cubillage {
    /// Collects the capsid of a packet and reads its filling off the natural
    /// order.
    pub fn capsid(&self, packet: ColorSet) -> Result<Capsid> {
        if packet.len() != self.dim() + 1 || !packet.is_subset(ColorSet::full(self.n())) {
            return Err(Error::PreconditionViolated(format!(
                "packet {packet} must have d+1 = {} colors within 1..={}",
                self.dim() + 1,
                self.n()
            )));
        }
        let order = self.natural_order()?;
        self.capsid_with_order(packet, &order)
    }

    pub(crate) fn capsid_with_order(
        &self,
        packet: ColorSet,
        order: &super::NaturalOrder,
    ) -> Result<Capsid> {
        let mut indices = Vec::new();
        let mut bottoms = Vec::new();
        for p in packet.iter() {
            let t = packet.remove(p);
            let x = self
                .bottom_of(t)
                .ok_or_else(|| Error::NotPresent(format!("{t}")))?;
            indices.push(order.index_of(t).unwrap());
            bottoms.push(x);
        }
        let k = indices.len();
        let descending = (0..k - 1).all(|i| order.precedes(indices[i + 1], indices[i]));
        let ascending = (0..k - 1).all(|i| order.precedes(indices[i], indices[i + 1]));
        let filling = match (descending, ascending) {
            (true, false) => Filling::Standard,
            (false, true) => Filling::Anti,
            _ => return Err(Error::NotAChain(format!("{packet}"))),
        };
        Ok(Capsid {
            packet,
            bottoms,
            filling,
        })
    }

    /// Both fillings of the parallelotope `(base|packet)`, computed as the
    /// front and rear sides of that cube over the restricted configuration.
    pub fn capsid_fillings(&self, base: ColorSet, packet: ColorSet) -> (CubeList, CubeList) {
        let sub = self.config().restrict(packet);
        let local: Vec<u8> = packet.iter().collect();
        let globalize = |s: ColorSet| -> ColorSet {
            ColorSet::from_colors(&s.iter().map(|c| local[c as usize - 1]).collect::<Vec<_>>())
        };
        let mut fillings = Vec::new();
        for side in [Side::Front, Side::Rear] {
            let filling = Cubillage::extreme(&sub, side)
                .expect("restricted configuration within caps")
                .cubes()
                .map(|(t, x)| (globalize(t), globalize(x).union(base)))
                .collect();
            fillings.push(filling);
        }
        let rear = fillings.pop().unwrap();
        let front = fillings.pop().unwrap();
        (front, rear)
    }

    /// Flips the dense capsid of `packet` to the opposite filling.
    pub fn capsid_flip(&self, packet: ColorSet) -> Result<Cubillage> {
        let capsid = self.capsid(packet)?;
        if !capsid.is_dense() {
            return Err(Error::NotDense(
                format!("{packet}"),
                "a pie separates the capsid cubes".into(),
            ));
        }
        let (standard, anti) = self.capsid_fillings(capsid.base(), packet);
        let (current, replacement) = match capsid.filling {
            Filling::Standard => (standard, anti),
            Filling::Anti => (anti, standard),
        };
        let mut cubes: BTreeMap<ColorSet, ColorSet> =
            self.cubes().collect();
        for (t, x) in current {
            if cubes.get(&t) != Some(&x) {
                return Err(Error::PropertyViolated(format!(
                    "dense capsid {packet} does not match its computed filling at type {t}"
                )));
            }
            cubes.remove(&t);
        }
        for (t, x) in replacement {
            cubes.insert(t, x);
        }
        Cubillage::new(self.config().clone(), cubes.into_iter().collect())
    }

    /// Packets whose capsid has the anti-standard filling: the complete
    /// invariant of the cubillage.
    pub fn inversions(&self) -> Result<BTreeSet<ColorSet>> {
        let order = self.natural_order()?;
        let mut inv = BTreeSet::new();
        for packet in ColorSet::subsets_of_size(self.n(), self.dim() + 1) {
            if self.capsid_with_order(packet, &order)?.filling == Filling::Anti {
                inv.insert(packet);
            }
        }
        Ok(inv)
    }
}

/// Ziegler's realizability criterion: a set of `(d+1)`-subsets of `[n]` is
/// the inversion set of a cubillage on `Z(n,d)` iff its intersection with
/// every packet family (the `(d+1)`-subsets of a `(d+2)`-set, ranged
/// lexicographically) is a prefix or a suffix of the family.
pub fn ziegler_check(inv: &BTreeSet<ColorSet>, n: usize, d: usize) -> bool {
    for q in ColorSet::subsets_of_size(n, d + 2) {
        // Dropping colors from largest to smallest ranges the family
        // lexicographically.
        let flags: Vec<bool> = q
            .colors()
            .iter()
            .rev()
            .map(|&c| inv.contains(&q.remove(c)))
            .collect();
        let ones = flags.iter().filter(|&&f| f).count();
        let is_prefix = flags[..ones].iter().all(|&f| f);
        let is_suffix = flags[flags.len() - ones..].iter().all(|&f| f);
        if !is_prefix && !is_suffix {
            return false;
        }
    }
    true
}

/// The flip graph over all cubillages of `Z(n,d)`: nodes keyed by inversion
/// set, arcs the raising flips, explored breadth-first from the standard
/// cubillage.
#[derive(Clone, Debug)]
pub struct CubillageFlipGraph {
    pub n: usize,
    pub d: usize,
    pub nodes: Vec<(BTreeSet<ColorSet>, Cubillage)>,
    /// Arcs `(from, to, flipped packet)`.
    pub arcs: Vec<(usize, usize, ColorSet)>,
}

impl CubillageFlipGraph {
    pub fn node_by_inversions(&self, inv: &BTreeSet<ColorSet>) -> Option<usize> {
        self.nodes.iter().position(|(i, _)| i == inv)
    }
}

pub fn cubillage_flip_graph(n: usize, d: usize, max_nodes: usize) -> Result<CubillageFlipGraph> {
    check_dims(n, d)?;
    let cfg = CyclicConfig::standard(n, d)?;
    let start = Cubillage::extreme(&cfg, Side::Front)?;
    let start_inv = start.inversions()?;

    let mut nodes: Vec<(BTreeSet<ColorSet>, Cubillage)> = vec![(start_inv.clone(), start)];
    let mut index: HashMap<BTreeSet<ColorSet>, usize> = HashMap::new();
    index.insert(start_inv, 0);
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        let (inv, q) = nodes[cur].clone();
        let order = q.natural_order()?;
        for packet in ColorSet::subsets_of_size(n, d + 1) {
            let capsid = q.capsid_with_order(packet, &order)?;
            if capsid.filling != Filling::Standard || !capsid.is_dense() {
                continue;
            }
            let flipped = q.capsid_flip(packet)?;
            let mut next_inv = inv.clone();
            next_inv.insert(packet);
            let next = match index.get(&next_inv) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= max_nodes {
                        return Err(Error::CapExceeded(format!(
                            "more than {max_nodes} cubillages"
                        )));
                    }
                    let i = nodes.len();
                    index.insert(next_inv.clone(), i);
                    nodes.push((next_inv, flipped));
                    queue.push_back(i);
                    i
                }
            };
            arcs.push((cur, next, packet));
        }
    }

    // Renumber nodes by (rank, inversion set) for reproducible output.
    let mut perm: Vec<usize> = (0..nodes.len()).collect();
    perm.sort_by(|&a, &b| {
        (nodes[a].0.len(), &nodes[a].0).cmp(&(nodes[b].0.len(), &nodes[b].0))
    });
    let mut rank_of = vec![0; nodes.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank_of[old] = new;
    }
    let mut sorted_nodes = Vec::with_capacity(nodes.len());
    for &old in &perm {
        sorted_nodes.push(nodes[old].clone());
    }
    let mut sorted_arcs: Vec<(usize, usize, ColorSet)> = arcs
        .into_iter()
        .map(|(a, b, p)| (rank_of[a], rank_of[b], p))
        .collect();
    sorted_arcs.sort();
    Ok(CubillageFlipGraph {
        n,
        d,
        nodes: sorted_nodes,
        arcs: sorted_arcs,
    })
}

/// Number of subsets of the `(d+1)`-subsets of `[n]` passing the
/// prefix/suffix criterion, counted by direct enumeration.
pub fn ziegler_count(n: usize, d: usize) -> Result<usize> {
    let packets = ColorSet::subsets_of_size(n, d + 1);
    if packets.len() > 20 {
        return Err(Error::CapExceeded(format!(
            "too many packets to enumerate: {}",
            packets.len()
        )));
    }
    let mut count = 0;
    for mask in 0u32..(1 << packets.len()) {
        let inv: BTreeSet<ColorSet> = packets
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if ziegler_check(&inv, n, d) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::super::binomial;
    use super::*;

    fn cs(colors: &[u8]) -> ColorSet {
        ColorSet::from_colors(colors)
    }

    fn std_cub(n: usize, d: usize) -> Cubillage {
        let cfg = CyclicConfig::standard(n, d).unwrap();
        Cubillage::extreme(&cfg, Side::Front).unwrap()
    }

    #[test]
    fn standard_cubillage_has_no_inversions() {
        for (n, d) in [(4, 2), (5, 2), (5, 3)] {
            assert!(std_cub(n, d).inversions().unwrap().is_empty());
            let cfg = CyclicConfig::standard(n, d).unwrap();
            let anti = Cubillage::extreme(&cfg, Side::Rear).unwrap();
            assert_eq!(anti.inversions().unwrap().len(), binomial(n, d + 1));
        }
    }

    #[test]
    fn capsid_fillings_follow_the_parity_pattern() {
        // Regression fixture: in the standard filling of (Y|P), cube C_i has
        // bottom Y when d-i is odd and Y + p_i when d-i is even; the
        // anti-standard filling is the other way round. Derived from the
        // front/rear sides of a single lifted cube.
        for (n, d) in [(3, 2), (4, 3), (5, 4)] {
            let q = std_cub(n, d);
            let packet = ColorSet::full(n);
            let (std_fill, anti_fill) = q.capsid_fillings(ColorSet::EMPTY, packet);
            let colors: Vec<u8> = packet.colors();
            for (i, &p_i) in colors.iter().enumerate() {
                let t = packet.remove(p_i);
                let std_x = std_fill.iter().find(|&&(ft, _)| ft == t).unwrap().1;
                let anti_x = anti_fill.iter().find(|&&(ft, _)| ft == t).unwrap().1;
                let expected_std = if (d as i64 - (i as i64 + 1)) % 2 != 0 {
                    ColorSet::EMPTY
                } else {
                    ColorSet::singleton(p_i)
                };
                assert_eq!(std_x, expected_std, "std ({n},{d}) i={}", i + 1);
                let expected_anti = if (d as i64 - (i as i64 + 1)) % 2 == 0 {
                    ColorSet::EMPTY
                } else {
                    ColorSet::singleton(p_i)
                };
                assert_eq!(anti_x, expected_anti, "anti ({n},{d}) i={}", i + 1);
            }
        }
    }

    #[test]
    fn first_flip_from_standard() {
        let q = std_cub(4, 2);
        let order = q.natural_order().unwrap();
        let mut flippable = Vec::new();
        for packet in ColorSet::subsets_of_size(4, 3) {
            let c = q.capsid_with_order(packet, &order).unwrap();
            assert_eq!(c.filling, Filling::Standard);
            if c.is_dense() {
                flippable.push(packet);
            }
        }
        assert!(!flippable.is_empty());
        for packet in flippable {
            let flipped = q.capsid_flip(packet).unwrap();
            assert!(flipped.validate().is_valid());
            let inv = flipped.inversions().unwrap();
            assert_eq!(inv.into_iter().collect::<Vec<_>>(), vec![packet]);
            // Lowering it again restores the standard cubillage.
            assert_eq!(flipped.capsid_flip(packet).unwrap(), q);
        }
    }

    #[test]
    fn capsid_of_whole_zonotope_is_dense() {
        let q = std_cub(3, 2);
        let c = q.capsid(ColorSet::full(3)).unwrap();
        assert!(c.is_dense());
        assert_eq!(c.filling, Filling::Standard);
    }

    #[test]
    fn pie_separation_in_standard_5_2() {
        // Direct pie scan: a color outside the packet separates two capsid
        // cubes iff it lies in one bottom but not the other.
        let q = std_cub(5, 2);
        let capsid = q.capsid(cs(&[1, 3, 5])).unwrap();
        let mut separated = false;
        for c in 1..=5u8 {
            if capsid.packet.contains(c) {
                continue;
            }
            let inside = capsid.bottoms.iter().filter(|x| x.contains(c)).count();
            if inside != 0 && inside != capsid.bottoms.len() {
                separated = true;
            }
        }
        // Frozen: the {1,3,5} capsid of the standard tiling is separated
        // (loose), and is_dense agrees with the scan.
        assert!(separated);
        assert_eq!(capsid.is_dense(), !separated);
    }

    #[test]
    fn ziegler_examples() {
        assert!(ziegler_check(&BTreeSet::new(), 4, 2));
        let prefix: BTreeSet<ColorSet> = [cs(&[1, 2, 3]), cs(&[1, 2, 4])].into_iter().collect();
        assert!(ziegler_check(&prefix, 4, 2));
        let gap: BTreeSet<ColorSet> = [cs(&[1, 2, 3]), cs(&[1, 3, 4])].into_iter().collect();
        assert!(!ziegler_check(&gap, 4, 2));
    }

    #[test]
    fn flip_graph_4_2_has_eight_nodes() {
        let g = cubillage_flip_graph(4, 2, 10_000).unwrap();
        assert_eq!(g.nodes.len(), 8);
        for (_, q) in &g.nodes {
            assert!(q.validate().is_valid());
        }
        // Every arc adds exactly one inversion.
        for &(a, b, p) in &g.arcs {
            let mut expected = g.nodes[a].0.clone();
            expected.insert(p);
            assert_eq!(expected, g.nodes[b].0);
        }
        assert_eq!(ziegler_count(4, 2).unwrap(), 8);
    }

    #[test]
    fn flip_graph_of_single_capsid_zonotopes() {
        // n = d+1: the whole zonotope is one capsid with two fillings.
        for d in 2..=3 {
            let g = cubillage_flip_graph(d + 1, d, 100).unwrap();
            assert_eq!(g.nodes.len(), 2);
            assert_eq!(g.arcs.len(), 1);
        }
        // n = d: a single cube, nothing to flip.
        let g = cubillage_flip_graph(3, 3, 100).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.arcs.is_empty());
    }

    #[test]
    fn flip_graph_counts_match_ziegler() {
        for (n, d) in [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (5, 3)] {
            let g = cubillage_flip_graph(n, d, 10_000).unwrap();
            assert_eq!(
                g.nodes.len(),
                ziegler_count(n, d).unwrap(),
                "mismatch at ({n},{d})"
            );
        }
    }
}
