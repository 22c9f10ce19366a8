//! Corteges: chained tuples of nontrivial paths, their subcortege sequences,
//! and endpoint types.
//!
//! A `k`-cortege is a tuple `(p_1,..,p_k)` of nontrivial paths where the head
//! of each part is the tail of the next. [`PathSystem`] enumerates all
//! corteges level by level up to a requested degree and precomputes the
//! structural tables the order and bridge machinery needs: for every
//! `k`-cortege `p` the sequence `S(p)` of `k+1` sub-(`k-1`)-corteges, the set
//! of routes containing `p`, and `p`'s endpoint positions within each route.

use std::collections::HashMap;

use crate::colorset::ColorSet;
use crate::digraph::{Digraph, Labeling, Path, Vertex};
use crate::{Caps, Error, Result, MAX_COLORS};

pub type PathId = usize;
pub type CortegeId = usize;
pub type RouteId = usize;

/// A cortege as a tuple of path ids into the host [`PathSystem`].
/// The derived `Ord` (lexicographic on path ids, paths sorted canonically)
/// is the canonical cortege order used for all deterministic output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cortege {
    pub parts: Vec<PathId>,
}

/// One enumerated level: all `k`-corteges plus their structural tables.
#[derive(Clone, Debug)]
pub struct Level {
    pub k: usize,
    /// Canonically sorted; index = [`CortegeId`].
    pub corteges: Vec<Cortege>,
    index: HashMap<Vec<PathId>, CortegeId>,
    /// For `k >= 2`: `sub[p]` lists the `k+1` members of `S(p)` as ids into
    /// level `k-1`, in the order `s_1, .., s_{k+1}`.
    pub sub: Vec<Vec<CortegeId>>,
    /// Routes containing each cortege.
    pub routes_of: Vec<Vec<RouteId>>,
}

/// A route together with the position of each of its vertices (1-based).
#[derive(Clone, Debug)]
pub struct Route {
    pub path: Path,
    pos: HashMap<Vertex, u8>,
}

impl Route {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, v: Vertex) -> Option<u8> {
        self.pos.get(&v).copied()
    }
}

/// Immutable enumeration of paths, routes and cortege levels of a digraph.
#[derive(Clone, Debug)]
pub struct PathSystem {
    graph: Digraph,
    paths: Vec<Path>,
    path_index: HashMap<Vec<Vertex>, PathId>,
    routes: Vec<Route>,
    levels: Vec<Level>,
}

impl PathSystem {
    /// Enumerates corteges of every level `1..=max_level`.
    pub fn new(graph: Digraph, max_level: usize, caps: &Caps) -> Result<PathSystem> {
        assert!(max_level >= 1);
        let paths = graph.enumerate_paths(caps)?;
        let path_index: HashMap<Vec<Vertex>, PathId> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.vertices().to_vec(), i))
            .collect();
        let routes: Vec<Route> = graph
            .enumerate_routes(caps)?
            .into_iter()
            .map(|path| {
                let pos = path
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, i as u8 + 1))
                    .collect();
                Route { path, pos }
            })
            .collect();
        let mut sys = PathSystem {
            graph,
            paths,
            path_index,
            routes,
            levels: Vec::new(),
        };
        for k in 1..=max_level {
            let level = sys.build_level(k, caps)?;
            sys.levels.push(level);
        }
        Ok(sys)
    }

    fn build_level(&self, k: usize, caps: &Caps) -> Result<Level> {
        let mut corteges = Vec::new();
        if k == 1 {
            corteges.extend((0..self.paths.len()).map(|p| Cortege { parts: vec![p] }));
        } else {
            // Extend each (k-1)-cortege by every path chained to its head.
            let prev = &self.levels[k - 2];
            let mut by_tail: HashMap<Vertex, Vec<PathId>> = HashMap::new();
            for (i, p) in self.paths.iter().enumerate() {
                by_tail.entry(p.tail()).or_default().push(i);
            }
            for c in &prev.corteges {
                let head = self.paths[*c.parts.last().unwrap()].head();
                if let Some(nexts) = by_tail.get(&head) {
                    for &q in nexts {
                        if corteges.len() >= caps.max_corteges {
                            return Err(Error::CapExceeded(format!(
                                "more than {} corteges at level {k}",
                                caps.max_corteges
                            )));
                        }
                        let mut parts = c.parts.clone();
                        parts.push(q);
                        corteges.push(Cortege { parts });
                    }
                }
            }
            corteges.sort();
        }
        let index: HashMap<Vec<PathId>, CortegeId> = corteges
            .iter()
            .enumerate()
            .map(|(i, c)| (c.parts.clone(), i))
            .collect();

        let mut sub = Vec::new();
        if k >= 2 {
            let prev = &self.levels[k - 2];
            for c in &corteges {
                let mut members = Vec::with_capacity(k + 1);
                // s_1 drops the first part.
                members.push(prev.index[&c.parts[1..].to_vec()]);
                // s_i (2 <= i <= k) merges parts i-1 and i.
                for i in 2..=k {
                    let merged = self.concat_ids(c.parts[i - 2], c.parts[i - 1]);
                    let mut parts = Vec::with_capacity(k - 1);
                    parts.extend_from_slice(&c.parts[..i - 2]);
                    parts.push(merged);
                    parts.extend_from_slice(&c.parts[i..]);
                    members.push(prev.index[&parts]);
                }
                // s_{k+1} drops the last part.
                members.push(prev.index[&c.parts[..k - 1].to_vec()]);
                sub.push(members);
            }
        }

        let routes_of = corteges
            .iter()
            .map(|c| {
                let track = self.track(c);
                (0..self.routes.len())
                    .filter(|&r| {
                        self.routes[r]
                            .path
                            .vertices()
                            .windows(track.len())
                            .any(|w| w == track.as_slice())
                    })
                    .collect()
            })
            .collect();

        Ok(Level {
            k,
            corteges,
            index,
            sub,
            routes_of,
        })
    }

    fn concat_ids(&self, p: PathId, q: PathId) -> PathId {
        let joined = self
            .graph
            .concatenate(&self.paths[p], &self.paths[q])
            .expect("cortege parts are chained");
        self.path_index[joined.vertices()]
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    /// Full vertex sequence of a cortege (parts concatenated).
    pub fn track(&self, c: &Cortege) -> Vec<Vertex> {
        let mut track = self.paths[c.parts[0]].vertices().to_vec();
        for &p in &c.parts[1..] {
            track.extend_from_slice(&self.paths[p].vertices()[1..]);
        }
        track
    }

    /// Endpoint vertices of a `k`-cortege: tail, the `k-1` shared joints,
    /// head.
    pub fn endpoints(&self, c: &Cortege) -> Vec<Vertex> {
        let mut ends = vec![self.paths[c.parts[0]].tail()];
        ends.extend(c.parts.iter().map(|&p| self.paths[p].head()));
        ends
    }

    /// Endpoint type under a global labeling: the strictly increasing tuple
    /// of endpoint labels. Fails with `NotMonotone` semantics when the
    /// labeling does not increase along the cortege.
    pub fn endpoint_type(&self, c: &Cortege, labeling: &Labeling) -> Result<Vec<u32>> {
        let labels: Vec<u32> = self
            .endpoints(c)
            .iter()
            .map(|&v| labeling.label(v))
            .collect();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::PreconditionViolated(format!(
                "labeling not monotone along cortege {}",
                self.cortege_name(c)
            )));
        }
        Ok(labels)
    }

    /// Endpoint type of a cortege within a route, as positions along the
    /// route (route-local colors). `None` if the cortege is not in the route.
    pub fn route_type(&self, route: RouteId, c: &Cortege) -> Option<ColorSet> {
        let r = &self.routes[route];
        if r.len() > MAX_COLORS {
            return None;
        }
        let mut set = ColorSet::EMPTY;
        for v in self.endpoints(c) {
            set = set.insert(r.position(v)?);
        }
        Some(set)
    }

    /// The cortege of a route whose route-local endpoint type is `t`.
    /// Inverse of [`route_type`](Self::route_type) within one route.
    pub fn cortege_of_route_type(&self, route: RouteId, t: ColorSet, k: usize) -> Option<Cortege> {
        let r = &self.routes[route];
        let positions = t.colors();
        if positions.len() != k + 1 {
            return None;
        }
        let verts = r.path.vertices();
        let mut parts = Vec::with_capacity(k);
        for w in positions.windows(2) {
            let seg = &verts[w[0] as usize - 1..w[1] as usize];
            parts.push(*self.path_index.get(seg)?);
        }
        Some(Cortege { parts })
    }

    pub fn cortege_name(&self, c: &Cortege) -> String {
        let names: Vec<String> = c
            .parts
            .iter()
            .map(|&p| self.graph.path_name(&self.paths[p]))
            .collect();
        format!("({})", names.join(", "))
    }

    /// Parses a cortege from a list of vertex-name sequences and returns its
    /// id within its level.
    pub fn cortege_from_names(&self, parts: &[Vec<String>]) -> Result<(usize, CortegeId)> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty cortege".into()));
        }
        let mut ids = Vec::with_capacity(parts.len());
        for names in parts {
            let path = self.graph.path_from_names(names)?;
            ids.push(*self
                .path_index
                .get(path.vertices())
                .expect("validated path is enumerated"));
        }
        let k = ids.len();
        if k > self.max_level() {
            return Err(Error::InvalidInput(format!(
                "cortege level {k} exceeds enumerated maximum {}",
                self.max_level()
            )));
        }
        let c = Cortege { parts: ids };
        let id = self.level(k).index.get(&c.parts).copied().ok_or_else(|| {
            Error::InvalidInput(format!("not a cortege: {}", self.cortege_name(&c)))
        })?;
        Ok((k, id))
    }

    /// Serializes a cortege as a list of vertex-name sequences.
    pub fn cortege_to_names(&self, c: &Cortege) -> Vec<Vec<String>> {
        c.parts
            .iter()
            .map(|&p| {
                self.paths[p]
                    .vertices()
                    .iter()
                    .map(|&v| self.graph.vertex_name(v).to_string())
                    .collect()
            })
            .collect()
    }

    pub fn cortege_id(&self, k: usize, c: &Cortege) -> Option<CortegeId> {
        self.level(k).index.get(&c.parts).copied()
    }
}

impl Level {
    pub fn count(&self) -> usize {
        self.corteges.len()
    }

    pub fn id_of(&self, c: &Cortege) -> Option<CortegeId> {
        self.index.get(&c.parts).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{branching_example, path_graph, Direction};

    fn sys(g: Digraph, max: usize) -> PathSystem {
        PathSystem::new(g, max, &Caps::default()).unwrap()
    }

    fn names_of(sys: &PathSystem, k: usize) -> Vec<String> {
        sys.level(k)
            .corteges
            .iter()
            .map(|c| sys.cortege_name(c))
            .collect()
    }

    #[test]
    fn example_two_corteges() {
        let s = sys(branching_example(), 2);
        let mut got = names_of(&s, 2);
        got.sort();
        let mut expected = vec![
            "(12, 23)",
            "(12, 234)",
            "(12, 234')",
            "(123, 34)",
            "(123, 34')",
            "(23, 34)",
            "(23, 34')",
        ];
        expected.sort_unstable();
        assert_eq!(got, expected);
    }

    #[test]
    fn level_one_is_paths() {
        let s = sys(branching_example(), 1);
        assert_eq!(s.level(1).count(), s.paths().len());
        assert_eq!(s.level(1).count(), 9);
    }

    #[test]
    fn chain_two_cortege() {
        let s = sys(path_graph(3), 2);
        assert_eq!(names_of(&s, 2), vec!["(12, 23)"]);
    }

    #[test]
    fn subcortege_sequence_d2() {
        let s = sys(branching_example(), 2);
        let (_, id) = s
            .cortege_from_names(&[
                vec!["1".into(), "2".into()],
                vec!["2".into(), "3".into()],
            ])
            .unwrap();
        let subs: Vec<String> = s.level(2).sub[id]
            .iter()
            .map(|&i| s.cortege_name(&s.level(1).corteges[i]))
            .collect();
        assert_eq!(subs, vec!["(23)", "(123)", "(12)"]);
    }

    #[test]
    fn subcortege_sequence_with_branch() {
        let s = sys(branching_example(), 2);
        let (_, id) = s
            .cortege_from_names(&[
                vec!["1".into(), "2".into()],
                vec!["2".into(), "3".into(), "4'".into()],
            ])
            .unwrap();
        let subs: Vec<String> = s.level(2).sub[id]
            .iter()
            .map(|&i| s.cortege_name(&s.level(1).corteges[i]))
            .collect();
        assert_eq!(subs, vec!["(234')", "(1234')", "(12)"]);
    }

    #[test]
    fn subcortege_sequence_d3() {
        let s = sys(path_graph(4), 3);
        let (_, id) = s
            .cortege_from_names(&[
                vec!["1".into(), "2".into()],
                vec!["2".into(), "3".into()],
                vec!["3".into(), "4".into()],
            ])
            .unwrap();
        let subs: Vec<String> = s.level(3).sub[id]
            .iter()
            .map(|&i| s.cortege_name(&s.level(2).corteges[i]))
            .collect();
        assert_eq!(
            subs,
            vec!["(23, 34)", "(123, 34)", "(12, 234)", "(12, 23)"]
        );
    }

    #[test]
    fn two_members_determine_the_cortege() {
        // Over both test graphs and levels 2..3: no two distinct corteges
        // share two members of their S-sequences.
        for g in [branching_example(), path_graph(5)] {
            let s = sys(g, 3);
            for k in 2..=3 {
                let level = s.level(k);
                for a in 0..level.count() {
                    for b in (a + 1)..level.count() {
                        let common = level.sub[a]
                            .iter()
                            .filter(|i| level.sub[b].contains(i))
                            .count();
                        assert!(
                            common <= 1,
                            "corteges {} and {} share {} members",
                            s.cortege_name(&level.corteges[a]),
                            s.cortege_name(&level.corteges[b]),
                            common
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cortege_cap_is_enforced() {
        let tight = Caps {
            max_corteges: 3,
            ..Caps::default()
        };
        assert!(matches!(
            PathSystem::new(branching_example(), 2, &tight),
            Err(crate::Error::CapExceeded(_))
        ));
    }

    #[test]
    fn route_types_are_bijective_on_chain() {
        let s = sys(path_graph(5), 3);
        for k in 1..=3 {
            let level = s.level(k);
            let mut types: Vec<ColorSet> = level
                .corteges
                .iter()
                .map(|c| s.route_type(0, c).unwrap())
                .collect();
            let count = types.len();
            types.sort();
            types.dedup();
            assert_eq!(types.len(), count);
            assert_eq!(count, binomial(5, k + 1));
            for (c, t) in level.corteges.iter().zip(&types) {
                let _ = c;
                assert_eq!(t.len(), k + 1);
            }
            // Round trip through cortege_of_route_type.
            for c in &level.corteges {
                let t = s.route_type(0, c).unwrap();
                assert_eq!(s.cortege_of_route_type(0, t, k).as_ref(), Some(c));
            }
        }
    }

    #[test]
    fn endpoint_types_in_example() {
        let s = sys(branching_example(), 2);
        let l = s.graph().topological_labeling(Direction::Forward);
        let (_, id) = s
            .cortege_from_names(&[
                vec!["1".into(), "2".into()],
                vec!["2".into(), "3".into()],
            ])
            .unwrap();
        let c = &s.level(2).corteges[id];
        assert_eq!(s.endpoint_type(c, &l).unwrap(), vec![1, 2, 3]);
        // Route-local: within route 1234 (route index 0).
        assert_eq!(s.route_type(0, c).unwrap().colors(), vec![1, 2, 3]);
        let (_, id) = s
            .cortege_from_names(&[
                vec!["1".into(), "2".into(), "3".into()],
                vec!["3".into(), "4".into()],
            ])
            .unwrap();
        let c = &s.level(2).corteges[id];
        assert_eq!(s.route_type(0, c).unwrap().colors(), vec![1, 3, 4]);
        // The route itself as a 1-cortege.
        let (_, id) = s
            .cortege_from_names(&[vec!["1".into(), "2".into(), "3".into(), "4".into()]])
            .unwrap();
        let c = &s.level(1).corteges[id];
        assert_eq!(s.route_type(0, c).unwrap().colors(), vec![1, 4]);
    }

    #[test]
    fn endpoint_type_rejects_non_monotone_labeling() {
        let s = sys(branching_example(), 2);
        let l = s.graph().topological_labeling(Direction::Reverse);
        let c = &s.level(2).corteges[0];
        assert!(s.endpoint_type(c, &l).is_err());
    }

    #[test]
    fn subtype_tuples_follow_lexicographically() {
        // T(s_{k+1}), .., T(s_1) increase lexicographically within a route.
        let s = sys(path_graph(5), 3);
        for k in 2..=3 {
            let level = s.level(k);
            for (i, _c) in level.corteges.iter().enumerate() {
                let tuples: Vec<Vec<u8>> = level.sub[i]
                    .iter()
                    .rev()
                    .map(|&j| {
                        s.route_type(0, &s.level(k - 1).corteges[j])
                            .unwrap()
                            .colors()
                    })
                    .collect();
                for w in tuples.windows(2) {
                    assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
                }
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
