//! The 3-colored graph of an orbit: one vertex per point, a `g`-colored edge
//! between a point and its image under `g`, a self-loop when the point is fixed.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fricke_action::Generator;
use crate::orbit_search::ExactOrbit;

/// DOT colors of the `x`, `y`, `z` edges.
pub const EDGE_COLORS: [&str; 3] = ["red", "green", "blue"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("color {color} is not an involution at vertex {vertex}")]
    NotInvolution { color: &'static str, vertex: usize },
    #[error("vertex {vertex} has {color}-partner {partner} out of range")]
    OutOfRange { color: &'static str, vertex: usize, partner: usize },
}

/// Per color, `partner[c][v]` is the `c`-neighbour of `v` (`v` itself for a loop).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    partner: [Vec<usize>; 3],
}

impl ColoredGraph {
    pub fn new(partner: [Vec<usize>; 3]) -> Result<Self, GraphError> {
        let n = partner[0].len();
        for (c, p) in partner.iter().enumerate() {
            let color = Generator::from_index(c).name();
            assert_eq!(p.len(), n, "all colors cover the same vertices");
            for (v, &u) in p.iter().enumerate() {
                if u >= n {
                    return Err(GraphError::OutOfRange { color, vertex: v, partner: u });
                }
                if p[u] != v {
                    return Err(GraphError::NotInvolution { color, vertex: v });
                }
            }
        }
        Ok(ColoredGraph { partner })
    }

    pub fn from_neighbors(nb: &[[usize; 3]]) -> Result<Self, GraphError> {
        Self::new(std::array::from_fn(|c| nb.iter().map(|row| row[c]).collect()))
    }

    pub fn len(&self) -> usize {
        self.partner[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn partner(&self, g: Generator, v: usize) -> usize {
        self.partner[g.index()][v]
    }

    pub fn is_loop(&self, g: Generator, v: usize) -> bool {
        self.partner(g, v) == v
    }

    pub fn self_loops(&self, g: Generator) -> usize {
        (0..self.len()).filter(|&v| self.is_loop(g, v)).count()
    }

    /// Two-ended edges of color `g` as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self, g: Generator) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|u| {
                let v = self.partner(g, u);
                (u < v).then_some((u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        Generator::ALL.iter().map(|&g| self.edges(g).len()).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.len());
        for g in Generator::ALL {
            for (u, v) in self.edges(g) {
                uf.union(u, v);
            }
        }
        (0..self.len()).all(|v| uf.find(v) == uf.find(0))
    }

    /// First rank of the loopless multigraph: `edges - vertices + components`.
    pub fn cycle_rank(&self) -> usize {
        let mut uf = UnionFind::new(self.len());
        let mut comps = self.len();
        for g in Generator::ALL {
            for (u, v) in self.edges(g) {
                if uf.union(u, v) {
                    comps -= 1;
                }
            }
        }
        self.edge_count() + comps - self.len()
    }

    /// A simple cycle through exactly one `g`-edge `(u, v)` exists iff `u` and
    /// `v` stay connected once all `g`-edges are removed. Returns such an edge.
    pub fn single_color_cycle(&self) -> Option<(Generator, usize, usize)> {
        for g in Generator::ALL {
            let mut uf = UnionFind::new(self.len());
            for h in Generator::ALL.into_iter().filter(|&h| h != g) {
                for (u, v) in self.edges(h) {
                    uf.union(u, v);
                }
            }
            if let Some((u, v)) = self.edges(g).into_iter().find(|&(u, v)| uf.find(u) == uf.find(v)) {
                return Some((g, u, v));
            }
        }
        None
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

pub fn build_graph(orbit: &ExactOrbit) -> Result<ColoredGraph, GraphError> {
    ColoredGraph::from_neighbors(&orbit.neighbors)
}

/// 1 if some odd closed walk exists (a self-loop counts), else 2: the even-word
/// subgroup then has two orbits, the parity classes of a 2-coloring.
pub fn lambda_orbit_count(g: &ColoredGraph) -> usize {
    let n = g.len();
    let mut side = vec![u8::MAX; n];
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for c in Generator::ALL {
                let u = g.partner(c, v);
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    stack.push(u);
                } else if side[u] == side[v] {
                    return 1;
                }
            }
        }
    }
    2
}

/// Vertices fixed by at least two generators.
pub fn bad_points(g: &ColoredGraph) -> Vec<usize> {
    (0..g.len())
        .filter(|&v| Generator::ALL.iter().filter(|&&c| g.is_loop(c, v)).count() >= 2)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfLoops {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphStats {
    pub self_loops: SelfLoops,
    pub bad_points: usize,
    pub lambda_orbits: usize,
    pub cycles: usize,
}

pub fn stats(g: &ColoredGraph) -> GraphStats {
    GraphStats {
        self_loops: SelfLoops {
            x: g.self_loops(Generator::X),
            y: g.self_loops(Generator::Y),
            z: g.self_loops(Generator::Z),
        },
        bad_points: bad_points(g).len(),
        lambda_orbits: lambda_orbit_count(g),
        cycles: g.cycle_rank(),
    }
}

/// DOT text; vertex `i` is node `i + 1` labelled by `labels[i]`.
pub fn export_dot(g: &ColoredGraph, name: &str, labels: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..g.len() {
        let label = labels.get(v).map_or_else(|| (v + 1).to_string(), |l| escape(l));
        writeln!(out, "  {} [label=\"{}\"];", v + 1, label).unwrap();
    }
    for c in Generator::ALL {
        let color = EDGE_COLORS[c.index()];
        for v in 0..g.len() {
            let u = g.partner(c, v);
            if v <= u {
                writeln!(out, "  {} -- {} [color={}, label=\"{}\"];", v + 1, u + 1, color, c.name()).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Example orbit with `omega = (0, 1, 1)`, vertices 0..5 for points 1..5.
    fn example_graph() -> ColoredGraph {
        ColoredGraph::new([vec![1, 0, 2, 3, 4], vec![0, 4, 3, 2, 1], vec![0, 2, 1, 4, 3]]).unwrap()
    }

    #[test]
    fn example_stats() {
        let g = example_graph();
        assert_eq!(bad_points(&g), vec![0]);
        assert_eq!(lambda_orbit_count(&g), 1);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.self_loops(Generator::X), 3);
        assert_eq!(g.cycle_rank(), 1);
        assert!(g.is_connected());
        assert_eq!(g.single_color_cycle(), None);
    }

    fn family_graph(seed: (i64, i64, i64), w: [i64; 3]) -> ColoredGraph {
        use crate::fricke_action::{omega4_of, Omega, Point3, POINT_CAP};
        use crate::orbit_search::close_exact;
        use crate::trig_field::CosSum;
        let seed = Point3::from_ints(seed.0, seed.1, seed.2);
        let w = w.map(CosSum::from_int);
        let w4 = omega4_of(&seed, &w);
        build_graph(&close_exact(&seed, &Omega::new(w, w4), POINT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn type_ii_and_iv_shapes() {
        let g = family_graph((1, 0, 0), [3, 0, 0]);
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges(Generator::X), vec![(0, 1)]);
        assert_eq!(bad_points(&g), vec![0, 1]);
        // (1,1,1) and its three neighbours (-1,1,1), (1,-1,1), (1,1,-1)
        let g = family_graph((1, 1, 1), [1, 1, 1]);
        assert_eq!(g.len(), 4);
        assert_eq!(bad_points(&g), vec![1, 2, 3]);
        assert_eq!(lambda_orbit_count(&g), 1);
    }

    #[test]
    fn bipartite_pair_splits() {
        let g = ColoredGraph::new([vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(lambda_orbit_count(&g), 2);
        let g = ColoredGraph::new([vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(lambda_orbit_count(&g), 1);
    }

    #[test]
    fn single_point() {
        let g = ColoredGraph::new([vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(bad_points(&g), vec![0]);
        let dot = export_dot(&g, "p", &["(0,0,0)".into()]);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("1 -- 1 [color=red"));
    }

    #[test]
    fn rejects_non_involution() {
        let r = ColoredGraph::new([vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2]]);
        assert!(matches!(r, Err(GraphError::NotInvolution { color: "x", .. })));
    }

    #[test]
    fn finds_single_color_cycle() {
        // x: 0-1, y: 1-2, z: 2-0 form a triangle with one edge of each color.
        let g = ColoredGraph::new([vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
        assert_eq!(g.single_color_cycle(), Some((Generator::X, 0, 1)));
    }
}
