//! Star-shaped plumbing graphs, their intersection lattice and canonical
//! cycle.
//!
//! Vertex weights are the self-intersections `E_v . E_v`: the central vertex
//! carries `b`, arm vertices carry `-b_ij` where `b_ij >= 2` are the entries
//! of the negative continued fraction of `alpha_i / omega_i`. Vertex 0 is the
//! center; arms follow in input order, each listed from the vertex adjacent
//! to the center outwards.

use std::fmt::Write as _;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{from_int, neg_continued_fraction, Rational};
use crate::error::{Error, Result};
use crate::linalg::{determinant, leading_minors, solve, IntMatrix};
use crate::seifert::SeifertData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    weights: Vec<BigInt>,
    edges: Vec<(usize, usize)>,
    arms: Vec<Range<usize>>,
}

impl PlumbingGraph {
    /// Builds a star from a central weight and arm weight lists.
    pub fn star(center: BigInt, arms: Vec<Vec<BigInt>>) -> Self {
        let mut weights = vec![center];
        let mut edges = Vec::new();
        let mut ranges = Vec::with_capacity(arms.len());
        for arm in arms {
            let start = weights.len();
            let mut prev = 0;
            for w in arm {
                let v = weights.len();
                weights.push(w);
                edges.push((prev, v));
                prev = v;
            }
            ranges.push(start..weights.len());
        }
        PlumbingGraph { weights, edges, arms: ranges }
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn center(&self) -> usize {
        0
    }

    /// Vertex index ranges of the arms, center side first.
    pub fn arms(&self) -> &[Range<usize>] {
        &self.arms
    }

    /// End vertex of each nonempty arm.
    pub fn arm_ends(&self) -> Vec<usize> {
        self.arms.iter().filter(|r| !r.is_empty()).map(|r| r.end - 1).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Graphviz rendering; vertex labels are self-intersections and the
    /// center is double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for (v, w) in self.weights.iter().enumerate() {
            let shape = if v == self.center() { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  v{v} [label=\"{w}\", shape={shape}];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn to_plumbing(s: &SeifertData) -> Result<PlumbingGraph> {
    let arms = s
        .pairs()
        .iter()
        .map(|(alpha, omega)| neg_continued_fraction(alpha, omega).map(|cf| cf.entries().iter().map(|b| -b).collect()))
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    Ok(PlumbingGraph::star(s.b().clone(), arms))
}

/// Intersection form of the graph, rejected unless negative definite.
pub fn intersection_matrix(g: &PlumbingGraph) -> Result<IntMatrix> {
    let m = raw_intersection_matrix(g);
    for (k, minor) in leading_minors(&m).into_iter().enumerate() {
        // (-1)^k D_k > 0 for every leading minor
        let ok = if k % 2 == 0 { minor.is_negative() } else { minor.is_positive() };
        if !ok {
            return Err(Error::NotNegativeDefinite { index: k + 1, minor });
        }
    }
    Ok(m)
}

fn raw_intersection_matrix(g: &PlumbingGraph) -> IntMatrix {
    let n = g.num_vertices();
    let mut m = vec![vec![BigInt::from(0); n]; n];
    for (v, w) in g.weights.iter().enumerate() {
        m[v][v] = w.clone();
    }
    for &(a, b) in &g.edges {
        m[a][b] = BigInt::from(1);
        m[b][a] = BigInt::from(1);
    }
    m
}

pub fn intersection_determinant(g: &PlumbingGraph) -> Result<BigInt> {
    Ok(determinant(&intersection_matrix(g)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCycle {
    pub coefficients: Vec<Rational>,
    pub k_squared: Rational,
}

/// Solves the adjunction equations `Z_K . E_v = E_v . E_v + 2`.
pub fn canonical_cycle(g: &PlumbingGraph) -> Result<CanonicalCycle> {
    let m = raw_intersection_matrix(g);
    let rhs: Vec<BigInt> = g.weights.iter().map(|w| w + 2).collect();
    let coefficients = solve(&m, &rhs)?;
    let k_squared = coefficients.iter().zip(&rhs).map(|(r, c)| r * from_int(c)).sum();
    Ok(CanonicalCycle { coefficients, k_squared })
}

/// `K^2 + #V` computed on the graph side.
pub fn k2_plus_numvert_from_graph(g: &PlumbingGraph) -> Result<Rational> {
    intersection_matrix(g)?;
    let cycle = canonical_cycle(g)?;
    Ok(cycle.k_squared + from_int(&BigInt::from(g.num_vertices())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::seifert::{d4, sigma_235, sigma_237};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn arm_weights(g: &PlumbingGraph) -> Vec<Vec<BigInt>> {
        g.arms().iter().map(|r| g.weights()[r.clone()].to_vec()).collect()
    }

    #[test]
    fn e8_graph() {
        let g = to_plumbing(&sigma_235()).unwrap();
        assert_eq!(g.num_vertices(), 8);
        assert_eq!(g.weights()[0], int(-2));
        assert_eq!(arm_weights(&g), vec![ints(&[-2]), ints(&[-2, -2]), ints(&[-2, -2, -2, -2])]);
        assert_eq!(g.degree(0), 3);
        let z = canonical_cycle(&g).unwrap();
        assert!(z.coefficients.iter().all(|r| r == &ratio(0, 1)));
        assert_eq!(z.k_squared, ratio(0, 1));
        assert_eq!(k2_plus_numvert_from_graph(&g).unwrap(), ratio(8, 1));
        assert_eq!(intersection_determinant(&g).unwrap().abs(), int(1));
    }

    #[test]
    fn sigma_237_graph() {
        let g = to_plumbing(&sigma_237()).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(arm_weights(&g), vec![ints(&[-2]), ints(&[-3]), ints(&[-7])]);
        let z = canonical_cycle(&g).unwrap();
        assert_eq!(z.coefficients, vec![ratio(2, 1), ratio(1, 1), ratio(1, 1), ratio(1, 1)]);
        assert_eq!(z.k_squared, ratio(-4, 1));
        assert_eq!(k2_plus_numvert_from_graph(&g).unwrap(), ratio(0, 1));
        assert_eq!(intersection_determinant(&g).unwrap().abs(), int(1));
    }

    #[test]
    fn d4_graph() {
        let g = to_plumbing(&d4()).unwrap();
        assert_eq!(arm_weights(&g), vec![ints(&[-2]); 3]);
        assert_eq!(canonical_cycle(&g).unwrap().k_squared, ratio(0, 1));
        assert_eq!(k2_plus_numvert_from_graph(&g).unwrap(), ratio(4, 1));
        assert_eq!(intersection_determinant(&g).unwrap().abs(), int(4));
    }

    #[test]
    fn single_vertex() {
        let g = PlumbingGraph::star(int(-2), vec![]);
        assert_eq!(intersection_matrix(&g).unwrap(), vec![ints(&[-2])]);
    }

    #[test]
    fn rejects_indefinite() {
        // central -1 with three -2 arms has e > 0
        let g = PlumbingGraph::star(int(-1), vec![ints(&[-2]); 3]);
        assert!(matches!(intersection_matrix(&g), Err(Error::NotNegativeDefinite { .. })));
        let g = PlumbingGraph::star(int(1), vec![]);
        assert!(matches!(intersection_matrix(&g), Err(Error::NotNegativeDefinite { index: 1, .. })));
    }

    #[test]
    fn adjunction_holds() {
        let s = crate::seifert::SeifertData::from_i64(-3, &[(5, 2), (7, 3), (4, 1), (9, 5)]).unwrap();
        let g = to_plumbing(&s).unwrap();
        let m = intersection_matrix(&g).unwrap();
        let z = canonical_cycle(&g).unwrap();
        for (v, row) in m.iter().enumerate() {
            let dot: Rational = row.iter().zip(&z.coefficients).map(|(a, r)| r * from_int(a)).sum();
            assert_eq!(dot, from_int(&(&g.weights()[v] + 2)));
        }
        assert_eq!(intersection_determinant(&g).unwrap().abs(), s.h_order().clone());
    }

    #[test]
    fn dot_output() {
        let dot = to_plumbing(&d4()).unwrap().to_dot();
        assert!(dot.starts_with("graph plumbing {\n  v0 [label=\"-2\", shape=doublecircle];"));
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("v0 -- v3;"));
    }
}
