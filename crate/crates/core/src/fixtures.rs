//! Bundled example inputs, compiled into the library. The same files live in
//! `fixtures/` for use with the command-line tool.

use crate::constructors::PartitionedBasis;
use crate::io;
use crate::polytope::VectorConfiguration;
use crate::spectral::WeightedGraph;

pub const RUNNING_EXAMPLE: &str = include_str!("../fixtures/running_example.json");
pub const RUNNING_EXAMPLE_DESIGN: &str = include_str!("../fixtures/running_example_design.json");
pub const SIX_VERTEX: &str = include_str!("../fixtures/six_vertex.json");
pub const BARBELL3: &str = include_str!("../fixtures/barbell3.json");
pub const BARBELL4: &str = include_str!("../fixtures/barbell4.json");
pub const SIXTEEN_CELL: &str = include_str!("../fixtures/sixteen_cell.json");
pub const SQUARE: &str = include_str!("../fixtures/square.json");
pub const PENTAGON: &str = include_str!("../fixtures/pentagon.json");
pub const SQUARE_PYRAMID: &str = include_str!("../fixtures/square_pyramid.json");
pub const TRIANGULAR_PRISM: &str = include_str!("../fixtures/triangular_prism.json");
pub const FOUR_VERTEX_BASIS: &str = include_str!("../fixtures/four_vertex_basis.json");
pub const SIXTEEN_CELL_BASIS: &str = include_str!("../fixtures/sixteen_cell_basis.json");
pub const SIXTEEN_CELL_LAMBDA: &str = include_str!("../fixtures/sixteen_cell_lambda.json");

fn graph(text: &str) -> WeightedGraph {
    io::parse_graph(text).expect("bundled graph fixture is valid")
}

fn polytope(text: &str) -> VectorConfiguration {
    io::parse_polytope(text).expect("bundled polytope fixture is valid")
}

fn basis(text: &str) -> PartitionedBasis {
    io::parse_basis(text).expect("bundled basis fixture is valid")
}

/// Nine vertices in three layers; edge weights `1/deg(i) + 1/deg(j)`.
pub fn running_example() -> WeightedGraph {
    graph(RUNNING_EXAMPLE)
}

/// A 4-design on the running example, given to four decimals.
pub fn running_example_design() -> Vec<f64> {
    io::parse_weights(RUNNING_EXAMPLE_DESIGN).expect("bundled weights fixture is valid")
}

/// Unweighted graph on six vertices where vertex 4 is adjacent to all others
/// and vertex 1 is a leaf.
pub fn six_vertex() -> WeightedGraph {
    graph(SIX_VERTEX)
}

pub fn barbell3() -> WeightedGraph {
    graph(BARBELL3)
}

pub fn barbell4() -> WeightedGraph {
    graph(BARBELL4)
}

/// The cross-polytope in `R^4` with vertices `±e_i / sqrt(2)`, ordered
/// `e_1..e_4, -e_1..-e_4`.
pub fn sixteen_cell() -> VectorConfiguration {
    polytope(SIXTEEN_CELL)
}

/// Centered unit square, vertices in cyclic order.
pub fn square() -> VectorConfiguration {
    polytope(SQUARE)
}

/// Regular pentagon on the unit circle, vertices in cyclic order.
pub fn pentagon() -> VectorConfiguration {
    polytope(PENTAGON)
}

/// Square base `1..4` and apex `5`.
pub fn square_pyramid() -> VectorConfiguration {
    polytope(SQUARE_PYRAMID)
}

/// Triangles `1,2,3` and `4,5,6`, with `i` above `i - 3`.
pub fn triangular_prism() -> VectorConfiguration {
    polytope(TRIANGULAR_PRISM)
}

/// Orthonormal basis of `R^4` split as `{1} | {2} | {3, 4}`.
pub fn four_vertex_basis() -> PartitionedBasis {
    basis(FOUR_VERTEX_BASIS)
}

/// Constant vector, the 16-cell coordinates and a Gale dual, split `1 | 4 | 3`.
pub fn sixteen_cell_basis() -> PartitionedBasis {
    basis(SIXTEEN_CELL_BASIS)
}

/// Eigenvalues `6` (x4) and `8` (x3) placing the 16-cell basis on the
/// boundary of the positivity cone.
pub fn sixteen_cell_lambda() -> Vec<f64> {
    io::parse_lambda(SIXTEEN_CELL_LAMBDA).expect("bundled lambda fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        assert_eq!(running_example().n(), 9);
        assert_eq!(running_example_design().len(), 9);
        assert_eq!(six_vertex().edges().len(), 9);
        assert_eq!(barbell3().n(), 6);
        assert_eq!(barbell4().edges().len(), 13);
        assert_eq!(sixteen_cell().len(), 8);
        assert_eq!(square().len(), 4);
        assert_eq!(pentagon().len(), 5);
        assert_eq!(square_pyramid().dim(), 3);
        assert_eq!(triangular_prism().len(), 6);
        assert_eq!(four_vertex_basis().parts().len(), 3);
        assert_eq!(sixteen_cell_basis().parts().len(), 3);
        assert_eq!(sixteen_cell_lambda(), vec![6.0, 6.0, 6.0, 6.0, 8.0, 8.0, 8.0]);
    }

    #[test]
    fn running_example_weights_follow_degrees() {
        let g = running_example();
        let mut deg = vec![0usize; g.n()];
        for e in g.edges() {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        for e in g.edges() {
            let w = 1.0 / deg[e.i] as f64 + 1.0 / deg[e.j] as f64;
            assert!((e.w - w).abs() < 1e-15);
        }
    }
}
