#ifndef CWKIRCH_CORPUS_HPP
#define CWKIRCH_CORPUS_HPP

// The bundled example complexes. Orientation conventions live here (and in
// the exported corpus files), not in the algorithms.

#include <array>
#include <string>
#include <vector>

#include "cwkirch/chain_complex.hpp"

namespace cwk::corpus {

CellComplex segment();       // two vertices, one edge
CellComplex circle();        // one vertex, one loop
CellComplex theta();         // two vertices, three parallel edges v0 -> v1
CellComplex k4();            // complete graph on four vertices
CellComplex rp2_min();       // one cell per degree, D_2 = [2]
CellComplex rp2_double();    // one vertex, one loop, two 2-cells each of degree 2
CellComplex torus_min();     // one vertex, two loops, one 2-cell with zero boundary
CellComplex moore(int n);    // one vertex, one loop, a 2-cell of degree n
CellComplex rp3_min();       // one cell per degree up to 3: D_2 = [2], D_3 = [0]
CellComplex rp2_six();       // six-vertex triangulated projective plane (10 triangles)
CellComplex torus_seven();   // seven-vertex triangulated torus (14 triangles)

/// Oriented simplicial complex of dimension 2 from its triangles; vertices
/// 0..n-1, edges and triangles ordered lexicographically and oriented by
/// increasing vertex order.
CellComplex simplicial_2d(Index vertex_count, const std::vector<std::array<Index, 3>>& triangles,
                          std::string name);

/// Every bundled complex, sorted by name.
std::vector<CellComplex> all();

}  // namespace cwk::corpus

#endif  // CWKIRCH_CORPUS_HPP
