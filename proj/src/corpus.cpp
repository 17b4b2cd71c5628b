#include "cwkirch/corpus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

namespace cwk::corpus {

namespace {

IntMatrix mat(Index rows, Index cols, std::initializer_list<long> entries)
{
    IntMatrix m(rows, cols);
    auto it = entries.begin();
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = Integer(*it++);
    return m;
}

// One vertex, one loop and a single 2-cell whose boundary wraps the loop n times.
CellComplex one_cell_per_degree(Index n, std::string name)
{
    return CellComplex({1, 1, 1}, {mat(1, 1, {0}), mat(1, 1, {n})}, {}, {{"v"}, {"e"}, {"f"}}, std::move(name));
}

}  // namespace

CellComplex segment()
{
    return CellComplex({2, 1}, {mat(2, 1, {-1, 1})}, {}, {{"v0", "v1"}, {"e"}}, "segment");
}

CellComplex circle() { return CellComplex({1, 1}, {mat(1, 1, {0})}, {}, {{"v"}, {"e"}}, "circle"); }

CellComplex theta()
{
    return CellComplex({2, 3}, {mat(2, 3, {-1, -1, -1, 1, 1, 1})}, {}, {{"v0", "v1"}, {"e1", "e2", "e3"}},
                       "theta");
}

CellComplex k4()
{
    // Edges ij with i < j in lexicographic order, oriented i -> j.
    const std::array<std::pair<Index, Index>, 6> edges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    IntMatrix d1 = IntMatrix::Zero(4, 6);
    std::vector<std::string> en;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        d1(edges[e].first, static_cast<Index>(e)) = -1;
        d1(edges[e].second, static_cast<Index>(e)) = 1;
        en.push_back("e" + std::to_string(edges[e].first) + std::to_string(edges[e].second));
    }
    return CellComplex({4, 6}, {d1}, {}, {{"v0", "v1", "v2", "v3"}, en}, "k4");
}

CellComplex rp2_min() { return one_cell_per_degree(2, "rp2_min"); }

CellComplex rp2_double()
{
    return CellComplex({1, 1, 2}, {mat(1, 1, {0}), mat(1, 2, {2, 2})}, {}, {{"v"}, {"e"}, {"b1", "b2"}},
                       "rp2_double");
}

CellComplex torus_min()
{
    return CellComplex({1, 2, 1}, {mat(1, 2, {0, 0}), mat(2, 1, {0, 0})}, {}, {{"v"}, {"a", "b"}, {"f"}},
                       "torus_min");
}

CellComplex moore(int n) { return one_cell_per_degree(n, "moore_" + std::to_string(n)); }

CellComplex rp3_min()
{
    return CellComplex({1, 1, 1, 1}, {mat(1, 1, {0}), mat(1, 1, {2}), mat(1, 1, {0})}, {},
                       {{"v"}, {"e"}, {"f"}, {"s"}}, "rp3_min");
}

CellComplex simplicial_2d(Index vertex_count, const std::vector<std::array<Index, 3>>& triangles,
                          std::string name)
{
    std::vector<std::array<Index, 3>> tris;
    for (auto t : triangles) {
        std::sort(t.begin(), t.end());
        tris.push_back(t);
    }
    std::sort(tris.begin(), tris.end());

    std::map<std::pair<Index, Index>, Index> edge_index;
    for (const auto& t : tris)
        for (auto e : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}})
            edge_index.emplace(e, 0);
    Index next = 0;
    std::vector<std::string> edge_names;
    for (auto& [e, idx] : edge_index) {
        idx = next++;
        edge_names.push_back(std::to_string(e.first) + std::to_string(e.second));
    }

    IntMatrix d1 = IntMatrix::Zero(vertex_count, next);
    for (const auto& [e, idx] : edge_index) {
        d1(e.first, idx) = -1;
        d1(e.second, idx) = 1;
    }
    IntMatrix d2 = IntMatrix::Zero(next, static_cast<Index>(tris.size()));
    std::vector<std::string> tri_names;
    for (std::size_t f = 0; f < tris.size(); ++f) {
        const auto& t = tris[f];
        const Index col = static_cast<Index>(f);
        // d[a,b,c] = [b,c] - [a,c] + [a,b]
        d2(edge_index.at({t[1], t[2]}), col) += 1;
        d2(edge_index.at({t[0], t[2]}), col) -= 1;
        d2(edge_index.at({t[0], t[1]}), col) += 1;
        tri_names.push_back(std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]));
    }
    std::vector<std::string> vnames;
    for (Index v = 0; v < vertex_count; ++v)
        vnames.push_back("v" + std::to_string(v));
    return CellComplex({vertex_count, next, static_cast<Index>(tris.size())}, {d1, d2}, {},
                       {vnames, edge_names, tri_names}, std::move(name));
}

CellComplex rp2_six()
{
    // Hemi-icosahedron.
    return simplicial_2d(6,
                         {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                          {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}},
                         "rp2_six");
}

CellComplex torus_seven()
{
    // Moebius-Csaszar torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
    std::vector<std::array<Index, 3>> tris;
    for (Index i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return simplicial_2d(7, tris, "torus_seven");
}

std::vector<CellComplex> all()
{
    std::vector<CellComplex> v{circle(),  k4(),       moore(2),   moore(3),  moore(5),     rp2_double(),
                               rp2_min(), rp2_six(),  rp3_min(),  segment(), theta(),      torus_min(),
                               torus_seven()};
    std::sort(v.begin(), v.end(), [](const CellComplex& a, const CellComplex& b) { return a.name() < b.name(); });
    return v;
}

}  // namespace cwk::corpus
