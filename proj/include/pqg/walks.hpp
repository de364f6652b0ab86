#pragma once

#include <map>
#include <string>
#include <vector>

#include "pqg/grading.hpp"
#include "pqg/report.hpp"
#include "pqg/scalar.hpp"

namespace pqg {

struct WalkEdge {
    int id = 0;  // equals the position in ReciprocalWalk::edges
    int src = 0, tgt = 0;
    Scalar weight;
    int sign = 1;
    int bar = 0;
    std::string color;
};

// Finite window of a reciprocal random walk. Vertices are indexed 0..n-1 and carry labels.
struct ReciprocalWalk {
    std::vector<std::string> vertices;
    std::vector<bool> interior;
    std::vector<WalkEdge> edges;
    Scalar t;

    int vertex(const std::string& label) const;
    std::vector<int> out_edges(int v) const;
    // H with delta_e in H(s(e), t(e)); inside a block edges are ordered by id.
    BigradedSpace space() const;
    size_t position(int e) const;
    // Unit space C^(vertices): one dimension on each diagonal block.
    BigradedSpace unit_space() const;
};

Report validate_walk(const ReciprocalWalk& w);

// Podles family on the integer window [lo, hi]; x must be rational with |q|^x in the tower.
ReciprocalWalk podles_walk(const Scalar& q, const Scalar& x, long lo, long hi);
// Closed-form Podles weight w(k, l) for |k - l| = 1, valid for every integer k.
Scalar podles_weight(const Scalar& q, const Scalar& x, long k, long l);
// One vertex with two loops e, e-bar of weight 1 and signs +1, -1; t = -2.
ReciprocalWalk one_vertex_walk();

// Weight and sign equality of a with b under the vertex translation k -> k + shift of integer labels.
Report translation_report(const ReciprocalWalk& a, const ReciprocalWalk& b, long shift);

// R delta_v = sum_{s(e)=v} sgn(e) sqrt(w(e)) delta_e (x) delta_e-bar, from the unit space into H (x) H.
BlockMap build_r_map(const ReciprocalWalk& w);
// R*R = |t| and (R* (x) 1)(1 (x) R) = sgn(t) on interior blocks.
Report verify_conjugate_equations(const ReciprocalWalk& w, const BlockMap& r);

struct ColoredWalk {
    ReciprocalWalk walk;
    std::vector<std::string> colors;
    std::map<std::string, std::string> color_bar;
    std::map<std::pair<std::string, int>, int> edge_of;  // (a, v) -> e_a(v)
    std::map<std::pair<std::string, int>, int> action;   // (a, v) -> av
    std::map<std::pair<std::string, int>, Scalar> gamma;  // (a, v) -> sgn_a(v) sqrt(w_a(v))
    Report report;
};
// Colors are read from WalkEdge::color. Throws "unknown-color" for an edge outside the color set.
ColoredWalk color_walk(const ReciprocalWalk& w, const std::vector<std::string>& colors,
                       const std::map<std::string, std::string>& color_bar);
// Colors + on (k, k+1) and - on (k+1, k).
ColoredWalk podles_coloring(const ReciprocalWalk& w);

json walk_to_json(const ReciprocalWalk& w);
ReciprocalWalk walk_from_json(const json& j);

}  // namespace pqg
