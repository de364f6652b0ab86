#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pqg/linalg.hpp"

namespace pqg {

// (k l; m n): upper row (k, l), lower row (m, n).
struct Square {
    int k = 0, l = 0, m = 0, n = 0;
    auto operator<=>(const Square&) const = default;
    bool operator==(const Square&) const = default;
    std::string str() const;
};

enum class Direction { horizontal, vertical };

// Horizontal: (k l; m n).(l p; n q) = (k p; m q). Vertical: (k l; m n)*(m n; r s) = (k l; r s).
std::optional<Square> compose_squares(const Square& a, const Square& b, Direction d);
inline Square circ(const Square& s) { return {s.l, s.k, s.n, s.m}; }
inline Square bullet(const Square& s) { return {s.m, s.n, s.k, s.l}; }
inline Square circ_bullet(const Square& s) { return {s.n, s.m, s.l, s.k}; }

using Pair = std::pair<int, int>;

struct BigradedSpace {
    std::vector<int> objects;
    std::map<Pair, size_t> dims;  // only nonzero blocks are stored

    size_t dim(int k, int l) const;
    size_t total() const;
    void set(int k, int l, size_t d);
};

// Block (k, m) is the direct sum over ascending l of V_kl (x) W_lm, each summand row-major.
BigradedSpace balanced_tensor(const BigradedSpace& v, const BigradedSpace& w);
// Offset of the summand V_kl (x) W_lm inside block (k, m) of the balanced tensor product.
size_t balanced_offset(const BigradedSpace& v, const BigradedSpace& w, int k, int l, int m);

struct BlockMap {
    std::map<Pair, Mat> blocks;
};

// f o g blockwise; a block missing on either side is zero.
BlockMap compose_maps(const BlockMap& f, const BlockMap& g);
// s (x) t on balanced tensor products, for grade-preserving s: A -> A2 and t: B -> B2.
BlockMap tensor_maps(const BlockMap& s, const BlockMap& t, const BigradedSpace& a, const BigradedSpace& a2,
                     const BigradedSpace& b, const BigradedSpace& b2);
// Permutation (A (x) B) (x) C -> A (x) (B (x) C).
BlockMap associator(const BigradedSpace& a, const BigradedSpace& b, const BigradedSpace& c);

// Support pattern of (k, l) -> value over a finite window or an infinite template on Z.
struct SupportTemplate {
    enum class Kind { finite, band, fixed_columns, full };
    Kind kind = Kind::finite;
    std::set<Pair> support;   // finite kind
    std::set<long> offsets;   // band kind: l - k in offsets
    std::set<long> columns;   // fixed_columns kind: every row hits these columns
};

bool check_rcf(const SupportTemplate& t);

}  // namespace pqg
