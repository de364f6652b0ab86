#include "pqg/grading.hpp"

namespace pqg {

std::string Square::str() const {
    return std::to_string(k) + "," + std::to_string(l) + ";" + std::to_string(m) + "," +
           std::to_string(n);
}

std::optional<Square> compose_squares(const Square& a, const Square& b, Direction d) {
    if (d == Direction::horizontal) {
        if (a.l != b.k || a.n != b.m) return std::nullopt;
        return Square{a.k, b.l, a.m, b.n};
    }
    if (a.m != b.k || a.n != b.l) return std::nullopt;
    return Square{a.k, a.l, b.m, b.n};
}

size_t BigradedSpace::dim(int k, int l) const {
    auto it = dims.find({k, l});
    return it == dims.end() ? 0 : it->second;
}

size_t BigradedSpace::total() const {
    size_t t = 0;
    for (auto& [kl, d] : dims) t += d;
    return t;
}

void BigradedSpace::set(int k, int l, size_t d) {
    if (d)
        dims[{k, l}] = d;
    else
        dims.erase({k, l});
}

BigradedSpace balanced_tensor(const BigradedSpace& v, const BigradedSpace& w) {
    if (v.objects != w.objects) throw Error("object-set", "balanced tensor of spaces over different object sets");
    BigradedSpace out;
    out.objects = v.objects;
    for (auto& [kl, dv] : v.dims)
        for (auto& [lm, dw] : w.dims)
            if (kl.second == lm.first) out.dims[{kl.first, lm.second}] += dv * dw;
    return out;
}

size_t balanced_offset(const BigradedSpace& v, const BigradedSpace& w, int k, int l, int m) {
    size_t off = 0;
    for (int x : v.objects) {
        if (x == l) return off;
        off += v.dim(k, x) * w.dim(x, m);
    }
    throw Error("object-set", "object not in the space");
}

namespace {

Mat block_or_zero(const BlockMap& t, int k, int l, size_t rows, size_t cols) {
    auto it = t.blocks.find({k, l});
    if (it == t.blocks.end()) return Mat(rows, cols);
    return it->second;
}

}  // namespace

BlockMap compose_maps(const BlockMap& f, const BlockMap& g) {
    BlockMap out;
    for (auto& [kl, gm] : g.blocks) {
        auto it = f.blocks.find(kl);
        if (it != f.blocks.end()) out.blocks[kl] = it->second * gm;
    }
    return out;
}

// s (x) t on balanced tensor products, for grade-preserving s: A -> A', t: B -> B'.
BlockMap tensor_maps(const BlockMap& s, const BlockMap& t, const BigradedSpace& a, const BigradedSpace& a2,
                   const BigradedSpace& b, const BigradedSpace& b2) {
    BigradedSpace in = balanced_tensor(a, b), out = balanced_tensor(a2, b2);
    BlockMap r;
    std::set<Pair> keys;
    for (auto& [km, dm] : in.dims) keys.insert(km);
    for (auto& [km, dm] : out.dims) keys.insert(km);
    for (auto& km : keys) {
        auto [k, m] = km;
        Mat blk(out.dim(k, m), in.dim(k, m));
        for (int l : a.objects) {
            size_t ai = a.dim(k, l), ao = a2.dim(k, l), bi = b.dim(l, m), bo = b2.dim(l, m);
            if (ai * bi == 0 || ao * bo == 0) continue;
            Mat kr = kron(block_or_zero(s, k, l, ao, ai), block_or_zero(t, l, m, bo, bi));
            size_t r0 = balanced_offset(a2, b2, k, l, m), c0 = balanced_offset(a, b, k, l, m);
            for (size_t i = 0; i < kr.rows(); ++i)
                for (size_t j = 0; j < kr.cols(); ++j)
                    if (!kr(i, j).is_zero()) blk(r0 + i, c0 + j) = kr(i, j);
        }
        r.blocks[km] = blk;
    }
    return r;
}

// (A (x) B) (x) C -> A (x) (B (x) C)
BlockMap associator(const BigradedSpace& a, const BigradedSpace& b, const BigradedSpace& c) {
    BigradedSpace ab = balanced_tensor(a, b), bc = balanced_tensor(b, c);
    BigradedSpace in = balanced_tensor(ab, c);
    BlockMap r;
    for (auto& [km, dim] : in.dims) {
        auto [k, m] = km;
        Mat blk(dim, dim);
        for (int l : a.objects)
            for (int n : a.objects) {
                size_t da = a.dim(k, l), db = b.dim(l, n), dc = c.dim(n, m);
                if (da * db * dc == 0) continue;
                size_t in0 = balanced_offset(ab, c, k, n, m), ab0 = balanced_offset(a, b, k, l, n);
                size_t out0 = balanced_offset(a, bc, k, l, m), bc0 = balanced_offset(b, c, l, n, m);
                size_t dbc = bc.dim(l, m);
                for (size_t i = 0; i < da; ++i)
                    for (size_t j = 0; j < db; ++j)
                        for (size_t t = 0; t < dc; ++t) {
                            size_t src = in0 + (ab0 + i * db + j) * dc + t;
                            size_t dst = out0 + i * dbc + bc0 + j * dc + t;
                            blk(dst, src) = Scalar(1);
                        }
            }
        r.blocks[km] = blk;
    }
    return r;
}

bool check_rcf(const SupportTemplate& t) {
    switch (t.kind) {
    case SupportTemplate::Kind::finite:
    case SupportTemplate::Kind::band:
        return true;
    case SupportTemplate::Kind::fixed_columns:
        // each fixed column is hit by infinitely many rows
        return t.columns.empty();
    case SupportTemplate::Kind::full:
        return false;
    }
    return false;
}

}  // namespace pqg
