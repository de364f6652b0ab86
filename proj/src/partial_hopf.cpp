#include "pqg/partial_hopf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pqg/error.hpp"

namespace pqg {

size_t PartialHopfData::dim(const Square& k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
}

size_t PartialHopfData::total_dim() const {
    size_t t = 0;
    for (auto& [k, d] : dims) t += d;
    return t;
}

int PartialHopfData::deg(const Square& k, size_t i) const {
    auto it = degree.find(k);
    if (it == degree.end() || i >= it->second.size()) return 0;
    return it->second[i];
}

std::string PartialHopfData::key(const Square& s) const {
    auto lab = [&](int o) {
        return o >= 0 && o < num_objects() ? labels[static_cast<size_t>(o)] : std::to_string(o);
    };
    return lab(s.k) + "," + lab(s.l) + ";" + lab(s.m) + "," + lab(s.n);
}

int PartialHopfData::object(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw Error("unknown-object", "unknown object label '" + label + "'");
}

Square PartialHopfData::parse_key(const std::string& s) const {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw Error("parse", "block key needs 'k,l;m,n': " + s);
    auto half = [&](const std::string& h) {
        auto c = h.find(',');
        if (c == std::string::npos) throw Error("parse", "block key needs 'k,l;m,n': " + s);
        return std::pair{object(h.substr(0, c)), object(h.substr(c + 1))};
    };
    auto [k, l] = half(s.substr(0, semi));
    auto [m, n] = half(s.substr(semi + 1));
    return {k, l, m, n};
}

bool PartialHopfData::touches_boundary(std::initializer_list<int> objs) const {
    if (boundary.empty()) return false;
    for (int o : objs)
        if (boundary.count(o)) return true;
    return false;
}

Elem basis_elem(const PartialHopfData& d, const Square& k, size_t i) {
    Vec v(d.dim(k));
    if (i >= v.size()) throw Error("range", "basis index out of range in block " + d.key(k));
    v[i] = Scalar(1);
    return {{k, v}};
}

Elem unit_elem(const PartialHopfData& d, int k, int m) {
    auto it = d.unit.find({k, m});
    if (it == d.unit.end() || vec_zero(it->second)) return {};
    return {{Square{k, k, m, m}, it->second}};
}

Elem lambda_elem(const PartialHopfData& d, int p) {
    Elem out;
    for (int l = 0; l < d.num_objects(); ++l) out = elem_add(out, unit_elem(d, p, l));
    return out;
}

Elem rho_elem(const PartialHopfData& d, int p) {
    Elem out;
    for (int k = 0; k < d.num_objects(); ++k) out = elem_add(out, unit_elem(d, k, p));
    return out;
}

bool elem_zero(const Elem& a) {
    for (auto& [k, v] : a)
        if (!vec_zero(v)) return false;
    return true;
}

bool elem_equal(const Elem& a, const Elem& b) {
    for (auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end()) {
            if (!vec_zero(v)) return false;
        } else if (v.size() != it->second.size()) {
            return false;
        } else {
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] != it->second[i]) return false;
        }
    }
    for (auto& [k, v] : b)
        if (!a.count(k) && !vec_zero(v)) return false;
    return true;
}

Elem elem_add(const Elem& a, const Elem& b) {
    Elem out = a;
    for (auto& [k, v] : b) {
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, v);
        else
            it->second = vec_add(it->second, v);
    }
    return out;
}

Elem elem_scale(const Elem& a, const Scalar& s) {
    Elem out;
    for (auto& [k, v] : a) out.emplace(k, vec_scale(v, s));
    return out;
}

bool tensor_zero(const Tensor& t) {
    for (auto& [k, v] : t)
        if (!vec_zero(v)) return false;
    return true;
}

bool tensor_equal(const Tensor& a, const Tensor& b) {
    for (auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end()) {
            if (!vec_zero(v)) return false;
        } else {
            if (v.size() != it->second.size()) return false;
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] != it->second[i]) return false;
        }
    }
    for (auto& [k, v] : b)
        if (!a.count(k) && !vec_zero(v)) return false;
    return true;
}

Tensor tensor_add(const Tensor& a, const Tensor& b) {
    Tensor out = a;
    for (auto& [k, v] : b) {
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, v);
        else
            it->second = vec_add(it->second, v);
    }
    return out;
}

Tensor tensor_scale(const Tensor& a, const Scalar& s) {
    Tensor out;
    for (auto& [k, v] : a) out.emplace(k, vec_scale(v, s));
    return out;
}

namespace {

void accumulate(Vec& dst, const Vec& src, const Scalar& c) {
    if (dst.size() < src.size()) dst.resize(src.size());
    for (size_t i = 0; i < src.size(); ++i)
        if (!src[i].is_zero()) dst[i] += c * src[i];
}

Vec& slot(Elem& e, const Square& k, size_t n) {
    auto& v = e[k];
    if (v.size() < n) v.resize(n);
    return v;
}

Vec& slot(Tensor& t, const std::pair<Square, Square>& k, size_t n) {
    auto& v = t[k];
    if (v.size() < n) v.resize(n);
    return v;
}

}  // namespace

Tensor tensor_of(const PartialHopfData& d, const Elem& a, const Elem& b) {
    Tensor out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b) {
            size_t db = d.dim(kb);
            auto& dst = slot(out, {ka, kb}, d.dim(ka) * db);
            for (size_t i = 0; i < va.size(); ++i) {
                if (va[i].is_zero()) continue;
                for (size_t j = 0; j < vb.size(); ++j)
                    if (!vb[j].is_zero()) dst[i * db + j] += va[i] * vb[j];
            }
        }
    return out;
}

Mat mult_matrix(const PartialHopfData& d, const Square& k, const Square& l) {
    auto it = d.mult.find({k, l});
    if (it != d.mult.end()) return it->second;
    Square kl{k.k, l.l, k.m, l.n};
    return Mat(d.dim(kl), d.dim(k) * d.dim(l));
}

Vec multiply_basis(const PartialHopfData& d, const Square& k, size_t i, const Square& l, size_t j) {
    if (k.l != l.k || k.n != l.m) return {};
    if (d.max_degree >= 0 && d.deg(k, i) + d.deg(l, j) > d.max_degree)
        throw Error("truncated", "product exceeds the truncation degree");
    Square kl{k.k, l.l, k.m, l.n};
    size_t dkl = d.dim(kl);
    auto it = d.mult.find({k, l});
    if (it == d.mult.end() || dkl == 0) return Vec(dkl);
    return it->second.col(i * d.dim(l) + j);
}

Elem multiply(const PartialHopfData& d, const Elem& a, const Elem& b) {
    Elem out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b) {
            if (ka.l != kb.k || ka.n != kb.m) continue;
            Square kl{ka.k, kb.l, ka.m, kb.n};
            size_t dkl = d.dim(kl);
            for (size_t i = 0; i < va.size(); ++i) {
                if (va[i].is_zero()) continue;
                for (size_t j = 0; j < vb.size(); ++j) {
                    if (vb[j].is_zero()) continue;
                    Vec p = multiply_basis(d, ka, i, kb, j);
                    if (dkl == 0) continue;
                    accumulate(slot(out, kl, dkl), p, va[i] * vb[j]);
                }
            }
        }
    return out;
}

Mat comult_matrix(const PartialHopfData& d, const Square& k, int r, int s) {
    auto it = d.comult.find({k, r, s});
    if (it != d.comult.end()) return it->second;
    Square a{k.k, k.l, r, s}, b{r, s, k.m, k.n};
    return Mat(d.dim(a) * d.dim(b), d.dim(k));
}

Tensor comultiply(const PartialHopfData& d, const Elem& a, int r, int s) {
    Tensor out;
    for (auto& [k, v] : a) {
        if (vec_zero(v)) continue;
        auto it = d.comult.find({k, r, s});
        if (it == d.comult.end()) continue;
        Square left{k.k, k.l, r, s}, right{r, s, k.m, k.n};
        size_t n = d.dim(left) * d.dim(right);
        if (n == 0) continue;
        accumulate(slot(out, {left, right}, n), it->second.apply(v), Scalar(1));
    }
    return out;
}

Tensor comultiply_total(const PartialHopfData& d, const Elem& a) {
    Tensor out;
    for (int r = 0; r < d.num_objects(); ++r)
        for (int s = 0; s < d.num_objects(); ++s) out = tensor_add(out, comultiply(d, a, r, s));
    return out;
}

namespace {

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

}  // namespace

Scalar counit(const PartialHopfData& d, const Elem& a) {
    Scalar s;
    for (auto& [k, v] : a) {
        if (k.k != k.m || k.l != k.n) continue;
        auto it = d.counit.find(k);
        if (it != d.counit.end()) s += dot(it->second, v);
    }
    return s;
}

Scalar integral(const PartialHopfData& d, const Elem& a) {
    if (!d.integral) throw Error("missing-structure", "no integral");
    Scalar s;
    for (auto& [k, v] : a) {
        if (k.k != k.l || k.m != k.n) continue;
        auto it = d.integral->find(k);
        if (it != d.integral->end()) s += dot(it->second, v);
    }
    return s;
}

Elem antipode(const PartialHopfData& d, const Elem& a) {
    if (!d.antipode) throw Error("missing-structure", "no antipode");
    Elem out;
    for (auto& [k, v] : a) {
        if (vec_zero(v)) continue;
        auto it = d.antipode->find(k);
        if (it == d.antipode->end()) continue;
        Square t = circ_bullet(k);
        size_t n = d.dim(t);
        if (n == 0) continue;
        accumulate(slot(out, t, n), it->second.apply(v), Scalar(1));
    }
    return out;
}

Elem star(const PartialHopfData& d, const Elem& a) {
    if (!d.star) throw Error("missing-structure", "no star");
    Elem out;
    for (auto& [k, v] : a) {
        if (vec_zero(v)) continue;
        auto it = d.star->find(k);
        if (it == d.star->end()) continue;
        Square t = circ(k);
        size_t n = d.dim(t);
        if (n == 0) continue;
        Vec c(v.size());
        for (size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
        accumulate(slot(out, t, n), it->second.apply(c), Scalar(1));
    }
    return out;
}

Tensor tensor_multiply(const PartialHopfData& d, const Tensor& x, const Tensor& y) {
    Tensor out;
    for (auto& [kx, vx] : x)
        for (auto& [ky, vy] : y) {
            const auto& [a1, a2] = kx;
            const auto& [b1, b2] = ky;
            if (a1.l != b1.k || a1.n != b1.m || a2.l != b2.k || a2.n != b2.m) continue;
            Square p1{a1.k, b1.l, a1.m, b1.n}, p2{a2.k, b2.l, a2.m, b2.n};
            size_t dp1 = d.dim(p1), dp2 = d.dim(p2);
            if (dp1 * dp2 == 0) continue;
            size_t da2 = d.dim(a2), db2 = d.dim(b2);
            for (size_t ix = 0; ix < vx.size(); ++ix) {
                if (vx[ix].is_zero()) continue;
                for (size_t iy = 0; iy < vy.size(); ++iy) {
                    if (vy[iy].is_zero()) continue;
                    Vec p = multiply_basis(d, a1, ix / da2, b1, iy / db2);
                    Vec q = multiply_basis(d, a2, ix % da2, b2, iy % db2);
                    if (vec_zero(p) || vec_zero(q)) continue;
                    Scalar c = vx[ix] * vy[iy];
                    auto& dst = slot(out, {p1, p2}, dp1 * dp2);
                    for (size_t u = 0; u < dp1; ++u) {
                        if (p[u].is_zero()) continue;
                        Scalar cu = c * p[u];
                        for (size_t w = 0; w < dp2; ++w)
                            if (!q[w].is_zero()) dst[u * dp2 + w] += cu * q[w];
                    }
                }
            }
        }
    return out;
}

Elem contract(const PartialHopfData& d, const Tensor& t) {
    Elem out;
    for (auto& [k, v] : t) {
        const auto& [a, b] = k;
        if (a.l != b.k || a.n != b.m) continue;
        Square ab{a.k, b.l, a.m, b.n};
        size_t dab = d.dim(ab), db = d.dim(b);
        if (dab == 0) continue;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            accumulate(slot(out, ab, dab), multiply_basis(d, a, i / db, b, i % db), v[i]);
        }
    }
    return out;
}

Tensor tensor_flip(const PartialHopfData& d, const Tensor& t) {
    Tensor out;
    for (auto& [k, v] : t) {
        const auto& [a, b] = k;
        size_t da = d.dim(a), db = d.dim(b);
        auto& dst = slot(out, {b, a}, da * db);
        for (size_t i = 0; i < da; ++i)
            for (size_t j = 0; j < db; ++j) dst[j * da + i] += v[i * db + j];
    }
    return out;
}

Tensor tensor_apply(const PartialHopfData& d, const Tensor& t, int leg, const BlockFn& f) {
    Tensor out;
    for (auto& [k, v] : t) {
        const auto& [a, b] = k;
        size_t da = d.dim(a), db = d.dim(b);
        if (leg == 0) {
            for (size_t j = 0; j < db; ++j) {
                Vec x(da);
                for (size_t i = 0; i < da; ++i) x[i] = v[i * db + j];
                if (vec_zero(x)) continue;
                for (auto& [ka, w] : f(a, x)) {
                    size_t dk = d.dim(ka);
                    auto& dst = slot(out, {ka, b}, dk * db);
                    for (size_t i = 0; i < w.size(); ++i)
                        if (!w[i].is_zero()) dst[i * db + j] += w[i];
                }
            }
        } else {
            for (size_t i = 0; i < da; ++i) {
                Vec y(v.begin() + static_cast<long>(i * db), v.begin() + static_cast<long>((i + 1) * db));
                if (vec_zero(y)) continue;
                for (auto& [kb, w] : f(b, y)) {
                    size_t dk = d.dim(kb);
                    auto& dst = slot(out, {a, kb}, da * dk);
                    for (size_t j = 0; j < w.size(); ++j)
                        if (!w[j].is_zero()) dst[i * dk + j] += w[j];
                }
            }
        }
    }
    return out;
}

Elem leg_functional(const PartialHopfData& d, const Tensor& t, int leg,
                    const std::function<Scalar(const Elem&)>& f) {
    Elem out;
    for (auto& [k, v] : t) {
        const auto& [a, b] = k;
        size_t da = d.dim(a), db = d.dim(b);
        if (leg == 1) {
            for (size_t j = 0; j < db; ++j) {
                Scalar c = f(basis_elem(d, b, j));
                if (c.is_zero()) continue;
                auto& dst = slot(out, a, da);
                for (size_t i = 0; i < da; ++i)
                    if (!v[i * db + j].is_zero()) dst[i] += c * v[i * db + j];
            }
        } else {
            for (size_t i = 0; i < da; ++i) {
                Scalar c = f(basis_elem(d, a, i));
                if (c.is_zero()) continue;
                auto& dst = slot(out, b, db);
                for (size_t j = 0; j < db; ++j)
                    if (!v[i * db + j].is_zero()) dst[j] += c * v[i * db + j];
            }
        }
    }
    return out;
}

Projections compute_projections(const PartialHopfData& d, const Elem& a) {
    Projections p;
    for (int q = 0; q < d.num_objects(); ++q) {
        Scalar l = counit(d, multiply(d, lambda_elem(d, q), a));
        if (!l.is_zero()) p.pi_left[q] = l;
        Scalar r = counit(d, multiply(d, a, rho_elem(d, q)));
        if (!r.is_zero()) p.pi_right[q] = r;
        if (!elem_zero(lambda_elem(d, q))) p.e[q] = Scalar(1);
    }
    return p;
}

namespace {

// Reads x as sum_p c_p u_p where u_p is lambda_p (left) or rho_p (right).
std::optional<std::map<int, Scalar>> decode_family(const PartialHopfData& d, const Elem& x, bool left) {
    std::map<int, Scalar> fam;
    Elem rebuilt;
    for (int p = 0; p < d.num_objects(); ++p) {
        Elem u = left ? lambda_elem(d, p) : rho_elem(d, p);
        std::optional<Scalar> c;
        for (auto& [k, uv] : u) {
            auto it = x.find(k);
            if (it == x.end()) continue;
            for (size_t i = 0; i < uv.size() && !c; ++i)
                if (!uv[i].is_zero()) c = it->second[i] / uv[i];
            if (c) break;
        }
        if (c && !c->is_zero()) {
            fam[p] = *c;
            rebuilt = elem_add(rebuilt, elem_scale(u, *c));
        }
    }
    if (!elem_equal(rebuilt, x)) return std::nullopt;
    return fam;
}

}  // namespace

std::optional<std::map<int, Scalar>> pi_left_via_antipode(const PartialHopfData& d, const Elem& a) {
    BlockFn s = [&](const Square& k, const Vec& v) { return antipode(d, Elem{{k, v}}); };
    Elem x = contract(d, tensor_apply(d, comultiply_total(d, a), 1, s));
    return decode_family(d, x, true);
}

std::optional<std::map<int, Scalar>> pi_right_via_antipode(const PartialHopfData& d, const Elem& a) {
    BlockFn s = [&](const Square& k, const Vec& v) { return antipode(d, Elem{{k, v}}); };
    Elem x = contract(d, tensor_apply(d, comultiply_total(d, a), 0, s));
    return decode_family(d, x, false);
}

std::map<int, Scalar> family_product(const std::map<int, Scalar>& a, const std::map<int, Scalar>& b) {
    std::map<int, Scalar> out;
    for (auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end()) continue;
        Scalar p = v * it->second;
        if (!p.is_zero()) out[k] = p;
    }
    return out;
}

std::vector<std::vector<int>> hyperobject_partition(const PartialHopfData& d) {
    int n = d.num_objects();
    auto rel = [&](int k, int l) { return !elem_zero(unit_elem(d, k, l)); };
    auto name = [&](int k, int l) {
        return "(" + d.labels[static_cast<size_t>(k)] + "," + d.labels[static_cast<size_t>(l)] + ")";
    };
    for (int k = 0; k < n; ++k)
        if (!rel(k, k)) throw Error("inconsistent", "1(k|k) vanishes at " + name(k, k));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            if (!rel(k, l)) continue;
            if (!rel(l, k)) throw Error("inconsistent", "relation not symmetric at " + name(k, l));
            for (int m = 0; m < n; ++m)
                if (rel(l, m) && !rel(k, m))
                    throw Error("inconsistent", "relation not transitive at " + name(k, m));
        }
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        auto& p = parent[static_cast<size_t>(x)];
        return p == x ? x : p = find(p);
    };
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (rel(k, l)) parent[static_cast<size_t>(find(k))] = find(l);
    std::map<int, std::vector<int>> classes;
    for (int k = 0; k < n; ++k) classes[find(k)].push_back(k);
    std::vector<std::vector<int>> out;
    for (auto& [r, c] : classes) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

Report verify_linking_structures(const PartialHopfData& d, const std::vector<int>& part1,
                                 const std::vector<int>& part2, LinkMode mode) {
    std::vector<int> side(static_cast<size_t>(d.num_objects()), -1);
    for (int which = 0; which < 2; ++which)
        for (int k : which == 0 ? part1 : part2) {
            if (k < 0 || k >= d.num_objects()) throw Error("bad-partition", "object out of range");
            if (side[static_cast<size_t>(k)] != -1) throw Error("bad-partition", "parts overlap");
            side[static_cast<size_t>(k)] = which;
        }
    for (int s : side)
        if (s == -1) throw Error("bad-partition", "parts do not cover the object set");
    auto sd = [&](int k) { return side[static_cast<size_t>(k)]; };
    Report rep;
    const std::vector<int>* parts[2] = {&part1, &part2};
    if (mode == LinkMode::linking) {
        for (auto& [k, dim] : d.dims) {
            if (dim == 0) continue;
            bool ok = true;
            json w;
            for (int i = 0; i < 2 && ok; ++i)
                for (int j = 0; j < 2 && ok; ++j) {
                    bool left = sd(k.k) == i && sd(k.m) == j;
                    bool right = sd(k.l) == i && sd(k.n) == j;
                    if (left != right) {
                        ok = false;
                        w = {{"block", d.key(k)}, {"unit", {i + 1, j + 1}}};
                    }
                }
            rep.check("linking.central", ok, w);
        }
        for (int i = 0; i < 2; ++i)
            for (int r : *parts[i]) {
                bool found = false;
                for (int s : *parts[1 - i]) found = found || !elem_zero(unit_elem(d, r, s));
                rep.check("linking.nondegenerate", found, {{"object", d.labels[static_cast<size_t>(r)]}});
            }
    } else {
        for (int i = 0; i < 2; ++i)
            for (int k : *parts[i])
                for (int l : *parts[1 - i])
                    rep.check("colinking.units", elem_zero(unit_elem(d, k, l)),
                              {{"unit", {d.labels[static_cast<size_t>(k)], d.labels[static_cast<size_t>(l)]}}});
        for (int i = 0; i < 2; ++i)
            for (int k : *parts[i]) {
                bool found = false;
                for (int l : *parts[1 - i]) found = found || d.dim(Square{k, l, k, l}) > 0;
                rep.check("colinking.nondegenerate", found, {{"object", d.labels[static_cast<size_t>(k)]}});
            }
    }
    return rep;
}

PartialHopfData product(const PartialHopfData& a, const PartialHopfData& b) {
    if (a.max_degree >= 0 || b.max_degree >= 0)
        throw Error("unsupported", "product of degree-truncated data");
    PartialHopfData p;
    int nb = b.num_objects();
    auto idx = [&](int i, int j) { return i * nb + j; };
    auto sq = [&](const Square& x, const Square& y) {
        return Square{idx(x.k, y.k), idx(x.l, y.l), idx(x.m, y.m), idx(x.n, y.n)};
    };
    for (auto& la : a.labels)
        for (auto& lb : b.labels) p.labels.push_back(la + "." + lb);
    for (auto& [ka, da] : a.dims)
        for (auto& [kb, db] : b.dims)
            if (da > 0 && db > 0) p.dims[sq(ka, kb)] = da * db;

    for (auto& [kla, ma] : a.mult)
        for (auto& [klb, mb] : b.mult) {
            const auto& [ka, la] = kla;
            const auto& [kb, lb] = klb;
            size_t dka = a.dim(ka), dla = a.dim(la), dkb = b.dim(kb), dlb = b.dim(lb);
            Mat m(ma.rows() * mb.rows(), dka * dkb * dla * dlb);
            for (size_t za = 0; za < ma.rows(); ++za)
                for (size_t ca = 0; ca < ma.cols(); ++ca) {
                    if (ma(za, ca).is_zero()) continue;
                    size_t xa = ca / dla, ya = ca % dla;
                    for (size_t zb = 0; zb < mb.rows(); ++zb)
                        for (size_t cb = 0; cb < mb.cols(); ++cb) {
                            if (mb(zb, cb).is_zero()) continue;
                            size_t xb = cb / dlb, yb = cb % dlb;
                            size_t col = (xa * dkb + xb) * (dla * dlb) + (ya * dlb + yb);
                            m(za * mb.rows() + zb, col) = ma(za, ca) * mb(zb, cb);
                        }
                }
            p.mult[{sq(ka, kb), sq(la, lb)}] = m;
        }

    for (auto& [ta, ca] : a.comult)
        for (auto& [tb, cb] : b.comult) {
            const auto& [ka, ra, sa] = ta;
            const auto& [kb, rb, sb] = tb;
            size_t a1 = a.dim(Square{ka.k, ka.l, ra, sa}), a2 = a.dim(Square{ra, sa, ka.m, ka.n});
            size_t b1 = b.dim(Square{kb.k, kb.l, rb, sb}), b2 = b.dim(Square{rb, sb, kb.m, kb.n});
            Mat m(a1 * b1 * a2 * b2, a.dim(ka) * b.dim(kb));
            for (size_t ia = 0; ia < ca.rows(); ++ia)
                for (size_t xa = 0; xa < ca.cols(); ++xa) {
                    if (ca(ia, xa).is_zero()) continue;
                    size_t p1 = ia / a2, p2 = ia % a2;
                    for (size_t ib = 0; ib < cb.rows(); ++ib)
                        for (size_t xb = 0; xb < cb.cols(); ++xb) {
                            if (cb(ib, xb).is_zero()) continue;
                            size_t q1 = ib / b2, q2 = ib % b2;
                            size_t row = (p1 * b1 + q1) * (a2 * b2) + (p2 * b2 + q2);
                            m(row, xa * b.dim(kb) + xb) = ca(ia, xa) * cb(ib, xb);
                        }
                }
            p.comult[{sq(ka, kb), idx(ra, rb), idx(sa, sb)}] = m;
        }

    auto vkron = [](const Vec& x, const Vec& y) {
        Vec out(x.size() * y.size());
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
        return out;
    };
    for (auto& [ka, va] : a.counit)
        for (auto& [kb, vb] : b.counit) p.counit[sq(ka, kb)] = vkron(va, vb);
    for (auto& [ua, va] : a.unit)
        for (auto& [ub, vb] : b.unit) p.unit[{idx(ua.first, ub.first), idx(ua.second, ub.second)}] = vkron(va, vb);
    if (a.antipode && b.antipode) {
        p.antipode.emplace();
        for (auto& [ka, ma] : *a.antipode)
            for (auto& [kb, mb] : *b.antipode) (*p.antipode)[sq(ka, kb)] = kron(ma, mb);
    }
    if (a.star && b.star) {
        p.star.emplace();
        for (auto& [ka, ma] : *a.star)
            for (auto& [kb, mb] : *b.star) (*p.star)[sq(ka, kb)] = kron(ma, mb);
    }
    if (a.integral && b.integral) {
        p.integral.emplace();
        for (auto& [ka, va] : *a.integral)
            for (auto& [kb, vb] : *b.integral) (*p.integral)[sq(ka, kb)] = vkron(va, vb);
    }
    for (int i = 0; i < a.num_objects(); ++i)
        for (int j = 0; j < nb; ++j)
            if (a.boundary.count(i) || b.boundary.count(j)) p.boundary.insert(idx(i, j));
    return p;
}

json scalar_array(const Vec& v) {
    json out = json::array();
    for (auto& x : v) out.push_back(x.str());
    return out;
}

json matrix_json(const Mat& m) {
    json out = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        out.push_back(row);
    }
    return out;
}

Scalar scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    throw Error("parse", "expected a scalar literal in " + where);
}

Vec vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw Error("parse", "expected an array in " + where);
    Vec v;
    for (auto& x : j) v.push_back(scalar_from_json(x, where));
    return v;
}

Mat mat_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw Error("parse", "expected a matrix in " + where);
    size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    Mat m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw Error("parse", "ragged matrix in " + where);
        for (size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c], where);
    }
    return m;
}

json to_json(const PartialHopfData& d) {
    json j;
    j["objects"] = d.labels;
    json blocks = json::array();
    for (auto& [k, dim] : d.dims) {
        json b = {{"square", d.key(k)}, {"dim", dim}};
        if (d.degree.count(k)) b["degree"] = d.degree.at(k);
        if (d.names.count(k)) b["names"] = d.names.at(k);
        blocks.push_back(b);
    }
    j["blocks"] = blocks;
    json prod = json::array();
    for (auto& [kl, m] : d.mult)
        prod.push_back({{"left", d.key(kl.first)}, {"right", d.key(kl.second)}, {"matrix", matrix_json(m)}});
    j["product"] = prod;
    json co = json::array();
    for (auto& [t, m] : d.comult) {
        const auto& [k, r, s] = t;
        co.push_back({{"block", d.key(k)},
                      {"r", d.labels[static_cast<size_t>(r)]},
                      {"s", d.labels[static_cast<size_t>(s)]},
                      {"matrix", matrix_json(m)}});
    }
    j["coproduct"] = co;
    json eps = json::object();
    for (auto& [k, v] : d.counit) eps[d.key(k)] = scalar_array(v);
    j["counit"] = eps;
    json units = json::object();
    for (auto& [km, v] : d.unit)
        units[d.labels[static_cast<size_t>(km.first)] + "," + d.labels[static_cast<size_t>(km.second)]] =
            scalar_array(v);
    j["unit"] = units;
    if (d.antipode) {
        json s = json::object();
        for (auto& [k, m] : *d.antipode) s[d.key(k)] = matrix_json(m);
        j["antipode"] = s;
    }
    if (d.star) {
        json s = json::object();
        for (auto& [k, m] : *d.star) s[d.key(k)] = matrix_json(m);
        j["star"] = s;
    }
    if (d.integral) {
        json s = json::object();
        for (auto& [k, v] : *d.integral) s[d.key(k)] = scalar_array(v);
        j["integral"] = s;
    }
    json bd = json::array();
    for (int b : d.boundary) bd.push_back(d.labels[static_cast<size_t>(b)]);
    j["boundary"] = bd;
    if (d.max_degree >= 0) j["max_degree"] = d.max_degree;
    return j;
}

PartialHopfData hopf_from_json(const json& j) {
    PartialHopfData d;
    if (!j.contains("objects") || !j.contains("blocks")) throw Error("parse", "hopf data needs objects and blocks");
    for (auto& o : j["objects"]) d.labels.push_back(o.is_string() ? o.get<std::string>() : o.dump());
    for (auto& b : j["blocks"]) {
        Square k = d.parse_key(b.at("square").get<std::string>());
        size_t dim = b.at("dim").get<size_t>();
        if (dim) d.dims[k] = dim;
        if (b.contains("degree")) d.degree[k] = b["degree"].get<std::vector<int>>();
        if (b.contains("names")) d.names[k] = b["names"].get<std::vector<std::string>>();
    }
    auto check_shape = [&](const Mat& m, size_t rows, size_t cols, const std::string& where) {
        if (m.rows() != rows || m.cols() != cols)
            throw Error("shape", "matrix shape mismatch in " + where);
    };
    for (auto& p : j.value("product", json::array())) {
        Square k = d.parse_key(p.at("left")), l = d.parse_key(p.at("right"));
        if (k.l != l.k || k.n != l.m) throw Error("grading", "product of non-composable blocks " + d.key(k));
        Mat m = mat_from_json(p.at("matrix"), "product");
        check_shape(m, d.dim(Square{k.k, l.l, k.m, l.n}), d.dim(k) * d.dim(l), "product " + d.key(k));
        d.mult[{k, l}] = m;
    }
    for (auto& c : j.value("coproduct", json::array())) {
        Square k = d.parse_key(c.at("block"));
        int r = d.object(c.at("r")), s = d.object(c.at("s"));
        Mat m = mat_from_json(c.at("matrix"), "coproduct");
        check_shape(m, d.dim(Square{k.k, k.l, r, s}) * d.dim(Square{r, s, k.m, k.n}), d.dim(k),
                    "coproduct " + d.key(k));
        d.comult[{k, r, s}] = m;
    }
    const json eps = j.value("counit", json::object());
    for (auto& [key, v] : eps.items()) {
        Square k = d.parse_key(key);
        if (k.k != k.m || k.l != k.n) throw Error("grading", "counit off the diagonal columns: " + key);
        d.counit[k] = vec_from_json(v, "counit");
    }
    const json units = j.value("unit", json::object());
    for (auto& [key, v] : units.items()) {
        auto c = key.find(',');
        if (c == std::string::npos) throw Error("parse", "unit key needs 'k,m': " + key);
        int k = d.object(key.substr(0, c)), m = d.object(key.substr(c + 1));
        Vec u = vec_from_json(v, "unit");
        if (u.size() != d.dim(Square{k, k, m, m})) throw Error("shape", "unit size mismatch at " + key);
        d.unit[{k, m}] = u;
    }
    if (j.contains("antipode")) {
        d.antipode.emplace();
        for (auto& [key, v] : j["antipode"].items()) {
            Square k = d.parse_key(key);
            Mat m = mat_from_json(v, "antipode");
            check_shape(m, d.dim(circ_bullet(k)), d.dim(k), "antipode " + key);
            (*d.antipode)[k] = m;
        }
    }
    if (j.contains("star")) {
        d.star.emplace();
        for (auto& [key, v] : j["star"].items()) {
            Square k = d.parse_key(key);
            Mat m = mat_from_json(v, "star");
            check_shape(m, d.dim(circ(k)), d.dim(k), "star " + key);
            (*d.star)[k] = m;
        }
    }
    if (j.contains("integral")) {
        d.integral.emplace();
        for (auto& [key, v] : j["integral"].items()) {
            Square k = d.parse_key(key);
            if (k.k != k.l || k.m != k.n) throw Error("grading", "integral off the diagonal rows: " + key);
            (*d.integral)[k] = vec_from_json(v, "integral");
        }
    }
    for (auto& b : j.value("boundary", json::array()))
        d.boundary.insert(d.object(b.is_string() ? b.get<std::string>() : b.dump()));
    d.max_degree = j.value("max_degree", -1);
    return d;
}

}  // namespace pqg
