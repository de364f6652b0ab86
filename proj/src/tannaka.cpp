#include "pqg/tannaka.hpp"

#include "pqg/error.hpp"

namespace pqg {

size_t FiberData::dim(int a, int k, int l) const {
    auto it = dims.find({a, k, l});
    return it == dims.end() ? 0 : it->second;
}

bool FiberData::is_unit(int a) const {
    for (int u : unit_of)
        if (u == a) return true;
    return false;
}

int FiberData::irrep_index(const std::string& name) const {
    for (size_t i = 0; i < irreps.size(); ++i)
        if (irreps[i].name == name) return static_cast<int>(i);
    throw Error("unknown-irrep", "unknown irreducible '" + name + "'");
}

int FiniteGroup::inverse(int g) const {
    for (size_t h = 0; h < names.size(); ++h)
        if (mul[static_cast<size_t>(g)][h] == identity) return static_cast<int>(h);
    throw Error("group", "element without inverse");
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw Error("group", "cyclic group order must be positive");
    FiniteGroup g;
    for (int i = 0; i < n; ++i) {
        g.names.push_back(std::to_string(i));
        std::vector<int> row;
        for (int j = 0; j < n; ++j) row.push_back((i + j) % n);
        g.mul.push_back(row);
    }
    return g;
}

namespace {

Mat one() { return Mat::identity(1); }

}  // namespace

FiberData pointed_group_fiber(const FiniteGroup& g) {
    int n = static_cast<int>(g.names.size());
    FiberData f;
    f.objects = g.names;
    f.hyper.assign(static_cast<size_t>(n), 0);
    f.hyper_names = {"*"};
    for (int a = 0; a < n; ++a) f.irreps.push_back({"u" + g.names[static_cast<size_t>(a)], 0, 0, g.inverse(a)});
    f.unit_of = {g.identity};
    auto mul = [&](int a, int b) { return g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) f.dims[{a, mul(a, l), l}] = 1;
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            int ch = static_cast<int>(f.channels.size());
            f.channels.push_back({b, c, mul(b, c)});
            for (int t = 0; t < n; ++t) {
                int s = mul(c, t), r = mul(b, s);
                f.iso[{ch, r, s, t}] = one();
            }
        }
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) {
            f.coev[{a, mul(a, l), l}] = one();
            f.ev[{a, mul(a, l), l}] = one();
        }
    return f;
}

FiberData pair_groupoid_fiber(int n) {
    if (n < 1) throw Error("empty", "pair groupoid needs a nonempty object set");
    FiberData f;
    for (int k = 1; k <= n; ++k) f.objects.push_back(std::to_string(k));
    f.hyper.assign(static_cast<size_t>(n), 0);
    f.hyper_names = {"*"};
    f.irreps = {{"1", 0, 0, 0}};
    f.unit_of = {0};
    f.channels = {{0, 0, 0}};
    for (int k = 0; k < n; ++k) {
        f.dims[{0, k, k}] = 1;
        f.iso[{0, k, k, k}] = one();
        f.coev[{0, k, k}] = one();
        f.ev[{0, k, k}] = one();
    }
    return f;
}

FiberData groupoid_fiber(int n) {
    if (n < 1) throw Error("empty", "groupoid needs a nonempty object set");
    FiberData f;
    auto id = [n](int a, int b) { return a * n + b; };
    for (int k = 1; k <= n; ++k) {
        f.objects.push_back(std::to_string(k));
        f.hyper_names.push_back(std::to_string(k));
    }
    for (int k = 0; k < n; ++k) f.hyper.push_back(k);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            f.irreps.push_back({"u" + f.objects[static_cast<size_t>(a)] + f.objects[static_cast<size_t>(b)], a, b,
                                id(b, a)});
    for (int a = 0; a < n; ++a) f.unit_of.push_back(id(a, a));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            f.dims[{id(a, b), a, b}] = 1;
            f.coev[{id(a, b), a, b}] = one();
            f.ev[{id(a, b), a, b}] = one();
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int ch = static_cast<int>(f.channels.size());
                f.channels.push_back({id(a, b), id(b, c), id(a, c)});
                f.iso[{ch, a, b, c}] = one();
            }
    return f;
}

namespace {

Mat iso_or_zero(const FiberData& f, int ch, int r, int s, int t) {
    auto it = f.iso.find({ch, r, s, t});
    if (it != f.iso.end()) return it->second;
    const auto& c = f.channels[static_cast<size_t>(ch)];
    return Mat(f.dim(c.a, r, t), f.dim(c.b, r, s) * f.dim(c.c, s, t));
}

void append(Vec& dst, const Mat& m) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) dst.push_back(m(i, j));
}

int unit_channel(const FiberData& f, int a) {
    int u = f.unit_of[static_cast<size_t>(f.irreps[static_cast<size_t>(a)].left)];
    for (size_t ch = 0; ch < f.channels.size(); ++ch) {
        const auto& c = f.channels[ch];
        if (c.b == a && c.c == f.irreps[static_cast<size_t>(a)].dual && c.a == u) return static_cast<int>(ch);
    }
    return -1;
}

// conj(J(a, dual a -> 1)_{k l k}) reshaped to dim F_kl(a) x dim F_lk(dual a).
Mat reshaped_unit_channel(const FiberData& f, int a, int k, int l) {
    int ad = f.irreps[static_cast<size_t>(a)].dual;
    size_t d1 = f.dim(a, k, l), d2 = f.dim(ad, l, k);
    Mat out(d1, d2);
    int ch = unit_channel(f, a);
    if (ch < 0) return out;
    Mat j = iso_or_zero(f, ch, k, l, k);
    if (j.rows() != 1 || j.cols() != d1 * d2) return out;
    for (size_t p = 0; p < d1; ++p)
        for (size_t q = 0; q < d2; ++q) out(p, q) = j(0, p * d2 + q).conj();
    return out;
}

}  // namespace

std::map<int, Scalar> ev_normalization(const FiberData& f) {
    std::map<int, Scalar> out;
    for (auto& [key, c] : f.coev) {
        auto [a, k, l] = key;
        if (out.count(a)) continue;
        Mat j = reshaped_unit_channel(f, a, k, l);
        for (size_t p = 0; p < c.rows() && !out.count(a); ++p)
            for (size_t q = 0; q < c.cols(); ++q)
                if (!j(p, q).is_zero()) {
                    out[a] = c(p, q) / j(p, q);
                    break;
                }
    }
    return out;
}

Report validate_fiber_data(const FiberData& f) {
    Report rep;
    int n = f.num_objects(), na = f.num_irreps();
    auto name = [&](int a) { return f.irreps[static_cast<size_t>(a)].name; };
    auto obj = [&](int k) { return f.objects[static_cast<size_t>(k)]; };
    auto hy = [&](int k) { return f.hyper[static_cast<size_t>(k)]; };
    const auto& irr = f.irreps;

    if (f.hyper.size() != f.objects.size() || f.unit_of.size() != f.hyper_names.size())
        throw Error("parse", "fiber data object or hyperobject tables have inconsistent sizes");

    // Unitality.
    for (size_t alpha = 0; alpha < f.unit_of.size(); ++alpha) {
        int u = f.unit_of[alpha];
        bool ok = irr[static_cast<size_t>(u)].left == static_cast<int>(alpha) &&
                  irr[static_cast<size_t>(u)].right == static_cast<int>(alpha);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                size_t want = (k == l && hy(k) == static_cast<int>(alpha)) ? 1 : 0;
                ok = ok && f.dim(u, k, l) == want;
            }
        rep.check("fiber.unit", ok, {{"unit", name(u)}});
    }
    for (int c = 0; c < na; ++c)
        for (int side = 0; side < 2; ++side) {
            int u = f.unit_of[static_cast<size_t>(side == 0 ? irr[static_cast<size_t>(c)].left
                                                            : irr[static_cast<size_t>(c)].right)];
            std::vector<int> chs;
            for (size_t ch = 0; ch < f.channels.size(); ++ch) {
                const auto& x = f.channels[ch];
                if (side == 0 ? (x.b == u && x.c == c) : (x.b == c && x.c == u)) chs.push_back(static_cast<int>(ch));
            }
            bool ok = chs.size() == 1 && f.channels[static_cast<size_t>(chs[0])].a == c;
            for (int r = 0; r < n && ok; ++r)
                for (int t = 0; t < n && ok; ++t) {
                    size_t d = f.dim(c, r, t);
                    if (d == 0) continue;
                    Mat j = side == 0 ? iso_or_zero(f, chs[0], r, r, t) : iso_or_zero(f, chs[0], r, t, t);
                    ok = j == Mat::identity(d);
                }
            rep.check("fiber.unit", ok, {{"irrep", name(c)}, {"side", side == 0 ? "left" : "right"}});
        }

    // Grading of spaces, channels and duals.
    for (auto& [key, d] : f.dims) {
        auto [a, k, l] = key;
        bool ok = d == 0 || (hy(k) == irr[static_cast<size_t>(a)].left && hy(l) == irr[static_cast<size_t>(a)].right);
        rep.check("fiber.grading", ok, {{"irrep", name(a)}, {"k", obj(k)}, {"l", obj(l)}});
    }
    for (size_t ch = 0; ch < f.channels.size(); ++ch) {
        const auto& c = f.channels[ch];
        const auto &b = irr[static_cast<size_t>(c.b)], &cc = irr[static_cast<size_t>(c.c)],
                   &a = irr[static_cast<size_t>(c.a)];
        bool ok = b.right == cc.left && a.left == b.left && a.right == cc.right;
        rep.check("fiber.grading", ok, {{"channel", {name(c.b), name(c.c), name(c.a)}}});
    }
    for (auto& [key, m] : f.iso) {
        auto [ch, r, s, t] = key;
        const auto& c = f.channels[static_cast<size_t>(ch)];
        bool ok = m.rows() == f.dim(c.a, r, t) && m.cols() == f.dim(c.b, r, s) * f.dim(c.c, s, t);
        rep.check("fiber.grading", ok,
                  {{"channel", {name(c.b), name(c.c), name(c.a)}}, {"objects", {obj(r), obj(s), obj(t)}}});
    }
    for (int a = 0; a < na; ++a) {
        int ad = irr[static_cast<size_t>(a)].dual;
        bool ok = ad >= 0 && ad < na && irr[static_cast<size_t>(ad)].dual == a &&
                  irr[static_cast<size_t>(ad)].left == irr[static_cast<size_t>(a)].right &&
                  irr[static_cast<size_t>(ad)].right == irr[static_cast<size_t>(a)].left;
        for (int k = 0; k < n && ok; ++k)
            for (int l = 0; l < n && ok; ++l) ok = f.dim(a, k, l) == f.dim(ad, l, k);
        rep.check("fiber.dual", ok, {{"irrep", name(a)}});
    }

    // Completeness and unitarity of the stacked fusion maps.
    for (int b = 0; b < na; ++b)
        for (int c = 0; c < na; ++c) {
            if (irr[static_cast<size_t>(b)].right != irr[static_cast<size_t>(c)].left) continue;
            std::vector<int> chs;
            for (size_t ch = 0; ch < f.channels.size(); ++ch)
                if (f.channels[ch].b == b && f.channels[ch].c == c) chs.push_back(static_cast<int>(ch));
            for (int r = 0; r < n; ++r)
                for (int t = 0; t < n; ++t) {
                    size_t rows = 0, cols = 0;
                    for (int ch : chs) rows += f.dim(f.channels[static_cast<size_t>(ch)].a, r, t);
                    for (int s = 0; s < n; ++s) cols += f.dim(b, r, s) * f.dim(c, s, t);
                    if (rows == 0 && cols == 0) continue;
                    Mat m(rows, cols);
                    size_t ro = 0;
                    for (int ch : chs) {
                        size_t co = 0;
                        size_t h = f.dim(f.channels[static_cast<size_t>(ch)].a, r, t);
                        for (int s = 0; s < n; ++s) {
                            size_t w = f.dim(b, r, s) * f.dim(c, s, t);
                            if (w == 0) continue;
                            Mat j = iso_or_zero(f, ch, r, s, t);
                            for (size_t x = 0; x < h; ++x)
                                for (size_t y = 0; y < w; ++y) m(ro + x, co + y) = j(x, y);
                            co += w;
                        }
                        ro += h;
                    }
                    bool ok = rows == cols && m * m.adjoint() == Mat::identity(rows) &&
                              m.adjoint() * m == Mat::identity(cols);
                    rep.check("fiber.unitary", ok, {{"pair", {name(b), name(c)}}, {"objects", {obj(r), obj(t)}}});
                }
        }

    // Coherence: both bracketings span the same maps, uniformly in the objects.
    for (int b = 0; b < na; ++b)
        for (int c = 0; c < na; ++c) {
            if (irr[static_cast<size_t>(b)].right != irr[static_cast<size_t>(c)].left) continue;
            for (int d = 0; d < na; ++d) {
                if (irr[static_cast<size_t>(c)].right != irr[static_cast<size_t>(d)].left) continue;
                for (int e = 0; e < na; ++e) {
                    std::vector<Vec> left, right;
                    for (size_t al = 0; al < f.channels.size(); ++al) {
                        const auto& x = f.channels[al];
                        if (x.b != b || x.c != c) continue;
                        for (size_t be = 0; be < f.channels.size(); ++be) {
                            const auto& y = f.channels[be];
                            if (y.b != x.a || y.c != d || y.a != e) continue;
                            Vec v;
                            for (int r = 0; r < n; ++r)
                                for (int s = 0; s < n; ++s)
                                    for (int t = 0; t < n; ++t)
                                        for (int u = 0; u < n; ++u) {
                                            size_t dd = f.dim(d, t, u);
                                            Mat m = iso_or_zero(f, static_cast<int>(be), r, t, u) *
                                                    kron(iso_or_zero(f, static_cast<int>(al), r, s, t), Mat::identity(dd));
                                            append(v, m);
                                        }
                            left.push_back(v);
                        }
                    }
                    for (size_t ga = 0; ga < f.channels.size(); ++ga) {
                        const auto& x = f.channels[ga];
                        if (x.b != c || x.c != d) continue;
                        for (size_t de = 0; de < f.channels.size(); ++de) {
                            const auto& y = f.channels[de];
                            if (y.b != b || y.c != x.a || y.a != e) continue;
                            Vec v;
                            for (int r = 0; r < n; ++r)
                                for (int s = 0; s < n; ++s)
                                    for (int t = 0; t < n; ++t)
                                        for (int u = 0; u < n; ++u) {
                                            size_t db = f.dim(b, r, s);
                                            Mat m = iso_or_zero(f, static_cast<int>(de), r, s, u) *
                                                    kron(Mat::identity(db), iso_or_zero(f, static_cast<int>(ga), s, t, u));
                                            append(v, m);
                                        }
                            right.push_back(v);
                        }
                    }
                    if (left.empty() && right.empty()) continue;
                    size_t len = left.empty() ? right[0].size() : left[0].size();
                    auto stack = [&](const std::vector<Vec>& rows) {
                        Mat m(rows.size(), len);
                        for (size_t i = 0; i < rows.size(); ++i)
                            for (size_t j = 0; j < len && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
                        return m;
                    };
                    std::vector<Vec> both = left;
                    both.insert(both.end(), right.begin(), right.end());
                    size_t rl = rank(stack(left)), rr = rank(stack(right)), rb = rank(stack(both));
                    rep.check("fiber.cocycle", rl == rr && rr == rb,
                              {{"triple", {name(b), name(c), name(d)}}, {"target", name(e)},
                               {"ranks", {rl, rr, rb}}});
                }
            }
        }

    // Duality maps.
    auto norm = ev_normalization(f);
    for (auto& [key, d] : f.dims) {
        auto [a, k, l] = key;
        if (d == 0) continue;
        int ad = irr[static_cast<size_t>(a)].dual;
        size_t dd = f.dim(ad, l, k);
        auto ci = f.coev.find(key), ei = f.ev.find(key);
        json w = {{"irrep", name(a)}, {"k", obj(k)}, {"l", obj(l)}};
        if (ci == f.coev.end() || ei == f.ev.end()) {
            rep.fail("fiber.duality", w);
            continue;
        }
        const Mat &c = ci->second, &e = ei->second;
        bool ok = c.rows() == d && c.cols() == dd && e.rows() == dd && e.cols() == d && c * e == Mat::identity(d) &&
                  e * c == Mat::identity(dd);
        ok = ok && norm.count(a) && c == reshaped_unit_channel(f, a, k, l) * norm.at(a);
        rep.check("fiber.duality", ok, w);
    }
    return rep;
}

Reconstruction reconstruct(const FiberData& f) {
    Report pre = validate_fiber_data(f);
    if (!pre.ok()) throw Error("invalid-fiber", "fiber data fails validation: " + pre.to_json().dump());
    Reconstruction rec;
    PartialHopfData& h = rec.hopf;
    int n = f.num_objects(), na = f.num_irreps();
    h.labels = f.objects;
    auto ir = [&](int a) -> const Irrep& { return f.irreps[static_cast<size_t>(a)]; };

    // Blocks: A(k l; m n) = sum over a of F_kl(a)* (x) F_mn(a).
    for (int a = 0; a < na; ++a)
        for (auto& [kk, d1] : f.dims) {
            auto [a1, k, l] = kk;
            if (a1 != a || d1 == 0) continue;
            for (auto& [mm, d2] : f.dims) {
                auto [a2, m, nn] = mm;
                if (a2 != a || d2 == 0) continue;
                Square sq{k, l, m, nn};
                rec.offset[{sq, a}] = h.dims[sq];
                h.dims[sq] += d1 * d2;
                for (size_t i = 0; i < d1; ++i)
                    for (size_t j = 0; j < d2; ++j) {
                        rec.coeff[sq].push_back({a, i, j});
                        h.names[sq].push_back("f[" + ir(a).name + "]_" + std::to_string(i) + "," + std::to_string(j));
                    }
            }
        }
    auto idx = [&](const Square& sq, int a, size_t i, size_t j) {
        return rec.offset.at({sq, a}) + i * f.dim(a, sq.m, sq.n) + j;
    };

    std::vector<Square> sqs;
    for (auto& [sq, d] : h.dims) sqs.push_back(sq);

    // Product through the fusion channels.
    for (auto& kq : sqs)
        for (auto& lq : sqs) {
            if (kq.l != lq.k || kq.n != lq.m) continue;
            Square kl{kq.k, lq.l, kq.m, lq.n};
            if (!h.dims.count(kl)) continue;
            size_t dl = h.dim(lq);
            Mat m(h.dim(kl), h.dim(kq) * dl);
            bool any = false;
            for (size_t ch = 0; ch < f.channels.size(); ++ch) {
                const auto& c = f.channels[ch];
                if (!rec.offset.count({kq, c.b}) || !rec.offset.count({lq, c.c}) || !rec.offset.count({kl, c.a}))
                    continue;
                Mat jt = iso_or_zero(f, static_cast<int>(ch), kq.k, kq.l, lq.l);  // rows F_km(a)
                Mat jb = iso_or_zero(f, static_cast<int>(ch), kq.m, kq.n, lq.n);  // rows F_rt(a)
                size_t db_top = f.dim(c.b, kq.k, kq.l), dc_top = f.dim(c.c, lq.k, lq.l);
                size_t db_bot = f.dim(c.b, kq.m, kq.n), dc_bot = f.dim(c.c, lq.m, lq.n);
                size_t da_top = f.dim(c.a, kl.k, kl.l), da_bot = f.dim(c.a, kl.m, kl.n);
                for (size_t i = 0; i < db_top; ++i)
                    for (size_t j = 0; j < db_bot; ++j)
                        for (size_t i2 = 0; i2 < dc_top; ++i2)
                            for (size_t j2 = 0; j2 < dc_bot; ++j2) {
                                size_t col = idx(kq, c.b, i, j) * dl + idx(lq, c.c, i2, j2);
                                for (size_t p = 0; p < da_top; ++p) {
                                    Scalar x = jt(p, i * dc_top + i2).conj();
                                    if (x.is_zero()) continue;
                                    for (size_t q = 0; q < da_bot; ++q) {
                                        Scalar y = jb(q, j * dc_bot + j2);
                                        if (y.is_zero()) continue;
                                        m(idx(kl, c.a, p, q), col) += x * y;
                                        any = true;
                                    }
                                }
                            }
            }
            if (any) h.mult[{kq, lq}] = m;
        }

    // Coproduct: matrix-coefficient splitting through F_rs(a).
    for (auto& kq : sqs)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                Square left{kq.k, kq.l, r, s}, right{r, s, kq.m, kq.n};
                size_t dr = h.dim(right);
                if (h.dim(left) * dr == 0) continue;
                Mat m(h.dim(left) * dr, h.dim(kq));
                bool any = false;
                for (int a = 0; a < na; ++a) {
                    if (!rec.offset.count({kq, a}) || !rec.offset.count({left, a})) continue;
                    size_t d1 = f.dim(a, kq.k, kq.l), dm = f.dim(a, r, s), d2 = f.dim(a, kq.m, kq.n);
                    for (size_t i = 0; i < d1; ++i)
                        for (size_t j = 0; j < d2; ++j)
                            for (size_t p = 0; p < dm; ++p) {
                                m(idx(left, a, i, p) * dr + idx(right, a, p, j), idx(kq, a, i, j)) = Scalar(1);
                                any = true;
                            }
                }
                if (any) h.comult[{kq, r, s}] = m;
            }

    // Counit, units and integral.
    for (auto& kq : sqs) {
        if (kq.k == kq.m && kq.l == kq.n) {
            Vec e(h.dim(kq));
            for (int a = 0; a < na; ++a) {
                if (!rec.offset.count({kq, a})) continue;
                for (size_t i = 0; i < f.dim(a, kq.k, kq.l); ++i) e[idx(kq, a, i, i)] = Scalar(1);
            }
            h.counit[kq] = e;
        }
    }
    h.integral.emplace();
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            if (f.hyper[static_cast<size_t>(k)] != f.hyper[static_cast<size_t>(m)]) continue;
            int u = f.unit_of[static_cast<size_t>(f.hyper[static_cast<size_t>(k)])];
            Square sq{k, k, m, m};
            Vec v(h.dim(sq));
            v[idx(sq, u, 0, 0)] = Scalar(1);
            h.unit[{k, m}] = v;
            (*h.integral)[sq] = v;
        }

    // Antipode and star from the duality maps.
    h.antipode.emplace();
    h.star.emplace();
    for (auto& kq : sqs) {
        Square sb = circ_bullet(kq), sc = circ(kq);
        Mat sm(h.dim(sb), h.dim(kq)), st(h.dim(sc), h.dim(kq));
        for (int a = 0; a < na; ++a) {
            if (!rec.offset.count({kq, a})) continue;
            int ad = ir(a).dual;
            const Mat& c_top = f.coev.at({a, kq.k, kq.l});
            const Mat& e_bot = f.ev.at({a, kq.m, kq.n});
            const Mat& c_bot = f.coev.at({a, kq.m, kq.n});
            const Mat& e_top = f.ev.at({a, kq.k, kq.l});
            size_t d1 = f.dim(a, kq.k, kq.l), d2 = f.dim(a, kq.m, kq.n);
            for (size_t i = 0; i < d1; ++i)
                for (size_t j = 0; j < d2; ++j) {
                    size_t col = idx(kq, a, i, j);
                    // S(f_ij(k l; m n)) = sum C^{kl}[i,p] E^{mn}[q,j] f^dual_qp(n m; l k)
                    for (size_t p = 0; p < d1; ++p)
                        for (size_t q = 0; q < d2; ++q) {
                            Scalar x = c_top(i, p) * e_bot(q, j);
                            if (!x.is_zero()) sm(idx(sb, ad, q, p), col) += x;
                        }
                    // f_ij(k l; m n)* = sum C^{mn}[j,p] E^{kl}[q,i] f^dual_qp(l k; n m)
                    for (size_t p = 0; p < d2; ++p)
                        for (size_t q = 0; q < d1; ++q) {
                            Scalar x = c_bot(j, p) * e_top(q, i);
                            if (!x.is_zero()) st(idx(sc, ad, q, p), col) += x;
                        }
                }
        }
        (*h.antipode)[kq] = sm;
        (*h.star)[kq] = st;
    }
    return rec;
}

json fiber_to_json(const FiberData& f) {
    json j;
    j["objects"] = f.objects;
    j["hyperobjects"] = f.hyper_names;
    json oh = json::array();
    for (int h : f.hyper) oh.push_back(f.hyper_names[static_cast<size_t>(h)]);
    j["object_hyperobject"] = oh;
    json irr = json::array();
    for (size_t a = 0; a < f.irreps.size(); ++a) {
        const auto& x = f.irreps[a];
        irr.push_back({{"name", x.name},
                       {"left", f.hyper_names[static_cast<size_t>(x.left)]},
                       {"right", f.hyper_names[static_cast<size_t>(x.right)]},
                       {"dual", f.irreps[static_cast<size_t>(x.dual)].name},
                       {"unit", f.is_unit(static_cast<int>(a))}});
    }
    j["irreducibles"] = irr;
    auto on = [&](int k) { return f.objects[static_cast<size_t>(k)]; };
    auto an = [&](int a) { return f.irreps[static_cast<size_t>(a)].name; };
    json dims = json::array();
    for (auto& [key, d] : f.dims) {
        auto [a, k, l] = key;
        dims.push_back({{"irrep", an(a)}, {"k", on(k)}, {"l", on(l)}, {"dim", d}});
    }
    j["dims"] = dims;
    json chans = json::array();
    for (size_t ch = 0; ch < f.channels.size(); ++ch) {
        const auto& c = f.channels[ch];
        json maps = json::array();
        for (auto& [key, m] : f.iso) {
            auto [cc, r, s, t] = key;
            if (cc != static_cast<int>(ch)) continue;
            maps.push_back({{"r", on(r)}, {"s", on(s)}, {"t", on(t)}, {"matrix", matrix_json(m)}});
        }
        chans.push_back({{"b", an(c.b)}, {"c", an(c.c)}, {"a", an(c.a)}, {"maps", maps}});
    }
    j["channels"] = chans;
    json dual = json::array();
    for (auto& [key, c] : f.coev) {
        auto [a, k, l] = key;
        json e = f.ev.count(key) ? matrix_json(f.ev.at(key)) : json::array();
        dual.push_back({{"irrep", an(a)}, {"k", on(k)}, {"l", on(l)}, {"coev", matrix_json(c)}, {"ev", e}});
    }
    j["duality"] = dual;
    return j;
}

FiberData fiber_from_json(const json& j) {
    FiberData f;
    f.objects = j.at("objects").get<std::vector<std::string>>();
    f.hyper_names = j.at("hyperobjects").get<std::vector<std::string>>();
    auto hyper_index = [&](const std::string& s) {
        for (size_t i = 0; i < f.hyper_names.size(); ++i)
            if (f.hyper_names[i] == s) return static_cast<int>(i);
        throw Error("parse", "unknown hyperobject '" + s + "'");
    };
    auto obj = [&](const json& s) {
        std::string name = s.get<std::string>();
        for (size_t i = 0; i < f.objects.size(); ++i)
            if (f.objects[i] == name) return static_cast<int>(i);
        throw Error("parse", "unknown object '" + name + "'");
    };
    for (auto& h : j.at("object_hyperobject")) f.hyper.push_back(hyper_index(h.get<std::string>()));
    const auto& irr = j.at("irreducibles");
    for (auto& x : irr)
        f.irreps.push_back({x.at("name").get<std::string>(), hyper_index(x.at("left").get<std::string>()),
                            hyper_index(x.at("right").get<std::string>()), 0});
    f.unit_of.assign(f.hyper_names.size(), -1);
    for (size_t a = 0; a < irr.size(); ++a) {
        f.irreps[a].dual = f.irrep_index(irr[a].at("dual").get<std::string>());
        if (irr[a].value("unit", false)) f.unit_of[static_cast<size_t>(f.irreps[a].left)] = static_cast<int>(a);
    }
    for (int u : f.unit_of)
        if (u < 0) throw Error("parse", "every hyperobject needs a unit irreducible");
    for (auto& d : j.at("dims")) {
        size_t dim = d.at("dim").get<size_t>();
        if (dim) f.dims[{f.irrep_index(d.at("irrep")), obj(d.at("k")), obj(d.at("l"))}] = dim;
    }
    for (auto& c : j.at("channels")) {
        int ch = static_cast<int>(f.channels.size());
        f.channels.push_back({f.irrep_index(c.at("b")), f.irrep_index(c.at("c")), f.irrep_index(c.at("a"))});
        for (auto& m : c.value("maps", json::array()))
            f.iso[{ch, obj(m.at("r")), obj(m.at("s")), obj(m.at("t"))}] = mat_from_json(m.at("matrix"), "channel");
    }
    for (auto& d : j.at("duality")) {
        std::tuple<int, int, int> key{f.irrep_index(d.at("irrep")), obj(d.at("k")), obj(d.at("l"))};
        f.coev[key] = mat_from_json(d.at("coev"), "duality");
        f.ev[key] = mat_from_json(d.at("ev"), "duality");
    }
    return f;
}

}  // namespace pqg
