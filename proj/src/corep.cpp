#include "pqg/corep.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pqg/tannaka.hpp"

namespace pqg {

namespace {

Mat coef(const Corep& x, const Square& k, size_t i) {
    auto it = x.blocks.find(k);
    if (it != x.blocks.end() && i < it->second.size()) return it->second[i];
    return Mat(x.space.dim(k.k, k.l), x.space.dim(k.m, k.n));
}

Mat block_of(const BlockMap& t, int k, int l, size_t rows, size_t cols) {
    auto it = t.blocks.find({k, l});
    if (it == t.blocks.end()) return Mat(rows, cols);
    return it->second;
}

void add_into(Mat& dst, const Mat& src, size_t r0, size_t c0, const Scalar& c) {
    for (size_t i = 0; i < src.rows(); ++i)
        for (size_t j = 0; j < src.cols(); ++j)
            if (!src(i, j).is_zero()) dst(r0 + i, c0 + j) += c * src(i, j);
}

// out_r = sum_i c(r, i) xs[i]
std::vector<Mat> transform(const Mat& c, const std::vector<Mat>& xs, size_t rows, size_t cols) {
    std::vector<Mat> out(c.rows(), Mat(rows, cols));
    for (size_t r = 0; r < c.rows(); ++r)
        for (size_t i = 0; i < c.cols() && i < xs.size(); ++i)
            if (!c(r, i).is_zero()) out[r] = out[r] + xs[i] * c(r, i);
    return out;
}

bool all_zero(const std::vector<Mat>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Mat& m) { return m.is_zero(); });
}

BigradedSpace same_objects(const BigradedSpace& v) {
    BigradedSpace s;
    s.objects = v.objects;
    return s;
}

BigradedSpace unit_space(const PartialHopfData& d) {
    BigradedSpace s = empty_space(d);
    for (int k = 0; k < d.num_objects(); ++k) s.set(k, k, 1);
    return s;
}

Scalar phi_dot(const PartialHopfData& d, const Square& k, const Vec& v) {
    if (!d.integral) throw Error("missing-structure", "no integral");
    auto it = d.integral->find(k);
    if (it == d.integral->end()) return Scalar(0);
    Scalar s;
    for (size_t i = 0; i < v.size() && i < it->second.size(); ++i)
        if (!v[i].is_zero() && !it->second[i].is_zero()) s += v[i] * it->second[i];
    return s;
}

Mat antipode_block(const PartialHopfData& d, const Square& k) {
    if (!d.antipode) throw Error("missing-structure", "no antipode");
    auto it = d.antipode->find(k);
    if (it == d.antipode->end()) return Mat(d.dim(circ_bullet(k)), d.dim(k));
    return it->second;
}

Mat star_block(const PartialHopfData& d, const Square& k) {
    if (!d.star) throw Error("missing-structure", "no star");
    auto it = d.star->find(k);
    if (it == d.star->end()) return Mat(d.dim(circ(k)), d.dim(k));
    return it->second;
}

json blocks_witness(const PartialHopfData& d, std::initializer_list<Square> ks) {
    json b = json::array();
    for (auto& k : ks) b.push_back(d.key(k));
    return {{"blocks", b}};
}

// ---- block maps --------------------------------------------------------------

BlockMap bm_add(const BlockMap& a, const BlockMap& b, const Scalar& c) {
    BlockMap out = a;
    for (auto& [kl, m] : b.blocks) {
        auto it = out.blocks.find(kl);
        if (it == out.blocks.end())
            out.blocks[kl] = m * c;
        else
            it->second = it->second + m * c;
    }
    return out;
}

BlockMap bm_scale(const BlockMap& a, const Scalar& c) {
    BlockMap out;
    for (auto& [kl, m] : a.blocks) out.blocks[kl] = m * c;
    return out;
}

bool bm_equal(const BlockMap& a, const BlockMap& b, const BigradedSpace& out, const BigradedSpace& in) {
    std::set<Pair> keys;
    for (auto& [kl, m] : a.blocks) keys.insert(kl);
    for (auto& [kl, m] : b.blocks) keys.insert(kl);
    for (auto& kl : keys) {
        size_t r = out.dim(kl.first, kl.second), c = in.dim(kl.first, kl.second);
        if (block_of(a, kl.first, kl.second, r, c) != block_of(b, kl.first, kl.second, r, c)) return false;
    }
    return true;
}

BlockMap bm_transpose(const BlockMap& a) {
    BlockMap out;
    for (auto& [kl, m] : a.blocks) out.blocks[kl] = m.transpose();
    return out;
}

Mat left_inverse(const Mat& b) {
    Mat bs = b.adjoint();
    auto inv = inverse(bs * b);
    if (!inv) throw Error("rank", "embedding is not injective");
    return *inv * bs;
}

// ---- column bases in A ---------------------------------------------------------

struct ColumnBasis {
    std::vector<Square> blocks;
    std::map<Square, size_t> offset;
    size_t rows = 0;
    Mat b;  // rows x basis size
};

ColumnBasis column_basis(const PartialHopfData& d, int k, int l, const std::vector<Elem>& basis) {
    ColumnBasis cb;
    for (auto& [kk, n] : d.dims)
        if (kk.m == k && kk.n == l) {
            cb.blocks.push_back(kk);
            cb.offset[kk] = cb.rows;
            cb.rows += n;
        }
    cb.b = Mat(cb.rows, basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (auto& [kk, v] : basis[j]) {
            auto it = cb.offset.find(kk);
            if (it == cb.offset.end()) {
                if (!vec_zero(v)) throw Error("grading", "basis vector outside column " + kk.str());
                continue;
            }
            for (size_t s = 0; s < v.size(); ++s) cb.b(it->second + s, j) = v[s];
        }
    return cb;
}

// ---- endomorphism search -------------------------------------------------------

std::vector<Scalar> char_poly(const Mat& b) {
    // Faddeev-LeVerrier; c[n] = 1
    size_t n = b.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Mat m(n, n);
    for (size_t k = 1; k <= n; ++k) {
        m = b * m + Mat::identity(n) * c[n - k + 1];
        c[n - k] = -trace(b * m) / Scalar(static_cast<long>(k));
    }
    return c;
}

std::vector<mpz_class> divisors(const mpz_class& x) {
    mpz_class a = abs(x);
    std::vector<mpz_class> ds{1};
    for (auto& p : prime_factors(a)) {
        size_t e = 0;
        mpz_class t = a;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        std::vector<mpz_class> next;
        for (auto& d : ds) {
            mpz_class q = d;
            for (size_t i = 0; i <= e; ++i) {
                next.push_back(q);
                q *= p;
            }
        }
        ds = std::move(next);
    }
    return ds;
}

std::optional<Scalar> some_eigenvalue(const Mat& b) {
    size_t n = b.rows();
    if (n == 0) return std::nullopt;
    if (n == 1) return b(0, 0);
    for (size_t i = 0; i < n; ++i)
        if (rank(b - Mat::identity(n) * b(i, i)) < n) return b(i, i);
    if (n == 2) {
        Scalar tr = b(0, 0) + b(1, 1), det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
        if (auto s = try_sqrt(tr * tr - Scalar(4) * det)) return (tr + *s) / Scalar(2);
        return std::nullopt;
    }
    auto c = char_poly(b);
    if (!std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_rational(); })) return std::nullopt;
    mpz_class lcm = 1;
    for (auto& s : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.rational().get_den_mpz_t());
    std::vector<mpz_class> z;
    for (auto& s : c) z.push_back(mpz_class(s.rational() * lcm));
    size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) return Scalar(0);
    auto eval = [&](const mpq_class& x) {
        mpq_class acc = 0;
        for (size_t i = z.size(); i-- > 0;) acc = acc * x + mpq_class(z[i]);
        return acc;
    };
    for (auto& p : divisors(z[0]))
        for (auto& q : divisors(z.back()))
            for (int sg : {1, -1}) {
                mpq_class x(p * sg, q);
                x.canonicalize();
                if (eval(x) == 0) return Scalar(x);
            }
    return std::nullopt;
}

bool is_scalar_map(const BlockMap& e, const BigradedSpace& v) {
    std::optional<Scalar> c;
    for (auto& [kl, dv] : v.dims) {
        Mat m = block_of(e, kl.first, kl.second, dv, dv);
        if (!c) c = m(0, 0);
        if (m != Mat::identity(dv) * *c) return false;
    }
    return true;
}

bool is_singular(const BlockMap& e, const BigradedSpace& v) {
    for (auto& [kl, dv] : v.dims)
        if (rank(block_of(e, kl.first, kl.second, dv, dv)) < dv) return true;
    return false;
}

BlockMap singular_endomorphism(const BigradedSpace& v, const std::vector<BlockMap>& ends) {
    for (auto& e : ends)
        if (!is_scalar_map(e, v) && is_singular(e, v)) return e;
    std::vector<std::pair<size_t, Pair>> order;
    for (auto& [kl, dv] : v.dims) order.push_back({dv, kl});
    std::sort(order.begin(), order.end());
    for (auto& e : ends) {
        if (is_scalar_map(e, v)) continue;
        for (auto& [dv, kl] : order)
            if (auto lam = some_eigenvalue(block_of(e, kl.first, kl.second, dv, dv)))
                return bm_add(e, identity_map(v), -*lam);
    }
    throw Error("unsupported", "no eigenvalue of an endomorphism inside the scalar tower");
}

void split(const PartialHopfData& d, const Corep& x, const BlockMap& emb, const BlockMap& proj,
           std::vector<Summand>& out) {
    if (x.total_dim() == 0) return;
    auto ends = intertwiners(d, x, x);
    if (ends.size() <= 1) {
        out.push_back({x, emb, proj, 0});
        return;
    }
    const BigradedSpace& v = x.space;
    BlockMap t = singular_endomorphism(v, ends);

    BlockMap iota;
    BigradedSpace w = same_objects(v);
    for (auto& [kl, dv] : v.dims) {
        Mat ker = nullspace(block_of(t, kl.first, kl.second, dv, dv));
        if (ker.cols()) {
            iota.blocks[kl] = ker;
            w.set(kl.first, kl.second, ker.cols());
        }
    }

    // Idempotent morphism P with image W: P iota = iota and N P = 0 for the annihilator N of W.
    size_t nu = ends.size();
    std::vector<Vec> rows;
    Vec rhs;
    for (auto& [kl, dv] : v.dims) {
        Mat io = block_of(iota, kl.first, kl.second, dv, 0);
        Mat ann = io.cols() ? nullspace(io.transpose()).transpose() : Mat::identity(dv);
        std::vector<Mat> ep, np;
        for (auto& e : ends) {
            Mat eb = block_of(e, kl.first, kl.second, dv, dv);
            ep.push_back(eb * io);
            np.push_back(ann * eb);
        }
        for (size_t a = 0; a < io.rows(); ++a)
            for (size_t b = 0; b < io.cols(); ++b) {
                Vec r(nu);
                for (size_t j = 0; j < nu; ++j) r[j] = ep[j](a, b);
                rows.push_back(r);
                rhs.push_back(io(a, b));
            }
        for (size_t a = 0; a < ann.rows(); ++a)
            for (size_t b = 0; b < dv; ++b) {
                Vec r(nu);
                for (size_t j = 0; j < nu; ++j) r[j] = np[j](a, b);
                rows.push_back(r);
                rhs.push_back(Scalar(0));
            }
    }
    Mat sys(rows.size(), nu), b(rows.size(), 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < nu; ++j) sys(i, j) = rows[i][j];
        b(i, 0) = rhs[i];
    }
    auto sol = solve(sys, b);
    if (!sol) throw Error("not-semisimple", "invariant subspace without invariant complement");
    BlockMap p;
    for (size_t j = 0; j < nu; ++j)
        if (!(*sol)(j, 0).is_zero()) p = bm_add(p, ends[j], (*sol)(j, 0));

    BlockMap kappa, lw, lc;
    BigradedSpace c = same_objects(v);
    for (auto& [kl, dv] : v.dims) {
        Mat pb = block_of(p, kl.first, kl.second, dv, dv);
        Mat ker = nullspace(pb);
        if (ker.cols()) {
            kappa.blocks[kl] = ker;
            c.set(kl.first, kl.second, ker.cols());
            lc.blocks[kl] = left_inverse(ker) * (Mat::identity(dv) - pb);
        }
        auto it = iota.blocks.find(kl);
        if (it != iota.blocks.end()) lw.blocks[kl] = left_inverse(it->second) * pb;
    }
    Corep xw = restrict_corep(x, iota, lw, w);
    Corep xc = restrict_corep(x, kappa, lc, c);
    split(d, xw, compose_maps(emb, iota), compose_maps(lw, proj), out);
    split(d, xc, compose_maps(emb, kappa), compose_maps(lc, proj), out);
}

// Irreducible summands of the regular corepresentation, one per class, as subspaces of A.
std::vector<RegularCorep> regular_irreducibles(const PartialHopfData& d) {
    RegularCorep full = full_regular_corep(d);
    Decomposition dec = decompose(d, full.corep);
    std::vector<RegularCorep> out;
    for (size_t rep : dec.representative) {
        const Summand& s = dec.summands[rep];
        std::map<Pair, std::vector<Elem>> basis;
        for (auto& [mn, e] : s.embedding.blocks) {
            const auto& src = full.basis.at(mn);
            for (size_t j = 0; j < e.cols(); ++j) {
                Elem v;
                for (size_t i = 0; i < e.rows(); ++i)
                    if (!e(i, j).is_zero()) v = elem_add(v, elem_scale(src[i], e(i, j)));
                basis[mn].push_back(v);
            }
        }
        out.push_back(regular_corep(d, basis));
    }
    return out;
}

Scalar inner(const PartialHopfData& d, const Elem& a, const Elem& b) {
    return integral(d, multiply(d, star(d, a), b));
}

Mat mat_power(const Mat& f, const Mat& g, int z) {
    Mat base = z >= 0 ? f : g;
    Mat out = Mat::identity(f.rows());
    for (int i = 0; i < std::abs(z); ++i) out = out * base;
    return out;
}

using Functional = std::map<Square, Vec>;

Scalar eval_basis(const Functional& f, const Square& k, size_t i) {
    auto it = f.find(k);
    if (it == f.end() || i >= it->second.size()) return Scalar(0);
    return it->second[i];
}

}  // namespace

// ---- construction and verification ---------------------------------------------

BigradedSpace empty_space(const PartialHopfData& d) {
    BigradedSpace s;
    for (int k = 0; k < d.num_objects(); ++k) s.objects.push_back(k);
    return s;
}

Corep trivial_corep(const PartialHopfData& d) {
    Corep u;
    u.space = unit_space(d);
    for (auto& [km, v] : d.unit) {
        Square k{km.first, km.first, km.second, km.second};
        size_t n = d.dim(k);
        if (!n || vec_zero(v)) continue;
        std::vector<Mat> xs(n, Mat(1, 1));
        for (size_t i = 0; i < n && i < v.size(); ++i) xs[i](0, 0) = v[i];
        u.blocks[k] = xs;
    }
    return u;
}

Report verify_corep(const PartialHopfData& d, const Corep& x) {
    Report rep;
    const BigradedSpace& v = x.space;
    for (auto& [k, xs] : x.blocks) {
        bool ok = (d.dims.count(k) && xs.size() == d.dim(k)) || all_zero(xs);
        for (auto& m : xs) ok = ok && m.rows() == v.dim(k.k, k.l) && m.cols() == v.dim(k.m, k.n);
        rep.check("corep.grading", ok, blocks_witness(d, {k}));
    }
    if (!rep.ok()) return rep;

    int no = d.num_objects();
    for (auto& [kl, dkl] : v.dims)
        for (auto& [mn, dmn] : v.dims) {
            Square k{kl.first, kl.second, mn.first, mn.second};
            size_t dk = d.dim(k);
            for (int p = 0; p < no; ++p)
                for (int q = 0; q < no; ++q) {
                    if (!dk && !v.dim(p, q)) continue;
                    Square left{k.k, k.l, p, q}, right{p, q, k.m, k.n};
                    size_t dl = d.dim(left), dr = d.dim(right);
                    Mat c = comult_matrix(d, k, p, q);
                    bool ok = true;
                    if (!dk && !dl && !dr) continue;
                    // coefficients outside the data must act as zero
                    for (size_t s = 0; s < dl && ok; ++s)
                        for (size_t t = 0; t < dr && ok; ++t) {
                            Mat lhs(dkl, dmn);
                            for (size_t i = 0; i < dk; ++i)
                                if (!c(s * dr + t, i).is_zero()) lhs = lhs + coef(x, k, i) * c(s * dr + t, i);
                            Mat rhs = coef(x, left, s) * coef(x, right, t);
                            ok = lhs == rhs;
                        }
                    rep.check("corep.comultiplication", ok, blocks_witness(d, {k, left, right}));
                }
        }

    for (auto& [kl, dv] : v.dims) {
        Square k{kl.first, kl.second, kl.first, kl.second};
        Mat s(dv, dv);
        auto it = d.counit.find(k);
        if (it != d.counit.end())
            for (size_t i = 0; i < it->second.size(); ++i)
                if (!it->second[i].is_zero()) s = s + coef(x, k, i) * it->second[i];
        rep.check("corep.counit", s == Mat::identity(dv), blocks_witness(d, {k}));
    }

    SupportTemplate st;
    for (auto& [kl, dv] : v.dims) st.support.insert(kl);
    rep.check("corep.rcf", check_rcf(st), json::object());
    return rep;
}

Report verify_unitary(const PartialHopfData& d, const Corep& x) {
    Report rep;
    for (auto& [k, dk] : d.dims) {
        size_t r = x.space.dim(k.n, k.m), c = x.space.dim(k.l, k.k);
        if (!r || !c) continue;
        Square cb = circ_bullet(k), ci = circ(k);
        std::vector<Mat> src, adj;
        for (size_t i = 0; i < d.dim(cb); ++i) src.push_back(coef(x, cb, i));
        for (size_t i = 0; i < d.dim(ci); ++i) adj.push_back(coef(x, ci, i).adjoint());
        auto z = transform(antipode_block(d, cb), src, r, c);
        auto s = transform(star_block(d, ci), adj, r, c);
        rep.check("corep.unitary", z == s, blocks_witness(d, {k}));
    }
    return rep;
}

RegularCorep regular_corep(const PartialHopfData& d, const std::map<Pair, std::vector<Elem>>& basis) {
    RegularCorep out;
    out.corep.space = empty_space(d);
    std::map<Pair, ColumnBasis> cbs;
    for (auto& [kl, vs] : basis) {
        if (vs.empty()) continue;
        out.basis[kl] = vs;
        out.corep.space.set(kl.first, kl.second, vs.size());
        cbs[kl] = column_basis(d, kl.first, kl.second, vs);
        if (rank(cbs[kl].b) != vs.size()) throw Error("dependent-basis", "basis vectors are dependent");
    }
    int no = d.num_objects();
    for (auto& [mn, vs] : out.basis) {
        size_t nv = vs.size();
        for (int k = 0; k < no; ++k)
            for (int l = 0; l < no; ++l) {
                Square kk{k, l, mn.first, mn.second};
                size_t dk = d.dim(kk);
                if (!dk) continue;
                // first legs of Delta_kl(v_j), one element per (i, j)
                std::vector<Elem> img(dk * nv);
                bool any = false;
                for (size_t j = 0; j < nv; ++j)
                    for (auto& [src, vec] : vs[j]) {
                        if (vec_zero(vec)) continue;
                        Square left{src.k, src.l, k, l};
                        size_t dl = d.dim(left);
                        if (!dl) continue;
                        Vec w = comult_matrix(d, src, k, l).apply(vec);
                        for (size_t s = 0; s < dl; ++s)
                            for (size_t i = 0; i < dk; ++i) {
                                const Scalar& c = w[s * dk + i];
                                if (c.is_zero()) continue;
                                Vec& slot = img[i * nv + j][left];
                                if (slot.empty()) slot.assign(dl, Scalar(0));
                                slot[s] += c;
                                any = true;
                            }
                    }
                if (!any) continue;
                auto cit = cbs.find({k, l});
                if (cit == cbs.end()) throw Error("not-invariant", "regular subspace is not invariant at " + kk.str());
                const ColumnBasis& cb = cit->second;
                Mat rhs(cb.rows, dk * nv);
                for (size_t c = 0; c < img.size(); ++c)
                    for (auto& [blk, vec] : img[c]) {
                        auto oit = cb.offset.find(blk);
                        if (oit == cb.offset.end()) throw Error("not-invariant", "image outside column");
                        for (size_t s = 0; s < vec.size(); ++s) rhs(oit->second + s, c) = vec[s];
                    }
                auto sol = solve(cb.b, rhs);
                if (!sol) throw Error("not-invariant", "regular subspace is not invariant at " + kk.str());
                std::vector<Mat> xs(dk, Mat(cb.b.cols(), nv));
                for (size_t i = 0; i < dk; ++i)
                    for (size_t j = 0; j < nv; ++j)
                        for (size_t r = 0; r < cb.b.cols(); ++r) xs[i](r, j) = (*sol)(r, i * nv + j);
                out.corep.blocks[kk] = xs;
            }
    }
    return out;
}

RegularCorep regular_corep_from_element(const PartialHopfData& d, const Square& k, const Vec& a) {
    if (vec_zero(a)) throw Error("zero-element", "regular corepresentation of the zero element");
    if (a.size() != d.dim(k)) throw Error("grading", "element does not match its block");
    std::map<Pair, std::vector<Elem>> basis;
    int no = d.num_objects();
    for (int p = 0; p < no; ++p)
        for (int q = 0; q < no; ++q) {
            Square left{k.k, k.l, p, q}, right{p, q, k.m, k.n};
            size_t dl = d.dim(left), dr = d.dim(right);
            if (!dl || !dr) continue;
            Vec w = comult_matrix(d, k, p, q).apply(a);
            Mat m(dl, dr);
            for (size_t s = 0; s < dl; ++s)
                for (size_t t = 0; t < dr; ++t) m(s, t) = w[s * dr + t];
            Echelon e = rref(m);
            for (size_t piv : e.pivots) basis[{p, q}].push_back(Elem{{left, m.col(piv)}});
        }
    return regular_corep(d, basis);
}

RegularCorep full_regular_corep(const PartialHopfData& d) {
    std::map<Pair, std::vector<Elem>> basis;
    for (auto& [k, n] : d.dims)
        for (size_t i = 0; i < n; ++i) basis[{k.m, k.n}].push_back(basis_elem(d, k, i));
    return regular_corep(d, basis);
}

Corep tensor(const PartialHopfData& d, const Corep& x, const Corep& y) {
    Corep out;
    out.space = balanced_tensor(x.space, y.space);
    for (auto& [kx, xs] : x.blocks)
        for (auto& [ky, ys] : y.blocks) {
            if (kx.l != ky.k || kx.n != ky.m) continue;
            Square k{kx.k, ky.l, kx.m, ky.n};
            size_t dk = d.dim(k);
            size_t rows = out.space.dim(k.k, k.l), cols = out.space.dim(k.m, k.n);
            if (!rows || !cols) continue;
            Mat mm = mult_matrix(d, kx, ky);
            size_t r0 = balanced_offset(x.space, y.space, kx.k, kx.l, ky.l);
            size_t c0 = balanced_offset(x.space, y.space, kx.m, kx.n, ky.n);
            for (size_t i = 0; i < xs.size(); ++i) {
                if (xs[i].is_zero()) continue;
                for (size_t j = 0; j < ys.size(); ++j) {
                    if (ys[j].is_zero()) continue;
                    if (d.max_degree >= 0 && d.deg(kx, i) + d.deg(ky, j) > d.max_degree)
                        throw Error("truncated", "tensor product exceeds the truncation degree");
                    if (!dk) continue;
                    Mat kr = kron(xs[i], ys[j]);
                    auto& dst = out.blocks[k];
                    if (dst.empty()) dst.assign(dk, Mat(rows, cols));
                    for (size_t r = 0; r < dk; ++r) {
                        const Scalar& c = mm(r, i * ys.size() + j);
                        if (!c.is_zero()) add_into(dst[r], kr, r0, c0, c);
                    }
                }
            }
        }
    return out;
}

Corep direct_sum(const Corep& x, const Corep& y) {
    if (x.space.objects != y.space.objects) throw Error("object-set", "direct sum over different object sets");
    Corep out;
    out.space = same_objects(x.space);
    std::set<Pair> pairs;
    for (auto& [kl, n] : x.space.dims) pairs.insert(kl);
    for (auto& [kl, n] : y.space.dims) pairs.insert(kl);
    for (auto& kl : pairs) out.space.set(kl.first, kl.second, x.space.dim(kl.first, kl.second) + y.space.dim(kl.first, kl.second));
    std::set<Square> keys;
    for (auto& [k, xs] : x.blocks) keys.insert(k);
    for (auto& [k, ys] : y.blocks) keys.insert(k);
    for (auto& k : keys) {
        size_t n = 0;
        if (auto it = x.blocks.find(k); it != x.blocks.end()) n = std::max(n, it->second.size());
        if (auto it = y.blocks.find(k); it != y.blocks.end()) n = std::max(n, it->second.size());
        size_t xr = x.space.dim(k.k, k.l), xc = x.space.dim(k.m, k.n);
        std::vector<Mat> out_k(n, Mat(out.space.dim(k.k, k.l), out.space.dim(k.m, k.n)));
        for (size_t i = 0; i < n; ++i) {
            add_into(out_k[i], coef(x, k, i), 0, 0, Scalar(1));
            add_into(out_k[i], coef(y, k, i), xr, xc, Scalar(1));
        }
        out.blocks[k] = out_k;
    }
    return out;
}

DualCorep left_dual(const PartialHopfData& d, const Corep& x) {
    DualCorep out;
    Corep& h = out.dual;
    h.space = same_objects(x.space);
    for (auto& [kl, n] : x.space.dims) h.space.set(kl.second, kl.first, n);
    for (auto& [k, dk] : d.dims) {
        Square src{k.n, k.m, k.l, k.k};
        auto it = x.blocks.find(src);
        if (it == x.blocks.end()) continue;
        std::vector<Mat> tr;
        for (auto& m : it->second) tr.push_back(m.transpose());
        auto xs = transform(antipode_block(d, src), tr, h.space.dim(k.k, k.l), h.space.dim(k.m, k.n));
        if (!all_zero(xs)) h.blocks[k] = xs;
    }

    BigradedSpace u = unit_space(d);
    BigradedSpace hx = balanced_tensor(h.space, x.space), xh = balanced_tensor(x.space, h.space);
    for (int k : u.objects) {
        Mat ev(1, hx.dim(k, k)), coev(xh.dim(k, k), 1);
        for (int l : x.space.objects) {
            size_t n = x.space.dim(l, k);
            size_t o = n ? balanced_offset(h.space, x.space, k, l, k) : 0;
            for (size_t i = 0; i < n; ++i) ev(0, o + i * n + i) = Scalar(1);
            size_t m = x.space.dim(k, l);
            size_t oc = m ? balanced_offset(x.space, h.space, k, l, k) : 0;
            for (size_t i = 0; i < m; ++i) coev(oc + i * m + i, 0) = Scalar(1);
        }
        out.ev.blocks[{k, k}] = ev;
        out.coev.blocks[{k, k}] = coev;
    }

    Report& rep = out.report;
    rep.merge(verify_corep(d, h), "dual.");
    Corep tr = trivial_corep(d);
    rep.check("dual.ev-morphism", is_morphism(d, out.ev, tensor(d, h, x), tr), json::object());
    rep.check("dual.coev-morphism", is_morphism(d, out.coev, tr, tensor(d, x, h)), json::object());

    // X = U (x) X -> (X (x) X^) (x) X -> X (x) (X^ (x) X) -> X (x) U = X
    BlockMap idx = identity_map(x.space), idh = identity_map(h.space);
    BlockMap s1 = tensor_maps(out.coev, idx, u, xh, x.space, x.space);
    BlockMap s2 = associator(x.space, h.space, x.space);
    BlockMap s3 = tensor_maps(idx, out.ev, x.space, x.space, hx, u);
    BlockMap left = compose_maps(s3, compose_maps(s2, s1));
    rep.check("dual.snake-left", bm_equal(left, idx, x.space, x.space), json::object());

    // X^ = X^ (x) U -> X^ (x) (X (x) X^) -> (X^ (x) X) (x) X^ -> U (x) X^ = X^
    BlockMap t1 = tensor_maps(idh, out.coev, h.space, h.space, u, xh);
    BlockMap t2 = bm_transpose(associator(h.space, x.space, h.space));
    BlockMap t3 = tensor_maps(out.ev, idh, hx, u, h.space, h.space);
    BlockMap right = compose_maps(t3, compose_maps(t2, t1));
    rep.check("dual.snake-right", bm_equal(right, idh, h.space, h.space), json::object());
    return out;
}

Corep bidual(const PartialHopfData& d, const Corep& x) {
    Corep out;
    out.space = x.space;
    for (auto& [k, xs] : x.blocks) {
        Mat s2 = antipode_block(d, circ_bullet(k)) * antipode_block(d, k);
        auto ys = transform(s2, xs, x.space.dim(k.k, k.l), x.space.dim(k.m, k.n));
        if (!all_zero(ys)) out.blocks[k] = ys;
    }
    return out;
}

// ---- generalized inverse -----------------------------------------------------------

TotalCorep total_form(const Corep& x) {
    TotalCorep t;
    for (auto& [k, xs] : x.blocks)
        if (!all_zero(xs)) t[{k, {k.k, k.l}, {k.m, k.n}}] = xs;
    return t;
}

TotalCorep generalized_inverse(const PartialHopfData& d, const Corep& x) {
    TotalCorep z;
    for (auto& [k, dk] : d.dims) {
        Square src = circ_bullet(k);
        auto it = x.blocks.find(src);
        if (it == x.blocks.end()) continue;
        size_t r = x.space.dim(k.n, k.m), c = x.space.dim(k.l, k.k);
        auto zs = transform(antipode_block(d, src), it->second, r, c);
        if (!all_zero(zs)) z[{k, {k.n, k.m}, {k.l, k.k}}] = zs;
    }
    return z;
}

TotalCorep total_product(const PartialHopfData& d, const TotalCorep& a, const TotalCorep& b) {
    TotalCorep out;
    for (auto& [ka, as] : a)
        for (auto& [kb, bs] : b) {
            auto& [sa, oa, ia] = ka;
            auto& [sb, ob, ib] = kb;
            if (ia != ob) continue;
            auto k = compose_squares(sa, sb, Direction::horizontal);
            if (!k) continue;
            size_t dk = d.dim(*k);
            if (!dk || as.empty() || bs.empty()) continue;
            Mat mm = mult_matrix(d, sa, sb);
            size_t rows = as[0].rows(), cols = bs[0].cols();
            auto& dst = out[{*k, oa, ib}];
            if (dst.empty()) dst.assign(dk, Mat(rows, cols));
            for (size_t i = 0; i < as.size(); ++i) {
                if (as[i].is_zero()) continue;
                for (size_t j = 0; j < bs.size(); ++j) {
                    if (bs[j].is_zero()) continue;
                    if (d.max_degree >= 0 && d.deg(sa, i) + d.deg(sb, j) > d.max_degree)
                        throw Error("truncated", "product exceeds the truncation degree");
                    Mat p = as[i] * bs[j];
                    for (size_t r = 0; r < dk; ++r) {
                        const Scalar& c = mm(r, i * bs.size() + j);
                        if (!c.is_zero()) dst[r] = dst[r] + p * c;
                    }
                }
            }
        }
    return out;
}

bool total_equal(const TotalCorep& a, const TotalCorep& b) {
    std::set<std::tuple<Square, Pair, Pair>> keys;
    for (auto& [k, v] : a) keys.insert(k);
    for (auto& [k, v] : b) keys.insert(k);
    for (auto& k : keys) {
        auto ia = a.find(k), ib = b.find(k);
        bool za = ia == a.end() || all_zero(ia->second);
        bool zb = ib == b.end() || all_zero(ib->second);
        if (za && zb) continue;
        if (za || zb || ia->second != ib->second) return false;
    }
    return true;
}

Report verify_generalized_inverse(const PartialHopfData& d, const Corep& x) {
    Report rep;
    TotalCorep xt = total_form(x), z = generalized_inverse(d, x);
    TotalCorep xz = total_product(d, xt, z), zx = total_product(d, z, xt);

    // sum_n X(k l; m n) Z(l k'; n m) = delta_{k k'} 1(k|m) (x) id on V_kl
    TotalCorep exz, ezx;
    for (auto& [km, u] : d.unit) {
        auto [k, m] = km;
        Square s{k, k, m, m};
        if (!d.dim(s) || vec_zero(u)) continue;
        for (auto& [pq, n] : x.space.dims) {
            if (pq.first == k) {
                std::vector<Mat> v(u.size());
                for (size_t r = 0; r < u.size(); ++r) v[r] = Mat::identity(n) * u[r];
                exz[{s, pq, pq}] = v;
            }
            if (pq.second == m) {
                std::vector<Mat> v(u.size());
                for (size_t r = 0; r < u.size(); ++r) v[r] = Mat::identity(n) * u[r];
                ezx[{s, pq, pq}] = v;
            }
        }
    }
    rep.check("inverse.right", total_equal(xz, exz), json::object());
    rep.check("inverse.left", total_equal(zx, ezx), json::object());
    rep.check("inverse.xzx", total_equal(total_product(d, xz, xt), xt), json::object());
    rep.check("inverse.zxz", total_equal(total_product(d, zx, z), z), json::object());
    return rep;
}

// ---- morphisms ---------------------------------------------------------------------

BlockMap identity_map(const BigradedSpace& v) {
    BlockMap t;
    for (auto& [kl, n] : v.dims) t.blocks[kl] = Mat::identity(n);
    return t;
}

bool is_morphism(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y) {
    for (auto& [k, dk] : d.dims) {
        size_t wo = y.space.dim(k.k, k.l), vi = x.space.dim(k.m, k.n);
        if (!wo || !vi) continue;
        Mat tkl = block_of(t, k.k, k.l, wo, x.space.dim(k.k, k.l));
        Mat tmn = block_of(t, k.m, k.n, y.space.dim(k.m, k.n), vi);
        for (size_t i = 0; i < dk; ++i)
            if (tkl * coef(x, k, i) != coef(y, k, i) * tmn) return false;
    }
    return true;
}

std::vector<BlockMap> intertwiners(const PartialHopfData& d, const Corep& x, const Corep& y) {
    std::map<Pair, size_t> off;
    size_t nu = 0;
    for (auto& [kl, dv] : x.space.dims) {
        size_t dw = y.space.dim(kl.first, kl.second);
        if (!dw) continue;
        off[kl] = nu;
        nu += dw * dv;
    }
    if (!nu) return {};
    std::vector<Vec> rows;
    for (auto& [k, dk] : d.dims) {
        size_t wo = y.space.dim(k.k, k.l), vi = x.space.dim(k.m, k.n);
        if (!wo || !vi) continue;
        size_t vo = x.space.dim(k.k, k.l), wi = y.space.dim(k.m, k.n);
        auto okl = off.find({k.k, k.l}), omn = off.find({k.m, k.n});
        for (size_t i = 0; i < dk; ++i) {
            Mat xi = coef(x, k, i), yi = coef(y, k, i);
            if (xi.is_zero() && yi.is_zero()) continue;
            for (size_t a = 0; a < wo; ++a)
                for (size_t b = 0; b < vi; ++b) {
                    Vec r(nu);
                    bool any = false;
                    if (okl != off.end())
                        for (size_t c = 0; c < vo; ++c)
                            if (!xi(c, b).is_zero()) {
                                r[okl->second + a * vo + c] += xi(c, b);
                                any = true;
                            }
                    if (omn != off.end())
                        for (size_t c = 0; c < wi; ++c)
                            if (!yi(a, c).is_zero()) {
                                r[omn->second + c * vi + b] -= yi(a, c);
                                any = true;
                            }
                    if (any && !vec_zero(r)) rows.push_back(std::move(r));
                }
        }
    }
    Mat sys(rows.size(), nu);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < nu; ++j) sys(i, j) = rows[i][j];
    Mat ns = rows.empty() ? Mat::identity(nu) : nullspace(sys);
    std::vector<BlockMap> out;
    for (size_t c = 0; c < ns.cols(); ++c) {
        BlockMap t;
        for (auto& [kl, o] : off) {
            size_t dv = x.space.dim(kl.first, kl.second), dw = y.space.dim(kl.first, kl.second);
            Mat m(dw, dv);
            for (size_t a = 0; a < dw; ++a)
                for (size_t b = 0; b < dv; ++b) m(a, b) = ns(o + a * dv + b, c);
            t.blocks[kl] = m;
        }
        out.push_back(t);
    }
    return out;
}

BlockMap average_check(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y, int m, int n) {
    BlockMap out;
    Mat tmn = block_of(t, m, n, y.space.dim(m, n), x.space.dim(m, n));
    for (auto& [kl, dv] : x.space.dims) {
        auto [k, l] = kl;
        size_t dw = y.space.dim(k, l);
        if (!dw) continue;
        Mat acc(dw, dv);
        Square ky{k, l, m, n}, kz{n, m, l, k}, kx{m, n, k, l};
        auto yit = y.blocks.find(ky);
        auto xit = x.blocks.find(kx);
        if (yit != y.blocks.end() && xit != x.blocks.end() && !tmn.is_zero()) {
            auto z = transform(antipode_block(d, ky), yit->second, dw, y.space.dim(m, n));
            Mat mm = mult_matrix(d, kz, kx);
            Square tgt{n, n, l, l};
            for (size_t r = 0; r < z.size(); ++r)
                for (size_t s = 0; s < xit->second.size(); ++s) {
                    Vec col(mm.rows());
                    for (size_t a = 0; a < mm.rows(); ++a) col[a] = mm(a, r * xit->second.size() + s);
                    Scalar ph = phi_dot(d, tgt, col);
                    if (!ph.is_zero()) acc = acc + z[r] * tmn * xit->second[s] * ph;
                }
        }
        out.blocks[kl] = acc;
    }
    return out;
}

BlockMap average_hat(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y, int m, int n) {
    BlockMap out;
    Mat tmn = block_of(t, m, n, y.space.dim(m, n), x.space.dim(m, n));
    for (auto& [kl, dv] : x.space.dims) {
        auto [k, l] = kl;
        size_t dw = y.space.dim(k, l);
        if (!dw) continue;
        Mat acc(dw, dv);
        Square ky{k, l, m, n}, kz{l, k, n, m}, kx{m, n, k, l};
        auto yit = y.blocks.find(ky);
        auto xit = x.blocks.find(kx);
        if (yit != y.blocks.end() && xit != x.blocks.end() && !tmn.is_zero()) {
            auto z = transform(antipode_block(d, kx), xit->second, x.space.dim(m, n), dv);
            Mat mm = mult_matrix(d, ky, kz);
            Square tgt{k, k, m, m};
            for (size_t s = 0; s < yit->second.size(); ++s)
                for (size_t r = 0; r < z.size(); ++r) {
                    Vec col(mm.rows());
                    for (size_t a = 0; a < mm.rows(); ++a) col[a] = mm(a, s * z.size() + r);
                    Scalar ph = phi_dot(d, tgt, col);
                    if (!ph.is_zero()) acc = acc + yit->second[s] * tmn * z[r] * ph;
                }
        }
        out.blocks[kl] = acc;
    }
    return out;
}

Corep restrict_corep(const Corep& x, const BlockMap& e, const BlockMap& p, const BigradedSpace& w) {
    Corep out;
    out.space = w;
    for (auto& [k, xs] : x.blocks) {
        size_t r = w.dim(k.k, k.l), c = w.dim(k.m, k.n);
        if (!r || !c) continue;
        Mat pk = block_of(p, k.k, k.l, r, x.space.dim(k.k, k.l));
        Mat em = block_of(e, k.m, k.n, x.space.dim(k.m, k.n), c);
        std::vector<Mat> ys;
        for (auto& m : xs) ys.push_back(pk * m * em);
        if (!all_zero(ys)) out.blocks[k] = ys;
    }
    return out;
}

Decomposition decompose(const PartialHopfData& d, const Corep& x) {
    Decomposition dec;
    split(d, x, identity_map(x.space), identity_map(x.space), dec.summands);
    for (size_t i = 0; i < dec.summands.size(); ++i) {
        Summand& s = dec.summands[i];
        bool found = false;
        for (size_t c = 0; c < dec.representative.size() && !found; ++c) {
            const Summand& r = dec.summands[dec.representative[c]];
            if (r.corep.space.dims != s.corep.space.dims) continue;
            if (!intertwiners(d, r.corep, s.corep).empty()) {
                s.cls = c;
                ++dec.multiplicity[c];
                found = true;
            }
        }
        if (!found) {
            s.cls = dec.representative.size();
            dec.representative.push_back(i);
            dec.multiplicity.push_back(1);
        }
    }
    return dec;
}

Elem matrix_coefficient(const Corep& x, const Square& k, size_t i, size_t j) {
    Elem e;
    auto it = x.blocks.find(k);
    if (it == x.blocks.end()) return e;
    Vec v(it->second.size());
    for (size_t r = 0; r < v.size(); ++r) v[r] = it->second[r](i, j);
    if (!vec_zero(v)) e[k] = v;
    return e;
}

// ---- unitary irreducibles and orthogonality -------------------------------------------

UnitaryIrrep make_unitary_irrep(const PartialHopfData& d, const RegularCorep& r) {
    UnitaryIrrep u;
    std::map<Pair, std::vector<Elem>> basis;
    for (auto& [mn, vs] : r.basis) {
        std::vector<Elem> ortho;
        for (auto& v : vs) {
            Elem w = v;
            for (auto& o : ortho) w = elem_add(w, elem_scale(o, -inner(d, o, v)));
            Scalar nn = inner(d, w, w);
            if (real_sign(nn) <= 0) throw Error("not-positive", "integral is not positive on the corepresentation");
            auto s = try_sqrt(nn);
            if (!s) throw Error("unsupported", "norm outside the scalar tower: " + nn.str());
            ortho.push_back(elem_scale(w, s->inv()));
        }
        basis[mn] = ortho;
    }
    u.reg = regular_corep(d, basis);
    const Corep& x = u.reg.corep;
    auto fs = intertwiners(d, x, bidual(d, x));
    if (fs.size() != 1) throw Error("not-irreducible", "bidual intertwiner space is not one-dimensional");
    BlockMap f = fs[0];
    Scalar tr;
    for (auto& [kl, m] : f.blocks)
        if (!m.is_zero()) {
            tr = trace(m);
            break;
        }
    if (tr.is_zero()) throw Error("not-positive", "bidual intertwiner has zero trace");
    f = bm_scale(f, tr.inv());
    BlockMap g;
    for (auto& [kl, m] : f.blocks) {
        auto p = psd_test(m);
        if (!p.psd) throw Error("not-positive", "bidual intertwiner is not positive");
        u.numeric = u.numeric || p.numeric;
        auto inv = inverse(m);
        if (!inv) throw Error("not-positive", "bidual intertwiner is singular");
        g.blocks[kl] = *inv;
    }
    // d_F from the first row in the support, d_G from the first column
    int m0 = x.space.dims.begin()->first.first, n0 = x.space.dims.begin()->first.second;
    Scalar df, dg;
    for (auto& [kl, m] : f.blocks)
        if (kl.first == m0) df += trace(m);
    for (auto& [kl, m] : g.blocks)
        if (kl.second == n0) dg += trace(m);
    Scalar ratio = dg / df;
    auto t = try_sqrt(ratio);
    if (!t) throw Error("unsupported", "character scaling outside the scalar tower: " + ratio.str());
    u.f = bm_scale(f, *t);
    u.g = bm_scale(g, t->inv());
    u.d_f = df * *t;
    u.d_g = dg / *t;
    return u;
}

std::vector<UnitaryIrrep> unitary_irreducibles(const PartialHopfData& d) {
    std::vector<UnitaryIrrep> out;
    for (auto& r : regular_irreducibles(d)) out.push_back(make_unitary_irrep(d, r));
    return out;
}

Report peter_weyl_report(const PartialHopfData& d, const std::vector<UnitaryIrrep>& irreps) {
    Report rep;
    for (auto& [k, dk] : d.dims) {
        std::vector<Vec> cols;
        for (auto& u : irreps) {
            const Corep& x = u.reg.corep;
            size_t r = x.space.dim(k.k, k.l), c = x.space.dim(k.m, k.n);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < c; ++j) {
                    Vec v(dk);
                    for (size_t s = 0; s < dk; ++s) v[s] = coef(x, k, s)(i, j);
                    cols.push_back(v);
                }
        }
        bool ok = cols.size() == dk && rank(hstack(cols, dk)) == dk;
        json w = blocks_witness(d, {k});
        w["coefficients"] = cols.size();
        rep.check("peter-weyl.bijective", ok, w);
    }
    return rep;
}

Report schur_report(const PartialHopfData& d, const UnitaryIrrep& xu, const UnitaryIrrep& yu, bool same) {
    Report rep;
    const Corep& x = xu.reg.corep;
    const Corep& y = yu.reg.corep;
    for (auto& [k, dk] : d.dims) {
        size_t xr = x.space.dim(k.k, k.l), xc = x.space.dim(k.m, k.n);
        size_t yr = y.space.dim(k.k, k.l), yc = y.space.dim(k.m, k.n);
        if (!xr || !xc || !yr || !yc) continue;
        if (!same) {
            bool ok = true;
            for (size_t i = 0; i < xr && ok; ++i)
                for (size_t j = 0; j < xc && ok; ++j) {
                    Elem a = matrix_coefficient(x, k, i, j);
                    for (size_t p = 0; p < yr && ok; ++p)
                        for (size_t q = 0; q < yc && ok; ++q) {
                            Elem b = matrix_coefficient(y, k, p, q);
                            ok = integral(d, multiply(d, star(d, b), a)).is_zero() &&
                                 integral(d, multiply(d, a, star(d, b))).is_zero();
                        }
                }
            rep.check("schur.inequivalent", ok, blocks_witness(d, {k}));
            continue;
        }
        Scalar dgn, dfm;
        for (auto& [kl, g] : xu.g.blocks)
            if (kl.second == k.n) dgn += trace(g);
        for (auto& [kl, f] : xu.f.blocks)
            if (kl.first == k.m) dfm += trace(f);
        Mat gkl = block_of(xu.g, k.k, k.l, xr, xr), fmn = block_of(xu.f, k.m, k.n, xc, xc);
        bool left = true, right = true;
        for (size_t i = 0; i < xr; ++i)
            for (size_t j = 0; j < xc; ++j) {
                Elem a = matrix_coefficient(x, k, i, j);
                for (size_t p = 0; p < xr; ++p)
                    for (size_t q = 0; q < xc; ++q) {
                        Elem b = matrix_coefficient(x, k, p, q);
                        Scalar l = integral(d, multiply(d, star(d, b), a));
                        Scalar r = integral(d, multiply(d, a, star(d, b)));
                        Scalar el = q == j ? gkl(i, p) / dgn : Scalar(0);
                        Scalar er = i == p ? fmn(q, j) / dfm : Scalar(0);
                        left = left && l == el;
                        right = right && r == er;
                    }
            }
        rep.check("schur.left", left, blocks_witness(d, {k}));
        rep.check("schur.right", right, blocks_witness(d, {k}));

        // (phi (x) id)(X^-1(l k; n m) X(k l; m n)) = Tr(G_kl)/d_G id, and the F counterpart
        Square kz{k.l, k.k, k.n, k.m};
        auto zs = transform(antipode_block(d, circ_bullet(kz)), [&] {
            std::vector<Mat> v;
            for (size_t i = 0; i < d.dim(circ_bullet(kz)); ++i) v.push_back(coef(x, circ_bullet(kz), i));
            return v;
        }(), xc, xr);
        Mat mzx = mult_matrix(d, kz, k), mxz = mult_matrix(d, k, kz);
        Mat sl(xc, xc), sr(xr, xr);
        Square tl{k.l, k.l, k.n, k.n}, tr{k.k, k.k, k.m, k.m};
        for (size_t a = 0; a < zs.size(); ++a)
            for (size_t b = 0; b < dk; ++b) {
                Mat xb = coef(x, k, b);
                Scalar pl = phi_dot(d, tl, mzx.col(a * dk + b));
                if (!pl.is_zero()) sl = sl + zs[a] * xb * pl;
                Scalar pr = phi_dot(d, tr, mxz.col(b * zs.size() + a));
                if (!pr.is_zero()) sr = sr + xb * zs[a] * pr;
            }
        rep.check("schur.trace-left", sl == Mat::identity(xc) * (trace(gkl) / xu.d_g), blocks_witness(d, {k}));
        rep.check("schur.trace-right", sr == Mat::identity(xr) * (trace(fmn) / xu.d_f), blocks_witness(d, {k}));
    }
    if (same) {
        std::map<int, Scalar> dg, df;
        for (auto& [kl, g] : xu.g.blocks) dg[kl.second] += trace(g);
        for (auto& [kl, f] : xu.f.blocks) df[kl.first] += trace(f);
        bool ok = !xu.d_g.is_zero() && xu.d_g == xu.d_f;
        for (auto& [n, v] : dg) ok = ok && v == xu.d_g;
        for (auto& [m, v] : df) ok = ok && v == xu.d_f;
        rep.check("schur.dimensions", ok, {{"d_F", xu.d_f.str()}, {"d_G", xu.d_g.str()}});
        bool pos = true;
        for (auto& [kl, f] : xu.f.blocks) pos = pos && psd_test(f).psd;
        rep.check("schur.positive", pos, json::object());
    }
    return rep;
}

json schur_table(const PartialHopfData& d, const UnitaryIrrep& xu) {
    const Corep& x = xu.reg.corep;
    json out = json::object();
    for (auto& [k, dk] : d.dims) {
        size_t r = x.space.dim(k.k, k.l), c = x.space.dim(k.m, k.n);
        if (!r || !c) continue;
        Mat t(r * c, r * c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                for (size_t p = 0; p < r; ++p)
                    for (size_t q = 0; q < c; ++q)
                        t(i * c + j, p * c + q) = integral(
                            d, multiply(d, star(d, matrix_coefficient(x, k, p, q)), matrix_coefficient(x, k, i, j)));
        out[d.key(k)] = matrix_json(t);
    }
    return out;
}

// ---- characters ------------------------------------------------------------------------

Scalar apply_functional(const std::map<Square, Vec>& f, const Elem& a) {
    Scalar s;
    for (auto& [k, v] : a)
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) s += v[i] * eval_basis(f, k, i);
    return s;
}

Elem convolve_left(const PartialHopfData& d, const std::map<Square, Vec>& f, const Elem& a) {
    Elem out;
    int no = d.num_objects();
    for (int p = 0; p < no; ++p)
        for (int q = 0; q < no; ++q) {
            Tensor t = comultiply(d, a, p, q);
            out = elem_add(out, leg_functional(d, t, 1, [&](const Elem& e) { return apply_functional(f, e); }));
        }
    return out;
}

Elem convolve_right(const PartialHopfData& d, const Elem& a, const std::map<Square, Vec>& f) {
    Elem out;
    int no = d.num_objects();
    for (int r = 0; r < no; ++r)
        for (int s = 0; s < no; ++s) {
            Tensor t = comultiply(d, a, r, s);
            out = elem_add(out, leg_functional(d, t, 0, [&](const Elem& e) { return apply_functional(f, e); }));
        }
    return out;
}

json CharacterTable::to_json(const PartialHopfData& d) const {
    json out;
    json fz = json::object();
    for (int z : zs) {
        json blocks = json::object();
        for (auto& [k, v] : f.at(z)) blocks[d.key(k)] = scalar_array(v);
        fz[std::to_string(z)] = blocks;
    }
    out["f"] = fz;
    json irr = json::array();
    for (auto& u : irreps) {
        json fb = json::object(), gb = json::object();
        for (auto& [kl, m] : u.f.blocks) fb[d.labels[kl.first] + "," + d.labels[kl.second]] = matrix_json(m);
        for (auto& [kl, m] : u.g.blocks) gb[d.labels[kl.first] + "," + d.labels[kl.second]] = matrix_json(m);
        irr.push_back({{"F", fb}, {"G", gb}, {"d_F", u.d_f.str()}, {"d_G", u.d_g.str()}});
    }
    out["irreducibles"] = irr;
    out["report"] = report.to_json();
    return out;
}

CharacterTable woronowicz_characters(const PartialHopfData& d, const std::vector<UnitaryIrrep>& irreps,
                                     const std::vector<int>& zs) {
    CharacterTable table;
    table.zs = zs;
    table.irreps = irreps;
    std::set<int> need{0, 1, -1};
    for (int z : zs) {
        need.insert(z);
        need.insert(-z);
        for (int w : zs) need.insert(z + w);
    }
    // (f_z (x) id)(X(k l; k l)) = F_kl^z, solved against the Peter-Weyl basis of each diagonal block
    for (auto& [k, dk] : d.dims) {
        if (k.k != k.m || k.l != k.n) continue;
        std::vector<Vec> cols;
        std::vector<std::tuple<size_t, size_t, size_t>> idx;
        for (size_t a = 0; a < irreps.size(); ++a) {
            const Corep& x = irreps[a].reg.corep;
            size_t n = x.space.dim(k.k, k.l);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    Vec v(dk);
                    for (size_t s = 0; s < dk; ++s) v[s] = coef(x, k, s)(i, j);
                    cols.push_back(v);
                    idx.push_back({a, i, j});
                }
        }
        if (cols.size() != dk) throw Error("peter-weyl", "coefficients do not match block " + k.str());
        auto minv = inverse(hstack(cols, dk));
        if (!minv) throw Error("peter-weyl", "coefficients are dependent in block " + k.str());
        for (int z : need) {
            std::vector<Mat> pw;
            for (auto& u : irreps) {
                size_t n = u.reg.corep.space.dim(k.k, k.l);
                pw.push_back(n ? mat_power(block_of(u.f, k.k, k.l, n, n), block_of(u.g, k.k, k.l, n, n), z) : Mat());
            }
            Vec vals(dk);
            for (size_t c = 0; c < idx.size(); ++c) {
                auto [a, i, j] = idx[c];
                vals[c] = pw[a](i, j);
            }
            Vec fv(dk);
            for (size_t s = 0; s < dk; ++s)
                for (size_t c = 0; c < dk; ++c)
                    if (!vals[c].is_zero() && !(*minv)(c, s).is_zero()) fv[s] += vals[c] * (*minv)(c, s);
            table.f[z][k] = fv;
        }
    }
    for (int z : need) table.f[z];

    Report& rep = table.report;
    // (1) f_0 = counit
    bool ok = true;
    for (auto& [k, dk] : d.dims)
        for (size_t i = 0; i < dk; ++i) {
            Scalar e = counit(d, basis_elem(d, k, i));
            ok = ok && eval_basis(table.f[0], k, i) == e;
        }
    rep.check("characters.counit", ok, json::object());
    // unit values
    for (int z : need) {
        bool u = true;
        for (int l = 0; l < d.num_objects(); ++l)
            for (int n = 0; n < d.num_objects(); ++n) {
                Elem e = unit_elem(d, l, n);
                if (elem_zero(e)) continue;
                u = u && apply_functional(table.f[z], e) == Scalar(l == n ? 1 : 0);
            }
        rep.check("characters.units", u, {{"z", z}});
    }
    // convolution (f_z (x) f_w) Delta = f_{z+w}
    for (int z : zs)
        for (int w : zs) {
            bool c = true;
            for (auto& [k, dk] : d.dims)
                for (size_t i = 0; i < dk && c; ++i) {
                    Elem a = basis_elem(d, k, i);
                    Scalar lhs = apply_functional(table.f[w], convolve_right(d, a, table.f[z]));
                    c = lhs == eval_basis(table.f[z + w], k, i);
                }
            rep.check("characters.convolution", c, {{"z", z}, {"w", w}});
        }
    // antipode and conjugation
    for (int z : zs) {
        bool s = true, cj = true;
        for (auto& [k, dk] : d.dims)
            for (size_t i = 0; i < dk; ++i) {
                Elem a = basis_elem(d, k, i);
                s = s && apply_functional(table.f[z], antipode(d, a)) == eval_basis(table.f[-z], k, i);
                if (d.star) cj = cj && apply_functional(table.f[z], star(d, a)).conj() == eval_basis(table.f[-z], k, i);
            }
        rep.check("characters.antipode", s, {{"z", z}});
        if (d.star) rep.check("characters.conjugate", cj, {{"z", z}});
    }
    // multiplicativity on composable basis pairs
    for (int z : zs) {
        bool mlt = true;
        for (auto& [ka, da] : d.dims)
            for (auto& [kb, db] : d.dims) {
                if (ka.l != kb.k || ka.n != kb.m) continue;
                for (size_t i = 0; i < da && mlt; ++i)
                    for (size_t j = 0; j < db && mlt; ++j) {
                        Elem ab = multiply(d, basis_elem(d, ka, i), basis_elem(d, kb, j));
                        mlt = apply_functional(table.f[z], ab) == eval_basis(table.f[z], ka, i) * eval_basis(table.f[z], kb, j);
                    }
            }
        rep.check("characters.multiplicative", mlt, {{"z", z}});
    }
    // modular property and S^2 = f_-1 * . * f_1
    bool mod = true, s2 = true;
    for (auto& [ka, da] : d.dims)
        for (size_t i = 0; i < da; ++i) {
            Elem a = basis_elem(d, ka, i);
            Elem sig = convolve_left(d, table.f[1], convolve_right(d, a, table.f[1]));
            Elem sq = convolve_left(d, table.f[-1], convolve_right(d, a, table.f[1]));
            s2 = s2 && elem_equal(sq, antipode(d, antipode(d, a)));
            if (!d.integral) continue;
            for (auto& [kb, db] : d.dims)
                for (size_t j = 0; j < db && mod; ++j) {
                    Elem b = basis_elem(d, kb, j);
                    mod = integral(d, multiply(d, a, b)) == integral(d, multiply(d, b, sig));
                }
        }
    rep.check("characters.modular", mod, json::object());
    rep.check("characters.antipode-square", s2, json::object());
    // support on diagonal blocks holds by construction; growth in z is not machine-checked
    return table;
}

json corep_to_json(const PartialHopfData& d, const Corep& x) {
    json dims = json::array();
    for (auto& [kl, n] : x.space.dims) dims.push_back({d.labels[kl.first], d.labels[kl.second], n});
    json blocks = json::object();
    for (auto& [k, xs] : x.blocks) {
        json arr = json::array();
        for (auto& m : xs) arr.push_back(matrix_json(m));
        blocks[d.key(k)] = arr;
    }
    return {{"dims", dims}, {"blocks", blocks}};
}

// ---- reconstruction round trip --------------------------------------------------------

RoundtripResult roundtrip_check(const FiberData& f) {
    RoundtripResult out;
    Reconstruction rec = reconstruct(f);
    const PartialHopfData& d = rec.hopf;
    auto irr = regular_irreducibles(d);
    out.irreducible_count = irr.size();
    out.report.check("roundtrip.count", irr.size() == static_cast<size_t>(f.num_irreps()),
                     {{"found", irr.size()}, {"expected", f.num_irreps()}});

    // Which input irreducible owns the coefficients spanning each summand.
    std::vector<int> owner(irr.size(), -1);
    for (size_t c = 0; c < irr.size(); ++c) {
        std::set<int> seen;
        for (auto& [mn, vs] : irr[c].basis)
            for (auto& v : vs)
                for (auto& [k, vec] : v)
                    for (size_t i = 0; i < vec.size(); ++i)
                        if (!vec[i].is_zero()) seen.insert(rec.coeff.at(k).at(i).irrep);
        bool ok = seen.size() == 1;
        if (ok) owner[c] = *seen.begin();
        out.report.check("roundtrip.coefficients", ok, {{"summand", c}});
        if (!ok) continue;
        bool dims = true;
        for (int k = 0; k < f.num_objects(); ++k)
            for (int l = 0; l < f.num_objects(); ++l)
                dims = dims && irr[c].corep.space.dim(k, l) == f.dim(owner[c], k, l);
        out.report.check("roundtrip.dims", dims, {{"irrep", f.irreps[owner[c]].name}});
    }
    std::map<int, size_t> by_irrep;
    for (size_t c = 0; c < irr.size(); ++c)
        if (owner[c] >= 0) by_irrep[owner[c]] = c;
    out.report.check("roundtrip.bijective", by_irrep.size() == irr.size() && by_irrep.size() == static_cast<size_t>(f.num_irreps()),
                     json::object());
    if (!out.report.ok()) return out;

    std::map<std::tuple<int, int, int>, size_t> expected;
    for (auto& ch : f.channels) ++expected[{ch.b, ch.c, ch.a}];
    for (int b = 0; b < f.num_irreps(); ++b)
        for (int c = 0; c < f.num_irreps(); ++c) {
            Corep t = tensor(d, irr[by_irrep[b]].corep, irr[by_irrep[c]].corep);
            if (t.total_dim() == 0) continue;
            Decomposition dec = decompose(d, t);
            for (auto& s : dec.summands) {
                int match = -1;
                for (int a = 0; a < f.num_irreps() && match < 0; ++a) {
                    const Corep& r = irr[by_irrep[a]].corep;
                    if (r.space.dims == s.corep.space.dims && !intertwiners(d, r, s.corep).empty()) match = a;
                }
                out.report.check("roundtrip.fusion-known", match >= 0, {{"b", b}, {"c", c}});
                if (match >= 0) ++out.fusion[{b, c, match}];
            }
        }
    bool ok = out.fusion == expected;
    json w = json::array();
    if (!ok)
        for (auto& [key, n] : expected)
            if (out.fusion.count(key) == 0 || out.fusion[key] != n)
                w.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    out.report.check("roundtrip.fusion", ok, {{"mismatch", w}});
    return out;
}

}  // namespace pqg
