#include "pqg/presentations.hpp"

#include <climits>
#include <functional>
#include <set>

namespace pqg {

void NCPoly::add(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (auto& [w, c] : o.terms) add(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (auto& [w, c] : o.terms) add(w, -c);
    return *this;
}

NCPoly NCPoly::operator*(const Scalar& s) const {
    NCPoly r;
    if (s.is_zero()) return r;
    for (auto& [w, c] : terms) r.terms.emplace(w, c * s);
    return r;
}

Square letter_grade(const ReciprocalWalk& w, const Letter& l) {
    if (l.kind == Letter::unit) return {l.a, l.a, l.b, l.b};
    const WalkEdge& e = w.edges[l.a];
    const WalkEdge& f = w.edges[l.b];
    if (l.kind == Letter::u) return {e.src, e.tgt, f.src, f.tgt};
    return {e.tgt, e.src, f.tgt, f.src};
}

Square word_grade(const ReciprocalWalk& w, const Word& x) {
    if (x.empty()) throw Error("internal", "grade of the empty word");
    Square a = letter_grade(w, x.front()), b = letter_grade(w, x.back());
    return {a.k, b.l, a.m, b.n};
}

int word_degree(const Word& x) {
    int d = 0;
    for (auto& l : x) d += l.kind != Letter::unit;
    return d;
}

std::optional<Word> multiply_words(const ReciprocalWalk& w, const Word& x, const Word& y) {
    if (x.empty()) return y;
    if (y.empty()) return x;
    Square gx = word_grade(w, x), gy = word_grade(w, y);
    if (gx.l != gy.k || gx.n != gy.m) return std::nullopt;
    if (x.front().kind == Letter::unit) return y;
    if (y.front().kind == Letter::unit) return x;
    Word r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

NCPoly multiply(const ReciprocalWalk& w, const NCPoly& x, const NCPoly& y) {
    NCPoly r;
    for (auto& [a, ca] : x.terms)
        for (auto& [b, cb] : y.terms)
            if (auto p = multiply_words(w, a, b)) r.add(*p, ca * cb);
    return r;
}

NCPoly poly_star(const NCPoly& x) {
    NCPoly r;
    for (auto& [w, c] : x.terms) {
        Word s(w.rbegin(), w.rend());
        for (auto& l : s)
            if (l.kind != Letter::unit) l.kind = l.kind == Letter::u ? Letter::ustar : Letter::u;
        r.add(s, c.conj());
    }
    return r;
}

std::string word_str(const ReciprocalWalk& w, const Word& x) {
    if (x.empty()) return "id";
    std::string out;
    for (auto& l : x) {
        if (!out.empty()) out += " ";
        if (l.kind == Letter::unit)
            out += "1(" + w.vertices[l.a] + "|" + w.vertices[l.b] + ")";
        else
            out += std::string(l.kind == Letter::u ? "u(" : "u*(") + std::to_string(l.a) + "," + std::to_string(l.b) + ")";
    }
    return out;
}

std::string poly_str(const ReciprocalWalk& w, const NCPoly& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (auto& [wd, c] : x.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ") " + word_str(w, wd);
    }
    return out;
}

NCPoly word_poly(const Word& x, const Scalar& c) {
    NCPoly r;
    r.add(x, c);
    return r;
}

Word u_word(const std::vector<int>& top, const std::vector<int>& bottom) {
    Word r;
    for (size_t i = 0; i < top.size(); ++i) r.push_back({Letter::u, top[i], bottom[i]});
    return r;
}

namespace {

Scalar walk_star_coef(const ReciprocalWalk& w, int e, int f) {
    const WalkEdge& a = w.edges[e];
    const WalkEdge& b = w.edges[f];
    return Scalar(a.sign * b.sign) * sqrt(b.weight / a.weight);
}

Word unit_word(int v, int w) { return {{Letter::unit, v, w}}; }

}  // namespace

Presentation build_presentation(const ReciprocalWalk& w) {
    Presentation p;
    p.walk = w;
    int ne = static_cast<int>(w.edges.size()), nv = static_cast<int>(w.vertices.size());
    auto lbl = [&](int e) { return std::to_string(e); };
    for (int e = 0; e < ne; ++e)
        for (int f = 0; f < ne; ++f) {
            Relation r;
            r.kind = "int";
            r.label = "int(" + lbl(e) + "," + lbl(f) + ")";
            Scalar c = walk_star_coef(w, e, f);
            r.poly.add({{Letter::ustar, e, f}}, Scalar(1));
            r.poly.add({{Letter::u, w.edges[e].bar, w.edges[f].bar}}, -c);
            r.grade = letter_grade(w, {Letter::ustar, e, f});
            r.degree = 1;
            p.int_relation[{e, f}] = p.relations.size();
            p.star_coef[{e, f}] = c;
            p.relations.push_back(r);
        }
    for (int v = 0; v < nv; ++v)
        for (int e = 0; e < ne; ++e)
            for (int f = 0; f < ne; ++f) {
                if (w.edges[e].src != w.edges[f].src) continue;
                Relation r;
                r.kind = "uni1";
                r.label = "uni1(" + w.vertices[v] + ";" + lbl(e) + "," + lbl(f) + ")";
                for (auto& g : w.edges)
                    if (g.tgt == v) r.poly.add({{Letter::ustar, g.id, e}, {Letter::u, g.id, f}}, Scalar(1));
                if (e == f) r.poly.add(unit_word(v, w.edges[e].tgt), Scalar(-1));
                if (r.poly.is_zero()) continue;
                r.grade = {v, v, w.edges[e].tgt, w.edges[f].tgt};
                r.degree = 2;
                r.assertable = w.interior[v];
                p.relations.push_back(r);
            }
    for (int v = 0; v < nv; ++v)
        for (int e = 0; e < ne; ++e)
            for (int f = 0; f < ne; ++f) {
                if (w.edges[e].tgt != w.edges[f].tgt) continue;
                Relation r;
                r.kind = "uni2";
                r.label = "uni2(" + w.vertices[v] + ";" + lbl(e) + "," + lbl(f) + ")";
                for (auto& g : w.edges)
                    if (g.src == v) r.poly.add({{Letter::u, e, g.id}, {Letter::ustar, f, g.id}}, Scalar(1));
                if (e == f) r.poly.add(unit_word(w.edges[e].src, v), Scalar(-1));
                if (r.poly.is_zero()) continue;
                r.grade = {w.edges[e].src, w.edges[f].src, v, v};
                r.degree = 2;
                r.assertable = w.interior[v];
                p.relations.push_back(r);
            }
    return p;
}

NCPoly replay(const Presentation& p, const IdealWitness& w) {
    NCPoly r;
    for (auto& t : w.terms) {
        NCPoly x = multiply(p.walk, multiply(p.walk, word_poly(t.left), p.relations.at(t.relation).poly),
                            word_poly(t.right));
        r += x * t.coef;
    }
    return r;
}

namespace {

void add_tensor(TensorPoly& t, const Word& a, const Word& b, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

TensorPoly tensor_of(const NCPoly& a, const NCPoly& b, const Scalar& c) {
    TensorPoly t;
    for (auto& [x, cx] : a.terms)
        for (auto& [y, cy] : b.terms) add_tensor(t, x, y, c * cx * cy);
    return t;
}

void add_into(TensorPoly& dst, const TensorPoly& src) {
    for (auto& [k, c] : src) add_tensor(dst, k.first, k.second, c);
}

// Substitute u*_{e,f} = c u_{ebar,fbar}; the witness replays to x minus the result.
std::pair<NCPoly, IdealWitness> int_reduce(const Presentation& p, const NCPoly& x) {
    NCPoly out;
    IdealWitness wit;
    std::vector<std::pair<Word, Scalar>> work(x.terms.begin(), x.terms.end());
    while (!work.empty()) {
        auto [w, c] = work.back();
        work.pop_back();
        size_t i = 0;
        while (i < w.size() && w[i].kind != Letter::ustar) ++i;
        if (i == w.size()) {
            out.add(w, c);
            continue;
        }
        auto key = std::make_pair(w[i].a, w[i].b);
        Word left(w.begin(), w.begin() + static_cast<long>(i)), right(w.begin() + static_cast<long>(i) + 1, w.end());
        wit.terms.push_back({c, left, p.int_relation.at(key), right});
        Word next = w;
        next[i] = {Letter::u, p.walk.edges[w[i].a].bar, p.walk.edges[w[i].b].bar};
        work.push_back({next, c * p.star_coef.at(key)});
    }
    return {out, wit};
}

using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& dst, const SparseVec& src, const Scalar& c) {
    if (c.is_zero()) return;
    for (auto& [i, v] : src) {
        auto it = dst.find(i);
        if (it == dst.end()) {
            dst.emplace(i, v * c);
            continue;
        }
        it->second += v * c;
        if (it->second.is_zero()) dst.erase(it);
    }
}

}  // namespace

TensorPoly replay(const Presentation& p, const TensorWitness& w) {
    TensorPoly r;
    for (auto& t : w.terms) {
        NCPoly x = replay(p, t.witness);
        add_into(r, t.side == 0 ? tensor_of(x, t.other, t.coef) : tensor_of(t.other, x, t.coef));
    }
    return r;
}

struct IdealSolver::Block {
    std::vector<Word> coords;
    std::map<Word, int> index;
    struct Gen {
        Word x;
        size_t rel;
        Word y;
    };
    std::vector<Gen> gens;
    std::map<int, std::pair<SparseVec, SparseVec>> pivots;  // lead -> (vector, combination of gens)
};

// Assertable unitarity relations with their EqInt normal forms, shared by all blocks.
struct IdealSolver::Cache {
    std::map<Pair, std::vector<size_t>> by_corner;  // (k, m) of the grade
    std::map<size_t, std::pair<NCPoly, IdealWitness>> reduced;
};

IdealSolver::IdealSolver(const Presentation& p, int degree)
    : p_(p), degree_(degree), cache_(std::make_unique<Cache>()) {
    Cache& rc = *cache_;
    for (size_t i = 0; i < p.relations.size(); ++i) {
        const Relation& r = p.relations[i];
        if (r.kind == "int" || !r.assertable) continue;
        rc.by_corner[{r.grade.k, r.grade.m}].push_back(i);
        rc.reduced[i] = int_reduce(p, r.poly);
    }
}

IdealSolver::~IdealSolver() = default;

const std::vector<std::vector<int>>& IdealSolver::paths(int v, int len) {
    auto& per = paths_[v];
    while (static_cast<int>(per.size()) <= len) {
        if (per.empty()) {
            per.push_back({{}});
            continue;
        }
        std::vector<std::vector<int>> next;
        for (auto& path : per.back()) {
            int end = path.empty() ? v : p_.walk.edges[path.back()].tgt;
            for (int e : p_.walk.out_edges(end)) {
                auto q = path;
                q.push_back(e);
                next.push_back(q);
            }
        }
        per.push_back(next);
    }
    return per[len];
}

IdealSolver::Block& IdealSolver::block(const Square& k) {
    auto it = blocks_.find(k);
    if (it != blocks_.end()) return *it->second;
    auto blk = std::make_unique<Block>();
    const ReciprocalWalk& w = p_.walk;
    auto end = [&](int v, const std::vector<int>& path) { return path.empty() ? v : w.edges[path.back()].tgt; };
    if (k.k == k.l && k.m == k.n) blk->coords.push_back(unit_word(k.k, k.m));
    for (int len = 1; len <= degree_; ++len)
        for (auto& top : paths(k.k, len)) {
            if (end(k.k, top) != k.l) continue;
            for (auto& bot : paths(k.m, len))
                if (end(k.m, bot) == k.n) blk->coords.push_back(u_word(top, bot));
        }
    for (size_t i = 0; i < blk->coords.size(); ++i) blk->index[blk->coords[i]] = static_cast<int>(i);

    Cache& rc = *cache_;
    for (int i = 0; i + 2 <= degree_; ++i)
        for (auto& xt : paths(k.k, i))
            for (auto& xb : paths(k.m, i)) {
                auto rels = rc.by_corner.find({end(k.k, xt), end(k.m, xb)});
                if (rels == rc.by_corner.end()) continue;
                Word x = u_word(xt, xb);
                for (size_t ri : rels->second) {
                    const Relation& r = p_.relations[ri];
                    for (int j = 0; i + j + r.degree <= degree_; ++j)
                        for (auto& yt : paths(r.grade.l, j)) {
                            if (end(r.grade.l, yt) != k.l) continue;
                            for (auto& yb : paths(r.grade.n, j)) {
                                if (end(r.grade.n, yb) != k.n) continue;
                                Word y = u_word(yt, yb);
                                SparseVec v;
                                for (auto& [wd, c] : rc.reduced.at(ri).first.terms) {
                                    auto a = multiply_words(w, x, wd);
                                    if (!a) continue;
                                    auto b = multiply_words(w, *a, y);
                                    if (!b) continue;
                                    v[blk->index.at(*b)] += c;
                                }
                                for (auto vi = v.begin(); vi != v.end();)
                                    vi = vi->second.is_zero() ? v.erase(vi) : std::next(vi);
                                SparseVec combo{{static_cast<int>(blk->gens.size()), Scalar(1)}};
                                blk->gens.push_back({x, ri, y});
                                while (!v.empty()) {
                                    int lead = v.rbegin()->first;
                                    auto pv = blk->pivots.find(lead);
                                    if (pv == blk->pivots.end()) {
                                        Scalar inv = v.rbegin()->second.inv();
                                        for (auto& [ix, s] : v) s *= inv;
                                        for (auto& [ix, s] : combo) s *= inv;
                                        blk->pivots[lead] = {v, combo};
                                        break;
                                    }
                                    Scalar c = v.rbegin()->second;
                                    axpy(v, pv->second.first, -c);
                                    axpy(combo, pv->second.second, -c);
                                }
                            }
                        }
                }
            }
    auto& ref = *blk;
    blocks_[k] = std::move(blk);
    return ref;
}

IdealSolver::Reduction IdealSolver::reduce(const NCPoly& x) {
    Reduction red;
    auto [nf, wit] = int_reduce(p_, x);
    red.witness = wit;
    std::map<Square, NCPoly> groups;
    for (auto& [w, c] : nf.terms) groups[word_grade(p_.walk, w)].add(w, c);
    Cache& rc = *cache_;
    for (auto& [k, part] : groups) {
        Block& blk = block(k);
        SparseVec rem, combo;
        for (auto& [w, c] : part.terms) {
            auto it = blk.index.find(w);
            if (it == blk.index.end()) {
                red.complete = false;
                red.remainder.add(w, c);
                continue;
            }
            rem[it->second] += c;
        }
        int bound = INT_MAX;
        while (true) {
            auto it = rem.lower_bound(bound);
            if (it == rem.begin()) break;
            --it;
            int lead = it->first;
            auto pv = blk.pivots.find(lead);
            if (pv != blk.pivots.end()) {
                Scalar c = it->second;
                axpy(rem, pv->second.first, -c);
                axpy(combo, pv->second.second, c);
            }
            bound = lead;
        }
        for (auto& [i, c] : rem) red.remainder.add(blk.coords[i], c);
        for (auto& [g, c] : combo) {
            const Block::Gen& gen = blk.gens[g];
            red.witness.terms.push_back({c, gen.x, gen.rel, gen.y});
            for (auto& t : rc.reduced.at(gen.rel).second.terms) {
                auto l = multiply_words(p_.walk, gen.x, t.left);
                Word right = t.right;
                right.insert(right.end(), gen.y.begin(), gen.y.end());
                red.witness.terms.push_back({-c * t.coef, l ? *l : gen.x, t.relation, right});
            }
        }
    }
    return red;
}

std::optional<IdealWitness> IdealSolver::member(const NCPoly& x) {
    Reduction r = reduce(x);
    if (!r.complete || !r.remainder.is_zero()) return std::nullopt;
    return r.witness;
}

std::optional<TensorWitness> IdealSolver::tensor_member(const TensorPoly& x) {
    std::map<Word, Reduction> cache;
    auto red = [&](const Word& w) -> const Reduction& {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, reduce(word_poly(w))).first;
        return it->second;
    };
    TensorPoly rest;
    TensorWitness tw;
    for (auto& [k, c] : x) {
        const Reduction& a = red(k.first);
        const Reduction& b = red(k.second);
        if (!a.complete || !b.complete) return std::nullopt;
        add_into(rest, tensor_of(a.remainder, b.remainder, c));
        if (!a.witness.terms.empty()) tw.terms.push_back({c, 0, a.witness, word_poly(k.second)});
        if (!b.witness.terms.empty()) tw.terms.push_back({c, 1, b.witness, a.remainder});
    }
    if (!rest.empty()) return std::nullopt;
    return tw;
}

std::vector<Word> IdealSolver::basis(const Square& k) {
    Block& blk = block(k);
    std::vector<Word> out;
    for (size_t i = 0; i < blk.coords.size(); ++i)
        if (!blk.pivots.count(static_cast<int>(i))) out.push_back(blk.coords[i]);
    return out;
}

GradedBasis graded_basis(const Presentation& p, const Square& k, int degree) {
    IdealSolver s(p, degree);
    GradedBasis g;
    g.basis = s.basis(k);
    g.dim = g.basis.size();
    return g;
}

std::optional<IdealWitness> ideal_member(const Presentation& p, const NCPoly& x, int degree) {
    IdealSolver s(p, degree);
    return s.member(x);
}

TensorPoly coproduct(const Presentation& p, const NCPoly& x) {
    const ReciprocalWalk& w = p.walk;
    TensorPoly out;
    for (auto& [wd, c] : x.terms) {
        if (wd.empty()) throw Error("internal", "coproduct of the identity multiplier");
        if (wd.front().kind == Letter::unit) {
            for (size_t z = 0; z < w.vertices.size(); ++z)
                add_tensor(out, unit_word(wd[0].a, static_cast<int>(z)), unit_word(static_cast<int>(z), wd[0].b), c);
            continue;
        }
        std::vector<std::pair<Word, Word>> partial{{{}, {}}};
        for (auto& l : wd) {
            std::vector<std::pair<Word, Word>> next;
            for (auto& [a, b] : partial)
                for (auto& g : w.edges) {
                    auto na = multiply_words(w, a, {{l.kind, l.a, g.id}});
                    if (!na) continue;
                    auto nb = multiply_words(w, b, {{l.kind, g.id, l.b}});
                    if (!nb) continue;
                    next.push_back({*na, *nb});
                }
            partial = std::move(next);
        }
        for (auto& [a, b] : partial) add_tensor(out, a, b, c);
    }
    return out;
}

Scalar counit(const Presentation&, const NCPoly& x) {
    Scalar s;
    for (auto& [wd, c] : x.terms) {
        bool one = true;
        for (auto& l : wd) one = one && l.a == l.b;
        if (one) s += c;
    }
    return s;
}

NCPoly antipode(const Presentation& p, const NCPoly& x) {
    const ReciprocalWalk& w = p.walk;
    NCPoly out;
    for (auto& [wd, c] : x.terms) {
        Word r;
        Scalar coef = c;
        for (auto it = wd.rbegin(); it != wd.rend(); ++it) {
            const Letter& l = *it;
            if (l.kind == Letter::unit) {
                r.push_back({Letter::unit, l.b, l.a});
            } else if (l.kind == Letter::u) {
                r.push_back({Letter::ustar, l.b, l.a});
            } else {
                coef *= walk_star_coef(w, l.a, l.b);
                r.push_back({Letter::ustar, w.edges[l.b].bar, w.edges[l.a].bar});
            }
        }
        out.add(r, coef);
    }
    return out;
}

namespace {

std::map<std::pair<Square, Square>, TensorPoly> group_tensor(const ReciprocalWalk& w, const TensorPoly& t) {
    std::map<std::pair<Square, Square>, TensorPoly> g;
    for (auto& [k, c] : t) g[{word_grade(w, k.first), word_grade(w, k.second)}][k] = c;
    return g;
}

std::map<Square, NCPoly> group_poly(const ReciprocalWalk& w, const NCPoly& x) {
    std::map<Square, NCPoly> g;
    for (auto& [wd, c] : x.terms) g[word_grade(w, wd)].add(wd, c);
    return g;
}

json grade_json(const ReciprocalWalk& w, const Square& k) {
    return {w.vertices[k.k], w.vertices[k.l], w.vertices[k.m], w.vertices[k.n]};
}

}  // namespace

Report check_hopf_wellposed(const Presentation& p, int degree) {
    Report rep;
    IdealSolver solver(p, degree);
    const ReciprocalWalk& w = p.walk;
    for (size_t i = 0; i < p.relations.size(); ++i) {
        const Relation& r = p.relations[i];
        if (!r.assertable) {
            rep.skip("hopf.counit");
            rep.skip("hopf.coproduct");
            rep.skip("hopf.antipode");
            continue;
        }
        rep.check("hopf.counit", counit(p, r.poly).is_zero(), {{"relation", r.label}});
        for (auto& [grades, part] : group_tensor(w, coproduct(p, r.poly))) {
            const Square& k1 = grades.first;
            if (!w.interior[k1.m] || !w.interior[k1.n]) {
                rep.skip("hopf.coproduct");
                continue;
            }
            auto tw = solver.tensor_member(part);
            bool ok = tw && replay(p, *tw) == part;
            rep.check("hopf.coproduct", ok,
                      {{"relation", r.label}, {"left", grade_json(w, k1)}, {"right", grade_json(w, grades.second)}});
        }
        NCPoly s = antipode(p, r.poly);
        auto wit = solver.member(s);
        rep.check("hopf.antipode", wit && replay(p, *wit) == s, {{"relation", r.label}});
    }
    return rep;
}

namespace {

// Certify each grade component of x in the ideal; components outside the scope are skipped.
void certify(Report& rep, IdealSolver& solver, const std::string& axiom, const NCPoly& x,
             const std::function<bool(const Square&)>& in_scope, const json& context) {
    const Presentation& p = solver.presentation();
    for (auto& [k, part] : group_poly(p.walk, x)) {
        if (!in_scope(k)) {
            rep.skip(axiom);
            continue;
        }
        auto wit = solver.member(part);
        json wj = context;
        wj["block"] = grade_json(p.walk, k);
        rep.check(axiom, wit && replay(p, *wit) == part, wj);
    }
}

void certify_tensor(Report& rep, IdealSolver& solver, const std::string& axiom, const TensorPoly& x,
                    const std::function<bool(const Square&)>& in_scope) {
    const Presentation& p = solver.presentation();
    for (auto& [grades, part] : group_tensor(p.walk, x)) {
        if (!in_scope(grades.first) || !in_scope(grades.second)) {
            rep.skip(axiom);
            continue;
        }
        auto tw = solver.tensor_member(part);
        rep.check(axiom, tw && replay(p, *tw) == part,
                  {{"left", grade_json(p.walk, grades.first)}, {"right", grade_json(p.walk, grades.second)}});
    }
}

NCPoly unit_family(const ReciprocalWalk& w) {
    NCPoly u;
    for (size_t v = 0; v < w.vertices.size(); ++v)
        for (size_t z = 0; z < w.vertices.size(); ++z) u.add(unit_word(static_cast<int>(v), static_cast<int>(z)), 1);
    return u;
}

// f(lambda, rho) x: the function is read at the upper-left corners of each component; x f reads the right corners.
NCPoly left_function(const ReciprocalWalk& w, const std::function<Scalar(int, int)>& f, const NCPoly& x) {
    NCPoly r;
    for (auto& [wd, c] : x.terms) {
        Square k = word_grade(w, wd);
        r.add(wd, c * f(k.k, k.m));
    }
    return r;
}

NCPoly right_function(const ReciprocalWalk& w, const std::function<Scalar(int, int)>& f, const NCPoly& x) {
    NCPoly r;
    for (auto& [wd, c] : x.terms) {
        Square k = word_grade(w, wd);
        r.add(wd, c * f(k.l, k.n));
    }
    return r;
}

// Delta(1)(x (x) y): keeps the terms whose lower-left corner of x equals the upper-left corner of y.
TensorPoly unit_filtered(const ReciprocalWalk& w, const NCPoly& a, const NCPoly& b, const Scalar& c) {
    TensorPoly t;
    for (auto& [x, cx] : a.terms)
        for (auto& [y, cy] : b.terms)
            if (word_grade(w, x).m == word_grade(w, y).k) add_tensor(t, x, y, c * cx * cy);
    return t;
}

}  // namespace

ColoredMatrix colored_matrix(const Presentation& p, const ColoredWalk& cw, int degree) {
    ColoredMatrix cm;
    cm.colors = cw.colors;
    const ReciprocalWalk& w = p.walk;
    for (auto& a : cw.colors)
        for (auto& b : cw.colors) {
            NCPoly e;
            for (auto& [av, ea] : cw.edge_of)
                if (av.first == a)
                    for (auto& [bw, eb] : cw.edge_of)
                        if (bw.first == b) e.add({{Letter::u, ea, eb}}, 1);
            cm.entries[{a, b}] = e;
        }
    IdealSolver solver(p, degree);
    NCPoly one = unit_family(w);
    auto interior = [&](const Square& k) { return w.interior[k.k] && w.interior[k.l] && w.interior[k.m] && w.interior[k.n]; };
    for (auto& a : cw.colors)
        for (auto& b : cw.colors) {
            NCPoly rows, cols;
            for (auto& c : cw.colors) {
                rows += multiply(w, cm.entries[{a, c}], poly_star(cm.entries[{b, c}]));
                cols += multiply(w, poly_star(cm.entries[{c, a}]), cm.entries[{c, b}]);
            }
            if (a == b) {
                rows -= one;
                cols -= one;
            }
            json ctx = {{"a", a}, {"b", b}};
            certify(cm.report, solver, "colored.unitarity-rows", rows, interior, ctx);
            certify(cm.report, solver, "colored.unitarity-columns", cols, interior, ctx);

            std::string abar = cw.color_bar.at(a), bbar = cw.color_bar.at(b);
            NCPoly lhs = poly_star(cm.entries[{a, b}]);
            for (auto& [k, part] : group_poly(w, lhs)) {
                auto ga = cw.gamma.find({a, k.l}), gb = cw.gamma.find({b, k.n});
                if (ga == cw.gamma.end() || gb == cw.gamma.end()) {
                    cm.report.skip("colored.adjoint");
                    continue;
                }
                NCPoly rhs;
                for (auto& [wd, c] : cm.entries[{abar, bbar}].terms)
                    if (word_grade(w, wd) == k) rhs.add(wd, c * gb->second / ga->second);
                NCPoly diff = part;
                diff -= rhs;
                auto wit = solver.member(diff);
                cm.report.check("colored.adjoint", wit && replay(p, *wit) == diff,
                                {{"a", a}, {"b", b}, {"block", grade_json(w, k)}});
            }

            // f(lambda) g(rho) u_ab = u_ab f(abar lambda) g(bbar rho) with formal f, g.
            for (auto& [wd, c] : cm.entries[{a, b}].terms) {
                Square k = word_grade(w, wd);
                auto ra = cw.action.find({abar, k.l}), rb = cw.action.find({bbar, k.n});
                if (ra == cw.action.end() || rb == cw.action.end()) {
                    cm.report.skip("colored.grading");
                    continue;
                }
                auto fg = [](int v, int z) {
                    return Scalar::symbol({"f", 'n', v}) * Scalar::symbol({"g", 'n', z});
                };
                cm.report.check("colored.grading", c * fg(k.k, k.m) == c * fg(ra->second, rb->second),
                                {{"a", a}, {"b", b}, {"block", grade_json(w, k)}});
            }
        }
    return cm;
}

Report dynamical_su2_report(const Scalar& q, const Scalar& x, long lo, long hi, int degree,
                            const std::optional<Scalar>& claimed_q) {
    if (hi - lo < 2L * degree + 2) throw Error("window-too-small", "window too small for the requested degree");
    ReciprocalWalk walk = podles_walk(q, x, lo, hi);
    ColoredWalk cw = podles_coloring(walk);
    Presentation p = build_presentation(cw.walk);
    const ReciprocalWalk& w = p.walk;
    IdealSolver solver(p, degree);
    Scalar qc = claimed_q ? *claimed_q : q;
    Scalar aq = real_sign(q) < 0 ? -q : q;
    auto lab = [&](int v) { return lo + v; };

    auto F = [](long k, int half) { return Scalar::symbol({"F", 'n', k}, half); };
    // F(k) = |q|^-1 w_+(k); F^(1/2) is its positive square root.
    Valuation val = [&](const Symbol& s, int half) -> Scalar {
        if (s.name != "F") return Scalar::symbol(s, half);
        Scalar f = podles_weight(q, x, s.off, s.off + 1) / aq;
        if (half % 2 == 0) return pow(f, half / 2);
        return pow(sqrt(f), half);
    };
    auto eval = [&](const NCPoly& a) {
        NCPoly r;
        for (auto& [wd, c] : a.terms) r.add(wd, evaluate(c, val));
        return r;
    };

    NCPoly alpha, beta;
    for (auto& [av, e] : cw.edge_of) {
        if (av.first != "-") continue;
        int v = av.second;
        for (auto& [bw, f] : cw.edge_of) {
            int z = bw.second;
            if (bw.first == "-")
                alpha.add({{Letter::u, e, f}}, F(lab(z) - 1, 1) * F(lab(v) - 1, -1));
            else
                beta.add({{Letter::u, e, f}}, F(lab(v) - 1, -1));
        }
    }
    NCPoly alpha_s = poly_star(alpha), beta_s = poly_star(beta), one = unit_family(w);
    auto lf = [&](const std::function<Scalar(int, int)>& f, const NCPoly& a) { return left_function(w, f, a); };
    auto mul = [&](const NCPoly& a, const NCPoly& b) { return multiply(w, a, b); };
    Scalar qi2 = (qc * qc).inv();

    std::vector<std::pair<std::string, NCPoly>> rels;
    {
        NCPoly r = mul(alpha, beta);
        r -= lf([&](int, int m) { return qc * F(lab(m) - 1, 2); }, mul(beta, alpha));
        rels.push_back({"dynamical.qcom-1", r});
    }
    {
        NCPoly r = mul(alpha, beta_s);
        r -= lf([&](int k, int) { return qc * F(lab(k), 2); }, mul(beta_s, alpha));
        rels.push_back({"dynamical.qcom-2", r});
    }
    {
        NCPoly r = mul(alpha, alpha_s);
        r += lf([&](int k, int) { return F(lab(k), 2); }, mul(beta_s, beta));
        r -= one;
        rels.push_back({"dynamical.det-1", r});
    }
    {
        NCPoly r = mul(alpha_s, alpha);
        r += lf([&](int, int m) { return qi2 * F(lab(m) - 1, -2); }, mul(beta_s, beta));
        r -= one;
        rels.push_back({"dynamical.det-2", r});
    }
    {
        NCPoly r = lf([&](int, int m) { return F(lab(m) - 1, -2); }, mul(alpha, alpha_s));
        r += mul(beta, beta_s);
        r -= lf([&](int k, int) { return F(lab(k) - 1, -2); }, one);
        rels.push_back({"dynamical.det-3", r});
    }
    {
        NCPoly r = lf([&](int k, int) { return F(lab(k), 2); }, mul(alpha_s, alpha));
        r += mul(beta, beta_s) * qi2;
        r -= lf([&](int, int m) { return F(lab(m), 2); }, one);
        rels.push_back({"dynamical.det-4", r});
    }

    int nv = static_cast<int>(w.vertices.size());
    auto deep = [&](int v) { return v >= 2 && v <= nv - 3; };
    auto in_scope = [&](const Square& k) { return deep(k.k) && deep(k.l) && deep(k.m) && deep(k.n); };
    Report rep;
    for (auto& [name, r] : rels) certify(rep, solver, name, eval(r), in_scope, json::object());

    // f(lambda) g(rho) alpha = alpha f(lambda+1) g(rho+1), f(lambda) g(rho) beta = beta f(lambda+1) g(rho-1).
    auto fg = [&](long v, long z) { return Scalar::symbol({"f", 'n', v}) * Scalar::symbol({"g", 'n', z}); };
    {
        NCPoly l = lf([&](int k, int m) { return fg(lab(k), lab(m)); }, alpha);
        NCPoly r = right_function(w, [&](int k, int m) { return fg(lab(k) + 1, lab(m) + 1); }, alpha);
        for (auto& [k, part] : group_poly(w, l)) {
            NCPoly d = part;
            for (auto& [wd, c] : r.terms)
                if (word_grade(w, wd) == k) d.add(wd, -c);
            rep.check("dynamical.grading-alpha", d.is_zero(), {{"block", grade_json(w, k)}});
        }
        l = lf([&](int k, int m) { return fg(lab(k), lab(m)); }, beta);
        r = right_function(w, [&](int k, int m) { return fg(lab(k) + 1, lab(m) - 1); }, beta);
        for (auto& [k, part] : group_poly(w, l)) {
            NCPoly d = part;
            for (auto& [wd, c] : r.terms)
                if (word_grade(w, wd) == k) d.add(wd, -c);
            rep.check("dynamical.grading-beta", d.is_zero(), {{"block", grade_json(w, k)}});
        }
    }

    NCPoly ae = eval(alpha), be = eval(beta), ase = eval(alpha_s), bse = eval(beta_s);
    {
        TensorPoly d = coproduct(p, ae);
        TensorPoly rhs = unit_filtered(w, ae, ae, Scalar(1));
        add_into(rhs, unit_filtered(w, be, bse, -qc.inv()));
        for (auto& [k, c] : rhs) add_tensor(d, k.first, k.second, -c);
        certify_tensor(rep, solver, "dynamical.coproduct-alpha", d, in_scope);
    }
    {
        TensorPoly d = coproduct(p, be);
        TensorPoly rhs = unit_filtered(w, be, ase, Scalar(1));
        add_into(rhs, unit_filtered(w, ae, be, Scalar(1)));
        for (auto& [k, c] : rhs) add_tensor(d, k.first, k.second, -c);
        certify_tensor(rep, solver, "dynamical.coproduct-beta", d, in_scope);
    }
    {
        // Delta(1) = sum_k rho_k (x) lambda_k
        TensorPoly lhs = coproduct(p, one), rhs;
        for (int k = 0; k < nv; ++k) {
            NCPoly rho, lambda;
            for (int v = 0; v < nv; ++v) {
                rho.add(unit_word(v, k), 1);
                lambda.add(unit_word(k, v), 1);
            }
            add_into(rhs, tensor_of(rho, lambda, Scalar(1)));
        }
        rep.check("dynamical.unit-coproduct", lhs == rhs, json::object());
    }
    return rep;
}

TruncatedAlgebra truncate(const Presentation& p, int degree) {
    TruncatedAlgebra out;
    PartialHopfData& d = out.data;
    const ReciprocalWalk& w = p.walk;
    IdealSolver solver(p, degree);
    int nv = static_cast<int>(w.vertices.size());
    d.labels = w.vertices;
    d.max_degree = degree;
    for (int v = 0; v < nv; ++v)
        if (!w.interior[v]) d.boundary.insert(v);

    std::set<Square> grades;
    for (int k = 0; k < nv; ++k)
        for (int m = 0; m < nv; ++m) {
            grades.insert({k, k, m, m});
            for (int len = 1; len <= degree; ++len)
                for (auto& top : solver.paths(k, len))
                    for (auto& bot : solver.paths(m, len))
                        grades.insert({k, w.edges[top.back()].tgt, m, w.edges[bot.back()].tgt});
        }
    std::map<Square, std::vector<Word>> basis;
    std::map<Square, std::map<Word, size_t>> pos;
    for (auto& k : grades) {
        auto b = solver.basis(k);
        if (b.empty()) continue;
        basis[k] = b;
        d.dims[k] = b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            pos[k][b[i]] = i;
            d.degree[k].push_back(word_degree(b[i]));
            d.names[k].push_back(word_str(w, b[i]));
        }
    }
    // Coordinates of a homogeneous polynomial of grade k in the quotient basis.
    auto coords = [&](const Square& k, const NCPoly& x) {
        Vec v(d.dim(k));
        auto r = solver.reduce(x);
        if (!r.complete) throw Error("truncated", "element beyond the degree bound");
        for (auto& [wd, c] : r.remainder.terms) v[pos.at(k).at(wd)] += c;
        return v;
    };
    for (auto& [k, bk] : basis)
        for (auto& [l, bl] : basis) {
            if (k.l != l.k || k.n != l.m) continue;
            Square kl{k.k, l.l, k.m, l.n};
            size_t dkl = d.dim(kl);
            Mat m(dkl, bk.size() * bl.size());
            bool any = false;
            for (size_t i = 0; i < bk.size(); ++i)
                for (size_t j = 0; j < bl.size(); ++j) {
                    if (word_degree(bk[i]) + word_degree(bl[j]) > degree) continue;
                    auto prod = multiply_words(w, bk[i], bl[j]);
                    if (!prod || dkl == 0) continue;
                    Vec v = coords(kl, word_poly(*prod));
                    for (size_t r = 0; r < dkl; ++r) m(r, i * bl.size() + j) = v[r];
                    any = true;
                }
            if (any) d.mult[{k, l}] = m;
        }
    for (auto& [k, bk] : basis)
        for (int r = 0; r < nv; ++r)
            for (int s = 0; s < nv; ++s) {
                Square left{k.k, k.l, r, s}, right{r, s, k.m, k.n};
                size_t dl = d.dim(left), dr = d.dim(right);
                if (dl == 0 || dr == 0) continue;
                Mat m(dl * dr, bk.size());
                for (size_t i = 0; i < bk.size(); ++i) {
                    TensorPoly t = coproduct(p, word_poly(bk[i]));
                    for (auto& [pair, c] : t) {
                        if (word_grade(w, pair.first) != left) continue;
                        Vec a = coords(left, word_poly(pair.first)), b = coords(right, word_poly(pair.second));
                        for (size_t x = 0; x < dl; ++x)
                            for (size_t y = 0; y < dr; ++y) m(x * dr + y, i) += c * a[x] * b[y];
                    }
                }
                d.comult[{k, r, s}] = m;
            }
    std::map<Square, Mat> anti, st;
    for (auto& [k, bk] : basis) {
        if (k.k == k.m) {
            Vec e(bk.size());
            for (size_t i = 0; i < bk.size(); ++i) e[i] = counit(p, word_poly(bk[i]));
            d.counit[k] = e;
        }
        Square sb = circ_bullet(k), sc = circ(k);
        Mat ma(d.dim(sb), bk.size()), ms(d.dim(sc), bk.size());
        for (size_t i = 0; i < bk.size(); ++i) {
            if (ma.rows()) {
                Vec v = coords(sb, antipode(p, word_poly(bk[i])));
                for (size_t r = 0; r < v.size(); ++r) ma(r, i) = v[r];
            }
            if (ms.rows()) {
                Vec v = coords(sc, poly_star(word_poly(bk[i])));
                for (size_t r = 0; r < v.size(); ++r) ms(r, i) = v[r];
            }
        }
        anti[k] = ma;
        st[k] = ms;
    }
    d.antipode = anti;
    d.star = st;
    for (int k = 0; k < nv; ++k)
        for (int m = 0; m < nv; ++m) d.unit[{k, m}] = coords({k, k, m, m}, word_poly(unit_word(k, m)));

    Corep& g = out.generating;
    g.space = w.space();
    for (auto& [k, bk] : basis) {
        size_t rows = g.space.dim(k.k, k.l), cols = g.space.dim(k.m, k.n);
        if (rows == 0 || cols == 0) continue;
        std::vector<Mat> coef(bk.size(), Mat(rows, cols));
        bool any = false;
        for (auto& e : w.edges) {
            if (e.src != k.k || e.tgt != k.l) continue;
            for (auto& f : w.edges) {
                if (f.src != k.m || f.tgt != k.n) continue;
                Vec v = coords(k, word_poly({{Letter::u, e.id, f.id}}));
                for (size_t i = 0; i < bk.size(); ++i)
                    if (!v[i].is_zero()) {
                        coef[i](w.position(e.id), w.position(f.id)) = v[i];
                        any = true;
                    }
            }
        }
        if (any) g.blocks[k] = coef;
    }
    return out;
}

json witness_to_json(const Presentation& p, const IdealWitness& w) {
    json out = json::array();
    for (auto& t : w.terms)
        out.push_back({{"coef", t.coef.str()},
                       {"left", word_str(p.walk, t.left)},
                       {"relation", p.relations.at(t.relation).label},
                       {"right", word_str(p.walk, t.right)}});
    return out;
}

json presentation_to_json(const Presentation& p) {
    json j;
    j["walk"] = walk_to_json(p.walk);
    j["generators"] = p.u_generators();
    json rels = json::array();
    for (auto& r : p.relations) {
        json terms = json::array();
        for (auto& [wd, c] : r.poly.terms) terms.push_back({{"word", word_str(p.walk, wd)}, {"coef", c.str()}});
        rels.push_back({{"kind", r.kind},
                        {"label", r.label},
                        {"grade", grade_json(p.walk, r.grade)},
                        {"degree", r.degree},
                        {"assertable", r.assertable},
                        {"terms", terms}});
    }
    j["relations"] = rels;
    return j;
}

}  // namespace pqg
