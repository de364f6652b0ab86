#include "pqg/walks.hpp"

#include <algorithm>
#include <set>

#include "pqg/partial_hopf.hpp"

namespace pqg {

int ReciprocalWalk::vertex(const std::string& label) const {
    auto it = std::find(vertices.begin(), vertices.end(), label);
    if (it == vertices.end()) throw Error("unknown-vertex", "no vertex " + label);
    return static_cast<int>(it - vertices.begin());
}

std::vector<int> ReciprocalWalk::out_edges(int v) const {
    std::vector<int> out;
    for (auto& e : edges)
        if (e.src == v) out.push_back(e.id);
    return out;
}

BigradedSpace ReciprocalWalk::space() const {
    BigradedSpace h;
    for (size_t v = 0; v < vertices.size(); ++v) h.objects.push_back(static_cast<int>(v));
    for (auto& e : edges) h.set(e.src, e.tgt, h.dim(e.src, e.tgt) + 1);
    return h;
}

size_t ReciprocalWalk::position(int e) const {
    size_t p = 0;
    for (int i = 0; i < e; ++i)
        if (edges[i].src == edges[e].src && edges[i].tgt == edges[e].tgt) ++p;
    return p;
}

BigradedSpace ReciprocalWalk::unit_space() const {
    BigradedSpace u;
    for (size_t v = 0; v < vertices.size(); ++v) {
        u.objects.push_back(static_cast<int>(v));
        u.set(static_cast<int>(v), static_cast<int>(v), 1);
    }
    return u;
}

namespace {

json edge_witness(const ReciprocalWalk& w, int e) {
    return {{"edge", e}, {"src", w.vertices[w.edges[e].src]}, {"tgt", w.vertices[w.edges[e].tgt]}};
}

// b^x for positive b and rational x, inside the multiquadratic tower.
Scalar rational_power(const Scalar& b, const mpq_class& x) {
    mpz_class num = x.get_num(), den = x.get_den();
    if (den == 1) return pow(b, num.get_si());
    if (b.is_rational()) {
        mpq_class r = b.rational();
        mpz_class a, c;
        if (mpz_root(a.get_mpz_t(), r.get_num().get_mpz_t(), den.get_ui()) != 0 &&
            mpz_root(c.get_mpz_t(), r.get_den().get_mpz_t(), den.get_ui()) != 0)
            return pow(Scalar(mpq_class(a, c)), num.get_si());
    }
    if (den == 2)
        if (auto s = try_sqrt(pow(b, num.get_si()))) return *s;
    throw Error("unsupported", "|q|^x is not in the square-root tower for x = " + x.get_str());
}

long label_value(const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error("unsupported", "vertex label " + s + " is not an integer");
}

}  // namespace

Report validate_walk(const ReciprocalWalk& w) {
    Report r;
    int st = 0;
    if (w.t.has_symbols() || !w.t.is_real() || w.t.is_zero()) {
        r.fail("walk.parameter", {{"t", w.t.str()}});
        return r;
    }
    st = real_sign(w.t);
    r.pass("walk.parameter");
    Scalar abs_t = st < 0 ? -w.t : w.t;
    int n = static_cast<int>(w.edges.size());
    for (auto& e : w.edges) {
        bool inv = e.bar >= 0 && e.bar < n && w.edges[e.bar].bar == e.id && w.edges[e.bar].src == e.tgt;
        r.check("walk.involution", inv, edge_witness(w, e.id));
        if (!inv) continue;
        const WalkEdge& b = w.edges[e.bar];
        if (e.weight.has_symbols()) {
            r.unknown("walk.weight-positive", edge_witness(w, e.id));
        } else {
            bool numeric = false;
            if (e.weight.is_real() && real_sign(e.weight, &numeric) > 0)
                r.pass("walk.weight-positive", numeric);
            else
                r.fail("walk.weight-positive", edge_witness(w, e.id));
        }
        json wit = edge_witness(w, e.id);
        wit["product"] = (e.weight * b.weight).str();
        r.check("walk.weight-reciprocality", (e.weight * b.weight).is_one(), wit);
        bool sg = (e.sign == 1 || e.sign == -1) && e.sign * b.sign == st;
        r.check("walk.sign-reciprocality", sg, edge_witness(w, e.id));
    }
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        r.pass("walk.degree");
        if (!w.interior[v]) {
            r.skip("walk.random-walk");
            continue;
        }
        Scalar s;
        for (int e : w.out_edges(static_cast<int>(v))) s += w.edges[e].weight;
        r.check("walk.random-walk", s == abs_t, {{"vertex", w.vertices[v]}, {"sum", s.str()}});
    }
    return r;
}

namespace {

Scalar podles_abs_q(const Scalar& q) {
    if (q.has_symbols() || !q.is_real() || q.is_zero()) throw Error("parameter", "q must be a nonzero real scalar");
    Scalar aq = real_sign(q) < 0 ? -q : q;
    if (real_sign(Scalar(1) - aq) <= 0) throw Error("parameter", "|q| must lie in (0, 1)");
    return aq;
}

Scalar podles_power(const Scalar& aq, const Scalar& x) {
    if (!x.is_rational()) throw Error("unsupported", "x must be rational");
    return rational_power(aq, x.rational());
}

}  // namespace

Scalar podles_weight(const Scalar& q, const Scalar& x, long k, long l) {
    Scalar aq = podles_abs_q(q), qx = podles_power(aq, x);
    auto p = [&](long j) { return qx * pow(aq, j) + qx.inv() * pow(aq, -j); };
    return p(l) / p(k);
}

ReciprocalWalk podles_walk(const Scalar& q, const Scalar& x, long lo, long hi) {
    if (lo > hi) throw Error("parameter", "empty window");
    Scalar aq = podles_abs_q(q);
    int sq = real_sign(q);
    Scalar qx = podles_power(aq, x);
    auto p = [&](long j) { return qx * pow(aq, j) + qx.inv() * pow(aq, -j); };

    ReciprocalWalk w;
    w.t = -(q + q.inv());
    for (long k = lo; k <= hi; ++k) {
        w.vertices.push_back(std::to_string(k));
        w.interior.push_back(k > lo && k < hi);
    }
    for (long k = lo; k < hi; ++k) {
        int i = static_cast<int>(k - lo), id = 2 * i;
        Scalar up = p(k + 1) / p(k);
        w.edges.push_back({id, i, i + 1, up, 1, id + 1, ""});
        w.edges.push_back({id + 1, i + 1, i, up.inv(), -sq, id, ""});
    }
    return w;
}

ReciprocalWalk one_vertex_walk() {
    ReciprocalWalk w;
    w.t = Scalar(-2);
    w.vertices = {"v"};
    w.interior = {true};
    w.edges.push_back({0, 0, 0, Scalar(1), 1, 1, ""});
    w.edges.push_back({1, 0, 0, Scalar(1), -1, 0, ""});
    return w;
}

Report translation_report(const ReciprocalWalk& a, const ReciprocalWalk& b, long shift) {
    Report r;
    std::map<std::pair<long, long>, const WalkEdge*> index;
    for (auto& e : b.edges) index[{label_value(b.vertices[e.src]), label_value(b.vertices[e.tgt])}] = &e;
    for (auto& e : a.edges) {
        long s = label_value(a.vertices[e.src]) + shift, t = label_value(a.vertices[e.tgt]) + shift;
        auto it = index.find({s, t});
        json wit = edge_witness(a, e.id);
        bool ok = it != index.end() && it->second->weight == e.weight && it->second->sign == e.sign;
        r.check("translation.edge", ok, wit);
    }
    r.check("translation.parameter", a.t == b.t, {{"t", a.t.str()}, {"t'", b.t.str()}});
    return r;
}

BlockMap build_r_map(const ReciprocalWalk& w) {
    BigradedSpace h = w.space(), hh = balanced_tensor(h, h);
    BlockMap r;
    for (size_t vi = 0; vi < w.vertices.size(); ++vi) {
        int v = static_cast<int>(vi);
        Mat col(hh.dim(v, v), 1);
        for (int e : w.out_edges(v)) {
            const WalkEdge& ed = w.edges[e];
            int z = ed.tgt;
            size_t pos = balanced_offset(h, h, v, z, v) + w.position(e) * h.dim(z, v) + w.position(ed.bar);
            col(pos, 0) = Scalar(ed.sign) * sqrt(ed.weight);
        }
        r.blocks[{v, v}] = col;
    }
    return r;
}

Report verify_conjugate_equations(const ReciprocalWalk& w, const BlockMap& r) {
    Report rep;
    int st = real_sign(w.t);
    Scalar abs_t = st < 0 ? -w.t : w.t;
    for (size_t vi = 0; vi < w.vertices.size(); ++vi) {
        int v = static_cast<int>(vi);
        if (!w.interior[vi]) {
            rep.skip("conjugate.norm");
            continue;
        }
        auto it = r.blocks.find({v, v});
        Scalar val;
        if (it != r.blocks.end() && it->second.rows() > 0) val = (it->second.adjoint() * it->second)(0, 0);
        rep.check("conjugate.norm", val == abs_t, {{"vertex", w.vertices[vi]}, {"value", val.str()}});
    }

    BigradedSpace h = w.space(), u = w.unit_space(), hh = balanced_tensor(h, h);
    BlockMap id_h, r_adj, assoc_inv;
    for (auto& [kl, d] : h.dims) id_h.blocks[kl] = Mat::identity(d);
    for (auto& [kl, m] : r.blocks) r_adj.blocks[kl] = m.adjoint();
    for (auto& [kl, m] : associator(h, h, h).blocks) assoc_inv.blocks[kl] = m.transpose();
    BlockMap one_r = tensor_maps(id_h, r, h, h, u, hh);
    BlockMap r_one = tensor_maps(r_adj, id_h, hh, u, h, h);
    BlockMap snake = compose_maps(r_one, compose_maps(assoc_inv, one_r));
    for (auto& [kl, d] : h.dims) {
        auto [v, z] = kl;
        if (!w.interior[v] || !w.interior[z]) {
            rep.skip("conjugate.snake");
            continue;
        }
        auto it = snake.blocks.find(kl);
        bool ok = it != snake.blocks.end() && it->second == Mat::identity(d) * Scalar(st);
        rep.check("conjugate.snake", ok, {{"block", {w.vertices[v], w.vertices[z]}}});
    }
    return rep;
}

ColoredWalk color_walk(const ReciprocalWalk& w, const std::vector<std::string>& colors,
                       const std::map<std::string, std::string>& color_bar) {
    ColoredWalk cw;
    cw.walk = w;
    cw.colors = colors;
    cw.color_bar = color_bar;
    std::set<std::string> cs(colors.begin(), colors.end());
    for (auto& a : colors) {
        auto it = color_bar.find(a);
        if (it == color_bar.end() || !cs.count(it->second) || color_bar.at(it->second) != a)
            throw Error("unknown-color", "color involution undefined at " + a);
    }
    for (auto& e : w.edges)
        if (!cs.count(e.color))
            throw Error("unknown-color", "edge " + std::to_string(e.id) + " has no color in the color set");

    Report& r = cw.report;
    for (auto& a : colors)
        for (size_t vi = 0; vi < w.vertices.size(); ++vi) {
            int v = static_cast<int>(vi);
            std::vector<int> found;
            for (int e : w.out_edges(v))
                if (w.edges[e].color == a) found.push_back(e);
            json wit = {{"color", a}, {"vertex", w.vertices[vi]}, {"edges", found}};
            if (found.size() == 1) {
                const WalkEdge& e = w.edges[found[0]];
                cw.edge_of[{a, v}] = e.id;
                cw.action[{a, v}] = e.tgt;
                cw.gamma[{a, v}] = Scalar(e.sign) * sqrt(e.weight);
                r.pass("color.unique");
            } else if (found.empty() && !w.interior[vi]) {
                r.skip("color.unique");
            } else {
                r.fail("color.unique", wit);
            }
        }
    for (auto& [av, e] : cw.edge_of) {
        auto [a, v] = av;
        int target = cw.action.at(av);
        auto it = cw.edge_of.find({color_bar.at(a), target});
        if (it == cw.edge_of.end()) {
            if (w.interior[target])
                r.fail("color.involution", {{"color", a}, {"vertex", w.vertices[v]}});
            else
                r.skip("color.involution");
            continue;
        }
        r.check("color.involution", w.edges[e].bar == it->second, {{"color", a}, {"vertex", w.vertices[v]}});
    }
    for (auto& a : colors) {
        std::map<int, int> preimage;
        bool ok = true;
        for (size_t vi = 0; vi < w.vertices.size(); ++vi) {
            auto it = cw.action.find({a, static_cast<int>(vi)});
            if (it == cw.action.end()) continue;
            if (preimage.count(it->second) && (w.interior[vi] || w.interior[preimage[it->second]])) ok = false;
            preimage[it->second] = static_cast<int>(vi);
        }
        for (size_t vi = 0; vi < w.vertices.size(); ++vi)
            if (w.interior[vi] && !preimage.count(static_cast<int>(vi))) ok = false;
        r.check("color.bijective", ok, {{"color", a}});
    }
    return cw;
}

ColoredWalk podles_coloring(const ReciprocalWalk& w) {
    ReciprocalWalk c = w;
    for (auto& e : c.edges) e.color = label_value(c.vertices[e.tgt]) > label_value(c.vertices[e.src]) ? "+" : "-";
    return color_walk(c, {"+", "-"}, {{"+", "-"}, {"-", "+"}});
}

json walk_to_json(const ReciprocalWalk& w) {
    json j;
    j["t"] = w.t.str();
    j["vertices"] = w.vertices;
    json interior = json::array();
    for (size_t v = 0; v < w.vertices.size(); ++v)
        if (w.interior[v]) interior.push_back(w.vertices[v]);
    j["interior"] = interior;
    json edges = json::array();
    for (auto& e : w.edges) {
        json je = {{"id", e.id}, {"src", w.vertices[e.src]}, {"tgt", w.vertices[e.tgt]},
                   {"weight", e.weight.str()}, {"sign", e.sign}, {"bar", e.bar}};
        if (!e.color.empty()) je["color"] = e.color;
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

namespace {

std::string label_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    throw Error("schema", "expected a vertex label at " + where);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw Error("schema", "missing " + where + "/" + key);
    return j.at(key);
}

}  // namespace

ReciprocalWalk walk_from_json(const json& j) {
    ReciprocalWalk w;
    w.t = scalar_from_json(field(j, "t", ""), "/t");
    const json& vs = field(j, "vertices", "");
    if (!vs.is_array()) throw Error("schema", "expected an array at /vertices");
    for (size_t i = 0; i < vs.size(); ++i) w.vertices.push_back(label_from_json(vs[i], "/vertices/" + std::to_string(i)));
    std::set<std::string> uniq(w.vertices.begin(), w.vertices.end());
    if (uniq.size() != w.vertices.size()) throw Error("schema", "duplicate vertex label at /vertices");
    w.interior.assign(w.vertices.size(), false);
    const json& in = field(j, "interior", "");
    if (!in.is_array()) throw Error("schema", "expected an array at /interior");
    for (size_t i = 0; i < in.size(); ++i) {
        std::string where = "/interior/" + std::to_string(i);
        auto lbl = label_from_json(in[i], where);
        if (!uniq.count(lbl)) throw Error("schema", "unknown vertex at " + where);
        w.interior[w.vertex(lbl)] = true;
    }
    const json& es = field(j, "edges", "");
    if (!es.is_array()) throw Error("schema", "expected an array at /edges");
    w.edges.resize(es.size());
    std::vector<bool> seen(es.size(), false);
    for (size_t i = 0; i < es.size(); ++i) {
        std::string where = "/edges/" + std::to_string(i);
        const json& je = es[i];
        const json& id = field(je, "id", where);
        if (!id.is_number_integer() || id.get<long>() < 0 || id.get<size_t>() >= es.size() || seen[id.get<size_t>()])
            throw Error("schema", "edge ids must be 0..n-1 without repetition at " + where + "/id");
        WalkEdge e;
        e.id = id.get<int>();
        seen[e.id] = true;
        auto src = label_from_json(field(je, "src", where), where + "/src");
        auto tgt = label_from_json(field(je, "tgt", where), where + "/tgt");
        if (!uniq.count(src)) throw Error("schema", "unknown vertex at " + where + "/src");
        if (!uniq.count(tgt)) throw Error("schema", "unknown vertex at " + where + "/tgt");
        e.src = w.vertex(src);
        e.tgt = w.vertex(tgt);
        e.weight = scalar_from_json(field(je, "weight", where), where + "/weight");
        const json& sg = field(je, "sign", where);
        if (!sg.is_number_integer() || (sg.get<int>() != 1 && sg.get<int>() != -1))
            throw Error("schema", "sign must be +1 or -1 at " + where + "/sign");
        e.sign = sg.get<int>();
        const json& bar = field(je, "bar", where);
        if (!bar.is_number_integer() || bar.get<long>() < 0 || bar.get<size_t>() >= es.size())
            throw Error("schema", "bar must be an edge id at " + where + "/bar");
        e.bar = bar.get<int>();
        if (je.contains("color")) {
            if (!je["color"].is_string()) throw Error("schema", "color must be a string at " + where + "/color");
            e.color = je["color"].get<std::string>();
        }
        w.edges[e.id] = e;
    }
    return w;
}

}  // namespace pqg
