#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pqg/cli.hpp"
#include "pqg/corep.hpp"
#include "pqg/error.hpp"
#include "pqg/presentations.hpp"

using namespace pqg;

namespace {

const std::string fixtures = PQG_FIXTURES;

struct Shipped {
    std::string name;
    PartialHopfData hopf;
    FiberData fiber;
};

std::vector<Shipped> shipped() {
    std::vector<Shipped> out;
    out.push_back({"pair groupoid n=3", std::get<PartialHopfData>(parse_spec(fixtures + "/pairgroupoid3.json")),
                   pair_groupoid_fiber(3)});
    for (auto f : {"vecz2", "vecz3"}) {
        FiberData fd = std::get<FiberData>(parse_spec(fixtures + "/" + f + ".json"));
        out.push_back({f, reconstruct(fd).hopf, fd});
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string first_failure(const Report& r) {
    for (auto& [name, t] : r.axioms())
        if (t.failed) return name + (t.witnesses.empty() ? "" : " " + t.witnesses.front().dump());
    return "";
}

bool failed(const Report& r, const std::string& axiom) { return r.has(axiom) && r.at(axiom).failed > 0; }

// A failure whose first witness is a nonempty object or array.
bool localized(const Report& r) {
    for (auto& [name, t] : r.axioms())
        if (t.failed && !t.witnesses.empty() && !t.witnesses.front().is_null() && !t.witnesses.front().empty())
            return true;
    return false;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

Outcome axiom_suite() {
    Outcome o;
    auto t = std::chrono::steady_clock::now();
    for (auto& s : shipped()) {
        Report r = verify_all(s.hopf);
        o.require(r.ok(), s.name + ": " + first_failure(r));
        for (auto ax : {"algebra.associativity", "bialgebra.unit-comultiplication", "canonical.R1T1=G1",
                        "integral.positive", "star.involutive"})
            o.require(r.count(ax) > 0, s.name + ": no checks for " + ax);
    }
    double sec = seconds_since(t);
    o.require(sec < 10, "runtime " + std::to_string(sec) + " s");
    if (o.pass) o.detail = "3 PCQGs, " + std::to_string(sec) + " s";
    return o;
}

// Brute-force block counts: A(k l; m n) of the pair groupoid is C when k = l and m = n; for Vec_G it is
// spanned by the g with g l = k and g n = m.
Outcome dimension_oracle() {
    Outcome o;
    for (int n : {2, 3, 4}) {
        size_t oracle = 0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    for (int q = 0; q < n; ++q) oracle += k == l && m == q;
        size_t dim = reconstruct(pair_groupoid_fiber(n)).hopf.total_dim();
        o.require(dim == oracle && dim == static_cast<size_t>(n * n), "pair groupoid n=" + std::to_string(n));
    }
    for (int n : {2, 3}) {
        FiniteGroup g = cyclic_group(n);
        size_t oracle = 0;
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m)
                        for (int q = 0; q < n; ++q) oracle += g.mul[a][l] == k && g.mul[a][q] == m;
        size_t dim = reconstruct(pointed_group_fiber(g)).hopf.total_dim();
        o.require(dim == oracle && dim == static_cast<size_t>(n * n * n), "Vec_Z" + std::to_string(n));
    }
    if (o.pass) o.detail = "n^2 for n=2,3,4; |G|^3 for Z/2, Z/3";
    return o;
}

Outcome peter_weyl() {
    Outcome o;
    for (auto& s : shipped()) {
        auto irr = unitary_irreducibles(s.hopf);
        Report pw = peter_weyl_report(s.hopf, irr);
        o.require(pw.ok() && pw.count("peter-weyl.bijective") > 0, s.name + ": " + first_failure(pw));
        RoundtripResult rt = roundtrip_check(s.fiber);
        o.require(rt.report.ok(), s.name + ": " + first_failure(rt.report));
        o.require(rt.irreducible_count == static_cast<size_t>(s.fiber.num_irreps()) &&
                      irr.size() == rt.irreducible_count,
                  s.name + ": irreducible count");
        std::map<std::tuple<int, int, int>, size_t> input;
        for (auto& c : s.fiber.channels) ++input[{c.b, c.c, c.a}];
        std::map<std::tuple<int, int, int>, size_t> found;
        for (auto& [k, m] : rt.fusion)
            if (m) found[k] = m;
        o.require(found == input, s.name + ": fusion table");
    }
    if (o.pass) o.detail = "bijective, counts and fusion tables match";
    return o;
}

Outcome schur() {
    Outcome o;
    size_t pairs = 0;
    for (auto& s : shipped()) {
        auto irr = unitary_irreducibles(s.hopf);
        for (size_t i = 0; i < irr.size(); ++i) {
            o.require(irr[i].d_f == irr[i].d_g, s.name + ": d_F != d_G");
            for (size_t j = 0; j < irr.size(); ++j) {
                Report r = schur_report(s.hopf, irr[i], irr[j], i == j);
                o.require(r.ok(), s.name + ": " + first_failure(r));
                if (i == j) o.require(r.count("schur.dimensions") > 0, s.name + ": no dimension check");
                ++pairs;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " ordered pairs";
    return o;
}

Outcome characters() {
    Outcome o;
    for (auto& s : shipped()) {
        CharacterTable t = woronowicz_characters(s.hopf, unitary_irreducibles(s.hopf), {-2, -1, 0, 1, 2});
        o.require(t.report.ok(), s.name + ": " + first_failure(t.report));
        for (auto ax : {"characters.counit", "characters.convolution", "characters.units",
                        "characters.antipode-square", "characters.modular"})
            o.require(t.report.count(ax) > 0, s.name + ": no checks for " + ax);
        for (auto& [k, v] : s.hopf.counit) o.require(t.f.at(0).at(k) == v, s.name + ": f_0 != counit");
    }
    if (o.pass) o.detail = "z in -2..2 on 3 PCQGs";
    return o;
}

Outcome walks() {
    Outcome o;
    auto t = std::chrono::steady_clock::now();
    ReciprocalWalk w = podles_walk(Scalar(1, 2), Scalar(0), -8, 8);
    Report v = validate_walk(w);
    Report c = verify_conjugate_equations(w, build_r_map(w));
    double sec = seconds_since(t);
    o.require(w.t == Scalar(-5, 2), "t = " + w.t.str());
    o.require(v.ok() && v.at("walk.weight-reciprocality").passed > 0 && v.at("walk.random-walk").passed == 15,
              first_failure(v));
    o.require(c.ok() && c.at("conjugate.norm").passed == 15 && c.at("conjugate.snake").passed > 0, first_failure(c));
    o.require(sec < 1, "runtime " + std::to_string(sec) + " s");
    if (o.pass) o.detail = "15 interior vertices, R*R = 5/2, snake = -1, " + std::to_string(sec) + " s";
    return o;
}

Outcome presentation() {
    Outcome o;
    auto t = std::chrono::steady_clock::now();
    Report one = check_hopf_wellposed(build_presentation(one_vertex_walk()), 4);
    Report pod = check_hopf_wellposed(build_presentation(podles_walk(Scalar(1, 2), Scalar(0), -4, 4)), 4);
    double sec = seconds_since(t);
    o.require(one.ok() && one.at("hopf.coproduct").skipped == 0, "one-vertex: " + first_failure(one));
    o.require(pod.ok() && pod.at("hopf.coproduct").passed > 0, "Podles: " + first_failure(pod));
    o.require(sec < 60, "runtime " + std::to_string(sec) + " s");
    if (o.pass)
        o.detail = std::to_string(one.at("hopf.coproduct").passed + pod.at("hopf.coproduct").passed) +
                   " coproduct components replayed, " + std::to_string(sec) + " s";
    return o;
}

Outcome dynamical() {
    Outcome o;
    auto t = std::chrono::steady_clock::now();
    Scalar q(1, 2);
    Report r = dynamical_su2_report(q, Scalar(0), -6, 6, 3);
    Report bad = dynamical_su2_report(q, Scalar(0), -6, 6, 3, q * q);
    double sec = seconds_since(t);
    o.require(r.ok(), first_failure(r));
    for (auto ax : {"dynamical.qcom-1", "dynamical.qcom-2", "dynamical.det-1", "dynamical.det-2", "dynamical.det-3",
                    "dynamical.det-4", "dynamical.grading-alpha", "dynamical.grading-beta",
                    "dynamical.coproduct-alpha", "dynamical.coproduct-beta"})
        o.require(r.has(ax) && r.at(ax).passed > 0, std::string("no certified block for ") + ax);
    o.require(failed(bad, "dynamical.qcom-1") && localized(bad), "q^2 mutation not rejected");
    o.require(sec < 120, "runtime " + std::to_string(sec) + " s");
    if (o.pass) o.detail = "six relations and both coproducts certified, q^2 rejected, " + std::to_string(sec) + " s";
    return o;
}

Outcome negative_controls() {
    Outcome o;
    std::vector<std::pair<std::string, std::function<Report()>>> cases;
    auto pg = [] { return std::get<PartialHopfData>(parse_spec(fixtures + "/pairgroupoid3.json")); };
    auto z3 = [] { return std::get<FiberData>(parse_spec(fixtures + "/vecz3.json")); };
    auto z2h = [] { return reconstruct(std::get<FiberData>(parse_spec(fixtures + "/vecz2.json"))).hopf; };
    cases.push_back({"partial algebra", [&] {
                         auto d = pg();
                         d.mult[{Square{0, 0, 1, 1}, Square{0, 0, 1, 1}}](0, 0) = Scalar(2);
                         return verify_partial_algebra(d);
                     }});
    cases.push_back({"partial bialgebra", [&] {
                         auto d = pg();
                         d.comult[{Square{0, 0, 2, 2}, 1, 1}](0, 0) = Scalar(3);
                         return verify_partial_bialgebra(d);
                     }});
    cases.push_back({"antipode", [&] {
                         auto d = z2h();
                         auto it = d.antipode->begin();
                         it->second = it->second * Scalar(-1);
                         return verify_antipode(d);
                     }});
    cases.push_back({"canonical maps", [&] {
                         auto d = z2h();
                         auto it = d.antipode->begin();
                         it->second = it->second * Scalar(-1);
                         return verify_canonical_maps(d);
                     }});
    cases.push_back({"integral", [&] {
                         auto d = pg();
                         (*d.integral)[{0, 0, 0, 0}] = {Scalar(2)};
                         return verify_integral(d);
                     }});
    cases.push_back({"star", [&] {
                         auto d = reconstruct(z3()).hopf;
                         auto& st = *d.star;
                         st.begin()->second = st.begin()->second * Scalar::imag();
                         return verify_star(d);
                     }});
    cases.push_back({"fiber data", [&] {
                         auto f = z3();
                         auto it = f.iso.begin();
                         std::advance(it, 5);
                         it->second = it->second * Scalar(-1);
                         return validate_fiber_data(f);
                     }});
    cases.push_back({"corepresentation", [&] {
                         auto d = reconstruct(z3()).hopf;
                         Corep x = full_regular_corep(d).corep;
                         Square k = x.blocks.begin()->first;
                         x.blocks[k][0] = x.blocks[k][0] * Scalar(2);
                         return verify_corep(d, x);
                     }});
    cases.push_back({"Schur orthogonality", [&] {
                         auto d = reconstruct(z3()).hopf;
                         auto irr = unitary_irreducibles(d);
                         return schur_report(d, irr[1], irr[1], false);
                     }});
    cases.push_back({"characters", [&] {
                         auto d = pg();
                         auto irr = unitary_irreducibles(d);
                         for (auto& [kl, m] : irr[0].f.blocks) m = m * Scalar(2);
                         for (auto& [kl, m] : irr[0].g.blocks) m = m * Scalar(1, 2);
                         return woronowicz_characters(d, irr, {1}).report;
                     }});
    cases.push_back({"walk", [&] {
                         ReciprocalWalk w = podles_walk(Scalar(1, 2), Scalar(0), -3, 3);
                         w.edges[4].weight = w.edges[4].weight * Scalar(2);
                         return validate_walk(w);
                     }});
    cases.push_back({"conjugate equations", [&] {
                         ReciprocalWalk w = podles_walk(Scalar(1, 2), Scalar(0), -3, 3);
                         for (auto& e : w.edges) e.sign = 1;
                         return verify_conjugate_equations(w, build_r_map(w));
                     }});
    cases.push_back({"coloring", [&] {
                         ReciprocalWalk w = podles_walk(Scalar(1, 2), Scalar(0), -3, 3);
                         for (auto& e : w.edges) e.color = "a";
                         return color_walk(w, {"a"}, {{"a", "a"}}).report;
                     }});
    cases.push_back({"Hopf well-posedness", [&] {
                         Presentation p = build_presentation(podles_walk(Scalar(1, 2), Scalar(0), -3, 3));
                         for (auto& [ef, idx] : p.int_relation) {
                             Scalar c = p.star_coef[ef].inv();
                             p.star_coef[ef] = c;
                             Relation& r = p.relations[idx];
                             r.poly = NCPoly{};
                             r.poly.add({{Letter::ustar, ef.first, ef.second}}, Scalar(1));
                             r.poly.add({{Letter::u, p.walk.edges[ef.first].bar, p.walk.edges[ef.second].bar}}, -c);
                         }
                         return check_hopf_wellposed(p, 2);
                     }});
    cases.push_back({"colored matrix", [&] {
                         ColoredWalk cw = podles_coloring(podles_walk(Scalar(1, 2), Scalar(0), -4, 4));
                         cw.gamma.at({"+", 4}) = cw.gamma.at({"+", 4}) * Scalar(2);
                         return colored_matrix(build_presentation(cw.walk), cw, 2).report;
                     }});
    cases.push_back({"dynamical SU(2)", [&] {
                         return dynamical_su2_report(Scalar(1, 2), Scalar(0), -5, 5, 2, Scalar(1, 4));
                     }});
    size_t caught = 0;
    for (auto& [name, make] : cases) {
        Report r;
        try {
            r = make();
        } catch (const Error& e) {
            o.require(false, name + " threw " + e.code());
            continue;
        }
        bool ok = !r.ok() && localized(r);
        o.require(ok, name + " mutation not caught with a witness");
        caught += ok;
    }
    o.detail = std::to_string(caught) + "/" + std::to_string(cases.size()) + " mutations caught with witnesses" +
               (o.pass ? "" : "; " + o.detail);
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"axiom suite", axiom_suite},
        {"dimension oracle", dimension_oracle},
        {"Peter-Weyl", peter_weyl},
        {"Schur orthogonality", schur},
        {"characters", characters},
        {"walks", walks},
        {"presentation well-posedness", presentation},
        {"dynamical SU(2)", dynamical},
        {"negative controls", negative_controls},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
