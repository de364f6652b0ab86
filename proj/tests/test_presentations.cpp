#include <doctest.h>

#include <random>

#include "pqg/presentations.hpp"

using namespace pqg;

namespace {

bool axiom_failed(const Report& r, const std::string& axiom) {
    return r.has(axiom) && r.at(axiom).failed > 0;
}

size_t count_degree(const std::vector<Word>& b, int deg) {
    size_t n = 0;
    for (auto& w : b) n += word_degree(w) == deg;
    return n;
}

// Dense rational rank of the degree-2 unitarity relations of the one-vertex walk, with u* rewritten
// by hand: u*_{e,f} = s(e) s(f) u_{ebar,fbar}, e = 0, ebar = 1, signs +1 and -1.
size_t one_vertex_rank_oracle() {
    const int sign[2] = {1, -1};
    auto idx = [](int e, int f) { return 2 * e + f; };
    // coordinates: 0 unit, 1..4 degree-1 words, 5..20 degree-2 words
    auto w2 = [&](int e1, int f1, int e2, int f2) { return 5 + 4 * idx(e1, f1) + idx(e2, f2); };
    std::vector<std::vector<mpq_class>> rows;
    for (int e = 0; e < 2; ++e)
        for (int f = 0; f < 2; ++f) {
            std::vector<mpq_class> a(21), b(21);
            for (int g = 0; g < 2; ++g) {
                // u*_{g,e} u_{g,f} and u_{e,g} u*_{f,g}
                a[w2(1 - g, 1 - e, g, f)] += sign[g] * sign[e];
                b[w2(e, g, 1 - f, 1 - g)] += sign[f] * sign[g];
            }
            if (e == f) {
                a[0] -= 1;
                b[0] -= 1;
            }
            rows.push_back(a);
            rows.push_back(b);
        }
    size_t rank = 0;
    for (size_t col = 0; col < 21 && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            mpq_class m = rows[r][col] / rows[rank][col];
            for (size_t c = 0; c < 21; ++c) rows[r][c] -= m * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

NCPoly random_poly(const Presentation& p, std::mt19937& rng, int max_len) {
    const ReciprocalWalk& w = p.walk;
    std::uniform_int_distribution<int> len_d(1, max_len), coef_d(-3, 3);
    NCPoly x;
    int start = std::uniform_int_distribution<int>(0, static_cast<int>(w.edges.size()) - 1)(rng);
    for (int t = 0; t < 3; ++t) {
        Word wd;
        int len = len_d(rng);
        int top = w.edges[start].src, bot = w.edges[start].src;
        for (int i = 0; i < len; ++i) {
            auto a = w.out_edges(top), b = w.out_edges(bot);
            int e = a[rng() % a.size()], f = b[rng() % b.size()];
            bool star = rng() % 2;
            if (star) {
                // u*_{ebar,fbar} has the same grade as u_{e,f}
                wd.push_back({Letter::ustar, w.edges[e].bar, w.edges[f].bar});
            } else {
                wd.push_back({Letter::u, e, f});
            }
            top = w.edges[e].tgt;
            bot = w.edges[f].tgt;
        }
        x.add(wd, Scalar(coef_d(rng)));
    }
    return x;
}

}  // namespace

TEST_CASE("one-vertex presentation: generators, relations and structure maps") {
    Presentation p = build_presentation(one_vertex_walk());
    CHECK(p.u_generators() == 4);
    size_t ints = 0, unis = 0;
    for (auto& r : p.relations) (r.kind == "int" ? ints : unis)++;
    CHECK(ints == 4);
    CHECK(unis == 8);
    NCPoly u01 = word_poly({{Letter::u, 0, 1}});
    CHECK(counit(p, u01).is_zero());
    CHECK(counit(p, word_poly({{Letter::u, 1, 1}})) == Scalar(1));
    TensorPoly d = coproduct(p, u01);
    CHECK(d.size() == 2);
    CHECK(d.at({{{Letter::u, 0, 0}}, {{Letter::u, 0, 1}}}) == Scalar(1));
    NCPoly s = antipode(p, u01);
    CHECK(s == word_poly({{Letter::ustar, 1, 0}}));
}

TEST_CASE("one-vertex quotient dimensions against a dense oracle") {
    Presentation p = build_presentation(one_vertex_walk());
    IdealSolver s1(p, 1);
    auto b1 = s1.basis({0, 0, 0, 0});
    CHECK(count_degree(b1, 1) == 4);
    CHECK(b1.size() == 5);

    IdealSolver s2(p, 2);
    auto b2 = s2.basis({0, 0, 0, 0});
    size_t rank = one_vertex_rank_oracle();
    CHECK(b2.size() == 21 - rank);
    CHECK(b2.size() == 14);
    CHECK(graded_basis(p, {0, 0, 0, 0}, 2).dim == 14);
}

TEST_CASE("witnesses replay to the reduced difference") {
    Presentation p = build_presentation(podles_walk(Scalar::parse("1/2"), Scalar(0), -3, 3));
    IdealSolver solver(p, 3);
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        NCPoly x = random_poly(p, rng, 3);
        auto red = solver.reduce(x);
        REQUIRE(red.complete);
        NCPoly diff = x;
        diff -= red.remainder;
        CHECK(replay(p, red.witness) == diff);
        NCPoly again = solver.reduce(red.remainder).remainder;
        CHECK(again == red.remainder);
    }
}

TEST_CASE("property: relation set is closed under the star") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        long lo = -static_cast<long>(rng() % 3) - 1, hi = static_cast<long>(rng() % 3) + 1;
        Scalar q = trial % 2 ? Scalar::parse("1/3") : Scalar::parse("-1/2");
        Presentation p = build_presentation(podles_walk(q, Scalar(0), lo, hi));
        IdealSolver solver(p, 2);
        for (auto& r : p.relations) {
            if (!r.assertable) continue;
            NCPoly s = poly_star(r.poly);
            auto wit = solver.member(s);
            REQUIRE(wit);
            CHECK(replay(p, *wit) == s);
        }
    }
}

TEST_CASE("one-vertex presentation is Hopf well-posed to degree 4") {
    Presentation p = build_presentation(one_vertex_walk());
    Report r = check_hopf_wellposed(p, 4);
    CHECK(r.ok());
    CHECK(r.at("hopf.coproduct").passed > 0);
    CHECK(r.at("hopf.antipode").passed == p.relations.size());
    CHECK(r.at("hopf.counit").passed == p.relations.size());
}

TEST_CASE("Podles window is Hopf well-posed on interior blocks") {
    Presentation p = build_presentation(podles_walk(Scalar::parse("1/2"), Scalar(0), -4, 4));
    Report r = check_hopf_wellposed(p, 4);
    CHECK(r.ok());
    CHECK(r.at("hopf.coproduct").passed > 0);
    CHECK(r.at("hopf.coproduct").skipped > 0);
    CHECK(r.at("hopf.antipode").passed > 0);
}

TEST_CASE("inverted EqInt coefficient breaks the antipode check") {
    Presentation p = build_presentation(podles_walk(Scalar::parse("1/2"), Scalar(0), -3, 3));
    for (auto& [ef, idx] : p.int_relation) {
        Scalar c = p.star_coef[ef].inv();
        p.star_coef[ef] = c;
        auto& wt = p.walk.edges;
        Relation& r = p.relations[idx];
        r.poly = NCPoly{};
        r.poly.add({{Letter::ustar, ef.first, ef.second}}, Scalar(1));
        r.poly.add({{Letter::u, wt[ef.first].bar, wt[ef.second].bar}}, -c);
    }
    Report r = check_hopf_wellposed(p, 2);
    CHECK(axiom_failed(r, "hopf.antipode"));
    CHECK_FALSE(r.ok());
}

TEST_CASE("Podles presentation has 64 generators on [-2, 2]") {
    Presentation p = build_presentation(podles_walk(Scalar::parse("1/2"), Scalar(0), -2, 2));
    CHECK(p.u_generators() == 64);
    json j = presentation_to_json(p);
    CHECK(j["generators"] == 64);
    CHECK(j["relations"].size() == p.relations.size());
}

TEST_CASE("colored matrices of the Podles and one-vertex walks") {
    ReciprocalWalk w = podles_walk(Scalar::parse("1/2"), Scalar(0), -4, 4);
    ColoredWalk cw = podles_coloring(w);
    Presentation p = build_presentation(cw.walk);
    ColoredMatrix cm = colored_matrix(p, cw, 2);
    CHECK(cm.report.ok());
    CHECK(cm.report.at("colored.unitarity-rows").passed > 0);
    CHECK(cm.report.at("colored.unitarity-columns").passed > 0);
    CHECK(cm.report.at("colored.adjoint").passed > 0);
    CHECK(cm.report.at("colored.grading").passed > 0);

    ReciprocalWalk ov = one_vertex_walk();
    ov.edges[0].color = "a";
    ov.edges[1].color = "abar";
    ColoredWalk co = color_walk(ov, {"a", "abar"}, {{"a", "abar"}, {"abar", "a"}});
    ColoredMatrix cm1 = colored_matrix(build_presentation(co.walk), co, 2);
    CHECK(cm1.report.ok());
    CHECK(cm1.report.at("colored.unitarity-rows").passed == 4);
}

TEST_CASE("dynamical SU(2) relations hold and a wrong q is rejected") {
    Scalar q = Scalar::parse("1/2");
    Report r = dynamical_su2_report(q, Scalar(0), -5, 5, 2);
    CHECK(r.ok());
    for (auto id : {"dynamical.qcom-1", "dynamical.qcom-2", "dynamical.det-1", "dynamical.det-2", "dynamical.det-3",
                    "dynamical.det-4", "dynamical.grading-alpha", "dynamical.grading-beta",
                    "dynamical.coproduct-alpha", "dynamical.coproduct-beta", "dynamical.unit-coproduct"}) {
        INFO(id);
        CHECK(r.at(id).passed > 0);
    }
    Report bad = dynamical_su2_report(q, Scalar(0), -5, 5, 2, q * q);
    CHECK(axiom_failed(bad, "dynamical.qcom-1"));
    CHECK_THROWS_AS(dynamical_su2_report(q, Scalar(0), -2, 2, 2), Error);
}

TEST_CASE("truncated one-vertex algebra: corepresentations and Peter-Weyl count") {
    Presentation p = build_presentation(one_vertex_walk());
    TruncatedAlgebra t = truncate(p, 2);
    CHECK(t.data.total_dim() == 14);
    Report alg = verify_partial_algebra(t.data);
    CHECK(alg.ok());
    Report c = verify_corep(t.data, t.generating);
    CHECK(c.ok());
    Corep uu = tensor(t.data, t.generating, t.generating);
    Decomposition dec = decompose(t.data, uu);
    std::vector<size_t> dims;
    for (auto& s : dec.summands) dims.push_back(s.corep.total_dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<size_t>{1, 3});
    // trivial, U and the 3-dimensional summand: 1 + 4 + 9
    CHECK(1 + 4 + dims[1] * dims[1] == t.data.total_dim());
}
