#include <doctest.h>

#include <random>

#include "pqg/error.hpp"
#include "pqg/partial_hopf.hpp"
#include "pqg/tannaka.hpp"
#include "support.hpp"

using namespace pqg;
using namespace pqg::testing;

namespace {

bool axiom_failed(const Report& r, const std::string& axiom) {
    return r.has(axiom) && r.at(axiom).failed > 0;
}

Report only_failures(const Report& r) {
    Report out;
    for (auto& [name, t] : r.axioms())
        if (t.failed) out.fail(name, t.witnesses.empty() ? json() : t.witnesses.front());
    return out;
}

}  // namespace

TEST_CASE("hand-written pair groupoid passes every verifier") {
    auto d = pair_groupoid(3);
    CHECK(d.total_dim() == 9);
    Report r = verify_all(d);
    CHECK_MESSAGE(r.ok(), only_failures(r).to_json().dump());
    CHECK(r.count("algebra.associativity") > 0);
    CHECK(r.count("integral.positive") > 0);
}

TEST_CASE("reconstructed pair groupoid agrees with the hand-written one") {
    auto rec = reconstruct(pair_groupoid_fiber(3)).hopf;
    auto d = pair_groupoid(3);
    CHECK(rec.dims == d.dims);
    for (auto& [key, m] : d.mult) CHECK(mult_matrix(rec, key.first, key.second) == m);
    CHECK(rec.counit == d.counit);
    CHECK(rec.unit == d.unit);
}

TEST_CASE("perturbed structure constant of the pair groupoid breaks the unit law at that block") {
    auto d = pair_groupoid(3);
    d.mult[{Square{0, 0, 1, 1}, Square{0, 0, 1, 1}}](0, 0) = Scalar(2);
    Report r = verify_partial_algebra(d);
    REQUIRE(axiom_failed(r, "algebra.unit-left"));
    CHECK(r.at("algebra.unit-left").witnesses.front().at("blocks")[0] == "1,1;2,2");
}

TEST_CASE("perturbed structure constant breaks associativity with a localized triple") {
    auto d = reconstruct(pointed_group_fiber(cyclic_group(3))).hopf;
    auto victim = d.mult.begin();
    while (victim->first.first == victim->first.second) ++victim;
    victim->second(0, 0) = victim->second(0, 0) * Scalar(2);
    Report r = verify_partial_algebra(d);
    REQUIRE(axiom_failed(r, "algebra.associativity"));
    const json& w = r.at("algebra.associativity").witnesses.front();
    CHECK(w.at("blocks").size() == 3);
}

TEST_CASE("vanishing counit on a diagonal unit fails non-degeneracy") {
    auto d = pair_groupoid(3);
    d.counit[{1, 1, 1, 1}] = {Scalar(0)};
    Report r = verify_partial_bialgebra(d);
    CHECK(axiom_failed(r, "bialgebra.nondegenerate"));
    CHECK(r.at("bialgebra.nondegenerate").witnesses.front().at("object") == "2");
}

TEST_CASE("perturbed coproduct breaks coassociativity or unit comultiplication") {
    auto d = pair_groupoid(3);
    d.comult[{Square{0, 0, 2, 2}, 1, 1}](0, 0) = Scalar(3);
    Report r = verify_partial_bialgebra(d);
    CHECK_FALSE(r.ok());
    CHECK(axiom_failed(r, "bialgebra.unit-comultiplication"));
}

TEST_CASE("dropping the antipode on one block is reported for that block") {
    auto d = pair_groupoid(3);
    d.antipode->erase(Square{0, 0, 1, 1});
    Report r = verify_antipode(d);
    CHECK_FALSE(r.ok());
    bool located = false;
    for (auto& [name, t] : r.axioms())
        for (auto& w : t.witnesses)
            if (w.contains("blocks") && w.at("blocks")[0] == "1,1;2,2") located = true;
    CHECK(located);
}

TEST_CASE("wrong antipode breaks R1T1 = G1") {
    auto d = reconstruct(pointed_group_fiber(cyclic_group(2))).hopf;
    auto& s = *d.antipode;
    auto it = s.begin();
    it->second = it->second * Scalar(-1);
    Report r = verify_canonical_maps(d);
    CHECK(axiom_failed(r, "canonical.R1T1=G1"));
}

TEST_CASE("integral scaled by two on one block fails normalization") {
    auto d = pair_groupoid(3);
    (*d.integral)[{0, 0, 0, 0}] = {Scalar(2)};
    Report r = verify_integral(d);
    CHECK(axiom_failed(r, "integral.normalized"));
}

TEST_CASE("negative integral fails positivity") {
    auto d = reconstruct(pointed_group_fiber(cyclic_group(2))).hopf;
    for (auto& [k, v] : *d.integral) v = vec_scale(v, Scalar(-1));
    Report r = verify_integral(d);
    CHECK(axiom_failed(r, "integral.positive"));
}

TEST_CASE("star without coproduct compatibility on one block fails") {
    auto d = reconstruct(pointed_group_fiber(cyclic_group(3))).hopf;
    auto& st = *d.star;
    Square victim = st.begin()->first;
    st[victim] = st[victim] * Scalar::imag();
    Report r = verify_star(d);
    CHECK(axiom_failed(r, "star.comultiplicative"));
}

TEST_CASE("projections of units") {
    auto d = pair_groupoid(3);
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) {
            auto p = compute_projections(d, unit_elem(d, k, m));
            // Expansion: eps(lambda_p 1(k|m)) = delta_pk eps(1(k|m)) = delta_pk delta_km.
            if (k == m) {
                CHECK(p.pi_left == std::map<int, Scalar>{{k, Scalar(1)}});
                CHECK(p.pi_right == std::map<int, Scalar>{{m, Scalar(1)}});
            } else {
                CHECK(p.pi_left.empty());
                CHECK(p.pi_right.empty());
            }
            CHECK(family_product(p.e, p.e) == p.e);
        }
}

TEST_CASE("projections vanish on blocks with an off-diagonal left column") {
    auto d = reconstruct(pointed_group_fiber(cyclic_group(2))).hopf;
    for (auto& [k, dim] : d.dims) {
        if (k.k == k.m) continue;
        for (size_t i = 0; i < dim; ++i) {
            auto p = compute_projections(d, basis_elem(d, k, i));
            for (auto& [q, c] : p.pi_left) CHECK(c.is_zero());
        }
    }
}

TEST_CASE("property: Pi^L and Pi^R agree with the antipode formulas on every basis element") {
    for (auto d : {pair_groupoid(3), reconstruct(pointed_group_fiber(cyclic_group(3))).hopf,
                   reconstruct(groupoid_fiber(2)).hopf}) {
        for (auto& [k, dim] : d.dims)
            for (size_t i = 0; i < dim; ++i) {
                Elem a = basis_elem(d, k, i);
                auto p = compute_projections(d, a);
                auto l = pi_left_via_antipode(d, a);
                auto r = pi_right_via_antipode(d, a);
                REQUIRE(l.has_value());
                REQUIRE(r.has_value());
                auto strip = [](std::map<int, Scalar> m) {
                    std::erase_if(m, [](auto& kv) { return kv.second.is_zero(); });
                    return m;
                };
                CHECK(strip(*l) == strip(p.pi_left));
                CHECK(strip(*r) == strip(p.pi_right));
            }
    }
}

TEST_CASE("property: random antipode perturbations are always detected") {
    std::mt19937 rng(4242);
    auto base = reconstruct(pointed_group_fiber(cyclic_group(3))).hopf;
    std::vector<Square> keys;
    for (auto& [k, m] : *base.antipode) keys.push_back(k);
    std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
    std::uniform_int_distribution<long> val(-3, 3);
    for (int it = 0; it < 12; ++it) {
        auto d = base;
        Mat& m = (*d.antipode)[keys[pick(rng)]];
        Scalar delta(val(rng));
        if (delta.is_zero()) delta = Scalar(1);
        m(0, 0) += delta;
        CHECK_FALSE(verify_antipode(d).ok());
    }
}

TEST_CASE("hyperobject partitions") {
    CHECK(hyperobject_partition(pair_groupoid(3)).size() == 1);
    CHECK(hyperobject_partition(reconstruct(pointed_group_fiber(cyclic_group(2))).hopf).size() == 1);
    auto two = reconstruct(groupoid_fiber(2)).hopf;
    CHECK(hyperobject_partition(two).size() == 2);

    // Disjoint union of two pair groupoids on {0,1} and {2}.
    auto d = pair_groupoid(3);
    PartialHopfData u;
    u.labels = d.labels;
    auto side = [](int k) { return k < 2 ? 0 : 1; };
    for (auto& [k, dim] : d.dims)
        if (side(k.k) == side(k.m)) u.dims[k] = dim;
    for (auto& [kl, m] : d.mult)
        if (u.dims.count(kl.first) && u.dims.count(kl.second)) u.mult[kl] = m;
    for (auto& [key, m] : d.comult)
        if (u.dims.count(std::get<0>(key)) && side(std::get<1>(key)) == side(std::get<0>(key).k)) u.comult[key] = m;
    u.counit = d.counit;
    for (auto& [km, v] : d.unit)
        if (side(km.first) == side(km.second)) u.unit[km] = v;
    CHECK(verify_partial_bialgebra(u).ok());
    auto parts = hyperobject_partition(u);
    CHECK(parts.size() == 2);

    // A unit 1(0|1) without 1(1|0) breaks symmetry.
    auto bad = pair_groupoid(2);
    bad.unit[{1, 0}] = {Scalar(0)};
    CHECK_THROWS_AS(hyperobject_partition(bad), Error);
}

TEST_CASE("linking and colinking structures") {
    // Two copies of the two-point groupoid algebra: objects split by the second factor.
    auto m2 = reconstruct(groupoid_fiber(2)).hopf;
    auto g = reconstruct(pointed_group_fiber(cyclic_group(2))).hopf;
    auto p = product(g, m2);
    CHECK(verify_all(p).ok());
    // object index i*2 + j; part by j
    Report co = verify_linking_structures(p, {0, 2}, {1, 3}, LinkMode::colinking);
    CHECK_MESSAGE(co.ok(), co.to_json().dump());

    auto pg = pair_groupoid(2);
    CHECK(verify_linking_structures(pg, {0}, {1}, LinkMode::linking).ok());

    auto z2 = reconstruct(pointed_group_fiber(cyclic_group(2))).hopf;
    Report lk = verify_linking_structures(z2, {0}, {1}, LinkMode::linking);
    CHECK(axiom_failed(lk, "linking.central"));

    CHECK(verify_linking_structures(m2, {0}, {1}, LinkMode::colinking).ok());
    Report one_class = verify_linking_structures(z2, {0, 1}, {}, LinkMode::linking);
    CHECK(axiom_failed(one_class, "linking.nondegenerate"));
    CHECK_FALSE(verify_linking_structures(pg, {0}, {1}, LinkMode::colinking).ok());
    CHECK_THROWS_AS(verify_linking_structures(pg, {0}, {0, 1}, LinkMode::linking), Error);
}

TEST_CASE("JSON round trip preserves the datum") {
    for (auto d : {pair_groupoid(3), reconstruct(pointed_group_fiber(cyclic_group(2))).hopf}) {
        json j = to_json(d);
        auto back = hopf_from_json(j);
        CHECK(to_json(back).dump() == j.dump());
        CHECK(verify_all(back).ok());
    }
}

TEST_CASE("JSON schema violations are rejected") {
    json j = to_json(pair_groupoid(2));
    json bad = j;
    bad["counit"]["1,1;1,1"] = json::array({"0.5"});
    CHECK_THROWS_AS(hopf_from_json(bad), Error);
    json shape = j;
    shape["product"][0]["matrix"] = json::array({json::array({"1", "1"})});
    CHECK_THROWS_AS(hopf_from_json(shape), Error);
}
