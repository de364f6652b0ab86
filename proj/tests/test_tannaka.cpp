#include <doctest.h>

#include <random>

#include "pqg/error.hpp"
#include "pqg/tannaka.hpp"
#include "support.hpp"

using namespace pqg;
using namespace pqg::testing;

namespace {

bool axiom_failed(const Report& r, const std::string& axiom) {
    return r.has(axiom) && r.at(axiom).failed > 0;
}

std::string failures(const Report& r) {
    std::string out;
    for (auto& [name, t] : r.axioms())
        if (t.failed || t.unknown) out += name + " ";
    return out;
}

// Brute-force Hom-space count for Vec_G: dim Hom(u_k, u_g (x) u_l) = [k = g l], summed over
// blocks A(k l; m n)(g) = F_kl(g)* (x) F_mn(g).
size_t pointed_dimension_oracle(int n) {
    size_t total = 0;
    for (int g = 0; g < n; ++g)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    for (int q = 0; q < n; ++q) total += ((g + l) % n == k) && ((g + q) % n == m);
    return total;
}

// Gauge transformation of a pointed fiber by signs theta(g, k, l) on F_kl(u_g), trivial on the unit.
FiberData sign_gauge(const FiberData& f, std::mt19937& rng) {
    std::map<std::tuple<int, int, int>, Scalar> th;
    std::uniform_int_distribution<int> coin(0, 1);
    for (auto& [key, d] : f.dims) th[key] = (f.is_unit(std::get<0>(key)) || coin(rng)) ? Scalar(1) : Scalar(-1);
    FiberData g = f;
    for (auto& [key, j] : g.iso) {
        auto [ch, r, s, t] = key;
        const auto& c = f.channels[static_cast<size_t>(ch)];
        j = j * (th.at({c.b, r, s}) * th.at({c.c, s, t}) * th.at({c.a, r, t}));
    }
    for (auto& [key, c] : g.coev) {
        auto [a, k, l] = key;
        int ad = f.irreps[static_cast<size_t>(a)].dual;
        c = c * (th.at({a, k, l}) * th.at({ad, l, k}));
        g.ev[key] = *inverse(c);
    }
    return g;
}

}  // namespace

TEST_CASE("dimension oracle: n^2 for pair groupoids and |G|^3 for Vec_G") {
    for (int n : {1, 2, 3, 4}) {
        auto r = reconstruct(pair_groupoid_fiber(n));
        CHECK(r.hopf.total_dim() == static_cast<size_t>(n * n));
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < n; ++m) CHECK(r.hopf.dim(Square{k, k, m, m}) == 1);
    }
    for (int n : {1, 2, 3}) {
        auto r = reconstruct(pointed_group_fiber(cyclic_group(n)));
        CHECK(r.hopf.total_dim() == pointed_dimension_oracle(n));
        CHECK(r.hopf.total_dim() == static_cast<size_t>(n * n * n));
    }
}

TEST_CASE("pointed fiber of Z/2 has two objects, two irreducibles and 0/1 dimensions") {
    auto f = pointed_group_fiber(cyclic_group(2));
    CHECK(f.num_objects() == 2);
    CHECK(f.num_irreps() == 2);
    for (auto& [key, d] : f.dims) CHECK(d == 1);
    CHECK(validate_fiber_data(f).ok());
}

TEST_CASE("trivial fiber data validate and reconstruct to passing data") {
    for (auto f : {pair_groupoid_fiber(1), pair_groupoid_fiber(3), pointed_group_fiber(cyclic_group(2)),
                   pointed_group_fiber(cyclic_group(3)), groupoid_fiber(2)}) {
        Report v = validate_fiber_data(f);
        CHECK_MESSAGE(v.ok(), failures(v));
        auto rec = reconstruct(f);
        Report r = verify_all(rec.hopf);
        CHECK_MESSAGE(r.ok(), failures(r));
    }
}

TEST_CASE("the two-point groupoid fiber gives a four-dimensional algebra with two hyperobjects") {
    auto rec = reconstruct(groupoid_fiber(2)).hopf;
    CHECK(rec.total_dim() == 4);
    CHECK(hyperobject_partition(rec).size() == 2);
    CHECK(reconstruct(pair_groupoid_fiber(2)).hopf.total_dim() == 4);
}

TEST_CASE("a flipped fusion sign fails the cocycle check with a triple witness") {
    auto f = pointed_group_fiber(cyclic_group(3));
    auto it = f.iso.begin();
    std::advance(it, 5);
    it->second = it->second * Scalar(-1);
    Report r = validate_fiber_data(f);
    REQUIRE(axiom_failed(r, "fiber.cocycle"));
    CHECK(r.at("fiber.cocycle").witnesses.front().at("triple").size() == 3);
    CHECK_THROWS_AS(reconstruct(f), Error);
}

TEST_CASE("non-isometric fusion maps fail unitarity") {
    auto f = pointed_group_fiber(cyclic_group(2));
    f.iso.begin()->second = f.iso.begin()->second * Scalar(2);
    CHECK(axiom_failed(validate_fiber_data(f), "fiber.unitary"));
}

TEST_CASE("broken duality maps are rejected") {
    auto f = pointed_group_fiber(cyclic_group(3));
    auto key = f.coev.begin()->first;
    f.ev[key] = f.ev[key] * Scalar(2);
    CHECK(axiom_failed(validate_fiber_data(f), "fiber.duality"));
}

TEST_CASE("ev normalization is recorded per irreducible") {
    auto norm = ev_normalization(pointed_group_fiber(cyclic_group(3)));
    CHECK(norm.size() == 3);
    for (auto& [a, c] : norm) CHECK(c == Scalar(1));
    auto s3 = ev_normalization(s3_fiber());
    CHECK(s3.at(2) * s3.at(2) == Scalar(2));
}

TEST_CASE("forgetful functor on Rep(S3) reconstructs a six-dimensional algebra passing every verifier") {
    auto f = s3_fiber();
    CHECK(f.channels.size() == 11);
    Report v = validate_fiber_data(f);
    REQUIRE_MESSAGE(v.ok(), failures(v));
    auto rec = reconstruct(f);
    CHECK(rec.hopf.total_dim() == 6);
    Report r = verify_all(rec.hopf);
    CHECK_MESSAGE(r.ok(), failures(r));
    // Functions on a group: commutative total algebra.
    const auto& d = rec.hopf;
    Square k{0, 0, 0, 0};
    for (size_t i = 0; i < d.dim(k); ++i)
        for (size_t j = 0; j < d.dim(k); ++j)
            CHECK(vec_add(multiply_basis(d, k, i, k, j), vec_scale(multiply_basis(d, k, j, k, i), Scalar(-1))) ==
                  Vec(d.dim(k)));
}

TEST_CASE("fiber JSON round trip") {
    for (auto f : {pointed_group_fiber(cyclic_group(2)), groupoid_fiber(2), s3_fiber()}) {
        json j = fiber_to_json(f);
        auto back = fiber_from_json(j);
        CHECK(fiber_to_json(back).dump() == j.dump());
        CHECK(validate_fiber_data(back).ok());
    }
}

TEST_CASE("property: random sign gauges of Vec_Z3 stay valid and reconstruct to passing data") {
    std::mt19937 rng(303);
    auto base = pointed_group_fiber(cyclic_group(3));
    for (int it = 0; it < 6; ++it) {
        auto g = sign_gauge(base, rng);
        Report v = validate_fiber_data(g);
        CHECK_MESSAGE(v.ok(), failures(v));
        Report r = verify_all(reconstruct(g).hopf);
        CHECK_MESSAGE(r.ok(), failures(r));
    }
}

TEST_CASE("property: random single-entry perturbations of fusion maps are detected") {
    std::mt19937 rng(17);
    auto base = pointed_group_fiber(cyclic_group(3));
    std::uniform_int_distribution<size_t> pick(0, base.iso.size() - 1);
    for (int it = 0; it < 10; ++it) {
        auto f = base;
        auto e = f.iso.begin();
        std::advance(e, static_cast<long>(pick(rng)));
        e->second(0, 0) = e->second(0, 0) * Scalar(-1);
        CHECK_FALSE(validate_fiber_data(f).ok());
    }
}
