#include <doctest.h>

#include <random>

#include "pqg/grading.hpp"

using namespace pqg;

namespace {

Square random_square(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> o(0, n - 1);
    return {o(rng), o(rng), o(rng), o(rng)};
}

}  // namespace

TEST_CASE("horizontal and vertical composition") {
    // objects a..f as 0..5
    Square k{0, 1, 2, 3}, l{1, 4, 3, 5};
    auto h = compose_squares(k, l, Direction::horizontal);
    REQUIRE(h.has_value());
    CHECK(*h == Square{0, 4, 2, 5});
    CHECK_FALSE(compose_squares(k, Square{6, 4, 3, 5}, Direction::horizontal).has_value());
    auto v = compose_squares(k, Square{2, 3, 4, 5}, Direction::vertical);
    REQUIRE(v.has_value());
    CHECK(*v == Square{0, 1, 4, 5});
}

TEST_CASE("circ and bullet") {
    Square k{1, 2, 3, 4};
    CHECK(circ_bullet(k) == Square{4, 3, 2, 1});
    CHECK(circ_bullet(Square{7, 7, 7, 7}) == Square{7, 7, 7, 7});
    CHECK(circ(bullet(k)) == circ_bullet(k));
}

TEST_CASE("balanced tensor dimensions") {
    BigradedSpace v{{0, 1, 2}, {}}, w{{0, 1, 2}, {}};
    v.set(0, 1, 2);
    w.set(1, 2, 3);
    auto t = balanced_tensor(v, w);
    CHECK(t.dim(0, 2) == 6);
    CHECK(t.total() == 6);

    BigradedSpace diag{{0, 1, 2}, {}};
    for (int k = 0; k < 3; ++k) diag.set(k, k, 1);
    v.set(2, 0, 4);
    auto u = balanced_tensor(v, diag);
    CHECK(u.dims == v.dims);
    CHECK(balanced_tensor(diag, v).dims == v.dims);
}

TEST_CASE("balanced tensor of the nearest-neighbour carrier counts paths") {
    // Edges k -> k +/- 1 on the window [-2, 2], objects shifted to 0..4.
    int n = 5;
    BigradedSpace h;
    for (int k = 0; k < n; ++k) h.objects.push_back(k);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (std::abs(k - l) == 1) h.set(k, l, 1);
    auto t = balanced_tensor(h, h);
    // Independent oracle: square of the adjacency matrix.
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            size_t paths = 0;
            for (int l = 0; l < n; ++l) paths += (std::abs(k - l) == 1 && std::abs(l - m) == 1);
            CHECK(t.dim(k, m) == paths);
        }
    CHECK(t.dim(2, 2) == 2);
    CHECK(balanced_offset(h, h, 2, 3, 2) == 1);
}

TEST_CASE("rcf on templates") {
    SupportTemplate diag;
    diag.kind = SupportTemplate::Kind::band;
    diag.offsets = {0};
    CHECK(check_rcf(diag));
    SupportTemplate full;
    full.kind = SupportTemplate::Kind::full;
    CHECK_FALSE(check_rcf(full));
    SupportTemplate edges;
    edges.kind = SupportTemplate::Kind::band;
    edges.offsets = {-1, 1};
    CHECK(check_rcf(edges));
    SupportTemplate col;
    col.kind = SupportTemplate::Kind::fixed_columns;
    col.columns = {0};
    CHECK_FALSE(check_rcf(col));
}

TEST_CASE("property: involutions and double groupoid interchange") {
    std::mt19937 rng(31);
    int tested = 0;
    for (int it = 0; it < 20000; ++it) {
        Square k = random_square(rng, 3);
        CHECK(circ(circ(k)) == k);
        CHECK(bullet(bullet(k)) == k);
        CHECK(circ_bullet(circ_bullet(k)) == k);
        Square l = random_square(rng, 2), k2 = random_square(rng, 2), l2 = random_square(rng, 2);
        Square k1 = random_square(rng, 2);
        auto a = compose_squares(k1, l, Direction::horizontal);
        auto b = compose_squares(k2, l2, Direction::horizontal);
        auto c = compose_squares(k1, k2, Direction::vertical);
        auto d = compose_squares(l, l2, Direction::vertical);
        if (!(a && b && c && d)) continue;
        auto lhs = compose_squares(*a, *b, Direction::vertical);
        auto rhs = compose_squares(*c, *d, Direction::horizontal);
        REQUIRE(lhs.has_value());
        REQUIRE(rhs.has_value());
        CHECK(*lhs == *rhs);
        ++tested;
    }
    CHECK(tested > 0);
}

TEST_CASE("property: balanced tensor is associative on dimensions") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> o(0, 3), d(0, 2);
    for (int it = 0; it < 50; ++it) {
        BigradedSpace s[3];
        for (auto& x : s) {
            x.objects = {0, 1, 2, 3};
            for (int j = 0; j < 5; ++j) {
                size_t dd = d(rng);
                if (dd) x.set(o(rng), o(rng), dd);
            }
        }
        auto lhs = balanced_tensor(balanced_tensor(s[0], s[1]), s[2]);
        auto rhs = balanced_tensor(s[0], balanced_tensor(s[1], s[2]));
        CHECK(lhs.dims == rhs.dims);
    }
}
