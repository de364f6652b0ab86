#include <doctest.h>

#include <random>

#include "pqg/linalg.hpp"

using namespace pqg;

namespace {

Mat random_mat(std::mt19937& rng, size_t r, size_t c, int sparsity) {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3), keep(0, sparsity);
    Mat m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            if (keep(rng) == 0) m(i, j) = Scalar(num(rng), den(rng));
    return m;
}

Mat from_rows(const std::vector<std::vector<long>>& rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Scalar(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("rank and nullspace of a small singular matrix") {
    Mat m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(m) == 2);
    Mat n = nullspace(m);
    REQUIRE(n.cols() == 1);
    CHECK((m * n).is_zero());
}

TEST_CASE("inverse, solve and trace") {
    Mat m = from_rows({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Mat::identity(2));
    CHECK(trace(m) == Scalar(3));
    CHECK_FALSE(inverse(from_rows({{1, 2}, {2, 4}})).has_value());
    auto x = solve(m, Mat::column({Scalar(3), Scalar(2)}));
    REQUIRE(x.has_value());
    CHECK(x->col(0) == Vec{Scalar(1), Scalar(1)});
    CHECK_FALSE(solve(from_rows({{1, 1}, {1, 1}}), Mat::column({Scalar(1), Scalar(2)})).has_value());
}

TEST_CASE("Kronecker product indexing is row-major over both factors") {
    Mat a = from_rows({{1, 2}, {3, 4}});
    Mat b = from_rows({{0, 5}, {6, 7}});
    Mat k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k(1, 3) == Scalar(14));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t p = 0; p < 2; ++p)
                for (size_t q = 0; q < 2; ++q) CHECK(k(i * 2 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("adjoint conjugates entries") {
    Mat m(1, 2);
    m(0, 0) = Scalar::imag();
    m(0, 1) = Scalar(2);
    Mat a = m.adjoint();
    CHECK(a(0, 0) == -Scalar::imag());
    CHECK(a(1, 0) == Scalar(2));
}

TEST_CASE("exact PSD test") {
    CHECK(psd_test(from_rows({{2, 1}, {1, 2}})).psd);
    CHECK(psd_test(from_rows({{1, 1}, {1, 1}})).psd);
    CHECK_FALSE(psd_test(from_rows({{1, 2}, {2, 1}})).psd);
    CHECK_FALSE(psd_test(from_rows({{0, 1}, {1, 0}})).psd);
    CHECK(psd_test(from_rows({{0, 0}, {0, 3}})).psd);
    Mat h(2, 2);
    h(0, 0) = Scalar(1);
    h(1, 1) = Scalar(1);
    h(0, 1) = Scalar::imag();
    h(1, 0) = -Scalar::imag();
    auto r = psd_test(h);
    CHECK(r.psd);
    CHECK_FALSE(r.numeric);
    Mat s = Mat::identity(2) * Scalar::radical(2);
    CHECK(psd_test(s).psd);
}

TEST_CASE("property: rank-nullity and solve round trip on random matrices") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 60; ++it) {
        std::uniform_int_distribution<size_t> sz(1, 5);
        size_t r = sz(rng), c = sz(rng);
        Mat m = random_mat(rng, r, c, 2);
        Mat n = nullspace(m);
        CHECK(rank(m) + n.cols() == c);
        CHECK((m * n).is_zero());
        CHECK(rank(m) == rank(m.transpose()));
        Mat x = random_mat(rng, c, 1, 0);
        Mat b = m * x;
        auto y = solve(m, b);
        REQUIRE(y.has_value());
        CHECK(m * *y == b);
    }
}

TEST_CASE("property: Gram matrices are PSD, negated ones are not") {
    std::mt19937 rng(99);
    for (int it = 0; it < 40; ++it) {
        Mat b = random_mat(rng, 3, 3, 1);
        Mat g = b.adjoint() * b;
        CHECK(psd_test(g).psd);
        if (!g.is_zero()) CHECK_FALSE(psd_test(g * Scalar(-1)).psd);
    }
}

TEST_CASE("property: inverses of random invertible matrices") {
    std::mt19937 rng(5);
    int found = 0;
    for (int it = 0; it < 40; ++it) {
        Mat m = random_mat(rng, 4, 4, 0);
        auto inv = inverse(m);
        if (rank(m) < 4) {
            CHECK_FALSE(inv.has_value());
            continue;
        }
        REQUIRE(inv.has_value());
        CHECK(m * *inv == Mat::identity(4));
        CHECK(*inv * m == Mat::identity(4));
        ++found;
    }
    CHECK(found > 0);
}
