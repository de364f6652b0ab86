#pragma once

#include <doctest.h>

#include "pqg/partial_hopf.hpp"
#include "pqg/tannaka.hpp"

namespace pqg::testing {

inline Mat one() { return Mat::identity(1); }

// Function algebra of the pair groupoid on n points, written out from its definition.
inline PartialHopfData pair_groupoid(int n) {
    PartialHopfData d;
    for (int k = 0; k < n; ++k) d.labels.push_back(std::to_string(k + 1));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) d.dims[{k, k, m, m}] = 1;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
            Square a{k, k, m, m};
            d.mult[{a, a}] = one();
            for (int r = 0; r < n; ++r) d.comult[{a, r, r}] = one();
            d.unit[{k, m}] = {Scalar(1)};
        }
    for (int k = 0; k < n; ++k) d.counit[{k, k, k, k}] = {Scalar(1)};
    std::map<Square, Mat> s, st;
    std::map<Square, Vec> phi;
    for (auto& [k, dim] : d.dims) {
        s[k] = one();
        st[k] = one();
        phi[k] = {Scalar(1)};
    }
    d.antipode = s;
    d.star = st;
    d.integral = phi;
    return d;
}

inline Mat rows_of(std::initializer_list<std::initializer_list<Scalar>> rs) {
    Mat m(rs.size(), rs.begin()->size());
    size_t i = 0;
    for (auto& r : rs) {
        size_t j = 0;
        for (auto& x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

// Forgetful fiber functor on Rep(S3): irreducibles trivial, sign, standard (2-dim, real orthogonal).
// Intertwiners are found by solving the equivariance equations and normalized to coisometries.
inline FiberData s3_fiber() {
    Scalar h(1, 2), s3 = Scalar::radical(3) * Scalar(1, 2);
    std::vector<std::vector<Mat>> gens = {
        {Mat::identity(1), Mat::identity(1)},
        {Mat::identity(1), Mat::identity(1) * Scalar(-1)},
        {rows_of({{-h, -s3}, {s3, -h}}), rows_of({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}})}};
    std::vector<size_t> dim = {1, 1, 2};
    FiberData f;
    f.objects = {"*"};
    f.hyper = {0};
    f.hyper_names = {"*"};
    f.irreps = {{"triv", 0, 0, 0}, {"sign", 0, 0, 1}, {"std", 0, 0, 2}};
    f.unit_of = {0};
    for (int a = 0; a < 3; ++a) f.dims[{a, 0, 0}] = dim[static_cast<size_t>(a)];
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
            for (int a = 0; a < 3; ++a) {
                size_t da = dim[static_cast<size_t>(a)], dbc = dim[static_cast<size_t>(b)] * dim[static_cast<size_t>(c)];
                // rho_a(g) J - J (rho_b(g) (x) rho_c(g)) = 0, with J vectorized row-major.
                Mat sys(0, da * dbc);
                std::vector<Vec> eqs;
                for (int g = 0; g < 2; ++g) {
                    Mat ra = gens[static_cast<size_t>(a)][static_cast<size_t>(g)];
                    Mat m = kron(gens[static_cast<size_t>(b)][static_cast<size_t>(g)], gens[static_cast<size_t>(c)][static_cast<size_t>(g)]);
                    Mat op = kron(ra, Mat::identity(dbc)) - kron(Mat::identity(da), m.transpose());
                    for (size_t i = 0; i < op.rows(); ++i) {
                        Vec row;
                        for (size_t j = 0; j < op.cols(); ++j) row.push_back(op(i, j));
                        eqs.push_back(row);
                    }
                }
                Mat full(eqs.size(), da * dbc);
                for (size_t i = 0; i < eqs.size(); ++i)
                    for (size_t j = 0; j < da * dbc; ++j) full(i, j) = eqs[i][j];
                Mat ns = nullspace(full);
                if (ns.cols() == 0) continue;
                REQUIRE(ns.cols() == 1);
                Mat j(da, dbc);
                for (size_t p = 0; p < da; ++p)
                    for (size_t q = 0; q < dbc; ++q) j(p, q) = ns(p * dbc + q, 0);
                Scalar s = (j * j.adjoint())(0, 0);
                j = j * sqrt(s).inv();
                REQUIRE(j * j.adjoint() == Mat::identity(da));
                int ch = static_cast<int>(f.channels.size());
                f.channels.push_back({b, c, a});
                f.iso[{ch, 0, 0, 0}] = j;
            }
    for (int a = 0; a < 3; ++a) {
        size_t d = dim[static_cast<size_t>(a)];
        Mat jj;
        for (size_t ch = 0; ch < f.channels.size(); ++ch)
            if (f.channels[ch].b == a && f.channels[ch].c == a && f.channels[ch].a == 0)
                jj = f.iso.at({static_cast<int>(ch), 0, 0, 0});
        Mat c(d, d);
        for (size_t p = 0; p < d; ++p)
            for (size_t q = 0; q < d; ++q) c(p, q) = jj(0, p * d + q).conj();
        c = c * sqrt(Scalar(static_cast<long>(d)));
        f.coev[{a, 0, 0}] = c;
        f.ev[{a, 0, 0}] = *inverse(c);
    }
    return f;
}

}  // namespace pqg::testing
