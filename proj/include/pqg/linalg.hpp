#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqg/scalar.hpp"

namespace pqg {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over Scalar.
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static Mat identity(size_t n);
    static Mat column(const Vec& v);
    static Mat row(const Vec& v);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Scalar& s) const;
    Vec apply(const Vec& v) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Mat adjoint() const;
    bool is_zero() const;
    Vec col(size_t j) const;
    std::string str() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

Mat kron(const Mat& a, const Mat& b);
Mat hstack(const std::vector<Vec>& columns, size_t rows);

struct Echelon {
    Mat reduced;
    std::vector<size_t> pivots;
};

Echelon rref(Mat m);
size_t rank(const Mat& m);
// Columns of the result span the kernel.
Mat nullspace(const Mat& m);
std::optional<Mat> solve(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& m);
Scalar trace(const Mat& m);

struct PsdResult {
    bool psd = false;
    bool numeric = false;
};
// Exact LDL* test for a Hermitian matrix.
PsdResult psd_test(const Mat& g);

bool vec_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& s);

}  // namespace pqg
