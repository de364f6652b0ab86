#include "pqg/linalg.hpp"

#include <stdexcept>

namespace pqg {

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Mat Mat::column(const Vec& v) {
    Mat m(v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Mat Mat::row(const Vec& v) {
    Mat m(1, v.size());
    for (size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw Error("shape", "matrix product shape mismatch");
    Mat out(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.c_; ++j) {
                const Scalar& y = o(k, j);
                if (!y.is_zero()) out(i, j) += x * y;
            }
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error("shape", "matrix sum shape mismatch");
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error("shape", "matrix difference shape mismatch");
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

Mat Mat::operator*(const Scalar& s) const {
    Mat out = *this;
    for (auto& x : out.a_) x *= s;
    return out;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != c_) throw Error("shape", "matrix-vector shape mismatch");
    Vec out(r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool Mat::operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

Mat Mat::transpose() const {
    Mat out(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Mat Mat::adjoint() const {
    Mat out(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j).conj();
    return out;
}

bool Mat::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Vec Mat::col(size_t j) const {
    Vec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::string Mat::str() const {
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
        s += i ? "; " : "";
        for (size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
    }
    return s + "]";
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

Mat hstack(const std::vector<Vec>& columns, size_t rows) {
    Mat m(rows, columns.size());
    for (size_t j = 0; j < columns.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    return m;
}

Echelon rref(Mat m) {
    Echelon e;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = m(r, c).inv();
        for (size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat nullspace(const Mat& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(v);
    }
    return hstack(basis, m.cols());
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    Mat aug(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    Echelon e = rref(aug);
    Mat x(a.cols(), b.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= a.cols()) return std::nullopt;
        for (size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
    }
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return solve(m, Mat::identity(m.rows()));
}

Scalar trace(const Mat& m) {
    Scalar t;
    for (size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

PsdResult psd_test(const Mat& g0) {
    PsdResult res;
    Mat g = g0;
    std::vector<size_t> alive;
    for (size_t i = 0; i < g.rows(); ++i) alive.push_back(i);
    while (!alive.empty()) {
        size_t piv = alive.size();
        for (size_t t = 0; t < alive.size(); ++t) {
            const Scalar& d = g(alive[t], alive[t]);
            if (d.is_zero()) continue;
            bool num = false;
            int s = real_sign(d, &num);
            res.numeric = res.numeric || num;
            if (s < 0) return res;
            piv = t;
            break;
        }
        if (piv == alive.size()) {
            // zero diagonal forces the whole remaining block to vanish
            for (auto i : alive)
                for (auto j : alive)
                    if (!g(i, j).is_zero()) return res;
            break;
        }
        size_t p = alive[piv];
        Scalar inv = g(p, p).inv();
        alive.erase(alive.begin() + static_cast<long>(piv));
        for (auto i : alive) {
            if (g(i, p).is_zero()) continue;
            Scalar f = g(i, p) * inv;
            for (auto j : alive)
                if (!g(p, j).is_zero()) g(i, j) -= f * g(p, j);
        }
    }
    res.psd = true;
    return res;
}

bool vec_zero(const Vec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Vec vec_scale(const Vec& a, const Scalar& s) {
    Vec out = a;
    for (auto& x : out) x *= s;
    return out;
}

}  // namespace pqg
