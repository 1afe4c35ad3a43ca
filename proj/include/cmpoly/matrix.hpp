#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "cmpoly/mp.hpp"

namespace cmpoly {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, T(0)) {}
    Mat(int r, int c, std::vector<T> data) : r_(r), c_(c), a_(std::move(data)) {
        if (a_.size() != static_cast<size_t>(r) * c) throw std::invalid_argument("Mat: size mismatch");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(int i0, int j0, int nr, int nc) const {
        Mat b(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(int i0, int j0, const Mat& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    std::vector<T> row(int i) const {
        return std::vector<T>(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
    }
    std::vector<T> col(int j) const {
        std::vector<T> v;
        v.reserve(r_);
        for (int i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::invalid_argument("Mat: product shape mismatch");
        Mat p(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const T& x = (*this)(i, k);
                for (int j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
            }
        return p;
    }
    Mat operator+(const Mat& o) const {
        Mat p = *this;
        for (size_t i = 0; i < a_.size(); ++i) p.a_[i] += o.a_[i];
        return p;
    }
    Mat operator-(const Mat& o) const {
        Mat p = *this;
        for (size_t i = 0; i < a_.size(); ++i) p.a_[i] -= o.a_[i];
        return p;
    }
    Mat operator-() const {
        Mat p(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) p.a_[i] = -a_[i];
        return p;
    }
    Mat scaled(const T& s) const {
        Mat p = *this;
        for (auto& x : p.a_) x *= s;
        return p;
    }

    const std::vector<T>& data() const { return a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using CMat = Mat<Complex>;
using RMat = Mat<Real>;

// J_g = [[0, I], [-I, 0]]
template <class T>
Mat<T> symplectic_J(int g) {
    Mat<T> j(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j(i, g + i) = T(1);
        j(g + i, i) = T(-1);
    }
    return j;
}

template <class A, class B>
Mat<B> convert(const Mat<A>& m) {
    Mat<B> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = B(m(i, j));
    return r;
}

// Exact inverse of a rational square matrix by Gauss-Jordan; throws if singular.
QMat inverse(const QMat& m);
Rat determinant(const QMat& m);
Int determinant(const IMat& m);

// Solve A X = B for square complex A by partial pivoting.
CMat solve(const CMat& a, const CMat& b);
Complex determinant(const CMat& m);

}  // namespace cmpoly
