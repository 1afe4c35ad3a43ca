#include "cmpoly/matrix.hpp"

#include <utility>

namespace cmpoly {

QMat inverse(const QMat& m) {
    const int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse: not square");
    QMat a = m, inv = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        if (p != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rat piv = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Rat determinant(const QMat& m) {
    const int n = m.rows();
    QMat a = m;
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

Int determinant(const IMat& m) {
    Rat d = determinant(convert<Int, Rat>(m));
    return d.get_num();
}

CMat solve(const CMat& a0, const CMat& b0) {
    const int n = a0.rows();
    CMat a = a0, b = b0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        Real best = abs(a(c, c));
        for (int i = c + 1; i < n; ++i) {
            Real v = abs(a(i, c));
            if (v > best) { best = v; p = i; }
        }
        if (best.is_zero()) throw std::domain_error("solve: singular matrix");
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            for (int j = 0; j < b.cols(); ++j) std::swap(b(p, j), b(c, j));
        }
        for (int i = c + 1; i < n; ++i) {
            Complex f = a(i, c) / a(c, c);
            for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(c, j);
        }
    }
    CMat x(n, b.cols());
    for (int j = 0; j < b.cols(); ++j)
        for (int i = n - 1; i >= 0; --i) {
            Complex s = b(i, j);
            for (int k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
            x(i, j) = s / a(i, i);
        }
    return x;
}

Complex determinant(const CMat& m) {
    const int n = m.rows();
    CMat a = m;
    Complex det(1L);
    for (int c = 0; c < n; ++c) {
        int p = c;
        Real best = abs(a(c, c));
        for (int i = c + 1; i < n; ++i) {
            Real v = abs(a(i, c));
            if (v > best) { best = v; p = i; }
        }
        if (best.is_zero()) return Complex();
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (int i = c + 1; i < n; ++i) {
            Complex f = a(i, c) / a(c, c);
            for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

}  // namespace cmpoly
