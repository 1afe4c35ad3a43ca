#include "cmpoly/shioda.hpp"

#include <algorithm>

namespace cmpoly {

namespace {

bool is_zero(const Rat& x) { return x == 0; }
bool is_zero(const Complex& x) { return x.re.is_zero() && x.im.is_zero(); }

// pivot quality: exact elimination takes any nonzero entry, floating elimination the largest
double pivot_size(const Rat& x) { return x == 0 ? 0.0 : 1.0; }
double pivot_size(const Complex& x) {
    double l = log2_abs(x);
    return l < -1e17 ? 0.0 : l + 1e18;
}

template <class T>
T make(const Rat& q) {
    return T(q);
}

Rat factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

Rat binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

template <class T>
BinaryForm<T> d_x(const BinaryForm<T>& f) {
    const int d = f.degree();
    BinaryForm<T> r;
    if (d == 0) return BinaryForm<T>{{make<T>(Rat(0))}};
    r.c.assign(d, make<T>(Rat(0)));
    for (int i = 1; i <= d; ++i) r.c[i - 1] = f.c[i] * make<T>(Rat(i));
    return r;
}

template <class T>
BinaryForm<T> d_y(const BinaryForm<T>& f) {
    const int d = f.degree();
    BinaryForm<T> r;
    if (d == 0) return BinaryForm<T>{{make<T>(Rat(0))}};
    r.c.assign(d, make<T>(Rat(0)));
    for (int i = 0; i < d; ++i) r.c[i] = f.c[i] * make<T>(Rat(d - i));
    return r;
}

template <class T>
BinaryForm<T> mul(const BinaryForm<T>& a, const BinaryForm<T>& b) {
    BinaryForm<T> r;
    r.c.assign(a.c.size() + b.c.size() - 1, make<T>(Rat(0)));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <class T>
T determinant_of(std::vector<std::vector<T>> a) {
    const int n = static_cast<int>(a.size());
    T det = make<T>(Rat(1));
    for (int c = 0; c < n; ++c) {
        int p = -1;
        double best = 0;
        for (int i = c; i < n; ++i) {
            double s = pivot_size(a[i][c]);
            if (s > best) {
                best = s;
                p = i;
            }
        }
        if (p < 0) return make<T>(Rat(0));
        if (p != c) {
            std::swap(a[p], a[c]);
            det = make<T>(Rat(-1)) * det;
        }
        det = det * a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(a[i][c])) continue;
            T f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

// resultant of polynomials (low to high, exact degrees)
template <class T>
T resultant(const std::vector<T>& f, const std::vector<T>& g) {
    const int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
    const int s = m + n;
    std::vector<std::vector<T>> a(s, std::vector<T>(s, make<T>(Rat(0))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = g[n - j];
    return determinant_of(a);
}

}  // namespace

template <class T>
BinaryForm<T> transvectant(const BinaryForm<T>& f, const BinaryForm<T>& g, int k) {
    const int m = f.degree(), n = g.degree();
    if (k < 0 || k > std::min(m, n)) throw std::invalid_argument("transvectant: order out of range");
    // dfk[i] = d^k f / dX^(k-i) dY^i, dgk[i] = d^k g / dX^i dY^(k-i)
    BinaryForm<T> acc{std::vector<T>(m + n - 2 * k + 1, make<T>(Rat(0)))};
    for (int i = 0; i <= k; ++i) {
        BinaryForm<T> a = f, b = g;
        for (int t = 0; t < k - i; ++t) a = d_x(a);
        for (int t = 0; t < i; ++t) a = d_y(a);
        for (int t = 0; t < i; ++t) b = d_x(b);
        for (int t = 0; t < k - i; ++t) b = d_y(b);
        BinaryForm<T> p = mul(a, b);
        Rat coef = binom(k, i) * (i % 2 ? -1 : 1);
        for (size_t j = 0; j < p.c.size(); ++j) acc.c[j] += make<T>(coef) * p.c[j];
    }
    const Rat norm = factorial(m - k) * factorial(n - k) / (factorial(m) * factorial(n));
    for (auto& x : acc.c) x = make<T>(norm) * x;
    return acc;
}

template <class T>
T form_discriminant(const BinaryForm<T>& f) {
    const int d = f.degree();
    int top = d;
    while (top > 0 && is_zero(f.c[top])) --top;
    if (d - top >= 2) return make<T>(Rat(0));  // repeated root at infinity
    std::vector<T> p(f.c.begin(), f.c.begin() + top + 1);
    if (top < 1) return make<T>(Rat(0));
    std::vector<T> dp(top);
    for (int i = 1; i <= top; ++i) dp[i - 1] = p[i] * make<T>(Rat(i));
    // disc(p) = (-1)^(n(n-1)/2) Res(p, p') / a_n
    T disc = resultant(p, dp) / p[top];
    if ((top * (top - 1) / 2) % 2) disc = make<T>(Rat(-1)) * disc;
    if (top == d) return disc;
    return p[top] * p[top] * disc;
}

template <class T>
ShiodaVector<T> shioda_invariants(const BinaryForm<T>& f) {
    if (f.degree() != 8) throw std::invalid_argument("shioda_invariants: expects a binary octavic");
    auto tr = [](const BinaryForm<T>& a, const BinaryForm<T>& b, int k) { return transvectant(a, b, k); };
    BinaryForm<T> g = tr(f, f, 4), k = tr(f, f, 6);
    BinaryForm<T> h = tr(k, k, 2), m = tr(f, k, 4), n = tr(f, h, 4), p = tr(g, k, 4), q = tr(g, h, 4);
    ShiodaVector<T> v;
    v.J = {tr(f, f, 8).c[0], tr(f, g, 8).c[0], tr(k, k, 4).c[0], tr(m, k, 4).c[0], tr(k, h, 4).c[0],
           tr(m, h, 4).c[0], tr(p, h, 4).c[0], tr(n, h, 4).c[0], tr(q, h, 4).c[0]};
    v.Delta = form_discriminant(f);
    return v;
}

template <class T>
std::array<T, 9> absolute_shiodas(const ShiodaVector<T>& v) {
    if (is_zero(v.Delta)) throw SingularCurve("absolute_shiodas: vanishing discriminant");
    const T &J2 = v.J[0], &J3 = v.J[1], &J4 = v.J[2], &J5 = v.J[3], &J6 = v.J[4], &J7 = v.J[5], &J8 = v.J[6],
            &J9 = v.J[7], &J10 = v.J[8];
    const T& D = v.Delta;
    T j22 = J2 * J2, j23 = j22 * J2, j24 = j22 * j22, j25 = j24 * J2, j27 = j25 * j22;
    return {j27 / D,         j24 * J3 * J3 / D, j25 * J4 / D,       J5 * J9 / D,   j24 * J6 / D,
            J7 * J7 / D,     j23 * J8 / D,      j25 * J9 * J9 / (D * D), j22 * J10 / D};
}

template <class T>
BinaryForm<T> homogenize_octavic(const std::vector<T>& poly) {
    if (poly.size() != 8 && poly.size() != 9) throw std::invalid_argument("homogenize_octavic: degree must be 7 or 8");
    BinaryForm<T> f{poly};
    if (f.c.size() == 8) f.c.push_back(make<T>(Rat(0)));
    return f;
}

template <class T>
std::vector<T> substitute_affine(const std::vector<T>& poly, const T& a, const T& b) {
    // Horner in the linear polynomial a x + b
    std::vector<T> r{make<T>(Rat(0))};
    for (size_t i = poly.size(); i-- > 0;) {
        std::vector<T> n(r.size() + 1, make<T>(Rat(0)));
        for (size_t j = 0; j < r.size(); ++j) {
            n[j + 1] += r[j] * a;
            n[j] += r[j] * b;
        }
        n[0] += poly[i];
        r = std::move(n);
    }
    r.resize(poly.size(), make<T>(Rat(0)));
    return r;
}

template BinaryForm<Rat> transvectant(const BinaryForm<Rat>&, const BinaryForm<Rat>&, int);
template BinaryForm<Complex> transvectant(const BinaryForm<Complex>&, const BinaryForm<Complex>&, int);
template ShiodaVector<Rat> shioda_invariants(const BinaryForm<Rat>&);
template ShiodaVector<Complex> shioda_invariants(const BinaryForm<Complex>&);
template std::array<Rat, 9> absolute_shiodas(const ShiodaVector<Rat>&);
template std::array<Complex, 9> absolute_shiodas(const ShiodaVector<Complex>&);
template BinaryForm<Rat> homogenize_octavic(const std::vector<Rat>&);
template BinaryForm<Complex> homogenize_octavic(const std::vector<Complex>&);
template Rat form_discriminant(const BinaryForm<Rat>&);
template Complex form_discriminant(const BinaryForm<Complex>&);
template std::vector<Rat> substitute_affine(const std::vector<Rat>&, const Rat&, const Rat&);
template std::vector<Complex> substitute_affine(const std::vector<Complex>&, const Complex&, const Complex&);

}  // namespace cmpoly
