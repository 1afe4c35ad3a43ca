#pragma once

#include <array>
#include <map>

#include "cmpoly/shioda.hpp"

namespace cmpoly::oracle {

using Poly4 = std::map<std::array<int, 4>, Rat>;  // exponents of x1, y1, x2, y2

inline Poly4 derive(const Poly4& p, int var) {
    Poly4 r;
    for (const auto& [e, c] : p) {
        if (e[var] == 0) continue;
        auto f = e;
        --f[var];
        r[f] += c * e[var];
    }
    return r;
}

inline Poly4 sub(Poly4 a, const Poly4& b) {
    for (const auto& [e, c] : b) a[e] -= c;
    return a;
}

// Cayley Omega process on f(x1, y1) g(x2, y2), then restriction to the diagonal
inline BinaryForm<Rat> omega_transvectant(const BinaryForm<Rat>& f, const BinaryForm<Rat>& g, int k) {
    const int m = f.degree(), n = g.degree();
    Poly4 p;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j)
            if (f.c[i] != 0 && g.c[j] != 0) p[{i, m - i, j, n - j}] += f.c[i] * g.c[j];
    for (int s = 0; s < k; ++s) p = sub(derive(derive(p, 0), 3), derive(derive(p, 1), 2));
    BinaryForm<Rat> r{std::vector<Rat>(m + n - 2 * k + 1)};
    for (const auto& [e, c] : p) r.c[e[0] + e[2]] += c;
    Rat norm = 1;
    for (int i = m - k + 1; i <= m; ++i) norm *= i;
    for (int i = n - k + 1; i <= n; ++i) norm *= i;
    for (auto& x : r.c) x /= norm;
    return r;
}

// J2 .. J10 through the Omega process, same covariant scheme as shioda_invariants
inline std::array<Rat, 9> omega_shiodas(const BinaryForm<Rat>& f) {
    auto tr = omega_transvectant;
    BinaryForm<Rat> g = tr(f, f, 4), k = tr(f, f, 6);
    BinaryForm<Rat> h = tr(k, k, 2), m = tr(f, k, 4), n = tr(f, h, 4), p = tr(g, k, 4), q = tr(g, h, 4);
    return {tr(f, f, 8).c[0], tr(f, g, 8).c[0], tr(k, k, 4).c[0], tr(m, k, 4).c[0], tr(k, h, 4).c[0],
            tr(m, h, 4).c[0], tr(p, h, 4).c[0], tr(n, h, 4).c[0], tr(q, h, 4).c[0]};
}

}  // namespace cmpoly::oracle
