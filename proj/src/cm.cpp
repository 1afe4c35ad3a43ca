#include "cmpoly/cm.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace cmpoly {

namespace {

constexpr long kGuard = 64;

// true when the symmetric real matrix is positive definite (Cholesky)
bool positive_definite(const RMat& y) {
    const int n = y.rows();
    RMat l(n, n);
    for (int j = 0; j < n; ++j) {
        Real s = y(j, j);
        for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (s.sign() <= 0) return false;
        l(j, j) = sqrt(s);
        for (int i = j + 1; i < n; ++i) {
            Real t = y(i, j);
            for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    return true;
}

RMat imag_part(const CMat& z) {
    RMat y(z.rows(), z.cols());
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) y(i, j) = z(i, j).im;
    return y;
}

void symmetrize(CMat& z) {
    for (int i = 0; i < z.rows(); ++i)
        for (int j = i + 1; j < z.cols(); ++j) {
            Complex m = (z(i, j) + z(j, i)) * Real(Rat(1, 2));
            z(i, j) = m;
            z(j, i) = m;
        }
}

double asymmetry(const CMat& z) {
    double worst = -1e300, scale = 0;
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) {
            scale = std::max(scale, log2_abs(z(i, j)));
            if (i < j) worst = std::max(worst, log2_abs(z(i, j) - z(j, i)));
        }
    return worst - scale;
}

CMat omega(const Lattice& c, const CMType& t, const EmbeddingSet& E) {
    const int g = t.genus();
    CMat om(g, 2 * g);
    for (int k = 0; k < g; ++k)
        for (int j = 0; j < 2 * g; ++j) om(k, j) = nf_embed(c[j], E.roots[t.phi[k]]);
    return om;
}

CMat z_from_omega(const CMat& om) {
    const int g = om.rows();
    CMat z = solve(om.block(0, g, g, g), om.block(0, 0, g, g));
    return z;
}

Lattice combine(const IMat& m, const Lattice& b) {
    // result_j = sum_i m(j, i) b_i
    const int n = m.rows();
    Lattice out(n, FieldElement(b[0].size()));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m.cols(); ++i)
            if (m(j, i) != 0) out[j] = nf_add(out[j], nf_scale(b[i], Rat(m(j, i))));
    return out;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& r) {
    std::vector<Complex> c{Complex(1L)};
    for (const auto& z : r) {
        std::vector<Complex> n(c.size() + 1);
        for (size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= c[i] * z;
        }
        c = std::move(n);
    }
    return c;
}

bool integral_coefficients(const std::vector<Complex>& c, long prec, std::vector<Int>* out) {
    std::vector<Int> r;
    for (const auto& z : c) {
        Int k = z.re.round_to_int();
        if (log2_abs(z - Complex(Real(k))) > -static_cast<double>(prec) / 2) return false;
        r.push_back(k);
    }
    if (out) *out = std::move(r);
    return true;
}

int omega2(uint32_t x, uint32_t y, int g) {
    const uint32_t lo = (1u << g) - 1;
    uint32_t xa = x & lo, xb = x >> g, ya = y & lo, yb = y >> g;
    return __builtin_popcount((xa & yb) ^ (xb & ya)) & 1;
}

Rat coord_mod2_checked(const Rat& q) {
    if (q.get_den() % 2 == 0) throw std::domain_error("reduce_mod2: even denominator");
    Int r = q.get_num() % 2;
    if (r < 0) r += 2;
    return Rat(r);
}

}  // namespace

std::vector<int> conjugate_pairing(const EmbeddingSet& E) {
    const int n = static_cast<int>(E.roots.size());
    std::vector<int> p(n, -1);
    for (int k = 0; k < n; ++k) {
        Complex c = E.roots[k].conj();
        int best = -1;
        double bd = 1e300;
        for (int j = 0; j < n; ++j) {
            double d = log2_abs(E.roots[j] - c);
            if (d < bd) { bd = d; best = j; }
        }
        p[k] = best;
    }
    return p;
}

bool is_cm_field(const NumberField& F, long prec) {
    if (F.degree() % 2 != 0 || !F.conjugation) return false;
    EmbeddingSet E = nf_embeddings(F, prec);
    for (const auto& r : E.roots)
        if (log2_abs(r.im) < -static_cast<double>(prec) / 2) return false;
    return nf_conjugation_check(F, prec);
}

bool is_primitive(const CMType& t, long prec) {
    const NumberField& F = t.field;
    const int n = F.degree(), g = n / 2;
    EmbeddingSet E = nf_embeddings(F, prec);
    auto pair = conjugate_pairing(E);
    PrecScope ps(prec + kGuard);
    std::vector<std::vector<Complex>> powvals(n);  // powvals[k][e] = phi_e(x^k)
    for (int k = 1; k < n; ++k)
        for (int e = 0; e < n; ++e) powvals[k].push_back(nf_embed(nf_pow(nf_gen(F), k, F), E.roots[e]));
    std::vector<bool> in_phi(n, false);
    for (int e : t.phi) in_phi[e] = true;

    // blocks of size m, permuted by complex conjugation without fixed blocks; Phi induced from the
    // corresponding CM subfield iff Phi is a union of blocks
    for (int m = 2; m <= g; ++m) {
        if (g % m != 0) continue;
        std::vector<int> block_of(n, -1);
        std::function<bool(int)> search = [&](int nb) -> bool {
            int first = -1;
            for (int e = 0; e < n; ++e)
                if (block_of[e] < 0) { first = e; break; }
            if (first < 0) {
                // all assigned: test rationality of the block-sum polynomials and the type
                for (int k = 1; k < n; ++k) {
                    std::vector<Complex> sums(nb);
                    for (int e = 0; e < n; ++e) sums[block_of[e]] += powvals[k][e];
                    if (!integral_coefficients(poly_from_roots(sums), prec, nullptr)) return false;
                }
                std::vector<int> cnt(nb, 0), hit(nb, 0);
                for (int e = 0; e < n; ++e) {
                    ++cnt[block_of[e]];
                    if (in_phi[e]) ++hit[block_of[e]];
                }
                for (int b = 0; b < nb; ++b)
                    if (hit[b] != 0 && hit[b] != cnt[b]) return false;
                return true;
            }
            // choose m-1 further members for the block of `first`, build its conjugate block too
            std::vector<int> free;
            for (int e = first + 1; e < n; ++e)
                if (block_of[e] < 0) free.push_back(e);
            std::vector<int> pick;
            std::function<bool(size_t)> choose = [&](size_t from) -> bool {
                if (static_cast<int>(pick.size()) == m - 1) {
                    std::vector<int> blk{first};
                    blk.insert(blk.end(), pick.begin(), pick.end());
                    std::vector<int> cb;
                    for (int e : blk) cb.push_back(pair[e]);
                    for (int e : cb)
                        if (block_of[e] >= 0 || std::find(blk.begin(), blk.end(), e) != blk.end()) return false;
                    for (int e : blk) block_of[e] = nb;
                    for (int e : cb) block_of[e] = nb + 1;
                    bool ok = search(nb + 2);
                    for (int e : blk) block_of[e] = -1;
                    for (int e : cb) block_of[e] = -1;
                    return ok;
                }
                for (size_t i = from; i < free.size(); ++i) {
                    pick.push_back(free[i]);
                    bool ok = choose(i + 1);
                    pick.pop_back();
                    if (ok) return true;
                }
                return false;
            };
            return choose(0);
        };
        if (search(0)) return false;
    }
    return true;
}

ReflexData reflex(const CMType& t, long prec) {
    const NumberField& F = t.field;
    const int n = F.degree(), g = n / 2;
    EmbeddingSet E = nf_embeddings(F, prec);
    auto pair = conjugate_pairing(E);
    PrecScope ps(prec + kGuard);

    // all CM types as sets of embeddings: bit i chooses the upper/lower member of pair i
    std::vector<std::vector<int>> pairs;
    std::vector<bool> seen(n, false);
    for (int e = 0; e < n; ++e) {
        if (seen[e]) continue;
        seen[e] = seen[pair[e]] = true;
        pairs.push_back({e, pair[e]});
    }
    std::vector<std::vector<int>> types;
    for (int mask = 0; mask < (1 << g); ++mask) {
        std::vector<int> ty;
        for (int i = 0; i < g; ++i) ty.push_back(pairs[i][(mask >> i) & 1]);
        std::sort(ty.begin(), ty.end());
        types.push_back(ty);
    }
    std::vector<int> phi = t.phi;
    std::sort(phi.begin(), phi.end());
    const int self = static_cast<int>(std::find(types.begin(), types.end(), phi) - types.begin());
    if (self == static_cast<int>(types.size())) throw std::invalid_argument("reflex: phi is not a CM type");

    const int nt = static_cast<int>(types.size());
    for (int shift = 0; shift < 50; ++shift) {
        FieldElement a = nf_gen(F);
        if (shift > 0) a = nf_add(a, nf_scale(nf_pow(nf_gen(F), 2, F), Rat(shift)));
        std::vector<Complex> av;
        for (int e = 0; e < n; ++e) av.push_back(nf_embed(a, E.roots[e]));
        std::vector<Complex> tv(nt);
        for (int i = 0; i < nt; ++i)
            for (int e : types[i]) tv[i] += av[e];
        bool distinct = true;
        for (int i = 0; i < nt && distinct; ++i)
            for (int j = i + 1; j < nt; ++j)
                if (log2_abs(tv[i] - tv[j]) < -static_cast<double>(prec) / 4) { distinct = false; break; }
        if (!distinct) continue;
        // smallest Galois-stable set of types containing phi
        for (int size = 1; size <= nt; ++size) {
            for (uint32_t sub = 0; sub < (1u << nt); ++sub) {
                if (!((sub >> self) & 1) || __builtin_popcount(sub) != size) continue;
                std::vector<Complex> vals;
                std::vector<int> idx;
                for (int i = 0; i < nt; ++i)
                    if ((sub >> i) & 1) { vals.push_back(tv[i]); idx.push_back(i); }
                std::vector<Int> coeffs;
                if (!integral_coefficients(poly_from_roots(vals), prec, &coeffs)) continue;
                ReflexData r;
                r.minpoly = coeffs;
                r.generator = a;
                NumberField R(coeffs);
                EmbeddingSet RE = nf_embeddings(R, prec);
                r.orbit_types.assign(RE.roots.size(), {});
                for (size_t k = 0; k < RE.roots.size(); ++k) {
                    int best = -1;
                    double bd = 1e300;
                    for (size_t i = 0; i < vals.size(); ++i) {
                        double d = log2_abs(vals[i] - RE.roots[k]);
                        if (d < bd) { bd = d; best = static_cast<int>(i); }
                    }
                    r.orbit_types[k] = types[idx[best]];
                    const auto& ty = r.orbit_types[k];
                    if (std::find(ty.begin(), ty.end(), t.phi[0]) != ty.end()) r.reflex_type.push_back(static_cast<int>(k));
                }
                return r;
            }
        }
    }
    throw RecognitionFailure("reflex: no generator with separated type traces");
}

bool same_field(const std::vector<Int>& f, const std::vector<Int>& g, long prec) {
    if (f.size() != g.size()) return false;
    const int n = static_cast<int>(g.size()) - 1;
    EmbeddingSet Eg = nf_embeddings(NumberField(g), prec);
    EmbeddingSet Ef = nf_embeddings(NumberField(f), prec);
    PrecScope ps(prec + kGuard);
    const Complex& t = Eg.roots[0];
    for (const auto& rho : Ef.roots) {
        std::vector<Complex> v;
        Complex pw(1L);
        for (int i = 0; i < n; ++i) {
            v.push_back(pw);
            pw = pw * t;
        }
        v.push_back(rho);
        try {
            auto rel = lindep(v, prec);
            if (rel.back() != 0) return true;
        } catch (const RecognitionFailure&) {
        }
    }
    return false;
}

FieldElement typenorm_element(const CMType& t, const ReflexData& r, const FieldElement& x, long prec) {
    const NumberField& F = t.field;
    const int n = F.degree();
    EmbeddingSet E = nf_embeddings(F, prec);
    EmbeddingSet RE = nf_embeddings(NumberField(r.minpoly), prec);
    PrecScope ps(prec + kGuard);
    Complex v(1L);
    for (int k : r.reflex_type) v = v * nf_embed(x, RE.roots[k]);
    const Complex& ra = E.roots[t.phi[0]];
    std::vector<Complex> vals;
    Complex pw(1L);
    for (int i = 0; i < n; ++i) {
        vals.push_back(pw);
        pw = pw * ra;
    }
    vals.push_back(v);
    auto rel = lindep(vals, prec);
    if (rel.back() == 0) throw RecognitionFailure("typenorm_element: value not in K");
    FieldElement y(n);
    for (int i = 0; i < n; ++i) y[i] = Rat(-rel[i], rel.back());
    for (auto& q : y) q.canonicalize();
    // y conj(y) must be the absolute norm of x
    Complex nx(1L);
    for (const auto& root : RE.roots) nx = nx * nf_embed(x, root);
    FieldElement yy = nf_mul(y, nf_conj(y, F), F);
    for (int i = 1; i < n; ++i)
        if (yy[i] != 0) throw RecognitionFailure("typenorm_element: y conj(y) not rational");
    if (log2_abs(nx - Complex(Real(yy[0]))) > log2_abs(nx) - static_cast<double>(prec) / 2)
        throw RecognitionFailure("typenorm_element: norm mismatch");
    return y;
}

QMat lattice_matrix(const Lattice& a) {
    const int r = static_cast<int>(a.size());
    const int c = r ? static_cast<int>(a[0].size()) : 0;
    QMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = a[i][j];
    return m;
}

Lattice lattice_canonical(const Lattice& gens) {
    if (gens.empty()) throw std::invalid_argument("lattice: no generators");
    const int n = static_cast<int>(gens[0].size());
    Int d = 1;
    for (const auto& v : gens)
        for (const auto& q : v) d = lcm(d, q.get_den());
    IMat m(static_cast<int>(gens.size()), n);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < n; ++j) {
            Rat s = gens[i][j] * Rat(d);
            m(static_cast<int>(i), j) = s.get_num();
        }
    IMat h = hnf(m);
    if (h.rows() != n) throw std::invalid_argument("lattice: generators do not span a full lattice");
    Lattice out(n, FieldElement(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out[i][j] = Rat(h(i, j), d);
            out[i][j].canonicalize();
        }
    return out;
}

Lattice lattice_mul(const Lattice& a, const Lattice& b, const NumberField& F) {
    Lattice gens;
    for (const auto& x : a)
        for (const auto& y : b) gens.push_back(nf_mul(x, y, F));
    return lattice_canonical(gens);
}

Lattice lattice_conj(const Lattice& a, const NumberField& F) {
    Lattice out;
    for (const auto& x : a) out.push_back(nf_conj(x, F));
    return out;
}

Lattice lattice_scale(const Lattice& a, const Rat& s) {
    Lattice out;
    for (const auto& x : a) out.push_back(nf_scale(x, s));
    return out;
}

bool lattice_equal(const Lattice& a, const Lattice& b) { return lattice_canonical(a) == lattice_canonical(b); }

bool lattice_is_order(const Lattice& a, const NumberField& F) {
    QMat inv = inverse(lattice_matrix(a));
    auto inside = [&](const FieldElement& y) {
        for (int j = 0; j < inv.cols(); ++j) {
            Rat s = 0;
            for (int i = 0; i < inv.rows(); ++i) s += y[i] * inv(i, j);
            if (s.get_den() != 1) return false;
        }
        return true;
    };
    if (!inside(nf_one(F))) return false;
    for (const auto& x : a)
        for (const auto& y : a)
            if (!inside(nf_mul(x, y, F))) return false;
    return true;
}

IMat riemann_form(const CMTriple& t) {
    const NumberField& F = t.type.field;
    const int n = static_cast<int>(t.ideal.size());
    IMat e(n, n);
    std::vector<FieldElement> xc;
    for (const auto& b : t.ideal) xc.push_back(nf_mul(t.xi, nf_conj(b, F), F));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = nf_trace(nf_mul(xc[i], t.ideal[j], F), F);
            if (v.get_den() != 1) throw std::domain_error("riemann_form: trace form is not integral");
            e(i, j) = v.get_num();
        }
    return e;
}

CMat act(const IMat& m, const CMat& z) {
    const int g = z.rows();
    CMat A = convert<Int, Complex>(m.block(0, 0, g, g)), B = convert<Int, Complex>(m.block(0, g, g, g));
    CMat C = convert<Int, Complex>(m.block(g, 0, g, g)), D = convert<Int, Complex>(m.block(g, g, g, g));
    CMat x = A * z + B, y = C * z + D;
    CMat r = solve(y.transpose(), x.transpose()).transpose();
    symmetrize(r);
    return r;
}

IMat siegel_reduce(const CMat& z0, CMat* reduced) {
    const int g = z0.rows();
    IMat m = IMat::identity(2 * g);
    CMat z = z0;
    const Real one_minus(1.0 - 1e-12);
    for (int it = 0; it < 200; ++it) {
        // Gram scaling: enough bits to resolve a badly conditioned Im Z
        IMat gram(g, g);
        Real sc = pow2(std::max(80L, z(0, 0).im.prec() / 2));
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) gram(i, j) = (z(i, j).im * sc).round_to_int();
        IMat h = lll_gram(gram);
        QMat hit = inverse(convert<Int, Rat>(h)).transpose();
        IMat gm(2 * g, 2 * g);
        gm.set_block(0, 0, h);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) gm(g + i, g + j) = hit(i, j).get_num();
        z = act(gm, z);
        m = gm * m;
        IMat tm = IMat::identity(2 * g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                Int b = -z(i, j).re.round_to_int();
                tm(i, g + j) = b;
                tm(j, g + i) = b;
            }
        z = act(tm, z);
        m = tm * m;
        if (abs(z(0, 0)) >= one_minus) {
            if (reduced) *reduced = z;
            return m;
        }
        IMat s = IMat::identity(2 * g);
        s(0, 0) = 0;
        s(g, g) = 0;
        s(0, g) = -1;
        s(g, 0) = 1;
        z = act(s, z);
        m = s * m;
    }
    throw std::runtime_error("siegel_reduce: no convergence");
}

PeriodMatrix period_matrix(const CMTriple& t, long prec) {
    const NumberField& F = t.type.field;
    const int g = t.type.genus();
    IMat e = riemann_form(t);
    if (!is_alternating(e)) throw std::domain_error("period_matrix: Riemann form is not alternating");
    const long wp = prec + kGuard;
    EmbeddingSet E = nf_embeddings(F, wp);
    PrecScope ps(wp + kGuard);
    PeriodMatrix pm;
    pm.precision = prec;
    Lattice c;
    CMat z;
    for (int attempt = 0; attempt < 2; ++attempt) {
        IMat ts = symplectic_reduce(attempt == 0 ? e : IMat(-e));
        Lattice cc(2 * g);
        for (int j = 0; j < 2 * g; ++j) {
            cc[j] = FieldElement(F.degree());
            for (int i = 0; i < 2 * g; ++i)
                if (ts(i, j) != 0) cc[j] = nf_add(cc[j], nf_scale(t.ideal[i], Rat(ts(i, j))));
        }
        CMat zz = z_from_omega(omega(cc, t.type, E));
        if (asymmetry(zz) > -static_cast<double>(prec) / 2) throw std::runtime_error("period_matrix: Z is not symmetric");
        symmetrize(zz);
        if (positive_definite(imag_part(zz))) {
            c = cc;
            z = zz;
            pm.flipped = attempt == 1;
            break;
        }
    }
    if (c.empty()) throw OrientationError("period_matrix: Im Z is not positive definite for either orientation");
    // the intermediate Z may be ill conditioned; recompute from the exact new basis until stable
    pm.reduction = IMat::identity(2 * g);
    pm.basis = c;
    for (int round = 0;; ++round) {
        IMat red = siegel_reduce(z);
        if (red == IMat::identity(2 * g)) break;
        if (round == 8) throw std::runtime_error("period_matrix: Siegel reduction does not stabilize");
        pm.reduction = red * pm.reduction;
        pm.basis = combine(red, pm.basis);
        z = z_from_omega(omega(pm.basis, t.type, E));
        symmetrize(z);
    }
    pm.Z = z;
    if (!positive_definite(imag_part(pm.Z))) throw OrientationError("period_matrix: reduced Im Z not positive definite");
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            pm.Z(i, j).re.set_prec_keep(wp);
            pm.Z(i, j).im.set_prec_keep(wp);
        }
    return pm;
}

CMTriple shimura_act(const CMTriple& t, const OrbitElement& b) {
    const NumberField& F = t.type.field;
    CMTriple r;
    r.type = t.type;
    r.ideal = lattice_scale(lattice_mul(lattice_conj(b.ideal, F), t.ideal, F), Rat(1) / b.norm);
    r.xi = nf_scale(t.xi, b.norm);
    return r;
}

bool check_half_norm(const OrbitElement& b, const NumberField& F, const Lattice& maximal_order) {
    Lattice p = lattice_mul(b.ideal, lattice_conj(b.ideal, F), F);
    return lattice_equal(p, lattice_scale(maximal_order, b.norm));
}

QMat relating_matrix(const Lattice& c, const Lattice& cp, const Rat& n) {
    // columns of B and C are coordinates; M^T = B^{-1} C
    QMat B = lattice_matrix(c).transpose(), C = lattice_matrix(cp).transpose();
    QMat mt = inverse(B) * C;
    QMat m = mt.transpose();
    const int g = m.rows() / 2;
    QMat J = symplectic_J<Rat>(g);
    QMat want = J.scaled(Rat(1) / n);
    if (m.transpose() * J * m != want || m * J * m.transpose() != want)
        throw std::domain_error("relating_matrix: M^T J M != J / N");
    return m;
}

IMat reduce_mod2(const QMat& m) {
    IMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = coord_mod2_checked(m(i, j)).get_num();
    return r;
}

IMat inverse_mod2(const IMat& m0) {
    const int n = m0.rows();
    std::vector<std::vector<int>> a(n, std::vector<int>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = static_cast<int>(((m0(i, j) % 2) + 2) % 2 == 1);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("inverse_mod2: singular");
        std::swap(a[p], a[c]);
        for (int i = 0; i < n; ++i)
            if (i != c && a[i][c])
                for (int j = 0; j < 2 * n; ++j) a[i][j] ^= a[c][j];
    }
    IMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a[i][n + j];
    return r;
}

bool is_symplectic_mod2(const IMat& m) {
    const int g = m.rows() / 2;
    IMat d = m.transpose() * symplectic_J<Int>(g) * m - symplectic_J<Int>(g);
    for (const auto& x : d.data())
        if (x % 2 != 0) return false;
    return true;
}

IMat lift_sp_mod2(const IMat& u) {
    const int n = u.rows(), g = n / 2;
    if (!is_symplectic_mod2(u)) throw std::domain_error("lift_sp_mod2: not symplectic mod 2");
    const IMat J = symplectic_J<Int>(g);
    // sparse matrices (permutation-like, e.g. I or J mod 2) lift by a choice of signs
    std::vector<std::pair<int, int>> ones;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (((u(i, j) % 2) + 2) % 2 == 1) ones.emplace_back(i, j);
    if (ones.size() <= 12) {
        const int k = static_cast<int>(ones.size());
        for (uint32_t mask = 0; mask < (1u << k); ++mask) {
            IMat cand(n, n);
            for (int b = 0; b < k; ++b) {
                auto [i, j] = ones[k - 1 - b];
                cand(i, j) = ((mask >> b) & 1) ? -1 : 1;
            }
            if (cand.transpose() * J * cand == J) return cand;
        }
    }
    std::vector<uint32_t> cols(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (((u(i, j) % 2) + 2) % 2 == 1) cols[j] |= 1u << i;
    std::vector<uint32_t> word;
    auto apply = [&](uint32_t v) {
        for (auto& c : cols)
            if (omega2(c, v, g)) c ^= v;
        word.push_back(v);
    };
    for (int i = 0; i < g; ++i) {
        const uint32_t ei = 1u << i, fi = 1u << (g + i);
        // complement of the pairs already fixed: coordinates i..g-1 and g+i..2g-1
        uint32_t support = 0;
        for (int j = i; j < g; ++j) support |= (1u << j) | (1u << (g + j));
        auto find_z = [&](uint32_t x, uint32_t y, bool need_e) -> uint32_t {
            for (uint32_t z = 1; z < (1u << n); ++z) {
                if ((z & ~support) != 0) continue;
                if (omega2(x, z, g) && omega2(y, z, g) && (!need_e || omega2(ei, z, g))) return z;
            }
            throw std::logic_error("lift_sp_mod2: no auxiliary vector");
        };
        uint32_t x = cols[i];
        if (x != ei) {
            if (omega2(x, ei, g)) {
                apply(x ^ ei);
            } else {
                uint32_t z = find_z(x, ei, false);
                apply(x ^ z);
                apply(z ^ ei);
            }
        }
        uint32_t y = cols[g + i];
        if (y != fi) {
            if (omega2(y, fi, g)) {
                apply(y ^ fi);
            } else {
                uint32_t z = find_z(y, fi, true);
                apply(y ^ z);
                apply(z ^ fi);
            }
        }
        if (cols[i] != ei || cols[g + i] != fi) throw std::logic_error("lift_sp_mod2: reduction step failed");
    }
    for (int j = 0; j < n; ++j)
        if (cols[j] != (1u << j)) throw std::logic_error("lift_sp_mod2: reduction incomplete");
    IMat lift = IMat::identity(n);
    for (uint32_t v : word) {
        std::vector<Int> vv(n);
        for (int i = 0; i < n; ++i) vv[i] = (v >> i) & 1;
        // tau_v(x) = x + (x^T J v) v
        IMat tv = IMat::identity(n);
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k = 0; k < n; ++k) s += J(j, k) * vv[k];
            for (int i = 0; i < n; ++i) tv(i, j) += s * vv[i];
        }
        lift = lift * tv;
    }
    if (lift.transpose() * J * lift != J) throw std::logic_error("lift_sp_mod2: lift not symplectic");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (((lift(i, j) - u(i, j)) % 2) != 0) throw std::logic_error("lift_sp_mod2: lift not congruent");
    return lift;
}

}  // namespace cmpoly
