// Acceptance run: one PASS/FAIL line per criterion for the sextic CM field x^6 + 43x^4 + 451x^2 + 729.
//
// Criteria listed in kDocumentedFailures are known not to reproduce (see the README); they still print
// FAIL, but only other failures make the exit status nonzero.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cmpoly/bundle.hpp"
#include "cmpoly/classpoly.hpp"
#include "cmpoly/linalg.hpp"
#include "cmpoly/shioda.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace cmpoly;

namespace {

const std::set<std::string> kDocumentedFailures = {"rosenhain.Hhat2", "shioda.S4"};

struct Tally {
    int passed = 0, failed = 0, documented = 0;

    void line(const std::string& name, bool ok, const std::string& detail) {
        const bool known = !ok && kDocumentedFailures.count(name);
        std::cout << (ok ? "PASS " : "FAIL ") << std::left << std::setw(28) << name << " " << detail
                  << (known ? "  [documented failure]" : "") << std::endl;
        if (ok) ++passed;
        else if (known) ++documented;
        else ++failed;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int p = 1) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(p) << x;
    return os.str();
}

const ClassPolynomial* find_poly(const ClassPolyReport& r, PolyKind k, int index) {
    for (const auto& p : r.polynomials)
        if (p.kind == k && p.index == index) return &p;
    return nullptr;
}

std::vector<std::vector<Int>> recognized_rows(const ClassPolynomial& p, size_t rows) {
    std::vector<std::vector<Int>> r;
    for (size_t k = 0; k < rows && k < p.recognized.size(); ++k) r.push_back(p.recognized[p.degree() - k].minpoly);
    return r;
}

void check_reflex(Tally& t, const ExchangeBundle& b) {
    const std::vector<Int> target{3968064, 0, 262048, 0, 1012, 0, 1};
    auto t0 = Clock::now();
    ReflexData r = reflex(b.type(), 300);
    const bool same = same_field(r.minpoly, target, 300);
    const double s = seconds_since(t0);
    t.line("reflex.field", same, "computed " + poly_string(r.minpoly));
    t.line("reflex.runtime", s < 60, fmt(s, 2) + " s at 300 bits (limit 60 s)");
}

void check_vanishing(Tally& t, const ExchangeBundle& b, const PipelineOptions& opt) {
    const long prec = 1152;
    PrecScope ps(prec + 64);
    std::vector<OrbitPoint> orbit = compute_orbit(b, prec, opt);
    for (size_t s = 0; s < orbit.size(); ++s) {
        const ThetaConstants& th = orbit[s].thetas;
        int below = 0;
        for (int k : even_characteristics())
            if (log2_abs(th.values[k]) < -prec / 2.0) ++below;
        const double s140 = log2_abs(sigma140(th)), c18 = log2_abs(chi18(th));
        const bool ok = below == 1 && s140 > -prec / 4.0 && c18 < -prec / 2.0;
        t.line("vanishing.point" + std::to_string(s), ok,
               "even below 2^-prec/2: " + std::to_string(below) + ", log2|Sigma140| = " + fmt(s140) +
                   ", log2|chi18| = " + fmt(c18) + " (prec " + std::to_string(prec) + ")");
    }
}

ClassPolyReport check_rosenhain_polys(Tally& t, const ExchangeBundle& b, const PipelineOptions& opt) {
    auto t0 = Clock::now();
    ClassPolyReport r = run_classpoly(b, ClassPolyRequest{}, opt);
    const double s = seconds_since(t0);
    t.line("rosenhain.verdict", r.verdict == "ok" && r.precision == 500,
           r.verdict + " at " + std::to_string(r.precision) + " bits");
    for (const auto& row : reference::rosenhain_table()) {
        const bool hecke = row.name != "H1";
        const ClassPolynomial* p = find_poly(r, hecke ? PolyKind::Hhat : PolyKind::H, row.name.back() - '0');
        std::vector<std::vector<Int>> want;
        for (const auto& m : row.coeff_minpolys) want.push_back(reference::to_ints(m));
        int match = 0;
        std::string got;
        if (p) {
            auto have = recognized_rows(*p, want.size());
            for (size_t k = 0; k < want.size() && k < have.size(); ++k) {
                match += have[k] == want[k];
                got += (k ? " | " : "") + poly_string(have[k]);
            }
        }
        t.line("rosenhain." + row.name, match == static_cast<int>(want.size()),
               std::to_string(match) + "/" + std::to_string(want.size()) + " coefficients; computed " + got);
    }
    t.line("rosenhain.runtime", s <= 15 * 60, fmt(s, 1) + " s (budget 900 s)");
    return r;
}

void check_shioda_polys(Tally& t, const ExchangeBundle& b, const PipelineOptions& opt) {
    auto t0 = Clock::now();
    ClassPolyRequest req;
    req.prec = 5000;
    req.invariants = Invariants::Shioda;
    req.max_retries = 0;
    ClassPolyReport r = run_classpoly(b, req, opt);
    const double s = seconds_since(t0);
    const ClassPolynomial* p = find_poly(r, PolyKind::S, 3);  // S4 = J2^5 J4 / Delta
    const auto table = reference::shioda_s4_table();
    int match = 0;
    std::string got;
    if (p) {
        auto have = recognized_rows(*p, table.size());
        for (size_t k = 0; k < table.size() && k < have.size(); ++k) {
            match += have[k] == reference::to_ints(table[k]);
            std::string q = have[k].empty() ? "?" : poly_string(have[k]);
            got += (k ? " | " : "") + (q.size() > 60 ? q.substr(0, 60) + "..." : q);
        }
    }
    t.line("shioda.verdict", r.verdict == "ok", r.verdict + " at " + std::to_string(r.precision) + " bits");
    t.line("shioda.S4", match == static_cast<int>(table.size()),
           std::to_string(match) + "/" + std::to_string(table.size()) + " coefficients; computed " + got);
    t.line("shioda.runtime", s <= 4 * 3600, fmt(s, 1) + " s (budget 14400 s)");
}

IMat random_sp6(std::mt19937_64& rng, int bound) {
    const int g = 3;
    std::uniform_int_distribution<int> kind(0, 2), idx(0, g - 1), val(-1, 1), steps(2, 8);
    for (;;) {
        IMat m = IMat::identity(2 * g);
        const int n = steps(rng);
        for (int s = 0; s < n; ++s) {
            IMat e = IMat::identity(2 * g);
            switch (kind(rng)) {
                case 0: {
                    int i = idx(rng), j = idx(rng), v = val(rng);
                    e(i, g + j) += v;
                    if (i != j) e(j, g + i) += v;
                    break;
                }
                case 1: {
                    int i = idx(rng), j = idx(rng);
                    if (i == j) break;
                    int v = val(rng);
                    e(i, j) = v;
                    e(g + j, g + i) = -v;
                    break;
                }
                default: e = symplectic_J<Int>(g); break;
            }
            m = m * e;
        }
        bool small = true;
        for (int i = 0; i < 2 * g; ++i)
            for (int j = 0; j < 2 * g; ++j) small = small && abs(m(i, j)) <= bound;
        if (small && m != IMat::identity(2 * g)) return m;
    }
}

CMat random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(-0.5, 0.5), y(-0.2, 0.2);
    CMat z(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Real re(x(rng)), im(i == j ? 0.8 + std::abs(y(rng)) : y(rng));
            z(i, j) = Complex(re, im);
            z(j, i) = z(i, j);
        }
    return z;
}

void check_theta_suite(Tally& t, std::mt19937_64& rng, int jobs) {
    const long prec = 128;
    PrecScope ps(prec + 64);
    double worst = -1e9, odd_worst = -1e9;
    bool odd_exact = true;
    for (int trial = 0; trial < 50; ++trial) {
        IMat m = random_sp6(rng, 3);
        CMat z = random_point(rng);
        CMat mz = act(m, z);
        ThetaConstants a = theta_constants(z, prec, {.jobs = jobs});
        ThetaConstants f = theta_constants(mz, prec, {.jobs = jobs, .force_odd = true});
        ThetaConstants e = theta_constants(mz, prec, {.jobs = jobs});
        CMat C(3, 3), D(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                C(i, j) = Complex(m(3 + i, j));
                D(i, j) = Complex(m(3 + i, 3 + j));
            }
        const Real root = sqrt(abs(determinant(C * z + D)));
        for (int k : even_characteristics()) {
            const Real lhs = abs(theta_at(f, char_action(m, char_vector(k))));
            const Real rhs = root * abs(a.values[k]);
            worst = std::max(worst, log2_abs(lhs - rhs) - std::max(0.0, log2_abs(rhs)));
        }
        for (int k = 0; k < 64; ++k) {
            if (char_is_even(k)) continue;
            odd_exact = odd_exact && e.values[k].re.is_zero() && e.values[k].im.is_zero();
            odd_worst = std::max(odd_worst, log2_abs(f.values[k]));
        }
    }
    t.line("theta.modulus_identity", worst < -prec / 2.0,
           "50 (M, Z), |M| <= 3, worst log2 relative error " + fmt(worst) + " (limit " + fmt(-prec / 2.0) + ")");
    t.line("theta.odd_short_circuit", odd_exact, "odd characteristics return exact zeros");
    t.line("theta.odd_forced", odd_worst < -prec + 32,
           "worst log2|forced odd sum| " + fmt(odd_worst) + " (limit " + fmt(-prec + 32.0) + ")");
}

IMat random_unimodular(int n, std::mt19937_64& rng) {
    IMat u = IMat::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
    for (int it = 0; it < 4 * n; ++it) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        const long q = coef(rng);
        for (int c = 0; c < n; ++c) u(i, c) += q * u(j, c);
    }
    return u;
}

// dimension over Q of the span of 1, a, ..., a^(n-1)
int power_rank(const FieldElement& a, const NumberField& F) {
    const int n = F.degree();
    std::vector<FieldElement> rows;
    FieldElement p = nf_one(F);
    for (int i = 0; i < n; ++i, p = nf_mul(p, a, F)) rows.push_back(p);
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (rows[r][c] != 0) piv = r;
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (int r = 0; r < n; ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rat f = rows[r][c] / rows[rank][c];
            for (int k = 0; k < n; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

void check_exact_layer(Tally& t, const ExchangeBundle& b, std::mt19937_64& rng) {
    {
        const IMat J = symplectic_J<Int>(3);
        int ok = 0;
        for (int i = 0; i < 100; ++i) {
            IMat g = random_unimodular(6, rng);
            IMat e = g.transpose() * J * g;
            IMat T = symplectic_reduce(e);
            ok += T.transpose() * e * T == J && abs(determinant(T)) == 1;
        }
        t.line("exact.symplectic_reduce", ok == 100, std::to_string(ok) + "/100 forms reduced to J exactly");
    }
    {
        const long prec = 300;
        PrecScope ps(prec + 64);
        const Real cbrt2 = exp(log(Real(2L)) / Real(3L));
        const Real phi = (Real(1L) + sqrt(Real(5L))) / Real(2L);
        const bool a = algdep(Complex(cbrt2), 6, prec) == std::vector<Int>{-2, 0, 0, 1};
        const bool c = algdep(Complex(phi), 6, prec) == std::vector<Int>{-1, -1, 1};
        t.line("exact.algdep_known", a && c, "x^3 - 2 and x^2 - x - 1 at 300 bits");
    }
    {
        // 300 decimal digits
        const long prec = static_cast<long>(std::ceil(300 * std::log2(10.0)));
        PrecScope ps(prec + 64);
        const NumberField& F = b.field;
        EmbeddingSet E = nf_embeddings(F, prec + 64);
        std::uniform_int_distribution<int> coef(-3, 3);
        int ok = 0;
        for (int trial = 0; trial < 20; ++trial) {
            FieldElement a(F.degree());
            for (auto& x : a) x = coef(rng);
            if (nf_is_zero(a)) a[1] = 1;
            const Complex v = nf_embed(a, E, 0);
            std::vector<Int> p;
            try {
                p = algdep(v, F.degree(), prec);
            } catch (const RecognitionFailure&) {
                continue;
            }
            FieldElement s(F.degree()), pw = nf_one(F);
            for (const auto& c : p) {
                s = nf_add(s, nf_scale(pw, Rat(c)));
                pw = nf_mul(pw, a, F);
            }
            ok += nf_is_zero(s) && static_cast<int>(p.size()) - 1 == power_rank(a, F);
        }
        t.line("exact.algdep_field", ok == 20,
               std::to_string(ok) + "/20 random elements of K recovered from 300-digit embeddings");
    }
    {
        std::uniform_int_distribution<int> coef(-9, 9);
        int oracle_ok = 0, homog_ok = 0, transl_ok = 0;
        const int trials = 5;
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<Rat> p(9);
            for (auto& x : p) x = Rat(coef(rng)) / (1 + std::abs(coef(rng)));
            if (p[8] == 0) p[8] = 1;
            BinaryForm<Rat> f = homogenize_octavic(p);
            ShiodaVector<Rat> v = shioda_invariants(f);
            oracle_ok += v.J == oracle::omega_shiodas(f);
            BinaryForm<Rat> cf = f;
            const Rat c(-5, 3);
            for (auto& x : cf.c) x *= c;
            ShiodaVector<Rat> vc = shioda_invariants(cf);
            bool h = true;
            Rat ci = c;
            for (int i = 0; i < 9; ++i) {
                ci *= c;
                h = h && vc.J[i] == ci * v.J[i];
            }
            homog_ok += h;
            ShiodaVector<Rat> vt = shioda_invariants(homogenize_octavic(substitute_affine(p, Rat(1), Rat(1))));
            transl_ok += vt.J == v.J && vt.Delta == v.Delta;
        }
        const std::string n = "/" + std::to_string(trials);
        t.line("exact.shioda_oracle", oracle_ok == trials, std::to_string(oracle_ok) + n + " octavics match the Omega process");
        t.line("exact.shioda_homogeneity", homog_ok == trials, std::to_string(homog_ok) + n + " with J_i(cf) = c^i J_i(f)");
        t.line("exact.shioda_translation", transl_ok == trials, std::to_string(transl_ok) + n + " with f(x + 1) invariant");
    }
}

void check_base_points(Tally& t, const ExchangeBundle& b, const ClassPolyReport& r0, const PipelineOptions& opt) {
    for (int k = 1; k < static_cast<int>(b.orbit.size()); ++k) {
        ClassPolyReport r = run_classpoly(rotate_bundle(b, k), ClassPolyRequest{}, opt);
        bool same = r.verdict == "ok" && r.polynomials.size() == r0.polynomials.size();
        for (size_t i = 0; same && i < r.polynomials.size(); ++i) {
            const auto &a = r.polynomials[i], &c = r0.polynomials[i];
            same = a.kind == c.kind && a.index == c.index && a.recognized.size() == c.recognized.size();
            for (size_t j = 0; same && j < a.recognized.size(); ++j) same = a.recognized[j].minpoly == c.recognized[j].minpoly;
        }
        t.line("base_point." + std::to_string(k), same, "all recognized class polynomials equal those at base 0");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string bundle_path;
    bool slow = false;
    int jobs = 1;
    unsigned long seed = 20261014;
    app.add_option("--bundle", bundle_path, "exchange bundle of the sextic field")->required();
    app.add_flag("--slow", slow, "also run the 5000-bit Shioda reproduction");
    app.add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    ExchangeBundle b = load_bundle(bundle_path);
    validate_bundle(b);
    PipelineOptions opt{.jobs = jobs};
    std::mt19937_64 rng(seed);
    Tally t;
    try {
        check_reflex(t, b);
        check_vanishing(t, b, opt);
        ClassPolyReport r0 = check_rosenhain_polys(t, b, opt);
        if (slow) check_shioda_polys(t, b, opt);
        check_theta_suite(t, rng, jobs);
        check_exact_layer(t, b, rng);
        check_base_points(t, b, r0, opt);
    } catch (const std::exception& e) {
        t.line("acceptance.run", false, std::string("aborted: ") + e.what());
    }
    std::cout << t.passed << " passed, " << t.failed + t.documented << " failed (" << t.documented
              << " documented)" << std::endl;
    return t.failed == 0 ? 0 : 1;
}
