// Command line front end: import, periods, thetas, rosenhain, shioda, classpoly.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cmpoly/cache.hpp"
#include "cmpoly/classpoly.hpp"
#include "cmpoly/shioda.hpp"
#include "json.hpp"

using namespace cmpoly;
using nlohmann::json;

namespace {

constexpr int kDigits = 40;

json complex_json(const Complex& z, int digits = kDigits) {
    return {{"real", z.re.to_string(digits)}, {"imag", z.im.to_string(digits)}};
}

Complex complex_from_json(const json& j) {
    if (j.is_string()) return Complex(Real(j.get<std::string>()));
    if (j.is_array() && j.size() == 2)
        return Complex(Real(j[0].get<std::string>()), Real(j[1].get<std::string>()));
    return Complex(Real(j.at("real").get<std::string>()), Real(j.at("imag").get<std::string>()));
}

json matrix_json(const CMat& z) {
    json m = json::array();
    for (int i = 0; i < z.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < z.cols(); ++j) row.push_back(complex_json(z(i, j)));
        m.push_back(row);
    }
    return m;
}

json int_matrix_json(const IMat& m) {
    json r = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        r.push_back(row);
    }
    return r;
}

json rat_matrix_json(const QMat& m) {
    json r = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_string(m(i, j)));
        r.push_back(row);
    }
    return r;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

json thetas_json(const ThetaConstants& t, long prec) {
    json vals = json::array();
    for (int k = 0; k < 64; ++k)
        vals.push_back({{"index", k}, {"even", char_is_even(k)}, {"value", complex_json(t.values[k])}});
    json j = {{"precision", prec}, {"log2_error", t.log2_error}, {"radius", t.radius}, {"terms", t.terms}, {"thetas", vals}};
    try {
        int v = find_vanishing(t, prec);
        j["vanishing"] = v < 0 ? json(nullptr) : json(v);
    } catch (const PrecisionError& e) {
        j["vanishing"] = std::string("ambiguous: ") + e.what();
    }
    return j;
}

template <class T>
json shioda_json(const ShiodaVector<T>& v, const std::array<T, 9>* abs_values, int digits);

template <>
json shioda_json(const ShiodaVector<Rat>& v, const std::array<Rat, 9>* a, int) {
    json j;
    json jj = json::array();
    for (const auto& x : v.J) jj.push_back(rational_string(x));
    j["J"] = jj;
    j["Delta"] = rational_string(v.Delta);
    if (a) {
        json aa = json::array();
        for (const auto& x : *a) aa.push_back(rational_string(x));
        j["absolute"] = aa;
    }
    return j;
}

template <>
json shioda_json(const ShiodaVector<Complex>& v, const std::array<Complex, 9>* a, int digits) {
    json j;
    json jj = json::array();
    for (const auto& x : v.J) jj.push_back(complex_json(x, digits));
    j["J"] = jj;
    j["Delta"] = complex_json(v.Delta, digits);
    if (a) {
        json aa = json::array();
        for (const auto& x : *a) aa.push_back(complex_json(x, digits));
        j["absolute"] = aa;
    }
    return j;
}

template <class T>
json shioda_of_poly(const std::vector<T>& poly, int digits) {
    ShiodaVector<T> v = shioda_invariants(homogenize_octavic(poly));
    try {
        std::array<T, 9> a = absolute_shiodas(v);
        return shioda_json(v, &a, digits);
    } catch (const SingularCurve&) {
        json j = shioda_json<T>(v, nullptr, digits);
        j["absolute"] = nullptr;
        j["error"] = "SingularCurve";
        return j;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus 3 CM class polynomials (Rosenhain and Shioda)"};
    app.require_subcommand(1);
    std::string cache_dir;
    int jobs = 1;
    unsigned long seed = 1;
    app.add_option("--cache-dir", cache_dir, "content-addressed theta cache directory");
    app.add_option("--jobs", jobs, "worker threads for theta summation")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized property checks");

    std::string bundle_path, z_path, curve_path, out_path, invariants = "rosenhain";
    long prec = 500;
    int maxdeg = 0;

    auto* imp = app.add_subcommand("import", "validate a bundle and summarize it");
    imp->add_option("--bundle", bundle_path)->required();

    auto* per = app.add_subcommand("periods", "reduced period matrices of the orbit");
    per->add_option("--bundle", bundle_path)->required();
    per->add_option("--prec", prec);

    auto* thc = app.add_subcommand("thetas", "the 64 theta constants of a period matrix");
    thc->add_option("--z", z_path, "JSON file with a 3x3 matrix of {real, imag} decimal strings")->required();
    thc->add_option("--prec", prec);

    auto* ros = app.add_subcommand("rosenhain", "Rosenhain invariants over the orbit");
    ros->add_option("--bundle", bundle_path)->required();
    ros->add_option("--prec", prec);

    auto* shi = app.add_subcommand("shioda", "Shioda invariants of a curve or of the orbit curves");
    auto* curve_opt = shi->add_option("--curve", curve_path, "JSON file with curve coefficients, low to high");
    auto* bundle_opt = shi->add_option("--bundle", bundle_path);
    curve_opt->excludes(bundle_opt);
    shi->add_option("--prec", prec);

    auto* cls = app.add_subcommand("classpoly", "class polynomials with recognized coefficients");
    cls->add_option("--bundle", bundle_path)->required();
    cls->add_option("--prec", prec);
    cls->add_option("--invariants", invariants)->check(CLI::IsMember({"rosenhain", "shioda", "both"}));
    cls->add_option("--maxdeg", maxdeg, "degree bound for recognition (default: half the reflex degree)");
    cls->add_option("--out", out_path, "JSON output file (the plaintext report goes to stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::unique_ptr<ThetaCache> cache;
        if (!cache_dir.empty()) cache = std::make_unique<ThetaCache>(cache_dir);
        PipelineOptions opt{.jobs = jobs, .cache = cache.get()};
        PrecScope ps(prec + 64);

        if (*imp) {
            ExchangeBundle b = load_bundle(bundle_path);
            validate_bundle(b);
            ReflexData r = reflex(b.type());
            json j = {{"degree", b.field.degree()},
                      {"cm_type", b.cm_type},
                      {"modulus", b.modulus},
                      {"orbit_size", b.orbit.size()},
                      {"primitive", is_primitive(b.type())},
                      {"marking", b.marking ? json(*b.marking) : json(nullptr)}};
            json rm = json::array();
            for (const auto& c : r.minpoly) rm.push_back(c.get_str());
            j["reflex_minpoly"] = rm;
            if (b.reflex_check) j["reflex_check_matches"] = same_field(r.minpoly, *b.reflex_check);
            j["valid"] = true;
            std::cout << j.dump(2) << "\n";
        } else if (*per) {
            ExchangeBundle b = load_bundle(bundle_path);
            std::vector<OrbitPoint> orbit = compute_orbit(b, prec, opt);
            json arr = json::array();
            for (const auto& p : orbit)
                arr.push_back({{"norm", rational_string(p.element.norm)},
                               {"Z", matrix_json(p.period.Z)},
                               {"relating_matrix", rat_matrix_json(p.relating)},
                               {"lift", int_matrix_json(p.lift)},
                               {"vanishing", p.vanishing}});
            std::cout << json{{"precision", prec}, {"orbit", arr}}.dump(2) << "\n";
        } else if (*thc) {
            json zj = read_json(z_path);
            const json& rows = zj.contains("Z") ? zj["Z"] : zj;
            CMat z(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) z(i, k) = complex_from_json(rows.at(i).at(k));
            ThetaConstants t = cached_thetas(z, prec, opt);
            std::cout << thetas_json(t, prec).dump(2) << "\n";
        } else if (*ros) {
            ExchangeBundle b = load_bundle(bundle_path);
            std::vector<OrbitPoint> orbit = compute_orbit(b, prec, opt);
            Marking mk = base_marking(b, orbit[0]);
            std::vector<RosenhainTuple> t = orbit_rosenhains(orbit, mk.base, prec);
            json arr = json::array();
            for (size_t s = 0; s < t.size(); ++s) {
                json l = json::array();
                for (const auto& x : t[s]) l.push_back(complex_json(x));
                arr.push_back({{"norm", rational_string(orbit[s].element.norm)}, {"lambdas", l}});
            }
            std::cout << json{{"precision", prec}, {"marking", mk.frame ? "frame" : "transport"}, {"orbit", arr}}.dump(2)
                      << "\n";
        } else if (*shi) {
            if (!curve_path.empty()) {
                json cj = read_json(curve_path);
                const json& c = cj.contains("coefficients") ? cj["coefficients"] : cj;
                bool exact = true;
                for (const auto& e : c) exact = exact && e.is_string() && e.get<std::string>().find_first_of(".eE") == std::string::npos;
                if (exact) {
                    std::vector<Rat> p;
                    for (const auto& e : c) p.push_back(parse_rational(e.get<std::string>()));
                    std::cout << shioda_of_poly(p, kDigits).dump(2) << "\n";
                } else {
                    std::vector<Complex> p;
                    for (const auto& e : c) p.push_back(complex_from_json(e));
                    std::cout << shioda_of_poly(p, kDigits).dump(2) << "\n";
                }
            } else if (!bundle_path.empty()) {
                ExchangeBundle b = load_bundle(bundle_path);
                std::vector<OrbitPoint> orbit = compute_orbit(b, prec, opt);
                Marking mk = base_marking(b, orbit[0]);
                json arr = json::array();
                for (const auto& t : orbit_rosenhains(orbit, mk.base, prec))
                    arr.push_back(shioda_of_poly(curve_from_rosenhains(t), kDigits));
                std::cout << json{{"precision", prec}, {"orbit", arr}}.dump(2) << "\n";
            } else {
                throw CLI::RequiredError("--curve or --bundle");
            }
        } else if (*cls) {
            ExchangeBundle b = load_bundle(bundle_path);
            validate_bundle(b);
            ClassPolyRequest req;
            req.prec = prec;
            req.maxdeg = maxdeg;
            req.invariants = invariants == "shioda" ? Invariants::Shioda
                             : invariants == "both" ? Invariants::Both
                                                    : Invariants::Rosenhain;
            ClassPolyReport r = run_classpoly(b, req, opt);
            if (!out_path.empty()) write_text(out_path, report_json(r) + "\n");
            std::cout << report_text(r);
            if (cache)
                std::cerr << "theta cache: " << cache->hits() << " hits, " << cache->misses() << " misses, "
                          << cache->corrupt() << " rejected\n";
            return r.verdict == "ok" ? 0 : (r.verdict == "NotHyperelliptic" ? 3 : 4);
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.pointer << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
