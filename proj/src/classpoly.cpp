#include "cmpoly/classpoly.hpp"

#include <iomanip>
#include <sstream>

#include "cmpoly/cache.hpp"
#include "cmpoly/linalg.hpp"
#include "cmpoly/shioda.hpp"
#include "json.hpp"

namespace cmpoly {

ThetaConstants cached_thetas(const CMat& z, long prec, const PipelineOptions& opt) {
    if (opt.cache) {
        if (auto t = opt.cache->load(z, prec)) return *t;
    }
    ThetaConstants t = theta_constants(z, prec, {.jobs = opt.jobs});
    if (opt.cache) opt.cache->store(z, prec, t);
    return t;
}

std::vector<OrbitPoint> compute_orbit(const ExchangeBundle& b, long prec, const PipelineOptions& opt) {
    std::vector<OrbitPoint> out;
    PeriodMatrix base;
    for (size_t s = 0; s < b.orbit.size(); ++s) {
        OrbitPoint p;
        p.element = b.orbit[s];
        p.triple = shimura_act(b.base_triple, b.orbit[s]);
        p.period = period_matrix(p.triple, prec);
        if (s == 0) base = p.period;
        p.relating = relating_matrix(base.basis, p.period.basis, b.orbit[s].norm);
        p.u_mod2 = inverse_mod2(reduce_mod2(p.relating));
        p.lift = lift_sp_mod2(p.u_mod2);
        p.thetas = cached_thetas(p.period.Z, prec, opt);
        p.vanishing = find_vanishing(p.thetas, prec);
        if (p.vanishing < 0)
            throw NotHyperelliptic("orbit point " + std::to_string(s) + ": no even theta constant vanishes");
        out.push_back(std::move(p));
    }
    return out;
}

Marking base_marking(const ExchangeBundle& b, const OrbitPoint& base) {
    Marking m;
    if (!b.marking) {
        m.base = transport_azygetic(base.vanishing);
        return m;
    }
    std::array<int, 8> ef{};
    for (int i = 0; i < 8; ++i) ef[i] = (*b.marking)[i];
    m.frame = ef;
    m.lattice = canonical_2adic_lattice(base.triple.ideal);
    m.frame_matrix = symplectic_frame_mod2(m.lattice, base.triple.xi, b.field);
    m.base = marking_from_frame(ef, frame_relation(m.lattice, m.frame_matrix, base.period.basis));
    if (m.base.vanishing() != base.vanishing)
        throw ValidationError("marking: frame characteristics do not match the vanishing theta constant at the base");
    return m;
}

AzygeticSystem marking_at(const ExchangeBundle& b, const Marking& m, const OrbitPoint& p) {
    (void)b;
    if (!m.frame) throw std::logic_error("marking_at: no frame characteristics");
    if (canonical_2adic_lattice(p.triple.ideal) != m.lattice)
        throw std::logic_error("marking_at: ideal has a different 2-adic lattice");
    return marking_from_frame(*m.frame, frame_relation(m.lattice, m.frame_matrix, p.period.basis));
}

std::vector<RosenhainTuple> orbit_rosenhains(const std::vector<OrbitPoint>& orbit, const AzygeticSystem& base,
                                             long prec) {
    if (base.vanishing() != orbit.at(0).vanishing)
        throw std::logic_error("orbit_rosenhains: marking does not fit the base point");
    std::vector<RosenhainTuple> out;
    out.push_back(takase_rosenhain(orbit[0].thetas, base, prec));
    for (size_t s = 1; s < orbit.size(); ++s)
        out.push_back(conjugate_rosenhains(orbit[s].thetas, orbit[s].lift, base, prec));
    return out;
}

std::string kind_name(PolyKind k, int index) {
    switch (k) {
        case PolyKind::H: return "H" + std::to_string(index);
        case PolyKind::Hhat: return "Hhat" + std::to_string(index);
        // Shioda polynomials carry the index of the J in their numerator (S2 = J2^7 / Delta, ...)
        case PolyKind::S: return "S" + std::to_string(index + 1);
        case PolyKind::Shat: return "Shat" + std::to_string(index + 1);
    }
    return "?";
}

bool ClassPolynomial::fully_recognized() const {
    if (recognized.size() != coeffs.size()) return false;
    for (const auto& r : recognized)
        if (r.minpoly.empty()) return false;
    return true;
}

namespace {

std::vector<Complex> poly_mul_linear(const std::vector<Complex>& p, const Complex& root) {
    std::vector<Complex> r(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i) {
        r[i + 1] += p[i];
        r[i] -= p[i] * root;
    }
    return r;
}

}  // namespace

ClassPolynomial assemble_H(const OrbitValues& values, int l, PolyKind kind) {
    if (values.empty()) throw std::invalid_argument("assemble_H: no values");
    ClassPolynomial p;
    p.kind = kind;
    p.index = l;
    p.coeffs = {Complex(1L)};
    for (const auto& v : values) p.coeffs = poly_mul_linear(p.coeffs, v.at(l - 1));
    return p;
}

ClassPolynomial assemble_Hecke(const OrbitValues& values, int l, PolyKind kind) {
    if (values.empty()) throw std::invalid_argument("assemble_Hecke: no values");
    ClassPolynomial p;
    p.kind = kind;
    p.index = l;
    p.coeffs.assign(values.size(), Complex());
    for (size_t s = 0; s < values.size(); ++s) {
        std::vector<Complex> q{values[s].at(l - 1)};
        for (size_t t = 0; t < values.size(); ++t)
            if (t != s) q = poly_mul_linear(q, values[t].at(0));
        for (size_t i = 0; i < q.size(); ++i) p.coeffs[i] += q[i];
    }
    return p;
}

void recognize_coefficients(ClassPolynomial& p, int maxdeg, long prec) {
    p.recognized.clear();
    for (const auto& c : p.coeffs) {
        RecognizedCoefficient r;
        r.value = c;
        for (int d : {maxdeg, 2 * maxdeg}) {
            try {
                r.minpoly = algdep(c, d, prec);
                break;
            } catch (const RecognitionFailure&) {
            }
        }
        if (!r.minpoly.empty()) {
            PrecScope ps(c.re.prec());
            Complex v;
            for (size_t i = r.minpoly.size(); i-- > 0;) v = v * c + Complex(r.minpoly[i]);
            r.log2_residual = log2_abs(v);
        }
        p.recognized.push_back(std::move(r));
    }
}

std::string poly_string(const std::vector<Int>& p, char var) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        Int a = abs(p[i]);
        if (first) {
            if (p[i] < 0) os << "-";
        } else {
            os << (p[i] < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

OrbitValues shioda_values(const std::vector<RosenhainTuple>& ros) {
    OrbitValues out;
    for (const auto& t : ros) {
        PrecScope ps(t[0].re.prec());
        BinaryForm<Complex> f = homogenize_octavic(curve_from_rosenhains(t));
        std::array<Complex, 9> a = absolute_shiodas(shioda_invariants(f));
        out.emplace_back(a.begin(), a.end());
    }
    return out;
}

std::vector<ClassPolynomial> assemble_all(const OrbitValues& v, int count, PolyKind h, PolyKind hh) {
    std::vector<ClassPolynomial> out;
    for (int l = 1; l <= count; ++l) out.push_back(assemble_H(v, l, h));
    for (int l = 2; l <= count; ++l) out.push_back(assemble_Hecke(v, l, hh));
    return out;
}

}  // namespace

ClassPolyReport run_classpoly(const ExchangeBundle& b, const ClassPolyRequest& req, const PipelineOptions& opt) {
    ClassPolyReport rep;
    rep.orbit_size = static_cast<int>(b.orbit.size());
    rep.reflex_degree = static_cast<int>(reflex(b.type()).minpoly.size()) - 1;
    const int maxdeg = req.maxdeg > 0 ? req.maxdeg : rep.reflex_degree / 2;
    long prec = req.prec;
    for (int attempt = 0; attempt <= req.max_retries; ++attempt, prec *= 2) {
        rep.attempts.push_back(prec);
        rep.precision = prec;
        PrecScope ps(prec + 64);
        std::vector<OrbitPoint> orbit;
        try {
            orbit = compute_orbit(b, prec, opt);
        } catch (const NotHyperelliptic& e) {
            rep.verdict = "NotHyperelliptic";
            rep.message = e.what();
            return rep;
        } catch (const PrecisionError& e) {
            rep.verdict = "PrecisionError";
            rep.message = e.what();
            continue;
        }
        rep.vanishing.clear();
        for (const auto& p : orbit) rep.vanishing.push_back(p.vanishing);
        Marking mk = base_marking(b, orbit[0]);
        rep.marking_source = mk.frame ? "frame" : "transport";
        try {
            rep.rosenhains = orbit_rosenhains(orbit, mk.base, prec);
        } catch (const DegenerateTheta& e) {
            rep.verdict = "DegenerateTheta";
            rep.message = e.what();
            continue;
        }
        rep.polynomials.clear();
        rep.shiodas.clear();
        if (req.invariants != Invariants::Shioda) {
            OrbitValues v;
            for (const auto& t : rep.rosenhains) v.emplace_back(t.begin(), t.end());
            for (auto& p : assemble_all(v, 5, PolyKind::H, PolyKind::Hhat)) rep.polynomials.push_back(std::move(p));
        }
        if (req.invariants != Invariants::Rosenhain) {
            rep.shiodas = shioda_values(rep.rosenhains);
            for (auto& p : assemble_all(rep.shiodas, 9, PolyKind::S, PolyKind::Shat)) rep.polynomials.push_back(std::move(p));
        }
        bool all = true;
        for (auto& p : rep.polynomials) {
            recognize_coefficients(p, maxdeg, prec);
            all = all && p.fully_recognized();
        }
        if (all) {
            rep.verdict = "ok";
            rep.message.clear();
            return rep;
        }
        rep.verdict = "RecognitionFailure";
        rep.message = "some coefficients were not recognized at " + std::to_string(prec) + " bits";
    }
    return rep;
}

std::string report_json(const ClassPolyReport& r) {
    using nlohmann::json;
    json j;
    j["verdict"] = r.verdict;
    if (!r.message.empty()) j["message"] = r.message;
    j["precision"] = r.precision;
    j["attempts"] = r.attempts;
    j["orbit_size"] = r.orbit_size;
    j["reflex_degree"] = r.reflex_degree;
    j["vanishing_characteristics"] = r.vanishing;
    j["marking"] = r.marking_source;
    const int digits = 40;
    json ros = json::array();
    for (const auto& t : r.rosenhains) {
        json row = json::array();
        for (const auto& l : t) row.push_back({{"real", l.re.to_string(digits)}, {"imag", l.im.to_string(digits)}});
        ros.push_back(row);
    }
    j["rosenhains"] = ros;
    json polys = json::array();
    for (const auto& p : r.polynomials) {
        json coeffs = json::array();
        for (size_t i = 0; i < p.coeffs.size(); ++i) {
            json c = {{"power", i},
                      {"real", p.coeffs[i].re.to_string(digits)},
                      {"imag", p.coeffs[i].im.to_string(digits)}};
            if (i < p.recognized.size() && !p.recognized[i].minpoly.empty()) {
                json mp = json::array();
                for (const auto& a : p.recognized[i].minpoly) mp.push_back(a.get_str());
                c["minpoly"] = mp;
                c["log2_residual"] = p.recognized[i].log2_residual;
            } else {
                c["minpoly"] = nullptr;
            }
            coeffs.push_back(c);
        }
        polys.push_back({{"name", kind_name(p.kind, p.index)}, {"degree", p.degree()}, {"coefficients", coeffs}});
    }
    j["polynomials"] = polys;
    return j.dump(2);
}

std::string report_text(const ClassPolyReport& r) {
    std::ostringstream os;
    os << "verdict: " << r.verdict;
    if (!r.message.empty()) os << " (" << r.message << ")";
    os << "\nprecision: " << r.precision << " bits, orbit size " << r.orbit_size << ", reflex degree "
       << r.reflex_degree << ", marking " << r.marking_source << "\n\n";
    if (r.polynomials.empty()) return os.str();
    int width = 0;
    for (const auto& p : r.polynomials) width = std::max(width, p.degree());
    os << std::left << std::setw(8) << "pol.";
    for (int k = width; k >= 0; --k) os << " | " << (k == 0 ? std::string("1") : "t^" + std::to_string(k));
    os << "\n";
    for (const auto& p : r.polynomials) {
        os << std::left << std::setw(8) << kind_name(p.kind, p.index);
        for (int k = width; k >= 0; --k) {
            os << " | ";
            if (k > p.degree()) os << "-";
            else if (k < static_cast<int>(p.recognized.size()) && !p.recognized[k].minpoly.empty())
                os << poly_string(p.recognized[k].minpoly);
            else os << "?";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace cmpoly
