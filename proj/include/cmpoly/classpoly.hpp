#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmpoly/bundle.hpp"
#include "cmpoly/hyperelliptic.hpp"
#include "cmpoly/theta.hpp"

namespace cmpoly {

class ThetaCache;

struct NotHyperelliptic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineOptions {
    int jobs = 1;
    ThetaCache* cache = nullptr;
    bool verbose = false;
};

struct OrbitPoint {
    OrbitElement element;
    CMTriple triple;
    PeriodMatrix period;
    QMat relating;   // c'_j = sum_i M_{j,i} c_i relative to the base basis
    IMat u_mod2;     // (M mod 2)^{-1}
    IMat lift;       // symplectic integral lift of u_mod2
    ThetaConstants thetas;
    int vanishing = -1;
};

// Period matrices, relating matrices, lifts and theta constants for every orbit element (index 0 is
// the base). Throws NotHyperelliptic when some point has no vanishing even theta constant.
std::vector<OrbitPoint> compute_orbit(const ExchangeBundle& b, long prec, const PipelineOptions& opt = {});

// Thetas of a single period matrix, through the cache when one is given.
ThetaConstants cached_thetas(const CMat& z, long prec, const PipelineOptions& opt);

struct Marking {
    AzygeticSystem base;  // azygetic system at the base point
    std::optional<std::array<int, 8>> frame;  // frozen system in the canonical 2-adic frame, if any
    IMat frame_matrix;  // symplectic frame of L/2L when frame is set
    QMat lattice;       // canonical 2-adic lattice when frame is set
};

// From the bundle's frame characteristics when present, else the transported standard system.
Marking base_marking(const ExchangeBundle& b, const OrbitPoint& base);
// Marking at any orbit point from the frame (requires a frame).
AzygeticSystem marking_at(const ExchangeBundle& b, const Marking& m, const OrbitPoint& p);

// Rosenhain tuples over the orbit: Takase at the base, conjugates by the reciprocity formula.
std::vector<RosenhainTuple> orbit_rosenhains(const std::vector<OrbitPoint>& orbit, const AzygeticSystem& base,
                                             long prec);

enum class PolyKind { H, Hhat, S, Shat };
std::string kind_name(PolyKind k, int index);

struct RecognizedCoefficient {
    Complex value;
    std::vector<Int> minpoly;  // low to high; empty when recognition failed
    double log2_residual = 0;
};

struct ClassPolynomial {
    PolyKind kind = PolyKind::H;
    int index = 1;
    std::vector<Complex> coeffs;  // low to high
    std::vector<RecognizedCoefficient> recognized;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool fully_recognized() const;
};

// values[s][l - 1] = l-th invariant at the s-th orbit point
using OrbitValues = std::vector<std::vector<Complex>>;

// prod_s (t - v_l^s)
ClassPolynomial assemble_H(const OrbitValues& values, int l, PolyKind kind = PolyKind::H);
// sum_s v_l^s prod_{s' != s} (t - v_1^{s'})
ClassPolynomial assemble_Hecke(const OrbitValues& values, int l, PolyKind kind = PolyKind::Hhat);

// algdep of every coefficient with degree maxdeg, then 2 maxdeg; primitive, positive leading coefficient.
void recognize_coefficients(ClassPolynomial& p, int maxdeg, long prec);

enum class Invariants { Rosenhain, Shioda, Both };

struct ClassPolyReport {
    long precision = 0;            // precision that succeeded
    std::vector<long> attempts;    // precisions tried
    int orbit_size = 0;
    int reflex_degree = 0;
    std::vector<int> vanishing;    // per orbit point
    std::vector<RosenhainTuple> rosenhains;
    OrbitValues shiodas;           // absolute Shioda invariants per orbit point
    std::vector<ClassPolynomial> polynomials;
    std::string marking_source;
    std::string verdict = "ok";    // "ok", "NotHyperelliptic", "RecognitionFailure"
    std::string message;
};

struct ClassPolyRequest {
    long prec = 500;
    Invariants invariants = Invariants::Rosenhain;
    int maxdeg = 0;      // 0: half the reflex degree
    int max_retries = 3;
};

ClassPolyReport run_classpoly(const ExchangeBundle& b, const ClassPolyRequest& req, const PipelineOptions& opt = {});

std::string report_json(const ClassPolyReport& r);
std::string report_text(const ClassPolyReport& r);

std::string poly_string(const std::vector<Int>& p, char var = 'x');

}  // namespace cmpoly
