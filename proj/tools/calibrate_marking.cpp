// Finds frame characteristics for a bundle by relabeling the transported azygetic system at the
// base point and scoring each labeling against the Rosenhain reference table.

#include <algorithm>
#include <cstdio>
#include <iostream>

#include "cmpoly/classpoly.hpp"
#include "reference_tables.hpp"

using namespace cmpoly;

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s bundle.json [prec]\n", argv[0]);
        return 2;
    }
    const long prec = argc > 2 ? std::atol(argv[2]) : 256;
    ExchangeBundle b = load_bundle(argv[1]);
    b.marking.reset();
    std::vector<OrbitPoint> orbit = compute_orbit(b, prec);
    const OrbitPoint& base = orbit[0];
    const AzygeticSystem ee = transport_azygetic(base.vanishing);
    const QMat L = canonical_2adic_lattice(base.triple.ideal);
    const IMat F = symplectic_frame_mod2(L, base.triple.xi, b.field);
    const IMat R0 = frame_relation(L, F, base.period.basis);
    const auto table = reference::rosenhain_table();
    const double tol = -static_cast<double>(prec) / 2;

    std::array<int, 8> perm{0, 1, 2, 3, 4, 5, 6, 7};
    int best_score = -1;
    std::array<int, 8> best_perm{};
    std::vector<std::string> best_detail;
    long tried = 0;
    do {
        AzygeticSystem e = relabel(ee, perm);
        if (e.vanishing() != base.vanishing || !is_azygetic(e)) continue;
        ++tried;
        std::vector<RosenhainTuple> ros;
        try {
            ros = orbit_rosenhains(orbit, e, prec);
        } catch (const DegenerateTheta&) {
            continue;
        }
        OrbitValues v;
        for (const auto& t : ros) v.emplace_back(t.begin(), t.end());
        // score over H1, Hhat3, Hhat4, Hhat5; Hhat2 reported separately
        int score = 0, score2 = 0;
        std::vector<std::string> detail;
        for (const auto& row : table) {
            ClassPolynomial p = row.name == "H1" ? assemble_H(v, 1) : assemble_Hecke(v, row.name.back() - '0');
            std::string d = row.name + ":";
            for (size_t k = 0; k < row.coeff_minpolys.size(); ++k) {
                const int power = p.degree() - static_cast<int>(k);
                const bool ok = reference::relative_residual(reference::to_ints(row.coeff_minpolys[k]), p.coeffs[power]) < tol;
                d += ok ? "+" : "-";
                if (row.name == "Hhat2") score2 += ok;
                else score += ok;
            }
            detail.push_back(d);
        }
        if (score > best_score) {
            best_score = score;
            best_perm = perm;
            best_detail = detail;
            best_detail.push_back("Hhat2 matches " + std::to_string(score2));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    AzygeticSystem chosen = relabel(ee, best_perm);
    AzygeticSystem frame = linear_transport(inverse_mod2(R0), chosen);
    std::cout << "labelings tried " << tried << ", best score " << best_score << " of 13\n";
    std::cout << "relabel";
    for (int x : best_perm) std::cout << ' ' << x + 1;
    std::cout << "\nbase system";
    for (int x : chosen.eta) std::cout << ' ' << x;
    std::cout << "\n";
    for (const auto& d : best_detail) std::cout << "  " << d << "\n";
    if (!(marking_from_frame(frame.eta, R0) == chosen)) {
        std::cerr << "frame round trip failed\n";
        return 1;
    }
    std::cout << "frame_characteristics [";
    for (int i = 0; i < 8; ++i) std::cout << (i ? ", " : "") << frame.eta[i];
    std::cout << "]\n";
    return 0;
}
