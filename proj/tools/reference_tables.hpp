#pragma once

#include <string>
#include <vector>

#include "cmpoly/mp.hpp"

namespace cmpoly::reference {

// Minimal polynomials (low to high) of the coefficients of the Rosenhain class polynomials of the
// reflex field x^6 + 1012x^4 + 262048x^2 + 3968064, highest power of t first.
struct TableRow {
    std::string name;
    std::vector<std::vector<long>> coeff_minpolys;  // for t^d, ..., t, 1 (Hecke rows start at t^2)
};

inline std::vector<TableRow> rosenhain_table() {
    return {
        {"H1", {{-1, 1}, {-421, -48, 9, 1}, {-22357, 2737, -96, 1}, {121, 355, 43, 1}}},
        {"Hhat2", {{-2195, 1361, -238, 9}, {-487744, -45328, -812, 9}, {-5820221, 448286, -7549, 9}}},
        {"Hhat3", {{-25, -48, -9, 1}, {-6424, 3532, -156, 1}, {-11825, -3641, -63, 1}}},
        {"Hhat4", {{-2195, 1361, -238, 9}, {-487744, -45328, -812, 9}, {-5820221, 448286, -7549, 9}}},
        {"Hhat5", {{-6, 1}, {-26944, -768, 36, 1}, {-178856, 10948, -192, 1}}},
    };
}

// Minimal polynomials of the coefficients of S4 (t^3, t^2, t, 1), low to high, as decimal strings.
inline std::vector<std::vector<std::string>> shioda_s4_table() {
    return {
        {"-1", "1"},
        {"37243744151263324949875407438939777569860345513286901",
         "300061222092067234082658423678294482282672624903293536",
         "767725829025607378425247292652111581405730035262610432",
         "609125894427130745695834466763740170563639135833980928"},
        {"-13516646075537145153192703242525175243162619024655881644192369",
         "786342921318635510916127890581383360136229955111267984417588224",
         "-13725192373693066840488231757093791171761630118575681645149421568",
         "63402882286988579232480270348050635745503565534880222391610376192"},
        {"6573048087002947388939081561118123324940201519692560411907632812406461",
         "7942841558044400713140974757114936533108129843365204389947225517213646848",
         "2500238465575574956316922540016128195983221550816430781122824734688503922688",
         "178186461969600322341142200214605756480742490360904642532008424549206957490176"},
    };
}

inline std::vector<Int> to_ints(const std::vector<long>& v) {
    std::vector<Int> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

inline std::vector<Int> to_ints(const std::vector<std::string>& v) {
    std::vector<Int> r;
    for (const auto& s : v) r.emplace_back(s);
    return r;
}

// log2 of |p(x)| / sum |p_i| |x|^i
inline double relative_residual(const std::vector<Int>& p, const Complex& x) {
    PrecScope ps(x.re.prec());
    Complex v;
    Real scale(0L), ax = abs(x), pw(1L);
    for (size_t i = p.size(); i-- > 0;) v = v * x + Complex(p[i]);
    for (size_t i = 0; i < p.size(); ++i) {
        scale += abs(Real(p[i])) * pw;
        pw *= ax;
    }
    return log2_abs(v) - log2_abs(scale);
}

}  // namespace cmpoly::reference
