#include "cmpoly/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace cmpoly {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256: digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string real_hex(const Real& x) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", x.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Real real_from_hex(const std::string& s, long prec) {
    PrecScope ps(prec);
    Real r;
    if (mpfr_set_str(r.get(), s.c_str(), 0, MPFR_RNDN) != 0) throw std::invalid_argument("real_from_hex: " + s);
    return r;
}

ThetaCache::ThetaCache(std::string dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string ThetaCache::key(const CMat& z, long prec) const {
    std::ostringstream os;
    os << "cmpoly.theta.v1;prec=" << prec;
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j)
            os << ';' << z(i, j).re.prec() << ':' << real_hex(z(i, j).re) << ',' << real_hex(z(i, j).im);
    return sha256_hex(os.str());
}

namespace {

std::string payload_of(const nlohmann::json& values) { return values.dump(); }

}  // namespace

std::optional<ThetaConstants> ThetaCache::load(const CMat& z, long prec) {
    const std::string k = key(z, prec);
    const fs::path p = fs::path(dir_) / (k + ".json");
    std::lock_guard<std::mutex> lock(mu_);
    std::ifstream in(p);
    if (!in) {
        ++misses_;
        return std::nullopt;
    }
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("key") != k || j.at("precision").get<long>() != prec) throw std::runtime_error("key");
        const nlohmann::json& vals = j.at("values");
        if (sha256_hex(payload_of(vals)) != j.at("integrity").get<std::string>()) throw std::runtime_error("integrity");
        ThetaConstants t;
        t.precision = prec;
        t.radius = j.at("radius").get<double>();
        t.log2_error = j.at("log2_error").get<double>();
        t.terms = j.at("terms").get<long>();
        const long wp = j.at("working_precision").get<long>();
        PrecScope ps(wp);
        for (int kk = 0; kk < 64; ++kk) t.values[kk] = Complex(Real(0L), Real(0L));
        int count = 0;
        for (const auto& e : vals) {
            const int idx = e.at(0).get<int>();
            if (idx < 0 || idx >= 64 || !char_is_even(idx)) throw std::runtime_error("index");
            t.values[idx] = Complex(real_from_hex(e.at(1).get<std::string>(), wp),
                                    real_from_hex(e.at(2).get<std::string>(), wp));
            ++count;
        }
        if (count != 36) throw std::runtime_error("count");
        ++hits_;
        return t;
    } catch (const std::exception&) {
        ++corrupt_;
        return std::nullopt;
    }
}

void ThetaCache::store(const CMat& z, long prec, const ThetaConstants& t) {
    const std::string k = key(z, prec);
    nlohmann::json vals = nlohmann::json::array();
    for (int idx : even_characteristics())
        vals.push_back({idx, real_hex(t.values[idx].re), real_hex(t.values[idx].im)});
    nlohmann::json j = {{"key", k},
                        {"precision", prec},
                        {"working_precision", t.values[0].re.prec()},
                        {"radius", t.radius},
                        {"log2_error", t.log2_error},
                        {"terms", t.terms},
                        {"values", vals},
                        {"integrity", sha256_hex(payload_of(vals))}};
    static std::atomic<long> counter{0};
    const fs::path final_path = fs::path(dir_) / (k + ".json");
    const fs::path tmp = fs::path(dir_) / (k + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
    {
        std::ofstream out(tmp);
        out << j.dump(1) << '\n';
        if (!out) throw std::runtime_error("ThetaCache: cannot write " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

}  // namespace cmpoly
