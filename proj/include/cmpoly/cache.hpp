#pragma once

#include <mutex>
#include <optional>
#include <string>

#include "cmpoly/theta.hpp"

namespace cmpoly {

std::string sha256_hex(const std::string& data);

// Exact (hexadecimal floating point) text form of a Real and its inverse.
std::string real_hex(const Real& x);
Real real_from_hex(const std::string& s, long prec);

// Content-addressed store: key = SHA-256 over the exact entries of Z and the precision; each entry
// holds the 36 even theta constants plus a SHA-256 of that payload. Entries are written to a
// temporary file and renamed into place, so concurrent readers never see partial files.
class ThetaCache {
public:
    explicit ThetaCache(std::string dir);
    std::string key(const CMat& z, long prec) const;
    std::optional<ThetaConstants> load(const CMat& z, long prec);
    void store(const CMat& z, long prec, const ThetaConstants& t);
    const std::string& dir() const { return dir_; }
    long hits() const { return hits_; }
    long misses() const { return misses_; }
    long corrupt() const { return corrupt_; }

private:
    std::string dir_;
    std::mutex mu_;
    long hits_ = 0, misses_ = 0, corrupt_ = 0;
};

}  // namespace cmpoly
