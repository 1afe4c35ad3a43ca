#include "cmpoly/bundle.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cmpoly {

using nlohmann::json;

namespace {

const json& at(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing member");
    return *it;
}

Rat rational_at(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw SchemaError(ptr, "exact numbers must be decimal strings");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
}

Int integer_at(const json& j, const std::string& ptr) {
    Rat q = rational_at(j, ptr);
    if (q.get_den() != 1) throw SchemaError(ptr, "expected an integer");
    return q.get_num();
}

std::vector<Rat> rational_vector(const json& j, const std::string& ptr, int n) {
    if (!j.is_array() || (n >= 0 && static_cast<int>(j.size()) != n))
        throw SchemaError(ptr, "expected an array of " + std::to_string(n) + " decimal strings");
    std::vector<Rat> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(rational_at(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

Lattice ideal_at(const json& j, const std::string& ptr, int n) {
    const json& basis = at(j, "basis", ptr);
    Int den = integer_at(at(j, "denominator", ptr), ptr + "/denominator");
    if (den <= 0) throw SchemaError(ptr + "/denominator", "must be positive");
    if (!basis.is_array() || static_cast<int>(basis.size()) != n)
        throw SchemaError(ptr + "/basis", "expected " + std::to_string(n) + " rows");
    Lattice l;
    for (int i = 0; i < n; ++i) {
        std::string rp = ptr + "/basis/" + std::to_string(i);
        auto row = rational_vector(basis[i], rp, n);
        FieldElement e(n);
        for (int k = 0; k < n; ++k) {
            if (row[k].get_den() != 1) throw SchemaError(rp + "/" + std::to_string(k), "expected an integer");
            e[k] = row[k] / Rat(den);
            e[k].canonicalize();
        }
        l.push_back(e);
    }
    try {
        lattice_canonical(l);
    } catch (const std::invalid_argument&) {
        throw SchemaError(ptr + "/basis", "rows do not span a full lattice");
    }
    return l;
}

json ideal_json(const Lattice& a) {
    Lattice c = lattice_canonical(a);
    Int d = 1;
    for (const auto& v : c)
        for (const auto& q : v) d = lcm(d, q.get_den());
    json rows = json::array();
    for (const auto& v : c) {
        json r = json::array();
        for (const auto& q : v) r.push_back(Rat(q * Rat(d)).get_num().get_str());
        rows.push_back(r);
    }
    return json{{"basis", rows}, {"denominator", d.get_str()}};
}

json rational_array(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rational_string(q));
    return a;
}

}  // namespace

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t) {
        size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den)) throw std::invalid_argument("not a decimal rational: '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    Int zn(num), zd(den);
    if (zd == 0) throw std::invalid_argument("zero denominator");
    Rat q(zn, zd);
    q.canonicalize();
    return q;
}

std::string rational_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

ExchangeBundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    const json& schema = at(j, "schema", "");
    if (!schema.is_string() || schema.get<std::string>() != kBundleSchema) throw SchemaError("/schema", "unknown schema tag");
    const json& version = at(j, "version", "");
    if (!version.is_number_integer() || version.get<int>() != kBundleVersion)
        throw SchemaError("/version", "unsupported version");

    ExchangeBundle b;
    const json& field = at(j, "field", "");
    const json& mp = at(field, "minpoly", "/field");
    if (!mp.is_array() || mp.size() < 3) throw SchemaError("/field/minpoly", "expected an array of integer strings");
    std::vector<Int> coeffs;
    for (size_t i = 0; i < mp.size(); ++i) coeffs.push_back(integer_at(mp[i], "/field/minpoly/" + std::to_string(i)));
    if (coeffs.back() != 1) throw SchemaError("/field/minpoly", "polynomial must be monic");
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n % 2 != 0) throw SchemaError("/field/minpoly", "degree must be even");
    const json& cj = at(field, "conjugation", "/field");
    if (!cj.is_array() || static_cast<int>(cj.size()) != n) throw SchemaError("/field/conjugation", "expected n rows");
    QMat conj(n, n);
    for (int i = 0; i < n; ++i) {
        auto row = rational_vector(cj[i], "/field/conjugation/" + std::to_string(i), n);
        for (int k = 0; k < n; ++k) conj(i, k) = row[k];
    }
    b.field = NumberField(coeffs, conj);

    const json& ty = at(j, "cm_type", "");
    if (!ty.is_array() || static_cast<int>(ty.size()) != n / 2) throw SchemaError("/cm_type", "expected g embedding indices");
    for (size_t i = 0; i < ty.size(); ++i) {
        if (!ty[i].is_number_integer() || ty[i].get<int>() < 0 || ty[i].get<int>() >= n)
            throw SchemaError("/cm_type/" + std::to_string(i), "embedding index out of range");
        b.cm_type.push_back(ty[i].get<int>());
    }

    if (j.contains("reflex_check") && !j["reflex_check"].is_null()) {
        const json& rc = j["reflex_check"];
        if (!rc.is_array()) throw SchemaError("/reflex_check", "expected an array of integer strings");
        std::vector<Int> r;
        for (size_t i = 0; i < rc.size(); ++i) r.push_back(integer_at(rc[i], "/reflex_check/" + std::to_string(i)));
        b.reflex_check = r;
    }

    const json& mod = at(j, "modulus", "");
    if (!mod.is_number_integer() || (mod.get<int>() != 1 && mod.get<int>() != 2))
        throw SchemaError("/modulus", "modulus must be 1 or 2");
    b.modulus = mod.get<int>();

    const json& bt = at(j, "base_triple", "");
    b.base_triple.type = CMType{b.field, b.cm_type};
    b.base_triple.ideal = ideal_at(at(bt, "ideal", "/base_triple"), "/base_triple/ideal", n);
    b.base_triple.xi = rational_vector(at(bt, "xi", "/base_triple"), "/base_triple/xi", n);

    const json& orb = at(j, "orbit", "");
    if (!orb.is_array() || orb.empty()) throw SchemaError("/orbit", "expected a nonempty array");
    for (size_t i = 0; i < orb.size(); ++i) {
        std::string p = "/orbit/" + std::to_string(i);
        OrbitElement e;
        e.ideal = ideal_at(at(orb[i], "ideal", p), p + "/ideal", n);
        e.norm = rational_at(at(orb[i], "norm", p), p + "/norm");
        if (e.norm <= 0) throw SchemaError(p + "/norm", "norm must be positive");
        b.orbit.push_back(e);
    }
    // the identity element (norm 1, ideal = its own square up to conjugation, i.e. an order) leads
    if (b.orbit[0].norm != 1 || !lattice_is_order(b.orbit[0].ideal, b.field))
        throw SchemaError("/orbit/0", "first orbit element must be the identity (maximal order, norm 1)");

    if (j.contains("provenance")) b.provenance = j["provenance"].dump();
    if (j.contains("marking") && !j["marking"].is_null()) {
        const json& m = j["marking"];
        const json& fc = at(m, "frame_characteristics", "/marking");
        if (!fc.is_array() || fc.size() != 8) throw SchemaError("/marking/frame_characteristics", "expected 8 indices");
        std::vector<int> v;
        for (size_t i = 0; i < fc.size(); ++i) {
            if (!fc[i].is_number_integer() || fc[i].get<int>() < 0 || fc[i].get<int>() >= 64)
                throw SchemaError("/marking/frame_characteristics/" + std::to_string(i), "index out of range");
            v.push_back(fc[i].get<int>());
        }
        b.marking = v;
    }
    return b;
}

ExchangeBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bundle " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str());
}

void validate_bundle(const ExchangeBundle& b) {
    if (!nf_conjugation_check(b.field)) throw ValidationError("conjugation matrix is not complex conjugation");
    if (!is_cm_field(b.field)) throw ValidationError("field is not a CM field");
    const Lattice& ok = b.orbit[0].ideal;
    for (size_t i = 0; i < b.orbit.size(); ++i)
        if (!check_half_norm(b.orbit[i], b.field, ok))
            throw ValidationError("orbit element " + std::to_string(i) + " fails the half-norm check");
    IMat e;
    try {
        e = riemann_form(b.base_triple);
    } catch (const std::domain_error& ex) {
        throw ValidationError(std::string("base triple: ") + ex.what());
    }
    if (!is_alternating(e)) throw ValidationError("base triple: Riemann form not alternating");
    if (abs(determinant(e)) != 1) throw ValidationError("base triple: Riemann form not unimodular");
}

std::string bundle_to_json(const ExchangeBundle& b) {
    json j;
    j["schema"] = kBundleSchema;
    j["version"] = kBundleVersion;
    json mp = json::array();
    for (const auto& c : b.field.minpoly) mp.push_back(c.get_str());
    json conj = json::array();
    const int n = b.field.degree();
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> r = b.field.conjugation->row(i);
        conj.push_back(rational_array(r));
    }
    j["field"] = {{"minpoly", mp}, {"conjugation", conj}};
    j["cm_type"] = b.cm_type;
    if (b.reflex_check) {
        json rc = json::array();
        for (const auto& c : *b.reflex_check) rc.push_back(c.get_str());
        j["reflex_check"] = rc;
    }
    j["modulus"] = b.modulus;
    j["base_triple"] = {{"ideal", ideal_json(b.base_triple.ideal)}, {"xi", rational_array(b.base_triple.xi)}};
    json orb = json::array();
    for (const auto& e : b.orbit) orb.push_back({{"ideal", ideal_json(e.ideal)}, {"norm", rational_string(e.norm)}});
    j["orbit"] = orb;
    j["provenance"] = b.provenance.empty() ? json::object() : json::parse(b.provenance);
    if (b.marking) j["marking"] = {{"frame_characteristics", *b.marking}};
    return j.dump(1);
}

ExchangeBundle rotate_bundle(const ExchangeBundle& b, int k) {
    ExchangeBundle r = b;
    r.base_triple = shimura_act(b.base_triple, b.orbit.at(k));
    return r;
}

}  // namespace cmpoly
