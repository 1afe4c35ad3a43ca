#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cmpoly/bundle.hpp"
#include "json.hpp"

using namespace cmpoly;
using nlohmann::json;

namespace {

std::string fixture_text() {
    std::ifstream in(std::string(CMPOLY_TEST_DATA) + "/sextic_field_bundle.json");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string schema_pointer(const std::string& text) {
    try {
        parse_bundle(text);
    } catch (const SchemaError& e) {
        return e.pointer;
    }
    return "<accepted>";
}

}  // namespace

TEST_CASE("fixture parses, validates and round trips") {
    ExchangeBundle b = parse_bundle(fixture_text());
    CHECK(b.field.degree() == 6);
    CHECK(b.orbit.size() == 3);
    CHECK(b.modulus == 2);
    REQUIRE(b.marking);
    CHECK(b.marking->size() == 8);
    validate_bundle(b);
    ExchangeBundle c = parse_bundle(bundle_to_json(b));
    CHECK(bundle_to_json(c) == bundle_to_json(b));
    CHECK(c.base_triple.xi == b.base_triple.xi);
    CHECK(lattice_equal(c.base_triple.ideal, b.base_triple.ideal));
}

TEST_CASE("schema errors carry a JSON pointer") {
    const json j = json::parse(fixture_text());
    CHECK(schema_pointer("{ not json") == "");
    {
        json k = j;
        k["schema"] = "something.else";
        CHECK(schema_pointer(k.dump()) == "/schema");
    }
    {
        json k = j;
        k["version"] = 7;
        CHECK(schema_pointer(k.dump()) == "/version");
    }
    {
        json k = j;
        k["field"]["minpoly"][6] = "2";
        CHECK(schema_pointer(k.dump()) == "/field/minpoly");
    }
    {
        json k = j;
        k["cm_type"][1] = 9;
        CHECK(schema_pointer(k.dump()) == "/cm_type/1");
    }
    {
        json k = j;
        k["base_triple"]["xi"][1] = 0.5;
        CHECK(schema_pointer(k.dump()).rfind("/base_triple/xi", 0) == 0);
    }
    {
        // the identity must lead the orbit
        json k = j;
        std::swap(k["orbit"][0], k["orbit"][1]);
        CHECK(schema_pointer(k.dump()) == "/orbit/0");
    }
    {
        json k = j;
        k["orbit"] = json::array();
        CHECK(schema_pointer(k.dump()) == "/orbit");
    }
    {
        json k = j;
        k["marking"]["frame_characteristics"][3] = 64;
        CHECK(schema_pointer(k.dump()) == "/marking/frame_characteristics/3");
    }
}

TEST_CASE("validation rejects a corrupted ideal and a wrong norm") {
    const json j = json::parse(fixture_text());
    {
        json k = j;
        k["orbit"][1]["norm"] = "5";
        ExchangeBundle b = parse_bundle(k.dump());
        CHECK_THROWS_AS(validate_bundle(b), ValidationError);
    }
    {
        json k = j;
        // scale one basis row of the second ideal: still a lattice, no longer the exported ideal
        for (auto& x : k["orbit"][1]["ideal"]["basis"][0]) x = Int(Int(x.get<std::string>()) * 3).get_str();
        ExchangeBundle b = parse_bundle(k.dump());
        CHECK_THROWS_AS(validate_bundle(b), ValidationError);
    }
    {
        json k = j;
        k["base_triple"]["xi"][1] = "1/3";
        ExchangeBundle b = parse_bundle(k.dump());
        CHECK_THROWS_AS(validate_bundle(b), ValidationError);
    }
}

TEST_CASE("rotation keeps the identity first and moves the base") {
    ExchangeBundle b = parse_bundle(fixture_text());
    ExchangeBundle r = rotate_bundle(b, 1);
    CHECK(lattice_equal(r.orbit[0].ideal, b.orbit[0].ideal));
    CHECK_FALSE(lattice_equal(r.base_triple.ideal, b.base_triple.ideal));
    validate_bundle(r);
}

TEST_CASE("rational strings") {
    CHECK(parse_rational("-14351/102168") == Rat(-14351, 102168));
    CHECK(parse_rational("6/4") == Rat(3, 2));
    CHECK(rational_string(Rat(-3, 1)) == "-3");
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(parse_rational("1/0"));
}
