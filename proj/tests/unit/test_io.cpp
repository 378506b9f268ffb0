#include <cstdio>
#include <functional>

#include <json.hpp>

#include "rmlattice/errors.hpp"
#include "rmlattice/io.hpp"
#include "test_support.hpp"

using namespace rmlattice;
using namespace rmlattice::testing;
using Json = nlohmann::ordered_json;

namespace {

std::string edit(const std::string& text, const std::function<void(Json&)>& f) {
  Json j = Json::parse(text);
  f(j);
  return j.dump();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("instance layout") {
    const std::string text = serialize_instance(standard(5));
    CHECK(text ==
          "{\n"
          "  \"order\": {\n"
          "    \"D\": 5,\n"
          "    \"conductor\": 1\n"
          "  },\n"
          "  \"omega_action\": [\n"
          "    [0, 0, 1, 0],\n"
          "    [0, 0, 0, 1],\n"
          "    [1, 0, 1, 0],\n"
          "    [0, 1, 0, 1]\n"
          "  ],\n"
          "  \"gram\": [\n"
          "    [0, 1, 0, 0],\n"
          "    [-1, 0, 0, 0],\n"
          "    [0, 0, 0, 1],\n"
          "    [0, 0, -1, 0]\n"
          "  ],\n"
          "  \"format_version\": 1\n"
          "}\n");
  }

  TEST_CASE("instance and certificate round trips are byte-identical") {
    std::uint64_t seed = 1;
    for (long D : {2, 5, 13, 17})
      for (long f : {1, 3, 7}) {
        std::vector<Int> primes;
        for (long ell : {7, 11, 17, 19, 23})
          if (f % ell != 0 && factor_ell(make_order(D, 1), ell) && primes.size() < 2) primes.push_back(ell);
        const auto s = generate_instance(D, f, primes, seed++);
        const std::string text = serialize_instance(s);
        const auto back = parse_instance(text);
        CHECK(back == s);
        CHECK(serialize_instance(back) == text);

        const auto report = principalize(s);
        const std::string cert = serialize_certificate(report);
        const auto parsed = parse_certificate(cert);
        CHECK(parsed.seed == report.seed);
        CHECK(parsed.steps == report.steps);
        CHECK(parsed.output == report.output);
        CHECK(serialize_certificate(parsed) == cert);
      }
  }

  TEST_CASE("large integers are decimal strings") {
    auto s = standard(5);
    const Int big = (Int(1) << 60) + 7;
    s.gram = big * s.gram;
    const std::string text = serialize_instance(s);
    CHECK(text.find("\"1152921504606846983\"") != std::string::npos);
    CHECK(text.find("\"-1152921504606846983\"") != std::string::npos);
    CHECK(parse_instance(text) == s);

    s.gram = ((Int(1) << 53) - 1) * standard(5).gram;
    CHECK(serialize_instance(s).find("9007199254740991") != std::string::npos);
    CHECK(serialize_instance(s).find("\"9007199254740991\"") == std::string::npos);
  }

  TEST_CASE("parser accepts integers as strings") {
    const std::string text = edit(serialize_instance(standard(5)), [](Json& j) { j["gram"][0][1] = "1"; });
    CHECK(parse_instance(text) == standard(5));
  }

  TEST_CASE("strict instance parsing") {
    const std::string good = serialize_instance(standard(5, 3));
    CHECK_THROWS_AS(parse_instance(good.substr(0, good.size() / 2)), FormatError);
    CHECK_THROWS_AS(parse_instance(""), FormatError);
    CHECK_THROWS_AS(parse_instance("[]"), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j.erase("gram"); })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["extra"] = 1; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["format_version"] = 2; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["gram"][0][1] = 1.5; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["gram"][0][1] = "01"; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["gram"][0][1] = "1/1"; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["gram"].erase(3); })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["omega_action"][2].push_back(0); })),
                    FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["order"]["D"] = 4; })), FormatError);
    CHECK_THROWS_AS(parse_instance(edit(good, [](Json& j) { j["order"]["conductor"] = 0; })), FormatError);
  }

  TEST_CASE("strict certificate parsing") {
    const auto s = generate_instance(5, 3, {11}, 42);
    const std::string good = serialize_certificate(principalize(s));
    CHECK_NOTHROW(parse_certificate(good));
    CHECK_THROWS_AS(parse_certificate(good.substr(0, good.size() - 5)), FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j.erase("seed"); })), FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["seed"] = -1; })), FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["steps"] = Json::object(); })), FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["steps"][0]["kind"] = "rotate"; })),
                    FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["steps"][0]["t"] = 7; })), FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["steps"][0].erase("branch"); })),
                    FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good,
                                           [](Json& j) {
                                             j["steps"][0]["kernel_overlattice"][0][0] = "2/2";
                                           })),
                    FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good,
                                           [](Json& j) {
                                             j["steps"][0]["kernel_overlattice"][0][0] = "1/0";
                                           })),
                    FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["steps"][0]["alpha"] = Json::array({1}); })),
                    FormatError);
    CHECK_THROWS_AS(parse_certificate(edit(good, [](Json& j) { j["final"].erase("order"); })), FormatError);
  }

  TEST_CASE("kernel entries are reduced fractions") {
    const auto s = generate_instance(5, 3, {11}, 42);
    const auto report = principalize(s);
    const Json j = Json::parse(serialize_certificate(report));
    bool saw_kernel = false;
    for (const auto& st : j["steps"]) {
      if (st["kernel_overlattice"].is_null()) continue;
      saw_kernel = true;
      for (const auto& row : st["kernel_overlattice"])
        for (const auto& x : row) {
          REQUIRE(x.is_string());
          const auto text = x.get<std::string>();
          CHECK(text.find('/') != std::string::npos);
        }
    }
    CHECK(saw_kernel);
  }

  TEST_CASE("files") {
    const std::string path = "rmlattice_io_test.json";
    write_file(path, serialize_instance(standard(13)));
    CHECK(parse_instance(read_file(path)) == standard(13));
    std::remove(path.c_str());
    CHECK_THROWS(read_file("does/not/exist.json"));
  }
}
