#include <doctest.h>

#include <sstream>

#include "tc/census.hpp"

using namespace tc;
using namespace tc::census;

namespace {

std::map<std::string, std::uint64_t> named_counts(const ClassCounts& c) {
  std::map<std::string, std::uint64_t> out;
  for (auto [cls, n] : c) out[std::string(twisted::class_name(cls))] = n;
  return out;
}

Spectrum eng_of(std::uint32_t q) {
  auto f = gf::Field::make(q);
  twisted::CubicModel m(f);
  action::Group g(f);
  const auto oc = orbit_census(m, g, 1, false);
  for (const auto& cr : oc.classes)
    if (cr.cls == LineClass::EnG) return spectrum_of(cr.orbits);
  return {};
}

}  // namespace

TEST_CASE("classify_all") {
  using M = std::map<std::string, std::uint64_t>;
  twisted::CubicModel m5(gf::Field::make(5));
  CHECK(named_counts(classify_all(m5)) ==
        M{{"RC", 15}, {"T", 6}, {"IC", 10}, {"RA", 15}, {"IA", 10}, {"UG", 30}, {"UnG", 120}, {"EG", 120}, {"EnG", 480}});
  twisted::CubicModel m9(gf::Field::make(9));
  CHECK(named_counts(classify_all(m9, 3)) ==
        M{{"RC", 45}, {"T", 10}, {"IC", 36}, {"UG", 90}, {"UnG", 720}, {"EnG", 5760}, {"A", 1}, {"EA", 800}});
  twisted::CubicModel m8(gf::Field::make(8));
  CHECK(named_counts(classify_all(m8, 2)) ==
        M{{"RC", 36}, {"T", 9}, {"IC", 28}, {"RA", 36}, {"IA", 28}, {"UG", 72}, {"UnG", 504}, {"EG", 504}, {"EnG", 3528}});
}

TEST_CASE("plane classes") {
  auto names = [](const std::map<PlaneType, std::uint64_t>& m) {
    std::map<std::string, std::uint64_t> out;
    for (auto [t, n] : m) out[std::string(plane_type_name(t))] = n;
    return out;
  };
  using M = std::map<std::string, std::uint64_t>;
  CHECK(names(classify_planes(twisted::CubicModel(gf::Field::make(5)))) ==
        M{{"Gamma", 6}, {"2C", 30}, {"3C", 20}, {"1barC", 60}, {"0C", 40}});
  CHECK(names(classify_planes(twisted::CubicModel(gf::Field::make(7)))) ==
        M{{"Gamma", 8}, {"2C", 56}, {"3C", 56}, {"1barC", 168}, {"0C", 112}});
  for (std::uint32_t q : {2u, 3u, 4u, 8u, 9u}) {
    const auto counts = classify_planes(twisted::CubicModel(gf::Field::make(q)));
    std::uint64_t total = 0;
    for (auto t : kAllPlaneTypes) {
      CHECK(counts.at(t) == expected_plane_count(t, q));
      total += counts.at(t);
    }
    CHECK(total == pg3::point_count(q));
  }
}

TEST_CASE("EnG spectra") {
  CHECK(eng_of(7) == Spectrum{{28, 1}, {84, 1}, {112, 2}, {168, 6}, {336, 2}});
  CHECK(eng_of(8) == Spectrum{{252, 12}, {504, 1}});
  CHECK(eng_of(5) == Spectrum{{60, 4}, {120, 2}});
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    auto f = gf::Field::make(q);
    const auto expected = expected_spectrum(LineClass::EnG, *f);
    CHECK(eng_of(q) == expected);
    CHECK(spectrum_total(expected) == twisted::expected_class_size(LineClass::EnG, q));
    CHECK(spectrum_orbits(expected) == expected_eng_orbits(*f));
  }
}

TEST_CASE("evidence labels and supported range") {
  CHECK(eng_evidence(13) == "theorem-verified");
  CHECK(eng_evidence(64) == "theorem-verified");
  CHECK(eng_evidence(17) == "theorem-verified");
  CHECK(eng_evidence(49) == "conjecture-consistent");
  CHECK(eng_evidence(41) == "conjecture-consistent");
  CHECK(eng_evidence(3) == "small-q-subgroup");
  CHECK_THROWS_AS(require_supported(6, false), UnsupportedQ);
  CHECK_THROWS_AS(require_supported(128, true), UnsupportedQ);
  CHECK_THROWS_AS(require_supported(1, true), UnsupportedQ);
  CHECK_THROWS_AS(require_supported(37, false), UnsupportedQ);
  CHECK_NOTHROW(require_supported(37, true));
  CHECK_NOTHROW(require_supported(32, false));
  CHECK(expected_line_orbits(13) == 34);
  CHECK(expected_line_orbits(9) == 25);
}

TEST_CASE("verify reports") {
  const auto r7 = verify(gf::Field::make(7), {1, 200});
  for (const auto& c : r7.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK(r7.pass());
  CHECK(r7.line_orbits == 2 * 7 + 7 + 1);
  CHECK(r7.eng_evidence == "theorem-verified");

  const auto j = to_json(r7, false);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["pass"] == true);
  CHECK_FALSE(j.contains("meta"));
  CHECK(to_json(r7)["meta"]["threads"] == 1);
  CHECK(nlohmann::ordered_json::parse(j.dump()) == j);

  // Byte-identical across thread counts.
  const auto r7b = verify(gf::Field::make(7), {4, 200});
  CHECK(to_json(r7b, false).dump() == j.dump());
  CHECK(to_csv(r7b) == to_csv(r7));

  // CSV rows sum to the line count.
  std::istringstream csv(to_csv(r7));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "class,orbit_length,multiplicity,stabilizer_order");
  std::uint64_t total = 0;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string cls, len, mult, stab;
    std::getline(ss, cls, ',');
    std::getline(ss, len, ',');
    std::getline(ss, mult, ',');
    std::getline(ss, stab, ',');
    total += std::stoull(len) * std::stoull(mult);
    CHECK(std::stoull(len) * std::stoull(stab) == action::group_order(7));
  }
  CHECK(total == pg3::line_count(7));
}

TEST_CASE("small q under the matrix-form subgroup") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto r = verify(gf::Field::make(q));
    CAPTURE(q);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("reports do not depend on the modulus") {
  const auto a8 = verify(gf::Field::make(8, {1, 1, 0, 1}));
  const auto b8 = verify(gf::Field::make(8, {1, 0, 1, 1}));
  CHECK(a8.pass());
  CHECK(invariant_view(a8) == invariant_view(b8));
  const auto a9 = verify(gf::Field::make(9, {2, 2, 1}));
  const auto b9 = verify(gf::Field::make(9, {1, 0, 1}));
  CHECK(a9.pass());
  CHECK(invariant_view(a9) == invariant_view(b9));
  CHECK(a9.modulus != b9.modulus);
}
