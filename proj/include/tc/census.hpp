#pragma once

// Whole-space census for one field: class sizes, line orbits with stabilizer
// orders, plane classes, and the comparison of all of it against the closed
// forms. Reports serialize to JSON (schema_version below) and CSV.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/action.hpp"
#include "tc/twisted.hpp"

namespace tc::census {

using twisted::LineClass;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::uint32_t kMaxQ = 64;
inline constexpr std::uint32_t kLongRunFrom = 37;

class UnsupportedQ : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws UnsupportedQ unless 2 <= q <= kMaxQ is a prime power and, for
// q >= kLongRunFrom, long_run is set.
void require_supported(std::uint32_t q, bool long_run);

using ClassCounts = std::map<LineClass, std::uint64_t>;
ClassCounts classify_all(const twisted::CubicModel& model, unsigned threads = 1);

enum class PlaneType { Gamma, C2, C3, C1bar, C0 };
inline constexpr std::array<PlaneType, 5> kAllPlaneTypes = {PlaneType::Gamma, PlaneType::C2, PlaneType::C3,
                                                            PlaneType::C1bar, PlaneType::C0};
std::string_view plane_type_name(PlaneType t);
std::uint64_t expected_plane_count(PlaneType t, std::uint32_t q);
std::map<PlaneType, std::uint64_t> classify_planes(const twisted::CubicModel& model);

// Multiset of orbit lengths, ascending by length, no zero multiplicities.
struct SpectrumEntry {
  std::uint64_t length = 0;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};
using Spectrum = std::vector<SpectrumEntry>;

Spectrum make_spectrum(const std::vector<std::uint64_t>& lengths);
Spectrum spectrum_of(const std::vector<action::OrbitRecord>& orbits);
std::uint64_t spectrum_total(const Spectrum& s);
std::uint64_t spectrum_orbits(const Spectrum& s);

// Predicted orbit lengths of a class. For EnG this is the census pattern
// (proved for the tested q, conjectured otherwise).
Spectrum expected_spectrum(LineClass c, const gf::Field& f);
std::uint64_t expected_line_orbits(std::uint32_t q);
std::uint64_t expected_eng_orbits(const gf::Field& f);

// "theorem-verified" for q in the tested sets, "small-q-subgroup" for
// q = 2, 3, 4, "conjecture-consistent" otherwise.
std::string eng_evidence(std::uint32_t q);

struct NamedRep {
  std::string name;
  LineClass cls;
  pg3::ProjLine line;
  std::uint64_t stabilizer_order;
  std::optional<action::StabFamilyId> family;
};
// Representatives with known stabilizers, q >= 5.
std::vector<NamedRep> named_representatives(const twisted::CubicModel& model);

struct ClassReport {
  LineClass cls{};
  std::uint64_t expected_size = 0;
  std::uint64_t actual_size = 0;
  std::vector<action::OrbitRecord> orbits;  // sorted by (size, key)
};

struct OrbitCensus {
  std::vector<ClassReport> classes;  // valid classes only
  action::LineOrbits partition;
  std::vector<std::uint8_t> class_of_line;  // by dense line index
  std::vector<std::uint8_t> class_of_orbit;
  bool class_invariant = true;
};
// Classifies every line, partitions all lines into orbits and, when
// exhaustive_stabilizers is set, brute-forces the stabilizer of each
// representative; otherwise stabilizer orders are (q^3 - q) / size.
OrbitCensus orbit_census(const twisted::CubicModel& model, const action::Group& group, unsigned threads = 1,
                         bool exhaustive_stabilizers = true);

struct Check {
  std::string name;
  nlohmann::ordered_json expected;
  nlohmann::ordered_json actual;
  bool pass = false;
};

struct CensusReport {
  std::uint32_t q = 0, p = 0, e = 0;
  int xi = 0;
  std::vector<int> modulus;
  std::vector<ClassReport> classes;
  Spectrum eng_spectrum, eng_expected;
  std::string eng_evidence;
  std::map<PlaneType, std::uint64_t> planes;
  std::uint64_t line_orbits = 0;
  std::vector<Check> checks;
  double runtime_seconds = 0;
  unsigned threads = 1;

  bool pass() const;
  const ClassReport* find(LineClass c) const;
};

struct CensusOptions {
  unsigned threads = 1;
  std::size_t polarity_samples = 200;
};

CensusReport verify(const gf::FieldPtr& field, const CensusOptions& opts = {});

nlohmann::ordered_json to_json(const CensusReport& r, bool with_meta = true);
// Rows of (class, orbit_length, multiplicity, stabilizer_order).
std::string to_csv(const CensusReport& r);
// The parts of a report that do not depend on the choice of modulus.
nlohmann::ordered_json invariant_view(const CensusReport& r);

nlohmann::ordered_json line_json(const pg3::ProjLine& l);
nlohmann::ordered_json element_json(const action::GroupElement& g);

}  // namespace tc::census
