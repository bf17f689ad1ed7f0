#pragma once

// G_q ≅ PGL(2,q) acting on PG(3,q) through the 4x4 matrices
//
//   [ a^3     a^2 c         a c^2         c^3    ]
//   [ 3a^2 b  a^2 d + 2abc  b c^2 + 2acd  3c^2 d ]
//   [ 3a b^2  b^2 c + 2abd  a d^2 + 2bcd  3c d^2 ]
//   [ b^3     b^2 d         b d^2         d^3    ]
//
// Points are row vectors acted on by x -> xM, planes are column vectors acted
// on by c -> M^{-1} c. Composition g·h means "apply g, then h", so
// lift(g·h) ∝ lift(g) lift(h).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "tc/gf.hpp"
#include "tc/pg3.hpp"
#include "tc/twisted.hpp"

namespace tc::action {

using gf::Field;
using gf::FieldElement;
using pg3::ProjLine;
using pg3::ProjPlane;
using pg3::ProjPoint;
using Mat4 = std::array<std::array<FieldElement, 4>, 4>;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (a, b, c, d) modulo scalars, first nonzero entry 1, ad - bc != 0.
struct GroupElement {
  std::array<FieldElement, 4> abcd{};
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

GroupElement make_element(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d);
GroupElement element_from_ints(const Field& f, long long a, long long b, long long c, long long d);
GroupElement identity();
GroupElement compose(const Field& f, const GroupElement& g, const GroupElement& h);
GroupElement inverse(const Field& f, const GroupElement& g);

Mat4 lift(const Field& f, const GroupElement& g);
Mat4 lift_tuple(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d);
Mat4 mat_mul(const Field& f, const Mat4& x, const Mat4& y);
Mat4 mat_inverse(const Field& f, const Mat4& m);
Mat4 mat_scale(const Field& f, const Mat4& m, FieldElement s);
// Scales so the first nonzero entry is 1.
Mat4 mat_normalize(const Field& f, const Mat4& m);
FieldElement mat_det(const Field& f, const Mat4& m);
Mat4 identity_matrix();

// Closed-form inverse of lift(a,b,c,d) as printed with A = B = (ad - bc)^3
// and no sign pattern on the entries.
Mat4 printed_inverse(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d);

// A group element with its matrix and inverse matrix precomputed.
struct Lifted {
  GroupElement g;
  Mat4 m;
  Mat4 inv;
};
Lifted make_lifted(const Field& f, const GroupElement& g);

pg3::Vec4 row_times(const Field& f, const pg3::Vec4& x, const Mat4& m);
pg3::Vec4 times_col(const Field& f, const Mat4& m, const pg3::Vec4& c);

ProjPoint act_point(const Field& f, const Lifted& g, const ProjPoint& p);
ProjPlane act_plane(const Field& f, const Lifted& g, const ProjPlane& pi);
ProjLine act_line(const Field& f, const Lifted& g, const ProjLine& l);
// True iff g maps l onto itself.
bool fixes_line(const Field& f, const Mat4& m, const ProjLine& l, const std::array<ProjPlane, 2>& planes);

// t -> t+1, t -> w t (w primitive), t -> 1/t.
std::vector<GroupElement> generators(const Field& f);
// Closure of gens under composition.
std::vector<GroupElement> closure(const Field& f, const std::vector<GroupElement>& gens);
// All q^3 - q elements by direct enumeration, ascending.
std::vector<GroupElement> all_elements(const Field& f);
std::uint64_t group_order(std::uint32_t q);

class Group {
 public:
  explicit Group(gf::FieldPtr field);

  const Field& field() const { return *field_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<Lifted>& lifted_generators() const { return gens_; }
  const std::vector<Mat4>& matrices() const { return matrices_; }

  // The element whose matrix is proportional to m, if any.
  std::optional<GroupElement> element_from_matrix(const Mat4& m) const;

 private:
  gf::FieldPtr field_;
  std::vector<GroupElement> elements_;
  std::vector<Mat4> matrices_;
  std::vector<Lifted> gens_;
  std::map<Mat4, std::uint32_t> by_matrix_;
};

std::vector<ProjLine> orbit_of(const Field& f, const std::vector<Lifted>& gens, const ProjLine& l);

struct OrbitRecord {
  twisted::LineClass cls{};
  ProjLine representative;  // minimal key in the orbit
  std::uint64_t size = 0;
  std::uint64_t stabilizer_order = 0;
};

// Orbits of a set of lines closed under the group, sorted by (size, key).
// Throws GroupError if the set is not closed.
std::vector<OrbitRecord> orbit_partition(const twisted::CubicModel& model, const Group& group,
                                         const std::vector<ProjLine>& lines);

// Exhaustive: every element with act_line(g, l) == l.
std::vector<GroupElement> stabilizer(const Group& group, const ProjLine& l, unsigned threads = 1);
std::uint64_t stabilizer_order(const Group& group, const ProjLine& l, unsigned threads = 1);

// Orbit of every line of PG(3,q) by dense line index.
struct LineOrbits {
  std::vector<std::uint32_t> orbit_of_line;  // dense line index -> orbit id
  std::vector<std::uint64_t> seed;           // first dense index reached
  std::vector<std::uint64_t> size;
  std::vector<std::uint64_t> rep;            // dense index of the minimal-key line
};
LineOrbits partition_all_lines(const Field& f, const std::vector<Lifted>& gens);

enum class StabFamilyId { TANGENT, CHORD_2BRANCH, IC_ODD, IC_EVEN, UG_ODD, UG_EVEN_L1, UG_EVEN_L2, UNG_ODD, EA_23 };
inline constexpr std::array<StabFamilyId, 9> kAllFamilies = {
    StabFamilyId::TANGENT, StabFamilyId::CHORD_2BRANCH, StabFamilyId::IC_ODD,
    StabFamilyId::IC_EVEN, StabFamilyId::UG_ODD,        StabFamilyId::UG_EVEN_L1,
    StabFamilyId::UG_EVEN_L2, StabFamilyId::UNG_ODD,    StabFamilyId::EA_23};

std::string_view family_name(StabFamilyId id);
bool family_applicable(StabFamilyId id, const Field& f);
// Instantiates the parametric matrix family and returns the distinct group
// elements, ascending. Throws GroupError when the family does not apply or a
// matrix falls outside the group.
std::vector<GroupElement> stab_family(StabFamilyId id, const Group& group);

struct PolarityReport {
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};
// (P polar) g == (P g) polar on `samples` random (P, g) pairs.
PolarityReport polarity_commutes_check(const twisted::CubicModel& model, const Group& group, std::size_t samples,
                                       std::uint64_t seed = 1);

}  // namespace tc::action
