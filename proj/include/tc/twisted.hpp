#pragma once

// The twisted cubic C = {P(t) = (t^3, t^2, t, 1)} ∪ {P(∞) = (1,0,0,0)}, its
// tangents and osculating planes, the null polarity, and the classifier that
// sorts every line of PG(3,q) into one of the classes below.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tc/gf.hpp"
#include "tc/pg3.hpp"

namespace tc::twisted {

using gf::Field;
using gf::FieldElement;
using pg3::ProjLine;
using pg3::ProjPlane;
using pg3::ProjPoint;

// RA, IA and EG exist only for q ≢ 0 (mod 3); A and EA only for q ≡ 0 (mod 3).
enum class LineClass : std::uint8_t { RC, T, IC, RA, IA, UG, UnG, EG, EnG, A, EA };

inline constexpr std::array<LineClass, 11> kAllClasses = {
    LineClass::RC, LineClass::T,  LineClass::IC,  LineClass::RA, LineClass::IA, LineClass::UG,
    LineClass::UnG, LineClass::EG, LineClass::EnG, LineClass::A,  LineClass::EA};

std::string_view class_name(LineClass c);
std::optional<LineClass> parse_class(std::string_view name);
bool class_valid(LineClass c, int xi);
std::vector<LineClass> valid_classes(int xi);
// Closed-form class size.
std::uint64_t expected_class_size(LineClass c, std::uint32_t q);

// Parameter of a cubic point: t in [0, q) is the field element with that
// encoding, t == q stands for ∞.
using Param = std::uint32_t;

// Sign and position map from this library's Plücker order to the chord
// coordinate vector (a2², a1a2, a1²−a2, a2, −a1, 1): hirschfeld[i] =
// sign[i] * plucker[perm[i]].
struct PluckerBridge {
  std::array<int, 6> perm;
  std::array<int, 6> sign;
};
inline constexpr PluckerBridge kHirschfeldBridge{{0, 1, 2, 3, 4, 5}, {1, 1, 1, 1, -1, 1}};

pg3::Plucker to_hirschfeld(const Field& f, const pg3::Plucker& l, const PluckerBridge& b = kHirschfeldBridge);
pg3::Plucker from_hirschfeld(const Field& f, const pg3::Plucker& h, const PluckerBridge& b = kHirschfeldBridge);

// Zeros in PG(1,q) of a binary cubic form c0 t^3 + c1 t^2 u + c2 t u^2 + c3 u^3
// common to both forms, as ascending parameters. Identically zero forms vanish
// everywhere.
std::vector<Param> common_cubic_zeros(const Field& f, const std::array<FieldElement, 4>& a,
                                      const std::array<FieldElement, 4>& b);

class CubicModel {
 public:
  explicit CubicModel(gf::FieldPtr field);

  const Field& field() const { return *field_; }
  const gf::FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->q(); }
  int xi() const { return field_->xi(); }

  const std::vector<ProjPoint>& points() const { return points_; }
  const std::vector<ProjLine>& tangents() const { return tangents_; }
  const std::vector<ProjPlane>& osc_planes() const { return osc_planes_; }
  const std::optional<ProjLine>& axis() const { return axis_; }

  const ProjPoint& point(Param t) const { return points_.at(t); }
  const ProjLine& tangent(Param t) const { return tangents_.at(t); }
  const ProjPlane& osc_plane(Param t) const { return osc_planes_.at(t); }

  std::optional<Param> param_of(const ProjPoint& p) const;
  bool is_gamma_plane(const ProjPlane& pi) const;
  bool is_tangent(const ProjLine& l) const { return tangent_set_.contains(l.key); }
  bool is_real_chord(const ProjLine& l) const { return real_chord_set_.contains(l.key); }

  // Parameters of the cubic points on l (at most two).
  std::vector<Param> cubic_points_on(const ProjLine& l) const;
  // Parameters t with l contained in the osculating plane at P(t).
  std::vector<Param> gamma_planes_containing(const ProjLine& l) const;
  // Parameters of the cubic points in the plane.
  std::vector<Param> cubic_points_in(const ProjPlane& pi) const;

  // The chord with parameter sum a1 and product a2.
  ProjLine chord(FieldElement a1, FieldElement a2) const;
  // Recovers (a1, a2) when l has the chord coordinate form.
  std::optional<std::pair<FieldElement, FieldElement>> chord_params(const ProjLine& l) const;
  bool is_imaginary_chord(const ProjLine& l) const;

  // Null polarity; throws std::domain_error in characteristic 3.
  ProjPlane polar(const ProjPoint& p) const;
  ProjLine polar(const ProjLine& l) const;

  LineClass classify(const ProjLine& l) const;

 private:
  gf::FieldPtr field_;
  std::vector<ProjPoint> points_;
  std::vector<ProjLine> tangents_;
  std::vector<ProjPlane> osc_planes_;
  std::optional<ProjLine> axis_;
  std::vector<std::int32_t> param_by_point_;
  std::unordered_set<std::uint64_t> gamma_plane_set_;
  std::unordered_set<std::uint64_t> tangent_set_;
  std::unordered_set<std::uint64_t> real_chord_set_;
};

}  // namespace tc::twisted
