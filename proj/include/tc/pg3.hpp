#pragma once

// Points, planes and lines of PG(3,q).
//
// Points and planes are normalized homogeneous 4-vectors (first nonzero entry
// 1). A line is stored in canonical form: its normalized Plücker vector
// (l01, l02, l03, l12, l13, l23) together with the two lexicographically
// smallest points on it, which are exactly the rows of the reduced row echelon
// form of any spanning pair (smaller row first).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tc/gf.hpp"

namespace tc::pg3 {

using gf::Field;
using gf::FieldElement;
using Vec4 = std::array<FieldElement, 4>;
using Plucker = std::array<FieldElement, 6>;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProjPoint {
  Vec4 coords{};
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

struct ProjPlane {
  Vec4 coeffs{};
  friend bool operator==(const ProjPlane&, const ProjPlane&) = default;
  friend auto operator<=>(const ProjPlane&, const ProjPlane&) = default;
};

struct ProjLine {
  Plucker plucker{};
  std::array<Vec4, 2> pair{};  // pair[0] < pair[1]
  std::uint64_t key = 0;       // lexicographic Plücker order as an integer

  ProjPoint first() const { return {pair[0]}; }
  ProjPoint second() const { return {pair[1]}; }
  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.key == b.key; }
  friend auto operator<=>(const ProjLine& a, const ProjLine& b) { return a.key <=> b.key; }
};

// Scales v so its first nonzero entry is 1; nullopt for the zero vector.
std::optional<Vec4> normalize(const Field& f, Vec4 v);
FieldElement dot(const Field& f, const Vec4& x, const Vec4& c);

ProjPoint make_point(const Field& f, const Vec4& v);
ProjPlane make_plane(const Field& f, const Vec4& v);
// Integer coordinates reduced into GF(p) and normalized.
ProjPoint point_from_ints(const Field& f, std::array<long long, 4> v);
ProjPlane plane_from_ints(const Field& f, std::array<long long, 4> v);

// Canonical line spanned by two linearly independent vectors.
ProjLine line_from_span(const Field& f, const Vec4& u, const Vec4& v);
ProjLine line_through(const Field& f, const ProjPoint& a, const ProjPoint& b);
ProjLine meet_planes(const Field& f, const ProjPlane& a, const ProjPlane& b);
// Rebuilds a line from any nonzero scalar multiple of its Plücker vector.
ProjLine line_from_plucker(const Field& f, const Plucker& l);

// Two planes whose intersection is the line.
std::array<ProjPlane, 2> planes_through(const Field& f, const ProjLine& l);

bool incident(const Field& f, const ProjPoint& p, const ProjPlane& pi);
bool point_on_line(const Field& f, const ProjPoint& p, const ProjLine& l);
bool line_in_plane(const Field& f, const ProjLine& l, const ProjPlane& pi);
bool lines_meet(const Field& f, const ProjLine& a, const ProjLine& b);

// l01 l23 - l02 l13 + l03 l12.
FieldElement klein_form(const Field& f, const Plucker& l);
Plucker plucker_of(const Field& f, const Vec4& u, const Vec4& v);

std::vector<ProjPoint> points_on_line(const Field& f, const ProjLine& l);

std::uint64_t point_count(std::uint32_t q);
std::uint64_t line_count(std::uint32_t q);

// Dense indices: points in lexicographic coordinate order, lines by reduced
// echelon pattern. Both are bijections onto [0, count).
std::uint64_t point_index(const Field& f, const Vec4& normalized);
ProjPoint point_from_index(const Field& f, std::uint64_t idx);
std::uint64_t line_index(const Field& f, const ProjLine& l);
ProjLine line_from_index(const Field& f, std::uint64_t idx);

std::vector<ProjPoint> all_points(const Field& f);
std::vector<ProjPlane> all_planes(const Field& f);
// Every line exactly once, ascending by Plücker key. Materializes the whole
// line set; large-q callers should iterate line_from_index instead.
std::vector<ProjLine> all_lines(const Field& f);

}  // namespace tc::pg3
