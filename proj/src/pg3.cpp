#include "tc/pg3.hpp"

#include <algorithm>

namespace tc::pg3 {

namespace {

using gf::kOne;
using gf::kZero;

// Reduced row echelon form of a 2x4 matrix of rank 2.
struct Echelon {
  Vec4 r1, r2;
  int p1, p2;
};

Vec4 scale(const Field& f, const Vec4& v, FieldElement s) {
  return {f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s), f.mul(v[3], s)};
}

// v - s*u
Vec4 axpy(const Field& f, const Vec4& v, FieldElement s, const Vec4& u) {
  Vec4 out;
  for (int i = 0; i < 4; ++i) out[i] = f.sub(v[i], f.mul(s, u[i]));
  return out;
}

std::optional<Echelon> echelon(const Field& f, Vec4 u, Vec4 v) {
  int p1 = 0;
  while (p1 < 4 && u[p1].is_zero() && v[p1].is_zero()) ++p1;
  if (p1 == 4) return std::nullopt;
  if (u[p1].is_zero()) std::swap(u, v);
  u = scale(f, u, f.inv(u[p1]));
  if (!v[p1].is_zero()) v = axpy(f, v, v[p1], u);
  int p2 = p1 + 1;
  while (p2 < 4 && v[p2].is_zero()) ++p2;
  if (p2 == 4) return std::nullopt;
  v = scale(f, v, f.inv(v[p2]));
  if (!u[p2].is_zero()) u = axpy(f, u, u[p2], v);
  return Echelon{u, v, p1, p2};
}

// Basis of the 2-dimensional kernel {x : rows . x = 0}.
std::array<Vec4, 2> kernel(const Field& f, const Echelon& e) {
  std::array<Vec4, 2> out{};
  int n = 0;
  for (int c = 0; c < 4; ++c) {
    if (c == e.p1 || c == e.p2) continue;
    Vec4 x{};
    x[c] = kOne;
    x[e.p1] = f.neg(e.r1[c]);
    x[e.p2] = f.neg(e.r2[c]);
    out[n++] = x;
  }
  return out;
}

std::uint64_t plucker_key(std::uint32_t q, const Plucker& l) {
  std::uint64_t k = 0;
  for (auto x : l) k = k * q + x.idx;
  return k;
}

ProjLine from_echelon(const Field& f, const Echelon& e) {
  if (f.q() > 1625) throw GeometryError("line keys require q <= 1625");
  ProjLine line;
  line.pair = {e.r2, e.r1};
  line.plucker = plucker_of(f, e.r1, e.r2);
  FieldElement lead = kZero;
  for (auto x : line.plucker)
    if (!x.is_zero()) {
      lead = x;
      break;
    }
  const auto s = f.inv(lead);
  for (auto& x : line.plucker) x = f.mul(x, s);
  line.key = plucker_key(f.q(), line.plucker);
  return line;
}

Echelon echelon_of(const ProjLine& l) {
  Echelon e{l.pair[1], l.pair[0], 0, 0};
  while (e.r1[e.p1].is_zero()) ++e.p1;
  while (e.r2[e.p2].is_zero()) ++e.p2;
  return e;
}

std::uint64_t ipow(std::uint64_t q, int n) {
  std::uint64_t r = 1;
  while (n-- > 0) r *= q;
  return r;
}

}  // namespace

std::optional<Vec4> normalize(const Field& f, Vec4 v) {
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_zero()) {
      if (v[i] == kOne) return v;
      return scale(f, v, f.inv(v[i]));
    }
  }
  return std::nullopt;
}

FieldElement dot(const Field& f, const Vec4& x, const Vec4& c) {
  FieldElement s = kZero;
  for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(x[i], c[i]));
  return s;
}

ProjPoint make_point(const Field& f, const Vec4& v) {
  auto n = normalize(f, v);
  if (!n) throw GeometryError("zero vector is not a point");
  return {*n};
}

ProjPlane make_plane(const Field& f, const Vec4& v) {
  auto n = normalize(f, v);
  if (!n) throw GeometryError("zero vector is not a plane");
  return {*n};
}

ProjPoint point_from_ints(const Field& f, std::array<long long, 4> v) {
  return make_point(f, {f.from_int(v[0]), f.from_int(v[1]), f.from_int(v[2]), f.from_int(v[3])});
}

ProjPlane plane_from_ints(const Field& f, std::array<long long, 4> v) {
  return make_plane(f, {f.from_int(v[0]), f.from_int(v[1]), f.from_int(v[2]), f.from_int(v[3])});
}

Plucker plucker_of(const Field& f, const Vec4& u, const Vec4& v) {
  auto m = [&](int i, int j) { return f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])); };
  return {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
}

FieldElement klein_form(const Field& f, const Plucker& l) {
  auto t = f.sub(f.mul(l[0], l[5]), f.mul(l[1], l[4]));
  return f.add(t, f.mul(l[2], l[3]));
}

ProjLine line_from_span(const Field& f, const Vec4& u, const Vec4& v) {
  auto e = echelon(f, u, v);
  if (!e) throw GeometryError("vectors do not span a line");
  return from_echelon(f, *e);
}

ProjLine line_through(const Field& f, const ProjPoint& a, const ProjPoint& b) {
  if (a == b) throw GeometryError("line_through needs two distinct points");
  return line_from_span(f, a.coords, b.coords);
}

ProjLine meet_planes(const Field& f, const ProjPlane& a, const ProjPlane& b) {
  auto e = echelon(f, a.coeffs, b.coeffs);
  if (!e) throw GeometryError("meet_planes needs two distinct planes");
  auto k = kernel(f, *e);
  return line_from_span(f, k[0], k[1]);
}

ProjLine line_from_plucker(const Field& f, const Plucker& l) {
  if (std::all_of(l.begin(), l.end(), [](FieldElement x) { return x.is_zero(); }))
    throw GeometryError("zero Plücker vector");
  if (!klein_form(f, l).is_zero()) throw GeometryError("Plücker vector violates the Klein relation");
  // Rows of the skew matrix L = u^T v - v^T u lie in the span of u and v.
  auto entry = [&](int i, int j) -> FieldElement {
    static constexpr int slot[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    if (i == j) return kZero;
    return i < j ? l[slot[i][j]] : f.neg(l[slot[i][j]]);
  };
  std::vector<Vec4> rows;
  for (int k = 0; k < 4; ++k) {
    Vec4 r{entry(k, 0), entry(k, 1), entry(k, 2), entry(k, 3)};
    if (normalize(f, r)) rows.push_back(r);
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (auto e = echelon(f, rows[i], rows[j])) {
        auto line = from_echelon(f, *e);
        return line;
      }
  throw GeometryError("Plücker vector does not determine a line");
}

std::array<ProjPlane, 2> planes_through(const Field& f, const ProjLine& l) {
  auto k = kernel(f, echelon_of(l));
  return {make_plane(f, k[0]), make_plane(f, k[1])};
}

bool incident(const Field& f, const ProjPoint& p, const ProjPlane& pi) {
  return dot(f, p.coords, pi.coeffs).is_zero();
}

bool point_on_line(const Field& f, const ProjPoint& p, const ProjLine& l) {
  // p lies on l iff p, pair[0], pair[1] are dependent, i.e. all 3x3 minors
  // vanish; equivalently p is orthogonal to both planes through l.
  for (const auto& pi : planes_through(f, l))
    if (!incident(f, p, pi)) return false;
  return true;
}

bool line_in_plane(const Field& f, const ProjLine& l, const ProjPlane& pi) {
  return dot(f, l.pair[0], pi.coeffs).is_zero() && dot(f, l.pair[1], pi.coeffs).is_zero();
}

bool lines_meet(const Field& f, const ProjLine& a, const ProjLine& b) {
  const auto& l = a.plucker;
  const auto& m = b.plucker;
  FieldElement s = gf::kZero;
  s = f.add(s, f.mul(l[0], m[5]));
  s = f.sub(s, f.mul(l[1], m[4]));
  s = f.add(s, f.mul(l[2], m[3]));
  s = f.add(s, f.mul(l[3], m[2]));
  s = f.sub(s, f.mul(l[4], m[1]));
  s = f.add(s, f.mul(l[5], m[0]));
  return s.is_zero();
}

std::vector<ProjPoint> points_on_line(const Field& f, const ProjLine& l) {
  std::vector<ProjPoint> pts;
  pts.reserve(f.q() + 1);
  pts.push_back({l.pair[0]});
  for (std::uint32_t m = 0; m < f.q(); ++m) {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v[i] = f.add(l.pair[1][i], f.mul(FieldElement(m), l.pair[0][i]));
    pts.push_back({v});
  }
  return pts;
}

std::uint64_t point_count(std::uint32_t q) {
  const std::uint64_t Q = q;
  return Q * Q * Q + Q * Q + Q + 1;
}

std::uint64_t line_count(std::uint32_t q) {
  const std::uint64_t Q = q;
  return (Q * Q + 1) * (Q * Q + Q + 1);
}

std::uint64_t point_index(const Field& f, const Vec4& v) {
  const std::uint64_t q = f.q();
  int k = 0;
  while (k < 4 && v[k].is_zero()) ++k;
  if (k == 4 || v[k] != kOne) throw GeometryError("point_index needs a normalized vector");
  // Leading position 3, 2, 1, 0 in that order keeps lexicographic order.
  std::uint64_t offset = 0;
  for (int j = 3; j > k; --j) offset += ipow(q, 3 - j);
  std::uint64_t free = 0;
  for (int i = k + 1; i < 4; ++i) free = free * q + v[i].idx;
  return offset + free;
}

ProjPoint point_from_index(const Field& f, std::uint64_t idx) {
  const std::uint64_t q = f.q();
  for (int k = 3; k >= 0; --k) {
    const std::uint64_t block = ipow(q, 3 - k);
    if (idx < block) {
      Vec4 v{};
      v[k] = kOne;
      for (int i = 3; i > k; --i) {
        v[i] = FieldElement(static_cast<std::uint32_t>(idx % q));
        idx /= q;
      }
      return {v};
    }
    idx -= block;
  }
  throw GeometryError("point index out of range");
}

std::uint64_t line_index(const Field& f, const ProjLine& l) {
  const std::uint64_t q = f.q();
  const auto e = echelon_of(l);
  const auto& a = e.r1;
  const auto& b = e.r2;
  const std::uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q;
  switch (e.p1 * 4 + e.p2) {
    case 0 * 4 + 1:
      return ((a[2].idx * q + a[3].idx) * q + b[2].idx) * q + b[3].idx;
    case 0 * 4 + 2:
      return q4 + (a[1].idx * q + a[3].idx) * q + b[3].idx;
    case 0 * 4 + 3:
      return q4 + q3 + a[1].idx * q + a[2].idx;
    case 1 * 4 + 2:
      return q4 + q3 + q2 + a[3].idx * q + b[3].idx;
    case 1 * 4 + 3:
      return q4 + q3 + 2 * q2 + a[2].idx;
    default:
      return q4 + q3 + 2 * q2 + q;
  }
}

ProjLine line_from_index(const Field& f, std::uint64_t idx) {
  const std::uint64_t q = f.q();
  const std::uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q;
  auto el = [](std::uint64_t v) { return FieldElement(static_cast<std::uint32_t>(v)); };
  Echelon e{};
  if (idx < q4) {
    e = {{kOne, kZero, el(idx / q3), el(idx / q2 % q)}, {kZero, kOne, el(idx / q % q), el(idx % q)}, 0, 1};
  } else if ((idx -= q4) < q3) {
    e = {{kOne, el(idx / q2), kZero, el(idx / q % q)}, {kZero, kZero, kOne, el(idx % q)}, 0, 2};
  } else if ((idx -= q3) < q2) {
    e = {{kOne, el(idx / q), el(idx % q), kZero}, {kZero, kZero, kZero, kOne}, 0, 3};
  } else if ((idx -= q2) < q2) {
    e = {{kZero, kOne, kZero, el(idx / q)}, {kZero, kZero, kOne, el(idx % q)}, 1, 2};
  } else if ((idx -= q2) < q) {
    e = {{kZero, kOne, el(idx), kZero}, {kZero, kZero, kZero, kOne}, 1, 3};
  } else if (idx - q == 0) {
    e = {{kZero, kZero, kOne, kZero}, {kZero, kZero, kZero, kOne}, 2, 3};
  } else {
    throw GeometryError("line index out of range");
  }
  return from_echelon(f, e);
}

std::vector<ProjPoint> all_points(const Field& f) {
  std::vector<ProjPoint> out;
  const auto n = point_count(f.q());
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(point_from_index(f, i));
  return out;
}

std::vector<ProjPlane> all_planes(const Field& f) {
  std::vector<ProjPlane> out;
  for (const auto& p : all_points(f)) out.push_back({p.coords});
  return out;
}

std::vector<ProjLine> all_lines(const Field& f) {
  const auto n = line_count(f.q());
  std::vector<ProjLine> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(line_from_index(f, i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tc::pg3
