#include "tc/twisted.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tc::twisted {

namespace {

using gf::kOne;
using gf::kZero;
using Poly = std::vector<FieldElement>;  // low to high, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_mod(const Field& f, Poly a, const Poly& b) {
  const auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FieldElement eval(const Field& f, const Poly& p, FieldElement t) {
  FieldElement acc = kZero;
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, t), p[i]);
  return acc;
}

// c0 t^3 + c1 t^2 + c2 t + c3 as a low-to-high polynomial.
Poly dehomogenize(const std::array<FieldElement, 4>& c) {
  Poly p{c[3], c[2], c[1], c[0]};
  trim(p);
  return p;
}

bool is_zero_form(const std::array<FieldElement, 4>& c) {
  return std::all_of(c.begin(), c.end(), [](FieldElement x) { return x.is_zero(); });
}

std::vector<Param> affine_roots_brute(const Field& f, const Poly& p) {
  std::vector<Param> out;
  for (std::uint32_t t = 0; t < f.q(); ++t)
    if (eval(f, p, FieldElement(t)).is_zero()) out.push_back(t);
  return out;
}

std::vector<Param> zeros_of_form(const Field& f, const std::array<FieldElement, 4>& c) {
  auto out = affine_roots_brute(f, dehomogenize(c));
  if (c[0].is_zero()) out.push_back(f.q());
  return out;
}

}  // namespace

std::string_view class_name(LineClass c) {
  switch (c) {
    case LineClass::RC: return "RC";
    case LineClass::T: return "T";
    case LineClass::IC: return "IC";
    case LineClass::RA: return "RA";
    case LineClass::IA: return "IA";
    case LineClass::UG: return "UG";
    case LineClass::UnG: return "UnG";
    case LineClass::EG: return "EG";
    case LineClass::EnG: return "EnG";
    case LineClass::A: return "A";
    case LineClass::EA: return "EA";
  }
  return "?";
}

std::optional<LineClass> parse_class(std::string_view name) {
  for (auto c : kAllClasses)
    if (class_name(c) == name) return c;
  return std::nullopt;
}

bool class_valid(LineClass c, int xi) {
  switch (c) {
    case LineClass::RA:
    case LineClass::IA:
    case LineClass::EG:
      return xi != 0;
    case LineClass::A:
    case LineClass::EA:
      return xi == 0;
    default:
      return true;
  }
}

std::vector<LineClass> valid_classes(int xi) {
  std::vector<LineClass> out;
  for (auto c : kAllClasses)
    if (class_valid(c, xi)) out.push_back(c);
  return out;
}

std::uint64_t expected_class_size(LineClass c, std::uint32_t q32) {
  const std::uint64_t q = q32;
  switch (c) {
    case LineClass::RC:
    case LineClass::RA: return (q * q + q) / 2;
    case LineClass::T: return q + 1;
    case LineClass::IC:
    case LineClass::IA: return (q * q - q) / 2;
    case LineClass::UG: return q * q + q;
    case LineClass::UnG:
    case LineClass::EG: return q * q * q - q;
    case LineClass::EnG: return (q * q - q) * (q * q - 1);
    case LineClass::A: return 1;
    case LineClass::EA: return (q + 1) * (q * q - 1);
  }
  return 0;
}

pg3::Plucker to_hirschfeld(const Field& f, const pg3::Plucker& l, const PluckerBridge& b) {
  pg3::Plucker h;
  for (int i = 0; i < 6; ++i) {
    const auto v = l[b.perm[i]];
    h[i] = b.sign[i] < 0 ? f.neg(v) : v;
  }
  return h;
}

pg3::Plucker from_hirschfeld(const Field& f, const pg3::Plucker& h, const PluckerBridge& b) {
  pg3::Plucker l;
  for (int i = 0; i < 6; ++i) l[b.perm[i]] = b.sign[i] < 0 ? f.neg(h[i]) : h[i];
  return l;
}

std::vector<Param> common_cubic_zeros(const Field& f, const std::array<FieldElement, 4>& a,
                                      const std::array<FieldElement, 4>& b) {
  const bool za = is_zero_form(a), zb = is_zero_form(b);
  if (za && zb) {
    std::vector<Param> all(f.q() + 1);
    for (Param t = 0; t <= f.q(); ++t) all[t] = t;
    return all;
  }
  if (za) return zeros_of_form(f, b);
  if (zb) return zeros_of_form(f, a);

  std::vector<Param> out;
  auto g = poly_gcd(f, dehomogenize(a), dehomogenize(b));
  switch (g.size()) {
    case 0:  // both forms are multiples of u^3
    case 1:
      break;
    case 2:
      out.push_back(f.div(f.neg(g[0]), g[1]).idx);
      break;
    case 3: {
      const auto s = f.inv(g[2]);
      // monic x^2 + b x + c == x^2 - a1 x + a2
      for (auto r : f.quadratic_roots(f.neg(f.mul(g[1], s)), f.mul(g[0], s))) out.push_back(r.idx);
      break;
    }
    default:
      out = affine_roots_brute(f, g);
  }
  if (a[0].is_zero() && b[0].is_zero()) out.push_back(f.q());
  return out;
}

CubicModel::CubicModel(gf::FieldPtr field) : field_(std::move(field)) {
  const auto& f = *field_;
  const std::uint32_t q = f.q();
  const auto three = f.from_int(3);

  points_.reserve(q + 1);
  for (std::uint32_t t = 0; t < q; ++t) {
    const FieldElement x(t);
    points_.push_back(pg3::make_point(f, {f.mul(f.square(x), x), f.square(x), x, kOne}));
  }
  points_.push_back({{kOne, kZero, kZero, kZero}});

  param_by_point_.assign(pg3::point_count(q), -1);
  for (Param t = 0; t <= q; ++t) param_by_point_[pg3::point_index(f, points_[t].coords)] = static_cast<std::int32_t>(t);

  // The tangent at a finite P(t) contains the direction Q_t = (3t^2, 2t, 1, 0);
  // T_∞ is x2 = x3 = 0.
  for (std::uint32_t t = 0; t < q; ++t) {
    const FieldElement x(t);
    const pg3::Vec4 dir{f.mul(three, f.square(x)), f.mul(f.from_int(2), x), kOne, kZero};
    tangents_.push_back(pg3::line_from_span(f, points_[t].coords, dir));
  }
  tangents_.push_back(pg3::meet_planes(f, pg3::plane_from_ints(f, {0, 0, 1, 0}), pg3::plane_from_ints(f, {0, 0, 0, 1})));

  for (std::uint32_t t = 0; t < q; ++t) {
    const FieldElement x(t);
    const auto x2 = f.square(x);
    osc_planes_.push_back(pg3::make_plane(f, {kOne, f.neg(f.mul(three, x)), f.mul(three, x2), f.neg(f.mul(x2, x))}));
  }
  osc_planes_.push_back(pg3::plane_from_ints(f, {0, 0, 0, 1}));

  for (const auto& pi : osc_planes_) gamma_plane_set_.insert(pg3::point_index(f, pi.coeffs));
  for (const auto& l : tangents_) tangent_set_.insert(l.key);
  for (Param s = 0; s <= q; ++s)
    for (Param t = s + 1; t <= q; ++t) real_chord_set_.insert(pg3::line_through(f, points_[s], points_[t]).key);

  if (f.xi() == 0) {
    axis_ = pg3::meet_planes(f, osc_planes_[0], osc_planes_[q]);
    for (const auto& pi : osc_planes_)
      if (!pg3::line_in_plane(f, *axis_, pi))
        throw std::logic_error("osculating planes do not share a common axis");
  }
}

std::optional<Param> CubicModel::param_of(const ProjPoint& p) const {
  const auto i = param_by_point_[pg3::point_index(*field_, p.coords)];
  if (i < 0) return std::nullopt;
  return static_cast<Param>(i);
}

bool CubicModel::is_gamma_plane(const ProjPlane& pi) const {
  return gamma_plane_set_.contains(pg3::point_index(*field_, pi.coeffs));
}

std::vector<Param> CubicModel::cubic_points_in(const ProjPlane& pi) const {
  return zeros_of_form(*field_, pi.coeffs);
}

std::vector<Param> CubicModel::cubic_points_on(const ProjLine& l) const {
  const auto planes = pg3::planes_through(*field_, l);
  return common_cubic_zeros(*field_, planes[0].coeffs, planes[1].coeffs);
}

std::vector<Param> CubicModel::gamma_planes_containing(const ProjLine& l) const {
  const auto& f = *field_;
  const auto three = f.from_int(3);
  // x . π_osc(t:u) = -x3 t^3 + 3 x2 t^2 u - 3 x1 t u^2 + x0 u^3
  auto form = [&](const pg3::Vec4& x) {
    return std::array<FieldElement, 4>{f.neg(x[3]), f.mul(three, x[2]), f.neg(f.mul(three, x[1])), x[0]};
  };
  return common_cubic_zeros(f, form(l.pair[0]), form(l.pair[1]));
}

ProjLine CubicModel::chord(FieldElement a1, FieldElement a2) const {
  const auto& f = *field_;
  const pg3::Plucker h{f.square(a2), f.mul(a1, a2), f.sub(f.square(a1), a2), a2, f.neg(a1), kOne};
  return pg3::line_from_plucker(f, from_hirschfeld(f, h));
}

std::optional<std::pair<FieldElement, FieldElement>> CubicModel::chord_params(const ProjLine& l) const {
  const auto& f = *field_;
  auto h = to_hirschfeld(f, l.plucker);
  if (h[5].is_zero()) return std::nullopt;
  const auto s = f.inv(h[5]);
  for (auto& x : h) x = f.mul(x, s);
  const auto a2 = h[3];
  const auto a1 = f.neg(h[4]);
  if (h[0] != f.square(a2) || h[1] != f.mul(a1, a2) || h[2] != f.sub(f.square(a1), a2)) return std::nullopt;
  return std::make_pair(a1, a2);
}

bool CubicModel::is_imaginary_chord(const ProjLine& l) const {
  const auto ab = chord_params(l);
  return ab && field_->quadratic_root_count(ab->first, ab->second) == 0;
}

ProjPlane CubicModel::polar(const ProjPoint& p) const {
  const auto& f = *field_;
  if (f.xi() == 0) throw std::domain_error("the null polarity is undefined in characteristic 3");
  const auto three = f.from_int(3);
  const auto& x = p.coords;
  return pg3::make_plane(f, {x[3], f.neg(f.mul(three, x[2])), f.mul(three, x[1]), f.neg(x[0])});
}

ProjLine CubicModel::polar(const ProjLine& l) const {
  return pg3::meet_planes(*field_, polar(l.first()), polar(l.second()));
}

LineClass CubicModel::classify(const ProjLine& l) const {
  const auto on_cubic = cubic_points_on(l);
  if (on_cubic.size() >= 2) return LineClass::RC;
  if (on_cubic.size() == 1) {
    const Param t = on_cubic.front();
    if (tangents_[t] == l) return LineClass::T;
    if (pg3::line_in_plane(*field_, l, osc_planes_[t])) return LineClass::UG;
    return LineClass::UnG;
  }
  if (is_imaginary_chord(l)) return LineClass::IC;
  if (xi() != 0) {
    const auto image = polar(l);
    if (cubic_points_on(image).size() == 2) return LineClass::RA;
    if (is_imaginary_chord(image)) return LineClass::IA;
    if (!gamma_planes_containing(l).empty()) return LineClass::EG;
    return LineClass::EnG;
  }
  if (l == *axis_) return LineClass::A;
  if (pg3::lines_meet(*field_, l, *axis_)) return LineClass::EA;
  return LineClass::EnG;
}

}  // namespace tc::twisted
