#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tc/twisted.hpp"

using namespace tc;
using namespace tc::twisted;
using gf::Field;
using gf::FieldElement;
using gf::kOne;
using gf::kZero;
using pg3::Plucker;
using pg3::Vec4;

namespace {

// GF(q) inside GF(q^2), for building imaginary chords and axes directly.
struct Extension {
  gf::FieldPtr base, ext;
  std::vector<FieldElement> emb;        // base idx -> ext element
  std::map<std::uint16_t, FieldElement> back;

  explicit Extension(gf::FieldPtr f) : base(std::move(f)), ext(Field::make(base->q() * base->q())) {
    const auto& m = base->modulus();
    auto eval = [&](FieldElement x) {
      FieldElement r = kZero;
      for (auto it = m.rbegin(); it != m.rend(); ++it) r = ext->add(ext->mul(r, x), ext->from_int(*it));
      return r;
    };
    FieldElement beta = kZero;
    bool found = false;
    for (std::uint32_t x = 0; x < ext->q() && !found; ++x)
      if (eval(FieldElement(x)).is_zero()) {
        beta = FieldElement(x);
        found = true;
      }
    REQUIRE(found);
    for (std::uint32_t x = 0; x < base->q(); ++x) {
      const auto c = base->coefficients(FieldElement(x));
      FieldElement r = kZero, pw = kOne;
      for (int ci : c) {
        r = ext->add(r, ext->mul(ext->from_int(ci), pw));
        pw = ext->mul(pw, beta);
      }
      emb.push_back(r);
      back[r.idx] = FieldElement(x);
    }
  }

  Plucker descend(Plucker v) const {
    std::size_t k = 0;
    while (v[k].is_zero()) ++k;
    const auto s = ext->inv(v[k]);
    Plucker out;
    for (int i = 0; i < 6; ++i) {
      const auto it = back.find(ext->mul(v[i], s).idx);
      REQUIRE(it != back.end());
      out[i] = it->second;
    }
    return out;
  }
};

Plucker dual_to_plucker(const Field& f, const Vec4& c, const Vec4& d) {
  auto s = [&](int k, int l) { return f.sub(f.mul(c[k], d[l]), f.mul(c[l], d[k])); };
  return {s(2, 3), f.neg(s(1, 3)), s(1, 2), s(0, 3), f.neg(s(0, 2)), s(0, 1)};
}

Vec4 osc(const Field& f, FieldElement t) {
  const auto three = f.from_int(3);
  return {kOne, f.neg(f.mul(three, t)), f.mul(three, f.square(t)), f.neg(f.mul(f.square(t), t))};
}

// Classification from first principles: point sets, plane scans and the
// quadratic extension.
class BruteClassifier {
 public:
  explicit BruteClassifier(gf::FieldPtr fp) : f_(std::move(fp)) {
    const auto& f = *f_;
    const std::uint32_t q = f.q();
    planes_ = pg3::all_planes(f);
    for (std::uint32_t t = 0; t < q; ++t) {
      const FieldElement x(t);
      cubic_[pg3::make_point(f, {f.mul(f.square(x), x), f.square(x), x, kOne})] = t;
      gamma_.push_back(pg3::make_plane(f, osc(f, x)));
    }
    cubic_[pg3::point_from_ints(f, {1, 0, 0, 0})] = q;
    gamma_.push_back(pg3::plane_from_ints(f, {0, 0, 0, 1}));

    Extension e(f_);
    const auto& E = *e.ext;
    for (std::uint32_t x = 0; x < E.q(); ++x) {
      const FieldElement t(x);
      if (e.back.contains(t.idx)) continue;
      const auto tq = E.pow(t, q);
      const Vec4 u{E.mul(E.square(t), t), E.square(t), t, kOne}, v{E.mul(E.square(tq), tq), E.square(tq), tq, kOne};
      ic_.insert(pg3::line_from_plucker(f, e.descend(pg3::plucker_of(E, u, v))).key);
      if (f.xi() != 0) ia_.insert(pg3::line_from_plucker(f, e.descend(dual_to_plucker(E, osc(E, t), osc(E, tq)))).key);
    }
    if (f.xi() != 0)
      for (std::size_t s = 0; s < gamma_.size(); ++s)
        for (std::size_t t = s + 1; t < gamma_.size(); ++t) ra_.insert(pg3::meet_planes(f, gamma_[s], gamma_[t]).key);
    if (f.xi() == 0) axis_ = pg3::meet_planes(f, gamma_[0], gamma_[q]);
  }

  std::size_t ic_count() const { return ic_.size(); }

  LineClass classify(const pg3::ProjLine& l) const {
    const auto& f = *f_;
    const auto pts = pg3::points_on_line(f, l);
    std::vector<std::uint32_t> on;
    for (const auto& p : pts)
      if (auto it = cubic_.find(p); it != cubic_.end()) on.push_back(it->second);
    bool in_gamma = false;
    for (const auto& pi : gamma_) in_gamma = in_gamma || pg3::line_in_plane(f, l, pi);

    if (on.size() == 2) return LineClass::RC;
    if (on.size() == 1) {
      if (tangent_at(l, on[0])) return LineClass::T;
      return in_gamma ? LineClass::UG : LineClass::UnG;
    }
    if (on.size() > 2) FAIL("line meets the cubic in more than two points");
    if (ic_.contains(l.key)) return LineClass::IC;
    if (f.xi() != 0) {
      if (ra_.contains(l.key)) return LineClass::RA;
      if (ia_.contains(l.key)) return LineClass::IA;
      return in_gamma ? LineClass::EG : LineClass::EnG;
    }
    if (l == *axis_) return LineClass::A;
    for (const auto& p : pg3::points_on_line(f, *axis_))
      if (std::find(pts.begin(), pts.end(), p) != pts.end()) return LineClass::EA;
    return LineClass::EnG;
  }

 private:
  // Every plane through l meets the cubic at P(t) with multiplicity >= 2.
  bool tangent_at(const pg3::ProjLine& l, std::uint32_t t) const {
    const auto& f = *f_;
    for (const auto& pi : planes_) {
      if (!pg3::line_in_plane(f, l, pi)) continue;
      const auto& c = pi.coeffs;
      if (t == f.q()) {
        if (!c[0].is_zero() || !c[1].is_zero()) return false;
        continue;
      }
      const FieldElement x(t);
      const auto d = f.add(f.add(f.mul(f.from_int(3), f.mul(c[0], f.square(x))), f.mul(f.from_int(2), f.mul(c[1], x))),
                           c[2]);
      if (!d.is_zero()) return false;
    }
    return true;
  }

  gf::FieldPtr f_;
  std::vector<pg3::ProjPlane> planes_;
  std::map<pg3::ProjPoint, std::uint32_t> cubic_;
  std::vector<pg3::ProjPlane> gamma_;
  std::set<std::uint64_t> ic_, ia_, ra_;
  std::optional<pg3::ProjLine> axis_;
};

}  // namespace

TEST_CASE("cubic, tangents, osculating planes") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    auto f = Field::make(q);
    CubicModel m(f);
    CAPTURE(q);
    CHECK(m.points().size() == q + 1);
    CHECK(m.tangents().size() == q + 1);
    CHECK(std::set<pg3::ProjLine>(m.tangents().begin(), m.tangents().end()).size() == q + 1);
    CHECK(m.point(0) == pg3::point_from_ints(*f, {0, 0, 0, 1}));
    CHECK(m.point(q) == pg3::point_from_ints(*f, {1, 0, 0, 0}));
    for (Param t = 0; t <= q; ++t) {
      CHECK(m.param_of(m.point(t)) == t);
      CHECK(m.cubic_points_on(m.tangent(t)) == std::vector<Param>{t});
      CHECK(m.cubic_points_in(m.osc_plane(t)) == std::vector<Param>{t});
      CHECK(pg3::line_in_plane(*f, m.tangent(t), m.osc_plane(t)));
    }
    // No four cubic points are coplanar.
    for (const auto& pi : pg3::all_planes(*f)) {
      int n = 0;
      for (const auto& p : m.points()) n += pg3::incident(*f, p, pi);
      CHECK(n <= 3);
      CHECK(m.cubic_points_in(pi).size() == static_cast<std::size_t>(n));
    }
    CHECK(m.axis().has_value() == (f->xi() == 0));
  }
  auto f5 = Field::make(5);
  CubicModel m5(f5);
  CHECK(m5.tangent(0) == pg3::meet_planes(*f5, pg3::plane_from_ints(*f5, {1, 0, 0, 0}), pg3::plane_from_ints(*f5, {0, 1, 0, 0})));
  CHECK(m5.tangent(5) == pg3::meet_planes(*f5, pg3::plane_from_ints(*f5, {0, 0, 1, 0}), pg3::plane_from_ints(*f5, {0, 0, 0, 1})));

  auto f9 = Field::make(9);
  CubicModel m9(f9);
  const auto axis = pg3::meet_planes(*f9, pg3::plane_from_ints(*f9, {1, 0, 0, 0}), pg3::plane_from_ints(*f9, {0, 0, 0, 1}));
  CHECK(*m9.axis() == axis);
  for (const auto& pi : m9.osc_planes()) CHECK(pg3::line_in_plane(*f9, axis, pi));
  CHECK(m9.osc_planes().size() == 10);
}

TEST_CASE("binary cubic common zeros") {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {4u, 5u, 7u, 9u, 16u}) {
    auto f = Field::make(q);
    auto value = [&](const std::array<FieldElement, 4>& c, Param t) {
      if (t == q) return c[0];
      const FieldElement x(t);
      FieldElement r = kZero;
      for (auto ci : c) r = f->add(f->mul(r, x), ci);
      return r;
    };
    for (int i = 0; i < 400; ++i) {
      std::array<FieldElement, 4> a, b;
      for (auto& x : a) x = FieldElement(static_cast<std::uint32_t>(rng() % q) * (rng() % 3 != 0));
      for (auto& x : b) x = FieldElement(static_cast<std::uint32_t>(rng() % q) * (rng() % 3 != 0));
      if (i % 5 == 0) b = a;
      std::vector<Param> brute;
      for (Param t = 0; t <= q; ++t)
        if (value(a, t).is_zero() && value(b, t).is_zero()) brute.push_back(t);
      CHECK(common_cubic_zeros(*f, a, b) == brute);
    }
  }
}

TEST_CASE("Plücker bridge is the unique signed permutation matching real chords") {
  for (std::uint32_t q : {7u, 11u, 13u}) {
    auto f = Field::make(q);
    CubicModel m(f);
    std::vector<std::pair<Plucker, Plucker>> samples;  // (canonical, chord form)
    for (std::uint32_t s = 0; s < q; ++s)
      for (std::uint32_t t = s + 1; t < q; ++t) {
        const FieldElement a1 = f->add(FieldElement(s), FieldElement(t)), a2 = f->mul(FieldElement(s), FieldElement(t));
        const Plucker h{f->square(a2), f->mul(a1, a2), f->sub(f->square(a1), a2), a2, f->neg(a1), kOne};
        samples.push_back({pg3::line_through(*f, m.point(s), m.point(t)).plucker, h});
      }
    auto proportional = [&](const Plucker& x, const Plucker& y) {
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          if (f->mul(x[i], y[j]) != f->mul(x[j], y[i])) return false;
      return true;
    };
    std::array<int, 6> perm;
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<PluckerBridge> found;
    do {
      for (int mask = 0; mask < 32; ++mask) {  // the last sign is fixed: overall sign is projective
        PluckerBridge b{perm, {}};
        for (int i = 0; i < 5; ++i) b.sign[i] = (mask >> i) & 1 ? -1 : 1;
        b.sign[5] = 1;
        bool ok = true;
        for (const auto& [l, h] : samples) {
          if (!proportional(to_hirschfeld(*f, l, b), h)) {
            ok = false;
            break;
          }
        }
        if (ok) found.push_back(b);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(found.size() == 1);
    CHECK(found[0].perm == kHirschfeldBridge.perm);
    CHECK(found[0].sign == kHirschfeldBridge.sign);
  }
}

TEST_CASE("chords") {
  auto f = Field::make(5);
  CubicModel m(f);
  const auto c = m.chord(kOne, kZero);
  CHECK(c == pg3::line_through(*f, m.point(0), m.point(1)));
  const Plucker h = to_hirschfeld(*f, c.plucker);
  CHECK(h == Plucker{kZero, kZero, kOne, kZero, f->from_int(-1), kOne});
  CHECK(from_hirschfeld(*f, h) == c.plucker);
  CHECK(m.chord(kZero, kZero) == m.tangent(0));
  CHECK(m.classify(m.chord(kZero, FieldElement(3))) == LineClass::IC);
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
    auto g = Field::make(q);
    CubicModel mg(g);
    for (std::uint32_t a1 = 0; a1 < q; ++a1)
      for (std::uint32_t a2 = 0; a2 < q; ++a2) {
        const auto l = mg.chord(FieldElement(a1), FieldElement(a2));
        const auto params = mg.chord_params(l);
        REQUIRE(params);
        CHECK(params->first == FieldElement(a1));
        CHECK(params->second == FieldElement(a2));
        const auto roots = g->quadratic_root_count(FieldElement(a1), FieldElement(a2));
        const auto cls = mg.classify(l);
        CHECK(cls == (roots == 2 ? LineClass::RC : roots == 1 ? LineClass::T : LineClass::IC));
      }
  }
}

TEST_CASE("null polarity") {
  auto f = Field::make(5);
  CubicModel m(f);
  CHECK(m.polar(pg3::point_from_ints(*f, {0, 0, 0, 1})) == pg3::plane_from_ints(*f, {1, 0, 0, 0}));
  const auto rc = pg3::line_through(*f, m.point(0), m.point(5));
  CHECK(m.polar(rc) == pg3::line_through(*f, pg3::point_from_ints(*f, {0, 0, 1, 0}), pg3::point_from_ints(*f, {0, 1, 0, 0})));
  for (std::uint32_t q : {4u, 5u, 7u, 8u}) {
    auto g = Field::make(q);
    CubicModel mg(g);
    for (const auto& p : pg3::all_points(*g)) CHECK(pg3::incident(*g, p, mg.polar(p)));
    std::map<LineClass, std::set<std::uint64_t>> by_class;
    for (const auto& l : pg3::all_lines(*g)) {
      CHECK(mg.polar(mg.polar(l)) == l);
      by_class[mg.classify(l)].insert(l.key);
    }
    auto image = [&](LineClass c) {
      std::set<std::uint64_t> out;
      for (const auto& l : pg3::all_lines(*g))
        if (by_class[c].contains(l.key)) out.insert(mg.polar(l).key);
      return out;
    };
    CHECK(image(LineClass::RC) == by_class[LineClass::RA]);
    CHECK(image(LineClass::IC) == by_class[LineClass::IA]);
    CHECK(image(LineClass::T) == by_class[LineClass::T]);
    CHECK(image(LineClass::UnG) == by_class[LineClass::EG]);
  }
  auto f9 = Field::make(9);
  CubicModel m9(f9);
  CHECK_THROWS_AS(m9.polar(pg3::point_from_ints(*f9, {0, 0, 0, 1})), std::domain_error);
}

TEST_CASE("classifier agrees with first-principles classification") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = Field::make(q);
    CubicModel m(f);
    BruteClassifier brute(f);
    CAPTURE(q);
    CHECK(brute.ic_count() == (q * q - q) / 2);
    std::map<LineClass, std::uint64_t> sizes;
    std::uint64_t mismatches = 0;
    for (const auto& l : pg3::all_lines(*f)) {
      const auto c = m.classify(l);
      ++sizes[c];
      mismatches += c != brute.classify(l);
    }
    CHECK(mismatches == 0);
    std::uint64_t total = 0;
    for (auto [c, n] : sizes) {
      CHECK(class_valid(c, f->xi()));
      CHECK(n == expected_class_size(c, q));
      total += n;
    }
    CHECK(total == pg3::line_count(q));
  }
}

TEST_CASE("class sizes for q = 5") {
  auto f = Field::make(5);
  CubicModel m(f);
  std::map<std::string_view, std::uint64_t> sizes;
  for (const auto& l : pg3::all_lines(*f)) ++sizes[class_name(m.classify(l))];
  const std::map<std::string_view, std::uint64_t> expected = {{"RC", 15},  {"T", 6},    {"IC", 10},
                                                              {"RA", 15},  {"IA", 10},  {"UG", 30},
                                                              {"UnG", 120}, {"EG", 120}, {"EnG", 480}};
  CHECK(sizes == expected);
}

TEST_CASE("named lines") {
  auto f = Field::make(7);
  CubicModel m(f);
  const auto rho = f->min_nonsquare();
  auto pt = [&](FieldElement a, FieldElement b, FieldElement c, FieldElement d) { return pg3::make_point(*f, {a, b, c, d}); };
  const auto P0 = pg3::point_from_ints(*f, {0, 0, 0, 1});
  CHECK(m.classify(pg3::line_through(*f, P0, pg3::point_from_ints(*f, {0, 1, 0, 0}))) == LineClass::UG);
  CHECK(m.classify(pg3::line_through(*f, pt(kOne, kZero, rho, kZero), pt(kZero, kOne, kZero, rho))) == LineClass::IC);
  auto f9 = Field::make(9);
  CubicModel m9(f9);
  CHECK(m9.classify(pg3::line_through(*f9, pg3::point_from_ints(*f9, {0, 1, 0, 0}), pg3::point_from_ints(*f9, {0, 0, 1, 1}))) ==
        LineClass::EA);
  CHECK(m9.classify(*m9.axis()) == LineClass::A);
}

TEST_CASE("chord and axis uniqueness") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = Field::make(q);
    CubicModel m(f);
    CAPTURE(q);
    std::vector<pg3::ProjLine> chords, axes;
    for (const auto& l : pg3::all_lines(*f)) {
      const auto c = m.classify(l);
      if (c == LineClass::RC || c == LineClass::T || c == LineClass::IC) chords.push_back(l);
      if (c == LineClass::RA || c == LineClass::IA || c == LineClass::T) axes.push_back(l);
    }
    std::map<pg3::ProjPoint, int> cover;
    for (const auto& l : chords)
      for (const auto& p : pg3::points_on_line(*f, l)) ++cover[p];
    for (const auto& p : pg3::all_points(*f))
      if (!m.param_of(p)) CHECK(cover[p] == 1);
    if (f->xi() != 0) {
      for (const auto& pi : pg3::all_planes(*f)) {
        if (m.is_gamma_plane(pi)) continue;
        int n = 0;
        for (const auto& l : axes) n += pg3::line_in_plane(*f, l, pi);
        CHECK(n == 1);
      }
    }
  }
}

TEST_CASE("class names") {
  for (auto c : kAllClasses) CHECK(parse_class(class_name(c)) == c);
  CHECK_FALSE(parse_class("XX"));
  CHECK(valid_classes(1).size() == 9);
  CHECK(valid_classes(0).size() == 8);
  CHECK_FALSE(class_valid(LineClass::EA, 1));
  CHECK_FALSE(class_valid(LineClass::RA, 0));
}
