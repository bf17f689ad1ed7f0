#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "tc/pg3.hpp"

using namespace tc;
using namespace tc::pg3;
using gf::FieldElement;
using gf::kOne;
using gf::kZero;

namespace {

Plucker dual_to_plucker(const gf::Field& f, const Vec4& c, const Vec4& d) {
  auto s = [&](int k, int l) { return f.sub(f.mul(c[k], d[l]), f.mul(c[l], d[k])); };
  return {s(2, 3), f.neg(s(1, 3)), s(1, 2), s(0, 3), f.neg(s(0, 2)), s(0, 1)};
}

}  // namespace

TEST_CASE("object counts") {
  CHECK(all_lines(*gf::Field::make(2)).size() == 35);
  CHECK(all_lines(*gf::Field::make(5)).size() == 806);
  CHECK(all_lines(*gf::Field::make(9)).size() == 7462);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    auto f = gf::Field::make(q);
    const std::uint64_t pts = q * q * q + q * q + q + 1;
    CHECK(point_count(q) == pts);
    CHECK(all_points(*f).size() == pts);
    CHECK(all_planes(*f).size() == pts);
    CHECK(line_count(q) == (q * q + 1) * (q * q + q + 1));
  }
}

TEST_CASE("enumeration order, Klein relation, point pairs") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = gf::Field::make(q);
    CAPTURE(q);
    const auto lines = all_lines(*f);
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto& l = lines[i];
      if (i) bad += !(lines[i - 1].key < l.key);
      bad += klein_form(*f, l.plucker) != kZero;
      auto pts = points_on_line(*f, l);
      bad += pts.size() != q + 1;
      std::sort(pts.begin(), pts.end());
      bad += pts[0].coords != l.pair[0] || pts[1].coords != l.pair[1];
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("dense indices are bijections") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    auto f = gf::Field::make(q);
    for (std::uint64_t i = 0; i < point_count(q); ++i) CHECK(point_index(*f, point_from_index(*f, i).coords) == i);
    std::set<std::uint64_t> keys;
    for (std::uint64_t i = 0; i < line_count(q); ++i) {
      const auto l = line_from_index(*f, i);
      keys.insert(l.key);
      CHECK(line_index(*f, l) == i);
    }
    CHECK(keys.size() == line_count(q));
  }
}

TEST_CASE("line_through") {
  auto f = gf::Field::make(5);
  const auto P0 = point_from_ints(*f, {0, 0, 0, 1});
  const auto Pinf = point_from_ints(*f, {1, 0, 0, 0});
  const auto l = line_through(*f, P0, Pinf);
  CHECK(l.plucker == Plucker{kZero, kZero, kOne, kZero, kZero, kZero});
  CHECK(line_through(*f, Pinf, P0) == l);
  for (std::uint32_t t = 0; t < 5; ++t)
    CHECK(point_on_line(*f, make_point(*f, {kOne, kZero, kZero, FieldElement(t)}), l));
  CHECK_THROWS_AS(line_through(*f, P0, P0), GeometryError);

  // x0 = x2 = 0
  const auto m = line_through(*f, P0, point_from_ints(*f, {0, 1, 0, 0}));
  CHECK(m == meet_planes(*f, plane_from_ints(*f, {1, 0, 0, 0}), plane_from_ints(*f, {0, 0, 1, 0})));
}

TEST_CASE("span independence") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {5u, 8u, 9u, 13u}) {
    auto f = gf::Field::make(q);
    std::uniform_int_distribution<std::uint64_t> pick(0, point_count(q) - 1);
    for (int i = 0; i < 300; ++i) {
      const auto P = point_from_index(*f, pick(rng)), Q = point_from_index(*f, pick(rng));
      if (P == Q) continue;
      const auto l = line_through(*f, P, Q);
      const auto pts = points_on_line(*f, l);
      const auto R = pts[rng() % pts.size()];
      if (R == P) continue;
      CHECK(line_through(*f, P, R) == l);
      CHECK(plucker_of(*f, P.coords, R.coords) != Plucker{});
    }
  }
}

TEST_CASE("planes and duality") {
  auto f = gf::Field::make(5);
  CHECK(meet_planes(*f, plane_from_ints(*f, {0, 0, 0, 1}), plane_from_ints(*f, {1, 0, 0, 0})) ==
        line_through(*f, point_from_ints(*f, {0, 0, 1, 0}), point_from_ints(*f, {0, 1, 0, 0})));
  CHECK(incident(*f, point_from_ints(*f, {0, 0, 0, 1}), plane_from_ints(*f, {1, 0, 0, 0})));
  CHECK_FALSE(incident(*f, point_from_ints(*f, {1, 1, 1, 1}), plane_from_ints(*f, {1, 0, 0, 0})));
  const auto x2x3 = meet_planes(*f, plane_from_ints(*f, {0, 0, 1, 0}), plane_from_ints(*f, {0, 0, 0, 1}));
  CHECK(line_in_plane(*f, x2x3, plane_from_ints(*f, {0, 0, 0, 1})));
  CHECK_THROWS_AS(meet_planes(*f, plane_from_ints(*f, {0, 0, 0, 1}), plane_from_ints(*f, {0, 0, 0, 2})),
                  GeometryError);

  for (std::uint32_t q : {3u, 4u, 5u}) {
    auto g = gf::Field::make(q);
    const auto planes = all_planes(*g);
    for (const auto& l : all_lines(*g)) {
      const auto pl = planes_through(*g, l);
      CHECK(pl[0] != pl[1]);
      CHECK(meet_planes(*g, pl[0], pl[1]) == l);
      CHECK(line_from_plucker(*g, dual_to_plucker(*g, pl[0].coeffs, pl[1].coeffs)) == l);
      CHECK(line_from_plucker(*g, l.plucker) == l);
      int count = 0;
      for (const auto& pi : planes) count += line_in_plane(*g, l, pi);
      CHECK(count == static_cast<int>(q + 1));
    }
    // Every plane holds q^2 + q + 1 lines.
    for (std::size_t i = 0; i < planes.size(); i += 7) {
      std::uint64_t n = 0;
      for (const auto& l : all_lines(*g)) n += line_in_plane(*g, l, planes[i]);
      CHECK(n == q * q + q + 1);
    }
  }
}

TEST_CASE("lines_meet agrees with point sets") {
  auto f = gf::Field::make(3);
  const auto lines = all_lines(*f);
  for (std::size_t i = 0; i < lines.size(); i += 3) {
    const auto a = points_on_line(*f, lines[i]);
    for (std::size_t j = 0; j < lines.size(); ++j) {
      const auto b = points_on_line(*f, lines[j]);
      bool share = false;
      for (const auto& p : a) share = share || std::find(b.begin(), b.end(), p) != b.end();
      CHECK(lines_meet(*f, lines[i], lines[j]) == share);
    }
  }
}

TEST_CASE("invalid Plücker vectors") {
  auto f = gf::Field::make(5);
  CHECK_THROWS_AS(line_from_plucker(*f, Plucker{}), GeometryError);
  CHECK_THROWS_AS(line_from_plucker(*f, Plucker{kOne, kZero, kZero, kZero, kZero, kOne}), GeometryError);
  CHECK_THROWS_AS(make_point(*f, Vec4{}), GeometryError);
}
