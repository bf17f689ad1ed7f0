#include "tc/action.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "tc/parallel.hpp"

namespace tc::action {

namespace {

using gf::kOne;
using gf::kZero;

std::uint64_t pack(const GroupElement& g) {
  std::uint64_t k = 0;
  for (auto x : g.abcd) k = (k << 16) | x.idx;
  return k;
}

}  // namespace

std::uint64_t group_order(std::uint32_t q32) {
  const std::uint64_t q = q32;
  return q * q * q - q;
}

GroupElement make_element(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
  if (f.sub(f.mul(a, d), f.mul(b, c)).is_zero()) throw GroupError("singular tuple: ad - bc = 0");
  GroupElement g{{a, b, c, d}};
  for (auto x : g.abcd) {
    if (!x.is_zero()) {
      const auto s = f.inv(x);
      for (auto& y : g.abcd) y = f.mul(y, s);
      break;
    }
  }
  return g;
}

GroupElement element_from_ints(const Field& f, long long a, long long b, long long c, long long d) {
  return make_element(f, f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d));
}

GroupElement identity() { return {{kOne, kZero, kZero, kOne}}; }

GroupElement compose(const Field& f, const GroupElement& g, const GroupElement& h) {
  // (t, u) -> (t, u) N with N = [[a, c], [b, d]]; g then h is N_g N_h.
  const auto [a1, b1, c1, d1] = g.abcd;
  const auto [a2, b2, c2, d2] = h.abcd;
  auto mac = [&](FieldElement x, FieldElement y, FieldElement z, FieldElement w) { return f.add(f.mul(x, y), f.mul(z, w)); };
  return make_element(f, mac(a1, a2, c1, b2), mac(b1, a2, d1, b2), mac(a1, c2, c1, d2), mac(b1, c2, d1, d2));
}

GroupElement inverse(const Field& f, const GroupElement& g) {
  const auto [a, b, c, d] = g.abcd;
  return make_element(f, d, f.neg(b), f.neg(c), a);
}

Mat4 lift_tuple(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
  if (f.sub(f.mul(a, d), f.mul(b, c)).is_zero()) throw GroupError("singular tuple: ad - bc = 0");
  const auto two = f.from_int(2), three = f.from_int(3);
  auto m = [&](std::initializer_list<FieldElement> xs) {
    FieldElement r = kOne;
    for (auto x : xs) r = f.mul(r, x);
    return r;
  };
  const auto a2 = f.square(a), b2 = f.square(b), c2 = f.square(c), d2 = f.square(d);
  Mat4 r;
  r[0] = {m({a2, a}), m({a2, c}), m({a, c2}), m({c2, c})};
  r[1] = {m({three, a2, b}), f.add(m({a2, d}), m({two, a, b, c})), f.add(m({b, c2}), m({two, a, c, d})), m({three, c2, d})};
  r[2] = {m({three, a, b2}), f.add(m({b2, c}), m({two, a, b, d})), f.add(m({a, d2}), m({two, b, c, d})), m({three, c, d2})};
  r[3] = {m({b2, b}), m({b2, d}), m({b, d2}), m({d2, d})};
  return r;
}

Mat4 lift(const Field& f, const GroupElement& g) {
  return lift_tuple(f, g.abcd[0], g.abcd[1], g.abcd[2], g.abcd[3]);
}

Mat4 identity_matrix() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = kOne;
  return m;
}

Mat4 mat_mul(const Field& f, const Mat4& x, const Mat4& y) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      FieldElement s = kZero;
      for (int k = 0; k < 4; ++k) s = f.add(s, f.mul(x[i][k], y[k][j]));
      r[i][j] = s;
    }
  return r;
}

Mat4 mat_scale(const Field& f, const Mat4& m, FieldElement s) {
  Mat4 r = m;
  for (auto& row : r)
    for (auto& x : row) x = f.mul(x, s);
  return r;
}

Mat4 mat_normalize(const Field& f, const Mat4& m) {
  for (const auto& row : m)
    for (auto x : row)
      if (!x.is_zero()) return mat_scale(f, m, f.inv(x));
  throw GroupError("zero matrix");
}

Mat4 mat_inverse(const Field& f, const Mat4& m) {
  Mat4 a = m, inv = identity_matrix();
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    while (piv < 4 && a[piv][col].is_zero()) ++piv;
    if (piv == 4) throw GroupError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const auto s = f.inv(a[col][col]);
    for (int j = 0; j < 4; ++j) {
      a[col][j] = f.mul(a[col][j], s);
      inv[col][j] = f.mul(inv[col][j], s);
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const auto k = a[r][col];
      for (int j = 0; j < 4; ++j) {
        a[r][j] = f.sub(a[r][j], f.mul(k, a[col][j]));
        inv[r][j] = f.sub(inv[r][j], f.mul(k, inv[col][j]));
      }
    }
  }
  return inv;
}

FieldElement mat_det(const Field& f, const Mat4& m) {
  Mat4 a = m;
  FieldElement det = kOne;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    while (piv < 4 && a[piv][col].is_zero()) ++piv;
    if (piv == 4) return kZero;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = f.neg(det);
    }
    det = f.mul(det, a[col][col]);
    const auto s = f.inv(a[col][col]);
    for (int r = col + 1; r < 4; ++r) {
      const auto k = f.mul(a[r][col], s);
      for (int j = col; j < 4; ++j) a[r][j] = f.sub(a[r][j], f.mul(k, a[col][j]));
    }
  }
  return det;
}

Mat4 printed_inverse(const Field& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
  const auto two = f.from_int(2), three = f.from_int(3);
  const auto delta = f.sub(f.mul(a, d), f.mul(b, c));
  const auto s = f.inv(f.mul(f.square(delta), delta));
  auto m = [&](std::initializer_list<FieldElement> xs) {
    FieldElement r = s;
    for (auto x : xs) r = f.mul(r, x);
    return r;
  };
  const auto ad = f.mul(a, d), bc = f.mul(b, c);
  const auto ad_2bc = f.add(ad, f.mul(two, bc));
  const auto _2ad_bc = f.add(f.mul(two, ad), bc);
  Mat4 r;
  r[0] = {m({d, d, d}), m({c, d, d}), m({c, c, d}), m({c, c, c})};
  r[1] = {m({three, b, d, d}), m({d, ad_2bc}), m({c, _2ad_bc}), m({three, a, c, c})};
  r[2] = {m({three, b, b, d}), m({b, _2ad_bc}), m({a, ad_2bc}), m({three, a, a, c})};
  r[3] = {m({b, b, b}), m({a, b, b}), m({a, a, b}), m({a, a, a})};
  return r;
}

Lifted make_lifted(const Field& f, const GroupElement& g) {
  const auto m = lift(f, g);
  return {g, m, mat_inverse(f, m)};
}

pg3::Vec4 row_times(const Field& f, const pg3::Vec4& x, const Mat4& m) {
  pg3::Vec4 r{};
  for (int j = 0; j < 4; ++j) {
    FieldElement s = kZero;
    for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(x[i], m[i][j]));
    r[j] = s;
  }
  return r;
}

pg3::Vec4 times_col(const Field& f, const Mat4& m, const pg3::Vec4& c) {
  pg3::Vec4 r{};
  for (int i = 0; i < 4; ++i) {
    FieldElement s = kZero;
    for (int j = 0; j < 4; ++j) s = f.add(s, f.mul(m[i][j], c[j]));
    r[i] = s;
  }
  return r;
}

ProjPoint act_point(const Field& f, const Lifted& g, const ProjPoint& p) {
  return pg3::make_point(f, row_times(f, p.coords, g.m));
}

ProjPlane act_plane(const Field& f, const Lifted& g, const ProjPlane& pi) {
  return pg3::make_plane(f, times_col(f, g.inv, pi.coeffs));
}

ProjLine act_line(const Field& f, const Lifted& g, const ProjLine& l) {
  return pg3::line_from_span(f, row_times(f, l.pair[0], g.m), row_times(f, l.pair[1], g.m));
}

bool fixes_line(const Field& f, const Mat4& m, const ProjLine& l, const std::array<ProjPlane, 2>& planes) {
  for (const auto& x : l.pair) {
    const auto y = row_times(f, x, m);
    if (!pg3::dot(f, y, planes[0].coeffs).is_zero() || !pg3::dot(f, y, planes[1].coeffs).is_zero()) return false;
  }
  return true;
}

std::vector<GroupElement> generators(const Field& f) {
  std::vector<GroupElement> gens = {make_element(f, kOne, kOne, kZero, kOne),
                                    make_element(f, f.primitive(), kZero, kZero, kOne),
                                    make_element(f, kZero, kOne, kOne, kZero)};
  gens.erase(std::remove(gens.begin(), gens.end(), identity()), gens.end());
  return gens;
}

std::vector<GroupElement> closure(const Field& f, const std::vector<GroupElement>& gens) {
  std::unordered_set<std::uint64_t> seen{pack(identity())};
  std::vector<GroupElement> out{identity()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      const auto h = compose(f, out[i], g);
      if (seen.insert(pack(h)).second) out.push_back(h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> all_elements(const Field& f) {
  const std::uint32_t q = f.q();
  std::vector<GroupElement> out;
  out.reserve(group_order(q));
  // a = 0 forces b != 0, hence b = 1 and c != 0.
  for (std::uint32_t c = 1; c < q; ++c)
    for (std::uint32_t d = 0; d < q; ++d) out.push_back({{kZero, kOne, FieldElement(c), FieldElement(d)}});
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c)
      for (std::uint32_t d = 0; d < q; ++d) {
        if (FieldElement(d) == f.mul(FieldElement(b), FieldElement(c))) continue;
        out.push_back({{kOne, FieldElement(b), FieldElement(c), FieldElement(d)}});
      }
  return out;
}

Group::Group(gf::FieldPtr field) : field_(std::move(field)) {
  const auto& f = *field_;
  elements_ = all_elements(f);
  matrices_.reserve(elements_.size());
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    matrices_.push_back(lift(f, elements_[i]));
    by_matrix_.emplace(mat_normalize(f, matrices_.back()), i);
  }
  for (const auto& g : generators(f)) gens_.push_back(make_lifted(f, g));
}

std::optional<GroupElement> Group::element_from_matrix(const Mat4& m) const {
  auto it = by_matrix_.find(mat_normalize(*field_, m));
  if (it == by_matrix_.end()) return std::nullopt;
  return elements_[it->second];
}

std::vector<ProjLine> orbit_of(const Field& f, const std::vector<Lifted>& gens, const ProjLine& l) {
  std::unordered_set<std::uint64_t> seen{l.key};
  std::vector<ProjLine> out{l};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      auto img = act_line(f, g, out[i]);
      if (seen.insert(img.key).second) out.push_back(img);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OrbitRecord> orbit_partition(const twisted::CubicModel& model, const Group& group,
                                         const std::vector<ProjLine>& lines) {
  const auto& f = model.field();
  const auto order = group_order(f.q());
  std::vector<ProjLine> sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::unordered_map<std::uint64_t, bool> visited;
  visited.reserve(sorted.size());
  for (const auto& l : sorted) visited.emplace(l.key, false);

  std::vector<OrbitRecord> records;
  for (const auto& seed : sorted) {
    if (visited[seed.key]) continue;
    visited[seed.key] = true;
    std::vector<ProjLine> queue{seed};
    ProjLine rep = seed;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : group.lifted_generators()) {
        auto img = act_line(f, g, queue[i]);
        auto it = visited.find(img.key);
        if (it == visited.end()) throw GroupError("line set is not closed under the group action");
        if (it->second) continue;
        it->second = true;
        if (img < rep) rep = img;
        queue.push_back(img);
      }
    }
    if (order % queue.size() != 0) throw std::logic_error("orbit size does not divide the group order");
    records.push_back({model.classify(rep), rep, queue.size(), order / queue.size()});
  }
  std::sort(records.begin(), records.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
    return a.size != b.size ? a.size < b.size : a.representative < b.representative;
  });
  return records;
}

std::vector<GroupElement> stabilizer(const Group& group, const ProjLine& l, unsigned threads) {
  const auto& f = group.field();
  const auto planes = pg3::planes_through(f, l);
  const auto& mats = group.matrices();
  std::vector<std::vector<GroupElement>> parts(std::max(1u, threads));
  parallel_chunks(mats.size(), threads, [&](unsigned chunk, std::uint64_t b, std::uint64_t e) {
    for (auto i = b; i < e; ++i)
      if (fixes_line(f, mats[i], l, planes)) parts[chunk].push_back(group.elements()[i]);
  });
  std::vector<GroupElement> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::uint64_t stabilizer_order(const Group& group, const ProjLine& l, unsigned threads) {
  return stabilizer(group, l, threads).size();
}

LineOrbits partition_all_lines(const Field& f, const std::vector<Lifted>& gens) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  const auto n = pg3::line_count(f.q());
  LineOrbits out;
  out.orbit_of_line.assign(n, kUnset);
  std::vector<ProjLine> queue;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (out.orbit_of_line[idx] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.seed.size());
    out.orbit_of_line[idx] = id;
    queue.assign(1, pg3::line_from_index(f, idx));
    std::uint64_t min_key = queue[0].key, rep = idx;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : gens) {
        auto img = act_line(f, g, queue[i]);
        const auto img_idx = pg3::line_index(f, img);
        auto& slot = out.orbit_of_line[img_idx];
        if (slot != kUnset) continue;
        slot = id;
        if (img.key < min_key) {
          min_key = img.key;
          rep = img_idx;
        }
        queue.push_back(img);
      }
    }
    out.seed.push_back(idx);
    out.size.push_back(queue.size());
    out.rep.push_back(rep);
  }
  return out;
}

std::string_view family_name(StabFamilyId id) {
  switch (id) {
    case StabFamilyId::TANGENT: return "TANGENT";
    case StabFamilyId::CHORD_2BRANCH: return "CHORD_2BRANCH";
    case StabFamilyId::IC_ODD: return "IC_ODD";
    case StabFamilyId::IC_EVEN: return "IC_EVEN";
    case StabFamilyId::UG_ODD: return "UG_ODD";
    case StabFamilyId::UG_EVEN_L1: return "UG_EVEN_L1";
    case StabFamilyId::UG_EVEN_L2: return "UG_EVEN_L2";
    case StabFamilyId::UNG_ODD: return "UNG_ODD";
    case StabFamilyId::EA_23: return "EA_23";
  }
  return "?";
}

bool family_applicable(StabFamilyId id, const Field& f) {
  switch (id) {
    case StabFamilyId::TANGENT:
    case StabFamilyId::CHORD_2BRANCH:
      return true;
    case StabFamilyId::IC_ODD:
    case StabFamilyId::UG_ODD:
    case StabFamilyId::UNG_ODD:
      return !f.is_even();
    case StabFamilyId::IC_EVEN:
    case StabFamilyId::UG_EVEN_L1:
    case StabFamilyId::UG_EVEN_L2:
      return f.is_even();
    case StabFamilyId::EA_23:
      return f.xi() == 0;
  }
  return false;
}

std::vector<GroupElement> stab_family(StabFamilyId id, const Group& group) {
  const auto& f = group.field();
  if (!family_applicable(id, f))
    throw GroupError(std::string(family_name(id)) + " does not apply to q = " + std::to_string(f.q()));
  const std::uint32_t q = f.q();
  const auto two = f.from_int(2), three = f.from_int(3);
  auto mul = [&](std::initializer_list<FieldElement> xs) {
    FieldElement r = kOne;
    for (auto x : xs) r = f.mul(r, x);
    return r;
  };
  auto add = [&](FieldElement x, FieldElement y) { return f.add(x, y); };
  auto diag = [&](FieldElement d) {
    return Mat4{{{kOne, kZero, kZero, kZero}, {kZero, d, kZero, kZero}, {kZero, kZero, mul({d, d}), kZero},
                 {kZero, kZero, kZero, mul({d, d, d})}}};
  };
  const std::vector<FieldElement> signs = f.is_even() ? std::vector<FieldElement>{kOne}
                                                      : std::vector<FieldElement>{kOne, f.neg(kOne)};

  std::vector<Mat4> mats;
  switch (id) {
    case StabFamilyId::TANGENT:
      for (std::uint32_t bi = 0; bi < q; ++bi)
        for (std::uint32_t di = 1; di < q; ++di) {
          const FieldElement b(bi), d(di);
          mats.push_back({{{kOne, kZero, kZero, kZero},
                           {mul({three, b}), d, kZero, kZero},
                           {mul({three, b, b}), mul({two, b, d}), mul({d, d}), kZero},
                           {mul({b, b, b}), mul({b, b, d}), mul({b, d, d}), mul({d, d, d})}}});
        }
      break;
    case StabFamilyId::CHORD_2BRANCH:
      for (std::uint32_t di = 1; di < q; ++di) mats.push_back(diag(FieldElement(di)));
      for (std::uint32_t bi = 1; bi < q; ++bi) {
        const FieldElement b(bi);
        mats.push_back({{{kZero, kZero, kZero, kOne},
                         {kZero, kZero, b, kZero},
                         {kZero, mul({b, b}), kZero, kZero},
                         {mul({b, b, b}), kZero, kZero, kZero}}});
      }
      break;
    case StabFamilyId::IC_ODD: {
      const auto rho = f.min_nonsquare();
      for (auto al : signs)
        for (std::uint32_t bi = 0; bi < q; ++bi)
          for (std::uint32_t di = 0; di < q; ++di) {
            if (bi == 0 && di == 0) continue;
            const FieldElement b(bi), d(di);
            mats.push_back({{{mul({al, d, d, d}), mul({al, rho, b, d, d}), mul({al, rho, rho, b, b, d}),
                              mul({al, rho, rho, rho, b, b, b})},
                             {mul({three, b, d, d}), add(mul({d, d, d}), mul({two, rho, b, b, d})),
                              add(mul({rho, rho, b, b, b}), mul({two, rho, b, d, d})), mul({three, rho, rho, b, b, d})},
                             {mul({three, al, b, b, d}), add(mul({al, rho, b, b, b}), mul({two, al, b, d, d})),
                              add(mul({al, d, d, d}), mul({two, al, rho, b, b, d})), mul({three, al, rho, b, d, d})},
                             {mul({b, b, b}), mul({b, b, d}), mul({b, d, d}), mul({d, d, d})}}});
          }
      break;
    }
    case StabFamilyId::IC_EVEN: {
      const auto eta = f.min_trace_one();
      for (std::uint32_t al = 0; al < 2; ++al)
        for (std::uint32_t ci = 0; ci < q; ++ci)
          for (std::uint32_t di = 0; di < q; ++di) {
            if (ci == 0 && di == 0) continue;
            const FieldElement c(ci), d(di), alpha(al);
            const auto A = add(mul({alpha, c}), d);
            const auto B = add(mul({eta, c}), mul({add(alpha, kOne), d}));
            mats.push_back({{{mul({A, A, A}), mul({c, A, A}), mul({c, c, A}), mul({c, c, c})},
                             {mul({A, A, B}), mul({d, A, A}), mul({c, c, B}), mul({c, c, d})},
                             {mul({A, B, B}), mul({c, B, B}), mul({A, d, d}), mul({c, d, d})},
                             {mul({B, B, B}), mul({d, B, B}), mul({d, d, B}), mul({d, d, d})}}});
          }
      break;
    }
    case StabFamilyId::UG_ODD:
      for (std::uint32_t di = 1; di < q; ++di) mats.push_back(diag(FieldElement(di)));
      break;
    case StabFamilyId::UG_EVEN_L1:
    case StabFamilyId::UG_EVEN_L2:
      for (std::uint32_t ci = 0; ci < q; ++ci)
        for (std::uint32_t di = 1; di < q; ++di) {
          const FieldElement c(ci), d(di);
          if (id == StabFamilyId::UG_EVEN_L2 && d != kOne) continue;
          mats.push_back({{{kOne, c, mul({c, c}), mul({c, c, c})},
                           {kZero, d, kZero, mul({c, c, d})},
                           {kZero, kZero, mul({d, d}), mul({c, d, d})},
                           {kZero, kZero, kZero, mul({d, d, d})}}});
        }
      break;
    case StabFamilyId::UNG_ODD:
      for (auto d : signs) mats.push_back(diag(d));
      break;
    case StabFamilyId::EA_23:
      for (auto d : signs)
        for (std::uint32_t bi = 0; bi < q; ++bi) {
          const FieldElement b(bi);
          mats.push_back({{{kOne, kZero, kZero, kZero},
                           {kZero, d, kZero, kZero},
                           {kZero, f.neg(mul({b, d})), mul({d, d}), kZero},
                           {mul({b, b, b}), mul({b, b, d}), mul({b, d, d}), mul({d, d, d})}}});
        }
      break;
  }

  std::vector<GroupElement> out;
  for (const auto& m : mats) {
    auto g = group.element_from_matrix(m);
    if (!g) throw GroupError(std::string(family_name(id)) + " produced a matrix outside G_q");
    out.push_back(*g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PolarityReport polarity_commutes_check(const twisted::CubicModel& model, const Group& group, std::size_t samples,
                                       std::uint64_t seed) {
  const auto& f = model.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> point_dist(0, pg3::point_count(f.q()) - 1);
  std::uniform_int_distribution<std::size_t> group_dist(0, group.elements().size() - 1);
  PolarityReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto p = pg3::point_from_index(f, point_dist(rng));
    const auto g = make_lifted(f, group.elements()[group_dist(rng)]);
    const auto lhs = act_plane(f, g, model.polar(p));
    const auto rhs = model.polar(act_point(f, g, p));
    ++report.pairs_checked;
    if (lhs != rhs) ++report.failures;
  }
  return report;
}

}  // namespace tc::action
