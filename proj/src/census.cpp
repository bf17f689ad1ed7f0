#include "tc/census.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <sstream>

#include "tc/parallel.hpp"

namespace tc::census {

namespace {

using action::OrbitRecord;
using gf::Field;
using gf::FieldElement;
using gf::kOne;
using gf::kZero;
using json = nlohmann::ordered_json;

std::uint64_t group_order(std::uint32_t q) { return action::group_order(q); }

json spectrum_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& e : s) out.push_back({{"orbit_length", e.length}, {"multiplicity", e.multiplicity}});
  return out;
}

bool in_tested_set(std::uint32_t q) {
  static const std::set<std::uint32_t> tested = {7, 13, 19, 25, 31, 37,  // q ≡ 1 (mod 3), odd
                                                 5, 11, 17, 23, 29,      // q ≡ -1 (mod 3), odd
                                                 9, 27,                  // q ≡ 0 (mod 3)
                                                 8, 16, 32, 64};
  return tested.contains(q);
}

class CheckList {
 public:
  template <class E, class A>
  bool add(std::string name, const E& expected, const A& actual) {
    json e = expected, a = actual;
    const bool ok = e == a;
    checks_.push_back({std::move(name), std::move(e), std::move(a), ok});
    return ok;
  }
  void flag(std::string name, bool ok) { add(std::move(name), true, ok); }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

}  // namespace

void require_supported(std::uint32_t q, bool long_run) {
  if (q < 2 || q > kMaxQ || !gf::prime_power(q))
    throw UnsupportedQ("unsupported q = " + std::to_string(q) + " (prime powers 2..64)");
  if (q >= kLongRunFrom && !long_run)
    throw UnsupportedQ("q = " + std::to_string(q) + " needs --long-run");
}

ClassCounts classify_all(const twisted::CubicModel& model, unsigned threads) {
  const auto& f = model.field();
  const auto n = pg3::line_count(f.q());
  threads = std::max(1u, threads);
  std::vector<std::array<std::uint64_t, twisted::kAllClasses.size()>> parts(threads);
  for (auto& p : parts) p.fill(0);
  parallel_chunks(n, threads, [&](unsigned chunk, std::uint64_t b, std::uint64_t e) {
    for (auto i = b; i < e; ++i) ++parts[chunk][static_cast<std::size_t>(model.classify(pg3::line_from_index(f, i)))];
  });
  ClassCounts out;
  for (auto c : twisted::valid_classes(f.xi())) out[c] = 0;
  for (const auto& p : parts)
    for (std::size_t c = 0; c < p.size(); ++c)
      if (p[c]) out[static_cast<LineClass>(c)] += p[c];
  return out;
}

std::string_view plane_type_name(PlaneType t) {
  switch (t) {
    case PlaneType::Gamma: return "Gamma";
    case PlaneType::C2: return "2C";
    case PlaneType::C3: return "3C";
    case PlaneType::C1bar: return "1barC";
    case PlaneType::C0: return "0C";
  }
  return "?";
}

std::uint64_t expected_plane_count(PlaneType t, std::uint32_t q32) {
  const std::uint64_t q = q32, g = q * q * q - q;
  switch (t) {
    case PlaneType::Gamma: return q + 1;
    case PlaneType::C2: return q * q + q;
    case PlaneType::C3: return g / 6;
    case PlaneType::C1bar: return g / 2;
    case PlaneType::C0: return g / 3;
  }
  return 0;
}

std::map<PlaneType, std::uint64_t> classify_planes(const twisted::CubicModel& model) {
  std::map<PlaneType, std::uint64_t> out;
  for (auto t : kAllPlaneTypes) out[t] = 0;
  for (const auto& pi : pg3::all_planes(model.field())) {
    if (model.is_gamma_plane(pi)) {
      ++out[PlaneType::Gamma];
      continue;
    }
    switch (model.cubic_points_in(pi).size()) {
      case 0: ++out[PlaneType::C0]; break;
      case 1: ++out[PlaneType::C1bar]; break;
      case 2: ++out[PlaneType::C2]; break;
      case 3: ++out[PlaneType::C3]; break;
      default: throw std::logic_error("plane meets the cubic in more than three points");
    }
  }
  return out;
}

Spectrum make_spectrum(const std::vector<std::uint64_t>& lengths) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (auto l : lengths) ++m[l];
  Spectrum out;
  for (auto [l, k] : m) out.push_back({l, k});
  return out;
}

Spectrum spectrum_of(const std::vector<OrbitRecord>& orbits) {
  std::vector<std::uint64_t> lengths;
  for (const auto& o : orbits) lengths.push_back(o.size);
  return make_spectrum(lengths);
}

std::uint64_t spectrum_total(const Spectrum& s) {
  std::uint64_t t = 0;
  for (const auto& e : s) t += e.length * e.multiplicity;
  return t;
}

std::uint64_t spectrum_orbits(const Spectrum& s) {
  std::uint64_t t = 0;
  for (const auto& e : s) t += e.multiplicity;
  return t;
}

Spectrum expected_spectrum(LineClass c, const Field& f) {
  const std::uint64_t q = f.q(), g = q * q * q - q;
  const int xi = f.xi();
  const bool even = f.is_even();
  std::vector<std::uint64_t> l;
  auto rep = [&](std::uint64_t len, std::int64_t k) {
    for (std::int64_t i = 0; i < k; ++i) l.push_back(len);
  };
  switch (c) {
    case LineClass::RC:
    case LineClass::RA: rep((q * q + q) / 2, 1); break;
    case LineClass::T: rep(q + 1, 1); break;
    case LineClass::IC:
    case LineClass::IA: rep((q * q - q) / 2, 1); break;
    case LineClass::UG:
      if (even) {
        rep(q + 1, 1);
        rep(q * q - 1, 1);
      } else {
        rep(q * q + q, 1);
      }
      break;
    case LineClass::UnG:
    case LineClass::EG: even ? rep(g, 1) : rep(g / 2, 2); break;
    case LineClass::A: rep(1, 1); break;
    case LineClass::EA:
      rep(g, 1);
      rep((q * q - 1) / 2, 2);
      break;
    case LineClass::EnG: {
      const auto qi = static_cast<std::int64_t>(q);
      if (even) {
        rep(g / (2 + xi), 2 + xi);
        rep(g / 2, 2 * qi - 4);
      } else {
        const std::int64_t n = xi == 1 ? (2 * qi - 11) / 3 : xi == -1 ? (2 * qi - 10) / 3 : (2 * qi - 6) / 3;
        rep(g / 4, n);
        rep(g / 2, qi - 1);
        rep(g, (qi - xi) / 3);
        if (xi == 1) {
          rep(g / 12, 1);
          rep(g / 3, 2);
        }
      }
      break;
    }
  }
  if (!twisted::class_valid(c, xi)) l.clear();
  return make_spectrum(l);
}

std::uint64_t expected_line_orbits(std::uint32_t q) {
  const int xi = q % 3 == 0 ? 0 : q % 3 == 1 ? 1 : -1;
  return 2 * std::int64_t{q} + 7 + xi;
}

std::uint64_t expected_eng_orbits(const Field& f) {
  const std::int64_t q = f.q();
  return f.is_even() ? 2 * q - 2 + f.xi() : 2 * q - 3 + f.xi();
}

std::string eng_evidence(std::uint32_t q) {
  if (q <= 4) return "small-q-subgroup";
  return in_tested_set(q) ? "theorem-verified" : "conjecture-consistent";
}

std::vector<NamedRep> named_representatives(const twisted::CubicModel& model) {
  using action::StabFamilyId;
  const auto& f = model.field();
  const std::uint64_t q = f.q();
  const int xi = f.xi();
  const bool even = f.is_even();
  auto pt = [&](FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
    return pg3::make_point(f, {a, b, c, d});
  };
  auto line = [&](const pg3::ProjPoint& a, const pg3::ProjPoint& b) { return pg3::line_through(f, a, b); };
  auto plane = [&](FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
    return pg3::make_plane(f, {a, b, c, d});
  };
  const auto P0 = pt(kZero, kZero, kZero, kOne);
  const auto Pinf = pt(kOne, kZero, kZero, kZero);
  const auto e0100 = pt(kZero, kOne, kZero, kZero);
  const auto e0010 = pt(kZero, kZero, kOne, kZero);
  const auto three = f.from_int(3), minus1 = f.neg(kOne);

  std::vector<NamedRep> reps;
  reps.push_back({"T_inf", LineClass::T, model.tangent(static_cast<twisted::Param>(q)), q * (q - 1),
                  StabFamilyId::TANGENT});
  reps.push_back({"RC P0P_inf", LineClass::RC, line(P0, Pinf), 2 * (q - 1), StabFamilyId::CHORD_2BRANCH});
  if (xi != 0)
    reps.push_back({"RA P(0,0,1,0)P(0,1,0,0)", LineClass::RA, line(e0010, e0100), 2 * (q - 1),
                    StabFamilyId::CHORD_2BRANCH});

  if (!even) {
    const auto rho = f.min_nonsquare();
    reps.push_back({"IC P(1,0,rho,0)P(0,1,0,rho)", LineClass::IC,
                    line(pt(kOne, kZero, rho, kZero), pt(kZero, kOne, kZero, rho)), 2 * (q + 1),
                    StabFamilyId::IC_ODD});
    if (xi != 0) {
      const auto m3rho = f.neg(f.mul(three, rho));
      const auto m3_rho = f.neg(f.div(three, rho));
      reps.push_back({"IA P(0,1,0,-3rho)P(-3/rho,0,1,0)", LineClass::IA,
                      line(pt(kZero, kOne, kZero, m3rho), pt(m3_rho, kZero, kOne, kZero)), 2 * (q + 1),
                      StabFamilyId::IC_ODD});
    }
    reps.push_back({"UG P0P(0,1,0,0)", LineClass::UG, line(P0, e0100), q - 1, StabFamilyId::UG_ODD});
    reps.push_back({"UnG P0P(1,0,1,0)", LineClass::UnG, line(P0, pt(kOne, kZero, kOne, kZero)), 2,
                    StabFamilyId::UNG_ODD});
    reps.push_back({"UnG P0P(1,0,rho,0)", LineClass::UnG, line(P0, pt(kOne, kZero, rho, kZero)), 2,
                    StabFamilyId::UNG_ODD});
    if (xi != 0) {
      const auto pi0 = plane(kOne, kZero, kZero, kZero);
      reps.push_back({"EG pi(1,0,0,0)^pi(0,-3,0,-1)", LineClass::EG,
                      pg3::meet_planes(f, pi0, plane(kZero, f.neg(three), kZero, minus1)), 2,
                      StabFamilyId::UNG_ODD});
      reps.push_back({"EG pi(1,0,0,0)^pi(0,-3rho,0,-1)", LineClass::EG,
                      pg3::meet_planes(f, pi0, plane(kZero, f.neg(f.mul(three, rho)), kZero, minus1)), 2,
                      StabFamilyId::UNG_ODD});
    }
  } else {
    const auto eta = f.min_trace_one();
    const auto eta1 = f.add(eta, kOne);
    reps.push_back({"IC P(eta+1,1,1,0)P(eta,eta,0,1)", LineClass::IC,
                    line(pt(eta1, kOne, kOne, kZero), pt(eta, eta, kZero, kOne)), 2 * (q + 1),
                    StabFamilyId::IC_EVEN});
    reps.push_back({"IA P(eta,1,1,0)P(eta,eta+1,0,1)", LineClass::IA,
                    line(pt(eta, kOne, kOne, kZero), pt(eta, eta1, kZero, kOne)), 2 * (q + 1),
                    StabFamilyId::IC_EVEN});
    reps.push_back({"UG P0P(0,1,0,0)", LineClass::UG, line(P0, e0100), q * (q - 1), StabFamilyId::UG_EVEN_L1});
    reps.push_back({"UG P0P(0,1,1,0)", LineClass::UG, line(P0, pt(kZero, kOne, kOne, kZero)), q,
                    StabFamilyId::UG_EVEN_L2});
    reps.push_back({"UnG P0P(1,0,1,0)", LineClass::UnG, line(P0, pt(kOne, kZero, kOne, kZero)), 1, std::nullopt});
    reps.push_back({"EG P(0,0,1,0)P(0,1,0,1)", LineClass::EG, line(e0010, pt(kZero, kOne, kZero, kOne)), 1,
                    std::nullopt});
  }

  if (xi == 0) {
    const auto rho = f.min_nonsquare();
    reps.push_back({"A axis", LineClass::A, *model.axis(), q * q * q - q, std::nullopt});
    reps.push_back({"EA P(0,1,0,0)P(0,0,1,1)", LineClass::EA, line(e0100, pt(kZero, kZero, kOne, kOne)), 1,
                    std::nullopt});
    reps.push_back({"EA P(0,1,0,0)P(1,0,1,0)", LineClass::EA, line(e0100, pt(kOne, kZero, kOne, kZero)), 2 * q,
                    StabFamilyId::EA_23});
    reps.push_back({"EA P(0,1,0,0)P(1,0,rho,0)", LineClass::EA, line(e0100, pt(kOne, kZero, rho, kZero)), 2 * q,
                    StabFamilyId::EA_23});
  }
  return reps;
}

OrbitCensus orbit_census(const twisted::CubicModel& model, const action::Group& group, unsigned threads,
                         bool exhaustive_stabilizers) {
  const auto& f = model.field();
  const auto n = pg3::line_count(f.q());
  const auto order = group_order(f.q());
  OrbitCensus out;

  out.class_of_line.assign(n, 0);
  parallel_chunks(n, threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    for (auto i = b; i < e; ++i)
      out.class_of_line[i] = static_cast<std::uint8_t>(model.classify(pg3::line_from_index(f, i)));
  });

  out.partition = action::partition_all_lines(f, group.lifted_generators());
  const auto& part = out.partition;
  const auto orbits = part.seed.size();

  out.class_of_orbit.resize(orbits);
  for (std::size_t o = 0; o < orbits; ++o) out.class_of_orbit[o] = out.class_of_line[part.rep[o]];
  for (std::uint64_t i = 0; i < n && out.class_invariant; ++i)
    if (out.class_of_line[i] != out.class_of_orbit[part.orbit_of_line[i]]) out.class_invariant = false;

  std::vector<OrbitRecord> records(orbits);
  for (std::size_t o = 0; o < orbits; ++o) {
    auto rep = pg3::line_from_index(f, part.rep[o]);
    const auto stab = exhaustive_stabilizers ? action::stabilizer_order(group, rep, threads) : order / part.size[o];
    records[o] = {static_cast<LineClass>(out.class_of_orbit[o]), rep, part.size[o], stab};
  }

  std::map<LineClass, std::uint64_t> sizes;
  for (auto c : out.class_of_line) ++sizes[static_cast<LineClass>(c)];
  for (auto c : twisted::valid_classes(f.xi())) {
    ClassReport cr{c, twisted::expected_class_size(c, f.q()), sizes[c], {}};
    for (const auto& r : records)
      if (r.cls == c) cr.orbits.push_back(r);
    std::sort(cr.orbits.begin(), cr.orbits.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
      return a.size != b.size ? a.size < b.size : a.representative < b.representative;
    });
    out.classes.push_back(std::move(cr));
  }
  // Lines of a class that is invalid for this q would be a classifier bug.
  for (auto [c, k] : sizes)
    if (!twisted::class_valid(c, f.xi()) && k) throw std::logic_error("line classified into an invalid class");
  return out;
}

bool CensusReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const ClassReport* CensusReport::find(LineClass c) const {
  for (const auto& cr : classes)
    if (cr.cls == c) return &cr;
  return nullptr;
}

CensusReport verify(const gf::FieldPtr& field, const CensusOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto& f = *field;
  const std::uint32_t q = f.q();
  const auto order = group_order(q);
  const unsigned threads = std::max(1u, opts.threads);

  CensusReport r;
  r.q = q;
  r.p = f.p();
  r.e = f.e();
  r.xi = f.xi();
  r.modulus = f.modulus();
  r.threads = threads;

  twisted::CubicModel model(field);
  action::Group group(field);
  CheckList checks;

  checks.add("group_order", order, action::closure(f, action::generators(f)).size());

  auto oc = orbit_census(model, group, threads, true);
  r.classes = oc.classes;
  r.line_orbits = oc.partition.seed.size();

  std::uint64_t total = 0;
  for (const auto& cr : r.classes) {
    const std::string name(twisted::class_name(cr.cls));
    checks.add("class_size/" + name, cr.expected_size, cr.actual_size);
    total += cr.actual_size;
  }
  checks.add("class_partition_sum", pg3::line_count(q), total);
  checks.flag("class_invariance", oc.class_invariant);

  bool products = true;
  for (const auto& cr : r.classes)
    for (const auto& o : cr.orbits) products = products && o.size * o.stabilizer_order == order;
  checks.flag("orbit_stabilizer_product", products);

  for (const auto& cr : r.classes) {
    if (cr.cls == LineClass::EnG) continue;
    checks.add("orbit_spectrum/" + std::string(twisted::class_name(cr.cls)), spectrum_json(expected_spectrum(cr.cls, f)),
               spectrum_json(spectrum_of(cr.orbits)));
  }

  if (const auto* eng = r.find(LineClass::EnG)) {
    r.eng_spectrum = spectrum_of(eng->orbits);
    r.eng_expected = expected_spectrum(LineClass::EnG, f);
    r.eng_evidence = eng_evidence(q);
    checks.add("eng_sum_rule", twisted::expected_class_size(LineClass::EnG, q), spectrum_total(r.eng_spectrum));
    checks.add("eng_spectrum", spectrum_json(r.eng_expected), spectrum_json(r.eng_spectrum));
    checks.add("eng_orbit_total", expected_eng_orbits(f), spectrum_orbits(r.eng_spectrum));
  }
  checks.add("line_orbit_total", expected_line_orbits(q), r.line_orbits);

  r.planes = classify_planes(model);
  for (auto t : kAllPlaneTypes)
    checks.add("plane_class/" + std::string(plane_type_name(t)), expected_plane_count(t, q), r.planes[t]);

  if (q >= 5) {
    const auto reps = named_representatives(model);
    for (const auto& rep : reps) {
      checks.add("rep_class/" + rep.name, twisted::class_name(rep.cls), twisted::class_name(model.classify(rep.line)));
      const auto stab = action::stabilizer(group, rep.line, threads);
      checks.add("rep_stabilizer/" + rep.name, rep.stabilizer_order, stab.size());
      if (rep.family) {
        const auto fam = action::stab_family(*rep.family, group);
        checks.flag("rep_family/" + rep.name + "/" + std::string(action::family_name(*rep.family)), fam == stab);
      }
      if (f.xi() != 0) {
        const auto polar = model.polar(rep.line);
        checks.flag("polarity_stabilizer/" + rep.name, action::stabilizer(group, polar, threads) == stab);
      }
    }
    auto same_orbit = [&](const std::string& a, const std::string& b) {
      const pg3::ProjLine *la = nullptr, *lb = nullptr;
      for (const auto& rep : reps) {
        if (rep.name == a) la = &rep.line;
        if (rep.name == b) lb = &rep.line;
      }
      if (!la || !lb) return;
      const auto oa = oc.partition.orbit_of_line[pg3::line_index(f, *la)];
      const auto ob = oc.partition.orbit_of_line[pg3::line_index(f, *lb)];
      checks.flag("distinct_orbits/" + a + "|" + b, oa != ob);
    };
    same_orbit("UnG P0P(1,0,1,0)", "UnG P0P(1,0,rho,0)");
    same_orbit("EG pi(1,0,0,0)^pi(0,-3,0,-1)", "EG pi(1,0,0,0)^pi(0,-3rho,0,-1)");
    same_orbit("UG P0P(0,1,0,0)", "UG P0P(0,1,1,0)");
    same_orbit("EA P(0,1,0,0)P(1,0,1,0)", "EA P(0,1,0,0)P(1,0,rho,0)");
  }

  if (f.xi() != 0) {
    const auto rep = action::polarity_commutes_check(model, group, opts.polarity_samples);
    checks.add("polarity_commutes", rep.pairs_checked, rep.pairs_checked - rep.failures);

    // The polarity must map each orbit onto a single orbit of the same size.
    const auto& part = oc.partition;
    const auto n = pg3::line_count(q);
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> image(part.seed.size(), kUnset);
    for (std::size_t o = 0; o < part.seed.size(); ++o)
      image[o] = part.orbit_of_line[pg3::line_index(f, model.polar(pg3::line_from_index(f, part.rep[o])))];
    std::vector<char> ok(std::max(1u, threads), 1);
    parallel_chunks(n, threads, [&](unsigned chunk, std::uint64_t b, std::uint64_t e) {
      for (auto i = b; i < e && ok[chunk]; ++i) {
        const auto img = part.orbit_of_line[pg3::line_index(f, model.polar(pg3::line_from_index(f, i)))];
        if (img != image[part.orbit_of_line[i]]) ok[chunk] = 0;
      }
    });
    bool images = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    for (std::size_t o = 0; o < part.seed.size(); ++o) images = images && part.size[image[o]] == part.size[o];
    checks.flag("polarity_orbit_image", images);
  }

  r.checks = checks.take();
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json line_json(const pg3::ProjLine& l) {
  json pl = json::array(), pts = json::array();
  for (auto x : l.plucker) pl.push_back(x.idx);
  for (const auto& p : l.pair) {
    json v = json::array();
    for (auto x : p) v.push_back(x.idx);
    pts.push_back(v);
  }
  return {{"plucker", pl}, {"points", pts}};
}

json element_json(const action::GroupElement& g) {
  json v = json::array();
  for (auto x : g.abcd) v.push_back(x.idx);
  return v;
}

json to_json(const CensusReport& r, bool with_meta) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["q"] = r.q;
  j["p"] = r.p;
  j["e"] = r.e;
  j["xi"] = r.xi;
  j["modulus"] = r.modulus;
  j["pass"] = r.pass();
  json classes = json::array();
  for (const auto& cr : r.classes) {
    json orbits = json::array();
    for (const auto& o : cr.orbits)
      orbits.push_back({{"size", o.size}, {"stabilizer_order", o.stabilizer_order}, {"representative", line_json(o.representative)}});
    classes.push_back({{"class", twisted::class_name(cr.cls)},
                       {"expected_size", cr.expected_size},
                       {"actual_size", cr.actual_size},
                       {"orbits", orbits}});
  }
  j["classes"] = classes;
  j["line_orbits"] = r.line_orbits;
  j["eng"] = {{"evidence", r.eng_evidence},
              {"expected", spectrum_json(r.eng_expected)},
              {"actual", spectrum_json(r.eng_spectrum)}};
  json planes;
  for (auto [t, k] : r.planes) planes[std::string(plane_type_name(t))] = k;
  j["planes"] = planes;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  j["checks"] = checks;
  if (with_meta) {
    std::ostringstream rt;
    rt.precision(3);
    rt << std::fixed << r.runtime_seconds;
    j["meta"] = {{"version", kVersion}, {"runtime_seconds", std::stod(rt.str())}, {"threads", r.threads}};
  }
  return j;
}

std::string to_csv(const CensusReport& r) {
  std::ostringstream out;
  out << "class,orbit_length,multiplicity,stabilizer_order\n";
  for (const auto& cr : r.classes) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> rows;
    for (const auto& o : cr.orbits) ++rows[{o.size, o.stabilizer_order}];
    for (const auto& [k, mult] : rows)
      out << twisted::class_name(cr.cls) << ',' << k.first << ',' << mult << ',' << k.second << '\n';
  }
  return out.str();
}

json invariant_view(const CensusReport& r) {
  json j;
  j["q"] = r.q;
  json classes = json::array();
  for (const auto& cr : r.classes) {
    json orbits = json::array();
    for (const auto& o : cr.orbits) orbits.push_back({o.size, o.stabilizer_order});
    classes.push_back({{"class", twisted::class_name(cr.cls)}, {"size", cr.actual_size}, {"orbits", orbits}});
  }
  j["classes"] = classes;
  j["line_orbits"] = r.line_orbits;
  json planes;
  for (auto [t, k] : r.planes) planes[std::string(plane_type_name(t))] = k;
  j["planes"] = planes;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  j["checks"] = checks;
  j["pass"] = r.pass();
  return j;
}

}  // namespace tc::census
