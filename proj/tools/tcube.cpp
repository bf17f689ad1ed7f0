// tcube: line classes, orbits and stabilizers of the twisted cubic in PG(3,q).
//
//   tcube classify   --q 7
//   tcube orbits     --q 8 --class UG
//   tcube stabilizer --q 5 --class T
//   tcube stabilizer --q 5 --line "0,0,0,1;1,0,0,0"
//   tcube verify     --q 13 --threads 4
//   tcube census     --q 9 --format csv --out q9.csv
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error or
// unsupported q.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tc/census.hpp"
#include "tc/parallel.hpp"

namespace {

using namespace tc;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_ints(const std::string& s, char sep) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad integer '" + tok + "'");
    }
  }
  return out;
}

pg3::ProjLine parse_line(const gf::Field& f, const std::string& s) {
  const auto semi = s.find(';');
  if (semi == std::string::npos) throw UsageError("--line wants 'x0,x1,x2,x3;y0,y1,y2,y3'");
  auto pt = [&](const std::string& part) {
    const auto v = parse_ints(part, ',');
    if (v.size() != 4) throw UsageError("a point needs four coordinates");
    return pg3::point_from_ints(f, {v[0], v[1], v[2], v[3]});
  };
  return pg3::line_through(f, pt(s.substr(0, semi)), pt(s.substr(semi + 1)));
}

struct Common {
  std::uint32_t q = 0;
  std::string modulus;
  std::string cls;
  std::string line;
  std::string out;
  std::string format = "json";
  unsigned threads = default_threads();
  bool long_run = false;
  bool no_meta = false;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

gf::FieldPtr field_of(const Common& c) {
  census::require_supported(c.q, c.long_run);
  return gf::Field::make(c.q, c.modulus.empty() ? std::vector<int>{} : parse_ints(c.modulus, ','));
}

std::optional<twisted::LineClass> class_of(const Common& c, const gf::Field& f) {
  if (c.cls.empty()) return std::nullopt;
  const auto cls = twisted::parse_class(c.cls);
  if (!cls) throw UsageError("unknown class '" + c.cls + "'");
  if (!twisted::class_valid(*cls, f.xi()))
    throw UsageError("class " + c.cls + " does not occur for q = " + std::to_string(f.q()));
  return cls;
}

int run_classify(const Common& c) {
  const auto f = field_of(c);
  twisted::CubicModel model(f);
  const auto counts = census::classify_all(model, c.threads);
  bool ok = true;
  if (c.format == "csv") {
    std::string s = "class,count,expected\n";
    for (auto [cls, n] : counts) {
      const auto e = twisted::expected_class_size(cls, c.q);
      ok = ok && e == n;
      s += std::string(twisted::class_name(cls)) + "," + std::to_string(n) + "," + std::to_string(e) + "\n";
    }
    emit(c, s);
  } else {
    json j;
    j["schema_version"] = census::kSchemaVersion;
    j["q"] = c.q;
    j["modulus"] = f->modulus();
    json rows = json::array();
    for (auto [cls, n] : counts) {
      const auto e = twisted::expected_class_size(cls, c.q);
      ok = ok && e == n;
      rows.push_back({{"class", twisted::class_name(cls)}, {"count", n}, {"expected", e}});
    }
    j["classes"] = rows;
    emit(c, j.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int run_orbits(const Common& c) {
  const auto f = field_of(c);
  const auto only = class_of(c, *f);
  twisted::CubicModel model(f);
  action::Group group(f);
  const auto oc = census::orbit_census(model, group, c.threads, false);
  if (c.format == "csv") {
    std::string s = "class,orbit_length,stabilizer_order,representative\n";
    for (const auto& cr : oc.classes) {
      if (only && cr.cls != *only) continue;
      for (const auto& o : cr.orbits)
        s += std::string(twisted::class_name(cr.cls)) + "," + std::to_string(o.size) + "," +
             std::to_string(o.stabilizer_order) + ",\"" + census::line_json(o.representative)["plucker"].dump() + "\"\n";
    }
    emit(c, s);
  } else {
    json j;
    j["schema_version"] = census::kSchemaVersion;
    j["q"] = c.q;
    j["modulus"] = f->modulus();
    json classes = json::array();
    for (const auto& cr : oc.classes) {
      if (only && cr.cls != *only) continue;
      json orbits = json::array();
      for (const auto& o : cr.orbits)
        orbits.push_back({{"size", o.size},
                          {"stabilizer_order", o.stabilizer_order},
                          {"representative", census::line_json(o.representative)}});
      classes.push_back({{"class", twisted::class_name(cr.cls)}, {"size", cr.actual_size}, {"orbits", orbits}});
    }
    j["classes"] = classes;
    j["line_orbits"] = oc.partition.seed.size();
    emit(c, j.dump(2) + "\n");
  }
  return oc.class_invariant ? 0 : 1;
}

int run_stabilizer(const Common& c) {
  const auto f = field_of(c);
  twisted::CubicModel model(f);
  action::Group group(f);
  std::vector<pg3::ProjLine> lines;
  if (!c.line.empty()) {
    lines.push_back(parse_line(*f, c.line));
  } else {
    const auto only = class_of(c, *f);
    if (!only) throw UsageError("stabilizer needs --class or --line");
    for (const auto& cr : census::orbit_census(model, group, c.threads, false).classes)
      if (cr.cls == *only)
        for (const auto& o : cr.orbits) lines.push_back(o.representative);
  }
  json out = json::array();
  std::string csv = "line,class,stabilizer_order,a,b,c,d\n";
  for (const auto& l : lines) {
    const auto stab = action::stabilizer(group, l, c.threads);
    json elems = json::array();
    for (const auto& g : stab) {
      elems.push_back(census::element_json(g));
      csv += "\"" + census::line_json(l)["plucker"].dump() + "\"," + std::string(twisted::class_name(model.classify(l))) +
             "," + std::to_string(stab.size());
      for (auto x : g.abcd) csv += "," + std::to_string(x.idx);
      csv += "\n";
    }
    out.push_back({{"line", census::line_json(l)},
                   {"class", twisted::class_name(model.classify(l))},
                   {"stabilizer_order", stab.size()},
                   {"elements", elems}});
  }
  emit(c, c.format == "csv" ? csv : json{{"schema_version", census::kSchemaVersion}, {"q", c.q}, {"stabilizers", out}}.dump(2) + "\n");
  return 0;
}

int run_verify(const Common& c, bool print_checks) {
  const auto f = field_of(c);
  const auto report = census::verify(f, {c.threads});
  if (print_checks) {
    for (const auto& ch : report.checks) {
      std::cerr << (ch.pass ? "PASS " : "FAIL ") << ch.name;
      if (!ch.pass) std::cerr << "  expected=" << ch.expected.dump() << " actual=" << ch.actual.dump();
      std::cerr << "\n";
    }
    std::cerr << "q=" << c.q << " EnG: " << report.eng_evidence << "; " << (report.pass() ? "all checks pass" : "FAILED")
              << "\n";
  }
  if (print_checks && c.out.empty()) return report.pass() ? 0 : 1;
  emit(c, c.format == "csv" ? census::to_csv(report) : census::to_json(report, !c.no_meta).dump(2) + "\n");
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line orbits of the twisted cubic in PG(3,q)"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", c.q, "field order (prime power, 2..64)")->required();
    sub->add_option("--modulus", c.modulus, "irreducible modulus, coefficients low to high, e.g. 1,1,0,1");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", c.threads, "worker threads (default $TC_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--long-run", c.long_run, "allow q >= 37");
    sub->add_flag("--no-meta", c.no_meta, "omit runtime and thread count from reports");
  };

  auto* classify = app.add_subcommand("classify", "count lines per class");
  add_common(classify);
  auto* orbits = app.add_subcommand("orbits", "line orbits, optionally for one class");
  add_common(orbits);
  orbits->add_option("--class", c.cls, "line class (RC, T, IC, RA, IA, UG, UnG, EG, EnG, A, EA)");
  auto* stab = app.add_subcommand("stabilizer", "stabilizer subgroups of orbit representatives or a given line");
  add_common(stab);
  stab->add_option("--class", c.cls, "line class");
  stab->add_option("--line", c.line, "two points 'x0,x1,x2,x3;y0,y1,y2,y3'");
  auto* verify = app.add_subcommand("verify", "run every check; one line per check on stderr");
  add_common(verify);
  auto* census_cmd = app.add_subcommand("census", "full report (JSON or CSV)");
  add_common(census_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) return run_classify(c);
    if (orbits->parsed()) return run_orbits(c);
    if (stab->parsed()) return run_stabilizer(c);
    if (verify->parsed()) return run_verify(c, true);
    if (census_cmd->parsed()) return run_verify(c, false);
  } catch (const census::UnsupportedQ& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gf::FieldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pg3::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
