#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewlines/classify.hpp"
#include "skewlines/constructions.hpp"
#include "skewlines/field.hpp"
#include "skewlines/geproci.hpp"
#include "skewlines/groupoid.hpp"
#include "skewlines/jsonio.hpp"

namespace {

using namespace skewlines;
using jsonio::json;

constexpr const char* kSchemaHelp = R"(Exact combinatorics of finite sets of pairwise skew lines in P^3.

Every subcommand reads and writes single JSON documents carrying a top-level
"schema": 1 version field; other versions are refused. Document shapes:

  field    {"kind":"Q"} | {"kind":"GF","p":7}
           | {"kind":"ext","base":<field>,"modulus":[c0,...,1]}
             (modulus constant-first, monic, over the base field)
  element  integer | "num/den" string | [c0,c1,...] extension coefficients
  point    array of elements (projective coordinates)
  line     {"points":[point,point]} or {"forms":[[4 elements],[4 elements]]}
  config   {"schema":1,"field":<field>,"lines":[line,...]}
  points   {"schema":1,"field":<field>,
            "points":[{"line":i,"coords":point},...],"size":n,"per_line":m}

`construct` writes one document carrying both "lines" and "points"; it can be
passed to every other subcommand as --config and --points alike. Output keys
are sorted and runs with identical arguments (including --seed) produce
byte-identical documents.

Where a --field option takes a field, it accepts the JSON form above or the
shorthands "Q" and "gf:<p>".

Exit codes: 0 success; 1 the queried property was refuted or left undecided
(not geproci, not collinearly complete, not equivalent, cap exceeded);
2 input error (malformed JSON, bad arguments, mismatched fields).)";

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty())
    std::cout << jsonio::dump(doc);
  else
    jsonio::save_document(doc, out_path);
}

FieldCtxPtr parse_field_arg(const std::string& s) {
  if (s == "Q" || s == "q") return FieldCtx::rationals();
  if (s.rfind("gf:", 0) == 0 || s.rfind("GF:", 0) == 0)
    return FieldCtx::prime_field(std::stol(s.substr(3)));
  return jsonio::field_from_json(jsonio::parse_text(s));
}

std::pair<long, long> parse_type_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--type expects \"a,b\", got \"" + s + "\"");
  long a = std::stol(s.substr(0, comma));
  long b = std::stol(s.substr(comma + 1));
  if (a < 1 || b < 1)
    throw std::invalid_argument("--type expects positive integers, got \"" + s + "\"");
  return {a, b};
}

std::pair<long, long> parse_range_arg(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    long v = std::stol(s);
    return {v, v};
  }
  long lo = std::stol(s.substr(0, dots));
  long hi = std::stol(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range \"" + s + "\"");
  return {lo, hi};
}

json mat_to_json(const linalg::Mat& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const Fel& x : row) r.push_back(jsonio::element_to_json(x));
    rows.push_back(r);
  }
  return rows;
}

int run_construct(const std::string& name, long m, long q, long a, long b,
                  const std::string& variant, const std::string& field_arg,
                  const std::string& out) {
  FieldCtxPtr ctx = parse_field_arg(field_arg);
  std::optional<NamedConfig> nc;
  if (name == "std-mult") {
    if (m < 3) throw std::invalid_argument("construct std-mult needs --m >= 3");
    MultVariant v;
    if (variant == "z0")
      v = MultVariant::z0;
    else if (variant == "zinf")
      v = MultVariant::zinf;
    else if (variant == "z0inf")
      v = MultVariant::z0inf;
    else
      throw std::invalid_argument("--variant must be z0, zinf or z0inf");
    nc = standard_construction_mult(m, ctx, v);
  } else if (name == "std-add") {
    nc = standard_construction_add(additive_group_of_field(ctx), ctx);
  } else if (name == "hopf") {
    if (q < 3) throw std::invalid_argument("construct hopf needs an odd prime power --q >= 3");
    nc = hopf_spread(q);
  } else if (name == "grid") {
    if (a < 1 || b < 1) throw std::invalid_argument("construct grid needs --a and --b");
    nc = grid_config(a, b, ctx);
  } else if (auto label = parse_example_label(name)) {
    nc = named_example(*label, ctx);
  } else {
    throw std::invalid_argument(
        "unknown construction \"" + name +
        "\"; expected std-mult, std-add, hopf, grid, d4, h4, f4 or penrose80");
  }
  emit(jsonio::named_config_to_json(*nc), out);
  return 0;
}

int run_group(const std::string& config_path, long cap, const std::string& out) {
  SkewConfig cfg = jsonio::config_from_json(jsonio::load_document(config_path));
  GroupDescription g = group_analysis(cfg, cap);
  json doc = jsonio::group_to_json(g);
  doc["schema"] = jsonio::kSchemaVersion;
  emit(doc, out);
  return 0;
}

int run_orbit(const std::string& config_path, const std::string& seed_point,
              long cap, const std::string& out) {
  SkewConfig cfg = jsonio::config_from_json(jsonio::load_document(config_path));
  json sp = jsonio::parse_text(seed_point);
  if (!sp.is_object() || !sp.contains("line") || !sp.contains("coords"))
    throw std::invalid_argument("--seed-point expects {\"line\":i,\"coords\":[...]}");
  PointEntry seed{sp.at("line").get<int>(),
                  jsonio::point_from_json(sp.at("coords"), cfg.ctx())};
  std::optional<PointSet> orb = orbit(cfg, seed, cap);
  if (!orb) {
    json doc{{"schema", jsonio::kSchemaVersion},
             {"status", "capped"},
             {"cap", cap},
             {"note", "orbit enumeration exceeded the cap; rerun with a larger --cap"}};
    emit(doc, out);
    return 1;
  }
  json doc = jsonio::point_set_to_json(cfg, *orb);
  doc["status"] = "complete";
  emit(doc, out);
  return 0;
}

int run_complete(const std::string& config_path, const std::string& points_path,
                 const std::string& out) {
  SkewConfig cfg = jsonio::config_from_json(jsonio::load_document(config_path));
  PointSet z = jsonio::point_set_from_json(jsonio::load_document(points_path), cfg);
  CompletenessCertificate c = is_collinearly_complete(cfg, z);
  json doc = jsonio::completeness_to_json(c);
  doc["schema"] = jsonio::kSchemaVersion;
  emit(doc, out);
  return c.complete ? 0 : 1;
}

int run_geproci(const std::string& config_path, const std::string& points_path,
                const std::string& type_arg, int trials, unsigned long long seed,
                bool auto_extend, const std::string& out) {
  SkewConfig cfg = jsonio::config_from_json(jsonio::load_document(config_path));
  PointSet z = jsonio::point_set_from_json(jsonio::load_document(points_path), cfg);
  auto [a, b] = parse_type_arg(type_arg);
  GeprociVerdict v = is_geproci(cfg, z, a, b, trials, seed, auto_extend);
  json doc = jsonio::verdict_to_json(v);
  doc["schema"] = jsonio::kSchemaVersion;
  emit(doc, out);
  return v.status == GeprociVerdict::Status::geproci ? 0 : 1;
}

int run_classify(long m, const std::string& field_arg, const std::string& out) {
  FieldCtxPtr ctx = parse_field_arg(field_arg);
  ClassPartition p = class_partition(m, ctx);
  json doc = jsonio::partition_to_json(p);
  doc["schema"] = jsonio::kSchemaVersion;
  emit(doc, out);
  return 0;
}

int run_count(const std::string& range_arg, long char_p, const std::string& out) {
  auto [lo, hi] = parse_range_arg(range_arg);
  if (lo < 1) throw std::invalid_argument("--nm expects m >= 1");
  json counts = json::array();
  for (long m = lo; m <= hi; ++m)
    counts.push_back(json{{"m", m}, {"n", n_m_formula(m, char_p)}});
  json doc{{"schema", jsonio::kSchemaVersion},
           {"char", char_p},
           {"counts", counts}};
  emit(doc, out);
  return 0;
}

int run_hopf(long q, const std::string& out) {
  NamedConfig nc = hopf_spread(q);
  json doc = jsonio::named_config_to_json(nc);
  // The fibers must partition the rational points of P^3 over GF(q).
  const FieldCtxPtr& ctx = nc.cfg.ctx();
  mpz_class qz = ctx->size();
  mpz_class expect = qz * qz * qz + qz * qz + qz + 1;
  long covered = 0;
  bool exact = true;
  std::vector<ProjPoint> reps;
  for (mpz_class i0 = 0; i0 < qz && exact; ++i0)
    for (mpz_class i1 = 0; i1 < qz && exact; ++i1)
      for (mpz_class i2 = 0; i2 < qz && exact; ++i2) {
        // Points with leading coordinate 1, then the planes at infinity.
        std::vector<std::vector<Fel>> batch;
        batch.push_back({ctx->one(), ctx->element_at(i0), ctx->element_at(i1),
                         ctx->element_at(i2)});
        if (i2 == 0) {
          batch.push_back({ctx->zero(), ctx->one(), ctx->element_at(i0),
                           ctx->element_at(i1)});
          if (i1 == 0) {
            batch.push_back({ctx->zero(), ctx->zero(), ctx->one(), ctx->element_at(i0)});
            if (i0 == 0)
              batch.push_back({ctx->zero(), ctx->zero(), ctx->zero(), ctx->one()});
          }
        }
        for (auto& coords : batch) {
          ProjPoint p(std::move(coords));
          int on = 0;
          for (int l = 0; l < nc.cfg.size(); ++l)
            if (nc.cfg.line(l).contains(p)) ++on;
          if (on != 1) exact = false;
          ++covered;
        }
      }
  doc["line_count"] = nc.cfg.size();
  doc["covers_p3_exactly_once"] = exact;
  doc["points_checked"] = covered;
  if (exact && mpz_class(covered) != expect) exact = false;
  emit(doc, out);
  return exact ? 0 : 1;
}

int run_equiv(const std::string& config_path, const std::string& config2_path,
              const std::string& points_path, const std::string& points2_path,
              const std::string& out) {
  std::optional<linalg::Mat> map;
  if (!config2_path.empty()) {
    SkewConfig a = jsonio::config_from_json(jsonio::load_document(config_path));
    SkewConfig b = jsonio::config_from_json(jsonio::load_document(config2_path));
    map = projective_equivalence_of_configs(a, b);
  } else {
    if (points_path.empty() || points2_path.empty())
      throw std::invalid_argument(
          "equiv needs either --config2 or both --points and --points2");
    SkewConfig cfg = jsonio::config_from_json(jsonio::load_document(config_path));
    PointSet o1 = jsonio::point_set_from_json(jsonio::load_document(points_path), cfg);
    PointSet o2 = jsonio::point_set_from_json(jsonio::load_document(points2_path), cfg);
    map = projective_equivalence_of_orbits(cfg, o1, o2);
  }
  json doc{{"schema", jsonio::kSchemaVersion}, {"equivalent", map.has_value()}};
  if (map) doc["map"] = mat_to_json(*map);
  emit(doc, out);
  return map ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{kSchemaHelp};
  app.require_subcommand(1);

  std::string out;
  auto add_out = [&out](CLI::App* sub) {
    sub->add_option("--out", out, "Write the output document here instead of stdout");
  };

  auto* c_construct = app.add_subcommand(
      "construct", "Build a named configuration with its distinguished point set");
  std::string name, variant = "z0", field_arg = "Q";
  long m = 0, q = 0, a = 0, b = 0;
  c_construct->add_option("--name", name,
                          "std-mult | std-add | hopf | grid | d4 | h4 | f4 | penrose80")
      ->required();
  c_construct->add_option("--m", m, "Order parameter for std-mult");
  c_construct->add_option("--q", q, "Field size for hopf");
  c_construct->add_option("--a", a, "Rows for grid");
  c_construct->add_option("--b", b, "Lines for grid");
  c_construct->add_option("--variant", variant, "std-mult point set: z0 | zinf | z0inf")
      ->capture_default_str();
  c_construct->add_option("--field", field_arg, "Base field (JSON, \"Q\" or \"gf:p\")")
      ->capture_default_str();

  auto* c_group = app.add_subcommand(
      "group", "Analyze the symmetry group attached to a configuration");
  std::string config_path;
  long cap = 2000;
  c_group->add_option("--config", config_path, "Configuration document")->required();
  c_group->add_option("--cap", cap, "Closure enumeration cap")->capture_default_str();

  auto* c_orbit = app.add_subcommand("orbit", "Enumerate the orbit of a marked point");
  std::string orbit_config, seed_point;
  long orbit_cap = 100000;
  c_orbit->add_option("--config", orbit_config, "Configuration document")->required();
  c_orbit->add_option("--seed-point", seed_point,
                      "Inline JSON {\"line\":i,\"coords\":[...]}")
      ->required();
  c_orbit->add_option("--cap", orbit_cap, "Orbit size cap")->capture_default_str();

  auto* c_complete = app.add_subcommand(
      "complete", "Check that a point set is collinearly complete");
  std::string comp_config, comp_points;
  c_complete->add_option("--config", comp_config, "Configuration document")->required();
  c_complete->add_option("--points", comp_points, "Point-set document")->required();

  auto* c_geproci = app.add_subcommand(
      "geproci", "Certify that the point set is an (a,b)-geproci set");
  std::string gep_config, gep_points, type_arg;
  int trials = 3;
  unsigned long long seed = kDefaultSeed;
  bool auto_extend = false;
  c_geproci->add_option("--config", gep_config, "Configuration document")->required();
  c_geproci->add_option("--points", gep_points, "Point-set document")->required();
  c_geproci->add_option("--type", type_arg, "Target type \"a,b\"")->required();
  c_geproci->add_option("--trials", trials, "Independent projection trials")
      ->capture_default_str();
  c_geproci->add_option("--seed", seed, "Deterministic seed for the projection centers")
      ->capture_default_str();
  c_geproci->add_flag("--auto-extend", auto_extend,
                      "Replace a too-small finite field by an extension large "
                      "enough for general projections");

  auto* c_classify = app.add_subcommand(
      "classify", "Partition the one-orbit line choices into projective classes");
  long classify_m = 0;
  std::string classify_field = "Q";
  c_classify->add_option("--m", classify_m, "Group order (>= 4)")->required();
  c_classify->add_option("--field", classify_field,
                         "Field containing a primitive m-th root of unity "
                         "(JSON, \"Q\" or \"gf:p\")")
      ->capture_default_str();

  auto* c_count = app.add_subcommand(
      "count", "Closed-form count of admissible parameter pairs");
  std::string nm_range;
  long char_p = 0;
  c_count->add_option("--nm", nm_range, "Single m or range \"a..b\"")->required();
  c_count->add_option("--char", char_p, "Field characteristic (0 for Q)")
      ->capture_default_str();

  auto* c_hopf = app.add_subcommand(
      "hopf", "Build the Hopf fibration spread and verify it covers P^3 exactly once");
  long hopf_q = 0;
  c_hopf->add_option("--q", hopf_q, "Odd prime power field size")->required();

  auto* c_equiv = app.add_subcommand(
      "equiv", "Search for a projectivity carrying one configuration or orbit onto another");
  std::string eq_config, eq_config2, eq_points, eq_points2;
  c_equiv->add_option("--config", eq_config, "First configuration document")->required();
  c_equiv->add_option("--config2", eq_config2, "Second configuration document");
  c_equiv->add_option("--points", eq_points, "First orbit document (same configuration)");
  c_equiv->add_option("--points2", eq_points2, "Second orbit document");

  for (CLI::App* sub : app.get_subcommands(nullptr)) add_out(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_construct))
      return run_construct(name, m, q, a, b, variant, field_arg, out);
    if (app.got_subcommand(c_group)) return run_group(config_path, cap, out);
    if (app.got_subcommand(c_orbit))
      return run_orbit(orbit_config, seed_point, orbit_cap, out);
    if (app.got_subcommand(c_complete))
      return run_complete(comp_config, comp_points, out);
    if (app.got_subcommand(c_geproci))
      return run_geproci(gep_config, gep_points, type_arg, trials, seed, auto_extend, out);
    if (app.got_subcommand(c_classify))
      return run_classify(classify_m, classify_field, out);
    if (app.got_subcommand(c_count)) return run_count(nm_range, char_p, out);
    if (app.got_subcommand(c_hopf)) return run_hopf(hopf_q, out);
    if (app.got_subcommand(c_equiv))
      return run_equiv(eq_config, eq_config2, eq_points, eq_points2, out);
    throw std::invalid_argument("no subcommand selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
