#include "skewlines/jsonio.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skewlines::jsonio {

namespace {

json mpz_to_json(const mpz_class& n) {
  if (n.fits_slong_p()) return json(n.get_si());
  return json(n.get_str());
}

mpz_class mpz_from_string(const std::string& s) {
  try {
    return mpz_class(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer literal: \"" + s + "\"");
  }
}

mpq_class mpq_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return mpq_class(mpz_from_string(s));
  mpz_class num = mpz_from_string(s.substr(0, slash));
  mpz_class den = mpz_from_string(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the line/column position reported by the parser.
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc = parse_text(buf.str());
  require_schema(doc);
  return doc;
}

void require_schema(const json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("expected a JSON object at the top level");
  if (!doc.contains("schema"))
    throw std::invalid_argument("document is missing the \"schema\" version field");
  const json& v = doc.at("schema");
  if (!v.is_number_integer() || v.get<long>() != kSchemaVersion)
    throw std::invalid_argument("unsupported schema version " + v.dump() +
                                "; this build reads version " +
                                std::to_string(kSchemaVersion));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void save_document(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << dump(doc);
}

json field_to_json(const FieldCtxPtr& ctx) {
  switch (ctx->kind()) {
    case FieldKind::rationals:
      return json{{"kind", "Q"}};
    case FieldKind::prime_field:
      return json{{"kind", "GF"}, {"p", ctx->characteristic()}};
    case FieldKind::extension: {
      json mod = json::array();
      for (const Fel& c : ctx->modulus()) mod.push_back(element_to_json(c));
      return json{{"kind", "ext"}, {"base", field_to_json(ctx->base())}, {"modulus", mod}};
    }
  }
  throw std::logic_error("unreachable field kind");
}

FieldCtxPtr field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("a field description needs a \"kind\" key: " + j.dump());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return FieldCtx::rationals();
  if (kind == "GF") {
    if (!j.contains("p") || !j.at("p").is_number_integer())
      throw std::invalid_argument("a \"GF\" field needs an integer prime \"p\"");
    return FieldCtx::prime_field(j.at("p").get<long>());
  }
  if (kind == "ext") {
    if (!j.contains("base") || !j.contains("modulus"))
      throw std::invalid_argument("an \"ext\" field needs \"base\" and \"modulus\"");
    FieldCtxPtr base = field_from_json(j.at("base"));
    const json& mj = j.at("modulus");
    if (!mj.is_array() || mj.size() < 3)
      throw std::invalid_argument("the modulus must list at least 3 coefficients, constant first");
    std::vector<Fel> mod;
    mod.reserve(mj.size());
    for (const json& c : mj) mod.push_back(element_from_json(c, base));
    if (!mod.back().is_one())
      throw std::invalid_argument("the modulus must be monic (last coefficient 1)");
    return FieldCtx::extension(base, std::move(mod));
  }
  throw std::invalid_argument("unknown field kind \"" + kind + "\"");
}

json element_to_json(const Fel& x) {
  switch (x.ctx()->kind()) {
    case FieldKind::rationals: {
      const mpq_class& q = x.rational();
      if (q.get_den() == 1) return mpz_to_json(q.get_num());
      return json(q.get_num().get_str() + "/" + q.get_den().get_str());
    }
    case FieldKind::prime_field:
      return json(x.residue());
    case FieldKind::extension: {
      json arr = json::array();
      for (const Fel& c : x.coeffs()) arr.push_back(element_to_json(c));
      return arr;
    }
  }
  throw std::logic_error("unreachable field kind");
}

Fel element_from_json(const json& j, const FieldCtxPtr& ctx) {
  if (j.is_number_unsigned() &&
      j.get<unsigned long long>() >
          static_cast<unsigned long long>(std::numeric_limits<long>::max())) {
    mpz_class n = static_cast<unsigned long>(j.get<unsigned long long>());
    return ctx->from_mpz(n);
  }
  if (j.is_number_integer()) return ctx->from_mpz(mpz_class(j.get<long>()));
  if (j.is_string()) return ctx->from_mpq(mpq_from_string(j.get<std::string>()));
  if (j.is_array()) {
    if (ctx->kind() != FieldKind::extension)
      throw std::invalid_argument(
          "coefficient arrays only encode extension-field elements: " + j.dump());
    Fel acc = ctx->zero();
    Fel pw = ctx->one();
    const Fel gen = ctx->gen();
    for (const json& c : j) {
      acc += ctx->embed(element_from_json(c, ctx->base())) * pw;
      pw *= gen;
    }
    return acc;
  }
  throw std::invalid_argument("unsupported element encoding: " + j.dump());
}

json point_to_json(const ProjPoint& p) {
  json arr = json::array();
  for (size_t i = 0; i < p.size(); ++i) arr.push_back(element_to_json(p[i]));
  return arr;
}

ProjPoint point_from_json(const json& j, const FieldCtxPtr& ctx) {
  if (!j.is_array() || j.size() < 2)
    throw std::invalid_argument("a point is an array of at least 2 coordinates: " + j.dump());
  std::vector<Fel> coords;
  coords.reserve(j.size());
  for (const json& c : j) coords.push_back(element_from_json(c, ctx));
  return ProjPoint(std::move(coords));
}

json line_to_json(const ProjLine& l) {
  return json{{"points", json::array({point_to_json(l.chart0()), point_to_json(l.chart1())})}};
}

ProjLine line_from_json(const json& j, const FieldCtxPtr& ctx) {
  if (j.is_object() && j.contains("points")) {
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.size() != 2)
      throw std::invalid_argument("\"points\" must list exactly 2 points: " + j.dump());
    return ProjLine(point_from_json(pts[0], ctx), point_from_json(pts[1], ctx));
  }
  if (j.is_object() && j.contains("forms")) {
    const json& fs = j.at("forms");
    if (!fs.is_array() || fs.size() != 2)
      throw std::invalid_argument("\"forms\" must list exactly 2 linear forms: " + j.dump());
    auto read_form = [&](const json& f) {
      if (!f.is_array() || f.size() != 4)
        throw std::invalid_argument("a linear form has exactly 4 coefficients: " + f.dump());
      std::vector<Fel> coeffs;
      for (const json& c : f) coeffs.push_back(element_from_json(c, ctx));
      return coeffs;
    };
    return ProjLine::from_forms(read_form(fs[0]), read_form(fs[1]));
  }
  throw std::invalid_argument("a line needs a \"points\" or \"forms\" key: " + j.dump());
}

json quadric_to_json(const Quadric& q) {
  json arr = json::array();
  for (const Fel& c : q.coeffs()) arr.push_back(element_to_json(c));
  return arr;
}

Quadric quadric_from_json(const json& j, const FieldCtxPtr& ctx) {
  if (!j.is_array() || j.size() != 10)
    throw std::invalid_argument("a quadric has exactly 10 coefficients: " + j.dump());
  std::vector<Fel> coeffs;
  coeffs.reserve(10);
  for (const json& c : j) coeffs.push_back(element_from_json(c, ctx));
  return Quadric(std::move(coeffs));
}

json config_to_json(const SkewConfig& cfg) {
  json lines = json::array();
  for (int i = 0; i < cfg.size(); ++i) lines.push_back(line_to_json(cfg.line(i)));
  return json{{"schema", kSchemaVersion},
              {"field", field_to_json(cfg.ctx())},
              {"lines", lines}};
}

SkewConfig config_from_json(const json& doc) {
  require_schema(doc);
  if (!doc.contains("field") || !doc.contains("lines"))
    throw std::invalid_argument("a configuration document needs \"field\" and \"lines\"");
  FieldCtxPtr ctx = field_from_json(doc.at("field"));
  const json& lj = doc.at("lines");
  if (!lj.is_array())
    throw std::invalid_argument("\"lines\" must be an array");
  std::vector<ProjLine> lines;
  lines.reserve(lj.size());
  for (const json& l : lj) lines.push_back(line_from_json(l, ctx));
  return SkewConfig(std::move(lines));
}

json point_set_to_json(const SkewConfig& cfg, const PointSet& z) {
  json pts = json::array();
  for (const PointEntry& e : z.entries())
    pts.push_back(json{{"line", e.line}, {"coords", point_to_json(e.point)}});
  json doc{{"schema", kSchemaVersion},
           {"field", field_to_json(cfg.ctx())},
           {"points", pts},
           {"size", z.size()}};
  std::vector<int> counts = z.per_line_counts(cfg.size());
  bool uniform = true;
  for (int c : counts) uniform = uniform && c == counts[0];
  if (uniform && !counts.empty()) doc["per_line"] = counts[0];
  return doc;
}

PointSet point_set_from_json(const json& doc, const SkewConfig& cfg) {
  require_schema(doc);
  if (doc.contains("field")) {
    FieldCtxPtr file_ctx = field_from_json(doc.at("field"));
    if (!file_ctx->same_field(*cfg.ctx()))
      throw std::invalid_argument(
          "the points document and the configuration use different fields");
  }
  if (!doc.contains("points"))
    throw std::invalid_argument("a points document needs a \"points\" array");
  const json& pj = doc.at("points");
  if (!pj.is_array())
    throw std::invalid_argument("\"points\" must be an array");
  std::vector<PointEntry> entries;
  entries.reserve(pj.size());
  for (const json& e : pj) {
    if (!e.is_object() || !e.contains("line") || !e.contains("coords"))
      throw std::invalid_argument(
          "each point entry needs \"line\" and \"coords\": " + e.dump());
    int line = e.at("line").get<int>();
    if (line < 0 || line >= cfg.size())
      throw std::invalid_argument("line index " + std::to_string(line) +
                                  " is out of range for " +
                                  std::to_string(cfg.size()) + " lines");
    entries.push_back({line, point_from_json(e.at("coords"), cfg.ctx())});
  }
  return PointSet(cfg, std::move(entries));
}

namespace {

json gmap_to_json(const GMap& g) {
  return json{{"src", g.src},
              {"dst", g.dst},
              {"matrix", json::array({json::array({element_to_json(g.mat[0]),
                                                   element_to_json(g.mat[1])}),
                                      json::array({element_to_json(g.mat[2]),
                                                   element_to_json(g.mat[3])})})}};
}

json point_entry_to_json(const PointEntry& e) {
  return json{{"line", e.line}, {"coords", point_to_json(e.point)}};
}

}  // namespace

json group_to_json(const GroupDescription& g) {
  json j{{"status", g.status_str()},
         {"transversals", g.transversals.count_str()},
         {"multiplicity_two", g.transversals.multiplicity_two}};
  j["order"] = g.order ? mpz_to_json(*g.order) : json(nullptr);
  if (g.lower_bound != 0) j["lower_bound"] = mpz_to_json(g.lower_bound);
  if (!g.generators.empty()) {
    j["generator_field"] = field_to_json(g.generators[0].ctx());
    json gens = json::array();
    for (const Fel& x : g.generators) gens.push_back(element_to_json(x));
    j["generators"] = gens;
  }
  if (g.witness) j["witness"] = gmap_to_json(*g.witness);
  if (!g.elements.empty()) {
    json els = json::array();
    for (const GMap& e : g.elements) els.push_back(gmap_to_json(e));
    j["elements"] = els;
  }
  if (!g.note.empty()) j["note"] = g.note;
  return j;
}

json verdict_to_json(const GeprociVerdict& v) {
  json hs = json::array();
  for (const auto& h : v.trial_h_vectors) hs.push_back(json(h));
  json j{{"type", json::array({v.a, v.b})},
         {"status", v.status_str()},
         {"classification", v.classification_str()},
         {"trials_requested", v.trials_requested},
         {"trials_used", v.trials_used},
         {"seed", v.seed},
         {"extension_degree", v.extension_degree},
         {"h_vectors", hs}};
  if (v.work_ctx) j["work_field"] = field_to_json(v.work_ctx);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json partition_to_json(const ClassPartition& p) {
  json j{{"m", p.m},
         {"lambda", p.lambda},
         {"classes", p.classes.size()},
         {"signature", p.signature()},
         {"size6", p.size6},
         {"size12", p.size12},
         {"finite", p.finite_mode}};
  if (!p.classes.empty() && !p.classes[0].empty())
    j["parameter_field"] = field_to_json(p.classes[0][0].t.ctx());
  json cls = json::array();
  for (const auto& members : p.classes) {
    json ms = json::array();
    for (const ParamPair& pp : members)
      ms.push_back(json{{"i", pp.i},
                        {"j", pp.j},
                        {"t", element_to_json(pp.t)},
                        {"l", element_to_json(pp.l)}});
    cls.push_back(ms);
  }
  j["class_members"] = cls;
  return j;
}

json completeness_to_json(const CompletenessCertificate& c) {
  json j{{"complete", c.complete}, {"detail", c.str()}};
  if (!c.complete) {
    j["triple"] = json::array({c.triple[0], c.triple[1], c.triple[2]});
    if (c.witness) j["witness"] = point_entry_to_json(*c.witness);
    if (c.missing) j["missing"] = point_entry_to_json(*c.missing);
  }
  return j;
}

json named_config_to_json(const NamedConfig& nc) {
  json doc = config_to_json(nc.cfg);
  json pts = point_set_to_json(nc.cfg, nc.points);
  doc["points"] = pts.at("points");
  doc["size"] = pts.at("size");
  if (pts.contains("per_line")) doc["per_line"] = pts.at("per_line");
  doc["label"] = nc.label;
  return doc;
}

}  // namespace skewlines::jsonio
