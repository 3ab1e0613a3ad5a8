#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "skewlines/constructions.hpp"
#include "skewlines/jsonio.hpp"

using namespace skewlines;
using jsonio::json;

namespace {

std::string g_cli;
std::filesystem::path g_dir;

struct RunResult {
  int rc = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  std::filesystem::path err_file = g_dir / "stderr.txt";
  std::string cmd = g_cli + " " + args + " 2>" + err_file.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

void write_file(const std::string& name, const std::string& text) {
  std::ofstream out(g_dir / name);
  out << text;
}

}  // namespace

TEST_CASE("field and element encodings round-trip") {
  auto rt_field = [](const FieldCtxPtr& ctx) {
    FieldCtxPtr back = jsonio::field_from_json(jsonio::field_to_json(ctx));
    CHECK(back->same_field(*ctx));
    return back;
  };
  FieldCtxPtr qq = rt_field(FieldCtx::rationals());
  FieldCtxPtr f7 = rt_field(FieldCtx::prime_field(7));
  FieldCtxPtr f49 = rt_field(FieldCtx::extension(f7, {f7->one(), f7->zero(), f7->one()}));

  auto rt_elem = [](const Fel& x) {
    json j = jsonio::element_to_json(x);
    Fel back = jsonio::element_from_json(j, x.ctx());
    CHECK(back == x);
    CHECK(jsonio::element_to_json(back) == j);
  };
  rt_elem(qq->from_mpq(mpq_class(-22, 7)));
  rt_elem(qq->from_mpz(mpz_class("123456789012345678901234567890")));
  rt_elem(qq->zero());
  rt_elem(f7->from_int(5));
  rt_elem(f49->gen() * f49->from_int(3) + f49->one());

  // The three accepted input spellings agree.
  CHECK(jsonio::element_from_json(json::parse("\"3/4\""), qq) ==
        qq->from_mpq(mpq_class(3, 4)));
  CHECK(jsonio::element_from_json(json::parse("10"), f7) == f7->from_int(3));
  CHECK(jsonio::element_from_json(json::parse("[1,2]"), f49) ==
        f49->one() + f49->from_int(2) * f49->gen());
  CHECK_THROWS_AS(jsonio::element_from_json(json::parse("[1,2]"), f7),
                  std::invalid_argument);
  CHECK_THROWS_AS(jsonio::element_from_json(json::parse("1.5"), qq),
                  std::invalid_argument);
  CHECK_THROWS_AS(jsonio::element_from_json(json::parse("\"1/0\""), qq),
                  std::invalid_argument);
}

TEST_CASE("configuration and point-set documents round-trip byte-identically") {
  NamedConfig nc = named_example(ExampleLabel::d4, FieldCtx::rationals());
  json doc = jsonio::named_config_to_json(nc);

  SkewConfig cfg = jsonio::config_from_json(doc);
  REQUIRE(cfg.size() == nc.cfg.size());
  for (int i = 0; i < cfg.size(); ++i)
    CHECK(cfg.line(i).same_line(nc.cfg.line(i)));

  PointSet z = jsonio::point_set_from_json(doc, cfg);
  CHECK(z.size() == nc.points.size());
  for (const auto& e : nc.points.entries()) CHECK(z.contains(e));

  // Same values, same bytes.
  NamedConfig again{std::move(cfg), std::move(z), nc.label, nc.expected};
  CHECK(jsonio::dump(jsonio::named_config_to_json(again)) == jsonio::dump(doc));
}

TEST_CASE("schema version gate") {
  json ok{{"schema", 1}};
  CHECK_NOTHROW(jsonio::require_schema(ok));
  CHECK_THROWS_WITH_AS(jsonio::require_schema(json{{"schema", 2}}),
                       doctest::Contains("unsupported schema version 2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(jsonio::require_schema(json::object()),
                       doctest::Contains("missing"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(jsonio::require_schema(json::array()),
                       doctest::Contains("object"), std::invalid_argument);
}

TEST_CASE("construct and group match the documented example") {
  auto c = run_cli("construct --name std-mult --m 4 --field gf:5 --out " +
                   path_of("std4.json"));
  REQUIRE(c.rc == 0);
  auto g = run_cli("group --config " + path_of("std4.json"));
  REQUIRE(g.rc == 0);
  json doc = json::parse(g.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("status") == "abelian-multiplicative");
  CHECK(doc.at("order") == 4);
  CHECK(doc.at("transversals") == "two");
}

TEST_CASE("orbit of the D4 configuration has 12 points, 3 per line") {
  auto c = run_cli("construct --name d4 --out " + path_of("d4.json"));
  REQUIRE(c.rc == 0);
  json d4 = json::parse(slurp(g_dir / "d4.json"));
  CHECK(d4.at("size") == 12);
  CHECK(d4.at("label") == "D4");

  std::string seed = d4.at("points")[0].dump();
  auto o = run_cli("orbit --config " + path_of("d4.json") + " --seed-point '" +
                   seed + "'");
  REQUIRE(o.rc == 0);
  json orb = json::parse(o.out);
  CHECK(orb.at("size") == 12);
  CHECK(orb.at("per_line") == 3);
  CHECK(orb.at("points").size() == 12);

  // A tight cap is reported as refuted, exit code 1.
  auto capped = run_cli("orbit --config " + path_of("d4.json") +
                        " --seed-point '" + seed + "' --cap 3");
  CHECK(capped.rc == 1);
  CHECK(json::parse(capped.out).at("status") == "capped");
}

TEST_CASE("complete and geproci agree on D4 and refute mutations") {
  auto full = run_cli("complete --config " + path_of("d4.json") + " --points " +
                      path_of("d4.json"));
  CHECK(full.rc == 0);
  CHECK(json::parse(full.out).at("complete") == true);

  auto v = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                   path_of("d4.json") + " --type 3,4 --trials 2");
  REQUIRE(v.rc == 0);
  json verdict = json::parse(v.out);
  CHECK(verdict.at("status") == "geproci");
  CHECK(verdict.at("classification") == "half-grid");
  CHECK(verdict.at("seed") == 1729);  // documented default
  CHECK(verdict.at("h_vectors").size() == 2);

  // Dropping one point leaves 11 = no (3,4) candidate at all: input error.
  json mutated = json::parse(slurp(g_dir / "d4.json"));
  mutated["points"].erase(0);
  write_file("d4_minus.json", jsonio::dump(mutated));
  auto bad = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                     path_of("d4_minus.json") + " --type 3,4 --trials 1");
  CHECK(bad.rc == 2);

  // The wrong type of the right cardinality is refuted mathematically.
  auto wrong = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                       path_of("d4.json") + " --type 2,6 --trials 1");
  CHECK(wrong.rc == 1);
  CHECK(json::parse(wrong.out).at("status") == "not-geproci");
}

TEST_CASE("geproci runs are deterministic and seed-stamped") {
  auto a = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                   path_of("d4.json") + " --type 3,4 --trials 2");
  auto b = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                   path_of("d4.json") + " --type 3,4 --trials 2");
  CHECK(a.out == b.out);

  auto c = run_cli("geproci --config " + path_of("d4.json") + " --points " +
                   path_of("d4.json") + " --type 3,4 --trials 2 --seed 7");
  CHECK(json::parse(c.out).at("seed") == 7);
  CHECK(json::parse(c.out).at("status") == "geproci");
}

TEST_CASE("classify and count reproduce the closed-form table") {
  auto cl = run_cli("classify --m 5");
  REQUIRE(cl.rc == 0);
  json p = json::parse(cl.out);
  CHECK(p.at("classes") == 2);
  CHECK(p.at("lambda") == 12);
  CHECK(p.at("m") == 5);

  auto ct = run_cli("count --nm 4..8");
  REQUIRE(ct.rc == 0);
  json counts = json::parse(ct.out).at("counts");
  std::vector<long> expect{6, 12, 18, 30, 36};
  REQUIRE(counts.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(counts[i].at("m") == 4 + static_cast<long>(i));
    CHECK(counts[i].at("n") == expect[i]);
  }

  auto single = run_cli("count --nm 200");
  json one = json::parse(single.out).at("counts");
  REQUIRE(one.size() == 1);
  CHECK(one[0].at("n") == n_m_formula(200));
}

TEST_CASE("hopf verifies the once-and-only-once cover") {
  auto h = run_cli("hopf --q 3");
  REQUIRE(h.rc == 0);
  json doc = json::parse(h.out);
  CHECK(doc.at("line_count") == 10);
  CHECK(doc.at("covers_p3_exactly_once") == true);
  CHECK(doc.at("points_checked") == 40);
  CHECK(doc.at("size") == 40);
}

TEST_CASE("equiv finds a self-equivalence of an orbit") {
  auto e = run_cli("equiv --config " + path_of("d4.json") + " --points " +
                   path_of("d4.json") + " --points2 " + path_of("d4.json"));
  REQUIRE(e.rc == 0);
  json doc = json::parse(e.out);
  CHECK(doc.at("equivalent") == true);
  CHECK(doc.at("map").size() == 4);
}

TEST_CASE("input errors exit with code 2 and a positioned message") {
  write_file("broken.json", "{\"schema\":1,\"field\":{\"kind\":\"Q\"},\"lines\":[");
  auto bad = run_cli("group --config " + path_of("broken.json"));
  CHECK(bad.rc == 2);
  CHECK(bad.err.find("malformed JSON") != std::string::npos);
  CHECK(bad.err.find("line") != std::string::npos);

  json wrong = json::parse(slurp(g_dir / "d4.json"));
  wrong["schema"] = 99;
  write_file("wrong_schema.json", jsonio::dump(wrong));
  auto ws = run_cli("group --config " + path_of("wrong_schema.json"));
  CHECK(ws.rc == 2);
  CHECK(ws.err.find("unsupported schema version 99") != std::string::npos);

  json alien = json::parse(slurp(g_dir / "d4.json"));
  alien["field"] = json{{"kind", "GF"}, {"p", 13}};
  write_file("alien_points.json", jsonio::dump(alien));
  auto mm = run_cli("complete --config " + path_of("d4.json") + " --points " +
                    path_of("alien_points.json"));
  CHECK(mm.rc == 2);
  CHECK(mm.err.find("different fields") != std::string::npos);

  CHECK(run_cli("construct --name no-such-thing").rc == 2);
  CHECK(run_cli("geproci --config nowhere.json --points nowhere.json --type 3,4").rc == 2);
  CHECK(run_cli("").rc == 2);
}

TEST_CASE("help documents the schema and exits cleanly") {
  auto h = run_cli("--help");
  CHECK(h.rc == 0);
  CHECK(h.out.find("\"schema\": 1") != std::string::npos);
  CHECK(h.out.find("Exit codes") != std::string::npos);
  for (const char* sub : {"construct", "group", "orbit", "complete", "geproci",
                          "classify", "count", "hopf", "equiv"})
    CHECK(h.out.find(sub) != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2 || argv[1][0] == '-') {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary> [doctest args]\n", argv[0]);
    return 1;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "skewlines_cli_test";
  std::filesystem::create_directories(g_dir);

  std::vector<char*> args;
  args.push_back(argv[0]);
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  doctest::Context ctx(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
