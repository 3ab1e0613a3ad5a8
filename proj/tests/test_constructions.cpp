#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skewlines/constructions.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

using namespace skewlines;

namespace {

FieldCtxPtr QQ() { return FieldCtx::rationals(); }

mpz_class group_order_of(const SkewConfig& cfg) {
  auto desc = group_analysis(cfg);
  REQUIRE(desc.order.has_value());
  return *desc.order;
}

// Cone products of the multiplicative family, evaluated at a point: one
// factor per ruling line (F) and per partner line (G).
Fel mult_F(const std::vector<Fel>& up, const Fel& a, const Fel& b, const Fel& c, const Fel& d,
           const Fel& x, const Fel& y, const Fel& z, const Fel& w) {
  Fel f = a.ctx()->one();
  for (const Fel& ui : up) f *= (ui * d - c) * (ui * x - y) - (ui * a - b) * (ui * w - z);
  return f;
}

Fel mult_G(const std::vector<Fel>& up, const Fel& a, const Fel& b, const Fel& c, const Fel& d,
           const Fel& x, const Fel& y, const Fel& z, const Fel& w) {
  Fel g = a.ctx()->one();
  for (const Fel& uj : up) g *= (uj * b - c) * (uj * x - w) - (uj * a - d) * (uj * y - z);
  return g;
}

// The same for the additive family.
Fel add_F(const std::vector<Fel>& A, const Fel& a, const Fel& b, const Fel& c, const Fel& d,
          const Fel& x, const Fel& y, const Fel& z, const Fel& w) {
  Fel f = a.ctx()->one();
  for (const Fel& i : A) f *= (c - i * d) * (i * x - y) - (i * a - b) * (z - i * w);
  return f;
}

Fel add_G(const std::vector<Fel>& A, const Fel& a, const Fel& b, const Fel& c, const Fel& d,
          const Fel& x, const Fel& y, const Fel& z, const Fel& w) {
  Fel g = a.ctx()->one();
  for (const Fel& j : A) g *= (b - j * c) * (x - j * w) - (a - j * d) * (y - j * z);
  return g;
}

void check_single_orbit(const NamedConfig& nc) {
  auto o = orbit(nc.cfg, nc.points.entries()[0], 4L * nc.points.size() + 16);
  REQUIRE(o.has_value());
  CHECK(o->entries() == nc.points.entries());
}

}  // namespace

TEST_CASE("standard frame and the (t, l) family") {
  auto ctx = QQ();
  auto frame = StandardFrame::standard(ctx);
  Fel t = ctx->from_int(2), l = ctx->from_int(3);
  ProjLine l4 = l4_from_lt(frame, t, l);
  CHECK(l4.contains(ProjPoint::from_ints(ctx, {0, 0, 2, 1})));
  CHECK(l4.contains(ProjPoint::from_ints(ctx, {3, 1, 0, 0})));
  CHECK(are_skew(l4, frame.l1));
  CHECK(are_skew(l4, frame.l2));
  CHECK(are_skew(l4, frame.l3));
  CHECK(intersect_lines(l4, frame.t1).has_value());
  CHECK(intersect_lines(l4, frame.t2).has_value());

  CHECK_THROWS_AS(l4_from_lt(frame, ctx->zero(), l), std::invalid_argument);
  CHECK_THROWS_AS(l4_from_lt(frame, ctx->one(), l), std::invalid_argument);
  CHECK_THROWS_AS(l4_from_lt(frame, t, ctx->zero()), std::invalid_argument);
  CHECK_THROWS_AS(l4_from_lt(frame, t, ctx->one()), std::invalid_argument);
  // lt = 1 puts the line on the quadric through the frame.
  CHECK_THROWS_AS(l4_from_lt(frame, t, ctx->one() / t), std::invalid_argument);
}

TEST_CASE("fourth line from prescribed multipliers") {
  SUBCASE("integer multipliers over GF(7)") {
    auto f7 = FieldCtx::prime_field(7);
    auto [t, l] = tl_from_roots(f7->from_int(2), f7->from_int(3));
    CHECK(t == f7->from_int(3));
    CHECK(l == f7->from_int(6));
    auto frame = StandardFrame::standard(f7);
    SkewConfig cfg({frame.l1, frame.l2, frame.l3, l4_from_roots(frame, f7->from_int(2), f7->from_int(3))});
    CHECK(group_order_of(cfg) == 6);
  }
  SUBCASE("equal fifth roots of unity give the cyclic group of order 5") {
    Fel zeta = primitive_root_of_unity(5, QQ());
    auto frame = StandardFrame::standard(zeta.ctx());
    SkewConfig cfg({frame.l1, frame.l2, frame.l3, l4_from_roots(frame, zeta, zeta)});
    auto desc = group_analysis(cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_multiplicative);
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 5);
  }
  SUBCASE("inverse pair is rejected") {
    Fel zeta = primitive_root_of_unity(3, QQ());
    auto frame = StandardFrame::standard(zeta.ctx());
    CHECK_THROWS_AS(l4_from_roots(frame, zeta, zeta * zeta), std::invalid_argument);
    CHECK_THROWS_AS(tl_from_roots(zeta.ctx()->one(), zeta), std::invalid_argument);
    CHECK_THROWS_AS(tl_from_roots(zeta, zeta.ctx()->zero()), std::invalid_argument);
  }
}

TEST_CASE("multiplicative construction") {
  SUBCASE("m = 3 over GF(7), variant Z0") {
    auto nc = standard_construction_mult(3, FieldCtx::prime_field(7), MultVariant::z0);
    CHECK(nc.cfg.size() == 4);
    CHECK(nc.points.size() == 12);
    CHECK(nc.points.per_line_counts(4) == std::vector<int>{3, 3, 3, 3});
    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_multiplicative);
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 3);
    check_single_orbit(nc);
    CHECK(is_collinearly_complete(nc.cfg, nc.points).complete);
  }
  SUBCASE("m = 4 over the rationals moves to the 4th cyclotomic field") {
    auto nc = standard_construction_mult(4, QQ(), MultVariant::z0inf);
    CHECK(nc.cfg.size() == 6);
    CHECK(nc.points.size() == 24);
    CHECK(nc.cfg.ctx()->characteristic() == 0);
    CHECK(nc.cfg.ctx()->absolute_degree() == 2);
    CHECK(group_order_of(nc.cfg) == 4);
    check_single_orbit(nc);
  }
  SUBCASE("m = 5 over GF(11), variant Zinf") {
    auto nc = standard_construction_mult(5, FieldCtx::prime_field(11), MultVariant::zinf);
    CHECK(nc.cfg.size() == 6);
    CHECK(nc.points.size() == 30);
    CHECK(group_order_of(nc.cfg) == 5);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(standard_construction_mult(3, QQ(), MultVariant::z0inf),
                    std::invalid_argument);  // (-1)^3 != 1 in characteristic 0
    CHECK_THROWS_AS(standard_construction_mult(3, FieldCtx::prime_field(3), MultVariant::z0),
                    std::invalid_argument);  // characteristic divides m
    CHECK_THROWS_AS(standard_construction_mult(2, QQ(), MultVariant::z0),
                    std::invalid_argument);
  }
  SUBCASE("odd m is fine for Z0inf in characteristic 2") {
    auto nc = standard_construction_mult(3, FieldCtx::prime_field(2), MultVariant::z0inf);
    CHECK(nc.cfg.size() == 5);
    CHECK(nc.points.size() == 15);
    CHECK(group_order_of(nc.cfg) == 3);
  }
}

TEST_CASE("multiplicative cone identity at the secant points") {
  struct Pick {
    long m;
    FieldCtxPtr ctx;
  };
  std::vector<Pick> picks{{3, FieldCtx::prime_field(7)}, {4, QQ()}};
  for (const auto& pick : picks) {
    Fel u = primitive_root_of_unity(pick.m, pick.ctx);
    auto k = u.ctx();
    std::vector<Fel> up;
    Fel ui = k->one();
    for (long i = 0; i < pick.m; ++i) {
      up.push_back(ui);
      ui *= u;
    }
    bool minus_one_power_is_one = k->from_int(-1).pow(pick.m).is_one();
    std::mt19937_64 rng(23 + static_cast<unsigned long>(pick.m));
    for (int trial = 0; trial < 3; ++trial) {
      Fel a = k->random_element(rng, 20), b = k->random_element(rng, 20);
      Fel c = k->random_element(rng, 20), d = k->random_element(rng, 20);
      for (long kk = 0; kk < pick.m; ++kk) {
        // lambda_0 carries (0 : 1 : 0 : -u^k); the sign flips with the parity of m.
        Fel f0 = mult_F(up, a, b, c, d, k->zero(), k->one(), k->zero(), -up[kk]);
        Fel g0 = mult_G(up, a, b, c, d, k->zero(), k->one(), k->zero(), -up[kk]);
        if (minus_one_power_is_one)
          CHECK(f0 == g0);
        else
          CHECK(f0 == -g0);
        // lambda_inf carries (1 : 0 : -u^k : 0); no sign there.
        Fel fi = mult_F(up, a, b, c, d, k->one(), k->zero(), -up[kk], k->zero());
        Fel gi = mult_G(up, a, b, c, d, k->one(), k->zero(), -up[kk], k->zero());
        CHECK(fi == gi);
      }
    }
  }
}

TEST_CASE("additive construction") {
  SUBCASE("the full field GF(3)") {
    auto f3 = FieldCtx::prime_field(3);
    auto nc = standard_construction_add(additive_group_of_field(f3), f3);
    CHECK(nc.cfg.size() == 4);
    CHECK(nc.points.size() == 12);
    CHECK(nc.points.per_line_counts(4) == std::vector<int>{3, 3, 3, 3});
    const auto& census = nc.cfg.transversals();
    CHECK(census.count == TransversalSummary::Count::one);
    CHECK(census.multiplicity_two);
    REQUIRE(census.lines.size() == 1);
    CHECK(census.lines[0].same_line(ProjLine::from_forms_ints(f3, {0, 0, 1, 0}, {0, 0, 0, 1})));
    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_additive);
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 3);
    check_single_orbit(nc);
  }
  SUBCASE("the full field GF(4) gives an elementary abelian 2-group") {
    auto f2 = FieldCtx::prime_field(2);
    auto f4 = FieldCtx::extension(f2, poly::from_ints(f2, {1, 1, 1}));
    auto nc = standard_construction_add(additive_group_of_field(f4), f4);
    CHECK(nc.cfg.size() == 5);
    CHECK(nc.points.size() == 20);
    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_additive);
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 4);
    check_single_orbit(nc);
  }
  SUBCASE("a proper subgroup: the prime field inside GF(9)") {
    auto f3 = FieldCtx::prime_field(3);
    auto f9 = FieldCtx::extension(f3, poly::find_irreducible(f3, 2));
    std::vector<Fel> A{f9->from_int(0), f9->from_int(1), f9->from_int(2)};
    auto nc = standard_construction_add(A, f9);
    CHECK(nc.cfg.size() == 4);
    CHECK(nc.points.size() == 12);
    CHECK(group_order_of(nc.cfg) == 3);
  }
  SUBCASE("preconditions") {
    auto f2 = FieldCtx::prime_field(2);
    auto f5 = FieldCtx::prime_field(5);
    CHECK_THROWS_AS(standard_construction_add(additive_group_of_field(f2), f2),
                    std::invalid_argument);  // only two elements
    CHECK_THROWS_AS(
        standard_construction_add({f5->from_int(0), f5->from_int(1), f5->from_int(2)}, f5),
        std::invalid_argument);  // not closed under subtraction
    CHECK_THROWS_AS(
        standard_construction_add({QQ()->from_int(0), QQ()->from_int(1), QQ()->from_int(2)},
                                  QQ()),
        std::invalid_argument);  // characteristic zero
  }
}

TEST_CASE("additive cone identity at the tangent-line points") {
  auto f3 = FieldCtx::prime_field(3);
  auto f9 = FieldCtx::extension(f3, poly::find_irreducible(f3, 2));
  std::vector<Fel> A{f9->from_int(0), f9->from_int(1), f9->from_int(2)};
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    Fel a = f9->random_element(rng), b = f9->random_element(rng);
    Fel c = f9->random_element(rng), d = f9->random_element(rng);
    for (const Fel& i : A) {
      Fel f = add_F(A, a, b, c, d, f9->one(), i, f9->one(), f9->zero());
      Fel g = add_G(A, a, b, c, d, f9->one(), i, f9->one(), f9->zero());
      CHECK(f == g);
    }
  }
  // At the tangency point (0:1:0:0) the two cones differ: pick the apex so
  // that one product vanishes and the other cannot.
  Fel a = f9->one(), b = f9->one(), c = f9->gen(), d = f9->one();
  Fel f = add_F(A, a, b, c, d, f9->zero(), f9->one(), f9->zero(), f9->zero());
  Fel g = add_G(A, a, b, c, d, f9->zero(), f9->one(), f9->zero(), f9->zero());
  CHECK(f != g);
}

TEST_CASE("hopf spread") {
  SUBCASE("q = 3 covers P^3 exactly once") {
    auto nc = hopf_spread(3);
    CHECK(nc.cfg.size() == 10);
    CHECK(nc.points.size() == 40);
    CHECK(nc.points.per_line_counts(10) == std::vector<int>(10, 4));
    std::set<ProjPoint> seen;
    for (const auto& e : nc.points.entries()) seen.insert(e.point);
    REQUIRE(seen.size() == 40);  // no point sits on two spread lines
    auto k = nc.cfg.ctx();
    long missing = 0;
    auto probe = [&](const std::vector<Fel>& cs) {
      if (!seen.count(ProjPoint(cs))) ++missing;
    };
    for (mpz_class b = 0; b < 3; ++b)
      for (mpz_class c = 0; c < 3; ++c)
        for (mpz_class d = 0; d < 3; ++d)
          probe({k->one(), k->element_at(b), k->element_at(c), k->element_at(d)});
    for (mpz_class c = 0; c < 3; ++c)
      for (mpz_class d = 0; d < 3; ++d)
        probe({k->zero(), k->one(), k->element_at(c), k->element_at(d)});
    for (mpz_class d = 0; d < 3; ++d)
      probe({k->zero(), k->zero(), k->one(), k->element_at(d)});
    probe({k->zero(), k->zero(), k->zero(), k->one()});
    CHECK(missing == 0);

    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_multiplicative);
    CHECK(desc.transversals.count == TransversalSummary::Count::two);
    CHECK(desc.transversals.ext_ctx != nullptr);  // conjugate transversals
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 4);
    check_single_orbit(nc);
  }
  SUBCASE("q = 5") {
    auto nc = hopf_spread(5);
    CHECK(nc.cfg.size() == 26);
    CHECK(nc.points.size() == 156);
    CHECK(group_order_of(nc.cfg) == 6);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(hopf_spread(4), std::invalid_argument);
    CHECK_THROWS_AS(hopf_spread(15), std::invalid_argument);
    CHECK_THROWS_AS(hopf_spread(1), std::invalid_argument);
  }
}

TEST_CASE("grid configurations") {
  SUBCASE("3x3 over GF(5)") {
    auto nc = grid_config(3, 3, FieldCtx::prime_field(5));
    CHECK(nc.cfg.size() == 3);
    CHECK(nc.points.size() == 9);
    CHECK(nc.points.per_line_counts(3) == std::vector<int>{3, 3, 3});
    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::trivial);
    CHECK(desc.transversals.count == TransversalSummary::Count::infinite_family);
    auto orbits = orbit_decomposition(nc.cfg, nc.points);
    CHECK(static_cast<long>(orbits.size()) == nc.expected.orbits);
    for (const auto& o : orbits) CHECK(o.size() == 3);
  }
  SUBCASE("3x4 over the rationals") {
    auto nc = grid_config(3, 4, QQ());
    CHECK(nc.cfg.size() == 4);
    CHECK(nc.points.size() == 12);
    auto orbits = orbit_decomposition(nc.cfg, nc.points);
    CHECK(orbits.size() == 3);
    for (const auto& o : orbits) CHECK(o.size() == 4);
  }
  SUBCASE("a = 1 gives collinear points") {
    auto nc = grid_config(1, 4, QQ());
    REQUIRE(nc.points.size() == 4);
    auto pts = nc.points.points();
    ProjLine carrier = line_through(pts[0], pts[1]);
    for (const auto& p : pts) CHECK(carrier.contains(p));
  }
  SUBCASE("ruling capacity over a finite field") {
    CHECK_THROWS_AS(grid_config(5, 3, FieldCtx::prime_field(3)), std::invalid_argument);
    auto nc = grid_config(4, 4, FieldCtx::prime_field(3));  // exactly q+1 per ruling
    CHECK(nc.points.size() == 16);
  }
  SUBCASE("the configuration side needs three lines") {
    CHECK_THROWS_AS(grid_config(3, 2, QQ()), std::invalid_argument);
  }
}

TEST_CASE("the twelve-point example on four lines") {
  SUBCASE("over the rationals: conjugate transversal pair, group of order 3") {
    auto nc = named_example(ExampleLabel::d4, QQ());
    CHECK(nc.cfg.size() == 4);
    CHECK(nc.points.size() == 12);
    CHECK(nc.points.per_line_counts(4) == std::vector<int>{3, 3, 3, 3});
    const auto& census = nc.cfg.transversals();
    CHECK(census.count == TransversalSummary::Count::two);
    CHECK(census.ext_ctx != nullptr);
    CHECK(group_order_of(nc.cfg) == 3);
    check_single_orbit(nc);
    // The quadric through the first three lines picks out the nine points
    // away from the diagonal line.
    const Quadric& q = nc.cfg.quadric(0, 1, 2);
    int on_q = 0;
    for (const auto& e : nc.points.entries())
      if (q.contains(e.point)) ++on_q;
    CHECK(on_q == 9);
    for (const auto& e : nc.points.entries())
      if (e.line == 3) CHECK(!q.contains(e.point));
  }
  SUBCASE("over GF(3): tangency, one transversal of multiplicity two") {
    auto f3 = FieldCtx::prime_field(3);
    auto nc = named_example(ExampleLabel::d4, f3);
    const auto& census = nc.cfg.transversals();
    CHECK(census.count == TransversalSummary::Count::one);
    CHECK(census.multiplicity_two);
    REQUIRE(census.lines.size() == 1);
    CHECK(census.lines[0].same_line(
        ProjLine::from_forms_ints(f3, {1, -1, 0, 1}, {1, 1, 1, 0})));
    auto desc = group_analysis(nc.cfg);
    CHECK(desc.status == GroupDescription::Status::abelian_additive);
    REQUIRE(desc.order.has_value());
    CHECK(*desc.order == 3);
  }
  SUBCASE("transversals are rational exactly when p = 1 mod 3") {
    auto nc7 = named_example(ExampleLabel::d4, FieldCtx::prime_field(7));
    CHECK(nc7.cfg.transversals().count == TransversalSummary::Count::two);
    CHECK(nc7.cfg.transversals().ext_ctx == nullptr);
    CHECK(group_order_of(nc7.cfg) == 3);
    auto nc5 = named_example(ExampleLabel::d4, FieldCtx::prime_field(5));
    CHECK(nc5.cfg.transversals().ext_ctx != nullptr);
    CHECK(group_order_of(nc5.cfg) == 3);
    auto nc2 = named_example(ExampleLabel::d4, FieldCtx::prime_field(2));
    CHECK(nc2.cfg.transversals().ext_ctx != nullptr);
    CHECK(group_order_of(nc2.cfg) == 3);
  }
}

TEST_CASE("the 48-point and 120-point root-system orbits") {
  SUBCASE("48 points on 8 lines") {
    auto nc = named_example(ExampleLabel::f4, QQ());
    CHECK(nc.cfg.size() == 8);
    CHECK(nc.points.size() == 48);
    CHECK(nc.points.per_line_counts(8) == std::vector<int>(8, 6));
    CHECK(group_order_of(nc.cfg) == 6);
    CHECK(is_collinearly_complete(nc.cfg, nc.points).complete);
  }
  SUBCASE("120 points on 12 lines") {
    auto nc = named_example(ExampleLabel::h4, QQ());
    CHECK(nc.cfg.size() == 12);
    CHECK(nc.points.size() == 120);
    CHECK(nc.points.per_line_counts(12) == std::vector<int>(12, 10));
    CHECK(group_order_of(nc.cfg) == 10);
  }
  SUBCASE("a finite field without the needed root is rejected") {
    CHECK_THROWS_AS(named_example(ExampleLabel::h4, FieldCtx::prime_field(7)),
                    std::invalid_argument);
  }
}

TEST_CASE("the 80-point configuration without transversals") {
  auto nc = named_example(ExampleLabel::penrose80, QQ());
  CHECK(nc.cfg.size() == 10);
  CHECK(nc.points.size() == 80);
  CHECK(nc.points.per_line_counts(10) == std::vector<int>(10, 8));
  CHECK(nc.cfg.transversals().count == TransversalSummary::Count::none);
  CHECK(is_collinearly_complete(nc.cfg, nc.points).complete);
  auto desc = group_analysis(nc.cfg);
  CHECK(desc.status == GroupDescription::Status::nonabelian_finite);
  REQUIRE(desc.order.has_value());
  CHECK(*desc.order % 8 == 0);
  SUBCASE("needs a root of t^2 - t + 1") {
    CHECK_THROWS_AS(named_example(ExampleLabel::penrose80, FieldCtx::prime_field(5)),
                    std::invalid_argument);
  }
}

TEST_CASE("label round trip") {
  for (auto lab : {ExampleLabel::d4, ExampleLabel::h4, ExampleLabel::f4, ExampleLabel::penrose80}) {
    auto back = parse_example_label(example_label_str(lab));
    REQUIRE(back.has_value());
    CHECK(*back == lab);
  }
  CHECK(!parse_example_label("E8").has_value());
}
