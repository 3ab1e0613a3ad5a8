#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skewlines/field.hpp"
#include "skewlines/poly.hpp"
#include "skewlines/projgeom.hpp"

#include <algorithm>

using namespace skewlines;

namespace {

FieldCtxPtr Q() { return FieldCtx::rationals(); }

ProjPoint pt(const FieldCtxPtr& ctx, std::vector<long> c) {
  return ProjPoint::from_ints(ctx, c);
}

// Standard skew triple plus its two transversals.
struct Standard {
  FieldCtxPtr ctx = Q();
  ProjLine l1 = ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0});   // {y, z}
  ProjLine l2 = ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 0, 1, -1}); // {x-y, z-w}
  ProjLine l3 = ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 0, 0, 1});   // {x, w}
  ProjLine t1 = ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 1, 0, 0});   // {x, y}
  ProjLine t2 = ProjLine::from_forms_ints(ctx, {0, 0, 1, 0}, {0, 0, 0, 1});   // {z, w}

  // Fourth line z = t w, x = l y; skew to the triple whenever l, t != 0.
  ProjLine l4(long tv, long lv) const {
    return ProjLine::from_forms_ints(ctx, {0, 0, 1, -tv}, {1, -lv, 0, 0});
  }
};

bool meets(const ProjLine& a, const ProjLine& b) {
  return a.same_line(b) || intersect_lines(a, b).has_value();
}

}  // namespace

TEST_CASE("points canonicalize and compare") {
  auto ctx = Q();
  ProjPoint a = pt(ctx, {2, 4, 6, 8});
  ProjPoint b = pt(ctx, {1, 2, 3, 4});
  CHECK(a == b);
  CHECK(a.str() == "(1:2:3:4)");
  CHECK(pt(ctx, {0, 3, 6, 0}).str() == "(0:1:2:0)");
  CHECK_THROWS_AS(ProjPoint(std::vector<Fel>{ctx->zero(), ctx->zero()}), std::exception);
  CHECK(pt(ctx, {0, 1}) != pt(ctx, {1, 0}));
  CHECK(pt(ctx, {1, 0, 0, 0}) < pt(ctx, {1, 1, 0, 0}));

  auto gf5 = FieldCtx::prime_field(5);
  CHECK(ProjPoint::from_ints(gf5, {2, 4}) == ProjPoint::from_ints(gf5, {1, 2}));
}

TEST_CASE("line through two points recovers defining forms") {
  auto ctx = Q();
  ProjLine l1 = line_through(pt(ctx, {1, 0, 0, 0}), pt(ctx, {0, 0, 0, 1}));
  CHECK(l1.same_line(ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0})));
  CHECK(l1.contains(pt(ctx, {3, 0, 0, 7})));
  CHECK_FALSE(l1.contains(pt(ctx, {1, 1, 0, 0})));

  ProjLine l2 = line_through(pt(ctx, {0, 0, 1, 1}), pt(ctx, {1, 1, 0, 0}));
  CHECK(l2.same_line(ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 0, 1, -1})));

  ProjLine l = line_through(pt(ctx, {1, 2, 3, 4}), pt(ctx, {1, 2, 3, 5}));
  CHECK(l.same_line(ProjLine::from_forms_ints(ctx, {2, -1, 0, 0}, {3, 0, -1, 0})));

  CHECK_THROWS_AS(line_through(pt(ctx, {1, 2, 3, 4}), pt(ctx, {2, 4, 6, 8})), std::exception);
  CHECK_THROWS_AS(ProjLine::from_forms_ints(ctx, {1, 1, 0, 0}, {2, 2, 0, 0}), std::exception);
}

TEST_CASE("chart coordinates invert parametrization") {
  auto ctx = Q();
  ProjLine l1 = ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0});
  // The chart is pinned so that (1:0:0:0) is (1:0) and (0:0:0:1) is (0:1).
  CHECK(l1.chart0() == pt(ctx, {1, 0, 0, 0}));
  CHECK(l1.chart1() == pt(ctx, {0, 0, 0, 1}));
  auto c = l1.chart_coords(pt(ctx, {1, 0, 0, 5}));
  REQUIRE(c.has_value());
  CHECK(*c == pt(ctx, {1, 5}));
  CHECK(l1.point_at(*c) == pt(ctx, {1, 0, 0, 5}));
  CHECK_FALSE(l1.chart_coords(pt(ctx, {1, 1, 0, 0})).has_value());

  ProjLine l = line_through(pt(ctx, {1, 2, 3, 4}), pt(ctx, {1, 2, 3, 5}));
  ProjPoint p = l.point_at(ctx->from_int(2), ctx->from_int(-3));
  auto cc = l.chart_coords(p);
  REQUIRE(cc.has_value());
  CHECK(l.point_at(*cc) == p);
}

TEST_CASE("plane through a point and a line") {
  auto ctx = Q();
  ProjLine xy = ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 1, 0, 0});
  CHECK(plane_span(pt(ctx, {1, 0, 0, 0}), xy).form() ==
        Plane(std::vector<Fel>{ctx->zero(), ctx->one(), ctx->zero(), ctx->zero()}).form());

  ProjLine l1 = ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0});
  Plane h = plane_span(pt(ctx, {1, 1, 1, 1}), l1);
  CHECK(h.contains(pt(ctx, {1, 1, 1, 1})));
  CHECK(h.contains(pt(ctx, {1, 0, 0, 0})));
  CHECK(h.contains(pt(ctx, {0, 0, 0, 1})));
  // y - z up to scale
  CHECK(h.eval(pt(ctx, {0, 1, 0, 0})) == -h.eval(pt(ctx, {0, 0, 1, 0})));

  ProjLine l2 = ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 0, 1, -1});
  Plane h2 = plane_span(pt(ctx, {0, 1, 0, 0}), l2);
  CHECK(h2.form() == Plane(std::vector<Fel>{ctx->zero(), ctx->zero(), ctx->one(),
                                            -ctx->one()}).form());

  CHECK_THROWS_AS(plane_span(pt(ctx, {1, 0, 0, 0}), l1), std::exception);
}

TEST_CASE("line meets plane in a unique point") {
  auto ctx = Q();
  ProjLine l1 = ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, 0});
  Plane h({ctx->one(), ctx->zero(), ctx->zero(), -ctx->one()});  // x - w
  CHECK(meet_line_plane(l1, h) == pt(ctx, {1, 0, 0, 1}));

  ProjLine l2 = ProjLine::from_forms_ints(ctx, {1, -1, 0, 0}, {0, 0, 1, -1});
  Plane w0({ctx->zero(), ctx->zero(), ctx->zero(), ctx->one()});
  CHECK(meet_line_plane(l2, w0) == pt(ctx, {1, 1, 0, 0}));

  Plane y0({ctx->zero(), ctx->one(), ctx->zero(), ctx->zero()});
  CHECK_THROWS_AS(meet_line_plane(l1, y0), std::exception);  // line inside the plane
}

TEST_CASE("skewness and line intersections") {
  Standard s;
  CHECK(are_skew(s.l1, s.l2));
  CHECK(are_skew(s.l1, s.l3));
  CHECK(are_skew(s.l2, s.l3));
  CHECK(are_skew(s.t1, s.t2));
  CHECK_FALSE(are_skew(s.l1, s.t1));

  auto p = intersect_lines(s.l1, s.t1);
  REQUIRE(p.has_value());
  CHECK(*p == pt(s.ctx, {0, 0, 0, 1}));
  CHECK(s.l1.contains(*p));
  CHECK(s.t1.contains(*p));

  CHECK_FALSE(intersect_lines(s.l1, s.l2).has_value());
  CHECK_THROWS_AS(intersect_lines(s.l1, s.l1), std::exception);

  // Transversal incidences of the standard frame.
  CHECK(*intersect_lines(s.l1, s.t2) == pt(s.ctx, {1, 0, 0, 0}));
  CHECK(*intersect_lines(s.l2, s.t1) == pt(s.ctx, {0, 0, 1, 1}));
  CHECK(*intersect_lines(s.l2, s.t2) == pt(s.ctx, {1, 1, 0, 0}));
  CHECK(*intersect_lines(s.l3, s.t1) == pt(s.ctx, {0, 0, 1, 0}));
  CHECK(*intersect_lines(s.l3, s.t2) == pt(s.ctx, {0, 1, 0, 0}));
}

TEST_CASE("quadric through the standard skew triple is xz - yw") {
  Standard s;
  Quadric q = quadric_through_skew_triple(s.l1, s.l2, s.l3);
  std::vector<Fel> expect(10, s.ctx->zero());
  expect[2] = s.ctx->one();        // xz
  expect[6] = -s.ctx->one();       // yw
  CHECK(q.coeffs() == expect);
  CHECK(q.is_smooth());
  CHECK(q.contains_line(s.l1));
  CHECK(q.contains_line(s.l2));
  CHECK(q.contains_line(s.l3));
  CHECK(q.contains_line(s.t1));
  CHECK(q.contains_line(s.t2));
  CHECK_FALSE(q.contains_line(s.l4(2, 3)));
  CHECK(q.contains(pt(s.ctx, {1, 0, 0, 1})));
  CHECK_FALSE(q.contains(pt(s.ctx, {1, 1, 1, 0})));

  // Meeting lines admit no unique smooth quadric.
  CHECK_THROWS_AS(quadric_through_skew_triple(s.l1, s.t1, s.l3), std::exception);
}

TEST_CASE("quadric through a skew triple with a nondiagonal answer") {
  auto ctx = Q();
  ProjLine l1 = ProjLine::from_forms_ints(ctx, {1, 0, 0, 0}, {0, 1, 0, -1});
  ProjLine l2 = ProjLine::from_forms_ints(ctx, {0, 0, 1, 0}, {1, 0, 0, -1});
  ProjLine l3 = ProjLine::from_forms_ints(ctx, {0, 1, 0, 0}, {0, 0, 1, -1});
  Quadric q = quadric_through_skew_triple(l1, l2, l3);
  // xy + xz + yz - xw - yw - zw + w^2
  std::vector<long> expect_ints = {0, 1, 1, -1, 0, 1, -1, 0, -1, 1};
  std::vector<Fel> expect;
  for (long v : expect_ints) expect.push_back(ctx->from_int(v));
  CHECK(q.coeffs() == expect);
  CHECK(q.is_smooth());
}

TEST_CASE("smoothness detection across characteristics") {
  auto ctx = Q();
  auto coeff = [&](const FieldCtxPtr& f, std::vector<long> v) {
    std::vector<Fel> c;
    for (long x : v) c.push_back(f->from_int(x));
    return Quadric(std::move(c));
  };
  CHECK(coeff(ctx, {0, 0, 1, 0, 0, 0, -1, 0, 0, 0}).is_smooth());   // xz - yw
  CHECK(coeff(ctx, {1, 0, 0, 0, 1, 0, 0, 1, 0, 1}).is_smooth());    // sum of squares
  CHECK_FALSE(coeff(ctx, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}).is_smooth());  // x^2
  CHECK_FALSE(coeff(ctx, {0, 1, 0, 0, 0, 0, 0, 1, 0, 0}).is_smooth());  // xy + z^2 (cone point)

  auto gf2 = FieldCtx::prime_field(2);
  CHECK(coeff(gf2, {0, 0, 1, 0, 0, 0, 1, 0, 0, 0}).is_smooth());        // xz + yw
  CHECK_FALSE(coeff(gf2, {0, 1, 0, 0, 0, 0, 0, 1, 0, 0}).is_smooth());  // xy + z^2
  // x^2 + yw + z^2 is smooth in odd characteristic but singular in char 2.
  CHECK(coeff(FieldCtx::prime_field(3), {1, 0, 0, 0, 0, 0, 1, 1, 0, 0}).is_smooth());
  CHECK_FALSE(coeff(gf2, {1, 0, 0, 0, 0, 0, 1, 1, 0, 0}).is_smooth());
}

TEST_CASE("ruling transversal through a quadric point") {
  Standard s;
  Quadric q = quadric_through_skew_triple(s.l1, s.l2, s.l3);

  ProjLine a = ruling_transversal_through(q, s.l1, s.l2, s.l3, pt(s.ctx, {0, 0, 0, 1}));
  CHECK(a.same_line(s.t1));
  ProjLine b = ruling_transversal_through(q, s.l1, s.l2, s.l3, pt(s.ctx, {1, 0, 0, 0}));
  CHECK(b.same_line(s.t2));

  ProjLine c = ruling_transversal_through(q, s.l1, s.l2, s.l3, pt(s.ctx, {1, 0, 0, 1}));
  CHECK(q.contains_line(c));
  CHECK(meets(c, s.l1));
  CHECK(meets(c, s.l2));
  CHECK(meets(c, s.l3));
  CHECK(*intersect_lines(c, s.l2) == pt(s.ctx, {1, 1, 1, 1}));
  CHECK(*intersect_lines(c, s.l3) == pt(s.ctx, {0, 1, 1, 0}));

  CHECK_THROWS_AS(ruling_transversal_through(q, s.l1, s.l2, s.l3, pt(s.ctx, {1, 1, 1, 0})),
                  std::exception);
}

TEST_CASE("quadruple with two rational transversals") {
  Standard s;
  ProjLine l4 = s.l4(2, 3);
  auto res = transversals_of_quadruple(s.l1, s.l2, s.l3, l4);
  CHECK(res.kind == TransversalKind::two);
  CHECK_FALSE(res.needs_extension);
  REQUIRE(res.lines.size() == 2);
  bool got_t1 = false, got_t2 = false;
  for (const auto& t : res.lines) {
    got_t1 = got_t1 || t.same_line(s.t1);
    got_t2 = got_t2 || t.same_line(s.t2);
    CHECK(meets(t, s.l1));
    CHECK(meets(t, s.l2));
    CHECK(meets(t, s.l3));
    CHECK(meets(t, l4));
  }
  CHECK(got_t1);
  CHECK(got_t2);
}

TEST_CASE("quadruple with a line inside the quadric has infinitely many transversals") {
  Standard s;
  // z = 2w, 2x = y lies on xz - yw.
  ProjLine l4 = ProjLine::from_forms_ints(s.ctx, {0, 0, 1, -2}, {2, -1, 0, 0});
  auto res = transversals_of_quadruple(s.l1, s.l2, s.l3, l4);
  CHECK(res.kind == TransversalKind::infinite_many);
  CHECK(res.lines.empty());
}

TEST_CASE("quadruple with a double transversal") {
  // Mutually tangent configuration over GF(3).
  auto gf3 = FieldCtx::prime_field(3);
  ProjLine l1 = ProjLine::from_forms_ints(gf3, {1, 0, 0, 0}, {0, 1, 0, -1});
  ProjLine l2 = ProjLine::from_forms_ints(gf3, {0, 0, 1, 0}, {1, 0, 0, -1});
  ProjLine l3 = ProjLine::from_forms_ints(gf3, {0, 1, 0, 0}, {0, 0, 1, -1});
  ProjLine l4 = ProjLine::from_forms_ints(gf3, {1, -1, 0, 0}, {0, 1, -1, 0});
  auto res = transversals_of_quadruple(l1, l2, l3, l4);
  CHECK(res.kind == TransversalKind::one_double);
  REQUIRE(res.lines.size() == 1);
  ProjLine expect = ProjLine::from_forms_ints(gf3, {1, -1, 0, 1}, {1, 1, 1, 0});
  CHECK(res.lines[0].same_line(expect));
  for (const auto* l : {&l1, &l2, &l3, &l4}) CHECK(meets(res.lines[0], *l));
}

TEST_CASE("quadruple needing a quadratic extension") {
  Standard s;
  // Restriction of xz - yw to this line is s^2 + t^2, irreducible over Q.
  ProjLine l4 = line_through(pt(s.ctx, {1, 0, 1, 0}), pt(s.ctx, {0, 1, 0, -1}));
  REQUIRE(are_skew(l4, s.l1));
  REQUIRE(are_skew(l4, s.l2));
  REQUIRE(are_skew(l4, s.l3));

  auto res = transversals_of_quadruple(s.l1, s.l2, s.l3, l4);
  CHECK(res.kind == TransversalKind::two);
  CHECK(res.needs_extension);
  CHECK(res.lines.empty());
  REQUIRE(res.ext_modulus.has_value());
  REQUIRE(res.ext_modulus->size() == 3);
  CHECK((*res.ext_modulus)[0] == s.ctx->one());
  CHECK((*res.ext_modulus)[1] == s.ctx->zero());
  CHECK((*res.ext_modulus)[2] == s.ctx->one());

  auto lifted = transversals_of_quadruple(s.l1, s.l2, s.l3, l4, true);
  CHECK(lifted.kind == TransversalKind::two);
  CHECK(lifted.needs_extension);
  REQUIRE(lifted.ext_ctx != nullptr);
  REQUIRE(lifted.lines.size() == 2);
  ProjLine e1 = s.l1.embed(lifted.ext_ctx), e2 = s.l2.embed(lifted.ext_ctx),
           e3 = s.l3.embed(lifted.ext_ctx), e4 = l4.embed(lifted.ext_ctx);
  for (const auto& t : lifted.lines) {
    CHECK(meets(t, e1));
    CHECK(meets(t, e2));
    CHECK(meets(t, e3));
    CHECK(meets(t, e4));
  }
  CHECK_FALSE(lifted.lines[0].same_line(lifted.lines[1]));
}

TEST_CASE("quadruple over a finite field where roots live upstairs") {
  auto gf3 = FieldCtx::prime_field(3);
  ProjLine l1 = ProjLine::from_forms_ints(gf3, {0, 1, 0, 0}, {0, 0, 1, 0});
  ProjLine l2 = ProjLine::from_forms_ints(gf3, {1, -1, 0, 0}, {0, 0, 1, -1});
  ProjLine l3 = ProjLine::from_forms_ints(gf3, {1, 0, 0, 0}, {0, 0, 0, 1});
  // Same span as the rational extension example, reduced mod 3; the
  // restriction s^2 + t^2 stays irreducible because -1 is a non-square.
  ProjLine l4 = line_through(ProjPoint::from_ints(gf3, {1, 0, 1, 0}),
                             ProjPoint::from_ints(gf3, {0, 1, 0, -1}));
  auto res = transversals_of_quadruple(l1, l2, l3, l4, true);
  CHECK(res.kind == TransversalKind::two);
  CHECK(res.needs_extension);
  REQUIRE(res.ext_ctx != nullptr);
  CHECK(res.ext_ctx->size() == 9);
  REQUIRE(res.lines.size() == 2);
  for (const auto& t : res.lines) {
    CHECK(meets(t, l1.embed(res.ext_ctx)));
    CHECK(meets(t, l2.embed(res.ext_ctx)));
    CHECK(meets(t, l3.embed(res.ext_ctx)));
    CHECK(meets(t, l4.embed(res.ext_ctx)));
  }
}

TEST_CASE("cross ratio follows the pinned convention") {
  auto ctx = Q();
  auto p1 = [&](long a, long b) { return pt(ctx, {a, b}); };

  // chi((t:1),(1:1),(0:1),(1:0)) = t
  for (long t : {5L, -2L, 7L}) {
    Fel v = cross_ratio({p1(t, 1), p1(1, 1), p1(0, 1), p1(1, 0)});
    CHECK(v == ctx->from_int(t));
  }
  // With this ordering the affine quadruple (0, 1, oo, u) maps to (u-1)/u.
  Fel v = cross_ratio({p1(0, 1), p1(1, 1), p1(1, 0), p1(4, 1)});
  CHECK(v == ctx->from_mpq(mpq_class(3, 4)));

  CHECK_THROWS_AS(cross_ratio({p1(0, 1), p1(0, 1), p1(1, 0), p1(4, 1)}), std::exception);

  // Invariance under a projectivity of the line.
  auto apply = [&](long a, long b, long c, long d, const ProjPoint& p) {
    return ProjPoint({ctx->from_int(a) * p[0] + ctx->from_int(b) * p[1],
                      ctx->from_int(c) * p[0] + ctx->from_int(d) * p[1]});
  };
  std::array<ProjPoint, 4> pts = {p1(3, 1), p1(1, 2), p1(-1, 1), p1(1, 0)};
  Fel before = cross_ratio(pts);
  std::array<ProjPoint, 4> moved = {apply(2, 3, 1, 4, pts[0]), apply(2, 3, 1, 4, pts[1]),
                                    apply(2, 3, 1, 4, pts[2]), apply(2, 3, 1, 4, pts[3])};
  CHECK(cross_ratio(moved) == before);
}

TEST_CASE("cross ratio of collinear points in space") {
  Standard s;
  // Points (a:0:0:b) on the first standard line act through the chart (a:b).
  std::array<ProjPoint, 4> pts = {pt(s.ctx, {5, 0, 0, 1}), pt(s.ctx, {1, 0, 0, 1}),
                                  pt(s.ctx, {0, 0, 0, 1}), pt(s.ctx, {1, 0, 0, 0})};
  CHECK(cross_ratio(s.l1, pts) == s.ctx->from_int(5));
  std::array<ProjPoint, 4> bad = {pt(s.ctx, {5, 0, 0, 1}), pt(s.ctx, {1, 0, 0, 1}),
                                  pt(s.ctx, {1, 0, 0, 0}), pt(s.ctx, {0, 1, 0, 0})};
  CHECK_THROWS_AS(cross_ratio(s.l1, bad), std::exception);
}

TEST_CASE("projection from a point to a plane") {
  auto ctx = Q();
  Plane w0({ctx->zero(), ctx->zero(), ctx->zero(), ctx->one()});

  auto img = project_from_point(pt(ctx, {0, 0, 0, 1}), w0,
                                {pt(ctx, {1, 2, 3, 4}), pt(ctx, {0, 1, 1, 0})});
  REQUIRE(img.size() == 2);
  CHECK(img[0] == pt(ctx, {1, 2, 3}));
  CHECK(img[1] == pt(ctx, {0, 1, 1}));  // already in the plane: fixed

  auto img2 = project_from_point(pt(ctx, {1, 1, 1, 1}), w0, {pt(ctx, {1, 2, 2, 1})});
  CHECK(img2[0] == pt(ctx, {0, 1, 1}));

  // Distinct points on a common line through the center collapse together.
  auto img3 = project_from_point(pt(ctx, {1, 1, 1, 1}), w0,
                                 {pt(ctx, {1, 3, 5, 7}), pt(ctx, {1, 2, 3, 4})});
  CHECK(img3[0] == img3[1]);

  CHECK_THROWS_AS(project_from_point(pt(ctx, {1, 0, 0, 0}), w0, {pt(ctx, {1, 2, 3, 4})}),
                  std::exception);
  CHECK_THROWS_AS(project_from_point(pt(ctx, {0, 0, 0, 1}), w0, {pt(ctx, {0, 0, 0, 1})}),
                  std::exception);
}

TEST_CASE("embedding carries incidence into an extension") {
  auto gf5 = FieldCtx::prime_field(5);
  auto gf25 = FieldCtx::extension(gf5, poly::from_ints(gf5, {2, 0, 1}));  // x^2 + 2
  ProjLine l = ProjLine::from_forms_ints(gf5, {0, 1, 0, 0}, {0, 0, 1, 0});
  ProjLine le = l.embed(gf25);
  CHECK(le.contains(ProjPoint::from_ints(gf5, {1, 0, 0, 3}).embed(gf25)));
  ProjPoint moved = le.point_at(gf25->gen(), gf25->one());
  CHECK(le.contains(moved));
  CHECK_FALSE(l.same_line(ProjLine::from_forms_ints(gf5, {1, 0, 0, 0}, {0, 0, 1, 0})));
}
