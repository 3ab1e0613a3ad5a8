#pragma once

#include "skewlines/groupoid.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skewlines {

// Three skew lines in standard position together with the two standard
// transversals: the shared stage for the parametric fourth-line families.
struct StandardFrame {
  ProjLine l1, l2, l3;  // {y,z}, {x-y,z-w}, {x,w}
  ProjLine t1, t2;      // {x,y}, {z,w}

  static StandardFrame standard(const FieldCtxPtr& ctx);
};

// What a construction promises about its distinguished point set. Consumers
// (tests, the CLI) compare computed reality against these numbers.
struct Expectation {
  long orbits = 1;    // groupoid orbits covering Z
  long per_line = 0;  // points of Z on each configuration line
  std::optional<mpz_class> group_order;
  std::string group_shape;  // "trivial", "cyclic", "elementary abelian", ...
  std::optional<std::pair<long, long>> geproci_type;
  bool half_grid = false;
};

struct NamedConfig {
  SkewConfig cfg;
  PointSet points;
  std::string label;
  Expectation expected;
};

// Fourth line through (0:0:t:1) on T1 and (l:1:0:0) on T2, cut out by
// {z - t w, x - l y}. Throws std::invalid_argument naming the violated
// condition: t in {0,1}, l in {0,1}, or lt = 1 (the line would lie on the
// quadric through L1, L2, L3, collapsing the group).
ProjLine l4_from_lt(const StandardFrame& frame, const Fel& t, const Fel& l);

// The parameters (t, l) realizing prescribed generator multipliers
// alpha = 1/(lt) and beta = t(1-l)/(t-1):
//   t = (alpha beta - 1) / (alpha beta - alpha),  l = (beta - 1) / (alpha beta - 1).
// Requires alpha != 1, beta != 1 and alpha beta not in {0, 1}; these are
// exactly the conditions making (t, l) admissible for l4_from_lt.
std::pair<Fel, Fel> tl_from_roots(const Fel& alpha, const Fel& beta);

// Fourth line whose two-transversal group is generated by the multipliers
// alpha and beta; same preconditions as tl_from_roots.
ProjLine l4_from_roots(const StandardFrame& frame, const Fel& alpha, const Fel& beta);

enum class MultVariant { z0, zinf, z0inf };

// Cyclic half grids on the quadric xz - yw: the m ruling lines
// V_i = {u^i x - y, u^i w - z} for a primitive m-th root of unity u, joined
// by the secant line lambda_0 = {x,z} (variant z0), lambda_inf = {y,w}
// (variant zinf), or both (variant z0inf, which needs (-1)^m = 1). The point
// set is the grid points q_ij = (1 : u^i : u^{i+j} : u^j) plus the points
// (0:1:0:-u^i) on lambda_0 and/or (1:0:-u^i:0) on lambda_inf. Expected: a
// single orbit with m points per line and cyclic group of order m. When the
// given field has no primitive m-th root the construction moves to the
// smallest extension that does (cyclotomic over the rationals).
NamedConfig standard_construction_mult(long m, const FieldCtxPtr& ctx, MultVariant variant);

// Elementary abelian half grids from a finite additive subgroup A of the
// field: ruling lines V_i = {ix - y, iw - z} for i in A plus the tangent
// line lambda = {w, x - z}, carrying the |A|(|A|+1) points
// q_ij = (j : ij : i : 1) and (1 : i : 1 : 0). The lone transversal {z,w}
// has multiplicity two and the group is A itself (elementary abelian).
// A must be handed over explicitly so subspaces of GF(p^s) can be used.
NamedConfig standard_construction_add(const std::vector<Fel>& A, const FieldCtxPtr& ctx);

// Convenience: the full additive group of a finite field context.
std::vector<Fel> additive_group_of_field(const FieldCtxPtr& ctx);

// The q^2 + 1 fibers of the Hopf map over K = GF(q), q odd. With n the
// least quadratic non-residue of K and J = K[alpha], alpha^2 = n, the fiber
// through (a:b:c:d) is spanned by (a:b:c:d) and (nb:a:nd:c). The fibers form
// a full spread: the point set is all of P^3(K), covered exactly once, a
// single orbit with q+1 points per line, and the group is cyclic of order
// q+1 (the transversals live over J).
NamedConfig hopf_spread(long q);

// An (a,b)-grid on xz - yw: the configuration is b lines of one ruling, the
// partner curve is a lines of the other ruling, and the point set is the ab
// intersection points. The group is trivial and the points fall into a
// orbits (one per partner line). Finite fields admit only q+1 lines per
// ruling; asking for more is an error. Requires b >= 3 so the configuration
// is a valid skew family.
NamedConfig grid_config(long a, long b, const FieldCtxPtr& ctx);

enum class ExampleLabel { d4, h4, f4, penrose80 };

// The exceptional configurations, embedded as verbatim data:
//   d4        4 lines, 12 points, works over any field;
//   h4        12 lines over a field with a primitive 5th root of unity;
//   f4        8 lines over a field with a primitive 3rd root of unity;
//   penrose80 10 lines over a field with a root of t^2 - t + 1.
// For h4/f4 the point set is the orbit of the documented seed (1:0:0:-1);
// for penrose80 no seed is documented, so the first chart point on the
// first line whose orbit closes at 80 points is used (deterministic scan).
// When the handed context lacks the needed root, the rationals are extended
// by the appropriate cyclotomic modulus; finite fields must contain the
// root already.
NamedConfig named_example(ExampleLabel label, const FieldCtxPtr& ctx);

std::string example_label_str(ExampleLabel label);
std::optional<ExampleLabel> parse_example_label(const std::string& s);

}  // namespace skewlines
