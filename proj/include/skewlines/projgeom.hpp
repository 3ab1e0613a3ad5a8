#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skewlines/field.hpp"
#include "skewlines/linalg.hpp"
#include "skewlines/poly.hpp"

namespace skewlines {

// Homogeneous point in P^1, P^2 or P^3, stored with its first nonzero
// coordinate scaled to 1 so equality is plain coordinate comparison.
class ProjPoint {
 public:
  explicit ProjPoint(std::vector<Fel> coords);
  static ProjPoint from_ints(const FieldCtxPtr& ctx, const std::vector<long>& coords);

  const std::vector<Fel>& coords() const { return coords_; }
  const Fel& operator[](size_t i) const { return coords_[i]; }
  size_t size() const { return coords_.size(); }
  const FieldCtxPtr& ctx() const { return coords_[0].ctx(); }

  // Re-expresses the same point over an extension of its field.
  ProjPoint embed(const FieldCtxPtr& ext) const;

  bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const;
  std::string str() const;

 private:
  std::vector<Fel> coords_;
};

// A plane in P^3 given by one linear form, canonically scaled.
class Plane {
 public:
  explicit Plane(std::vector<Fel> form);
  const std::vector<Fel>& form() const { return form_; }
  Fel eval(const ProjPoint& p) const;
  bool contains(const ProjPoint& p) const { return eval(p).is_zero(); }

 private:
  std::vector<Fel> form_;
};

// A line in P^3 carrying both a span pair and a dual pair of linear forms,
// kept consistent. The span points fix the line's P^1 chart:
// chart0 is (1:0) and chart1 is (0:1).
class ProjLine {
 public:
  ProjLine(const ProjPoint& p, const ProjPoint& q);
  static ProjLine from_forms(std::vector<Fel> f0, std::vector<Fel> f1);
  static ProjLine from_forms_ints(const FieldCtxPtr& ctx, const std::vector<long>& f0,
                                  const std::vector<long>& f1);

  const ProjPoint& chart0() const { return span_[0]; }
  const ProjPoint& chart1() const { return span_[1]; }
  const std::array<std::vector<Fel>, 2>& forms() const { return forms_; }
  const FieldCtxPtr& ctx() const { return span_[0].ctx(); }

  bool contains(const ProjPoint& p) const;
  // The ambient point at chart coordinates (s:t), i.e. s*chart0 + t*chart1.
  ProjPoint point_at(const Fel& s, const Fel& t) const;
  ProjPoint point_at(const ProjPoint& chart_pt) const;
  // Chart coordinates of an ambient point on the line, or nullopt if off it.
  std::optional<ProjPoint> chart_coords(const ProjPoint& p) const;

  // Same point set, regardless of chart.
  bool same_line(const ProjLine& o) const;
  ProjLine embed(const FieldCtxPtr& ext) const;

 private:
  std::array<ProjPoint, 2> span_;
  std::array<std::vector<Fel>, 2> forms_;
};

// A quadric surface in P^3 stored as the 10 coefficients of its quadratic
// form, in lex monomial order x2, xy, xz, xw, y2, yz, yw, z2, zw, w2,
// canonically scaled. This representation works in every characteristic.
class Quadric {
 public:
  explicit Quadric(std::vector<Fel> coeffs);
  const std::vector<Fel>& coeffs() const { return coeffs_; }
  const FieldCtxPtr& ctx() const { return coeffs_[0].ctx(); }
  Fel eval(const ProjPoint& p) const;
  Fel eval(const linalg::Vec& v) const;
  bool contains(const ProjPoint& p) const { return eval(p).is_zero(); }
  bool contains_line(const ProjLine& l) const;
  bool is_smooth() const;

 private:
  std::vector<Fel> coeffs_;
};

ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
Plane plane_span(const ProjPoint& p, const ProjLine& l);
ProjPoint meet_line_plane(const ProjLine& l, const Plane& h);
bool are_skew(const ProjLine& a, const ProjLine& b);
// Common point of two lines in P^3, nullopt when skew. Throws if equal.
std::optional<ProjPoint> intersect_lines(const ProjLine& a, const ProjLine& b);

Quadric quadric_through_skew_triple(const ProjLine& l1, const ProjLine& l2,
                                    const ProjLine& l3);

// The line through p (a point of the quadric spanned by the skew triple)
// meeting l2 and l3; when p is on the quadric this is the ruling line
// transverse to l1, l2, l3 through p. Incidence with all three is asserted.
ProjLine ruling_transversal_through(const Quadric& q, const ProjLine& l1,
                                    const ProjLine& l2, const ProjLine& l3,
                                    const ProjPoint& p);

enum class TransversalKind { two, one_simple, one_double, infinite_many };

struct TransversalResult {
  TransversalKind kind = TransversalKind::infinite_many;
  // The transversal lines found (over ctx, or over ext_ctx after extension).
  std::vector<ProjLine> lines;
  // Set when the two transversal points are conjugate over a quadratic
  // extension of the base field rather than rational.
  bool needs_extension = false;
  std::optional<poly::Poly> ext_modulus;
  FieldCtxPtr ext_ctx;  // populated when an extension was constructed
};

// Transversal analysis of four pairwise skew lines: restricts the quadric
// through the first three to the fourth and classifies the root pattern.
// With auto_extend, irrational roots are realized over a quadratic extension;
// otherwise only the needed modulus is reported.
TransversalResult transversals_of_quadruple(const ProjLine& l1, const ProjLine& l2,
                                            const ProjLine& l3, const ProjLine& l4,
                                            bool auto_extend = false);

// Cross ratio of four distinct points of P^1, in the given order:
// ((a3 b1 - a1 b3)(a4 b2 - a2 b4)) / ((a3 b2 - a2 b3)(a4 b1 - a1 b4)).
Fel cross_ratio(const std::array<ProjPoint, 4>& pts);
// The same for four points on a line in P^3, via the line's chart.
Fel cross_ratio(const ProjLine& l, const std::array<ProjPoint, 4>& pts);

// Projection of points from center P onto the plane H, expressed in P^2
// coordinates through a fixed kernel basis of H. Points already on H map to
// themselves.
std::vector<ProjPoint> project_from_point(const ProjPoint& center, const Plane& h,
                                          const std::vector<ProjPoint>& pts);

}  // namespace skewlines
