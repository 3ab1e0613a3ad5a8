#pragma once

#include "skewlines/field.hpp"
#include "skewlines/linalg.hpp"
#include "skewlines/projgeom.hpp"

#include <array>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewlines {

// Projectivity between the fixed charts of two configuration lines, stored as
// a canonically scaled 2x2 matrix (row-major) plus the word of elementary
// maps that produced it, first applied first.
struct GMap {
  int src = 0;
  int dst = 0;
  std::array<Fel, 4> mat;
  std::vector<std::array<int, 3>> word;

  static GMap from_matrix(int src, int dst, std::array<Fel, 4> mat,
                          std::vector<std::array<int, 3>> word = {});
  const FieldCtxPtr& ctx() const { return mat[0].ctx(); }
  ProjPoint apply(const ProjPoint& chart_pt) const;
  GMap inverse() const;
  GMap embed(const FieldCtxPtr& ext) const;
  Fel trace() const { return mat[0] + mat[3]; }
  Fel det() const { return mat[0] * mat[3] - mat[1] * mat[2]; }
  bool is_identity() const;
  bool same_map(const GMap& o) const;
  std::string str() const;
};

// second(first(x)); requires first.dst == second.src.
GMap compose(const GMap& second, const GMap& first);

struct GMapLess {
  bool operator()(const GMap& a, const GMap& b) const;
};

struct TransversalSummary {
  enum class Count { none, one, two, infinite_family };
  Count count = Count::none;
  // Meaningful only when count == one: the quadric through any three of the
  // lines is tangent to (or contains) every other line at its transversal
  // point, making the lone transversal count double.
  bool multiplicity_two = false;
  // The transversal lines; over ext_ctx when they are conjugate over the
  // base field, empty when count is none or infinite_family.
  std::vector<ProjLine> lines;
  FieldCtxPtr ext_ctx;  // null when the transversals are rational
  // The root field for conjugate candidates could not be constructed (the
  // irreducibility screen is inconclusive over deep characteristic-0
  // extensions); group_analysis then falls back to closure enumeration.
  bool undecided = false;
  std::string count_str() const;
};

// A configuration of s >= 3 pairwise skew lines with cached triple quadrics,
// cached elementary maps, and a cached transversal census.
class SkewConfig {
 public:
  explicit SkewConfig(std::vector<ProjLine> lines);

  const FieldCtxPtr& ctx() const { return lines_[0].ctx(); }
  int size() const { return static_cast<int>(lines_.size()); }
  const ProjLine& line(int i) const;
  const std::vector<ProjLine>& lines() const { return lines_; }
  const Quadric& quadric(int i, int j, int k) const;
  const TransversalSummary& transversals() const;
  const GMap& elementary(int i, int j, int k) const;

 private:
  std::vector<ProjLine> lines_;
  mutable std::map<std::array<int, 3>, Quadric> quadrics_;
  mutable std::map<std::array<int, 3>, GMap> maps_;
  mutable std::optional<TransversalSummary> census_;
};

// The elementary map f(i->j through k): p on L_i goes to the intersection of
// L_j with the plane spanned by p and L_k, expressed in the lines' charts.
GMap f_map(const SkewConfig& cfg, int i, int j, int k);

// Generating set of the stabilizer group of L_i inside the groupoid: the
// two-step round trips (i->j->i) and three-step cycles (i->j->k->i) over all
// admissible index choices, deduplicated after canonical scaling.
std::vector<GMap> generators_of_gi(const SkewConfig& cfg, int i);

// Projective order of a chart self-map: 1 for the identity, the field
// characteristic for non-semisimple maps (infinite in characteristic 0), and
// the multiplicative order of the eigenvalue ratio otherwise, computed
// without leaving the base field. nullopt means provably infinite.
std::optional<long> element_order(const GMap& g);

struct GroupDescription {
  enum class Status {
    trivial,
    abelian_multiplicative,
    abelian_additive,
    nonabelian_finite,
    nonabelian_capped,
    infinite
  };
  Status status = Status::trivial;
  TransversalSummary transversals;
  // Multipliers (multiplicative case) or translation amounts (additive case)
  // of the group generators in the chart aligned with the transversals.
  std::vector<Fel> generators;
  std::optional<mpz_class> order;  // set exactly when the group is known finite
  mpz_class lower_bound = 0;       // elements seen when the closure was capped
  std::optional<GMap> witness;     // an element of infinite order, when found
  std::vector<GMap> elements;      // full element list for nonabelian_finite
  std::string note;
  std::string status_str() const;
};

// Decision pipeline for the group of the configuration: transversal census
// first (infinite family => trivial; two => multiplicative in the chart
// sending the transversal points to 0 and infinity; one of multiplicity 2 =>
// additive), then closure enumeration with exact-order refinements.
GroupDescription group_analysis(const SkewConfig& cfg, long cap = 2000);

struct PointEntry {
  int line = 0;
  ProjPoint point;
  bool operator==(const PointEntry& o) const { return line == o.line && point == o.point; }
  bool operator<(const PointEntry& o) const {
    if (line != o.line) return line < o.line;
    return point < o.point;
  }
};

// Points supported on configuration lines, sorted and deduplicated.
class PointSet {
 public:
  PointSet() = default;
  PointSet(const SkewConfig& cfg, std::vector<PointEntry> entries);
  const std::vector<PointEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool contains(const PointEntry& e) const;
  std::vector<int> per_line_counts(int s) const;
  std::vector<ProjPoint> points() const;

 private:
  std::vector<PointEntry> entries_;
};

// Closure of a seed point under every elementary map; nullopt when the
// closure exceeds cap points.
std::optional<PointSet> orbit(const SkewConfig& cfg, const PointEntry& seed, long cap);

struct CompletenessCertificate {
  bool complete = true;
  std::array<int, 3> triple{0, 0, 0};
  std::optional<PointEntry> witness;  // its transversal leaks out of the set
  std::optional<PointEntry> missing;  // the point that would have to be added
  std::string str() const;
};

// A set is collinearly complete when every transversal through one of its
// points and two other configuration lines meets the remaining lines inside
// the set.
CompletenessCertificate is_collinearly_complete(const SkewConfig& cfg, const PointSet& z);

// Partition of a collinearly complete set into orbits; throws
// std::invalid_argument carrying the certificate text otherwise.
std::vector<PointSet> orbit_decomposition(const SkewConfig& cfg, const PointSet& z);

// Searches for a projectivity of P^3 carrying one orbit onto the other:
// collinear (transversal) orbits are matched through maps of the common
// carrier lines, other orbits through frames of five linearly general points
// grown from three points on the first line. Returns the 4x4 matrix mapping
// o1 onto o2, or nullopt when no candidate survives set verification.
std::optional<linalg::Mat> projective_equivalence_of_orbits(const SkewConfig& cfg,
                                                            const PointSet& o1,
                                                            const PointSet& o2);

}  // namespace skewlines
