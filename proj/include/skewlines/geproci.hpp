#pragma once

#include "skewlines/groupoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewlines {

// Default seed for every randomized certification entry point (CLI and
// library). Runs are reproducible: trial i derives its stream from
// (seed, i) only.
inline constexpr unsigned long long kDefaultSeed = 1729;

// Hilbert function values of a finite point set and their first differences.
struct HilbertProfile {
  std::vector<long> values;  // H(0), H(1), ... up to stabilization at count
  std::vector<long> h;       // h(t) = H(t) - H(t-1), h(0) = 1
  int n = 3;                 // ambient projective dimension
  long count = 0;
};

// dim of the degree-t piece of the homogeneous coordinate ring of the points:
// the rank of the (points x degree-t monomials) evaluation matrix.
// Points live in P^2 or P^3 and must be distinct.
long hilbert_function(const std::vector<ProjPoint>& pts, int t);

HilbertProfile h_vector(const std::vector<ProjPoint>& pts);

// The h-vector of a complete intersection of curves of degrees a and b in
// P^2: h(t) = #{(i,j) : 0 <= i < a, 0 <= j < b, i + j = t}.
std::vector<long> ci_h_vector(long a, long b);

// Certificate that ab points of P^2 are the transverse intersection of a
// degree-a and a degree-b curve. All stages are exact linear algebra; the
// zero-dimensionality of V(F,G) is certified through a resultant sample.
struct CiCertificate {
  bool certified = false;
  std::string reason;   // first failed stage when refuted
  std::vector<long> h;  // the observed h-vector
  long a = 0, b = 0;
};

CiCertificate ci_certificate(const std::vector<ProjPoint>& pts, long a, long b);

struct GeprociVerdict {
  enum class Status { geproci, not_geproci, inconclusive };
  enum class Classification { degenerate, grid, half_grid, nongrid_non_half_grid, unknown };

  long a = 0, b = 0;
  Status status = Status::inconclusive;
  Classification classification = Classification::unknown;
  int trials_requested = 0;
  int trials_used = 0;
  unsigned long long seed = 0;
  // Field the projections were drawn over; extension_degree > 1 records the
  // enlargement of a small finite base field.
  FieldCtxPtr work_ctx;
  int extension_degree = 1;
  std::vector<std::vector<long>> trial_h_vectors;
  std::string note;

  std::string status_str() const;
  std::string classification_str() const;
};

// Monte-Carlo geproci certification: `trials` seeded random centers are
// projected onto a fixed plane and each image is CI-certified. Certification
// is one-sided: a refutation is exact (the observed Hilbert function excess
// survives specialization), while "geproci" is certified only up to the
// recorded random choices. The optional support configuration enables the
// grid / half-grid classification (trivial group <=> grid, for a, b >= 3);
// without it only degeneracy is classified. Finite base fields are extended
// until they exceed 4(ab)^2 so that random centers avoid the bad locus;
// pass auto_extend = false to forbid that (small fields then error).
GeprociVerdict is_geproci(const std::vector<ProjPoint>& z, long a, long b, int trials,
                          unsigned long long seed = kDefaultSeed,
                          const SkewConfig* support = nullptr, bool auto_extend = true);

GeprociVerdict is_geproci(const SkewConfig& cfg, const PointSet& z, long a, long b, int trials,
                          unsigned long long seed = kDefaultSeed, bool auto_extend = true);

// Independent evaluation of collinear completeness and the geproci property,
// which must agree for a set with equal per-line counts on b >= 3 skew lines.
// Mutated sets (a point added or removed) are handled: the cardinality
// mismatch refutes the geproci side exactly.
struct ChgCheck {
  bool consistent = false;
  bool complete = false;
  GeprociVerdict verdict;
  std::string detail;
};

ChgCheck chg_crosscheck(const SkewConfig& cfg, const PointSet& z, int trials,
                        unsigned long long seed = kDefaultSeed);

}  // namespace skewlines
