#pragma once

#include "skewlines/groupoid.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skewlines {

// One admissible fourth line in standard coordinates, recorded through the
// pencil parameters (t, l) of its transversal intersection points together
// with the source pair of roots of unity (alpha, gamma) = (zeta^i, zeta^j).
struct ParamPair {
  Fel t, l;
  Fel alpha, gamma;
  long i = 0, j = 0;
};

// Partition of all n_m fourth lines into projective equivalence classes.
struct ClassPartition {
  long m = 0;
  long lambda = 0;  // number of admissible fourth lines
  std::vector<std::vector<ParamPair>> classes;
  long size6 = 0;   // classes with an involution swapping the transversals
  long size12 = 0;
  // True when computed over a finite field; such counts are reported but not
  // asserted against the characteristic-zero table.
  bool finite_mode = false;

  std::string signature() const;  // "6^a 12^b"
};

// Number of fourth lines meeting both standard transversals whose
// configuration group is cyclic of order m, in the given characteristic
// (0 for characteristic zero). Closed three-term formula over the prime
// factorization of m.
long n_m_formula(long m, long char_p = 0);

// The same count as a direct scan of (i, j) in Z_m x Z_m with i, j, i+j
// nonzero and gcd(i, j, m) = 1.
long n_m_bruteforce(long m);

// (t, l) = ((gamma-1)/(alpha gamma - 1), (alpha gamma - 1)/(alpha gamma - alpha))
// and its inverse recovery alpha = 1/(lt), gamma = l(1-t)/(l-1).
std::pair<Fel, Fel> tl_from_alpha_gamma(const Fel& alpha, const Fel& gamma);
std::pair<Fel, Fel> alpha_gamma_from_tl(const Fel& t, const Fel& l);

// The six parameter pairs reachable by a projectivity preserving both
// transversals. The underlying simultaneous cross-ratio table pairs each t'
// with 1/l'; entries here are stored as (t', l') with that inversion already
// applied.
std::array<std::pair<Fel, Fel>, 6> chi_set(const Fel& t, const Fel& l);

// Enumerates all n_m parameter pairs over a field containing a primitive
// m-th root of unity (the rationals are upgraded to the cyclotomic field)
// and merges them by union-find: first pairs whose chi-sets meet, then each
// (t, l) with its transversal swap (1/l, 1/t).
ClassPartition class_partition(long m, const FieldCtxPtr& ctx);

// (m^2 - 1) / 12, the class count for prime m >= 5.
long prime_class_count(long m);

// Lower bounds on the number of lines forcing a group larger than r:
// cubic uses 2 r(r-1)(r-2)/3 + 2, group_sum uses 2 (n_2 + ... + n_r) + 2.
enum class BoundVariant { cubic, group_sum };
mpz_class line_count_bound(long r, BoundVariant variant, long char_p = 0);

// For prime m (not the characteristic): the n_m fourth lines have pairwise
// distinct t parameters and pairwise distinct l parameters.
bool distinct_tl_check(long m, const FieldCtxPtr& ctx);

// Projectivity of P^3 carrying one four-line, two-transversal configuration
// onto another, found by matching the eight transversal intersection points
// under all line permutations with and without swapping the transversals.
std::optional<linalg::Mat> projective_equivalence_of_configs(const SkewConfig& a,
                                                             const SkewConfig& b);

}  // namespace skewlines
