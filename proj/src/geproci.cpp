#include "skewlines/geproci.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "skewlines/linalg.hpp"
#include "skewlines/poly.hpp"

namespace skewlines {

namespace {

// Exponent tuples of total degree t in nvars variables, in a fixed order.
void fill_monomials(int nvars, int t, int pos, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = t;
    out.push_back(cur);
    return;
  }
  for (int e = t; e >= 0; --e) {
    cur[pos] = e;
    fill_monomials(nvars, t - e, pos + 1, cur, out);
  }
}

std::vector<std::vector<int>> degree_monomials(int nvars, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  fill_monomials(nvars, t, 0, cur, out);
  return out;
}

// Number of degree-t monomials in x, y, z.
long plane_monomial_count(long t) { return (t + 2) * (t + 1) / 2; }

void validate_points(const std::vector<ProjPoint>& pts) {
  if (pts.empty()) throw std::invalid_argument("hilbert data requires at least one point");
  const size_t nv = pts[0].size();
  if (nv != 3 && nv != 4)
    throw std::invalid_argument("points must live in P^2 or P^3");
  std::set<ProjPoint> seen;
  for (const auto& p : pts) {
    if (p.size() != nv) throw std::invalid_argument("points of mixed ambient dimension");
    if (!p.ctx()->same_field(*pts[0].ctx()))
      throw std::invalid_argument("points over different fields");
    if (!seen.insert(p).second)
      throw std::invalid_argument("duplicate point: " + p.str());
  }
}

// Rows: points; columns: monomials evaluated at the point. Rescaling a
// representative rescales a whole row, so ranks are well defined.
linalg::Mat evaluation_matrix(const std::vector<ProjPoint>& pts,
                              const std::vector<std::vector<int>>& mons) {
  const FieldCtxPtr ctx = pts[0].ctx();
  const size_t nv = pts[0].size();
  int t = 0;
  for (int e : mons[0]) t += e;
  linalg::Mat m;
  m.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<std::vector<Fel>> pw(nv);
    for (size_t i = 0; i < nv; ++i) {
      pw[i].reserve(t + 1);
      pw[i].push_back(ctx->one());
      for (int e = 1; e <= t; ++e) pw[i].push_back(pw[i].back() * p[i]);
    }
    linalg::Vec row;
    row.reserve(mons.size());
    for (const auto& mon : mons) {
      Fel v = ctx->one();
      for (size_t i = 0; i < nv; ++i)
        if (mon[i] > 0) v = v * pw[i][mon[i]];
      row.push_back(v);
    }
    m.push_back(std::move(row));
  }
  return m;
}

long hilbert_rank(const std::vector<ProjPoint>& pts, int t) {
  return static_cast<long>(linalg::rank(
      evaluation_matrix(pts, degree_monomials(static_cast<int>(pts[0].size()), t))));
}

Fel eval_form(const linalg::Vec& coeffs, const std::vector<std::vector<int>>& mons,
              const std::array<Fel, 3>& at, const FieldCtxPtr& ctx) {
  int t = mons[0][0] + mons[0][1] + mons[0][2];
  std::array<std::vector<Fel>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(ctx->one());
    for (int e = 1; e <= t; ++e) pw[i].push_back(pw[i].back() * at[i]);
  }
  Fel acc = ctx->zero();
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    acc = acc + coeffs[k] * pw[0][mons[k][0]] * pw[1][mons[k][1]] * pw[2][mons[k][2]];
  }
  return acc;
}

// The i-th element of a fixed enumeration of the field, used for
// deterministic scans (integers over characteristic zero).
Fel field_sample(const FieldCtxPtr& ctx, long i) {
  if (ctx->finite()) return ctx->element_at(i);
  return ctx->from_int(i);
}

// Coefficients of the substituted form F(x + c z, y + d z, z) over the same
// monomial basis.
linalg::Vec shift_xy_by_z(const linalg::Vec& coeffs, const std::vector<std::vector<int>>& mons,
                          const std::map<std::vector<int>, size_t>& index, const Fel& c,
                          const Fel& d, const FieldCtxPtr& ctx) {
  if (c.is_zero() && d.is_zero()) return coeffs;
  int t = mons[0][0] + mons[0][1] + mons[0][2];
  std::vector<Fel> cpw{ctx->one()}, dpw{ctx->one()};
  for (int e = 1; e <= t; ++e) {
    cpw.push_back(cpw.back() * c);
    dpw.push_back(dpw.back() * d);
  }
  auto binom = [&](int n, int r) {
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), n, r);
    return ctx->from_mpz(v);
  };
  linalg::Vec out(coeffs.size(), ctx->zero());
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const int i = mons[k][0], j = mons[k][1], kz = mons[k][2];
    for (int r = 0; r <= i; ++r)
      for (int s = 0; s <= j; ++s) {
        Fel term = coeffs[k] * binom(i, r) * cpw[i - r] * binom(j, s) * dpw[j - s];
        size_t at = index.at({r, s, kz + (i - r) + (j - s)});
        out[at] = out[at] + term;
      }
  }
  return out;
}

// F restricted to the pencil (x, y) = (1, t), as a polynomial in z.
std::vector<Fel> z_profile(const linalg::Vec& coeffs, const std::vector<std::vector<int>>& mons,
                           long deg, const Fel& t, const FieldCtxPtr& ctx) {
  std::vector<Fel> tp{ctx->one()};
  for (long e = 1; e <= deg; ++e) tp.push_back(tp.back() * t);
  std::vector<Fel> out(deg + 1, ctx->zero());
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    out[mons[k][2]] = out[mons[k][2]] + coeffs[k] * tp[mons[k][1]];
  }
  return out;
}

// Resultant of univariate f (degree a, f[a] != 0) and g (degree b) via the
// Sylvester determinant.
Fel sylvester_resultant(const std::vector<Fel>& f, const std::vector<Fel>& g, long a, long b,
                        const FieldCtxPtr& ctx) {
  const long n = a + b;
  linalg::Mat m(n, linalg::Vec(n, ctx->zero()));
  for (long r = 0; r < b; ++r)
    for (long c = 0; c <= a; ++c) m[r][r + c] = f[a - c];
  for (long r = 0; r < a; ++r)
    for (long c = 0; c <= b; ++c) m[b + r][r + c] = g[b - c];
  return linalg::det(std::move(m));
}

// Certifies that the degree-a form F and degree-b form G share no component,
// so that V(F, G) is a zero-dimensional scheme of degree ab. After moving
// both curves off the point (0:0:1), their resultant with respect to z is
// either identically zero (shared component) or homogeneous of degree ab in
// (x, y); sampling it at ab + 1 distinct pencil values decides which.
bool transverse_by_resultant(const linalg::Vec& fc, long a, const linalg::Vec& gc, long b,
                             const std::vector<std::vector<int>>& mons_a,
                             const std::vector<std::vector<int>>& mons_b,
                             const FieldCtxPtr& ctx) {
  const long samples = a * b + 1;
  const long scan = a + b + 1;
  if (ctx->finite() && ctx->size() < std::max(samples, scan))
    throw std::invalid_argument("field too small for the transversality check");

  std::optional<std::pair<Fel, Fel>> shift;
  for (long ci = 0; ci < scan && !shift; ++ci)
    for (long di = 0; di < scan && !shift; ++di) {
      Fel c = field_sample(ctx, ci), d = field_sample(ctx, di);
      std::array<Fel, 3> at{c, d, ctx->one()};
      if (!eval_form(fc, mons_a, at, ctx).is_zero() &&
          !eval_form(gc, mons_b, at, ctx).is_zero())
        shift = {c, d};
    }
  if (!shift) throw std::logic_error("no chart point off both curves");

  std::map<std::vector<int>, size_t> idx_a, idx_b;
  for (size_t k = 0; k < mons_a.size(); ++k) idx_a[mons_a[k]] = k;
  for (size_t k = 0; k < mons_b.size(); ++k) idx_b[mons_b[k]] = k;
  linalg::Vec fs = shift_xy_by_z(fc, mons_a, idx_a, shift->first, shift->second, ctx);
  linalg::Vec gs = shift_xy_by_z(gc, mons_b, idx_b, shift->first, shift->second, ctx);

  for (long s = 0; s < samples; ++s) {
    Fel t = field_sample(ctx, s);
    auto fz = z_profile(fs, mons_a, a, t, ctx);
    auto gz = z_profile(gs, mons_b, b, t, ctx);
    if (!sylvester_resultant(fz, gz, a, b, ctx).is_zero()) return true;
  }
  return false;
}

CiCertificate refuted(long a, long b, std::vector<long> h, std::string reason) {
  CiCertificate c;
  c.certified = false;
  c.a = a;
  c.b = b;
  c.h = std::move(h);
  c.reason = std::move(reason);
  return c;
}

}  // namespace

long hilbert_function(const std::vector<ProjPoint>& pts, int t) {
  validate_points(pts);
  if (t < 0) throw std::invalid_argument("degree must be nonnegative");
  return hilbert_rank(pts, t);
}

HilbertProfile h_vector(const std::vector<ProjPoint>& pts) {
  validate_points(pts);
  HilbertProfile prof;
  prof.n = static_cast<int>(pts[0].size()) - 1;
  prof.count = static_cast<long>(pts.size());
  for (int t = 0;; ++t) {
    prof.values.push_back(hilbert_rank(pts, t));
    if (prof.values.back() == prof.count) break;
    // Distinct points impose independent conditions from degree count - 1 on.
    if (t > prof.count) throw std::logic_error("hilbert function failed to stabilize");
  }
  prof.h.push_back(prof.values[0]);
  for (size_t t = 1; t < prof.values.size(); ++t)
    prof.h.push_back(prof.values[t] - prof.values[t - 1]);
  return prof;
}

std::vector<long> ci_h_vector(long a, long b) {
  if (a < 1 || b < a) throw std::invalid_argument("need 1 <= a <= b");
  std::vector<long> h(a + b - 1, 0);
  for (long i = 0; i < a; ++i)
    for (long j = 0; j < b; ++j) ++h[i + j];
  return h;
}

CiCertificate ci_certificate(const std::vector<ProjPoint>& pts, long a, long b) {
  if (a < 1 || b < a) throw std::invalid_argument("need 1 <= a <= b");
  validate_points(pts);
  if (pts[0].size() != 3) throw std::invalid_argument("complete intersections live in P^2");
  if (static_cast<long>(pts.size()) != a * b)
    throw std::invalid_argument("expected exactly a*b points");
  const FieldCtxPtr ctx = pts[0].ctx();

  HilbertProfile prof = h_vector(pts);
  auto H = [&](long t) {
    return t < static_cast<long>(prof.values.size()) ? prof.values[t] : prof.count;
  };

  if (prof.h != ci_h_vector(a, b)) return refuted(a, b, prof.h, "h-vector mismatch");

  const long dim_ia = plane_monomial_count(a) - H(a);
  const long expected_ia = (a < b) ? 1 : 2;
  if (dim_ia != expected_ia) return refuted(a, b, prof.h, "wrong count of degree-a curves");

  auto mons_a = degree_monomials(3, static_cast<int>(a));
  auto ker_a = linalg::kernel_basis(evaluation_matrix(pts, mons_a), mons_a.size(), ctx);
  if (ker_a.empty()) return refuted(a, b, prof.h, "no degree-a curve through the points");
  const linalg::Vec& f = ker_a[0];

  auto mons_b = degree_monomials(3, static_cast<int>(b));
  linalg::Mat eval_b = evaluation_matrix(pts, mons_b);
  auto ker_b = linalg::kernel_basis(eval_b, mons_b.size(), ctx);
  const long expected_ib = plane_monomial_count(b - a) + 1;
  if (static_cast<long>(ker_b.size()) != expected_ib)
    return refuted(a, b, prof.h, "wrong count of degree-b curves");

  // Degree-b multiples of f, spanned by f times each degree (b - a) monomial.
  std::map<std::vector<int>, size_t> idx_b;
  for (size_t k = 0; k < mons_b.size(); ++k) idx_b[mons_b[k]] = k;
  auto mons_ba = degree_monomials(3, static_cast<int>(b - a));
  linalg::Mat multiples;
  for (const auto& mon : mons_ba) {
    linalg::Vec row(mons_b.size(), ctx->zero());
    for (size_t k = 0; k < f.size(); ++k) {
      if (f[k].is_zero()) continue;
      std::vector<int> e{mons_a[k][0] + mon[0], mons_a[k][1] + mon[1], mons_a[k][2] + mon[2]};
      size_t at = idx_b.at(e);
      row[at] = row[at] + f[k];
    }
    multiples.push_back(std::move(row));
  }
  const size_t rank_f = linalg::rank(multiples);
  std::optional<linalg::Vec> g;
  for (const auto& cand : ker_b) {
    linalg::Mat probe = multiples;
    probe.push_back(cand);
    if (linalg::rank(std::move(probe)) == rank_f + 1) {
      g = cand;
      break;
    }
  }
  if (!g) return refuted(a, b, prof.h, "no degree-b curve independent of the degree-a one");

  if (!transverse_by_resultant(f, a, *g, b, mons_a, mons_b, ctx))
    return refuted(a, b, prof.h, "the two curves share a component");

  CiCertificate cert;
  cert.certified = true;
  cert.a = a;
  cert.b = b;
  cert.h = prof.h;
  return cert;
}

std::string GeprociVerdict::status_str() const {
  switch (status) {
    case Status::geproci: return "geproci";
    case Status::not_geproci: return "not-geproci";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string GeprociVerdict::classification_str() const {
  switch (classification) {
    case Classification::degenerate: return "degenerate";
    case Classification::grid: return "grid";
    case Classification::half_grid: return "half-grid";
    case Classification::nongrid_non_half_grid: return "nongrid-non-half-grid";
    case Classification::unknown: return "unknown";
  }
  return "?";
}

GeprociVerdict is_geproci(const std::vector<ProjPoint>& z, long a, long b, int trials,
                          unsigned long long seed, const SkewConfig* support,
                          bool auto_extend) {
  if (a < 1 || b < 1) throw std::invalid_argument("type degrees must be positive");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  validate_points(z);
  if (z[0].size() != 4) throw std::invalid_argument("geproci sets live in P^3");
  if (static_cast<long>(z.size()) != a * b)
    throw std::invalid_argument("cardinality mismatch: expected a*b points");
  const FieldCtxPtr base = z[0].ctx();

  GeprociVerdict v;
  v.a = a;
  v.b = b;
  v.seed = seed;
  v.trials_requested = trials;

  // Random projection centers must avoid the secant variety of Z and the
  // projection plane, so a finite base field is first extended until it has
  // more than 4 (ab)^2 elements.
  const mpz_class bound = 4 * mpz_class(a * b) * mpz_class(a * b);
  FieldCtxPtr work = base;
  if (base->finite() && base->size() <= bound) {
    if (!auto_extend)
      throw std::invalid_argument(
          "field too small for random projection centers; enable auto-extension");
    int e = 1;
    mpz_class s = base->size();
    while (s <= bound) {
      s *= base->size();
      ++e;
    }
    work = FieldCtx::extension(base, poly::find_irreducible(base, e), true);
    v.extension_degree = e;
  }
  v.work_ctx = work;

  std::vector<ProjPoint> zw;
  zw.reserve(z.size());
  for (const auto& p : z) zw.push_back(work->same_field(*base) ? p : p.embed(work));

  const Plane h({work->zero(), work->zero(), work->zero(), work->one()});
  const long ab = a * b;
  const long amin = std::min(a, b), bmax = std::max(a, b);

  bool refuted_trial = false;
  bool exhausted = false;
  for (int trial = 0; trial < trials && !refuted_trial; ++trial) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<unsigned long long>(trial + 1)));
    std::vector<ProjPoint> image;
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      std::vector<Fel> coords;
      for (int i = 0; i < 4; ++i) coords.push_back(work->random_element(rng));
      if (linalg::is_zero(coords)) continue;
      ProjPoint center{coords};
      if (h.contains(center)) continue;
      if (std::find(zw.begin(), zw.end(), center) != zw.end()) continue;
      image = project_from_point(center, h, zw);
      std::set<ProjPoint> distinct(image.begin(), image.end());
      ok = static_cast<long>(distinct.size()) == ab;
    }
    if (!ok) {
      exhausted = true;
      break;
    }
    CiCertificate cert = ci_certificate(image, amin, bmax);
    v.trial_h_vectors.push_back(cert.h);
    ++v.trials_used;
    if (!cert.certified) {
      refuted_trial = true;
      v.note = "trial " + std::to_string(trial) + ": " + cert.reason;
    }
  }

  if (exhausted) {
    v.status = GeprociVerdict::Status::inconclusive;
    v.note = "could not draw a projection center with a*b distinct images";
  } else if (refuted_trial) {
    v.status = GeprociVerdict::Status::not_geproci;
  } else {
    v.status = GeprociVerdict::Status::geproci;
  }

  // Planar sets are their own projections, so a certified planar set is a
  // degenerate (plane) complete intersection.
  linalg::Mat coords;
  for (const auto& p : z) coords.push_back(p.coords());
  const bool planar = linalg::rank(std::move(coords)) <= 3;
  if (planar) {
    v.classification = GeprociVerdict::Classification::degenerate;
    return v;
  }
  if (v.status != GeprociVerdict::Status::geproci || support == nullptr) return v;

  // With the supporting lines known, grid against half grid is decided by the
  // configuration's group: trivial group means grid (always a grid when a <= 2
  // or b <= 3).
  std::vector<long> counts(static_cast<size_t>(support->size()), 0);
  bool supported = support->size() == b;
  if (supported) {
    for (const auto& p : z) {
      bool found = false;
      for (int i = 0; i < support->size() && !found; ++i)
        if (support->line(i).contains(p)) {
          ++counts[i];
          found = true;
        }
      if (!found) supported = false;
    }
    for (long c : counts)
      if (c != a) supported = false;
  }
  if (!supported) return v;
  if (a <= 2 || b <= 3 ||
      group_analysis(*support).status == GroupDescription::Status::trivial)
    v.classification = GeprociVerdict::Classification::grid;
  else
    v.classification = GeprociVerdict::Classification::half_grid;
  return v;
}

GeprociVerdict is_geproci(const SkewConfig& cfg, const PointSet& z, long a, long b, int trials,
                          unsigned long long seed, bool auto_extend) {
  return is_geproci(z.points(), a, b, trials, seed, &cfg, auto_extend);
}

ChgCheck chg_crosscheck(const SkewConfig& cfg, const PointSet& z, int trials,
                        unsigned long long seed) {
  if (z.size() == 0) throw std::invalid_argument("empty point set");
  ChgCheck out;
  const long b = cfg.size();
  auto counts = z.per_line_counts(cfg.size());
  const long a = *std::max_element(counts.begin(), counts.end());
  out.complete = is_collinearly_complete(cfg, z).complete;

  if (static_cast<long>(z.size()) != a * b) {
    // Unequal per-line counts (a mutated set): no set with fewer than a
    // points on some line can be a union of a points on each of the b lines,
    // and a*b is the only cardinality compatible with the type, so the
    // geproci side is refuted exactly.
    out.verdict.a = a;
    out.verdict.b = b;
    out.verdict.seed = seed;
    out.verdict.trials_requested = trials;
    out.verdict.status = GeprociVerdict::Status::not_geproci;
    out.verdict.note = "cardinality: " + std::to_string(z.size()) + " points cannot form an [" +
                       std::to_string(a) + "," + std::to_string(b) + "] set";
  } else {
    out.verdict = is_geproci(z.points(), a, b, trials, seed, &cfg);
  }

  if (out.verdict.status == GeprociVerdict::Status::inconclusive) {
    out.consistent = false;
    out.detail = "geproci certification inconclusive";
    return out;
  }
  const bool gep = out.verdict.status == GeprociVerdict::Status::geproci;
  out.consistent = (out.complete == gep);
  std::ostringstream d;
  d << "collinearly complete: " << (out.complete ? "yes" : "no")
    << "; geproci: " << (gep ? "yes" : "no");
  if (!out.consistent) d << "; the completeness criterion and the projection test disagree";
  out.detail = d.str();
  return out;
}

}  // namespace skewlines
