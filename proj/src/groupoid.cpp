#include "skewlines/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace skewlines {

namespace {

using Mat2 = std::array<Fel, 4>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 inv2(const Mat2& a) {
  Fel d = a[0] * a[3] - a[1] * a[2];
  if (d.is_zero()) throw std::invalid_argument("2x2 matrix is singular");
  return {a[3] / d, -a[1] / d, -a[2] / d, a[0] / d};
}

// Matrix sending (1:0), (0:1), (1:1) to the three given distinct chart
// points: columns are the first two images scaled to sum to the third.
Mat2 std_to_triple(const std::array<ProjPoint, 3>& p) {
  Fel det = p[0][0] * p[1][1] - p[1][0] * p[0][1];
  if (det.is_zero()) throw std::invalid_argument("chart points must be distinct");
  Fel a = (p[2][0] * p[1][1] - p[1][0] * p[2][1]) / det;
  Fel b = (p[0][0] * p[2][1] - p[2][0] * p[0][1]) / det;
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("chart points must be distinct");
  return {a * p[0][0], b * p[1][0], a * p[0][1], b * p[1][1]};
}

Mat2 chart_map_3pt(const std::array<ProjPoint, 3>& src,
                   const std::array<ProjPoint, 3>& dst) {
  return mul2(std_to_triple(dst), inv2(std_to_triple(src)));
}

// Restriction of a quadric to a line's chart: coefficients (c20, c11, c02)
// of c20 s^2 + c11 st + c02 t^2, via the polarization identity (valid in
// every characteristic).
std::array<Fel, 3> restrict_quadric(const Quadric& q, const ProjLine& l) {
  Fel c20 = q.eval(l.chart0());
  Fel c02 = q.eval(l.chart1());
  std::vector<Fel> sum;
  sum.reserve(4);
  for (size_t r = 0; r < 4; ++r) sum.push_back(l.chart0()[r] + l.chart1()[r]);
  Fel c11 = q.eval(sum) - c20 - c02;
  return {c20, c11, c02};
}

bool restriction_has_double_root(const std::array<Fel, 3>& c, long characteristic) {
  const Fel& c20 = c[0];
  const Fel& c11 = c[1];
  const Fel& c02 = c[2];
  if (c20.is_zero() && c11.is_zero() && c02.is_zero()) return true;  // contained
  if (characteristic == 2) return c11.is_zero();
  const auto& ctx = c20.ctx();
  return (c11 * c11 - ctx->from_int(4) * c20 * c02).is_zero();
}

mpz_class mpz_pow(long base, long exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return out;
}

// u_k of the Lucas-style sequence u_0 = 2, u_1 = c, u_{m+n} = u_m u_n - u_{m-n}
// (so u_k = r^k + r^-k for either root r of x^2 - cx + 1).
Fel lucas_u(const Fel& c, const mpz_class& k) {
  const auto& ctx = c.ctx();
  Fel two = ctx->from_int(2);
  if (k == 0) return two;
  Fel um = two, um1 = c;  // (u_m, u_{m+1}) for the consumed bit prefix m
  size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    Fel even = um * um - two;
    Fel odd = um * um1 - c;
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      um = odd;
      um1 = um1 * um1 - two;
    } else {
      um = even;
      um1 = odd;
    }
  }
  return um;
}

}  // namespace

GMap GMap::from_matrix(int src, int dst, std::array<Fel, 4> mat,
                       std::vector<std::array<int, 3>> word) {
  std::vector<Fel> v(mat.begin(), mat.end());
  v = linalg::scale_canonical(std::move(v));
  GMap g;
  g.src = src;
  g.dst = dst;
  std::copy(v.begin(), v.end(), g.mat.begin());
  if (g.det().is_zero()) throw std::invalid_argument("chart map must be invertible");
  g.word = std::move(word);
  return g;
}

ProjPoint GMap::apply(const ProjPoint& p) const {
  if (p.size() != 2) throw std::invalid_argument("chart maps act on P^1 points");
  return ProjPoint({mat[0] * p[0] + mat[1] * p[1], mat[2] * p[0] + mat[3] * p[1]});
}

GMap GMap::inverse() const {
  std::vector<std::array<int, 3>> w;
  w.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    w.push_back({(*it)[1], (*it)[0], (*it)[2]});
  return from_matrix(dst, src, {mat[3], -mat[1], -mat[2], mat[0]}, std::move(w));
}

GMap GMap::embed(const FieldCtxPtr& ext) const {
  return from_matrix(src, dst,
                     {ext->embed(mat[0]), ext->embed(mat[1]), ext->embed(mat[2]),
                      ext->embed(mat[3])},
                     word);
}

bool GMap::is_identity() const {
  return src == dst && mat[1].is_zero() && mat[2].is_zero() && mat[0] == mat[3];
}

bool GMap::same_map(const GMap& o) const {
  return src == o.src && dst == o.dst && mat == o.mat;
}

std::string GMap::str() const {
  std::ostringstream os;
  os << "L" << src << "->L" << dst << " [[" << mat[0].str() << "," << mat[1].str()
     << "],[" << mat[2].str() << "," << mat[3].str() << "]]";
  return os.str();
}

GMap compose(const GMap& second, const GMap& first) {
  if (first.dst != second.src)
    throw std::invalid_argument("composition needs matching endpoints");
  std::vector<std::array<int, 3>> w = first.word;
  w.insert(w.end(), second.word.begin(), second.word.end());
  return GMap::from_matrix(first.src, second.dst, mul2(second.mat, first.mat),
                           std::move(w));
}

bool GMapLess::operator()(const GMap& a, const GMap& b) const {
  if (a.src != b.src) return a.src < b.src;
  if (a.dst != b.dst) return a.dst < b.dst;
  for (size_t i = 0; i < 4; ++i)
    if (a.mat[i] != b.mat[i]) return a.mat[i] < b.mat[i];
  return false;
}

std::string TransversalSummary::count_str() const {
  switch (count) {
    case Count::none: return "none";
    case Count::one: return "one";
    case Count::two: return "two";
    case Count::infinite_family: return "infinite";
  }
  return "?";
}

SkewConfig::SkewConfig(std::vector<ProjLine> lines) : lines_(std::move(lines)) {
  if (lines_.size() < 3)
    throw std::invalid_argument("a configuration needs at least 3 lines");
  for (size_t i = 0; i < lines_.size(); ++i) {
    if (!lines_[i].ctx()->same_field(*lines_[0].ctx()))
      throw std::invalid_argument("configuration lines must share one field");
    for (size_t j = i + 1; j < lines_.size(); ++j) {
      if (!are_skew(lines_[i], lines_[j])) {
        std::ostringstream os;
        os << "lines " << i << " and " << j << " are not skew";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

const ProjLine& SkewConfig::line(int i) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("line index out of range");
  return lines_[static_cast<size_t>(i)];
}

const Quadric& SkewConfig::quadric(int i, int j, int k) const {
  std::array<int, 3> key = {i, j, k};
  std::sort(key.begin(), key.end());
  if (key[0] == key[1] || key[1] == key[2])
    throw std::invalid_argument("quadric needs three distinct lines");
  auto it = quadrics_.find(key);
  if (it == quadrics_.end())
    it = quadrics_
             .emplace(key, quadric_through_skew_triple(line(key[0]), line(key[1]),
                                                       line(key[2])))
             .first;
  return it->second;
}

const GMap& SkewConfig::elementary(int i, int j, int k) const {
  if (i == j || j == k || i == k)
    throw std::invalid_argument("elementary map needs distinct indices");
  std::array<int, 3> key = {i, j, k};
  auto it = maps_.find(key);
  if (it != maps_.end()) return it->second;

  const ProjLine& li = line(i);
  const ProjLine& lj = line(j);
  const ProjLine& lk = line(k);
  const auto& ctx = li.ctx();
  std::array<ProjPoint, 3> charts = {ProjPoint({ctx->one(), ctx->zero()}),
                                     ProjPoint({ctx->zero(), ctx->one()}),
                                     ProjPoint({ctx->one(), ctx->one()})};
  std::array<ProjPoint, 3> images = {charts[0], charts[0], charts[0]};
  for (size_t t = 0; t < 3; ++t) {
    ProjPoint p = li.point_at(charts[t]);
    ProjPoint q = meet_line_plane(lj, plane_span(p, lk));
    auto c = lj.chart_coords(q);
    if (!c) throw std::logic_error("projected point must land on the target line");
    images[t] = *c;
  }
  GMap g = GMap::from_matrix(i, j, std_to_triple(images), {{i, j, k}});
  return maps_.emplace(key, std::move(g)).first->second;
}

const TransversalSummary& SkewConfig::transversals() const {
  if (census_) return *census_;
  TransversalSummary ts;
  int s = size();
  const Quadric& q = quadric(0, 1, 2);

  int j0 = -1;
  for (int j = 3; j < s; ++j) {
    if (!q.contains_line(line(j))) {
      j0 = j;
      break;
    }
  }
  if (j0 < 0) {
    // Every line lies on the quadric through the first three, so the whole
    // opposite ruling consists of transversals.
    ts.count = TransversalSummary::Count::infinite_family;
    census_ = std::move(ts);
    return *census_;
  }

  std::vector<ProjLine> candidates;
  FieldCtxPtr ext;
  try {
    TransversalResult tr =
        transversals_of_quadruple(line(0), line(1), line(2), line(j0), true);
    candidates = std::move(tr.lines);
    ext = tr.ext_ctx;
  } catch (const std::domain_error&) {
    // Square decisions are unavailable over this field; leave the census
    // undecided rather than guessing.
    ts.count = TransversalSummary::Count::none;
    ts.undecided = true;
    census_ = std::move(ts);
    return *census_;
  }

  std::vector<ProjLine> others;  // lines whose incidence must be checked
  for (int r = 0; r < s; ++r) {
    if (r == 0 || r == 1 || r == 2 || r == j0) continue;
    if (q.contains_line(line(r))) continue;  // opposite-ruling candidates meet it
    others.push_back(ext ? line(r).embed(ext) : line(r));
  }
  std::vector<ProjLine> survivors;
  for (const auto& t : candidates) {
    bool ok = true;
    for (const auto& lr : others) {
      if (!intersect_lines(t, lr).has_value()) {
        ok = false;
        break;
      }
    }
    if (ok) survivors.push_back(t);
  }

  if (survivors.empty()) {
    ts.count = TransversalSummary::Count::none;
  } else if (survivors.size() == 2) {
    ts.count = TransversalSummary::Count::two;
    ts.ext_ctx = ext;
  } else {
    ts.count = TransversalSummary::Count::one;
    ts.ext_ctx = ext;
    // The lone transversal counts double when the census quadric is tangent
    // to (or contains) every remaining line at its transversal point; as the
    // transversal lies on the quadric, a double root is automatically the
    // incidence point.
    bool mult2 = true;
    long p = ctx()->characteristic();
    for (int r = 3; r < s && mult2; ++r) {
      if (q.contains_line(line(r))) continue;
      mult2 = restriction_has_double_root(restrict_quadric(q, line(r)), p);
    }
    ts.multiplicity_two = mult2;
  }
  // Deterministic transversal order, so downstream charts are reproducible.
  std::sort(survivors.begin(), survivors.end(), [](const ProjLine& a, const ProjLine& b) {
    if (a.chart0() != b.chart0()) return a.chart0() < b.chart0();
    return a.chart1() < b.chart1();
  });
  ts.lines = std::move(survivors);
  census_ = std::move(ts);
  return *census_;
}

GMap f_map(const SkewConfig& cfg, int i, int j, int k) { return cfg.elementary(i, j, k); }

std::vector<GMap> generators_of_gi(const SkewConfig& cfg, int i) {
  if (i < 0 || i >= cfg.size()) throw std::invalid_argument("line index out of range");
  int s = cfg.size();
  std::vector<GMap> out;
  std::set<GMap, GMapLess> seen;
  auto add = [&](GMap g) {
    if (seen.insert(g).second) out.push_back(std::move(g));
  };
  // Two-step round trips i -> j -> i, out through L_k and back through L_l.
  for (int j = 0; j < s; ++j) {
    if (j == i) continue;
    for (int k = 0; k < s; ++k) {
      if (k == i || k == j) continue;
      for (int l = 0; l < s; ++l) {
        if (l == i || l == j) continue;
        add(compose(cfg.elementary(j, i, l), cfg.elementary(i, j, k)));
      }
    }
  }
  // Three-step cycles i -> j -> k -> i with a free middle pivot.
  for (int j = 0; j < s; ++j) {
    if (j == i) continue;
    for (int k = 0; k < s; ++k) {
      if (k == i || k == j) continue;
      for (int l = 0; l < s; ++l) {
        if (l == j || l == k) continue;
        add(compose(cfg.elementary(k, i, j),
                    compose(cfg.elementary(j, k, l), cfg.elementary(i, j, k))));
      }
    }
  }
  return out;
}

std::optional<long> element_order(const GMap& g) {
  if (g.src != g.dst) throw std::invalid_argument("order needs a self-map");
  if (g.is_identity()) return 1;
  const auto& ctx = g.ctx();
  Fel tr = g.trace();
  Fel dt = g.det();
  long p = ctx->characteristic();
  Fel delta = tr * tr - ctx->from_int(4) * dt;
  if (delta.is_zero()) {
    // One repeated eigenvalue but not scalar: unipotent up to scale.
    if (p > 0) return p;
    return std::nullopt;
  }
  // Semisimple: the order is the multiplicative order of the eigenvalue
  // ratio r, detected through u_n = r^n + r^-n = tr(g^n)^2/det(g^n) - 2
  // without leaving the base field (u_n = 2 iff r^n = 1).
  Fel c = tr * tr / dt - ctx->from_int(2);
  if (p > 0) {
    // The ratio lives in the quadratic extension, so its order divides q^2-1.
    mpz_class n = ctx->size() * ctx->size() - 1;
    mpz_class o = n;
    for (const auto& [prime, mult] : factor_mpz(n)) {
      for (unsigned e = 0; e < mult; ++e) {
        mpz_class trial = o / prime;
        if (lucas_u(c, trial) == ctx->from_int(2)) o = trial;
        else break;
      }
    }
    if (!o.fits_slong_p()) throw std::domain_error("element order exceeds long");
    return o.get_si();
  }
  // Characteristic 0: a root of unity of order m inside a quadratic
  // extension of this field forces phi(m) <= 2*degree, leaving finitely many
  // candidates; no candidate means provably infinite order.
  long dbound = 2L * ctx->absolute_degree();
  long mmax = 2 * dbound * dbound + 2;
  for (long m = 2; m <= mmax; ++m) {
    if (euler_phi(m) > dbound) continue;
    if (lucas_u(c, m) == ctx->from_int(2)) return m;
  }
  return std::nullopt;
}

std::string GroupDescription::status_str() const {
  switch (status) {
    case Status::trivial: return "trivial";
    case Status::abelian_multiplicative: return "abelian-multiplicative";
    case Status::abelian_additive: return "abelian-additive";
    case Status::nonabelian_finite: return "nonabelian-finite";
    case Status::nonabelian_capped: return "nonabelian-capped";
    case Status::infinite: return "infinite";
  }
  return "?";
}

namespace {

// Conjugate of a generator matrix into the basis whose columns are the two
// given chart points; used with transversal incidences as basis points.
Mat2 conjugate(const Mat2& m, const ProjPoint& col0, const ProjPoint& col1) {
  Mat2 b = {col0[0], col1[0], col0[1], col1[1]};
  return mul2(inv2(b), mul2(m, b));
}

void flatten_to_prime(const Fel& a, std::vector<Fel>& out) {
  if (a.ctx()->kind() == FieldKind::extension) {
    for (const auto& c : a.coeffs()) flatten_to_prime(c, out);
    return;
  }
  out.push_back(a);
}

// Binary quadratic form whose roots are the fixed points of the map, used to
// test whether other group elements preserve that point pair.
std::array<Fel, 3> fixed_pair_form(const Mat2& m) {
  return {m[2], m[3] - m[0], -m[1]};
}

bool preserves_pair(const std::array<Fel, 3>& f, const Mat2& h) {
  const Fel& A = f[0];
  const Fel& B = f[1];
  const Fel& C = f[2];
  Fel two = A.ctx()->from_int(2);
  Fel a2 = A * h[0] * h[0] + B * h[0] * h[2] + C * h[2] * h[2];
  Fel b2 = two * A * h[0] * h[1] + B * (h[0] * h[3] + h[1] * h[2]) + two * C * h[2] * h[3];
  Fel c2 = A * h[1] * h[1] + B * h[1] * h[3] + C * h[3] * h[3];
  return (a2 * B - A * b2).is_zero() && (a2 * C - A * c2).is_zero() &&
         (b2 * C - B * c2).is_zero();
}

GroupDescription closure_analysis(const SkewConfig& cfg, long cap, GroupDescription gd) {
  std::vector<GMap> gens;
  for (auto& g : generators_of_gi(cfg, 0)) {
    if (!g.is_identity()) gens.push_back(std::move(g));
  }
  if (gens.empty()) {
    gd.status = GroupDescription::Status::trivial;
    gd.order = 1;
    return gd;
  }
  bool char0 = cfg.ctx()->characteristic() == 0;

  std::set<GMap, GMapLess> seeds;
  for (const auto& g : gens) {
    GMap bare = GMap::from_matrix(g.src, g.dst, g.mat);
    seeds.insert(bare);
    seeds.insert(bare.inverse());
  }

  GMap id = GMap::from_matrix(0, 0,
                              {cfg.ctx()->one(), cfg.ctx()->zero(), cfg.ctx()->zero(),
                               cfg.ctx()->one()});
  std::set<GMap, GMapLess> closure;
  closure.insert(id);
  std::deque<GMap> frontier;
  bool capped = false;
  auto visit = [&](const GMap& g) -> bool {  // false signals an infinite witness
    if (!closure.insert(g).second) return true;
    if (char0) {
      if (!element_order(g)) {
        gd.witness = g;
        return false;
      }
    }
    frontier.push_back(g);
    return true;
  };

  bool infinite = false;
  for (const auto& g : seeds) {
    if (!visit(g)) {
      infinite = true;
      break;
    }
  }
  while (!infinite && !capped && !frontier.empty()) {
    GMap g = frontier.front();
    frontier.pop_front();
    for (const auto& h : seeds) {
      GMap e = compose(h, g);
      e.word.clear();
      if (!visit(e)) {
        infinite = true;
        break;
      }
      if (static_cast<long>(closure.size()) > cap) {
        capped = true;
        break;
      }
    }
  }

  if (infinite) {
    gd.status = GroupDescription::Status::infinite;
    gd.note = "found an element of infinite order";
    return gd;
  }
  if (!capped) {
    gd.status = GroupDescription::Status::nonabelian_finite;
    gd.order = mpz_class(static_cast<long>(closure.size()));
    gd.elements.assign(closure.begin(), closure.end());
    return gd;
  }

  if (char0 && static_cast<long>(closure.size()) > 120) {
    bool commuting = true;
    for (size_t a = 0; a < gens.size() && commuting; ++a)
      for (size_t b = a + 1; b < gens.size() && commuting; ++b)
        commuting = compose(gens[a], gens[b]).same_map(compose(gens[b], gens[a]));
    bool dihedral = false;
    if (!commuting) {
      // A group preserving a point pair embeds in the infinite dihedral
      // stabilizer; find any semisimple non-involution and test whether all
      // generators keep its fixed pair.
      for (const auto& g : closure) {
        const auto& ctx = g.ctx();
        Fel tr = g.trace();
        if (tr.is_zero()) continue;  // involution (or identity handled below)
        if ((tr * tr - ctx->from_int(4) * g.det()).is_zero()) continue;
        if (g.is_identity()) continue;
        auto form = fixed_pair_form(g.mat);
        dihedral = true;
        for (const auto& h : gens) {
          if (!preserves_pair(form, h.mat)) {
            dihedral = false;
            break;
          }
        }
        break;
      }
      if (!dihedral) {
        // Finite nonabelian subgroups of PGL_2 over characteristic 0 that do
        // not preserve a point pair are polyhedral, with at most 120
        // elements even in the binary count; exceeding that proves infinite.
        gd.status = GroupDescription::Status::infinite;
        gd.note = "closure exceeded the characteristic-0 polyhedral bound";
        return gd;
      }
    }
  }
  gd.status = GroupDescription::Status::nonabelian_capped;
  gd.lower_bound = mpz_class(static_cast<long>(closure.size()));
  gd.note = "closure enumeration stopped at the cap";
  return gd;
}

}  // namespace

GroupDescription group_analysis(const SkewConfig& cfg, long cap) {
  GroupDescription gd;
  gd.transversals = cfg.transversals();
  const auto& ts = gd.transversals;

  if (ts.count == TransversalSummary::Count::infinite_family) {
    gd.status = GroupDescription::Status::trivial;
    gd.order = 1;
    gd.note = "all lines lie on one smooth quadric";
    return gd;
  }

  if (ts.count == TransversalSummary::Count::two) {
    FieldCtxPtr work = ts.ext_ctx ? ts.ext_ctx : cfg.ctx();
    ProjLine l0 = ts.ext_ctx ? cfg.line(0).embed(work) : cfg.line(0);
    // Chart basis: second transversal point to 0, first to infinity; a
    // diagonal entry ratio is then the multiplier of the group element.
    auto pa = intersect_lines(ts.lines[0], l0);
    auto pb = intersect_lines(ts.lines[1], l0);
    if (!pa || !pb) throw std::logic_error("transversal misses the first line");
    ProjPoint vinf = *l0.chart_coords(*pa);
    ProjPoint vzero = *l0.chart_coords(*pb);

    std::vector<Fel> multipliers;
    std::optional<mpz_class> order = mpz_class(1);
    for (const auto& g : generators_of_gi(cfg, 0)) {
      if (g.is_identity()) continue;
      Mat2 m = ts.ext_ctx ? g.embed(work).mat : g.mat;
      Mat2 d = conjugate(m, vzero, vinf);
      if (!d[1].is_zero() || !d[2].is_zero())
        throw std::logic_error("two-transversal generator failed to diagonalize");
      Fel lambda = d[3] / d[0];
      if (lambda.is_one()) continue;
      if (std::find(multipliers.begin(), multipliers.end(), lambda) != multipliers.end())
        continue;
      multipliers.push_back(lambda);
      if (order) {
        auto o = multiplicative_order(lambda);
        if (!o) {
          order = std::nullopt;
          gd.witness = g;
        } else {
          mpz_class tmp;
          mpz_class om(*o);
          mpz_lcm(tmp.get_mpz_t(), order->get_mpz_t(), om.get_mpz_t());
          order = tmp;
        }
      }
    }
    if (multipliers.empty()) {
      gd.status = GroupDescription::Status::trivial;
      gd.order = 1;
      gd.note = "every generator fixes the transversal chart";
      return gd;
    }
    gd.status = GroupDescription::Status::abelian_multiplicative;
    gd.generators = std::move(multipliers);
    gd.order = order;
    if (!order) gd.note = "a multiplier is not a root of unity";
    return gd;
  }

  if (ts.count == TransversalSummary::Count::one && ts.multiplicity_two) {
    const ProjLine& l0 = cfg.line(0);
    auto pinf = intersect_lines(ts.lines[0], l0);
    if (!pinf) throw std::logic_error("transversal misses the first line");
    ProjPoint vinf = *l0.chart_coords(*pinf);
    const auto& ctx = cfg.ctx();
    // Any chart point independent of the fixed one completes the basis; the
    // conjugated generators become translations with the amount below the
    // diagonal.
    ProjPoint w = vinf[1].is_zero() ? ProjPoint({ctx->zero(), ctx->one()})
                                    : ProjPoint({ctx->one(), ctx->zero()});
    std::vector<Fel> amounts;
    for (const auto& g : generators_of_gi(cfg, 0)) {
      if (g.is_identity()) continue;
      Mat2 d = conjugate(g.mat, w, vinf);
      if (!d[1].is_zero() || d[0] != d[3])
        throw std::logic_error("multiplicity-2 generator is not a translation");
      Fel u = d[2] / d[0];
      if (u.is_zero()) continue;
      if (std::find(amounts.begin(), amounts.end(), u) == amounts.end())
        amounts.push_back(u);
    }
    if (amounts.empty()) {
      gd.status = GroupDescription::Status::trivial;
      gd.order = 1;
      gd.note = "every generator fixes the transversal chart";
      return gd;
    }
    gd.status = GroupDescription::Status::abelian_additive;
    long p = ctx->characteristic();
    if (p == 0) {
      gd.order = std::nullopt;
      gd.note = "nonzero translation over characteristic 0";
    } else {
      // Order of the additive span: p to the rank of the amounts viewed as
      // vectors over the prime field.
      linalg::Mat rows;
      for (const auto& u : amounts) {
        std::vector<Fel> flat;
        flatten_to_prime(u, flat);
        rows.push_back(std::move(flat));
      }
      gd.order = mpz_pow(p, linalg::rank(std::move(rows)));
    }
    gd.generators = std::move(amounts);
    return gd;
  }

  GroupDescription out = closure_analysis(cfg, cap, std::move(gd));
  if (ts.undecided && out.note.empty()) out.note = "transversal census undecided";
  return out;
}

PointSet::PointSet(const SkewConfig& cfg, std::vector<PointEntry> entries)
    : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.line < 0 || e.line >= cfg.size())
      throw std::invalid_argument("point set references a missing line");
    if (!cfg.line(e.line).contains(e.point))
      throw std::invalid_argument("point set entry is off its line");
  }
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

bool PointSet::contains(const PointEntry& e) const {
  return std::binary_search(entries_.begin(), entries_.end(), e);
}

std::vector<int> PointSet::per_line_counts(int s) const {
  std::vector<int> counts(static_cast<size_t>(s), 0);
  for (const auto& e : entries_) counts[static_cast<size_t>(e.line)]++;
  return counts;
}

std::vector<ProjPoint> PointSet::points() const {
  std::vector<ProjPoint> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.point);
  return out;
}

std::optional<PointSet> orbit(const SkewConfig& cfg, const PointEntry& seed, long cap) {
  auto chart = cfg.line(seed.line).chart_coords(seed.point);
  if (!chart) throw std::invalid_argument("seed point is off its line");
  int s = cfg.size();
  std::vector<std::set<ProjPoint>> visited(static_cast<size_t>(s));
  std::deque<std::pair<int, ProjPoint>> frontier;
  visited[static_cast<size_t>(seed.line)].insert(*chart);
  frontier.emplace_back(seed.line, *chart);
  long total = 1;
  while (!frontier.empty()) {
    auto [a, cp] = std::move(frontier.front());
    frontier.pop_front();
    for (int b = 0; b < s; ++b) {
      if (b == a) continue;
      for (int c = 0; c < s; ++c) {
        if (c == a || c == b) continue;
        ProjPoint q = cfg.elementary(a, b, c).apply(cp);
        if (visited[static_cast<size_t>(b)].insert(q).second) {
          if (++total > cap) return std::nullopt;
          frontier.emplace_back(b, q);
        }
      }
    }
  }
  std::vector<PointEntry> entries;
  entries.reserve(static_cast<size_t>(total));
  for (int i = 0; i < s; ++i)
    for (const auto& cp : visited[static_cast<size_t>(i)])
      entries.push_back({i, cfg.line(i).point_at(cp)});
  return PointSet(cfg, std::move(entries));
}

std::string CompletenessCertificate::str() const {
  if (complete) return "complete";
  std::ostringstream os;
  os << "transversal of lines " << triple[0] << "," << triple[1] << "," << triple[2]
     << " through " << witness->point.str() << " meets line " << missing->line
     << " at " << missing->point.str() << " which is outside the set";
  return os.str();
}

CompletenessCertificate is_collinearly_complete(const SkewConfig& cfg, const PointSet& z) {
  int s = cfg.size();
  std::vector<std::set<ProjPoint>> member(static_cast<size_t>(s));
  for (const auto& e : z.entries()) member[static_cast<size_t>(e.line)].insert(e.point);

  for (const auto& e : z.entries()) {
    for (int j = 0; j < s; ++j) {
      if (j == e.line) continue;
      for (int k = j + 1; k < s; ++k) {
        if (k == e.line) continue;
        ProjPoint qj = meet_line_plane(cfg.line(j), plane_span(e.point, cfg.line(k)));
        ProjLine t = line_through(e.point, qj);
        for (int r = 0; r < s; ++r) {
          if (r == e.line) continue;
          auto x = intersect_lines(t, cfg.line(r));
          if (x && member[static_cast<size_t>(r)].find(*x) ==
                       member[static_cast<size_t>(r)].end()) {
            CompletenessCertificate cert;
            cert.complete = false;
            cert.triple = {e.line, j, k};
            cert.witness = e;
            cert.missing = PointEntry{r, *x};
            return cert;
          }
        }
      }
    }
  }
  return CompletenessCertificate{};
}

std::vector<PointSet> orbit_decomposition(const SkewConfig& cfg, const PointSet& z) {
  auto cert = is_collinearly_complete(cfg, z);
  if (!cert.complete)
    throw std::invalid_argument("set is not collinearly complete: " + cert.str());
  std::set<PointEntry> visited;
  std::vector<PointSet> parts;
  for (const auto& e : z.entries()) {
    if (visited.count(e)) continue;
    auto o = orbit(cfg, e, z.size());
    if (!o) throw std::logic_error("orbit of a complete set exceeded the set size");
    for (const auto& oe : o->entries()) {
      if (!z.contains(oe)) throw std::logic_error("orbit escaped a complete set");
      visited.insert(oe);
    }
    parts.push_back(std::move(*o));
  }
  return parts;
}

namespace {

bool all_collinear(const std::vector<ProjPoint>& pts) {
  if (pts.size() <= 2) return true;
  linalg::Mat rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) rows.push_back(p.coords());
  return linalg::rank(std::move(rows)) <= 2;
}

// The unique projectivity sending one frame of five linearly general points
// to another, or nullopt when either frame is degenerate.
std::optional<linalg::Mat> frame_map(const std::array<ProjPoint, 5>& a,
                                     const std::array<ProjPoint, 5>& b) {
  const auto& ctx = a[0].ctx();
  auto build = [&](const std::array<ProjPoint, 5>& f) -> std::optional<linalg::Mat> {
    linalg::Mat m = linalg::zeros(ctx, 4, 4);
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c) m[r][c] = f[c][r];
    auto coeff = linalg::solve(m, f[4].coords());
    if (!coeff) return std::nullopt;
    for (const auto& x : *coeff)
      if (x.is_zero()) return std::nullopt;
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c) m[r][c] = f[c][r] * (*coeff)[c];
    return m;
  };
  auto ma = build(a);
  auto mb = build(b);
  if (!ma || !mb) return std::nullopt;
  return linalg::mul(*mb, linalg::inverse(*ma));
}

bool maps_onto(const linalg::Mat& m, const std::vector<ProjPoint>& src,
               const std::set<ProjPoint>& dst) {
  for (const auto& p : src) {
    if (!dst.count(ProjPoint(linalg::apply(m, p.coords())))) return false;
  }
  return true;
}

}  // namespace

std::optional<linalg::Mat> projective_equivalence_of_orbits(const SkewConfig& cfg,
                                                            const PointSet& o1,
                                                            const PointSet& o2) {
  if (o1.size() != o2.size() || o1.size() == 0) return std::nullopt;
  std::vector<ProjPoint> pts1 = o1.points();
  std::vector<ProjPoint> pts2 = o2.points();
  std::set<ProjPoint> set2(pts2.begin(), pts2.end());
  const auto& ctx = cfg.ctx();

  if (all_collinear(pts1)) {
    if (!all_collinear(pts2)) return std::nullopt;
    ProjLine t1 = line_through(pts1[0], pts1[1]);
    ProjLine t2 = line_through(pts2[0], pts2[1]);
    std::vector<ProjPoint> ch1, ch2;
    for (const auto& p : pts1) ch1.push_back(*t1.chart_coords(p));
    for (const auto& p : pts2) ch2.push_back(*t2.chart_coords(p));
    std::set<ProjPoint> chset2(ch2.begin(), ch2.end());

    // Complete both carrier spans to bases of the ambient space.
    auto complete = [&](const ProjLine& t) {
      linalg::Mat cols = {t.chart0().coords(), t.chart1().coords()};
      for (int e = 0; e < 4 && cols.size() < 4; ++e) {
        linalg::Vec v(4, ctx->zero());
        v[static_cast<size_t>(e)] = ctx->one();
        cols.push_back(v);
        if (linalg::rank(cols) < cols.size()) cols.pop_back();
      }
      return cols;
    };
    linalg::Mat cols1 = complete(t1);
    linalg::Mat cols2 = complete(t2);

    size_t n = ch1.size();
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        for (size_t z = 0; z < n; ++z) {
          if (x == y || y == z || x == z) continue;
          Mat2 m;
          try {
            m = chart_map_3pt({ch1[0], ch1[1], ch1[2]}, {ch2[x], ch2[y], ch2[z]});
          } catch (const std::invalid_argument&) {
            continue;
          }
          bool all = true;
          for (const auto& c : ch1) {
            ProjPoint img({m[0] * c[0] + m[1] * c[1], m[2] * c[0] + m[3] * c[1]});
            if (!chset2.count(img)) {
              all = false;
              break;
            }
          }
          if (!all) continue;
          // Lift the chart map to the ambient space, acting arbitrarily on
          // the completed directions.
          linalg::Mat a = linalg::zeros(ctx, 4, 4);
          linalg::Mat b = linalg::zeros(ctx, 4, 4);
          for (size_t r = 0; r < 4; ++r) {
            a[r][0] = cols1[0][r];
            a[r][1] = cols1[1][r];
            a[r][2] = cols1[2][r];
            a[r][3] = cols1[3][r];
            b[r][0] = m[0] * cols2[0][r] + m[2] * cols2[1][r];
            b[r][1] = m[1] * cols2[0][r] + m[3] * cols2[1][r];
            b[r][2] = cols2[2][r];
            b[r][3] = cols2[3][r];
          }
          linalg::Mat phi = linalg::mul(b, linalg::inverse(a));
          if (maps_onto(phi, pts1, set2)) return phi;
        }
    return std::nullopt;
  }

  // General orbits: grow a frame of five linearly general points from three
  // points on the first line (two of them pushed to the third line, one to
  // the second) and try every ordered triple on the other orbit's slice.
  std::vector<ProjPoint> slice1, slice2;
  for (const auto& e : o1.entries())
    if (e.line == 0) slice1.push_back(e.point);
  for (const auto& e : o2.entries())
    if (e.line == 0) slice2.push_back(e.point);
  if (slice1.size() < 3 || slice2.size() < 3)
    throw std::invalid_argument("orbits need 3 points on the first line");

  auto five_from = [&](const ProjPoint& a, const ProjPoint& b, const ProjPoint& c)
      -> std::array<ProjPoint, 5> {
    const GMap& to3 = cfg.elementary(0, 2, 1);
    const GMap& to2 = cfg.elementary(0, 1, 2);
    auto push = [&](const GMap& g, const ProjPoint& p, int dst) {
      return cfg.line(dst).point_at(g.apply(*cfg.line(0).chart_coords(p)));
    };
    return {a, push(to3, a, 2), c, push(to3, c, 2), push(to2, b, 1)};
  };

  std::array<ProjPoint, 5> five1 = five_from(slice1[0], slice1[1], slice1[2]);
  size_t n = slice2.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        auto phi = frame_map(five1, five_from(slice2[x], slice2[y], slice2[z]));
        if (phi && maps_onto(*phi, pts1, set2)) return phi;
      }
  return std::nullopt;
}

}  // namespace skewlines
