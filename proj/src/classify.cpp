#include "skewlines/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "skewlines/linalg.hpp"

namespace skewlines {

namespace {

long gcd3(long i, long j, long m) { return std::gcd(std::gcd(i, m), std::gcd(j, m)); }

// Enumerates the admissible exponent pairs (i, j) of Z_m: both nonzero, sum
// nonzero, jointly generating Z_m.
std::vector<std::pair<long, long>> admissible_exponents(long m) {
  std::vector<std::pair<long, long>> out;
  for (long i = 1; i < m; ++i)
    for (long j = 1; j < m; ++j) {
      if ((i + j) % m == 0) continue;
      if (gcd3(i, j, m) != 1) continue;
      out.push_back({i, j});
    }
  return out;
}

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t k = 0; k < n; ++k) parent[k] = k;
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t x, size_t y) { parent[find(x)] = find(y); }
};

}  // namespace

std::string ClassPartition::signature() const {
  std::ostringstream s;
  s << "6^" << size6 << " 12^" << size12;
  return s.str();
}

long n_m_formula(long m, long char_p) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (char_p > 0 && m % char_p == 0) return 0;
  auto factors = factor_mpz(m);
  const long r = static_cast<long>(factors.size());
  const long phi = euler_phi(m);

  long total = phi * (phi - 1) + 2 * phi * (m - 1 - phi);
  // Pairs generating Z_m jointly but not individually, split by the set S of
  // primes at which the first exponent is allowed to degenerate.
  for (long mask = 1; mask + 1 < (1L << r); ++mask) {
    long in_part = 1, out_full = 1, out_phi = 1;
    for (long k = 0; k < r; ++k) {
      const long p = factors[k].first.get_si();
      long pe = 1;
      for (unsigned e = 0; e < factors[k].second; ++e) pe *= p;
      if (mask & (1L << k)) {
        in_part *= pe / p;
      } else {
        out_full *= pe;
        out_phi *= pe - pe / p;
      }
    }
    total += phi * in_part * (out_full - out_phi);
  }
  return total;
}

long n_m_bruteforce(long m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  return static_cast<long>(admissible_exponents(m).size());
}

std::pair<Fel, Fel> tl_from_alpha_gamma(const Fel& alpha, const Fel& gamma) {
  const auto ctx = alpha.ctx();
  const Fel one = ctx->one();
  const Fel ag = alpha * gamma;
  if (alpha.is_one() || gamma.is_one() || ag.is_one())
    throw std::invalid_argument("need alpha, gamma, alpha*gamma all different from 1");
  return {(gamma - one) / (ag - one), (ag - one) / (ag - alpha)};
}

std::pair<Fel, Fel> alpha_gamma_from_tl(const Fel& t, const Fel& l) {
  const auto ctx = t.ctx();
  const Fel one = ctx->one();
  if (t.is_zero() || t.is_one() || l.is_zero() || l.is_one() || (l * t).is_one())
    throw std::invalid_argument("need t, l outside {0,1} and lt != 1");
  return {(l * t).inv(), l * (one - t) / (l - one)};
}

std::array<std::pair<Fel, Fel>, 6> chi_set(const Fel& t, const Fel& l) {
  const auto ctx = t.ctx();
  const Fel one = ctx->one();
  // Simultaneous cross-ratio transforms of (0,1,inf,t) on one transversal and
  // (0,1,inf,1/l) on the other; the table pairs t' with 1/l', so the second
  // coordinates below are the inverses of the tabulated ones.
  return {{{t, l},
           {t.inv(), l.inv()},
           {one - t, l / (l - one)},
           {(one - t).inv(), (l - one) / l},
           {(t - one) / t, (one - l).inv()},
           {t / (t - one), one - l}}};
}

ClassPartition class_partition(long m, const FieldCtxPtr& ctx) {
  if (m < 4) throw std::invalid_argument("classification requires m >= 4");
  if (ctx->characteristic() > 0 && m % ctx->characteristic() == 0)
    throw std::invalid_argument("characteristic divides m: no such configurations exist");

  const Fel zeta = primitive_root_of_unity(m, ctx);
  const auto work = zeta.ctx();
  std::vector<Fel> zp{work->one()};
  for (long k = 1; k < m; ++k) zp.push_back(zp.back() * zeta);

  ClassPartition part;
  part.m = m;
  part.finite_mode = work->finite();

  std::vector<ParamPair> pairs;
  std::map<std::pair<Fel, Fel>, size_t> index;
  for (auto [i, j] : admissible_exponents(m)) {
    auto [t, l] = tl_from_alpha_gamma(zp[i], zp[j]);
    index.emplace(std::pair{t, l}, pairs.size());
    pairs.push_back({t, l, zp[i], zp[j], i, j});
  }
  part.lambda = static_cast<long>(pairs.size());
  if (part.lambda != n_m_formula(m, work->characteristic()))
    throw std::logic_error("line enumeration disagrees with the closed count");

  UnionFind uf(pairs.size());
  for (size_t k = 0; k < pairs.size(); ++k) {
    for (const auto& tl : chi_set(pairs[k].t, pairs[k].l)) {
      auto it = index.find(tl);
      if (it == index.end())
        throw std::logic_error("cross-ratio transform left the admissible parameter set");
      uf.unite(k, it->second);
    }
    auto swapped = index.find({pairs[k].l.inv(), pairs[k].t.inv()});
    if (swapped == index.end())
      throw std::logic_error("transversal swap left the admissible parameter set");
    uf.unite(k, swapped->second);
  }

  // Group members by class, keyed by the smallest (t, l) in each class; the
  // index map iterates keys in increasing order, so the first key seen for a
  // root is its class minimum. Member lists inherit the same order.
  std::map<size_t, std::pair<Fel, Fel>> root_to_key;
  for (const auto& [key, k] : index) root_to_key.emplace(uf.find(k), key);
  std::map<std::pair<Fel, Fel>, std::vector<size_t>> grouped;
  for (const auto& [key, k] : index) grouped[root_to_key.at(uf.find(k))].push_back(k);

  for (auto& [key, members] : grouped) {
    std::vector<ParamPair> cls;
    for (size_t k : members) cls.push_back(pairs[k]);
    if (cls.size() == 6)
      ++part.size6;
    else if (cls.size() == 12)
      ++part.size12;
    else
      throw std::logic_error("equivalence class of unexpected size " +
                             std::to_string(cls.size()));
    part.classes.push_back(std::move(cls));
  }
  return part;
}

long prime_class_count(long m) {
  if (m < 5 || !is_prime_long(m))
    throw std::invalid_argument("the closed class count applies to primes m >= 5");
  return (m * m - 1) / 12;
}

mpz_class line_count_bound(long r, BoundVariant variant, long char_p) {
  if (r < 1) throw std::invalid_argument("need r >= 1");
  if (variant == BoundVariant::cubic)
    return 2 * (mpz_class(r) * (r - 1) * (r - 2) / 3) + 2;
  mpz_class sum = 0;
  for (long m = 2; m <= r; ++m) sum += n_m_formula(m, char_p);
  return 2 * sum + 2;
}

bool distinct_tl_check(long m, const FieldCtxPtr& ctx) {
  if (m <= 2 || !is_prime_long(m))
    throw std::invalid_argument("the distinctness statement is for odd primes");
  if (ctx->characteristic() > 0 && m % ctx->characteristic() == 0)
    throw std::invalid_argument("characteristic divides m");
  const Fel zeta = primitive_root_of_unity(m, ctx);
  const auto work = zeta.ctx();
  std::vector<Fel> zp{work->one()};
  for (long k = 1; k < m; ++k) zp.push_back(zp.back() * zeta);

  std::set<Fel> ts, ls;
  long count = 0;
  for (auto [i, j] : admissible_exponents(m)) {
    auto [t, l] = tl_from_alpha_gamma(zp[i], zp[j]);
    ts.insert(t);
    ls.insert(l);
    ++count;
  }
  return static_cast<long>(ts.size()) == count && static_cast<long>(ls.size()) == count;
}

std::optional<linalg::Mat> projective_equivalence_of_configs(const SkewConfig& a,
                                                             const SkewConfig& b) {
  if (a.size() != 4 || b.size() != 4)
    throw std::invalid_argument("configuration equivalence is implemented for 4 lines");
  if (!a.ctx()->same_field(*b.ctx()))
    throw std::invalid_argument("configurations over different fields");
  const auto& ta = a.transversals();
  const auto& tb = b.transversals();
  if (ta.count != TransversalSummary::Count::two || tb.count != TransversalSummary::Count::two ||
      ta.ext_ctx || tb.ext_ctx)
    throw std::invalid_argument("both configurations need two rational transversals");
  const auto ctx = a.ctx();

  // Eight marked points per configuration: each line meets each transversal.
  auto marked = [](const SkewConfig& cfg, const ProjLine& t) {
    std::vector<ProjPoint> pts;
    for (int i = 0; i < 4; ++i) {
      auto p = intersect_lines(cfg.line(i), t);
      if (!p) throw std::invalid_argument("line misses its transversal");
      pts.push_back(*p);
    }
    return pts;
  };
  const auto a1 = marked(a, ta.lines[0]), a2 = marked(a, ta.lines[1]);
  const auto b1 = marked(b, tb.lines[0]), b2 = marked(b, tb.lines[1]);

  // A projectivity M with M p proportional to q, for each correspondence,
  // gives six linear conditions (M p)_j q_k = (M p)_k q_j on the entries.
  auto constraints = [&](const std::vector<std::pair<ProjPoint, ProjPoint>>& corr) {
    linalg::Mat rows;
    for (const auto& [p, q] : corr)
      for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) {
          linalg::Vec row(16, ctx->zero());
          for (int c = 0; c < 4; ++c) {
            row[4 * k + c] = row[4 * k + c] + p[c] * q[j];
            row[4 * j + c] = row[4 * j + c] - p[c] * q[k];
          }
          rows.push_back(std::move(row));
        }
    return rows;
  };

  std::vector<int> perm{0, 1, 2, 3};
  do {
    for (bool swap_t : {false, true}) {
      std::vector<std::pair<ProjPoint, ProjPoint>> corr;
      for (int i = 0; i < 4; ++i) {
        corr.push_back({a1[i], swap_t ? b2[perm[i]] : b1[perm[i]]});
        corr.push_back({a2[i], swap_t ? b1[perm[i]] : b2[perm[i]]});
      }
      const auto ker = linalg::kernel_basis(constraints(corr), 16, ctx);
      auto as_matrix = [&](const linalg::Vec& v) {
        linalg::Mat m(4, linalg::Vec(4, ctx->zero()));
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) m[r][c] = v[4 * r + c];
        return m;
      };
      // The kernel has dimension 2 whenever the map decomposes into
      // independent blocks on the two transversals (each with its own scale),
      // so single basis vectors can be singular; probe pair combinations,
      // whose determinant is a degree-4 polynomial in the mixing value.
      std::vector<linalg::Vec> candidates(ker.begin(), ker.end());
      for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = i + 1; j < ker.size(); ++j)
          for (long x = 1; x <= 5; ++x) {
            linalg::Vec v = ker[i];
            const Fel fx = ctx->from_int(x);
            for (size_t c = 0; c < 16; ++c) v[c] = v[c] + fx * ker[j][c];
            candidates.push_back(std::move(v));
          }
      for (const auto& v : candidates) {
        linalg::Mat m = as_matrix(v);
        if (!linalg::det(m).is_zero()) return m;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace skewlines
