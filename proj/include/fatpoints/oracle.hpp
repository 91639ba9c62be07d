#pragma once

// Independent checks by exact linear algebra over a prime field: dimensions of
// L(d; m_1..m_s) at random points, initial degrees of symbolic powers, and a
// degree-by-degree comparison of I^(2r) with M^r I^r.
//
// Plane curves of degree d are written in the affine chart z = 1 as
// polynomials of total degree <= d. Vanishing to order m at (u, v) is imposed
// through Hasse derivatives: the coefficient of X^a Y^b in f(X+u, Y+v) is
//   sum_{i,j} c_ij C(i,a) C(j,b) u^(i-a) v^(j-b),   a + b < m.
// By semicontinuity the rank at any one configuration is a lower bound for
// the rank at general points, so full rank certifies non-speciality.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/core.hpp"
#include "fatpoints/speciality.hpp"

namespace fatpoints::oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % q == 0) return n == q;
  }
  for (u64 q = 17; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

/// Arithmetic in F_p for primes p < 2^32.
class PrimeField {
 public:
  explicit PrimeField(u64 p) : p_(p) {
    if (p >= (1ull << 32) || !is_prime(p)) throw std::invalid_argument("prime must be a prime below 2^32");
  }
  u64 p() const noexcept { return p_; }
  u32 add(u32 a, u32 b) const { u64 s = u64(a) + b; return static_cast<u32>(s >= p_ ? s - p_ : s); }
  u32 sub(u32 a, u32 b) const { return static_cast<u32>(a >= b ? a - b : a + p_ - b); }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(u64(a) * b % p_); }
  u32 pow(u32 a, u64 e) const {
    u64 r = 1, x = a;
    while (e) {
      if (e & 1) r = r * x % p_;
      x = x * x % p_;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }
  u32 inv(u32 a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
  }

 private:
  u64 p_;
};

/// Stateless generator: value i of stream (seed) is splitmix64(seed, i).
class CounterRng {
 public:
  explicit CounterRng(u64 seed, u64 stream = 0) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ull))) {}
  u64 next() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }
  u64 below(u64 bound) {
    // rejection sampling keeps the draw unbiased
    const u64 limit = ~0ull - (~0ull % bound);
    u64 x;
    do x = next(); while (x >= limit);
    return x % bound;
  }

 private:
  static u64 mix(u64 z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  u64 key_;
  u64 counter_ = 0;
};

struct PointConfig {
  u64 prime = 0;
  u64 seed = 0;
  u64 trial = 0;
  std::vector<std::pair<u32, u32>> points;
};

/// s pairwise distinct affine points of F_p^2, determined by (seed, trial).
inline PointConfig sample_points(std::size_t s, u64 prime, u64 seed, u64 trial) {
  if (static_cast<double>(prime) * static_cast<double>(prime) < static_cast<double>(s))
    throw std::invalid_argument("field too small for the requested number of points");
  PointConfig cfg{prime, seed, trial, {}};
  CounterRng rng(seed, trial);
  std::set<std::pair<u32, u32>> seen;
  while (cfg.points.size() < s) {
    std::pair<u32, u32> pt{static_cast<u32>(rng.below(prime)), static_cast<u32>(rng.below(prime))};
    if (seen.insert(pt).second) cfg.points.push_back(pt);
  }
  return cfg;
}

/// Monomials X^i Y^j with i + j <= d, ordered by total degree then by j.
struct MonomialBasis {
  Int degree;
  explicit MonomialBasis(Int d) : degree(d) {
    if (d < 0) throw std::invalid_argument("negative degree");
  }
  std::size_t size() const { return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2); }
  static std::size_t index(Int i, Int j) {
    const Int t = i + j;
    return static_cast<std::size_t>(t * (t + 1) / 2 + j);
  }
  std::vector<std::pair<Int, Int>> exponents() const {
    std::vector<std::pair<Int, Int>> out;
    out.reserve(size());
    for (Int t = 0; t <= degree; ++t)
      for (Int j = 0; j <= t; ++j) out.emplace_back(t - j, j);
    return out;
  }
};

/// Dense row-major matrix over F_p.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u32> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  u32& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  u32 operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix from_rows(const std::vector<std::vector<u32>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& a, const PrimeField& f) {
  for (auto& x : a.data)
    if (x >= f.p()) x = static_cast<u32>(x % f.p());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t sel = row;
    while (sel < a.rows && a(sel, col) == 0) ++sel;
    if (sel == a.rows) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(sel, j), a(row, j));
    }
    const u32 inv = f.inv(a(row, col));
    for (std::size_t j = col; j < a.cols; ++j) a(row, j) = f.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const u32 factor = a(i, col);
      for (std::size_t j = col; j < a.cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank_mod_p(Matrix a, const PrimeField& f) { return row_reduce(a, f).size(); }

inline std::size_t rank_mod_p(const Matrix& a, u64 prime) { return rank_mod_p(a, PrimeField(prime)); }

/// Basis of the right kernel {x : A x = 0}.
inline std::vector<std::vector<u32>> kernel_basis(Matrix a, const PrimeField& f) {
  const auto pivots = row_reduce(a, f);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u32>> basis;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u32> v(a.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = f.sub(0, a(r, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Row basis (reduced echelon) of the span of `vectors`.
inline std::vector<std::vector<u32>> span_basis(const std::vector<std::vector<u32>>& vectors,
                                               std::size_t dim, const PrimeField& f) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_rows(vectors, dim);
  const std::size_t r = row_reduce(m, f).size();
  std::vector<std::vector<u32>> out(r);
  for (std::size_t i = 0; i < r; ++i)
    out[i].assign(m.data.begin() + static_cast<std::ptrdiff_t>(i * dim),
                  m.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
  return out;
}

/// One row per condition (point i, a + b < m_i), one column per monomial of degree <= d.
inline Matrix conditions_matrix(Int d, const std::vector<Int>& mults, const PointConfig& cfg) {
  if (mults.size() != cfg.points.size()) throw std::invalid_argument("point count mismatch");
  const PrimeField f(cfg.prime);
  const MonomialBasis basis(d);
  const auto exps = basis.exponents();

  std::size_t rows = 0;
  for (Int m : mults) rows += static_cast<std::size_t>(m * (m + 1) / 2);
  Matrix mat(rows, basis.size());

  // Pascal triangle mod p up to d
  std::vector<std::vector<u32>> binom(static_cast<std::size_t>(d + 1));
  for (std::size_t n = 0; n < binom.size(); ++n) {
    binom[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) binom[n][k] = f.add(binom[n - 1][k - 1], binom[n - 1][k]);
  }
  auto C = [&](Int n, Int k) -> u32 {
    return (k < 0 || k > n) ? 0 : binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  };

  std::size_t row = 0;
  for (std::size_t pt = 0; pt < mults.size(); ++pt) {
    const auto [u, v] = cfg.points[pt];
    std::vector<u32> upow(static_cast<std::size_t>(d + 1), 1), vpow(static_cast<std::size_t>(d + 1), 1);
    for (std::size_t k = 1; k < upow.size(); ++k) {
      upow[k] = f.mul(upow[k - 1], u);
      vpow[k] = f.mul(vpow[k - 1], v);
    }
    for (Int order = 0; order < mults[pt]; ++order) {
      for (Int b = 0; b <= order; ++b) {
        const Int a = order - b;
        for (std::size_t col = 0; col < exps.size(); ++col) {
          const auto [i, j] = exps[col];
          if (i < a || j < b) continue;
          u32 e = f.mul(C(i, a), C(j, b));
          e = f.mul(e, f.mul(upow[static_cast<std::size_t>(i - a)], vpow[static_cast<std::size_t>(j - b)]));
          mat(row, col) = e;
        }
        ++row;
      }
    }
  }
  return mat;
}

struct OracleOptions {
  u64 prime = 65537;
  std::size_t trials = 3;
  u64 seed = 1;
};

enum class DimCertificate { Nonspecial, Empty, None };

inline const char* to_string(DimCertificate c) {
  switch (c) {
    case DimCertificate::Nonspecial: return "nonspecial";
    case DimCertificate::Empty: return "empty";
    default: return "none";
  }
}

struct DimReport {
  Int d = 0;
  std::vector<Int> mults;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t max_rank = 0;
  Int dim_observed = 0;
  BigInt vdim;
  BigInt edim;
  DimCertificate certificate = DimCertificate::None;
  std::size_t trials_run = 0;
  OracleOptions options;

  /// Full rank at some configuration: non-special at general points.
  bool full_rank() const { return max_rank == std::min(rows, cols); }
};

namespace detail {
inline void require_prime_above(u64 prime, Int degree) {
  if (prime <= static_cast<u64>(std::max<Int>(degree, 0)))
    throw std::invalid_argument("prime must exceed the degree (p > d)");
}
}  // namespace detail

/// Observed dimension of L(d; mults) over `trials` random configurations.
inline DimReport dim_system(Int d, const MultiplicitySequence& mults, const OracleOptions& opt = {}) {
  if (d < 0) throw std::invalid_argument("degree must be non-negative");
  if (opt.trials == 0) throw std::invalid_argument("trials must be positive");
  detail::require_prime_above(opt.prime, d);
  const PrimeField f(opt.prime);

  DimReport rep;
  rep.d = d;
  rep.mults = mults.values();
  rep.options = opt;
  rep.vdim = vdim(2, d, mults);
  rep.edim = edim(2, d, mults);
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const auto cfg = sample_points(mults.count(), opt.prime, opt.seed, trial);
    Matrix m = conditions_matrix(d, mults.values(), cfg);
    rep.rows = m.rows;
    rep.cols = m.cols;
    rep.max_rank = std::max(rep.max_rank, rank_mod_p(std::move(m), f));
    rep.trials_run = trial + 1;
    if (rep.full_rank()) break;
  }
  rep.dim_observed = static_cast<Int>(rep.cols) - 1 - static_cast<Int>(rep.max_rank);
  if (rep.dim_observed == -1)
    rep.certificate = DimCertificate::Empty;
  else if (rep.full_rank())
    rep.certificate = DimCertificate::Nonspecial;
  if (BigInt(rep.dim_observed) < rep.edim)
    throw InvariantViolation("observed dimension below expected dimension");
  return rep;
}

struct AlphaReport {
  std::vector<Int> scaled;
  Int alpha_lb = 0;         // 1 + largest d certified empty
  Int alpha_observed = 0;   // least d with a member at the sampled configurations
  bool alpha_certified = false;  // observed value certified equal (non-special there)
};

/// Initial degree of the ideal of points with multiplicities scale * m_i.
inline AlphaReport alpha_scan(const MultiplicitySequence& mults, Int scale, const OracleOptions& opt = {}) {
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
  std::vector<Int> scaled;
  for (Int m : mults.values()) scaled.push_back(m * scale);
  const MultiplicitySequence sm(scaled);
  AlphaReport rep;
  rep.scaled = sm.values();
  for (Int d = 0;; ++d) {
    const DimReport r = dim_system(d, sm, opt);
    if (r.dim_observed < 0) {
      rep.alpha_lb = d + 1;
      continue;
    }
    rep.alpha_observed = d;
    rep.alpha_certified = r.full_rank() && r.edim >= 0;
    return rep;
  }
}

struct DegreeComparison {
  Int t = 0;
  std::size_t dim_symbolic = 0;  // dim (I^(2r))_t
  std::size_t dim_target = 0;    // dim (M^r I^r)_t
  bool contained = false;
};

struct TruncatedContainmentReport {
  std::vector<Int> mults;
  Int r = 0;
  Int t_max = 0;
  PointConfig config;
  std::vector<DegreeComparison> degrees;
  bool holds() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.contained; });
  }
};

inline constexpr Int kMaxContainmentDegree = 30;
inline constexpr Int kMaxContainmentPower = 4;

/// Default degree horizon r * (reg bound + 1); the regularity bound comes from
/// the speciality criterion when s >= 4 and is the crude sum m_i otherwise.
inline Int default_t_max(const MultiplicitySequence& mults, Int r) {
  Int reg = 0;
  if (mults.count() >= 4) {
    reg = reg_upper_bound(mults);
  } else {
    for (Int m : mults.values()) reg += m;
  }
  return r * (reg + 1);
}

/// Compares (I^(2r))_t with (M^r I^r)_t for t <= t_max at one random configuration.
/// A positive answer is evidence only; a failure flags a problem worth a closer look.
inline TruncatedContainmentReport truncated_containment_check(const MultiplicitySequence& mults, Int r,
                                                              Int t_max, const OracleOptions& opt = {}) {
  if (r <= 0) throw std::invalid_argument("r must be positive");
  if (t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  if (t_max > kMaxContainmentDegree || r > kMaxContainmentPower)
    throw std::invalid_argument("instance-size guard: need t_max <= " + std::to_string(kMaxContainmentDegree) +
                                " and r <= " + std::to_string(kMaxContainmentPower));
  detail::require_prime_above(opt.prime, t_max);
  const PrimeField f(opt.prime);
  using Poly = std::vector<u32>;
  using Space = std::vector<Poly>;

  TruncatedContainmentReport rep;
  rep.mults = mults.values();
  rep.r = r;
  rep.t_max = t_max;
  rep.config = sample_points(mults.count(), opt.prime, opt.seed, 0);

  auto kernel_at = [&](Int t, const std::vector<Int>& ms) -> Space {
    return kernel_basis(conditions_matrix(t, ms, rep.config), f);
  };
  auto multiply = [&](const Poly& a, Int da, const Poly& b, Int db) {
    Poly out(MonomialBasis(da + db).size(), 0);
    const auto ea = MonomialBasis(da).exponents();
    const auto eb = MonomialBasis(db).exponents();
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (!a[x]) continue;
      for (std::size_t y = 0; y < b.size(); ++y) {
        if (!b[y]) continue;
        auto& slot = out[MonomialBasis::index(ea[x].first + eb[y].first, ea[x].second + eb[y].second)];
        slot = f.add(slot, f.mul(a[x], b[y]));
      }
    }
    return out;
  };

  // I_a for a <= t_max, then powers (I^k)_b by graded multiplication.
  std::vector<Space> ideal(static_cast<std::size_t>(t_max + 1));
  for (Int a = 0; a <= t_max; ++a) ideal[static_cast<std::size_t>(a)] = kernel_at(a, mults.values());
  std::vector<Space> power = ideal;
  for (Int k = 2; k <= r; ++k) {
    std::vector<Space> next(static_cast<std::size_t>(t_max + 1));
    for (Int b = 0; b <= t_max; ++b) {
      Space gens;
      for (Int a = 0; a <= b; ++a) {
        for (const auto& g1 : ideal[static_cast<std::size_t>(a)])
          for (const auto& g2 : power[static_cast<std::size_t>(b - a)]) gens.push_back(multiply(g1, a, g2, b - a));
      }
      next[static_cast<std::size_t>(b)] = span_basis(gens, MonomialBasis(b).size(), f);
    }
    power = std::move(next);
  }

  std::vector<Int> symbolic_mults;
  for (Int m : mults.values()) symbolic_mults.push_back(2 * r * m);
  const auto degree_r_monomials = MonomialBasis(r).exponents();

  for (Int t = 0; t <= t_max; ++t) {
    const std::size_t dim = MonomialBasis(t).size();
    DegreeComparison cmp;
    cmp.t = t;
    const Space symbolic = kernel_at(t, symbolic_mults);
    cmp.dim_symbolic = symbolic.size();
    Space target;
    if (t >= r) {
      Space gens;
      for (const auto& g : power[static_cast<std::size_t>(t - r)]) {
        for (const auto& [i, j] : degree_r_monomials) {
          Poly mono(MonomialBasis(r).size(), 0);
          mono[MonomialBasis::index(i, j)] = 1;
          gens.push_back(multiply(mono, r, g, t - r));
        }
      }
      target = span_basis(gens, dim, f);
    }
    cmp.dim_target = target.size();
    Space both = target;
    both.insert(both.end(), symbolic.begin(), symbolic.end());
    cmp.contained = span_basis(both, dim, f).size() == target.size();
    rep.degrees.push_back(cmp);
  }
  return rep;
}

}  // namespace fatpoints::oracle
