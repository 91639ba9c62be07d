#pragma once

// Scanning harnesses: two-level families that defeat the direct containment
// criterion, the finite case grids of the lemma proofs, and the audit of the
// speciality provers against the modular oracle.

#include <algorithm>
#include <future>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "fatpoints/containment.hpp"
#include "fatpoints/core.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/speciality.hpp"

namespace fatpoints::search {

/// Inclusive integer range lo..hi.
struct Range {
  Int lo = 0;
  Int hi = 0;
  Int width() const { return hi < lo ? 0 : hi - lo + 1; }
};

/// Sequences (a^p, b^q) with a in a_range, ..., q in q_range.
struct Family {
  Range a, p, b, q;
  Int max_points = 0;  // 0: no limit
};

namespace detail {

inline Range parse_range(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    Int v = fatpoints::detail::parse_nonnegative(text);
    return {v, v};
  }
  Range r{fatpoints::detail::parse_nonnegative(text.substr(0, dots)),
          fatpoints::detail::parse_nonnegative(text.substr(dots + 2))};
  if (r.hi < r.lo) throw std::invalid_argument("empty range '" + std::string(text) + "'");
  return r;
}

}  // namespace detail

/// Parses "key=lo..hi,key=lo..hi,..." into a map; single values are allowed.
inline std::map<std::string, Range> parse_grid(std::string_view text) {
  std::map<std::string, Range> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = fatpoints::detail::trim(text.substr(start, comma - start));
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=range in '" + std::string(tok) + "'");
    std::string key(fatpoints::detail::trim(tok.substr(0, eq)));
    if (out.count(key)) throw std::invalid_argument("duplicate key '" + key + "'");
    out[key] = detail::parse_range(fatpoints::detail::trim(tok.substr(eq + 1)));
    start = comma + 1;
  }
  return out;
}

/// "a=2..130,p=9..12,b=1..12,q=80..224"; an optional "n=<max>" caps p + q.
inline Family parse_family(std::string_view text) {
  auto grid = parse_grid(text);
  Family fam;
  for (const char* key : {"a", "p", "b", "q"}) {
    if (!grid.count(key)) throw std::invalid_argument(std::string("family needs a range for '") + key + "'");
  }
  fam.a = grid["a"];
  fam.p = grid["p"];
  fam.b = grid["b"];
  fam.q = grid["q"];
  if (grid.count("n")) fam.max_points = grid["n"].hi;
  for (const auto& [k, v] : grid) {
    if (k != "a" && k != "p" && k != "b" && k != "q" && k != "n")
      throw std::invalid_argument("unknown family key '" + k + "'");
  }
  if (fam.a.lo < 1 || fam.b.lo < 1) throw std::invalid_argument("multiplicities must be positive");
  return fam;
}

inline constexpr Int kDefaultMaxCells = 5'000'000;

struct FamilyMember {
  Int a, p, b, q;
  std::string str() const {
    std::string s = std::to_string(a) + "^" + std::to_string(p);
    if (q > 0) s += "," + std::to_string(b) + "^" + std::to_string(q);
    return s;
  }
  MultiplicitySequence sequence() const {
    std::vector<Int> v(static_cast<std::size_t>(p), a);
    v.insert(v.end(), static_cast<std::size_t>(q), b);
    return MultiplicitySequence(std::move(v));
  }
  auto key() const { return std::tuple(a, p, b, q); }
  bool operator==(const FamilyMember&) const = default;
};

struct ScanReport {
  Int cells = 0;     // admissible members checked
  std::vector<FamilyMember> failures;
};

/// Members of the family (a > b, p >= 1, p + q >= 9) for which the direct
/// criterion finds no witness d. Results are sorted by (a, p, b, q).
inline ScanReport scan_zastosowanie_failures(const Family& fam, Int max_cells = kDefaultMaxCells,
                                             unsigned threads = 1) {
  const Int raw = fam.a.width() * fam.p.width() * fam.b.width() * fam.q.width();
  if (raw > max_cells)
    throw std::invalid_argument("family has " + std::to_string(raw) + " cells, above the cap of " +
                                std::to_string(max_cells) + " (raise --max-cells)");

  auto scan_a = [&](Int a) {
    ScanReport part;
    for (Int p = std::max<Int>(fam.p.lo, 1); p <= fam.p.hi; ++p)
      for (Int b = fam.b.lo; b <= fam.b.hi && b < a; ++b)
        for (Int q = fam.q.lo; q <= fam.q.hi; ++q) {
          if (p + q < 9) continue;
          if (fam.max_points > 0 && p + q > fam.max_points) continue;
          ++part.cells;
          const auto in = CriterionInputs::two_level(a, p, b, q);
          if (!search_criterion(in).witness) part.failures.push_back({a, p, b, q});
        }
    return part;
  };

  ScanReport total;
  threads = std::max(1u, threads);
  std::vector<Int> as;
  for (Int a = fam.a.lo; a <= fam.a.hi; ++a) as.push_back(a);
  for (std::size_t base = 0; base < as.size(); base += threads) {
    std::vector<std::future<ScanReport>> jobs;
    for (std::size_t i = base; i < std::min(as.size(), base + threads); ++i)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, scan_a, as[i]));
    for (auto& j : jobs) {
      ScanReport part = j.get();
      total.cells += part.cells;
      total.failures.insert(total.failures.end(), part.failures.begin(), part.failures.end());
    }
  }
  std::sort(total.failures.begin(), total.failures.end(),
            [](const auto& x, const auto& y) { return x.key() < y.key(); });
  return total;
}

// ---------------------------------------------------------------------------
// Finite case grids
// ---------------------------------------------------------------------------

struct GridCell {
  std::string lemma;
  std::string params;
  bool pass = false;
  std::string value;
};

struct GridReport {
  std::vector<GridCell> cells;
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.pass; }));
  }
  bool all_pass() const { return failures() == 0; }
  void append(const GridReport& other) { cells.insert(cells.end(), other.cells.begin(), other.cells.end()); }
};

/// check_drugie over the pairs with m0^2 <= s <= 33 or s <= m0^2 <= 36 inside the given box.
inline GridReport verify_drugie(Range m0_range = {2, 6}, Range s_range = {8, 36}, bool restrict_to_proof = true) {
  GridReport rep;
  for (Int m0 = std::max<Int>(m0_range.lo, 2); m0 <= m0_range.hi; ++m0)
    for (Int s = std::max<Int>(s_range.lo, 8); s <= s_range.hi; ++s) {
      const bool in_grid = (m0 * m0 <= s && s <= 33) || (s <= m0 * m0 && m0 * m0 <= 36);
      if (restrict_to_proof && !in_grid) continue;
      const auto c = check_drugie(m0, s);
      rep.cells.push_back({"drugie", "m0=" + std::to_string(m0) + ",s=" + std::to_string(s), c.holds(),
                           "t_max=" + std::to_string(c.t_max)});
    }
  return rep;
}

/// Part b for m in m_range and s in s_range, every m0 for which the hypothesis holds.
inline GridReport verify_hopefullylast(Range m_range = {2, 3}, Range s_range = {8, 21},
                                       HopefullyPart part = HopefullyPart::B) {
  GridReport rep;
  for (Int m = std::max<Int>(m_range.lo, 2); m <= m_range.hi; ++m)
    for (Int s = std::max<Int>(s_range.lo, 8); s <= s_range.hi; ++s) {
      // For part b the hypothesis m0 sqrt(s+2) <= sm + m0 fails for all large m0;
      // for part a it fails for all small m0. Scan past the switch point.
      const Int m0_max = 4 * s * m + 8;
      for (Int m0 = 1; m0 <= m0_max; ++m0) {
        const auto inst = check_hopefullylast(m0, m, s, part);
        if (!inst.hypothesis) continue;
        rep.cells.push_back({part == HopefullyPart::A ? "hopefullylast-a" : "hopefullylast-b",
                             "m0=" + std::to_string(m0) + ",m=" + std::to_string(m) + ",s=" + std::to_string(s),
                             inst.conclusion, ""});
      }
    }
  return rep;
}

/// nowa2 >= 0 for s in s_range, x in x_range and all admissible (y, t).
inline GridReport verify_nowa2(Range x_range = {4, 33}, Range s_range = {9, 16}) {
  GridReport rep;
  for (Int s = s_range.lo; s <= s_range.hi; ++s)
    for (Int x = x_range.lo; x <= x_range.hi; ++x)
      for (Int y = (x + 1) / 2; y <= x; ++y)
        for (Int t = 4; t <= s; ++t) {
          if (!nowa2_admissible(x, y, s, t)) continue;
          const BigInt v = nowa2_value(x, y, s, t);
          rep.cells.push_back({"nowa2",
                               "x=" + std::to_string(x) + ",y=" + std::to_string(y) + ",s=" + std::to_string(s) +
                                   ",t=" + std::to_string(t),
                               v >= 0, v.str()});
        }
  return rep;
}

/// comb1 over every uniformly fat sequence with the given m1 and s (excluding 2,1^(s-1)).
inline GridReport verify_comb1(Range m1_range = {4, 12}, Range s_range = {9, 14}) {
  GridReport rep;
  for (Int m1 = std::max<Int>(m1_range.lo, 1); m1 <= m1_range.hi; ++m1)
    for (Int s = std::max<Int>(s_range.lo, 9); s <= s_range.hi; ++s) {
      const Int lo = (m1 + 1) / 2;
      // non-increasing tails m_2..m_s with values in [lo, m1]
      std::vector<Int> tail(static_cast<std::size_t>(s - 1), m1);
      while (true) {
        std::vector<Int> seq{m1};
        seq.insert(seq.end(), tail.begin(), tail.end());
        const MultiplicitySequence ms(seq);
        const bool exception = m1 == 2 && ms.m(2) == 1;
        if (!exception) {
          const auto c = check_comb1(ms);
          rep.cells.push_back({"comb1", format_compressed(ms.values()), c.holds, c.T.str()});
        }
        // next non-increasing tail in reverse lexicographic order
        std::size_t i = tail.size();
        while (i > 0 && tail[i - 1] == lo) --i;
        if (i == 0) break;
        --tail[i - 1];
        for (std::size_t j = i; j < tail.size(); ++j) tail[j] = tail[i - 1];
      }
    }
  return rep;
}

/// Every finite case the lemma proofs delegate to direct computation.
inline GridReport verify_finite_cases() {
  GridReport rep = verify_drugie();
  rep.append(verify_hopefullylast());
  rep.append(verify_nowa2());
  return rep;
}

// ---------------------------------------------------------------------------
// Prover / oracle audit
// ---------------------------------------------------------------------------

struct CrosscheckLimits {
  Int d_max = 12;
  Int s_max = 8;
  Int m_max = 4;
};

struct CrosscheckViolation {
  Int d;
  std::vector<Int> mults;
  std::string prover;
  Int dim_observed;
  std::string edim;
};

struct CrosscheckReport {
  Int cells = 0;
  Int chain_proofs = 0;
  Int criterion_proofs = 0;
  Int oracle_checks = 0;
  std::vector<CrosscheckViolation> violations;
};

/// All non-increasing sequences of length 1..s_max with entries in 1..m_max.
inline std::vector<std::vector<Int>> enumerate_sorted_sequences(Int s_max, Int m_max) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  auto rec = [&](auto&& self, Int max_val) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<Int>(cur.size()) == s_max) return;
    for (Int v = max_val; v >= 1; --v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, m_max);
  return out;
}

/// For every (d, mults) in range: whenever a prover claims non-speciality the
/// oracle must certify full rank with dim = edim.
inline CrosscheckReport crosscheck_reduction_vs_oracle(const CrosscheckLimits& lim,
                                                       const oracle::OracleOptions& opt = {},
                                                       unsigned threads = 1) {
  const auto seqs = enumerate_sorted_sequences(lim.s_max, lim.m_max);
  auto check_d = [&](Int d) {
    CrosscheckReport part;
    for (const auto& raw : seqs) {
      const MultiplicitySequence ms(raw);
      ++part.cells;
      std::vector<std::string> provers;
      for (auto strategy : {OrderStrategy::descending(), OrderStrategy::backtrack(6)}) {
        if (prove_h1_regular(d, ms, strategy).nonspecial == Proof::Proven) {
          provers.push_back("chain:" + strategy.str());
          ++part.chain_proofs;
        }
      }
      if (ms.count() >= 4 && criterion_kryterium(d, ms).nonspecial == Proof::Proven) {
        provers.push_back("criterion");
        ++part.criterion_proofs;
      }
      if (provers.empty()) continue;
      ++part.oracle_checks;
      const auto rep = oracle::dim_system(d, ms, opt);
      if (!(rep.full_rank() && BigInt(rep.dim_observed) == rep.edim)) {
        for (const auto& p : provers)
          part.violations.push_back({d, raw, p, rep.dim_observed, rep.edim.str()});
      }
    }
    return part;
  };

  CrosscheckReport total;
  threads = std::max(1u, threads);
  for (Int base = 0; base <= lim.d_max; base += threads) {
    std::vector<std::future<CrosscheckReport>> jobs;
    for (Int d = base; d <= std::min<Int>(lim.d_max, base + threads - 1); ++d)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, check_d, d));
    for (auto& j : jobs) {
      auto part = j.get();
      total.cells += part.cells;
      total.chain_proofs += part.chain_proofs;
      total.criterion_proofs += part.criterion_proofs;
      total.oracle_checks += part.oracle_checks;
      total.violations.insert(total.violations.end(), part.violations.begin(), part.violations.end());
    }
  }
  return total;
}

}  // namespace fatpoints::search
