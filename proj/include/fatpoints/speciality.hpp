#pragma once

// Non-speciality and h^1-regularity of L(d; m_1..m_s) at general points:
// the reduction-chain prover, the closed-form criterion, and the regularity
// bound derived from it.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fatpoints/core.hpp"
#include "fatpoints/reduction.hpp"

namespace fatpoints {

enum class Proof { Proven, Unknown };
enum class Effectivity { Proven, RefutedByVdim, Unknown };
enum class SpecialityRoute { ReductionChain, Criterion };

inline const char* to_string(Proof p) { return p == Proof::Proven ? "proven" : "unknown"; }
inline const char* to_string(Effectivity e) {
  switch (e) {
    case Effectivity::Proven: return "proven";
    case Effectivity::RefutedByVdim: return "refuted-by-vdim";
    default: return "unknown";
  }
}
inline const char* to_string(SpecialityRoute r) {
  return r == SpecialityRoute::ReductionChain ? "reduction-chain" : "criterion";
}

struct SpecialityVerdict {
  Int d = 0;
  MultiplicitySequence mults{1};
  Proof nonspecial = Proof::Unknown;
  Effectivity effective = Effectivity::Unknown;
  Proof h1_regular = Proof::Unknown;
  SpecialityRoute route = SpecialityRoute::ReductionChain;
  /// Present for chain proofs (and for failed chains, the completed prefix is in `failure`).
  std::optional<ReductionCertificate> certificate;
  std::optional<ChainFailure> failure;
  /// Reduction order that produced the certificate (or the last one tried).
  std::vector<Int> order;
  std::size_t orders_tried = 0;
  std::string detail;

  bool consistent() const {
    if (h1_regular == Proof::Proven &&
        (nonspecial != Proof::Proven || effective != Effectivity::Proven))
      return false;
    if (route == SpecialityRoute::ReductionChain && nonspecial == Proof::Proven && !certificate)
      return false;
    return true;
  }
};

/// (1, 2, ..., d+1): the monomials of degree <= d grouped by anti-diagonal.
inline IntSequence staircase(Int d) {
  if (d < 0) throw std::invalid_argument("staircase: d must be non-negative");
  std::vector<Int> v(static_cast<std::size_t>(d + 1));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Int>(i + 1);
  return IntSequence(std::move(v));
}

/// The order m_1, m_2, m_3, m_5, ..., m_s, m_4 used by the closed-form criterion.
inline std::vector<Int> order_kryterium(const MultiplicitySequence& mults) {
  if (mults.count() < 4) throw HypothesisError("order_kryterium needs at least 4 multiplicities");
  std::vector<Int> order = mults.values();
  Int m4 = order[3];
  order.erase(order.begin() + 3);
  order.push_back(m4);
  return order;
}

struct OrderStrategy {
  enum class Kind { AsGiven, Descending, Kryterium, Backtrack };
  Kind kind = Kind::Descending;
  std::size_t max_orders = 1;  // Backtrack only

  static OrderStrategy as_given() { return {Kind::AsGiven, 1}; }
  static OrderStrategy descending() { return {Kind::Descending, 1}; }
  static OrderStrategy kryterium() { return {Kind::Kryterium, 1}; }
  static OrderStrategy backtrack(std::size_t n = 1) { return {Kind::Backtrack, std::max<std::size_t>(n, 1)}; }

  std::string str() const {
    switch (kind) {
      case Kind::AsGiven: return "as-given";
      case Kind::Descending: return "descending";
      case Kind::Kryterium: return "kryterium";
      default: return "backtrack=" + std::to_string(max_orders);
    }
  }
};

/// "as-given", "descending", "kryterium" or "backtrack=<n>".
inline OrderStrategy parse_order_strategy(std::string_view s) {
  if (s == "as-given") return OrderStrategy::as_given();
  if (s == "descending") return OrderStrategy::descending();
  if (s == "kryterium") return OrderStrategy::kryterium();
  if (s.rfind("backtrack=", 0) == 0) {
    Int n = detail::parse_nonnegative(s.substr(10));
    if (n == 0) throw std::invalid_argument("backtrack limit must be positive");
    return OrderStrategy::backtrack(static_cast<std::size_t>(n));
  }
  if (s == "backtrack") return OrderStrategy::backtrack(1);
  throw std::invalid_argument("unknown order strategy '" + std::string(s) + "'");
}

/// Chain prover for an explicit reduction order (any permutation of the multiplicities).
inline SpecialityVerdict prove_with_order(Int d, std::span<const Int> order) {
  if (d < 0) throw std::invalid_argument("degree d must be non-negative");
  SpecialityVerdict v;
  v.d = d;
  v.mults = MultiplicitySequence(std::vector<Int>(order.begin(), order.end()));
  v.route = SpecialityRoute::ReductionChain;
  v.order.assign(order.begin(), order.end());
  v.orders_tried = 1;

  auto outcome = reduce_chain(staircase(d), order);
  if (auto* cert = std::get_if<ReductionCertificate>(&outcome)) {
    v.nonspecial = Proof::Proven;
    if (cert->final_size > 0) {
      v.effective = Effectivity::Proven;
      v.h1_regular = Proof::Proven;
      v.detail = "all reductions succeeded, final size " + std::to_string(cert->final_size) + " > 0";
    } else {
      v.effective = Effectivity::RefutedByVdim;
      v.detail = "all reductions succeeded with final size 0: non-special and empty (vdim = -1)";
    }
    v.certificate = std::move(*cert);
  } else {
    auto& f = std::get<ChainFailure>(outcome);
    v.detail = "reduction " + std::to_string(f.step_index) + " (m=" + std::to_string(f.failure.m) +
               ") failed: " + f.failure.describe();
    v.failure = std::move(f);
  }
  return v;
}

namespace detail {

inline std::vector<std::vector<Int>> candidate_orders(const MultiplicitySequence& mults,
                                                      const OrderStrategy& strategy) {
  using K = OrderStrategy::Kind;
  switch (strategy.kind) {
    case K::AsGiven:
    case K::Descending: return {mults.values()};
    case K::Kryterium:
      return {mults.count() >= 4 ? order_kryterium(mults) : mults.values()};
    case K::Backtrack: break;
  }
  std::vector<std::vector<Int>> out;
  std::set<std::vector<Int>> seen;
  auto add = [&](std::vector<Int> o) {
    if (out.size() < strategy.max_orders && seen.insert(o).second) out.push_back(std::move(o));
  };
  add(mults.values());
  if (mults.count() >= 4) add(order_kryterium(mults));
  std::vector<Int> perm = mults.values();
  while (out.size() < strategy.max_orders && std::prev_permutation(perm.begin(), perm.end())) {
    add(perm);
  }
  return out;
}

}  // namespace detail

/// Runs the chain prover on staircase(d) with the reduction orders selected by
/// `strategy`, returning the first proof found. One-sided: failure is "unknown".
inline SpecialityVerdict prove_h1_regular(Int d, const MultiplicitySequence& mults,
                                          OrderStrategy strategy = OrderStrategy::descending()) {
  auto orders = detail::candidate_orders(mults, strategy);
  SpecialityVerdict last;
  std::size_t tried = 0;
  for (const auto& order : orders) {
    ++tried;
    last = prove_with_order(d, order);
    last.mults = mults;
    last.orders_tried = tried;
    if (last.nonspecial == Proof::Proven) break;
  }
  return last;
}

/// (3 m4 - 1)(m4 - 2) / 2: the criterion's lower bound on vdim.
/// Equals -1 for m4 = 1 and is non-negative for m4 >= 2.
inline BigInt kryterium_vdim_threshold(Int m4) {
  return BigInt(3 * m4 - 1) * (m4 - 2) / 2;
}

/// Closed-form criterion: for s >= 4, d >= m1 + m2 and
/// vdim >= (3 m4 - 1)(m4 - 2)/2, the system is non-special; it is
/// effective when additionally L = vdim + 1 >= 1.
inline SpecialityVerdict criterion_kryterium(Int d, const MultiplicitySequence& mults) {
  if (mults.count() < 4) throw HypothesisError("criterion needs s >= 4 points");
  if (d < 0) throw std::invalid_argument("degree d must be non-negative");
  SpecialityVerdict v;
  v.d = d;
  v.mults = mults;
  v.route = SpecialityRoute::Criterion;
  v.order = order_kryterium(mults);

  const BigInt vd = vdim(2, d, mults);
  const BigInt L = vd + 1;
  const BigInt threshold = kryterium_vdim_threshold(mults.m(4));
  const bool degree_ok = d >= mults.m(1) + mults.m(2);
  const bool size_ok = vd >= threshold;

  std::ostringstream os;
  os << "d=" << d << (degree_ok ? " >= " : " < ") << "m1+m2=" << mults.m(1) + mults.m(2)
     << "; L=vdim+1=" << L << (size_ok ? " >= " : " < ") << "R=" << threshold + 1;
  if (degree_ok && size_ok) {
    v.nonspecial = Proof::Proven;
    if (L >= 1) {
      v.effective = Effectivity::Proven;
      v.h1_regular = Proof::Proven;
    } else {
      v.effective = Effectivity::RefutedByVdim;
      os << "; L=0: non-special and empty";
    }
  }
  v.detail = os.str();
  return v;
}

/// d+1 for the least d >= m1 + m2 at which the criterion proves h^1-regularity;
/// an upper bound on the Castelnuovo-Mumford regularity of the fat points ideal.
inline Int reg_upper_bound(const MultiplicitySequence& mults) {
  if (mults.count() < 4) throw HypothesisError("regularity bound needs s >= 4 points");
  for (Int d = mults.m(1) + mults.m(2);; ++d) {
    if (criterion_kryterium(d, mults).h1_regular == Proof::Proven) return d + 1;
  }
}

}  // namespace fatpoints
