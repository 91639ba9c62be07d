#pragma once

// Sequence types, exact comparison helpers and dimension bookkeeping for
// planar fat-point linear systems.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fatpoints {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

/// Largest entry accepted by the parsers. Keeps every sum and square of
/// sequence data far away from the std::int64_t limits.
inline constexpr Int kMaxEntry = 1'000'000'000;

/// Raised when an input violates a theorem hypothesis (e.g. too few points).
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal invariant fails. Never expected in a correct build.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

// ---------------------------------------------------------------------------
// IntSequence
// ---------------------------------------------------------------------------

/// A finite sequence of non-negative integers, e.g. a reduction state.
class IntSequence {
 public:
  IntSequence() = default;
  explicit IntSequence(std::vector<Int> entries) : entries_(std::move(entries)) {
    for (Int e : entries_) {
      if (e < 0) throw std::invalid_argument("IntSequence entries must be non-negative");
    }
  }
  IntSequence(std::initializer_list<Int> entries) : IntSequence(std::vector<Int>(entries)) {}

  const std::vector<Int>& entries() const noexcept { return entries_; }
  std::size_t length() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  /// 1-indexed access, matching the positional conventions of the reduction tables.
  Int at(std::size_t pos) const { return entries_.at(pos - 1); }
  Int operator[](std::size_t i) const { return entries_[i]; }

  /// Copy with trailing zeros removed.
  IntSequence stripped() const {
    std::vector<Int> v = entries_;
    while (!v.empty() && v.back() == 0) v.pop_back();
    return IntSequence(std::move(v));
  }

  bool operator==(const IntSequence&) const = default;

 private:
  std::vector<Int> entries_;
};

/// Sum of the entries.
inline Int size(const IntSequence& seq) {
  return std::accumulate(seq.entries().begin(), seq.entries().end(), Int{0});
}

/// True iff len(a) <= len(b) and a_i <= b_i for every i <= len(a).
inline bool dominated_by(const IntSequence& a, const IntSequence& b) {
  if (a.length() > b.length()) return false;
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MultiplicitySequence
// ---------------------------------------------------------------------------

/// Non-empty multiplicities m_1 >= ... >= m_s >= 1. Input is sorted on construction.
class MultiplicitySequence {
 public:
  explicit MultiplicitySequence(std::vector<Int> mults) : mults_(std::move(mults)) {
    if (mults_.empty()) throw std::invalid_argument("multiplicity sequence must be non-empty");
    for (Int m : mults_) {
      if (m <= 0) throw std::invalid_argument("multiplicities must be positive");
      if (m > kMaxEntry) throw std::invalid_argument("multiplicity too large");
    }
    std::sort(mults_.begin(), mults_.end(), std::greater<>());
  }
  MultiplicitySequence(std::initializer_list<Int> mults)
      : MultiplicitySequence(std::vector<Int>(mults)) {}

  const std::vector<Int>& values() const noexcept { return mults_; }
  std::size_t count() const noexcept { return mults_.size(); }
  /// 1-indexed m_i.
  Int m(std::size_t i) const { return mults_.at(i - 1); }
  Int largest() const { return mults_.front(); }
  Int smallest() const { return mults_.back(); }

  /// Sigma = sum m_i.
  BigInt sum() const {
    BigInt s = 0;
    for (Int m : mults_) s += m;
    return s;
  }
  /// Q = sum m_i^2.
  BigInt sum_of_squares() const {
    BigInt q = 0;
    for (Int m : mults_) q += BigInt(m) * m;
    return q;
  }
  /// sum m_i (m_i + 1).
  BigInt sum_m_mplus1() const {
    BigInt q = 0;
    for (Int m : mults_) q += BigInt(m) * (m + 1);
    return q;
  }

  bool all_equal() const { return mults_.front() == mults_.back(); }

  bool operator==(const MultiplicitySequence&) const = default;

 private:
  std::vector<Int> mults_;
};

// ---------------------------------------------------------------------------
// Exact binomials and dimensions
// ---------------------------------------------------------------------------

/// C(n, k) with C(n, k) = 0 for k < 0 or k > n; n may be negative (returns 0).
inline BigInt binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (Int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// Virtual dimension C(n+t, n) - sum C(n+m_i-1, n) - 1 of L_n(t; m_1..m_s).
inline BigInt vdim(Int n, Int t, const MultiplicitySequence& mults) {
  if (n <= 0) throw std::invalid_argument("vdim: ambient dimension must be positive");
  if (t < 0) throw std::invalid_argument("vdim: degree must be non-negative");
  BigInt v = binomial(n + t, n) - 1;
  for (Int m : mults.values()) v -= binomial(n + m - 1, n);
  return v;
}

/// Expected dimension max(vdim, -1).
inline BigInt edim(Int n, Int t, const MultiplicitySequence& mults) {
  BigInt v = vdim(n, t, mults);
  return v < -1 ? BigInt(-1) : v;
}

// ---------------------------------------------------------------------------
// QuadraticBound
// ---------------------------------------------------------------------------

/// The real number numerator / sqrt(radicand), compared against integers exactly.
struct QuadraticBound {
  BigInt numerator;
  BigInt radicand;

  QuadraticBound(BigInt a, BigInt k) : numerator(std::move(a)), radicand(std::move(k)) {
    if (radicand <= 0) throw std::invalid_argument("QuadraticBound: radicand must be positive");
    if (numerator < 0) throw std::invalid_argument("QuadraticBound: numerator must be non-negative");
  }

  /// An integer bound R = a, i.e. a / sqrt(1).
  static QuadraticBound integer(BigInt a) { return QuadraticBound(std::move(a), 1); }

  /// floor(numerator / sqrt(radicand)).
  BigInt floor() const {
    BigInt q = (numerator * numerator) / radicand;
    return boost::multiprecision::sqrt(q);
  }

  /// Approximate value, for display only.
  double approx() const {
    return numerator.convert_to<double>() / std::sqrt(radicand.convert_to<double>());
  }

  std::string str() const {
    if (radicand == 1) return numerator.str();
    return numerator.str() + "/sqrt(" + radicand.str() + ")";
  }
};

/// Order of v relative to A/sqrt(k), decided in integer arithmetic.
inline std::strong_ordering compare(const BigInt& v, const QuadraticBound& bound) {
  if (v < 0) return std::strong_ordering::less;
  BigInt lhs = v * v * bound.radicand;
  BigInt rhs = bound.numerator * bound.numerator;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline std::strong_ordering compare(Int v, const QuadraticBound& bound) {
  return compare(BigInt(v), bound);
}

inline bool at_most(const BigInt& v, const QuadraticBound& bound) {
  return compare(v, bound) != std::strong_ordering::greater;
}

inline const char* ordering_name(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "less";
  if (o == std::strong_ordering::greater) return "greater";
  return "equal";
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline Int parse_nonnegative(std::string_view tok) {
  tok = trim(tok);
  if (tok.empty()) throw std::invalid_argument("empty number in list");
  Int v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("malformed number '" + std::string(tok) + "'");
    v = v * 10 + (c - '0');
    if (v > kMaxEntry) throw std::invalid_argument("number too large: '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses "1,2,3", ranges "1..10" and the compressed family notation "8^9,1^103"
/// (value 8 repeated 9 times). Tokens may be mixed.
inline std::vector<Int> parse_int_list(std::string_view text) {
  std::vector<Int> out;
  text = detail::trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = detail::trim(text.substr(start, comma - start));
    if (auto dots = tok.find(".."); dots != std::string_view::npos) {
      Int lo = detail::parse_nonnegative(tok.substr(0, dots));
      Int hi = detail::parse_nonnegative(tok.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty range '" + std::string(tok) + "'");
      if (hi - lo > 1'000'000) throw std::invalid_argument("range too long");
      for (Int v = lo; v <= hi; ++v) out.push_back(v);
    } else if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      Int value = detail::parse_nonnegative(tok.substr(0, caret));
      Int reps = detail::parse_nonnegative(tok.substr(caret + 1));
      if (reps > 1'000'000) throw std::invalid_argument("repetition count too large");
      out.insert(out.end(), static_cast<std::size_t>(reps), value);
    } else {
      out.push_back(detail::parse_nonnegative(tok));
    }
    start = comma + 1;
  }
  return out;
}

inline IntSequence parse_sequence(std::string_view text) { return IntSequence(parse_int_list(text)); }

inline MultiplicitySequence parse_multiplicities(std::string_view text) {
  return MultiplicitySequence(parse_int_list(text));
}

/// Comma-separated plain form.
inline std::string format_list(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

/// Compressed a^b form for runs of length > 1, e.g. "8^9,1^103".
inline std::string format_compressed(const std::vector<Int>& v) {
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    os << (first ? "" : ",") << v[i];
    if (j - i > 1) os << '^' << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

inline std::string to_string(const IntSequence& s) { return "(" + format_list(s.entries()) + ")"; }
inline std::string to_string(const MultiplicitySequence& m) {
  return "(" + format_compressed(m.values()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const IntSequence& s) { return os << to_string(s); }
inline std::ostream& operator<<(std::ostream& os, const MultiplicitySequence& m) {
  return os << to_string(m);
}

}  // namespace fatpoints
