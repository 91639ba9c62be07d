#pragma once

// The m-reduction of an integer sequence, chains of reductions, and the
// classification of non-reducible sequences.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fatpoints/core.hpp"

namespace fatpoints {

/// One reducer r_k consumed at a-block position k (1-indexed from the start of the block).
struct Reducer {
  std::size_t position;
  Int value;
  bool operator==(const Reducer&) const = default;
};

/// A successful m-reduction. Reducers are listed in the order the algorithm
/// chose them, i.e. k = m, m-1, ..., 1.
struct ReductionStep {
  Int m;
  IntSequence input;
  std::vector<Reducer> reducers;
  IntSequence output;

  /// Reducers r_1..r_m indexed by position.
  std::vector<Int> reducers_by_position() const {
    std::vector<Int> out(static_cast<std::size_t>(m), 0);
    for (const auto& r : reducers) out[r.position - 1] = r.value;
    return out;
  }
  /// Offset of a_1 inside the full sequence (0-based), i.e. len(input) - m.
  std::size_t block_offset() const { return input.length() - static_cast<std::size_t>(m); }
};

enum class FailureReason { TooShort, FlatTail };

inline const char* to_string(FailureReason r) {
  return r == FailureReason::TooShort ? "TooShort" : "FlatTail";
}

/// Why an m-reduction stopped.
///
/// For FlatTail, `stop_index` is k' (a-block index where a reducer was
/// requested twice), `consumed_at` is the earlier a-block index l' that had
/// already used it, and `witness` is (k, l) = (r-m+k', r-m+l') in full-sequence
/// positions: k < l, b_k <= b_l and b_k < m.
struct ReductionFailure {
  FailureReason reason = FailureReason::TooShort;
  Int m = 0;
  IntSequence input;
  std::size_t stop_index = 0;
  std::size_t consumed_at = 0;
  Int repeated_reducer = 0;
  std::pair<std::size_t, std::size_t> witness{0, 0};
  std::vector<Reducer> partial_reducers;

  std::string describe() const {
    std::ostringstream os;
    if (reason == FailureReason::TooShort) {
      os << to_string(input) << " is too short for a " << m << "-reduction (length "
         << input.length() << " < " << m << ")";
    } else {
      os << to_string(input) << " is not " << m << "-reducible: reducer " << repeated_reducer
         << " requested at a_" << stop_index << " was already used at a_" << consumed_at
         << " (stop, Z_" << stop_index - 1 << " = Z_" << stop_index << "); witness (k,l) = ("
         << witness.first << "," << witness.second << ")";
    }
    return os.str();
  }
};

using ReductionOutcome = std::variant<ReductionStep, ReductionFailure>;

/// Runs the reduction algorithm with parameter m on a sequence of positive integers.
///
/// The last m entries form the block a_1..a_m. Starting from Z = {1..m} the
/// algorithm walks k = m..1, takes z_k = max Z, picks r_k = a_k when
/// a_k < m and a_k <= z_k and r_k = z_k otherwise, and stops if r_k is no
/// longer available.
inline ReductionOutcome reduce_once(const IntSequence& seq, Int m) {
  if (m <= 0) throw std::invalid_argument("reduction parameter m must be positive");
  for (std::size_t i = 0; i < seq.length(); ++i) {
    if (seq[i] == 0) {
      throw std::invalid_argument("reduce_once: zero entry at position " + std::to_string(i + 1) +
                                  " in " + to_string(seq) + " (strip trailing zeros first)");
    }
  }
  const auto um = static_cast<std::size_t>(m);
  if (seq.length() < um) {
    ReductionFailure f;
    f.reason = FailureReason::TooShort;
    f.m = m;
    f.input = seq;
    return f;
  }

  const std::size_t offset = seq.length() - um;
  // used_at[r] = a-block index that consumed reducer r, 0 while available.
  std::vector<std::size_t> used_at(um + 1, 0);
  std::size_t z = um;  // max of the available reducers
  std::vector<Int> out = seq.entries();
  std::vector<Reducer> reducers;
  reducers.reserve(um);

  for (std::size_t k = um; k >= 1; --k) {
    const Int a = seq[offset + k - 1];
    const Int r = (a < m && a <= static_cast<Int>(z)) ? a : static_cast<Int>(z);
    const auto ur = static_cast<std::size_t>(r);
    if (used_at[ur] != 0) {
      ReductionFailure f;
      f.reason = FailureReason::FlatTail;
      f.m = m;
      f.input = seq;
      f.stop_index = k;
      f.consumed_at = used_at[ur];
      f.repeated_reducer = r;
      f.witness = {offset + k, offset + used_at[ur]};
      f.partial_reducers = std::move(reducers);
      return f;
    }
    used_at[ur] = k;
    out[offset + k - 1] = a - r;
    reducers.push_back({k, r});
    while (z > 0 && used_at[z] != 0) --z;
  }

  ReductionStep step{m, seq, std::move(reducers), IntSequence(std::move(out))};
  if (size(step.output) != size(seq) - m * (m + 1) / 2) {
    throw InvariantViolation("reduction changed size by the wrong amount");
  }
  return step;
}

/// The failure record for a sequence known not to be m-reducible.
inline ReductionFailure classify_failure(const IntSequence& seq, Int m) {
  auto outcome = reduce_once(seq, m);
  if (auto* f = std::get_if<ReductionFailure>(&outcome)) return *f;
  throw std::logic_error("classify_failure: " + to_string(seq) + " is " + std::to_string(m) +
                         "-reducible");
}

/// Full trace of a chain of successful reductions.
struct ReductionCertificate {
  IntSequence initial;
  std::vector<ReductionStep> steps;
  IntSequence final;  // last output with trailing zeros stripped
  Int final_size = 0;
};

/// First failing reduction of a chain; `step_index` is 1-based.
struct ChainFailure {
  ReductionFailure failure;
  std::size_t step_index;
  std::vector<ReductionStep> completed;
};

using ChainOutcome = std::variant<ReductionCertificate, ChainFailure>;

/// Applies m-reductions for each m in order, stripping trailing zeros between steps.
template <typename Range>
ChainOutcome reduce_chain(const IntSequence& initial, const Range& ms) {
  ReductionCertificate cert;
  cert.initial = initial;
  IntSequence current = initial;
  std::size_t index = 0;
  for (Int m : ms) {
    ++index;
    auto outcome = reduce_once(current, m);
    if (auto* f = std::get_if<ReductionFailure>(&outcome)) {
      return ChainFailure{std::move(*f), index, std::move(cert.steps)};
    }
    auto& step = std::get<ReductionStep>(outcome);
    current = step.output.stripped();
    cert.steps.push_back(std::move(step));
  }
  cert.final = current;
  cert.final_size = size(current);
  return cert;
}

inline ChainOutcome reduce_chain(const IntSequence& initial, std::initializer_list<Int> ms) {
  return reduce_chain(initial, std::vector<Int>(ms));
}

/// Renders a certificate as a trace table: a value row per state and a delta
/// row per reduction with -r_k under each altered position; m_j on the right.
inline std::string render_trace(const ReductionCertificate& cert) {
  const std::size_t width = cert.initial.length();
  std::vector<std::string> header;
  for (std::size_t i = 1; i <= width; ++i) header.push_back("a" + std::to_string(i));

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> tail;
  auto value_row = [&](const IntSequence& s) {
    std::vector<std::string> row(width);
    for (std::size_t i = 0; i < s.length(); ++i) row[i] = std::to_string(s[i]);
    rows.push_back(std::move(row));
    tail.emplace_back();
  };
  value_row(cert.initial);
  for (const auto& step : cert.steps) {
    std::vector<std::string> delta(width);
    const std::size_t off = step.block_offset();
    for (const auto& r : step.reducers) delta[off + r.position - 1] = "-" + std::to_string(r.value);
    rows.push_back(std::move(delta));
    tail.push_back(std::to_string(step.m));
    value_row(step.output);
  }

  std::size_t cell = 3;
  for (const auto& h : header) cell = std::max(cell, h.size() + 1);
  for (const auto& row : rows)
    for (const auto& c : row) cell = std::max(cell, c.size() + 1);

  std::ostringstream os;
  auto pad = [&](const std::string& s) { os << std::string(cell - s.size(), ' ') << s; };
  for (const auto& h : header) pad(h);
  os << " | m_j\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& c : rows[i]) pad(c);
    os << " |";
    if (!tail[i].empty()) os << ' ' << tail[i];
    os << '\n';
  }
  os << "final " << to_string(cert.final) << ", size " << cert.final_size << '\n';
  return os.str();
}

}  // namespace fatpoints
