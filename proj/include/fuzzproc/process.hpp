#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fuzzproc/error.hpp"
#include "fuzzproc/grade.hpp"
#include "fuzzproc/universe.hpp"

namespace fuzzproc {

/// Fuzzy subset of a universe. Stored densely by label index; a zero grade is
/// non-membership, so the support is exactly the set of positive entries.
class FuzzySubset {
 public:
  explicit FuzzySubset(Universe universe)
      : universe_(std::move(universe)), grades_(universe_.size()) {}

  FuzzySubset(Universe universe, std::vector<Grade> grades)
      : universe_(std::move(universe)), grades_(std::move(grades)) {
    if (grades_.size() != universe_.size()) {
      throw Error(ErrorKind::InvalidArgument, "grade table does not match universe size");
    }
  }

  /// Constant subset with every label at `g` (1_E, 0_E).
  static FuzzySubset constant(const Universe& universe, Grade g) {
    return FuzzySubset(universe, std::vector<Grade>(universe.size(), g));
  }

  const Universe& universe() const noexcept { return universe_; }

  const Grade& at(std::size_t i) const { return grades_.at(i); }
  const Grade& operator[](std::size_t i) const noexcept { return grades_[i]; }
  Grade grade(std::string_view label) const { return grades_[universe_.index_of(label)]; }
  bool contains(std::size_t i) const { return grades_.at(i).positive(); }

  std::span<const Grade> dense() const noexcept { return grades_; }

  /// Labels with positive grade, in universe order.
  std::vector<std::string> support() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < grades_.size(); ++i) {
      if (grades_[i].positive()) out.push_back(universe_.label(i));
    }
    return out;
  }

  /// (label, grade) pairs of the support, in universe order.
  std::vector<std::pair<std::string, Grade>> entries() const {
    std::vector<std::pair<std::string, Grade>> out;
    for (std::size_t i = 0; i < grades_.size(); ++i) {
      if (grades_[i].positive()) out.emplace_back(universe_.label(i), grades_[i]);
    }
    return out;
  }

  bool is_constant(const Grade& g) const {
    for (const auto& x : grades_) {
      if (x != g) return false;
    }
    return true;
  }

  friend bool operator==(const FuzzySubset& a, const FuzzySubset& b) {
    return a.universe_ == b.universe_ && a.grades_ == b.grades_;
  }

 private:
  Universe universe_;
  std::vector<Grade> grades_;
};

enum class BlockingPolicy { Strict, RemoveBlockings };

enum class EqualityMode { ValueLevel, SupportLevel };

inline constexpr std::string_view to_string(EqualityMode mode) noexcept {
  return mode == EqualityMode::ValueLevel ? "value" : "support";
}

enum class ExecutionClass { Goal, Escape, Reject, Blocking };

inline constexpr std::string_view to_string(ExecutionClass c) noexcept {
  switch (c) {
    case ExecutionClass::Goal: return "goal";
    case ExecutionClass::Escape: return "escape";
    case ExecutionClass::Reject: return "reject";
    case ExecutionClass::Blocking: return "blocking";
  }
  return "?";
}

inline ExecutionClass classify_grades(const Grade& delta, const Grade& gamma) noexcept {
  if (delta.positive()) return gamma.positive() ? ExecutionClass::Goal : ExecutionClass::Reject;
  return gamma.positive() ? ExecutionClass::Escape : ExecutionClass::Blocking;
}

/// A contract p = (delta, gamma): delta grades how accessible each execution
/// is to the device, gamma how acceptable it is to the environment.
class FuzzyProcess {
 public:
  FuzzyProcess(FuzzySubset delta, FuzzySubset gamma)
      : delta_(std::move(delta)), gamma_(std::move(gamma)) {
    if (!(delta_.universe() == gamma_.universe())) {
      throw Error(ErrorKind::UniverseMismatch, "delta and gamma range over different universes");
    }
  }

  /// Builds a process from full grade tables. Blockings are allowed here;
  /// operators reject them on input.
  static FuzzyProcess from_dense(const Universe& universe, std::vector<Grade> delta,
                                 std::vector<Grade> gamma) {
    return FuzzyProcess(FuzzySubset(universe, std::move(delta)),
                        FuzzySubset(universe, std::move(gamma)));
  }

  const Universe& universe() const noexcept { return delta_.universe(); }
  const FuzzySubset& delta() const noexcept { return delta_; }
  const FuzzySubset& gamma() const noexcept { return gamma_; }

  ExecutionClass class_at(std::size_t i) const { return classify_grades(delta_[i], gamma_[i]); }

  std::optional<std::size_t> first_blocking() const {
    for (std::size_t i = 0; i < universe().size(); ++i) {
      if (class_at(i) == ExecutionClass::Blocking) return i;
    }
    return std::nullopt;
  }

  bool blocking_free() const { return !first_blocking().has_value(); }

  friend bool operator==(const FuzzyProcess& a, const FuzzyProcess& b) {
    return a.delta_ == b.delta_ && a.gamma_ == b.gamma_;
  }

 private:
  FuzzySubset delta_;
  FuzzySubset gamma_;
};

using GradePairs = std::vector<std::pair<std::string, Grade>>;

namespace detail {

inline std::vector<Grade> densify(const Universe& universe, const GradePairs& pairs,
                                  std::string_view channel) {
  std::vector<Grade> out(universe.size());
  std::unordered_set<std::string_view> seen;
  for (const auto& [label, grade] : pairs) {
    auto i = universe.index_of(label);
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::DuplicateLabel,
                  "label '" + label + "' listed twice in " + std::string(channel));
    }
    out[i] = grade;
  }
  return out;
}

inline void require_same_universe(const FuzzyProcess& p, const FuzzyProcess& q) {
  if (!(p.universe() == q.universe())) {
    throw Error(ErrorKind::UniverseMismatch, "processes range over different universes");
  }
}

}  // namespace detail

/// Constructs a process from sparse (label, grade) lists. Zero grades are
/// dropped. Under Strict a blocking execution is an error; under
/// RemoveBlockings the universe shrinks to the non-blocking labels.
inline FuzzyProcess make_process(const Universe& universe, const GradePairs& delta_pairs,
                                 const GradePairs& gamma_pairs, BlockingPolicy policy) {
  auto delta = detail::densify(universe, delta_pairs, "delta");
  auto gamma = detail::densify(universe, gamma_pairs, "gamma");

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (delta[i].positive() || gamma[i].positive()) {
      keep.push_back(i);
    } else if (policy == BlockingPolicy::Strict) {
      throw Error(ErrorKind::BlockingViolation,
                  "execution '" + universe.label(i) + "' is blocking (delta = gamma = 0)");
    }
  }
  if (keep.size() == universe.size()) {
    return FuzzyProcess::from_dense(universe, std::move(delta), std::move(gamma));
  }
  if (keep.empty()) {
    throw Error(ErrorKind::BlockingViolation,
                "every execution is blocking; the reduced universe would be empty");
  }
  auto reduced = universe.restrict(keep);
  std::vector<Grade> d, g;
  for (auto i : keep) {
    d.push_back(delta[i]);
    g.push_back(gamma[i]);
  }
  return FuzzyProcess::from_dense(reduced, std::move(d), std::move(g));
}

struct GradePair {
  Grade delta;
  Grade gamma;

  friend bool operator==(const GradePair&, const GradePair&) = default;
};

inline GradePair grades(const FuzzyProcess& p, std::string_view label) {
  auto i = p.universe().index_of(label);
  return {p.delta()[i], p.gamma()[i]};
}

/// Partition of the universe induced by a process. Sets list labels in
/// universe order.
struct Classification {
  std::vector<std::string> goals;
  std::vector<std::string> escapes;
  std::vector<std::string> rejects;
  std::vector<std::string> blockings;
  std::vector<std::string> violations;    // escapes and rejects
  std::vector<std::string> contract_set;  // same as goals

  friend bool operator==(const Classification&, const Classification&) = default;
};

inline Classification classify(const FuzzyProcess& p) {
  Classification c;
  const auto& u = p.universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& label = u.label(i);
    switch (p.class_at(i)) {
      case ExecutionClass::Goal: c.goals.push_back(label); break;
      case ExecutionClass::Escape:
        c.escapes.push_back(label);
        c.violations.push_back(label);
        break;
      case ExecutionClass::Reject:
        c.rejects.push_back(label);
        c.violations.push_back(label);
        break;
      case ExecutionClass::Blocking: c.blockings.push_back(label); break;
    }
  }
  c.contract_set = c.goals;
  return c;
}

struct ExecutionFlags {
  bool completely_accessible = false;
  bool completely_acceptable = false;
  ExecutionClass cls = ExecutionClass::Blocking;

  friend bool operator==(const ExecutionFlags&, const ExecutionFlags&) = default;
};

inline ExecutionFlags execution_flags(const FuzzyProcess& p, std::string_view label) {
  auto i = p.universe().index_of(label);
  return {p.delta()[i].is_one(), p.gamma()[i].is_one(), p.class_at(i)};
}

struct ProcessFlags {
  bool is_robust = false;   // gamma == 1 everywhere
  bool is_chaotic = false;  // delta == 1 everywhere

  friend bool operator==(const ProcessFlags&, const ProcessFlags&) = default;
};

inline ProcessFlags process_flags(const FuzzyProcess& p) {
  return {p.gamma().is_constant(Grade::one()), p.delta().is_constant(Grade::one())};
}

enum class ConstantKind { Omega, Top, Bottom };

/// Omega = (1, 1), Top = (0, 1), Bottom = (1, 0) over every label.
inline FuzzyProcess constant(ConstantKind kind, const Universe& universe) {
  auto one = FuzzySubset::constant(universe, Grade::one());
  auto zero = FuzzySubset::constant(universe, Grade::zero());
  switch (kind) {
    case ConstantKind::Omega: return FuzzyProcess(one, one);
    case ConstantKind::Top: return FuzzyProcess(zero, one);
    case ConstantKind::Bottom: return FuzzyProcess(one, zero);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown constant kind");
}

inline FuzzyProcess omega(const Universe& u) { return constant(ConstantKind::Omega, u); }
inline FuzzyProcess top(const Universe& u) { return constant(ConstantKind::Top, u); }
inline FuzzyProcess bottom(const Universe& u) { return constant(ConstantKind::Bottom, u); }

/// First label index where p is not refined by q, i.e. where
/// delta_p < delta_q or gamma_p > gamma_q.
inline std::optional<std::size_t> first_refinement_failure(const FuzzyProcess& p,
                                                           const FuzzyProcess& q) {
  detail::require_same_universe(p, q);
  for (std::size_t i = 0; i < p.universe().size(); ++i) {
    if (p.delta()[i] < q.delta()[i] || p.gamma()[i] > q.gamma()[i]) return i;
  }
  return std::nullopt;
}

/// p ⊑ q: q is a satisfactory substitute for p.
inline bool refines(const FuzzyProcess& p, const FuzzyProcess& q) {
  return !first_refinement_failure(p, q).has_value();
}

/// First label index where p and q differ under `mode`.
inline std::optional<std::size_t> first_difference(const FuzzyProcess& p, const FuzzyProcess& q,
                                                   EqualityMode mode) {
  detail::require_same_universe(p, q);
  for (std::size_t i = 0; i < p.universe().size(); ++i) {
    bool same = mode == EqualityMode::ValueLevel
                    ? p.delta()[i] == q.delta()[i] && p.gamma()[i] == q.gamma()[i]
                    : p.delta()[i].positive() == q.delta()[i].positive() &&
                          p.gamma()[i].positive() == q.gamma()[i].positive();
    if (!same) return i;
  }
  return std::nullopt;
}

inline bool equal(const FuzzyProcess& p, const FuzzyProcess& q, EqualityMode mode) {
  return !first_difference(p, q, mode).has_value();
}

}  // namespace fuzzproc
