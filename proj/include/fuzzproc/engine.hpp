#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "fuzzproc/laws.hpp"
#include "fuzzproc/process.hpp"

namespace fuzzproc {

/// Finite quantization of [0,1] used for exhaustive checking. Always
/// contains 0 and 1; kept sorted ascending.
class Grid {
 public:
  explicit Grid(std::vector<Grade> grades) : grades_(std::move(grades)) {
    std::sort(grades_.begin(), grades_.end());
    if (std::adjacent_find(grades_.begin(), grades_.end()) != grades_.end()) {
      throw Error(ErrorKind::InvalidArgument, "grid lists a grade twice");
    }
    if (grades_.empty() || !grades_.front().is_zero() || !grades_.back().is_one()) {
      throw Error(ErrorKind::InvalidArgument, "grid must contain 0 and 1");
    }
  }

  /// Parses a comma-separated list such as "0,1/2,1" or "0,0.25,1".
  static Grid parse(std::string_view text) {
    std::vector<Grade> grades;
    std::size_t start = 0;
    while (true) {
      auto comma = text.find(',', start);
      auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      grades.push_back(Grade::parse(item));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Grid(std::move(grades));
  }

  /// {0, 1/2, 1}
  static Grid standard() { return Grid({Grade::zero(), Grade(1, 2), Grade::one()}); }

  std::span<const Grade> grades() const noexcept { return grades_; }
  std::size_t size() const noexcept { return grades_.size(); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < grades_.size(); ++i) {
      if (i > 0) out += ",";
      out += grades_[i].to_string();
    }
    return out;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<Grade> grades_;
};

struct Exhaustive {
  friend bool operator==(const Exhaustive&, const Exhaustive&) = default;
};

struct Randomized {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  friend bool operator==(const Randomized&, const Randomized&) = default;
};

using SearchMode = std::variant<Exhaustive, Randomized>;

struct Scope {
  std::size_t universe_size = 1;
  Grid grid = Grid::standard();
  SearchMode mode = Exhaustive{};

  bool exhaustive() const { return std::holds_alternative<Exhaustive>(mode); }
  friend bool operator==(const Scope&, const Scope&) = default;
};

struct EngineConfig {
  /// Upper bound on exhaustive work: process count raised to the law's arity.
  std::uint64_t budget = 50'000'000;
  /// Worker threads for a single law check; 0 picks hardware concurrency.
  unsigned threads = 0;
};

namespace detail {

/// a * b, or nullopt when the product exceeds `limit`.
inline std::optional<std::uint64_t> bounded_mul(std::uint64_t a, std::uint64_t b,
                                                std::uint64_t limit) {
  if (a != 0 && b > limit / a) return std::nullopt;
  if (a * b > limit) return std::nullopt;
  return a * b;
}

inline std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::size_t exp,
                                                std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    auto next = bounded_mul(acc, base, limit);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform draw in [0, n) by rejection; the result depends only on the
/// engine's output sequence, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Smallest index in [0, total) for which `fails` returns true. Workers pull
/// fixed chunks in increasing order and stop once their chunk lies beyond
/// the best index found, so the answer matches a sequential scan.
template <typename Fails>
std::optional<std::uint64_t> first_failure(std::uint64_t total, unsigned threads, Fails&& fails) {
  constexpr std::uint64_t kChunk = 4096;
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  if (threads <= 1 || total <= kChunk) {
    for (std::uint64_t i = 0; i < total; ++i) {
      if (fails(i)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{kNone};
  auto work = [&] {
    while (true) {
      std::uint64_t begin = next_chunk.fetch_add(1) * kChunk;
      if (begin >= total || begin >= best.load()) return;
      std::uint64_t end = std::min(total, begin + kChunk);
      for (std::uint64_t i = begin; i < end && i < best.load(); ++i) {
        if (fails(i)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  pool.clear();
  if (best.load() == kNone) return std::nullopt;
  return best.load();
}

}  // namespace detail

/// Per-label (delta, gamma) choices over `grid`, ordered by (delta index,
/// gamma index); (0,0) is left out when `blocking_free`.
inline std::vector<GradePair> grade_pairs(const Grid& grid, bool blocking_free) {
  std::vector<GradePair> pairs;
  for (const auto& d : grid.grades()) {
    for (const auto& c : grid.grades()) {
      if (blocking_free && d.is_zero() && c.is_zero()) continue;
      pairs.push_back({d, c});
    }
  }
  return pairs;
}

/// Process whose per-label pairs are drawn uniformly from `pairs`.
inline FuzzyProcess sample_process(const Universe& universe, std::span<const GradePair> pairs,
                                   std::mt19937_64& rng) {
  const auto n = universe.size();
  std::vector<Grade> delta(n), gamma(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pair = pairs[detail::uniform_below(rng, pairs.size())];
    delta[k] = pair.delta;
    gamma[k] = pair.gamma;
  }
  return FuzzyProcess::from_dense(universe, std::move(delta), std::move(gamma));
}

/// Deterministic, random-access enumeration of every process over a universe
/// whose per-label (delta, gamma) pair lies in grid x grid. Processes are
/// ordered lexicographically with the first label most significant and pairs
/// ordered by (delta index, gamma index); (0,0) is skipped when blocking-free.
class ProcessEnumerator {
 public:
  static constexpr std::uint64_t kDefaultLimit = 1'000'000'000ULL;

  ProcessEnumerator(Universe universe, Grid grid, bool blocking_free,
                    std::uint64_t limit = kDefaultLimit)
      : universe_(std::move(universe)),
        grid_(std::move(grid)),
        blocking_free_(blocking_free),
        pairs_(grade_pairs(grid_, blocking_free)) {
    auto count = detail::bounded_pow(pairs_.size(), universe_.size(), limit);
    if (!count) {
      throw Error(ErrorKind::BudgetExceeded,
                  "process count " + std::to_string(pairs_.size()) + "^" +
                      std::to_string(universe_.size()) + " exceeds limit " + std::to_string(limit));
    }
    count_ = *count;
  }

  const Universe& universe() const noexcept { return universe_; }
  const Grid& grid() const noexcept { return grid_; }
  bool blocking_free() const noexcept { return blocking_free_; }
  std::span<const GradePair> pairs() const noexcept { return pairs_; }
  std::uint64_t size() const noexcept { return count_; }

  FuzzyProcess at(std::uint64_t index) const {
    const auto n = universe_.size();
    std::vector<Grade> delta(n), gamma(n);
    for (std::size_t k = n; k-- > 0;) {
      const auto& pair = pairs_[index % pairs_.size()];
      index /= pairs_.size();
      delta[k] = pair.delta;
      gamma[k] = pair.gamma;
    }
    return FuzzyProcess::from_dense(universe_, std::move(delta), std::move(gamma));
  }

  class iterator {
   public:
    using value_type = FuzzyProcess;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ProcessEnumerator* owner, std::uint64_t index) : owner_(owner), index_(index) {}

    FuzzyProcess operator*() const { return owner_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++index_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const ProcessEnumerator* owner_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count_}; }

 private:
  Universe universe_;
  Grid grid_;
  bool blocking_free_;
  std::vector<GradePair> pairs_;
  std::uint64_t count_ = 0;
};

inline ProcessEnumerator enumerate_processes(const Universe& universe, const Grid& grid,
                                             bool blocking_free) {
  return ProcessEnumerator(universe, grid, blocking_free);
}

struct Verified {
  std::uint64_t cases_checked = 0;
};

struct Counterexample {
  LawId law;
  std::optional<EqualityMode> mode;  // nullopt for boolean laws
  std::vector<FuzzyProcess> witnesses;
  FuzzyProcess lhs;
  FuzzyProcess rhs;
  std::string first_differing_label;
  std::string note;
};

struct LawVerdict {
  LawId law;
  std::optional<EqualityMode> mode;
  Scope scope;
  std::variant<Verified, Counterexample> result;

  bool verified() const { return std::holds_alternative<Verified>(result); }
  const Counterexample* counterexample() const { return std::get_if<Counterexample>(&result); }
};

/// Mode under which a law is reported: nullopt for boolean laws.
inline std::optional<EqualityMode> effective_mode(LawId law, EqualityMode requested) {
  if (law_info(law).equational) return requested;
  return std::nullopt;
}

/// Exhaustive work estimate for `law` over `scope`, or nullopt past `limit`.
inline std::optional<std::uint64_t> exhaustive_work(LawId law, const Scope& scope,
                                                    std::uint64_t limit) {
  const auto g = scope.grid.size();
  auto count = detail::bounded_pow(g * g - 1, scope.universe_size, limit);
  if (!count) return std::nullopt;
  return detail::bounded_pow(*count, law_info(law).arity, limit);
}

namespace detail {

inline Counterexample make_counterexample(LawId law, std::optional<EqualityMode> mode,
                                          std::vector<FuzzyProcess> witnesses, Violation v) {
  auto label = v.lhs.universe().label(v.label);
  return Counterexample{law,  mode,  std::move(witnesses), std::move(v.lhs), std::move(v.rhs),
                        label, std::move(v.note)};
}

inline std::optional<Violation> evaluate(LawId law, std::optional<EqualityMode> mode,
                                         std::span<const FuzzyProcess> args) {
  return evaluate_law(law, args, mode.value_or(EqualityMode::ValueLevel));
}

}  // namespace detail

/// Checks one law over a scope. Exhaustive mode walks every tuple of the
/// law's arity in enumeration order (first argument most significant) and
/// returns the first counterexample; randomized mode draws each sample from
/// a stream derived from (seed, sample index).
inline LawVerdict check_law(LawId law, EqualityMode requested_mode, const Scope& scope,
                            const EngineConfig& config = {}) {
  const auto arity = law_info(law).arity;
  const auto mode = effective_mode(law, requested_mode);
  const auto universe = Universe::generated(scope.universe_size);
  LawVerdict verdict{law, mode, scope, Verified{}};
  const unsigned threads = detail::worker_count(config.threads);

  if (scope.exhaustive()) {
    auto work = exhaustive_work(law, scope, config.budget);
    if (!work) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::string(law_name(law)) + " at universe size " +
                      std::to_string(scope.universe_size) + " over grid {" +
                      scope.grid.to_string() + "} exceeds the exhaustive budget of " +
                      std::to_string(config.budget));
    }
    ProcessEnumerator processes(universe, scope.grid, true, config.budget);
    const std::uint64_t count = processes.size();
    auto decode = [&](std::uint64_t index) {
      std::vector<std::uint64_t> digits(arity);
      for (std::size_t k = arity; k-- > 0;) {
        digits[k] = index % count;
        index /= count;
      }
      std::vector<FuzzyProcess> args;
      args.reserve(arity);
      for (auto d : digits) args.push_back(processes.at(d));
      return args;
    };
    auto hit = detail::first_failure(*work, threads, [&](std::uint64_t index) {
      auto args = decode(index);
      return detail::evaluate(law, mode, args).has_value();
    });
    if (!hit) {
      verdict.result = Verified{*work};
      return verdict;
    }
    auto args = decode(*hit);
    auto v = detail::evaluate(law, mode, args);
    verdict.result = detail::make_counterexample(law, mode, std::move(args), std::move(*v));
    return verdict;
  }

  const auto& rnd = std::get<Randomized>(scope.mode);
  if (rnd.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  const auto pairs = grade_pairs(scope.grid, true);
  auto draw = [&](std::uint64_t sample) {
    std::mt19937_64 rng(detail::splitmix64(rnd.seed ^ detail::splitmix64(sample)));
    std::vector<FuzzyProcess> args;
    args.reserve(arity);
    for (std::size_t k = 0; k < arity; ++k) args.push_back(sample_process(universe, pairs, rng));
    return args;
  };
  auto hit = detail::first_failure(rnd.samples, threads, [&](std::uint64_t sample) {
    auto args = draw(sample);
    return detail::evaluate(law, mode, args).has_value();
  });
  if (!hit) {
    verdict.result = Verified{rnd.samples};
    return verdict;
  }
  auto args = draw(*hit);
  auto v = detail::evaluate(law, mode, args);
  verdict.result = detail::make_counterexample(law, mode, std::move(args), std::move(*v));
  return verdict;
}

/// Replays a counterexample's witnesses through the law and confirms the
/// stored sides and label are reproduced.
inline bool self_validates(const Counterexample& cex) {
  if (cex.witnesses.size() != law_info(cex.law).arity) return false;
  for (const auto& w : cex.witnesses) {
    if (!w.blocking_free()) return false;
  }
  auto v = detail::evaluate(cex.law, cex.mode, cex.witnesses);
  if (!v) return false;
  return v->lhs == cex.lhs && v->rhs == cex.rhs &&
         v->lhs.universe().label(v->label) == cex.first_differing_label;
}

namespace detail {

inline FuzzyProcess restrict_process(const FuzzyProcess& p, const Universe& sub,
                                     std::span<const std::size_t> keep) {
  std::vector<Grade> delta, gamma;
  for (auto i : keep) {
    delta.push_back(p.delta()[i]);
    gamma.push_back(p.gamma()[i]);
  }
  return FuzzyProcess::from_dense(sub, std::move(delta), std::move(gamma));
}

inline std::vector<Grade> distinct_grades(std::span<const FuzzyProcess> ws) {
  std::vector<Grade> out;
  for (const auto& w : ws) {
    for (const auto& g : w.delta().dense()) out.push_back(g);
    for (const auto& g : w.gamma().dense()) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline FuzzyProcess substitute(const FuzzyProcess& p, const Grade& from, const Grade& to) {
  auto swap = [&](std::span<const Grade> in) {
    std::vector<Grade> out(in.begin(), in.end());
    for (auto& g : out) {
      if (g == from) g = to;
    }
    return out;
  };
  return FuzzyProcess::from_dense(p.universe(), swap(p.delta().dense()), swap(p.gamma().dense()));
}

inline bool still_fails(LawId law, std::optional<EqualityMode> mode,
                        std::span<const FuzzyProcess> ws) {
  for (const auto& w : ws) {
    if (!w.blocking_free()) return false;
  }
  return evaluate(law, mode, ws).has_value();
}

/// Label subsets of {0..n-1} of size k in lexicographic order.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Shrinks a counterexample: first to the fewest universe labels, then to
/// the fewest distinct grade values by merging one value into another until
/// no merge keeps the law failing. Candidates are tried in a fixed order, so
/// the result is deterministic. Throws InvalidArgument if `cex` does not
/// self-validate.
inline Counterexample shrink_counterexample(const Counterexample& cex) {
  if (!self_validates(cex)) {
    throw Error(ErrorKind::InvalidArgument, "counterexample does not reproduce a violation");
  }
  auto ws = cex.witnesses;
  const auto& universe = ws.front().universe();
  const std::size_t n = universe.size();

  // Smallest label subset first. Past a dozen labels the subset walk is
  // replaced by dropping one label at a time.
  if (n > 1 && n <= 12) {
    for (std::size_t k = 1; k < n; ++k) {
      bool found = detail::for_each_subset(n, k, [&](std::span<const std::size_t> keep) {
        auto sub = universe.restrict(keep);
        std::vector<FuzzyProcess> cand;
        for (const auto& w : ws) cand.push_back(detail::restrict_process(w, sub, keep));
        if (!detail::still_fails(cex.law, cex.mode, cand)) return false;
        ws = std::move(cand);
        return true;
      });
      if (found) break;
    }
  } else if (n > 12) {
    for (bool progress = true; progress && ws.front().universe().size() > 1;) {
      progress = false;
      const auto& cur = ws.front().universe();
      for (std::size_t drop = 0; drop < cur.size(); ++drop) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < cur.size(); ++i) {
          if (i != drop) keep.push_back(i);
        }
        auto sub = cur.restrict(keep);
        std::vector<FuzzyProcess> cand;
        for (const auto& w : ws) cand.push_back(detail::restrict_process(w, sub, keep));
        if (detail::still_fails(cex.law, cex.mode, cand)) {
          ws = std::move(cand);
          progress = true;
          break;
        }
      }
    }
  }

  for (bool progress = true; progress;) {
    progress = false;
    auto values = detail::distinct_grades(ws);
    for (const auto& from : values) {
      for (const auto& to : values) {
        if (from == to) continue;
        std::vector<FuzzyProcess> cand;
        for (const auto& w : ws) cand.push_back(detail::substitute(w, from, to));
        if (detail::still_fails(cex.law, cex.mode, cand)) {
          ws = std::move(cand);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }

  auto v = detail::evaluate(cex.law, cex.mode, ws);
  return detail::make_counterexample(cex.law, cex.mode, std::move(ws), std::move(*v));
}

inline LawVerdict shrink_counterexample(const LawVerdict& verdict) {
  const auto* cex = verdict.counterexample();
  if (cex == nullptr) {
    throw Error(ErrorKind::InvalidArgument, "verdict has no counterexample to shrink");
  }
  auto out = verdict;
  out.result = shrink_counterexample(*cex);
  return out;
}

struct SuiteConfig {
  std::vector<Scope> scopes;
  std::vector<LawId> laws = all_laws();
  std::vector<EqualityMode> modes = {EqualityMode::ValueLevel, EqualityMode::SupportLevel};
};

struct SuiteReport {
  std::vector<LawVerdict> verdicts;
  std::chrono::milliseconds elapsed{0};

  std::size_t counterexamples() const {
    return static_cast<std::size_t>(std::count_if(
        verdicts.begin(), verdicts.end(), [](const LawVerdict& v) { return !v.verified(); }));
  }
};

/// Runs every (scope, law, mode) combination. Boolean laws run once per
/// scope. Counterexamples are shrunk before they are reported.
inline SuiteReport run_suite(const SuiteConfig& suite, const EngineConfig& config = {}) {
  if (suite.modes.empty()) throw Error(ErrorKind::InvalidArgument, "no equality modes selected");
  const auto started = std::chrono::steady_clock::now();
  SuiteReport report;
  for (const auto& scope : suite.scopes) {
    for (auto law : suite.laws) {
      if (!law_info(law).equational) {
        report.verdicts.push_back(check_law(law, suite.modes.front(), scope, config));
        continue;
      }
      for (auto mode : suite.modes) report.verdicts.push_back(check_law(law, mode, scope, config));
    }
  }
  for (auto& v : report.verdicts) {
    if (!v.verified()) v = shrink_counterexample(v);
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return report;
}

}  // namespace fuzzproc
