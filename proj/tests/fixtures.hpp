#pragma once

#include "fuzzproc/process.hpp"

namespace fixtures {

using fuzzproc::Grade;

inline fuzzproc::Universe abc() { return fuzzproc::Universe({"a", "b", "c"}); }

/// delta = {a: 4/5, b: 1/2}, gamma = {a: 2/5, c: 7/10}
inline fuzzproc::FuzzyProcess P() {
  return fuzzproc::make_process(abc(), {{"a", Grade(4, 5)}, {"b", Grade(1, 2)}},
                                {{"a", Grade(2, 5)}, {"c", Grade(7, 10)}},
                                fuzzproc::BlockingPolicy::Strict);
}

/// delta = {a: 3/5, c: 9/10}, gamma = {a: 1, b: 3/10}
inline fuzzproc::FuzzyProcess Q() {
  return fuzzproc::make_process(abc(), {{"a", Grade(3, 5)}, {"c", Grade(9, 10)}},
                                {{"a", Grade::one()}, {"b", Grade(3, 10)}},
                                fuzzproc::BlockingPolicy::Strict);
}

/// Builds a process over `u` from sparse lists written as text grades.
inline fuzzproc::FuzzyProcess proc(const fuzzproc::Universe& u,
                                   std::initializer_list<std::pair<const char*, const char*>> delta,
                                   std::initializer_list<std::pair<const char*, const char*>> gamma) {
  fuzzproc::GradePairs d, g;
  for (auto [l, v] : delta) d.emplace_back(l, Grade::parse(v));
  for (auto [l, v] : gamma) g.emplace_back(l, Grade::parse(v));
  return fuzzproc::make_process(u, d, g, fuzzproc::BlockingPolicy::Strict);
}

}  // namespace fixtures
