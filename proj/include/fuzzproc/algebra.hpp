#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzproc/process.hpp"

namespace fuzzproc {

namespace detail {

inline void require_composable(const FuzzyProcess& p, const FuzzyProcess& q, const char* op) {
  require_same_universe(p, q);
  for (const auto* r : {&p, &q}) {
    if (auto b = r->first_blocking()) {
      throw Error(ErrorKind::BlockingViolation,
                  std::string(op) + " operand has blocking execution '" +
                      r->universe().label(*b) + "'");
    }
  }
}

/// min on the intersection of supports, 0 elsewhere.
inline Grade guarded_min(const Grade& a, const Grade& b) {
  return a.positive() && b.positive() ? min(a, b) : Grade::zero();
}

}  // namespace detail

/// p ⊗ q, composition of devices. Accessibility survives only where both
/// devices can access; acceptability is kept on the common acceptable set
/// and on the escape/reject crossings, where the escaping side's gamma meets
/// the rejecting side's delta.
inline FuzzyProcess product(const FuzzyProcess& p, const FuzzyProcess& q) {
  detail::require_composable(p, q, "product");
  const auto n = p.universe().size();
  std::vector<Grade> delta(n), gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& dp = p.delta()[i];
    const auto& dq = q.delta()[i];
    const auto& gp = p.gamma()[i];
    const auto& gq = q.gamma()[i];
    delta[i] = detail::guarded_min(dp, dq);
    if (gp.positive() && gq.positive()) {
      gamma[i] = min(gp, gq);
    } else if (dp.is_zero() && gp.positive() && gq.is_zero() && dq.positive()) {
      gamma[i] = min(gp, dq);  // escape of p meets reject of q
    } else if (dq.is_zero() && gq.positive() && gp.is_zero() && dp.positive()) {
      gamma[i] = min(gq, dp);  // reject of p meets escape of q
    }
  }
  return FuzzyProcess::from_dense(p.universe(), std::move(delta), std::move(gamma));
}

/// p ⊕ q, composition of environments. Channel mirror of product.
inline FuzzyProcess sum(const FuzzyProcess& p, const FuzzyProcess& q) {
  detail::require_composable(p, q, "sum");
  const auto n = p.universe().size();
  std::vector<Grade> delta(n), gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& dp = p.delta()[i];
    const auto& dq = q.delta()[i];
    const auto& gp = p.gamma()[i];
    const auto& gq = q.gamma()[i];
    if (dp.positive() && dq.positive()) {
      delta[i] = min(dp, dq);
    } else if (dp.is_zero() && gp.positive() && gq.is_zero() && dq.positive()) {
      delta[i] = min(gp, dq);  // escape of p meets reject of q
    } else if (dq.is_zero() && gq.positive() && gp.is_zero() && dp.positive()) {
      delta[i] = min(gq, dp);  // reject of p meets escape of q
    }
    gamma[i] = detail::guarded_min(gp, gq);
  }
  return FuzzyProcess::from_dense(p.universe(), std::move(delta), std::move(gamma));
}

/// p ⊓ q, choice between devices: pointwise max of delta, min of gamma.
inline FuzzyProcess meet(const FuzzyProcess& p, const FuzzyProcess& q) {
  detail::require_composable(p, q, "meet");
  const auto n = p.universe().size();
  std::vector<Grade> delta(n), gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = max(p.delta()[i], q.delta()[i]);
    gamma[i] = min(p.gamma()[i], q.gamma()[i]);
  }
  return FuzzyProcess::from_dense(p.universe(), std::move(delta), std::move(gamma));
}

/// p ⊔ q, choice between environments: pointwise min of delta, max of gamma.
inline FuzzyProcess join(const FuzzyProcess& p, const FuzzyProcess& q) {
  detail::require_composable(p, q, "join");
  const auto n = p.universe().size();
  std::vector<Grade> delta(n), gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = min(p.delta()[i], q.delta()[i]);
    gamma[i] = max(p.gamma()[i], q.gamma()[i]);
  }
  return FuzzyProcess::from_dense(p.universe(), std::move(delta), std::move(gamma));
}

/// -p: the same contract seen from the environment's side.
inline FuzzyProcess reflect(const FuzzyProcess& p) { return FuzzyProcess(p.gamma(), p.delta()); }

enum class BinaryOp { Product, Sum, Meet, Join };

inline constexpr std::string_view symbol(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Product: return "*";
    case BinaryOp::Sum: return "+";
    case BinaryOp::Meet: return "&";
    case BinaryOp::Join: return "|";
  }
  return "?";
}

inline FuzzyProcess apply(BinaryOp op, const FuzzyProcess& p, const FuzzyProcess& q) {
  switch (op) {
    case BinaryOp::Product: return product(p, q);
    case BinaryOp::Sum: return sum(p, q);
    case BinaryOp::Meet: return meet(p, q);
    case BinaryOp::Join: return join(p, q);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown operator");
}

}  // namespace fuzzproc
