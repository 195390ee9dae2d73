#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzproc/algebra.hpp"
#include "fuzzproc/process.hpp"

namespace fuzzproc {

enum class LawId {
  P1_i, P1_ii, P1_iii, P1_iv,
  P1_i_dual, P1_ii_dual, P1_iii_dual, P1_iv_dual,
  P2_i, P2_ii, P2_iii,
  P3_i, P3_ii, P3_iii, P3_iv,
  P3_i_dual, P3_ii_dual, P3_iii_dual,
  P4_i, P4_ii, P4_iii, P4_iv,
  ORDER_reflexive, ORDER_transitive, ORDER_antisymmetric, ORDER_bounds,
  LATTICE_glb, LATTICE_lub,
  CLOSURE_blocking_free,
};

struct LawInfo {
  LawId id;
  std::string_view name;
  std::size_t arity;
  /// Equational laws are checked per EqualityMode; the rest are boolean.
  bool equational;
  std::string_view statement;
};

inline constexpr std::array<LawInfo, 29> kLaws{{
    {LawId::P1_i, "P1.i", 1, true, "p * p == p"},
    {LawId::P1_ii, "P1.ii", 3, true, "p * (q * r) == (p * q) * r"},
    {LawId::P1_iii, "P1.iii", 2, true, "p * q == q * p"},
    {LawId::P1_iv, "P1.iv", 1, true, "p * OMEGA == p"},
    {LawId::P1_i_dual, "P1.i'", 1, true, "p + p == p"},
    {LawId::P1_ii_dual, "P1.ii'", 3, true, "p + (q + r) == (p + q) + r"},
    {LawId::P1_iii_dual, "P1.iii'", 2, true, "p + q == q + p"},
    {LawId::P1_iv_dual, "P1.iv'", 1, true, "p + OMEGA == p"},
    {LawId::P2_i, "P2.i", 1, true, "--p == p"},
    {LawId::P2_ii, "P2.ii", 2, false, "p <= q  <=>  -q <= -p"},
    {LawId::P2_iii, "P2.iii", 1, false, "robust(p)  <=>  chaotic(-p)"},
    {LawId::P3_i, "P3.i", 1, true, "p & TOP == p"},
    {LawId::P3_ii, "P3.ii", 1, true, "p | TOP == TOP"},
    {LawId::P3_iii, "P3.iii", 1, true, "p * TOP == TOP"},
    {LawId::P3_iv, "P3.iv", 1, true, "-TOP == BOT"},
    {LawId::P3_i_dual, "P3.i'", 1, true, "p | BOT == p"},
    {LawId::P3_ii_dual, "P3.ii'", 1, true, "p & BOT == BOT"},
    {LawId::P3_iii_dual, "P3.iii'", 1, true, "p + BOT == BOT"},
    {LawId::P4_i, "P4.i", 2, true, "-(p * q) == -p + -q"},
    {LawId::P4_ii, "P4.ii", 2, true, "-(p + q) == -p * -q"},
    {LawId::P4_iii, "P4.iii", 2, true, "-(p & q) == -p | -q"},
    {LawId::P4_iv, "P4.iv", 2, true, "-(p | q) == -p & -q"},
    {LawId::ORDER_reflexive, "ORDER.reflexive", 1, false, "p <= p"},
    {LawId::ORDER_transitive, "ORDER.transitive", 3, false, "p <= q and q <= r  =>  p <= r"},
    {LawId::ORDER_antisymmetric, "ORDER.antisymmetric", 2, false,
     "p <= q and q <= p  =>  p == q"},
    {LawId::ORDER_bounds, "ORDER.bounds", 1, false, "BOT <= p <= TOP"},
    {LawId::LATTICE_glb, "LATTICE.glb", 3, false,
     "p & q <= p, p & q <= q, and r <= p, r <= q  =>  r <= p & q"},
    {LawId::LATTICE_lub, "LATTICE.lub", 3, false,
     "p <= p | q, q <= p | q, and p <= r, q <= r  =>  p | q <= r"},
    {LawId::CLOSURE_blocking_free, "CLOSURE.blocking_free", 2, false,
     "p * q, p + q, p & q, p | q, -p have no blocking execution"},
}};

inline const LawInfo& law_info(LawId id) { return kLaws[static_cast<std::size_t>(id)]; }

inline std::string_view law_name(LawId id) { return law_info(id).name; }

/// Accepts the ASCII name ("P1.ii'") or the same with a U+2032 prime.
inline std::optional<LawId> parse_law(std::string_view text) {
  std::string ascii(text);
  for (std::size_t at; (at = ascii.find("′")) != std::string::npos;) {
    ascii.replace(at, std::string_view("′").size(), "'");
  }
  for (const auto& info : kLaws) {
    if (info.name == ascii) return info.id;
  }
  return std::nullopt;
}

inline std::vector<LawId> all_laws() {
  std::vector<LawId> out;
  for (const auto& info : kLaws) out.push_back(info.id);
  return out;
}

/// A failed law instance: the two sides that should have been related, the
/// first label in universe order where they are not, and a short note.
struct Violation {
  FuzzyProcess lhs;
  FuzzyProcess rhs;
  std::size_t label;
  std::string note;
};

namespace detail {

inline std::optional<Violation> expect_equal(FuzzyProcess lhs, FuzzyProcess rhs,
                                             EqualityMode mode) {
  if (auto at = first_difference(lhs, rhs, mode)) {
    return Violation{std::move(lhs), std::move(rhs), *at,
                     std::string("sides differ at ") + std::string(to_string(mode)) + " level"};
  }
  return std::nullopt;
}

inline std::optional<Violation> expect_refines(const FuzzyProcess& lo, const FuzzyProcess& hi,
                                               std::string note) {
  if (auto at = first_refinement_failure(lo, hi)) {
    return Violation{lo, hi, *at, std::move(note)};
  }
  return std::nullopt;
}

inline std::optional<std::size_t> first_not_one(const FuzzySubset& s) {
  for (std::size_t i = 0; i < s.universe().size(); ++i) {
    if (!s[i].is_one()) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Evaluates one law instance on `args` (size must equal the law's arity).
/// `mode` is ignored by boolean laws.
inline std::optional<Violation> evaluate_law(LawId law, std::span<const FuzzyProcess> args,
                                             EqualityMode mode) {
  const auto& info = law_info(law);
  if (args.size() != info.arity) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(info.name) + " takes " + std::to_string(info.arity) + " processes");
  }
  const auto& p = args[0];
  const auto& u = p.universe();
  auto q = [&]() -> const FuzzyProcess& { return args[1]; };
  auto r = [&]() -> const FuzzyProcess& { return args[2]; };
  using detail::expect_equal;
  using detail::expect_refines;

  switch (law) {
    case LawId::P1_i: return expect_equal(product(p, p), p, mode);
    case LawId::P1_ii: return expect_equal(product(p, product(q(), r())), product(product(p, q()), r()), mode);
    case LawId::P1_iii: return expect_equal(product(p, q()), product(q(), p), mode);
    case LawId::P1_iv: return expect_equal(product(p, omega(u)), p, mode);
    case LawId::P1_i_dual: return expect_equal(sum(p, p), p, mode);
    case LawId::P1_ii_dual: return expect_equal(sum(p, sum(q(), r())), sum(sum(p, q()), r()), mode);
    case LawId::P1_iii_dual: return expect_equal(sum(p, q()), sum(q(), p), mode);
    case LawId::P1_iv_dual: return expect_equal(sum(p, omega(u)), p, mode);

    case LawId::P2_i: return expect_equal(reflect(reflect(p)), p, mode);
    case LawId::P2_ii: {
      bool forward = refines(p, q());
      bool backward = refines(reflect(q()), reflect(p));
      if (forward == backward) return std::nullopt;
      if (forward) return expect_refines(reflect(q()), reflect(p), "p <= q holds but -q <= -p fails");
      return expect_refines(p, q(), "-q <= -p holds but p <= q fails");
    }
    case LawId::P2_iii: {
      auto rp = reflect(p);
      bool robust = process_flags(p).is_robust;
      bool chaotic = process_flags(rp).is_chaotic;
      if (robust == chaotic) return std::nullopt;
      auto at = detail::first_not_one(robust ? rp.delta() : p.gamma());
      return Violation{p, rp, at.value_or(0),
                       robust ? "p is robust but -p is not chaotic" : "-p is chaotic but p is not robust"};
    }

    case LawId::P3_i: return expect_equal(meet(p, top(u)), p, mode);
    case LawId::P3_ii: return expect_equal(join(p, top(u)), top(u), mode);
    case LawId::P3_iii: return expect_equal(product(p, top(u)), top(u), mode);
    case LawId::P3_iv: return expect_equal(reflect(top(u)), bottom(u), mode);
    case LawId::P3_i_dual: return expect_equal(join(p, bottom(u)), p, mode);
    case LawId::P3_ii_dual: return expect_equal(meet(p, bottom(u)), bottom(u), mode);
    case LawId::P3_iii_dual: return expect_equal(sum(p, bottom(u)), bottom(u), mode);

    case LawId::P4_i: return expect_equal(reflect(product(p, q())), sum(reflect(p), reflect(q())), mode);
    case LawId::P4_ii: return expect_equal(reflect(sum(p, q())), product(reflect(p), reflect(q())), mode);
    case LawId::P4_iii: return expect_equal(reflect(meet(p, q())), join(reflect(p), reflect(q())), mode);
    case LawId::P4_iv: return expect_equal(reflect(join(p, q())), meet(reflect(p), reflect(q())), mode);

    case LawId::ORDER_reflexive: return expect_refines(p, p, "p <= p fails");
    case LawId::ORDER_transitive:
      if (refines(p, q()) && refines(q(), r())) {
        return expect_refines(p, r(), "p <= q and q <= r but not p <= r");
      }
      return std::nullopt;
    case LawId::ORDER_antisymmetric:
      if (refines(p, q()) && refines(q(), p)) {
        return expect_equal(p, q(), EqualityMode::ValueLevel);
      }
      return std::nullopt;
    case LawId::ORDER_bounds:
      if (auto v = expect_refines(bottom(u), p, "BOT <= p fails")) return v;
      return expect_refines(p, top(u), "p <= TOP fails");

    case LawId::LATTICE_glb: {
      auto m = meet(p, q());
      if (auto v = expect_refines(m, p, "p & q <= p fails")) return v;
      if (auto v = expect_refines(m, q(), "p & q <= q fails")) return v;
      if (refines(r(), p) && refines(r(), q())) {
        return expect_refines(r(), m, "r is a lower bound of p, q but not r <= p & q");
      }
      return std::nullopt;
    }
    case LawId::LATTICE_lub: {
      auto j = join(p, q());
      if (auto v = expect_refines(p, j, "p <= p | q fails")) return v;
      if (auto v = expect_refines(q(), j, "q <= p | q fails")) return v;
      if (refines(p, r()) && refines(q(), r())) {
        return expect_refines(j, r(), "r is an upper bound of p, q but not p | q <= r");
      }
      return std::nullopt;
    }

    case LawId::CLOSURE_blocking_free: {
      for (auto op : {BinaryOp::Product, BinaryOp::Sum, BinaryOp::Meet, BinaryOp::Join}) {
        auto res = apply(op, p, q());
        if (auto b = res.first_blocking()) {
          return Violation{res, res, *b,
                           "p " + std::string(symbol(op)) + " q has a blocking execution"};
        }
      }
      auto res = reflect(p);
      if (auto b = res.first_blocking()) {
        return Violation{res, res, *b, "-p has a blocking execution"};
      }
      return std::nullopt;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown law");
}

}  // namespace fuzzproc
