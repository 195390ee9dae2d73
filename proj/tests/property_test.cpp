#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fuzzproc/fuzzproc.hpp"

using namespace fuzzproc;

namespace {

constexpr int kRounds = 500;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Grade grade() {
    static const std::vector<Grade> pool = {
        Grade::zero(), Grade(1, 7), Grade(1, 5), Grade(1, 3), Grade(1, 2),
        Grade(3, 5),   Grade(2, 3), Grade(9, 10), Grade::one()};
    return pool[below(pool.size())];
  }

  Universe universe() { return Universe::generated(1 + below(6)); }

  FuzzyProcess process(const Universe& u) {
    std::vector<Grade> d, g;
    for (std::size_t i = 0; i < u.size(); ++i) {
      Grade a = grade(), b = grade();
      while (a.is_zero() && b.is_zero()) b = grade();
      d.push_back(a);
      g.push_back(b);
    }
    return FuzzyProcess::from_dense(u, d, g);
  }

 private:
  std::mt19937_64 rng_;
};

bool veq(const FuzzyProcess& a, const FuzzyProcess& b) { return equal(a, b, EqualityMode::ValueLevel); }
bool seq(const FuzzyProcess& a, const FuzzyProcess& b) { return equal(a, b, EqualityMode::SupportLevel); }

}  // namespace

TEST(Property, ClassificationPartitionsTheUniverse) {
  Gen gen(1);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto c = classify(gen.process(u));
    std::multiset<std::string> all;
    for (const auto* part : {&c.goals, &c.escapes, &c.rejects, &c.blockings}) {
      all.insert(part->begin(), part->end());
    }
    EXPECT_EQ(all, std::multiset<std::string>(u.labels().begin(), u.labels().end()));
    std::set<std::string> v(c.escapes.begin(), c.escapes.end());
    v.insert(c.rejects.begin(), c.rejects.end());
    EXPECT_EQ(std::set<std::string>(c.violations.begin(), c.violations.end()), v);
    EXPECT_TRUE(c.blockings.empty());
  }
}

TEST(Property, OperatorsPreserveBlockingFreedom) {
  Gen gen(2);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u), q = gen.process(u);
    for (auto op : {BinaryOp::Product, BinaryOp::Sum, BinaryOp::Meet, BinaryOp::Join}) {
      EXPECT_TRUE(apply(op, p, q).blocking_free()) << symbol(op);
    }
    EXPECT_TRUE(reflect(p).blocking_free());
  }
}

TEST(Property, CommutativeAndIdempotent) {
  Gen gen(3);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u), q = gen.process(u);
    for (auto op : {BinaryOp::Product, BinaryOp::Sum, BinaryOp::Meet, BinaryOp::Join}) {
      EXPECT_TRUE(veq(apply(op, p, q), apply(op, q, p))) << symbol(op);
      EXPECT_TRUE(veq(apply(op, p, p), p)) << symbol(op);
    }
  }
}

TEST(Property, ReflectionIsAnInvolution) {
  Gen gen(4);
  for (int i = 0; i < kRounds; ++i) {
    auto p = gen.process(gen.universe());
    EXPECT_EQ(reflect(reflect(p)), p);
    EXPECT_EQ(process_flags(p).is_robust, process_flags(reflect(p)).is_chaotic);
  }
}

TEST(Property, ReflectionReversesRefinement) {
  Gen gen(5);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u);
    auto q = join(p, gen.process(u));  // p refines q by construction
    ASSERT_TRUE(refines(p, q));
    EXPECT_TRUE(refines(reflect(q), reflect(p)));
    auto r = gen.process(u);
    EXPECT_EQ(refines(p, r), refines(reflect(r), reflect(p)));
  }
}

TEST(Property, DeMorgan) {
  Gen gen(6);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u), q = gen.process(u);
    EXPECT_TRUE(veq(reflect(product(p, q)), sum(reflect(p), reflect(q))));
    EXPECT_TRUE(veq(reflect(sum(p, q)), product(reflect(p), reflect(q))));
    EXPECT_TRUE(veq(reflect(meet(p, q)), join(reflect(p), reflect(q))));
    EXPECT_TRUE(veq(reflect(join(p, q)), meet(reflect(p), reflect(q))));
  }
}

TEST(Property, LatticeBounds) {
  Gen gen(7);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u), q = gen.process(u);
    auto m = meet(p, q), j = join(p, q);
    EXPECT_TRUE(refines(m, p) && refines(m, q));
    EXPECT_TRUE(refines(p, j) && refines(q, j));
    EXPECT_TRUE(refines(bottom(u), p) && refines(p, top(u)));
    auto lower = meet(m, gen.process(u));
    EXPECT_TRUE(refines(lower, m));
  }
}

TEST(Property, AssociativitySidesAgreeOnSupports) {
  Gen gen(8);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    auto p = gen.process(u), q = gen.process(u), r = gen.process(u);
    auto l = product(p, product(q, r)), rr = product(product(p, q), r);
    EXPECT_TRUE(seq(l, rr));
    EXPECT_TRUE(seq(sum(p, sum(q, r)), sum(sum(p, q), r)));
    EXPECT_TRUE(seq(product(p, top(u)), top(u)));
  }
}

TEST(Property, RemoveBlockingsLeavesNoBlocking) {
  Gen gen(9);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    GradePairs d, g;
    std::vector<std::string> kept;
    for (const auto& label : u.labels()) {
      Grade a = gen.below(3) == 0 ? Grade::zero() : gen.grade();
      Grade b = gen.below(3) == 0 ? Grade::zero() : gen.grade();
      if (!a.is_zero()) d.emplace_back(label, a);
      if (!b.is_zero()) g.emplace_back(label, b);
      if (!a.is_zero() || !b.is_zero()) kept.push_back(label);
    }
    if (kept.empty()) {
      EXPECT_THROW(make_process(u, d, g, BlockingPolicy::RemoveBlockings), Error);
      continue;
    }
    auto p = make_process(u, d, g, BlockingPolicy::RemoveBlockings);
    EXPECT_TRUE(p.blocking_free());
    EXPECT_EQ(p.universe(), Universe(kept));
    if (kept.size() != u.size()) {
      EXPECT_THROW(make_process(u, d, g, BlockingPolicy::Strict), Error);
    }
  }
}

TEST(Property, FormattedScriptsRoundTrip) {
  Gen gen(10);
  for (int i = 0; i < kRounds; ++i) {
    auto u = gen.universe();
    std::vector<std::pair<std::string, FuzzyProcess>> defs{{"p", gen.process(u)}, {"q", gen.process(u)}};
    auto report = lang::evaluate(lang::parse_script(lang::format_script(u, defs)));
    EXPECT_EQ(report.bindings, defs);
  }
}

TEST(Property, ParserIsTotal) {
  // Any input either parses and evaluates or raises a library error.
  const std::string base =
      "universe a b c\n"
      "process p { delta: {a=4/5, b=1/2}; gamma: {a=2/5, c=7/10}; }\n"
      "process q { delta: {a=3/5, c=9/10}; gamma: {a=1, b=3/10}; }\n"
      "let r = -(p * q) & TOP\n"
      "assert r <= -p + -q | BOT\n";
  const std::vector<std::string> pieces = {
      "universe", "process", "let", "assert", "delta", "gamma", "OMEGA", "TOP", "BOT", "p", "q",
      "a", "{", "}", "(", ")", ":", ";", ",", "=", "==", "~=", "<=", "*", "&", "+", "|", "-",
      "1/2", "0.3", "7", "1/0", "#", "\n", " ", "\xc3\xa9", "@", "/", ".", "~", "<",
      "99999999999999999999", "123456789/987654321", "0.0000000000000000001"};
  Gen gen(11);
  auto run = [](const std::string& text) {
    try {
      lang::evaluate(lang::parse_script(text));
    } catch (const Error&) {
    } catch (const std::exception& e) {
      ADD_FAILURE() << "non-library exception " << e.what() << " for:\n" << text;
    }
  };
  for (int i = 0; i < 2000; ++i) {
    std::string text = base;
    int edits = 1 + static_cast<int>(gen.below(4));
    for (int k = 0; k < edits; ++k) {
      std::size_t at = gen.below(text.size() + 1);
      switch (gen.below(3)) {
        case 0: text.insert(at, pieces[gen.below(pieces.size())]); break;
        case 1: if (at < text.size()) text.erase(at, 1 + gen.below(4)); break;
        default: if (at < text.size()) text[at] = static_cast<char>(32 + gen.below(95)); break;
      }
    }
    run(text);
  }
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    std::size_t n = gen.below(30);
    for (std::size_t k = 0; k < n; ++k) text += pieces[gen.below(pieces.size())] + " ";
    run(text);
  }
}
