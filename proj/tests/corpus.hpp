#pragma once

// Malformed scripts with the error each must produce.

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzproc/error.hpp"

namespace corpus {

struct Case {
  std::string name;
  std::string text;
  fuzzproc::ErrorKind kind;
  std::size_t line;
  std::size_t column;
};

inline const std::string kHeader = "universe a b c\n";

inline std::vector<Case> error_cases() {
  using K = fuzzproc::ErrorKind;
  return {
      {"dangling_operator", "let r = p *", K::ParseError, 1, 11},
      {"empty_script", "", K::MissingUniverse, 1, 1},
      {"statement_before_universe", "process p { delta: {a=1}; gamma: {}; }\nuniverse a\n",
       K::MissingUniverse, 1, 1},
      {"second_universe", "universe a\nuniverse b\n", K::DuplicateDefinition, 2, 1},
      {"duplicate_universe_label", "universe a b a\n", K::DuplicateLabel, 1, 14},
      {"empty_universe", "universe\n", K::ParseError, 1, 1},
      {"unknown_identifier", kHeader + "let r = p * q\n", K::UnknownIdentifier, 2, 9},
      {"redefined_process",
       kHeader + "process p { delta: {a=1}; gamma: {}; }\nprocess p { delta: {a=1}; gamma: {}; }\n",
       K::DuplicateDefinition, 3, 1},
      {"let_shadows_process", kHeader + "process p { delta: {a=1}; gamma: {}; }\nlet p = -p\n",
       K::DuplicateDefinition, 3, 1},
      {"unknown_label", kHeader + "process p { delta: {a=1, d=1/2}; gamma: {}; }\n",
       K::UnknownLabel, 2, 26},
      {"duplicate_membership_label", kHeader + "process p { delta: {a=1, a=1/2}; gamma: {}; }\n",
       K::DuplicateLabel, 2, 26},
      {"grade_above_one", kHeader + "process p { delta: {a=3/2}; gamma: {}; }\n",
       K::GradeOutOfRange, 2, 21},
      {"decimal_above_one", kHeader + "process p { delta: {a=1.5}; gamma: {}; }\n",
       K::GradeOutOfRange, 2, 21},
      {"zero_denominator", kHeader + "process p { delta: {a=1/0}; gamma: {}; }\n",
       K::ParseError, 2, 23},
      {"negative_grade", kHeader + "process p { delta: {a=-1/2}; gamma: {}; }\n",
       K::ParseError, 2, 23},
      {"blocking_execution", kHeader + "process p { delta: {a=1}; gamma: {b=1}; }\n",
       K::BlockingViolation, 2, 1},
      {"missing_semicolon", kHeader + "process p { delta: {a=1} gamma: {}; }\n",
       K::ParseError, 2, 26},
      {"channels_swapped", kHeader + "process p { gamma: {a=1}; delta: {}; }\n",
       K::ParseError, 2, 13},
      {"unclosed_paren", kHeader + "process p { delta: {a=1}; gamma: {}; }\nlet r = (p * p\n",
       K::ParseError, 3, 14},
      {"relation_in_let",
       kHeader + "process p { delta: {a=1}; gamma: {}; }\nlet r = p == p\n", K::ParseError, 3, 11},
      {"two_relations",
       kHeader + "process p { delta: {a=1}; gamma: {}; }\nassert p == p == p\n",
       K::ParseError, 3, 15},
      {"stray_character", kHeader + "let r = p ^ p\n", K::ParseError, 2, 11},
      {"non_ascii_column", "universe a\n# \xc3\xa9t\xc3\xa9\nprocess \xc3\xa9 {}\n",
       K::ParseError, 3, 9},
      {"dangling_slash", kHeader + "process p { delta: {a=1/}; gamma: {}; }\n", K::ParseError, 2,
       23},
      {"missing_operand_after_minus", kHeader + "let r = -\n", K::ParseError, 2, 9},
  };
}

}  // namespace corpus
