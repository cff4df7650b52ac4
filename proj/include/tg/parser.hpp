#pragma once

#include <stdexcept>
#include <string>

#include "tg/formula.hpp"

namespace tg {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Parses the concrete grammar into a formula tree. Relativized quantifiers
// are desugared to sort-guard conjunctions, floor/frac of compound terms get
// a fresh integer-guarded variable, and bound variables are renamed so that
// no shadowing remains.
Formula parse(const std::string& text);

}  // namespace tg
