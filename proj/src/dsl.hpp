#pragma once

#include <optional>
#include <string>
#include <variant>

#include "model.hpp"

namespace qs {

enum class QueryKind { Consistency, Sufficiency };

struct Query {
  QueryKind kind = QueryKind::Consistency;
  std::optional<EdgeFormula> conclusion;  // Sufficiency only
};

struct ProblemFile {
  ConstraintGraph graph;
  Query query;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
  std::string to_string() const;
};

using ParseResult = std::variant<ProblemFile, ParseError>;

// Statement-per-line, period-terminated, '%' comments, UTF-8.
ParseResult parse_problem(const std::string& text);

// Canonical text; parse(format(p)) is structurally identical to p.
std::string format_problem(const ProblemFile& p);

std::string format_formula(const EdgeFormula& f);

}  // namespace qs
