#pragma once

#include <string>
#include <utility>
#include <vector>

#include "omni/structures.hpp"

namespace omni {

// Error in a well-formed document: unknown constructor, arity mismatch, unknown label.
class SemanticError : public Error {
 public:
  SemanticError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Value {
  std::string text;
  bool quoted = false;
  std::size_t line = 0, column = 0;  // first character of the text (after the quote)
};

struct Block {
  std::string kind;
  std::string label;
  std::size_t line = 0, column = 0;
  std::vector<std::pair<std::string, Value>> entries;  // declaration order, keys may repeat

  const Value* find(const std::string& key) const;
  std::vector<const Value*> all(const std::string& key) const;
};

// Syntax only; throws ParseError with line and column.
std::vector<Block> parse_blocks(const std::string& text);

struct StructureDef {
  std::string label;
  std::string type;
  StructureFrame frame;
  std::size_t line = 0;
};

struct CheckDef {
  std::string label;
  std::string verb;
  std::string target;   // structure label, empty for identity_suite
  bool expect_pass = true;
  Block block;          // raw arguments
};

struct Document {
  std::string source;  // path or "<text>"
  ChartPtr chart;
  Oracle oracle;
  std::vector<StructureDef> structures;
  std::vector<CheckDef> checks;

  const StructureDef* find(const std::string& label) const;
};

// Throws ParseError (syntax, expressions) or SemanticError.
Document parse_document(const std::string& text, const std::string& source = "<text>");
Document load_document(const std::string& path);
// Argument keys and expressions of one check; throws ParseError or SemanticError.
void validate_check(const Document& doc, const CheckDef& check);

// Helpers shared with the runner; positions refer to `v`.
Scalar parse_value_scalar(const Value& v, const Chart& chart);
// Constant expression such as "1/2" or "exp(1)"; coordinates are rejected.
double parse_constant(const Value& v);
std::vector<Scalar> parse_value_list(const Value& v, const Chart& chart, std::size_t expected);
// "x=0.3, y=1/2" with every chart coordinate assigned once.
std::vector<double> parse_point(const Value& v, const Chart& chart);
// Points separated by ';'.
std::vector<std::vector<double>> parse_points(const Value& v, const Chart& chart);
// Sub-chart of `chart` with the listed coordinate names, in the given order.
ChartPtr sub_chart(const Chart& chart, const Value& names);

// Human-readable generator list.
std::vector<std::string> describe_frame(const StructureFrame& F);

extern const char* const kStructureTypes[];
extern const char* const kCheckVerbs[];

}  // namespace omni
