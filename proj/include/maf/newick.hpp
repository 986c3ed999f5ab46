#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "maf/instance.hpp"

namespace maf {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// One Newick tree per line; blank lines and lines starting with '#' are
// skipped. Labels are [A-Za-z0-9_.]+. Branch lengths and internal node labels
// are dropped with a warning. Label ids follow natural_less order of the
// names. Rooted instances get the root label above every tree.
Instance parse_instance(std::string_view text, bool rooted, std::vector<std::string>* warnings = nullptr);

// A forest written one component per line over an existing table. In rooted
// mode the first line is the component hanging below the root label, or
// "rho;" when the root label is alone.
Forest parse_forest(std::string_view text, const LabelTablePtr& labels, bool rooted,
                    std::vector<std::string>* warnings = nullptr);

// Inverse of parse_forest. Grouped labels are expanded. Children are ordered
// by their smallest label id.
std::string serialize(const Forest& f);

// key=value pairs of the first "# spec" comment line, if any.
std::map<std::string, std::string> spec_comment(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace maf
