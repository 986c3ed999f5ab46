#include "maf/newick.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace maf {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Node {
  std::string name;
  std::vector<int> children;
};

struct Tree {
  int line = 0;
  std::vector<Node> nodes;  // nodes[0] is the root
};

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

class Parser {
 public:
  Parser(std::string_view text, int line, std::vector<std::string>* warnings)
      : s_(text), line_(line), warnings_(warnings) {}

  Tree parse() {
    Tree t;
    t.line = line_;
    tree_ = &t;
    t.nodes.emplace_back();
    subtree(0);
    skip_ws();
    expect(';');
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected text after ';'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string label() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && label_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void warn(const std::string& w) {
    if (warnings_ && std::find(warnings_->begin(), warnings_->end(), w) == warnings_->end())
      warnings_->push_back(w);
  }

  void branch_length() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                  std::strchr("+-.eE", s_[pos_])))
        ++pos_;
      if (pos_ == start) fail("expected a branch length");
      warn("branch lengths ignored");
    }
  }

  void subtree(int id) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        int child = static_cast<int>(tree_->nodes.size());
        tree_->nodes.emplace_back();
        tree_->nodes[id].children.push_back(child);
        subtree(child);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
      skip_ws();
      if (!label().empty()) warn("internal node labels ignored");
    } else {
      std::string name = label();
      if (name.empty()) fail("expected a label or '('");
      tree_->nodes[id].name = std::move(name);
    }
    branch_length();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  std::vector<std::string>* warnings_;
  Tree* tree_ = nullptr;
};

std::vector<Tree> parse_lines(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<Tree> trees;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    trees.push_back(Parser(line, line_no, warnings).parse());
  }
  return trees;
}

std::vector<std::string> leaf_names(const Tree& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& n : t.nodes) {
    if (!n.children.empty()) continue;
    if (!seen.insert(n.name).second) throw ParseError("duplicate label '" + n.name + "'", t.line, 1);
    out.push_back(n.name);
  }
  return out;
}

// Adds the tree below `top` (kNone for a fresh top) to the builder.
void add_tree(ForestBuilder& b, const Tree& t, const LabelTable& table, VertexId top) {
  std::vector<std::pair<int, VertexId>> stack{{0, top}};
  while (!stack.empty()) {
    auto [id, parent] = stack.back();
    stack.pop_back();
    const Node& n = t.nodes[id];
    LabelId l = kNone;
    if (n.children.empty()) {
      auto found = table.find(n.name);
      if (!found || *found >= static_cast<LabelId>(table.base_size()))
        throw ParseError("unknown label '" + n.name + "'", t.line, 1);
      l = *found;
    }
    VertexId v = b.add_vertex(l);
    if (parent != kNone) b.add_edge(parent, v);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, v});
  }
}

}  // namespace

Instance parse_instance(std::string_view text, bool rooted, std::vector<std::string>* warnings) {
  auto trees = parse_lines(text, warnings);
  if (trees.empty()) throw ParseError("no trees in input", 1, 1);
  auto names = leaf_names(trees[0]);
  std::set<std::string> first(names.begin(), names.end());
  for (std::size_t i = 1; i < trees.size(); ++i) {
    auto other = leaf_names(trees[i]);
    if (std::set<std::string>(other.begin(), other.end()) != first)
      throw ParseError("label set differs from the first tree", trees[i].line, 1);
  }
  if (rooted && first.count(std::string(kRootName)))
    throw ParseError("label '" + std::string(kRootName) + "' is reserved in rooted mode", trees[0].line, 1);
  std::sort(names.begin(), names.end(), natural_less);

  Instance inst;
  inst.rooted = rooted;
  inst.labels = std::make_shared<LabelTable>(names, rooted);
  for (const auto& t : trees) {
    ForestBuilder b(rooted, inst.labels);
    VertexId top = kNone;
    if (rooted) top = b.add_vertex(inst.labels->root());
    add_tree(b, t, *inst.labels, top);
    inst.forests.push_back(b.build());
  }
  inst.validate();
  return inst;
}

Forest parse_forest(std::string_view text, const LabelTablePtr& labels, bool rooted,
                    std::vector<std::string>* warnings) {
  auto trees = parse_lines(text, warnings);
  ForestBuilder b(rooted, labels);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const Tree& t = trees[i];
    for (const auto& name : leaf_names(t))
      if (!seen.insert(name).second) throw ParseError("label '" + name + "' in two components", t.line, 1);
    bool root_alone = t.nodes.size() == 1 && t.nodes[0].name == kRootName;
    if (rooted && i == 0) {
      VertexId top = b.add_vertex(labels->root());
      seen.insert(std::string(kRootName));
      if (!root_alone) add_tree(b, t, *labels, top);
    } else {
      add_tree(b, t, *labels, kNone);
    }
  }
  if (seen.size() != labels->base_size()) throw ParseError("forest does not carry every label", 1, 1);
  return b.build();
}

namespace {

struct Written {
  std::string text;
  LabelId key;
};

Written write(const Forest& f, VertexId v, VertexId from) {
  const auto& x = f.vertex(v);
  std::vector<Written> parts;
  for (EdgeId e : x.edges) {
    VertexId w = f.other_end(e, v);
    if (w == from || (f.rooted() && f.edge(e).u != v)) continue;
    parts.push_back(write(f, w, v));
  }
  LabelId key = x.label != kNone ? x.label : std::numeric_limits<LabelId>::max();
  for (const auto& p : parts) key = std::min(key, p.key);
  std::sort(parts.begin(), parts.end(), [](const Written& a, const Written& b) { return a.key < b.key; });
  std::string s;
  if (!parts.empty()) {
    s += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += parts[i].text;
    }
    s += ')';
  }
  if (x.label != kNone) s += f.labels()[x.label].name;
  return {s, key};
}

}  // namespace

std::string serialize(const Forest& input) {
  Forest f = input.has_grouped_labels() ? expand_labels(input) : input;
  std::vector<Written> comps;
  std::string head;
  LabelId root = f.rooted() ? f.labels().root() : kNone;
  for (int c = 0; c < f.order(); ++c) {
    const auto& ls = f.component_labels()[c];
    VertexId top = f.component_root(c);
    if (root != kNone && ls.front() == root) {
      VertexId r = f.vertex_of(root);
      auto kids = f.children(r);
      head = kids.empty() ? std::string(kRootName) : write(f, kids[0], r).text;
      head += ";\n";
      continue;
    }
    if (!f.rooted()) {
      VertexId leaf = f.vertex_of(ls.front());
      if (ls.size() == 2 && f.vertex_count() && f.degree(leaf) == 1 &&
          f.vertex(f.other_end(f.vertex(leaf).edges[0], leaf)).label != kNone) {
        const auto& t = f.labels();
        comps.push_back({"(" + t[ls[0]].name + "," + t[ls[1]].name + ")", ls.front()});
        continue;
      }
      top = f.degree(leaf) == 1 ? f.other_end(f.vertex(leaf).edges[0], leaf) : leaf;
    }
    comps.push_back(write(f, top, kNone));
  }
  std::sort(comps.begin(), comps.end(), [](const Written& a, const Written& b) { return a.key < b.key; });
  std::string out = head;
  for (const auto& c : comps) out += c.text + ";\n";
  return out;
}

std::map<std::string, std::string> spec_comment(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string hash, tag;
    words >> hash >> tag;
    if (hash != "#" || tag != "spec") continue;
    std::string kv;
    while (words >> kv) {
      auto eq = kv.find('=');
      if (eq != std::string::npos) out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    break;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace maf
