#include "maf/labels.hpp"

#include <algorithm>
#include <cctype>

namespace maf {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  bool da = all_digits(a), db = all_digits(b);
  if (da != db) return da;
  if (da) {
    // Compare numerically without overflow: strip leading zeros, then length.
    auto strip = [](const std::string& s) {
      auto p = s.find_first_not_of('0');
      return p == std::string::npos ? std::string("0") : s.substr(p);
    };
    std::string sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

LabelTable::LabelTable(const std::vector<std::string>& names, bool with_root) {
  auto map = std::make_shared<std::unordered_map<std::string, LabelId>>();
  auto push = [&](const std::string& name) {
    if (map->count(name)) throw Error("duplicate label '" + name + "'");
    LabelId id = static_cast<LabelId>(labels_.size());
    labels_.push_back({id, name, {}});
    key_.push_back(id);
    (*map)[name] = id;
  };
  if (with_root) {
    push(std::string(kRootName));
    root_ = 0;
  }
  for (const auto& name : names) push(name);
  base_size_ = labels_.size();
  by_name_ = std::move(map);
}

std::optional<LabelId> LabelTable::find(std::string_view name) const {
  if (by_name_) {
    auto it = by_name_->find(std::string(name));
    if (it != by_name_->end()) return it->second;
  }
  for (std::size_t i = base_size_; i < labels_.size(); ++i)
    if (labels_[i].name == name) return static_cast<LabelId>(i);
  return std::nullopt;
}

std::vector<LabelId> LabelTable::originals(LabelId id) const {
  std::vector<LabelId> out;
  std::vector<LabelId> stack{id};
  while (!stack.empty()) {
    LabelId l = stack.back();
    stack.pop_back();
    const auto& g = labels_.at(l).grouped;
    if (g.empty()) {
      out.push_back(l);
    } else {
      for (auto it = g.rbegin(); it != g.rend(); ++it) stack.push_back(*it);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const LabelTable> LabelTable::with_group(std::vector<LabelId> members) const {
  if (members.size() < 2) throw Error("a grouped label needs at least two members");
  std::sort(members.begin(), members.end(), [&](LabelId a, LabelId b) { return key(a) < key(b); });
  auto t = std::make_shared<LabelTable>(*this);
  LabelId id = static_cast<LabelId>(t->labels_.size());
  std::string name;
  LabelId k = key(members.front());
  for (LabelId m : members) {
    if (!name.empty()) name += '+';
    name += labels_.at(m).name;
  }
  t->labels_.push_back({id, std::move(name), std::move(members)});
  t->key_.push_back(k);
  t->base_ = base();
  return t;
}

std::shared_ptr<const LabelTable> LabelTable::base() const {
  if (base_) return base_;
  return shared_from_this();
}

bool LabelTable::same_base(const LabelTable& other) const {
  if (this == &other) return true;
  if (base_size_ != other.base_size_ || root_ != other.root_) return false;
  for (std::size_t i = 0; i < base_size_; ++i)
    if (labels_[i].name != other.labels_[i].name) return false;
  return true;
}

bool LabelTable::operator==(const LabelTable& other) const {
  if (this == &other) return true;
  if (size() != other.size() || !same_base(other)) return false;
  for (std::size_t i = base_size_; i < labels_.size(); ++i)
    if (labels_[i].grouped != other.labels_[i].grouped) return false;
  return true;
}

}  // namespace maf
