#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace maf {

using LabelId = int;
using VertexId = int;
using EdgeId = int;
inline constexpr int kNone = -1;

// Name of the root leaf added to every rooted instance. Reserved in rooted
// input.
inline constexpr std::string_view kRootName = "rho";

// Thrown for malformed instances and precondition violations in the public
// operations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Label {
  LabelId id = kNone;
  std::string name;
  // Constituent labels of a grouped label; empty for original labels.
  std::vector<LabelId> grouped;
};

// Labels of one instance. Original labels come first and are shared by every
// forest of the instance; grouped labels are appended by group_labels() and
// live only in the forests that were grouped.
class LabelTable : public std::enable_shared_from_this<LabelTable> {
 public:
  LabelTable() = default;
  // Builds a table of original labels. Ids follow the order of `names`.
  // When `with_root` is set the root label is prepended with id 0.
  LabelTable(const std::vector<std::string>& names, bool with_root);

  std::size_t size() const { return labels_.size(); }
  std::size_t base_size() const { return base_size_; }
  const Label& operator[](LabelId id) const { return labels_.at(id); }
  LabelId root() const { return root_; }
  bool is_grouped(LabelId id) const { return !labels_.at(id).grouped.empty(); }

  std::optional<LabelId> find(std::string_view name) const;

  // Smallest original label id contained in `id`. Used for every
  // deterministic ordering of labels.
  LabelId key(LabelId id) const { return key_.at(id); }

  // Original labels contained in `id`, recursively.
  std::vector<LabelId> originals(LabelId id) const;

  // Copy of this table with one more grouped label. The new id is size().
  std::shared_ptr<const LabelTable> with_group(std::vector<LabelId> members) const;

  // Table holding only the original labels. Tables must be owned by a
  // shared_ptr.
  std::shared_ptr<const LabelTable> base() const;

  bool same_base(const LabelTable& other) const;
  bool operator==(const LabelTable& other) const;

 private:
  std::vector<Label> labels_;
  std::vector<LabelId> key_;
  std::size_t base_size_ = 0;
  LabelId root_ = kNone;
  std::shared_ptr<const LabelTable> base_;
  std::shared_ptr<const std::unordered_map<std::string, LabelId>> by_name_;
};

using LabelTablePtr = std::shared_ptr<const LabelTable>;

// Orders names the way people expect taxon names ordered: purely numeric
// names by value and before the others, the rest lexicographically.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace maf
