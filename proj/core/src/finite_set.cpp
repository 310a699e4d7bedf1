#include "qrel/finite_set.hpp"

#include <algorithm>
#include <unordered_set>

namespace qrel {

FiniteSet::FiniteSet(std::string name, std::vector<std::string> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  std::unordered_set<std::string> seen;
  for (const std::string& e : elements_) {
    if (!seen.insert(e).second)
      throw ShapeError("duplicate element '" + e + "' in set " + name_);
  }
}

int FiniteSet::index_of(const std::string& label) const {
  auto it = std::find(elements_.begin(), elements_.end(), label);
  return it == elements_.end() ? -1 : static_cast<int>(it - elements_.begin());
}

SetMap::SetMap(FiniteSet source, FiniteSet target, std::vector<int> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != source_.size())
    throw ShapeError("map table size does not match source");
  for (int v : table_) {
    if (v < 0 || v >= target_.size()) throw ShapeError("map image out of range");
  }
}

SetMap SetMap::identity(const FiniteSet& a) {
  std::vector<int> t(a.size());
  for (int i = 0; i < a.size(); i++) t[i] = i;
  return SetMap(a, a, std::move(t));
}

SetMap SetMap::constant(const FiniteSet& a, const FiniteSet& c, int target_index) {
  if (target_index < 0 || target_index >= c.size()) throw ShapeError("constant out of range");
  return SetMap(a, c, std::vector<int>(a.size(), target_index));
}

SetMap compose(const SetMap& g, const SetMap& f) {
  if (f.target() != g.source()) throw ShapeError("maps do not compose");
  std::vector<int> t(f.table().size());
  for (std::size_t i = 0; i < t.size(); i++) t[i] = g.table()[f.table()[i]];
  return SetMap(f.source(), g.target(), std::move(t));
}

}  // namespace qrel
