#pragma once

#include <string>
#include <vector>

#include "qrel/errors.hpp"

namespace qrel {

/// A named finite set of labelled elements.  Element order is significant:
/// it fixes matrix indexing everywhere.  The empty set is allowed.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::string name, std::vector<std::string> elements);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& label(int i) const { return elements_[i]; }
  const std::vector<std::string>& elements() const { return elements_; }

  /// Position of a label, or -1 if absent.
  int index_of(const std::string& label) const;

  bool operator==(const FiniteSet& o) const {
    return name_ == o.name_ && elements_ == o.elements_;
  }
  bool operator!=(const FiniteSet& o) const { return !(*this == o); }

 private:
  std::string name_;
  std::vector<std::string> elements_;
};

/// A total map between finite sets, stored by element position.
class SetMap {
 public:
  SetMap() = default;
  SetMap(FiniteSet source, FiniteSet target, std::vector<int> table);

  static SetMap identity(const FiniteSet& a);
  static SetMap constant(const FiniteSet& a, const FiniteSet& c, int target_index);

  const FiniteSet& source() const { return source_; }
  const FiniteSet& target() const { return target_; }
  int operator()(int i) const { return table_[i]; }
  const std::vector<int>& table() const { return table_; }

  /// Composite g . f (first f, then g).
  friend SetMap compose(const SetMap& g, const SetMap& f);

  bool operator==(const SetMap& o) const = default;

 private:
  FiniteSet source_;
  FiniteSet target_;
  std::vector<int> table_;
};

}  // namespace qrel
