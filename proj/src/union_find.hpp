#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "worldset/value.hpp"

namespace ws::detail {

// Union-find over terms; each class remembers its constant, if any.
class TermClasses {
 public:
  std::size_t id(const Value& v) {
    auto [it, inserted] = index_.try_emplace(v, parent_.size());
    if (inserted) {
      parent_.push_back(parent_.size());
      terms_.push_back(v);
    }
    return it->second;
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  std::size_t find(const Value& v) { return find(id(v)); }

  // Returns false if the merge puts two distinct constants in one class.
  bool merge(const Value& a, const Value& b) {
    std::size_t x = find(a), y = find(b);
    if (x == y) return true;
    const Value* cx = constant_of(x);
    const Value* cy = constant_of(y);
    if (cx && cy) return false;
    if (cx) std::swap(x, y);  // keep the constant-bearing root
    parent_[x] = y;
    if (!constant_of(y) && terms_[x].is_constant()) constants_[y] = terms_[x];
    return true;
  }

  const Value* constant_of(std::size_t root) {
    if (terms_[root].is_constant()) return &terms_[root];
    auto it = constants_.find(root);
    return it == constants_.end() ? nullptr : &it->second;
  }

  const std::vector<Value>& terms() const { return terms_; }

 private:
  std::map<Value, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<Value> terms_;
  std::map<std::size_t, Value> constants_;
};

}  // namespace ws::detail
