#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvc/errors.hpp"

namespace pvc {

inline constexpr std::size_t kMaxVars = 12;
inline constexpr int kDefaultDegreeBound = 512;

class VarContext;
using ContextPtr = std::shared_ptr<const VarContext>;

/// Ordered variable list plus the root degree d (t = s^d).
class VarContext {
 public:
  static ContextPtr make(std::vector<std::string> names, int root_degree = 1,
                         int degree_bound = kDefaultDegreeBound) {
    if (names.size() > kMaxVars) throw ContextError("too many variables in context");
    if (root_degree < 1) throw ContextError("root degree must be positive");
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& n = names[i];
      if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
        throw ContextError("invalid identifier '" + n + "'");
      for (char c : n)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
          throw ContextError("invalid identifier '" + n + "'");
      if (n == "t") throw ContextError("'t' is reserved for s^d");
      for (std::size_t j = 0; j < i; ++j)
        if (names[j] == n) throw ContextError("duplicate identifier '" + n + "'");
    }
    return ContextPtr(new VarContext(std::move(names), root_degree, degree_bound));
  }

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t arity() const noexcept { return names_.size(); }
  int root_degree() const noexcept { return root_degree_; }
  int degree_bound() const noexcept { return degree_bound_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw ContextError("unknown variable '" + std::string(name) + "'");
    return *i;
  }

  bool operator==(const VarContext& o) const {
    return names_ == o.names_ && root_degree_ == o.root_degree_;
  }

 private:
  VarContext(std::vector<std::string> names, int d, int bound)
      : names_(std::move(names)), root_degree_(d), degree_bound_(bound) {}

  std::vector<std::string> names_;
  int root_degree_;
  int degree_bound_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same(const ContextPtr& a, const ContextPtr& b) {
  if (!same_context(a, b)) throw ContextError("context mismatch");
}

}  // namespace pvc
