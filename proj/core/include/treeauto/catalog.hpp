#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeauto/generators.hpp"

namespace treeauto {

/// Properties a catalog entry is believed to have. Tests recompute every one of
/// them from the machines; nothing in the library reads them back.
struct ExpectedProperties {
  /// (generator, class) with class one of "finitary:<depth>", "bounded",
  /// "polynomial:<degree>", "exponential".
  std::vector<std::pair<std::string, std::string>> activity;
  std::optional<bool> contracting;
  std::optional<std::size_t> nucleus_size;
  std::vector<std::string> short_relators;
};

struct CatalogEntry {
  std::string name;
  GeneratorSet generators;
  std::string provenance;
  ExpectedProperties expected;
};

/// Names accepted by `builtin`, in listing order.
const std::vector<std::string>& builtin_names();
/// Throws Error for unknown names.
CatalogEntry builtin(std::string_view name);

/// Acts on the integers by the two permutations a(n) = n + 1 and
/// b(0) = 0, b(2^k(2m+1)) = 2^k(2m+3). The rightmost letter acts first.
std::int64_t tullio_integer_action(const GroupWord& word, std::int64_t n);

/// Compares the integer action with the tree action of the `tullio` machines
/// on least-significant-bit-first binary words of length `depth`. Images are
/// compared modulo 2^depth, the exact truncation of the 2-adic action. Throws
/// PreconditionError unless 0 <= n < 2^depth and 1 <= depth <= 62.
bool integer_tree_crosscheck(const GroupWord& word, std::int64_t n, std::size_t depth);

}  // namespace treeauto
