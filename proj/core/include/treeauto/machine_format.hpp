#pragma once

#include <string>
#include <string_view>

#include "treeauto/generators.hpp"

namespace treeauto {

// Text interchange format for generating sets:
//
//   alphabet 2
//   state a
//   perm 1 0
//   on 0 -> e
//   on 1 -> a
//   initial a
//
// Tokens are whitespace separated and '#' starts a comment. The state name
// `e` is the identity and never gets a block. Each `initial` line exports the
// named state as a generator, in file order.

/// Throws ParseError with the 1-based line and column of the offending token.
GeneratorSet parse_machine(std::string_view text);
GeneratorSet load_machine_file(const std::string& path);

/// Deterministic serialization; parse_machine(format_machine(g)) == g.
std::string format_machine(const GeneratorSet& gens);

}  // namespace treeauto
