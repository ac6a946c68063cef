#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace treeauto::detail {

/// Strongly connected components of a directed graph given by adjacency
/// lists (parallel edges allowed). Components are numbered in reverse
/// topological order: every edge goes from a component to one with an equal
/// or smaller number.
struct Components {
  std::vector<std::uint32_t> of;                   // node -> component
  std::vector<std::vector<std::uint32_t>> members;  // component -> nodes, ascending
};

inline Components strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj) {
  constexpr std::uint32_t unvisited = UINT32_MAX;
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  Components out;
  out.of.assign(n, unvisited);
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;  // (node, next edge)
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, e] = frames.back();
      if (e < adj[v].size()) {
        const std::uint32_t w = adj[v][e++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w] && index[w] < low[v]) {
          low[v] = index[w];
        }
        continue;
      }
      const std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::uint32_t parent = frames.back().first;
        if (low[done] < low[parent]) low[parent] = low[done];
      }
      if (low[done] == index[done]) {
        const auto id = static_cast<std::uint32_t>(out.members.size());
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.of[w] = id;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.members.push_back(std::move(comp));
      }
    }
  }
  return out;
}

}  // namespace treeauto::detail
