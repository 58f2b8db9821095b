// Copyright 2026 The shadowsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "shadowsr/coloring.hpp"

#include <algorithm>
#include <numeric>

namespace shadowsr {

namespace {

enum class State : unsigned char { Candidate, Blocked, Done };

int count_in(const std::vector<int>& neighbors, const std::vector<State>& state,
             State wanted) {
  return static_cast<int>(std::count_if(
      neighbors.begin(), neighbors.end(),
      [&](int u) { return state[static_cast<std::size_t>(u)] == wanted; }));
}

}  // namespace

std::vector<int> color_rlf(const AdjacencyList& graph) {
  const std::size_t n = graph.size();
  std::vector<int> colors(n, -1);
  std::size_t remaining = n;
  int color = 0;
  while (remaining > 0) {
    std::vector<State> state(n, State::Done);
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] < 0) state[v] = State::Candidate;
    }

    auto take = [&](std::size_t v) {
      colors[v] = color;
      state[v] = State::Done;
      --remaining;
      for (int u : graph[v]) {
        auto& s = state[static_cast<std::size_t>(u)];
        if (s == State::Candidate) s = State::Blocked;
      }
    };

    // Seed the class with the candidate of largest uncolored degree.
    std::size_t seed = n;
    int best_degree = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (state[v] != State::Candidate) continue;
      const int d = count_in(graph[v], state, State::Candidate);
      if (d > best_degree) {
        best_degree = d;
        seed = v;
      }
    }
    take(seed);

    // Grow it with the candidate sharing the most blocked neighbors.
    for (;;) {
      std::size_t pick = n;
      int best_blocked = -1;
      int best_free = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (state[v] != State::Candidate) continue;
        const int blocked = count_in(graph[v], state, State::Blocked);
        const int free = count_in(graph[v], state, State::Candidate);
        if (blocked > best_blocked ||
            (blocked == best_blocked && free < best_free)) {
          best_blocked = blocked;
          best_free = free;
          pick = v;
        }
      }
      if (pick == n) break;
      take(pick);
    }
    ++color;
  }
  return colors;
}

std::vector<int> color_largest_first(const AdjacencyList& graph) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return graph[a].size() > graph[b].size();
  });
  std::vector<int> colors(n, -1);
  std::vector<char> used;
  for (std::size_t v : order) {
    used.assign(n + 1, 0);
    for (int u : graph[v]) {
      const int c = colors[static_cast<std::size_t>(u)];
      if (c >= 0) used[static_cast<std::size_t>(c)] = 1;
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    colors[v] = c;
  }
  return colors;
}

int color_count(const std::vector<int>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

}  // namespace shadowsr
