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
#pragma once

#include <vector>

namespace shadowsr {

/// Undirected graph as adjacency lists; vertex ids are 0..n-1.
using AdjacencyList = std::vector<std::vector<int>>;

/// Recursive Largest First coloring. Returns one color per vertex, colors
/// numbered 0, 1, ... in the order the classes were built. Ties go to the
/// lowest vertex index.
std::vector<int> color_rlf(const AdjacencyList& graph);

/// Sequential greedy coloring in order of decreasing degree.
std::vector<int> color_largest_first(const AdjacencyList& graph);

/// Number of distinct colors in a coloring.
int color_count(const std::vector<int>& colors);

}  // namespace shadowsr
