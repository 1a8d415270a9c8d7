#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tourroute/tourroute.hpp"

namespace tourroute::testing {

inline std::filesystem::path data_dir() { return TOURROUTE_DATA_DIR; }
inline std::filesystem::path brasov_edges_path() { return data_dir() / "brasov_edges.txt"; }
inline std::filesystem::path brasov_names_path() { return data_dir() / "brasov_names.tsv"; }

inline const AttractionGraph& brasov() {
  static const AttractionGraph g =
      load_edge_table(brasov_edges_path()).with_registry(load_registry(brasov_names_path()));
  return g;
}

// Distance table (u, v, meters, minutes) transcribed row by row, kept
// separate from the data file so sums can be checked independently.
inline constexpr std::array<std::array<std::uint32_t, 4>, 35> kBrasovRows{{
    {1, 2, 20, 1},     {1, 5, 650, 8},    {2, 3, 750, 10},   {3, 5, 350, 5},    {3, 4, 750, 9},
    {3, 17, 350, 5},   {4, 18, 750, 10},  {4, 20, 1200, 15}, {4, 21, 1100, 14}, {5, 6, 20, 1},
    {5, 14, 350, 4},   {5, 17, 110, 2},   {6, 7, 450, 7},    {6, 14, 300, 4},   {7, 8, 250, 4},
    {7, 9, 260, 4},    {8, 9, 110, 2},    {9, 10, 350, 5},   {10, 11, 170, 2},  {10, 12, 180, 2},
    {11, 12, 150, 2},  {11, 15, 400, 5},  {11, 19, 500, 6},  {12, 13, 230, 3},  {13, 20, 350, 4},
    {13, 22, 500, 9},  {14, 15, 210, 2},  {14, 16, 250, 3},  {14, 17, 400, 5},  {14, 18, 350, 5},
    {15, 16, 10, 1},   {16, 18, 450, 6},  {17, 18, 60, 1},   {19, 20, 300, 4},  {20, 21, 400, 5},
}};

// Independent summation over kBrasovRows; column 2 = meters, 3 = minutes.
inline std::uint64_t table_sum(const std::vector<std::uint32_t>& route, int column) {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    bool found = false;
    for (const auto& row : kBrasovRows) {
      if ((row[0] == route[i - 1] && row[1] == route[i]) || (row[1] == route[i - 1] && row[0] == route[i])) {
        total += row[column];
        found = true;
      }
    }
    if (!found) return UINT64_MAX;
  }
  return total;
}

struct TableRow {
  std::vector<std::uint32_t> nodes;
  std::uint32_t printed_cost;
};

// Reference table of 11-node routes from 21 to 22, in its printed order.
inline const std::vector<TableRow>& eleven_stop_rows() {
  static const std::vector<TableRow> rows{
      {{21, 4, 18, 17, 5, 14, 15, 11, 12, 13, 22}, 52}, {{21, 4, 18, 17, 14, 15, 11, 10, 12, 13, 22}, 53},
      {{21, 4, 18, 17, 14, 16, 15, 11, 12, 13, 22}, 53}, {{21, 4, 3, 5, 6, 14, 15, 11, 12, 13, 22}, 54},
      {{21, 4, 18, 14, 16, 15, 11, 10, 12, 13, 22}, 54}, {{21, 4, 3, 5, 14, 15, 11, 10, 12, 13, 22}, 55},
      {{21, 4, 3, 5, 14, 16, 15, 11, 12, 13, 22}, 55},  {{21, 4, 3, 17, 5, 14, 15, 11, 12, 13, 22}, 55},
      {{21, 4, 3, 17, 18, 14, 15, 11, 12, 13, 22}, 55}, {{21, 4, 3, 17, 18, 16, 15, 11, 12, 13, 22}, 55},
      {{21, 4, 3, 5, 17, 14, 15, 11, 12, 13, 22}, 56},  {{21, 4, 3, 17, 14, 15, 11, 10, 12, 13, 22}, 56},
      {{21, 4, 3, 17, 14, 16, 15, 11, 12, 13, 22}, 56}, {{21, 4, 18, 16, 14, 15, 11, 10, 12, 13, 22}, 56},
      {{21, 20, 4, 18, 17, 14, 15, 11, 12, 13, 22}, 57}, {{21, 4, 3, 5, 6, 7, 9, 10, 12, 13, 22}, 58},
      {{21, 20, 4, 18, 14, 15, 11, 10, 12, 13, 22}, 58}, {{21, 20, 4, 18, 14, 16, 15, 11, 12, 13, 22}, 58},
      {{21, 20, 4, 18, 16, 15, 11, 10, 12, 13, 22}, 58}, {{21, 20, 4, 3, 5, 14, 15, 11, 12, 13, 22}, 59},
      {{21, 4, 18, 17, 14, 15, 11, 19, 20, 13, 22}, 60}, {{21, 20, 4, 3, 17, 14, 15, 11, 12, 13, 22}, 60},
      {{21, 20, 4, 18, 16, 14, 15, 11, 12, 13, 22}, 60}, {{21, 4, 18, 14, 16, 15, 11, 19, 20, 13, 22}, 61},
      {{21, 4, 3, 5, 14, 15, 11, 19, 20, 13, 22}, 62},  {{21, 4, 18, 14, 6, 7, 9, 10, 12, 13, 22}, 62},
      {{21, 4, 3, 17, 14, 15, 11, 19, 20, 13, 22}, 63}, {{21, 4, 18, 16, 14, 15, 11, 19, 20, 13, 22}, 63},
  };
  return rows;
}

inline const std::vector<std::uint32_t> kFullTourListing{21, 20, 19, 11, 15, 16, 14, 17, 18, 4, 3,
                                                         2,  1,  5,  6,  7,  8,  9,  10, 12, 13, 22};

inline std::vector<std::uint32_t> ids(const Route& r) {
  std::vector<std::uint32_t> out;
  for (auto id : r.nodes) out.push_back(index(id));
  return out;
}

inline AttractionGraph graph_of(std::size_t n, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs,
                                Weight meters = 1, Weight minutes = 1) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({NodeId{u}, NodeId{v}, meters, minutes});
  return AttractionGraph::from_edges(n, std::move(edges));
}

// Connected graph: random spanning tree plus extra edges with probability p.
inline AttractionGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, double p, Weight max_weight) {
  std::uniform_int_distribution<Weight> weight(1, max_weight);
  std::bernoulli_distribution extra(p);
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i + 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  std::vector<Edge> edges;
  auto add = [&](std::uint32_t a, std::uint32_t b) {
    auto key = std::minmax(a, b);
    if (used.insert({key.first, key.second}).second) {
      edges.push_back({NodeId{a}, NodeId{b}, weight(rng), weight(rng)});
    }
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    add(perm[i], perm[parent(rng)]);
  }
  for (std::uint32_t a = 1; a <= n; ++a) {
    for (std::uint32_t b = a + 1; b <= n; ++b) {
      if (extra(rng)) add(a, b);
    }
  }
  return AttractionGraph::from_edges(n, std::move(edges));
}

}  // namespace tourroute::testing
