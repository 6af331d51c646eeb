#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "zloch/flows.hpp"

namespace oracle {

// Random multigraph (loops and parallel edges allowed) with <= max_edges
// edges. When `dims` is given every edge gets a random axis-aligned polyline
// between random vertex positions, possibly winding around the torus.
inline std::shared_ptr<const zloch::Graph> random_graph(std::mt19937_64& rng, int max_vertices,
                                                        int max_edges,
                                                        const zloch::Coord* dims = nullptr) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::uniform_int_distribution<int> ne(0, max_edges);
  const int v = nv(rng);
  const int e = ne(rng);
  std::vector<std::string> vertices;
  std::vector<std::vector<double>> position;
  for (int i = 0; i < v; ++i) {
    vertices.push_back("v" + std::to_string(i));
    if (dims) {
      std::vector<double> p(3);
      for (int d = 0; d < 3; ++d) {
        p[d] = std::uniform_int_distribution<int>(0, (*dims)[d] - 1)(rng);
      }
      position.push_back(p);
    }
  }
  std::uniform_int_distribution<int> pick(0, v - 1);
  std::uniform_int_distribution<int> wind(-1, 1);
  std::vector<zloch::GraphEdge> edges;
  for (int k = 0; k < e; ++k) {
    zloch::GraphEdge edge;
    edge.id = "e" + std::to_string(k);
    const int t = pick(rng), h = pick(rng);
    edge.tail = vertices[t];
    edge.head = vertices[h];
    if (dims) {
      // Move axis by axis from the tail position to a lift of the head
      // position shifted by a random number of periods.
      std::vector<double> cur = position[t];
      edge.polyline.push_back(cur);
      for (int d = 0; d < 3; ++d) {
        const double target = position[h][d] + (*dims)[d] * wind(rng);
        if (target != cur[d]) {
          cur[d] = target;
          edge.polyline.push_back(cur);
        }
      }
    }
    edges.push_back(edge);
  }
  return std::make_shared<const zloch::Graph>(vertices, edges);
}

inline zloch::Flow random_flow(std::mt19937_64& rng, const std::vector<zloch::Flow>& basis,
                               std::shared_ptr<const zloch::Graph> g, int range) {
  std::uniform_int_distribution<int> c(-range, range);
  zloch::Flow f = zloch::zero_flow(g);
  for (const auto& b : basis) {
    const int k = c(rng);
    for (std::size_t e = 0; e < f.theta.size(); ++e) f.theta[e] += k * b.theta[e];
  }
  return f;
}

// Brute-force lattice membership: c is a combination of the generators with
// coefficients in [-range, range].
inline bool brute_force_member(const std::vector<std::vector<long long>>& gens,
                               const std::vector<long long>& c, int range) {
  const std::size_t n = gens.size();
  std::vector<int> k(n, -range);
  for (;;) {
    std::vector<long long> s(c.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) s[j] += k[i] * gens[i][j];
    }
    if (s == c) return true;
    std::size_t i = 0;
    while (i < n && k[i] == range) k[i++] = -range;
    if (i == n) return false;
    ++k[i];
  }
}

}  // namespace oracle
