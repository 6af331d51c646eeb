#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "zloch/homology.hpp"
#include "zloch/integer.hpp"
#include "zloch/manifold.hpp"

namespace zloch {

struct GraphEdge {
  std::string id;
  std::string tail;
  std::string head;
  // Ambient points from the tail position to the head position; may be
  // empty for abstract graphs.
  std::vector<std::vector<double>> polyline;
};

// Finite graph with reference orientations (tail -> head); loops allowed.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, std::vector<GraphEdge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_index(const std::string& id) const;  // InputError if unknown
  std::size_t edge_index(const std::string& id) const;    // InputError if unknown
  std::size_t tail(std::size_t e) const { return tails_[e]; }
  std::size_t head(std::size_t e) const { return heads_[e]; }
  std::size_t component_count() const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> tails_;
  std::vector<std::size_t> heads_;
  std::unordered_map<std::string, std::size_t> vertex_ids_;
  std::unordered_map<std::string, std::size_t> edge_ids_;
};

// Signed weights Theta(e): weight |Theta|, reference orientation when
// positive, reversed when negative, no orientation when zero.
struct Flow {
  std::shared_ptr<const Graph> graph;
  std::vector<long long> theta;  // by edge index

  long long at(const std::string& edge_id) const;
};

Flow make_flow(std::shared_ptr<const Graph> g, const std::map<std::string, long long>& theta);
Flow zero_flow(std::shared_ptr<const Graph> g);

// Conservation sum_e inc(v, e) Theta(e) = 0 at every vertex; loops cancel.
bool is_flow(const Graph& g, const std::map<std::string, long long>& theta);
bool is_flow(const Flow& f);
// Vertices where conservation fails, by index.
std::vector<std::size_t> conservation_defects(const Graph& g, const std::vector<long long>& theta);

Flow flow_add(const Flow& a, const Flow& b);
Flow flow_neg(const Flow& a);

// Unsigned view: weight theta(e) >= 0 and orientation +1 (reference), -1
// (reversed) or 0 (absent, exactly when the weight is 0).
struct OrientedWeight {
  long long weight = 0;
  int orientation = 0;
  bool operator==(const OrientedWeight&) const = default;
};
OrientedWeight oriented_weight(long long theta);
long long signed_weight(OrientedWeight w);
// Group law in the unsigned view: equal orientations add, opposite ones take
// the absolute difference with the orientation of the larger weight.
OrientedWeight add_oriented(OrientedWeight a, OrientedWeight b);

// Integer basis of the conservation kernel: fundamental cycles of a spanning
// forest (in edge order), certified through the Smith form.
std::vector<Flow> flow_basis(std::shared_ptr<const Graph> g);
// Coefficients of a flow in flow_basis; InputError if `f` is not a flow.
std::vector<Integer> flow_coordinates(const Flow& f, const std::vector<Flow>& basis);

// Unit-step lattice path of each edge, after snapping polyline points within
// `tolerance` of the lattice shifted by `offset`.
struct EdgePath {
  std::vector<std::pair<Index, int>> steps;  // (manifold edge, sign)
  std::vector<long long> start;              // reduced lattice points
  std::vector<long long> end;
  std::vector<std::vector<long long>> points;  // start, ..., end (reduced)
};

struct EmbeddedGraphFlow {
  Flow flow;
  double offset = 0.0;
  double tolerance = 1e-6;
};

std::vector<EdgePath> embed_edges(const Graph& g, const LatticeManifold& m, double offset = 0.0,
                                  double tolerance = 1e-6);
// Throws EmbeddingError if two edges share a lattice point other than a
// common endpoint vertex, or an edge revisits a point.
void validate_disjoint(const Graph& g, const std::vector<EdgePath>& paths);

// 1-chain sum_e Theta(e) * path(e) on the manifold.
std::vector<long long> flow_chain(const Flow& f, const std::vector<EdgePath>& paths,
                                  Index edge_count);

HomologyClass gamma_class(const EmbeddedGraphFlow& egf, const LatticeManifold& m);

// Sublattice of the free part of H_1 in row Hermite form.
struct ClassLattice {
  std::size_t ambient_rank = 0;
  IntMatrix basis;  // rows

  bool contains(const std::vector<Integer>& c) const;
  // Canonical representative of c modulo the lattice (zero iff member).
  std::vector<Integer> residue(const std::vector<Integer>& c) const;
  // Integer coefficients over the rows, if c is a member.
  std::optional<std::vector<Integer>> coefficients(const std::vector<Integer>& c) const;
};

// Image of Gamma over the flow basis of the graph.
ClassLattice lambda_image(std::shared_ptr<const Graph> g, const LatticeManifold& m,
                          double offset = 0.0, double tolerance = 1e-6);
ClassLattice lattice_from_generators(std::size_t ambient_rank,
                                     const std::vector<std::vector<Integer>>& generators);

}  // namespace zloch
