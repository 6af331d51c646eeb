#include "zloch/homology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "zloch/detail/sparse_elimination.hpp"
#include "zloch/error.hpp"
#include "zloch/smith.hpp"

namespace zloch {

HomologyGroup homology(const ChainComplex& c, int k) {
  if (k < 0 || k > c.top_dimension()) {
    throw InputError("homology dimension " + std::to_string(k) + " out of range");
  }
  auto factors = [&](int j) {
    if (j < 1 || j > c.top_dimension()) return InvariantFactors{};
    return sparse_invariant_factors(c.count(j - 1), c.boundary[static_cast<Index>(j)]);
  };
  const InvariantFactors here = factors(k);
  const InvariantFactors above = factors(k + 1);
  HomologyGroup out;
  out.betti = c.count(k) - here.rank - above.rank;
  out.torsion = above.nontrivial;
  return out;
}

bool HomologyClass::is_zero() const {
  for (const auto& v : free) {
    if (v != 0) return false;
  }
  for (const auto& v : torsion) {
    if (v != 0) return false;
  }
  return true;
}

std::string HomologyClass::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < free.size(); ++i) os << (i ? "," : "") << free[i];
  os << ")";
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    os << " + " << torsion[i] << " mod " << moduli[i];
  }
  return os.str();
}

HomologyClass make_class(const std::vector<long long>& free) {
  HomologyClass c;
  for (long long v : free) c.free.emplace_back(v);
  return c;
}

HomologyClass operator+(const HomologyClass& a, const HomologyClass& b) {
  if (a.free.size() != b.free.size() || a.moduli != b.moduli) {
    throw InputError("adding classes from different groups");
  }
  HomologyClass out = a;
  for (std::size_t i = 0; i < a.free.size(); ++i) out.free[i] += b.free[i];
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    out.torsion[i] = floor_mod(a.torsion[i] + b.torsion[i], a.moduli[i]);
  }
  return out;
}

HomologyClass operator-(const HomologyClass& a) {
  HomologyClass out = a;
  for (auto& v : out.free) v = -v;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    out.torsion[i] = floor_mod(-a.torsion[i], a.moduli[i]);
  }
  return out;
}

HomologyClass scale(const HomologyClass& a, const Integer& k) {
  HomologyClass out = a;
  for (auto& v : out.free) v *= k;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    out.torsion[i] = floor_mod(a.torsion[i] * k, a.moduli[i]);
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<Index> parent;
  explicit DisjointSets(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

void axpy(SparseRow& acc, const Integer& factor, const SparseRow& row) {
  for (const auto& [k, v] : row) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == k; });
    if (it == acc.end()) {
      acc.emplace_back(k, factor * v);
    } else {
      it->second += factor * v;
    }
  }
  acc.erase(std::remove_if(acc.begin(), acc.end(), [](const auto& e) { return e.second == 0; }),
            acc.end());
}

}  // namespace

H1Classifier::H1Classifier(const ChainComplex& c,
                           const std::vector<std::vector<long long>>& generators)
    : complex_(&c) {
  if (c.top_dimension() < 1) throw InputError("complex has no edges");
  vertex_count_ = c.count(0);
  edge_boundary_ = c.boundary[1];
  const Index edges = c.count(1);

  // Spanning forest in edge order.
  DisjointSets sets(vertex_count_);
  std::vector<std::size_t> row_of(edges, static_cast<std::size_t>(-1));
  std::vector<Index> nontree;
  for (Index e = 0; e < edges; ++e) {
    const auto& col = edge_boundary_[e];
    bool tree = false;
    if (col.size() == 2) tree = sets.unite(col[0].first, col[1].first);
    if (!tree) {
      row_of[e] = nontree.size();
      nontree.push_back(e);
    }
  }

  const Index faces = c.count(2);
  detail::SparseEliminator elim(nontree.size(), faces);
  for (Index f = 0; f < faces; ++f) {
    for (const auto& [e, v] : c.boundary[2][f]) {
      if (row_of[e] != static_cast<std::size_t>(-1)) elim.add(row_of[e], f, Integer(v));
    }
  }
  std::vector<detail::SparseEliminator::Step> steps;
  elim.eliminate_units(&steps);

  const std::vector<std::size_t> alive = elim.alive_rows();
  const IntMatrix rest = elim.block(alive, elim.nonempty_columns());
  const SmithForm snf = smith_normal_form(rest);

  // Raw coordinates: torsion rows (d > 1) first, then free rows.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) > 1) {
      kept.push_back(i);
      moduli_.push_back(snf.D(i, i));
    }
  }
  for (std::size_t i = snf.rank; i < alive.size(); ++i) kept.push_back(i);
  rank_ = alive.size() - snf.rank;
  width_ = kept.size();

  std::vector<SparseRow> row_functional(nontree.size());
  for (std::size_t j = 0; j < alive.size(); ++j) {
    SparseRow row;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (snf.U(kept[k], j) != 0) row.emplace_back(k, snf.U(kept[k], j));
    }
    row_functional[alive[j]] = std::move(row);
  }
  // The pivot relation  eps * x_r + sum_{e != r} a_e x_e = 0  in the cokernel
  // determines x_r from rows that were still alive when it was taken.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    SparseRow acc;
    for (const auto& [r, v] : it->column) {
      if (r == it->row) continue;
      axpy(acc, Integer(-it->sign) * v, row_functional[r]);
    }
    row_functional[it->row] = std::move(acc);
  }

  functional_.resize(edges);
  for (Index e = 0; e < edges; ++e) {
    if (row_of[e] != static_cast<std::size_t>(-1)) functional_[e] = row_functional[row_of[e]];
  }

  const std::size_t torsion_count = moduli_.size();
  if (generators.empty()) {
    free_change_ = IntMatrix::identity(rank_);
    return;
  }
  if (generators.size() != rank_) {
    throw InternalError("published generators do not match the rank of H_1");
  }
  IntMatrix basis(rank_, rank_);
  free_change_ = IntMatrix::identity(rank_);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    std::vector<std::pair<Index, long long>> sparse;
    for (Index e = 0; e < generators[g].size(); ++e) {
      if (generators[g][e] != 0) sparse.emplace_back(e, generators[g][e]);
    }
    HomologyClass raw = classify_sparse(sparse, true);
    for (std::size_t i = 0; i < rank_; ++i) basis(i, g) = raw.free[i];
  }
  (void)torsion_count;
  free_change_ = unimodular_inverse(basis);
}

std::vector<Index> H1Classifier::boundary_defects(
    const std::vector<std::pair<Index, long long>>& chain) const {
  std::vector<long long> acc(vertex_count_, 0);
  for (const auto& [e, v] : chain) {
    if (e >= edge_boundary_.size()) throw InputError("edge id out of range");
    for (const auto& [vert, s] : edge_boundary_[e]) acc[vert] += s * v;
  }
  std::vector<Index> bad;
  for (Index i = 0; i < acc.size(); ++i) {
    if (acc[i] != 0) bad.push_back(i);
  }
  return bad;
}

HomologyClass H1Classifier::classify_sparse(const std::vector<std::pair<Index, long long>>& chain,
                                            bool checked) const {
  if (checked) {
    const std::vector<Index> bad = boundary_defects(chain);
    if (!bad.empty()) {
      std::ostringstream os;
      os << "chain has boundary at vertices";
      for (std::size_t i = 0; i < bad.size() && i < 16; ++i) os << " " << bad[i];
      if (bad.size() > 16) os << " ...";
      throw BoundaryError(os.str());
    }
  }
  std::vector<Integer> raw(width_);
  for (const auto& [e, v] : chain) {
    if (v == 0) continue;
    for (const auto& [k, f] : functional_[e]) raw[k] += f * v;
  }
  return finish(raw);
}

HomologyClass H1Classifier::classify(const std::vector<long long>& chain) const {
  if (chain.size() != edge_boundary_.size()) {
    throw InputError("chain length does not match the number of edges");
  }
  std::vector<std::pair<Index, long long>> sparse;
  for (Index e = 0; e < chain.size(); ++e) {
    if (chain[e] != 0) sparse.emplace_back(e, chain[e]);
  }
  return classify_sparse(sparse, true);
}

HomologyClass H1Classifier::finish(const std::vector<Integer>& raw) const {
  HomologyClass out;
  out.moduli = moduli_;
  const std::size_t t = moduli_.size();
  for (std::size_t i = 0; i < t; ++i) out.torsion.push_back(floor_mod(raw[i], moduli_[i]));
  std::vector<Integer> free(raw.begin() + static_cast<std::ptrdiff_t>(t), raw.end());
  out.free = free_change_.rows() == rank_ && rank_ > 0 ? free_change_.multiply(free) : free;
  return out;
}

HomologyClass cycle_class(const std::vector<long long>& chain, const LatticeManifold& m) {
  return m.classifier().classify(chain);
}

namespace {

void require_closed_surface(const Torus& t, const std::vector<long long>& surface) {
  if (surface.size() != t.plaquette_count()) {
    throw InputError("surface length does not match the number of plaquettes");
  }
  std::vector<long long> acc(t.edge_count(), 0);
  for (Index p = 0; p < surface.size(); ++p) {
    if (surface[p] == 0) continue;
    for (const auto& [e, s] : t.plaquette_boundary(p)) acc[e] += s * surface[p];
  }
  for (Index e = 0; e < acc.size(); ++e) {
    if (acc[e] != 0) {
      throw InputError("surface is not closed (boundary at edge " + std::to_string(e) + ")");
    }
  }
}

}  // namespace

long long intersection_number_dual(const Torus& t, const std::vector<long long>& dual_cycle,
                                   const std::vector<long long>& surface) {
  if (dual_cycle.size() != t.plaquette_count()) {
    throw InputError("dual cycle length does not match the number of plaquettes");
  }
  require_closed_surface(t, surface);
  long long total = 0;
  for (Index p = 0; p < surface.size(); ++p) total += dual_cycle[p] * surface[p];
  return total;
}

long long intersection_number_primal(const Torus& t, const std::vector<long long>& cycle,
                                     const std::vector<long long>& surface) {
  if (cycle.size() != t.edge_count()) {
    throw InputError("cycle length does not match the number of edges");
  }
  require_closed_surface(t, surface);
  std::vector<char> on_surface(t.vertex_count(), 0);
  for (Index p = 0; p < surface.size(); ++p) {
    if (surface[p] == 0) continue;
    for (const auto& [e, s] : t.plaquette_boundary(p)) {
      on_surface[t.edge_tail(e)] = 1;
      on_surface[t.edge_head(e)] = 1;
    }
  }
  for (Index e = 0; e < cycle.size(); ++e) {
    if (cycle[e] == 0) continue;
    for (Index v : {t.edge_tail(e), t.edge_head(e)}) {
      if (on_surface[v]) {
        const Coord c = t.coords(v);
        throw NonTransverseError("cycle and surface share lattice point (" +
                                 std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                 std::to_string(c[2]) +
                                 "); shift one of them by half a lattice step (use the dual "
                                 "cycle)");
      }
    }
  }
  return 0;
}

HomologyClass poincare_dual(const std::vector<long long>& flux, const LatticeManifold& m) {
  if (m.family() != Family::Torus3) {
    throw CapabilityError("Poincare duality is implemented for the 3-torus only");
  }
  if (flux.size() != 3) throw InputError("flux vector must have 3 components");
  // The dual circle along e_i crosses T_i (normal e_i) once positively and
  // misses the other two coordinate tori, so the dual bases align.
  return make_class(flux);
}

std::vector<long long> coordinate_torus(const Torus& t, int direction, int level) {
  std::vector<long long> s(t.plaquette_count(), 0);
  const int a = (direction + 1) % 3;
  const int b = (direction + 2) % 3;
  for (int i = 0; i < t.dim(a); ++i) {
    for (int j = 0; j < t.dim(b); ++j) {
      Coord c{};
      c[direction] = level;
      c[a] = i;
      c[b] = j;
      s[Torus::plaquette(t.vertex(c), direction)] += 1;
    }
  }
  return s;
}

std::vector<long long> coordinate_circle(const Torus& t, int direction, Coord start) {
  std::vector<long long> z(t.edge_count(), 0);
  Coord c = start;
  for (int i = 0; i < t.dim(direction); ++i) {
    z[Torus::edge(t.vertex(c), direction)] += 1;
    c[direction] += 1;
  }
  return z;
}

}  // namespace zloch
