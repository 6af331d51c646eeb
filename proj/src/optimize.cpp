#include "zloch/optimize.hpp"

#include <sstream>

#include "zloch/detail/fraction.hpp"
#include "zloch/detail/simplex.hpp"
#include "zloch/error.hpp"

namespace zloch {

namespace {

using detail::Fraction;
using detail::FractionOverflow;
using detail::LinearProgram;
using detail::LpStatus;

constexpr Index kMaxVertices = 512;

Fraction to_fraction(const Rational& r) {
  const Integer& n = boost::multiprecision::numerator(r);
  const Integer& d = boost::multiprecision::denominator(r);
  const Integer limit = Integer(INT64_MAX);
  if (abs(n) > limit || d > limit) throw FractionOverflow();
  return Fraction(static_cast<__int128>(n.convert_to<long long>()),
                  static_cast<__int128>(d.convert_to<long long>()));
}

Rational to_rational(const Fraction& f) { return Rational(Integer(f.num()), Integer(f.den())); }
Rational to_rational(const Rational& r) { return r; }

template <class T>
T from_rational(const Rational& r);
template <>
Fraction from_rational<Fraction>(const Rational& r) { return to_fraction(r); }
template <>
Rational from_rational<Rational>(const Rational& r) { return r; }

template <class T>
bool is_integral(const T& x);
template <>
bool is_integral<Fraction>(const Fraction& x) { return x.den() == 1; }
template <>
bool is_integral<Rational>(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

template <class T>
long long floor_of(const T& x);
template <>
long long floor_of<Fraction>(const Fraction& x) {
  long long q = x.num() / x.den();
  if (x.num() % x.den() != 0 && x.num() < 0) --q;
  return q;
}
template <>
long long floor_of<Rational>(const Rational& x) {
  const Integer n = boost::multiprecision::numerator(x);
  const Integer d = boost::multiprecision::denominator(x);
  Integer q = n / d;
  if (q * d != n && n < 0) --q;
  return q.convert_to<long long>();
}

struct BoundSpec {
  std::size_t var;
  bool upper;  // x <= value, else x >= value
  long long value;
};

template <class T>
ShortestFlow solve_program(const Torus& t, const std::vector<Rational>& lengths,
                           const std::vector<long long>& target, long long node_limit) {
  const std::size_t edges = t.edge_count();
  LinearProgram<T> base;
  base.variables = 2 * edges;
  base.cost.resize(2 * edges);
  for (std::size_t e = 0; e < edges; ++e) {
    base.cost[e] = base.cost[edges + e] = from_rational<T>(lengths[e]);
  }
  // Conservation at every vertex but the last (their sum is implied).
  std::vector<std::vector<std::pair<std::size_t, T>>> rows(t.vertex_count() - 1);
  for (std::size_t e = 0; e < edges; ++e) {
    const Index head = t.edge_head(e), tail = t.edge_tail(e);
    if (head == tail) continue;
    if (head < rows.size()) {
      rows[head].emplace_back(e, T(1));
      rows[head].emplace_back(edges + e, T(-1));
    }
    if (tail < rows.size()) {
      rows[tail].emplace_back(e, T(-1));
      rows[tail].emplace_back(edges + e, T(1));
    }
  }
  base.rows = std::move(rows);
  base.rhs.assign(base.rows.size(), T(0));
  // Net crossing of the seam between the last layer and layer 0.
  for (int d = 0; d < 3; ++d) {
    std::vector<std::pair<std::size_t, T>> row;
    for (Index v = 0; v < t.vertex_count(); ++v) {
      if (t.coords(v)[d] != t.dim(d) - 1) continue;
      const std::size_t e = Torus::edge(v, d);
      row.emplace_back(e, T(1));
      row.emplace_back(edges + e, T(-1));
    }
    base.rows.push_back(std::move(row));
    base.rhs.push_back(T(target[d]));
  }

  ShortestFlow best;
  bool have = false;
  T best_value{};
  std::vector<std::vector<BoundSpec>> stack{{}};
  long long nodes = 0;
  long long pivots = 0;
  bool truncated = false;
  while (!stack.empty()) {
    if (nodes >= node_limit) {
      truncated = true;
      break;
    }
    const std::vector<BoundSpec> bounds = std::move(stack.back());
    stack.pop_back();
    ++nodes;
    LinearProgram<T> lp = base;
    for (const auto& b : bounds) {
      const std::size_t slack = lp.variables++;
      lp.cost.push_back(T(0));
      lp.rows.push_back({{b.var, T(1)}, {slack, T(b.upper ? 1 : -1)}});
      lp.rhs.push_back(T(b.value));
    }
    const auto sol = detail::solve_lp(lp);
    pivots += sol.pivots;
    if (sol.status != LpStatus::Optimal) continue;
    if (have && !(sol.value < best_value)) continue;
    std::size_t frac = base.variables;
    for (std::size_t j = 0; j < base.variables; ++j) {
      if (!is_integral(sol.x[j])) {
        frac = j;
        break;
      }
    }
    if (frac == base.variables) {
      have = true;
      best_value = sol.value;
      best.witness.assign(edges, 0);
      for (std::size_t e = 0; e < edges; ++e) {
        best.witness[e] = floor_of(sol.x[e]) - floor_of(sol.x[edges + e]);
      }
      continue;
    }
    const long long f = floor_of(sol.x[frac]);
    auto up = bounds;
    up.push_back({frac, false, f + 1});
    auto down = bounds;
    down.push_back({frac, true, f});
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }
  if (!have) {
    throw InternalError("bound exceeded: no integral witness within " + std::to_string(node_limit) +
                        " branch-and-bound nodes");
  }
  best.length = to_rational(best_value);
  best.optimal = !truncated;
  best.nodes = nodes;
  best.pivots = pivots;
  return best;
}

}  // namespace

ShortestFlow shortest_flow(const FlowProgram& program) {
  const Torus& t = program.manifold.lattice();
  if (t.vertex_count() > kMaxVertices) {
    throw CapabilityError("shortest_flow is limited to lattices with at most 512 vertices, got " +
                          std::to_string(t.vertex_count()));
  }
  if (program.target.size() != 3) throw InputError("class must have 3 coordinates on T^3");
  std::vector<Rational> lengths = program.lengths;
  if (lengths.empty()) lengths.assign(t.edge_count(), Rational(1));
  if (lengths.size() != t.edge_count()) throw InputError("need one length per lattice edge");
  for (const auto& l : lengths) {
    if (!(l > 0)) throw InputError("edge lengths must be positive");
  }
  if (program.node_limit < 1) throw InputError("node limit must be positive");
  try {
    return solve_program<Fraction>(t, lengths, program.target, program.node_limit);
  } catch (const FractionOverflow&) {
    return solve_program<Rational>(t, lengths, program.target, program.node_limit);
  }
}

long long coordinate_circle_length(const std::vector<long long>& a, const Torus& t) {
  long long total = 0;
  for (int d = 0; d < 3; ++d) total += static_cast<long long>(t.dim(d)) * std::llabs(a[d]);
  return total;
}

Rational hausdorff_lower_bound(const std::vector<long long>& a, const LatticeManifold& m,
                               const Rational& spacing) {
  if (!(spacing > 0)) throw InputError("lattice spacing must be positive");
  FlowProgram p;
  p.manifold = m;
  p.target = a;
  const ShortestFlow s = shortest_flow(p);
  if (!s.optimal) throw InternalError("bound exceeded while computing the lower bound");
  return s.length * spacing;
}

WeightedChain1 witness_as_dual_chain(const Torus& t, const std::vector<long long>& witness) {
  if (witness.size() != t.edge_count()) throw InputError("witness needs one entry per edge");
  WeightedChain1 out{t, std::vector<long long>(t.plaquette_count(), 0)};
  for (Index e = 0; e < witness.size(); ++e) {
    if (witness[e] == 0) continue;
    const int d = Torus::direction(e);
    out.coeff[Torus::plaquette(t.shift(Torus::base(e), d, 1), d)] = witness[e];
  }
  return out;
}

}  // namespace zloch
