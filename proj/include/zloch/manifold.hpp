#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zloch/complex.hpp"
#include "zloch/torus.hpp"

namespace zloch {

class H1Classifier;
struct ClassifierCache;

enum class Family { Torus3, SurfaceTimesCircle };

// Closed cubical/CW model of a flat 3-manifold together with its published
// H_1 generators. Copies share the (lazily built) class machinery.
class LatticeManifold {
 public:
  static LatticeManifold torus(Coord dims);
  // Sigma_g x S^1 with the circle subdivided into n edges.
  static LatticeManifold surface_times_circle(int genus, int n);

  Family family() const { return family_; }
  std::string family_name() const;
  const ChainComplex& complex() const { return *complex_; }
  const Torus& lattice() const;  // CapabilityError unless T^3
  int genus() const { return genus_; }
  int circle_length() const { return circle_; }

  // Coordinates used by polylines: 3 on T^3, 2g + 1 on Sigma_g x S^1 where
  // coordinate j < 2g counts traversals of loop j and the last coordinate is
  // the circle position.
  int polyline_dimension() const;

  // Edge traversed by a unit step from the lattice point `at` along `axis`
  // with direction `sign`; returns (edge id, orientation sign).
  std::pair<Index, int> step_edge(const std::vector<long long>& at, int axis, int sign) const;
  // Reduces a lattice point to its canonical representative (mod periods).
  std::vector<long long> reduce_point(const std::vector<long long>& at) const;

  // Closed 1-chains of the published H_1 basis, in order.
  const std::vector<std::vector<long long>>& h1_generators() const { return generators_; }
  const std::vector<std::string>& generator_names() const { return names_; }

  const H1Classifier& classifier() const;

  bool operator==(const LatticeManifold& other) const;

 private:
  LatticeManifold() = default;

  Family family_ = Family::Torus3;
  Torus torus_;
  int genus_ = 0;
  int circle_ = 0;
  std::shared_ptr<const ChainComplex> complex_;
  std::vector<std::vector<long long>> generators_;
  std::vector<std::string> names_;
  std::shared_ptr<ClassifierCache> cache_;
};

}  // namespace zloch
