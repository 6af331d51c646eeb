#include "zloch/manifold.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "zloch/error.hpp"
#include "zloch/homology.hpp"

namespace zloch {

struct ClassifierCache {
  std::once_flag once;
  std::shared_ptr<const H1Classifier> value;
  std::shared_ptr<const ChainComplex> complex;
};

namespace {

// Instances with equal parameters share their complex and classifier.
std::shared_ptr<ClassifierCache> shared_cache(Family family, Coord key) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<ClassifierCache>> caches;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = caches[{static_cast<int>(family), key[0], key[1], key[2]}];
  if (!slot) slot = std::make_shared<ClassifierCache>();
  return slot;
}

}  // namespace

LatticeManifold LatticeManifold::torus(Coord dims) {
  LatticeManifold m;
  m.family_ = Family::Torus3;
  m.torus_ = Torus(dims);
  m.cache_ = shared_cache(Family::Torus3, dims);
  {
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (!m.cache_->complex) {
      m.cache_->complex = std::make_shared<const ChainComplex>(torus_complex(m.torus_));
    }
  }
  m.complex_ = m.cache_->complex;
  for (int d = 0; d < 3; ++d) {
    m.generators_.push_back(coordinate_circle(m.torus_, d, {0, 0, 0}));
    m.names_.push_back("c" + std::to_string(d + 1));
  }
  return m;
}

LatticeManifold LatticeManifold::surface_times_circle(int genus, int n) {
  if (genus < 1) throw InputError("surface genus must be at least 1");
  if (n < 1) throw InputError("circle length must be positive");
  LatticeManifold m;
  m.family_ = Family::SurfaceTimesCircle;
  m.genus_ = genus;
  m.circle_ = n;
  m.cache_ = shared_cache(Family::SurfaceTimesCircle, {genus, n, 0});
  {
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (!m.cache_->complex) {
      m.cache_->complex = std::make_shared<const ChainComplex>(
          product_with_circle(surface_complex(genus), static_cast<Index>(n)));
    }
  }
  m.complex_ = m.cache_->complex;
  const ChainComplex base = surface_complex(genus);
  const Index edges = m.complex_->count(1);
  for (int j = 0; j < 2 * genus; ++j) {
    std::vector<long long> chain(edges, 0);
    chain[product_cell_id(base, static_cast<Index>(n), 1, static_cast<Index>(j), 0, 0)] = 1;
    m.generators_.push_back(chain);
    m.names_.push_back((j % 2 == 0 ? "a" : "b") + std::to_string(j / 2 + 1));
  }
  std::vector<long long> vertical(edges, 0);
  for (Index t = 0; t < static_cast<Index>(n); ++t) {
    vertical[product_cell_id(base, static_cast<Index>(n), 0, 0, 1, t)] = 1;
  }
  m.generators_.push_back(vertical);
  m.names_.push_back("s");
  return m;
}

std::string LatticeManifold::family_name() const {
  return family_ == Family::Torus3 ? "T3" : "SigmaxS1";
}

const Torus& LatticeManifold::lattice() const {
  if (family_ != Family::Torus3) {
    throw CapabilityError("operation requires the cubical 3-torus");
  }
  return torus_;
}

int LatticeManifold::polyline_dimension() const {
  return family_ == Family::Torus3 ? 3 : 2 * genus_ + 1;
}

std::vector<long long> LatticeManifold::reduce_point(const std::vector<long long>& at) const {
  if (static_cast<int>(at.size()) != polyline_dimension()) {
    throw EmbeddingError("point has " + std::to_string(at.size()) + " coordinates, expected " +
                         std::to_string(polyline_dimension()));
  }
  std::vector<long long> out(at.size(), 0);
  auto mod = [](long long v, long long n) {
    long long r = v % n;
    return r < 0 ? r + n : r;
  };
  if (family_ == Family::Torus3) {
    for (int d = 0; d < 3; ++d) out[d] = mod(at[d], torus_.dim(d));
  } else {
    out.back() = mod(at.back(), circle_);
  }
  return out;
}

std::pair<Index, int> LatticeManifold::step_edge(const std::vector<long long>& at, int axis,
                                                 int sign) const {
  const std::vector<long long> p = reduce_point(at);
  if (family_ == Family::Torus3) {
    Coord c{static_cast<int>(p[0]), static_cast<int>(p[1]), static_cast<int>(p[2])};
    if (sign > 0) return {Torus::edge(torus_.vertex(c), axis), 1};
    c[axis] -= 1;
    return {Torus::edge(torus_.vertex(c), axis), -1};
  }
  const ChainComplex base = surface_complex(genus_);
  const Index n = static_cast<Index>(circle_);
  const Index t = static_cast<Index>(p.back());
  if (axis < 2 * genus_) {
    return {product_cell_id(base, n, 1, static_cast<Index>(axis), 0, t), sign > 0 ? 1 : -1};
  }
  if (sign > 0) return {product_cell_id(base, n, 0, 0, 1, t), 1};
  return {product_cell_id(base, n, 0, 0, 1, (t + n - 1) % n), -1};
}

const H1Classifier& LatticeManifold::classifier() const {
  std::call_once(cache_->once, [this] {
    cache_->value = std::make_shared<const H1Classifier>(*complex_, generators_);
  });
  return *cache_->value;
}

bool LatticeManifold::operator==(const LatticeManifold& other) const {
  return family_ == other.family_ && torus_ == other.torus_ && genus_ == other.genus_ &&
         circle_ == other.circle_;
}

}  // namespace zloch
