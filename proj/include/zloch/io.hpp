#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "zloch/bundle.hpp"
#include "zloch/flows.hpp"
#include "zloch/spinor.hpp"
#include "zloch/zerolocus.hpp"

// JSON formats. Arrays indexed by lattice cells use the vertex order
// x + N1 (y + N2 z). Every reader raises InputError naming the offending
// field and, where there is one, the lattice cell.
namespace zloch::io {

using Json = nlohmann::ordered_json;

Json read_json(const std::string& path);
// "-" writes to standard output.
void write_json(const std::string& path, const Json& j);

// {"dims":[N1,N2,N3],"link_phases":{"x":[...],"y":[...],"z":[...]}}
Json bundle_to_json(const U1Bundle& b);
U1Bundle bundle_from_json(const Json& j);

// {"dims":[...],"values":[[re,im],...],"charge":q}; charge defaults to 1.
Json section_to_json(const SampledSection& s);
SampledSection section_from_json(const Json& j);

// {"dims":[...],"dual_edges":[{"plaquette_id":p,"coeff":c},...]}
Json chain_to_json(const WeightedChain1& chain);
WeightedChain1 chain_from_json(const Json& j);

// {"vertices":[ids],"edges":[{"id","tail","head","polyline":[[x,y,z],...]}]}
Json graph_to_json(const Graph& g);
std::shared_ptr<const Graph> graph_from_json(const Json& j);

// {"theta":{edge-id:int}}
Json flow_to_json(const Flow& f);
Flow flow_from_json(const Json& j, std::shared_ptr<const Graph> g);

// {"surface_dims":[P,Q],"shape":[n,k],"frames":[[[re,im],...],...]}, one
// column-major list of n k entries per vertex, vertex (p, q) at p + P q.
Json frames_to_json(const std::vector<GrassFrame>& frames, int p_dim, int q_dim);
struct FrameField {
  int p_dim = 0;
  int q_dim = 0;
  std::vector<GrassFrame> frames;
};
FrameField frames_from_json(const Json& j);

Json coord_json(const Coord& c);

}  // namespace zloch::io
