#pragma once

#include <array>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "arq/field.hpp"

// Finite quivers, directed path enumeration, and infinite "ray" quivers
// (a finite core with A-infinity tails oriented into the core) together with
// their finite truncations.

namespace arq {

// A path is the sequence of arrow indices in traversal order (first arrow
// traversed first). The trivial path is the empty sequence.
using Path = std::vector<int>;

struct Arrow {
  std::string id;
  int src = -1;
  int tgt = -1;
};

class Quiver {
 public:
  Quiver() = default;
  // Arrows given as (id, source vertex id, target vertex id). Throws
  // UsageError on duplicate or unknown ids.
  Quiver(std::string name, std::vector<std::string> vertices,
         std::vector<std::array<std::string, 3>> arrows);

  const std::string& name() const { return name_; }
  int num_vertices() const { return (int)vertices_.size(); }
  int num_arrows() const { return (int)arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int i) const { return arrows_[i]; }
  const std::string& vertex_name(int i) const { return vertices_[i]; }
  int vertex_index(const std::string& id) const;  // -1 if absent
  int arrow_index(const std::string& id) const;   // -1 if absent
  bool acyclic() const { return acyclic_; }
  // Vertex indices in a topological order (sources first); empty if cyclic.
  const std::vector<int>& topo_order() const { return topo_order_; }

  // All paths from x to y, ordered by length then lexicographically on the
  // arrow index sequence. Requires an acyclic quiver. paths(x,x) is exactly
  // the trivial path.
  const std::vector<Path>& paths(int x, int y) const;
  int num_paths(int x, int y) const { return (int)paths(x, y).size(); }

  bool same_structure(const Quiver& o) const;

  std::vector<int> incoming(int v) const;  // arrow indices with target v
  std::vector<int> outgoing(int v) const;  // arrow indices with source v

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, int> vindex_, aindex_;
  bool acyclic_ = true;
  std::vector<int> topo_order_;
  // path_table_[x][y] filled eagerly at construction for acyclic quivers.
  std::vector<std::vector<std::vector<Path>>> path_table_;

  void compute_topology();
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Quiver with all arrows reversed; arrow and vertex names are preserved.
Quiver reversed(const Quiver& q, const std::string& name);

struct Ray {
  std::string id;
  int attach = -1;  // core vertex the ray feeds into
};

// Finite core plus countable rays. Ray `r` contributes vertices r.1, r.2, ...
// and arrows r.a1: r.1 -> attach, r.aN: r.N -> r.(N-1); every ray arrow
// points toward the core, so projectives stay finite dimensional.
class RayQuiver {
 public:
  RayQuiver() = default;
  RayQuiver(std::string name, Quiver core, std::vector<std::pair<std::string, std::string>> rays);

  const std::string& name() const { return name_; }
  const Quiver& core() const { return core_; }
  const std::vector<Ray>& rays() const { return rays_; }
  int ray_index(const std::string& id) const;

  static std::string ray_vertex_name(const std::string& ray, int level);
  static std::string ray_arrow_name(const std::string& ray, int level);

  // Classify a symbolic vertex name: a core vertex (core_vertex >= 0,
  // ray < 0) or a ray vertex r.level (core_vertex < 0). False when unknown.
  bool resolve_vertex(const std::string& name, int& core_vertex, int& ray,
                      int& level) const;
  // Same for arrow names (core arrow index or ray arrow r.a<level>).
  bool resolve_arrow(const std::string& name, int& core_arrow, int& ray,
                     int& level) const;
  // Endpoints of a symbolic arrow as symbolic vertex names.
  bool arrow_endpoints(const std::string& name, std::string& src,
                       std::string& tgt) const;

 private:
  std::string name_;
  Quiver core_;
  std::vector<Ray> rays_;
};

// Finite window of a ray quiver: the core plus the first `depth` vertices of
// each ray. Vertex and arrow names are stable across depths.
struct Truncation {
  QuiverPtr q;
  int depth = 0;
  std::vector<int> core_vertices;      // indices into q
  std::vector<int> boundary;           // the depth-th vertex of each ray
  // ray_vertex[r][k] = index in q of ray r's vertex at level k+1
  std::vector<std::vector<int>> ray_vertex;

  bool is_boundary(int v) const;
};

Truncation truncate(const RayQuiver& rq, int depth);

}  // namespace arq
