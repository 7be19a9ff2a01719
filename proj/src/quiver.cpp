#include "arq/quiver.hpp"

#include <algorithm>
#include <array>

namespace arq {

Quiver::Quiver(std::string name, std::vector<std::string> vertices,
               std::vector<std::array<std::string, 3>> arrows)
    : name_(std::move(name)), vertices_(std::move(vertices)) {
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (!vindex_.emplace(vertices_[i], (int)i).second)
      throw UsageError("duplicate vertex id '" + vertices_[i] + "'");
  }
  for (auto& [id, s, t] : arrows) {
    int si = vertex_index(s), ti = vertex_index(t);
    if (si < 0) throw UsageError("unknown vertex '" + s + "' in arrow '" + id + "'");
    if (ti < 0) throw UsageError("unknown vertex '" + t + "' in arrow '" + id + "'");
    if (!aindex_.emplace(id, (int)arrows_.size()).second)
      throw UsageError("duplicate arrow id '" + id + "'");
    arrows_.push_back(Arrow{id, si, ti});
  }
  compute_topology();
}

int Quiver::vertex_index(const std::string& id) const {
  auto it = vindex_.find(id);
  return it == vindex_.end() ? -1 : it->second;
}

int Quiver::arrow_index(const std::string& id) const {
  auto it = aindex_.find(id);
  return it == aindex_.end() ? -1 : it->second;
}

void Quiver::compute_topology() {
  int n = num_vertices();
  std::vector<int> indeg(n, 0);
  for (auto& a : arrows_) ++indeg[a.tgt];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  // Process smallest available vertex first so the order is deterministic.
  std::vector<int> order;
  std::vector<int> deg = indeg;
  std::vector<char> used(n, 0);
  while (true) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!used[v] && deg[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) break;
    used[pick] = 1;
    order.push_back(pick);
    for (auto& a : arrows_)
      if (a.src == pick) --deg[a.tgt];
  }
  acyclic_ = ((int)order.size() == n);
  if (!acyclic_) {
    topo_order_.clear();
    return;
  }
  topo_order_ = order;

  // Path table, filled in reverse topological order:
  // paths(x, y) = { e_x if x == y } + { a . tail : a leaves x, tail from tgt(a) to y }.
  path_table_.assign(n, std::vector<std::vector<Path>>(n));
  for (int idx = n - 1; idx >= 0; --idx) {
    int x = topo_order_[idx];
    path_table_[x][x].push_back({});
    for (int ai = 0; ai < num_arrows(); ++ai) {
      const Arrow& a = arrows_[ai];
      if (a.src != x) continue;
      for (int y = 0; y < n; ++y)
        for (const Path& tail : path_table_[a.tgt][y]) {
          Path p;
          p.reserve(tail.size() + 1);
          p.push_back(ai);
          p.insert(p.end(), tail.begin(), tail.end());
          path_table_[x][y].push_back(std::move(p));
        }
    }
  }
  auto path_order = [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      std::sort(path_table_[x][y].begin(), path_table_[x][y].end(), path_order);
}

const std::vector<Path>& Quiver::paths(int x, int y) const {
  if (!acyclic_) throw UsageError("path enumeration requires an acyclic quiver");
  if (x < 0 || y < 0 || x >= num_vertices() || y >= num_vertices())
    throw UsageError("paths: vertex out of range");
  return path_table_[x][y];
}

bool Quiver::same_structure(const Quiver& o) const {
  if (this == &o) return true;
  if (vertices_ != o.vertices_) return false;
  if (arrows_.size() != o.arrows_.size()) return false;
  for (size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].id != o.arrows_[i].id || arrows_[i].src != o.arrows_[i].src ||
        arrows_[i].tgt != o.arrows_[i].tgt)
      return false;
  }
  return true;
}

std::vector<int> Quiver::incoming(int v) const {
  std::vector<int> r;
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows_[i].tgt == v) r.push_back(i);
  return r;
}

std::vector<int> Quiver::outgoing(int v) const {
  std::vector<int> r;
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows_[i].src == v) r.push_back(i);
  return r;
}

Quiver reversed(const Quiver& q, const std::string& name) {
  std::vector<std::array<std::string, 3>> arrows;
  for (auto& a : q.arrows())
    arrows.push_back({a.id, q.vertex_name(a.tgt), q.vertex_name(a.src)});
  return Quiver(name, q.vertices(), arrows);
}

RayQuiver::RayQuiver(std::string name, Quiver core,
                     std::vector<std::pair<std::string, std::string>> rays)
    : name_(std::move(name)), core_(std::move(core)) {
  if (!core_.acyclic()) throw UsageError("ray quiver core must be acyclic");
  for (auto& [id, attach] : rays) {
    int av = core_.vertex_index(attach);
    if (av < 0)
      throw UsageError("ray '" + id + "' attaches to unknown vertex '" + attach + "'");
    for (auto& r : rays_)
      if (r.id == id) throw UsageError("duplicate ray id '" + id + "'");
    // Generated names are "<ray>.<k>" / "<ray>.a<k>"; reject core ids that
    // could collide at any truncation depth.
    std::string prefix = id + ".";
    for (auto& v : core_.vertices())
      if (v.rfind(prefix, 0) == 0)
        throw UsageError("core vertex '" + v + "' collides with ray '" + id + "'");
    for (auto& a : core_.arrows())
      if (a.id.rfind(prefix, 0) == 0)
        throw UsageError("core arrow '" + a.id + "' collides with ray '" + id + "'");
    rays_.push_back(Ray{id, av});
  }
}

int RayQuiver::ray_index(const std::string& id) const {
  for (size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].id == id) return (int)i;
  return -1;
}

std::string RayQuiver::ray_vertex_name(const std::string& ray, int level) {
  return ray + "." + std::to_string(level);
}

std::string RayQuiver::ray_arrow_name(const std::string& ray, int level) {
  return ray + ".a" + std::to_string(level);
}

namespace {
// Positive integer with no leading junk; rejects empty and leading zeros
// beyond a single digit to keep names canonical.
bool parse_level(const std::string& s, int& out) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  long long v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + (ch - '0');
    if (v > 1000000) return false;
  }
  if (v < 1) return false;
  out = (int)v;
  return true;
}
}  // namespace

bool RayQuiver::resolve_vertex(const std::string& name, int& core_vertex,
                               int& ray, int& level) const {
  core_vertex = core_.vertex_index(name);
  ray = -1;
  level = 0;
  if (core_vertex >= 0) return true;
  auto dot = name.rfind('.');
  if (dot == std::string::npos) return false;
  ray = ray_index(name.substr(0, dot));
  if (ray < 0) return false;
  return parse_level(name.substr(dot + 1), level);
}

bool RayQuiver::resolve_arrow(const std::string& name, int& core_arrow,
                              int& ray, int& level) const {
  core_arrow = core_.arrow_index(name);
  ray = -1;
  level = 0;
  if (core_arrow >= 0) return true;
  auto dot = name.rfind('.');
  if (dot == std::string::npos) return false;
  ray = ray_index(name.substr(0, dot));
  if (ray < 0) return false;
  const std::string tail = name.substr(dot + 1);
  if (tail.size() < 2 || tail[0] != 'a') return false;
  return parse_level(tail.substr(1), level);
}

bool RayQuiver::arrow_endpoints(const std::string& name, std::string& src,
                                std::string& tgt) const {
  int core_arrow, ray, level;
  if (!resolve_arrow(name, core_arrow, ray, level)) return false;
  if (core_arrow >= 0) {
    const Arrow& a = core_.arrow(core_arrow);
    src = core_.vertex_name(a.src);
    tgt = core_.vertex_name(a.tgt);
    return true;
  }
  src = ray_vertex_name(rays_[ray].id, level);
  tgt = level == 1 ? core_.vertex_name(rays_[ray].attach)
                   : ray_vertex_name(rays_[ray].id, level - 1);
  return true;
}

bool Truncation::is_boundary(int v) const {
  for (int b : boundary)
    if (b == v) return true;
  return false;
}

Truncation truncate(const RayQuiver& rq, int depth) {
  if (depth < 1) throw UsageError("truncation depth must be at least 1");
  std::vector<std::string> vertices = rq.core().vertices();
  std::vector<std::array<std::string, 3>> arrows;
  for (auto& a : rq.core().arrows())
    arrows.push_back({a.id, rq.core().vertex_name(a.src), rq.core().vertex_name(a.tgt)});
  for (auto& ray : rq.rays()) {
    for (int k = 1; k <= depth; ++k)
      vertices.push_back(RayQuiver::ray_vertex_name(ray.id, k));
    arrows.push_back({RayQuiver::ray_arrow_name(ray.id, 1),
                      RayQuiver::ray_vertex_name(ray.id, 1),
                      rq.core().vertex_name(ray.attach)});
    for (int k = 2; k <= depth; ++k)
      arrows.push_back({RayQuiver::ray_arrow_name(ray.id, k),
                        RayQuiver::ray_vertex_name(ray.id, k),
                        RayQuiver::ray_vertex_name(ray.id, k - 1)});
  }
  Truncation t;
  t.q = std::make_shared<Quiver>(rq.name() + "@" + std::to_string(depth), vertices, arrows);
  t.depth = depth;
  for (int v = 0; v < rq.core().num_vertices(); ++v) t.core_vertices.push_back(v);
  for (auto& ray : rq.rays()) {
    std::vector<int> levels;
    for (int k = 1; k <= depth; ++k)
      levels.push_back(t.q->vertex_index(RayQuiver::ray_vertex_name(ray.id, k)));
    t.boundary.push_back(levels.back());
    t.ray_vertex.push_back(std::move(levels));
  }
  return t;
}

}  // namespace arq
