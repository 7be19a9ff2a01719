#include "arq/rep.hpp"

#include <algorithm>
#include <functional>

namespace arq {

Rep::Rep(QuiverPtr q_, u32 p_, std::vector<int> dims_, std::vector<Mat> mats_)
    : q(std::move(q_)), p(p_), dims(std::move(dims_)), mats(std::move(mats_)) {
  if (!q) throw UsageError("representation needs a quiver");
  if (!is_prime(p)) throw UsageError("modulus " + std::to_string(p) + " is not prime");
  if ((int)dims.size() != q->num_vertices())
    throw UsageError("dimension vector length mismatch");
  for (int d : dims)
    if (d < 0) throw UsageError("negative dimension");
  if ((int)mats.size() != q->num_arrows())
    throw UsageError("arrow matrix count mismatch");
  for (int a = 0; a < q->num_arrows(); ++a) {
    const Arrow& ar = q->arrow(a);
    const Mat& m = mats[a];
    if (m.p != p || m.rows != dims[ar.tgt] || m.cols != dims[ar.src])
      throw UsageError("matrix for arrow '" + ar.id + "' has wrong shape");
  }
}

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

bool Rep::same_as(const Rep& o) const {
  if (p != o.p || dims != o.dims) return false;
  if (!q->same_structure(*o.q)) return false;
  for (size_t a = 0; a < mats.size(); ++a)
    if (mats[a] != o.mats[a]) return false;
  return true;
}

Rep zero_rep(QuiverPtr q, u32 p) {
  std::vector<int> dims(q->num_vertices(), 0);
  std::vector<Mat> mats;
  for (int a = 0; a < q->num_arrows(); ++a) mats.emplace_back(p, 0, 0);
  return Rep(std::move(q), p, std::move(dims), std::move(mats));
}

Rep simple_rep(QuiverPtr q, u32 p, int vertex) {
  std::vector<int> dims(q->num_vertices(), 0);
  dims.at(vertex) = 1;
  std::vector<Mat> mats;
  for (int a = 0; a < q->num_arrows(); ++a)
    mats.emplace_back(p, dims[q->arrow(a).tgt], dims[q->arrow(a).src]);
  return Rep(std::move(q), p, std::move(dims), std::move(mats));
}

Mat path_matrix(const Rep& m, int src_vertex, const Path& path) {
  Mat acc = Mat::identity(m.p, m.dims[src_vertex]);
  for (int a : path) acc = m.mats[a] * acc;
  return acc;
}

RepMorphism::RepMorphism(Rep src, Rep dst, std::vector<Mat> comps)
    : src_(std::make_shared<Rep>(std::move(src))),
      dst_(std::make_shared<Rep>(std::move(dst))),
      comps_(std::move(comps)) {
  const Rep& s = *src_;
  const Rep& d = *dst_;
  if (s.p != d.p) throw UsageError("morphism between different primes");
  if (!s.q->same_structure(*d.q))
    throw UsageError("morphism between different quivers");
  if ((int)comps_.size() != s.q->num_vertices())
    throw UsageError("morphism component count mismatch");
  for (int v = 0; v < s.q->num_vertices(); ++v) {
    const Mat& c = comps_[v];
    if (c.p != s.p || c.rows != d.dims[v] || c.cols != s.dims[v])
      throw UsageError("morphism component at vertex '" + s.q->vertex_name(v) +
                       "' has wrong shape");
  }
  for (int a = 0; a < s.q->num_arrows(); ++a) {
    const Arrow& ar = s.q->arrow(a);
    if (d.mats[a] * comps_[ar.src] != comps_[ar.tgt] * s.mats[a])
      throw UsageError("commuting square fails at arrow '" + ar.id + "'");
  }
}

bool RepMorphism::is_zero() const {
  for (auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool RepMorphism::is_iso() const {
  for (auto& c : comps_)
    if (!invertible(c)) return false;
  return true;
}

bool RepMorphism::is_mono() const {
  for (auto& c : comps_)
    if (rank(c) != c.cols) return false;
  return true;
}

bool RepMorphism::is_epi() const {
  for (auto& c : comps_)
    if (rank(c) != c.rows) return false;
  return true;
}

Mat RepMorphism::flatten() const {
  int n = 0;
  for (auto& c : comps_) n += c.rows * c.cols;
  Mat f(src().p, n, 1);
  int off = 0;
  for (auto& c : comps_)
    for (u32 v : c.e) f.at(off++, 0) = v;
  return f;
}

RepMorphism RepMorphism::inverse() const {
  if (!is_iso()) throw UsageError("inverse of a non-isomorphism");
  std::vector<Mat> inv;
  for (auto& c : comps_) inv.push_back(arq::inverse(c));
  return RepMorphism(dst(), src(), std::move(inv));
}

static void check_composable(const RepMorphism& g, const RepMorphism& f) {
  if (!g.src().same_as(f.dst()))
    throw UsageError("morphisms are not composable");
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  check_composable(g, f);
  std::vector<Mat> comps;
  for (int v = 0; v < (int)f.comps().size(); ++v)
    comps.push_back(g.comp(v) * f.comp(v));
  return RepMorphism(f.src(), g.dst(), std::move(comps));
}

static void check_parallel(const RepMorphism& a, const RepMorphism& b) {
  if (!a.src().same_as(b.src()) || !a.dst().same_as(b.dst()))
    throw UsageError("morphisms are not parallel");
}

RepMorphism add(const RepMorphism& a, const RepMorphism& b) {
  check_parallel(a, b);
  std::vector<Mat> comps;
  for (int v = 0; v < (int)a.comps().size(); ++v)
    comps.push_back(a.comp(v) + b.comp(v));
  return RepMorphism(a.src(), a.dst(), std::move(comps));
}

RepMorphism sub(const RepMorphism& a, const RepMorphism& b) {
  check_parallel(a, b);
  std::vector<Mat> comps;
  for (int v = 0; v < (int)a.comps().size(); ++v)
    comps.push_back(a.comp(v) - b.comp(v));
  return RepMorphism(a.src(), a.dst(), std::move(comps));
}

RepMorphism scal(u32 c, const RepMorphism& a) {
  std::vector<Mat> comps;
  for (auto& m : a.comps()) comps.push_back(scal(c, m));
  return RepMorphism(a.src(), a.dst(), std::move(comps));
}

RepMorphism identity_morphism(const Rep& m) {
  std::vector<Mat> comps;
  for (int d : m.dims) comps.push_back(Mat::identity(m.p, d));
  return RepMorphism(m, m, std::move(comps));
}

RepMorphism zero_morphism(const Rep& src, const Rep& dst) {
  std::vector<Mat> comps;
  for (int v = 0; v < (int)src.dims.size(); ++v)
    comps.emplace_back(src.p, dst.dims[v], src.dims[v]);
  return RepMorphism(src, dst, std::move(comps));
}

RepMorphism eval_at(const Poly& f, const RepMorphism& endo) {
  if (!endo.src().same_as(endo.dst()))
    throw UsageError("polynomial evaluation needs an endomorphism");
  RepMorphism acc = zero_morphism(endo.src(), endo.src());
  RepMorphism id = identity_morphism(endo.src());
  for (int i = f.deg(); i >= 0; --i)
    acc = add(compose(acc, endo), scal(f.coeff(i), id));
  return acc;
}

std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n) {
  if (m.p != n.p || !m.q->same_structure(*n.q))
    throw UsageError("hom between incompatible representations");
  const Quiver& q = *m.q;
  const u32 p = m.p;
  // Unknowns: entries of f_v (n.dims[v] x m.dims[v]), vertex-major row-major.
  std::vector<int> offset(q.num_vertices() + 1, 0);
  for (int v = 0; v < q.num_vertices(); ++v)
    offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
  int N = offset[q.num_vertices()];
  int rows = 0;
  for (int a = 0; a < q.num_arrows(); ++a)
    rows += n.dims[q.arrow(a).tgt] * m.dims[q.arrow(a).src];
  Mat A(p, rows, N);
  int r0 = 0;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    int dmx = m.dims[ar.src], dny = n.dims[ar.tgt];
    // Equation (r, c): sum_k N_a[r][k] f_src[k][c] - sum_k f_tgt[r][k] M_a[k][c] = 0.
    for (int r = 0; r < dny; ++r)
      for (int c = 0; c < dmx; ++c) {
        int row = r0 + r * dmx + c;
        for (int k = 0; k < n.dims[ar.src]; ++k)
          A.at(row, offset[ar.src] + k * dmx + c) =
              fp_add(A.at(row, offset[ar.src] + k * dmx + c), n.mats[a].at(r, k), p);
        for (int k = 0; k < m.dims[ar.tgt]; ++k)
          A.at(row, offset[ar.tgt] + r * m.dims[ar.tgt] + k) =
              fp_sub(A.at(row, offset[ar.tgt] + r * m.dims[ar.tgt] + k),
                     m.mats[a].at(k, c), p);
      }
    r0 += dny * dmx;
  }
  Mat K = kernel_basis(A);
  std::vector<RepMorphism> basis;
  for (int j = 0; j < K.cols; ++j) {
    std::vector<Mat> comps;
    for (int v = 0; v < q.num_vertices(); ++v) {
      Mat c(p, n.dims[v], m.dims[v]);
      for (int i = 0; i < c.rows * c.cols; ++i) c.e[i] = K.at(offset[v] + i, j);
      comps.push_back(std::move(c));
    }
    basis.emplace_back(m, n, std::move(comps));
  }
  return basis;
}

int hom_dim(const Rep& m, const Rep& n) { return (int)hom_basis(m, n).size(); }

RepMorphism morphism_from_flat(const Rep& src, const Rep& dst, const Mat& flat) {
  std::vector<Mat> comps;
  int off = 0;
  for (int v = 0; v < (int)src.dims.size(); ++v) {
    Mat c(src.p, dst.dims[v], src.dims[v]);
    for (int i = 0; i < c.rows * c.cols; ++i) c.e[i] = flat.at(off++, 0);
    comps.push_back(std::move(c));
  }
  return RepMorphism(src, dst, std::move(comps));
}

static std::optional<RepMorphism> solve_in_hom(
    const std::vector<RepMorphism>& basis, const Rep& src, const Rep& dst,
    const std::function<RepMorphism(const RepMorphism&)>& transform,
    const Mat& target_flat, u32 p) {
  std::vector<Mat> cols;
  for (auto& b : basis) cols.push_back(transform(b).flatten());
  Mat A = hstack(cols, p, target_flat.rows);
  auto x = solve(A, target_flat);
  if (!x) return std::nullopt;
  RepMorphism w = zero_morphism(src, dst);
  for (size_t k = 0; k < basis.size(); ++k)
    w = add(w, scal(x->at((int)k, 0), basis[k]));
  return w;
}

std::optional<RepMorphism> factor_left(const RepMorphism& through,
                                       const RepMorphism& u) {
  if (!through.src().same_as(u.src()))
    throw UsageError("factor_left: domain mismatch");
  auto basis = hom_basis(through.dst(), u.dst());
  return solve_in_hom(
      basis, through.dst(), u.dst(),
      [&](const RepMorphism& b) { return compose(b, through); }, u.flatten(),
      u.src().p);
}

std::optional<RepMorphism> factor_right(const RepMorphism& through,
                                        const RepMorphism& u) {
  if (!through.dst().same_as(u.dst()))
    throw UsageError("factor_right: codomain mismatch");
  auto basis = hom_basis(u.src(), through.src());
  return solve_in_hom(
      basis, u.src(), through.src(),
      [&](const RepMorphism& b) { return compose(through, b); }, u.flatten(),
      u.src().p);
}

SubRep kernel(const RepMorphism& f) {
  const Rep& m = f.src();
  std::vector<int> dims;
  std::vector<Mat> incl;
  for (int v = 0; v < (int)m.dims.size(); ++v) {
    incl.push_back(kernel_basis(f.comp(v)));
    dims.push_back(incl.back().cols);
  }
  std::vector<Mat> mats;
  for (int a = 0; a < m.q->num_arrows(); ++a) {
    const Arrow& ar = m.q->arrow(a);
    auto k = solve(incl[ar.tgt], m.mats[a] * incl[ar.src]);
    if (!k) throw InternalError("kernel is not arrow-stable");
    mats.push_back(std::move(*k));
  }
  Rep krep(m.q, m.p, std::move(dims), std::move(mats));
  RepMorphism inclm(krep, m, std::move(incl));
  return SubRep{std::move(krep), std::move(inclm)};
}

QuotRep cokernel(const RepMorphism& f) {
  const Rep& n = f.dst();
  std::vector<Quotient> qs;
  std::vector<int> dims;
  std::vector<Mat> proj;
  for (int v = 0; v < (int)n.dims.size(); ++v) {
    qs.push_back(quotient_by_columns(f.comp(v)));
    dims.push_back(qs.back().dim());
    proj.push_back(qs.back().project(Mat::identity(n.p, n.dims[v])));
  }
  std::vector<Mat> mats;
  for (int a = 0; a < n.q->num_arrows(); ++a) {
    const Arrow& ar = n.q->arrow(a);
    mats.push_back(proj[ar.tgt] * n.mats[a] * qs[ar.src].section_basis());
  }
  Rep crep(n.q, n.p, std::move(dims), std::move(mats));
  RepMorphism projm(n, crep, std::move(proj));
  return QuotRep{std::move(crep), std::move(projm), std::move(qs)};
}

ImageRep image(const RepMorphism& f) {
  const Rep& m = f.src();
  const Rep& n = f.dst();
  std::vector<int> dims;
  std::vector<Mat> incl, onto;
  for (int v = 0; v < (int)n.dims.size(); ++v) {
    ColSpace cs = column_space(f.comp(v));
    incl.push_back(cs.basis);
    dims.push_back(cs.dim());
    auto o = solve(cs.basis, f.comp(v));
    if (!o) throw InternalError("image factorization failed");
    onto.push_back(std::move(*o));
  }
  std::vector<Mat> mats;
  for (int a = 0; a < n.q->num_arrows(); ++a) {
    const Arrow& ar = n.q->arrow(a);
    auto k = solve(incl[ar.tgt], n.mats[a] * incl[ar.src]);
    if (!k) throw InternalError("image is not arrow-stable");
    mats.push_back(std::move(*k));
  }
  Rep irep(n.q, n.p, std::move(dims), std::move(mats));
  RepMorphism inclm(irep, n, std::move(incl));
  RepMorphism ontom(m, irep, std::move(onto));
  return ImageRep{std::move(irep), std::move(inclm), std::move(ontom)};
}

Rep direct_sum(const std::vector<Rep>& parts) {
  if (parts.empty()) throw UsageError("direct_sum of nothing");
  QuiverPtr q = parts[0].q;
  u32 p = parts[0].p;
  std::vector<int> dims(q->num_vertices(), 0);
  for (auto& part : parts) {
    if (part.p != p || !part.q->same_structure(*q))
      throw UsageError("direct_sum of incompatible representations");
    for (int v = 0; v < q->num_vertices(); ++v) dims[v] += part.dims[v];
  }
  std::vector<Mat> mats;
  for (int a = 0; a < q->num_arrows(); ++a) {
    const Arrow& ar = q->arrow(a);
    Mat m(p, dims[ar.tgt], dims[ar.src]);
    int ro = 0, co = 0;
    for (auto& part : parts) {
      m.set_block(ro, co, part.mats[a]);
      ro += part.dims[ar.tgt];
      co += part.dims[ar.src];
    }
    mats.push_back(std::move(m));
  }
  return Rep(q, p, std::move(dims), std::move(mats));
}

RepMorphism sum_inclusion(const std::vector<Rep>& parts, int i) {
  Rep sum = direct_sum(parts);
  const Rep& part = parts[i];
  std::vector<Mat> comps;
  for (int v = 0; v < (int)sum.dims.size(); ++v) {
    Mat c(sum.p, sum.dims[v], part.dims[v]);
    int off = 0;
    for (int j = 0; j < i; ++j) off += parts[j].dims[v];
    c.set_block(off, 0, Mat::identity(sum.p, part.dims[v]));
    comps.push_back(std::move(c));
  }
  return RepMorphism(part, sum, std::move(comps));
}

RepMorphism sum_projection(const std::vector<Rep>& parts, int i) {
  Rep sum = direct_sum(parts);
  const Rep& part = parts[i];
  std::vector<Mat> comps;
  for (int v = 0; v < (int)sum.dims.size(); ++v) {
    Mat c(sum.p, part.dims[v], sum.dims[v]);
    int off = 0;
    for (int j = 0; j < i; ++j) off += parts[j].dims[v];
    c.set_block(0, off, Mat::identity(sum.p, part.dims[v]));
    comps.push_back(std::move(c));
  }
  return RepMorphism(sum, part, std::move(comps));
}

RepMorphism into_sum(const std::vector<RepMorphism>& fs) {
  if (fs.empty()) throw UsageError("into_sum of nothing");
  std::vector<Rep> dsts;
  for (auto& f : fs) dsts.push_back(f.dst());
  Rep sum = direct_sum(dsts);
  std::vector<Mat> comps;
  for (int v = 0; v < (int)sum.dims.size(); ++v) {
    std::vector<Mat> blocks;
    for (auto& f : fs) blocks.push_back(f.comp(v));
    comps.push_back(vstack(blocks, sum.p, fs[0].src().dims[v]));
  }
  return RepMorphism(fs[0].src(), sum, std::move(comps));
}

RepMorphism from_sum(const std::vector<RepMorphism>& fs) {
  if (fs.empty()) throw UsageError("from_sum of nothing");
  std::vector<Rep> srcs;
  for (auto& f : fs) srcs.push_back(f.src());
  Rep sum = direct_sum(srcs);
  std::vector<Mat> comps;
  for (int v = 0; v < (int)sum.dims.size(); ++v) {
    std::vector<Mat> blocks;
    for (auto& f : fs) blocks.push_back(f.comp(v));
    comps.push_back(hstack(blocks, sum.p, fs[0].dst().dims[v]));
  }
  return RepMorphism(sum, fs[0].dst(), std::move(comps));
}

Rep projective(QuiverPtr q, u32 p, int x) {
  std::vector<int> dims;
  for (int y = 0; y < q->num_vertices(); ++y) dims.push_back(q->num_paths(x, y));
  std::vector<Mat> mats;
  for (int a = 0; a < q->num_arrows(); ++a) {
    const Arrow& ar = q->arrow(a);
    Mat m(p, dims[ar.tgt], dims[ar.src]);
    const auto& from = q->paths(x, ar.src);
    const auto& to = q->paths(x, ar.tgt);
    for (size_t j = 0; j < from.size(); ++j) {
      Path ext = from[j];
      ext.push_back(a);
      auto it = std::find(to.begin(), to.end(), ext);
      if (it == to.end()) throw InternalError("path table inconsistent");
      m.at((int)(it - to.begin()), (int)j) = 1 % p;
    }
    mats.push_back(std::move(m));
  }
  return Rep(std::move(q), p, std::move(dims), std::move(mats));
}

Rep injective(QuiverPtr q, u32 p, int x) {
  std::vector<int> dims;
  for (int y = 0; y < q->num_vertices(); ++y) dims.push_back(q->num_paths(y, x));
  std::vector<Mat> mats;
  for (int a = 0; a < q->num_arrows(); ++a) {
    const Arrow& ar = q->arrow(a);
    Mat m(p, dims[ar.tgt], dims[ar.src]);
    const auto& from = q->paths(ar.src, x);  // basis of the source space
    const auto& to = q->paths(ar.tgt, x);    // basis of the target space
    // Dual of precomposition: sigma^* picks up pi^* when pi = a . sigma.
    for (size_t i = 0; i < to.size(); ++i) {
      Path ext;
      ext.push_back(a);
      ext.insert(ext.end(), to[i].begin(), to[i].end());
      auto it = std::find(from.begin(), from.end(), ext);
      if (it != from.end()) m.at((int)i, (int)(it - from.begin())) = 1 % p;
    }
    mats.push_back(std::move(m));
  }
  return Rep(std::move(q), p, std::move(dims), std::move(mats));
}

ProjSum projective_sum(QuiverPtr q, u32 p, std::vector<int> verts) {
  ProjSum ps;
  ps.verts = verts;
  std::vector<Rep> parts;
  for (int v : verts) parts.push_back(projective(q, p, v));
  ps.rep = parts.empty() ? zero_rep(q, p) : direct_sum(parts);
  ps.offsets.assign(verts.size(), std::vector<int>(q->num_vertices(), 0));
  for (int y = 0; y < q->num_vertices(); ++y) {
    int off = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
      ps.offsets[i][y] = off;
      off += q->num_paths(verts[i], y);
    }
  }
  return ps;
}

RepMorphism ProjSum::morphism_to(const Rep& m, const std::vector<Mat>& cols) const {
  if (cols.size() != verts.size()) throw UsageError("yoneda column count mismatch");
  const Quiver& q = *m.q;
  std::vector<Mat> comps;
  for (int y = 0; y < q.num_vertices(); ++y) {
    Mat c(m.p, m.dims[y], rep.dims[y]);
    for (size_t i = 0; i < verts.size(); ++i) {
      const auto& ps = q.paths(verts[i], y);
      for (size_t j = 0; j < ps.size(); ++j)
        c.set_block(0, offsets[i][y] + (int)j, path_matrix(m, verts[i], ps[j]) * cols[i]);
    }
    comps.push_back(std::move(c));
  }
  return RepMorphism(rep, m, std::move(comps));
}

std::vector<Mat> ProjSum::evaluate(const RepMorphism& f) const {
  std::vector<Mat> cols;
  for (size_t i = 0; i < verts.size(); ++i) {
    // Trivial path sits at block offset 0 of summand i at its own vertex.
    cols.push_back(f.comp(verts[i]).col(offsets[i][verts[i]]));
  }
  return cols;
}

InjSum injective_sum(QuiverPtr q, u32 p, std::vector<int> verts) {
  InjSum is;
  is.verts = verts;
  std::vector<Rep> parts;
  for (int v : verts) parts.push_back(injective(q, p, v));
  is.rep = parts.empty() ? zero_rep(q, p) : direct_sum(parts);
  is.offsets.assign(verts.size(), std::vector<int>(q->num_vertices(), 0));
  for (int y = 0; y < q->num_vertices(); ++y) {
    int off = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
      is.offsets[i][y] = off;
      off += q->num_paths(y, verts[i]);
    }
  }
  return is;
}

RepMorphism InjSum::morphism_from(const Rep& m, const std::vector<Mat>& rows) const {
  if (rows.size() != verts.size()) throw UsageError("yoneda row count mismatch");
  const Quiver& q = *m.q;
  std::vector<Mat> comps;
  for (int y = 0; y < q.num_vertices(); ++y) {
    Mat c(m.p, rep.dims[y], m.dims[y]);
    for (size_t i = 0; i < verts.size(); ++i) {
      const auto& ps = q.paths(y, verts[i]);
      for (size_t j = 0; j < ps.size(); ++j) {
        Mat row = rows[i] * path_matrix(m, y, ps[j]);
        c.set_block(offsets[i][y] + (int)j, 0, row);
      }
    }
    comps.push_back(std::move(c));
  }
  return RepMorphism(m, rep, std::move(comps));
}

std::vector<Mat> InjSum::evaluate(const RepMorphism& f) const {
  std::vector<Mat> rows;
  for (size_t i = 0; i < verts.size(); ++i)
    rows.push_back(f.comp(verts[i]).row_mat(offsets[i][verts[i]]));
  return rows;
}

SubRep radical_rep(const Rep& m) {
  const Quiver& q = *m.q;
  std::vector<int> dims;
  std::vector<Mat> incl;
  for (int v = 0; v < q.num_vertices(); ++v) {
    std::vector<Mat> blocks;
    for (int a : q.incoming(v)) blocks.push_back(m.mats[a]);
    Mat stacked = hstack(blocks, m.p, m.dims[v]);
    ColSpace cs = column_space(stacked);
    incl.push_back(cs.basis);
    dims.push_back(cs.dim());
  }
  std::vector<Mat> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    auto k = solve(incl[ar.tgt], m.mats[a] * incl[ar.src]);
    if (!k) throw InternalError("radical is not arrow-stable");
    mats.push_back(std::move(*k));
  }
  Rep r(m.q, m.p, std::move(dims), std::move(mats));
  RepMorphism inclm(r, m, std::move(incl));
  return SubRep{std::move(r), std::move(inclm)};
}

QuotRep top_rep(const Rep& m) {
  SubRep rad = radical_rep(m);
  QuotRep t = cokernel(rad.incl);
  for (auto& mat : t.rep.mats)
    if (!mat.is_zero()) throw InternalError("top has a nonzero arrow map");
  return t;
}

SubRep socle_rep(const Rep& m) {
  const Quiver& q = *m.q;
  std::vector<int> dims;
  std::vector<Mat> incl;
  for (int v = 0; v < q.num_vertices(); ++v) {
    std::vector<Mat> blocks;
    for (int a : q.outgoing(v)) blocks.push_back(m.mats[a]);
    int rows = 0;
    for (auto& b : blocks) rows += b.rows;
    Mat stacked(m.p, rows, m.dims[v]);
    int off = 0;
    for (auto& b : blocks) {
      stacked.set_block(off, 0, b);
      off += b.rows;
    }
    incl.push_back(kernel_basis(stacked));
    dims.push_back(incl.back().cols);
  }
  std::vector<Mat> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (!(m.mats[a] * incl[ar.src]).is_zero())
      throw InternalError("socle is not annihilated by arrows");
    mats.emplace_back(m.p, dims[ar.tgt], dims[ar.src]);
  }
  Rep s(m.q, m.p, std::move(dims), std::move(mats));
  RepMorphism inclm(s, m, std::move(incl));
  return SubRep{std::move(s), std::move(inclm)};
}

ProjCover projective_cover(const Rep& m) {
  if (m.is_zero()) throw UsageError("projective cover of the zero representation");
  QuotRep top = top_rep(m);
  std::vector<int> verts;
  std::vector<Mat> cols;
  for (int v = 0; v < (int)m.dims.size(); ++v) {
    Mat sect = top.coords[v].section_basis();
    for (int j = 0; j < top.rep.dims[v]; ++j) {
      verts.push_back(v);
      cols.push_back(sect.col(j));
    }
  }
  ProjSum ps = projective_sum(m.q, m.p, verts);
  RepMorphism eps = ps.morphism_to(m, cols);
  if (!eps.is_epi()) throw InternalError("projective cover is not surjective");
  SubRep rad = radical_rep(ps.rep);
  for (int v = 0; v < (int)m.dims.size(); ++v) {
    ColSpace rad_v = column_space(rad.incl.comp(v));
    if (!rad_v.contains(kernel_basis(eps.comp(v))))
      throw InternalError("projective cover kernel escapes the radical");
  }
  return ProjCover{std::move(ps), std::move(eps)};
}

InjEnvelope injective_envelope(const Rep& m) {
  if (m.is_zero()) throw UsageError("injective envelope of the zero representation");
  SubRep soc = socle_rep(m);
  std::vector<int> verts;
  std::vector<Mat> rows;
  for (int v = 0; v < (int)m.dims.size(); ++v) {
    const Mat& S = soc.incl.comp(v);  // m.dims[v] x s_v
    if (S.cols == 0) continue;
    auto X = solve(S.transpose(), Mat::identity(m.p, S.cols));
    if (!X) throw InternalError("socle basis is degenerate");
    Mat Xi = X->transpose();  // s_v x m.dims[v], with Xi * S = I
    for (int j = 0; j < S.cols; ++j) {
      verts.push_back(v);
      rows.push_back(Xi.row_mat(j));
    }
  }
  InjSum is = injective_sum(m.q, m.p, verts);
  RepMorphism env = is.morphism_from(m, rows);
  if (!env.is_mono()) throw InternalError("injective envelope is not injective");
  SubRep soc0 = socle_rep(is.rep);
  for (int v = 0; v < (int)m.dims.size(); ++v) {
    ColSpace im = column_space(env.comp(v));
    if (!im.contains(soc0.incl.comp(v)))
      throw InternalError("envelope image misses part of the socle");
  }
  return InjEnvelope{std::move(is), std::move(env)};
}

ProjPresentation minimal_projective_presentation(const Rep& m) {
  ProjCover c0 = projective_cover(m);
  SubRep k = kernel(c0.eps);
  if (k.rep.is_zero()) {
    ProjSum p1 = projective_sum(m.q, m.p, {});
    RepMorphism f = zero_morphism(p1.rep, c0.p0.rep);
    return ProjPresentation{std::move(p1), std::move(c0.p0), std::move(f),
                            std::move(c0.eps)};
  }
  ProjCover c1 = projective_cover(k.rep);
  RepMorphism f = compose(k.incl, c1.eps);
  if (!f.is_mono())
    throw InternalError("presentation map is not injective over a hereditary algebra");
  return ProjPresentation{std::move(c1.p0), std::move(c0.p0), std::move(f),
                          std::move(c0.eps)};
}

InjCopresentation minimal_injective_copresentation(const Rep& m) {
  InjEnvelope e0 = injective_envelope(m);
  QuotRep c = cokernel(e0.env);
  if (c.rep.is_zero()) {
    InjSum i1 = injective_sum(m.q, m.p, {});
    RepMorphism g = zero_morphism(e0.i0.rep, i1.rep);
    return InjCopresentation{std::move(e0.i0), std::move(i1), std::move(e0.env),
                             std::move(g)};
  }
  InjEnvelope e1 = injective_envelope(c.rep);
  RepMorphism g = compose(e1.env, c.proj);
  return InjCopresentation{std::move(e0.i0), std::move(e1.i0), std::move(e0.env),
                           std::move(g)};
}

bool is_projective_rep(const Rep& m) {
  if (m.is_zero()) return true;
  return kernel(projective_cover(m).eps).rep.is_zero();
}

bool is_injective_rep(const Rep& m) {
  if (m.is_zero()) return true;
  return cokernel(injective_envelope(m).env).rep.is_zero();
}

EndAlgebra end_algebra(const Rep& m) {
  EndAlgebra e;
  e.basis = hom_basis(m, m);
  int n = (int)e.basis.size();
  if ((u32)n >= m.p)
    throw UsageError("trace-form radical needs p > dim End (p=" +
                     std::to_string(m.p) + ", dim End=" + std::to_string(n) +
                     "); increase the prime");
  std::vector<Mat> flat_cols;
  for (auto& b : e.basis) flat_cols.push_back(b.flatten());
  int N = flat_cols.empty() ? 0 : flat_cols[0].rows;
  Mat E = hstack(flat_cols, m.p, N);
  auto coords_of = [&](const RepMorphism& f) {
    auto x = solve(E, f.flatten());
    if (!x) throw InternalError("endomorphism outside its own algebra");
    return *x;
  };
  for (int i = 0; i < n; ++i) {
    Mat L(m.p, n, n);
    for (int j = 0; j < n; ++j)
      L.set_block(0, j, coords_of(compose(e.basis[i], e.basis[j])));
    e.left_mult.push_back(std::move(L));
  }
  e.trace_form = Mat(m.p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat prod = e.left_mult[i] * e.left_mult[j];
      u32 tr = 0;
      for (int k = 0; k < n; ++k) tr = fp_add(tr, prod.at(k, k), m.p);
      e.trace_form.at(i, j) = tr;
      e.trace_form.at(j, i) = tr;
    }
  e.radical = kernel_basis(e.trace_form);
  return e;
}

Mat EndAlgebra::coords(const RepMorphism& f) const {
  std::vector<Mat> flat_cols;
  for (auto& b : basis) flat_cols.push_back(b.flatten());
  int N = flat_cols.empty() ? 0 : flat_cols[0].rows;
  Mat E = hstack(flat_cols, f.src().p, N);
  auto x = solve(E, f.flatten());
  if (!x) throw UsageError("morphism is not an element of this algebra");
  return *x;
}

RepMorphism EndAlgebra::element(const Mat& c) const {
  if (basis.empty()) throw UsageError("element of the zero algebra");
  RepMorphism f = zero_morphism(basis[0].src(), basis[0].dst());
  for (int i = 0; i < (int)basis.size(); ++i)
    f = add(f, scal(c.at(i, 0), basis[i]));
  return f;
}

std::vector<RepMorphism> EndAlgebra::radical_basis() const {
  std::vector<RepMorphism> out;
  for (int j = 0; j < radical.cols; ++j) out.push_back(element(radical.col(j)));
  return out;
}

std::vector<int> part_fingerprint(const Rep& m) {
  std::vector<int> fp = m.dims;
  fp.push_back(hom_dim(m, m));
  for (int x = 0; x < m.q->num_vertices(); ++x)
    fp.push_back(hom_dim(m, projective(m.q, m.p, x)));
  return fp;
}

}  // namespace arq
