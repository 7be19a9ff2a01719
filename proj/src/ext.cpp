#include "arq/ext.hpp"

#include <algorithm>

namespace arq {
namespace {

// Stacked fiber coordinates over a list of summand vertices: one block of
// height x.dims[v] per vertex, in summand order.
Mat stack_fibers(const std::vector<Mat>& cols, u32 p, int total) {
  Mat out(p, total, cols.empty() ? 1 : cols[0].cols);
  int r = 0;
  for (const Mat& c : cols) {
    out.set_block(r, 0, c);
    r += c.rows;
  }
  if (cols.empty()) out = Mat(p, 0, 1);
  return out;
}

void check_same_setting(const Rep& a, const Rep& b, const char* what) {
  if (a.q.get() != b.q.get() || a.p != b.p)
    throw UsageError(std::string(what) +
                     " requires representations over the same quiver and prime");
}

}  // namespace

ShortExact::ShortExact(RepMorphism i, RepMorphism p)
    : i_(std::move(i)), p_(std::move(p)) {
  if (!i_.dst().same_as(p_.src()))
    throw UsageError("sequence maps do not share the middle representation");
  if (!i_.is_mono())
    throw UsageError("left map of a short exact sequence must be injective");
  if (!p_.is_epi())
    throw UsageError("right map of a short exact sequence must be surjective");
  if (!compose(p_, i_).is_zero())
    throw UsageError("composite of the two sequence maps is nonzero");
  const Quiver& q = *i_.src().q;
  for (int v = 0; v < q.num_vertices(); ++v) {
    // im i = ker p vertexwise; with p*i = 0 a rank count is enough.
    if (rank(i_.comp(v)) != i_.dst().dims[v] - rank(p_.comp(v)))
      throw UsageError("sequence is not exact in the middle at vertex '" +
                       q.vertex_name(v) + "'");
  }
}

std::optional<RepMorphism> split_retraction(const ShortExact& s) {
  return factor_left(s.i(), identity_morphism(s.x()));
}

ExtSpace::ExtSpace(Rep z, Rep x) : z_(std::move(z)), x_(std::move(x)) {
  check_same_setting(z_, x_, "an Ext space");
  if (z_.is_zero()) {
    ProjSum empty0 = projective_sum(z_.q, z_.p, {});
    ProjSum empty1 = projective_sum(z_.q, z_.p, {});
    RepMorphism f = zero_morphism(empty1.rep, empty0.rep);
    RepMorphism eps = zero_morphism(empty0.rep, z_);
    pres_ = ProjPresentation{std::move(empty1), std::move(empty0), std::move(f),
                             std::move(eps)};
  } else {
    pres_ = minimal_projective_presentation(z_);
  }
  for (int v : pres_.p1.verts) ambient_ += x_.dims[v];
  int d0 = 0;
  for (int v : pres_.p0.verts) d0 += x_.dims[v];
  // Matrix of precomposition with f on the stacked Yoneda coordinates.
  Mat fstar(x_.p, ambient_, d0);
  int col = 0;
  for (size_t i = 0; i < pres_.p0.verts.size(); ++i) {
    int v = pres_.p0.verts[i];
    for (int j = 0; j < x_.dims[v]; ++j, ++col) {
      std::vector<Mat> cols;
      for (size_t k = 0; k < pres_.p0.verts.size(); ++k)
        cols.push_back(Mat(x_.p, x_.dims[pres_.p0.verts[k]], 1));
      cols[i].at(j, 0) = 1;
      RepMorphism g0 = pres_.p0.morphism_to(x_, cols);
      Mat image = coords_of_hom(compose(g0, pres_.f));
      if (ambient_ > 0) fstar.set_block(0, col, image);
    }
  }
  quo_ = quotient_by_columns(fstar);
}

Mat ExtSpace::coords_of_hom(const RepMorphism& g) const {
  return stack_fibers(pres_.p1.evaluate(g), x_.p, ambient_);
}

RepMorphism ExtSpace::hom_of_coords(const Mat& d) const {
  if (d.rows != ambient_ || d.cols != 1)
    throw UsageError("ambient Ext coordinate vector has the wrong shape");
  std::vector<Mat> cols;
  int r = 0;
  for (int v : pres_.p1.verts) {
    cols.push_back(d.block(r, 0, x_.dims[v], 1));
    r += x_.dims[v];
  }
  return pres_.p1.morphism_to(x_, cols);
}

Mat ExtSpace::project(const Mat& ambient) const { return quo_.project(ambient); }
Mat ExtSpace::section(const Mat& coords) const { return quo_.section(coords); }

ExtSpacePtr ext_space(const Rep& z, const Rep& x) {
  return std::make_shared<ExtSpace>(z, x);
}

ExtClass zero_class(ExtSpacePtr space) {
  Mat c(space->x().p, space->dim(), 1);
  return ExtClass{std::move(space), std::move(c)};
}

ExtClass class_from_coords(ExtSpacePtr space, Mat coords) {
  if (coords.rows != space->dim() || coords.cols != 1 ||
      coords.p != space->x().p)
    throw UsageError("class coordinates have the wrong shape for this space");
  return ExtClass{std::move(space), std::move(coords)};
}

ExtClass ses_to_class(ExtSpacePtr space, const ShortExact& s) {
  if (!s.z().same_as(space->z()) || !s.x().same_as(space->x()))
    throw UsageError("sequence endpoints do not match the Ext space");
  const ProjPresentation& pr = space->pres();
  // Lift eps through p (projectivity of p0), then pull the relation map back
  // through i; the result classifies the sequence.
  auto h0 = factor_right(s.p(), pr.eps);
  if (!h0) throw InternalError("projective lift through a surjection failed");
  auto xi = factor_right(s.i(), compose(*h0, pr.f));
  if (!xi)
    throw InternalError("relation image escaped the kernel of the quotient map");
  return ExtClass{space, space->project(space->coords_of_hom(*xi))};
}

ShortExact class_to_ses(const ExtClass& c) {
  const ExtSpace& sp = *c.space;
  const ProjPresentation& pr = sp.pres();
  RepMorphism xi = sp.hom_of_coords(sp.section(c.coords));
  const Rep& x = sp.x();
  const Rep& p0 = pr.p0.rep;
  u32 p = x.p;
  // Middle term: (x + p0) / im(xi, -f).
  RepMorphism graph = into_sum({xi, scal(p - 1, pr.f)});
  QuotRep co = cokernel(graph);
  std::vector<Rep> parts = {x, p0};
  RepMorphism i = compose(co.proj, sum_inclusion(parts, 0));
  // Projection induced by (0 | eps) on the quotient coordinates.
  const Quiver& q = *x.q;
  std::vector<Mat> comps;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Mat zero_eps = hstack(Mat(p, sp.z().dims[v], x.dims[v]), pr.eps.comp(v));
    comps.push_back(zero_eps * co.coords[v].section_basis());
  }
  RepMorphism pm(co.rep, sp.z(), std::move(comps));
  // The induced map must pull back to (0 | eps) along the quotient.
  RepMorphism zero_eps_m = from_sum({zero_morphism(x, sp.z()), pr.eps});
  if (compose(pm, co.proj).flatten() != zero_eps_m.flatten())
    throw InternalError("induced projection disagrees with (0 | eps)");
  return ShortExact(i, pm);
}

namespace {

bool same_space(const ExtSpace& a, const ExtSpace& b) {
  return &a == &b || (a.z().same_as(b.z()) && a.x().same_as(b.x()));
}

// Coordinates of the pushout action of u on classes given by the columns of
// coords (src and dst must present the same z).
Mat pushout_coords(const RepMorphism& u, const ExtSpace& src,
                   const ExtSpace& dst, const Mat& coords) {
  Mat amb = src.section(coords);
  Mat out(u.src().p, dst.ambient_dim(), coords.cols);
  int r_in = 0, r_out = 0;
  for (int v : src.pres().p1.verts) {
    Mat chunk = amb.block(r_in, 0, src.x().dims[v], coords.cols);
    Mat mapped = u.comp(v) * chunk;
    if (mapped.rows > 0) out.set_block(r_out, 0, mapped);
    r_in += src.x().dims[v];
    r_out += u.dst().dims[v];
  }
  return dst.project(out);
}

void check_pushout_setting(const RepMorphism& u, const ExtSpace& src,
                           const ExtSpace& dst) {
  if (!u.src().same_as(src.x()))
    throw UsageError("pushout morphism must start at the space's first argument");
  if (!dst.z().same_as(src.z()) || !dst.x().same_as(u.dst()))
    throw UsageError("pushout target space does not match the morphism");
}

}  // namespace

ExtClass pushout(const RepMorphism& u, const ExtClass& c) {
  const ExtSpace& src = *c.space;
  ExtSpacePtr dst = ext_space(src.z(), u.dst());
  check_pushout_setting(u, src, *dst);
  return ExtClass{dst, pushout_coords(u, src, *dst, c.coords)};
}

Mat pushout_matrix(const RepMorphism& u, ExtSpacePtr src, ExtSpacePtr dst) {
  check_pushout_setting(u, *src, *dst);
  return pushout_coords(u, *src, *dst, Mat::identity(u.src().p, src->dim()));
}

namespace {

// Chain comparison lifts of v through the two minimal presentations: v0 with
// eps_z v0 = v eps_n, then v1 with f_z v1 = v0 f_n.
void comparison_lifts(const ExtSpace& src, const RepMorphism& v,
                      const ExtSpace& dst, RepMorphism& v1) {
  const ProjPresentation& prz = src.pres();
  const ProjPresentation& prn = dst.pres();
  auto v0 = factor_right(prz.eps, compose(v, prn.eps));
  if (!v0) throw InternalError("chain lift through the cover failed");
  auto v1o = factor_right(prz.f, compose(*v0, prn.f));
  if (!v1o) throw InternalError("chain lift through the relations failed");
  v1 = *v1o;
}

void check_pullback_setting(const ExtSpace& src, const RepMorphism& v,
                            const ExtSpace& dst) {
  if (!v.dst().same_as(src.z()))
    throw UsageError("pullback morphism must end at the space's second argument");
  if (!dst.x().same_as(src.x()) || !dst.z().same_as(v.src()))
    throw UsageError("pullback target space does not match the morphism");
}

}  // namespace

Mat pullback_matrix(ExtSpacePtr src, const RepMorphism& v, ExtSpacePtr dst) {
  check_pullback_setting(*src, v, *dst);
  RepMorphism v1;
  comparison_lifts(*src, v, *dst, v1);
  u32 p = src->x().p;
  Mat out(p, dst->dim(), src->dim());
  Mat amb = src->section(Mat::identity(p, src->dim()));
  for (int k = 0; k < src->dim(); ++k) {
    RepMorphism xi = src->hom_of_coords(amb.col(k));
    Mat col = dst->project(dst->coords_of_hom(compose(xi, v1)));
    if (out.rows > 0) out.set_block(0, k, col);
  }
  return out;
}

ExtClass pullback(const ExtClass& c, const RepMorphism& v) {
  const ExtSpace& src = *c.space;
  ExtSpacePtr dst = ext_space(v.src(), src.x());
  return ExtClass{dst, pullback_matrix(c.space, v, dst) * c.coords};
}

ExtClass baer_sum(const ExtClass& a, const ExtClass& b) {
  if (!same_space(*a.space, *b.space))
    throw UsageError("Baer sum requires classes in the same Ext space");
  return ExtClass{a.space, a.coords + b.coords};
}

ExtClass scale(u32 lambda, const ExtClass& c) {
  return ExtClass{c.space, scal(lambda % c.coords.p, c.coords)};
}

namespace {

// The unique-up-to-choice morphism between ladder middles: solve for m with
// m i_top = i_bot left and p_bot m = right p_top over a Hom basis.
RepMorphism connect_rows(const ShortExact& top, const ShortExact& bot,
                         const RepMorphism& left, const RepMorphism& right) {
  std::vector<RepMorphism> basis = hom_basis(top.y(), bot.y());
  u32 p = top.y().p;
  std::vector<Mat> lhs_cols;
  for (const RepMorphism& b : basis)
    lhs_cols.push_back(
        vstack(compose(b, top.i()).flatten(), compose(bot.p(), b).flatten()));
  Mat rhs = vstack(compose(bot.i(), left).flatten(),
                   compose(right, top.p()).flatten());
  Mat a = hstack(lhs_cols, p, rhs.rows);
  auto sol = solve(a, rhs);
  if (!sol) throw InternalError("ladder middle morphism does not exist");
  Mat flat(p, basis.empty() ? 0 : basis[0].flatten().rows, 1);
  for (size_t k = 0; k < basis.size(); ++k)
    flat = flat + scal(sol->at((int)k, 0), basis[k].flatten());
  return morphism_from_flat(top.y(), bot.y(), flat);
}

}  // namespace

ExtLadder pushout_diagram(const RepMorphism& u, const ExtClass& c) {
  ExtLadder lad;
  lad.top = class_to_ses(c);
  ExtClass uc = pushout(u, c);
  lad.bottom = class_to_ses(uc);
  lad.left = u;
  lad.right = identity_morphism(c.space->z());
  lad.middle = connect_rows(lad.top, lad.bottom, lad.left, lad.right);
  return lad;
}

ExtLadder pullback_diagram(const ExtClass& c, const RepMorphism& v) {
  ExtLadder lad;
  ExtClass cv = pullback(c, v);
  lad.top = class_to_ses(cv);
  lad.bottom = class_to_ses(c);
  lad.left = identity_morphism(c.space->x());
  lad.right = v;
  lad.middle = connect_rows(lad.top, lad.bottom, lad.left, lad.right);
  return lad;
}

bool is_injectively_trivial(const RepMorphism& u) {
  if (u.src().is_zero()) return true;
  InjEnvelope env = injective_envelope(u.src());
  return factor_left(env.env, u).has_value();
}

bool is_projectively_trivial(const RepMorphism& u) {
  if (u.dst().is_zero()) return true;
  ProjCover cov = projective_cover(u.dst());
  return factor_right(cov.eps, u).has_value();
}

namespace {

// Hom-basis coordinate columns of a family of morphisms.
Mat hom_coords(const std::vector<RepMorphism>& basis,
               const std::vector<RepMorphism>& fs, u32 p) {
  int h = (int)basis.size();
  if (fs.empty()) return Mat(p, h, 0);
  std::vector<Mat> bcols, fcols;
  for (const RepMorphism& b : basis) bcols.push_back(b.flatten());
  for (const RepMorphism& f : fs) fcols.push_back(f.flatten());
  int flat = bcols.empty() ? fcols[0].rows : bcols[0].rows;
  Mat a = hstack(bcols, p, flat);
  Mat b = hstack(fcols, p, flat);
  auto sol = solve(a, b);
  if (!sol) throw InternalError("morphism outside its own Hom space");
  return *sol;
}

StableHom stable_quotient(const Rep& from, const Rep& to,
                          const std::vector<RepMorphism>& trivials) {
  StableHom sh;
  sh.full_basis = hom_basis(from, to);
  sh.quo = quotient_by_columns(
      hom_coords(sh.full_basis, trivials, from.p));
  return sh;
}

}  // namespace

std::vector<RepMorphism> StableHom::reps() const {
  std::vector<RepMorphism> out;
  if (full_basis.empty()) return out;
  u32 p = full_basis[0].src().p;
  Mat sb = quo.section_basis();
  for (int j = 0; j < sb.cols; ++j) {
    Mat flat(p, full_basis[0].flatten().rows, 1);
    for (size_t k = 0; k < full_basis.size(); ++k)
      flat = flat + scal(sb.at((int)k, j), full_basis[k].flatten());
    out.push_back(
        morphism_from_flat(full_basis[0].src(), full_basis[0].dst(), flat));
  }
  return out;
}

Mat StableHom::coords_mod(const RepMorphism& f) const {
  if (full_basis.empty()) {
    if (!f.is_zero()) throw UsageError("morphism outside the zero Hom space");
    return Mat(f.src().p, 0, 1);
  }
  Mat c = hom_coords(full_basis, {f}, f.src().p);
  return quo.project(c);
}

StableHom stable_hom_inj(const Rep& l, const Rep& x) {
  check_same_setting(l, x, "a stable Hom space");
  std::vector<RepMorphism> trivials;
  if (!l.is_zero() && hom_dim(l, x) > 0) {
    InjEnvelope env = injective_envelope(l);
    for (const RepMorphism& w : hom_basis(env.i0.rep, x))
      trivials.push_back(compose(w, env.env));
  }
  return stable_quotient(l, x, trivials);
}

StableHom stable_hom_proj(const Rep& z, const Rep& l) {
  check_same_setting(z, l, "a stable Hom space");
  std::vector<RepMorphism> trivials;
  if (!l.is_zero() && hom_dim(z, l) > 0) {
    ProjCover cov = projective_cover(l);
    for (const RepMorphism& w : hom_basis(z, cov.p0.rep))
      trivials.push_back(compose(cov.eps, w));
  }
  return stable_quotient(z, l, trivials);
}

Mat pairing_matrix(ExtSpacePtr space, const Mat& phi, const Rep& l,
                   PairingSide side) {
  if (phi.rows != 1 || phi.cols != space->dim())
    throw UsageError("pairing functional must be a row over the Ext space");
  u32 p = space->x().p;
  if (side == PairingSide::inj) {
    StableHom sh = stable_hom_inj(l, space->x());
    ExtSpacePtr es = ext_space(space->z(), l);
    std::vector<RepMorphism> fs = sh.reps();
    Mat out(p, sh.dim(), es->dim());
    for (size_t i = 0; i < fs.size(); ++i) {
      Mat row = phi * pushout_coords(fs[i], *es, *space,
                                     Mat::identity(p, es->dim()));
      for (int j = 0; j < es->dim(); ++j) out.at((int)i, j) = row.at(0, j);
    }
    return out;
  }
  StableHom sh = stable_hom_proj(space->z(), l);
  ExtSpacePtr es = ext_space(l, space->x());
  std::vector<RepMorphism> gs = sh.reps();
  Mat out(p, es->dim(), sh.dim());
  for (size_t j = 0; j < gs.size(); ++j) {
    Mat col = phi * pullback_matrix(es, gs[j], space);
    for (int i = 0; i < es->dim(); ++i) out.at(i, (int)j) = col.at(0, i);
  }
  return out;
}

}  // namespace arq
