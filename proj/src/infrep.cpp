#include "arq/infrep.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace arq {

namespace {

u32 reduce_coeff(long long c, u32 p) {
  long long r = c % (long long)p;
  if (r < 0) r += p;
  return (u32)r;
}

int find_path(const std::vector<Path>& list, const Path& path) {
  for (size_t k = 0; k < list.size(); ++k)
    if (list[k] == path) return (int)k;
  return -1;
}

std::shared_ptr<const Quiver> reversed_window(const Truncation& tr) {
  return std::make_shared<Quiver>(reversed(*tr.q, tr.q->name() + "_op"));
}

// Turn a DTr rejection into its arrow-reversed counterpart: the projective
// summands P(x) of the presented representation are the injective summands
// I(x) of its dual over the reversed quiver.
std::string mirror_negative(const std::string& msg) {
  std::string names;
  auto pos = msg.find("isomorphic to ");
  if (pos != std::string::npos) names = msg.substr(pos + 14);
  for (size_t i = 0; (i = names.find("P(", i)) != std::string::npos; i += 2)
    names[i] = 'I';
  std::string out =
      "TrD undefined over the reversed quiver: the dual representation has "
      "an injective direct summand";
  if (!names.empty()) out += " isomorphic to " + names;
  return out;
}

}  // namespace

FPRep make_fprep(std::shared_ptr<const RayQuiver> rq, u32 p,
                 const FPRepDecl& decl) {
  if (!rq) throw UsageError("fprep '" + decl.name + "' needs a ray quiver");
  FPRep out;
  out.name = decl.name;
  out.rq = std::move(rq);
  out.p = p;
  out.p0 = decl.p0;
  out.p1 = decl.p1;
  out.decl = decl;
  if (out.p0.empty())
    throw UsageError("fprep '" + out.name +
                     "': p0 must name at least one vertex");
  int core_v = -1, ray = -1, level = 0;
  for (const std::string& v : out.p0) {
    if (!out.rq->resolve_vertex(v, core_v, ray, level))
      throw UsageError("fprep '" + out.name + "': unknown vertex '" + v + "'");
    out.max_level = std::max(out.max_level, level);
  }
  for (const std::string& v : out.p1) {
    if (!out.rq->resolve_vertex(v, core_v, ray, level))
      throw UsageError("fprep '" + out.name + "': unknown vertex '" + v + "'");
    out.max_level = std::max(out.max_level, level);
  }
  for (const auto& [key, terms] : decl.entries) {
    (void)terms;
    if (key.first < 0 || key.first >= (int)out.p0.size() || key.second < 0 ||
        key.second >= (int)out.p1.size())
      throw UsageError("fprep '" + out.name + "': entry (" +
                       std::to_string(key.first) + ", " +
                       std::to_string(key.second) + ") is out of range");
  }
  if (out.p1.empty()) {
    // 0 -> P0 is the minimal presentation of the projective itself.
    out.minimal = true;
    return out;
  }
  // Both sums of projectives vanish beyond ring max_level, so the minimality
  // verdict is the same over every admissible window; use the smallest.
  Truncation tr = truncate(*out.rq, out.min_depth());
  ProjMap pm = realize_presentation(out, tr);
  RepMorphism f = pm.proj_morphism();
  if (!f.is_mono()) {
    out.minimal_reason = "the presentation map has a nonzero kernel";
    return out;
  }
  SubRep rad = radical_rep(f.dst());
  for (int v = 0; v < tr.q->num_vertices(); ++v) {
    if (!column_space(rad.incl.comp(v)).contains(f.comp(v))) {
      out.minimal_reason = "the image is not inside the radical at vertex '" +
                           tr.q->vertex_name(v) + "'";
      return out;
    }
  }
  out.minimal = true;
  return out;
}

ProjMap realize_presentation(const FPRep& m, const Truncation& tr) {
  if (tr.depth < m.min_depth())
    throw UsageError("truncation depth " + std::to_string(tr.depth) +
                     " cannot hold fprep '" + m.name +
                     "'; it needs depth at least " +
                     std::to_string(m.min_depth()));
  ProjMap pm;
  pm.q = tr.q;
  pm.p = m.p;
  for (const std::string& v : m.p1)
    pm.src_verts.push_back(tr.q->vertex_index(v));
  for (const std::string& v : m.p0)
    pm.dst_verts.push_back(tr.q->vertex_index(v));
  pm.coeff.resize(pm.src_verts.size());
  for (size_t i = 0; i < pm.src_verts.size(); ++i) {
    pm.coeff[i].resize(pm.dst_verts.size());
    for (size_t j = 0; j < pm.dst_verts.size(); ++j)
      pm.coeff[i][j].assign(
          tr.q->num_paths(pm.dst_verts[j], pm.src_verts[i]), 0);
  }
  for (const auto& [key, terms] : m.decl.entries) {
    int row = key.first, col = key.second;  // row over p0, column over p1
    const auto& plist = tr.q->paths(pm.dst_verts[row], pm.src_verts[col]);
    for (const PathTerm& t : terms) {
      Path path;
      bool resolved = true;
      for (const std::string& id : t.arrows) {
        int ai = tr.q->arrow_index(id);
        if (ai < 0) {
          resolved = false;
          break;
        }
        path.push_back(ai);
      }
      int k = resolved ? find_path(plist, path) : -1;
      if (k < 0)
        throw UsageError("fprep '" + m.name + "': entry (" +
                         std::to_string(row) + ", " + std::to_string(col) +
                         ") has a term that is not a path from '" +
                         m.p0[row] + "' to '" + m.p1[col] + "'");
      u32& slot = pm.coeff[col][row][k];
      slot = (u32)(((u64)slot + reduce_coeff(t.coeff, m.p)) % m.p);
    }
  }
  return pm;
}

Rep coker_rep(const FPRep& m, int depth) {
  if (depth == 0) depth = m.min_depth();
  if (depth < m.min_depth())
    throw UsageError("truncation depth " + std::to_string(depth) +
                     " is too small for fprep '" + m.name +
                     "'; it needs depth at least " +
                     std::to_string(m.min_depth()));
  Truncation tr = truncate(*m.rq, depth);
  if (m.p1.empty()) {
    std::vector<int> verts;
    for (const std::string& v : m.p0)
      verts.push_back(tr.q->vertex_index(v));
    return projective_sum(tr.q, m.p, verts).rep;
  }
  return cokernel(realize_presentation(m, tr).proj_morphism()).rep;
}

DtrVerdict dtr_inf(const FPRep& m, int depth, u64 seed) {
  if (!m.minimal)
    throw UsageError("fprep '" + m.name + "' is not a minimal presentation: " +
                     m.minimal_reason);
  int need = m.auto_depth();
  if (depth == 0) depth = need;
  if (depth < need)
    throw UsageError("truncation depth " + std::to_string(depth) +
                     " is too small to certify stabilization for fprep '" +
                     m.name + "'; it needs depth at least " +
                     std::to_string(need));
  if (m.p1.empty()) {
    std::string name;
    for (size_t i = 0; i < m.p0.size(); ++i)
      name += (i ? ")+P(" : "P(") + m.p0[i];
    throw NegativeResult(
        "DTr undefined: the presented representation has a projective direct "
        "summand isomorphic to " +
        name + ")");
  }
  DtrVerdict out;
  out.depth = depth;
  out.window = truncate(*m.rq, depth);
  const Truncation& tr = out.window;
  ProjMap pm = realize_presentation(m, tr);
  Rep z = cokernel(pm.proj_morphism()).rep;
  DecompositionReport dec = decompose(z, seed);
  for (const DecPart& part : dec.parts) {
    if (!is_projective_rep(part.rep)) continue;
    ProjCover pc = projective_cover(part.rep);
    std::string name;
    for (size_t i = 0; i < pc.p0.verts.size(); ++i)
      name += (i ? ")+P(" : "P(") + tr.q->vertex_name(pc.p0.verts[i]);
    throw NegativeResult(
        "DTr undefined: the presented representation has a projective direct "
        "summand isomorphic to " +
        name + ")");
  }
  RepMorphism nu = nakayama(pm);
  SubRep K = kernel(nu);
  for (size_t r = 0; r < m.rq->rays().size(); ++r) {
    int va = tr.ray_vertex[r][depth - 2];  // ring depth-1
    int vb = tr.ray_vertex[r][depth - 1];  // ring depth
    RayCertificate cert;
    cert.ray = m.rq->rays()[r].id;
    cert.ring = depth - 1;
    const Mat& a = nu.comp(va);
    const Mat& b = nu.comp(vb);
    cert.blocks_equal = a.rows == b.rows && a.cols == b.cols && a == b;
    cert.stable_dim = K.rep.dims[vb];
    if (!cert.blocks_equal)
      throw InternalError("stabilization certificate failed along ray '" +
                          cert.ray + "': the blocks at rings " +
                          std::to_string(depth - 1) + " and " +
                          std::to_string(depth) + " differ");
    out.certificates.push_back(cert);
    if (cert.stable_dim > 0 && out.ray_witness.empty()) {
      out.ray_witness = cert.ray;
      out.stable_dim = cert.stable_dim;
    }
  }
  out.finite = out.ray_witness.empty();
  if (out.finite) {
    for (int b : tr.boundary)
      if (K.rep.dims[b] != 0)
        throw InternalError(
            "finite translate with support on the truncation boundary");
    out.rep = K.rep;
  }
  return out;
}

DtrVerdict trd_inf(const FPRep& m, int depth, u64 seed) {
  DtrVerdict v;
  try {
    v = dtr_inf(m, depth, seed);
  } catch (const NegativeResult& e) {
    throw NegativeResult(mirror_negative(e.what()));
  }
  auto rev = reversed_window(v.window);
  v.window.q = rev;
  if (v.finite) v.rep = dual_rep(v.rep, rev);
  return v;
}

AssInRep ass_in_rep_plus(const FPRep& m, u64 seed) {
  DtrVerdict v = dtr_inf(m, 0, seed);
  AssInRep out;
  out.window = v.window;
  if (!v.finite) {
    out.ray_witness = v.ray_witness;
    out.stable_dim = v.stable_dim;
    out.witness =
        "DTr is infinite dimensional: along ray '" + v.ray_witness +
        "' the kernel keeps dimension " + std::to_string(v.stable_dim) +
        " on every ring; no almost split sequence ends at the presented "
        "representation";
    return out;
  }
  Rep z = cokernel(realize_presentation(m, v.window).proj_morphism()).rep;
  DecompositionReport dec = decompose(z, seed);
  if (dec.parts.size() != 1 || dec.parts[0].multiplicity != 1)
    throw UsageError(
        "almost split sequences end at indecomposable representations; "
        "fprep '" +
        m.name + "' presents a decomposable one");
  if (!dec.all_certified)
    throw UsageError("could not certify the representation presented by '" +
                     m.name + "' as indecomposable");
  AlmostSplit ass = almost_split_sequence(z, seed);
  for (int b : v.window.boundary)
    if (ass.ses.y().dims[b] != 0)
      throw InternalError(
          "the almost split sequence touches the truncation boundary");
  IsoResult xi = is_isomorphic(ass.x, v.rep, seed);
  if (xi.verdict != IsoVerdict::yes)
    throw InternalError(
        "the left-hand term of the sequence disagrees with the certified "
        "translate");
  ArQuiverResult aq = ar_quiver(v.window.q, m.p, seed);
  if (!aq.rep_finite)
    throw InternalError(
        "the truncation window is not representation-finite within the "
        "knitting budget; cannot enumerate the test objects");
  std::vector<std::pair<std::string, Rep>> tests;
  for (const ArNode& n : aq.nodes) {
    bool interior = true;
    for (int b : v.window.boundary)
      if (n.rep.dims[b] != 0) {
        interior = false;
        break;
      }
    if (interior) tests.emplace_back(n.name, n.rep);
  }
  out.cert = verify_ass(ass.ses, tests, seed);
  out.tests = (int)tests.size();
  out.seq = ass.ses;
  out.has_ass = true;
  return out;
}

AssInRep ass_in_rep_minus(const FPRep& m, u64 seed) {
  AssInRep plus;
  try {
    plus = ass_in_rep_plus(m, seed);
  } catch (const NegativeResult& e) {
    throw NegativeResult(mirror_negative(e.what()));
  }
  auto rev = reversed_window(plus.window);
  AssInRep out;
  out.window = plus.window;
  out.window.q = rev;
  if (!plus.has_ass) {
    out.ray_witness = plus.ray_witness;
    out.stable_dim = plus.stable_dim;
    out.witness =
        "TrD of the dual is infinite dimensional: along ray '" +
        plus.ray_witness + "' the kernel keeps dimension " +
        std::to_string(plus.stable_dim) +
        " on every ring; no almost split sequence starts at the dual "
        "representation";
    return out;
  }
  ShortExact dseq = dual_ses(plus.seq, rev);
  ArQuiverResult aq = ar_quiver(rev, m.p, seed);
  if (!aq.rep_finite)
    throw InternalError(
        "the reversed window is not representation-finite within the "
        "knitting budget; cannot enumerate the test objects");
  std::vector<std::pair<std::string, Rep>> tests;
  for (const ArNode& n : aq.nodes) {
    bool interior = true;
    for (int b : out.window.boundary)
      if (n.rep.dims[b] != 0) {
        interior = false;
        break;
      }
    if (interior) tests.emplace_back(n.name, n.rep);
  }
  out.cert = verify_ass(dseq, tests, seed);
  out.tests = (int)tests.size();
  out.seq = dseq;
  out.has_ass = true;
  return out;
}

Rep dual_rep(const Rep& m, std::shared_ptr<const Quiver> rev) {
  std::vector<Mat> mats;
  mats.reserve(m.mats.size());
  for (const Mat& a : m.mats) mats.push_back(a.transpose());
  return Rep(std::move(rev), m.p, m.dims, std::move(mats));
}

RepMorphism dual_morphism(const RepMorphism& f,
                          std::shared_ptr<const Quiver> rev) {
  std::vector<Mat> comps;
  comps.reserve(f.comps().size());
  for (const Mat& c : f.comps()) comps.push_back(c.transpose());
  return RepMorphism(dual_rep(f.dst(), rev), dual_rep(f.src(), rev),
                     std::move(comps));
}

ShortExact dual_ses(const ShortExact& s, std::shared_ptr<const Quiver> rev) {
  return ShortExact(dual_morphism(s.p(), rev), dual_morphism(s.i(), rev));
}

}  // namespace arq
