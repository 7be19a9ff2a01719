#include "arq/subcat.hpp"

#include <algorithm>
#include <sstream>

namespace arq {

namespace {

std::string fmt_dims(const Rep& m) {
  std::ostringstream os;
  os << "[";
  for (size_t v = 0; v < m.dims.size(); ++v) {
    if (v) os << ",";
    os << m.dims[v];
  }
  os << "]";
  return os.str();
}

Membership member_of_gens(const Rep& m,
                          const std::vector<std::pair<std::string, Rep>>& gens,
                          u64 seed) {
  if (m.is_zero()) return {MemberVerdict::yes, ""};
  auto dec = decompose(m, seed);
  if (!dec.all_certified)
    return {MemberVerdict::undetermined,
            "decomposition of " + fmt_dims(m) + " is not fully certified"};
  for (const auto& part : dec.parts) {
    bool hit = false;
    for (const auto& [name, g] : gens) {
      (void)name;
      if (indec_iso(part.rep, g)) {
        hit = true;
        break;
      }
    }
    if (!hit)
      return {MemberVerdict::no, "summand " + fmt_dims(part.rep) +
                                     " is not isomorphic to any generator"};
  }
  return {MemberVerdict::yes, ""};
}

void validate_gens(const std::vector<std::pair<std::string, Rep>>& gens,
                   QuiverPtr q, u32 p, u64 seed) {
  for (const auto& [name, g] : gens) {
    if (g.q != q || g.p != p)
      throw UsageError("generators live over different quivers or primes");
    if (g.is_zero()) throw UsageError("generator '" + name + "' is zero");
    auto dec = decompose(g, seed);
    if (dec.parts.size() != 1 || dec.parts[0].multiplicity != 1)
      throw UsageError("generator '" + name + "' is not indecomposable");
    if (!dec.all_certified)
      throw UsageError(
          "could not certify generator '" + name +
          "' is indecomposable; endomorphism residue field is larger than "
          "the prime field");
  }
}

}  // namespace

SubcatSpec make_subcat(const std::vector<std::pair<std::string, Rep>>& gens,
                       u64 seed) {
  if (gens.empty())
    throw UsageError("a subcategory needs at least one generator");
  SubcatSpec c;
  c.q = gens[0].second.q;
  c.p = gens[0].second.p;
  validate_gens(gens, c.q, c.p, seed);
  c.gens = gens;

  // Extension closure: realize classes of Ext(A, B) for every generator pair
  // and test the middles for membership.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (size_t i = 0; i < gens.size() && c.closure.closed; ++i) {
    for (size_t j = 0; j < gens.size() && c.closure.closed; ++j) {
      auto sp = ext_space(gens[i].second, gens[j].second);
      int d = sp->dim();
      if (d == 0) continue;
      // Proportional classes have isomorphic middles, so membership of the
      // middle only depends on the scale class; one representative per line
      // keeps the check exhaustive whenever there are at most 512 lines.
      u64 lines = 0, pw = 1;
      bool big = false;
      for (int k = 0; k < d && !big; ++k) {
        lines += pw;
        if (lines > 512) big = true;
        pw *= c.p;
      }
      std::vector<Mat> todo;
      if (!big) {
        for (int lead = 0; lead < d; ++lead) {
          Mat coords(c.p, d, 1);
          coords.at(lead, 0) = 1;
          for (;;) {
            todo.push_back(coords);
            int t = lead + 1;
            while (t < d) {
              u32 v = coords.at(t, 0) + 1;
              if (v < c.p) {
                coords.at(t, 0) = v;
                break;
              }
              coords.at(t, 0) = 0;
              ++t;
            }
            if (t == d) break;
          }
        }
      } else {
        c.closure.exhaustive = false;
        c.closure.sampled_warning = true;
        for (int k = 0; k < d; ++k) {
          Mat e(c.p, d, 1);
          e.at(k, 0) = 1;
          todo.push_back(e);
        }
        for (int t = 0; t < 8; ++t) {
          Mat r(c.p, d, 1);
          bool nonzero = false;
          for (int k = 0; k < d; ++k) {
            r.at(k, 0) = (u32)rng.below(c.p);
            if (r.at(k, 0)) nonzero = true;
          }
          if (nonzero) todo.push_back(r);
        }
      }
      for (const auto& coords : todo) {
        auto ses = class_to_ses(class_from_coords(sp, coords));
        auto mem = member_of_gens(ses.y(), gens, seed);
        if (mem.verdict != MemberVerdict::yes) {
          c.closure.closed = false;
          c.closure.witness = "an extension of " + gens[i].first + " by " +
                              gens[j].first + " has middle " +
                              fmt_dims(ses.y()) +
                              " outside the subcategory: " + mem.witness;
          break;
        }
      }
    }
  }
  return c;
}

Membership subcat_member(const Rep& m, const SubcatSpec& c, u64 seed) {
  if (m.q != c.q || m.p != c.p)
    throw UsageError("membership test against a different quiver or prime");
  return member_of_gens(m, c.gens, seed);
}

bool is_ext_projective_in(const Rep& z, const SubcatSpec& c, u64 seed) {
  auto mem = subcat_member(z, c, seed);
  if (mem.verdict != MemberVerdict::yes)
    throw UsageError("Ext-projectivity is asked of members only: " +
                     mem.witness);
  for (const auto& [name, g] : c.gens) {
    (void)name;
    if (ext_space(z, g)->dim() != 0) return false;
  }
  return true;
}

bool is_ext_injective_in(const Rep& l, const SubcatSpec& c, u64 seed) {
  auto mem = subcat_member(l, c, seed);
  if (mem.verdict != MemberVerdict::yes)
    throw UsageError("Ext-injectivity is asked of members only: " +
                     mem.witness);
  for (const auto& [name, g] : c.gens) {
    (void)name;
    if (ext_space(g, l)->dim() != 0) return false;
  }
  return true;
}

namespace {

struct ApproxCopy {
  int gen;
  RepMorphism map;  // gen -> x (right) or x -> gen (left)
};

Approximation build_stable_approx(const Rep& x, const SubcatSpec& c, u64 seed,
                                  bool right) {
  (void)seed;
  std::vector<StableHom> target;
  target.reserve(c.gens.size());
  for (const auto& [name, g] : c.gens) {
    (void)name;
    target.push_back(right ? stable_hom_inj(g, x) : stable_hom_proj(x, g));
  }
  std::vector<ApproxCopy> copies;
  for (size_t gi = 0; gi < c.gens.size(); ++gi)
    for (const auto& f : target[gi].reps())
      copies.push_back({(int)gi, f});

  auto assemble = [&](const std::vector<int>& idx) -> RepMorphism {
    if (idx.empty()) {
      Rep z0 = zero_rep(x.q, x.p);
      return right ? zero_morphism(z0, x) : zero_morphism(x, z0);
    }
    std::vector<RepMorphism> maps;
    maps.reserve(idx.size());
    for (int k : idx) maps.push_back(copies[k].map);
    return right ? from_sum(maps) : into_sum(maps);
  };
  // The composition map onto the stable homs at generator gi stays onto.
  auto ok_at = [&](const RepMorphism& u, size_t gi) -> bool {
    int d = target[gi].dim();
    if (d == 0) return true;
    const Rep& g = c.gens[gi].second;
    auto hb = right ? hom_basis(g, u.src()) : hom_basis(u.dst(), g);
    Mat cols(c.p, d, (int)hb.size());
    for (size_t k = 0; k < hb.size(); ++k) {
      Mat cm = target[gi].coords_mod(right ? compose(u, hb[k])
                                           : compose(hb[k], u));
      for (int r = 0; r < d; ++r) cols.at(r, (int)k) = cm.at(r, 0);
    }
    return rank(cols) == d;
  };
  auto ok_all = [&](const RepMorphism& u) {
    for (size_t gi = 0; gi < c.gens.size(); ++gi)
      if (!ok_at(u, gi)) return false;
    return true;
  };

  std::vector<int> idx(copies.size());
  for (size_t k = 0; k < copies.size(); ++k) idx[k] = (int)k;
  if (!ok_all(assemble(idx)))
    throw InternalError("stable approximation construction is not onto");

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t t = 0; t < idx.size();) {
      std::vector<int> rest = idx;
      rest.erase(rest.begin() + (long)t);
      if (ok_all(assemble(rest))) {
        idx = rest;
        changed = true;
      } else {
        ++t;
      }
    }
  }

  Approximation out;
  out.map = assemble(idx);
  for (int k : idx) out.summand_gens.push_back(copies[k].gen);
  out.minimal = true;
  std::ostringstream w;
  for (size_t t = 0; t < idx.size(); ++t) {
    std::vector<int> rest = idx;
    rest.erase(rest.begin() + (long)t);
    RepMorphism v = assemble(rest);
    size_t bad = c.gens.size();
    for (size_t gi = 0; gi < c.gens.size(); ++gi)
      if (!ok_at(v, gi)) {
        bad = gi;
        break;
      }
    if (bad == c.gens.size()) {
      out.minimal = false;
      w << "copy " << t << " of " << c.gens[copies[idx[t]].gen].first
        << " is removable; ";
    } else {
      w << "dropping copy " << t << " of " << c.gens[copies[idx[t]].gen].first
        << " loses the stable homs at " << c.gens[bad].first << "; ";
    }
  }
  out.witness = w.str();
  return out;
}

}  // namespace

Approximation right_stable_approx(const Rep& x, const SubcatSpec& c,
                                  u64 seed) {
  if (x.q != c.q || x.p != c.p)
    throw UsageError("approximation against a different quiver or prime");
  return build_stable_approx(x, c, seed, true);
}

Approximation left_stable_approx(const Rep& x, const SubcatSpec& c, u64 seed) {
  if (x.q != c.q || x.p != c.p)
    throw UsageError("approximation against a different quiver or prime");
  return build_stable_approx(x, c, seed, false);
}

SubcatAss subcat_ass(const Rep& z, const SubcatSpec& c, u64 seed) {
  auto mem = subcat_member(z, c, seed);
  if (mem.verdict != MemberVerdict::yes)
    throw UsageError(
        "almost split sequences in a subcategory end at members; " +
        (mem.witness.empty() ? std::string("membership failed")
                             : mem.witness));
  if (!c.closure.closed)
    throw UsageError("the subcategory is not extension-closed: " +
                     c.closure.witness);
  auto dec = decompose(z, seed);
  if (dec.parts.size() != 1 || dec.parts[0].multiplicity != 1)
    throw UsageError(
        "almost split sequences end at indecomposable representations; this "
        "one decomposes");

  SubcatAss out;
  if (is_projective_rep(z)) {
    out.ext_projective = true;
    out.reason = "projective in the ambient category";
    if (!is_ext_projective_in(z, c, seed))
      throw InternalError(
          "a projective member fails the Ext-projectivity test");
    return out;
  }

  Rep x = dtr(z, seed);
  auto ap = right_stable_approx(x, c, seed);
  Rep m = ap.map.src();
  if (m.is_zero()) {
    out.ext_projective = true;
    out.reason = "the stable approximation of the translate vanishes";
    if (!is_ext_projective_in(z, c, seed))
      throw InternalError(
          "vanishing approximation contradicts a nonzero Ext against a "
          "generator");
    return out;
  }
  if (is_ext_projective_in(z, c, seed))
    throw InternalError(
        "nonzero approximation contradicts vanishing Ext against every "
        "generator");

  auto dm = decompose(m, seed);
  if (dm.parts.size() != 1 || dm.parts[0].multiplicity != 1 ||
      !dm.all_certified)
    throw InternalError(
        "minimal stable approximation of the translate is not "
        "indecomposable");

  auto sp_m = ext_space(z, m);
  auto sp_x = ext_space(z, x);
  Mat phi = pushout_matrix(ap.map, sp_m, sp_x);
  if (rank(phi) != sp_m->dim())
    throw InternalError(
        "pushout along the approximation is not injective on extension "
        "classes");

  auto amb = almost_split_sequence(z, seed);
  Mat delta = ses_to_class(sp_x, amb.ses).coords;

  // Candidate images for the lifted class: the socle class itself, then its
  // translates under End(z), then seeded random translates.
  std::vector<Mat> targets{delta};
  auto push_target = [&](const Mat& t) {
    if (t.is_zero()) return;
    for (const auto& old : targets)
      if (old == t) return;
    targets.push_back(t);
  };
  EndAlgebra ez = end_algebra(z);
  for (int i = 0; i < ez.dim(); ++i)
    push_target(pullback_matrix(sp_x, ez.basis[i], sp_x) * delta);
  Rng rng(seed ^ 0xa076bc4d21f5e3c9ull);
  for (int trial = 0; trial < 64; ++trial) {
    Mat co(c.p, ez.dim(), 1);
    for (int r = 0; r < ez.dim(); ++r) co.at(r, 0) = (u32)rng.below(c.p);
    push_target(pullback_matrix(sp_x, ez.element(co), sp_x) * delta);
  }

  for (const auto& t : targets) {
    auto sol = solve(phi, t);
    if (!sol || sol->is_zero()) continue;
    ExtClass eta = class_from_coords(sp_m, *sol);
    ShortExact ses = class_to_ses(eta);
    Membership mid = member_of_gens(ses.y(), c.gens, seed);
    if (mid.verdict != MemberVerdict::yes) continue;
    AssCertificate cert = verify_ass(ses, c.gens, seed);
    if (!cert.ok()) continue;
    out.ass = AlmostSplit{m, ses, eta};
    out.cert = cert;
    out.middle = mid;
    return out;
  }
  throw InternalError(
      "could not realize the almost split sequence in the subcategory "
      "ending at this representation");
}

TorsionPair make_torsion_pair(
    const std::vector<std::pair<std::string, Rep>>& torsion,
    const std::vector<std::pair<std::string, Rep>>& torsion_free) {
  if (torsion.empty() && torsion_free.empty())
    throw UsageError("a torsion pair needs at least one generator");
  TorsionPair tp;
  const Rep& first =
      torsion.empty() ? torsion_free[0].second : torsion[0].second;
  tp.q = first.q;
  tp.p = first.p;
  validate_gens(torsion, tp.q, tp.p, 0);
  validate_gens(torsion_free, tp.q, tp.p, 0);
  for (const auto& [tn, t] : torsion)
    for (const auto& [fn, f] : torsion_free)
      if (hom_dim(t, f) != 0)
        throw UsageError("not a torsion pair: Hom(" + tn + ", " + fn +
                         ") is nonzero");
  tp.torsion = torsion;
  tp.torsion_free = torsion_free;
  return tp;
}

namespace {

SubRep subrep_from_spans(const Rep& x, const std::vector<Mat>& spans) {
  int nv = (int)x.dims.size();
  std::vector<int> dims(nv);
  std::vector<Mat> basis(nv);
  for (int v = 0; v < nv; ++v) {
    basis[v] = column_space(spans[v]).basis;
    dims[v] = basis[v].cols;
  }
  std::vector<Mat> mats;
  for (int a = 0; a < x.q->num_arrows(); ++a) {
    auto ar = x.q->arrow(a);
    auto sol = solve(basis[ar.tgt], x.mat(a) * basis[ar.src]);
    if (!sol) throw InternalError("trace span is not arrow-stable");
    mats.push_back(*sol);
  }
  Rep sub(x.q, x.p, dims, mats);
  return {sub, RepMorphism(sub, x, basis)};
}

}  // namespace

SubRep torsion_part(const Rep& x, const TorsionPair& tp) {
  if (x.q != tp.q || x.p != tp.p)
    throw UsageError("torsion part against a different quiver or prime");
  int nv = (int)x.dims.size();
  std::vector<Mat> spans(nv);
  for (int v = 0; v < nv; ++v) spans[v] = Mat(x.p, x.dims[v], 0);
  SubRep cur = subrep_from_spans(x, spans);
  // Iterated trace: add lifts of the generator trace in the quotient until
  // nothing new appears. Morphism images land back in the trace, so each
  // round either grows the subrepresentation or stops.
  for (;;) {
    QuotRep quo = cokernel(cur.incl);
    bool grew = false;
    std::vector<Mat> next(nv);
    for (int v = 0; v < nv; ++v) next[v] = cur.incl.comp(v);
    for (const auto& [name, t] : tp.torsion) {
      (void)name;
      for (const auto& h : hom_basis(t, quo.rep)) {
        for (int v = 0; v < nv; ++v) {
          if (h.comp(v).cols == 0 || h.comp(v).is_zero()) continue;
          auto lift = solve(quo.proj.comp(v), h.comp(v));
          if (!lift)
            throw InternalError("quotient projection failed to lift a trace");
          next[v] = hstack(next[v], *lift);
          grew = true;
        }
      }
    }
    if (!grew) return cur;
    SubRep bigger = subrep_from_spans(x, next);
    if (bigger.rep.total_dim() == cur.rep.total_dim()) return cur;
    cur = bigger;
  }
}

TorsionSeq canonical_seq(const Rep& x, const TorsionPair& tp, u64 seed) {
  SubRep t = torsion_part(x, tp);
  QuotRep f = cokernel(t.incl);
  return {ShortExact(t.incl, f.proj),
          member_of_gens(t.rep, tp.torsion, seed),
          member_of_gens(f.rep, tp.torsion_free, seed)};
}

TorsionTransfer transfer_torsion_side(const ShortExact& s,
                                      const TorsionPair& tp, u64 seed) {
  auto memz = member_of_gens(s.z(), tp.torsion, seed);
  if (memz.verdict != MemberVerdict::yes)
    throw UsageError("the right-hand term is not in the torsion class: " +
                     (memz.witness.empty() ? std::string("membership failed")
                                           : memz.witness));
  SubRep tx = torsion_part(s.x(), tp);
  if (tx.rep.is_zero())
    throw NegativeResult(
        "the torsion part of the left-hand term vanishes; the right-hand "
        "term is Ext-projective in the torsion class");
  SubRep ty = torsion_part(s.y(), tp);
  auto it = factor_right(ty.incl, compose(s.i(), tx.incl));
  if (!it)
    throw InternalError(
        "the monomorphism does not restrict to the torsion parts");
  RepMorphism pt = compose(s.p(), ty.incl);
  ShortExact seq = [&] {
    try {
      return ShortExact(*it, pt);
    } catch (const UsageError& e) {
      throw NegativeResult(
          std::string("restricting to the torsion parts is not exact: ") +
          e.what());
    }
  }();
  return {seq, verify_ass(seq, tp.torsion, seed)};
}

TorsionTransfer transfer_free_side(const ShortExact& s, const TorsionPair& tp,
                                   u64 seed) {
  auto memx = member_of_gens(s.x(), tp.torsion_free, seed);
  if (memx.verdict != MemberVerdict::yes)
    throw UsageError("the left-hand term is not in the torsion-free class: " +
                     (memx.witness.empty() ? std::string("membership failed")
                                           : memx.witness));
  QuotRep fy = cokernel(torsion_part(s.y(), tp).incl);
  QuotRep fz = cokernel(torsion_part(s.z(), tp).incl);
  if (fz.rep.is_zero())
    throw NegativeResult(
        "the torsion-free part of the right-hand term vanishes; the "
        "left-hand term is Ext-injective in the torsion-free class");
  RepMorphism fi = compose(fy.proj, s.i());
  int nv = (int)s.y().dims.size();
  std::vector<Mat> comps(nv);
  for (int v = 0; v < nv; ++v)
    comps[v] =
        fz.proj.comp(v) * (s.p().comp(v) * fy.coords[v].section_basis());
  for (int v = 0; v < nv; ++v)
    if (comps[v] * fy.proj.comp(v) != fz.proj.comp(v) * s.p().comp(v))
      throw InternalError(
          "the epimorphism does not descend to the torsion-free quotients");
  RepMorphism fp(fy.rep, fz.rep, comps);
  ShortExact seq = [&] {
    try {
      return ShortExact(fi, fp);
    } catch (const UsageError& e) {
      throw NegativeResult(
          std::string("passing to the torsion-free quotients is not exact: ") +
          e.what());
    }
  }();
  return {seq, verify_ass(seq, tp.torsion_free, seed)};
}

}  // namespace arq
