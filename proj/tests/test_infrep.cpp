#include "doctest.h"

#include <algorithm>

#include "arq/infrep.hpp"

using namespace arq;

namespace {

std::shared_ptr<const RayQuiver> one_ray() {
  Quiver core("pt", {"0"}, {});
  return std::make_shared<RayQuiver>(
      "aray", core,
      std::vector<std::pair<std::string, std::string>>{{"t", "0"}});
}

std::shared_ptr<const RayQuiver> two_ray() {
  Quiver core("pt", {"0"}, {});
  return std::make_shared<RayQuiver>(
      "vee", core,
      std::vector<std::pair<std::string, std::string>>{{"r1", "0"},
                                                       {"r2", "0"}});
}

std::shared_ptr<const RayQuiver> a3_core() {
  Quiver core("a3", {"1", "2", "3"},
              {{"a", "1", "2"}, {"b", "2", "3"}});
  return std::make_shared<RayQuiver>(
      "a3r", core, std::vector<std::pair<std::string, std::string>>{});
}

std::shared_ptr<const RayQuiver> k2_core() {
  Quiver core("k2", {"1", "2"}, {{"u", "1", "2"}, {"v", "1", "2"}});
  return std::make_shared<RayQuiver>(
      "k2r", core, std::vector<std::pair<std::string, std::string>>{});
}

PathTerm arrow_term(std::string id, long long c = 1) {
  PathTerm t;
  t.coeff = c;
  t.arrows = {std::move(id)};
  return t;
}

PathTerm trivial_term(std::string at, long long c = 1) {
  PathTerm t;
  t.coeff = c;
  t.trivial = true;
  t.trivial_at = std::move(at);
  return t;
}

FPRepDecl simple_decl(std::string p0v, std::string p1v, std::string arrow) {
  FPRepDecl d;
  d.name = "m";
  d.p0 = {std::move(p0v)};
  d.p1 = {std::move(p1v)};
  d.entries[{0, 0}] = {arrow_term(std::move(arrow))};
  return d;
}

// Nonzero dimensions keyed by vertex name; comparable across windows.
std::vector<std::pair<std::string, int>> support_of(const Rep& m) {
  std::vector<std::pair<std::string, int>> out;
  for (int v = 0; v < m.q->num_vertices(); ++v)
    if (m.dims[v]) out.emplace_back(m.q->vertex_name(v), m.dims[v]);
  std::sort(out.begin(), out.end());
  return out;
}

using Supp = std::vector<std::pair<std::string, int>>;

bool iso_to(const Rep& m, const Rep& n) {
  return is_isomorphic(m, n, 7).verdict == IsoVerdict::yes;
}

}  // namespace

TEST_SUITE_BEGIN("infrep");

TEST_CASE("cokernels of ray presentations") {
  auto rq = one_ray();

  FPRepDecl d = simple_decl("t.2", "t.1", "t.a2");
  FPRep m = make_fprep(rq, 7, d);
  CHECK(m.minimal);
  CHECK(m.max_level == 2);
  CHECK(m.min_depth() == 3);
  CHECK(support_of(coker_rep(m)) == Supp{{"t.2", 1}});
  CHECK(support_of(coker_rep(m, 6)) == Supp{{"t.2", 1}});

  FPRepDecl dp;
  dp.name = "proj";
  dp.p0 = {"t.1"};
  FPRep mp = make_fprep(rq, 7, dp);
  CHECK(mp.minimal);
  CHECK(support_of(coker_rep(mp)) == Supp{{"0", 1}, {"t.1", 1}});

  FPRepDecl di;
  di.name = "ident";
  di.p0 = {"0"};
  di.p1 = {"0"};
  di.entries[{0, 0}] = {trivial_term("0")};
  FPRep mi = make_fprep(rq, 7, di);
  CHECK_FALSE(mi.minimal);
  CHECK(mi.minimal_reason.find("radical") != std::string::npos);
  CHECK(coker_rep(mi).is_zero());

  try {
    coker_rep(m, 2);
    CHECK(false);
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("at least 3") != std::string::npos);
  }
}

TEST_CASE("single ray translate is finite with a certified stabilization") {
  FPRep m = make_fprep(one_ray(), 7, simple_decl("t.1", "0", "t.a1"));
  CHECK(m.minimal);
  CHECK(m.auto_depth() == 3);

  DtrVerdict v = dtr_inf(m, 0, 7);
  CHECK(v.finite);
  CHECK(v.depth == 3);
  CHECK(v.ray_witness.empty());
  CHECK(support_of(v.rep) == Supp{{"0", 1}});
  REQUIRE(v.certificates.size() == 1);
  CHECK(v.certificates[0].ray == "t");
  CHECK(v.certificates[0].ring == 2);
  CHECK(v.certificates[0].blocks_equal);
  CHECK(v.certificates[0].stable_dim == 0);

  // The window restriction of the translate must agree with the finite
  // engine applied to the restricted cokernel.
  Rep z = cokernel(realize_presentation(m, v.window).proj_morphism()).rep;
  CHECK(support_of(z) == Supp{{"t.1", 1}});
  CHECK(iso_to(v.rep, dtr(z, 7)));
}

TEST_CASE("single ray almost split sequence with interior tests") {
  FPRep m = make_fprep(one_ray(), 7, simple_decl("t.1", "0", "t.a1"));
  AssInRep a = ass_in_rep_plus(m, 7);
  REQUIRE(a.has_ass);
  CHECK(a.cert.ok());
  CHECK(a.tests == 6);
  CHECK(support_of(a.seq.x()) == Supp{{"0", 1}});
  CHECK(support_of(a.seq.y()) == Supp{{"0", 1}, {"t.1", 1}});
  CHECK(support_of(a.seq.z()) == Supp{{"t.1", 1}});
}

TEST_CASE("two rays give an infinite translate with a ray witness") {
  FPRep m = make_fprep(two_ray(), 7, simple_decl("r1.1", "0", "r1.a1"));
  CHECK(m.minimal);

  DtrVerdict v = dtr_inf(m, 0, 7);
  CHECK_FALSE(v.finite);
  CHECK(v.ray_witness == "r2");
  CHECK(v.stable_dim == 1);
  REQUIRE(v.certificates.size() == 2);
  CHECK(v.certificates[0].ray == "r1");
  CHECK(v.certificates[0].blocks_equal);
  CHECK(v.certificates[0].stable_dim == 0);
  CHECK(v.certificates[1].ray == "r2");
  CHECK(v.certificates[1].blocks_equal);
  CHECK(v.certificates[1].stable_dim == 1);

  AssInRep a = ass_in_rep_plus(m, 7);
  CHECK_FALSE(a.has_ass);
  CHECK(a.ray_witness == "r2");
  CHECK(a.stable_dim == 1);
  CHECK(a.witness.find("r2") != std::string::npos);
  CHECK(a.witness.find("no almost split sequence") != std::string::npos);
}

TEST_CASE("verdicts do not depend on the window depth") {
  FPRep fin = make_fprep(one_ray(), 7, simple_decl("t.1", "0", "t.a1"));
  FPRep inf = make_fprep(two_ray(), 7, simple_decl("r1.1", "0", "r1.a1"));
  for (int depth : {4, 5, 6}) {
    DtrVerdict vf = dtr_inf(fin, depth, 7);
    CHECK(vf.finite);
    CHECK(support_of(vf.rep) == Supp{{"0", 1}});
    for (const RayCertificate& c : vf.certificates) CHECK(c.blocks_equal);

    DtrVerdict vi = dtr_inf(inf, depth, 7);
    CHECK_FALSE(vi.finite);
    CHECK(vi.ray_witness == "r2");
    CHECK(vi.stable_dim == 1);
  }
}

TEST_CASE("pure core presentations agree with the finite engine") {
  FPRep m = make_fprep(a3_core(), 7, simple_decl("2", "3", "b"));
  CHECK(m.minimal);
  CHECK(m.max_level == 0);
  CHECK(support_of(coker_rep(m)) == Supp{{"2", 1}});

  DtrVerdict v = dtr_inf(m, 0, 7);
  CHECK(v.finite);
  CHECK(v.certificates.empty());
  CHECK(support_of(v.rep) == Supp{{"3", 1}});

  Rep z = cokernel(realize_presentation(m, v.window).proj_morphism()).rep;
  CHECK(iso_to(v.rep, dtr(z, 7)));

  AssInRep a = ass_in_rep_plus(m, 7);
  REQUIRE(a.has_ass);
  CHECK(a.cert.ok());
  CHECK(a.tests == 6);
  CHECK(support_of(a.seq.y()) == Supp{{"2", 1}, {"3", 1}});
  AlmostSplit amb = almost_split_sequence(z, 7);
  CHECK(iso_to(a.seq.y(), amb.ses.y()));
}

TEST_CASE("multi-path entries and signed coefficients") {
  auto rq = k2_core();
  FPRepDecl d;
  d.name = "reg";
  d.p0 = {"1"};
  d.p1 = {"2"};
  d.entries[{0, 0}] = {arrow_term("u"), arrow_term("v", 2)};
  FPRep m = make_fprep(rq, 5, d);
  CHECK(m.minimal);
  CHECK(support_of(coker_rep(m)) == Supp{{"1", 1}, {"2", 1}});

  // The regular Kronecker modules are fixed by the translate.
  DtrVerdict v = dtr_inf(m, 0, 7);
  CHECK(v.finite);
  CHECK(support_of(v.rep) == Supp{{"1", 1}, {"2", 1}});
  Rep z = cokernel(realize_presentation(m, v.window).proj_morphism()).rep;
  CHECK(iso_to(v.rep, dtr(z, 7)));

  // -2 and 3 are the same scalar mod 5, down to the realized coefficients.
  FPRepDecl dn = d;
  dn.entries[{0, 0}] = {arrow_term("u"), arrow_term("v", -2)};
  FPRepDecl dp = d;
  dp.entries[{0, 0}] = {arrow_term("u"), arrow_term("v", 3)};
  Truncation tr = truncate(*rq, 1);
  CHECK(realize_presentation(make_fprep(rq, 5, dn), tr).coeff ==
        realize_presentation(make_fprep(rq, 5, dp), tr).coeff);
}

TEST_CASE("malformed and non-minimal presentations are rejected") {
  auto rq = one_ray();

  FPRepDecl unknown;
  unknown.name = "u";
  unknown.p0 = {"x"};
  CHECK_THROWS_AS(make_fprep(rq, 7, unknown), UsageError);

  FPRepDecl empty0;
  empty0.name = "e";
  empty0.p1 = {"0"};
  CHECK_THROWS_AS(make_fprep(rq, 7, empty0), UsageError);

  FPRepDecl range;
  range.name = "r";
  range.p0 = {"t.1"};
  range.p1 = {"0"};
  range.entries[{0, 1}] = {arrow_term("t.a1")};
  CHECK_THROWS_AS(make_fprep(rq, 7, range), UsageError);

  FPRepDecl badpath = simple_decl("t.1", "0", "t.a2");
  CHECK_THROWS_AS(make_fprep(rq, 7, badpath), UsageError);

  FPRepDecl zero;  // only the zero map P(t.1) -> P(0) exists
  zero.name = "z";
  zero.p0 = {"0"};
  zero.p1 = {"t.1"};
  FPRep mz = make_fprep(rq, 7, zero);
  CHECK_FALSE(mz.minimal);
  CHECK(mz.minimal_reason.find("kernel") != std::string::npos);
  CHECK_THROWS_AS(dtr_inf(mz, 0, 7), UsageError);

  FPRep ok = make_fprep(rq, 7, simple_decl("t.1", "0", "t.a1"));
  try {
    dtr_inf(ok, 2, 7);
    CHECK(false);
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("at least 3") != std::string::npos);
  }
}

TEST_CASE("projective and decomposable cokernels are gated") {
  auto rq = one_ray();

  FPRepDecl dp;
  dp.name = "proj";
  dp.p0 = {"t.1"};
  FPRep mp = make_fprep(rq, 7, dp);
  try {
    dtr_inf(mp, 0, 7);
    CHECK(false);
  } catch (const NegativeResult& e) {
    CHECK(std::string(e.what()).find("P(t.1)") != std::string::npos);
  }

  // Simple plus a projective summand: rejected by the summand scan.
  FPRepDecl dmix;
  dmix.name = "mix";
  dmix.p0 = {"t.1", "0"};
  dmix.p1 = {"0"};
  dmix.entries[{0, 0}] = {arrow_term("t.a1")};
  FPRep mmix = make_fprep(rq, 7, dmix);
  CHECK(mmix.minimal);
  try {
    dtr_inf(mmix, 0, 7);
    CHECK(false);
  } catch (const NegativeResult& e) {
    CHECK(std::string(e.what()).find("P(0)") != std::string::npos);
  }

  // Two simples: the translate exists but no single sequence ends there.
  FPRepDecl dsum;
  dsum.name = "sum";
  dsum.p0 = {"t.1", "t.2"};
  dsum.p1 = {"0", "t.1"};
  dsum.entries[{0, 0}] = {arrow_term("t.a1")};
  dsum.entries[{1, 1}] = {arrow_term("t.a2")};
  FPRep msum = make_fprep(rq, 7, dsum);
  CHECK(msum.minimal);
  CHECK(dtr_inf(msum, 0, 7).finite);
  CHECK_THROWS_AS(ass_in_rep_plus(msum, 7), UsageError);
}

TEST_CASE("arrow reversal computes the dual translate") {
  FPRep m = make_fprep(one_ray(), 7, simple_decl("t.1", "0", "t.a1"));

  DtrVerdict v = trd_inf(m, 0, 7);
  CHECK(v.finite);
  CHECK(support_of(v.rep) == Supp{{"0", 1}});
  int ai = v.window.q->arrow_index("t.a1");
  REQUIRE(ai >= 0);
  CHECK(v.window.q->vertex_name(v.window.q->arrow(ai).src) == "0");
  CHECK(v.window.q->vertex_name(v.window.q->arrow(ai).tgt) == "t.1");

  AssInRep a = ass_in_rep_minus(m, 7);
  REQUIRE(a.has_ass);
  CHECK(a.cert.ok());
  CHECK(a.tests == 6);
  CHECK(support_of(a.seq.x()) == Supp{{"t.1", 1}});
  CHECK(support_of(a.seq.y()) == Supp{{"0", 1}, {"t.1", 1}});
  CHECK(support_of(a.seq.z()) == Supp{{"0", 1}});

  FPRep inf = make_fprep(two_ray(), 7, simple_decl("r1.1", "0", "r1.a1"));
  AssInRep ainf = ass_in_rep_minus(inf, 7);
  CHECK_FALSE(ainf.has_ass);
  CHECK(ainf.ray_witness == "r2");
  CHECK(ainf.witness.find("starts at the dual") != std::string::npos);

  FPRepDecl dp;
  dp.name = "proj";
  dp.p0 = {"t.1"};
  FPRep mp = make_fprep(one_ray(), 7, dp);
  try {
    trd_inf(mp, 0, 7);
    CHECK(false);
  } catch (const NegativeResult& e) {
    std::string msg = e.what();
    CHECK(msg.find("TrD undefined") != std::string::npos);
    CHECK(msg.find("I(t.1)") != std::string::npos);
  }
}

TEST_CASE("dualizing twice restores a representation") {
  FPRep m = make_fprep(one_ray(), 7, simple_decl("t.2", "t.1", "t.a2"));
  Truncation tr = truncate(*m.rq, 4);
  Rep z = cokernel(realize_presentation(m, tr).proj_morphism()).rep;
  auto rev = std::make_shared<Quiver>(reversed(*tr.q, "rev"));
  Rep d = dual_rep(z, rev);
  CHECK(d.dims == z.dims);
  auto back = std::make_shared<Quiver>(reversed(*rev, "back"));
  Rep dd = dual_rep(d, back);
  for (size_t i = 0; i < z.mats.size(); ++i) CHECK(dd.mats[i] == z.mats[i]);
}

TEST_CASE("fprep declarations from a document drive the pipeline") {
  Document doc = parse_document(
      "rayquiver R { vertices 0; ray t: into 0 }\n"
      "fprep M over R { p0 t.1; p1 0; entry 0 0 = t.a1; }\n",
      "in.arq");
  FPRep m = make_fprep(doc.rayquivers.at("R"), 7, doc.fpreps.at("M"));
  CHECK(m.minimal);
  DtrVerdict v = dtr_inf(m, 0, 7);
  CHECK(v.finite);
  CHECK(support_of(v.rep) == Supp{{"0", 1}});
}

TEST_SUITE_END();
