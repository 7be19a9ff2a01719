#pragma once

#include "arq/ext.hpp"

// The Auslander-Reiten translate and its consequences: path-coefficient
// morphisms between sums of projectives, the Nakayama correspondence onto
// sums of injectives, DTr and TrD, almost split sequences with checkable
// certificates, the AR quiver by knitting, and the duality bookkeeping
// between Ext and stable Hom spaces.

namespace arq {

// A morphism between finite sums of indecomposable projectives stored by its
// path coefficients: entry (i, j) is a combination of the paths from
// dst_verts[j] to src_verts[i] (the Hom basis of P_src[i] -> P_dst[j]).
// The same coefficients also name a morphism between the matching sums of
// injectives; transporting them across is the Nakayama functor.
struct ProjMap {
  QuiverPtr q;
  u32 p = 0;
  std::vector<int> src_verts, dst_verts;
  // coeff[i][j][k]: coefficient of the k-th path in paths(dst_verts[j],
  // src_verts[i]), canonical path order.
  std::vector<std::vector<std::vector<u32>>> coeff;

  // Realize on sums of projectives: sum P_src -> sum P_dst.
  RepMorphism proj_morphism() const;
  // Realize on sums of injectives with the same coefficients.
  RepMorphism inj_morphism() const;
};

// Read a morphism of projective sums off into path coefficients (lossless).
ProjMap proj_map_of(const ProjSum& src, const ProjSum& dst,
                    const RepMorphism& f);
// Read a morphism of injective sums off into the same coefficient format
// (lossless); realizing with proj_morphism inverts the Nakayama transport.
ProjMap proj_map_of_inj(const InjSum& src, const InjSum& dst,
                        const RepMorphism& g);

RepMorphism nakayama(const ProjMap& pm);

// DTr: kernel of the Nakayama transport of a minimal projective presentation.
// Rejects representations with a projective direct summand, naming one.
Rep dtr(const Rep& m, u64 seed = 0);
// TrD: cokernel of the inverse transport of a minimal injective
// copresentation. Rejects injective direct summands, naming one.
Rep trd(const Rep& m, u64 seed = 0);

struct AlmostSplit {
  Rep x;  // dtr of the right end
  ShortExact ses;
  ExtClass cls;
};

// The almost split sequence ending at an indecomposable non-projective z:
// the unique class killed by the radicals of End(dtr z) and End(z) on the
// two sides, realized as a sequence.
AlmostSplit almost_split_sequence(const Rep& z, u64 seed = 0);

struct AssTestLine {
  std::string name;
  // Right property at this test object: maps L -> z that are not split epis
  // lift through the middle.
  bool right_ok = false;
  // Left property: maps x -> L that are not split monos extend through i.
  bool left_ok = false;
};

struct AssCertificate {
  bool nonsplit = false;
  bool end_x_local = false;
  bool end_z_local = false;
  std::vector<AssTestLine> tests;
  bool minimal = false;
  // p composed with each copy inclusion of the middle is nonzero.
  std::vector<bool> middle_summand_hit;
  std::string failure;  // first failed check, empty when ok

  bool ok() const;
};

// Check the defining properties of an almost split sequence against a list
// of named indecomposable test objects.
AssCertificate verify_ass(const ShortExact& s,
                          const std::vector<std::pair<std::string, Rep>>& tests,
                          u64 seed = 0);

struct ArNode {
  std::string name;
  Rep rep;
  int orbit = 0;  // index of the starting projective's vertex
  int power = 0;  // number of TrD steps from the projective
  bool projective_node = false;
  bool injective_node = false;
};

struct ArArrow {
  int from = 0, to = 0;
  int mult = 1;
};

struct ArQuiverResult {
  bool rep_finite = false;
  std::vector<ArNode> nodes;
  std::vector<ArArrow> arrows;
  std::vector<std::pair<int, int>> tau;  // (node of z, node of dtr z)
  std::string witness;  // set when the node budget is exhausted
};

// Knit the AR quiver by following TrD orbits out of each projective until
// the injectives are reached; arrows come from the middles of almost split
// sequences and from radicals of projectives.
ArQuiverResult ar_quiver(QuiverPtr q, u32 p, u64 seed = 0, int budget = 400);
std::string ar_quiver_dot(const ArQuiverResult& aq);

struct DualityLine {
  std::string name;
  int ext_z_l = 0;       // dim Ext(z, L)
  int hombar_l_x = 0;    // dim Hom-bar(L, dtr z)
  int ext_l_x = 0;       // dim Ext(L, dtr z)
  int homunder_z_l = 0;  // dim Hom-under(z, L)
  bool ok = false;
};

struct DualityReport {
  Rep z, x;
  std::vector<DualityLine> lines;
  bool all_ok = false;
};

DualityReport duality_report(
    const Rep& z, const std::vector<std::pair<std::string, Rep>>& tests,
    u64 seed = 0);

}  // namespace arq
