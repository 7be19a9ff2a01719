#pragma once

#include "arq/artrans.hpp"

// Additively generated subcategories: extension-closure certification,
// membership, Ext-projectives, minimal stable approximations, almost split
// sequences relative to a subcategory, and torsion pairs with their
// canonical sequences and sequence transfer.

namespace arq {

struct ClosureReport {
  bool closed = true;
  // True when every nonzero class of every generator pair was realized
  // (class count per pair at most 512); otherwise only a basis plus seeded
  // samples were checked and sampled_warning is set.
  bool exhaustive = true;
  bool sampled_warning = false;
  std::string witness;  // first offending extension when not closed
};

struct SubcatSpec {
  QuiverPtr q;
  u32 p = 0;
  std::vector<std::pair<std::string, Rep>> gens;  // certified indecomposable
  ClosureReport closure;
};

// Validates the generators (indecomposable, one setting) and runs the
// extension-closure check; the result is recorded, not thrown.
SubcatSpec make_subcat(const std::vector<std::pair<std::string, Rep>>& gens,
                       u64 seed = 0);

enum class MemberVerdict { yes, no, undetermined };

struct Membership {
  MemberVerdict verdict = MemberVerdict::undetermined;
  std::string witness;  // reason for no / undetermined
};

// A representation belongs to the subcategory when every indecomposable
// summand is isomorphic to a generator. The zero representation belongs.
Membership subcat_member(const Rep& m, const SubcatSpec& c, u64 seed = 0);

// Ext(z, L) = 0 (resp. Ext(G, l) = 0) against every generator; the argument
// must be a member.
bool is_ext_projective_in(const Rep& z, const SubcatSpec& c, u64 seed = 0);
bool is_ext_injective_in(const Rep& l, const SubcatSpec& c, u64 seed = 0);

struct Approximation {
  // Right: map.src() is the approximating sum and map lands in x.
  // Left: map.dst() is the approximating sum.
  RepMorphism map;
  std::vector<int> summand_gens;  // generator index of each surviving copy
  bool minimal = false;
  std::string witness;  // per-copy reason removal fails, or why not minimal
};

// Minimal right (left) approximation in the stable category: built from
// coset representatives of Hom-bar (Hom-under), then greedily stripped while
// the induced map onto every stable Hom space stays surjective.
Approximation right_stable_approx(const Rep& x, const SubcatSpec& c,
                                  u64 seed = 0);
Approximation left_stable_approx(const Rep& x, const SubcatSpec& c,
                                 u64 seed = 0);

struct SubcatAss {
  bool ext_projective = false;
  std::string reason;  // set when ext_projective
  AlmostSplit ass;     // relative sequence (left term in the subcategory)
  AssCertificate cert;
  Membership middle;
};

// Almost split sequence ending at z inside the subcategory: the socle class
// of the ambient sequence lifted through the minimal right stable
// approximation of DTr z, verified against the generators.
SubcatAss subcat_ass(const Rep& z, const SubcatSpec& c, u64 seed = 0);

struct TorsionPair {
  QuiverPtr q;
  u32 p = 0;
  std::vector<std::pair<std::string, Rep>> torsion, torsion_free;
};

// Validates Hom(t, f) = 0 for every generator pair.
TorsionPair make_torsion_pair(
    const std::vector<std::pair<std::string, Rep>>& torsion,
    const std::vector<std::pair<std::string, Rep>>& torsion_free);

// Largest subrepresentation built from iterated traces of the torsion
// generators.
SubRep torsion_part(const Rep& x, const TorsionPair& tp);

struct TorsionSeq {
  ShortExact seq;  // 0 -> t(x) -> x -> x/t(x) -> 0
  Membership torsion_side, free_side;
  bool valid_on_object() const {
    return torsion_side.verdict == MemberVerdict::yes &&
           free_side.verdict == MemberVerdict::yes;
  }
};

TorsionSeq canonical_seq(const Rep& x, const TorsionPair& tp, u64 seed = 0);

struct TorsionTransfer {
  ShortExact seq;
  AssCertificate cert;  // verified against the receiving side's generators
};

// Transfer an almost split sequence 0 -> x -> y -> z -> 0 into the torsion
// class (z must be a torsion member; the torsion part of x must not vanish)
// or into the torsion-free class (x must be a free member; the free part of
// z must not vanish).
TorsionTransfer transfer_torsion_side(const ShortExact& s,
                                      const TorsionPair& tp, u64 seed = 0);
TorsionTransfer transfer_free_side(const ShortExact& s, const TorsionPair& tp,
                                   u64 seed = 0);

}  // namespace arq
