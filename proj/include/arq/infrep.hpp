#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arq/artrans.hpp"
#include "arq/dsl.hpp"
#include "arq/quiver.hpp"
#include "arq/rep.hpp"

namespace arq {

// A finitely presented representation of a ray quiver, given as a projective
// presentation f: P1 -> P0 with both terms supported on finitely many
// vertices.  All computations happen over truncations; the vertex lists are
// stored symbolically so the same presentation can be realized at any depth.
struct FPRep {
  std::string name;
  std::shared_ptr<const RayQuiver> rq;
  u32 p = 0;
  std::vector<std::string> p0;  // summands of the target, as vertex names
  std::vector<std::string> p1;  // summands of the source
  FPRepDecl decl;               // entries keyed (row over p0, col over p1)
  int max_level = 0;            // deepest ray level mentioned by p0/p1
  bool minimal = false;         // f injective with image inside rad P0
  std::string minimal_reason;   // why not, when minimal is false

  // Smallest depth at which the presentation itself fits.
  int min_depth() const { return max_level + 1; }
  // Default working depth: one ring past min_depth so boundary effects of the
  // presentation cannot reach the outermost ring.
  int auto_depth() const { return max_level + 2; }
};

FPRep make_fprep(std::shared_ptr<const RayQuiver> rq, u32 p, const FPRepDecl& decl);

// Realize the presentation over a truncation window.  Requires
// tr.depth >= min_depth().
ProjMap realize_presentation(const FPRep& m, const Truncation& tr);

// Cokernel of the presentation over the depth-`depth` truncation
// (depth = 0 picks min_depth()).
Rep coker_rep(const FPRep& m, int depth = 0);

// Per-ray stabilization certificate for the Nakayama image: the component
// blocks of nu(f) at ring `ring` and ring `ring`+1 of the ray are equal as
// matrices, so every deeper ring repeats the same block and the kernel
// dimension per ring is eventually the constant stable_dim.
struct RayCertificate {
  std::string ray;
  int ring = 0;
  bool blocks_equal = false;
  int stable_dim = 0;
};

struct DtrVerdict {
  bool finite = false;
  Rep rep;            // the translate, over window.q (finite case only)
  Truncation window;
  int depth = 0;
  std::string ray_witness;  // first ray with positive stable dimension
  int stable_dim = 0;
  std::vector<RayCertificate> certificates;
};

// Auslander-Reiten translate of the cokernel of m, decided over a truncation.
// depth = 0 picks auto_depth(); an explicit depth below that is a usage
// error.  Throws NegativeResult when the cokernel has a projective summand.
DtrVerdict dtr_inf(const FPRep& m, int depth = 0, u64 seed = 0);

// Inverse translate, computed by reversing all arrows and reusing dtr_inf;
// the result lives over the reversed window quiver.
DtrVerdict trd_inf(const FPRep& m, int depth = 0, u64 seed = 0);

struct AssInRep {
  bool has_ass = false;
  std::string witness;      // explanation when has_ass is false
  std::string ray_witness;  // ray along which the translate is infinite
  int stable_dim = 0;
  Truncation window;
  ShortExact seq;
  AssCertificate cert;
  int tests = 0;  // test objects used by the certificate
};

// Almost split sequence ending at coker(m), when the translate is finite
// dimensional; otherwise a no-sequence verdict carrying the ray witness.
AssInRep ass_in_rep_plus(const FPRep& m, u64 seed = 0);

// Dual statement: almost split sequence starting at the dual of coker(m),
// over the reversed window quiver.
AssInRep ass_in_rep_minus(const FPRep& m, u64 seed = 0);

// Arrow-reversal duality on representations over a fixed quiver.  `rev` must
// be reversed(*m.q()) with vertex and arrow order preserved.
Rep dual_rep(const Rep& m, std::shared_ptr<const Quiver> rev);
RepMorphism dual_morphism(const RepMorphism& f, std::shared_ptr<const Quiver> rev);
ShortExact dual_ses(const ShortExact& s, std::shared_ptr<const Quiver> rev);

}  // namespace arq
