#pragma once

#include "arq/field.hpp"
#include "arq/poly.hpp"
#include "arq/quiver.hpp"

// Finite-dimensional representations of an acyclic quiver over F_p and the
// structural toolkit on top of them: morphism spaces, kernels and quotients,
// projectives and injectives with their canonical path bases, covers and
// envelopes, endomorphism algebras, and Krull-Schmidt decomposition.

namespace arq {

struct Rep {
  QuiverPtr q;
  u32 p = 0;
  std::vector<int> dims;  // per vertex
  std::vector<Mat> mats;  // per arrow, shape dims[tgt] x dims[src]

  Rep() = default;
  // Validates shapes and that p is prime.
  Rep(QuiverPtr q, u32 p, std::vector<int> dims, std::vector<Mat> mats);

  int dim(int v) const { return dims[v]; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // Same quiver, prime, dimensions and matrices.
  bool same_as(const Rep& o) const;
  const Mat& mat(int arrow) const { return mats[arrow]; }
};

Rep zero_rep(QuiverPtr q, u32 p);
Rep simple_rep(QuiverPtr q, u32 p, int vertex);

// Product of arrow matrices along a path out of src_vertex; identity for the
// trivial path.
Mat path_matrix(const Rep& m, int src_vertex, const Path& path);

class RepMorphism {
 public:
  RepMorphism() = default;
  // Checks shapes and every commuting square N_a f_src = f_tgt M_a.
  RepMorphism(Rep src, Rep dst, std::vector<Mat> comps);

  const Rep& src() const { return *src_; }
  const Rep& dst() const { return *dst_; }
  const Mat& comp(int v) const { return comps_[v]; }
  const std::vector<Mat>& comps() const { return comps_; }

  bool is_zero() const;
  bool is_iso() const;        // invertible at every vertex
  bool is_mono() const;       // injective at every vertex
  bool is_epi() const;        // surjective at every vertex
  // Column vector of all component entries, vertex-major then row-major;
  // the coordinate system used by hom_basis and the factorization solvers.
  Mat flatten() const;

  RepMorphism inverse() const;  // requires is_iso

 private:
  std::shared_ptr<const Rep> src_, dst_;
  std::vector<Mat> comps_;
};

RepMorphism compose(const RepMorphism& g, const RepMorphism& f);  // g after f
RepMorphism add(const RepMorphism& a, const RepMorphism& b);
RepMorphism sub(const RepMorphism& a, const RepMorphism& b);
RepMorphism scal(u32 c, const RepMorphism& a);
RepMorphism identity_morphism(const Rep& m);
RepMorphism zero_morphism(const Rep& src, const Rep& dst);
// Evaluate a polynomial at an endomorphism.
RepMorphism eval_at(const Poly& f, const RepMorphism& endo);

// Basis of Hom(m, n) in the canonical coordinate order (kernel of the
// commuting-square system, pivot-complement order).
std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);
// Rebuild a morphism from flatten() coordinates.
RepMorphism morphism_from_flat(const Rep& src, const Rep& dst, const Mat& flat);

// Solve w * through == u for w: through: X->M, u: X->Y, w: M->Y.
std::optional<RepMorphism> factor_left(const RepMorphism& through,
                                       const RepMorphism& u);
// Solve through * w == u for w: through: M->Y, u: X->Y, w: X->M.
std::optional<RepMorphism> factor_right(const RepMorphism& through,
                                        const RepMorphism& u);

struct SubRep {
  Rep rep;
  RepMorphism incl;
};

struct QuotRep {
  Rep rep;
  RepMorphism proj;
  std::vector<Quotient> coords;  // per-vertex coordinatization, for sections
};

struct ImageRep {
  Rep rep;
  RepMorphism incl;  // rep -> dst(f)
  RepMorphism onto;  // src(f) -> rep, with incl * onto == f
};

SubRep kernel(const RepMorphism& f);
QuotRep cokernel(const RepMorphism& f);
ImageRep image(const RepMorphism& f);

// Direct sums; summand order is the given order.
Rep direct_sum(const std::vector<Rep>& parts);
RepMorphism sum_inclusion(const std::vector<Rep>& parts, int i);
RepMorphism sum_projection(const std::vector<Rep>& parts, int i);
// fs[i]: X -> Y_i  gives  X -> sum Y_i.
RepMorphism into_sum(const std::vector<RepMorphism>& fs);
// fs[i]: X_i -> Y  gives  sum X_i -> Y.
RepMorphism from_sum(const std::vector<RepMorphism>& fs);

// Indecomposable projective P_x: basis at y is paths(x, y) in canonical
// order. Injective I_x: basis at y is the dual basis of paths(y, x).
Rep projective(QuiverPtr q, u32 p, int x);
Rep injective(QuiverPtr q, u32 p, int x);

// Direct sum of projectives/injectives over a vertex multiset, with the block
// offset bookkeeping needed to read morphisms off against the path bases.
struct ProjSum {
  std::vector<int> verts;
  Rep rep;
  std::vector<std::vector<int>> offsets;  // offsets[i][y]: block start of summand i at y

  // Morphism sum P_{verts[i]} -> m determined by columns cols[i] in m at
  // verts[i] (Yoneda).
  RepMorphism morphism_to(const Rep& m, const std::vector<Mat>& cols) const;
  // Inverse: evaluate a morphism out of this sum at the summand units.
  std::vector<Mat> evaluate(const RepMorphism& f) const;
};
ProjSum projective_sum(QuiverPtr q, u32 p, std::vector<int> verts);

struct InjSum {
  std::vector<int> verts;
  Rep rep;
  std::vector<std::vector<int>> offsets;

  // Morphism m -> sum I_{verts[i]} determined by row functionals rows[i]
  // (1 x dim_m(verts[i])), the dual Yoneda picture.
  RepMorphism morphism_from(const Rep& m, const std::vector<Mat>& rows) const;
  std::vector<Mat> evaluate(const RepMorphism& f) const;
};
InjSum injective_sum(QuiverPtr q, u32 p, std::vector<int> verts);

SubRep radical_rep(const Rep& m);  // sum of images of incoming arrows
QuotRep top_rep(const Rep& m);     // m / rad m, semisimple
SubRep socle_rep(const Rep& m);    // joint kernel of outgoing arrows

struct ProjCover {
  ProjSum p0;
  RepMorphism eps;  // p0 -> m, surjective, kernel inside rad p0
};
ProjCover projective_cover(const Rep& m);  // m nonzero

struct InjEnvelope {
  InjSum i0;
  RepMorphism env;  // m -> i0, injective, image contains soc i0
};
InjEnvelope injective_envelope(const Rep& m);  // m nonzero

struct ProjPresentation {
  ProjSum p1, p0;
  RepMorphism f;    // p1 -> p0
  RepMorphism eps;  // p0 -> m
};
// Minimal presentation p1 -> p0 -> m -> 0; f is injective here because
// submodules of projectives over an acyclic path algebra are projective.
ProjPresentation minimal_projective_presentation(const Rep& m);

struct InjCopresentation {
  InjSum i0, i1;
  RepMorphism env;  // m -> i0
  RepMorphism g;    // i0 -> i1
};
InjCopresentation minimal_injective_copresentation(const Rep& m);

bool is_projective_rep(const Rep& m);
bool is_injective_rep(const Rep& m);

// Endomorphism algebra in the hom_basis coordinates. The radical is cut out
// by the trace form of the regular representation, which is valid only when
// p exceeds dim End; smaller primes raise UsageError asking for a larger one.
struct EndAlgebra {
  std::vector<RepMorphism> basis;
  std::vector<Mat> left_mult;  // left_mult[i]: coords of b_i * b_j in column j
  Mat trace_form;
  Mat radical;  // dim x r, columns are radical basis coordinates
  int dim() const { return (int)basis.size(); }
  int radical_dim() const { return radical.cols; }
  int residue_dim() const { return dim() - radical_dim(); }
  // End/rad of dimension 1 means End is local with residue field F_p.
  bool local_certified() const { return residue_dim() == 1; }
  // Coordinates of an endomorphism in the basis.
  Mat coords(const RepMorphism& f) const;
  // Materialize an element given by coordinates.
  RepMorphism element(const Mat& coords) const;
  // Radical basis as morphisms.
  std::vector<RepMorphism> radical_basis() const;
};
EndAlgebra end_algebra(const Rep& m);

struct DecPart {
  Rep rep;
  int multiplicity = 1;
  bool certified = false;
  int end_dim = 0;
  int residue_dim = 0;
};

struct DecompositionReport {
  std::vector<DecPart> parts;  // canonical order, distinct up to iso
  bool all_certified = false;
  Rep sum;            // direct sum in report order with multiplicities
  RepMorphism iso;    // sum -> m, invertible
  // Inclusions of the individual copies (part-major, copy-minor order).
  std::vector<RepMorphism> copy_inclusions;
};

// Split by idempotents found through minimal polynomials of endomorphism
// candidates (basis elements, their sums and products, then seeded random
// combinations up to the budget). Parts with dim End/rad == 1 are certified
// indecomposable; anything else surfaces as uncertified.
DecompositionReport decompose(const Rep& m, u64 seed, int budget = 200);

// Ordering key used for canonical part order: dimension vector, then dim End,
// then dim Hom(part, P_x) per vertex.
std::vector<int> part_fingerprint(const Rep& m);

enum class IsoVerdict { yes, no, undetermined };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::undetermined;
  std::optional<RepMorphism> iso;  // present iff verdict == yes
  std::string witness;             // human-readable reason for no/undetermined
};

IsoResult is_isomorphic(const Rep& m, const Rep& n, u64 seed, int budget = 200);

// Decision procedure for certified indecomposables: isomorphic iff some
// hom_basis element is invertible.
std::optional<RepMorphism> indec_iso(const Rep& m, const Rep& n);

}  // namespace arq
