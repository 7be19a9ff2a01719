#pragma once

#include "arq/rep.hpp"

// Short exact sequences and the Ext^1 calculus: a fixed coordinatization of
// Ext^1(Z, X) through the minimal projective presentation of Z, Baer sum as
// literal vector addition, pushout/pullback actions with full ladder diagrams,
// and the stable Hom spaces obtained by factoring out injectively or
// projectively trivial morphisms.

namespace arq {

class ShortExact {
 public:
  ShortExact() = default;
  // 0 -> X -i-> Y -p-> Z -> 0; injectivity, surjectivity, p*i = 0 and the
  // vertexwise rank equality rank(i) = dim ker(p) are all checked here.
  ShortExact(RepMorphism i, RepMorphism p);

  const Rep& x() const { return i_.src(); }
  const Rep& y() const { return i_.dst(); }
  const Rep& z() const { return p_.dst(); }
  const RepMorphism& i() const { return i_; }
  const RepMorphism& p() const { return p_; }

 private:
  RepMorphism i_, p_;
};

// A retraction r with r * i = id_X, when the sequence splits.
std::optional<RepMorphism> split_retraction(const ShortExact& s);

// Ext^1(Z, X) presented as coker(Hom(P0, X) -> Hom(P1, X)) for the minimal
// presentation P1 -> P0 -> Z. The ambient coordinates are the stacked fibers
// of X at the P1 summand vertices (Yoneda evaluation at the trivial paths).
class ExtSpace {
 public:
  ExtSpace(Rep z, Rep x);

  const Rep& z() const { return z_; }
  const Rep& x() const { return x_; }
  const ProjPresentation& pres() const { return pres_; }
  int dim() const { return quo_.dim(); }
  int ambient_dim() const { return ambient_; }

  // A morphism P1 -> x as a stacked coordinate vector and back.
  Mat coords_of_hom(const RepMorphism& g) const;
  RepMorphism hom_of_coords(const Mat& d) const;
  // Ambient vector -> class coordinates, and canonical representative back.
  Mat project(const Mat& ambient) const;
  Mat section(const Mat& coords) const;

 private:
  Rep z_, x_;
  ProjPresentation pres_;
  int ambient_ = 0;
  Quotient quo_;
};

using ExtSpacePtr = std::shared_ptr<const ExtSpace>;
ExtSpacePtr ext_space(const Rep& z, const Rep& x);

struct ExtClass {
  ExtSpacePtr space;
  Mat coords;  // space->dim() x 1

  bool is_zero() const { return coords.is_zero(); }
};

ExtClass zero_class(ExtSpacePtr space);
ExtClass class_from_coords(ExtSpacePtr space, Mat coords);

// Mutually inverse up to equivalence of extensions; the zero class realizes
// the split sequence.
ExtClass ses_to_class(ExtSpacePtr space, const ShortExact& s);
ShortExact class_to_ses(const ExtClass& c);

ExtClass baer_sum(const ExtClass& a, const ExtClass& b);
ExtClass scale(u32 lambda, const ExtClass& c);

// Bimodule actions: u * c for u: X -> M lands in Ext(Z, M); c * v for
// v: N -> Z lands in Ext(N, X).
ExtClass pushout(const RepMorphism& u, const ExtClass& c);
ExtClass pullback(const ExtClass& c, const RepMorphism& v);

// Matrices of the actions on class coordinates (columns over src's basis).
Mat pushout_matrix(const RepMorphism& u, ExtSpacePtr src, ExtSpacePtr dst);
Mat pullback_matrix(ExtSpacePtr src, const RepMorphism& v, ExtSpacePtr dst);

// Commutative ladder between the realizations of a class and its image
// under an action; both squares middle*i_top = i_bot*left and
// p_bot*middle = right*p_top hold by construction.
struct ExtLadder {
  ShortExact top, bottom;
  RepMorphism left, middle, right;
};
ExtLadder pushout_diagram(const RepMorphism& u, const ExtClass& c);
ExtLadder pullback_diagram(const ExtClass& c, const RepMorphism& v);

// u factors through the injective envelope of its source (equivalently,
// through every proper mono out of it); dually through the projective cover
// of its target.
bool is_injectively_trivial(const RepMorphism& u);
bool is_projectively_trivial(const RepMorphism& u);

// Hom(a, b) modulo a subspace of trivial morphisms, in hom_basis coordinates.
struct StableHom {
  std::vector<RepMorphism> full_basis;
  Quotient quo;  // on hom-basis coordinates

  int dim() const { return quo.dim(); }
  int full_dim() const { return (int)full_basis.size(); }
  // Canonical coset representatives (sections of the quotient).
  std::vector<RepMorphism> reps() const;
  // Class coordinates of a morphism in Hom(a, b).
  Mat coords_mod(const RepMorphism& f) const;
};

StableHom stable_hom_inj(const Rep& l, const Rep& x);  // Hom-bar(l, x)
StableHom stable_hom_proj(const Rep& z, const Rep& l);  // Hom-under(z, l)

enum class PairingSide { inj, proj };

// phi: 1 x dim linear form on space = Ext(Z, X). side=inj: matrix of
// (f, eta) -> phi(f * eta) over Hom-bar(L, X) x Ext(Z, L); side=proj:
// (zeta, g) -> phi(zeta * g) over Ext(L, X) x Hom-under(Z, L).
Mat pairing_matrix(ExtSpacePtr space, const Mat& phi, const Rep& l,
                   PairingSide side);

}  // namespace arq
