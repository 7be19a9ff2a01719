#pragma once

#include <map>
#include <utility>

#include "arq/quiver.hpp"
#include "arq/rep.hpp"

// Textual .arq documents: quivers, ray quivers, representations, subcategory
// and torsion-pair declarations, and finitely presented representations over
// ray quivers. Statements end with ';', '#' starts a line comment, ids match
// [A-Za-z0-9_.]+ and whitespace is insignificant.
//
//   quiver A2 { vertices 1 2; arrow a: 1 -> 2; }
//   rayquiver R { vertices 0; ray t: into 0; }
//   rep S1 over A2 prime 7 { dims { 1: 1; } mat a = [[0]]; }
//   subcat C over A2 { gens S1 S2; }
//   torsion T over A2 { torsion S2; free S1; }
//   fprep M over R { p0 t.2; p1 t.1; entry 0 0 = t.a2; }
//
// Unlisted dims are 0 and unlisted matrices are zero. fprep entry (i, j)
// is a sum of integer multiples of paths from p0[i] to p1[j]; a path is
// arrow ids joined by '*' in traversal order, e[v] is the trivial path at v.

namespace arq {

struct ParseError : UsageError {
  ParseError(const std::string& file, int line, int col, const std::string& msg)
      : UsageError(file + ":" + std::to_string(line) + ":" +
                   std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

// One summand of an fprep entry: coeff * (arrow path | trivial path at a vertex).
struct PathTerm {
  long long coeff = 1;
  bool trivial = false;
  std::string trivial_at;
  std::vector<std::string> arrows;  // traversal order
};

struct FPRepDecl {
  std::string name;
  std::string rayquiver;
  std::vector<std::string> p0, p1;  // symbolic vertex names
  // Key (i, j): row i over p0 summands, column j over p1 summands; the term
  // list spans paths p0[i] -> p1[j]. Missing entries are zero.
  std::map<std::pair<int, int>, std::vector<PathTerm>> entries;
};

struct SubcatDecl {
  std::string name;
  std::string quiver;
  std::vector<std::string> gens;  // rep names, declared earlier
};

struct TorsionDecl {
  std::string name;
  std::string quiver;
  std::vector<std::string> torsion_gens, free_gens;
};

struct Document {
  std::vector<std::pair<std::string, std::string>> order;  // (kind, name)
  std::map<std::string, QuiverPtr> quivers;
  std::map<std::string, std::shared_ptr<const RayQuiver>> rayquivers;
  std::map<std::string, Rep> reps;
  std::map<std::string, SubcatDecl> subcats;
  std::map<std::string, TorsionDecl> torsions;
  std::map<std::string, FPRepDecl> fpreps;
};

// Parse and validate; `filename` labels diagnostics ("file:line:col: message").
// Cyclic quivers and outward-oriented rays are rejected here.
Document parse_document(const std::string& text, const std::string& filename);

// Canonical text form; reparsing it reproduces the document.
std::string render_document(const Document& d);

}  // namespace arq
