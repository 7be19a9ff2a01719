#include "doctest.h"

#include "arq/dsl.hpp"

using namespace arq;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_document(text, "in.arq");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE_BEGIN("dsl");

TEST_CASE("minimal quiver document") {
  auto doc = parse_document("quiver A2 { vertices 1 2; arrow a: 1 -> 2 }", "in.arq");
  REQUIRE(doc.quivers.count("A2"));
  const Quiver& q = *doc.quivers.at("A2");
  CHECK(q.num_vertices() == 2);
  CHECK(q.num_arrows() == 1);
  CHECK(q.arrow(0).src == 0);
  CHECK(q.arrow(0).tgt == 1);
}

TEST_CASE("comments and whitespace are insignificant") {
  auto doc = parse_document(
      "# leading comment\nquiver   Q {\n  vertices x y;# inline\n"
      "  arrow f: x -> y;\n}\n",
      "in.arq");
  CHECK(doc.quivers.at("Q")->num_arrows() == 1);
}

TEST_CASE("unknown vertex in arrow is a positioned semantic error") {
  std::string err = error_of("quiver A2 { vertices 1 2; arrow a: 1 -> 3 }");
  CHECK(err == "in.arq:1:41: unknown vertex 3");
}

TEST_CASE("cyclic quiver rejected at validation") {
  std::string err =
      error_of("quiver C { vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1 }");
  CHECK(err.find("directed cycle") != std::string::npos);
}

TEST_CASE("duplicate ids rejected with positions") {
  CHECK(error_of("quiver Q { vertices 1 1 }").find("duplicate vertex") !=
        std::string::npos);
  CHECK(error_of("quiver Q { vertices 1 2; arrow a: 1 -> 2; arrow a: 1 -> 2 }")
            .find("duplicate arrow") != std::string::npos);
  CHECK(error_of("quiver Q { vertices 1 } quiver Q { vertices 1 }")
            .find("duplicate quiver 'Q'") != std::string::npos);
}

TEST_CASE("rayquiver with an inward tail") {
  auto doc = parse_document(
      "rayquiver R { vertices 0; ray t: into 0 }", "in.arq");
  const RayQuiver& rq = *doc.rayquivers.at("R");
  CHECK(rq.rays().size() == 1);
  CHECK(rq.rays()[0].id == "t");
  CHECK(rq.rays()[0].attach == 0);
}

TEST_CASE("outward ray gets the dedicated orientation error") {
  std::string err = error_of("rayquiver R { vertices 0; ray t: out 0 }");
  CHECK(err.find("oriented away from the core") != std::string::npos);
}

TEST_CASE("rep block with defaults for missing dims and matrices") {
  auto doc = parse_document(
      "quiver A3 { vertices 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3 }\n"
      "rep M over A3 prime 7 { dims { 1: 1; 2: 2; } mat a = [[1], [4]]; }\n",
      "in.arq");
  const Rep& m = doc.reps.at("M");
  CHECK(m.p == 7);
  CHECK(m.dims == std::vector<int>{1, 2, 0});
  CHECK(m.mats[0].at(1, 0) == 4);
  CHECK(m.mats[1].is_zero());  // unlisted matrix defaults to zero
}

TEST_CASE("negative matrix entries reduce mod p") {
  auto doc = parse_document(
      "quiver A2 { vertices 1 2; arrow a: 1 -> 2 }\n"
      "rep M over A2 prime 7 { dims { 1: 1; 2: 1; } mat a = [[-1]]; }\n",
      "in.arq");
  CHECK(doc.reps.at("M").mats[0].at(0, 0) == 6);
}

TEST_CASE("matrix shape mismatch is rejected") {
  std::string err = error_of(
      "quiver A2 { vertices 1 2; arrow a: 1 -> 2 }\n"
      "rep M over A2 prime 7 { dims { 1: 2; 2: 1; } mat a = [[1]]; }\n");
  CHECK(err.find("must be 1x2, got 1x1") != std::string::npos);
}

TEST_CASE("non-prime modulus rejected") {
  std::string err = error_of(
      "quiver A2 { vertices 1 2; arrow a: 1 -> 2 }\n"
      "rep M over A2 prime 6 { }\n");
  CHECK(err.find("modulus 6 is not prime") != std::string::npos);
}

TEST_CASE("subcat and torsion blocks resolve rep references") {
  auto doc = parse_document(
      "quiver A2 { vertices 1 2; arrow a: 1 -> 2 }\n"
      "rep S1 over A2 prime 7 { dims { 1: 1; } }\n"
      "rep S2 over A2 prime 7 { dims { 2: 1; } }\n"
      "subcat C over A2 { gens S1 S2; }\n"
      "torsion T over A2 { torsion S2; free S1; }\n",
      "in.arq");
  CHECK(doc.subcats.at("C").gens == std::vector<std::string>{"S1", "S2"});
  CHECK(doc.torsions.at("T").torsion_gens == std::vector<std::string>{"S2"});
  CHECK(doc.torsions.at("T").free_gens == std::vector<std::string>{"S1"});
  CHECK(error_of("quiver A2 { vertices 1 2; arrow a: 1 -> 2 }\n"
                 "subcat C over A2 { gens nope; }")
            .find("unknown rep 'nope'") != std::string::npos);
}

TEST_CASE("fprep block with path entries") {
  auto doc = parse_document(
      "rayquiver R { vertices 0; ray t: into 0 }\n"
      "fprep M over R { p0 t.2; p1 t.1; entry 0 0 = t.a2; }\n",
      "in.arq");
  const FPRepDecl& f = doc.fpreps.at("M");
  CHECK(f.p0 == std::vector<std::string>{"t.2"});
  CHECK(f.p1 == std::vector<std::string>{"t.1"});
  auto& terms = f.entries.at({0, 0});
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].coeff == 1);
  CHECK(terms[0].arrows == std::vector<std::string>{"t.a2"});
}

TEST_CASE("fprep entries with coefficients, sums, and trivial paths") {
  auto doc = parse_document(
      "quiver core { vertices 0 1; arrow c: 0 -> 1 }\n"
      "rayquiver R { vertices 0 1; arrow c: 0 -> 1; ray t: into 0 }\n"
      "fprep M over R { p0 t.2 0; p1 t.1 0; entry 0 0 = 3*t.a2; "
      "entry 1 1 = e[0]; }\n",
      "in.arq");
  const FPRepDecl& f = doc.fpreps.at("M");
  CHECK(f.entries.at({0, 0})[0].coeff == 3);
  CHECK(f.entries.at({1, 1})[0].trivial);
  CHECK(f.entries.at({1, 1})[0].trivial_at == "0");
}

TEST_CASE("fprep path composition is validated") {
  std::string base =
      "rayquiver R { vertices 0; ray t: into 0 }\n";
  CHECK(error_of(base + "fprep M over R { p0 t.2; p1 t.1; entry 0 0 = t.a1; }")
            .find("path does not compose") != std::string::npos);
  CHECK(error_of(base + "fprep M over R { p0 t.3; p1 t.1; entry 0 0 = t.a3; }")
            .find("path ends at t.2") != std::string::npos);
  CHECK(error_of(base + "fprep M over R { p0 t.1; p1 t.2; entry 0 0 = nope; }")
            .find("unknown arrow nope") != std::string::npos);
  CHECK(error_of(base + "fprep M over R { p0 t.1; p1 t.1; entry 0 1 = e[t.1]; }")
            .find("out of range") != std::string::npos);
}

TEST_CASE("syntax errors carry position and expectation") {
  std::string err = error_of("quiver Q vertices");
  CHECK(err.find("in.arq:1:10:") == 0);
  CHECK(err.find("expected '{'") != std::string::npos);
  CHECK(error_of("widget W { }").find("expected a block keyword") !=
        std::string::npos);
}

TEST_CASE("render and reparse reproduce the document") {
  std::string text =
      "quiver A3 { vertices 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3 }\n"
      "rayquiver R { vertices 0; ray t: into 0; ray s: into 0 }\n"
      "rep M over A3 prime 101 { dims { 1: 1; 2: 2; 3: 1; } "
      "mat a = [[3], [5]]; mat b = [[1, 2]]; }\n"
      "rep S1 over A3 prime 101 { dims { 1: 1; } }\n"
      "subcat C over A3 { gens S1 M; }\n"
      "torsion T over A3 { torsion M; free S1; }\n"
      "fprep F over R { p0 t.2 s.1; p1 t.1; entry 0 0 = 2*t.a2; }\n";
  Document d1 = parse_document(text, "in.arq");
  std::string rendered = render_document(d1);
  Document d2 = parse_document(rendered, "rendered.arq");
  CHECK(render_document(d2) == rendered);  // canonical form is a fixed point
  CHECK(d1.order == d2.order);
  CHECK(d2.reps.at("M").same_as(d1.reps.at("M")));
  CHECK(d2.reps.at("S1").same_as(d1.reps.at("S1")));
  CHECK(d2.subcats.at("C").gens == d1.subcats.at("C").gens);
  CHECK(d2.torsions.at("T").free_gens == d1.torsions.at("T").free_gens);
  CHECK(d2.fpreps.at("F").entries.at({0, 0})[0].coeff == 2);
  CHECK(d2.quivers.at("A3")->same_structure(*d1.quivers.at("A3")));
}

TEST_SUITE_END();
