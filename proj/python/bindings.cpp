#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "arq/artrans.hpp"
#include "arq/dsl.hpp"
#include "arq/ext.hpp"
#include "arq/infrep.hpp"
#include "arq/report.hpp"
#include "arq/subcat.hpp"

namespace py = pybind11;
using namespace arq;
using namespace pybind11::literals;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const json& e : j) out.append(to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      return py::none();
  }
}

const Rep& find_rep(const Document& doc, const std::string& name) {
  auto it = doc.reps.find(name);
  if (it == doc.reps.end())
    throw UsageError("unknown rep '" + name + "' in the document");
  return it->second;
}

SubcatSpec build_subcat(const Document& doc, const std::string& name,
                        u64 seed) {
  auto it = doc.subcats.find(name);
  if (it == doc.subcats.end())
    throw UsageError("unknown subcat '" + name + "' in the document");
  std::vector<std::pair<std::string, Rep>> gens;
  for (const std::string& g : it->second.gens)
    gens.emplace_back(g, find_rep(doc, g));
  return make_subcat(gens, seed);
}

TorsionPair build_pair(const Document& doc, const std::string& name) {
  auto it = doc.torsions.find(name);
  if (it == doc.torsions.end())
    throw UsageError("unknown torsion pair '" + name + "' in the document");
  std::vector<std::pair<std::string, Rep>> t, f;
  for (const std::string& g : it->second.torsion_gens)
    t.emplace_back(g, find_rep(doc, g));
  for (const std::string& g : it->second.free_gens)
    f.emplace_back(g, find_rep(doc, g));
  return make_torsion_pair(t, f);
}

FPRep build_fprep(const Document& doc, const std::string& name, u64 prime) {
  auto it = doc.fpreps.find(name);
  if (it == doc.fpreps.end())
    throw UsageError("unknown fprep '" + name + "' in the document");
  auto rq = doc.rayquivers.find(it->second.rayquiver);
  if (rq == doc.rayquivers.end())
    throw UsageError("fprep '" + name + "' names an unknown ray quiver");
  return make_fprep(rq->second, prime, it->second);
}

std::vector<std::string> names_of_kind(const Document& doc,
                                       const std::string& kind) {
  std::vector<std::string> out;
  for (const auto& [k, n] : doc.order)
    if (k == kind) out.push_back(n);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Auslander-Reiten theory for quiver representations over prime fields";

  static py::exception<NegativeResult> negative(m, "NegativeResult");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NegativeResult& e) {
      PyErr_SetString(negative.ptr(), e.what());
    } catch (const InternalError& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const UsageError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Rep>(m, "Rep")
      .def_property_readonly("prime", [](const Rep& r) { return r.p; })
      .def_property_readonly("quiver",
                             [](const Rep& r) { return r.q->name(); })
      .def_property_readonly(
          "total",
          [](const Rep& r) { return rep_json(r)["total"].get<int>(); })
      .def_property_readonly(
          "dims", [](const Rep& r) { return to_py(rep_json(r)["dims"]); })
      .def("__repr__", [](const Rep& r) {
        return "Rep(quiver='" + r.q->name() + "', prime=" +
               std::to_string(r.p) + ", dims=" + rep_json(r)["dims"].dump() +
               ")";
      });

  py::class_<Document>(m, "Document")
      .def_property_readonly(
          "quivers", [](const Document& d) { return names_of_kind(d, "quiver"); })
      .def_property_readonly("rayquivers",
                             [](const Document& d) {
                               return names_of_kind(d, "rayquiver");
                             })
      .def_property_readonly(
          "reps", [](const Document& d) { return names_of_kind(d, "rep"); })
      .def_property_readonly(
          "subcats", [](const Document& d) { return names_of_kind(d, "subcat"); })
      .def_property_readonly(
          "torsions",
          [](const Document& d) { return names_of_kind(d, "torsion"); })
      .def_property_readonly(
          "fpreps", [](const Document& d) { return names_of_kind(d, "fprep"); })
      .def("rep", &find_rep, "name"_a, py::return_value_policy::copy);

  m.def(
      "parse",
      [](const std::string& text, const std::string& filename) {
        return parse_document(text, filename);
      },
      "text"_a, "filename"_a = "<string>",
      "Parse a .arq document from a string.");

  m.def("hom_dim", &hom_dim, "m"_a, "n"_a,
        "Dimension of the homomorphism space Hom(m, n).");
  m.def(
      "ext_dim",
      [](const Rep& z, const Rep& x) { return ext_space(z, x)->dim(); },
      "z"_a, "x"_a, "Dimension of the extension space of z by x.");

  m.def(
      "decompose",
      [](const Rep& r, u64 seed, int budget) {
        return to_py(decomposition_json(decompose(r, seed, budget)));
      },
      "rep"_a, "seed"_a = 0, "budget"_a = 200,
      "Krull-Schmidt decomposition with certification data.");

  m.def(
      "dtr", [](const Rep& r, u64 seed) { return dtr(r, seed); }, "rep"_a,
      "seed"_a = 0, "The translate DTr of a representation.");
  m.def(
      "trd", [](const Rep& r, u64 seed) { return trd(r, seed); }, "rep"_a,
      "seed"_a = 0, "The inverse translate TrD of a representation.");

  m.def(
      "almost_split",
      [](const Rep& z, u64 seed, bool verify) {
        AlmostSplit a = almost_split_sequence(z, seed);
        json out;
        out["sequence"] = ses_json(a.ses);
        if (verify) {
          ArQuiverResult aq = ar_quiver(z.q, z.p, seed, 400);
          if (!aq.rep_finite)
            throw InternalError("cannot enumerate test objects: " +
                                aq.witness);
          std::vector<std::pair<std::string, Rep>> tests;
          for (const ArNode& n : aq.nodes) tests.emplace_back(n.name, n.rep);
          out["certificate"] = cert_json(verify_ass(a.ses, tests, seed));
        }
        return to_py(out);
      },
      "rep"_a, "seed"_a = 0, "verify"_a = true,
      "The almost split sequence ending at an indecomposable non-projective.");

  m.def(
      "ar_quiver",
      [](const Document& doc, const std::string& quiver, u64 prime, u64 seed,
         int budget) {
        auto it = doc.quivers.find(quiver);
        if (it == doc.quivers.end())
          throw UsageError("unknown quiver '" + quiver + "' in the document");
        return to_py(ar_quiver_json(ar_quiver(it->second, prime, seed, budget)));
      },
      "doc"_a, "quiver"_a, "prime"_a = 32003, "seed"_a = 0, "budget"_a = 400,
      "The Auslander-Reiten quiver computed by knitting.");
  m.def(
      "ar_quiver_dot",
      [](const Document& doc, const std::string& quiver, u64 prime, u64 seed,
         int budget) {
        auto it = doc.quivers.find(quiver);
        if (it == doc.quivers.end())
          throw UsageError("unknown quiver '" + quiver + "' in the document");
        return ar_quiver_dot(ar_quiver(it->second, prime, seed, budget));
      },
      "doc"_a, "quiver"_a, "prime"_a = 32003, "seed"_a = 0, "budget"_a = 400,
      "Graphviz source for the Auslander-Reiten quiver.");

  m.def(
      "approx",
      [](const Document& doc, const std::string& subcat, const std::string& rep,
         const std::string& side, u64 seed) {
        if (side != "right" && side != "left")
          throw UsageError("side must be 'right' or 'left'");
        const Rep& x = find_rep(doc, rep);
        SubcatSpec c = build_subcat(doc, subcat, seed);
        bool right = side == "right";
        Approximation a = right ? right_stable_approx(x, c, seed)
                                : left_stable_approx(x, c, seed);
        json out;
        out["closure"] = closure_json(c.closure);
        out["approximation"] = approx_json(a, c, right);
        return to_py(out);
      },
      "doc"_a, "subcat"_a, "rep"_a, "side"_a = "right", "seed"_a = 0,
      "Minimal right or left approximation by a declared subcategory.");

  m.def(
      "subcat_ass",
      [](const Document& doc, const std::string& subcat, const std::string& rep,
         u64 seed) {
        const Rep& z = find_rep(doc, rep);
        SubcatSpec c = build_subcat(doc, subcat, seed);
        SubcatAss sa = subcat_ass(z, c, seed);
        json out;
        out["closure"] = closure_json(c.closure);
        out["ext_projective"] = sa.ext_projective;
        if (sa.ext_projective) {
          out["witness"] = sa.reason;
        } else {
          out["sequence"] = ses_json(sa.ass.ses);
          out["certificate"] = cert_json(sa.cert);
          out["middle_membership"] = membership_json(sa.middle);
        }
        return to_py(out);
      },
      "doc"_a, "subcat"_a, "rep"_a, "seed"_a = 0,
      "Relative almost split sequence inside a declared subcategory.");

  m.def(
      "torsion_canonical",
      [](const Document& doc, const std::string& pair, const std::string& rep,
         u64 seed) {
        const Rep& x = find_rep(doc, rep);
        TorsionPair tp = build_pair(doc, pair);
        TorsionSeq cs = canonical_seq(x, tp, seed);
        json out;
        out["sequence"] = ses_json(cs.seq);
        out["torsion_side"] = membership_json(cs.torsion_side);
        out["free_side"] = membership_json(cs.free_side);
        out["valid"] = cs.valid_on_object();
        return to_py(out);
      },
      "doc"_a, "pair"_a, "rep"_a, "seed"_a = 0,
      "Canonical sequence of an object for a declared torsion pair.");

  m.def(
      "torsion_transfer",
      [](const Document& doc, const std::string& pair, const std::string& rep,
         const std::string& side, u64 seed) {
        if (side != "torsion" && side != "free")
          throw UsageError("side must be 'torsion' or 'free'");
        const Rep& z = find_rep(doc, rep);
        TorsionPair tp = build_pair(doc, pair);
        AlmostSplit a = almost_split_sequence(z, seed);
        TorsionTransfer tt = side == "torsion"
                                 ? transfer_torsion_side(a.ses, tp, seed)
                                 : transfer_free_side(a.ses, tp, seed);
        json out;
        out["ambient"] = ses_json(a.ses);
        out["sequence"] = ses_json(tt.seq);
        out["certificate"] = cert_json(tt.cert);
        return to_py(out);
      },
      "doc"_a, "pair"_a, "rep"_a, "side"_a, "seed"_a = 0,
      "Transfer an ambient almost split sequence to one side of a torsion "
      "pair.");

  m.def(
      "inf_dtr",
      [](const Document& doc, const std::string& fprep, u64 prime, int depth,
         u64 seed) {
        FPRep f = build_fprep(doc, fprep, prime);
        return to_py(dtr_verdict_json(dtr_inf(f, depth, seed)));
      },
      "doc"_a, "fprep"_a, "prime"_a = 32003, "depth"_a = 0, "seed"_a = 0,
      "DTr of a finitely presented representation of a ray quiver.");

  m.def(
      "inf_ass",
      [](const Document& doc, const std::string& fprep, u64 prime, u64 seed) {
        FPRep f = build_fprep(doc, fprep, prime);
        return to_py(ass_in_rep_json(ass_in_rep_plus(f, seed)));
      },
      "doc"_a, "fprep"_a, "prime"_a = 32003, "seed"_a = 0,
      "Almost split sequence ending at a finitely presented representation "
      "of a ray quiver, when one exists.");
}
