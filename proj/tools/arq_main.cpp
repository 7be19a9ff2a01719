#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arq/report.hpp"

// Command line driver: parses an .arq document, runs one operation, and
// prints a report. JSON on stdout is the machine interface; `text` renders
// the same data; DOT is available for the AR quiver only. Diagnostics go to
// stderr. Exit codes: 0 success, 1 mathematical negative (witness in the
// report), 2 usage or parse error, 3 undetermined.

using namespace arq;

namespace {

struct Job {
  std::string file;
  u32 prime = 32003;
  u64 seed = 0;
  int budget = 0;  // 0 keeps each operation's default
  std::string format = "json";
};

json base_report(const Job& job, const std::string& command) {
  return json{{"command", command},
              {"input", job.file},
              {"prime", job.prime},
              {"seed", job.seed},
              {"status", "ok"}};
}

void emit(const Job& job, const json& report) {
  if (job.format == "text")
    std::cout << render_text(report);
  else
    std::cout << report.dump(2) << "\n";
}

int finish(const Job& job, json& report, const std::string& status, int code) {
  report["status"] = status;
  emit(job, report);
  return code;
}

Document load(const Job& job) {
  std::ifstream in(job.file);
  if (!in) throw UsageError("cannot open input file '" + job.file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), job.file);
}

const Rep& find_rep(const Document& doc, const std::string& name) {
  auto it = doc.reps.find(name);
  if (it == doc.reps.end())
    throw UsageError("unknown rep '" + name + "' in the input file");
  return it->second;
}

void same_setting(const Rep& m, const Rep& n) {
  if (m.q != n.q)
    throw UsageError("the reps live over different quivers");
  if (m.p != n.p) throw UsageError("the reps use different primes");
}

SubcatSpec build_subcat(const Document& doc, const std::string& name,
                        u64 seed) {
  auto it = doc.subcats.find(name);
  if (it == doc.subcats.end())
    throw UsageError("unknown subcat '" + name + "' in the input file");
  std::vector<std::pair<std::string, Rep>> gens;
  for (const std::string& g : it->second.gens)
    gens.emplace_back(g, find_rep(doc, g));
  return make_subcat(gens, seed);
}

FPRep build_fprep(const Document& doc, const Job& job,
                  const std::string& name) {
  auto it = doc.fpreps.find(name);
  if (it == doc.fpreps.end())
    throw UsageError("unknown fprep '" + name + "' in the input file");
  auto rq = doc.rayquivers.find(it->second.rayquiver);
  if (rq == doc.rayquivers.end())
    throw UsageError("fprep '" + name + "' names an unknown ray quiver");
  return make_fprep(rq->second, job.prime, it->second);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int guarded(const Job& job, const std::string& cmd,
            const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NegativeResult& e) {
    json r = base_report(job, cmd);
    r["status"] = "negative";
    r["witness"] = e.what();
    emit(job, r);
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_check(const Job& job) {
  Document doc = load(job);
  json report = base_report(job, "check");
  json quivers = json::array(), rayquivers = json::array(),
       reps = json::array(), subcats = json::array(),
       torsions = json::array(), fpreps = json::array();
  for (const auto& [kind, name] : doc.order) {
    if (kind == "quiver") {
      const Quiver& q = *doc.quivers.at(name);
      json arrows = json::array();
      for (const Arrow& a : q.arrows())
        arrows.push_back(json{{"id", a.id},
                              {"src", q.vertex_name(a.src)},
                              {"tgt", q.vertex_name(a.tgt)}});
      quivers.push_back(json{{"name", name},
                             {"vertices", q.vertices()},
                             {"arrows", std::move(arrows)}});
    } else if (kind == "rayquiver") {
      const RayQuiver& rq = *doc.rayquivers.at(name);
      json rays = json::array();
      for (const Ray& r : rq.rays())
        rays.push_back(json{{"id", r.id},
                            {"into", rq.core().vertex_name(r.attach)}});
      rayquivers.push_back(json{{"name", name},
                                {"core_vertices", rq.core().vertices()},
                                {"rays", std::move(rays)}});
    } else if (kind == "rep") {
      const Rep& m = doc.reps.at(name);
      json entry{{"name", name},
                 {"quiver", m.q->name()},
                 {"prime", m.p}};
      entry.update(rep_json(m));
      reps.push_back(std::move(entry));
    } else if (kind == "subcat") {
      const SubcatDecl& d = doc.subcats.at(name);
      subcats.push_back(
          json{{"name", name}, {"quiver", d.quiver}, {"gens", d.gens}});
    } else if (kind == "torsion") {
      const TorsionDecl& d = doc.torsions.at(name);
      torsions.push_back(json{{"name", name},
                              {"quiver", d.quiver},
                              {"torsion", d.torsion_gens},
                              {"free", d.free_gens}});
    } else if (kind == "fprep") {
      const FPRepDecl& d = doc.fpreps.at(name);
      fpreps.push_back(json{{"name", name},
                            {"rayquiver", d.rayquiver},
                            {"p0", d.p0},
                            {"p1", d.p1}});
    }
  }
  report["quivers"] = std::move(quivers);
  report["rayquivers"] = std::move(rayquivers);
  report["reps"] = std::move(reps);
  report["subcats"] = std::move(subcats);
  report["torsions"] = std::move(torsions);
  report["fpreps"] = std::move(fpreps);
  return finish(job, report, "ok", 0);
}

int cmd_decompose(const Job& job, const std::string& rep) {
  Document doc = load(job);
  const Rep& m = find_rep(doc, rep);
  DecompositionReport d =
      decompose(m, job.seed, job.budget ? job.budget : 200);
  json report = base_report(job, "decompose");
  report["rep"] = rep;
  report["decomposition"] = decomposition_json(d);
  if (!d.all_certified) return finish(job, report, "undetermined", 3);
  return finish(job, report, "ok", 0);
}

int cmd_hom(const Job& job, const std::string& from, const std::string& to) {
  Document doc = load(job);
  const Rep& m = find_rep(doc, from);
  const Rep& n = find_rep(doc, to);
  same_setting(m, n);
  json report = base_report(job, "hom");
  report["from"] = from;
  report["to"] = to;
  report["dim"] = hom_dim(m, n);
  return finish(job, report, "ok", 0);
}

int cmd_ext(const Job& job, const std::string& zn, const std::string& xn) {
  Document doc = load(job);
  const Rep& z = find_rep(doc, zn);
  const Rep& x = find_rep(doc, xn);
  same_setting(z, x);
  json report = base_report(job, "ext");
  report["z"] = zn;
  report["x"] = xn;
  report["dim"] = ext_space(z, x)->dim();
  return finish(job, report, "ok", 0);
}

int cmd_translate(const Job& job, const std::string& cmd,
                  const std::string& rep) {
  Document doc = load(job);
  const Rep& m = find_rep(doc, rep);
  Rep t = cmd == "dtr" ? dtr(m, job.seed) : trd(m, job.seed);
  json report = base_report(job, cmd);
  report["rep"] = rep;
  report["translate"] = rep_json(t);
  return finish(job, report, "ok", 0);
}

int cmd_ass(const Job& job, const std::string& rep,
            const std::string& verify) {
  Document doc = load(job);
  const Rep& z = find_rep(doc, rep);
  AlmostSplit a = almost_split_sequence(z, job.seed);
  std::vector<std::pair<std::string, Rep>> tests;
  if (verify == "all") {
    ArQuiverResult aq =
        ar_quiver(z.q, z.p, job.seed, job.budget ? job.budget : 400);
    if (!aq.rep_finite)
      throw InternalError(
          "cannot enumerate test objects: " + aq.witness);
    for (const ArNode& n : aq.nodes) tests.emplace_back(n.name, n.rep);
  } else if (!verify.empty()) {
    for (const std::string& name : split_list(verify)) {
      const Rep& t = find_rep(doc, name);
      same_setting(z, t);
      tests.emplace_back(name, t);
    }
  }
  AssCertificate cert = verify_ass(a.ses, tests, job.seed);
  if (!cert.ok())
    throw InternalError("almost split certificate failed: " + cert.failure);
  json report = base_report(job, "ass");
  report["rep"] = rep;
  report["sequence"] = ses_json(a.ses);
  report["certificate"] = cert_json(cert);
  return finish(job, report, "ok", 0);
}

int cmd_arquiver(const Job& job, const std::string& quiver,
                 const std::string& dotfile) {
  Document doc = load(job);
  auto it = doc.quivers.find(quiver);
  if (it == doc.quivers.end())
    throw UsageError("unknown quiver '" + quiver + "' in the input file");
  ArQuiverResult aq = ar_quiver(it->second, job.prime, job.seed,
                                job.budget ? job.budget : 400);
  std::string dot = ar_quiver_dot(aq);
  if (!dotfile.empty()) {
    std::ofstream out(dotfile);
    if (!out) throw UsageError("cannot write DOT file '" + dotfile + "'");
    out << dot;
  }
  if (job.format == "dot") {
    std::cout << dot;
    return aq.rep_finite ? 0 : 3;
  }
  json report = base_report(job, "arquiver");
  report["quiver"] = quiver;
  report["ar"] = ar_quiver_json(aq);
  if (!dotfile.empty()) report["dot_file"] = dotfile;
  if (!aq.rep_finite) return finish(job, report, "undetermined", 3);
  return finish(job, report, "ok", 0);
}

int cmd_approx(const Job& job, const std::string& rep,
               const std::string& subcat, const std::string& side) {
  Document doc = load(job);
  const Rep& x = find_rep(doc, rep);
  SubcatSpec c = build_subcat(doc, subcat, job.seed);
  bool right = side == "right";
  Approximation a = right ? right_stable_approx(x, c, job.seed)
                          : left_stable_approx(x, c, job.seed);
  json report = base_report(job, "approx");
  report["rep"] = rep;
  report["subcat"] = subcat;
  report["side"] = side;
  report["closure"] = closure_json(c.closure);
  report["approximation"] = approx_json(a, c, right);
  return finish(job, report, "ok", 0);
}

int cmd_subcat_ass(const Job& job, const std::string& rep,
                   const std::string& subcat) {
  Document doc = load(job);
  const Rep& z = find_rep(doc, rep);
  SubcatSpec c = build_subcat(doc, subcat, job.seed);
  SubcatAss sa = subcat_ass(z, c, job.seed);
  json report = base_report(job, "subcat-ass");
  report["rep"] = rep;
  report["subcat"] = subcat;
  report["closure"] = closure_json(c.closure);
  report["ext_projective"] = sa.ext_projective;
  if (sa.ext_projective) {
    report["witness"] = sa.reason;
    return finish(job, report, "negative", 1);
  }
  report["sequence"] = ses_json(sa.ass.ses);
  report["certificate"] = cert_json(sa.cert);
  report["middle_membership"] = membership_json(sa.middle);
  return finish(job, report, "ok", 0);
}

int cmd_torsion(const Job& job, const std::string& pair,
                const std::string& rep, const std::string& transfer,
                const std::string& side) {
  Document doc = load(job);
  auto it = doc.torsions.find(pair);
  if (it == doc.torsions.end())
    throw UsageError("unknown torsion pair '" + pair +
                     "' in the input file");
  if (rep.empty() == transfer.empty())
    throw UsageError("pass exactly one of --rep and --transfer");
  std::vector<std::pair<std::string, Rep>> tg, fg;
  for (const std::string& g : it->second.torsion_gens)
    tg.emplace_back(g, find_rep(doc, g));
  for (const std::string& g : it->second.free_gens)
    fg.emplace_back(g, find_rep(doc, g));
  TorsionPair tp;
  try {
    tp = make_torsion_pair(tg, fg);
  } catch (const UsageError& e) {
    // An invalid pair is a mathematical "no", not a malformed invocation.
    throw NegativeResult(e.what());
  }
  json report = base_report(job, "torsion");
  report["pair"] = pair;
  if (!rep.empty()) {
    const Rep& x = find_rep(doc, rep);
    TorsionSeq cs = canonical_seq(x, tp, job.seed);
    report["rep"] = rep;
    report["sequence"] = ses_json(cs.seq);
    report["torsion_side"] = membership_json(cs.torsion_side);
    report["free_side"] = membership_json(cs.free_side);
    report["valid"] = cs.valid_on_object();
    if (cs.torsion_side.verdict == MemberVerdict::undetermined ||
        cs.free_side.verdict == MemberVerdict::undetermined)
      return finish(job, report, "undetermined", 3);
    if (!cs.valid_on_object()) {
      const Membership& bad =
          cs.torsion_side.verdict != MemberVerdict::yes ? cs.torsion_side
                                                        : cs.free_side;
      report["witness"] = bad.witness;
      return finish(job, report, "negative", 1);
    }
    return finish(job, report, "ok", 0);
  }
  const Rep& z = find_rep(doc, transfer);
  AlmostSplit a = almost_split_sequence(z, job.seed);
  TorsionTransfer tt = side == "torsion"
                           ? transfer_torsion_side(a.ses, tp, job.seed)
                           : transfer_free_side(a.ses, tp, job.seed);
  report["transfer"] = transfer;
  report["side"] = side;
  report["ambient"] = ses_json(a.ses);
  report["sequence"] = ses_json(tt.seq);
  report["certificate"] = cert_json(tt.cert);
  return finish(job, report, "ok", 0);
}

int cmd_inf_dtr(const Job& job, const std::string& fprep, int depth) {
  Document doc = load(job);
  FPRep m = build_fprep(doc, job, fprep);
  DtrVerdict v = dtr_inf(m, depth, job.seed);
  json report = base_report(job, "inf-dtr");
  report["fprep"] = fprep;
  report.update(dtr_verdict_json(v));
  return finish(job, report, "ok", 0);
}

int cmd_inf_ass(const Job& job, const std::string& fprep) {
  Document doc = load(job);
  FPRep m = build_fprep(doc, job, fprep);
  AssInRep a = ass_in_rep_plus(m, job.seed);
  json report = base_report(job, "inf-ass");
  report["fprep"] = fprep;
  report.update(ass_in_rep_json(a));
  if (!a.has_ass) return finish(job, report, "negative", 1);
  return finish(job, report, "ok", 0);
}

}  // namespace

int main(int argc, char** argv) {
  Job job;
  CLI::App app{
      "Auslander-Reiten theory for quiver representations over a prime "
      "field: decompositions, Ext, translates, almost split sequences, "
      "subcategory approximations, torsion pairs, and ray quivers."};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--prime", job.prime,
                 "Prime modulus for quiver-level and fprep operations");
  app.add_option("--seed", job.seed, "Seed for randomized certificates");
  app.add_option("--budget", job.budget,
                 "Override search budgets (0 keeps each default)");
  app.add_option("--format", job.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "dot"}));

  std::string rep, from, to, zname, xname, verify, quiver, dotfile;
  std::string subcat, side = "right", pair, transfer, tside = "torsion";
  std::string fprep;
  int depth = 0;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", job.file, "Input .arq document")->required();
  };

  CLI::App* c_check = app.add_subcommand("check", "Parse and validate");
  add_file(c_check);

  CLI::App* c_dec =
      app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  add_file(c_dec);
  c_dec->add_option("--rep", rep, "Representation name")->required();

  CLI::App* c_hom = app.add_subcommand("hom", "Dimension of a Hom space");
  add_file(c_hom);
  c_hom->add_option("--from", from, "Source representation")->required();
  c_hom->add_option("--to", to, "Target representation")->required();

  CLI::App* c_ext = app.add_subcommand("ext", "Dimension of an Ext space");
  add_file(c_ext);
  c_ext->add_option("--z", zname, "Right-hand representation")->required();
  c_ext->add_option("--x", xname, "Left-hand representation")->required();

  CLI::App* c_dtr =
      app.add_subcommand("dtr", "Auslander-Reiten translate DTr");
  add_file(c_dtr);
  c_dtr->add_option("--rep", rep, "Representation name")->required();

  CLI::App* c_trd = app.add_subcommand("trd", "Inverse translate TrD");
  add_file(c_trd);
  c_trd->add_option("--rep", rep, "Representation name")->required();

  CLI::App* c_ass =
      app.add_subcommand("ass", "Almost split sequence ending at a rep");
  add_file(c_ass);
  c_ass->add_option("--rep", rep, "Right-hand representation")->required();
  c_ass->add_option("--verify-against", verify,
                    "'all' or a comma-separated list of test reps");

  CLI::App* c_arq = app.add_subcommand("arquiver", "Knit the AR quiver");
  add_file(c_arq);
  c_arq->add_option("--quiver", quiver, "Quiver name")->required();
  c_arq->add_option("--dot", dotfile, "Write DOT output to this file");

  CLI::App* c_apx =
      app.add_subcommand("approx", "Minimal stable approximation");
  add_file(c_apx);
  c_apx->add_option("--rep", rep, "Representation to approximate")
      ->required();
  c_apx->add_option("--subcat", subcat, "Subcategory name")->required();
  c_apx->add_option("--side", side, "Approximation side")
      ->check(CLI::IsMember({"right", "left"}));

  CLI::App* c_sass = app.add_subcommand(
      "subcat-ass", "Almost split sequence inside a subcategory");
  add_file(c_sass);
  c_sass->add_option("--rep", rep, "Right-hand representation")->required();
  c_sass->add_option("--subcat", subcat, "Subcategory name")->required();

  CLI::App* c_tor = app.add_subcommand(
      "torsion", "Torsion pair: canonical sequence or sequence transfer");
  add_file(c_tor);
  c_tor->add_option("--pair", pair, "Torsion pair name")->required();
  c_tor->add_option("--rep", rep, "Object for the canonical sequence");
  c_tor->add_option("--transfer", transfer,
                    "Transfer the almost split sequence ending at this rep");
  c_tor->add_option("--side", tside, "Receiving side of the transfer")
      ->check(CLI::IsMember({"torsion", "free"}));

  CLI::App* c_idtr =
      app.add_subcommand("inf-dtr", "Translate of a finitely presented rep");
  add_file(c_idtr);
  c_idtr->add_option("--fprep", fprep, "Presentation name")->required();
  c_idtr->add_option("--depth", depth, "Truncation depth (0 = automatic)");

  CLI::App* c_iass = app.add_subcommand(
      "inf-ass", "Almost split sequence for a finitely presented rep");
  add_file(c_iass);
  c_iass->add_option("--fprep", fprep, "Presentation name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string cmd;
  for (CLI::App* sub :
       {c_check, c_dec, c_hom, c_ext, c_dtr, c_trd, c_ass, c_arq, c_apx,
        c_sass, c_tor, c_idtr, c_iass})
    if (sub->parsed()) cmd = sub->get_name();

  return guarded(job, cmd, [&]() -> int {
    if (!is_prime(job.prime))
      throw UsageError("modulus " + std::to_string(job.prime) +
                       " is not prime");
    if (job.format == "dot" && cmd != "arquiver")
      throw UsageError("the dot format is only available for 'arquiver'");
    if (cmd == "check") return cmd_check(job);
    if (cmd == "decompose") return cmd_decompose(job, rep);
    if (cmd == "hom") return cmd_hom(job, from, to);
    if (cmd == "ext") return cmd_ext(job, zname, xname);
    if (cmd == "dtr" || cmd == "trd") return cmd_translate(job, cmd, rep);
    if (cmd == "ass") return cmd_ass(job, rep, verify);
    if (cmd == "arquiver") return cmd_arquiver(job, quiver, dotfile);
    if (cmd == "approx") return cmd_approx(job, rep, subcat, side);
    if (cmd == "subcat-ass") return cmd_subcat_ass(job, rep, subcat);
    if (cmd == "torsion")
      return cmd_torsion(job, pair, rep, transfer, tside);
    if (cmd == "inf-dtr") return cmd_inf_dtr(job, fprep, depth);
    if (cmd == "inf-ass") return cmd_inf_ass(job, fprep);
    throw UsageError("no subcommand selected");
  });
}
