#include "arq/report.hpp"

#include <sstream>

namespace arq {

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(rows)}};
}

json rep_json(const Rep& m) {
  json dims = json::object();
  for (int v = 0; v < m.q->num_vertices(); ++v)
    dims[m.q->vertex_name(v)] = m.dims[v];
  return json{{"total", m.total_dim()}, {"dims", std::move(dims)}};
}

json ses_json(const ShortExact& s) {
  return json{{"x", rep_json(s.x())}, {"y", rep_json(s.y())},
              {"z", rep_json(s.z())}};
}

json cert_json(const AssCertificate& c) {
  json tests = json::array();
  for (const AssTestLine& t : c.tests)
    tests.push_back(json{{"name", t.name},
                         {"right_ok", t.right_ok},
                         {"left_ok", t.left_ok}});
  json hit = json::array();
  for (bool b : c.middle_summand_hit) hit.push_back(b);
  return json{{"ok", c.ok()},
              {"nonsplit", c.nonsplit},
              {"end_x_local", c.end_x_local},
              {"end_z_local", c.end_z_local},
              {"minimal", c.minimal},
              {"middle_summand_hit", std::move(hit)},
              {"tests", std::move(tests)},
              {"failure", c.failure}};
}

json decomposition_json(const DecompositionReport& d) {
  json parts = json::array();
  for (const DecPart& part : d.parts)
    parts.push_back(json{{"rep", rep_json(part.rep)},
                         {"multiplicity", part.multiplicity},
                         {"certified", part.certified},
                         {"end_dim", part.end_dim}});
  return json{{"all_certified", d.all_certified}, {"parts", std::move(parts)}};
}

json membership_json(const Membership& m) {
  const char* v = m.verdict == MemberVerdict::yes  ? "yes"
                  : m.verdict == MemberVerdict::no ? "no"
                                                   : "undetermined";
  json out{{"verdict", v}};
  if (!m.witness.empty()) out["witness"] = m.witness;
  return out;
}

json closure_json(const ClosureReport& c) {
  json out{{"closed", c.closed},
           {"exhaustive", c.exhaustive},
           {"sampled_warning", c.sampled_warning}};
  if (!c.witness.empty()) out["witness"] = c.witness;
  return out;
}

json approx_json(const Approximation& a, const SubcatSpec& c, bool right) {
  json summands = json::array();
  for (int g : a.summand_gens) summands.push_back(c.gens[g].first);
  const Rep& approximating = right ? a.map.src() : a.map.dst();
  json out{{"approximating", rep_json(approximating)},
           {"summands", std::move(summands)},
           {"zero", a.map.is_zero()},
           {"minimal", a.minimal}};
  if (!a.witness.empty()) out["witness"] = a.witness;
  return out;
}

json ar_quiver_json(const ArQuiverResult& aq) {
  json nodes = json::array();
  for (const ArNode& n : aq.nodes)
    nodes.push_back(json{{"name", n.name},
                         {"rep", rep_json(n.rep)},
                         {"projective", n.projective_node},
                         {"injective", n.injective_node}});
  json arrows = json::array();
  for (const ArArrow& a : aq.arrows)
    arrows.push_back(json{{"from", aq.nodes[a.from].name},
                          {"to", aq.nodes[a.to].name},
                          {"mult", a.mult}});
  json tau = json::array();
  for (auto& [z, x] : aq.tau)
    tau.push_back(json{{"of", aq.nodes[z].name}, {"is", aq.nodes[x].name}});
  json out{{"rep_finite", aq.rep_finite},
           {"nodes", std::move(nodes)},
           {"arrows", std::move(arrows)},
           {"tau", std::move(tau)}};
  if (!aq.witness.empty()) out["witness"] = aq.witness;
  return out;
}

json dtr_verdict_json(const DtrVerdict& v) {
  json certs = json::array();
  for (const RayCertificate& c : v.certificates)
    certs.push_back(json{{"ray", c.ray},
                         {"ring", c.ring},
                         {"blocks_equal", c.blocks_equal},
                         {"stable_dim", c.stable_dim}});
  json out{{"finite", v.finite},
           {"depth", v.depth},
           {"certificates", std::move(certs)}};
  if (v.finite) {
    out["translate"] = rep_json(v.rep);
  } else {
    out["ray_witness"] = v.ray_witness;
    out["stable_dim"] = v.stable_dim;
  }
  return out;
}

json ass_in_rep_json(const AssInRep& a) {
  json out{{"has_sequence", a.has_ass}, {"depth", a.window.depth}};
  if (a.has_ass) {
    out["sequence"] = ses_json(a.seq);
    out["certificate"] = cert_json(a.cert);
    out["tests"] = a.tests;
  } else {
    out["witness"] = a.witness;
    out["ray_witness"] = a.ray_witness;
    out["stable_dim"] = a.stable_dim;
  }
  return out;
}

namespace {

bool scalar(const json& v) {
  return !v.is_object() && !v.is_array();
}

void render_value(const json& v, int indent, std::ostream& os);

void render_object(const json& v, int indent, std::ostream& os) {
  std::string pad(indent, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    os << pad << it.key() << ":";
    if (scalar(it.value())) {
      os << " " << it.value().dump() << "\n";
    } else if (it.value().empty()) {
      os << " " << (it.value().is_array() ? "[]" : "{}") << "\n";
    } else {
      os << "\n";
      render_value(it.value(), indent + 2, os);
    }
  }
}

void render_array(const json& v, int indent, std::ostream& os) {
  std::string pad(indent, ' ');
  bool all_scalar = true;
  for (const json& e : v)
    if (!scalar(e)) all_scalar = false;
  if (all_scalar) {
    os << pad << v.dump() << "\n";
    return;
  }
  for (const json& e : v) {
    os << pad << "-\n";
    render_value(e, indent + 2, os);
  }
}

void render_value(const json& v, int indent, std::ostream& os) {
  if (v.is_object())
    render_object(v, indent, os);
  else if (v.is_array())
    render_array(v, indent, os);
  else
    os << std::string(indent, ' ') << v.dump() << "\n";
}

bool type_matches(const std::string& t, const json& doc) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "integer") return doc.is_number_integer();
  if (t == "number") return doc.is_number();
  if (t == "boolean") return doc.is_boolean();
  if (t == "null") return doc.is_null();
  return false;
}

bool check(const json& schema, const json& doc, const std::string& path,
           std::string& why) {
  if (!schema.is_object()) {
    why = path + ": schema node is not an object";
    return false;
  }
  if (auto it = schema.find("const"); it != schema.end()) {
    if (doc != *it) {
      why = path + ": expected constant " + it->dump();
      return false;
    }
  }
  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_array()) {
      for (const json& t : *it)
        if (type_matches(t.get<std::string>(), doc)) ok = true;
    } else {
      ok = type_matches(it->get<std::string>(), doc);
    }
    if (!ok) {
      why = path + ": wrong type, expected " + it->dump();
      return false;
    }
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    bool ok = false;
    for (const json& cand : *it)
      if (doc == cand) ok = true;
    if (!ok) {
      why = path + ": value " + doc.dump() + " not in " + it->dump();
      return false;
    }
  }
  if (auto it = schema.find("minimum"); it != schema.end()) {
    if (doc.is_number() && doc.get<double>() < it->get<double>()) {
      why = path + ": value below minimum " + it->dump();
      return false;
    }
  }
  if (auto it = schema.find("required"); it != schema.end()) {
    if (!doc.is_object()) {
      why = path + ": required applies to objects only";
      return false;
    }
    for (const json& key : *it)
      if (!doc.contains(key.get<std::string>())) {
        why = path + ": missing required field '" + key.get<std::string>() +
              "'";
        return false;
      }
  }
  const json* props = nullptr;
  if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
  if (props && doc.is_object()) {
    for (auto it = props->begin(); it != props->end(); ++it) {
      if (!doc.contains(it.key())) continue;
      if (!check(it.value(), doc.at(it.key()), path + "/" + it.key(), why))
        return false;
    }
  }
  if (auto it = schema.find("additionalProperties");
      it != schema.end() && doc.is_object()) {
    for (auto d = doc.begin(); d != doc.end(); ++d) {
      if (props && props->contains(d.key())) continue;
      if (it->is_boolean()) {
        if (!it->get<bool>()) {
          why = path + ": unexpected field '" + d.key() + "'";
          return false;
        }
      } else if (!check(*it, d.value(), path + "/" + d.key(), why)) {
        return false;
      }
    }
  }
  if (auto it = schema.find("items"); it != schema.end() && doc.is_array()) {
    int i = 0;
    for (const json& e : doc) {
      if (!check(*it, e, path + "[" + std::to_string(i) + "]", why))
        return false;
      ++i;
    }
  }
  for (const char* kind : {"oneOf", "anyOf"}) {
    auto it = schema.find(kind);
    if (it == schema.end()) continue;
    int hits = 0;
    std::string sub;
    for (const json& cand : *it) {
      std::string w;
      if (check(cand, doc, path, w))
        ++hits;
      else if (sub.empty())
        sub = w;
    }
    bool ok = std::string(kind) == "anyOf" ? hits >= 1 : hits == 1;
    if (!ok) {
      why = path + ": " + kind + " matched " + std::to_string(hits) +
            " alternatives (" + sub + ")";
      return false;
    }
  }
  return true;
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  render_value(report, 0, os);
  return os.str();
}

bool schema_check(const json& schema, const json& doc, std::string& why) {
  why.clear();
  return check(schema, doc, "", why);
}

}  // namespace arq
