#include "arq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace arq {

namespace {

bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '.';
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Token {
  std::string text;
  int line = 0, col = 0;
  bool ident = false;
  bool end = false;
};

std::vector<Token> lex(const std::string& text, const std::string& file) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      size_t j = i;
      while (j < text.size() && text[j] != '\n') ++j;
      advance(j - i);
      continue;
    }
    if (std::isspace((unsigned char)c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_char(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.text = text.substr(i, j - i);
      t.ident = true;
      toks.push_back(t);
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.text = "->";
      toks.push_back(t);
      advance(2);
      continue;
    }
    static const std::string singles = "{};:,=[]*+-";
    if (singles.find(c) != std::string::npos) {
      t.text = std::string(1, c);
      toks.push_back(t);
      advance(1);
      continue;
    }
    throw ParseError(file, line, col, std::string("unexpected character '") + c + "'");
  }
  Token eof;
  eof.line = line;
  eof.col = col;
  eof.end = true;
  toks.push_back(eof);
  return toks;
}

class Parser {
 public:
  Parser(const std::string& text, std::string file)
      : file_(std::move(file)), toks_(lex(text, file_)) {}

  Document run() {
    while (!peek().end) {
      Token kw = expect_ident("a block keyword");
      if (kw.text == "quiver")
        parse_quiver(kw, false);
      else if (kw.text == "rayquiver")
        parse_quiver(kw, true);
      else if (kw.text == "rep")
        parse_rep();
      else if (kw.text == "subcat")
        parse_subcat();
      else if (kw.text == "torsion")
        parse_torsion();
      else if (kw.text == "fprep")
        parse_fprep();
      else
        fail(kw,
             "expected a block keyword (quiver, rayquiver, rep, subcat, "
             "torsion, fprep), got '" +
                 kw.text + "'");
    }
    return std::move(doc_);
  }

 private:
  std::string file_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Document doc_;

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(file_, t.line, t.col, msg);
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  bool accept_punct(const std::string& p) {
    if (!peek().end && !peek().ident && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  Token expect_punct(const std::string& p) {
    Token t = next();
    if (t.end || t.ident || t.text != p)
      fail(t, "expected '" + p + "', got '" + (t.end ? "end of input" : t.text) + "'");
    return t;
  }

  Token expect_ident(const std::string& what) {
    Token t = next();
    if (!t.ident)
      fail(t, "expected " + what + ", got '" + (t.end ? "end of input" : t.text) + "'");
    return t;
  }

  long long expect_int(const std::string& what) {
    bool neg = accept_punct("-");
    Token t = expect_ident(what);
    if (!all_digits(t.text)) fail(t, "expected " + what + ", got '" + t.text + "'");
    long long v = 0;
    for (char c : t.text) {
      v = v * 10 + (c - '0');
      if (v > (1LL << 40)) fail(t, "integer too large");
    }
    return neg ? -v : v;
  }

  // Idents until a reserved keyword, a punct, or end of statement.
  std::vector<Token> ident_list(const std::set<std::string>& stop) {
    std::vector<Token> out;
    while (peek().ident && !stop.count(peek().text)) out.push_back(next());
    accept_punct(";");
    return out;
  }

  void declare(const std::string& kind, const Token& name) {
    bool dup = false;
    if (kind == "quiver") dup = doc_.quivers.count(name.text);
    if (kind == "rayquiver") dup = doc_.rayquivers.count(name.text);
    if (kind == "rep") dup = doc_.reps.count(name.text);
    if (kind == "subcat") dup = doc_.subcats.count(name.text);
    if (kind == "torsion") dup = doc_.torsions.count(name.text);
    if (kind == "fprep") dup = doc_.fpreps.count(name.text);
    if (dup) fail(name, "duplicate " + kind + " '" + name.text + "'");
    doc_.order.emplace_back(kind, name.text);
  }

  void parse_quiver(const Token& kw, bool is_ray) {
    Token name = expect_ident("a name");
    declare(is_ray ? "rayquiver" : "quiver", name);
    expect_punct("{");
    std::vector<std::string> vertices;
    std::set<std::string> vset;
    std::vector<std::array<std::string, 3>> arrows;
    std::set<std::string> aset;
    std::vector<std::pair<std::string, std::string>> rays;
    std::set<std::string> rset;
    const std::set<std::string> stop = {"vertices", "arrow", "ray"};
    while (!accept_punct("}")) {
      Token st = expect_ident("a statement (vertices, arrow" +
                              std::string(is_ray ? ", ray)" : ")"));
      if (st.text == "vertices") {
        for (auto& v : ident_list(stop)) {
          if (!vset.insert(v.text).second) fail(v, "duplicate vertex '" + v.text + "'");
          vertices.push_back(v.text);
        }
      } else if (st.text == "arrow") {
        Token id = expect_ident("an arrow id");
        expect_punct(":");
        Token src = expect_ident("a source vertex");
        expect_punct("->");
        Token tgt = expect_ident("a target vertex");
        accept_punct(";");
        if (!aset.insert(id.text).second) fail(id, "duplicate arrow '" + id.text + "'");
        if (!vset.count(src.text)) fail(src, "unknown vertex " + src.text);
        if (!vset.count(tgt.text)) fail(tgt, "unknown vertex " + tgt.text);
        arrows.push_back({id.text, src.text, tgt.text});
      } else if (is_ray && st.text == "ray") {
        Token id = expect_ident("a ray id");
        expect_punct(":");
        Token orient = expect_ident("an orientation");
        Token attach = expect_ident("an attachment vertex");
        accept_punct(";");
        if (orient.text == "out")
          fail(orient, "ray '" + id.text +
                           "' is oriented away from the core; rays must point "
                           "into the core");
        if (orient.text != "into")
          fail(orient, "expected orientation 'into', got '" + orient.text + "'");
        if (!rset.insert(id.text).second) fail(id, "duplicate ray '" + id.text + "'");
        if (!vset.count(attach.text)) fail(attach, "unknown vertex " + attach.text);
        rays.emplace_back(id.text, attach.text);
      } else {
        fail(st, "unknown statement '" + st.text + "'");
      }
    }
    Quiver core(name.text, vertices, arrows);
    if (!core.acyclic())
      fail(name, "quiver '" + name.text + "' has a directed cycle");
    if (is_ray) {
      try {
        doc_.rayquivers[name.text] =
            std::make_shared<RayQuiver>(name.text, std::move(core), rays);
      } catch (const UsageError& e) {
        fail(name, e.what());
      }
    } else {
      doc_.quivers[name.text] = std::make_shared<Quiver>(std::move(core));
    }
  }

  void parse_rep() {
    Token name = expect_ident("a name");
    declare("rep", name);
    over("quiver");
    Token qname = expect_ident("a quiver name");
    auto qit = doc_.quivers.find(qname.text);
    if (qit == doc_.quivers.end()) fail(qname, "unknown quiver '" + qname.text + "'");
    QuiverPtr q = qit->second;
    Token pk = expect_ident("'prime'");
    if (pk.text != "prime") fail(pk, "expected 'prime', got '" + pk.text + "'");
    Token ptok = peek();
    long long pval = expect_int("a prime");
    if (pval < 2 || !is_prime((u64)pval))
      fail(ptok, "modulus " + std::to_string(pval) + " is not prime");
    u32 p = (u32)pval;
    expect_punct("{");
    std::vector<int> dims(q->num_vertices(), 0);
    std::set<int> dim_seen;
    std::vector<std::optional<Mat>> mats(q->num_arrows());
    while (!accept_punct("}")) {
      Token st = expect_ident("a statement (dims, mat)");
      if (st.text == "dims") {
        expect_punct("{");
        while (!accept_punct("}")) {
          Token v = expect_ident("a vertex");
          int vi = q->vertex_index(v.text);
          if (vi < 0) fail(v, "unknown vertex " + v.text);
          if (!dim_seen.insert(vi).second)
            fail(v, "duplicate dimension for vertex '" + v.text + "'");
          expect_punct(":");
          Token dt = peek();
          long long d = expect_int("a dimension");
          if (d < 0 || d > 4096) fail(dt, "dimension out of range");
          dims[vi] = (int)d;
          accept_punct(";");
        }
      } else if (st.text == "mat") {
        Token a = expect_ident("an arrow");
        int ai = q->arrow_index(a.text);
        if (ai < 0) fail(a, "unknown arrow " + a.text);
        if (mats[ai]) fail(a, "duplicate matrix for arrow '" + a.text + "'");
        expect_punct("=");
        mats[ai] = parse_matrix(p, a);
        accept_punct(";");
      } else {
        fail(st, "unknown statement '" + st.text + "'");
      }
    }
    std::vector<Mat> final_mats;
    for (int a = 0; a < q->num_arrows(); ++a) {
      const Arrow& ar = q->arrow(a);
      int rows = dims[ar.tgt], cols = dims[ar.src];
      if (!mats[a]) {
        final_mats.emplace_back(p, rows, cols);
        continue;
      }
      if (mats[a]->rows != rows || mats[a]->cols != cols)
        fail(name, "matrix for arrow '" + ar.id + "' must be " +
                       std::to_string(rows) + "x" + std::to_string(cols) +
                       ", got " + std::to_string(mats[a]->rows) + "x" +
                       std::to_string(mats[a]->cols));
      final_mats.push_back(std::move(*mats[a]));
    }
    doc_.reps.emplace(name.text, Rep(q, p, std::move(dims), std::move(final_mats)));
  }

  Mat parse_matrix(u32 p, const Token& where) {
    expect_punct("[");
    std::vector<std::vector<long long>> rows;
    if (!accept_punct("]")) {
      do {
        expect_punct("[");
        std::vector<long long> row;
        if (!accept_punct("]")) {
          do {
            row.push_back(expect_int("a matrix entry"));
          } while (accept_punct(","));
          expect_punct("]");
        }
        rows.push_back(std::move(row));
      } while (accept_punct(","));
      expect_punct("]");
    }
    int r = (int)rows.size();
    int c = rows.empty() ? 0 : (int)rows[0].size();
    for (auto& row : rows)
      if ((int)row.size() != c)
        fail(where, "ragged matrix for arrow '" + where.text + "'");
    Mat m(p, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = fp_from_int(rows[i][j], p);
    return m;
  }

  void over(const std::string& kind) {
    Token t = expect_ident("'over'");
    if (t.text != "over") fail(t, "expected 'over', got '" + t.text + "'");
    (void)kind;
  }

  // Shared by subcat and torsion: rep names over the given quiver, one prime.
  std::vector<std::string> gen_list(const std::vector<Token>& toks, QuiverPtr q,
                                    const std::string& qname) {
    std::vector<std::string> out;
    std::optional<u32> prime;
    for (auto& t : toks) {
      auto it = doc_.reps.find(t.text);
      if (it == doc_.reps.end()) fail(t, "unknown rep '" + t.text + "'");
      if (it->second.q != q)
        fail(t, "rep '" + t.text + "' is not over quiver '" + qname + "'");
      if (prime && *prime != it->second.p)
        fail(t, "generators use different primes");
      prime = it->second.p;
      out.push_back(t.text);
    }
    return out;
  }

  void parse_subcat() {
    Token name = expect_ident("a name");
    declare("subcat", name);
    over("quiver");
    Token qname = expect_ident("a quiver name");
    auto qit = doc_.quivers.find(qname.text);
    if (qit == doc_.quivers.end()) fail(qname, "unknown quiver '" + qname.text + "'");
    expect_punct("{");
    SubcatDecl decl;
    decl.name = name.text;
    decl.quiver = qname.text;
    const std::set<std::string> stop = {"gens"};
    bool have = false;
    while (!accept_punct("}")) {
      Token st = expect_ident("'gens'");
      if (st.text != "gens") fail(st, "unknown statement '" + st.text + "'");
      if (have) fail(st, "duplicate gens statement");
      have = true;
      decl.gens = gen_list(ident_list(stop), qit->second, qname.text);
    }
    if (decl.gens.empty()) fail(name, "subcat '" + name.text + "' has no generators");
    doc_.subcats.emplace(name.text, std::move(decl));
  }

  void parse_torsion() {
    Token name = expect_ident("a name");
    declare("torsion", name);
    over("quiver");
    Token qname = expect_ident("a quiver name");
    auto qit = doc_.quivers.find(qname.text);
    if (qit == doc_.quivers.end()) fail(qname, "unknown quiver '" + qname.text + "'");
    expect_punct("{");
    TorsionDecl decl;
    decl.name = name.text;
    decl.quiver = qname.text;
    const std::set<std::string> stop = {"torsion", "free"};
    bool have_t = false, have_f = false;
    while (!accept_punct("}")) {
      Token st = expect_ident("a statement (torsion, free)");
      if (st.text == "torsion") {
        if (have_t) fail(st, "duplicate torsion statement");
        have_t = true;
        decl.torsion_gens = gen_list(ident_list(stop), qit->second, qname.text);
      } else if (st.text == "free") {
        if (have_f) fail(st, "duplicate free statement");
        have_f = true;
        decl.free_gens = gen_list(ident_list(stop), qit->second, qname.text);
      } else {
        fail(st, "unknown statement '" + st.text + "'");
      }
    }
    if (!have_t || !have_f)
      fail(name, "torsion '" + name.text + "' needs both torsion and free statements");
    doc_.torsions.emplace(name.text, std::move(decl));
  }

  void parse_fprep() {
    Token name = expect_ident("a name");
    declare("fprep", name);
    over("rayquiver");
    Token qname = expect_ident("a rayquiver name");
    auto qit = doc_.rayquivers.find(qname.text);
    if (qit == doc_.rayquivers.end())
      fail(qname, "unknown rayquiver '" + qname.text + "'");
    const RayQuiver& rq = *qit->second;
    expect_punct("{");
    FPRepDecl decl;
    decl.name = name.text;
    decl.rayquiver = qname.text;
    const std::set<std::string> stop = {"p0", "p1", "entry"};
    bool have0 = false, have1 = false;
    struct RawEntry {
      long long i, j;
      Token it, jt, st;
      std::vector<PathTerm> terms;
    };
    std::vector<RawEntry> entries;
    while (!accept_punct("}")) {
      Token st = expect_ident("a statement (p0, p1, entry)");
      if (st.text == "p0" || st.text == "p1") {
        bool& have = st.text == "p0" ? have0 : have1;
        if (have) fail(st, "duplicate " + st.text + " statement");
        have = true;
        auto& list = st.text == "p0" ? decl.p0 : decl.p1;
        for (auto& v : ident_list(stop)) {
          int cv, ray, level;
          if (!rq.resolve_vertex(v.text, cv, ray, level))
            fail(v, "unknown vertex " + v.text);
          list.push_back(v.text);
        }
      } else if (st.text == "entry") {
        Token it = peek();
        long long i = expect_int("a row index");
        Token jt = peek();
        long long j = expect_int("a column index");
        expect_punct("=");
        auto terms = parse_path_expr(rq);
        accept_punct(";");
        entries.push_back(RawEntry{i, j, it, jt, st, std::move(terms)});
      } else {
        fail(st, "unknown statement '" + st.text + "'");
      }
    }
    if (!have0 || !have1)
      fail(name, "fprep '" + name.text + "' needs both p0 and p1 statements");
    for (auto& e : entries) {
      if (e.i < 0 || e.i >= (long long)decl.p0.size())
        fail(e.it, "entry row " + std::to_string(e.i) + " out of range (p0 has " +
                       std::to_string(decl.p0.size()) + " summands)");
      if (e.j < 0 || e.j >= (long long)decl.p1.size())
        fail(e.jt, "entry column " + std::to_string(e.j) +
                       " out of range (p1 has " + std::to_string(decl.p1.size()) +
                       " summands)");
      auto key = std::make_pair((int)e.i, (int)e.j);
      if (decl.entries.count(key))
        fail(e.st, "duplicate entry (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ")");
      check_terms(rq, decl.p0[e.i], decl.p1[e.j], e.terms, e.st);
      decl.entries[key] = std::move(e.terms);
    }
    doc_.fpreps.emplace(name.text, std::move(decl));
  }

  std::vector<PathTerm> parse_path_expr(const RayQuiver& rq) {
    std::vector<PathTerm> terms;
    do {
      PathTerm term;
      bool neg = accept_punct("-");
      // A leading all-digit factor followed by '*' is a coefficient.
      if (peek().ident && all_digits(peek().text) && toks_[pos_ + 1].text == "*" &&
          !toks_[pos_ + 1].ident) {
        term.coeff = expect_int("a coefficient");
        expect_punct("*");
      }
      if (neg) term.coeff = -term.coeff;
      Token head = expect_ident("a path factor");
      if (head.text == "e" && accept_punct("[")) {
        Token v = expect_ident("a vertex");
        expect_punct("]");
        int cv, ray, level;
        if (!rq.resolve_vertex(v.text, cv, ray, level))
          fail(v, "unknown vertex " + v.text);
        term.trivial = true;
        term.trivial_at = v.text;
      } else {
        term.arrows.push_back(head.text);
        while (accept_punct("*")) term.arrows.push_back(expect_ident("an arrow").text);
        for (auto& a : term.arrows) {
          int ca, ray, level;
          if (!rq.resolve_arrow(a, ca, ray, level))
            fail(head, "unknown arrow " + a);
        }
      }
      terms.push_back(std::move(term));
    } while (accept_punct("+"));
    return terms;
  }

  void check_terms(const RayQuiver& rq, const std::string& from,
                   const std::string& to, const std::vector<PathTerm>& terms,
                   const Token& where) {
    for (auto& term : terms) {
      if (term.trivial) {
        if (term.trivial_at != from || term.trivial_at != to)
          fail(where, "trivial path e[" + term.trivial_at +
                          "] does not run from " + from + " to " + to);
        continue;
      }
      std::string at = from;
      for (auto& a : term.arrows) {
        std::string src, tgt;
        rq.arrow_endpoints(a, src, tgt);
        if (src != at)
          fail(where, "path does not compose at '" + a + "' (expected a path from " +
                          from + " to " + to + ")");
        at = tgt;
      }
      if (at != to)
        fail(where, "path ends at " + at + " but entry needs " + from + " -> " + to);
    }
  }
};

std::string render_matrix(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    if (i) os << ", ";
    os << "[";
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << ", ";
      os << m.at(i, j);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

void render_quiver_body(std::ostringstream& os, const Quiver& q) {
  if (q.num_vertices()) {
    os << "  vertices";
    for (auto& v : q.vertices()) os << " " << v;
    os << ";\n";
  }
  for (auto& a : q.arrows())
    os << "  arrow " << a.id << ": " << q.vertex_name(a.src) << " -> "
       << q.vertex_name(a.tgt) << ";\n";
}

std::string render_terms(const std::vector<PathTerm>& terms) {
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != 1) os << t.coeff << "*";
    if (t.trivial) {
      os << "e[" << t.trivial_at << "]";
    } else {
      for (size_t k = 0; k < t.arrows.size(); ++k) {
        if (k) os << "*";
        os << t.arrows[k];
      }
    }
  }
  return os.str();
}

}  // namespace

Document parse_document(const std::string& text, const std::string& filename) {
  return Parser(text, filename).run();
}

std::string render_document(const Document& d) {
  std::ostringstream os;
  for (auto& [kind, name] : d.order) {
    if (kind == "quiver") {
      const Quiver& q = *d.quivers.at(name);
      os << "quiver " << name << " {\n";
      render_quiver_body(os, q);
      os << "}\n";
    } else if (kind == "rayquiver") {
      const RayQuiver& rq = *d.rayquivers.at(name);
      os << "rayquiver " << name << " {\n";
      render_quiver_body(os, rq.core());
      for (auto& r : rq.rays())
        os << "  ray " << r.id << ": into " << rq.core().vertex_name(r.attach)
           << ";\n";
      os << "}\n";
    } else if (kind == "rep") {
      const Rep& m = d.reps.at(name);
      os << "rep " << name << " over " << m.q->name() << " prime " << m.p
         << " {\n  dims {";
      bool any = false;
      for (int v = 0; v < m.q->num_vertices(); ++v)
        if (m.dims[v]) {
          os << " " << m.q->vertex_name(v) << ": " << m.dims[v] << ";";
          any = true;
        }
      os << (any ? " }\n" : "}\n");
      for (int a = 0; a < m.q->num_arrows(); ++a)
        if (!m.mats[a].is_zero())
          os << "  mat " << m.q->arrow(a).id << " = " << render_matrix(m.mats[a])
             << ";\n";
      os << "}\n";
    } else if (kind == "subcat") {
      const SubcatDecl& c = d.subcats.at(name);
      os << "subcat " << name << " over " << c.quiver << " {\n  gens";
      for (auto& g : c.gens) os << " " << g;
      os << ";\n}\n";
    } else if (kind == "torsion") {
      const TorsionDecl& t = d.torsions.at(name);
      os << "torsion " << name << " over " << t.quiver << " {\n  torsion";
      for (auto& g : t.torsion_gens) os << " " << g;
      os << ";\n  free";
      for (auto& g : t.free_gens) os << " " << g;
      os << ";\n}\n";
    } else if (kind == "fprep") {
      const FPRepDecl& f = d.fpreps.at(name);
      os << "fprep " << name << " over " << f.rayquiver << " {\n  p0";
      for (auto& v : f.p0) os << " " << v;
      os << ";\n  p1";
      for (auto& v : f.p1) os << " " << v;
      os << ";\n";
      for (auto& [key, terms] : f.entries)
        os << "  entry " << key.first << " " << key.second << " = "
           << render_terms(terms) << ";\n";
      os << "}\n";
    }
  }
  return os.str();
}

}  // namespace arq
