#include "partload/lp_export.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "partload/cost.h"
#include "partload/errors.h"

namespace partload {

namespace {

std::string name_of(const char* prefix, std::size_t i) {
  return std::string(prefix) + "_" + std::to_string(i);
}
std::string name_of(const char* prefix, std::size_t i, std::size_t j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string name_of(const char* prefix, std::size_t i, std::size_t j, std::size_t k) {
  return name_of(prefix, i, j) + "_" + std::to_string(k);
}

class Builder {
 public:
  int var(std::string name) {
    model_.variables.push_back(std::move(name));
    return static_cast<int>(model_.variables.size() - 1);
  }
  std::vector<int> vars(const char* prefix, std::size_t i, std::size_t n) {
    std::vector<int> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = var(name_of(prefix, i, j));
    return out;
  }
  void cost(int v, double coef) {
    if (coef != 0) model_.objective.push_back({coef, v});
  }
  void row(std::string name, std::vector<LpTerm> terms, LpSense sense, double rhs) {
    model_.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }
  // x <= y
  void le(std::string name, int x, int y) {
    row(std::move(name), {{1, x}, {-1, y}}, LpSense::kLessEq, 0);
  }
  LpModel take() { return std::move(model_); }

 private:
  LpModel model_;
};

}  // namespace

LpModel build_mip(const CostParams& params, const Workload& workload, double budget,
                  EvalMode mode) {
  const bool pipelined = mode == EvalMode::kPipelined;
  ParseThreshold pt;
  if (pipelined) pt = parse_threshold(params);

  const std::size_t n = params.num_attributes();
  const std::size_t m = workload.queries.size();
  const double rows = static_cast<double>(params.row_count);
  const double raw_cost = params.raw_size / params.bandwidth;
  auto tok_cost = [&](std::size_t j) { return rows * params.attributes[j].t_tok; };
  auto parse_cost = [&](std::size_t j) { return rows * params.attributes[j].t_parse; };
  auto io_cost = [&](std::size_t j) { return rows * params.attributes[j].spf / params.bandwidth; };

  Builder b;
  std::vector<int> save(n);
  for (std::size_t j = 0; j < n; ++j) save[j] = b.var(name_of("save", j));
  std::vector<int> raw(m + 1);
  for (std::size_t i = 0; i <= m; ++i) raw[i] = b.var(name_of("raw", i));
  std::vector<std::vector<int>> t(m + 1), p(m + 1), read(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    t[i] = b.vars("t", i, n);
    p[i] = b.vars("p", i, n);
  }
  for (std::size_t i = 1; i <= m; ++i) read[i] = b.vars("read", i, n);

  std::vector<int> cpu(m + 1), io(m + 1), cpuraw(m + 1), ioraw(m + 1);
  std::vector<std::vector<int>> cput(m + 1), iot(m + 1), cpup(m + 1), iop(m + 1);
  if (pipelined) {
    for (std::size_t i = 1; i <= m; ++i) {
      cpu[i] = b.var(name_of("cpu", i));
      io[i] = b.var(name_of("io", i));
      cpuraw[i] = b.var(name_of("cpuraw", i));
      ioraw[i] = b.var(name_of("ioraw", i));
      cput[i] = b.vars("cput", i, n);
      iot[i] = b.vars("iot", i, n);
      cpup[i] = b.vars("cpup", i, n);
      iop[i] = b.vars("iop", i, n);
    }
  }

  // Objective: load time, then weighted query times.
  b.cost(raw[0], raw_cost);
  for (std::size_t j = 0; j < n; ++j) {
    b.cost(t[0][j], tok_cost(j));
    b.cost(p[0][j], parse_cost(j));
    b.cost(save[j], io_cost(j));
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const double w = workload.queries[i - 1].weight;
    b.cost(pipelined ? ioraw[i] : raw[i], w * raw_cost);
    for (std::size_t j = 0; j < n; ++j) {
      b.cost(pipelined ? cput[i][j] : t[i][j], w * tok_cost(j));
      b.cost(pipelined ? cpup[i][j] : p[i][j], w * parse_cost(j));
      b.cost(read[i][j], w * io_cost(j));
    }
  }

  // C1 storage bound
  {
    std::vector<LpTerm> terms;
    for (std::size_t j = 0; j < n; ++j) terms.push_back({params.column_bytes(static_cast<int>(j)), save[j]});
    b.row("c1", std::move(terms), LpSense::kLessEq, budget);
  }
  // C2 read only loaded columns
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 0; j < n; ++j) b.le(name_of("c2", i, j), read[i][j], save[j]);
  // C3 loading chain
  for (std::size_t j = 0; j < n; ++j) {
    b.le(name_of("c3a", j), save[j], p[0][j]);
    b.le(name_of("c3b", j), p[0][j], t[0][j]);
    b.le(name_of("c3c", j), t[0][j], raw[0]);
  }
  // C4 parse needs tokenize needs raw
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b.le(name_of("c4a", i, j), p[i][j], t[i][j]);
      b.le(name_of("c4b", i, j), t[i][j], raw[i]);
    }
  }
  // C5 tokenize prefix, or all-or-nothing tokenization
  for (std::size_t i = 0; i <= m; ++i) {
    if (params.tokenization_mode == TokenizationMode::kPrefix) {
      for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = 0; k < j; ++k) b.le(name_of("c5", i, j, k), t[i][j], t[i][k]);
    } else {
      for (std::size_t j = 1; j < n; ++j)
        b.row(name_of("c5", i, j), {{1, t[i][j]}, {-1, t[i][0]}}, LpSense::kEqual, 0);
    }
  }
  // C6 every needed attribute is read or parsed
  for (std::size_t i = 1; i <= m; ++i) {
    for (int a : workload.queries[i - 1].attrs) {
      const auto j = static_cast<std::size_t>(a);
      b.row(name_of("c6", i, j), {{1, read[i][j]}, {1, p[i][j]}}, LpSense::kEqual, 1);
    }
  }

  if (pipelined) {
    // With M = n + 1 and PT clamped to [0, n + 1] the two threshold rows
    // admit exactly cpu_i = 1 iff sum_j p_i_j >= PT.
    const double big = static_cast<double>(n + 1);
    const double threshold =
        pt.unbounded ? big : std::min(static_cast<double>(pt.pt), big);
    auto split = [&](const std::string& name, int c, int o, int x) {
      b.row(name, {{1, c}, {1, o}, {-1, x}}, LpSense::kEqual, 0);
    };
    for (std::size_t i = 1; i <= m; ++i) {
      b.row(name_of("c7", i), {{1, cpu[i]}, {1, io[i]}}, LpSense::kEqual, 1);
      split(name_of("c8", i), cpuraw[i], ioraw[i], raw[i]);
      for (std::size_t j = 0; j < n; ++j) {
        split(name_of("c9", i, j), cput[i][j], iot[i][j], t[i][j]);
        split(name_of("c10", i, j), cpup[i][j], iop[i][j], p[i][j]);
      }
      b.le(name_of("c11", i), cpuraw[i], cpu[i]);
      b.le(name_of("c14", i), ioraw[i], io[i]);
      for (std::size_t j = 0; j < n; ++j) {
        b.le(name_of("c12", i, j), cput[i][j], cpu[i]);
        b.le(name_of("c13", i, j), cpup[i][j], cpu[i]);
        b.le(name_of("c15", i, j), iot[i][j], io[i]);
        b.le(name_of("c16", i, j), iop[i][j], io[i]);
      }
      std::vector<LpTerm> c17, c18;
      for (std::size_t j = 0; j < n; ++j) {
        c17.push_back({1, p[i][j]});
        c18.push_back({-1, p[i][j]});
      }
      c17.push_back({-big, cpu[i]});
      c18.push_back({-big, io[i]});
      // sum p - PT <= M cpu - 1
      b.row(name_of("c17", i), std::move(c17), LpSense::kLessEq, threshold - 1);
      // PT - sum p <= M io
      b.row(name_of("c18", i), std::move(c18), LpSense::kLessEq, -threshold);
    }
  }
  return b.take();
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class LineWriter {
 public:
  explicit LineWriter(std::string& out) : out_(out) {}
  void put(const std::string& piece) {
    if (width_ + piece.size() > 200) {
      out_ += "\n   ";
      width_ = 3;
    }
    out_ += piece;
    width_ += piece.size();
  }
  void start(const std::string& head) {
    out_ += head;
    width_ = head.size();
  }
  void end() { out_ += "\n"; }

 private:
  std::string& out_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& w, const LpModel& model, const std::vector<LpTerm>& terms) {
  bool first = true;
  for (const LpTerm& term : terms) {
    const double mag = term.coef < 0 ? -term.coef : term.coef;
    std::string piece;
    if (term.coef < 0) piece = first ? "- " : " - ";
    else if (!first) piece = " + ";
    if (mag != 1) piece += number(mag) + " ";
    piece += model.variables[static_cast<std::size_t>(term.var)];
    w.put(piece);
    first = false;
  }
}

}  // namespace

std::string write_lp(const LpModel& model) {
  std::string out = "\\ partial loading MIP\nMinimize\n";
  LineWriter w(out);
  w.start(" obj: ");
  if (!model.objective.empty()) {
    write_terms(w, model, model.objective);
  } else if (!model.variables.empty()) {
    w.put("0 " + model.variables.front());
  }
  w.end();
  out += "Subject To\n";
  for (const LpConstraint& c : model.constraints) {
    w.start(" " + c.name + ": ");
    write_terms(w, model, c.terms);
    const char* sense = c.sense == LpSense::kLessEq ? " <= " : c.sense == LpSense::kGreaterEq ? " >= " : " = ";
    w.put(sense + number(c.rhs));
    w.end();
  }
  if (!model.variables.empty()) {
    out += "Binary\n";
    w.start("");
    for (const std::string& v : model.variables) w.put(" " + v);
    w.end();
  }
  out += "End\n";
  return out;
}

std::string export_mip_lp(const CostParams& params, const Workload& workload, double budget,
                          EvalMode mode) {
  return write_lp(build_mip(params, workload, budget, mode));
}

LpCounts expected_lp_counts(const CostParams& params, const Workload& workload, EvalMode mode) {
  const std::size_t n = params.num_attributes();
  const std::size_t m = workload.queries.size();
  std::size_t accessed = 0;
  for (const Query& q : workload.queries) accessed += q.attrs.size();

  LpCounts c;
  c.variables = n + (m + 1) + 2 * (m + 1) * n + m * n;
  const std::size_t c5 = params.tokenization_mode == TokenizationMode::kPrefix
                             ? (m + 1) * n * (n - 1) / 2
                             : (m + 1) * (n - 1);
  c.constraints = 1 + m * n + 3 * n + 2 * m * n + c5 + accessed;
  if (mode == EvalMode::kPipelined) {
    c.variables += 4 * m + 4 * m * n;
    c.constraints += m + 3 * (m + 2 * m * n) + 2 * m;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Validator

namespace {

enum class Tok { kIdent, kNumber, kPlus, kMinus, kColon, kSense, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

struct Lexed {
  std::vector<Token> tokens;
  std::string error;
};

void lex_line(std::string_view line, std::size_t lineno, Lexed& out) {
  std::size_t i = 0;
  while (i < line.size() && out.error.empty()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t k = i;
      while (k < line.size() && ident_char(line[k])) ++k;
      out.tokens.push_back({Tok::kIdent, std::string(line.substr(i, k - i)), lineno});
      i = k;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0;
      const auto res = std::from_chars(line.data() + i, line.data() + line.size(), value);
      if (res.ec != std::errc()) {
        out.error = "line " + std::to_string(lineno) + ": bad number";
        return;
      }
      const auto k = static_cast<std::size_t>(res.ptr - line.data());
      out.tokens.push_back({Tok::kNumber, std::string(line.substr(i, k - i)), lineno});
      i = k;
    } else if (c == '+' || c == '-') {
      out.tokens.push_back({c == '+' ? Tok::kPlus : Tok::kMinus, std::string(1, c), lineno});
      ++i;
    } else if (c == ':') {
      out.tokens.push_back({Tok::kColon, ":", lineno});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t k = i + 1;
      if (k < line.size() && (line[k] == '=' || line[k] == '<' || line[k] == '>')) ++k;
      const std::string s(line.substr(i, k - i));
      static const std::set<std::string> ok = {"<", "<=", "=<", ">", ">=", "=>", "="};
      if (!ok.count(s)) {
        out.error = "line " + std::to_string(lineno) + ": bad operator '" + s + "'";
        return;
      }
      out.tokens.push_back({Tok::kSense, s, lineno});
      i = k;
    } else {
      out.error = "line " + std::to_string(lineno) + ": unexpected character '" +
                  std::string(1, c) + "'";
      return;
    }
  }
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary, kGeneral, kEnd };

Section section_of(std::string_view line) {
  std::string s;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  }
  if (s == "minimize" || s == "minimum" || s == "min" || s == "maximize" || s == "max")
    return Section::kObjective;
  if (s == "subjectto" || s == "st" || s == "s.t." || s == "suchthat") return Section::kConstraints;
  if (s == "bounds" || s == "bound") return Section::kBounds;
  if (s == "binary" || s == "binaries" || s == "bin") return Section::kBinary;
  if (s == "general" || s == "generals" || s == "gen") return Section::kGeneral;
  if (s == "end") return Section::kEnd;
  return Section::kNone;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::string& error, std::set<std::string>& used)
      : toks_(tokens), error_(error), used_(used) {}

  bool done() const { return pos_ >= toks_.size(); }

  // [name ':'] expression; with_sense adds "sense [sign] number".
  bool row(bool with_sense, std::string* name) {
    if (pos_ + 1 < toks_.size() && toks_[pos_].kind == Tok::kIdent &&
        toks_[pos_ + 1].kind == Tok::kColon) {
      *name = toks_[pos_].text;
      pos_ += 2;
    }
    if (!expression()) return false;
    if (!with_sense) return true;
    if (done() || toks_[pos_].kind != Tok::kSense) return fail_here("expected <=, >= or =");
    ++pos_;
    if (!done() && (toks_[pos_].kind == Tok::kPlus || toks_[pos_].kind == Tok::kMinus)) ++pos_;
    if (done() || toks_[pos_].kind != Tok::kNumber) return fail_here("expected right-hand side");
    ++pos_;
    return true;
  }

 private:
  bool expression() {
    int terms = 0;
    for (;;) {
      if (done()) break;
      const Token& tk = toks_[pos_];
      bool signed_term = false;
      if (tk.kind == Tok::kPlus || tk.kind == Tok::kMinus) {
        signed_term = true;
        ++pos_;
      } else if (terms > 0) {
        break;
      }
      if (!done() && toks_[pos_].kind == Tok::kNumber) ++pos_;
      if (done() || toks_[pos_].kind != Tok::kIdent) {
        if (!signed_term && terms == 0) return fail_here("expected a term");
        return fail_here("expected a variable");
      }
      // A name followed by ':' starts the next row, never a term.
      if (pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::kColon) {
        return fail_here("missing relation before next row");
      }
      used_.insert(toks_[pos_].text);
      ++pos_;
      ++terms;
    }
    if (terms == 0) return fail_here("empty expression");
    return true;
  }

  bool fail_here(const std::string& what) {
    const std::size_t line = done() ? (toks_.empty() ? 0 : toks_.back().line) : toks_[pos_].line;
    error_ = "line " + std::to_string(line) + ": " + what;
    return false;
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::string& error_;
  std::set<std::string>& used_;
};

}  // namespace

LpCheck validate_lp(std::string_view text) {
  LpCheck check;
  std::map<Section, Lexed> bodies;
  Section current = Section::kNone;
  Section last = Section::kNone;
  bool saw_end = false;
  std::size_t lineno = 0;
  auto fail_at = [&](std::size_t line, const std::string& what) {
    check.error = "line " + std::to_string(line) + ": " + what;
    return check;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++lineno;
    if (const auto bs = line.find('\\'); bs != std::string_view::npos) line = line.substr(0, bs);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (stop == text.size()) break;
      continue;
    }
    if (saw_end) return fail_at(lineno, "content after End");
    const Section s = section_of(line);
    if (s != Section::kNone) {
      if (s <= last) return fail_at(lineno, "section out of order");
      if (last == Section::kNone && s != Section::kObjective)
        return fail_at(lineno, "expected objective section first");
      current = last = s;
      if (s == Section::kEnd) saw_end = true;
      bodies[s];
      continue;
    }
    if (current == Section::kNone) return fail_at(lineno, "text before objective section");
    lex_line(line, lineno, bodies[current]);
    if (!bodies[current].error.empty()) {
      check.error = bodies[current].error;
      return check;
    }
    if (stop == text.size()) break;
  }
  if (!saw_end) return fail_at(lineno, "missing End");
  if (!bodies.count(Section::kConstraints)) return fail_at(lineno, "missing Subject To");

  std::set<std::string> used;
  {
    Parser p(bodies[Section::kObjective].tokens, check.error, used);
    std::string name;
    if (!p.row(false, &name)) return check;
    if (!p.done()) return fail_at(bodies[Section::kObjective].tokens.back().line, "trailing objective text");
  }
  {
    Parser p(bodies[Section::kConstraints].tokens, check.error, used);
    std::set<std::string> names;
    while (!p.done()) {
      std::string name;
      if (!p.row(true, &name)) return check;
      if (!name.empty() && !names.insert(name).second) {
        check.error = "duplicate constraint name " + name;
        return check;
      }
      ++check.counts.constraints;
    }
  }
  if (!bodies[Section::kBounds].tokens.empty()) {
    // Bounds are not emitted by the writer; accept only "var <= number" style rows.
    Parser p(bodies[Section::kBounds].tokens, check.error, used);
    while (!p.done()) {
      std::string name;
      if (!p.row(true, &name)) return check;
    }
  }
  std::set<std::string> declared;
  for (Section s : {Section::kBinary, Section::kGeneral}) {
    for (const Token& tk : bodies[s].tokens) {
      if (tk.kind != Tok::kIdent) return fail_at(tk.line, "expected a variable name");
      if (!declared.insert(tk.text).second) return fail_at(tk.line, "variable declared twice: " + tk.text);
    }
  }
  for (const std::string& v : used) {
    if (!declared.count(v)) {
      check.error = "undeclared variable " + v;
      return check;
    }
  }
  check.counts.variables = declared.size();
  check.ok = true;
  return check;
}

}  // namespace partload
