#include "baer/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "baer/error.hpp"
#include "baer/exact_rings.hpp"

namespace baer::io {

std::string line_col(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// ---- source map -------------------------------------------------------------

namespace {

struct Scanner {
  std::string_view s;
  std::size_t i = 0;
  std::vector<std::pair<std::string, std::size_t>>& out;

  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }

  std::string string() {
    std::string v;
    ++i;  // opening quote
    while (i < s.size() && s[i] != '"') {
      if (s[i] == '\\' && i + 1 < s.size()) {
        // Escapes only matter for key lookup; keep the escaped character.
        ++i;
        if (s[i] == 'u') {
          i += 4;
          v += '?';
        } else {
          v += s[i];
        }
        ++i;
        continue;
      }
      v += s[i++];
    }
    ++i;
    return v;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& ptr) {
    ws();
    if (i >= s.size()) return;
    out.push_back({ptr, i});
    if (s[i] == '{') {
      ++i;
      for (;;) {
        ws();
        if (i >= s.size() || s[i] == '}') break;
        if (s[i] == ',') {
          ++i;
          continue;
        }
        const std::string key = string();
        ws();
        ++i;  // colon
        value(ptr + "/" + escape(key));
      }
      ++i;
    } else if (s[i] == '[') {
      ++i;
      std::size_t k = 0;
      for (;;) {
        ws();
        if (i >= s.size() || s[i] == ']') break;
        if (s[i] == ',') {
          ++i;
          continue;
        }
        value(ptr + "/" + std::to_string(k++));
      }
      ++i;
    } else if (s[i] == '"') {
      string();
    } else {
      while (i < s.size() && s[i] != ',' && s[i] != '}' && s[i] != ']' && s[i] != ' ' && s[i] != '\n' &&
             s[i] != '\r' && s[i] != '\t')
        ++i;
    }
  }
};

}  // namespace

SourceMap::SourceMap(std::string_view text) : text_(text) {
  Scanner sc{text, 0, starts_};
  sc.value("");
}

std::string SourceMap::where(const std::string& pointer) const {
  std::string p = pointer;
  for (;;) {
    for (const auto& [ptr, off] : starts_)
      if (ptr == p) return line_col(text_, off);
    if (p.empty()) return "1:1";
    p.erase(p.rfind('/'));
  }
}

// ---- scalars and matrices ---------------------------------------------------

namespace {

template <class S>
S parse_scalar(const Ring<S>& ring, std::string_view text) {
  if constexpr (std::is_same_v<S, Rational>) {
    (void)ring;
    return parse_rational(text);
  } else if constexpr (std::is_same_v<S, Complex>) {
    (void)ring;
    return parse_complex(text);
  } else {
    return parse_gf(text, ring.domain().prime);
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Scalar entry as written: strings pass through, integers are printed,
/// non-integer numbers only where the ring is floating.
std::string scalar_text(const json& j, DomainKind kind, bool& ok) {
  ok = true;
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  if (j.is_number_float() && kind == DomainKind::complex_float) return fmt_double(j.get<double>());
  ok = false;
  return {};
}

}  // namespace

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ScalarOps<S>::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Matrix<S> matrix_from_rows(const Ring<S>& ring, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t cols = n ? rows.front().size() : 0;
  Matrix<S> m(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != cols) fail(ErrorKind::malformed_element, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_scalar(ring, rows[i][j]);
  }
  return m;
}

template <class S>
Matrix<S> matrix_from_json(const Ring<S>& ring, const json& j) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : j) {
    rows.emplace_back();
    for (const auto& v : r) rows.back().push_back(v.get<std::string>());
  }
  return matrix_from_rows(ring, rows);
}

// ---- expressions ------------------------------------------------------------

json expr_to_json(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::unitary: return {{"unitary", matrix_to_json(e.matrix)}};
    case K::shift: return {{"shift", e.param}};
    case K::backshift: return {{"backshift", e.param}};
    case K::trunc: return {{"trunc", e.param}};
    case K::grid: return {{"grid", e.param}};
    case K::adjoint: return {{"adjoint", expr_to_json(e.children.at(0))}};
    case K::compose: return {{"compose", {expr_to_json(e.children.at(0)), expr_to_json(e.children.at(1))}}};
    case K::sum: {
      json parts = json::array();
      for (const auto& c : e.children) parts.push_back(expr_to_json(c));
      return {{"sum", parts}};
    }
  }
  return {};
}

namespace {

std::size_t size_param(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(ErrorKind::parse, std::string(what) + " expects a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

OperatorExpr expr_from_json(const json& j) {
  if (j.is_string()) return parse_text(j.get<std::string>());
  if (!j.is_object() || j.size() != 1)
    fail(ErrorKind::parse, "expression must be an object with exactly one constructor key");
  const auto& [key, arg] = *j.items().begin();
  if (key == "unitary") {
    const FloatRing ring(ScalarDomain::complex_float());
    std::vector<std::vector<std::string>> rows;
    if (!arg.is_array()) fail(ErrorKind::parse, "unitary expects rows of scalars");
    for (const auto& r : arg) {
      if (!r.is_array()) fail(ErrorKind::parse, "unitary expects rows of scalars");
      rows.emplace_back();
      for (const auto& v : r) {
        bool ok;
        rows.back().push_back(scalar_text(v, DomainKind::complex_float, ok));
        if (!ok) fail(ErrorKind::parse, "unitary entries must be strings or numbers");
      }
    }
    return OperatorExpr::unitary(matrix_from_rows(ring, rows));
  }
  if (key == "shift") return OperatorExpr::shift(size_param(arg, "shift"));
  if (key == "backshift") return OperatorExpr::backshift(size_param(arg, "backshift"));
  if (key == "trunc") return OperatorExpr::trunc(size_param(arg, "trunc"));
  if (key == "grid") return OperatorExpr::grid(size_param(arg, "grid"));
  if (key == "adjoint") return OperatorExpr::adjoint(expr_from_json(arg));
  if (key == "compose") {
    if (!arg.is_array() || arg.size() != 2) fail(ErrorKind::parse, "compose expects [f, g]");
    return OperatorExpr::compose(expr_from_json(arg[0]), expr_from_json(arg[1]));
  }
  if (key == "power") {
    if (!arg.is_array() || arg.size() != 2) fail(ErrorKind::parse, "power expects [f, k]");
    return OperatorExpr::power(expr_from_json(arg[0]), size_param(arg[1], "power"));
  }
  if (key == "sum") {
    if (!arg.is_array() || arg.empty()) fail(ErrorKind::parse, "sum expects a non-empty list");
    std::vector<OperatorExpr> parts;
    for (const auto& p : arg) parts.push_back(expr_from_json(p));
    return OperatorExpr::sum(std::move(parts));
  }
  fail(ErrorKind::parse, "unknown constructor '" + key + "'");
}

// ---- spec files -------------------------------------------------------------

void SpecFile::reject(const std::string& pointer, const std::string& what) const {
  const SourceMap map(text);
  fail(ErrorKind::parse, map.where(pointer) + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

SpecFile parse_spec(std::string_view text) {
  SpecFile spec;
  spec.text = std::string(text);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    fail(ErrorKind::parse, line_col(text, e.byte ? e.byte - 1 : 0) + ": " + msg);
  }
  if (!root.is_object()) spec.reject("", "spec file must be a JSON object");
  for (const auto& [key, _] : root.items())
    if (key != "ring" && key != "operators" && key != "pair") spec.reject("/" + key, "unknown key '" + key + "'");

  if (!root.contains("ring") || !root["ring"].is_object()) spec.reject("", "missing \"ring\" object");
  const json& ring = root["ring"];
  if (!ring.contains("kind") || !ring["kind"].is_string()) spec.reject("/ring", "missing \"kind\"");
  const std::string kind = ring["kind"];
  if (kind == "rational") {
    spec.kind = DomainKind::exact_rational;
  } else if (kind == "complex-float") {
    spec.kind = DomainKind::complex_float;
  } else if (kind == "gf") {
    spec.kind = DomainKind::finite_field;
    if (!ring.contains("p") || !ring["p"].is_number_unsigned())
      spec.reject("/ring", "gf ring needs a prime \"p\"");
    spec.prime = ring["p"].get<std::uint32_t>();
  } else {
    spec.reject("/ring/kind", "unknown ring kind '" + kind + "' (rational, complex-float, gf)");
  }
  if (ring.contains("tolerance")) {
    if (!ring["tolerance"].is_number() || ring["tolerance"].get<double>() <= 0)
      spec.reject("/ring/tolerance", "tolerance must be a positive number");
    spec.tolerance = ring["tolerance"].get<double>();
  }

  if (!root.contains("operators") || !root["operators"].is_array() || root["operators"].empty())
    spec.reject("", "missing non-empty \"operators\" list");
  const json& ops = root["operators"];
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string ptr = "/operators/" + std::to_string(k);
    const json& op = ops[k];
    OperatorSpec os;
    os.pointer = ptr;
    if (!op.is_object() || op.contains("matrix") == op.contains("expr"))
      spec.reject(ptr, "operator needs exactly one of \"matrix\" or \"expr\"");
    if (op.contains("matrix")) {
      const json& m = op["matrix"];
      if (!m.is_array() || m.empty()) spec.reject(ptr + "/matrix", "matrix must be a non-empty list of rows");
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string rp = ptr + "/matrix/" + std::to_string(i);
        if (!m[i].is_array()) spec.reject(rp, "row must be a list");
        if (m[i].size() != m.size())
          spec.reject(rp, "row has " + std::to_string(m[i].size()) + " entries, expected " +
                              std::to_string(m.size()) + " (matrices are square)");
        rows.emplace_back();
        for (std::size_t j = 0; j < m[i].size(); ++j) {
          const std::string ep = rp + "/" + std::to_string(j);
          bool ok;
          std::string s = scalar_text(m[i][j], spec.kind, ok);
          if (!ok) spec.reject(ep, "write non-integer scalars as strings");
          try {
            switch (spec.kind) {
              case DomainKind::exact_rational: parse_rational(s); break;
              case DomainKind::complex_float: parse_complex(s); break;
              case DomainKind::finite_field: parse_gf(s, spec.prime); break;
            }
          } catch (const Error& e) {
            spec.reject(ep, e.what());
          }
          rows.back().push_back(std::move(s));
        }
      }
      os.matrix = std::move(rows);
    } else {
      if (spec.kind != DomainKind::complex_float)
        spec.reject(ptr + "/expr", "operator expressions need the complex-float ring");
      try {
        os.expr = expr_from_json(op["expr"]);
        space_of(*os.expr);
      } catch (const Error& e) {
        spec.reject(ptr + "/expr", e.what());
      }
    }
    spec.operators.push_back(std::move(os));
  }

  if (root.contains("pair")) {
    const json& p = root["pair"];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
      spec.reject("/pair", "pair must be [index, index]");
    const std::size_t a = p[0], b = p[1];
    if (a >= spec.operators.size() || b >= spec.operators.size())
      spec.reject("/pair", "pair index out of range");
    spec.pair = {a, b};
  }
  return spec;
}

// ---- domains ----------------------------------------------------------------

json domain_to_json(const ScalarDomain& d) {
  json j{{"kind", to_string(d.kind)}};
  if (d.kind == DomainKind::finite_field) {
    j["p"] = d.prime;
    j["dim"] = d.dim;
  }
  if (d.kind == DomainKind::complex_float)
    j["tolerance"] = {{"rank", d.tolerance.eps_rank}, {"eq", d.tolerance.eps_eq}, {"psd", d.tolerance.eps_psd}};
  return j;
}

ScalarDomain domain_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "rational") return ScalarDomain::rational();
  if (kind == "gf") return construct_gf_ring(j.at("p").get<std::uint32_t>(), j.at("dim").get<std::size_t>());
  if (kind == "complex-float") {
    TolerancePolicy t;
    if (j.contains("tolerance")) {
      t.eps_rank = j["tolerance"].at("rank");
      t.eps_eq = j["tolerance"].at("eq");
      t.eps_psd = j["tolerance"].at("psd");
    }
    t.validate();
    return ScalarDomain::complex_float(t);
  }
  fail(ErrorKind::parse, "unknown ring kind '" + kind + "'");
}

// ---- methods ----------------------------------------------------------------

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"wold", "slocinski", "weak-bishift", "hw", "hw-pair-doubly",
                                              "hw-pair-product", "nfl", "nfl-pair", "pd", "largest-ppi"};
  return names;
}

bool is_pair_method(std::string_view m) { return !(m == "wold" || m == "hw" || m == "nfl"); }

template <class S>
DecompositionReport<S> run_method(const Ring<S>& ring, std::string_view method, const Matrix<S>& x1,
                                  const Matrix<S>* x2, const EngineConfig& cfg) {
  if (method == "wold") return wold(ring, x1, cfg);
  if (method == "hw") return halmos_wallen(ring, x1, cfg);
  if (method == "nfl") return nfl(ring, x1, cfg);
  if (std::find(method_names().begin(), method_names().end(), method) == method_names().end())
    fail(ErrorKind::parse, "unknown method '" + std::string(method) + "'");
  if (!x2) fail(ErrorKind::precondition, std::string(method) + " needs a pair");
  if (method == "slocinski") return slocinski(ring, x1, *x2, cfg);
  if (method == "weak-bishift") return weak_bishift(ring, x1, *x2, cfg);
  if (method == "hw-pair-doubly") return hw_pair_doubly(ring, x1, *x2, cfg);
  if (method == "hw-pair-product") return hw_pair_product(ring, x1, *x2, cfg);
  if (method == "nfl-pair") return nfl_pair_doubly(ring, x1, *x2, cfg);
  if (method == "pd") return largest_doubly_commuting(ring, x1, *x2, cfg);
  return largest_product_ppi(ring, x1, *x2, cfg);
}

// ---- reports ----------------------------------------------------------------

template <class S>
json report_to_json(const Ring<S>& ring, const DecompositionReport<S>& r,
                    const std::vector<std::pair<std::string, Matrix<S>>>& elements, const ReportContext& ctx) {
  json j;
  j["method"] = r.method;
  j["domain"] = domain_to_json(ring.domain());
  j["config"] = {{"n_max", ctx.config.n_max},
                 {"seed", ctx.config.seed},
                 {"lemma_n", ctx.config.lemma_n},
                 {"probe_directions", ctx.config.probe_directions},
                 {"window", ctx.config.window}};
  if (ctx.truncation) j["truncation"] = ctx.truncation;
  if (!ctx.coordinate_labels.empty()) j["coordinate_labels"] = ctx.coordinate_labels;
  j["elements"] = json::array();
  for (const auto& [name, m] : elements) j["elements"].push_back({{"name", name}, {"matrix", matrix_to_json(m)}});
  j["basis"] = json::array();
  for (const auto& m : r.basis) {
    json b{{"label", m.label}, {"rank", m.projection.rank()}, {"matrix", matrix_to_json(m.projection.element)}};
    for (const auto& [label, cls] : r.block_classes)
      if (label == m.label) b["class"] = cls;
    j["basis"].push_back(std::move(b));
  }
  j["certificates"] = json::array();
  for (const auto& c : r.certificates)
    j["certificates"].push_back({{"name", c.name}, {"residual", fmt_double(c.residual)}, {"passed", c.passed}});
  if (r.conditions) {
    j["conditions"] = std::vector<bool>(r.conditions->begin(), r.conditions->end());
    j["holds"] = r.holds;
  }
  if (!r.flags.empty()) {
    j["flags"] = json::object();
    for (const auto& [name, v] : r.flags) j["flags"][name] = v;
  }
  j["certified"] = r.certified();
  return j;
}

template <class S>
std::string report_to_text(const Ring<S>& ring, const DecompositionReport<S>& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << "method: " << r.method << " (" << ring.domain().describe();
  if (ctx.truncation) out << ", truncation " << ctx.truncation << ", " << ctx.config.window.size() << " trusted coordinates";
  out << ")\n";
  if (r.conditions) {
    out << "conditions:";
    for (bool b : *r.conditions) out << ' ' << (b ? "true" : "false");
    out << "\nfourfold basis: " << (r.holds ? "yes" : "no") << '\n';
  }
  std::size_t width = 0;
  for (const auto& m : r.basis) width = std::max(width, m.label.size());
  for (const auto& m : r.basis) {
    out << "  " << m.label << std::string(width - m.label.size(), ' ') << "  rank " << m.projection.rank();
    for (const auto& [label, cls] : r.block_classes)
      if (label == m.label) out << "  " << cls;
    out << '\n';
    const auto& p = m.projection.element;
    if (is_exact_v<S> && p.rows() <= 6) {
      for (std::size_t i = 0; i < p.rows(); ++i) {
        out << "    [";
        for (std::size_t k = 0; k < p.cols(); ++k) out << (k ? " " : "") << ScalarOps<S>::to_string(p(i, k));
        out << "]\n";
      }
    }
  }
  for (const auto& [name, v] : r.flags) out << "flag " << name << ": " << (v ? "true" : "false") << '\n';
  std::size_t passed = 0;
  double worst = 0.0;
  for (const auto& c : r.certificates) {
    passed += c.passed;
    worst = std::max(worst, c.residual);
  }
  out << "certificates: " << passed << '/' << r.certificates.size() << " passed, max residual " << fmt_double(worst)
      << '\n';
  for (const auto& c : r.certificates)
    if (!c.passed) out << "  FAIL " << c.name << " (residual " << fmt_double(c.residual) << ")\n";
  return out.str();
}

// ---- recheck ----------------------------------------------------------------

namespace {

template <class S>
Recheck recheck_in(const Ring<S>& ring, const json& rep) {
  Recheck out;
  const bool exact = is_exact_v<S>;
  const double tol = ring.tolerance().eps_eq;

  EngineConfig cfg;
  const json& c = rep.at("config");
  cfg.n_max = c.at("n_max");
  cfg.seed = c.at("seed");
  cfg.lemma_n = c.at("lemma_n");
  cfg.probe_directions = c.at("probe_directions");
  cfg.window = c.at("window").get<Window>();

  std::vector<std::pair<std::string, Matrix<S>>> elements;
  for (const auto& e : rep.at("elements")) elements.push_back({e.at("name"), matrix_from_json(ring, e.at("matrix"))});
  ProjectionBasis<S> basis;
  for (const auto& b : rep.at("basis")) basis.push_back({b.at("label"), ring.as_projection(matrix_from_json(ring, b.at("matrix")))});

  std::map<std::string, std::pair<std::string, bool>> stated;
  for (const auto& cert : rep.at("certificates")) stated[cert.at("name")] = {cert.at("residual"), cert.at("passed")};

  auto compare = [&](const Certificate& fresh, const char* how) {
    auto it = stated.find(fresh.name);
    if (it == stated.end()) {
      out.mismatches.push_back(std::string(how) + ": certificate '" + fresh.name + "' missing from report");
      return;
    }
    const double old = std::strtod(it->second.first.c_str(), nullptr);
    const double gap = std::abs(old - fresh.residual);
    out.max_gap = std::max(out.max_gap, gap);
    const bool same = exact ? it->second.first == fmt_double(fresh.residual) : gap <= tol;
    if (!same || it->second.second != fresh.passed)
      out.mismatches.push_back(std::string(how) + ": '" + fresh.name + "' stated " + it->second.first + ", got " +
                               fmt_double(fresh.residual));
  };

  if (!basis.empty()) {
    for (const auto& cert : basis_certificates(ring, basis, elements, cfg.window)) {
      compare(cert, "recomputed");
      ++out.recomputed;
    }
  }

  const std::string method = rep.at("method");
  const auto fresh = run_method(ring, method, elements.at(0).second,
                                elements.size() > 1 ? &elements[1].second : nullptr, cfg);
  for (const auto& cert : fresh.certificates) {
    compare(cert, "rerun");
    ++out.compared;
  }
  if (fresh.certificates.size() != stated.size())
    out.mismatches.push_back("rerun: certificate count " + std::to_string(fresh.certificates.size()) +
                             " vs stated " + std::to_string(stated.size()));
  if (fresh.basis.size() != basis.size()) {
    out.mismatches.push_back("rerun: basis size differs");
  } else {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double gap = ring.residual(fresh.basis[k].projection.element, basis[k].projection.element);
      out.max_gap = std::max(out.max_gap, gap);
      const bool same = exact ? fresh.basis[k].projection.element == basis[k].projection.element
                              : ring.equal(fresh.basis[k].projection.element, basis[k].projection.element);
      if (fresh.basis[k].label != basis[k].label || !same)
        out.mismatches.push_back("rerun: projection '" + basis[k].label + "' differs");
    }
  }
  if (rep.contains("conditions") && fresh.conditions) {
    const auto cond = rep["conditions"].get<std::vector<bool>>();
    if (!std::equal(cond.begin(), cond.end(), fresh.conditions->begin()))
      out.mismatches.push_back("rerun: condition vector differs");
  }
  return out;
}

}  // namespace

Recheck recheck_report(const json& report) {
  const ScalarDomain d = domain_from_json(report.at("domain"));
  switch (d.kind) {
    case DomainKind::exact_rational: return recheck_in(RationalRing(d), report);
    case DomainKind::finite_field: return recheck_in(GfRing(d), report);
    case DomainKind::complex_float: break;
  }
  return recheck_in(FloatRing(d), report);
}

#define BAER_IO(S)                                                                                            \
  template json matrix_to_json(const Matrix<S>&);                                                             \
  template Matrix<S> matrix_from_json(const Ring<S>&, const json&);                                           \
  template Matrix<S> matrix_from_rows(const Ring<S>&, const std::vector<std::vector<std::string>>&);          \
  template DecompositionReport<S> run_method(const Ring<S>&, std::string_view, const Matrix<S>&,             \
                                             const Matrix<S>*, const EngineConfig&);                          \
  template json report_to_json(const Ring<S>&, const DecompositionReport<S>&,                                 \
                               const std::vector<std::pair<std::string, Matrix<S>>>&, const ReportContext&);  \
  template std::string report_to_text(const Ring<S>&, const DecompositionReport<S>&, const ReportContext&);

BAER_IO(Rational)
BAER_IO(Gf)
BAER_IO(Complex)

}  // namespace baer::io
