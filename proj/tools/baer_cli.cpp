#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "baer/engine.hpp"
#include "baer/error.hpp"
#include "baer/exact_rings.hpp"
#include "baer/io.hpp"
#include "baer/shift_model.hpp"

using namespace baer;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::malformed_element:
    case ErrorKind::domain_mismatch:
    case ErrorKind::improper_involution:
    case ErrorKind::unknown_instance:
      return 2;
    case ErrorKind::precondition:
    case ErrorKind::axiom_violation:
    case ErrorKind::too_large:
    case ErrorKind::dim_guard:
    case ErrorKind::truncation_too_small:
    case ErrorKind::empty_family:
      return 3;
    case ErrorKind::indeterminate:
      return 4;
    case ErrorKind::internal_inconsistency:
    case ErrorKind::structural_anomaly:
      return 1;
  }
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::parse, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string file;
  std::string method;
  std::size_t op = 0;
  unsigned n_max = 16;
  bool n_max_given = false;
  std::size_t truncation = 64;
  std::size_t window = 32;
  std::size_t grid_axis = 12;
  std::optional<double> tol;
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned lemma_n = 6;
  unsigned probes = 20;
};

/// Operators of a spec file in the ring's scalar type, plus truncation info
/// when they came from expressions.
template <class S>
struct Loaded {
  std::vector<Matrix<S>> ops;
  Window window;
  std::size_t truncation = 0;
  std::vector<std::string> labels;
};

template <class S>
Loaded<S> load(const Ring<S>& ring, const io::SpecFile& spec, const Options& o, unsigned n_max,
                bool two_sided = false) {
  Loaded<S> out;
  std::optional<SpaceDescriptor> space;
  for (const auto& os : spec.operators) {
    if (os.matrix) {
      out.ops.push_back(io::matrix_from_rows(ring, *os.matrix));
      continue;
    }
    if constexpr (std::is_same_v<S, Complex>) {
      const SpaceDescriptor sp = space_of(*os.expr);
      const bool grid = sp.front().kind == Segment::Kind::grid;
      const std::size_t N = grid ? o.grid_axis : o.truncation;
      const std::size_t w = two_sided ? two_sided_window(sp, N, o.window) : o.window;
      const Truncation t = truncate(*os.expr, N, n_max, w);
      if (space && !(*space == sp)) spec.reject(os.pointer, "expression acts on a different space than the first one");
      if (!space) {
        space = sp;
        out.window = t.window;
        out.truncation = grid ? o.grid_axis : o.truncation;
        out.labels = t.labels;
      }
      out.ops.push_back(t.matrix);
    }
  }
  const std::size_t n = out.ops.front().rows();
  for (std::size_t k = 0; k < out.ops.size(); ++k)
    if (out.ops[k].rows() != n)
      spec.reject(spec.operators[k].pointer, "operator dimension " + std::to_string(out.ops[k].rows()) +
                                                 " differs from " + std::to_string(n));
  return out;
}

ScalarDomain domain_for(const io::SpecFile& spec, const Options& o) {
  switch (spec.kind) {
    case DomainKind::exact_rational: return ScalarDomain::rational();
    case DomainKind::finite_field: {
      std::size_t dim = 0;
      for (const auto& os : spec.operators) dim = std::max(dim, os.matrix->size());
      return construct_gf_ring(spec.prime, dim);
    }
    case DomainKind::complex_float: break;
  }
  TolerancePolicy t;
  if (spec.tolerance) t.eps_eq = *spec.tolerance;
  if (o.tol) t.eps_eq = *o.tol;
  t.validate();
  return ScalarDomain::complex_float(t);
}

bool has_grid(const io::SpecFile& spec) {
  for (const auto& os : spec.operators)
    if (os.expr && space_of(*os.expr).front().kind == Segment::Kind::grid) return true;
  return false;
}

unsigned effective_n_max(const io::SpecFile& spec, const Options& o) {
  // A grid truncation keeps N per axis; six doubling steps already reach 64.
  if (!o.n_max_given && has_grid(spec)) return 6;
  return o.n_max;
}

template <class S>
int classify_in(const Ring<S>& ring, const io::SpecFile& spec, const Options& o) {
  const unsigned n_max = effective_n_max(spec, o);
  const Loaded<S> l = load(ring, spec, o, n_max);
  for (std::size_t k = 0; k < l.ops.size(); ++k) {
    const auto& x = l.ops[k];
    const auto c = classify(ring, x, static_cast<unsigned>(x.rows()), l.window);
    std::string names;
    for (const auto& n : c.names()) names += (names.empty() ? "" : ", ") + n;
    std::printf("x%zu: %s\n", k, names.empty() ? "(none)" : names.c_str());
  }
  return 0;
}

template <class S>
int decompose_in(const Ring<S>& ring, const io::SpecFile& spec, const Options& o) {
  const bool pair = io::is_pair_method(o.method);
  if (pair && !spec.pair) spec.reject("", "method '" + o.method + "' needs a \"pair\" declaration");
  if (!pair && o.op >= spec.operators.size())
    fail(ErrorKind::parse, "--operator " + std::to_string(o.op) + " is out of range");

  EngineConfig cfg;
  cfg.n_max = effective_n_max(spec, o);
  cfg.seed = o.seed;
  cfg.lemma_n = o.lemma_n;
  cfg.probe_directions = o.probes;
  const Loaded<S> l = load(ring, spec, o, cfg.n_max, o.method.rfind("hw", 0) == 0);
  cfg.window = l.window;

  std::vector<std::pair<std::string, Matrix<S>>> elements;
  if (pair) {
    elements = {{"x1", l.ops[spec.pair->first]}, {"x2", l.ops[spec.pair->second]}};
  } else {
    elements = {{"x", l.ops[o.op]}};
  }
  const auto rep = io::run_method(ring, o.method, elements[0].second, pair ? &elements[1].second : nullptr, cfg);

  io::ReportContext ctx;
  ctx.config = cfg;
  ctx.truncation = l.truncation;
  ctx.coordinate_labels = l.labels;
  if (o.format == "json") {
    std::cout << io::report_to_json(ring, rep, elements, ctx).dump(2) << '\n';
  } else {
    std::cout << io::report_to_text(ring, rep, ctx);
  }
  return 0;
}

template <class F>
int with_spec(const Options& o, F&& f) {
  const io::SpecFile spec = io::parse_spec(slurp(o.file));
  const ScalarDomain d = domain_for(spec, o);
  switch (d.kind) {
    case DomainKind::exact_rational: return f(RationalRing(d), spec);
    case DomainKind::finite_field: return f(GfRing(d), spec);
    case DomainKind::complex_float: break;
  }
  return f(FloatRing(d), spec);
}

// ---- verify -----------------------------------------------------------------

std::string diag_text(const GfMatrix& m) {
  std::string s = "diag(";
  for (std::size_t i = 0; i < m.rows(); ++i) s += (i ? "," : "") + ScalarOps<Gf>::to_string(m(i, i));
  return s + ")";
}

int verify_remark1() {
  const GfRing ring(construct_gf_ring(3, 2));
  GfMatrix p = ring.zeros(2), q = ring.zeros(2);
  p(0, 0) = ring.one();
  q(1, 1) = ring.one();
  const GfMatrix d = q - p;
  const bool positive = is_positive(ring, d);
  const bool sum = p + p + q == d;
  const bool leq = proj_leq(ring, ring.as_projection(p), ring.as_projection(q));
  const auto w = ring.cone()->witness(d);
  std::printf("ring: M2(F3), transpose involution\n");
  std::printf("p = %s, q = %s, qp = %s\n", diag_text(p).c_str(), diag_text(q).c_str(), diag_text(q * p).c_str());
  std::printf("q - p = %s = p + p + q: %s\n", diag_text(d).c_str(), sum ? "yes" : "no");
  if (w) std::printf("shortest cone witness: sum of %zu squares x^T x\n", w->size());
  std::printf("q-p positive: %s; p ≤ q: %s\n", positive ? "yes" : "no", leq ? "yes" : "no");
  return positive && sum && !leq ? 0 : 1;
}

ScalarDomain ring_option(const std::string& r, std::size_t dim) {
  if (r == "rational") return ScalarDomain::rational();
  if (r == "complex-float") return ScalarDomain::complex_float();
  if (r.rfind("gf", 0) == 0 && r.size() > 2) {
    try {
      return construct_gf_ring(static_cast<std::uint32_t>(std::stoul(r.substr(2))), dim);
    } catch (const std::logic_error&) {
    }
  }
  fail(ErrorKind::parse, "--ring must be rational, complex-float or gf<p> (e.g. gf3)");
}

int verify_cone(const std::string& r, std::size_t dim) {
  const ScalarDomain d = ring_option(r, dim);
  if (d.kind != DomainKind::finite_field) fail(ErrorKind::parse, "--builtin cone needs a gf<p> ring");
  const ConeTable cone = positivity_cone(d);
  std::printf("positive cone of %s: %zu members, %zu distinct squares x^T x\n", d.describe().c_str(), cone.size(),
              cone.square_count());
  std::size_t both = 0;
  for (auto code : cone.members()) {
    const GfMatrix a = cone.decode(code);
    if (cone.contains(-a) && !(a == GfMatrix(dim, dim))) ++both;
  }
  std::printf("nonzero a with a and -a positive: %zu\n", both);
  return 0;
}

int verify_axioms(const std::string& r, std::size_t dim) {
  const ScalarDomain d = ring_option(r, dim);
  const AxiomReport a = axiom_probe(d, dim);
  std::printf("%s, dim %zu: proper=%s antisymmetric=%s smooth=%s\n", to_string(d.kind), dim,
              a.proper ? "true" : "false", a.antisymmetric ? "true" : "false", a.smooth ? "true" : "false");
  return 0;
}

int verify_report(const std::string& path) {
  const std::string text = slurp(path);
  io::json j;
  try {
    j = io::json::parse(text);
  } catch (const io::json::parse_error& e) {
    fail(ErrorKind::parse, path + ":" + io::line_col(text, e.byte ? e.byte - 1 : 0) + ": not JSON");
  }
  io::Recheck rc;
  try {
    rc = io::recheck_report(j);
  } catch (const io::json::exception& e) {
    fail(ErrorKind::parse, path + ": malformed report: " + e.what());
  }
  std::printf("recomputed %zu certificates from the stored projections, compared %zu with a fresh run, max gap %.3g\n",
              rc.recomputed, rc.compared, rc.max_gap);
  for (const auto& m : rc.mismatches) std::printf("  mismatch: %s\n", m.c_str());
  std::printf("round trip: %s\n", rc.ok() ? "ok" : "FAILED");
  return rc.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompositions of elements of Baer *-rings: matrices over Q, C and F_p, and truncated shifts."};
  app.require_subcommand(1);
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "Report the element classes of each operator in a spec file");
  classify_cmd->add_option("file", o.file, "Spec file (JSON)")->required();
  classify_cmd->add_option("--truncation", o.truncation, "Truncation size N for expressions");
  classify_cmd->add_option("--window", o.window, "Trusted strand positions");
  classify_cmd->add_option("--grid-axis", o.grid_axis, "Per-axis size for grid expressions");
  classify_cmd->add_option("--tol", o.tol, "Equality tolerance (complex-float)");

  auto* decompose_cmd = app.add_subcommand("decompose", "Run one decomposition and print its report");
  decompose_cmd->add_option("file", o.file, "Spec file (JSON)")->required();
  decompose_cmd->add_option("--method", o.method, "Decomposition method")
      ->required()
      ->check(CLI::IsMember(io::method_names()));
  decompose_cmd->add_option("--operator", o.op, "Operator index for single-element methods");
  decompose_cmd->add_option("--nmax", o.n_max, "Stabilization step cap (default 16; 6 for grids)")
      ->each([&](const std::string&) { o.n_max_given = true; });
  decompose_cmd->add_option("--truncation", o.truncation, "Truncation size N for expressions");
  decompose_cmd->add_option("--window", o.window, "Trusted strand positions");
  decompose_cmd->add_option("--grid-axis", o.grid_axis, "Per-axis size for grid expressions");
  decompose_cmd->add_option("--tol", o.tol, "Equality tolerance (complex-float)");
  decompose_cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  decompose_cmd->add_option("--seed", o.seed, "Seed for randomized maximality probes");
  decompose_cmd->add_option("--lemma-n", o.lemma_n, "Largest n for the pair power identities");
  decompose_cmd->add_option("--probes", o.probes, "Maximality probe directions");

  std::string builtin, ring = "gf3";
  std::size_t dim = 2;
  auto* verify_cmd = app.add_subcommand("verify", "Recheck a JSON report, or run a built-in demonstration");
  verify_cmd->add_option("file", o.file, "JSON report written by decompose --format json");
  verify_cmd->add_option("--builtin", builtin, "remark1, cone or axioms")
      ->check(CLI::IsMember({"remark1", "cone", "axioms"}));
  verify_cmd->add_option("--ring", ring, "rational, complex-float or gf<p>");
  verify_cmd->add_option("--dim", dim, "Matrix size for cone/axioms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) {
      return with_spec(o, [&](const auto& r, const io::SpecFile& s) { return classify_in(r, s, o); });
    }
    if (*decompose_cmd) {
      return with_spec(o, [&](const auto& r, const io::SpecFile& s) { return decompose_in(r, s, o); });
    }
    if (builtin.empty() == o.file.empty()) fail(ErrorKind::parse, "verify takes either a report file or --builtin");
    if (!o.file.empty()) return verify_report(o.file);
    if (builtin == "remark1") return verify_remark1();
    if (builtin == "cone") return verify_cone(ring, dim);
    return verify_axioms(ring, dim);
  } catch (const Error& e) {
    std::fprintf(stderr, "baer: %s: %s\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "baer: internal error: %s\n", e.what());
    return 1;
  }
}
