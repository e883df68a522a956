#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baer/engine.hpp"
#include "baer/shift_model.hpp"

namespace baer::io {

using nlohmann::json;

/// Byte offset -> "line:column" (both 1-based).
std::string line_col(std::string_view text, std::size_t offset);

/// Start offset of the value at each JSON pointer ("" is the root). Assumes
/// text already parsed as JSON.
class SourceMap {
 public:
  explicit SourceMap(std::string_view text);
  /// "line:column" of the value at `pointer`, or of the nearest ancestor.
  std::string where(const std::string& pointer) const;

 private:
  std::string_view text_;
  std::vector<std::pair<std::string, std::size_t>> starts_;
};

struct OperatorSpec {
  std::optional<std::vector<std::vector<std::string>>> matrix;  // scalar strings, as written
  std::optional<OperatorExpr> expr;
  std::string pointer;  // JSON pointer of the entry, for diagnostics
};

struct SpecFile {
  DomainKind kind = DomainKind::exact_rational;
  std::uint32_t prime = 0;
  std::optional<double> tolerance;
  std::vector<OperatorSpec> operators;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::string text;

  /// Throws a parse error located at `pointer`.
  [[noreturn]] void reject(const std::string& pointer, const std::string& what) const;
};

/// Parse and validate a spec file; every failure is ErrorKind::parse with a
/// "line:column: pointer: message" diagnostic.
SpecFile parse_spec(std::string_view text);

json expr_to_json(const OperatorExpr& e);
/// Accepts the object form ({"shift": 1}, {"sum": [...]}, ...) or the text form.
OperatorExpr expr_from_json(const json& j);

template <class S>
json matrix_to_json(const Matrix<S>& m);
template <class S>
Matrix<S> matrix_from_json(const Ring<S>& ring, const json& j);

/// Entries of a spec-file matrix, parsed in the ring's scalar type.
template <class S>
Matrix<S> matrix_from_rows(const Ring<S>& ring, const std::vector<std::vector<std::string>>& rows);

struct ReportContext {
  EngineConfig config;
  std::size_t truncation = 0;             // 0: no truncation
  std::vector<std::string> coordinate_labels;
};

template <class S>
json report_to_json(const Ring<S>& ring, const DecompositionReport<S>& r,
                    const std::vector<std::pair<std::string, Matrix<S>>>& elements,
                    const ReportContext& ctx);

template <class S>
std::string report_to_text(const Ring<S>& ring, const DecompositionReport<S>& r, const ReportContext& ctx);

json domain_to_json(const ScalarDomain& d);
ScalarDomain domain_from_json(const json& j);

/// Decomposition methods by CLI name: wold, slocinski, weak-bishift, hw,
/// hw-pair-doubly, hw-pair-product, nfl, nfl-pair, pd, largest-ppi.
const std::vector<std::string>& method_names();
bool is_pair_method(std::string_view method);

/// Runs a method by name; x2 is required for pair methods and ignored otherwise.
template <class S>
DecompositionReport<S> run_method(const Ring<S>& ring, std::string_view method, const Matrix<S>& x1,
                                  const Matrix<S>* x2, const EngineConfig& cfg);

struct Recheck {
  std::size_t recomputed = 0;     // certificates recomputed from the parsed projections
  std::size_t compared = 0;       // certificates compared with a fresh engine run
  double max_gap = 0.0;           // largest residual or projection discrepancy
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Re-parses a JSON report, recomputes its basis certificates from the stored
/// projections, reruns the method on the stored elements, and compares.
/// Exact domains must agree exactly; float within eps_eq.
Recheck recheck_report(const json& report);

}  // namespace baer::io
