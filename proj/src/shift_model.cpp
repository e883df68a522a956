#include "baer/shift_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <numbers>

#include "baer/error.hpp"

namespace baer {

// ---- constructors -----------------------------------------------------------

OperatorExpr OperatorExpr::unitary(CMatrix u) {
  if (!u.is_square() || u.rows() == 0) fail(ErrorKind::malformed_element, "unitary block must be square");
  OperatorExpr e;
  e.kind = Kind::unitary;
  e.matrix = std::move(u);
  return e;
}

OperatorExpr OperatorExpr::shift(std::size_t m) {
  if (m == 0) fail(ErrorKind::malformed_element, "shift multiplicity must be positive");
  OperatorExpr e;
  e.kind = Kind::shift;
  e.param = m;
  return e;
}

OperatorExpr OperatorExpr::backshift(std::size_t m) {
  OperatorExpr e = shift(m);
  e.kind = Kind::backshift;
  return e;
}

OperatorExpr OperatorExpr::trunc(std::size_t n) {
  if (n == 0) fail(ErrorKind::malformed_element, "truncated shift size must be positive");
  OperatorExpr e;
  e.kind = Kind::trunc;
  e.param = n;
  return e;
}

OperatorExpr OperatorExpr::sum(std::vector<OperatorExpr> parts) {
  if (parts.empty()) fail(ErrorKind::malformed_element, "empty direct sum");
  OperatorExpr e;
  e.kind = Kind::sum;
  e.children = std::move(parts);
  return e;
}

OperatorExpr OperatorExpr::compose(OperatorExpr f, OperatorExpr g) {
  OperatorExpr e;
  e.kind = Kind::compose;
  e.children = {std::move(f), std::move(g)};
  space_of(e);
  return e;
}

OperatorExpr OperatorExpr::adjoint(OperatorExpr f) {
  OperatorExpr e;
  e.kind = Kind::adjoint;
  e.children = {std::move(f)};
  return e;
}

OperatorExpr OperatorExpr::grid(std::size_t axis) {
  if (axis != 1 && axis != 2) fail(ErrorKind::malformed_element, "grid axis must be 1 or 2");
  OperatorExpr e;
  e.kind = Kind::grid;
  e.param = axis;
  return e;
}

OperatorExpr OperatorExpr::power(const OperatorExpr& f, std::size_t k) {
  if (k == 0) fail(ErrorKind::malformed_element, "power must be positive");
  OperatorExpr e = f;
  for (std::size_t i = 1; i < k; ++i) e = compose(e, f);
  return e;
}

// ---- spaces -----------------------------------------------------------------

SpaceDescriptor space_of(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::unitary: return {{Segment::Kind::finite, e.matrix.rows()}};
    case K::trunc: return {{Segment::Kind::finite, e.param}};
    case K::shift:
    case K::backshift: return {{Segment::Kind::tail, e.param}};
    case K::grid: return {{Segment::Kind::grid, 0}};
    case K::adjoint: return space_of(e.children.at(0));
    case K::compose: {
      auto a = space_of(e.children.at(0));
      if (a != space_of(e.children.at(1)))
        fail(ErrorKind::malformed_element, "compose: operands act on different spaces");
      return a;
    }
    case K::sum: {
      SpaceDescriptor out;
      for (const auto& c : e.children) {
        auto s = space_of(c);
        out.insert(out.end(), s.begin(), s.end());
      }
      return out;
    }
  }
  return {};
}

bool is_isometry_expr(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::unitary:
    case K::shift:
    case K::grid: return true;
    case K::backshift:
    case K::trunc: return false;
    case K::adjoint: return e.children.at(0).kind == K::unitary;
    case K::compose:
    case K::sum:
      return std::all_of(e.children.begin(), e.children.end(), is_isometry_expr);
  }
  return false;
}

// ---- truncation -------------------------------------------------------------

namespace {

std::size_t segment_dim(const Segment& s, std::size_t L, std::size_t N) {
  switch (s.kind) {
    case Segment::Kind::finite: return s.size;
    case Segment::Kind::tail: return s.size * L;
    case Segment::Kind::grid: return N * N;
  }
  return 0;
}

CMatrix shift_block(std::size_t m, std::size_t L) {
  CMatrix s(m * L, m * L);
  for (std::size_t pos = 0; pos + 1 < L; ++pos)
    for (std::size_t k = 0; k < m; ++k) s((pos + 1) * m + k, pos * m + k) = 1.0;
  return s;
}

CMatrix build(const OperatorExpr& e, const Truncation& t, std::size_t first_segment) {
  using K = OperatorExpr::Kind;
  const std::size_t L = t.strand_length;
  switch (e.kind) {
    case K::unitary: return e.matrix;
    case K::trunc: {
      CMatrix j(e.param, e.param);
      for (std::size_t i = 0; i + 1 < e.param; ++i) j(i + 1, i) = 1.0;
      return j;
    }
    case K::shift: return shift_block(e.param, L);
    case K::backshift: return shift_block(e.param, L).adjoint();
    case K::grid: {
      const std::size_t N = L;
      CMatrix g(N * N, N * N);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          const std::size_t ti = e.param == 1 ? i + 1 : i;
          const std::size_t tj = e.param == 2 ? j + 1 : j;
          if (ti < N && tj < N) g(ti * N + tj, i * N + j) = 1.0;
        }
      return g;
    }
    case K::adjoint: return build(e.children[0], t, first_segment).adjoint();
    case K::compose:
      return build(e.children[0], t, first_segment) * build(e.children[1], t, first_segment);
    case K::sum: {
      std::vector<CMatrix> blocks;
      std::size_t seg = first_segment;
      for (const auto& c : e.children) {
        blocks.push_back(build(c, t, seg));
        seg += space_of(c).size();
      }
      return direct_sum(blocks);
    }
  }
  return {};
}

}  // namespace

Truncation truncate_layout(const SpaceDescriptor& space, std::size_t N, unsigned n_max,
                           std::size_t window) {
  Truncation t;
  t.space = space;
  std::size_t F = 0, T = 0, max_finite = 0;
  bool grid = false;
  for (const auto& s : space) {
    if (s.kind == Segment::Kind::finite) F += s.size, max_finite = std::max(max_finite, s.size);
    if (s.kind == Segment::Kind::tail) T += s.size;
    if (s.kind == Segment::Kind::grid) grid = true;
  }
  if (grid && space.size() != 1)
    fail(ErrorKind::malformed_element, "a grid must be the whole space");
  if (N < 2 * max_finite)
    fail(ErrorKind::truncation_too_small, "N = " + std::to_string(N) + " is below twice the largest finite block");
  if (grid) {
    t.strand_length = N;
  } else if (T > 0) {
    if (N <= F || (N - F) / T < 1)
      fail(ErrorKind::truncation_too_small, "N leaves no room for the shift strands");
    t.strand_length = (N - F) / T;
  }
  const std::size_t L = t.strand_length;
  const std::size_t trusted_cap = L > n_max ? L - n_max : 0;
  const std::size_t trusted = window == 0 ? trusted_cap : std::min(window, trusted_cap);
  if ((T > 0 || grid) && trusted == 0)
    fail(ErrorKind::truncation_too_small, "probe window is empty: strand length " + std::to_string(L) +
                                              " does not exceed n_max = " + std::to_string(n_max));

  std::size_t offset = 0;
  for (std::size_t si = 0; si < space.size(); ++si) {
    const Segment& s = space[si];
    t.segment_begin.push_back(offset);
    const std::string tag = std::to_string(si);
    switch (s.kind) {
      case Segment::Kind::finite:
        for (std::size_t k = 0; k < s.size; ++k) {
          t.labels.push_back("f" + tag + "." + std::to_string(k));
          t.window.push_back(offset + k);
        }
        break;
      case Segment::Kind::tail:
        for (std::size_t pos = 0; pos < L; ++pos)
          for (std::size_t k = 0; k < s.size; ++k) {
            t.labels.push_back("s" + tag + "." + std::to_string(k) + "." + std::to_string(pos));
            if (pos < trusted) t.window.push_back(offset + pos * s.size + k);
          }
        break;
      case Segment::Kind::grid:
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) {
            t.labels.push_back("g" + std::to_string(i) + "." + std::to_string(j));
            if (i < trusted && j < trusted) t.window.push_back(offset + i * N + j);
          }
        break;
    }
    offset += segment_dim(s, L, N);
  }
  return t;
}

Truncation truncate(const OperatorExpr& e, std::size_t N, unsigned n_max, std::size_t window) {
  Truncation t = truncate_layout(space_of(e), N, n_max, window);
  t.matrix = build(e, t, 0);
  return t;
}

std::size_t two_sided_window(const SpaceDescriptor& space, std::size_t N, std::size_t window) {
  const std::size_t L = truncate_layout(space, N).strand_length;
  const std::size_t cap = std::max<std::size_t>(L / 5, 1);
  return window == 0 ? cap : std::min(window, cap);
}

// ---- ground truth -----------------------------------------------------------

namespace {

std::vector<char> hw_labels(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::unitary: return {'u'};
    case K::shift:
    case K::grid: return {'s'};
    case K::backshift: return {'b'};
    case K::trunc: return {'t'};
    case K::adjoint: {
      auto l = hw_labels(e.children[0]);
      for (auto& c : l) c = c == 's' ? 'b' : c == 'b' ? 's' : c;
      return l;
    }
    case K::compose: {
      auto a = hw_labels(e.children[0]);
      if (a != hw_labels(e.children[1]) ||
          std::any_of(a.begin(), a.end(), [](char c) { return c != 'u' && c != 's'; }))
        fail(ErrorKind::precondition, "no Halmos-Wallen ground truth for this composition");
      return a;
    }
    case K::sum: {
      std::vector<char> out;
      for (const auto& c : e.children) {
        auto l = hw_labels(c);
        out.insert(out.end(), l.begin(), l.end());
      }
      return out;
    }
  }
  return {};
}

}  // namespace

GroundTruth ground_truth_wold(const OperatorExpr& e) {
  if (!is_isometry_expr(e)) fail(ErrorKind::precondition, "ground truth needs an isometry expression");
  GroundTruth g;
  for (const auto& s : space_of(e)) g.wold.push_back(s.kind == Segment::Kind::finite ? 'u' : 's');
  g.hw = g.wold;
  return g;
}

GroundTruth ground_truth_hw(const OperatorExpr& e) {
  GroundTruth g;
  g.hw = hw_labels(e);
  if (is_isometry_expr(e)) g.wold = ground_truth_wold(e).wold;
  return g;
}

CMatrix indicator(const Truncation& t, const std::vector<char>& segment_labels, char label) {
  const std::size_t n = t.labels.size();
  if (segment_labels.size() != t.space.size())
    fail(ErrorKind::domain_mismatch, "ground truth does not match the truncation layout");
  CMatrix p(n, n);
  for (std::size_t si = 0; si < t.space.size(); ++si) {
    if (segment_labels[si] != label) continue;
    const std::size_t end = si + 1 < t.space.size() ? t.segment_begin[si + 1] : n;
    for (std::size_t k = t.segment_begin[si]; k < end; ++k) p(k, k) = 1.0;
  }
  return p;
}

// ---- catalog and generators -------------------------------------------------

namespace {

CMatrix rotation(double c, double s) {
  CMatrix r(2, 2);
  r(0, 0) = c, r(0, 1) = -s, r(1, 0) = s, r(1, 1) = c;
  return r;
}

}  // namespace

std::vector<std::string> pair_catalog() {
  return {"grid", "equal-shift", "powers", "unitary-pair", "mixed", "unitary-shift"};
}

std::pair<OperatorExpr, OperatorExpr> pair_instances(std::string_view name) {
  using E = OperatorExpr;
  const CMatrix r1 = rotation(3.0 / 5, 4.0 / 5), r2 = rotation(5.0 / 13, 12.0 / 13);
  if (name == "grid") return {E::grid(1), E::grid(2)};
  if (name == "equal-shift") return {E::shift(1), E::shift(1)};
  if (name == "powers") return {E::power(E::shift(1), 2), E::power(E::shift(1), 3)};
  if (name == "unitary-pair") return {E::unitary(r1), E::unitary(r2)};
  if (name == "mixed")
    return {E::sum({E::unitary(r1), E::shift(1)}), E::sum({E::unitary(r2), E::power(E::shift(1), 2)})};
  if (name == "unitary-shift") return {E::compose(E::backshift(1), E::shift(1)), E::shift(1)};
  fail(ErrorKind::unknown_instance, "unknown pair instance '" + std::string(name) + "'");
}

CMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  CMatrix u = CMatrix::identity(d, 1.0);
  for (std::size_t r = 0; r < d; ++r) {
    CMatrix v(d, 1);
    double nrm = 0;
    for (std::size_t i = 0; i < d; ++i) {
      v(i, 0) = {g(rng), g(rng)};
      nrm += std::norm(v(i, 0));
    }
    if (nrm == 0) continue;
    CMatrix h = CMatrix::identity(d, 1.0) - (v * v.adjoint()) * Complex(2.0 / nrm);
    u = h * u;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const Complex ph = std::polar(1.0, angle(rng));
    for (std::size_t j = 0; j < d; ++j) u(i, j) *= ph;
  }
  return u;
}

std::pair<CMatrix, CMatrix> random_commuting_unitaries(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const CMatrix v = random_unitary(d, rng);
  CMatrix d1(d, d), d2(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    d1(i, i) = std::polar(1.0, angle(rng));
    d2(i, i) = std::polar(1.0, angle(rng));
  }
  return {v * d1 * v.adjoint(), v * d2 * v.adjoint()};
}

OperatorExpr random_isometry_expr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4), count(1, 2), mult(1, 3);
  std::vector<OperatorExpr> parts;
  const int unitaries = count(rng);
  for (int i = 0; i < unitaries; ++i) parts.push_back(OperatorExpr::unitary(random_unitary(dim(rng), rng)));
  int budget = mult(rng);  // total shift multiplicity
  while (budget > 0) {
    const int m = std::uniform_int_distribution<int>(1, budget)(rng);
    parts.push_back(OperatorExpr::shift(static_cast<std::size_t>(m)));
    budget -= m;
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  if (parts.size() == 1) return parts.front();
  return OperatorExpr::sum(std::move(parts));
}

std::pair<OperatorExpr, OperatorExpr> random_isometry_pair(std::mt19937_64& rng) {
  using E = OperatorExpr;
  std::uniform_int_distribution<int> kind(0, 3), blocks(1, 3), pw(1, 3), dim(1, 3), coin(0, 1);
  std::vector<E> a, b;
  int tails = 0;
  const int nblocks = blocks(rng);
  for (int i = 0; i < nblocks; ++i) {
    int k = kind(rng);
    if (k > 0 && tails >= 2) k = 0;  // keep strands long enough
    switch (k) {
      case 0: {
        auto [u1, u2] = random_commuting_unitaries(dim(rng), rng);
        if (coin(rng)) {
          a.push_back(E::adjoint(E::unitary(u1.adjoint())));
        } else {
          a.push_back(E::unitary(u1));
        }
        b.push_back(E::unitary(u2));
        break;
      }
      case 1:
        a.push_back(E::power(E::shift(1), pw(rng)));
        b.push_back(E::power(E::shift(1), pw(rng)));
        ++tails;
        break;
      case 2:  // identity on a tail against a shift power
        a.push_back(E::compose(E::backshift(1), E::shift(1)));
        b.push_back(E::power(E::shift(1), pw(rng)));
        ++tails;
        break;
      default:
        a.push_back(E::power(E::shift(1), pw(rng)));
        b.push_back(E::compose(E::backshift(1), E::shift(1)));
        ++tails;
        break;
    }
  }
  if (a.size() == 1) return {a.front(), b.front()};
  return {E::sum(std::move(a)), E::sum(std::move(b))};
}

// ---- text form --------------------------------------------------------------

std::string to_text(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::unitary: {
      std::string s = "unitary([";
      for (std::size_t i = 0; i < e.matrix.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < e.matrix.cols(); ++j)
          s += (j ? "," : "") + ScalarOps<Complex>::to_string(e.matrix(i, j));
        s += "]";
      }
      return s + "])";
    }
    case K::shift: return "shift(" + std::to_string(e.param) + ")";
    case K::backshift: return "backshift(" + std::to_string(e.param) + ")";
    case K::trunc: return "trunc(" + std::to_string(e.param) + ")";
    case K::grid: return "grid(" + std::to_string(e.param) + ")";
    case K::adjoint: return "adjoint(" + to_text(e.children[0]) + ")";
    case K::compose: return "compose(" + to_text(e.children[0]) + "," + to_text(e.children[1]) + ")";
    case K::sum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < e.children.size(); ++i) s += (i ? "," : "") + to_text(e.children[i]);
      return s + ")";
    }
  }
  return {};
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view text) : s_(text) {}

  OperatorExpr parse() {
    OperatorExpr e = expr();
    skip();
    if (i_ != s_.size()) error("trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::parse, "expression, column " + std::to_string(i_ + 1) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) error(std::string("expected '") + c + "'");
    ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  std::string word() {
    skip();
    const std::size_t b = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_) error("expected a constructor name");
    return std::string(s_.substr(b, i_ - b));
  }
  std::string atom() {
    skip();
    const std::size_t b = i_;
    while (i_ < s_.size() && !std::strchr(",[]()", s_[i_]) &&
           !std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (b == i_) error("expected a value");
    return std::string(s_.substr(b, i_ - b));
  }
  std::size_t count() {
    const std::string a = atom();
    if (!std::all_of(a.begin(), a.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      error("expected a positive integer");
    return std::stoul(a);
  }
  CMatrix matrix() {
    std::vector<std::vector<Complex>> rows;
    expect('[');
    do {
      expect('[');
      rows.emplace_back();
      do rows.back().push_back(parse_complex(atom()));
      while (peek(',') && (++i_, true));
      expect(']');
    } while (peek(',') && (++i_, true));
    expect(']');
    CMatrix m(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) error("unitary block must be square");
      for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
  }
  OperatorExpr expr() {
    const std::string w = word();
    expect('(');
    OperatorExpr e;
    if (w == "unitary") e = OperatorExpr::unitary(matrix());
    else if (w == "shift") e = OperatorExpr::shift(count());
    else if (w == "backshift") e = OperatorExpr::backshift(count());
    else if (w == "trunc") e = OperatorExpr::trunc(count());
    else if (w == "grid") e = OperatorExpr::grid(count());
    else if (w == "adjoint") e = OperatorExpr::adjoint(expr());
    else if (w == "compose") {
      OperatorExpr f = expr();
      expect(',');
      e = OperatorExpr::compose(std::move(f), expr());
    } else if (w == "sum") {
      std::vector<OperatorExpr> parts{expr()};
      while (peek(',')) {
        ++i_;
        parts.push_back(expr());
      }
      e = OperatorExpr::sum(std::move(parts));
    } else {
      error("unknown constructor '" + w + "'");
    }
    expect(')');
    return e;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

OperatorExpr parse_text(std::string_view text) { return TextParser(text).parse(); }

}  // namespace baer
