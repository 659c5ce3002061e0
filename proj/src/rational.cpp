#include "bjorth/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bjorth {

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
      throw std::invalid_argument("malformed rational literal: " + text);
    }
    Rat d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num) / d;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (!is_integer_text(head) ||
        (!tail.empty() && !is_integer_text(tail))) {
      throw std::invalid_argument("malformed decimal literal: " + text);
    }
    Rat value(head);
    if (!tail.empty()) {
      Rat den = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
      value += Rat(tail) / den;
    }
    return negative ? -value : value;
  }

  if (!is_integer_text(s)) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
  return Rat(s);
}

std::string rational_to_string(const Rat& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rat rational_from_double(double value) {
  Rat out;
  mpq_set_d(out.backend().data(), value);
  return out;
}

double rational_to_double(const Rat& value) {
  return value.convert_to<double>();
}

RVec rvec_from_doubles(const std::vector<double>& values) {
  RVec out;
  out.reserve(values.size());
  for (double v : values) out.push_back(rational_from_double(v));
  return out;
}

std::vector<double> rvec_to_doubles(const RVec& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const Rat& v : values) out.push_back(rational_to_double(v));
  return out;
}

Rat dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVec scale(const RVec& a, const Rat& s) {
  RVec out(a);
  for (Rat& v : out) v *= s;
  return out;
}

RVec add(const RVec& a, const RVec& b) {
  RVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

RVec sub(const RVec& a, const RVec& b) {
  RVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

RVec negate(const RVec& a) {
  RVec out(a);
  for (Rat& v : out) v = -v;
  return out;
}

bool is_zero(const RVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& v) { return v == 0; });
}

int compare(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

namespace {

// Forward elimination with partial (first nonzero) pivoting. Returns the
// echelon rows and records pivot columns.
RMat eliminate(RMat rows, std::vector<int>* pivot_cols) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rat inv = Rat(1) / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat factor = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(c));
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

int rank(RMat rows) {
  return static_cast<int>(eliminate(std::move(rows), nullptr).size());
}

RMat rref(RMat rows) { return eliminate(std::move(rows), nullptr); }

RMat nullspace(const RMat& rows) {
  if (rows.empty()) throw std::invalid_argument("nullspace: no columns known");
  const std::size_t cols = rows[0].size();
  std::vector<int> pivot_cols;
  RMat red = eliminate(rows, &pivot_cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_cols) is_pivot[c] = true;

  RMat basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RVec v(cols, Rat(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < red.size(); ++r) {
      v[pivot_cols[r]] = -red[r][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RVec> solve_unique(RMat rows, RVec rhs) {
  if (rows.size() != rhs.size()) {
    throw std::invalid_argument("solve_unique: size mismatch");
  }
  if (rows.empty()) return std::nullopt;
  const std::size_t cols = rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  std::vector<int> pivot_cols;
  RMat red = eliminate(std::move(rows), &pivot_cols);

  RVec solution(cols, Rat(0));
  std::size_t solved = 0;
  for (std::size_t r = 0; r < red.size(); ++r) {
    if (pivot_cols[r] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1
    solution[pivot_cols[r]] = red[r][cols];
    ++solved;
  }
  if (solved != cols) return std::nullopt;  // underdetermined
  return solution;
}

bool strictly_feasible(const RMat& rows) {
  if (rows.empty()) return true;
  const std::size_t vars = rows[0].size();
  RMat system = rows;
  for (std::size_t v = 0; v < vars; ++v) {
    // Eliminate the last variable of `system`.
    const std::size_t k = system.empty() ? 0 : system[0].size();
    if (k == 0) break;
    RMat pos, neg, zero;
    for (const RVec& row : system) {
      const Rat& c = row[k - 1];
      RVec rest(row.begin(), row.end() - 1);
      if (c > 0) {
        pos.push_back(scale(rest, Rat(1) / c));
      } else if (c < 0) {
        neg.push_back(scale(rest, Rat(-1) / c));
      } else {
        zero.push_back(rest);
      }
    }
    // a . t + c y > 0 with c > 0 bounds y from below; c < 0 from above:
    //   y > -p . t  and  y < n . t  combine to  (n + p) . t > 0.
    RMat next = std::move(zero);
    for (const RVec& p : pos) {
      for (const RVec& n : neg) next.push_back(add(p, n));
    }
    // Rows with only positive (or only negative) coefficients on y impose no
    // joint constraint: y can always be chosen.
    system = std::move(next);
  }
  for (const RVec& row : system) {
    (void)row;
    // Zero-variable rows represent constants "0 > 0": infeasible.
    return false;
  }
  return true;
}

bool in_convex_hull(const RVec& point, const RMat& points) {
  // point lies outside conv(points) iff a strict linear separation exists:
  //   exists (c, c0): c . point - c0 > 0 and c0 - c . p_j > 0 for all j.
  const std::size_t n = point.size();
  RMat rows;
  RVec r0(point);
  r0.push_back(Rat(-1));
  rows.push_back(std::move(r0));
  for (const RVec& p : points) {
    RVec r = negate(p);
    r.push_back(Rat(1));
    rows.push_back(std::move(r));
  }
  (void)n;
  return !strictly_feasible(rows);
}

}  // namespace bjorth
