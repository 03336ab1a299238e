#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schlicht/power_series.hpp"
#include "schlicht/rational.hpp"

namespace schlicht {

/// Triangular table of the coefficients c_{j,k} in
///
///   log[(f(z) - f(w)) / (z - w)] = -sum_{j,k >= 0} c_{j,k} z^j w^k
///
/// for a normalized univalent-candidate f(z) = z + a_2 z^2 + ... .
/// Stores every c_{j,k} with j + k <= depth. Column k = 0 holds the
/// logarithmic coefficients of f(z)/z (they never enter the matrix below,
/// but they are cheap and give a symmetry cross-check against row 0).
class GrunskyTable {
 public:
  GrunskyTable(std::vector<std::vector<BigRational>> columns,
               PowerSeries<> source)
      : cols_(std::move(columns)), source_(std::move(source)) {}

  int depth() const { return static_cast<int>(cols_.size()) - 1; }

  /// c_{j,k} for j, k >= 0 with j + k <= depth.
  const BigRational& c(int j, int k) const {
    if (j < 0 || k < 0 || j + k > depth())
      throw std::out_of_range("GrunskyTable: index outside stored triangle");
    return cols_[static_cast<size_t>(k)][static_cast<size_t>(j)];
  }

  const PowerSeries<>& source_coefficients() const { return source_; }

 private:
  std::vector<std::vector<BigRational>> cols_;  // cols_[k][j], j+k <= depth
  PowerSeries<> source_;
};

/// Builds the coefficient table by the column-by-column recursion
///
///   c_{j,k} = sum_{l=1}^{k-1} (l/k) a_{k-l} c_{j+1,l}
///             - sum_{m=1}^{j} a_{m+1} c_{j-m,k} - a_{j+k+1}/k,
///
/// seeded at k = 1 by c_{j,1} = -sum_{m=1}^{j} a_{m+1} c_{j-m,1} - a_{j+2}.
/// Requires coefficients through a_{depth+1}, i.e. series order >= depth+1.
inline GrunskyTable grunsky_table(const PowerSeries<>& f, int depth) {
  if (depth < 1) throw std::invalid_argument("grunsky_table: depth < 1");
  if (!f[0].is_zero() || f.order() < 1 || !f[1].is_one())
    throw std::invalid_argument(
        "grunsky_table: series must be normalized (a_0 = 0, a_1 = 1)");
  if (f.order() < depth + 1)
    throw std::invalid_argument(
        "grunsky_table: need coefficients through index depth+1");

  auto a = [&f](int n) -> const BigRational& { return f[n]; };

  std::vector<std::vector<BigRational>> cols(static_cast<size_t>(depth) + 1);

  // Column 0: -log(f(z)/z) = sum_{j>=1} c_{j,0} z^j.
  {
    PowerSeries<> foz = PowerSeries<>::zeros(depth);
    for (int k = 0; k <= depth; ++k) foz.set(k, f[k + 1]);
    PowerSeries<> lg = series_log1p_composed(foz);
    auto& col = cols[0];
    col.resize(static_cast<size_t>(depth) + 1);
    for (int j = 1; j <= depth; ++j) col[static_cast<size_t>(j)] = -lg[j];
  }

  // Column 1 seed, rows j = 0 .. depth-1.
  {
    auto& col = cols[1];
    col.resize(static_cast<size_t>(depth));
    for (int j = 0; j <= depth - 1; ++j) {
      BigRational s = -a(j + 2);
      for (int m = 1; m <= j; ++m)
        s -= a(m + 1) * col[static_cast<size_t>(j - m)];
      col[static_cast<size_t>(j)] = std::move(s);
    }
  }

  // Columns k = 2 .. depth, each using the already-complete columns l < k.
  for (int k = 2; k <= depth; ++k) {
    auto& col = cols[static_cast<size_t>(k)];
    col.resize(static_cast<size_t>(depth - k) + 1);
    for (int j = 0; j <= depth - k; ++j) {
      BigRational s = -a(j + k + 1) * BigRational(1, k);
      for (int l = 1; l <= k - 1; ++l)
        s += BigRational(l, k) * a(k - l) *
             cols[static_cast<size_t>(l)][static_cast<size_t>(j + 1)];
      for (int m = 1; m <= j; ++m)
        s -= a(m + 1) * col[static_cast<size_t>(j - m)];
      col[static_cast<size_t>(j)] = std::move(s);
    }
  }

  return GrunskyTable(std::move(cols), f);
}

/// The order-n test matrix with entries
///   gamma_{j,k} = delta_{j,k}/j - sum_{m=1}^{n} m c_{m,j} c_{m,k},
/// 1 <= j,k <= n. Real symmetric (real coefficient input only, so the
/// Hermitian form reduces to the symmetric one). Positive semidefiniteness
/// of this matrix for every n is equivalent to univalence of f.
class GrunskyMatrix {
 public:
  GrunskyMatrix(int order, std::vector<BigRational> row_major)
      : n_(order), e_(std::move(row_major)) {
    if (n_ < 1 || e_.size() != static_cast<size_t>(n_) * static_cast<size_t>(n_))
      throw std::invalid_argument("GrunskyMatrix: bad dimensions");
  }

  int order() const { return n_; }

  /// 1-based accessor matching the mathematical indexing.
  const BigRational& gamma(int j, int k) const {
    if (j < 1 || j > n_ || k < 1 || k > n_)
      throw std::out_of_range("GrunskyMatrix: index out of range");
    return e_[static_cast<size_t>(j - 1) * static_cast<size_t>(n_) +
              static_cast<size_t>(k - 1)];
  }

  const std::vector<BigRational>& entries() const { return e_; }

  bool is_symmetric() const {
    for (int j = 1; j <= n_; ++j)
      for (int k = j + 1; k <= n_; ++k)
        if (gamma(j, k) != gamma(k, j)) return false;
    return true;
  }

 private:
  int n_;
  std::vector<BigRational> e_;  // row-major, n_ * n_
};

inline GrunskyMatrix grunsky_matrix(const GrunskyTable& table, int n) {
  if (n < 1) throw std::invalid_argument("grunsky_matrix: order < 1");
  if (table.depth() < 2 * n)
    throw std::invalid_argument("grunsky_matrix: table depth must be >= 2n");
  std::vector<BigRational> e(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (int k = j; k <= n; ++k) {
      BigRational s = j == k ? BigRational(1, j) : BigRational(0);
      for (int m = 1; m <= n; ++m)
        s -= BigRational(m) * table.c(m, j) * table.c(m, k);
      e[static_cast<size_t>(j - 1) * static_cast<size_t>(n) +
        static_cast<size_t>(k - 1)] = s;
      e[static_cast<size_t>(k - 1) * static_cast<size_t>(n) +
        static_cast<size_t>(j - 1)] = std::move(s);
    }
  }
  return GrunskyMatrix(n, std::move(e));
}

/// Exact value of t G t^T.
inline BigRational quadratic_form(const GrunskyMatrix& g,
                                  const std::vector<BigRational>& t) {
  int n = g.order();
  if (t.size() != static_cast<size_t>(n))
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  BigRational s;
  for (int j = 1; j <= n; ++j) {
    if (t[static_cast<size_t>(j - 1)].is_zero()) continue;
    BigRational row;
    for (int k = 1; k <= n; ++k)
      row += g.gamma(j, k) * t[static_cast<size_t>(k - 1)];
    s += t[static_cast<size_t>(j - 1)] * row;
  }
  return s;
}

struct PSDReport {
  enum class Verdict { PSD, NotPSD };
  Verdict verdict = Verdict::PSD;
  std::optional<std::vector<BigRational>> witness;    // present iff NotPSD
  std::optional<BigRational> witness_value;           // exact t G t^T < 0
};

/// Exact positive-semidefiniteness test by rational symmetric elimination
/// (LDL^T without pivot reordering; zero rows are skipped).
///
/// When the matrix is not PSD the report carries an exact rational witness t
/// with t G t^T < 0: a negative pivot d gives t via back substitution with
/// value exactly d; a zero pivot whose row still holds some b != 0 against
/// diagonal c gives a 2x2 combination with value exactly -1.
inline PSDReport psd_check(const GrunskyMatrix& g) {
  if (!g.is_symmetric())
    throw std::invalid_argument("psd_check: matrix not symmetric");

  const int n = g.order();
  // Working copy and unit-lower-triangular multipliers.
  std::vector<std::vector<BigRational>> m(static_cast<size_t>(n)),
      lo(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    m[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    lo[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          g.gamma(i + 1, j + 1);
  }

  // Solves L^T x = y for the multipliers accumulated so far, then packages
  // the NOT_PSD report. y is given in eliminated coordinates.
  auto report = [&](std::vector<BigRational> y) {
    for (int r = n - 1; r >= 0; --r) {
      BigRational s = std::move(y[static_cast<size_t>(r)]);
      for (int q = r + 1; q < n; ++q)
        s -= lo[static_cast<size_t>(q)][static_cast<size_t>(r)] *
             y[static_cast<size_t>(q)];
      y[static_cast<size_t>(r)] = std::move(s);
    }
    BigRational val = quadratic_form(g, y);
    if (val.sign() >= 0)
      throw std::logic_error("psd_check: witness reconstruction failed");
    PSDReport rep;
    rep.verdict = PSDReport::Verdict::NotPSD;
    rep.witness = std::move(y);
    rep.witness_value = std::move(val);
    return rep;
  };

  for (int i = 0; i < n; ++i) {
    const BigRational d = m[static_cast<size_t>(i)][static_cast<size_t>(i)];
    if (d.sign() < 0) {
      std::vector<BigRational> y(static_cast<size_t>(n));
      y[static_cast<size_t>(i)] = BigRational(1);
      return report(std::move(y));
    }
    if (d.is_zero()) {
      int jn = -1;
      for (int j = i + 1; j < n; ++j)
        if (!m[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) {
          jn = j;
          break;
        }
      if (jn < 0) continue;  // zero row and column: harmless, skip
      // Restricted to {i, jn} the remaining form is [[0, b], [b, c]];
      // with s = -(c+1)/(2b) the combination s e_i + e_jn evaluates to -1.
      const BigRational& b =
          m[static_cast<size_t>(i)][static_cast<size_t>(jn)];
      const BigRational& c =
          m[static_cast<size_t>(jn)][static_cast<size_t>(jn)];
      std::vector<BigRational> y(static_cast<size_t>(n));
      y[static_cast<size_t>(i)] =
          -(c + BigRational(1)) / (BigRational(2) * b);
      y[static_cast<size_t>(jn)] = BigRational(1);
      return report(std::move(y));
    }
    // Positive pivot: eliminate column i below the diagonal.
    for (int r = i + 1; r < n; ++r) {
      BigRational f = m[static_cast<size_t>(r)][static_cast<size_t>(i)] / d;
      if (f.is_zero()) continue;
      for (int c2 = i; c2 < n; ++c2)
        m[static_cast<size_t>(r)][static_cast<size_t>(c2)] -=
            f * m[static_cast<size_t>(i)][static_cast<size_t>(c2)];
      lo[static_cast<size_t>(r)][static_cast<size_t>(i)] = std::move(f);
    }
    // Row-only updates leave the trailing block equal to the symmetric
    // Schur complement, so no column pass is needed.
  }
  return PSDReport{};
}

/// Checks the coefficient bound |c_{m,j}| <= 1/sqrt(mj) for 1 <= m,j <= n,
/// in the squared form m*j*c^2 <= 1 so everything stays rational.
/// It is a consequence of univalence, so "false" is evidence against it.
inline bool coefficient_bound_check(const GrunskyTable& table, int n) {
  if (n < 1) throw std::invalid_argument("coefficient_bound_check: n < 1");
  if (table.depth() < 2 * n)
    throw std::invalid_argument(
        "coefficient_bound_check: table depth must be >= 2n");
  for (int mm = 1; mm <= n; ++mm)
    for (int j = mm; j <= n; ++j) {
      const BigRational& c = table.c(mm, j);
      if (BigRational(mm) * BigRational(j) * c * c > BigRational(1))
        return false;
    }
  return true;
}

}  // namespace schlicht
