#include "vcspace/latticealg.hpp"

#include <algorithm>
#include <utility>

#include "vcspace/error.hpp"

namespace vcspace {

Rational make_rational(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw invalid_input("ParseError", "not a rational: '" + text + "'");
  }
  if (r.get_den() == 0) throw invalid_input("ParseError", "zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Int floor_of(const Rational& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector scale(const RatVector& a, const Rational& s) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Rational dot(const IntVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// --- IntMatrix ---------------------------------------------------------------

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw invalid_input("DimensionMismatch", "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw invalid_input("DimensionMismatch", "matrix product shapes");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw invalid_input("DimensionMismatch", "matrix-vector shapes");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Int& a = (*this)(i, j);
      if (a != 0) out[i] += a * v[j];
    }
  return out;
}

RatVector IntMatrix::operator*(const RatVector& v) const {
  if (cols_ != v.size()) throw invalid_input("DimensionMismatch", "matrix-vector shapes");
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Int& a = (*this)(i, j);
      if (a != 0) out[i] += Rational(a) * v[j];
    }
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

bool IntMatrix::operator<(const IntMatrix& other) const {
  if (rows_ != other.rows_) return rows_ < other.rows_;
  if (cols_ != other.cols_) return cols_ < other.cols_;
  return data_ < other.data_;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw invalid_input("DimensionMismatch", "determinant of non-square matrix");
  RatMatrix r(m.rows(), RatVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = Rational(m(i, j));
  Rational d = rational_determinant(std::move(r));
  return d.get_num();
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw invalid_input("DimensionMismatch", "inverse of non-square matrix");
  RatMatrix a(n, RatVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw invalid_input("SingularMatrix", "matrix is singular");
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (x.get_den() != 1) throw invalid_input("NotUnimodular", "matrix is not unimodular");
      out(i, j) = x.get_num();
    }
  return out;
}

// --- Smith normal form -----------------------------------------------------------

namespace {

// Diagonalizes d in place. When track is set, u and v accumulate the row and column
// operations so that u * original * v == d on exit.
void smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
    if (u)
      for (std::size_t c = 0; c < m; ++c) std::swap((*u)(i, c), (*u)(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
    if (v)
      for (std::size_t r = 0; r < n; ++r) std::swap((*v)(r, i), (*v)(r, j));
  };
  // row dst += q * row src
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& q, std::size_t from) {
    for (std::size_t c = from; c < n; ++c)
      if (d(src, c) != 0) d(dst, c) += q * d(src, c);
    if (u)
      for (std::size_t c = 0; c < m; ++c)
        if ((*u)(src, c) != 0) (*u)(dst, c) += q * (*u)(src, c);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& q, std::size_t from) {
    for (std::size_t r = from; r < m; ++r)
      if (d(r, src) != 0) d(r, dst) += q * d(r, src);
    if (v)
      for (std::size_t r = 0; r < n; ++r)
        if ((*v)(r, src) != 0) (*v)(r, dst) += q * (*v)(r, src);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    // Smallest nonzero |entry| of the trailing block becomes the pivot.
    std::size_t bi = m, bj = n;
    Int best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Int& x = d(i, j);
        if (x == 0) continue;
        if (bi == m || abs(x) < best) {
          best = abs(x);
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
  found:
    if (bi == m) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) add_row(i, t, -q, t);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) add_col(j, t, -q, t);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t pi = t, pj = t;
        Int pb = abs(d(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < pb) {
            pb = abs(d(i, t));
            pi = i;
            pj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < pb) {
            pb = abs(d(t, j));
            pi = t;
            pj = j;
          }
        swap_rows(t, pi);
        swap_cols(t, pj);
        continue;
      }
      // Enforce d_t | every entry of the trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, Int(1), t);
    }
    if (d(t, t) < 0) {
      for (std::size_t c = t; c < n; ++c) d(t, c) = -d(t, c);
      if (u)
        for (std::size_t c = 0; c < m; ++c) (*u)(t, c) = -(*u)(t, c);
    }
  }
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  SnfDecomposition out{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  smith_reduce(out.D, &out.U, &out.V);
  return out;
}

std::vector<Int> elementary_divisors(IntMatrix a) {
  smith_reduce(a, nullptr, nullptr);
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (a(i, i) == 0) break;
    out.push_back(a(i, i));
  }
  return out;
}

std::size_t integer_rank(const IntMatrix& a) { return elementary_divisors(a).size(); }

IntMatrix hnf_extend_primitive(const IntVector& v) {
  const std::size_t n = v.size();
  if (n == 0 || gcd_of(v) != 1) throw not_primitive("vector entries are not coprime");
  IntVector w = v;
  IntMatrix b = IntMatrix::identity(n);
  // Euclid on the entries by row operations U; b tracks U^{-1} so that b * e_1 = v at the end.
  while (true) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0 && (p == n || abs(w[i]) < abs(w[p]))) p = i;
    bool single = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || w[i] == 0) continue;
      Int q = w[i] / w[p];
      w[i] -= q * w[p];
      // row_i -= q row_p  <=>  col_p += q col_i in the inverse
      for (std::size_t r = 0; r < n; ++r) b(r, p) += q * b(r, i);
      if (w[i] != 0) single = false;
    }
    if (single) {
      if (p != 0) {
        std::swap(w[0], w[p]);
        for (std::size_t r = 0; r < n; ++r) std::swap(b(r, 0), b(r, p));
      }
      if (w[0] < 0) {
        for (std::size_t r = 0; r < n; ++r) b(r, 0) = -b(r, 0);
      }
      break;
    }
  }
  if (n >= 2 && determinant(b) < 0)
    for (std::size_t r = 0; r < n; ++r) b(r, n - 1) = -b(r, n - 1);

  // Canonical completion: the pivot coordinate of each completing column lies in [0, |v_p|).
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  const Int a = abs(v[p]);
  const int s = sgn(v[p]);
  for (std::size_t j = 1; j < n; ++j) {
    Int m;
    mpz_fdiv_q(m.get_mpz_t(), b(p, j).get_mpz_t(), a.get_mpz_t());
    if (m == 0) continue;
    for (std::size_t r = 0; r < n; ++r) b(r, j) -= m * s * v[r];
  }
  return b;
}

std::optional<IntVector> solve_linear_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw invalid_input("DimensionMismatch", "right-hand side length differs from row count");
  SnfDecomposition snf = smith_normal_form(a);
  IntVector c = snf.U * b;
  IntVector y(a.cols());
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Int d = i < k ? snf.D(i, i) : Int(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    y[i] = c[i] / d;
  }
  return snf.V * y;
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t dim) {
  std::vector<IntVector> rows;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](const Int& x) { return x != 0; })) rows.push_back(g);
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < dim && pivot_row < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = pivot_row; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool clean = true;
      for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[pivot_row][c];
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[pivot_row][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) {
        if (rows[pivot_row][c] < 0)
          for (auto& x : rows[pivot_row]) x = -x;
        ++pivot_row;
        break;
      }
    }
  }
  rows.resize(pivot_row);
  return rows;
}

// --- rational -----------------------------------------------------------------

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& a, std::size_t cols, bool reduced) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    if (reduced) {
      Rational inv = 1 / a[r][c];
      for (auto& x : a[r]) x *= inv;
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rational_rank(RatMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  return echelon(rows, cols, false).size();
}

int affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  RatMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return static_cast<int>(rational_rank(std::move(diffs)));
}

Rational rational_determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::optional<AffineSubspace> solve_rational(const RatMatrix& m, const RatVector& rhs, std::size_t unknowns) {
  RatMatrix a = m;
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(rhs[i]);
  std::vector<std::size_t> pivots = echelon(a, unknowns + 1, true);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  AffineSubspace out;
  out.base.assign(unknowns, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) out.base[pivots[r]] = a[r][unknowns];
  std::vector<bool> is_pivot(unknowns, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (is_pivot[f]) continue;
    RatVector dir(unknowns, Rational(0));
    dir[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) dir[pivots[r]] = -a[r][f];
    out.directions.push_back(std::move(dir));
  }
  return out;
}

std::optional<AffineSubspace> affine_fixed_space(const std::vector<AffineMap>& maps, std::size_t ambient) {
  RatMatrix rows;
  RatVector rhs;
  for (const auto& map : maps) {
    if (map.linear.rows() != ambient || map.linear.cols() != ambient || map.trans.size() != ambient)
      throw invalid_input("DimensionMismatch", "affine map of wrong ambient dimension");
    for (std::size_t i = 0; i < ambient; ++i) {
      RatVector row(ambient);
      for (std::size_t j = 0; j < ambient; ++j) row[j] = Rational(map.linear(i, j) - (i == j ? 1 : 0));
      rows.push_back(std::move(row));
      rhs.push_back(-map.trans[i]);
    }
  }
  return solve_rational(rows, rhs, ambient);
}

}  // namespace vcspace
