#pragma once

// Exact integer and rational linear algebra.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace vcspace {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

Rational make_rational(const Int& num, const Int& den);
// Parses "p/q" or "p" into a reduced rational; throws InvalidInput on garbage.
Rational parse_rational(const std::string& text);
// Always "p/q" form, denominator positive.
std::string rational_string(const Rational& r);

Int floor_of(const Rational& r);
Rational frac_of(const Rational& r);  // r - floor(r), in [0, 1)
Int gcd_of(const IntVector& v);

RatVector to_rational(const IntVector& v);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const RatVector& a, const Rational& s);
Rational dot(const IntVector& a, const RatVector& b);
Rational dot(const RatVector& a, const RatVector& b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  RatVector operator*(const RatVector& v) const;
  IntMatrix operator-() const;
  bool operator==(const IntMatrix& other) const = default;
  bool operator<(const IntMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

Int determinant(const IntMatrix& m);
// Inverse of a unimodular matrix; throws InvalidInput otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

// U * A * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...), d_i >= 0.
SnfDecomposition smith_normal_form(const IntMatrix& a);
// Nonzero diagonal of the Smith form, without tracking transforms.
std::vector<Int> elementary_divisors(IntMatrix a);
std::size_t integer_rank(const IntMatrix& a);

// Unimodular matrix with determinant +1 whose first column is v.
// Throws NotPrimitive when gcd(v) != 1.
IntMatrix hnf_extend_primitive(const IntVector& v);

// Integer solution of A x = b, or nullopt when none exists.
// Throws InvalidInput("DimensionMismatch") when b has the wrong length.
std::optional<IntVector> solve_linear_integer(const IntMatrix& a, const IntVector& b);

// Basis (as rows, in Hermite-style echelon form) of the lattice spanned by the given vectors.
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t dim);

// --- rationals ---------------------------------------------------------------

using RatMatrix = std::vector<RatVector>;  // row-major

std::size_t rational_rank(RatMatrix rows);
// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<RatVector>& points);
Rational rational_determinant(RatMatrix m);

struct AffineSubspace {
  RatVector base;
  std::vector<RatVector> directions;
  int dimension() const { return static_cast<int>(directions.size()); }
};

// General solution of the rational system M x = rhs, or nullopt if inconsistent.
std::optional<AffineSubspace> solve_rational(const RatMatrix& m, const RatVector& rhs, std::size_t unknowns);

struct AffineMap {
  IntMatrix linear;
  RatVector trans;
};

// Common fixed set of x -> M x + t over all maps. With no maps, the whole space of the
// given ambient dimension.
std::optional<AffineSubspace> affine_fixed_space(const std::vector<AffineMap>& maps, std::size_t ambient);

}  // namespace vcspace
