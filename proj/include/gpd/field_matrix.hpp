#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "gpd/rational.hpp"

namespace gpd {

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p.
/// Elements of F_p are stored as integer-valued Rationals in [0, p).
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);

  std::uint64_t characteristic() const noexcept { return characteristic_; }
  bool is_rationals() const noexcept { return characteristic_ == 0; }

  /// Canonical representative. Over F_p a fraction a/b maps to a·b⁻¹.
  Rational normalize(const Rational& x) const;
  Rational inverse(const Rational& x) const;

  /// "Q" or "Fp:<p>"
  std::string name() const;
  static Field parse(std::string_view name);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : characteristic_(p) {}
  std::uint64_t characteristic_ = 0;
};

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}
  FieldMatrix(Field field, std::initializer_list<std::initializer_list<long>> rows);

  static FieldMatrix identity(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Stores the normalized value.
  void set(std::size_t r, std::size_t c, const Rational& value) { data_[r * cols_ + c] = field_.normalize(value); }

  std::vector<Rational> column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Rational>& values);
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  FieldMatrix columns(std::size_t first, std::size_t count) const;
  FieldMatrix hconcat(const FieldMatrix& other) const;
  FieldMatrix transpose() const;
  bool is_zero() const;

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  FieldMatrix reduced;              // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon row_reduce(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);
/// Rank of an F_p matrix (any matrix over a prime field).
std::size_t fp_rank(const FieldMatrix& m);
/// Basis of {x : m x = 0}, as columns.
FieldMatrix nullspace(const FieldMatrix& m);
/// A maximal independent subset of the columns of m, in original order.
FieldMatrix column_basis(const FieldMatrix& m);
std::optional<std::vector<Rational>> solve(const FieldMatrix& a, const std::vector<Rational>& b);
/// X with a X = b; throws ValidationError if some column is not in the column space.
FieldMatrix solve_columns(const FieldMatrix& a, const FieldMatrix& b);
std::optional<FieldMatrix> inverse(const FieldMatrix& m);
FieldMatrix power(const FieldMatrix& m, std::size_t k);

/// Coefficients from the constant term upward.
using Polynomial = std::vector<Rational>;

/// det(xI - m), monic of degree n.
Polynomial characteristic_polynomial(const FieldMatrix& m);
std::string polynomial_to_string(const Polynomial& p);

/// Roots with multiplicities, plus the residual factor with no roots in the field.
struct RootSplit {
  std::vector<std::pair<Rational, std::size_t>> roots;  // ascending
  Polynomial residual;                                  // monic; {1} when split
};
RootSplit split_roots(const Polynomial& p, const Field& field);

struct JordanBlock {
  Rational eigenvalue;
  std::size_t size = 0;

  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
  friend bool operator<(const JordanBlock& a, const JordanBlock& b) {
    if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
    return a.size < b.size;
  }
};

/// Multiset of Jordan blocks, sorted. Throws NonSplitError when the
/// characteristic polynomial does not split over the matrix's field.
std::vector<JordanBlock> jordan_type(const FieldMatrix& m);

/// Block diagonal matrix assembled from a Jordan type.
FieldMatrix jordan_matrix(const Field& field, const std::vector<JordanBlock>& blocks);

}  // namespace gpd
