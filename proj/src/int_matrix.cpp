#include "gpd/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "gpd/errors.hpp"

namespace gpd {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size() && i < rows && i < cols; ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void IntMatrix::set_column(std::size_t c, const std::vector<Integer>& values) {
  if (values.size() != rows_) throw ValidationError("IntMatrix::set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
  if (x.size() != cols_) throw ValidationError("IntMatrix::apply: length mismatch");
  std::vector<Integer> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (x[c] != 0) acc += (*this)(r, c) * x[c];
    }
    y[r] = acc;
  }
  return y;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::columns(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  if (other.rows_ != rows_) throw ValidationError("IntMatrix::hconcat: row mismatch");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& other) const {
  if (other.cols_ != cols_) throw ValidationError("IntMatrix::vconcat: column mismatch");
  IntMatrix out(rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("IntMatrix: product shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

Integer mod_nonnegative(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

// Working state for the Smith reduction. Every elementary operation is
// mirrored on the accumulated transforms and their inverses.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : a(m),
        u(IntMatrix::identity(m.rows())),
        ui(IntMatrix::identity(m.rows())),
        v(IntMatrix::identity(m.cols())),
        vi(IntMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
  }

  // row[target] += q * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& q) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(source, c) != 0) a(target, c) += q * a(source, c);
    for (std::size_t c = 0; c < u.cols(); ++c)
      if (u(source, c) != 0) u(target, c) += q * u(source, c);
    for (std::size_t r = 0; r < ui.rows(); ++r)
      if (ui(r, target) != 0) ui(r, source) -= q * ui(r, target);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, i) = -ui(r, i);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < vi.cols(); ++c) std::swap(vi(i, c), vi(j, c));
  }

  // col[target] += q * col[source]
  void add_col(std::size_t target, std::size_t source, const Integer& q) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, source) != 0) a(r, target) += q * a(r, source);
    for (std::size_t r = 0; r < v.rows(); ++r)
      if (v(r, source) != 0) v(r, target) += q * v(r, source);
    for (std::size_t c = 0; c < vi.cols(); ++c)
      if (vi(target, c) != 0) vi(source, c) -= q * vi(target, c);
  }

  void run() {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || cmpabs(a(i, j), a(pi, pj)) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      reduce_pivot(t);
      if (a(t, t) < 0) negate_row(t);
      factors.push_back(a(t, t));
    }
  }

  IntMatrix a, u, ui, v, vi;
  std::vector<Integer> factors;

 private:
  static int cmpabs(const Integer& x, const Integer& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

  void reduce_pivot(std::size_t t) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    Integer q;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        q = a(i, t) / a(t, t);
        if (q != 0) add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        q = a(t, j) / a(t, t);
        if (q != 0) add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a nonzero remainder is strictly smaller than the pivot: move it in
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) return;
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithReducer reducer(m);
  reducer.run();
  SmithForm out;
  out.diagonal = std::move(reducer.a);
  out.left = std::move(reducer.u);
  out.left_inverse = std::move(reducer.ui);
  out.right = std::move(reducer.v);
  out.right_inverse = std::move(reducer.vi);
  out.invariant_factors = std::move(reducer.factors);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  return snf.right.columns(r, m.cols() - r);
}

Lattice::Lattice(const IntMatrix& generators) : ambient_(generators.rows()) {
  SmithForm snf = smith_normal_form(generators);
  left_ = std::move(snf.left);
  factors_ = std::move(snf.invariant_factors);
  basis_ = IntMatrix(ambient_, factors_.size());
  for (std::size_t c = 0; c < factors_.size(); ++c)
    for (std::size_t r = 0; r < ambient_; ++r) basis_(r, c) = snf.left_inverse(r, c) * factors_[c];
}

bool Lattice::try_coordinates(const std::vector<Integer>& x, std::vector<Integer>* out) const {
  if (x.size() != ambient_) throw ValidationError("Lattice: vector length mismatch");
  std::vector<Integer> y = left_.apply(x);
  for (std::size_t i = factors_.size(); i < y.size(); ++i)
    if (y[i] != 0) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!mpz_divisible_p(y[i].get_mpz_t(), factors_[i].get_mpz_t())) return false;
  if (out != nullptr) {
    out->resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) mpz_divexact((*out)[i].get_mpz_t(), y[i].get_mpz_t(), factors_[i].get_mpz_t());
  }
  return true;
}

bool Lattice::contains(const std::vector<Integer>& x) const { return try_coordinates(x, nullptr); }

std::vector<Integer> Lattice::coordinates(const std::vector<Integer>& x) const {
  std::vector<Integer> c;
  if (!try_coordinates(x, &c)) throw ValidationError("Lattice: vector is not a lattice element");
  return c;
}

LatticeQuotient::LatticeQuotient(const IntMatrix& whole, const IntMatrix& sub) : whole_(whole) {
  if (sub.rows() != whole.rows()) throw ValidationError("LatticeQuotient: ambient dimension mismatch");
  const std::size_t r = whole_.rank();
  IntMatrix coords(r, sub.cols());
  for (std::size_t c = 0; c < sub.cols(); ++c) {
    std::vector<Integer> col = sub.column(c);
    if (!whole_.contains(col))
      throw ContainmentError("sub-lattice generator " + std::to_string(c) + " is not contained in the lattice", c);
    coords.set_column(c, whole_.coordinates(col));
  }
  SmithForm snf = smith_normal_form(coords);
  left_ = std::move(snf.left);
  const std::size_t q = snf.rank();
  std::vector<std::size_t> free_rows;
  for (std::size_t i = 0; i < r; ++i) {
    if (i < q) {
      if (snf.invariant_factors[i] == 1) continue;
      kept_.push_back(i);
      moduli_.push_back(snf.invariant_factors[i]);
      torsion_.push_back(snf.invariant_factors[i]);
    } else {
      kept_.push_back(i);
      moduli_.push_back(0);
    }
  }
  free_rank_ = r - q;
  IntMatrix lifted = whole_.basis() * snf.left_inverse;
  generators_ = IntMatrix(whole.rows(), kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k)
    for (std::size_t row = 0; row < whole.rows(); ++row) generators_(row, k) = lifted(row, kept_[k]);
}

std::vector<Integer> LatticeQuotient::coordinates(const std::vector<Integer>& x) const {
  std::vector<Integer> z = left_.apply(whole_.coordinates(x));
  std::vector<Integer> out(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    out[k] = moduli_[k] == 0 ? z[kept_[k]] : mod_nonnegative(z[kept_[k]], moduli_[k]);
  }
  return out;
}

QuotientInvariants quotient_invariants(const IntMatrix& whole_generators, const IntMatrix& sub_generators) {
  LatticeQuotient q(whole_generators, sub_generators);
  return {q.free_rank(), q.torsion()};
}

}  // namespace gpd
