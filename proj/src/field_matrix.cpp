#include "gpd/field_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "gpd/errors.hpp"
#include "gpd/int_matrix.hpp"

namespace gpd {

Field Field::prime(std::uint64_t p) {
  if (!is_prime(Integer(static_cast<unsigned long>(p)))) throw ValidationError("Field::prime: " + std::to_string(p) + " is not prime");
  return Field(p);
}

Rational Field::normalize(const Rational& x) const {
  if (characteristic_ == 0) return x;
  const Integer p(static_cast<unsigned long>(characteristic_));
  Integer num = mod_nonnegative(x.get_num(), p);
  if (x.get_den() == 1) return Rational(num);
  Integer den = mod_nonnegative(x.get_den(), p);
  if (den == 0) throw ValidationError("denominator " + x.get_den().get_str() + " is not invertible in " + name());
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  return Rational(mod_nonnegative(num * inv, p));
}

Rational Field::inverse(const Rational& x) const {
  if (x == 0) throw ValidationError("inverse of zero");
  if (characteristic_ == 0) return 1 / x;
  const Integer p(static_cast<unsigned long>(characteristic_));
  Integer inv;
  Integer v = normalize(x).get_num();
  mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return Rational(inv);
}

std::string Field::name() const { return characteristic_ == 0 ? "Q" : "Fp:" + std::to_string(characteristic_); }

Field Field::parse(std::string_view name) {
  if (name == "Q") return rationals();
  if (name.rfind("Fp:", 0) == 0) {
    std::string digits(name.substr(3));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 18)
      throw ParseError("bad field '" + std::string(name) + "'");
    return prime(std::stoull(digits));
  }
  throw ParseError("bad field '" + std::string(name) + "' (expected Q or Fp:<p>)");
}

FieldMatrix::FieldMatrix(Field field, std::initializer_list<std::initializer_list<long>> rows) : field_(field) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("FieldMatrix: ragged initializer");
    for (long v : row) data_.push_back(field_.normalize(Rational(v)));
  }
}

FieldMatrix FieldMatrix::identity(Field field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::vector<Rational> FieldMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void FieldMatrix::set_column(std::size_t c, const std::vector<Rational>& values) {
  if (values.size() != rows_) throw ValidationError("FieldMatrix::set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, values[r]);
}

std::vector<Rational> FieldMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw ValidationError("FieldMatrix::apply: length mismatch");
  std::vector<Rational> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (x[c] != 0) acc += (*this)(r, c) * x[c];
    y[r] = field_.normalize(acc);
  }
  return y;
}

FieldMatrix FieldMatrix::columns(std::size_t first, std::size_t count) const {
  FieldMatrix out(field_, rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out.data_[r * count + c] = (*this)(r, first + c);
  return out;
}

FieldMatrix FieldMatrix::hconcat(const FieldMatrix& other) const {
  if (other.rows_ != rows_) throw ValidationError("FieldMatrix::hconcat: row mismatch");
  FieldMatrix out(field_, rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.data_[r * out.cols_ + c] = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out.data_[r * out.cols_ + cols_ + c] = other(r, c);
  }
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  return t;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("FieldMatrix: product shape mismatch");
  if (!(a.field_ == b.field_)) throw ValidationError("FieldMatrix: field mismatch");
  FieldMatrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && b(k, j) != 0) acc += a(i, k) * b(k, j);
      out.set(i, j, acc);
    }
  }
  return out;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("FieldMatrix: sum shape mismatch");
  FieldMatrix out(a.field_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.field_.normalize(a.data_[i] + b.data_[i]);
  return out;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("FieldMatrix: difference shape mismatch");
  FieldMatrix out(a.field_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.field_.normalize(a.data_[i] - b.data_[i]);
  return out;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << gpd::to_string((*this)(r, c));
    os << ']';
  }
  os << ']';
  return os.str();
}

RowEchelon row_reduce(const FieldMatrix& m) {
  const Field& f = m.field();
  RowEchelon out{m, {}};
  FieldMatrix& a = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        Rational tmp = a(row, c);
        a.set(row, c, a(pivot, c));
        a.set(pivot, c, tmp);
      }
    }
    Rational inv = f.inverse(a(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a.set(row, c, a(row, c) * inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rational factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a.set(r, c, a(r, c) - factor * a(row, c));
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const FieldMatrix& m) { return row_reduce(m).pivots.size(); }

std::size_t fp_rank(const FieldMatrix& m) {
  if (m.field().is_rationals()) throw ValidationError("fp_rank: matrix is not over a prime field");
  return rank(m);
}

FieldMatrix nullspace(const FieldMatrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FieldMatrix basis(m.field(), m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis.set(free_cols[k], k, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.set(e.pivots[r], k, -e.reduced(r, free_cols[k]));
  }
  return basis;
}

FieldMatrix column_basis(const FieldMatrix& m) {
  RowEchelon e = row_reduce(m);
  FieldMatrix out(m.field(), m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.set_column(k, m.column(e.pivots[k]));
  return out;
}

std::optional<std::vector<Rational>> solve(const FieldMatrix& a, const std::vector<Rational>& b) {
  FieldMatrix rhs(a.field(), a.rows(), 1);
  rhs.set_column(0, b);
  RowEchelon e = row_reduce(a.hconcat(rhs));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols(), Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

FieldMatrix solve_columns(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows()) throw ValidationError("solve_columns: row mismatch");
  RowEchelon e = row_reduce(a.hconcat(b));
  FieldMatrix x(a.field(), a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) throw ValidationError("solve_columns: right-hand side outside the column space");
    for (std::size_t c = 0; c < b.cols(); ++c) x.set(e.pivots[r], c, e.reduced(r, a.cols() + c));
  }
  return x;
}

std::optional<FieldMatrix> inverse(const FieldMatrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  RowEchelon e = row_reduce(m.hconcat(FieldMatrix::identity(m.field(), n)));
  if (n > 0 && (e.pivots.size() < n || e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.columns(n, n);
}

FieldMatrix power(const FieldMatrix& m, std::size_t k) {
  FieldMatrix result = FieldMatrix::identity(m.field(), m.rows());
  for (std::size_t i = 0; i < k; ++i) result = result * m;
  return result;
}

// Hessenberg reduction by similarity followed by the standard recurrence.
Polynomial characteristic_polynomial(const FieldMatrix& m) {
  if (!m.is_square()) throw ValidationError("characteristic_polynomial: matrix is not square");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  FieldMatrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && h(i, j) == 0) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      for (std::size_t c = 0; c < n; ++c) {
        Rational t = h(i, c);
        h.set(i, c, h(j + 1, c));
        h.set(j + 1, c, t);
      }
      for (std::size_t r = 0; r < n; ++r) {
        Rational t = h(r, i);
        h.set(r, i, h(r, j + 1));
        h.set(r, j + 1, t);
      }
    }
    Rational inv = f.inverse(h(j + 1, j));
    for (std::size_t k = j + 2; k < n; ++k) {
      if (h(k, j) == 0) continue;
      Rational factor = f.normalize(h(k, j) * inv);
      for (std::size_t c = 0; c < n; ++c) h.set(k, c, h(k, c) - factor * h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) h.set(r, j + 1, h(r, j + 1) + factor * h(r, k));
    }
  }

  std::vector<Polynomial> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 0; k < n; ++k) {
    // (x - h_kk) p_k
    Polynomial next(k + 2, Rational(0));
    for (std::size_t d = 0; d <= k; ++d) {
      next[d + 1] += p[k][d];
      next[d] -= h(k, k) * p[k][d];
    }
    Rational prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      prod = f.normalize(prod * h(i + 1, i));
      if (prod == 0) break;
      Rational coeff = f.normalize(h(i, k) * prod);
      if (coeff == 0) continue;
      for (std::size_t d = 0; d < p[i].size(); ++d) next[d] -= coeff * p[i][d];
    }
    for (auto& c : next) c = f.normalize(c);
    p[k + 1] = std::move(next);
  }
  return p[n];
}

std::string polynomial_to_string(const Polynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = p.size(); d-- > 0;) {
    if (p[d] == 0) continue;
    Rational c = p[d];
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (c != 1 || d == 0) os << to_string(c);
    if (d > 0) os << (c != 1 ? "*" : "") << "x" << (d > 1 ? "^" + std::to_string(d) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

Rational evaluate(const Polynomial& p, const Rational& x, const Field& f) {
  Rational acc = 0;
  for (std::size_t d = p.size(); d-- > 0;) acc = f.normalize(acc * x + p[d]);
  return acc;
}

// p / (x - root), assuming root is a root.
Polynomial deflate(const Polynomial& p, const Rational& root, const Field& f) {
  const std::size_t n = p.size() - 1;
  Polynomial q(n, Rational(0));
  Rational carry = 0;
  for (std::size_t d = n; d-- > 0;) {
    carry = f.normalize(p[d + 1] + carry * root);
    q[d] = carry;
  }
  return q;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [prime, exp] : factorize(abs(n))) {
    const std::size_t current = divs.size();
    Integer pk = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < current; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Rational> candidate_roots(const Polynomial& p, const Field& f) {
  std::vector<Rational> out;
  if (!f.is_rationals()) {
    constexpr std::uint64_t kSearchLimit = 1u << 20;
    if (f.characteristic() > kSearchLimit)
      throw ValidationError("eigenvalue search over " + f.name() + " is limited to p <= 2^20");
    for (std::uint64_t v = 0; v < f.characteristic(); ++v) out.emplace_back(Integer(static_cast<unsigned long>(v)));
    return out;
  }
  // Rational root theorem on the integer-scaled polynomial.
  Integer scale = 1;
  for (const auto& c : p) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : p) ints.push_back(Rational(c * scale).get_num());
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (low > 0) out.emplace_back(0);
  if (low + 1 >= ints.size()) return out;
  for (const auto& num : positive_divisors(ints[low]))
    for (const auto& den : positive_divisors(ints.back())) {
      Rational r(num, den);
      r.canonicalize();
      out.push_back(r);
      out.push_back(-r);
    }
  return sorted_unique(out);
}

}  // namespace

RootSplit split_roots(const Polynomial& p, const Field& f) {
  RootSplit out;
  Polynomial rest = p;
  while (rest.size() > 1 && rest.back() == 0) rest.pop_back();
  if (rest.empty() || (rest.size() == 1 && rest[0] == 0)) throw ValidationError("split_roots: zero polynomial");
  for (const auto& candidate : candidate_roots(rest, f)) {
    std::size_t mult = 0;
    while (rest.size() > 1 && evaluate(rest, candidate, f) == 0) {
      rest = deflate(rest, candidate, f);
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(candidate, mult);
  }
  Rational lead = f.inverse(rest.back());
  for (auto& c : rest) c = f.normalize(c * lead);
  out.residual = std::move(rest);
  return out;
}

std::vector<JordanBlock> jordan_type(const FieldMatrix& m) {
  if (!m.is_square()) throw ValidationError("jordan_type: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  const Field& f = m.field();
  RootSplit split = split_roots(characteristic_polynomial(m), f);
  if (split.residual.size() > 1)
    throw NonSplitError("characteristic polynomial does not split over " + f.name() + "; factor without roots: " +
                        polynomial_to_string(split.residual));
  std::vector<JordanBlock> blocks;
  const FieldMatrix id = FieldMatrix::identity(f, n);
  for (const auto& [lambda, mult] : split.roots) {
    FieldMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted.set(i, i, m(i, i) - lambda);
    // r[k] = rank(shifted^k); stabilizes at n - mult
    std::vector<std::size_t> r{n};
    FieldMatrix acc = id;
    while (r.back() > n - mult) {
      acc = acc * shifted;
      r.push_back(rank(acc));
    }
    r.push_back(r.back());
    for (std::size_t k = 1; k + 1 < r.size(); ++k) {
      const std::size_t count = r[k - 1] - 2 * r[k] + r[k + 1];
      for (std::size_t c = 0; c < count; ++c) blocks.push_back({lambda, k});
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

FieldMatrix jordan_matrix(const Field& field, const std::vector<JordanBlock>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size;
  FieldMatrix out(field, n, n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size; ++i) {
      out.set(offset + i, offset + i, b.eigenvalue);
      if (i + 1 < b.size) out.set(offset + i, offset + i + 1, 1);
    }
    offset += b.size;
  }
  return out;
}

}  // namespace gpd
