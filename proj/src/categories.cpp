#include "gpd/categories.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "gpd/errors.hpp"

namespace gpd {

// ---------------------------------------------------------------- CategoryId

std::string CategoryId::name() const {
  switch (kind) {
    case CategoryKind::FinSet: return "finset";
    case CategoryKind::Vect: return "vect";
    case CategoryKind::Ab: return "ab";
    case CategoryKind::FinAb: return "finab";
    case CategoryKind::RepN: return "repn";
  }
  return "?";
}

CategoryId CategoryId::parse(std::string_view name, Field field) {
  if (name == "finset") return finset();
  if (name == "vect") return vect(field);
  if (name == "ab") return ab();
  if (name == "finab") return finab();
  if (name == "repn") return repn(field);
  throw ParseError("unknown category '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ BasisKey

BasisKey BasisKey::cyclic(Integer p, unsigned m) {
  if (!is_prime(p) || m == 0) throw ValidationError("cyclic basis key needs a prime and a positive exponent");
  BasisKey k = of_kind(Kind::Cyclic);
  k.prime = std::move(p);
  k.exponent = m;
  return k;
}

BasisKey BasisKey::jordan(Rational lambda, std::size_t m) {
  if (m == 0) throw ValidationError("Jordan block size must be positive");
  BasisKey k = of_kind(Kind::Jordan);
  k.eigenvalue = std::move(lambda);
  k.size = m;
  return k;
}

std::string BasisKey::to_string() const {
  switch (kind) {
    case Kind::Point: return "pt";
    case Kind::Line: return "k";
    case Kind::Free: return "Z";
    case Kind::Cyclic: {
      Integer order;
      mpz_pow_ui(order.get_mpz_t(), prime.get_mpz_t(), exponent);
      return "Z/" + order.get_str();
    }
    case Kind::Jordan: return "J(" + gpd::to_string(eigenvalue) + "," + std::to_string(size) + ")";
  }
  return "?";
}

BasisKey BasisKey::parse(std::string_view text) {
  if (text == "pt") return point();
  if (text == "k") return line();
  if (text == "Z") return free();
  if (text.rfind("Z/", 0) == 0) {
    std::string digits(text.substr(2));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ParseError("bad basis key '" + std::string(text) + "'");
    Integer order(digits, 10);
    if (order < 2) throw ParseError("bad basis key '" + std::string(text) + "'");
    auto factors = factorize(order);
    if (factors.size() != 1) throw ParseError("basis key '" + std::string(text) + "' is not a prime power cyclic group");
    return cyclic(factors[0].first, factors[0].second);
  }
  if (text.rfind("J(", 0) == 0 && text.back() == ')') {
    std::string_view body = text.substr(2, text.size() - 3);
    auto comma = body.rfind(',');
    if (comma == std::string_view::npos) throw ParseError("bad basis key '" + std::string(text) + "'");
    Rational lambda = parse_rational(body.substr(0, comma));
    std::string size(body.substr(comma + 1));
    if (size.empty() || !std::all_of(size.begin(), size.end(), ::isdigit)) throw ParseError("bad basis key '" + std::string(text) + "'");
    return jordan(lambda, std::stoull(size));
  }
  throw ParseError("bad basis key '" + std::string(text) + "'");
}

bool operator==(const BasisKey& a, const BasisKey& b) {
  return a.kind == b.kind && a.prime == b.prime && a.exponent == b.exponent && a.eigenvalue == b.eigenvalue &&
         a.size == b.size;
}

bool operator<(const BasisKey& a, const BasisKey& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.prime != b.prime) return a.prime < b.prime;
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
  return a.size < b.size;
}

// ------------------------------------------------------------------ IsoClass

std::size_t IsoClass::multiplicity(const BasisKey& key) const {
  auto it = parts.find(key);
  return it == parts.end() ? 0 : it->second;
}

IsoClass IsoClass::operator+(const IsoClass& other) const {
  if (!(category == other.category)) throw ValidationError("IsoClass: category mismatch");
  IsoClass out = *this;
  for (const auto& [key, mult] : other.parts) out.parts[key] += mult;
  return out;
}

std::string IsoClass::to_string() const {
  if (parts.empty()) return "[e]";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, mult] : parts) {
    os << (first ? "" : " + ");
    if (mult != 1) os << mult;
    os << '[' << key.to_string() << ']';
    first = false;
  }
  return os.str();
}

// -------------------------------------------------------------------- Object

Object Object::finite_set(std::size_t n) {
  Object o;
  o.category_ = CategoryId::finset();
  o.count_ = n;
  return o;
}

Object Object::vector_space(Field field, std::size_t dim) {
  Object o;
  o.category_ = CategoryId::vect(field);
  o.count_ = dim;
  return o;
}

namespace {

void check_invariant_factors(const std::vector<Integer>& torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw ValidationError("invariant factor " + torsion[i].get_str() + " is not >= 2");
    if (i > 0 && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t()))
      throw ValidationError("invariant factors " + torsion[i - 1].get_str() + ", " + torsion[i].get_str() +
                            " do not form a divisibility chain");
  }
}

}  // namespace

Object Object::abelian_group(std::size_t free_rank, std::vector<Integer> torsion) {
  check_invariant_factors(torsion);
  Object o;
  o.category_ = CategoryId::ab();
  o.free_rank_ = free_rank;
  o.torsion_ = std::move(torsion);
  return o;
}

Object Object::finite_abelian_group(std::vector<Integer> torsion) {
  check_invariant_factors(torsion);
  Object o;
  o.category_ = CategoryId::finab();
  o.torsion_ = std::move(torsion);
  return o;
}

Object Object::representation(FieldMatrix endomorphism) {
  if (!endomorphism.is_square()) throw ValidationError("representation: endomorphism matrix is not square");
  Object o;
  o.category_ = CategoryId::repn(endomorphism.field());
  o.endomorphism_ = std::move(endomorphism);
  return o;
}

Object Object::identity_object(const CategoryId& category) {
  switch (category.kind) {
    case CategoryKind::FinSet: return finite_set(0);
    case CategoryKind::Vect: return vector_space(category.field, 0);
    case CategoryKind::Ab: return abelian_group(0, {});
    case CategoryKind::FinAb: return finite_abelian_group({});
    case CategoryKind::RepN: return representation(FieldMatrix(category.field, 0, 0));
  }
  throw ValidationError("identity_object: unknown category");
}

std::size_t Object::size() const noexcept {
  switch (category_.kind) {
    case CategoryKind::FinSet:
    case CategoryKind::Vect: return count_;
    case CategoryKind::Ab:
    case CategoryKind::FinAb: return torsion_.size() + free_rank_;
    case CategoryKind::RepN: return endomorphism_.rows();
  }
  return 0;
}

std::vector<Integer> Object::generator_orders() const {
  std::vector<Integer> orders = torsion_;
  orders.resize(torsion_.size() + free_rank_, Integer(0));
  return orders;
}

IntMatrix Object::relations() const {
  IntMatrix r(size(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = torsion_[i];
  return r;
}

std::string Object::to_string() const {
  std::ostringstream os;
  switch (category_.kind) {
    case CategoryKind::FinSet: os << "{" << count_ << " pts}"; break;
    case CategoryKind::Vect: os << "k^" << count_; break;
    case CategoryKind::Ab:
    case CategoryKind::FinAb: {
      if (size() == 0) return "0";
      bool first = true;
      if (free_rank_ > 0) {
        os << "Z" << (free_rank_ > 1 ? "^" + std::to_string(free_rank_) : "");
        first = false;
      }
      for (const auto& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
      }
      break;
    }
    case CategoryKind::RepN: os << endomorphism_.to_string(); break;
  }
  return os.str();
}

bool operator==(const Object& a, const Object& b) {
  return a.category_ == b.category_ && a.count_ == b.count_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_ &&
         a.endomorphism_ == b.endomorphism_;
}

// ------------------------------------------------------------------ Morphism

Morphism Morphism::identity(const Object& object) {
  const std::size_t n = object.size();
  switch (object.category().kind) {
    case CategoryKind::FinSet: {
      std::vector<std::size_t> table(n);
      for (std::size_t i = 0; i < n; ++i) table[i] = i;
      return set_map(object, object, std::move(table));
    }
    case CategoryKind::Vect:
    case CategoryKind::RepN: return linear(object, object, FieldMatrix::identity(object.category().field, n));
    case CategoryKind::Ab:
    case CategoryKind::FinAb: return homomorphism(object, object, IntMatrix::identity(n));
  }
  throw ValidationError("identity: unknown category");
}

Morphism Morphism::zero(const Object& source, const Object& target) {
  switch (source.category().kind) {
    case CategoryKind::FinSet:
      if (source.size() != 0) throw ValidationError("FinSet has no zero morphism out of a nonempty set");
      return set_map(source, target, {});
    case CategoryKind::Vect:
    case CategoryKind::RepN:
      return linear(source, target, FieldMatrix(source.category().field, target.size(), source.size()));
    case CategoryKind::Ab:
    case CategoryKind::FinAb: return homomorphism(source, target, IntMatrix(target.size(), source.size()));
  }
  throw ValidationError("zero: unknown category");
}

Morphism Morphism::set_map(const Object& source, const Object& target, std::vector<std::size_t> table) {
  if (source.category().kind != CategoryKind::FinSet || target.category().kind != CategoryKind::FinSet)
    throw ValidationError("set_map: objects are not finite sets");
  if (table.size() != source.size()) throw ValidationError("set_map: table length differs from source size");
  for (std::size_t v : table)
    if (v >= target.size()) throw ValidationError("set_map: value " + std::to_string(v) + " outside target");
  Morphism m;
  m.source_ = source;
  m.target_ = target;
  m.table_ = std::move(table);
  return m;
}

Morphism Morphism::linear(const Object& source, const Object& target, FieldMatrix matrix) {
  const CategoryKind kind = source.category().kind;
  if (!(source.category() == target.category()) || (kind != CategoryKind::Vect && kind != CategoryKind::RepN))
    throw ValidationError("linear: objects are not vector spaces or representations over one field");
  if (!(matrix.field() == source.category().field)) throw ValidationError("linear: matrix field differs from category field");
  if (matrix.rows() != target.size() || matrix.cols() != source.size())
    throw ValidationError("linear: matrix shape " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                          " does not match " + std::to_string(target.size()) + "x" + std::to_string(source.size()));
  if (kind == CategoryKind::RepN && !(matrix * source.endomorphism() == target.endomorphism() * matrix))
    throw ValidationError("linear: matrix does not intertwine the endomorphisms");
  Morphism m;
  m.source_ = source;
  m.target_ = target;
  m.matrix_ = std::move(matrix);
  return m;
}

Morphism Morphism::homomorphism(const Object& source, const Object& target, IntMatrix matrix) {
  const CategoryKind kind = source.category().kind;
  if (!(source.category() == target.category()) || (kind != CategoryKind::Ab && kind != CategoryKind::FinAb))
    throw ValidationError("homomorphism: objects are not abelian groups of one category");
  if (matrix.rows() != target.size() || matrix.cols() != source.size())
    throw ValidationError("homomorphism: matrix shape " + std::to_string(matrix.rows()) + "x" +
                          std::to_string(matrix.cols()) + " does not match " + std::to_string(target.size()) + "x" +
                          std::to_string(source.size()));
  const std::vector<Integer> src_orders = source.generator_orders();
  const std::vector<Integer> tgt_orders = target.generator_orders();
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      Integer& entry = matrix(r, c);
      if (tgt_orders[r] != 0) entry = mod_nonnegative(entry, tgt_orders[r]);
      if (src_orders[c] == 0 || entry == 0) continue;
      // relation order*e_c must land in the target relations
      const bool ok = tgt_orders[r] != 0 && mpz_divisible_p(Integer(src_orders[c] * entry).get_mpz_t(), tgt_orders[r].get_mpz_t());
      if (!ok)
        throw ValidationError("homomorphism: generator " + std::to_string(c) + " of order " + src_orders[c].get_str() +
                              " is not sent to an element of compatible order");
    }
  }
  Morphism m;
  m.source_ = source;
  m.target_ = target;
  m.integer_matrix_ = std::move(matrix);
  return m;
}

std::string Morphism::to_string() const {
  std::ostringstream os;
  os << source_.to_string() << " -> " << target_.to_string() << " : ";
  switch (category().kind) {
    case CategoryKind::FinSet: {
      os << '[';
      for (std::size_t i = 0; i < table_.size(); ++i) os << (i ? ", " : "") << table_[i];
      os << ']';
      break;
    }
    case CategoryKind::Vect:
    case CategoryKind::RepN: os << matrix_.to_string(); break;
    case CategoryKind::Ab:
    case CategoryKind::FinAb: os << integer_matrix_.to_string(); break;
  }
  return os.str();
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.table_ == b.table_ &&
         a.integer_matrix_ == b.integer_matrix_ && a.matrix_ == b.matrix_;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source()))
    throw ValidationError("compose: target " + f.target().to_string() + " differs from source " + g.source().to_string());
  switch (f.category().kind) {
    case CategoryKind::FinSet: {
      std::vector<std::size_t> table(f.table().size());
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = g.table()[f.table()[i]];
      return Morphism::set_map(f.source(), g.target(), std::move(table));
    }
    case CategoryKind::Vect:
    case CategoryKind::RepN: return Morphism::linear(f.source(), g.target(), g.matrix() * f.matrix());
    case CategoryKind::Ab:
    case CategoryKind::FinAb:
      return Morphism::homomorphism(f.source(), g.target(), g.integer_matrix() * f.integer_matrix());
  }
  throw ValidationError("compose: unknown category");
}

// ---------------------------------------------------------------- iso classes

namespace {

IsoClass abelian_class(const CategoryId& category, std::size_t free_rank, const std::vector<Integer>& torsion) {
  IsoClass c{category, {}};
  if (free_rank > 0) c.parts[BasisKey::free()] = free_rank;
  for (const auto& d : torsion)
    for (const auto& [p, e] : factorize(d)) c.parts[BasisKey::cyclic(p, e)] += 1;
  return c;
}

IsoClass jordan_class(const CategoryId& category, const FieldMatrix& endomorphism) {
  IsoClass c{category, {}};
  for (const auto& block : jordan_type(endomorphism)) c.parts[BasisKey::jordan(block.eigenvalue, block.size)] += 1;
  return c;
}

IsoClass counted_class(const CategoryId& category, BasisKey key, std::size_t n) {
  IsoClass c{category, {}};
  if (n > 0) c.parts[std::move(key)] = n;
  return c;
}

void require_abelian(const Object& o) {
  if (!o.category().is_abelian()) throw ValidationError("subobjects are only available in abelian categories");
}

}  // namespace

IsoClass iso_class(const Object& object) {
  const CategoryId& cat = object.category();
  switch (cat.kind) {
    case CategoryKind::FinSet: return counted_class(cat, BasisKey::point(), object.size());
    case CategoryKind::Vect: return counted_class(cat, BasisKey::line(), object.size());
    case CategoryKind::Ab:
    case CategoryKind::FinAb: return abelian_class(cat, object.free_rank(), object.torsion());
    case CategoryKind::RepN: return jordan_class(cat, object.endomorphism());
  }
  throw ValidationError("iso_class: unknown category");
}

IsoClass image_iso_class(const Morphism& f) {
  const CategoryId& cat = f.category();
  switch (cat.kind) {
    case CategoryKind::FinSet: {
      std::set<std::size_t> values(f.table().begin(), f.table().end());
      return counted_class(cat, BasisKey::point(), values.size());
    }
    case CategoryKind::Vect: return counted_class(cat, BasisKey::line(), rank(f.matrix()));
    case CategoryKind::Ab:
    case CategoryKind::FinAb:
    case CategoryKind::RepN: {
      Subobject zero{f.target(), f.target().relations(), FieldMatrix(cat.field, f.target().size(), 0)};
      return subquotient_class(image_subobject(f), zero);
    }
  }
  throw ValidationError("image_iso_class: unknown category");
}

bool is_isomorphism(const Morphism& f) {
  switch (f.category().kind) {
    case CategoryKind::FinSet: {
      if (f.source().size() != f.target().size()) return false;
      std::set<std::size_t> values(f.table().begin(), f.table().end());
      return values.size() == f.target().size();
    }
    case CategoryKind::Vect:
    case CategoryKind::RepN: return f.matrix().is_square() && rank(f.matrix()) == f.matrix().rows();
    case CategoryKind::Ab:
    case CategoryKind::FinAb: {
      // surjective between isomorphic f.g. groups (Hopfian)
      if (!(f.source() == f.target())) return false;
      IntMatrix span = f.integer_matrix().hconcat(f.target().relations());
      QuotientInvariants coker = quotient_invariants(IntMatrix::identity(f.target().size()), span);
      return coker.free_rank == 0 && coker.torsion.empty();
    }
  }
  return false;
}

// ---------------------------------------------------------------- direct sums

namespace {

struct CanonicalPresentation {
  Object object;
  IntMatrix to_canonical;    // canonical coordinates of each original generator
  IntMatrix from_canonical;  // original coordinates of each canonical generator
};

CanonicalPresentation canonical_presentation(const std::vector<Integer>& orders, CategoryKind kind) {
  const std::size_t n = orders.size();
  std::vector<std::vector<Integer>> rel_cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] == 0) continue;
    std::vector<Integer> col(n, Integer(0));
    col[i] = orders[i];
    rel_cols.push_back(std::move(col));
  }
  LatticeQuotient q(IntMatrix::identity(n), IntMatrix::from_columns(rel_cols, n));
  CanonicalPresentation out;
  out.object = kind == CategoryKind::Ab ? Object::abelian_group(q.free_rank(), q.torsion())
                                        : Object::finite_abelian_group(q.torsion());
  out.to_canonical = IntMatrix(q.generator_count(), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> e(n, Integer(0));
    e[i] = 1;
    out.to_canonical.set_column(i, q.coordinates(e));
  }
  out.from_canonical = q.generators();
  return out;
}

std::vector<Integer> concat(std::vector<Integer> a, const std::vector<Integer>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <class Matrix>
void place_block(Matrix& out, const Matrix& block, std::size_t row0, std::size_t col0);

template <>
void place_block(IntMatrix& out, const IntMatrix& block, std::size_t row0, std::size_t col0) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) out(row0 + r, col0 + c) = block(r, c);
}

template <>
void place_block(FieldMatrix& out, const FieldMatrix& block, std::size_t row0, std::size_t col0) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) out.set(row0 + r, col0 + c, block(r, c));
}

template <class Matrix>
Matrix block_diagonal(const Matrix& a, const Matrix& b, Matrix out) {
  place_block(out, a, 0, 0);
  place_block(out, b, a.rows(), a.cols());
  return out;
}

}  // namespace

Object direct_sum(const Object& a, const Object& b) {
  if (!(a.category() == b.category())) throw ValidationError("direct_sum: category mismatch");
  const CategoryId& cat = a.category();
  switch (cat.kind) {
    case CategoryKind::FinSet: return Object::finite_set(a.size() + b.size());
    case CategoryKind::Vect: return Object::vector_space(cat.field, a.size() + b.size());
    case CategoryKind::Ab:
    case CategoryKind::FinAb:
      return canonical_presentation(concat(a.generator_orders(), b.generator_orders()), cat.kind).object;
    case CategoryKind::RepN:
      return Object::representation(block_diagonal(a.endomorphism(), b.endomorphism(),
                                                   FieldMatrix(cat.field, a.size() + b.size(), a.size() + b.size())));
  }
  throw ValidationError("direct_sum: unknown category");
}

Morphism direct_sum(const Morphism& f, const Morphism& g) {
  if (!(f.category() == g.category())) throw ValidationError("direct_sum: category mismatch");
  const CategoryId& cat = f.category();
  switch (cat.kind) {
    case CategoryKind::FinSet: {
      std::vector<std::size_t> table = f.table();
      for (std::size_t v : g.table()) table.push_back(f.target().size() + v);
      return Morphism::set_map(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()), std::move(table));
    }
    case CategoryKind::Vect:
    case CategoryKind::RepN: {
      FieldMatrix m = block_diagonal(f.matrix(), g.matrix(),
                                     FieldMatrix(cat.field, f.target().size() + g.target().size(),
                                                 f.source().size() + g.source().size()));
      return Morphism::linear(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()), std::move(m));
    }
    case CategoryKind::Ab:
    case CategoryKind::FinAb: {
      CanonicalPresentation src =
          canonical_presentation(concat(f.source().generator_orders(), g.source().generator_orders()), cat.kind);
      CanonicalPresentation tgt =
          canonical_presentation(concat(f.target().generator_orders(), g.target().generator_orders()), cat.kind);
      IntMatrix raw = block_diagonal(f.integer_matrix(), g.integer_matrix(),
                                     IntMatrix(f.target().size() + g.target().size(), f.source().size() + g.source().size()));
      return Morphism::homomorphism(src.object, tgt.object, tgt.to_canonical * raw * src.from_canonical);
    }
  }
  throw ValidationError("direct_sum: unknown category");
}

// ---------------------------------------------------------------- subobjects

Subobject whole_subobject(const Object& object) {
  require_abelian(object);
  const std::size_t n = object.size();
  return {object, IntMatrix::identity(n), FieldMatrix::identity(object.category().field, n)};
}

Subobject image_subobject(const Morphism& f) {
  require_abelian(f.source());
  Subobject s{f.target(), {}, {}};
  if (f.category().has_field()) {
    s.subspace = f.matrix();
  } else {
    s.lattice = f.integer_matrix().hconcat(f.target().relations());
  }
  return s;
}

Subobject kernel_subobject(const Morphism& f) {
  require_abelian(f.source());
  Subobject s{f.source(), {}, {}};
  if (f.category().has_field()) {
    s.subspace = nullspace(f.matrix());
  } else {
    IntMatrix k = integer_kernel(f.integer_matrix().hconcat(f.target().relations()));
    IntMatrix top(f.source().size(), k.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
      for (std::size_t c = 0; c < k.cols(); ++c) top(r, c) = k(r, c);
    s.lattice = std::move(top);
  }
  return s;
}

Subobject intersect(const Subobject& a, const Subobject& b) {
  if (!(a.ambient == b.ambient)) throw ValidationError("intersect: subobjects of different objects");
  require_abelian(a.ambient);
  Subobject s{a.ambient, {}, {}};
  if (a.ambient.category().has_field()) {
    FieldMatrix k = nullspace(a.subspace.hconcat(b.subspace));
    s.subspace = a.subspace * k.transpose().columns(0, a.subspace.cols()).transpose();
  } else {
    IntMatrix k = integer_kernel(a.lattice.hconcat(b.lattice));
    IntMatrix top(a.lattice.cols(), k.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
      for (std::size_t c = 0; c < k.cols(); ++c) top(r, c) = k(r, c);
    s.lattice = a.lattice * top;
  }
  return s;
}

IsoClass subquotient_class(const Subobject& whole, const Subobject& part) {
  if (!(whole.ambient == part.ambient)) throw ValidationError("subquotient_class: subobjects of different objects");
  require_abelian(whole.ambient);
  const CategoryId& cat = whole.ambient.category();
  if (!cat.has_field()) {
    QuotientInvariants q = quotient_invariants(whole.lattice, part.lattice);
    if (cat.kind == CategoryKind::FinAb && q.free_rank != 0) throw ValidationError("subquotient_class: infinite FinAb group");
    return abelian_class(cat, q.free_rank, q.torsion);
  }
  const FieldMatrix part_basis = column_basis(part.subspace);
  const FieldMatrix whole_basis = column_basis(whole.subspace);
  const FieldMatrix combined = column_basis(part_basis.hconcat(whole_basis));
  if (combined.cols() != whole_basis.cols())
    throw ContainmentError("subquotient_class: part is not contained in whole", 0);
  const std::size_t k = part_basis.cols();
  const std::size_t rest = combined.cols() - k;
  if (cat.kind == CategoryKind::Vect) return counted_class(cat, BasisKey::line(), rest);
  const FieldMatrix complement = combined.columns(k, rest);
  const FieldMatrix coords = solve_columns(combined, whole.ambient.endomorphism() * complement);
  FieldMatrix induced(cat.field, rest, rest);
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t c = 0; c < rest; ++c) induced.set(r, c, coords(k + r, c));
  return jordan_class(cat, induced);
}

}  // namespace gpd
