#include "gpd/homology.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "gpd/errors.hpp"

namespace gpd {

// ------------------------------------------------------------ FilteredComplex

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices, const std::vector<std::size_t>& lines) {
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), 0);
  auto line_of = [&](std::size_t original) { return original < lines.size() ? lines[original] : 0; };
  for (std::size_t k = 0; k < simplices.size(); ++k) {
    auto& v = simplices[k].vertices;
    if (v.empty()) throw ParseError("simplex without vertices", line_of(k));
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw ParseError("repeated vertex in simplex", line_of(k));
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& va = simplices[a].vertices;
    const auto& vb = simplices[b].vertices;
    if (va.size() != vb.size()) return va.size() < vb.size();
    return va < vb;
  });
  std::vector<std::size_t> sorted_lines;
  for (std::size_t k : order) {
    simplices_.push_back(simplices[k]);
    sorted_lines.push_back(line_of(k));
    if (!index_.emplace(simplices[k].vertices, simplices_.size() - 1).second)
      throw ParseError("duplicate simplex", line_of(k));
  }
  faces_.resize(simplices_.size());
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    const auto& v = simplices_[s].vertices;
    if (v.size() == 1) {
      if (v[0] != vertex_count_)
        throw ParseError("vertex indices must be dense: vertex " + std::to_string(vertex_count_) + " is missing",
                         sorted_lines[s]);
      ++vertex_count_;
      continue;
    }
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<std::size_t> face = v;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      auto it = index_.find(face);
      std::ostringstream name;
      for (std::size_t x = 0; x < face.size(); ++x) name << (x ? " " : "") << face[x];
      if (it == index_.end()) throw FaceMissingError("face {" + name.str() + "} is missing", sorted_lines[s]);
      if (simplices_[s].value < simplices_[it->second].value)
        throw ValueInversionError("value " + to_string(simplices_[s].value) + " is below the value " +
                                      to_string(simplices_[it->second].value) + " of face {" + name.str() + "}",
                                  sorted_lines[s]);
      faces_[s].push_back(it->second);
    }
  }
}

int FilteredComplex::dimension() const noexcept {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().dimension());
}

std::size_t FilteredComplex::find(const std::vector<std::size_t>& vertices) const {
  auto it = index_.find(vertices);
  return it == index_.end() ? simplices_.size() : it->second;
}

std::vector<Rational> FilteredComplex::values() const {
  std::vector<Rational> out;
  for (const auto& s : simplices_) out.push_back(s.value);
  return out;
}

std::vector<Rational> FilteredComplex::critical_values() const { return sorted_unique(values()); }

FilteredComplex FilteredComplex::with_values(const std::vector<Rational>& values) const {
  if (values.size() != simplices_.size()) throw ValidationError("with_values: one value per simplex required");
  std::vector<Simplex> s = simplices_;
  for (std::size_t k = 0; k < s.size(); ++k) s[k].value = values[k];
  return FilteredComplex(std::move(s));
}

std::string FilteredComplex::to_text() const {
  std::ostringstream os;
  for (const auto& s : simplices_) {
    for (std::size_t k = 0; k < s.vertices.size(); ++k) os << (k ? " " : "") << s.vertices[k];
    os << " : " << to_string(s.value) << '\n';
  }
  return os.str();
}

FilteredComplex parse_filtration(std::string_view text) {
  std::vector<Simplex> simplices;
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'v0 v1 ... : value'", line_no);
    std::istringstream vertices(line.substr(0, colon));
    Simplex s;
    std::string token;
    while (vertices >> token) {
      if (!std::all_of(token.begin(), token.end(), ::isdigit) || token.size() > 9)
        throw ParseError("bad vertex index '" + token + "'", line_no);
      s.vertices.push_back(std::stoul(token));
    }
    if (s.vertices.empty()) throw ParseError("simplex without vertices", line_no);
    std::string value = line.substr(colon + 1);
    const auto first = value.find_first_not_of(" \t\r");
    const auto last = value.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw ParseError("missing filtration value", line_no);
    try {
      s.value = parse_rational(value.substr(first, last - first + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    simplices.push_back(std::move(s));
    lines.push_back(line_no);
  }
  return FilteredComplex(std::move(simplices), lines);
}

// --------------------------------------------------------------- Coefficients

Coefficients Coefficients::modular(Integer m) {
  if (m < 2) throw ValidationError("Z/m coefficients need m >= 2, got " + m.get_str());
  return {Kind::Modular, std::move(m), Field()};
}

Coefficients Coefficients::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text.rfind("Zm:", 0) == 0) {
    std::string digits(text.substr(3));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ParseError("bad coefficients '" + std::string(text) + "'");
    return modular(Integer(digits, 10));
  }
  if (text == "Q" || text.rfind("Fp:", 0) == 0) return over(Field::parse(text));
  throw ParseError("bad coefficients '" + std::string(text) + "' (expected Z, Q, Fp:<p> or Zm:<m>)");
}

std::string Coefficients::to_string() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Modular: return "Zm:" + modulus.get_str();
    case Kind::Field: return field.name();
  }
  return "?";
}

CategoryId Coefficients::category() const {
  switch (kind) {
    case Kind::Integers: return CategoryId::ab();
    case Kind::Modular: return CategoryId::finab();
    case Kind::Field: return CategoryId::vect(field);
  }
  return CategoryId::ab();
}

// ------------------------------------------------------------- HomologyEngine

struct HomologyEngine::Stage {
  Object object;
  // k-simplices of the subcomplex (global indices) and their local positions
  std::vector<std::size_t> cells;
  std::map<std::size_t, std::size_t> position;
  // generators of the homology group as local chain vectors
  std::vector<std::vector<Integer>> int_generators;
  std::optional<LatticeQuotient> quotient;
  FieldMatrix field_basis;  // boundary basis followed by generators
  std::vector<std::vector<Rational>> field_generators;
  std::size_t boundary_rank = 0;
  // components mode
  std::vector<std::size_t> component;  // per vertex, npos when absent
  std::vector<std::size_t> representative;
};

HomologyEngine::HomologyEngine(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients)
    : HomologyEngine(complex, degree, std::move(coefficients), false) {}

HomologyEngine::HomologyEngine(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients,
                               bool components)
    : complex_(complex),
      degree_(degree),
      coefficients_(std::move(coefficients)),
      components_(components),
      category_(components ? CategoryId::finset() : coefficients_.category()) {}

HomologyEngine HomologyEngine::components(const FilteredComplex& complex) {
  return HomologyEngine(complex, 0, Coefficients::integers(), true);
}

Mask HomologyEngine::sublevel(const std::vector<Rational>& values, const Rational& r) const {
  if (values.size() != complex_.size()) throw ValidationError("sublevel: one value per simplex required");
  Mask mask(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) mask[k] = values[k] <= r;
  return mask;
}

namespace {

std::vector<std::size_t> cells_of_dimension(const FilteredComplex& k, const Mask& mask, std::size_t dim) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < k.size(); ++s)
    if (mask[s] && k.simplices()[s].dimension() == dim) out.push_back(s);
  return out;
}

std::map<std::size_t, std::size_t> positions(const std::vector<std::size_t>& cells) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t k = 0; k < cells.size(); ++k) out.emplace(cells[k], k);
  return out;
}

// Boundary matrix from `cols` (dimension d) to `rows` (dimension d-1).
IntMatrix boundary(const FilteredComplex& k, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const auto row_pos = positions(rows);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& faces = k.faces(cols[c]);
    for (std::size_t i = 0; i < faces.size(); ++i) m(row_pos.at(faces[i]), c) = (i % 2 == 0) ? 1 : -1;
  }
  return m;
}

FieldMatrix to_field(const IntMatrix& m, const Field& f) {
  FieldMatrix out(f, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) out.set(r, c, Rational(m(r, c)));
  return out;
}

IntMatrix scaled_identity(std::size_t n, const Integer& m) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = m;
  return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

HomologyEngine::Stage HomologyEngine::compute(const Mask& mask) const {
  Stage st;
  if (components_) {
    const std::size_t n = complex_.vertex_count();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t e : cells_of_dimension(complex_, mask, 1)) {
      const auto& v = complex_.simplices()[e].vertices;
      std::size_t a = find_root(parent, v[0]), b = find_root(parent, v[1]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    st.component.assign(n, static_cast<std::size_t>(-1));
    std::map<std::size_t, std::size_t> index_of_root;
    for (std::size_t s : cells_of_dimension(complex_, mask, 0)) {
      const std::size_t v = complex_.simplices()[s].vertices[0];
      const std::size_t root = find_root(parent, v);
      auto [it, inserted] = index_of_root.emplace(root, st.representative.size());
      if (inserted) st.representative.push_back(v);
      st.component[v] = it->second;
    }
    st.object = Object::finite_set(st.representative.size());
    return st;
  }

  const std::size_t k = degree_;
  st.cells = cells_of_dimension(complex_, mask, k);
  st.position = positions(st.cells);
  const std::vector<std::size_t> lower = k == 0 ? std::vector<std::size_t>{} : cells_of_dimension(complex_, mask, k - 1);
  const std::vector<std::size_t> upper = cells_of_dimension(complex_, mask, k + 1);
  const IntMatrix d_k = boundary(complex_, lower, st.cells);
  const IntMatrix d_up = boundary(complex_, st.cells, upper);
  const std::size_t n = st.cells.size();

  switch (coefficients_.kind) {
    case Coefficients::Kind::Integers: {
      st.quotient.emplace(integer_kernel(d_k), d_up);
      st.object = Object::abelian_group(st.quotient->free_rank(), st.quotient->torsion());
      break;
    }
    case Coefficients::Kind::Modular: {
      const Integer& m = coefficients_.modulus;
      const IntMatrix kernel = integer_kernel(d_k.hconcat(scaled_identity(lower.size(), m)));
      IntMatrix cycles(n, kernel.cols());
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < kernel.cols(); ++c) cycles(r, c) = kernel(r, c);
      st.quotient.emplace(cycles, d_up.hconcat(scaled_identity(n, m)));
      if (st.quotient->free_rank() != 0) throw ValidationError("internal: Z/m homology has a free part");
      st.object = Object::finite_abelian_group(st.quotient->torsion());
      break;
    }
    case Coefficients::Kind::Field: {
      const Field& f = coefficients_.field;
      const FieldMatrix cycles = nullspace(to_field(d_k, f));
      const FieldMatrix bounds = column_basis(to_field(d_up, f));
      st.boundary_rank = bounds.cols();
      st.field_basis = column_basis(bounds.hconcat(cycles));
      st.object = Object::vector_space(f, st.field_basis.cols() - st.boundary_rank);
      for (std::size_t c = st.boundary_rank; c < st.field_basis.cols(); ++c)
        st.field_generators.push_back(st.field_basis.column(c));
      return st;
    }
  }
  const IntMatrix& gens = st.quotient->generators();
  for (std::size_t c = 0; c < gens.cols(); ++c) st.int_generators.push_back(gens.column(c));
  return st;
}

const HomologyEngine::Stage& HomologyEngine::stage(const Mask& mask) {
  if (mask.size() != complex_.size()) throw ValidationError("homology: mask size mismatch");
  auto it = cache_.find(mask);
  if (it == cache_.end()) it = cache_.emplace(mask, std::make_shared<const Stage>(compute(mask))).first;
  return *it->second;
}

const Object& HomologyEngine::homology(const Mask& mask) { return stage(mask).object; }

Morphism HomologyEngine::induced(const Mask& a, const Mask& b) {
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a[s] && !b[s]) throw ValidationError("induced: first subcomplex is not contained in the second");
  const Stage& sa = stage(a);
  const Stage& sb = stage(b);
  if (components_) {
    std::vector<std::size_t> table;
    for (std::size_t v : sa.representative) table.push_back(sb.component[v]);
    return Morphism::set_map(sa.object, sb.object, std::move(table));
  }
  if (coefficients_.kind == Coefficients::Kind::Field) {
    const Field& f = coefficients_.field;
    FieldMatrix images(f, sb.cells.size(), sa.field_generators.size());
    for (std::size_t g = 0; g < sa.field_generators.size(); ++g)
      for (std::size_t i = 0; i < sa.cells.size(); ++i)
        if (sa.field_generators[g][i] != 0) images.set(sb.position.at(sa.cells[i]), g, sa.field_generators[g][i]);
    const FieldMatrix coords = solve_columns(sb.field_basis, images);
    FieldMatrix m(f, sb.object.size(), sa.object.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, coords(sb.boundary_rank + r, c));
    return Morphism::linear(sa.object, sb.object, std::move(m));
  }
  IntMatrix m(sb.object.size(), sa.object.size());
  for (std::size_t g = 0; g < sa.int_generators.size(); ++g) {
    std::vector<Integer> x(sb.cells.size(), Integer(0));
    for (std::size_t i = 0; i < sa.cells.size(); ++i) x[sb.position.at(sa.cells[i])] = sa.int_generators[g][i];
    m.set_column(g, sb.quotient->coordinates(x));
  }
  return Morphism::homomorphism(sa.object, sb.object, std::move(m));
}

ConstructibleModule HomologyEngine::module(const std::vector<Rational>& values) {
  const std::vector<Rational> critical = sorted_unique(values);
  Mask previous(complex_.size(), false);
  std::vector<Object> objects{homology(previous)};
  std::vector<Morphism> maps;
  for (const Rational& r : critical) {
    Mask current = sublevel(values, r);
    maps.push_back(induced(previous, current));
    objects.push_back(homology(current));
    previous = std::move(current);
  }
  return ConstructibleModule(category_, critical, std::move(objects), std::move(maps));
}

ConstructibleModule persistent_module(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients) {
  HomologyEngine engine(complex, degree, std::move(coefficients));
  return engine.module();
}

ConstructibleModule component_module(const FilteredComplex& complex) {
  HomologyEngine engine = HomologyEngine::components(complex);
  return engine.module();
}

FilteredComplex perturb(const FilteredComplex& complex, const Rational& eps, std::uint64_t seed) {
  if (eps < 0) throw ValidationError("perturb: eps must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(0, 1024);
  std::vector<Rational> values = complex.values();
  for (auto& v : values) {
    v += eps * Rational(step(rng) - 512, 512);
    v.canonicalize();
  }
  for (std::size_t s = 0; s < values.size(); ++s)
    for (std::size_t face : complex.faces(s)) values[s] = std::max(values[s], values[face]);
  return complex.with_values(values);
}

InterleavingPair inclusion_interleaving(HomologyEngine& engine, const std::vector<Rational>& f,
                                        const std::vector<Rational>& g, const Rational& eps,
                                        const ConstructibleModule& module_f, const ConstructibleModule& module_g) {
  return make_interleaving(
      module_f, module_g, eps,
      [&](const Rational& r) { return engine.induced(engine.sublevel(f, r), engine.sublevel(g, r + eps)); },
      [&](const Rational& r) { return engine.induced(engine.sublevel(g, r), engine.sublevel(f, r + eps)); });
}

}  // namespace gpd
