#include "gpd/io.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "gpd/errors.hpp"

namespace gpd {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump(), 10));
  throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

Integer integer_from_json(const json& j, const std::string& where) {
  Rational r = rational_from_json(j, where);
  if (r.get_den() != 1) throw ParseError(where + ": expected an integer");
  return r.get_num();
}

std::size_t count_from_json(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

const json& array_member(const json& j, const char* key, const std::string& where) {
  const json& a = member(j, key, where);
  if (!a.is_array()) throw ParseError(where + ": \"" + key + "\" must be an array");
  return a;
}

json group_to_json(const GroupTag& tag) {
  json g = {{"type", tag.kind == GroupKind::A ? "A" : "B"}, {"category", tag.category.name()}};
  if (tag.category.has_field()) g["field"] = tag.category.field.name();
  return g;
}

CategoryId category_from_json(const json& j, const std::string& where) {
  const json& name = member(j, "category", where);
  if (!name.is_string()) throw ParseError(where + ": \"category\" must be a string");
  Field field;
  if (auto it = j.find("field"); it != j.end()) {
    if (!it->is_string()) throw ParseError(where + ": \"field\" must be a string");
    field = Field::parse(it->get<std::string>());
  }
  return CategoryId::parse(name.get<std::string>(), field);
}

}  // namespace

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json diagram_to_json(const DiagramGrid& y) {
  json grid = json::array();
  for (const auto& t : y.grid()) grid.push_back(to_string(t));
  json cells = json::array();
  for (const auto& [cell, value] : y.entries()) {
    json label = json::object();
    for (const auto& [key, c] : value.terms()) label[key.to_string()] = c;
    json entry = {{"i", cell.first}, {"label", label}};
    if (cell.second == y.size()) {
      entry["j"] = "inf";
    } else {
      entry["j"] = cell.second;
    }
    cells.push_back(std::move(entry));
  }
  return {{"grid", grid}, {"cells", cells}, {"group", group_to_json(y.tag())}};
}

DiagramGrid diagram_from_json(const json& j) {
  const json& group = member(j, "group", "diagram");
  const json& type = member(group, "type", "diagram group");
  if (!type.is_string() || (type != "A" && type != "B")) throw ParseError("diagram group: \"type\" must be \"A\" or \"B\"");
  const GroupTag tag = GroupTag::of(category_from_json(group, "diagram group"), type == "A" ? GroupKind::A : GroupKind::B);
  std::vector<Rational> grid;
  for (const auto& t : array_member(j, "grid", "diagram")) grid.push_back(rational_from_json(t, "diagram grid"));
  DiagramGrid y(grid, tag, DiagramGrid::Role::Diagram);
  std::set<DiagramGrid::Cell> seen;
  for (const auto& c : array_member(j, "cells", "diagram")) {
    const std::size_t i = count_from_json(member(c, "i", "diagram cell"), "diagram cell i");
    const json& jj = member(c, "j", "diagram cell");
    std::size_t col = 0;
    if (jj.is_string() && jj == "inf") {
      col = grid.size();
    } else {
      col = count_from_json(jj, "diagram cell j");
      if (col >= grid.size()) throw ParseError("diagram cell j: finite index out of range (use \"inf\")");
    }
    if (!y.is_cell(i, col)) throw ParseError("diagram cell (" + std::to_string(i) + ", " + jj.dump() + ") is not a grid cell");
    if (!seen.insert({i, col}).second) throw ParseError("diagram cell (" + std::to_string(i) + ", " + jj.dump() + ") repeated");
    const json& label = member(c, "label", "diagram cell");
    if (!label.is_object()) throw ParseError("diagram cell label must be an object");
    GroupElement value(tag);
    for (const auto& [key, coeff] : label.items()) {
      if (!coeff.is_number_integer()) throw ParseError("diagram label coefficient for " + key + " must be an integer");
      value.add(BasisKey::parse(key), coeff.get<std::int64_t>());
    }
    y.set(i, col, value);
  }
  return y;
}

namespace {

json object_to_json(const Object& o) {
  switch (o.category().kind) {
    case CategoryKind::FinSet: return {{"size", o.size()}};
    case CategoryKind::Vect: return {{"dim", o.size()}};
    case CategoryKind::Ab:
    case CategoryKind::FinAb: {
      json torsion = json::array();
      for (const auto& d : o.torsion()) torsion.push_back(d.get_str());
      json out = {{"torsion", torsion}};
      if (o.category().kind == CategoryKind::Ab) out["free"] = o.free_rank();
      return out;
    }
    case CategoryKind::RepN: {
      json rows = json::array();
      const FieldMatrix& m = o.endomorphism();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
      }
      return {{"matrix", rows}};
    }
  }
  return {};
}

template <class Matrix>
json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json morphism_to_json(const Morphism& f) {
  switch (f.category().kind) {
    case CategoryKind::FinSet: return {{"table", f.table()}};
    case CategoryKind::Vect:
    case CategoryKind::RepN: return {{"matrix", matrix_to_json(f.matrix())}};
    case CategoryKind::Ab:
    case CategoryKind::FinAb: return {{"matrix", matrix_to_json(f.integer_matrix())}};
  }
  return {};
}

// Rows x cols of rationals; an empty matrix may be written as [].
std::vector<std::vector<Rational>> rational_rows(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": matrix must be an array of rows");
  if (j.size() != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::vector<std::vector<Rational>> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw ParseError(where + ": every row needs " + std::to_string(cols) + " entries");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v, where));
    out.push_back(std::move(r));
  }
  return out;
}

Object object_from_json(const json& j, const CategoryId& cat, const std::string& where) {
  switch (cat.kind) {
    case CategoryKind::FinSet: return Object::finite_set(count_from_json(member(j, "size", where), where + " size"));
    case CategoryKind::Vect: return Object::vector_space(cat.field, count_from_json(member(j, "dim", where), where + " dim"));
    case CategoryKind::Ab:
    case CategoryKind::FinAb: {
      std::vector<Integer> torsion;
      if (j.contains("torsion"))
        for (const auto& d : array_member(j, "torsion", where)) torsion.push_back(integer_from_json(d, where + " torsion"));
      if (cat.kind == CategoryKind::FinAb) {
        if (j.contains("free") && count_from_json(j["free"], where) != 0) throw ParseError(where + ": finab objects have no free part");
        return Object::finite_abelian_group(std::move(torsion));
      }
      const std::size_t free = j.contains("free") ? count_from_json(j["free"], where + " free") : 0;
      return Object::abelian_group(free, std::move(torsion));
    }
    case CategoryKind::RepN: {
      const json& m = array_member(j, "matrix", where);
      const auto rows = rational_rows(m, m.size(), m.empty() ? 0 : m[0].size(), where);
      FieldMatrix a(cat.field, rows.size(), rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw ParseError(where + ": endomorphism matrix must be square");
        for (std::size_t c = 0; c < rows.size(); ++c) a.set(r, c, rows[r][c]);
      }
      return Object::representation(std::move(a));
    }
  }
  throw ParseError(where + ": unknown category");
}

Morphism morphism_from_json(const json& j, const Object& source, const Object& target, const std::string& where) {
  const CategoryId& cat = source.category();
  if (cat.kind == CategoryKind::FinSet) {
    std::vector<std::size_t> table;
    for (const auto& v : array_member(j, "table", where)) table.push_back(count_from_json(v, where + " table"));
    return Morphism::set_map(source, target, std::move(table));
  }
  const json& m = member(j, "matrix", where);
  const auto rows = (m.is_array() && m.empty()) ? std::vector<std::vector<Rational>>(target.size(), std::vector<Rational>(source.size()))
                                               : rational_rows(m, target.size(), source.size(), where);
  if (cat.has_field()) {
    FieldMatrix a(cat.field, target.size(), source.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) a.set(r, c, rows[r][c]);
    return Morphism::linear(source, target, std::move(a));
  }
  IntMatrix a(target.size(), source.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c].get_den() != 1) throw ParseError(where + ": homomorphism entries must be integers");
      a(r, c) = rows[r][c].get_num();
    }
  }
  return Morphism::homomorphism(source, target, std::move(a));
}

}  // namespace

json module_to_json(const ConstructibleModule& f) {
  json critical = json::array();
  for (const auto& s : f.critical()) critical.push_back(to_string(s));
  json objects = json::array();
  for (const auto& o : f.objects()) objects.push_back(object_to_json(o));
  json maps = json::array();
  for (const auto& m : f.maps()) maps.push_back(morphism_to_json(m));
  json out = {{"category", f.category().name()}, {"critical", critical}, {"objects", objects}, {"maps", maps}};
  if (f.category().has_field()) out["field"] = f.category().field.name();
  return out;
}

ConstructibleModule module_from_json(const json& j) {
  const CategoryId cat = category_from_json(j, "module");
  std::vector<Rational> critical;
  for (const auto& s : array_member(j, "critical", "module")) critical.push_back(rational_from_json(s, "module critical"));
  std::vector<Object> objects;
  const json& objs = array_member(j, "objects", "module");
  for (std::size_t k = 0; k < objs.size(); ++k) objects.push_back(object_from_json(objs[k], cat, "module object " + std::to_string(k)));
  const json& maps_json = array_member(j, "maps", "module");
  if (objects.size() != critical.size() + 1 || maps_json.size() != critical.size())
    throw ParseError("module: need " + std::to_string(critical.size() + 1) + " objects and " +
                     std::to_string(critical.size()) + " maps");
  std::vector<Morphism> maps;
  for (std::size_t k = 0; k < maps_json.size(); ++k)
    maps.push_back(morphism_from_json(maps_json[k], objects[k], objects[k + 1], "module map " + std::to_string(k)));
  return ConstructibleModule(cat, std::move(critical), std::move(objects), std::move(maps));
}

json erosion_to_json(const ErosionReport& report) {
  json candidates = json::array();
  for (const auto& c : report.candidates)
    candidates.push_back({{"epsilon", to_string(c.eps)}, {"holds", c.holds}, {"midpoint", c.midpoint}});
  json flags = json::array();
  for (const auto& f : report.open_interval_flags) flags.push_back(to_string(f));
  return {{"distance", report.distance_string()}, {"candidates", candidates}, {"open_interval_flags", flags}};
}

std::string erosion_to_tsv(const ErosionReport& report) {
  std::ostringstream os;
  os << "distance\t" << report.distance_string() << "\n";
  os << "epsilon\tkind\tholds\n";
  for (const auto& c : report.candidates)
    os << to_string(c.eps) << '\t' << (c.midpoint ? "midpoint" : "breakpoint") << '\t' << (c.holds ? "yes" : "no") << '\n';
  for (const auto& f : report.open_interval_flags) os << "# midpoint " << to_string(f) << " holds while its left breakpoint fails\n";
  return os.str();
}

std::string signed_label(const GroupElement& value) {
  std::string text = value.to_string();
  std::string out;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const bool sign = text[k] == '-' && (k == 0 || text[k - 1] == ' ');
    out += sign ? std::string("−") : std::string(1, text[k]);
  }
  return out;
}

std::string diagram_to_tsv(const DiagramGrid& y) {
  std::ostringstream os;
  os << "birth\tdeath\tlabel\n";
  for (const auto& [cell, value] : y.entries()) {
    const Interval iv = y.interval(cell.first, cell.second);
    os << to_string(iv.lo) << '\t' << (iv.hi ? to_string(*iv.hi) : "inf") << '\t' << value.to_string() << '\n';
  }
  return os.str();
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string diagram_to_svg(const DiagramGrid& y) {
  const double size = 480, margin = 60, inf_gap = 36;
  const double plot = size - 2 * margin;
  double lo = 0, hi = 1;
  if (!y.grid().empty()) {
    lo = y.grid().front().get_d();
    hi = y.grid().back().get_d();
    if (hi <= lo) hi = lo + 1;
  }
  const double pad = (hi - lo) * 0.08;
  lo -= pad;
  hi += pad;
  auto px = [&](double v) { return margin + (v - lo) / (hi - lo) * plot; };
  auto py = [&](double v) { return size - margin - (v - lo) / (hi - lo) * plot; };
  const double inf_y = margin - inf_gap / 2;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<title>" << xml_escape(y.tag().to_string()) << " persistence diagram</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << fixed(px(lo)) << "\" y1=\"" << fixed(py(lo)) << "\" x2=\"" << fixed(px(hi)) << "\" y2=\""
     << fixed(py(hi)) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fixed(px(lo)) << "\" y1=\"" << fixed(inf_y) << "\" x2=\"" << fixed(px(hi)) << "\" y2=\""
     << fixed(inf_y) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  os << "<text x=\"" << fixed(margin - 30) << "\" y=\"" << fixed(inf_y + 4) << "\">∞</text>\n";
  for (const auto& t : y.grid()) {
    os << "<line x1=\"" << fixed(px(t.get_d())) << "\" y1=\"" << fixed(size - margin + 4) << "\" x2=\""
       << fixed(px(t.get_d())) << "\" y2=\"" << fixed(size - margin + 10) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(px(t.get_d())) << "\" y=\"" << fixed(size - margin + 24)
       << "\" text-anchor=\"middle\">" << xml_escape(to_string(t)) << "</text>\n";
  }
  for (const auto& [cell, value] : y.entries()) {
    const Interval iv = y.interval(cell.first, cell.second);
    const double x = px(iv.lo.get_d());
    const double yy = iv.hi ? py(iv.hi->get_d()) : inf_y;
    const bool negative = !value.is_nonnegative();
    os << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(yy) << "\" r=\"4\" fill=\"" << (negative ? "white" : "black")
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(x + 7) << "\" y=\"" << fixed(yy - 6) << "\">" << xml_escape(signed_label(value))
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gpd
