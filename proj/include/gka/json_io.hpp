#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gka/graded_module.hpp"
#include "gka/windowed_map.hpp"

namespace gka::json_io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& at(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

template <typename T>
T get(const Json& j, const std::string& key, const std::string& path) {
  const auto& v = at(j, key, path);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(path + "." + key + ": wrong type");
  }
}

inline std::pair<Degree, Degree> window_pair(const Json& j, const std::string& path) {
  const auto w = get<std::vector<Degree>>(j, "window", path);
  if (w.size() != 2) throw SchemaError(path + ".window: expected [lo, hi]");
  return {w[0], w[1]};
}

}  // namespace detail

// Groups and windows.

inline Json to_json(const GradedGroup& g) {
  if (g.is_cyclic()) return Json{{"kind", "Zn"}, {"n", g.order()}};
  return Json{{"kind", "Z"}};
}

inline GradedGroup group_from_json(const Json& j, const std::string& path = "group") {
  const auto kind = detail::get<std::string>(j, "kind", path);
  if (kind == "Z") return GradedGroup::integers();
  if (kind == "Zn") return GradedGroup::cyclic(detail::get<Degree>(j, "n", path));
  throw SchemaError(path + ".kind: expected \"Z\" or \"Zn\", got \"" + kind + "\"");
}

// DegreeSet.

inline Json to_json(const DegreeSet& s) {
  Json j;
  j["group"] = to_json(s.group());
  switch (s.form()) {
    case DegreeSet::Form::Full:
      j["form"] = "full";
      break;
    case DegreeSet::Form::Periodic:
      j["form"] = "periodic";
      j["n"] = s.period();
      j["residues"] = s.residues();
      break;
    case DegreeSet::Form::Windowed:
      j["form"] = "windowed";
      j["elements"] = s.elements();
      j["window"] = {s.window_lo(), s.window_hi()};
      break;
  }
  return j;
}

inline DegreeSet degree_set_from_json(const Json& j, const std::string& path = "$") {
  const auto group = j.contains("group") ? group_from_json(j["group"], path + ".group") : GradedGroup::integers();
  const auto form = detail::get<std::string>(j, "form", path);
  if (form == "full") return DegreeSet::full(group);
  if (form == "periodic")
    return DegreeSet::periodic(detail::get<Degree>(j, "n", path), detail::get<std::vector<Degree>>(j, "residues", path),
                               group);
  if (form == "windowed") {
    if (group.is_cyclic()) throw SchemaError(path + ": windowed sets live in Z");
    const auto [lo, hi] = detail::window_pair(j, path);
    return DegreeSet::windowed(detail::get<std::vector<Degree>>(j, "elements", path), lo, hi);
  }
  throw SchemaError(path + ".form: expected full, periodic or windowed, got \"" + form + "\"");
}

// WindowedMap.

inline Json to_json(const WindowedMap& m) {
  Json values = Json::array();
  for (Degree k = m.lo(); k <= m.hi(); ++k) values.push_back({k, m(k)});
  return Json{{"window", {m.lo(), m.hi()}}, {"values", values}};
}

inline WindowedMap windowed_map_from_json(const Json& j, const std::string& path = "$") {
  const auto [lo, hi] = detail::window_pair(j, path);
  if (lo > hi) throw SchemaError(path + ".window: empty");
  std::vector<std::optional<Degree>> vals(static_cast<std::size_t>(hi - lo + 1));
  const auto& values = detail::at(j, "values", path);
  if (!values.is_array()) throw SchemaError(path + ".values: expected an array");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& pair = values[i];
    const auto p = path + ".values[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw SchemaError(p + ": expected [k, value]");
    const auto k = pair[0].get<Degree>();
    if (k < lo || k > hi) throw WindowViolation(p + ": argument " + std::to_string(k) + " outside the window");
    vals[static_cast<std::size_t>(k - lo)] = pair[1].get<Degree>();
  }
  std::vector<Degree> out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i]) throw SchemaError(path + ".values: no value for " + std::to_string(lo + static_cast<Degree>(i)));
    out.push_back(*vals[i]);
  }
  return WindowedMap(lo, std::move(out));
}

// Verdicts.

inline Json to_json(const Verdict& v) {
  Json j{{"holds", v.holds}, {"window_certified", v.window_certified}};
  j["witness"] = v.witness ? Json(std::vector<Degree>(v.witness->begin(), v.witness->end())) : Json(nullptr);
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

// Fields and matrices.

inline Json field_json(const Rationals&) { return Json{{"field", "Q"}}; }
inline Json field_json(const PrimeField& f) { return Json{{"field", f.name()}, {"p", f.characteristic()}}; }

/// Parsed field name: nullopt for Q, p for GF(p).
inline std::optional<std::uint32_t> field_from_json(const Json& j, const std::string& path = "$") {
  const auto name = detail::get<std::string>(j, "field", path);
  if (name == "Q") return std::nullopt;
  if (name.rfind("GF", 0) == 0) {
    if (j.contains("p")) return detail::get<std::uint32_t>(j, "p", path);
    if (name.size() > 4 && name[2] == '(' && name.back() == ')') return static_cast<std::uint32_t>(std::stoul(name.substr(3)));
    return 101;
  }
  throw SchemaError(path + ".field: expected \"Q\" or \"GF(p)\", got \"" + name + "\"");
}

template <ScalarField F>
Json vector_json(const F& f, const Vector<F>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(f.to_string(x));
  return out;
}

template <ScalarField F>
Json to_json(const Matrix<F>& m) {
  Json j = field_json(m.field());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(vector_json(m.field(), m.row_vector(i)));
  j["entries"] = entries;
  return j;
}

template <ScalarField F>
Matrix<F> matrix_from_json(const F& f, const Json& j, const std::string& path = "$") {
  const auto rows = detail::get<std::size_t>(j, "rows", path);
  const auto cols = detail::get<std::size_t>(j, "cols", path);
  const auto& entries = detail::at(j, "entries", path);
  if (!entries.is_array() || entries.size() != rows) throw SchemaError(path + ".entries: expected " + std::to_string(rows) + " rows");
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = entries[i];
    const auto p = path + ".entries[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) throw SchemaError(p + ": expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (row[k].is_string()) m(i, k) = f.parse(row[k].get<std::string>());
      else if (row[k].is_number_integer()) m(i, k) = f.from_int(row[k].get<std::int64_t>());
      else throw SchemaError(p + "[" + std::to_string(k) + "]: expected a number or \"num/den\" string");
    }
  }
  return m;
}

// Algebras and modules.

inline Json window_json(const DegreeWindow& w) {
  return Json{{"group", to_json(w.group())}, {"window", {w.lo(), w.hi()}}};
}

inline DegreeWindow window_from_json(const Json& j, const std::string& path) {
  const auto group = j.contains("group") ? group_from_json(j["group"], path + ".group") : GradedGroup::integers();
  if (group.is_cyclic()) return DegreeWindow::cyclic(group.order());
  const auto [lo, hi] = detail::window_pair(j, path);
  return DegreeWindow::integers(lo, hi);
}

inline Json component_json(Degree d, const LabeledSpace& c, bool with_left) {
  Json j{{"degree", d}, {"dim", c.dim()}};
  if (with_left) j["left_tags"] = c.left_tags;
  j["right_tags"] = c.right_tags;
  return j;
}

inline std::vector<LabeledSpace> components_from_json(const Json& j, const DegreeWindow& w, int k, bool with_left,
                                                      const std::string& path) {
  std::vector<LabeledSpace> comps(w.size());
  for (auto& c : comps) c.idempotents = k;
  const auto& list = detail::at(j, "components", path);
  if (!list.is_array()) throw SchemaError(path + ".components: expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto p = path + ".components[" + std::to_string(i) + "]";
    const auto d = detail::get<Degree>(list[i], "degree", p);
    if (!w.contains(d)) throw WindowViolation(p + ": degree " + std::to_string(d) + " outside window " + w.to_string());
    const auto dim = detail::get<std::size_t>(list[i], "dim", p);
    auto& c = comps[w.index(d)];
    c.right_tags = list[i].contains("right_tags") ? detail::get<std::vector<int>>(list[i], "right_tags", p)
                                                  : std::vector<int>(dim, 0);
    if (with_left)
      c.left_tags = list[i].contains("left_tags") ? detail::get<std::vector<int>>(list[i], "left_tags", p)
                                                  : std::vector<int>(dim, 0);
    if (c.right_tags.size() != dim || (with_left && c.left_tags.size() != dim))
      throw SchemaError(p + ": tag lists must have length dim = " + std::to_string(dim));
  }
  return comps;
}

template <ScalarField F>
Json to_json(const GradedAlgebra<F>& a) {
  Json j{{"type", "algebra"}};
  j.update(field_json(a.field()));
  j.update(window_json(a.window()));
  j["idempotents"] = a.idempotents();
  Json comps = Json::array();
  for (auto d : a.window().degrees()) comps.push_back(component_json(d, a.component(d), true));
  j["components"] = comps;
  Json mult = Json::array();
  for (auto g : a.window().degrees())
    for (auto h : a.window().degrees())
      if (a.has_product(g, h) && !a.mult(g, h).is_zero())
        mult.push_back(Json{{"g", g}, {"h", h}, {"matrix", to_json(a.mult(g, h))}});
  j["mult"] = mult;
  return j;
}

template <ScalarField F>
GradedAlgebra<F> algebra_from_json(const F& f, const Json& j, const std::string& path = "$") {
  const auto w = window_from_json(j, path);
  const int k = j.contains("idempotents") ? detail::get<int>(j, "idempotents", path) : 1;
  GradedAlgebra<F> a(f, w, components_from_json(j, w, k, true, path));
  for (auto g : w.degrees())
    for (auto h : w.degrees())
      if (a.has_product(g, h)) a.set_mult(g, h, Matrix<F>(f, a.mult(g, h).rows(), a.mult(g, h).cols()));
  const auto& mult = detail::at(j, "mult", path);
  if (!mult.is_array()) throw SchemaError(path + ".mult: expected an array");
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const auto p = path + ".mult[" + std::to_string(i) + "]";
    const auto g = detail::get<Degree>(mult[i], "g", p), h = detail::get<Degree>(mult[i], "h", p);
    if (!a.has_product(g, h)) throw WindowViolation(p + ": product (" + std::to_string(g) + "," + std::to_string(h) + ") not in window");
    a.set_mult(g, h, matrix_from_json(f, detail::at(mult[i], "matrix", p), p + ".matrix"));
  }
  return a;
}

template <ScalarField F>
Json to_json(const GradedModule<F>& m) {
  Json j{{"type", "module"}};
  j.update(field_json(m.field()));
  j.update(window_json(m.window()));
  Json comps = Json::array();
  for (auto d : m.window().degrees()) comps.push_back(component_json(d, m.component(d), false));
  j["components"] = comps;
  Json action = Json::array();
  for_each_action(m, [&](Degree s, Degree u) {
    if (!m.action(s, u).is_zero()) action.push_back(Json{{"g", s}, {"h", u}, {"matrix", to_json(m.action(s, u))}});
  });
  j["action"] = action;
  j["algebra"] = to_json(m.algebra());
  return j;
}

template <ScalarField F>
GradedModule<F> module_from_json(const F& f, const Json& j, const std::string& path = "$") {
  auto a = share(algebra_from_json(f, detail::at(j, "algebra", path), path + ".algebra"));
  const auto w = window_from_json(j, path);
  GradedModule<F> m(a, w, components_from_json(j, w, a->idempotents(), false, path));
  for_each_action(m, [&](Degree s, Degree u) {
    m.set_action(s, u, Matrix<F>(f, m.action(s, u).rows(), m.action(s, u).cols()));
  });
  const auto& action = detail::at(j, "action", path);
  if (!action.is_array()) throw SchemaError(path + ".action: expected an array");
  for (std::size_t i = 0; i < action.size(); ++i) {
    const auto p = path + ".action[" + std::to_string(i) + "]";
    const auto s = detail::get<Degree>(action[i], "g", p), u = detail::get<Degree>(action[i], "h", p);
    if (!m.has_action(s, u)) throw WindowViolation(p + ": action (" + std::to_string(s) + "," + std::to_string(u) + ") not in window");
    m.set_action(s, u, matrix_from_json(f, detail::at(action[i], "matrix", p), p + ".matrix"));
  }
  return m;
}

}  // namespace gka::json_io
