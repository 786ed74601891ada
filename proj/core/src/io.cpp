#include "multicomm/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace multicomm {

using json = nlohmann::json;

namespace {

Rat rat_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      Rat r(s);
      r.canonicalize();
      return r;
    } catch (const std::exception&) {
      throw IoError(what + ": cannot parse rational '" + s + "'");
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_number_float()) {
    Rat r(j.get<double>());
    r.canonicalize();
    return r;
  }
  throw IoError(what + ": expected a number or rational string");
}

json rat_to_json(const Rat& r) {
  if (r.get_den() == 1) {
    // Keep plain integers as JSON numbers when they fit.
    if (r.get_num().fits_slong_p()) return json(r.get_num().get_si());
  }
  std::ostringstream os;
  os << r;
  return json(os.str());
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

std::complex<double> complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw IoError(what + ": expected a number or [re, im] pair");
}

bool looks_like_matrix(const json& j) {
  // A matrix is an array of rows; a row is an array whose entries are
  // themselves numbers or [re,im] pairs.  A vector of [re,im] pairs looks
  // like an array of 2-element numeric arrays, so disambiguate: treat as a
  // matrix iff some row has size != 2 or some row entry is an array.
  if (!j.is_array() || j.empty() || !j[0].is_array()) return false;
  for (const auto& row : j) {
    if (!row.is_array()) return false;
    if (row.size() != 2) return true;
    for (const auto& e : row)
      if (e.is_array()) return true;
  }
  // Ambiguous (e.g. 2x2 real matrix vs length-2 complex vector): a square
  // count of rows equal to row size means we cannot tell; prefer matrix
  // when every entry is a plain number.
  for (const auto& row : j)
    for (const auto& e : row)
      if (!e.is_number()) return false;
  return j.size() == j[0].size();
}

ComplexMatrix state_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw IoError(what + ": expected an array");
  if (looks_like_matrix(j)) {
    const std::size_t n = j.size();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!j[r].is_array() || j[r].size() != n)
        throw IoError(what + ": ragged or non-square matrix");
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) = complex_from_json(j[r][c], what);
    }
    return m;
  }
  // Vector: outer product into a rank-one density matrix.
  const std::size_t n = j.size();
  std::vector<std::complex<double>> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = complex_from_json(j[i], what);
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw IoError(what + ": expected a matrix (array of rows)");
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw IoError(what + ": ragged or non-square matrix");
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = complex_from_json(j[r][c], what);
  }
  return m;
}

}  // namespace

Functional read_inequality_json(const std::string& path) {
  const json j = load_file(path);
  Functional f;
  if (!j.contains("scenario")) throw IoError(path + ": missing 'scenario'");
  const json& sc = j["scenario"];
  f.scenario.nx = sc.value("nx", 0);
  f.scenario.ny = sc.value("ny", 0);
  f.scenario.nz = sc.value("nz", 0);
  if (j.contains("constraint")) {
    const json& cn = j["constraint"];
    const std::string type = cn.value("type", "dimension");
    if (type == "dimension") {
      f.scenario.constraint = ConstraintType::Dimension;
      if (cn.contains("d")) f.scenario.d = cn["d"].get<int>();
    } else if (type == "distinguishability") {
      f.scenario.constraint = ConstraintType::Distinguishability;
      if (cn.contains("D1")) f.scenario.D1 = rat_from_json(cn["D1"], "D1");
      if (cn.contains("D2")) f.scenario.D2 = rat_from_json(cn["D2"], "D2");
    } else {
      throw IoError(path + ": unknown constraint type '" + type + "'");
    }
  }
  f.coeffs.assign(f.scenario.behavior_size(), Rat(0));
  if (!j.contains("terms") || !j["terms"].is_array())
    throw IoError(path + ": missing 'terms' array");
  for (const auto& t : j["terms"]) {
    const int x = t.value("x", 0), y = t.value("y", 0), z = t.value("z", 0);
    if (x < 1 || x > f.scenario.nx || y < 1 || y > f.scenario.ny || z < 1 ||
        z > f.scenario.nz)
      throw IoError(path + ": term index out of range");
    if (!t.contains("c")) throw IoError(path + ": term missing coefficient");
    f.coeffs[f.scenario.index(x, y, z)] += rat_from_json(t["c"], "term");
  }
  if (j.contains("rhs")) {
    const json& r = j["rhs"];
    if (r.contains("const")) f.rhs.constant = rat_from_json(r["const"], "rhs");
    if (r.contains("d1")) f.rhs.coefD1 = rat_from_json(r["d1"], "rhs");
    if (r.contains("d2")) f.rhs.coefD2 = rat_from_json(r["d2"], "rhs");
  }
  f.name = j.value("name", "");
  f.validate();
  return f;
}

void write_inequality_json(std::ostream& os, const Functional& f) {
  json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["scenario"] = {{"nx", f.scenario.nx},
                   {"ny", f.scenario.ny},
                   {"nz", f.scenario.nz}};
  if (f.scenario.constraint == ConstraintType::Dimension) {
    j["constraint"] = {{"type", "dimension"}, {"d", f.scenario.d}};
  } else {
    j["constraint"] = {{"type", "distinguishability"},
                       {"D1", rat_to_json(f.scenario.D1)},
                       {"D2", rat_to_json(f.scenario.D2)}};
  }
  j["terms"] = json::array();
  for (int x = 1; x <= f.scenario.nx; ++x)
    for (int y = 1; y <= f.scenario.ny; ++y)
      for (int z = 1; z <= f.scenario.nz; ++z) {
        const Rat& c = f.coeffs[f.scenario.index(x, y, z)];
        if (c == 0) continue;
        j["terms"].push_back(
            {{"x", x}, {"y", y}, {"z", z}, {"c", rat_to_json(c)}});
      }
  j["rhs"] = {{"const", rat_to_json(f.rhs.constant)}};
  if (f.rhs.coefD1 != 0) j["rhs"]["d1"] = rat_to_json(f.rhs.coefD1);
  if (f.rhs.coefD2 != 0) j["rhs"]["d2"] = rat_to_json(f.rhs.coefD2);
  os << j.dump(2) << "\n";
}

QuantumStrategy read_strategy_json(const std::string& path) {
  const json j = load_file(path);
  QuantumStrategy s;
  for (const char* key : {"alice_states", "bob_states", "povm"})
    if (!j.contains(key) || !j[key].is_array())
      throw IoError(path + ": missing '" + std::string(key) + "' array");
  for (const auto& st : j["alice_states"])
    s.alice_states.push_back(state_from_json(st, path + ": alice state"));
  for (const auto& st : j["bob_states"])
    s.bob_states.push_back(state_from_json(st, path + ": bob state"));
  for (const auto& m : j["povm"])
    s.povm.push_back(matrix_from_json(m, path + ": povm element"));
  return s;
}

void write_csv_header(std::ostream& os) {
  os << "ineq,d,D1,D2,method,value,classical,paper_value,seed,wall_ms\n";
}

void write_csv_row(std::ostream& os, const ResultRecord& r) {
  os << r.ineq << ',' << r.d << ',' << r.D1 << ',' << r.D2 << ',' << r.method
     << ',' << r.value << ',' << r.classical << ',' << r.paper_value << ','
     << r.seed << ',' << r.wall_ms << "\n";
}

void write_json_records(std::ostream& os, const std::vector<ResultRecord>& rs) {
  json arr = json::array();
  for (const auto& r : rs) {
    json o;
    o["ineq"] = r.ineq;
    if (!r.d.empty()) o["d"] = r.d;
    if (!r.D1.empty()) o["D1"] = r.D1;
    if (!r.D2.empty()) o["D2"] = r.D2;
    o["method"] = r.method;
    o["value"] = r.value;
    if (!r.classical.empty()) o["classical"] = r.classical;
    if (!r.paper_value.empty()) o["paper_value"] = r.paper_value;
    if (!r.seed.empty()) o["seed"] = r.seed;
    if (!r.wall_ms.empty()) o["wall_ms"] = r.wall_ms;
    arr.push_back(o);
  }
  os << arr.dump(2) << "\n";
}

}  // namespace multicomm
