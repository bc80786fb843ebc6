#pragma once

// File formats shared by the CLI and its consumers.
//
// State JSON:   {"dim": n, "entries": [[re, im], ...] (row-major, n*n pairs),
//                "shape": {"j1": "1/2", "j2": "1"}}            (shape optional)
// Unitary JSON: {"n": n, "entries": [[re, im], ...]}          (row-major)
// Tomogram CSV: "m,phi,theta,probability"          single spin, Euler-angle frames
//               "m,frame_id,probability"           single spin, unitary frames
//               "m1,m2,frame_id,probability"       two spins; frames go to a sidecar JSON
// Half-integers are written "1/2", "-3/2", "2".

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spintomo/errors.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo::io {

using json = nlohmann::json;

/// Malformed file content (as opposed to a well-formed but invalid state).
class format_error : public invalid_argument {
 public:
  using invalid_argument::invalid_argument;
};

/// 17 significant digits: enough to round-trip any double.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline HalfInteger half_integer_from_json(const json& v) {
  if (v.is_number_integer()) return HalfInteger::integer(v.get<int>());
  if (v.is_string()) return HalfInteger::parse(v.get<std::string>());
  throw format_error("half-integers must be strings like \"3/2\" or integers");
}

inline json matrix_entries_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

inline ComplexMatrix matrix_entries_from_json(const json& entries, int n) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n) * n)
    throw format_error("'entries' must hold n*n = " + std::to_string(n * n) + " [re, im] pairs");
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const json& e = entries[static_cast<std::size_t>(r) * n + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw format_error("each entry must be a [re, im] pair of numbers");
      m(r, c) = complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

/// Raw, not yet validated, contents of a state file.
struct StateFile {
  ComplexMatrix matrix;
  std::optional<BipartiteShape> shape;
};

inline StateFile state_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
    throw format_error("state JSON needs 'dim' and 'entries'");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1)
    throw format_error("'dim' must be a positive integer");
  const int n = doc["dim"].get<int>();
  StateFile out{matrix_entries_from_json(doc["entries"], n), std::nullopt};
  if (doc.contains("shape")) {
    const json& s = doc["shape"];
    if (!s.is_object() || !s.contains("j1") || !s.contains("j2"))
      throw format_error("'shape' needs 'j1' and 'j2'");
    out.shape = BipartiteShape(half_integer_from_json(s["j1"]), half_integer_from_json(s["j2"]));
    if (out.shape->dim() != n)
      throw dimension_mismatch("shape " + out.shape->j1.to_string() + "," + out.shape->j2.to_string() +
                               " needs dimension " + std::to_string(out.shape->dim()) + ", 'dim' is " +
                               std::to_string(n));
  }
  return out;
}

inline json state_to_json(const ComplexMatrix& m, const std::optional<BipartiteShape>& shape = {}) {
  json doc;
  doc["dim"] = m.rows();
  doc["entries"] = matrix_entries_to_json(m);
  if (shape) doc["shape"] = {{"j1", shape->j1.to_string()}, {"j2", shape->j2.to_string()}};
  return doc;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw format_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline StateFile read_state_file(const std::string& path) { return state_from_json(read_json_file(path)); }

inline UnitaryFrame unitary_from_json(const json& doc, double tol = 1e-10) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("entries"))
    throw format_error("unitary JSON needs integer 'n' and 'entries'");
  const int n = doc["n"].get<int>();
  if (n < 1) throw format_error("'n' must be positive");
  return UnitaryFrame::from_matrix(matrix_entries_from_json(doc["entries"], n), tol);
}

inline json unitary_to_json(const UnitaryFrame& u) {
  return {{"n", u.n()}, {"entries", matrix_entries_to_json(u.matrix())}};
}

inline json angles_to_json(const EulerAngles& a) {
  return {{"phi", a.phi()}, {"theta", a.theta()}, {"psi", a.psi()}};
}

inline json frame_to_json(const SpinFrame& f) {
  if (const auto* a = std::get_if<EulerAngles>(&f)) return {{"type", "euler"}, {"angles", angles_to_json(*a)}};
  return {{"type", "unitary"}, {"unitary", unitary_to_json(std::get<UnitaryFrame>(f))}};
}

inline json frame_to_json(const JointFrame& f) {
  if (const auto* a = std::get_if<std::pair<EulerAngles, EulerAngles>>(&f))
    return {{"type", "euler_pair"}, {"angles1", angles_to_json(a->first)}, {"angles2", angles_to_json(a->second)}};
  return {{"type", "unitary"}, {"unitary", unitary_to_json(std::get<UnitaryFrame>(f))}};
}

inline bool all_euler(const std::vector<SpinTomogram>& ts) {
  for (const auto& t : ts)
    if (!std::holds_alternative<EulerAngles>(t.frame)) return false;
  return true;
}

/// Single-spin CSV. Euler frames give "m,phi,theta,probability"; otherwise
/// "m,frame_id,probability" with frame_id the position in `ts`.
inline void write_spin_csv(std::ostream& os, const std::vector<SpinTomogram>& ts) {
  const bool euler = all_euler(ts);
  os << (euler ? "m,phi,theta,probability\n" : "m,frame_id,probability\n");
  for (std::size_t f = 0; f < ts.size(); ++f) {
    const auto& t = ts[f];
    for (std::size_t k = 0; k < t.probabilities.size(); ++k) {
      os << projection_at(t.j, static_cast<int>(k)).to_string() << ',';
      if (euler) {
        const auto& a = std::get<EulerAngles>(t.frame);
        os << format_number(a.phi()) << ',' << format_number(a.theta());
      } else {
        os << f;
      }
      os << ',' << format_number(t.probabilities[k]) << '\n';
    }
  }
}

inline void write_joint_csv(std::ostream& os, const std::vector<JointTomogram>& ts) {
  os << "m1,m2,frame_id,probability\n";
  for (std::size_t f = 0; f < ts.size(); ++f) {
    const auto& t = ts[f];
    for (int a = 0; a < t.shape.n1(); ++a)
      for (int b = 0; b < t.shape.n2(); ++b)
        os << projection_at(t.shape.j1, a).to_string() << ',' << projection_at(t.shape.j2, b).to_string()
           << ',' << f << ',' << format_number(t.probabilities(a, b)) << '\n';
  }
}

template <typename Tomogram>
json frames_sidecar(const std::vector<Tomogram>& ts) {
  json frames = json::array();
  for (std::size_t f = 0; f < ts.size(); ++f) {
    json entry = frame_to_json(ts[f].frame);
    entry["frame_id"] = f;
    frames.push_back(std::move(entry));
  }
  return {{"frames", frames}};
}

inline json tomograms_to_json(const std::vector<SpinTomogram>& ts) {
  json list = json::array();
  for (const auto& t : ts)
    list.push_back({{"frame", frame_to_json(t.frame)}, {"probabilities", t.probabilities}});
  return {{"kind", "spin"}, {"j", ts.empty() ? std::string("0") : ts.front().j.to_string()}, {"tomograms", list}};
}

inline json tomograms_to_json(const std::vector<JointTomogram>& ts) {
  json list = json::array();
  for (const auto& t : ts) {
    json rows = json::array();
    for (int a = 0; a < t.shape.n1(); ++a) {
      json row = json::array();
      for (int b = 0; b < t.shape.n2(); ++b) row.push_back(t.probabilities(a, b));
      rows.push_back(row);
    }
    list.push_back({{"frame", frame_to_json(t.frame)}, {"probabilities", rows}});
  }
  json doc = {{"kind", "joint"}, {"tomograms", list}};
  if (!ts.empty()) doc["shape"] = {{"j1", ts.front().shape.j1.to_string()}, {"j2", ts.front().shape.j2.to_string()}};
  return doc;
}

struct CsvRow {
  std::vector<std::string> fields;
};

/// Minimal reader for the CSVs above: skips '#' comment lines, splits on ','.
inline std::vector<CsvRow> read_csv(std::istream& in, std::string* header = nullptr) {
  std::vector<CsvRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (first) {
      first = false;
      if (header) *header = line;
      continue;
    }
    CsvRow row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.fields.push_back(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace spintomo::io
