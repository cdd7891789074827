#include "io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <hcdtn/errors.hpp>

namespace hcdtn::io {

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + ": field \"" + key + "\" is not a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": field \"" + key + "\" is not finite");
  return d;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

Packing parse_packing(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("packing must be a JSON object");
  Packing p;
  p.L = number_field(doc, "L", "packing");
  if (!(p.L > 0.0)) throw ParseError("packing: L must be positive");
  if (!doc.contains("inclusions") || !doc.at("inclusions").is_array())
    throw ParseError("packing: \"inclusions\" must be an array");
  int idx = 0;
  for (const auto& item : doc.at("inclusions")) {
    const std::string where = "inclusion " + std::to_string(idx++);
    Disk d;
    d.center.x = number_field(item, "x", where);
    d.center.y = number_field(item, "y", where);
    d.radius = number_field(item, "r", where);
    if (!(d.radius > 0.0)) throw ParseError(where + ": radius must be positive");
    p.inclusions.push_back(d);
  }
  return p;
}

Packing read_packing_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open packing file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_packing(buf.str());
}

json packing_to_json(const Packing& packing) {
  json j;
  j["L"] = packing.L;
  j["inclusions"] = json::array();
  for (const auto& d : packing.inclusions) j["inclusions"].push_back({{"x", d.center.x}, {"y", d.center.y}, {"r", d.radius}});
  return j;
}

std::string serialize_packing(const Packing& packing) { return packing_to_json(packing).dump(2) + "\n"; }

json breakdown_to_json(const EnergyBreakdown& b) {
  json j;
  j["E_net"] = b.E_net;
  j["E_ref"] = b.E_ref;
  j["R_res"] = b.R_res;
  j["total"] = b.total;
  j["quad_form"] = b.quad_form;
  j["per_mode"] = json::array();
  for (const auto& m : b.per_mode)
    j["per_mode"].push_back({{"k", m.k}, {"epsilon", m.epsilon}, {"eta", m.eta}, {"regime", m.regime}});
  j["excitation"] = vector_to_json(b.excitation);
  return j;
}

json scale_report_to_json(const ScaleReport& r) {
  json j;
  j["delta_min"] = r.delta_min;
  j["delta_max"] = r.delta_max;
  j["R_min"] = r.R_min;
  j["R_max"] = r.R_max;
  j["ratio_delta_R"] = r.ratio_delta_R;
  j["ratio_R_L"] = r.ratio_R_L;
  j["warnings"] = r.warnings;
  return j;
}

json network_to_json(const Network& net) {
  json j;
  j["nodes"] = json::array();
  for (const auto& p : net.interior_nodes) j["nodes"].push_back({p.x, p.y});
  j["boundary_nodes"] = json::array();
  for (const auto& p : net.boundary_nodes) j["boundary_nodes"].push_back({p.x, p.y});
  j["edges"] = json::array();
  for (const auto& e : net.gap_edges) j["edges"].push_back({{"i", e.i}, {"j", e.j}, {"sigma", e.sigma}});
  j["boundary_edges"] = json::array();
  for (const auto& e : net.boundary_edges)
    j["boundary_edges"].push_back({{"i", e.i}, {"sigma", e.sigma}, {"theta", e.theta}});
  return j;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

json solution_to_json(const SpectralSolution& s) {
  json j;
  j["L"] = s.L;
  j["energy"] = s.energy;
  j["boundary_residual"] = s.boundary_residual;
  j["potentials"] = vector_to_json(s.potentials);
  j["domain_cos"] = vector_to_json(s.domain_cos);
  j["domain_sin"] = vector_to_json(s.domain_sin);
  j["inclusion_cos"] = json::array();
  j["inclusion_sin"] = json::array();
  for (std::size_t i = 0; i < s.inclusion_cos.size(); ++i) {
    j["inclusion_cos"].push_back(vector_to_json(s.inclusion_cos[i]));
    j["inclusion_sin"].push_back(vector_to_json(s.inclusion_sin[i]));
  }
  j["warnings"] = s.warnings;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

}  // namespace hcdtn::io
