#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include <hcdtn/asymptotics.hpp>
#include <hcdtn/geometry.hpp>
#include <hcdtn/network.hpp>
#include <hcdtn/oracle.hpp>

namespace hcdtn::io {

using json = nlohmann::ordered_json;

/// {"L": number, "inclusions": [{"x", "y", "r"}, ...]}.  Rejects malformed
/// text, missing fields, NaN/Inf and non-positive radii with ParseError.
/// An empty inclusion list is accepted (reference medium).
Packing parse_packing(std::string_view text);
Packing read_packing_file(const std::string& path);

json packing_to_json(const Packing& packing);
std::string serialize_packing(const Packing& packing);

json breakdown_to_json(const EnergyBreakdown& breakdown);
json scale_report_to_json(const ScaleReport& report);
json network_to_json(const Network& network);
json matrix_to_json(const Eigen::MatrixXd& m);
json solution_to_json(const SpectralSolution& solution);

/// 17 significant digits, '.' decimal, independent of the locale.
std::string format_double(double v);

std::string csv_row(const std::vector<std::string>& cells);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace hcdtn::io
