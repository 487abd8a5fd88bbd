#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdclust/curve.hpp"
#include "pdclust/metric.hpp"
#include "pdclust/profile.hpp"

namespace pdc {

MetricInstance load_instance(const nlohmann::json& doc);
MetricInstance load_instance_file(const std::string& path);
nlohmann::json instance_to_json(const MetricInstance& inst);

nlohmann::json solution_to_json(const Solution& sol);
Solution solution_from_json(const nlohmann::json& doc);

nlohmann::json curve_to_json(const Curve& c);
Curve curve_from_json(const nlohmann::json& doc);

// 17 significant digits, shortest form that round-trips when it is shorter
std::string format_double(double v);
// deterministic JSON text: sorted keys, two-space indent, floats via format_double
std::string dump_json(const nlohmann::json& j);
nlohmann::json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::vector<Series> read_series_csv(std::istream& in);
std::vector<Series> read_series_csv_file(const std::string& path);
std::string series_csv(const std::vector<Series>& rows);

}  // namespace pdc
