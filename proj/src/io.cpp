#include "pdclust/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pdc {

namespace {

const nlohmann::json& need(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw MalformedInput(std::string("missing field: ") + key);
    return *it;
}

double as_double(const nlohmann::json& v) {
    if (!v.is_number()) throw MalformedInput("expected a number");
    return v.get<double>();
}

std::vector<double> as_point(const nlohmann::json& v) {
    if (!v.is_array()) throw MalformedInput("expected a coordinate array");
    std::vector<double> p;
    for (const auto& x : v) p.push_back(as_double(x));
    return p;
}

int as_int(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer()) throw MalformedInput(std::string(what) + " must be an integer");
    return v.get<int>();
}

}  // namespace

nlohmann::json curve_to_json(const Curve& c) {
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t i = 0; i < c.size(); ++i) verts.push_back(std::vector<double>(c.vertex(i), c.vertex(i) + c.dim));
    return {{"dim", c.dim}, {"vertices", verts}};
}

Curve curve_from_json(const nlohmann::json& doc) {
    Curve c;
    const nlohmann::json* verts = &doc;
    if (doc.is_object()) {
        verts = &need(doc, "vertices");
        c.dim = as_int(need(doc, "dim"), "dim");
    } else {
        c.dim = 0;
    }
    if (!verts->is_array() || verts->empty()) throw MalformedInput("curve needs a nonempty vertex list");
    for (const auto& v : *verts) {
        std::vector<double> p = v.is_array() ? as_point(v) : std::vector<double>{as_double(v)};
        if (c.dim == 0) c.dim = static_cast<int>(p.size());
        if (static_cast<int>(p.size()) != c.dim || c.dim < 1) throw DimensionMismatch("curve vertex dimension mismatch");
        c.push(p.data());
    }
    return c;
}

MetricInstance load_instance(const nlohmann::json& doc) {
    if (!doc.is_object()) throw MalformedInput("instance must be a JSON object");
    std::string kind = need(doc, "kind").is_string() ? doc["kind"].get<std::string>() : "";
    MetricInstance inst;
    if (kind == "euclidean") {
        inst.kind = Kind::Euclidean;
        for (const auto& p : need(doc, "clients")) inst.client_points.push_back(as_point(p));
        for (const auto& p : need(doc, "facilities")) inst.facility_points.push_back(as_point(p));
        if (!inst.client_points.empty())
            inst.dim = static_cast<int>(inst.client_points[0].size());
        else if (!inst.facility_points.empty())
            inst.dim = static_cast<int>(inst.facility_points[0].size());
        if (doc.contains("dim")) inst.dim = as_int(doc["dim"], "dim");
    } else if (kind == "matrix") {
        inst.kind = Kind::Matrix;
        auto count = [&](const char* key) {
            const auto& v = need(doc, key);
            if (v.is_number_integer()) return v.get<int>();
            if (v.is_array()) return static_cast<int>(v.size());
            throw MalformedInput(std::string(key) + " must be a count or a list");
        };
        int n = count("clients"), m = count("facilities");
        if (n < 0 || m < 0) throw MalformedInput("negative side size");
        inst.client_points.assign(static_cast<std::size_t>(n), {});
        inst.facility_points.assign(static_cast<std::size_t>(m), {});
        const auto& mat = need(doc, "matrix");
        if (!mat.is_array() || static_cast<int>(mat.size()) != n + m) throw MalformedInput("matrix must have n+m rows");
        for (const auto& row : mat) {
            if (!row.is_array() || static_cast<int>(row.size()) != n + m) throw MalformedInput("matrix must have n+m columns");
            for (const auto& v : row) inst.matrix.push_back(as_double(v));
        }
    } else if (kind == "frechet") {
        inst.kind = Kind::Frechet;
        for (const auto& c : need(doc, "clients")) inst.client_curves.push_back(curve_from_json(c));
        for (const auto& c : need(doc, "facilities")) inst.facility_curves.push_back(curve_from_json(c));
        if (!inst.client_curves.empty())
            inst.dim = inst.client_curves[0].dim;
        else if (!inst.facility_curves.empty())
            inst.dim = inst.facility_curves[0].dim;
        for (const auto& c : inst.facility_curves) inst.ell_cap = std::max(inst.ell_cap, static_cast<int>(c.size()));
        if (doc.contains("ell_cap")) inst.ell_cap = as_int(doc["ell_cap"], "ell_cap");
    } else {
        throw MalformedInput("kind must be euclidean, matrix or frechet");
    }
    if (doc.contains("opening_costs") && !doc["opening_costs"].is_null()) {
        std::vector<double> oc;
        for (const auto& v : doc["opening_costs"]) oc.push_back(as_double(v));
        inst.opening_costs = oc;
    }
    if (doc.contains("k") && !doc["k"].is_null()) inst.k = as_int(doc["k"], "k");
    inst.ddim_hint_clients = as_int(need(doc, "ddim_hint_clients"), "ddim_hint_clients");
    inst.ddim_hint_facilities = as_int(need(doc, "ddim_hint_facilities"), "ddim_hint_facilities");
    inst.finalize();
    return inst;
}

nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
}

MetricInstance load_instance_file(const std::string& path) {
    try {
        return load_instance(parse_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid instance: ") + e.what());
    }
}

nlohmann::json instance_to_json(const MetricInstance& inst) {
    nlohmann::json j;
    switch (inst.kind) {
        case Kind::Euclidean:
            j["kind"] = "euclidean";
            j["clients"] = inst.client_points;
            j["facilities"] = inst.facility_points;
            break;
        case Kind::Matrix: {
            j["kind"] = "matrix";
            j["clients"] = inst.n();
            j["facilities"] = inst.m();
            nlohmann::json rows = nlohmann::json::array();
            for (int i = 0; i < inst.size(); ++i) {
                std::vector<double> row;
                for (int k = 0; k < inst.size(); ++k) row.push_back(inst.dist(i, k));
                rows.push_back(row);
            }
            j["matrix"] = rows;
            break;
        }
        case Kind::Frechet:
            j["kind"] = "frechet";
            j["clients"] = nlohmann::json::array();
            j["facilities"] = nlohmann::json::array();
            for (const auto& c : inst.client_curves) j["clients"].push_back(curve_to_json(c));
            for (const auto& c : inst.facility_curves) j["facilities"].push_back(curve_to_json(c));
            break;
    }
    if (inst.opening_costs) j["opening_costs"] = *inst.opening_costs;
    if (inst.k) j["k"] = *inst.k;
    j["ddim_hint_clients"] = inst.ddim_hint_clients;
    j["ddim_hint_facilities"] = inst.ddim_hint_facilities;
    return j;
}

nlohmann::json solution_to_json(const Solution& sol) {
    return {{"open_facilities", sol.open_facilities},
            {"assignment", sol.assignment},
            {"connection_cost", sol.connection_cost},
            {"opening_cost", sol.opening_cost},
            {"total_cost", sol.total_cost},
            {"params_echo", sol.params_echo},
            {"seed", sol.seed}};
}

Solution solution_from_json(const nlohmann::json& doc) {
    Solution s;
    try {
        s.open_facilities = need(doc, "open_facilities").get<std::vector<int>>();
        s.assignment = need(doc, "assignment").get<std::vector<int>>();
        s.connection_cost = as_double(need(doc, "connection_cost"));
        s.opening_cost = as_double(need(doc, "opening_cost"));
        s.total_cost = as_double(need(doc, "total_cost"));
        if (doc.contains("params_echo")) s.params_echo = doc["params_echo"];
        if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid solution: ") + e.what());
    }
    return s;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return "null";
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const nlohmann::json& j, int indent, std::string& out) {
    std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // object keys are kept sorted
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                dump_rec(it.value(), indent + 2, out);
            }
            out += "\n" + close + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool scalar = true;
            for (const auto& v : j) scalar = scalar && !v.is_structured();
            if (scalar) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_rec(j[i], indent + 2, out);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                dump_rec(j[i], indent + 2, out);
            }
            out += "\n" + close + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
    std::string out;
    dump_rec(j, 0, out);
    out += "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

std::vector<Series> read_series_csv(std::istream& in) {
    std::vector<Series> rows;
    std::string line;
    int lineno = 0;
    std::vector<std::size_t> blanks;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) {
            blanks.push_back(rows.size());
            continue;
        }
        if (!blanks.empty()) throw MalformedInput("blank line inside series file at line " + std::to_string(lineno - 1));
        Series s;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t a = cell.find_first_not_of(" \t"), b = cell.find_last_not_of(" \t");
            if (a == std::string::npos) throw MalformedInput("empty value at line " + std::to_string(lineno));
            std::string t = cell.substr(a, b - a + 1);
            char* end = nullptr;
            double v = std::strtod(t.c_str(), &end);
            if (end != t.c_str() + t.size() || !std::isfinite(v)) throw MalformedInput("malformed value '" + t + "' at line " + std::to_string(lineno));
            s.push_back(v);
        }
        if (!line.empty() && line.back() == ',') throw MalformedInput("trailing comma at line " + std::to_string(lineno));
        rows.push_back(std::move(s));
    }
    return rows;
}

std::vector<Series> read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    return read_series_csv(in);
}

std::string series_csv(const std::vector<Series>& rows) {
    std::string out;
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ",";
            out += format_double(r[i]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace pdc
