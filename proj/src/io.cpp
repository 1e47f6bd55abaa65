#include "multikit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace multikit {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string mset_to_json(const Mset& a) {
    json entries = json::object();
    for (const auto& [x, m] : a.entries())
        entries[x.label()] = m;
    json root;
    root["entries"] = entries;
    return root.dump();
}

Mset mset_from_json(const std::string& text) {
    json root = json::parse(text);
    if (!root.contains("entries") || !root["entries"].is_object())
        throw std::invalid_argument("mset JSON must have an \"entries\" object");
    Mset::Entries e;
    for (const auto& [key, value] : root["entries"].items()) {
        if (!value.is_number())
            throw std::invalid_argument("multiplicity must be a number");
        double m = value.get<double>();
        if (m != 0.0)
            e.emplace(Element(key), m);
    }
    return Mset(std::move(e));
}

std::string similarity_report_to_json(const SimilarityReport& report,
                                      const std::vector<std::string>& notes) {
    json root;
    root["kind"] = to_string(report.kind);
    root["value"] = report.value;
    root["numerator"] = report.numerator;
    root["denominator"] = report.denominator;
    root["flags"] = report.flags;
    if (!notes.empty())
        root["notes"] = notes;
    return root.dump();
}

std::string transform_result_to_json(const TransformResult& result,
                                     const std::vector<std::string>& labels) {
    json root;
    root["coefficients"] = result.coefficients;
    root["labels"] = labels;
    root["residual_norms"] = result.residual_norm_history;
    return root.dump();
}

std::string peak_report_to_json(const PeakReport& report) {
    json root;
    root["fwhm"] = report.fwhm;
    root["primary_lag"] = report.primary_lag;
    root["primary_value"] = report.primary_value;
    root["secondary_ratio"] = report.secondary_ratio;
    root["secondary_value"] = report.secondary_value;
    return root.dump();
}

std::string cluster_matrix_to_json(const std::vector<std::string>& labels,
                                   const std::vector<std::vector<double>>& jaccard,
                                   double multiway) {
    json root;
    root["jaccard"] = jaccard;
    root["labels"] = labels;
    root["multiway"] = multiway;
    return root.dump();
}

void save_function_csv(std::ostream& out, const MFunction& f) {
    out << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_number(f.grid().x(i)) << "," << format_number(f[i]) << "\n";
}

namespace {

std::vector<std::vector<std::string>> read_csv(std::istream& in,
                                               const std::string& expected_header) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty CSV input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != expected_header)
        throw std::invalid_argument("expected CSV header \"" + expected_header + "\"");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_double(const std::string& s) {
    std::size_t consumed = 0;
    double v = std::stod(s, &consumed);
    if (consumed != s.size())
        throw std::invalid_argument("malformed number: " + s);
    return v;
}

} // namespace

MFunction load_function_csv(std::istream& in) {
    auto rows = read_csv(in, "x,value");
    if (rows.size() < 1)
        throw std::invalid_argument("function CSV has no samples");
    std::vector<double> xs, vs;
    for (const auto& row : rows) {
        if (row.size() != 2)
            throw std::invalid_argument("function CSV rows need two fields");
        xs.push_back(parse_double(row[0]));
        vs.push_back(parse_double(row[1]));
    }
    double dx = rows.size() > 1 ? xs[1] - xs[0] : 1.0;
    if (rows.size() > 1 && !(dx > 0.0))
        throw std::invalid_argument("abscissae must be strictly increasing");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double step = xs[i] - xs[i - 1];
        if (std::abs(step - dx) > 1e-9 * std::abs(dx))
            throw std::invalid_argument("abscissae are not uniformly spaced");
    }
    Grid1D grid = make_grid(xs[0], dx, vs.size());
    return MFunction(grid, std::move(vs));
}

MFunction load_function_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    return load_function_csv(in);
}

void save_field_csv(std::ostream& out, const Field2D& f) {
    out << "x,y,value\n";
    for (std::size_t j = 0; j < f.grid().ny; ++j)
        for (std::size_t i = 0; i < f.grid().nx; ++i)
            out << format_number(f.grid().x(i)) << "," << format_number(f.grid().y(j)) << ","
                << format_number(f.at(i, j)) << "\n";
}

void save_lag_series_csv(std::ostream& out, const LagSeries& series) {
    out << "lag,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_number(series.lags[i]) << "," << format_number(series.values[i]) << "\n";
}

LabeledPoints load_labeled_points_csv(std::istream& in) {
    auto rows = read_csv(in, "x,y,label");
    LabeledPoints points;
    for (const auto& row : rows) {
        if (row.size() != 3)
            throw std::invalid_argument("points CSV rows need three fields");
        points.push_back({parse_double(row[0]), parse_double(row[1]), row[2]});
    }
    return points;
}

LabeledPoints load_labeled_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    return load_labeled_points_csv(in);
}

} // namespace multikit
