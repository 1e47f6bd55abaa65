#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "multikit/density.hpp"
#include "multikit/mfunction.hpp"
#include "multikit/mset.hpp"
#include "multikit/signal_ops.hpp"
#include "multikit/similarity.hpp"
#include "multikit/transform.hpp"

namespace multikit {

// Mset JSON: {"entries": {"<element>": <number>, ...}}, keys sorted,
// numbers in shortest round-trip form.
std::string mset_to_json(const Mset& a);
Mset mset_from_json(const std::string& text);

std::string similarity_report_to_json(const SimilarityReport& report,
                                      const std::vector<std::string>& notes = {});

std::string transform_result_to_json(const TransformResult& result,
                                     const std::vector<std::string>& labels);

std::string peak_report_to_json(const PeakReport& report);

std::string cluster_matrix_to_json(const std::vector<std::string>& labels,
                                   const std::vector<std::vector<double>>& jaccard,
                                   double multiway);

// Sampled-function CSV: header "x,value"; abscissae must be uniform within
// relative tolerance 1e-9 of the step. The loader rebuilds the grid from the
// first two rows.
void save_function_csv(std::ostream& out, const MFunction& f);
MFunction load_function_csv(std::istream& in);
MFunction load_function_csv_file(const std::string& path);

// Field2D CSV: header "x,y,value", row-major in y then x.
void save_field_csv(std::ostream& out, const Field2D& f);

// LagSeries CSV: header "lag,value".
void save_lag_series_csv(std::ostream& out, const LagSeries& series);

// Labeled points CSV: header "x,y,label".
LabeledPoints load_labeled_points_csv(std::istream& in);
LabeledPoints load_labeled_points_csv_file(const std::string& path);

std::string format_number(double v); // 12 significant digits, CSV-facing

} // namespace multikit
