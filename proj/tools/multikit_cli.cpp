#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multikit/density.hpp"
#include "multikit/errors.hpp"
#include "multikit/expr.hpp"
#include "multikit/io.hpp"
#include "multikit/mfunction.hpp"
#include "multikit/mset.hpp"
#include "multikit/signal_ops.hpp"
#include "multikit/similarity.hpp"
#include "multikit/transform.hpp"

namespace {

using namespace multikit;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot write " + out_path);
    out << content;
}

// start:end:count, end-exclusive
Grid1D parse_grid_flag(const std::string& text) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':'))
        throw std::invalid_argument("grid must be start:end:count");
    double start = std::stod(a), end = std::stod(b);
    long count = std::stol(c);
    if (count < 1 || end <= start)
        throw std::invalid_argument("grid must satisfy end > start, count >= 1");
    return make_grid(start, (end - start) / static_cast<double>(count),
                     static_cast<std::size_t>(count));
}

bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

Mset apply_mset_op(const std::string& op, const Mset& a, const Mset& b) {
    if (op == "union") return combine(MsetOp::Union, a, b);
    if (op == "intersection") return combine(MsetOp::Intersection, a, b);
    if (op == "sum") return combine(MsetOp::Sum, a, b);
    if (op == "diff") return combine(MsetOp::DiffTruncated, a, b);
    if (op == "diff-signed") return combine(MsetOp::DiffSigned, a, b);
    if (op == "product") return combine(MsetOp::Product, a, b);
    if (op == "quotient") return quotient(a, b);
    throw std::invalid_argument("unknown mset op: " + op);
}

MFunction apply_fn_op(const std::string& op, const MFunction& a, const MFunction& b) {
    if (op == "union") return pointwise(MsetOp::Union, a, b);
    if (op == "intersection") return pointwise(MsetOp::Intersection, a, b);
    if (op == "sum") return pointwise(MsetOp::Sum, a, b);
    if (op == "diff") return pointwise(MsetOp::DiffTruncated, a, b);
    if (op == "diff-signed") return pointwise(MsetOp::DiffSigned, a, b);
    if (op == "product") return pointwise(MsetOp::Product, a, b);
    if (op == "quotient") return pointwise_quotient(a, b);
    throw std::invalid_argument("unknown fn op: " + op);
}

std::string function_csv(const MFunction& f) {
    std::ostringstream out;
    save_function_csv(out, f);
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"multikit: signed-multiplicity multiset algebra and integrated signal processing"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    app.add_option("-o,--out", out_path, "Output file (default: standard output)");

    // mset <op> a.json [b.json]
    auto* mset_cmd = app.add_subcommand("mset", "Binary/unary mset operations on JSON msets");
    std::string mset_op;
    std::vector<std::string> mset_files;
    double mset_scale_factor = 1.0;
    mset_cmd->add_option("op", mset_op,
                         "union|intersection|sum|diff|diff-signed|product|quotient|complement|scale")
        ->required();
    mset_cmd->add_option("inputs", mset_files, "Mset JSON files")->expected(1, 2);
    mset_cmd->add_option("-c,--factor", mset_scale_factor, "Scale factor for the scale op");

    // fn <op> f.csv g.csv   /   fn sample --name ... --grid ...
    auto* fn_cmd = app.add_subcommand("fn", "Pointwise operations on sampled functions");
    std::string fn_op, fn_name, fn_grid;
    std::vector<std::string> fn_files;
    std::vector<double> fn_params;
    double fn_scale_factor = 1.0;
    fn_cmd->add_option("op", fn_op,
                       "union|intersection|sum|diff|diff-signed|product|quotient|complement|"
                       "scale|normalize|sample")
        ->required();
    fn_cmd->add_option("inputs", fn_files, "Function CSV files")->expected(0, 2);
    fn_cmd->add_option("--name", fn_name, "Builtin name for sample: gauss_g|laplace_h|sin|cos|const");
    fn_cmd->add_option("--grid", fn_grid, "Grid as start:end:count (end-exclusive)");
    fn_cmd->add_option("--param", fn_params, "Builtin parameters (may repeat)");
    fn_cmd->add_option("-c,--factor", fn_scale_factor, "Scale factor for the scale op");

    // sim --kind ... f g
    auto* sim_cmd = app.add_subcommand("sim", "Similarity functionals between two operands");
    std::string sim_kind;
    std::vector<std::string> sim_files;
    sim_cmd->add_option("--kind", sim_kind,
                        "jaccard|cosine-l2|cosine-sum|cosine-inter|common|sup")
        ->required();
    sim_cmd->add_option("inputs", sim_files, "Two mset JSON files or two function CSV files")
        ->expected(2);

    // match --mode ... signal.csv template.csv
    auto* match_cmd = app.add_subcommand("match", "Template matching lag series + peak report");
    std::string match_mode = "scorr";
    std::vector<std::string> match_files;
    bool match_benchmark = false;
    match_cmd->add_option("--mode", match_mode, "mcorr|scorr|xcorr|mconv");
    match_cmd->add_option("inputs", match_files, "signal.csv template.csv")->expected(0, 2);
    match_cmd->add_flag("--benchmark", match_benchmark,
                        "Use the built-in synthetic benchmark instead of input files");

    // transform --basis walsh --k K f.csv
    auto* transform_cmd = app.add_subcommand("transform", "Greedy basis decomposition");
    std::string transform_basis = "walsh";
    unsigned transform_k = 0;
    std::string transform_input;
    bool literal_update = false;
    transform_cmd->add_option("--basis", transform_basis, "walsh");
    transform_cmd->add_option("--k", transform_k, "Walsh order (grid must have 2^k samples)")
        ->required();
    transform_cmd->add_option("input", transform_input, "Function CSV")->required();
    transform_cmd->add_flag("--literal-update", literal_update,
                            "Subtract the unscaled basis function at each step");

    // cluster points.csv [--bandwidth B]
    auto* cluster_cmd = app.add_subcommand("cluster", "KDE cluster Jaccard matrix");
    std::string cluster_input;
    double cluster_bandwidth = 0.0;
    std::size_t cluster_cells = 256;
    cluster_cmd->add_option("input", cluster_input, "Labeled points CSV (x,y,label)")->required();
    cluster_cmd->add_option("--bandwidth", cluster_bandwidth,
                            "Kernel bandwidth (default: per-category Scott-style rule)");
    cluster_cmd->add_option("--cells", cluster_cells, "Grid cells per axis");

    // expr "<text>" --bind name=file
    auto* expr_cmd = app.add_subcommand("expr", "Evaluate a hybrid set/arithmetic expression");
    std::string expr_text;
    std::vector<std::string> expr_binds;
    expr_cmd->add_option("text", expr_text, "Expression, e.g. \"(g & h) + g\"")->required();
    expr_cmd->add_option("--bind", expr_binds, "name=file.csv or name=file.json (may repeat)");

    CLI11_PARSE(app, argc, argv);

    if (mset_cmd->parsed()) {
        if (mset_op == "complement" || mset_op == "scale") {
            if (mset_files.size() != 1)
                throw std::invalid_argument(mset_op + " takes one mset");
            Mset a = mset_from_json(read_file(mset_files[0]));
            Mset r = mset_op == "complement" ? complement(a) : scale(a, mset_scale_factor);
            write_output(out_path, mset_to_json(r) + "\n");
        } else {
            if (mset_files.size() != 2)
                throw std::invalid_argument(mset_op + " takes two msets");
            Mset a = mset_from_json(read_file(mset_files[0]));
            Mset b = mset_from_json(read_file(mset_files[1]));
            write_output(out_path, mset_to_json(apply_mset_op(mset_op, a, b)) + "\n");
        }
    } else if (fn_cmd->parsed()) {
        if (fn_op == "sample") {
            if (fn_name.empty() || fn_grid.empty())
                throw std::invalid_argument("fn sample needs --name and --grid");
            write_output(out_path,
                         function_csv(sample_builtin(fn_name, fn_params, parse_grid_flag(fn_grid))));
        } else if (fn_op == "complement" || fn_op == "scale" || fn_op == "normalize") {
            if (fn_files.size() != 1)
                throw std::invalid_argument(fn_op + " takes one function");
            MFunction f = load_function_csv_file(fn_files[0]);
            MFunction r = fn_op == "complement" ? complement(f)
                          : fn_op == "scale"    ? scale(f, fn_scale_factor)
                                                : normalize_area(f);
            write_output(out_path, function_csv(r));
        } else {
            if (fn_files.size() != 2)
                throw std::invalid_argument(fn_op + " takes two functions");
            MFunction f = load_function_csv_file(fn_files[0]);
            MFunction g = load_function_csv_file(fn_files[1]);
            write_output(out_path, function_csv(apply_fn_op(fn_op, f, g)));
        }
    } else if (sim_cmd->parsed()) {
        bool as_mset = is_json_path(sim_files[0]);
        SimilarityReport report;
        std::vector<std::string> notes;
        auto compute = [&](auto&& a, auto&& b) {
            if (sim_kind == "jaccard") {
                report = jaccard(a, b);
                notes.push_back(
                    "denominator is the sum of elementwise maxima (union area); summing "
                    "the raw multiplicities instead gives e.g. 4/11 rather than 4/7 on "
                    "the {a:1,b:2,c:3} vs {a:1,b:1,c:2,d:1} pair");
            } else if (sim_kind == "cosine-l2") {
                report = cosine(a, b, CosineVariant::L2);
            } else if (sim_kind == "cosine-sum") {
                report = cosine(a, b, CosineVariant::SumNormalized);
            } else if (sim_kind == "cosine-inter") {
                report = cosine(a, b, CosineVariant::Intersection);
            } else if (sim_kind == "common") {
                report.kind = SimilarityKind::CommonProduct;
                report.value = report.numerator = common_product(a, b);
                report.denominator = 1.0;
            } else if (sim_kind == "sup") {
                report.kind = SimilarityKind::SupProduct;
                report.value = report.numerator = sup_product(a, b);
                report.denominator = 1.0;
            } else {
                throw std::invalid_argument("unknown similarity kind: " + sim_kind);
            }
        };
        if (as_mset)
            compute(mset_from_json(read_file(sim_files[0])), mset_from_json(read_file(sim_files[1])));
        else
            compute(load_function_csv_file(sim_files[0]), load_function_csv_file(sim_files[1]));
        write_output(out_path, similarity_report_to_json(report, notes) + "\n");
    } else if (match_cmd->parsed()) {
        MFunction signal, tmpl;
        if (match_benchmark) {
            Benchmark bench = make_benchmark();
            signal = bench.signal;
            tmpl = bench.tmpl;
        } else {
            if (match_files.size() != 2)
                throw std::invalid_argument("match needs signal.csv and template.csv");
            signal = load_function_csv_file(match_files[0]);
            tmpl = load_function_csv_file(match_files[1]);
        }
        LagSeries series;
        if (match_mode == "mcorr") series = mcorrelate(signal, tmpl);
        else if (match_mode == "scorr") series = scorrelate(signal, tmpl);
        else if (match_mode == "xcorr") series = cross_correlate(signal, tmpl);
        else if (match_mode == "mconv") series = mconvolve(signal, tmpl);
        else throw std::invalid_argument("unknown match mode: " + match_mode);
        std::ostringstream out;
        save_lag_series_csv(out, series);
        out << peak_report_to_json(peak_report(series)) << "\n";
        write_output(out_path, out.str());
    } else if (transform_cmd->parsed()) {
        if (transform_basis != "walsh")
            throw std::invalid_argument("unknown basis: " + transform_basis);
        MFunction f = load_function_csv_file(transform_input);
        Basis basis = walsh_basis(transform_k, f.grid());
        TransformResult result = greedy_decompose(
            f, basis, literal_update ? ResidualUpdate::Literal : ResidualUpdate::CoefficientScaled);
        write_output(out_path, transform_result_to_json(result, basis.labels) + "\n");
    } else if (cluster_cmd->parsed()) {
        LabeledPoints all = load_labeled_points_csv_file(cluster_input);
        std::vector<std::string> labels;
        std::vector<LabeledPoints> groups;
        for (const auto& p : all) {
            auto it = std::find(labels.begin(), labels.end(), p.label);
            if (it == labels.end()) {
                labels.push_back(p.label);
                groups.emplace_back();
                it = labels.end() - 1;
            }
            groups[static_cast<std::size_t>(it - labels.begin())].push_back(p);
        }
        std::vector<double> bandwidths;
        for (const auto& g : groups)
            bandwidths.push_back(cluster_bandwidth > 0.0 ? cluster_bandwidth
                                                         : default_bandwidth(g));
        Grid2D grid = default_grid(all, *std::max_element(bandwidths.begin(), bandwidths.end()),
                                   cluster_cells);
        std::vector<KdeField> fields;
        for (std::size_t i = 0; i < groups.size(); ++i)
            fields.push_back(kde2d(groups[i], grid, bandwidths[i]));
        auto matrix = cluster_jaccard_matrix(fields);
        double multiway = fields.size() >= 3 ? cluster_jaccard_multi(fields) : 1.0;
        write_output(out_path, cluster_matrix_to_json(labels, matrix, multiway) + "\n");
    } else if (expr_cmd->parsed()) {
        Environment env;
        bool any_mset = false;
        for (const auto& bind : expr_binds) {
            auto eq = bind.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--bind expects name=file");
            std::string name = bind.substr(0, eq);
            std::string file = bind.substr(eq + 1);
            if (is_json_path(file)) {
                env.bind(name, mset_from_json(read_file(file)));
                any_mset = true;
            } else {
                env.bind(name, load_function_csv_file(file));
            }
        }
        Value result = eval(*parse(expr_text), env);
        if (any_mset)
            write_output(out_path, mset_to_json(std::get<Mset>(result)) + "\n");
        else
            write_output(out_path, function_csv(std::get<MFunction>(result)));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const multikit::AlignmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
