// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit on any
// failure. Usage: multikit_acceptance <cli-binary> <source-dir> [--write-golden]
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multikit/density.hpp"
#include "multikit/expr.hpp"
#include "multikit/io.hpp"
#include "multikit/mfunction.hpp"
#include "multikit/mset.hpp"
#include "multikit/signal_ops.hpp"
#include "multikit/similarity.hpp"
#include "multikit/transform.hpp"
#include "test_support.hpp"

using namespace multikit;
using multikit::test::random_mfunction;
using multikit::test::random_mset;

namespace {

std::string g_cli;
std::string g_srcdir;

Element el(const char* s) { return Element(std::string(s)); }

struct CliResult {
    int status = -1;
    std::string output;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::string cmd = "'" + g_cli + "'";
    for (const auto& a : args)
        cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
        r.output.append(buf, n);
    r.status = pclose(pipe);
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criterion 1 ----

bool worked_mset_examples() {
    Mset A = Mset::from_pairs({{el("a"), 2}, {el("b"), 3}, {el("d"), 1}});
    Mset D = Mset::from_pairs({{el("a"), 2}, {el("b"), 1}, {el("d"), 1}});
    return combine(MsetOp::Sum, A, D) ==
               Mset::from_pairs({{el("a"), 4}, {el("b"), 4}, {el("d"), 2}}) &&
           combine(MsetOp::DiffTruncated, A, D) == Mset::from_pairs({{el("b"), 2}}) &&
           combine(MsetOp::DiffTruncated, D, A).empty();
}

// ---- criterion 2 ----

bool jaccard_fidelity() {
    Mset a = Mset::from_pairs({{el("a"), 1}, {el("b"), 2}, {el("c"), 3}});
    Mset b = Mset::from_pairs({{el("a"), 1}, {el("b"), 1}, {el("c"), 2}, {el("d"), 1}});
    SimilarityReport r = jaccard(a, b);
    if (!(r.numerator == 4.0 && r.denominator == 7.0 && r.value == 4.0 / 7.0))
        return false;
    // the shipped report must mention the conflicting 4/11 reading
    CliResult cli = run_cli({"sim", "--kind", "jaccard",
                             g_srcdir + "/tests/golden/inputs/pair_a.json",
                             g_srcdir + "/tests/golden/inputs/pair_b.json"});
    if (cli.status != 0 || cli.output.find("4/11") == std::string::npos)
        return false;
    std::mt19937 rng(211);
    for (int t = 0; t < 1000; ++t) {
        Mset f = random_mset(rng, false);
        Mset g = random_mset(rng, false);
        double lhs = jaccard(f, g).value;
        Mset inter = combine(MsetOp::Intersection, f, g);
        Mset uni = combine(MsetOp::Union, f, g);
        double num = inter.cardinality(CardinalityMode::Signed);
        double den = uni.cardinality(CardinalityMode::Signed);
        double rhs = den == 0.0 ? 1.0 : num / den;
        if (std::abs(lhs - rhs) > 1e-12)
            return false;
    }
    return true;
}

// ---- criterion 3 ----

bool lattice_suite() {
    std::mt19937 rng(223);
    Grid1D grid = make_grid(-1.0, 0.0625, 32);
    for (int t = 0; t < 5000; ++t) {
        Mset a = random_mset(rng), b = random_mset(rng), c = random_mset(rng);
        bool ok = combine(MsetOp::Union, a, a) == a &&
                  combine(MsetOp::Intersection, a, a) == a &&
                  combine(MsetOp::Union, a, b) == combine(MsetOp::Union, b, a) &&
                  combine(MsetOp::Intersection, a, b) == combine(MsetOp::Intersection, b, a) &&
                  combine(MsetOp::Sum, a, b) == combine(MsetOp::Sum, b, a) &&
                  combine(MsetOp::Union, combine(MsetOp::Union, a, b), c) ==
                      combine(MsetOp::Union, a, combine(MsetOp::Union, b, c)) &&
                  combine(MsetOp::Intersection, combine(MsetOp::Intersection, a, b), c) ==
                      combine(MsetOp::Intersection, a, combine(MsetOp::Intersection, b, c)) &&
                  approx_equal(combine(MsetOp::Sum, combine(MsetOp::Sum, a, b), c),
                               combine(MsetOp::Sum, a, combine(MsetOp::Sum, b, c)), 1e-9) &&
                  combine(MsetOp::Intersection, a, combine(MsetOp::Union, b, c)) ==
                      combine(MsetOp::Union, combine(MsetOp::Intersection, a, b),
                              combine(MsetOp::Intersection, a, c)) &&
                  complement(combine(MsetOp::Intersection, a, b)) ==
                      combine(MsetOp::Union, complement(a), complement(b)) &&
                  complement(combine(MsetOp::Union, a, b)) ==
                      combine(MsetOp::Intersection, complement(a), complement(b)) &&
                  combine(MsetOp::Sum, a, complement(a)).empty();
        if (!ok)
            return false;
        Mset na = random_mset(rng, false), nb = random_mset(rng, false);
        Mset u = combine(MsetOp::Union, na, nb);
        Mset s = combine(MsetOp::Sum, na, nb);
        for (const auto& [x, m] : u.entries())
            if (m > s.multiplicity(x) + 1e-15)
                return false;
    }
    for (int t = 0; t < 5000; ++t) {
        MFunction a = random_mfunction(rng, grid);
        MFunction b = random_mfunction(rng, grid);
        bool ok = pointwise(MsetOp::Union, a, a) == a &&
                  pointwise(MsetOp::Intersection, a, a) == a &&
                  pointwise(MsetOp::Union, a, b) == pointwise(MsetOp::Union, b, a) &&
                  complement(pointwise(MsetOp::Intersection, a, b)) ==
                      pointwise(MsetOp::Union, complement(a), complement(b)) &&
                  complement(pointwise(MsetOp::Union, a, b)) ==
                      pointwise(MsetOp::Intersection, complement(a), complement(b));
        if (!ok)
            return false;
        MFunction omega = pointwise(MsetOp::Sum, a, complement(a));
        for (double v : omega.samples())
            if (v != 0.0)
                return false;
        MFunction na = random_mfunction(rng, grid, false);
        MFunction nb = random_mfunction(rng, grid, false);
        MFunction u = pointwise(MsetOp::Union, na, nb);
        MFunction s = pointwise(MsetOp::Sum, na, nb);
        for (std::size_t i = 0; i < grid.n; ++i)
            if (u[i] > s[i] + 1e-15)
                return false;
    }
    return true;
}

// ---- criterion 4 ----

// Tag oracle: element i with multiplicity m expands to tags {i#0..i#(m-1)},
// encoded as the low m bits of nibble i; crisp union/intersection of the tag
// sets are bitwise OR/AND.
bool tag_oracle_exhaustive() {
    constexpr int kElems = 5, kMax = 4, kCount = 3125; // 5^5 count vectors
    static const char* names[kElems] = {"e0", "e1", "e2", "e3", "e4"};
    std::vector<Mset> msets(kCount);
    std::vector<std::uint32_t> masks(kCount);
    std::vector<std::array<int, kElems>> counts(kCount);
    for (int idx = 0; idx < kCount; ++idx) {
        int rem = idx;
        Mset::Entries e;
        std::uint32_t mask = 0;
        for (int i = 0; i < kElems; ++i) {
            int m = rem % (kMax + 1);
            rem /= kMax + 1;
            counts[idx][i] = m;
            if (m != 0)
                e.emplace(el(names[i]), static_cast<double>(m));
            mask |= ((1u << m) - 1u) << (4 * i);
        }
        msets[idx] = Mset(std::move(e));
        masks[idx] = mask;
    }
    auto matches = [&](const Mset& got, std::uint32_t mask) {
        double total = 0.0;
        for (int i = 0; i < kElems; ++i) {
            int m = std::popcount((mask >> (4 * i)) & 0xfu);
            if (got.multiplicity(el(names[i])) != static_cast<double>(m))
                return false;
            total += m;
        }
        return got.cardinality(CardinalityMode::Signed) == total;
    };
    for (int i = 0; i < kCount; ++i)
        for (int j = i; j < kCount; ++j) {
            if (!matches(combine(MsetOp::Union, msets[i], msets[j]), masks[i] | masks[j]))
                return false;
            if (!matches(combine(MsetOp::Intersection, msets[i], msets[j]), masks[i] & masks[j]))
                return false;
        }
    return true;
}

// ---- criterion 5 ----

bool sinusoid_products() {
    Grid1D g = make_grid(0.0, 1.0 / 4096, 4096);
    MFunction s = sample_builtin("sin", {1.0}, g);
    MFunction c = sample_builtin("cos", {1.0}, g);
    return std::abs(common_product(s, c)) < 1e-3 &&
           std::abs(common_product(s, s) - 2.0 / M_PI) < 1e-4;
}

// ---- criterion 6 ----

bool walsh_orthogonality() {
    std::mt19937 rng(227);
    for (unsigned k = 1; k <= 4; ++k) {
        std::size_t n = std::size_t{1} << k;
        Grid1D grid = make_grid(0.0, 1.0 / static_cast<double>(n), n);
        Basis basis = walsh_basis(k, grid);
        auto gram = gram_matrix(basis, GramProduct::Common);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)) > 1e-12)
                    return false;
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            // random combination with total absolute coefficient weight <= 1
            // so greedy projections stay in the exact-recovery regime
            std::vector<double> c(n);
            double total = 0.0;
            for (auto& v : c) {
                v = unit(rng);
                total += std::abs(v);
            }
            for (auto& v : c)
                v /= std::max(total, 1.0);
            MFunction f = MFunction::constant(0.0, grid);
            for (std::size_t i = 0; i < n; ++i)
                f = pointwise(MsetOp::Sum, f, scale(basis.functions[i], c[i]));
            TransformResult r = greedy_decompose(f, basis);
            MFunction back = reconstruct(r, basis);
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(back[i] - f[i]) > 1e-9)
                    return false;
        }
    }
    return true;
}

// ---- criterion 7 ----

bool order_dependence() {
    Grid1D g = make_grid(0.0, 1.0 / 2048, 2048);
    MFunction s0 = sample_builtin("sin", {1.0}, g);
    MFunction s1 = sample_builtin("sin", {1.0, M_PI / 4}, g);
    MFunction target = pointwise(MsetOp::Sum, scale(s0, 0.4),
                                 sample_builtin("cos", {2.0}, g));
    TransformResult a = greedy_decompose(target, Basis{{s0, s1}, {"0", "1"}});
    TransformResult b = greedy_decompose(target, Basis{{s1, s0}, {"1", "0"}});
    return std::abs(a.coefficients[0] - b.coefficients[1]) > 1e-6 ||
           std::abs(a.coefficients[1] - b.coefficients[0]) > 1e-6;
}

// ---- criterion 8 ----

bool signal_suite() {
    std::mt19937 rng(229);
    for (int t = 0; t < 50; ++t) {
        std::uniform_int_distribution<std::size_t> size(2, 40);
        MFunction f = random_mfunction(rng, make_grid(-1.0, 0.1, size(rng)));
        MFunction g = random_mfunction(rng, make_grid(0.5, 0.1, size(rng)));
        LagSeries fg = mconvolve(f, g);
        LagSeries gf = mconvolve(g, f);
        for (std::size_t i = 0; i < fg.size(); ++i)
            if (std::abs(fg.values[i] - gf.values[i]) > 1e-12)
                return false;
    }
    const std::size_t n = 200;
    const double dx = 1.0 / n;
    MFunction box = MFunction::constant(1.0, make_grid(0.0, dx, n));
    LagSeries tri = mconvolve(box, box);
    for (std::size_t i = 0; i < tri.size(); ++i) {
        double expected = static_cast<double>(std::min(i + 1, 2 * n - 1 - i)) * dx;
        if (std::abs(tri.values[i] - expected) > 1e-9)
            return false;
    }
    for (int t = 0; t < 50; ++t) {
        MFunction a = random_mfunction(rng, make_grid(0.0, 0.1, 30));
        MFunction b = random_mfunction(rng, make_grid(1.0, 0.1, 20));
        for (double v : scorrelate(a, b).values)
            if (v < -1.0 || v > 1.0)
                return false;
    }
    Benchmark bench = make_benchmark();
    PeakReport sc = peak_report(scorrelate(bench.signal, bench.tmpl));
    PeakReport mc = peak_report(mcorrelate(bench.signal, bench.tmpl));
    PeakReport xc = peak_report(cross_correlate(bench.signal, bench.tmpl));
    return sc.secondary_ratio < xc.secondary_ratio && mc.fwhm < xc.fwhm;
}

// ---- criterion 9 ----

bool iris_reproduction() {
    LabeledPoints all = load_labeled_points_csv_file(g_srcdir + "/data/iris.csv");
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
    if (labels != std::vector<std::string>{"setosa", "versicolor", "virginica"})
        return false;
    std::vector<double> bw;
    for (const auto& g : groups)
        bw.push_back(default_bandwidth(g));
    Grid2D grid = default_grid(all, *std::max_element(bw.begin(), bw.end()));
    std::vector<KdeField> fields;
    for (std::size_t i = 0; i < groups.size(); ++i)
        fields.push_back(kde2d(groups[i], grid, bw[i]));
    auto m = cluster_jaccard_matrix(fields);
    double set_ver = m[0][1], set_vir = m[0][2], ver_vir = m[1][2];
    double multi = cluster_jaccard_multi(fields);
    return set_ver < 1e-2 && set_vir < 1e-2 && ver_vir >= 0.03 && ver_vir <= 0.5 &&
           ver_vir > set_ver && set_ver >= set_vir && multi < 0.01;
}

// ---- criterion 10 ----

ExprPtr rand_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    switch (pick(rng)) {
    case 0: return std::make_shared<ExprAst>(ExprAst{ExprAst::Identifier{"g"}});
    case 1: return std::make_shared<ExprAst>(ExprAst{ExprAst::Identifier{"h"}});
    case 2: {
        std::uniform_real_distribution<double> lit(0.0, 3.0);
        return std::make_shared<ExprAst>(ExprAst{ExprAst::Number{lit(rng)}});
    }
    case 3:
        return std::make_shared<ExprAst>(
            ExprAst{ExprAst::Unary{UnaryOp::Negate, rand_expr(rng, depth - 1)}});
    default: {
        std::uniform_int_distribution<int> op(0, 5);
        return std::make_shared<ExprAst>(ExprAst{ExprAst::Binary{
            static_cast<BinaryOp>(op(rng)), rand_expr(rng, depth - 1), rand_expr(rng, depth - 1)}});
    }
    }
}

MFunction expr_oracle(const ExprAst& ast, const MFunction& g, const MFunction& h) {
    if (auto* id = std::get_if<ExprAst::Identifier>(&ast.node))
        return id->name == "g" ? g : h;
    if (auto* n = std::get_if<ExprAst::Number>(&ast.node))
        return MFunction::constant(n->value, g.grid());
    if (auto* u = std::get_if<ExprAst::Unary>(&ast.node))
        return complement(expr_oracle(*u->child, g, h));
    const auto& b = std::get<ExprAst::Binary>(ast.node);
    MFunction l = expr_oracle(*b.left, g, h);
    MFunction r = expr_oracle(*b.right, g, h);
    switch (b.op) {
    case BinaryOp::Union: return pointwise(MsetOp::Union, l, r);
    case BinaryOp::Intersection: return pointwise(MsetOp::Intersection, l, r);
    case BinaryOp::Add: return pointwise(MsetOp::Sum, l, r);
    case BinaryOp::Subtract: return pointwise(MsetOp::DiffSigned, l, r);
    case BinaryOp::Multiply: return pointwise(MsetOp::Product, l, r);
    case BinaryOp::Divide: return pointwise_quotient(l, r);
    }
    std::abort();
}

bool expression_oracle() {
    std::mt19937 rng(233);
    Grid1D grid = make_grid(-1.0, 0.0625, 32);
    for (int t = 0; t < 100; ++t) {
        MFunction g = random_mfunction(rng, grid);
        MFunction h = random_mfunction(rng, grid);
        Environment env;
        env.bind("g", g);
        env.bind("h", h);
        ExprPtr e = rand_expr(rng, 4);
        MFunction got = std::get<MFunction>(eval(*e, env));
        MFunction want = expr_oracle(*e, g, h);
        for (std::size_t i = 0; i < grid.n; ++i)
            if (got[i] != want[i])
                return false;
    }
    Grid1D fine = make_grid(-1.0, 2.0 / 2048, 2048);
    Environment env;
    env.bind("g", sample_builtin("gauss_g", {}, fine));
    env.bind("h", sample_builtin("laplace_h", {}, fine));
    MFunction r = std::get<MFunction>(eval(*parse("(g & h) + g"), env));
    MFunction s = std::get<MFunction>(eval(*parse("g + h | g - h"), env));
    MFunction tt = std::get<MFunction>(eval(*parse("(g & h) - (g | h)"), env));
    if (r.size() != fine.n || s.size() != fine.n)
        return false;
    for (double v : tt.samples())
        if (v > 0.0)
            return false;
    return true;
}

// ---- criterion 11 ----

struct GoldenCase {
    std::string file;
    std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
    const std::string in = g_srcdir + "/tests/golden/inputs/";
    return {
        {"mset_sum.json", {"mset", "sum", in + "A.json", in + "D.json"}},
        {"fn_sample.csv", {"fn", "sample", "--name", "gauss_g", "--grid", "-1:1:16"}},
        {"sim_jaccard.json", {"sim", "--kind", "jaccard", in + "pair_a.json", in + "pair_b.json"}},
        {"match_scorr.txt", {"match", "--mode", "scorr", in + "signal.csv", in + "template.csv"}},
        {"transform_walsh.json", {"transform", "--basis", "walsh", "--k", "3", in + "f.csv"}},
        {"cluster.json", {"cluster", in + "points.csv", "--bandwidth", "0.5", "--cells", "32"}},
        {"expr.csv",
         {"expr", "(g & h) + g", "--bind", "g=" + in + "f.csv", "--bind", "h=" + in + "g.csv"}},
    };
}

bool golden_files(bool write) {
    bool ok = true;
    for (const auto& c : golden_cases()) {
        CliResult r = run_cli(c.args);
        if (r.status != 0) {
            std::cerr << "  golden " << c.file << ": exit status " << r.status << "\n";
            ok = false;
            continue;
        }
        std::string path = g_srcdir + "/tests/golden/" + c.file;
        if (write) {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << r.output;
            continue;
        }
        if (read_file(path) != r.output) {
            std::cerr << "  golden " << c.file << ": output differs\n";
            ok = false;
        }
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: multikit_acceptance <cli-binary> <source-dir> [--write-golden]\n";
        return 2;
    }
    g_cli = argv[1];
    g_srcdir = argv[2];
    bool write_golden = argc > 3 && std::string(argv[3]) == "--write-golden";
    if (write_golden)
        return golden_files(true) ? 0 : 1;

    struct Criterion {
        const char* name;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {"worked mset examples (sum, truncated differences)", worked_mset_examples},
        {"jaccard fidelity: 4/7 pair, documented 4/11, 1000 randomized equivalences",
         jaccard_fidelity},
        {"de morgan and lattice suite, 10000 randomized msets/mfunctions", lattice_suite},
        {"tag-oracle equivalence, exhaustive over 5 elements x multiplicities 0..4",
         tag_oracle_exhaustive},
        {"common-product sinusoid checks (orthogonality, 2/pi self-product)",
         sinusoid_products},
        {"walsh gram identity k=1..4 and 100 round trips per k", walsh_orthogonality},
        {"order dependence of the non-orthogonal two-sinusoid basis", order_dependence},
        {"signal suite: commutativity, triangle, scorrelate bounds, benchmark separation",
         signal_suite},
        {"iris cluster jaccard ordering and magnitudes", iris_reproduction},
        {"expression oracle: 100 bit-exact evaluations and the r/s/t constructions",
         expression_oracle},
        {"cli golden files, byte-for-byte", nullptr},
    };
    int failures = 0;
    int idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        bool ok = false;
        try {
            ok = c.fn ? c.fn() : golden_files(false);
        } catch (const std::exception& e) {
            std::cerr << "  criterion " << idx << " threw: " << e.what() << "\n";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " " << idx << ": " << c.name << "\n";
        failures += !ok;
    }
    if (failures)
        std::cout << failures << " criteria failed\n";
    else
        std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
