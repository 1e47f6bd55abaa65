#include "multikit/signal_ops.hpp"

#include "multikit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "multikit/similarity.hpp"

namespace multikit {

namespace {

unsigned thread_cap() {
    const char* env = std::getenv("MULTIKIT_THREADS");
    if (!env)
        return 0;
    long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 0;
}

// Deterministic partition over output lags; each worker owns a disjoint
// index range, so results are identical to the sequential evaluation.
template <typename Fn>
void for_each_index(std::size_t count, Fn&& fn) {
    unsigned workers = std::min<unsigned>(thread_cap(), std::thread::hardware_concurrency());
    if (workers <= 1 || count < 256) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

void require_dx_match(const MFunction& f, const MFunction& g) {
    if (f.grid().dx != g.grid().dx)
        throw AlignmentError("sample step mismatch");
}

enum class CorrKind { MProduct, SCorr, Classical };

LagSeries correlate_impl(const MFunction& f, const MFunction& g, CorrKind kind) {
    require_dx_match(f, g);
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const auto m = static_cast<std::ptrdiff_t>(g.size());
    const double dx = f.grid().dx;
    const double lag0 = f.grid().x0 - g.grid().x0;

    double abs_f_total = 0.0, abs_g_total = 0.0;
    std::vector<double> abs_f_prefix(n + 1, 0.0), abs_g_prefix(m + 1, 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i)
        abs_f_prefix[i + 1] = abs_f_prefix[i] + std::abs(f[i]);
    for (std::ptrdiff_t j = 0; j < m; ++j)
        abs_g_prefix[j + 1] = abs_g_prefix[j] + std::abs(g[j]);
    abs_f_total = abs_f_prefix[n];
    abs_g_total = abs_g_prefix[m];

    LagSeries out;
    out.lags.resize(n + m - 1);
    out.values.resize(n + m - 1);
    for_each_index(out.lags.size(), [&](std::size_t idx) {
        const std::ptrdiff_t l = static_cast<std::ptrdiff_t>(idx) - (m - 1);
        out.lags[idx] = lag0 + static_cast<double>(l) * dx;
        const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, l);
        const std::ptrdiff_t i1 = std::min(n, l + m);
        double acc = 0.0, sup = 0.0;
        for (std::ptrdiff_t i = i0; i < i1; ++i) {
            const double a = f[i];
            const double b = g[i - l];
            switch (kind) {
            case CorrKind::Classical: acc += a * b; break;
            case CorrKind::MProduct: acc += mproduct_value(a, b); break;
            case CorrKind::SCorr:
                acc += mproduct_value(a, b);
                sup += std::max(std::abs(a), std::abs(b));
                break;
            }
        }
        if (kind == CorrKind::SCorr) {
            // zero padding: outside the overlap, max(|f|, 0) or max(0, |g|)
            sup += abs_f_total - (abs_f_prefix[std::max(i1, i0)] - abs_f_prefix[i0]);
            sup += abs_g_total - (abs_g_prefix[std::max(i1, i0) - l] - abs_g_prefix[i0 - l]);
            out.values[idx] = sup > 0.0 ? acc / sup : 0.0;
        } else {
            out.values[idx] = acc * dx;
        }
    });
    return out;
}

} // namespace

LagSeries mcorrelate(const MFunction& f, const MFunction& g) {
    return correlate_impl(f, g, CorrKind::MProduct);
}

LagSeries scorrelate(const MFunction& f, const MFunction& g) {
    return correlate_impl(f, g, CorrKind::SCorr);
}

LagSeries cross_correlate(const MFunction& f, const MFunction& g) {
    return correlate_impl(f, g, CorrKind::Classical);
}

LagSeries mconvolve(const MFunction& f, const MFunction& g) {
    require_dx_match(f, g);
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const auto m = static_cast<std::ptrdiff_t>(g.size());
    const double dx = f.grid().dx;
    const double lag0 = f.grid().x0 + g.grid().x0;

    LagSeries out;
    out.lags.resize(n + m - 1);
    out.values.resize(n + m - 1);
    for_each_index(out.lags.size(), [&](std::size_t idx) {
        const auto l = static_cast<std::ptrdiff_t>(idx);
        out.lags[idx] = lag0 + static_cast<double>(l) * dx;
        const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, l - m + 1);
        const std::ptrdiff_t i1 = std::min(n - 1, l);
        double acc = 0.0;
        for (std::ptrdiff_t i = i0; i <= i1; ++i)
            acc += mproduct_value(f[i], g[l - i]);
        out.values[idx] = acc * dx;
    });
    return out;
}

PeakReport peak_report(const LagSeries& series) {
    const auto& v = series.values;
    const auto& lags = series.lags;
    if (v.empty())
        throw std::invalid_argument("empty lag series");
    auto peak_it = std::max_element(v.begin(), v.end());
    if (*peak_it == *std::min_element(v.begin(), v.end()))
        throw std::invalid_argument("constant series has no peak");
    const std::size_t ip = static_cast<std::size_t>(peak_it - v.begin());

    PeakReport r;
    r.primary_value = v[ip];
    r.primary_lag = lags[ip];

    const double half = r.primary_value / 2.0;
    double left = lags.front();
    for (std::size_t i = ip; i > 0; --i) {
        if (v[i - 1] < half) {
            double t = (half - v[i - 1]) / (v[i] - v[i - 1]);
            left = lags[i - 1] + t * (lags[i] - lags[i - 1]);
            break;
        }
    }
    double right = lags.back();
    for (std::size_t i = ip; i + 1 < v.size(); ++i) {
        if (v[i + 1] < half) {
            double t = (half - v[i + 1]) / (v[i] - v[i + 1]);
            right = lags[i + 1] - t * (lags[i + 1] - lags[i]);
            break;
        }
    }
    r.fwhm = right - left;

    double secondary = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        bool local_max = v[i] >= v[i - 1] && v[i] >= v[i + 1] &&
                         (v[i] > v[i - 1] || v[i] > v[i + 1]);
        if (local_max && std::abs(lags[i] - r.primary_lag) >= r.fwhm && v[i] > secondary) {
            secondary = v[i];
            found = true;
        }
    }
    r.secondary_value = found ? secondary : 0.0;
    if (r.primary_value > 0.0)
        r.secondary_ratio = std::max(r.secondary_value, 0.0) / r.primary_value;
    return r;
}

namespace {

// Biphasic template: positive lobe 0.2 left of center, damped negative lobe
// 0.2 right of it.
double template_wave(double center, double x) {
    auto lobe = [](double u) { return std::exp(-40.0 * u * u); };
    return lobe(x - (center - 0.2)) - 0.6 * lobe(x - (center + 0.2));
}

} // namespace

Benchmark make_benchmark() {
    const std::size_t n = 4096;
    const double dx = 10.0 / 4096.0;
    Grid1D signal_grid = make_grid(0.0, dx, n);

    std::mt19937 rng(42);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = signal_grid.x(i);
        double u = static_cast<double>(rng()) / 4294967296.0; // [0, 1)
        s[i] = template_wave(2.0, x) + 0.55 * template_wave(5.0, x) +
               0.8 * template_wave(8.0, x) + (0.1 * u - 0.05);
    }

    Grid1D template_grid = make_grid(-1.0, dx, 819); // covers [-1, 1)
    std::vector<double> t(template_grid.n);
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = template_wave(0.0, template_grid.x(i));

    return Benchmark{MFunction(signal_grid, std::move(s)),
                     MFunction(template_grid, std::move(t))};
}

} // namespace multikit
