#pragma once

#include <vector>

#include "multikit/mfunction.hpp"

namespace multikit {

// Correlation-style output: uniformly spaced lag offsets (step = operand dx)
// paired with values.
struct LagSeries {
    std::vector<double> lags;
    std::vector<double> values;

    std::size_t size() const { return lags.size(); }
};

struct PeakReport {
    double primary_lag = 0.0;
    double primary_value = 0.0;
    double secondary_value = 0.0;
    double secondary_ratio = 0.0; // max(secondary, 0) / primary
    double fwhm = 0.0;            // full width at half max of the primary peak
};

// Convolution with the integrand product replaced by the mproduct; zero
// padding outside the operand supports. Commutative.
LagSeries mconvolve(const MFunction& f, const MFunction& g);

// Lag series of the quadrature of mproduct(f(x), g(x - y)). All three
// correlation operators share the lag grid running from -(len(g)-1)*dx to
// (len(f)-1)*dx relative to the aligned origins ("full" convention).
LagSeries mcorrelate(const MFunction& f, const MFunction& g);

// Jaccard index at each lag: common product over sup product of f against
// the shifted g, both taken over the union of the (zero-padded) supports.
// Lags with sup product 0 emit 0.
LagSeries scorrelate(const MFunction& f, const MFunction& g);

// Classical cross-correlation baseline on the same lag grid.
LagSeries cross_correlate(const MFunction& f, const MFunction& g);

// Primary peak = global maximum; FWHM by linear interpolation at half the
// primary value; secondary = largest local maximum at least one FWHM away
// from the primary. Throws on an all-constant series.
PeakReport peak_report(const LagSeries& series);

// Fixed synthetic template-matching benchmark: a biphasic template embedded
// three times (amplitudes 1.0, 0.55, 0.8 at x = 2, 5, 8) in deterministic
// pseudo-noise on [0, 10) with n = 4096.
struct Benchmark {
    MFunction signal;
    MFunction tmpl;
};

Benchmark make_benchmark();

} // namespace multikit
