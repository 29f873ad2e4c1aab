#include "kerrtap/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kerrtap/tap.hpp"

namespace kerrtap {

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binary_entropy: q must be in [0, 1]");
  }
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double capacity(double p_success) {
  if (!(p_success >= 0.0 && p_success <= 1.0)) {
    throw std::invalid_argument("capacity: p_success must be in [0, 1]");
  }
  return 1.0 - binary_entropy(1.0 - p_success);
}

namespace {

// Success probabilities can stray a few ulps outside [0,1].
double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

ChannelMetrics channel_metrics(double theta, double phi, double alpha) {
  const AttackErrorRates rates =
      attack_error_rates(closed_form_table(theta, phi), alpha);

  ChannelMetrics m;
  m.alpha = alpha;
  m.q_ab = rates.q_ab;
  m.i_ae = alpha * capacity(clamp01(1.0 - rates.q_ae));
  m.i_eb = alpha * capacity(clamp01(1.0 - rates.q_eb));
  m.i_ab = capacity(clamp01(1.0 - rates.q_ab));
  m.unsafe = m.i_ab <= std::min(m.i_ae, m.i_eb);
  return m;
}

std::optional<double> threshold_alpha(double theta, double phi) {
  const auto gap = [&](double a) {
    const ChannelMetrics m = channel_metrics(theta, phi, a);
    return m.i_ab - std::min(m.i_ae, m.i_eb);
  };

  constexpr int kScanSteps = 100;
  constexpr double kTolerance = 1e-9;

  double lo = 0.0;
  if (gap(lo) <= 0.0) return 0.0;
  for (int k = 1; k <= kScanSteps; ++k) {
    const double hi = static_cast<double>(k) / kScanSteps;
    if (gap(hi) > 0.0) {
      lo = hi;
      continue;
    }
    double a = lo;
    double b = hi;
    while (b - a > kTolerance) {
      const double mid = 0.5 * (a + b);
      (gap(mid) > 0.0 ? a : b) = mid;
    }
    return 0.5 * (a + b);
  }
  return std::nullopt;
}

}  // namespace kerrtap
