#include "kerrtap/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kerrtap/info.hpp"
#include "kerrtap/state.hpp"
#include "kerrtap/tap.hpp"

namespace kerrtap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExactTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckResult check(std::string name, bool pass, std::string detail) {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

PureState run_probe(double theta, double phi) {
  return apply_bs2(apply_kerr(apply_bs1(attach_probe(make_qubit(theta))), phi));
}

double detector_prob(const PureState& s, ProbeMode d) {
  return std::norm(s.amplitude(Pol::H, d)) + std::norm(s.amplitude(Pol::V, d));
}

CheckResult capacity_figure() {
  const double c = capacity(0.75);
  return check("capacity-figure", std::abs(c - 0.189) <= 5e-4,
               "capacity(3/4) = " + fmt(c) + ", reference 0.189");
}

CheckResult perfect_identification() {
  const auto rates = attack_error_rates(closed_form_table(0.0, kPi), 1.0);
  const double d3_h = detector_prob(run_probe(0.0, kPi), ProbeMode::D3);
  const double d4_v = detector_prob(run_probe(kPi / 2, kPi), ProbeMode::D4);
  const bool pass = rates.q_ae <= kExactTol &&
                    rates.q_ab_per_intercept <= kExactTol &&
                    std::abs(d3_h - 1.0) <= kExactTol &&
                    std::abs(d4_v - 1.0) <= kExactTol;
  return check("perfect-identification", pass,
               "theta=0, phi=pi: q_ae = " + fmt(rates.q_ae) +
                   ", q_ab/intercept = " + fmt(rates.q_ab_per_intercept) +
                   ", P(D3|H) = " + fmt(d3_h) + ", P(D4|V) = " + fmt(d4_v));
}

CheckResult balanced_disturbance() {
  const auto t = closed_form_table(kPi / 4, kPi);
  const double p_d3 = t.p3_uu + t.p3_uv;
  const double p_d4 = t.p4_uu + t.p4_uv;
  const double bob_error = t.p3_uv + t.p4_uv;
  const bool pass = std::abs(p_d3 - 0.5) <= kExactTol &&
                    std::abs(p_d4 - 0.5) <= kExactTol &&
                    std::abs(bob_error - 0.5) <= kExactTol;
  return check("balanced-disturbance", pass,
               "theta=pi/4, phi=pi: P(D3) = " + fmt(p_d3) + ", P(D4) = " +
                   fmt(p_d4) + ", Bob error = " + fmt(bob_error));
}

CheckResult bisecting_operating_point() {
  const auto m = channel_metrics(kPi / 8, kPi, 1.0);
  const bool pass =
      std::abs(m.i_ae - 0.3995) <= 5e-3 && std::abs(m.q_ab - 0.25) <= kExactTol;
  return check("bisecting-operating-point", pass,
               "theta=pi/8, phi=pi, alpha=1: i_ae = " + fmt(m.i_ae) +
                   " (reference 0.40), q_ab = " + fmt(m.q_ab));
}

CheckResult security_threshold() {
  const auto alpha_star = threshold_alpha(kPi / 8, kPi);
  if (!alpha_star) {
    return check("security-threshold", false, "no threshold found");
  }
  const double q_ab = channel_metrics(kPi / 8, kPi, *alpha_star).q_ab;
  const bool pass =
      std::abs(*alpha_star - 0.755) <= 1e-3 && std::abs(q_ab - 0.1888) <= 1e-3;
  return check("security-threshold", pass,
               "alpha* = " + fmt(*alpha_star) + " (reference 0.755), q_ab = " +
                   fmt(q_ab) + " (reference 0.189)");
}

CheckResult oracle_grid(int grid_n) {
  double max_diff = 0.0;
  double max_row_sum_err = 0.0;
  double max_cross_spread = 0.0;
  double range_violation = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double theta = -kPi / 2 + kPi * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double phi = 2 * kPi * j / (grid_n - 1);
      const auto a = closed_form_table(theta, phi);
      const auto b = circuit_table(theta, phi);
      const double diffs[] = {a.p3_uu - b.p3_uu, a.p4_uu - b.p4_uu,
                              a.p3_uv - b.p3_uv, a.p4_uv - b.p4_uv,
                              a.p3_vu - b.p3_vu, a.p4_vu - b.p4_vu,
                              a.p3_vv - b.p3_vv, a.p4_vv - b.p4_vv};
      for (double d : diffs) max_diff = std::max(max_diff, std::abs(d));

      const double u_sum = a.p3_uu + a.p4_uu + a.p3_uv + a.p4_uv;
      const double v_sum = a.p3_vv + a.p4_vv + a.p3_vu + a.p4_vu;
      max_row_sum_err = std::max({max_row_sum_err, std::abs(u_sum - 1.0),
                                  std::abs(v_sum - 1.0)});

      const double cross_lo =
          std::min({b.p3_uv, b.p4_uv, b.p3_vu, b.p4_vu});
      const double cross_hi =
          std::max({b.p3_uv, b.p4_uv, b.p3_vu, b.p4_vu});
      max_cross_spread = std::max(max_cross_spread, cross_hi - cross_lo);

      const double entries[] = {a.p3_uu, a.p4_uu, a.p3_uv, a.p4_uv,
                                a.p3_vu, a.p4_vu, a.p3_vv, a.p4_vv};
      for (double e : entries) {
        range_violation =
            std::max({range_violation, -e, e - 1.0});
      }
    }
  }
  const bool pass = max_diff <= kExactTol && max_row_sum_err <= kExactTol &&
                    max_cross_spread <= kExactTol &&
                    range_violation <= kExactTol;
  return check("oracle-grid", pass,
               fmt(grid_n) + "x" + fmt(grid_n) +
                   " grid: max |closed - circuit| = " + fmt(max_diff) +
                   ", max row-sum error = " + fmt(max_row_sum_err) +
                   ", max cross-term spread = " + fmt(max_cross_spread));
}

// After the first beam splitter and the Kerr cell, an input at angle theta
// must carry amplitudes cos/sqrt2 on (H, Arm1), e^{i phi} sin/sqrt2 on
// (V, Arm1), and i cos/sqrt2, i sin/sqrt2 on the Arm2 labels.
CheckResult entangled_state_structure() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double max_err = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double theta = kPi / 2 * i / 20.0;
    for (int j = 0; j <= 20; ++j) {
      const double phi = 2 * kPi * j / 20.0;
      const PureState s =
          apply_kerr(apply_bs1(attach_probe(make_qubit(theta))), phi);
      const Complex expected[] = {
          Complex{std::cos(theta) * inv_sqrt2},
          std::polar(1.0, phi) * std::sin(theta) * inv_sqrt2,
          Complex{0, std::cos(theta) * inv_sqrt2},
          Complex{0, std::sin(theta) * inv_sqrt2}};
      const Complex actual[] = {s.amplitude(Pol::H, ProbeMode::Arm1),
                                s.amplitude(Pol::V, ProbeMode::Arm1),
                                s.amplitude(Pol::H, ProbeMode::Arm2),
                                s.amplitude(Pol::V, ProbeMode::Arm2)};
      for (int k = 0; k < 4; ++k) {
        max_err = std::max(max_err, std::abs(expected[k] - actual[k]));
      }
    }
  }
  return check("entangled-state-structure", max_err <= kExactTol,
               "max term error over theta x phi grid = " + fmt(max_err));
}

// |+> input, after the Kerr cell, in the +/- basis of the qubit: the |+>
// component pairs with (1+e^{i phi}) on arm 1 and 2i on arm 2, the |->
// component with (1-e^{i phi}) on arm 1 only, all over 2 sqrt 2.
CheckResult plus_state_structure() {
  const double inv = 1.0 / (2.0 * std::sqrt(2.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double max_err = 0.0;
  for (int j = 0; j <= 40; ++j) {
    const double phi = 2 * kPi * j / 40.0;
    const PureState s =
        apply_kerr(apply_bs1(attach_probe(make_qubit(kPi / 4))), phi);
    const Complex kerr_phase = std::polar(1.0, phi);
    const Complex h1 = s.amplitude(Pol::H, ProbeMode::Arm1);
    const Complex v1 = s.amplitude(Pol::V, ProbeMode::Arm1);
    const Complex h2 = s.amplitude(Pol::H, ProbeMode::Arm2);
    const Complex v2 = s.amplitude(Pol::V, ProbeMode::Arm2);
    const Complex plus_arm1 = (h1 + v1) * inv_sqrt2;
    const Complex minus_arm1 = (h1 - v1) * inv_sqrt2;
    const Complex plus_arm2 = (h2 + v2) * inv_sqrt2;
    const Complex minus_arm2 = (h2 - v2) * inv_sqrt2;
    max_err = std::max(
        {max_err, std::abs(plus_arm1 - (1.0 + kerr_phase) * inv),
         std::abs(minus_arm1 - (1.0 - kerr_phase) * inv),
         std::abs(plus_arm2 - Complex{0, 2} * inv), std::abs(minus_arm2)});
  }
  return check("plus-state-structure", max_err <= kExactTol,
               "max coefficient error over phi grid = " + fmt(max_err));
}

CheckResult zero_phase_passthrough() {
  double max_d4 = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double theta = -kPi / 2 + kPi * i / 40.0;
    max_d4 = std::max(max_d4, detector_prob(run_probe(theta, 0.0), ProbeMode::D4));
  }
  return check("zero-phase-passthrough", max_d4 <= kExactTol,
               "phi=0: max P(D4) over theta grid = " + fmt(max_d4));
}

CheckResult h_alignment_passthrough() {
  double max_d4 = 0.0;
  for (int j = 0; j <= 40; ++j) {
    const double phi = 2 * kPi * j / 40.0;
    max_d4 = std::max(max_d4, detector_prob(run_probe(0.0, phi), ProbeMode::D4));
  }
  return check("h-alignment-passthrough", max_d4 <= kExactTol,
               "theta=0: max P(D4) over phi grid = " + fmt(max_d4));
}

CheckResult decode_rule() {
  const bool mapping = eve_decode(Detector::D3) == SentSymbol::U &&
                       eve_decode(Detector::D4) == SentSymbol::V;
  const double q_ae = attack_error_rates(closed_form_table(0.0, kPi), 1.0).q_ae;
  return check("decode-rule", mapping && q_ae <= kExactTol,
               "D3 -> u, D4 -> v; decode error at (0, pi) = " + fmt(q_ae));
}

CheckResult eve_error_closed_form() {
  double max_err = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double theta = kPi / 4 * i / 40.0;
    const double q_ae =
        attack_error_rates(closed_form_table(theta, kPi), 1.0).q_ae;
    const double s = std::sin(theta);
    max_err = std::max(max_err, std::abs(q_ae - s * s));
  }
  return check("eve-error-closed-form", max_err <= kExactTol,
               "phi=pi: max |q_ae - sin^2(theta)| = " + fmt(max_err));
}

CheckResult eve_bob_symmetry() {
  const auto rates = attack_error_rates(closed_form_table(kPi / 8, kPi), 1.0);
  return check("eve-bob-symmetry",
               std::abs(rates.q_eb - rates.q_ae) <= kExactTol,
               "theta=pi/8, phi=pi: q_ae = " + fmt(rates.q_ae) +
                   ", q_eb = " + fmt(rates.q_eb));
}

CheckResult angle_symmetries() {
  double max_err = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double theta = -kPi / 2 + kPi * i / 20.0;
    for (int j = 0; j <= 20; ++j) {
      const double phi = 2 * kPi * j / 20.0;
      const auto t = closed_form_table(theta, phi);
      const auto neg = closed_form_table(-theta, phi);
      const auto refl = closed_form_table(theta, 2 * kPi - phi);
      const double diffs[] = {
          t.p3_uu - neg.p3_uu, t.p4_uu - neg.p4_uu, t.p3_uv - neg.p3_uv,
          t.p3_vv - neg.p3_vv, t.p4_vv - neg.p4_vv, t.p3_uu - refl.p3_uu,
          t.p4_uu - refl.p4_uu, t.p3_uv - refl.p3_uv, t.p3_vv - refl.p3_vv,
          t.p4_vv - refl.p4_vv};
      for (double d : diffs) max_err = std::max(max_err, std::abs(d));
    }
  }
  return check("angle-symmetries", max_err <= kExactTol,
               "max deviation under theta -> -theta and phi -> 2pi - phi = " +
                   fmt(max_err));
}

}  // namespace

std::vector<CheckResult> run_verification(int grid_n) {
  if (grid_n < 2) {
    throw std::invalid_argument("run_verification: grid_n must be >= 2");
  }
  return {
      capacity_figure(),
      perfect_identification(),
      balanced_disturbance(),
      bisecting_operating_point(),
      security_threshold(),
      oracle_grid(grid_n),
      entangled_state_structure(),
      plus_state_structure(),
      zero_phase_passthrough(),
      h_alignment_passthrough(),
      decode_rule(),
      eve_error_closed_form(),
      eve_bob_symmetry(),
      angle_symmetries(),
  };
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace kerrtap
