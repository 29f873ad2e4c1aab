#include "kerrtap/tap.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kerrtap/state.hpp"

namespace kerrtap {

ProbabilityTable closed_form_table(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("closed_form_table: angles must be finite");
  }
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double cp = std::cos(phi);
  const double half_shift = std::sin(phi / 2) * std::sin(phi / 2);  // (1-cos phi)/2

  ProbabilityTable t;
  t.theta = theta;
  t.phi = phi;
  t.p3_uu = 0.5 * (1.0 - c2 * s2 * (1.0 - cp) + c2 + cp * s2);
  t.p4_uu = 0.5 * s2 * s2 * (1.0 - cp);
  t.p3_vv = 0.5 * (1.0 - c2 * s2 * (1.0 - cp) + s2 + cp * c2);
  t.p4_vv = 0.5 * c2 * c2 * (1.0 - cp);
  // the four cross (Bob-error) probabilities coincide
  const double cross = s2 * c2 * half_shift;
  t.p3_uv = cross;
  t.p4_uv = cross;
  t.p3_vu = cross;
  t.p4_vu = cross;
  return t;
}

ProbabilityTable circuit_table(double theta, double phi) {
  const auto run_probe = [phi](double state_angle) {
    return apply_bs2(
        apply_kerr(apply_bs1(attach_probe(make_qubit(state_angle))), phi));
  };
  // v is exactly the state at theta + pi/2
  const JointProbabilities u_row = joint_distribution(run_probe(theta), theta);
  const JointProbabilities v_row =
      joint_distribution(run_probe(theta + std::numbers::pi / 2), theta);

  ProbabilityTable t;
  t.theta = theta;
  t.phi = phi;
  t.p3_uu = u_row.u_d3;
  t.p4_uu = u_row.u_d4;
  t.p3_uv = u_row.v_d3;
  t.p4_uv = u_row.v_d4;
  t.p3_vu = v_row.u_d3;
  t.p4_vu = v_row.u_d4;
  t.p3_vv = v_row.v_d3;
  t.p4_vv = v_row.v_d4;
  return t;
}

SentSymbol eve_decode(Detector d) {
  return d == Detector::D3 ? SentSymbol::U : SentSymbol::V;
}

AttackErrorRates attack_error_rates(const ProbabilityTable& table,
                                    double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("attack_error_rates: alpha must be in [0, 1]");
  }
  AttackErrorRates r;
  r.alpha = alpha;
  // Eve is wrong when D3 fires on v or D4 fires on u.
  r.q_ae = 0.5 * ((table.p3_vu + table.p3_vv) + (table.p4_uu + table.p4_uv));
  // Against Bob's outcome instead of Alice's input.
  r.q_eb = 0.5 * ((table.p4_uu + table.p3_uv) + (table.p4_vu + table.p3_vv));
  r.q_ab_per_intercept =
      0.5 * (table.p3_uv + table.p4_uv + table.p3_vu + table.p4_vu);
  r.q_ab = alpha * r.q_ab_per_intercept;
  return r;
}

}  // namespace kerrtap
