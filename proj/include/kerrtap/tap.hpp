#pragma once

#include <cstdint>

namespace kerrtap {

enum class Detector : std::uint8_t { D3 = 0, D4 = 1 };

/// Which of the two orthogonal basis states Alice sent (or Eve infers):
/// u is the state at the pair's angle, v the orthogonal one.
enum class SentSymbol : std::uint8_t { U = 0, V = 1 };

/// Joint probabilities of (Bob outcome, Eve detector), one row per state
/// Alice may send; each row is conditioned on that input and sums to 1.
/// p3_uv reads: Alice sent u, Bob measured v, probe landed on D3.
struct ProbabilityTable {
  double theta = 0.0;
  double phi = 0.0;
  // Alice sent u
  double p3_uu = 0.0;
  double p4_uu = 0.0;
  double p3_uv = 0.0;
  double p4_uv = 0.0;
  // Alice sent v
  double p3_vu = 0.0;
  double p4_vu = 0.0;
  double p3_vv = 0.0;
  double p4_vv = 0.0;
};

/// Closed-form table: the direct trigonometric expressions in theta (the
/// state angle relative to the Kerr cell's H/V eigenbasis) and the Kerr
/// phase phi. The four cross terms are equal by construction.
ProbabilityTable closed_form_table(double theta, double phi);

/// Same table computed the long way round: run the probe circuit for
/// inputs u and v and read the joint distribution off the final state.
/// Serves as the independent oracle for closed_form_table.
ProbabilityTable circuit_table(double theta, double phi);

/// Eve's decoding rule: D3 means u, D4 means v.
SentSymbol eve_decode(Detector d);

/// Error rates of the attack at one (theta, phi), per intercepted pulse,
/// with equal priors on u/v. q_ab = alpha * q_ab_per_intercept is the
/// error Eve injects into the sifted Alice-Bob key.
struct AttackErrorRates {
  double q_ae = 0.0;               // Eve's decode vs what Alice sent
  double q_eb = 0.0;               // Eve's decode vs Bob's sifted outcome
  double q_ab_per_intercept = 0.0; // Bob error per intercepted pulse
  double alpha = 0.0;              // intercept fraction
  double q_ab = 0.0;
};

AttackErrorRates attack_error_rates(const ProbabilityTable& table,
                                    double alpha);

}  // namespace kerrtap
