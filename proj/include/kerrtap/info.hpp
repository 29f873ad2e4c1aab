#pragma once

#include <optional>

namespace kerrtap {

/// -q log2 q - (1-q) log2(1-q), with 0 log 0 = 0. q must be in [0, 1].
double binary_entropy(double q);

/// Binary-symmetric-channel capacity for success probability p:
/// 1 + p log2 p + (1-p) log2(1-p). Symmetric under p <-> 1-p.
double capacity(double p_success);

/// The three pairwise mutual informations at one (theta, phi, alpha) and
/// the security verdict. Eve's channels are scaled by alpha (pulses she
/// does not touch tell her nothing); the Alice-Bob channel sees the full
/// sifted key with error rate q_ab = alpha * q_ab_per_intercept.
struct ChannelMetrics {
  double i_ae = 0.0;  // bits per sifted pulse
  double i_ab = 0.0;
  double i_eb = 0.0;
  double q_ab = 0.0;
  double alpha = 0.0;
  bool unsafe = false;  // i_ab <= min(i_ae, i_eb)
};

ChannelMetrics channel_metrics(double theta, double phi, double alpha);

/// Smallest alpha in [0, 1] at which the transmission stops being safe
/// (i_ab <= min(i_ae, i_eb)), located by a coarse scan for a sign change
/// followed by bisection to 1e-9. nullopt when the criterion never
/// triggers on (0, 1].
std::optional<double> threshold_alpha(double theta, double phi);

}  // namespace kerrtap
