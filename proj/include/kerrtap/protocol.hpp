#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kerrtap/tap.hpp"

namespace kerrtap {

enum class Basis : std::uint8_t { Rectilinear = 0, Diagonal = 1 };

/// One Monte Carlo run of BB84 under the translucent tap.
///
/// Angles are lab-frame radians. eve_frame_angle is the orientation of the
/// Kerr cell's H/V eigenbasis; pi/8 bisects the two BB84 bases and makes
/// the injected errors basis-symmetric.
struct SimConfig {
  std::uint64_t n_pulses = 0;
  double alpha = 0.0;                  // intercept fraction
  double phi = std::numbers::pi;       // Kerr phase
  double eve_frame_angle = std::numbers::pi / 8;
  std::uint64_t seed = 0;
  double channel_flip_rate = 0.0;      // background noise on untouched pulses
  double sample_fraction = 0.5;        // sifted bits disclosed for QBER estimation
  unsigned n_chunks = 4;               // canonical chunk plan, <= 1024; any plan gives identical output
};

struct PulseRecord {
  Basis alice_basis;
  std::uint8_t alice_bit;
  bool intercepted;
  std::optional<Detector> eve_detector;   // present iff intercepted
  std::optional<std::uint8_t> eve_guess;  // present iff intercepted
  Basis bob_basis;
  std::uint8_t bob_bit;
  bool sifted;  // alice_basis == bob_basis
};

/// Aggregates of one run. Ratios with an empty denominator (no sifted
/// pulses, no intercepted-and-sifted pulses, no pulses in a basis) are
/// reported as 0.
struct RunStats {
  std::uint64_t n_sifted = 0;
  double qber_estimate = 0.0;          // from the disclosed subsample
  double qber_true = 0.0;              // over the full sifted set
  double eve_accuracy_on_sifted = 0.0; // among intercepted AND sifted
  double qber_rectilinear = 0.0;
  double qber_diagonal = 0.0;
  std::uint64_t seed = 0;
};

struct RunResult {
  RunStats stats;
  std::vector<PulseRecord> records;
};

/// Deterministic given the seed: pulse i draws from its own reserved
/// SplitMix64 block (offset 8*i of the master sequence), in the fixed
/// order alice basis, alice bit, bob basis, intercept, outcome, noise
/// flip. Intercepted pulses sample (Bob outcome, detector) from the exact
/// 4-way joint distribution of the probe circuit; untouched pulses get a
/// plain projective measurement plus an optional channel flip. Chunks of
/// the canonical plan run concurrently and aggregate associatively, so
/// any n_chunks reproduces the single-threaded result bit for bit.
RunResult run_bb84(const SimConfig& config);

/// Keep exactly the matching-basis records, order preserved.
std::vector<PulseRecord> sift(const std::vector<PulseRecord>& records);

struct QberEstimate {
  double estimate = 0.0;
  std::vector<std::uint8_t> alice_key;  // undisclosed remainder
  std::vector<std::uint8_t> bob_key;
};

/// Disclose each sifted bit independently with probability sample_fraction
/// (seeded, in record order), return the mismatch rate of the disclosed
/// bits and the undisclosed remainder as the working key. Throws
/// std::runtime_error("insufficient data") on an empty sifted set.
QberEstimate estimate_qber(std::span<const PulseRecord> sifted,
                           double sample_fraction, std::uint64_t seed);

/// Record dump: header line, then one comma-separated line per record in
/// PulseRecord field order; booleans as 0/1, basis as R/D, detector as
/// D3/D4/- and eve_guess as 0/1/- when absent. LF line endings.
std::string record_header();
void write_records(std::ostream& os, std::span<const PulseRecord> records);

}  // namespace kerrtap
