#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace kerrtap {

using Complex = std::complex<double>;

/// Photon polarization. The transmitted qubit lives in span{|H>, |V>}.
enum class Pol : std::uint8_t { H = 0, V = 1 };

/// Probe path/detector mode. The probe photon's polarization is fixed
/// (vertical), so only its path needs to be tracked: the interferometer
/// input, the two arms, and the two output detectors.
enum class ProbeMode : std::uint8_t { In, Arm1, Arm2, D3, D4 };

/// Which probe modes are active. A state is always a superposition over
/// polarization x (the modes of exactly one stage): none before the probe
/// is attached, {In} at the interferometer input, {Arm1, Arm2} between the
/// beam splitters, {D3, D4} after the second one.
enum class Stage : std::uint8_t { Bare, Input, Arms, Detectors };

struct BasisLabel {
  Pol polarization;
  ProbeMode probe_mode;  // meaningful only when the state carries a probe
};

/// Normalized amplitude vector over polarization x probe-mode labels,
/// dense storage (the dimension never exceeds 4). Immutable after
/// construction; all circuit elements are pure functions returning new
/// states.
class PureState {
 public:
  /// Slot layout: index = pol + 2*slot, where slot 0/1 are the stage's
  /// modes in declaration order (Bare and Input use slot 0 only).
  /// Amplitudes must be finite, land only on active slots, and have
  /// squared magnitudes summing to 1 within 1e-12.
  PureState(Stage stage, const std::array<Complex, 4>& amps);

  Stage stage() const { return stage_; }
  bool has_probe() const { return stage_ != Stage::Bare; }

  Complex amplitude(Pol p) const;               // Bare states
  Complex amplitude(Pol p, ProbeMode m) const;  // probe-carrying states

  double norm_sq() const;

  /// <this|other>; both states must be at the same stage.
  Complex inner_product(const PureState& other) const;

  const std::array<Complex, 4>& amplitudes() const { return amps_; }

  /// The active polarization x mode labels with their amplitudes, slot
  /// order. Probe-carrying states only; a bare qubit's basis is just
  /// {H, V} via amplitude(Pol).
  std::vector<std::pair<BasisLabel, Complex>> labeled_amplitudes() const;

 private:
  Stage stage_;
  std::array<Complex, 4> amps_;
};

/// cos(theta)|H> + sin(theta)|V>, probe-free. theta in radians; a
/// polarization direction, so theta and theta+pi describe the same ray.
PureState make_qubit(double theta);

/// Tensor the qubit with the probe photon at the interferometer input.
PureState attach_probe(const PureState& qubit);

/// First 50:50 beam splitter: |In> -> (|Arm1> + i|Arm2>)/sqrt(2).
PureState apply_bs1(const PureState& state);

/// Cross-Kerr cell on arm 1: the amplitude of every |V> x |Arm1> label is
/// multiplied by e^{i phi}; everything else passes through.
PureState apply_kerr(const PureState& state, double phi);

/// Second 50:50 beam splitter: |Arm1> -> (i|D3> + |D4>)/sqrt(2),
/// |Arm2> -> (|D3> + i|D4>)/sqrt(2).
PureState apply_bs2(const PureState& state);

/// Joint Born-rule probabilities of (Bob outcome, probe detector) for a
/// state at the detector stage. Bob outcome u is the state at angle
/// bob_basis, v the orthogonal one (cos|V> - sin|H>).
struct JointProbabilities {
  double u_d3 = 0.0;
  double u_d4 = 0.0;
  double v_d3 = 0.0;
  double v_d4 = 0.0;

  double sum() const { return u_d3 + u_d4 + v_d3 + v_d4; }
};

JointProbabilities joint_distribution(const PureState& state,
                                      double bob_basis);

}  // namespace kerrtap
