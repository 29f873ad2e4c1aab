#include "kerrtap/state.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrtap {

namespace {

constexpr double kNormTolerance = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int index_of(Pol p, int slot) { return static_cast<int>(p) + 2 * slot; }

// Slot a mode occupies at a stage, or -1 when inactive there.
int slot_of(Stage stage, ProbeMode m) {
  switch (stage) {
    case Stage::Bare:
      return -1;
    case Stage::Input:
      return m == ProbeMode::In ? 0 : -1;
    case Stage::Arms:
      if (m == ProbeMode::Arm1) return 0;
      if (m == ProbeMode::Arm2) return 1;
      return -1;
    case Stage::Detectors:
      if (m == ProbeMode::D3) return 0;
      if (m == ProbeMode::D4) return 1;
      return -1;
  }
  return -1;
}

bool stage_uses_slot1(Stage stage) {
  return stage == Stage::Arms || stage == Stage::Detectors;
}

void require_stage(const PureState& s, Stage expected, const char* op) {
  if (s.stage() != expected) {
    throw std::invalid_argument(std::string(op) +
                                ": state is at the wrong circuit stage");
  }
}

}  // namespace

PureState::PureState(Stage stage, const std::array<Complex, 4>& amps)
    : stage_(stage), amps_(amps) {
  double total = 0.0;
  for (int slot = 0; slot < 2; ++slot) {
    for (Pol p : {Pol::H, Pol::V}) {
      const Complex a = amps_[index_of(p, slot)];
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("PureState: non-finite amplitude");
      }
      if (slot == 1 && !stage_uses_slot1(stage_) && a != Complex{}) {
        throw std::invalid_argument(
            "PureState: amplitude on a mode inactive at this stage");
      }
      total += std::norm(a);
    }
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

Complex PureState::amplitude(Pol p) const {
  if (stage_ != Stage::Bare) {
    throw std::invalid_argument(
        "PureState::amplitude(pol): state carries a probe; pass the mode");
  }
  return amps_[index_of(p, 0)];
}

Complex PureState::amplitude(Pol p, ProbeMode m) const {
  const int slot = slot_of(stage_, m);
  if (slot < 0) {
    throw std::invalid_argument(
        "PureState::amplitude: probe mode inactive at this stage");
  }
  return amps_[index_of(p, slot)];
}

double PureState::norm_sq() const {
  double total = 0.0;
  for (const Complex& a : amps_) total += std::norm(a);
  return total;
}

std::vector<std::pair<BasisLabel, Complex>> PureState::labeled_amplitudes()
    const {
  static constexpr std::array<std::array<ProbeMode, 2>, 3> kStageModes{
      {{ProbeMode::In, ProbeMode::In},
       {ProbeMode::Arm1, ProbeMode::Arm2},
       {ProbeMode::D3, ProbeMode::D4}}};
  if (stage_ == Stage::Bare) {
    throw std::invalid_argument(
        "labeled_amplitudes: bare qubit has no probe labels");
  }
  const auto& modes = kStageModes[static_cast<int>(stage_) - 1];
  const int n_slots = stage_uses_slot1(stage_) ? 2 : 1;
  std::vector<std::pair<BasisLabel, Complex>> labels;
  for (int slot = 0; slot < n_slots; ++slot) {
    for (Pol p : {Pol::H, Pol::V}) {
      labels.emplace_back(BasisLabel{p, modes[slot]},
                          amps_[index_of(p, slot)]);
    }
  }
  return labels;
}

Complex PureState::inner_product(const PureState& other) const {
  if (stage_ != other.stage_) {
    throw std::invalid_argument("inner_product: stage mismatch");
  }
  Complex acc{};
  for (int i = 0; i < 4; ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

PureState make_qubit(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("make_qubit: theta must be finite");
  }
  return PureState(Stage::Bare,
                   {Complex{std::cos(theta)}, Complex{std::sin(theta)},
                    Complex{}, Complex{}});
}

PureState attach_probe(const PureState& qubit) {
  if (qubit.has_probe()) {
    throw std::invalid_argument("attach_probe: state already carries a probe");
  }
  // |q> -> |q> (x) |In>; amplitudes are untouched, slot 0 now means In.
  return PureState(Stage::Input, qubit.amplitudes());
}

PureState apply_bs1(const PureState& state) {
  require_stage(state, Stage::Input, "apply_bs1");
  std::array<Complex, 4> out{};
  for (Pol p : {Pol::H, Pol::V}) {
    const Complex a = state.amplitude(p, ProbeMode::In);
    out[index_of(p, 0)] = a * kInvSqrt2;               // Arm1
    out[index_of(p, 1)] = a * Complex{0, kInvSqrt2};   // i * Arm2
  }
  return PureState(Stage::Arms, out);
}

PureState apply_kerr(const PureState& state, double phi) {
  require_stage(state, Stage::Arms, "apply_kerr");
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("apply_kerr: phi must be finite");
  }
  std::array<Complex, 4> out = state.amplitudes();
  out[index_of(Pol::V, 0)] *= std::polar(1.0, phi);  // V on the Kerr arm
  return PureState(Stage::Arms, out);
}

PureState apply_bs2(const PureState& state) {
  require_stage(state, Stage::Arms, "apply_bs2");
  std::array<Complex, 4> out{};
  for (Pol p : {Pol::H, Pol::V}) {
    const Complex a1 = state.amplitude(p, ProbeMode::Arm1);
    const Complex a2 = state.amplitude(p, ProbeMode::Arm2);
    out[index_of(p, 0)] = (Complex{0, 1} * a1 + a2) * kInvSqrt2;  // D3
    out[index_of(p, 1)] = (a1 + Complex{0, 1} * a2) * kInvSqrt2;  // D4
  }
  return PureState(Stage::Detectors, out);
}

JointProbabilities joint_distribution(const PureState& state,
                                      double bob_basis) {
  require_stage(state, Stage::Detectors, "joint_distribution");
  if (!std::isfinite(bob_basis)) {
    throw std::invalid_argument("joint_distribution: bob_basis must be finite");
  }
  const double c = std::cos(bob_basis);
  const double s = std::sin(bob_basis);
  JointProbabilities jp;
  const Complex h3 = state.amplitude(Pol::H, ProbeMode::D3);
  const Complex v3 = state.amplitude(Pol::V, ProbeMode::D3);
  const Complex h4 = state.amplitude(Pol::H, ProbeMode::D4);
  const Complex v4 = state.amplitude(Pol::V, ProbeMode::D4);
  jp.u_d3 = std::norm(c * h3 + s * v3);
  jp.v_d3 = std::norm(c * v3 - s * h3);
  jp.u_d4 = std::norm(c * h4 + s * v4);
  jp.v_d4 = std::norm(c * v4 - s * h4);
  return jp;
}

}  // namespace kerrtap
