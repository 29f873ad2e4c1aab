#include "kerrtap/protocol.hpp"

#include <array>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>

#include "kerrtap/rng.hpp"
#include "kerrtap/state.hpp"

namespace kerrtap {

namespace {

constexpr double kPi = std::numbers::pi;

// Each pulse owns this many consecutive draws of the master SplitMix64
// sequence; at most 6 are consumed (basis, bit, bob basis, intercept,
// outcome, flip).
constexpr std::uint64_t kDrawsPerPulse = 8;

// Salt for the QBER-disclosure stream; keeps it off every pulse block.
constexpr std::uint64_t kDiscloseSalt = 0xd1b54a32d192ed03ull;

double lab_angle(Basis basis, std::uint8_t bit) {
  const double base = basis == Basis::Rectilinear ? 0.0 : kPi / 4;
  return base + bit * (kPi / 2);
}

// Exact joint distributions for the 8 (alice basis, alice bit, bob basis)
// combinations a run can see, computed once through the probe circuit.
// Outcome u is Bob's bit-0 state of his own basis.
class InterceptTables {
 public:
  InterceptTables(double phi, double frame) {
    for (int ab = 0; ab < 2; ++ab) {
      for (int bit = 0; bit < 2; ++bit) {
        for (int bb = 0; bb < 2; ++bb) {
          const double state_angle =
              lab_angle(static_cast<Basis>(ab), static_cast<std::uint8_t>(bit)) -
              frame;
          const double bob_angle =
              lab_angle(static_cast<Basis>(bb), 0) - frame;
          const PureState out = apply_bs2(apply_kerr(
              apply_bs1(attach_probe(make_qubit(state_angle))), phi));
          tables_[index(ab, bit, bb)] = joint_distribution(out, bob_angle);
        }
      }
    }
  }

  const JointProbabilities& at(Basis alice_basis, std::uint8_t alice_bit,
                               Basis bob_basis) const {
    return tables_[index(static_cast<int>(alice_basis), alice_bit,
                         static_cast<int>(bob_basis))];
  }

 private:
  static int index(int ab, int bit, int bb) { return (ab * 2 + bit) * 2 + bb; }
  std::array<JointProbabilities, 8> tables_{};
};

struct Tally {
  std::uint64_t sifted = 0;
  std::uint64_t sift_errors = 0;
  std::uint64_t sifted_rect = 0;
  std::uint64_t errors_rect = 0;
  std::uint64_t sifted_diag = 0;
  std::uint64_t errors_diag = 0;
  std::uint64_t intercepted_sifted = 0;
  std::uint64_t eve_correct = 0;

  Tally& operator+=(const Tally& o) {
    sifted += o.sifted;
    sift_errors += o.sift_errors;
    sifted_rect += o.sifted_rect;
    errors_rect += o.errors_rect;
    sifted_diag += o.sifted_diag;
    errors_diag += o.errors_diag;
    intercepted_sifted += o.intercepted_sifted;
    eve_correct += o.eve_correct;
    return *this;
  }
};

void validate(const SimConfig& c) {
  if (c.n_pulses < 1) {
    throw std::invalid_argument("run_bb84: n_pulses must be >= 1");
  }
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) {
    throw std::invalid_argument("run_bb84: alpha must be in [0, 1]");
  }
  if (!(c.channel_flip_rate >= 0.0 && c.channel_flip_rate <= 1.0)) {
    throw std::invalid_argument("run_bb84: channel_flip_rate must be in [0, 1]");
  }
  if (!(c.sample_fraction > 0.0 && c.sample_fraction <= 1.0)) {
    throw std::invalid_argument("run_bb84: sample_fraction must be in (0, 1]");
  }
  if (!std::isfinite(c.phi) || !std::isfinite(c.eve_frame_angle)) {
    throw std::invalid_argument("run_bb84: angles must be finite");
  }
  if (c.n_chunks < 1 || c.n_chunks > 1024) {
    throw std::invalid_argument("run_bb84: n_chunks must be in [1, 1024]");
  }
}

PulseRecord simulate_pulse(const SimConfig& config,
                           const InterceptTables& tables,
                           std::uint64_t pulse_index) {
  SplitMix64 rng(config.seed, pulse_index * kDrawsPerPulse);

  PulseRecord rec;
  rec.alice_basis = rng.next_bool() ? Basis::Diagonal : Basis::Rectilinear;
  rec.alice_bit = rng.next_bool() ? 1 : 0;
  rec.bob_basis = rng.next_bool() ? Basis::Diagonal : Basis::Rectilinear;
  rec.intercepted = rng.next_double() < config.alpha;

  if (rec.intercepted) {
    const JointProbabilities& jp =
        tables.at(rec.alice_basis, rec.alice_bit, rec.bob_basis);
    const double r = rng.next_double();
    // fixed cell order (u,D3), (u,D4), (v,D3), (v,D4); last catches roundoff
    bool bob_u;
    Detector det;
    if (r < jp.u_d3) {
      bob_u = true;
      det = Detector::D3;
    } else if (r < jp.u_d3 + jp.u_d4) {
      bob_u = true;
      det = Detector::D4;
    } else if (r < jp.u_d3 + jp.u_d4 + jp.v_d3) {
      bob_u = false;
      det = Detector::D3;
    } else {
      bob_u = false;
      det = Detector::D4;
    }
    rec.bob_bit = bob_u ? 0 : 1;
    rec.eve_detector = det;
    // u/v of Alice's pair maps to her bit 0/1 once the basis is public.
    rec.eve_guess = eve_decode(det) == SentSymbol::U ? 0 : 1;
  } else {
    const double delta =
        lab_angle(rec.alice_basis, rec.alice_bit) - lab_angle(rec.bob_basis, 0);
    const double p_u = std::cos(delta) * std::cos(delta);
    rec.bob_bit = rng.next_double() < p_u ? 0 : 1;
    if (config.channel_flip_rate > 0.0 &&
        rng.next_double() < config.channel_flip_rate) {
      rec.bob_bit ^= 1;
    }
  }

  rec.sifted = rec.alice_basis == rec.bob_basis;
  return rec;
}

Tally run_chunk(const SimConfig& config, const InterceptTables& tables,
                std::uint64_t begin, std::uint64_t end,
                std::span<PulseRecord> records) {
  Tally tally;
  for (std::uint64_t i = begin; i < end; ++i) {
    const PulseRecord rec = simulate_pulse(config, tables, i);
    records[i] = rec;
    if (!rec.sifted) continue;
    const bool error = rec.alice_bit != rec.bob_bit;
    tally.sifted += 1;
    tally.sift_errors += error;
    if (rec.alice_basis == Basis::Rectilinear) {
      tally.sifted_rect += 1;
      tally.errors_rect += error;
    } else {
      tally.sifted_diag += 1;
      tally.errors_diag += error;
    }
    if (rec.intercepted) {
      tally.intercepted_sifted += 1;
      tally.eve_correct += *rec.eve_guess == rec.alice_bit;
    }
  }
  return tally;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

RunResult run_bb84(const SimConfig& config) {
  validate(config);
  const InterceptTables tables(config.phi, config.eve_frame_angle);

  RunResult result;
  result.records.resize(config.n_pulses);

  const std::uint64_t n = config.n_pulses;
  const std::uint64_t n_chunks = std::min<std::uint64_t>(config.n_chunks, n);
  const std::uint64_t chunk_size = (n + n_chunks - 1) / n_chunks;

  Tally total;
  if (n_chunks == 1) {
    total = run_chunk(config, tables, 0, n, result.records);
  } else {
    std::vector<std::future<Tally>> futures;
    futures.reserve(n_chunks);
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      const std::uint64_t begin = c * chunk_size;
      const std::uint64_t end = std::min(n, begin + chunk_size);
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        return run_chunk(config, tables, begin, end,
                         std::span<PulseRecord>(result.records));
      }));
    }
    for (auto& f : futures) total += f.get();  // chunk order; sums commute anyway
  }

  RunStats& stats = result.stats;
  stats.seed = config.seed;
  stats.n_sifted = total.sifted;
  stats.qber_true = ratio(total.sift_errors, total.sifted);
  stats.qber_rectilinear = ratio(total.errors_rect, total.sifted_rect);
  stats.qber_diagonal = ratio(total.errors_diag, total.sifted_diag);
  stats.eve_accuracy_on_sifted =
      ratio(total.eve_correct, total.intercepted_sifted);

  if (total.sifted > 0) {
    const std::vector<PulseRecord> sifted = sift(result.records);
    stats.qber_estimate =
        estimate_qber(sifted, config.sample_fraction,
                      SplitMix64::mix(config.seed ^ kDiscloseSalt))
            .estimate;
  }
  return result;
}

std::vector<PulseRecord> sift(const std::vector<PulseRecord>& records) {
  std::vector<PulseRecord> kept;
  for (const PulseRecord& r : records) {
    if (r.sifted) kept.push_back(r);
  }
  return kept;
}

QberEstimate estimate_qber(std::span<const PulseRecord> sifted,
                           double sample_fraction, std::uint64_t seed) {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw std::invalid_argument(
        "estimate_qber: sample_fraction must be in (0, 1]");
  }
  if (sifted.empty()) {
    throw std::runtime_error("estimate_qber: insufficient data (no sifted pulses)");
  }

  SplitMix64 rng(seed);
  QberEstimate result;
  std::uint64_t disclosed = 0;
  std::uint64_t mismatched = 0;
  for (const PulseRecord& r : sifted) {
    if (rng.next_double() < sample_fraction) {
      disclosed += 1;
      mismatched += r.alice_bit != r.bob_bit;
    } else {
      result.alice_key.push_back(r.alice_bit);
      result.bob_key.push_back(r.bob_bit);
    }
  }
  result.estimate = ratio(mismatched, disclosed);
  return result;
}

namespace {

const char* basis_token(Basis b) {
  return b == Basis::Rectilinear ? "R" : "D";
}

}  // namespace

std::string record_header() {
  return "alice_basis,alice_bit,intercepted,eve_detector,eve_guess,"
         "bob_basis,bob_bit,sifted";
}

void write_records(std::ostream& os, std::span<const PulseRecord> records) {
  os << record_header() << '\n';
  for (const PulseRecord& r : records) {
    os << basis_token(r.alice_basis) << ',' << int(r.alice_bit) << ','
       << int(r.intercepted) << ',';
    if (r.eve_detector) {
      os << (*r.eve_detector == Detector::D3 ? "D3" : "D4");
    } else {
      os << '-';
    }
    os << ',';
    if (r.eve_guess) {
      os << int(*r.eve_guess);
    } else {
      os << '-';
    }
    os << ',' << basis_token(r.bob_basis) << ',' << int(r.bob_bit) << ','
       << int(r.sifted) << '\n';
  }
}

}  // namespace kerrtap
