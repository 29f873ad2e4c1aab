#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kerrtap/info.hpp"
#include "kerrtap/protocol.hpp"
#include "kerrtap/tap.hpp"

using namespace kerrtap;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_record(const PulseRecord& a, const PulseRecord& b) {
  return a.alice_basis == b.alice_basis && a.alice_bit == b.alice_bit &&
         a.intercepted == b.intercepted && a.eve_detector == b.eve_detector &&
         a.eve_guess == b.eve_guess && a.bob_basis == b.bob_basis &&
         a.bob_bit == b.bob_bit && a.sifted == b.sifted;
}

bool same_stats(const RunStats& a, const RunStats& b) {
  return a.n_sifted == b.n_sifted && a.qber_estimate == b.qber_estimate &&
         a.qber_true == b.qber_true &&
         a.eve_accuracy_on_sifted == b.eve_accuracy_on_sifted &&
         a.qber_rectilinear == b.qber_rectilinear &&
         a.qber_diagonal == b.qber_diagonal && a.seed == b.seed;
}

double basis_angle(Basis b) { return b == Basis::Rectilinear ? 0.0 : kPi / 4; }

// Closed-form per-intercept error and Eve error for one basis in a frame.
AttackErrorRates basis_rates(Basis b, double phi, double frame) {
  return attack_error_rates(closed_form_table(basis_angle(b) - frame, phi), 1.0);
}

double binom_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

std::vector<PulseRecord> synthetic_sifted(const std::vector<int>& alice,
                                          const std::vector<int>& bob) {
  std::vector<PulseRecord> records;
  for (std::size_t i = 0; i < alice.size(); ++i) {
    PulseRecord r{};
    r.alice_basis = Basis::Rectilinear;
    r.bob_basis = Basis::Rectilinear;
    r.alice_bit = static_cast<std::uint8_t>(alice[i]);
    r.bob_bit = static_cast<std::uint8_t>(bob[i]);
    r.intercepted = false;
    r.sifted = true;
    records.push_back(r);
  }
  return records;
}

}  // namespace

TEST_CASE("identical configs give bit-identical runs") {
  SimConfig config;
  config.n_pulses = 5000;
  config.alpha = 0.3;
  config.phi = kPi;
  config.seed = 77;

  const RunResult a = run_bb84(config);
  const RunResult b = run_bb84(config);
  CHECK(same_stats(a.stats, b.stats));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(same_record(a.records[i], b.records[i]));
  }
}

TEST_CASE("any chunk plan reproduces the single-threaded run") {
  SimConfig config;
  config.n_pulses = 10007;  // not divisible by the chunk counts
  config.alpha = 0.6;
  config.phi = 0.8 * kPi;
  config.seed = 1234;

  config.n_chunks = 1;
  const RunResult serial = run_bb84(config);
  for (unsigned chunks : {3u, 4u, 8u, 64u}) {
    config.n_chunks = chunks;
    const RunResult chunked = run_bb84(config);
    CHECK(same_stats(serial.stats, chunked.stats));
    REQUIRE(serial.records.size() == chunked.records.size());
    bool all_same = true;
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
      all_same = all_same && same_record(serial.records[i], chunked.records[i]);
    }
    CHECK(all_same);
  }
}

TEST_CASE("no attack and no noise make a clean half-length key") {
  SimConfig config;
  config.n_pulses = 100000;
  config.alpha = 0.0;
  config.seed = 9;

  const RunResult result = run_bb84(config);
  CHECK(result.stats.qber_true == 0.0);
  CHECK(result.stats.qber_estimate == 0.0);

  const double sigma = std::sqrt(config.n_pulses * 0.25);
  CHECK(std::abs(static_cast<double>(result.stats.n_sifted) -
                 config.n_pulses * 0.5) <= 4 * sigma);

  // Alice's and Bob's working keys coincide
  const auto sifted = sift(result.records);
  const QberEstimate est = estimate_qber(sifted, 0.5, 4242);
  CHECK(est.estimate == 0.0);
  CHECK(est.alice_key == est.bob_key);
  CHECK_FALSE(est.alice_key.empty());
}

TEST_CASE("record fields respect the interception and sifting invariants") {
  SimConfig config;
  config.n_pulses = 20000;
  config.alpha = 0.4;
  config.phi = kPi;
  config.seed = 31;

  const RunResult result = run_bb84(config);
  std::size_t n_intercepted = 0;
  for (const PulseRecord& r : result.records) {
    CHECK(r.eve_detector.has_value() == r.intercepted);
    CHECK(r.eve_guess.has_value() == r.intercepted);
    CHECK(r.sifted == (r.alice_basis == r.bob_basis));
    n_intercepted += r.intercepted;
  }
  const double sigma = binom_sigma(config.alpha, config.n_pulses);
  CHECK(std::abs(static_cast<double>(n_intercepted) / config.n_pulses -
                 config.alpha) <= 4 * sigma);
}

TEST_CASE("aligned frame reads the rectilinear basis perfectly") {
  SimConfig config;
  config.n_pulses = 50000;
  config.alpha = 1.0;
  config.phi = kPi;
  config.eve_frame_angle = 0.0;
  config.seed = 17;

  const RunResult result = run_bb84(config);
  for (const PulseRecord& r : result.records) {
    if (r.alice_basis != Basis::Rectilinear) continue;
    REQUIRE(r.eve_detector.has_value());
    const Detector expected = r.alice_bit == 0 ? Detector::D3 : Detector::D4;
    CHECK(*r.eve_detector == expected);
    CHECK(*r.eve_guess == r.alice_bit);
  }
}

TEST_CASE("empirical rates converge to the closed-form predictions") {
  int point = 0;
  for (double alpha : {0.5, 1.0}) {
    for (double phi : {kPi / 2, kPi}) {
      for (double frame : {0.0, kPi / 8}) {
        CAPTURE(alpha);
        CAPTURE(phi);
        CAPTURE(frame);

        SimConfig config;
        config.n_pulses = 1000000;
        config.alpha = alpha;
        config.phi = phi;
        config.eve_frame_angle = frame;
        config.seed = 1000 + point++;
        const RunResult result = run_bb84(config);

        const AttackErrorRates rect = basis_rates(Basis::Rectilinear, phi, frame);
        const AttackErrorRates diag = basis_rates(Basis::Diagonal, phi, frame);

        const double expected_qber =
            alpha * 0.5 * (rect.q_ab_per_intercept + diag.q_ab_per_intercept);
        const double n_sifted = static_cast<double>(result.stats.n_sifted);
        CHECK(std::abs(result.stats.qber_true - expected_qber) <=
              4 * binom_sigma(expected_qber, n_sifted) + 1e-12);
        CHECK(std::abs(result.stats.qber_estimate - expected_qber) <=
              4 * binom_sigma(expected_qber, 0.4 * n_sifted) + 1e-12);

        double n_int_sifted = 0;
        double n_sift_rect = 0;
        double n_sift_diag = 0;
        for (const PulseRecord& r : result.records) {
          if (!r.sifted) continue;
          n_int_sifted += r.intercepted;
          if (r.alice_basis == Basis::Rectilinear) {
            n_sift_rect += 1;
          } else {
            n_sift_diag += 1;
          }
        }
        const double expected_accuracy = 1.0 - 0.5 * (rect.q_ae + diag.q_ae);
        CHECK(std::abs(result.stats.eve_accuracy_on_sifted - expected_accuracy) <=
              4 * binom_sigma(expected_accuracy, n_int_sifted) + 1e-12);

        // sifting keeps about half of the pulses
        CHECK(std::abs(n_sifted / config.n_pulses - 0.5) <=
              4 * binom_sigma(0.5, config.n_pulses));

        if (frame == 0.0 && alpha == 1.0 && phi == kPi) {
          // aligned frame: the rectilinear basis is error-free, the
          // diagonal one is scrambled
          CHECK(result.stats.qber_rectilinear == 0.0);
          CHECK(std::abs(result.stats.qber_diagonal - 0.5) <=
                4 * binom_sigma(0.5, n_sift_diag));
        }
        if (frame == kPi / 8) {
          // bisecting frame: both bases degrade identically
          const double q_rect = alpha * rect.q_ab_per_intercept;
          const double sigma_diff =
              std::sqrt(binom_sigma(q_rect, n_sift_rect) *
                            binom_sigma(q_rect, n_sift_rect) +
                        binom_sigma(q_rect, n_sift_diag) *
                            binom_sigma(q_rect, n_sift_diag));
          CHECK(std::abs(result.stats.qber_rectilinear -
                         result.stats.qber_diagonal) <= 4 * sigma_diff);
        }
      }
    }
  }
}

TEST_CASE("sift keeps exactly the matching-basis records in order") {
  std::vector<PulseRecord> records = synthetic_sifted({0, 1, 0}, {0, 1, 1});
  records[1].bob_basis = Basis::Diagonal;
  records[1].sifted = false;
  const auto kept = sift(records);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].alice_bit == 0);
  CHECK(kept[1].alice_bit == 0);
  CHECK(kept[1].bob_bit == 1);

  CHECK(sift({}).empty());
}

TEST_CASE("qber estimation on synthetic keys") {
  const std::vector<int> zeros(1000, 0);
  const std::vector<int> ones(1000, 1);

  const auto identical = synthetic_sifted(zeros, zeros);
  const QberEstimate match = estimate_qber(identical, 0.5, 7);
  CHECK(match.estimate == 0.0);
  CHECK(match.alice_key.size() == match.bob_key.size());
  CHECK(match.alice_key.size() < 1000);  // some bits were disclosed

  const auto inverted = synthetic_sifted(zeros, ones);
  CHECK(estimate_qber(inverted, 0.5, 7).estimate == 1.0);

  // fully disclosed key: exact rate, empty remainder
  std::vector<int> bob(1000, 0);
  for (std::size_t i = 0; i < bob.size(); i += 4) bob[i] = 1;
  const QberEstimate full = estimate_qber(synthetic_sifted(zeros, bob), 1.0, 7);
  CHECK(full.estimate == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(full.alice_key.empty());
  CHECK(full.bob_key.empty());
}

TEST_CASE("qber estimate concentrates around the true rate") {
  const std::size_t n = 400000;
  std::vector<int> alice(n, 0);
  std::vector<int> bob(n, 0);
  for (std::size_t i = 0; i < n; i += 4) bob[i] = 1;  // true rate exactly 1/4
  const QberEstimate est = estimate_qber(synthetic_sifted(alice, bob), 0.5, 99);
  CHECK(std::abs(est.estimate - 0.25) <= 4 * binom_sigma(0.25, 0.5 * n));
}

TEST_CASE("qber estimation rejects bad inputs") {
  const std::vector<PulseRecord> empty;
  CHECK_THROWS_AS(estimate_qber(empty, 0.5, 1), std::runtime_error);
  const auto records = synthetic_sifted({0}, {0});
  CHECK_THROWS_AS(estimate_qber(records, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_qber(records, 1.5, 1), std::invalid_argument);
}

TEST_CASE("config validation") {
  SimConfig config;
  config.n_pulses = 0;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
  config.n_pulses = 10;
  config.alpha = 1.2;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
  config.alpha = 0.5;
  config.channel_flip_rate = -0.1;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
  config.channel_flip_rate = 0.0;
  config.sample_fraction = 0.0;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
  config.sample_fraction = 0.5;
  config.n_chunks = 0;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
  config.n_chunks = 4096;
  CHECK_THROWS_AS(run_bb84(config), std::invalid_argument);
}

TEST_CASE("background noise raises the error rate on untouched pulses") {
  SimConfig config;
  config.n_pulses = 200000;
  config.alpha = 0.0;
  config.channel_flip_rate = 0.05;
  config.seed = 55;

  const RunResult result = run_bb84(config);
  const double n_sifted = static_cast<double>(result.stats.n_sifted);
  CHECK(std::abs(result.stats.qber_true - 0.05) <=
        4 * binom_sigma(0.05, n_sifted));
}

TEST_CASE("record dump format") {
  SimConfig config;
  config.n_pulses = 200;
  config.alpha = 0.5;
  config.phi = kPi;
  config.seed = 3;

  const RunResult result = run_bb84(config);
  std::ostringstream os;
  write_records(os, result.records);

  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == record_header());
  CHECK(line ==
        "alice_basis,alice_bit,intercepted,eve_detector,eve_guess,"
        "bob_basis,bob_bit,sifted");

  std::size_t rows = 0;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::string token;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(token);
        token.clear();
      } else {
        token += ch;
      }
    }
    fields.push_back(token);
    REQUIRE(fields.size() == 8);

    const PulseRecord& r = result.records[rows];
    CHECK(fields[0] == (r.alice_basis == Basis::Rectilinear ? "R" : "D"));
    CHECK(fields[1] == std::to_string(int(r.alice_bit)));
    CHECK(fields[2] == (r.intercepted ? "1" : "0"));
    if (r.intercepted) {
      CHECK(fields[3] == (*r.eve_detector == Detector::D3 ? "D3" : "D4"));
      CHECK(fields[4] == std::to_string(int(*r.eve_guess)));
    } else {
      CHECK(fields[3] == "-");
      CHECK(fields[4] == "-");
    }
    CHECK(fields[7] == (r.sifted ? "1" : "0"));
    ++rows;
  }
  CHECK(rows == config.n_pulses);
}
