#pragma once

#include <string>

#include "kerrtap/info.hpp"
#include "kerrtap/protocol.hpp"
#include "kerrtap/tap.hpp"

namespace kerrtap {

/// One fully evaluated parameter point; everything the CLI prints comes
/// straight from the producing modules.
struct OutputRow {
  double theta = 0.0;
  double phi = 0.0;
  double alpha = 0.0;
  ProbabilityTable table;
  AttackErrorRates rates;
  ChannelMetrics metrics;
};

OutputRow evaluate_point(double theta, double phi, double alpha);

/// "%.17g": enough digits to round-trip any double.
std::string format_double(double value);

/// Stable CSV column contract:
/// theta,phi,alpha,p3_uu,p4_uu,p3_uv,p4_uv,p3_vu,p4_vu,p3_vv,p4_vv,
/// q_ae,q_ab,q_eb,i_ae,i_ab,i_eb,unsafe
std::string csv_header();
std::string to_csv(const OutputRow& row);

/// Flat single-line JSON objects, full precision, fixed key order.
std::string to_json(const OutputRow& row);
std::string to_json(const RunStats& stats);

/// Human-readable block for the analyze command.
std::string to_text(const OutputRow& row);

}  // namespace kerrtap
