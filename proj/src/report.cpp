#include "kerrtap/report.hpp"

#include <cstdio>
#include <sstream>

namespace kerrtap {

OutputRow evaluate_point(double theta, double phi, double alpha) {
  OutputRow row;
  row.theta = theta;
  row.phi = phi;
  row.alpha = alpha;
  row.table = closed_form_table(theta, phi);
  row.rates = attack_error_rates(row.table, alpha);
  row.metrics = channel_metrics(theta, phi, alpha);
  return row;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

// Minimal flat-object JSON writer; key order is insertion order and
// numbers keep 17 significant digits, so identical inputs serialize to
// identical bytes.
class JsonObject {
 public:
  JsonObject& field(const char* key, double value) {
    return raw(key, format_double(value));
  }
  JsonObject& field(const char* key, std::uint64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonObject& field(const char* key, bool value) {
    return raw(key, value ? "true" : "false");
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  JsonObject& raw(const char* key, const std::string& value) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + std::string(key) + "\":" + value;
    return *this;
  }
  std::string body_;
};

}  // namespace

std::string csv_header() {
  return "theta,phi,alpha,p3_uu,p4_uu,p3_uv,p4_uv,p3_vu,p4_vu,p3_vv,p4_vv,"
         "q_ae,q_ab,q_eb,i_ae,i_ab,i_eb,unsafe";
}

std::string to_csv(const OutputRow& row) {
  std::string line;
  const double columns[] = {
      row.theta,        row.phi,          row.alpha,       row.table.p3_uu,
      row.table.p4_uu,  row.table.p3_uv,  row.table.p4_uv, row.table.p3_vu,
      row.table.p4_vu,  row.table.p3_vv,  row.table.p4_vv, row.rates.q_ae,
      row.rates.q_ab,   row.rates.q_eb,   row.metrics.i_ae, row.metrics.i_ab,
      row.metrics.i_eb};
  for (double v : columns) {
    line += format_double(v);
    line += ',';
  }
  line += row.metrics.unsafe ? '1' : '0';
  return line;
}

std::string to_json(const OutputRow& row) {
  return JsonObject()
      .field("theta", row.theta)
      .field("phi", row.phi)
      .field("alpha", row.alpha)
      .field("p3_uu", row.table.p3_uu)
      .field("p4_uu", row.table.p4_uu)
      .field("p3_uv", row.table.p3_uv)
      .field("p4_uv", row.table.p4_uv)
      .field("p3_vu", row.table.p3_vu)
      .field("p4_vu", row.table.p4_vu)
      .field("p3_vv", row.table.p3_vv)
      .field("p4_vv", row.table.p4_vv)
      .field("q_ae", row.rates.q_ae)
      .field("q_ab", row.rates.q_ab)
      .field("q_eb", row.rates.q_eb)
      .field("i_ae", row.metrics.i_ae)
      .field("i_ab", row.metrics.i_ab)
      .field("i_eb", row.metrics.i_eb)
      .field("unsafe", row.metrics.unsafe)
      .str();
}

std::string to_json(const RunStats& stats) {
  return JsonObject()
      .field("n_sifted", stats.n_sifted)
      .field("qber_estimate", stats.qber_estimate)
      .field("qber_true", stats.qber_true)
      .field("eve_accuracy_on_sifted", stats.eve_accuracy_on_sifted)
      .field("qber_rectilinear", stats.qber_rectilinear)
      .field("qber_diagonal", stats.qber_diagonal)
      .field("seed", stats.seed)
      .str();
}

std::string to_text(const OutputRow& row) {
  std::ostringstream os;
  char line[160];

  std::snprintf(line, sizeof(line),
                "theta = %.10g rad   phi = %.10g rad   alpha = %.10g\n",
                row.theta, row.phi, row.alpha);
  os << line;

  os << "\njoint probabilities per intercepted pulse (rows sum to 1)\n";
  os << "  sent  measured      D3          D4\n";
  const struct {
    const char* sent;
    const char* measured;
    double d3, d4;
  } rows[] = {
      {"u", "u", row.table.p3_uu, row.table.p4_uu},
      {"u", "v", row.table.p3_uv, row.table.p4_uv},
      {"v", "u", row.table.p3_vu, row.table.p4_vu},
      {"v", "v", row.table.p3_vv, row.table.p4_vv},
  };
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "  %-5s %-8s %10.6f  %10.6f\n", r.sent,
                  r.measured, r.d3, r.d4);
    os << line;
  }

  std::snprintf(line, sizeof(line),
                "\nerror rates: q_ae = %.6f   q_eb = %.6f   "
                "q_ab = %.6f (%.6f per intercept)\n",
                row.rates.q_ae, row.rates.q_eb, row.rates.q_ab,
                row.rates.q_ab_per_intercept);
  os << line;
  std::snprintf(line, sizeof(line),
                "mutual information [bits/sifted pulse]: i_ae = %.6f   "
                "i_ab = %.6f   i_eb = %.6f\n",
                row.metrics.i_ae, row.metrics.i_ab, row.metrics.i_eb);
  os << line;
  os << "verdict: " << (row.metrics.unsafe ? "UNSAFE" : "safe")
     << " (unsafe means i_ab <= min(i_ae, i_eb))\n";
  return os.str();
}

}  // namespace kerrtap
