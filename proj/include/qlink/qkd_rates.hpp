#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlink/channel.hpp"

namespace qlink::qkd {

// Per-pulse rate accounting for a QKD link. All rates share the same pulse clock:
// input_rate_bps pulses/s, each carrying one source bit.
struct RateReport {
  double kappa = 0.0;
  double rate_per_pulse = 0.0;            // R = log2(1/(1-kappa)), bit/pulse
  double arrival_rate = 0.0;              // R_S = kappa
  double effective_rate_per_pulse = 0.0;  // R_E = R_S * R
  double input_rate_bps = 0.0;
  double output_rate_bps = 0.0;
};

/// Secret-key capacity of the pure-loss channel, log2(1/(1-kappa)) bit/pulse.
/// The logarithm is base 2: its small-kappa form is kappa/ln 2 ~ 1.44 kappa.
/// Throws DomainError unless 0 < kappa < 1.
double qkd_rate_bound(double kappa);

/// Effective key throughput once pulse survival is multiplied in.
RateReport qkd_effective_rate(const channel::ChannelParams& channel, double input_rate_bps);

struct RateTableRow {
  double length_km = 0.0;
  std::optional<RateReport> report;  // empty when the row is out of domain
  std::string error;
};

/// Sweep over fiber lengths. Rows where the bound is undefined (kappa = 1) are kept
/// and flagged rather than aborting the sweep.
std::vector<RateTableRow> qkd_rate_table(std::span<const double> lengths_km,
                                         double loss_db_per_km, double input_rate_bps);

}  // namespace qlink::qkd
