#include "qlink/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qlink/errors.hpp"

namespace qlink::scenarios {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be > 0");
}

std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::AesQkd: return "aes-qkd";
    case ScenarioKind::Otp: return "otp";
    case ScenarioKind::Qec: return "qec";
  }
  return "unknown";
}

std::string human_duration(double seconds) {
  struct Unit {
    double seconds;
    const char* name;
  };
  static constexpr Unit kUnits[] = {
      {365.25 * 86400.0, "years"}, {86400.0, "days"}, {3600.0, "hours"}, {60.0, "minutes"}};
  // Compact exponent: "1.0e8" rather than "1.0e+08".
  char raw[32];
  std::snprintf(raw, sizeof raw, "%.1e", seconds);
  std::string sci(raw);
  if (const auto e = sci.find('e'); e != std::string::npos) {
    std::string exponent = sci.substr(e + 1);
    const bool negative = exponent.front() == '-';
    exponent = exponent.substr(exponent.find_first_not_of("+-0") == std::string::npos
                                   ? exponent.size() - 1
                                   : exponent.find_first_not_of("+-0"));
    sci = sci.substr(0, e + 1) + (negative ? "-" : "") + exponent;
  }
  sci += " s";
  for (const auto& u : kUnits) {
    if (seconds >= u.seconds) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s ≈ %.1f %s", sci.c_str(), seconds / u.seconds, u.name);
      return buf;
    }
  }
  return format_g(seconds, 4) + " s";
}

ScenarioReport aes_qkd_report(const AesQkdScenario& s) {
  if (s.key_bits == 0) throw DomainError("key_bits must be > 0");
  require_positive(s.key_rate_bps, "key_rate_bps");
  require_positive(s.data_rate_bps, "data_rate_bps");

  ScenarioReport r;
  r.kind = ScenarioKind::AesQkd;
  r.key_wait_s = static_cast<double>(s.key_bits) / s.key_rate_bps;
  r.exposed_ciphertext_bits = s.data_rate_bps * r.key_wait_s;
  r.duty_cycle = 1.0;
  r.throughput_bps = s.data_rate_bps;
  r.notes.push_back("rekey interval = key_bits / key_rate = " + format_g(r.key_wait_s, 6) +
                    " s (exact, not rounded)");
  r.notes.push_back("an eavesdropper records " + format_g(r.exposed_ciphertext_bits, 6) +
                    " bits of error-free ciphertext under each key");
  r.notes.push_back("with known plaintext, a brute-force search over " + std::to_string(s.key_bits) +
                    " key bits recovers all data sent under that key (not modelled)");
  return r;
}

ScenarioReport otp_report(const OtpScenario& s) {
  require_positive(s.data_volume_bits, "data_volume_bits");
  require_positive(s.key_rate_bps, "key_rate_bps");
  require_positive(s.link_rate_bps, "link_rate_bps");

  ScenarioReport r;
  r.kind = ScenarioKind::Otp;
  r.key_wait_s = s.data_volume_bits / s.key_rate_bps;
  r.transmit_time_s = s.data_volume_bits / s.link_rate_bps;
  r.duty_cycle = r.transmit_time_s / (r.transmit_time_s + r.key_wait_s);
  r.throughput_bps = s.data_volume_bits / (r.transmit_time_s + r.key_wait_s);
  r.exposed_ciphertext_bits = 0.0;
  r.notes.push_back("key accumulation " + human_duration(r.key_wait_s) + " before each " +
                    format_g(s.data_volume_bits, 6) + "-bit transmission of " +
                    human_duration(r.transmit_time_s));
  r.notes.push_back("duty_cycle is a derived metric: transmit / (transmit + accumulation)");
  return r;
}

ScenarioReport qec_report(const channel::ChannelParams& channel, double input_rate_bps,
                          std::optional<double> mean_photon_number) {
  require_positive(input_rate_bps, "input_rate_bps");
  const double kappa = channel.transmissivity();
  double photons = 0.0;
  if (mean_photon_number) {
    require_positive(*mean_photon_number, "mean_photon_number");
    photons = *mean_photon_number;
  } else {
    photons = std::max(kConventionalPhotons, kQecRegimeMinPhotons / kappa);
  }

  ScenarioReport r;
  r.kind = ScenarioKind::Qec;
  r.key_wait_s = 0.0;
  r.exposed_ciphertext_bits = 0.0;
  r.duty_cycle = 1.0;
  r.throughput_bps = input_rate_bps;
  r.received_photons = kappa * photons;
  r.arrival_probability = channel::coherent_arrival_probability(kappa, photons);
  r.notes.push_back("no key-buffer bottleneck: output rate equals input rate (R_E = 1)");
  r.notes.push_back("ciphertext on the line is masked by quantum noise; exposure is not comparable to AES");
  if (r.received_photons < kQecRegimeMinPhotons) {
    r.notes.push_back("warning: kappa*|alpha|^2 = " + format_g(r.received_photons, 4) +
                      " is below the coherent-state regime (>= 10); pulses may vanish");
  }
  return r;
}

RequirementCheck check_requirements(double rate_bps, double distance_km, std::string_view scheme_name) {
  RequirementCheck c;
  c.data_speed_ok = rate_bps >= kMinDataSpeedBps && rate_bps <= kMaxDataSpeedBps;
  c.distance_ok = distance_km >= kMinDistanceKm && distance_km <= kMaxDistanceKm;
  if (scheme_name == "qec") {
    c.symmetric_key_ok = true;
    c.brute_force_note =
        "physical randomization gives the eavesdropper a noisy ciphertext; brute force needs the "
        "correct ciphertext (claim, not modelled)";
  } else if (scheme_name == "aes-qkd") {
    c.symmetric_key_ok = true;
    c.brute_force_note = "AES ciphertext is recorded error-free; exhaustive key search applies";
  } else if (scheme_name == "otp") {
    c.symmetric_key_ok = true;
    c.brute_force_note = "one-time pad is information-theoretically secure when key is never reused";
  } else if (scheme_name == "qkd") {
    c.symmetric_key_ok = false;
    c.brute_force_note = "QKD distributes keys only; data security is that of the cipher it rekeys";
  } else {
    c.symmetric_key_ok = false;
    c.brute_force_note = "unknown scheme";
  }
  return c;
}

}  // namespace qlink::scenarios
