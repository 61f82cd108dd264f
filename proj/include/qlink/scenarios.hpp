#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlink/channel.hpp"

namespace qlink::scenarios {

struct AesQkdScenario {
  std::uint32_t key_bits = 256;
  double key_rate_bps = 0.0;
  double data_rate_bps = 0.0;
};

struct OtpScenario {
  double data_volume_bits = 0.0;
  double key_rate_bps = 0.0;
  double link_rate_bps = 0.0;
};

enum class ScenarioKind { AesQkd, Otp, Qec };

std::string_view to_string(ScenarioKind kind);

struct ScenarioReport {
  ScenarioKind kind = ScenarioKind::AesQkd;
  // Rekey interval for AES+QKD, key accumulation time for OTP, 0 for QEC.
  double key_wait_s = 0.0;
  double transmit_time_s = 0.0;  // OTP only
  double exposed_ciphertext_bits = 0.0;
  // Fraction of wall-clock time the link carries data. Derived metric.
  double duty_cycle = 1.0;
  // Sustained data throughput delivered to the user.
  double throughput_bps = 0.0;
  // QEC only: coherent-state regime bookkeeping.
  double received_photons = 0.0;
  double arrival_probability = 1.0;
  std::vector<std::string> notes;
};

ScenarioReport aes_qkd_report(const AesQkdScenario& s);
ScenarioReport otp_report(const OtpScenario& s);

inline constexpr double kQecRegimeMinPhotons = 10.0;  // kappa |alpha|^2 floor
inline constexpr double kConventionalPhotons = 1e6;   // |alpha|^2 of a 1 Gbit/s optical link

/// Quantum enigma cipher on a coherent carrier. Output rate equals input rate.
/// Without an explicit |alpha|^2 the transmitter is sized to max(1e6, 10/kappa).
ScenarioReport qec_report(const channel::ChannelParams& channel, double input_rate_bps,
                          std::optional<double> mean_photon_number = std::nullopt);

struct RequirementCheck {
  bool data_speed_ok = false;     // 1..100 Gbit/s
  bool distance_ok = false;       // 1000..10000 km
  bool symmetric_key_ok = false;  // scheme is a symmetric-key cipher
  std::string brute_force_note;

  bool all_ok() const { return data_speed_ok && distance_ok && symmetric_key_ok; }
};

inline constexpr double kMinDataSpeedBps = 1e9;
inline constexpr double kMaxDataSpeedBps = 1e11;
inline constexpr double kMinDistanceKm = 1000.0;
inline constexpr double kMaxDistanceKm = 10000.0;

RequirementCheck check_requirements(double rate_bps, double distance_km, std::string_view scheme_name);

// "1.0e8 s ≈ 3.2 years"
std::string human_duration(double seconds);

}  // namespace qlink::scenarios
