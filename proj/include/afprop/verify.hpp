#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace afprop {

// A measured property: the worst sample is compared with the threshold.
struct VerifyCheck {
  std::string name;
  std::string relation;  // "<=", "<", ">=" or ">"
  double worst = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;
  bool pass() const;
};

// Suite names in acceptance order.
const std::vector<std::string>& verify_suites();

// Throws ValidationError for an unknown suite.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed = 0);

nlohmann::json to_json(const VerifyReport& r);

// The failing check furthest past its threshold, or nullptr.
const VerifyCheck* worst_offender(const VerifyReport& r);

}  // namespace afprop
