#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "afprop/cfrac.hpp"
#include "afprop/lipnorm.hpp"

namespace afprop {

enum class BoundKind { truncation, prefix, two_lipnorm_grid, trace_perturbation, holder, effros_shen_chain, diameter };
std::string to_string(BoundKind k);

// Upper bound on the propinquity realized by an explicit bridge.
struct BridgeBound {
  double value = 0.0;
  BoundKind kind = BoundKind::diameter;
  bool certified = false;
  std::string notes;
  std::map<std::string, double> params;
};

nlohmann::json to_json(const BridgeBound& b);

// beta(n): the level-n truncation is within beta(n) of the limit.
BridgeBound truncation_bound(const LipData& L, std::size_t n);
// max(beta_A(0), beta_B(0)), valid for any pair.
BridgeBound diameter_bound(const BetaSequence& a, const BetaSequence& b);
// beta_A(N) + beta_B(N) when the two towers carry identical data up to level N.
BridgeBound prefix_match_bound(const BuiltTower& a, const BuiltTower& b, std::size_t level);
// 2 d(beta, eta)^k for UHF multiplicity sequences.
BridgeBound uhf_holder_bound(const std::vector<Digit>& beta, const std::vector<Digit>& eta, double k);

inline constexpr std::size_t kMaxGridSamples = 10'000'000;

// Identity-pivot bridge between two Lip-norms on one algebra, certified on a
// lattice over the unit sphere of the mu_1-traceless self-adjoints.
// Throws BudgetError when the lattice would exceed max_samples.
BridgeBound two_lipnorm_bridge_bound(const LipData& L1, const LipData& L2, double h,
                                     std::size_t max_samples = kMaxGridSamples);
// Number of lattice points the grid certificate needs at resolution h.
double two_lipnorm_sample_count(const LipData& L1, double h);

// Same bridge, with sup |L1 - L2| bounded from the trace weights and beta alone.
// Needs identical levels and layouts.
BridgeBound trace_perturbation_bound(const LipData& L1, const LipData& L2);

// Smaller of the two certificates above (the grid only when within budget).
BridgeBound finite_level_bound(const LipData& L1, const LipData& L2, double h,
                               std::size_t max_samples = kMaxGridSamples);

// 2/((F_N)^2 + (F_{N-1})^2)^k with Fibonacci denominators.
double fibonacci_floor(std::size_t level, double k);

// Truncations of the two Effros-Shen towers at a shared level N plus the
// finite-level bridge between them.
BridgeBound effros_shen_chain_bound(double theta, double theta2, double k, std::size_t level, double h,
                                    std::size_t max_samples = kMaxGridSamples);
// Number of leading continued-fraction digits shared by theta and theta2, up to max_depth.
std::size_t shared_prefix(double theta, double theta2, std::size_t max_depth);
// Best chain over levels 1..min(shared prefix, max_level); diameter bound when nothing is shared.
BridgeBound effros_shen_best_chain(double theta, double theta2, double k, double h, std::size_t max_level,
                                   std::size_t max_samples = kMaxGridSamples);

// beta1(N) + beta2(N) + finite-level bridge, for one tower under two weight sequences.
BridgeBound beta_chain_bound(const InductiveTower& tower, const BetaSequence& b1, const BetaSequence& b2,
                             std::size_t level, double h, std::size_t max_samples = kMaxGridSamples);

std::string csv_header(const std::vector<std::string>& param_order);
std::string to_csv_row(const BridgeBound& b, const std::vector<std::string>& param_order);

}  // namespace afprop
