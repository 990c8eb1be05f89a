#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afprop/cantor.hpp"
#include "afprop/cfrac.hpp"
#include "afprop/error.hpp"
#include "afprop/lipnorm.hpp"
#include "afprop/mk.hpp"
#include "afprop/propinquity.hpp"
#include "afprop/random.hpp"
#include "afprop/tower.hpp"
#include "afprop/tower_json.hpp"
#include "afprop/verify.hpp"

using namespace afprop;
using nlohmann::json;

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

struct UsageError : Error {
  using Error::Error;
};

struct TowerArgs {
  std::string kind = "cantor";
  std::string spec;
  std::vector<Digit> digits;
  std::vector<Digit> mult;
  double theta = kPhi;
  double k = 1.0;
  double r = 2.0;
  std::size_t depth = 0;
};

void add_tower_options(CLI::App* cmd, TowerArgs& t, bool positional_kind) {
  if (positional_kind)
    cmd->add_option("kind", t.kind, "effros-shen, uhf or cantor")->check(CLI::IsMember({"effros-shen", "uhf", "cantor"}));
  else
    cmd->add_option("--tower", t.kind, "effros-shen, uhf or cantor")->check(CLI::IsMember({"effros-shen", "uhf", "cantor"}));
  cmd->add_option("--spec", t.spec, "tower spec JSON file");
  cmd->add_option("--digits", t.digits, "continued-fraction digits")->delimiter(',');
  cmd->add_option("--mult", t.mult, "UHF multiplicities")->delimiter(',');
  cmd->add_option("--theta", t.theta, "irrational in (0,1)");
  cmd->add_option("--k", t.k, "beta exponent");
  cmd->add_option("--r", t.r, "Cantor ratio");
  cmd->add_option("--depth", t.depth, "tower depth");
}

BuiltTower build_tower(const TowerArgs& t) {
  if (!t.spec.empty()) {
    std::ifstream in(t.spec);
    if (!in) throw ValidationError("cannot read spec file " + t.spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return tower_from_text(ss.str());
  }
  if (t.kind == "effros-shen") {
    const auto digits = t.digits.empty() ? cf_expand(t.theta, t.depth ? t.depth : 4) : t.digits;
    return effros_shen_tower(digits, t.theta, t.k);
  }
  if (t.kind == "uhf") {
    if (t.mult.empty()) throw UsageError("uhf needs --mult");
    return uhf_tower(t.mult, t.depth ? t.depth : t.mult.size(), t.k);
  }
  if (t.depth == 0) throw UsageError("cantor needs --depth");
  return cantor_tower(t.depth, cantor_beta(t.r, t.depth));
}

json dims_json(const InductiveTower& t) {
  json out = json::array();
  for (const auto& l : t.levels()) out.push_back(l.block_dims());
  return out;
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

int cmd_build(const TowerArgs& t) {
  const auto built = build_tower(t);
  json traces = json::array();
  for (const auto& w : built.tower.traces()) traces.push_back(w.values());
  const auto report = validate(built.tower);
  print({{"label", built.tower.label()},
         {"dims", dims_json(built.tower)},
         {"traces", traces},
         {"beta", built.beta.values()},
         {"validation", report_to_json(report)}});
  return report.ok() ? 0 : 2;
}

BlockElement parse_element(const std::string& name, const LipData& L, std::uint64_t seed) {
  if (name == "unit") return BlockElement::unit(L.algebra());
  if (name == "random") {
    Rng rng(seed);
    return random_self_adjoint(L.algebra(), rng);
  }
  if (name.size() > 1 && name[0] == 'u') {
    if (!is_cantor_tower(L.tower())) throw ValidationError("u<n> elements exist only on Cantor towers");
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      throw UsageError("bad element \"" + name + "\"");
    }
    return u_element(n, L.top());
  }
  throw UsageError("element must be unit, random or u<n>");
}

int cmd_lip(const TowerArgs& t, const std::string& element, std::uint64_t seed) {
  const LipData L(build_tower(t));
  print({{"element", element}, {"lip", lip(L, parse_element(element, L, seed))}});
  return 0;
}

StateVec parse_state(const std::string& name, const LipData& L, Rng& rng) {
  if (name == "trace") return trace_state(L.trace(), L.algebra());
  if (name == "random") return random_state(L.algebra(), rng);
  if (name.rfind("point:", 0) == 0) {
    try {
      return point_state(L.algebra(), std::stoul(name.substr(6)));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad state \"" + name + "\"");
    }
  }
  throw UsageError("state must be trace, random or point:<block>");
}

int cmd_mk(const TowerArgs& t, const std::string& x, const std::string& y, const std::string& phi,
           const std::string& psi, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const BuiltTower built = build_tower(t);
  const LipData L(built);
  json out;
  MkResult r;
  if (!x.empty() || !y.empty()) {
    if (x.empty() || y.empty()) throw UsageError("--x and --y go together");
    if (!is_cantor_tower(built.tower)) throw ValidationError("--x/--y need a Cantor tower");
    const auto px = CantorPoint::parse(x), py = CantorPoint::parse(y);
    r = mk_abelian(L, point_evaluation(px, L.top()), point_evaluation(py, L.top()));
    const auto o = cantor_oracle(px, py, built.beta);
    out = {{"x", x}, {"y", y}, {"oracle", o.value}, {"equal_on_span", o.equal_on_span}};
  } else {
    Rng rng(seed);
    const StateVec a = parse_state(phi, L, rng);
    const StateVec b = parse_state(psi, L, rng);
    r = L.algebra().is_abelian() ? mk_abelian(L, a, b) : mk_general(L, a, b, tol);
    out = {{"phi", phi}, {"psi", psi}};
  }
  out["value"] = r.value();
  out["lower"] = r.lower;
  out["upper"] = r.upper;
  out["method"] = to_string(r.method);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  print(out);
  if (!r.converged) {
    std::cerr << "error: cutting plane did not converge within tolerance\n";
    return 3;
  }
  return 0;
}

struct PairArgs {
  std::vector<Digit> beta, eta;
  double theta = kPhi, theta2 = 0.0, r2 = 0.0, h = 0.05;
  std::size_t level = 0, max_level = 12;
};

std::pair<BuiltTower, BuiltTower> build_pair(const TowerArgs& t, const PairArgs& p) {
  if (t.kind == "uhf") {
    if (p.beta.empty() || p.eta.empty()) throw UsageError("uhf pairs need --beta and --eta");
    const std::size_t d = t.depth ? t.depth : std::min(p.beta.size(), p.eta.size());
    return {uhf_tower(p.beta, d, t.k), uhf_tower(p.eta, d, t.k)};
  }
  if (t.kind == "effros-shen") {
    const std::size_t d = t.depth ? t.depth : 4;
    return {effros_shen_tower(cf_expand(p.theta, d), p.theta, t.k),
            effros_shen_tower(cf_expand(p.theta2, d), p.theta2, t.k)};
  }
  if (t.depth == 0) throw UsageError("cantor needs --depth");
  const double r2 = p.r2 > 0.0 ? p.r2 : t.r;
  return {cantor_tower(t.depth, cantor_beta(t.r, t.depth)), cantor_tower(t.depth, cantor_beta(r2, t.depth))};
}

int cmd_bound(const std::string& kind, const TowerArgs& t, const PairArgs& p) {
  BridgeBound b;
  if (kind == "holder") {
    if (p.beta.empty() || p.eta.empty()) throw UsageError("holder needs --beta and --eta");
    b = uhf_holder_bound(p.beta, p.eta, t.k);
  } else if (kind == "effros-shen-chain") {
    b = effros_shen_best_chain(p.theta, p.theta2, t.k, p.h, p.max_level);
  } else if (kind == "truncation") {
    b = truncation_bound(LipData(build_tower(t)), p.level);
  } else {
    const auto [a, c] = build_pair(t, p);
    if (kind == "prefix") b = prefix_match_bound(a, c, p.level);
    else if (kind == "diameter") b = diameter_bound(a.beta, c.beta);
    else b = finite_level_bound(LipData(a), LipData(c), p.h);
  }
  print(to_json(b));
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> names = suite == "all" ? verify_suites() : std::vector<std::string>{suite};
  json out = json::array();
  int code = 0;
  for (const auto& n : names) {
    const VerifyReport r = run_verify(n, seed);
    out.push_back(to_json(r));
    if (const VerifyCheck* w = worst_offender(r)) {
      std::cerr << "FAIL " << r.suite << ": " << w->name << " worst " << w->worst << " " << w->relation << " "
                << w->threshold << '\n';
      code = 3;
    }
  }
  print(suite == "all" ? out : out[0]);
  return code;
}

int cmd_sweep(const std::string& what, const TowerArgs& t, const PairArgs& p, std::size_t count) {
  std::cout.precision(17);
  if (what == "holder") {
    const std::vector<Digit> base = p.beta.empty() ? std::vector<Digit>(count + 1, 1) : p.beta;
    if (base.size() < count + 1) throw ValidationError("--beta needs at least count + 1 entries");
    const std::vector<std::string> order{"level"};
    std::cout << "shared_prefix,holder," << csv_header(order) << '\n';
    for (std::size_t N = 1; N <= count; ++N) {
      std::vector<Digit> eta = base;
      eta[N] += 1;
      const auto b = prefix_match_bound(uhf_tower(base, N + 1, t.k), uhf_tower(eta, N + 1, t.k), N);
      std::cout << N << ',' << uhf_holder_bound(base, eta, t.k).value << ',' << to_csv_row(b, order) << '\n';
    }
  } else if (what == "effros-shen") {
    const std::vector<std::string> order{"level", "shared_prefix"};
    std::cout << "theta2,distance," << csv_header(order) << '\n';
    for (std::size_t m = 1; m <= count; ++m) {
      const double theta2 = p.theta + std::pow(10.0, -double(m));
      const auto b = effros_shen_best_chain(p.theta, theta2, t.k, p.h, p.max_level);
      std::cout << theta2 << ',' << theta2 - p.theta << ',' << to_csv_row(b, order) << '\n';
    }
  } else {
    if (t.depth == 0) throw UsageError("beta sweep needs --depth");
    const auto beta = cantor_beta(t.r, t.depth);
    const auto tower = cantor_tower(t.depth, beta).tower;
    const std::vector<std::string> order{"level"};
    std::cout << "r2,sup_beta_gap," << csv_header(order) << '\n';
    for (std::size_t j = 1; j <= count; ++j) {
      const double r2 = t.r + std::ldexp(1.0, -int(j));
      const auto bk = cantor_beta(r2, t.depth);
      double gap = 0.0;
      for (std::size_t n = 0; n < beta.size(); ++n) gap = std::max(gap, std::abs(beta[n] - bk[n]));
      BridgeBound b = beta_chain_bound(tower, beta, bk, t.depth, p.h);
      if (const auto d = diameter_bound(beta, bk); d.value < b.value) b = d;
      std::cout << r2 << ',' << gap << ',' << to_csv_row(b, order) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum metrics on AF algebras"};
  app.require_subcommand(1);

  TowerArgs tower;
  PairArgs pair;
  std::string element = "unit", x, y, phi = "trace", psi = "random", kind, suite, sweep;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t count = 8;

  auto* build = app.add_subcommand("build", "construct a tower and print its summary");
  add_tower_options(build, tower, true);

  auto* lipc = app.add_subcommand("lip", "evaluate the Lip-norm");
  add_tower_options(lipc, tower, false);
  lipc->add_option("--element", element, "unit, random or u<n>");
  lipc->add_option("--seed", seed);

  auto* mk = app.add_subcommand("mk", "Monge-Kantorovich distance");
  add_tower_options(mk, tower, false);
  mk->add_option("--x", x, "Cantor point bits");
  mk->add_option("--y", y, "Cantor point bits");
  mk->add_option("--phi", phi, "trace, random or point:<block>");
  mk->add_option("--psi", psi, "trace, random or point:<block>");
  mk->add_option("--tol", tol);
  mk->add_option("--seed", seed);

  auto* bound = app.add_subcommand("bound", "propinquity upper bound");
  bound->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"holder", "truncation", "prefix", "two-lipnorm", "effros-shen-chain", "diameter"}));
  add_tower_options(bound, tower, false);
  bound->add_option("--beta", pair.beta, "UHF multiplicities")->delimiter(',');
  bound->add_option("--eta", pair.eta, "UHF multiplicities")->delimiter(',');
  bound->add_option("--theta2", pair.theta2);
  bound->add_option("--r2", pair.r2);
  bound->add_option("--grid", pair.h, "grid spacing");
  bound->add_option("--level", pair.level);
  bound->add_option("--max-level", pair.max_level);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name or all")->required();
  verify->add_option("--seed", seed);

  auto* sw = app.add_subcommand("sweep", "continuity sweeps as CSV");
  sw->add_option("what", sweep)->required()->check(CLI::IsMember({"holder", "effros-shen", "beta"}));
  add_tower_options(sw, tower, false);
  sw->add_option("--beta", pair.beta, "UHF multiplicities")->delimiter(',');
  sw->add_option("--grid", pair.h, "grid spacing");
  sw->add_option("--max-level", pair.max_level);
  sw->add_option("--count", count);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  pair.theta = tower.theta;
  try {
    if (*build) return cmd_build(tower);
    if (*lipc) return cmd_lip(tower, element, seed);
    if (*mk) return cmd_mk(tower, x, y, phi, psi, tol, seed);
    if (*bound) return cmd_bound(kind, tower, pair);
    if (*verify) return cmd_verify(suite, seed);
    return cmd_sweep(sweep, tower, pair, count);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
}
