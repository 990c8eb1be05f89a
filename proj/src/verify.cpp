#include "afprop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>

#include "afprop/cantor.hpp"
#include "afprop/cfrac.hpp"
#include "afprop/error.hpp"
#include "afprop/expectation.hpp"
#include "afprop/lipnorm.hpp"
#include "afprop/mk.hpp"
#include "afprop/parallel.hpp"
#include "afprop/propinquity.hpp"
#include "afprop/random.hpp"
#include "afprop/tower.hpp"

namespace afprop {

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

class Checks {
 public:
  void at_most(const std::string& name, double value, double threshold) { record(name, "<=", value, threshold); }
  void below(const std::string& name, double value, double threshold) { record(name, "<", value, threshold); }
  void at_least(const std::string& name, double value, double threshold) { record(name, ">=", value, threshold); }
  void above(const std::string& name, double value, double threshold) { record(name, ">", value, threshold); }

  VerifyReport finish(const std::string& suite, std::uint64_t seed) {
    VerifyReport r{suite, seed, checks_};
    for (auto& c : r.checks) {
      if (c.relation == "<=") c.pass = c.worst <= c.threshold;
      else if (c.relation == "<") c.pass = c.worst < c.threshold;
      else if (c.relation == ">=") c.pass = c.worst >= c.threshold;
      else c.pass = c.worst > c.threshold;
    }
    return r;
  }

 private:
  void record(const std::string& name, const char* rel, double value, double threshold) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      const bool upper = rel[0] == '<';
      VerifyCheck c;
      c.name = name;
      c.relation = rel;
      c.threshold = threshold;
      c.worst = upper ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
      it = index_.emplace(name, checks_.size()).first;
      checks_.push_back(c);
    }
    VerifyCheck& c = checks_[it->second];
    ++c.samples;
    if (std::isnan(c.worst)) return;
    if (std::isnan(value)) c.worst = value;
    else if (c.relation[0] == '<') c.worst = std::max(c.worst, value);
    else c.worst = std::min(c.worst, value);
  }

  std::vector<VerifyCheck> checks_;
  std::map<std::string, std::size_t> index_;
};

Rng suite_rng(std::uint64_t seed, std::size_t suite) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(suite)};
  return Rng(seq);
}

double max_diff(const BlockElement& a, const BlockElement& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i) d = std::max(d, (a.block(i) - b.block(i)).max_abs());
  return d;
}

CantorPoint random_point(std::size_t bits, Rng& rng) {
  std::bernoulli_distribution coin;
  std::vector<int> b(bits);
  for (auto& x : b) x = coin(rng) ? 1 : 0;
  return CantorPoint(b);
}

struct NamedTower {
  std::string name;
  BuiltTower built;
};

std::vector<NamedTower> algebra_towers() {
  return {{"effros-shen", effros_shen_tower(std::vector<Digit>(5, 1), kPhi, 1.0)},
          {"uhf", uhf_tower(std::vector<Digit>(5, 1), 5, 1.0)}};
}

// Criterion 1: the LP distance between point evaluations equals r^-n0.
VerifyReport cantor_oracle_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 1);
  for (std::size_t N = 4; N <= 10; ++N) {
    for (double r : {1.5, 2.0, 3.0}) {
      const auto beta = cantor_beta(r, N);
      const LipData L(cantor_tower(N, beta));
      std::vector<CantorPoint> xs, ys;
      std::uniform_int_distribution<std::size_t> pos(0, N - 1);
      for (int i = 0; i < 50; ++i) {
        const CantorPoint x = random_point(N, rng);
        CantorPoint y = random_point(N, rng);
        if (y.bits() == x.bits()) {
          auto b = x.bits();
          b[pos(rng)] ^= 1;
          y = CantorPoint(b);
        }
        xs.push_back(x);
        ys.push_back(y);
      }
      std::vector<double> gaps(xs.size());
      parallel_for(xs.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          const auto o = cantor_oracle(xs[i], ys[i], beta);
          const double mk = mk_abelian(L, point_evaluation(xs[i], N), point_evaluation(ys[i], N)).value();
          gaps[i] = std::abs(mk - std::pow(r, -double(o.first_disagreement)));
        }
      });
      for (double g : gaps) checks.at_most("mk-minus-ultrametric", g, 1e-7);
    }
  }
  return checks.finish("cantor-oracle", seed);
}

// Criterion 2: conditional expectation axioms.
VerifyReport expectation_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 2);
  for (const auto& nt : algebra_towers()) {
    const auto tower = std::make_shared<const InductiveTower>(nt.built.tower);
    const std::size_t top = tower->top_level();
    const FdCStar& alg = tower->level(top);
    const TraceWeights& mu = tower->trace(top);
    std::vector<ExpectationOperator> ops;
    for (std::size_t n = 0; n <= top; ++n) ops.emplace_back(tower, top, n);
    const std::string p = nt.name + "/";
    for (int trial = 0; trial < 200; ++trial) {
      const BlockElement a = random_element(alg, rng);
      const BlockElement pos = random_positive(alg, rng);
      const double na = cstar_norm(a);
      for (std::size_t n = 0; n <= top; ++n) {
        const auto& e = ops[n];
        const BlockElement ea = e.apply(a);
        checks.at_most(p + "idempotence", max_diff(e.apply(ea), ea), 1e-9);
        for (std::size_t q = 0; q <= top; ++q)
          checks.at_most(p + "nesting", max_diff(ops[q].apply(ea), ops[std::min(n, q)].apply(a)), 1e-9);
        checks.at_most(p + "trace-preservation", std::abs(trace_eval(mu, ea) - trace_eval(mu, a)), 1e-9);
        const BlockElement b = tower->embed(random_element(tower->level(n), rng), n, top);
        const BlockElement c = tower->embed(random_element(tower->level(n), rng), n, top);
        checks.at_most(p + "bimodule", max_diff(e.apply(b * a * c), b * ea * c), 1e-9);
        const BlockElement epos = hermitian_part(e.apply(pos));
        double low = std::numeric_limits<double>::infinity();
        for (const auto& blk : epos.blocks()) low = std::min(low, herm_eigenvalues(blk).front());
        checks.at_least(p + "positivity", low, -1e-9);
        checks.at_most(p + "adjoint", max_diff(e.apply(adjoint(a)), adjoint(ea)), 1e-9);
        checks.at_most(p + "contraction", cstar_norm(ea) - na, 1e-9);
      }
    }
  }
  return checks.finish("expectation-axioms", seed);
}

// Criterion 3: (2,0)-quasi-Leibniz margins.
VerifyReport quasi_leibniz_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 3);
  auto towers = algebra_towers();
  towers.push_back({"cantor", cantor_tower(6, cantor_beta(2.0, 6))});
  for (const auto& nt : towers) {
    const LipData L(nt.built);
    std::vector<BlockElement> as, bs;
    for (int i = 0; i < 500; ++i) {
      as.push_back(random_self_adjoint(L.algebra(), rng));
      bs.push_back(random_self_adjoint(L.algebra(), rng));
    }
    std::vector<QuasiLeibnizMargin> margins(as.size());
    parallel_for(as.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) margins[i] = quasi_leibniz_margin(L, as[i], bs[i]);
    });
    for (const auto& m : margins) {
      checks.at_least(nt.name + "/jordan-margin", m.jordan, -1e-9);
      checks.at_least(nt.name + "/lie-margin", m.lie, -1e-9);
    }
  }
  return checks.finish("quasi-leibniz", seed);
}

// Criterion 4: Effros-Shen trace weights.
VerifyReport effros_shen_trace_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t depth = 8;
  int accepted = 0;
  while (accepted < 20) {
    const double theta = u(rng);
    std::vector<Digit> digits;
    try {
      digits = cf_expand(theta, depth);
    } catch (const Error&) {
      continue;
    }
    const auto cf = convergents(digits);
    if (cf.q[depth] > BigInt(static_cast<long long>(kMaxEffrosShenDenominator))) continue;
    ++accepted;
    const auto built = effros_shen_tower(digits, theta, 1.0);
    const Rational x = exact_rational(theta);
    for (std::size_t n = 1; n <= depth; ++n) {
      const double t = built.tower.trace(n)[0];
      checks.above("t-strictly-inside-unit-interval", std::min(t, 1.0 - t), 0.0);
      const Rational rhs = Rational(n % 2 == 0 ? 1 : -1) * Rational(cf.q[n - 1]) * (x * Rational(cf.q[n]) - Rational(cf.p[n]));
      checks.at_most("complement-formula", std::abs((1.0 - t) - rhs.convert_to<double>()), 1e-10);
    }
    checks.at_most("pullback-residual", validate(built.tower).max_trace_residual, 1e-9);
  }
  const auto golden = effros_shen_tower({1}, kPhi, 1.0);
  checks.at_most("golden-t1", std::abs(golden.tower.trace(1)[0] - kPhi), 1e-12);
  return checks.finish("effros-shen-trace", seed);
}

// Criterion 5: exact convergent identities.
VerifyReport cfrac_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 5);
  std::uniform_int_distribution<Digit> digit(1, 1000000);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Digit> digits(30);
    for (auto& d : digits) d = trial == 0 ? 1 : digit(rng);
    const auto cf = convergents(digits);
    for (std::size_t n = 1; n <= 30; ++n) {
      const BigInt expect = (n % 2 == 1) ? 1 : -1;
      checks.at_most("determinant-mismatches", convergent_determinant(cf, n) == expect ? 0.0 : 1.0, 0.0);
    }
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = u(rng);
    const auto cf = convergents(cf_expand_partial(theta, 30));
    const Rational x = exact_rational(theta);
    for (std::size_t n = 1; n < cf.q.size(); ++n) {
      const Rational gap = x - Rational(cf.p[n], cf.q[n]);
      const Rational scaled = (gap < 0 ? Rational(-gap) : gap) * Rational(cf.q[n] * cf.q[n]);
      checks.below("gap-times-q-squared", scaled.convert_to<double>(), 1.0);
    }
  }
  return checks.finish("cfrac", seed);
}

// Criterion 6: Lip-norm structure.
VerifyReport lipnorm_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 6);
  std::normal_distribution<double> g;
  for (const auto& nt : algebra_towers()) {
    const LipData L(nt.built);
    const FdCStar& alg = L.algebra();
    checks.at_most("lip-of-unit", lip(L, BlockElement::unit(alg)), 0.0);
    for (int i = 0; i < 50; ++i) {
      const double t = g(rng);
      checks.at_most("lip-of-real-scalar", lip(L, BlockElement::scalar(alg, t)), 0.0);
      for (double eps : {1e-15, 1e-13, 1e-11}) {
        const BlockElement a = BlockElement::scalar(alg, t) + Complex(eps) * random_self_adjoint(alg, rng);
        if (lip(L, a) <= 1e-10) {
          const BlockElement centered = a - BlockElement::scalar(alg, trace_eval(L.trace(), a).real());
          checks.at_most("scalar-kernel", cstar_norm(centered), 1e-8);
        }
      }
    }
    for (int i = 0; i < 200; ++i) {
      const BlockElement a = random_self_adjoint(alg, rng);
      const double la = lip(L, a);
      for (std::size_t n = 0; n <= L.top(); ++n) {
        const BlockElement ea = n == L.top() ? a : L.expectation(n).apply(a);
        checks.at_most("weak-contraction", lip(L, hermitian_part(ea)) - la, 1e-9);
      }
    }
  }
  for (std::size_t N = 1; N <= 8; ++N)
    for (double r : {1.5, 2.0, 3.0}) {
      const auto beta = cantor_beta(r, N);
      const LipData L(cantor_tower(N, beta));
      for (std::size_t n = 0; n < N; ++n)
        checks.at_most("cantor-lip-of-u", std::abs(lip(L, u_element(n, N)) - 1.0 / beta[n]), 1e-10);
    }
  return checks.finish("lipnorm", seed);
}

// sup |Tr(delta a)| over traceless Hermitian a with ||a|| = 1 on M(2), by a sphere mesh.
double pauli_mesh(const ComplexMatrix& delta, int steps) {
  const Complex dx = delta(0, 1) + delta(1, 0);
  const Complex dy = Complex(0.0, 1.0) * (delta(0, 1) - delta(1, 0));
  const Complex dz = delta(0, 0) - delta(1, 1);
  const double pi = std::acos(-1.0);
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double th = pi * i / steps;
    for (int j = 0; j < 2 * steps; ++j) {
      const double ph = pi * j / steps;
      const double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
      best = std::max(best, std::abs(x * dx + y * dy + z * dz));
    }
  }
  return best;
}

// Criterion 7: Monge-Kantorovich properties.
VerifyReport mk_suite(std::uint64_t seed) {
  Checks checks;
  Rng rng = suite_rng(seed, 7);
  {
    const LipData L(cantor_tower(5, cantor_beta(2.0, 5)));
    const double b0 = L.beta()[0];
    for (int i = 0; i < 20; ++i) {
      const StateVec a = random_state(L.algebra(), rng);
      const StateVec b = random_state(L.algebra(), rng);
      const StateVec c = random_state(L.algebra(), rng);
      const double ab = mk_abelian(L, a, b).value(), ba = mk_abelian(L, b, a).value();
      const double bc = mk_abelian(L, b, c).value(), ac = mk_abelian(L, a, c).value();
      checks.at_most("abelian/symmetry", std::abs(ab - ba), 1e-9);
      checks.at_most("abelian/triangle", ac - ab - bc, 1e-8);
      checks.at_most("abelian/diameter", std::max({ab, bc, ac}) - 2.0 * b0, 1e-9);
      for (std::size_t n = 0; n < L.top(); ++n) {
        const StateVec an = pushforward_under_expectation(a, L.expectation(n));
        checks.at_most("abelian/expectation-contraction", mk_abelian(L, a, an).value() - L.beta()[n], 1e-9);
      }
    }
  }
  {
    const double tol = 1e-6;
    const LipData L(effros_shen_tower({1, 1}, kPhi, 1.0));
    const double b0 = L.beta()[0];
    for (int i = 0; i < 5; ++i) {
      const StateVec a = random_state(L.algebra(), rng);
      const StateVec b = random_state(L.algebra(), rng);
      const StateVec c = random_state(L.algebra(), rng);
      const MkResult rab = mk_general(L, a, b, tol), rba = mk_general(L, b, a, tol);
      const MkResult rbc = mk_general(L, b, c, tol), rac = mk_general(L, a, c, tol);
      for (const auto* r : {&rab, &rba, &rbc, &rac})
        checks.at_most("general/unconverged", r->converged ? 0.0 : 1.0, 0.0);
      const double ab = rab.value(), ba = rba.value(), bc = rbc.value(), ac = rac.value();
      checks.at_most("general/symmetry", std::abs(ab - ba), 2 * tol);
      checks.at_most("general/triangle", ac - ab - bc, 3 * tol);
      checks.at_most("general/diameter", std::max({ab, bc, ac}) - 2.0 * b0, tol);
      for (std::size_t n = 0; n < L.top(); ++n) {
        const StateVec an = pushforward_under_expectation(a, L.expectation(n));
        checks.at_most("general/expectation-contraction", mk_general(L, a, an, tol).value() - L.beta()[n], tol);
      }
    }
  }
  {
    const InductiveTower t({FdCStar({1}), FdCStar({2})}, {EmbeddingLayout({{0, 0}})},
                           {TraceWeights({1.0}), TraceWeights({1.0})});
    const LipData L(t, BetaSequence({1.0, 0.5}), 1);
    for (int i = 0; i < 20; ++i) {
      const StateVec a = random_state(L.algebra(), rng);
      const StateVec b = random_state(L.algebra(), rng);
      const double closed = mk_depth1_closed_form(1.0, a, b);
      checks.at_most("closed-form-vs-mesh", std::abs(closed - pauli_mesh(a.block(0) - b.block(0), 400)), 1e-3);
      const MkResult r = mk_general(L, a, b, 1e-6);
      checks.at_most("closed-form/unconverged", r.converged ? 0.0 : 1.0, 0.0);
      checks.at_most("closed-form-vs-cutting-plane", std::abs(closed - r.value()), 1e-4);
    }
  }
  return checks.finish("mk-properties", seed);
}

// Criterion 8: Hoelder table for UHF pairs.
VerifyReport holder_suite(std::uint64_t seed) {
  Checks checks;
  const std::vector<std::vector<Digit>> bases{std::vector<Digit>(9, 1), {1, 2, 1, 2, 1, 2, 1, 2, 1}};
  for (const auto& base : bases)
    for (double k : {1.0, 2.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t N = 1; N <= 8; ++N) {
        std::vector<Digit> eta = base;
        eta[N] = base[N] + 1;
        const auto a = uhf_tower(base, N + 1, k);
        const auto b = uhf_tower(eta, N + 1, k);
        const double bound = prefix_match_bound(a, b, N).value;
        checks.at_most("prefix-minus-holder-rate", bound - 2.0 * std::pow(2.0, -double(N) * k), 0.0);
        checks.at_most("prefix-minus-holder-bound", bound - uhf_holder_bound(base, eta, k).value, 0.0);
        if (N > 1) checks.below("table-step", bound - prev, 0.0);
        prev = bound;
      }
    }
  return checks.finish("holder-table", seed);
}

// Criterion 9: Effros-Shen continuity along theta_m = Phi + 10^-m.
VerifyReport effros_shen_continuity_suite(std::uint64_t seed) {
  Checks checks;
  double prev = std::numeric_limits<double>::infinity();
  double last = prev;
  for (int m = 1; m <= 8; ++m) {
    const double theta = kPhi + std::pow(10.0, -m);
    const BridgeBound b = effros_shen_best_chain(kPhi, theta, 1.0, 0.05, 12);
    if (m > 1) checks.at_most("sequence-step", b.value - prev, 0.0);
    if (b.params.at("shared_prefix") >= 5) checks.below("bound-once-prefix-reaches-5", b.value, 0.05);
    prev = last = b.value;
  }
  checks.below("final-bound", last, 0.05);
  checks.at_most("universal-part-at-5", fibonacci_floor(5, 1.0), 2.0 / 89.0);
  return checks.finish("effros-shen-continuity", seed);
}

// Criterion 10: continuity in beta on the Cantor tower.
VerifyReport beta_continuity_suite(std::uint64_t seed) {
  Checks checks;
  const std::size_t N = 5;
  const auto tower = cantor_tower(N, cantor_beta(2.0, N)).tower;
  const auto beta = cantor_beta(2.0, N);
  double prev = std::numeric_limits<double>::infinity();
  double last = prev;
  for (int k = 1; k <= 16; ++k) {
    const auto bk = cantor_beta(2.0 + std::ldexp(1.0, -k), N);
    const double b = std::min(beta_chain_bound(tower, beta, bk, N, 0.05).value, diameter_bound(beta, bk).value);
    if (k > 1) checks.at_most("sequence-step", b - prev, 0.0);
    prev = last = b;
  }
  checks.below("final-bound-minus-2beta", last - 2.0 * beta[N], 0.01);
  return checks.finish("beta-continuity", seed);
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{
      "cantor-oracle", "expectation-axioms", "quasi-leibniz",          "effros-shen-trace", "cfrac",
      "lipnorm",       "mk-properties",      "holder-table",           "effros-shen-continuity",
      "beta-continuity"};
  return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
  if (suite == "cantor-oracle") return cantor_oracle_suite(seed);
  if (suite == "expectation-axioms") return expectation_suite(seed);
  if (suite == "quasi-leibniz") return quasi_leibniz_suite(seed);
  if (suite == "effros-shen-trace") return effros_shen_trace_suite(seed);
  if (suite == "cfrac") return cfrac_suite(seed);
  if (suite == "lipnorm") return lipnorm_suite(seed);
  if (suite == "mk-properties") return mk_suite(seed);
  if (suite == "holder-table") return holder_suite(seed);
  if (suite == "effros-shen-continuity") return effros_shen_continuity_suite(seed);
  if (suite == "beta-continuity") return beta_continuity_suite(seed);
  throw ValidationError("unknown verification suite \"" + suite + "\"");
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"relation", c.relation},
                      {"worst", c.worst},
                      {"threshold", c.threshold},
                      {"samples", c.samples},
                      {"pass", c.pass}});
  return {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"checks", checks}};
}

const VerifyCheck* worst_offender(const VerifyReport& r) {
  const VerifyCheck* worst = nullptr;
  double excess = -1.0;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    const double e = std::isnan(c.worst) ? std::numeric_limits<double>::infinity()
                                          : std::abs(c.worst - c.threshold);
    if (!worst || e > excess) {
      worst = &c;
      excess = e;
    }
  }
  return worst;
}

}  // namespace afprop
