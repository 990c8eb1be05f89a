#include "afprop/propinquity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "afprop/error.hpp"
#include "afprop/mk.hpp"
#include "afprop/parallel.hpp"

namespace afprop {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::truncation: return "truncation";
    case BoundKind::prefix: return "prefix";
    case BoundKind::two_lipnorm_grid: return "two-lipnorm-grid";
    case BoundKind::trace_perturbation: return "trace-perturbation";
    case BoundKind::holder: return "holder";
    case BoundKind::effros_shen_chain: return "effros-shen-chain";
    case BoundKind::diameter: return "diameter";
  }
  return "unknown";
}

nlohmann::json to_json(const BridgeBound& b) {
  return {{"value", b.value}, {"kind", to_string(b.kind)}, {"certified", b.certified},
          {"notes", b.notes}, {"params", b.params}};
}

BridgeBound truncation_bound(const LipData& L, std::size_t n) {
  if (n > L.top()) throw ValidationError("truncation level above the Lip-norm's top");
  BridgeBound b;
  b.value = L.beta()[n];
  b.kind = BoundKind::truncation;
  b.certified = true;
  b.params = {{"level", double(n)}};
  return b;
}

BridgeBound diameter_bound(const BetaSequence& a, const BetaSequence& b) {
  BridgeBound out;
  out.value = std::max(a[0], b[0]);
  out.kind = BoundKind::diameter;
  out.certified = true;
  return out;
}

BridgeBound prefix_match_bound(const BuiltTower& a, const BuiltTower& b, std::size_t level) {
  std::string why;
  const auto& ta = a.tower;
  const auto& tb = b.tower;
  if (level > ta.top_level() || level > tb.top_level() || level >= a.beta.size() || level >= b.beta.size()) {
    why = "level " + std::to_string(level) + " is not present in both towers";
  } else {
    for (std::size_t n = 0; n <= level && why.empty(); ++n) {
      if (!(ta.level(n) == tb.level(n))) why = "block dimensions differ at level " + std::to_string(n);
      else if (!(ta.trace(n) == tb.trace(n))) why = "trace weights differ at level " + std::to_string(n);
      else if (a.beta[n] != b.beta[n]) why = "beta differs at level " + std::to_string(n);
      else if (n < level && !(ta.layout(n) == tb.layout(n))) why = "layouts differ at level " + std::to_string(n);
    }
  }
  if (!why.empty()) {
    BridgeBound out = diameter_bound(a.beta, b.beta);
    out.notes = "no shared prefix: " + why;
    return out;
  }
  BridgeBound out;
  out.value = a.beta[level] + b.beta[level];
  out.kind = BoundKind::prefix;
  out.certified = true;
  out.params = {{"level", double(level)}};
  const BridgeBound diam = diameter_bound(a.beta, b.beta);
  if (diam.value < out.value) {
    BridgeBound capped = diam;
    capped.notes = "prefix bound exceeds the diameter";
    capped.params = {{"level", double(level)}, {"prefix_value", out.value}};
    return capped;
  }
  return out;
}

BridgeBound uhf_holder_bound(const std::vector<Digit>& beta, const std::vector<Digit>& eta, double k) {
  for (auto v : beta)
    if (v == 0) throw ValidationError("UHF entries must be at least 1");
  for (auto v : eta)
    if (v == 0) throw ValidationError("UHF entries must be at least 1");
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  const auto d = baire_distance(beta, eta);
  BridgeBound out;
  out.value = 2.0 * std::pow(d.value, k);
  out.kind = BoundKind::holder;
  out.certified = d.determined;
  out.params = {{"distance", d.value}, {"k", k}};
  if (!d.determined) out.notes = "undetermined: no disagreement witnessed; bound uses the witnessed span only";
  return out;
}

namespace {

struct SphereFrame {
  std::vector<std::vector<double>> coords;  // orthonormal basis of W, Hermitian coordinates
  double c = 0.0;                           // max ||sum s_i w_i|| over sign vectors (or an upper bound)
  bool c_exact = false;
};

SphereFrame traceless_frame(const LipData& L) {
  const auto& alg = L.algebra();
  const auto& mu = L.trace();
  const std::size_t D0 = hermitian_coordinate_count(alg);
  const BlockElement one = BlockElement::unit(alg);
  std::vector<BlockElement> w;
  auto ip = [&](const BlockElement& x, const BlockElement& y) { return inner_mu(mu, x, y).real(); };
  for (std::size_t k = 0; k < D0; ++k) {
    BlockElement v = hermitian_basis_element(alg, k);
    v = v - scale(trace_eval(mu, v).real(), one);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : w) v = v - scale(ip(v, u), u);
    const double nv = std::sqrt(std::max(ip(v, v), 0.0));
    if (nv > 1e-9) w.push_back(scale(1.0 / nv, v));
  }
  SphereFrame f;
  for (const auto& u : w) f.coords.push_back(to_hermitian_coordinates(u));
  const std::size_t D = w.size();
  if (D == 0) return f;
  if (D <= 16) {
    f.c_exact = true;
    for (std::size_t mask = 0; mask < (std::size_t(1) << (D - 1)); ++mask) {
      std::vector<double> x(D0, 0.0);
      for (std::size_t i = 0; i < D; ++i) {
        const double s = (i > 0 && (mask >> (i - 1)) & 1) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < D0; ++j) x[j] += s * f.coords[i][j];
      }
      f.c = std::max(f.c, cstar_norm(from_hermitian_coordinates(alg, x)));
    }
  } else {
    for (const auto& u : w) f.c += cstar_norm(u);
  }
  return f;
}

double lattice_size(std::size_t D, std::size_t M) {
  return 2.0 * double(D) * std::pow(double(M + 1), double(D - 1));
}

void require_same_algebra(const LipData& L1, const LipData& L2) {
  if (!(L1.algebra() == L2.algebra())) throw ValidationError("the two Lip-norms live on different algebras");
}

// Lower bounds on lip over the sphere that hold without sampling.
double floor_one(const LipData& L1) { return L1.top() == 0 ? 0.0 : 1.0 / L1.beta()[0]; }
double floor_two(const LipData& L1, const LipData& L2) {
  if (L2.top() == 0) return 0.0;
  return (L1.trace() == L2.trace() ? 1.0 : 0.5) / L2.beta()[0];
}

}  // namespace

namespace {

// Smallest power of two M with 2c/M <= h.
std::size_t dyadic_size(double c, double h) {
  std::size_t M = 1;
  while (2.0 * c / double(M) > h) M *= 2;
  return M;
}

}  // namespace

double two_lipnorm_sample_count(const LipData& L1, double h) {
  if (!(h > 0.0)) throw ValidationError("grid resolution must be positive");
  const SphereFrame f = traceless_frame(L1);
  const std::size_t D = f.coords.size();
  if (D <= 1) return double(2 * D);
  return lattice_size(D, dyadic_size(f.c, h));
}

namespace {

// The grid certificate, skipped (uncertified, value = the floor) when even a
// perfect sample could not certify anything below `target`.
[[noreturn]] void refuse_grid(std::size_t D, double h, double need, std::size_t max_samples) {
  std::ostringstream msg;
  msg << "grid refused: dimension " << D << " at h = " << h << " needs " << need << " samples (cap " << max_samples
      << ")";
  throw BudgetError(msg.str(), need);
}

BridgeBound grid_bound(const LipData& L1, const LipData& L2, double h, std::size_t max_samples, double target) {
  require_same_algebra(L1, L2);
  if (!(h > 0.0)) throw ValidationError("grid resolution must be positive");
  {
    // Frame vectors have operator norm >= their mu-norm = 1, so c >= 1 and the
    // lattice is at least this large. Refuse before building the frame.
    const std::size_t D = hermitian_coordinate_count(L1.algebra()) - 1;
    if (D > 1 && lattice_size(D, dyadic_size(1.0, h)) > double(max_samples))
      refuse_grid(D, h, lattice_size(D, dyadic_size(1.0, h)), max_samples);
  }
  const SphereFrame f = traceless_frame(L1);
  const std::size_t D = f.coords.size();
  const auto& alg = L1.algebra();
  BridgeBound out;
  out.kind = BoundKind::two_lipnorm_grid;
  if (D == 0) {
    out.value = 0.0;
    out.certified = true;
    out.notes = "scalar algebra";
    return out;
  }
  // Cube-surface lattice with M + 1 points per edge, M a power of two, mapped
  // radially to the sphere. The lattice with M / 2^j points per edge is a
  // sub-lattice with covering radius 2c 2^j / M, and each one gives a valid
  // certificate, so the best over all of them is kept. This makes the bound
  // nonincreasing under refinement.
  const std::size_t M = D > 1 ? dyadic_size(f.c, h) : 1;
  std::size_t J = 0;
  while ((std::size_t(1) << J) < M) ++J;
  if (lattice_size(D, M) > double(max_samples)) refuse_grid(D, h, lattice_size(D, M), max_samples);
  const std::size_t per_face = D > 1 ? static_cast<std::size_t>(std::llround(std::pow(double(M + 1), double(D - 1)))) : 1;
  const std::size_t total = 2 * D * per_face;
  const std::size_t D0 = hermitian_coordinate_count(alg);
  const double K1 = lip_lipschitz_constant(L1), K2 = lip_lipschitz_constant(L2);

  if (std::isfinite(target) && D > 1) {
    // The corner (1, -1, ..., -1) is a lattice point at every refinement, so
    // m_i <= lip_i(corner) and the certificate is at least
    // (K1 + K2) h_eff / (lip_1(corner) lip_2(corner)).
    std::vector<double> x(D0, 0.0);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D0; ++j) x[j] += (i == 0 ? 1.0 : -1.0) * f.coords[i][j];
    BlockElement u = from_hermitian_coordinates(alg, x);
    u = scale(1.0 / cstar_norm(u), u);
    const double floor = (K1 + K2) * (2.0 * f.c / double(M)) / (lip(L1, u) * lip(L2, u));
    if (floor >= target) {
      out.value = floor;
      out.certified = false;
      out.notes = "skipped: cannot beat the competing certificate";
      return out;
    }
  }

  struct Acc {
    double max_diff = 0.0;
    double min1 = std::numeric_limits<double>::infinity();
    double min2 = std::numeric_limits<double>::infinity();
  };
  // Coarsest sub-lattice holding lattice index i: J minus its 2-adic valuation.
  auto index_level = [&](std::size_t i) {
    if (i == 0) return std::size_t(0);
    std::size_t v = 0;
    while (v < J && i % (std::size_t(2) << v) == 0) ++v;
    return J - v;
  };
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(thread_budget(), total / 256 + 1));
  std::vector<std::vector<Acc>> acc(chunks, std::vector<Acc>(J + 1));
  const std::size_t chunk_len = (total + chunks - 1) / chunks;
  parallel_for(chunks, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> y(D), x(D0);
    for (std::size_t ch = lo; ch < hi; ++ch) {
      for (std::size_t idx = ch * chunk_len; idx < std::min(total, (ch + 1) * chunk_len); ++idx) {
        const std::size_t face = idx / per_face;
        std::size_t rest = idx % per_face;
        const std::size_t axis = face / 2;
        std::size_t level = 0;
        for (std::size_t i = 0; i < D; ++i) {
          if (i == axis) {
            y[i] = (face % 2 == 0) ? 1.0 : -1.0;
          } else {
            const std::size_t j = rest % (M + 1);
            rest /= (M + 1);
            y[i] = -1.0 + 2.0 * double(j) / double(M);
            level = std::max(level, index_level(j));
          }
        }
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t i = 0; i < D; ++i)
          for (std::size_t j = 0; j < D0; ++j) x[j] += y[i] * f.coords[i][j];
        BlockElement u = from_hermitian_coordinates(alg, x);
        u = scale(1.0 / cstar_norm(u), u);
        const double l1 = lip(L1, u), l2 = lip(L2, u);
        Acc& a = acc[ch][level];
        a.max_diff = std::max(a.max_diff, std::abs(l1 - l2));
        a.min1 = std::min(a.min1, l1);
        a.min2 = std::min(a.min2, l2);
      }
    }
  });
  double d_up = std::numeric_limits<double>::infinity();
  double m1 = floor_one(L1), m2 = floor_two(L1, L2);
  double sampled_max = 0.0;
  Acc cum;
  for (std::size_t lv = 0; lv <= J; ++lv) {
    for (const auto& c : acc) {
      cum.max_diff = std::max(cum.max_diff, c[lv].max_diff);
      cum.min1 = std::min(cum.min1, c[lv].min1);
      cum.min2 = std::min(cum.min2, c[lv].min2);
    }
    const double h_lv = D > 1 ? 2.0 * f.c / double(std::size_t(1) << lv) : 0.0;
    d_up = std::min(d_up, cum.max_diff + (K1 + K2) * h_lv);
    m1 = std::max(m1, cum.min1 - K1 * h_lv);
    m2 = std::max(m2, cum.min2 - K2 * h_lv);
    sampled_max = cum.max_diff;
  }
  const double h_eff = D > 1 ? 2.0 * f.c / double(M) : 0.0;
  out.params = {{"h", h},          {"h_effective", h_eff}, {"samples", double(total)}, {"dimension", double(D)},
                {"d_up", d_up},    {"m1_low", m1},         {"m2_low", m2},             {"K1", K1},
                {"K2", K2},        {"sampled_max_diff", sampled_max}};
  if (!(m1 > 0.0 && m2 > 0.0)) {
    out.value = std::numeric_limits<double>::infinity();
    out.certified = false;
    out.notes = "inconclusive: refine grid";
    return out;
  }
  out.value = d_up / (m1 * m2);
  out.certified = true;
  return out;
}

}  // namespace

BridgeBound two_lipnorm_bridge_bound(const LipData& L1, const LipData& L2, double h, std::size_t max_samples) {
  return grid_bound(L1, L2, h, max_samples, std::numeric_limits<double>::infinity());
}

BridgeBound trace_perturbation_bound(const LipData& L1, const LipData& L2) {
  require_same_algebra(L1, L2);
  const std::size_t N = L1.top();
  if (L2.top() != N) throw ValidationError("the two Lip-norms sit at different levels");
  for (std::size_t n = 0; n <= N; ++n) {
    if (!(L1.tower().level(n) == L2.tower().level(n)))
      throw ValidationError("towers differ in block dimensions at level " + std::to_string(n));
    if (n < N && !(L1.tower().layout(n) == L2.tower().layout(n)))
      throw ValidationError("towers differ in layout at level " + std::to_string(n));
  }
  BridgeBound out;
  out.kind = BoundKind::trace_perturbation;
  out.certified = true;
  if (N == 0) return out;
  const auto& top = L1.algebra();
  std::vector<double> w1, w2;
  for (std::size_t j = 0; j < top.block_count(); ++j) {
    w1.push_back(L1.trace()[j] / double(top.block_dim(j)));
    w2.push_back(L2.trace()[j] / double(top.block_dim(j)));
  }
  double D = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    // E_n a has block k equal to sum_J lambda_J Y_J with ||Y_J|| <= ||a||, so the
    // two expectations differ by at most sum_J |lambda1_J - lambda2_J| in norm.
    const auto& pl = L1.expectation(n).placements();
    const std::size_t K = L1.tower().level(n).block_count();
    double e = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> cnt(pl.size(), 0.0);
      for (std::size_t j = 0; j < pl.size(); ++j)
        for (const auto& p : pl[j])
          if (p.source == k) cnt[j] += 1.0;
      double d1 = 0.0, d2 = 0.0;
      for (std::size_t j = 0; j < pl.size(); ++j) {
        d1 += w1[j] * cnt[j];
        d2 += w2[j] * cnt[j];
      }
      double tv = 0.0;
      for (std::size_t j = 0; j < pl.size(); ++j) tv += std::abs(w1[j] * cnt[j] / d1 - w2[j] * cnt[j] / d2);
      e = std::max(e, tv);
    }
    const double b1 = L1.beta()[n], b2 = L2.beta()[n];
    const double gap = 2.0 * std::abs(1.0 / b1 - 1.0 / b2);
    D = std::max(D, gap + e / std::max(b1, b2));
  }
  const double m1 = floor_one(L1), m2 = floor_two(L1, L2);
  out.value = D / (m1 * m2);
  out.params = {{"d_up", D}, {"m1_low", m1}, {"m2_low", m2}, {"level", double(N)}};
  return out;
}

BridgeBound finite_level_bound(const LipData& L1, const LipData& L2, double h, std::size_t max_samples) {
  std::optional<BridgeBound> best;
  std::string notes;
  try {
    best = trace_perturbation_bound(L1, L2);
  } catch (const ValidationError& e) {
    notes = std::string("perturbation unavailable: ") + e.what();
  }
  try {
    BridgeBound g = grid_bound(L1, L2, h, max_samples,
                               best ? best->value : std::numeric_limits<double>::infinity());
    if (g.certified && (!best || g.value < best->value)) {
      g.params["perturbation_value"] = best ? best->value : std::numeric_limits<double>::infinity();
      best = g;
    } else if (best) {
      best->params[g.certified ? "grid_value" : "grid_floor"] = g.value;
    }
  } catch (const BudgetError& e) {
    if (!notes.empty()) notes += "; ";
    notes += e.what();
  }
  if (!best) throw ValidationError("no finite-level certificate applies: " + notes);
  if (!notes.empty()) best->notes = notes;
  return *best;
}

double fibonacci_floor(std::size_t level, double k) {
  double qm = 0.0, q = 1.0;  // q_{-1}, q_0
  for (std::size_t n = 0; n < level; ++n) {
    const double next = q + qm;
    qm = q;
    q = next;
  }
  return 2.0 * std::pow(q * q + qm * qm, -k);
}

BridgeBound effros_shen_chain_bound(double theta, double theta2, double k, std::size_t level, double h,
                                    std::size_t max_samples) {
  const auto d1 = cf_expand(theta, level);
  const auto d2 = cf_expand(theta2, level);
  if (d1 != d2)
    throw InconsistencyError("continued fractions disagree before level " + std::to_string(level) +
                             "; use the diameter bound max(beta(0), beta'(0)) = 1");
  const BuiltTower t1 = effros_shen_tower(d1, theta, k);
  const BuiltTower t2 = effros_shen_tower(d2, theta2, k);
  const LipData L1(t1), L2(t2);
  const BridgeBound fin = finite_level_bound(L1, L2, h, max_samples);
  const double trunc = t1.beta[level] + t2.beta[level];
  BridgeBound out;
  out.value = trunc + fin.value;
  out.kind = BoundKind::effros_shen_chain;
  out.certified = fin.certified;
  out.notes = "finite level via " + to_string(fin.kind) + (fin.notes.empty() ? "" : "; " + fin.notes);
  out.params = {{"level", double(level)},  {"truncation", trunc}, {"finite_level", fin.value},
                {"universal", fibonacci_floor(level, k)}, {"h", h}, {"k", k}};
  return out;
}

std::size_t shared_prefix(double theta, double theta2, std::size_t max_depth) {
  const auto a = cf_expand_partial(theta, max_depth);
  const auto b = cf_expand_partial(theta2, max_depth);
  std::size_t s = 0;
  while (s < a.size() && s < b.size() && a[s] == b[s]) ++s;
  return s;
}

BridgeBound effros_shen_best_chain(double theta, double theta2, double k, double h, std::size_t max_level,
                                   std::size_t max_samples) {
  const std::size_t s = shared_prefix(theta, theta2, max_level);
  std::optional<BridgeBound> best;
  for (std::size_t n = 1; n <= s; ++n) {
    try {
      BridgeBound b = effros_shen_chain_bound(theta, theta2, k, n, h, max_samples);
      if (!best || b.value < best->value) best = b;
    } catch (const NumericalError&) {
      break;  // past the denominator guard
    }
  }
  // beta(0) = 1 for both towers, so the diameter bound is 1.
  if (!best || best->value > 1.0) {
    BridgeBound d;
    d.value = 1.0;
    d.kind = BoundKind::diameter;
    d.certified = true;
    d.notes = best ? "diameter beats every chain" : "no shared continued-fraction prefix";
    best = d;
  }
  best->params["shared_prefix"] = double(s);
  return *best;
}

BridgeBound beta_chain_bound(const InductiveTower& tower, const BetaSequence& b1, const BetaSequence& b2,
                             std::size_t level, double h, std::size_t max_samples) {
  const LipData L1(tower, b1, level), L2(tower, b2, level);
  const BridgeBound fin = finite_level_bound(L1, L2, h, max_samples);
  BridgeBound out;
  out.value = b1[level] + b2[level] + fin.value;
  out.kind = fin.kind;
  out.certified = fin.certified;
  out.notes = "truncations plus " + to_string(fin.kind) + " at level " + std::to_string(level);
  out.params = {{"level", double(level)}, {"truncation", b1[level] + b2[level]}, {"finite_level", fin.value}};
  return out;
}

std::string csv_header(const std::vector<std::string>& param_order) {
  std::string s = "value,kind,certified";
  for (const auto& p : param_order) s += "," + p;
  return s;
}

std::string to_csv_row(const BridgeBound& b, const std::vector<std::string>& param_order) {
  std::ostringstream os;
  os.precision(17);
  os << b.value << ',' << to_string(b.kind) << ',' << (b.certified ? "true" : "false");
  for (const auto& p : param_order) {
    os << ',';
    if (auto it = b.params.find(p); it != b.params.end()) os << it->second;
  }
  return os.str();
}

}  // namespace afprop
