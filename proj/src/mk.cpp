#include "afprop/mk.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "afprop/error.hpp"
#include "afprop/simplex.hpp"

namespace afprop {

std::string to_string(MkMethod m) {
  switch (m) {
    case MkMethod::lp_exact: return "LP-exact";
    case MkMethod::cutting_plane: return "cutting-plane";
    case MkMethod::closed_form: return "closed-form";
  }
  return "unknown";
}

namespace {

void require_states_on(const LipData& L, const StateVec& phi, const StateVec& psi) {
  if (!(phi.parent() == L.algebra()) || !(psi.parent() == L.algebra()))
    throw ValidationError("states do not live on the Lip-norm's algebra");
}

}  // namespace

MkResult mk_abelian(const LipData& L, const StateVec& phi, const StateVec& psi, bool reduce_symmetry) {
  require_states_on(L, phi, psi);
  if (!L.algebra().is_abelian()) throw ValidationError("mk_abelian needs an Abelian top level; use mk_general");
  const auto& tower = L.tower();
  const std::size_t N = L.top();
  const std::size_t P = L.algebra().block_count();
  MkResult res;
  res.method = MkMethod::lp_exact;
  if (N == 0) return res;

  // parent[m][i]: the level m-1 node under node i of level m.
  std::vector<std::vector<std::size_t>> parent(N + 1);
  for (std::size_t m = 1; m <= N; ++m) {
    const auto& lay = tower.layout(m - 1);
    for (std::size_t j = 0; j < lay.target_count(); ++j) parent[m].push_back(lay.sources_of(j).front());
  }
  std::vector<std::vector<std::size_t>> ancestor(N + 1, std::vector<std::size_t>(P));
  for (std::size_t p = 0; p < P; ++p) {
    std::size_t node = p;
    ancestor[N][p] = p;
    for (std::size_t m = N; m > 0; --m) {
      node = parent[m][node];
      ancestor[m - 1][p] = node;
    }
  }
  std::vector<double> w(P), t(P);
  for (std::size_t p = 0; p < P; ++p) {
    w[p] = phi.block(p)(0, 0).real() - psi.block(p)(0, 0).real();
    t[p] = L.trace()[p];
  }

  std::vector<std::size_t> orbit(P);
  std::size_t K = P;
  if (reduce_symmetry) {
    // Canonical subtree labels, bottom up.
    std::vector<std::vector<std::size_t>> label(N + 1);
    {
      std::map<std::pair<double, double>, std::size_t> ids;
      for (std::size_t p = 0; p < P; ++p) label[N].push_back(ids.try_emplace({w[p], t[p]}, ids.size()).first->second);
    }
    for (std::size_t m = N; m > 0; --m) {
      std::vector<std::vector<std::size_t>> kids(tower.level(m - 1).block_count());
      for (std::size_t i = 0; i < parent[m].size(); ++i) kids[parent[m][i]].push_back(label[m][i]);
      std::map<std::vector<std::size_t>, std::size_t> ids;
      for (auto& k : kids) {
        std::sort(k.begin(), k.end());
        label[m - 1].push_back(ids.try_emplace(k, ids.size()).first->second);
      }
    }
    // Orbits, top down: a node's orbit is its parent's orbit plus its own label.
    std::vector<std::size_t> cur{0};
    for (std::size_t m = 1; m <= N; ++m) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < parent[m].size(); ++i)
        next.push_back(ids.try_emplace({cur[parent[m][i]], label[m][i]}, ids.size()).first->second);
      cur = std::move(next);
    }
    orbit = cur;
    K = 0;
    for (auto o : orbit) K = std::max(K, o + 1);
  } else {
    for (std::size_t p = 0; p < P; ++p) orbit[p] = p;
  }

  std::vector<std::size_t> rep(K, P);
  for (std::size_t p = 0; p < P; ++p)
    if (rep[orbit[p]] == P) rep[orbit[p]] = p;
  // Leaves under each node, per level.
  std::vector<std::vector<std::vector<std::size_t>>> leaves(N);
  for (std::size_t n = 0; n < N; ++n) {
    leaves[n].resize(tower.level(n).block_count());
    for (std::size_t p = 0; p < P; ++p) leaves[n][ancestor[n][p]].push_back(p);
  }

  LinearProgram lp;
  lp.num_vars = K;
  lp.objective.assign(K, 0.0);
  std::vector<double> mass(K, 0.0);
  for (std::size_t p = 0; p < P; ++p) {
    lp.objective[orbit[p]] += w[p];
    mass[orbit[p]] += t[p];
  }
  for (std::size_t o = 0; o < K; ++o) {
    const std::size_t p = rep[o];
    for (std::size_t n = 0; n < N; ++n) {
      const auto& cyl = leaves[n][ancestor[n][p]];
      double total = 0.0;
      for (auto q : cyl) total += t[q];
      std::vector<double> row(K, 0.0);
      row[o] += 1.0;
      for (auto q : cyl) row[orbit[q]] -= t[q] / total;
      std::vector<double> neg(row);
      for (auto& v : neg) v = -v;
      lp.add_row(std::move(row), L.beta()[n]);
      lp.add_row(std::move(neg), L.beta()[n]);
    }
  }
  std::vector<double> negmass(mass);
  for (auto& v : negmass) v = -v;
  lp.add_row(mass, 0.0);
  lp.add_row(negmass, 0.0);

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw NumericalError("Monge-Kantorovich LP did not reach an optimum");
  res.lower = res.upper = std::max(sol.value, 0.0);
  res.iterations = sol.pivots;
  return res;
}

std::size_t hermitian_coordinate_count(const FdCStar& alg) { return alg.complex_dimension(); }

namespace {

struct CoordIndex {
  std::size_t block, r, c;
  bool imag;
};

std::vector<CoordIndex> coordinate_map(const FdCStar& alg) {
  std::vector<CoordIndex> out;
  for (std::size_t b = 0; b < alg.block_count(); ++b) {
    const std::size_t d = alg.block_dim(b);
    for (std::size_t i = 0; i < d; ++i) out.push_back({b, i, i, false});
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = r + 1; c < d; ++c) {
        out.push_back({b, r, c, false});
        out.push_back({b, r, c, true});
      }
  }
  return out;
}

}  // namespace

BlockElement hermitian_basis_element(const FdCStar& alg, std::size_t k) {
  const auto map = coordinate_map(alg);
  if (k >= map.size()) throw ValidationError("Hermitian coordinate index out of range");
  BlockElement e = BlockElement::zero(alg);
  const auto& ci = map[k];
  if (ci.r == ci.c) {
    e.at(ci.block, ci.r, ci.c) = 1.0;
  } else if (!ci.imag) {
    e.at(ci.block, ci.r, ci.c) = 1.0;
    e.at(ci.block, ci.c, ci.r) = 1.0;
  } else {
    e.at(ci.block, ci.r, ci.c) = Complex(0.0, 1.0);
    e.at(ci.block, ci.c, ci.r) = Complex(0.0, -1.0);
  }
  return e;
}

BlockElement from_hermitian_coordinates(const FdCStar& alg, const std::vector<double>& x) {
  const auto map = coordinate_map(alg);
  if (x.size() != map.size()) throw ValidationError("wrong number of Hermitian coordinates");
  BlockElement e = BlockElement::zero(alg);
  for (std::size_t k = 0; k < map.size(); ++k) {
    const auto& ci = map[k];
    if (ci.r == ci.c) {
      e.at(ci.block, ci.r, ci.c) = x[k];
    } else if (!ci.imag) {
      e.at(ci.block, ci.r, ci.c) += x[k];
      e.at(ci.block, ci.c, ci.r) += x[k];
    } else {
      e.at(ci.block, ci.r, ci.c) += Complex(0.0, x[k]);
      e.at(ci.block, ci.c, ci.r) += Complex(0.0, -x[k]);
    }
  }
  return e;
}

std::vector<double> to_hermitian_coordinates(const BlockElement& a) {
  const auto map = coordinate_map(a.parent());
  std::vector<double> x(map.size());
  for (std::size_t k = 0; k < map.size(); ++k) {
    const auto& ci = map[k];
    const Complex v = 0.5 * (a.at(ci.block, ci.r, ci.c) + std::conj(a.at(ci.block, ci.c, ci.r)));
    x[k] = ci.imag ? v.imag() : v.real();
  }
  return x;
}

MkResult mk_general(const LipData& L, const StateVec& phi, const StateVec& psi, double tol, std::size_t max_iterations) {
  require_states_on(L, phi, psi);
  if (!(tol > 0.0)) throw ValidationError("cutting-plane tolerance must be positive");
  const auto& alg = L.algebra();
  const std::size_t N = L.top();
  const std::size_t D = hermitian_coordinate_count(alg);
  MkResult res;
  res.method = MkMethod::cutting_plane;
  if (N == 0) return res;

  std::vector<BlockElement> basis;
  for (std::size_t k = 0; k < D; ++k) basis.push_back(hermitian_basis_element(alg, k));

  LinearProgram lp;
  lp.num_vars = D;
  lp.objective.resize(D);
  std::vector<double> mu_row(D);
  for (std::size_t k = 0; k < D; ++k) {
    lp.objective[k] = (state_eval(phi, basis[k]) - state_eval(psi, basis[k])).real();
    mu_row[k] = trace_eval(L.trace(), basis[k]).real();
  }
  lp.add_row(mu_row, 0.0);
  for (auto& v : mu_row) v = -v;
  lp.add_row(mu_row, 0.0);
  // Every feasible a has ||a|| = ||a - E_0 a|| <= beta(0), which bounds each coordinate.
  const double box = L.beta()[0];
  for (std::size_t k = 0; k < D; ++k) {
    std::vector<double> e(D, 0.0);
    e[k] = 1.0;
    lp.add_row(e, box);
    e[k] = -1.0;
    lp.add_row(std::move(e), box);
  }

  // R_n: coordinates of (1 - E_n) applied to each basis element, column-wise.
  std::vector<std::vector<std::vector<double>>> R(N);
  for (std::size_t n = 0; n < N; ++n) {
    R[n].assign(D, std::vector<double>(D));
    for (std::size_t k = 0; k < D; ++k) {
      const auto col = to_hermitian_coordinates(basis[k] - L.expectation(n).apply(basis[k]));
      for (std::size_t i = 0; i < D; ++i) R[n][i][k] = col[i];
    }
  }

  res.lower = 0.0;
  res.upper = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    res.iterations = it;
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) throw NumericalError("cutting-plane master LP failed");
    res.upper = std::min(res.upper, sol.value);
    const auto& x = sol.x;

    double worst = 0.0;
    std::vector<std::pair<std::vector<double>, double>> cuts;
    for (std::size_t n = 0; n < N; ++n) {
      std::vector<double> hx(D, 0.0);
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t k = 0; k < D; ++k) hx[i] += R[n][i][k] * x[k];
      const BlockElement h = from_hermitian_coordinates(alg, hx);
      const double bn = L.beta()[n];
      for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto eig = herm_eigen(h.block(b));
        for (std::size_t pick : {std::size_t(0), eig.eigenvalues.size() - 1}) {
          const double lam = eig.eigenvalues[pick];
          worst = std::max(worst, std::abs(lam) / bn);
          if (std::abs(lam) <= bn * (1.0 + 1e-12)) continue;
          // g_k = <v, B_k v> over the coordinates of block b.
          std::vector<Complex> v(eig.eigenvectors.rows());
          for (std::size_t r = 0; r < v.size(); ++r) v[r] = eig.eigenvectors(r, pick);
          std::vector<double> g(D, 0.0);
          for (std::size_t k = 0; k < D; ++k) {
            const auto& bk = basis[k].block(b);
            Complex s = 0.0;
            for (std::size_t r = 0; r < v.size(); ++r)
              for (std::size_t c = 0; c < v.size(); ++c) s += std::conj(v[r]) * bk(r, c) * v[c];
            g[k] = s.real();
          }
          const double sgn = lam > 0 ? 1.0 : -1.0;
          std::vector<double> row(D, 0.0);
          for (std::size_t i = 0; i < D; ++i) {
            if (g[i] == 0.0) continue;
            for (std::size_t k = 0; k < D; ++k) row[k] += sgn * g[i] * R[n][i][k];
          }
          cuts.emplace_back(std::move(row), bn);
          if (eig.eigenvalues.size() == 1) break;
        }
      }
    }
    // x / max(1, lip(x)) is feasible, which gives the lower bound.
    res.lower = std::max(res.lower, sol.value / std::max(1.0, worst));
    if (res.upper - res.lower <= tol) {
      res.converged = true;
      return res;
    }
    if (cuts.empty()) {
      res.lower = res.upper;
      res.converged = true;
      return res;
    }
    for (auto& [row, bound] : cuts) lp.add_row(std::move(row), bound);
  }
  res.converged = false;
  return res;
}

double mk_depth1_closed_form(double beta0, const StateVec& phi, const StateVec& psi) {
  if (!(phi.parent() == psi.parent()) || phi.parent().block_count() != 1)
    throw ValidationError("the closed form needs two states on a single matrix block");
  if (!(beta0 > 0.0)) throw ValidationError("beta(0) must be positive");
  const auto ev = herm_eigenvalues(phi.block(0) - psi.block(0));
  double s = 0.0;
  for (double l : ev) s += std::abs(l);
  return beta0 * s;
}

StateVec pushforward_under_expectation(const StateVec& phi, const ExpectationOperator& op) { return op.pullback(phi); }

}  // namespace afprop
