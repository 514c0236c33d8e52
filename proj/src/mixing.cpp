#include "thermoshift/mixing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "thermoshift/rpf.hpp"

namespace thermoshift {

double weak_bernoulli_bound(double delta) { return 2.0 * std::sinh(10.0 * delta) + 4.0 * delta; }

CylinderPartition make_partition(const DirectedGraph& g, const std::vector<Vertex>& v_prime) {
  CylinderPartition alpha;
  const std::size_t rest = static_cast<std::size_t>(-1);
  alpha.cell_of.assign(g.size(), rest);
  if (v_prime.empty()) {
    for (Vertex v = 0; v < g.size(); ++v) {
      alpha.singled.push_back(v);
      alpha.cell_of[v] = v;
    }
    alpha.cells = g.size();
    return alpha;
  }
  for (Vertex v : v_prime) {
    if (v >= g.size()) throw InputError("partition references an unknown vertex");
    if (alpha.cell_of[v] != rest) continue;
    alpha.cell_of[v] = alpha.singled.size();
    alpha.singled.push_back(v);
  }
  alpha.cells = alpha.singled.size();
  if (alpha.singled.size() < g.size()) {
    for (auto& cell : alpha.cell_of) {
      if (cell == rest) cell = alpha.cells;
    }
    ++alpha.cells;
  }
  return alpha;
}

namespace {

// Rows of `past` are the vectors x -> mu(A n [x_0 = x]) for the cells A of
// alpha_{-n}^0 with positive mass; columns of `future` are y -> mu(B | x_k = y)
// for the cells B of alpha_k^{k+n}.
struct LabelBlocks {
  Eigen::MatrixXd past;
  Eigen::MatrixXd future;
};

LabelBlocks label_blocks(const MarkovMeasure& mu, const CylinderPartition& alpha, std::size_t n) {
  const auto V = static_cast<Eigen::Index>(mu.graph().size());
  const Eigen::MatrixXd& P = mu.P();
  auto mask = [&](std::size_t cell) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(V);
    for (Eigen::Index v = 0; v < V; ++v) {
      if (alpha.cell_of[static_cast<std::size_t>(v)] == cell) m(v) = 1.0;
    }
    return m;
  };
  std::vector<Eigen::VectorXd> masks;
  for (std::size_t c = 0; c < alpha.cells; ++c) masks.push_back(mask(c));

  // Forward over labels l_{-n}, ..., l_0.
  std::vector<Eigen::VectorXd> forward;
  for (const auto& m : masks) {
    Eigen::VectorXd start = mu.pi().cwiseProduct(m);
    if (start.sum() > 0.0) forward.push_back(std::move(start));
  }
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Eigen::VectorXd> next;
    for (const auto& row : forward) {
      Eigen::VectorXd moved = (row.transpose() * P).transpose();
      for (const auto& m : masks) {
        Eigen::VectorXd restricted = moved.cwiseProduct(m);
        if (restricted.sum() > 0.0) next.push_back(std::move(restricted));
      }
    }
    forward = std::move(next);
  }

  // Backward over labels l_{k+n}, ..., l_k.
  std::vector<Eigen::VectorXd> backward;
  for (const auto& m : masks) backward.push_back(m);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Eigen::VectorXd> next;
    for (const auto& col : backward) {
      Eigen::VectorXd pulled = P * col;
      for (const auto& m : masks) {
        Eigen::VectorXd restricted = pulled.cwiseProduct(m);
        if (restricted.sum() > 0.0) next.push_back(std::move(restricted));
      }
    }
    backward = std::move(next);
  }
  // Drop future cells of zero measure.
  std::erase_if(backward, [&mu](const Eigen::VectorXd& col) { return !(mu.pi().dot(col) > 0.0); });

  LabelBlocks blocks;
  blocks.past.resize(static_cast<Eigen::Index>(forward.size()), V);
  for (std::size_t i = 0; i < forward.size(); ++i) blocks.past.row(static_cast<Eigen::Index>(i)) = forward[i];
  blocks.future.resize(V, static_cast<Eigen::Index>(backward.size()));
  for (std::size_t i = 0; i < backward.size(); ++i) blocks.future.col(static_cast<Eigen::Index>(i)) = backward[i];
  return blocks;
}

// P^k - 1 pi^T: mu(A n B) - mu(A) mu(B) = past_A^T (P^k - 1 pi^T) future_B.
Eigen::MatrixXd decorrelation(const MarkovMeasure& mu, std::size_t k) {
  const auto V = mu.P().rows();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(V, V);
  for (std::size_t i = 0; i < k; ++i) power = power * mu.P();
  return power - Eigen::VectorXd::Ones(V) * mu.pi().transpose();
}

double wb_from_blocks(const LabelBlocks& blocks, const Eigen::MatrixXd& D) {
  const Eigen::MatrixXd left = blocks.past * D;
  double total = 0.0;
  constexpr Eigen::Index chunk = 256;
  for (Eigen::Index start = 0; start < left.rows(); start += chunk) {
    const Eigen::Index rows = std::min(chunk, left.rows() - start);
    total += (left.middleRows(start, rows) * blocks.future).cwiseAbs().sum();
  }
  return total;
}

}  // namespace

double weak_bernoulli_value(const MarkovMeasure& mu, const CylinderPartition& alpha, std::size_t n,
                            std::size_t k) {
  if (k == 0) throw InputError("weak Bernoulli statistic needs k >= 1 (windows [-n,0] and [k,k+n] overlap)");
  return wb_from_blocks(label_blocks(mu, alpha, n), decorrelation(mu, k));
}

WeakBernoulliReport weak_bernoulli_statistic(const MarkovMeasure& mu, const std::vector<Vertex>& v_prime,
                                             std::size_t n_max, std::size_t k_max, std::size_t threads) {
  if (n_max == 0 || k_max == 0) throw InputError("n_max and k_max must be at least 1");
  const CylinderPartition alpha = make_partition(mu.graph(), v_prime);
  std::vector<LabelBlocks> blocks;
  for (std::size_t n = 1; n <= n_max; ++n) blocks.push_back(label_blocks(mu, alpha, n));
  std::vector<Eigen::MatrixXd> decor;
  for (std::size_t k = 1; k <= k_max; ++k) decor.push_back(decorrelation(mu, k));

  const std::size_t cells = n_max * k_max;
  std::vector<double> values(cells, 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      values[cell] = wb_from_blocks(blocks[cell / k_max], decor[cell % k_max]);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, cells));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  WeakBernoulliReport report;
  report.partition = v_prime;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    report.table[{cell / k_max + 1, cell % k_max + 1}] = values[cell];
  }
  return report;
}

std::vector<Vertex> choose_s_star(const MarkovMeasure& mu, double delta) {
  const DirectedGraph& g = mu.graph();
  std::vector<Vertex> order = g.by_identifier();
  std::stable_sort(order.begin(), order.end(), [&mu](Vertex a, Vertex b) {
    return mu.pi()(static_cast<Eigen::Index>(a)) > mu.pi()(static_cast<Eigen::Index>(b));
  });
  std::vector<Vertex> chosen;
  double mass = 0.0;
  for (Vertex v : order) {
    chosen.push_back(v);
    mass += mu.pi()(static_cast<Eigen::Index>(v));
    if (mass > 1.0 - delta) break;
  }
  return chosen;
}

KDelta find_K_delta(const MarkovMeasure& mu, double delta, double gamma_mass) {
  if (!(delta > 0.0 && delta < kDeltaZero)) {
    throw InputError("delta must lie in (0, " + std::to_string(kDeltaZero) + ")");
  }
  constexpr std::size_t k_limit = 10000;
  const DirectedGraph& g = mu.graph();
  const auto phi_star = normalized_potential(mu);

  KDelta result;
  result.certificate = a_priori_certificate(mu, choose_s_star(mu, delta), boundary_distortion_constant(phi_star));
  result.certificate.m_const = distortion_constant(phi_star);
  const double c_star = result.certificate.c_star;

  result.m = 1;
  while (sup_birkhoff_variation(phi_star, result.m) >= delta) ++result.m;
  const std::size_t m = result.m;

  // gamma: m-cylinders by decreasing mass until the target is exceeded.
  result.gamma_threshold = std::exp(-delta / (2.0 * c_star * c_star));
  const double target = std::max(gamma_mass, result.gamma_threshold);
  auto words = g.admissible_words(m);
  std::vector<double> mass;
  for (const auto& w : words) mass.push_back(mu.cylinder(w));
  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&mass](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });
  std::vector<double> gamma_cyl;
  for (std::size_t i : order) {
    if (result.gamma_mass > target) break;
    result.gamma.push_back(words[i]);
    gamma_cyl.push_back(mass[i]);
    result.gamma_mass += mass[i];
  }
  if (!(result.gamma_mass > target)) throw InputError("no family of m-cylinders reaches the requested mass");

  // x(c): c continued by successors with the least identifier.
  for (const auto& c : result.gamma) {
    Path x = c;
    for (std::size_t step = 0; step < m; ++step) {
      auto succ = g.successors(x.back());
      x.push_back(*std::min_element(succ.begin(), succ.end(),
                                    [&g](Vertex a, Vertex b) { return g.id(a) < g.id(b); }));
    }
    result.representatives.push_back(std::move(x));
  }

  const auto V = static_cast<Eigen::Index>(g.size());
  const auto G = static_cast<Eigen::Index>(result.gamma.size());
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(V, V);
  for (const auto& [edge, value] : phi_star.table()) {
    Q(static_cast<Eigen::Index>(edge[0]), static_cast<Eigen::Index>(edge[1])) = std::exp(value);
  }
  auto inner_sum = [&phi_star](const Path& c, std::size_t upto) {
    double total = 0.0;
    for (std::size_t i = 0; i < upto; ++i) {
      const Vertex e[2] = {c[i], c[i + 1]};
      total += phi_star.value(e);
    }
    return total;
  };
  // Rows: y -> exp(phi*_{m-1}(c)) 1[y = c_{m-1}]; L acts on such functions as Q^T.
  Eigen::MatrixXd current = Eigen::MatrixXd::Zero(G, V);
  for (Eigen::Index i = 0; i < G; ++i) {
    const Path& c = result.gamma[static_cast<std::size_t>(i)];
    current(i, static_cast<Eigen::Index>(c.back())) = std::exp(inner_sum(c, m - 1));
  }

  std::vector<std::size_t> last_fail(static_cast<std::size_t>(G * G), 0);
  const double pi_min = mu.pi().minCoeff();
  const double slack = 1.0 - std::exp(-delta);
  Eigen::MatrixXd Pj = Eigen::MatrixXd::Identity(V, V);
  bool settled = false;
  for (std::size_t k = 1; k <= k_limit && !settled; ++k) {
    if (k >= m) {
      current = current * Q;
      Pj = Pj * mu.P();
    }
    for (Eigen::Index i = 0; i < G; ++i) {
      const Path& c = result.gamma[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < G; ++j) {
        const Path& x = result.representatives[static_cast<std::size_t>(j)];
        double value;
        if (k >= m) {
          value = current(i, static_cast<Eigen::Index>(x.front()));
        } else {
          // L^k 1_[c](x) = exp(phi*_k(c_0..c_k)) if x starts with c_k..c_{m-1}.
          const bool match = std::equal(c.begin() + static_cast<long>(k), c.end(), x.begin());
          value = match ? std::exp(inner_sum(c, k)) : 0.0;
        }
        const double target_value = gamma_cyl[static_cast<std::size_t>(i)];
        if (!(value > 0.0) || std::abs(std::log(value / target_value)) > delta) {
          last_fail[static_cast<std::size_t>(i * G + j)] = k;
        }
      }
    }
    if (k >= m) {
      // |P^j(x,y)/pi(y) - 1| <= ||P^j(x,.) - pi||_1 / pi_min, and the l1 distance
      // never increases, so once it is below the slack every later k passes.
      const double spread = (Pj.rowwise() - mu.pi().transpose()).cwiseAbs().rowwise().sum().maxCoeff();
      settled = spread / pi_min <= slack;
    }
  }
  if (!settled) {
    throw NonConvergenceError("no k <= 10000 brings L^k 1_[c] within exp(+-delta) of mu[c]; "
                              "the measure is not mixing at this delta");
  }
  for (std::size_t fail : last_fail) result.max_pair_K = std::max(result.max_pair_K, fail + 1);
  result.K = result.max_pair_K + m;
  return result;
}

PairBound step1_pair_bound(const MarkovMeasure& mu, const GibbsCertificate& cert, const Path& A,
                           const Path& B, double delta, std::size_t k) {
  if (A.empty() || A.size() != B.size()) throw InputError("A and B must be nonempty cylinders of equal length");
  if (k == 0) throw InputError("k must be at least 1");
  const DirectedGraph& g = mu.graph();
  if (!g.is_admissible(A) || !g.is_admissible(B)) throw InputError("A and B must be admissible");
  auto in_s = [&cert](Vertex v) { return std::find(cert.s_star.begin(), cert.s_star.end(), v) != cert.s_star.end(); };
  if (!in_s(A.back()) || !in_s(B.front())) {
    throw PreconditionError("the last symbol of A and the first symbol of B must lie in S*");
  }
  const auto V = mu.P().rows();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(V, V);
  for (std::size_t i = 0; i < k; ++i) power = power * mu.P();
  const double muA = mu.cylinder(A);
  const double muB = mu.cylinder(B);
  const auto last = static_cast<Eigen::Index>(A.back());
  const auto first = static_cast<Eigen::Index>(B.front());
  const double joint = muA * power(last, first) * muB / mu.pi()(first);
  return PairBound{std::abs(joint - muA * muB), 2.0 * std::sinh(10.0 * delta) * muA * muB};
}

}  // namespace thermoshift
