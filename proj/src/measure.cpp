#include "macrostab/measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"

namespace macrostab {
namespace {

using Index = std::int64_t;

constexpr double kDegenerateGap = 1e-12;
constexpr double kInitialStep = std::numbers::pi / 8.0;
constexpr double kFinalStep = 1e-6;

Eigen::Vector3d from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void to_angles(const Eigen::Vector3d& v, double& theta, double& phi) {
  theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
  phi = std::atan2(v.y(), v.x());
}

// Single-site and two-site Pauli data of one ordered pair.
struct PairMoments {
  Eigen::Vector3d rx;
  Eigen::Vector3d ry;
  Eigen::Matrix3d t;  // <sigma^a(x) sigma^b(y)>
};

PairMoments pair_moments(const PauliMoments& mom, int x, int y) {
  PairMoments p;
  for (int a = 0; a < 3; ++a) {
    p.rx(a) = mom.mean_of(x, a);
    p.ry(a) = mom.mean_of(y, a);
    for (int b = 0; b < 3; ++b) p.t(a, b) = mom.product(x, a, y, b);
  }
  return p;
}

struct Evaluation {
  double deviation = -1.0;  // -1: no outcome of a passes the floor
  int a = 1;
  int b = 1;
  double p_a = 0.0;
  double p_b_given_a = 0.0;
  double p_b = 0.0;
};

// Projectors (1 +- n.sigma)/2 give
//   P(a) = (1 + s n.r_x)/2,  P(a, b) = (1 + s n.r_x + t m.r_y + s t n.T.m)/4.
Evaluation evaluate(const PairMoments& p, const Eigen::Vector3d& n, const Eigen::Vector3d& m,
                    double floor) {
  Evaluation best;
  const double nx = n.dot(p.rx);
  const double my = m.dot(p.ry);
  const double nm = n.dot(p.t * m);
  for (int s : {1, -1}) {
    const double pa = 0.5 * (1.0 + s * nx);
    if (pa < floor) continue;
    for (int t : {1, -1}) {
      const double pb = 0.5 * (1.0 + t * my);
      const double joint = 0.25 * (1.0 + s * nx + t * my + s * t * nm);
      const double cond = joint / pa;
      const double dev = std::abs(cond - pb);
      if (dev > best.deviation) best = Evaluation{dev, s, t, pa, cond, pb};
    }
  }
  return best;
}

PairDeviation optimize_pair(const PauliMoments& mom, const LatticeSpec& lattice, int x, int y,
                            double floor) {
  const PairMoments p = pair_moments(mom, x, y);
  const auto grid = direction_grid();
  Evaluation best;
  int best_a = 0, best_b = 0;
  for (int ga = 0; ga < static_cast<int>(grid.size()); ++ga) {
    for (int gb = 0; gb < static_cast<int>(grid.size()); ++gb) {
      const Evaluation e = evaluate(p, grid[static_cast<std::size_t>(ga)],
                                    grid[static_cast<std::size_t>(gb)], floor);
      if (e.deviation > best.deviation) {
        best = e;
        best_a = ga;
        best_b = gb;
      }
    }
  }

  std::array<double, 4> angles{};
  to_angles(grid[static_cast<std::size_t>(best_a)], angles[0], angles[1]);
  to_angles(grid[static_cast<std::size_t>(best_b)], angles[2], angles[3]);
  if (best.deviation >= 0.0) {
    for (double step = kInitialStep; step >= kFinalStep;) {
      bool improved = false;
      for (std::size_t k = 0; k < angles.size(); ++k) {
        for (double sign : {1.0, -1.0}) {
          std::array<double, 4> trial = angles;
          trial[k] += sign * step;
          const Evaluation e = evaluate(p, from_angles(trial[0], trial[1]),
                                        from_angles(trial[2], trial[3]), floor);
          if (e.deviation > best.deviation) {
            best = e;
            angles = trial;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  PairDeviation out;
  out.x = x;
  out.y = y;
  out.distance = lattice.distance(x, y);
  out.grid_a = best_a;
  out.grid_b = best_b;
  out.n = from_angles(angles[0], angles[1]);
  out.m = from_angles(angles[2], angles[3]);
  if (best.deviation >= 0.0) {
    out.a = best.a;
    out.b = best.b;
    out.p_a = best.p_a;
    out.p_b_given_a = best.p_b_given_a;
    out.p_b = best.p_b;
    out.deviation = std::min(best.deviation, 1.0);
  }
  return out;
}

void validate(const LatticeSpec& lattice, const StabilityParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    fail(ErrorKind::kArgument, "epsilon must lie in (0, 1)");
  }
  if (!(params.varepsilon > 0.0 && params.varepsilon < 1.0)) {
    fail(ErrorKind::kArgument, "varepsilon must lie in (0, 1)");
  }
  const int n = lattice.n_sites;
  if (params.min_distance < 1 || params.min_distance >= n) {
    fail(ErrorKind::kArgument, "min_distance=" + std::to_string(params.min_distance) +
                                   " must lie in [1, N) for N=" + std::to_string(n));
  }
  if (lattice.distance(0, n / 2) < params.min_distance &&
      lattice.distance(0, n - 1) < params.min_distance) {
    fail(ErrorKind::kArgument,
         "no site pair reaches min_distance=" + std::to_string(params.min_distance));
  }
}

void check_pair(const LocalOperator& a, const LocalOperator& b, int n_sites) {
  if (a.site() == b.site()) {
    fail(ErrorKind::kArgument, "conditional distribution needs distinct sites");
  }
  if (a.site() >= n_sites || b.site() >= n_sites) {
    fail(ErrorKind::kArgument, "observable site outside lattice");
  }
}

}  // namespace

std::array<LocalOperator, 2> eigenprojectors(const LocalOperator& observable) {
  const PauliDecomposition p = observable.pauli();
  const auto& c = p.vector;
  const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (r < kDegenerateGap) {
    fail(ErrorKind::kArgument, "observable at site " + std::to_string(observable.site()) +
                                   " is degenerate (proportional to the identity)");
  }
  const double k = 0.5 / r;
  return {LocalOperator::from_pauli(observable.site(), {0.5, {k * c[0], k * c[1], k * c[2]}}),
          LocalOperator::from_pauli(observable.site(), {0.5, {-k * c[0], -k * c[1], -k * c[2]}})};
}

MeasurementOutcome measure_local(const StateVector& psi, const LocalOperator& observable) {
  psi.require_normalized();
  if (observable.site() >= psi.n_sites()) {
    fail(ErrorKind::kArgument, "observable site outside lattice");
  }
  const auto projectors = eigenprojectors(observable);
  const PauliDecomposition p = observable.pauli();
  const double r = std::hypot(p.vector[0], p.vector[1], p.vector[2]);
  MeasurementOutcome out{observable, {p.identity + r, p.identity - r}, {}, {}};
  for (std::size_t i = 0; i < 2; ++i) {
    StateVector projected = apply_local(projectors[i], psi);
    const double prob = projected.norm_squared();
    out.probabilities[i] = prob;
    if (prob >= kPostStateThreshold) {
      out.post_states[i] = StateVector::normalized(psi.lattice(), projected.to_vector());
    }
  }
  return out;
}

double ConditionalTable::max_deviation(double floor) const {
  double best = -1.0;
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(p_a[i] >= floor) || std::isnan(p_b_given_a[i][0])) continue;
    for (std::size_t j = 0; j < 2; ++j) best = std::max(best, std::abs(p_b_given_a[i][j] - p_b[j]));
  }
  return best;
}

ConditionalTable conditional_distribution(const StateVector& psi, const LocalOperator& a_obs,
                                          const LocalOperator& b_obs) {
  check_pair(a_obs, b_obs, psi.n_sites());
  const MeasurementOutcome first = measure_local(psi, a_obs);
  const MeasurementOutcome direct = measure_local(psi, b_obs);
  ConditionalTable table;
  table.x = a_obs.site();
  table.y = b_obs.site();
  table.a_values = first.eigenvalues;
  table.b_values = direct.eigenvalues;
  table.p_a = first.probabilities;
  table.p_b = direct.probabilities;
  for (std::size_t i = 0; i < 2; ++i) {
    if (first.post_states[i]) {
      table.p_b_given_a[i] = measure_local(*first.post_states[i], b_obs).probabilities;
    } else {
      table.p_b_given_a[i].fill(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return table;
}

ConditionalTable conditional_distribution(const Mixture& rho, const LocalOperator& a_obs,
                                          const LocalOperator& b_obs) {
  ConditionalTable total;
  std::array<std::array<double, 2>, 2> joint{};
  for (std::size_t k = 0; k < rho.states.size(); ++k) {
    const ConditionalTable t = conditional_distribution(rho.states[k], a_obs, b_obs);
    const double w = rho.weights[k];
    if (k == 0) {
      total.x = t.x;
      total.y = t.y;
      total.a_values = t.a_values;
      total.b_values = t.b_values;
    }
    for (std::size_t i = 0; i < 2; ++i) {
      total.p_a[i] += w * t.p_a[i];
      total.p_b[i] += w * t.p_b[i];
      if (std::isnan(t.p_b_given_a[i][0])) continue;
      for (std::size_t j = 0; j < 2; ++j) joint[i][j] += w * t.p_a[i] * t.p_b_given_a[i][j];
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      total.p_b_given_a[i][j] = total.p_a[i] >= kPostStateThreshold
                                    ? joint[i][j] / total.p_a[i]
                                    : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return total;
}

std::span<const Eigen::Vector3d> direction_grid() {
  static const std::vector<Eigen::Vector3d> grid = [] {
    std::vector<Eigen::Vector3d> g;
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        for (int k = -1; k <= 1; ++k) {
          if (i == 0 && j == 0 && k == 0) continue;
          g.push_back(Eigen::Vector3d(i, j, k).normalized());
        }
      }
    }
    return g;
  }();
  return grid;
}

MeasurementStabilityReport stability_test(const LatticeSpec& lattice, const PauliMoments& moments,
                                          const StabilityParams& params) {
  validate(lattice, params);
  const int n = lattice.n_sites;
  std::vector<std::pair<int, int>> order;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y) order.emplace_back(x, y);
    }
  }
  MeasurementStabilityReport report;
  report.epsilon = params.epsilon;
  report.varepsilon = params.varepsilon;
  report.min_distance = params.min_distance;
  report.pairs.resize(order.size());
#pragma omp parallel for schedule(dynamic)
  for (Index k = 0; k < static_cast<Index>(order.size()); ++k) {
    const auto [x, y] = order[static_cast<std::size_t>(k)];
    report.pairs[static_cast<std::size_t>(k)] =
        optimize_pair(moments, lattice, x, y, params.varepsilon);
  }

  int max_distance = 0;
  for (const PairDeviation& p : report.pairs) max_distance = std::max(max_distance, p.distance);
  report.max_deviation_at_distance.assign(static_cast<std::size_t>(max_distance) + 1, -1.0);
  report.max_deviation = 0.0;
  for (const PairDeviation& p : report.pairs) {
    double& slot = report.max_deviation_at_distance[static_cast<std::size_t>(p.distance)];
    slot = std::max(slot, p.deviation);
    if (p.distance >= params.min_distance) {
      report.max_deviation = std::max(report.max_deviation, p.deviation);
    }
  }
  report.stable = report.max_deviation <= params.epsilon;
  return report;
}

MeasurementStabilityReport stability_test(const StateVector& psi, const StabilityParams& params) {
  validate(psi.lattice(), params);
  return stability_test(psi.lattice(), compute_pauli_moments(psi), params);
}

MeasurementStabilityReport stability_test(const Mixture& rho, const StabilityParams& params) {
  const LatticeSpec& lattice = rho.states.front().lattice();
  validate(lattice, params);
  return stability_test(lattice, compute_pauli_moments(rho), params);
}

std::vector<DeviationRow> deviation_table(const LatticeSpec& lattice, const PauliMoments& moments,
                                          const StabilityParams& params) {
  validate(lattice, params);
  const auto grid = direction_grid();
  const int n = lattice.n_sites;
  std::vector<DeviationRow> rows;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || lattice.distance(x, y) < params.min_distance) continue;
      const PairMoments p = pair_moments(moments, x, y);
      for (int ga = 0; ga < static_cast<int>(grid.size()); ++ga) {
        const Eigen::Vector3d& nv = grid[static_cast<std::size_t>(ga)];
        const double nx = nv.dot(p.rx);
        for (int gb = 0; gb < static_cast<int>(grid.size()); ++gb) {
          const Eigen::Vector3d& mv = grid[static_cast<std::size_t>(gb)];
          const double my = mv.dot(p.ry);
          const double nm = nv.dot(p.t * mv);
          for (int s : {1, -1}) {
            const double pa = 0.5 * (1.0 + s * nx);
            if (pa < params.varepsilon) continue;
            for (int t : {1, -1}) {
              const double pb = 0.5 * (1.0 + t * my);
              const double cond = 0.25 * (1.0 + s * nx + t * my + s * t * nm) / pa;
              rows.push_back({x, y, ga, gb, s, t, cond, pb, std::abs(cond - pb)});
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace macrostab
