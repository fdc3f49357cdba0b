#pragma once

// Reference computations for the test suites. Everything here works on dense
// matrices assembled by Kronecker products (site 0 is the least significant
// factor) and shares no code with the library kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "macrostab/state.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Dense = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Dense pauli(char axis) {
  Dense m(2, 2);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = Dense::Identity(2, 2);
  }
  return m;
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// `op` on `site`, identity elsewhere: I (x) ... (x) op (x) ... (x) I with the
// highest site as the leftmost factor.
inline Dense embed(int n, int site, const Dense& op) {
  Dense out = Dense::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) out = kron(out, k == site ? op : Dense::Identity(2, 2));
  return out;
}

inline Dense site_pauli(int n, int site, char axis) { return embed(n, site, pauli(axis)); }

// sigma^a(x) sigma^b(y), x != y, built as one Kronecker chain.
inline Dense pauli_pair(int n, int x, char a, int y, char b) {
  Dense out = Dense::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    out = kron(out, k == x ? pauli(a) : k == y ? pauli(b) : Dense::Identity(2, 2));
  }
  return out;
}

inline Dense total(int n, char axis) {
  Dense out = Dense::Zero(1 << n, 1 << n);
  for (int x = 0; x < n; ++x) out += site_pauli(n, x, axis);
  return out;
}

inline Vec to_dense(const macrostab::StateVector& psi) {
  Vec v(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  return v;
}

inline double expect(const Dense& op, const Vec& v) { return v.dot(op * v).real(); }

inline double variance(const Dense& op, const Vec& v) {
  const double m = expect(op, v);
  return expect(op * op, v) - m * m;
}

// Open or periodic chain bonds; a 2-site ring keeps one bond.
inline std::vector<std::pair<int, int>> chain_bonds(int n, bool periodic) {
  std::vector<std::pair<int, int>> b;
  for (int x = 0; x + 1 < n; ++x) b.emplace_back(x, x + 1);
  if (periodic && n > 2) b.emplace_back(n - 1, 0);
  return b;
}

inline Dense tfim(int n, double J, double h, double B, bool periodic = false) {
  Dense H = Dense::Zero(1 << n, 1 << n);
  for (auto [x, y] : chain_bonds(n, periodic)) H -= J * pauli_pair(n, x, 'z', y, 'z');
  for (int x = 0; x < n; ++x) H -= h * site_pauli(n, x, 'x') + B * site_pauli(n, x, 'z');
  return H;
}

inline Dense xxz(int n, double J, double delta, double h, double B, bool periodic = false) {
  Dense H = Dense::Zero(1 << n, 1 << n);
  for (auto [x, y] : chain_bonds(n, periodic)) {
    H += J * (pauli_pair(n, x, 'x', y, 'x') + pauli_pair(n, x, 'y', y, 'y') +
              delta * pauli_pair(n, x, 'z', y, 'z'));
  }
  for (int x = 0; x < n; ++x) H -= h * site_pauli(n, x, 'x') + B * site_pauli(n, x, 'z');
  return H;
}

inline Eigen::VectorXd spectrum(const Dense& H) {
  Eigen::SelfAdjointEigenSolver<Dense> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline Dense dot_sigma(int n, int site, const Eigen::Vector3d& d) {
  return d.x() * site_pauli(n, site, 'x') + d.y() * site_pauli(n, site, 'y') +
         d.z() * site_pauli(n, site, 'z');
}

inline Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Points spread over the sphere (golden-angle spiral).
inline std::vector<Eigen::Vector3d> sphere_points(int count) {
  std::vector<Eigen::Vector3d> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double r = std::sqrt(1.0 - z * z);
    pts.emplace_back(r * std::cos(golden * k), r * std::sin(golden * k), z);
  }
  return pts;
}

// Maximizes f over four angles from the best point of a direction grid, by
// compass search down to a 1e-9 step.
inline double maximize_over_directions(
    const std::function<double(const Eigen::Vector3d&, const Eigen::Vector3d&)>& f, int grid) {
  const auto pts = sphere_points(grid);
  double best = -1.0;
  Eigen::Vector3d bn, bm;
  for (const auto& n : pts) {
    for (const auto& m : pts) {
      const double v = f(n, m);
      if (v > best) {
        best = v;
        bn = n;
        bm = m;
      }
    }
  }
  double a[4] = {std::acos(bn.z()), std::atan2(bn.y(), bn.x()), std::acos(bm.z()),
                 std::atan2(bm.y(), bm.x())};
  for (double step = 0.1; step > 1e-9;) {
    bool moved = false;
    for (int k = 0; k < 4; ++k) {
      for (double s : {step, -step}) {
        double t[4] = {a[0], a[1], a[2], a[3]};
        t[k] += s;
        const double v = f(direction(t[0], t[1]), direction(t[2], t[3]));
        if (v > best) {
          best = v;
          std::copy(t, t + 4, a);
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

// sup over directions of |<da db>| / sqrt(<da^2><db^2>) with dense operators.
inline double brute_force_rho(const Vec& v, int n, int x, int y, int grid = 100) {
  return maximize_over_directions(
      [&](const Eigen::Vector3d& dn, const Eigen::Vector3d& dm) {
        const Dense a = dot_sigma(n, x, dn);
        const Dense b = dot_sigma(n, y, dm);
        const double va = variance(a, v);
        const double vb = variance(b, v);
        if (va < 1e-12 || vb < 1e-12) return 0.0;
        const double c = expect(a * b, v) - expect(a, v) * expect(b, v);
        return std::abs(c) / std::sqrt(va * vb);
      },
      grid);
}

// Probabilities of a two-outcome projective measurement of n.sigma(x).
inline Dense projector(int n, int site, const Eigen::Vector3d& d, int sign) {
  return 0.5 * (Dense::Identity(1 << n, 1 << n) + sign * dot_sigma(n, site, d));
}

// |P(b;a) - P(b)| from dense projectors, or -1 when P(a) < floor.
inline double conditional_deviation(const Vec& v, int n, int x, const Eigen::Vector3d& dn, int s,
                                    int y, const Eigen::Vector3d& dm, int t, double floor) {
  const Dense pa = projector(n, x, dn, s);
  const Dense pb = projector(n, y, dm, t);
  const double p_a = expect(pa, v);
  if (p_a < floor) return -1.0;
  const Vec post = pa * v / std::sqrt(p_a);
  return std::abs(expect(pb, post) - expect(pb, v));
}

// rho(t) of a z-diagonal dephasing channel with kernel g:
//   rho_ij(t) = rho_ij(0) exp(-(kappa t / 2) sum_xy g_xy dz_x dz_y),
// dz_x = z_x(i) - z_x(j) and z = +1 for bit 0.
inline Dense dephased(const Dense& rho0, const Eigen::MatrixXd& g, double kappa, double t) {
  const int n = static_cast<int>(g.rows());
  Dense out = rho0;
  for (Eigen::Index i = 0; i < rho0.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho0.cols(); ++j) {
      double q = 0.0;
      for (int x = 0; x < n; ++x) {
        const double dx = ((i >> x) & 1 ? -1.0 : 1.0) - ((j >> x) & 1 ? -1.0 : 1.0);
        for (int y = 0; y < n; ++y) {
          const double dy = ((i >> y) & 1 ? -1.0 : 1.0) - ((j >> y) & 1 ? -1.0 : 1.0);
          q += g(x, y) * dx * dy;
        }
      }
      out(i, j) *= std::exp(-0.5 * kappa * t * q);
    }
  }
  return out;
}

inline double trace_distance(const Dense& a, const Dense& b) {
  Eigen::SelfAdjointEigenSolver<Dense> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// kappa sum_xy g_xy (<a_x a_y> - <a_x><a_y>) with dense single-site operators.
inline double dephasing_rate(const Vec& v, const std::vector<Dense>& a, const Eigen::MatrixXd& g,
                             double kappa) {
  double total = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      const double c = expect(a[x] * a[y], v) - expect(a[x], v) * expect(a[y], v);
      total += g(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) * c;
    }
  }
  return kappa * total;
}

}  // namespace oracle
