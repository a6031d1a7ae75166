#include "urm/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace urm {

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(int n, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  const int k = static_cast<int>(uniform_unit(rng) * n);
  return k < n ? k : n - 1;
}

int sample_index(const RealVector& probs, Rng& rng) {
  const double total = probs.sum();
  if (probs.size() == 0 || probs.minCoeff() < -kAssertTol ||
      std::abs(total - 1.0) > kAssertTol) {
    throw std::invalid_argument("sample_index: not a probability vector");
  }
  const double u = uniform_unit(rng);
  double acc = 0.0;
  int last_positive = -1;
  for (int k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last_positive = k;
    acc += probs[k];
    if (u < acc) return k;
  }
  return last_positive;  // u landed in the rounding tail
}

Complex omega_power(int d, long long exponent) {
  const long long k = ((exponent % d) + d) % d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / d);
}

bool is_normalized(const Vector& s, double tol) {
  return std::abs(s.squaredNorm() - 1.0) < tol;
}

bool is_orthonormal(const Matrix& basis, double tol) {
  if (basis.rows() != basis.cols()) return false;
  const Matrix gram = basis.adjoint() * basis;
  return (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const Matrix& u, double tol) { return is_orthonormal(u, tol); }

bool is_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > -10.0 * tol;
}

Complex inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("inner: dimension mismatch " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  return a.dot(b);  // Eigen conjugates the first operand
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

RealVector born_probabilities(const Vector& s, const Matrix& basis) {
  if (basis.rows() != s.size()) {
    throw std::invalid_argument("born_probabilities: basis does not span the state space");
  }
  if (!is_orthonormal(basis)) {
    throw std::invalid_argument("born_probabilities: basis is not orthonormal");
  }
  return (basis.adjoint() * s).cwiseAbs2();
}

MeasureResult measure(const Vector& s, const Matrix& basis, Rng& rng) {
  const RealVector probs = born_probabilities(s, basis);
  const int index = sample_index(probs, rng);
  return {index, basis.col(index)};
}

Projection project_particle1(const Vector& s, const Vector& v) {
  const Eigen::Index d = v.size();
  if (s.size() != d * d) {
    throw std::invalid_argument("project_particle1: state must have dim d^2");
  }
  // w = (v^dag (x) I) s, the particle-2 amplitudes left after the projection
  Vector w = Vector::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    w += std::conj(v[i]) * s.segment(i * d, d);
  }
  Vector out = tensor(v, w);
  return {out.squaredNorm(), std::move(out)};
}

Matrix partial_trace(const Vector& s, int side) {
  const Eigen::Index dd = s.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd) {
    throw std::invalid_argument("partial_trace: state dim is not a perfect square");
  }
  if (side != 1 && side != 2) {
    throw std::invalid_argument("partial_trace: side must be 1 or 2");
  }
  Matrix m(d, d);  // m(i, j) = amplitude of |i>|j>
  for (Eigen::Index i = 0; i < d; ++i) {
    m.row(i) = s.segment(i * d, d).transpose();
  }
  if (side == 1) return m * m.adjoint();
  return m.transpose() * m.conjugate();
}

bool equal_up_to_global_phase(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  return std::abs(inner(a, b)) > 1.0 - tol;
}

}  // namespace urm
