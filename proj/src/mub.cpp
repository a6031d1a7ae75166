#include "urm/mub.hpp"

#include <cmath>
#include <stdexcept>

#include "urm/qstate.hpp"

namespace urm {

FieldElem BasisLabel::shift() const {
  if (!shift_) throw std::logic_error("BasisLabel: computational basis has no shift");
  return *shift_;
}

std::string BasisLabel::to_string() const {
  return shift_ ? shift_->to_string() : "cb";
}

Matrix z_op(int d) {
  const int dim = PrimeModulus(d).value();
  Matrix z = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) z(n, n) = omega_power(dim, n);
  return z;
}

Matrix x_op(int d) {
  const int dim = PrimeModulus(d).value();
  Matrix x = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) x((n + 1) % dim, n) = 1.0;
  return x;
}

Vector mub_vector(int d, const MubIndex& idx) {
  const PrimeModulus mod(d);
  if (idx.m.modulus().value() != d ||
      (!idx.basis.is_computational() && idx.basis.shift().modulus().value() != d)) {
    throw std::invalid_argument("mub_vector: label modulus does not match d");
  }
  if (idx.basis.is_computational()) {
    Vector v = Vector::Zero(d);
    v[idx.m.value()] = 1.0;
    return v;
  }
  const FieldElem b = idx.basis.shift();
  const FieldElem h = half(mod);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Vector v(d);
  for (int n = 0; n < d; ++n) {
    const FieldElem fn(n, mod);
    const FieldElem exponent = b * h * (fn * (fn - FieldElem(1, mod))) - idx.m * fn;
    v[n] = scale * omega_power(d, exponent.value());
  }
  return v;
}

Matrix mub_basis(int d, const BasisLabel& basis) {
  const PrimeModulus mod(d);
  Matrix out(d, d);
  for (int m = 0; m < d; ++m) {
    out.col(m) = mub_vector(d, {basis, FieldElem(m, mod)});
  }
  return out;
}

std::vector<BasisLabel> all_bases(int d) {
  const PrimeModulus mod(d);
  std::vector<BasisLabel> labels;
  labels.reserve(d + 1);
  labels.push_back(BasisLabel::computational());
  for (int b = 0; b < d; ++b) labels.push_back(BasisLabel::shifted(FieldElem(b, mod)));
  return labels;
}

Matrix k_op(int d, const BasisLabel& basis) {
  const Matrix eigvecs = mub_basis(d, basis);
  Vector eigvals(d);
  for (int m = 0; m < d; ++m) eigvals[m] = omega_power(d, m);
  return eigvecs * eigvals.asDiagonal() * eigvecs.adjoint();
}

UnbiasednessReport unbiasedness_report(int d) {
  UnbiasednessReport report;
  report.d = d;
  const auto labels = all_bases(d);
  std::vector<Matrix> bases;
  bases.reserve(labels.size());
  for (const auto& label : labels) bases.push_back(mub_basis(d, label));

  const double target = 1.0 / d;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      ++report.basis_pairs;
      const Eigen::MatrixXd overlaps = (bases[i].adjoint() * bases[j]).cwiseAbs2();
      report.vector_pairs += overlaps.size();
      report.max_deviation =
          std::max(report.max_deviation, (overlaps.array() - target).abs().maxCoeff());
    }
  }
  return report;
}

}  // namespace urm
