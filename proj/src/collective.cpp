#include "urm/collective.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "urm/mub.hpp"
#include "urm/qstate.hpp"

namespace urm {

CollectiveIndex to_collective(const PairIndex& p) {
  const FieldElem h = half(p.n1.modulus());
  return {h * (p.n1 + p.n2), h * (p.n1 - p.n2)};
}

PairIndex to_pair(const CollectiveIndex& c) {
  return {c.nc + c.nr, c.nc - c.nr};
}

std::string to_string(MesFamily family) {
  return family == MesFamily::A ? "a" : "b";
}

namespace {

Matrix matrix_power(const Matrix& u, int exponent) {
  Matrix out = Matrix::Identity(u.rows(), u.cols());
  for (int k = 0; k < exponent; ++k) out = out * u;
  return out;
}

}  // namespace

CollectiveOps collective_ops(int d) {
  const PrimeModulus mod(d);
  const int h = half(mod).value();
  const Matrix z = z_op(d);
  const Matrix x = x_op(d);
  const Matrix zh = matrix_power(z, h);
  const Matrix zmh = matrix_power(z, d - h);  // Z^{-h} via exponent reduction
  const Matrix xm1 = matrix_power(x, d - 1);
  CollectiveOps ops;
  ops.zc = Eigen::kroneckerProduct(zh, zh);
  ops.zr = Eigen::kroneckerProduct(zh, zmh);
  ops.xc = Eigen::kroneckerProduct(x, x);
  ops.xr = Eigen::kroneckerProduct(x, xm1);
  return ops;
}

Vector mes_state(int d, const MesLabel& label) {
  const PrimeModulus mod(d);
  if (label.mdd.modulus().value() != d || label.m0.modulus().value() != d) {
    throw std::invalid_argument("mes_state: label modulus does not match d");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Vector v = Vector::Zero(d * d);
  for (int n = 0; n < d; ++n) {
    const FieldElem fn(n, mod);
    const int p1 = (label.mdd + fn).value();
    const int p2 = label.family == MesFamily::A ? (label.mdd - fn).value() : (fn - label.mdd).value();
    v[p1 * d + p2] = scale * omega_power(d, -2LL * label.m0.value() * n);
  }
  return v;
}

GammaBasis::GammaBasis(int d, MesFamily family) : d_(PrimeModulus(d).value()), family_(family) {
  const PrimeModulus mod(d);
  vectors_.resize(d * d, d * d);
  for (int mdd = 0; mdd < d; ++mdd) {
    for (int m0 = 0; m0 < d; ++m0) {
      vectors_.col(mdd * d + m0) =
          mes_state(d, {family, FieldElem(mdd, mod), FieldElem(m0, mod)});
    }
  }
  if (!is_orthonormal(vectors_)) {
    throw std::logic_error("GammaBasis: constructed basis is not orthonormal");
  }
}

int GammaBasis::column(const MesLabel& label) const {
  if (label.family != family_) {
    throw std::invalid_argument("GammaBasis::column: family mismatch");
  }
  return label.mdd.value() * d_ + label.m0.value();
}

MesLabel GammaBasis::label(int column) const {
  if (column < 0 || column >= d_ * d_) {
    throw std::out_of_range("GammaBasis::label: column out of range");
  }
  const PrimeModulus mod(d_);
  return {family_, FieldElem(column / d_, mod), FieldElem(column % d_, mod)};
}

}  // namespace urm
