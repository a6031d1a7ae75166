#include "urm/zmod.hpp"

#include <stdexcept>

namespace urm {

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int f = 3; f * f <= d; f += 2) {
    if (d % f == 0) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(int d) : d_(d) {
  if (!is_odd_prime(d)) {
    throw std::invalid_argument("PrimeModulus: d must be an odd prime >= 3, got " +
                                std::to_string(d));
  }
}

FieldElem::FieldElem(long long value, PrimeModulus modulus) : modulus_(modulus) {
  const long long d = modulus.value();
  value_ = static_cast<int>(((value % d) + d) % d);
}

namespace {

void require_same_modulus(const FieldElem& a, const FieldElem& b) {
  if (!(a.modulus() == b.modulus())) {
    throw std::invalid_argument("FieldElem: modulus mismatch (" +
                                std::to_string(a.modulus().value()) + " vs " +
                                std::to_string(b.modulus().value()) + ")");
  }
}

}  // namespace

FieldElem FieldElem::inv() const {
  if (value_ == 0) {
    throw std::domain_error("FieldElem::inv: division by zero mod " +
                            std::to_string(modulus_.value()));
  }
  // Extended Euclid on (value, d); d prime guarantees gcd 1.
  long long r0 = value_, r1 = modulus_.value();
  long long s0 = 1, s1 = 0;
  while (r1 != 0) {
    const long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  return FieldElem(s0, modulus_);
}

FieldElem FieldElem::operator-() const {
  return FieldElem(-static_cast<long long>(value_), modulus_);
}

FieldElem operator+(FieldElem a, FieldElem b) {
  require_same_modulus(a, b);
  return FieldElem(static_cast<long long>(a.value_) + b.value_, a.modulus_);
}

FieldElem operator-(FieldElem a, FieldElem b) {
  require_same_modulus(a, b);
  return FieldElem(static_cast<long long>(a.value_) - b.value_, a.modulus_);
}

FieldElem operator*(FieldElem a, FieldElem b) {
  require_same_modulus(a, b);
  return FieldElem(static_cast<long long>(a.value_) * b.value_, a.modulus_);
}

std::string FieldElem::to_string() const { return std::to_string(value_); }

FieldElem half(PrimeModulus modulus) {
  return FieldElem((modulus.value() + 1) / 2, modulus);
}

}  // namespace urm
