#pragma once

#include <string>

namespace urm {

bool is_odd_prime(int d);

// Modulus of the prime field Z_d. Construction rejects everything that is
// not an odd prime >= 3; d = 2 and prime powers are outside the supported
// range.
class PrimeModulus {
 public:
  explicit PrimeModulus(int d);
  int value() const { return d_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  int d_;
};

// Residue mod an odd prime, always stored reduced to [0, d). All protocol
// inference runs on these, never on floating-point data. Arithmetic between
// elements of different moduli throws std::invalid_argument.
class FieldElem {
 public:
  FieldElem(long long value, PrimeModulus modulus);

  int value() const { return value_; }
  PrimeModulus modulus() const { return modulus_; }

  // Multiplicative inverse by extended Euclid; throws std::domain_error on 0.
  FieldElem inv() const;

  FieldElem operator-() const;

  friend FieldElem operator+(FieldElem a, FieldElem b);
  friend FieldElem operator-(FieldElem a, FieldElem b);
  friend FieldElem operator*(FieldElem a, FieldElem b);

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

  std::string to_string() const;

 private:
  int value_;
  PrimeModulus modulus_;
};

// The residue (d+1)/2, i.e. the inverse of 2.
FieldElem half(PrimeModulus modulus);

}  // namespace urm
