#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urm/types.hpp"
#include "urm/zmod.hpp"

namespace urm {

// One of the d+1 single-particle bases: either the computational basis
// (eigenbasis of Z) or one of the d shifted bases labeled by b in Z_d.
class BasisLabel {
 public:
  static BasisLabel computational() { return BasisLabel{}; }
  static BasisLabel shifted(FieldElem b) {
    BasisLabel label;
    label.shift_ = b;
    return label;
  }

  bool is_computational() const { return !shift_.has_value(); }

  // The shift b; throws std::logic_error for the computational label.
  FieldElem shift() const;

  std::string to_string() const;  // "cb" or the residue digits

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

 private:
  BasisLabel() = default;
  std::optional<FieldElem> shift_;
};

// Names one MUB vector: basis label plus vector index m.
struct MubIndex {
  BasisLabel basis;
  FieldElem m;
};

// Z|n> = w^n |n>
Matrix z_op(int d);

// X|n> = |n+1 mod d>
Matrix x_op(int d);

// One MUB vector. Shifted bases have amplitudes
//     w^{ b*half*n(n-1) - m*n } / sqrt(d)
// with the whole exponent computed in Z_d before it becomes a phase. The
// computational basis is exact unit vectors, not a phase formula.
Vector mub_vector(int d, const MubIndex& idx);

// The d vectors of one basis as matrix columns, column index = m.
Matrix mub_basis(int d, const BasisLabel& basis);

// The d+1 basis labels: computational first, then shifted 0..d-1.
std::vector<BasisLabel> all_bases(int d);

// K_b = sum_m |m;b> w^m <b;m|, the measured observable for alignment b.
// Outcomes are identified by the exponent m, not the complex eigenvalue.
Matrix k_op(int d, const BasisLabel& basis);

struct UnbiasednessReport {
  int d = 0;
  int basis_pairs = 0;         // d(d+1)/2 distinct basis pairs
  long vector_pairs = 0;       // basis_pairs * d^2 cross overlaps examined
  double max_deviation = 0.0;  // max | |<u|v>|^2 - 1/d |
};

// Exhaustive pairwise unbiasedness check over the d+1 bases.
UnbiasednessReport unbiasedness_report(int d);

}  // namespace urm
