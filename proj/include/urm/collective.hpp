#pragma once

#include <string>

#include "urm/types.hpp"
#include "urm/zmod.hpp"

namespace urm {

struct PairIndex {
  FieldElem n1, n2;
  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

// Center-of-mass / relative coordinates on the two-particle space.
struct CollectiveIndex {
  FieldElem nc, nr;
  friend bool operator==(const CollectiveIndex&, const CollectiveIndex&) = default;
};

// nc = half*(n1+n2), nr = half*(n1-n2). Bijective on Z_d x Z_d.
CollectiveIndex to_collective(const PairIndex& p);

// n1 = nc+nr, n2 = nc-nr. Inverse of to_collective.
PairIndex to_pair(const CollectiveIndex& c);

// A: c-computational (x) r-Fourier.  B: r-computational (x) c-Fourier.
enum class MesFamily { A, B };

std::string to_string(MesFamily family);

// Names one maximally entangled basis vector: family plus the computational
// coordinate mdd and the Fourier coordinate m0 (the state carries 2*m0; m0
// itself enumerates outcomes since gcd(2, d) = 1).
struct MesLabel {
  MesFamily family;
  FieldElem mdd;
  FieldElem m0;
  friend bool operator==(const MesLabel&, const MesLabel&) = default;
};

struct CollectiveOps {
  Matrix zc, zr, xc, xr;
};

// Zc = Z^h (x) Z^h,  Zr = Z^h (x) Z^{-h},  Xc = X (x) X,  Xr = X (x) X^{-1},
// with matrix powers taken at exponents reduced into [0, d), h = half(d).
CollectiveOps collective_ops(int d);

// Family A:  (1/sqrt d) sum_n w^{-2 m0 n} |mdd+n>|mdd-n>
// Family B:  (1/sqrt d) sum_n w^{-2 m0 n} |n+mdd>|n-mdd>
// Family A is the simultaneous eigenbasis of (Zc, Xr), family B of (Zr, Xc).
Vector mes_state(int d, const MesLabel& label);

// One full d^2 MES basis, the eigenbasis of one control measurement.
// Columns are ordered by label index mdd*d + m0; orthonormality is checked
// once at construction.
class GammaBasis {
 public:
  GammaBasis(int d, MesFamily family);

  int dim() const { return d_; }  // single-particle dimension
  MesFamily family() const { return family_; }
  const Matrix& vectors() const { return vectors_; }

  int column(const MesLabel& label) const;
  MesLabel label(int column) const;

 private:
  int d_;
  MesFamily family_;
  Matrix vectors_;
};

}  // namespace urm
