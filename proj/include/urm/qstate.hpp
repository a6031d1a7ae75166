#pragma once

#include <cstdint>
#include <random>

#include "urm/types.hpp"

namespace urm {

// All sampling runs on std::mt19937_64 seeded explicitly. The engine is
// fully specified by the standard, and uniform doubles are built below
// without std::uniform_real_distribution (whose output is implementation
// defined), so seeded runs reproduce bit-exactly across platforms.
using Rng = std::mt19937_64;

// Uniform double in [0, 1): top 53 bits of the next engine output.
double uniform_unit(Rng& rng);

// Uniform integer in [0, n).
int uniform_int(int n, Rng& rng);

// Inverse-CDF draw from a probability vector. Entries must be nonnegative
// and sum to 1 within kAssertTol. Never returns an index of zero weight.
int sample_index(const RealVector& probs, Rng& rng);

// exp(2*pi*i*k/d) with k reduced mod d before any trigonometric evaluation,
// so large modular exponents carry no phase drift.
Complex omega_power(int d, long long exponent);

bool is_normalized(const Vector& s, double tol = kNormTol);
bool is_orthonormal(const Matrix& basis, double tol = kAssertTol);
bool is_unitary(const Matrix& u, double tol = kAssertTol);
bool is_density_matrix(const Matrix& rho, double tol = kAssertTol);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const Vector& a, const Vector& b);

// Product state with flat index k = n1 * dim(b) + n2.
Vector tensor(const Vector& a, const Vector& b);

// p_k = |<basis_k|s>|^2 over the columns of an orthonormal basis. Throws
// std::invalid_argument if the columns are not orthonormal.
RealVector born_probabilities(const Vector& s, const Matrix& basis);

struct MeasureResult {
  int index;
  Vector state;  // the basis column the state collapses onto
};

// Projective measurement: outcome sampled by the Born rule.
MeasureResult measure(const Vector& s, const Matrix& basis, Rng& rng);

struct Projection {
  double probability;  // squared norm of the projected state
  Vector state;        // unnormalized
};

// Applies |v><v| (x) I to a two-particle state of dim d^2, v of dim d.
Projection project_particle1(const Vector& s, const Vector& v);

// Reduced density matrix of particle `side` (1 or 2); trace 1.
Matrix partial_trace(const Vector& s, int side);

// True iff |<a|b>| > 1 - tol; both states must be normalized.
bool equal_up_to_global_phase(const Vector& a, const Vector& b, double tol = kAssertTol);

}  // namespace urm
