#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "urm/collective.hpp"
#include "urm/mub.hpp"
#include "urm/qstate.hpp"

using namespace urm;

namespace {

Vector unit_vector(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return v;
}

MesLabel label_a(int d, int mdd, int m0) {
  const PrimeModulus mod(d);
  return {MesFamily::A, FieldElem(mdd, mod), FieldElem(m0, mod)};
}

}  // namespace

TEST_CASE("omega_power reduces exponents before evaluating") {
  CHECK(omega_power(3, 0) == Complex(1.0, 0.0));
  CHECK(std::abs(omega_power(5, 7) - omega_power(5, 2)) == 0.0);
  CHECK(std::abs(omega_power(5, -3) - omega_power(5, 2)) == 0.0);
  // d-th power closes the cycle
  CHECK(std::abs(omega_power(7, 7) - Complex(1.0, 0.0)) == 0.0);
}

TEST_CASE("inner products") {
  const Vector e0 = unit_vector(3, 0), e1 = unit_vector(3, 1);
  CHECK(inner(e0, e0) == Complex(1.0, 0.0));
  CHECK(inner(e0, e1) == Complex(0.0, 0.0));
  // first argument is conjugated
  Vector a(2), b(2);
  a << Complex(0.0, 1.0), 0.0;
  b << Complex(0.0, 1.0), 0.0;
  CHECK(inner(a, b) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(inner(e0, unit_vector(4, 0)), std::invalid_argument);
}

TEST_CASE("overlap of |0> with any b=0 vector has magnitude 1/sqrt(d)") {
  const int d = 3;
  const PrimeModulus mod(d);
  for (int m = 0; m < d; ++m) {
    const Vector v = mub_vector(d, {BasisLabel::shifted(FieldElem(0, mod)), FieldElem(m, mod)});
    CHECK(std::abs(inner(unit_vector(d, 0), v)) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("tensor product uses flat index n1*d + n2") {
  const Vector t = tensor(unit_vector(3, 1), unit_vector(3, 2));
  CHECK(t.size() == 9);
  CHECK(t[5] == Complex(1.0, 0.0));
  CHECK(t.cwiseAbs().sum() == 1.0);

  const Vector p = tensor(unit_vector(3, 0), unit_vector(3, 0));
  CHECK(p[0] == Complex(1.0, 0.0));

  Rng rng(99);
  Vector a(3), b(3);
  for (int i = 0; i < 3; ++i) {
    a[i] = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
    b[i] = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
  }
  CHECK(tensor(a, b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
}

TEST_CASE("born probabilities") {
  const int d = 3;
  const PrimeModulus mod(d);
  const Matrix cb = mub_basis(d, BasisLabel::computational());

  SUBCASE("basis vector gives a point distribution") {
    const RealVector p = born_probabilities(cb.col(0), cb);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("|0> against the b=0 basis is uniform") {
    const Matrix fourier = mub_basis(d, BasisLabel::shifted(FieldElem(0, mod)));
    const RealVector p = born_probabilities(unit_vector(d, 0), fourier);
    for (int k = 0; k < d; ++k) CHECK(p[k] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  SUBCASE("prepared MES against its own control basis is a point distribution") {
    const GammaBasis gamma(d, MesFamily::A);
    const RealVector p = born_probabilities(mes_state(d, label_a(d, 0, 0)), gamma.vectors());
    CHECK(p[gamma.column(label_a(d, 0, 0))] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("non-orthonormal basis is rejected") {
    Matrix bad = Matrix::Identity(d, d);
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(born_probabilities(unit_vector(d, 0), bad), std::invalid_argument);
  }
}

TEST_CASE("measurement sampling") {
  const int d = 3;
  const Matrix cb = mub_basis(d, BasisLabel::computational());

  SUBCASE("deterministic distribution ignores the seed") {
    for (std::uint64_t seed : {0ULL, 1ULL, 424242ULL}) {
      Rng rng(seed);
      const auto result = measure(cb.col(0), cb, rng);
      CHECK(result.index == 0);
      CHECK(result.state == cb.col(0));
    }
  }

  SUBCASE("fixed seed reproduces the index sequence") {
    const PrimeModulus mod(d);
    const Vector s = mub_vector(d, {BasisLabel::shifted(FieldElem(0, mod)), FieldElem(0, mod)});
    std::vector<int> first, second;
    Rng rng1(7), rng2(7);
    for (int k = 0; k < 200; ++k) first.push_back(measure(s, cb, rng1).index);
    for (int k = 0; k < 200; ++k) second.push_back(measure(s, cb, rng2).index);
    CHECK(first == second);
  }

  SUBCASE("uniform three-way distribution matches binomial statistics") {
    const PrimeModulus mod(d);
    const Vector s = mub_vector(d, {BasisLabel::shifted(FieldElem(0, mod)), FieldElem(0, mod)});
    const int n = 100000;
    Rng rng(20240601);
    int counts[3] = {0, 0, 0};
    for (int k = 0; k < n; ++k) ++counts[measure(s, cb, rng).index];
    const double p = 1.0 / 3;
    const double sigma = std::sqrt(p * (1 - p) / n);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(static_cast<double>(counts[k]) / n - p) < 5 * sigma);
    }
  }
}

TEST_CASE("sample_index rejects junk and skips zero-weight entries") {
  Rng rng(1);
  RealVector bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(sample_index(bad, rng), std::invalid_argument);

  RealVector spiked(4);
  spiked << 0.0, 1.0, 0.0, 0.0;
  for (int k = 0; k < 50; ++k) CHECK(sample_index(spiked, rng) == 1);
}

TEST_CASE("project_particle1") {
  const int d = 3;
  const PrimeModulus mod(d);

  SUBCASE("orthogonal direction has probability zero") {
    const Vector s = tensor(unit_vector(d, 1), unit_vector(d, 2));
    const auto proj = project_particle1(s, unit_vector(d, 0));
    CHECK(proj.probability == doctest::Approx(0.0));
  }

  SUBCASE("product state aligned with the direction is unchanged") {
    const Vector s = tensor(unit_vector(d, 0), unit_vector(d, 2));
    const auto proj = project_particle1(s, unit_vector(d, 0));
    CHECK(proj.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((proj.state - s).norm() == doctest::Approx(0.0));
  }

  SUBCASE("MES projected on any b=1 vector has probability 1/d") {
    const Vector mes = mes_state(d, label_a(d, 0, 0));
    for (int m = 0; m < d; ++m) {
      const Vector v = mub_vector(d, {BasisLabel::shifted(FieldElem(1, mod)), FieldElem(m, mod)});
      CHECK(project_particle1(mes, v).probability ==
            doctest::Approx(1.0 / 3).epsilon(1e-12));
    }
  }

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(project_particle1(unit_vector(d, 0), unit_vector(d, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("partial trace") {
  const int d = 3;

  SUBCASE("product state reduces to a projector") {
    const PrimeModulus mod(d);
    const Vector a = mub_vector(d, {BasisLabel::shifted(FieldElem(2, mod)), FieldElem(1, mod)});
    const Vector b = unit_vector(d, 1);
    const Matrix rho1 = partial_trace(tensor(a, b), 1);
    CHECK((rho1 - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const Matrix rho2 = partial_trace(tensor(a, b), 2);
    CHECK((rho2 - b * b.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("MES reduces to the maximally mixed state on both sides") {
    const Vector mes = mes_state(d, label_a(d, 1, 2));
    for (int side : {1, 2}) {
      const Matrix rho = partial_trace(mes, side);
      CHECK((rho - Matrix::Identity(d, d) / d).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
      CHECK(is_density_matrix(rho));
    }
  }

  SUBCASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(partial_trace(unit_vector(3, 0), 1), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(unit_vector(9, 0), 3), std::invalid_argument);
  }
}

TEST_CASE("global-phase comparison") {
  const int d = 3;
  const PrimeModulus mod(d);
  const Vector v = mub_vector(d, {BasisLabel::shifted(FieldElem(1, mod)), FieldElem(2, mod)});
  CHECK(equal_up_to_global_phase(v, v));
  CHECK(equal_up_to_global_phase(v, std::polar(1.0, 1.234) * v));
  CHECK_FALSE(equal_up_to_global_phase(unit_vector(d, 0), unit_vector(d, 1)));
}

TEST_CASE("uniform_unit stays in [0,1) and uniform_int in range") {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const double u = uniform_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int i = uniform_int(4, rng);
    CHECK(i >= 0);
    CHECK(i < 4);
  }
}
