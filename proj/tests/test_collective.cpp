#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "urm/collective.hpp"
#include "urm/mub.hpp"
#include "urm/qstate.hpp"

using namespace urm;

namespace {

MesLabel label(int d, MesFamily family, int mdd, int m0) {
  const PrimeModulus mod(d);
  return {family, FieldElem(mdd, mod), FieldElem(m0, mod)};
}

Vector basis_pair(int d, int n1, int n2) {
  Vector v = Vector::Zero(d * d);
  v[n1 * d + n2] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("pair/collective coordinate maps") {
  const PrimeModulus m3(3);

  SUBCASE("frozen examples") {
    const auto c00 = to_collective({FieldElem(0, m3), FieldElem(0, m3)});
    CHECK(c00.nc.value() == 0);
    CHECK(c00.nr.value() == 0);

    const auto c = to_collective({FieldElem(1, m3), FieldElem(2, m3)});
    CHECK(c.nc.value() == 0);
    CHECK(c.nr.value() == 1);

    const auto p = to_pair({FieldElem(0, m3), FieldElem(1, m3)});
    CHECK(p.n1.value() == 1);
    CHECK(p.n2.value() == 2);
  }

  SUBCASE("round trip and bijectivity over all d=5 pairs") {
    const int d = 5;
    const PrimeModulus mod(d);
    std::set<std::pair<int, int>> images;
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        const PairIndex p{FieldElem(n1, mod), FieldElem(n2, mod)};
        const CollectiveIndex c = to_collective(p);
        CHECK(to_pair(c) == p);
        images.insert({c.nc.value(), c.nr.value()});
      }
    }
    CHECK(images.size() == d * d);
  }
}

TEST_CASE("collective operators") {
  const int d = 3;
  const auto ops = collective_ops(d);
  const Matrix id = Matrix::Identity(d * d, d * d);

  SUBCASE("Weyl pairs in the same coordinate") {
    CHECK((ops.zc * ops.xc - omega_power(d, 1) * (ops.xc * ops.zc)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((ops.zr * ops.xr - omega_power(d, 1) * (ops.xr * ops.zr)).cwiseAbs().maxCoeff() <
          1e-10);
  }

  SUBCASE("cross-coordinate operators commute") {
    CHECK((ops.zc * ops.xr - ops.xr * ops.zc).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.zr * ops.xc - ops.xc * ops.zr).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("period d") {
    for (const Matrix* op : {&ops.xc, &ops.zr, &ops.zc, &ops.xr}) {
      Matrix acc = id;
      for (int k = 0; k < d; ++k) acc = acc * (*op);
      CHECK((acc - id).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SUBCASE("collective eigenvectors: Zc and Xr act on c and r labels") {
    const PrimeModulus mod(d);
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        const CollectiveIndex c =
            to_collective({FieldElem(n1, mod), FieldElem(n2, mod)});
        const Vector v = basis_pair(d, n1, n2);
        CHECK((ops.zc * v - omega_power(d, c.nc.value()) * v).norm() < 1e-10);
        CHECK((ops.zr * v - omega_power(d, c.nr.value()) * v).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("mes states") {
  const int d = 3;

  SUBCASE("frozen A(0,0): (|00> + |12> + |21>)/sqrt(3)") {
    const Vector v = mes_state(d, label(d, MesFamily::A, 0, 0));
    const double s = 1.0 / std::sqrt(3.0);
    Vector expected = Vector::Zero(9);
    expected[0] = s;   // |0>|0>
    expected[5] = s;   // |1>|2>
    expected[7] = s;   // |2>|1>
    CHECK((v - expected).norm() < 1e-12);
  }

  SUBCASE("family A are simultaneous eigenvectors of Zc and Xr") {
    const auto ops = collective_ops(d);
    for (int mdd = 0; mdd < d; ++mdd) {
      for (int m0 = 0; m0 < d; ++m0) {
        const Vector v = mes_state(d, label(d, MesFamily::A, mdd, m0));
        CHECK((ops.zc * v - omega_power(d, mdd) * v).norm() < 1e-9);
        CHECK((ops.xr * v - omega_power(d, 2LL * m0) * v).norm() < 1e-9);
      }
    }
  }

  SUBCASE("family B are simultaneous eigenvectors of Zr and Xc") {
    const auto ops = collective_ops(d);
    for (int mdd = 0; mdd < d; ++mdd) {
      for (int m0 = 0; m0 < d; ++m0) {
        const Vector v = mes_state(d, label(d, MesFamily::B, mdd, m0));
        CHECK((ops.zr * v - omega_power(d, mdd) * v).norm() < 1e-9);
        CHECK((ops.xc * v - omega_power(d, 2LL * m0) * v).norm() < 1e-9);
      }
    }
  }

  SUBCASE("distinct family-A labels are orthogonal (all 81 pairs)") {
    std::vector<Vector> states;
    for (int mdd = 0; mdd < d; ++mdd) {
      for (int m0 = 0; m0 < d; ++m0) {
        states.push_back(mes_state(d, label(d, MesFamily::A, mdd, m0)));
      }
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = 0; j < states.size(); ++j) {
        const double overlap = std::abs(inner(states[i], states[j]));
        if (i == j) {
          CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
        } else {
          CHECK(overlap < 1e-10);
        }
      }
    }
  }

  SUBCASE("both reduced density matrices are maximally mixed") {
    for (MesFamily family : {MesFamily::A, MesFamily::B}) {
      for (int mdd = 0; mdd < d; ++mdd) {
        for (int m0 = 0; m0 < d; ++m0) {
          const Vector v = mes_state(d, label(d, family, mdd, m0));
          for (int side : {1, 2}) {
            CHECK((partial_trace(v, side) - Matrix::Identity(d, d) / d)
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("gamma bases") {
  SUBCASE("orthonormal and complete") {
    for (int d : {3, 5}) {
      for (MesFamily family : {MesFamily::A, MesFamily::B}) {
        const GammaBasis gamma(d, family);
        CHECK(is_orthonormal(gamma.vectors(), 1e-10));
        // resolution of identity: sum |v><v| = V V^dag = I
        const Matrix completeness = gamma.vectors() * gamma.vectors().adjoint();
        CHECK((completeness - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }

  SUBCASE("label/column round trip") {
    const int d = 5;
    const GammaBasis gamma(d, MesFamily::B);
    for (int col = 0; col < d * d; ++col) {
      const MesLabel l = gamma.label(col);
      CHECK(gamma.column(l) == col);
      CHECK(l.family == MesFamily::B);
    }
    CHECK_THROWS_AS(gamma.column(label(d, MesFamily::A, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(gamma.label(d * d), std::out_of_range);
  }

  SUBCASE("the two families are mutually unbiased: |<u|v>|^2 = 1/d^2") {
    for (int d : {3, 5}) {
      const GammaBasis a(d, MesFamily::A);
      const GammaBasis b(d, MesFamily::B);
      const Eigen::MatrixXd overlaps = (a.vectors().adjoint() * b.vectors()).cwiseAbs2();
      CHECK((overlaps.array() - 1.0 / (d * d)).abs().maxCoeff() < 1e-9);
    }
  }
}
