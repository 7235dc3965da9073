#include <doctest.h>

#include "generators.hpp"
#include "gradedvb/errors.hpp"
#include "gradedvb/tensors.hpp"
#include "oracles.hpp"

using namespace gvb;

namespace {

MultiTensor vec(int degree, const std::vector<int>& values) {
  MultiTensor t = MultiTensor::zeros({degree}, {static_cast<int>(values.size())}, 1);
  for (std::size_t i = 0; i < values.size(); ++i) t.coeffs[i] = values[i];
  return t;
}

Rational value(const MultiTensor& t, std::vector<int> idx) { return t.at(0, idx); }

}  // namespace

TEST_CASE("rationals print as num/den") {
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("shape checks") {
  MultiTensor t = MultiTensor::zeros({1, 2}, {2, 3}, 2);
  CHECK(t.coeffs.size() == 12);
  t.coeffs.pop_back();
  CHECK_THROWS_AS(check_shape(t), ShapeMismatch);
  CHECK_THROWS_AS(MultiTensor::zeros({1}, {2}, 1) + MultiTensor::zeros({1}, {3}, 1), ShapeMismatch);
  CHECK_THROWS_AS(evaluate(MultiTensor::zeros({1}, {2}, 1), {{1, 2, 3}}), ShapeMismatch);
}

TEST_CASE("evaluate on the standard basis returns the coefficient") {
  gen::Rng rng(5);
  const MultiTensor t = gen::random_tensor(rng, {1, 2}, {2, 3}, 2);
  for (int o = 0; o < 2; ++o) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 3; ++j) {
        Vector a(2, 0), b(3, 0);
        a[static_cast<std::size_t>(i)] = 1;
        b[static_cast<std::size_t>(j)] = 1;
        CHECK(evaluate(t, {a, b})[static_cast<std::size_t>(o)] == t.at(o, {i, j}));
      }
    }
  }
}

TEST_CASE("evaluate is linear in each slot") {
  gen::Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    const MultiTensor t = gen::random_tensor(rng, {1, 1, 2}, {2, 2, 3}, 2);
    auto rv = [&](int d) {
      Vector v;
      for (int i = 0; i < d; ++i) v.push_back(rng.small_rational());
      return v;
    };
    const Vector a = rv(2), a2 = rv(2), b = rv(2), c = rv(3);
    const Rational q = rng.small_rational();
    Vector combo(2);
    for (std::size_t i = 0; i < 2; ++i) combo[i] = a[i] + q * a2[i];
    const Vector lhs = evaluate(t, {combo, b, c});
    const Vector r1 = evaluate(t, {a, b, c});
    const Vector r2 = evaluate(t, {a2, b, c});
    for (std::size_t o = 0; o < 2; ++o) CHECK(lhs[o] == r1[o] + q * r2[o]);
  }
}

TEST_CASE("graded_symmetrize examples") {
  const MultiTensor u1 = vec(1, {1, 2}), v1 = vec(1, {3, -1});
  const MultiTensor uv = tensor_product({u1, v1});
  const MultiTensor vu = reorder_slots(uv, {1, 0});
  CHECK(graded_symmetrize(uv) == Rational(1, 2) * (uv - vu));
  const MultiTensor u2 = vec(2, {1, 2}), v2 = vec(2, {3, -1});
  const MultiTensor uv2 = tensor_product({u2, v2});
  const MultiTensor vu2 = reorder_slots(uv2, {1, 0});
  CHECK(graded_symmetrize(uv2) == Rational(1, 2) * (uv2 + vu2));
  gen::Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const MultiTensor t = gen::random_tensor(rng, {1, 1, 2, 2, 3}, {2, 2, 1, 1, 2}, 1);
    const MultiTensor s = graded_symmetrize(t);
    CHECK(is_graded_symmetric(s));
    CHECK(graded_symmetrize(s) == s);
  }
  // Different degrees never mix.
  const MultiTensor mixed = tensor_product({u1, u2});
  CHECK(graded_symmetrize(mixed) == mixed);
}

TEST_CASE("swapping equal-degree arguments multiplies by (-1)^d") {
  gen::Rng rng(8);
  for (int d = 1; d <= 3; ++d) {
    const MultiTensor t = gen::random_graded_symmetric(rng, {d, d}, {3, 3}, 1);
    for (int k = 0; k < 5; ++k) {
      Vector a, b;
      for (int i = 0; i < 3; ++i) {
        a.push_back(rng.small_rational());
        b.push_back(rng.small_rational());
      }
      const int sign = d % 2 == 0 ? 1 : -1;
      CHECK(evaluate(t, {a, b})[0] == sign * evaluate(t, {b, a})[0]);
    }
  }
}

TEST_CASE("graded product: xi (deg 3), eta (deg 1), tau (deg 2) gives -eta x tau x xi") {
  gen::Rng rng(9);
  const MultiTensor xi = gen::random_tensor(rng, {3}, {2}, 1);
  const MultiTensor eta = gen::random_tensor(rng, {1}, {2}, 1);
  const MultiTensor tau = gen::random_tensor(rng, {2}, {3}, 1);
  const MultiTensor prod = graded_product({xi, eta, tau});
  CHECK(prod.degrees == std::vector<int>{1, 2, 3});
  CHECK(prod == Rational(-1) * tensor_product({eta, tau, xi}));
}

TEST_CASE("graded product: the three-factor example with signs 1, -1, 1, -1") {
  // ξ_1 ⊙ (η_1 ⊙ η_2) ⊙ (τ_2 ⊙ τ_3) evaluated on (e_1, e_2, e_34, e_56, e_789)
  // equals (ξ_1(e_1)η_1(e_2) − ξ_1(e_2)η_1(e_1)) · (η_2(e_34)τ_2(e_56) +
  // η_2(e_56)τ_2(e_34)) · τ_3(e_789).
  gen::Rng rng(10);
  for (int k = 0; k < 10; ++k) {
    const int d1 = rng.uniform(1, 2), d2 = rng.uniform(1, 2), d3 = rng.uniform(1, 2);
    const MultiTensor xi1 = gen::random_tensor(rng, {1}, {d1}, 1);
    const MultiTensor eta1 = gen::random_tensor(rng, {1}, {d1}, 1);
    const MultiTensor eta2 = gen::random_tensor(rng, {2}, {d2}, 1);
    const MultiTensor tau2 = gen::random_tensor(rng, {2}, {d2}, 1);
    const MultiTensor tau3 = gen::random_tensor(rng, {3}, {d3}, 1);
    const MultiTensor prod =
        graded_product({xi1, graded_product({eta1, eta2}), graded_product({tau2, tau3})});
    REQUIRE(prod.degrees == std::vector<int>{1, 1, 2, 2, 3});
    for (int a = 0; a < d1; ++a) {
      for (int b = 0; b < d1; ++b) {
        for (int c = 0; c < d2; ++c) {
          for (int d = 0; d < d2; ++d) {
            for (int e = 0; e < d3; ++e) {
              const Rational expected =
                  (value(xi1, {a}) * value(eta1, {b}) - value(xi1, {b}) * value(eta1, {a})) *
                  (value(eta2, {c}) * value(tau2, {d}) + value(eta2, {d}) * value(tau2, {c})) * value(tau3, {e});
              CHECK(value(prod, {a, b, c, d, e}) == expected);
            }
          }
        }
      }
    }
  }
  // All fibers one-dimensional and every covector equal to 1.
  const MultiTensor one1 = vec(1, {1}), one2 = vec(2, {1}), one3 = vec(3, {1});
  const MultiTensor unit =
      graded_product({one1, graded_product({one1, one2}), graded_product({one2, one3})});
  CHECK(value(unit, {0, 0, 0, 0, 0}) == 0);
}

TEST_CASE("graded product of degree-1 covectors is the wedge product") {
  const MultiTensor e1 = MultiTensor::covector(1, 2, 0), e2 = MultiTensor::covector(1, 2, 1);
  const MultiTensor w = graded_product({e1, e2});
  CHECK(value(w, {0, 1}) == 1);
  CHECK(value(w, {1, 0}) == -1);
  CHECK(value(w, {0, 0}) == 0);
  gen::Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const int dim = rng.uniform(2, 3);
    const int a = rng.uniform(1, 2), b = rng.uniform(1, 2);
    const MultiTensor x = gen::random_graded_symmetric(rng, std::vector<int>(a, 1), std::vector<int>(a, dim), 1);
    const MultiTensor y = gen::random_graded_symmetric(rng, std::vector<int>(b, 1), std::vector<int>(b, dim), 1);
    CHECK(graded_product({x, y}) == oracle::wedge_by_alternation(x, y));
  }
}

TEST_CASE("scalars act by multiplication in the graded product") {
  gen::Rng rng(12);
  const MultiTensor x = gen::random_graded_symmetric(rng, {1, 2}, {2, 2}, 1);
  MultiTensor scalar = MultiTensor::zeros({}, {}, 1);
  scalar.coeffs[0] = Rational(-3, 2);
  CHECK(graded_product({scalar, x}) == Rational(-3, 2) * x);
  CHECK(graded_product({x, scalar}) == Rational(-3, 2) * x);
}

TEST_CASE("graded product output is graded-symmetric") {
  gen::Rng rng(13);
  for (int k = 0; k < 30; ++k) {
    const MultiTensor x = gen::random_graded_symmetric(rng, {1, 2}, {2, 1}, 1);
    const MultiTensor y = gen::random_graded_symmetric(rng, {1, 1}, {2, 2}, 1);
    CHECK(is_graded_symmetric(graded_product({x, y})));
  }
}

TEST_CASE("linear algebra helpers") {
  MultiTensor a = MultiTensor::zeros({1}, {2}, 2);
  a.at(0, {0}) = 1;
  a.at(0, {1}) = 2;
  a.at(1, {0}) = 3;
  a.at(1, {1}) = 4;
  CHECK(compose_linear(inverse_linear(a), a) == MultiTensor::identity(1, 2));
  CHECK(compose_linear(a, inverse_linear(a)) == MultiTensor::identity(1, 2));
  MultiTensor singular = a;
  singular.at(1, {0}) = 2;
  singular.at(1, {1}) = 4;
  CHECK_FALSE(is_invertible_linear(singular));
  CHECK_THROWS_AS(inverse_linear(singular), NotAnIsomorphism);
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);
}
