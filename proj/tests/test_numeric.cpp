#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fpl/numeric.hpp"

using namespace fpl;

TEST_CASE("binomial conventions") {
  CHECK(choose(5, 2) == 10.0);
  CHECK(choose(0, 0) == 1.0);
  CHECK(choose(7, 0) == 1.0);
  CHECK(choose(3, 5) == 0.0);
  CHECK(choose(-1, 0) == 0.0);
  CHECK(choose(4, -1) == 0.0);
  CHECK(choose_is_zero(-1, 0));
  CHECK(choose_is_zero(2, 3));
  CHECK(!choose_is_zero(2, 2));
  CHECK(std::isinf(lchoose(3, 5)));
  CHECK(lchoose(52, 5) == doctest::Approx(std::log(2598960.0)).epsilon(1e-14));
}

TEST_CASE("compensated summation survives cancellation") {
  KahanSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);

  KahanSum t;
  for (int i = 0; i < 10; ++i) t.add(0.1);
  CHECK(t.value() == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.01) == doctest::Approx(-2.326347874040841).epsilon(1e-12));
  CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-12));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);

  // round trip across the working range
  for (double p = 1e-10; p < 1.0; p = p < 0.1 ? p * 3.7 : p + 0.07) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-13));
  }
}
