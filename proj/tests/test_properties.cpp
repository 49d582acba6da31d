#include "doctest.h"
#include "properties.hpp"

namespace {

void expect(const testing::PropertyResult& r) {
  CAPTURE(r.name);
  CAPTURE(r.worst);
  CHECK(r.cases >= 1000);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("measure linearity") { expect(testing::measure_linearity()); }
TEST_CASE("measure monotonicity") { expect(testing::measure_monotonicity()); }
TEST_CASE("atoms-only measures are exact") { expect(testing::atom_exactness()); }
TEST_CASE("box monotonicity") { expect(testing::box_monotonicity()); }
TEST_CASE("matrix order preservation") { expect(testing::matrix_order()); }
TEST_CASE("matrix mu-monotonicity") { expect(testing::matrix_mu_monotonicity()); }
