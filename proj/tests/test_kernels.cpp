#include "support.hpp"

#include "actinfo/kernels.hpp"

using namespace actinfo;
using namespace testing;

TEST_SUITE("kernels") {
  TEST_CASE("parallel vec_mat matches the serial reference bitwise") {
    RandomSource rng(5);
    for (Eigen::Index m : {1, 7, 255, 256, 700}) {
      Matrix a(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) a(i, j) = rng.uniform();
      std::vector<double> v(static_cast<std::size_t>(m)), x(v.size()), y(v.size());
      for (auto& e : v) e = rng.uniform();
      kernels::vec_mat(v, a, x);
      kernels::vec_mat_serial(v, a, y);
      CHECK(x == y);
      Eigen::RowVectorXd ref = Eigen::Map<const Eigen::RowVectorXd>(v.data(), m) * a;
      for (Eigen::Index j = 0; j < m; ++j) CHECK_NEAR(x[static_cast<std::size_t>(j)], ref(j), 1e-9);
    }
  }

  TEST_CASE("parallel_for rethrows and visits every index") {
    std::vector<int> seen(100, 0);
    kernels::parallel_for(100, [&](std::size_t i) { seen[i] += 1; });
    for (int s : seen) CHECK(s == 1);
    CHECK_THROWS_AS(kernels::parallel_for(10,
                                          [](std::size_t i) {
                                            if (i == 3) throw Error(ErrorKind::OutOfRange, "boom");
                                          }),
                    Error);
  }
}
