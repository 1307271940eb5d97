#include "fdecay/banded.hpp"
#include "fdecay/linalg.hpp"
#include "fdecay/mtx_io.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace fdecay;
using namespace std::complex_literals;

namespace {
const Complex i1(0, 1);

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("toeplitz_build matches the stencil layout") {
  const BandedMatrix t = toeplitz_build({{-i1, i1, Complex(-2)}, 1, 3});
  CHECK(t.beta == 1);
  CHECK(t.gamma == 1);
  CHECK(t.data(0, 0) == i1);
  CHECK(t.data(0, 1) == Complex(-2));
  CHECK(t.data(1, 0) == -i1);
  CHECK(t.data(0, 2) == Complex(0));

  const BandedMatrix single = toeplitz_build({{Complex(5)}, 0, 2});
  CHECK(single.data.isApprox(5.0 * Matrix::Identity(2, 2)));
  CHECK(single.beta == 0);

  const BandedMatrix t2 = toeplitz_build({{Complex(1), Complex(5), Complex(3)}, 1, 4});
  CHECK(t2.beta == 1);
  CHECK(t2.gamma == 1);
  CHECK(t2.data(1, 2) == Complex(3));
}

TEST_CASE("toeplitz_build rejects bad specs") {
  CHECK_THROWS_AS(toeplitz_build({{}, 0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_build({{Complex(1)}, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_build({{Complex(1), Complex(2)}, 0, 1}), std::invalid_argument);
}

TEST_CASE("band_distance") {
  CHECK(band_distance(1, 5, 2, 1) == 2);
  CHECK(band_distance(7, 3, 2, 1) == 4);
  CHECK(band_distance(1, 2, 1, 1) == 1);
  CHECK_THROWS_AS(band_distance(3, 3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(band_distance(1, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("powers vanish below the band distance") {
  auto gen = test::rng(7);
  const BandedMatrix bm = test::random_banded(20, 2, 3, gen);
  Matrix power = Matrix::Identity(20, 20);
  for (int m = 1; m <= 6; ++m) {
    power = (power * bm.data).eval();
    for (Index k = 1; k <= 20; ++k)
      for (Index l = 1; l <= 20; ++l) {
        if (k == l) continue;
        if (band_distance(k, l, bm.beta, bm.gamma) > m)
          CHECK(power(k - 1, l - 1) == Complex(0));
      }
  }
}

TEST_CASE("bandwidth scan recovers declared widths") {
  auto gen = test::rng(11);
  for (auto [beta, gamma] : {std::pair<Index, Index>{1, 1}, {2, 1}, {1, 2}, {3, 2}}) {
    std::vector<Complex> stencil;
    for (Index s = 0; s < beta + gamma + 1; ++s) stencil.push_back(test::random_complex(gen));
    const BandedMatrix t = toeplitz_build({stencil, gamma, 12});
    CHECK(t.beta == beta);
    CHECK(t.gamma == gamma);
    const auto [sb, sg] = detect_bandwidths(t.data);
    CHECK(sb == beta);
    CHECK(sg == gamma);
  }
}

TEST_CASE("kron_sum") {
  Matrix d2(2, 2), z1(1, 1);
  d2 << Complex(1), Complex(0), Complex(0), Complex(2);
  z1 << Complex(0);

  SUBCASE("diagonal case") {
    const Matrix s = kron_sum(d2, d2);
    Vector expect(4);
    expect << Complex(2), Complex(3), Complex(3), Complex(4);
    CHECK(s.diagonal().isApprox(expect));
    CHECK((s - Matrix(s.diagonal().asDiagonal())).norm() == 0.0);
  }

  SUBCASE("zero summand gives I kron B") {
    auto gen = test::rng(3);
    const Matrix b = test::random_matrix(3, 3, gen);
    const Matrix s = kron_sum(Matrix::Zero(2, 2), b);
    CHECK(s.isApprox(kron_product(Matrix::Identity(2, 2), b)));
  }

  SUBCASE("entrywise formula, brute force") {
    auto gen = test::rng(4);
    const Matrix a = test::random_matrix(3, 3, gen);
    const Matrix b = test::random_matrix(3, 3, gen);
    const Matrix s = kron_sum(a, b);
    const Index n = 3;
    for (Index row = 1; row <= n * n; ++row)
      for (Index col = 1; col <= n * n; ++col) {
        const Index k1 = (row - 1) % n + 1, k2 = (row - 1) / n + 1;
        const Index l1 = (col - 1) % n + 1, l2 = (col - 1) / n + 1;
        Complex expect(0);
        if (k1 == l1) expect += a(k2 - 1, l2 - 1);
        if (k2 == l2) expect += b(k1 - 1, l1 - 1);
        CHECK(std::abs(s(row - 1, col - 1) - expect) < 1e-14);
      }
  }

  SUBCASE("eigenvalues of diagonal summands add") {
    Matrix da = Vector::LinSpaced(3, 1.0, 3.0).cast<Complex>().asDiagonal();
    Matrix db(2, 2);
    db << Complex(0, 1), Complex(0), Complex(0), Complex(5);
    const Matrix s = kron_sum(da, db);
    std::vector<Complex> expect;
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 2; ++j) expect.push_back(da(i, i) + db(j, j));
    auto got = s.diagonal();
    std::vector<bool> used(expect.size(), false);
    for (Index i = 0; i < got.size(); ++i) {
      bool found = false;
      for (std::size_t e = 0; e < expect.size(); ++e)
        if (!used[e] && std::abs(expect[e] - got(i)) < 1e-14) {
          used[e] = found = true;
          break;
        }
      CHECK(found);
    }
  }

  CHECK_THROWS_AS(kron_sum(Matrix::Zero(2, 3), Matrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("solve_linear") {
  auto gen = test::rng(5);

  SUBCASE("identity") {
    const Matrix b = test::random_matrix(4, 2, gen);
    CHECK(solve_linear(Matrix::Identity(4, 4), b).isApprox(b));
  }

  SUBCASE("diagonal") {
    Matrix a(2, 2);
    a << Complex(2), Complex(0), Complex(0), Complex(4);
    const Matrix x = solve_linear(a, Matrix::Identity(2, 2));
    CHECK(std::abs(x(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(x(1, 1) - 0.25) < 1e-15);
  }

  SUBCASE("residual on a well-conditioned system") {
    const Matrix a = test::random_matrix(10, 10, gen) + 5.0 * Matrix::Identity(10, 10);
    const Matrix b = test::random_matrix(10, 3, gen);
    const Matrix x = solve_linear(a, b);
    CHECK((a * x - b).norm() <= 1e-12 * b.norm());
  }

  SUBCASE("singular input reports an error") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;  // rank 2
    CHECK_THROWS_AS(solve_linear(a, Matrix::Identity(3, 3)), std::domain_error);
  }
}

TEST_CASE("hermitian_extreme_eigenpair") {
  SUBCASE("diagonal") {
    Matrix h(2, 2);
    h << Complex(1), Complex(0), Complex(0), Complex(3);
    const auto [lambda, u] = hermitian_extreme_eigenpair(h);
    CHECK(lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(u(1)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("swap matrix") {
    Matrix h(2, 2);
    h << Complex(0), Complex(1), Complex(1), Complex(0);
    const auto [lambda, u] = hermitian_extreme_eigenpair(h);
    CHECK(lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(u(0) - u(1)) < 1e-10);  // equal components up to the common phase
    CHECK(std::abs(std::abs(u(0)) - 1 / std::sqrt(2.0)) < 1e-12);
  }

  SUBCASE("dominates sampled Rayleigh quotients") {
    auto gen = test::rng(17);
    const Matrix h = test::random_hermitian(8, gen);
    const auto [lambda, u] = hermitian_extreme_eigenpair(h);
    double best = -1e300;
    for (int s = 0; s < 100000; ++s) {
      const Vector v = test::random_unit_vector(8, gen);
      best = std::max(best, (v.adjoint() * (h * v))(0, 0).real());
    }
    CHECK(lambda >= best - 1e-8);
  }

  SUBCASE("rejects non-Hermitian input") {
    Matrix h(2, 2);
    h << Complex(0), Complex(1), Complex(0), Complex(0);
    CHECK_THROWS_AS(hermitian_extreme_eigenpair(h), std::invalid_argument);
  }
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix d(2, 2);
  d << Complex(3), Complex(0), Complex(0), Complex(0, -4);
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-12));

  Matrix jordan(2, 2);
  jordan << Complex(0), Complex(1), Complex(0), Complex(0);
  CHECK(spectral_norm(jordan) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mtx_read coordinate and symmetry") {
  const auto path = temp_file("fdecay_test_coord.mtx");
  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix coordinate real general\n"
        << "% comment\n"
        << "2 2 2\n"
        << "1 1 1.0\n"
        << "2 2 2.0\n";
  }
  const Matrix a = mtx_read(path.string());
  CHECK(a.rows() == 2);
  CHECK(a(0, 0) == Complex(1));
  CHECK(a(1, 1) == Complex(2));
  CHECK(a(0, 1) == Complex(0));

  const auto spath = temp_file("fdecay_test_sym.mtx");
  {
    std::ofstream out(spath);
    out << "%%MatrixMarket matrix coordinate real symmetric\n"
        << "2 2 1\n"
        << "2 1 3.0\n";
  }
  const Matrix s = mtx_read(spath.string());
  CHECK(s(1, 0) == Complex(3));
  CHECK(s(0, 1) == Complex(3));
}

TEST_CASE("mtx_read rejects malformed input") {
  const auto bad_header = temp_file("fdecay_test_bad1.mtx");
  {
    std::ofstream out(bad_header);
    out << "%%NotMatrixMarket matrix coordinate real general\n2 2 0\n";
  }
  CHECK_THROWS_AS(mtx_read(bad_header.string()), std::runtime_error);

  const auto bad_index = temp_file("fdecay_test_bad2.mtx");
  {
    std::ofstream out(bad_index);
    out << "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n";
  }
  CHECK_THROWS_AS(mtx_read(bad_index.string()), std::runtime_error);

  const auto bad_count = temp_file("fdecay_test_bad3.mtx");
  {
    std::ofstream out(bad_count);
    out << "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n";
  }
  CHECK_THROWS_AS(mtx_read(bad_count.string()), std::runtime_error);
}

TEST_CASE("mtx array round-trip is bit exact") {
  auto gen = test::rng(23);
  const Matrix a = test::random_matrix(5, 3, gen);
  const auto path = temp_file("fdecay_test_roundtrip.mtx");
  mtx_write(path.string(), a);
  const Matrix back = mtx_read(path.string());
  REQUIRE(back.rows() == a.rows());
  REQUIRE(back.cols() == a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) CHECK(back(i, j) == a(i, j));
}

TEST_CASE("mtx_read hermitian array storage") {
  const auto path = temp_file("fdecay_test_herm.mtx");
  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix array complex hermitian\n"
        << "2 2\n"
        << "1.0 0.0\n"   // (1,1)
        << "2.0 1.0\n"   // (2,1)
        << "5.0 0.0\n";  // (2,2)
  }
  const Matrix h = mtx_read(path.string());
  CHECK(h(1, 0) == Complex(2, 1));
  CHECK(h(0, 1) == Complex(2, -1));
  CHECK(h(1, 1) == Complex(5));
}
