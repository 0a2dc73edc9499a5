#include <doctest.h>

#include <random>

#include "pkf/core/box.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/core/linalg.hpp"
#include "pkf/core/models.hpp"

using namespace pkf;

TEST_CASE("sort motion model matrices") {
  const LinearModel m = sort_motion_model();
  m.validate();
  CHECK(m.F(0, 4) == 1.0);
  CHECK(m.F(1, 5) == 1.0);
  CHECK(m.F(2, 6) == 1.0);
  CHECK(m.F(3, 3) == 1.0);
  for (int j = 4; j < 7; ++j) CHECK(m.F(3, j) == 0.0);
  CHECK((m.F - Matrix::Identity(7, 7)).cwiseAbs().sum() == 3.0);

  CHECK(m.W(6, 6) == doctest::Approx(0.01));
  CHECK(m.W(0, 0) == 1.0);
  CHECK(m.V(3, 3) == 10.0);
  CHECK(m.V(1, 1) == 1.0);
  CHECK(m.G.rows() == 7);
  CHECK(m.G.isZero());
  CHECK(m.H.leftCols(4).isIdentity());
  CHECK(m.H.rightCols(3).isZero());

  const LinearModel again = sort_motion_model();
  CHECK(again.F == m.F);
  CHECK(again.W == m.W);
  CHECK(again.V == m.V);
}

TEST_CASE("bbox_to_z examples") {
  const auto z = bbox_to_z({0, 0, 10, 20});
  CHECK(z[0] == 5.0);
  CHECK(z[1] == 10.0);
  CHECK(z[2] == 200.0);
  CHECK(z[3] == 0.5);

  const auto sq = bbox_to_z({100, 50, 40, 40});
  CHECK(sq == Eigen::Vector4d(120, 70, 1600, 1.0));

  CHECK_THROWS_AS(bbox_to_z({0, 0, 0, 5}), InvalidDetection);
  CHECK_THROWS_AS(bbox_to_z({0, 0, 5, -1}), InvalidDetection);
}

TEST_CASE("z_to_bbox examples") {
  const BBox b = z_to_bbox(Eigen::Vector4d(5, 10, 200, 0.5));
  CHECK(b.left == doctest::Approx(0.0));
  CHECK(b.top == doctest::Approx(0.0));
  CHECK(b.width == doctest::Approx(10.0));
  CHECK(b.height == doctest::Approx(20.0));

  const BBox unit = z_to_bbox(Eigen::Vector4d(0, 0, 1, 1));
  CHECK(unit == BBox{-0.5, -0.5, 1, 1});

  CHECK_THROWS_AS(z_to_bbox(Eigen::Vector4d(0, 0, 0, 1)), DegenerateState);
  CHECK_THROWS_AS(z_to_bbox(Eigen::Vector4d(0, 0, 4, -1)), DegenerateState);
}

TEST_CASE("box conversion round trip on random boxes") {
  // Inverse map: width = sqrt(s r), height = sqrt(s / r).
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-500, 1500), size(0.5, 400);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const BBox b{pos(rng), pos(rng), size(rng), size(rng)};
    const BBox back = z_to_bbox(bbox_to_z(b));
    worst = std::max({worst, std::abs(back.left - b.left), std::abs(back.top - b.top),
                      std::abs(back.width - b.width), std::abs(back.height - b.height)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("new box belief") {
  const GaussianBelief b = init_box_belief({0, 0, 10, 20});
  CHECK(b.mean.tail(3).isZero());
  CHECK(b.cov(0, 0) == 10.0);
  CHECK(b.cov(6, 6) == 1e4);
  CHECK(is_psd(b.cov));
}

TEST_CASE("area clamping") {
  Vector mean(7);
  mean << 0, 0, 5, 1, 0, 0, -6;
  clamp_area_velocity(mean);
  CHECK(mean[6] == 0.0);
  CHECK(mean[2] == 5.0);

  mean << 0, 0, -3, -1, 0, 0, 0;
  clamp_box_state(mean);
  CHECK(mean[2] > 0);
  CHECK(mean[3] > 0);
}

TEST_CASE("spd helpers") {
  Matrix a(2, 2);
  a << 4, 1, 1, 3;
  const Matrix x = spd_solve(a, Matrix::Identity(2, 2));
  CHECK((a * x - Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(spd_logdet(a) == doctest::Approx(std::log(11.0)));

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1;
  CHECK_THROWS_AS(spd_solve(singular, Matrix::Identity(2, 2)), NumericalError);

  Matrix asym = a;
  asym(0, 1) += 1e-3;
  CHECK_FALSE(is_symmetric(asym));
  symmetrize(asym);
  CHECK(is_symmetric(asym));

  Matrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_FALSE(is_psd(indefinite));

  CovarianceHealth health;
  health.record({Vector::Zero(2), a});
  health.record({Vector::Zero(2), indefinite});
  CHECK(health.checked == 2);
  CHECK(health.not_psd == 1);
  CHECK_FALSE(health.ok());
}

TEST_CASE("model validation") {
  LinearModel m = sort_motion_model();
  m.V = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(m.validate(), ContractViolation);
}
