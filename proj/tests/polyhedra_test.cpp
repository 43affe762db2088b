#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gbm/error.hpp"
#include "gbm/metrics.hpp"
#include "gbm/polyhedra.hpp"

using namespace gbm;
using std::numbers::pi;

namespace {

const Face& face_named(const Region& r, const std::string& label) {
  for (const Face& f : r.faces())
    if (f.label == label) return f;
  throw std::runtime_error("no face " + label);
}

Eigen::VectorXd pt(double x, double y) { return Eigen::Vector2d(x, y); }

}  // namespace

TEST(ActiveConstraints, UnitSquare) {
  const Region sq = regions::unit_square();
  EXPECT_TRUE(active_constraints(sq, pt(0.5, 0.5)).empty());
  EXPECT_EQ(active_constraints(sq, pt(0, 0.5)), std::vector<int>({0}));
  EXPECT_EQ(active_constraints(sq, pt(0, 0)), std::vector<int>({0, 2}));
  EXPECT_EQ(sq.constraints()[0].name, "left");
  EXPECT_EQ(sq.constraints()[2].name, "bottom");
  EXPECT_THROW(active_constraints(sq, pt(-0.1, 0.5)), Error);
}

TEST(OuterAngle, Examples) {
  const Region sq = regions::unit_square();
  const OuterAngleCell edge = outer_angle_measure(sq, pt(0, 0.5));
  EXPECT_EQ(edge.active.size(), 1u);
  EXPECT_EQ(edge.description, "codimension-1: full outward normal");
  EXPECT_NEAR(edge.normals(0, 0), -1.0, 1e-12);
  EXPECT_NEAR(edge.normals(1, 0), 0.0, 1e-12);

  EXPECT_NEAR(outer_angle_measure(sq, pt(0, 0)).measure, 0.25, 1e-12);
  const Region sector = regions::flat_sector(2 * pi / 3);
  EXPECT_NEAR(outer_angle_measure(sector, pt(0, 0)).measure, 1.0 / 6, 1e-12);
  EXPECT_THROW(outer_angle_measure(sq, pt(0.5, 0.5)), Error);
}

TEST(OuterAngle, DegenerateCornerIsRejected) {
  // two constraints with parallel gradients meeting at the origin
  Region r("cusp", metrics::euclidean({Axis{-1, 1}, Axis{-1, 1}}), {Axis{-1, 1}, Axis{0, 1}},
           {Constraint{"a", [](const Eigen::VectorXd& p) { return p[1]; }},
            Constraint{"b", [](const Eigen::VectorXd& p) { return p[1] - p[0] * p[0]; }}});
  try {
    outer_angle_measure(r, pt(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::corner_regularity);
  }
}

TEST(OuterAngleProperties, SampledAgreesWithExactForRandomCorners) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.1, pi - 0.1);
  OuterAngleOptions sampled;
  sampled.force_sampling = true;
  sampled.samples = 2000000;
  for (int i = 0; i < 20; ++i) {
    const Region sector = regions::flat_sector(angle(rng));
    const double exact = outer_angle_measure(sector, pt(0, 0)).measure;
    const OuterAngleCell s = outer_angle_measure(sector, pt(0, 0), sampled);
    EXPECT_FALSE(s.exact);
    EXPECT_NEAR(s.measure, exact, 2e-3);
  }
}

TEST(OuterAngle, ThreeFacesOfACubeCorner) {
  Region cube("cube", metrics::euclidean(3), {Axis{0, 1}, Axis{0, 1}, Axis{0, 1}},
              {Constraint{"x", [](const Eigen::VectorXd& p) { return p[0]; }},
               Constraint{"y", [](const Eigen::VectorXd& p) { return p[1]; }},
               Constraint{"z", [](const Eigen::VectorXd& p) { return p[2]; }}});
  const OuterAngleCell c = outer_angle_measure(cube, Eigen::Vector3d(0, 0, 0));
  EXPECT_NEAR(c.measure, 0.125, 3e-3);
  EXPECT_FALSE(c.exact);
}

TEST(SecondFundamentalForm, Examples) {
  const Region sq = regions::unit_square();
  EXPECT_NEAR(second_fundamental_form(sq, face_named(sq, "left"), pt(0, 0.3)).form(0, 0), 0.0, 1e-12);

  for (double r : {0.5, 1.0, 2.0}) {
    Region disk("disk", metrics::euclidean({Axis{-3, 3}, Axis{-3, 3}}), {Axis{-r, r}, Axis{-r, r}},
                {Constraint{"rim", [r](const Eigen::VectorXd& p) { return r * r - p.squaredNorm(); }}});
    disk.add_face({"rim", {0}, std::nullopt});
    const double t = 0.7;
    const SecondFundamentalForm ii = second_fundamental_form(disk, disk.faces()[0], pt(r * std::cos(t), r * std::sin(t)));
    ASSERT_EQ(ii.form.rows(), 1);
    EXPECT_NEAR(ii.form(0, 0), 1 / r, 1e-8);
  }

  const Region cusp = regions::thin_cusp(std::exp(-2.0));  // level u0 = 1
  EXPECT_NEAR(second_fundamental_form(cusp, cusp.faces()[0], pt(1.0, 0.4)).form(0, 0), 3.0, 1e-9);
}

TEST(SecondFundamentalForm, RejectsNormalOutsideCone) {
  const Region sq = regions::unit_square();
  const Face& corner = face_named(sq, "bottom-left");
  const SecondFundamentalForm ok = second_fundamental_form(sq, corner, pt(0, 0), Eigen::Vector2d(-1, -1).normalized());
  EXPECT_EQ(ok.form.rows(), 0);
  EXPECT_THROW(second_fundamental_form(sq, corner, pt(0, 0), Eigen::Vector2d(1, -1)), Error);
  EXPECT_THROW(second_fundamental_form(sq, face_named(sq, "left"), pt(0.2, 0.5)), Error);
}

TEST(SecondFundamentalForm, SingularGradient) {
  Region r("flat-constraint", metrics::euclidean(2), {Axis{0, 1}, Axis{0, 1}},
           {Constraint{"c", [](const Eigen::VectorXd& p) { return std::pow(p[0] - 0.5, 3); }}});
  r.add_face({"c", {0}, std::nullopt});
  try {
    second_fundamental_form(r, r.faces()[0], pt(0.5, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::singular_gradient);
  }
}

TEST(SecondFundamentalFormProperties, GeodesicBoundariesHaveZeroII) {
  // edges of the spherical triangle are great circles, the pentagon's are
  // half-plane geodesics
  for (const Region& r : {regions::spherical_triangle(), regions::hyperbolic_pentagon()}) {
    for (const Face& f : r.faces()) {
      if (f.active.size() != 1) continue;
      for (double s : {0.2, 0.5, 0.8}) {
        const Axis& a = f.param->box[0];
        const Eigen::VectorXd p = f.param->map(Eigen::VectorXd::Constant(1, a.lo + s * a.length()));
        EXPECT_NEAR(second_fundamental_form(r, f, p).form(0, 0), 0.0, 1e-6) << r.name() << " " << f.label;
      }
    }
  }
}

TEST(SecondFundamentalFormProperties, ModelLevelSetsAreUniform) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double u0 = 0.1 * i;
    const Region cusp = regions::thin_cusp(std::exp(-2 * u0));
    worst = std::max(worst, std::abs(second_fundamental_form(cusp, cusp.faces()[0], pt(u0, 0.25)).form(0, 0) - 3));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(FaceVolume, Examples) {
  const Region sq = regions::unit_square();
  EXPECT_NEAR(face_volume(sq, face_named(sq, "left")), 1.0, 1e-12);
  EXPECT_EQ(face_volume(sq, face_named(sq, "top-left")), 1.0);
  const Region hemi = regions::hemisphere();
  EXPECT_NEAR(face_volume(hemi, hemi.faces()[0]), 2 * pi, 1e-10);
  const Region cusp = regions::thin_cusp(1e-2);
  EXPECT_NEAR(face_volume(cusp, cusp.faces()[0]), 1e-3, 1e-13);

  Region bare("bare", metrics::euclidean(2), {Axis{0, 1}, Axis{0, 1}}, {Constraint{"c", [](const Eigen::VectorXd& p) { return p[0]; }}});
  bare.add_face({"c", {0}, std::nullopt});
  EXPECT_THROW(face_volume(bare, bare.faces()[0]), Error);
}

TEST(FaceVolumeProperties, FibreSlopeIsThreeHalves) {
  std::vector<double> x, y;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Region cusp = regions::thin_cusp(eps);
    x.push_back(std::log(eps));
    y.push_back(std::log(face_volume(cusp, cusp.faces()[0])));
  }
  const double slope = (y.back() - y.front()) / (x.back() - x.front());
  EXPECT_NEAR(slope, 1.5, 0.01);
}

TEST(FaceVolume, PentagonEdgesAreHyperbolicLengths) {
  // imaginary axis from i to 3i has length log 3
  const Region p = regions::hyperbolic_pentagon();
  EXPECT_NEAR(face_volume(p, face_named(p, "imaginary-axis")), std::log(3.0), 1e-10);
}

TEST(InnerEuler, Examples) {
  EXPECT_EQ(inner_euler(regions::unit_square()), 1);
  EXPECT_EQ(inner_euler(regions::spherical_triangle()), 1);
  Region modular("truncated-modular-curve", metrics::half_plane(), {Axis{-0.5, 0.5}, Axis{0.8, 10}}, {});
  // genus 0, four boundary circles: chi = 2 - 0 - 4, boundary chi = 0
  modular.set_topology({-2, 0});
  EXPECT_EQ(inner_euler(modular), -2);
  // only the open 2-cell of a square is inner
  Region cells("cells", metrics::euclidean(2), {Axis{0, 1}, Axis{0, 1}}, {});
  cells.set_cell_data({0, 0, 1});
  EXPECT_EQ(inner_euler(cells), 1);
  Region unknown("unknown", metrics::euclidean(2), {Axis{0, 1}, Axis{0, 1}}, {});
  EXPECT_THROW(inner_euler(unknown), Error);
}

TEST(Region, BuiltinsAreCornerRegularAndFacesLieOnTheirConstraints) {
  for (const std::string& name : regions::polygon_catalog()) {
    const Region r = regions::polygon_by_name(name);
    EXPECT_NO_THROW(check_corner_regularity(r)) << name;
    for (const Face& f : r.faces()) {
      const int m = static_cast<int>(f.param->box.size());
      Eigen::VectorXd t(m);
      for (int k = 0; k < m; ++k) t[k] = f.param->box[static_cast<std::size_t>(k)].lo + 0.37 * f.param->box[static_cast<std::size_t>(k)].length();
      const Eigen::VectorXd p = f.param->map(t);
      EXPECT_EQ(active_constraints(r, p), f.active) << name << " " << f.label;
    }
  }
  EXPECT_THROW(regions::polygon_by_name("heptagon"), Error);
}
