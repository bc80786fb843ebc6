#include <sstream>

#include <gtest/gtest.h>

#include "spintomo/io.hpp"

using namespace spintomo;
using io::json;

TEST(StateJson, RoundTripIsExact) {
  const auto rho = random_density(4, 3, 1);
  const BipartiteShape shape(HalfInteger::from_twice(1), HalfInteger::from_twice(1));
  const json doc = io::state_to_json(rho.matrix(), shape);
  const io::StateFile back = io::state_from_json(json::parse(doc.dump()));
  EXPECT_EQ(max_abs(back.matrix - rho.matrix()), 0.0);
  ASSERT_TRUE(back.shape.has_value());
  EXPECT_EQ(*back.shape, shape);
  EXPECT_EQ(doc["shape"]["j1"], "1/2");
}

TEST(StateJson, ParsesHandWrittenFile) {
  const auto doc = json::parse(R"({"dim": 2, "entries": [[0.7, 0], [0.1, -0.2], [0.1, 0.2], [0.3, 0]],
                                   "shape": {"j1": 0, "j2": "1/2"}})");
  const io::StateFile f = io::state_from_json(doc);
  EXPECT_EQ(f.matrix(0, 1), complex(0.1, -0.2));
  EXPECT_EQ(f.shape->j1.twice(), 0);
  EXPECT_EQ(f.shape->j2.twice(), 1);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(f.matrix));
}

TEST(StateJson, RejectsMalformedDocuments) {
  EXPECT_THROW(io::state_from_json(json::parse(R"({"entries": []})")), io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 2, "entries": [[1, 0]]})")), io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 1, "entries": [[1]]})")), io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 1, "entries": [["1", 0]]})")), io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 0, "entries": []})")), io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 1, "entries": [[1, 0]], "shape": {"j1": 0.5, "j2": 0}})")),
               io::format_error);
  EXPECT_THROW(io::state_from_json(json::parse(R"({"dim": 1, "entries": [[1, 0]], "shape": {"j1": "1/2", "j2": 0}})")),
               dimension_mismatch);
}

TEST(UnitaryJson, RoundTripAndValidation) {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto u = UnitaryFrame::from_matrix(h);
  EXPECT_EQ(max_abs(io::unitary_from_json(io::unitary_to_json(u)).matrix() - h), 0.0);
  EXPECT_THROW(io::unitary_from_json(json::parse(R"({"n": 2, "entries": [[1,0],[1,0],[0,0],[1,0]]})")),
               invalid_argument);
}

TEST(FormatNumber, SeventeenDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) EXPECT_EQ(std::stod(io::format_number(x)), x);
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
}

TEST(TomogramCsv, SingleSpinLayouts) {
  const auto rho = DensityMatrix::diagonal({0.5, 0.25, 0.25});
  const HalfInteger j = HalfInteger::from_twice(2);
  std::ostringstream euler;
  io::write_spin_csv(euler, {spin_tomogram(rho, j, {}), spin_tomogram(rho, j, {1.0, 0.5, 0.0})});
  std::istringstream in(euler.str());
  std::string header;
  const auto rows = io::read_csv(in, &header);
  EXPECT_EQ(header, "m,phi,theta,probability");
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].fields[0], "1");
  EXPECT_EQ(rows[2].fields[0], "-1");
  EXPECT_EQ(std::stod(rows[0].fields[3]), 0.5);
  EXPECT_EQ(std::stod(rows[4].fields[1]), 1.0);

  std::ostringstream unitary;
  io::write_spin_csv(unitary, {unitary_tomogram(rho, UnitaryFrame::identity(3))});
  EXPECT_EQ(unitary.str().substr(0, unitary.str().find('\n')), "m,frame_id,probability");
}

TEST(TomogramCsv, JointLayoutAndSidecar) {
  const BipartiteShape shape(HalfInteger::from_twice(1), HalfInteger::from_twice(3));
  const auto t = two_spin_tomogram(DensityMatrix::maximally_mixed(8), shape, {}, {0.1, 0.2, 0.3});
  std::ostringstream os;
  io::write_joint_csv(os, {t});
  std::istringstream in(os.str());
  std::string header;
  const auto rows = io::read_csv(in, &header);
  EXPECT_EQ(header, "m1,m2,frame_id,probability");
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].fields[0], "1/2");
  EXPECT_EQ(rows[0].fields[1], "3/2");
  EXPECT_EQ(rows[7].fields[1], "-3/2");
  const json side = io::frames_sidecar(std::vector<JointTomogram>{t});
  EXPECT_EQ(side["frames"][0]["type"], "euler_pair");
  EXPECT_EQ(side["frames"][0]["angles2"]["theta"].get<double>(), 0.2);
}
