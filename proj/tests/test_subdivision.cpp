#include <gtest/gtest.h>

#include <set>

#include "chromatic/geometry.hpp"
#include "chromatic/subdivision.hpp"

using namespace chromatic;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST(OrderedPartitions, SmallCases) {
  const auto two = enumerate_ordered_partitions(IdSet{0, 1});
  ASSERT_EQ(two.size(), 3u);
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& p : two) {
    std::vector<std::uint64_t> blocks;
    for (IdSet b : p.blocks) blocks.push_back(b.bits());
    seen.insert(blocks);
  }
  EXPECT_TRUE(seen.count({0b01, 0b10}));
  EXPECT_TRUE(seen.count({0b10, 0b01}));
  EXPECT_TRUE(seen.count({0b11}));
  EXPECT_EQ(enumerate_ordered_partitions(full_id_set(3)).size(), 13u);
  EXPECT_EQ(enumerate_ordered_partitions(full_id_set(4)).size(), 75u);
  EXPECT_EQ(enumerate_ordered_partitions(IdSet{2}).size(), 1u);
  EXPECT_EQ(code_of([] { enumerate_ordered_partitions(IdSet{}); }), ErrorCode::EmptyIdSet);
}

TEST(ChiSimplex, EdgeTriangleAndVertex) {
  Universe u(3);
  const Complex edge = chi_simplex(u, u.input_face(IdSet{0, 1}));
  EXPECT_EQ(edge.vertices().size(), 4u);
  EXPECT_EQ(edge.facets().size(), 3u);

  const Complex tri = chi_simplex(u, u.input_simplex());
  EXPECT_EQ(tri.vertices().size(), 12u);
  EXPECT_EQ(tri.facets().size(), 13u);
  EXPECT_EQ(tri.euler_characteristic(), 1);

  const Complex point = chi_simplex(u, Simplex{u.base(ProcessId(2))});
  ASSERT_EQ(point.facets().size(), 1u);
  EXPECT_EQ(u.key(point.facets()[0][0]), "v(2|{v(2)})");
  EXPECT_EQ(point.level(), 1);
}

TEST(ChiComplex, GluesAndIterates) {
  Universe u(3);
  const Complex one = chi_simplex(u, u.input_simplex());
  const Complex two = chi_complex(u, one);
  EXPECT_EQ(two.facets().size(), 169u);
  EXPECT_EQ(two.vertices().size(), 99u);
  EXPECT_EQ(two.euler_characteristic(), 1);

  const Complex single(1, {one.facets()[3]});
  const Complex a = chi_complex(u, single);
  const Complex b = chi_simplex(u, one.facets()[3]);
  EXPECT_EQ(a.facets(), b.facets());

  EXPECT_EQ(iterate_chi(u, u.input_simplex(), 0).facets().size(), 1u);
  EXPECT_EQ(iterate_chi(u, u.input_simplex(), 1).facets().size(), 13u);
  const Complex three = iterate_chi(u, u.input_simplex(), 3);
  EXPECT_EQ(three.facets().size(), 2197u);
  EXPECT_EQ(three.vertices().size(), 1140u);
  EXPECT_EQ(three.euler_characteristic(), 1);
}

TEST(ChiComplex, BudgetIsEnforced) {
  Limits tight;
  tight.facet_budget = 100;
  Universe u(3, tight);
  EXPECT_EQ(code_of([&] { iterate_chi(u, u.input_simplex(), 2); }), ErrorCode::ResourceLimit);
}

TEST(Carrier, ExamplesAndOutsideSigma) {
  Universe u(3);
  const Simplex sigma = u.input_simplex();
  EXPECT_EQ(carrier(u, Simplex{u.parse_key("v(1|{v(0),v(1)})")}, sigma), (IdSet{0, 1}));
  EXPECT_EQ(carrier(u, central_simplex(u, chi_simplex(u, sigma)), sigma), full_id_set(3));
  Simplex corner{u.base(ProcessId(0))};
  for (int i = 0; i < 3; ++i) corner = chi_simplex(u, corner).facets()[0];
  EXPECT_EQ(carrier(u, corner, sigma), IdSet{0});
  const Simplex edge = u.input_face(IdSet{0, 1});
  EXPECT_EQ(code_of([&] { carrier(u, Simplex{u.parse_key("v(2|{v(1),v(2)})")}, edge); }), ErrorCode::NotInComplex);
}

TEST(Central, OneBlockSchedule) {
  Universe u(3);
  const Simplex edge = u.input_face(IdSet{0, 1});
  const Simplex mid = central_simplex(u, chi_simplex(u, edge));
  EXPECT_EQ(u.keys(mid), (std::vector<std::string>{"v(0|{v(0),v(1)})", "v(1|{v(0),v(1)})"}));
  const Simplex inner = central_simplex(u, chi_simplex(u, u.input_simplex()));
  for (VertexId v : inner) EXPECT_EQ(u.carrier(v), full_id_set(3));
  const Simplex vtx{u.base(ProcessId(1))};
  EXPECT_EQ(u.keys(central_simplex(u, chi_simplex(u, vtx))), (std::vector<std::string>{"v(1|{v(1)})"}));
  EXPECT_EQ(code_of([&] { central_simplex(u, iterate_chi(u, u.input_simplex(), 2)); }),
            ErrorCode::NotASingleSubdivision);
}

TEST(Symmetry, BijectionBetweenFaces) {
  Universe u(3);
  const auto solo = symmetry_bijection(u, IdSet{0}, IdSet{1}, 1);
  ASSERT_EQ(solo.size(), 1u);
  EXPECT_EQ(u.key(solo[0].first), "v(0|{v(0)})");
  EXPECT_EQ(u.key(solo[0].second), "v(1|{v(1)})");

  const auto phi = symmetry_bijection(u, IdSet{0, 1}, IdSet{0, 2}, 1);
  ASSERT_EQ(phi.size(), 4u);
  for (const auto& [a, b] : phi) {
    EXPECT_EQ(u.id(b).value, u.id(a).value == 0 ? 0 : 2);
    EXPECT_EQ(u.carrier(b).size(), u.carrier(a).size());
    EXPECT_TRUE(u.carrier(b).subset_of(IdSet{0, 2}));
  }
  const auto back = symmetry_bijection(u, IdSet{0, 2}, IdSet{0, 1}, 1);
  std::map<VertexId, VertexId> inv(back.begin(), back.end());
  for (const auto& [a, b] : phi) EXPECT_EQ(inv.at(b), a);

  EXPECT_EQ(code_of([&] { symmetry_bijection(u, IdSet{0}, IdSet{0, 1}, 1); }), ErrorCode::DimensionMismatch);
}

TEST(SupportMap, UnfoldsToTargetLevel) {
  Universe u(3);
  const Complex two = iterate_chi(u, u.input_simplex(), 2);
  SupportMap to1(u, 1), to0(u, 0);
  for (VertexId v : two.vertices()) {
    EXPECT_EQ(to1.of(v), u.view(v));
    EXPECT_EQ(u.ids(to0.of(v)), u.carrier(v));
  }
}

TEST(CarrierObservation, HoldsOnSmallLevels) {
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    auto u = std::make_shared<Universe>(n);
    SubdivisionTower tower(u);
    const CarrierObservation o = check_carrier_observation(*u, tower.simplices(ell));
    EXPECT_TRUE(o.ok()) << n << "," << ell;
    EXPECT_GT(o.full_dimensional, 0u);
  }
}

TEST(Geometry, CornersAndFirstLevel) {
  Universe u(3);
  const Complex zero = iterate_chi(u, u.input_simplex(), 0);
  const auto corners = geometric_realization(u, zero);
  ASSERT_EQ(corners.size(), 3u);

  const Complex one = iterate_chi(u, u.input_simplex(), 1);
  const auto pts = geometric_realization(u, one);
  EXPECT_EQ(pts.size(), 12u);
  Realization r(u);
  const auto outer = r.triangle(u.input_simplex());
  std::set<std::pair<double, double>> distinct;
  for (VertexId v : central_simplex(u, one)) {
    const Point p = r.position(v);
    distinct.insert({p.x, p.y});
    const double whole = detail::orient(outer[0], outer[1], outer[2]);
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_GT(whole * detail::orient(outer[i], outer[(i + 1) % 3], p), 1e-9);
  }
  EXPECT_EQ(distinct.size(), 3u);
}

TEST(Geometry, ConsistentOrientationUpToLevelFour) {
  auto u = std::make_shared<Universe>(3);
  SubdivisionTower tower(u);
  for (int ell = 1; ell <= 4; ++ell) {
    Realization r(*u);
    const EmbeddingReport rep = check_embedding(r, tower.level(ell));
    EXPECT_TRUE(rep.ok) << ell;
    EXPECT_EQ(rep.flipped, 0u);
    EXPECT_EQ(rep.overlapping_pairs, 0u);
  }
}

TEST(Geometry, PositiveDeltaFolds) {
  Universe u(3);
  const Complex two = iterate_chi(u, u.input_simplex(), 2);
  EXPECT_EQ(code_of([&] { geometric_realization(u, two, {0.5}); }), ErrorCode::EmbeddingFailed);
  EXPECT_NO_THROW(geometric_realization(u, two, {-0.9}));
}

TEST(Geometry, SvgMentionsEveryFacet) {
  Universe u(3);
  const Complex one = iterate_chi(u, u.input_simplex(), 1);
  Realization r(u);
  const std::string svg = to_svg(r, one);
  std::size_t polygons = 0;
  for (std::size_t pos = svg.find("<polygon"); pos != std::string::npos; pos = svg.find("<polygon", pos + 1)) ++polygons;
  EXPECT_EQ(polygons, 13u);
}
