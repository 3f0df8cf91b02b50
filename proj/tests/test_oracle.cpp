#include <gtest/gtest.h>

#include "chromatic/local_solvers.hpp"
#include "chromatic/oracle.hpp"

using namespace chromatic;

TEST(Fubini, KnownValues) {
  EXPECT_EQ(fubini_number(0), 1u);
  EXPECT_EQ(fubini_number(1), 1u);
  EXPECT_EQ(fubini_number(2), 3u);
  EXPECT_EQ(fubini_number(3), 13u);
  EXPECT_EQ(fubini_number(4), 75u);
  EXPECT_EQ(fubini_number(5), 541u);
}

TEST(Fubini, CountsMatchTheSubdivision) {
  for (auto [n, ell, facets] : {std::tuple{3, 1, 13u}, {3, 2, 169u}, {3, 3, 2197u}, {4, 1, 75u}, {4, 2, 5625u}}) {
    Universe u(n);
    const CountVerdict v = fubini_count_check(u, ell);
    EXPECT_TRUE(v.ok) << n << "," << ell;
    EXPECT_EQ(v.facets, facets);
    EXPECT_EQ(v.euler, 1);
  }
  Universe tight(3, Limits{100});
  EXPECT_THROW(fubini_count_check(tight, 2), Error);
}

TEST(Parity, IdColoringIsOdd) {
  for (auto [n, ell] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    Universe u(n);
    const Complex k = iterate_chi(u, u.input_simplex(), ell);
    const ParityVerdict p = sperner_parity_check(u, id_coloring(u, k), k);
    EXPECT_TRUE(p.odd);
  }
}

TEST(Parity, ShiftedColoringIsNotSperner) {
  Universe u(3);
  const Complex k = chi_simplex(u, u.input_simplex());
  Coloring c = id_coloring(u, k);
  c.set(u.parse_key("v(1|{v(1)})"), 0);
  try {
    sperner_parity_check(u, c, k);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSperner);
  }
}

TEST(Parity, LocalSolutionStaysOdd) {
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(3));
  for (const Simplex& tau : tower->level(1).facets()) {
    const LocalSolution s = theorem_sa_local_solution(*tower, 1, tau);
    EXPECT_TRUE(sperner_parity_check(tower->universe(), s.coloring, tower->level(2)).odd);
  }
}

TEST(Oracle, ConsensusHasNoLocalSolution) {
  Universe u(2);
  const auto path = consensus_path(u, u.input_simplex());
  const std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{0}},
                                                 {path[1].index, DecisionSet{0}},
                                                 {path[2].index, DecisionSet{1}},
                                                 {path[3].index, DecisionSet{1}}};
  const Complex base(1, {Simplex{path[0], path[1]}, Simplex{path[1], path[2]}, Simplex{path[2], path[3]}});
  const OracleVerdict v = brute_force_local_search(u, consensus_task(val), Simplex{path[1], path[2]}, base, 1000);
  EXPECT_FALSE(v.exists);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_EQ(v.space, 16u);
  EXPECT_TRUE(v.witness.empty());
}

TEST(Oracle, FindsSetAgreementAndWsbSolutions) {
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(3));
  Universe& u = tower->universe();
  const Complex& base = tower->level(1);
  const Simplex center = central_simplex(u, base);
  const OracleVerdict sa = brute_force_local_search(u, sa_task(3, 1), center, base, 10'000'000);
  EXPECT_TRUE(sa.exists);
  EXPECT_EQ(sa.neighbors, 3u);
  EXPECT_EQ(sa.witness.size(), 12u);
  EXPECT_EQ(sa.space, 531441u);

  const Simplex corner = base.facets().front();
  const OracleVerdict wsb = brute_force_local_search(u, wsb_task(3, 1), corner, base, 10'000'000);
  EXPECT_TRUE(wsb.exists);
  EXPECT_EQ(wsb.space, 4096u);
  for (const auto& [key, value] : wsb.witness) EXPECT_TRUE(value == 0 || value == 1) << key;
}

TEST(Oracle, ImpossibleValenciesAreRefuted) {
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(3));
  Universe& u = tower->universe();
  ValencyTask all = sa_task(3, 1);
  all.rule = [](const Universe&, const Simplex&) { return DecisionSet{0, 1, 2}; };
  const Complex& base = tower->level(1);
  const OracleVerdict v = brute_force_local_search(u, all, base.facets().front(), base, 10'000'000);
  EXPECT_FALSE(v.exists);
  EXPECT_TRUE(v.exhaustive);
}

TEST(Oracle, BudgetAndInputChecks) {
  auto tower = std::make_shared<SubdivisionTower>(std::make_shared<Universe>(3));
  Universe& u = tower->universe();
  const Complex& base = tower->level(1);
  try {
    brute_force_local_search(u, sa_task(3, 1), central_simplex(u, base), base, 5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
  EXPECT_THROW(brute_force_local_search(u, sa_task(3, 1), u.input_simplex(), base, 1000), Error);
}
