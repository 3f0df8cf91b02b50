#include <gtest/gtest.h>

#include "chromatic/local_solvers.hpp"

using namespace chromatic;

namespace {
std::shared_ptr<SubdivisionTower> tower_for(int n) {
  return std::make_shared<SubdivisionTower>(std::make_shared<Universe>(n));
}

DecisionSet used(const Coloring& c, const Complex& k) {
  DecisionSet out;
  for (VertexId v : k.vertices()) out.insert(c.at(v));
  return out;
}
}  // namespace

TEST(FaceClaim, SameColorOnBothCentralVertices) {
  Universe u(3);
  const Simplex rho = u.input_face(IdSet{1, 2});
  const Coloring c = claim_sa_face_coloring(u, rho, 0, 0);
  const Complex k = chi_simplex(u, rho);
  EXPECT_TRUE(used(c, k).contains(0));
  for (const Simplex& f : k.facets()) EXPECT_NE(c.decisions(f), (DecisionSet{1, 2}));
  EXPECT_EQ(c.at(u.parse_key("v(1|{v(1)})")), 1);
  EXPECT_EQ(c.at(u.parse_key("v(2|{v(2)})")), 2);
}

TEST(FaceClaim, DistinctColors) {
  Universe u(3);
  const Simplex rho = u.input_face(IdSet{0, 2});
  const Coloring c = claim_sa_face_coloring(u, rho, 1, 0);
  const Complex k = chi_simplex(u, rho);
  EXPECT_TRUE(used(c, k).contains(1));
  for (const Simplex& f : k.facets()) EXPECT_NE(c.decisions(f), (DecisionSet{1, 2}));
}

TEST(FaceClaim, FaceContainingTheColorIsRejected) {
  Universe u(3);
  try {
    claim_sa_face_coloring(u, u.input_face(IdSet{0, 1}), 0, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadFace);
  }
}

TEST(SetAgreementLemma, CaseA) {
  Universe u(3);
  const Simplex sigma = u.input_simplex();
  const SaLemmaColoring l = lemma_sa_coloring(u, sigma, SaLemmaMode::case_a());
  EXPECT_EQ(l.base_color, 0);
  EXPECT_EQ(census_fully_colored(u, l.coloring, l.chi).count, 0u);
  for (VertexId v : central_simplex(u, l.chi)) EXPECT_EQ(l.coloring.at(v), 0);
  for (int p = 0; p < 3; ++p) {
    const VertexId corner = u.intern(ProcessId(p), Simplex{u.base(ProcessId(p))});
    EXPECT_EQ(l.coloring.at(corner), p);
  }
}

TEST(SetAgreementLemma, CaseBKeepsChosenFaceIdColored) {
  Universe u(3);
  const Simplex sigma = u.input_simplex();
  const Simplex chosen = u.input_face(IdSet{0, 2});
  const SaLemmaColoring l = lemma_sa_coloring(u, sigma, SaLemmaMode::case_b(chosen));
  EXPECT_EQ(l.base_color, 0);
  EXPECT_EQ(census_fully_colored(u, l.coloring, l.chi).count, 0u);
  const Complex face = chi_simplex(u, chosen);
  for (VertexId v : face.vertices()) EXPECT_EQ(l.coloring.at(v), u.id(v).value);

  // The face missing id 0 forces the central color away from 0.
  const SaLemmaColoring m = lemma_sa_coloring(u, sigma, SaLemmaMode::case_b(u.input_face(IdSet{1, 2})));
  EXPECT_EQ(m.base_color, 1);
  EXPECT_EQ(census_fully_colored(u, m.coloring, m.chi).count, 0u);
}

TEST(SetAgreementLemma, FourProcesses) {
  Universe u(4);
  const SaLemmaColoring a = lemma_sa_coloring(u, u.input_simplex(), SaLemmaMode::case_a());
  EXPECT_EQ(census_fully_colored(u, a.coloring, a.chi).count, 0u);
  const SaLemmaColoring b = lemma_sa_coloring(u, u.input_simplex(), SaLemmaMode::case_b(u.input_face(IdSet{1, 2, 3})));
  EXPECT_EQ(census_fully_colored(u, b.coloring, b.chi).count, 0u);
}

TEST(WsbLemma, NoMonochromaticFacet) {
  for (int n : {3, 4}) {
    Universe u(n);
    const Coloring c = lemma_wsb_coloring(u, u.input_simplex());
    const Complex chi = chi_simplex(u, u.input_simplex());
    EXPECT_EQ(census_monochromatic(c, chi).count, 0u) << n;
  }
}

TEST(WsbLemma, OneZeroEdgeOnTheFaceOppositeZero) {
  Universe u(3);
  const Coloring c = lemma_wsb_coloring(u, u.input_simplex());
  const Complex face = chi_simplex(u, u.input_face(IdSet{1, 2}));
  std::size_t zero_edges = 0;
  for (const Simplex& f : face.facets()) zero_edges += c.decisions(f) == DecisionSet{0};
  EXPECT_EQ(zero_edges, 1u);
}

TEST(SetAgreementTheorem, InteriorAndBoundaryFacets) {
  auto tower = tower_for(3);
  Universe& u = tower->universe();
  const Simplex center = central_simplex(u, tower->level(1));
  const LocalSolution a = theorem_sa_local_solution(*tower, 1, center);
  EXPECT_FALSE(a.chosen.has_value());
  EXPECT_TRUE(a.report.all_green(TaskKind::SetAgreement));

  // A facet has a boundary edge iff its last concurrency class is a single process.
  std::size_t with_boundary_edge = 0;
  for (const Simplex& tau : tower->level(1).facets()) {
    std::size_t partial = 0;
    for (VertexId v : tau) partial += u.carrier(v) != full_id_set(3);
    const LocalSolution b = theorem_sa_local_solution(*tower, 1, tau);
    EXPECT_EQ(b.chosen.has_value(), partial == 2);
    if (b.chosen) {
      EXPECT_NE(u.carrier(*b.chosen), full_id_set(3));
    }
    with_boundary_edge += b.chosen.has_value();
    EXPECT_EQ(b.report.census_global % 2, 1u);
  }
  EXPECT_EQ(with_boundary_edge, 9u);
}

TEST(SetAgreementTheorem, EveryFacetIsGreen) {
  auto tower = tower_for(3);
  std::size_t green = 0;
  for (const Simplex& tau : tower->level(1).facets())
    green += theorem_sa_local_solution(*tower, 1, tau).report.all_green(TaskKind::SetAgreement);
  EXPECT_EQ(green, 13u);
}

TEST(WsbTheorem, EveryFacetIsGreen) {
  auto tower = tower_for(3);
  for (const Simplex& tau : tower->level(1).facets()) {
    const LocalSolution b = theorem_wsb_local_solution(*tower, 1, tau);
    EXPECT_TRUE(b.report.all_green(TaskKind::WeakSymmetryBreaking));
    EXPECT_GE(b.report.census_global, 1u);
  }
}

TEST(Theorems, FourProcessesSample) {
  auto tower = tower_for(4);
  const auto& facets = tower->level(1).facets();
  for (std::size_t i = 0; i < facets.size(); i += 7) {
    EXPECT_EQ(theorem_sa_local_solution(*tower, 1, facets[i]).report.census_within, 0u);
    EXPECT_EQ(theorem_wsb_local_solution(*tower, 1, facets[i]).report.census_within, 0u);
  }
}

TEST(Theorems, NonFacetInputIsEmbedded) {
  auto tower = tower_for(3);
  Universe& u = tower->universe();
  const Simplex vertex{u.parse_key("v(0|{v(0),v(1),v(2)})")};
  const LocalSolution s = theorem_sa_local_solution(*tower, 1, vertex);
  ASSERT_TRUE(s.embedded_from.has_value());
  EXPECT_EQ(*s.embedded_from, vertex);
  EXPECT_TRUE(vertex.subset_of(s.tau));
}

TEST(Theorems, TwoProcessesUnsupported) {
  auto tower = tower_for(2);
  try {
    theorem_sa_local_solution(*tower, 1, tower->level(1).facets().front());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedN);
  }
}

TEST(Consensus, BivalentEdgeAndNoLocalSolution) {
  Universe u(2);
  const auto path = consensus_path(u, u.input_simplex());
  ASSERT_EQ(path.size(), 4u);
  EXPECT_EQ(u.key(path[0]), "v(0|{v(0)})");
  EXPECT_EQ(u.key(path[3]), "v(1|{v(1)})");

  std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{0}},
                                          {path[1].index, DecisionSet{0}},
                                          {path[2].index, DecisionSet{1}},
                                          {path[3].index, DecisionSet{1}}};
  const Simplex edge = consensus_find_bivalent_edge(u, val);
  EXPECT_EQ(edge, (Simplex{path[1], path[2]}));

  const ConsensusProof p = consensus_prove_locally_unsolvable(u, edge, DecisionSet{1}, DecisionSet{0});
  EXPECT_EQ(p.candidates.size(), 16u);
  EXPECT_EQ(p.survivors, 0u);
  EXPECT_EQ(p.without_completeness, 0u);
  EXPECT_EQ(p.without_agreement, 4u);
  EXPECT_EQ(p.without_consistency, 0u);
  EXPECT_EQ(p.agreement_only, 2u);
}

TEST(Consensus, FirstEdgeCanBeBivalent) {
  Universe u(2);
  const auto path = consensus_path(u, u.input_simplex());
  std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{0}},
                                          {path[1].index, DecisionSet{1}},
                                          {path[2].index, DecisionSet{1}},
                                          {path[3].index, DecisionSet{1}}};
  EXPECT_EQ(consensus_find_bivalent_edge(u, val), (Simplex{path[0], path[1]}));
}

TEST(Consensus, ForcedCornersAreChecked) {
  Universe u(2);
  const auto path = consensus_path(u, u.input_simplex());
  std::map<std::uint32_t, DecisionSet> val{{path[0].index, DecisionSet{1}},
                                          {path[1].index, DecisionSet{1}},
                                          {path[2].index, DecisionSet{1}},
                                          {path[3].index, DecisionSet{1}}};
  try {
    consensus_find_bivalent_edge(u, val);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForcedValencyViolated);
  }
  val[path[0].index] = DecisionSet{0, 1};
  EXPECT_THROW(consensus_find_bivalent_edge(u, val), Error);
}
