#include <gtest/gtest.h>

#include "pathnorm/matching.hpp"

using namespace pathnorm;

namespace {

struct Built {
  Pathway pw;
  ComponentPartition p;
  const Reaction& r() const { return pw.reactions().front(); }
};

Built one(const std::vector<std::string>& reactants, const std::vector<std::string>& products) {
  Built b;
  b.pw.add_reaction("r", reactants, products);
  b.p = singleton_partition(b.pw);
  return b;
}

}  // namespace

TEST(MatchReaction, ComplexFormationHasNoMatches) {
  auto b = one({"Lig", "rcpt"}, {"C1"});
  auto mr = match_reaction(b.r(), b.p);
  EXPECT_EQ(mr.k(), 0u);
  EXPECT_EQ(mr.n(), 2u);
  EXPECT_EQ(mr.m(), 1u);
}

TEST(MatchReaction, IdenticalSpeciesMatch) {
  auto b = one({"A"}, {"A"});
  auto mr = match_reaction(b.r(), b.p);
  EXPECT_EQ(mr.k(), 1u);
  EXPECT_EQ(mr.n(), 0u);
  EXPECT_EQ(mr.m(), 0u);
}

TEST(MatchReaction, TwoAgainstThree) {
  auto b = one({"A", "B"}, {"C", "D", "E"});
  auto mr = match_reaction(b.r(), b.p);
  EXPECT_EQ(mr.n(), 2u);
  EXPECT_EQ(mr.m(), 3u);
}

TEST(MatchReaction, DuplicateReactantsCountSeparately) {
  auto b = one({"A", "A"}, {"A2"});
  auto mr = match_reaction(b.r(), b.p);
  EXPECT_EQ(mr.k(), 0u);
  EXPECT_EQ(mr.n(), 2u);
  EXPECT_EQ(mr.m(), 1u);
}

TEST(MatchReaction, PairsWithinAComponentInInputOrder) {
  auto b = one({"A", "X", "B"}, {"B2", "A2", "Y"});
  auto id = [&](const char* n) { return *b.pw.species().find(n); };
  b.p.merge(id("A"), id("A2"));
  b.p.merge(id("A"), id("B"));
  b.p.merge(id("A"), id("B2"));
  auto mr = match_reaction(b.r(), b.p);
  ASSERT_EQ(mr.k(), 2u);
  // First reactant of the class pairs with the first product of the class.
  EXPECT_EQ(mr.matched[0].reactant.species, id("A"));
  EXPECT_EQ(mr.matched[0].product.species, id("B2"));
  EXPECT_EQ(mr.matched[1].reactant.species, id("B"));
  EXPECT_EQ(mr.matched[1].product.species, id("A2"));
  ASSERT_EQ(mr.n(), 1u);
  EXPECT_EQ(mr.unmatched_reactants[0].species, id("X"));
  ASSERT_EQ(mr.m(), 1u);
  EXPECT_EQ(mr.unmatched_products[0].position, 2u);
}

TEST(MatchReaction, MatchIsMaximumPerComponent) {
  auto b = one({"A", "A", "A", "B"}, {"A", "B", "B"});
  auto mr = match_reaction(b.r(), b.p);
  EXPECT_EQ(mr.k(), 2u);
  EXPECT_EQ(mr.n(), 2u);
  EXPECT_EQ(mr.m(), 1u);
  for (const auto& pair : mr.matched) EXPECT_TRUE(b.p.same(pair.reactant.species, pair.product.species));
}

TEST(Classify, FiveCases) {
  auto split = one({"Lig", "rcpt"}, {"C1"});
  auto st = classify(match_reaction(split.r(), split.p));
  ASSERT_TRUE(std::holds_alternative<status::Split>(st));
  EXPECT_EQ(std::get<status::Split>(st).target, *split.pw.species().find("C1"));
  EXPECT_EQ(std::get<status::Split>(st).counterparts.size(), 2u);

  auto merge = one({"A"}, {"B"});
  EXPECT_TRUE(std::holds_alternative<status::Merge>(classify(match_reaction(merge.r(), merge.p))));

  auto resolved = one({"A"}, {"A"});
  EXPECT_TRUE(std::holds_alternative<status::Resolved>(classify(match_reaction(resolved.r(), resolved.p))));

  auto ambiguous = one({"A", "B"}, {"C", "D", "E"});
  EXPECT_EQ(classify(match_reaction(ambiguous.r(), ambiguous.p)), (ReactionStatus{status::Ambiguous{2, 3}}));
}

TEST(Classify, ErrorNamesTheSideWithUnmatchedSpecies) {
  MatchResult mr;
  mr.unmatched_products = {{0, SpeciesId{0}}, {1, SpeciesId{1}}, {2, SpeciesId{2}}};
  EXPECT_EQ(classify(mr), (ReactionStatus{status::Error{Side::Products, 3}}));
  MatchResult degrade;
  degrade.unmatched_reactants = {{0, SpeciesId{0}}};
  EXPECT_EQ(classify(degrade), (ReactionStatus{status::Error{Side::Reactants, 1}}));
}

TEST(Classify, SplitTargetMayBeAReactant) {
  auto b = one({"AB"}, {"A", "B"});
  auto st = classify(match_reaction(b.r(), b.p));
  ASSERT_TRUE(std::holds_alternative<status::Split>(st));
  EXPECT_EQ(std::get<status::Split>(st).target, *b.pw.species().find("AB"));
  EXPECT_EQ(status_name(st), "Split");
}
