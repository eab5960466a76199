#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"

using namespace pathnorm;
using namespace pathnorm::testing;

TEST(Preprocess, SynthesisGetsADummyReactant) {
  auto pw = preprocess(read_csv("s1;;A"));
  EXPECT_EQ(reaction_texts(pw)[0], "s1: D1 -> A");
  EXPECT_EQ(pw.reactions()[0].origin, ReactionOrigin::Preprocessed);
  auto d = pw.species().at(id_of(pw, "D1"));
  EXPECT_EQ(std::get<DummyOf>(d.provenance).origin, DummyOrigin::Preprocess);
}

TEST(Preprocess, FullReactionsAreUnchanged) {
  auto pw = read_csv("r;A;B");
  auto after = preprocess(pw);
  EXPECT_EQ(after.reactions(), pw.reactions());
}

TEST(Preprocess, DistinctSynthesesKeepComponentsApart) {
  auto pw = preprocess(read_csv("s1;;A\ns2;;B\n"));
  EXPECT_EQ(reaction_texts(pw), (std::vector<std::string>{"s1: D1 -> A", "s2: D2 -> B"}));
  auto out = normalize(pw, NormalizationOptions{});
  ASSERT_EQ(out.status, OutcomeStatus::NormalForm);
  EXPECT_FALSE(out.partition.same(id_of(out.pathway, "A"), id_of(out.pathway, "B")));
}

TEST(Preprocess, DummyNamesAvoidExistingSpecies) {
  auto pw = preprocess(read_csv("r;D1;\ns;;X\n"));
  EXPECT_EQ(reaction_texts(pw), (std::vector<std::string>{"r: D1 -> D2", "s: D3 -> X"}));
}

TEST(Preprocess, SynthesisIsErroneousUntilPreprocessed) {
  auto pw = read_csv("s1;;A");
  auto plain = normalize(pw, NormalizationOptions{});
  EXPECT_EQ(plain.status, OutcomeStatus::Erroneous);
  EXPECT_EQ(plain.erroneous, 1u);
  EXPECT_EQ(normalize(preprocess(pw), NormalizationOptions{}).status, OutcomeStatus::NormalForm);
}

// Generated syntheses and degradations over independent entities: dummies
// are fresh, occur once, never land on a full side, and never join two
// entities.
TEST(Preprocess, GeneratedSynthesesNeverMergeThroughDummies) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> count(1, 12);
    const int entities = count(rng);
    Pathway pw;
    std::size_t empty_sides = 0;
    for (int e = 0; e < entities; ++e) {
      std::string a = "E" + std::to_string(e);
      pw.add_reaction("syn" + std::to_string(e), std::vector<std::string>{}, std::vector<std::string>{a});
      ++empty_sides;
      if (rng() % 2) {
        pw.add_reaction("act" + std::to_string(e), std::vector<std::string>{a}, std::vector<std::string>{a + "p"});
        pw.add_reaction("deg" + std::to_string(e), std::vector<std::string>{a + "p"}, std::vector<std::string>{});
        ++empty_sides;
      }
    }
    auto after = preprocess(pw);
    ASSERT_EQ(after.reactions().size(), pw.reactions().size());
    std::map<SpeciesId, int> occurrences;
    std::size_t dummies = 0;
    for (std::size_t i = 0; i < after.reactions().size(); ++i) {
      const auto& before = pw.reactions()[i];
      const auto& r = after.reactions()[i];
      if (!before.reactants.empty()) {
        EXPECT_EQ(r.reactants, before.reactants);
      }
      if (!before.products.empty()) {
        EXPECT_EQ(r.products, before.products);
      }
      for (auto s : r.reactants) ++occurrences[s];
      for (auto s : r.products) ++occurrences[s];
    }
    for (const auto& [s, n] : occurrences) {
      if (std::holds_alternative<DummyOf>(after.species().at(s).provenance)) {
        ++dummies;
        EXPECT_EQ(n, 1);
      }
    }
    EXPECT_EQ(dummies, empty_sides);
    auto out = normalize(after, NormalizationOptions{});
    ASSERT_EQ(out.status, OutcomeStatus::NormalForm);
    EXPECT_EQ(component_count(out.pathway, out.partition), static_cast<std::size_t>(entities));
  }
}
