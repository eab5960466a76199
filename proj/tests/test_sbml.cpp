#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace pathnorm;
using namespace pathnorm::testing;

namespace {

std::string model(const std::string& species, const std::string& reactions, const std::string& extra = "") {
  return R"(<?xml version="1.0" encoding="UTF-8"?>
<sbml xmlns="http://www.sbml.org/sbml/level2/version4" level="2" version="4">
  <model id="m">
    <listOfCompartments><compartment id="cell"/></listOfCompartments>
    <listOfSpecies>)" +
         species + R"(</listOfSpecies>
    )" + (reactions.empty() ? "" : "<listOfReactions>" + reactions + "</listOfReactions>") +
         extra + R"(
  </model>
</sbml>)";
}

const std::string kAB = R"(<species id="A" name="alpha" compartment="cell"/><species id="B" compartment="cell"/>)";

}  // namespace

TEST(ParseSbml, MinimalModel) {
  auto md = parse_sbml(model(kAB, R"(<reaction id="r1"><listOfReactants><speciesReference species="A"/></listOfReactants>
      <listOfProducts><speciesReference species="B"/></listOfProducts></reaction>)"));
  EXPECT_EQ(md.model_id, "m");
  ASSERT_EQ(md.species.size(), 2u);
  EXPECT_EQ(md.species[0].name, "alpha");
  EXPECT_EQ(md.species[0].compartment, "cell");
  EXPECT_EQ(md.compartments, std::vector<std::string>{"cell"});
  ASSERT_EQ(md.reactions.size(), 1u);
  EXPECT_TRUE(md.reactions[0].reversible);  // level 2 default
  EXPECT_EQ(md.reactions[0].reactants[0].stoichiometry, (Rational{1, 1}));
  EXPECT_FALSE(md.has_rules);
  EXPECT_FALSE(md.has_events);
}

TEST(ParseSbml, RulesOnlyModel) {
  auto md = parse_sbml(read_file(data_path("corpus/04_rules_only.xml")));
  EXPECT_TRUE(md.has_rules);
  EXPECT_TRUE(md.reactions.empty());
  auto v = to_pathway(md);
  ASSERT_TRUE(std::holds_alternative<Unusable>(v));
  EXPECT_EQ(std::get<Unusable>(v).reason, UnusableReason::RulesOnly);
}

TEST(ParseSbml, FractionalStoichiometryIsKeptExactly) {
  auto md = parse_sbml(read_file(data_path("corpus/05_fractional.xml")));
  EXPECT_EQ(md.reactions[0].reactants[0].stoichiometry, (Rational{1, 2}));
  auto v = to_pathway(md);
  ASSERT_TRUE(std::holds_alternative<Excluded>(v));
  EXPECT_EQ(verdict_reason(v), "fractional-stoichiometry");
}

TEST(ParseSbml, EventsAndModifiers) {
  auto md = parse_sbml(model(kAB, R"(<reaction id="r1" reversible="false">
      <listOfReactants><speciesReference species="A"/></listOfReactants>
      <listOfProducts><speciesReference species="B"/></listOfProducts>
      <listOfModifiers><modifierSpeciesReference species="B"/></listOfModifiers></reaction>)",
                             "<listOfEvents><event id=\"e\"/></listOfEvents>"));
  EXPECT_TRUE(md.has_events);
  EXPECT_FALSE(md.reactions[0].reversible);
  EXPECT_EQ(md.reactions[0].modifiers, std::vector<std::string>{"B"});
  auto v = to_pathway(md);
  const auto& u = std::get<Usable>(v);
  EXPECT_EQ(reaction_texts(u.pathway)[0], "r1: A -> B");
  EXPECT_EQ(u.modifiers.at("r1"), std::vector<std::string>{"B"});
}

TEST(ParseSbml, Errors) {
  EXPECT_THROW(parse_sbml("<sbml><model>"), ParseError);
  EXPECT_THROW(parse_sbml("<notsbml/>"), ParseError);
  EXPECT_THROW(parse_sbml(model("<species compartment=\"cell\"/>", "")), ParseError);
  EXPECT_THROW(parse_sbml(model(kAB, "<reaction><listOfReactants/></reaction>")), ParseError);
  EXPECT_THROW(parse_sbml(read_file(data_path("broken/undeclared.xml"))), ParseError);
  EXPECT_THROW(parse_sbml(model(kAB, R"(<reaction id="r"><listOfReactants>
      <speciesReference species="A" stoichiometry="0"/></listOfReactants></reaction>)")),
               ParseError);
  EXPECT_THROW(parse_sbml(model(kAB, R"(<reaction id="r"><listOfReactants>
      <speciesReference species="A" stoichiometry="two"/></listOfReactants></reaction>)")),
               ParseError);
}

TEST(ParseSbml, UnknownElementsAreSkipped) {
  auto md = parse_sbml(model(kAB + "<annotation><foo/></annotation>",
                             R"(<reaction id="r1"><notes><p>hi</p></notes><listOfProducts>
                                <speciesReference species="B"/></listOfProducts></reaction>)",
                             "<listOfUnitDefinitions/><listOfRules/>"));
  EXPECT_EQ(md.reactions.size(), 1u);
  EXPECT_FALSE(md.has_rules);  // an empty list holds no rule
}

TEST(Rational, Parsing) {
  EXPECT_EQ(Rational::parse("2"), (Rational{2, 1}));
  EXPECT_EQ(Rational::parse("2.0"), (Rational{2, 1}));
  EXPECT_EQ(Rational::parse("0.5"), (Rational{1, 2}));
  EXPECT_EQ(Rational::parse(" 1e1 "), (Rational{10, 1}));
  EXPECT_EQ(Rational::parse("25E-2"), (Rational{1, 4}));
  EXPECT_FALSE(Rational::parse("abc"));
  EXPECT_FALSE(Rational::parse("1.2.3"));
  EXPECT_FALSE(Rational::parse(""));
}

TEST(ToPathway, IntegerStoichiometryExpands) {
  auto v = ingest_file(data_path("corpus/09_dimer.xml"));
  const auto& pw = std::get<Usable>(v).pathway;
  EXPECT_EQ(reaction_texts(pw), (std::vector<std::string>{"dim: A, A -> A2", "undim: A2 -> A, A"}));
}

TEST(ToPathway, ReversibleReactionsAreForwardOnly) {
  auto v = ingest_file(data_path("corpus/09_dimer.xml"));
  EXPECT_EQ(std::get<Usable>(v).pathway.reactions().size(), 2u);
}

TEST(ToPathway, NoReactionsIsUnusable) {
  auto v = ingest_file(data_path("corpus/10_species_only.xml"));
  ASSERT_TRUE(std::holds_alternative<Unusable>(v));
  EXPECT_EQ(std::get<Unusable>(v).reason, UnusableReason::NoReactions);
  EXPECT_EQ(verdict_name(v), "unusable");
}

TEST(ToPathway, FreshSpeciesGiveEveryOccurrenceItsOwnDummy) {
  auto shared = ingest_file(data_path("shared_none.xml"));
  auto fresh = ingest_file(data_path("shared_none.xml"), IngestOptions{{"none"}});
  const auto& pw = std::get<Usable>(fresh).pathway;
  EXPECT_EQ(reaction_texts(pw)[0], "s1: none.1 -> A");
  EXPECT_EQ(reaction_texts(pw)[3], "d2: B -> none.4");
  EXPECT_FALSE(pw.species().find("none"));
  auto d = pw.species().at(id_of(pw, "none.2"));
  EXPECT_EQ(std::get<DummyOf>(d.provenance).origin, DummyOrigin::Freshened);

  auto blob = normalize(std::get<Usable>(shared).pathway, NormalizationOptions{});
  auto split = normalize(pw, NormalizationOptions{});
  ASSERT_EQ(blob.status, OutcomeStatus::NormalForm);
  ASSERT_EQ(split.status, OutcomeStatus::NormalForm);
  EXPECT_EQ(component_count(blob.pathway, blob.partition), 1u);
  EXPECT_EQ(component_count(split.pathway, split.partition), 2u);
}

TEST(ToPathway, FreshSpeciesMatchesDisplayNames) {
  auto v = to_pathway(parse_sbml(model(R"(<species id="s0" name="source"/><species id="A"/>)",
                                       R"(<reaction id="r"><listOfReactants><speciesReference species="s0"/>
                                          </listOfReactants><listOfProducts><speciesReference species="A"/>
                                          </listOfProducts></reaction>)")),
                      IngestOptions{{"source"}});
  EXPECT_EQ(reaction_texts(std::get<Usable>(v).pathway)[0], "r: s0.1 -> A");
}

TEST(ToPathway, SbmlAndCsvFixturesAgree) {
  auto sbml = std::get<Usable>(ingest_file(data_path("model82.xml"))).pathway;
  EXPECT_EQ(write_csv(sbml), write_csv(model82()));
}

TEST(ToPathway, VerdictsAreExclusiveOverTheCorpus) {
  std::map<std::string, std::string> expected{
      {"01_gprotein.csv", "usable"},   {"02_synthesis.csv", "usable"}, {"03_partial_degradation.csv", "usable"},
      {"04_rules_only.xml", "unusable"}, {"05_fractional.xml", "excluded"}, {"06_model82.xml", "usable"},
      {"07_shared_none.xml", "usable"}, {"08_cascade.xml", "usable"},   {"09_dimer.xml", "usable"},
      {"10_species_only.xml", "unusable"}};
  for (const auto& [file, verdict] : expected) {
    EXPECT_EQ(verdict_name(ingest_file(data_path("corpus/" + file))), verdict) << file;
  }
}
