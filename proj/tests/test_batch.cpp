#include <gtest/gtest.h>

#include <fstream>

#include "support/fixtures.hpp"

using namespace pathnorm;
using namespace pathnorm::testing;

namespace {

const RunRecord& record(const std::vector<RunRecord>& rs, const std::string& id) {
  for (const auto& r : rs) {
    if (r.model_id == id) return r;
  }
  throw std::runtime_error("no record " + id);
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("pathnorm-batch-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(RunCorpus, OneRecordPerFileInNameOrder) {
  auto rs = run_corpus(data_path("corpus"));
  ASSERT_EQ(rs.size(), 10u);
  EXPECT_TRUE(std::is_sorted(rs.begin(), rs.end(),
                             [](const auto& a, const auto& b) { return a.model_id < b.model_id; }));
}

TEST(RunCorpus, GProteinIsOkEverywhere) {
  auto rs = run_corpus(data_path("corpus"));
  const auto& g = record(rs, "01_gprotein.csv");
  for (const auto& o : g.outcomes) {
    ASSERT_TRUE(o);
    EXPECT_EQ(o->kind, RunKind::Ok);
  }
  EXPECT_EQ(g.component_count, 5u);
  EXPECT_EQ(g.species_count, 11u);
  EXPECT_EQ(g.reaction_count, 6u);
}

TEST(RunCorpus, SynthesisNeedsPreprocessing) {
  auto rs = run_corpus(data_path("corpus"));
  const auto& s = record(rs, "02_synthesis.csv");
  EXPECT_EQ(s.outcomes[0]->str(), "Erroneous(1)");
  EXPECT_EQ(s.outcomes[1]->str(), "Ok");
}

TEST(RunCorpus, PartialDegradationNeedsDynamicCorrection) {
  auto rs = run_corpus(data_path("corpus"));
  const auto& s = record(rs, "03_partial_degradation.csv");
  EXPECT_EQ(s.outcomes[1]->str(), "Erroneous(1)");
  EXPECT_EQ(s.outcomes[2]->str(), "Ok");
  EXPECT_EQ(s.component_count, 2u);
}

TEST(RunCorpus, AmbiguousModelCountsQuestions) {
  auto rs = run_corpus(data_path("corpus"));
  const auto& m = record(rs, "06_model82.xml");
  EXPECT_EQ(m.outcomes[2]->str(), "Ambiguous(2)");
  EXPECT_EQ(m.ambiguous_question_count, 2u);
  EXPECT_FALSE(m.component_count);
}

TEST(RunCorpus, CascadeHasSixComponents) {
  auto rs = run_corpus(data_path("corpus"));
  const auto& c = record(rs, "08_cascade.xml");
  EXPECT_EQ(c.species_count, 21u);
  EXPECT_EQ(c.component_count, 6u);
  EXPECT_EQ(c.ambiguous_question_count, 0u);
}

TEST(RunCorpus, NonUsableModelsHaveNoOutcomes) {
  auto rs = run_corpus(data_path("corpus"));
  for (const char* id : {"04_rules_only.xml", "05_fractional.xml", "10_species_only.xml"}) {
    const auto& r = record(rs, id);
    EXPECT_FALSE(r.usable());
    for (const auto& o : r.outcomes) EXPECT_FALSE(o);
  }
}

TEST(RunCorpus, ParseErrorsBecomeRecords) {
  auto rs = run_corpus(data_path("broken"));
  ASSERT_EQ(rs.size(), 2u);
  for (const auto& r : rs) {
    EXPECT_EQ(r.verdict, "parse-error");
    EXPECT_FALSE(r.reason.empty());
  }
  EXPECT_EQ(summarize(rs).parse_errors, 2u);
}

TEST(RunCorpus, IgnoresNonModelFilesAndMissingDirectories) {
  TempDir dir;
  dir.write("README.txt", "not a model");
  dir.write("a.csv", "r;A;B\n");
  EXPECT_EQ(run_corpus(dir.path()).size(), 1u);
  EXPECT_THROW(run_corpus(dir.path() / "missing"), Error);
}

TEST(RunCorpus, FreshSpeciesOptionReachesIngest) {
  BatchOptions opts;
  opts.ingest.fresh_species_names = {"none"};
  auto rs = run_corpus(data_path("corpus"), opts);
  EXPECT_EQ(record(rs, "07_shared_none.xml").component_count, 2u);
  EXPECT_EQ(record(run_corpus(data_path("corpus")), "07_shared_none.xml").component_count, 1u);
}

TEST(RunCorpus, RecordsDoNotDependOnOtherFiles) {
  TempDir dir;
  dir.write("b.csv", read_file(data_path("corpus/03_partial_degradation.csv")));
  auto alone = run_corpus(dir.path());
  dir.write("a.csv", read_file(data_path("corpus/01_gprotein.csv")));
  auto both = run_corpus(dir.path());
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(format_records({alone[0]}), format_records({both[1]}));
}

TEST(Summarize, EmptyInput) {
  auto s = summarize({});
  for (const auto& row : s.rows) EXPECT_EQ(row.total(), 0u);
  EXPECT_EQ(s.mean_species, 0.0);
  EXPECT_EQ(s.completion_rate, 0.0);
}

TEST(Summarize, SingleOkRecord) {
  RunRecord r;
  r.verdict = "usable";
  r.species_count = 4;
  r.reaction_count = 2;
  for (auto& o : r.outcomes) o = RunOutcome{RunKind::Ok, 0, 1};
  auto s = summarize({r});
  for (const auto& row : s.rows) {
    EXPECT_EQ(row.ok, 1u);
    EXPECT_EQ(row.erroneous, 0u);
    EXPECT_EQ(row.ambiguous, 0u);
  }
  EXPECT_DOUBLE_EQ(s.mean_species, 4.0);
  EXPECT_DOUBLE_EQ(s.completion_rate, 1.0);
}

TEST(Summarize, MiniCorpusTable) {
  auto s = summarize(run_corpus(data_path("corpus")));
  EXPECT_EQ(s.models, 10u);
  EXPECT_EQ(s.usable, 7u);
  EXPECT_EQ(s.unusable, 2u);
  EXPECT_EQ(s.excluded, 1u);
  for (const auto& row : s.rows) EXPECT_EQ(row.total(), s.usable) << to_string(row.configuration);
  EXPECT_EQ(s.rows[2].erroneous, 0u);
  EXPECT_EQ(s.rows[0].erroneous, 2u);
  EXPECT_EQ(s.rows[1].erroneous, 1u);
  EXPECT_DOUBLE_EQ(s.mean_questions, 2.0);
  EXPECT_NEAR(s.completion_rate, 6.0 / 7.0, 1e-12);
  auto table = format_table(s);
  EXPECT_NE(table.find("preprocessed+dynamic"), std::string::npos);
  EXPECT_NE(table.find("automatic completion: 85.71%"), std::string::npos) << table;
}

TEST(FormatRecords, OneLinePerModel) {
  auto rs = run_corpus(data_path("corpus"));
  auto text = format_records(rs);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), rs.size() + 1);
  EXPECT_NE(text.find("02_synthesis.csv\tusable\t-\t1\t1\tErroneous(1)\tOk\tOk\t1\t0\n"), std::string::npos) << text;
}
