#include <doctest.h>

#include <string>
#include <vector>

#include "ecgen/errors.hpp"
#include "ecgen/index.hpp"

using namespace ecgen;

namespace {

const char* kHeader =
    "ecg_id,age,sex,height,weight,scp_codes,baseline_drift,static_noise,strat_fold\n";

}  // namespace

TEST_SUITE("index") {
  TEST_CASE("csv rows split with RFC-4180 quoting") {
    CHECK(index::split_csv_row("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(index::split_csv_row("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
    CHECK(index::split_csv_row("a,\"he said \"\"hi\"\"\",c") ==
          std::vector<std::string>{"a", "he said \"hi\"", "c"});
    CHECK(index::split_csv_row("a,,c") == std::vector<std::string>{"a", "", "c"});
    CHECK(index::split_csv_row("") == std::vector<std::string>{""});
  }

  TEST_CASE("scp code dict parses preserving order") {
    const auto codes = index::parse_scp_codes("{'NORM': 100.0, 'SR': 0.0}");
    REQUIRE(codes.size() == 2);
    CHECK(codes[0].first == "NORM");
    CHECK(codes[0].second == 100.0);
    CHECK(codes[1].first == "SR");
    CHECK(codes[1].second == 0.0);
    CHECK(index::parse_scp_codes("{}").empty());
    CHECK(index::parse_scp_codes("{\"IMI\": 80.0}")[0].first == "IMI");
    CHECK_THROWS_AS(index::parse_scp_codes("NORM: 100"), Error);
    CHECK_THROWS_AS(index::parse_scp_codes("{'NORM' 100}"), Error);
  }

  TEST_CASE("quality grade is the leading integer, else 2 for prose, 0 for empty") {
    CHECK(index::parse_quality_grade("") == 0);
    CHECK(index::parse_quality_grade("0") == 0);
    CHECK(index::parse_quality_grade("1") == 1);
    CHECK(index::parse_quality_grade("3, alles") == 3);
    CHECK(index::parse_quality_grade("12") == 12);
    CHECK(index::parse_quality_grade("Elektrodenprobleme") == 2);
  }

  TEST_CASE("sex field accepts numeric and letter encodings") {
    CHECK(index::parse_sex("0") == index::Sex::male);
    CHECK(index::parse_sex("male") == index::Sex::male);
    CHECK(index::parse_sex("M") == index::Sex::male);
    CHECK(index::parse_sex("1") == index::Sex::female);
    CHECK(index::parse_sex("female") == index::Sex::female);
    CHECK(index::parse_sex("F") == index::Sex::female);
    CHECK(index::parse_sex("") == index::Sex::unknown);
    CHECK(index::parse_sex("2") == index::Sex::unknown);
  }

  TEST_CASE("superclass mapping covers the five classes in fixed emission order") {
    using pairs = std::vector<std::pair<std::string, double>>;
    CHECK(index::superclasses_for(pairs{{"NORM", 100.0}}) ==
          std::vector<std::string>{"NORM"});
    CHECK(index::superclasses_for(pairs{{"IMI", 80.0}}) == std::vector<std::string>{"MI"});
    CHECK(index::superclasses_for(pairs{{"NDT", 100.0}}) == std::vector<std::string>{"STTC"});
    CHECK(index::superclasses_for(pairs{{"CLBBB", 100.0}}) == std::vector<std::string>{"CD"});
    CHECK(index::superclasses_for(pairs{{"LVH", 50.0}}) == std::vector<std::string>{"HYP"});
    // Unknown codes map to nothing; likelihoods are ignored.
    CHECK(index::superclasses_for(pairs{{"SR", 0.0}}).empty());
    CHECK(index::superclasses_for(pairs{{"LVH", 0.0}}) == std::vector<std::string>{"HYP"});
    // Emission order is NORM, MI, STTC, CD, HYP regardless of input order.
    CHECK(index::superclasses_for(pairs{{"LVH", 1.0}, {"IMI", 1.0}, {"NORM", 1.0}}) ==
          std::vector<std::string>{"NORM", "MI", "HYP"});
    // Duplicates within a superclass collapse.
    CHECK(index::superclasses_for(pairs{{"IMI", 1.0}, {"AMI", 1.0}}) ==
          std::vector<std::string>{"MI"});
  }

  TEST_CASE("load_index parses rows and tallies superclasses") {
    const std::string csv = std::string(kHeader) +
                            "1,56.0,1,165,63,\"{'NORM': 100.0, 'SR': 0.0}\",,,3\n"
                            "2,19.0,0,,70,\"{'IMI': 80.0}\",\", I-V1,\",\"1, leicht\",8\n";
    const index::DatasetIndex idx = index::load_index(csv);
    REQUIRE(idx.records.size() == 2);
    CHECK(idx.skipped_rows == 0);
    const index::RecordMeta& r1 = idx.records[0];
    CHECK(r1.record_id == "1");
    CHECK(r1.age == doctest::Approx(56.0));
    CHECK(r1.sex == index::Sex::female);
    CHECK(r1.height == doctest::Approx(165.0));
    CHECK(r1.weight == doctest::Approx(63.0));
    CHECK(r1.superclasses == std::vector<std::string>{"NORM"});
    CHECK(r1.baseline_drift_level == 0);
    CHECK(r1.static_noise_level == 0);
    CHECK(r1.strat_fold == 3);
    const index::RecordMeta& r2 = idx.records[1];
    CHECK(!r2.height.has_value());
    CHECK(r2.baseline_drift_level == 2);  // non-numeric prose grades as 2
    CHECK(r2.static_noise_level == 1);
    CHECK(idx.superclass_counts.at("NORM") == 1);
    CHECK(idx.superclass_counts.at("MI") == 1);
  }

  TEST_CASE("bad rows are skipped and counted, not fatal") {
    const std::string csv = std::string(kHeader) +
                            "1,56,1,165,63,\"{'NORM': 100.0}\",,,1\n"
                            "2,56,1,165,63,not-a-dict,,,1\n"       // bad scp
                            "3,56,1,165,63,\"{'NORM': 100.0}\",,\n"  // wrong field count
                            "1,56,1,165,63,\"{'NORM': 100.0}\",,,2\n"  // duplicate id
                            "4,56,1,165,63,\"{'NORM': 100.0}\",,,11\n"  // fold out of range
                            "5,56,1,165,63,\"{'NORM': 100.0}\",,,2\n";
    const index::DatasetIndex idx = index::load_index(csv);
    CHECK(idx.records.size() == 2);
    CHECK(idx.skipped_rows == 4);
    CHECK(idx.records[0].record_id == "1");
    CHECK(idx.records[1].record_id == "5");
  }

  TEST_CASE("a missing required column is fatal") {
    try {
      index::load_index("ecg_id,age,sex\n1,56,1\n");
      FAIL("expected MissingColumn");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::missing_column);
    }
  }

  TEST_CASE("custom column names and the optional filename column") {
    index::ColumnNames columns;
    columns.record_id = "id";
    columns.filename = "filename_hr";
    const std::string csv =
        "id,age,sex,height,weight,scp_codes,baseline_drift,static_noise,strat_fold,filename_hr\n"
        "7,56,1,165,63,\"{'NORM': 100.0}\",,,9,records500/00000/00007_hr\n";
    const index::DatasetIndex idx = index::load_index(csv, columns);
    REQUIRE(idx.records.size() == 1);
    CHECK(idx.records[0].record_id == "7");
    CHECK(idx.records[0].file_stem == "records500/00000/00007_hr");
  }

  TEST_CASE("quality filter accepts grade <= 1 on both axes") {
    index::RecordMeta meta;
    CHECK(index::quality_filter(meta));
    meta.baseline_drift_level = 1;
    meta.static_noise_level = 1;
    CHECK(index::quality_filter(meta));
    meta.static_noise_level = 2;
    CHECK(!index::quality_filter(meta));
    meta.static_noise_level = 0;
    meta.baseline_drift_level = 3;
    CHECK(!index::quality_filter(meta));
  }

  TEST_CASE("folds map to splits: 1-7 train, 8 val, 9-10 test") {
    for (int fold = 1; fold <= 7; ++fold) CHECK(index::assign_split(fold) == index::Split::train);
    CHECK(index::assign_split(8) == index::Split::val);
    CHECK(index::assign_split(9) == index::Split::test);
    CHECK(index::assign_split(10) == index::Split::test);
    CHECK_THROWS_AS(index::assign_split(0), Error);
    CHECK_THROWS_AS(index::assign_split(11), Error);
  }

  TEST_CASE("diagnostic distribution reports all five superclasses with percentages") {
    const std::string csv = std::string(kHeader) +
                            "1,56,1,165,63,\"{'NORM': 100.0}\",,,1\n"
                            "2,56,1,165,63,\"{'NORM': 100.0}\",,,1\n"
                            "3,56,1,165,63,\"{'IMI': 80.0}\",,,1\n"
                            "4,56,1,165,63,\"{'IMI': 80.0, 'LVH': 20.0}\",,,1\n";
    const auto dist = index::diagnostic_distribution(index::load_index(csv));
    CHECK(dist.size() == 5);
    CHECK(dist.at("NORM").count == 2);
    CHECK(dist.at("NORM").percentage == doctest::Approx(50.0));
    CHECK(dist.at("MI").count == 2);
    CHECK(dist.at("HYP").count == 1);
    CHECK(dist.at("HYP").percentage == doctest::Approx(25.0));
    CHECK(dist.at("STTC").count == 0);
    CHECK(dist.at("CD").count == 0);
  }
}
