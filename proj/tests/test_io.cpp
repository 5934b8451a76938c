#include <doctest.h>

#include <filesystem>

#include "reference_run.hpp"
#include "fixtures.hpp"
#include "srd/core.hpp"
#include "srd/crossval.hpp"
#include "srd/error.hpp"
#include "srd/io.hpp"

namespace fs = std::filesystem;

TEST_CASE("parse_table basics") {
  const auto t = srd::parse_table(";A;B\nx;1;2.5\n\"y\";-3; 4e1 \n", ';', true);
  CHECK(t.rows() == 2);
  CHECK(t.col_labels() == std::vector<std::string>{"A", "B"});
  CHECK(t.row_labels() == std::vector<std::string>{"x", "y"});
  CHECK(t.at(1, 1) == 40);
  CHECK(t.reference() == 1u);

  const auto plain = srd::parse_table("A,B\n1,2\n3,4\n", ',', false);
  CHECK(plain.row_labels() == std::vector<std::string>{"1", "2"});
  CHECK(plain.at(1, 0) == 3);

  const auto crlf = srd::parse_table(";A\r\nx;1\r\n", ';', true);
  CHECK(crlf.at(0, 0) == 1);

  const auto quoted = srd::parse_table(",\"a,b\",c\nr,1,2\n", ',', true);
  CHECK(quoted.col_labels().front() == "a,b");
}

TEST_CASE("parse_table errors name the location") {
  CHECK_THROWS_WITH_AS(srd::parse_table(";A;B\nx;1\n", ';', true, "f.csv"),
                       doctest::Contains("f.csv"), srd::Error);
  CHECK_THROWS_WITH_AS(srd::parse_table(";A;B\nx;1;oops\n", ';', true),
                       doctest::Contains("oops"), srd::Error);
  CHECK_THROWS_WITH_AS(srd::parse_table(";A;B\nrow7;1;NA\n", ';', true),
                       doctest::Contains("row7"), srd::Error);
  CHECK_THROWS_AS(srd::parse_table("", ';', true), srd::Error);
  CHECK_THROWS_AS(srd::parse_table(";A\n", ';', true), srd::Error);
  CHECK_THROWS_AS(srd::parse_table(";A\nx;1\n", '.', true), srd::Error);
  CHECK_THROWS_AS(srd::parse_table(";A\nx;1,5\n", ';', true), srd::Error);
  CHECK_THROWS_WITH_AS(srd::read_table({"/nonexistent/table.csv"}), doctest::Contains("/nonexistent/table.csv"),
                       srd::Error);
}

TEST_CASE("fixtures load") {
  const auto b = fixtures::bundesliga();
  CHECK(b.rows() == 18);
  CHECK(b.cols() == 8);
  CHECK(b.col_labels().back() == "pts");
  const auto m = fixtures::mep();
  CHECK(m.rows() == 16);
  CHECK(m.cols() == 9);
  CHECK(m.col_labels().back() == "Rego");
}

TEST_CASE("number formatting") {
  CHECK(srd::format_number(4) == "4");
  CHECK(srd::format_number(-2) == "-2");
  CHECK(srd::format_number(2.5) == "2.5");
  CHECK(srd::format_number(13.0 / 3) == "4.333333333333333");
}

TEST_CASE("table round trip") {
  const auto t = fixtures::srd_input_mixed();
  const auto text = srd::format_table(t);
  const auto back = srd::parse_table(text, ';', true);
  CHECK(back == t);
}

TEST_CASE("report layouts") {
  const auto t = fixtures::srd_input_mixed();
  CHECK(srd::format_srd_result(srd::srd_values(t), false) == ",A,B,C\nSRD_raw,4,2,5\n");
  CHECK(srd::format_srd_result(srd::srd_values(t)) == ",A,B,C\nSRD,0.5000000,0.2500000,0.6250000\n");
  CHECK(srd::format_detailed(srd::detailed_srd(t)) ==
        ",A,A_Rank,A_Dist,B,B_Rank,B_Dist,C,C_Rank,C_Dist,refCol,refCol_Rank\n"
        "1,2,1,2,5,2,1,6,4,1,6,3\n"
        "2,5,2,1,1,1,0,3,2.5,1.5,1,1\n"
        "3,7,3,1,6,3,1,2,1,1,5,2\n"
        "4,8,4,0,10,4,0,3,2.5,1.5,7,4\n"
        "SRD,-,-,4,-,-,2,-,-,5,-,-\n");
  CHECK(srd::format_rank_matrix(srd::rank_matrix(t)) ==
        ",A,B,C\n1,1,2,4\n2,2,1,2.5\n3,3,3,1\n4,4,4,2.5\n");
}

TEST_CASE("distribution report") {
  const auto d = srd::exact_distribution(3);
  const auto text = srd::format_distribution(d);
  CHECK(text.rfind("SRD_value,relative_frequency\n0.0000000,0.166666667\n", 0) == 0);
  CHECK(text.find("xx1,0.0000000\n") != std::string::npos);
  CHECK(text.find("exact,true\n") != std::string::npos);
  CHECK(text.find("n_objects,3\n") != std::string::npos);
}

TEST_CASE("crossval report and replay round trip") {
  const auto table = fixtures::bundesliga();
  const auto report = srd::cross_validate(table, srd::PairTest::Wilcoxon, std::nullopt, 17);
  const auto replay = srd::parse_fold_replay(srd::format_fold_replay(report));
  CHECK(replay.test == report.test);
  CHECK(replay.scheme == report.scheme);
  CHECK(srd::cross_validate(table, replay.scheme, replay.test) == report);

  const auto text = srd::format_crossval_report(report);
  CHECK(text.rfind("new_column_order_based_on_folds\n", 0) == 0);
  for (const char* block : {"test_statistics", "statistical_significance", "SRD_values_of_different_folds",
                            "boxplot_values"}) {
    CHECK(text.find(block) != std::string::npos);
  }
}

TEST_CASE("recorded Wilcoxon fold file") {
  const auto replay = srd::read_fold_replay(fixtures::data_path("bundesliga_wilcoxon_folds.csv"));
  CHECK(replay.test == srd::PairTest::Wilcoxon);
  CHECK(replay.scheme.k == 8);
  CHECK_FALSE(replay.scheme.seed.has_value());
  const auto report = srd::cross_validate(fixtures::bundesliga(), replay.scheme, replay.test);
  for (std::size_t f = 0; f < 8; ++f) {
    for (std::size_t s = 0; s < 7; ++s) {
      CHECK(report.fold_srd[f][s] == doctest::Approx(fixtures::kReferenceRunFolds[f][s]).epsilon(1e-7));
    }
  }
  const auto text = srd::format_crossval_report(report);
  CHECK(text.find("3,1,4,5,6,2,7\n\ntest_statistics\n4,29,36,6,34,36\n") != std::string::npos);
  CHECK(text.find("n.s.,(p<0.1),(p<0.05*),n.s.,(p<0.05*),(p<0.05*)") != std::string::npos);
}

TEST_CASE("fold replay errors") {
  CHECK_THROWS_AS(srd::parse_fold_replay("test,wilcoxon\n"), srd::Error);
  CHECK_THROWS_AS(srd::parse_fold_replay("test,wilcoxon\nscheme,subsample\nfolds,2\nfold_1,1,2\n"),
                  srd::Error);
  CHECK_THROWS_AS(srd::parse_fold_replay("test,wilcoxon\nscheme,subsample\nfolds,1\nfold_1,0,2\n"),
                  srd::Error);
  CHECK_THROWS_AS(srd::parse_fold_replay("bogus,1\n"), srd::Error);
}

TEST_CASE("file writing") {
  const auto dir = fs::temp_directory_path() / "srd_io_test";
  fs::create_directories(dir);
  const auto path = dir / "values.csv";
  srd::write_report(srd::srd_values(fixtures::srd_input_mixed()), path);
  CHECK(srd::read_text_file(path) == ",A,B,C\nSRD,0.5000000,0.2500000,0.6250000\n");
  CHECK_THROWS_WITH_AS(srd::write_text_file(dir / "missing" / "x.csv", "x"), doctest::Contains("missing"),
                       srd::Error);
  fs::remove_all(dir);
}

TEST_CASE("labels with the delimiter are quoted") {
  const srd::DataTable t({"r,1", "r2"}, {"a,b", "ref"}, {{1, 2}, {2, 1}}, 1);
  const auto text = srd::format_srd_result(srd::srd_values(t));
  CHECK(text.rfind(",\"a,b\"\n", 0) == 0);
  CHECK(srd::parse_table(srd::format_table(t, ','), ',', true) == t);
}
