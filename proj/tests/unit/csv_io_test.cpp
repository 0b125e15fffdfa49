#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "qdoa/csv_io.hpp"

namespace qdoa {
namespace {

SweepResult sample_result() {
  SweepResult r;
  r.rows.push_back({-10.0, BitDepth(2), "root_music", 0.0123456789012345, 0.01, 0.512, 500, 3});
  r.rows.push_back({-10.0, BitDepth::infinite(), "esprit", 1.0 / 3.0, 2e-7, 0.0, 500, 0});
  r.rows.push_back({5.5, BitDepth(10), "analytic", std::numeric_limits<double>::quiet_NaN(),
                    0.000123, 17.68307679328075, 0, 0});
  return r;
}

TEST(SweepCsv, HeaderOnlyForEmptyResult) {
  EXPECT_EQ(sweep_to_csv({}), "sweep_var,b,estimator,rmse_deg,crlb_sqrt_deg,eta_db,trials,failures\n");
  EXPECT_EQ(parse_sweep_csv(sweep_to_csv({})), SweepResult{});
}

TEST(SweepCsv, RoundTripIsExact) {
  const auto r = sample_result();
  EXPECT_EQ(parse_sweep_csv(sweep_to_csv(r)), r);
  ExperimentConfig c;
  EXPECT_EQ(parse_sweep_csv(sweep_to_csv(r, &c)), r);
}

TEST(SweepCsv, LayoutAndLineEndings) {
  ExperimentConfig c;
  c.output = "somewhere.csv";
  const std::string text = sweep_to_csv(sample_result(), &c);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.find("somewhere"), std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# theta_deg=15");
  while (line.starts_with("#")) std::getline(in, line);
  EXPECT_EQ(line, kSweepCsvHeader);
  std::getline(in, line);
  EXPECT_EQ(line, "-10,2,root_music,0.0123456789012345,0.01,0.512,500,3");
  std::getline(in, line);
  EXPECT_EQ(line, "-10,inf,esprit,0.3333333333333333,2e-07,0,500,0");
  std::getline(in, line);
  EXPECT_EQ(line, "5.5,10,analytic,nan,0.000123,17.68307679328075,0,0");
}

TEST(SweepCsv, ConfigEchoParsesBack) {
  ExperimentConfig c;
  c.seed = 77;
  c.bits = {BitDepth(4)};
  std::string cfg;
  std::istringstream in(sweep_to_csv({}, &c));
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with("# ")) cfg += line.substr(2) + "\n";
  }
  ExperimentConfig back = parse_config(cfg);
  back.output = c.output;
  EXPECT_EQ(back, c);
}

TEST(SweepCsv, RejectsMalformedInput) {
  EXPECT_THROW(parse_sweep_csv(""), std::invalid_argument);
  EXPECT_THROW(parse_sweep_csv("a,b,c\n"), std::invalid_argument);
  const std::string h = std::string(kSweepCsvHeader) + "\n";
  EXPECT_THROW(parse_sweep_csv(h + "1,2,root_music,0.1,0.1,0.1,5\n"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_csv(h + "1,2,root_music,0.1,0.1,0.1,5,x\n"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_csv(h + "1,0,root_music,0.1,0.1,0.1,5,0\n"), std::invalid_argument);
}

TEST(WriteTextFile, WritesAndReportsPath) {
  const auto dir = std::filesystem::temp_directory_path() / "qdoa_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  emit_csv(sample_result(), path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(parse_sweep_csv(buf.str()), sample_result());
  std::filesystem::remove_all(dir);

  try {
    write_text_file("/nonexistent/dir/out.csv", "x");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.csv"), std::string::npos);
  }
}

TEST(OtherCsv, SpectrumAndCrlbTableHeaders) {
  const std::string s = spectrum_to_csv({{1.5, 2.0}});
  EXPECT_EQ(s, "theta_deg,pseudospectrum\n1.5,2\n");
  const std::string t = crlb_table_to_csv({});
  EXPECT_EQ(t.substr(0, t.find('\n')),
            "snr_db,b,effective_snr,fim_closed_form,fim_numeric,crlb_rad2,crlb_exact_rad2,crlb_sqrt_deg,eta_db");
}

}  // namespace
}  // namespace qdoa
