#include <gtest/gtest.h>

#include "qdoa/experiment_config.hpp"

namespace qdoa {
namespace {

TEST(ExperimentConfig, DefaultsMatchReferenceScenario) {
  const ExperimentConfig c;
  EXPECT_EQ(c.theta_deg, 15.0);
  EXPECT_EQ(c.M, 128);
  EXPECT_EQ(c.d_in_wavelengths, 0.5);
  EXPECT_EQ(c.N, 32);
  EXPECT_EQ(c.trials, 8000u);
  EXPECT_EQ(c.quantizer_mode, QuantizerMode::true_quantizer);
  EXPECT_EQ(c.position_convention, PositionConvention::offset);
  EXPECT_NO_THROW(c.validate());
}

TEST(ExperimentConfig, RoundTripsThroughTextFormat) {
  ExperimentConfig c;
  c.theta_deg = -12.345678901234567;
  c.M = 17;
  c.d_in_wavelengths = 0.25;
  c.N = 3;
  c.trials = 12345678901ull;
  c.seed = 18446744073709551615ull;
  c.bits = {BitDepth(1), BitDepth(7), BitDepth::infinite()};
  c.snr_grid_db = {-20.0, 0.1, 1.0 / 3.0, 19.5};
  c.estimators = {DoaMethod::esprit};
  c.quantizer_mode = QuantizerMode::aqnm;
  c.position_convention = PositionConvention::symmetric;
  c.output = "/tmp/x.csv";
  EXPECT_EQ(parse_config(format_config(c)), c);
  EXPECT_EQ(parse_config(format_config(ExperimentConfig{})), ExperimentConfig{});
}

TEST(ExperimentConfig, EchoOmitsOutputPath) {
  ExperimentConfig a, b;
  a.output = "one.csv";
  b.output = "two.csv";
  EXPECT_EQ(format_config(a, false), format_config(b, false));
  EXPECT_EQ(format_config(a).find("output="), format_config(a).rfind("output="));
  EXPECT_EQ(format_config(a, false).find("output="), std::string::npos);
}

TEST(ExperimentConfig, ParserSkipsCommentsAndBlankLines) {
  const auto c = parse_config("# a comment\n\n  seed = 99 \r\nbits=inf,4\n");
  EXPECT_EQ(c.seed, 99u);
  ASSERT_EQ(c.bits.size(), 2u);
  EXPECT_EQ(c.bits[0], BitDepth::infinite());
  EXPECT_EQ(c.bits[1], BitDepth(4));
}

TEST(ExperimentConfig, ParserRejectsMalformedInput) {
  EXPECT_THROW(parse_config("nonsense"), ConfigError);
  EXPECT_THROW(parse_config("colour=blue"), ConfigError);
  EXPECT_THROW(parse_config("M=twelve"), ConfigError);
  EXPECT_THROW(parse_config("M=12.5"), ConfigError);
  EXPECT_THROW(parse_config("trials=-1"), ConfigError);
  EXPECT_THROW(parse_config("bits=0"), ConfigError);
  EXPECT_THROW(parse_config("estimators=music"), ConfigError);
  EXPECT_THROW(parse_config("quantizer_mode=magic"), ConfigError);
  EXPECT_THROW(parse_config("position_convention=left"), ConfigError);
}

TEST(ExperimentConfig, ValidateRanges) {
  auto bad = [](auto mutate) {
    ExperimentConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  bad([](ExperimentConfig& c) { c.theta_deg = 90; });
  bad([](ExperimentConfig& c) { c.M = 1; });
  bad([](ExperimentConfig& c) { c.d_in_wavelengths = 0.75; });
  bad([](ExperimentConfig& c) { c.N = 0; });
  bad([](ExperimentConfig& c) { c.trials = 0; });
  bad([](ExperimentConfig& c) { c.bits.clear(); });
  bad([](ExperimentConfig& c) { c.snr_grid_db.clear(); });
  bad([](ExperimentConfig& c) { c.estimators.clear(); });
  bad([](ExperimentConfig& c) { c.bits = {BitDepth(12)}; });
  ExperimentConfig ok;
  ok.bits = {BitDepth(12)};
  ok.quantizer_mode = QuantizerMode::aqnm;
  EXPECT_NO_THROW(ok.validate());
}

TEST(SnrGrid, RangeAndList) {
  EXPECT_EQ(parse_snr_grid("-20:10:20"), (std::vector<double>{-20, -10, 0, 10, 20}));
  EXPECT_EQ(parse_snr_grid("0:3:10"), (std::vector<double>{0, 3, 6, 9}));
  EXPECT_EQ(parse_snr_grid("5"), (std::vector<double>{5}));
  EXPECT_EQ(parse_snr_grid("1.5,-2"), (std::vector<double>{1.5, -2}));
  const auto fine = parse_snr_grid("-20:0.1:20");
  EXPECT_EQ(fine.size(), 401u);
  EXPECT_NEAR(fine.back(), 20.0, 1e-12);
  EXPECT_THROW(parse_snr_grid("0:0:1"), ConfigError);
  EXPECT_THROW(parse_snr_grid("1:1:0"), ConfigError);
  EXPECT_THROW(parse_snr_grid("1:2"), ConfigError);
  EXPECT_THROW(parse_snr_grid(""), ConfigError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 0.005645299, 1e22}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_TRUE(std::isnan(parse_double("nan")));
  EXPECT_THROW(parse_double("1.0x"), std::invalid_argument);
}

TEST(LoadConfig, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/dir/cfg.txt"), IoError);
}

}  // namespace
}  // namespace qdoa
