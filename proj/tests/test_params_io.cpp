#include "roadsv/errors.hpp"
#include "roadsv/params_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace roadsv;

TEST(ApplySetting, KnownKeys) {
    ModelConfig c;
    apply_setting(c, "heston.theta", "0.146");
    apply_setting(c, "shock.enabled", "true");
    apply_setting(c, "forecast.percentile_levels", "5,50,95");
    apply_setting(c, "forecast.start", "2019-01");
    apply_setting(c, "forecast.master_seed", "18446744073709551615");
    EXPECT_EQ(c.heston.cir.theta, 0.146);
    EXPECT_TRUE(c.shock.enabled);
    EXPECT_EQ(c.forecast.percentile_levels, (std::vector<double>{5, 50, 95}));
    EXPECT_EQ(c.forecast.master_seed, 18446744073709551615ULL);
}

TEST(ApplySetting, Rejections) {
    ModelConfig c;
    EXPECT_THROW(apply_setting(c, "heston.sigma", "1"), ArgumentError);
    EXPECT_THROW(apply_setting(c, "heston.mu", "1.83%"), ArgumentError);
    EXPECT_THROW(apply_setting(c, "heston.mu", "abc"), ArgumentError);
    EXPECT_THROW(apply_setting(c, "forecast.n_sims", "2.5"), ArgumentError);
    EXPECT_THROW(apply_setting(c, "shock.enabled", "maybe"), ArgumentError);
    EXPECT_THROW(split_assignment("heston.mu"), ArgumentError);
    EXPECT_EQ(split_assignment(" heston.mu = 0.1 "), (std::pair<std::string, std::string>{"heston.mu", "0.1"}));
}

TEST(Params, RoundTrip) {
    const auto est = estimate_heston_params(bundled_series_2014_2018());
    auto config = make_model_config(est);
    config.shock = GompertzShockConfig::standard();
    config.forecast.horizon_months = 312;
    std::stringstream buf;
    write_params(buf, config, &est);
    const auto text = buf.str();
    EXPECT_NE(text.find("stats.feller_margin"), std::string::npos);
    EXPECT_NE(text.find("seasonal_fit.amplitude = 0.075"), std::string::npos);
    const auto back = read_params(buf);
    EXPECT_EQ(config_entries(back), config_entries(config));
    EXPECT_EQ(back.heston.cir.kappa, config.heston.cir.kappa);
    EXPECT_EQ(back.heston.c1, config.heston.c1);
}

TEST(Params, CommentsAndBaseValues) {
    ModelConfig base;
    base.heston.c1 = 0.001;
    std::istringstream in("# header\n\nheston.mu = 0.0183  # target\nrun.tool = roadsv\n");
    const auto c = read_params(in, base);
    EXPECT_EQ(c.heston.mu, 0.0183);
    EXPECT_EQ(c.heston.c1, 0.001);
}

TEST(Params, Errors) {
    std::istringstream no_eq("heston.mu 0.1\n");
    EXPECT_THROW(read_params(no_eq), ParseError);
    std::istringstream unknown("heston.mu = 0.1\nfoo.bar = 1\n");
    try {
        read_params(unknown);
        FAIL();
    } catch (const ArgumentError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(read_params_file("/nonexistent/params.txt"), ArgumentError);
}

TEST(Params, Validate) {
    ModelConfig c;
    EXPECT_THROW(c.validate(), ArgumentError); // c1 = 0
    c.heston.c1 = 0.001;
    EXPECT_NO_THROW(c.validate());
    c.heston.rho = 1.5;
    EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(0.075), "0.075");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
    EXPECT_EQ(std::stod(format_number(0.07338136049323941)), 0.07338136049323941);
}
