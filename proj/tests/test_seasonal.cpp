#include "roadsv/dataset.hpp"
#include "roadsv/errors.hpp"
#include "roadsv/seasonal.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace roadsv;

TEST(SeasonalFactor, SumsToZero) {
    double sum = 0.0;
    for (int m = 1; m <= 12; ++m) sum += seasonal_factor(m);
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_NEAR(seasonal_factor(4), -1.0, 1e-15);
    EXPECT_NEAR(seasonal_factor(10), 1.0, 1e-15);
    EXPECT_NEAR(seasonal_factor(1), 0.0, 1e-15);
}

TEST(SeasonalOverlay, ConstantBaseExtremes) {
    SeasonalOverlay overlay({0.075});
    const double c1 = 0.00159;
    double year_sum = 0.0;
    for (int m = 1; m <= 12; ++m) {
        const double v = overlay.apply(c1, m);
        year_sum += v;
        if (m == 4) {
            EXPECT_NEAR(v, c1 * (1.0 - 0.075), 1e-12);
        }
        if (m == 10) {
            EXPECT_NEAR(v, c1 * (1.0 + 0.075), 1e-12);
        }
    }
    EXPECT_NEAR(year_sum / 12.0, c1, 1e-12);
}

TEST(SeasonalOverlay, CausalYearMean) {
    SeasonalOverlay overlay({0.1});
    overlay.apply(1.0, 1);
    overlay.apply(3.0, 2);
    // Mean of {1, 3, 5} scales March.
    EXPECT_NEAR(overlay.apply(5.0, 3), 5.0 + 3.0 * 0.1 * seasonal_factor(3), 1e-14);
    // January resets the running mean.
    EXPECT_NEAR(overlay.apply(2.0, 1), 2.0, 1e-14);
}

TEST(SeasonalOverlay, FloorsAtZero) {
    SeasonalOverlay overlay({2.0, 1.0, std::numbers::pi, 4});
    EXPECT_EQ(overlay.apply(1.0, 4), 0.0);
}

TEST(SeasonalConfig, Validate) {
    EXPECT_THROW((SeasonalConfig{-0.1}).validate(), ArgumentError);
    EXPECT_THROW((SeasonalConfig{0.1, 1.0, 0.0, 13}).validate(), ArgumentError);
}

TEST(FitAmplitude, ExactSinusoid) {
    std::vector<double> dev;
    std::vector<int> months;
    for (int i = 0; i < 36; ++i) {
        months.push_back(i % 12 + 1);
        dev.push_back(0.05 * seasonal_factor(i % 12 + 1));
    }
    const auto grid = default_amplitude_grid();
    const auto fit = fit_amplitude(dev, months, grid);
    EXPECT_DOUBLE_EQ(fit.amplitude, 0.05);
    EXPECT_NEAR(fit.error_at_fit(), 0.0, 1e-15);
}

TEST(FitAmplitude, Bundled2014To2018) {
    const auto grid = default_amplitude_grid();
    ASSERT_EQ(grid.size(), 31u);
    const auto fit = fit_amplitude(bundled_series_2014_2018(), grid);
    EXPECT_DOUBLE_EQ(fit.amplitude, 0.075);
    EXPECT_NEAR(fit.error_at_fit(), 0.0461782713367392, 1e-13);
    EXPECT_NEAR(fit.error_by_amplitude[0].second, 0.0616745534647335, 1e-13);
}

TEST(FitAmplitude, Bundled2009To2013) {
    const auto fit = fit_amplitude(bundled_series_2009_2013(), default_amplitude_grid());
    EXPECT_DOUBLE_EQ(fit.amplitude, 0.09);
    EXPECT_NEAR(fit.error_at_fit(), 0.05703448906340158, 1e-13);
}

TEST(FitAmplitude, TiesPreferSmaller) {
    const std::vector<double> dev{0.0};
    const std::vector<int> months{1}; // factor 0: every amplitude has error 0
    const std::vector<double> grid{0.1, 0.0, 0.05};
    EXPECT_EQ(fit_amplitude(dev, months, grid).amplitude, 0.0);
}

TEST(FitAmplitude, Errors) {
    const std::vector<double> dev{0.0};
    const std::vector<int> months{1, 2};
    EXPECT_THROW(fit_amplitude(dev, months, default_amplitude_grid()), ArgumentError);
    EXPECT_THROW(fit_amplitude(dev, std::vector<int>{1}, std::vector<double>{}), ArgumentError);
}
