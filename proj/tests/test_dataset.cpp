#include "roadsv/dataset.hpp"
#include "roadsv/errors.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

using namespace roadsv;

namespace {

RateSeries from_text(const std::string& text) {
    std::istringstream in(text);
    return load_series(in);
}

} // namespace

TEST(YearMonth, ParseAndArithmetic) {
    const auto ym = YearMonth::parse("2018-12");
    EXPECT_EQ(ym.year, 2018);
    EXPECT_EQ(ym.month, 12);
    EXPECT_EQ(ym.plus_months(1), (YearMonth{2019, 1}));
    EXPECT_EQ(ym.plus_months(-12), (YearMonth{2017, 12}));
    EXPECT_EQ(ym.to_string(), "2018-12");
    EXPECT_THROW(YearMonth::parse("2018-13"), ArgumentError);
    EXPECT_THROW(YearMonth::parse("18-1"), ArgumentError);
}

TEST(MonthRange, Parse) {
    const auto r = MonthRange::parse("2014-01:2018-12");
    EXPECT_EQ(r.size(), 60);
    EXPECT_TRUE(r.contains({2016, 6}));
    EXPECT_FALSE(r.contains({2019, 1}));
    EXPECT_THROW(MonthRange::parse("2018-12:2014-01"), ArgumentError);
}

TEST(LoadSeries, BundledDataMatchesFiles) {
    const auto s = bundled_series_2014_2018();
    ASSERT_EQ(s.size(), 60u);
    EXPECT_EQ(s.start(), (YearMonth{2014, 1}));
    EXPECT_EQ(s.end(), (YearMonth{2018, 12}));
    EXPECT_DOUBLE_EQ(s.rates()[0], 3252.0 / 2546000.0);
    EXPECT_EQ(bundled_series_2009_2013().size(), 60u);
}

TEST(LoadSeries, CrlfAndBom) {
    const auto s = from_text("\xEF\xBB\xBFyear,month,collisions,registered_vehicles\r\n2014,1,10,1000\r\n2014,2,20,1000\r\n");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s.rates()[1], 0.02);
}

TEST(LoadSeries, UnsortedInputIsSorted) {
    const auto s = from_text("year,month,collisions,registered_vehicles\n2014,2,20,1000\n2014,1,10,1000\n");
    EXPECT_EQ(s.start(), (YearMonth{2014, 1}));
}

TEST(LoadSeries, Errors) {
    EXPECT_THROW(from_text(""), ParseError);
    EXPECT_THROW(from_text("a,b\n"), ParseError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,1,10\n"), ParseError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,x,10,1000\n"), ParseError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,1,10,0\n"), DomainError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,1,-1,10\n"), DomainError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,1,1,10\n2014,3,1,10\n"), StructuralError);
    EXPECT_THROW(from_text("year,month,collisions,registered_vehicles\n2014,1,1,10\n2014,1,1,10\n"), StructuralError);
    try {
        from_text("year,month,collisions,registered_vehicles\n2014,1,1,10\n2014,1,1\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(LoadSeries, CsvRoundTrip) {
    const auto s = bundled_series_2009_2013();
    std::stringstream buf;
    write_series(buf, s);
    const auto back = load_series(buf);
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(back.rates()[i], s.rates()[i]);
}

TEST(RateSeries, SliceAndConcat) {
    const auto all = RateSeries::concat(bundled_series_2009_2013(), bundled_series_2014_2018());
    EXPECT_EQ(all.size(), 120u);
    const auto part = all.slice(MonthRange::parse("2013-07:2014-06"));
    EXPECT_EQ(part.size(), 12u);
    EXPECT_EQ(part.start(), (YearMonth{2013, 7}));
    EXPECT_THROW(all.slice(MonthRange::parse("2018-01:2019-01")), StructuralError);
    EXPECT_THROW(all.rate_at({2020, 1}), ArgumentError);
}

TEST(Statistics, LogDifferences) {
    const auto ld = log_differences(bundled_series_2014_2018());
    ASSERT_EQ(ld.size(), 59u);
    EXPECT_NEAR(ld[0], -0.062163320381289466, 1e-15);
    EXPECT_NEAR(ld[39], 0.18247273980127332, 1e-15); // April to May 2017
    const std::vector<double> with_zero{0.1, 0.0};
    EXPECT_THROW(log_differences(with_zero), DomainError);
}

TEST(Statistics, Stats2014To2018) {
    const auto st = compute_series_stats(bundled_series_2014_2018());
    EXPECT_NEAR(st.monthly_logdiff_std, 0.07819919036944448, 1e-13);
    EXPECT_NEAR(st.annualized_volatility, 0.27088994166125735, 1e-13);
    EXPECT_NEAR(st.vol_of_vol, 0.2871014185687805, 1e-12);
    EXPECT_NEAR(st.rate_vol_correlation, 0.1295057285251744, 1e-12);
    ASSERT_EQ(st.years.size(), 5u);
    EXPECT_NEAR(st.years[0].volatility, 0.28598044, 1e-8);
    EXPECT_NEAR(st.years[2].volatility, 0.21467296, 1e-8);
}

TEST(Statistics, Stats2009To2013) {
    const auto st = compute_series_stats(bundled_series_2009_2013());
    EXPECT_NEAR(st.annualized_volatility, 0.4056850715150815, 1e-13);
    EXPECT_NEAR(st.vol_of_vol, 0.2273633389603723, 1e-12);
    EXPECT_NEAR(st.rate_vol_correlation, 0.5959856413151836, 1e-12);
    const double expected[] = {0.45325899, 0.55814662, 0.41061753, 0.32564474, 0.29665362};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(st.years[i].volatility, expected[i], 1e-8);
}

TEST(Statistics, YearlyDeviations) {
    const auto dev = yearly_deviations(bundled_series_2014_2018());
    ASSERT_EQ(dev.size(), 60u);
    EXPECT_NEAR(dev[10], 0.15950637513441546, 1e-13); // Nov 2014
    EXPECT_NEAR(dev[39], -0.15089010612803844, 1e-13); // Apr 2017
    for (int y = 0; y < 5; ++y) {
        const double sum = std::accumulate(dev.begin() + 12 * y, dev.begin() + 12 * y + 12, 0.0);
        EXPECT_NEAR(sum, 0.0, 1e-12);
    }
}

TEST(Statistics, IncompleteYears) {
    const auto s = bundled_series_2014_2018().slice(MonthRange::parse("2014-02:2018-12"));
    EXPECT_THROW(yearly_summaries(s), StructuralError);
    const auto two = bundled_series_2014_2018().slice(MonthRange::parse("2014-01:2015-12"));
    EXPECT_THROW(vol_of_vol(two), StructuralError);
}

TEST(Statistics, Correlation) {
    const std::vector<double> x{1, 2, 3}, y{2, 4, 6}, c{1, 1, 1};
    EXPECT_NEAR(pearson_correlation(x, y), 1.0, 1e-15);
    EXPECT_THROW(pearson_correlation(x, c), DomainError);
    EXPECT_THROW(sample_stddev(std::vector<double>{1.0}), ArgumentError);
}
