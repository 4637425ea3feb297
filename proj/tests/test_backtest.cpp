#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace rcla;

namespace {

const std::vector<YearMonth> kVintages{YearMonth(1970, 1), YearMonth(1973, 1), YearMonth(1976, 1),
                                       YearMonth(1979, 1)};
const std::vector<double> kRates{0.04, 0.05, 0.06, 0.07, 0.08, 0.09};

} // namespace

TEST(Table1, FlatMarketTwelvePercent) {
    const AlignedMarket m{YearMonth(1970, 1), std::vector<double>(500, 1.0), std::vector<double>(500, 1.0)};
    const std::vector<double> rates{0.12};
    const auto t = table1(m, kVintages, rates, YearMonth(2005, 12));
    for (std::size_t v = 0; v < kVintages.size(); ++v) {
        ASSERT_TRUE(t.cell(0, v));
        EXPECT_EQ(*t.cell(0, v) - kVintages[v], 100);
    }
}

TEST(Table1, EmptyRates) {
    const auto m = test::historical_market();
    const auto t = table1(m, kVintages, std::vector<double>{}, YearMonth(2006, 12));
    EXPECT_TRUE(t.cells.empty());
}

TEST(Table1, HorizonBeyondData) {
    const auto m = test::historical_market();
    EXPECT_THROW(table1(m, kVintages, kRates, YearMonth(2010, 1)), CoverageError);
}

TEST(Table1, CellsAreBuildPathRuinMonths) {
    const auto m = test::historical_market();
    const auto end = YearMonth(2006, 12);
    const auto t = table1(m, kVintages, kRates, end);
    for (std::size_t r = 0; r < kRates.size(); ++r) {
        for (std::size_t v = 0; v < kVintages.size(); ++v) {
            EXPECT_EQ(t.cell(r, v), build_path({kVintages[v], kRates[r]}, m.slice(kVintages[v], end)).ruin_month);
        }
    }
}

TEST(Table1, FourPercentRowAndLateVintageNeverRuin) {
    const auto t = table1(test::historical_market(), kVintages, kRates, YearMonth(2006, 12));
    for (std::size_t v = 0; v < kVintages.size(); ++v) {
        EXPECT_FALSE(t.cell(0, v)) << kVintages[v].to_string();
    }
    for (std::size_t r = 0; r < kRates.size(); ++r) {
        EXPECT_FALSE(t.cell(r, 3)) << kRates[r];
    }
}

TEST(Table1, CsvLayout) {
    const auto t = table1(test::historical_market(), kVintages, std::vector<double>{0.04, 0.07}, YearMonth(2006, 12));
    std::ostringstream out;
    write_table_csv(out, t);
    const auto csv = out.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "rate,1970-01,1973-01,1976-01,1979-01");
    EXPECT_NE(csv.find("\n0.04,,,,\n"), std::string::npos);
    EXPECT_NE(csv.find("\n0.07,19"), std::string::npos);
}

TEST(Table1, ColumnMonotoneInRate) {
    test::Draw draw(31);
    for (int c = 0; c < test::kCases; ++c) {
        const MarketParams p{0.025, draw.uniform(0.0, 0.1), draw.uniform(0.05, 0.3), DriftMode::real_world};
        const auto m = synth_gbm(p, 360, draw.bits(), YearMonth(1970, 1));
        const std::vector<YearMonth> vintages{YearMonth(1970, 1), YearMonth(1975, 6)};
        const auto t = table1(m, vintages, kRates, m.last());
        for (std::size_t v = 0; v < vintages.size(); ++v) {
            for (std::size_t r = 0; r + 1 < kRates.size(); ++r) {
                if (t.cell(r, v)) {
                    ASSERT_TRUE(t.cell(r + 1, v));
                    EXPECT_LE(*t.cell(r + 1, v), *t.cell(r, v));
                }
            }
        }
    }
}

TEST(Figure1, VintagePaths) {
    const auto m = test::historical_market().slice(YearMonth(1950, 2), YearMonth(2006, 12));
    const auto paths = figure1_data(m, kVintages, 0.07);
    ASSERT_EQ(paths.size(), 4u);
    ASSERT_TRUE(paths[0].ruin_month);
    EXPECT_LE(std::abs(*paths[0].ruin_month - YearMonth(1983, 1)), 3);
    EXPECT_FALSE(paths[2].ruin_month);
    EXPECT_EQ(paths[2].last_month(), YearMonth(2007, 1));
    EXPECT_GT(paths[2].final_level(), 300.0);
    EXPECT_LT(paths[2].final_level(), 500.0);
    EXPECT_TRUE(figure1_data(m, std::vector<YearMonth>{}, 0.07).empty());
}

TEST(Figure1, CsvIncludesLaunchRow) {
    const AlignedMarket m{YearMonth(1970, 1), {1.0, 1.0}, {1.0, 1.0}};
    const std::vector<YearMonth> v{YearMonth(1970, 1)};
    std::ostringstream out;
    write_figure_csv(out, figure1_data(m, v, 0.12));
    EXPECT_EQ(out.str(), "vintage,month,level\n1970-01,1970-01,100.0000\n1970-01,1970-02,99.0000\n"
                         "1970-01,1970-03,98.0000\n");
}
