#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "grinlens/constants.hpp"
#include "grinlens/errors.hpp"
#include "grinlens/sizing.hpp"

using namespace grin;

TEST(GuidedWavelength, Examples) {
    EXPECT_NEAR(guided_wavelength(20e9, 2.8), 8.96e-3, 0.005e-3);
    EXPECT_NEAR(guided_wavelength(40e9, 2.8), 4.48e-3, 0.005e-3);
    EXPECT_DOUBLE_EQ(guided_wavelength(30e9, 1.0), kSpeedOfLight / 30e9);
    EXPECT_THROW(guided_wavelength(0.0, 2.8), DomainError);
    EXPECT_THROW(guided_wavelength(-1.0, 2.8), DomainError);
}

TEST(CellRatio, TableRatios) {
    EXPECT_NEAR(cell_ratio(12.5e-3, 20e9, 2.8), 1.39, 0.02);
    EXPECT_NEAR(cell_ratio(10e-3, 25e9, 2.8), 1.39, 0.02);
    EXPECT_NEAR(cell_ratio(7.5e-3, 33e9, 2.8), 1.38, 0.02);
    EXPECT_NEAR(cell_ratio(5e-3, 40e9, 2.8), 1.11, 0.02);
}

TEST(PredictFmax, Examples) {
    EXPECT_NEAR(predict_f_max(7.5e-3, 2.8) / 1e9, 33.4, 0.05);
    EXPECT_NEAR(predict_f_max(10e-3, 2.8) / 1e9, 25.1, 0.05);
    EXPECT_NEAR(predict_f_max(12.5e-3, 2.8) / 1e9, 20.1, 0.05);
    EXPECT_NEAR(predict_f_max(5e-3, 2.8) / 1e9, 50.2, 0.05);
    EXPECT_NEAR(predict_f_max(7.5e-3, 2.8) / 1e9, 33.0, 0.5);
    EXPECT_NEAR(predict_f_max(10e-3, 2.8) / 1e9, 25.0, 0.5);
    EXPECT_NEAR(predict_f_max(12.5e-3, 2.8) / 1e9, 20.0, 0.5);
}

TEST(MaxCell, Examples) {
    EXPECT_NEAR(max_cell_for_frequency(33.4e9, 2.8), 7.5e-3, 0.05e-3);
    EXPECT_NEAR(max_cell_for_frequency(20.1e9, 2.8), 12.5e-3, 0.05e-3);
    EXPECT_DOUBLE_EQ(max_cell_for_frequency(30e9, 1.0), 1.4 * kSpeedOfLight / 30e9);
}

TEST(Bandwidth, Examples) {
    auto b = bandwidth({25e9, false});
    EXPECT_DOUBLE_EQ(b.hz, 7e9);
    EXPECT_FALSE(b.exceeds_band);
    EXPECT_DOUBLE_EQ(bandwidth({20e9, false}).hz, 2e9);
    b = bandwidth({40e9, true});
    EXPECT_TRUE(b.exceeds_band);
    EXPECT_DOUBLE_EQ(b.hz, 22e9);
    EXPECT_EQ(format_ghz(b), ">22");
    b = bandwidth({50e9, false});
    EXPECT_TRUE(b.exceeds_band);
    b = bandwidth({15e9, false});
    EXPECT_TRUE(b.below_band);
    EXPECT_EQ(b.hz, 0.0);
}

TEST(SizingProperty, RoundTrip) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> l_dist(1e-3, 50e-3);
    std::uniform_real_distribution<double> e_dist(1.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double l = l_dist(rng);
        const double e = e_dist(rng);
        EXPECT_NEAR(max_cell_for_frequency(predict_f_max(l, 2.8), 2.8), l, 1e-12 * l);
        EXPECT_NEAR(cell_ratio(l, predict_f_max(l, e), e), 1.4, 1e-12);
    }
}

TEST(SizingReport, RowsMatchTable) {
    const SizingParams params;
    const double cells[] = {5e-3, 7.5e-3, 10e-3, 12.5e-3};
    const auto rows = size_cells(cells, params);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_TRUE(rows[0].f_max.exceeds_band);
    EXPECT_TRUE(rows[0].bandwidth.exceeds_band);
    EXPECT_DOUBLE_EQ(rows[1].f_max.hz, 33e9);
    EXPECT_DOUBLE_EQ(rows[2].f_max.hz, 25e9);
    EXPECT_DOUBLE_EQ(rows[3].f_max.hz, 20e9);
    EXPECT_DOUBLE_EQ(rows[1].bandwidth.hz, 15e9);
    EXPECT_DOUBLE_EQ(rows[2].bandwidth.hz, 7e9);
    EXPECT_DOUBLE_EQ(rows[3].bandwidth.hz, 2e9);
    for (const auto& row : rows) {
        EXPECT_EQ(row.lambda_g, row.lambda_m / std::sqrt(2.8));
        EXPECT_EQ(row.ratio, row.cell_m / row.lambda_g);
    }

    std::ostringstream csv;
    write_sizing_csv(rows, csv);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "l_uc_mm,f_max_ghz,bandwidth_ghz,ratio");
    EXPECT_NE(csv.str().find(">40"), std::string::npos);
    EXPECT_NE(csv.str().find(">22"), std::string::npos);
}

TEST(SizingReport, HalfRatioOnSubUnitMatchesFullCell) {
    SizingParams full;
    SizingParams sub = full;
    sub.ratio_limit = 0.7;
    for (double l : {7.5e-3, 10e-3, 12.5e-3}) {
        EXPECT_NEAR(size_cell(l / 2.0, sub).f_predicted_hz, size_cell(l, full).f_predicted_hz, 1e-3);
        EXPECT_EQ(size_cell(l / 2.0, sub).f_max.hz, size_cell(l, full).f_max.hz);
    }
}
