// Regenerates the reference gyroid fill-fraction table (t, phi, stderr).
//
//   gen_fill_table [--samples 10000000] [--seed 0] > data/gyroid_fill_fraction.csv

#include <cstdlib>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "grinlens/gyroid.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte-Carlo gyroid fill-fraction table on t = 0, 0.1, ..., 1.5"};
    std::size_t samples = 10'000'000;
    std::uint64_t seed = 0;
    app.add_option("-n,--samples", samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
    app.add_option("-s,--seed", seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    std::vector<double> grid;
    for (int k = 0; k < 16; ++k) grid.push_back(0.1 * k);
    grid.back() = 1.5;
    grin::FillTable::estimate(grid, samples, seed).write_csv(std::cout);
    return EXIT_SUCCESS;
}
