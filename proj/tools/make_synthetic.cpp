// Regenerates the bundled synthetic series: make_synthetic [records] [seed] > data/synthetic_series.csv
#include <cstdlib>
#include <iostream>

#include "ramprisk/synthetic.hpp"

int main(int argc, char** argv) {
    ramprisk::synthetic::SeriesSpec spec;
    if (argc > 1) spec.records = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) spec.seed = std::strtoull(argv[2], nullptr, 10);
    ramprisk::synthetic::write_series(std::cout, ramprisk::synthetic::generate_series(spec));
    return 0;
}
