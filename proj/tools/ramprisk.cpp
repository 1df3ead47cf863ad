#include <iostream>

#include "ramprisk/cli/commands.hpp"

int main(int argc, char** argv) {
    return ramprisk::cli::run(argc, argv, std::cout, std::cerr);
}
