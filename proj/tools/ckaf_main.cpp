#include "ckaf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ckaf::cli::run(argc, argv, std::cout, std::cerr);
}
