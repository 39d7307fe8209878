#include "mbfm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return mbfm::cli::run(argc, argv, std::cout, std::cerr);
}
