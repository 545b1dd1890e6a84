#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return igbm::cli::main(argc, argv, std::cout, std::cerr);
}
