#include "labt/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return labt::cli::run(argc, argv, std::cout, std::cerr);
}
