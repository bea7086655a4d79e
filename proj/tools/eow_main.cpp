#include <iostream>

#include "eow/cli.hpp"

int main(int argc, char** argv)
{
    return eow::cli_main(argc, argv, std::cout, std::cerr);
}
