#include "vho/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return vho::run_cli(argc, argv, std::cout, std::cerr);
}
