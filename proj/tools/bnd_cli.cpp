#include <iostream>

#include <bnd/cli.hpp>

int main(int argc, char **argv)
{
    return bnd::cli::run(argc, argv, std::cout, std::cerr);
}
