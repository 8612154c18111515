#include <iostream>

#include "ncho_cli.hpp"

int main(int argc, char** argv)
{
  return ncho::cli::run_cli(argc, argv, std::cout, std::cerr);
}
