#include <iostream>

#include "coxkl_cli/app.hpp"

int main(int argc, char** argv)
{
  return coxkl::cli::run(argc, argv, std::cout, std::cerr);
}
