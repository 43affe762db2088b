#include <iostream>

#include "gbm/harness.hpp"

int main(int argc, char** argv) { return gbm::harness::run_cli(argc, argv, std::cout, std::cerr); }
