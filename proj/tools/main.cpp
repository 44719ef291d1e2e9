#include <iostream>

#include "curvkit/report/report.hpp"

int main(int argc, char** argv) { return curvkit::run_cli(argc, argv, std::cout, std::cerr); }
