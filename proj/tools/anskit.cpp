#include "anskit/cli.hpp"

int main(int argc, char** argv) { return anskit::cli::run(argc, argv, std::cout, std::cerr); }
