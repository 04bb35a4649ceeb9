#include "phull/cli.hpp"

int main(int argc, char** argv) { return phull::cli::run(argc, argv); }
