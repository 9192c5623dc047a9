#include "fpl/cli.hpp"

int main(int argc, char** argv) { return fpl::cli::run(argc, argv); }
