#include "cli.hpp"

int main(int argc, char** argv) { return evospi::cli::run_cli(argc, argv); }
