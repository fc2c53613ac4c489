#include "cli.hpp"

int main(int argc, char** argv) { return walkzeta::cli::run_cli(argc, argv); }
