#include "cli.hpp"

int main(int argc, char** argv) { return ebkit::cli::run_cli(argc, argv); }
