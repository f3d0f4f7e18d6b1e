#include "mcplaque/cli.hpp"

int main(int argc, char** argv) { return mcplaque::run_cli(argc, argv); }
