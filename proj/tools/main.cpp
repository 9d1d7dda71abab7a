#include "xcmm/cli.hpp"

int main(int argc, char** argv) { return xcmm::run_cli(argc, argv); }
