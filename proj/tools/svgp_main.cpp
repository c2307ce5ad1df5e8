#include "svgp/cli.hpp"

int main(int argc, char** argv) { return svgp::run_cli(argc, argv); }
