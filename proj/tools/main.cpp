#include "gridnav/cli.hpp"

int main(int argc, char** argv) { return gridnav::cli::run(argc, argv); }
