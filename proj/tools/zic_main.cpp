#include "zic/cli.hpp"

int main(int argc, char** argv) { return zic::run_cli(argc, argv); }
