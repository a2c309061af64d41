#include "trin/cli.hpp"

int main(int argc, char** argv) { return trin::run_cli(argc, argv); }
