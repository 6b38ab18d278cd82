#include "ccms2/cli.hpp"

int main(int argc, char** argv) { return ccms2::run_cli(argc, argv); }
