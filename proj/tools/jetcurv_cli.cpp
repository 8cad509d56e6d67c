#include "jetcurv/cli.hpp"

int main(int argc, char** argv) { return jetcurv::run_cli(argc, argv); }
