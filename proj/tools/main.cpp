#include "macsim/cli.hpp"

int main(int argc, char** argv) { return macsim::cli_main(argc, argv); }
