#include "wgm_cli.hpp"

int main(int argc, char** argv) { return wgm::cli::main(argc, argv); }
