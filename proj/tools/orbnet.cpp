#include "orbnet/cli.hpp"

int main(int argc, char** argv) { return orbnet::cli::run(argc, argv); }
