#include "costsel/cli.hpp"

int main(int argc, char** argv) { return costsel::cli::run(argc, argv); }
