#include "tscarma/cli.hpp"

int main(int argc, char** argv) { return tscarma::cli::dispatch(argc, argv); }
