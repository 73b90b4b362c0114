#include "psigraph/cli.hpp"

int main(int argc, char** argv) { return psigraph::run(argc, argv); }
