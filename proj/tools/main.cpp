#include "pbif/cli.hpp"

int main(int argc, char** argv) { return pbif::dispatch(argc, argv); }
