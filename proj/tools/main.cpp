#include "bicomb/cli.hpp"

int main(int argc, char** argv) { return bicomb::run_cli(argc, argv); }
