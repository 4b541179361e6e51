#include "fls/cli/commands.hpp"

int main(int argc, char** argv) { return fls::cli::main_entry(argc, argv); }
