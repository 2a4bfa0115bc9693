#include "cli_app.hpp"

int main(int argc, char** argv) { return uvprop::cli::run_cli(argc, argv); }
