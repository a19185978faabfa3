#include "cli.hpp"

int main(int argc, char** argv) { return leaguestat::cli::run(argc, argv); }
