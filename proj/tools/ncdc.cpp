#include <iostream>

#include "ncdc_cli.hpp"

int main(int argc, char **argv)
{
	return ncdc::cli::run(argc, argv, std::cout, std::cerr);
}
