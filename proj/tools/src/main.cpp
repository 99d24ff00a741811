#include "cli.hpp"

int main(int argc, char** argv)
{
    return twlab::cli_main(argc, argv);
}
