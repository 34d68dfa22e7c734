#include <rsenum/cli.hh>

int main(int argc, char ** argv)
{
    return rsenum::run_cli(argc, argv);
}
