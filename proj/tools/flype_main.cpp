#include <cstdio>

int main() {
    std::puts("flype: command-line interface under construction");
    return 2;
}
