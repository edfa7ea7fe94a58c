#include <cstdio>
int main() { std::puts("ucyc: not wired up yet"); return 0; }
