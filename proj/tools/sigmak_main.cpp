#include <cstdio>
int main() { std::puts("sigmak: placeholder"); return 0; }
