#include "muskat/muskat.hpp"
int main() { return 0; }
