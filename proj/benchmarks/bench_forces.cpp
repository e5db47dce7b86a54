#include <benchmark/benchmark.h>
int dummy_forces = 0;
