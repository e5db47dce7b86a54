#include <benchmark/benchmark.h>
int dummy_metrics = 0;
