#include "cli_io.hpp"

#include <benchmark/benchmark.h>

using namespace ckw::cli;

namespace {

void BM_FigureTable(benchmark::State& st) {
    const std::string id = st.range(0) == 5 ? "4.5" : "4.9";
    const auto c = resolve(figure_defaults(id));
    for (auto _ : st) benchmark::DoNotOptimize(figure_table(id, c));
}
BENCHMARK(BM_FigureTable)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

} // namespace
